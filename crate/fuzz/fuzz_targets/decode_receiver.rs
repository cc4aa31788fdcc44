#![no_main]

use icsie::catalog::{nine_packet_generator, nine_packet_graph};
use icsie::{build_context, decode_receiver, field_make, FVector};
use libfuzzer_sys::fuzz_target;

// Arbitrary broadcasts and side information at every receiver of the
// nine-packet example: decoding may fail but must not panic, and with at most
// one wrong cached symbol it must return the demanded packet.
fuzz_target!(|data: &[u8]| {
    if data.len() < 10 {
        return;
    }
    let f = field_make(2).unwrap();
    let g = nine_packet_generator();
    let graph = nine_packet_graph();
    let bits = |b: &[u8]| b.iter().map(|x| u32::from(x & 1)).collect::<Vec<_>>();
    let x = FVector::from_reps(&f, &bits(&data[..9])).unwrap();
    let i = usize::from(data[9]) % graph.m();
    let ctx = build_context(&g, &graph, i).unwrap();
    let side = graph.side(i);
    let truth = x.subvector(side).unwrap();
    let noise = bits(&data[10..]);
    let mut e = vec![0; side.len()];
    for (k, v) in noise.iter().take(side.len()).enumerate() {
        e[k] = *v;
    }
    let e = FVector::from_reps(&f, &e).unwrap();
    let x_hat = truth.add(&e).unwrap();
    let y = g.left_mul(&x).unwrap();
    let result = decode_receiver(&ctx, 1, &y, &x_hat);
    if e.weight() <= 1 {
        assert_eq!(result.unwrap().value, x.get(graph.demand(i)));
    }
});
