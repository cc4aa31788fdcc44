#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&q, rest)) = data.split_first() else { return };
    let Ok(field) = icsie::field_make(u64::from(q)) else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    if let Ok(v) = icsie::parse_vector(&field, text) {
        let joined = v.reps().iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        assert_eq!(icsie::parse_vector(&field, &joined).expect("joined vector parses"), v);
    }
});
