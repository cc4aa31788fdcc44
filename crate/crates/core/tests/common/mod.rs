#![allow(dead_code)]

use icsie::{field_make, FMatrix, IndexSet, ProblemSpec, SideInfoGraph};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const FAMILY_SEED: u64 = 0x5eed_0004;

/// Unipartite graph number `code`: receiver `i` caches the packets selected by
/// the `i`-th block of `n − 1` bits, over the packets other than `i`.
pub fn unipartite_from_code(n: usize, code: u64) -> SideInfoGraph {
    let per = 1u64 << (n - 1);
    let mut c = code;
    let side = (0..n)
        .map(|i| {
            let bits = c % per;
            c /= per;
            let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
            others
                .iter()
                .enumerate()
                .filter(|(t, _)| bits >> t & 1 == 1)
                .map(|(_, &j)| j)
                .collect::<IndexSet>()
        })
        .collect();
    SideInfoGraph::unipartite(side).unwrap()
}

pub fn all_unipartite(n: usize) -> Vec<SideInfoGraph> {
    let total = 1u64 << ((n - 1) * n);
    (0..total).map(|c| unipartite_from_code(n, c)).collect()
}

/// `count` distinct unipartite graphs on `n` packets, chosen with a seeded ChaCha8 stream.
pub fn sampled_unipartite(n: usize, count: usize, seed: u64) -> Vec<SideInfoGraph> {
    let total = 1usize << ((n - 1) * n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut codes = sample(&mut rng, total, count).into_vec();
    codes.sort_unstable();
    codes.into_iter().map(|c| unipartite_from_code(n, c as u64)).collect()
}

/// Every unipartite graph with three packets and 200 sampled ones with four.
pub fn family() -> Vec<SideInfoGraph> {
    let mut f = all_unipartite(3);
    f.extend(sampled_unipartite(4, 200, FAMILY_SEED));
    f
}

pub fn binary(graph: &SideInfoGraph, delta_s: usize, delta_c: usize) -> ProblemSpec {
    ProblemSpec::new(graph.clone(), field_make(2).unwrap(), delta_s, delta_c).unwrap()
}

/// Every binary `rows × cols` matrix.
pub fn all_binary_matrices(rows: usize, cols: usize) -> impl Iterator<Item = FMatrix> {
    let f = field_make(2).unwrap();
    (0u64..1 << (rows * cols)).map(move |code| {
        let reps: Vec<Vec<u32>> = (0..rows)
            .map(|r| (0..cols).map(|c| (code >> (r * cols + c) & 1) as u32).collect())
            .collect();
        FMatrix::from_rows(&f, &reps, cols).unwrap()
    })
}

pub fn random_binary_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> FMatrix {
    let f = field_make(2).unwrap();
    let reps: Vec<Vec<u32>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.random_range(0..2)).collect())
        .collect();
    FMatrix::from_rows(&f, &reps, cols).unwrap()
}

/// Copy of `g` with entry `(r, c)` flipped.
pub fn flip(g: &FMatrix, r: usize, c: usize) -> FMatrix {
    let f = g.field().clone();
    let x = f.add(g.get(r, c), f.one());
    g.with_entry(r, c, x)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
