//! Named instances and generator matrices used across tests, the CLI and docs.

use crate::gfield::{field_make, FieldSpec};
use crate::linalg::{FMatrix, IndexSet};
use crate::sigraph::{ProblemSpec, SideInfoGraph};

fn field(q: u64) -> FieldSpec {
    field_make(q).expect("catalog fields are prime powers")
}

/// Clique of size `n` over `F_q`.
pub fn clique_spec(n: usize, q: u64, delta_s: usize, delta_c: usize) -> ProblemSpec {
    ProblemSpec::new(SideInfoGraph::clique(n), field(q), delta_s, delta_c).expect("cliques are valid")
}

/// The 4×3 code for the binary clique of size 4: rows e1, e2, e3, (1,1,1).
pub fn clique4_generator() -> FMatrix {
    FMatrix::from_rows(
        &field(2),
        &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1]],
        3,
    )
    .unwrap()
}

/// Nine packets; receivers 1..8 cache every other packet, receiver 9 caches
/// packets {2,3,5,6,7,8} (1-based).
pub fn nine_packet_graph() -> SideInfoGraph {
    let mut side: Vec<IndexSet> = (0..8).map(|i| (0..9).filter(|&j| j != i).collect()).collect();
    side.push([1, 2, 4, 5, 6, 7].into());
    SideInfoGraph::unipartite(side).expect("valid")
}

pub fn nine_packet_spec() -> ProblemSpec {
    ProblemSpec::new(nine_packet_graph(), field(2), 1, 0).expect("valid")
}

/// A binary 9×6 generator for [`nine_packet_spec`].
pub fn nine_packet_generator() -> FMatrix {
    FMatrix::from_rows(
        &field(2),
        &[
            vec![0, 0, 0, 0, 0, 1],
            vec![0, 0, 0, 0, 1, 0],
            vec![1, 0, 0, 1, 0, 0],
            vec![0, 0, 1, 0, 0, 0],
            vec![1, 1, 0, 0, 0, 0],
            vec![0, 1, 1, 1, 0, 0],
            vec![0, 0, 1, 1, 1, 0],
            vec![0, 0, 0, 1, 1, 1],
            vec![1, 1, 0, 1, 0, 1],
        ],
        6,
    )
    .unwrap()
}

/// Directed cycle `1 → 2 → … → n → 1`: receiver `i` caches packet `i+1 mod n`.
pub fn directed_cycle(n: usize) -> SideInfoGraph {
    SideInfoGraph::unipartite((0..n).map(|i| [(i + 1) % n].into()).collect()).expect("valid")
}

/// Disjoint union of unipartite graphs.
pub fn disjoint_union(parts: &[SideInfoGraph]) -> SideInfoGraph {
    let mut side = Vec::new();
    let mut offset = 0;
    for g in parts {
        assert!(g.is_unipartite());
        for i in 0..g.n() {
            side.push(g.side(i).iter().map(|j| j + offset).collect());
        }
        offset += g.n();
    }
    SideInfoGraph::unipartite(side).expect("valid")
}
