//! Side-information graphs, problem instances and the instance file format.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::gfield::{field_make, FieldSpec};
use crate::linalg::IndexSet;

/// `n` packets and `m` receivers; receiver `i` demands packet `demand[i]` and
/// caches the packets in `side[i]`. All indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SideInfoGraph {
    n: usize,
    demand: Vec<usize>,
    side: Vec<IndexSet>,
}

/// A broken graph invariant, reported with 0-based indices and displayed 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    DemandInSideInfo { receiver: usize, packet: usize },
    UndemandedPacket { packet: usize },
}

impl Violation {
    pub fn name(&self) -> &'static str {
        match self {
            Violation::DemandInSideInfo { .. } => "demand-in-side-info",
            Violation::UndemandedPacket { .. } => "undemanded-packet",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DemandInSideInfo { receiver, packet } => write!(
                f,
                "demand-in-side-info: receiver {} demands packet {} which is in its side information",
                receiver + 1,
                packet + 1
            ),
            Violation::UndemandedPacket { packet } => {
                write!(f, "undemanded-packet: packet {} is demanded by no receiver", packet + 1)
            }
        }
    }
}

/// Old-to-new packet indices after a deletion; `None` for deleted packets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PacketMap {
    pub old_to_new: Vec<Option<usize>>,
    /// Original index of each surviving receiver.
    pub kept_receivers: Vec<usize>,
}

impl SideInfoGraph {
    /// Checks only index ranges and lengths; see [`SideInfoGraph::validate`]
    /// for the demand invariants.
    pub fn new(n: usize, demand: Vec<usize>, side: Vec<IndexSet>) -> Result<Self> {
        if demand.len() != side.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} demands but {} side-information sets",
                demand.len(),
                side.len()
            )));
        }
        for &d in &demand {
            if d >= n {
                return Err(Error::IndexOutOfRange { index: d, len: n });
            }
        }
        for s in &side {
            if let Some(i) = s.max().filter(|&i| i >= n) {
                return Err(Error::IndexOutOfRange { index: i, len: n });
            }
        }
        Ok(SideInfoGraph { n, demand, side })
    }

    /// Clique of size `n`: receiver `i` wants packet `i` and caches all others.
    pub fn clique(n: usize) -> Self {
        SideInfoGraph {
            n,
            demand: (0..n).collect(),
            side: (0..n).map(|i| (0..n).filter(|&j| j != i).collect()).collect(),
        }
    }

    /// Unipartite graph (`m = n`, `f(i) = i`) from side-information sets.
    pub fn unipartite(side: Vec<IndexSet>) -> Result<Self> {
        let n = side.len();
        Self::new(n, (0..n).collect(), side)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.demand.len()
    }

    pub fn demand(&self, i: usize) -> usize {
        self.demand[i]
    }

    pub fn demands(&self) -> &[usize] {
        &self.demand
    }

    pub fn side(&self, i: usize) -> &IndexSet {
        &self.side[i]
    }

    pub fn sides(&self) -> &[IndexSet] {
        &self.side
    }

    pub fn is_unipartite(&self) -> bool {
        self.m() == self.n && self.demand.iter().enumerate().all(|(i, &d)| i == d)
    }

    /// `Y_i`: packets neither demanded nor cached by receiver `i`.
    pub fn y_set(&self, i: usize) -> Result<IndexSet> {
        if i >= self.m() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.m(),
            });
        }
        Ok((0..self.n)
            .filter(|&j| j != self.demand[i] && !self.side[i].contains(j))
            .collect())
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (i, (&d, s)) in self.demand.iter().zip(&self.side).enumerate() {
            if s.contains(d) {
                out.push(Violation::DemandInSideInfo { receiver: i, packet: d });
            }
        }
        let mut demanded = vec![false; self.n];
        for &d in &self.demand {
            demanded[d] = true;
        }
        for (j, ok) in demanded.into_iter().enumerate() {
            if !ok {
                out.push(Violation::UndemandedPacket { packet: j });
            }
        }
        out
    }

    /// Removes the packets in `b`, every receiver demanding one of them, and
    /// the corresponding side-information edges. Surviving packets are
    /// re-indexed densely in ascending order.
    pub fn delete_packets(&self, b: &IndexSet) -> Result<(SideInfoGraph, PacketMap)> {
        if let Some(i) = b.max().filter(|&i| i >= self.n) {
            return Err(Error::IndexOutOfRange { index: i, len: self.n });
        }
        let mut old_to_new = vec![None; self.n];
        let mut next = 0;
        for (j, slot) in old_to_new.iter_mut().enumerate() {
            if !b.contains(j) {
                *slot = Some(next);
                next += 1;
            }
        }
        let mut demand = Vec::new();
        let mut side = Vec::new();
        let mut kept = Vec::new();
        for i in 0..self.m() {
            if let Some(d) = old_to_new[self.demand[i]] {
                demand.push(d);
                side.push(self.side[i].iter().filter_map(|j| old_to_new[j]).collect());
                kept.push(i);
            }
        }
        Ok((
            SideInfoGraph { n: next, demand, side },
            PacketMap {
                old_to_new,
                kept_receivers: kept,
            },
        ))
    }

    /// Removes the given side-information edges, one set per receiver.
    pub fn delete_side_edges(&self, removed: &[IndexSet]) -> Result<SideInfoGraph> {
        if removed.len() != self.m() {
            return Err(Error::DimensionMismatch(format!(
                "{} deletion sets for {} receivers",
                removed.len(),
                self.m()
            )));
        }
        let mut side = Vec::with_capacity(self.m());
        for (s, r) in self.side.iter().zip(removed) {
            if let Some(j) = r.iter().find(|&j| !s.contains(j)) {
                return Err(Error::IndexOutOfRange { index: j, len: self.n });
            }
            side.push(s.difference(r));
        }
        Ok(SideInfoGraph {
            n: self.n,
            demand: self.demand.clone(),
            side,
        })
    }

    /// The graph restricted to the packets in `keep` (receivers of other packets dropped).
    pub fn induced(&self, keep: &IndexSet) -> Result<(SideInfoGraph, PacketMap)> {
        let removed: IndexSet = (0..self.n).filter(|&j| !keep.contains(j)).collect();
        self.delete_packets(&removed)
    }

    /// Same graph with every side-information edge removed.
    pub fn without_side_info(&self) -> SideInfoGraph {
        SideInfoGraph {
            n: self.n,
            demand: self.demand.clone(),
            side: vec![IndexSet::new(); self.m()],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SideErrorModel {
    #[default]
    Error,
    Erasure,
}

/// A validated instance: graph, field, error budgets and side-error model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemSpec {
    graph: SideInfoGraph,
    field: FieldSpec,
    pub delta_s: usize,
    pub delta_c: usize,
    pub side_error_model: SideErrorModel,
}

impl ProblemSpec {
    pub fn new(graph: SideInfoGraph, field: FieldSpec, delta_s: usize, delta_c: usize) -> Result<Self> {
        let violations = graph.validate();
        if !violations.is_empty() {
            return Err(Error::Invalid(violations));
        }
        Ok(ProblemSpec {
            graph,
            field,
            delta_s,
            delta_c,
            side_error_model: SideErrorModel::Error,
        })
    }

    pub fn with_model(mut self, model: SideErrorModel) -> Self {
        self.side_error_model = model;
        self
    }

    pub fn with_delta_s(&self, delta_s: usize) -> Self {
        ProblemSpec {
            delta_s,
            ..self.clone()
        }
    }

    pub fn with_delta_c(&self, delta_c: usize) -> Self {
        ProblemSpec {
            delta_c,
            ..self.clone()
        }
    }

    /// Same parameters on another (valid) graph.
    pub fn with_graph(&self, graph: SideInfoGraph) -> Result<Self> {
        Ok(ProblemSpec::new(graph, self.field.clone(), self.delta_s, self.delta_c)?.with_model(self.side_error_model))
    }

    pub fn graph(&self) -> &SideInfoGraph {
        &self.graph
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn m(&self) -> usize {
        self.graph.m()
    }

    /// Largest tolerated weight of a side-information difference on `X_i`:
    /// `2 δs` for errors, `δs` for erasures.
    pub fn side_budget(&self) -> usize {
        match self.side_error_model {
            SideErrorModel::Error => 2 * self.delta_s,
            SideErrorModel::Erasure => self.delta_s,
        }
    }
}

/// The instance document exactly as it appears on disk (1-based indices).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub n: usize,
    pub m: usize,
    pub q: u64,
    pub delta_s: usize,
    pub delta_c: usize,
    pub f: Vec<usize>,
    #[serde(rename = "X")]
    pub x: Vec<Vec<usize>>,
    #[serde(default)]
    pub side_error_model: SideErrorModel,
}

impl InstanceDoc {
    pub fn parse(text: &str) -> std::result::Result<InstanceDoc, ParseError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Structural checks and conversion to a 0-based graph, without the demand invariants.
    pub fn to_graph(&self) -> std::result::Result<SideInfoGraph, ParseError> {
        if self.f.len() != self.m {
            return Err(ParseError::field(
                "f",
                format!("has {} entries, expected m = {}", self.f.len(), self.m),
            ));
        }
        if self.x.len() != self.m {
            return Err(ParseError::field(
                "X",
                format!("has {} entries, expected m = {}", self.x.len(), self.m),
            ));
        }
        let mut demand = Vec::with_capacity(self.m);
        for (i, &d) in self.f.iter().enumerate() {
            if d == 0 || d > self.n {
                return Err(ParseError::field(
                    format!("f[{}]", i + 1),
                    format!("packet {d} outside 1..={}", self.n),
                ));
            }
            demand.push(d - 1);
        }
        let mut side = Vec::with_capacity(self.m);
        for (i, set) in self.x.iter().enumerate() {
            for (k, &j) in set.iter().enumerate() {
                if j == 0 || j > self.n {
                    return Err(ParseError::field(
                        format!("X[{}]", i + 1),
                        format!("packet {j} outside 1..={}", self.n),
                    ));
                }
                if k > 0 && set[k - 1] >= j {
                    return Err(ParseError::field(
                        format!("X[{}]", i + 1),
                        "entries must be strictly ascending",
                    ));
                }
            }
            side.push(set.iter().map(|&j| j - 1).collect());
        }
        Ok(SideInfoGraph::new(self.n, demand, side).expect("ranges checked above"))
    }

    pub fn field(&self) -> std::result::Result<FieldSpec, ParseError> {
        field_make(self.q).map_err(|e| ParseError::field("q", e.to_string()))
    }

    pub fn into_spec(self) -> Result<ProblemSpec> {
        let field = self.field()?;
        let graph = self.to_graph()?;
        Ok(ProblemSpec::new(graph, field, self.delta_s, self.delta_c)?.with_model(self.side_error_model))
    }

    pub fn from_spec(spec: &ProblemSpec) -> InstanceDoc {
        let g = spec.graph();
        InstanceDoc {
            n: g.n(),
            m: g.m(),
            q: spec.q() as u64,
            delta_s: spec.delta_s,
            delta_c: spec.delta_c,
            f: g.demands().iter().map(|d| d + 1).collect(),
            x: g.sides().iter().map(|s| s.iter().map(|j| j + 1).collect()).collect(),
            side_error_model: spec.side_error_model,
        }
    }
}

/// Parses an instance document. Structural problems (including a `q` that is
/// not a prime power) are [`Error::Parse`]; demand-invariant violations are
/// [`Error::Invalid`].
pub fn parse_instance(text: &str) -> Result<ProblemSpec> {
    InstanceDoc::parse(text)?.into_spec()
}

/// Canonical serialization: fixed key order, one key per line, arrays inline.
pub fn serialize_instance(spec: &ProblemSpec) -> String {
    let doc = InstanceDoc::from_spec(spec);
    let model = match doc.side_error_model {
        SideErrorModel::Error => "error",
        SideErrorModel::Erasure => "erasure",
    };
    format!(
        "{{\n  \"n\": {},\n  \"m\": {},\n  \"q\": {},\n  \"delta_s\": {},\n  \"delta_c\": {},\n  \"f\": {},\n  \"X\": [{}],\n  \"side_error_model\": \"{}\"\n}}\n",
        doc.n,
        doc.m,
        doc.q,
        doc.delta_s,
        doc.delta_c,
        inline_list(&doc.f),
        doc.x.iter().map(|s| inline_list(s)).collect::<Vec<_>>().join(", "),
        model
    )
}

pub(crate) fn inline_list<T: fmt::Display>(v: &[T]) -> String {
    format!("[{}]", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::nine_packet_graph;
    use proptest::prelude::*;

    fn s(v: &[usize]) -> IndexSet {
        v.iter().copied().collect()
    }

    const CLIQUE4: &str =
        r#"{"n":4,"m":4,"q":2,"delta_s":1,"delta_c":0,"f":[1,2,3,4],"X":[[2,3,4],[1,3,4],[1,2,4],[1,2,3]]}"#;

    #[test]
    fn clique_is_valid() {
        assert!(SideInfoGraph::clique(4).validate().is_empty());
    }

    #[test]
    fn detects_violations() {
        let g = SideInfoGraph::new(3, vec![0, 1, 1], vec![s(&[0, 1]), s(&[0]), s(&[])]).unwrap();
        let v = g.validate();
        assert_eq!(v.len(), 2);
        assert_eq!(v[0].name(), "demand-in-side-info");
        assert_eq!(v[0], Violation::DemandInSideInfo { receiver: 0, packet: 0 });
        assert_eq!(v[1], Violation::UndemandedPacket { packet: 2 });
        assert!(v[0].to_string().contains("receiver 1"));
    }

    #[test]
    fn y_set_examples() {
        assert!(SideInfoGraph::clique(4).y_set(0).unwrap().is_empty());
        assert_eq!(nine_packet_graph().y_set(8).unwrap(), s(&[0, 3]));
        let g = SideInfoGraph::new(3, vec![0, 1, 2], vec![s(&[]), s(&[0]), s(&[0])]).unwrap();
        assert_eq!(g.y_set(0).unwrap(), s(&[1, 2]));
        assert!(g.y_set(3).is_err());
    }

    #[test]
    fn delete_packets_examples() {
        let c4 = SideInfoGraph::clique(4);
        let (c3, map) = c4.delete_packets(&s(&[3])).unwrap();
        assert_eq!(c3, SideInfoGraph::clique(3));
        assert_eq!(map.old_to_new, vec![Some(0), Some(1), Some(2), None]);
        assert_eq!(c4.delete_packets(&IndexSet::new()).unwrap().0, c4);
        assert!(c4.delete_packets(&s(&[4])).is_err());
    }

    #[test]
    fn delete_two_edges_per_receiver_leaves_one() {
        let c4 = SideInfoGraph::clique(4);
        let removed: Vec<IndexSet> = (0..4).map(|i| c4.side(i).iter().take(2).collect()).collect();
        let g = c4.delete_side_edges(&removed).unwrap();
        assert!((0..4).all(|i| g.side(i).len() == 1));
        assert!(c4.delete_side_edges(&[s(&[0]), s(&[]), s(&[]), s(&[])]).is_err());
    }

    #[test]
    fn parse_clique4() {
        let spec = parse_instance(CLIQUE4).unwrap();
        assert_eq!((spec.q(), spec.delta_s, spec.delta_c), (2, 1, 0));
        assert_eq!(spec.graph(), &SideInfoGraph::clique(4));
        assert_eq!(spec.side_error_model, SideErrorModel::Error);
    }

    #[test]
    fn parse_rejects_non_prime_power() {
        let text = CLIQUE4.replace("\"q\":2", "\"q\":6");
        match parse_instance(&text) {
            Err(Error::Parse(p)) => {
                assert_eq!(p.field.as_deref(), Some("q"));
                assert!(p.message.contains("not a prime power"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_instance("{\n  \"n\": 4,\n  \"m\": }") {
            Err(Error::Parse(p)) => assert_eq!(p.line, Some(3)),
            other => panic!("{other:?}"),
        }
        let bad = CLIQUE4.replace("[2,3,4]", "[3,2,4]");
        assert!(matches!(parse_instance(&bad), Err(Error::Parse(_))));
        let bad = CLIQUE4.replace("[2,3,4]", "[1,3,4]");
        assert!(matches!(parse_instance(&bad), Err(Error::Invalid(_))));
        let unknown = CLIQUE4.replace("\"n\":4", "\"n\":4,\"extra\":1");
        assert!(matches!(parse_instance(&unknown), Err(Error::Parse(_))));
    }

    #[test]
    fn nine_packet_round_trip() {
        let spec = ProblemSpec::new(nine_packet_graph(), field_make(2).unwrap(), 1, 0).unwrap();
        let text = serialize_instance(&spec);
        let back = parse_instance(&text).unwrap();
        assert_eq!(back, spec);
        assert_eq!(serialize_instance(&back), text);
    }

    #[test]
    fn erasure_flag_round_trips() {
        let text = CLIQUE4.replace("\"delta_c\":0", "\"delta_c\":0,\"side_error_model\":\"erasure\"");
        let spec = parse_instance(&text).unwrap();
        assert_eq!(spec.side_error_model, SideErrorModel::Erasure);
        assert_eq!(spec.side_budget(), 1);
        assert_eq!(parse_instance(&serialize_instance(&spec)).unwrap(), spec);
    }

    fn arb_graph() -> impl Strategy<Value = SideInfoGraph> {
        (1usize..7).prop_flat_map(|n| {
            proptest::collection::vec(any::<u8>(), n).prop_map(move |masks| {
                let side = masks
                    .iter()
                    .enumerate()
                    .map(|(i, &mk)| (0..n).filter(|&j| j != i && mk >> j & 1 == 1).collect())
                    .collect();
                SideInfoGraph::unipartite(side).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn demand_side_and_y_partition_packets(g in arb_graph()) {
            for i in 0..g.m() {
                let y = g.y_set(i).unwrap();
                let mut all: Vec<usize> = y.iter().chain(g.side(i).iter()).collect();
                all.push(g.demand(i));
                all.sort_unstable();
                prop_assert_eq!(all, (0..g.n()).collect::<Vec<_>>());
            }
        }

        #[test]
        fn packet_deletion_is_order_independent(g in arb_graph(), a in any::<u8>(), b in any::<u8>()) {
            let n = g.n();
            let a: IndexSet = (0..n).filter(|j| a >> j & 1 == 1).collect();
            let b: IndexSet = (0..n).filter(|j| b >> j & 1 == 1 && !a.contains(*j)).collect();
            let (ga, ma) = g.delete_packets(&a).unwrap();
            let b_in_a: IndexSet = b.iter().filter_map(|j| ma.old_to_new[j]).collect();
            let (gab, _) = ga.delete_packets(&b_in_a).unwrap();
            let (gb, mb) = g.delete_packets(&b).unwrap();
            let a_in_b: IndexSet = a.iter().filter_map(|j| mb.old_to_new[j]).collect();
            let (gba, _) = gb.delete_packets(&a_in_b).unwrap();
            let (both, _) = g.delete_packets(&a.union(&b)).unwrap();
            prop_assert_eq!(&gab, &both);
            prop_assert_eq!(&gba, &both);
        }

        #[test]
        fn instance_round_trip(g in arb_graph(), ds in 0usize..3, dc in 0usize..3, q in prop_oneof![Just(2u64), Just(3), Just(4)]) {
            let spec = ProblemSpec::new(g, field_make(q).unwrap(), ds, dc).unwrap();
            let text = serialize_instance(&spec);
            prop_assert_eq!(parse_instance(&text).unwrap(), spec);
        }
    }
}
