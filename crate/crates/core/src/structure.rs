//! Cycle structure of an instance and the bounds it yields on the optimal
//! code length.
//!
//! A packet set `B` is a cycle set when every receiver demanding a packet of
//! `B` caches more than `side_budget` packets of `B`. An instance without
//! cycle sets cannot be compressed below `n`; disjoint cycle sets each save
//! one transmission.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::budget::{ensure_mask_width, power_within, Budget};
use crate::codeset::SupportRule;
use crate::encoder::{cycle_code, l_q, optimal_length, GeneratorMatrix};
use crate::error::{Error, Result};
use crate::linalg::{FMatrix, IndexSet};
use crate::sigraph::ProblemSpec;

/// A member of `Φ` together with the receivers whose demand lies in it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleSet {
    pub packets: IndexSet,
    pub receivers: Vec<usize>,
}

fn check_subsets(spec: &ProblemSpec, budget: &Budget, what: &'static str) -> Result<usize> {
    let n = spec.n();
    ensure_mask_width(n, what)?;
    power_within(2, n, budget.subset_bits, what)?;
    Ok(n)
}

/// `phi[B]` for every packet mask `B`, straight from the defining condition.
fn phi_table(spec: &ProblemSpec, budget: &Budget) -> Result<Vec<bool>> {
    let n = check_subsets(spec, budget, "cycle set enumeration")?;
    let g = spec.graph();
    let need = spec.side_budget() as u32 + 1;
    let receivers: Vec<(u64, u64)> = (0..g.m()).map(|i| (1u64 << g.demand(i), g.side(i).mask())).collect();
    Ok((0..1u64 << n)
        .map(|b| {
            b != 0
                && receivers
                    .iter()
                    .all(|&(f, x)| b & f == 0 || (b & x).count_ones() >= need)
        })
        .collect())
}

fn minimal_masks(phi: &[bool]) -> Vec<u64> {
    // contains[B]: some member of Φ lies inside B
    let mut contains = vec![false; phi.len()];
    let mut minimal = Vec::new();
    for b in 1..phi.len() {
        let below = (0..usize::BITS).any(|j| b >> j & 1 == 1 && contains[b & !(1 << j)]);
        if phi[b] && !below {
            minimal.push(b as u64);
        }
        contains[b] = phi[b] || below;
    }
    minimal
}

fn cycle_set(spec: &ProblemSpec, mask: u64) -> CycleSet {
    let g = spec.graph();
    CycleSet {
        packets: IndexSet::from_mask(mask),
        receivers: (0..g.m()).filter(|&i| mask >> g.demand(i) & 1 == 1).collect(),
    }
}

/// Minimal cycle sets, ordered by size and then lexicographically.
pub fn find_cycles(spec: &ProblemSpec, budget: &Budget) -> Result<Vec<CycleSet>> {
    let mut sets: Vec<CycleSet> = minimal_masks(&phi_table(spec, budget)?)
        .into_iter()
        .map(|m| cycle_set(spec, m))
        .collect();
    sets.sort_by(|a, b| (a.packets.len(), a.packets.as_slice()).cmp(&(b.packets.len(), b.packets.as_slice())));
    Ok(sets)
}

pub fn is_acyclic(spec: &ProblemSpec, budget: &Budget) -> Result<bool> {
    Ok(!phi_table(spec, budget)?.contains(&true))
}

/// Largest number of pairwise disjoint cycle sets, with one such packing.
/// Every cycle set contains a minimal one, so packing minimal sets suffices.
pub fn max_disjoint_cycles(spec: &ProblemSpec, budget: &Budget) -> Result<(usize, Vec<CycleSet>)> {
    let n = spec.n();
    let minimal = minimal_masks(&phi_table(spec, budget)?);
    let mut memo: Vec<Option<(u8, u64)>> = vec![None; 1 << n];
    let full = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let beta = pack(full, &minimal, &mut memo);
    let mut witness = Vec::new();
    let mut avail = full;
    while let Some((count, choice)) = memo[avail as usize] {
        if count == 0 {
            break;
        }
        if choice == 0 {
            avail &= avail - 1;
            continue;
        }
        witness.push(cycle_set(spec, choice));
        avail &= !choice;
    }
    Ok((beta, witness))
}

/// Best packing inside `avail`: either the lowest available packet is left
/// out, or it is covered by a minimal cycle set inside `avail`.
fn pack(avail: u64, minimal: &[u64], memo: &mut [Option<(u8, u64)>]) -> usize {
    if avail == 0 {
        return 0;
    }
    if let Some((c, _)) = memo[avail as usize] {
        return c as usize;
    }
    let low = avail & avail.wrapping_neg();
    let mut best = (pack(avail & !low, minimal, memo) as u8, 0u64);
    for &b in minimal {
        if b & low != 0 && b & !avail == 0 {
            let c = 1 + pack(avail & !b, minimal, memo) as u8;
            if c > best.0 {
                best = (c, b);
            }
        }
    }
    memo[avail as usize] = Some(best);
    best.0 as usize
}

/// Largest packet set all of whose nonempty subsets lie in the support family,
/// with the lexicographically first such set.
pub fn gamma(spec: &ProblemSpec, budget: &Budget) -> Result<(usize, IndexSet)> {
    let n = check_subsets(spec, budget, "independent set enumeration")?;
    let rule = SupportRule::new(spec)?;
    let mut good = vec![false; 1 << n];
    good[0] = true;
    for q in 1usize..1 << n {
        good[q] = rule.contains(q as u64) && (0..n).all(|j| q >> j & 1 == 0 || good[q & !(1 << j)]);
    }
    Ok(largest(&good))
}

fn largest(good: &[bool]) -> (usize, IndexSet) {
    let mut best = IndexSet::new();
    for (q, _) in good.iter().enumerate().filter(|(_, &ok)| ok) {
        let set = IndexSet::from_mask(q as u64);
        if set.len() > best.len() || (set.len() == best.len() && set.as_slice() < best.as_slice()) {
            best = set;
        }
    }
    (best.len(), best)
}

/// Largest packet set whose induced sub-instance has no cycle set. Requires a
/// unipartite instance.
pub fn delta_s_mais(spec: &ProblemSpec, budget: &Budget) -> Result<(usize, IndexSet)> {
    if !spec.graph().is_unipartite() {
        return Err(Error::NotUnipartite);
    }
    let phi = phi_table(spec, budget)?;
    // Cycle sets of the induced sub-instance on Q are exactly the cycle sets inside Q.
    let mut has_cycle = vec![false; phi.len()];
    for q in 1..phi.len() {
        has_cycle[q] = phi[q] || (0..usize::BITS).any(|j| q >> j & 1 == 1 && has_cycle[q & !(1 << j)]);
    }
    let acyclic: Vec<bool> = has_cycle.iter().map(|c| !c).collect();
    Ok(largest(&acyclic))
}

/// Generator of length `n − |cycles|`: a bidiagonal block on each (disjoint)
/// cycle set and an identity column for every other packet.
pub fn cycle_packing_generator(spec: &ProblemSpec, cycles: &[CycleSet], budget: &Budget) -> Result<GeneratorMatrix> {
    let field = spec.field();
    let n = spec.n();
    let mut covered = IndexSet::new();
    for c in cycles {
        if !c.packets.intersection(&covered).is_empty() {
            return Err(Error::DimensionMismatch("cycle sets overlap".into()));
        }
        covered = covered.union(&c.packets);
    }
    let len = n - cycles.len();
    let mut g = FMatrix::zeros(field, n, len);
    let mut col = 0;
    for c in cycles {
        let block = cycle_code(field, c.packets.len(), spec.side_budget())?;
        for (r, j) in c.packets.iter().enumerate() {
            for k in 0..block.cols() {
                g.set(j, col + k, block.get(r, k));
            }
        }
        col += block.cols();
    }
    for j in (0..n).filter(|&j| !covered.contains(j)) {
        g.set(j, col, field.one());
        col += 1;
    }
    GeneratorMatrix::certify(spec, g, budget)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Lower,
    Upper,
    Exact,
}

/// Which optimal length an entry bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    /// Shortest code without channel errors.
    Icsie,
    /// Shortest code also correcting `δc` channel errors.
    Gecic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundEntry {
    pub name: &'static str,
    pub quantity: Quantity,
    pub kind: BoundKind,
    /// `None` when the computation did not finish; see `provenance`.
    pub value: Option<usize>,
    pub provenance: String,
    /// False when the value comes from sampling rather than exhaustion.
    pub certified: bool,
    /// Whether the value equals the computed optimum, when that is known.
    pub attained: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub entries: Vec<BoundEntry>,
}

impl BoundsReport {
    pub fn get(&self, name: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn value(&self, name: &str) -> Option<usize> {
        self.get(name).and_then(|e| e.value)
    }

    /// Pairs of entries bounding the same quantity that contradict each other.
    pub fn inconsistencies(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for (ia, a) in self.entries.iter().enumerate() {
            for (ib, b) in self.entries.iter().enumerate() {
                let (Some(va), Some(vb)) = (a.value, b.value) else {
                    continue;
                };
                let below = matches!(a.kind, BoundKind::Lower | BoundKind::Exact);
                let above = matches!(b.kind, BoundKind::Upper | BoundKind::Exact);
                if ia != ib && a.quantity == b.quantity && below && above && va > vb {
                    out.push((a.name.to_string(), b.name.to_string()));
                }
            }
        }
        out
    }

    pub fn is_consistent(&self) -> bool {
        self.inconsistencies().is_empty()
    }
}

struct Builder {
    entries: Vec<BoundEntry>,
}

impl Builder {
    fn push(
        &mut self,
        name: &'static str,
        quantity: Quantity,
        kind: BoundKind,
        value: Result<usize>,
        provenance: impl Into<String>,
        certified: bool,
    ) {
        let provenance = provenance.into();
        let (value, provenance) = match value {
            Ok(v) => (Some(v), provenance),
            Err(e) => (None, format!("{provenance}: {e}")),
        };
        self.entries.push(BoundEntry {
            name,
            quantity,
            kind,
            value,
            provenance,
            certified,
            attained: None,
        });
    }
}

/// Every bound this crate knows how to compute, each computed independently.
/// Failures (budget or otherwise) are recorded in the entry, never returned.
pub fn bounds_report(spec: &ProblemSpec, budget: &Budget) -> BoundsReport {
    use BoundKind::*;
    use Quantity::*;
    let n = spec.n();
    let b = spec.side_budget();
    let g = spec.graph();
    let base = spec.with_delta_c(0);
    let mut r = Builder { entries: Vec::new() };

    let n_opt = optimal_length(&base, budget).map(|g| g.length());
    r.push(
        "n_opt",
        Icsie,
        Exact,
        n_opt.clone(),
        "exhaustive generator search",
        true,
    );

    let gamma_v = gamma(spec, budget).map(|(v, _)| v);
    r.push(
        "gamma",
        Icsie,
        Lower,
        gamma_v.clone(),
        "generalized independence number",
        true,
    );

    let s = (0..g.m())
        .filter(|&i| g.side(i).len() <= b)
        .map(|i| g.demand(i))
        .collect::<IndexSet>();
    r.push(
        "S_plus_1",
        Icsie,
        Lower,
        Ok((s.len() + 1).min(n)),
        format!("{} packets with at most {b} cached symbols", s.len()),
        true,
    );

    let (ed, ed_prov, ed_cert) = edge_deletion_lower(spec, budget);
    r.push("edge_deletion_lower", Icsie, Lower, ed, ed_prov, ed_cert);

    let beta = max_disjoint_cycles(spec, budget);
    r.push(
        "n_minus_beta",
        Icsie,
        Upper,
        beta.as_ref().map(|(k, _)| n - k).map_err(Clone::clone),
        "disjoint cycle sets",
        true,
    );
    r.push("n", Icsie, Upper, Ok(n), "uncoded transmission", true);

    match is_acyclic(spec, budget) {
        Ok(true) => r.push(
            "acyclic_exact",
            Icsie,
            Exact,
            Ok(n),
            "no cycle set: the optimum is n",
            true,
        ),
        Ok(false) => {}
        Err(e) => r.push("acyclic_exact", Icsie, Exact, Err(e), "cycle set enumeration", true),
    }
    if let Ok((k, witness)) = &beta {
        if *k > 0 {
            match packing_breaks_all_cycles(spec, witness, budget) {
                Ok(Some(removed)) => r.push(
                    "disjoint_cycles_exact",
                    Icsie,
                    Exact,
                    Ok(n - k),
                    format!(
                        "removing packets {} from the packing leaves no cycle set",
                        one_based(&removed)
                    ),
                    true,
                ),
                Ok(None) => {}
                Err(e) => r.push("disjoint_cycles_exact", Icsie, Exact, Err(e), "cycle packing", true),
            }
        }
    }

    if spec.delta_c > 0 {
        let dc = spec.delta_c;
        let d = 2 * dc + 1;
        let field = spec.field();
        r.push(
            "gecic_n_opt",
            Gecic,
            Exact,
            optimal_length(spec, budget).map(|g| g.length()),
            "exhaustive column search",
            true,
        );
        r.push(
            "gecic_lower",
            Gecic,
            Lower,
            n_opt.clone().map(|v| v + 2 * dc),
            format!("n_opt + {}", 2 * dc),
            true,
        );
        r.push(
            "gecic_gamma_lower",
            Gecic,
            Lower,
            gamma_v.and_then(|v| l_q(field, v, d, budget)).map(|c| c.length),
            format!("shortest code of dimension gamma and distance {d}"),
            true,
        );
        r.push(
            "gecic_upper",
            Gecic,
            Upper,
            n_opt.clone().and_then(|v| l_q(field, v, d, budget)).map(|c| c.length),
            format!("shortest code of dimension n_opt and distance {d}"),
            true,
        );
    }

    let icsie = n_opt.ok();
    let gecic = r.entries.iter().find(|e| e.name == "gecic_n_opt").and_then(|e| e.value);
    for e in &mut r.entries {
        let opt = match e.quantity {
            Icsie => icsie,
            Gecic => gecic,
        };
        if e.name != "n_opt" && e.name != "gecic_n_opt" {
            e.attained = match (e.value, opt) {
                (Some(v), Some(o)) => Some(v == o),
                _ => None,
            };
        }
    }
    BoundsReport { entries: r.entries }
}

fn one_based(s: &IndexSet) -> String {
    format!(
        "{{{}}}",
        s.iter().map(|j| (j + 1).to_string()).collect::<Vec<_>>().join(",")
    )
}

/// One packet from each cycle set of the packing such that every cycle set of
/// the instance loses a packet, if such a choice exists.
fn packing_breaks_all_cycles(spec: &ProblemSpec, packing: &[CycleSet], budget: &Budget) -> Result<Option<IndexSet>> {
    let minimal = minimal_masks(&phi_table(spec, budget)?);
    let choices: Vec<&[usize]> = packing.iter().map(|c| c.packets.as_slice()).collect();
    let total: u128 = choices.iter().map(|c| c.len() as u128).product();
    if total > budget.edge_deletion_exhaustive as u128 * 100 {
        return Err(Error::budget(
            "cycle packing choices",
            total,
            budget.edge_deletion_exhaustive * 100,
        ));
    }
    let mut pick = vec![0usize; choices.len()];
    loop {
        let removed: u64 = pick.iter().zip(&choices).fold(0, |m, (&k, c)| m | 1 << c[k]);
        if minimal.iter().all(|&b| b & removed != 0) {
            return Ok(Some(IndexSet::from_mask(removed)));
        }
        let mut t = 0;
        loop {
            if t == pick.len() {
                return Ok(None);
            }
            pick[t] += 1;
            if pick[t] < choices[t].len() {
                break;
            }
            pick[t] = 0;
            t += 1;
        }
    }
}

/// Largest conventional optimum over the graphs obtained by deleting
/// `min(side_budget, |X_i|)` cached packets from every receiver.
fn edge_deletion_lower(spec: &ProblemSpec, budget: &Budget) -> (Result<usize>, String, bool) {
    let g = spec.graph();
    let b = spec.side_budget();
    let options: Vec<Vec<IndexSet>> = (0..g.m())
        .map(|i| {
            let x = g.side(i);
            crate::encoder::combinations(x.as_slice(), b.min(x.len()))
        })
        .collect();
    let total: u128 = options.iter().map(|o| o.len() as u128).product();
    let conventional = |removed: &[IndexSet]| -> Result<usize> {
        let reduced = g.delete_side_edges(removed)?;
        let s = spec.with_graph(reduced)?.with_delta_s(0).with_delta_c(0);
        Ok(optimal_length(&s, budget)?.length())
    };
    let mut best = 0;
    if total <= budget.edge_deletion_exhaustive as u128 {
        let mut pick = vec![0usize; options.len()];
        loop {
            let removed: Vec<IndexSet> = pick.iter().zip(&options).map(|(&k, o)| o[k].clone()).collect();
            match conventional(&removed) {
                Ok(v) => best = best.max(v),
                Err(e) => return (Err(e), "edge deletion".into(), true),
            }
            let mut t = 0;
            loop {
                if t == pick.len() {
                    return (Ok(best), format!("edge deletion, exhaustive over {total} graphs"), true);
                }
                pick[t] += 1;
                if pick[t] < options[t].len() {
                    break;
                }
                pick[t] = 0;
                t += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    for _ in 0..budget.edge_deletion_samples {
        let removed: Vec<IndexSet> = (0..g.m())
            .map(|i| {
                let x = g.side(i);
                let k = b.min(x.len());
                sample(&mut rng, x.len(), k)
                    .into_iter()
                    .map(|t| x.as_slice()[t])
                    .collect()
            })
            .collect();
        match conventional(&removed) {
            Ok(v) => best = best.max(v),
            Err(e) => return (Err(e), "edge deletion (sampled)".into(), false),
        }
    }
    (
        Ok(best),
        format!(
            "edge deletion, sampled {} of {total} graphs",
            budget.edge_deletion_samples
        ),
        false,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{clique_spec, directed_cycle, disjoint_union};
    use crate::gfield::field_make;
    use crate::sigraph::SideInfoGraph;

    fn b() -> Budget {
        Budget::default()
    }

    fn spec(g: SideInfoGraph, ds: usize) -> ProblemSpec {
        ProblemSpec::new(g, field_make(2).unwrap(), ds, 0).unwrap()
    }

    #[test]
    fn clique_cycles() {
        let c = find_cycles(&clique_spec(4, 2, 1, 0), &b()).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].packets, [0, 1, 2, 3].into());
        assert_eq!(c[0].receivers, vec![0, 1, 2, 3]);
        assert!(is_acyclic(&clique_spec(3, 2, 1, 0), &b()).unwrap());
        assert!(!is_acyclic(&spec(directed_cycle(5), 0), &b()).unwrap());
        assert_eq!(
            find_cycles(&spec(directed_cycle(5), 0), &b()).unwrap()[0].packets,
            (0..5).collect()
        );
    }

    #[test]
    fn disjoint_cycles() {
        assert_eq!(max_disjoint_cycles(&clique_spec(4, 2, 1, 0), &b()).unwrap().0, 1);
        let two = disjoint_union(&[SideInfoGraph::clique(4), SideInfoGraph::clique(4)]);
        let (beta, witness) = max_disjoint_cycles(&spec(two, 1), &b()).unwrap();
        assert_eq!(beta, 2);
        assert_eq!(witness.len(), 2);
        assert_eq!(max_disjoint_cycles(&clique_spec(3, 2, 1, 0), &b()).unwrap().0, 0);
        // δs = 0 clique-4: three disjoint pairs is impossible, two are
        assert_eq!(max_disjoint_cycles(&clique_spec(4, 2, 0, 0), &b()).unwrap().0, 2);
    }

    #[test]
    fn gamma_and_mais() {
        assert_eq!(gamma(&clique_spec(4, 2, 1, 0), &b()).unwrap().0, 3);
        assert_eq!(delta_s_mais(&clique_spec(4, 2, 1, 0), &b()).unwrap().0, 3);
        assert_eq!(gamma(&clique_spec(3, 2, 1, 0), &b()).unwrap().0, 3);
        assert_eq!(gamma(&clique_spec(5, 2, 0, 0), &b()).unwrap().0, 1);
        assert_eq!(delta_s_mais(&spec(directed_cycle(6), 0), &b()).unwrap().0, 5);
        let chain = SideInfoGraph::unipartite(vec![[1].into(), [2].into(), IndexSet::new()]).unwrap();
        assert_eq!(delta_s_mais(&spec(chain, 0), &b()).unwrap().0, 3);
    }

    #[test]
    fn mais_needs_unipartite() {
        let g = SideInfoGraph::new(2, vec![0, 1, 1], vec![[1].into(), [0].into(), IndexSet::new()]).unwrap();
        assert!(matches!(delta_s_mais(&spec(g, 0), &b()), Err(Error::NotUnipartite)));
    }

    #[test]
    fn packing_generator_is_valid() {
        let two = disjoint_union(&[
            SideInfoGraph::clique(4),
            SideInfoGraph::clique(4),
            SideInfoGraph::clique(2),
        ]);
        let s = spec(two, 1);
        let (beta, witness) = max_disjoint_cycles(&s, &b()).unwrap();
        let g = cycle_packing_generator(&s, &witness, &b()).unwrap();
        assert_eq!(g.length(), 10 - beta);
    }

    #[test]
    fn clique4_report() {
        let r = bounds_report(&clique_spec(4, 2, 1, 0), &b());
        assert_eq!(r.value("n_opt"), Some(3));
        assert_eq!(r.value("gamma"), Some(3));
        assert_eq!(r.value("n_minus_beta"), Some(3));
        assert_eq!(r.value("edge_deletion_lower"), Some(3));
        assert_eq!(r.value("S_plus_1"), Some(1));
        assert_eq!(r.value("disjoint_cycles_exact"), Some(3));
        assert!(r.get("acyclic_exact").is_none());
        assert_eq!(r.get("gamma").unwrap().attained, Some(true));
        assert!(r.get("edge_deletion_lower").unwrap().certified);
        assert!(r.is_consistent(), "{:?}", r.inconsistencies());
    }

    #[test]
    fn acyclic_report() {
        let r = bounds_report(&clique_spec(3, 2, 1, 0), &b());
        assert_eq!(r.value("acyclic_exact"), Some(3));
        assert_eq!(r.value("n_opt"), Some(3));
        assert_eq!(r.value("S_plus_1"), Some(3));
    }

    #[test]
    fn channel_error_report() {
        let r = bounds_report(&clique_spec(4, 2, 1, 1), &b());
        assert_eq!(r.value("gecic_lower"), Some(5));
        assert_eq!(r.value("gecic_upper"), Some(6));
        let exact = r.value("gecic_n_opt").unwrap();
        assert!((5..=6).contains(&exact));
        assert!(r.is_consistent(), "{:?}", r.inconsistencies());
    }

    #[test]
    fn sampled_edge_deletion_is_marked() {
        let budget = Budget {
            edge_deletion_exhaustive: 10,
            edge_deletion_samples: 8,
            ..b()
        };
        let r = bounds_report(&clique_spec(4, 2, 1, 0), &budget);
        let e = r.get("edge_deletion_lower").unwrap();
        assert!(!e.certified);
        assert!(e.provenance.contains("sampled"));
        assert!(e.value.unwrap() <= 3);
    }

    #[test]
    fn budget_failures_are_recorded() {
        let budget = Budget { subset_bits: 2, ..b() };
        let r = bounds_report(&clique_spec(4, 2, 1, 0), &budget);
        assert_eq!(r.value("gamma"), None);
        assert!(r.get("gamma").unwrap().provenance.contains("budget"));
    }

    #[test]
    fn inconsistency_is_detected() {
        let mut r = bounds_report(&clique_spec(4, 2, 1, 0), &b());
        r.entries.iter_mut().find(|e| e.name == "gamma").unwrap().value = Some(4);
        assert!(!r.is_consistent());
    }
}
