//! The interference set `I(q,G,δs)`, its support family `J(G,δs)`, the
//! generator validity test, and the Hamming-sphere decodability oracle.
//!
//! A vector `z` is interfering for receiver `i` when `z_f(i) ≠ 0` and at most
//! `side_budget` entries of `z` on `X_i` are nonzero. Membership therefore only
//! depends on the support of `z`.

use crate::budget::{ensure_mask_width, power_within, Budget};
use crate::error::{Error, Result};
use crate::gfield::{FieldElement, FieldSpec};
use crate::linalg::{weight, FMatrix, FVector, IndexSet};
use crate::sigraph::ProblemSpec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterferenceVector {
    pub z: FVector,
    /// First receiver `i` with `z ∈ I_i`.
    pub witness_receiver: usize,
}

/// A member `K` of `J(G,δs)` with the split that witnesses it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportPattern {
    pub k: IndexSet,
    pub receiver: usize,
    pub y_part: IndexSet,
    pub i_part: IndexSet,
}

/// Support-mask membership rule for `I`, one `(demand bit, side mask)` per receiver.
#[derive(Debug, Clone)]
pub(crate) struct SupportRule {
    receivers: Vec<(u64, u64)>,
    budget: u32,
}

impl SupportRule {
    pub fn new(spec: &ProblemSpec) -> Result<Self> {
        ensure_mask_width(spec.n(), "support masks")?;
        let g = spec.graph();
        Ok(SupportRule {
            receivers: (0..g.m()).map(|i| (1u64 << g.demand(i), g.side(i).mask())).collect(),
            budget: spec.side_budget() as u32,
        })
    }

    #[inline]
    pub fn witness(&self, support: u64) -> Option<usize> {
        self.receivers
            .iter()
            .position(|&(f, x)| support & f != 0 && (support & x).count_ones() <= self.budget)
    }

    #[inline]
    pub fn contains(&self, support: u64) -> bool {
        self.witness(support).is_some()
    }

    /// Membership for every support mask of an `n`-packet instance.
    pub fn table(&self, n: usize) -> Vec<bool> {
        (0..1u64 << n).map(|s| self.contains(s)).collect()
    }
}

pub(crate) fn support_mask(z: &[FieldElement]) -> u64 {
    z.iter()
        .enumerate()
        .fold(0, |m, (i, x)| if x.is_zero() { m } else { m | 1 << i })
}

/// Odometer over `F_q^len`, first coordinate most significant.
pub(crate) fn increment(field: &FieldSpec, v: &mut [FieldElement]) -> bool {
    let q = field.q();
    for x in v.iter_mut().rev() {
        if x.rep() + 1 < q {
            *x = field.elem(x.rep() + 1).expect("in range");
            return true;
        }
        *x = FieldElement::ZERO;
    }
    false
}

/// Odometer over `(F_q^*)^len`, starting from all ones.
pub(crate) fn next_nonzero(field: &FieldSpec, v: &mut [FieldElement]) -> bool {
    let q = field.q();
    for x in v.iter_mut().rev() {
        if x.rep() + 1 < q {
            *x = field.elem(x.rep() + 1).expect("in range");
            return true;
        }
        *x = FieldElement::ONE;
    }
    false
}

/// Lazily enumerates `I(q,G,δs)` in lexicographic order of the vectors.
pub struct InterferenceIter {
    field: FieldSpec,
    rule: SupportRule,
    next: Option<Vec<FieldElement>>,
}

impl Iterator for InterferenceIter {
    type Item = InterferenceVector;

    fn next(&mut self) -> Option<InterferenceVector> {
        loop {
            let z = self.next.as_mut()?;
            if !increment(&self.field, z) {
                self.next = None;
                return None;
            }
            if let Some(i) = self.rule.witness(support_mask(z)) {
                return Some(InterferenceVector {
                    z: FVector::from_entries_unchecked(&self.field, z.clone()),
                    witness_receiver: i,
                });
            }
        }
    }
}

/// Each `z ∈ I(q,G,δs)` exactly once. Fails if `q^n` exceeds the budget.
pub fn enum_interference(spec: &ProblemSpec, budget: &Budget) -> Result<InterferenceIter> {
    power_within(spec.q(), spec.n(), budget.enum_bits, "interference enumeration")?;
    Ok(InterferenceIter {
        field: spec.field().clone(),
        rule: SupportRule::new(spec)?,
        // Start at zero, which is never interfering; the first step moves past it.
        next: Some(vec![FieldElement::ZERO; spec.n()]),
    })
}

/// Whether `K ∈ J(G,δs)`, with the witnessing split.
pub fn in_support_family(spec: &ProblemSpec, k: &IndexSet) -> Result<Option<SupportPattern>> {
    if let Some(i) = k.max().filter(|&i| i >= spec.n()) {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: spec.n(),
        });
    }
    let g = spec.graph();
    for i in 0..g.m() {
        if !k.contains(g.demand(i)) {
            continue;
        }
        let i_part = k.intersection(g.side(i));
        if i_part.len() <= spec.side_budget() {
            let y_part = k.intersection(&g.y_set(i)?);
            return Ok(Some(SupportPattern {
                k: k.clone(),
                receiver: i,
                y_part,
                i_part,
            }));
        }
    }
    Ok(None)
}

/// Outcome of the validity test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    /// First interfering vector (in enumeration order) with `wt(zG) < 2δc + 1`.
    Invalid(InterferenceVector),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

pub(crate) fn check_generator_shape(spec: &ProblemSpec, g: &FMatrix) -> Result<()> {
    spec.field().check_same(g.field())?;
    if g.rows() != spec.n() {
        return Err(Error::DimensionMismatch(format!(
            "generator has {} rows for {} packets",
            g.rows(),
            spec.n()
        )));
    }
    Ok(())
}

/// `G` encodes the instance iff `wt(zG) ≥ 2δc + 1` for every `z ∈ I`.
pub fn is_valid_generator(spec: &ProblemSpec, g: &FMatrix, budget: &Budget) -> Result<Verdict> {
    check_generator_shape(spec, g)?;
    let need = 2 * spec.delta_c + 1;
    for iv in enum_interference(spec, budget)? {
        if weight(&g.left_mul_slice(iv.z.entries())) < need {
            return Ok(Verdict::Invalid(iv));
        }
    }
    Ok(Verdict::Valid)
}

/// A receiver and two messages it would have to tell apart but cannot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Confusion {
    pub receiver: usize,
    pub x: FVector,
    pub x_prime: FVector,
}

/// Decodability straight from the sphere definition: for every receiver and
/// every message pair that differs in the demanded symbol and in at most
/// `side_budget` cached symbols, the radius-`δc` spheres around the two
/// codewords must not intersect. Spheres are materialized as sets of words.
pub fn oracle_decodable(spec: &ProblemSpec, g: &FMatrix, budget: &Budget) -> Result<Option<Confusion>> {
    check_generator_shape(spec, g)?;
    let field = spec.field();
    let n = spec.n();
    let len = g.cols();
    let messages = power_within(spec.q(), n, budget.pair_bits / 2, "sphere oracle message pairs")? as usize;
    power_within(spec.q(), len, 63, "sphere oracle word encoding")?;

    let mut all_messages = Vec::with_capacity(messages);
    let mut x = vec![FieldElement::ZERO; n];
    loop {
        all_messages.push(x.clone());
        if !increment(field, &mut x) {
            break;
        }
    }
    let spheres: Vec<Vec<u64>> = all_messages
        .iter()
        .map(|x| sphere(field, &g.left_mul_slice(x), spec.delta_c))
        .collect();

    let graph = spec.graph();
    let slack = spec.side_budget();
    for i in 0..graph.m() {
        let f = graph.demand(i);
        let side = graph.side(i);
        for (a, xa) in all_messages.iter().enumerate() {
            for (b, xb) in all_messages.iter().enumerate().skip(a + 1) {
                if xa[f] == xb[f] {
                    continue;
                }
                let differing = side.iter().filter(|&j| xa[j] != xb[j]).count();
                if differing > slack {
                    continue;
                }
                if intersects(&spheres[a], &spheres[b]) {
                    return Ok(Some(Confusion {
                        receiver: i,
                        x: FVector::from_entries_unchecked(field, xa.clone()),
                        x_prime: FVector::from_entries_unchecked(field, xb.clone()),
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Every word within Hamming distance `radius` of `center`, encoded base `q`, sorted.
fn sphere(field: &FieldSpec, center: &[FieldElement], radius: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut word = center.to_vec();
    grow_sphere(field, &mut word, 0, radius, &mut out);
    out.sort_unstable();
    out.dedup();
    out
}

fn grow_sphere(field: &FieldSpec, word: &mut [FieldElement], from: usize, radius: usize, out: &mut Vec<u64>) {
    let q = field.q() as u64;
    out.push(word.iter().fold(0u64, |acc, x| acc * q + x.rep() as u64));
    if radius == 0 {
        return;
    }
    for pos in from..word.len() {
        let orig = word[pos];
        for e in field.nonzero() {
            word[pos] = field.add(orig, e);
            grow_sphere(field, word, pos + 1, radius - 1, out);
        }
        word[pos] = orig;
    }
}

fn intersects(a: &[u64], b: &[u64]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}
