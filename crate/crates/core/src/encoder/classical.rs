//! Classical coding quantities: minimum distance, shortest codes and
//! maximal `k`-independent point sets.

use super::cover::Cover;
use super::search::normalized_vectors;
use crate::budget::{power_within, Budget};
use crate::codeset::{increment, next_nonzero};
use crate::error::{Error, Result};
use crate::gfield::{FieldElement, FieldSpec};
use crate::linalg::{dot, weight, FMatrix};

/// Minimum weight of a nonzero codeword spanned by the rows of `g`, or `None`
/// when the code is `{0}`.
pub fn min_distance(g: &FMatrix, budget: &Budget) -> Result<Option<usize>> {
    let basis = g.rref();
    let k = basis.1.len();
    let gen = basis.0.submatrix_rows(&(0..k).collect())?;
    power_within(g.field().q(), k, budget.enum_bits, "minimum distance")?;
    let mut m = vec![FieldElement::ZERO; k];
    let mut best = None;
    while increment(g.field(), &mut m) {
        let w = weight(&gen.left_mul_slice(&m));
        if best.is_none_or(|b| w < b) {
            best = Some(w);
        }
    }
    Ok(best)
}

/// Minimum distance of the code `{c : H cᵀ = 0}`.
pub fn min_distance_of_parity(h: &FMatrix, budget: &Budget) -> Result<Option<usize>> {
    min_distance(&h.null_space_basis(), budget)
}

/// `Σ_{i<a} ⌈d / q^i⌉`, a lower bound on the length of any `[n, a, d]` code.
pub fn griesmer(q: u32, a: usize, d: usize) -> usize {
    let mut total = 0;
    let mut p = 1usize;
    for _ in 0..a {
        total += d.div_ceil(p);
        p = p.saturating_mul(q as usize);
    }
    total
}

/// A shortest linear `[n, a, ≥d]` code over `F_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortestCode {
    pub length: usize,
    /// Systematic `a × length` generator.
    pub generator: FMatrix,
}

/// Shortest length of a linear code over `F_q` of dimension `a` and minimum
/// distance at least `d`. Lengths are tried upward from the Griesmer bound;
/// at each length every systematic generator `[I | P]` is considered up to
/// permutation and scaling of the columns of `P`.
pub fn l_q(field: &FieldSpec, a: usize, d: usize, budget: &Budget) -> Result<ShortestCode> {
    if a == 0 {
        return Ok(ShortestCode {
            length: 0,
            generator: FMatrix::zeros(field, 0, 0),
        });
    }
    let d = d.max(1);
    let messages = normalized_vectors(field, a);
    let columns = normalized_vectors(field, a);
    let hits = columns
        .iter()
        .map(|c| {
            (0..messages.len() as u32)
                .filter(|&t| !dot(field, &messages[t as usize], c).is_zero())
                .collect()
        })
        .collect();
    let cover = Cover {
        hits,
        base: messages.iter().map(|m| weight(m)).collect(),
        need: d,
    };
    let start = griesmer(field.q(), a, d).max(a);
    for length in start..=budget.max_code_len.max(start) {
        if length > budget.max_code_len {
            break;
        }
        let mut found = None;
        cover.search(length - a, budget.search_nodes, &mut |chosen| {
            found = Some(chosen.to_vec());
            false
        })?;
        if let Some(chosen) = found {
            let mut g = FMatrix::zeros(field, a, length);
            for i in 0..a {
                g.set(i, i, field.one());
            }
            for (t, &c) in chosen.iter().enumerate() {
                for (i, &x) in columns[c].iter().enumerate() {
                    g.set(i, a + t, x);
                }
            }
            return Ok(ShortestCode { length, generator: g });
        }
    }
    Err(Error::budget(
        "shortest code length",
        format!("> {}", budget.max_code_len),
        budget.max_code_len,
    ))
}

/// Largest number of points of `F_q^len` such that every `k` of them (every
/// one of them when fewer than `k`) are linearly independent. For `k > len`
/// this is a basis, so the answer is `len`.
pub fn ind_q(field: &FieldSpec, len: usize, k: usize, budget: &Budget) -> Result<usize> {
    let total = power_within(field.q(), len, budget.ind_bits, "independent set search")?;
    if k == 0 {
        return Err(Error::DimensionMismatch("independence order must be positive".into()));
    }
    if k == 1 {
        return Ok(total as usize - 1);
    }
    if k > len {
        return Ok(len);
    }
    // Any two of the points are independent, so only projective points matter,
    // and any k of them can be moved to the unit vectors.
    let points = normalized_vectors(field, len);
    let index = |v: &[FieldElement]| -> usize {
        points
            .binary_search_by(|p| p.as_slice().cmp(v))
            .expect("normalized point")
    };
    let mut s = IndSearch {
        field,
        points: &points,
        index: &index,
        k,
        chosen: Vec::new(),
        forbidden: vec![0; points.len()],
        best: 0,
        nodes: 0,
        node_limit: budget.search_nodes,
    };
    for i in 0..k {
        let mut e = vec![FieldElement::ZERO; len];
        e[i] = FieldElement::ONE;
        let p = index(&e);
        s.add(p);
    }
    s.best = k;
    s.go(0)?;
    Ok(s.best)
}

struct IndSearch<'a> {
    field: &'a FieldSpec,
    points: &'a [Vec<FieldElement>],
    index: &'a dyn Fn(&[FieldElement]) -> usize,
    k: usize,
    chosen: Vec<usize>,
    /// How many spans of at most `k−1` chosen points contain each point.
    forbidden: Vec<u32>,
    best: usize,
    nodes: u64,
    node_limit: u64,
}

impl IndSearch<'_> {
    fn go(&mut self, from: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Error::budget(
                "independent set search",
                format!("> {} nodes", self.node_limit),
                self.node_limit,
            ));
        }
        self.best = self.best.max(self.chosen.len());
        let open: Vec<usize> = (from..self.points.len()).filter(|&p| self.forbidden[p] == 0).collect();
        for (t, &p) in open.iter().enumerate() {
            if self.chosen.len() + open.len() - t <= self.best {
                break;
            }
            if self.forbidden[p] != 0 {
                continue;
            }
            let touched = self.add(p);
            self.go(p + 1)?;
            self.chosen.pop();
            for q in touched {
                self.forbidden[q] -= 1;
            }
        }
        Ok(())
    }

    /// Adds `p` and forbids every point in the span of `p` with at most `k−2`
    /// earlier points. Returns the forbidden increments for undoing.
    fn add(&mut self, p: usize) -> Vec<usize> {
        let mut touched = Vec::new();
        let prior = self.chosen.clone();
        let mut subset = Vec::new();
        self.spans_with(p, &prior, 0, &mut subset, &mut touched);
        for &q in &touched {
            self.forbidden[q] += 1;
        }
        self.chosen.push(p);
        touched
    }

    fn spans_with(&self, p: usize, prior: &[usize], from: usize, subset: &mut Vec<usize>, out: &mut Vec<usize>) {
        // combinations c_0·p + Σ c_j·subset_j with every coefficient nonzero
        let f = self.field;
        let mut coeffs = vec![FieldElement::ONE; subset.len()];
        loop {
            let mut v = self.points[p].clone();
            for (&c, &s) in coeffs.iter().zip(subset.iter()) {
                for (x, &y) in v.iter_mut().zip(&self.points[s]) {
                    *x = f.add(*x, f.mul(c, y));
                }
            }
            if let Some(lead) = v.iter().find(|x| !x.is_zero()).copied() {
                let inv = f.inv(lead).expect("nonzero");
                for x in v.iter_mut() {
                    *x = f.mul(inv, *x);
                }
                out.push((self.index)(&v));
            }
            if !next_nonzero(f, &mut coeffs) {
                break;
            }
        }
        if subset.len() + 2 >= self.k {
            return;
        }
        for j in from..prior.len() {
            subset.push(prior[j]);
            self.spans_with(p, prior, j + 1, subset, out);
            subset.pop();
        }
    }
}
