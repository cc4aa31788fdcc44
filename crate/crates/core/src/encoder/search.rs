//! Exhaustive search for the shortest valid generator.
//!
//! Without channel errors a generator is valid exactly when its left kernel
//! avoids the interference set, and validity only depends on the column
//! space. The search therefore walks subspaces `K ⊆ F_q^n` in reduced echelon
//! form, largest dimension first, and reads a generator off as the reduced
//! column-echelon basis of `K^⊥`.
//!
//! With channel errors the weight of `zG` matters, which is invariant only
//! under column permutation and scaling; the search then walks multisets of
//! normalized columns.

use super::cover::Cover;
use super::generator::GeneratorMatrix;
use crate::budget::{ensure_mask_width, power_within, Budget};
use crate::codeset::{enum_interference, increment, SupportRule};
use crate::error::{Error, Result};
use crate::gfield::{FieldElement, FieldSpec};
use crate::linalg::{dot, FMatrix};
use crate::sigraph::ProblemSpec;

/// Shortest valid generator for `spec`. Among all optimal candidates the one
/// with the lexicographically smallest row-major serialization is returned.
pub fn optimal_length(spec: &ProblemSpec, budget: &Budget) -> Result<GeneratorMatrix> {
    let start = if spec.delta_c == 0 { 1 } else { 2 * spec.delta_c + 1 };
    let limit = if spec.delta_c == 0 {
        spec.n()
    } else {
        budget.max_code_len
    };
    for len in start..=limit {
        if let Some(g) = find_generator_of_length(spec, len, budget)? {
            return Ok(g);
        }
    }
    if spec.delta_c == 0 {
        // the identity always works, so this is only reached for n = 0
        return GeneratorMatrix::certify(spec, FMatrix::identity(spec.field(), spec.n()), budget);
    }
    Err(Error::budget(
        "generator length",
        format!("> {}", budget.max_code_len),
        budget.max_code_len,
    ))
}

/// A valid generator with exactly `len` columns, if one exists; the
/// lexicographically smallest canonical one.
pub fn find_generator_of_length(spec: &ProblemSpec, len: usize, budget: &Budget) -> Result<Option<GeneratorMatrix>> {
    let g = if spec.delta_c == 0 {
        if len > spec.n() {
            // pad the identity with zero columns
            let found = find_generator_of_length(spec, spec.n(), budget)?.expect("identity is valid");
            let mut rows = found.matrix().row_reps();
            for r in &mut rows {
                r.resize(len, 0);
            }
            Some(FMatrix::from_rows(spec.field(), &rows, len)?)
        } else {
            kernel_search(spec, spec.n() - len, budget)?
        }
    } else {
        column_search(spec, len, budget)?
    };
    g.map(|g| GeneratorMatrix::certify(spec, g, budget)).transpose()
}

fn kernel_search(spec: &ProblemSpec, dim: usize, budget: &Budget) -> Result<Option<FMatrix>> {
    let n = spec.n();
    ensure_mask_width(n, "kernel search")?;
    power_within(2, n, budget.subset_bits, "support table")?;
    power_within(spec.q(), n, budget.enum_bits, "kernel search")?;
    let in_j = SupportRule::new(spec)?.table(n);
    let mut ks = KernelSearch {
        field: spec.field().clone(),
        n,
        in_j,
        span: vec![vec![FieldElement::ZERO; n]],
        rows: Vec::new(),
        nodes: 0,
        node_limit: budget.search_nodes,
        best: None,
    };
    ks.go(dim, n)?;
    Ok(ks.best)
}

struct KernelSearch {
    field: FieldSpec,
    n: usize,
    in_j: Vec<bool>,
    /// Every vector of the span of `rows`.
    span: Vec<Vec<FieldElement>>,
    /// Chosen rows with their pivots, last pivot first.
    rows: Vec<(usize, Vec<FieldElement>)>,
    nodes: u64,
    node_limit: u64,
    best: Option<FMatrix>,
}

impl KernelSearch {
    fn mask(v: &[FieldElement]) -> usize {
        v.iter()
            .enumerate()
            .fold(0, |m, (i, x)| if x.is_zero() { m } else { m | 1 << i })
    }

    /// Picks the remaining `left` rows with pivots below `below`.
    fn go(&mut self, left: usize, below: usize) -> Result<()> {
        if left == 0 {
            self.offer();
            return Ok(());
        }
        for pivot in (left - 1..below).rev() {
            let free: Vec<usize> = (pivot + 1..self.n)
                .filter(|c| !self.rows.iter().any(|(p, _)| p == c))
                .collect();
            let mut values = vec![FieldElement::ZERO; free.len()];
            loop {
                self.nodes += 1;
                if self.nodes > self.node_limit {
                    return Err(Error::budget(
                        "kernel search",
                        format!("> {} nodes", self.node_limit),
                        self.node_limit,
                    ));
                }
                let mut row = vec![FieldElement::ZERO; self.n];
                row[pivot] = FieldElement::ONE;
                for (&c, &x) in free.iter().zip(&values) {
                    row[c] = x;
                }
                if self.admissible(&row) {
                    let old = self.span.len();
                    self.extend_span(&row);
                    self.rows.push((pivot, row));
                    self.go(left - 1, pivot)?;
                    self.rows.pop();
                    self.span.truncate(old);
                }
                if !increment(&self.field, &mut values) {
                    break;
                }
            }
        }
        Ok(())
    }

    /// `row + v` avoids the interference set for every `v` in the span; the
    /// other new span vectors are scalar multiples of these.
    fn admissible(&self, row: &[FieldElement]) -> bool {
        let f = &self.field;
        self.span.iter().all(|v| {
            let s: Vec<FieldElement> = row.iter().zip(v).map(|(&a, &b)| f.add(a, b)).collect();
            !self.in_j[Self::mask(&s)]
        })
    }

    fn extend_span(&mut self, row: &[FieldElement]) {
        let f = self.field.clone();
        let old = self.span.len();
        for c in f.nonzero() {
            for k in 0..old {
                let v: Vec<FieldElement> = row
                    .iter()
                    .zip(&self.span[k])
                    .map(|(&a, &b)| f.add(f.mul(c, a), b))
                    .collect();
                self.span.push(v);
            }
        }
    }

    fn offer(&mut self) {
        let rows: Vec<Vec<FieldElement>> = self.rows.iter().rev().map(|(_, r)| r.clone()).collect();
        let kernel = FMatrix::from_row_slices(&self.field, &rows, self.n);
        let g = kernel.null_space_basis().rref().0.transpose();
        if self.best.as_ref().is_none_or(|b| g.serialized() < b.serialized()) {
            self.best = Some(g);
        }
    }
}

/// Nonzero vectors of `F_q^len` whose first nonzero entry is 1, in
/// lexicographic order.
pub(crate) fn normalized_vectors(field: &FieldSpec, len: usize) -> Vec<Vec<FieldElement>> {
    let mut out = Vec::new();
    let mut v = vec![FieldElement::ZERO; len];
    while increment(field, &mut v) {
        if v.iter().find(|x| !x.is_zero()) == Some(&FieldElement::ONE) {
            out.push(v.clone());
        }
    }
    out
}

fn column_search(spec: &ProblemSpec, len: usize, budget: &Budget) -> Result<Option<FMatrix>> {
    if len > budget.max_code_len {
        return Err(Error::budget("generator length", len, budget.max_code_len));
    }
    let field = spec.field();
    let n = spec.n();
    let targets: Vec<Vec<FieldElement>> = enum_interference(spec, budget)?
        .map(|iv| iv.z.entries().to_vec())
        .collect();
    let columns = normalized_vectors(field, n);
    let hits = columns
        .iter()
        .map(|c| {
            (0..targets.len() as u32)
                .filter(|&t| !dot(field, &targets[t as usize], c).is_zero())
                .collect()
        })
        .collect();
    let cover = Cover {
        hits,
        base: vec![0; targets.len()],
        need: 2 * spec.delta_c + 1,
    };
    let mut best: Option<FMatrix> = None;
    cover.search(len, budget.search_nodes, &mut |chosen| {
        let cols: Vec<Vec<FieldElement>> = chosen.iter().map(|&c| columns[c].clone()).collect();
        let g = FMatrix::from_row_slices(field, &cols, n).transpose();
        if best.as_ref().is_none_or(|b| g.serialized() < b.serialized()) {
            best = Some(g);
        }
        true
    })?;
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{clique4_generator, clique_spec, directed_cycle};
    use crate::codeset::is_valid_generator;
    use crate::gfield::field_make;
    use crate::sigraph::SideInfoGraph;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn clique4_needs_three() {
        let spec = clique_spec(4, 2, 1, 0);
        let g = optimal_length(&spec, &b()).unwrap();
        assert_eq!(g.length(), 3);
        assert_eq!(g.matrix().rank(), 3);
        assert!(find_generator_of_length(&spec, 2, &b()).unwrap().is_none());
        // the only candidate at length 3 is the single-parity code
        assert_eq!(g.matrix(), &clique4_generator());
    }

    #[test]
    fn small_cliques_are_uncoded() {
        for n in 1..=3 {
            let g = optimal_length(&clique_spec(n, 2, 1, 0), &b()).unwrap();
            assert_eq!(g.length(), n);
        }
    }

    #[test]
    fn conventional_cases() {
        assert_eq!(optimal_length(&clique_spec(5, 2, 0, 0), &b()).unwrap().length(), 1);
        let spec = ProblemSpec::new(directed_cycle(5), field_make(2).unwrap(), 0, 0).unwrap();
        assert_eq!(optimal_length(&spec, &b()).unwrap().length(), 4);
        let spec = ProblemSpec::new(directed_cycle(4), field_make(3).unwrap(), 0, 0).unwrap();
        assert_eq!(optimal_length(&spec, &b()).unwrap().length(), 3);
    }

    #[test]
    fn clique4_with_channel_errors() {
        let spec = clique_spec(4, 2, 1, 1);
        let g = optimal_length(&spec, &b()).unwrap();
        assert!(g.length() >= 5);
        assert!(is_valid_generator(&spec, g.matrix(), &b()).unwrap().is_valid());
        assert!(find_generator_of_length(&spec, g.length() - 1, &b()).unwrap().is_none());
    }

    #[test]
    fn no_side_info_means_uncoded() {
        let g = SideInfoGraph::unipartite(vec![Default::default(); 3]).unwrap();
        let spec = ProblemSpec::new(g, field_make(2).unwrap(), 0, 0).unwrap();
        let found = optimal_length(&spec, &b()).unwrap();
        assert_eq!(found.matrix(), &FMatrix::identity(spec.field(), 3));
    }

    #[test]
    fn longer_than_n_pads() {
        let spec = clique_spec(3, 2, 1, 0);
        let g = find_generator_of_length(&spec, 5, &b()).unwrap().unwrap();
        assert_eq!(g.length(), 5);
    }

    #[test]
    fn normalized_vector_count() {
        assert_eq!(normalized_vectors(&field_make(3).unwrap(), 3).len(), 13);
        assert_eq!(normalized_vectors(&field_make(2).unwrap(), 4).len(), 15);
    }
}
