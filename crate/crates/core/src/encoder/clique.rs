//! Constructions for cliques and cycles.

use super::classical::min_distance_of_parity;
use super::generator::GeneratorMatrix;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::gfield::FieldSpec;
use crate::linalg::{EchelonBasis, FMatrix};
use crate::sigraph::{ProblemSpec, SideInfoGraph};

/// The `size × (size−1)` bidiagonal code sending `x_j + x_{j+1}` for each
/// consecutive pair. Requires `size ≥ side_budget + 2`.
pub fn cycle_code(field: &FieldSpec, size: usize, side_budget: usize) -> Result<FMatrix> {
    let min = side_budget + 2;
    if size < min {
        return Err(Error::TooSmall { size, min });
    }
    let mut g = FMatrix::zeros(field, size, size - 1);
    for j in 0..size - 1 {
        g.set(j, j, field.one());
        g.set(j + 1, j, field.one());
    }
    Ok(g)
}

/// Generator for the clique on `H.cols()` packets built from the parity-check
/// matrix `H`: the transpose of `H` with dependent rows dropped. The code of
/// `H` must have minimum distance at least `2δs + 2`.
pub fn clique_from_parity(h: &FMatrix, delta_s: usize, budget: &Budget) -> Result<GeneratorMatrix> {
    let required = 2 * delta_s + 2;
    if let Some(found) = min_distance_of_parity(h, budget)? {
        if found < required {
            return Err(Error::DistanceTooSmall { found, required });
        }
    }
    let mut basis = EchelonBasis::new(h.field(), h.cols());
    let rows: Vec<_> = (0..h.rows())
        .filter(|&r| basis.insert(h.row_slice(r)))
        .map(|r| h.row_slice(r).to_vec())
        .collect();
    let g = FMatrix::from_row_slices(h.field(), &rows, h.cols()).transpose();
    let spec = ProblemSpec::new(SideInfoGraph::clique(h.cols()), h.field().clone(), delta_s, 0)?;
    GeneratorMatrix::certify(&spec, g, budget)
}

/// Parity-check matrix of the Reed–Solomon code of length `n` and redundancy
/// `2δs + 1` over `F_q`: row `j` is `(α^{j·l})_l` for `j = 1..=2δs+1`, with
/// `α` of order `n`. Requires `n | q − 1`.
pub fn reed_solomon_parity(field: &FieldSpec, n: usize, delta_s: usize) -> Result<FMatrix> {
    let order = field.q() as usize - 1;
    if n == 0 || !order.is_multiple_of(n) {
        return Err(Error::DimensionMismatch(format!(
            "length {n} does not divide q - 1 = {order}"
        )));
    }
    let r = 2 * delta_s + 1;
    if r > n {
        return Err(Error::DimensionMismatch(format!("redundancy {r} exceeds length {n}")));
    }
    let alpha = field.pow(field.primitive_element(), (order / n) as u64);
    let mut h = FMatrix::zeros(field, r, n);
    for j in 0..r {
        for l in 0..n {
            h.set(j, l, field.pow(alpha, ((j + 1) * l) as u64));
        }
    }
    Ok(h)
}
