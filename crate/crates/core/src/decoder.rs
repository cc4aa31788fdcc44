//! Syndrome decoding at a receiver whose cached symbols may contain up to
//! `δs` errors, over an error-free broadcast channel.
//!
//! Receiver `i` strips its (possibly wrong) side information from `y`, finds a
//! low-support correction from its cache rows that explains the remaining
//! syndrome, and reads `x_f(i)` through a matrix that annihilates the
//! interference rows.

use crate::codeset::next_nonzero;
use crate::encoder::combinations;
use crate::error::{Error, Result};
use crate::gfield::FieldElement;
use crate::linalg::{FMatrix, FVector, IndexSet};
use crate::sigraph::{ProblemSpec, SideErrorModel, SideInfoGraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReceiverContext {
    pub receiver: usize,
    /// Packet indices of the cache, matching the rows of `g_x`.
    pub side: IndexSet,
    pub g_f: FVector,
    pub g_x: FMatrix,
    pub g_y: FMatrix,
    /// Rows orthogonal to `G_f(i)` and to every interference row.
    pub h: FMatrix,
    /// Rows orthogonal to every interference row; at least one is not
    /// orthogonal to `G_f(i)`.
    pub h_e: FMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeTrace {
    pub receiver: usize,
    pub syndrome: FVector,
    pub correction: FVector,
    /// Cached packets whose rows make up the correction.
    pub suspected: IndexSet,
    pub value: FieldElement,
}

/// Matrices receiver `i` needs to decode with generator `g`.
pub fn build_context(g: &FMatrix, graph: &SideInfoGraph, i: usize) -> Result<ReceiverContext> {
    if i >= graph.m() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: graph.m(),
        });
    }
    if g.rows() != graph.n() {
        return Err(Error::DimensionMismatch(format!(
            "generator has {} rows for {} packets",
            g.rows(),
            graph.n()
        )));
    }
    let f = graph.demand(i);
    let y = graph.y_set(i)?;
    let side = graph.side(i).clone();
    let g_y = g.submatrix_rows(&y)?;
    let g_f = g.row(f);
    if g_y.in_row_span(&g_f)? {
        return Err(Error::Degenerate { receiver: i });
    }
    let h = g.submatrix_rows(&y.union(&[f].into()))?.null_space_basis();
    let h_e = g_y.null_space_basis();
    Ok(ReceiverContext {
        receiver: i,
        g_x: g.submatrix_rows(&side)?,
        side,
        g_f,
        g_y,
        h,
        h_e,
    })
}

/// `H · (y − x̂ G_X)ᵀ`.
pub fn syndrome(ctx: &ReceiverContext, y: &FVector, x_hat: &FVector) -> Result<FVector> {
    ctx.h.apply(&strip_side(ctx, y, x_hat)?)
}

fn strip_side(ctx: &ReceiverContext, y: &FVector, x_hat: &FVector) -> Result<FVector> {
    if x_hat.len() != ctx.side.len() {
        return Err(Error::DimensionMismatch(format!(
            "side information has {} symbols, receiver {} caches {}",
            x_hat.len(),
            ctx.receiver + 1,
            ctx.side.len()
        )));
    }
    y.sub(&ctx.g_x.left_mul(x_hat)?)
}

/// A combination of at most `max_support` cache rows whose syndrome is `s`.
/// Supports are tried by size, then lexicographically, and coefficients in
/// lexicographic order. Returns the correction and its support (as packets).
pub fn find_correction(ctx: &ReceiverContext, s: &FVector, max_support: usize) -> Result<(FVector, IndexSet)> {
    let field = ctx.g_x.field().clone();
    let k = ctx.side.len();
    // syndromes of the individual cache rows
    let row_syndromes: Vec<Vec<FieldElement>> = (0..k)
        .map(|r| ctx.h.apply(&ctx.g_x.row(r)).map(|v| v.entries().to_vec()))
        .collect::<Result<_>>()?;
    for size in 0..=max_support.min(k) {
        for support in combinations(&(0..k).collect::<Vec<_>>(), size) {
            let mut coeffs = vec![field.one(); size];
            loop {
                let mut acc = vec![FieldElement::ZERO; s.len()];
                for (&c, r) in coeffs.iter().zip(support.iter()) {
                    crate::linalg::axpy(&field, &mut acc, c, &row_syndromes[r]);
                }
                if acc == s.entries() {
                    let mut p = FVector::zeros(&field, ctx.g_x.cols());
                    for (&c, r) in coeffs.iter().zip(support.iter()) {
                        p = p.add(&ctx.g_x.row(r).scale(c))?;
                    }
                    let packets = support.iter().map(|r| ctx.side.as_slice()[r]).collect();
                    return Ok((p, packets));
                }
                if !next_nonzero(&field, &mut coeffs) {
                    break;
                }
            }
        }
    }
    Err(Error::NoSolution { max_support })
}

/// Decodes `x_f(i)` from `y = xG` and side information `x_hat` (ordered like
/// the cache), allowing up to `delta_s` wrong cached symbols.
pub fn decode_receiver(ctx: &ReceiverContext, delta_s: usize, y: &FVector, x_hat: &FVector) -> Result<DecodeTrace> {
    let s = syndrome(ctx, y, x_hat)?;
    let (p, suspected) = find_correction(ctx, &s, delta_s)?;
    finish(ctx, y, x_hat, s, p, suspected)
}

/// Like [`decode_receiver`] with the correction `p` supplied by the caller.
pub fn decode_with_correction(ctx: &ReceiverContext, y: &FVector, x_hat: &FVector, p: &FVector) -> Result<DecodeTrace> {
    let s = syndrome(ctx, y, x_hat)?;
    if ctx.h.apply(p)? != s {
        return Err(Error::Inconsistent);
    }
    let suspected = IndexSet::new();
    finish(ctx, y, x_hat, s, p.clone(), suspected)
}

fn finish(
    ctx: &ReceiverContext,
    y: &FVector,
    x_hat: &FVector,
    s: FVector,
    p: FVector,
    suspected: IndexSet,
) -> Result<DecodeTrace> {
    let field = ctx.g_f.field().clone();
    let y_tilde = strip_side(ctx, y, x_hat)?.sub(&p)?;
    let a = ctx.h_e.apply(&y_tilde)?;
    let b = ctx.h_e.apply(&ctx.g_f)?;
    let j = b
        .entries()
        .iter()
        .position(|x| !x.is_zero())
        .ok_or(Error::Degenerate { receiver: ctx.receiver })?;
    let value = field.div(a.get(j), b.get(j))?;
    if b.scale(value) != a {
        return Err(Error::Inconsistent);
    }
    Ok(DecodeTrace {
        receiver: ctx.receiver,
        syndrome: s,
        correction: p,
        suspected,
        value,
    })
}

/// Runs every receiver on the same broadcast. `x_hats[i]` is receiver `i`'s
/// side information, ordered like its cache.
pub fn decode_all(
    spec: &ProblemSpec,
    g: &FMatrix,
    y: &FVector,
    x_hats: &[FVector],
) -> Result<Vec<Result<DecodeTrace>>> {
    if spec.side_error_model == SideErrorModel::Erasure {
        return Err(Error::Unsupported("syndrome decoding under the erasure model"));
    }
    let graph = spec.graph();
    if x_hats.len() != graph.m() {
        return Err(Error::DimensionMismatch(format!(
            "{} side-information vectors for {} receivers",
            x_hats.len(),
            graph.m()
        )));
    }
    Ok((0..graph.m())
        .map(|i| build_context(g, graph, i).and_then(|ctx| decode_receiver(&ctx, spec.delta_s, y, &x_hats[i])))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{clique4_generator, clique_spec, nine_packet_generator, nine_packet_graph, nine_packet_spec};
    use crate::gfield::{field_make, FieldSpec};

    fn gf2() -> FieldSpec {
        field_make(2).unwrap()
    }

    fn v(reps: &[u32]) -> FVector {
        FVector::from_reps(&gf2(), reps).unwrap()
    }

    fn nine_packet_receiver9() -> ReceiverContext {
        build_context(&nine_packet_generator(), &nine_packet_graph(), 8).unwrap()
    }

    #[test]
    fn nine_packet_context() {
        let ctx = nine_packet_receiver9();
        let reference_h = FMatrix::from_rows(
            &gf2(),
            &[vec![1, 1, 0, 0, 0, 0], vec![0, 1, 0, 1, 0, 0], vec![0, 0, 0, 0, 1, 0]],
            6,
        )
        .unwrap();
        assert!(ctx.h.row_space_contains(&reference_h).unwrap());
        assert!(!ctx.h_e.apply(&ctx.g_f).unwrap().is_zero());
        assert!(ctx
            .h_e
            .row_space_contains(&FMatrix::from_rows(&gf2(), &[vec![1, 0, 0, 0, 0, 0]], 6).unwrap())
            .unwrap());
        for r in 0..ctx.g_y.rows() {
            assert!(ctx.h.apply(&ctx.g_y.row(r)).unwrap().is_zero());
            assert!(ctx.h_e.apply(&ctx.g_y.row(r)).unwrap().is_zero());
        }
        assert!(ctx.h.apply(&ctx.g_f).unwrap().is_zero());
    }

    #[test]
    fn nine_packet_decodes_packet_nine() {
        let ctx = nine_packet_receiver9();
        let y = v(&[0, 1, 1, 0, 1, 0]);
        let x_hat = v(&[1, 1, 0, 0, 0, 1]);
        let trace = decode_receiver(&ctx, 1, &y, &x_hat).unwrap();
        assert_eq!(trace.value, FieldElement::ONE);
        let reference_h = FMatrix::from_rows(
            &gf2(),
            &[vec![1, 1, 0, 0, 0, 0], vec![0, 1, 0, 1, 0, 0], vec![0, 0, 0, 0, 1, 0]],
            6,
        )
        .unwrap();
        let stripped = strip_side(&ctx, &y, &x_hat).unwrap();
        assert_eq!(reference_h.apply(&stripped).unwrap(), v(&[0, 1, 1]));
        assert_eq!(reference_h.apply(&trace.correction).unwrap(), v(&[0, 1, 1]));
        let p = trace.correction.reps();
        assert!(p == vec![0, 0, 0, 1, 1, 1] || p == vec![0, 0, 1, 1, 1, 0], "{p:?}");
        assert_eq!(trace.suspected.len(), 1);
    }

    #[test]
    fn nine_packet_alternative_correction() {
        let ctx = nine_packet_receiver9();
        let y = v(&[0, 1, 1, 0, 1, 0]);
        let x_hat = v(&[1, 1, 0, 0, 0, 1]);
        for p in [[0, 0, 1, 1, 1, 0], [0, 0, 0, 1, 1, 1]] {
            let trace = decode_with_correction(&ctx, &y, &x_hat, &v(&p)).unwrap();
            assert_eq!(trace.value, FieldElement::ONE);
        }
    }

    #[test]
    fn correct_side_info_gives_zero_syndrome() {
        let ctx = nine_packet_receiver9();
        let trace = decode_receiver(&ctx, 1, &v(&[0, 1, 1, 0, 1, 0]), &v(&[1, 1, 0, 0, 0, 0])).unwrap();
        assert!(trace.syndrome.is_zero());
        assert!(trace.correction.is_zero());
        assert!(trace.suspected.is_empty());
        assert_eq!(trace.value, FieldElement::ONE);
    }

    #[test]
    fn the_example_broadcast_is_the_encoding() {
        let x = v(&[1, 1, 1, 1, 0, 0, 0, 0, 1]);
        assert_eq!(nine_packet_generator().left_mul(&x).unwrap(), v(&[0, 1, 1, 0, 1, 0]));
    }

    #[test]
    fn zero_budget_rejects_nonzero_syndrome() {
        let ctx = nine_packet_receiver9();
        let s = FVector::from_reps(&gf2(), &vec![1; ctx.h.rows()]).unwrap();
        assert!(matches!(
            find_correction(&ctx, &s, 0),
            Err(Error::NoSolution { max_support: 0 })
        ));
        let zero = FVector::zeros(&gf2(), ctx.h.rows());
        assert!(find_correction(&ctx, &zero, 0).unwrap().0.is_zero());
    }

    #[test]
    fn single_errors_on_nine_packet() {
        let spec = nine_packet_spec();
        let g = nine_packet_generator();
        let graph = spec.graph();
        let x = v(&[1, 0, 1, 1, 0, 1, 0, 0, 1]);
        let y = g.left_mul(&x).unwrap();
        for i in 0..graph.m() {
            let ctx = build_context(&g, graph, i).unwrap();
            let truth = x.subvector(graph.side(i)).unwrap();
            for pos in 0..=truth.len() {
                let mut hat = truth.clone();
                if pos < truth.len() {
                    hat = hat
                        .add(&FVector::from_entries_unchecked(
                            &gf2(),
                            (0..truth.len())
                                .map(|t| {
                                    if t == pos {
                                        FieldElement::ONE
                                    } else {
                                        FieldElement::ZERO
                                    }
                                })
                                .collect(),
                        ))
                        .unwrap();
                }
                let trace = decode_receiver(&ctx, 1, &y, &hat).unwrap();
                assert_eq!(trace.value, x.get(graph.demand(i)), "receiver {i} error at {pos}");
            }
        }
    }

    #[test]
    fn clique4_everything() {
        let spec = clique_spec(4, 2, 1, 0);
        let g = clique4_generator();
        for code in 0u32..16 {
            let x = v(&(0..4).map(|j| code >> j & 1).collect::<Vec<_>>());
            let y = g.left_mul(&x).unwrap();
            let x_hats: Vec<FVector> = (0..4).map(|i| x.subvector(spec.graph().side(i)).unwrap()).collect();
            for (i, r) in decode_all(&spec, &g, &y, &x_hats).unwrap().into_iter().enumerate() {
                assert_eq!(r.unwrap().value, x.get(i));
            }
        }
    }

    #[test]
    fn degenerate_and_erasure() {
        let spec = clique_spec(4, 2, 1, 0);
        let g = FMatrix::zeros(spec.field(), 4, 3);
        assert!(matches!(
            build_context(&g, spec.graph(), 0),
            Err(Error::Degenerate { receiver: 0 })
        ));
        let erasure = spec.with_model(SideErrorModel::Erasure);
        assert!(matches!(
            decode_all(&erasure, &clique4_generator(), &v(&[0, 0, 0]), &[]),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn no_interference_rows_gives_full_h_e() {
        let spec = clique_spec(3, 2, 0, 0);
        let ctx = build_context(&FMatrix::identity(spec.field(), 3), spec.graph(), 0).unwrap();
        assert_eq!(ctx.h_e, FMatrix::identity(spec.field(), 3));
    }
}
