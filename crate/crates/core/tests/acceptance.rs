//! Acceptance suite: one PASS/FAIL line per criterion, exact tolerances.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{all_binary_matrices, binary, family, flip, random_binary_matrix, rng};
use icsie::catalog::{clique4_generator, clique_spec, nine_packet_generator, nine_packet_spec};
use icsie::decoder::{build_context, decode_receiver, decode_with_correction, syndrome};
use icsie::encoder::{clique_from_parity, find_generator_of_length, ind_q, l_q, minrank, optimal_length};
use icsie::structure::{bounds_report, is_acyclic};
use icsie::{field_make, is_valid_generator, oracle_decodable, Budget, FMatrix, FVector, FieldElement, ProblemSpec};
use rand::Rng;

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run(number: u32, title: &str, limit: Duration, check: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(format!("panicked: {msg}"))
    });
    let elapsed = start.elapsed();
    let outcome = match outcome {
        Ok(detail) if elapsed > limit => Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}")),
        other => other,
    };
    let (tag, detail) = match &outcome {
        Ok(d) => ("PASS", d),
        Err(d) => ("FAIL", d),
    };
    println!("criterion {number}: {tag} - {title} ({detail}) [{elapsed:.2?}]");
    outcome.is_ok()
}

fn b() -> Budget {
    Budget::default()
}

fn clique4() -> Check {
    let spec = clique_spec(4, 2, 1, 0);
    let g = optimal_length(&spec, &b()).map_err(|e| e.to_string())?;
    ensure(g.length() == 3, || format!("optimal length {} != 3", g.length()))?;
    let valid = is_valid_generator(&spec, &clique4_generator(), &b()).map_err(|e| e.to_string())?;
    ensure(valid.is_valid(), || "rows e1,e2,e3,(1,1,1) rejected".into())?;
    let two = find_generator_of_length(&spec, 2, &b()).map_err(|e| e.to_string())?;
    ensure(two.is_none(), || "a length-2 generator was found".into())?;
    Ok("N_opt = 3, parity generator valid, no length-2 generator".into())
}

fn nine_packet_decode() -> Check {
    let spec = nine_packet_spec();
    let f = spec.field().clone();
    let v = |r: &[u32]| FVector::from_reps(&f, r).unwrap();
    let g = nine_packet_generator();
    let x = v(&[1, 1, 1, 1, 0, 0, 0, 0, 1]);
    let y = v(&[0, 1, 1, 0, 1, 0]);
    ensure(g.left_mul(&x).unwrap() == y, || "y != xG".into())?;
    let ctx = build_context(&g, spec.graph(), 8).map_err(|e| e.to_string())?;
    // cache of receiver 9 is packets 2,3,5,6,7,8; packet 8 is wrong
    let x_hat = v(&[1, 1, 0, 0, 0, 1]);
    let reference_h = FMatrix::from_rows(
        &f,
        &[vec![1, 1, 0, 0, 0, 0], vec![0, 1, 0, 1, 0, 0], vec![0, 0, 0, 0, 1, 0]],
        6,
    )
    .unwrap();
    ensure(ctx.h.row_space_contains(&reference_h).unwrap(), || {
        "H does not contain the reference rows".into()
    })?;
    let s = syndrome(&ctx, &y, &x_hat).map_err(|e| e.to_string())?;
    let stripped = y.sub(&ctx.g_x.left_mul(&x_hat).unwrap()).unwrap();
    let reference_s = reference_h.apply(&stripped).unwrap();
    ensure(reference_s == v(&[0, 1, 1]), || {
        format!("reference syndrome {reference_s}")
    })?;
    let trace = decode_receiver(&ctx, 1, &y, &x_hat).map_err(|e| e.to_string())?;
    ensure(trace.syndrome == s, || "trace syndrome differs".into())?;
    ensure(reference_h.apply(&trace.correction).unwrap() == reference_s, || {
        "correction inconsistent with the reference syndrome".into()
    })?;
    ensure(trace.value == FieldElement::ONE, || format!("x_9 = {}", trace.value))?;
    let alt = decode_with_correction(&ctx, &y, &x_hat, &v(&[0, 0, 1, 1, 1, 0])).map_err(|e| e.to_string())?;
    ensure(alt.value == FieldElement::ONE, || {
        format!("alternative correction gives {}", alt.value)
    })?;
    Ok(format!(
        "s_9 = {reference_s} in the reference basis, p = {}, x_9 = 1 both ways",
        trace.correction
    ))
}

/// Generators to test against the oracle for one instance.
fn candidate_generators(spec: &ProblemSpec, seed: u64) -> Vec<FMatrix> {
    let n = spec.n();
    let mut out = Vec::new();
    if n == 3 {
        for len in 1..=3 {
            out.extend(all_binary_matrices(3, len));
        }
    }
    let mut r = rng(seed);
    for _ in 0..40 {
        let len = r.random_range(1..=6);
        out.push(random_binary_matrix(&mut r, n, len));
    }
    out.push(FMatrix::identity(spec.field(), n));
    if let Ok(g) = optimal_length(spec, &b()) {
        let g = g.into_matrix();
        for row in 0..g.rows() {
            for col in 0..g.cols() {
                out.push(flip(&g, row, col));
            }
        }
        out.push(g);
    }
    out
}

fn oracle_equivalence() -> Check {
    let (mut checked, mut valid) = (0usize, 0usize);
    for (k, graph) in family().iter().enumerate() {
        for ds in 0..=1 {
            for dc in 0..=1 {
                let spec = binary(graph, ds, dc);
                for g in candidate_generators(&spec, k as u64 * 4 + ds as u64 * 2 + dc as u64) {
                    let fast = is_valid_generator(&spec, &g, &b())
                        .map_err(|e| e.to_string())?
                        .is_valid();
                    let slow = oracle_decodable(&spec, &g, &b()).map_err(|e| e.to_string())?.is_none();
                    ensure(fast == slow, || {
                        format!("disagreement on {graph:?} δs={ds} δc={dc} G={:?}", g.row_reps())
                    })?;
                    checked += 1;
                    valid += fast as usize;
                }
            }
        }
    }
    Ok(format!("{checked} (instance, G) pairs, {valid} valid, 0 disagreements"))
}

fn acyclic_gate() -> Check {
    let mut checked = 0;
    for graph in family() {
        for ds in 0..=1 {
            let spec = binary(&graph, ds, 0);
            let acyclic = is_acyclic(&spec, &b()).map_err(|e| e.to_string())?;
            let n_opt = optimal_length(&spec, &b()).map_err(|e| e.to_string())?.length();
            ensure(acyclic == (n_opt == spec.n()), || {
                format!("{graph:?} δs={ds}: acyclic={acyclic}, N_opt={n_opt}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} instances, 0 disagreements"))
}

fn minrank_gate() -> Check {
    let (mut checked, mut skipped) = (0, 0);
    for graph in family() {
        for ds in 0..=1 {
            let spec = binary(&graph, ds, 0);
            let mr = match minrank(&spec, &b()) {
                Ok(r) => r.rank,
                Err(icsie::Error::BudgetExceeded { .. }) => {
                    skipped += 1;
                    continue;
                }
                Err(e) => return Err(e.to_string()),
            };
            let n_opt = optimal_length(&spec, &b()).map_err(|e| e.to_string())?.length();
            ensure(mr == n_opt, || {
                format!("{graph:?} δs={ds}: minrank {mr} != N_opt {n_opt}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} instances agree, {skipped} over budget"))
}

fn clique_formula() -> Check {
    let mut values = Vec::new();
    let f2 = field_make(2).unwrap();
    for n in 3..=8usize {
        let got = optimal_length(&clique_spec(n, 2, 1, 0), &b())
            .map_err(|e| e.to_string())?
            .length();
        let formula = (1..).find(|&len: &usize| 1usize << (len - 1) >= n).unwrap();
        ensure(got == formula, || format!("clique-{n}: {got} != {formula}"))?;
        let via_ind = (1..).find(|&len| ind_q(&f2, len, 3, &b()).unwrap() >= n).unwrap();
        ensure(got == via_ind, || {
            format!("clique-{n}: {got} != min N with Ind_2(N,3) >= n ({via_ind})")
        })?;
        values.push(got);
    }
    ensure(values == [3, 3, 4, 4, 4, 4], || format!("{values:?}"))?;
    for ds in 1..=2 {
        let size = 2 * ds + 2;
        let got = optimal_length(&clique_spec(size, 2, ds, 0), &b())
            .map_err(|e| e.to_string())?
            .length();
        ensure(got == 2 * ds + 1, || format!("clique-{size} δs={ds}: {got}"))?;
    }
    let ind = ind_q(&f2, 7, 5, &b()).map_err(|e| e.to_string())?;
    ensure(ind == 9, || format!("Ind_2(7,5) = {ind}"))?;
    Ok(format!("n=3..8 -> {values:?}; sizes 4,6 -> 3,5; Ind_2(7,5) = 9"))
}

fn completeness() -> Check {
    let (mut decodes, mut generators) = (0usize, 0usize);
    for graph in family() {
        for ds in 0..=1 {
            let spec = binary(&graph, ds, 0);
            let mut gens = vec![optimal_length(&spec, &b()).map_err(|e| e.to_string())?.into_matrix()];
            if let Ok(r) = minrank(&spec, &b()) {
                gens.push(r.generator());
            }
            for g in gens {
                ensure(is_valid_generator(&spec, &g, &b()).unwrap().is_valid(), || {
                    "search returned an invalid generator".into()
                })?;
                generators += 1;
                decodes += sweep(&spec, &g)?;
            }
        }
    }
    Ok(format!("{generators} generators, {decodes} decodes, 100% recovery"))
}

/// Every message and every side-error pattern of weight at most δs at every receiver.
fn sweep(spec: &ProblemSpec, g: &FMatrix) -> std::result::Result<usize, String> {
    let f = spec.field().clone();
    let n = spec.n();
    let graph = spec.graph();
    let mut count = 0;
    for i in 0..graph.m() {
        let ctx = build_context(g, graph, i).map_err(|e| e.to_string())?;
        let side = graph.side(i);
        for code in 0u32..1 << n {
            let x = FVector::from_reps(&f, &(0..n).map(|j| code >> j & 1).collect::<Vec<_>>()).unwrap();
            let y = g.left_mul(&x).unwrap();
            let truth = x.subvector(side).unwrap();
            for err in 0u32..1 << side.len() {
                if err.count_ones() as usize > spec.delta_s {
                    continue;
                }
                let e = FVector::from_reps(&f, &(0..side.len()).map(|t| err >> t & 1).collect::<Vec<_>>()).unwrap();
                let x_hat = truth.add(&e).unwrap();
                let trace = decode_receiver(&ctx, spec.delta_s, &y, &x_hat)
                    .map_err(|er| format!("receiver {} x={x} x̂={x_hat}: {er}", i + 1))?;
                ensure(trace.value == x.get(graph.demand(i)), || {
                    format!("receiver {} x={x} x̂={x_hat}: wrong value", i + 1)
                })?;
                // the correction differs from the true error image by interference rows only
                let law = trace
                    .correction
                    .sub(&ctx.g_x.left_mul(&truth.sub(&x_hat).unwrap()).unwrap())
                    .unwrap();
                let in_span = law.is_zero() || ctx.g_y.in_row_span(&law).unwrap();
                ensure(in_span, || {
                    format!(
                        "receiver {} x={x} x̂={x_hat}: correction outside the solution set",
                        i + 1
                    )
                })?;
                count += 1;
            }
        }
    }
    Ok(count)
}

fn bounds_sanity() -> Check {
    let f2 = field_make(2).unwrap();
    let (mut checked, mut gecic) = (0, 0);
    for graph in family() {
        for ds in 0..=1 {
            let spec = binary(&graph, ds, 1);
            let r = bounds_report(&spec, &b());
            let get = |name: &str| {
                r.value(name)
                    .ok_or_else(|| format!("{graph:?} δs={ds}: {name} missing: {:?}", r.get(name)))
            };
            let n_opt = get("n_opt")?;
            let gamma = get("gamma")?;
            let upper = get("n_minus_beta")?;
            let ed = get("edge_deletion_lower")?;
            ensure(gamma <= n_opt && n_opt <= upper && upper <= spec.n(), || {
                format!("{graph:?} δs={ds}: γ={gamma} N={n_opt} n−β={upper}")
            })?;
            ensure(ed <= n_opt, || {
                format!("{graph:?} δs={ds}: edge deletion {ed} > {n_opt}")
            })?;
            ensure(r.is_consistent(), || {
                format!("{graph:?} δs={ds}: {:?}", r.inconsistencies())
            })?;
            if let Some(exact) = r.value("gecic_n_opt") {
                let lq = l_q(&f2, n_opt, 3, &b()).map_err(|e| e.to_string())?.length;
                ensure(n_opt + 2 <= exact && exact <= lq, || {
                    format!("{graph:?} δs={ds}: {n_opt}+2 <= {exact} <= {lq} fails")
                })?;
                gecic += 1;
            }
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} instances, {gecic} with channel-error optimum, 0 violations"
    ))
}

fn parity_bridge() -> Check {
    let f2 = field_make(2).unwrap();
    let repetition = FMatrix::from_rows(&f2, &[vec![1, 1, 0, 0], vec![1, 0, 1, 0], vec![1, 0, 0, 1]], 4).unwrap();
    let g = clique_from_parity(&repetition, 1, &b()).map_err(|e| e.to_string())?;
    let optimum = optimal_length(&clique_spec(4, 2, 1, 0), &b())
        .map_err(|e| e.to_string())?
        .length();
    ensure(g.length() == 3 && optimum == 3, || {
        format!("length {} vs optimum {optimum}", g.length())
    })?;
    // (4,1,3): codewords 0000 and 1110
    let distance3 = FMatrix::from_rows(&f2, &[vec![1, 1, 0, 0], vec![0, 1, 1, 0], vec![0, 0, 0, 1]], 4).unwrap();
    match clique_from_parity(&distance3, 1, &b()) {
        Err(icsie::Error::DistanceTooSmall { found: 3, required: 4 }) => {}
        other => return Err(format!("d_min = 3 input not rejected: {other:?}")),
    }
    Ok("repetition code gives a valid length-3 generator; d_min = 3 rejected".into())
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let results = [
        run(1, "clique-4 optimum and certificate", secs(1), clique4),
        run(2, "nine-packet decode at receiver 9", secs(1), nine_packet_decode),
        run(
            3,
            "validity test matches the sphere oracle",
            secs(300),
            oracle_equivalence,
        ),
        run(4, "acyclic iff optimum is n", secs(300), acyclic_gate),
        run(5, "minrank equals optimal length", secs(300), minrank_gate),
        run(6, "clique lengths and independent sets", secs(120), clique_formula),
        run(7, "syndrome decoding completeness", secs(600), completeness),
        run(8, "bounds sandwich the optimum", secs(600), bounds_sanity),
        run(9, "parity-check construction", secs(60), parity_bridge),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
