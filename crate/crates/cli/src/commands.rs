use std::fmt::Write as _;
use std::path::Path;

use icsie::encoder::GeneratorDoc;
use icsie::structure::BoundsReport;
use icsie::{
    bounds_report, delta_s_mais, find_cycles, gamma, max_disjoint_cycles, minrank, optimal_length, parse_instance,
    parse_vector, serialize_generator, Budget, FMatrix, FVector, GeneratorMatrix, IndexSet, ProblemSpec,
};
use serde_json::{json, Value};

use crate::error::{CliError, Result};
use crate::{Method, Outcome};

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_owned(),
        source,
    })
}

pub fn load_spec(path: &Path) -> Result<ProblemSpec> {
    Ok(parse_instance(&read(path)?)?)
}

/// Reads a generator document and checks it fits the instance.
pub fn load_generator(spec: &ProblemSpec, path: &Path) -> Result<FMatrix> {
    let g = icsie::parse_generator(&read(path)?)?;
    if g.field().q() != spec.q() {
        return Err(icsie::Error::FieldMismatch {
            left: spec.q(),
            right: g.field().q(),
        }
        .into());
    }
    if g.rows() != spec.n() {
        return Err(icsie::Error::DimensionMismatch(format!(
            "generator has {} rows, instance has n = {}",
            g.rows(),
            spec.n()
        ))
        .into());
    }
    Ok(g)
}

pub fn vector(spec: &ProblemSpec, what: &str, text: &str, len: usize) -> Result<FVector> {
    let v = parse_vector(spec.field(), text).map_err(|e| CliError::Input(format!("{what}: {e}")))?;
    if v.len() != len {
        return Err(CliError::Input(format!(
            "{what}: has {} entries, expected {len}",
            v.len()
        )));
    }
    Ok(v)
}

/// Comma-separated form accepted back on the command line.
pub fn csv(v: &FVector) -> String {
    v.reps().iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

/// 1-based set notation.
pub fn set(s: &IndexSet) -> String {
    format!(
        "{{{}}}",
        s.iter().map(|j| (j + 1).to_string()).collect::<Vec<_>>().join(",")
    )
}

pub fn one_based(s: impl IntoIterator<Item = usize>) -> Vec<usize> {
    s.into_iter().map(|j| j + 1).collect()
}

fn describe(spec: &ProblemSpec) -> String {
    format!(
        "n={} m={} q={} delta_s={} delta_c={} model={}",
        spec.n(),
        spec.m(),
        spec.q(),
        spec.delta_s,
        spec.delta_c,
        model_name(spec)
    )
}

fn model_name(spec: &ProblemSpec) -> &'static str {
    match spec.side_error_model {
        icsie::SideErrorModel::Error => "error",
        icsie::SideErrorModel::Erasure => "erasure",
    }
}

pub fn validate(path: &Path) -> Result<Outcome> {
    match parse_instance(&read(path)?) {
        Ok(spec) => Ok(Outcome::ok(
            format!("valid: {}\n", describe(&spec)),
            json!({ "valid": true, "n": spec.n(), "m": spec.m(), "q": spec.q(),
                    "delta_s": spec.delta_s, "delta_c": spec.delta_c, "side_error_model": model_name(&spec) }),
        )),
        Err(icsie::Error::Invalid(violations)) => {
            let mut text = format!("invalid: {} violation(s)\n", violations.len());
            for v in &violations {
                writeln!(text, "  {v}").unwrap();
            }
            let list: Vec<Value> = violations
                .iter()
                .map(|v| json!({ "kind": v.name(), "message": v.to_string() }))
                .collect();
            Ok(Outcome {
                text,
                json: json!({ "valid": false, "violations": list }),
                code: 1,
            })
        }
        Err(e) => Err(e.into()),
    }
}

pub fn search(path: &Path, method: Method, out: Option<&Path>) -> Result<Outcome> {
    let spec = load_spec(path)?;
    let budget = Budget::default();
    let brute = match method {
        Method::Brute | Method::Both => Some(optimal_length(&spec, &budget)?),
        Method::Minrank => None,
    };
    let ranked = match method {
        Method::Minrank | Method::Both => {
            if spec.delta_c > 0 {
                return Err(CliError::Failed(
                    "minrank only covers codes without channel errors (delta_c = 0)".into(),
                ));
            }
            let r = minrank(&spec, &budget)?;
            Some(GeneratorMatrix::certify(&spec, r.generator(), &budget)?)
        }
        Method::Brute => None,
    };
    let agree = match (&brute, &ranked) {
        (Some(a), Some(b)) => Some(a.length() == b.length()),
        _ => None,
    };
    let chosen = brute.as_ref().or(ranked.as_ref()).expect("some method ran");
    if let Some(p) = out {
        std::fs::write(p, serialize_generator(chosen.matrix())).map_err(|source| CliError::Write {
            path: p.to_owned(),
            source,
        })?;
    }

    let mut text = String::new();
    if let Some(b) = &brute {
        writeln!(text, "brute force: N = {}", b.length()).unwrap();
    }
    if let Some(r) = &ranked {
        writeln!(text, "minrank: N = {}", r.length()).unwrap();
    }
    match agree {
        Some(true) => text.push_str("agree: yes\n"),
        Some(false) => text.push_str("agree: NO\n"),
        None => {}
    }
    writeln!(text, "N = {}", chosen.length()).unwrap();
    text.push_str("generator:\n");
    text.push_str(&serialize_generator(chosen.matrix()));

    let json = json!({
        "N": chosen.length(),
        "brute": brute.as_ref().map(|b| b.length()),
        "minrank": ranked.as_ref().map(|r| r.length()),
        "agree": agree,
        "generator": GeneratorDoc::from_matrix(chosen.matrix()),
    });
    Ok(Outcome {
        text,
        json,
        code: if agree == Some(false) { 1 } else { 0 },
    })
}

pub fn encode(instance: &Path, generator: &Path, x: &str) -> Result<Outcome> {
    let spec = load_spec(instance)?;
    let g = load_generator(&spec, generator)?;
    let x = vector(&spec, "--x", x, spec.n())?;
    let y = g.left_mul(&x)?;
    Ok(Outcome::ok(format!("y = {}\n", csv(&y)), json!({ "y": y.reps() })))
}

pub fn analyze(path: &Path) -> Result<Outcome> {
    let spec = load_spec(path)?;
    let budget = Budget::default();
    let n = spec.n();
    let cycles = find_cycles(&spec, &budget)?;
    let (beta, packing) = max_disjoint_cycles(&spec, &budget)?;
    let (g, witness) = gamma(&spec, &budget)?;
    let mais = match delta_s_mais(&spec, &budget) {
        Ok((v, _)) => Some(v),
        Err(icsie::Error::NotUnipartite) => None,
        Err(e) => return Err(e.into()),
    };
    let report = bounds_report(&spec, &budget);

    let mut text = format!("instance: {}\n", describe(&spec));
    if cycles.is_empty() {
        writeln!(text, "acyclic: N_opt = n = {n}").unwrap();
    } else {
        writeln!(text, "minimal cycle sets: {}", cycles.len()).unwrap();
        for c in &cycles {
            writeln!(
                text,
                "  packets {} receivers {:?}",
                set(&c.packets),
                one_based(c.receivers.iter().copied())
            )
            .unwrap();
        }
    }
    writeln!(text, "gamma = {g} witness {}", set(&witness)).unwrap();
    match mais {
        Some(v) => writeln!(text, "delta_s-MAIS = {v}").unwrap(),
        None => text.push_str("delta_s-MAIS = n/a (instance is not unipartite)\n"),
    }
    let packed: Vec<String> = packing.iter().map(|c| set(&c.packets)).collect();
    writeln!(text, "beta = {beta} packing [{}]", packed.join(" ")).unwrap();
    text.push_str("bounds:\n");
    write_report(&mut text, &report);
    let sandwich = (spec.delta_c > 0).then(|| (report.value("gecic_lower"), report.value("gecic_upper")));
    if let Some((lo, hi)) = sandwich {
        let show = |v: Option<usize>| v.map_or("?".to_string(), |v| v.to_string());
        writeln!(
            text,
            "sandwich: N_opt(delta_s, delta_c) in [{}, {}]",
            show(lo),
            show(hi)
        )
        .unwrap();
    }
    let clashes = report.inconsistencies();
    for (a, b) in &clashes {
        writeln!(text, "INCONSISTENT: {a} exceeds {b}").unwrap();
    }

    let json = json!({
        "cycles": cycles.iter().map(|c| json!({
            "packets": one_based(c.packets.iter()),
            "receivers": one_based(c.receivers.iter().copied()),
        })).collect::<Vec<_>>(),
        "acyclic": cycles.is_empty(),
        "gamma": { "value": g, "witness": one_based(witness.iter()) },
        "delta_s_mais": mais,
        "beta": { "value": beta, "packing": packing.iter().map(|c| one_based(c.packets.iter())).collect::<Vec<_>>() },
        "bounds": report,
        "sandwich": sandwich.map(|(lo, hi)| json!({ "lower": lo, "upper": hi })),
        "inconsistencies": clashes,
    });
    Ok(Outcome {
        text,
        json,
        code: if clashes.is_empty() { 0 } else { 1 },
    })
}

fn write_report(text: &mut String, report: &BoundsReport) {
    for e in &report.entries {
        let value = e.value.map_or("-".to_string(), |v| v.to_string());
        let quantity = serde_json::to_value(e.quantity).unwrap();
        let kind = serde_json::to_value(e.kind).unwrap();
        let status = if e.certified { "certified" } else { "sampled" };
        let attained = if e.attained == Some(true) { " attained" } else { "" };
        writeln!(
            text,
            "  {:<6} {:<5} {:<22} {:>3}  {:<18} {}",
            quantity.as_str().unwrap_or(""),
            kind.as_str().unwrap_or(""),
            e.name,
            value,
            format!("{status}{attained}"),
            e.provenance
        )
        .unwrap();
    }
}
