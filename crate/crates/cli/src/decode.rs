use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Args;
use icsie::decoder::decode_with_correction;
use icsie::{build_context, decode_receiver, ProblemSpec, SideErrorModel};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::commands::{csv, load_generator, load_spec, read, set, vector};
use crate::error::{CliError, Result};
use crate::Outcome;

#[derive(Debug, Args)]
pub struct DecodeArgs {
    instance: PathBuf,
    generator: PathBuf,
    /// Received broadcast, comma-separated. Computed from --truth when omitted.
    #[arg(long)]
    y: Option<String>,
    /// Side information of one receiver as `receiver=v1,v2,...` (1-based receiver).
    #[arg(long = "xhat", value_name = "R=VEC")]
    xhat: Vec<String>,
    /// The true message; checks every decoded value and fills in missing side information.
    #[arg(long)]
    truth: Option<String>,
    /// Force a correction vector for one receiver as `receiver=p1,p2,...`.
    #[arg(long = "correction", value_name = "R=VEC")]
    correction: Vec<String>,
    /// JSON file with keys `y`, `xhat`, `truth`, `correction`; its values win over flags.
    #[arg(long)]
    scenario: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Scenario {
    y: Option<Vec<u32>>,
    #[serde(default)]
    xhat: BTreeMap<String, Vec<u32>>,
    truth: Option<Vec<u32>>,
    #[serde(default)]
    correction: BTreeMap<String, Vec<u32>>,
}

/// Inputs after merging the scenario file with the flags, as text vectors.
struct Inputs {
    y: Option<String>,
    xhat: BTreeMap<usize, String>,
    truth: Option<String>,
    correction: BTreeMap<usize, String>,
}

fn join(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn receiver_key(spec: &ProblemSpec, key: &str, what: &str) -> Result<usize> {
    match key.trim().parse::<usize>() {
        Ok(r) if (1..=spec.m()).contains(&r) => Ok(r - 1),
        _ => Err(CliError::Input(format!(
            "{what}: `{key}` is not a receiver in 1..={}",
            spec.m()
        ))),
    }
}

fn assignments(spec: &ProblemSpec, flags: &[String], what: &str) -> Result<BTreeMap<usize, String>> {
    let mut out = BTreeMap::new();
    for f in flags {
        let (r, v) = f
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("{what}: expected `receiver=vector`, got `{f}`")))?;
        out.insert(receiver_key(spec, r, what)?, v.to_string());
    }
    Ok(out)
}

fn merge(spec: &ProblemSpec, args: &DecodeArgs) -> Result<Inputs> {
    let mut inputs = Inputs {
        y: args.y.clone(),
        xhat: assignments(spec, &args.xhat, "--xhat")?,
        truth: args.truth.clone(),
        correction: assignments(spec, &args.correction, "--correction")?,
    };
    let Some(path) = &args.scenario else {
        return Ok(inputs);
    };
    let file: Scenario =
        serde_json::from_str(&read(path)?).map_err(|e| CliError::Input(format!("scenario {}: {e}", path.display())))?;
    let warn = |flag: &str| eprintln!("warning: scenario file overrides {flag}");
    if let Some(y) = file.y {
        if inputs.y.is_some() {
            warn("--y");
        }
        inputs.y = Some(join(&y));
    }
    if let Some(t) = file.truth {
        if inputs.truth.is_some() {
            warn("--truth");
        }
        inputs.truth = Some(join(&t));
    }
    for (k, v) in file.xhat {
        let r = receiver_key(spec, &k, "scenario xhat")?;
        if inputs.xhat.insert(r, join(&v)).is_some() {
            warn(&format!("--xhat for receiver {}", r + 1));
        }
    }
    for (k, v) in file.correction {
        let r = receiver_key(spec, &k, "scenario correction")?;
        if inputs.correction.insert(r, join(&v)).is_some() {
            warn(&format!("--correction for receiver {}", r + 1));
        }
    }
    Ok(inputs)
}

pub fn run(args: &DecodeArgs) -> Result<Outcome> {
    let spec = load_spec(&args.instance)?;
    if spec.side_error_model == SideErrorModel::Erasure {
        return Err(icsie::Error::Unsupported("syndrome decoding under the erasure model").into());
    }
    let g = load_generator(&spec, &args.generator)?;
    let inputs = merge(&spec, args)?;
    let graph = spec.graph();
    let truth = inputs
        .truth
        .as_deref()
        .map(|t| vector(&spec, "truth", t, spec.n()))
        .transpose()?;
    let y = match (&inputs.y, &truth) {
        (Some(y), _) => vector(&spec, "y", y, g.cols())?,
        (None, Some(x)) => g.left_mul(x)?,
        (None, None) => return Err(CliError::Input("need y (or the true message to compute it)".into())),
    };
    let receivers: Vec<usize> = if truth.is_some() {
        (0..graph.m()).collect()
    } else {
        inputs.xhat.keys().copied().collect()
    };
    if receivers.is_empty() {
        return Err(CliError::Input("no receiver side information given".into()));
    }

    let mut text = format!("y = {}\n", csv(&y));
    let mut rows = Vec::new();
    let mut failures = 0;
    for i in receivers {
        let side = graph.side(i);
        let label = format!("receiver {}", i + 1);
        let x_hat = match (inputs.xhat.get(&i), &truth) {
            (Some(v), _) => vector(&spec, &format!("{label} side information"), v, side.len())?,
            (None, Some(x)) => x.subvector(side)?,
            (None, None) => unreachable!("receivers without side information are not listed"),
        };
        let forced = inputs
            .correction
            .get(&i)
            .map(|p| vector(&spec, &format!("{label} correction"), p, g.cols()))
            .transpose()?;
        let outcome = build_context(&g, graph, i).and_then(|ctx| match &forced {
            Some(p) => decode_with_correction(&ctx, &y, &x_hat, p),
            None => decode_receiver(&ctx, spec.delta_s, &y, &x_hat),
        });
        let demand = graph.demand(i);
        let expected = truth.as_ref().map(|x| x.get(demand));
        let row = match outcome {
            Ok(t) => {
                let check = expected.map(|e| e == t.value);
                writeln!(text, "{label}: x_{} = {}", demand + 1, t.value).unwrap();
                writeln!(text, "  side information {}", csv(&x_hat)).unwrap();
                writeln!(text, "  syndrome {}", t.syndrome).unwrap();
                writeln!(
                    text,
                    "  correction {}{} suspected packets {}",
                    t.correction,
                    if forced.is_some() { " (forced)" } else { "" },
                    set(&t.suspected)
                )
                .unwrap();
                match (check, expected) {
                    (Some(true), _) => text.push_str("  check: ok\n"),
                    (Some(false), Some(e)) => {
                        failures += 1;
                        writeln!(text, "  check: WRONG, true value {e}").unwrap();
                    }
                    _ => {}
                }
                json!({
                    "receiver": i + 1, "packet": demand + 1, "value": t.value.rep(),
                    "syndrome": t.syndrome.reps(), "correction": t.correction.reps(),
                    "forced": forced.is_some(),
                    "suspected": t.suspected.iter().map(|j| j + 1).collect::<Vec<_>>(),
                    "correct": check,
                })
            }
            Err(e) => {
                failures += 1;
                writeln!(text, "{label}: error: {e}").unwrap();
                json!({ "receiver": i + 1, "packet": demand + 1, "error": e.to_string() })
            }
        };
        rows.push(row);
    }
    let json = json!({ "y": y.reps(), "receivers": Value::Array(rows), "failures": failures });
    Ok(Outcome {
        text,
        json,
        code: if failures == 0 { 0 } else { 1 },
    })
}
