use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, ValueEnum};
use icsie::{build_context, decode_receiver, oracle_decodable, Budget, FVector, ProblemSpec, SideErrorModel};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::commands::{load_generator, load_spec};
use crate::error::Result;
use crate::Outcome;

const SHOWN_FAILURES: usize = 10;

#[derive(Debug, Args)]
pub struct SimulateArgs {
    instance: PathBuf,
    generator: PathBuf,
    /// Number of random broadcasts, or `exhaustive`.
    #[arg(long, default_value = "1000")]
    trials: Trials,
    /// Seed of the ChaCha8 stream used for random trials.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ErrorMode::Random)]
    error_mode: ErrorMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trials {
    Count(u64),
    Exhaustive,
}

impl FromStr for Trials {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "exhaustive" {
            return Ok(Trials::Exhaustive);
        }
        s.parse()
            .map(Trials::Count)
            .map_err(|_| format!("`{s}` is neither a count nor `exhaustive`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ErrorMode {
    /// Random messages with random side errors of weight at most delta_s.
    Random,
    /// Every message with every admissible side-error pattern.
    AdversarialExhaustive,
}

#[derive(Debug, Serialize)]
struct ReceiverStats {
    receiver: usize,
    packet: usize,
    trials: u64,
    recovered: u64,
    rate: f64,
}

#[derive(Debug, Serialize)]
struct Witness {
    receiver: usize,
    message: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    side_error: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    confused_with: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    decoded: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Debug, Serialize)]
struct SimulationReport {
    mode: &'static str,
    decoder: &'static str,
    seed: Option<u64>,
    receivers: Vec<ReceiverStats>,
    pass: bool,
    failures_total: u64,
    failures: Vec<Witness>,
}

pub fn run(args: &SimulateArgs) -> Result<Outcome> {
    let spec = load_spec(&args.instance)?;
    let g = load_generator(&spec, &args.generator)?;
    let budget = Budget::default();
    let exhaustive = args.trials == Trials::Exhaustive || args.error_mode == ErrorMode::AdversarialExhaustive;
    let report = if spec.delta_c > 0 {
        sphere_check(&spec, &g, &budget)?
    } else {
        if spec.side_error_model == SideErrorModel::Erasure {
            return Err(icsie::Error::Unsupported("syndrome decoding under the erasure model").into());
        }
        let mut sim = Syndrome::new(&spec, &g);
        match (exhaustive, args.trials) {
            (true, _) => sim.exhaustive(&budget)?,
            (false, Trials::Count(t)) => sim.random(t, args.seed),
            (false, Trials::Exhaustive) => unreachable!("exhaustive handled above"),
        }
        sim.finish(if exhaustive { None } else { Some(args.seed) })
    };
    let text = render(&report);
    let code = if report.pass { 0 } else { 1 };
    Ok(Outcome {
        text,
        json: serde_json::to_value(&report).expect("report serializes"),
        code,
    })
}

/// With channel errors the check is sphere disjointness rather than decoding.
fn sphere_check(spec: &ProblemSpec, g: &icsie::FMatrix, budget: &Budget) -> Result<SimulationReport> {
    let confusion = oracle_decodable(spec, g, budget)?;
    let failures: Vec<Witness> = confusion
        .into_iter()
        .map(|c| Witness {
            receiver: c.receiver + 1,
            message: c.x.reps(),
            side_error: None,
            confused_with: Some(c.x_prime.reps()),
            decoded: None,
            error: None,
        })
        .collect();
    Ok(SimulationReport {
        mode: "exhaustive",
        decoder: "sphere-oracle",
        seed: None,
        receivers: Vec::new(),
        pass: failures.is_empty(),
        failures_total: failures.len() as u64,
        failures,
    })
}

struct Syndrome<'a> {
    spec: &'a ProblemSpec,
    g: &'a icsie::FMatrix,
    contexts: Vec<std::result::Result<icsie::ReceiverContext, icsie::Error>>,
    stats: Vec<(u64, u64)>,
    failures: Vec<Witness>,
    failures_total: u64,
    mode: &'static str,
}

impl<'a> Syndrome<'a> {
    fn new(spec: &'a ProblemSpec, g: &'a icsie::FMatrix) -> Self {
        let graph = spec.graph();
        Syndrome {
            spec,
            g,
            contexts: (0..graph.m()).map(|i| build_context(g, graph, i)).collect(),
            stats: vec![(0, 0); graph.m()],
            failures: Vec::new(),
            failures_total: 0,
            mode: "random",
        }
    }

    fn trial(&mut self, i: usize, x: &FVector, y: &FVector, e: &FVector) {
        let graph = self.spec.graph();
        let truth = x.subvector(graph.side(i)).expect("side set in range");
        let x_hat = truth.add(e).expect("same length");
        let expected = x.get(graph.demand(i));
        let outcome = match &self.contexts[i] {
            Ok(ctx) => decode_receiver(ctx, self.spec.delta_s, y, &x_hat).map(|t| t.value),
            Err(err) => Err(err.clone()),
        };
        self.stats[i].0 += 1;
        if outcome.as_ref().ok() == Some(&expected) {
            self.stats[i].1 += 1;
            return;
        }
        self.failures_total += 1;
        if self.failures.len() < SHOWN_FAILURES {
            self.failures.push(Witness {
                receiver: i + 1,
                message: x.reps(),
                side_error: Some(e.reps()),
                confused_with: None,
                decoded: outcome.as_ref().ok().map(|v| v.rep()),
                error: outcome.err().map(|err| err.to_string()),
            });
        }
    }

    fn random(&mut self, trials: u64, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let field = self.spec.field().clone();
        let q = self.spec.q();
        let n = self.spec.n();
        for _ in 0..trials {
            let reps: Vec<u32> = (0..n).map(|_| rng.random_range(0..q)).collect();
            let x = FVector::from_reps(&field, &reps).expect("reps below q");
            let y = self.g.left_mul(&x).expect("generator has n rows");
            for i in 0..self.spec.m() {
                let len = self.spec.graph().side(i).len();
                let w = rng.random_range(0..=self.spec.delta_s.min(len));
                let mut e = vec![0; len];
                for p in sample(&mut rng, len, w) {
                    e[p] = rng.random_range(1..q);
                }
                let e = FVector::from_reps(&field, &e).expect("reps below q");
                self.trial(i, &x, &y, &e);
            }
        }
    }

    fn exhaustive(&mut self, budget: &Budget) -> icsie::Result<()> {
        self.mode = "exhaustive";
        let field = self.spec.field().clone();
        let q = self.spec.q() as u64;
        let n = self.spec.n();
        let graph = self.spec.graph();
        let limit = 1u64 << budget.enum_bits;
        let mut total = 0u64;
        for i in 0..graph.m() {
            let cases = q.checked_pow((n + graph.side(i).len()) as u32).unwrap_or(u64::MAX);
            total = total.saturating_add(cases);
        }
        if total > limit {
            return Err(icsie::Error::BudgetExceeded {
                what: "exhaustive simulation",
                needed: total.to_string(),
                limit: limit.to_string(),
            });
        }
        let digits = |mut code: u64, len: usize| -> Vec<u32> {
            (0..len)
                .map(|_| {
                    let d = (code % q) as u32;
                    code /= q;
                    d
                })
                .collect()
        };
        for code in 0..q.pow(n as u32) {
            let x = FVector::from_reps(&field, &digits(code, n)).expect("digits below q");
            let y = self.g.left_mul(&x).expect("generator has n rows");
            for i in 0..graph.m() {
                let len = graph.side(i).len();
                for ecode in 0..q.pow(len as u32) {
                    let e = FVector::from_reps(&field, &digits(ecode, len)).expect("digits below q");
                    if e.weight() <= self.spec.delta_s {
                        self.trial(i, &x, &y, &e);
                    }
                }
            }
        }
        Ok(())
    }

    fn finish(self, seed: Option<u64>) -> SimulationReport {
        let graph = self.spec.graph();
        let receivers: Vec<ReceiverStats> = self
            .stats
            .iter()
            .enumerate()
            .map(|(i, &(trials, recovered))| ReceiverStats {
                receiver: i + 1,
                packet: graph.demand(i) + 1,
                trials,
                recovered,
                rate: if trials == 0 {
                    1.0
                } else {
                    recovered as f64 / trials as f64
                },
            })
            .collect();
        SimulationReport {
            mode: self.mode,
            decoder: "syndrome",
            seed,
            receivers,
            pass: self.failures_total == 0,
            failures_total: self.failures_total,
            failures: self.failures,
        }
    }
}

fn render(r: &SimulationReport) -> String {
    let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
    let mut text = format!("simulation: {} mode, {} decoder", r.mode, r.decoder);
    if let Some(s) = r.seed {
        write!(text, ", seed {s}").unwrap();
    }
    text.push('\n');
    for s in &r.receivers {
        writeln!(
            text,
            "receiver {} (packet {}): {}/{} recovered, rate {:.6}",
            s.receiver, s.packet, s.recovered, s.trials, s.rate
        )
        .unwrap();
    }
    writeln!(text, "overall: {}", if r.pass { "PASS" } else { "FAIL" }).unwrap();
    if r.failures_total > 0 {
        writeln!(text, "failures: {} (showing {})", r.failures_total, r.failures.len()).unwrap();
        for w in &r.failures {
            write!(text, "  receiver {}: x = {}", w.receiver, join(&w.message)).unwrap();
            if let Some(e) = &w.side_error {
                write!(text, ", side error {}", join(e)).unwrap();
            }
            if let Some(x2) = &w.confused_with {
                write!(text, ", confused with x' = {}", join(x2)).unwrap();
            }
            if let Some(v) = w.decoded {
                write!(text, ", decoded {v}").unwrap();
            }
            if let Some(err) = &w.error {
                write!(text, ", error: {err}").unwrap();
            }
            text.push('\n');
        }
    }
    text
}
