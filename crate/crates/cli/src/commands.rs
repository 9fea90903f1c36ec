use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use infbin::graph::estimate_c;
use infbin::series::{curve, enumerate_minimal, parse_grid, Leaf, Truncation};
use infbin::sim::{
    coupling_convergence_check, perfect_samples, run_forward_replicas, LetterTape, PerfectOptions,
    TauTail,
};
use infbin::words::classify::verdict;
use infbin::words::{coupling_number, horizon, tracker_run, Classifier};
use infbin::{Configuration, MoveDistribution, Word};
use serde_json::json;

use crate::mu::parse_mu;
use crate::store::{record, Contradiction, WordStore, WordStoreRecord};
use crate::verify::{self, VerificationFailed};
use crate::{Cli, Command};

/// Largest letter for which `classify` also reports the exact coupling number.
const EXACT_COUPLING_LETTER: u32 = 12;

pub fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<VerificationFailed>().is_some()
        || e.downcast_ref::<Contradiction>().is_some()
    {
        return 2;
    }
    match e.downcast_ref::<infbin::Error>() {
        Some(infbin::Error::SizeLimit { .. } | infbin::Error::NoCoupling { .. }) => 3,
        _ => 1,
    }
}

/// Writes `content` to `name` under the output directory, or to standard
/// output without one.
pub fn emit(out: Option<&Path>, name: &str, content: &str) -> Result<()> {
    match out {
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            let path = dir.join(name);
            fs::write(&path, content).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn warn(msg: &str) {
    eprintln!("warning: {msg}");
}

fn law(spec: &str) -> Result<MoveDistribution> {
    let (mu, warning) = parse_mu(spec)?;
    if let Some(w) = warning {
        warn(&w);
    }
    Ok(mu)
}

fn open_store(cli: &Cli) -> Result<Option<WordStore>> {
    cli.store.as_deref().map(WordStore::open).transpose()
}

pub fn run(cli: &Cli) -> Result<()> {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Classify { word, json } => classify(cli, word, *json),
        Command::Speed {
            mu,
            len,
            max_letter,
            min_weight,
            store_leaves,
            mc_steps,
        } => speed(
            cli,
            mu,
            *len,
            *max_letter,
            *min_weight,
            *store_leaves,
            *mc_steps,
        ),
        Command::Curve {
            grid,
            len,
            max_letter,
            min_weight,
        } => {
            let grid = parse_grid(grid)?;
            let trunc = Truncation::new(*len, *max_letter).with_min_weight(*min_weight);
            let mut csv = String::from("p,lower,upper,L,A,rounding_bound\n");
            for r in curve(&grid, trunc)? {
                writeln!(
                    csv,
                    "{},{},{},{},{},{:e}",
                    r.p, r.lower, r.upper, r.max_len, r.max_letter, r.rounding_bound
                )?;
            }
            emit(out, "curve.csv", &csv)
        }
        Command::Simulate {
            mu,
            steps,
            replicas,
            start,
            coupling,
        } => simulate(cli, mu, *steps, *replicas, start.as_deref(), *coupling),
        Command::Perfect {
            mu,
            k,
            replicas,
            max_horizon,
        } => perfect(cli, mu, *k, *replicas, *max_horizon),
        Command::Begraph { p, n, replicas } => {
            let ps: Vec<f64> = p
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .with_context(|| format!("bad probability list {p:?}"))?;
            let mut csv = String::from("p,n,estimate,stderr,replicas,seed\n");
            for p in ps {
                let e = estimate_c(p, *n, *replicas, cli.seed)?;
                writeln!(
                    csv,
                    "{},{},{},{},{},{}",
                    e.p, e.n, e.estimate, e.stderr, e.replicas, e.seed
                )?;
            }
            emit(out, "begraph.csv", &csv)
        }
        Command::Verify { panel, budget } => verify::run(cli.seed, panel, budget, out),
    }
}

fn classify(cli: &Cli, text: &str, as_json: bool) -> Result<()> {
    let word: Word = text.parse()?;
    let letters = word.letters();
    let mut store = open_store(cli)?;
    let mut classifier = Classifier::new();
    if let Some(s) = &store {
        s.prime(&mut classifier);
    }
    // The word itself is always recomputed, so a stale store is detected.
    let fresh = verdict(letters)?;
    let c = classifier.classify(letters)?;
    let computed = WordStoreRecord {
        verdict: fresh,
        ..record(letters, c)
    };
    if let Some(s) = &mut store {
        s.append([computed.clone()])?;
    }
    let h = horizon(letters)?;
    let depth = tracker_run(letters.iter().copied()).depth();
    let exact = match word.max_letter() {
        Some(m) if m <= EXACT_COUPLING_LETTER => Some(coupling_number(letters)?),
        _ => None,
    };
    if as_json {
        let v = json!({
            "word": letters,
            "verdict": computed.verdict,
            "minimal": computed.minimal,
            "horizon": h,
            "tracker_depth": depth,
            "coupling_number": exact,
        });
        println!("{v}");
    } else {
        let mut line = format!("{word}: {}", computed.verdict);
        match computed.minimal {
            Some(true) => line.push_str(", minimal"),
            Some(false) => line.push_str(", not minimal"),
            None => {}
        }
        write!(line, "; horizon={h}; tracker_depth={depth}")?;
        if let Some(k) = exact {
            write!(line, "; coupling_number={k}")?;
        }
        println!("{line}");
    }
    Ok(())
}

fn speed(
    cli: &Cli,
    spec: &str,
    len: usize,
    max_letter: Option<u32>,
    min_weight: f64,
    store_leaves: bool,
    mc_steps: u64,
) -> Result<()> {
    let mu = law(spec)?;
    let out = cli.out.as_deref();
    if !mu.non_degenerate() && mu.min_support() >= 2 {
        warn(&format!(
            "{mu} is a point mass at a letter above 1; the minimal-word series does not give its speed, \
             reporting forward Monte Carlo instead"
        ));
        let x0 = Configuration::minimal(0);
        let f = run_forward_replicas(&mu, &x0, mc_steps, 1, cli.seed)?;
        println!(
            "forward Monte Carlo speed: {:.6} ± {:.6}",
            f.estimate, f.stderr
        );
        let v = json!({
            "op": "speed",
            "mu": mu.to_string(),
            "params": { "steps": mc_steps },
            "bracket": null,
            "estimate": f.estimate,
            "stderr": f.stderr,
            "seed": cli.seed,
        });
        if out.is_some() {
            emit(out, "speed.json", &format!("{v}\n"))?;
        }
        return Ok(());
    }
    let a = max_letter.unwrap_or_else(|| mu.max_support().unwrap_or(12).min(12));
    let trunc = Truncation::new(len, a).with_min_weight(min_weight);
    let mut leaves: Vec<WordStoreRecord> = Vec::new();
    let mut keep = |l: &Leaf| {
        leaves.push(WordStoreRecord {
            word: l.word.letters().to_vec(),
            verdict: l.verdict,
            minimal: Some(true),
        })
    };
    let b = if store_leaves {
        enumerate_minimal(&mu, trunc, Some(&mut keep))?
    } else {
        enumerate_minimal(&mu, trunc, None)?
    };
    println!("[{:.6}, {:.6}]", b.lower, b.upper);
    println!(
        "good={} bad={} frontier={:.3e} rounding<={:.1e} (L={}, A={}, min_weight={:e})",
        b.good_leaves, b.bad_leaves, b.frontier_mass, b.rounding_bound, len, a, min_weight
    );
    if store_leaves {
        let Some(mut store) = open_store(cli)? else {
            bail!(
                "--store-leaves needs --store or {}",
                crate::store::STORE_ENV
            );
        };
        let n = store.append(leaves)?;
        eprintln!("{n} new words stored");
    }
    if out.is_some() {
        let v = json!({ "op": "speed", "mu": mu.to_string(), "bracket": b, "seed": cli.seed });
        emit(out, "speed.json", &format!("{v}\n"))?;
    }
    Ok(())
}

fn start_configuration(start: Option<&str>) -> Result<Configuration> {
    match start {
        None => Ok(Configuration::minimal(0)),
        Some(s) => {
            let window: Vec<u64> = s
                .trim_matches(|c| c == '[' || c == ']')
                .split(',')
                .map(|x| x.trim().parse::<u64>())
                .collect::<Result<_, _>>()
                .with_context(|| format!("bad start window {s:?}"))?;
            Ok(Configuration::from_window(0, &window)?)
        }
    }
}

fn simulate(
    cli: &Cli,
    spec: &str,
    steps: u64,
    replicas: u64,
    start: Option<&str>,
    coupling: Option<usize>,
) -> Result<()> {
    let mu = law(spec)?;
    let x0 = start_configuration(start)?;
    let f = run_forward_replicas(&mu, &x0, steps, replicas, cli.seed)?;
    let runs: Vec<_> = f
        .runs
        .iter()
        .map(|r| json!({ "front_final": r.front_final, "speed_estimate": r.speed_estimate, "stderr": r.stderr }))
        .collect();
    let mut v = json!({
        "op": "simulate",
        "mu": mu.to_string(),
        "params": { "steps": steps, "replicas": replicas, "start": x0 },
        "estimate": f.estimate,
        "stderr": f.stderr,
        "seed": cli.seed,
        "runs": runs,
    });
    if let Some(k) = coupling {
        let r =
            coupling_convergence_check(&mu, &x0, k, steps, cli.seed, PerfectOptions::default())?;
        v["coupling"] = serde_json::to_value(r)?;
    }
    emit(cli.out.as_deref(), "simulate.json", &format!("{v}\n"))
}

fn perfect(cli: &Cli, spec: &str, k: usize, replicas: u64, max_horizon: u64) -> Result<()> {
    let mu = law(spec)?;
    if replicas == 0 {
        bail!("replicas must be positive");
    }
    let opts = PerfectOptions {
        start_horizon: 1,
        max_horizon,
    };
    let samples = perfect_samples(&mu, k, replicas, cli.seed, opts)?;
    let tail = TauTail::from_samples(k, &samples, cli.seed);
    // F(Y_1) = 1 exactly when ξ_1 does not exceed the front count of Y_0.
    let hits: u64 = samples
        .iter()
        .enumerate()
        .map(|(r, s)| {
            let xi1 = LetterTape::future(&mu, cli.seed, r as u64).get(0) as u64;
            u64::from(xi1 <= s.scenery[k - 1])
        })
        .sum();
    let p = hits as f64 / replicas as f64;
    let mean_scenery: Vec<f64> = (0..k)
        .map(|i| samples.iter().map(|s| s.scenery[i] as f64).sum::<f64>() / replicas as f64)
        .collect();
    let v = json!({
        "op": "perfect",
        "mu": mu.to_string(),
        "params": {
            "K": k,
            "replicas": replicas,
            "max_horizon": max_horizon,
            "tau": "tracker certification length minus one; an upper bound on tau_K",
        },
        "estimate": p,
        "stderr": (p * (1.0 - p) / replicas as f64).sqrt(),
        "mean_scenery": mean_scenery,
        "median_tau": tail.median(),
        "seed": cli.seed,
        "tau_histogram": tail.histogram,
    });
    emit(cli.out.as_deref(), "perfect.json", &format!("{v}\n"))
}
