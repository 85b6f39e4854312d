use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use bottomless::arborescence::{adversary_run, realise_branching, strategy_by_name, AdversaryConfig, Branching, Outcome, RealiseMode};
use bottomless::colouring::{
    colour_config_plus_nested, colour_configuration, colour_hanging, colour_tower_free, verify_configuration_property,
    Colouring, Direction,
};
use bottomless::configurations::{family_traits, pair_matrix, PairConfig};
use bottomless::constructions::{gen_config, gen_lb_family, gen_no_shallow, gen_unit_lb, no_shallow_min_d, RadiusRule};
use bottomless::geometry::load_family;
use bottomless::hitting::{colour_intersecting, lift_hitting_to_colouring, shallow_hitting_intersecting};
use bottomless::oracle::{brute_force_polychromatic, exact_mk, verify_polychromatic};
use bottomless::{sample, Error, Family};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Parser, Debug, Serialize)]
#[command(name = "bottomless", version, about = "Polychromatic colouring of bottomless rectangles and branchings")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Serialize)]
struct Global {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Node budget for exhaustive searches, presentation budget for the adversary.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Read the input document from this file instead of standard input.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Write a run manifest with input and output digests.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
enum Command {
    /// Generate a family.
    Gen {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        config: Option<String>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        h: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, default_value = "proof-consistent")]
        rule: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Family traits and the pairwise configuration matrix.
    Classify,
    /// Colour a family.
    Color {
        #[arg(long)]
        algo: String,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        config: Option<String>,
        #[arg(long)]
        direction: Option<String>,
    },
    /// Check a colouring; exit 3 when some point is not served.
    Verify {
        #[arg(long)]
        colors: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: Option<usize>,
        /// Check the chain property of this configuration instead.
        #[arg(long)]
        config: Option<String>,
    },
    /// Shallow hitting set of the depth-d cells of an intersecting family.
    HittingSet {
        #[arg(long)]
        d: usize,
    },
    /// Colouring of an intersecting family from shallow hitting sets.
    Lift {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 3)]
        c: usize,
    },
    /// Exact search: m_k, or satisfiability at a given depth.
    Oracle {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Play the presenting side against a built-in strategy.
    Adversary {
        #[arg(long)]
        strategy: String,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        m: usize,
    },
    /// Realise a branching as rectangles.
    Realize {
        #[arg(long)]
        mode: String,
    },
}

const DEFAULT_BUDGET: u64 = 10_000_000;

struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let kind = match &e {
            Error::Parse(_) => "parse",
            Error::Invariant(_) => "invariant",
            Error::Tie(..) => "tie",
            Error::GeneralPosition => "general-position",
            Error::Trait(_) => "trait",
            Error::NoAlgorithm { .. } => "no-algorithm",
            Error::NotFound(_) => "not-found",
            Error::BudgetExceeded(_) => "budget-exceeded",
            Error::Order(_) => "order",
            Error::Param(_) => "param",
            Error::NotAHittingSet(_) => "not-a-hitting-set",
            Error::InvariantBroken(_) => "invariant-broken",
            Error::EmptyDisappear => "empty-disappear",
            Error::ConstructorFailure(_) => "constructor-failure",
        };
        let code = if matches!(e, Error::BudgetExceeded(_)) { 2 } else { 1 };
        Failure { code, kind, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 1, kind: "usage", message: message.into() }
}

/// A finished command: its JSON and exit code.
struct Done {
    output: Value,
    code: u8,
}

fn ok(output: Value) -> Result<Done, Failure> {
    Ok(Done { output, code: 0 })
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Failure> {
    let mut text = String::new();
    match path {
        Some(p) => text = fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))?,
        None => {
            io::stdin().read_to_string(&mut text).map_err(|e| usage(e.to_string()))?;
        }
    }
    Ok(text)
}

fn need<T>(value: Option<T>, flag: &str) -> Result<T, Failure> {
    value.ok_or_else(|| usage(format!("--{flag} is required")))
}

fn gen(cmd: &Command, seed: u64) -> Result<Done, Failure> {
    let Command::Gen { kind, config, m, k, h, d, rule, n } = cmd else { unreachable!() };
    let rule = RadiusRule::parse(rule)?;
    let mut provenance = json!({ "kind": kind, "seed": seed });
    let family = match kind.as_str() {
        "config" => {
            let config = PairConfig::parse(&need(config.clone(), "config")?)?;
            let m = need(*m, "m")?;
            provenance["config"] = json!(config);
            provenance["m"] = json!(m);
            gen_config(config, m)?
        }
        "no-shallow" => {
            let h = need(*h, "h")?;
            let d = d.unwrap_or_else(|| no_shallow_min_d(h, rule));
            let (family, params) = gen_no_shallow(h, d, rule)?;
            provenance["params"] = serde_json::to_value(&params).expect("params serialise");
            family
        }
        "lb" => {
            let k = need(*k, "k")?;
            let lb = gen_lb_family(k, *m)?;
            provenance["k"] = json!(k);
            provenance["m"] = json!(m.unwrap_or(2 * k));
            provenance["wide"] = json!(lb.wide);
            lb.family
        }
        "unit-lb" => {
            let k = need(*k, "k")?;
            provenance["k"] = json!(k);
            gen_unit_lb(k)?
        }
        "random" | "hanging" | "intersecting" | "tower-free" | "steps" => {
            let n = need(*n, "n")?;
            provenance["n"] = json!(n);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            match kind.as_str() {
                "random" => match config {
                    Some(c) => {
                        let c = PairConfig::parse(c)?;
                        provenance["config"] = json!(c);
                        sample::random_pure_config(&mut rng, c, n)
                    }
                    None => sample::random_family(&mut rng, n),
                },
                "hanging" => sample::random_hanging(&mut rng, n),
                "intersecting" => sample::random_intersecting(&mut rng, n),
                "tower-free" => sample::random_tower_free(&mut rng, n),
                _ => sample::random_steps(&mut rng, n),
            }
        }
        other => return Err(usage(format!("unknown kind {other:?}"))),
    };
    let mut extra = serde_json::Map::new();
    extra.insert("provenance".into(), provenance);
    ok(family.to_json_with(extra))
}

fn classify(family: &Family) -> Result<Done, Failure> {
    let traits = family_traits(family)?;
    let matrix: Vec<Vec<Option<&str>>> =
        pair_matrix(family)?.into_iter().map(|row| row.into_iter().map(|c| c.map(PairConfig::name)).collect()).collect();
    ok(json!({
        "schema": "bottomless/classification/v1",
        "ids": family.ids(),
        "general_position": family.general_position(),
        "traits": traits,
        "matrix": matrix,
    }))
}

fn color(cmd: &Command, family: &Family, budget: u64) -> Result<Done, Failure> {
    let Command::Color { algo, k, config, direction } = cmd else { unreachable!() };
    let config = || -> Result<PairConfig, Failure> { Ok(PairConfig::parse(&need(config.clone(), "config")?)?) };
    let colouring = match algo.as_str() {
        "config" => colour_configuration(family, *k, config()?, Direction::parse(&need(direction.clone(), "direction")?)?)?,
        "config+nested" => colour_config_plus_nested(family, *k, config()?)?,
        "tower-free" => colour_tower_free(family, *k, budget)?,
        "hanging" => colour_hanging(family, *k)?,
        "intersecting" => colour_intersecting(family, *k)?,
        other => return Err(usage(format!("unknown algorithm {other:?}"))),
    };
    ok(colouring.to_json())
}

fn verify(cmd: &Command, family: &Family) -> Result<Done, Failure> {
    let Command::Verify { colors, k, m, config } = cmd else { unreachable!() };
    let text = fs::read_to_string(colors).map_err(|e| usage(format!("{}: {e}", colors.display())))?;
    let colouring = Colouring::from_json(&text)?;
    let violations = match config {
        Some(c) => serde_json::to_value(verify_configuration_property(family, &colouring, PairConfig::parse(c)?, *k)),
        None => serde_json::to_value(verify_polychromatic(family, &colouring, *k, need(*m, "m")?)),
    }
    .expect("violations serialise");
    let count = violations.as_array().map_or(0, Vec::len);
    let output = json!({ "schema": "bottomless/verification/v1", "ok": count == 0, "violations": violations });
    Ok(Done { output, code: if count == 0 { 0 } else { 3 } })
}

fn oracle(family: &Family, k: usize, m: Option<usize>, budget: u64) -> Result<Done, Failure> {
    match m {
        None => ok(json!({ "schema": "bottomless/oracle/v1", "m_k": exact_mk(family, k, budget)? })),
        Some(m) => {
            let found = brute_force_polychromatic(family, k, m, budget)?;
            ok(json!({
                "schema": "bottomless/oracle/v1",
                "sat": found.is_some(),
                "colors": found.map(|c| c.to_json()["colors"].clone()),
            }))
        }
    }
}

fn adversary(strategy: &str, k: u32, m: usize, budget: u64, seed: u64) -> Result<Done, Failure> {
    let mut s = strategy_by_name(strategy, seed)?;
    let transcript = adversary_run(s.as_mut(), AdversaryConfig::new(k, m, budget))?;
    let code = if transcript.outcome.is_defeat() { 0 } else { 2 };
    let mut output = serde_json::to_value(&transcript).expect("transcript serialises");
    output["schema"] = json!("bottomless/transcript/v1");
    output["branching"] = transcript.branching.to_json();
    output["colouring"] = transcript.colouring.to_json();
    if let Outcome::StrategyError { .. } = transcript.outcome {
        output["note"] = json!("an illegal assignment counts as a defeat");
    }
    Ok(Done { output, code })
}

fn realize(text: &str, mode: &str) -> Result<Done, Failure> {
    // An adversary transcript carries its branching under "branching".
    let doc: serde_json::Value = serde_json::from_str(text).unwrap_or_default();
    let b = match doc.get("branching") {
        Some(inner) => Branching::from_json(&inner.to_string())?,
        None => Branching::from_json(text)?,
    };
    let real = realise_branching(&b, RealiseMode::parse(mode)?)?;
    let mut extra = serde_json::Map::new();
    extra.insert("mode".into(), json!(real.mode));
    extra.insert("order".into(), json!(real.order));
    extra.insert("rect_of".into(), json!(real.rect_of));
    ok(real.family.to_json_with(extra))
}

fn run(cli: &Cli) -> Result<(Done, Option<String>), Failure> {
    let g = &cli.global;
    let budget = g.budget.unwrap_or(DEFAULT_BUDGET);
    let needs_input = !matches!(cli.command, Command::Gen { .. } | Command::Adversary { .. });
    let input = if needs_input { Some(read_input(&g.input)?) } else { None };
    let family = || -> Result<Family, Failure> { Ok(load_family(input.as_deref().unwrap_or_default())?) };
    let done = match &cli.command {
        cmd @ Command::Gen { .. } => gen(cmd, g.seed)?,
        Command::Classify => classify(&family()?)?,
        cmd @ Command::Color { .. } => color(cmd, &family()?, budget)?,
        cmd @ Command::Verify { .. } => verify(cmd, &family()?)?,
        Command::HittingSet { d } => {
            let set = shallow_hitting_intersecting(&family()?, *d)?;
            ok(json!({ "schema": "bottomless/hitting-set/v1", "ids": set.ids, "depth": d, "shallow": set.shallow }))?
        }
        Command::Lift { k, c } => {
            let f = family()?;
            ok(lift_hitting_to_colouring(&f, *k, *c, |g, d| Ok(shallow_hitting_intersecting(g, d)?.ids))?.to_json())?
        }
        Command::Oracle { k, m } => oracle(&family()?, *k, *m, budget)?,
        Command::Adversary { strategy, k, m } => adversary(strategy, *k, *m, g.budget.unwrap_or(10_000), g.seed)?,
        Command::Realize { mode } => realize(input.as_deref().unwrap_or_default(), mode)?,
    };
    Ok((done, input))
}

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn emit(cli: &Cli, done: &Done, input: Option<&str>) -> io::Result<()> {
    let mut text = serde_json::to_string_pretty(&done.output).expect("output serialises");
    text.push('\n');
    match &cli.global.out {
        Some(path) => fs::write(path, &text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    if let Some(path) = &cli.global.manifest {
        let manifest = json!({
            "schema": "bottomless/manifest/v1",
            "command": &cli.command,
            "seed": cli.global.seed,
            "budget": cli.global.budget,
            "input_sha256": input.map(|s| digest(s.as_bytes())),
            "output_sha256": digest(text.as_bytes()),
            "version": env!("CARGO_PKG_VERSION"),
            "exit_code": done.code,
        });
        fs::write(path, serde_json::to_string_pretty(&manifest).expect("manifest serialises") + "\n")?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let report = json!({ "error": "usage", "message": e.to_string().trim_end() });
            eprintln!("{report}");
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok((done, input)) => match emit(&cli, &done, input.as_deref()) {
            Ok(()) => ExitCode::from(done.code),
            Err(e) => {
                eprintln!("{}", json!({ "error": "io", "message": e.to_string() }));
                ExitCode::from(1)
            }
        },
        Err(f) => {
            eprintln!("{}", json!({ "error": f.kind, "message": f.message }));
            ExitCode::from(f.code)
        }
    }
}
