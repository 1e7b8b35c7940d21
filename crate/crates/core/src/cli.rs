//! Command-line front end. Every command prints (or writes) one JSON report with schema
//! `endostar/1`; exit code 0 means every check passed, 1 a failed check, 2 a usage or
//! configuration error.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::Algebra;
use crate::certificate::{certify, CertifyConfig};
use crate::error::Error;
use crate::expr::parse_expr;
use crate::group::{instance_by_id, Instance};
use crate::ktheory::{six_term_summary, CoeffGroup};
use crate::lattice::DEFAULT_WITNESS_CAP;
use crate::sample::DEFAULT_SEED;
use crate::suites::{
    certificate_suite, ideals_suite, lattice_suite, normal_form_suite, ore_suite, oracle_suite, purity_suite,
    relations_suite, theta_suite, INSTANCES,
};

pub const SCHEMA: &str = "endostar/1";
pub const SEED_ENV: &str = "ENDOSTAR_SEED";

#[derive(Parser, Debug)]
#[command(name = "endostar", version, about = "Exact checks for semigroup crossed products by injective endomorphisms")]
pub struct Cli {
    /// Random seed; the ENDOSTAR_SEED environment variable takes precedence.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct InstanceArgs {
    /// shift-z, free-shift or times2.
    #[arg(long, default_value = "shift-z")]
    pub instance: String,
    /// Base subgroups B besides G, comma separated (shift-z: H, Even).
    #[arg(long, value_delimiter = ',', default_value = "G")]
    pub bases: Vec<String>,
}

#[derive(Args, Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CapArgs {
    #[arg(long, default_value_t = DEFAULT_WITNESS_CAP)]
    pub witness_cap: usize,
    #[arg(long, default_value_t = 64)]
    pub hypothesis_cap: u32,
    #[arg(long, default_value_t = 256)]
    pub depth_cap: u32,
}

impl CapArgs {
    fn certify_config(&self) -> CertifyConfig {
        CertifyConfig {
            witness_cap: self.witness_cap,
            hypothesis_cap: self.hypothesis_cap,
            depth_cap: self.depth_cap,
            ..CertifyConfig::default()
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Defining relations as matrix identities on windows.
    Relations {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long, default_value_t = 2)]
        depth: u32,
    },
    /// Evaluate an expression to its canonical form.
    Mul {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long)]
        expr: String,
    },
    /// Conditional expectation of an expression, with its atom spectrum.
    Theta {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long)]
        expr: String,
    },
    /// Pure-infiniteness certificate for a self-adjoint expression.
    Certify {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long)]
        expr: String,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Ore structure and constructible right ideals.
    Ideals {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long, default_value_t = 3)]
        depth: u32,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Kernel and cokernel of 1 - shift over Z^rank + torsion.
    Ktheory {
        #[arg(long, default_value_t = 1)]
        rank: usize,
        #[arg(long, value_delimiter = ',')]
        torsion: Vec<u64>,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Every suite on every instance.
    All {
        #[arg(long, default_value_t = 2)]
        depth: u32,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[command(flatten)]
        caps: CapArgs,
    },
}

/// Result of a command before serialization.
pub struct Outcome {
    pub command: &'static str,
    pub config: Value,
    pub passed: bool,
    pub result: Value,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn instance(args: &InstanceArgs) -> Result<Instance, Error> {
    let bases: Vec<&str> = args.bases.iter().map(String::as_str).collect();
    instance_by_id(&args.instance, &bases)
}

/// Failed checks give exit code 1; everything that is a bad request gives 2.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::HypothesisViolation(_) | Error::VerificationFailure(_) | Error::NotFound { .. } => 1,
        Error::CapExceeded { .. } | Error::EmptyDomain => 1,
        _ => 2,
    }
}

pub fn execute(cmd: &Command, seed: u64) -> Result<Outcome, Error> {
    Ok(match cmd {
        Command::Relations { inst, depth } => {
            let g = instance(inst)?;
            let rep = relations_suite(&*g, *depth)?;
            Outcome {
                command: "relations",
                config: json!({ "instance": inst, "depth": depth }),
                passed: rep.passed(),
                result: to_value(&rep),
            }
        }
        Command::Mul { inst, expr } => {
            let g = instance(inst)?;
            let alg = Algebra::new(&*g);
            let x = parse_expr(&alg, expr)?;
            Outcome {
                command: "mul",
                config: json!({ "instance": inst, "expr": expr }),
                passed: true,
                result: json!({ "rendered": alg.render(&x), "value": x }),
            }
        }
        Command::Theta { inst, expr } => {
            let g = instance(inst)?;
            let alg = Algebra::new(&*g);
            let x = parse_expr(&alg, expr)?;
            let th = alg.theta(&x);
            let spectrum: Vec<Value> = alg
                .diagonal_spectrum(&th)?
                .into_iter()
                .map(|(a, l)| json!({ "atom": a, "lambda": l }))
                .collect();
            Outcome {
                command: "theta",
                config: json!({ "instance": inst, "expr": expr }),
                passed: true,
                result: json!({
                    "rendered": alg.render(&th),
                    "theta": th,
                    "spectrum": spectrum,
                    "norm": alg.diagonal_norm(&th)?,
                }),
            }
        }
        Command::Certify { inst, expr, caps } => {
            let g = instance(inst)?;
            let alg = Algebra::new(&*g);
            let x = parse_expr(&alg, expr)?;
            let cert = certify(&alg, &x, &caps.certify_config())?;
            Outcome {
                command: "certify",
                config: json!({ "instance": inst, "expr": expr, "caps": caps }),
                passed: cert.all_verified(),
                result: to_value(&cert),
            }
        }
        Command::Ideals { inst, depth, samples } => {
            let g = instance(inst)?;
            let ore = ore_suite(&*g, *samples, seed);
            let ideals = ideals_suite(&*g, *depth);
            Outcome {
                command: "ideals",
                config: json!({ "instance": inst, "depth": depth, "samples": samples }),
                passed: ore.passed() && ideals.passed(),
                result: json!({ "ore": ore, "ideals": ideals }),
            }
        }
        Command::Ktheory { rank, torsion, samples } => {
            let grp = CoeffGroup::new(*rank, torsion.clone())?;
            let rep = six_term_summary(&grp, *samples, seed);
            Outcome {
                command: "ktheory",
                config: json!({ "rank": rank, "torsion": torsion, "samples": samples }),
                passed: rep.passed(),
                result: to_value(&rep),
            }
        }
        Command::All { depth, samples, caps } => {
            let mut passed = true;
            let mut per_instance = Vec::new();
            for id in INSTANCES {
                let g = instance_by_id(id, &[])?;
                let relations = relations_suite(&*g, *depth)?;
                let oracle = oracle_suite(&*g, *samples, seed)?;
                let normal = normal_form_suite(&*g)?;
                let theta = theta_suite(&*g, *samples, seed)?;
                let ore = ore_suite(&*g, *samples, seed);
                let ideals = ideals_suite(&*g, 3);
                let lattice = lattice_suite(&*g, (*samples / 4).max(1), seed)?;
                passed &= relations.passed()
                    && oracle.tally.passed()
                    && normal.passed()
                    && theta.passed()
                    && ore.passed()
                    && ideals.passed()
                    && lattice.passed();
                per_instance.push(json!({
                    "instance": id,
                    "relations": relations,
                    "oracle": oracle,
                    "normalForms": { "monomials": normal.monomials, "domain": normal.domain, "collisions": normal.collisions },
                    "theta": theta,
                    "ore": ore,
                    "ideals": ideals,
                    "lattice": lattice,
                }));
            }
            let certs = certificate_suite(25, seed, &caps.certify_config())?;
            let ktheory = six_term_summary(&CoeffGroup::new(1, vec![])?, 10_000, seed);
            let purity = purity_suite(8, caps.hypothesis_cap)?;
            passed &= certs.passed() && ktheory.passed() && purity.passed();
            Outcome {
                command: "all",
                config: json!({ "depth": depth, "samples": samples, "caps": caps }),
                passed,
                result: json!({
                    "instances": per_instance,
                    "certificates": certs,
                    "ktheory": ktheory,
                    "purity": purity,
                }),
            }
        }
    })
}

/// Seed resolution: `ENDOSTAR_SEED`, then `--seed`, then the built-in default.
pub fn resolve_seed(flag: Option<u64>, env: Option<&str>) -> Result<u64, Error> {
    match env {
        Some(v) => v.trim().parse().map_err(|_| Error::Config(format!("{SEED_ENV}={v:?} is not an unsigned integer"))),
        None => Ok(flag.unwrap_or(DEFAULT_SEED)),
    }
}

pub fn report(outcome: &Outcome, seed: u64) -> Value {
    let mut config = outcome.config.clone();
    if let Value::Object(m) = &mut config {
        m.insert("seed".into(), json!(seed));
    }
    json!({
        "schema": SCHEMA,
        "command": outcome.command,
        "config": config,
        "passed": outcome.passed,
        "result": outcome.result,
    })
}

fn error_report(command: Option<&'static str>, e: &Error) -> Value {
    json!({ "schema": SCHEMA, "command": command, "passed": false, "error": e.to_string() })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Relations { .. } => "relations",
        Command::Mul { .. } => "mul",
        Command::Theta { .. } => "theta",
        Command::Certify { .. } => "certify",
        Command::Ideals { .. } => "ideals",
        Command::Ktheory { .. } => "ktheory",
        Command::All { .. } => "all",
    }
}

/// Runs a full command line and returns the exit code and the text that was printed to
/// stdout (empty when the report went to a file).
pub fn run<I, T>(args: I, env_seed: Option<&str>) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 2 {
                eprint!("{text}");
                return (2, String::new());
            }
            return (0, text);
        }
    };
    let name = command_name(&cli.command);
    let seed = match resolve_seed(cli.seed, env_seed) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return (2, String::new());
        }
    };
    let (code, value) = match execute(&cli.command, seed) {
        Ok(out) => (if out.passed { 0 } else { 1 }, report(&out, seed)),
        Err(e) => {
            eprintln!("error: {e}");
            (exit_code(&e), error_report(Some(name), &e))
        }
    };
    let text = serde_json::to_string_pretty(&value).expect("report serializes") + "\n";
    match &cli.output {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => (code, String::new()),
            Err(e) => {
                eprintln!("error: cannot write {}: {e}", path.display());
                (2, String::new())
            }
        },
        None => (code, text),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_precedence() {
        assert_eq!(resolve_seed(Some(3), None).unwrap(), 3);
        assert_eq!(resolve_seed(Some(3), Some("9")).unwrap(), 9);
        assert_eq!(resolve_seed(None, None).unwrap(), DEFAULT_SEED);
        assert!(resolve_seed(None, Some("x")).is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(["endostar", "mul", "--expr", "s* s"], None).0, 0);
        assert_eq!(run(["endostar", "mul", "--expr", "s* +"], None).0, 2);
        assert_eq!(run(["endostar", "frobnicate"], None).0, 2);
        assert_eq!(run(["endostar", "certify", "--expr", "u{0:1} + u{0:-1}"], None).0, 2);
        let (code, out) = run(["endostar", "certify", "--bases", "G,Even", "--expr", "1"], None);
        assert_eq!(code, 1);
        assert!(out.contains("hypothesis violation"));
    }
}
