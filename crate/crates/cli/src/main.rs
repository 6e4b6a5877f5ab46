use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gequiv::dataset::{self, map_to_json, CsvOptions};
use gequiv::group::parse_group;
use gequiv::invariants::{evaluate_generators_with_base, independence_report};
use gequiv::{
    compute_signature, decide, reconstruct_canonical, AnyMap, BasePoints, DecideOptions, Decision, Error, FieldSpec,
    GroupSpec, Matrix, Rationals, SampleMap, ScalarField,
};

#[derive(Parser)]
#[command(name = "gequiv", version, about = "Decide G-equivalence of sampled vector-valued maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of the span of the samples.
    Rank { map: PathBuf },
    /// Coordinates of every sample in the base-point basis.
    Signature { map: PathBuf },
    /// Canonical representative with the same signature.
    Canonical { map: PathBuf },
    /// Decide whether MAP2 = g * MAP1 for some g in the group.
    Equiv { map1: PathBuf, map2: PathBuf },
    /// Print a group element mapping MAP1 onto MAP2.
    Witness { map1: PathBuf, map2: PathBuf },
    /// Values of the generating invariants.
    Invariants { map: PathBuf },
}

#[derive(Args)]
struct Opts {
    /// gl, sl, aff-gl or aff-sl.
    #[arg(long, global = true, default_value = "gl")]
    group: String,
    /// Field for CSV input: rational, prime:P or approx:EPS.
    #[arg(long, global = true)]
    field: Option<FieldSpec>,
    /// Dimension for CSV input.
    #[arg(long, global = true)]
    dim: Option<usize>,
    /// Ordered base-point keys, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    base: Option<Vec<String>>,
    /// Anchor key for affine groups.
    #[arg(long, global = true)]
    anchor: Option<String>,
    /// Cross-check decisions by exhaustive search (prime fields only).
    #[arg(long, global = true)]
    oracle: bool,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the algebraic-independence check of `invariants`.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

/// Failure modes with their exit codes.
enum Failure {
    /// 2: bad arguments or data.
    Usage(String),
    /// 3: the decision procedure and the orbit oracle disagree.
    OracleBreach(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Outcome {
    stdout: String,
    code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            eprintln!("{}", first);
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::OracleBreach(msg)) => {
            eprintln!("invariant breach: {msg}");
            ExitCode::from(3)
        }
    }
}

fn load(path: &Path, opts: &Opts) -> Result<AnyMap, Failure> {
    let csv = match (opts.field, opts.dim) {
        (Some(field), Some(n)) => Some(CsvOptions { field, n }),
        _ => None,
    };
    Ok(dataset::load_path(path, csv)?)
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let opts = &cli.opts;
    match &cli.command {
        Command::Rank { map }
        | Command::Signature { map }
        | Command::Canonical { map }
        | Command::Invariants { map } => match load(map, opts)? {
            AnyMap::Rational(m) => single(&cli.command, &m, opts),
            AnyMap::Prime(m) => single(&cli.command, &m, opts),
            AnyMap::Approx(m) => single(&cli.command, &m, opts),
        },
        Command::Equiv { map1, map2 } | Command::Witness { map1, map2 } => {
            let witness_only = matches!(cli.command, Command::Witness { .. });
            match (load(map1, opts)?, load(map2, opts)?) {
                (AnyMap::Rational(u), AnyMap::Rational(v)) => pair(&u, &v, opts, witness_only, None),
                (AnyMap::Prime(u), AnyMap::Prime(v)) => {
                    pair(&u, &v, opts, witness_only, Some(&gequiv::brute_force_equivalent))
                }
                (AnyMap::Approx(u), AnyMap::Approx(v)) => pair(&u, &v, opts, witness_only, None),
                _ => Err(Error::FieldMismatch.into()),
            }
        }
    }
}

fn group_for<F: gequiv::Field>(opts: &Opts) -> Result<GroupSpec<F>, Failure> {
    parse_group(&opts.group).ok_or_else(|| Failure::Usage(format!("unknown group {:?}", opts.group)))
}

fn base_for<F: ScalarField>(map: &SampleMap<F>, opts: &Opts) -> Result<BasePoints<F>, Failure> {
    match &opts.base {
        Some(keys) => {
            let keys = keys.iter().map(|k| map.find_key(k)).collect::<Result<Vec<_>, _>>()?;
            Ok(map.base_from_keys(&keys)?)
        }
        None => Ok(map.select_base_points()),
    }
}

fn vector<F: ScalarField>(field: &F, v: &[F::Elem]) -> String {
    let parts: Vec<String> = v.iter().map(|x| field.format(x)).collect();
    format!("[{}]", parts.join(", "))
}

fn matrix_text<F: ScalarField>(m: &Matrix<F>) -> String {
    let rows: Vec<String> = (0..m.rows()).map(|i| vector(m.field(), m.row(i))).collect();
    format!("[{}]", rows.join(", "))
}

fn single<F: ScalarField>(command: &Command, map: &SampleMap<F>, opts: &Opts) -> Result<Outcome, Failure> {
    let f = map.field();
    let mut out = String::new();
    match command {
        Command::Rank { .. } => {
            let rank = map.rank();
            if opts.json {
                writeln!(out, "{}", serde_json::json!({ "rank": rank })).unwrap();
            } else {
                writeln!(out, "{rank}").unwrap();
            }
        }
        Command::Signature { .. } => {
            let sig = compute_signature(map, &base_for(map, opts)?)?;
            if opts.json {
                writeln!(out, "{}", sig.to_json()).unwrap();
            } else {
                let base: Vec<String> = sig.base_keys.iter().map(ToString::to_string).collect();
                writeln!(out, "k = {}", sig.k).unwrap();
                writeln!(out, "base = {}", base.join(", ")).unwrap();
                for (key, alpha) in &sig.coords {
                    writeln!(out, "{key}: {}", vector(f, alpha)).unwrap();
                }
            }
        }
        Command::Canonical { .. } => {
            let group = group_for::<F>(opts)?;
            let sig = compute_signature(map, &base_for(map, opts)?)?;
            let canon = reconstruct_canonical(&sig, map.n(), &group)?;
            if opts.json {
                writeln!(out, "{}", map_to_json(&canon)).unwrap();
            } else {
                for (key, v) in canon.iter() {
                    writeln!(out, "{key}: {}", vector(f, v)).unwrap();
                }
            }
        }
        Command::Invariants { .. } => {
            let group = group_for::<F>(opts)?;
            let base = base_for(map, opts)?;
            let gens = evaluate_generators_with_base(map, &base, &group)?;
            let report = match opts.seed {
                Some(seed) => {
                    let q_group = group_for::<Rationals>(opts)?;
                    Some(independence_report(map.n(), base.len(), map.len(), &q_group, seed)?)
                }
                None => None,
            };
            if opts.json {
                let values: Vec<serde_json::Value> =
                    gens.iter().map(|(l, v)| serde_json::json!({ "label": l, "value": f.format(v) })).collect();
                let mut doc = serde_json::json!({ "generators": values });
                if let Some(r) = &report {
                    doc["independent"] = r.independent().into();
                }
                writeln!(out, "{doc}").unwrap();
            } else {
                for (label, value) in &gens {
                    writeln!(out, "{label} = {}", f.format(value)).unwrap();
                }
                if let Some(r) = &report {
                    writeln!(out, "independent = {}", r.independent()).unwrap();
                }
            }
        }
        Command::Equiv { .. } | Command::Witness { .. } => unreachable!("pair commands"),
    }
    Ok(Outcome::ok(out))
}

type OracleFn<F> = dyn Fn(&SampleMap<F>, &SampleMap<F>, &GroupSpec<F>) -> gequiv::Result<bool>;

fn pair<F: ScalarField>(
    u: &SampleMap<F>,
    v: &SampleMap<F>,
    opts: &Opts,
    witness_only: bool,
    oracle: Option<&OracleFn<F>>,
) -> Result<Outcome, Failure> {
    let group = group_for::<F>(opts)?;
    let base = match &opts.base {
        Some(keys) => Some(keys.iter().map(|k| u.find_key(k)).collect::<Result<Vec<_>, _>>()?),
        None => None,
    };
    let anchor = opts.anchor.as_deref().map(|a| u.find_key(a)).transpose()?;
    let decision = decide(u, v, &group, &DecideOptions { base, anchor })?;

    let mut oracle_line = None;
    if opts.oracle {
        let Some(oracle) = oracle else {
            return Err(Failure::Usage("--oracle needs maps over a prime field".into()));
        };
        let truth = oracle(u, v, &group)?;
        if truth != decision.equivalent {
            return Err(Failure::OracleBreach(format!(
                "decision says {}, exhaustive search says {truth}",
                decision.equivalent
            )));
        }
        oracle_line = Some(truth);
    }

    let mut out = String::new();
    if witness_only {
        if !decision.equivalent {
            return Ok(Outcome { stdout: format!("not equivalent ({})\n", decision.reason.code()), code: 1 });
        }
        if opts.json {
            let doc = decision.to_json();
            writeln!(out, "{}", doc["witness"]).unwrap();
        } else {
            write_witness(&mut out, &decision);
        }
        return Ok(Outcome::ok(out));
    }

    if opts.json {
        let mut doc = decision.to_json();
        if let Some(truth) = oracle_line {
            doc["oracle"] = truth.into();
        }
        writeln!(out, "{doc}").unwrap();
    } else {
        let verdict = if decision.equivalent { "equivalent" } else { "not equivalent" };
        writeln!(out, "{verdict} ({})", decision.reason.code()).unwrap();
        write_witness(&mut out, &decision);
        if oracle_line.is_some() {
            writeln!(out, "oracle: agrees").unwrap();
        }
    }
    Ok(Outcome { stdout: out, code: if decision.equivalent { 0 } else { 1 } })
}

fn write_witness<F: ScalarField>(out: &mut String, decision: &Decision<F>) {
    if let Some(w) = &decision.witness {
        writeln!(out, "g = {}", matrix_text(&w.g)).unwrap();
        if let Some(b) = &w.translation {
            writeln!(out, "translation = {}", vector(w.g.field(), b)).unwrap();
        }
    }
}
