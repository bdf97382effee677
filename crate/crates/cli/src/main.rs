use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use ecic::bounds::{bound_report, nq_kd, outer_code, NqMode};
use ecic::colsearch::SearchLimits;
use ecic::decoder::{parse_received_word, Decoder};
use ecic::ecic::{
    construct_concat, construct_lift, construct_random, max_delta, min_rank, search_min_length, verify_with,
    CertificateEnvelope, LiftBasis, SearchStatus, VerifyCaps, VerifyMethod, DEFAULT_MINRANK_NODES,
};
use ecic::galois::{matrix_from_text, matrix_to_text, FieldSpec, FqMatrix};
use ecic::harness::{exhaustive_campaign, trial_campaign, ErrorModel};
use ecic::instance::{generalized_independence_number, IcsiInstance, InstanceFile, DEFAULT_ALPHA_CAP};
use ecic::static_ecic::{
    gv_greedy, static_bounds, verify_rho_delta, weak_resilience_check, GreedyOrder, DEFAULT_STATIC_CAP,
};
use ecic::Error;

mod render;

#[derive(Parser)]
#[command(name = "ecic", version, about = "Error-correcting index codes over finite fields")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Node budget for exhaustive searches.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Span,
    Enumerate,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Table,
    Search,
    Auto,
}

#[derive(Args)]
struct InstanceArg {
    /// Instance file (JSON).
    #[arg(long)]
    instance: PathBuf,
    /// Field order, when the instance file names none.
    #[arg(long)]
    q: Option<u32>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check that a matrix corrects delta errors for an instance.
    Verify {
        #[command(flatten)]
        inst: InstanceArg,
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        delta: usize,
        #[arg(long, value_enum)]
        method: Option<Method>,
    },
    /// Generalized independence number.
    Alpha {
        #[command(flatten)]
        inst: InstanceArg,
    },
    /// Exact min-rank and an optimal error-free index code.
    Minrank {
        #[command(flatten)]
        inst: InstanceArg,
    },
    /// All length bounds for an instance.
    Bounds {
        #[command(flatten)]
        inst: InstanceArg,
        #[arg(long, default_value_t = 0)]
        delta: usize,
    },
    /// Build an error-correcting index code.
    Construct {
        #[command(subcommand)]
        how: Construct,
    },
    /// Decode one received word.
    Decode {
        #[command(flatten)]
        inst: InstanceArg,
        #[arg(long)]
        matrix: PathBuf,
        /// Receiver (1-based); must match the received-word header.
        #[arg(long)]
        receiver: usize,
        #[arg(long)]
        received: PathBuf,
        /// Decoding radius (default: the largest the matrix supports).
        #[arg(long)]
        delta: Option<usize>,
    },
    /// Random broadcast trials.
    Simulate {
        #[command(flatten)]
        inst: InstanceArg,
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        delta: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Inject errors of exactly this weight instead of up to delta.
        #[arg(long)]
        exact_weight: Option<usize>,
        /// Enumerate every message and error instead of sampling.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Static codes for all instances with at most rho missing messages per receiver.
    Static {
        #[command(subcommand)]
        what: Static,
    },
    /// Shortest length of a linear [N, k, d]_q code.
    Nqkd {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
    },
}

#[derive(Args)]
struct ConstructCommon {
    #[command(flatten)]
    inst: InstanceArg,
    #[arg(long)]
    delta: usize,
    /// Write the matrix here and its JSON envelope next to it.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Construct {
    /// Optimal error-free code followed by an outer code.
    Concat {
        #[command(flatten)]
        common: ConstructCommon,
        /// Outer generator (default: MDS or searched optimal code).
        #[arg(long)]
        outer: Option<PathBuf>,
    },
    /// Lifting basis followed by an outer code.
    Lift {
        #[command(flatten)]
        common: ConstructCommon,
        /// Basis matrix (default: searched with alpha columns).
        #[arg(long)]
        basis: Option<PathBuf>,
        #[arg(long)]
        outer: Option<PathBuf>,
    },
    /// Random matrices until one verifies.
    Random {
        #[command(flatten)]
        common: ConstructCommon,
        #[arg(long)]
        length: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        attempts: u64,
    },
    /// Exhaustive minimum-length search.
    Search {
        #[command(flatten)]
        common: ConstructCommon,
        #[arg(long, default_value_t = 12)]
        max_n: usize,
    },
}

#[derive(Subcommand)]
enum Static {
    /// Check the (rho, delta)-property.
    Verify {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        rho: usize,
        #[arg(long)]
        delta: usize,
    },
    /// Bounds on the shortest static code.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rho: usize,
        #[arg(long)]
        delta: usize,
        #[arg(long, default_value_t = 2)]
        q: u32,
    },
    /// Greedy construction.
    Construct {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rho: usize,
        #[arg(long)]
        delta: usize,
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long)]
        length: usize,
        /// Shuffle candidates with this seed instead of lexicographic order.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Check weak resilience of the binary map x -> L x^T.
    Resilience {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        rho: usize,
        #[arg(long)]
        t: usize,
    },
}

/// What a command produced and how the process should exit.
struct Outcome {
    json: serde_json::Value,
    text: String,
    code: u8,
}

impl Outcome {
    fn new(json: serde_json::Value, text: String, holds: bool) -> Self {
        Outcome { json, text, code: if holds { 0 } else { 1 } }
    }

    fn uncertified(mut self, flag: bool) -> Self {
        if flag && self.code == 0 {
            self.code = 3;
        }
        self
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_matrix(path: &Path) -> anyhow::Result<FqMatrix> {
    matrix_from_text(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_instance(arg: &InstanceArg) -> anyhow::Result<(IcsiInstance, InstanceFile, Option<FieldSpec>)> {
    let file =
        InstanceFile::parse(&read(&arg.instance)?).with_context(|| format!("parsing {}", arg.instance.display()))?;
    let inst = file.instance()?;
    let field = match (file.field()?, arg.q) {
        (Some(f), Some(q)) if f.order() != q => {
            bail!(Error::Field(format!("--q {q} disagrees with the instance file")))
        }
        (Some(f), _) => Some(f),
        (None, Some(q)) => Some(FieldSpec::from_order(q)?),
        (None, None) => None,
    };
    Ok((inst, file, field))
}

fn field_or_binary(field: Option<FieldSpec>) -> FieldSpec {
    field.unwrap_or_else(FieldSpec::gf2)
}

fn check_field(field: &Option<FieldSpec>, m: &FqMatrix) -> anyhow::Result<()> {
    if let Some(f) = field {
        if f.order() != m.field().order() {
            bail!(Error::Field(format!("matrix is over F_{}, instance over F_{}", m.field().order(), f.order())));
        }
    }
    Ok(())
}

fn write_certificate(out: &Path, m: &FqMatrix, env: &CertificateEnvelope) -> anyhow::Result<()> {
    std::fs::write(out, matrix_to_text(m)).with_context(|| format!("writing {}", out.display()))?;
    let mut env_path = out.as_os_str().to_owned();
    env_path.push(".json");
    std::fs::write(&env_path, serde_json::to_string_pretty(env)?).context("writing certificate envelope")?;
    Ok(())
}

fn certificate_outcome(
    common: &ConstructCommon,
    file: &InstanceFile,
    m: &FqMatrix,
    certified: bool,
    method: &str,
    extra: serde_json::Value,
) -> anyhow::Result<Outcome> {
    let env = CertificateEnvelope {
        instance_hash: file.hash(),
        delta: common.delta,
        n: m.cols(),
        certified,
        method: method.into(),
    };
    if let Some(out) = &common.out {
        write_certificate(out, m, &env)?;
    }
    let text = format!("{}{}", render::envelope(&env), matrix_to_text(m));
    let json = json!({ "envelope": env, "matrix": m.row_vecs(), "details": extra });
    Ok(Outcome::new(json, text, true).uncertified(!certified))
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let mut limits = SearchLimits { workers: cli.workers, ..Default::default() };
    if let Some(b) = cli.budget {
        limits.node_budget = b;
    }
    let node_cap = cli.budget.unwrap_or(DEFAULT_MINRANK_NODES);
    match &cli.cmd {
        Cmd::Verify { inst, matrix, delta, method } => {
            let (inst, _, field) = load_instance(inst)?;
            let l = load_matrix(matrix)?;
            check_field(&field, &l)?;
            let method = method.map(|m| match m {
                Method::Span => VerifyMethod::SpanDistance,
                Method::Enumerate => VerifyMethod::Enumeration,
            });
            let r = verify_with(&inst, &l, *delta, method, VerifyCaps::default())?;
            Ok(Outcome::new(serde_json::to_value(&r)?, render::verification(&r), r.ok))
        }
        Cmd::Alpha { inst } => {
            let (inst, _, _) = load_instance(inst)?;
            let (a, w) = generalized_independence_number(&inst, DEFAULT_ALPHA_CAP)?;
            let witness: Vec<usize> = w.iter().map(|j| j + 1).collect();
            Ok(Outcome::new(
                json!({ "alpha": a, "witness": witness }),
                format!("alpha = {a}\nwitness = {witness:?}\n"),
                true,
            ))
        }
        Cmd::Minrank { inst } => {
            let (inst, _, field) = load_instance(inst)?;
            let w = min_rank(&inst, &field_or_binary(field), node_cap)?;
            Ok(Outcome::new(w.to_json(), render::min_rank(&w), true).uncertified(!w.certified))
        }
        Cmd::Bounds { inst, delta } => {
            let (inst, _, field) = load_instance(inst)?;
            let r = bound_report(&inst, &field_or_binary(field), *delta, &limits);
            let complete = r.kappa_certified && r.alpha.is_some();
            Ok(Outcome::new(serde_json::to_value(&r)?, render::bounds(&r), true).uncertified(!complete))
        }
        Cmd::Construct { how } => construct(how, &limits, node_cap),
        Cmd::Decode { inst, matrix, receiver, received, delta } => {
            let (inst, _, field) = load_instance(inst)?;
            let l = load_matrix(matrix)?;
            check_field(&field, &l)?;
            let word = parse_received_word(&read(received)?, &inst)?;
            if word.view.i + 1 != *receiver {
                bail!(Error::InvalidArgument(format!(
                    "--receiver {receiver} but the received word is for receiver {}",
                    word.view.i + 1
                )));
            }
            if word.q != l.field().order() || word.view.y.len() != l.cols() {
                bail!(Error::Dimension("received word does not match the matrix".into()));
            }
            let delta = match delta {
                Some(d) => *d,
                None => max_delta(&inst, &l)?.ok_or(Error::NotIndexCode { receiver: 0 })?,
            };
            let r = Decoder::new(&inst, &l, delta)?.decode(&word.view)?;
            let text = format!("x_hat = {}\ne_hat = {:?}\nsyndrome = {:?}\n", r.x_hat, r.e_hat, r.syndrome);
            Ok(Outcome::new(serde_json::to_value(&r)?, text, true))
        }
        Cmd::Simulate { inst, matrix, delta, trials, seed, exact_weight, exhaustive } => {
            let (inst, _, field) = load_instance(inst)?;
            let l = load_matrix(matrix)?;
            check_field(&field, &l)?;
            let dec = Decoder::new(&inst, &l, *delta)?;
            let model = exact_weight.map_or(ErrorModel::UpTo(*delta), ErrorModel::Exactly);
            let stats = if *exhaustive {
                exhaustive_campaign(&dec, model, 1 << 26)?
            } else {
                trial_campaign(&dec, *trials, *seed, model, &limits)?
            };
            let holds = stats.successes == stats.trials;
            Ok(Outcome::new(serde_json::to_value(&stats)?, render::campaign(&stats), holds))
        }
        Cmd::Static { what } => static_cmd(what, &limits),
        Cmd::Nqkd { q, k, d, mode } => {
            let mode = match mode {
                Mode::Table => NqMode::Table,
                Mode::Search => NqMode::Search,
                Mode::Auto => NqMode::Auto,
            };
            let e = nq_kd(*q, *k, *d, mode, &limits)?;
            let mut json = serde_json::to_value(&e)?;
            if let Some(g) = &e.generator {
                json["generator"] = json!(g.row_vecs());
            }
            Ok(Outcome::new(json, render::code_entry(&e), true).uncertified(e.n.is_none()))
        }
    }
}

fn construct(how: &Construct, limits: &SearchLimits, node_cap: u64) -> anyhow::Result<Outcome> {
    match how {
        Construct::Concat { common, outer } => {
            let (inst, file, field) = load_instance(&common.inst)?;
            let field = field_or_binary(field);
            let outer = match outer {
                Some(p) => load_matrix(p)?,
                None => {
                    let k = min_rank(&inst, &field, node_cap)?.kappa;
                    outer_code(&field, k, 2 * common.delta + 1, limits)?
                }
            };
            let c = construct_concat(&inst, &field, common.delta, &outer)?;
            certificate_outcome(common, &file, &c.matrix, true, "concat", serde_json::to_value(&c.report)?)
        }
        Construct::Lift { common, basis, outer } => {
            let (inst, file, field) = load_instance(&common.inst)?;
            let field = field_or_binary(field);
            let basis = match basis {
                Some(p) => LiftBasis::new(load_matrix(p)?),
                None => {
                    let (a, _) = generalized_independence_number(&inst, DEFAULT_ALPHA_CAP)?;
                    LiftBasis::search(&inst, &field, a, limits)?
                        .ok_or_else(|| Error::ConditionViolated(format!("no lifting basis with {a} columns exists")))?
                }
            };
            let outer = match outer {
                Some(p) => load_matrix(p)?,
                None => outer_code(&field, basis.b.cols(), 2 * common.delta + 1, limits)?,
            };
            let c = construct_lift(&inst, &basis, common.delta, &outer)?;
            certificate_outcome(common, &file, &c.matrix, true, "lift", serde_json::to_value(&c.report)?)
        }
        Construct::Random { common, length, seed, attempts } => {
            let (inst, file, field) = load_instance(&common.inst)?;
            let r = construct_random(&inst, &field_or_binary(field), common.delta, *length, *seed, *attempts)?;
            match &r.matrix {
                Some(m) => certificate_outcome(common, &file, m, true, "random", serde_json::to_value(&r)?),
                None => Ok(Outcome::new(serde_json::to_value(&r)?, render::random_failure(&r), false)),
            }
        }
        Construct::Search { common, max_n } => {
            let (inst, file, field) = load_instance(&common.inst)?;
            let r = search_min_length(&inst, &field_or_binary(field), common.delta, *max_n, limits)?;
            let details = json!({ "status": r.status, "refuted": r.refuted, "lower": r.lower });
            match (&r.status, &r.certificate) {
                (SearchStatus::Optimal, Some(m)) => certificate_outcome(common, &file, m, true, "search", details),
                (SearchStatus::ExceedsMax, _) => {
                    Ok(Outcome::new(details, format!("no code of length <= {max_n} exists\n"), false))
                }
                _ => Ok(Outcome {
                    json: details,
                    text: format!("budget exceeded; every length below {} is refuted\n", r.lower),
                    code: 3,
                }),
            }
        }
    }
}

fn static_cmd(what: &Static, limits: &SearchLimits) -> anyhow::Result<Outcome> {
    match what {
        Static::Verify { matrix, rho, delta } => {
            let l = load_matrix(matrix)?;
            let r = verify_rho_delta(&l, *rho, *delta, DEFAULT_STATIC_CAP)?;
            let text = match &r.witness {
                None => format!("ok: min weight {}\n", r.min_weight),
                Some(z) => format!("fails: combination {z:?} has weight {}\n", r.min_weight),
            };
            Ok(Outcome::new(serde_json::to_value(&r)?, text, r.ok))
        }
        Static::Bounds { n, rho, delta, q } => {
            let r = static_bounds(*n, *rho, *delta, *q, limits)?;
            let complete = r.rho_star.value.is_some();
            Ok(Outcome::new(serde_json::to_value(&r)?, render::static_report(&r), true).uncertified(!complete))
        }
        Static::Construct { n, rho, delta, q, length, seed } => {
            let order = seed.map_or(GreedyOrder::Lexicographic, GreedyOrder::Seeded);
            let g = gv_greedy(*n, *rho, *delta, *q, *length, order)?;
            let json = json!({
                "rows": g.rows,
                "complete": g.matrix.is_some(),
                "condition_holds": g.condition_holds,
            });
            match &g.matrix {
                Some(m) => {
                    let ok = verify_rho_delta(m, *rho, *delta, DEFAULT_STATIC_CAP)?.ok;
                    Ok(Outcome::new(json, matrix_to_text(m), ok))
                }
                None => Ok(Outcome::new(json, format!("dead end after {} of {n} rows\n", g.rows.len()), false)),
            }
        }
        Static::Resilience { matrix, rho, t } => {
            let l = load_matrix(matrix)?;
            let ok = weak_resilience_check(&l, *rho, *t, DEFAULT_STATIC_CAP)?;
            let text = format!("{}-weakly {}-resilient: {}\n", rho, t, if ok { "yes" } else { "no" });
            Ok(Outcome::new(json!({ "resilient": ok }), text, ok))
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::BudgetExceeded { .. }) => 3,
        Some(Error::TooManyErrors { .. } | Error::NotIndexCode { .. } | Error::ConditionViolated(_)) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("json")),
                Format::Text => print!("{}", out.text),
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            let code = exit_code(&e);
            match cli.format {
                Format::Json => println!("{}", json!({ "error": format!("{e:#}"), "exit_code": code })),
                Format::Text => eprintln!("error: {e:#}"),
            }
            ExitCode::from(code)
        }
    }
}
