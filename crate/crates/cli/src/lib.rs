//! Command-line front end. [`run`] parses an argument vector and returns the
//! JSON payload together with a status; the `sconn` binary prints it and
//! exits with [`CommandResult::exit_code`].

use std::ffi::OsString;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use sconn::connection::{make_factorized, ConditionMode, ConnectionContext};
use sconn::graphs::{
    are_independent, export_graph, prime_graph, soluble_graph, ExportFormat, GraphKind,
};
use sconn::groupio::{enumerate_subgroups, factorizations_of, load};
use sconn::liearith::{
    ack_certificate, family_primes, l1_bound, simple_group_order, substitute_certificate,
    zsigmondy, Family, LieSpec,
};
use sconn::structure::{derived_series, is_soluble, soluble_radical, RadicalMethod};
use sconn::{Budget, Error, PermGroup};

pub const SCHEMA: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Error,
    TheoremViolation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub status: Status,
    pub payload: String,
    exit: i32,
}

impl CommandResult {
    fn ok(payload: String) -> Self {
        CommandResult {
            status: Status::Ok,
            payload,
            exit: 0,
        }
    }

    /// 0 ok, 1 usage or other error, 2 resource budget, 3 theorem violation.
    pub fn exit_code(&self) -> i32 {
        self.exit
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "sconn",
    version,
    about = "Soluble connection, radicals and prime graphs of permutation groups"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Largest group order whose elements may be listed
    #[arg(long, global = true)]
    budget_order: Option<u64>,
    /// Largest number of (a, b) pair checks
    #[arg(long, global = true)]
    budget_pairs: Option<u64>,
    /// Seed for sampled checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: available parallelism)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Print bare values instead of JSON
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Facts about one group
    Group {
        #[command(subcommand)]
        what: GroupCmd,
    },
    /// Soluble radical
    Radical {
        src: String,
        /// gkps, bruteforce, auto, or both (asserts agreement)
        #[arg(long, default_value = "auto")]
        method: String,
    },
    /// Is every <a, b> soluble for a in A, b in B?
    Sconnect {
        g: String,
        #[arg(long = "a")]
        a: String,
        #[arg(long = "b")]
        b: String,
        /// full or prime-pairs
        #[arg(long, default_value = "full")]
        mode: String,
    },
    /// All three connection conditions for G = AB
    Maintheorem {
        g: String,
        #[arg(long = "a")]
        a: String,
        #[arg(long = "b")]
        b: String,
    },
    /// Prime graph or soluble graph
    Graph {
        kind: String,
        src: String,
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Are p and q independent (no soluble subgroup of order divisible by pq)?
    Independent { src: String, p: u64, q: u64 },
    /// Smallest primitive prime divisor of p^k - 1
    Zsigmondy { p: u64, k: u64 },
    /// |N| and |Out N| of a classical simple group
    Lieorder { family: String, dim: u64, q: u64 },
    /// Family primes r, s, t
    Lieprimes { family: String, dim: u64, q: u64 },
    /// Guaranteed p-part of |A ∩ N|
    L1check {
        p: u64,
        n_order: String,
        bcap_order: String,
        out_order: String,
    },
    /// Independence certificate for (r, s)
    Ackcert {
        family: String,
        dim: u64,
        q: u64,
        r: String,
        s: String,
        /// Use the element-order certificate for substituted primes (linear family)
        #[arg(long)]
        substitute: bool,
    },
    /// Every factorization G = AB from the subgroup lattice
    Factorizations {
        src: String,
        #[arg(long)]
        check_maintheorem: bool,
    },
}

#[derive(Subcommand, Debug)]
enum GroupCmd {
    /// Order, degree, solubility, derived length, radical order
    Info { src: String },
}

struct Ctx {
    budget: Budget,
    seed: u64,
    quiet: bool,
}

enum Failure {
    Core(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Out = std::result::Result<(Value, String), Failure>;

/// Runs one command. `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return CommandResult::ok(e.to_string());
            }
            return error_result(&Failure::Usage(e.to_string()), "arguments");
        }
    };
    let mut budget = Budget::default();
    if let Some(n) = cli.global.budget_order {
        budget.max_enumeration_order = n;
        budget.max_subgroup_order = budget.max_subgroup_order.min(n);
    }
    if let Some(n) = cli.global.budget_pairs {
        budget.max_pair_checks = n;
    }
    let ctx = Ctx {
        budget,
        seed: cli.global.seed,
        quiet: cli.global.quiet,
    };
    let name = command_name(&cli.command);
    let outcome = match cli.global.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
        {
            Ok(pool) => pool.install(|| dispatch(&ctx, cli.command)),
            Err(e) => Err(Failure::Usage(e.to_string())),
        },
        None => dispatch(&ctx, cli.command),
    };
    match outcome {
        Ok((mut value, plain)) => {
            if ctx.quiet {
                return CommandResult::ok(plain);
            }
            if let Value::String(text) = value {
                return CommandResult::ok(text);
            }
            if let Value::Object(map) = &mut value {
                map.insert("schema".into(), json!(SCHEMA));
            }
            CommandResult::ok(value.to_string())
        }
        Err(f) => error_result(&f, name),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Group { .. } => "group info",
        Command::Radical { .. } => "radical",
        Command::Sconnect { .. } => "sconnect",
        Command::Maintheorem { .. } => "maintheorem",
        Command::Graph { .. } => "graph",
        Command::Independent { .. } => "independent",
        Command::Zsigmondy { .. } => "zsigmondy",
        Command::Lieorder { .. } => "lieorder",
        Command::Lieprimes { .. } => "lieprimes",
        Command::L1check { .. } => "l1check",
        Command::Ackcert { .. } => "ackcert",
        Command::Factorizations { .. } => "factorizations",
    }
}

fn error_result(f: &Failure, command: &str) -> CommandResult {
    let (code, message, status, exit) = match f {
        Failure::Usage(m) => ("usage", m.clone(), Status::Error, 1),
        Failure::Core(e @ Error::TheoremViolation(_)) => {
            (e.code(), e.to_string(), Status::TheoremViolation, 3)
        }
        Failure::Core(e @ Error::Budget { .. }) => (e.code(), e.to_string(), Status::Error, 2),
        Failure::Core(e) => (e.code(), e.to_string(), Status::Error, 1),
    };
    let payload = json!({
        "schema": SCHEMA,
        "error": { "code": code, "message": message, "context": { "command": command } },
    });
    CommandResult {
        status,
        payload: payload.to_string(),
        exit,
    }
}

fn big(n: &BigUint) -> Value {
    match u64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

fn parse_big(s: &str, what: &str) -> std::result::Result<BigUint, Failure> {
    BigUint::from_str(s).map_err(|_| {
        Failure::Usage(format!(
            "{what}: expected a non-negative integer, got {s:?}"
        ))
    })
}

fn parse_arg<T: FromStr<Err = Error>>(s: &str) -> std::result::Result<T, Failure> {
    T::from_str(s).map_err(Failure::Core)
}

fn cycles(g: &PermGroup) -> Vec<String> {
    g.generators()
        .iter()
        .map(|x| x.to_cycle_string(1, ","))
        .collect()
}

fn dispatch(ctx: &Ctx, command: Command) -> Out {
    let b = &ctx.budget;
    match command {
        Command::Group {
            what: GroupCmd::Info { src },
        } => {
            let g = load(&src, b)?;
            let series = derived_series(&g);
            // The radical needs element enumeration; report the budget miss instead of failing.
            let (radical, radical_note) = if is_soluble(&g) {
                (Some(big(g.order())), None)
            } else {
                match soluble_radical(&g, RadicalMethod::Auto, b) {
                    Ok(r) => (Some(big(r.order())), None),
                    Err(e @ Error::Budget { .. }) => (None, Some(e.to_string())),
                    Err(e) => return Err(e.into()),
                }
            };
            let plain = g.order().to_string();
            Ok((
                json!({
                    "group": src,
                    "order": big(g.order()),
                    "degree": g.degree(),
                    "soluble": is_soluble(&g),
                    "derived_length": series.derived_length(),
                    "derived_series_orders": series.orders().iter().map(big).collect::<Vec<_>>(),
                    "radical_order": radical,
                    "radical_note": radical_note,
                }),
                plain,
            ))
        }
        Command::Radical { src, method } => {
            let g = load(&src, b)?;
            let radical = if method == "both" {
                let x = soluble_radical(&g, RadicalMethod::Gkps, b)?;
                let y = soluble_radical(&g, RadicalMethod::BruteForce, b)?;
                if !x.same_group(&y) {
                    return Err(Error::TheoremViolation(format!(
                        "radical methods disagree: gkps order {}, bruteforce order {}",
                        x.order(),
                        y.order()
                    ))
                    .into());
                }
                x
            } else {
                soluble_radical(&g, parse_arg(&method)?, b)?
            };
            Ok((
                json!({ "group": src, "method": method, "order": big(radical.order()), "generators": cycles(&radical) }),
                radical.order().to_string(),
            ))
        }
        Command::Sconnect {
            g,
            a,
            b: bsrc,
            mode,
        } => {
            let mode: ConditionMode = parse_arg(&mode)?;
            let (gg, aa, bb) = (load(&g, b)?, load(&a, b)?, load(&bsrc, b)?);
            let f = make_factorized(&gg, &aa, &bb, b)?;
            let outcome = ConnectionContext::new(&gg, b)?.check_condition(&f, mode)?;
            Ok((
                json!({ "connected": outcome.holds, "mode": mode, "witness": witness_json(&outcome.witness) }),
                outcome.holds.to_string(),
            ))
        }
        Command::Maintheorem { g, a, b: bsrc } => {
            let (gg, aa, bb) = (load(&g, b)?, load(&a, b)?, load(&bsrc, b)?);
            let f = make_factorized(&gg, &aa, &bb, b)?;
            let r = ConnectionContext::new(&gg, b)?.verify_main_theorem(&f)?;
            Ok((
                json!({
                    "c1": r.condition1,
                    "c2": r.condition2,
                    "c3": r.condition3,
                    "witness": witness_json(&r.witness),
                    "radical_order": big(&r.radical_order),
                }),
                format!("{} {} {}", r.condition1, r.condition2, r.condition3),
            ))
        }
        Command::Graph {
            kind,
            src,
            format,
            out,
        } => {
            let kind: GraphKind = parse_arg(&kind)?;
            let format: ExportFormat = parse_arg(&format)?;
            let g = load(&src, b)?;
            let label = src.strip_prefix("builtin:").unwrap_or(&src);
            let graph = match kind {
                GraphKind::Prime => prime_graph(&g, label, b)?,
                GraphKind::Soluble => soluble_graph(&g, label, b)?,
            };
            let text = export_graph(&graph, format);
            if let Some(path) = out {
                std::fs::write(&path, &text).map_err(|e| Error::Io(format!("{path}: {e}")))?;
                return Ok((json!({ "written": path, "edges": graph.edges.len() }), path));
            }
            match format {
                ExportFormat::Json => {
                    let v: Value = serde_json::from_str(&text).expect("graph JSON");
                    Ok((v, text))
                }
                // DOT is emitted verbatim.
                ExportFormat::Dot => Ok((Value::String(text.clone()), text)),
            }
        }
        Command::Independent { src, p, q } => {
            let g = load(&src, b)?;
            let ind = are_independent(&g, p, q, b)?;
            Ok((
                json!({ "group": src, "p": p, "q": q, "independent": ind }),
                ind.to_string(),
            ))
        }
        Command::Zsigmondy { p, k } => {
            let r = zsigmondy(p, k, b)?;
            let plain = r.as_ref().map_or("none".to_string(), |r| r.to_string());
            let v = match &r {
                Some(r) => json!({ "p": p, "k": k, "prime": big(r), "exception": null }),
                None => json!({ "p": p, "k": k, "prime": null, "exception": "zsigmondy" }),
            };
            Ok((v, plain))
        }
        Command::Lieorder { family, dim, q } => {
            let spec = LieSpec::new(parse_arg::<Family>(&family)?, dim, q)?;
            let (n, out) = simple_group_order(&spec);
            Ok((
                json!({ "group": spec.to_string(), "order": big(&n), "out_order": out }),
                format!("{n} {out}"),
            ))
        }
        Command::Lieprimes { family, dim, q } => {
            let spec = LieSpec::new(parse_arg::<Family>(&family)?, dim, q)?;
            let fp = family_primes(&spec, b)?;
            let exps = spec.prime_exponents();
            let slot = |x: &Option<BigUint>| x.as_ref().map_or(Value::Null, big);
            let word = |x: &Option<BigUint>| x.as_ref().map_or("-".to_string(), |v| v.to_string());
            Ok((
                json!({
                    "group": spec.to_string(),
                    "r": slot(&fp.r), "s": slot(&fp.s), "t": slot(&fp.t),
                    "exponents": { "r": exps[0], "s": exps[1], "t": exps[2] },
                }),
                format!("{} {} {}", word(&fp.r), word(&fp.s), word(&fp.t)),
            ))
        }
        Command::L1check {
            p,
            n_order,
            bcap_order,
            out_order,
        } => {
            let bound = l1_bound(
                p,
                &parse_big(&n_order, "N-order")?,
                &parse_big(&bcap_order, "Bcap-order")?,
                &parse_big(&out_order, "Out-order")?,
            )?;
            let plain = bound.guaranteed_exp.to_string();
            Ok((serde_json::to_value(&bound).expect("serializable"), plain))
        }
        Command::Ackcert {
            family,
            dim,
            q,
            r,
            s,
            substitute,
        } => {
            let spec = LieSpec::new(parse_arg::<Family>(&family)?, dim, q)?;
            if substitute {
                let r: u64 = r
                    .parse()
                    .map_err(|_| Failure::Usage(format!("r: expected an integer, got {r:?}")))?;
                let s: u64 = s
                    .parse()
                    .map_err(|_| Failure::Usage(format!("s: expected an integer, got {s:?}")))?;
                let cert = substitute_certificate(&spec, r, s)?;
                let plain = cert.certified.to_string();
                return Ok((serde_json::to_value(&cert).expect("serializable"), plain));
            }
            let cert = ack_certificate(&spec, &parse_big(&r, "r")?, &parse_big(&s, "s")?, b)?;
            let plain = cert.certified.to_string();
            Ok((serde_json::to_value(&cert).expect("serializable"), plain))
        }
        Command::Factorizations {
            src,
            check_maintheorem,
        } => factorizations(ctx, &src, check_maintheorem),
    }
}

fn witness_json(w: &Option<sconn::connection::Witness>) -> Value {
    match w {
        Some(w) => json!({ "a": w.a.to_cycle_string(1, ","), "b": w.b.to_cycle_string(1, ",") }),
        None => Value::Null,
    }
}

fn factorizations(ctx: &Ctx, src: &str, check: bool) -> Out {
    let b = &ctx.budget;
    let g = load(src, b)?;
    let catalog = enumerate_subgroups(&g, b)?;
    let facts = factorizations_of(&g, &catalog);
    let conn = if check {
        Some(ConnectionContext::new(&g, b)?)
    } else {
        None
    };
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut rows = Vec::with_capacity(facts.len());
    let mut connected_nontrivial = 0;
    for f in &facts {
        let mut row = json!({
            "a_order": big(f.a.order()),
            "b_order": big(f.b.order()),
            "intersection_order": f.intersection_order,
            "a_generators": cycles(&f.a),
            "b_generators": cycles(&f.b),
        });
        if let Some(conn) = &conn {
            let r = conn.verify_main_theorem(f)?;
            let x = g.random_element(&mut rng);
            let y = g.random_element(&mut rng);
            let kept = conn.verify_conjugation_lemma(f, &x, &y)?;
            if !kept {
                return Err(Error::TheoremViolation(
                    "conjugated factorization changed the prime-pair condition".into(),
                )
                .into());
            }
            if r.condition2 && !f.a.is_trivial() && !f.b.is_trivial() {
                connected_nontrivial += 1;
            }
            row["c1"] = json!(r.condition1);
            row["c2"] = json!(r.condition2);
            row["c3"] = json!(r.condition3);
            row["conjugation_checked"] = json!(true);
        }
        rows.push(row);
    }
    let mut v = json!({
        "group": src,
        "order": big(g.order()),
        "subgroups": catalog.len(),
        "count": facts.len(),
        "factorizations": rows,
    });
    if check {
        v["violations"] = json!(0);
        v["prime_pair_connected_with_both_nontrivial"] = json!(connected_nontrivial);
    }
    let plain = facts.len().to_string();
    Ok((v, plain))
}
