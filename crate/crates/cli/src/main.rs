mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use diamond_core::constructions::{delete_vertices, extend_to_conference, paley_tournament, star_paley};
use diamond_core::formats::{read_hyp, read_trn, write_hyp, write_trn};
use diamond_core::hypergraph::{
    baber, delete_vertices_count, edge_count_bound, is_ff4_design, min_sum_squares, triple_profile,
    verify_ff4, Ff4Check, Hypergraph4,
};
use diamond_core::search::{
    exhaustive_max_diamonds, local_search_max_diamonds, tournament_from_code, verify_five_vertex_law,
    ExhaustiveOptions, LocalSearchParams, SearchMode, SearchResult,
};
use diamond_core::spectral::{
    char_poly, count_diamonds_spectral, diamond_upper_bound, extremal_charpoly, is_skew_conference,
    matches_extremal_charpoly, sigma_from_traces, Extremal, SeidelMatrix,
};
use diamond_core::{Error, Tournament};
use num_rational::Rational64;
use serde_json::{json, Value};

use report::{Inputs, Status};

/// Diamond counting, extremal constructions and verification for tournaments.
#[derive(Parser)]
#[command(name = "diamonds", version)]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    report: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a Paley tournament T(q) or its augmentation T*(q).
    Construct(ConstructArgs),
    /// Count diamonds in a .trn tournament.
    Count {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Check a .hyp hypergraph (ff4, design) or a .trn tournament (conference, extremal-charpoly).
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        /// Comma-separated checks; defaults to every check that applies.
        #[arg(long, value_enum, value_delimiter = ',')]
        checks: Vec<Check>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Diamond hypergraph of a tournament.
    Baber {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Delete vertices from a .trn tournament or a .hyp hypergraph.
    Delete {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        vertices: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Border an odd-extremal tournament into a skew-conference one.
    Extend {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for diamond-maximal tournaments.
    #[command(subcommand)]
    Search(SearchCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Paley,
    StarPaley,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(value_enum)]
    family: Family,
    /// Field size, a prime power congruent to 3 mod 4.
    #[arg(long, conflicts_with_all = ["p", "k"], required_unless_present = "p")]
    q: Option<u64>,
    #[arg(long, requires = "k")]
    p: Option<u64>,
    #[arg(long, requires = "p")]
    k: Option<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Naive,
    Spectral,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    Ff4,
    Design,
    Conference,
    ExtremalCharpoly,
}

#[derive(Subcommand)]
enum SearchCommand {
    /// Scan every labelled tournament of order n.
    Exhaustive {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Scan all encodings instead of fixing vertex 0's out-set.
        #[arg(long)]
        no_prune: bool,
        /// Allow orders that take minutes.
        #[arg(long)]
        long_run: bool,
    },
    /// Simulated annealing over arc flips.
    Local {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        restarts: u32,
        #[arg(long, default_value_t = 20_000)]
        steps: u64,
        #[arg(long, default_value_t = 2.0)]
        t0: f64,
        #[arg(long, default_value_t = 0.9995)]
        cooling: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Check that every 5-tournament has 0 or 2 diamonds.
    FiveLaw,
}

/// A failure that ends the command with exit status 2.
struct Failure {
    message: String,
    detail: Value,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let detail = match &e {
            Error::Parse { line, column, .. } => json!({ "line": line, "column": column }),
            _ => Value::Null,
        };
        Failure { message: e.to_string(), detail }
    }
}

fn fail<T>(message: impl Into<String>) -> Result<T, Failure> {
    Err(Failure { message: message.into(), detail: Value::Null })
}

type Outcome = Result<(Value, Status), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let args: Vec<String> = std::env::args().skip(1).collect();
    let mut inputs = Inputs::new(&args);
    let name = command_name(&cli.command);

    let (results, status) = match run(cli.command, &mut inputs) {
        Ok(r) => r,
        Err(f) => {
            eprintln!("error: {}", f.message);
            (json!({ "error": f.message, "detail": f.detail }), Status::Error)
        }
    };
    let text = report::render(name, inputs, results, status);
    match &cli.report {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("error: cannot write report {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(status.exit_code())
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Construct(_) => "construct",
        Command::Count { .. } => "count",
        Command::Verify { .. } => "verify",
        Command::Baber { .. } => "baber",
        Command::Delete { .. } => "delete",
        Command::Extend { .. } => "extend",
        Command::Search(SearchCommand::Exhaustive { .. }) => "search exhaustive",
        Command::Search(SearchCommand::Local { .. }) => "search local",
        Command::Search(SearchCommand::FiveLaw) => "search five-law",
    }
}

fn run(command: Command, inputs: &mut Inputs) -> Outcome {
    match command {
        Command::Construct(a) => construct(a),
        Command::Count { input, method } => count(&load_trn(&input, inputs)?, method),
        Command::Verify { input, checks, threads } => match load(&input, inputs)? {
            Loaded::Trn(t) => verify_tournament(&t, &checks),
            Loaded::Hyp(h) => verify_hypergraph(&h, &checks, threads),
        },
        Command::Baber { input, out } => {
            let t = load_trn(&input, inputs)?;
            let h = baber(&t);
            let mut res = json!({ "n": h.order(), "m": h.edge_count() });
            emit(&mut res, out.as_deref(), &write_hyp(&h))?;
            Ok((res, Status::Ok))
        }
        Command::Delete { input, vertices, out } => match load(&input, inputs)? {
            Loaded::Trn(t) => {
                let d = delete_vertices(&t, &vertices)?;
                let mut res = json!({
                    "n_in": t.order(),
                    "n_out": d.order(),
                    "deleted": vertices,
                    "diamonds": d.count_diamonds_naive(),
                });
                emit(&mut res, out.as_deref(), &write_trn(&d))?;
                Ok((res, Status::Ok))
            }
            Loaded::Hyp(h) => {
                let c = delete_vertices_count(&h, &vertices)?;
                let sub = h.delete_vertices(&vertices)?;
                let mut res = json!({
                    "n_in": h.order(),
                    "n_out": sub.order(),
                    "deleted": vertices,
                    "observed": c.observed,
                    "predicted": c.predicted.map(report::rational),
                });
                emit(&mut res, out.as_deref(), &write_hyp(&sub))?;
                let status = match c.predicted {
                    Some(p) if p != Rational64::from_integer(c.observed as i64) => Status::Violated,
                    _ => Status::Ok,
                };
                Ok((res, status))
            }
        },
        Command::Extend { input, out } => extend(&load_trn(&input, inputs)?, out.as_deref()),
        Command::Search(s) => search(s),
    }
}

enum Loaded {
    Trn(Tournament),
    Hyp(Hypergraph4),
}

fn load(path: &Path, inputs: &mut Inputs) -> Result<Loaded, Failure> {
    let bytes = match fs::read(path) {
        Ok(b) => b,
        Err(e) => return fail(format!("cannot read {}: {e}", path.display())),
    };
    inputs.add_file(path, &bytes);
    let Ok(text) = String::from_utf8(bytes) else {
        return fail(format!("{} is not UTF-8 text", path.display()));
    };
    match path.extension().and_then(|e| e.to_str()) {
        Some("trn") => Ok(Loaded::Trn(read_trn(&text)?)),
        Some("hyp") => Ok(Loaded::Hyp(read_hyp(&text)?)),
        _ => fail(format!("{}: expected a .trn or .hyp file", path.display())),
    }
}

fn load_trn(path: &Path, inputs: &mut Inputs) -> Result<Tournament, Failure> {
    match load(path, inputs)? {
        Loaded::Trn(t) => Ok(t),
        Loaded::Hyp(_) => fail(format!("{}: expected a .trn tournament", path.display())),
    }
}

/// Writes the artifact to `out`, or embeds it in the report when no path is given.
fn emit(res: &mut Value, out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                return fail(format!("cannot write {}: {e}", path.display()));
            }
            res["written"] = json!(path.display().to_string());
        }
        None => res["artifact"] = json!(text),
    }
    Ok(())
}

fn construct(a: ConstructArgs) -> Outcome {
    let q = match (a.q, a.p, a.k) {
        (Some(q), _, _) => q,
        (None, Some(p), Some(k)) => match p.checked_pow(k) {
            Some(q) => q,
            None => return fail(format!("{p}^{k} overflows")),
        },
        _ => return fail("give --q or both --p and --k"),
    };
    let t = match a.family {
        Family::Paley => paley_tournament(q)?,
        Family::StarPaley => star_paley(q)?,
    };
    let s = SeidelMatrix::from_tournament(&t);
    let n = t.order();
    let mut res = json!({
        "family": match a.family { Family::Paley => "paley", Family::StarPaley => "star-paley" },
        "q": q,
        "n": n,
        "diamonds": count_diamonds_spectral(&t)?,
        "conference": is_skew_conference(&s),
        "extremal": matches_extremal_charpoly(&s).as_str(),
    });
    if n >= 4 {
        res["bound"] = report::rational(diamond_upper_bound(n)?);
    }
    emit(&mut res, a.out.as_deref(), &write_trn(&t))?;
    Ok((res, Status::Ok))
}

fn bound_fields(res: &mut Value, n: usize, delta: u64) -> Result<(), Failure> {
    if n >= 4 {
        let b = diamond_upper_bound(n)?;
        res["bound"] = report::rational(b);
        res["attained"] = json!(b.is_integer() && b.to_integer() == delta as i64);
    }
    Ok(())
}

fn count(t: &Tournament, method: Method) -> Outcome {
    let n = t.order();
    let naive = (method != Method::Spectral).then(|| t.count_diamonds_naive());
    let spectral = match method {
        Method::Naive => None,
        _ => Some(count_diamonds_spectral(t)?),
    };
    let mut res = json!({ "n": n, "naive": naive, "spectral": spectral });
    let delta = naive.or(spectral).expect("at least one method runs");
    res["diamonds"] = json!(delta);
    bound_fields(&mut res, n, delta)?;
    if let (Some(a), Some(b)) = (naive, spectral) {
        if a != b {
            res["disagreement"] = json!({ "naive": a, "spectral": b });
            return Ok((res, Status::Violated));
        }
    }
    Ok((res, Status::Ok))
}

fn verify_tournament(t: &Tournament, checks: &[Check]) -> Outcome {
    let checks: Vec<Check> =
        if checks.is_empty() { vec![Check::Conference, Check::ExtremalCharpoly] } else { checks.to_vec() };
    if let Some(c) = checks.iter().find(|c| matches!(c, Check::Ff4 | Check::Design)) {
        let name = if *c == Check::Ff4 { "ff4" } else { "design" };
        return fail(format!("check {name} applies to .hyp hypergraphs, not tournaments"));
    }
    let n = t.order();
    let s = SeidelMatrix::from_tournament(t);
    let poly = char_poly(&s);
    let (sigma2, sigma4) = sigma_from_traces(&s);
    let delta = count_diamonds_spectral(t)?;
    let mut res = json!({
        "n": n,
        "diamonds": delta,
        "char_poly": report::char_poly(&poly),
        "sigma2": sigma2,
        "sigma4": sigma4,
    });
    bound_fields(&mut res, n, delta)?;
    let mut status = Status::Ok;

    if checks.contains(&Check::Conference) {
        let ok = is_skew_conference(&s);
        res["conference"] = json!(ok);
        if !ok {
            status = Status::Violated;
            // first entry of S·Sᵀ = -S² that differs from (n-1)I
            let sq = s.square();
            'find: for (i, row) in sq.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    let want = if i == j { n as i64 - 1 } else { 0 };
                    if -v != want {
                        res["conference_counterexample"] = json!({ "i": i, "j": j, "entry": -v, "expected": want });
                        break 'find;
                    }
                }
            }
        }
    }
    if checks.contains(&Check::ExtremalCharpoly) {
        let class = matches_extremal_charpoly(&s);
        res["extremal"] = json!(class.as_str());
        if class == Extremal::No {
            status = Status::Violated;
            res["expected_char_poly"] = match extremal_charpoly(n) {
                Some((_, p)) => report::char_poly(&p),
                None => Value::Null,
            };
        }
    }
    Ok((res, status))
}

fn verify_hypergraph(h: &Hypergraph4, checks: &[Check], threads: usize) -> Outcome {
    let n = h.order();
    let checks: Vec<Check> = if checks.is_empty() {
        if n % 4 == 0 { vec![Check::Ff4, Check::Design] } else { vec![Check::Ff4] }
    } else {
        checks.to_vec()
    };
    if checks.iter().any(|c| matches!(c, Check::Conference | Check::ExtremalCharpoly)) {
        return fail("checks conference and extremal-charpoly apply to .trn tournaments");
    }
    let m = h.edge_count();
    let mut status = Status::Ok;
    let mut res = json!({ "n": n, "m": m, "ff4": Value::Null, "design_lambda": Value::Null });

    if checks.contains(&Check::Ff4) {
        match verify_ff4(h, threads.max(1))? {
            Ff4Check::Ok => res["ff4"] = json!(true),
            Ff4Check::Violated { five_set, edges } => {
                status = Status::Violated;
                res["ff4"] = json!(false);
                res["counterexample"] = json!({ "five_set": five_set, "edges": edges });
            }
        }
    }
    if checks.contains(&Check::Design) {
        if is_ff4_design(h)? {
            res["design_lambda"] = json!(n / 4);
        } else {
            status = Status::Violated;
            let hist: serde_json::Map<String, Value> =
                triple_profile(h).histogram().into_iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            res["triple_histogram"] = Value::Object(hist);
        }
    }
    if n >= 5 {
        let b = edge_count_bound(n)?;
        res["bound"] = json!({ "value": report::rational(b.value), "status": b.status.as_str() });
        let prof = triple_profile(h);
        let min = min_sum_squares(4 * m as u64, prof.triple_count())?.minimum;
        res["margins"] = json!({
            "bound_minus_edges": report::rational(b.value - Rational64::from_integer(m as i64)),
            "triple_squares_excess": prof.sum_of_squares() - min,
        });
    } else {
        res["bound"] = Value::Null;
        res["margins"] = Value::Null;
    }
    Ok((res, status))
}

fn extend(t: &Tournament, out: Option<&Path>) -> Outcome {
    let s = SeidelMatrix::from_tournament(t);
    let ext = match extend_to_conference(&s) {
        Ok(e) => e,
        Err(Error::ExtensionFailed(msg)) => {
            return Ok((json!({ "n": t.order(), "extended": false, "reason": msg }), Status::Violated));
        }
        Err(e) => return Err(e.into()),
    };
    let n = ext.order();
    let border: Vec<i8> = (0..n - 1).map(|i| ext.get(i, n - 1)).collect();
    let et = ext.to_tournament()?;
    let mut res = json!({
        "n_in": t.order(),
        "n_out": n,
        "extended": true,
        "border": border,
        "conference": is_skew_conference(&ext),
        "diamonds": count_diamonds_spectral(&et)?,
    });
    emit(&mut res, out, &write_trn(&et))?;
    Ok((res, Status::Ok))
}

fn search_json(r: &SearchResult) -> Value {
    let mode = match &r.mode {
        SearchMode::Exhaustive { pruned, threads } => {
            json!({ "kind": "exhaustive", "pruned": pruned, "threads": threads })
        }
        SearchMode::Local(p) => json!({
            "kind": "local",
            "restarts": p.restarts,
            "steps": p.steps,
            "t0": p.t0,
            "cooling": p.cooling,
            "seed": p.seed,
            "threads": p.threads,
        }),
    };
    json!({
        "n": r.n,
        "mode": mode,
        "max_diamonds": r.max_diamonds,
        "witness": write_trn(&r.witness),
        "bound": report::rational(r.bound),
        "attained": r.attained,
        "explored": r.explored,
    })
}

fn search(s: SearchCommand) -> Outcome {
    match s {
        SearchCommand::Exhaustive { n, threads, no_prune, long_run } => {
            let opts = ExhaustiveOptions { threads: threads.max(1), prune: !no_prune, long_run };
            let r = exhaustive_max_diamonds(n, opts)?;
            Ok((search_json(&r), Status::Ok))
        }
        SearchCommand::Local { n, restarts, steps, t0, cooling, seed, threads } => {
            let params = LocalSearchParams { n, restarts, steps, t0, cooling, seed, threads: threads.max(1) };
            let r = local_search_max_diamonds(&params)?;
            Ok((search_json(&r), Status::Ok))
        }
        SearchCommand::FiveLaw => {
            let law = verify_five_vertex_law();
            let hist: serde_json::Map<String, Value> =
                law.histogram.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            let mut res = json!({ "checked": law.checked, "histogram": hist, "holds": law.holds() });
            if let Some(code) = law.counterexample {
                res["counterexample"] = json!(write_trn(&tournament_from_code(5, code)?));
                return Ok((res, Status::Violated));
            }
            Ok((res, Status::Ok))
        }
    }
}
