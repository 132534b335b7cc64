//! Command-line front end. [`run_cli`] does all the work so that the binary
//! and the tests share one code path.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::arith::is_square_free;
use crate::cfrac::{convergents, expand, isomorphic_tori, morita_equivalent, CfExpansion};
use crate::complexity::{arithmetic_complexity_cached, ComplexityReport, SearchConfig};
use crate::error::{Error, Result};
use crate::euler::{build_euler_system, linear_diophantine_form, rational_dimension_upper_bound};
use crate::poly::IntegerPolynomial;
use crate::rank::{
    class_number_imag_quadratic, dimension_group_rank, rank_report_cached, reduced_forms,
    CurveDescriptor, Generator, GeneratorSet, RankReport,
};
use crate::store::{expand_through, json_int, json_ints, ExpansionCache, ExpansionStore, NoCache};
use crate::surd::{canonicalize_big, QuadraticIrrational, Surd};
use crate::table::{table1_expansions, table1_reproduce_cached, Table1, WindowOverrides, TABLE1};

/// Exit status and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Parser, Debug)]
#[command(
    name = "torusrank",
    version,
    about = "Continued fractions, Euler systems and rank estimates for real-multiplication tori"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Expansion cache (JSON lines).
    #[arg(
        long,
        global = true,
        env = "TORUSRANK_CACHE",
        default_value = "cfrac-cache.jsonl"
    )]
    cache: PathBuf,
    /// Do not read or write the cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Accept radicands above 2^63.
    #[arg(long, global = true)]
    allow_large_d: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Theta {
    #[arg(long, default_value = "0", value_parser = parse_big, allow_hyphen_values = true)]
    a: BigInt,
    #[arg(long, default_value = "1", value_parser = parse_big, allow_hyphen_values = true)]
    b: BigInt,
    #[arg(long, default_value = "1", value_parser = parse_big, allow_hyphen_values = true)]
    c: BigInt,
    #[arg(long, value_parser = parse_big)]
    d: BigInt,
}

#[derive(Args, Debug, Clone)]
struct Theta2 {
    #[arg(long, default_value = "0", value_parser = parse_big, allow_hyphen_values = true)]
    a2: BigInt,
    #[arg(long, default_value = "1", value_parser = parse_big, allow_hyphen_values = true)]
    b2: BigInt,
    #[arg(long, default_value = "1", value_parser = parse_big, allow_hyphen_values = true)]
    c2: BigInt,
    #[arg(long, value_parser = parse_big)]
    d2: BigInt,
}

#[derive(Args, Debug, Clone)]
struct Search {
    /// Largest b^2 x scanned.
    #[arg(long, default_value_t = 1_000_000)]
    window: u64,
    #[arg(long)]
    single_thread: bool,
    #[arg(long, default_value_t = 3)]
    min_line_members: usize,
    #[arg(long, default_value_t = 1)]
    min_confirmations: usize,
    #[arg(long, default_value_t = 2)]
    radicand_degree: u32,
}

impl Search {
    fn config(&self) -> SearchConfig {
        SearchConfig {
            window_max: self.window,
            radicand_degree_max: self.radicand_degree,
            min_line_members: self.min_line_members,
            min_confirmations: self.min_confirmations,
            single_thread: self.single_thread,
            ..SearchConfig::default()
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Continued fraction of (a + b sqrt(d))/c.
    Expand(Theta),
    /// First convergents A_i/B_i.
    Convergents {
        #[command(flatten)]
        theta: Theta,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Euler equations at the expansion of theta.
    Euler(Theta),
    /// Arithmetic complexity estimate.
    Complexity {
        #[command(flatten)]
        theta: Theta,
        #[command(flatten)]
        search: Search,
    },
    /// Whether two tori are Morita equivalent.
    Morita {
        #[command(flatten)]
        theta: Theta,
        #[command(flatten)]
        other: Theta2,
    },
    /// Whether two tori are isomorphic.
    Iso {
        #[command(flatten)]
        theta: Theta,
        #[command(flatten)]
        other: Theta2,
    },
    /// Rank estimate and bound.
    #[command(group = clap::ArgGroup::new("curve").required(true).args(["d", "curve_b", "cm_p"]))]
    Rank {
        #[arg(long, default_value = "0", value_parser = parse_big, allow_hyphen_values = true)]
        a: BigInt,
        #[arg(long, default_value = "1", value_parser = parse_big, allow_hyphen_values = true)]
        b: BigInt,
        #[arg(long, default_value = "1", value_parser = parse_big, allow_hyphen_values = true)]
        c: BigInt,
        #[arg(long, value_parser = parse_big)]
        d: Option<BigInt>,
        /// E_b(Q) with b >= 3.
        #[arg(long, value_parser = parse_big)]
        curve_b: Option<BigInt>,
        /// E_CM(-p, 1) with p = 3 mod 4 prime.
        #[arg(long)]
        cm_p: Option<u64>,
        #[command(flatten)]
        search: Search,
    },
    /// Reproduce the reference table of CM Q-curves.
    Table1 {
        #[command(flatten)]
        search: Search,
        /// Window overrides file; defaults to the checked-in one.
        #[arg(long)]
        windows: Option<PathBuf>,
        /// Ignore window overrides.
        #[arg(long)]
        no_overrides: bool,
        /// Only the expansion column.
        #[arg(long)]
        expansions_only: bool,
    },
    /// Class number of Q(sqrt(-p)).
    ClassNumber {
        #[arg(long)]
        p: u64,
    },
    /// Rank of the dimension group of a subgroup of the circle.
    Dimgroup {
        /// Root of unity exp(2 pi i p/q), written p/q. Repeatable.
        #[arg(long = "root")]
        roots: Vec<String>,
        /// Irrational angle: the fractional part of d or a,b,c,d. Repeatable.
        #[arg(long = "angle")]
        angles: Vec<String>,
    },
}

fn parse_big(s: &str) -> std::result::Result<BigInt, String> {
    BigInt::from_str(s.trim()).map_err(|e| format!("not an integer: {e}"))
}

const LARGE_D: u64 = 1 << 63;

fn check_size(d: &BigInt, allow: bool) -> Result<()> {
    if !allow && *d > BigInt::from(LARGE_D) {
        return Err(Error::InvalidConfig(format!(
            "d = {d} exceeds 2^63; pass --allow-large-d"
        )));
    }
    Ok(())
}

fn theta_of(t: &Theta, allow: bool) -> Result<QuadraticIrrational> {
    check_size(&t.d, allow)?;
    canonicalize_big(t.a.clone(), t.b.clone(), t.c.clone(), t.d.clone())
}

/// Any surd with a square-free radicand; the root coefficient may be negative.
fn surd_of(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt, allow: bool) -> Result<Surd> {
    check_size(d, allow)?;
    if *d >= BigInt::from(2) && !is_square_free(d) {
        return Err(Error::NotSquareFree(d.clone()));
    }
    Surd::new(a.clone(), b.clone(), c.clone(), d.clone())
}

/// Runs the CLI on `argv` (including the program name).
pub fn run_cli<I, S>(argv: I) -> CliOutcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    CliOutcome {
                        code: 0,
                        stdout: text,
                        stderr: String::new(),
                    }
                }
                _ => CliOutcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match execute(&cli) {
        Ok((code, stdout)) => CliOutcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => CliOutcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn open_store(cli: &Cli) -> Result<Box<dyn CacheLike>> {
    if cli.no_cache {
        Ok(Box::new(NoCache))
    } else {
        Ok(Box::new(ExpansionCache::open(&cli.cache)?))
    }
}

fn cached_expansion(cli: &Cli, theta: &QuadraticIrrational) -> Result<CfExpansion> {
    let mut store = open_store(cli)?;
    let e = expand_through(theta, store.as_store());
    store.finish()?;
    Ok(e)
}

/// A store that may need flushing at the end of a run.
trait CacheLike: ExpansionStore {
    fn finish(&mut self) -> Result<()>;
    fn as_store(&mut self) -> &mut dyn ExpansionStore;
}

impl CacheLike for NoCache {
    fn finish(&mut self) -> Result<()> {
        Ok(())
    }
    fn as_store(&mut self) -> &mut dyn ExpansionStore {
        self
    }
}

impl CacheLike for ExpansionCache {
    fn finish(&mut self) -> Result<()> {
        self.flush()
    }
    fn as_store(&mut self) -> &mut dyn ExpansionStore {
        self
    }
}

fn execute(cli: &Cli) -> Result<(i32, String)> {
    let fmt = cli.format;
    let allow = cli.allow_large_d;
    match &cli.command {
        Command::Expand(t) => {
            let theta = theta_of(t, allow)?;
            Ok((0, render_expand(&cached_expansion(cli, &theta)?, fmt)))
        }
        Command::Convergents { theta, count } => {
            if *count == 0 {
                return Err(Error::InvalidConfig("--count must be at least 1".into()));
            }
            let theta = theta_of(theta, allow)?;
            let table = convergents(&cached_expansion(cli, &theta)?, *count);
            Ok((0, render_convergents(&table.a, &table.b, fmt)))
        }
        Command::Euler(t) => {
            let theta = theta_of(t, allow)?;
            Ok((0, render_euler(&theta, fmt)?))
        }
        Command::Complexity { theta, search } => {
            let theta = theta_of(theta, allow)?;
            let mut store = open_store(cli)?;
            let report = arithmetic_complexity_cached(&theta, &search.config(), store.as_store())?;
            store.finish()?;
            Ok((0, render_complexity(&report, fmt)))
        }
        Command::Morita { theta, other } | Command::Iso { theta, other } => {
            let s1 = surd_of(&theta.a, &theta.b, &theta.c, &theta.d, allow)?;
            let s2 = surd_of(&other.a2, &other.b2, &other.c2, &other.d2, allow)?;
            let (key, value) = if matches!(cli.command, Command::Morita { .. }) {
                ("morita_equivalent", morita_equivalent(&s1, &s2))
            } else {
                ("isomorphic", isomorphic_tori(&s1, &s2))
            };
            Ok((0, render_predicate(key, &s1, &s2, value, fmt)))
        }
        Command::Rank {
            a,
            b,
            c,
            d,
            curve_b,
            cm_p,
            search,
        } => {
            let desc = if let Some(d) = d {
                check_size(d, allow)?;
                CurveDescriptor::Explicit(canonicalize_big(
                    a.clone(),
                    b.clone(),
                    c.clone(),
                    d.clone(),
                )?)
            } else if let Some(b) = curve_b {
                check_size(b, allow)?;
                CurveDescriptor::RationalFamily(b.clone())
            } else {
                CurveDescriptor::cm(cm_p.expect("clap enforces one curve flag"))
            };
            let mut store = open_store(cli)?;
            let report = rank_report_cached(&desc, &search.config(), store.as_store())?;
            store.finish()?;
            Ok((0, render_rank(&report, fmt)))
        }
        Command::Table1 {
            search,
            windows,
            no_overrides,
            expansions_only,
        } => {
            if *expansions_only {
                let rows = table1_expansions();
                let ok = rows.iter().all(|r| r.2);
                return Ok((if ok { 0 } else { 2 }, render_table1_expansions(&rows, fmt)));
            }
            let overrides = if *no_overrides {
                WindowOverrides::none()
            } else if let Some(path) = windows {
                WindowOverrides::parse(&std::fs::read_to_string(path)?)?
            } else {
                WindowOverrides::checked_in()
            };
            let mut store = open_store(cli)?;
            let table = table1_reproduce_cached(&search.config(), &overrides, store.as_store())?;
            store.finish()?;
            let code = if table.all_match() { 0 } else { 2 };
            Ok((code, render_table1(&table, fmt)))
        }
        Command::ClassNumber { p } => {
            let h = class_number_imag_quadratic(*p)?;
            let forms = reduced_forms(*p)?;
            Ok((0, render_class_number(*p, h, &forms, fmt)))
        }
        Command::Dimgroup { roots, angles } => {
            let mut gens = Vec::new();
            for r in roots {
                let (p, q) = r
                    .split_once('/')
                    .ok_or_else(|| Error::InvalidGenerators(format!("root {r:?} is not p/q")))?;
                let parse = |s: &str| {
                    s.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::InvalidGenerators(format!("root {r:?} is not p/q")))
                };
                gens.push(Generator::root_of_unity(parse(p)?, parse(q)?)?);
            }
            for a in angles {
                let parts: Vec<BigInt> = a
                    .split(',')
                    .map(|s| parse_big(s).map_err(Error::InvalidGenerators))
                    .collect::<Result<_>>()?;
                let theta = match parts.as_slice() {
                    [d] => canonicalize_big(0.into(), 1.into(), 1.into(), d.clone())?,
                    [a, b, c, d] => canonicalize_big(a.clone(), b.clone(), c.clone(), d.clone())?,
                    _ => {
                        return Err(Error::InvalidGenerators(format!(
                            "angle {a:?} is not d or a,b,c,d"
                        )))
                    }
                };
                gens.push(Generator::angle(&theta)?);
            }
            let set = GeneratorSet::new(gens)?;
            Ok((0, render_dimgroup(&set, fmt)))
        }
    }
}

fn line(v: Value) -> String {
    let mut s = serde_json::to_string(&v).expect("values serialize");
    s.push('\n');
    s
}

fn csv_text(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for r in rows {
        w.write_record(&r).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv is utf-8")
}

fn joined(v: &[BigInt], sep: &str) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

fn theta_json(t: &QuadraticIrrational) -> Value {
    json!({"a": json_int(t.a()), "b": json_int(t.b()), "c": json_int(t.c()), "d": json_int(t.d())})
}

fn surd_json(s: &Surd) -> Value {
    json!({"a": json_int(s.a()), "b": json_int(s.b()), "c": json_int(s.c()), "d": json_int(s.radicand())})
}

fn expansion_json(e: &CfExpansion) -> Value {
    json!({"preperiod": json_ints(e.preperiod()), "period": json_ints(e.period())})
}

fn render_expand(e: &CfExpansion, fmt: Format) -> String {
    match fmt {
        Format::Json => line(expansion_json(e)),
        Format::Csv => csv_text(
            &["preperiod", "period"],
            vec![vec![joined(e.preperiod(), " "), joined(e.period(), " ")]],
        ),
        Format::Text => format!("{e}\n"),
    }
}

fn render_convergents(a: &[BigInt], b: &[BigInt], fmt: Format) -> String {
    match fmt {
        Format::Json => line(json!({"A": json_ints(a), "B": json_ints(b)})),
        Format::Csv => csv_text(
            &["i", "A", "B"],
            a.iter()
                .zip(b)
                .enumerate()
                .map(|(i, (x, y))| vec![i.to_string(), x.to_string(), y.to_string()])
                .collect(),
        ),
        Format::Text => a
            .iter()
            .zip(b)
            .enumerate()
            .map(|(i, (x, y))| format!("{i}: {x}/{y}\n"))
            .collect(),
    }
}

fn poly_json(p: &IntegerPolynomial) -> Value {
    let vars = p.variables();
    let terms: Vec<Value> = p
        .terms()
        .map(|(mono, coef)| {
            let mut m = Map::new();
            for (i, e) in mono.iter().enumerate() {
                if *e > 0 {
                    m.insert(vars[i].clone(), json!(e));
                }
            }
            json!({"coefficient": json_int(coef), "monomial": Value::Object(m)})
        })
        .collect();
    json!({"text": p.to_string(), "terms": terms})
}

fn render_euler(theta: &QuadraticIrrational, fmt: Format) -> Result<String> {
    let exp = expand(theta);
    let sys = build_euler_system(theta, &exp)?;
    let form = linear_diophantine_form(&sys)?;
    let bound = rational_dimension_upper_bound(&sys);
    Ok(match fmt {
        Format::Json => {
            let base: Map<String, Value> = sys
                .variables
                .iter()
                .zip(&sys.base_point)
                .map(|(v, x)| (v.clone(), json_int(x)))
                .collect();
            line(json!({
                "theta": theta_json(theta),
                "m": sys.m,
                "n": sys.n,
                "variables": sys.variables.to_vec(),
                "c1": json_int(&sys.c1),
                "c2": json_int(&sys.c2),
                "radicand_scale": json_int(&sys.radicand_scale),
                "equations": sys.equations.iter().map(poly_json).collect::<Vec<_>>(),
                "base_point": Value::Object(base),
                "sign": form.sign,
                "diophantine": poly_json(&form.polynomial),
                "rational_dimension_upper_bound": bound,
            }))
        }
        Format::Csv => {
            let mut rows: Vec<Vec<String>> = sys
                .equations
                .iter()
                .enumerate()
                .map(|(i, e)| vec![format!("relation{}", i + 1), e.to_string()])
                .collect();
            rows.push(vec!["diophantine".into(), form.polynomial.to_string()]);
            rows.push(vec!["c1".into(), sys.c1.to_string()]);
            rows.push(vec!["c2".into(), sys.c2.to_string()]);
            rows.push(vec![
                "radicand_scale".into(),
                sys.radicand_scale.to_string(),
            ]);
            rows.push(vec!["sign".into(), form.sign.to_string()]);
            rows.push(vec![
                "rational_dimension_upper_bound".into(),
                bound.to_string(),
            ]);
            csv_text(&["item", "value"], rows)
        }
        Format::Text => {
            let mut s = format!("theta = {theta} = {exp}\n");
            s += &format!(
                "c1 = {}, c2 = {}, S = {}\n",
                sys.c1, sys.c2, sys.radicand_scale
            );
            for (i, e) in sys.equations.iter().enumerate() {
                s += &format!("relation {}: {e} = 0\n", i + 1);
            }
            let sign = if form.sign > 0 { "+" } else { "-" };
            s += &format!("diophantine ({sign}4): {} = 0\n", form.polynomial);
            s += &format!("rational dimension <= {bound}\n");
            s
        }
    })
}

fn complexity_json(r: &ComplexityReport) -> Value {
    let lines: Vec<Value> = r
        .witness_lines
        .iter()
        .map(|l| {
            json!({
                "entry_constant": json_ints(&l.entry_constant),
                "entry_slope": json_ints(&l.entry_slope),
                "radicand": json_ints(&l.radicand),
                "members": l.members.iter().map(|m| json!({"t": m.t, "d": json_int(m.theta.d())})).collect::<Vec<_>>(),
                "skipped_non_square_free": l.skipped_non_square_free,
                "off_line": l.off_line.len(),
            })
        })
        .collect();
    let d = &r.diagnostics;
    json!({
        "theta": theta_json(&r.theta),
        "expansion": expansion_json(&r.expansion),
        "n": r.n(),
        "c": r.c,
        "independence": r.independence,
        "lines": lines,
        "members_used": r.members_used.iter().map(json_ints).collect::<Vec<_>>(),
        "diagnostics": {
            "window_max": d.window_max,
            "window_below_base": d.window_below_base,
            "window_exhausted": d.window_exhausted,
            "square_free_scanned": d.square_free_scanned,
            "shape_matches": d.shape_matches,
            "candidate_directions": d.candidate_directions,
            "rejected_lines": d.rejected_lines,
            "skipped_non_square_free": d.skipped_non_square_free,
        },
    })
}

fn render_complexity(r: &ComplexityReport, fmt: Format) -> String {
    match fmt {
        Format::Json => line(complexity_json(r)),
        Format::Csv => csv_text(
            &["slope", "radicand", "members", "skipped_non_square_free"],
            r.witness_lines
                .iter()
                .map(|l| {
                    vec![
                        joined(&l.entry_slope, " "),
                        joined(&l.radicand, " "),
                        l.members.len().to_string(),
                        l.skipped_non_square_free.len().to_string(),
                    ]
                })
                .collect(),
        ),
        Format::Text => {
            let mut s = format!("theta = {} = {}\n", r.theta, r.expansion);
            s += &format!(
                "c = {} (n = {}, independence {})\n",
                r.c,
                r.n(),
                r.independence
            );
            for l in &r.witness_lines {
                let [r0, r1, r2] = &l.radicand;
                s += &format!(
                    "line slope ({}) x(t) = {r0} + {r1} t + {r2} t^2, {} members\n",
                    joined(&l.entry_slope, ","),
                    l.members.len()
                );
            }
            s += &format!(
                "window {} scanned {} square-free radicands, {} of the same shape\n",
                r.diagnostics.window_max,
                r.diagnostics.square_free_scanned,
                r.diagnostics.shape_matches
            );
            s
        }
    }
}

fn render_predicate(key: &str, s1: &Surd, s2: &Surd, value: bool, fmt: Format) -> String {
    match fmt {
        Format::Json => line(json!({"first": surd_json(s1), "second": surd_json(s2), key: value})),
        Format::Csv => csv_text(
            &["first", "second", key],
            vec![vec![s1.to_string(), s2.to_string(), value.to_string()]],
        ),
        Format::Text => format!("{s1} vs {s2}: {key} = {value}\n"),
    }
}

fn descriptor_json(d: &CurveDescriptor) -> Value {
    match d {
        CurveDescriptor::Cm { p, f } => json!({"kind": "cm", "p": p, "f": f}),
        CurveDescriptor::RationalFamily(b) => json!({"kind": "rational_family", "b": json_int(b)}),
        CurveDescriptor::Explicit(t) => json!({"kind": "explicit", "theta": theta_json(t)}),
    }
}

fn render_rank(r: &RankReport, fmt: Format) -> String {
    match fmt {
        Format::Json => {
            let twist = r.twist.as_ref().map(|t| {
                json!({
                    "theta": theta_json(&t.theta),
                    "expansion": expansion_json(&t.expansion),
                    "c": t.c,
                    "rank_estimate": t.rank_estimate,
                    "rank_bound": t.rank_bound,
                })
            });
            line(json!({
                "descriptor": descriptor_json(&r.descriptor),
                "theta": theta_json(&r.theta),
                "expansion": expansion_json(&r.complexity.expansion),
                "n": r.n,
                "c": r.c,
                "rank_estimate": r.rank_estimate,
                "rank_bound": r.rank_bound,
                "class_number": r.class_number,
                "full_rank": r.full_rank,
                "twist": twist,
            }))
        }
        Format::Csv => csv_text(
            &[
                "curve",
                "theta",
                "expansion",
                "n",
                "c",
                "rank_estimate",
                "rank_bound",
                "twist_rank_estimate",
            ],
            vec![vec![
                r.descriptor.to_string(),
                r.theta.to_string(),
                r.complexity.expansion.to_string(),
                r.n.to_string(),
                r.c.to_string(),
                r.rank_estimate.to_string(),
                r.rank_bound.to_string(),
                r.twist
                    .as_ref()
                    .map(|t| t.rank_estimate.to_string())
                    .unwrap_or_default(),
            ]],
        ),
        Format::Text => {
            let mut s = format!(
                "{}: theta = {} = {}\n",
                r.descriptor, r.theta, r.complexity.expansion
            );
            s += &format!(
                "c = {}, rank estimate {}, rank bound {}\n",
                r.c, r.rank_estimate, r.rank_bound
            );
            if let (Some(h), Some(full)) = (r.class_number, r.full_rank) {
                s += &format!("h = {h}, full rank 2h * rk_Q = {full}\n");
            }
            if let Some(t) = &r.twist {
                s += &format!(
                    "twist {} = {}: c = {}, rank estimate {}, rank bound {}\n",
                    t.theta, t.expansion, t.c, t.rank_estimate, t.rank_bound
                );
            }
            s
        }
    }
}

const TABLE1_HEADER: [&str; 9] = [
    "p",
    "rk_Q",
    "sqrt_p_cf",
    "c",
    "expected_rk_Q",
    "expected_sqrt_p_cf",
    "expected_c",
    "window",
    "match",
];

fn render_table1(t: &Table1, fmt: Format) -> String {
    match fmt {
        Format::Json => {
            let rows: Vec<Value> = t
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "p": r.p(),
                        "rk_Q": r.rank_estimate,
                        "sqrt_p_cf": r.expansion.to_string(),
                        "c": r.c,
                        "expected": {
                            "rk_Q": r.expected.rk_q,
                            "sqrt_p_cf": r.expected.expansion().to_string(),
                            "c": r.expected.c,
                        },
                        "match": {
                            "sqrt_p_cf": r.expansion_match,
                            "c": r.c_match,
                            "rk_Q": r.rk_match,
                        },
                        "window": r.window,
                        "lines": r.report.witness_lines.len(),
                    })
                })
                .collect();
            line(json!({"rows": rows, "all_match": t.all_match()}))
        }
        Format::Csv => csv_text(
            &TABLE1_HEADER,
            t.rows
                .iter()
                .map(|r| {
                    vec![
                        r.p().to_string(),
                        r.rank_estimate.to_string(),
                        r.expansion.to_string(),
                        r.c.to_string(),
                        r.expected.rk_q.to_string(),
                        r.expected.expansion().to_string(),
                        r.expected.c.to_string(),
                        r.window.to_string(),
                        r.all_match().to_string(),
                    ]
                })
                .collect(),
        ),
        Format::Text => {
            let mut s = format!(
                "{:>3} {:>5} {:>5} {:<40} {}\n",
                "p", "rk_Q", "c", "sqrt(p)", "match"
            );
            for r in &t.rows {
                let mark = if r.all_match() {
                    "yes".to_string()
                } else {
                    format!("no (expected rk_Q {}, c {})", r.expected.rk_q, r.expected.c)
                };
                s += &format!(
                    "{:>3} {:>5} {:>5} {:<40} {mark}\n",
                    r.p(),
                    r.rank_estimate,
                    r.c,
                    r.expansion.to_string()
                );
            }
            s
        }
    }
}

fn render_table1_expansions(rows: &[(u64, CfExpansion, bool)], fmt: Format) -> String {
    let expected = |p: u64| {
        TABLE1
            .iter()
            .find(|r| r.p == p)
            .map(|r| r.expansion().to_string())
            .unwrap_or_default()
    };
    match fmt {
        Format::Json => line(json!({
            "rows": rows.iter().map(|(p, e, ok)| json!({
                "p": p,
                "sqrt_p_cf": e.to_string(),
                "expected_sqrt_p_cf": expected(*p),
                "match": ok,
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => csv_text(
            &["p", "sqrt_p_cf", "expected_sqrt_p_cf", "match"],
            rows.iter()
                .map(|(p, e, ok)| vec![p.to_string(), e.to_string(), expected(*p), ok.to_string()])
                .collect(),
        ),
        Format::Text => rows
            .iter()
            .map(|(p, e, ok)| {
                format!(
                    "{p:>3} {:<40} {}\n",
                    e.to_string(),
                    if *ok { "yes" } else { "no" }
                )
            })
            .collect(),
    }
}

fn render_class_number(p: u64, h: u64, forms: &[(i64, i64, i64)], fmt: Format) -> String {
    match fmt {
        Format::Json => line(json!({
            "p": p,
            "discriminant": -(p as i128) as i64,
            "h": h,
            "forms": forms.iter().map(|(a, b, c)| json!([a, b, c])).collect::<Vec<_>>(),
        })),
        Format::Csv => csv_text(
            &["a", "b", "c"],
            forms
                .iter()
                .map(|(a, b, c)| vec![a.to_string(), b.to_string(), c.to_string()])
                .collect(),
        ),
        Format::Text => {
            let list: Vec<String> = forms
                .iter()
                .map(|(a, b, c)| format!("({a},{b},{c})"))
                .collect();
            format!("h(-{p}) = {h}: {}\n", list.join(" "))
        }
    }
}

fn render_dimgroup(set: &GeneratorSet, fmt: Format) -> String {
    let rank = dimension_group_rank(set);
    match fmt {
        Format::Json => line(json!({"s": set.s(), "t": set.t(), "rank": rank})),
        Format::Csv => csv_text(
            &["s", "t", "rank"],
            vec![vec![
                set.s().to_string(),
                set.t().to_string(),
                rank.to_string(),
            ]],
        ),
        Format::Text => format!("s = {}, t = {}, rank = {rank}\n", set.s(), set.t()),
    }
}
