use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use multieuler::counting::{count_descents_within, count_exact_descents};
use multieuler::eulerian::{MAX_BIPOLY_N, MAX_N};
use multieuler::json::{bipoly_to_json, poly_from_json, poly_to_json, univariate_to_json};
use multieuler::perm::{enumerate_r, statistic_histogram, MAX_MATERIALIZED};
use multieuler::poly::MAX_PERMUTATION_SEARCH_VARS;
use multieuler::{
    eulerian_descent_ascent_poly, eulerian_descent_poly, eulerian_excedance_poly, psi_forward,
    psi_inverse_trace, sweep, univariate_eulerian, Coeff, Error, IdentityReport, Perm, Selector,
    VarSet,
};

/// Enumeration cross-checks in `count` stop at this symmetric group order.
const COUNT_ENUMERATION_M: usize = MAX_MATERIALIZED;

#[derive(Parser)]
#[command(
    name = "multieuler",
    version,
    about = "Multivariate Eulerian polynomials and their counting identities"
)]
struct Cli {
    /// Output format; defaults to json for `poly` and `verify`, text otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Worker threads; 1 forces the sequential path.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    Descent,
    Excedance,
    DescentAscent,
    Univariate,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Within,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Theorem,
    Combinatorial,
    Sequential,
    Reordering,
    Excedance,
    All,
}

impl From<Which> for Selector {
    fn from(w: Which) -> Self {
        match w {
            Which::Theorem => Selector::Theorem,
            Which::Combinatorial => Selector::Combinatorial,
            Which::Sequential => Selector::Sequential,
            Which::Reordering => Selector::Reordering,
            Which::Excedance => Selector::Excedance,
            Which::All => Selector::All,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Emit the n-th Eulerian polynomial.
    Poly {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "descent")]
        form: Form,
    },
    /// Verify the symmetry theorem and its corollaries over a range of n.
    Verify {
        /// A single n or an inclusive range `a..b`.
        #[arg(long, value_parser = parse_range)]
        n: (usize, usize),
        #[arg(long, value_enum, default_value = "all")]
        which: Which,
    },
    /// Count permutations by descent-top set, by formula and by enumeration.
    Count {
        /// For `exact`, permutations of [n+1]; for `within`, permutations of [n].
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
        /// Comma- or space-separated indices, e.g. `2,4`.
        #[arg(
            long,
            conflicts_with = "all_subsets",
            required_unless_present = "all_subsets"
        )]
        set: Option<String>,
        #[arg(long)]
        all_subsets: bool,
        /// Also print the matching permutations (exact mode, single set).
        #[arg(long, requires = "set")]
        list: bool,
    },
    /// Trace the descent-top bijection on one permutation.
    Bijection {
        /// One-line notation, e.g. "2 1 3".
        #[arg(long, allow_hyphen_values = true)]
        perm: String,
        #[arg(long)]
        inverse: bool,
    },
    /// Classify a polynomial stored in the JSON interchange format.
    CheckPoly { path: PathBuf },
}

/// Anything the caller got wrong; exits with status 2. A failed identity is
/// not an error and exits with status 1.
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure(e.to_string())
    }
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("expected an integer, got {t:?}"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let n = num(s)?;
            (n, n)
        }
    };
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

fn check_n(what: &str, n: usize, max: usize) -> Result<(), Failure> {
    if (1..=max).contains(&n) {
        Ok(())
    } else {
        Err(Failure(format!(
            "{what} = {n} outside supported range [1, {max}]"
        )))
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Numbers while exactly representable as doubles, decimal strings beyond.
fn coeff_json(c: Coeff) -> serde_json::Value {
    match i64::try_from(c) {
        Ok(v) if v.unsigned_abs() < 1 << 53 => v.into(),
        _ => c.to_string().into(),
    }
}

fn univariate_text(coeffs: &[Coeff]) -> String {
    let mut s = String::new();
    for (d, &c) in coeffs.iter().enumerate().filter(|(_, &c)| c != 0) {
        if !s.is_empty() {
            s.push_str(if c < 0 { " - " } else { " + " });
        } else if c < 0 {
            s.push('-');
        }
        let a = c.abs();
        match (d, a) {
            (0, _) => write!(s, "{a}"),
            (_, 1) => Ok(()),
            _ => write!(s, "{a}*"),
        }
        .unwrap();
        match d {
            0 => {}
            1 => s.push('t'),
            _ => write!(s, "t^{d}").unwrap(),
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn cmd_poly(n: usize, form: Form, format: Format) -> Result<String, Failure> {
    let max = match form {
        Form::DescentAscent => MAX_BIPOLY_N,
        _ => MAX_N,
    };
    check_n("n", n, max)?;
    let json = format == Format::Json;
    Ok(match form {
        Form::Descent | Form::Excedance => {
            let p = match form {
                Form::Descent => eulerian_descent_poly(n)?,
                _ => eulerian_excedance_poly(n)?,
            };
            if json {
                poly_to_json(&p)
            } else {
                p.to_string()
            }
        }
        Form::DescentAscent => {
            let p = eulerian_descent_ascent_poly(n)?;
            if json {
                bipoly_to_json(&p)
            } else {
                p.to_string()
            }
        }
        Form::Univariate => {
            let c = univariate_eulerian(n)?;
            if json {
                univariate_to_json(&c)
            } else {
                univariate_text(&c)
            }
        }
    } + "\n")
}

fn summary_table(reports: &[IdentityReport]) -> String {
    let mut out = format!(
        "{:<22} {:>3}  {:<28} {:<5} {}\n",
        "identity", "n", "K", "pass", "value"
    );
    for r in reports {
        let k = r.subset.map_or("-".to_string(), |k| k.to_string());
        let detail = match (&r.witness, r.value()) {
            (Some(w), _) => w.clone(),
            (None, Some(v)) => v.to_string(),
            (None, None) => String::new(),
        };
        writeln!(
            out,
            "{:<22} {:>3}  {:<28} {:<5} {}",
            r.identity,
            r.n,
            k,
            yes_no(r.pass),
            detail
        )
        .unwrap();
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    writeln!(out, "{} reports, {} failed", reports.len(), failed).unwrap();
    out
}

fn cmd_verify(
    range: (usize, usize),
    which: Which,
    format: Format,
) -> Result<(String, bool), Failure> {
    let selector = Selector::from(which);
    check_n("n", range.0, selector.max_n())?;
    check_n("n", range.1, selector.max_n())?;
    let reports = sweep(range.0, range.1, selector)?;
    let ok = reports.iter().all(|r| r.pass);
    let text = match format {
        Format::Json => reports.iter().map(|r| r.to_json_line() + "\n").collect(),
        Format::Text => summary_table(&reports),
    };
    Ok((text, ok))
}

struct CountRow {
    set: VarSet,
    formula: Coeff,
    enumeration: Option<Coeff>,
}

fn cmd_count(
    n: usize,
    mode: Mode,
    set: Option<&str>,
    list: bool,
    format: Format,
) -> Result<(String, bool), Failure> {
    // Exact counts live in S_{n+1}; `within` counts live in S_n.
    let m = match mode {
        Mode::Exact => n + 1,
        Mode::Within => n,
    };
    check_n("group order", m, 63)?;
    let window = VarSet::range(2, m.max(1))?;
    let sets: Vec<VarSet> = match set {
        Some(text) => {
            let x: VarSet = text.parse()?;
            if !x.is_subset(window) {
                return Err(Failure(format!("set {x} not contained in [2, {m}]")));
            }
            vec![x]
        }
        None => window.subsets().collect(),
    };
    let hist = if m <= COUNT_ENUMERATION_M {
        Some(statistic_histogram(m, Perm::descent_top_set)?)
    } else {
        None
    };
    let mut rows = Vec::new();
    for x in sets {
        let (formula, enumeration) = match mode {
            Mode::Exact => (
                count_exact_descents(x)?,
                hist.as_ref()
                    .map(|h| Coeff::from(h[(x.bits() >> 2) as usize])),
            ),
            Mode::Within => (
                count_descents_within(m, x)?,
                hist.as_ref().map(|h| {
                    x.subsets()
                        .map(|s| Coeff::from(h[(s.bits() >> 2) as usize]))
                        .sum()
                }),
            ),
        };
        rows.push(CountRow {
            set: x,
            formula,
            enumeration,
        });
    }
    let ok = rows
        .iter()
        .all(|r| r.enumeration.is_none_or(|e| e == r.formula));

    let mut out = String::new();
    match format {
        Format::Json => {
            for r in &rows {
                let line = json!({
                    "mode": match mode { Mode::Exact => "exact", Mode::Within => "within" },
                    "n": n,
                    "set": r.set,
                    "formula": coeff_json(r.formula),
                    "enumeration": r.enumeration.map(coeff_json),
                    "match": r.enumeration.map(|e| e == r.formula),
                });
                writeln!(out, "{line}").unwrap();
            }
        }
        Format::Text => {
            writeln!(
                out,
                "{:<24} {:>12} {:>12}  match",
                "set", "formula", "enumeration"
            )
            .unwrap();
            for r in &rows {
                let e = r.enumeration.map_or("-".to_string(), |e| e.to_string());
                let mark = r.enumeration.map_or("-", |e| yes_no(e == r.formula));
                writeln!(
                    out,
                    "{:<24} {:>12} {:>12}  {mark}",
                    r.set.to_string(),
                    r.formula,
                    e
                )
                .unwrap();
            }
        }
    }
    if list {
        if mode != Mode::Exact {
            return Err(Failure("--list is only available in exact mode".into()));
        }
        let perms = enumerate_r(n, rows[0].set)?;
        for p in &perms {
            writeln!(out, "{p}").unwrap();
        }
    }
    Ok((out, ok))
}

fn cmd_bijection(perm: &str, inverse: bool, format: Format) -> Result<String, Failure> {
    let p: Perm = perm.parse()?;
    let json = format == Format::Json;
    if inverse {
        let t = psi_inverse_trace(&p)?;
        return Ok(if json {
            serde_json::to_string(&t).expect("serializable") + "\n"
        } else {
            format!(
                "input        {}\nlifted       {}\ntau applied  {}\noutput       {}\n",
                t.input, t.lifted, t.tau_applied, t.output
            )
        });
    }
    let t = psi_forward(&p)?;
    Ok(if json {
        serde_json::to_string(&t).expect("serializable") + "\n"
    } else {
        format!(
            "input        {}\nlifted       {}\nrearranged   {}\ntau applied  {}\noutput       {}\n",
            t.input, t.lifted, t.rearranged, t.tau_applied, t.output
        )
    })
}

fn cmd_check_poly(path: &PathBuf, format: Format) -> Result<String, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    let p = poly_from_json(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    if p.is_zero() {
        return Err(Error::ZeroPolynomial.into());
    }
    let mirror = p.is_mirrorpalindromic()?;
    let searchable = p.strict_vars().len() <= MAX_PERMUTATION_SEARCH_VARS;
    let perm = if searchable {
        p.palindromic_permutation()?
    } else {
        None
    };
    Ok(match format {
        Format::Json => {
            json!({
                "multiaffine": true,
                "monomialmaximal": p.is_monomialmaximal(),
                "complete": p.is_complete(),
                "degree_complete": p.is_degree_complete(),
                "mirrorpalindromic": mirror,
                "palindromic_up_to_permutation": searchable.then_some(perm.is_some()),
                "permutation": perm,
            })
            .to_string()
                + "\n"
        }
        Format::Text => {
            let up_to = if searchable {
                match &perm {
                    Some(map) => {
                        let pairs: Vec<String> =
                            map.iter().map(|(a, b)| format!("x{a}->x{b}")).collect();
                        format!("yes ({})", pairs.join(", "))
                    }
                    None => "no".into(),
                }
            } else {
                format!("not searched (more than {MAX_PERMUTATION_SEARCH_VARS} variables)")
            };
            format!(
                "polynomial                     {p}\n\
                 multiaffine                    yes\n\
                 monomialmaximal                {}\n\
                 complete                       {}\n\
                 degree-complete                {}\n\
                 mirrorpalindromic              {}\n\
                 palindromic up to permutation  {up_to}\n",
                yes_no(p.is_monomialmaximal()),
                yes_no(p.is_complete()),
                yes_no(p.is_degree_complete()),
                yes_no(mirror),
            )
        }
    })
}

fn run(cli: Cli) -> Result<bool, Failure> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(Failure("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| Failure(e.to_string()))?;
    }
    let pick = |default| cli.format.unwrap_or(default);
    let (text, ok) = match &cli.command {
        Command::Poly { n, form } => (cmd_poly(*n, *form, pick(Format::Json))?, true),
        Command::Verify { n, which } => cmd_verify(*n, *which, pick(Format::Json))?,
        Command::Count {
            n,
            mode,
            set,
            all_subsets: _,
            list,
        } => cmd_count(*n, *mode, set.as_deref(), *list, pick(Format::Text))?,
        Command::Bijection { perm, inverse } => {
            (cmd_bijection(perm, *inverse, pick(Format::Text))?, true)
        }
        Command::CheckPoly { path } => (cmd_check_poly(path, pick(Format::Text))?, true),
    };
    match &cli.output {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
