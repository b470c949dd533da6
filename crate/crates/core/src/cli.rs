//! The `frob3` command line. [`run`] takes the argument list and output
//! streams and returns the exit code, so it can be driven from tests.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::arith::Int;
use crate::error::Error;
use crate::formulas::{frobenius_with, Method};
use crate::oracle::xset_oracle;
use crate::params::{
    build_xset, compute_base, compute_case_params, make_triple, Generators, Triple,
};
use crate::render;
use crate::sweep;
use crate::walk::Walk;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "frob3",
    version,
    about = "Exact Frobenius numbers of three generators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Formula,
    Brauer,
    Lemma3,
    Sieve,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => Method::Auto,
            MethodArg::Formula => Method::Formula,
            MethodArg::Brauer => Method::Brauer,
            MethodArg::Lemma3 => Method::Lemma3,
            MethodArg::Sieve => Method::Sieve,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute g(a, b, c).
    #[command(allow_negative_numbers = true)]
    Compute {
        a: Int,
        b: Int,
        c: Int,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        explain: bool,
    },
    /// Compare the dispatcher with the sieve on every triple up to --max.
    Verify {
        #[arg(long, default_value_t = 120)]
        max: Int,
        #[arg(long)]
        pairwise_only: bool,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// CSV report path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Check a seeded random sample instead of every triple.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1000, requires = "seed")]
        samples: usize,
    },
    /// Print the residue walk from class x.
    #[command(allow_negative_numbers = true)]
    Trace {
        a: Int,
        b: Int,
        c: Int,
        #[arg(long = "x")]
        x: Int,
    },
    /// Print the X-set next to the brute-force one.
    #[command(allow_negative_numbers = true)]
    Xset { a: Int, b: Int, c: Int },
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Compute {
            a,
            b,
            c,
            method,
            json,
            explain,
        } => compute(a, b, c, method.into(), json, explain, out),
        Command::Verify {
            max,
            pairwise_only,
            jobs,
            out: path,
            seed,
            samples,
        } => verify(
            max,
            pairwise_only,
            jobs,
            path,
            seed.map(|s| (s, samples)),
            out,
        ),
        Command::Trace { a, b, c, x } => trace(a, b, c, x, out),
        Command::Xset { a, b, c } => xset(a, b, c, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Input(_)
            | Error::Precondition(_)
            | Error::SieveTooLarge { .. }
            | Error::Arith(_) => EXIT_USAGE,
            Error::Structure(_) | Error::Invariant(_) => EXIT_MISMATCH,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(format!("i/o: {e}"))
    }
}

type CmdResult = std::result::Result<i32, Failure>;

fn compute(
    a: Int,
    b: Int,
    c: Int,
    method: Method,
    json: bool,
    explain: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let gens = make_triple(a, b, c).map_err(Error::from)?;
    let r = frobenius_with(&gens, method)?;
    if json {
        writeln!(out, "{}", render::to_json(&r))?;
    } else if explain {
        write!(out, "{}", render::explain(&r))?;
    } else {
        writeln!(out, "{}", r.g)?;
        writeln!(out, "case: {}", r.label.case)?;
    }
    Ok(EXIT_OK)
}

fn verify(
    max: Int,
    pairwise_only: bool,
    jobs: usize,
    path: Option<PathBuf>,
    sampled: Option<(u64, usize)>,
    out: &mut dyn Write,
) -> CmdResult {
    if max < 2 {
        return Err(Failure::usage(format!(
            "--max must be at least 2, got {max}"
        )));
    }
    if max > crate::arith::MAX_GENERATOR {
        return Err(Failure::usage(format!(
            "--max {max} exceeds the cap 2^31-1"
        )));
    }
    let triples = match sampled {
        Some((seed, samples)) => sweep::sample(max, pairwise_only, samples, seed),
        None => sweep::enumerate(max, pairwise_only),
    };
    let report = sweep::run(&triples, jobs);
    if let Some(path) = path {
        report.write_csv(BufWriter::new(File::create(&path)?))?;
    }
    writeln!(out, "{}", report.summary())?;
    for row in report.mismatches().take(20) {
        let detail = row.error.as_deref().unwrap_or("");
        writeln!(
            out,
            "MISMATCH ({}, {}, {}): formula {:?} oracle {:?} {}",
            row.a, row.b, row.c, row.g_formula, row.g_oracle, detail
        )?;
    }
    Ok(if report.all_agree() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    })
}

/// Strict pairwise-coprime triple for the walk-level commands.
fn coprime_triple(a: Int, b: Int, c: Int) -> std::result::Result<Triple, Failure> {
    match make_triple(a, b, c).map_err(Error::from)? {
        Generators::Triple(t) if t.pairwise_coprime() => Ok(t),
        _ => Err(Failure::usage(format!(
            "({a}, {b}, {c}) is not three distinct pairwise coprime values"
        ))),
    }
}

fn trace(a: Int, b: Int, c: Int, x: Int, out: &mut dyn Write) -> CmdResult {
    let t = coprime_triple(a, b, c)?;
    let base = compute_base(&t)?;
    if base.ell <= base.k {
        return Err(Failure::usage(format!(
            "ell = {} <= k = {}: g is Sylvester's g(a, b) and there is no walk",
            base.ell, base.k
        )));
    }
    let p = compute_case_params(&t)?;
    let mut tr = Walk::from_params(&p).trace(x)?;
    tr.mark_fake_minima(&p);
    writeln!(
        out,
        "# {t}: k = {}, ell = {}, q = {}, r = {}",
        p.k, p.ell, p.q, p.r
    )?;
    writeln!(out, "t\tx\ty\tv\tmin")?;
    for row in &tr.rows {
        let flag = match (row.is_min, row.fake) {
            (true, _) => "min",
            (false, true) => "fake",
            _ => "",
        };
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}",
            row.t, row.state.x, row.state.y, row.state.v, flag
        )?;
    }
    Ok(EXIT_OK)
}

fn join(xs: impl IntoIterator<Item = Int>) -> String {
    xs.into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn xset(a: Int, b: Int, c: Int, out: &mut dyn Write) -> CmdResult {
    let t = coprime_triple(a, b, c)?;
    let base = compute_base(&t)?;
    if base.ell <= base.k {
        return Err(Failure::usage("ell <= k: the X-set is not defined"));
    }
    let p = compute_case_params(&t)?;
    let Some(above) = p.above() else {
        return Err(Failure::usage(format!(
            "br = {} < cq = {}: the X-set is only defined when br > cq",
            p.b() * p.r,
            p.c() * p.q
        )));
    };
    let oracle = xset_oracle(&p)?;
    writeln!(
        out,
        "# {t}: q = {}, r = {}, u = {}, mu = {}",
        p.q, p.r, above.u, above.mu
    )?;
    writeln!(out, "oracle X: {{{}}}", join(oracle.iter().copied()))?;
    let xd = match build_xset(&p) {
        Ok(xd) => xd,
        Err(Error::Structure(v)) => {
            writeln!(out, "structure violation: {v}")?;
            return Ok(EXIT_MISMATCH);
        }
        Err(e) => return Err(e.into()),
    };
    writeln!(out, "xs: {}", join(xd.xs.iter().copied()))?;
    writeln!(out, "ys: {}", join(xd.ys.iter().copied()))?;
    writeln!(out, "xhat: {}", xd.xhat)?;
    writeln!(out, "m: {}", xd.m_index)?;
    writeln!(
        out,
        "w: {}",
        xd.w_index.map_or("none".to_string(), |w| w.to_string())
    )?;
    writeln!(out, "x_mu: {}", xd.x_mu)?;
    let gaps = xd.sorted_gaps();
    let mut distinct = gaps.clone();
    distinct.sort_unstable();
    distinct.dedup();
    writeln!(out, "sorted gaps: {}", join(gaps))?;
    writeln!(out, "gap values: {{{}}}", join(distinct))?;
    writeln!(out, "gap1 = {}, gap2 = {}", xd.gap1, xd.gap2)?;
    let same = xd.set().len() == oracle.len() && oracle.iter().all(|x| xd.set().contains(x));
    writeln!(out, "matches oracle: {same}")?;
    Ok(if same { EXIT_OK } else { EXIT_MISMATCH })
}
