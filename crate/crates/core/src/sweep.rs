//! Exhaustive and sampled agreement sweeps of the dispatcher against the sieve.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{self, Write};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::arith::{gcd, Int};
use crate::formulas::{frobenius_triple, Fallback};
use crate::oracle::frobenius_sieve;
use crate::params::{Case, Triple};

pub const CSV_HEADER: &str = "a,b,c,g_formula,g_oracle,case,shortcuts,mu,floor_r_u,agree";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub a: Int,
    pub b: Int,
    pub c: Int,
    /// `None` when the engine returned an error.
    pub g_formula: Option<Int>,
    pub g_oracle: Option<Int>,
    pub case: Option<Case>,
    pub shortcuts: Vec<&'static str>,
    pub mu: Option<Int>,
    pub floor_r_u: Option<Int>,
    pub structure_violation: bool,
    pub agree: bool,
    pub error: Option<String>,
}

impl SweepRow {
    pub fn triple(&self) -> (Int, Int, Int) {
        (self.a, self.b, self.c)
    }

    pub fn csv_line(&self) -> String {
        fn opt(v: Option<Int>) -> String {
            v.map_or_else(String::new, |x| x.to_string())
        }
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.a,
            self.b,
            self.c,
            opt(self.g_formula),
            opt(self.g_oracle),
            self.case.map_or("ERROR", |c| c.label()),
            self.shortcuts.join("|"),
            opt(self.mu),
            opt(self.floor_r_u),
            self.agree
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub case_counts: BTreeMap<Case, usize>,
    pub structure_violations: usize,
}

impl SweepReport {
    fn from_rows(rows: Vec<SweepRow>) -> Self {
        let mut case_counts = BTreeMap::new();
        let mut structure_violations = 0;
        for row in &rows {
            if let Some(c) = row.case {
                *case_counts.entry(c).or_insert(0) += 1;
            }
            structure_violations += row.structure_violation as usize;
        }
        SweepReport {
            rows,
            case_counts,
            structure_violations,
        }
    }

    pub fn count(&self, case: Case) -> usize {
        self.case_counts.get(&case).copied().unwrap_or(0)
    }

    pub fn mu_boundary(&self) -> usize {
        self.count(Case::MuBoundary)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &SweepRow> {
        self.rows.iter().filter(|r| !r.agree)
    }

    pub fn all_agree(&self) -> bool {
        self.rows.iter().all(|r| r.agree)
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{CSV_HEADER}")?;
        for row in &self.rows {
            writeln!(out, "{}", row.csv_line())?;
        }
        out.flush()
    }

    /// One line per case, then the boundary and mismatch totals.
    pub fn summary(&self) -> String {
        let mut lines = vec![format!("triples: {}", self.rows.len())];
        for case in Case::ALL {
            lines.push(format!("{}: {}", case, self.count(case)));
        }
        lines.push(format!(
            "structure violations: {}",
            self.structure_violations
        ));
        lines.push(format!(
            "errors: {}",
            self.rows.iter().filter(|r| r.error.is_some()).count()
        ));
        lines.push(format!("mismatches: {}", self.mismatches().count()));
        lines.join("\n")
    }
}

fn gcd3(a: Int, b: Int, c: Int) -> Int {
    gcd(gcd(a, b).expect("positive"), c).expect("positive")
}

fn admissible(a: Int, b: Int, c: Int, pairwise_only: bool) -> bool {
    if pairwise_only {
        gcd(a, b) == Ok(1) && gcd(a, c) == Ok(1) && gcd(b, c) == Ok(1)
    } else {
        gcd3(a, b, c) == 1
    }
}

/// Every `2 <= a < b < c <= max` with `gcd(a, b, c) = 1` (or pairwise
/// coprime), in lexicographic order.
pub fn enumerate(max: Int, pairwise_only: bool) -> Vec<Triple> {
    let mut out = Vec::new();
    for c in 4..=max {
        for b in 3..c {
            for a in 2..b {
                if admissible(a, b, c, pairwise_only) {
                    out.push(Triple::from_sorted(a, b, c));
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Up to `samples` distinct admissible triples with `c <= max`, drawn from a
/// seeded generator and returned in lexicographic order.
pub fn sample(max: Int, pairwise_only: bool, samples: usize, seed: u64) -> Vec<Triple> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut picked = BTreeSet::new();
    if max < 4 {
        return Vec::new();
    }
    let attempts = samples.saturating_mul(50).max(1000);
    for _ in 0..attempts {
        if picked.len() >= samples {
            break;
        }
        let mut v = [
            rng.gen_range(2..=max),
            rng.gen_range(2..=max),
            rng.gen_range(2..=max),
        ];
        v.sort_unstable();
        let [a, b, c] = v;
        if a < b && b < c && admissible(a, b, c, pairwise_only) {
            picked.insert(Triple::from_sorted(a, b, c));
        }
    }
    picked.into_iter().collect()
}

/// Dispatcher vs sieve on one triple.
pub fn check(t: &Triple) -> SweepRow {
    let [a, b, c] = t.values();
    let oracle = frobenius_sieve(&[a, b, c]);
    let engine = frobenius_triple(t);
    let mut row = SweepRow {
        a,
        b,
        c,
        g_formula: None,
        g_oracle: oracle.as_ref().ok().copied(),
        case: None,
        shortcuts: Vec::new(),
        mu: None,
        floor_r_u: None,
        structure_violation: false,
        agree: false,
        error: oracle.as_ref().err().map(|e| format!("oracle: {e}")),
    };
    match engine {
        Ok(r) => {
            row.g_formula = Some(r.g);
            row.case = Some(r.label.case);
            row.shortcuts = r.label.shortcuts.names();
            row.mu = r.params.as_ref().and_then(|p| p.above().map(|x| x.mu));
            row.floor_r_u = r.params.as_ref().and_then(|p| p.floor_r_u());
            row.structure_violation = matches!(r.fallback, Some(Fallback::Structure(_)));
        }
        Err(e) => row.error = Some(format!("engine: {e}")),
    }
    row.agree = row.g_formula.is_some() && row.g_formula == row.g_oracle;
    row
}

/// Checks every triple on a pool of `jobs` threads (0 = rayon default).
/// Rows come back in input order whatever the thread count.
pub fn run(triples: &[Triple], jobs: usize) -> SweepReport {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    let rows = pool.install(|| triples.par_iter().map(check).collect());
    SweepReport::from_rows(rows)
}
