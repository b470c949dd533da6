//! Acceptance run: one PASS/FAIL line per criterion, sub-lines for the
//! property suites. Exits non-zero if any line fails.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::sync::OnceLock;

use frob3::formulas::{
    frobenius_with, johnson_reduce, thm3_g, thm5a_g, thm5a_shortcut_deltap_gt_lambdap,
    thm5a_shortcut_lambda_gt_delta, thm5b_g, thm6b_g,
};
use frob3::oracle::{frobenius_sieve, naive_residue_minima, xset_oracle};
use frob3::params::{
    build_xset, compute_base, compute_case_params, compute_mu, Branch, CaseParams,
};
use frob3::sweep::{self, SweepReport};
use frob3::walk::{residue_minima, v_value, Walk};
use frob3::{frobenius, make_triple, Case, Int, Method};

const MAX: Int = 120;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! check {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn full_report() -> &'static SweepReport {
    static REPORT: OnceLock<SweepReport> = OnceLock::new();
    REPORT.get_or_init(|| sweep::run(&sweep::enumerate(MAX, false), 0))
}

/// Pairwise-coprime triples up to `MAX` with `ell > k`.
fn walk_triples() -> &'static [CaseParams] {
    static PARAMS: OnceLock<Vec<CaseParams>> = OnceLock::new();
    PARAMS.get_or_init(|| {
        sweep::enumerate(MAX, true)
            .iter()
            .filter(|t| {
                let base = compute_base(t).unwrap();
                base.ell > base.k
            })
            .map(|t| compute_case_params(t).unwrap())
            .collect()
    })
}

fn above_triples() -> impl Iterator<Item = &'static CaseParams> {
    walk_triples().iter().filter(|p| p.above().is_some())
}

fn triple_of(p: &CaseParams) -> (Int, Int, Int) {
    (p.a(), p.b(), p.c())
}

fn c1_oracle_agreement() -> Outcome {
    let report = full_report();
    let bad: Vec<_> = report.mismatches().take(5).map(|r| r.csv_line()).collect();
    check!(bad.is_empty(), "mismatches, first: {bad:?}");
    Ok(format!("{} triples", report.rows.len()))
}

fn c2_fake_minimum_example() -> Outcome {
    let t = make_triple(11, 15, 16).unwrap();
    let r = frobenius(&t).unwrap();
    let p = r.params.unwrap();
    check!(
        p.q == 1 && p.ell == 4 && p.r == 4,
        "q, ell, r = {}, {}, {}",
        p.q,
        p.ell,
        p.r
    );
    let (br, cq) = (p.b() * p.r, p.c() * p.q);
    check!(br == 60 && cq == 16, "br = {br}, cq = {cq}");
    let w = Walk::from_params(&p);
    check!(v_value(15, 16, 1, 0).unwrap() == 15, "v(1,0)");
    check!(v_value(15, 16, 4, 2).unwrap() == 92, "v(4,2)");
    check!(v_value(15, 16, 0, 3).unwrap() == 48, "v(0,3)");
    check!(
        w.is_local_min(1, 0).unwrap(),
        "(1,0) should be a local minimum"
    );
    check!(
        !w.is_local_min(4, 2).unwrap(),
        "(4,2) should not be a local minimum"
    );
    let (delta, next) = w.next_local_min(1, 0).unwrap();
    check!(
        (delta.rho, delta.dx, delta.dy) == (4, -1, 3),
        "delta {delta:?}"
    );
    check!((next.x, next.y, next.v) == (0, 3, 48), "next {next:?}");
    Ok("v = 15, 92 (not a minimum), 48 (next minimum)".into())
}

fn c3_mu_definition() -> Outcome {
    let mu = compute_mu(3800, 2500, 39, 22).unwrap();
    check!(mu == 4, "mu = {mu}");
    let (lhs, rhs) = (9 * 2500 / 3800, 9 * 22 / 39);
    check!(lhs == 5 && rhs == 5, "floors at i = 9: {lhs}, {rhs}");
    // the max-based alternative contains i = 9, so it is at least 9
    check!(9 > mu, "alternative would not exceed mu");
    Ok("mu = 4; alternative definition would give >= 9".into())
}

fn c4_second_regime_example() -> Outcome {
    let gens = make_triple(100, 101, 139).unwrap();
    let r = frobenius(&gens).unwrap();
    check!(r.label.case == Case::Thm5b, "case {}", r.label.case);
    let xd = r.xset.as_ref().unwrap();
    check!(xd.xs == vec![39, 17, 34, 12, 29], "xs {:?}", xd.xs);
    check!(
        xd.xhat == 12 && xd.m_index == 3 && xd.w_index == Some(1) && xd.x_mu == 29,
        "xhat/m/w/x_mu"
    );
    let gaps: BTreeSet<Int> = xd.sorted_gaps().into_iter().collect();
    check!(gaps.is_subset(&BTreeSet::from([5, 12])), "gaps {gaps:?}");
    let oracle = frobenius_sieve(&[100, 101, 139]).unwrap();
    let p = r.params.unwrap();
    let formula = thm5b_g(&p, xd).unwrap();
    check!(
        oracle == 1972 && formula == 1972 && r.g == 1972,
        "sieve {oracle}, formula {formula}, g {}",
        r.g
    );
    check!(formula + 100 == 2072, "g + a");
    Ok("g = 1972 = sieve".into())
}

fn c5_i_next_minimum() -> Outcome {
    let mut checked = 0usize;
    for p in walk_triples() {
        let w = Walk::from_params(p);
        let (a, ell) = (p.a(), p.ell);
        for x in 0..(a - ell).min(ell) {
            // the bottom row, an interior row, and the highest row with room:
            // one start for each branch of the local-minimum definition
            let mut ys = vec![0, 1];
            if let Ok((d, _)) = w.next_local_min(x, 1) {
                ys.push(a - 1 - d.dy);
            }
            for y in ys {
                if !(0..a).contains(&y) || !w.is_local_min(x, y).unwrap() {
                    continue;
                }
                let predicted = match w.next_local_min(x, y) {
                    Ok((_, s)) => s,
                    Err(frob3::Error::Precondition(_)) => continue,
                    Err(e) => return Err(format!("{:?} from ({x},{y}): {e}", triple_of(p))),
                };
                let mut found = None;
                for t in 1..a - y {
                    let nx = (x - t * ell).rem_euclid(a);
                    if w.is_local_min(nx, y + t).unwrap() {
                        found = Some((nx, y + t));
                        break;
                    }
                }
                check!(
                    found == Some((predicted.x, predicted.y)),
                    "{:?} from ({x},{y}): predicted {:?}, scan {found:?}",
                    triple_of(p),
                    (predicted.x, predicted.y)
                );
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} starts"))
}

fn c5_ii_residue_minima() -> Outcome {
    let mut classes = 0usize;
    for p in walk_triples() {
        let fast = residue_minima(p).unwrap();
        let slow = naive_residue_minima(p).unwrap();
        check!(fast == slow, "{:?}: {fast:?} vs {slow:?}", triple_of(p));
        classes += fast.len();
    }
    Ok(format!("{classes} classes"))
}

fn c5_iii_maximum_split() -> Outcome {
    let mut n = 0usize;
    for p in above_triples() {
        let u = p.above().unwrap().u;
        let m = naive_residue_minima(p).unwrap();
        let whole = *m.iter().max().unwrap();
        let low = m[..u as usize].iter().max().unwrap() + p.c() * p.q;
        let high = *m[u as usize..p.r as usize].iter().max().unwrap();
        let split = low.max(high) + p.tail().unwrap();
        check!(
            whole == split,
            "{:?}: max {whole}, split {split}",
            triple_of(p)
        );
        n += 1;
    }
    Ok(format!("{n} triples"))
}

fn c5_iv_xset() -> Outcome {
    let mut n = 0usize;
    for p in above_triples() {
        let built: BTreeSet<Int> = build_xset(p).unwrap().xs.iter().copied().collect();
        let oracle = xset_oracle(p).unwrap();
        check!(
            built == oracle,
            "{:?}: {built:?} vs {oracle:?}",
            triple_of(p)
        );
        n += 1;
    }
    Ok(format!("{n} triples"))
}

fn c5_v_xset_extremes() -> Outcome {
    let mut n = 0usize;
    for p in above_triples() {
        let x = xset_oracle(p).unwrap();
        check!(x.contains(&p.r), "{:?}: r = {} not in X", triple_of(p), p.r);
        let m = naive_residue_minima(p).unwrap();
        let first = (1..p.a()).find(|&i| m[i as usize] != p.b() * i);
        check!(
            x.first().copied() == first,
            "{:?}: min X = {:?}, first non-trivial class {first:?}",
            triple_of(p),
            x.first()
        );
        n += 1;
    }
    Ok(format!("{n} triples"))
}

fn c5_vi_minima_steps() -> Outcome {
    let mut pairs = 0usize;
    let mut exceptional = 0usize;
    for p in walk_triples() {
        let w = Walk::from_params(p);
        let (a, ell) = (p.a(), p.ell);
        for x in 0..a - ell {
            for y in [0, 1] {
                if !w.is_local_min(x, y).unwrap() {
                    continue;
                }
                // next minimum strictly inside the walk
                let Some(dy) = (1..a - 1 - y)
                    .find(|&t| w.is_local_min((x - t * ell).rem_euclid(a), y + t).unwrap())
                else {
                    continue;
                };
                let expected = if x < p.r { p.q + 1 } else { p.q };
                let multi_drop = p.q == 1 && p.r == ell;
                check!(
                    dy == expected || multi_drop,
                    "{:?} from ({x},{y}): dy = {dy}, expected {expected}",
                    triple_of(p)
                );
                exceptional += (dy != expected) as usize;
                pairs += 1;
            }
        }
    }
    Ok(format!(
        "{pairs} pairs, {exceptional} in the q = 1, r = ell case"
    ))
}

/// `br != cq`, `A != B`, and `r mod (a-ell-r) != 0`, as stated.
fn c5_vii_nondegeneracy() -> Outcome {
    let mut divisible = Vec::new();
    for p in walk_triples() {
        let (br, cq) = (p.b() * p.r, p.c() * p.q);
        check!(br != cq, "{:?}: br = cq", triple_of(p));
        if let Some(x) = p.above() {
            check!(x.big_a != x.big_b, "{:?}: A = B", triple_of(p));
            if p.r % p.s() == 0 {
                divisible.push((triple_of(p), p.s()));
            }
        }
    }
    let all_unit = divisible.iter().all(|&(_, s)| s == 1);
    check!(
        divisible.is_empty(),
        "r mod (a-ell-r) = 0 on {} br > cq triples, first {:?}; every one has a-ell-r = 1: {all_unit}",
        divisible.len(),
        divisible.first().map(|d| d.0)
    );
    Ok(format!("{} triples", walk_triples().len()))
}

fn c5_vii_offset_two_or_more() -> Outcome {
    let mut n = 0usize;
    for p in above_triples().filter(|p| p.s() >= 2) {
        check!(
            p.r % p.s() != 0,
            "{:?}: a-ell-r = {} divides r",
            triple_of(p),
            p.s()
        );
        n += 1;
    }
    Ok(format!("{n} triples with a-ell-r >= 2"))
}

fn c6_shortcuts() -> Outcome {
    let (mut lg, mut dg) = (0usize, 0usize);
    for p in walk_triples() {
        let label = frob3::params::classify_params(p);
        if label.case != Case::Thm5a {
            continue;
        }
        let general = thm5a_g(p).unwrap();
        if label.shortcuts.lambda_gt_delta {
            let s = thm5a_shortcut_lambda_gt_delta(p).unwrap();
            check!(
                s == general,
                "{:?}: Lambda > Delta form {s} vs {general}",
                triple_of(p)
            );
            lg += 1;
        }
        if label.shortcuts.deltap_gt_lambdap {
            let s = thm5a_shortcut_deltap_gt_lambdap(p).unwrap();
            check!(
                s == general,
                "{:?}: Delta' > Lambda' form {s} vs {general}",
                triple_of(p)
            );
            dg += 1;
        }
    }
    for ((a, b, c), g) in [((5, 7, 9), 13), ((11, 15, 16), 51)] {
        let p = compute_case_params(&frob3::Triple::new(a, b, c).unwrap()).unwrap();
        let forms = [
            thm5a_g(&p).unwrap(),
            thm5a_shortcut_lambda_gt_delta(&p).unwrap(),
            thm5a_shortcut_deltap_gt_lambdap(&p).unwrap(),
        ];
        check!(forms.iter().all(|&v| v == g), "({a},{b},{c}): {forms:?}");
        let gens = make_triple(a, b, c).unwrap();
        for m in [
            Method::Auto,
            Method::Formula,
            Method::Brauer,
            Method::Lemma3,
            Method::Sieve,
        ] {
            let v = frobenius_with(&gens, m).unwrap().g;
            check!(v == g, "({a},{b},{c}) {m:?}: {v}");
        }
    }
    Ok(format!("{lg} Lambda > Delta, {dg} Delta' > Lambda'"))
}

fn c7_below_examples() -> Outcome {
    let mut branches = BTreeSet::new();
    for ((a, b, c), g) in [((3, 4, 5), 2), ((7, 8, 11), 20), ((8, 9, 13), 28)] {
        let p = compute_case_params(&frob3::Triple::new(a, b, c).unwrap()).unwrap();
        let Branch::Below { lambda } = p.branch else {
            return Err(format!("({a},{b},{c}) is not in the br < cq branch"));
        };
        let first = lambda * (b * (a - p.ell) + c) >= c * (p.q - 1) - b * p.r;
        branches.insert(first);
        let v = thm3_g(&p).unwrap();
        let s = frobenius_sieve(&[a, b, c]).unwrap();
        check!(v == g && s == g, "({a},{b},{c}): formula {v}, sieve {s}");
    }
    check!(branches.len() == 2, "only one lambda branch exercised");
    Ok("both lambda branches".into())
}

fn c8_reduction() -> Outcome {
    for (gens, g) in [([4, 6, 9], 11), ([6, 10, 15], 29)] {
        let r = frobenius(&make_triple(gens[0], gens[1], gens[2]).unwrap()).unwrap();
        check!(r.g == g, "{gens:?}: g = {}", r.g);
        let red = johnson_reduce(&gens).unwrap();
        check!(!red.steps.is_empty(), "{gens:?}: empty trace");
        let mut parent = gens.to_vec();
        for step in &red.steps {
            let gp = frobenius_sieve(&parent).unwrap();
            let gc = frobenius_sieve(&step.child).unwrap();
            check!(
                gp == step.d * gc + step.third * (step.d - 1),
                "{parent:?} -> {:?}: {gp} != {} * {gc} + {} * {}",
                step.child,
                step.d,
                step.third,
                step.d - 1
            );
            parent = step.child.clone();
        }
    }
    Ok("(4,6,9) = 11, (6,10,15) = 29, every step re-verified".into())
}

fn c9_boundary_diagnostics() -> Outcome {
    let report = full_report();
    for row in &report.rows {
        if row.case == Some(Case::MuBoundary) || row.structure_violation {
            check!(row.agree, "fallback row disagrees: {}", row.csv_line());
        }
    }
    Ok(format!(
        "MU_BOUNDARY rows: {}, structure violations: {}",
        report.mu_boundary(),
        report.structure_violations
    ))
}

fn c10_dual_formula() -> Outcome {
    let mut guarded = 0usize;
    for p in walk_triples() {
        let dual = thm6b_g(p).map_err(|e| format!("{:?}: {e}", triple_of(p)))?;
        if let Some(g) = dual {
            let want = frobenius_triple_g(p);
            check!(g == want, "{:?}: dual {g}, dispatcher {want}", triple_of(p));
            guarded += 1;
        }
    }
    check!(guarded > 0, "guard never held");
    Ok(format!("{guarded} triples pass the guard"))
}

fn frobenius_triple_g(p: &CaseParams) -> Int {
    frob3::frobenius_triple(&p.triple).unwrap().g
}

fn main() {
    let criteria: [Criterion; 17] = [
        ("1 exhaustive oracle agreement", c1_oracle_agreement),
        ("2 fake minimum example (11,15,16)", c2_fake_minimum_example),
        ("3 corrected mu", c3_mu_definition),
        (
            "4 mu > floor(r/u) example (100,101,139)",
            c4_second_regime_example,
        ),
        ("5(i) next local minimum vs walk scan", c5_i_next_minimum),
        ("5(ii) m_of vs residue scan", c5_ii_residue_minima),
        (
            "5(iii) split of the class-minimum maximum",
            c5_iii_maximum_split,
        ),
        ("5(iv) build_xset vs xset_oracle", c5_iv_xset),
        ("5(v) r in X and min X", c5_v_xset_extremes),
        ("5(vi) consecutive minima steps", c5_vi_minima_steps),
        (
            "5(vii) br != cq, A != B, r mod (a-ell-r) != 0",
            c5_vii_nondegeneracy,
        ),
        (
            "5(vii) restricted to a-ell-r >= 2",
            c5_vii_offset_two_or_more,
        ),
        ("6 shortcut consistency", c6_shortcuts),
        ("7 br < cq examples", c7_below_examples),
        ("8 reduction unwinding", c8_reduction),
        ("9 boundary diagnostics", c9_boundary_diagnostics),
        ("10 dual formula cross-check", c10_dual_formula),
    ];

    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, f) in criteria {
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance line(s) failed");
        std::process::exit(1);
    }
}
