//! Closed forms for `g(a, b, c)` and the dispatcher that picks one.

use serde::Serialize;

use crate::arith::{add, floor_div, gcd, modulo, mul, sub, Int};
use crate::error::{precondition, Error, Result, StructureViolation};
use crate::oracle::frobenius_sieve;
use crate::params::{
    build_xset, classify_params, compute_base, compute_case_params, dual_params, Base, Branch,
    Case, CaseLabel, CaseParams, Generators, Triple, XSetData,
};
use crate::walk::{brauer_shockley_g, lemma3_g, Walk};

/// `ab - a - b`; `-1` when either value is 1.
pub fn sylvester_g(a: Int, b: Int) -> Result<Int> {
    if a < 1 || b < 1 {
        return Err(precondition("Sylvester's formula needs positive arguments"));
    }
    if gcd(a, b)? != 1 {
        return Err(precondition(format!("gcd({a}, {b}) != 1")));
    }
    Ok(sub(sub(mul(a, b)?, a)?, b)?)
}

/// One Johnson step: `d = gcd(pair)`, both members divided by `d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    #[serde(skip)]
    pub pair: (Int, Int),
    pub d: Int,
    pub third: Int,
    #[serde(skip)]
    pub child: Vec<Int>,
}

impl ReductionStep {
    /// `g_parent = d * g_child + third * (d - 1)`.
    pub fn lift(&self, g_child: Int) -> Result<Int> {
        Ok(add(mul(self.d, g_child)?, mul(self.third, self.d - 1)?)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    /// Sorted, distinct generators left after reduction: pairwise coprime,
    /// or containing 1.
    pub core: Vec<Int>,
    pub steps: Vec<ReductionStep>,
}

impl Reduction {
    /// Lifts the core's Frobenius number back to the original generators.
    pub fn unwind(&self, g_core: Int) -> Result<Int> {
        self.steps.iter().rev().try_fold(g_core, |g, s| s.lift(g))
    }

    pub fn is_degenerate(&self) -> bool {
        self.core.contains(&1)
    }
}

fn normalize(mut v: Vec<Int>) -> Vec<Int> {
    v.sort_unstable();
    v.dedup();
    v
}

/// Divides out shared factors pair by pair until the set is pairwise coprime
/// or contains 1. The pair with the largest gcd goes first; ties go to the
/// lexicographically first pair.
pub fn johnson_reduce(gens: &[Int]) -> Result<Reduction> {
    let mut cur = normalize(gens.to_vec());
    if cur.iter().any(|&g| g < 1) {
        return Err(precondition("generators must be positive"));
    }
    let total = cur.iter().try_fold(0, |acc, &x| gcd(acc, x))?;
    if total != 1 {
        return Err(precondition(format!("gcd of the generators is {total}")));
    }
    let mut steps = Vec::new();
    while !cur.contains(&1) && cur.len() == 3 {
        let mut best: Option<(Int, usize, usize)> = None;
        for i in 0..3 {
            for j in i + 1..3 {
                let d = gcd(cur[i], cur[j])?;
                if d > 1 && best.is_none_or(|(bd, _, _)| d > bd) {
                    best = Some((d, i, j));
                }
            }
        }
        let Some((d, i, j)) = best else { break };
        let third = cur[3 - i - j];
        let child = normalize(vec![cur[i] / d, cur[j] / d, third]);
        steps.push(ReductionStep {
            pair: (cur[i], cur[j]),
            d,
            third,
            child: child.clone(),
        });
        cur = child;
    }
    Ok(Reduction { core: cur, steps })
}

/// `br < cq`.
pub fn thm3_g(p: &CaseParams) -> Result<Int> {
    let Branch::Below { lambda } = p.branch else {
        return Err(precondition("thm3_g needs br < cq"));
    };
    let (a, b, c) = (p.a(), p.b(), p.c());
    let step = p.step();
    let slope = add(mul(b, step)?, c)?;
    let threshold = sub(mul(c, p.q - 1)?, mul(b, p.r)?)?;
    let g_plus_a = if mul(lambda, slope)? >= threshold {
        mul(b, (lambda + 1) * step + p.r - 1)?
    } else {
        add(mul(b, step - 1)?, mul(c, p.q - lambda - 1)?)?
    };
    Ok(sub(g_plus_a, a)?)
}

fn require_thm5a(p: &CaseParams) -> Result<&crate::params::AboveParams> {
    let x = p.above().ok_or_else(|| precondition("needs br > cq"))?;
    if x.mu >= p.r / x.u {
        return Err(precondition(format!(
            "needs mu < floor(r/u), have mu = {} and floor(r/u) = {}",
            x.mu,
            p.r / x.u
        )));
    }
    Ok(x)
}

/// `br > cq` and `mu < floor(r/u)`.
pub fn thm5a_g(p: &CaseParams) -> Result<Int> {
    let x = require_thm5a(p)?;
    let (a, b, c, q, r) = (p.a(), p.b(), p.c(), p.q, p.r);
    let drops = floor_div(mul(p.s(), x.mu)?, r)? + 1;
    let left = mul(b, r - x.mu * x.u - 1)?;
    let right = add(
        mul(b, x.u - 1)?,
        mul(c, add(mul(x.mu, q + 1)?, mul(drops, q)?)?)?,
    )?;
    Ok(sub(add(left.max(right), p.tail()?)?, a)?)
}

/// The `Lambda > Delta` form of [`thm5a_g`].
pub fn thm5a_shortcut_lambda_gt_delta(p: &CaseParams) -> Result<Int> {
    let x = p.above().ok_or_else(|| precondition("needs br > cq"))?;
    if x.big_lambda <= x.delta {
        return Err(precondition("needs Lambda > Delta"));
    }
    let (a, b, c, q, r) = (p.a(), p.b(), p.c(), p.q, p.r);
    let s = p.s();
    let left = mul(b, sub(r, mul(x.delta, s)?)? - 1)?;
    let right = add(mul(b, s - 1)?, mul(c, add(mul(x.delta, q + 1)?, q)?)?)?;
    Ok(sub(add(left.max(right), mul(c, q)?)?, a)?)
}

/// The `Delta' > Lambda'` form of [`thm5a_g`].
pub fn thm5a_shortcut_deltap_gt_lambdap(p: &CaseParams) -> Result<Int> {
    let x = p.above().ok_or_else(|| precondition("needs br > cq"))?;
    if x.delta_p <= x.lambda_p {
        return Err(precondition("needs Delta' > Lambda'"));
    }
    let (a, b, c, q, r) = (p.a(), p.b(), p.c(), p.q, p.r);
    let left = mul(b, r - 1)?;
    let right = add(mul(b, modulo(p.step() - 1, r)?)?, mul(c, q)?)?;
    Ok(sub(add(left.max(right), p.tail()?)?, a)?)
}

/// `br > cq` and `mu > floor(r/u)`. `x_{m-1}` is taken in generation order.
pub fn thm5b_g(p: &CaseParams, xd: &XSetData) -> Result<Int> {
    let x = p.above().ok_or_else(|| precondition("needs br > cq"))?;
    if x.mu <= p.r / x.u {
        return Err(precondition("needs mu > floor(r/u)"));
    }
    let m = xd.m_index;
    if m == 0 {
        return Err(StructureViolation::MinimumAtZero.into());
    }
    let w = xd.w_index.ok_or(StructureViolation::NoW)?;
    let (a, b, c) = (p.a(), p.b(), p.c());
    let left = add(mul(b, xd.xhat - 1)?, mul(c, xd.ys[w])?)?;
    let right = add(
        mul(b, xd.xs[m - 1] - xd.x_mu - 1)?,
        mul(c, *xd.ys.last().expect("non-empty"))?,
    )?;
    Ok(sub(add(left.max(right), p.tail()?)?, a)?)
}

/// The dual formula, or `None` when its guard fails: dual quantities
/// undefined, `mubar <= floor((ell - rbar)/ubar)`, dual minimum at index 0,
/// or no dual `w`.
pub fn thm6b_g(p: &CaseParams) -> Result<Option<Int>> {
    let Some(d) = dual_params(p)? else {
        return Ok(None);
    };
    let width = d.width(p.ell);
    if d.mubar <= width / d.ubar {
        return Ok(None);
    }
    let m = d.seq.m_index;
    let Some(w) = d.seq.w_index else {
        return Ok(None);
    };
    if m == 0 {
        return Ok(None);
    }
    let (a, b, c) = (p.a(), p.b(), p.c());
    let xs = &d.seq.xs;
    let ys = &d.seq.ys;
    let x_last = *xs.last().expect("non-empty");
    let y_last = *ys.last().expect("non-empty");
    let left = add(mul(b, d.seq.xhat - 1)?, mul(c, ys[w])?)?;
    let right = add(mul(b, xs[m - 1] - x_last - 1)?, mul(c, y_last)?)?;
    let tail = mul(c, mul(d.qbar + 1, floor_div(p.ell - 1, width)?)? - 2)?;
    Ok(Some(sub(add(left.max(right), tail)?, a)?))
}

/// How the caller wants `g` evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Closed form, falling back to the residue recursion where no formula
    /// applies.
    #[default]
    Auto,
    /// Closed form only; uncovered cases are errors.
    Formula,
    Brauer,
    Lemma3,
    Sieve,
}

/// What actually produced `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Evaluator {
    Formula,
    Brauer,
    Sieve,
    Lemma3,
}

impl Evaluator {
    pub fn name(&self) -> &'static str {
        match self {
            Evaluator::Formula => "formula",
            Evaluator::Brauer => "brauer",
            Evaluator::Sieve => "sieve",
            Evaluator::Lemma3 => "lemma3",
        }
    }
}

/// Why the auto method left the closed forms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Fallback {
    #[serde(rename = "mu_boundary")]
    MuBoundary,
    #[serde(rename = "structure_violation")]
    Structure(#[serde(skip)] StructureViolation),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrobeniusResult {
    /// Input generators, sorted and distinct.
    pub generators: Vec<Int>,
    pub g: Int,
    pub label: CaseLabel,
    pub base: Option<Base>,
    pub params: Option<CaseParams>,
    pub xset: Option<XSetData>,
    pub reduction: Vec<ReductionStep>,
    /// Generators after reduction.
    pub core: Vec<Int>,
    pub method: Evaluator,
    pub fallback: Option<Fallback>,
}

pub fn frobenius(gens: &Generators) -> Result<FrobeniusResult> {
    frobenius_with(gens, Method::Auto)
}

pub fn frobenius_triple(t: &Triple) -> Result<FrobeniusResult> {
    frobenius_with(&Generators::Triple(*t), Method::Auto)
}

struct CoreAnswer {
    g: Int,
    label: CaseLabel,
    base: Option<Base>,
    params: Option<CaseParams>,
    xset: Option<XSetData>,
    method: Evaluator,
    fallback: Option<Fallback>,
}

fn formula_answer(case: Case, base: Base, g: Int) -> CoreAnswer {
    CoreAnswer {
        g,
        label: CaseLabel::plain(case),
        base: Some(base),
        params: None,
        xset: None,
        method: Evaluator::Formula,
        fallback: None,
    }
}

/// Dispatch on a pairwise-coprime triple.
fn solve_core_triple(t: &Triple, method: Method) -> Result<CoreAnswer> {
    let base = compute_base(t)?;
    if base.ell <= base.k {
        if matches!(method, Method::Brauer | Method::Lemma3) {
            return Err(precondition(format!(
                "ell = {} <= k = {}: the residue walk evaluators need ell > k",
                base.ell, base.k
            )));
        }
        return Ok(formula_answer(
            Case::Sylvester,
            base,
            sylvester_g(t.a(), t.b())?,
        ));
    }
    let p = compute_case_params(t)?;
    let label = classify_params(&p);
    let xset = match p.branch {
        Branch::Above(_) => match build_xset(&p) {
            Ok(x) => Some(Ok(x)),
            Err(Error::Structure(v)) => Some(Err(v)),
            Err(e) => return Err(e),
        },
        Branch::Below { .. } => None,
    };
    let mut answer = CoreAnswer {
        g: 0,
        label,
        base: Some(base),
        params: Some(p),
        xset: xset.clone().and_then(|x| x.ok()),
        method: Evaluator::Formula,
        fallback: None,
    };
    match method {
        Method::Brauer => {
            answer.g = brauer_shockley_g(&p)?;
            answer.method = Evaluator::Brauer;
            return Ok(answer);
        }
        Method::Lemma3 => {
            answer.g = lemma3_g(&Walk::from_params(&p))?;
            answer.method = Evaluator::Lemma3;
            return Ok(answer);
        }
        Method::Auto | Method::Formula | Method::Sieve => {}
    }
    let fallback = match (label.case, &xset) {
        (Case::Thm3, _) => {
            answer.g = thm3_g(&p)?;
            None
        }
        (Case::Thm5a, _) => {
            answer.g = thm5a_g(&p)?;
            None
        }
        (Case::Thm5b, Some(Ok(xd))) => {
            answer.g = thm5b_g(&p, xd)?;
            None
        }
        (Case::Thm5b, Some(Err(v))) => Some(Fallback::Structure(v.clone())),
        (Case::MuBoundary, _) => Some(Fallback::MuBoundary),
        (case, _) => {
            return Err(Error::Invariant(format!("unexpected case {case} for {t}")));
        }
    };
    if let Some(fb) = fallback {
        if method == Method::Formula {
            return Err(match fb {
                Fallback::Structure(v) => v.into(),
                Fallback::MuBoundary => precondition(format!(
                    "mu = floor(r/u) for {t}: no closed form covers this case"
                )),
            });
        }
        answer.g = brauer_shockley_g(&p)?;
        answer.method = Evaluator::Brauer;
        answer.fallback = Some(fb);
    }
    Ok(answer)
}

/// Reduces, dispatches on the core, and lifts the answer back.
pub fn frobenius_with(gens: &Generators, method: Method) -> Result<FrobeniusResult> {
    let generators = gens.values();
    let reduction = johnson_reduce(&generators)?;
    let core = reduction.core.clone();
    let mut answer = if reduction.is_degenerate() {
        if matches!(method, Method::Brauer | Method::Lemma3) {
            return Err(precondition("the reduced generators contain 1"));
        }
        CoreAnswer {
            g: -1,
            label: CaseLabel::plain(Case::Degenerate),
            base: None,
            params: None,
            xset: None,
            method: Evaluator::Formula,
            fallback: None,
        }
    } else if let [x, y] = core[..] {
        if matches!(method, Method::Brauer | Method::Lemma3) {
            return Err(precondition("the reduced generators form a pair"));
        }
        CoreAnswer {
            g: sylvester_g(x, y)?,
            label: CaseLabel::plain(Case::Sylvester),
            base: None,
            params: None,
            xset: None,
            method: Evaluator::Formula,
            fallback: None,
        }
    } else {
        let t = Triple::from_sorted(core[0], core[1], core[2]);
        solve_core_triple(&t, method)?
    };
    let g = if method == Method::Sieve {
        answer.method = Evaluator::Sieve;
        answer.fallback = None;
        frobenius_sieve(&generators)?
    } else {
        reduction.unwind(answer.g)?
    };
    Ok(FrobeniusResult {
        generators,
        g,
        label: answer.label,
        base: answer.base,
        params: answer.params,
        xset: answer.xset,
        reduction: reduction.steps,
        core,
        method: answer.method,
        fallback: answer.fallback,
    })
}
