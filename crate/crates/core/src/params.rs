//! Derived quantities for a pairwise-coprime triple `a < b < c`.
//!
//! The case analysis starts from `k = c div b` and `ell = c * b^-1 mod a`.
//! When `ell <= k` the third generator is redundant. Otherwise the residue
//! walk of step `a - ell` splits `a = q(a - ell) + r`, and the sign of
//! `br - cq` picks between the single-drop regime (`lambda`) and the X-set
//! regime (`A`, `B`, `mu` and friends).

use std::collections::HashSet;

use serde::Serialize;

use crate::arith::{self, add, floor_div, gcd, mod_inverse, modulo, mul, sub, Int, MAX_GENERATOR};
use crate::error::{ensure_invariant, precondition, InputError, Result, StructureViolation};

/// Three distinct generators, sorted, with `gcd(a, b, c) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Triple {
    a: Int,
    b: Int,
    c: Int,
}

impl Triple {
    /// Sorts the arguments and validates them. All three must be distinct and
    /// at least 2.
    pub fn new(x: Int, y: Int, z: Int) -> Result<Self, InputError> {
        match make_triple(x, y, z)? {
            Generators::Triple(t) => Ok(t),
            Generators::Pair(..) => Err(InputError::NotThreeDistinct),
        }
    }

    pub fn a(&self) -> Int {
        self.a
    }

    pub fn b(&self) -> Int {
        self.b
    }

    pub fn c(&self) -> Int {
        self.c
    }

    pub fn values(&self) -> [Int; 3] {
        [self.a, self.b, self.c]
    }

    pub fn pairwise_coprime(&self) -> bool {
        let g = |x, y| gcd(x, y).unwrap_or(0);
        g(self.a, self.b) == 1 && g(self.a, self.c) == 1 && g(self.b, self.c) == 1
    }

    /// Builds a triple from already sorted, distinct values without the input
    /// checks. Used after Johnson reduction, where the values are known good.
    pub(crate) fn from_sorted(a: Int, b: Int, c: Int) -> Self {
        debug_assert!(2 <= a && a < b && b < c);
        Triple { a, b, c }
    }
}

impl std::fmt::Display for Triple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// A validated generating set: duplicates collapse, so two values may remain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Generators {
    Pair(Int, Int),
    Triple(Triple),
}

impl Generators {
    pub fn values(&self) -> Vec<Int> {
        match *self {
            Generators::Pair(a, b) => vec![a, b],
            Generators::Triple(t) => t.values().to_vec(),
        }
    }
}

/// Validates user input: sorts, drops duplicates, and rejects zero, one,
/// values over the cap and sets whose gcd is not 1.
pub fn make_triple(x: Int, y: Int, z: Int) -> Result<Generators, InputError> {
    let mut v = [x, y, z];
    for &g in &v {
        if g <= 0 {
            return Err(InputError::NonPositive(g));
        }
        if g > MAX_GENERATOR {
            return Err(InputError::TooLarge(g));
        }
    }
    if v.contains(&1) {
        return Err(InputError::Unit);
    }
    v.sort_unstable();
    let mut distinct: Vec<Int> = v.to_vec();
    distinct.dedup();
    let g = distinct
        .iter()
        .fold(0, |acc, &x| gcd(acc, x).expect("positive inputs"));
    if distinct.len() < 2 {
        return Err(InputError::TooFewDistinct);
    }
    if g != 1 {
        return Err(InputError::GcdNotOne(g));
    }
    Ok(match distinct[..] {
        [a, b] => Generators::Pair(a, b),
        [a, b, c] => Generators::Triple(Triple { a, b, c }),
        _ => unreachable!(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Base {
    pub k: Int,
    pub ell: Int,
}

pub fn compute_base(t: &Triple) -> Result<Base> {
    if !t.pairwise_coprime() {
        return Err(precondition(format!("{t} is not pairwise coprime")));
    }
    let k = floor_div(t.c, t.b)?;
    let ell = modulo(mul(t.c, mod_inverse(t.b, t.a)?)?, t.a)?;
    ensure_invariant!((1..t.a).contains(&ell), "ell = {ell} outside 1..{}", t.a);
    Ok(Base { k, ell })
}

/// Quantities of the `br > cq` regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AboveParams {
    pub u: Int,
    pub big_a: Int,
    pub big_b: Int,
    pub big_lambda: Int,
    pub delta: Int,
    pub lambda_p: Int,
    pub delta_p: Int,
    pub mu: Int,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    /// `br < cq`.
    Below { lambda: Int },
    /// `br > cq`.
    Above(AboveParams),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CaseParams {
    pub triple: Triple,
    pub k: Int,
    pub ell: Int,
    pub q: Int,
    pub r: Int,
    pub branch: Branch,
}

impl CaseParams {
    pub fn a(&self) -> Int {
        self.triple.a
    }

    pub fn b(&self) -> Int {
        self.triple.b
    }

    pub fn c(&self) -> Int {
        self.triple.c
    }

    /// `a - ell`, the walk step.
    pub fn step(&self) -> Int {
        self.a() - self.ell
    }

    /// `a - ell - r`, the x-offset of an up-step.
    pub fn s(&self) -> Int {
        self.a() - self.ell - self.r
    }

    pub fn above(&self) -> Option<&AboveParams> {
        match &self.branch {
            Branch::Above(p) => Some(p),
            Branch::Below { .. } => None,
        }
    }

    pub fn lambda(&self) -> Option<Int> {
        match self.branch {
            Branch::Below { lambda } => Some(lambda),
            Branch::Above(_) => None,
        }
    }

    /// `floor(r / u)`, only defined when `br > cq`.
    pub fn floor_r_u(&self) -> Option<Int> {
        self.above().map(|p| self.r / p.u)
    }

    /// `cq * floor((a - ell - 1) / r)`, the additive tail shared by the
    /// `br > cq` formulas.
    pub fn tail(&self) -> Result<Int> {
        let reps = floor_div(self.step() - 1, self.r)?;
        Ok(mul(mul(self.c(), self.q)?, reps)?)
    }
}

/// Derives every parameter of the `ell > k` regime and checks the structural
/// facts the formulas rely on. A failed check is an engine bug, never bad
/// input.
pub fn compute_case_params(t: &Triple) -> Result<CaseParams> {
    let Base { k, ell } = compute_base(t)?;
    if ell <= k {
        return Err(precondition(format!(
            "ell = {ell} <= k = {k}; the Sylvester case has no case parameters"
        )));
    }
    let (a, b, c) = (t.a, t.b, t.c);
    ensure_invariant!(sub(c, mul(b, ell)?)? < 0, "c - b*ell >= 0 with ell > k");
    ensure_invariant!(gcd(a, ell)? == 1, "gcd(a, ell) != 1");

    let step = a - ell;
    let q = floor_div(a, step)?;
    let r = a - q * step;
    ensure_invariant!((0..step).contains(&r), "r = {r} outside 0..{step}");
    ensure_invariant!(
        r <= ell && modulo(r - ell, step)? == 0,
        "r not congruent to ell"
    );

    let br = mul(b, r)?;
    let cq = mul(c, q)?;
    ensure_invariant!(br != cq, "br == cq");

    let branch = if br < cq {
        ensure_invariant!(
            r < ell && step <= ell,
            "br < cq without r < ell and a - ell <= ell"
        );
        let lambda = floor_div(cq - br, add(mul(b, step)?, c)?)?;
        Branch::Below { lambda }
    } else {
        let s = step - r;
        ensure_invariant!(r >= 1 && s >= 1, "br > cq with r = {r}, a - ell - r = {s}");
        let u = modulo(step, r)?;
        ensure_invariant!(1 <= u && u < r, "u = {u} outside 1..{r}");
        let big_a = br - cq;
        let big_b = add(mul(b, s)?, mul(c, q + 1)?)?;
        ensure_invariant!(big_a > 0 && big_b > 0, "A = {big_a}, B = {big_b}");
        ensure_invariant!(big_a != big_b, "A == B");
        // a - ell - r = 1 divides everything; the non-divisibility fact only
        // holds from 2 on
        ensure_invariant!(s == 1 || r % s != 0, "a - ell - r = {s} divides r = {r}");
        let mu = compute_mu(big_a, big_b, r, s)?;
        Branch::Above(AboveParams {
            u,
            big_a,
            big_b,
            big_lambda: r / s,
            delta: big_a / big_b,
            lambda_p: s / r,
            delta_p: big_b / big_a,
            mu,
        })
    };
    Ok(CaseParams {
        triple: *t,
        k,
        ell,
        q,
        r,
        branch,
    })
}

/// Smallest `i >= 0` with `floor((i+1)B/A) != floor((i+1)s/r)`.
///
/// Terminates because `B/A > s/r`; the search is capped at `A*r` steps.
pub fn compute_mu(big_a: Int, big_b: Int, r: Int, s: Int) -> Result<Int> {
    if big_a <= 0 || big_b <= 0 || r <= 0 || s <= 0 {
        return Err(precondition("compute_mu needs A, B, r, s > 0"));
    }
    ensure_invariant!(
        mul(big_b, r)? > mul(big_a, s)?,
        "B/A <= s/r, the search would not terminate"
    );
    first_disagreement(big_a, big_b, r, s, mul(big_a, r)?)?
        .ok_or_else(|| crate::error::Error::Invariant("mu search hit its cap".into()))
}

/// Smallest `i` in `0..cap` where the two floor sequences differ.
fn first_disagreement(den1: Int, num1: Int, den2: Int, num2: Int, cap: Int) -> Result<Option<Int>> {
    let mut i: Int = 0;
    while i < cap {
        let n = i + 1;
        if floor_div(mul(n, num1)?, den1)? != floor_div(mul(n, num2)?, den2)? {
            return Ok(Some(i));
        }
        i += 1;
    }
    Ok(None)
}

/// Principal case of the formula table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Case {
    #[serde(rename = "DEGENERATE")]
    Degenerate,
    #[serde(rename = "SYLVESTER")]
    Sylvester,
    #[serde(rename = "THM3")]
    Thm3,
    #[serde(rename = "THM5A")]
    Thm5a,
    #[serde(rename = "THM5B")]
    Thm5b,
    #[serde(rename = "MU_BOUNDARY")]
    MuBoundary,
}

impl Case {
    pub fn label(&self) -> &'static str {
        match self {
            Case::Degenerate => "DEGENERATE",
            Case::Sylvester => "SYLVESTER",
            Case::Thm3 => "THM3",
            Case::Thm5a => "THM5A",
            Case::Thm5b => "THM5B",
            Case::MuBoundary => "MU_BOUNDARY",
        }
    }

    pub const ALL: [Case; 6] = [
        Case::Degenerate,
        Case::Sylvester,
        Case::Thm3,
        Case::Thm5a,
        Case::Thm5b,
        Case::MuBoundary,
    ];
}

impl std::fmt::Display for Case {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Shortcut forms of the `mu < floor(r/u)` formula. Only set under THM5A.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Shortcuts {
    pub lambda_gt_delta: bool,
    pub deltap_gt_lambdap: bool,
}

impl Shortcuts {
    pub fn names(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.lambda_gt_delta {
            out.push("LambdaGtDelta");
        }
        if self.deltap_gt_lambdap {
            out.push("DeltaPGtLambdaP");
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CaseLabel {
    pub case: Case,
    pub shortcuts: Shortcuts,
}

impl CaseLabel {
    pub fn plain(case: Case) -> Self {
        CaseLabel {
            case,
            shortcuts: Shortcuts::default(),
        }
    }
}

/// Case label from already computed parameters.
pub fn classify_params(p: &CaseParams) -> CaseLabel {
    match &p.branch {
        Branch::Below { .. } => CaseLabel::plain(Case::Thm3),
        Branch::Above(x) => {
            let floor_r_u = p.r / x.u;
            match x.mu.cmp(&floor_r_u) {
                std::cmp::Ordering::Less => CaseLabel {
                    case: Case::Thm5a,
                    shortcuts: Shortcuts {
                        lambda_gt_delta: x.big_lambda > x.delta,
                        deltap_gt_lambdap: x.delta_p > x.lambda_p,
                    },
                },
                std::cmp::Ordering::Greater => CaseLabel::plain(Case::Thm5b),
                std::cmp::Ordering::Equal => CaseLabel::plain(Case::MuBoundary),
            }
        }
    }
}

pub fn classify(t: &Triple) -> Result<CaseLabel> {
    let base = compute_base(t)?;
    if base.ell <= base.k {
        return Ok(CaseLabel::plain(Case::Sylvester));
    }
    Ok(classify_params(&compute_case_params(t)?))
}

/// The sequence `x_i = M(floor(S i / M) + 1) - S i`,
/// `y_i = D(floor(S i / M) + 1) + U i` for `i = 0..=len-1`, with the index of
/// its minimum and the largest `w` such that `x_w + min` is also a member.
///
/// Both the X-set (`M = r`, `S = a-ell-r`, `D = q`, `U = q+1`) and its dual
/// (`M = ell-rbar`, `S = rbar`, `D = qbar+1`, `U = qbar`) are instances.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XSequence {
    pub xs: Vec<Int>,
    pub ys: Vec<Int>,
    pub xhat: Int,
    pub m_index: usize,
    pub w_index: Option<usize>,
}

impl XSequence {
    fn build(modulus: Int, slope: Int, down: Int, up: Int, last: Int) -> Result<Self> {
        let mut xs = Vec::with_capacity(last as usize + 1);
        let mut ys = Vec::with_capacity(last as usize + 1);
        for i in 0..=last {
            let drops = add(floor_div(mul(slope, i)?, modulus)?, 1)?;
            xs.push(sub(mul(modulus, drops)?, mul(slope, i)?)?);
            ys.push(add(mul(down, drops)?, mul(up, i)?)?);
        }
        let (m_index, &xhat) = xs
            .iter()
            .enumerate()
            .min_by_key(|&(_, x)| *x)
            .expect("sequence has at least one element");
        let members: HashSet<Int> = xs.iter().copied().collect();
        let w_index = (0..xs.len())
            .rev()
            .find(|&i| members.contains(&(xs[i] + xhat)));
        Ok(XSequence {
            xs,
            ys,
            xhat,
            m_index,
            w_index,
        })
    }

    pub fn set(&self) -> HashSet<Int> {
        self.xs.iter().copied().collect()
    }

    /// Differences between consecutive elements in increasing order.
    pub fn sorted_gaps(&self) -> Vec<Int> {
        let mut sorted = self.xs.clone();
        sorted.sort_unstable();
        sorted.windows(2).map(|w| w[1] - w[0]).collect()
    }
}

/// X-set data for the `br > cq` regime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XSetData {
    #[serde(flatten)]
    pub seq: XSequence,
    pub x_mu: Int,
    /// `min X`.
    pub gap1: Int,
    /// `min X + u - x_mu`.
    pub gap2: Int,
}

impl std::ops::Deref for XSetData {
    type Target = XSequence;

    fn deref(&self) -> &XSequence {
        &self.seq
    }
}

/// Generates `x_0..x_mu` and `y_0..y_mu`. Range and distinctness are always
/// checked; when `mu > floor(r/u)` the minimum must not sit at index 0 and
/// `w` must exist, since the `THM5B` formula reads `x_{m-1}` and `y_w`.
pub fn build_xset(p: &CaseParams) -> Result<XSetData> {
    let above = p
        .above()
        .ok_or_else(|| precondition("the X-set is only defined when br > cq"))?;
    let seq = XSequence::build(p.r, p.s(), p.q, p.q + 1, above.mu)?;

    let mut seen = HashSet::new();
    for (index, &value) in seq.xs.iter().enumerate() {
        if !(1..=p.r).contains(&value) {
            return Err(StructureViolation::OutOfRange {
                index,
                value,
                r: p.r,
            }
            .into());
        }
        if !seen.insert(value) {
            return Err(StructureViolation::Repeated(value).into());
        }
    }
    if above.mu > p.r / above.u {
        if seq.m_index == 0 {
            return Err(StructureViolation::MinimumAtZero.into());
        }
        if seq.w_index.is_none() {
            return Err(StructureViolation::NoW.into());
        }
    }
    let x_mu = *seq.xs.last().expect("non-empty");
    let gap1 = seq.xhat;
    let gap2 = seq.xhat + above.u - x_mu;
    Ok(XSetData {
        seq,
        x_mu,
        gap1,
        gap2,
    })
}

/// Quantities of the dual (`qbar = floor(a/ell)`) formulation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualParams {
    pub qbar: Int,
    pub rbar: Int,
    pub ubar: Int,
    pub abar: Int,
    pub bbar: Int,
    pub mubar: Int,
    pub seq: XSequence,
}

impl DualParams {
    /// `ell - rbar`.
    pub fn width(&self, ell: Int) -> Int {
        ell - self.rbar
    }
}

/// Dual parameters, or `None` when they are not well defined: `ubar = 0`,
/// `Abar <= 0`, or the `mubar` search does not end within `ell - rbar + 1`
/// steps (the dual X-set lives in `0..=ell-rbar`).
pub fn dual_params(p: &CaseParams) -> Result<Option<DualParams>> {
    let (a, b, c, ell) = (p.a(), p.b(), p.c(), p.ell);
    let qbar = floor_div(a, ell)?;
    let rbar = a - qbar * ell;
    let width = ell - rbar;
    if width <= 0 {
        return Ok(None);
    }
    let ubar = arith::modulo(rbar, width)?;
    let abar = sub(mul(b, width)?, mul(c, qbar + 1)?)?;
    let bbar = add(mul(b, rbar)?, mul(c, qbar)?)?;
    if ubar == 0 || abar <= 0 {
        return Ok(None);
    }
    let Some(mubar) = first_disagreement(abar, bbar, width, rbar, width + 1)? else {
        return Ok(None);
    };
    let seq = XSequence::build(width, rbar, qbar + 1, qbar, mubar)?;
    Ok(Some(DualParams {
        qbar,
        rbar,
        ubar,
        abar,
        bbar,
        mubar,
        seq,
    }))
}
