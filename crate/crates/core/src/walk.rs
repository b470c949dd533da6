//! The residue walk `(x, y) -> ((x + a - ell) mod a, y + 1)`.
//!
//! Starting from `(x, 0)` every state of the walk has `v = bx' + cy'` in the
//! residue class of `bx` modulo `a`, and the smallest `v` over the first `a`
//! states is the class minimum `m(bx)`. The maximum of those minima, minus
//! `a`, is the Frobenius number.

use serde::Serialize;

use crate::arith::{add, ceil_div, floor_div, modulo, mul, Int};
use crate::error::{ensure_invariant, precondition, Result};
use crate::params::{compute_base, CaseParams, Triple};

/// A walk state with its v-value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct VState {
    pub x: Int,
    pub y: Int,
    pub v: Int,
}

/// Offset from a local minimum to the next one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NextMinDelta {
    pub rho: Int,
    pub dx: Int,
    pub dy: Int,
}

pub fn v_value(b: Int, c: Int, x: Int, y: Int) -> Result<Int> {
    if x < 0 || y < 0 {
        return Err(precondition("v-values need non-negative coordinates"));
    }
    Ok(add(mul(b, x)?, mul(c, y)?)?)
}

/// The walk of one pairwise-coprime triple with `ell > k`.
#[derive(Debug, Clone, Copy)]
pub struct Walk {
    pub a: Int,
    pub b: Int,
    pub c: Int,
    pub ell: Int,
}

impl Walk {
    pub fn new(t: &Triple, ell: Int) -> Result<Self> {
        let base = compute_base(t)?;
        if base.ell != ell {
            return Err(precondition(format!("ell = {ell} does not belong to {t}")));
        }
        if ell <= base.k {
            return Err(precondition(format!("ell = {ell} <= k = {}", base.k)));
        }
        Ok(Walk {
            a: t.a(),
            b: t.b(),
            c: t.c(),
            ell,
        })
    }

    pub fn from_params(p: &CaseParams) -> Self {
        Walk {
            a: p.a(),
            b: p.b(),
            c: p.c(),
            ell: p.ell,
        }
    }

    pub fn state(&self, x: Int, y: Int) -> Result<VState> {
        Ok(VState {
            x,
            y,
            v: v_value(self.b, self.c, x, y)?,
        })
    }

    /// Definition of a local minimum on the truncated walk `0 <= y <= a-1`.
    pub fn is_local_min(&self, x: Int, y: Int) -> Result<bool> {
        let a = self.a;
        if !(0..a).contains(&x) || !(0..a).contains(&y) {
            return Err(precondition(format!("({x}, {y}) outside the walk range")));
        }
        let v = v_value(self.b, self.c, x, y)?;
        let next = || -> Result<Int> { v_value(self.b, self.c, modulo(x - self.ell, a)?, y + 1) };
        let prev = || -> Result<Int> { v_value(self.b, self.c, modulo(x + self.ell, a)?, y - 1) };
        Ok(if y == 0 && y == a - 1 {
            true
        } else if y == 0 {
            v <= next()?
        } else if y == a - 1 {
            v <= prev()?
        } else {
            v <= next()?.min(prev()?)
        })
    }

    /// Jump from the local minimum `(x, y)` to the next one.
    ///
    /// Only starts with `x < min(a - ell, ell)` are accepted, and the target
    /// must still lie inside the walk (`y + dy <= a - 1`).
    pub fn next_local_min(&self, x: Int, y: Int) -> Result<(NextMinDelta, VState)> {
        let (a, ell) = (self.a, self.ell);
        let step = a - ell;
        if !(0..step.min(ell)).contains(&x) {
            return Err(precondition(format!(
                "x = {x} is not below min(a - ell, ell) = {}",
                step.min(ell)
            )));
        }
        if !self.is_local_min(x, y)? {
            return Err(precondition(format!("({x}, {y}) is not a local minimum")));
        }
        let rho = modulo(x - ell, step)?;
        let dx = modulo(rho, ell)? - x;
        let dy = ceil_div(ell - x, step)? + floor_div(ell + rho, ell)?;
        if y + dy > a - 1 {
            return Err(precondition(format!(
                "next minimum at y = {} is past the end of the walk",
                y + dy
            )));
        }
        let next = self.state(x + dx, y + dy)?;
        ensure_invariant!(
            self.is_local_min(next.x, next.y)?,
            "predicted next minimum ({}, {}) is not a local minimum",
            next.x,
            next.y
        );
        Ok((NextMinDelta { rho, dx, dy }, next))
    }

    /// The first `a` states from `(x0, 0)`, with local-minimum flags.
    pub fn trace(&self, x0: Int) -> Result<WalkTrace> {
        if !(0..self.a).contains(&x0) {
            return Err(precondition(format!(
                "start class {x0} outside 0..{}",
                self.a
            )));
        }
        let mut rows = Vec::with_capacity(self.a as usize);
        let mut x = x0;
        for t in 0..self.a {
            let state = self.state(x, t)?;
            rows.push(TraceRow {
                t,
                state,
                is_min: self.is_local_min(x, t)?,
                fake: false,
            });
            x = modulo(x + self.a - self.ell, self.a)?;
        }
        Ok(WalkTrace { rows })
    }

    /// `min_{0<=t<a} v((x + (a-ell)t) mod a, t)` by direct scan.
    pub fn class_min_scan(&self, x: Int) -> Result<Int> {
        let mut best = Int::MAX;
        let mut cur = modulo(x, self.a)?;
        for t in 0..self.a {
            best = best.min(v_value(self.b, self.c, cur, t)?);
            cur = modulo(cur + self.a - self.ell, self.a)?;
        }
        Ok(best)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TraceRow {
    pub t: Int,
    #[serde(flatten)]
    pub state: VState,
    pub is_min: bool,
    /// The uncorrected next-minimum rule lands here, but this is no minimum.
    pub fake: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WalkTrace {
    pub rows: Vec<TraceRow>,
}

impl WalkTrace {
    pub fn minima(&self) -> impl Iterator<Item = &TraceRow> {
        self.rows.iter().filter(|r| r.is_min)
    }

    /// Flags the states where the uncorrected rule
    /// `(x, y) -> (x + a-ell-r, y + q + 1)` for `x < r`,
    /// `(x, y) -> (x - r, y + q)` for `r <= x < a - ell`
    /// predicts a minimum that is not one.
    pub fn mark_fake_minima(&mut self, p: &CaseParams) {
        let len = self.rows.len() as Int;
        for i in 0..self.rows.len() {
            let row = self.rows[i];
            if !row.is_min || row.state.x >= p.step() {
                continue;
            }
            let dy = if row.state.x < p.r { p.q + 1 } else { p.q };
            let target = row.t + dy;
            if target < len && !self.rows[target as usize].is_min {
                self.rows[target as usize].fake = true;
            }
        }
    }
}

/// One application of the `m(bx) = min{bx, m(bx') + cy'}` recursion.
pub fn lemma7_step(x: Int, p: &CaseParams) -> Result<(Int, Int)> {
    let (a, step) = (p.a(), p.step());
    if !(1..a).contains(&x) {
        return Err(precondition(format!("x = {x} outside 1..{a}")));
    }
    let residue = modulo(x, step)?;
    let blocks = floor_div(x, step)?;
    Ok(if residue < p.r {
        (residue - p.r + step, p.q - blocks + 1)
    } else {
        (residue - p.r, p.q - blocks)
    })
}

/// Coefficients `(n1, n2)` with `m(bx) = b n1 + c n2`.
pub fn m_of_witness(x: Int, p: &CaseParams) -> Result<(Int, Int)> {
    let (a, b, c) = (p.a(), p.b(), p.c());
    if !(0..a).contains(&x) {
        return Err(precondition(format!("x = {x} outside 0..{a}")));
    }
    let mut cur = x;
    let mut ys: Int = 0;
    let mut best = (x, 0);
    let mut best_v = mul(b, x)?;
    for _ in 0..=a {
        if cur == 0 {
            return Ok(best);
        }
        let (nx, ny) = lemma7_step(cur, p)?;
        cur = nx;
        ys += ny;
        let v = add(mul(b, cur)?, mul(c, ys)?)?;
        if v < best_v {
            best_v = v;
            best = (cur, ys);
        }
    }
    Err(crate::Error::Invariant(format!(
        "recursion from x = {x} did not reach 0 within {a} steps"
    )))
}

/// Minimum of the residue class of `bx` modulo `a` among `bn1 + cn2`.
pub fn m_of(x: Int, p: &CaseParams) -> Result<Int> {
    let (n1, n2) = m_of_witness(x, p)?;
    Ok(add(mul(p.b(), n1)?, mul(p.c(), n2)?)?)
}

/// `m(bx)` for every `x` in `0..a`, sharing the recursion between classes.
pub fn residue_minima(p: &CaseParams) -> Result<Vec<Int>> {
    let a = p.a() as usize;
    let mut table: Vec<Option<Int>> = vec![None; a];
    table[0] = Some(0);
    let mut path = Vec::new();
    for start in 1..a {
        let mut cur = start;
        // walk down until a cached class, remembering (x, x', y')
        while table[cur].is_none() {
            let (nx, ny) = lemma7_step(cur as Int, p)?;
            path.push((cur, nx as usize, ny));
            cur = nx as usize;
            ensure_invariant!(path.len() <= a, "recursion from {start} does not terminate");
        }
        while let Some((x, nx, ny)) = path.pop() {
            let via = add(table[nx].expect("filled"), mul(p.c(), ny)?)?;
            table[x] = Some(mul(p.b(), x as Int)?.min(via));
        }
    }
    Ok(table.into_iter().map(|m| m.expect("filled")).collect())
}

/// `max_{1<=x<a} m(bx) - a` through the recursion.
pub fn brauer_shockley_g(p: &CaseParams) -> Result<Int> {
    let table = residue_minima(p)?;
    let max = table[1..].iter().copied().max().unwrap_or(0);
    Ok(max - p.a())
}

/// `max_x min_t v(...) - a` by the `O(a^2)` double loop.
pub fn lemma3_g(walk: &Walk) -> Result<Int> {
    let mut best = Int::MIN;
    for x in 1..walk.a {
        best = best.max(walk.class_min_scan(x)?);
    }
    Ok(best - walk.a)
}
