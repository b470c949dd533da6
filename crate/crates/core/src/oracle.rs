//! Brute-force ground truth.
//!
//! Nothing here goes through the walk or the closed forms: representability
//! comes from a dynamic-programming sieve and class minima from scanning
//! `bn1 + cn2` directly.

use std::collections::BTreeSet;

use crate::arith::{gcd, modulo, mul, Int};
use crate::error::{precondition, Error, Result};
use crate::params::CaseParams;

/// Default limit on sieve table entries; `FROB_MEM_CAP` overrides it.
pub const DEFAULT_MEM_CAP: Int = 1 << 28;

pub fn mem_cap() -> Int {
    std::env::var("FROB_MEM_CAP")
        .ok()
        .and_then(|s| s.trim().parse::<Int>().ok())
        .filter(|&n| n > 0)
        .unwrap_or(DEFAULT_MEM_CAP)
}

/// `bits[n]` is set iff `n` is a non-negative combination of the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentabilityTable {
    pub bound: Int,
    pub bits: Vec<bool>,
}

impl RepresentabilityTable {
    pub fn get(&self, n: Int) -> Option<bool> {
        usize::try_from(n)
            .ok()
            .and_then(|i| self.bits.get(i).copied())
    }

    /// Largest non-representable entry, or -1.
    pub fn largest_gap(&self) -> Int {
        self.bits.iter().rposition(|&b| !b).map_or(-1, |i| i as Int)
    }
}

pub fn sieve(gens: &[Int], bound: Int) -> Result<RepresentabilityTable> {
    sieve_with_cap(gens, bound, mem_cap())
}

pub fn sieve_with_cap(gens: &[Int], bound: Int, cap: Int) -> Result<RepresentabilityTable> {
    if bound < 0 {
        return Err(precondition("sieve bound must be non-negative"));
    }
    if gens.iter().any(|&g| g <= 0) {
        return Err(precondition("generators must be positive"));
    }
    if bound + 1 > cap {
        return Err(Error::SieveTooLarge {
            needed: bound + 1,
            cap,
        });
    }
    let len = bound as usize + 1;
    let steps: Vec<usize> = gens.iter().map(|&g| g as usize).collect();
    let mut bits = vec![false; len];
    bits[0] = true;
    for n in 1..len {
        bits[n] = steps.iter().any(|&g| g <= n && bits[n - g]);
    }
    Ok(RepresentabilityTable { bound, bits })
}

/// A table size past the Frobenius number: `xy` for the cheapest coprime pair
/// `x, y` (Sylvester), or `(min - 1)(max - 1)` (Schur) when no pair is coprime.
pub fn sieve_bound(gens: &[Int]) -> Result<Int> {
    let mut best: Option<Int> = None;
    for (i, &x) in gens.iter().enumerate() {
        for &y in &gens[i + 1..] {
            if gcd(x, y)? == 1 {
                let p = mul(x, y)?;
                best = Some(best.map_or(p, |b: Int| b.min(p)));
            }
        }
    }
    match best {
        Some(b) => Ok(b),
        None => {
            let lo = *gens
                .iter()
                .min()
                .ok_or_else(|| precondition("no generators"))?;
            let hi = *gens.iter().max().expect("non-empty");
            Ok(mul(lo - 1, hi - 1)?)
        }
    }
}

/// Frobenius number by exhaustion. `gens` must have gcd 1.
pub fn frobenius_sieve(gens: &[Int]) -> Result<Int> {
    let g = gens.iter().try_fold(0, |acc, &x| gcd(acc, x))?;
    if g != 1 {
        return Err(precondition(format!("gcd of the generators is {g}")));
    }
    Ok(sieve(gens, sieve_bound(gens)?)?.largest_gap())
}

/// Smallest `bn1 + cn2` in each residue class modulo `a`, scanning all
/// combinations below `limit`. Classes without a hit stay `None`.
pub fn class_minima_scan(a: Int, b: Int, c: Int, limit: Int) -> Result<Vec<Option<Int>>> {
    let mut mins: Vec<Option<Int>> = vec![None; a as usize];
    let mut cy = 0;
    while cy < limit {
        let mut z = cy;
        while z < limit {
            let slot = &mut mins[modulo(z, a)? as usize];
            if slot.is_none_or(|m| z < m) {
                *slot = Some(z);
            }
            z += b;
        }
        cy += c;
    }
    Ok(mins)
}

/// `m(bx)` for every `x` in `0..a`; every class minimum is below `ba`.
pub fn naive_residue_minima(p: &CaseParams) -> Result<Vec<Int>> {
    let (a, b, c) = (p.a(), p.b(), p.c());
    let mins = class_minima_scan(a, b, c, mul(b, a)?)?;
    (0..a)
        .map(|x| {
            mins[modulo(mul(b, x)?, a)? as usize].ok_or_else(|| {
                Error::Invariant(format!("class of {b}*{x} has no minimum below {}", b * a))
            })
        })
        .collect()
}

/// `{x in 1..=r : m(bx) = 0 mod c}` from scanned class minima.
pub fn xset_oracle(p: &CaseParams) -> Result<BTreeSet<Int>> {
    if p.above().is_none() {
        return Err(precondition("the X-set is only defined when br > cq"));
    }
    let (a, b, c) = (p.a(), p.b(), p.c());
    let limit = mul(b, p.r)? + mul(c, a)?;
    let mins = class_minima_scan(a, b, c, limit)?;
    let mut out = BTreeSet::new();
    for x in 1..=p.r {
        let m = mins[modulo(mul(b, x)?, a)? as usize]
            .ok_or_else(|| Error::Invariant(format!("class of {b}*{x} not reached")))?;
        if m % c == 0 {
            out.insert(x);
        }
    }
    Ok(out)
}
