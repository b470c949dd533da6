//! Machine-readable and human-readable views of a [`FrobeniusResult`].

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::arith::Int;
use crate::formulas::{Fallback, FrobeniusResult};
use crate::params::{Branch, CaseParams, XSetData};

/// The stable JSON document. Field order is the emitted key order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonResult {
    pub a: Int,
    pub b: Int,
    pub c: Option<Int>,
    pub g: Int,
    pub case: String,
    pub shortcuts: Vec<String>,
    pub params: Option<JsonParams>,
    pub xset: Option<JsonXSet>,
    pub reduction: Vec<JsonStep>,
    pub method: String,
    pub fallback: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonParams {
    pub k: Int,
    pub ell: Int,
    pub q: Option<Int>,
    pub r: Option<Int>,
    pub u: Option<Int>,
    pub lambda: Option<Int>,
    #[serde(rename = "A")]
    pub big_a: Option<Int>,
    #[serde(rename = "B")]
    pub big_b: Option<Int>,
    #[serde(rename = "Lambda")]
    pub big_lambda: Option<Int>,
    #[serde(rename = "Delta")]
    pub delta: Option<Int>,
    #[serde(rename = "LambdaP")]
    pub lambda_p: Option<Int>,
    #[serde(rename = "DeltaP")]
    pub delta_p: Option<Int>,
    pub mu: Option<Int>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonXSet {
    pub xs: Vec<Int>,
    pub ys: Vec<Int>,
    pub xhat: Int,
    pub m: usize,
    pub w: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonStep {
    pub d: Int,
    pub third: Int,
}

impl JsonResult {
    pub fn from_result(r: &FrobeniusResult) -> Self {
        let gens = &r.generators;
        let params = match (&r.params, &r.base) {
            (Some(p), _) => Some(params_json(p)),
            // ell <= k: only the base quantities exist.
            (None, Some(base)) => Some(JsonParams {
                k: base.k,
                ell: base.ell,
                q: None,
                r: None,
                u: None,
                lambda: None,
                big_a: None,
                big_b: None,
                big_lambda: None,
                delta: None,
                lambda_p: None,
                delta_p: None,
                mu: None,
            }),
            (None, None) => None,
        };
        JsonResult {
            a: gens[0],
            b: gens[1],
            c: gens.get(2).copied(),
            g: r.g,
            case: r.label.case.label().to_string(),
            shortcuts: r
                .label
                .shortcuts
                .names()
                .into_iter()
                .map(String::from)
                .collect(),
            params,
            xset: r.xset.as_ref().map(xset_json),
            reduction: r
                .reduction
                .iter()
                .map(|s| JsonStep {
                    d: s.d,
                    third: s.third,
                })
                .collect(),
            method: r.method.name().to_string(),
            fallback: r.fallback.as_ref().map(fallback_name).map(String::from),
        }
    }
}

fn params_json(p: &CaseParams) -> JsonParams {
    let above = p.above();
    JsonParams {
        k: p.k,
        ell: p.ell,
        q: Some(p.q),
        r: Some(p.r),
        u: above.map(|x| x.u),
        lambda: p.lambda(),
        big_a: above.map(|x| x.big_a),
        big_b: above.map(|x| x.big_b),
        big_lambda: above.map(|x| x.big_lambda),
        delta: above.map(|x| x.delta),
        lambda_p: above.map(|x| x.lambda_p),
        delta_p: above.map(|x| x.delta_p),
        mu: above.map(|x| x.mu),
    }
}

fn xset_json(x: &XSetData) -> JsonXSet {
    JsonXSet {
        xs: x.xs.clone(),
        ys: x.ys.clone(),
        xhat: x.xhat,
        m: x.m_index,
        w: x.w_index,
    }
}

pub fn fallback_name(f: &Fallback) -> &'static str {
    match f {
        Fallback::MuBoundary => "mu_boundary",
        Fallback::Structure(_) => "structure_violation",
    }
}

pub fn to_json(r: &FrobeniusResult) -> String {
    serde_json::to_string(&JsonResult::from_result(r)).expect("plain data serializes")
}

fn list(xs: &[Int]) -> String {
    xs.iter().map(Int::to_string).collect::<Vec<_>>().join(", ")
}

/// Multi-line explanation: case, parameters, X-set and reduction trace.
pub fn explain(r: &FrobeniusResult) -> String {
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, "generators: {}", list(&r.generators));
    let _ = writeln!(w, "g = {}", r.g);
    let shortcuts = r.label.shortcuts.names();
    if shortcuts.is_empty() {
        let _ = writeln!(w, "case: {}", r.label.case);
    } else {
        let _ = writeln!(w, "case: {} [{}]", r.label.case, shortcuts.join(", "));
    }
    let _ = write!(w, "method: {}", r.method.name());
    match &r.fallback {
        Some(Fallback::Structure(v)) => {
            let _ = writeln!(w, " (fallback: structure violation: {v})");
        }
        Some(f) => {
            let _ = writeln!(w, " (fallback: {})", fallback_name(f));
        }
        None => {
            let _ = writeln!(w);
        }
    }

    if r.reduction.is_empty() {
        let _ = writeln!(w, "reduction: none");
    } else {
        let _ = writeln!(w, "reduction:");
        for s in &r.reduction {
            let _ = writeln!(
                w,
                "  d = {} on ({}, {}), third = {} -> ({})   g = {}*g' + {}*{}",
                s.d,
                s.pair.0,
                s.pair.1,
                s.third,
                list(&s.child),
                s.d,
                s.third,
                s.d - 1
            );
        }
        let _ = writeln!(w, "core: {}", list(&r.core));
    }

    if let Some(base) = &r.base {
        let _ = writeln!(w, "k = {}, ell = {}", base.k, base.ell);
    }
    if let Some(p) = &r.params {
        let (b, c) = (p.b(), p.c());
        let _ = writeln!(w, "q = {}, r = {}, a-ell = {}", p.q, p.r, p.step());
        match &p.branch {
            Branch::Below { lambda } => {
                let _ = writeln!(
                    w,
                    "br = {} < cq = {}, lambda = {}",
                    b * p.r,
                    c * p.q,
                    lambda
                );
            }
            Branch::Above(x) => {
                let _ = writeln!(w, "br = {} > cq = {}", b * p.r, c * p.q);
                let _ = writeln!(w, "u = {}, A = {}, B = {}", x.u, x.big_a, x.big_b);
                let _ = writeln!(
                    w,
                    "Lambda = {}, Delta = {}, LambdaP = {}, DeltaP = {}",
                    x.big_lambda, x.delta, x.lambda_p, x.delta_p
                );
                let _ = writeln!(w, "mu = {}, floor(r/u) = {}", x.mu, p.r / x.u);
            }
        }
    }
    if let Some(x) = &r.xset {
        let _ = writeln!(w, "xs: {}", list(&x.xs));
        let _ = writeln!(w, "ys: {}", list(&x.ys));
        let w_text = x.w_index.map_or("none".to_string(), |i| i.to_string());
        let _ = writeln!(
            w,
            "xhat = {}, m = {}, w = {}, x_mu = {}",
            x.xhat, x.m_index, w_text, x.x_mu
        );
        let _ = writeln!(w, "gaps: {} and {}", x.gap1, x.gap2);
    }
    out
}
