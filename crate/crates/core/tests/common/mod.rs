//! Independent brute-force arithmetic used as an oracle: polynomials as
//! plain exponent maps, multiplied term by term, and generating functions
//! expanded as truncated series before filtering against the window.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use quiverpoly::{ExponentWindow, GeneratingFunction, LaurentPoly, Monomial, VarId};

pub type ExpMap = BTreeMap<VarId, i32>;
pub type NaivePoly = BTreeMap<ExpMap, BigInt>;

pub fn naive_from(p: &LaurentPoly) -> NaivePoly {
    let mut out = NaivePoly::new();
    for (mono, coeff) in p.terms() {
        let exps: ExpMap = mono.exps().iter().copied().collect();
        *out.entry(exps).or_insert_with(BigInt::zero) += coeff;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn naive_to(p: &NaivePoly) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (exps, coeff) in p {
        out.add_term(Monomial::from_exps(exps.iter().map(|(&v, &e)| (v, e))), coeff.clone());
    }
    out
}

pub fn naive_mul(a: &NaivePoly, b: &NaivePoly) -> NaivePoly {
    let mut out = NaivePoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let mut exps = ea.clone();
            for (&v, &e) in eb {
                let slot = exps.entry(v).or_insert(0);
                *slot += e;
                if *slot == 0 {
                    exps.remove(&v);
                }
            }
            let c = out.entry(exps).or_insert_with(BigInt::zero);
            *c += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn naive_one() -> NaivePoly {
    NaivePoly::from([(ExpMap::new(), BigInt::one())])
}

fn ratio_power(num: VarId, den: VarId, n: i32) -> ExpMap {
    if n == 0 {
        ExpMap::new()
    } else {
        ExpMap::from([(num, n), (den, -n)])
    }
}

/// Expands the generating function by truncating every geometric series at
/// `order` terms, multiplying exactly, and filtering to the window. For any
/// `order` large enough this is exact inside the window.
pub fn brute_force_expand(
    g: &GeneratingFunction,
    w: &ExponentWindow,
    order: i32,
) -> LaurentPoly {
    let mut poly = naive_from(&LaurentPoly::from_term(g.monomial.clone(), BigInt::one()));
    for f in &g.factors {
        let reps = f.mult.unsigned_abs();
        for _ in 0..reps {
            let mut factor = NaivePoly::new();
            if f.mult > 0 {
                factor.insert(ExpMap::new(), BigInt::one());
                factor.insert(ratio_power(f.num, f.den, 1), BigInt::from(-1));
            } else {
                for n in 0..=order {
                    factor.insert(ratio_power(f.num, f.den, n), BigInt::one());
                }
            }
            poly = naive_mul(&poly, &factor);
        }
    }
    let mut vars: Vec<VarId> = g.vars().into_iter().collect();
    vars.extend(w.lower.keys().copied());
    poly.retain(|exps, _| {
        vars.iter().all(|&v| exps.get(&v).copied().unwrap_or(0) >= w.lower(v))
    });
    naive_to(&poly)
}

/// Discriminant product of one alphabet: `prod_{i<j} (1 - u_i/u_j)`,
/// multiplied out naively.
pub fn naive_discriminant(vars: &[VarId]) -> NaivePoly {
    let mut out = naive_one();
    for i in 0..vars.len() {
        for j in (i + 1)..vars.len() {
            let mut factor = NaivePoly::new();
            factor.insert(ExpMap::new(), BigInt::one());
            factor.insert(ratio_power(vars[i], vars[j], 1), BigInt::from(-1));
            out = naive_mul(&out, &factor);
        }
    }
    out
}
