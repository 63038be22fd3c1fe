//! Sparse exact Laurent-polynomial arithmetic and bounded expansion of
//! rational generating functions.
//!
//! A generating function is a Laurent monomial times binomial factors
//! `(1 - x/y)^m`. Denominator factors (`m < 0`) always pair a variable `x`
//! from an earlier alphabet with a variable `y` from a strictly later one,
//! and are expanded as geometric series in `x/y`. An exponent window makes
//! the expansion finite: every kept term is homogeneous of the window's
//! total degree and respects the per-variable lower bounds.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// The variable `u_{ks}`: slot `s` of alphabet `k` (both 1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId {
    pub alphabet: u32,
    pub slot: u32,
}

impl VarId {
    pub fn new(alphabet: u32, slot: u32) -> VarId {
        VarId { alphabet, slot }
    }
}

impl std::fmt::Display for VarId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "u{}_{}", self.alphabet, self.slot)
    }
}

/// Sparse exponent vector; absent variables have exponent 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(VarId, i32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn from_exps(exps: impl IntoIterator<Item = (VarId, i32)>) -> Monomial {
        let mut map: BTreeMap<VarId, i32> = BTreeMap::new();
        for (v, e) in exps {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|(_, e)| *e != 0).collect())
    }

    pub fn exp(&self, v: VarId) -> i32 {
        match self.0.binary_search_by_key(&v, |(w, _)| *w) {
            Ok(i) => self.0[i].1,
            Err(_) => 0,
        }
    }

    pub fn exps(&self) -> &[(VarId, i32)] {
        &self.0
    }

    pub fn total_degree(&self) -> i32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let e = self.0[i].1 + other.0[j].1;
                    if e != 0 {
                        out.push((self.0[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Multiplies by `v^delta`.
    pub fn shift(&self, v: VarId, delta: i32) -> Monomial {
        if delta == 0 {
            return self.clone();
        }
        self.mul(&Monomial(vec![(v, delta)]))
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.0.iter().map(|(v, _)| *v)
    }
}

/// Finite map from exponent vectors to nonzero integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::from_term(Monomial::one(), BigInt::one())
    }

    pub fn from_term(m: Monomial, c: BigInt) -> LaurentPoly {
        let mut p = LaurentPoly::default();
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn retain<F: FnMut(&Monomial) -> bool>(&mut self, mut f: F) {
        self.terms.retain(|m, _| f(m));
    }
}

/// The factor `(1 - num/den)^mult`; negative `mult` means a denominator
/// factor expanded as a geometric series in `num/den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinomialFactor {
    pub num: VarId,
    pub den: VarId,
    pub mult: i32,
}

/// An unevaluated rational generating function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingFunction {
    pub monomial: Monomial,
    pub factors: Vec<BinomialFactor>,
}

impl GeneratingFunction {
    /// Merges duplicate factor pairs into multiplicities.
    pub fn new(monomial: Monomial, factors: Vec<BinomialFactor>) -> GeneratingFunction {
        let mut merged: BTreeMap<(VarId, VarId), i32> = BTreeMap::new();
        for f in factors {
            assert_ne!(f.num, f.den, "binomial factor pairs a variable with itself");
            *merged.entry((f.num, f.den)).or_insert(0) += f.mult;
        }
        GeneratingFunction {
            monomial,
            factors: merged
                .into_iter()
                .filter(|(_, m)| *m != 0)
                .map(|((num, den), mult)| BinomialFactor { num, den, mult })
                .collect(),
        }
    }

    pub fn vars(&self) -> BTreeSet<VarId> {
        let mut vars: BTreeSet<VarId> = self.monomial.vars().collect();
        for f in &self.factors {
            vars.insert(f.num);
            vars.insert(f.den);
        }
        vars
    }
}

/// Per-variable lower bounds plus the fixed total degree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExponentWindow {
    pub lower: BTreeMap<VarId, i32>,
    pub total_degree: i32,
}

impl ExponentWindow {
    pub fn lower(&self, v: VarId) -> i32 {
        self.lower.get(&v).copied().unwrap_or(0)
    }
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Expands `g` within the window `w`: exactly the expansion terms whose
/// exponents meet every lower bound. All factors are degree-0, so each
/// returned term has total degree `w.total_degree`.
pub fn expand(g: &GeneratingFunction, w: &ExponentWindow) -> Result<LaurentPoly> {
    expand_capped(g, w, usize::MAX)
}

pub fn expand_capped(
    g: &GeneratingFunction,
    w: &ExponentWindow,
    max_terms: usize,
) -> Result<LaurentPoly> {
    for f in &g.factors {
        if f.mult < 0 {
            if f.num.alphabet == f.den.alphabet {
                return Err(Error::WindowUnsound(format!(
                    "denominator factor (1 - {}/{}) pairs variables within one alphabet",
                    f.num, f.den
                )));
            }
            if f.num.alphabet > f.den.alphabet {
                return Err(Error::WindowUnsound(format!(
                    "denominator factor (1 - {}/{}) has its small variable in a later alphabet",
                    f.num, f.den
                )));
            }
        }
    }
    if g.monomial.total_degree() != w.total_degree {
        return Err(Error::InvalidInput(format!(
            "window total degree {} does not match monomial degree {}",
            w.total_degree,
            g.monomial.total_degree()
        )));
    }

    let mut universe: BTreeSet<VarId> = g.vars();
    universe.extend(w.lower.keys().copied());
    let sum_lower: i64 = universe.iter().map(|&v| w.lower(v) as i64).sum();
    let upper = |v: VarId| -> i64 { w.total_degree as i64 - (sum_lower - w.lower(v) as i64) };

    // Numerator factors first, then denominator factors grouped by their
    // large variable in decreasing order: once a group is consumed the
    // large variable's exponent is final and can be filtered immediately.
    let mut numerators: Vec<BinomialFactor> = Vec::new();
    let mut denominators: Vec<BinomialFactor> = Vec::new();
    for f in &g.factors {
        if f.mult > 0 {
            numerators.push(*f);
        } else {
            denominators.push(*f);
        }
    }
    denominators.sort_by(|a, b| b.den.cmp(&a.den).then(b.num.cmp(&a.num)));
    let ordered: Vec<BinomialFactor> = numerators.into_iter().chain(denominators).collect();

    // How many remaining factors can still raise / lower each variable.
    let mut can_inc: BTreeMap<VarId, u32> = BTreeMap::new();
    let mut can_dec: BTreeMap<VarId, u32> = BTreeMap::new();
    for f in &ordered {
        *can_inc.entry(f.num).or_insert(0) += 1;
        *can_dec.entry(f.den).or_insert(0) += 1;
    }

    let prune = |poly: &mut LaurentPoly,
                 can_inc: &BTreeMap<VarId, u32>,
                 can_dec: &BTreeMap<VarId, u32>| {
        poly.retain(|m| {
            universe.iter().all(|&v| {
                let e = m.exp(v) as i64;
                let inc = can_inc.get(&v).copied().unwrap_or(0) > 0;
                let dec = can_dec.get(&v).copied().unwrap_or(0) > 0;
                (inc || e >= w.lower(v) as i64) && (dec || e <= upper(v))
            })
        });
    };

    let mut poly = LaurentPoly::from_term(g.monomial.clone(), BigInt::one());
    for f in &ordered {
        if f.mult > 0 {
            let m = f.mult as u64;
            let mut fpoly = LaurentPoly::zero();
            for j in 0..=m {
                let mut c = binomial(m, j);
                if j % 2 == 1 {
                    c = -c;
                }
                fpoly.add_term(
                    Monomial::from_exps([(f.num, j as i32), (f.den, -(j as i32))]),
                    c,
                );
            }
            poly = poly.mul(&fpoly);
        } else {
            let m = (-f.mult) as u64;
            debug_assert_eq!(
                can_inc.get(&f.den).copied().unwrap_or(0),
                0,
                "large variable of a denominator factor must not increase later"
            );
            let mut out = LaurentPoly::zero();
            for (mono, coeff) in poly.terms() {
                let budget = mono.exp(f.den) as i64 - w.lower(f.den) as i64;
                for n in 0..=budget.max(-1) {
                    let c = coeff * binomial((n as u64) + m - 1, m - 1);
                    out.add_term(
                        mono.mul(&Monomial::from_exps([
                            (f.num, n as i32),
                            (f.den, -(n as i32)),
                        ])),
                        c,
                    );
                }
            }
            poly = out;
        }
        *can_inc.get_mut(&f.num).unwrap() -= 1;
        *can_dec.get_mut(&f.den).unwrap() -= 1;
        prune(&mut poly, &can_inc, &can_dec);
        if poly.num_terms() > max_terms {
            return Err(Error::TermCapExceeded { cap: max_terms });
        }
    }
    prune(&mut poly, &can_inc, &can_dec);
    debug_assert!(poly
        .terms()
        .all(|(m, _)| m.total_degree() == w.total_degree));
    Ok(poly)
}

/// Removes binomial factors around inert variables: `v` with lower bound
/// `>= 0`, absent from the monomial, occurring only as the large slot of
/// factors. Any non-constant pick in such a factor drives `v` strictly
/// negative for good, so those expansion branches die at the window and
/// the factors can be dropped up front. Iterates to a fixpoint.
pub fn prune_inert(g: &GeneratingFunction, w: &ExponentWindow) -> GeneratingFunction {
    let mut factors = g.factors.clone();
    loop {
        let mut vars: BTreeSet<VarId> = BTreeSet::new();
        for f in &factors {
            vars.insert(f.num);
            vars.insert(f.den);
        }
        let inert = vars.into_iter().find(|&v| {
            w.lower(v) >= 0
                && g.monomial.exp(v) == 0
                && factors
                    .iter()
                    .filter(|f| f.num == v || f.den == v)
                    .all(|f| f.den == v)
        });
        match inert {
            Some(v) => factors.retain(|f| f.den != v),
            None => break,
        }
    }
    GeneratingFunction {
        monomial: g.monomial.clone(),
        factors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(k: u32, s: u32) -> VarId {
        VarId::new(k, s)
    }

    fn mono(exps: &[(VarId, i32)]) -> Monomial {
        Monomial::from_exps(exps.iter().copied())
    }

    fn term(exps: &[(VarId, i32)], c: i64) -> LaurentPoly {
        LaurentPoly::from_term(mono(exps), BigInt::from(c))
    }

    #[test]
    fn mul_identity() {
        let u1 = v(1, 1);
        let u2 = v(1, 2);
        let p = term(&[(u1, 1), (u2, 1)], 1);
        assert_eq!(p.mul(&LaurentPoly::one()), p);
    }

    #[test]
    fn mul_difference_of_squares() {
        let u1 = v(1, 1);
        let u2 = v(1, 2);
        let a = LaurentPoly::one().add(&term(&[(u1, 1), (u2, -1)], -1));
        let b = LaurentPoly::one().add(&term(&[(u1, 1), (u2, -1)], 1));
        let expected = LaurentPoly::one().add(&term(&[(u1, 2), (u2, -2)], -1));
        assert_eq!(a.mul(&b), expected);
    }

    #[test]
    fn mul_against_discriminant_factor() {
        // u1^2 u2^2 (u1 - u2) = u1^3 u2^2 - u1^2 u2^3
        let u1 = v(1, 1);
        let u2 = v(1, 2);
        let p = term(&[(u1, 2), (u2, 2)], 1);
        let d = term(&[(u1, 1)], 1).add(&term(&[(u2, 1)], -1));
        let expected = term(&[(u1, 3), (u2, 2)], 1).add(&term(&[(u1, 2), (u2, 3)], -1));
        assert_eq!(p.mul(&d), expected);
    }

    #[test]
    fn expand_single_geometric_factor() {
        // u1 u2 / (1 - u1/u2), lower u1 >= 0, u2 >= -1, degree 2
        //   -> u1 u2 + u1^2 + u1^3 u2^-1
        let u1 = v(1, 1);
        let u2 = v(2, 1);
        let g = GeneratingFunction::new(
            mono(&[(u1, 1), (u2, 1)]),
            vec![BinomialFactor { num: u1, den: u2, mult: -1 }],
        );
        let w = ExponentWindow {
            lower: BTreeMap::from([(u1, 0), (u2, -1)]),
            total_degree: 2,
        };
        let got = expand(&g, &w).unwrap();
        let expected = term(&[(u1, 1), (u2, 1)], 1)
            .add(&term(&[(u1, 2)], 1))
            .add(&term(&[(u1, 3), (u2, -1)], 1));
        assert_eq!(got, expected);
    }

    #[test]
    fn expand_no_factors_is_the_monomial() {
        let u1 = v(1, 1);
        let g = GeneratingFunction::new(mono(&[(u1, 3)]), vec![]);
        let w = ExponentWindow { lower: BTreeMap::new(), total_degree: 3 };
        assert_eq!(expand(&g, &w).unwrap(), term(&[(u1, 3)], 1));
    }

    /// The reduced two-denominator function
    /// w1^2 w2^2 (1 - w1/w2) / (u (1 - u/w1)(1 - u/w2)).
    fn reduced_fixture() -> (GeneratingFunction, VarId, VarId, VarId) {
        let u = v(1, 1);
        let w1 = v(3, 1);
        let w2 = v(3, 2);
        let g = GeneratingFunction::new(
            mono(&[(w1, 2), (w2, 2), (u, -1)]),
            vec![
                BinomialFactor { num: w1, den: w2, mult: 1 },
                BinomialFactor { num: u, den: w1, mult: -1 },
                BinomialFactor { num: u, den: w2, mult: -1 },
            ],
        );
        (g, u, w1, w2)
    }

    #[test]
    fn expand_reduced_fixture_nonnegative_part() {
        let (g, u, w1, w2) = reduced_fixture();
        let w = ExponentWindow {
            lower: BTreeMap::from([(u, 0), (w1, 0), (w2, 0)]),
            total_degree: 3,
        };
        let got = expand(&g, &w).unwrap();
        let expected = term(&[(w1, 1), (w2, 2)], 1)
            .add(&term(&[(w2, 2), (u, 1)], 1))
            .add(&term(&[(w1, 3)], -1));
        assert_eq!(got, expected);
    }

    #[test]
    fn expand_reduced_fixture_wider_window_contains_nonnegative_part() {
        let (g, u, w1, w2) = reduced_fixture();
        let w = ExponentWindow {
            lower: BTreeMap::from([(u, -1), (w1, 0), (w2, 0)]),
            total_degree: 3,
        };
        let got = expand(&g, &w).unwrap();
        // Filtering to nonnegative exponents recovers the integer part.
        let mut filtered = LaurentPoly::zero();
        for (m, c) in got.terms() {
            if m.exps().iter().all(|(_, e)| *e >= 0) {
                filtered.add_term(m.clone(), c.clone());
            }
        }
        let expected = term(&[(w1, 1), (w2, 2)], 1)
            .add(&term(&[(w2, 2), (u, 1)], 1))
            .add(&term(&[(w1, 3)], -1));
        assert_eq!(filtered, expected);
    }

    #[test]
    fn expand_rejects_unsound_denominators() {
        let u1 = v(1, 1);
        let u2 = v(1, 2);
        let g = GeneratingFunction::new(
            mono(&[(u1, 1), (u2, 1)]),
            vec![BinomialFactor { num: u1, den: u2, mult: -1 }],
        );
        let w = ExponentWindow { lower: BTreeMap::new(), total_degree: 2 };
        assert!(matches!(expand(&g, &w), Err(Error::WindowUnsound(_))));

        let a = v(2, 1);
        let b = v(1, 1);
        let g = GeneratingFunction::new(
            mono(&[(a, 1), (b, 1)]),
            vec![BinomialFactor { num: a, den: b, mult: -1 }],
        );
        assert!(matches!(expand(&g, &w), Err(Error::WindowUnsound(_))));
    }

    #[test]
    fn expand_term_cap_trips() {
        let (g, u, w1, w2) = reduced_fixture();
        let w = ExponentWindow {
            lower: BTreeMap::from([(u, 0), (w1, 0), (w2, 0)]),
            total_degree: 3,
        };
        assert!(matches!(
            expand_capped(&g, &w, 1),
            Err(Error::TermCapExceeded { cap: 1 })
        ));
    }

    /// The seven-variable fixture with one inert chain: variables renamed
    /// u, w1, w2, s, t1, t2, x across alphabets 1,3,3,4,5,5,6.
    fn chained_fixture() -> (GeneratingFunction, GeneratingFunction, ExponentWindow) {
        let u = v(1, 1);
        let w1 = v(3, 1);
        let w2 = v(3, 2);
        let s = v(4, 1);
        let t1 = v(5, 1);
        let t2 = v(5, 2);
        let x = v(6, 1);
        let monomial = mono(&[(w1, 2), (w2, 2), (u, -1)]);
        let full = GeneratingFunction::new(
            monomial.clone(),
            vec![
                BinomialFactor { num: w1, den: w2, mult: 1 },
                BinomialFactor { num: u, den: s, mult: 1 },
                BinomialFactor { num: t1, den: t2, mult: 1 },
                BinomialFactor { num: w1, den: x, mult: 1 },
                BinomialFactor { num: w2, den: x, mult: 1 },
                BinomialFactor { num: u, den: w1, mult: -1 },
                BinomialFactor { num: u, den: w2, mult: -1 },
                BinomialFactor { num: s, den: x, mult: -1 },
                BinomialFactor { num: u, den: x, mult: -1 },
                BinomialFactor { num: t1, den: x, mult: -1 },
                BinomialFactor { num: t2, den: x, mult: -1 },
            ],
        );
        let reduced = GeneratingFunction::new(
            monomial,
            vec![
                BinomialFactor { num: w1, den: w2, mult: 1 },
                BinomialFactor { num: u, den: w1, mult: -1 },
                BinomialFactor { num: u, den: w2, mult: -1 },
            ],
        );
        let w = ExponentWindow {
            lower: [u, w1, w2, s, t1, t2, x].iter().map(|&v| (v, 0)).collect(),
            total_degree: 3,
        };
        (full, reduced, w)
    }

    #[test]
    fn prune_inert_strips_the_full_chain() {
        let (full, reduced, w) = chained_fixture();
        assert_eq!(prune_inert(&full, &w), reduced);
    }

    #[test]
    fn prune_inert_leaves_active_functions_alone() {
        let (_, reduced, w) = chained_fixture();
        assert_eq!(prune_inert(&reduced, &w), reduced);
    }

    #[test]
    fn prune_inert_preserves_the_expansion() {
        let (full, _, w) = chained_fixture();
        let pruned = prune_inert(&full, &w);
        assert_eq!(expand(&full, &w).unwrap(), expand(&pruned, &w).unwrap());
    }

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(7, 0), BigInt::from(1));
        assert_eq!(binomial(0, 0), BigInt::from(1));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
            proptest::collection::vec(
                (
                    proptest::collection::vec(-3i32..=3, 3),
                    -4i64..=4,
                ),
                0..6,
            )
            .prop_map(|terms| {
                let mut p = LaurentPoly::zero();
                for (exps, c) in terms {
                    let m = Monomial::from_exps(
                        exps.into_iter()
                            .enumerate()
                            .map(|(i, e)| (VarId::new(1, i as u32 + 1), e)),
                    );
                    p.add_term(m, BigInt::from(c));
                }
                p
            })
        }

        proptest! {
            #[test]
            fn mul_commutes(a in arb_poly(), b in arb_poly()) {
                prop_assert_eq!(a.mul(&b), b.mul(&a));
            }

            #[test]
            fn mul_associates(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
                prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            }
        }
    }
}
