//! Determinantal polynomials in Chern symbols, straightening of fake Schur
//! polynomials, and the two linear operations taking Laurent terms to the
//! Chern and Schur output bases.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, VarId};

/// Weakly decreasing nonnegative parts, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Partition {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "partition parts must be weakly decreasing"
        );
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition(parts)
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.0.iter().map(|p| p.to_string()).join(","))
    }
}

/// Normal form of a determinantal polynomial with an arbitrary integer index
/// sequence: zero, or a genuine Schur polynomial up to sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Straightened {
    Zero,
    Signed(i8, Partition),
}

/// Straightens an integer sequence by the adjacent exchange
/// `(..., a, b, ...) -> -(..., b-1, a+1, ...)` applied to out-of-order
/// pairs. A pair with `a + 1 == b` is a fixpoint of the exchange up to
/// sign, hence zero; so is a straightened sequence with a negative tail.
pub fn straighten(seq: &[i64]) -> Straightened {
    let mut lambda: Vec<i64> = seq.to_vec();
    let mut sign: i8 = 1;
    loop {
        let pos = lambda.windows(2).position(|w| w[0] < w[1]);
        match pos {
            Some(i) => {
                let (a, b) = (lambda[i], lambda[i + 1]);
                if a + 1 == b {
                    return Straightened::Zero;
                }
                lambda[i] = b - 1;
                lambda[i + 1] = a + 1;
                sign = -sign;
            }
            None => break,
        }
    }
    if lambda.last().is_some_and(|&l| l < 0) {
        return Straightened::Zero;
    }
    Straightened::Signed(sign, Partition::new(lambda.into_iter().map(|l| l as u32).collect()))
}

/// A multiset of symbols `c_n^{(i)}`, stored as `(vertex, degree, mult)`
/// sorted by vertex, then degree descending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ChernMono(Vec<(u32, u32, u32)>);

impl ChernMono {
    pub fn one() -> ChernMono {
        ChernMono(Vec::new())
    }

    pub fn from_symbols(symbols: impl IntoIterator<Item = (u32, u32)>) -> ChernMono {
        let mut counts: BTreeMap<(u32, std::cmp::Reverse<u32>), u32> = BTreeMap::new();
        for (vertex, degree) in symbols {
            assert!(degree > 0, "only symbols of positive degree are stored");
            *counts.entry((vertex, std::cmp::Reverse(degree))).or_insert(0) += 1;
        }
        ChernMono(
            counts
                .into_iter()
                .map(|((v, std::cmp::Reverse(d)), m)| (v, d, m))
                .collect(),
        )
    }

    pub fn mul(&self, other: &ChernMono) -> ChernMono {
        ChernMono::from_symbols(
            self.expanded_symbols().chain(other.expanded_symbols()),
        )
    }

    fn expanded_symbols(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0
            .iter()
            .flat_map(|&(v, d, m)| std::iter::repeat_n((v, d), m as usize))
    }

    pub fn symbols(&self) -> &[(u32, u32, u32)] {
        &self.0
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&(_, d, m)| d as i64 * m as i64).sum()
    }
}

/// Integer combination of Chern-symbol monomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChernBasisPoly {
    terms: BTreeMap<ChernMono, BigInt>,
}

impl ChernBasisPoly {
    pub fn zero() -> ChernBasisPoly {
        ChernBasisPoly::default()
    }

    pub fn one() -> ChernBasisPoly {
        ChernBasisPoly::from_term(ChernMono::one(), BigInt::one())
    }

    pub fn from_term(m: ChernMono, c: BigInt) -> ChernBasisPoly {
        let mut p = ChernBasisPoly::default();
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: ChernMono, c: BigInt) {
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

    pub fn add(&self, other: &ChernBasisPoly) -> ChernBasisPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &ChernBasisPoly) -> ChernBasisPoly {
        let mut out = ChernBasisPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn neg(&self) -> ChernBasisPoly {
        ChernBasisPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> ChernBasisPoly {
        let mut out = ChernBasisPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * k);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ChernMono, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }
}

/// Integer combination of products of Schur polynomials, one partition per
/// vertex; the coefficients are the quiver coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SchurBasisPoly {
    terms: BTreeMap<Vec<Partition>, BigInt>,
}

impl SchurBasisPoly {
    pub fn zero() -> SchurBasisPoly {
        SchurBasisPoly::default()
    }

    pub fn add_term(&mut self, key: Vec<Partition>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Partition>, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Expands every Schur product into the Chern basis.
    pub fn to_chern(&self) -> ChernBasisPoly {
        let mut out = ChernBasisPoly::zero();
        for (key, c) in &self.terms {
            let mut prod = ChernBasisPoly::one();
            for (i, p) in key.iter().enumerate() {
                if !p.is_empty() {
                    let seq: Vec<i64> = p.parts().iter().map(|&x| x as i64).collect();
                    prod = prod.mul(&delta_to_chern(&seq, i as u32 + 1));
                }
            }
            out = out.add(&prod.scale(c));
        }
        out
    }
}

/// The determinant `det(c_{lambda_i + j - i})` expanded over the symbols
/// `c_n^{(vertex)}`, with `c_0 = 1` and `c_n = 0` for `n < 0`.
pub fn delta_to_chern(lambda: &[i64], vertex: u32) -> ChernBasisPoly {
    let r = lambda.len();
    if r == 0 {
        return ChernBasisPoly::one();
    }
    let mut out = ChernBasisPoly::zero();
    'perm: for perm in (0..r).permutations(r) {
        let mut symbols: Vec<(u32, u32)> = Vec::with_capacity(r);
        for (i, &j) in perm.iter().enumerate() {
            let n = lambda[i] + j as i64 - i as i64;
            if n < 0 {
                continue 'perm;
            }
            if n > 0 {
                symbols.push((vertex, n as u32));
            }
        }
        let sign = permutation_sign(&perm);
        out.add_term(ChernMono::from_symbols(symbols), BigInt::from(sign));
    }
    out
}

fn permutation_sign(perm: &[usize]) -> i64 {
    let mut sign = 1i64;
    for i in 0..perm.len() {
        for j in (i + 1)..perm.len() {
            if perm[i] > perm[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// One alphabet (or concatenation of alphabets) evaluated against the
/// symbol family of a vertex; `vars` fixes the slot order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarGroup {
    pub vertex: u32,
    pub vars: Vec<VarId>,
}

/// The monomial-wise operation sending `prod u_{ks}^{n}` to
/// `prod c_n^{(vertex(k))}`; negative exponents annihilate the term.
pub fn c_op(p: &LaurentPoly, vertex_of_alphabet: &BTreeMap<u32, u32>) -> Result<ChernBasisPoly> {
    let mut out = ChernBasisPoly::zero();
    'term: for (mono, coeff) in p.terms() {
        let mut symbols: Vec<(u32, u32)> = Vec::new();
        for &(v, e) in mono.exps() {
            if e < 0 {
                continue 'term;
            }
            let vertex = vertex_of_alphabet.get(&v.alphabet).copied().ok_or_else(|| {
                Error::InvalidInput(format!("alphabet {} has no assigned vertex", v.alphabet))
            })?;
            if e > 0 {
                symbols.push((vertex, e as u32));
            }
        }
        out.add_term(ChernMono::from_symbols(symbols), coeff.clone());
    }
    Ok(out)
}

fn group_sequences(
    mono: &crate::laurent::Monomial,
    groups: &[VarGroup],
) -> Result<Vec<Vec<i64>>> {
    let known: std::collections::BTreeSet<VarId> =
        groups.iter().flat_map(|g| g.vars.iter().copied()).collect();
    for (v, _) in mono.exps() {
        if !known.contains(v) {
            return Err(Error::InvalidInput(format!(
                "variable {v} is not covered by any alphabet group"
            )));
        }
    }
    Ok(groups
        .iter()
        .map(|g| g.vars.iter().map(|&v| mono.exp(v) as i64).collect())
        .collect())
}

/// The monomial-wise operation taking each alphabet's exponent sequence to
/// a determinantal polynomial, straightened; result in the Chern basis.
pub fn delta_op(p: &LaurentPoly, groups: &[VarGroup]) -> Result<ChernBasisPoly> {
    let mut out = ChernBasisPoly::zero();
    'term: for (mono, coeff) in p.terms() {
        let seqs = group_sequences(mono, groups)?;
        let mut sign = 1i8;
        let mut parts: Vec<(u32, Partition)> = Vec::new();
        for (g, seq) in groups.iter().zip(&seqs) {
            match straighten(seq) {
                Straightened::Zero => continue 'term,
                Straightened::Signed(s, p) => {
                    sign *= s;
                    if !p.is_empty() {
                        parts.push((g.vertex, p));
                    }
                }
            }
        }
        let mut prod = ChernBasisPoly::one();
        for (vertex, p) in parts {
            let seq: Vec<i64> = p.parts().iter().map(|&x| x as i64).collect();
            prod = prod.mul(&delta_to_chern(&seq, vertex));
        }
        out = out.add(&prod.scale(&(coeff * BigInt::from(sign))));
    }
    Ok(out)
}

/// Schur-product form of [`delta_op`]; only well-defined when no vertex
/// owns more than one alphabet group.
pub fn delta_op_schur(
    p: &LaurentPoly,
    groups: &[VarGroup],
    n_vertices: u32,
) -> Result<SchurBasisPoly> {
    let mut seen: std::collections::BTreeSet<u32> = std::collections::BTreeSet::new();
    for g in groups {
        if !seen.insert(g.vertex) {
            return Err(Error::MixedVertexSchurBasis(g.vertex));
        }
    }
    let mut out = SchurBasisPoly::zero();
    'term: for (mono, coeff) in p.terms() {
        let seqs = group_sequences(mono, groups)?;
        let mut sign = 1i8;
        let mut key = vec![Partition::empty(); n_vertices as usize];
        for (g, seq) in groups.iter().zip(&seqs) {
            match straighten(seq) {
                Straightened::Zero => continue 'term,
                Straightened::Signed(s, p) => {
                    sign *= s;
                    key[(g.vertex - 1) as usize] = p;
                }
            }
        }
        out.add_term(key, coeff * BigInt::from(sign));
    }
    Ok(out)
}
