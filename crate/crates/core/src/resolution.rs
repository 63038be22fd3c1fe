//! Directed partitions of positive roots, resolution pairs, and assembly of
//! the rational generating functions whose bounded expansions give the
//! orbit-closure classes.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::laurent::{BinomialFactor, GeneratingFunction, Monomial, VarId};
use crate::orbits::OrbitLabel;
use crate::rootsys::{euler_form_roots, PositiveRoot, Quiver};

/// Ordered blocks of positive roots with the sign conditions on the Euler
/// form: nonnegative within a block, nonnegative forward and nonpositive
/// backward across blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedPartition {
    pub blocks: Vec<Vec<PositiveRoot>>,
}

impl DirectedPartition {
    pub fn new(blocks: Vec<Vec<PositiveRoot>>) -> DirectedPartition {
        let mut blocks = blocks;
        for b in &mut blocks {
            b.sort();
        }
        DirectedPartition { blocks }
    }

    pub fn covers(&self, support: &[&PositiveRoot]) -> bool {
        let all: BTreeSet<&PositiveRoot> = self.blocks.iter().flatten().collect();
        support.iter().all(|r| all.contains(r))
    }
}

/// One failing pair of the directedness conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedViolation {
    pub block_a: usize,
    pub root_a: PositiveRoot,
    pub block_b: usize,
    pub root_b: PositiveRoot,
    pub forward: i64,
    pub backward: i64,
}

/// Checks both directedness conditions pairwise; empty result means valid.
pub fn verify_directed(q: &Quiver, p: &DirectedPartition) -> Vec<DirectedViolation> {
    let mut violations = Vec::new();
    for (bi, block_i) in p.blocks.iter().enumerate() {
        for (bj, block_j) in p.blocks.iter().enumerate().skip(bi) {
            for a in block_i {
                for b in block_j {
                    if bi == bj {
                        let fwd = euler_form_roots(q, a, b);
                        if fwd < 0 {
                            violations.push(DirectedViolation {
                                block_a: bi,
                                root_a: a.clone(),
                                block_b: bj,
                                root_b: b.clone(),
                                forward: fwd,
                                backward: euler_form_roots(q, b, a),
                            });
                        }
                    } else {
                        let fwd = euler_form_roots(q, a, b);
                        let back = euler_form_roots(q, b, a);
                        if fwd < 0 || back > 0 {
                            violations.push(DirectedViolation {
                                block_a: bi,
                                root_a: a.clone(),
                                block_b: bj,
                                root_b: b.clone(),
                                forward: fwd,
                                backward: back,
                            });
                        }
                    }
                }
            }
        }
    }
    violations
}

/// Tie-breaking preference when several roots qualify as the next block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionStrategy {
    PreferLow,
    PreferHigh,
}

const EXHAUSTIVE_BLOCK_LIMIT: usize = 16;

/// Builds a directed partition covering `support` by greedy front
/// extraction: a root that pairs nonnegatively forward and nonpositively
/// backward against everything remaining can open a singleton block. When
/// no singleton qualifies, small remainders are searched exhaustively for
/// a minimal valid front block.
pub fn find_directed_partition(
    q: &Quiver,
    support: &[PositiveRoot],
    strategy: PartitionStrategy,
) -> Result<DirectedPartition> {
    let mut remaining: Vec<PositiveRoot> = support.to_vec();
    remaining.sort();
    remaining.dedup();
    let mut blocks: Vec<Vec<PositiveRoot>> = Vec::new();

    while !remaining.is_empty() {
        let singles: Vec<usize> = (0..remaining.len())
            .filter(|&i| {
                remaining.iter().enumerate().all(|(j, b)| {
                    i == j
                        || (euler_form_roots(q, &remaining[i], b) >= 0
                            && euler_form_roots(q, b, &remaining[i]) <= 0)
                })
            })
            .collect();
        if let Some(&pick) = match strategy {
            PartitionStrategy::PreferLow => singles.first(),
            PartitionStrategy::PreferHigh => singles.last(),
        } {
            blocks.push(vec![remaining.remove(pick)]);
            continue;
        }
        if remaining.len() > EXHAUSTIVE_BLOCK_LIMIT {
            return Err(Error::ConstructionFailed(format!(
                "no singleton front block among {} remaining roots",
                remaining.len()
            )));
        }
        let n = remaining.len();
        let mut masks: Vec<u32> = (1..(1u32 << n)).collect();
        masks.sort_by_key(|m| m.count_ones());
        let found = masks.into_iter().find(|&mask| {
            let inside: Vec<&PositiveRoot> = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| &remaining[i])
                .collect();
            let outside: Vec<&PositiveRoot> = (0..n)
                .filter(|i| mask & (1 << i) == 0)
                .map(|i| &remaining[i])
                .collect();
            inside.iter().all(|a| {
                inside.iter().all(|b| euler_form_roots(q, a, b) >= 0)
                    && outside.iter().all(|b| {
                        euler_form_roots(q, a, b) >= 0 && euler_form_roots(q, b, a) <= 0
                    })
            })
        });
        match found {
            Some(mask) => {
                let block: Vec<PositiveRoot> = (0..n)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| remaining[i].clone())
                    .collect();
                remaining.retain(|r| !block.contains(r));
                blocks.push(block);
            }
            None => {
                return Err(Error::ConstructionFailed(
                    "no valid front block exists for the remaining roots".into(),
                ))
            }
        }
    }

    let partition = DirectedPartition::new(blocks);
    let violations = verify_directed(q, &partition);
    if !violations.is_empty() {
        return Err(Error::ConstructionFailed(format!(
            "constructed partition fails verification: {violations:?}"
        )));
    }
    Ok(partition)
}

/// Vertex and rank sequences induced by an orbit label and a directed
/// partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionPair {
    pub vertices: Vec<u32>,
    pub ranks: Vec<u32>,
}

impl ResolutionPair {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Derives the resolution pair. Per block, the rank at vertex `i` is the
/// weighted root sum; vertices appear in a topological order of the quiver
/// restricted to the block's root supports (lowest index first among the
/// ready ones). Vertices whose rank happens to be zero are kept, with an
/// empty alphabet.
pub fn resolution_pair(
    q: &Quiver,
    roots: &[PositiveRoot],
    m: &OrbitLabel,
    p: &DirectedPartition,
) -> Result<ResolutionPair> {
    let support = m.support(roots);
    if !p.covers(&support) {
        return Err(Error::InvalidInput(
            "directed partition does not cover the orbit support".into(),
        ));
    }
    let mult_of = |root: &PositiveRoot| -> u32 {
        roots
            .iter()
            .position(|r| r == root)
            .map(|i| m.mults[i])
            .unwrap_or(0)
    };

    let mut vertices = Vec::new();
    let mut ranks = Vec::new();
    for block in &p.blocks {
        let mut block_vertices: BTreeSet<u32> = BTreeSet::new();
        let n = q.n_vertices() as usize;
        let mut rank = vec![0u32; n];
        for root in block {
            for v in root.support() {
                block_vertices.insert(v);
            }
            let mult = mult_of(root);
            for (i, d) in root.coords().iter().enumerate() {
                rank[i] += mult * d;
            }
        }
        // Topological order: tails before heads, lowest index first.
        let mut emitted: BTreeSet<u32> = BTreeSet::new();
        while emitted.len() < block_vertices.len() {
            let next = block_vertices
                .iter()
                .copied()
                .find(|&v| {
                    !emitted.contains(&v)
                        && q.arrows().iter().all(|&(t, h)| {
                            h != v || !block_vertices.contains(&t) || emitted.contains(&t)
                        })
                })
                .expect("orientation of a tree restricts to a DAG");
            emitted.insert(next);
            vertices.push(next);
            ranks.push(rank[(next - 1) as usize]);
        }
    }
    Ok(ResolutionPair { vertices, ranks })
}

/// Which factors of the generating function to carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GfForm {
    /// Monomial, discriminant and interference factors.
    CForm,
    /// Monomial and interference factors.
    DeltaForm,
    /// Monomial and denominator interference factors only.
    VertexForm,
}

/// Per-alphabet structural data: later same-vertex variables, later
/// head-vertex variables, and the monomial exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorData {
    pub same_vertex_later: Vec<Vec<VarId>>,
    pub head_vertex_later: Vec<Vec<VarId>>,
    pub monomial_exponent: Vec<i64>,
}

fn alphabet_vars(pair: &ResolutionPair, k: usize) -> Vec<VarId> {
    (1..=pair.ranks[k]).map(|s| VarId::new(k as u32 + 1, s)).collect()
}

/// Assembles the generating function and its factor data for a pair.
pub fn build_generating_function(
    q: &Quiver,
    pair: &ResolutionPair,
    form: GfForm,
) -> (GeneratingFunction, FactorData) {
    let p = pair.len();
    let mut same_vertex_later = vec![Vec::new(); p];
    let mut head_vertex_later = vec![Vec::new(); p];
    let mut monomial_exponent = vec![0i64; p];
    for k in 0..p {
        let ik = pair.vertices[k];
        let tails = q.tails_into(ik);
        let heads = q.heads_of(ik);
        for l in (k + 1)..p {
            let il = pair.vertices[l];
            if il == ik {
                same_vertex_later[k].extend(alphabet_vars(pair, l));
                monomial_exponent[k] -= pair.ranks[l] as i64;
            }
            if tails.contains(&il) {
                monomial_exponent[k] += pair.ranks[l] as i64;
            }
            if heads.contains(&il) {
                head_vertex_later[k].extend(alphabet_vars(pair, l));
            }
        }
    }

    let mut exps: Vec<(VarId, i32)> = Vec::new();
    let mut factors: Vec<BinomialFactor> = Vec::new();
    for k in 0..p {
        let vars = alphabet_vars(pair, k);
        for &v in &vars {
            exps.push((v, monomial_exponent[k] as i32));
        }
        if matches!(form, GfForm::CForm) {
            for i in 0..vars.len() {
                for j in (i + 1)..vars.len() {
                    factors.push(BinomialFactor { num: vars[i], den: vars[j], mult: 1 });
                }
            }
        }
        if matches!(form, GfForm::CForm | GfForm::DeltaForm) {
            for &v in &vars {
                for &x in &same_vertex_later[k] {
                    factors.push(BinomialFactor { num: v, den: x, mult: 1 });
                }
            }
        }
        for &v in &vars {
            for &x in &head_vertex_later[k] {
                factors.push(BinomialFactor { num: v, den: x, mult: -1 });
            }
        }
    }

    (
        GeneratingFunction::new(Monomial::from_exps(exps), factors),
        FactorData { same_vertex_later, head_vertex_later, monomial_exponent },
    )
}

/// Degree of the monomial part: `sum_k r_k n_k`.
pub fn total_codim(pair: &ResolutionPair, fd: &FactorData) -> i64 {
    pair.ranks
        .iter()
        .zip(&fd.monomial_exponent)
        .map(|(&r, &n)| r as i64 * n)
        .sum()
}

/// The interference factors of a pair, merged and sorted.
pub fn interference_factors(q: &Quiver, pair: &ResolutionPair) -> Vec<BinomialFactor> {
    let (_, fd) = build_generating_function(q, pair, GfForm::DeltaForm);
    let mut factors = Vec::new();
    for k in 0..pair.len() {
        for &v in &alphabet_vars(pair, k) {
            for &x in &fd.same_vertex_later[k] {
                factors.push(BinomialFactor { num: v, den: x, mult: 1 });
            }
            for &x in &fd.head_vertex_later[k] {
                factors.push(BinomialFactor { num: v, den: x, mult: -1 });
            }
        }
    }
    normalize_factors(factors)
}

/// The same product written as a closed double product over vertex pairs
/// (numerator) and arrow pairs (denominator).
pub fn closed_interference_factors(q: &Quiver, pair: &ResolutionPair) -> Vec<BinomialFactor> {
    let mut factors = Vec::new();
    for v in 1..=q.n_vertices() {
        for k in 0..pair.len() {
            for l in (k + 1)..pair.len() {
                if pair.vertices[k] == v && pair.vertices[l] == v {
                    for x in alphabet_vars(pair, k) {
                        for y in alphabet_vars(pair, l) {
                            factors.push(BinomialFactor { num: x, den: y, mult: 1 });
                        }
                    }
                }
            }
        }
    }
    for &(t, h) in q.arrows() {
        for k in 0..pair.len() {
            for l in (k + 1)..pair.len() {
                if pair.vertices[k] == t && pair.vertices[l] == h {
                    for x in alphabet_vars(pair, k) {
                        for y in alphabet_vars(pair, l) {
                            factors.push(BinomialFactor { num: x, den: y, mult: -1 });
                        }
                    }
                }
            }
        }
    }
    normalize_factors(factors)
}

fn normalize_factors(factors: Vec<BinomialFactor>) -> Vec<BinomialFactor> {
    GeneratingFunction::new(Monomial::one(), factors).factors
}
