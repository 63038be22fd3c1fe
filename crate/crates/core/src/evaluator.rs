//! End-to-end computation of orbit-closure classes from an orbit label and
//! a directed partition, in three equivalent forms, plus basis conversion,
//! the rank-condition determinant oracle, and positivity reporting.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::delta_ops::{
    c_op, delta_op, delta_op_schur, delta_to_chern, ChernBasisPoly, Partition,
    SchurBasisPoly, VarGroup,
};
use crate::error::{Error, Result};
use crate::laurent::{expand_capped, prune_inert, ExponentWindow, LaurentPoly, VarId};
use crate::orbits::{validate_orbit, OrbitLabel};
use crate::resolution::{
    build_generating_function, resolution_pair, total_codim, DirectedPartition, GfForm,
    ResolutionPair,
};
use crate::rootsys::{positive_roots, Quiver};

pub const DEFAULT_TERM_CAP: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComputeOptions {
    /// Drop factors that cannot affect any monomial inside the window.
    pub prune: bool,
    /// Cap on the number of simultaneously live expansion terms.
    pub max_terms: usize,
}

impl Default for ComputeOptions {
    fn default() -> ComputeOptions {
        ComputeOptions { prune: true, max_terms: DEFAULT_TERM_CAP }
    }
}

/// What was computed and how.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub orbit: OrbitLabel,
    pub partition: DirectedPartition,
    pub form: GfForm,
}

/// The class of an orbit closure: always in the Chern basis, additionally
/// in the Schur-product basis when computed through the per-vertex form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverPolynomial {
    pub chern: ChernBasisPoly,
    pub schur: Option<SchurBasisPoly>,
    pub degree: i64,
    pub provenance: Provenance,
}

fn prepare(
    q: &Quiver,
    e: &[u32],
    m: &OrbitLabel,
    partition: &DirectedPartition,
    form: GfForm,
) -> Result<(ResolutionPair, crate::laurent::GeneratingFunction, i64)> {
    let roots = positive_roots(q)?;
    let violations = validate_orbit(&roots, e, m);
    if !violations.is_empty() {
        return Err(Error::InvalidInput(format!(
            "orbit label does not match the dimension vector: {violations:?}"
        )));
    }
    let pair = resolution_pair(q, &roots, m, partition)?;
    let (gf, fd) = build_generating_function(q, &pair, form);
    let codim = total_codim(&pair, &fd);
    Ok((pair, gf, codim))
}

fn alphabet_vars(pair: &ResolutionPair, k: usize) -> Vec<VarId> {
    (1..=pair.ranks[k]).map(|s| VarId::new(k as u32 + 1, s)).collect()
}

/// Window for the discriminant form: every exponent nonnegative.
fn c_window(codim: i64) -> ExponentWindow {
    ExponentWindow { lower: BTreeMap::new(), total_degree: codim as i32 }
}

/// Window for the per-alphabet determinant form: slot `s` of an alphabet of
/// size `r` survives down to exponent `s - r`.
fn delta_window(pair: &ResolutionPair, codim: i64) -> ExponentWindow {
    let mut lower = BTreeMap::new();
    for (k, &r) in pair.ranks.iter().enumerate() {
        for s in 1..=r {
            lower.insert(VarId::new(k as u32 + 1, s), s as i32 - r as i32);
        }
    }
    ExponentWindow { lower, total_degree: codim as i32 }
}

/// Window for the concatenated per-vertex form: slot `s` of alphabet `k`
/// sits at position `offset_k + s` of the vertex's concatenated alphabet of
/// total size `R`, so it survives down to `offset_k + s - R`.
fn vertex_window(q: &Quiver, pair: &ResolutionPair, codim: i64) -> ExponentWindow {
    let mut lower = BTreeMap::new();
    for v in 1..=q.n_vertices() {
        let total: u32 = (0..pair.len())
            .filter(|&k| pair.vertices[k] == v)
            .map(|k| pair.ranks[k])
            .sum();
        let mut offset = 0u32;
        for k in 0..pair.len() {
            if pair.vertices[k] != v {
                continue;
            }
            for s in 1..=pair.ranks[k] {
                lower.insert(
                    VarId::new(k as u32 + 1, s),
                    (offset + s) as i32 - total as i32,
                );
            }
            offset += pair.ranks[k];
        }
    }
    ExponentWindow { lower, total_degree: codim as i32 }
}

fn expanded(
    gf: &crate::laurent::GeneratingFunction,
    w: &ExponentWindow,
    opts: &ComputeOptions,
) -> Result<LaurentPoly> {
    if opts.prune {
        expand_capped(&prune_inert(gf, w), w, opts.max_terms)
    } else {
        expand_capped(gf, w, opts.max_terms)
    }
}

/// Groups for the per-vertex form: the concatenation of the alphabets of
/// each vertex, in pair order.
fn vertex_groups(q: &Quiver, pair: &ResolutionPair) -> Vec<VarGroup> {
    (1..=q.n_vertices())
        .map(|v| VarGroup {
            vertex: v,
            vars: (0..pair.len())
                .filter(|&k| pair.vertices[k] == v)
                .flat_map(|k| alphabet_vars(pair, k))
                .collect(),
        })
        .collect()
}

/// Computes the class as a constant-term extraction against the full
/// generating function, including discriminant factors.
pub fn compute_c_form(
    q: &Quiver,
    e: &[u32],
    m: &OrbitLabel,
    partition: &DirectedPartition,
    opts: &ComputeOptions,
) -> Result<QuiverPolynomial> {
    let (pair, gf, codim) = prepare(q, e, m, partition, GfForm::CForm)?;
    let p = expanded(&gf, &c_window(codim), opts)?;
    let vertex_of: BTreeMap<u32, u32> = pair
        .vertices
        .iter()
        .enumerate()
        .map(|(k, &v)| (k as u32 + 1, v))
        .collect();
    Ok(QuiverPolynomial {
        chern: c_op(&p, &vertex_of)?,
        schur: None,
        degree: codim,
        provenance: Provenance {
            orbit: m.clone(),
            partition: partition.clone(),
            form: GfForm::CForm,
        },
    })
}

/// Computes the class by applying the per-alphabet determinant operation to
/// the generating function without discriminant factors.
pub fn compute_delta_form(
    q: &Quiver,
    e: &[u32],
    m: &OrbitLabel,
    partition: &DirectedPartition,
    opts: &ComputeOptions,
) -> Result<QuiverPolynomial> {
    let (pair, gf, codim) = prepare(q, e, m, partition, GfForm::DeltaForm)?;
    let p = expanded(&gf, &delta_window(&pair, codim), opts)?;
    let groups: Vec<VarGroup> = (0..pair.len())
        .map(|k| VarGroup { vertex: pair.vertices[k], vars: alphabet_vars(&pair, k) })
        .collect();
    Ok(QuiverPolynomial {
        chern: delta_op(&p, &groups)?,
        schur: None,
        degree: codim,
        provenance: Provenance {
            orbit: m.clone(),
            partition: partition.clone(),
            form: GfForm::DeltaForm,
        },
    })
}

/// Computes the class through the per-vertex concatenated alphabets, where
/// only denominator interference factors remain; this is the only form that
/// also yields the Schur-product basis directly.
pub fn compute_vertex_form(
    q: &Quiver,
    e: &[u32],
    m: &OrbitLabel,
    partition: &DirectedPartition,
    opts: &ComputeOptions,
) -> Result<QuiverPolynomial> {
    let (pair, gf, codim) = prepare(q, e, m, partition, GfForm::VertexForm)?;
    let p = expanded(&gf, &vertex_window(q, &pair, codim), opts)?;
    let groups = vertex_groups(q, &pair);
    let schur = delta_op_schur(&p, &groups, q.n_vertices())?;
    Ok(QuiverPolynomial {
        chern: schur.to_chern(),
        schur: Some(schur),
        degree: codim,
        provenance: Provenance {
            orbit: m.clone(),
            partition: partition.clone(),
            form: GfForm::VertexForm,
        },
    })
}

/// Dispatches on the requested form.
pub fn compute(
    q: &Quiver,
    e: &[u32],
    m: &OrbitLabel,
    partition: &DirectedPartition,
    form: GfForm,
    opts: &ComputeOptions,
) -> Result<QuiverPolynomial> {
    match form {
        GfForm::CForm => compute_c_form(q, e, m, partition, opts),
        GfForm::DeltaForm => compute_delta_form(q, e, m, partition, opts),
        GfForm::VertexForm => compute_vertex_form(q, e, m, partition, opts),
    }
}

/// Codimension of an orbit closure, available without any expansion.
pub fn orbit_codim(
    q: &Quiver,
    m: &OrbitLabel,
    partition: &DirectedPartition,
) -> Result<i64> {
    let roots = positive_roots(q)?;
    let pair = resolution_pair(q, &roots, m, partition)?;
    let (_, fd) = build_generating_function(q, &pair, GfForm::VertexForm);
    Ok(total_codim(&pair, &fd))
}

/// Every negative coefficient of the Schur-product expansion. An empty
/// report is evidence for (never a proof of) nonnegativity of the quiver
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PositivityReport {
    pub negative: Vec<(Vec<Partition>, BigInt)>,
}

impl PositivityReport {
    pub fn is_empty(&self) -> bool {
        self.negative.is_empty()
    }
}

pub fn positivity_report(p: &QuiverPolynomial) -> Result<PositivityReport> {
    let schur = p.schur.as_ref().ok_or(Error::SchurFormMissing)?;
    Ok(PositivityReport {
        negative: schur
            .terms()
            .filter(|(_, c)| c.is_negative())
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect(),
    })
}

/// The rank-condition determinant `det(c_{r+j-i})` of size `e2 - e1 + r`,
/// with symbols at vertex 2 of the two-vertex quiver `1 -> 2`.
pub fn gtp_oracle(e1: u32, e2: u32, r: u32) -> ChernBasisPoly {
    assert!(r <= e1 && e1 <= e2);
    let size = (e2 - e1 + r) as usize;
    delta_to_chern(&vec![r as i64; size], 2)
}

/// The orbit of the two-vertex quiver `1 -> 2` with dimension `(e1, e2)`
/// whose generic map has rank `e1 - r`, in canonical root order.
pub fn gtp_orbit(e1: u32, e2: u32, r: u32) -> OrbitLabel {
    assert!(r <= e1 && e1 <= e2);
    // Root order is lexicographic: (0,1), (1,0), (1,1).
    OrbitLabel { mults: vec![e2 - e1 + r, r, e1 - r] }
}
