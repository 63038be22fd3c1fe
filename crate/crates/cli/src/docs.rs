//! JSON document types and their (de)serialization helpers.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use quiverpoly::{
    ChernBasisPoly, ChernMono, DirectedPartition, DynkinType, Partition,
    PositivityReport, PositiveRoot, Quiver, SchurBasisPoly,
};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuiverSpec {
    pub vertices: u32,
    pub arrows: Vec<[u32; 2]>,
    /// Optional relabelling onto a canonical Dynkin diagram; validated as a
    /// graph isomorphism, not used by any computation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dynkin_labelling: Option<Vec<u32>>,
}

/// Edges of the canonical diagram of each type, on labels 1..=n.
fn canonical_edges(t: DynkinType) -> Vec<(u32, u32)> {
    match t {
        DynkinType::A(n) => (1..n).map(|i| (i, i + 1)).collect(),
        DynkinType::D(n) => {
            let mut edges: Vec<(u32, u32)> = (1..n - 1).map(|i| (i, i + 1)).collect();
            edges.push((n - 2, n));
            edges
        }
        DynkinType::E(n) => {
            let mut edges: Vec<(u32, u32)> = (1..n - 1).map(|i| (i, i + 1)).collect();
            edges.push((3, n));
            edges
        }
    }
}

pub fn parse_quiver_spec(text: &str) -> Result<(Quiver, QuiverSpec), String> {
    let spec: QuiverSpec =
        serde_json::from_str(text).map_err(|e| format!("bad quiver document: {e}"))?;
    let q = Quiver::new(
        spec.vertices,
        spec.arrows.iter().map(|a| (a[0], a[1])).collect(),
    )
    .map_err(|e| e.to_string())?;
    if let Some(labelling) = &spec.dynkin_labelling {
        validate_labelling(&q, labelling)?;
    }
    Ok((q, spec))
}

fn validate_labelling(q: &Quiver, labelling: &[u32]) -> Result<(), String> {
    let n = q.n_vertices();
    if labelling.len() != n as usize {
        return Err(format!(
            "dynkin_labelling has {} entries, quiver has {n} vertices",
            labelling.len()
        ));
    }
    let seen: BTreeSet<u32> = labelling.iter().copied().collect();
    if seen != (1..=n).collect() {
        return Err("dynkin_labelling must be a permutation of 1..=N".into());
    }
    let t = q.detect_dynkin_type().map_err(|e| e.to_string())?;
    let canonical: BTreeSet<(u32, u32)> = canonical_edges(t)
        .into_iter()
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    let relabelled: BTreeSet<(u32, u32)> = q
        .arrows()
        .iter()
        .map(|&(tail, head)| {
            let (a, b) = (
                labelling[(tail - 1) as usize],
                labelling[(head - 1) as usize],
            );
            (a.min(b), a.max(b))
        })
        .collect();
    if relabelled != canonical {
        return Err(format!(
            "dynkin_labelling is not a graph isomorphism onto the canonical {t} diagram"
        ));
    }
    Ok(())
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RootsDocument {
    pub dynkin_type: String,
    pub count: usize,
    pub roots: Vec<Vec<u32>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct OrbitEntry {
    pub index: usize,
    pub mults: Vec<u32>,
    pub sparse: Vec<(usize, u32)>,
    pub codim: i64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct OrbitsDocument {
    pub dimension: Vec<u32>,
    pub count: usize,
    pub orbits: Vec<OrbitEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChernSymbolDoc {
    pub vertex: u32,
    pub degree: u32,
    pub multiplicity: u32,
}

/// One Chern-basis term: symbol list and integer coefficient (as a decimal
/// string, so arbitrary precision survives the round trip).
pub type ChernTermDoc = (Vec<ChernSymbolDoc>, String);

/// One Schur-basis term: one partition per vertex, and the coefficient.
pub type SchurTermDoc = (Vec<Vec<u32>>, String);

#[derive(Debug, Serialize, Deserialize)]
pub struct PositivityDoc {
    pub all_nonnegative: bool,
    pub negative_terms: Vec<SchurTermDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ResultDocument {
    pub quiver: QuiverSpec,
    pub dimension: Vec<u32>,
    pub orbit: Vec<u32>,
    pub orbit_sparse: Vec<(usize, u32)>,
    pub form: String,
    pub partition: Vec<Vec<Vec<u32>>>,
    pub degree: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chern: Option<Vec<ChernTermDoc>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schur: Option<Vec<SchurTermDoc>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub positivity: Option<PositivityDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

pub fn partition_doc(p: &DirectedPartition) -> Vec<Vec<Vec<u32>>> {
    p.blocks
        .iter()
        .map(|b| b.iter().map(|r| r.coords().to_vec()).collect())
        .collect()
}

pub fn parse_partition_file(text: &str, q: &Quiver) -> Result<DirectedPartition, String> {
    let blocks: Vec<Vec<Vec<u32>>> =
        serde_json::from_str(text).map_err(|e| format!("bad partition document: {e}"))?;
    let n = q.n_vertices() as usize;
    let roots = quiverpoly::positive_roots(q).map_err(|e| e.to_string())?;
    let mut out = Vec::with_capacity(blocks.len());
    for block in blocks {
        let mut b = Vec::with_capacity(block.len());
        for coords in block {
            if coords.len() != n {
                return Err(format!(
                    "root {coords:?} has {} coordinates, quiver has {n} vertices",
                    coords.len()
                ));
            }
            let root = PositiveRoot(coords);
            if !roots.contains(&root) {
                return Err(format!("{root:?} is not a positive root of this quiver"));
            }
            b.push(root);
        }
        out.push(b);
    }
    Ok(DirectedPartition::new(out))
}

pub fn chern_doc(p: &ChernBasisPoly) -> Vec<ChernTermDoc> {
    p.terms()
        .map(|(mono, coeff)| {
            (
                mono.symbols()
                    .iter()
                    .map(|&(vertex, degree, multiplicity)| ChernSymbolDoc {
                        vertex,
                        degree,
                        multiplicity,
                    })
                    .collect(),
                coeff.to_string(),
            )
        })
        .collect()
}

// Exercised by the round-trip tests; the binary itself only serializes.
#[cfg_attr(not(test), allow(dead_code))]
pub fn parse_chern_doc(terms: &[ChernTermDoc]) -> Result<ChernBasisPoly, String> {
    let mut out = ChernBasisPoly::zero();
    for (symbols, coeff) in terms {
        let coeff: BigInt = coeff
            .parse()
            .map_err(|e| format!("bad coefficient {coeff:?}: {e}"))?;
        let mono = ChernMono::from_symbols(symbols.iter().flat_map(|s| {
            std::iter::repeat_n((s.vertex, s.degree), s.multiplicity as usize)
        }));
        out.add_term(mono, coeff);
    }
    Ok(out)
}

pub fn schur_doc(p: &SchurBasisPoly) -> Vec<SchurTermDoc> {
    p.terms().map(|(key, coeff)| schur_term_doc(key, coeff)).collect()
}

fn schur_term_doc(key: &[Partition], coeff: &BigInt) -> SchurTermDoc {
    (
        key.iter().map(|p| p.parts().to_vec()).collect(),
        coeff.to_string(),
    )
}

pub fn positivity_doc(r: &PositivityReport) -> PositivityDoc {
    PositivityDoc {
        all_nonnegative: r.is_empty(),
        negative_terms: r
            .negative
            .iter()
            .map(|(key, coeff)| schur_term_doc(key, coeff))
            .collect(),
    }
}
