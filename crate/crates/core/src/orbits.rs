//! Orbit labels of a quiver representation for a fixed dimension vector.
//!
//! An orbit is labelled by multiplicities of positive roots whose weighted
//! sum of coordinate vectors equals the dimension vector.

use crate::error::{Error, Result};
use crate::rootsys::{positive_roots, PositiveRoot, Quiver};

pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;

/// Multiplicities over the canonical (lexicographic) positive-root order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct OrbitLabel {
    pub mults: Vec<u32>,
}

impl OrbitLabel {
    /// Sparse view: `(root index, multiplicity)` pairs in root order.
    pub fn sparse(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.mults
            .iter()
            .enumerate()
            .filter(|(_, m)| **m > 0)
            .map(|(i, m)| (i, *m))
    }

    pub fn is_zero(&self) -> bool {
        self.mults.iter().all(|&m| m == 0)
    }

    /// Roots with nonzero multiplicity.
    pub fn support<'a>(&self, roots: &'a [PositiveRoot]) -> Vec<&'a PositiveRoot> {
        self.sparse().map(|(i, _)| &roots[i]).collect()
    }
}

/// A failed coordinate of the defining constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitViolation {
    pub vertex: u32,
    pub expected: u32,
    pub got: u32,
}

/// Checks `sum_a m_a d_i(a) = e_i` coordinate-wise; returns failing vertices.
pub fn validate_orbit(
    roots: &[PositiveRoot],
    e: &[u32],
    m: &OrbitLabel,
) -> Vec<OrbitViolation> {
    let mut got = vec![0u32; e.len()];
    for (idx, mult) in m.sparse() {
        for (i, d) in roots[idx].coords().iter().enumerate() {
            got[i] += mult * d;
        }
    }
    e.iter()
        .zip(&got)
        .enumerate()
        .filter(|(_, (want, have))| want != have)
        .map(|(i, (want, have))| OrbitViolation {
            vertex: i as u32 + 1,
            expected: *want,
            got: *have,
        })
        .collect()
}

/// Enumerates all orbit labels for the dimension vector `e`, each exactly
/// once, sorted on the full multiplicity vector.
pub fn enumerate_orbits(q: &Quiver, e: &[u32]) -> Result<Vec<OrbitLabel>> {
    enumerate_orbits_capped(q, e, DEFAULT_ORBIT_CAP)
}

pub fn enumerate_orbits_capped(q: &Quiver, e: &[u32], cap: usize) -> Result<Vec<OrbitLabel>> {
    let n = q.n_vertices() as usize;
    if e.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: e.len() });
    }
    let roots = positive_roots(q)?;
    let mut out: Vec<OrbitLabel> = Vec::new();
    let mut mults = vec![0u32; roots.len()];
    let mut remaining: Vec<u32> = e.to_vec();
    dfs(&roots, 0, &mut mults, &mut remaining, &mut out, cap)?;
    out.sort();
    Ok(out)
}

fn dfs(
    roots: &[PositiveRoot],
    idx: usize,
    mults: &mut Vec<u32>,
    remaining: &mut Vec<u32>,
    out: &mut Vec<OrbitLabel>,
    cap: usize,
) -> Result<()> {
    if idx == roots.len() {
        if remaining.iter().all(|&r| r == 0) {
            if out.len() >= cap {
                return Err(Error::SearchSpaceTooLarge { cap });
            }
            out.push(OrbitLabel { mults: mults.clone() });
        }
        return Ok(());
    }
    let d = roots[idx].coords();
    let bound = d
        .iter()
        .zip(remaining.iter())
        .filter(|(di, _)| **di > 0)
        .map(|(di, ri)| ri / di)
        .min()
        .unwrap_or(0);
    for m in 0..=bound {
        for (i, di) in d.iter().enumerate() {
            remaining[i] -= m * di;
        }
        mults[idx] = m;
        let r = dfs(roots, idx + 1, mults, remaining, out, cap);
        mults[idx] = 0;
        for (i, di) in d.iter().enumerate() {
            remaining[i] += m * di;
        }
        r?;
    }
    Ok(())
}
