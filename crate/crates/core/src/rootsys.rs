//! ADE root-system data and the Euler form of a quiver.
//!
//! Vertices are numbered `1..=N`. Positive roots are stored as coordinate
//! vectors in the simple-root basis, where simple root `i` sits at quiver
//! vertex `i`. Roots are therefore computed directly on the quiver's own
//! underlying graph; no relabelling onto a reference diagram is needed.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// An oriented simply-laced Dynkin graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    n_vertices: u32,
    arrows: Vec<(u32, u32)>,
}

/// The type of the underlying unoriented graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DynkinType {
    A(u32),
    D(u32),
    E(u32),
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E(n) => write!(f, "E{n}"),
        }
    }
}

/// A positive root, as coordinates `d_i` in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PositiveRoot(pub Vec<u32>);

impl PositiveRoot {
    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn coord(&self, vertex: u32) -> u32 {
        self.0[(vertex - 1) as usize]
    }

    /// Vertices `i` with `d_i > 0`.
    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, d)| **d > 0)
            .map(|(i, _)| i as u32 + 1)
    }
}

impl fmt::Display for PositiveRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

/// A rank per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionVector(pub Vec<u32>);

impl DimensionVector {
    pub fn ranks(&self) -> &[u32] {
        &self.0
    }
}

impl Quiver {
    /// Builds a quiver and checks that its underlying graph is ADE.
    pub fn new(n_vertices: u32, arrows: Vec<(u32, u32)>) -> Result<Quiver> {
        let q = Quiver { n_vertices, arrows };
        q.detect_dynkin_type()?;
        Ok(q)
    }

    pub fn n_vertices(&self) -> u32 {
        self.n_vertices
    }

    pub fn arrows(&self) -> &[(u32, u32)] {
        &self.arrows
    }

    /// Reverses every arrow.
    pub fn reversed(&self) -> Quiver {
        Quiver {
            n_vertices: self.n_vertices,
            arrows: self.arrows.iter().map(|&(t, h)| (h, t)).collect(),
        }
    }

    /// Tails of arrows pointing into `i`.
    pub fn tails_into(&self, i: u32) -> Vec<u32> {
        let mut v: Vec<u32> = self
            .arrows
            .iter()
            .filter(|&&(_, h)| h == i)
            .map(|&(t, _)| t)
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Heads of arrows pointing out of `i`.
    pub fn heads_of(&self, i: u32) -> Vec<u32> {
        let mut v: Vec<u32> = self
            .arrows
            .iter()
            .filter(|&&(t, _)| t == i)
            .map(|&(_, h)| h)
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    fn undirected_adjacency(&self) -> Result<Vec<Vec<bool>>> {
        let n = self.n_vertices as usize;
        if n == 0 {
            return Err(Error::NotDynkin("quiver has no vertices".into()));
        }
        let mut adj = vec![vec![false; n]; n];
        for &(t, h) in &self.arrows {
            if t == 0 || h == 0 || t > self.n_vertices || h > self.n_vertices {
                return Err(Error::NotDynkin(format!(
                    "arrow ({t},{h}) out of range 1..={}",
                    self.n_vertices
                )));
            }
            if t == h {
                return Err(Error::NotDynkin(format!("loop at vertex {t}")));
            }
            let (a, b) = ((t - 1) as usize, (h - 1) as usize);
            if adj[a][b] {
                return Err(Error::NotDynkin(format!(
                    "multiple edges between {t} and {h}"
                )));
            }
            adj[a][b] = true;
            adj[b][a] = true;
        }
        Ok(adj)
    }

    /// Classifies the underlying unoriented graph, ignoring orientation.
    pub fn detect_dynkin_type(&self) -> Result<DynkinType> {
        let n = self.n_vertices as usize;
        let adj = self.undirected_adjacency()?;
        let mut edge_count = 0usize;
        for (i, row) in adj.iter().enumerate() {
            edge_count += row.iter().skip(i + 1).filter(|a| **a).count();
        }

        // Connectivity.
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for (u, &a) in adj[v].iter().enumerate() {
                if a && !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::NotDynkin("graph is disconnected".into()));
        }
        if edge_count != n - 1 {
            return Err(Error::NotDynkin("graph has a cycle".into()));
        }

        let degrees: Vec<usize> = (0..n).map(|i| adj[i].iter().filter(|a| **a).count()).collect();
        if let Some(v) = degrees.iter().position(|&d| d >= 4) {
            return Err(Error::NotDynkin(format!(
                "vertex {} has degree {} >= 4",
                v + 1,
                degrees[v]
            )));
        }
        let branches: Vec<usize> = (0..n).filter(|&i| degrees[i] == 3).collect();
        match branches.len() {
            0 => Ok(DynkinType::A(self.n_vertices)),
            1 => {
                let b = branches[0];
                let mut legs: Vec<u32> = adj[b]
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| **a)
                    .map(|(start, _)| {
                        // Walk away from the branch vertex to the leaf.
                        let mut len = 1u32;
                        let mut prev = b;
                        let mut cur = start;
                        loop {
                            let next = adj[cur]
                                .iter()
                                .enumerate()
                                .position(|(u, &a)| a && u != prev);
                            match next {
                                Some(u) => {
                                    prev = cur;
                                    cur = u;
                                    len += 1;
                                }
                                None => break len,
                            }
                        }
                    })
                    .collect();
                legs.sort_unstable();
                match legs.as_slice() {
                    [1, 1, _] => Ok(DynkinType::D(self.n_vertices)),
                    [1, 2, 2] => Ok(DynkinType::E(6)),
                    [1, 2, 3] => Ok(DynkinType::E(7)),
                    [1, 2, 4] => Ok(DynkinType::E(8)),
                    _ => Err(Error::NotDynkin(format!(
                        "tree with branch legs {legs:?} is not on the ADE list"
                    ))),
                }
            }
            _ => Err(Error::NotDynkin("more than one branch vertex".into())),
        }
    }

    /// Cartan matrix of the underlying graph: `2` on the diagonal, `-1` on edges.
    fn cartan(&self) -> Vec<Vec<i64>> {
        let n = self.n_vertices as usize;
        let adj = self.undirected_adjacency().expect("validated at construction");
        let mut c = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                c[i][j] = if i == j {
                    2
                } else if adj[i][j] {
                    -1
                } else {
                    0
                };
            }
        }
        c
    }
}

/// All positive roots of the quiver's root system, in the quiver's own
/// vertex basis, by reflection closure from the simple roots.
/// Sorted lexicographically on coordinate vectors.
pub fn positive_roots(q: &Quiver) -> Result<Vec<PositiveRoot>> {
    q.detect_dynkin_type()?;
    let n = q.n_vertices as usize;
    let cartan = q.cartan();
    let mut found: Vec<Vec<i64>> = Vec::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in 0..n {
        let mut d = vec![0i64; n];
        d[i] = 1;
        found.push(d.clone());
        queue.push_back(d);
    }
    while let Some(d) = queue.pop_front() {
        for i in 0..n {
            let pairing: i64 = (0..n).map(|j| cartan[i][j] * d[j]).sum();
            let mut r = d.clone();
            r[i] -= pairing;
            if r.iter().all(|&x| x >= 0) && r.iter().any(|&x| x > 0) && !found.contains(&r) {
                found.push(r.clone());
                queue.push_back(r);
            }
        }
    }
    let mut roots: Vec<PositiveRoot> = found
        .into_iter()
        .map(|d| PositiveRoot(d.into_iter().map(|x| x as u32).collect()))
        .collect();
    roots.sort();
    Ok(roots)
}

/// The Euler form `<e,f> = sum_i e_i f_i - sum_a e_{t(a)} f_{h(a)}`.
pub fn euler_form(q: &Quiver, e: &[i64], f: &[i64]) -> Result<i64> {
    let n = q.n_vertices as usize;
    if e.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: e.len() });
    }
    if f.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: f.len() });
    }
    let diag: i64 = (0..n).map(|i| e[i] * f[i]).sum();
    let arrows: i64 = q
        .arrows
        .iter()
        .map(|&(t, h)| e[(t - 1) as usize] * f[(h - 1) as usize])
        .sum();
    Ok(diag - arrows)
}

/// Euler form evaluated on positive roots via their dimension vectors.
pub fn euler_form_roots(q: &Quiver, a: &PositiveRoot, b: &PositiveRoot) -> i64 {
    let ea: Vec<i64> = a.0.iter().map(|&x| x as i64).collect();
    let eb: Vec<i64> = b.0.iter().map(|&x| x as i64).collect();
    euler_form(q, &ea, &eb).expect("root coordinates match the quiver")
}
