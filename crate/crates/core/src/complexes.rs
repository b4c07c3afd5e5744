//! Independence and matching complexes and their simplicial chain complexes.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphs::{line_graph, Graph};
use crate::homology::SparseMatrix;

/// Default cap on the total number of faces enumerated for one complex.
pub const DEFAULT_FACE_BUDGET: usize = 500_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("face budget of {budget} exceeded")]
    BudgetExceeded { budget: usize },
    #[error("face {0:?} has a missing facet")]
    NotClosed(Vec<u32>),
    #[error("vertex {vertex} out of range for {count} vertices")]
    VertexOutOfRange { vertex: u32, count: usize },
}

/// Faces of one dimension, stored flat with stride `dim + 1`, in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Stratum {
    width: usize,
    data: Vec<u32>,
}

impl Stratum {
    fn len(&self) -> usize {
        self.data.len() / self.width
    }

    fn get(&self, k: usize) -> &[u32] {
        &self.data[k * self.width..(k + 1) * self.width]
    }

    fn position(&self, face: &[u32]) -> Option<usize> {
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(face) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }
}

/// A finite abstract simplicial complex on vertices `0..vertex_count`.
///
/// The empty face is implicit; a complex with no faces at all is the EMPTY
/// complex (the (-1)-sphere).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    strata: Vec<Stratum>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        SimplicialComplex { vertex_count: 0, strata: Vec::new() }
    }

    /// Builds a complex from an explicit face list. Faces may be unsorted and
    /// repeated; the list must be closed under taking nonempty subsets.
    pub fn from_faces(vertex_count: usize, faces: &[Vec<u32>]) -> Result<Self, ComplexError> {
        let mut by_dim: Vec<Vec<Vec<u32>>> = Vec::new();
        for face in faces.iter().filter(|f| !f.is_empty()) {
            let mut f = face.clone();
            f.sort_unstable();
            f.dedup();
            if let Some(&v) = f.iter().find(|&&v| v as usize >= vertex_count) {
                return Err(ComplexError::VertexOutOfRange { vertex: v, count: vertex_count });
            }
            if by_dim.len() < f.len() {
                by_dim.resize(f.len(), Vec::new());
            }
            by_dim[f.len() - 1].push(f);
        }
        let strata: Vec<Stratum> = by_dim
            .into_iter()
            .enumerate()
            .map(|(d, mut list)| {
                list.sort_unstable();
                list.dedup();
                Stratum { width: d + 1, data: list.concat() }
            })
            .collect();
        let complex = SimplicialComplex { vertex_count, strata };
        for d in 1..complex.strata.len() {
            for face in complex.faces(d) {
                for skip in 0..face.len() {
                    let facet: Vec<u32> = omit(face, skip);
                    if complex.index_of(&facet).is_none() {
                        return Err(ComplexError::NotClosed(face.to_vec()));
                    }
                }
            }
        }
        Ok(complex)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Top dimension, `None` for the EMPTY complex.
    pub fn dimension(&self) -> Option<usize> {
        self.strata.len().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.strata.is_empty()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.strata.iter().map(Stratum::len).collect()
    }

    pub fn face_count(&self) -> usize {
        self.strata.iter().map(Stratum::len).sum()
    }

    pub fn faces(&self, dim: usize) -> impl Iterator<Item = &[u32]> + '_ {
        let stratum = self.strata.get(dim);
        (0..stratum.map_or(0, Stratum::len)).map(move |k| stratum.unwrap().get(k))
    }

    /// All faces, by dimension and then lexicographically.
    pub fn all_faces(&self) -> impl Iterator<Item = &[u32]> + '_ {
        (0..self.strata.len()).flat_map(move |d| self.faces(d))
    }

    /// Position of a sorted face within its dimension.
    pub fn index_of(&self, face: &[u32]) -> Option<usize> {
        face.len().checked_sub(1).and_then(|d| self.strata.get(d)).and_then(|s| s.position(face))
    }

    /// `χ̃ = -1 + f_0 - f_1 + ...`
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .fold(-1, |acc, (d, &f)| if d % 2 == 0 { acc + f as i64 } else { acc - f as i64 })
    }

    /// Simplicial join; `other`'s vertices are shifted past `self`'s.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let shift = self.vertex_count as u32;
        let mut faces: Vec<Vec<u32>> = Vec::new();
        let left: Vec<&[u32]> = std::iter::once(&[][..]).chain(self.all_faces()).collect();
        let right: Vec<Vec<u32>> = std::iter::once(Vec::new())
            .chain(other.all_faces().map(|f| f.iter().map(|v| v + shift).collect()))
            .collect();
        for l in &left {
            for r in &right {
                let mut f = l.to_vec();
                f.extend(r);
                faces.push(f);
            }
        }
        SimplicialComplex::from_faces(self.vertex_count + other.vertex_count, &faces)
            .expect("join of complexes is a complex")
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct ComplexJson<'a> {
            vertex_count: usize,
            faces: Vec<&'a [u32]>,
        }
        serde_json::to_string(&ComplexJson { vertex_count: self.vertex_count, faces: self.all_faces().collect() })
            .expect("complex serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        #[derive(Deserialize)]
        struct ComplexJson {
            vertex_count: usize,
            faces: Vec<Vec<u32>>,
        }
        let json: ComplexJson = serde_json::from_str(text).map_err(|e| e.to_string())?;
        SimplicialComplex::from_faces(json.vertex_count, &json.faces).map_err(|e| e.to_string())
    }
}

fn omit(face: &[u32], skip: usize) -> Vec<u32> {
    face.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &v)| v).collect()
}

struct Enumerator<'a> {
    // adjacency bitsets, one word-vector per vertex
    masks: &'a [Vec<u64>],
    n: usize,
    strata: Vec<Vec<u32>>,
    total: usize,
    budget: usize,
    stack: Vec<u32>,
}

impl Enumerator<'_> {
    fn extend(&mut self, start: usize, forbidden: &[u64]) -> Result<(), ComplexError> {
        for v in start..self.n {
            if forbidden[v / 64] >> (v % 64) & 1 == 1 {
                continue;
            }
            self.total += 1;
            if self.total > self.budget {
                return Err(ComplexError::BudgetExceeded { budget: self.budget });
            }
            self.stack.push(v as u32);
            let depth = self.stack.len();
            if self.strata.len() < depth {
                self.strata.push(Vec::new());
            }
            self.strata[depth - 1].extend_from_slice(&self.stack);
            let next: Vec<u64> = forbidden.iter().zip(&self.masks[v]).map(|(a, b)| a | b).collect();
            self.extend(v + 1, &next)?;
            self.stack.pop();
        }
        Ok(())
    }
}

/// `I(G)`: faces are the nonempty independent vertex sets of `g`.
///
/// Faces are produced by depth-first extension in vertex order, which emits
/// each dimension in lexicographic order. Aborts once more than `budget`
/// faces have been produced.
pub fn independence_complex(g: &Graph, budget: usize) -> Result<SimplicialComplex, ComplexError> {
    let n = g.vertex_count();
    let words = n.div_ceil(64).max(1);
    let masks: Vec<Vec<u64>> = (0..n)
        .map(|v| {
            let mut m = vec![0u64; words];
            for &w in g.neighbors(v) {
                m[w / 64] |= 1 << (w % 64);
            }
            m
        })
        .collect();
    let mut e = Enumerator { masks: &masks, n, strata: Vec::new(), total: 0, budget, stack: Vec::new() };
    e.extend(0, &vec![0u64; words])?;
    let strata = e
        .strata
        .into_iter()
        .enumerate()
        .map(|(d, data)| Stratum { width: d + 1, data })
        .collect();
    Ok(SimplicialComplex { vertex_count: n, strata })
}

/// `M(G) = I(L(G))`.
pub fn matching_complex(g: &Graph, budget: usize) -> Result<SimplicialComplex, ComplexError> {
    independence_complex(&line_graph(g), budget)
}

/// Augmented simplicial chain complex with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    // boundaries[0] is the augmentation C_0 -> C_{-1} = Z
    boundaries: Vec<SparseMatrix>,
    ranks: Vec<usize>,
}

impl ChainComplex {
    /// `∂_d : C_d -> C_{d-1}` for `d >= 0`, with `∂_0` the augmentation.
    /// Dimensions past the top are zero maps.
    pub fn boundary(&self, d: usize) -> SparseMatrix {
        match self.boundaries.get(d) {
            Some(m) => m.clone(),
            None => SparseMatrix::zeros(self.rank(d as i64 - 1), self.rank(d as i64)),
        }
    }

    pub fn boundaries(&self) -> &[SparseMatrix] {
        &self.boundaries
    }

    /// Rank of the free module `C_d`, `d >= -1` (`C_{-1} = Z`).
    pub fn rank(&self, d: i64) -> usize {
        if d < -1 {
            0
        } else {
            self.ranks.get((d + 1) as usize).copied().unwrap_or(0)
        }
    }

    /// Top dimension with a nonzero chain group (`-1` for EMPTY).
    pub fn top_dimension(&self) -> i64 {
        self.ranks.len() as i64 - 2
    }
}

/// Boundary matrices with the alternating-sign rule: the facet omitting the
/// `i`-th vertex enters with sign `(-1)^i`.
pub fn chain_complex(k: &SimplicialComplex) -> ChainComplex {
    let mut ranks = vec![1];
    ranks.extend(k.f_vector());
    let mut boundaries = Vec::with_capacity(k.strata.len());
    if let Some(vertices) = k.strata.first() {
        boundaries.push(SparseMatrix::from_columns(1, vec![vec![(0, 1)]; vertices.len()]));
    }
    for d in 1..k.strata.len() {
        let lower = &k.strata[d - 1];
        let cols = k
            .faces(d)
            .map(|face| {
                (0..face.len())
                    .map(|skip| {
                        let facet = omit(face, skip);
                        let row = lower.position(&facet).expect("complex is closed under facets");
                        (row as u32, if skip % 2 == 0 { 1 } else { -1 })
                    })
                    .collect()
            })
            .collect();
        boundaries.push(SparseMatrix::from_columns(lower.len(), cols));
    }
    ChainComplex { boundaries, ranks }
}
