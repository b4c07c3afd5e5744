//! Exact reduced integral homology.
//!
//! Betti numbers and torsion are read off the Smith normal forms of the
//! augmented boundary maps:
//! `β_d = rank C_d - rank ∂_d - rank ∂_{d+1}` and the torsion in degree `d`
//! is the list of nontrivial invariant factors of `∂_{d+1}`.

mod integer;
mod smith;
mod sparse;

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use integer::Integer;
pub use smith::{invariant_factors_of_diagonal, rank_modulo, smith_normal_form, Prime, SmithForm};
pub use sparse::SparseMatrix;

use crate::complexes::{chain_complex, independence_complex, ChainComplex, ComplexError, SimplicialComplex};
use crate::graphs::Graph;
use crate::theory::{Connectivity, HomotopyType};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("torsion in degree {dimension}: not a wedge of spheres")]
    Torsion { dimension: i64 },
    #[error("cannot wedge a profile with homology in degree -1")]
    EmptyInWedge,
}

/// Reduced homology groups `H̃_d`, `d >= -1`, each `Z^β ⊕ ⊕ Z/t_k`.
///
/// Equality compares the groups, not how many trailing zero degrees happen
/// to be stored.
#[derive(Clone, Debug, Default)]
pub struct HomologyProfile {
    // index k holds degree k - 1
    betti: Vec<u64>,
    torsion: Vec<Vec<Integer>>,
}

fn degree_index(d: i64) -> Option<usize> {
    usize::try_from(d + 1).ok()
}

impl HomologyProfile {
    /// Homology of a contractible space: everything vanishes.
    pub fn point() -> Self {
        HomologyProfile::default()
    }

    /// Homology of the EMPTY complex: `Z` in degree `-1`.
    pub fn empty_complex() -> Self {
        HomologyProfile::sphere(-1)
    }

    pub fn sphere(d: i64) -> Self {
        let mut p = HomologyProfile::point();
        p.add_betti(d, 1);
        p
    }

    /// Profile of a formal wedge of spheres.
    pub fn of_type(h: &HomotopyType) -> Self {
        let mut p = HomologyProfile::point();
        match h {
            HomotopyType::Point => {}
            HomotopyType::Empty => p.add_betti(-1, 1),
            HomotopyType::Wedge(spheres) => {
                for (&d, &m) in spheres {
                    p.add_betti(d as i64, m);
                }
            }
        }
        p
    }

    fn ensure(&mut self, d: i64) -> usize {
        let k = degree_index(d).expect("degree below -1");
        if self.betti.len() <= k {
            self.betti.resize(k + 1, 0);
            self.torsion.resize(k + 1, Vec::new());
        }
        k
    }

    pub fn add_betti(&mut self, d: i64, count: u64) {
        let k = self.ensure(d);
        self.betti[k] += count;
    }

    /// Adds cyclic summands `Z/t` (any order, units ignored) in degree `d`.
    pub fn add_torsion(&mut self, d: i64, cyclic: &[Integer]) {
        let k = self.ensure(d);
        let mut all = self.torsion[k].clone();
        all.extend(cyclic.iter().map(Integer::abs));
        self.torsion[k] = invariant_factors_of_diagonal(&all).into_iter().filter(|t| !t.is_unit()).collect();
    }

    pub fn betti(&self, d: i64) -> u64 {
        degree_index(d).and_then(|k| self.betti.get(k)).copied().unwrap_or(0)
    }

    pub fn torsion(&self, d: i64) -> &[Integer] {
        degree_index(d).and_then(|k| self.torsion.get(k)).map_or(&[], Vec::as_slice)
    }

    /// Highest stored degree (`-2` if nothing is stored).
    pub fn max_dimension(&self) -> i64 {
        self.betti.len() as i64 - 2
    }

    pub fn nonzero_betti(&self) -> BTreeMap<i64, u64> {
        self.degrees().filter(|&d| self.betti(d) > 0).map(|d| (d, self.betti(d))).collect()
    }

    pub fn nonzero_torsion(&self) -> BTreeMap<i64, Vec<Integer>> {
        self.degrees()
            .filter(|&d| !self.torsion(d).is_empty())
            .map(|d| (d, self.torsion(d).to_vec()))
            .collect()
    }

    fn degrees(&self) -> impl Iterator<Item = i64> {
        -1..=self.max_dimension()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.iter().all(Vec::is_empty)
    }

    /// `Σ_{d >= -1} (-1)^d β_d`; equals the reduced Euler characteristic.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees()
            .map(|d| if d.rem_euclid(2) == 0 { self.betti(d) as i64 } else { -(self.betti(d) as i64) })
            .sum()
    }

    /// All reduced groups vanish. Necessary for contractibility, not
    /// sufficient.
    pub fn is_contractible(&self) -> bool {
        self.betti.iter().all(|&b| b == 0) && self.is_torsion_free()
    }

    /// Connectivity assuming the space is a wedge of spheres or a point:
    /// one less than the lowest degree with nonzero homology.
    pub fn connectivity(&self) -> Result<Connectivity, HomologyError> {
        if let Some((&d, _)) = self.nonzero_torsion().iter().next() {
            return Err(HomologyError::Torsion { dimension: d });
        }
        Ok(match self.nonzero_betti().keys().next() {
            Some(&d) => Connectivity::Finite(d - 1),
            None => Connectivity::Infinite,
        })
    }

    /// Torsion-free profile with Betti numbers matching the sphere multiset
    /// of `h`.
    pub fn matches(&self, h: &HomotopyType) -> bool {
        self.is_torsion_free() && *self == HomologyProfile::of_type(h)
    }

    /// `Σ^k`: shifts every degree up by `k`.
    pub fn suspend(&self, k: u32) -> Self {
        let mut out = HomologyProfile::point();
        for d in self.degrees() {
            out.add_betti(d + k as i64, self.betti(d));
            out.add_torsion(d + k as i64, self.torsion(d));
        }
        out
    }

    /// Direct sum of reduced homology.
    pub fn wedge(parts: &[HomologyProfile]) -> Result<Self, HomologyError> {
        let mut out = HomologyProfile::point();
        for p in parts {
            if p.betti(-1) > 0 || !p.torsion(-1).is_empty() {
                return Err(HomologyError::EmptyInWedge);
            }
            for d in p.degrees() {
                out.add_betti(d, p.betti(d));
                out.add_torsion(d, p.torsion(d));
            }
        }
        Ok(out)
    }

    /// Reduced homology of a join by the Künneth formula:
    /// `H̃_{n+1}(X * Y) = ⊕_{i+j=n} H̃_i X ⊗ H̃_j Y ⊕ ⊕_{i+j=n-1} Tor(H̃_i X, H̃_j Y)`.
    pub fn join(&self, other: &HomologyProfile) -> Self {
        let mut out = HomologyProfile::point();
        for i in self.degrees() {
            for j in other.degrees() {
                let (a, s) = (self.betti(i), self.torsion(i));
                let (b, t) = (other.betti(j), other.torsion(j));
                let tensor_degree = i + j + 1;
                out.add_betti(tensor_degree, a * b);
                let mut cyclic = Vec::new();
                for _ in 0..a {
                    cyclic.extend_from_slice(t);
                }
                for _ in 0..b {
                    cyclic.extend_from_slice(s);
                }
                let mixed: Vec<Integer> = s.iter().flat_map(|x| t.iter().map(move |y| x.gcd(y))).collect();
                cyclic.extend_from_slice(&mixed);
                if !cyclic.is_empty() {
                    out.add_torsion(tensor_degree, &cyclic);
                }
                if !mixed.is_empty() {
                    // Tor(Z/x, Z/y) = Z/gcd(x, y), one degree higher
                    out.add_torsion(tensor_degree + 1, &mixed);
                }
            }
        }
        out
    }
}

impl PartialEq for HomologyProfile {
    fn eq(&self, other: &Self) -> bool {
        self.nonzero_betti() == other.nonzero_betti() && self.nonzero_torsion() == other.nonzero_torsion()
    }
}

impl Eq for HomologyProfile {}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for d in self.degrees() {
            let (b, t) = (self.betti(d), self.torsion(d));
            if b == 0 && t.is_empty() {
                continue;
            }
            let mut group: Vec<String> = Vec::new();
            if b > 0 {
                group.push(if b == 1 { "Z".into() } else { format!("Z^{b}") });
            }
            group.extend(t.iter().map(|x| format!("Z/{x}")));
            parts.push(format!("H{d}={}", group.join("+")));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

struct DegreeMap<'a, T>(Vec<(i64, &'a T)>);

impl<T: Serialize> Serialize for DegreeMap<'_, T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (d, v) in &self.0 {
            map.serialize_entry(&d.to_string(), v)?;
        }
        map.end()
    }
}

/// `{"betti": {"-1": .., "0": .., ...}, "torsion": {"d": [..]}, "euler": χ̃}`
/// with degrees in numeric order.
impl Serialize for HomologyProfile {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let betti = DegreeMap(self.degrees().map(|d| (d, &self.betti[(d + 1) as usize])).collect());
        let torsion = DegreeMap(
            self.degrees()
                .filter(|&d| !self.torsion(d).is_empty())
                .map(|d| (d, &self.torsion[(d + 1) as usize]))
                .collect(),
        );
        let mut map = serializer.serialize_map(Some(3))?;
        map.serialize_entry("betti", &betti)?;
        map.serialize_entry("torsion", &torsion)?;
        map.serialize_entry("euler", &self.euler_characteristic())?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for HomologyProfile {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            betti: BTreeMap<String, u64>,
            #[serde(default)]
            torsion: BTreeMap<String, Vec<Integer>>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let parse = |k: &str| k.parse::<i64>().ok().filter(|&d| d >= -1).ok_or_else(|| D::Error::custom(format!("bad degree {k:?}")));
        let mut p = HomologyProfile::point();
        for (k, b) in &raw.betti {
            p.add_betti(parse(k)?, *b);
        }
        for (k, t) in &raw.torsion {
            p.add_torsion(parse(k)?, t);
        }
        Ok(p)
    }
}

/// Reduced homology of an augmented chain complex. The Smith forms of the
/// different boundary maps are computed in parallel.
pub fn reduced_homology(c: &ChainComplex) -> HomologyProfile {
    let top = c.top_dimension();
    let forms: Vec<SmithForm> = c.boundaries().par_iter().map(smith_normal_form).collect();
    let rank = |d: i64| -> usize { usize::try_from(d).ok().and_then(|d| forms.get(d)).map_or(0, |s| s.rank) };
    let mut p = HomologyProfile::point();
    for d in -1..=top {
        p.add_betti(d, (c.rank(d) - rank(d) - rank(d + 1)) as u64);
        if let Some(next) = usize::try_from(d + 1).ok().and_then(|k| forms.get(k)) {
            p.add_torsion(d, &next.torsion());
        }
    }
    p
}

pub fn complex_homology(k: &SimplicialComplex) -> HomologyProfile {
    reduced_homology(&chain_complex(k))
}

/// `H̃(I(g))`.
pub fn independence_homology(g: &Graph, budget: usize) -> Result<HomologyProfile, ComplexError> {
    Ok(complex_homology(&independence_complex(g, budget)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::DEFAULT_FACE_BUDGET;
    use crate::graphs::{cycle_graph, path_graph};

    fn homology(g: &Graph) -> HomologyProfile {
        independence_homology(g, DEFAULT_FACE_BUDGET).unwrap()
    }

    #[test]
    fn kozlov_examples() {
        let c6 = homology(&cycle_graph(6).unwrap());
        assert_eq!(c6.nonzero_betti(), BTreeMap::from([(1, 2)]));
        assert!(c6.is_torsion_free());
        assert!(homology(&path_graph(4)).is_contractible());
        assert_eq!(homology(&path_graph(5)).nonzero_betti(), BTreeMap::from([(1, 1)]));
    }

    #[test]
    fn empty_complex_lives_in_degree_minus_one() {
        let e = homology(&Graph::empty());
        assert_eq!(e.betti(-1), 1);
        assert!(!e.is_contractible());
        assert_eq!(e.connectivity(), Ok(Connectivity::Finite(-2)));
        assert_eq!(e.euler_characteristic(), -1);
        assert_eq!(homology(&path_graph(1)).betti(-1), 0);
    }

    #[test]
    fn connectivity_readout() {
        assert_eq!(homology(&cycle_graph(6).unwrap()).connectivity(), Ok(Connectivity::Finite(0)));
        assert_eq!(HomologyProfile::point().connectivity(), Ok(Connectivity::Infinite));
        let mut t = HomologyProfile::sphere(3);
        t.add_torsion(1, &[Integer::from(2)]);
        assert_eq!(t.connectivity(), Err(HomologyError::Torsion { dimension: 1 }));
    }

    #[test]
    fn json_shape() {
        let p = homology(&cycle_graph(6).unwrap());
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"betti":{"-1":0,"0":0,"1":2,"2":0},"torsion":{},"euler":-2}"#);
        let mut q = HomologyProfile::sphere(11);
        q.add_torsion(2, &[Integer::from(2), Integer::from(3)]);
        let text = serde_json::to_string(&q).unwrap();
        assert!(text.contains(r#""10":0,"11":1"#));
        assert!(text.contains(r#""torsion":{"2":[6]}"#));
        let back: HomologyProfile = serde_json::from_str(&text).unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn algebra() {
        let s0 = HomologyProfile::sphere(0);
        assert_eq!(s0.join(&s0), HomologyProfile::sphere(1));
        assert_eq!(HomologyProfile::empty_complex().join(&s0), s0);
        assert_eq!(HomologyProfile::point().join(&s0), HomologyProfile::point());
        assert_eq!(HomologyProfile::empty_complex().suspend(1), s0);
        let w = HomologyProfile::wedge(&[s0.clone(), HomologyProfile::sphere(2)]).unwrap();
        assert_eq!(w.nonzero_betti(), BTreeMap::from([(0, 1), (2, 1)]));
        assert_eq!(HomologyProfile::wedge(&[HomologyProfile::empty_complex()]), Err(HomologyError::EmptyInWedge));

        // Moore spaces: M(Z/2, 1) * M(Z/3, 1) has Z/2 ⊗ Z/3 = 0 and
        // M(Z/2,1) * M(Z/2,1) picks up Z/2 in degree 3 and Tor in degree 4
        let mut m2 = HomologyProfile::point();
        m2.add_torsion(1, &[Integer::from(2)]);
        let mut m3 = HomologyProfile::point();
        m3.add_torsion(1, &[Integer::from(3)]);
        assert!(m2.join(&m3).is_contractible());
        let sq = m2.join(&m2);
        assert_eq!(sq.torsion(3), &[Integer::from(2)]);
        assert_eq!(sq.torsion(4), &[Integer::from(2)]);
    }
}
