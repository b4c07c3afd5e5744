//! Formal wedges of spheres and the homotopy-type predictions for
//! independence complexes of paths, cycles and the tiling line graphs.
//!
//! Throughout, `n` is the polygon parameter (the tiles are `2n`-gons) and
//! `t` the number of tiles; the three residues of `n` mod 3 each have their
//! own description:
//!
//! * `n = 3m + 1`: `I(G_t) ≃ ⋁_t S^{2tm}` outright.
//! * `n = 3m + 2`: bases for `t <= 3`, then
//!   `I(G_t) ≃ Σ^{6m+2} I(G_{t-3}) ∨ Σ^{6m+2} I(G_{t-3}) ∨ Σ^{8m+3} I(G_{t-4})`.
//! * `n = 3m`: bases for `t <= 3`, then
//!   `I(G_t) ≃ Σ^{4m-2} I(H_{t-2}) ∨ Σ^{6m-2} I(G_{t-3}) ∨ Σ^{8m-3} I(H_{t-4})`
//!   together with `I(H_t) ≃ Σ^{2m} I(G_{t-1}) ∨ Σ^{2m-1} I(H_{t-1})`, `I(H_0) ≃ S^0`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::graphs::Graph;
use crate::reductions::HomotopyExpr;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TheoryError {
    #[error("the EMPTY complex cannot appear in a wedge")]
    EmptyInWedge,
    #[error("cycle graphs need at least 3 vertices, got {0}")]
    CycleTooShort(usize),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("unresolved leaf: residual graph with {vertices} vertices is not a disjoint union of paths and cycles")]
    UnresolvedLeaf { vertices: usize },
}

/// A point, the EMPTY complex (`S^{-1}`), or a nonempty wedge of spheres of
/// nonnegative dimensions, stored as `dimension -> multiplicity`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HomotopyType {
    Point,
    Empty,
    Wedge(BTreeMap<u32, u64>),
}

impl HomotopyType {
    /// `S^d`; `d = -1` is EMPTY.
    pub fn sphere(d: i64) -> Self {
        match d {
            -1 => HomotopyType::Empty,
            d if d >= 0 => HomotopyType::Wedge(BTreeMap::from([(d as u32, 1)])),
            _ => panic!("no sphere of dimension {d}"),
        }
    }

    /// Wedge of the given sphere dimensions (all `>= 0`); no spheres is a
    /// point.
    pub fn spheres(dims: impl IntoIterator<Item = (u32, u64)>) -> Self {
        let mut map = BTreeMap::new();
        for (d, m) in dims {
            if m > 0 {
                *map.entry(d).or_insert(0) += m;
            }
        }
        if map.is_empty() {
            HomotopyType::Point
        } else {
            HomotopyType::Wedge(map)
        }
    }

    /// The sphere multiset (empty for POINT and EMPTY).
    pub fn sphere_counts(&self) -> BTreeMap<u32, u64> {
        match self {
            HomotopyType::Wedge(m) => m.clone(),
            _ => BTreeMap::new(),
        }
    }

    pub fn sphere_total(&self) -> u64 {
        self.sphere_counts().values().sum()
    }

    pub fn connectivity(&self) -> Connectivity {
        match self {
            HomotopyType::Point => Connectivity::Infinite,
            HomotopyType::Empty => Connectivity::Finite(-2),
            HomotopyType::Wedge(m) => Connectivity::Finite(*m.keys().next().unwrap() as i64 - 1),
        }
    }
}

impl fmt::Display for HomotopyType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomotopyType::Point => write!(f, "pt"),
            HomotopyType::Empty => write!(f, "S^-1"),
            HomotopyType::Wedge(m) => {
                let parts: Vec<String> = m
                    .iter()
                    .rev()
                    .map(|(d, k)| if *k == 1 { format!("S^{d}") } else { format!("{k}xS^{d}") })
                    .collect();
                write!(f, "{}", parts.join(" v "))
            }
        }
    }
}

/// `{"type": "point"|"empty"|"wedge", "spheres": {"dim": multiplicity}}`.
impl Serialize for HomotopyType {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let kind = match self {
            HomotopyType::Point => "point",
            HomotopyType::Empty => "empty",
            HomotopyType::Wedge(_) => "wedge",
        };
        let spheres: BTreeMap<u32, u64> = self.sphere_counts();
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("type", kind)?;
        map.serialize_entry("spheres", &SphereMap(&spheres))?;
        map.end()
    }
}

/// Dimension keys as strings, in numeric order.
pub struct SphereMap<'a>(pub &'a BTreeMap<u32, u64>);

impl Serialize for SphereMap<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (d, m) in self.0 {
            map.serialize_entry(&d.to_string(), m)?;
        }
        map.end()
    }
}

/// Connectivity of a space: `Finite(k)` means `k`-connected but not
/// `(k+1)`-connected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Connectivity {
    Finite(i64),
    Infinite,
}

impl PartialOrd for Connectivity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Connectivity {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Connectivity::Finite(a), Connectivity::Finite(b)) => a.cmp(b),
            (Connectivity::Finite(_), Connectivity::Infinite) => Ordering::Less,
            (Connectivity::Infinite, Connectivity::Finite(_)) => Ordering::Greater,
            (Connectivity::Infinite, Connectivity::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Connectivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Connectivity::Finite(k) => write!(f, "{k}"),
            Connectivity::Infinite => write!(f, "inf"),
        }
    }
}

/// An integer, or the string `"inf"`.
impl Serialize for Connectivity {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Connectivity::Finite(k) => serializer.serialize_i64(*k),
            Connectivity::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Connectivity {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Int(k) => Ok(Connectivity::Finite(k)),
            Raw::Text(s) if s == "inf" => Ok(Connectivity::Infinite),
            Raw::Text(s) => Err(serde::de::Error::custom(format!("bad connectivity {s:?}"))),
        }
    }
}

/// `Σ^k h`.
pub fn suspend(h: &HomotopyType, k: u32) -> HomotopyType {
    match h {
        HomotopyType::Point => HomotopyType::Point,
        HomotopyType::Empty if k == 0 => HomotopyType::Empty,
        HomotopyType::Empty => HomotopyType::sphere(k as i64 - 1),
        HomotopyType::Wedge(m) => HomotopyType::Wedge(m.iter().map(|(d, c)| (d + k, *c)).collect()),
    }
}

/// One-point union; POINT is the identity, EMPTY is rejected.
pub fn wedge(parts: &[HomotopyType]) -> Result<HomotopyType, TheoryError> {
    let mut all = Vec::new();
    for p in parts {
        match p {
            HomotopyType::Empty => return Err(TheoryError::EmptyInWedge),
            HomotopyType::Point => {}
            HomotopyType::Wedge(m) => all.extend(m.iter().map(|(d, c)| (*d, *c))),
        }
    }
    Ok(HomotopyType::spheres(all))
}

/// Join: EMPTY is the identity, POINT absorbs, and
/// `(⋁ S^a) * (⋁ S^b) ≃ ⋁ S^{a+b+1}` over all pairs.
pub fn join(a: &HomotopyType, b: &HomotopyType) -> HomotopyType {
    match (a, b) {
        (HomotopyType::Empty, x) | (x, HomotopyType::Empty) => x.clone(),
        (HomotopyType::Point, _) | (_, HomotopyType::Point) => HomotopyType::Point,
        (HomotopyType::Wedge(x), HomotopyType::Wedge(y)) => HomotopyType::spheres(
            x.iter().flat_map(|(da, ca)| y.iter().map(move |(db, cb)| (da + db + 1, ca * cb))),
        ),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KozlovGraph {
    Path,
    Cycle,
}

/// Homotopy types of `I(P_k)` and `I(C_k)`:
/// `I(P_{3j}) ≃ S^{j-1}`, `I(P_{3j+1}) ≃ pt`, `I(P_{3j+2}) ≃ S^j`,
/// `I(C_{3j}) ≃ S^{j-1} ∨ S^{j-1}`, `I(C_{3j+1}) ≃ S^{j-1}`, `I(C_{3j+2}) ≃ S^j`.
pub fn kozlov(kind: KozlovGraph, k: usize) -> Result<HomotopyType, TheoryError> {
    let j = (k / 3) as i64;
    match (kind, k % 3) {
        (KozlovGraph::Cycle, _) if k < 3 => Err(TheoryError::CycleTooShort(k)),
        (KozlovGraph::Path, 0) => Ok(HomotopyType::sphere(j - 1)),
        (KozlovGraph::Path, 1) => Ok(HomotopyType::Point),
        (KozlovGraph::Path, _) => Ok(HomotopyType::sphere(j)),
        (KozlovGraph::Cycle, 0) => wedge(&[HomotopyType::sphere(j - 1), HomotopyType::sphere(j - 1)]),
        (KozlovGraph::Cycle, 1) => Ok(HomotopyType::sphere(j - 1)),
        (KozlovGraph::Cycle, _) => Ok(HomotopyType::sphere(j)),
    }
}

/// Recognizes a connected path or cycle.
pub fn classify_component(g: &Graph) -> Option<(KozlovGraph, usize)> {
    let n = g.vertex_count();
    if n == 0 || !g.is_connected() || (0..n).any(|v| g.degree(v) > 2) {
        return None;
    }
    match g.edge_count() {
        e if e + 1 == n => Some((KozlovGraph::Path, n)),
        e if e == n && n >= 3 => Some((KozlovGraph::Cycle, n)),
        _ => None,
    }
}

/// Homotopy type of `I(g)` when every component of `g` is a path or a cycle.
pub fn kozlov_graph_type(g: &Graph) -> Option<HomotopyType> {
    let mut acc = HomotopyType::Empty;
    for comp in g.connected_components() {
        let (kind, k) = classify_component(&comp)?;
        acc = join(&acc, &kozlov(kind, k).expect("classified components are valid"));
    }
    Some(acc)
}

/// Closes a reduction expression: residual graphs must be disjoint unions
/// of paths and cycles.
pub fn evaluate(e: &HomotopyExpr) -> Result<HomotopyType, TheoryError> {
    match e {
        HomotopyExpr::Closed(h) => Ok(h.clone()),
        HomotopyExpr::Residual(g) => {
            kozlov_graph_type(g).ok_or(TheoryError::UnresolvedLeaf { vertices: g.vertex_count() })
        }
        HomotopyExpr::Suspend(k, inner) => Ok(suspend(&evaluate(inner)?, *k)),
        HomotopyExpr::Wedge(parts) => wedge(&parts.iter().map(evaluate).collect::<Result<Vec<_>, _>>()?),
        HomotopyExpr::Join(parts) => {
            parts.iter().try_fold(HomotopyType::Empty, |acc, p| Ok(join(&acc, &evaluate(p)?)))
        }
    }
}

/// Which of the two strand-graph families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// `G_{n,t}`, the line graph of the tiling.
    G,
    /// `H_{n,t}`, `G_{n,t}` plus `b_{t+1,1}` and `c_{t+1,1}`.
    H,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::G => write!(f, "G"),
            Family::H => write!(f, "H"),
        }
    }
}

/// Memoized evaluation of the recursive predictions for one `n`.
pub struct Predictor {
    n: usize,
    memo: HashMap<(Family, usize), HomotopyType>,
}

impl Predictor {
    pub fn new(n: usize) -> Result<Self, TheoryError> {
        if n < 2 {
            return Err(TheoryError::InvalidParameters(format!("n must be at least 2, got {n}")));
        }
        Ok(Predictor { n, memo: HashMap::new() })
    }

    fn wedge_of(parts: &[HomotopyType]) -> HomotopyType {
        wedge(parts).expect("prediction terms are never EMPTY")
    }

    fn spheres(dims: &[u32]) -> HomotopyType {
        HomotopyType::spheres(dims.iter().map(|&d| (d, 1)))
    }

    /// `I(G_{n,t})`.
    pub fn tiling(&mut self, t: usize) -> HomotopyType {
        if let Some(h) = self.memo.get(&(Family::G, t)) {
            return h.clone();
        }
        let n = self.n;
        let m = (n / 3) as u32;
        let value = match n % 3 {
            1 => HomotopyType::spheres([(2 * t as u32 * m, t as u64)]),
            2 => match t {
                0 => HomotopyType::Point,
                1 => Self::spheres(&[2 * m]),
                2 => Self::spheres(&[4 * m + 1, 4 * m + 1]),
                3 => Self::spheres(&[6 * m + 2]),
                _ => {
                    let back3 = suspend(&self.tiling(t - 3), 6 * m + 2);
                    let back4 = suspend(&self.tiling(t - 4), 8 * m + 3);
                    Self::wedge_of(&[back3.clone(), back3, back4])
                }
            },
            _ => match t {
                0 => HomotopyType::Point,
                1 => Self::spheres(&[2 * m - 1, 2 * m - 1]),
                2 => Self::spheres(&[4 * m - 2, 4 * m - 2]),
                3 => Self::spheres(&[6 * m - 2, 6 * m - 3]),
                _ => Self::wedge_of(&[
                    suspend(&self.extended(t - 2), 4 * m - 2),
                    suspend(&self.tiling(t - 3), 6 * m - 2),
                    suspend(&self.extended(t - 4), 8 * m - 3),
                ]),
            },
        };
        self.memo.insert((Family::G, t), value.clone());
        value
    }

    /// `I(H_{n,t})`, defined for `n ≡ 0 (mod 3)`.
    pub fn extended(&mut self, t: usize) -> HomotopyType {
        assert_eq!(self.n % 3, 0, "H-family predictions need n divisible by 3");
        if let Some(h) = self.memo.get(&(Family::H, t)) {
            return h.clone();
        }
        let m = (self.n / 3) as u32;
        let value = if t == 0 {
            HomotopyType::sphere(0)
        } else {
            Self::wedge_of(&[suspend(&self.tiling(t - 1), 2 * m), suspend(&self.extended(t - 1), 2 * m - 1)])
        };
        self.memo.insert((Family::H, t), value.clone());
        value
    }
}

/// Predicted homotopy type of `I(G_{n,t})`, the matching complex of the
/// tiling.
pub fn predict_tiling(n: usize, t: usize) -> Result<HomotopyType, TheoryError> {
    Ok(Predictor::new(n)?.tiling(t))
}

/// Predicted homotopy type of `I(H_{n,t})`; `n` must be a positive multiple
/// of 3.
pub fn predict_extended(n: usize, t: usize) -> Result<HomotopyType, TheoryError> {
    if n == 0 || !n.is_multiple_of(3) {
        return Err(TheoryError::InvalidParameters(format!("H family needs n divisible by 3, got {n}")));
    }
    Ok(Predictor::new(n)?.extended(t))
}

pub fn predict(family: Family, n: usize, t: usize) -> Result<HomotopyType, TheoryError> {
    match family {
        Family::G => predict_tiling(n, t),
        Family::H => predict_extended(n, t),
    }
}

/// Closed-form connectivity of `I(G_{n,t})`, `t >= 1`.
///
/// * `n = 3m + 1`: `2tm - 1`
/// * `n = 3m + 2`, `t = 3s + ε` with `ε ∈ {1, 2, 3}`: `2mt + 2(s - 1) + ε`
/// * `n = 3m`: `(2m - 1)t - 1`
pub fn connectivity_tiling(n: usize, t: usize) -> Result<Connectivity, TheoryError> {
    if n < 2 || t == 0 {
        return Err(TheoryError::InvalidParameters(format!("need n >= 2 and t >= 1, got n = {n}, t = {t}")));
    }
    let (m, t) = ((n / 3) as i64, t as i64);
    let k = match n % 3 {
        1 => 2 * t * m - 1,
        2 => {
            let s = (t - 1) / 3;
            let eps = t - 3 * s;
            2 * m * t + 2 * (s - 1) + eps
        }
        _ => (2 * m - 1) * t - 1,
    };
    Ok(Connectivity::Finite(k))
}

/// Closed-form connectivity of `I(H_{n,t})` for `n = 3m`, `t >= 1`:
/// the same `(2m - 1)t - 1` as the G family.
pub fn connectivity_extended(n: usize, t: usize) -> Result<Connectivity, TheoryError> {
    if n == 0 || !n.is_multiple_of(3) || t == 0 {
        return Err(TheoryError::InvalidParameters(format!("need n = 3m and t >= 1, got n = {n}, t = {t}")));
    }
    connectivity_tiling(n, t)
}

/// Earlier lower bound `2mt + t - ⌊(t+1)/2⌋ - 1` on the connectivity for
/// `n = 3m + 2`.
pub fn jmmv_lower_bound(n: usize, t: usize) -> Result<i64, TheoryError> {
    if n < 2 || n % 3 != 2 || t == 0 {
        return Err(TheoryError::InvalidParameters(format!("need n = 3m + 2 and t >= 1, got n = {n}, t = {t}")));
    }
    let (m, t) = (((n - 2) / 3) as i64, t as i64);
    Ok(2 * m * t + t - (t + 1) / 2 - 1)
}

/// Checks that the base cases of the `n ≡ 0 (mod 3)` recursion agree with
/// the recursion itself where both apply: `I(H_1) ≃ Σ^{2m} I(G_0) ∨
/// Σ^{2m-1} I(H_0) ≃ S^{2m-1}`, and the connectivity closed forms hold for
/// the bases of every residue class.
pub fn check_base_consistency(n: usize) -> Result<(), TheoryError> {
    let mut p = Predictor::new(n)?;
    let m = n / 3;
    if n.is_multiple_of(3) {
        let h1 = p.extended(1);
        if h1 != HomotopyType::sphere(2 * m as i64 - 1) {
            return Err(TheoryError::InvalidParameters(format!("I(H_1) base disagrees: {h1}")));
        }
    }
    for t in 1..=4 {
        let predicted = p.tiling(t).connectivity();
        let closed = connectivity_tiling(n, t)?;
        if predicted != closed {
            return Err(TheoryError::InvalidParameters(format!(
                "connectivity mismatch at t = {t}: recursion {predicted}, closed form {closed}"
            )));
        }
    }
    Ok(())
}
