//! Sparse Smith normal form.
//!
//! The eliminator works on a row-major copy of the matrix and repeatedly picks
//! a pivot column with the fewest live entries (a lazily updated min-heap).
//! The first phase only accepts unit pivots, choosing among them the
//! shortest row, so the bulk of a boundary matrix is reduced without any
//! coefficient growth. Whatever survives is finished by a Euclidean phase
//! that pivots on the smallest entry of each column and moves the pivot
//! whenever a row or column operation leaves a smaller remainder.
//!
//! Only row operations touch the stored matrix. Once a pivot's column is
//! clear, the column operations that clear its row change nothing but the
//! pivot row itself, so they are applied to that row alone.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
use std::fmt::Debug;

use serde::{Deserialize, Serialize};

use super::integer::Integer;
use super::sparse::SparseMatrix;

/// Coefficient ring of the eliminator: a Euclidean domain.
pub trait Coefficient: Clone + PartialEq + Debug {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    /// Inverse of a unit.
    fn unit_inverse(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// `self - f * x`.
    fn sub_mul(&self, f: &Self, x: &Self) -> Self;
    /// `self = q * d + r` with `r` strictly smaller than `d` in the Euclidean
    /// size (or zero).
    fn div_rem(&self, d: &Self) -> (Self, Self);
    fn cmp_size(&self, other: &Self) -> Ordering;
}

impl Coefficient for Integer {
    fn from_i64(v: i64) -> Self {
        Integer::from(v)
    }

    fn is_zero(&self) -> bool {
        Integer::is_zero(self)
    }

    fn is_unit(&self) -> bool {
        Integer::is_unit(self)
    }

    fn unit_inverse(&self) -> Self {
        self.clone()
    }

    fn mul(&self, other: &Self) -> Self {
        Integer::mul(self, other)
    }

    fn sub_mul(&self, f: &Self, x: &Self) -> Self {
        Integer::sub_mul(self, f, x)
    }

    fn div_rem(&self, d: &Self) -> (Self, Self) {
        self.div_rem_euclid(d)
    }

    fn cmp_size(&self, other: &Self) -> Ordering {
        self.cmp_abs(other)
    }
}

/// Residues modulo a prime `P < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModPrime<const P: u64>(u64);

impl<const P: u64> ModPrime<P> {
    fn pow(self, mut e: u64) -> Self {
        let (mut base, mut acc) = (self.0, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            e >>= 1;
        }
        ModPrime(acc)
    }
}

impl<const P: u64> Coefficient for ModPrime<P> {
    fn from_i64(v: i64) -> Self {
        ModPrime(v.rem_euclid(P as i64) as u64)
    }

    fn is_zero(&self) -> bool {
        self.0 == 0
    }

    fn is_unit(&self) -> bool {
        self.0 != 0
    }

    fn unit_inverse(&self) -> Self {
        self.pow(P - 2)
    }

    fn mul(&self, other: &Self) -> Self {
        ModPrime(self.0 * other.0 % P)
    }

    fn sub_mul(&self, f: &Self, x: &Self) -> Self {
        ModPrime((self.0 + P - f.0 * x.0 % P) % P)
    }

    fn div_rem(&self, d: &Self) -> (Self, Self) {
        (self.mul(&d.unit_inverse()), ModPrime(0))
    }

    fn cmp_size(&self, other: &Self) -> Ordering {
        self.is_unit().cmp(&other.is_unit())
    }
}

struct Eliminator<C> {
    rows: Vec<Vec<(u32, C)>>,
    // live rows with a nonzero entry in each column, unordered
    col_rows: Vec<Vec<u32>>,
    col_done: Vec<bool>,
    heap: BinaryHeap<Reverse<(u32, u32)>>,
    pivots: Vec<C>,
}

impl<C: Coefficient> Eliminator<C> {
    /// `lines[k]` becomes row `k`; `width` is the number of columns.
    fn new(width: usize, lines: &[Vec<(u32, i64)>]) -> Self {
        let mut col_rows = vec![Vec::new(); width];
        let rows = lines
            .iter()
            .enumerate()
            .map(|(r, line)| {
                line.iter()
                    .filter_map(|&(c, v)| {
                        let v = C::from_i64(v);
                        (!v.is_zero()).then(|| {
                            col_rows[c as usize].push(r as u32);
                            (c, v)
                        })
                    })
                    .collect()
            })
            .collect();
        Eliminator { rows, col_rows, col_done: vec![false; width], heap: BinaryHeap::new(), pivots: Vec::new() }
    }

    fn entry(&self, r: usize, c: usize) -> &C {
        let row = &self.rows[r];
        let k = row
            .binary_search_by_key(&(c as u32), |(col, _)| *col)
            .expect("entry recorded in column index");
        &row[k].1
    }

    fn push_col(&mut self, c: usize) {
        if !self.col_done[c] {
            self.heap.push(Reverse((self.col_rows[c].len() as u32, c as u32)));
        }
    }

    fn unlink(col_rows: &mut [Vec<u32>], c: usize, r: usize) {
        let list = &mut col_rows[c];
        if let Some(p) = list.iter().position(|&x| x as usize == r) {
            list.swap_remove(p);
        }
    }

    /// `rows[target] -= f * rows[src]`.
    fn axpy(&mut self, target: usize, f: &C, src: usize) {
        let current = std::mem::take(&mut self.rows[target]);
        let source = &self.rows[src];
        let mut merged = Vec::with_capacity(current.len() + source.len());
        let mut touched = Vec::new();
        let (mut a, mut b) = (current.into_iter().peekable(), source.iter().peekable());
        loop {
            let order = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (Some(x), Some(y)) => x.0.cmp(&y.0),
            };
            match order {
                Ordering::Less => merged.push(a.next().unwrap()),
                Ordering::Greater => {
                    let (c, v) = b.next().unwrap();
                    let value = C::from_i64(0).sub_mul(f, v);
                    self.col_rows[*c as usize].push(target as u32);
                    touched.push(*c as usize);
                    merged.push((*c, value));
                }
                Ordering::Equal => {
                    let (c, v) = a.next().unwrap();
                    let (_, w) = b.next().unwrap();
                    let value = v.sub_mul(f, w);
                    if value.is_zero() {
                        Self::unlink(&mut self.col_rows, c as usize, target);
                        touched.push(c as usize);
                    } else {
                        merged.push((c, value));
                    }
                }
            }
        }
        self.rows[target] = merged;
        for c in touched {
            self.push_col(c);
        }
    }

    fn finish_pivot(&mut self, r: usize, c: usize, pivot: C) {
        self.pivots.push(pivot);
        self.col_done[c] = true;
        for (j, _) in std::mem::take(&mut self.rows[r]) {
            Self::unlink(&mut self.col_rows, j as usize, r);
            self.push_col(j as usize);
        }
        self.col_rows[c].clear();
    }

    /// Clears column `c` with the unit pivot at row `r`.
    fn eliminate_unit(&mut self, r: usize, c: usize) {
        let pivot = self.entry(r, c).clone();
        let inverse = pivot.unit_inverse();
        for i in self.col_rows[c].clone() {
            let i = i as usize;
            if i != r {
                let f = self.entry(i, c).mul(&inverse);
                self.axpy(i, &f, r);
            }
        }
        self.finish_pivot(r, c, pivot);
    }

    fn pop_live_column(&mut self) -> Option<usize> {
        while let Some(Reverse((count, c))) = self.heap.pop() {
            let c = c as usize;
            if self.col_done[c] || self.col_rows[c].len() as u32 != count {
                continue;
            }
            if count == 0 {
                // nothing can ever be added to an empty column
                self.col_done[c] = true;
                continue;
            }
            return Some(c);
        }
        None
    }

    fn unit_phase(&mut self) {
        for c in 0..self.col_rows.len() {
            self.push_col(c);
        }
        while let Some(c) = self.pop_live_column() {
            let best = self.col_rows[c]
                .iter()
                .map(|&r| r as usize)
                .filter(|&r| self.entry(r, c).is_unit())
                .min_by_key(|&r| (self.rows[r].len(), r));
            if let Some(r) = best {
                self.eliminate_unit(r, c);
            }
            // columns without a unit are revisited only if a later row
            // operation changes them
        }
    }

    fn euclid_phase(&mut self) {
        for c in 0..self.col_rows.len() {
            self.push_col(c);
        }
        while let Some(c) = self.pop_live_column() {
            let r = self.col_rows[c]
                .iter()
                .map(|&r| r as usize)
                .min_by(|&x, &y| {
                    self.entry(x, c)
                        .cmp_size(self.entry(y, c))
                        .then(self.rows[x].len().cmp(&self.rows[y].len()))
                        .then(x.cmp(&y))
                })
                .expect("live column is nonempty");
            self.euclid_pivot(r, c);
        }
    }

    fn euclid_pivot(&mut self, mut r: usize, mut c: usize) {
        loop {
            let pivot = self.entry(r, c).clone();

            let mut smaller: Option<(usize, C)> = None;
            for i in self.col_rows[c].clone() {
                let i = i as usize;
                if i == r {
                    continue;
                }
                let (q, rem) = self.entry(i, c).div_rem(&pivot);
                if !q.is_zero() {
                    self.axpy(i, &q, r);
                }
                if !rem.is_zero() && smaller.as_ref().is_none_or(|(_, s)| rem.cmp_size(s) == Ordering::Less) {
                    smaller = Some((i, rem));
                }
            }
            if let Some((i, _)) = smaller {
                r = i;
                continue;
            }

            // column c is now pivot * e_r; reduce the rest of row r against it
            let mut smaller: Option<(usize, C)> = None;
            let row = std::mem::take(&mut self.rows[r]);
            let mut kept = Vec::with_capacity(row.len());
            let mut touched = Vec::new();
            for (j, a) in row {
                if j as usize == c {
                    kept.push((j, a));
                    continue;
                }
                let (_, rem) = a.div_rem(&pivot);
                if rem.is_zero() {
                    Self::unlink(&mut self.col_rows, j as usize, r);
                    touched.push(j as usize);
                } else {
                    if smaller.as_ref().is_none_or(|(_, s)| rem.cmp_size(s) == Ordering::Less) {
                        smaller = Some((j as usize, rem.clone()));
                    }
                    kept.push((j, rem));
                }
            }
            self.rows[r] = kept;
            for j in touched {
                self.push_col(j);
            }
            if let Some((j, _)) = smaller {
                self.push_col(c);
                c = j;
                continue;
            }

            self.finish_pivot(r, c, pivot);
            return;
        }
    }

    fn run(mut self) -> Vec<C> {
        self.unit_phase();
        self.euclid_phase();
        self.pivots
    }
}

/// Lays the matrix out for the eliminator: rows of the eliminator are the
/// shorter of the two index directions on average, which keeps row merges
/// cheap. Rank and invariant factors are transpose-invariant.
fn pivots<C: Coefficient>(m: &SparseMatrix) -> Vec<C> {
    if m.nnz() == 0 {
        return Vec::new();
    }
    if m.ncols() >= m.nrows() {
        Eliminator::<C>::new(m.nrows(), m.columns()).run()
    } else {
        let t = m.transpose();
        Eliminator::<C>::new(t.nrows(), t.columns()).run()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmithForm {
    pub rank: usize,
    /// `d_1 | d_2 | ... | d_rank`, all positive.
    pub invariant_factors: Vec<Integer>,
}

impl SmithForm {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<Integer> {
        self.invariant_factors.iter().filter(|d| !d.is_unit()).cloned().collect()
    }
}

/// Turns an arbitrary nonzero diagonal into a divisibility chain with the
/// same cokernel.
pub fn invariant_factors_of_diagonal(diagonal: &[Integer]) -> Vec<Integer> {
    let units = diagonal.iter().filter(|d| d.is_unit()).count();
    let mut rest: Vec<Integer> = diagonal.iter().filter(|d| !d.is_unit()).map(Integer::abs).collect();
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            let g = rest[i].gcd(&rest[j]);
            let l = rest[i].lcm(&rest[j]);
            rest[i] = g;
            rest[j] = l;
        }
    }
    let mut out = vec![Integer::ONE; units];
    out.extend(rest);
    out.sort();
    out
}

/// Rank and invariant factors of `m` over the integers.
pub fn smith_normal_form(m: &SparseMatrix) -> SmithForm {
    let diagonal = pivots::<Integer>(m);
    SmithForm { rank: diagonal.len(), invariant_factors: invariant_factors_of_diagonal(&diagonal) }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Prime {
    Two,
    /// 2^31 - 1
    Mersenne31,
}

/// Rank over `Z/p`; a cheap cross-check of the integer rank (equal unless
/// there is `p`-torsion).
pub fn rank_modulo(m: &SparseMatrix, prime: Prime) -> usize {
    match prime {
        Prime::Two => pivots::<ModPrime<2>>(m).len(),
        Prime::Mersenne31 => pivots::<ModPrime<2_147_483_647>>(m).len(),
    }
}
