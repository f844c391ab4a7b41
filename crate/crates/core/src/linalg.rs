//! Exact linear algebra over the rationals: sparse vectors, an incremental
//! echelon form and reduced row echelon form of small dense matrices.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::scalar::Scalar;

/// A sparse vector indexed by coordinate; zero entries are never stored.
pub type SparseVec = BTreeMap<usize, Scalar>;

/// `y += a·x`.
pub fn axpy(y: &mut SparseVec, a: &Scalar, x: &SparseVec) {
    if a.is_zero() {
        return;
    }
    for (k, v) in x {
        let delta = a * v;
        match y.get_mut(k) {
            Some(e) => {
                *e += &delta;
                if e.is_zero() {
                    y.remove(k);
                }
            }
            None => {
                y.insert(*k, delta);
            }
        }
    }
}

pub fn scale(x: &SparseVec, a: &Scalar) -> SparseVec {
    if a.is_zero() {
        return SparseVec::new();
    }
    x.iter().map(|(k, v)| (*k, v * a)).collect()
}

/// Row space kept in reduced echelon form where each row's pivot is its largest
/// coordinate, normalized to 1.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon { rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, k: usize) -> bool {
        self.rows.contains_key(&k)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Eliminates every pivot coordinate from `v`.
    pub fn reduce(&self, v: SparseVec) -> SparseVec {
        let hits: Vec<(usize, Scalar)> = v
            .iter()
            .filter(|(k, _)| self.rows.contains_key(k))
            .map(|(k, c)| (*k, c.clone()))
            .collect();
        let mut v = v;
        for (k, c) in hits {
            axpy(&mut v, &-&c, &self.rows[&k]);
        }
        v
    }

    /// Adds `v` to the row space; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(v);
        let Some((&p, c)) = v.iter().next_back() else {
            return false;
        };
        let row = scale(&v, &c.recip());
        // Rows stay fully reduced: no row mentions another row's pivot.
        for other in self.rows.values_mut() {
            if let Some(a) = other.get(&p).cloned() {
                axpy(other, &-&a, &row);
            }
        }
        self.rows.insert(p, row);
        true
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Reduced row echelon form of a dense matrix, together with the invertible
/// matrix `T` such that `T · original = reduced`.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: Vec<Vec<Scalar>>,
    pub transform: Vec<Vec<Scalar>>,
    /// Pivot column of each of the first `pivots.len()` rows.
    pub pivots: Vec<usize>,
}

pub fn rref(matrix: &[Vec<Scalar>], cols: usize) -> Rref {
    let rows = matrix.len();
    let mut a: Vec<Vec<Scalar>> = matrix.to_vec();
    let mut t: Vec<Vec<Scalar>> = (0..rows)
        .map(|i| (0..rows).map(|j| if i == j { Scalar::ONE } else { Scalar::ZERO }).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        t.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for x in t[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..cols {
                if !a[r][j].is_zero() {
                    let d = &f * &a[r][j];
                    a[i][j] -= &d;
                }
            }
            for j in 0..rows {
                if !t[r][j].is_zero() {
                    let d = &f * &t[r][j];
                    t[i][j] -= &d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { reduced: a, transform: t, pivots }
}

/// Rank of a set of sparse vectors.
pub fn rank_of(vectors: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}
