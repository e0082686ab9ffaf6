//! Exact sparse linear algebra: kernels by fraction-free elimination and
//! subspaces kept in reduced row echelon form.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::Scalar;

pub type SparseVec<K> = BTreeMap<K, Scalar>;

fn content(row: &[BigInt]) -> BigInt {
    row.iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::zero(), |g, x| g.gcd(x))
}

fn make_primitive(row: &mut [BigInt]) {
    let g = content(row);
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// Basis of `{ c : Σ_j c_j columns[j] = 0 }` as primitive integer vectors.
///
/// Each column is a sparse vector indexed by arbitrary ordered keys. Rows are
/// cleared of denominators and eliminated without division (every row is
/// kept primitive), so no entry ever leaves the integers. Each kernel vector
/// has a positive entry at its free column and zeros at the other free
/// columns; the order follows the free columns.
pub fn kernel<K: Ord + Clone>(columns: &[SparseVec<K>]) -> Vec<Vec<BigInt>> {
    let ncols = columns.len();
    let mut row_of: BTreeMap<K, usize> = BTreeMap::new();
    let mut rational_rows: Vec<Vec<Scalar>> = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        for (k, x) in col {
            if x.is_zero() {
                continue;
            }
            let r = *row_of.entry(k.clone()).or_insert_with(|| {
                rational_rows.push(vec![Scalar::zero(); ncols]);
                rational_rows.len() - 1
            });
            rational_rows[r][j] = x.clone();
        }
    }
    let mut rows: Vec<Vec<BigInt>> = rational_rows
        .into_iter()
        .map(|r| {
            let l = r
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let mut out: Vec<BigInt> = r
                .iter()
                .map(|x| (x * BigRational::from_integer(l.clone())).to_integer())
                .collect();
            make_primitive(&mut out);
            out
        })
        .collect();

    let mut pivot_rows: Vec<(usize, usize)> = Vec::new(); // (column, row)
    let mut used = vec![false; rows.len()];
    for c in 0..ncols {
        let Some(p) = (0..rows.len()).find(|&r| !used[r] && !rows[r][c].is_zero()) else {
            continue;
        };
        used[p] = true;
        let pivot = rows[p].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == p || row[c].is_zero() {
                continue;
            }
            let a = row[c].clone();
            let b = pivot[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x = &*x * &b - &a * y;
            }
            make_primitive(row);
        }
        pivot_rows.push((c, p));
    }

    let pivot_cols: Vec<usize> = pivot_rows.iter().map(|&(c, _)| c).collect();
    let mut basis = Vec::new();
    for f in (0..ncols).filter(|c| !pivot_cols.contains(c)) {
        let scale = pivot_rows
            .iter()
            .filter(|&&(_, r)| !rows[r][f].is_zero())
            .fold(BigInt::one(), |acc, &(c, r)| acc.lcm(&rows[r][c].abs()));
        let mut x = vec![BigInt::zero(); ncols];
        x[f] = scale.clone();
        for &(c, r) in &pivot_rows {
            let a = &rows[r][f];
            if !a.is_zero() {
                x[c] = -(a * &scale) / &rows[r][c];
            }
        }
        make_primitive(&mut x);
        basis.push(x);
    }
    basis
}

/// Rank of the span of `columns`.
pub fn rank<K: Ord + Clone>(columns: &[SparseVec<K>]) -> usize {
    columns.len() - kernel(columns).len()
}

/// A subspace of a coordinate space, stored in reduced row echelon form.
///
/// The pivot of a row is its smallest key, normalized to coefficient one,
/// and no pivot key occurs in any other row.
#[derive(Debug, Clone)]
pub struct Subspace<K: Ord + Clone> {
    rows: Vec<SparseVec<K>>,
    pivots: BTreeMap<K, usize>,
}

impl<K: Ord + Clone> Default for Subspace<K> {
    fn default() -> Self {
        Self {
            rows: Vec::new(),
            pivots: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> Subspace<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<K>] {
        &self.rows
    }

    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let mut out = v.clone();
        let hits: Vec<K> = v.keys().filter(|k| self.pivots.contains_key(*k)).cloned().collect();
        for k in hits {
            let Some(c) = out.get(&k).cloned() else {
                continue;
            };
            let row = &self.rows[self.pivots[&k]];
            for (key, x) in row {
                let entry = out.entry(key.clone()).or_insert_with(Scalar::zero);
                *entry -= &c * x;
                if entry.is_zero() {
                    out.remove(key);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &SparseVec<K>) -> bool {
        let mut r = self.reduce(v);
        let Some((pivot, lead)) = r.iter().next().map(|(k, x)| (k.clone(), x.clone())) else {
            return false;
        };
        for x in r.values_mut() {
            *x /= &lead;
        }
        for row in &mut self.rows {
            let Some(c) = row.get(&pivot).cloned() else {
                continue;
            };
            for (key, x) in &r {
                let entry = row.entry(key.clone()).or_insert_with(Scalar::zero);
                *entry -= &c * x;
                if entry.is_zero() {
                    row.remove(key);
                }
            }
        }
        self.pivots.insert(pivot, self.rows.len());
        self.rows.push(r);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn col(entries: &[(u32, i64)]) -> SparseVec<u32> {
        entries.iter().map(|&(k, v)| (k, int(v))).collect()
    }

    #[test]
    fn kernel_of_dependent_columns() {
        // c0 = (1,2), c1 = (2,4), c2 = (0,1): kernel spanned by (2,-1,0).
        let cols = vec![col(&[(0, 1), (1, 2)]), col(&[(0, 2), (1, 4)]), col(&[(1, 1)])];
        let k = kernel(&cols);
        assert_eq!(k.len(), 1);
        let v: Vec<i64> = k[0].iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert!(v == vec![-2, 1, 0] || v == vec![2, -1, 0]);
        assert_eq!(rank(&cols), 2);
    }

    #[test]
    fn kernel_of_zero_columns_is_everything() {
        let cols: Vec<SparseVec<u32>> = vec![BTreeMap::new(), BTreeMap::new()];
        assert_eq!(kernel(&cols).len(), 2);
    }

    #[test]
    fn kernel_with_rational_entries() {
        let mut c0 = SparseVec::new();
        c0.insert(0u32, int(1) / int(3));
        let mut c1 = SparseVec::new();
        c1.insert(0u32, int(1) / int(2));
        let k = kernel(&[c0.clone(), c1.clone()]);
        assert_eq!(k.len(), 1);
        let combo = &c0[&0] * &BigRational::from_integer(k[0][0].clone())
            + &c1[&0] * &BigRational::from_integer(k[0][1].clone());
        assert!(combo.is_zero());
    }

    #[test]
    fn subspace_reduces_to_rref() {
        let mut s = Subspace::new();
        assert!(s.insert(&col(&[(0, 2), (1, 2)])));
        assert!(s.insert(&col(&[(1, 1), (2, 1)])));
        assert!(!s.insert(&col(&[(0, 1), (2, -1)])));
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&col(&[(0, 3), (1, 5), (2, 2)])));
        assert!(!s.contains(&col(&[(2, 1)])));
    }
}
