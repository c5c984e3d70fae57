//! Exact sparse matrices and rank computations.
//!
//! Ranks over `F_p` use sparse elimination on machine-word residues; over
//! `Q` each vector is cleared to integers and eliminated fraction-free, with
//! content reduction after every step. Pivots follow a Markowitz-style rule:
//! the pivot column is the one with the smallest support, the pivot vector
//! the shortest vector meeting it. The dense routines in [`dense`] are a
//! plain row-reduction kept separate as a cross-check.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::scalars::{inv_mod, Field, Scalar};

/// Column-major sparse matrix over a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    field: Field,
    rows: usize,
    columns: Vec<Vec<(usize, Scalar)>>,
}

impl SparseMatrix {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Self {
        SparseMatrix {
            field,
            rows,
            columns: vec![Vec::new(); cols],
        }
    }

    /// Builds a matrix from sparse columns. Zero entries are dropped and each
    /// column is sorted by row index.
    pub fn from_columns(field: Field, rows: usize, columns: Vec<Vec<(usize, Scalar)>>) -> Self {
        let columns = columns
            .into_iter()
            .map(|col| {
                let mut merged: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (r, v) in col {
                    assert!(r < rows, "row index {r} out of range");
                    let e = merged.entry(r).or_insert_with(|| field.zero());
                    *e = &*e + &v;
                }
                merged.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        SparseMatrix { field, rows, columns }
    }

    pub fn from_dense(field: Field, dense: &[Vec<Scalar>]) -> Self {
        let rows = dense.len();
        let cols = dense.first().map_or(0, Vec::len);
        let columns = (0..cols)
            .map(|c| (0..rows).map(|r| (r, dense[r][c].clone())).collect())
            .collect();
        Self::from_columns(field, rows, columns)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, c: usize) -> &[(usize, Scalar)] {
        &self.columns[c]
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.columns[c]
            .iter()
            .find(|(i, _)| *i == r)
            .map_or_else(|| self.field.zero(), |(_, v)| v.clone())
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.nnz() == 0
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![self.field.zero(); self.cols()]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                out[*r][c] = v.clone();
            }
        }
        out
    }

    /// Appends the columns of `other` (same row count) to the right.
    pub fn hconcat(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.rows, other.rows, "row counts differ");
        assert_eq!(self.field, other.field, "fields differ");
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().cloned());
        SparseMatrix {
            field: self.field,
            rows: self.rows,
            columns,
        }
    }

    /// Exact rank by sparse elimination.
    pub fn rank(&self) -> usize {
        match self.field {
            Field::Prime(p) => {
                let vecs = self
                    .columns
                    .iter()
                    .map(|c| c.iter().map(|(r, v)| (*r, v.as_residue().unwrap())).collect())
                    .collect();
                sparse_rank(vecs, |target, pivot, col| eliminate_mod(target, pivot, col, p))
            }
            Field::Rational => {
                let vecs = self.columns.iter().map(|c| integer_vector(c)).collect();
                sparse_rank(vecs, eliminate_fraction_free)
            }
        }
    }

    /// Whether `v` (dense, length `rows`) lies in the column span.
    pub fn spans(&self, v: &[Scalar]) -> bool {
        let col: Vec<(usize, Scalar)> = v.iter().cloned().enumerate().collect();
        let extra = SparseMatrix::from_columns(self.field, self.rows, vec![col]);
        self.hconcat(&extra).rank() == self.rank()
    }
}

fn integer_vector(col: &[(usize, Scalar)]) -> Vec<(usize, BigInt)> {
    let mut lcm = BigInt::one();
    for (_, v) in col {
        lcm = lcm.lcm(v.as_rational().unwrap().denom());
    }
    let mut out: Vec<(usize, BigInt)> = col
        .iter()
        .map(|(r, v)| {
            let q = v.as_rational().unwrap();
            (*r, q.numer() * (&lcm / q.denom()))
        })
        .collect();
    reduce_content(&mut out);
    out
}

fn reduce_content(v: &mut [(usize, BigInt)]) {
    let g = v.iter().fold(BigInt::zero(), |g, (_, x)| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for (_, x) in v.iter_mut() {
            *x /= &g;
        }
    }
}

fn entry<T>(v: &[(usize, T)], col: usize) -> Option<&T> {
    v.binary_search_by_key(&col, |(c, _)| *c).ok().map(|i| &v[i].1)
}

/// Merges `a·target + b·pivot` over sorted sparse vectors.
fn combine<T: Clone>(
    target: &[(usize, T)],
    pivot: &[(usize, T)],
    scale_target: impl Fn(&T) -> T,
    scale_pivot: impl Fn(&T) -> T,
    add: impl Fn(&T, &T) -> T,
    is_zero: impl Fn(&T) -> bool,
) -> Vec<(usize, T)> {
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < pivot.len() {
        let (idx, val) = match (target.get(i), pivot.get(j)) {
            (Some((a, x)), Some((b, y))) if a == b => {
                i += 1;
                j += 1;
                (*a, add(&scale_target(x), &scale_pivot(y)))
            }
            (Some((a, x)), Some((b, _))) if a < b => {
                i += 1;
                (*a, scale_target(x))
            }
            (Some((a, x)), None) => {
                i += 1;
                (*a, scale_target(x))
            }
            (_, Some((b, y))) => {
                j += 1;
                (*b, scale_pivot(y))
            }
            (None, None) => unreachable!(),
        };
        if !is_zero(&val) {
            out.push((idx, val));
        }
    }
    out
}

fn eliminate_mod(target: &[(usize, u64)], pivot: &[(usize, u64)], col: usize, p: u64) -> Vec<(usize, u64)> {
    let t = *entry(target, col).unwrap();
    let pv = *entry(pivot, col).unwrap();
    // target - (t / pv) * pivot
    let factor = (p - (t as u128 * inv_mod(pv, p) as u128 % p as u128) as u64) % p;
    combine(
        target,
        pivot,
        |x| *x,
        |y| (*y as u128 * factor as u128 % p as u128) as u64,
        |x, y| ((*x as u128 + *y as u128) % p as u128) as u64,
        |x| *x == 0,
    )
}

fn eliminate_fraction_free(target: &[(usize, BigInt)], pivot: &[(usize, BigInt)], col: usize) -> Vec<(usize, BigInt)> {
    let t = entry(target, col).unwrap().clone();
    let pv = entry(pivot, col).unwrap().clone();
    let g = t.gcd(&pv);
    let (a, b) = (&pv / &g, -(&t / &g));
    let mut out = combine(target, pivot, |x| x * &a, |y| y * &b, |x, y| x + y, |x| x.is_zero());
    reduce_content(&mut out);
    out
}

fn sparse_rank<T: Clone>(
    vecs: Vec<Vec<(usize, T)>>,
    eliminate: impl Fn(&[(usize, T)], &[(usize, T)], usize) -> Vec<(usize, T)>,
) -> usize {
    let mut active: Vec<Option<Vec<(usize, T)>>> = vecs.into_iter().map(|v| (!v.is_empty()).then_some(v)).collect();
    let mut support: BTreeMap<usize, usize> = BTreeMap::new();
    for v in active.iter().flatten() {
        for (c, _) in v {
            *support.entry(*c).or_insert(0) += 1;
        }
    }
    let mut rank = 0;
    // Column with the smallest nonzero support; ties go to the lowest index.
    while let Some((&col, _)) = support.iter().filter(|(_, n)| **n > 0).min_by_key(|(c, n)| (**n, **c)) {
        let pivot_idx = active
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.as_ref().filter(|v| entry(v, col).is_some()).map(|v| (v.len(), i)))
            .min()
            .map(|(_, i)| i)
            .expect("support count is out of sync");
        let pivot = active[pivot_idx].take().unwrap();
        for (c, _) in &pivot {
            *support.get_mut(c).unwrap() -= 1;
        }
        rank += 1;
        for slot in active.iter_mut() {
            let Some(v) = slot else { continue };
            if entry(v, col).is_none() {
                continue;
            }
            for (c, _) in v.iter() {
                *support.get_mut(c).unwrap() -= 1;
            }
            let reduced = eliminate(v, &pivot, col);
            for (c, _) in &reduced {
                *support.entry(*c).or_insert(0) += 1;
            }
            *slot = (!reduced.is_empty()).then_some(reduced);
        }
    }
    rank
}

/// Naive dense row reduction over any [`Field`].
pub mod dense {
    use super::*;

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(m: &mut [Vec<Scalar>]) -> Vec<usize> {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, pr);
            let inv = m[r][c].checked_inv().unwrap();
            for x in m[r].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..rows {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    let pivot = m[r].clone();
                    for (x, y) in m[i].iter_mut().zip(&pivot) {
                        *x = &*x - &(&f * y);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(m: &[Vec<Scalar>]) -> usize {
        let mut work = m.to_vec();
        rref(&mut work).len()
    }

    /// Basis of the null space `{x : m x = 0}` as dense vectors.
    pub fn kernel(field: Field, m: &[Vec<Scalar>], cols: usize) -> Vec<Vec<Scalar>> {
        let mut work = m.to_vec();
        let pivots = rref(&mut work);
        let mut basis = Vec::new();
        for free in (0..cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![field.zero(); cols];
            v[free] = field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&work[row][free];
            }
            basis.push(v);
        }
        basis
    }
}

impl SparseMatrix {
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        dense::kernel(self.field, &self.to_dense(), self.cols())
    }
}
