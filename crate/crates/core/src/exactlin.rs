//! Dense exact linear algebra over arbitrary-precision rationals: reduced
//! row echelon form, rank, kernel bases, and row-space arithmetic.
//!
//! Elimination is fraction-free (Bareiss) on an integer-scaled copy of the
//! matrix, with a final normalization pass producing the unique rational
//! RREF. Pivots are always the first nonzero entry in column order, so every
//! result is reproducible bit for bit.

use num::{BigInt, One, Zero};
use thiserror::Error;

use crate::Rat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("column count mismatch: {left} vs {right}")]
    ColumnMismatch { left: usize, right: usize },
}

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must have equal length.
    pub fn from_rows_with_cols(rows: Vec<Vec<Rat>>, cols: usize) -> Self {
        let nr = rows.len();
        let mut entries = Vec::with_capacity(nr * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row in QMatrix::from_rows");
            entries.extend(r);
        }
        QMatrix {
            rows: nr,
            cols,
            entries,
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows_with_cols(rows, cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn vstack(&self, other: &QMatrix) -> Result<QMatrix, LinAlgError> {
        if self.cols != other.cols {
            return Err(LinAlgError::ColumnMismatch {
                left: self.cols,
                right: other.cols,
            });
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(QMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }
}

/// Result of `rref`: rank, the reduced matrix, and its pivot columns.
pub struct Rref {
    pub rank: usize,
    pub matrix: QMatrix,
    pub pivot_cols: Vec<usize>,
}

/// Reduced row echelon form with deterministic pivoting.
pub fn rref(m: &QMatrix) -> Rref {
    let nr = m.rows;
    let nc = m.cols;

    // Scale each row to integers so forward elimination stays fraction-free.
    let mut a: Vec<Vec<BigInt>> = (0..nr)
        .map(|r| {
            let row = m.row(r);
            let mut lcm = BigInt::one();
            for e in row {
                lcm = num::integer::lcm(lcm, e.denom().clone());
            }
            row.iter()
                .map(|e| e.numer() * (&lcm / e.denom()))
                .collect()
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let Some(p) = (r..nr).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..nr {
            if a[i][c].is_zero() && prev.is_one() {
                // Still rescale trailing entries for Bareiss consistency.
            }
            for j in c + 1..nc {
                let t = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = t / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivot_cols.push(c);
        r += 1;
    }
    let rank = r;

    // Normalization pass: pivots to 1, eliminate above.
    let mut rows: Vec<Vec<Rat>> = a
        .into_iter()
        .take(rank)
        .map(|row| {
            row.into_iter()
                .map(|z| Rat::from_integer(z))
                .collect::<Vec<_>>()
        })
        .collect();
    for k in (0..rank).rev() {
        let pc = pivot_cols[k];
        let inv = rows[k][pc].clone();
        for j in pc..nc {
            let v = &rows[k][j] / &inv;
            rows[k][j] = v;
        }
        for i in 0..k {
            let f = rows[i][pc].clone();
            if f.is_zero() {
                continue;
            }
            for j in pc..nc {
                let v = &rows[i][j] - &f * &rows[k][j];
                rows[i][j] = v;
            }
        }
    }
    while rows.len() < nr {
        rows.push(vec![Rat::zero(); nc]);
    }

    Rref {
        rank,
        matrix: QMatrix::from_rows_with_cols(rows, nc),
        pivot_cols,
    }
}

/// Rank of a matrix.
pub fn rank(m: &QMatrix) -> usize {
    rref(m).rank
}

/// Basis of the right kernel {v : Mv = 0}. Returns cols - rank vectors.
pub fn kernel_basis(m: &QMatrix) -> Vec<Vec<Rat>> {
    let Rref {
        rank,
        matrix,
        pivot_cols,
    } = rref(m);
    let nc = m.cols;
    let is_pivot = {
        let mut v = vec![false; nc];
        for &p in &pivot_cols {
            v[p] = true;
        }
        v
    };
    let mut out = Vec::with_capacity(nc - rank);
    for f in 0..nc {
        if is_pivot[f] {
            continue;
        }
        let mut v = vec![Rat::zero(); nc];
        v[f] = Rat::one();
        for (k, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -matrix.get(k, f).clone();
        }
        out.push(v);
    }
    out
}

/// A particular solution of Mx = b with every free variable set to zero,
/// or None if the system is inconsistent. Deterministic.
pub fn solve(m: &QMatrix, b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(b.len(), m.rows);
    let mut aug_rows = m.row_vecs();
    for (row, rhs) in aug_rows.iter_mut().zip(b) {
        row.push(rhs.clone());
    }
    let aug = QMatrix::from_rows_with_cols(aug_rows, m.cols + 1);
    let r = rref(&aug);
    if r.pivot_cols.contains(&m.cols) {
        return None; // pivot in the constant column: inconsistent
    }
    let mut x = vec![Rat::zero(); m.cols];
    for (k, &pc) in r.pivot_cols.iter().enumerate() {
        x[pc] = r.matrix.get(k, m.cols).clone();
    }
    Some(x)
}

/// Incremental row-space accumulator: rows are kept in reduced form with
/// unit pivots, ordered by pivot column. Inserting a dependent vector is a
/// no-op. This is the workhorse for all per-degree span dimensions.
#[derive(Clone, Debug)]
pub struct RowSpace {
    cols: usize,
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(cols: usize) -> Self {
        RowSpace {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce_in_place(&self, v: &mut [Rat]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for j in p..self.cols {
                    if !row[j].is_zero() {
                        let t = &v[j] - &f * &row[j];
                        v[j] = t;
                    }
                }
            }
        }
    }

    /// Inserts a vector; returns true iff it enlarged the span.
    pub fn insert(&mut self, mut v: Vec<Rat>) -> bool {
        assert_eq!(v.len(), self.cols);
        self.reduce_in_place(&mut v);
        let Some(p) = v.iter().position(|e| !e.is_zero()) else {
            return false;
        };
        let lead = v[p].clone();
        for j in p..self.cols {
            let t = &v[j] / &lead;
            v[j] = t;
        }
        // Clear the new pivot column in the existing rows.
        for (row, &_rp) in self.rows.iter_mut().zip(&self.pivots) {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for j in p..self.cols {
                    if !v[j].is_zero() {
                        let t = &row[j] - &f * &v[j];
                        row[j] = t;
                    }
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.rows.insert(pos, v);
        true
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        let mut w = v.to_vec();
        self.reduce_in_place(&mut w);
        w.iter().all(|e| e.is_zero())
    }

    pub fn basis_rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    pub fn into_matrix(self) -> QMatrix {
        let cols = self.cols;
        QMatrix::from_rows_with_cols(self.rows, cols)
    }
}

/// Row basis of rowspace(A) + rowspace(B).
pub fn row_space_sum(a: &QMatrix, b: &QMatrix) -> Result<QMatrix, LinAlgError> {
    if a.cols != b.cols {
        return Err(LinAlgError::ColumnMismatch {
            left: a.cols,
            right: b.cols,
        });
    }
    let mut sp = RowSpace::new(a.cols);
    for r in 0..a.rows {
        sp.insert(a.row(r).to_vec());
    }
    for r in 0..b.rows {
        sp.insert(b.row(r).to_vec());
    }
    Ok(sp.into_matrix())
}

/// Row basis of rowspace(A) ∩ rowspace(B), via the left kernel of the
/// stacked matrix.
pub fn row_space_intersect(a: &QMatrix, b: &QMatrix) -> Result<QMatrix, LinAlgError> {
    let stacked = a.vstack(b)?;
    let left_kernel = kernel_basis(&stacked.transpose());
    let mut sp = RowSpace::new(a.cols);
    for c in &left_kernel {
        let mut v = vec![Rat::zero(); a.cols];
        for (k, ck) in c.iter().take(a.rows).enumerate() {
            if ck.is_zero() {
                continue;
            }
            for j in 0..a.cols {
                let t = &v[j] + ck * a.get(k, j);
                v[j] = t;
            }
        }
        sp.insert(v);
    }
    Ok(sp.into_matrix())
}

/// True iff rowspace(B) ⊆ rowspace(A).
pub fn row_space_contains(a: &QMatrix, b: &QMatrix) -> Result<bool, LinAlgError> {
    if a.cols != b.cols {
        return Err(LinAlgError::ColumnMismatch {
            left: a.cols,
            right: b.cols,
        });
    }
    let mut sp = RowSpace::new(a.cols);
    for r in 0..a.rows {
        sp.insert(a.row(r).to_vec());
    }
    Ok((0..b.rows).all(|r| sp.contains(b.row(r))))
}
