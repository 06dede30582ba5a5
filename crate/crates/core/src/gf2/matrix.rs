use std::fmt;

use super::BitVector;
use crate::error::{Error, Result};

/// A dense matrix over GF(2), stored as a list of packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    /// Nonzero rows only; row `i` has its pivot at `pivots[i]`.
    pub matrix: BitMatrix,
    pub pivots: Vec<usize>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            cols: n,
            rows: (0..n).map(|i| BitVector::unit(n, i)).collect(),
        }
    }

    /// An empty matrix with `cols` columns.
    pub fn empty(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(rows: Vec<BitVector>, cols: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::LengthMismatch {
                left: bad.len(),
                right: cols,
            });
        }
        Ok(Self { cols, rows })
    }

    /// Parses rows of `0`/`1` characters, one row per string.
    ///
    /// # Panics
    ///
    /// Panics if the rows have different lengths.
    pub fn from_bit_strs(rows: &[&str]) -> Self {
        let rows: Vec<BitVector> = rows.iter().map(|s| BitVector::from_bit_str(s)).collect();
        let cols = rows.first().map_or(0, BitVector::len);
        Self::from_rows(rows, cols).expect("rows of unequal length")
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    #[inline]
    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn into_rows(self) -> Vec<BitVector> {
        self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    /// Dimension of the row space.
    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Reduced row echelon form with the natural column priority.
    pub fn rref(&self) -> Echelon {
        self.rref_pivot_order(&(0..self.cols).collect::<Vec<_>>())
    }

    /// Gauss-Jordan elimination where pivot columns are taken greedily in
    /// `column_priority` order. For each column the lowest-indexed remaining
    /// row with a one becomes the pivot row. Zero rows are dropped.
    ///
    /// Rows whose pivot comes later in the priority order are zero on every
    /// column before it, so a priority that lists a coordinate block first
    /// yields the block form `[I G_T; 0 G_0]` on that block.
    ///
    /// # Panics
    ///
    /// Panics if `column_priority` is not a permutation of `0..ncols`.
    pub fn rref_pivot_order(&self, column_priority: &[usize]) -> Echelon {
        assert!(
            is_permutation(column_priority, self.cols),
            "column priority must be a permutation of 0..{}",
            self.cols
        );
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for &col in column_priority {
            if next == rows.len() {
                break;
            }
            let Some(found) = (next..rows.len()).find(|&i| rows[i].get(col)) else {
                continue;
            };
            rows.swap(next, found);
            let (head, tail) = rows.split_at_mut(next);
            let (pivot, rest) = tail.split_first_mut().expect("pivot row exists");
            for r in head.iter_mut().chain(rest.iter_mut()) {
                if r.get(col) {
                    r.xor_assign(pivot);
                }
            }
            pivots.push(col);
            next += 1;
        }
        rows.truncate(next);
        Echelon {
            matrix: Self {
                cols: self.cols,
                rows,
            },
            pivots,
        }
    }

    /// A basis of the right kernel `{x : M xᵀ = 0}`, one basis vector per
    /// free column.
    pub fn kernel_basis(&self) -> Self {
        let Echelon { matrix, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let rows = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = BitVector::unit(self.cols, free);
                for (row, &p) in matrix.rows.iter().zip(&pivots) {
                    if row.get(free) {
                        x.set(p, true);
                    }
                }
                x
            })
            .collect();
        Self {
            cols: self.cols,
            rows,
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.nrows());
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.iter_ones() {
                out.rows[j].set(i, true);
            }
        }
        out
    }

    /// `M · vᵀ`, one bit per row of `M`.
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                left: v.len(),
                right: self.cols,
            });
        }
        Ok(self.rows.iter().map(|r| r.dot(v)).collect())
    }

    /// The Gram matrix `A · Bᵀ` of pairwise inner products.
    pub fn mul_transpose(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::LengthMismatch {
                left: self.cols,
                right: other.cols,
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|a| other.rows.iter().map(|b| a.dot(b)).collect())
            .collect();
        Ok(Self {
            cols: other.nrows(),
            rows,
        })
    }

    /// True when every row of `self` is orthogonal to every row of `other`.
    pub fn is_orthogonal_to(&self, other: &Self) -> Result<bool> {
        Ok(self.mul_transpose(other)?.rows.iter().all(BitVector::is_zero))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVector::is_zero)
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::LengthMismatch {
                left: self.cols,
                right: other.cols,
            });
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(Self {
            cols: self.cols,
            rows,
        })
    }

    /// Restriction to the column range `start..ncols`.
    pub fn drop_leading_columns(&self, start: usize) -> Self {
        assert!(start <= self.cols);
        Self {
            cols: self.cols - start,
            rows: self.rows.iter().map(|r| r.slice(start..self.cols)).collect(),
        }
    }

    pub fn select_rows(&self, range: std::ops::Range<usize>) -> Self {
        Self {
            cols: self.cols,
            rows: self.rows[range].to_vec(),
        }
    }

    /// True when the row space of `other` lies inside the row space of `self`.
    pub fn row_space_contains(&self, other: &Self) -> Result<bool> {
        let stacked = self.stack(other)?;
        Ok(stacked.rank() == self.rank())
    }

    pub fn row_space_eq(&self, other: &Self) -> Result<bool> {
        Ok(self.row_space_contains(other)? && other.row_space_contains(self)?)
    }
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    if p.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &i in p {
        if i >= n || seen[i] {
            return false;
        }
        seen[i] = true;
    }
    true
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.nrows(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        write!(f, "]")
    }
}
