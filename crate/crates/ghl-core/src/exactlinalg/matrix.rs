//! Sparse integer matrices with arbitrary precision entries.
//!
//! Storage is column major: a matrix is a list of sparse columns, each column
//! a `Vec` of `(row, value)` pairs with strictly increasing rows and nonzero
//! values. Column orientation matches the rest of the crate, where lattices
//! are spanned by columns and chain maps act on column vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

/// A sparse column: `(row, value)` pairs, rows strictly increasing, values nonzero.
pub type Col = Vec<(usize, BigInt)>;

/// Entry of `col` at `row`, zero when absent.
pub fn col_get(col: &Col, row: usize) -> BigInt {
    match col.binary_search_by_key(&row, |e| e.0) {
        Ok(i) => col[i].1.clone(),
        Err(_) => BigInt::zero(),
    }
}

/// Builds a sparse column from a dense slice.
pub fn col_from_dense(v: &[BigInt]) -> Col {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Expands a sparse column to a dense vector of length `len`.
pub fn col_to_dense(col: &Col, len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (r, v) in col {
        assert!(*r < len, "column entry out of range");
        out[*r] = v.clone();
    }
    out
}

/// Returns `dst + c * src` as a fresh column.
pub fn col_axpy(dst: &Col, c: &BigInt, src: &Col) -> Col {
    if c.is_zero() || src.is_empty() {
        return dst.clone();
    }
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        if j >= src.len() || (i < dst.len() && dst[i].0 < src[j].0) {
            out.push(dst[i].clone());
            i += 1;
        } else if i >= dst.len() || src[j].0 < dst[i].0 {
            let v = c * &src[j].1;
            if !v.is_zero() {
                out.push((src[j].0, v));
            }
            j += 1;
        } else {
            let v = &dst[i].1 + c * &src[j].1;
            if !v.is_zero() {
                out.push((dst[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Negates a column in place.
pub fn col_neg(col: &mut Col) {
    for (_, v) in col.iter_mut() {
        *v = -&*v;
    }
}

/// Returns `c * col`, dropping the column entirely when `c` is zero.
pub fn col_scale(col: &Col, c: &BigInt) -> Col {
    if c.is_zero() {
        return Vec::new();
    }
    col.iter().map(|(r, v)| (*r, c * v)).collect()
}

/// Reduces every entry into `[0, q)` in place, dropping zeros.
pub fn col_reduce_mod(col: &mut Col, q: &BigInt) {
    col.retain_mut(|(_, v)| {
        *v = v.mod_floor(q);
        !v.is_zero()
    });
}

/// Reduces every entry mod `q` into the balanced range `(-q/2, q/2]`,
/// dropping entries that become zero. Elimination uses this form so that
/// entry magnitudes genuinely shrink: reducing into `[0, q)` can bounce a
/// small negative remainder back up to `q - 1`, which stalls the Euclidean
/// descent on lead entries.
pub fn col_reduce_mod_balanced(col: &mut Col, q: &BigInt) {
    col.retain_mut(|(_, v)| {
        *v = v.mod_floor(q);
        if &*v * 2 > *q {
            *v -= q;
        }
        !v.is_zero()
    });
}

/// Shifts every row index by `offset`.
pub fn col_shift(col: &Col, offset: usize) -> Col {
    col.iter().map(|(r, v)| (r + offset, v.clone())).collect()
}

/// A sparse matrix over the integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: Vec<Col>,
}

impl IntMatrix {
    /// The zero matrix of the given shape.
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols: vec![Vec::new(); cols],
        }
    }

    /// The identity matrix of size `n`.
    pub fn identity(n: usize) -> Self {
        IntMatrix {
            rows: n,
            cols: (0..n).map(|i| vec![(i, BigInt::from(1))]).collect(),
        }
    }

    /// Builds a matrix from `(row, col, value)` triplets; duplicate positions
    /// are summed and resulting zeros dropped.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, BigInt)>,
    {
        let mut acc: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); cols];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet out of range");
            if v.is_zero() {
                continue;
            }
            let e = acc[c].entry(r).or_insert_with(BigInt::zero);
            *e += v;
        }
        let cols = acc
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        IntMatrix { rows, cols }
    }

    /// Builds a matrix from dense rows of machine integers (test helper).
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut t = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                if *v != 0 {
                    t.push((i, j, BigInt::from(*v)));
                }
            }
        }
        IntMatrix::from_triplets(nrows, ncols, t)
    }

    /// Wraps pre-built sparse columns.
    pub fn from_cols(rows: usize, cols: Vec<Col>) -> Self {
        for col in &cols {
            debug_assert!(col.windows(2).all(|w| w[0].0 < w[1].0), "unsorted column");
            debug_assert!(col.iter().all(|(r, v)| *r < rows && !v.is_zero()));
        }
        IntMatrix { rows, cols }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    /// Entry at `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> BigInt {
        col_get(&self.cols[j], i)
    }

    /// The `j`-th column.
    pub fn col(&self, j: usize) -> &Col {
        &self.cols[j]
    }

    /// All columns.
    pub fn columns(&self) -> &[Col] {
        &self.cols
    }

    /// Appends a column.
    pub fn push_col(&mut self, col: Col) {
        debug_assert!(col.iter().all(|(r, v)| *r < self.rows && !v.is_zero()));
        self.cols.push(col);
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    /// Number of stored nonzero entries.
    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Vec::with_capacity(self.nnz());
        for (j, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                t.push((j, *r, v.clone()));
            }
        }
        IntMatrix::from_triplets(self.cols.len(), self.rows, t)
    }

    /// Matrix times sparse column vector.
    pub fn mul_col(&self, v: &Col) -> Col {
        let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (j, c) in v {
            assert!(*j < self.cols.len(), "vector index out of range");
            for (r, a) in &self.cols[*j] {
                let e = acc.entry(*r).or_insert_with(BigInt::zero);
                *e += a * c;
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols.len(), other.rows, "matrix product shape mismatch");
        let cols = other.cols.iter().map(|c| self.mul_col(c)).collect();
        IntMatrix {
            rows: self.rows,
            cols,
        }
    }

    /// Entrywise sum.
    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols.len()), (other.rows, other.cols.len()));
        let one = BigInt::from(1);
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| col_axpy(a, &one, b))
            .collect();
        IntMatrix {
            rows: self.rows,
            cols,
        }
    }

    /// Entrywise difference.
    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols.len()), (other.rows, other.cols.len()));
        let minus = BigInt::from(-1);
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| col_axpy(a, &minus, b))
            .collect();
        IntMatrix {
            rows: self.rows,
            cols,
        }
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols.iter().map(|col| col_scale(col, c)).collect(),
        }
    }

    /// Horizontal concatenation.
    pub fn hstack(parts: &[&IntMatrix]) -> IntMatrix {
        assert!(!parts.is_empty());
        let rows = parts[0].rows;
        assert!(parts.iter().all(|m| m.rows == rows), "row count mismatch");
        let mut cols = Vec::new();
        for m in parts {
            cols.extend(m.cols.iter().cloned());
        }
        IntMatrix { rows, cols }
    }

    /// Vertical concatenation.
    pub fn vstack(parts: &[&IntMatrix]) -> IntMatrix {
        assert!(!parts.is_empty());
        let ncols = parts[0].cols.len();
        assert!(parts.iter().all(|m| m.cols.len() == ncols));
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut cols = vec![Vec::new(); ncols];
        let mut offset = 0;
        for m in parts {
            for (j, col) in m.cols.iter().enumerate() {
                for (r, v) in col {
                    cols[j].push((r + offset, v.clone()));
                }
            }
            offset += m.rows;
        }
        IntMatrix { rows, cols }
    }

    /// All nonzero entries as `(row, col, value)`, sorted by row then column.
    pub fn to_triplets(&self) -> Vec<(usize, usize, BigInt)> {
        let mut t = Vec::with_capacity(self.nnz());
        for (j, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                t.push((*r, j, v.clone()));
            }
        }
        t.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        t
    }

    /// Largest absolute value of any entry (zero for the zero matrix).
    pub fn max_abs(&self) -> BigInt {
        let mut best = BigInt::zero();
        for col in &self.cols {
            for (_, v) in col {
                let a = v.abs();
                if a > best {
                    best = a;
                }
            }
        }
        best
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols.len())?;
        for i in 0..self.rows.min(24) {
            let row: Vec<String> = (0..self.cols.len().min(24))
                .map(|j| self.entry(i, j).to_string())
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        if self.rows > 24 || self.cols.len() > 24 {
            writeln!(f, "  ...")?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixDto {
    rows: usize,
    cols: usize,
    triplets: Vec<(usize, usize, String)>,
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let dto = MatrixDto {
            rows: self.rows,
            cols: self.cols.len(),
            triplets: self
                .to_triplets()
                .into_iter()
                .map(|(r, c, v)| (r, c, v.to_string()))
                .collect(),
        };
        dto.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let dto = MatrixDto::deserialize(de)?;
        let mut triplets = Vec::with_capacity(dto.triplets.len());
        for (r, c, v) in dto.triplets {
            if r >= dto.rows || c >= dto.cols {
                return Err(serde::de::Error::custom("triplet out of range"));
            }
            let value: BigInt = v
                .parse()
                .map_err(|_| serde::de::Error::custom("bad integer literal"))?;
            triplets.push((r, c, value));
        }
        Ok(IntMatrix::from_triplets(dto.rows, dto.cols, triplets))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn axpy_merges_and_cancels() {
        let a: Col = vec![(0, b(1)), (2, b(3))];
        let c: Col = vec![(1, b(5)), (2, b(-1))];
        let r = col_axpy(&a, &b(3), &c);
        assert_eq!(r, vec![(0, b(1)), (1, b(15))]);
    }

    #[test]
    fn product_matches_by_hand() {
        let m = IntMatrix::from_i64_rows(&[vec![1, 2], vec![3, 4]]);
        let n = IntMatrix::from_i64_rows(&[vec![0, 1], vec![1, 0]]);
        let p = m.mul(&n);
        assert_eq!(p, IntMatrix::from_i64_rows(&[vec![2, 1], vec![4, 3]]));
    }

    #[test]
    fn transpose_round_trips() {
        let m = IntMatrix::from_i64_rows(&[vec![1, 0, 2], vec![0, -3, 0]]);
        assert_eq!(m.transpose().transpose(), m);
        assert_eq!(m.transpose().entry(2, 0), b(2));
    }

    #[test]
    fn stacking() {
        let m = IntMatrix::from_i64_rows(&[vec![1], vec![2]]);
        let n = IntMatrix::from_i64_rows(&[vec![3], vec![4]]);
        let h = IntMatrix::hstack(&[&m, &n]);
        assert_eq!(h, IntMatrix::from_i64_rows(&[vec![1, 3], vec![2, 4]]));
        let v = IntMatrix::vstack(&[&m, &n]);
        assert_eq!(
            v,
            IntMatrix::from_i64_rows(&[vec![1], vec![2], vec![3], vec![4]])
        );
    }

    #[test]
    fn json_round_trip_uses_decimal_strings() {
        let m = IntMatrix::from_i64_rows(&[vec![0, -7], vec![123, 0]]);
        let text = serde_json::to_string(&m).unwrap();
        assert!(text.contains("\"-7\""));
        assert!(text.contains("\"123\""));
        let back: IntMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn triplets_sum_duplicates() {
        let m = IntMatrix::from_triplets(2, 2, vec![(0, 0, b(2)), (0, 0, b(-2)), (1, 1, b(5))]);
        assert!(m.entry(0, 0).is_zero());
        assert_eq!(m.nnz(), 1);
    }
}
