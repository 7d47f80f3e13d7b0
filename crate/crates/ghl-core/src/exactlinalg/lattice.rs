//! Integer lattices in canonical column Hermite form, plus the derived
//! operations the rest of the crate leans on: Hermite form with transform,
//! kernels, preimages, and a reusable solver.

use super::echelon::{column_echelon, Echelon};
use super::matrix::{col_axpy, col_get, col_reduce_mod, col_shift, Col, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// A subgroup of `Z^ambient` stored by its canonical column Hermite basis.
///
/// Uniqueness of the basis makes equality of lattices plain `==` on this
/// struct, which is how the engine performs all of its exactness checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    ambient: usize,
    /// Basis columns, pivot rows strictly increasing, each column led by a
    /// positive pivot entry at its pivot row.
    basis: Vec<Col>,
    /// Pivot row of each basis column.
    pivots: Vec<usize>,
}

impl Lattice {
    /// The canonical lattice spanned by `gens` inside `Z^ambient`.
    ///
    /// With `modulus` Some(q) the span of `gens + q·Z^ambient` is computed
    /// with all arithmetic reduced mod q; callers pass a modulus only when
    /// they already know `q·Z^ambient` lies in the span.
    pub fn from_generators(ambient: usize, gens: Vec<Col>, modulus: Option<&BigInt>) -> Lattice {
        let ech = column_echelon(ambient, gens, modulus, true);
        let mut basis = Vec::with_capacity(ech.pivots.len());
        let mut pivots = Vec::with_capacity(ech.pivots.len());
        for (r, col) in ech.pivots {
            pivots.push(r);
            basis.push(col);
        }
        Lattice {
            ambient,
            basis,
            pivots,
        }
    }

    /// The zero lattice.
    pub fn zero(ambient: usize) -> Lattice {
        Lattice {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// All of `Z^ambient`.
    pub fn full(ambient: usize) -> Lattice {
        let one = BigInt::one();
        Lattice {
            ambient,
            basis: (0..ambient).map(|i| vec![(i, one.clone())]).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Col] {
        &self.basis
    }

    pub fn pivot_rows(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis as an `ambient x rank` matrix.
    pub fn basis_matrix(&self) -> IntMatrix {
        IntMatrix::from_cols(self.ambient, self.basis.clone())
    }

    /// Writes `v` as an integer combination of the basis, or `None` when `v`
    /// is outside the lattice. Forward substitution over the pivot staircase;
    /// exact divisions only.
    pub fn express(&self, v: &Col) -> Option<Vec<BigInt>> {
        let mut x = vec![BigInt::zero(); self.basis.len()];
        let mut residual = v.clone();
        for (j, (&prow, bcol)) in self.pivots.iter().zip(&self.basis).enumerate() {
            let e = col_get(&residual, prow);
            if e.is_zero() {
                continue;
            }
            let (quo, rem) = e.div_mod_floor(&bcol[0].1);
            if !rem.is_zero() {
                return None;
            }
            residual = col_axpy(&residual, &-&quo, bcol);
            x[j] = quo;
        }
        if residual.is_empty() {
            Some(x)
        } else {
            None
        }
    }

    /// Columnwise [`Lattice::express`] returning a `rank x m.cols()` matrix.
    pub fn express_matrix(&self, m: &IntMatrix) -> Option<IntMatrix> {
        assert_eq!(m.rows(), self.ambient, "ambient mismatch");
        let mut cols = Vec::with_capacity(m.cols());
        for j in 0..m.cols() {
            let x = self.express(m.col(j))?;
            cols.push(
                x.into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect(),
            );
        }
        Some(IntMatrix::from_cols(self.basis.len(), cols))
    }

    pub fn contains(&self, v: &Col) -> bool {
        self.express(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        other.basis.iter().all(|c| self.contains(c))
    }

    /// Smallest lattice containing both summands.
    pub fn sum(&self, other: &Lattice, modulus: Option<&BigInt>) -> Lattice {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        let gens = self
            .basis
            .iter()
            .chain(other.basis.iter())
            .cloned()
            .collect();
        Lattice::from_generators(self.ambient, gens, modulus)
    }

    /// True exactly for `Z^ambient`.
    pub fn is_full(&self) -> bool {
        self.rank() == self.ambient && self.basis.iter().all(|c| c.len() == 1 && c[0].1.is_one())
    }

    /// A positive `q` with `q·Z^ambient` inside the lattice, or `None` when
    /// the lattice has less than full rank. The determinant (product of
    /// Hermite pivots) always works; callers only need some annihilator, not
    /// the minimal one.
    pub fn full_rank_annihilator(&self) -> Option<BigInt> {
        if self.rank() != self.ambient {
            return None;
        }
        let mut det = BigInt::one();
        for c in &self.basis {
            det *= &c[0].1;
        }
        Some(det)
    }
}

/// Column Hermite normal form with transform: returns `(h, u)` with
/// `h = m · u`, `u` unimodular, `h` canonical (staircase pivot columns first,
/// zero columns last).
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let top = m.rows();
    let n = m.cols();
    let mut cols: Vec<Col> = Vec::with_capacity(n);
    for j in 0..n {
        let mut c = m.col(j).clone();
        c.push((top + j, BigInt::one()));
        cols.push(c);
    }
    let Echelon { pivots, nulls } = column_echelon(top, cols, None, true);
    let mut hcols = Vec::with_capacity(n);
    let mut ucols = Vec::with_capacity(n);
    for (_, col) in &pivots {
        let split = col.partition_point(|(r, _)| *r < top);
        hcols.push(col[..split].to_vec());
        ucols.push(col[split..].iter().map(|(r, v)| (r - top, v.clone())).collect());
    }
    for col in &nulls {
        hcols.push(Vec::new());
        ucols.push(col.iter().map(|(r, v)| (r - top, v.clone())).collect());
    }
    let h = IntMatrix::from_cols(top, hcols);
    let u = IntMatrix::from_cols(n, ucols);
    debug_assert_eq!(m.mul(&u), h);
    (h, u)
}

/// Lattice of integer solutions of `m · x = 0`.
pub fn kernel_lattice(m: &IntMatrix) -> Lattice {
    preimage_lattice(m, &Lattice::zero(m.rows()), None)
}

/// Lattice `{ x : m · x ∈ target }`.
///
/// With a modulus q the caller asserts `q·Z` lies in `target` and that
/// solutions are only needed mod q (the result then also contains `q·Z`).
pub fn preimage_lattice(m: &IntMatrix, target: &Lattice, modulus: Option<&BigInt>) -> Lattice {
    assert_eq!(m.rows(), target.ambient(), "target ambient mismatch");
    preimage_multi(&[(m, target)], modulus)
}

/// Simultaneous preimage `{ x : op_i · x ∈ target_i for all i }`.
///
/// All operators must share a domain; constraints are stacked vertically.
pub fn preimage_multi(ops: &[(&IntMatrix, &Lattice)], modulus: Option<&BigInt>) -> Lattice {
    assert!(!ops.is_empty());
    let x_len = ops[0].0.cols();
    assert!(ops.iter().all(|(m, _)| m.cols() == x_len));
    assert!(ops.iter().all(|(m, t)| m.rows() == t.ambient()));
    let top: usize = ops.iter().map(|(m, _)| m.rows()).sum();

    let mut cols: Vec<Col> = Vec::with_capacity(x_len + 8);
    for j in 0..x_len {
        let mut c: Col = Vec::new();
        let mut offset = 0;
        for (m, _) in ops {
            for (r, v) in m.col(j) {
                c.push((r + offset, v.clone()));
            }
            offset += m.rows();
        }
        c.push((top + j, BigInt::one()));
        cols.push(c);
    }
    let mut offset = 0;
    for (m, t) in ops {
        for b in t.basis() {
            cols.push(col_shift(b, offset));
        }
        offset += m.rows();
    }

    let ech = column_echelon(top, cols, modulus, false);
    let gens = ech
        .nulls
        .into_iter()
        .map(|c| c.iter().map(|(r, v)| (r - top, v.clone())).collect())
        .collect();
    Lattice::from_generators(x_len, gens, modulus)
}

/// Prepared repeated solving of `m · x = rhs (mod target)`.
///
/// Construction echelonizes `[m | target]` once; each solve is a forward
/// substitution. With a modulus q both sides are taken mod q, under the same
/// caller contract as [`preimage_lattice`].
pub struct Solver {
    top_rows: usize,
    x_len: usize,
    modulus: Option<BigInt>,
    pivots: Vec<(usize, Col)>,
}

impl Solver {
    pub fn new(m: &IntMatrix, target: Option<&Lattice>, modulus: Option<&BigInt>) -> Solver {
        let top = m.rows();
        let x_len = m.cols();
        if let Some(t) = target {
            assert_eq!(t.ambient(), top, "target ambient mismatch");
        }
        let mut cols: Vec<Col> = Vec::with_capacity(x_len);
        for j in 0..x_len {
            let mut c = m.col(j).clone();
            c.push((top + j, BigInt::one()));
            cols.push(c);
        }
        if let Some(t) = target {
            cols.extend(t.basis().iter().cloned());
        }
        let ech = column_echelon(top, cols, modulus, false);
        Solver {
            top_rows: top,
            x_len,
            modulus: modulus.cloned(),
            pivots: ech.pivots,
        }
    }

    /// One solution `x` of `m · x = rhs (mod target)`, or `None` when there is
    /// none. Solutions are canonical for fixed input (no randomness).
    pub fn solve(&self, rhs: &Col) -> Option<Vec<BigInt>> {
        let mut residual = rhs.clone();
        if let Some(q) = &self.modulus {
            col_reduce_mod(&mut residual, q);
        }
        for (prow, col) in &self.pivots {
            let e = col_get(&residual, *prow);
            if e.is_zero() {
                continue;
            }
            let (quo, rem) = e.div_mod_floor(&col[0].1);
            if !rem.is_zero() {
                return None;
            }
            residual = col_axpy(&residual, &-quo, col);
            if let Some(q) = &self.modulus {
                col_reduce_mod(&mut residual, q);
            }
        }
        let split = residual.partition_point(|(r, _)| *r < self.top_rows);
        if split > 0 {
            return None;
        }
        let mut x = vec![BigInt::zero(); self.x_len];
        for (r, v) in &residual {
            x[r - self.top_rows] = -v;
        }
        if let Some(q) = &self.modulus {
            for v in &mut x {
                *v = v.mod_floor(q);
            }
        }
        Some(x)
    }

    /// Dense convenience wrapper around [`Solver::solve`].
    pub fn solve_dense(&self, rhs: &[BigInt]) -> Option<Vec<BigInt>> {
        let col: Col = rhs
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, v.clone()))
            .collect();
        self.solve(&col)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn col(entries: &[(usize, i64)]) -> Col {
        entries
            .iter()
            .filter(|(_, v)| *v != 0)
            .map(|(r, v)| (*r, b(*v)))
            .collect()
    }

    #[test]
    fn canonical_basis_is_path_independent() {
        let g1 = vec![col(&[(0, 2), (1, 4)]), col(&[(0, 0), (1, 6)])];
        let g2 = vec![col(&[(1, 6)]), col(&[(0, 2), (1, 10)]), col(&[(0, 4), (1, 8)])];
        let a = Lattice::from_generators(2, g1, None);
        let c = Lattice::from_generators(2, g2, None);
        assert_eq!(a, c);
    }

    #[test]
    fn express_and_contains() {
        let l = Lattice::from_generators(2, vec![col(&[(0, 2)]), col(&[(1, 3)])], None);
        assert!(l.contains(&col(&[(0, 4), (1, -3)])));
        assert!(!l.contains(&col(&[(0, 1)])));
        let x = l.express(&col(&[(0, 6), (1, 9)])).unwrap();
        assert_eq!(x, vec![b(3), b(3)]);
    }

    #[test]
    fn hnf_transform_is_consistent() {
        let m = IntMatrix::from_i64_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let (h, u) = hnf(&m);
        assert_eq!(m.mul(&u), h);
        // staircase: pivot rows strictly increase over nonzero columns
        let mut last = None;
        for j in 0..h.cols() {
            if let Some(&(r, _)) = h.col(j).first() {
                assert!(last.is_none_or(|p| r > p), "pivot rows must increase");
                last = Some(r);
            }
        }
    }

    #[test]
    fn kernel_of_projection() {
        // x + y + z = 0 in Z^3: kernel has rank 2
        let m = IntMatrix::from_i64_rows(&[vec![1, 1, 1]]);
        let k = kernel_lattice(&m);
        assert_eq!(k.rank(), 2);
        for bcol in k.basis() {
            assert!(m.mul_col(bcol).is_empty());
        }
    }

    #[test]
    fn preimage_against_target() {
        // { x in Z^2 : x1 + x2 in 3Z } has index 3 in Z^2
        let m = IntMatrix::from_i64_rows(&[vec![1, 1]]);
        let t = Lattice::from_generators(1, vec![col(&[(0, 3)])], None);
        let p = preimage_lattice(&m, &t, None);
        assert_eq!(p.rank(), 2);
        assert!(p.contains(&col(&[(0, 1), (1, 2)])));
        assert!(!p.contains(&col(&[(0, 1)])));
        assert!(p.contains(&col(&[(0, 3)])));
    }

    #[test]
    fn solver_solves_modulo_target() {
        // 2x = 4 has x = 2; 2x = 3 unsolvable; mod target 5Z, 2x = 3 solvable (x = 4)
        let m = IntMatrix::from_i64_rows(&[vec![2]]);
        let s = Solver::new(&m, None, None);
        assert_eq!(s.solve(&col(&[(0, 4)])).unwrap(), vec![b(2)]);
        assert!(s.solve(&col(&[(0, 3)])).is_none());
        let t = Lattice::from_generators(1, vec![col(&[(0, 5)])], None);
        let s5 = Solver::new(&m, Some(&t), None);
        let x = s5.solve(&col(&[(0, 3)])).unwrap();
        // 2x - 3 must be divisible by 5
        assert!((b(2) * &x[0] - b(3)).mod_floor(&b(5)).is_zero());
    }

    #[test]
    fn modulus_matches_plain_arithmetic() {
        // span{(2,0),(0,2),(1,1)} + 4Z^2 computed mod 4 equals the plain span
        // of the same generators with 4e_i appended.
        let gens = vec![col(&[(0, 2)]), col(&[(1, 2)]), col(&[(0, 1), (1, 1)])];
        let mut plain_gens = gens.clone();
        plain_gens.push(col(&[(0, 4)]));
        plain_gens.push(col(&[(1, 4)]));
        let fast = Lattice::from_generators(2, gens, Some(&b(4)));
        let plain = Lattice::from_generators(2, plain_gens, None);
        assert_eq!(fast, plain);
    }
}
