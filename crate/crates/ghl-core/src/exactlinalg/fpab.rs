//! Finitely presented abelian groups and homomorphisms between them.
//!
//! A group is `Z^gens / relations` with the relation lattice kept in
//! canonical Hermite form. Invariant factors are computed lazily and cached;
//! all comparisons and well-definedness checks reduce to lattice membership.

use super::lattice::Lattice;
use super::matrix::{col_from_dense, col_to_dense, Col, IntMatrix};
use super::snf::snf_diagonal;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::sync::{Arc, OnceLock};

/// A finitely presented abelian group.
#[derive(Debug, Clone)]
pub struct FpAbGroup {
    gens: usize,
    relations: Lattice,
    /// Some(q) when `q` is known to annihilate every element (equivalently
    /// `q·Z^gens` lies in the relation lattice). Not necessarily minimal.
    /// Lets invariant factor computations run with reduced arithmetic.
    annihilator: Option<BigInt>,
    factors: OnceLock<Vec<BigInt>>,
}

impl PartialEq for FpAbGroup {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens && self.relations == other.relations
    }
}
impl Eq for FpAbGroup {}

impl FpAbGroup {
    /// Presents `Z^gens / span(relation_gens)`. With an annihilator q the
    /// relation span must already contain `q·Z^gens`.
    pub fn new(gens: usize, relation_gens: Vec<Col>, annihilator: Option<&BigInt>) -> FpAbGroup {
        let relations = Lattice::from_generators(gens, relation_gens, annihilator);
        FpAbGroup {
            gens,
            relations,
            annihilator: annihilator.cloned(),
            factors: OnceLock::new(),
        }
    }

    /// Wraps an already canonical relation lattice.
    pub fn from_relation_lattice(lattice: Lattice, annihilator: Option<&BigInt>) -> FpAbGroup {
        FpAbGroup {
            gens: lattice.ambient(),
            relations: lattice,
            annihilator: annihilator.cloned(),
            factors: OnceLock::new(),
        }
    }

    /// Free abelian group of the given rank.
    pub fn free(rank: usize) -> FpAbGroup {
        FpAbGroup::new(rank, Vec::new(), None)
    }

    /// The zero group.
    pub fn zero() -> FpAbGroup {
        FpAbGroup::free(0)
    }

    /// Direct sum of cyclic groups `Z/d` (with `d = 0` meaning `Z`), one
    /// generator per listed factor. Test and oracle helper.
    pub fn from_factors(factors: &[u64]) -> FpAbGroup {
        let gens = factors.len();
        let rels = factors
            .iter()
            .enumerate()
            .filter(|(_, d)| **d != 0)
            .map(|(i, d)| vec![(i, BigInt::from(*d))])
            .collect();
        FpAbGroup::new(gens, rels, None)
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn relations(&self) -> &Lattice {
        &self.relations
    }

    pub fn annihilator(&self) -> Option<&BigInt> {
        self.annihilator.as_ref()
    }

    /// Invariant factors: the nontrivial entries `d_1 | d_2 | ...` of the
    /// Smith form of the relation matrix, with one `0` appended per free
    /// rank. The empty list is the trivial group.
    pub fn invariant_factors(&self) -> &[BigInt] {
        self.factors.get_or_init(|| {
            let diag = snf_diagonal(
                self.gens,
                self.relations.basis(),
                self.annihilator.as_ref(),
            );
            let rank = diag.iter().filter(|d| !d.is_zero()).count();
            let mut out: Vec<BigInt> = diag
                .into_iter()
                .filter(|d| !d.is_one() && !d.is_zero())
                .collect();
            out.extend(std::iter::repeat_with(BigInt::zero).take(self.gens - rank));
            out
        })
    }

    /// Invariant factors as decimal strings (the external format).
    pub fn invariant_factor_strings(&self) -> Vec<String> {
        self.invariant_factors()
            .iter()
            .map(|d| d.to_string())
            .collect()
    }

    /// Least common annihilator of all elements; `None` for infinite groups.
    pub fn exponent(&self) -> Option<BigInt> {
        let f = self.invariant_factors();
        if f.iter().any(|d| d.is_zero()) {
            return None;
        }
        Some(f.last().cloned().unwrap_or_else(BigInt::one))
    }

    /// Number of elements; `None` for infinite groups.
    pub fn order(&self) -> Option<BigInt> {
        let f = self.invariant_factors();
        if f.iter().any(|d| d.is_zero()) {
            return None;
        }
        Some(f.iter().product())
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors().is_empty()
    }

    pub fn free_rank(&self) -> usize {
        self.invariant_factors()
            .iter()
            .filter(|d| d.is_zero())
            .count()
    }

    /// Whether `v` represents zero in the group.
    pub fn is_zero_element(&self, v: &Col) -> bool {
        self.relations.contains(v)
    }
}

/// Presents `num / den` for lattices `den ⊆ num` of a common ambient space.
///
/// Returns the quotient (one generator per numerator basis vector) and the
/// section matrix sending presentation generators to the numerator basis.
/// Fails with a containment witness when `den` escapes `num`. The annihilator
/// contract is `q·num ⊆ den`.
pub fn subquotient(
    num: &Lattice,
    den: &Lattice,
    annihilator: Option<&BigInt>,
) -> Result<(FpAbGroup, IntMatrix)> {
    assert_eq!(num.ambient(), den.ambient(), "ambient mismatch");
    let mut rel_cols = Vec::with_capacity(den.rank());
    for b in den.basis() {
        let x = num.express(b).ok_or_else(|| Error::Containment {
            witness: col_to_dense(b, den.ambient()),
        })?;
        rel_cols.push(col_from_dense(&x));
    }
    let group = FpAbGroup::new(num.rank(), rel_cols, annihilator);
    Ok((group, num.basis_matrix()))
}

/// A homomorphism between finitely presented abelian groups, stored as a
/// matrix on generators that has been checked to respect relations.
#[derive(Debug, Clone)]
pub struct FpHom {
    source: Arc<FpAbGroup>,
    target: Arc<FpAbGroup>,
    matrix: IntMatrix,
}

impl FpHom {
    /// Wraps `matrix` (target gens x source gens) after verifying it maps the
    /// source relations into the target relations.
    pub fn new(
        source: Arc<FpAbGroup>,
        target: Arc<FpAbGroup>,
        matrix: IntMatrix,
    ) -> Result<FpHom> {
        if matrix.rows() != target.gens() || matrix.cols() != source.gens() {
            return Err(Error::Dim(format!(
                "hom matrix is {}x{}, want {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.gens(),
                source.gens()
            )));
        }
        for b in source.relations().basis() {
            let img = matrix.mul_col(b);
            if !target.relations().contains(&img) {
                return Err(Error::NotWellDefined {
                    witness: col_to_dense(&img, target.gens()),
                });
            }
        }
        Ok(FpHom {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(group: Arc<FpAbGroup>) -> FpHom {
        let matrix = IntMatrix::identity(group.gens());
        FpHom {
            source: group.clone(),
            target: group,
            matrix,
        }
    }

    pub fn zero(source: Arc<FpAbGroup>, target: Arc<FpAbGroup>) -> FpHom {
        let matrix = IntMatrix::zero(target.gens(), source.gens());
        FpHom {
            source,
            target,
            matrix,
        }
    }

    /// Multiplication by an integer as an endomorphism.
    pub fn scaling(group: Arc<FpAbGroup>, c: &BigInt) -> FpHom {
        let matrix = IntMatrix::identity(group.gens()).scale(c);
        FpHom {
            source: group.clone(),
            target: group,
            matrix,
        }
    }

    pub fn source(&self) -> &Arc<FpAbGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FpAbGroup> {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &FpHom) -> Result<FpHom> {
        if **inner.target() != *self.source {
            return Err(Error::Dim(
                "composition target/source mismatch".to_string(),
            ));
        }
        Ok(FpHom {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&inner.matrix),
        })
    }

    /// Equality as maps out of the source presentation: generator images may
    /// differ only by target relations.
    pub fn eq_mod(&self, other: &FpHom) -> bool {
        if self.matrix.cols() != other.matrix.cols()
            || self.matrix.rows() != other.matrix.rows()
        {
            return false;
        }
        let diff = self.matrix.sub(&other.matrix);
        (0..diff.cols()).all(|j| self.target.relations().contains(diff.col(j)))
    }

    pub fn is_zero_mod(&self) -> bool {
        (0..self.matrix.cols()).all(|j| self.target.relations().contains(self.matrix.col(j)))
    }

    /// Image as a lattice in the target's generator coordinates (includes the
    /// target relations).
    pub fn image_lattice(&self) -> Lattice {
        let gens = self
            .matrix
            .columns()
            .iter()
            .chain(self.target.relations().basis())
            .cloned()
            .collect();
        Lattice::from_generators(
            self.target.gens(),
            gens,
            self.target.annihilator.as_ref(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn factors_of_standard_presentations() {
        let g = FpAbGroup::from_factors(&[2, 4, 0]);
        assert_eq!(g.invariant_factors(), &[b(2), b(4), b(0)]);
        assert_eq!(g.exponent(), None);
        assert_eq!(g.free_rank(), 1);
        let h = FpAbGroup::from_factors(&[2, 3]);
        assert_eq!(h.invariant_factors(), &[b(6)]);
        assert_eq!(h.order(), Some(b(6)));
    }

    #[test]
    fn trivial_when_relations_fill() {
        let g = FpAbGroup::new(2, vec![vec![(0, b(1))], vec![(1, b(1))]], None);
        assert!(g.is_trivial());
        assert_eq!(g.exponent(), Some(b(1)));
    }

    #[test]
    fn subquotient_of_index_two() {
        // num = Z^2, den = span{(2,0),(0,1)}: quotient is Z/2
        let num = Lattice::full(2);
        let den = Lattice::from_generators(2, vec![vec![(0, b(2))], vec![(1, b(1))]], None);
        let (q, section) = subquotient(&num, &den, None).unwrap();
        assert_eq!(q.invariant_factors(), &[b(2)]);
        assert_eq!(section, IntMatrix::identity(2));
    }

    #[test]
    fn subquotient_rejects_escaping_denominator() {
        let num = Lattice::from_generators(2, vec![vec![(0, b(2))]], None);
        let den = Lattice::from_generators(2, vec![vec![(1, b(1))]], None);
        assert!(matches!(
            subquotient(&num, &den, None),
            Err(Error::Containment { .. })
        ));
    }

    #[test]
    fn hom_rejects_relation_violation() {
        // Z/2 -> Z cannot send the generator to 1
        let src = Arc::new(FpAbGroup::from_factors(&[2]));
        let tgt = Arc::new(FpAbGroup::free(1));
        let m = IntMatrix::from_i64_rows(&[vec![1]]);
        assert!(matches!(
            FpHom::new(src, tgt, m),
            Err(Error::NotWellDefined { .. })
        ));
    }

    #[test]
    fn hom_equality_mod_relations() {
        // Z -> Z/4: sending 1 to 1 equals sending 1 to 5
        let src = Arc::new(FpAbGroup::free(1));
        let tgt = Arc::new(FpAbGroup::from_factors(&[4]));
        let f = FpHom::new(src.clone(), tgt.clone(), IntMatrix::from_i64_rows(&[vec![1]])).unwrap();
        let g = FpHom::new(src, tgt, IntMatrix::from_i64_rows(&[vec![5]])).unwrap();
        assert!(f.eq_mod(&g));
        assert!(!f.is_zero_mod());
    }
}
