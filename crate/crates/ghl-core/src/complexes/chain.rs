//! Chain and cochain complexes of finitely presented abelian groups.
//!
//! A [`ComplexOfFp`] stores one presented group per degree `0..=top` and one
//! integer matrix between each consecutive pair. Construction validates that
//! every map sends relations into relations and that consecutive maps
//! compose to zero modulo relations; homology is then a subquotient at each
//! degree. A [`ChainMapOfFp`] is a degreewise map between two complexes,
//! validated to commute with the differentials modulo relations.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::exactlinalg::{
    col_to_dense, preimage_lattice, subquotient, FpAbGroup, FpHom, IntMatrix, Lattice,
};
use crate::{Error, Result};

/// Which way the differentials run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Boundaries lower the degree: the map at index `k` goes `k+1 -> k`.
    Chain,
    /// Coboundaries raise the degree: the map at index `k` goes `k -> k+1`.
    Cochain,
}

/// A bounded window of a complex of finitely presented abelian groups.
#[derive(Debug, Clone)]
pub struct ComplexOfFp {
    direction: Direction,
    groups: Vec<Arc<FpAbGroup>>,
    maps: Vec<IntMatrix>,
    vanishes_above_top: bool,
    modulus: Option<BigInt>,
}

/// Homology at one degree: the presented group together with the cycle
/// lattice it was presented on (one presentation generator per cycle basis
/// vector), which is what induced maps need.
#[derive(Debug, Clone)]
pub struct HomologySpace {
    pub group: FpAbGroup,
    pub cycles: Lattice,
}

impl ComplexOfFp {
    /// Builds and validates a complex.
    ///
    /// `maps[k]` connects degrees `k` and `k+1` in the given direction, so
    /// `maps.len() + 1 == groups.len()`. Set `vanishes_above_top` when every
    /// degree beyond the window is the zero group (as opposed to merely not
    /// computed), which makes homology at and beyond the top degree
    /// meaningful.
    pub fn new(
        direction: Direction,
        groups: Vec<Arc<FpAbGroup>>,
        maps: Vec<IntMatrix>,
        vanishes_above_top: bool,
    ) -> Result<ComplexOfFp> {
        if groups.is_empty() {
            return Err(Error::Invalid("a complex needs at least one degree".into()));
        }
        if maps.len() + 1 != groups.len() {
            return Err(Error::Dim(format!(
                "{} degrees need {} connecting maps, got {}",
                groups.len(),
                groups.len() - 1,
                maps.len()
            )));
        }
        for (k, m) in maps.iter().enumerate() {
            let (src, dst) = match direction {
                Direction::Chain => (k + 1, k),
                Direction::Cochain => (k, k + 1),
            };
            if m.rows() != groups[dst].gens() || m.cols() != groups[src].gens() {
                return Err(Error::Dim(format!(
                    "map between degrees {k} and {} is {}x{}, expected {}x{}",
                    k + 1,
                    m.rows(),
                    m.cols(),
                    groups[dst].gens(),
                    groups[src].gens()
                )));
            }
            for rel in groups[src].relations().basis() {
                let image = m.mul_col(rel);
                if !groups[dst].relations().contains(&image) {
                    return Err(Error::NotWellDefined {
                        witness: col_to_dense(&image, m.rows()),
                    });
                }
            }
        }
        for k in 0..maps.len().saturating_sub(1) {
            let (composite, target, reported) = match direction {
                Direction::Chain => (maps[k].mul(&maps[k + 1]), k, k + 2),
                Direction::Cochain => (maps[k + 1].mul(&maps[k]), k + 2, k),
            };
            let rel = groups[target].relations();
            if composite.columns().iter().any(|c| !rel.contains(c)) {
                return Err(Error::BoundarySquare { degree: reported });
            }
        }
        let modulus = window_modulus(&groups);
        Ok(ComplexOfFp {
            direction,
            groups,
            maps,
            vanishes_above_top,
            modulus,
        })
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    /// Largest degree carried by the window.
    pub fn top_degree(&self) -> usize {
        self.groups.len() - 1
    }

    /// Whether all degrees beyond the window are zero groups.
    pub fn vanishes_above_top(&self) -> bool {
        self.vanishes_above_top
    }

    /// The group at a degree inside the window.
    pub fn group(&self, n: usize) -> Option<&Arc<FpAbGroup>> {
        self.groups.get(n)
    }

    pub fn groups(&self) -> &[Arc<FpAbGroup>] {
        &self.groups
    }

    /// The matrix connecting degrees `k` and `k+1`.
    pub fn map_between(&self, k: usize) -> Option<&IntMatrix> {
        self.maps.get(k)
    }

    /// The matrix leaving degree `n`, when the window carries it.
    pub fn map_out_of(&self, n: usize) -> Option<&IntMatrix> {
        match self.direction {
            Direction::Chain => n.checked_sub(1).and_then(|k| self.maps.get(k)),
            Direction::Cochain => self.maps.get(n),
        }
    }

    /// The matrix arriving at degree `n`, when the window carries it.
    pub fn map_into(&self, n: usize) -> Option<&IntMatrix> {
        match self.direction {
            Direction::Chain => self.maps.get(n),
            Direction::Cochain => n.checked_sub(1).and_then(|k| self.maps.get(k)),
        }
    }

    /// Common annihilator of every degree in the window, when finite. All
    /// lattice arithmetic in homology runs modulo this bound.
    pub fn modulus(&self) -> Option<&BigInt> {
        self.modulus.as_ref()
    }

    /// Whether degree `n` has both neighbours available, so that homology
    /// there is determined by the window. In either direction the top degree
    /// needs its (uncomputed) neighbour above, unless that neighbour is known
    /// to vanish.
    pub fn supports_homology_at(&self, n: usize) -> bool {
        n < self.top_degree() || self.vanishes_above_top
    }

    /// Homology (or cohomology) at degree `n`.
    ///
    /// Cycles are the preimage of the next group's relations under the
    /// outgoing map; boundaries are the incoming image plus relations. Fails
    /// when the window does not determine the answer.
    pub fn homology_at(&self, n: usize) -> Result<HomologySpace> {
        let top = self.top_degree();
        if n > top {
            if self.vanishes_above_top {
                return Ok(HomologySpace {
                    group: FpAbGroup::zero(),
                    cycles: Lattice::zero(0),
                });
            }
            return Err(Error::Invalid(format!(
                "homology at degree {n} lies beyond the computed window 0..={top}"
            )));
        }
        if !self.supports_homology_at(n) {
            return Err(Error::Invalid(format!(
                "homology at degree {n} needs degree {} outside the computed window",
                n + 1
            )));
        }
        let gens = self.groups[n].gens();
        let q = self.modulus.as_ref();
        let cycles = match self.map_out_of(n) {
            None => Lattice::full(gens),
            Some(m) => {
                let neighbour = match self.direction {
                    Direction::Chain => n - 1,
                    Direction::Cochain => n + 1,
                };
                preimage_lattice(m, self.groups[neighbour].relations(), q)
            }
        };
        let mut boundary_gens: Vec<_> = match self.map_into(n) {
            None => Vec::new(),
            Some(m) => m.columns().to_vec(),
        };
        boundary_gens.extend_from_slice(self.groups[n].relations().basis());
        let boundaries = Lattice::from_generators(gens, boundary_gens, q);
        let (group, _) = subquotient(&cycles, &boundaries, q)?;
        Ok(HomologySpace { group, cycles })
    }
}

/// Least common annihilator across the window, `None` if any degree is
/// potentially infinite.
fn window_modulus(groups: &[Arc<FpAbGroup>]) -> Option<BigInt> {
    let mut acc = BigInt::from(1);
    for g in groups {
        acc = acc.lcm(g.annihilator()?);
    }
    Some(acc)
}

/// A degreewise map between two complexes of the same direction, validated
/// to respect relations and commute with the differentials.
#[derive(Debug, Clone)]
pub struct ChainMapOfFp {
    source: Arc<ComplexOfFp>,
    target: Arc<ComplexOfFp>,
    mats: Vec<IntMatrix>,
}

impl ChainMapOfFp {
    pub fn new(
        source: Arc<ComplexOfFp>,
        target: Arc<ComplexOfFp>,
        mats: Vec<IntMatrix>,
    ) -> Result<ChainMapOfFp> {
        if source.direction() != target.direction() {
            return Err(Error::Invalid(
                "chain map endpoints must share a direction".into(),
            ));
        }
        if mats.len() > source.groups().len() || mats.len() > target.groups().len() {
            return Err(Error::Dim(format!(
                "chain map carries {} degrees but the complexes carry {} and {}",
                mats.len(),
                source.groups().len(),
                target.groups().len()
            )));
        }
        for (n, m) in mats.iter().enumerate() {
            let (src_g, dst_g) = (&source.groups()[n], &target.groups()[n]);
            if m.rows() != dst_g.gens() || m.cols() != src_g.gens() {
                return Err(Error::Dim(format!(
                    "degree {n} map is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    dst_g.gens(),
                    src_g.gens()
                )));
            }
            for rel in src_g.relations().basis() {
                let image = m.mul_col(rel);
                if !dst_g.relations().contains(&image) {
                    return Err(Error::NotWellDefined {
                        witness: col_to_dense(&image, m.rows()),
                    });
                }
            }
        }
        for k in 0..mats.len().saturating_sub(1) {
            // In both directions the square couples mats[k] and mats[k+1]
            // through the structure maps at index k.
            let (lhs, rhs, rel_degree) = match source.direction() {
                Direction::Chain => (
                    mats[k].mul(source.map_between(k).expect("window check")),
                    target.map_between(k).expect("window check").mul(&mats[k + 1]),
                    k,
                ),
                Direction::Cochain => (
                    mats[k + 1].mul(source.map_between(k).expect("window check")),
                    target.map_between(k).expect("window check").mul(&mats[k]),
                    k + 1,
                ),
            };
            let diff = lhs.sub(&rhs);
            let rel = target.groups()[rel_degree].relations();
            if diff.columns().iter().any(|c| !rel.contains(c)) {
                return Err(Error::NotChainMap { degree: k });
            }
        }
        Ok(ChainMapOfFp {
            source,
            target,
            mats,
        })
    }

    pub fn source(&self) -> &Arc<ComplexOfFp> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ComplexOfFp> {
        &self.target
    }

    pub fn matrix(&self, n: usize) -> Option<&IntMatrix> {
        self.mats.get(n)
    }

    pub fn degrees(&self) -> usize {
        self.mats.len()
    }

    /// The induced map on homology at degree `n`.
    pub fn induced_on_homology(&self, n: usize) -> Result<FpHom> {
        let hs = self.source.homology_at(n)?;
        let ht = self.target.homology_at(n)?;
        let m = self.mats.get(n).ok_or_else(|| {
            Error::Invalid(format!("chain map does not carry degree {n}"))
        })?;
        let mut cols = Vec::with_capacity(hs.cycles.rank());
        for cycle in hs.cycles.basis() {
            let image = m.mul_col(cycle);
            let coords = ht.cycles.express(&image).ok_or_else(|| {
                Error::Unsolvable(format!(
                    "image of a degree-{n} cycle is not a cycle in the target"
                ))
            })?;
            cols.push(crate::exactlinalg::col_from_dense(&coords));
        }
        FpHom::new(
            Arc::new(hs.group),
            Arc::new(ht.group),
            IntMatrix::from_cols(ht.cycles.rank(), cols),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::col_from_dense;

    fn arc(g: FpAbGroup) -> Arc<FpAbGroup> {
        Arc::new(g)
    }

    /// 0 <- Z <-x2- Z: homology Z/2 at degree 0, 0 at degree 1.
    #[test]
    fn doubling_chain_complex() {
        let groups = vec![arc(FpAbGroup::free(1)), arc(FpAbGroup::free(1))];
        let maps = vec![IntMatrix::from_i64_rows(&[vec![2]])];
        let c = ComplexOfFp::new(Direction::Chain, groups, maps, true).unwrap();
        assert_eq!(
            c.homology_at(0).unwrap().group.invariant_factor_strings(),
            vec!["2"]
        );
        assert!(c.homology_at(1).unwrap().group.is_trivial());
        assert!(c.homology_at(5).unwrap().group.is_trivial());
    }

    #[test]
    fn window_edges_are_guarded() {
        let groups = vec![arc(FpAbGroup::free(1)), arc(FpAbGroup::free(1))];
        let maps = vec![IntMatrix::from_i64_rows(&[vec![2]])];
        let c = ComplexOfFp::new(Direction::Chain, groups, maps, false).unwrap();
        assert!(c.homology_at(0).is_ok());
        assert!(c.homology_at(1).is_err(), "needs degree 2");
        assert!(c.homology_at(2).is_err(), "beyond the window");
    }

    #[test]
    fn nonzero_square_is_rejected() {
        let groups = vec![
            arc(FpAbGroup::free(1)),
            arc(FpAbGroup::free(1)),
            arc(FpAbGroup::free(1)),
        ];
        let maps = vec![
            IntMatrix::from_i64_rows(&[vec![1]]),
            IntMatrix::from_i64_rows(&[vec![1]]),
        ];
        let err = ComplexOfFp::new(Direction::Chain, groups, maps, false).unwrap_err();
        assert!(matches!(err, Error::BoundarySquare { degree: 2 }));
    }

    #[test]
    fn square_zero_modulo_relations_is_accepted() {
        // Z/4 at degree 0 absorbs the composite 2*2 = 4.
        let groups = vec![
            arc(FpAbGroup::from_factors(&[4])),
            arc(FpAbGroup::free(1)),
            arc(FpAbGroup::free(1)),
        ];
        let maps = vec![
            IntMatrix::from_i64_rows(&[vec![2]]),
            IntMatrix::from_i64_rows(&[vec![2]]),
        ];
        ComplexOfFp::new(Direction::Chain, groups, maps, false).unwrap();
    }

    /// Z -x2-> Z -x0-> Z as a cochain complex: H^0 = 0, H^1 = Z/2, H^2 = Z.
    #[test]
    fn cochain_homology_positions() {
        let groups = vec![
            arc(FpAbGroup::free(1)),
            arc(FpAbGroup::free(1)),
            arc(FpAbGroup::free(1)),
        ];
        let maps = vec![
            IntMatrix::from_i64_rows(&[vec![2]]),
            IntMatrix::zero(1, 1),
        ];
        let c = ComplexOfFp::new(Direction::Cochain, groups, maps, true).unwrap();
        assert!(c.homology_at(0).unwrap().group.is_trivial());
        assert_eq!(
            c.homology_at(1).unwrap().group.invariant_factor_strings(),
            vec!["2"]
        );
        assert_eq!(
            c.homology_at(2).unwrap().group.invariant_factor_strings(),
            vec!["0"]
        );
    }

    #[test]
    fn chain_map_validation_catches_noncommuting_squares() {
        let groups = vec![arc(FpAbGroup::free(1)), arc(FpAbGroup::free(1))];
        let maps = vec![IntMatrix::from_i64_rows(&[vec![2]])];
        let c = Arc::new(ComplexOfFp::new(Direction::Chain, groups, maps, true).unwrap());
        let ok = ChainMapOfFp::new(
            c.clone(),
            c.clone(),
            vec![
                IntMatrix::from_i64_rows(&[vec![3]]),
                IntMatrix::from_i64_rows(&[vec![3]]),
            ],
        );
        assert!(ok.is_ok());
        let bad = ChainMapOfFp::new(
            c.clone(),
            c.clone(),
            vec![
                IntMatrix::from_i64_rows(&[vec![3]]),
                IntMatrix::from_i64_rows(&[vec![1]]),
            ],
        );
        assert!(matches!(bad.unwrap_err(), Error::NotChainMap { degree: 0 }));
    }

    #[test]
    fn induced_map_on_homology_scales() {
        // Multiplication by 3 on the doubling complex induces x3 on Z/2 = id.
        let groups = vec![arc(FpAbGroup::free(1)), arc(FpAbGroup::free(1))];
        let maps = vec![IntMatrix::from_i64_rows(&[vec![2]])];
        let c = Arc::new(ComplexOfFp::new(Direction::Chain, groups, maps, true).unwrap());
        let f = ChainMapOfFp::new(
            c.clone(),
            c.clone(),
            vec![
                IntMatrix::from_i64_rows(&[vec![3]]),
                IntMatrix::from_i64_rows(&[vec![3]]),
            ],
        )
        .unwrap();
        let induced = f.induced_on_homology(0).unwrap();
        let one = col_from_dense(&[BigInt::from(1)]);
        let image = induced.matrix().mul_col(&one);
        // 3 = 1 in Z/2.
        let diff = crate::exactlinalg::col_axpy(&image, &BigInt::from(-1), &one);
        assert!(induced.target().relations().contains(&diff));
    }

    #[test]
    fn modulus_is_the_window_lcm() {
        let groups = vec![
            arc(FpAbGroup::new(1, vec![col_from_dense(&[BigInt::from(4)])], Some(&BigInt::from(4)))),
            arc(FpAbGroup::new(1, vec![col_from_dense(&[BigInt::from(6)])], Some(&BigInt::from(6)))),
        ];
        let maps = vec![IntMatrix::zero(1, 1)];
        let c = ComplexOfFp::new(Direction::Chain, groups, maps, true).unwrap();
        assert_eq!(c.modulus(), Some(&BigInt::from(12)));
    }
}
