//! Subcomplexes and quotient complexes cut out by per-degree lattices.
//!
//! A subcomplex of a cochain complex is specified by one lattice per degree
//! in the ambient generator coordinates, each containing the degree's
//! relations. The subcomplex is presented on a basis of its lattice, the
//! quotient complex on the ambient generators with the lattice as added
//! relations. The symmetric and alternating cochain subcomplexes of a
//! function model are the standard applications:
//!
//! * the skew subspace: simultaneous `(-1)`-eigenspace of all adjacent
//!   transposition operators;
//! * the symmetrization-fixed subspace: simultaneous fixed space of the
//!   `τ_i` operators (an independently coded route to the same subgroup);
//! * the vanishing skew subspace: the skew subspace intersected with the
//!   functions vanishing on tuples that contain the identity.

use std::sync::Arc;

use crate::exactlinalg::{preimage_lattice, preimage_multi, FpAbGroup, IntMatrix, Lattice, Solver};
use crate::{Error, Result};

use super::chain::{ComplexOfFp, Direction};
use super::functions::FunctionModel;

/// A subcomplex presented on lattice bases, with its numerator lattices
/// (whose basis matrices are the degreewise inclusion into the ambient
/// complex).
#[derive(Debug, Clone)]
pub struct SubcomplexParts {
    pub complex: ComplexOfFp,
    pub numerators: Vec<Lattice>,
}

impl SubcomplexParts {
    /// The inclusion matrix at one degree: subcomplex generators to ambient
    /// generators.
    pub fn inclusion_matrix(&self, n: usize) -> IntMatrix {
        self.numerators[n].basis_matrix()
    }

    /// All inclusion matrices in the window.
    pub fn inclusion_matrices(&self) -> Vec<IntMatrix> {
        self.numerators.iter().map(Lattice::basis_matrix).collect()
    }
}

/// A quotient complex: ambient generators with enlarged relations, and the
/// per-degree lattices that were quotiented out.
#[derive(Debug, Clone)]
pub struct QuotientParts {
    pub complex: ComplexOfFp,
    pub killed: Vec<Lattice>,
}

impl QuotientParts {
    /// The projection matrix at one degree (the identity on generators).
    pub fn projection_matrix(&self, n: usize) -> IntMatrix {
        IntMatrix::identity(self.complex.group(n).map_or(0, |g| g.gens()))
    }

    pub fn projection_matrices(&self) -> Vec<IntMatrix> {
        (0..self.complex.groups().len())
            .map(|n| self.projection_matrix(n))
            .collect()
    }
}

/// Per-degree lattices of the skew subspace `{σ : s_i σ = -σ for all i}` of
/// a function model.
pub fn skew_lattices(fm: &FunctionModel) -> Vec<Lattice> {
    eigen_lattices(fm, |fm, n, i| fm.swap_matrix(n, i).map(|m| (m, 1)), false)
}

/// Per-degree lattices of the fixed space `{σ : τ_i σ = σ for all i}` of the
/// symmetrization operators. Mathematically equal to [`skew_lattices`]; built
/// through the independently implemented operators.
pub fn symmetrizer_fixed_lattices(fm: &FunctionModel) -> Vec<Lattice> {
    eigen_lattices(
        fm,
        |fm, n, i| fm.symmetrizer_matrix(n, i + 1).map(|m| (m, -1)),
        false,
    )
}

/// Per-degree lattices of the vanishing skew subspace: skew and zero on
/// every tuple containing the identity element.
pub fn vanishing_skew_lattices(fm: &FunctionModel) -> Vec<Lattice> {
    eigen_lattices(fm, |fm, n, i| fm.swap_matrix(n, i).map(|m| (m, 1)), true)
}

/// Shared worker: cuts out `{v : (op_i + shift·I) v ∈ relations}` per degree,
/// optionally adding the vanishing-projector condition.
fn eigen_lattices(
    fm: &FunctionModel,
    op: impl Fn(&FunctionModel, usize, usize) -> Result<(IntMatrix, i64)>,
    vanishing: bool,
) -> Vec<Lattice> {
    let complex = fm.complex();
    let q = complex.modulus();
    let mut out = Vec::with_capacity(complex.groups().len());
    for n in 0..complex.groups().len() {
        let gens = complex.group(n).unwrap().gens();
        let rel = complex.group(n).unwrap().relations();
        let mut mats = Vec::new();
        for i in 0..n {
            let (m, shift) = op(fm, n, i).expect("operator indices are in range");
            let constraint = m.add(&IntMatrix::identity(gens).scale(&num_bigint::BigInt::from(shift)));
            mats.push(constraint);
        }
        if vanishing && n > 0 {
            mats.push(fm.vanishing_projector(n));
        }
        if mats.is_empty() {
            out.push(Lattice::full(gens));
            continue;
        }
        let ops: Vec<(&IntMatrix, &Lattice)> = mats.iter().map(|m| (m, rel)).collect();
        out.push(preimage_multi(&ops, q));
    }
    out
}

/// Presents the subcomplex cut out by per-degree lattices of a complex.
///
/// Each lattice must contain the degree's relations and be closed under the
/// differential; both are verified.
pub fn subcomplex_from_lattices(
    whole: &ComplexOfFp,
    lattices: &[Lattice],
) -> Result<SubcomplexParts> {
    if lattices.len() != whole.groups().len() {
        return Err(Error::Dim(format!(
            "{} lattices for {} degrees",
            lattices.len(),
            whole.groups().len()
        )));
    }
    let q = whole.modulus();
    let mut groups = Vec::with_capacity(lattices.len());
    for (n, lat) in lattices.iter().enumerate() {
        let ambient = whole.group(n).unwrap();
        if lat.ambient() != ambient.gens() {
            return Err(Error::Dim(format!(
                "degree {n} lattice lives in rank {} but the complex has {} generators",
                lat.ambient(),
                ambient.gens()
            )));
        }
        if !lat.contains_lattice(ambient.relations()) {
            return Err(Error::Invalid(format!(
                "degree {n} lattice does not contain the degree's relations"
            )));
        }
        let rels = if lat.is_full() {
            ambient.relations().clone()
        } else {
            preimage_lattice(&lat.basis_matrix(), ambient.relations(), q)
        };
        groups.push(Arc::new(FpAbGroup::from_relation_lattice(
            rels,
            ambient.annihilator(),
        )));
    }
    let mut maps = Vec::with_capacity(lattices.len().saturating_sub(1));
    for k in 0..lattices.len() - 1 {
        let (src, dst) = match whole.direction() {
            Direction::Chain => (k + 1, k),
            Direction::Cochain => (k, k + 1),
        };
        let ambient_map = whole.map_between(k).unwrap();
        let target_rel = whole.group(dst).unwrap().relations();
        let solver = Solver::new(&lattices[dst].basis_matrix(), Some(target_rel), q);
        let mut cols = Vec::with_capacity(lattices[src].rank());
        for b in lattices[src].basis() {
            let image = ambient_map.mul_col(b);
            let coords = solver.solve(&image).ok_or_else(|| {
                Error::Invalid(format!(
                    "lattices are not closed under the differential between degrees {k} and {}",
                    k + 1
                ))
            })?;
            cols.push(crate::exactlinalg::col_from_dense(&coords));
        }
        maps.push(IntMatrix::from_cols(lattices[dst].rank(), cols));
    }
    let complex = ComplexOfFp::new(
        whole.direction(),
        groups,
        maps,
        whole.vanishes_above_top(),
    )?;
    Ok(SubcomplexParts {
        complex,
        numerators: lattices.to_vec(),
    })
}

/// Presents the quotient of a complex by per-degree lattices: the same
/// generators with the lattices as added relations and the same structure
/// maps (whose well-definedness the complex constructor re-verifies).
pub fn quotient_by_lattices(whole: &ComplexOfFp, lattices: &[Lattice]) -> Result<QuotientParts> {
    if lattices.len() != whole.groups().len() {
        return Err(Error::Dim(format!(
            "{} lattices for {} degrees",
            lattices.len(),
            whole.groups().len()
        )));
    }
    let mut groups = Vec::with_capacity(lattices.len());
    for (n, lat) in lattices.iter().enumerate() {
        let ambient = whole.group(n).unwrap();
        if lat.ambient() != ambient.gens() {
            return Err(Error::Dim(format!(
                "degree {n} lattice lives in rank {} but the complex has {} generators",
                lat.ambient(),
                ambient.gens()
            )));
        }
        if !lat.contains_lattice(ambient.relations()) {
            return Err(Error::Invalid(format!(
                "degree {n} lattice does not contain the degree's relations"
            )));
        }
        groups.push(Arc::new(FpAbGroup::from_relation_lattice(
            lat.clone(),
            ambient.annihilator(),
        )));
    }
    let maps = (0..lattices.len() - 1)
        .map(|k| whole.map_between(k).unwrap().clone())
        .collect();
    let complex = ComplexOfFp::new(
        whole.direction(),
        groups,
        maps,
        whole.vanishes_above_top(),
    )?;
    Ok(QuotientParts {
        complex,
        killed: lattices.to_vec(),
    })
}

/// Presents the quotient of a subcomplex by a smaller subcomplex, both given
/// by lattices in the same ambient complex: the inner lattices are expressed
/// in the outer presentation's coordinates and quotiented out there.
pub fn quotient_of_sub_by_sub(
    outer: &SubcomplexParts,
    inner: &[Lattice],
) -> Result<QuotientParts> {
    if inner.len() != outer.numerators.len() {
        return Err(Error::Dim(format!(
            "{} inner lattices for {} degrees",
            inner.len(),
            outer.numerators.len()
        )));
    }
    let q = outer.complex.modulus();
    let mut lattices = Vec::with_capacity(inner.len());
    for (n, lat) in inner.iter().enumerate() {
        let expressed = outer
            .numerators[n]
            .express_matrix(&lat.basis_matrix())
            .ok_or_else(|| Error::Invalid(format!(
                "degree {n}: inner subspace is not contained in the outer one"
            )))?;
        let mut gens: Vec<_> = expressed.columns().to_vec();
        gens.extend_from_slice(outer.complex.group(n).unwrap().relations().basis());
        lattices.push(Lattice::from_generators(
            outer.numerators[n].rank(),
            gens,
            q,
        ));
    }
    quotient_by_lattices(&outer.complex, &lattices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffmod::{GModule, Side};
    use crate::groups::FiniteGroup;

    fn fm(order: usize, m: u64, top: usize) -> FunctionModel {
        let g = Arc::new(FiniteGroup::cyclic(order));
        let module = GModule::trivial_zmod(g, m, Side::Left);
        FunctionModel::new(&module, top, 100_000).unwrap()
    }

    #[test]
    fn skew_and_symmetrizer_fixed_spaces_agree() {
        let fm = fm(3, 4, 3);
        let skew = skew_lattices(&fm);
        let fixed = symmetrizer_fixed_lattices(&fm);
        for n in 0..skew.len() {
            assert!(
                skew[n].contains_lattice(&fixed[n]) && fixed[n].contains_lattice(&skew[n]),
                "degree {n}"
            );
        }
    }

    #[test]
    fn degree_zero_subspaces_are_everything() {
        let fm = fm(2, 2, 2);
        assert!(skew_lattices(&fm)[0].is_full());
        assert!(vanishing_skew_lattices(&fm)[0].is_full());
    }

    #[test]
    fn skew_subcomplex_computes_symmetric_cohomology_of_z2_mod2() {
        // Symmetric cohomology of Z2 with Z/2 coefficients starts Z2, Z2, 0.
        let fm = fm(2, 2, 3);
        let parts = subcomplex_from_lattices(fm.complex(), &skew_lattices(&fm)).unwrap();
        let h: Vec<Vec<String>> = (0..=2)
            .map(|n| {
                parts
                    .complex
                    .homology_at(n)
                    .unwrap()
                    .group
                    .invariant_factor_strings()
            })
            .collect();
        assert_eq!(h[0], vec!["2"]);
        assert_eq!(h[1], vec!["2"]);
        assert!(h[2].is_empty());
    }

    #[test]
    fn quotient_by_full_lattices_is_zero() {
        let fm = fm(2, 2, 2);
        let full: Vec<Lattice> = fm
            .complex()
            .groups()
            .iter()
            .map(|g| Lattice::full(g.gens()))
            .collect();
        let q = quotient_by_lattices(fm.complex(), &full).unwrap();
        for n in 0..=2 {
            assert!(q.complex.group(n).unwrap().is_trivial());
        }
    }

    #[test]
    fn vanishing_skew_is_inside_skew() {
        let fm = fm(3, 9, 3);
        let skew = skew_lattices(&fm);
        let vskew = vanishing_skew_lattices(&fm);
        for n in 0..skew.len() {
            assert!(skew[n].contains_lattice(&vskew[n]), "degree {n}");
        }
        // And the inner quotient builds.
        let outer = subcomplex_from_lattices(fm.complex(), &skew).unwrap();
        let q = quotient_of_sub_by_sub(&outer, &vskew).unwrap();
        assert_eq!(q.complex.groups().len(), 4);
    }
}
