//! Orbit-reduced tensor and hom models over a signed basis.
//!
//! For a right module `A` and a signed basis `X_*`, degree `n` of the tensor
//! model presents `A ⊗_{Z[G]} Z·X_n` with one block of `A`-generators per tag
//! orbit: the block inherits the relations of `A` plus one relation column
//! `(M_g - s·I)·a` per stabilizing pair `g·rep = s·rep`. For a left module,
//! degree `n` of the hom model presents `Hom_{Z[G]}(Z·X_n, A)`: the block of
//! an orbit is the subgroup of `A` cut out by the same stabilizer
//! constraints, presented on a lattice basis of the constrained subspace.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::coeffmod::{GModule, Side};
use crate::exactlinalg::{
    col_from_dense, col_shift, preimage_lattice, preimage_multi, FpAbGroup, IntMatrix, Lattice,
    Solver,
};
use crate::{Error, Result};

use super::basis::{orbit_decomposition, Orbits, SignedBasis};
use super::chain::{ComplexOfFp, Direction};

/// The tensor model `A ⊗_{Z[G]} Z·X_*` as a chain complex, with the orbit
/// tables used to address its generator blocks.
#[derive(Debug, Clone)]
pub struct TensorModel {
    pub complex: ComplexOfFp,
    pub orbits: Vec<Orbits>,
}

/// One degree of a hom model: the orbit table, the constrained sub-lattice
/// of `A` for each orbit block, and the generator offset of each block.
#[derive(Debug, Clone)]
pub struct HomDegree {
    pub orbits: Orbits,
    pub blocks: Vec<Lattice>,
    pub offsets: Vec<usize>,
}

impl HomDegree {
    /// Total generator count of the degree.
    pub fn gens(&self) -> usize {
        self.offsets.last().copied().unwrap_or(0)
            + self.blocks.last().map_or(0, Lattice::rank)
    }

    /// The matrix sending block generators to coefficient coordinates.
    pub fn section(&self, block: usize) -> IntMatrix {
        self.blocks[block].basis_matrix()
    }
}

/// The hom model `Hom_{Z[G]}(Z·X_*, A)` as a cochain complex.
#[derive(Debug, Clone)]
pub struct HomModel {
    pub complex: ComplexOfFp,
    pub degrees: Vec<HomDegree>,
}

/// Enforces the per-degree generator budget for a model over a basis.
///
/// `orbit_reduced` models carry roughly one block per `|G|` tags; the exact
/// block count is re-checked after the orbit decomposition.
fn check_budget(
    basis: &dyn SignedBasis,
    a_gens: usize,
    degree: usize,
    budget: usize,
    orbit_reduced: bool,
) -> Result<usize> {
    let order = basis.group().order().max(1);
    let dim = basis.dim(degree).ok_or(Error::Budget {
        degree,
        needed: usize::MAX,
        budget,
    })?;
    let needed = a_gens
        .checked_mul(dim)
        .map(|t| if orbit_reduced { t.div_ceil(order) } else { t })
        .ok_or(Error::Budget {
            degree,
            needed: usize::MAX,
            budget,
        })?;
    if needed > budget {
        return Err(Error::Budget {
            degree,
            needed,
            budget,
        });
    }
    Ok(dim)
}

fn ensure_side(module: &GModule, side: Side) -> GModule {
    if module.side() == side {
        module.clone()
    } else {
        module.side_convert()
    }
}

/// Builds the tensor model of a right module over a basis, for degrees
/// `0..=top`. A left module is converted through the inversion functor.
pub fn tensor_complex(
    basis: &dyn SignedBasis,
    module: &GModule,
    top: usize,
    budget: usize,
) -> Result<TensorModel> {
    let module = ensure_side(module, Side::Right);
    let a = module.gens();
    let ra = module.underlying().relations();
    let ann = module.underlying().exponent();
    let mut orbits_by_degree = Vec::with_capacity(top + 1);
    let mut groups = Vec::with_capacity(top + 1);
    for n in 0..=top {
        check_budget(basis, a, n, budget, true)?;
        let orbits = orbit_decomposition(basis, n);
        let blocks = orbits.reps.len();
        if a * blocks > budget {
            return Err(Error::Budget {
                degree: n,
                needed: a * blocks,
                budget,
            });
        }
        let mut rels = Vec::new();
        for block in 0..blocks {
            let offset = block * a;
            for rel in ra.basis() {
                rels.push(col_shift(rel, offset));
            }
            for &(g, s) in &orbits.stabilizers[block] {
                let constraint = stabilizer_constraint(&module, g, s);
                for col in constraint.columns() {
                    rels.push(col_shift(col, offset));
                }
            }
        }
        groups.push(Arc::new(FpAbGroup::new(a * blocks, rels, ann.as_ref())));
        orbits_by_degree.push(orbits);
    }
    let mut maps = Vec::with_capacity(top);
    for n in 1..=top {
        let src = &orbits_by_degree[n];
        let dst = &orbits_by_degree[n - 1];
        let mut triplets = Vec::new();
        for (block, &rep) in src.reps.iter().enumerate() {
            let col_off = block * a;
            for (tag, coeff) in basis.boundary(n, rep) {
                let (dst_block, g, sign) = dst.rep_of[tag];
                let row_off = dst_block * a;
                let scale = BigInt::from(coeff * sign);
                for (j, col) in module.action(g).columns().iter().enumerate() {
                    for (r, v) in col {
                        triplets.push((row_off + r, col_off + j, v * &scale));
                    }
                }
            }
        }
        maps.push(IntMatrix::from_triplets(
            groups[n - 1].gens(),
            groups[n].gens(),
            triplets,
        ));
    }
    let vanishes = basis.dim(top + 1) == Some(0);
    let complex = ComplexOfFp::new(Direction::Chain, groups, maps, vanishes)?;
    Ok(TensorModel {
        complex,
        orbits: orbits_by_degree,
    })
}

/// Builds the hom model of a left module over a basis, for degrees `0..=top`.
/// A right module is converted through the inversion functor.
pub fn hom_complex(
    basis: &dyn SignedBasis,
    module: &GModule,
    top: usize,
    budget: usize,
) -> Result<HomModel> {
    let module = ensure_side(module, Side::Left);
    let a = module.gens();
    let ra = module.underlying().relations();
    let ann = module.underlying().exponent();
    let mut degrees: Vec<HomDegree> = Vec::with_capacity(top + 1);
    let mut groups = Vec::with_capacity(top + 1);
    for n in 0..=top {
        check_budget(basis, a, n, budget, true)?;
        let orbits = orbit_decomposition(basis, n);
        let mut blocks = Vec::with_capacity(orbits.reps.len());
        let mut offsets = Vec::with_capacity(orbits.reps.len());
        let mut rels = Vec::new();
        let mut total = 0usize;
        for stab in &orbits.stabilizers {
            let lattice = if stab.is_empty() {
                Lattice::full(a)
            } else {
                let ops: Vec<IntMatrix> = stab
                    .iter()
                    .map(|&(g, s)| stabilizer_constraint(&module, g, s))
                    .collect();
                let pairs: Vec<(&IntMatrix, &Lattice)> =
                    ops.iter().map(|m| (m, ra)).collect();
                preimage_multi(&pairs, ann.as_ref())
            };
            offsets.push(total);
            let block_rels = if lattice.is_full() {
                ra.clone()
            } else {
                preimage_lattice(&lattice.basis_matrix(), ra, ann.as_ref())
            };
            for rel in block_rels.basis() {
                rels.push(col_shift(rel, total));
            }
            total += lattice.rank();
            blocks.push(lattice);
        }
        if total > budget {
            return Err(Error::Budget {
                degree: n,
                needed: total,
                budget,
            });
        }
        groups.push(Arc::new(FpAbGroup::new(total, rels, ann.as_ref())));
        degrees.push(HomDegree {
            orbits,
            blocks,
            offsets,
        });
    }
    let mut maps = Vec::with_capacity(top);
    for n in 0..top {
        // The coboundary at degree n evaluates a hom element on the boundary
        // of every degree-(n+1) orbit rep.
        let src = &degrees[n];
        let dst = &degrees[n + 1];
        let mut triplets = Vec::new();
        for (dst_block, &rep) in dst.orbits.reps.iter().enumerate() {
            let solver = if dst.blocks[dst_block].is_full() {
                None
            } else {
                Some(Solver::new(
                    &dst.blocks[dst_block].basis_matrix(),
                    Some(ra),
                    ann.as_ref(),
                ))
            };
            // Accumulate the evaluation columns per source generator.
            let mut cols: Vec<(usize, Vec<BigInt>)> = Vec::new();
            let mut col_index: std::collections::BTreeMap<usize, usize> =
                std::collections::BTreeMap::new();
            for (tag, coeff) in basis.boundary(n + 1, rep) {
                let (src_block, g, sign) = src.orbits.rep_of[tag];
                let scale = BigInt::from(coeff * sign);
                let action = module.action(g);
                let section = src.blocks[src_block].basis_matrix();
                let pushed = action.mul(&section);
                for (j, col) in pushed.columns().iter().enumerate() {
                    let src_gen = src.offsets[src_block] + j;
                    let slot = *col_index.entry(src_gen).or_insert_with(|| {
                        cols.push((src_gen, vec![BigInt::from(0); a]));
                        cols.len() - 1
                    });
                    for (r, v) in col {
                        cols[slot].1[*r] += v * &scale;
                    }
                }
            }
            for (src_gen, value) in cols {
                let coords = match &solver {
                    None => value,
                    Some(s) => s.solve_dense(&value).ok_or_else(|| {
                        Error::Unsolvable(format!(
                            "hom coboundary value escapes its orbit block at degree {}",
                            n + 1
                        ))
                    })?,
                };
                for (r, v) in coords.into_iter().enumerate() {
                    if !v.eq(&BigInt::from(0)) {
                        triplets.push((dst.offsets[dst_block] + r, src_gen, v));
                    }
                }
            }
        }
        maps.push(IntMatrix::from_triplets(
            groups[n + 1].gens(),
            groups[n].gens(),
            triplets,
        ));
    }
    let vanishes = basis.dim(top + 1) == Some(0);
    let complex = ComplexOfFp::new(Direction::Cochain, groups, maps, vanishes)?;
    Ok(HomModel { complex, degrees })
}

/// The matrix `M_g - s·I` of a stabilizing pair on the coefficients.
fn stabilizer_constraint(module: &GModule, g: usize, s: i64) -> IntMatrix {
    let a = module.gens();
    module
        .action(g)
        .sub(&IntMatrix::identity(a).scale(&BigInt::from(s)))
}

/// Pushes an equivariant tag-level map through two tensor models, producing
/// the degreewise matrices of the induced chain map.
///
/// `tag_map(n, tag)` must be the value of the map on a degree-`n` source tag
/// as a signed combination of degree-`n` target tags, equivariantly in the
/// group; equivariance is not checked here, but chain-map validation on the
/// result catches violations.
pub fn tensor_map_matrices(
    source: &TensorModel,
    target: &TensorModel,
    module: &GModule,
    tag_map: &mut dyn FnMut(usize, usize) -> Vec<(usize, i64)>,
    degrees: usize,
) -> Result<Vec<IntMatrix>> {
    let module = ensure_side(module, Side::Right);
    let a = module.gens();
    let mut mats = Vec::with_capacity(degrees);
    for n in 0..degrees {
        let src = source.orbits.get(n).ok_or_else(|| {
            Error::Invalid(format!("source model does not carry degree {n}"))
        })?;
        let dst = target.orbits.get(n).ok_or_else(|| {
            Error::Invalid(format!("target model does not carry degree {n}"))
        })?;
        let mut triplets = Vec::new();
        for (block, &rep) in src.reps.iter().enumerate() {
            let col_off = block * a;
            for (tag, coeff) in tag_map(n, rep) {
                let (dst_block, g, sign) = dst.rep_of[tag];
                let row_off = dst_block * a;
                let scale = BigInt::from(coeff * sign);
                for (j, col) in module.action(g).columns().iter().enumerate() {
                    for (r, v) in col {
                        triplets.push((row_off + r, col_off + j, v * &scale));
                    }
                }
            }
        }
        let rows = target
            .complex
            .group(n)
            .map(|g| g.gens())
            .unwrap_or(dst.reps.len() * a);
        let cols = source
            .complex
            .group(n)
            .map(|g| g.gens())
            .unwrap_or(src.reps.len() * a);
        mats.push(IntMatrix::from_triplets(rows, cols, triplets));
    }
    Ok(mats)
}

/// Expresses an ambient coefficient column of a tensor model, given per tag,
/// in the model's generator coordinates (block of the orbit rep, twisted by
/// the connecting group element).
pub fn tensor_coords_of_tag(
    model: &TensorModel,
    module: &GModule,
    n: usize,
    tag: usize,
    value: &[BigInt],
) -> Vec<(usize, BigInt)> {
    let a = module.gens();
    let (block, g, sign) = model.orbits[n].rep_of[tag];
    let offset = block * a;
    let pushed = module.action(g).mul_col(&col_from_dense(value));
    pushed
        .into_iter()
        .map(|(r, v)| (offset + r, v * BigInt::from(sign)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::FiniteGroup;

    fn zn(n: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(n))
    }

    #[test]
    fn bar_tensor_of_trivial_z_is_classical_homology() {
        // H_*(Z3, Z) = (Z, Z3, 0, Z3) in degrees 0..=3.
        let g = zn(3);
        let bar = super::super::basis::BarBasis::new(g.clone());
        let module = GModule::trivial_z(g, Side::Right);
        let model = tensor_complex(&bar, &module, 4, 100_000).unwrap();
        let h: Vec<Vec<String>> = (0..=3)
            .map(|n| {
                model
                    .complex
                    .homology_at(n)
                    .unwrap()
                    .group
                    .invariant_factor_strings()
            })
            .collect();
        assert_eq!(h[0], vec!["0"]);
        assert_eq!(h[1], vec!["3"]);
        assert!(h[2].is_empty());
        assert_eq!(h[3], vec!["3"]);
    }

    #[test]
    fn bar_hom_of_trivial_z_is_classical_cohomology() {
        // H^*(Z4, Z) = (Z, 0, Z4, 0) in degrees 0..=3.
        let g = zn(4);
        let bar = super::super::basis::BarBasis::new(g.clone());
        let module = GModule::trivial_z(g, Side::Left);
        let model = hom_complex(&bar, &module, 4, 100_000).unwrap();
        let h: Vec<Vec<String>> = (0..=3)
            .map(|n| {
                model
                    .complex
                    .homology_at(n)
                    .unwrap()
                    .group
                    .invariant_factor_strings()
            })
            .collect();
        assert_eq!(h[0], vec!["0"]);
        assert!(h[1].is_empty());
        assert_eq!(h[2], vec!["4"]);
        assert!(h[3].is_empty());
    }

    #[test]
    fn regular_coefficients_make_bar_tensor_acyclic() {
        // H_0(G, Z[G]) = Z and H_n = 0 for n >= 1.
        let g = zn(4);
        let bar = super::super::basis::BarBasis::new(g.clone());
        let module = GModule::regular(g, Side::Right);
        let model = tensor_complex(&bar, &module, 3, 100_000).unwrap();
        assert_eq!(
            model
                .complex
                .homology_at(0)
                .unwrap()
                .group
                .invariant_factor_strings(),
            vec!["0"]
        );
        for n in 1..=2 {
            assert!(model.complex.homology_at(n).unwrap().group.is_trivial());
        }
    }

    #[test]
    fn ext_tensor_stabilizer_relations_appear() {
        // For Z2 the degree-1 block is Z/2: t·(e∧t) = -(e∧t) forces 2x = 0.
        let g = zn(2);
        let ext = super::super::basis::ExtBasis::new(g.clone()).unwrap();
        let module = GModule::trivial_z(g, Side::Right);
        let model = tensor_complex(&ext, &module, 1, 100_000).unwrap();
        let degree1 = model.complex.group(1).unwrap();
        assert_eq!(degree1.invariant_factor_strings(), vec!["2"]);
    }

    #[test]
    fn budget_is_enforced() {
        let g = zn(6);
        let bar = super::super::basis::BarBasis::new(g.clone());
        let module = GModule::trivial_z(g, Side::Right);
        let err = tensor_complex(&bar, &module, 6, 10_000).unwrap_err();
        assert!(matches!(err, Error::Budget { .. }));
    }

    #[test]
    fn hom_model_handles_constrained_blocks() {
        // Hom_G(Λ^2 Z[Z2], Z) at degree 1: the block {x : 2x = 0} = 0.
        let g = zn(2);
        let ext = super::super::basis::ExtBasis::new(g.clone()).unwrap();
        let module = GModule::trivial_z(g, Side::Left);
        let model = hom_complex(&ext, &module, 1, 100_000).unwrap();
        assert_eq!(model.complex.group(1).unwrap().gens(), 0);
        // With Z/4 coefficients the same block is {x : 2x = 0 mod 4} = Z/2.
        let g2 = zn(2);
        let ext2 = super::super::basis::ExtBasis::new(g2.clone()).unwrap();
        let module2 = GModule::trivial_zmod(g2, 4, Side::Left);
        let model2 = hom_complex(&ext2, &module2, 1, 100_000).unwrap();
        assert_eq!(
            model2.complex.group(1).unwrap().invariant_factor_strings(),
            vec!["2"]
        );
    }
}
