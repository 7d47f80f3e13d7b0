//! Symmetric homology as the antisymmetrized image inside the simplicial
//! tensor model.
//!
//! For each degree `n` and each strictly increasing `(n+1)`-subset `S` of the
//! group, antisymmetrizing the orderings of `S` produces the vector
//!
//! ```text
//! w_{i,S} = Σ_{σ} sign(σ) · (a_i ⊗ tuple_σ(S))
//! ```
//!
//! in the tensor model `A ⊗_{Z[G]} Z·G^{n+1}`. Tuples with a repeated entry
//! antisymmetrize to zero, so these vectors span the image of the symmetric
//! subcomplex degreewise. The model presents that image on the generators
//! `(i, S)`, with relations pulled back from the ambient tensor model, and
//! offers two independently computed boundaries:
//!
//! * `Scaled`: `(n+1)` times the alternating subset boundary, acting on the
//!   `S`-index (never touching the ambient boundary matrices);
//! * `Direct`: the ambient boundary applied to `w_{i,S}` and re-expressed in
//!   the degree-`(n-1)` generators by an exact solve.
//!
//! Their agreement on homology is a test, not an assumption.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use std::collections::BTreeMap;

use crate::coeffmod::{GModule, Side};
use crate::exactlinalg::{
    col_from_dense, preimage_lattice, FpAbGroup, IntMatrix, Solver,
};
use crate::{Error, Result};

use super::basis::{BarBasis, ExtBasis, SignedBasis};
use super::chain::{ComplexOfFp, Direction};
use super::compare::{lambda_tag, nu_tag};
use super::models::{tensor_complex, tensor_map_matrices, TensorModel};

/// How to compute the boundary of the image model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryRoute {
    Scaled,
    Direct,
}

/// The image model, together with the ambient tensor model and the matrices
/// `V_n` realizing the generators inside it.
#[derive(Debug)]
pub struct SymImageModel {
    pub complex: ComplexOfFp,
    pub tensor: TensorModel,
    pub ext: ExtBasis,
    pub gen_vectors: Vec<IntMatrix>,
}

/// Builds the image model of a right module for degrees `0..=top` (capped at
/// the top nonzero subset degree `|G| - 1`).
pub fn sym_image_complex(
    module: &GModule,
    top: usize,
    budget: usize,
    route: BoundaryRoute,
) -> Result<SymImageModel> {
    let module = if module.side() == Side::Right {
        module.clone()
    } else {
        module.side_convert()
    };
    let group = module.group().clone();
    let bar = BarBasis::new(group.clone());
    let ext = ExtBasis::new(group.clone())?;
    let eff_top = top.min(group.order() - 1);
    let tensor = tensor_complex(&bar, &module, eff_top, budget)?;
    let a = module.gens();
    let q = tensor.complex.modulus().cloned();
    let ann = module.underlying().exponent();

    let mut gen_vectors = Vec::with_capacity(eff_top + 1);
    let mut groups = Vec::with_capacity(eff_top + 1);
    for n in 0..=eff_top {
        let ext_dim = ext.dim(n).unwrap_or(0);
        let gens = ext_dim * a;
        if gens > budget {
            return Err(Error::Budget {
                degree: n,
                needed: gens,
                budget,
            });
        }
        let ambient = tensor.complex.group(n).unwrap();
        let mut cols = Vec::with_capacity(gens);
        for s_tag in 0..ext_dim {
            let orderings = nu_tag(&ext, &bar, n, s_tag);
            for i in 0..a {
                let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
                for &(tag, sgn) in &orderings {
                    let (block, g, s) = tensor.orbits[n].rep_of[tag];
                    let scale = BigInt::from(sgn * s);
                    for (r, v) in module.action(g).col(i) {
                        let slot = acc.entry(block * a + r).or_default();
                        *slot += v * &scale;
                    }
                }
                let col: Vec<(usize, BigInt)> = acc
                    .into_iter()
                    .filter(|(_, v)| !v.is_zero())
                    .collect();
                cols.push(col);
            }
        }
        let v = IntMatrix::from_cols(ambient.gens(), cols);
        let rels = preimage_lattice(&v, ambient.relations(), q.as_ref());
        groups.push(Arc::new(FpAbGroup::from_relation_lattice(
            rels,
            ann.as_ref(),
        )));
        gen_vectors.push(v);
    }

    let mut maps = Vec::with_capacity(eff_top);
    for n in 1..=eff_top {
        let mat = match route {
            BoundaryRoute::Scaled => {
                let ext_dim = ext.dim(n).unwrap_or(0);
                let scale = BigInt::from(n as i64 + 1);
                let mut triplets = Vec::new();
                for s_tag in 0..ext_dim {
                    for (s_prev, c) in ext.boundary(n, s_tag) {
                        for i in 0..a {
                            triplets.push((
                                s_prev * a + i,
                                s_tag * a + i,
                                BigInt::from(c) * &scale,
                            ));
                        }
                    }
                }
                IntMatrix::from_triplets(groups[n - 1].gens(), groups[n].gens(), triplets)
            }
            BoundaryRoute::Direct => {
                let ambient_boundary = tensor.complex.map_between(n - 1).unwrap();
                let prev_rel = tensor.complex.group(n - 1).unwrap().relations();
                let solver = Solver::new(&gen_vectors[n - 1], Some(prev_rel), q.as_ref());
                let mut cols = Vec::with_capacity(gen_vectors[n].cols());
                for w in gen_vectors[n].columns() {
                    let image = ambient_boundary.mul_col(w);
                    let coords = solver.solve(&image).ok_or_else(|| {
                        Error::Unsolvable(format!(
                            "boundary of a degree-{n} image generator escapes the image"
                        ))
                    })?;
                    cols.push(col_from_dense(&coords));
                }
                IntMatrix::from_cols(groups[n - 1].gens(), cols)
            }
        };
        maps.push(mat);
    }
    let vanishes = ext.dim(eff_top + 1) == Some(0);
    let complex = ComplexOfFp::new(Direction::Chain, groups, maps, vanishes)?;
    Ok(SymImageModel {
        complex,
        tensor,
        ext,
        gen_vectors,
    })
}

/// The degreewise matrices of the composite chain map from the image model
/// into the alternating tensor model: include into the ambient simplicial
/// model, then project tuples onto sorted subsets.
pub fn lambda_to_ext_matrices(
    sym: &SymImageModel,
    ext_model: &TensorModel,
    module: &GModule,
    degrees: usize,
) -> Result<Vec<IntMatrix>> {
    let group = module.group().clone();
    let bar = BarBasis::new(group.clone());
    let ext = ExtBasis::new(group)?;
    let mut tag_map = |n: usize, tag: usize| -> Vec<(usize, i64)> {
        lambda_tag(&bar, &ext, n, tag).into_iter().collect()
    };
    let projections =
        tensor_map_matrices(&sym.tensor, ext_model, module, &mut tag_map, degrees)?;
    let mut out = Vec::with_capacity(degrees);
    for (n, p) in projections.into_iter().enumerate() {
        out.push(p.mul(&sym.gen_vectors[n]));
    }
    Ok(out)
}
