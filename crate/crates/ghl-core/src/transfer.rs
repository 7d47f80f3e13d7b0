//! Restriction and transfer along a subgroup of finite index.
//!
//! For a subgroup `H <= G` and coefficients `A`, restriction forgets down to
//! `H`-cochains and transfer goes back up by summing over a transversal of
//! the left cosets `G = ⊔ c_i H`: writing `x_j = g_j g_{j+1} ⋯ g_n` and
//! `x̄` for the transversal element of `x`'s coset,
//!
//! ```text
//! tr(σ)(g_1, …, g_n) = Σ_i  (x_1 c_i)‾ · σ( (x_1c_i)‾⁻¹ g_1 (x_2c_i)‾,
//!                                           (x_2c_i)‾⁻¹ g_2 (x_3c_i)‾,
//!                                           …,
//!                                           (x_nc_i)‾⁻¹ g_n  c_i )
//! ```
//!
//! with every argument landing in `H`. A second, independently coded route
//! computes the corresponding operator on the equivariant orbit models of
//! the homogeneous basis and is compared against the conjugate of `tr` by
//! the model-to-function isomorphisms — an identity this module's tests and
//! the acceptance suite verify rather than assume. Transfer commutes with
//! the coboundary, preserves the skew and vanishing-skew subspaces, and the
//! composite transfer ∘ restriction acts as multiplication by the index on
//! classical cohomology.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::coeffmod::{GModule, Side};
use crate::complexes::{ChainMapOfFp, ComplexOfFp, FunctionModel, HomModel};
use crate::exactlinalg::{IntMatrix, Lattice};
use crate::groups::{CosetSystem, FiniteGroup};
use crate::{Error, Result};

/// A subgroup of finite index together with the coefficient module on both
/// levels: the module over the big group and its restriction to the
/// subgroup (same underlying group, action matrices pulled back along the
/// embedding).
#[derive(Debug, Clone)]
pub struct SubgroupContext {
    cosets: CosetSystem,
    subgroup: Arc<FiniteGroup>,
    embedding: Vec<usize>,
    module: GModule,
    restricted: GModule,
}

impl SubgroupContext {
    /// Builds the context from a module over the big group and a subgroup
    /// element list (validated for closure).
    pub fn new(module: &GModule, subgroup_elements: &[usize]) -> Result<SubgroupContext> {
        let module = if module.side() == Side::Left {
            module.clone()
        } else {
            module.side_convert()
        };
        let group = module.group().clone();
        let (sub, embedding) = group.subgroup_group(subgroup_elements)?;
        let cosets = CosetSystem::new(group, embedding.clone())?;
        let subgroup = Arc::new(sub);
        let actions: Vec<IntMatrix> = embedding
            .iter()
            .map(|&g| module.action(g).clone())
            .collect();
        let restricted = GModule::from_parts(
            "restricted coefficients",
            subgroup.clone(),
            Side::Left,
            module.underlying().clone(),
            actions,
        )?;
        Ok(SubgroupContext {
            cosets,
            subgroup,
            embedding,
            module,
            restricted,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.module.group()
    }

    pub fn subgroup(&self) -> &Arc<FiniteGroup> {
        &self.subgroup
    }

    /// Parent-group index of each subgroup element.
    pub fn embedding(&self) -> &[usize] {
        &self.embedding
    }

    /// The index `[G : H]`.
    pub fn index(&self) -> usize {
        self.cosets.index()
    }

    pub fn cosets(&self) -> &CosetSystem {
        &self.cosets
    }

    /// The coefficients over the big group (left form).
    pub fn module(&self) -> &GModule {
        &self.module
    }

    /// The coefficients restricted to the subgroup.
    pub fn restricted_module(&self) -> &GModule {
        &self.restricted
    }

    /// The function cochain model over the big group.
    pub fn group_model(&self, top: usize, budget: usize) -> Result<FunctionModel> {
        FunctionModel::new(&self.module, top, budget)
    }

    /// The function cochain model over the subgroup.
    pub fn subgroup_model(&self, top: usize, budget: usize) -> Result<FunctionModel> {
        FunctionModel::new(&self.restricted, top, budget)
    }

    /// The degree-`n` restriction matrix on function cochains: evaluate a
    /// cochain of the big group on tuples from the subgroup.
    pub fn restriction_matrix(&self, n: usize) -> IntMatrix {
        let a = self.module.gens();
        let h_ord = self.subgroup.order();
        let g_ord = self.group().order();
        let h_tuples = h_ord.pow(n as u32);
        let g_tuples = g_ord.pow(n as u32);
        let mut triplets = Vec::new();
        for ht in 0..h_tuples {
            let digits = decode_tuple(ht, n, h_ord);
            let gt = digits
                .iter()
                .fold(0usize, |acc, &d| acc * g_ord + self.embedding[d]);
            for i in 0..a {
                triplets.push((ht * a + i, gt * a + i, BigInt::from(1)));
            }
        }
        IntMatrix::from_triplets(h_tuples * a, g_tuples * a, triplets)
    }

    /// The degree-`n` transfer matrix on function cochains, with the
    /// canonical transversal.
    pub fn transfer_matrix(&self, n: usize) -> IntMatrix {
        self.transfer_matrix_with(n, self.cosets.reps())
            .expect("the canonical transversal is valid")
    }

    /// The degree-`n` transfer matrix with an arbitrary transversal (one
    /// representative per left coset; validated). Different transversals
    /// give different matrices but the same map on cohomology.
    pub fn transfer_matrix_with(&self, n: usize, transversal: &[usize]) -> Result<IntMatrix> {
        let group = self.group().clone();
        let g_ord = group.order();
        let rep_lookup = self.transversal_lookup(transversal)?;
        let a = self.module.gens();
        let h_ord = self.subgroup.order();
        let g_tuples = g_ord.pow(n as u32);
        let h_tuples = h_ord.pow(n as u32);
        let bar = |x: usize| rep_lookup[self.cosets.rep(x)];
        let mut triplets = Vec::new();
        for gt in 0..g_tuples {
            let digits = decode_tuple(gt, n, g_ord);
            // Suffix products: suffix[k] = digits[k] ⋯ digits[n-1], suffix[n] = e.
            let mut suffix = vec![0usize; n + 1];
            for k in (0..n).rev() {
                suffix[k] = group.mul(digits[k], suffix[k + 1]);
            }
            for &c in transversal {
                let mut h_digits = Vec::with_capacity(n);
                let mut ok = true;
                for k in 0..n {
                    let left = bar(group.mul(suffix[k], c));
                    let right = bar(group.mul(suffix[k + 1], c));
                    let arg = group.mul(group.mul(group.inv(left), digits[k]), right);
                    match self.cosets.subgroup_position(arg) {
                        Some(p) => h_digits.push(p),
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if !ok {
                    return Err(Error::Invalid(
                        "transfer argument escaped the subgroup; transversal is inconsistent"
                            .into(),
                    ));
                }
                let ht = h_digits.iter().fold(0usize, |acc, &d| acc * h_ord + d);
                let coeff = bar(group.mul(suffix[0], c));
                for (j, col) in self.module.action(coeff).columns().iter().enumerate() {
                    for (i, v) in col {
                        triplets.push((gt * a + i, ht * a + j, v.clone()));
                    }
                }
            }
        }
        Ok(IntMatrix::from_triplets(g_tuples * a, h_tuples * a, triplets))
    }

    /// The degree-`n` transfer on the equivariant orbit models of the
    /// homogeneous basis (values on orbit representatives), coded from the
    /// expanded representative-level formula rather than by conjugating the
    /// function-cochain transfer.
    pub fn homogeneous_transfer_matrix(
        &self,
        hom_h: &HomModel,
        hom_g: &HomModel,
        n: usize,
    ) -> Result<IntMatrix> {
        let group = self.group().clone();
        let g_ord = group.order();
        let h_ord = self.subgroup.order();
        let a = self.module.gens();
        let deg_g = hom_g
            .degrees
            .get(n)
            .ok_or_else(|| Error::Invalid(format!("big-group model lacks degree {n}")))?;
        let deg_h = hom_h
            .degrees
            .get(n)
            .ok_or_else(|| Error::Invalid(format!("subgroup model lacks degree {n}")))?;
        for (label, deg) in [("big-group", deg_g), ("subgroup", deg_h)] {
            if deg.blocks.iter().any(|b| !b.is_full()) {
                return Err(Error::Invalid(format!(
                    "{label} model has constrained orbit blocks; transfer needs the free homogeneous basis"
                )));
            }
        }
        let bar = |x: usize| self.cosets.rep(x);
        let mut triplets = Vec::new();
        for (tb, &rep_tag) in deg_g.orbits.reps.iter().enumerate() {
            let tuple = decode_tuple(rep_tag, n + 1, g_ord);
            if tuple[0] != group.identity() {
                return Err(Error::Invalid(
                    "orbit representative does not start at the identity".into(),
                ));
            }
            for &c in self.cosets.reps() {
                let r = bar(group.mul(tuple[n], c));
                let r_inv = group.inv(r);
                let mut h_digits = Vec::with_capacity(n + 1);
                h_digits.push(0usize);
                for t in 1..=n {
                    let back = bar(group.mul(group.mul(group.inv(tuple[t]), tuple[n]), c));
                    let arg = group.mul(group.mul(r_inv, tuple[t]), back);
                    let p = self.cosets.subgroup_position(arg).ok_or_else(|| {
                        Error::Invalid(
                            "homogeneous transfer argument escaped the subgroup".into(),
                        )
                    })?;
                    h_digits.push(p);
                }
                let h_tag = h_digits.iter().fold(0usize, |acc, &d| acc * h_ord + d);
                let (sb, g_conn, sign) = deg_h.orbits.rep_of[h_tag];
                if g_conn != self.subgroup.identity() || sign != 1 {
                    return Err(Error::Invalid(
                        "identity-led tuple is not its own orbit representative".into(),
                    ));
                }
                for (j, col) in self.module.action(r).columns().iter().enumerate() {
                    for (i, v) in col {
                        triplets.push((tb * a + i, sb * a + j, v.clone()));
                    }
                }
            }
        }
        Ok(IntMatrix::from_triplets(
            deg_g.orbits.reps.len() * a,
            deg_h.orbits.reps.len() * a,
            triplets,
        ))
    }

    /// Restriction as a validated cochain map between the two function-model
    /// complexes (the validation proves commutation with the coboundaries).
    pub fn restriction_map(
        &self,
        g_complex: Arc<ComplexOfFp>,
        h_complex: Arc<ComplexOfFp>,
    ) -> Result<ChainMapOfFp> {
        let degrees = g_complex.groups().len().min(h_complex.groups().len());
        let mats = (0..degrees).map(|n| self.restriction_matrix(n)).collect();
        ChainMapOfFp::new(g_complex, h_complex, mats)
    }

    /// Transfer as a validated cochain map from the subgroup's function
    /// model to the big group's.
    pub fn transfer_map(
        &self,
        h_complex: Arc<ComplexOfFp>,
        g_complex: Arc<ComplexOfFp>,
    ) -> Result<ChainMapOfFp> {
        let degrees = g_complex.groups().len().min(h_complex.groups().len());
        let mats = (0..degrees).map(|n| self.transfer_matrix(n)).collect();
        ChainMapOfFp::new(h_complex, g_complex, mats)
    }

    /// Validates a transversal and indexes it by canonical representative.
    fn transversal_lookup(&self, transversal: &[usize]) -> Result<Vec<usize>> {
        if transversal.len() != self.cosets.index() {
            return Err(Error::Invalid(format!(
                "transversal has {} elements for {} cosets",
                transversal.len(),
                self.cosets.index()
            )));
        }
        let mut lookup = vec![usize::MAX; self.group().order()];
        for &r in transversal {
            if r >= self.group().order() {
                return Err(Error::Invalid(format!("element {r} out of range")));
            }
            let canonical = self.cosets.rep(r);
            if lookup[canonical] != usize::MAX {
                return Err(Error::Invalid(
                    "transversal hits one coset twice".into(),
                ));
            }
            lookup[canonical] = r;
        }
        Ok(lookup)
    }
}

/// Whether a matrix maps one lattice into another (all basis images
/// contained).
pub fn maps_lattice_into(m: &IntMatrix, source: &Lattice, target: &Lattice) -> bool {
    source.basis().iter().all(|b| target.contains(&m.mul_col(b)))
}

/// Decodes a big-endian tuple of `len` digits in base `base`.
fn decode_tuple(mut idx: usize, len: usize, base: usize) -> Vec<usize> {
    let mut out = vec![0usize; len];
    for k in (0..len).rev() {
        out[k] = idx % base;
        idx /= base;
    }
    out
}
