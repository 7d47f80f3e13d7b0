//! The function cochain model of group cohomology.
//!
//! Degree `n` is the group of all functions `G^n -> A` for a left module
//! `A`, presented with one block of `A`-generators per argument tuple. The
//! coboundary is the usual inhomogeneous one,
//!
//! ```text
//! (δσ)(x_1, …, x_{n+1}) = x_1 · σ(x_2, …, x_{n+1})
//!                        + Σ_{j=1}^{n} (-1)^j σ(x_1, …, x_j x_{j+1}, …, x_{n+1})
//!                        + (-1)^{n+1} σ(x_1, …, x_n)
//! ```
//!
//! and the model also exposes the individual face operators, the adjacent
//! transposition operators obtained by conjugating tensor-slot swaps through
//! the standard equivalence with equivariant maps on tuples, and the
//! symmetrization operators defined directly by their three-case formulas.
//! Both operator families are implemented independently; their agreement (up
//! to sign) is asserted by tests, not assumed.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::coeffmod::{GModule, Side};
use crate::exactlinalg::{col_shift, FpAbGroup, IntMatrix};
use crate::groups::FiniteGroup;
use crate::{Error, Result};

use super::basis::BarBasis;
use super::chain::{ComplexOfFp, Direction};
use super::models::HomModel;

/// Function cochains `C^n = Maps(G^n, A)` for `0 <= n <= top`, assembled
/// into a validated cochain complex.
#[derive(Debug, Clone)]
pub struct FunctionModel {
    group: Arc<FiniteGroup>,
    module: GModule,
    complex: ComplexOfFp,
    tuple_counts: Vec<usize>,
}

impl FunctionModel {
    /// Builds the model for a left module (a right module is converted
    /// through the inversion functor), refusing any degree whose generator
    /// count exceeds the budget.
    pub fn new(module: &GModule, top: usize, budget: usize) -> Result<FunctionModel> {
        let module = if module.side() == Side::Left {
            module.clone()
        } else {
            module.side_convert()
        };
        let group = module.group().clone();
        let a = module.gens();
        let ra = module.underlying().relations().clone();
        let ann = module.underlying().exponent();
        let order = group.order();
        let mut groups = Vec::with_capacity(top + 1);
        let mut tuple_counts = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let count = (0..n)
                .try_fold(1usize, |acc, _| acc.checked_mul(order))
                .ok_or(Error::Budget {
                    degree: n,
                    needed: usize::MAX,
                    budget,
                })?;
            let gens = count.checked_mul(a).ok_or(Error::Budget {
                degree: n,
                needed: usize::MAX,
                budget,
            })?;
            if gens > budget {
                return Err(Error::Budget {
                    degree: n,
                    needed: gens,
                    budget,
                });
            }
            let mut rels = Vec::with_capacity(count * ra.rank());
            for t in 0..count {
                for rel in ra.basis() {
                    rels.push(col_shift(rel, t * a));
                }
            }
            groups.push(Arc::new(FpAbGroup::new(gens, rels, ann.as_ref())));
            tuple_counts.push(count);
        }
        let mut maps = Vec::with_capacity(top);
        for n in 0..top {
            maps.push(build_delta(&group, &module, n));
        }
        let complex = ComplexOfFp::new(Direction::Cochain, groups, maps, false)?;
        Ok(FunctionModel {
            group,
            module,
            complex,
            tuple_counts,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// The (left) coefficient module.
    pub fn module(&self) -> &GModule {
        &self.module
    }

    pub fn complex(&self) -> &ComplexOfFp {
        &self.complex
    }

    pub fn into_complex(self) -> ComplexOfFp {
        self.complex
    }

    pub fn top_degree(&self) -> usize {
        self.complex.top_degree()
    }

    /// Number of argument tuples in degree `n` of the window.
    pub fn tuple_count(&self, n: usize) -> usize {
        self.tuple_counts[n]
    }

    /// Decodes a tuple index into arguments `x_1, …, x_n`.
    pub fn tuple_decode(&self, n: usize, idx: usize) -> Vec<usize> {
        tuple_decode(self.group.order(), n, idx)
    }

    /// Encodes arguments back into a tuple index.
    pub fn tuple_encode(&self, args: &[usize]) -> usize {
        tuple_encode(self.group.order(), args)
    }

    /// Generator index of coefficient generator `a` at a tuple.
    pub fn gen_index(&self, tuple: usize, a: usize) -> usize {
        tuple * self.module.gens() + a
    }

    /// The coboundary `C^n -> C^{n+1}`, rebuilt from its formula.
    pub fn delta_matrix(&self, n: usize) -> IntMatrix {
        build_delta(&self.group, &self.module, n)
    }

    /// The face operator `d^j : C^n -> C^{n+1}` for `0 <= j <= n+1`. The
    /// alternating sum of the faces is the coboundary, a fact the test suite
    /// checks against [`Self::delta_matrix`] as a matrix identity.
    pub fn face_matrix(&self, n: usize, j: usize) -> Result<IntMatrix> {
        if j > n + 1 {
            return Err(Error::Invalid(format!(
                "face index {j} out of range 0..={}",
                n + 1
            )));
        }
        let order = self.group.order();
        let a = self.module.gens();
        let out_count = self.tuple_counts[n] * order;
        let mut triplets = Vec::new();
        for y_idx in 0..out_count {
            let y = tuple_decode(order, n + 1, y_idx);
            push_face_triplets(&mut triplets, &self.group, &self.module, &y, y_idx, j, 1);
        }
        Ok(IntMatrix::from_triplets(
            out_count * a,
            self.tuple_counts[n] * a,
            triplets,
        ))
    }

    /// The adjacent transposition operator `s_i : C^n -> C^n` for
    /// `0 <= i <= n-1`, transporting the swap of tensor slots `i` and `i+1`
    /// through the equivalence with equivariant maps:
    ///
    /// ```text
    /// (s_0 σ)(x) = x_1 · σ(x_1^{-1}, x_1 x_2, x_3, …, x_n)
    /// (s_i σ)(x) = σ(x_1, …, x_{i-1}, x_i x_{i+1}, x_{i+1}^{-1}, x_{i+1} x_{i+2}, x_{i+3}, …, x_n)
    /// ```
    ///
    /// (the `x_{i+1} x_{i+2}` entry being absent for `i = n-1`).
    pub fn swap_matrix(&self, n: usize, i: usize) -> Result<IntMatrix> {
        if n == 0 || i > n - 1 {
            return Err(Error::Invalid(format!(
                "swap index {i} out of range for degree {n}"
            )));
        }
        let order = self.group.order();
        let a = self.module.gens();
        let count = self.tuple_counts[n];
        let mut triplets = Vec::new();
        for x_idx in 0..count {
            let x = tuple_decode(order, n, x_idx);
            let mut arg = x.clone();
            let twist = if i == 0 {
                arg[0] = self.group.inv(x[0]);
                if n >= 2 {
                    arg[1] = self.group.mul(x[0], x[1]);
                }
                Some(x[0])
            } else {
                arg[i - 1] = self.group.mul(x[i - 1], x[i]);
                arg[i] = self.group.inv(x[i]);
                if i + 1 < n {
                    arg[i + 1] = self.group.mul(x[i], x[i + 1]);
                }
                None
            };
            let in_idx = tuple_encode(order, &arg);
            push_block(
                &mut triplets,
                &self.module,
                x_idx * a,
                in_idx * a,
                twist,
                1,
            );
        }
        Ok(IntMatrix::from_triplets(count * a, count * a, triplets))
    }

    /// The symmetrization operator `τ_i : C^n -> C^n` for `1 <= i <= n`,
    /// implemented directly from its three-case description:
    ///
    /// ```text
    /// (τ_1 σ)(x) = -x_1 · σ(x_1^{-1}, x_1 x_2, x_3, …, x_n)
    /// (τ_i σ)(x) = -σ(x_1, …, x_{i-2}, x_{i-1} x_i, x_i^{-1}, x_i x_{i+1}, x_{i+2}, …, x_n)
    /// (τ_n σ)(x) = -σ(x_1, …, x_{n-2}, x_{n-1} x_n, x_n^{-1})
    /// ```
    ///
    /// This is a separate code path from [`Self::swap_matrix`]; the relation
    /// `τ_i = -s_{i-1}` is a tested identity, not a definition.
    pub fn symmetrizer_matrix(&self, n: usize, i: usize) -> Result<IntMatrix> {
        if i == 0 || i > n {
            return Err(Error::Invalid(format!(
                "symmetrization index {i} out of range 1..={n}"
            )));
        }
        let order = self.group.order();
        let a = self.module.gens();
        let count = self.tuple_counts[n];
        let mut triplets = Vec::new();
        for x_idx in 0..count {
            let x = tuple_decode(order, n, x_idx);
            let mut arg = x.clone();
            let twist = if i == 1 {
                arg[0] = self.group.inv(x[0]);
                if n >= 2 {
                    arg[1] = self.group.mul(x[0], x[1]);
                }
                Some(x[0])
            } else if i < n {
                arg[i - 2] = self.group.mul(x[i - 2], x[i - 1]);
                arg[i - 1] = self.group.inv(x[i - 1]);
                arg[i] = self.group.mul(x[i - 1], x[i]);
                None
            } else {
                arg[n - 2] = self.group.mul(x[n - 2], x[n - 1]);
                arg[n - 1] = self.group.inv(x[n - 1]);
                None
            };
            let in_idx = tuple_encode(order, &arg);
            push_block(
                &mut triplets,
                &self.module,
                x_idx * a,
                in_idx * a,
                twist,
                -1,
            );
        }
        Ok(IntMatrix::from_triplets(count * a, count * a, triplets))
    }

    /// Diagonal projector onto the generators whose tuple contains the
    /// identity element.
    pub fn vanishing_projector(&self, n: usize) -> IntMatrix {
        let order = self.group.order();
        let a = self.module.gens();
        let count = self.tuple_counts[n];
        let identity = self.group.identity();
        let mut triplets = Vec::new();
        for t in 0..count {
            if tuple_decode(order, n, t).contains(&identity) {
                for j in 0..a {
                    triplets.push((t * a + j, t * a + j, BigInt::from(1)));
                }
            }
        }
        IntMatrix::from_triplets(count * a, count * a, triplets)
    }

    /// The permutation matrix from degree `n` of an equivariant model on
    /// tuples (the hom model over the simplicial basis) to this function
    /// model: a function argument tuple `(x_1, …, x_n)` corresponds to the
    /// orbit rep `(e, x_1, x_1 x_2, …, x_1 ⋯ x_n)`.
    ///
    /// Fails if the hom model's blocks are not the full coefficient group or
    /// its reps are not in the expected normal form.
    pub fn psi_from_hom(&self, hom: &HomModel, n: usize) -> Result<IntMatrix> {
        let a = self.module.gens();
        let count = self.tuple_counts[n];
        let degree = hom.degrees.get(n).ok_or_else(|| {
            Error::Invalid(format!("equivariant model does not carry degree {n}"))
        })?;
        if degree.orbits.reps.len() != count {
            return Err(Error::Invalid(format!(
                "degree {n} has {} orbits, expected {count}",
                degree.orbits.reps.len()
            )));
        }
        let bar = BarBasis::new(self.group.clone());
        let mut triplets = Vec::new();
        for x_idx in 0..count {
            let x = self.tuple_decode(n, x_idx);
            let mut tag_entries = Vec::with_capacity(n + 1);
            let mut w = self.group.identity();
            tag_entries.push(w);
            for &xi in &x {
                w = self.group.mul(w, xi);
                tag_entries.push(w);
            }
            let tag = bar.encode(&tag_entries);
            let pos = degree
                .orbits
                .reps
                .binary_search(&tag)
                .map_err(|_| Error::Invalid(format!("tuple {x_idx} has no orbit rep")))?;
            if !degree.blocks[pos].is_full() || degree.blocks[pos].rank() != a {
                return Err(Error::Invalid(format!(
                    "orbit block {pos} at degree {n} is not a full coefficient block"
                )));
            }
            for j in 0..a {
                triplets.push((x_idx * a + j, degree.offsets[pos] + j, BigInt::from(1)));
            }
        }
        Ok(IntMatrix::from_triplets(count * a, count * a, triplets))
    }
}

fn tuple_decode(order: usize, n: usize, mut idx: usize) -> Vec<usize> {
    let mut args = vec![0usize; n];
    for slot in (0..n).rev() {
        args[slot] = idx % order;
        idx /= order;
    }
    args
}

fn tuple_encode(order: usize, args: &[usize]) -> usize {
    args.iter().fold(0usize, |acc, &x| acc * order + x)
}

/// Appends the triplets of one `A`-block entry `target <- source`, twisted
/// by the action of `twist` when given, scaled by `sign`.
fn push_block(
    triplets: &mut Vec<(usize, usize, BigInt)>,
    module: &GModule,
    row_off: usize,
    col_off: usize,
    twist: Option<usize>,
    sign: i64,
) {
    let a = module.gens();
    match twist {
        None => {
            for j in 0..a {
                triplets.push((row_off + j, col_off + j, BigInt::from(sign)));
            }
        }
        Some(g) => {
            let m = module.action(g);
            for (j, col) in m.columns().iter().enumerate() {
                for (r, v) in col {
                    triplets.push((row_off + r, col_off + j, v * BigInt::from(sign)));
                }
            }
        }
    }
}

/// Appends the triplets of the face `d^j` evaluated at the output tuple `y`.
fn push_face_triplets(
    triplets: &mut Vec<(usize, usize, BigInt)>,
    group: &FiniteGroup,
    module: &GModule,
    y: &[usize],
    y_idx: usize,
    j: usize,
    sign: i64,
) {
    let order = group.order();
    let a = module.gens();
    let n = y.len() - 1;
    let (arg, twist): (Vec<usize>, Option<usize>) = if j == 0 {
        (y[1..].to_vec(), Some(y[0]))
    } else if j <= n {
        let mut arg = Vec::with_capacity(n);
        arg.extend_from_slice(&y[..j - 1]);
        arg.push(group.mul(y[j - 1], y[j]));
        arg.extend_from_slice(&y[j + 1..]);
        (arg, None)
    } else {
        (y[..n].to_vec(), None)
    };
    let in_idx = tuple_encode(order, &arg);
    match twist {
        None => {
            for t in 0..a {
                triplets.push((y_idx * a + t, in_idx * a + t, BigInt::from(sign)));
            }
        }
        Some(g) => {
            let m = module.action(g);
            for (c, col) in m.columns().iter().enumerate() {
                for (r, v) in col {
                    triplets.push((y_idx * a + r, in_idx * a + c, v * BigInt::from(sign)));
                }
            }
        }
    }
}

/// The coboundary `C^n -> C^{n+1}` from its inhomogeneous formula.
fn build_delta(group: &FiniteGroup, module: &GModule, n: usize) -> IntMatrix {
    let order = group.order();
    let a = module.gens();
    let out_count = (0..=n).fold(1usize, |acc, _| acc * order);
    let in_count = out_count / order;
    let mut triplets = Vec::new();
    for y_idx in 0..out_count {
        let y = tuple_decode(order, n + 1, y_idx);
        let mut sign = 1i64;
        for j in 0..=n + 1 {
            push_face_triplets(&mut triplets, group, module, &y, y_idx, j, sign);
            sign = -sign;
        }
    }
    IntMatrix::from_triplets(out_count * a, in_count * a, triplets)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(order: usize, top: usize) -> FunctionModel {
        let g = Arc::new(FiniteGroup::cyclic(order));
        let module = GModule::trivial_z(g, Side::Left);
        FunctionModel::new(&module, top, 100_000).unwrap()
    }

    #[test]
    fn delta_on_degree_one_trivial_z2() {
        // (δσ)(t, t) = t·σ(t) - σ(t²) + σ(t) = 2σ(t) - σ(e).
        let fm = model(2, 2);
        let delta = fm.complex().map_between(1).unwrap();
        let row = fm.tuple_encode(&[1, 1]);
        let col_t = fm.tuple_encode(&[1]);
        let col_e = fm.tuple_encode(&[0]);
        assert_eq!(delta.entry(row, col_t), BigInt::from(2));
        assert_eq!(delta.entry(row, col_e), BigInt::from(-1));
    }

    #[test]
    fn delta_is_alternating_sum_of_faces() {
        let g = Arc::new(FiniteGroup::symmetric(3));
        let module = GModule::regular(g, Side::Left);
        let fm = FunctionModel::new(&module, 2, 100_000).unwrap();
        for n in 0..2 {
            let mut acc = IntMatrix::zero(
                fm.complex().group(n + 1).unwrap().gens(),
                fm.complex().group(n).unwrap().gens(),
            );
            let mut sign = BigInt::from(1);
            for j in 0..=n + 1 {
                acc = acc.add(&fm.face_matrix(n, j).unwrap().scale(&sign));
                sign = -sign;
            }
            let delta = fm.delta_matrix(n);
            assert!(acc.sub(&delta).is_zero(), "degree {n}");
        }
    }

    #[test]
    fn swaps_are_involutions_on_nonfixed_degrees() {
        let g = Arc::new(FiniteGroup::cyclic(4));
        let module = GModule::regular(g, Side::Left);
        let fm = FunctionModel::new(&module, 3, 100_000).unwrap();
        for n in 1..=3usize {
            for i in 0..n {
                let s = fm.swap_matrix(n, i).unwrap();
                let square = s.mul(&s);
                let id = IntMatrix::identity(s.rows());
                assert!(square.sub(&id).is_zero(), "s_{i}^2 = 1 at degree {n}");
            }
        }
    }

    #[test]
    fn symmetrizers_negate_swaps() {
        let g = Arc::new(FiniteGroup::symmetric(3));
        let module = GModule::regular(g, Side::Left);
        let fm = FunctionModel::new(&module, 3, 100_000).unwrap();
        for n in 1..=3usize {
            for i in 1..=n {
                let tau = fm.symmetrizer_matrix(n, i).unwrap();
                let s = fm.swap_matrix(n, i - 1).unwrap();
                assert!(
                    tau.add(&s).is_zero(),
                    "τ_{i} = -s_{} at degree {n}",
                    i - 1
                );
            }
        }
    }

    #[test]
    fn vanishing_projector_marks_identity_tuples() {
        let fm = model(3, 2);
        let p = fm.vanishing_projector(2);
        let with_id = fm.tuple_encode(&[0, 2]);
        let without = fm.tuple_encode(&[1, 2]);
        assert_eq!(p.entry(with_id, with_id), BigInt::from(1));
        assert_eq!(p.entry(without, without), BigInt::from(0));
    }

    #[test]
    fn degree_zero_cohomology_is_invariants() {
        // H^0(Z3, Z[Z3]) = Z (the norm line).
        let g = Arc::new(FiniteGroup::cyclic(3));
        let module = GModule::regular(g, Side::Left);
        let fm = FunctionModel::new(&module, 1, 100_000).unwrap();
        let h0 = fm.complex().homology_at(0).unwrap();
        assert_eq!(h0.group.invariant_factor_strings(), vec!["0"]);
    }

    #[test]
    fn classical_cohomology_of_z4_matches_known_values() {
        // H^*(Z4, Z) = (Z, 0, Z4, 0, Z4).
        let fm = model(4, 5);
        let h: Vec<Vec<String>> = (0..=4)
            .map(|n| {
                fm.complex()
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
        assert_eq!(h[4], vec!["4"]);
    }
}
