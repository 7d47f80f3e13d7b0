//! Modules over the integral group ring of a finite group.
//!
//! A module is a finitely presented abelian group together with one action
//! matrix per group element and a side flag. Construction validates that the
//! matrices respect the presentation and compose according to the group table
//! (contravariantly for right modules), so downstream code can trust the
//! action blindly. Functors that need a specific side convert explicitly via
//! [`GModule::side_convert`].

use crate::exactlinalg::{preimage_multi, subquotient, FpAbGroup, IntMatrix, Lattice};
use crate::groups::FiniteGroup;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Which side the group acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flipped(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// A module over `Z[G]`.
#[derive(Debug, Clone)]
pub struct GModule {
    name: String,
    group: Arc<FiniteGroup>,
    side: Side,
    underlying: Arc<FpAbGroup>,
    /// One `gens x gens` matrix per group element, index matching the group.
    action: Vec<IntMatrix>,
}

impl GModule {
    /// Validates and wraps an action. Checks, modulo the relations of the
    /// underlying presentation: each matrix preserves relations, the identity
    /// acts as the identity, and `M_g M_h = M_{gh}` (left) or `M_{hg}`
    /// (right).
    pub fn from_parts(
        name: &str,
        group: Arc<FiniteGroup>,
        side: Side,
        underlying: Arc<FpAbGroup>,
        action: Vec<IntMatrix>,
    ) -> Result<GModule> {
        let n = group.order();
        let gens = underlying.gens();
        if action.len() != n {
            return Err(Error::BadAction(format!(
                "need {n} matrices, got {}",
                action.len()
            )));
        }
        for (g, m) in action.iter().enumerate() {
            if m.rows() != gens || m.cols() != gens {
                return Err(Error::BadAction(format!(
                    "matrix for element {g} is {}x{}, want {gens}x{gens}",
                    m.rows(),
                    m.cols()
                )));
            }
            for b in underlying.relations().basis() {
                if !underlying.relations().contains(&m.mul_col(b)) {
                    return Err(Error::BadAction(format!(
                        "matrix for element {g} does not preserve relations"
                    )));
                }
            }
        }
        let eq_mod = |a: &IntMatrix, b: &IntMatrix| -> bool {
            let d = a.sub(b);
            (0..d.cols()).all(|j| underlying.relations().contains(d.col(j)))
        };
        if !eq_mod(&action[0], &IntMatrix::identity(gens)) {
            return Err(Error::BadAction("identity element must act as identity".into()));
        }
        for g in 0..n {
            for h in 0..n {
                let composite = match side {
                    Side::Left => group.mul(g, h),
                    Side::Right => group.mul(h, g),
                };
                if !eq_mod(&action[g].mul(&action[h]), &action[composite]) {
                    return Err(Error::BadAction(format!(
                        "matrices for elements {g}, {h} do not compose along the table"
                    )));
                }
            }
        }
        Ok(GModule {
            name: name.to_string(),
            group,
            side,
            underlying,
            action,
        })
    }

    /// Any presented abelian group with every element acting trivially.
    pub fn trivial(group: Arc<FiniteGroup>, coeff: Arc<FpAbGroup>, side: Side, name: &str) -> GModule {
        let id = IntMatrix::identity(coeff.gens());
        let action = vec![id; group.order()];
        GModule {
            name: name.to_string(),
            group,
            side,
            underlying: coeff,
            action,
        }
    }

    /// The integers with trivial action.
    pub fn trivial_z(group: Arc<FiniteGroup>, side: Side) -> GModule {
        GModule::trivial(group, Arc::new(FpAbGroup::free(1)), side, "trivial:Z")
    }

    /// `Z/m` with trivial action.
    pub fn trivial_zmod(group: Arc<FiniteGroup>, m: u64, side: Side) -> GModule {
        GModule::trivial(
            group,
            Arc::new(FpAbGroup::from_factors(&[m])),
            side,
            &format!("trivial:Z/{m}"),
        )
    }

    /// The group ring itself: free on the group elements, acting by
    /// translation on the chosen side.
    pub fn regular(group: Arc<FiniteGroup>, side: Side) -> GModule {
        let n = group.order();
        let underlying = Arc::new(FpAbGroup::free(n));
        let action = (0..n)
            .map(|g| {
                IntMatrix::from_triplets(
                    n,
                    n,
                    (0..n).map(|x| {
                        let y = match side {
                            Side::Left => group.mul(g, x),
                            Side::Right => group.mul(x, g),
                        };
                        (y, x, BigInt::from(1))
                    }),
                )
            })
            .collect();
        GModule {
            name: "regular".to_string(),
            group,
            side,
            underlying,
            action,
        }
    }

    /// Kernel of the augmentation `Z[G] -> Z`, free on `x - e` for `x != e`.
    /// Generator `i` (0-based) corresponds to group element `i + 1`.
    pub fn augmentation_ideal(group: Arc<FiniteGroup>, side: Side) -> GModule {
        let n = group.order();
        assert!(n >= 1);
        let gens = n - 1;
        let underlying = Arc::new(FpAbGroup::free(gens));
        let action = (0..n)
            .map(|g| {
                let mut triplets = Vec::new();
                for x in 1..n {
                    let y = match side {
                        Side::Left => group.mul(g, x),
                        Side::Right => group.mul(x, g),
                    };
                    // g·(x - e) = (y - e) - (g - e), with (e - e) = 0
                    if y != 0 {
                        triplets.push((y - 1, x - 1, BigInt::from(1)));
                    }
                    if g != 0 {
                        triplets.push((g - 1, x - 1, BigInt::from(-1)));
                    }
                }
                IntMatrix::from_triplets(gens, gens, triplets)
            })
            .collect();
        GModule {
            name: "augideal".to_string(),
            group,
            side,
            underlying,
            action,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn underlying(&self) -> &Arc<FpAbGroup> {
        &self.underlying
    }

    /// Number of generators of the underlying presentation.
    pub fn gens(&self) -> usize {
        self.underlying.gens()
    }

    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.action[g]
    }

    pub fn action_matrices(&self) -> &[IntMatrix] {
        &self.action
    }

    /// The same module with the action rewritten for the other side via
    /// `g -> g^{-1}`.
    pub fn side_convert(&self) -> GModule {
        let action = (0..self.group.order())
            .map(|g| self.action[self.group.inv(g)].clone())
            .collect();
        GModule {
            name: self.name.clone(),
            group: self.group.clone(),
            side: self.side.flipped(),
            underlying: self.underlying.clone(),
            action,
        }
    }

    /// Ensures the stated side, converting if needed.
    pub fn with_side(&self, side: Side) -> GModule {
        if self.side == side {
            self.clone()
        } else {
            self.side_convert()
        }
    }

    /// The fixed submodule `A^G` as a presented group plus the section
    /// sending its generators into the underlying presentation.
    pub fn invariants(&self) -> Result<(FpAbGroup, IntMatrix)> {
        let gens = self.gens();
        let rel = self.underlying.relations();
        let id = IntMatrix::identity(gens);
        let diffs: Vec<IntMatrix> = (1..self.group.order())
            .map(|g| self.action[g].sub(&id))
            .collect();
        let ops: Vec<(&IntMatrix, &Lattice)> = diffs.iter().map(|d| (d, rel)).collect();
        let numerator = if ops.is_empty() {
            Lattice::full(gens)
        } else {
            preimage_multi(&ops, self.underlying.annihilator())
        };
        subquotient(&numerator, rel, self.underlying.annihilator())
    }

    /// The coinvariant quotient `A_G` plus the projection from the underlying
    /// presentation (the identity on generators).
    pub fn coinvariants(&self) -> (FpAbGroup, IntMatrix) {
        let gens = self.gens();
        let id = IntMatrix::identity(gens);
        let mut rels: Vec<_> = self.underlying.relations().basis().to_vec();
        for g in 1..self.group.order() {
            let d = self.action[g].sub(&id);
            rels.extend(d.columns().iter().cloned());
        }
        (
            FpAbGroup::new(gens, rels, self.underlying.annihilator()),
            IntMatrix::identity(gens),
        )
    }
}

/// A formal integer combination of group elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    group: Arc<FiniteGroup>,
    coeffs: Vec<BigInt>,
}

impl GroupRingElement {
    pub fn zero(group: Arc<FiniteGroup>) -> Self {
        let coeffs = vec![BigInt::zero(); group.order()];
        GroupRingElement { group, coeffs }
    }

    pub fn basis(group: Arc<FiniteGroup>, g: usize) -> Self {
        let mut e = GroupRingElement::zero(group);
        e.coeffs[g] = BigInt::from(1);
        e
    }

    /// The norm element: the sum of all group elements.
    pub fn norm(group: Arc<FiniteGroup>) -> Self {
        let coeffs = vec![BigInt::from(1); group.order()];
        GroupRingElement { group, coeffs }
    }

    pub fn from_coeffs(group: Arc<FiniteGroup>, coeffs: Vec<BigInt>) -> Self {
        assert_eq!(coeffs.len(), group.order());
        GroupRingElement { group, coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.group, other.group);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        GroupRingElement {
            group: self.group.clone(),
            coeffs,
        }
    }

    /// Convolution product along the group table.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.group, other.group);
        let n = self.group.order();
        let mut coeffs = vec![BigInt::zero(); n];
        for g in 0..n {
            if self.coeffs[g].is_zero() {
                continue;
            }
            for h in 0..n {
                if other.coeffs[h].is_zero() {
                    continue;
                }
                let k = self.group.mul(g, h);
                coeffs[k] += &self.coeffs[g] * &other.coeffs[h];
            }
        }
        GroupRingElement {
            group: self.group.clone(),
            coeffs,
        }
    }

    /// The matrix `Σ c_g · M_g` of this element acting on a module.
    pub fn matrix_on(&self, module: &GModule) -> IntMatrix {
        assert_eq!(*module.group(), self.group);
        let gens = module.gens();
        let mut acc = IntMatrix::zero(gens, gens);
        for (g, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&module.action(g).scale(c));
        }
        acc
    }
}

/// Serialized form of a module (used by the command line `file:` specifiers).
#[derive(Serialize, Deserialize)]
pub struct ModuleDto {
    pub name: String,
    pub side: Side,
    pub gens: usize,
    /// Relation matrix, one relation per column.
    pub relations: IntMatrix,
    /// Action matrices keyed by element index (as decimal strings).
    pub action: BTreeMap<String, IntMatrix>,
}

impl ModuleDto {
    pub fn from_module(m: &GModule) -> ModuleDto {
        ModuleDto {
            name: m.name().to_string(),
            side: m.side(),
            gens: m.gens(),
            relations: m.underlying().relations().basis_matrix(),
            action: m
                .action_matrices()
                .iter()
                .enumerate()
                .map(|(g, mat)| (g.to_string(), mat.clone()))
                .collect(),
        }
    }

    pub fn into_module(self, group: Arc<FiniteGroup>) -> Result<GModule> {
        if self.relations.rows() != self.gens {
            return Err(Error::Invalid(
                "relation matrix height must equal generator count".into(),
            ));
        }
        let underlying = Arc::new(FpAbGroup::new(
            self.gens,
            self.relations.columns().to_vec(),
            None,
        ));
        let mut action = Vec::with_capacity(group.order());
        for g in 0..group.order() {
            let key = g.to_string();
            let m = self
                .action
                .get(&key)
                .ok_or_else(|| Error::Invalid(format!("missing action matrix for element {g}")))?;
            action.push(m.clone());
        }
        GModule::from_parts(&self.name, group, self.side, underlying, action)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn z3() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(3))
    }

    #[test]
    fn regular_module_validates() {
        let g = z3();
        let m = GModule::regular(g.clone(), Side::Left);
        // revalidate through the checking constructor
        let ok = GModule::from_parts(
            "regular",
            g,
            Side::Left,
            m.underlying().clone(),
            m.action_matrices().to_vec(),
        );
        assert!(ok.is_ok());
    }

    #[test]
    fn wrong_side_is_rejected_for_noncommutative_groups() {
        let g = Arc::new(FiniteGroup::symmetric(3));
        let m = GModule::regular(g.clone(), Side::Left);
        let err = GModule::from_parts(
            "regular",
            g,
            Side::Right,
            m.underlying().clone(),
            m.action_matrices().to_vec(),
        );
        assert!(matches!(err, Err(Error::BadAction(_))));
    }

    #[test]
    fn augmentation_ideal_validates() {
        for side in [Side::Left, Side::Right] {
            let g = Arc::new(FiniteGroup::symmetric(3));
            let m = GModule::augmentation_ideal(g.clone(), side);
            assert_eq!(m.gens(), 5);
            let ok = GModule::from_parts(
                "augideal",
                g,
                side,
                m.underlying().clone(),
                m.action_matrices().to_vec(),
            );
            assert!(ok.is_ok());
        }
    }

    #[test]
    fn side_convert_round_trips_and_validates() {
        let g = Arc::new(FiniteGroup::symmetric(3));
        let m = GModule::regular(g.clone(), Side::Left);
        let r = m.side_convert();
        assert_eq!(r.side(), Side::Right);
        let ok = GModule::from_parts(
            "converted",
            g,
            Side::Right,
            r.underlying().clone(),
            r.action_matrices().to_vec(),
        );
        assert!(ok.is_ok());
        let back = r.side_convert();
        for g_idx in 0..m.group().order() {
            assert_eq!(back.action(g_idx), m.action(g_idx));
        }
    }

    #[test]
    fn invariants_and_coinvariants_of_regular_are_rank_one() {
        let m = GModule::regular(z3(), Side::Left);
        let (inv, section) = m.invariants().unwrap();
        assert_eq!(inv.invariant_factors(), &[b(0)]);
        // the fixed vector is the diagonal (norm) vector
        assert_eq!(section.cols(), 1);
        let col = section.col(0);
        assert!(col.iter().all(|(_, v)| *v == b(1)) && col.len() == 3);
        let (coinv, _) = m.coinvariants();
        assert_eq!(coinv.invariant_factors(), &[b(0)]);
    }

    #[test]
    fn invariants_of_trivial_mod_m() {
        let m = GModule::trivial_zmod(z3(), 4, Side::Left);
        let (inv, _) = m.invariants().unwrap();
        assert_eq!(inv.invariant_factors(), &[b(4)]);
    }

    #[test]
    fn group_ring_convolution() {
        let g = z3();
        let t = GroupRingElement::basis(g.clone(), 1);
        let t2 = t.mul(&t);
        assert_eq!(t2.coeffs()[2], b(1));
        let norm = GroupRingElement::norm(g.clone());
        let twisted = norm.mul(&t);
        assert_eq!(twisted.coeffs(), norm.coeffs());
        // norm acts on the regular module as the all-ones matrix
        let m = GModule::regular(g, Side::Left);
        let nm = norm.matrix_on(&m);
        assert_eq!(
            nm,
            IntMatrix::from_i64_rows(&[vec![1, 1, 1], vec![1, 1, 1], vec![1, 1, 1]])
        );
    }

    #[test]
    fn module_dto_round_trip() {
        let g = Arc::new(FiniteGroup::klein4());
        let m = GModule::augmentation_ideal(g.clone(), Side::Right);
        let dto = ModuleDto::from_module(&m);
        let text = serde_json::to_string(&dto).unwrap();
        let back: ModuleDto = serde_json::from_str(&text).unwrap();
        let m2 = back.into_module(g).unwrap();
        assert_eq!(m2.gens(), m.gens());
        for i in 0..4 {
            assert_eq!(m2.action(i), m.action(i));
        }
    }
}
