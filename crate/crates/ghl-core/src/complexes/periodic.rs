//! The 2-periodic free resolution of a cyclic group, used as an independent
//! oracle for classical (co)homology.
//!
//! With `t` a generator of a cyclic group of order `m`, the resolution
//!
//! ```text
//! ... --norm--> Z[G] --(t - 1)--> Z[G] --norm--> Z[G] --(t - 1)--> Z[G] --> Z --> 0
//! ```
//!
//! is free of rank one in every degree, so applying `A ⊗_{Z[G]} -` or
//! `Hom_{Z[G]}(-, A)` gives one copy of `A` per degree, with maps alternating
//! between `t - 1` and the norm. Nothing here touches the simplicial models;
//! agreement of homology is a cross-check between genuinely different
//! resolutions.

use std::sync::Arc;

use crate::coeffmod::{GModule, GroupRingElement, Side};
use crate::exactlinalg::IntMatrix;
use crate::{Error, Result};

use super::chain::{ComplexOfFp, Direction};

/// A generator of the group when it is cyclic.
fn full_order_element(module: &GModule) -> Result<usize> {
    let group = module.group();
    let order = group.order();
    (0..order)
        .find(|&g| group.element_order(g) == order)
        .ok_or_else(|| {
            Error::Invalid(format!(
                "the periodic resolution needs a cyclic group; {} has no element of full order",
                group.name()
            ))
        })
}

/// The two alternating maps on coefficients: `t - 1` and the norm.
fn alternating_maps(module: &GModule) -> Result<(IntMatrix, IntMatrix)> {
    let t = full_order_element(module)?;
    let a = module.gens();
    let t_minus_one = module.action(t).sub(&IntMatrix::identity(a));
    let norm = GroupRingElement::norm(module.group().clone()).matrix_on(module);
    Ok((t_minus_one, norm))
}

fn degree_groups(module: &GModule, top: usize) -> Vec<Arc<crate::exactlinalg::FpAbGroup>> {
    (0..=top).map(|_| module.underlying().clone()).collect()
}

/// Homology of a cyclic group with right coefficients, computed from the
/// periodic resolution: one copy of `A` per degree, boundary `t - 1` into
/// even degrees and the norm into odd degrees.
pub fn periodic_chain_complex(module: &GModule, top: usize) -> Result<ComplexOfFp> {
    let module = if module.side() == Side::Right {
        module.clone()
    } else {
        module.side_convert()
    };
    let (t_minus_one, norm) = alternating_maps(&module)?;
    let maps = (0..top)
        .map(|k| {
            if (k + 1) % 2 == 1 {
                t_minus_one.clone()
            } else {
                norm.clone()
            }
        })
        .collect();
    ComplexOfFp::new(Direction::Chain, degree_groups(&module, top), maps, false)
}

/// Cohomology of a cyclic group with left coefficients, computed from the
/// periodic resolution: one copy of `A` per degree, `t - 1` out of even
/// degrees and the norm out of odd degrees.
pub fn periodic_cochain_complex(module: &GModule, top: usize) -> Result<ComplexOfFp> {
    let module = if module.side() == Side::Left {
        module.clone()
    } else {
        module.side_convert()
    };
    let (t_minus_one, norm) = alternating_maps(&module)?;
    let maps = (0..top)
        .map(|k| {
            if k % 2 == 0 {
                t_minus_one.clone()
            } else {
                norm.clone()
            }
        })
        .collect();
    ComplexOfFp::new(Direction::Cochain, degree_groups(&module, top), maps, false)
}
