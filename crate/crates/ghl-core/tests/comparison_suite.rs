//! The tuple and subset tag bases are linked by three equivariant maps
//! (projection, antisymmetrization of subsets, antisymmetrization of tuples).
//! This suite checks their defining identities degree by degree over a
//! catalog of groups, both abelian and not, oriented and not.

use std::sync::Arc;

use ghl_core::complexes::{check_comparison_identities, BarBasis, ExtBasis};
use ghl_core::groups::FiniteGroup;

fn catalog() -> Vec<(FiniteGroup, usize)> {
    vec![
        (FiniteGroup::cyclic(2), 4),
        (FiniteGroup::cyclic(3), 4),
        (FiniteGroup::cyclic(4), 4),
        (FiniteGroup::cyclic(5), 4),
        (FiniteGroup::cyclic(6), 4),
        (FiniteGroup::klein4(), 4),
        (FiniteGroup::symmetric(3), 4),
        (FiniteGroup::dihedral(4), 3),
        (FiniteGroup::quaternion8(), 3),
    ]
}

#[test]
fn comparison_identities_hold_across_the_catalog() {
    for (group, max_degree) in catalog() {
        let group = Arc::new(group);
        let bar = BarBasis::new(group.clone());
        let ext = ExtBasis::new(group.clone()).expect("small groups index their subsets");
        for n in 1..=max_degree {
            check_comparison_identities(&bar, &ext, n)
                .unwrap_or_else(|e| panic!("{} at degree {n}: {e}", group.name()));
        }
    }
}
