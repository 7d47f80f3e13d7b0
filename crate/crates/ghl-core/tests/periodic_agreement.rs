//! Agreement between the simplicial models over the bar basis and the
//! two-periodic resolution available for cyclic groups, in homology and in
//! cohomology, across free, torsion, and regular coefficients.

use std::sync::Arc;

use ghl_core::coeffmod::{GModule, Side};
use ghl_core::complexes::{
    hom_complex, periodic_chain_complex, periodic_cochain_complex, tensor_complex, BarBasis,
};
use ghl_core::groups::FiniteGroup;

const BUDGET: usize = 100_000;
const TOP: usize = 5;

fn coefficient_cases(m: usize) -> Vec<GModule> {
    let group = Arc::new(FiniteGroup::cyclic(m));
    let mut cases = vec![
        GModule::trivial_z(group.clone(), Side::Right),
        GModule::trivial_zmod(group.clone(), m as u64, Side::Right),
    ];
    if m <= 4 {
        cases.push(GModule::regular(group.clone(), Side::Right));
        cases.push(GModule::augmentation_ideal(group, Side::Right));
    }
    cases
}

#[test]
fn bar_homology_matches_the_periodic_resolution() {
    for m in 2..=6usize {
        for module in coefficient_cases(m) {
            let bar = BarBasis::new(module.group().clone());
            let simplicial =
                tensor_complex(&bar, &module, TOP, BUDGET).expect("model fits the budget");
            let periodic = periodic_chain_complex(&module, TOP).expect("group is cyclic");
            for degree in 0..TOP {
                let left = simplicial
                    .complex
                    .homology_at(degree)
                    .expect("window supports the degree")
                    .group
                    .invariant_factor_strings();
                let right = periodic
                    .homology_at(degree)
                    .expect("window supports the degree")
                    .group
                    .invariant_factor_strings();
                assert_eq!(
                    left,
                    right,
                    "homology at degree {degree} of {} with {}",
                    module.group().name(),
                    module.name()
                );
            }
        }
    }
}

#[test]
fn bar_cohomology_matches_the_periodic_resolution() {
    for m in 2..=6usize {
        for module in coefficient_cases(m) {
            let module = module.with_side(Side::Left);
            let bar = BarBasis::new(module.group().clone());
            let simplicial =
                hom_complex(&bar, &module, TOP, BUDGET).expect("model fits the budget");
            let periodic = periodic_cochain_complex(&module, TOP).expect("group is cyclic");
            for degree in 0..TOP {
                let left = simplicial
                    .complex
                    .homology_at(degree)
                    .expect("window supports the degree")
                    .group
                    .invariant_factor_strings();
                let right = periodic
                    .homology_at(degree)
                    .expect("window supports the degree")
                    .group
                    .invariant_factor_strings();
                assert_eq!(
                    left,
                    right,
                    "cohomology at degree {degree} of {} with {}",
                    module.group().name(),
                    module.name()
                );
            }
        }
    }
}
