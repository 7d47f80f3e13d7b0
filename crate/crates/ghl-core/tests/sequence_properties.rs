//! Exactness of the two fixed-subspace short exact sequences on function
//! cochains, the resulting long sequences, and well-definedness of the
//! connecting homomorphism: perturbing a lift by anything from the
//! subcomplex leaves the connecting class unchanged because subcomplex
//! boundaries die in the subcomplex's own cohomology.

use std::sync::Arc;

use ghl_core::coeffmod::{GModule, Side};
use ghl_core::complexes::{skew_lattices, vanishing_skew_lattices, FunctionModel};
use ghl_core::groups::FiniteGroup;
use ghl_core::homology::{
    check_long_exact, check_short_exact, connecting_map, ses_from_lattices, ShortExactSequence,
};

const BUDGET: usize = 100_000;

fn cases() -> Vec<(FunctionModel, &'static str)> {
    let z2 = Arc::new(FiniteGroup::cyclic(2));
    let z3 = Arc::new(FiniteGroup::cyclic(3));
    let z4 = Arc::new(FiniteGroup::cyclic(4));
    vec![
        (
            FunctionModel::new(&GModule::trivial_zmod(z2, 2, Side::Left), 5, BUDGET)
                .expect("model fits the budget"),
            "order two with mod-two coefficients",
        ),
        (
            FunctionModel::new(&GModule::trivial_z(z3, Side::Left), 5, BUDGET)
                .expect("model fits the budget"),
            "order three with integer coefficients",
        ),
        (
            FunctionModel::new(&GModule::trivial_z(z4, Side::Left), 5, BUDGET)
                .expect("model fits the budget"),
            "order four with integer coefficients",
        ),
    ]
}

fn both_sequences(fm: FunctionModel) -> Vec<(ShortExactSequence, &'static str)> {
    let skew = skew_lattices(&fm);
    let vanishing = vanishing_skew_lattices(&fm);
    let whole = Arc::new(fm.into_complex());
    vec![
        (
            ses_from_lattices(whole.clone(), &vanishing)
                .expect("vanishing-skew functions form a subcomplex"),
            "vanishing-skew functions inside all functions",
        ),
        (
            ses_from_lattices(whole, &skew).expect("skew functions form a subcomplex"),
            "skew functions inside all functions",
        ),
    ]
}

#[test]
fn fixed_subspace_sequences_are_short_exact() {
    for (fm, label) in cases() {
        for (ses, kind) in both_sequences(fm.clone()) {
            check_short_exact(&ses).unwrap_or_else(|e| panic!("{kind} over {label}: {e}"));
        }
    }
}

#[test]
fn fixed_subspace_sequences_are_long_exact() {
    for (fm, label) in cases() {
        for (ses, kind) in both_sequences(fm.clone()) {
            let nodes = check_long_exact(&ses, 3)
                .unwrap_or_else(|e| panic!("{kind} over {label}: {e}"));
            assert!(
                nodes.len() >= 10,
                "walked {} exactness nodes for {kind} over {label}",
                nodes.len()
            );
        }
    }
}

#[test]
fn connecting_class_is_independent_of_the_chosen_lift() {
    for (fm, label) in cases() {
        for (ses, kind) in both_sequences(fm.clone()) {
            for n in 0..3usize {
                let delta = connecting_map(&ses, n)
                    .unwrap_or_else(|e| panic!("{kind} over {label} at degree {n}: {e}"));
                assert_eq!(
                    delta.source().gens(),
                    ses.quotient
                        .homology_at(n)
                        .expect("window supports the degree")
                        .group
                        .gens()
                );

                // Two lifts of a quotient cocycle differ by an element of the
                // subcomplex; applying the coboundary and pulling back lands
                // on a subcomplex coboundary, so the connecting class is
                // unchanged exactly when those die in the subcomplex's
                // cohomology one degree up.
                let hs = ses
                    .sub
                    .homology_at(n + 1)
                    .expect("window supports the next degree");
                let d_sub = ses
                    .sub
                    .map_out_of(n)
                    .expect("window carries the coboundary");
                for j in 0..d_sub.cols() {
                    let coords = hs
                        .cycles
                        .express(d_sub.col(j))
                        .expect("coboundaries are cocycles");
                    let as_col: Vec<(usize, num_bigint::BigInt)> = coords
                        .iter()
                        .cloned()
                        .enumerate()
                        .filter(|(_, v)| !num_traits::Zero::is_zero(v))
                        .collect();
                    assert!(
                        hs.group.is_zero_element(&as_col),
                        "lift perturbation {j} survives at degree {n} for {kind} over {label}"
                    );
                }
            }
        }
    }
}
