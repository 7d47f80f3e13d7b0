//! Comparison maps between the simplicial and alternating tag bases.
//!
//! Three equivariant tag-level maps connect the two bases in each degree:
//!
//! * `lambda`: send a tuple to its sorted subset with the sorting parity as
//!   sign, or to zero if two entries coincide (projection onto the exterior
//!   power);
//! * `nu`: send a subset to the signed sum of all orderings of its entries
//!   (antisymmetrization of the increasing representative);
//! * `mu`: send a tuple to the signed sum of all permutations of its entries.
//!
//! They satisfy, degree by degree, the exact identities
//!
//! 1. `lambda ∘ nu = (n+1)! · id`
//! 2. `lambda ∘ ∂ = ∂ ∘ lambda`
//! 3. `∂ ∘ mu = (n+1) · mu ∘ ∂`
//! 4. `∂ ∘ nu = (n+1) · nu ∘ ∂`
//!
//! checked here as streamed column identities over the free tag modules.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::{Error, Result};

use super::basis::{BarBasis, ExtBasis, SignedBasis};

/// `lambda` on one tuple tag: the sorted subset with parity, or `None` on a
/// repeated entry.
pub fn lambda_tag(bar: &BarBasis, ext: &ExtBasis, n: usize, tag: usize) -> Option<(usize, i64)> {
    let mut entries = bar.decode(n, tag);
    let sign = ExtBasis::sort_with_sign(&mut entries)?;
    let idx = ext
        .index_of(&entries)
        .expect("sorted distinct entries form a subset tag");
    Some((idx, sign))
}

/// `nu` on one subset tag: the signed sum of all orderings of its entries.
pub fn nu_tag(ext: &ExtBasis, bar: &BarBasis, n: usize, tag: usize) -> Vec<(usize, i64)> {
    signed_permutations(bar, ext.entries(n, tag))
}

/// `mu` on one tuple tag: the signed sum of all permutations of its entries.
/// Cancellation (total for tuples with a repeated entry) is left to the
/// accumulating caller.
pub fn mu_tag(bar: &BarBasis, n: usize, tag: usize) -> Vec<(usize, i64)> {
    signed_permutations(bar, &bar.decode(n, tag))
}

/// All `(permuted tuple, parity)` pairs of a slice, by Heap's algorithm.
fn signed_permutations(bar: &BarBasis, entries: &[usize]) -> Vec<(usize, i64)> {
    let mut work = entries.to_vec();
    let k = work.len();
    let mut counters = vec![0usize; k];
    let mut out = Vec::with_capacity((1..=k).product());
    let mut sign = 1i64;
    out.push((bar.encode(&work), sign));
    let mut i = 1;
    while i < k {
        if counters[i] < i {
            if i % 2 == 0 {
                work.swap(0, i);
            } else {
                work.swap(counters[i], i);
            }
            sign = -sign;
            out.push((bar.encode(&work), sign));
            counters[i] += 1;
            i = 1;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
    out
}

fn accumulate(into: &mut BTreeMap<usize, BigInt>, terms: &[(usize, i64)], scale: i64) {
    for &(tag, c) in terms {
        let entry = into.entry(tag).or_default();
        *entry += BigInt::from(c) * BigInt::from(scale);
        if entry.is_zero() {
            into.remove(&tag);
        }
    }
}

fn factorial(k: usize) -> i64 {
    (1..=k as i64).product()
}

/// Checks all four comparison identities at degree `n >= 1` for one group,
/// streaming over the tag columns. Returns the first violated identity with
/// the offending tag.
pub fn check_comparison_identities(bar: &BarBasis, ext: &ExtBasis, n: usize) -> Result<()> {
    let bar_dim = bar.dim(n).ok_or_else(|| {
        Error::Invalid(format!("degree {n} tuple count overflows"))
    })?;
    let ext_dim = ext.dim(n).unwrap_or(0);
    let scale = BigInt::from(n as i64 + 1);

    // (1) and (4): columns indexed by subset tags.
    for tag in 0..ext_dim {
        let image = nu_tag(ext, bar, n, tag);
        // lambda ∘ nu = (n+1)! id.
        let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
        for &(t, c) in &image {
            if let Some((w, s)) = lambda_tag(bar, ext, n, t) {
                accumulate(&mut acc, &[(w, s)], c);
            }
        }
        let expected: BTreeMap<usize, BigInt> =
            [(tag, BigInt::from(factorial(n + 1)))].into_iter().collect();
        if acc != expected {
            return Err(Error::Invalid(format!(
                "lambda∘nu != {}!·id at degree {n}, subset tag {tag}",
                n + 1
            )));
        }
        // ∂ ∘ nu = (n+1) · nu ∘ ∂.
        let mut lhs: BTreeMap<usize, BigInt> = BTreeMap::new();
        for &(t, c) in &image {
            accumulate(&mut lhs, &bar.boundary(n, t), c);
        }
        let mut rhs: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (w, c) in ext.boundary(n, tag) {
            for &(t, s) in &nu_tag(ext, bar, n - 1, w) {
                let entry = rhs.entry(t).or_default();
                *entry += BigInt::from(s) * BigInt::from(c) * &scale;
                if entry.is_zero() {
                    rhs.remove(&t);
                }
            }
        }
        if lhs != rhs {
            return Err(Error::Invalid(format!(
                "∂∘nu != (n+1)·nu∘∂ at degree {n}, subset tag {tag}"
            )));
        }
    }

    // (2) and (3): columns indexed by tuple tags.
    for tag in 0..bar_dim {
        // lambda ∘ ∂ = ∂ ∘ lambda.
        let mut lhs: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (t, c) in bar.boundary(n, tag) {
            if let Some((w, s)) = lambda_tag(bar, ext, n - 1, t) {
                accumulate(&mut lhs, &[(w, s)], c);
            }
        }
        let mut rhs: BTreeMap<usize, BigInt> = BTreeMap::new();
        if let Some((w, s)) = lambda_tag(bar, ext, n, tag) {
            accumulate(&mut rhs, &ext.boundary(n, w), s);
        }
        if lhs != rhs {
            return Err(Error::Invalid(format!(
                "lambda∘∂ != ∂∘lambda at degree {n}, tuple tag {tag}"
            )));
        }
        // ∂ ∘ mu = (n+1) · mu ∘ ∂.
        let mut lhs: BTreeMap<usize, BigInt> = BTreeMap::new();
        for &(t, c) in &mu_tag(bar, n, tag) {
            accumulate(&mut lhs, &bar.boundary(n, t), c);
        }
        let mut rhs: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (t, c) in bar.boundary(n, tag) {
            for &(u, s) in &mu_tag(bar, n - 1, t) {
                let entry = rhs.entry(u).or_default();
                *entry += BigInt::from(s) * BigInt::from(c) * &scale;
                if entry.is_zero() {
                    rhs.remove(&u);
                }
            }
        }
        if lhs != rhs {
            return Err(Error::Invalid(format!(
                "∂∘mu != (n+1)·mu∘∂ at degree {n}, tuple tag {tag}"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::FiniteGroup;
    use std::sync::Arc;

    #[test]
    fn lambda_kills_repeats_and_signs_sorts() {
        let g = Arc::new(FiniteGroup::cyclic(3));
        let bar = BarBasis::new(g.clone());
        let ext = ExtBasis::new(g).unwrap();
        assert!(lambda_tag(&bar, &ext, 1, bar.encode(&[1, 1])).is_none());
        let (w, s) = lambda_tag(&bar, &ext, 1, bar.encode(&[2, 1])).unwrap();
        assert_eq!(ext.entries(1, w), &[1, 2]);
        assert_eq!(s, -1);
    }

    #[test]
    fn mu_of_repeated_tuple_cancels() {
        let g = Arc::new(FiniteGroup::cyclic(3));
        let bar = BarBasis::new(g);
        let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
        accumulate(&mut acc, &mu_tag(&bar, 2, bar.encode(&[1, 1, 2])), 1);
        assert!(acc.is_empty());
    }

    #[test]
    fn nu_antisymmetrizes_subsets() {
        let g = Arc::new(FiniteGroup::cyclic(3));
        let bar = BarBasis::new(g.clone());
        let ext = ExtBasis::new(g).unwrap();
        let tag = ext.index_of(&[0, 2]).unwrap();
        let terms = nu_tag(&ext, &bar, 1, tag);
        assert_eq!(terms.len(), 2);
        let map: BTreeMap<usize, i64> = terms.into_iter().collect();
        assert_eq!(map[&bar.encode(&[0, 2])], 1);
        assert_eq!(map[&bar.encode(&[2, 0])], -1);
    }

    #[test]
    fn identities_hold_for_small_cyclic_groups() {
        for order in [2usize, 3, 4] {
            let g = Arc::new(FiniteGroup::cyclic(order));
            let bar = BarBasis::new(g.clone());
            let ext = ExtBasis::new(g).unwrap();
            for n in 1..=3 {
                check_comparison_identities(&bar, &ext, n).unwrap();
            }
        }
    }

    #[test]
    fn signed_permutation_count_and_parity() {
        let g = Arc::new(FiniteGroup::cyclic(4));
        let bar = BarBasis::new(g);
        let perms = signed_permutations(&bar, &[0, 1, 2]);
        assert_eq!(perms.len(), 6);
        let total: i64 = perms.iter().map(|&(_, s)| s).sum();
        assert_eq!(total, 0, "three positive, three negative");
    }
}
