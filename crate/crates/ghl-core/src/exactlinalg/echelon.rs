//! Integer column echelon reduction.
//!
//! One worker drives Hermite form, kernels, preimages, and repeated solving.
//! Columns have height `top_rows + tail`: pivot selection only looks at the
//! first `top_rows` rows, while tail rows ride along through every column
//! operation. Callers thread bookkeeping through the tail (an identity block
//! records the combination that produced each output column).
//!
//! With `modulus` Some(q), elimination keeps every entry in the balanced
//! range `(-q/2, q/2]` (so lead magnitudes strictly shrink and the Euclidean
//! descent terminates) and a virtual column `q·e_r` joins each pivot pool, so
//! pivots divide q and values stay bounded. This computes with the lattice
//! `span(input) + q·Z^height`, which coincides with `span(input)` exactly
//! when the caller already knows the span contains `q·Z^height`; every call
//! site with a modulus relies on that. Canonical output is unaffected:
//! `left_reduce` still normalizes entries at pivot rows into `[0, pivot)`.

use super::matrix::{col_axpy, col_neg, col_reduce_mod, col_reduce_mod_balanced, Col};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;

/// Result of a column echelon run.
pub(crate) struct Echelon {
    /// Pivot columns in increasing pivot-row order. Each column's first entry
    /// sits at the pivot row and is positive.
    pub pivots: Vec<(usize, Col)>,
    /// Columns whose restriction to the top zone vanished; only tail entries
    /// remain. Empty columns are dropped, not reported.
    pub nulls: Vec<Col>,
}

/// Nearest-integer quotient for positive `b`; the remainder `a - q*b` lies in
/// `[-b/2, b/2]`.
fn rounded_div(a: &BigInt, b: &BigInt) -> BigInt {
    debug_assert!(b.is_positive());
    let (q, r) = a.div_mod_floor(b);
    if r * 2 > *b {
        q + 1
    } else {
        q
    }
}

/// Reduces the input columns to column echelon form over the top zone.
///
/// When `canonical` is set the output is the column Hermite normal form of
/// the spanned lattice: pivots positive, entries at later pivot rows reduced
/// into `[0, pivot)`, and (with a modulus) a `q` pivot inserted at every
/// otherwise unpivoted top row so the form is full rank.
pub(crate) fn column_echelon(
    top_rows: usize,
    input: Vec<Col>,
    modulus: Option<&BigInt>,
    canonical: bool,
) -> Echelon {
    let mut store: Vec<Col> = Vec::with_capacity(input.len() + 8);
    let mut queue: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut nulls: Vec<Col> = Vec::new();
    let mut pivots: Vec<(usize, Col)> = Vec::new();

    for mut col in input {
        col.retain(|(_, v)| !v.is_zero());
        if let Some(q) = modulus {
            col_reduce_mod_balanced(&mut col, q);
        }
        match col.first() {
            None => {}
            Some(&(r, _)) if r >= top_rows => nulls.push(col),
            Some(&(r, _)) => {
                let id = store.len();
                store.push(col);
                queue.entry(r).or_default().push(id);
            }
        }
    }

    while let Some((&r, _)) = queue.iter().next() {
        let mut cands = queue.remove(&r).unwrap();
        if let Some(q) = modulus {
            let id = store.len();
            store.push(vec![(r, q.clone())]);
            cands.push(id);
        }
        loop {
            // Smallest lead magnitude wins; earliest candidate breaks ties.
            let mut best = 0;
            for (i, &id) in cands.iter().enumerate().skip(1) {
                if store[id][0].1.magnitude() < store[cands[best]][0].1.magnitude() {
                    best = i;
                }
            }
            let piv_id = cands.remove(best);
            let mut piv = std::mem::take(&mut store[piv_id]);
            if piv[0].1.is_negative() {
                col_neg(&mut piv);
            }
            if cands.is_empty() {
                pivots.push((r, piv));
                break;
            }
            let pval = piv[0].1.clone();
            let mut stay = Vec::new();
            for id in std::mem::take(&mut cands) {
                let quo = rounded_div(&store[id][0].1, &pval);
                if !quo.is_zero() {
                    let mut newc = col_axpy(&store[id], &-quo, &piv);
                    if let Some(q) = modulus {
                        col_reduce_mod_balanced(&mut newc, q);
                    }
                    store[id] = newc;
                }
                match store[id].first() {
                    None => {}
                    Some(&(rr, _)) if rr == r => stay.push(id),
                    Some(&(rr, _)) if rr >= top_rows => {
                        nulls.push(std::mem::take(&mut store[id]))
                    }
                    Some(&(rr, _)) => queue.entry(rr).or_default().push(id),
                }
            }
            store[piv_id] = piv;
            cands = stay;
            cands.push(piv_id);
        }
    }

    if canonical {
        if let Some(q) = modulus {
            // Unpivoted top rows get the modulus itself as pivot, making the
            // form square and full rank, which is what uniqueness needs here.
            let mut merged = Vec::with_capacity(top_rows);
            let mut it = pivots.into_iter().peekable();
            for r in 0..top_rows {
                if it.peek().is_some_and(|(pr, _)| *pr == r) {
                    merged.push(it.next().unwrap());
                } else {
                    merged.push((r, vec![(r, q.clone())]));
                }
            }
            debug_assert!(it.next().is_none());
            pivots = merged;
        }
        left_reduce(&mut pivots, top_rows, modulus);
    }

    Echelon { pivots, nulls }
}

/// Reduces every entry sitting at a later pivot's row into `[0, pivot)`.
/// After this pass the top zone of the pivot columns is the unique Hermite
/// representative of the spanned lattice.
fn left_reduce(pivots: &mut [(usize, Col)], top_rows: usize, modulus: Option<&BigInt>) {
    let mut pivot_of_row = vec![usize::MAX; top_rows];
    for (k, (r, _)) in pivots.iter().enumerate() {
        pivot_of_row[*r] = k;
    }
    for j in 0..pivots.len() {
        // walk entries below the own pivot row; an axpy only touches rows at
        // or after the acted row, so the watermark never has to back up
        let mut watermark = pivots[j].0;
        loop {
            let (rr, e) = {
                let col = &pivots[j].1;
                let lo = col.partition_point(|(r, _)| *r <= watermark);
                match col.get(lo) {
                    None => break,
                    Some((r, v)) => (*r, v.clone()),
                }
            };
            if rr >= top_rows {
                break;
            }
            watermark = rr;
            let k = pivot_of_row[rr];
            if k == usize::MAX {
                continue;
            }
            debug_assert!(k > j, "pivot rows must increase with pivot index");
            let quo = e.div_mod_floor(&pivots[k].1[0].1).0;
            if quo.is_zero() {
                continue;
            }
            let other = std::mem::take(&mut pivots[k].1);
            let mut newc = col_axpy(&pivots[j].1, &-quo, &other);
            if let Some(q) = modulus {
                col_reduce_mod(&mut newc, q);
            }
            pivots[k].1 = other;
            pivots[j].1 = newc;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn dense_cols(cols: &[Vec<i64>]) -> Vec<Col> {
        cols.iter()
            .map(|c| {
                c.iter()
                    .enumerate()
                    .filter(|(_, v)| **v != 0)
                    .map(|(i, v)| (i, b(*v)))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn gcd_appears_as_pivot() {
        // Columns (6) and (10) over one row: pivot must be gcd = 2.
        let e = column_echelon(1, dense_cols(&[vec![6], vec![10]]), None, true);
        assert_eq!(e.pivots.len(), 1);
        assert_eq!(e.pivots[0].1, vec![(0, b(2))]);
    }

    #[test]
    fn staircase_and_left_reduction() {
        // span{(2,0), (3,1)}: Hermite basis is (1, ?), ... compute and check
        // structure: pivots positive, earlier columns reduced.
        let e = column_echelon(2, dense_cols(&[vec![2, 0], vec![3, 1]]), None, true);
        assert_eq!(e.pivots.len(), 2);
        let (r0, c0) = &e.pivots[0];
        let (r1, c1) = &e.pivots[1];
        assert_eq!((*r0, *r1), (0, 1));
        // pivot entries positive
        assert!(c0[0].1.is_positive() && c1[0].1.is_positive());
        // entry of first column at second pivot row lies in [0, pivot)
        let at = c0.iter().find(|(r, _)| *r == *r1).map(|(_, v)| v.clone());
        if let Some(v) = at {
            assert!(v >= b(0) && v < c1[0].1);
        }
    }

    #[test]
    fn modular_reduction_terminates_on_wrapping_remainders() {
        // Leads 3 and 5 under modulus 6: the remainder 5 - 2*3 = -1 wraps to
        // 5 in `[0, 6)` representation, which used to recreate the same state
        // every round. Balanced residues keep it at -1 and finish instantly.
        let e = column_echelon(1, dense_cols(&[vec![3], vec![5]]), Some(&b(6)), true);
        assert_eq!(e.pivots.len(), 1);
        assert_eq!(e.pivots[0].1, vec![(0, b(1))]);

        // Same shape one level up: gcd(4, 5, 6) = 1 via wrapped remainders.
        let e = column_echelon(2, dense_cols(&[vec![4, 1], vec![5, 0]]), Some(&b(6)), true);
        assert_eq!(e.pivots.len(), 2);
        assert_eq!(e.pivots[0].1[0], (0, b(1)));
    }

    #[test]
    fn modulus_inserts_full_rank_pivots() {
        let e = column_echelon(3, dense_cols(&[vec![2, 0, 0]]), Some(&b(4)), true);
        assert_eq!(e.pivots.len(), 3);
        assert_eq!(e.pivots[0].1, vec![(0, b(2))]);
        assert_eq!(e.pivots[1].1, vec![(1, b(4))]);
        assert_eq!(e.pivots[2].1, vec![(2, b(4))]);
    }

    #[test]
    fn tail_records_combinations() {
        // One top row, columns 4 and 6 with identity tail: pivot 2 with some
        // tail recording a Bezout combination; null column spans the kernel.
        let cols = vec![vec![(0, b(4)), (1, b(1))], vec![(0, b(6)), (2, b(1))]];
        let e = column_echelon(1, cols, None, false);
        assert_eq!(e.pivots.len(), 1);
        assert_eq!(e.pivots[0].1[0], (0, b(2)));
        assert_eq!(e.nulls.len(), 1);
        // the null tail (x, y) satisfies 4x + 6y = 0
        let x = e.nulls[0]
            .iter()
            .find(|(r, _)| *r == 1)
            .map_or(BigInt::zero(), |(_, v)| v.clone());
        let y = e.nulls[0]
            .iter()
            .find(|(r, _)| *r == 2)
            .map_or(BigInt::zero(), |(_, v)| v.clone());
        assert_eq!(b(4) * &x + b(6) * &y, b(0));
        assert!(!x.is_zero() || !y.is_zero());
    }
}
