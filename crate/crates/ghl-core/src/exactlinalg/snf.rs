//! Smith normal form: a dense transform-tracking routine for small matrices
//! and a sparse diagonal-only pipeline used for invariant factors of large
//! presentations.

use super::echelon::column_echelon;
use super::matrix::{Col, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Full Smith decomposition: `s = p · m · q` with `p`, `q` unimodular and `s`
/// diagonal, each diagonal entry nonnegative and dividing the next.
pub struct Snf {
    pub s: IntMatrix,
    pub p: IntMatrix,
    pub q: IntMatrix,
}

/// Computes the Smith normal form with transforms. Dense working storage, so
/// intended for the moderate sizes where the transforms are actually wanted;
/// use [`snf_diagonal`] when only the diagonal matters.
pub fn snf(m: &IntMatrix) -> Snf {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| (0..cols).map(|j| m.entry(i, j)).collect())
        .collect();
    let mut p: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            (0..rows)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let mut q: Vec<Vec<BigInt>> = (0..cols)
        .map(|i| {
            (0..cols)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();

    let n = rows.min(cols);
    for t in 0..n {
        diagonalize_at(&mut a, &mut p, &mut q, t);
    }
    // enforce the divisibility chain
    let mut t = 0;
    while t + 1 < n {
        if a[t][t].is_zero() || a[t + 1][t + 1].is_zero() {
            t += 1;
            continue;
        }
        if (&a[t + 1][t + 1] % &a[t][t]).is_zero() {
            t += 1;
            continue;
        }
        // fold the next diagonal entry into position t and redo
        for i in 0..rows {
            let v = a[i][t + 1].clone();
            a[i][t] += v;
        }
        for i in 0..cols {
            let v = q[i][t + 1].clone();
            q[i][t] += v;
        }
        diagonalize_at(&mut a, &mut p, &mut q, t);
        t = t.saturating_sub(1);
    }
    for t in 0..n {
        if a[t][t].is_negative() {
            for j in 0..cols {
                a[t][j] = -a[t][j].clone();
            }
            for j in 0..rows {
                p[t][j] = -p[t][j].clone();
            }
        }
    }

    let s = IntMatrix::from_triplets(
        rows,
        cols,
        (0..n).map(|t| (t, t, a[t][t].clone())),
    );
    let p = dense_to_matrix(&p);
    let q = dense_to_matrix(&q);
    debug_assert_eq!(p.mul(m).mul(&q), s, "snf transform bookkeeping broke");
    Snf { s, p, q }
}

/// Clears row `t` and column `t` of `a` (below/right of the pivot), moving a
/// nonzero pivot into `(t, t)` first when one exists in the submatrix.
fn diagonalize_at(
    a: &mut [Vec<BigInt>],
    p: &mut [Vec<BigInt>],
    q: &mut [Vec<BigInt>],
    t: usize,
) {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    'outer: loop {
        // smallest nonzero magnitude in the trailing submatrix becomes pivot
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j].is_zero() {
                    continue;
                }
                if pivot.is_none_or(|(pi, pj)| a[i][j].magnitude() < a[pi][pj].magnitude()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else {
            return;
        };
        a.swap(t, pi);
        p.swap(t, pi);
        if pj != t {
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            for row in q.iter_mut() {
                row.swap(t, pj);
            }
        }
        // reduce column t
        for i in t + 1..rows {
            if a[i][t].is_zero() {
                continue;
            }
            let quo = a[i][t].div_mod_floor(&a[t][t]).0;
            if !quo.is_zero() {
                for j in 0..cols {
                    let v = &quo * &a[t][j];
                    a[i][j] -= v;
                }
                for j in 0..rows {
                    let v = &quo * &p[t][j];
                    p[i][j] -= v;
                }
            }
            if !a[i][t].is_zero() {
                continue 'outer;
            }
        }
        // reduce row t
        for j in t + 1..cols {
            if a[t][j].is_zero() {
                continue;
            }
            let quo = a[t][j].div_mod_floor(&a[t][t]).0;
            if !quo.is_zero() {
                for i in 0..rows {
                    let v = &quo * &a[i][t];
                    a[i][j] -= v;
                }
                for i in 0..cols {
                    let v = &quo * &q[i][t];
                    q[i][j] -= v;
                }
            }
            if !a[t][j].is_zero() {
                continue 'outer;
            }
        }
        return;
    }
}

fn dense_to_matrix(d: &[Vec<BigInt>]) -> IntMatrix {
    let rows = d.len();
    let cols = d.first().map_or(0, |r| r.len());
    IntMatrix::from_triplets(
        rows,
        cols,
        d.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(move |(j, v)| (i, j, v.clone()))
        }),
    )
}

/// Sorts a multiset of nonzero diagonal values into a divisibility chain
/// (gcd/lcm exchanges preserve the presented group).
pub fn normalize_divisibility_chain(mut d: Vec<BigInt>) -> Vec<BigInt> {
    for v in &mut d {
        assert!(!v.is_zero());
        if v.is_negative() {
            *v = -v.clone();
        }
    }
    loop {
        d.sort();
        let mut changed = false;
        for i in 0..d.len() {
            for j in i + 1..d.len() {
                if (&d[j] % &d[i]).is_zero() {
                    continue;
                }
                let g = d[i].gcd(&d[j]);
                let l = &d[i] / &g * &d[j];
                d[i] = g;
                d[j] = l;
                changed = true;
            }
        }
        if !changed {
            return d;
        }
    }
}

/// Diagonal of the Smith normal form of the `rows x gens.len()` matrix whose
/// columns are `gens`; with `modulus` Some(q), of that matrix augmented with
/// `q·I` (same caller contract as elsewhere: use it only when the span is
/// already known to contain `q·Z^rows`).
///
/// Works entirely on sparse columns by alternating canonical column echelon
/// passes with transposition until the form is diagonal; unit pivots are
/// retired between passes. Returns the full diagonal: leading ones, the
/// nontrivial chain, then zeros.
pub fn snf_diagonal(rows: usize, gens: &[Col], modulus: Option<&BigInt>) -> Vec<BigInt> {
    let total_len = if modulus.is_some() {
        rows
    } else {
        rows.min(gens.len())
    };
    let mut work: Vec<Col> = gens.to_vec();
    let mut nrows = rows;
    let mut ones = 0usize;

    let mut passes = 0;
    let diag: Vec<BigInt> = loop {
        passes += 1;
        assert!(passes <= 1000, "alternating echelon failed to converge");
        let ech = column_echelon(nrows, work, modulus, true);
        // retire unit pivots: in canonical form the pivot row of a unit pivot
        // is clear in every other column, and clearing the unit column below
        // its pivot only touches that column, so row and column both drop.
        let mut dropped_rows: Vec<usize> = Vec::new();
        let mut kept: Vec<(usize, Col)> = Vec::new();
        for (r, col) in ech.pivots {
            if col[0].1.is_one() {
                ones += 1;
                dropped_rows.push(r);
            } else {
                kept.push((r, col));
            }
        }
        // remap surviving rows to a compact range
        let row_map = compact_map(nrows, &dropped_rows);
        let kept_cols: Vec<Col> = kept
            .iter()
            .map(|(_, col)| {
                col.iter()
                    .filter_map(|(r, v)| row_map[*r].map(|nr| (nr, v.clone())))
                    .collect()
            })
            .collect();
        let kept_rows = nrows - dropped_rows.len();

        if kept_cols.iter().all(|c| c.len() == 1) {
            break kept_cols.iter().map(|c| c[0].1.clone()).collect();
        }
        // transpose and go again
        work = transpose_cols(kept_rows, &kept_cols);
        nrows = kept_cols.len();
    };

    let mut chain: Vec<BigInt> = vec![BigInt::one(); ones];
    chain.extend(diag);
    let mut chain = normalize_divisibility_chain(chain);
    assert!(chain.len() <= total_len, "rank exceeded diagonal length");
    while chain.len() < total_len {
        chain.push(BigInt::zero());
    }
    chain
}

/// Maps old row indices to compact new ones, `None` for dropped rows.
fn compact_map(nrows: usize, dropped: &[usize]) -> Vec<Option<usize>> {
    let mut dead = vec![false; nrows];
    for &r in dropped {
        dead[r] = true;
    }
    let mut map = vec![None; nrows];
    let mut next = 0;
    for (r, m) in map.iter_mut().enumerate() {
        if !dead[r] {
            *m = Some(next);
            next += 1;
        }
    }
    map
}

fn transpose_cols(nrows: usize, cols: &[Col]) -> Vec<Col> {
    let mut out: Vec<Col> = vec![Vec::new(); nrows];
    for (j, col) in cols.iter().enumerate() {
        for (r, v) in col {
            out[*r].push((j, v.clone()));
        }
    }
    // entries arrive in increasing column order per row already
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn textbook_example() {
        // diag of SNF of [[2,4,4],[-6,6,12],[10,-4,-16]] is (2, 6, 12)
        let m = IntMatrix::from_i64_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let d = snf(&m);
        assert_eq!(d.s.entry(0, 0), b(2));
        assert_eq!(d.s.entry(1, 1), b(6));
        assert_eq!(d.s.entry(2, 2), b(12));
    }

    #[test]
    fn transforms_multiply_back() {
        let m = IntMatrix::from_i64_rows(&[vec![1, 2, 3], vec![4, 5, 6]]);
        let d = snf(&m);
        assert_eq!(d.p.mul(&m).mul(&d.q), d.s);
    }

    #[test]
    fn sparse_diagonal_matches_dense() {
        let m = IntMatrix::from_i64_rows(&[
            vec![2, 4, 4],
            vec![-6, 6, 12],
            vec![10, -4, -16],
        ]);
        let dense = snf(&m);
        let sparse = snf_diagonal(3, m.columns(), None);
        let expect: Vec<BigInt> = (0..3).map(|t| dense.s.entry(t, t)).collect();
        assert_eq!(sparse, expect);
    }

    #[test]
    fn diagonal_multiset_is_rearranged_into_chain() {
        // diag(2, 3) presents Z_6, whose chain is (1, 6)
        let m = IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]]);
        let d = snf_diagonal(2, m.columns(), None);
        assert_eq!(d, vec![b(1), b(6)]);
    }

    #[test]
    fn zeros_count_rank_deficiency() {
        let m = IntMatrix::from_i64_rows(&[vec![2, 2], vec![2, 2]]);
        let d = snf_diagonal(2, m.columns(), None);
        assert_eq!(d, vec![b(2), b(0)]);
    }

    #[test]
    fn modulus_path_agrees_with_augmented_plain_path() {
        // columns of a 3x2 matrix, modulus 6
        let m = IntMatrix::from_i64_rows(&[vec![2, 1], vec![0, 3], vec![4, 5]]);
        let with_mod = snf_diagonal(3, m.columns(), Some(&b(6)));
        let aug = IntMatrix::hstack(&[&m, &IntMatrix::identity(3).scale(&b(6))]);
        let plain = snf_diagonal(3, aug.columns(), None);
        assert_eq!(with_mod, plain);
    }

    #[test]
    fn chain_normalization() {
        let d = normalize_divisibility_chain(vec![b(4), b(6)]);
        assert_eq!(d, vec![b(2), b(12)]);
    }
}
