//! Row-style Hermite normal form.
//!
//! Convention: pivots are strictly positive, rows are in echelon order, and
//! every entry above a pivot lies in `[0, pivot)`. Zero rows sink to the
//! bottom. Under this convention the nonzero rows are a canonical basis of
//! the row lattice.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::{ext_gcd, IntMatrix};

/// Returns `(H, U)` with `U · M = H`, `U` unimodular and `H` in canonical
/// row HNF. `H` has the same shape as `M`; dependent rows end up as zero
/// rows at the bottom.
pub fn hnf_rows(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    reduce(&mut h, Some(&mut u));
    (h, u)
}

/// Nonzero rows of the canonical HNF of `m`, without tracking the transform.
pub fn hnf_basis(m: &IntMatrix) -> IntMatrix {
    let mut h = m.clone();
    let rank = reduce(&mut h, None);
    IntMatrix::from_rows(h.cols(), h.row_vecs().into_iter().take(rank))
}

/// Pivot columns of a matrix already in row echelon form, one per nonzero row.
pub fn pivot_columns(h: &IntMatrix) -> Vec<usize> {
    (0..h.rows())
        .filter_map(|i| h.row(i).iter().position(|x| !x.is_zero()))
        .collect()
}

/// Returns the rank.
fn reduce(h: &mut IntMatrix, mut u: Option<&mut IntMatrix>) -> usize {
    let (rows, cols) = (h.rows(), h.cols());
    let mut p = 0;
    for col in 0..cols {
        if p == rows {
            break;
        }
        for i in p + 1..rows {
            if h[(i, col)].is_zero() {
                continue;
            }
            if h[(p, col)].is_zero() {
                h.swap_rows(p, i);
                if let Some(u) = u.as_deref_mut() {
                    u.swap_rows(p, i);
                }
                continue;
            }
            let a = h[(p, col)].clone();
            let b = h[(i, col)].clone();
            if b.is_multiple_of(&a) {
                let q = &b / &a;
                h.sub_row_multiple(i, p, &q);
                if let Some(u) = u.as_deref_mut() {
                    u.sub_row_multiple(i, p, &q);
                }
                continue;
            }
            let (g, x, y) = ext_gcd(&a, &b);
            let r = -(&b / &g);
            let s = &a / &g;
            h.combine_rows(p, i, [&x, &y, &r, &s]);
            if let Some(u) = u.as_deref_mut() {
                u.combine_rows(p, i, [&x, &y, &r, &s]);
            }
        }
        if h[(p, col)].is_zero() {
            continue;
        }
        if h[(p, col)].is_negative() {
            h.negate_row(p);
            if let Some(u) = u.as_deref_mut() {
                u.negate_row(p);
            }
        }
        let pivot = h[(p, col)].clone();
        for k in 0..p {
            let q: BigInt = h[(k, col)].div_floor(&pivot);
            h.sub_row_multiple(k, p, &q);
            if let Some(u) = u.as_deref_mut() {
                u.sub_row_multiple(k, p, &q);
            }
        }
        p += 1;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_row_sign_normalized() {
        let (h, u) = hnf_rows(&IntMatrix::from_i64(&[[0, 0, -7]]));
        assert_eq!(h, IntMatrix::from_i64(&[[0, 0, 7]]));
        assert_eq!(u, IntMatrix::from_i64(&[[-1]]));
    }

    #[test]
    fn dependent_rows_become_zero() {
        let m = IntMatrix::from_i64(&[[2, 4], [1, 2], [3, 6]]);
        let (h, u) = hnf_rows(&m);
        assert_eq!(h, IntMatrix::from_i64(&[[1, 2], [0, 0], [0, 0]]));
        assert_eq!(&u * &m, h);
        assert_eq!(hnf_basis(&m), IntMatrix::from_i64(&[[1, 2]]));
    }

    #[test]
    fn empty_and_zero_inputs() {
        let z = IntMatrix::zeros(2, 3);
        let (h, _) = hnf_rows(&z);
        assert!(h.is_zero());
        assert_eq!(hnf_basis(&z).rows(), 0);
        assert_eq!(hnf_basis(&IntMatrix::zeros(0, 4)).rows(), 0);
    }

    #[test]
    fn pivots_of_echelon_form() {
        let h = IntMatrix::from_i64(&[[0, 3, 6, 0], [0, 0, 15, 0]]);
        assert_eq!(pivot_columns(&h), vec![1, 2]);
    }
}
