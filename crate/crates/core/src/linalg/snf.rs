//! Smith normal form with unimodular witnesses, and the saturated kernel it
//! yields.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::hnf::hnf_basis;
use super::matrix::{ext_gcd, IntMatrix};

/// `u · m · v = s` with `s` diagonal, `u` and `v` unimodular, and the
/// diagonal a nonnegative divisor chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|d| !d.is_zero()).count()
    }

    /// Nonzero diagonal entries.
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|d| !d.is_zero()).collect()
    }

    /// Torsion orders of the cokernel `Z^rows / im(m)`, i.e. the
    /// elementary divisors strictly greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|d| *d > BigInt::one()).collect()
    }
}

pub fn snf(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = smallest_entry(&s, t) else {
            break;
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            clear_column(&mut s, &mut u, t);
            clear_row(&mut s, &mut v, t);
            if (t + 1..rows).any(|i| !s[(i, t)].is_zero()) {
                continue;
            }
            // Enforce d_t | every remaining entry by folding an offending row in.
            let pivot = s[(t, t)].clone();
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !s[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    s.sub_row_multiple(t, i, &minus_one);
                    u.sub_row_multiple(t, i, &minus_one);
                }
                None => break,
            }
        }

        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }

    SnfResult { s, u, v }
}

/// Generators of `ker(m: Z^cols -> Z^rows)` as rows, canonicalized by HNF.
/// The kernel is read off the columns of `v` beyond the rank, so it is
/// saturated.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let f = snf(m);
    let r = f.rank();
    let gens = (r..m.cols()).map(|j| f.v.column(j));
    hnf_basis(&IntMatrix::from_rows(m.cols(), gens))
}

fn smallest_entry(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let x = &s[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < s[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn clear_column(s: &mut IntMatrix, u: &mut IntMatrix, t: usize) {
    for i in t + 1..s.rows() {
        if s[(i, t)].is_zero() {
            continue;
        }
        let a = s[(t, t)].clone();
        let b = s[(i, t)].clone();
        if b.is_multiple_of(&a) {
            let q = &b / &a;
            s.sub_row_multiple(i, t, &q);
            u.sub_row_multiple(i, t, &q);
        } else {
            let (g, x, y) = ext_gcd(&a, &b);
            let r = -(&b / &g);
            let w = &a / &g;
            s.combine_rows(t, i, [&x, &y, &r, &w]);
            u.combine_rows(t, i, [&x, &y, &r, &w]);
        }
    }
}

fn clear_row(s: &mut IntMatrix, v: &mut IntMatrix, t: usize) {
    for j in t + 1..s.cols() {
        if s[(t, j)].is_zero() {
            continue;
        }
        let a = s[(t, t)].clone();
        let b = s[(t, j)].clone();
        if b.is_multiple_of(&a) {
            let q = &b / &a;
            s.sub_col_multiple(j, t, &q);
            v.sub_col_multiple(j, t, &q);
        } else {
            let (g, x, y) = ext_gcd(&a, &b);
            let r = -(&b / &g);
            let w = &a / &g;
            s.combine_cols(t, j, [&x, &y, &r, &w]);
            v.combine_cols(t, j, [&x, &y, &r, &w]);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_witnesses(m: &IntMatrix) -> SnfResult {
        let f = snf(m);
        assert_eq!(&(&f.u * m) * &f.v, f.s);
        assert_eq!(f.u.determinant().abs(), BigInt::one());
        assert_eq!(f.v.determinant().abs(), BigInt::one());
        f
    }

    #[test]
    fn diag_two_four() {
        let f = check_witnesses(&IntMatrix::from_i64(&[[2, 4], [6, 8]]));
        assert_eq!(f.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn identity_is_fixed() {
        let f = check_witnesses(&IntMatrix::identity(3));
        assert_eq!(f.s, IntMatrix::identity(3));
    }

    #[test]
    fn divisibility_needs_row_fold() {
        // diag(2, 3) is diagonal but not a divisor chain
        let f = check_witnesses(&IntMatrix::from_i64(&[[2, 0], [0, 3]]));
        assert_eq!(f.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn zero_and_rank_deficient() {
        let f = check_witnesses(&IntMatrix::zeros(2, 3));
        assert_eq!(f.rank(), 0);
        let f = check_witnesses(&IntMatrix::from_i64(&[[1, 2, 3], [2, 4, 6]]));
        assert_eq!(f.rank(), 1);
        assert_eq!(f.torsion(), Vec::<BigInt>::new());
    }

    #[test]
    fn kernel_of_injective_map_is_empty() {
        assert_eq!(kernel_basis(&IntMatrix::identity(2)).rows(), 0);
    }

    #[test]
    fn kernel_of_zero_map_is_everything() {
        assert_eq!(kernel_basis(&IntMatrix::zeros(1, 3)), IntMatrix::identity(3));
    }
}
