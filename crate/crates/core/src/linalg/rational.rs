use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// Reduced fraction with positive denominator.
pub type Fraction = BigRational;

pub type FracMat2 = [[Fraction; 2]; 2];

/// Inverse of a 2×2 integer matrix over Q, as adjugate over determinant.
pub fn invert_2x2(a: &IntMatrix) -> Result<FracMat2> {
    if a.rows() != 2 || a.cols() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: if a.rows() != 2 { a.rows() } else { a.cols() },
        });
    }
    let det = &a[(0, 0)] * &a[(1, 1)] - &a[(0, 1)] * &a[(1, 0)];
    if det.is_zero() {
        return Err(Error::DegenerateMatrix);
    }
    let f = |x: &BigInt| Fraction::new(x.clone(), det.clone());
    Ok([
        [f(&a[(1, 1)]), f(&-&a[(0, 1)])],
        [f(&-&a[(1, 0)]), f(&a[(0, 0)])],
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn frac(n: i64, d: i64) -> Fraction {
        Fraction::new(n.into(), d.into())
    }

    fn times(a: &IntMatrix, inv: &FracMat2) -> FracMat2 {
        let mut out: FracMat2 = Default::default();
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = (0..2)
                    .map(|k| Fraction::from_integer(a[(i, k)].clone()) * &inv[k][j])
                    .sum();
            }
        }
        out
    }

    #[test]
    fn inverse_over_det_three() {
        let a = IntMatrix::from_i64(&[[-2, 1], [1, -2]]);
        let inv = invert_2x2(&a).unwrap();
        assert_eq!(inv, [[frac(-2, 3), frac(-1, 3)], [frac(-1, 3), frac(-2, 3)]]);
        let id = times(&a, &inv);
        assert_eq!(id, [[Fraction::one(), Fraction::zero()], [Fraction::zero(), Fraction::one()]]);
    }

    #[test]
    fn identity_inverse() {
        let inv = invert_2x2(&IntMatrix::identity(2)).unwrap();
        assert_eq!(inv, [[frac(1, 1), frac(0, 1)], [frac(0, 1), frac(1, 1)]]);
    }

    #[test]
    fn singular_rejected() {
        let a = IntMatrix::from_i64(&[[1, 1], [1, 1]]);
        assert_eq!(invert_2x2(&a), Err(Error::DegenerateMatrix));
        assert!(invert_2x2(&IntMatrix::identity(3)).is_err());
    }
}
