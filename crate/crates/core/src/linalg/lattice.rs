use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::hnf::{hnf_basis, pivot_columns};
use super::matrix::IntMatrix;
use super::snf::kernel_basis;
use crate::error::{Error, Result};

/// A sublattice of Z^m stored by its canonical row HNF basis, so that
/// structural equality is equality of sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    ambient_dim: usize,
    basis: IntMatrix,
}

impl Lattice {
    /// Lattice generated by the rows of `gens`, which may be dependent.
    pub fn from_generators(gens: &IntMatrix) -> Self {
        Lattice {
            ambient_dim: gens.cols(),
            basis: hnf_basis(gens),
        }
    }

    pub fn from_rows(ambient_dim: usize, rows: impl IntoIterator<Item = Vec<BigInt>>) -> Self {
        Self::from_generators(&IntMatrix::from_rows(ambient_dim, rows))
    }

    pub fn full(ambient_dim: usize) -> Self {
        Lattice {
            ambient_dim,
            basis: IntMatrix::identity(ambient_dim),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    /// Canonical HNF basis.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<BigInt> {
        pivot_columns(&self.basis)
            .into_iter()
            .enumerate()
            .map(|(i, j)| self.basis[(i, j)].clone())
            .collect()
    }

    /// Membership by back-substitution along the pivots.
    pub fn contains(&self, x: &[BigInt]) -> Result<bool> {
        if x.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: x.len(),
            });
        }
        let mut residual = x.to_vec();
        for (k, col) in pivot_columns(&self.basis).into_iter().enumerate() {
            let (q, r) = residual[col].div_rem(&self.basis[(k, col)]);
            if !r.is_zero() {
                return Ok(false);
            }
            for (res, b) in residual.iter_mut().zip(self.basis.row(k)) {
                *res -= &q * b;
            }
        }
        Ok(residual.iter().all(Zero::is_zero))
    }

    pub fn contains_lattice(&self, other: &Lattice) -> Result<bool> {
        for i in 0..other.rank() {
            if !self.contains(other.basis.row(i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Intersection via the left kernel of `[B1; -B2]`: each kernel vector
    /// `(u, v)` with `u·B1 = v·B2` contributes `u·B1`.
    pub fn intersect(&self, other: &Lattice) -> Result<Lattice> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        let m = self.ambient_dim;
        let r1 = self.rank();
        let stacked = IntMatrix::from_rows(
            m,
            self.basis.row_vecs().into_iter().chain(
                other
                    .basis
                    .row_vecs()
                    .into_iter()
                    .map(|row| row.into_iter().map(|x| -x).collect()),
            ),
        );
        let left_kernel = kernel_basis(&stacked.transpose());
        let gens = (0..left_kernel.rows()).map(|k| {
            let coeffs = &left_kernel.row(k)[..r1];
            let mut x = vec![BigInt::zero(); m];
            for (c, i) in coeffs.iter().zip(0..r1) {
                for (xj, bj) in x.iter_mut().zip(self.basis.row(i)) {
                    *xj += c * bj;
                }
            }
            x
        });
        Ok(Lattice::from_rows(m, gens))
    }

    /// `[Z^m : L]`, the product of the HNF pivots.
    pub fn index(&self) -> Result<BigInt> {
        if self.rank() != self.ambient_dim {
            return Err(Error::NotFullRank {
                rank: self.rank(),
                dim: self.ambient_dim,
            });
        }
        Ok(self.pivots().iter().fold(BigInt::one(), |acc, p| acc * p))
    }
}
