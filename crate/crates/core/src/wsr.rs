//! Degree-two part of the weighted Stanley–Reisner ring of a polygon.
//!
//! A degree-two class Σ c_i x_i is integral exactly when, at every vertex
//! v_i = F_i ∩ F_{i+1}, the pair (c_i, c_{i+1}) lies in the row lattice of
//! the vertex chart. The set of such coefficient vectors is therefore the
//! intersection of the m vertex lattices L_i. [`wsr2_basis`] produces a
//! closed-form basis {𝐚, 𝐛, φ(κ_1), …, φ(κ_{m−2})} of that intersection,
//! where κ_j is a basis of the relation lattice K = ker Λ and φ is
//! [`relation_operator`]. [`intersection_oracle`] recomputes the same
//! lattice by brute-force pairwise intersection.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{invert_2x2, kernel_basis, Fraction, IntMatrix, Lattice};
use crate::pair::CharacteristicPair;
use crate::poly::{RatPoly2, SRPolynomial};

/// Degree-two class Σ c_i x_i, stored as its coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm(pub Vec<BigInt>);

impl LinearForm {
    pub fn from_i64(xs: &[i64]) -> Self {
        LinearForm(xs.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn to_polynomial(&self) -> SRPolynomial {
        SRPolynomial::linear(&self.0)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = if c.magnitude().is_one() {
                String::new()
            } else {
                c.magnitude().to_string()
            };
            match (first, c.sign()) {
                (true, num_bigint::Sign::Minus) => write!(f, "-")?,
                (true, _) => {}
                (false, num_bigint::Sign::Minus) => write!(f, " - ")?,
                (false, _) => write!(f, " + ")?,
            }
            write!(f, "{mag}x_{}", i + 1)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wsr2Basis {
    pub a_form: LinearForm,
    pub b_form: LinearForm,
    /// Basis κ_1..κ_{m−2} of the relation lattice.
    pub kernel: Vec<Vec<BigInt>>,
    /// φ(κ_j), in the same order as `kernel`.
    pub phi_images: Vec<LinearForm>,
    /// Whether the minor-gcd condition holds, i.e. whether this lattice is
    /// the degree-two equivariant cohomology.
    pub even_cohomology: bool,
}

impl Wsr2Basis {
    /// 𝐚, 𝐛, φ(κ_1), …, φ(κ_{m−2}) in that order.
    pub fn vectors(&self) -> Vec<Vec<BigInt>> {
        [&self.a_form, &self.b_form]
            .into_iter()
            .chain(&self.phi_images)
            .map(|f| f.0.clone())
            .collect()
    }

    /// The m×m matrix whose rows are [`Self::vectors`].
    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.a_form.len(), self.vectors())
    }

    pub fn lattice(&self) -> Lattice {
        Lattice::from_generators(&self.matrix())
    }

    pub fn determinant(&self) -> BigInt {
        self.matrix().determinant()
    }
}

fn check_index(pair: &CharacteristicPair, i: usize) -> Result<()> {
    if i == 0 || i > pair.m() {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: pair.m(),
        });
    }
    Ok(())
}

fn check_len(pair: &CharacteristicPair, len: usize) -> Result<()> {
    if len != pair.m() {
        return Err(Error::DimensionMismatch {
            expected: pair.m(),
            found: len,
        });
    }
    Ok(())
}

/// The lattice L_i of coefficient vectors integral at vertex i: identity
/// rows away from coordinates i, i+1 (cyclic) and the chart rows
/// (a_i, a_{i+1}), (b_i, b_{i+1}) on them.
pub fn vertex_lattice(pair: &CharacteristicPair, i: usize) -> Result<Lattice> {
    check_index(pair, i)?;
    let m = pair.m();
    let (p, q) = (i - 1, i % m);
    let (l, r) = (pair.lambda(i), pair.lambda(i + 1));
    let mut gens = IntMatrix::identity(m);
    for j in 0..m {
        gens[(p, j)] = BigInt::zero();
        gens[(q, j)] = BigInt::zero();
    }
    gens[(p, p)] = l.a.clone();
    gens[(p, q)] = r.a.clone();
    gens[(q, p)] = l.b.clone();
    gens[(q, q)] = r.b.clone();
    Ok(Lattice::from_generators(&gens))
}

/// Saturated basis of K = ker(Λ: Z^m → Z²), one relation per row; always
/// m − 2 rows.
pub fn relation_lattice(pair: &CharacteristicPair) -> IntMatrix {
    let k = kernel_basis(&pair.lambda_matrix());
    debug_assert_eq!(k.rows(), pair.m() - 2);
    k
}

/// φ(t): w_1 = 0 and w_i = Σ_{j<i} det(λ_j, λ_i)·t_j.
pub fn relation_operator(pair: &CharacteristicPair, t: &[BigInt]) -> Result<Vec<BigInt>> {
    check_len(pair, t.len())?;
    let lambdas = pair.lambdas();
    Ok((0..t.len())
        .map(|i| {
            (0..i)
                .map(|j| lambdas[j].det(&lambdas[i]) * &t[j])
                .sum()
        })
        .collect())
}

pub fn wsr2_basis(pair: &CharacteristicPair) -> Wsr2Basis {
    let kernel = relation_lattice(pair).row_vecs();
    let phi_images = kernel
        .iter()
        .map(|t| LinearForm(relation_operator(pair, t).expect("kernel rows have length m")))
        .collect();
    Wsr2Basis {
        a_form: LinearForm(pair.a_vector()),
        b_form: LinearForm(pair.b_vector()),
        kernel,
        phi_images,
        even_cohomology: pair.even_cohomology_check().even_cohomology,
    }
}

/// L_1 ∩ ⋯ ∩ L_m by folding generic pairwise intersection.
pub fn intersection_oracle(pair: &CharacteristicPair) -> Lattice {
    (1..=pair.m())
        .map(|i| vertex_lattice(pair, i).expect("index in range"))
        .reduce(|acc, l| acc.intersect(&l).expect("same ambient dimension"))
        .expect("m >= 3")
}

/// z^{v_i}: zero off {i, i+1}; (z_i, z_{i+1}) = A_i^{-1} (u_1, u_2).
pub fn vertex_substitution(pair: &CharacteristicPair, i: usize) -> Result<Vec<RatPoly2>> {
    let chart = pair.vertex_chart(i)?;
    let inv = invert_2x2(&chart.matrix)?;
    let m = pair.m();
    let mut z = vec![RatPoly2::zero(); m];
    z[i - 1] = RatPoly2::linear(inv[0][0].clone(), inv[0][1].clone());
    z[i % m] = RatPoly2::linear(inv[1][0].clone(), inv[1][1].clone());
    Ok(z)
}

/// f(z) for a substitution tuple z.
pub fn substitute(f: &SRPolynomial, z: &[RatPoly2]) -> RatPoly2 {
    let mut out = RatPoly2::zero();
    for (exp, c) in f.terms() {
        let vanishes = exp.iter().zip(z).any(|(&e, zj)| e > 0 && zj.is_zero());
        if vanishes {
            continue;
        }
        let mut term = RatPoly2::one().scale(&Fraction::from_integer(c.clone()));
        for (&e, zj) in exp.iter().zip(z) {
            if e > 0 {
                term = &term * &zj.pow(e);
            }
        }
        out = &out + &term;
    }
    out
}

/// First place the integrality condition fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralityWitness {
    /// 1-based vertex index.
    pub vertex: usize,
    /// Exponent (e_1, e_2) of the offending monomial u_1^{e_1} u_2^{e_2}.
    pub exponent: (u32, u32),
    pub coefficient: Fraction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralityVerdict {
    pub witness: Option<IntegralityWitness>,
}

impl IntegralityVerdict {
    pub fn passes(&self) -> bool {
        self.witness.is_none()
    }
}

/// Checks that f(z^v) has integer coefficients at every vertex.
pub fn integrality_check(pair: &CharacteristicPair, f: &SRPolynomial) -> Result<IntegralityVerdict> {
    check_len(pair, f.nvars())?;
    for i in 1..=pair.m() {
        let z = vertex_substitution(pair, i)?;
        if let Some((exponent, coefficient)) = substitute(f, &z).first_non_integral() {
            return Ok(IntegralityVerdict {
                witness: Some(IntegralityWitness {
                    vertex: i,
                    exponent,
                    coefficient,
                }),
            });
        }
    }
    Ok(IntegralityVerdict { witness: None })
}

/// Solves c_i = a_i p + b_i q, c_{i+1} = a_{i+1} p + b_{i+1} q over Z at
/// every vertex, by Cramer's rule.
pub fn wsr2_member(pair: &CharacteristicPair, c: &LinearForm) -> Result<bool> {
    Ok(first_failing_vertex(pair, c)?.is_none())
}

/// The first vertex (1-based) at which the Cramer system has no integral
/// solution.
pub fn first_failing_vertex(pair: &CharacteristicPair, c: &LinearForm) -> Result<Option<usize>> {
    check_len(pair, c.len())?;
    let m = pair.m();
    for i in 1..=m {
        let (l, r) = (pair.lambda(i), pair.lambda(i + 1));
        let (x, y) = (&c.0[i - 1], &c.0[i % m]);
        let det = l.det(r);
        let p_num = x * &r.b - &l.b * y;
        let q_num = &l.a * y - x * &r.a;
        if !p_num.is_multiple_of(&det) || !q_num.is_multiple_of(&det) {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Whether the edges in `s` (1-based) share a common point of the polygon:
/// the empty set, single edges and cyclically adjacent pairs.
pub fn is_face(pair: &CharacteristicPair, s: &BTreeSet<usize>) -> bool {
    let m = pair.m();
    if s.iter().any(|&i| i == 0 || i > m) {
        return false;
    }
    match s.len() {
        0 | 1 => true,
        2 => {
            let mut it = s.iter();
            let (i, j) = (*it.next().unwrap(), *it.next().unwrap());
            j == i + 1 || (i == 1 && j == m)
        }
        _ => false,
    }
}

/// A monomial lies in the face ideal exactly when its support is not a face.
pub fn in_face_ideal(pair: &CharacteristicPair, exp: &[u32]) -> bool {
    let support = exp
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, _)| i + 1)
        .collect();
    !is_face(pair, &support)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vec_from_i64;

    fn example_3_7() -> CharacteristicPair {
        CharacteristicPair::from_i64(&[(-2, 1), (1, -2), (2, 1), (1, 2)])
    }

    fn standard_example() -> CharacteristicPair {
        CharacteristicPair::from_i64(&[(-2, 1), (1, -2), (1, 0), (0, 1)])
    }

    fn lat(rows: &[&[i64]]) -> Lattice {
        Lattice::from_generators(&IntMatrix::from_i64(rows))
    }

    #[test]
    fn vertex_lattices() {
        let p = example_3_7();
        let l1 = vertex_lattice(&p, 1).unwrap();
        assert_eq!(
            l1,
            lat(&[&[-2, 1, 0, 0], &[1, -2, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]])
        );
        assert_eq!(l1.index().unwrap(), BigInt::from(3));
        assert_eq!(vertex_lattice(&p, 4).unwrap().index().unwrap(), BigInt::from(5));
        assert_eq!(vertex_lattice(&standard_example(), 3).unwrap(), Lattice::full(4));
        assert!(matches!(vertex_lattice(&p, 5), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn wraparound_lattice_uses_corners() {
        let p = example_3_7();
        let l4 = vertex_lattice(&p, 4).unwrap();
        // rows (a_1, 0, 0, a_4) and (b_1, 0, 0, b_4)
        assert!(l4.contains(&vec_from_i64(&[-2, 0, 0, 1])).unwrap());
        assert!(l4.contains(&vec_from_i64(&[1, 0, 0, 2])).unwrap());
        assert!(!l4.contains(&vec_from_i64(&[1, 0, 0, 0])).unwrap());
    }

    #[test]
    fn relation_lattices() {
        let k = Lattice::from_generators(&relation_lattice(&example_3_7()));
        assert_eq!(k, lat(&[&[5, 4, 3, 0], &[7, 5, 5, -1]]));
        let k = Lattice::from_generators(&relation_lattice(&standard_example()));
        assert_eq!(k, lat(&[&[1, 0, 2, -1], &[0, 1, -1, 2]]));
    }

    #[test]
    fn operator_examples() {
        assert_eq!(
            relation_operator(&example_3_7(), &vec_from_i64(&[5, 4, 3, 0])).unwrap(),
            vec_from_i64(&[0, 15, 0, 0])
        );
        assert_eq!(
            relation_operator(&example_3_7(), &vec_from_i64(&[7, 5, 5, -1])).unwrap(),
            vec_from_i64(&[0, 21, -3, 0])
        );
        assert_eq!(
            relation_operator(&standard_example(), &vec_from_i64(&[1, 0, 2, -1])).unwrap(),
            vec_from_i64(&[0, 3, -1, 0])
        );
        assert_eq!(
            relation_operator(&standard_example(), &vec_from_i64(&[0; 4])).unwrap(),
            vec_from_i64(&[0; 4])
        );
        assert!(relation_operator(&standard_example(), &vec_from_i64(&[1, 2])).is_err());
    }

    #[test]
    fn basis_matches_oracle_on_examples() {
        let p = example_3_7();
        let basis = wsr2_basis(&p);
        let expected = lat(&[&[-2, 1, 2, 1], &[1, -2, 1, 2], &[0, 15, 0, 0], &[0, 21, -3, 0]]);
        assert_eq!(basis.lattice(), expected);
        assert_eq!(
            expected.basis(),
            &IntMatrix::from_i64(&[[1, 1, 2, 7], [0, 3, 1, 5], [0, 0, 5, 10], [0, 0, 0, 15]])
        );
        assert_eq!(intersection_oracle(&p), expected);
        assert!(basis.even_cohomology);

        let q = standard_example();
        let expected = lat(&[&[-2, 1, 1, 0], &[1, -2, 0, 1], &[0, 3, -1, 0], &[0, 0, 2, 0]]);
        assert_eq!(wsr2_basis(&q).lattice(), expected);
        assert_eq!(intersection_oracle(&q), expected);

        let smooth = CharacteristicPair::from_i64(&[(1, 0), (0, 1), (-1, 1), (0, -1)]);
        assert_eq!(wsr2_basis(&smooth).lattice(), Lattice::full(4));
        assert_eq!(intersection_oracle(&smooth), Lattice::full(4));
    }

    #[test]
    fn substitution_examples() {
        let z = vertex_substitution(&example_3_7(), 1).unwrap();
        let third = |n: i64| Fraction::new(n.into(), 3.into());
        assert_eq!(z[0], RatPoly2::linear(third(-2), third(-1)));
        assert_eq!(z[1], RatPoly2::linear(third(-1), third(-2)));
        assert!(z[2].is_zero() && z[3].is_zero());

        let z = vertex_substitution(&standard_example(), 3).unwrap();
        let one = Fraction::one;
        assert_eq!(z[2], RatPoly2::linear(one(), Fraction::zero()));
        assert_eq!(z[3], RatPoly2::linear(Fraction::zero(), one()));
    }

    #[test]
    fn integrality_examples() {
        let q = standard_example();
        let x3 = SRPolynomial::var(4, 3);
        let verdict = integrality_check(&q, &x3).unwrap();
        assert_eq!(
            verdict.witness,
            Some(IntegralityWitness {
                vertex: 2,
                exponent: (0, 1),
                coefficient: Fraction::new(1.into(), 2.into()),
            })
        );
        let z2 = vertex_substitution(&q, 2).unwrap();
        assert_eq!(
            z2[2],
            RatPoly2::linear(Fraction::one(), Fraction::new(1.into(), 2.into()))
        );

        let two_x3 = SRPolynomial::monomial(vec![0, 0, 1, 0], 2);
        assert!(integrality_check(&q, &two_x3).unwrap().passes());
        let x3x4 = SRPolynomial::monomial(vec![0, 0, 1, 1], 1);
        assert!(integrality_check(&q, &x3x4).unwrap().passes());
        assert!(integrality_check(&q, &SRPolynomial::var(3, 1)).is_err());
    }

    #[test]
    fn membership_examples() {
        let p = example_3_7();
        assert!(wsr2_member(&p, &LinearForm::from_i64(&[0, 15, 0, 0])).unwrap());
        assert!(!wsr2_member(&p, &LinearForm::from_i64(&[0, 1, 0, 0])).unwrap());
        assert_eq!(
            first_failing_vertex(&p, &LinearForm::from_i64(&[0, 1, 0, 0])).unwrap(),
            Some(1)
        );
        assert!(wsr2_member(&p, &LinearForm(p.a_vector())).unwrap());
        assert!(wsr2_member(&p, &LinearForm(p.b_vector())).unwrap());
    }

    #[test]
    fn faces_of_a_square() {
        let p = standard_example();
        let set = |xs: &[usize]| xs.iter().copied().collect::<BTreeSet<_>>();
        assert!(!is_face(&p, &set(&[1, 3])));
        assert!(is_face(&p, &set(&[2, 3])));
        assert!(is_face(&p, &set(&[4, 1])));
        assert!(!is_face(&p, &set(&[1, 2, 3])));
        assert!(is_face(&p, &set(&[])));
        assert!(in_face_ideal(&p, &[1, 0, 2, 0]));
        assert!(!in_face_ideal(&p, &[0, 3, 1, 0]));
    }

    #[test]
    fn ideal_monomials_vanish_at_every_vertex() {
        let p = standard_example();
        let f = SRPolynomial::monomial(vec![1, 0, 1, 0], 7);
        for i in 1..=4 {
            let z = vertex_substitution(&p, i).unwrap();
            assert!(substitute(&f, &z).is_zero());
        }
    }

    #[test]
    fn display_linear_form() {
        assert_eq!(LinearForm::from_i64(&[-2, 1, 0, 1]).to_string(), "-2x_1 + x_2 + x_4");
        assert_eq!(LinearForm::from_i64(&[0, 21, -3, 0]).to_string(), "21x_2 - 3x_3");
        assert_eq!(LinearForm::from_i64(&[0, 0]).to_string(), "0");
    }
}
