//! Characteristic pairs over an m-gon: validation, vertex charts, the
//! even-cohomology test and normalization to a smooth standard vertex.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{snf, IntMatrix};

/// Rejection-sampling budget per slot in [`random_pair`].
pub const MAX_ATTEMPTS_PER_SLOT: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharVector {
    pub a: BigInt,
    pub b: BigInt,
}

impl CharVector {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        CharVector {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).is_one()
    }

    /// `det(self, other) = a·b' − a'·b`.
    pub fn det(&self, other: &CharVector) -> BigInt {
        &self.a * &other.b - &other.a * &self.b
    }

    fn transformed(&self, g: &IntMatrix) -> CharVector {
        CharVector {
            a: &g[(0, 0)] * &self.a + &g[(0, 1)] * &self.b,
            b: &g[(1, 0)] * &self.a + &g[(1, 1)] * &self.b,
        }
    }
}

impl fmt::Display for CharVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// Reasons a raw vector list is not a characteristic pair. Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    TooFewEdges(usize),
    ZeroVector(usize),
    NotPrimitive(usize),
    /// `det(λ_i, λ_{i+1}) = 0`, cyclically.
    DegenerateVertex(usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooFewEdges(m) => write!(f, "polygon needs at least 3 edges, got {m}"),
            Violation::ZeroVector(i) => write!(f, "lambda_{i} is zero"),
            Violation::NotPrimitive(i) => write!(f, "lambda_{i} is not primitive"),
            Violation::DegenerateVertex(i) => write!(f, "vertex {i} has zero determinant"),
        }
    }
}

/// Primitive vectors λ_1..λ_m in the cyclic edge order of an m-gon, with
/// every consecutive determinant nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharacteristicPair {
    lambdas: Vec<CharVector>,
}

impl CharacteristicPair {
    pub fn validate<A, B>(raw: &[(A, B)]) -> std::result::Result<Self, Vec<Violation>>
    where
        A: Clone + Into<BigInt>,
        B: Clone + Into<BigInt>,
    {
        let lambdas: Vec<CharVector> = raw
            .iter()
            .map(|(a, b)| CharVector::new(a.clone(), b.clone()))
            .collect();
        Self::from_vectors(lambdas)
    }

    pub fn from_vectors(lambdas: Vec<CharVector>) -> std::result::Result<Self, Vec<Violation>> {
        let m = lambdas.len();
        let mut violations = Vec::new();
        if m < 3 {
            violations.push(Violation::TooFewEdges(m));
        }
        for (i, v) in lambdas.iter().enumerate() {
            if v.a.is_zero() && v.b.is_zero() {
                violations.push(Violation::ZeroVector(i + 1));
            } else if !v.is_primitive() {
                violations.push(Violation::NotPrimitive(i + 1));
            }
        }
        if m >= 2 {
            for i in 0..m {
                if lambdas[i].det(&lambdas[(i + 1) % m]).is_zero() {
                    violations.push(Violation::DegenerateVertex(i + 1));
                }
            }
        }
        if violations.is_empty() {
            Ok(CharacteristicPair { lambdas })
        } else {
            Err(violations)
        }
    }

    /// Panicking constructor for literals known to be valid.
    pub fn from_i64(raw: &[(i64, i64)]) -> Self {
        Self::validate(raw).unwrap_or_else(|v| panic!("invalid characteristic pair: {v:?}"))
    }

    pub fn m(&self) -> usize {
        self.lambdas.len()
    }

    pub fn lambdas(&self) -> &[CharVector] {
        &self.lambdas
    }

    /// λ_i with 1-based cyclic indexing, so `lambda(m + 1) == lambda(1)`.
    pub fn lambda(&self, i: usize) -> &CharVector {
        &self.lambdas[(i + self.m() - 1) % self.m()]
    }

    /// 𝐚 = (a_1, …, a_m).
    pub fn a_vector(&self) -> Vec<BigInt> {
        self.lambdas.iter().map(|v| v.a.clone()).collect()
    }

    /// 𝐛 = (b_1, …, b_m).
    pub fn b_vector(&self) -> Vec<BigInt> {
        self.lambdas.iter().map(|v| v.b.clone()).collect()
    }

    /// Λ = [λ_1 ⋯ λ_m] as a 2×m matrix.
    pub fn lambda_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.m(), [self.a_vector(), self.b_vector()])
    }

    /// det(λ_i, λ_{i+1}) for i = 1..m.
    pub fn vertex_dets(&self) -> Vec<BigInt> {
        (1..=self.m())
            .map(|i| self.lambda(i).det(self.lambda(i + 1)))
            .collect()
    }

    pub fn is_smooth(&self) -> bool {
        self.vertex_dets().iter().all(|d| d.abs().is_one())
    }

    /// λ_{m−1} = (1,0) and λ_m = (0,1).
    pub fn in_standard_position(&self) -> bool {
        let m = self.m();
        self.lambdas[m - 2] == CharVector::new(1, 0) && self.lambdas[m - 1] == CharVector::new(0, 1)
    }

    pub fn vertex_chart(&self, i: usize) -> Result<VertexChart> {
        if i == 0 || i > self.m() {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: self.m(),
            });
        }
        let (l, r) = (self.lambda(i), self.lambda(i + 1));
        let matrix = IntMatrix::from_rows(2, [vec![l.a.clone(), r.a.clone()], vec![l.b.clone(), r.b.clone()]]);
        Ok(VertexChart {
            index: i,
            det: l.det(r),
            matrix,
        })
    }

    pub fn vertex_charts(&self) -> Vec<VertexChart> {
        (1..=self.m())
            .map(|i| self.vertex_chart(i).expect("index in range"))
            .collect()
    }

    pub fn even_cohomology_check(&self) -> TopologyReport {
        let mut minor_gcd = BigInt::zero();
        for i in 0..self.m() {
            for j in i + 1..self.m() {
                minor_gcd = minor_gcd.gcd(&self.lambdas[i].det(&self.lambdas[j]));
            }
        }
        let h3_invariants = snf(&self.lambda_matrix()).torsion();
        TopologyReport {
            even_cohomology: minor_gcd.is_one(),
            minor_gcd,
            h3_invariants,
        }
    }

    /// Rotates the smallest-index smooth vertex to position m−1 and applies
    /// the unimodular `g` taking its two edge vectors to (1,0), (0,1).
    pub fn normalize_smooth(&self) -> Result<SmoothNormalization> {
        let m = self.m();
        let dets = self.vertex_dets();
        let Some(i) = dets.iter().position(|d| d.abs().is_one()).map(|k| k + 1) else {
            return Err(Error::NoSmoothVertex { dets });
        };
        let rotation = (i + 1) % m;
        let (l, r) = (self.lambda(i), self.lambda(i + 1));
        // g = [λ_i λ_{i+1}]^{-1}; the determinant is ±1 so the adjugate is exact.
        let d = &dets[i - 1];
        let transform = IntMatrix::from_rows(
            2,
            [
                vec![&r.b * d, -&r.a * d],
                vec![-&l.b * d, &l.a * d],
            ],
        );
        let lambdas = (0..m)
            .map(|k| self.lambdas[(k + rotation) % m].transformed(&transform))
            .collect();
        let pair = CharacteristicPair::from_vectors(lambdas)
            .expect("unimodular change of coordinates preserves validity");
        debug_assert!(pair.in_standard_position());
        Ok(SmoothNormalization {
            pair,
            transform,
            rotation,
        })
    }
}

impl fmt::Display for CharacteristicPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.lambdas.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Chart at vertex v_i = F_i ∩ F_{i+1}: the matrix with columns λ_i, λ_{i+1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexChart {
    pub index: usize,
    pub matrix: IntMatrix,
    pub det: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopologyReport {
    pub minor_gcd: BigInt,
    /// Invariant factors of H³ ≅ Z² / span{λ_i}, those greater than one.
    pub h3_invariants: Vec<BigInt>,
    pub even_cohomology: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothNormalization {
    pub pair: CharacteristicPair,
    /// Unimodular `g` with λ'_k = g · λ_{k + rotation}.
    pub transform: IntMatrix,
    pub rotation: usize,
}

/// Seeded random characteristic pair with entries in `[-bound, bound]`.
pub fn random_pair(m: usize, bound: u64, seed: u64) -> Result<CharacteristicPair> {
    assert!(m >= 3, "random_pair needs m >= 3");
    assert!(bound >= 1, "random_pair needs bound >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = bound as i64;
    let mut lambdas: Vec<CharVector> = Vec::with_capacity(m);
    for slot in 0..m {
        let mut attempts = 0;
        let v = loop {
            if attempts == MAX_ATTEMPTS_PER_SLOT {
                return Err(Error::GenerationFailed { slot: slot + 1, attempts });
            }
            attempts += 1;
            let v = CharVector::new(rng.gen_range(-b..=b), rng.gen_range(-b..=b));
            if !v.is_primitive() {
                continue;
            }
            if lambdas.last().is_some_and(|prev| prev.det(&v).is_zero()) {
                continue;
            }
            if slot == m - 1 && v.det(&lambdas[0]).is_zero() {
                continue;
            }
            break v;
        };
        lambdas.push(v);
    }
    Ok(CharacteristicPair::from_vectors(lambdas).expect("generator enforces validity"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_3_7() -> CharacteristicPair {
        CharacteristicPair::from_i64(&[(-2, 1), (1, -2), (2, 1), (1, 2)])
    }

    #[test]
    fn validate_reports_violations() {
        assert!(CharacteristicPair::validate(&[(-2, 1), (1, -2), (2, 1), (1, 2)]).is_ok());
        assert_eq!(
            CharacteristicPair::validate(&[(2, 4), (1, 0), (0, 1)]),
            Err(vec![Violation::NotPrimitive(1)])
        );
        assert_eq!(
            CharacteristicPair::validate(&[(1, 0), (-1, 0), (0, 1)]),
            Err(vec![Violation::DegenerateVertex(1)])
        );
        let errs = CharacteristicPair::validate(&[(0, 0), (1, 0)]).unwrap_err();
        assert!(errs.contains(&Violation::TooFewEdges(2)));
        assert!(errs.contains(&Violation::ZeroVector(1)));
    }

    #[test]
    fn topology_examples() {
        let t = example_3_7().even_cohomology_check();
        assert_eq!(t.minor_gcd, BigInt::one());
        assert!(t.h3_invariants.is_empty());
        assert!(t.even_cohomology);

        let t = CharacteristicPair::from_i64(&[(1, 2), (2, 1), (1, -1)]).even_cohomology_check();
        assert_eq!(t.minor_gcd, BigInt::from(3));
        assert_eq!(t.h3_invariants, vec![BigInt::from(3)]);
        assert!(!t.even_cohomology);

        let t = CharacteristicPair::from_i64(&[(3, 5), (1, 0), (7, 2), (0, 1)]).even_cohomology_check();
        assert!(t.even_cohomology);
    }

    #[test]
    fn chart_examples() {
        let p = example_3_7();
        let c1 = p.vertex_chart(1).unwrap();
        assert_eq!(c1.matrix, IntMatrix::from_i64(&[[-2, 1], [1, -2]]));
        assert_eq!(c1.det, BigInt::from(3));
        assert_eq!(p.vertex_chart(4).unwrap().det, BigInt::from(5));
        assert!(matches!(p.vertex_chart(5), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(p.vertex_chart(0), Err(Error::IndexOutOfRange { .. })));

        let q = CharacteristicPair::from_i64(&[(-2, 1), (1, -2), (1, 0), (0, 1)]);
        let c3 = q.vertex_chart(3).unwrap();
        assert_eq!(c3.matrix, IntMatrix::identity(2));
        assert_eq!(c3.det, BigInt::one());
        assert_eq!(q.vertex_charts().len(), 4);
    }

    #[test]
    fn normalize_examples() {
        let q = CharacteristicPair::from_i64(&[(-2, 1), (1, -2), (1, 0), (0, 1)]);
        let n = q.normalize_smooth().unwrap();
        assert_eq!(n.rotation, 0);
        assert_eq!(n.transform, IntMatrix::identity(2));
        assert_eq!(n.pair, q);

        let s = CharacteristicPair::from_i64(&[(1, 0), (0, 1), (-1, 1), (0, -1)]);
        let n = s.normalize_smooth().unwrap();
        assert_eq!(n.rotation, 2);
        assert_eq!(n.transform, IntMatrix::identity(2));
        assert_eq!(
            n.pair,
            CharacteristicPair::from_i64(&[(-1, 1), (0, -1), (1, 0), (0, 1)])
        );

        match example_3_7().normalize_smooth() {
            Err(Error::NoSmoothVertex { dets }) => {
                assert_eq!(dets, [3, 5, 3, 5].map(BigInt::from).to_vec())
            }
            other => panic!("expected NoSmoothVertex, got {other:?}"),
        }
    }

    #[test]
    fn normalize_with_nontrivial_transform() {
        // vertex 2: λ_2 = (2,1), λ_3 = (1,1), det 1
        let p = CharacteristicPair::from_i64(&[(1, -3), (2, 1), (1, 1), (-1, 0)]);
        let n = p.normalize_smooth().unwrap();
        assert_eq!(n.rotation, 3);
        assert!(n.pair.in_standard_position());
        assert_eq!(n.transform.determinant().abs(), BigInt::one());
    }

    #[test]
    fn random_pair_contract() {
        let p = random_pair(4, 2, 1).unwrap();
        assert_eq!(p, random_pair(4, 2, 1).unwrap());
        for seed in 0..50 {
            let p = random_pair(3, 1, seed).unwrap();
            assert!(p
                .lambdas()
                .iter()
                .all(|v| v.a.abs() <= BigInt::one() && v.b.abs() <= BigInt::one()));
            assert!(CharacteristicPair::from_vectors(p.lambdas().to_vec()).is_ok());
        }
    }
}
