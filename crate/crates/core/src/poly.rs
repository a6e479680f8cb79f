//! Sparse polynomials: integer polynomials in the facet variables x_1..x_m,
//! and rational polynomials in the two torus variables u_1, u_2.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::linalg::Fraction;

/// Integer polynomial in x_1..x_m, keyed by exponent vector. Zero
/// coefficients are never stored; iteration is in lexicographic exponent
/// order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SRPolynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl SRPolynomial {
    pub fn zero(nvars: usize) -> Self {
        SRPolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c.into());
        p
    }

    /// The degree-one polynomial Σ c_i x_i.
    pub fn linear(coeffs: &[BigInt]) -> Self {
        let nvars = coeffs.len();
        let mut p = Self::zero(nvars);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; nvars];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    /// `coeff · x^exp`.
    pub fn monomial(exp: Vec<u32>, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, coeff.into());
        p
    }

    /// Variable x_i, 1-based.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i - 1] = 1;
        Self::monomial(e, 1)
    }

    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, BigInt)>,
    ) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, exp: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }
}

impl Add for &SRPolynomial {
    type Output = SRPolynomial;

    fn add(self, rhs: &SRPolynomial) -> SRPolynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Mul for &SRPolynomial {
    type Output = SRPolynomial;

    fn mul(self, rhs: &SRPolynomial) -> SRPolynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = SRPolynomial::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

/// Rational polynomial in u_1, u_2, keyed by `(e_1, e_2)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RatPoly2 {
    terms: BTreeMap<(u32, u32), Fraction>,
}

impl RatPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        let mut p = Self::zero();
        p.add_term((0, 0), Fraction::one());
        p
    }

    /// `c1·u_1 + c2·u_2`.
    pub fn linear(c1: Fraction, c2: Fraction) -> Self {
        let mut p = Self::zero();
        p.add_term((1, 0), c1);
        p.add_term((0, 1), c2);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e1: u32, e2: u32) -> Fraction {
        self.terms.get(&(e1, e2)).cloned().unwrap_or_else(Fraction::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Fraction)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// First coefficient (in exponent order) with denominator other than 1.
    pub fn first_non_integral(&self) -> Option<((u32, u32), Fraction)> {
        self.terms
            .iter()
            .find(|(_, c)| !c.is_integer())
            .map(|(e, c)| (*e, c.clone()))
    }

    pub fn scale(&self, k: &Fraction) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, c * k);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn add_term(&mut self, e: (u32, u32), c: Fraction) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }
}

impl Add for &RatPoly2 {
    type Output = RatPoly2;

    fn add(self, rhs: &RatPoly2) -> RatPoly2 {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Mul for &RatPoly2 {
    type Output = RatPoly2;

    fn mul(self, rhs: &RatPoly2) -> RatPoly2 {
        let mut out = RatPoly2::zero();
        for ((a1, a2), c1) in &self.terms {
            for ((b1, b2), c2) in &rhs.terms {
                out.add_term((a1 + b1, a2 + b2), c1 * c2);
            }
        }
        out
    }
}
