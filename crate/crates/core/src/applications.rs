//! Ordinary cohomology and divisor data derived from the degree-two basis:
//! reduction modulo the linear ideal 𝓙 = ⟨Σ a_i x_i, Σ b_i x_i⟩, the
//! algebraic cellular basis, and the Cartier / Picard / class group report.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{hnf_basis, pivot_columns, snf, IntMatrix, Lattice};
use crate::pair::CharacteristicPair;
use crate::poly::SRPolynomial;
use crate::wsr::{integrality_check, relation_operator, wsr2_basis, LinearForm};

/// Ψ(𝐚) and Ψ(𝐛), the degree-two generators of 𝓙.
pub fn ideal_j_generators(pair: &CharacteristicPair) -> (LinearForm, LinearForm) {
    (LinearForm(pair.a_vector()), LinearForm(pair.b_vector()))
}

/// Class of a degree-two form modulo span{𝐚, 𝐛}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CosetClass {
    /// Reduced against the HNF of span{𝐚, 𝐛}: pivot coordinates lie in
    /// `[0, pivot)`.
    pub canonical_rep: LinearForm,
    /// Representative with x_{m−1}, x_m eliminated, when the pair is in
    /// standard position.
    pub chart_rep: Option<LinearForm>,
}

impl CosetClass {
    pub fn same_class(&self, other: &CosetClass) -> bool {
        self.canonical_rep == other.canonical_rep
    }
}

pub fn reduce_mod_j(pair: &CharacteristicPair, c: &LinearForm) -> Result<CosetClass> {
    let m = pair.m();
    if c.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: c.len(),
        });
    }
    let h = hnf_basis(&pair.lambda_matrix());
    let mut rep = c.0.clone();
    for (k, col) in pivot_columns(&h).into_iter().enumerate() {
        let q = rep[col].div_floor(&h[(k, col)]);
        for (x, g) in rep.iter_mut().zip(h.row(k)) {
            *x -= &q * g;
        }
    }
    let chart_rep = pair.in_standard_position().then(|| {
        let (xm1, xm) = (c.0[m - 2].clone(), c.0[m - 1].clone());
        LinearForm(
            c.0.iter()
                .zip(pair.lambdas())
                .map(|(ci, l)| ci - &xm1 * &l.a - &xm * &l.b)
                .collect(),
        )
    });
    Ok(CosetClass {
        canonical_rep: LinearForm(rep),
        chart_rep,
    })
}

/// {u_1, …, u_{m−2}; v} for a pair in standard position, together with the
/// relation basis ξ_i it is checked against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellularBasis {
    pub u: Vec<LinearForm>,
    /// ξ_i = e_i − a_i e_{m−1} − b_i e_m.
    pub xi: Vec<Vec<BigInt>>,
    /// φ(ξ_i).
    pub phi_xi: Vec<LinearForm>,
    /// The degree-four class x_{m−1} x_m.
    pub v: SRPolynomial,
}

pub fn cellular_basis(pair: &CharacteristicPair) -> Result<CellularBasis> {
    if !pair.in_standard_position() {
        return Err(Error::NotInStandardPosition);
    }
    let m = pair.m();
    let n = m - 2;
    let lam = pair.lambdas();
    let mut u = Vec::with_capacity(n);
    let mut xi = Vec::with_capacity(n);
    let mut phi_xi = Vec::with_capacity(n);

    for i in 0..n {
        let mut ui = vec![BigInt::zero(); m];
        for (k, coeff) in ui.iter_mut().enumerate().take(n) {
            *coeff = if k <= i {
                &lam[k].a * &lam[i].b
            } else {
                &lam[i].a * &lam[k].b
            };
        }
        let mut x = vec![BigInt::zero(); m];
        x[i] = BigInt::from(1);
        x[m - 2] = -&lam[i].a;
        x[m - 1] = -&lam[i].b;

        let phi = LinearForm(relation_operator(pair, &x)?);
        let ui = LinearForm(ui);

        let lhs = reduce_mod_j(pair, &ui)?;
        let rhs = reduce_mod_j(pair, &phi)?;
        if !lhs.same_class(&rhs) || !integrality_check(pair, &ui.to_polynomial())?.passes() {
            return Err(Error::CellularIdentity { index: i + 1 });
        }
        u.push(ui);
        xi.push(x);
        phi_xi.push(phi);
    }

    let mut exp = vec![0; m];
    exp[m - 2] = 1;
    exp[m - 1] = 1;
    let v = SRPolynomial::monomial(exp, 1);
    if !integrality_check(pair, &v)?.passes() {
        return Err(Error::CellularIdentity { index: m - 1 });
    }
    Ok(CellularBasis { u, xi, phi_xi, v })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PicardReport {
    /// Basis of torus-invariant Cartier divisors: 𝐚, 𝐛, φ(κ_j).
    pub cartier_basis: Vec<LinearForm>,
    /// Basis of the Picard group, identified with φ(K).
    pub picard_basis: Vec<LinearForm>,
    pub class_free_rank: usize,
    /// Torsion of Cl = Z^m / im(M → Z^m).
    pub class_torsion: Vec<BigInt>,
    /// [Cl : Pic] = [Z^m : CDiv], reported as an absolute value.
    pub index: BigInt,
    /// H³ = 0, the hypothesis under which Cartier = wSR² and Pic = φ(K).
    pub hypothesis_satisfied: bool,
}

impl PicardReport {
    pub fn cartier_lattice(&self) -> Lattice {
        let m = self.cartier_basis.first().map_or(0, LinearForm::len);
        Lattice::from_rows(m, self.cartier_basis.iter().map(|f| f.0.clone()))
    }
}

pub fn picard_report(pair: &CharacteristicPair) -> PicardReport {
    let basis = wsr2_basis(pair);
    let m = pair.m();
    // Columns of this matrix are the images ⟨e_k, λ_i⟩ of the character lattice.
    let torsion = snf(&pair.lambda_matrix().transpose()).torsion();
    let index = basis.determinant().abs();
    PicardReport {
        cartier_basis: [basis.a_form.clone(), basis.b_form.clone()]
            .into_iter()
            .chain(basis.phi_images.iter().cloned())
            .collect(),
        picard_basis: basis.phi_images,
        class_free_rank: m - 2,
        class_torsion: torsion,
        index,
        hypothesis_satisfied: basis.even_cohomology,
    }
}

/// Rank of a set of forms, as the number of nonzero HNF rows.
pub fn rank_of(forms: &[LinearForm]) -> usize {
    let m = forms.first().map_or(0, LinearForm::len);
    hnf_basis(&IntMatrix::from_rows(m, forms.iter().map(|f| f.0.clone()))).rows()
}
