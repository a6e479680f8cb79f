//! Randomized invariant checking over seeded characteristic pairs.
//!
//! Each trial is a pure function of `(seed, trial index)`, so trials run in
//! parallel under the `parallel` feature and the collected outcomes are
//! always in trial order.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::applications::{cellular_basis, picard_report, rank_of, reduce_mod_j};
use crate::error::Result;
use crate::linalg::{snf, Fraction, Lattice};
use crate::pair::{random_pair, CharacteristicPair};
use crate::poly::RatPoly2;
use crate::wsr::{
    first_failing_vertex, integrality_check, intersection_oracle, substitute, vertex_substitution,
    wsr2_basis, wsr2_member, LinearForm,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    /// Closed-form basis spans the fold intersection of the vertex lattices.
    Oracle,
    /// φ(κ_j) vanish in the first and last coordinate and have rank m − 2.
    RelationImages,
    /// det[𝐚 | 𝐛 | φ(κ)] ≠ 0.
    DirectSum,
    /// |det| = product of HNF pivots = lattice index.
    Index,
    /// Minor gcd is 1 exactly when the SNF of Λ is (1, 1).
    EvenCohomology,
    /// Basis vectors pass both integrality checkers; random non-members
    /// fail both with witnesses.
    Integrality,
    /// Substituting z^v into 𝐚·x and 𝐛·x yields u_1 and u_2.
    Substitution,
    /// Fully smooth pairs have lattice Z^m and index 1.
    Smoothness,
    /// Cellular representatives agree with φ(ξ_i) modulo 𝓙 and are integral.
    Cellular,
    /// Normalizing to a smooth vertex preserves torsion, index and parity.
    NormalizationInvariance,
}

impl Check {
    pub const ALL: [Check; 10] = [
        Check::Oracle,
        Check::RelationImages,
        Check::DirectSum,
        Check::Index,
        Check::EvenCohomology,
        Check::Integrality,
        Check::Substitution,
        Check::Smoothness,
        Check::Cellular,
        Check::NormalizationInvariance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Oracle => "oracle",
            Check::RelationImages => "relation-images",
            Check::DirectSum => "direct-sum",
            Check::Index => "index",
            Check::EvenCohomology => "even-cohomology",
            Check::Integrality => "integrality",
            Check::Substitution => "substitution",
            Check::Smoothness => "smoothness",
            Check::Cellular => "cellular",
            Check::NormalizationInvariance => "normalization-invariance",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail(String),
    /// The check's hypothesis does not apply to this pair.
    Skipped,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Only the closed-form vs. intersection comparison.
    OracleOnly,
    /// Every check.
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialConfig {
    pub m_min: usize,
    pub m_max: usize,
    pub bound: u64,
    pub trials: usize,
    pub seed: u64,
    /// Random non-members tested per pair by [`Check::Integrality`].
    pub non_members_per_pair: usize,
    pub mode: Mode,
}

impl Default for TrialConfig {
    fn default() -> Self {
        TrialConfig {
            m_min: 3,
            m_max: 8,
            bound: 9,
            trials: 500,
            seed: 0,
            non_members_per_pair: 10,
            mode: Mode::Full,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialOutcome {
    pub trial: usize,
    pub seed: u64,
    pub pair: CharacteristicPair,
    pub results: Vec<(Check, Status)>,
}

impl TrialOutcome {
    pub fn failures(&self) -> impl Iterator<Item = (Check, &str)> {
        self.results.iter().filter_map(|(c, s)| match s {
            Status::Fail(msg) => Some((*c, msg.as_str())),
            _ => None,
        })
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub trials: usize,
    pub per_check: BTreeMap<Check, Tally>,
}

impl Summary {
    pub fn from_outcomes(outcomes: &[TrialOutcome]) -> Self {
        let mut per_check: BTreeMap<Check, Tally> = BTreeMap::new();
        for o in outcomes {
            for (check, status) in &o.results {
                let t = per_check.entry(*check).or_default();
                match status {
                    Status::Pass => t.passed += 1,
                    Status::Fail(_) => t.failed += 1,
                    Status::Skipped => t.skipped += 1,
                }
            }
        }
        Summary {
            trials: outcomes.len(),
            per_check,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.per_check.values().all(|t| t.failed == 0)
    }
}

/// SplitMix64 finalizer; decorrelates per-trial seeds.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    mix(seed ^ mix(trial as u64))
}

/// Generates and checks a single trial.
pub fn run_trial(config: &TrialConfig, trial: usize) -> Result<TrialOutcome> {
    let seed = trial_seed(config.seed, trial);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = rng.gen_range(config.m_min..=config.m_max);
    let pair = random_pair(m, config.bound, rng.gen())?;
    let results = match config.mode {
        Mode::OracleOnly => vec![(Check::Oracle, check_oracle(&pair))],
        Mode::Full => check_pair(&pair, config.non_members_per_pair, &mut rng),
    };
    Ok(TrialOutcome {
        trial,
        seed,
        pair,
        results,
    })
}

pub fn run_trials_sequential(config: &TrialConfig) -> Result<Vec<TrialOutcome>> {
    (0..config.trials).map(|t| run_trial(config, t)).collect()
}

#[cfg(feature = "parallel")]
pub fn run_trials_parallel(config: &TrialConfig) -> Result<Vec<TrialOutcome>> {
    use rayon::prelude::*;
    (0..config.trials)
        .into_par_iter()
        .map(|t| run_trial(config, t))
        .collect()
}

/// Parallel when the `parallel` feature is on, sequential otherwise. Output
/// order and content are identical either way.
pub fn run_trials(config: &TrialConfig) -> Result<Vec<TrialOutcome>> {
    #[cfg(feature = "parallel")]
    {
        run_trials_parallel(config)
    }
    #[cfg(not(feature = "parallel"))]
    {
        run_trials_sequential(config)
    }
}

/// Runs every [`Check`] on one pair. `rng` drives the random vectors used
/// by [`Check::Integrality`].
pub fn check_pair<R: Rng>(
    pair: &CharacteristicPair,
    non_members: usize,
    rng: &mut R,
) -> Vec<(Check, Status)> {
    vec![
        (Check::Oracle, check_oracle(pair)),
        (Check::RelationImages, check_relation_images(pair)),
        (Check::DirectSum, check_direct_sum(pair)),
        (Check::Index, check_index(pair)),
        (Check::EvenCohomology, check_even_cohomology(pair)),
        (Check::Integrality, check_integrality(pair, non_members, rng)),
        (Check::Substitution, check_substitution(pair)),
        (Check::Smoothness, check_smoothness(pair)),
        (Check::Cellular, check_cellular(pair)),
        (Check::NormalizationInvariance, check_normalization(pair)),
    ]
}

fn verdict(ok: bool, detail: impl FnOnce() -> String) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail(detail())
    }
}

pub fn check_oracle(pair: &CharacteristicPair) -> Status {
    let closed = wsr2_basis(pair).lattice();
    let oracle = intersection_oracle(pair);
    verdict(closed == oracle, || {
        format!("closed form {} != intersection {}", closed.basis(), oracle.basis())
    })
}

pub fn check_relation_images(pair: &CharacteristicPair) -> Status {
    let basis = wsr2_basis(pair);
    let m = pair.m();
    for (t, w) in basis.kernel.iter().zip(&basis.phi_images) {
        if !w.0[0].is_zero() || !w.0[m - 1].is_zero() {
            return Status::Fail(format!("phi({t:?}) = {w} has nonzero end coordinate"));
        }
    }
    let rank = rank_of(&basis.phi_images);
    verdict(rank == m - 2, || format!("phi images have rank {rank}, expected {}", m - 2))
}

pub fn check_direct_sum(pair: &CharacteristicPair) -> Status {
    let det = wsr2_basis(pair).determinant();
    verdict(!det.is_zero(), || "basis determinant vanishes".to_string())
}

pub fn check_index(pair: &CharacteristicPair) -> Status {
    let basis = wsr2_basis(pair);
    let det = basis.determinant().abs();
    let pivots: BigInt = basis.lattice().pivots().iter().product();
    let index = match intersection_oracle(pair).index() {
        Ok(i) => i,
        Err(e) => return Status::Fail(e.to_string()),
    };
    let picard = picard_report(pair).index;
    verdict(det == pivots && pivots == index && index == picard, || {
        format!("|det| {det}, pivot product {pivots}, oracle index {index}, picard {picard}")
    })
}

pub fn check_even_cohomology(pair: &CharacteristicPair) -> Status {
    let topo = pair.even_cohomology_check();
    let diag = snf(&pair.lambda_matrix()).diagonal();
    let unit_diag = diag.iter().all(One::is_one);
    verdict(topo.even_cohomology == unit_diag, || {
        format!("minor gcd {} but SNF diagonal {diag:?}", topo.minor_gcd)
    })
}

pub fn check_integrality<R: Rng>(
    pair: &CharacteristicPair,
    non_members: usize,
    rng: &mut R,
) -> Status {
    let basis = wsr2_basis(pair);
    let lattice = basis.lattice();
    for v in basis.vectors() {
        let form = LinearForm(v);
        let by_subst = match integrality_check(pair, &form.to_polynomial()) {
            Ok(r) => r.passes(),
            Err(e) => return Status::Fail(e.to_string()),
        };
        if !by_subst || !wsr2_member(pair, &form).unwrap_or(false) {
            return Status::Fail(format!("basis vector {form} rejected"));
        }
    }
    if lattice.index().is_ok_and(|i| i.is_one()) {
        // Z^m has no non-members to test.
        return Status::Pass;
    }
    let m = pair.m();
    let span = lattice
        .pivots()
        .iter()
        .max()
        .and_then(ToPrimitive::to_i64)
        .map_or(1 << 20, |p| (2 * p + 2).min(1 << 20));
    let mut found = 0;
    let mut attempts = 0;
    while found < non_members {
        attempts += 1;
        if attempts > 100_000 {
            return Status::Fail(format!("only {found} non-members found"));
        }
        let x: Vec<BigInt> = (0..m).map(|_| BigInt::from(rng.gen_range(-span..=span))).collect();
        let member = lattice.contains(&x).expect("dimension m");
        let form = LinearForm(x);
        let subst = integrality_check(pair, &form.to_polynomial()).expect("dimension m");
        let cramer = first_failing_vertex(pair, &form).expect("dimension m");
        if subst.passes() != member || cramer.is_none() != member {
            return Status::Fail(format!(
                "checkers disagree on {form}: lattice {member}, substitution {}, cramer {}",
                subst.passes(),
                cramer.is_none()
            ));
        }
        if !member {
            if subst.witness.is_none() || cramer.is_none() {
                return Status::Fail(format!("non-member {form} rejected without witness"));
            }
            found += 1;
        }
    }
    Status::Pass
}

pub fn check_substitution(pair: &CharacteristicPair) -> Status {
    let a = LinearForm(pair.a_vector()).to_polynomial();
    let b = LinearForm(pair.b_vector()).to_polynomial();
    let u1 = RatPoly2::linear(Fraction::one(), Fraction::zero());
    let u2 = RatPoly2::linear(Fraction::zero(), Fraction::one());
    for i in 1..=pair.m() {
        let z = match vertex_substitution(pair, i) {
            Ok(z) => z,
            Err(e) => return Status::Fail(e.to_string()),
        };
        if substitute(&a, &z) != u1 || substitute(&b, &z) != u2 {
            return Status::Fail(format!("vertex {i}: a, b do not substitute to u_1, u_2"));
        }
    }
    Status::Pass
}

pub fn check_smoothness(pair: &CharacteristicPair) -> Status {
    if !pair.is_smooth() {
        return Status::Skipped;
    }
    let lattice = wsr2_basis(pair).lattice();
    let index = picard_report(pair).index;
    verdict(lattice == Lattice::full(pair.m()) && index.is_one(), || {
        format!("smooth pair has lattice {} and index {index}", lattice.basis())
    })
}

pub fn check_cellular(pair: &CharacteristicPair) -> Status {
    let Ok(norm) = pair.normalize_smooth() else {
        return Status::Skipped;
    };
    let p = &norm.pair;
    let cb = match cellular_basis(p) {
        Ok(cb) => cb,
        Err(e) => return Status::Fail(format!("{e} on normalized pair {p}")),
    };
    let m = p.m();
    let j_span = Lattice::from_rows(m, [p.a_vector(), p.b_vector()]);
    for (i, (u, phi)) in cb.u.iter().zip(&cb.phi_xi).enumerate() {
        let diff: Vec<BigInt> = u.0.iter().zip(&phi.0).map(|(x, y)| x - y).collect();
        if !j_span.contains(&diff).expect("dimension m") {
            return Status::Fail(format!("u_{} - phi(xi_{}) not in span(a, b) for {p}", i + 1, i + 1));
        }
        match integrality_check(p, &u.to_polynomial()) {
            Ok(v) if v.passes() => {}
            _ => return Status::Fail(format!("u_{} = {u} not integral for {p}", i + 1)),
        }
        let chart = reduce_mod_j(p, phi).ok().and_then(|c| c.chart_rep);
        if chart.as_ref() != Some(u) {
            return Status::Fail(format!("chart representative of phi(xi_{}) is not u_{}", i + 1, i + 1));
        }
    }
    let truncated: Vec<LinearForm> = cb.u.iter().map(|u| LinearForm(u.0[..m - 2].to_vec())).collect();
    if m > 2 && rank_of(&truncated) != m - 2 {
        return Status::Fail(format!("cellular representatives dependent for {p}"));
    }
    Status::Pass
}

pub fn check_normalization(pair: &CharacteristicPair) -> Status {
    let Ok(norm) = pair.normalize_smooth() else {
        return Status::Skipped;
    };
    if norm.transform.determinant().abs() != BigInt::one() {
        return Status::Fail("normalizing transform is not unimodular".into());
    }
    let mut before: Vec<BigInt> = pair.vertex_dets().iter().map(Signed::abs).collect();
    let mut after: Vec<BigInt> = norm.pair.vertex_dets().iter().map(Signed::abs).collect();
    before.sort();
    after.sort();
    if before != after {
        return Status::Fail("vertex determinant multiset changed".into());
    }
    let (r0, r1) = (picard_report(pair), picard_report(&norm.pair));
    let same = r0.hypothesis_satisfied == r1.hypothesis_satisfied
        && r0.class_torsion == r1.class_torsion
        && r0.index == r1.index;
    verdict(same, || {
        format!(
            "invariants changed: index {} -> {}, torsion {:?} -> {:?}",
            r0.index, r1.index, r0.class_torsion, r1.class_torsion
        )
    })
}
