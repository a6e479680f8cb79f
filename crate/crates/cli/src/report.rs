//! Serializable reports. Every integer is a [`Dec`], so reports survive JSON
//! consumers limited to 53-bit numbers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use wsr_core::applications::CellularBasis;
use wsr_core::harness::{Check, Status, Summary, TrialConfig, TrialOutcome};
use wsr_core::pair::SmoothNormalization;
use wsr_core::wsr::IntegralityWitness;
use wsr_core::{
    CharacteristicPair, IntMatrix, LinearForm, PicardReport, TopologyReport, Violation, Wsr2Basis,
};

use crate::dec::Dec;
use crate::document::{terms_of, PairDocument, Term};

pub type Vector = Vec<Dec>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tool {
    pub name: String,
    pub version: String,
}

impl Tool {
    pub fn current() -> Self {
        Tool {
            name: "wsr".into(),
            version: env!("CARGO_PKG_VERSION").into(),
        }
    }
}

fn vectors(rows: &[Vec<BigInt>]) -> Vec<Vector> {
    rows.iter().map(|r| Dec::vec(r)).collect()
}

fn forms(fs: &[LinearForm]) -> Vec<Vector> {
    fs.iter().map(|f| Dec::vec(f.coeffs())).collect()
}

fn matrix_rows(m: &IntMatrix) -> Vec<Vector> {
    vectors(&m.row_vecs())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationOut {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    pub message: String,
}

impl ViolationOut {
    pub fn new(kind: &str, message: impl Into<String>) -> Self {
        ViolationOut {
            kind: kind.into(),
            index: None,
            message: message.into(),
        }
    }
}

impl From<&Violation> for ViolationOut {
    fn from(v: &Violation) -> Self {
        let (kind, index) = match v {
            Violation::TooFewEdges(_) => ("TooFewEdges", None),
            Violation::ZeroVector(i) => ("ZeroVector", Some(*i)),
            Violation::NotPrimitive(i) => ("NotPrimitive", Some(*i)),
            Violation::DegenerateVertex(i) => ("DegenerateVertex", Some(*i)),
        };
        ViolationOut {
            kind: kind.into(),
            index,
            message: v.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationOut {
    pub valid: bool,
    pub m: usize,
    pub violations: Vec<ViolationOut>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub smooth: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub standard_position: Option<bool>,
    /// det(λ_i, λ_{i+1}) for i = 1..m, cyclic.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vertex_dets: Vec<Dec>,
}

impl ValidationOut {
    pub fn valid(pair: &CharacteristicPair) -> Self {
        ValidationOut {
            valid: true,
            m: pair.m(),
            violations: Vec::new(),
            smooth: Some(pair.is_smooth()),
            standard_position: Some(pair.in_standard_position()),
            vertex_dets: Dec::vec(&pair.vertex_dets()),
        }
    }

    pub fn invalid(m: usize, violations: &[Violation]) -> Self {
        ValidationOut {
            valid: false,
            m,
            violations: violations.iter().map(ViolationOut::from).collect(),
            smooth: None,
            standard_position: None,
            vertex_dets: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologyOut {
    pub minor_gcd: Dec,
    pub h3_invariants: Vec<Dec>,
    pub even_cohomology: bool,
}

impl From<&TopologyReport> for TopologyOut {
    fn from(t: &TopologyReport) -> Self {
        TopologyOut {
            minor_gcd: Dec(t.minor_gcd.clone()),
            h3_invariants: Dec::vec(&t.h3_invariants),
            even_cohomology: t.even_cohomology,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisOut {
    pub a: Vector,
    pub b: Vector,
    /// Saturated basis κ_1..κ_{m-2} of ker Λ.
    pub kernel: Vec<Vector>,
    pub phi_images: Vec<Vector>,
    /// 𝐚, 𝐛, φ(κ_1), ..., φ(κ_{m-2}).
    pub basis: Vec<Vector>,
    /// Canonical row Hermite normal form of the lattice.
    pub hnf: Vec<Vector>,
    /// [Z^m : wSR²].
    pub index: Dec,
}

impl From<&Wsr2Basis> for BasisOut {
    fn from(w: &Wsr2Basis) -> Self {
        BasisOut {
            a: Dec::vec(w.a_form.coeffs()),
            b: Dec::vec(w.b_form.coeffs()),
            kernel: vectors(&w.kernel),
            phi_images: forms(&w.phi_images),
            basis: vectors(&w.vectors()),
            hnf: matrix_rows(w.lattice().basis()),
            index: Dec(w.determinant().abs()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PicardOut {
    pub cartier_basis: Vec<Vector>,
    pub picard_basis: Vec<Vector>,
    pub class_free_rank: usize,
    pub class_torsion: Vec<Dec>,
    /// [Cl : Pic].
    pub index: Dec,
    pub hypothesis_satisfied: bool,
}

impl From<&PicardReport> for PicardOut {
    fn from(p: &PicardReport) -> Self {
        PicardOut {
            cartier_basis: forms(&p.cartier_basis),
            picard_basis: forms(&p.picard_basis),
            class_free_rank: p.class_free_rank,
            class_torsion: Dec::vec(&p.class_torsion),
            index: Dec(p.index.clone()),
            hypothesis_satisfied: p.hypothesis_satisfied,
        }
    }
}

/// Change of torus coordinates applied before the cellular computation:
/// `lambda'_k = transform * lambda_{k + rotation}` (indices cyclic, 1-based).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizationOut {
    pub transform: Vec<Vector>,
    pub rotation: usize,
    pub lambda: Vec<[Dec; 2]>,
}

impl From<&SmoothNormalization> for NormalizationOut {
    fn from(n: &SmoothNormalization) -> Self {
        NormalizationOut {
            transform: matrix_rows(&n.transform),
            rotation: n.rotation,
            lambda: PairDocument::from_pair(&n.pair).lambda,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellularOut {
    /// Present when the input was not already in standard position; all
    /// vectors below are then in the normalized coordinates.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalization: Option<NormalizationOut>,
    pub xi: Vec<Vector>,
    pub phi_xi: Vec<Vector>,
    pub u: Vec<Vector>,
    pub v: Vec<Term>,
}

impl CellularOut {
    pub fn new(cb: &CellularBasis, normalization: Option<&SmoothNormalization>) -> Self {
        CellularOut {
            normalization: normalization.map(NormalizationOut::from),
            xi: vectors(&cb.xi),
            phi_xi: forms(&cb.phi_xi),
            u: forms(&cb.u),
            v: terms_of(&cb.v),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub tool: Tool,
    pub input: PairDocument,
    pub validation: ValidationOut,
    pub topology: TopologyOut,
    pub wsr2: BasisOut,
    pub picard: PicardOut,
    /// Absent when the pair has no smooth vertex.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cellular: Option<CellularOut>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateReport {
    pub tool: Tool,
    pub input: PairDocument,
    pub validation: ValidationOut,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisReport {
    pub tool: Tool,
    pub input: PairDocument,
    pub wsr2: BasisOut,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PicardReportOut {
    pub tool: Tool,
    pub input: PairDocument,
    pub picard: PicardOut,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellularReport {
    pub tool: Tool,
    pub input: PairDocument,
    pub cellular: CellularOut,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessOut {
    /// 1-based vertex index.
    pub vertex: usize,
    /// Exponent of the offending monomial in the local coordinates.
    pub exponent: [u32; 2],
    /// Non-integral coefficient as `p/q`.
    pub coefficient: String,
}

impl From<&IntegralityWitness> for WitnessOut {
    fn from(w: &IntegralityWitness) -> Self {
        WitnessOut {
            vertex: w.vertex,
            exponent: [w.exponent.0, w.exponent.1],
            coefficient: w.coefficient.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub tool: Tool,
    pub input: PairDocument,
    pub polynomial: Vec<Term>,
    pub integral: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessOut>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairOracleReport {
    pub tool: Tool,
    pub input: PairDocument,
    pub equal: bool,
    pub closed_form_hnf: Vec<Vector>,
    pub intersection_hnf: Vec<Vector>,
}

impl PairOracleReport {
    pub fn new(input: PairDocument, closed: &IntMatrix, oracle: &IntMatrix) -> Self {
        PairOracleReport {
            tool: Tool::current(),
            input,
            equal: closed == oracle,
            closed_form_hnf: matrix_rows(closed),
            intersection_hnf: matrix_rows(oracle),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigOut {
    pub m_min: usize,
    pub m_max: usize,
    pub bound: u64,
    pub trials: usize,
    pub seed: Dec,
    pub non_members_per_pair: usize,
}

impl From<&TrialConfig> for ConfigOut {
    fn from(c: &TrialConfig) -> Self {
        ConfigOut {
            m_min: c.m_min,
            m_max: c.m_max,
            bound: c.bound,
            trials: c.trials,
            seed: Dec(c.seed.into()),
            non_members_per_pair: c.non_members_per_pair,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TallyOut {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureOut {
    pub trial: usize,
    /// Seed that regenerates this trial's pair.
    pub seed: Dec,
    pub lambda: Vec<[Dec; 2]>,
    pub check: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarnessReport {
    pub tool: Tool,
    pub command: String,
    pub config: ConfigOut,
    pub passed: bool,
    pub checks: BTreeMap<String, TallyOut>,
    pub failures: Vec<FailureOut>,
}

impl HarnessReport {
    pub fn new(command: &str, config: &TrialConfig, outcomes: &[TrialOutcome]) -> Self {
        let summary = Summary::from_outcomes(outcomes);
        let checks = summary
            .per_check
            .iter()
            .map(|(c, t)| {
                let tally = TallyOut {
                    passed: t.passed,
                    failed: t.failed,
                    skipped: t.skipped,
                };
                (c.name().to_string(), tally)
            })
            .collect();
        let failures = outcomes
            .iter()
            .flat_map(|o| {
                o.results.iter().filter_map(move |(check, status)| match status {
                    Status::Fail(msg) => Some(failure(o, *check, msg)),
                    _ => None,
                })
            })
            .collect();
        HarnessReport {
            tool: Tool::current(),
            command: command.into(),
            config: config.into(),
            passed: summary.all_passed(),
            checks,
            failures,
        }
    }
}

fn failure(o: &TrialOutcome, check: Check, message: &str) -> FailureOut {
    FailureOut {
        trial: o.trial,
        seed: Dec(o.seed.into()),
        lambda: PairDocument::from_pair(&o.pair).lambda,
        check: check.name().into(),
        message: message.into(),
    }
}

/// Report for inputs that could not be processed or checks with no
/// structured report of their own.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub tool: Tool,
    /// `invalid`, `failed` or `internal`.
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<PairDocument>,
    pub violations: Vec<ViolationOut>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchEntry {
    pub file: String,
    pub exit_code: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<Value>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchSummary {
    pub files: usize,
    pub ok: usize,
    pub invalid: usize,
    pub failed: usize,
    pub internal: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchReport {
    pub tool: Tool,
    pub command: String,
    pub entries: Vec<BatchEntry>,
    pub summary: BatchSummary,
}
