//! Serializable check reports ("wzlab-report/1" payloads).
//!
//! Numeric values are carried as decimal strings with a precision tag, never
//! as binary floats, so reports are lossless to read and byte-stable to
//! regenerate.

use rug::Float;
use serde::{Deserialize, Serialize};

use crate::mpreal::to_decimal_string;

/// Decimal rendering of an arbitrary-precision value.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Decimal {
    pub decimal: String,
    pub precision_bits: u32,
}

impl Decimal {
    pub fn of(v: &Float) -> Decimal {
        Decimal {
            decimal: to_decimal_string(v),
            precision_bits: v.prec(),
        }
    }
}

/// A point excluded from a check, with the reason (poles, domain edges).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExcludedPoint {
    pub x: String,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ResidualPoint {
    pub x: String,
    pub lhs: Decimal,
    pub companion: Decimal,
    pub t: Decimal,
    pub residual: Decimal,
    /// Cross-method agreement of the companion evaluation, when an
    /// accelerated or regularized engine produced it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreement: Option<Decimal>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ResidualReport {
    pub id: String,
    pub kind: String,
    pub precision_bits: u32,
    pub tolerance: String,
    pub points: Vec<ResidualPoint>,
    pub excluded: Vec<ExcludedPoint>,
    pub max_residual: String,
    pub methods: Vec<String>,
    pub warnings: Vec<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PeriodicityPoint {
    pub x: String,
    pub s_at_x: Decimal,
    pub s_at_x_plus_1: Decimal,
    pub defect: Decimal,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PeriodicityReport {
    pub id: String,
    pub kind: String,
    pub parity: String,
    pub precision_bits: u32,
    pub tolerance: String,
    pub points: Vec<PeriodicityPoint>,
    pub excluded: Vec<ExcludedPoint>,
    pub max_defect: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoefficientRow {
    pub order: usize,
    pub computed: Decimal,
    pub expected_form: String,
    pub expected: Decimal,
    pub abs_err: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CrossCheckRow {
    /// The expansion order tied to the companion's leading power.
    pub order: usize,
    /// t-jet coefficient plus the companion's leading weight times its
    /// series value at 0.
    pub via_t_plus_companion: Decimal,
    pub abs_err: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExpansionReport {
    pub id: String,
    pub kind: String,
    pub precision_bits: u32,
    pub tolerance: String,
    pub coefficients: Vec<CoefficientRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<CrossCheckRow>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LemmaRow {
    pub label: String,
    pub computed: Decimal,
    pub expected_form: String,
    pub expected: Decimal,
    pub abs_err: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LemmaReport {
    pub id: String,
    pub kind: String,
    pub precision_bits: u32,
    pub tolerance: String,
    pub rows: Vec<LemmaRow>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WzGridReport {
    pub id: String,
    pub kind: String,
    pub grid: u32,
    pub cells: usize,
    pub poles: usize,
    pub nonzero_cells: Vec<(u32, u32)>,
    pub certificate_consistent: bool,
    pub skipped: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skip_reason: Option<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SumReport {
    pub id: String,
    pub kind: String,
    pub precision_bits: u32,
    pub value: Decimal,
    pub terms_used: usize,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail_bound: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreement: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<Decimal>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abs_err: Option<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyPoint {
    pub k: String,
    pub value: Decimal,
    pub expected: Decimal,
    pub abs_err: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyReport {
    pub id: String,
    pub kind: String,
    pub precision_bits: u32,
    pub tolerance: String,
    pub points: Vec<FamilyPoint>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GuessReport {
    pub id: String,
    pub kind: String,
    pub precision_bits: u32,
    /// Supplied denominator polynomial in c, low order first.
    pub denominator: Vec<String>,
    /// Reconstructed numerator coefficients (alpha), one per even power.
    pub alphas: Vec<String>,
    /// The same coefficients placed on the full power basis.
    pub numerator: Vec<String>,
    pub fit_residual: String,
    pub samples_used: Vec<String>,
    pub samples_dropped: Vec<ExcludedPoint>,
    /// Whether the reconstruction matches the catalog's stored model.
    pub matches_catalog: bool,
    pub pass: bool,
}
