//! The declarative catalog: every series, identity, companion, WZ pair,
//! lemma, parametrized family and expected value lives in a versioned JSON
//! document ("wzlab-catalog/1"); a default copy is compiled in.
//!
//! Loading validates the schema and the structural invariants (models take
//! the value 1/pi^m at x = 0, parity flags match alternation and model
//! parity, exact-checkable records carry a full WZ pair, ...) and reports
//! the offending record and field on failure.

use rug::{Float, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{poch_exact, rat_serde, rat_vec_serde, Rat};
use crate::mpreal::{self, working, ConstTag};
use crate::summation::{self, HarmonicWeight, HyperSeriesSpec};
use crate::trig::{ModelParity, TrigRationalModel};
use crate::wz::WZPairSpec;

pub const SCHEMA: &str = "wzlab-catalog/1";

/// A rational multiple of a tagged closed-form constant.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoefTag {
    #[serde(with = "rat_serde")]
    pub rat: Rat,
    pub tag: ConstTag,
}

impl CoefTag {
    pub fn value(&self, prec: u32) -> Float {
        let wp = working(prec);
        let v = self.tag.value(wp) * Float::with_val(wp, &self.rat);
        Float::with_val(prec, &v)
    }

    pub fn describe(&self) -> String {
        format!("{} * {:?}", self.rat, self.tag)
    }
}

/// A factor (offset)_x^exponent of a companion prefactor.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PochPrefactor {
    #[serde(with = "rat_serde")]
    pub offset: Rat,
    pub exponent: i64,
}

/// Rational function of x with integer coefficients, exact at rational x.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RationalFn {
    #[serde(with = "rat_vec_serde")]
    pub numer: Vec<Rat>,
    #[serde(with = "rat_vec_serde")]
    pub denom: Vec<Rat>,
}

impl RationalFn {
    /// Exact value at rational x; `None` at a denominator zero.
    pub fn eval_rat(&self, x: &Rat) -> Option<Rat> {
        let den = horner(&self.denom, x);
        if den.cmp0() == std::cmp::Ordering::Equal {
            return None;
        }
        Some(horner(&self.numer, x) / den)
    }

    pub fn eval_f(&self, x: &Float, wp: u32) -> Float {
        let num = horner_f(&self.numer, x, wp);
        let den = horner_f(&self.denom, x, wp);
        num / den
    }

    /// Leading numerator coefficient over the constant denominator
    /// coefficient: the x^m weight with which the companion's series value
    /// at x = 0 enters the order-m expansion coefficient.
    pub fn leading_over_const(&self) -> Option<(usize, Rat)> {
        let m = self.numer.iter().rposition(|c| c.cmp0() != std::cmp::Ordering::Equal)?;
        if self.numer[..m].iter().any(|c| c.cmp0() != std::cmp::Ordering::Equal) {
            return None;
        }
        if self.denom[0].cmp0() == std::cmp::Ordering::Equal {
            return None;
        }
        Some((m, Rational::from(&self.numer[m] / &self.denom[0])))
    }
}

fn horner(coeffs: &[Rat], at: &Rat) -> Rat {
    let mut acc = Rational::new();
    for c in coeffs.iter().rev() {
        acc *= at;
        acc += c;
    }
    acc
}

fn horner_f(coeffs: &[Rat], at: &Float, wp: u32) -> Float {
    let mut acc = Float::with_val(wp, 0);
    for c in coeffs.iter().rev() {
        acc *= at;
        acc += Float::with_val(wp, c);
    }
    acc
}

/// Periodicity class of s(x) = lhs(x) - companion(x) under x -> x + 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Periodic,
    Antiperiodic,
    None,
}

/// Which verification layers apply to a record.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CheckMode {
    #[serde(rename = "exact+numeric")]
    ExactNumeric,
    #[serde(rename = "numeric-only")]
    NumericOnly,
    #[serde(rename = "sum-only")]
    SumOnly,
}

/// The extended left-hand side of an identity: a constant prefactor times
/// sum_n g(n+x).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LhsSpec {
    pub prefactor: CoefTag,
    pub series: HyperSeriesSpec,
}

/// The companion term, as printed on the identity's right side (its sign is
/// carried by the rational function):
/// prefactor * base^x * prod (c)_x^e * rational_fn(x) * sum_n f(x, n).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CompanionSpec {
    pub prefactor: CoefTag,
    #[serde(with = "rat_serde")]
    pub base_pow_x: Rat,
    pub poch_prefactors: Vec<PochPrefactor>,
    pub rational_fn: RationalFn,
    pub series: HyperSeriesSpec,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdentityRecord {
    pub id: String,
    #[serde(default)]
    pub title: String,
    pub parity: Parity,
    pub check_mode: CheckMode,
    pub lhs: LhsSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub companion: Option<CompanionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_model: Option<TrigRationalModel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_expansion: Option<Vec<CoefTag>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_sum: Option<CoefTag>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wz: Option<WZPairSpec>,
}

/// What a lemma record asserts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaKind {
    /// Jet at x = 1/2 in the variable u = 2x - 1 matches `expected_jet_u`.
    JetAtHalf,
    /// Value matches the trig model at the sample points.
    TModelMatch,
    /// Jet at x = 0, after multiplying by the normalizer (c)_x factors,
    /// matches `expected_jet_u`.
    JetAtZeroNormalized,
    /// Harmonic-weighted alternating sum matches `expected_value`.
    HarmonicValue,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LemmaRecord {
    pub id: String,
    pub kind: LemmaKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prefactor: Option<CoefTag>,
    pub series: HyperSeriesSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_model: Option<TrigRationalModel>,
    #[serde(default, with = "rat_vec_serde", skip_serializing_if = "Vec::is_empty")]
    pub samples: Vec<Rat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalizer: Option<Vec<PochPrefactor>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_jet_u: Option<Vec<CoefTag>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub harmonic_weight: Option<HarmonicWeight>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_value: Option<CoefTag>,
}

/// Closed form a parametrized family is checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyExpected {
    Cos2PiKOverPi2,
    Const48OverPi2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyDomain {
    AbsKAtMostHalf,
    NonnegIntegerK,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub id: String,
    #[serde(default)]
    pub title: String,
    pub prefactor: CoefTag,
    pub poch_prefactors: Vec<PochPrefactor>,
    pub series: HyperSeriesSpec,
    pub expected: FamilyExpected,
    pub domain: FamilyDomain,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Catalog {
    pub schema: String,
    pub identities: Vec<IdentityRecord>,
    pub lemmas: Vec<LemmaRecord>,
    pub families: Vec<FamilyRecord>,
}

const DEFAULT_CATALOG: &str = include_str!("../data/catalog.json");

impl Catalog {
    /// The compiled-in default catalog.
    pub fn embedded() -> Result<Catalog> {
        Self::from_json(DEFAULT_CATALOG)
    }

    /// Load from a file path.
    pub fn load(path: &std::path::Path) -> Result<Catalog> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(e.to_string()))?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Catalog> {
        if text.trim().is_empty() {
            return Err(Error::SchemaError("empty catalog document".into()));
        }
        let cat: Catalog =
            serde_json::from_str(text).map_err(|e| Error::SchemaError(e.to_string()))?;
        cat.validate()?;
        Ok(cat)
    }

    pub fn identity(&self, id: &str) -> Result<&IdentityRecord> {
        self.identities
            .iter()
            .find(|r| r.id.eq_ignore_ascii_case(id))
            .ok_or_else(|| Error::UnknownId(id.to_string()))
    }

    pub fn lemma(&self, id: &str) -> Result<&LemmaRecord> {
        self.lemmas
            .iter()
            .find(|r| r.id.eq_ignore_ascii_case(id))
            .ok_or_else(|| Error::UnknownId(id.to_string()))
    }

    pub fn family(&self, id: &str) -> Result<&FamilyRecord> {
        self.families
            .iter()
            .find(|r| r.id.eq_ignore_ascii_case(id))
            .ok_or_else(|| Error::UnknownId(id.to_string()))
    }

    /// Structural invariants, checked at load time.
    pub fn validate(&self) -> Result<()> {
        if self.schema != SCHEMA {
            return Err(Error::SchemaError(format!(
                "unsupported schema `{}`, expected `{SCHEMA}`",
                self.schema
            )));
        }
        for rec in &self.identities {
            let viol = |field: &str, message: String| Error::InvariantViolation {
                record: rec.id.clone(),
                field: field.to_string(),
                message,
            };
            if !rec.lhs.series.extended {
                return Err(viol("lhs.series.extended", "lhs must be an extended series".into()));
            }
            if let Some(m) = &rec.t_model {
                match m.value_at_c_one() {
                    Some(v) if v == Rational::from(1) => {}
                    other => {
                        return Err(viol(
                            "t_model",
                            format!("t(0) must equal the 1/pi^m factor; numer(1)/denom(1) = {other:?}"),
                        ))
                    }
                }
                let model_parity = m.parity();
                match rec.parity {
                    Parity::Periodic if model_parity != ModelParity::Even => {
                        return Err(viol("t_model", "periodic record needs an even model".into()))
                    }
                    Parity::Antiperiodic if model_parity != ModelParity::Odd => {
                        return Err(viol("t_model", "antiperiodic record needs an odd model".into()))
                    }
                    _ => {}
                }
            }
            match rec.parity {
                Parity::Antiperiodic if !rec.lhs.series.alternating => {
                    return Err(viol(
                        "parity",
                        "antiperiodic records carry a (-1)^n factor on the lhs".into(),
                    ))
                }
                Parity::Periodic if rec.lhs.series.alternating => {
                    return Err(viol(
                        "parity",
                        "periodic records must not alternate on the lhs".into(),
                    ))
                }
                _ => {}
            }
            if let Some(exp) = &rec.expected_expansion {
                let head = exp
                    .first()
                    .ok_or_else(|| viol("expected_expansion", "empty".into()))?;
                let ok = head.rat == Rational::from(1)
                    && matches!(head.tag, ConstTag::InvPi | ConstTag::InvPi2);
                if !ok {
                    return Err(viol(
                        "expected_expansion[0]",
                        "order-0 coefficient must be 1/pi or 1/pi^2".into(),
                    ));
                }
            }
            if let Some(wz) = &rec.wz {
                if wz.base != rec.lhs.series.base {
                    return Err(viol("wz.base", "pair base must match the lhs series base".into()));
                }
                if wz.sign_n != rec.lhs.series.alternating {
                    return Err(viol("wz.sign_n", "pair (-1)^n flag must match the lhs".into()));
                }
                if rec.check_mode == CheckMode::ExactNumeric && wz.g_mult.is_none() {
                    return Err(viol(
                        "wz.g_mult",
                        "exact+numeric records need the full pair".into(),
                    ));
                }
            } else if rec.check_mode == CheckMode::ExactNumeric {
                return Err(viol("wz", "exact+numeric records need a WZ pair".into()));
            }
            if let Some(c) = &rec.companion {
                if c.series.extended {
                    return Err(viol("companion.series", "companion series are not extended".into()));
                }
            }
        }
        for rec in &self.lemmas {
            let viol = |field: &str, message: String| Error::InvariantViolation {
                record: rec.id.clone(),
                field: field.to_string(),
                message,
            };
            match rec.kind {
                LemmaKind::JetAtHalf | LemmaKind::JetAtZeroNormalized => {
                    if rec.expected_jet_u.is_none() {
                        return Err(viol("expected_jet_u", "required for jet lemmas".into()));
                    }
                }
                LemmaKind::TModelMatch => {
                    if rec.t_model.is_none() || rec.samples.is_empty() {
                        return Err(viol("t_model/samples", "required for model-match lemmas".into()));
                    }
                }
                LemmaKind::HarmonicValue => {
                    if rec.harmonic_weight.is_none() || rec.expected_value.is_none() {
                        return Err(viol(
                            "harmonic_weight/expected_value",
                            "required for harmonic-value lemmas".into(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Parametrized families
// ---------------------------------------------------------------------------

/// Evaluate a parametrized family at rational k.
pub fn family_eval(cat: &Catalog, id: &str, k: &Rat, prec: u32) -> Result<Float> {
    let rec = cat.family(id)?;
    match rec.domain {
        FamilyDomain::AbsKAtMostHalf => {
            if k.clone().abs() > Rational::from((1, 2)) {
                return Err(Error::ParameterOutOfDomain(
                    rec.id.clone(),
                    format!("|k| must be <= 1/2, got {k}"),
                ));
            }
        }
        FamilyDomain::NonnegIntegerK => {
            if !k.is_integer() || k.cmp0() == std::cmp::Ordering::Less {
                return Err(Error::ParameterOutOfDomain(
                    rec.id.clone(),
                    format!("k must be a non-negative integer, got {k}"),
                ));
            }
        }
    }
    let wp = working(prec) + 32;
    // substitute k exactly into the weight so removable 0/0 factors cancel
    let mut spec = rec.series.clone();
    if let Some(ew) = &spec.extra_weight {
        let (num, den) = ew.substitute_k(k);
        spec.extra_weight = Some(univariate_birat(&num, &den));
    }
    let kf = Float::with_val(wp, k);
    let eps = Float::with_val(64, Float::i_exp(1, -(working(prec) as i32) + 16));
    let inner = summation::sum_series_scalar(&spec, &kf, wp, &eps)?;
    let mut acc = inner.value;
    acc *= rec.prefactor.value(wp);
    for p in &rec.poch_prefactors {
        let v = if k.is_integer() && k.cmp0() != std::cmp::Ordering::Less {
            Float::with_val(wp, &poch_exact(&p.offset, k.to_f64() as u32))
        } else {
            mpreal::poch_real(&p.offset, &kf, wp)?
        };
        let e = p.exponent;
        if e >= 0 {
            for _ in 0..e {
                acc *= &v;
            }
        } else {
            for _ in 0..(-e) {
                acc /= &v;
            }
        }
    }
    Ok(Float::with_val(prec, &acc))
}

/// The closed form a family is compared against.
pub fn family_expected(cat: &Catalog, id: &str, k: &Rat, prec: u32) -> Result<Float> {
    let rec = cat.family(id)?;
    let wp = working(prec);
    let v = match rec.expected {
        FamilyExpected::Cos2PiKOverPi2 => {
            let c = mpreal::cospi_rat(k, wp);
            c.square() / mpreal::const_pi(wp).square()
        }
        FamilyExpected::Const48OverPi2 => {
            Float::with_val(wp, 48) / mpreal::const_pi(wp).square()
        }
    };
    Ok(Float::with_val(prec, &v))
}

/// Univariate rational-coefficient polynomials packed back into an
/// integer-coefficient bivariate pair (constant in the second variable).
fn univariate_birat(num: &[Rat], den: &[Rat]) -> crate::exact::BiRat {
    use rug::Integer;
    let mut scale = Integer::from(1);
    for c in num.iter().chain(den.iter()) {
        scale = scale.lcm(c.denom());
    }
    let to_rows = |coeffs: &[Rat]| -> Vec<Vec<Integer>> {
        coeffs
            .iter()
            .map(|c| vec![Integer::from(c.numer() * &scale) / c.denom()])
            .collect()
    };
    crate::exact::BiRat {
        numer: crate::exact::BiPoly { rows: to_rows(num) },
        denom: crate::exact::BiPoly { rows: to_rows(den) },
    }
}
