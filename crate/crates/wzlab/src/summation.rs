//! Series evaluation: declarative hypergeometric series over floats or jets,
//! with three engines.
//!
//! * [`sum_direct`]: |base| < 1, term recurrence plus a geometric tail bound.
//! * [`sum_alternating`]: base 1 with a (-1)^n factor; two independent
//!   acceleration schemes (Euler transform and the Chebyshev-based CVZ
//!   algorithm) are run and compared, which is also how Abel values of
//!   divergent alternating series are assigned.
//! * [`sum_regularized`] (in [`zeta_tail`]): base 1 without alternation,
//!   where the terms behave like n^sigma; the tail is summed through the
//!   analytic continuation of Hurwitz zeta, which extends the convergent
//!   regime analytically in the displacement parameter.
//!
//! [`sum_series_scalar`] dispatches between them on the spec's base and
//! alternation flag.

use rug::{Float, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{rat_serde, rat_vec_serde, BiRat, PochFactor, Rat, Side};
use crate::jet::Jet;
use crate::mpreal::{self, working};

pub mod accel;
pub mod zeta_tail;

pub use zeta_tail::sum_regularized;

/// Declarative description of one hypergeometric series in the summation
/// index n.
///
/// The term is
/// ```text
/// base^n * (-1)^(n?) * prod_i (offset_i + coupling_i * x)_n^(+-e_i)
///        * weight(n + x) * extra_weight(n, x)
/// ```
/// For extended series (`extended = true`) the caller additionally applies
/// the displacement prefactor base^x * prod_i (offset_i)_x^(+-e_i), which
/// turns the sum into sum_n g(n+x); see [`extended_prefactor`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HyperSeriesSpec {
    #[serde(with = "rat_serde")]
    pub base: Rat,
    pub alternating: bool,
    #[serde(default)]
    pub extended: bool,
    pub factors: Vec<PochFactor>,
    /// Polynomial in (n + x), low order first; extended series only.
    #[serde(default, with = "rat_vec_serde", skip_serializing_if = "Vec::is_empty")]
    pub weight: Vec<Rat>,
    /// Bivariate rational weight in (n, x); companion and lemma series.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extra_weight: Option<BiRat>,
}

impl HyperSeriesSpec {
    /// Power-like exponent sigma of the terms at large n (weights included),
    /// for a fixed parameter value.
    pub fn sigma_at(&self, x: &Float) -> Float {
        let wp = x.prec();
        let mut rho = Float::with_val(wp, 0);
        for f in &self.factors {
            let c = Float::with_val(wp, &f.offset) + Float::with_val(wp, &f.k_coupling) * x;
            rho += c * Float::with_val(wp, f.signed_exponent());
        }
        let mut d = self.weight.len().saturating_sub(1) as i64;
        if let Some(ew) = &self.extra_weight {
            d += (ew.numer.rows.len() as i64 - 1) - (ew.denom.rows.len() as i64 - 1);
        }
        rho + Float::with_val(wp, d)
    }

    /// Pochhammer offset that degenerates to a non-positive integer at the
    /// given displacement, if any; such a displacement is outside the
    /// series' domain.
    pub fn offending_offset(&self, x: &Rat) -> Option<Rat> {
        for f in &self.factors {
            let o = f.offset_at(x);
            if o.cmp0() != std::cmp::Ordering::Greater && o.is_integer() {
                return Some(o);
            }
        }
        None
    }
}

/// How a sum was computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Direct,
    Euler,
    Cvz,
    ZetaEm,
}

/// Value of a summed series together with its accuracy evidence: a rigorous
/// geometric tail bound for direct sums, or a cross-method agreement
/// estimate for accelerated/regularized ones.
#[derive(Clone, Debug)]
pub struct SumResult<T> {
    pub value: T,
    pub terms_used: usize,
    pub method: Method,
    pub tail_bound: Option<Float>,
    pub agreement: Option<Float>,
}

// ---------------------------------------------------------------------------
// Scalar abstraction: the engines run over floats and jets alike
// ---------------------------------------------------------------------------

/// Ring operations shared by `Float` and `Jet`, enough to generate terms and
/// run linear acceleration schemes coefficient-wise.
pub trait SumScalar: Clone + Send + Sync {
    fn prec2(&self) -> u32;
    fn with_prec(&self, prec: u32) -> Self;
    fn zero_like(&self) -> Self;
    fn from_rat_like(&self, r: &Rat) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Result<Self>;
    fn scale_f(&self, f: &Float) -> Self;
    fn add_rat(&self, r: &Rat) -> Self;
    fn mul_rat(&self, r: &Rat) -> Self;
    fn max_abs(&self) -> Float;
}

impl SumScalar for Float {
    fn prec2(&self) -> u32 {
        self.prec()
    }
    fn with_prec(&self, prec: u32) -> Self {
        Float::with_val(prec, self)
    }
    fn zero_like(&self) -> Self {
        Float::with_val(self.prec(), 0)
    }
    fn from_rat_like(&self, r: &Rat) -> Self {
        Float::with_val(self.prec(), r)
    }
    fn add(&self, o: &Self) -> Self {
        Float::with_val(self.prec().max(o.prec()), self + o)
    }
    fn sub(&self, o: &Self) -> Self {
        Float::with_val(self.prec().max(o.prec()), self - o)
    }
    fn neg(&self) -> Self {
        Float::with_val(self.prec(), -self)
    }
    fn mul(&self, o: &Self) -> Self {
        Float::with_val(self.prec().max(o.prec()), self * o)
    }
    fn div(&self, o: &Self) -> Result<Self> {
        if o.cmp0() == Some(std::cmp::Ordering::Equal) {
            return Err(Error::DivisionByZeroConstantTerm);
        }
        Ok(Float::with_val(self.prec().max(o.prec()), self / o))
    }
    fn scale_f(&self, f: &Float) -> Self {
        Float::with_val(self.prec(), self * f)
    }
    fn add_rat(&self, r: &Rat) -> Self {
        Float::with_val(self.prec(), self + Float::with_val(self.prec(), r))
    }
    fn mul_rat(&self, r: &Rat) -> Self {
        Float::with_val(self.prec(), self * Float::with_val(self.prec(), r))
    }
    fn max_abs(&self) -> Float {
        self.clone().abs()
    }
}

impl SumScalar for Jet {
    fn prec2(&self) -> u32 {
        self.prec()
    }
    fn with_prec(&self, prec: u32) -> Self {
        Jet {
            center: self.center.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|c| Float::with_val(prec, c))
                .collect(),
        }
    }
    fn zero_like(&self) -> Self {
        Jet::zero_like(self)
    }
    fn from_rat_like(&self, r: &Rat) -> Self {
        Jet::constant_rat(r, &self.center, self.order(), self.prec())
    }
    fn add(&self, o: &Self) -> Self {
        Jet::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Jet::sub(self, o)
    }
    fn neg(&self) -> Self {
        Jet::neg(self)
    }
    fn mul(&self, o: &Self) -> Self {
        Jet::mul(self, o)
    }
    fn div(&self, o: &Self) -> Result<Self> {
        Jet::div(self, o)
    }
    fn scale_f(&self, f: &Float) -> Self {
        Jet::scale(self, f)
    }
    fn add_rat(&self, r: &Rat) -> Self {
        Jet::add_rat(self, r)
    }
    fn mul_rat(&self, r: &Rat) -> Self {
        Jet::scale_rat(self, r)
    }
    fn max_abs(&self) -> Float {
        Jet::max_abs(self)
    }
}

// ---------------------------------------------------------------------------
// Term generation
// ---------------------------------------------------------------------------

/// Streams the (sign-free) terms of a series at a fixed parameter value by
/// the first-order recurrence in n.
pub struct TermIter<'a, T: SumScalar> {
    spec: &'a HyperSeriesSpec,
    x: T,
    kern: T,
    n: u32,
}

impl<'a, T: SumScalar> TermIter<'a, T> {
    pub fn new(spec: &'a HyperSeriesSpec, x: &T) -> TermIter<'a, T> {
        let one = x.from_rat_like(&Rational::from(1));
        TermIter {
            spec,
            x: x.clone(),
            kern: one,
            n: 0,
        }
    }

    /// True once a Pochhammer factor vanished exactly; every later term is
    /// zero.
    pub fn kernel_dead(&self) -> bool {
        self.kern.max_abs().cmp0() == Some(std::cmp::Ordering::Equal)
    }

    /// Produce term n and advance the recurrence.
    pub fn next_term(&mut self) -> Result<T> {
        let n = self.n;
        let mut term = self.kern.clone();
        if !self.spec.weight.is_empty() {
            let arg = self.x.add_rat(&Rational::from(n));
            term = term.mul(&poly_at(&self.spec.weight, &arg));
        }
        if let Some(ew) = &self.spec.extra_weight {
            term = term.mul(&birat_at(ew, n, &self.x)?);
        }
        // advance kernel to n+1
        for f in &self.spec.factors {
            let lin = self
                .x
                .mul_rat(&f.k_coupling)
                .add_rat(&Rational::from(&f.offset + Rational::from(n)));
            for _ in 0..f.exponent {
                match f.side {
                    Side::Num => self.kern = self.kern.mul(&lin),
                    Side::Den => self.kern = self.kern.div(&lin)?,
                }
            }
        }
        self.kern = self.kern.mul_rat(&self.spec.base);
        self.n += 1;
        Ok(term)
    }
}

/// Horner evaluation of a rational-coefficient polynomial at a generic
/// scalar.
pub fn poly_at<T: SumScalar>(coeffs: &[Rat], at: &T) -> T {
    let mut acc = at.zero_like();
    for c in coeffs.iter().rev() {
        acc = acc.mul(at).add_rat(c);
    }
    acc
}

/// Evaluate a bivariate rational weight at integer n and generic x.
pub fn birat_at<T: SumScalar>(b: &BiRat, n: u32, x: &T) -> Result<T> {
    let nq = Rational::from(n);
    let eval_poly = |rows: &Vec<Vec<rug::Integer>>| -> T {
        let mut acc = x.zero_like();
        for row in rows.iter().rev() {
            let row_rats: Vec<Rat> = row.iter().map(Rational::from).collect();
            acc = acc.mul_rat(&nq).add(&poly_at(&row_rats, x));
        }
        acc
    };
    let num = eval_poly(&b.numer.rows);
    let den = eval_poly(&b.denom.rows);
    num.div(&den)
}

// ---------------------------------------------------------------------------
// Engines
// ---------------------------------------------------------------------------

/// Direct summation for |base| < 1 with a geometric tail bound: stops when
/// the observed term ratio stays below r_cap = (1+|z|)/2 and
/// |t| r_cap/(1-r_cap) < eps.
pub fn sum_direct<T: SumScalar>(
    spec: &HyperSeriesSpec,
    x: &T,
    prec: u32,
    eps: &Float,
) -> Result<SumResult<T>> {
    let base_f = Float::with_val(64, &spec.base).abs();
    if base_f >= 1 {
        return Err(Error::NoConvergence(spec.base.to_string()));
    }
    let wp = working(prec);
    let xw = x.with_prec(wp);
    let r_cap = Float::with_val(64, (1.0 + base_f.to_f64()) / 2.0);
    let mut it = TermIter::new(spec, &xw);
    let mut sum = xw.zero_like();
    let mut prev_mag: Option<Float> = None;
    let mut calm_steps = 0usize;
    let mut stall = 0usize;
    let mut n = 0usize;
    loop {
        let t = it.next_term()?;
        let signed = if spec.alternating && n % 2 == 1 {
            t.neg()
        } else {
            t.clone()
        };
        sum = sum.add(&signed);
        let mag = t.max_abs();
        if it.kernel_dead() {
            return Ok(SumResult {
                value: sum.with_prec(prec),
                terms_used: n + 1,
                method: Method::Direct,
                tail_bound: Some(Float::with_val(prec, 0)),
                agreement: None,
            });
        }
        if let Some(pm) = &prev_mag {
            if pm.cmp0() != Some(std::cmp::Ordering::Equal) {
                let ratio = Float::with_val(64, &mag / pm);
                if ratio <= r_cap {
                    calm_steps += 1;
                    stall = 0;
                } else {
                    calm_steps = 0;
                    if ratio >= 1 {
                        stall += 1;
                        if stall >= 64 {
                            return Err(Error::NoConvergence(spec.base.to_string()));
                        }
                    }
                }
            }
        }
        if calm_steps >= 3 {
            let tail = Float::with_val(64, &mag * &r_cap)
                / (Float::with_val(64, 1) - &r_cap);
            if tail < *eps {
                return Ok(SumResult {
                    value: sum.with_prec(prec),
                    terms_used: n + 1,
                    method: Method::Direct,
                    tail_bound: Some(tail),
                    agreement: None,
                });
            }
        }
        prev_mag = Some(mag);
        n += 1;
        if n > 2_000_000 {
            return Err(Error::NoConvergence(spec.base.to_string()));
        }
    }
}

/// Alternating summation at base 1 through two independent acceleration
/// schemes; their agreement is the accuracy certificate, and divergent
/// (Abel-summable) inputs are fine.
pub fn sum_alternating<T: SumScalar>(
    spec: &HyperSeriesSpec,
    x: &T,
    prec: u32,
    eps: &Float,
) -> Result<SumResult<T>> {
    if !spec.alternating {
        return Err(Error::NoConvergence(format!(
            "base {} without alternation",
            spec.base
        )));
    }
    let wp = working(prec);
    // CVZ needs ~wp/log2(3+sqrt 8) terms and cancels ~2.55 bits per term;
    // Euler needs ~wp terms and cancels only the term-magnitude overhead.
    let m_cvz = ((wp as f64) / 2.544).ceil() as usize + 24;
    let m_euler = wp as usize + 64;
    let terms_needed = m_euler.max(m_cvz) + 2;
    let wq = wp + (2.544 * m_cvz as f64) as u32 + 128;
    let xq = x.with_prec(wq);
    let mut it = TermIter::new(spec, &xq);
    let mut terms = Vec::with_capacity(terms_needed);
    for _ in 0..terms_needed {
        terms.push(it.next_term()?);
    }
    finish_alternating(&terms, m_euler, m_cvz, prec, eps)
}

fn finish_alternating<T: SumScalar>(
    terms: &[T],
    m_euler: usize,
    m_cvz: usize,
    prec: u32,
    eps: &Float,
) -> Result<SumResult<T>> {
    let e = accel::euler_transform(&terms[..m_euler]);
    let c = accel::cvz(&terms[..m_cvz]);
    let agreement = e.sub(&c).max_abs();
    let allowed = Float::with_val(64, eps) << 16;
    if agreement > allowed {
        return Err(Error::MethodDisagreement(
            mpreal::to_decimal_string(&agreement),
            mpreal::to_decimal_string(&allowed),
        ));
    }
    Ok(SumResult {
        value: c.with_prec(prec),
        terms_used: m_euler.max(m_cvz),
        method: Method::Cvz,
        tail_bound: None,
        agreement: Some(agreement),
    })
}

/// Engine dispatch for jet-valued (and generic) summation; base-1
/// non-alternating series only have a scalar engine.
pub fn sum_series<T: SumScalar>(
    spec: &HyperSeriesSpec,
    x: &T,
    prec: u32,
    eps: &Float,
) -> Result<SumResult<T>> {
    let one = Rational::from(1);
    if spec.base.clone().abs() < one {
        sum_direct(spec, x, prec, eps)
    } else if spec.base == one && spec.alternating {
        sum_alternating(spec, x, prec, eps)
    } else {
        Err(Error::NoConvergence(spec.base.to_string()))
    }
}

/// Scalar dispatch including the zeta-regularized engine for base-1
/// non-alternating series.
pub fn sum_series_scalar(
    spec: &HyperSeriesSpec,
    x: &Float,
    prec: u32,
    eps: &Float,
) -> Result<SumResult<Float>> {
    let one = Rational::from(1);
    if spec.base.clone().abs() < one {
        sum_direct(spec, x, prec, eps)
    } else if spec.base == one && spec.alternating {
        sum_alternating(spec, x, prec, eps)
    } else if spec.base == one {
        sum_regularized(spec, x, prec, eps)
    } else {
        Err(Error::NoConvergence(spec.base.to_string()))
    }
}

// ---------------------------------------------------------------------------
// Extended series: displacement prefactor
// ---------------------------------------------------------------------------

/// base^x * prod_i (offset_i)_x^(+-e_i) at a real displacement.
pub fn extended_prefactor(spec: &HyperSeriesSpec, x: &Float, prec: u32) -> Result<Float> {
    let wp = working(prec);
    let mut acc = mpreal::pow_real(&spec.base, x, wp)?;
    for f in &spec.factors {
        let p = mpreal::poch_real(&f.offset, x, wp)?;
        match f.side {
            Side::Num => {
                for _ in 0..f.exponent {
                    acc *= &p;
                }
            }
            Side::Den => {
                for _ in 0..f.exponent {
                    acc /= &p;
                }
            }
        }
    }
    Ok(Float::with_val(prec, &acc))
}

/// Jet of the displacement prefactor around a rational center.
pub fn extended_prefactor_jet(
    spec: &HyperSeriesSpec,
    center: &Rat,
    order: usize,
    prec: u32,
) -> Result<Jet> {
    let wp = working(prec);
    let mut acc = crate::jet::pow_jet(&spec.base, center, order, wp)?;
    for f in &spec.factors {
        let p = crate::jet::poch_param_jet(&f.offset, center, order, wp)?;
        acc = acc.mul(&p.pow_i(f.signed_exponent())?);
    }
    Ok(acc)
}

/// Value of the extended series sum_n g(n+x) at a real displacement,
/// prefactor included.
pub fn sum_extended(
    spec: &HyperSeriesSpec,
    x: &Float,
    prec: u32,
    eps: &Float,
) -> Result<SumResult<Float>> {
    let wp = working(prec);
    let xw = Float::with_val(wp, x);
    let pre = extended_prefactor(spec, &xw, wp)?;
    let mut inner = sum_series_scalar(spec, &xw, wp, eps)?;
    inner.value = Float::with_val(prec, inner.value * pre);
    Ok(inner)
}

/// Jet of the extended series around a rational center, prefactor included.
pub fn sum_extended_jet(
    spec: &HyperSeriesSpec,
    center: &Rat,
    order: usize,
    prec: u32,
    eps: &Float,
) -> Result<SumResult<Jet>> {
    let wp = working(prec);
    let pre = extended_prefactor_jet(spec, center, order, wp)?;
    let x = Jet::variable(center, order, wp);
    let mut inner = sum_series(spec, &x, wp, eps)?;
    inner.value = inner.value.mul(&pre).with_prec(prec);
    Ok(inner)
}

// ---------------------------------------------------------------------------
// Harmonic-number weights
// ---------------------------------------------------------------------------

/// Weight of the form plain(n) + h_poly(n) * H_n attached to an alternating
/// series; H_n is carried by exact recurrence and converted per term.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HarmonicWeight {
    #[serde(with = "rat_vec_serde")]
    pub plain: Vec<Rat>,
    #[serde(with = "rat_vec_serde")]
    pub h_poly: Vec<Rat>,
}

/// Alternating sum with a harmonic-number weight, via the same two
/// acceleration schemes.
pub fn sum_alternating_harmonic(
    spec: &HyperSeriesSpec,
    hw: &HarmonicWeight,
    prec: u32,
    eps: &Float,
) -> Result<SumResult<Float>> {
    if !spec.alternating || spec.base != Rational::from(1) {
        return Err(Error::NoConvergence(spec.base.to_string()));
    }
    let wp = working(prec);
    let m_cvz = ((wp as f64) / 2.544).ceil() as usize + 24;
    let m_euler = wp as usize + 64;
    let terms_needed = m_euler.max(m_cvz) + 2;
    let wq = wp + (2.544 * m_cvz as f64) as u32 + 128;
    let x0 = Float::with_val(wq, 0);
    let mut it = TermIter::new(spec, &x0);
    let mut h = Rational::new();
    let mut terms = Vec::with_capacity(terms_needed);
    for n in 0..terms_needed {
        let kern_term = it.next_term()?;
        let nq = Rational::from(n as u32);
        let weight = Float::with_val(wq, &eval_rat_poly(&hw.plain, &nq))
            + Float::with_val(wq, &eval_rat_poly(&hw.h_poly, &nq)) * Float::with_val(wq, &h);
        terms.push(kern_term * weight);
        h += Rational::from((1u32, n as u32 + 1));
    }
    finish_alternating(&terms, m_euler, m_cvz, prec, eps)
}

fn eval_rat_poly(coeffs: &[Rat], at: &Rat) -> Rat {
    let mut acc = Rational::new();
    for c in coeffs.iter().rev() {
        acc *= at;
        acc += c;
    }
    acc
}
