//! Closed forms rational in cos(pi x), scaled by 1/pi or 1/pi^2.

use rug::{Float, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{rat_vec_serde, Rat};
use crate::jet::{cospi_jet, Jet};
use crate::mpreal::{self, working};

/// Overall transcendental scale of a model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PiPower {
    InvPi,
    InvPi2,
}

impl PiPower {
    pub fn value(self, prec: u32) -> Float {
        match self {
            PiPower::InvPi => mpreal::const_pi(prec).recip(),
            PiPower::InvPi2 => mpreal::const_pi(prec).square().recip(),
        }
    }

    /// Exponent m with scale 1/pi^m.
    pub fn exponent(self) -> u32 {
        match self {
            PiPower::InvPi => 1,
            PiPower::InvPi2 => 2,
        }
    }
}

/// Parity of a function of x under x -> x+1 (i.e. c -> -c).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelParity {
    Even,
    Odd,
    Mixed,
}

/// factor * numer(c)/denom(c) with c = cos(pi x); polynomial coefficients
/// are exact rationals, low order first.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrigRationalModel {
    pub factor: PiPower,
    #[serde(with = "rat_vec_serde")]
    pub numer: Vec<Rat>,
    #[serde(with = "rat_vec_serde")]
    pub denom: Vec<Rat>,
}

impl TrigRationalModel {
    /// Exact value of numer(1)/denom(1); the catalog requires this to be 1
    /// so that the model takes the value `factor` at x = 0.
    pub fn value_at_c_one(&self) -> Option<Rat> {
        let num = eval_poly(&self.numer, &Rational::from(1));
        let den = eval_poly(&self.denom, &Rational::from(1));
        if den.cmp0() == std::cmp::Ordering::Equal {
            return None;
        }
        Some(num / den)
    }

    /// True when the denominator vanishes at cos(pi x) within
    /// 2^(32 - prec).
    pub fn is_pole_at(&self, x: &Rat, prec: u32) -> bool {
        let wp = working(prec);
        let c = mpreal::cospi_rat(x, wp);
        let den = eval_poly_f(&self.denom, &c, wp);
        den.abs() < Float::with_val(64, Float::i_exp(1, 32 - prec as i32))
    }

    /// Evaluate at rational x with exact argument reduction.
    pub fn eval_rat(&self, x: &Rat, prec: u32) -> Result<Float> {
        let wp = working(prec);
        let c = mpreal::cospi_rat(x, wp);
        let v = self.eval_at_c(&c, prec)?;
        if self.is_pole_at(x, prec) {
            return Err(Error::PoleAtX(x.to_string()));
        }
        Ok(v)
    }

    /// Evaluate given c = cos(pi x) directly (used by the reconstruction
    /// path, where c is an exact rational sample).
    pub fn eval_at_c(&self, c: &Float, prec: u32) -> Result<Float> {
        let wp = working(prec);
        let cf = Float::with_val(wp, c);
        let den = eval_poly_f(&self.denom, &cf, wp);
        if den.clone().abs() < Float::with_val(64, Float::i_exp(1, 32 - prec as i32)) {
            return Err(Error::PoleAtX(format!("c = {}", mpreal::to_decimal_string(&cf))));
        }
        let num = eval_poly_f(&self.numer, &cf, wp);
        let v = num / den * self.factor.value(wp);
        Ok(Float::with_val(prec, &v))
    }

    /// Jet around a rational center.
    pub fn jet_at(&self, center: &Rat, order: usize, prec: u32) -> Result<Jet> {
        let wp = working(prec);
        let c = cospi_jet(center, order, wp);
        let den = c.poly_at(&self.denom);
        if den.coeffs[0].clone().abs() < Float::with_val(64, Float::i_exp(1, 32 - prec as i32)) {
            return Err(Error::PoleAtCenter(center.to_string()));
        }
        let num = c.poly_at(&self.numer);
        Ok(num.div(&den)?.scale(&self.factor.value(wp)))
    }

    /// Parity under c -> -c: even models are periodic in x, odd models
    /// antiperiodic.
    pub fn parity(&self) -> ModelParity {
        match (poly_parity(&self.numer), poly_parity(&self.denom)) {
            (Some(a), Some(b)) if a == b => ModelParity::Even,
            (Some(_), Some(_)) => ModelParity::Odd,
            _ => ModelParity::Mixed,
        }
    }
}

fn eval_poly(coeffs: &[Rat], at: &Rat) -> Rat {
    let mut acc = Rational::new();
    for c in coeffs.iter().rev() {
        acc *= at;
        acc += c;
    }
    acc
}

fn eval_poly_f(coeffs: &[Rat], at: &Float, wp: u32) -> Float {
    let mut acc = Float::with_val(wp, 0);
    for c in coeffs.iter().rev() {
        acc *= at;
        acc += Float::with_val(wp, c);
    }
    acc
}

/// 0 for even support, 1 for odd support, None for mixed.
fn poly_parity(coeffs: &[Rat]) -> Option<u8> {
    let mut parity: Option<u8> = None;
    for (i, c) in coeffs.iter().enumerate() {
        if c.cmp0() != std::cmp::Ordering::Equal {
            let p = (i % 2) as u8;
            match parity {
                None => parity = Some(p),
                Some(q) if q == p => {}
                _ => return None,
            }
        }
    }
    parity
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::mpreal::{abs_diff, const_pi};

    fn tol(log2: i32) -> Float {
        Float::with_val(64, Float::i_exp(1, log2))
    }

    /// cos(2 pi x)/(pi cos^2 pi x) as (2c^2-1)/c^2 / pi.
    fn model_cos2x_over_cos2() -> TrigRationalModel {
        TrigRationalModel {
            factor: PiPower::InvPi,
            numer: vec![rat(-1, 1), rat(0, 1), rat(2, 1)],
            denom: vec![rat(0, 1), rat(0, 1), rat(1, 1)],
        }
    }

    #[test]
    fn value_at_zero_is_inv_pi() {
        let m = model_cos2x_over_cos2();
        assert_eq!(m.value_at_c_one().unwrap(), rat(1, 1));
        let v = m.eval_rat(&rat(0, 1), 256).unwrap();
        let expect = const_pi(256).recip();
        assert!(abs_diff(&v, &expect) < tol(-250));
    }

    #[test]
    fn zero_of_numerator_at_quarter() {
        // cos(2 pi x) vanishes at x = 1/4
        let m = model_cos2x_over_cos2();
        let v = m.eval_rat(&rat(1, 4), 256).unwrap();
        assert!(v.clone().abs() < tol(-240));
    }

    #[test]
    fn pole_at_half() {
        let m = model_cos2x_over_cos2();
        assert!(m.is_pole_at(&rat(1, 2), 256));
        assert!(matches!(
            m.eval_rat(&rat(1, 2), 256),
            Err(Error::PoleAtX(_))
        ));
    }

    #[test]
    fn quartic_model_value_at_zero() {
        // (8c^4-12c^2+5)/(2c^4-c^2)/pi^2 at x=0: (8-12+5)/(2-1) = 1
        let m = TrigRationalModel {
            factor: PiPower::InvPi2,
            numer: vec![rat(5, 1), rat(0, 1), rat(-12, 1), rat(0, 1), rat(8, 1)],
            denom: vec![rat(0, 1), rat(0, 1), rat(-1, 1), rat(0, 1), rat(2, 1)],
        };
        assert_eq!(m.value_at_c_one().unwrap(), rat(1, 1));
        let v = m.eval_rat(&rat(0, 1), 256).unwrap();
        let expect = const_pi(256).square().recip();
        assert!(abs_diff(&v, &expect) < tol(-245));
        assert_eq!(m.parity(), ModelParity::Even);
        // poles where 2c^4 = c^2, i.e. x = 1/4
        assert!(m.is_pole_at(&rat(1, 4), 256));
        assert!(m.is_pole_at(&rat(-1, 4), 256));
        assert!(!m.is_pole_at(&rat(1, 3), 256));
    }

    #[test]
    fn odd_model_is_antiperiodic() {
        // 1/(pi c): odd; t(x+1) = -t(x)
        let m = TrigRationalModel {
            factor: PiPower::InvPi,
            numer: vec![rat(1, 1)],
            denom: vec![rat(0, 1), rat(1, 1)],
        };
        assert_eq!(m.parity(), ModelParity::Odd);
        let a = m.eval_rat(&rat(1, 10), 256).unwrap();
        let b = m.eval_rat(&rat(11, 10), 256).unwrap();
        assert!(abs_diff(&a, &(-b)) < tol(-245));
    }

    #[test]
    fn jet_matches_eval_nearby() {
        let m = model_cos2x_over_cos2();
        let j = m.jet_at(&rat(0, 1), 4, 256).unwrap();
        // head: 1/pi - pi x^2 + ...
        let expect0 = const_pi(320).recip();
        assert!(abs_diff(&j.coeffs[0], &expect0) < tol(-245));
        assert!(abs_diff(&j.coeffs[2], &(-const_pi(320))) < tol(-240));
        // predicts the value at x = 1/100 to O(x^5)
        let v = m.eval_rat(&rat(1, 100), 256).unwrap();
        let p = j.eval_at(&Float::with_val(320, rat(1, 100)));
        assert!(abs_diff(&v, &p) < tol(-30));
        // pole at center detected
        assert!(matches!(
            m.jet_at(&rat(1, 2), 3, 128),
            Err(Error::PoleAtCenter(_))
        ));
    }
}
