//! Truncated Taylor-series ("jet") arithmetic in one variable over
//! arbitrary-precision reals.
//!
//! A jet stores the coefficients of (x - x0)^0 .. (x - x0)^K around a
//! rational center x0. Arithmetic truncates consistently at order K, so the
//! m-th coefficient of a product/quotient/exp/log of jets is the exact m-th
//! Taylor coefficient of the composite function, up to rounding at the jet's
//! working precision.

use rug::ops::{CompleteRound, Pow};
use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::mpreal::{self, working};

#[derive(Clone, Debug)]
pub struct Jet {
    pub center: Rat,
    pub coeffs: Vec<Float>,
}

impl Jet {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn prec(&self) -> u32 {
        self.coeffs[0].prec()
    }

    pub fn constant(value: Float, center: &Rat, order: usize) -> Self {
        let prec = value.prec();
        let mut coeffs = vec![Float::with_val(prec, 0); order + 1];
        coeffs[0] = value;
        Jet {
            center: center.clone(),
            coeffs,
        }
    }

    pub fn constant_rat(value: &Rat, center: &Rat, order: usize, prec: u32) -> Self {
        Self::constant(Float::with_val(prec, value), center, order)
    }

    /// The identity function x, i.e. center + u.
    pub fn variable(center: &Rat, order: usize, prec: u32) -> Self {
        let mut j = Self::constant(Float::with_val(prec, center), center, order);
        if order >= 1 {
            j.coeffs[1] = Float::with_val(prec, 1);
        }
        j
    }

    pub fn zero_like(&self) -> Self {
        Self::constant(Float::with_val(self.prec(), 0), &self.center, self.order())
    }

    fn check_compatible(&self, other: &Jet) {
        assert_eq!(
            self.center, other.center,
            "jet arithmetic requires a common center"
        );
        assert_eq!(
            self.coeffs.len(),
            other.coeffs.len(),
            "jet arithmetic requires a common order"
        );
    }

    pub fn add(&self, other: &Jet) -> Jet {
        self.check_compatible(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| Float::with_val(a.prec().max(b.prec()), a + b))
            .collect();
        Jet {
            center: self.center.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, other: &Jet) -> Jet {
        self.check_compatible(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| Float::with_val(a.prec().max(b.prec()), a - b))
            .collect();
        Jet {
            center: self.center.clone(),
            coeffs,
        }
    }

    pub fn neg(&self) -> Jet {
        Jet {
            center: self.center.clone(),
            coeffs: self.coeffs.iter().map(|c| Float::with_val(c.prec(), -c)).collect(),
        }
    }

    pub fn scale(&self, f: &Float) -> Jet {
        Jet {
            center: self.center.clone(),
            coeffs: self.coeffs.iter().map(|c| Float::with_val(c.prec(), c * f)).collect(),
        }
    }

    pub fn scale_rat(&self, r: &Rat) -> Jet {
        let f = Float::with_val(self.prec(), r);
        self.scale(&f)
    }

    pub fn add_rat(&self, r: &Rat) -> Jet {
        let mut out = self.clone();
        out.coeffs[0] += Float::with_val(self.prec(), r);
        out
    }

    pub fn mul(&self, other: &Jet) -> Jet {
        self.check_compatible(other);
        let k = self.order();
        let prec = self.prec().max(other.prec());
        let mut coeffs = vec![Float::with_val(prec, 0); k + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.cmp0() == Some(std::cmp::Ordering::Equal) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > k {
                    break;
                }
                coeffs[i + j] += Float::with_val(prec, a * b);
            }
        }
        Jet {
            center: self.center.clone(),
            coeffs,
        }
    }

    pub fn div(&self, other: &Jet) -> Result<Jet> {
        Ok(self.mul(&other.recip()?))
    }

    /// 1 / jet; requires a nonzero constant term.
    pub fn recip(&self) -> Result<Jet> {
        if self.coeffs[0].cmp0() == Some(std::cmp::Ordering::Equal) {
            return Err(Error::DivisionByZeroConstantTerm);
        }
        let k = self.order();
        let prec = self.prec();
        let mut out = vec![Float::with_val(prec, 0); k + 1];
        out[0] = self.coeffs[0].clone().recip();
        for m in 1..=k {
            let mut acc = Float::with_val(prec, 0);
            for j in 1..=m {
                acc += Float::with_val(prec, &self.coeffs[j] * &out[m - j]);
            }
            out[m] = -(acc / &self.coeffs[0]);
        }
        Ok(Jet {
            center: self.center.clone(),
            coeffs: out,
        })
    }

    /// exp(jet), by the standard series recurrence b' = a' b.
    pub fn exp(&self) -> Jet {
        let k = self.order();
        let prec = self.prec();
        let mut out = vec![Float::with_val(prec, 0); k + 1];
        out[0] = self.coeffs[0].clone().exp();
        for m in 1..=k {
            let mut acc = Float::with_val(prec, 0);
            for j in 1..=m {
                acc += Float::with_val(prec, j) * Float::with_val(prec, &self.coeffs[j] * &out[m - j]);
            }
            out[m] = acc / Float::with_val(prec, m);
        }
        Jet {
            center: self.center.clone(),
            coeffs: out,
        }
    }

    /// log(jet); requires a positive constant term.
    pub fn ln(&self) -> Result<Jet> {
        if self.coeffs[0].cmp0() != Some(std::cmp::Ordering::Greater) {
            return Err(Error::DivisionByZeroConstantTerm);
        }
        let k = self.order();
        let prec = self.prec();
        let mut out = vec![Float::with_val(prec, 0); k + 1];
        out[0] = self.coeffs[0].clone().ln();
        // c_m = (a_m - (1/m) sum_{j=1}^{m-1} j c_j a_{m-j}) / a_0
        for m in 1..=k {
            let mut acc = Float::with_val(prec, 0);
            for j in 1..m {
                acc += Float::with_val(prec, j) * Float::with_val(prec, &out[j] * &self.coeffs[m - j]);
            }
            out[m] = (self.coeffs[m].clone() - acc / Float::with_val(prec, m)) / &self.coeffs[0];
        }
        Ok(Jet {
            center: self.center.clone(),
            coeffs: out,
        })
    }

    /// Integer power via repeated squaring (negative powers through recip).
    pub fn pow_i(&self, e: i64) -> Result<Jet> {
        if e == 0 {
            return Ok(Jet::constant(
                Float::with_val(self.prec(), 1),
                &self.center,
                self.order(),
            ));
        }
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut acc: Option<Jet> = None;
        let mut sq = base;
        let mut rem = e.unsigned_abs();
        while rem > 0 {
            if rem & 1 == 1 {
                acc = Some(match acc {
                    None => sq.clone(),
                    Some(a) => a.mul(&sq),
                });
            }
            rem >>= 1;
            if rem > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc.unwrap())
    }

    /// Evaluate a polynomial with rational coefficients at this jet.
    pub fn poly_at(&self, coeffs: &[Rat]) -> Jet {
        let mut acc = Jet::constant(Float::with_val(self.prec(), 0), &self.center, self.order());
        for c in coeffs.iter().rev() {
            acc = acc.mul(self);
            acc = acc.add_rat(c);
        }
        acc
    }

    /// Largest coefficient magnitude; the convergence gauge for jet-valued
    /// series.
    pub fn max_abs(&self) -> Float {
        let prec = self.prec();
        let mut m = Float::with_val(prec, 0);
        for c in &self.coeffs {
            let a = c.clone().abs();
            if a > m {
                m = a;
            }
        }
        m
    }

    /// Evaluate the truncated polynomial at a displacement u from the center.
    pub fn eval_at(&self, u: &Float) -> Float {
        let prec = self.prec();
        let mut acc = Float::with_val(prec, 0);
        for c in self.coeffs.iter().rev() {
            acc *= u;
            acc += c;
        }
        acc
    }

    /// Rescale the expansion variable: coefficients of f in v = s*u, i.e.
    /// coeff_m -> coeff_m / s^m. Used to convert jets in (x - 1/2) to jets in
    /// (2x - 1).
    pub fn rescale_variable(&self, s: &Rat) -> Jet {
        let prec = self.prec();
        let sf = Float::with_val(prec, s);
        let mut pow = Float::with_val(prec, 1);
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let v = Float::with_val(prec, c / &pow);
                pow *= &sf;
                v
            })
            .collect();
        Jet {
            center: self.center.clone(),
            coeffs,
        }
    }
}

/// Jet of x -> (c + coupling*x)_n around a rational center.
///
/// When all factors c + coupling*center + j (0 <= j < n) are positive the
/// log-Pochhammer route applies: the m-th log-derivative is a polygamma
/// difference, and one exp-jet recovers the product. Otherwise the product
/// of linear jets is taken directly (exact, O(n K^2)).
pub fn poch_jet(
    c: &Rat,
    coupling: &Rat,
    n: u32,
    center: &Rat,
    order: usize,
    prec: u32,
) -> Result<Jet> {
    let a0 = {
        let mut a = coupling.clone();
        a *= center;
        a += c;
        a
    };
    if n == 0 {
        return Ok(Jet::constant(
            Float::with_val(working(prec), 1),
            center,
            order,
        ));
    }
    // singularity when any factor vanishes at the center
    for j in 0..n {
        let f = Rational::from(&a0 + Rational::from(j));
        if f.cmp0() == std::cmp::Ordering::Equal {
            return Err(Error::PochhammerSingularity(format!("{c}+{coupling}x"), j));
        }
    }
    let wp = working(prec);
    let all_positive = a0.cmp0() == std::cmp::Ordering::Greater;
    if all_positive && n > 2 * (order as u32 + 2) {
        // ln (a0)_n jet: coeff_m = coupling^m [psi^(m-1)(a0+n) - psi^(m-1)(a0)] / m!
        let mut log_jet = Jet::constant(Float::with_val(wp, 0), center, order);
        let a0_shift = Rational::from(&a0 + Rational::from(n));
        let base = poch_exact(&a0, n);
        log_jet.coeffs[0] = Float::with_val(wp, &base).ln();
        let mut coupling_pow = Float::with_val(wp, 1);
        let mut factorial = Float::with_val(wp, 1);
        for m in 1..=order {
            coupling_pow *= Float::with_val(wp, coupling);
            factorial *= Float::with_val(wp, m as u32);
            let hi = mpreal::polygamma_rat(m as u32 - 1, &a0_shift, wp)?;
            let lo = mpreal::polygamma_rat(m as u32 - 1, &a0, wp)?;
            log_jet.coeffs[m] = (hi - lo) * &coupling_pow / &factorial;
        }
        let sign_fix = base.cmp0() == std::cmp::Ordering::Less;
        debug_assert!(!sign_fix);
        Ok(log_jet.exp())
    } else {
        // direct product of linear jets (c + coupling*x + j)
        let mut acc = Jet::constant(Float::with_val(wp, 1), center, order);
        for j in 0..n {
            let mut lin = Jet::constant(
                Float::with_val(wp, &Rational::from(&a0 + Rational::from(j))),
                center,
                order,
            );
            if order >= 1 {
                lin.coeffs[1] = Float::with_val(wp, coupling);
            }
            acc = acc.mul(&lin);
        }
        Ok(acc)
    }
}

use crate::exact::poch_exact;

/// Jet of the parameter-displaced Pochhammer x -> (c)_x = Gamma(c+x)/Gamma(c)
/// around a rational center, via log-gamma derivatives (polygamma values).
pub fn poch_param_jet(c: &Rat, center: &Rat, order: usize, prec: u32) -> Result<Jet> {
    let wp = working(prec);
    let arg = Rational::from(c + center);
    if arg.cmp0() != std::cmp::Ordering::Greater {
        return Err(Error::NonPositiveArgument(format!("{c} + {center}")));
    }
    if c.cmp0() != std::cmp::Ordering::Greater {
        return Err(Error::NonPositiveArgument(c.to_string()));
    }
    let mut log_jet = Jet::constant(Float::with_val(wp, 0), center, order);
    let lg_arg = Float::with_val(wp, &arg).ln_gamma();
    let lg_c = Float::with_val(wp, c).ln_gamma();
    log_jet.coeffs[0] = lg_arg - lg_c;
    let mut factorial = Float::with_val(wp, 1);
    for m in 1..=order {
        factorial *= Float::with_val(wp, m as u32);
        log_jet.coeffs[m] = mpreal::polygamma_rat(m as u32 - 1, &arg, wp)? / &factorial;
    }
    Ok(log_jet.exp())
}

/// Jet of x -> z^x for rational z > 0: z^center * exp((ln z) u).
pub fn pow_jet(z: &Rat, center: &Rat, order: usize, prec: u32) -> Result<Jet> {
    if z.cmp0() != std::cmp::Ordering::Greater {
        return Err(Error::NonPositiveBase(z.to_string()));
    }
    let wp = working(prec);
    let ln_z = Float::with_val(wp, z).ln();
    let lead = (ln_z.clone() * Float::with_val(wp, center)).exp();
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut term = lead;
    let mut m = 0usize;
    loop {
        coeffs.push(term.clone());
        if m == order {
            break;
        }
        m += 1;
        term *= &ln_z;
        term /= Float::with_val(wp, m as u32);
    }
    Ok(Jet {
        center: center.clone(),
        coeffs,
    })
}

/// Jet of x -> cos(pi x): the m-th derivative is pi^m cos(pi x + m pi/2).
pub fn cospi_jet(center: &Rat, order: usize, prec: u32) -> Jet {
    let wp = working(prec);
    let pi = mpreal::const_pi(wp);
    let c = mpreal::cospi_rat(center, wp);
    let s = mpreal::sinpi_rat(center, wp);
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut pi_pow_over_fact = Float::with_val(wp, 1);
    for m in 0..=order {
        if m > 0 {
            pi_pow_over_fact *= &pi;
            pi_pow_over_fact /= Float::with_val(wp, m as u32);
        }
        // cos(t + m pi/2) cycles cos, -sin, -cos, sin
        let phase = match m % 4 {
            0 => c.clone(),
            1 => -s.clone(),
            2 => -c.clone(),
            _ => s.clone(),
        };
        coeffs.push(phase * &pi_pow_over_fact);
    }
    Jet {
        center: center.clone(),
        coeffs,
    }
}
