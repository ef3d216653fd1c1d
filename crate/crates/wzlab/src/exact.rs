//! Exact arbitrary-size rational arithmetic: Pochhammer products, bivariate
//! polynomials and rational functions with integer coefficients.
//!
//! Everything in this module is exact; no rounding happens anywhere. The
//! telescoping checks in [`crate::wz`] rely on that.

use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Int = Integer;
pub type Rat = Rational;

/// Small-integer rational constructor.
pub fn rat(n: i64, d: i64) -> Rat {
    Rational::from((n, d))
}

/// Parse "p/q" or "p".
pub fn parse_rat(s: &str) -> Result<Rat> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| Error::BadRational(s.to_string()))
}

/// Rising factorial (c)_n = c (c+1) ... (c+n-1), exactly. Empty product for
/// n = 0.
pub fn poch_exact(c: &Rat, n: u32) -> Rat {
    let mut acc = Rational::from(1);
    let mut f = c.clone();
    for _ in 0..n {
        acc *= &f;
        f += 1u32;
    }
    acc
}

/// Serde adapter: rationals as "p/q" strings.
pub mod rat_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Rat>` as vectors of "p/q" strings.
pub mod rat_vec_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = v.iter().map(|r| r.to_string()).collect();
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rat>, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        strings
            .iter()
            .map(|s| parse_rat(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Bivariate polynomials and rational functions
// ---------------------------------------------------------------------------

/// Bivariate polynomial with integer coefficients; `rows[i][j]` multiplies
/// n^i k^j (the second variable is x for companion weights).
#[derive(Clone, Debug, PartialEq)]
pub struct BiPoly {
    pub rows: Vec<Vec<Int>>,
}

impl BiPoly {
    pub fn constant(c: i64) -> Self {
        BiPoly {
            rows: vec![vec![Integer::from(c)]],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.iter().all(|c| c.cmp0() == std::cmp::Ordering::Equal))
    }

    /// Exact evaluation at rational (n, k).
    pub fn eval(&self, n: &Rat, k: &Rat) -> Rat {
        // Horner in n over Horner in k
        let mut acc = Rational::new();
        for row in self.rows.iter().rev() {
            let mut inner = Rational::new();
            for c in row.iter().rev() {
                inner *= k;
                inner += c;
            }
            acc *= n;
            acc += inner;
        }
        acc
    }

    /// Substitute a fixed k, returning univariate coefficients in n (low
    /// order first).
    pub fn substitute_k(&self, k: &Rat) -> Vec<Rat> {
        self.rows
            .iter()
            .map(|row| {
                let mut inner = Rational::new();
                for c in row.iter().rev() {
                    inner *= k;
                    inner += c;
                }
                inner
            })
            .collect()
    }
}

impl Serialize for BiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let out: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|c| c.to_string()).collect())
            .collect();
        out.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<Vec<String>>::deserialize(d)?;
        let rows = raw
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| {
                        c.parse::<Integer>()
                            .map_err(|_| serde::de::Error::custom(format!("bad integer `{c}`")))
                    })
                    .collect()
            })
            .collect::<std::result::Result<Vec<Vec<Int>>, _>>()?;
        Ok(BiPoly { rows })
    }
}

/// Quotient of two bivariate integer polynomials.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BiRat {
    pub numer: BiPoly,
    pub denom: BiPoly,
}

impl BiRat {
    pub fn constant(c: i64) -> Self {
        BiRat {
            numer: BiPoly::constant(c),
            denom: BiPoly::constant(1),
        }
    }

    /// Exact evaluation; `None` when the denominator vanishes.
    pub fn eval(&self, n: &Rat, k: &Rat) -> Option<Rat> {
        let den = self.denom.eval(n, k);
        if den.cmp0() == std::cmp::Ordering::Equal {
            return None;
        }
        Some(self.numer.eval(n, k) / den)
    }

    /// Substitute a fixed second variable, cancelling a common linear root if
    /// the denominator vanishes identically against the numerator (used by
    /// parametrized families where the weight has a removable 0/0 at n = 0).
    pub fn substitute_k(&self, k: &Rat) -> (Vec<Rat>, Vec<Rat>) {
        let mut num = self.numer.substitute_k(k);
        let mut den = self.denom.substitute_k(k);
        trim(&mut num);
        trim(&mut den);
        // cancel roots of the denominator that are shared with the numerator
        loop {
            let root = den_root(&den);
            match root {
                Some(r) if poly_eval(&num, &r).cmp0() == std::cmp::Ordering::Equal => {
                    num = synthetic_div(&num, &r);
                    den = synthetic_div(&den, &r);
                }
                _ => break,
            }
        }
        (num, den)
    }
}

fn trim(v: &mut Vec<Rat>) {
    while v.len() > 1 && v.last().unwrap().cmp0() == std::cmp::Ordering::Equal {
        v.pop();
    }
}

fn poly_eval(coeffs: &[Rat], at: &Rat) -> Rat {
    let mut acc = Rational::new();
    for c in coeffs.iter().rev() {
        acc *= at;
        acc += c;
    }
    acc
}

/// Root of a linear denominator a0 + a1 n, if it is linear.
fn den_root(den: &[Rat]) -> Option<Rat> {
    if den.len() == 2 && den[1].cmp0() != std::cmp::Ordering::Equal {
        Some(-Rational::from(&den[0] / &den[1]))
    } else {
        None
    }
}

/// Divide by (n - r), assuming r is a root.
fn synthetic_div(coeffs: &[Rat], r: &Rat) -> Vec<Rat> {
    let mut out = vec![Rational::new(); coeffs.len() - 1];
    let mut carry = Rational::new();
    for i in (1..coeffs.len()).rev() {
        carry *= r;
        carry += &coeffs[i];
        out[i - 1] = carry.clone();
    }
    out
}

// ---------------------------------------------------------------------------
// Pochhammer factor descriptors
// ---------------------------------------------------------------------------

/// Which side of the term's fraction a Pochhammer factor sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Num,
    Den,
}

/// A factor (offset + k_coupling * v)_n^exponent, where v is the pair's k
/// variable or a series' formal parameter x.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PochFactor {
    #[serde(with = "rat_serde")]
    pub offset: Rat,
    #[serde(with = "rat_serde")]
    pub k_coupling: Rat,
    pub exponent: u32,
    pub side: Side,
}

impl PochFactor {
    /// Offset with the coupled parameter substituted.
    pub fn offset_at(&self, v: &Rat) -> Rat {
        let mut o = self.k_coupling.clone();
        o *= v;
        o += &self.offset;
        o
    }

    /// Signed exponent (+ for numerator factors).
    pub fn signed_exponent(&self) -> i64 {
        match self.side {
            Side::Num => self.exponent as i64,
            Side::Den => -(self.exponent as i64),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn poch_exact_basics() {
        assert_eq!(poch_exact(&rat(1, 2), 0), rat(1, 1)); // empty product
        assert_eq!(poch_exact(&rat(1, 2), 3), rat(15, 8)); // (1/2)(3/2)(5/2)
        // product over a sign change: (-3/2)(-1/2)(1/2)(3/2) = 9/16
        assert_eq!(poch_exact(&rat(-3, 2), 4), rat(9, 16));
    }

    #[test]
    fn poch_functional_equation_spot() {
        // (c)_{m+n} = (c)_m (c+m)_n
        let c = rat(2, 3);
        for (m, n) in [(0u32, 5u32), (3, 4), (7, 2)] {
            let lhs = poch_exact(&c, m + n);
            let shifted = Rational::from(&c + Rational::from(m));
            let rhs = poch_exact(&c, m) * poch_exact(&shifted, n);
            assert_eq!(lhs, rhs);
        }
    }

    proptest! {
        #[test]
        fn poch_functional_equation(p in -20i64..20, q in 1i64..12, m in 0u32..30, n in 0u32..30) {
            let c = rat(p, q);
            let lhs = poch_exact(&c, m + n);
            let shifted = Rational::from(&c + Rational::from(m));
            let rhs = poch_exact(&c, m) * poch_exact(&shifted, n);
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn bipoly_eval_and_substitute() {
        // 1 + 2n + 3k + 4nk
        let p = BiPoly {
            rows: vec![
                vec![Integer::from(1), Integer::from(3)],
                vec![Integer::from(2), Integer::from(4)],
            ],
        };
        assert_eq!(p.eval(&rat(2, 1), &rat(3, 1)), rat(1 + 4 + 9 + 24, 1));
        let coeffs = p.substitute_k(&rat(1, 2));
        assert_eq!(coeffs, vec![rat(5, 2), rat(4, 1)]);
    }

    #[test]
    fn birat_pole_detection() {
        // (n + k) / (n - k)
        let b = BiRat {
            numer: BiPoly {
                rows: vec![vec![Integer::from(0), Integer::from(1)], vec![Integer::from(1)]],
            },
            denom: BiPoly {
                rows: vec![vec![Integer::from(0), Integer::from(-1)], vec![Integer::from(1)]],
            },
        };
        assert_eq!(b.eval(&rat(3, 1), &rat(1, 1)), Some(rat(2, 1)));
        assert_eq!(b.eval(&rat(1, 1), &rat(1, 1)), None);
    }

    #[test]
    fn birat_substitute_cancels_removable_zero() {
        // 3[n(74n^2+27n+3) + k(108n^2+42nk+24n+5k+1)] / (3n+k) at k = 0
        // must cancel the shared root n = 0
        let numer = BiPoly {
            rows: vec![
                vec![Integer::from(0), Integer::from(3), Integer::from(15)],
                vec![Integer::from(9), Integer::from(72), Integer::from(126)],
                vec![Integer::from(81), Integer::from(324)],
                vec![Integer::from(222)],
            ],
        };
        let denom = BiPoly {
            rows: vec![vec![Integer::from(0), Integer::from(1)], vec![Integer::from(3)]],
        };
        let b = BiRat { numer, denom };
        let (num, den) = b.substitute_k(&rat(0, 1));
        // 3n(74n^2+27n+3)/(3n) -> 74n^2+27n+3 after cancellation
        assert_eq!(den, vec![rat(3, 1)]);
        assert_eq!(num, vec![rat(9, 1), rat(81, 1), rat(222, 1)]);
        let at2 = poly_eval(&num, &rat(2, 1)) / rat(3, 1);
        assert_eq!(at2, rat(74 * 4 + 27 * 2 + 3, 1));
    }

    #[test]
    fn rat_string_roundtrip() {
        let r = parse_rat("-22/7").unwrap();
        assert_eq!(r, rat(-22, 7));
        assert_eq!(r.to_string(), "-22/7");
        assert!(parse_rat("abc").is_err());
    }
}
