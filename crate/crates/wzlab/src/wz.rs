//! WZ pairs and exact telescoping verification.
//!
//! A pair (F, G) shares a Pochhammer-product kernel B(n,k) and differs by
//! bivariate rational multipliers:
//!
//! ```text
//! F(n,k) = B(n,k) * f_mult(n,k),    G(n,k) = B(n,k) * g_mult(n,k),
//! B(n,k) = prod_i (offset_i + coupling_i k)_n^{e_i} * base^n * (-1)^{n?} (-1)^{k?}
//! ```
//!
//! The defining relation F(n+1,k) - F(n,k) = G(n,k+1) - G(n,k) is checked
//! cell by cell on a grid, entirely in exact rational arithmetic; the
//! certificate relation G * f_mult = F * g_mult is checked the same way.

use rug::Rational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{poch_exact, rat_serde, BiRat, PochFactor, Rat, Side};

/// Selects one member of a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WhichFn {
    F,
    G,
}

/// Declarative WZ pair. `g_mult` is absent for pairs whose companion was
/// never written down; those are checked numerically elsewhere.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WZPairSpec {
    pub kernel: Vec<PochFactor>,
    #[serde(with = "rat_serde")]
    pub base: Rat,
    pub sign_n: bool,
    pub sign_k: bool,
    pub f_mult: BiRat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_mult: Option<BiRat>,
}

impl WZPairSpec {
    /// Exact value of the shared kernel at integer (n, k).
    pub fn kernel_at(&self, n: u32, k: u32) -> Rat {
        let kq = Rational::from(k);
        let mut acc = Rational::from(1);
        for f in &self.kernel {
            let p = poch_exact(&f.offset_at(&kq), n);
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
        let mut zpow = Rational::from(1);
        for _ in 0..n {
            zpow *= &self.base;
        }
        acc *= zpow;
        if self.sign_n && n % 2 == 1 {
            acc = -acc;
        }
        if self.sign_k && k % 2 == 1 {
            acc = -acc;
        }
        acc
    }

    fn mult(&self, which: WhichFn) -> Result<&BiRat> {
        match which {
            WhichFn::F => Ok(&self.f_mult),
            WhichFn::G => self.g_mult.as_ref().ok_or(Error::MissingCompanion),
        }
    }
}

/// Exact value of F or G at integer (n, k).
pub fn wz_eval(pair: &WZPairSpec, which: WhichFn, n: u32, k: u32) -> Result<Rat> {
    let m = pair.mult(which)?;
    let nq = Rational::from(n);
    let kq = Rational::from(k);
    let mv = m.eval(&nq, &kq).ok_or(Error::PoleAtPoint(n, k))?;
    Ok(pair.kernel_at(n, k) * mv)
}

/// Outcome of a grid telescoping check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GridReport {
    pub cells: usize,
    /// Cells where the telescoping residual is nonzero (expected: none).
    pub nonzero: Vec<(u32, u32)>,
    /// Cells excluded because a multiplier denominator vanished.
    pub poles: Vec<(u32, u32)>,
    pub pass: bool,
}

/// Check F(n+1,k) - F(n,k) = G(n,k+1) - G(n,k) exactly for every cell of
/// [0, n_max] x [0, k_max].
pub fn wz_check_grid(pair: &WZPairSpec, n_max: u32, k_max: u32) -> Result<GridReport> {
    pair.mult(WhichFn::G)?;
    let mut nonzero = Vec::new();
    let mut poles = Vec::new();
    let mut cells = 0usize;
    for n in 0..=n_max {
        for k in 0..=k_max {
            cells += 1;
            let vals = (
                wz_eval(pair, WhichFn::F, n + 1, k),
                wz_eval(pair, WhichFn::F, n, k),
                wz_eval(pair, WhichFn::G, n, k + 1),
                wz_eval(pair, WhichFn::G, n, k),
            );
            match vals {
                (Ok(f1), Ok(f0), Ok(g1), Ok(g0)) => {
                    let delta = (f1 - f0) - (g1 - g0);
                    if delta.cmp0() != std::cmp::Ordering::Equal {
                        nonzero.push((n, k));
                    }
                }
                _ => poles.push((n, k)),
            }
        }
    }
    let pass = nonzero.is_empty();
    Ok(GridReport {
        cells,
        nonzero,
        poles,
        pass,
    })
}

/// Check the certificate relation G(n,k) f_mult(n,k) = F(n,k) g_mult(n,k)
/// exactly on the grid, so that C = g_mult/f_mult satisfies G = C F wherever
/// f_mult does not vanish.
pub fn certificate_check(pair: &WZPairSpec, n_max: u32, k_max: u32) -> Result<GridReport> {
    let g_mult = pair.mult(WhichFn::G)?;
    let mut nonzero = Vec::new();
    let mut poles = Vec::new();
    let mut cells = 0usize;
    for n in 0..=n_max {
        for k in 0..=k_max {
            cells += 1;
            let nq = Rational::from(n);
            let kq = Rational::from(k);
            let (fv, gv) = match (
                wz_eval(pair, WhichFn::F, n, k),
                wz_eval(pair, WhichFn::G, n, k),
            ) {
                (Ok(f), Ok(g)) => (f, g),
                _ => {
                    poles.push((n, k));
                    continue;
                }
            };
            let (fm, gm) = match (pair.f_mult.eval(&nq, &kq), g_mult.eval(&nq, &kq)) {
                (Some(f), Some(g)) => (f, g),
                _ => {
                    poles.push((n, k));
                    continue;
                }
            };
            if gv * fm != fv * gm {
                nonzero.push((n, k));
            }
        }
    }
    let pass = nonzero.is_empty();
    Ok(GridReport {
        cells,
        nonzero,
        poles,
        pass,
    })
}

/// Test helper: bump the constant term of the g multiplier's numerator by
/// one, which must break telescoping.
pub fn corrupt_g_mult(pair: &WZPairSpec) -> Option<WZPairSpec> {
    let mut out = pair.clone();
    let g = out.g_mult.as_mut()?;
    g.numer.rows[0][0] += 1u32;
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, BiPoly};
    use rug::Integer;

    /// The z=1 antiperiodic pair: F = (1/2-k)_n^3/(1)_n^3 (-1)^k (-1)^n
    /// 16n^3(n-2k-1)/(2n-2k-1)^3, G = same kernel * (4n-2k+1).
    fn pair_iden4() -> WZPairSpec {
        let kernel = vec![
            PochFactor {
                offset: rat(1, 2),
                k_coupling: rat(-1, 1),
                exponent: 3,
                side: Side::Num,
            },
            PochFactor {
                offset: rat(1, 1),
                k_coupling: rat(0, 1),
                exponent: 3,
                side: Side::Den,
            },
        ];
        // 16n^3(n-2k-1) = -16n^3 - 32n^3 k + 16 n^4
        let f_num = BiPoly {
            rows: vec![
                vec![Integer::from(0)],
                vec![Integer::from(0)],
                vec![Integer::from(0)],
                vec![Integer::from(-16), Integer::from(-32)],
                vec![Integer::from(16)],
            ],
        };
        // (2n-2k-1)^3
        let f_den = BiPoly {
            rows: vec![
                vec![
                    Integer::from(-1),
                    Integer::from(-6),
                    Integer::from(-12),
                    Integer::from(-8),
                ],
                vec![Integer::from(6), Integer::from(24), Integer::from(24)],
                vec![Integer::from(-12), Integer::from(-24)],
                vec![Integer::from(8)],
            ],
        };
        let g_num = BiPoly {
            rows: vec![
                vec![Integer::from(1), Integer::from(-2)],
                vec![Integer::from(4)],
            ],
        };
        WZPairSpec {
            kernel,
            base: rat(1, 1),
            sign_n: true,
            sign_k: true,
            f_mult: BiRat {
                numer: f_num,
                denom: f_den,
            },
            g_mult: Some(BiRat {
                numer: g_num,
                denom: BiPoly::constant(1),
            }),
        }
    }

    #[test]
    fn iden4_g_at_origin_is_one() {
        // kernel is an empty product at n = 0 and the multiplier is 4n-2k+1
        let v = wz_eval(&pair_iden4(), WhichFn::G, 0, 0).unwrap();
        assert_eq!(v, rat(1, 1));
    }

    #[test]
    fn iden4_f_vanishes_at_n_zero() {
        for k in 0..6 {
            let v = wz_eval(&pair_iden4(), WhichFn::F, 0, k).unwrap();
            assert_eq!(v, rat(0, 1));
        }
    }

    #[test]
    fn iden4_telescopes_exactly() {
        let rep = wz_check_grid(&pair_iden4(), 12, 12).unwrap();
        assert!(rep.pass, "nonzero cells: {:?}", rep.nonzero);
        assert_eq!(rep.cells, 169);
        assert!(rep.poles.is_empty());
    }

    #[test]
    fn iden4_certificate_consistent() {
        let rep = certificate_check(&pair_iden4(), 12, 12).unwrap();
        assert!(rep.pass);
    }

    #[test]
    fn corrupted_pair_fails_grid() {
        let bad = corrupt_g_mult(&pair_iden4()).unwrap();
        let rep = wz_check_grid(&bad, 6, 6).unwrap();
        assert!(!rep.pass);
        assert!(!rep.nonzero.is_empty());
    }

    #[test]
    fn missing_companion_is_reported() {
        let mut pair = pair_iden4();
        pair.g_mult = None;
        assert!(matches!(
            wz_check_grid(&pair, 4, 4),
            Err(Error::MissingCompanion)
        ));
        assert!(matches!(
            wz_eval(&pair, WhichFn::F, 2, 3),
            Ok(_)
        ));
    }
}
