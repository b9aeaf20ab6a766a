//! The differential criterion for `2^l[−1]` in the Atiyah–Hirzebruch spectral
//! sequence of a complex with a single top cell `4m`, together with the
//! pipelines that feed it from the Chern-character constructions.

use serde::Serialize;

use crate::chern::{build_alpha, realify_complexify, solve_simple_chern, ChernVector};
use crate::error::{check, out_of_range, Error, Result};
use crate::exactarith::{val2, val2_i64, Rat, Val2};
use crate::stems::four_ph2_name;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AhssVerdict {
    PermanentCycle { exponent: i64 },
    NontrivialDifferential { exponent: i64, target_dim: i64 },
}

impl AhssVerdict {
    pub fn exponent(&self) -> i64 {
        match *self {
            AhssVerdict::PermanentCycle { exponent } => exponent,
            AhssVerdict::NontrivialDifferential { exponent, .. } => exponent,
        }
    }

    pub fn is_permanent(&self) -> bool {
        matches!(self, AhssVerdict::PermanentCycle { .. })
    }
}

/// Candidates of Adams filtration at least `4k−3` in `π_{8k−5}`, by e-invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EClassify {
    ZeroClass,
    Ph2,
    TwoPh2,
    /// `4{P^{k−1}h₂} = {P^{k−1}h₁³}`.
    FourPh2,
}

impl EClassify {
    pub fn name(self, k: u64) -> String {
        match self {
            EClassify::ZeroClass => "0".into(),
            EClassify::Ph2 => format!("{{P^{}h2}}", k.saturating_sub(1)),
            EClassify::TwoPh2 => format!("2{{P^{}h2}}", k.saturating_sub(1)),
            EClassify::FourPh2 => four_ph2_name(k),
        }
    }
}

/// `ι(m) = m mod 2`.
pub fn iota(m: i64) -> i64 {
    m.rem_euclid(2)
}

/// Permanent cycle iff `ν(d) ≥ ι(m)`; otherwise a differential to the `(4m−1)`-cell.
pub fn decide(l: i64, nu_d: Val2, m: i64) -> AhssVerdict {
    if nu_d >= iota(m) {
        AhssVerdict::PermanentCycle { exponent: l }
    } else {
        AhssVerdict::NontrivialDifferential {
            exponent: l,
            target_dim: 4 * m - 1,
        }
    }
}

/// `π_{8k−1} j'' ≅ Z/2^{4+ν(k)}`.
pub fn imj_exponent(k: u64) -> Result<i64> {
    check(k >= 1, || "imj_exponent needs k >= 1".into())?;
    Ok(4 + val2_i64(k as i64).finite().expect("k >= 1"))
}

pub fn e_classify(nu_e: Val2) -> Result<EClassify> {
    match nu_e {
        Val2::Inf => Ok(EClassify::ZeroClass),
        Val2::Finite(v) if v >= 1 => Ok(EClassify::ZeroClass),
        Val2::Finite(0) => Ok(EClassify::FourPh2),
        Val2::Finite(-1) => Ok(EClassify::TwoPh2),
        Val2::Finite(-2) => Ok(EClassify::Ph2),
        Val2::Finite(v) => Err(out_of_range("e-invariant valuation", format!("{v}"))),
    }
}

/// Bottom two cells of `Σ^{−2n} CP^m_n` form `Cη` exactly when `n` is odd.
pub fn cp_bottom_is_eta(n: u64) -> bool {
    n % 2 == 1
}

fn constant_exponent(ch: &ChernVector) -> Result<i64> {
    val2(&ch.coeff(0))
        .finite()
        .ok_or_else(|| Error::CheckFailed("zero constant term".into()))
}

/// Fate of `2^{4k−1}[−1]` on `Z`, top cell `8k`.
pub fn second_lock(k: u64) -> Result<AhssVerdict> {
    check(cp_bottom_is_eta(4 * k + 1), || {
        "bottom cells are not C eta".into()
    })?;
    let s = solve_simple_chern(k)?;
    let c = realify_complexify(&s.ch)?;
    let top = 4 * k as usize;
    let l = constant_exponent(&c)?;
    let nu = val2(&c.coeff(top));
    check(nu == -1, || format!("k={k}: nu(2d) = {nu}"))?;
    let v = decide(l, nu, 2 * k as i64);
    check(
        v == AhssVerdict::NontrivialDifferential {
            exponent: 4 * k as i64 - 1,
            target_dim: 8 * k as i64 - 1,
        },
        || format!("k={k}: unexpected {v:?}"),
    )?;
    Ok(v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FirstLock {
    pub k: u64,
    pub verdict: AhssVerdict,
    pub nu_d: Val2,
    /// For a differential, the target class identified by its e-invariant.
    pub target_class: Option<EClassify>,
}

/// Fate of `2^{4k−4−ν(k)}[−1]` on `Z(k)`, top cell `8k−4`, with `e` the unit used for `φ₃`.
pub fn first_lock_with(k: u64, e_unit: &Rat) -> Result<FirstLock> {
    check(k >= 2, || format!("first_lock needs k >= 2, got {k}"))?;
    check(cp_bottom_is_eta(4 * k + 1), || {
        "bottom cells are not C eta".into()
    })?;
    let alpha = build_alpha(k, e_unit)?;
    let l = constant_exponent(&alpha.ch)?;
    let nuk = val2_i64(k as i64).finite().expect("k >= 1");
    check(l == 4 * k as i64 - 4 - nuk, || {
        format!("k={k}: exponent {l}")
    })?;
    let nu_d = val2(&alpha.d);
    let verdict = decide(l, nu_d, 2 * k as i64 - 1);
    let target_class = match verdict {
        AhssVerdict::PermanentCycle { .. } => {
            check(k.is_multiple_of(2), || {
                format!("k={k}: odd k gave a permanent cycle")
            })?;
            None
        }
        AhssVerdict::NontrivialDifferential { .. } => {
            check(k % 2 == 1, || format!("k={k}: even k gave a differential"))?;
            let class = e_classify(nu_d)?;
            check(class == EClassify::FourPh2, || {
                format!("k={k}: classified {class:?}")
            })?;
            Some(class)
        }
    };
    Ok(FirstLock {
        k,
        verdict,
        nu_d,
        target_class,
    })
}

pub fn first_lock(k: u64) -> Result<FirstLock> {
    first_lock_with(k, &Rat::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iota_values() {
        assert_eq!(iota(2), 0);
        assert_eq!(iota(3), 1);
        assert_eq!(iota(0), 0);
    }

    #[test]
    fn decide_examples() {
        let k = 3;
        assert_eq!(
            decide(4 * k - 1, Val2::Finite(-1), 2 * k),
            AhssVerdict::NontrivialDifferential {
                exponent: 11,
                target_dim: 23
            }
        );
        assert!(decide(7, Val2::Inf, 3).is_permanent());
        assert_eq!(
            decide(4, Val2::Finite(1), 3),
            AhssVerdict::PermanentCycle { exponent: 4 }
        );
    }

    #[test]
    fn imj() {
        assert_eq!(imj_exponent(1).unwrap(), 4);
        assert_eq!(imj_exponent(2).unwrap(), 5);
        assert_eq!(imj_exponent(4).unwrap(), 6);
    }

    #[test]
    fn classify() {
        assert_eq!(e_classify(Val2::Finite(0)).unwrap(), EClassify::FourPh2);
        assert_eq!(e_classify(Val2::Finite(-2)).unwrap(), EClassify::Ph2);
        assert_eq!(e_classify(Val2::Inf).unwrap(), EClassify::ZeroClass);
        assert_eq!(e_classify(Val2::Finite(-1)).unwrap(), EClassify::TwoPh2);
        assert!(e_classify(Val2::Finite(-3)).is_err());
        assert_eq!(EClassify::FourPh2.name(3), "{P^2h1^3}");
    }

    #[test]
    fn second_lock_examples() {
        for (k, e, t) in [(1, 3, 7), (2, 7, 15), (5, 19, 39)] {
            assert_eq!(
                second_lock(k).unwrap(),
                AhssVerdict::NontrivialDifferential {
                    exponent: e,
                    target_dim: t
                }
            );
        }
    }

    #[test]
    fn first_lock_examples() {
        assert_eq!(
            first_lock(2).unwrap().verdict,
            AhssVerdict::PermanentCycle { exponent: 3 }
        );
        let odd = first_lock(3).unwrap();
        assert!(!odd.verdict.is_permanent());
        assert_eq!(odd.target_class, Some(EClassify::FourPh2));
        assert_eq!(
            first_lock(4).unwrap().verdict,
            AhssVerdict::PermanentCycle { exponent: 10 }
        );
        assert!(first_lock(1).is_err());
    }

    #[test]
    fn cp_bottom() {
        assert!(cp_bottom_is_eta(5));
        assert!(!cp_bottom_is_eta(4));
    }
}
