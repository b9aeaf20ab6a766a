//! Chern characters of K-theory classes on the stunted projective Thom
//! spectra `Z` and `Z(k)`.
//!
//! A class is `U_K · Σ a_i w^i` with `ch(w) = e^x − 1` and
//! `ch(U_K) = U_H · ((e^x − 1)/x)^{4k+1}`. Chern vectors are graded by the
//! power of `x` relative to `U_H`.

use std::ops::{Add, Sub};

use serde::Serialize;

use crate::error::{check, Error, Result};
use crate::exactarith::{compose_exp_minus_one, val2, val2_i64, Rat, TruncSeries, Val2};
use crate::steenrod::{zk_middle_structure, ZkMiddle};
use crate::valuation_lemmas::b_series;

/// A 2-locally integral K-theory class `U_K · Σ a_i w^i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KClass {
    pub k: u64,
    coeffs: Vec<Rat>,
}

impl KClass {
    pub fn new(k: u64, coeffs: Vec<Rat>) -> Result<Self> {
        if let Some(i) = coeffs.iter().position(|a| !a.is_two_integral()) {
            return Err(Error::CheckFailed(format!(
                "a_{i} = {} is not 2-locally integral",
                coeffs[i]
            )));
        }
        Ok(KClass { k, coeffs })
    }

    /// The Thom class `U_K`.
    pub fn thom(k: u64) -> Self {
        KClass {
            k,
            coeffs: vec![Rat::one()],
        }
    }

    /// `U_K · w^i`.
    pub fn w_power(k: u64, i: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); i + 1];
        coeffs[i] = Rat::one();
        KClass { k, coeffs }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }
}

/// Coefficients of `U_H · x^j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChernVector {
    pub k: u64,
    coeffs: Vec<Rat>,
}

impl ChernVector {
    pub fn new(k: u64, mut coeffs: Vec<Rat>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Rat::zero());
        }
        ChernVector { k, coeffs }
    }

    /// `Σ (c, j)` as `c · x^j`.
    pub fn from_terms(k: u64, terms: &[(Rat, usize)]) -> Self {
        let top = terms.iter().map(|t| t.1).max().unwrap_or(0);
        let mut coeffs = vec![Rat::zero(); top + 1];
        for (c, j) in terms {
            coeffs[*j] += c;
        }
        Self::new(k, coeffs)
    }

    pub fn coeff(&self, j: usize) -> Rat {
        self.coeffs.get(j).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len())
            .filter(|&j| !self.coeffs[j].is_zero())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.k, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Drops the coefficient at `x^j`, as when pulling back to a complex with no cell there.
    pub fn without_degree(&self, j: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        if j < coeffs.len() {
            coeffs[j] = Rat::zero();
        }
        Self::new(self.k, coeffs)
    }
}

impl Add for &ChernVector {
    type Output = ChernVector;
    fn add(self, rhs: &ChernVector) -> ChernVector {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ChernVector::new(
            self.k,
            (0..n).map(|j| self.coeff(j) + rhs.coeff(j)).collect(),
        )
    }
}

impl Sub for &ChernVector {
    type Output = ChernVector;
    fn sub(self, rhs: &ChernVector) -> ChernVector {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ChernVector::new(
            self.k,
            (0..n).map(|j| self.coeff(j) - rhs.coeff(j)).collect(),
        )
    }
}

/// `((e^x−1)/x)^{4k+1} · Σ a_i (e^x−1)^i` through `x^order`.
pub fn ch_of_kclass(kc: &KClass, order: usize) -> ChernVector {
    let thom = TruncSeries::exp_minus_one_over_x(order).pow(4 * kc.k + 1);
    let p = TruncSeries::new(kc.coeffs.iter().take(order + 1).cloned().collect(), order);
    let body = compose_exp_minus_one(&p);
    ChernVector::new(kc.k, thom.mul(&body).into_coeffs())
}

/// `ch(c(r(φ)))` from `ch(φ)`: doubling, valid on even `x`-degree support.
pub fn realify_complexify(ch: &ChernVector) -> Result<ChernVector> {
    if let Some(j) = ch.support().into_iter().find(|j| j % 2 == 1) {
        return Err(Error::OddSupport(j));
    }
    Ok(ch.scale(&Rat::from(2)))
}

/// `ψ³` on Chern characters: the `x^r` coefficient is multiplied by `3^r`.
pub fn psi3(ch: &ChernVector) -> ChernVector {
    let three = Rat::from(3);
    ChernVector::new(
        ch.k,
        ch.coeffs
            .iter()
            .enumerate()
            .map(|(r, c)| c * &three.pow(r as u32))
            .collect(),
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct SimpleChern {
    pub phi: KClass,
    pub d: Rat,
    /// `ch(φ)` through `x^{4k}`.
    pub ch: ChernVector,
}

/// Solves for `φ` on `Z` with `ch(φ) = 2^{4k−2} + d·x^{4k}`.
///
/// Matching coefficients of `z^i` in `Σ a_i z^i = 2^{4k−2}·(ln(1+z)/z)^{4k+1} + O(z^{4k})`
/// gives `a_i = 2^{4k−2}·b_i`; the Chern character is then recomputed in `x`.
pub fn solve_simple_chern(k: u64) -> Result<SimpleChern> {
    check(k >= 1, || "solve_simple_chern needs k >= 1".into())?;
    let top = 4 * k as usize;
    let b = b_series(k);
    let c = Rat::pow2(4 * k as i64 - 2);
    let a: Vec<Rat> = (0..top).map(|i| &c * &b.coeff(i)).collect();
    let phi = KClass::new(k, a)?;
    let ch = ch_of_kclass(&phi, top);
    check(ch.coeff(0) == c, || {
        format!("k={k}: constant term {} != {c}", ch.coeff(0))
    })?;
    if let Some(j) = (1..top).find(|&j| !ch.coeff(j).is_zero()) {
        return Err(Error::CheckFailed(format!("k={k}: ch(phi) has x^{j} term")));
    }
    let d = ch.coeff(top);
    check(d == -(&c * &b.coeff(top)), || {
        format!("k={k}: d = {d} disagrees with -2^(4k-2) b_4k")
    })?;
    check(val2(&d) == -2, || {
        format!("k={k}: nu(d) = {} != -2", val2(&d))
    })?;
    Ok(SimpleChern { phi, d, ch })
}

#[derive(Clone, Debug, Serialize)]
pub struct Gamma {
    pub class: KClass,
    pub ch: ChernVector,
    pub c8k8: Rat,
    pub c8k6: Rat,
    pub c8k4: Rat,
}

/// `2^{4k−5−ν(k)}`.
fn gamma_scale(k: u64) -> Rat {
    let nuk = val2_i64(k as i64).finite().expect("k >= 1");
    Rat::pow2(4 * k as i64 - 5 - nuk)
}

/// Solves for `γ` on `Z^{8k−4}` with `a_i = 2^{4k−5−ν(k)}·b_i`, `i ≤ 4k−5`.
///
/// The returned `c`'s are the actual coefficients of `x^{4k−4}, x^{4k−3}, x^{4k−2}`
/// in `ch(γ)`. They equal the negatives of the closed forms
/// `C·b_{4k−4}` and `C·((8k−3)(3k−1)/3·b_{4k−4} + (4k−1)·b_{4k−3} + b_{4k−2})`.
pub fn solve_gamma(k: u64) -> Result<Gamma> {
    check(k >= 2, || format!("solve_gamma needs k >= 2, got {k}"))?;
    let top = 4 * k as usize - 2;
    let b = b_series(k);
    let c = gamma_scale(k);
    let a: Vec<Rat> = (0..=top - 3).map(|i| &c * &b.coeff(i)).collect();
    let class = KClass::new(k, a)?;
    let ch = ch_of_kclass(&class, top);

    check(ch.coeff(0) == c, || {
        format!("k={k}: constant {} != {c}", ch.coeff(0))
    })?;
    let support = ch.support();
    check(support == vec![0, top - 2, top - 1, top], || {
        format!("k={k}: ch(gamma) support {support:?}")
    })?;
    let (c8k8, c8k6, c8k4) = (ch.coeff(top - 2), ch.coeff(top - 1), ch.coeff(top));
    check(val2(&c8k8) == -1, || {
        format!("k={k}: nu(c_8k-8) = {}", val2(&c8k8))
    })?;
    check(val2(&c8k4) >= 0, || {
        format!("k={k}: nu(c_8k-4) = {}", val2(&c8k4))
    })?;

    let (closed8, closed4) = gamma_closed_forms(k);
    check(c8k8 == -closed8, || {
        format!("k={k}: c_8k-8 closed form mismatch")
    })?;
    check(c8k4 == -closed4, || {
        format!("k={k}: c_8k-4 closed form mismatch")
    })?;

    Ok(Gamma {
        class,
        ch,
        c8k8,
        c8k6,
        c8k4,
    })
}

/// The closed-form expressions for `c_{8k−8}` and `c_{8k−4}` in terms of `b`.
pub fn gamma_closed_forms(k: u64) -> (Rat, Rat) {
    let b = b_series(k);
    let c = gamma_scale(k);
    let t = 4 * k as usize;
    let ki = k as i64;
    let coef = Rat::new((8 * ki - 3) * (3 * ki - 1), 3).expect("nonzero denominator");
    let c8 = &c * &b.coeff(t - 4);
    let inner = &coef * &b.coeff(t - 4) + Rat::from(4 * ki - 1) * b.coeff(t - 3) + b.coeff(t - 2);
    (c8, &c * &inner)
}

#[derive(Clone, Debug, Serialize)]
pub struct Alpha {
    pub k: u64,
    /// `ch(c(α_k))`.
    pub ch: ChernVector,
    /// Coefficient of `x^{4k−2}` in `ch(c(α_k))`; zero for even `k`.
    pub d: Rat,
    pub structure: ZkMiddle,
}

/// Builds `α_k` on `Z(k)` from `γ` and the correction classes.
///
/// Even `k` (split middle cells): `ch(c(φ₁)) = x^{4k−4}`, `ch(c(φ₂)) = 2x^{4k−2}`.
/// Odd `k` (`η³`-cone): `ch(c(φ₃)) = x^{4k−4} + e·x^{4k−2}` with `e` a 2-adic unit.
pub fn build_alpha(k: u64, e_unit: &Rat) -> Result<Alpha> {
    check(val2(e_unit) == 0, || {
        format!("e_unit = {e_unit} is not a 2-adic unit")
    })?;
    let g = solve_gamma(k)?;
    let top = 4 * k as usize - 2;
    let structure = zk_middle_structure(k)?;
    let restricted = g.ch.without_degree(top - 1);
    let base = realify_complexify(&restricted)?;
    let two = Rat::from(2);
    let lead = &two * &g.c8k8;

    let ch = match structure {
        ZkMiddle::Split => {
            check(k.is_multiple_of(2), || {
                format!("k={k}: split structure for odd k")
            })?;
            check(lead.is_two_integral() && g.c8k4.is_two_integral(), || {
                format!("k={k}: correction multiples not integral")
            })?;
            let phi1 = ChernVector::from_terms(k, &[(Rat::one(), top - 2)]);
            let phi2 = ChernVector::from_terms(k, &[(two.clone(), top)]);
            &(&base - &phi1.scale(&lead)) - &phi2.scale(&g.c8k4)
        }
        ZkMiddle::EtaCubeCone => {
            check(k % 2 == 1, || format!("k={k}: eta^3 cone for even k"))?;
            check(lead.is_two_integral(), || {
                format!("k={k}: 2c_8k-8 not integral")
            })?;
            let phi3 = ChernVector::from_terms(k, &[(Rat::one(), top - 2), (e_unit.clone(), top)]);
            &base - &phi3.scale(&lead)
        }
    };

    let constant = Rat::pow2(4 * k as i64 - 4 - val2_i64(k as i64).finite().unwrap_or(0));
    check(ch.coeff(0) == constant, || {
        format!("k={k}: constant {}", ch.coeff(0))
    })?;
    let d = ch.coeff(top);
    let extra: Vec<usize> = ch
        .support()
        .into_iter()
        .filter(|&j| j != 0 && j != top)
        .collect();
    check(extra.is_empty(), || {
        format!("k={k}: stray terms at {extra:?}")
    })?;
    match structure {
        ZkMiddle::Split => check(d.is_zero(), || format!("k={k}: even-k leftover {d}"))?,
        ZkMiddle::EtaCubeCone => check(val2(&d) == 0, || format!("k={k}: nu(d) = {}", val2(&d)))?,
    }
    Ok(Alpha {
        k,
        ch,
        d,
        structure,
    })
}

/// 2-adic valuation of the `x^{4k−2}` coefficient of `ch(c(α_k))`.
pub fn alpha_nu_d(alpha: &Alpha) -> Val2 {
    val2(&alpha.d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d).unwrap()
    }

    #[test]
    fn thom_class_chern() {
        let ch = ch_of_kclass(&KClass::thom(1), 3);
        assert_eq!(ch.coeff(0), Rat::one());
        assert_eq!(ch.coeff(1), r(5, 2));
        for k in 1..4 {
            assert_eq!(
                ch_of_kclass(&KClass::w_power(k, 1), 4).coeff(0),
                Rat::zero()
            );
        }
    }

    #[test]
    fn simple_chern_k1() {
        let s = solve_simple_chern(1).unwrap();
        assert_eq!(s.phi.coeffs()[0], Rat::from(4));
        assert_eq!(val2(&s.d), -2);
        assert_eq!(s.d.abs(), r(1069, 36));
        assert_eq!(s.d, r(-1069, 36));
    }

    #[test]
    fn realify_examples() {
        let s = solve_simple_chern(1).unwrap();
        let c = realify_complexify(&s.ch).unwrap();
        assert_eq!(c.coeff(0), Rat::from(8));
        assert_eq!(c.coeff(4), &s.d * &Rat::from(2));
        let zero = ChernVector::new(1, vec![]);
        assert!(realify_complexify(&zero).unwrap().is_zero());
        let one = ChernVector::new(1, vec![Rat::one()]);
        assert_eq!(realify_complexify(&one).unwrap().coeff(0), Rat::from(2));
        let odd = ChernVector::from_terms(1, &[(Rat::one(), 3)]);
        assert_eq!(realify_complexify(&odd), Err(Error::OddSupport(3)));
    }

    #[test]
    fn gamma_k2() {
        let g = solve_gamma(2).unwrap();
        assert_eq!(g.ch.coeff(0), Rat::from(4));
        assert_eq!(val2(&g.c8k8), -1);
        assert_eq!(g.c8k8, r(-1747, 10));
        assert_eq!(g.c8k4, r(-141829, 63));
        assert!(solve_gamma(1).is_err());
    }

    #[test]
    fn gamma_closed_form_values() {
        assert_eq!(
            gamma_closed_forms(3),
            (r(5002333921, 28350), r(229271870698, 31185))
        );
    }

    #[test]
    fn alpha_even_and_odd() {
        let a = build_alpha(2, &Rat::one()).unwrap();
        assert_eq!(a.ch.support(), vec![0]);
        assert_eq!(a.ch.coeff(0), Rat::from(8));
        for e in [1, 3, 5, 7] {
            let a = build_alpha(3, &Rat::from(e)).unwrap();
            assert_eq!(a.ch.coeff(0), Rat::from(256));
            assert_eq!(val2(&a.d), 0);
        }
        assert!(build_alpha(3, &Rat::from(2)).is_err());
    }

    #[test]
    fn psi3_rules() {
        let c = ChernVector::new(1, vec![r(7, 3)]);
        assert_eq!(psi3(&c), c);
        let x = ChernVector::from_terms(1, &[(r(5, 2), 1)]);
        assert_eq!(psi3(&x).coeff(1), r(15, 2));
        assert!((&psi3(&c) - &c).is_zero());
    }
}
