use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rat;
use crate::error::{Error, Result};

/// Power series truncated at an explicit order `N`: coefficients of `z^0..=z^N`.
///
/// Binary operations truncate to the smaller of the two orders.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncSeries {
    coeffs: Vec<Rat>,
}

impl TruncSeries {
    /// Series from explicit coefficients, padded with zeros or truncated to `order`.
    pub fn new(mut coeffs: Vec<Rat>, order: usize) -> Self {
        coeffs.resize(order + 1, Rat::zero());
        TruncSeries { coeffs }
    }

    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| Rat::from(c)).collect(), order)
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn constant(c: Rat, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rat::one(), order)
    }

    /// `c·z^deg`, which is zero when `deg > order`.
    pub fn monomial(c: Rat, deg: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if deg <= order {
            s.coeffs[deg] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rat> {
        self.coeffs
    }

    /// Coefficient of `z^i`; zero beyond the order.
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(
            self.coeffs[..=order.min(self.order())].to_vec(),
            order.min(self.order()),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    /// Indices of nonzero coefficients.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len())
            .filter(|&i| !self.coeffs[i].is_zero())
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::new(
            (0..=n)
                .map(|i| &self.coeffs[i] + &other.coeffs[i])
                .collect(),
            n,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::new(
            (0..=n)
                .map(|i| &self.coeffs[i] - &other.coeffs[i])
                .collect(),
            n,
        )
    }

    pub fn neg(&self) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Schoolbook product over a common denominator per operand.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let (a, la) = common_denominator(&self.coeffs[..=n]);
        let (b, lb) = common_denominator(&other.coeffs[..=n]);
        let den = la * lb;
        let out = (0..=n)
            .map(|d| {
                let mut acc = BigInt::zero();
                for i in 0..=d {
                    if a[i].is_zero() || b[d - i].is_zero() {
                        continue;
                    }
                    acc += &a[i] * &b[d - i];
                }
                reduce(acc, &den)
            })
            .collect();
        TruncSeries { coeffs: out }
    }

    /// Squaring, using the symmetry of the convolution.
    pub fn square(&self) -> Self {
        let n = self.order();
        let (a, la) = common_denominator(&self.coeffs);
        let den = &la * &la;
        let out = (0..=n)
            .map(|d| {
                let mut acc = BigInt::zero();
                for i in 0..d.div_ceil(2) {
                    if a[i].is_zero() || a[d - i].is_zero() {
                        continue;
                    }
                    acc += &a[i] * &a[d - i];
                }
                acc <<= 1;
                if d % 2 == 0 {
                    acc += &a[d / 2] * &a[d / 2];
                }
                reduce(acc, &den)
            })
            .collect();
        TruncSeries { coeffs: out }
    }

    /// `self^e` by binary exponentiation.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut result = Self::one(self.order());
        if e == 0 {
            return result;
        }
        let mut base = self.clone();
        let mut first = true;
        loop {
            if e & 1 == 1 {
                result = if first {
                    base.clone()
                } else {
                    result.mul(&base)
                };
                first = false;
            }
            e >>= 1;
            if e == 0 {
                return result;
            }
            base = base.square();
        }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let inv0 = self.coeffs[0].recip().map_err(|_| Error::NotInvertible)?;
        let n = self.order();
        let mut r: Vec<Rat> = Vec::with_capacity(n + 1);
        r.push(inv0.clone());
        for d in 1..=n {
            let mut acc = Rat::zero();
            for i in 1..=d {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &r[d - i];
                }
            }
            r.push(-(acc * &inv0));
        }
        Ok(TruncSeries { coeffs: r })
    }

    /// `e^x − 1`.
    pub fn exp_minus_one(order: usize) -> Self {
        let mut coeffs = vec![Rat::zero()];
        let mut fact = BigInt::one();
        for i in 1..=order {
            fact *= i;
            coeffs.push(Rat::from_reduced(BigInt::one(), fact.clone()));
        }
        Self::new(coeffs, order)
    }

    /// `(e^x − 1)/x = Σ x^i/(i+1)!`.
    pub fn exp_minus_one_over_x(order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut fact = BigInt::one();
        for i in 0..=order {
            fact *= i + 1;
            coeffs.push(Rat::from_reduced(BigInt::one(), fact.clone()));
        }
        Self::new(coeffs, order)
    }

    /// `ln(1 + z)`.
    pub fn log1p(order: usize) -> Self {
        let mut coeffs = vec![Rat::zero()];
        for i in 1..=order {
            let s = if i % 2 == 1 { 1 } else { -1 };
            coeffs.push(Rat::from_reduced(BigInt::from(s), BigInt::from(i)));
        }
        Self::new(coeffs, order)
    }

    /// `ln(1 + z)/z = 1 − z/2 + z²/3 − ⋯`.
    pub fn log1p_over_z(order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|i| {
                let s = if i % 2 == 0 { 1 } else { -1 };
                Rat::from_reduced(BigInt::from(s), BigInt::from(i + 1))
            })
            .collect();
        Self::new(coeffs, order)
    }
}

fn reduce(numer: BigInt, den: &BigInt) -> Rat {
    if numer.is_zero() {
        return Rat::zero();
    }
    let g = numer.gcd(den);
    if g.is_one() {
        Rat::from_reduced(numer, den.clone())
    } else {
        Rat::from_reduced(numer / &g, den / &g)
    }
}

/// Integer numerators over the lcm of the denominators.
fn common_denominator(coeffs: &[Rat]) -> (Vec<BigInt>, BigInt) {
    let mut l = BigInt::one();
    for c in coeffs {
        if !c.is_zero() && !c.denom().is_one() {
            l = l.lcm(c.denom());
        }
    }
    let nums = coeffs
        .iter()
        .map(|c| {
            if c.is_zero() {
                BigInt::zero()
            } else if c.denom() == &l {
                c.numer().clone()
            } else {
                c.numer() * (&l / c.denom())
            }
        })
        .collect();
    (nums, l)
}

/// Truncation of `(ln(1+z)/z)^{4k+1}`; coefficient `m` is `b_m`.
pub fn log1p_over_z_pow(k: u64, order: usize) -> TruncSeries {
    TruncSeries::log1p_over_z(order).pow(4 * k + 1)
}

/// `f(g)` truncated to the smaller order. Requires `g(0) = 0`.
///
/// Substitutions of `e^x − 1` and `ln(1+z)` take a Stirling-number route; any
/// other inner series uses Horner's rule.
pub fn series_compose_subst(f: &TruncSeries, g: &TruncSeries) -> Result<TruncSeries> {
    if !g.coeffs[0].is_zero() {
        return Err(Error::NonzeroConstant);
    }
    let n = f.order().min(g.order());
    let f = f.truncate(n);
    let g = g.truncate(n);
    if g == TruncSeries::exp_minus_one(n) {
        return Ok(compose_exp_minus_one(&f));
    }
    if g == TruncSeries::log1p(n) {
        return Ok(compose_log1p(&f));
    }
    Ok(compose_horner(&f, &g))
}

/// General composition by Horner's rule; `g(0)` must be zero.
pub fn compose_horner(f: &TruncSeries, g: &TruncSeries) -> TruncSeries {
    let n = f.order().min(g.order());
    let g = g.truncate(n);
    let mut acc = TruncSeries::constant(f.coeff(n), n);
    for i in (0..n).rev() {
        acc = acc.mul(&g);
        acc.coeffs[0] += &f.coeffs[i];
    }
    acc
}

/// `Σ h_i (e^x − 1)^i`, using `(e^x−1)^i / i! = Σ_n S(n,i) x^n / n!`.
pub fn compose_exp_minus_one(h: &TruncSeries) -> TruncSeries {
    compose_stirling(h, &stirling2_table(h.order()))
}

/// `Σ h_i ln(1+z)^i`, using `ln(1+z)^i / i! = Σ_n s(n,i) z^n / n!`.
pub fn compose_log1p(h: &TruncSeries) -> TruncSeries {
    compose_stirling(h, &stirling1_table(h.order()))
}

fn compose_stirling(h: &TruncSeries, table: &[Vec<BigInt>]) -> TruncSeries {
    let n = h.order();
    let (num, l) = common_denominator(&h.coeffs);
    let mut fact = vec![BigInt::one()];
    for i in 1..=n {
        let next = &fact[i - 1] * i;
        fact.push(next);
    }
    let weighted: Vec<BigInt> = (0..=n).map(|i| &num[i] * &fact[i]).collect();
    let coeffs = (0..=n)
        .map(|d| {
            let mut acc = BigInt::zero();
            for (i, w) in weighted.iter().enumerate().take(d + 1) {
                if !w.is_zero() && !table[d][i].is_zero() {
                    acc += w * &table[d][i];
                }
            }
            reduce(acc, &(&l * &fact[d]))
        })
        .collect();
    TruncSeries { coeffs }
}

/// Stirling numbers of the second kind, `S(n, i)` for `0 ≤ i ≤ n ≤ order`.
pub fn stirling2_table(order: usize) -> Vec<Vec<BigInt>> {
    let mut t = vec![vec![BigInt::one()]];
    for n in 1..=order {
        let prev = &t[n - 1];
        let mut row = vec![BigInt::zero(); n + 1];
        for i in 1..=n {
            let mut v = if i < n { &prev[i] * i } else { BigInt::zero() };
            v += &prev[i - 1];
            row[i] = v;
        }
        t.push(row);
    }
    t
}

/// Signed Stirling numbers of the first kind, `s(n, i)` for `0 ≤ i ≤ n ≤ order`.
pub fn stirling1_table(order: usize) -> Vec<Vec<BigInt>> {
    let mut t = vec![vec![BigInt::one()]];
    for n in 1..=order {
        let prev = &t[n - 1];
        let mut row = vec![BigInt::zero(); n + 1];
        for i in 1..=n {
            let mut v = &prev[i - 1] + BigInt::zero();
            if i < n {
                v -= &prev[i] * (n - 1);
            }
            row[i] = v;
        }
        t.push(row);
    }
    t
}
