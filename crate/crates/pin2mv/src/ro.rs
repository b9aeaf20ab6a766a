//! Arithmetic in `RO(Pin(2)) = Z[D,A,B]/(D²−1, DA−A, DB−B, B²−4(A−2B))` and in
//! the coefficient ring acting on `γ(D)`, where `(D+1)γ = 2Aγ = Bγ = 0`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Normal form `c1 + cD·D + Σ m_{a,b} A^a B^b` with `b ∈ {0,1}` and `(a,b) ≠ (0,0)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RoElem {
    pub c1: BigInt,
    pub c_d: BigInt,
    pub mixed: BTreeMap<(u32, u8), BigInt>,
}

impl RoElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn int(n: impl Into<BigInt>) -> Self {
        RoElem {
            c1: n.into(),
            ..Self::default()
        }
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn d() -> Self {
        RoElem {
            c_d: BigInt::one(),
            ..Self::default()
        }
    }

    pub fn a() -> Self {
        Self::mono(1, 0)
    }

    pub fn b() -> Self {
        Self::mono(0, 1)
    }

    fn mono(a: u32, b: u8) -> Self {
        let mut r = Self::zero();
        r.add_mixed(a, b, BigInt::one());
        r
    }

    fn add_mixed(&mut self, a: u32, b: u8, c: BigInt) {
        debug_assert!(b <= 1 && (a, b) != (0, 0));
        if c.is_zero() {
            return;
        }
        let e = self.mixed.entry((a, b)).or_default();
        *e += c;
        if e.is_zero() {
            self.mixed.remove(&(a, b));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c1.is_zero() && self.c_d.is_zero() && self.mixed.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.c1 += &other.c1;
        r.c_d += &other.c_d;
        for (&(a, b), c) in &other.mixed {
            r.add_mixed(a, b, c.clone());
        }
        r
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        let mut r = Self::zero();
        r.c1 = &self.c1 * s;
        r.c_d = &self.c_d * s;
        for (&(a, b), c) in &self.mixed {
            r.add_mixed(a, b, c * s);
        }
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..n {
            r = ro_mul(&r, self);
        }
        r
    }
}

impl fmt::Display for RoElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for ((a, b), c) in self.mixed.iter().rev() {
            let mut m = String::new();
            if *a > 0 {
                m.push('A');
                if *a > 1 {
                    m.push_str(&format!("^{a}"));
                }
            }
            if *b == 1 {
                m.push('B');
            }
            terms.push((c.clone(), m));
        }
        terms.push((self.c_d.clone(), "D".into()));
        terms.push((self.c1.clone(), String::new()));
        let mut out = String::new();
        for (c, m) in terms.into_iter().filter(|(c, _)| !c.is_zero()) {
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&m);
            } else {
                out.push_str(&format!("{mag}{m}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// `B^n = A·x_n(A) + y_n(A)·B` for `n ≥ 1`, as coefficient vectors indexed by the power of A.
fn b_power(n: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    // B^{n+1} = A·x·B + y·B² = 4A·y + (x·A − 8y)·B.
    let mut x = vec![BigInt::zero()];
    let mut y = vec![BigInt::one()];
    for _ in 1..n {
        let nx: Vec<BigInt> = y.iter().map(|c| c * 4).collect();
        let len = y.len().max(x.len() + 1);
        let mut ny = vec![BigInt::zero(); len];
        for (i, c) in x.iter().enumerate() {
            ny[i + 1] += c;
        }
        for (i, c) in y.iter().enumerate() {
            ny[i] -= c * 8;
        }
        x = nx;
        y = ny;
    }
    (x, y)
}

/// A formal monomial `c·D^d A^a B^b` before any relation is applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalTerm {
    pub coeff: BigInt,
    pub d: u32,
    pub a: u32,
    pub b: u32,
}

impl FormalTerm {
    pub fn new(coeff: impl Into<BigInt>, d: u32, a: u32, b: u32) -> Self {
        FormalTerm {
            coeff: coeff.into(),
            d,
            a,
            b,
        }
    }
}

/// Rewrites a formal polynomial to normal form.
pub fn ro_normalize(expr: &[FormalTerm]) -> RoElem {
    let mut r = RoElem::zero();
    for t in expr {
        if t.a == 0 && t.b == 0 {
            if t.d % 2 == 0 {
                r.c1 += &t.coeff;
            } else {
                r.c_d += &t.coeff;
            }
        } else if t.b == 0 {
            r.add_mixed(t.a, 0, t.coeff.clone());
        } else {
            let (x, y) = b_power(t.b);
            for (i, c) in x.iter().enumerate() {
                r.add_mixed(t.a + i as u32 + 1, 0, c * &t.coeff);
            }
            for (i, c) in y.iter().enumerate() {
                r.add_mixed(t.a + i as u32, 1, c * &t.coeff);
            }
        }
    }
    r
}

fn to_formal(x: &RoElem) -> Vec<FormalTerm> {
    let mut v = vec![
        FormalTerm::new(x.c1.clone(), 0, 0, 0),
        FormalTerm::new(x.c_d.clone(), 1, 0, 0),
    ];
    for (&(a, b), c) in &x.mixed {
        v.push(FormalTerm::new(c.clone(), 0, a, b as u32));
    }
    v
}

/// Expands a product of formal polynomials term by term.
pub fn formal_product(factors: &[Vec<FormalTerm>]) -> Vec<FormalTerm> {
    let mut acc = vec![FormalTerm::new(1, 0, 0, 0)];
    for f in factors {
        let mut next = Vec::with_capacity(acc.len() * f.len());
        for s in &acc {
            for t in f {
                next.push(FormalTerm::new(
                    &s.coeff * &t.coeff,
                    s.d + t.d,
                    s.a + t.a,
                    s.b + t.b,
                ));
            }
        }
        acc = next;
    }
    acc
}

pub fn ro_mul(x: &RoElem, y: &RoElem) -> RoElem {
    ro_normalize(&formal_product(&[to_formal(x), to_formal(y)]))
}

/// Coefficient acting on `γ(D)`: an integer plus an A-polynomial with mod-2 coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct GammaCoeff {
    #[serde(serialize_with = "ser_display")]
    pub int: BigInt,
    /// Powers `a ≥ 1` of A that occur with odd coefficient.
    pub a_terms: BTreeSet<u32>,
}

impl GammaCoeff {
    pub fn int(n: impl Into<BigInt>) -> Self {
        GammaCoeff {
            int: n.into(),
            a_terms: BTreeSet::new(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = BTreeSet::new();
        let mut toggle = |a: u32| {
            if !terms.insert(a) {
                terms.remove(&a);
            }
        };
        if self.int.is_odd() {
            other.a_terms.iter().for_each(|&a| toggle(a));
        }
        if other.int.is_odd() {
            self.a_terms.iter().for_each(|&a| toggle(a));
        }
        for a in &self.a_terms {
            for b in &other.a_terms {
                toggle(a + b);
            }
        }
        GammaCoeff {
            int: &self.int * &other.int,
            a_terms: terms,
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(GammaCoeff::int(1), |acc, _| acc.mul(self))
    }
}

impl fmt::Display for GammaCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .a_terms
            .iter()
            .rev()
            .map(|&a| if a == 1 { "A".into() } else { format!("A^{a}") })
            .collect();
        if !self.int.is_zero() || parts.is_empty() {
            parts.push(self.int.to_string());
        }
        f.write_str(&parts.join(" + "))
    }
}

fn ser_display<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Image in the `γ(D)` coefficient ring: `D ↦ −1`, `B ↦ 0`, A-coefficients mod 2.
pub fn gamma_reduce(x: &RoElem) -> GammaCoeff {
    let mut out = GammaCoeff::int(&x.c1 - &x.c_d);
    for (&(a, b), c) in &x.mixed {
        if b == 0 && c.is_odd() {
            out.a_terms.insert(a);
        }
    }
    out
}

/// An element `coefficient · γ(D)^t · (b_{−8D})^s` together with the chain that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerExpr {
    pub gamma_power: u32,
    pub bott_power: u32,
    pub coefficient: GammaCoeff,
    pub chain: Vec<String>,
}

/// Reduces `γ(D)^{8k+2}` to a multiple of `(b_{−8D})^k γ(D)²`.
pub fn euler_reduce(k: u32) -> EulerExpr {
    let mut chain = vec![format!("gamma(D)^{}", 8 * k + 2)];
    if k == 0 {
        return EulerExpr {
            gamma_power: 2,
            bott_power: 0,
            coefficient: GammaCoeff::int(1),
            chain,
        };
    }
    chain.push(format!("gamma(D)^{} * gamma(D)^2", 8 * k));
    chain.push(format!(
        "gamma(D)^{} * (b_8D)^{k} * (b_-8D)^{k} * gamma(D)^2",
        8 * k
    ));
    // γ(D)^8 b_{8D} = 8(1 − D), applied k times inside RO.
    let one_minus_d = RoElem::one().sub(&RoElem::d());
    let eight = BigInt::from(8).pow(k);
    let ro = one_minus_d.pow(k);
    chain.push(format!("{eight} * (1 - D)^{k} * (b_-8D)^{k} * gamma(D)^2"));
    chain.push(format!(
        "2^{} * (1 - D)^{k} * gamma(D)^2 * (b_-8D)^{k}",
        3 * k
    ));
    let reduced = gamma_reduce(&ro);
    debug_assert!(reduced.a_terms.is_empty());
    chain.push(format!(
        "2^{} * {} * gamma(D)^2 * (b_-8D)^{k}",
        3 * k,
        reduced
    ));
    let coefficient = GammaCoeff::int(reduced.int * eight);
    chain.push(format!("{} * (b_-8D)^{k} * gamma(D)^2", coefficient));
    EulerExpr {
        gamma_power: 2,
        bott_power: k,
        coefficient,
        chain,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Feasibility {
    /// Parities of a solution `P(A)`, constant term first.
    Feasible {
        p_parity: Vec<u8>,
    },
    Infeasible {
        witness_index: u32,
    },
}

impl Feasibility {
    pub fn witness(&self) -> Option<u32> {
        match self {
            Feasibility::Feasible { .. } => None,
            Feasibility::Infeasible { witness_index } => Some(*witness_index),
        }
    }
}

/// Bitset row over GF(2): variables `p_1..p_degP`, plus a right-hand side bit.
#[derive(Clone)]
struct Row {
    bits: Vec<u64>,
    rhs: bool,
}

impl Row {
    fn get(&self, i: usize) -> bool {
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    fn set(&mut self, i: usize) {
        self.bits[i / 64] ^= 1 << (i % 64);
    }

    fn xor(&mut self, o: &Row) {
        for (a, b) in self.bits.iter_mut().zip(&o.bits) {
            *a ^= b;
        }
        self.rhs ^= o.rhs;
    }

    fn lead(&self) -> Option<usize> {
        self.bits
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

/// Decides whether some `P(A)` of degree ≤ `deg_p` satisfies
/// `(A+4)^{2k}·P(A) ≡ 2^{4k} (mod 2A)`.
pub fn mod2a_feasible(k: u32, deg_p: u32) -> Feasibility {
    let n = 2 * k;
    let coeffs: Vec<BigInt> = (0..=n)
        .map(|i| binomial(n, i) * BigInt::from(4).pow(n - i))
        .collect();
    // Constant term: 4^{2k}·p₀ = 2^{4k} exactly.
    let target = BigInt::from(2).pow(4 * k);
    let (p0, rem) = target.div_rem(&coeffs[0]);
    if !rem.is_zero() {
        return Feasibility::Infeasible { witness_index: 0 };
    }
    let p0_odd = p0.is_odd();
    let vars = deg_p as usize;
    let words = vars.div_ceil(64).max(1);
    let mut pivots: Vec<(usize, Row)> = Vec::new();
    for m in 1..=(n + deg_p) {
        // Σ_i coeffs[i]·p_{m−i} ≡ 0 (mod 2).
        let mut row = Row {
            bits: vec![0; words],
            rhs: false,
        };
        for i in 0..=n.min(m) {
            let j = m - i;
            if j > deg_p || coeffs[i as usize].is_even() {
                continue;
            }
            if j == 0 {
                row.rhs ^= p0_odd;
            } else {
                row.set(j as usize - 1);
            }
        }
        for (col, p) in &pivots {
            if row.get(*col) {
                row.xor(p);
            }
        }
        match row.lead() {
            Some(col) => pivots.push((col, row)),
            None if row.rhs => return Feasibility::Infeasible { witness_index: m },
            None => {}
        }
    }
    // Back-substitute with free variables set to zero.
    let mut sol = vec![false; vars];
    pivots.sort_by_key(|(c, _)| std::cmp::Reverse(*c));
    for (col, row) in &pivots {
        let mut v = row.rhs;
        for (j, s) in sol.iter().enumerate().skip(col + 1) {
            if *s && row.get(j) {
                v = !v;
            }
        }
        sol[*col] = v;
    }
    let mut p_parity = vec![p0_odd as u8];
    p_parity.extend(sol.into_iter().map(|b| b as u8));
    Feasibility::Feasible { p_parity }
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// `γ(H)² b_{2H} = A − 2B − 2D + 2`.
pub fn gamma_h_bott() -> RoElem {
    ro_normalize(&[
        FormalTerm::new(1, 0, 1, 0),
        FormalTerm::new(-2, 0, 0, 1),
        FormalTerm::new(-2, 1, 0, 0),
        FormalTerm::new(2, 0, 0, 0),
    ])
}

/// Integer value of a `GammaCoeff` with no A-part.
pub fn gamma_int(c: &GammaCoeff) -> Option<i128> {
    if c.a_terms.is_empty() {
        c.int.to_i128()
    } else {
        None
    }
}
