//! 2-primary stable stems through degree 20, the Moore-spectrum groups the
//! attaching-map arguments consume, and the named relations between them.

use std::fmt;

use serde::Serialize;

use crate::error::{out_of_range, Error, Result};

/// A named stable homotopy element. `order == 0` stands for infinite order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct StemElem {
    pub name: String,
    pub degree: u32,
    pub order: u64,
}

impl StemElem {
    pub fn new(name: impl Into<String>, degree: u32, order: u64) -> Self {
        StemElem {
            name: name.into(),
            degree,
            order,
        }
    }

    /// The class `c·ν` in the 2-local `π₃ ≅ Z/8`.
    pub fn nu_multiple(c: u64) -> Self {
        let c = c % 8;
        let name = match c {
            0 => "0".to_string(),
            1 => "nu".to_string(),
            4 => "4nu".to_string(),
            _ => format!("{c}nu"),
        };
        let order = if c == 0 { 1 } else { 8 / gcd(c, 8) };
        StemElem::new(name, 3, order)
    }

    pub fn two() -> Self {
        StemElem::new("2", 0, 0)
    }

    pub fn eta() -> Self {
        StemElem::new("eta", 1, 2)
    }

    pub fn eta_sq() -> Self {
        StemElem::new("eta^2", 2, 2)
    }

    pub fn is_zero(&self) -> bool {
        self.order == 1
    }

    /// `4ν = η³` in the 2-local `π₃`.
    pub fn is_eta_cubed(&self) -> bool {
        self.degree == 3 && self.name == "4nu"
    }
}

impl fmt::Display for StemElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// One cyclic summand: `Z` or `Z/2^e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Summand {
    Z,
    Cyclic(u32),
}

impl Summand {
    fn order(self) -> Option<u64> {
        match self {
            Summand::Z => None,
            Summand::Cyclic(e) => Some(1 << e),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StemGroup {
    pub n: u32,
    pub summands: Vec<Summand>,
    pub generators: Vec<StemElem>,
    pub citation: &'static str,
}

impl StemGroup {
    /// 2-local order; `None` when infinite. The trivial group has order 1.
    pub fn order(&self) -> Option<u64> {
        self.summands
            .iter()
            .try_fold(1u64, |acc, s| s.order().map(|o| acc * o))
    }

    pub fn is_trivial(&self) -> bool {
        self.summands.is_empty()
    }

    /// `|G/2|`.
    pub fn mod_two_order(&self) -> u64 {
        1 << self.summands.len()
    }

    /// `|G[2]|`, the 2-torsion subgroup.
    pub fn two_torsion_order(&self) -> u64 {
        1 << self
            .summands
            .iter()
            .filter(|s| matches!(s, Summand::Cyclic(_)))
            .count()
    }

    pub fn annihilated_by_two(&self) -> bool {
        self.summands.iter().all(|s| *s == Summand::Cyclic(1))
    }
}

const STANDARD: &str = "standard 2-primary stable stems";

fn row(n: u32, spec: &[(Summand, &str)], citation: &'static str) -> StemGroup {
    StemGroup {
        n,
        summands: spec.iter().map(|s| s.0).collect(),
        generators: spec
            .iter()
            .map(|(s, name)| StemElem::new(*name, n, s.order().unwrap_or(0)))
            .collect(),
        citation,
    }
}

fn table() -> Vec<StemGroup> {
    use Summand::{Cyclic as C, Z};
    vec![
        row(0, &[(Z, "1")], STANDARD),
        row(1, &[(C(1), "eta")], STANDARD),
        row(2, &[(C(1), "eta^2")], "pi_2 = Z/2 generated by eta^2"),
        row(3, &[(C(3), "nu")], "4nu = eta^3 and 8nu = 0 (2-local)"),
        row(4, &[], "pi_4 = pi_5 = 0"),
        row(5, &[], "pi_4 = pi_5 = 0"),
        row(6, &[(C(1), "nu^2")], STANDARD),
        row(7, &[(C(4), "sigma")], STANDARD),
        row(8, &[(C(1), "eta sigma"), (C(1), "epsilon")], "2 pi_8 = 0"),
        row(
            9,
            &[
                (C(1), "eta^2 sigma"),
                (C(1), "eta epsilon"),
                (C(1), "{Ph1}"),
            ],
            "2 pi_9 = 0",
        ),
        row(10, &[(C(1), "{Ph1^2}")], "pi_10 = Z/2 generated by {Ph1^2}"),
        row(11, &[(C(3), "{Ph2}")], "4{Ph2} = {Ph1^3}"),
        row(12, &[], "pi_12 = pi_13 = 0"),
        row(13, &[], "pi_12 = pi_13 = 0"),
        row(14, &[(C(1), "sigma^2"), (C(1), "kappa")], STANDARD),
        row(15, &[(C(5), "rho"), (C(1), "eta kappa")], STANDARD),
        row(16, &[(C(1), "eta_4"), (C(1), "eta rho")], "2 pi_16 = 0"),
        row(
            17,
            &[
                (C(1), "eta eta_4"),
                (C(1), "nu kappa"),
                (C(1), "eta^2 rho"),
                (C(1), "{P^2h1}"),
            ],
            STANDARD,
        ),
        row(18, &[(C(3), "nu_4"), (C(1), "{P^2h1^2}")], STANDARD),
        row(
            19,
            &[(C(3), "{P^2h2}"), (C(1), "sigma-bar")],
            "4{P^2h2} = {P^2h1^3}",
        ),
        row(20, &[(C(3), "kappa-bar")], STANDARD),
    ]
}

/// 2-primary `π_n` for `0 ≤ n ≤ 20`.
pub fn stem_group(n: u32) -> Result<StemGroup> {
    table()
        .into_iter()
        .find(|g| g.n == n)
        .ok_or_else(|| out_of_range("stem", format!("n = {n} outside 0..=20")))
}

/// All stored sphere rows, ascending.
pub fn stem_table() -> Vec<StemGroup> {
    table()
}

/// Homotopy of the mod 2 Moore spectrum in the degrees the arguments use.
pub fn moore_group(n: u32) -> Result<StemGroup> {
    use Summand::Cyclic as C;
    match n {
        5 => Ok(row(5, &[], "pi_5 C2 = 0")),
        6 => Ok(row(
            6,
            &[(C(1), "nu^2 on the bottom cell")],
            "pi_6 C2 = Z/2",
        )),
        11 => Ok(row(
            11,
            &[
                (C(1), "{Ph2} on the bottom cell"),
                (C(1), "lift of {Ph1^2}"),
            ],
            "pi_11 C2 = Z/2 + Z/2",
        )),
        _ => Err(out_of_range("Moore stem", format!("n = {n} not stored"))),
    }
}

/// `|π_n C2| = |π_n / 2|·|π_{n−1}[2]|` from the cofiber sequence of 2.
pub fn moore_order_from_spheres(n: u32) -> Result<u64> {
    let hi = stem_group(n)?;
    let lo = stem_group(n - 1)?;
    Ok(hi.mod_two_order() * lo.two_torsion_order())
}

/// Name of `4{P^{k−1}h₂}`, which is `{P^{k−1}h₁³}`.
pub fn four_ph2_name(k: u64) -> String {
    match k {
        0 => "undefined".into(),
        1 => "{h1^3}".into(),
        2 => "{Ph1^3}".into(),
        _ => format!("{{P^{}h1^3}}", k - 1),
    }
}

/// Stored product facts `π_a · π_b = 0`.
const VANISHING_PRODUCTS: [(u32, u32, &str); 1] = [(
    8,
    2,
    "eta sigma . eta^2 = 4 nu sigma = 0 and epsilon . eta^2 = 0",
)];

/// Whether `π_a · π_b = 0` is a stored fact.
pub fn product_vanishes(a: u32, b: u32) -> Result<bool> {
    stem_group(a)?;
    stem_group(b)?;
    Ok(VANISHING_PRODUCTS
        .iter()
        .any(|&(x, y, _)| (x, y) == (a, b) || (y, x) == (a, b)))
}

pub const RELATIONS: [&str; 12] = [
    "eta_cubed_eq_4nu",
    "eight_nu_zero",
    "two_annihilates_pi8",
    "two_annihilates_pi9",
    "two_annihilates_pi16",
    "pi8_times_pi2_zero",
    "pi4_pi5_zero",
    "pi12_pi13_zero",
    "pi10_z2_ph1sq",
    "moore_pi5_zero",
    "moore_pi6_z2",
    "pi11_moore_rank2",
];

/// True when the named relation holds against the stored table.
pub fn relation_check(name: &str) -> Result<bool> {
    let g = |n| stem_group(n);
    Ok(match name {
        "eta_cubed_eq_4nu" => {
            let eta_cubed = StemElem::nu_multiple(4);
            g(3)?.summands == vec![Summand::Cyclic(3)]
                && !eta_cubed.is_zero()
                && eta_cubed.is_eta_cubed()
        }
        "eight_nu_zero" => StemElem::nu_multiple(8).is_zero() && g(3)?.order() == Some(8),
        "two_annihilates_pi8" => g(8)?.annihilated_by_two(),
        "two_annihilates_pi9" => g(9)?.annihilated_by_two(),
        "two_annihilates_pi16" => g(16)?.annihilated_by_two(),
        "pi8_times_pi2_zero" => product_vanishes(8, 2)? && g(10)?.order().is_some(),
        "pi4_pi5_zero" => g(4)?.is_trivial() && g(5)?.is_trivial(),
        "pi12_pi13_zero" => g(12)?.is_trivial() && g(13)?.is_trivial(),
        "pi10_z2_ph1sq" => {
            let p = g(10)?;
            p.order() == Some(2) && p.generators[0].name == "{Ph1^2}"
        }
        "moore_pi5_zero" => moore_group(5)?.is_trivial() && moore_order_from_spheres(5)? == 1,
        "moore_pi6_z2" => moore_group(6)?.order() == Some(2) && moore_order_from_spheres(6)? == 2,
        "pi11_moore_rank2" => {
            let m = moore_group(11)?;
            m.summands.len() == 2 && m.annihilated_by_two() && moore_order_from_spheres(11)? == 4
        }
        _ => return Err(Error::UnknownRelation(name.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_rows() {
        assert!(stem_group(4).unwrap().is_trivial());
        let p10 = stem_group(10).unwrap();
        assert_eq!(p10.order(), Some(2));
        assert_eq!(p10.generators[0].name, "{Ph1^2}");
        let p3 = stem_group(3).unwrap();
        assert_eq!(p3.order(), Some(8));
        assert_eq!(p3.generators[0].name, "nu");
        assert!(stem_group(21).is_err());
        assert_eq!(stem_group(0).unwrap().order(), None);
    }

    #[test]
    fn relations_hold() {
        for r in RELATIONS {
            assert!(relation_check(r).unwrap(), "{r}");
        }
        assert_eq!(
            relation_check("nope"),
            Err(Error::UnknownRelation("nope".into()))
        );
    }

    #[test]
    fn element_orders_divide_group_orders() {
        for g in stem_table() {
            if let Some(o) = g.order() {
                for e in &g.generators {
                    assert_eq!(o % e.order, 0, "pi_{}", g.n);
                }
            }
        }
    }

    #[test]
    fn nu_multiples() {
        assert_eq!(StemElem::nu_multiple(2).order, 4);
        assert!(StemElem::nu_multiple(4).is_eta_cubed());
        assert!(StemElem::nu_multiple(8).is_zero());
        assert_eq!(four_ph2_name(3), "{P^2h1^3}");
    }
}
