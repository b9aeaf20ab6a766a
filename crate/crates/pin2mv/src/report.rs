//! Verification suites and their deterministic reports.

use std::fmt::Display;

use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::ahss::{first_lock, imj_exponent, second_lock, AhssVerdict, EClassify};
use crate::chern::{build_alpha, psi3, solve_gamma, solve_simple_chern};
use crate::exactarith::{val2, val2_i64, Rat};
use crate::mahowald::{
    b2_sign_check, cell_line_ok, fm_exists, line_lower_bound, line_row_value, mahowald_line,
    main_theorem_bound, minv_degree, minv_table, spin_geography, Geography, LINE_BASE, LINE_ROWS,
};
use crate::ro::{euler_reduce, mod2a_feasible};
use crate::steenrod::{
    basis, cell_exists, periodicity_check, sq1_sq1_vanishes, sq_nonzero, zk_middle_structure,
    ZkMiddle,
};
use crate::stems::{moore_group, moore_order_from_spheres, relation_check, stem_table};
use crate::valuation_lemmas::{verify_appendix_a, Status};

pub const SUITES: [&str; 7] = [
    "appendix-a",
    "chern",
    "steenrod",
    "ro",
    "ahss",
    "mahowald",
    "stems",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Params {
    pub kmax: u64,
    pub mmax: u64,
    pub pmax: u64,
    pub qmax: u64,
    /// Degree bound for `P(A)`; `None` means `4k + 8`.
    pub deg_bound: Option<u32>,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            kmax: 64,
            mmax: 63,
            pmax: 512,
            qmax: 1024,
            deg_bound: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Item {
    pub key: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
    pub citation: String,
}

impl Item {
    fn new(key: String, expected: impl Display, computed: impl Display, citation: &str) -> Self {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        Item {
            pass: expected == computed,
            key,
            expected,
            computed,
            citation: citation.into(),
        }
    }

    fn check(
        key: String,
        expected: impl Display,
        computed: impl Display,
        pass: bool,
        citation: &str,
    ) -> Self {
        Item {
            key,
            expected: expected.to_string(),
            computed: computed.to_string(),
            pass,
            citation: citation.into(),
        }
    }

    fn from_result<T>(
        key: String,
        expected: impl Display,
        r: crate::Result<T>,
        f: impl FnOnce(T) -> String,
        citation: &str,
    ) -> Self {
        match r {
            Ok(v) => Item::new(key, expected, f(v), citation),
            Err(e) => Item::check(key, expected, format!("error: {e}"), false, citation),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub params: Params,
    pub items: Vec<Item>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn pass_count(&self) -> usize {
        self.items.iter().filter(|i| i.pass).count()
    }

    pub fn fail_count(&self) -> usize {
        self.items.len() - self.pass_count()
    }

    /// Process exit code: 0 when every item passes, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        u8::from(!self.pass)
    }

    pub fn first_failure(&self) -> Option<&Item> {
        self.items.iter().find(|i| !i.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("key\texpected\tcomputed\tpass\tcitation\n");
        for i in &self.items {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                i.key, i.expected, i.computed, i.pass, i.citation
            ));
        }
        out
    }
}

/// Runs a suite by name; `None` for an unknown name.
pub fn run_suite(name: &str, params: &Params) -> Option<SuiteReport> {
    let items = match name {
        "all" => SUITES.iter().flat_map(|s| suite_items(s, params)).collect(),
        s if SUITES.contains(&s) => suite_items(s, params),
        _ => return None,
    };
    let pass = items.iter().all(|i| i.pass);
    Some(SuiteReport {
        suite: name.into(),
        params: params.clone(),
        items,
        pass,
    })
}

fn suite_items(name: &str, p: &Params) -> Vec<Item> {
    let items = match name {
        "appendix-a" => appendix_a(p),
        "chern" => chern(p),
        "steenrod" => steenrod(p),
        "ro" => ro(p),
        "ahss" => ahss(p),
        "mahowald" => mahowald(p),
        "stems" => stems(),
        _ => unreachable!("checked by caller"),
    };
    items
        .into_iter()
        .map(|mut i| {
            i.key = format!("{name}/{}", i.key);
            i
        })
        .collect()
}

fn par_flat<T: Sync>(xs: Vec<T>, f: impl Fn(&T) -> Vec<Item> + Sync + Send) -> Vec<Item> {
    xs.par_iter()
        .map(f)
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn appendix_a(p: &Params) -> Vec<Item> {
    par_flat((2..=p.kmax).collect(), |&k| {
        verify_appendix_a(k)
            .entries
            .iter()
            .map(|e| {
                Item::check(
                    format!("k={k}/{:?}", e.lemma),
                    &e.expected,
                    &e.computed,
                    matches!(e.status, Status::Pass | Status::Vacuous),
                    e.lemma.name(),
                )
            })
            .collect()
    })
}

fn chern(p: &Params) -> Vec<Item> {
    par_flat((1..=p.kmax).collect(), |&k| {
        let mut out = Vec::new();
        out.push(Item::from_result(
            format!("k={k}/simple/nu_d"),
            -2,
            solve_simple_chern(k),
            |s| val2(&s.d).to_string(),
            "ch(phi) = 2^(4k-2) + d x^(4k), nu(d) = -2",
        ));
        out.push(Item::from_result(
            format!("k={k}/simple/psi3"),
            "3^r ch_2r",
            solve_simple_chern(k),
            |s| {
                let p = psi3(&s.ch);
                let ok = (0..=4 * k as usize)
                    .all(|r| p.coeff(r) == &s.ch.coeff(r) * &Rat::from(3).pow(r as u32));
                if ok {
                    "3^r ch_2r".into()
                } else {
                    "mismatch".into()
                }
            },
            "ch_2r(psi3 phi) = 3^r ch_2r(phi)",
        ));
        if k >= 2 {
            out.push(Item::from_result(
                format!("k={k}/gamma/valuations"),
                "(-1, >=0)",
                solve_gamma(k),
                |g| {
                    let (a, b) = (val2(&g.c8k8), val2(&g.c8k4));
                    if a == -1 && b >= 0 {
                        "(-1, >=0)".into()
                    } else {
                        format!("({a}, {b})")
                    }
                },
                "nu(c_8k-8) = -1, nu(c_8k-4) >= 0",
            ));
            let nuk = val2_i64(k as i64).finite().unwrap_or(0);
            if k % 2 == 0 {
                out.push(Item::from_result(
                    format!("k={k}/alpha/constant"),
                    format!("2^{}", 4 * k as i64 - 4 - nuk),
                    build_alpha(k, &Rat::one()),
                    |a| {
                        if a.ch.support() == vec![0] {
                            format!("2^{}", val2(&a.ch.coeff(0)))
                        } else {
                            format!("support {:?}", a.ch.support())
                        }
                    },
                    "even k: ch(c(alpha_k)) is a constant",
                ));
            } else {
                for e in [1, 3, 5, 7] {
                    out.push(Item::from_result(
                        format!("k={k}/alpha/e={e}/nu_d"),
                        0,
                        build_alpha(k, &Rat::from(e)),
                        |a| val2(&a.d).to_string(),
                        "odd k: nu(d) = 0",
                    ));
                }
            }
        }
        out
    })
}

fn steenrod(p: &Params) -> Vec<Item> {
    let mut out = par_flat((0..=p.mmax).collect(), |&m| {
        let mut bad = Vec::new();
        for j in -(m as i64)..=64 {
            if !cell_exists(m, j) {
                continue;
            }
            for i in [1u8, 2] {
                if basis(m, j + i as i64).is_none() {
                    continue;
                }
                if let Err(e) = sq_nonzero(i, m, j) {
                    bad.push(e.to_string());
                }
            }
            if !sq1_sq1_vanishes(m, j) {
                bad.push(format!("Sq1Sq1 on H^{j}"));
            }
        }
        vec![Item::new(
            format!("m={m}/squares"),
            "match",
            if bad.is_empty() {
                "match".into()
            } else {
                bad.join("; ")
            },
            "residue tables for Sq1, Sq2 on X(m); Sq1Sq1 = 0",
        )]
    });
    out.push(Item::from_result(
        "periodicity".into(),
        "ok",
        periodicity_check(p.mmax.max(8)),
        |o| match o.first_violation {
            None => "ok".into(),
            Some((m, j)) => format!("violation at ({m}, {j})"),
        },
        "X(m) subquotients are 4-periodic",
    ));
    out.extend(par_flat((1..=p.kmax).collect(), |&k| {
        let expected = if k % 2 == 0 {
            ZkMiddle::Split
        } else {
            ZkMiddle::EtaCubeCone
        };
        vec![Item::from_result(
            format!("k={k}/zk_middle"),
            format!("{expected:?}"),
            zk_middle_structure(k),
            |s| format!("{s:?}"),
            "p1/2 nu attaching map on the middle cells of Z(k)",
        )]
    }));
    out
}

fn ro(p: &Params) -> Vec<Item> {
    par_flat((1..=p.kmax).collect(), |&k| {
        let k32 = k as u32;
        let e = euler_reduce(k32);
        let c = &e.coefficient;
        let coeff =
            if c.a_terms.is_empty() && c.int.is_positive() && c.int.magnitude().count_ones() == 1 {
                format!("2^{}", c.int.trailing_zeros().unwrap_or(0))
            } else {
                c.to_string()
            };
        let bound = p.deg_bound.unwrap_or(4 * k32 + 8);
        let witnesses: Vec<String> = (0..=bound)
            .map(|d| {
                mod2a_feasible(k32, d)
                    .witness()
                    .map_or("feasible".into(), |w| w.to_string())
            })
            .filter(|w| *w != (2 * k32).to_string())
            .collect();
        vec![
            Item::new(
                format!("k={k}/euler"),
                format!("2^{}", 4 * k),
                coeff,
                "gamma(D)^(8k+2) = 2^(4k) (b_-8D)^k gamma(D)^2",
            ),
            Item::new(
                format!("k={k}/mod2a"),
                format!("witness {} for all degP <= {bound}", 2 * k),
                if witnesses.is_empty() {
                    format!("witness {} for all degP <= {bound}", 2 * k)
                } else {
                    witnesses.join(",")
                },
                "2^(4k) = (A+4)^(2k) P(A) mod 2A has no solution",
            ),
        ]
    })
}

fn ahss(p: &Params) -> Vec<Item> {
    par_flat((1..=p.kmax).collect(), |&k| {
        let mut out = vec![
            Item::from_result(
                format!("k={k}/second_lock"),
                format!(
                    "{:?}",
                    AhssVerdict::NontrivialDifferential {
                        exponent: 4 * k as i64 - 1,
                        target_dim: 8 * k as i64 - 1
                    }
                ),
                second_lock(k),
                |v| format!("{v:?}"),
                "2^(4k-1)[-1] supports a differential to the (8k-1)-cell",
            ),
            Item::from_result(
                format!("k={k}/imj"),
                4 + val2_i64(k as i64).finite().unwrap_or(0),
                imj_exponent(k),
                |v| v.to_string(),
                "pi_(8k-1) j'' = Z/2^(4+nu(k))",
            ),
        ];
        if k >= 2 {
            let nuk = val2_i64(k as i64).finite().unwrap_or(0);
            let expected = if k % 2 == 0 {
                format!("PermanentCycle {{ exponent: {} }}", 4 * k as i64 - 4 - nuk)
            } else {
                EClassify::FourPh2.name(k)
            };
            out.push(Item::from_result(
                format!("k={k}/first_lock"),
                expected,
                first_lock(k),
                |f| match f.target_class {
                    Some(c) => c.name(k),
                    None => format!("{:?}", f.verdict),
                },
                "2^(4k-4-nu(k))[-1] on Z(k)",
            ));
        }
        out
    })
}

fn mahowald(p: &Params) -> Vec<Item> {
    let mut out = par_flat((2..=p.pmax).collect(), |&pp| {
        let bound = main_theorem_bound(pp).expect("p >= 2");
        let bad: Vec<u64> = (1..=4 * pp + 8)
            .filter(|&q| fm_exists(pp, q).expect("p >= 1").exists != (q >= bound))
            .collect();
        vec![Item::new(
            format!("p={pp}/dictionary"),
            format!("q >= {bound}"),
            if bad.is_empty() {
                format!("q >= {bound}")
            } else {
                format!("disagree at q in {bad:?}")
            },
            "level-(p,q) class exists iff q >= 2p + offset(p mod 8)",
        )]
    });
    out.extend(par_flat((4..=p.qmax).collect(), |&q| {
        vec![Item::from_result(
            format!("q={q}/minv_degree"),
            minv_table(q),
            minv_degree(q),
            |v| v.to_string(),
            "16-periodic Mahowald invariant degree table",
        )]
    }));
    for (m, v) in LINE_BASE.iter().enumerate() {
        out.push(Item::new(
            format!("line/m={m}"),
            v,
            mahowald_line(m as u64),
            "L(0..2) = -1, L(3) = 0",
        ));
    }
    for k in [1u64, 2] {
        for (r, off) in LINE_ROWS {
            let m = 16 * k + r;
            out.push(Item::new(
                format!("line/m={m}"),
                16 * k as i64 + off,
                mahowald_line(m),
                "explicit values of L(16k+r)",
            ));
        }
    }
    let line_bad: Vec<u64> = (0..=p.qmax)
        .filter(|&m| {
            let lb = line_lower_bound(m).is_none_or(|b| m % 8 == 3 || mahowald_line(m) >= b);
            let ub = m < 8 || m % 8 != 3 || mahowald_line(m) <= 8 * (m / 8) as i64 - 2;
            let row = line_row_value(m).is_none_or(|v| v == mahowald_line(m));
            !(lb && ub && row && cell_line_ok(m))
        })
        .collect();
    out.push(Item::new(
        "line/bounds".into(),
        "ok",
        if line_bad.is_empty() {
            "ok".into()
        } else {
            format!("{line_bad:?}")
        },
        "L(8k+4+r) >= 8k + tau(r), L(8k+3) <= 8k-2, next cell exists",
    ));
    for (pp, q, expected) in [
        (0, 0, Geography::NotObstructedHere),
        (0, 1, Geography::NotObstructedHere),
        (1, 3, Geography::NotObstructedHere),
        (1, 2, Geography::Obstructed),
        (5, 12, Geography::NotObstructedHere),
        (8, 19, Geography::Obstructed),
        (8, 20, Geography::NotObstructedHere),
    ] {
        out.push(Item::new(
            format!("geography/p={pp}/q={q}"),
            format!("{expected:?}"),
            format!("{:?}", spin_geography(pp, q)),
            "spin realizability necessary conditions",
        ));
    }
    for (b2, sign, exc, expected) in [
        (22, -16, true, true),
        (24, 16, false, true),
        (23, 16, false, false),
    ] {
        out.push(Item::new(
            format!("b2_sign/b2={b2}/sign={sign}"),
            expected,
            b2_sign_check(b2, sign, exc),
            "b2 >= 10/8 |sign| + 4",
        ));
    }
    out
}

fn stems() -> Vec<Item> {
    let mut out: Vec<Item> = crate::stems::RELATIONS
        .iter()
        .map(|r| {
            Item::from_result(
                format!("relation/{r}"),
                true,
                relation_check(r),
                |b| b.to_string(),
                r,
            )
        })
        .collect();
    const ORDERS: [&str; 21] = [
        "inf", "2", "2", "8", "1", "1", "2", "16", "4", "8", "2", "8", "1", "1", "4", "64", "4",
        "16", "16", "16", "8",
    ];
    for g in stem_table() {
        out.push(Item::new(
            format!("pi/{}", g.n),
            ORDERS[g.n as usize],
            g.order().map_or("inf".into(), |o| o.to_string()),
            g.citation,
        ));
    }
    for n in [5, 6, 11] {
        out.push(Item::from_result(
            format!("moore/{n}"),
            moore_group(n).ok().and_then(|g| g.order()).unwrap_or(0),
            moore_order_from_spheres(n),
            |v| v.to_string(),
            "cofiber sequence of 2 on the sphere",
        ));
    }
    out
}
