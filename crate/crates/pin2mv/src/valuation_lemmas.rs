//! Exact checks of the seven valuation statements about the coefficients
//! `b_m` of `(ln(1+z)/z)^{4k+1}`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{out_of_range, Result};
use crate::exactarith::{log1p_over_z_pow, val2, val2_i64, Rat, TruncSeries, Val2};

/// The series `(ln(1+z)/z)^{4k+1}` at order `4k`, shared across callers.
pub fn b_series(k: u64) -> Arc<TruncSeries> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<TruncSeries>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(s) = cache.lock().expect("cache poisoned").get(&k) {
        return Arc::clone(s);
    }
    let s = Arc::new(log1p_over_z_pow(k, 4 * k as usize));
    cache
        .lock()
        .expect("cache poisoned")
        .entry(k)
        .or_insert(s)
        .clone()
}

/// `b_m` for `m ≤ 4k`.
pub fn bm_coeff(k: u64, m: u64) -> Result<Rat> {
    if m > 4 * k {
        return Err(out_of_range("m", format!("m = {m} exceeds 4k = {}", 4 * k)));
    }
    Ok(b_series(k).coeff(m as usize))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Lemma {
    TopCoefficient,
    RangeBound,
    B4kMinus2,
    B4kMinus3,
    B4kMinus4,
    Difference,
    LowSweep,
}

impl Lemma {
    pub const ALL: [Lemma; 7] = [
        Lemma::TopCoefficient,
        Lemma::RangeBound,
        Lemma::B4kMinus2,
        Lemma::B4kMinus3,
        Lemma::B4kMinus4,
        Lemma::Difference,
        Lemma::LowSweep,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::TopCoefficient => "nu(b_4k) = -4k",
            Lemma::RangeBound => "nu(b_m) >= -(4k-2), 1 <= m <= 4k-1",
            Lemma::B4kMinus2 => "nu(b_4k-2) = nu(k) - (4k-3)",
            Lemma::B4kMinus3 => "nu(b_4k-3) = nu(k) - (4k-3)",
            Lemma::B4kMinus4 => "nu(b_4k-4) = nu(k) - (4k-4)",
            Lemma::Difference => "nu(b_4k-2 - b_4k-3)",
            Lemma::LowSweep => "nu(b_m) >= nu(k) - (4k-5), m <= 4k-5",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// The quantified range is empty.
    Vacuous,
    /// An index involved is negative.
    NotApplicable,
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaEntry {
    pub lemma: Lemma,
    pub expected: String,
    pub computed: String,
    pub status: Status,
}

#[derive(Clone, Debug, Serialize)]
pub struct AppendixAReport {
    pub k: u64,
    /// Set for `k = 0`, where only the top-coefficient statement has content.
    pub degenerate: bool,
    pub entries: Vec<LemmaEntry>,
}

impl AppendixAReport {
    pub fn pass(&self) -> bool {
        self.entries.iter().all(|e| e.status != Status::Fail)
    }

    pub fn entry(&self, lemma: Lemma) -> &LemmaEntry {
        self.entries
            .iter()
            .find(|e| e.lemma == lemma)
            .expect("every lemma has an entry")
    }
}

fn equality(lemma: Lemma, expected: i64, computed: Val2) -> LemmaEntry {
    LemmaEntry {
        lemma,
        expected: expected.to_string(),
        computed: computed.to_string(),
        status: if computed == expected {
            Status::Pass
        } else {
            Status::Fail
        },
    }
}

/// Minimum valuation over `b_lo..=b_hi` against a lower bound.
fn range_bound(lemma: Lemma, b: &TruncSeries, lo: i64, hi: i64, bound: i64) -> LemmaEntry {
    if lo > hi {
        return LemmaEntry {
            lemma,
            expected: format!(">= {bound}"),
            computed: "empty range".into(),
            status: Status::Vacuous,
        };
    }
    let (arg, min) = (lo..=hi)
        .map(|m| (m, val2(&b.coeff(m as usize))))
        .min_by_key(|&(_, v)| v)
        .expect("nonempty range");
    LemmaEntry {
        lemma,
        expected: format!(">= {bound}"),
        computed: format!("{min} at m = {arg}"),
        status: if min >= bound {
            Status::Pass
        } else {
            Status::Fail
        },
    }
}

fn not_applicable(lemma: Lemma) -> LemmaEntry {
    LemmaEntry {
        lemma,
        expected: "-".into(),
        computed: "negative index".into(),
        status: Status::NotApplicable,
    }
}

/// Runs all seven checks for one `k`, from exact coefficients.
///
/// `k = 0` is accepted as the degenerate case of the first statement.
pub fn verify_appendix_a(k: u64) -> AppendixAReport {
    let b = b_series(k);
    let nu = |m: i64| val2(&b.coeff(m as usize));
    let ki = k as i64;
    let top = 4 * ki;
    let nuk = val2_i64(ki).finite().unwrap_or(0);
    let mut entries = vec![equality(Lemma::TopCoefficient, -top, nu(top))];

    if k == 0 {
        entries.extend(Lemma::ALL[1..].iter().map(|&l| not_applicable(l)));
        return AppendixAReport {
            k,
            degenerate: true,
            entries,
        };
    }

    entries.push(range_bound(Lemma::RangeBound, &b, 1, top - 1, -(top - 2)));
    entries.push(equality(Lemma::B4kMinus2, nuk - (top - 3), nu(top - 2)));
    entries.push(equality(Lemma::B4kMinus3, nuk - (top - 3), nu(top - 3)));
    entries.push(equality(Lemma::B4kMinus4, nuk - (top - 4), nu(top - 4)));

    let diff = b.coeff(top as usize - 2) - b.coeff(top as usize - 3);
    let nd = val2(&diff);
    entries.push(if k.is_multiple_of(2) {
        equality(Lemma::Difference, nuk - (top - 4), nd)
    } else {
        let bound = nuk - (top - 5);
        LemmaEntry {
            lemma: Lemma::Difference,
            expected: format!(">= {bound}"),
            computed: nd.to_string(),
            status: if nd >= bound {
                Status::Pass
            } else {
                Status::Fail
            },
        }
    });

    entries.push(range_bound(
        Lemma::LowSweep,
        &b,
        0,
        top - 5,
        nuk - (top - 5),
    ));

    AppendixAReport {
        k,
        degenerate: false,
        entries,
    }
}
