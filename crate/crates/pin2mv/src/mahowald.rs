//! The Mahowald line `𝔏`, the staircase functions `τ`, `h₀`, `h`, and the
//! translation to Furuta–Mahowald classes and spin geography.

use serde::Serialize;

use crate::error::{check, out_of_range, Result};
use crate::steenrod::cell_exists;

/// `τ(r)` for `0 ≤ r ≤ 7`: 0 on {0,1}, 1 on {2,3,4}, 2 on {5,6,7}.
pub fn tau(r: u64) -> Result<i64> {
    match r {
        0 | 1 => Ok(0),
        2..=4 => Ok(1),
        5..=7 => Ok(2),
        _ => Err(out_of_range("tau residue", format!("{r}"))),
    }
}

/// `h₀(4 + 8k + r) = 8k + τ(r) + 1`.
pub fn h0(m: u64) -> Result<i64> {
    check(m >= 4, || format!("h0 needs m >= 4, got {m}"))?;
    let k = (m - 4) / 8;
    Ok(8 * k as i64 + tau((m - 4) % 8)? + 1)
}

/// A cell dimension, or `Inf` for no bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Level {
    Finite(i64),
    Inf,
}

/// Walks from `X(m)` down to `X(n)`: for `j = m, m−1, …, n+1`, the level drops
/// by one whenever `l + j ≡ 0, 3 (mod 4)`.
pub fn h_walk(m: u64, n: u64, l: Level) -> Result<Level> {
    check(m > n, || format!("h_walk needs m > n, got m={m} n={n}"))?;
    let Level::Finite(mut l) = l else {
        return Ok(Level::Inf);
    };
    for j in (n + 1..=m).rev() {
        if matches!((l + j as i64).rem_euclid(4), 0 | 3) {
            l -= 1;
        }
    }
    Ok(Level::Finite(l))
}

/// `𝔏(m)`.
pub fn mahowald_line(m: u64) -> i64 {
    match m {
        0..=2 => -1,
        3 => 0,
        _ if m % 8 == 3 => {
            let k = (m / 8) as i64;
            if k % 2 == 1 {
                8 * k - 2
            } else {
                8 * k - 6
            }
        }
        _ => {
            let k = ((m - 4) / 8) as i64;
            8 * k + tau((m - 4) % 8).expect("residue below 8")
        }
    }
}

/// Explicit values of `𝔏(16k + r)` for `4 ≤ r ≤ 19`, `k ≥ 1`, as offsets from `16k`.
pub const LINE_ROWS: [(u64, i64); 16] = [
    (4, 0),
    (5, 0),
    (6, 1),
    (7, 1),
    (8, 1),
    (9, 2),
    (10, 2),
    (11, 6),
    (12, 8),
    (13, 8),
    (14, 9),
    (15, 9),
    (16, 9),
    (17, 10),
    (18, 10),
    (19, 10),
];

/// Base values `𝔏(0..=3)`.
pub const LINE_BASE: [i64; 4] = [-1, -1, -1, 0];

/// The explicit row value of `𝔏(m)` when `m = 16k + r` with `k ≥ 1` and `4 ≤ r ≤ 19`.
pub fn line_row_value(m: u64) -> Option<i64> {
    if m < 4 {
        return Some(LINE_BASE[m as usize]);
    }
    LINE_ROWS.iter().find_map(|&(r, off)| {
        (m >= 16 + r && (m - r).is_multiple_of(16)).then(|| (m - r) as i64 + off)
    })
}

/// The lower bound `8k + τ(r)` at `m = 8k + 4 + r`.
pub fn line_lower_bound(m: u64) -> Option<i64> {
    (m >= 4).then(|| 8 * ((m - 4) / 8) as i64 + tau((m - 4) % 8).expect("residue below 8"))
}

/// `X(m)` has a cell in dimension `𝔏(m) + 1`, so the line cannot be raised for free.
pub fn cell_line_ok(m: u64) -> bool {
    cell_exists(m, mahowald_line(m) + 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FmQuery {
    pub p: u64,
    pub q: u64,
    pub exists: bool,
    /// `4p − 2 − q`, the skeleton on which `c(q)` must vanish.
    pub skeleton: i64,
    pub line: i64,
    pub route: &'static str,
}

/// A level-`(p, q)` class exists iff `4p − 2 − q ≤ 𝔏(q)`.
pub fn fm_exists(p: u64, q: u64) -> Result<FmQuery> {
    check(p >= 1, || "fm_exists needs p >= 1".into())?;
    let skeleton = 4 * p as i64 - 2 - q as i64;
    let line = mahowald_line(q);
    Ok(FmQuery {
        p,
        q,
        exists: skeleton <= line,
        skeleton,
        line,
        route: "mahowald_line",
    })
}

/// Least `q` admitting a level-`(p, q)` class, for `p ≥ 2`.
pub fn main_theorem_bound(p: u64) -> Result<u64> {
    check(p >= 2, || {
        format!("main_theorem_bound needs p >= 2, got {p}")
    })?;
    let offset = match p % 8 {
        1 | 2 | 5 | 6 => 2,
        3 | 4 | 7 => 3,
        _ => 4,
    };
    Ok(2 * p + offset)
}

/// `max{p : fm_exists(p, q)} = ⌊(𝔏(q) + q + 2) / 4⌋`, checked against the periodic table.
pub fn minv_degree(q: u64) -> Result<i64> {
    check(q >= 4, || format!("minv_degree needs q >= 4, got {q}"))?;
    let v = (mahowald_line(q) + q as i64 + 2).div_euclid(4);
    let t = minv_table(q);
    check(v == t, || format!("q={q}: formula {v} vs table {t}"))?;
    Ok(v)
}

/// The sixteen-row table: `q = 16k + r` with `1 ≤ r ≤ 16`.
pub fn minv_table(q: u64) -> i64 {
    let k = ((q - 1) / 16) as i64;
    let r = q - 16 * k as u64;
    8 * k
        + match r {
            1..=3 => -1,
            4 | 5 => 1,
            6..=8 => 2,
            9 | 10 => 3,
            11 => 4,
            12 | 13 => 5,
            _ => 6,
        }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Geography {
    Obstructed,
    NotObstructedHere,
}

/// The intersection forms realized by `S⁴`, `S²×S²` and K3.
pub const EXCEPTIONAL: [(u64, u64); 3] = [(0, 0), (0, 1), (1, 3)];

/// Necessary-condition check for a spin form `2pE₈ ⊕ qH`.
pub fn spin_geography(p: u64, q: u64) -> Geography {
    if EXCEPTIONAL.contains(&(p, q)) {
        return Geography::NotObstructedHere;
    }
    if p >= 2 && q < main_theorem_bound(p).expect("p >= 2") {
        return Geography::Obstructed;
    }
    if p >= 1 && q < 2 * p + 1 {
        return Geography::Obstructed;
    }
    Geography::NotObstructedHere
}

/// `b₂ ≥ (10/8)|sign| + 4` unless the manifold is exceptional.
pub fn b2_sign_check(b2: u64, sign: i64, exceptional: bool) -> bool {
    exceptional || 8 * b2 as i128 >= 10 * sign.unsigned_abs() as i128 + 32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_and_h0() {
        assert_eq!(tau(0).unwrap(), 0);
        assert_eq!(tau(3).unwrap(), 1);
        assert_eq!(tau(7).unwrap(), 2);
        assert!(tau(8).is_err());
        assert_eq!(h0(4).unwrap(), 1);
        assert_eq!(h0(12).unwrap(), 9);
        assert_eq!(h0(11).unwrap(), 3);
        assert!(h0(3).is_err());
    }

    #[test]
    fn walk() {
        assert_eq!(h_walk(5, 4, Level::Finite(3)).unwrap(), Level::Finite(2));
        assert_eq!(h_walk(6, 4, Level::Finite(2)).unwrap(), Level::Finite(1));
        assert_eq!(h_walk(9, 2, Level::Inf).unwrap(), Level::Inf);
        assert!(h_walk(4, 4, Level::Finite(0)).is_err());
    }

    #[test]
    fn line_values() {
        assert_eq!(mahowald_line(3), 0);
        assert_eq!(mahowald_line(20), 16);
        assert_eq!(mahowald_line(19), 10);
        assert_eq!(mahowald_line(11), 6);
        for m in 0..=4 {
            assert_eq!(mahowald_line(m), [-1, -1, -1, 0, 0][m as usize]);
        }
        for m in 20..=400 {
            assert_eq!(Some(mahowald_line(m)), line_row_value(m), "m={m}");
        }
    }

    #[test]
    fn fm_examples() {
        assert!(fm_exists(1, 3).unwrap().exists);
        assert!(!fm_exists(8, 19).unwrap().exists);
        assert!(fm_exists(2, 6).unwrap().exists);
        assert!(fm_exists(0, 3).is_err());
    }

    #[test]
    fn bounds() {
        assert_eq!(main_theorem_bound(5).unwrap(), 12);
        assert_eq!(main_theorem_bound(8).unwrap(), 20);
        assert_eq!(main_theorem_bound(4).unwrap(), 11);
        assert!(main_theorem_bound(1).is_err());
        assert_eq!(minv_degree(11).unwrap(), 4);
        assert_eq!(minv_degree(20).unwrap(), 9);
        assert_eq!(minv_degree(4).unwrap(), 1);
    }

    #[test]
    fn geography() {
        assert_eq!(spin_geography(1, 3), Geography::NotObstructedHere);
        assert_eq!(spin_geography(8, 19), Geography::Obstructed);
        assert_eq!(spin_geography(0, 0), Geography::NotObstructedHere);
        assert_eq!(spin_geography(1, 2), Geography::Obstructed);
        assert_eq!(spin_geography(8, 20), Geography::NotObstructedHere);
        assert!(b2_sign_check(22, -16, true));
        assert!(b2_sign_check(24, 16, false));
        assert!(!b2_sign_check(23, 16, false));
    }
}
