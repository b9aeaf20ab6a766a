//! Mod 2 cohomology of the Thom spectra `X(m)` of `−mλ` over `BPin(2)`,
//! their low Steenrod squares, attaching-map tables and cell diagrams.
//!
//! `H*BPin(2) = F₂[q, v]/(q³)` with `|q| = 1`, `|v| = 4`, and
//! `H^j X(m)` is spanned by `q^a v^b Φ` with `a + 4b = j + m`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{check, out_of_range, Error, Result};
use crate::stems::StemElem;

/// Element of `F₂[q, v]/(q³)`, as the set of monomials `(a, b) = q^a v^b` present.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct F2Poly(BTreeSet<(u8, u64)>);

impl F2Poly {
    pub fn zero() -> Self {
        F2Poly::default()
    }

    pub fn monomial(a: u8, b: u64) -> Self {
        let mut p = F2Poly::zero();
        p.toggle(a, b);
        p
    }

    fn toggle(&mut self, a: u8, b: u64) {
        if a >= 3 {
            return;
        }
        if !self.0.remove(&(a, b)) {
            self.0.insert((a, b));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for &(a, b) in &other.0 {
            out.toggle(a, b);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = F2Poly::zero();
        for &(a1, b1) in &self.0 {
            for &(a2, b2) in &other.0 {
                out.toggle(a1 + a2, b1 + b2);
            }
        }
        out
    }

    pub fn monomials(&self) -> impl Iterator<Item = (u8, u64)> + '_ {
        self.0.iter().copied()
    }
}

/// Low Stiefel–Whitney data of `−mλ`: `w(−mλ) = (1 + q + q²)^m` mod `q³`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ThomTwist {
    pub m: u64,
    pub w0: bool,
    pub w1: bool,
    pub w2: bool,
}

impl ThomTwist {
    /// Computed by expanding `(1 + q + q²)^m` in `F₂[q]/(q³)`.
    pub fn new(m: u64) -> Self {
        let base = F2Poly::monomial(0, 0)
            .add(&F2Poly::monomial(1, 0))
            .add(&F2Poly::monomial(2, 0));
        let mut w = F2Poly::monomial(0, 0);
        for _ in 0..(m % 4) {
            w = w.mul(&base);
        }
        let has = |a| w.0.contains(&(a, 0));
        ThomTwist {
            m,
            w0: has(0),
            w1: has(1),
            w2: has(2),
        }
    }

    /// The closed form `(1, m mod 2, (C(m,2) + m) mod 2)`.
    pub fn closed_form(m: u64) -> (bool, bool, bool) {
        let c2 = m * m.saturating_sub(1) / 2;
        (true, m % 2 == 1, (c2 + m) % 2 == 1)
    }

    fn w(&self, t: u8) -> bool {
        match t {
            0 => self.w0,
            1 => self.w1,
            2 => self.w2,
            _ => false,
        }
    }
}

/// `Sq^s` on `H*BPin(2)` for `s ≤ 2`, from `Sq(q) = q + q²`, `Sq¹v = Sq²v = 0` and Cartan.
fn sq_base(s: u8, p: &F2Poly) -> F2Poly {
    let mut out = F2Poly::zero();
    for (a, b) in p.monomials() {
        // Sq(q^a) = (q + q²)^a = Σ C(a, t) q^{a+t}; Sq^i(v^b) = 0 for i = 1, 2.
        let t = s as u64;
        if binom_mod2(a as u64, t) {
            out.toggle(a + s, b);
        }
    }
    out
}

fn binom_mod2(n: u64, r: u64) -> bool {
    r <= n && (r & !n) == 0
}

/// `Sq^i(α Φ_{−mλ}) = Σ_{s+t=i} Sq^s(α)·w_t(−mλ) Φ`, returned as the coefficient of `Φ`.
pub fn sq_on(i: u8, m: u64, alpha: &F2Poly) -> F2Poly {
    let tw = ThomTwist::new(m);
    let mut out = F2Poly::zero();
    for s in 0..=i {
        if tw.w(i - s) {
            out = out.add(&sq_base(s, alpha).mul(&F2Poly::monomial(i - s, 0)));
        }
    }
    out
}

/// `H_j X(m)` is one-dimensional exactly when `j ≥ −m` and `j + m ≢ 3 (mod 4)`.
pub fn cell_exists(m: u64, j: i64) -> bool {
    let t = j + m as i64;
    t >= 0 && t % 4 != 3
}

/// Basis monomial `(a, b)` of `H^j X(m)`.
pub fn basis(m: u64, j: i64) -> Option<(u8, u64)> {
    if !cell_exists(m, j) {
        return None;
    }
    let t = (j + m as i64) as u64;
    Some(((t % 4) as u8, t / 4))
}

fn res(x: i64) -> i64 {
    x.rem_euclid(4)
}

/// Residue pairs `(m mod 4, j mod 4)` where `Sq¹: H^j → H^{j+1}` is nonzero.
pub const SQ1_TABLE: [(i64, i64); 4] = [(0, 1), (1, 3), (2, 3), (3, 1)];
/// Residue pairs where `Sq²: H^j → H^{j+2}` is nonzero.
pub const SQ2_TABLE: [(i64, i64); 2] = [(1, 3), (2, 2)];
/// Residue pairs with an `η²`-attaching map from `j` to `j + 3`.
pub const ETA_SQ_TABLE: [(i64, i64); 4] = [(0, 2), (1, 1), (2, 3), (3, 2)];
/// Residue pairs where `S^{j+1} = X(m+1)^{j+1}_j → X(m)^{j+1}_j = S^j` is `η`.
pub const BETWEEN_COL_ETA_TABLE: [(i64, i64); 4] = [(0, 2), (1, 1), (2, 0), (3, 3)];

fn in_table(table: &[(i64, i64)], m: u64, j: i64) -> bool {
    table.contains(&(res(m as i64), res(j)))
}

/// Computed `Sq^i` on the generator of `H^j X(m)`, checked against the stored residue table.
pub fn sq_nonzero(i: u8, m: u64, j: i64) -> Result<bool> {
    let (a, b) = basis(m, j).ok_or_else(|| out_of_range("cell", format!("H^{j} X({m}) = 0")))?;
    let computed = sq_value(i, m, j, a, b)?;
    let table: &[(i64, i64)] = match i {
        1 => &SQ1_TABLE,
        2 => &SQ2_TABLE,
        _ => unreachable!(),
    };
    let stored = in_table(table, m, j);
    check(computed == stored, || {
        format!("Sq^{i} on H^{j} X({m}): computed {computed}, table {stored}")
    })?;
    Ok(computed)
}

fn sq_value(i: u8, m: u64, j: i64, a: u8, b: u64) -> Result<bool> {
    if !(1..=2).contains(&i) {
        return Err(out_of_range("Sq index", format!("i = {i}")));
    }
    let image = sq_on(i, m, &F2Poly::monomial(a, b));
    let target = basis(m, j + i as i64);
    let nonzero = !image.is_zero();
    if nonzero {
        check(image.monomials().eq(target), || {
            format!("Sq^{i} on H^{j} X({m}) lands outside H^{}", j + i as i64)
        })?;
    }
    Ok(nonzero)
}

/// `Sq¹Sq¹` on the generator of `H^j X(m)` vanishes.
pub fn sq1_sq1_vanishes(m: u64, j: i64) -> bool {
    match basis(m, j) {
        None => true,
        Some((a, b)) => sq_on(1, m, &sq_on(1, m, &F2Poly::monomial(a, b))).is_zero(),
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AttachRow {
    pub homology: bool,
    pub two: bool,
    pub eta: bool,
    pub eta_sq: bool,
    pub between_col_eta: bool,
}

/// Attaching data at `(m, j)`: 2 and η from computed squares, η² and between-column η from stored tables.
pub fn attach_flags(m: u64, j: i64) -> Result<AttachRow> {
    if !cell_exists(m, j) {
        return Ok(AttachRow::default());
    }
    Ok(AttachRow {
        homology: true,
        two: sq_nonzero(1, m, j)?,
        eta: sq_nonzero(2, m, j)?,
        eta_sq: in_table(&ETA_SQ_TABLE, m, j),
        between_col_eta: in_table(&BETWEEN_COL_ETA_TABLE, m, j),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicityOutcome {
    pub ok: bool,
    pub first_violation: Option<(u64, i64)>,
}

/// 4-periodicity of the attach data in `m` and `j`, and agreement of each
/// window `X(m)^{4n+6−m}_{4n−m}` with the 4-shifted column, for `m < window`.
pub fn periodicity_check(window: u64) -> Result<PeriodicityOutcome> {
    periodicity_check_with(window, attach_flags)
}

/// As [`periodicity_check`], for an arbitrary table.
pub fn periodicity_check_with(
    window: u64,
    table: impl Fn(u64, i64) -> Result<AttachRow>,
) -> Result<PeriodicityOutcome> {
    check(window >= 8, || format!("window {window} < 8"))?;
    let w = window as i64;
    for m in 0..window {
        for j in -(m as i64)..=w {
            let here = table(m, j)?;
            let shifted_j = table(m, j + 4)?;
            let shifted_m = table(m + 4, j - 4)?;
            let same_res = table(m + 4, j)?;
            if here.homology != cell_exists(m, j)
                || here != shifted_j
                || here != shifted_m
                || (j >= -(m as i64) && here != same_res)
            {
                return Ok(PeriodicityOutcome {
                    ok: false,
                    first_violation: Some((m, j)),
                });
            }
        }
    }
    Ok(PeriodicityOutcome {
        ok: true,
        first_violation: None,
    })
}

/// The attaching map of the top cell of the Thom spectrum over `HP¹` of
/// `nH ⊕ V`: `p₁/2 · ν = ((2 + n) mod 8)·ν`.
pub fn hp_thom_attaching(n: u64) -> StemElem {
    StemElem::nu_multiple((2 + n) % 8)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ZkMiddle {
    /// `S^{8k−4} ∨ S^{8k−8}`.
    Split,
    /// `Σ^{8k−8} Cη³`.
    EtaCubeCone,
}

/// Middle cells of `Z(k)`, from the `p₁`-twist attaching map.
pub fn zk_middle_structure(k: u64) -> Result<ZkMiddle> {
    check(k >= 1, || "zk_middle_structure needs k >= 1".into())?;
    let f = hp_thom_attaching(4 * k - 2);
    let s = if f.is_zero() {
        ZkMiddle::Split
    } else if f.is_eta_cubed() {
        ZkMiddle::EtaCubeCone
    } else {
        return Err(Error::CheckFailed(format!(
            "k={k}: unexpected attaching map {f}"
        )));
    };
    let parity = if k.is_multiple_of(2) {
        ZkMiddle::Split
    } else {
        ZkMiddle::EtaCubeCone
    };
    check(s == parity, || format!("k={k}: {s:?} contradicts parity"))?;
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub lower: i64,
    pub upper: i64,
    pub label: StemElem,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CellComplexDesc {
    pub cells: Vec<i64>,
    pub edges: Vec<Edge>,
}

impl CellComplexDesc {
    /// One `lower -[label]-> upper` line per edge, after a `cells:` line.
    pub fn to_text(&self) -> String {
        let cells: Vec<String> = self.cells.iter().map(i64::to_string).collect();
        let mut out = format!("cells: {}\n", cells.join(" "));
        for e in &self.edges {
            let _ = writeln!(out, "{} -[{}]-> {}", e.lower, e.label, e.upper);
        }
        out
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph \"{name}\" {{\n  rankdir=BT;\n");
        for c in &self.cells {
            let _ = writeln!(out, "  c{} [label=\"{}\", shape=circle];", idx(*c), c);
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  c{} -- c{} [label=\"{}\"];",
                idx(e.lower),
                idx(e.upper),
                e.label
            );
        }
        out.push_str("}\n");
        out
    }
}

fn idx(c: i64) -> String {
    if c < 0 {
        format!("m{}", -c)
    } else {
        c.to_string()
    }
}

/// Cells of `X(m)` in `[a, b]` with their 2, η, η² edges, plus the ν edge
/// from `8k−5` to `8k−1` in `X(8k+3)` detected by `Sq⁴`.
pub fn build_cell_diagram(m: u64, a: i64, b: i64) -> Result<CellComplexDesc> {
    check(a <= b, || format!("empty window [{a}, {b}]"))?;
    let cells: Vec<i64> = (a..=b).filter(|&j| cell_exists(m, j)).collect();
    let has = |j: i64| j >= a && j <= b && cell_exists(m, j);
    let mut edges = Vec::new();
    for &j in &cells {
        let row = attach_flags(m, j)?;
        if row.two && has(j + 1) {
            edges.push(Edge {
                lower: j,
                upper: j + 1,
                label: StemElem::two(),
            });
        }
        if row.eta && has(j + 2) {
            edges.push(Edge {
                lower: j,
                upper: j + 2,
                label: StemElem::eta(),
            });
        }
        if row.eta_sq && has(j + 3) {
            edges.push(Edge {
                lower: j,
                upper: j + 3,
                label: StemElem::eta_sq(),
            });
        }
    }
    if m % 8 == 3 && m >= 11 {
        let k = (m as i64 - 3) / 8;
        let (lo, hi) = (8 * k - 5, 8 * k - 1);
        if has(lo) && has(hi) {
            edges.push(Edge {
                lower: lo,
                upper: hi,
                label: StemElem::nu_multiple(1),
            });
        }
    }
    edges.sort_by_key(|e| (e.lower, e.upper));
    for e in &edges {
        check(e.label.degree as i64 == e.upper - e.lower - 1, || {
            format!(
                "edge {}->{} has label degree {}",
                e.lower, e.upper, e.label.degree
            )
        })?;
    }
    Ok(CellComplexDesc { cells, edges })
}
