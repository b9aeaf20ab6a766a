//! One PASS/FAIL line per acceptance criterion, with limits pinned below.

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Pow;
use pin2mv::ahss::{first_lock, second_lock, AhssVerdict, EClassify};
use pin2mv::chern::{build_alpha, gamma_closed_forms, solve_gamma, solve_simple_chern};
use pin2mv::exactarith::{bm_multinomial_oracle, val2, val2_i64, Rat};
use pin2mv::mahowald::{
    fm_exists, mahowald_line, main_theorem_bound, minv_degree, LINE_BASE, LINE_ROWS,
};
use pin2mv::ro::{euler_reduce, mod2a_feasible};
use pin2mv::steenrod::{
    basis, cell_exists, periodicity_check, sq1_sq1_vanishes, sq_nonzero, zk_middle_structure,
    ZkMiddle,
};
use pin2mv::valuation_lemmas::{bm_coeff, verify_appendix_a};

const APPENDIX_KMAX: u64 = 128;
const APPENDIX_TIME_LIMIT: Duration = Duration::from_secs(5 * 60);
const VERIFY_ALL_TIME_LIMIT: Duration = Duration::from_secs(10 * 60);
const SWEEP_KMAX: u64 = 64;

type Criterion = fn() -> Result<(), String>;

fn nu(k: u64) -> i64 {
    val2_i64(k as i64).finite().unwrap()
}

fn c1_appendix() -> Result<(), String> {
    let start = Instant::now();
    for k in 1..=APPENDIX_KMAX {
        let r = verify_appendix_a(k);
        if !r.pass() {
            return Err(format!("k={k}: {:?}", r.entries));
        }
    }
    let t = start.elapsed();
    if t > APPENDIX_TIME_LIMIT {
        return Err(format!("took {t:?}"));
    }
    Ok(())
}

fn c2_oracle() -> Result<(), String> {
    for k in 1..=6 {
        for m in 0..=(4 * k).min(24) {
            if bm_multinomial_oracle(k, m).unwrap() != bm_coeff(k, m).unwrap() {
                return Err(format!("k={k} m={m}"));
            }
        }
    }
    Ok(())
}

fn c3_simple_chern() -> Result<(), String> {
    for k in 1..=SWEEP_KMAX {
        let s = solve_simple_chern(k).map_err(|e| e.to_string())?;
        if !s.phi.coeffs().iter().all(Rat::is_two_integral) || val2(&s.d) != -2 {
            return Err(format!("k={k}"));
        }
    }
    Ok(())
}

fn c4_gamma_alpha() -> Result<(), String> {
    for k in 2..=SWEEP_KMAX {
        let g = solve_gamma(k).map_err(|e| e.to_string())?;
        if val2(&g.c8k8) != -1 || val2(&g.c8k4) < 0 {
            return Err(format!("k={k}: valuations"));
        }
        let (c8, c4) = gamma_closed_forms(k);
        if g.c8k8 != -c8 || g.c8k4 != -c4 {
            return Err(format!("k={k}: closed forms"));
        }
        if k % 2 == 0 {
            let a = build_alpha(k, &Rat::one()).map_err(|e| e.to_string())?;
            if a.ch.support() != vec![0] || a.ch.coeff(0) != Rat::pow2(4 * k as i64 - 4 - nu(k)) {
                return Err(format!("k={k}: even alpha"));
            }
        } else {
            for e in [1, 3, 5, 7] {
                let a = build_alpha(k, &Rat::from(e)).map_err(|e| e.to_string())?;
                if val2(&a.d) != 0 {
                    return Err(format!("k={k} e={e}: odd alpha"));
                }
            }
        }
    }
    Ok(())
}

fn c5_ahss() -> Result<(), String> {
    for k in 1..=SWEEP_KMAX {
        let v = second_lock(k).map_err(|e| e.to_string())?;
        let want = AhssVerdict::NontrivialDifferential {
            exponent: 4 * k as i64 - 1,
            target_dim: 8 * k as i64 - 1,
        };
        if v != want {
            return Err(format!("k={k}: second lock {v:?}"));
        }
    }
    for k in 2..=SWEEP_KMAX {
        let f = first_lock(k).map_err(|e| e.to_string())?;
        let ok = if k % 2 == 0 {
            f.verdict
                == AhssVerdict::PermanentCycle {
                    exponent: 4 * k as i64 - 4 - nu(k),
                }
        } else {
            f.target_class == Some(EClassify::FourPh2)
                && EClassify::FourPh2.name(k) == format!("{{P^{}h1^3}}", k - 1)
        };
        if !ok {
            return Err(format!("k={k}: first lock {f:?}"));
        }
    }
    Ok(())
}

fn c6_steenrod() -> Result<(), String> {
    for m in 0..=63u64 {
        for j in -(m as i64)..=64 {
            if !cell_exists(m, j) {
                continue;
            }
            for i in [1u8, 2] {
                if basis(m, j + i as i64).is_some() {
                    sq_nonzero(i, m, j).map_err(|e| e.to_string())?;
                }
            }
            if !sq1_sq1_vanishes(m, j) {
                return Err(format!("Sq1Sq1 at m={m} j={j}"));
            }
        }
    }
    let p = periodicity_check(64).map_err(|e| e.to_string())?;
    if !p.ok {
        return Err(format!("periodicity {:?}", p.first_violation));
    }
    Ok(())
}

fn c7_ro() -> Result<(), String> {
    for k in 1..=SWEEP_KMAX as u32 {
        let e = euler_reduce(k);
        if !e.coefficient.a_terms.is_empty() || e.coefficient.int != BigInt::from(2).pow(4 * k) {
            return Err(format!("k={k}: euler {}", e.coefficient));
        }
        for d in 0..=4 * k + 8 {
            if mod2a_feasible(k, d).witness() != Some(2 * k) {
                return Err(format!("k={k} degP={d}"));
            }
        }
    }
    Ok(())
}

fn c8_dictionary() -> Result<(), String> {
    for p in 2..=512u64 {
        let b = main_theorem_bound(p).unwrap();
        for q in 1..=4 * p + 8 {
            if fm_exists(p, q).unwrap().exists != (q >= b) {
                return Err(format!("p={p} q={q}"));
            }
        }
    }
    for q in 4..=1024 {
        minv_degree(q).map_err(|e| e.to_string())?;
    }
    for (m, v) in LINE_BASE.iter().enumerate() {
        if mahowald_line(m as u64) != *v {
            return Err(format!("L({m})"));
        }
    }
    for k in [1u64, 2] {
        for (r, off) in LINE_ROWS {
            if mahowald_line(16 * k + r) != 16 * k as i64 + off {
                return Err(format!("L(16*{k}+{r})"));
            }
        }
    }
    Ok(())
}

fn c9_zk() -> Result<(), String> {
    for k in 1..=SWEEP_KMAX {
        let s = zk_middle_structure(k).map_err(|e| e.to_string())?;
        if (s == ZkMiddle::Split) != (k % 2 == 0) {
            return Err(format!("k={k}: {s:?}"));
        }
    }
    Ok(())
}

fn c10_verify_all() -> Result<(), String> {
    let run = |jobs: &str| {
        let start = Instant::now();
        let out = Command::new(env!("CARGO_BIN_EXE_pin2mv"))
            .args(["verify", "all", "--jobs", jobs])
            .output()
            .map_err(|e| e.to_string())?;
        Ok::<_, String>((out, start.elapsed()))
    };
    let (a, ta) = run("1")?;
    let (b, _) = run("4")?;
    if !a.status.success() {
        return Err(format!(
            "exit {:?}: {}",
            a.status.code(),
            String::from_utf8_lossy(&a.stderr)
        ));
    }
    if ta > VERIFY_ALL_TIME_LIMIT {
        return Err(format!("took {ta:?}"));
    }
    if a.stdout != b.stdout {
        return Err("output differs between --jobs 1 and --jobs 4".into());
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [(&str, Criterion); 10] = [
        ("1 valuation lemmas, 1 <= k <= 128", c1_appendix),
        ("2 multinomial oracle equals series", c2_oracle),
        (
            "3 simple Chern solver integrality and nu(d) = -2",
            c3_simple_chern,
        ),
        ("4 gamma and alpha constructions", c4_gamma_alpha),
        ("5 AHSS pipelines", c5_ahss),
        ("6 Steenrod tables and periodicity", c6_steenrod),
        (
            "7 RO(Pin(2)) Euler reduction and mod 2A infeasibility",
            c7_ro,
        ),
        (
            "8 dictionary keystone, minv table, explicit line values",
            c8_dictionary,
        ),
        ("9 Z(k) middle structure parity", c9_zk),
        ("10 verify all time and determinism", c10_verify_all),
    ];
    let mut failed = Vec::new();
    for (name, f) in criteria {
        let start = Instant::now();
        match f() {
            Ok(()) => println!("PASS {name} ({:.1?})", start.elapsed()),
            Err(e) => {
                println!("FAIL {name}: {e}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
