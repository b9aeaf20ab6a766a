use pin2mv::ahss::decide;
use pin2mv::chern::{psi3, ChernVector};
use pin2mv::exactarith::{
    bm_multinomial_oracle, compose_exp_minus_one, compose_horner, compose_log1p, val2, Rat,
    TruncSeries, Val2,
};
use pin2mv::mahowald::{fm_exists, h_walk, line_lower_bound, mahowald_line, Level};
use pin2mv::ro::{formal_product, gamma_reduce, ro_mul, ro_normalize, FormalTerm, RoElem};
use pin2mv::steenrod::{attach_flags, cell_exists};
use pin2mv::valuation_lemmas::bm_coeff;
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rat> {
    (-2000i64..2000, 1i64..500).prop_map(|(n, d)| Rat::new(n, d).unwrap())
}

fn nonzero_rat() -> impl Strategy<Value = Rat> {
    rat().prop_filter("nonzero", |r| !r.is_zero())
}

fn series(max_order: usize) -> impl Strategy<Value = TruncSeries> {
    (1..=max_order).prop_flat_map(|n| {
        prop::collection::vec(rat(), n + 1).prop_map(move |c| TruncSeries::new(c, n))
    })
}

fn formal_poly() -> impl Strategy<Value = Vec<FormalTerm>> {
    prop::collection::vec(
        (-5i64..=5, 0u32..3, 0u32..3, 0u32..3).prop_map(|(c, d, a, b)| FormalTerm::new(c, d, a, b)),
        1..4,
    )
}

proptest! {
    #[test]
    fn valuation_is_ultrametric(a in rat(), b in rat()) {
        let s = &a + &b;
        prop_assert!(val2(&s) >= val2(&a).min(val2(&b)));
    }

    #[test]
    fn valuation_is_multiplicative(a in nonzero_rat(), b in nonzero_rat()) {
        prop_assert_eq!(val2(&(&a * &b)), val2(&a) + val2(&b));
    }

    #[test]
    fn oracle_matches_series(k in 1u64..=6, m in 0u64..=24) {
        let m = m.min(4 * k);
        prop_assert_eq!(bm_multinomial_oracle(k, m).unwrap(), bm_coeff(k, m).unwrap());
    }

    #[test]
    fn exp_and_log_compositions_invert(h in series(10)) {
        let back = compose_exp_minus_one(&compose_log1p(&h));
        prop_assert_eq!(back, h);
    }

    #[test]
    fn stirling_agrees_with_horner(h in series(9)) {
        let e = TruncSeries::exp_minus_one(h.order());
        prop_assert_eq!(compose_exp_minus_one(&h), compose_horner(&h, &e));
    }

    // ψ³ sends w = e^x − 1 to (1+w)³ − 1; checked on powers of w.
    #[test]
    fn psi3_scales_chern_components(i in 0u64..6, order in 4usize..12) {
        let w = TruncSeries::exp_minus_one(order);
        let psi_w = w.pow(3).add(&w.square().scale(&Rat::from(3))).add(&w.scale(&Rat::from(3)));
        let ch = ChernVector::new(1, w.pow(i).into_coeffs());
        let expected = ChernVector::new(1, psi_w.pow(i).into_coeffs());
        prop_assert_eq!(psi3(&ch), expected);
    }

    #[test]
    fn ro_rewriting_is_confluent(fs in prop::collection::vec(formal_poly(), 1..4)) {
        let direct = ro_normalize(&formal_product(&fs));
        let stepwise = fs.iter().fold(RoElem::one(), |acc, f| ro_mul(&acc, &ro_normalize(f)));
        let mut rev = fs.clone();
        rev.reverse();
        let reversed = ro_normalize(&formal_product(&rev));
        prop_assert_eq!(&direct, &stepwise);
        prop_assert_eq!(&direct, &reversed);
    }

    #[test]
    fn gamma_reduction_is_multiplicative(f in formal_poly(), g in formal_poly()) {
        let (x, y) = (ro_normalize(&f), ro_normalize(&g));
        prop_assert_eq!(gamma_reduce(&ro_mul(&x, &y)), gamma_reduce(&x).mul(&gamma_reduce(&y)));
    }

    #[test]
    fn ro_multiplication_is_associative(f in formal_poly(), g in formal_poly(), h in formal_poly()) {
        let (x, y, z) = (ro_normalize(&f), ro_normalize(&g), ro_normalize(&h));
        prop_assert_eq!(ro_mul(&ro_mul(&x, &y), &z), ro_mul(&x, &ro_mul(&y, &z)));
    }

    #[test]
    fn decide_is_monotone_in_valuation(l in -5i64..40, v in -6i64..6, m in 0i64..40) {
        if decide(l, Val2::Finite(v), m).is_permanent() {
            prop_assert!(decide(l, Val2::Finite(v + 1), m).is_permanent());
        }
        prop_assert!(decide(l, Val2::Inf, m).is_permanent());
    }

    #[test]
    fn fm_existence_is_monotone(p in 2u64..600, q in 0u64..2500) {
        if fm_exists(p, q).unwrap().exists {
            prop_assert!(fm_exists(p, q + 1).unwrap().exists);
            prop_assert!(fm_exists(p - 1, q).unwrap().exists);
        }
    }

    #[test]
    fn h_walk_is_periodic(n in 0u64..200, len in 1u64..40, l in -50i64..200) {
        let m = n + len;
        let base = h_walk(m, n, Level::Finite(l)).unwrap();
        prop_assert_eq!(h_walk(m + 4, n + 4, Level::Finite(l)).unwrap(), base);
        let Level::Finite(b) = base else { unreachable!() };
        prop_assert_eq!(h_walk(m, n, Level::Finite(l + 4)).unwrap(), Level::Finite(b + 4));
        prop_assert_eq!(h_walk(m, n, Level::Inf).unwrap(), Level::Inf);
    }

    #[test]
    fn line_respects_bounds(m in 0u64..5000) {
        let v = mahowald_line(m);
        prop_assert!(v >= -1);
        if m % 8 != 3 {
            if let Some(b) = line_lower_bound(m) {
                prop_assert!(v >= b);
            }
        } else if m >= 11 {
            prop_assert!(v <= 8 * (m / 8) as i64 - 2);
        }
        prop_assert!(cell_exists(m, v + 1));
    }

    #[test]
    fn attach_data_is_four_periodic(m in 0u64..200, j in -200i64..200) {
        prop_assume!(j >= -(m as i64));
        let here = attach_flags(m, j).unwrap();
        prop_assert_eq!(here, attach_flags(m + 4, j).unwrap());
        prop_assert_eq!(here, attach_flags(m, j + 4).unwrap());
    }
}
