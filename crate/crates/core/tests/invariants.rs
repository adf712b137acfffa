use proptest::prelude::*;
use rrcf_core::cubic::{cubic_cf, Vi_of};
use rrcf_core::elliptic::{inverse_singular_modulus, singular_modulus, singular_modulus_by_bisection};
use rrcf_core::modular5::{evaluate_parametric, moduli_pair};
use rrcf_core::qseries::QNome;
use rrcf_core::rrcf::{a_of_r, rrcf_cf, rrcf_from_a};
use rrcf_core::{NumericContext, Real};

fn ctx() -> NumericContext {
    NumericContext::with_digits(30)
}

fn rational(c: &NumericContext, num: u32, den: u32) -> Real {
    c.ratio(num as i64, den as i64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn inverse_modulus_round_trip(num in 1u32..400, den in 1u32..20) {
        let c = ctx();
        let r = rational(&c, num, den);
        prop_assume!(r > c.ratio(1, 10) && r < c.int(40));
        let k = singular_modulus(&c, &r).unwrap();
        let back = inverse_singular_modulus(&c, k.modulus.k()).unwrap();
        prop_assert!(((back - &r) / &r).abs() < c.tol());
    }

    #[test]
    fn theta_and_bisection_moduli_agree(num in 1u32..60, den in 1u32..6) {
        let c = ctx();
        let r = rational(&c, num, den);
        prop_assume!(r > c.ratio(1, 4) && r < c.int(12));
        let theta = singular_modulus(&c, &r).unwrap();
        let bisect = singular_modulus_by_bisection(&c, &r).unwrap();
        prop_assert!((theta.modulus.k() - bisect.k()).abs() < c.tol());
    }

    #[test]
    fn pipeline_recovers_r(num in 4u32..24) {
        let c = ctx();
        let r = rational(&c, num, 4);
        let (_, w) = moduli_pair(&c, &r).unwrap();
        let ev = evaluate_parametric(&c, &w).unwrap();
        prop_assert!(((&ev.r - &r) / &r).abs() < c.tol());
        let q = QNome::from_r(&c, &r).unwrap();
        prop_assert!((&ev.r_value - rrcf_cf(&c, &q).unwrap().value).abs() < c.tol());
    }

    #[test]
    fn a_and_r_invert_each_other(num in 1u32..40) {
        let c = ctx();
        let q = QNome::new(rational(&c, num, 100)).unwrap();
        let r = rrcf_cf(&c, &q).unwrap().value;
        let back = rrcf_from_a(&c, &a_of_r(&r)).unwrap();
        prop_assert!((back - &r).abs() < c.tol());
    }

    #[test]
    fn cubic_value_carries_singular_modulus(num in 2u32..32) {
        let c = ctx();
        let r = rational(&c, num, 2);
        let q = QNome::from_r(&c, &r).unwrap();
        let v = cubic_cf(&c, &q).unwrap();
        let k = singular_modulus(&c, &r).unwrap();
        prop_assert!((Vi_of(&c, &v.v).unwrap() - k.modulus.k()).abs() < c.tol());
    }
}
