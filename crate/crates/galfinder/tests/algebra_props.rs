use std::sync::Arc;

use galfinder::characters::{enumerate_chars, gcd};
use galfinder::field::{make_field, ExtField, FieldElement};
use num_bigint::BigUint;
use proptest::prelude::*;

fn fields() -> Vec<Arc<ExtField>> {
    [(12037, 1), (12037, 2), (16001, 3), (7, 5), (11, 8)].iter().map(|&(p, r)| make_field(p, r).unwrap()).collect()
}

fn element(f: &ExtField, seed: &[u64]) -> FieldElement {
    let cs: Vec<u64> = seed[..f.r()].iter().map(|c| c % f.p()).collect();
    f.from_coeffs(&cs).unwrap()
}

/// Schoolbook product reduced by the modulus, written out independently.
fn naive_mul(f: &ExtField, a: &FieldElement, b: &FieldElement) -> Vec<u64> {
    let (p, r) = (f.p() as u128, f.r());
    let mut t = vec![0u128; 2 * r];
    for (i, &x) in a.coeffs().iter().enumerate() {
        for (j, &y) in b.coeffs().iter().enumerate() {
            t[i + j] = (t[i + j] + x as u128 * y as u128) % p;
        }
    }
    let m = f.modulus();
    for d in (r..2 * r).rev() {
        let c = t[d];
        if c == 0 {
            continue;
        }
        for k in 0..=r {
            t[d - r + k] = (t[d - r + k] + (p - c) * m[k] as u128) % p;
        }
    }
    t[..r].iter().map(|&c| c as u64).collect()
}

fn seeds() -> impl Strategy<Value = (usize, Vec<u64>, Vec<u64>, Vec<u64>)> {
    let v = || prop::collection::vec(any::<u64>(), 8);
    (0usize..5, v(), v(), v())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms((i, x, y, z) in seeds()) {
        let f = &fields()[i];
        let (a, b, c) = (element(f, &x), element(f, &y), element(f, &z));
        prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.add(&f.sub(&a, &b), &b), a.clone());
        prop_assert_eq!(f.mul(&a, &f.one()), a.clone());
        if !a.is_zero() {
            let inv = f.inv(&a).unwrap();
            prop_assert!(f.is_one(&f.mul(&a, &inv)));
        } else {
            prop_assert!(f.inv(&a).is_none());
        }
    }

    #[test]
    fn product_matches_schoolbook((i, x, y, _z) in seeds()) {
        let f = &fields()[i];
        let (a, b) = (element(f, &x), element(f, &y));
        prop_assert_eq!(f.mul(&a, &b).coeffs().to_vec(), naive_mul(f, &a, &b));
    }

    #[test]
    fn frobenius_is_a_ring_map_of_order_r((i, x, y, _z) in seeds()) {
        let f = &fields()[i];
        let (a, b) = (element(f, &x), element(f, &y));
        prop_assert_eq!(f.frobenius(&f.add(&a, &b)), f.add(&f.frobenius(&a), &f.frobenius(&b)));
        prop_assert_eq!(f.frobenius(&f.mul(&a, &b)), f.mul(&f.frobenius(&a), &f.frobenius(&b)));
        prop_assert_eq!(f.frobenius(&a), f.pow_u64(&a, f.p()));
        prop_assert_eq!(f.frobenius_pow(&a, f.r()), a.clone());
        prop_assert_eq!(f.pow(&a, &f.order()), a.clone());
        if !a.is_zero() {
            prop_assert!(f.is_one(&f.pow(&a, &(f.order() - BigUint::from(1u8)))));
        }
    }

    #[test]
    fn characters_are_multiplicative(n in 1u64..=18, m1 in -60i64..60, m2 in -60i64..60) {
        prop_assume!(gcd(m1.unsigned_abs(), n) == 1 && gcd(m2.unsigned_abs(), n) == 1);
        let f = make_field(16001, 4).unwrap();
        for chi in enumerate_chars(n, &f).unwrap() {
            let lhs = chi.eval(m1 * m2).unwrap();
            prop_assert_eq!(&lhs, &f.mul(&chi.eval(m1).unwrap(), &chi.eval(m2).unwrap()));
            prop_assert_eq!(chi.eval(m1 + n as i64).unwrap(), chi.eval(m1).unwrap());
            prop_assert!(f.is_one(&f.pow_u64(&chi.eval(m1).unwrap(), chi.order())));
        }
    }
}

#[test]
fn non_units_are_rejected() {
    let f = make_field(16001, 4).unwrap();
    for chi in enumerate_chars(12, &f).unwrap() {
        assert!(chi.eval(6).is_err());
        assert!(chi.eval(0).is_err());
    }
}
