use std::sync::Arc;

use galfinder::characters::{gcd, CharNames};
use galfinder::field::{make_field, ExtField};
use galfinder::symg::{det4, dimension, mat_mul, CoeffVector, IntMatrix, SymGModule};
use proptest::prelude::*;

const P: u64 = 12037;
const N: u64 = 13;

fn field() -> Arc<ExtField> {
    make_field(P, 1).unwrap()
}

fn module(g: u32) -> SymGModule {
    let f = field();
    let eta = CharNames::new(N, &f).unwrap().parse("chi13").unwrap();
    SymGModule::new(g, eta)
}

fn in_semigroup(s: &IntMatrix) -> bool {
    let d = det4(s);
    d > 0 && gcd(d as u64 % (P * N), P * N) == 1
}

/// Entries in [-4, 4], bottom row (0, 0, 0, *) mod N.
fn semigroup_matrix() -> impl Strategy<Value = IntMatrix> {
    (prop::array::uniform12(-4i64..=4), prop::array::uniform3(-1i64..=1), 1i64..=30)
        .prop_map(|(top, bottom, corner)| {
            let mut s = [[0i64; 4]; 4];
            for i in 0..3 {
                for j in 0..4 {
                    s[i][j] = top[4 * i + j];
                }
            }
            for j in 0..3 {
                s[3][j] = bottom[j] * N as i64;
            }
            s[3][3] = corner;
            s
        })
        .prop_filter("det coprime to pN", in_semigroup)
}

fn vector(g: u32) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0..P, dimension(g))
}

fn to_vec(f: &ExtField, v: &[u64]) -> CoeffVector {
    CoeffVector { coeffs: v.iter().map(|&c| f.from_u64(c)).collect() }
}

#[test]
fn dimension_is_binomial() {
    for g in 0..=12u32 {
        let b = (1..=3u64).fold(1u64, |acc, i| acc * (g as u64 + i) / i);
        assert_eq!(dimension(g) as u64, b);
        assert_eq!(module(g).dimension() as u64, b);
    }
}

#[test]
fn scalar_acts_by_eta_times_power() {
    let f = field();
    for g in 0..=4 {
        let m = module(g);
        let v = to_vec(&f, &(1..=dimension(g) as u64).collect::<Vec<_>>());
        for l in [2i64, 3, 5, 7, 11] {
            let s = [[l, 0, 0, 0], [0, l, 0, 0], [0, 0, l, 0], [0, 0, 0, l]];
            let factor = f.mul(&m.eta().eval(l).unwrap(), &f.pow_u64(&f.from_u64(l as u64), g as u64));
            let want: Vec<_> = v.coeffs.iter().map(|c| f.mul(c, &factor)).collect();
            assert_eq!(m.act(&s, &v).unwrap().coeffs, want, "g = {g}, l = {l}");
        }
    }
}

#[test]
fn rejects_matrices_outside_semigroup() {
    let f = field();
    let m = module(1);
    let v = to_vec(&f, &[1, 2, 3, 4]);
    let singular = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1]];
    let bad_bottom = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 1]];
    let det_13 = [[13, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];
    for s in [singular, bad_bottom, det_13] {
        assert!(m.act(&s, &v).is_err());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn right_action_composes(g in 0u32..=4, s1 in semigroup_matrix(), s2 in semigroup_matrix(), seed in vector(4)) {
        let f = field();
        let m = module(g);
        let v = to_vec(&f, &seed[..dimension(g)]);
        let s12 = mat_mul(&s1, &s2);
        prop_assume!(in_semigroup(&s12));
        let lhs = m.act(&s12, &v).unwrap();
        let rhs = m.act(&s2, &m.act(&s1, &v).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn degree_one_is_row_vector_times_matrix(s in semigroup_matrix(), v in vector(1)) {
        let f = field();
        let m = module(1);
        let twist = m.eta().eval(s[3][3]).unwrap();
        let want: Vec<_> = (0..4)
            .map(|j| {
                let acc = (0..4).fold(0i128, |acc, i| acc + v[i] as i128 * s[i][j] as i128);
                f.mul(&f.from_i64(acc.rem_euclid(P as i128) as i64), &twist)
            })
            .collect();
        prop_assert_eq!(m.act(&s, &to_vec(&f, &v)).unwrap().coeffs, want);
    }

    #[test]
    fn action_is_linear(g in 0u32..=3, s in semigroup_matrix(), a in vector(3), b in vector(3), c in 0..P) {
        let f = field();
        let m = module(g);
        let d = dimension(g);
        let (va, vb) = (to_vec(&f, &a[..d]), to_vec(&f, &b[..d]));
        let c = f.from_u64(c);
        let combo = CoeffVector { coeffs: va.coeffs.iter().zip(&vb.coeffs).map(|(x, y)| f.add(&f.mul(&c, x), y)).collect() };
        let (ia, ib) = (m.act(&s, &va).unwrap(), m.act(&s, &vb).unwrap());
        let want: Vec<_> = ia.coeffs.iter().zip(&ib.coeffs).map(|(x, y)| f.add(&f.mul(&c, x), y)).collect();
        prop_assert_eq!(m.act(&s, &combo).unwrap().coeffs, want);
    }
}
