use galfinder::newform::NewformStore;
use num_bigint::BigInt;

fn rational_ap(store: &NewformStore, label: &str) -> Vec<(u64, i64)> {
    let rec = store.get(label).unwrap_or_else(|| panic!("{label} missing"));
    assert!(rec.is_rational(), "{label}");
    rec.ap
        .iter()
        .map(|(&l, v)| {
            assert_eq!(v.den, BigInt::from(1), "{label} a_{l}");
            (l, v.num.first().map_or(0, |n| i64::try_from(n).unwrap()))
        })
        .collect()
}

// Coefficients of eta products and Delta, from their product expansions.
#[test]
fn known_expansions() {
    let store = NewformStore::bundled().unwrap();
    let known: [(&str, &[(u64, i64)]); 4] = [
        ("1.12.a.a", &[(2, -24), (3, 252), (5, 4830), (7, -16744), (11, 534612)]),
        ("2.8.a.a", &[(2, -8), (3, 12), (5, -210), (7, 1016), (11, 1092)]),
        ("3.6.a.a", &[(2, -6), (3, 9), (5, 6), (7, -40)]),
        ("5.4.a.a", &[(2, -4), (3, 2), (5, -5), (7, 6)]),
    ];
    for (label, want) in known {
        let got = rational_ap(&store, label);
        for (l, a) in want {
            assert!(got.contains(&(*l, *a)), "{label} a_{l}: have {got:?}");
        }
    }
}

#[test]
fn rational_forms_satisfy_deligne_and_bad_prime_rules() {
    let store = NewformStore::bundled().unwrap();
    for rec in store.records().iter().filter(|r| r.is_rational()) {
        let k = rec.weight as i32;
        for (l, a) in rational_ap(&store, &rec.label) {
            let a = a as f64;
            let l_f = l as f64;
            if rec.level % l != 0 {
                assert!(a * a <= 4.0 * l_f.powi(k - 1) + 1e-6, "{} a_{l}", rec.label);
            } else if rec.level % (l * l) != 0 && rec.nebentype.gen_values_order.iter().all(|&e| e == 0) {
                assert_eq!(a * a, l_f.powi(k - 2), "{} a_{l}", rec.label);
            }
        }
    }
}
