//! Dense univariate polynomials over the prime field F_p.
//!
//! A polynomial is a `Vec<u64>` of residues in ascending degree with no
//! trailing zeros; the zero polynomial is the empty vector. Every function
//! takes the prime explicitly. Residues are assumed to lie in `[0, p)`.

use num_bigint::BigUint;
use rand::Rng;

pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

/// Reduce a signed integer into `[0, p)`.
pub fn reduce_i64(a: i64, p: u64) -> u64 {
    a.rem_euclid(p as i64) as u64
}

pub fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn degree(a: &[u64]) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(&mut out);
    out
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(&mut out);
    out
}

pub fn scale(a: &[u64], c: u64, p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = a.iter().map(|&x| x * c % p).collect();
    trim(&mut out);
    out
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; panics on division by zero.
pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    let mut r = a.to_vec();
    let mut q = vec![0u64; a.len() - db];
    for i in (db..a.len()).rev() {
        let c = r[i] * lead_inv % p;
        if c == 0 {
            continue;
        }
        q[i - db] = c;
        for j in 0..=db {
            let k = i - db + j;
            r[k] = (r[k] + p - c * b[j] % p) % p;
        }
    }
    r.truncate(db);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    divrem(a, b, p).1
}

pub fn monic(a: &[u64], p: u64) -> Vec<u64> {
    match a.last() {
        None => Vec::new(),
        Some(&lead) => scale(a, inv_mod(lead, p), p),
    }
}

/// Monic gcd (zero if both inputs are zero).
pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod_poly(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
    let (mut r0, mut r1) = (m.to_vec(), rem(a, m, p));
    let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if r0.len() != 1 {
        return None;
    }
    let c = inv_mod(r0[0], p);
    Some(rem(&scale(&s0, c, p), m, p))
}

pub fn mulmod_poly(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    rem(&mul(a, b, p), m, p)
}

pub fn powmod_u64(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod_poly(&acc, &b, m, p);
        }
        b = mulmod_poly(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

pub fn powmod_big(base: &[u64], e: &BigUint, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem(&[1], m, p);
    let b = rem(base, m, p);
    for i in (0..e.bits()).rev() {
        acc = mulmod_poly(&acc, &acc, m, p);
        if e.bit(i) {
            acc = mulmod_poly(&acc, &b, m, p);
        }
    }
    acc
}

pub fn derivative(a: &[u64], p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| (i as u64 % p) * c % p)
        .collect();
    trim(&mut out);
    out
}

pub fn eval(a: &[u64], x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

/// Squarefree decomposition of a monic polynomial of degree below `p`
/// (Yun). Returns `(factor, multiplicity)` pairs with nonconstant factors.
pub fn squarefree(f: &[u64], p: u64) -> Vec<(Vec<u64>, usize)> {
    let f = monic(f, p);
    assert!(f.len() <= p as usize, "squarefree decomposition needs degree < p");
    let mut out = Vec::new();
    if f.len() <= 1 {
        return out;
    }
    let df = derivative(&f, p);
    let a0 = gcd(&f, &df, p);
    let mut b = divrem(&f, &a0, p).0;
    let mut c = divrem(&df, &a0, p).0;
    let mut d = sub(&c, &derivative(&b, p), p);
    let mut i = 1;
    while b.len() > 1 {
        let a = gcd(&b, &d, p);
        if a.len() > 1 {
            out.push((a.clone(), i));
        }
        b = divrem(&b, &a, p).0;
        c = divrem(&d, &a, p).0;
        d = sub(&c, &derivative(&b, p), p);
        i += 1;
    }
    out
}

/// Distinct-degree factorization of a squarefree monic polynomial:
/// `(product of all irreducible factors of degree d, d)`.
pub fn distinct_degree(f: &[u64], p: u64) -> Vec<(Vec<u64>, usize)> {
    let mut out = Vec::new();
    let mut f = monic(f, p);
    let x = vec![0, 1];
    let mut h = rem(&x, &f, p);
    let mut d = 0;
    while f.len() > 1 {
        d += 1;
        if 2 * d > f.len() - 1 {
            let deg = f.len() - 1;
            out.push((f, deg));
            break;
        }
        h = powmod_u64(&h, p, &f, p);
        let g = gcd(&sub(&h, &x, p), &f, p);
        if g.len() > 1 {
            f = divrem(&f, &g, p).0;
            h = rem(&h, &f, p);
            out.push((g, d));
        }
    }
    out
}

/// Split a squarefree monic product of degree-`d` irreducibles (odd p).
pub fn equal_degree<R: Rng>(f: &[u64], d: usize, p: u64, rng: &mut R) -> Vec<Vec<u64>> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.to_vec()];
    }
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a: Vec<u64> = {
            let mut v: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
            trim(&mut v);
            v
        };
        if a.len() < 2 {
            continue;
        }
        let b = powmod_big(&a, &e, f, p);
        let g = gcd(&sub(&b, &[1], p), f, p);
        if g.len() > 1 && g.len() < f.len() {
            let h = divrem(f, &g, p).0;
            let mut out = equal_degree(&g, d, p, rng);
            out.extend(equal_degree(&h, d, p, rng));
            return out;
        }
    }
}

/// Full factorization into monic irreducibles with multiplicity, sorted.
pub fn factor<R: Rng>(f: &[u64], p: u64, rng: &mut R) -> Vec<(Vec<u64>, usize)> {
    let mut out = Vec::new();
    for (s, m) in squarefree(f, p) {
        for (g, d) in distinct_degree(&s, p) {
            for h in equal_degree(&g, d, p, rng) {
                out.push((h, m));
            }
        }
    }
    out.sort();
    out
}

/// Ben-Or irreducibility test.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = match degree(f) {
        None | Some(0) => return false,
        Some(n) => n,
    };
    if n == 1 {
        return true;
    }
    let f = monic(f, p);
    if f[0] == 0 {
        return false;
    }
    let x = vec![0, 1];
    let mut h = x.clone();
    for _ in 0..n / 2 {
        h = powmod_u64(&h, p, &f, p);
        if gcd(&sub(&h, &x, p), &f, p).len() > 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const P: u64 = 12037;

    #[test]
    fn divrem_reconstructs() {
        let a = vec![5, 0, 3, 7, 1];
        let b = vec![2, 9, 1];
        let (q, r) = divrem(&a, &b, P);
        assert_eq!(add(&mul(&q, &b, P), &r, P), a);
        assert!(r.len() < b.len());
    }

    #[test]
    fn inverse_mod_irreducible() {
        let m = (1..P).map(|c| vec![c, 0, 1]).find(|m| is_irreducible(m, P)).unwrap();
        let a = vec![4, 7];
        let i = inv_mod_poly(&a, &m, P).unwrap();
        assert_eq!(mulmod_poly(&a, &i, &m, P), vec![1]);
    }

    #[test]
    fn factor_recovers_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f1 = vec![3, 1];
        let f2 = vec![P - 5, 1];
        let f = mul(&mul(&f1, &f1, P), &f2, P);
        let fs = factor(&f, P, &mut rng);
        let mut expect = vec![(f1, 2), (f2, 1)];
        expect.sort();
        assert_eq!(fs, expect);
    }

    #[test]
    fn irreducibility_agrees_with_root_search() {
        // A quadratic is irreducible iff it has no root; checked by brute force on a small prime.
        let p = 101;
        for c0 in 0..20 {
            for c1 in 0..5 {
                let f = vec![c0, c1, 1];
                let has_root = (0..p).any(|x| eval(&f, x, p) == 0);
                assert_eq!(is_irreducible(&f, p), !has_root, "{f:?}");
            }
        }
    }
}
