//! Univariate polynomials over GF(p^r) and root finding.

use std::sync::Arc;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{input, Error, Result};
use crate::field::{ExtField, FieldElement};
use crate::fppoly;

/// Ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    pub coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<FieldElement>) -> Poly {
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElement) -> Poly {
        Poly::new(vec![c])
    }

    pub fn from_fp(f: &ExtField, coeffs: &[u64]) -> Poly {
        Poly::new(coeffs.iter().map(|&c| f.from_u64(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, f: &ExtField, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| f.zero())
    }

    /// Residues if every coefficient lies in F_p.
    pub fn as_fp(&self, f: &ExtField) -> Option<Vec<u64>> {
        self.coeffs.iter().map(|c| f.as_prime(c)).collect()
    }

    pub fn add(&self, f: &ExtField, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| f.add(&self.coeff(f, i), &o.coeff(f, i))).collect())
    }

    pub fn sub(&self, f: &ExtField, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| f.sub(&self.coeff(f, i), &o.coeff(f, i))).collect())
    }

    pub fn scale(&self, f: &ExtField, c: &FieldElement) -> Poly {
        Poly::new(self.coeffs.iter().map(|x| f.mul(x, c)).collect())
    }

    pub fn mul(&self, f: &ExtField, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![f.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn divrem(&self, f: &ExtField, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.coeffs.len() < d.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let dd = d.coeffs.len() - 1;
        let lead_inv = f.inv(&d.coeffs[dd]).unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![f.zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let c = f.mul(&r[i], &lead_inv);
            for j in 0..=dd {
                let k = i - dd + j;
                r[k] = f.sub(&r[k], &f.mul(&c, &d.coeffs[j]));
            }
            q[i - dd] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, f: &ExtField, d: &Poly) -> Poly {
        self.divrem(f, d).1
    }

    pub fn monic(&self, f: &ExtField) -> Poly {
        match self.coeffs.last() {
            None => Poly::zero(),
            Some(lead) => self.scale(f, &f.inv(lead).unwrap()),
        }
    }

    pub fn gcd(&self, f: &ExtField, o: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(f, &b);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn derivative(&self, f: &ExtField) -> Poly {
        Poly::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| f.scale(c, i as u64)).collect(),
        )
    }

    pub fn eval(&self, f: &ExtField, x: &FieldElement) -> FieldElement {
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn mulmod(&self, f: &ExtField, o: &Poly, m: &Poly) -> Poly {
        self.mul(f, o).rem(f, m)
    }

    pub fn powmod(&self, f: &ExtField, e: &BigUint, m: &Poly) -> Poly {
        let base = self.rem(f, m);
        let mut acc = Poly::constant(f.one()).rem(f, m);
        for i in (0..e.bits()).rev() {
            acc = acc.mulmod(f, &acc, m);
            if e.bit(i) {
                acc = acc.mulmod(f, &base, m);
            }
        }
        acc
    }

    /// Product of `(x - a)` over the given roots.
    pub fn from_roots(f: &ExtField, roots: &[FieldElement]) -> Poly {
        roots.iter().fold(Poly::constant(f.one()), |acc, a| {
            acc.mul(f, &Poly::new(vec![f.neg(a), f.one()]))
        })
    }
}

/// Roots of `f` in the field together with the degrees (over the field) of
/// the irreducible factors that contribute none.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootReport {
    /// Sorted, repeated according to multiplicity.
    pub roots: Vec<FieldElement>,
    /// Degrees of factors without roots, each listed once per occurrence.
    /// When the exact splitting is unknown the total degree of the rootless
    /// part is reported as a single entry.
    pub missing: Vec<usize>,
}

fn rng_for(f: &ExtField, deg: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(f.p() ^ ((f.r() as u64) << 32) ^ ((deg as u64) << 48))
}

/// The roots of a nonzero polynomial lying in the field, with multiplicity.
pub fn roots_in_field(f: &Arc<ExtField>, poly: &Poly) -> Result<Vec<FieldElement>> {
    Ok(root_report(f, poly)?.roots)
}

/// Like [`roots_in_field`] but also describes what is missing.
pub fn root_report(f: &Arc<ExtField>, poly: &Poly) -> Result<RootReport> {
    if poly.is_zero() {
        return input("roots of the zero polynomial");
    }
    if poly.degree().unwrap() as u64 >= f.p() {
        return input("polynomial degree must be below p");
    }
    let mut rep = match poly.as_fp(f) {
        Some(fp) => fp_root_report(f, &fp),
        None => generic_root_report(f, poly),
    };
    rep.roots.sort();
    rep.missing.sort();
    Ok(rep)
}

/// All roots of an F_p polynomial in the field (sorted, with multiplicity).
pub fn roots_of_fp_poly(f: &Arc<ExtField>, poly: &[u64]) -> Result<Vec<FieldElement>> {
    root_report(f, &Poly::from_fp(f, poly)).map(|r| r.roots)
}

fn fp_root_report(f: &ExtField, poly: &[u64]) -> RootReport {
    let p = f.p();
    let mut rng = rng_for(f, poly.len());
    let mut roots = Vec::new();
    let mut missing = Vec::new();
    for (g, m) in fppoly::factor(poly, p, &mut rng) {
        let d = g.len() - 1;
        if f.r() % d != 0 {
            let e = gcd(d, f.r());
            for _ in 0..m * e {
                missing.push(d / e);
            }
            continue;
        }
        let theta = if d == 1 {
            f.from_u64((p - g[0]) % p)
        } else {
            root_of_irreducible(f, &g, &mut rng)
        };
        for c in f.conjugates(&theta) {
            for _ in 0..m {
                roots.push(c.clone());
            }
        }
    }
    RootReport { roots, missing }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Arithmetic in GF(q)[x]/(g) for an irreducible `g` over F_p.
struct QuotientRing<'a> {
    f: &'a ExtField,
    g: &'a [u64],
    // column k holds x^(p k) mod g
    berlekamp: Vec<Vec<u64>>,
}

impl<'a> QuotientRing<'a> {
    fn new(f: &'a ExtField, g: &'a [u64]) -> Self {
        let p = f.p();
        let d = g.len() - 1;
        let xp = fppoly::powmod_u64(&[0, 1], p, g, p);
        let mut col = vec![1u64];
        let mut berlekamp = Vec::with_capacity(d);
        for _ in 0..d {
            let mut c = col.clone();
            c.resize(d, 0);
            berlekamp.push(c);
            col = fppoly::mulmod_poly(&col, &xp, g, p);
        }
        QuotientRing { f, g, berlekamp }
    }

    fn d(&self) -> usize {
        self.g.len() - 1
    }

    fn reduce(&self, mut t: Vec<FieldElement>) -> Vec<FieldElement> {
        let f = self.f;
        let d = self.d();
        let p = f.p();
        for i in (d..t.len()).rev() {
            if t[i].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut t[i], f.zero());
            for j in 0..d {
                if self.g[j] != 0 {
                    f.add_scaled(&mut t[i - d + j], &c, p - self.g[j]);
                }
            }
        }
        t.truncate(d);
        t.resize(d, f.zero());
        t
    }

    fn mul(&self, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
        let f = self.f;
        let r = f.r();
        let cap = f.wide_capacity().max(1);
        let n = a.len() + b.len() - 1;
        let mut wide = vec![0u64; 2 * r - 1];
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = f.zero();
            let mut count = 0;
            let lo = k.saturating_sub(b.len() - 1);
            for i in lo..=k.min(a.len() - 1) {
                let (x, y) = (&a[i], &b[k - i]);
                if x.is_zero() || y.is_zero() {
                    continue;
                }
                if count == cap {
                    acc = f.add(&acc, &f.reduce_wide(&mut wide));
                    count = 0;
                }
                f.mul_wide(&mut wide, x, y);
                count += 1;
            }
            if count > 0 {
                acc = f.add(&acc, &f.reduce_wide(&mut wide));
            }
            out.push(acc);
        }
        self.reduce(out)
    }

    fn one(&self) -> Vec<FieldElement> {
        let mut v = vec![self.f.zero(); self.d()];
        v[0] = self.f.one();
        v
    }

    fn pow_u64(&self, a: &[FieldElement], mut e: u64) -> Vec<FieldElement> {
        let mut acc = self.one();
        let mut b = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        acc
    }

    /// h -> h^p, using that g has F_p coefficients.
    fn frobenius(&self, h: &[FieldElement]) -> Vec<FieldElement> {
        let f = self.f;
        let d = self.d();
        let mut out = vec![f.zero(); d];
        for (k, hk) in h.iter().enumerate() {
            if hk.is_zero() {
                continue;
            }
            let s = f.frobenius(hk);
            for (i, &b) in self.berlekamp[k].iter().enumerate() {
                if b != 0 {
                    f.add_scaled(&mut out[i], &s, b);
                }
            }
        }
        out
    }
}

impl QuotientRing<'_> {
    fn frobenius_pow(&self, h: &[FieldElement], k: usize) -> Vec<FieldElement> {
        let mut out = h.to_vec();
        for _ in 0..k {
            out = self.frobenius(&out);
        }
        out
    }

    /// Product of h^(p^i) for i < d, by an addition chain on d.
    fn norm(&self, h: &[FieldElement]) -> Vec<FieldElement> {
        let d = self.d();
        let top = usize::BITS - 1 - d.leading_zeros();
        let mut acc = h.to_vec();
        let mut k = 1;
        for bit in (0..top).rev() {
            acc = self.mul(&acc, &self.frobenius_pow(&acc, k));
            k *= 2;
            if (d >> bit) & 1 == 1 {
                acc = self.mul(h, &self.frobenius(&acc));
                k += 1;
            }
        }
        debug_assert_eq!(k, d);
        acc
    }
}

/// One root in the field of an irreducible F_p polynomial whose degree divides r.
fn root_of_irreducible(f: &ExtField, g: &[u64], rng: &mut ChaCha8Rng) -> FieldElement {
    let d = g.len() - 1;
    let ring = QuotientRing::new(f, g);
    let p = f.p();
    let mut h = Poly::from_fp(f, g);
    let x_plus = |c: &FieldElement| {
        let mut v = vec![f.zero(); d];
        v[0] = c.clone();
        v[1] = f.one();
        v
    };
    while h.degree() != Some(1) {
        // u = N_{GF(q)/GF(p^d)}(x + c) evaluated at each root lies in GF(p^d);
        // u^((p^d-1)/2) then separates the roots of g into two random halves.
        let c = f.random(rng);
        let mut u = ring.one();
        for j in 0..f.r() / d {
            u = ring.mul(&u, &x_plus(&f.frobenius_pow(&c, d * j)));
        }
        let b = ring.pow_u64(&u, (p - 1) / 2);
        let mut acc = ring.norm(&b);
        acc[0] = f.sub(&acc[0], &f.one());
        let w = Poly::new(acc).rem(f, &h);
        let s = h.gcd(f, &w);
        let ds = s.degree().unwrap_or(0);
        let dh = h.degree().unwrap();
        if ds == 0 || ds == dh || w.is_zero() {
            continue;
        }
        let other = h.divrem(f, &s).0.monic(f);
        h = if ds <= dh - ds { s } else { other };
    }
    f.neg(&h.coeffs[0])
}

fn generic_root_report(f: &ExtField, poly: &Poly) -> RootReport {
    let mut rng = rng_for(f, poly.coeffs.len());
    let mut roots = Vec::new();
    let mut missing = Vec::new();
    for (s, m) in squarefree(f, poly) {
        let x = Poly::new(vec![f.zero(), f.one()]);
        let mut xq = x.rem(f, &s);
        let pp = BigUint::from(f.p());
        for _ in 0..f.r() {
            xq = xq.powmod(f, &pp, &s);
        }
        let lin = s.gcd(f, &xq.sub(f, &x));
        let dl = lin.degree().unwrap_or(0);
        let ds = s.degree().unwrap();
        if ds > dl {
            for _ in 0..m {
                missing.push(ds - dl);
            }
        }
        for a in split_linear(f, &lin, &mut rng) {
            for _ in 0..m {
                roots.push(a.clone());
            }
        }
    }
    RootReport { roots, missing }
}

fn squarefree(f: &ExtField, poly: &Poly) -> Vec<(Poly, usize)> {
    let poly = poly.monic(f);
    let mut out = Vec::new();
    if poly.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = poly.derivative(f);
    let a0 = poly.gcd(f, &df);
    let mut b = poly.divrem(f, &a0).0;
    let mut c = df.divrem(f, &a0).0;
    let mut d = c.sub(f, &b.derivative(f));
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(f, &d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        b = b.divrem(f, &a).0;
        c = d.divrem(f, &a).0;
        d = c.sub(f, &b.derivative(f));
        i += 1;
    }
    out
}

/// Roots of a squarefree product of distinct linear factors.
fn split_linear(f: &ExtField, lin: &Poly, rng: &mut ChaCha8Rng) -> Vec<FieldElement> {
    match lin.degree() {
        None | Some(0) => return Vec::new(),
        Some(1) => {
            let l = lin.monic(f);
            return vec![f.neg(&l.coeffs[0])];
        }
        _ => {}
    }
    let e = (f.order() - 1u32) / 2u32;
    loop {
        let c = f.random(rng);
        let t = Poly::new(vec![c, f.one()]);
        let mut b = t.powmod(f, &e, lin);
        b = b.sub(f, &Poly::constant(f.one()));
        let s = lin.gcd(f, &b);
        let ds = s.degree().unwrap_or(0);
        if ds > 0 && ds < lin.degree().unwrap() {
            let o = lin.divrem(f, &s).0;
            let mut out = split_linear(f, &s, rng);
            out.extend(split_linear(f, &o, rng));
            return out;
        }
    }
}

/// Describe missing roots for an error message.
pub fn enlarge_r_error(f: &ExtField, what: &str, missing: &[usize]) -> Error {
    let degs: Vec<String> = missing.iter().map(usize::to_string).collect();
    Error::EnlargeR(format!(
        "{what} has irreducible factors of degree {} over GF({}^{})",
        degs.join(", "),
        f.p(),
        f.r()
    ))
}
