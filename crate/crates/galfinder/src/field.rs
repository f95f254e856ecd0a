//! Finite fields GF(p^r) in a power basis over F_p.
//!
//! An [`ExtField`] fixes the defining polynomial; [`FieldElement`]s are bare
//! coefficient vectors and every operation goes through the field, so the
//! same element type serves all degrees chosen at runtime.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use rand::Rng;

use crate::error::{input, parse, Result};
use crate::fppoly;

/// Largest prime accepted; keeps sums of products of residues inside `u64`.
pub const MAX_PRIME: u64 = 1 << 26;
/// Largest extension degree accepted.
pub const MAX_DEGREE: usize = 1024;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An odd prime above 5.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if p <= 5 {
            return input(format!("p = {p} must exceed 5"));
        }
        if p >= MAX_PRIME {
            return input(format!("p = {p} exceeds the supported bound {MAX_PRIME}"));
        }
        if !is_prime(p) {
            return input(format!("p = {p} is not prime"));
        }
        Ok(PrimeModulus(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

/// Coefficients of an element in the power basis `1, x, ..., x^(r-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// GF(p^r) presented as F_p[x]/(modulus).
#[derive(Debug)]
pub struct ExtField {
    p: u64,
    r: usize,
    modulus: Vec<u64>,
    // x^r = sum of c * x^j over these (j, c)
    tail: Vec<(usize, u64)>,
    // row-major r x r matrix of the p-power map
    frob: Vec<u64>,
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for ExtField {}

/// Build GF(p^r) with the lexicographically smallest monic irreducible
/// modulus (coefficients compared from the constant term up).
pub fn make_field(p: u64, r: usize) -> Result<Arc<ExtField>> {
    let pm = PrimeModulus::new(p)?;
    if r == 0 || r > MAX_DEGREE {
        return input(format!("extension degree {r} outside 1..={MAX_DEGREE}"));
    }
    let modulus = smallest_irreducible(pm.get(), r);
    Ok(Arc::new(ExtField::from_parts(pm.get(), modulus)))
}

fn smallest_irreducible(p: u64, r: usize) -> Vec<u64> {
    if r == 1 {
        return vec![0, 1];
    }
    // odometer over (c0, ..., c_{r-1}) with c0 most significant
    let mut c = vec![0u64; r];
    c[0] = 1;
    loop {
        let mut f = c.clone();
        f.push(1);
        if fppoly::is_irreducible(&f, p) {
            return f;
        }
        let mut i = r - 1;
        loop {
            c[i] += 1;
            if c[i] < p {
                break;
            }
            c[i] = 0;
            i -= 1;
        }
    }
}

impl ExtField {
    fn from_parts(p: u64, modulus: Vec<u64>) -> ExtField {
        let r = modulus.len() - 1;
        let tail = (0..r)
            .filter(|&j| modulus[j] != 0)
            .map(|j| (j, p - modulus[j]))
            .collect();
        let mut field = ExtField { p, r, modulus, tail, frob: Vec::new() };
        let mut frob = vec![0u64; r * r];
        let xp = field.pow_u64(&field.generator(), p);
        let mut col = field.one();
        for j in 0..r {
            for i in 0..r {
                frob[i * r + j] = col.coeffs[i];
            }
            col = field.mul(&col, &xp);
        }
        field.frob = frob;
        field
    }

    /// Use an explicit modulus, which must be monic and irreducible.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Arc<ExtField>> {
        let pm = PrimeModulus::new(p)?;
        if modulus.len() < 2 || modulus.len() - 1 > MAX_DEGREE {
            return input("modulus degree out of range");
        }
        if *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
            return input("modulus must be monic with residues in [0, p)");
        }
        if !fppoly::is_irreducible(&modulus, pm.get()) {
            return input("modulus is not irreducible");
        }
        Ok(Arc::new(ExtField::from_parts(pm.get(), modulus)))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Number of elements, p^r.
    pub fn order(&self) -> BigUint {
        BigUint::from(self.p).pow(self.r as u32)
    }

    /// `GF(p^r):modulus=c0,...,cr`.
    pub fn descriptor(&self) -> String {
        let m: Vec<String> = self.modulus.iter().map(u64::to_string).collect();
        format!("GF({}^{}):modulus={}", self.p, self.r, m.join(","))
    }

    pub fn parse_descriptor(s: &str) -> Result<Arc<ExtField>> {
        let s = s.trim();
        let rest = s.strip_prefix("GF(").ok_or_else(|| bad_descriptor(s))?;
        let (pr, m) = rest.split_once("):modulus=").ok_or_else(|| bad_descriptor(s))?;
        let (p, r) = pr.split_once('^').ok_or_else(|| bad_descriptor(s))?;
        let p: u64 = p.parse().map_err(|_| bad_descriptor(s))?;
        let r: usize = r.parse().map_err(|_| bad_descriptor(s))?;
        let modulus = m
            .split(',')
            .map(|c| c.trim().parse::<u64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| bad_descriptor(s))?;
        if modulus.len() != r + 1 {
            return parse(format!("modulus length does not match degree in {s:?}"));
        }
        ExtField::with_modulus(p, modulus)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { coeffs: vec![0; self.r] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_u64(1)
    }

    /// The class of `x`. For r = 1 the modulus is `x` itself, so this is 0.
    pub fn generator(&self) -> FieldElement {
        if self.r == 1 {
            return self.zero();
        }
        let mut c = vec![0; self.r];
        c[1] = 1;
        FieldElement { coeffs: c }
    }

    pub fn from_u64(&self, a: u64) -> FieldElement {
        let mut c = vec![0; self.r];
        c[0] = a % self.p;
        FieldElement { coeffs: c }
    }

    pub fn from_i64(&self, a: i64) -> FieldElement {
        self.from_u64(fppoly::reduce_i64(a, self.p))
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() != self.r {
            return input(format!("expected {} coefficients, got {}", self.r, coeffs.len()));
        }
        if coeffs.iter().any(|&c| c >= self.p) {
            return input("coefficient outside [0, p)");
        }
        Ok(FieldElement { coeffs: coeffs.to_vec() })
    }

    /// Evaluate an F_p polynomial (ascending residues) at `x`.
    pub fn from_fp_poly(&self, poly: &[u64], x: &FieldElement) -> FieldElement {
        let mut acc = self.zero();
        for &c in poly.iter().rev() {
            acc = self.mul(&acc, x);
            acc.coeffs[0] = (acc.coeffs[0] + c) % self.p;
        }
        acc
    }

    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let cs = s
            .split(',')
            .map(|c| c.trim().parse::<u64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| crate::error::Error::Parse(format!("bad field element {s:?}")))?;
        self.from_coeffs(&cs)
    }

    pub fn format_element(&self, a: &FieldElement) -> String {
        a.to_string()
    }

    /// The residue if `a` lies in the prime field.
    pub fn as_prime(&self, a: &FieldElement) -> Option<u64> {
        if a.coeffs[1..].iter().all(|&c| c == 0) {
            Some(a.coeffs[0])
        } else {
            None
        }
    }

    pub fn is_one(&self, a: &FieldElement) -> bool {
        self.as_prime(a) == Some(1)
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.p;
        FieldElement {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| (x + y) % p).collect(),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.p;
        FieldElement {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| (x + p - y) % p).collect(),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let p = self.p;
        FieldElement { coeffs: a.coeffs.iter().map(|&x| (p - x) % p).collect() }
    }

    /// Multiply by a residue.
    pub fn scale(&self, a: &FieldElement, c: u64) -> FieldElement {
        let p = self.p;
        let c = c % p;
        FieldElement { coeffs: a.coeffs.iter().map(|&x| x * c % p).collect() }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let (p, r) = (self.p, self.r);
        if r == 1 {
            return FieldElement { coeffs: vec![a.coeffs[0] * b.coeffs[0] % p] };
        }
        let mut t = vec![0u64; 2 * r - 1];
        self.mul_wide(&mut t, a, b);
        self.reduce_wide(&mut t)
    }

    /// How many products `mul_wide` may add into one accumulator before
    /// `reduce_wide` must run.
    pub fn wide_capacity(&self) -> usize {
        let sq = (self.p - 1) * (self.p - 1);
        ((u64::MAX / 2 - self.p) / sq.max(1) / self.r as u64) as usize
    }

    /// Add the unreduced product of `a` and `b` into `t` (length `2r - 1`).
    pub fn mul_wide(&self, t: &mut [u64], a: &FieldElement, b: &FieldElement) {
        let r = self.r;
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (tv, &y) in t[i..i + r].iter_mut().zip(&b.coeffs) {
                *tv += x * y;
            }
        }
    }

    /// Reduce an accumulator filled by `mul_wide` and clear it.
    pub fn reduce_wide(&self, t: &mut [u64]) -> FieldElement {
        let (p, r) = (self.p, self.r);
        for v in t.iter_mut() {
            *v %= p;
        }
        for i in (r..t.len()).rev() {
            let c = t[i] % p;
            t[i] = 0;
            if c == 0 {
                continue;
            }
            for &(j, m) in &self.tail {
                t[i - r + j] += c * m;
            }
        }
        let coeffs = t[..r].iter().map(|&v| v % p).collect();
        for v in t[..r].iter_mut() {
            *v = 0;
        }
        FieldElement { coeffs }
    }

    /// `acc += a * c` for a residue `c`.
    pub fn add_scaled(&self, acc: &mut FieldElement, a: &FieldElement, c: u64) {
        let p = self.p;
        for (x, &y) in acc.coeffs.iter_mut().zip(&a.coeffs) {
            *x = (*x + y * c) % p;
        }
    }

    pub fn square(&self, a: &FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn pow_u64(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut acc = self.one();
        let mut b = a.clone();
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

    /// `a^e` for signed `e`; `a` must be nonzero when `e < 0`.
    pub fn pow_i64(&self, a: &FieldElement, e: i64) -> FieldElement {
        if e >= 0 {
            self.pow_u64(a, e as u64)
        } else {
            let inv = self.inv(a).expect("negative power of zero");
            self.pow_u64(&inv, e.unsigned_abs())
        }
    }

    pub fn pow(&self, a: &FieldElement, e: &BigUint) -> FieldElement {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// Multiplicative inverse by extended Euclid; `None` for zero.
    pub fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return None;
        }
        if self.r == 1 {
            return Some(self.from_u64(fppoly::inv_mod(a.coeffs[0], self.p)));
        }
        let mut poly = a.coeffs.clone();
        fppoly::trim(&mut poly);
        let mut inv = fppoly::inv_mod_poly(&poly, &self.modulus, self.p)?;
        inv.resize(self.r, 0);
        Some(FieldElement { coeffs: inv })
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Option<FieldElement> {
        Some(self.mul(a, &self.inv(b)?))
    }

    /// The p-power map.
    pub fn frobenius(&self, a: &FieldElement) -> FieldElement {
        let (p, r) = (self.p, self.r);
        if r == 1 {
            return a.clone();
        }
        let coeffs = (0..r)
            .map(|i| {
                let row = &self.frob[i * r..(i + 1) * r];
                row.iter().zip(&a.coeffs).map(|(&m, &x)| m * x % p).sum::<u64>() % p
            })
            .collect();
        FieldElement { coeffs }
    }

    /// `a^(p^k)`.
    pub fn frobenius_pow(&self, a: &FieldElement, k: usize) -> FieldElement {
        let mut b = a.clone();
        for _ in 0..k % self.r {
            b = self.frobenius(&b);
        }
        b
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement { coeffs: (0..self.r).map(|_| rng.gen_range(0..self.p)).collect() }
    }

    /// Distinct Galois conjugates of `a`, starting with `a`.
    pub fn conjugates(&self, a: &FieldElement) -> Vec<FieldElement> {
        let mut out = vec![a.clone()];
        let mut b = self.frobenius(a);
        while &b != a {
            out.push(b.clone());
            b = self.frobenius(&b);
        }
        out
    }

    /// Minimal polynomial of `a` over F_p, ascending and monic.
    pub fn minimal_poly(&self, a: &FieldElement) -> Vec<u64> {
        let mut acc = vec![self.one()];
        for c in self.conjugates(a) {
            let nc = self.neg(&c);
            let mut next = vec![self.zero(); acc.len() + 1];
            for (i, x) in acc.iter().enumerate() {
                next[i + 1] = self.add(&next[i + 1], x);
                next[i] = self.add(&next[i], &self.mul(x, &nc));
            }
            acc = next;
        }
        acc.iter()
            .map(|x| self.as_prime(x).expect("minimal polynomial has F_p coefficients"))
            .collect()
    }

    /// Multiplicative order of a nonzero element, given a multiple of it.
    pub fn element_order(&self, a: &FieldElement, multiple: u64) -> u64 {
        let mut n = multiple;
        let mut q = 2;
        let mut m = multiple;
        let mut primes = Vec::new();
        while q * q <= m {
            if m % q == 0 {
                primes.push(q);
                while m % q == 0 {
                    m /= q;
                }
            }
            q += 1;
        }
        if m > 1 {
            primes.push(m);
        }
        for q in primes {
            while n % q == 0 && self.is_one(&self.pow_u64(a, n / q)) {
                n /= q;
            }
        }
        n
    }
}

fn bad_descriptor(s: &str) -> crate::error::Error {
    crate::error::Error::Parse(format!("bad field descriptor {s:?}"))
}

/// A fixed embedding GF(p^s) -> GF(p^r), s | r.
#[derive(Debug, Clone)]
pub struct Embedding {
    source: Arc<ExtField>,
    target: Arc<ExtField>,
    image_of_generator: FieldElement,
}

impl Embedding {
    /// Sends the source generator to the lexicographically smallest root of
    /// its minimal polynomial in the target.
    pub fn new(source: &Arc<ExtField>, target: &Arc<ExtField>) -> Result<Embedding> {
        if source.p != target.p {
            return input("fields have different characteristic");
        }
        if target.r % source.r != 0 {
            return input(format!("degree {} does not divide {}", source.r, target.r));
        }
        let roots = crate::poly::roots_of_fp_poly(target, &source.modulus)?;
        let image_of_generator = roots.into_iter().min().expect("irreducible of degree dividing r splits");
        Ok(Embedding { source: source.clone(), target: target.clone(), image_of_generator })
    }

    pub fn apply(&self, a: &FieldElement) -> FieldElement {
        debug_assert_eq!(a.coeffs.len(), self.source.r);
        self.target.from_fp_poly(&a.coeffs, &self.image_of_generator)
    }
}

/// Image of `a` in `target` under [`Embedding::new`].
pub fn embed(a: &FieldElement, source: &Arc<ExtField>, target: &Arc<ExtField>) -> Result<FieldElement> {
    Ok(Embedding::new(source, target)?.apply(a))
}
