//! The coefficient module Sym^g(F^4) twisted by a nebentype.
//!
//! Vectors are homogeneous polynomials of degree g in four variables. An
//! integer matrix s acts on the right: each variable x_i is replaced by the
//! linear form sum_j s_ij x_j, and the result is scaled by eta(s_44).

use std::collections::HashMap;
use std::sync::Arc;

use crate::characters::{gcd, DirichletChar};
use crate::error::{input, parse, Error, Result};
use crate::field::{ExtField, FieldElement};

pub type IntMatrix = [[i64; 4]; 4];

/// binomial(g + 3, 3)
pub fn dimension(g: u32) -> usize {
    let g = g as usize;
    (g + 1) * (g + 2) * (g + 3) / 6
}

/// Exponent tuples of total degree g, largest first in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    g: u32,
    tuples: Vec<[u32; 4]>,
    index: HashMap<[u32; 4], usize>,
}

impl MonomialBasis {
    pub fn new(g: u32) -> MonomialBasis {
        let mut tuples = Vec::with_capacity(dimension(g));
        for a in (0..=g).rev() {
            for b in (0..=g - a).rev() {
                for c in (0..=g - a - b).rev() {
                    tuples.push([a, b, c, g - a - b - c]);
                }
            }
        }
        let index = tuples.iter().enumerate().map(|(i, t)| (*t, i)).collect();
        MonomialBasis { g, tuples, index }
    }

    pub fn degree(&self) -> u32 {
        self.g
    }

    pub fn tuples(&self) -> &[[u32; 4]] {
        &self.tuples
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn index_of(&self, t: &[u32; 4]) -> Option<usize> {
        self.index.get(t).copied()
    }
}

/// Coefficients on a [`MonomialBasis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffVector {
    pub coeffs: Vec<FieldElement>,
}

#[derive(Clone, Debug)]
pub struct SymGModule {
    g: u32,
    eta: DirichletChar,
    field: Arc<ExtField>,
    // bases[d] for d = 0..=g
    bases: Vec<MonomialBasis>,
}

/// Determinant of an integer 4x4 matrix (Bareiss elimination).
pub fn det4(s: &IntMatrix) -> i128 {
    let mut m = [[0i128; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] = s[i][j] as i128;
        }
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..3 {
        if m[k][k] == 0 {
            match (k + 1..4).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..4 {
            for j in k + 1..4 {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[3][3]
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut c = [[0i64; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            c[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

impl SymGModule {
    pub fn new(g: u32, eta: DirichletChar) -> SymGModule {
        let field = eta.field().clone();
        let bases = (0..=g).map(MonomialBasis::new).collect();
        SymGModule { g, eta, field, bases }
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn eta(&self) -> &DirichletChar {
        &self.eta
    }

    pub fn field(&self) -> &Arc<ExtField> {
        &self.field
    }

    pub fn basis(&self) -> &MonomialBasis {
        &self.bases[self.g as usize]
    }

    pub fn dimension(&self) -> usize {
        self.basis().len()
    }

    /// Check membership in the semigroup S_{pN}.
    pub fn check_semigroup(&self, s: &IntMatrix) -> Result<()> {
        let n = self.eta.modulus() as i64;
        let pn = self.field.p() as i128 * n as i128;
        let d = det4(s);
        if d <= 0 {
            return input(format!("det(s) = {d} is not positive"));
        }
        if gcd_i128(d, pn) != 1 {
            return input(format!("det(s) = {d} is not coprime to pN = {pn}"));
        }
        if (0..3).any(|j| s[3][j].rem_euclid(n) != 0) {
            return input(format!("bottom row of s is not (0,0,0,*) mod N = {n}"));
        }
        Ok(())
    }

    /// Image of the monomial x^t as residues on the degree-g basis.
    fn monomial_image(&self, s: &IntMatrix, t: &[u32; 4]) -> Vec<u64> {
        let p = self.field.p();
        let sm: Vec<Vec<u64>> = s
            .iter()
            .map(|row| row.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
            .collect();
        let mut poly = vec![1u64];
        let mut deg = 0usize;
        for (i, &e) in t.iter().enumerate() {
            for _ in 0..e {
                let next_basis = &self.bases[deg + 1];
                let mut next = vec![0u64; next_basis.len()];
                for (k, &c) in poly.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let m = self.bases[deg].tuples[k];
                    for j in 0..4 {
                        if sm[i][j] == 0 {
                            continue;
                        }
                        let mut m2 = m;
                        m2[j] += 1;
                        let idx = next_basis.index_of(&m2).unwrap();
                        next[idx] = (next[idx] + c * sm[i][j]) % p;
                    }
                }
                poly = next;
                deg += 1;
            }
        }
        poly
    }

    /// The right action of `s` on `v`.
    pub fn act(&self, s: &IntMatrix, v: &CoeffVector) -> Result<CoeffVector> {
        self.check_semigroup(s)?;
        if v.coeffs.len() != self.dimension() {
            return input("vector length does not match the module dimension");
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.dimension()];
        for (t, c) in self.basis().tuples.iter().zip(&v.coeffs) {
            if c.is_zero() {
                continue;
            }
            for (k, &a) in self.monomial_image(s, t).iter().enumerate() {
                if a != 0 {
                    f.add_scaled(&mut out[k], c, a);
                }
            }
        }
        let twist = self.eta.eval(s[3][3])?;
        Ok(CoeffVector { coeffs: out.iter().map(|x| f.mul(x, &twist)).collect() })
    }

    /// `g|descriptor|c1 c2 ...` with each coefficient comma-separated.
    pub fn serialize(&self, v: &CoeffVector) -> String {
        let cs: Vec<String> = v.coeffs.iter().map(|c| c.to_string()).collect();
        format!("{}|{}|{}", self.g, self.field.descriptor(), cs.join(" "))
    }

    pub fn parse_vector(&self, s: &str) -> Result<CoeffVector> {
        let parts: Vec<&str> = s.trim().splitn(3, '|').collect();
        if parts.len() != 3 {
            return parse(format!("bad vector {s:?}"));
        }
        let g: u32 = parts[0].parse().map_err(|_| Error::Parse("bad degree".into()))?;
        if g != self.g || parts[1] != self.field.descriptor() {
            return input("vector belongs to a different module");
        }
        let coeffs = parts[2]
            .split_whitespace()
            .map(|c| self.field.parse_element(c))
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() != self.dimension() {
            return input("vector length does not match the module dimension");
        }
        Ok(CoeffVector { coeffs })
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    gcd(a.unsigned_abs() as u64, b.unsigned_abs() as u64) as i128
}
