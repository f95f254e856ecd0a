//! Dirichlet characters (Z/N)^x -> GF(p^r)^x.
//!
//! Characters are stored by their values on a fixed set of generators of the
//! unit group. The generators follow the usual convention of computer algebra
//! systems: prime powers in increasing order, `-1` (and `5` when `8 | N`) for
//! the 2-part, the smallest primitive root for odd parts, each lifted by CRT
//! to be 1 modulo the other parts.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{input, parse, Error, Result};
use crate::field::{ExtField, FieldElement};

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Prime factorization as (prime, exponent) pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn mult_order(a: u64, n: u64) -> u64 {
    let mut x = a % n;
    let mut k = 1;
    while x != 1 % n {
        x = x * a % n;
        k += 1;
    }
    k
}

/// (Z/N)^x as a product of cyclic groups.
#[derive(Debug, PartialEq, Eq)]
pub struct UnitGroup {
    modulus: u64,
    generators: Vec<u64>,
    orders: Vec<u64>,
    // exponent vector for each residue coprime to N
    dlog: Vec<Option<Vec<u64>>>,
}

pub fn unit_group(n: u64) -> Result<Arc<UnitGroup>> {
    if n == 0 {
        return input("modulus N must be positive");
    }
    if n > 1_000_000 {
        return input(format!("modulus {n} is too large"));
    }
    let mut generators = Vec::new();
    let mut orders = Vec::new();
    for (p, e) in factorize(n) {
        let q = p.pow(e);
        let rest = n / q;
        let local: Vec<(u64, u64)> = if p == 2 {
            match e {
                1 => vec![],
                2 => vec![(3, 2)],
                _ => vec![(q - 1, 2), (5, q / 4)],
            }
        } else {
            let phi = q / p * (p - 1);
            let g = (2..q).find(|&g| g % p != 0 && mult_order(g, q) == phi).unwrap();
            vec![(g, phi)]
        };
        for (g, ord) in local {
            let x = (0..n).find(|&x| x % q == g % q && x % rest == 1 % rest).unwrap();
            generators.push(x);
            orders.push(ord);
        }
    }
    let mut dlog = vec![None; n as usize];
    let mut exps = vec![0u64; generators.len()];
    loop {
        let m = generators
            .iter()
            .zip(&exps)
            .fold(1 % n, |acc, (&g, &a)| acc * crate::fppoly::pow_mod(g, a, n) % n);
        dlog[m as usize] = Some(exps.clone());
        let mut i = 0;
        loop {
            if i == exps.len() {
                return Ok(Arc::new(UnitGroup { modulus: n, generators, orders, dlog }));
            }
            exps[i] += 1;
            if exps[i] < orders[i] {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

impl UnitGroup {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Exponent of the group (lcm of the cyclic orders).
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |a, &b| lcm(a, b))
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn residue(&self, m: i64) -> u64 {
        m.rem_euclid(self.modulus as i64) as u64
    }

    /// Exponents of `m` with respect to the generators.
    pub fn dlog(&self, m: i64) -> Result<&[u64]> {
        match &self.dlog[self.residue(m) as usize] {
            Some(v) => Ok(v),
            None => input(format!("{m} is not coprime to {}", self.modulus)),
        }
    }

    /// The residues coprime to N in increasing order.
    pub fn units(&self) -> impl Iterator<Item = u64> + '_ {
        self.dlog.iter().enumerate().filter(|(_, d)| d.is_some()).map(|(m, _)| m as u64)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// A character given by its values on the unit-group generators.
#[derive(Clone, Debug)]
pub struct DirichletChar {
    group: Arc<UnitGroup>,
    field: Arc<ExtField>,
    values: Vec<FieldElement>,
}

impl PartialEq for DirichletChar {
    fn eq(&self, other: &Self) -> bool {
        self.group.modulus == other.group.modulus && self.values == other.values
    }
}

impl Eq for DirichletChar {}

impl Hash for DirichletChar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.group.modulus.hash(state);
        self.values.hash(state);
    }
}

impl DirichletChar {
    pub fn new(group: Arc<UnitGroup>, field: Arc<ExtField>, values: Vec<FieldElement>) -> Result<Self> {
        if values.len() != group.generators.len() {
            return input(format!(
                "character mod {} needs {} values, got {}",
                group.modulus,
                group.generators.len(),
                values.len()
            ));
        }
        for (v, &ord) in values.iter().zip(&group.orders) {
            if !field.is_one(&field.pow_u64(v, ord)) {
                return input(format!(
                    "value {v} has order not dividing {ord} (mod {})",
                    group.modulus
                ));
            }
        }
        Ok(DirichletChar { group, field, values })
    }

    pub fn trivial(group: Arc<UnitGroup>, field: Arc<ExtField>) -> Self {
        let values = vec![field.one(); group.generators.len()];
        DirichletChar { group, field, values }
    }

    pub fn modulus(&self) -> u64 {
        self.group.modulus
    }

    pub fn group(&self) -> &Arc<UnitGroup> {
        &self.group
    }

    pub fn field(&self) -> &Arc<ExtField> {
        &self.field
    }

    pub fn values(&self) -> &[FieldElement] {
        &self.values
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| self.field.is_one(v))
    }

    pub fn eval(&self, m: i64) -> Result<FieldElement> {
        let exps = self.group.dlog(m)?;
        let f = &self.field;
        Ok(self
            .values
            .iter()
            .zip(exps)
            .fold(f.one(), |acc, (v, &a)| f.mul(&acc, &f.pow_u64(v, a))))
    }

    pub fn order(&self) -> u64 {
        self.values
            .iter()
            .zip(&self.group.orders)
            .fold(1, |acc, (v, &ord)| lcm(acc, self.field.element_order(v, ord)))
    }

    pub fn parity(&self) -> Parity {
        if self.field.is_one(&self.eval(-1).expect("-1 is a unit")) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Sign of the character at -1 as an integer.
    pub fn sign(&self) -> i64 {
        match self.parity() {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }

    /// Smallest M | N such that the character is trivial on units = 1 mod M.
    pub fn conductor(&self) -> u64 {
        let n = self.group.modulus;
        let mut divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
        divisors.sort();
        for m in divisors {
            let trivial_on_kernel = self
                .group
                .units()
                .filter(|&u| u % m == 1 % m)
                .all(|u| self.field.is_one(&self.eval(u as i64).unwrap()));
            if trivial_on_kernel {
                return m;
            }
        }
        n
    }

    pub fn order_parity_conductor(&self) -> (u64, Parity, u64) {
        (self.order(), self.parity(), self.conductor())
    }

    /// The same character viewed modulo a multiple of N.
    pub fn lift(&self, target: &Arc<UnitGroup>) -> Result<DirichletChar> {
        if target.modulus % self.group.modulus != 0 {
            return input(format!(
                "cannot lift a character mod {} to modulus {}",
                self.group.modulus, target.modulus
            ));
        }
        let values = target
            .generators
            .iter()
            .map(|&g| self.eval(g as i64))
            .collect::<Result<Vec<_>>>()?;
        Ok(DirichletChar { group: target.clone(), field: self.field.clone(), values })
    }

    /// The character viewed modulo a divisor M of N; M must be a multiple of
    /// the conductor.
    pub fn restrict(&self, target: &Arc<UnitGroup>) -> Result<DirichletChar> {
        let (n, m) = (self.group.modulus, target.modulus);
        if n % m != 0 || m % self.conductor() != 0 {
            return input(format!("character mod {n} does not factor through modulus {m}"));
        }
        let values = target
            .generators
            .iter()
            .map(|&g| {
                let x = (0..n / m).map(|k| g + k * m).find(|&x| gcd(x, n) == 1).unwrap();
                self.eval(x as i64)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DirichletChar { group: target.clone(), field: self.field.clone(), values })
    }

    fn check_same(&self, other: &DirichletChar) -> Result<()> {
        if self.group.modulus != other.group.modulus || *self.field != *other.field {
            return input("characters have different moduli or fields");
        }
        Ok(())
    }

    pub fn mul(&self, other: &DirichletChar) -> Result<DirichletChar> {
        self.check_same(other)?;
        let f = &self.field;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| f.mul(a, b)).collect();
        Ok(DirichletChar { group: self.group.clone(), field: f.clone(), values })
    }

    pub fn pow(&self, k: i64) -> DirichletChar {
        let f = &self.field;
        let values = self.values.iter().map(|v| f.pow_i64(v, k)).collect();
        DirichletChar { group: self.group.clone(), field: f.clone(), values }
    }

    /// Value-wise Frobenius, chi -> chi^p.
    pub fn frobenius(&self) -> DirichletChar {
        let f = &self.field;
        let values = self.values.iter().map(|v| f.frobenius(v)).collect();
        DirichletChar { group: self.group.clone(), field: f.clone(), values }
    }

    pub fn galois_orbit(&self) -> Vec<DirichletChar> {
        let mut out = vec![self.clone()];
        let mut c = self.frobenius();
        while &c != self {
            out.push(c.clone());
            c = c.frobenius();
        }
        out
    }

    /// Smallest s >= 1 with chi^(p^s) = chi. The stabilizer of the character
    /// in Gal(GF(p^r)/F_p) is generated by Frob^s and has order r / s.
    pub fn stabilizer_step(&self) -> usize {
        self.galois_orbit().len()
    }

    /// Order of the stabilizer subgroup.
    pub fn stabilizer_order(&self) -> usize {
        self.field.r() / self.stabilizer_step()
    }

    /// `chi[N;g1↦v1,g2↦v2]`.
    pub fn serialize(&self) -> String {
        let parts: Vec<String> = self
            .group
            .generators
            .iter()
            .zip(&self.values)
            .map(|(g, v)| format!("{g}↦{v}"))
            .collect();
        format!("chi[{};{}]", self.group.modulus, parts.join(","))
    }

    pub fn parse(s: &str, field: &Arc<ExtField>) -> Result<DirichletChar> {
        let bad = || Error::Parse(format!("bad character {s:?}"));
        let body = s.trim().strip_prefix("chi[").and_then(|b| b.strip_suffix(']')).ok_or_else(bad)?;
        let (n, rest) = body.split_once(';').ok_or_else(bad)?;
        let n: u64 = n.trim().parse().map_err(|_| bad())?;
        let group = unit_group(n)?;
        let mut entries: Vec<(u64, Vec<String>)> = Vec::new();
        for tok in rest.split(',').filter(|t| !t.trim().is_empty()) {
            if let Some((g, v)) = tok.split_once('↦') {
                entries.push((g.trim().parse().map_err(|_| bad())?, vec![v.trim().to_string()]));
            } else {
                entries.last_mut().ok_or_else(bad)?.1.push(tok.trim().to_string());
            }
        }
        let gens: Vec<u64> = entries.iter().map(|e| e.0).collect();
        if gens != group.generators {
            return parse(format!("generators {gens:?} do not match {:?}", group.generators));
        }
        let values = entries
            .iter()
            .map(|(_, v)| field.parse_element(&v.join(",")))
            .collect::<Result<Vec<_>>>()?;
        DirichletChar::new(group, field.clone(), values)
    }
}

/// All characters mod N with values in the field, sorted by serialization.
pub fn enumerate_chars(n: u64, field: &Arc<ExtField>) -> Result<Vec<DirichletChar>> {
    let group = unit_group(n)?;
    let q1 = field.order() - 1u32;
    let e = group.exponent();
    if &q1 % e != num_bigint::BigUint::from(0u32) {
        return input(format!(
            "exponent {e} of (Z/{n})^x does not divide |GF({}^{})^x|",
            field.p(),
            field.r()
        ));
    }
    let roots: Vec<FieldElement> = group.orders.iter().map(|&o| root_of_unity(field, o)).collect();
    let mut out = Vec::new();
    let mut exps = vec![0u64; roots.len()];
    loop {
        let values = roots.iter().zip(&exps).map(|(z, &a)| field.pow_u64(z, a)).collect();
        out.push(DirichletChar { group: group.clone(), field: field.clone(), values });
        let mut i = 0;
        loop {
            if i == exps.len() {
                out.sort_by_key(|c| c.values.clone());
                return Ok(out);
            }
            exps[i] += 1;
            if exps[i] < group.orders[i] {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

/// A primitive `o`-th root of unity; `o` must divide p^r - 1.
pub fn root_of_unity(field: &ExtField, o: u64) -> FieldElement {
    let q1 = field.order() - 1u32;
    let cof = &q1 / o;
    let x = field.generator();
    for c in 1..field.p() {
        let a = field.add(&x, &field.from_u64(c));
        let z = field.pow(&a, &cof);
        if field.element_order(&z, o) == o {
            return z;
        }
    }
    unreachable!("no primitive root of unity of order {o}")
}

/// One row of the bundled character basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisRow {
    pub name: String,
    pub modulus: u64,
    pub p: u64,
    pub order: u64,
    pub parity: Parity,
    /// (generator residue, integer value)
    pub definition: Vec<(u64, i64)>,
}

const BASIS_DATA: &str = include_str!("../data/characters.txt");

/// The bundled basis table.
pub fn basis_rows() -> Vec<BasisRow> {
    parse_basis(BASIS_DATA).expect("bundled character table parses")
}

pub fn parse_basis(text: &str) -> Result<Vec<BasisRow>> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('|').map(str::trim).collect();
        if cols.len() != 6 {
            return parse(format!("bad basis line {line:?}"));
        }
        let num = |s: &str| s.parse::<u64>().map_err(|_| Error::Parse(format!("bad number in {line:?}")));
        let parity = match cols[4] {
            "even" => Parity::Even,
            "odd" => Parity::Odd,
            _ => return parse(format!("bad parity in {line:?}")),
        };
        let definition = cols[5]
            .split_whitespace()
            .map(|d| {
                let (g, v) = d.split_once(':').ok_or_else(|| Error::Parse(format!("bad entry {d:?}")))?;
                Ok((num(g)?, v.parse::<i64>().map_err(|_| Error::Parse(format!("bad value {v:?}")))?))
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(BasisRow {
            name: cols[0].to_string(),
            modulus: num(cols[1])?,
            p: num(cols[2])?,
            order: num(cols[3])?,
            parity,
            definition,
        });
    }
    Ok(out)
}

impl BasisRow {
    /// Build the character over `field`. A row defined for another prime is
    /// accepted only when all its values are +1 or -1.
    pub fn build(&self, field: &Arc<ExtField>) -> Result<DirichletChar> {
        let group = unit_group(self.modulus)?;
        if field.p() != self.p && self.definition.iter().any(|&(_, v)| v != 1 && v != -1) {
            return input(format!(
                "{} is defined for p = {}; its values do not transfer to p = {}",
                self.name,
                self.p,
                field.p()
            ));
        }
        let gens: Vec<u64> = self.definition.iter().map(|d| d.0).collect();
        if gens != group.generators {
            return input(format!("{}: generators {gens:?} differ from {:?}", self.name, group.generators));
        }
        let values = self.definition.iter().map(|&(_, v)| field.from_i64(v)).collect();
        DirichletChar::new(group, field.clone(), values)
    }
}

/// The basis characters for modulus N over `field`.
pub fn basis_chars(n: u64, field: &Arc<ExtField>) -> Result<Vec<DirichletChar>> {
    let group = unit_group(n)?;
    let rows: Vec<BasisRow> = basis_rows().into_iter().filter(|r| r.modulus == n).collect();
    if rows.is_empty() {
        return input(format!("no bundled basis characters for N = {n}"));
    }
    let nontrivial = rows.iter().any(|r| r.order > 1);
    if nontrivial && (field.p() - 1) % group.exponent() != 0 {
        return input(format!(
            "exponent {} of (Z/{n})^x does not divide p - 1 = {}",
            group.exponent(),
            field.p() - 1
        ));
    }
    rows.iter().map(|r| r.build(field)).collect()
}

/// Named basis characters usable over a field, for parsing and printing
/// expressions such as `chi16_0*chi16_1^2`.
#[derive(Clone, Debug)]
pub struct CharNames {
    group: Arc<UnitGroup>,
    field: Arc<ExtField>,
    entries: Vec<NameEntry>,
}

/// `base^(step*k)` for k = 0, 1, ...; step is 1 except for rows defined at
/// another prime, which only transfer through their powers with values +-1.
#[derive(Clone, Debug)]
struct NameEntry {
    base: String,
    step: u64,
    chi: DirichletChar,
}

impl NameEntry {
    fn display(&self, k: u64) -> String {
        match self.step * k {
            1 => self.base.clone(),
            e => format!("{}^{e}", self.base),
        }
    }
}

/// The power `row^step` with step = order/2, when its values are +-1 in
/// the row's own prime field.
fn sign_power(row: &BasisRow, field: &Arc<ExtField>) -> Option<NameEntry> {
    if row.order % 2 != 0 {
        return None;
    }
    let step = row.order / 2;
    let pm = row.p as u128;
    let mut signs = Vec::new();
    for &(_, v) in &row.definition {
        let base = v.rem_euclid(row.p as i64) as u128;
        let mut acc = 1u128;
        for _ in 0..step {
            acc = acc * base % pm;
        }
        signs.push(match acc {
            1 => 1i64,
            a if a == pm - 1 => -1,
            _ => return None,
        });
    }
    let signed = BasisRow {
        definition: row.definition.iter().zip(&signs).map(|(&(g, _), &s)| (g, s)).collect(),
        p: field.p(),
        order: 2,
        ..row.clone()
    };
    let chi = signed.build(field).ok()?;
    Some(NameEntry { base: row.name.clone(), step, chi })
}

impl CharNames {
    /// Rows for modulus N that can be realized over `field`; the others are
    /// skipped.
    pub fn new(n: u64, field: &Arc<ExtField>) -> Result<CharNames> {
        let group = unit_group(n)?;
        let entries = basis_rows()
            .into_iter()
            .filter(|r| r.modulus == n && r.order > 1)
            .filter_map(|r| match r.build(field) {
                Ok(chi) => Some(NameEntry { base: r.name.clone(), step: 1, chi }),
                Err(_) => sign_power(&r, field),
            })
            .collect();
        Ok(CharNames { group, field: field.clone(), entries })
    }

    pub fn group(&self) -> &Arc<UnitGroup> {
        &self.group
    }

    pub fn field(&self) -> &Arc<ExtField> {
        &self.field
    }

    pub fn trivial(&self) -> DirichletChar {
        DirichletChar::trivial(self.group.clone(), self.field.clone())
    }

    /// Parse `1`, a product of `name` or `name^k` factors, or `chi[...]`.
    pub fn parse(&self, s: &str) -> Result<DirichletChar> {
        let s = s.trim();
        if s == "1" {
            return Ok(self.trivial());
        }
        if s.starts_with("chi[") {
            let c = DirichletChar::parse(s, &self.field)?;
            return c.lift(&self.group);
        }
        let mut acc = self.trivial();
        for factor in s.split('*') {
            let (name, k) = match factor.split_once('^') {
                Some((n, k)) => (n.trim(), k.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?),
                None => (factor.trim(), 1),
            };
            let e = self
                .entries
                .iter()
                .find(|e| e.base == name)
                .ok_or_else(|| Error::Parse(format!("unknown character {name:?} for modulus {}", self.group.modulus)))?;
            if k.rem_euclid(e.step as i64) != 0 {
                return parse(format!("{name}^{k} is not defined over {}", self.field.descriptor()));
            }
            acc = acc.mul(&e.chi.pow(k / e.step as i64))?;
        }
        Ok(acc)
    }

    /// Shortest product of basis powers equal to `chi` (exponents reduced
    /// into `[0, order)`, first match in lexicographic exponent order), or
    /// `None` for the trivial character. Falls back to `chi[...]`.
    pub fn name(&self, chi: &DirichletChar) -> Option<String> {
        let chi = if chi.modulus() == self.group.modulus {
            chi.clone()
        } else {
            chi.lift(&self.group).ok()?
        };
        if chi.is_trivial() {
            return None;
        }
        let orders: Vec<u64> = self.entries.iter().map(|e| e.chi.order()).collect();
        let mut exps = vec![0u64; orders.len()];
        loop {
            let mut i = 0;
            loop {
                if i == exps.len() {
                    return Some(chi.serialize());
                }
                exps[i] += 1;
                if exps[i] < orders[i] {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
            let cand = self
                .entries
                .iter()
                .zip(&exps)
                .fold(self.trivial(), |acc, (e, &k)| acc.mul(&e.chi.pow(k as i64)).unwrap());
            if cand == chi {
                let parts: Vec<String> = self
                    .entries
                    .iter()
                    .zip(&exps)
                    .filter(|(_, &k)| k > 0)
                    .map(|(e, &k)| e.display(k))
                    .collect();
                return Some(parts.join("*"));
            }
        }
    }
}
