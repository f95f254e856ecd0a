//! Classical newform records keyed by LMFDB-style labels, and their
//! reductions into GF(p^r).
//!
//! A record stores its Hecke eigenvalues as integer polynomials in a root
//! of `field_poly`. Reducing modulo a prime above p amounts to choosing a
//! root of `field_poly` in the finite field; each root gives one reduction.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer};

use crate::characters::{gcd, lcm, mult_order, unit_group, DirichletChar};
use crate::error::{Error, Result};
use crate::field::{is_prime, ExtField, FieldElement, PrimeModulus};
use crate::fppoly;
use crate::poly::{enlarge_r_error, root_report, Poly};

/// Highest schema version this loader understands.
pub const SCHEMA_VERSION: u32 = 1;

/// An integer of any size, read from a JSON number or a decimal string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigInteger(pub BigInt);

impl<'de> Deserialize<'de> for BigInteger {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let text = match serde_json::Value::deserialize(d)? {
            serde_json::Value::Number(n) => n.to_string(),
            serde_json::Value::String(s) => s,
            other => return Err(D::Error::custom(format!("expected an integer, found {other}"))),
        };
        text.trim()
            .parse::<BigInt>()
            .map(BigInteger)
            .map_err(|_| D::Error::custom(format!("{text:?} is not an integer")))
    }
}

fn residue(a: &BigInt, p: u64) -> u64 {
    let p = BigInt::from(p);
    (((a % &p) + &p) % &p).to_u64().unwrap()
}

#[derive(Clone, Debug, Deserialize)]
pub struct CharRecord {
    pub modulus: u64,
    #[serde(default)]
    pub order: Option<u64>,
    /// Generators of (Z/N)^x the exponents refer to. Defaults to the
    /// generators of [`unit_group`].
    #[serde(default)]
    pub gens: Option<Vec<u64>>,
    /// chi(gens[i]) = zeta^gen_values_order[i].
    pub gen_values_order: Vec<i64>,
    #[serde(default)]
    pub orbit: Option<String>,
}

#[derive(Deserialize)]
struct RawRecord {
    label: String,
    level: u64,
    weight: u32,
    #[serde(rename = "char")]
    nebentype: CharRecord,
    field_poly: Vec<BigInteger>,
    #[serde(default)]
    zeta: Option<Vec<BigInteger>>,
    #[serde(default)]
    zeta_den: Option<BigInteger>,
    ap: BTreeMap<String, Vec<BigInteger>>,
    #[serde(default)]
    ap_den: BTreeMap<String, BigInteger>,
}

#[derive(Deserialize)]
struct RawDocument {
    schema_version: u32,
    source_commit: String,
    #[serde(default)]
    source: Option<String>,
    #[serde(default)]
    ap_bound: Option<u64>,
    records: Vec<serde_json::Value>,
}

/// An element a_0 + a_1 t + ... of the coefficient field, divided by `den`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldValue {
    pub num: Vec<BigInt>,
    pub den: BigInt,
}

impl FieldValue {
    fn is_integer_constant(&self, c: i64) -> bool {
        self.den.is_one()
            && self.num.iter().enumerate().all(|(i, a)| {
                if i == 0 {
                    *a == BigInt::from(c)
                } else {
                    a.is_zero()
                }
            })
    }
}

#[derive(Clone, Debug)]
pub struct NewformRecord {
    pub label: String,
    pub level: u64,
    pub weight: u32,
    pub nebentype: CharRecord,
    /// Monic, ascending coefficients.
    pub field_poly: Vec<BigInt>,
    /// A root of unity of order `nebentype.order` in the coefficient field.
    pub zeta: FieldValue,
    pub ap: BTreeMap<u64, FieldValue>,
}

fn schema<T>(label: &str, msg: impl Into<String>) -> Result<T> {
    Err(Error::Schema { label: label.to_string(), msg: msg.into() })
}

impl NewformRecord {
    fn from_raw(raw: RawRecord, ap_bound: u64) -> Result<NewformRecord> {
        let label = raw.label.clone();
        let parts: Vec<&str> = label.split('.').collect();
        if parts.len() != 4 || parts[2].is_empty() || parts[3].is_empty() {
            return schema(&label, "label: expected N.k.c.x");
        }
        if parts[0] != raw.level.to_string() {
            return schema(&label, "level: does not match the label");
        }
        if parts[1] != raw.weight.to_string() {
            return schema(&label, "weight: does not match the label");
        }
        if raw.level == 0 || raw.weight == 0 {
            return schema(&label, "level and weight must be positive");
        }
        if raw.nebentype.modulus != raw.level {
            return schema(&label, "char.modulus: must equal the level");
        }
        let group = unit_group(raw.level).map_err(|e| Error::Schema { label: label.clone(), msg: e.to_string() })?;
        if let Some(g) = &raw.nebentype.gens {
            if g.as_slice() != group.generators() {
                return schema(
                    &label,
                    format!("char.gens: expected {:?}, found {:?}", group.generators(), g),
                );
            }
        }
        if raw.nebentype.gen_values_order.len() != group.generators().len() {
            return schema(&label, "char.gen_values_order: one exponent per generator required");
        }

        let field_poly: Vec<BigInt> = raw.field_poly.into_iter().map(|b| b.0).collect();
        if field_poly.len() < 2 || !field_poly.last().unwrap().is_one() {
            return schema(&label, "field_poly: must be monic of positive degree");
        }
        let d = field_poly.len() - 1;
        let value = |field: &str, num: Vec<BigInteger>, den: Option<BigInteger>| -> Result<FieldValue> {
            if num.len() > d {
                return schema(&label, format!("{field}: more than {d} coefficients"));
            }
            let den = den.map_or_else(BigInt::one, |b| b.0);
            if den.is_zero() {
                return schema(&label, format!("{field}: zero denominator"));
            }
            Ok(FieldValue { num: num.into_iter().map(|b| b.0).collect(), den })
        };

        let order = raw.nebentype.order.unwrap_or(1);
        let zeta = match raw.zeta {
            Some(z) => value("zeta", z, raw.zeta_den)?,
            None if order <= 2 => {
                FieldValue { num: vec![BigInt::from(if order == 2 { -1 } else { 1 })], den: BigInt::one() }
            }
            None => return schema(&label, "zeta: required for nebentype of order above 2"),
        };
        if order <= 2 && !zeta.is_integer_constant(if order == 2 { -1 } else { 1 }) {
            return schema(&label, "zeta: must be 1 or -1 for nebentype of order at most 2");
        }

        let mut ap = BTreeMap::new();
        let mut dens = raw.ap_den;
        for (key, num) in raw.ap {
            let l: u64 = key
                .parse()
                .ok()
                .filter(|&l| is_prime(l))
                .ok_or_else(|| Error::Schema { label: label.clone(), msg: format!("ap: key {key:?} is not a prime") })?;
            let den = dens.remove(&key);
            ap.insert(l, value(&format!("ap.{key}"), num, den)?);
        }
        if let Some(key) = dens.keys().next() {
            return schema(&label, format!("ap_den: {key} has no matching ap entry"));
        }
        for l in (2..=ap_bound).filter(|&l| is_prime(l) && raw.level % l != 0) {
            if !ap.contains_key(&l) {
                return schema(&label, format!("ap: missing a_{l}"));
            }
        }

        Ok(NewformRecord {
            label,
            level: raw.level,
            weight: raw.weight,
            nebentype: raw.nebentype,
            field_poly,
            zeta,
            ap,
        })
    }

    pub fn degree(&self) -> usize {
        self.field_poly.len() - 1
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    /// The defining polynomial reduced mod p.
    pub fn field_poly_mod(&self, p: u64) -> Vec<u64> {
        // monic, so the leading coefficient survives
        self.field_poly.iter().map(|a| residue(a, p)).collect()
    }

    /// Degrees of the irreducible factors of `field_poly` mod p, with
    /// multiplicity, sorted.
    pub fn factor_degrees(&self, p: u64) -> Vec<usize> {
        let mut rng = ChaCha8Rng::seed_from_u64(p);
        let mut degs: Vec<usize> = fppoly::factor(&self.field_poly_mod(p), p, &mut rng)
            .iter()
            .flat_map(|(g, e)| std::iter::repeat(g.len() - 1).take(*e))
            .collect();
        degs.sort_unstable();
        degs
    }

    /// Heuristic irreducibility check over Q. Each prime not dividing the
    /// discriminant restricts the possible degrees of a rational factor to
    /// subset sums of the factor degrees mod that prime; if only 0 and the
    /// full degree survive, the polynomial is irreducible.
    pub fn irreducibility(&self, primes: &[u64]) -> Irreducibility {
        let d = self.degree();
        let mut possible = vec![true; d + 1];
        for &p in primes {
            let f = self.field_poly_mod(p);
            if f.len() != d + 1 {
                continue;
            }
            let sq = fppoly::squarefree(&f, p);
            if sq.len() != 1 || sq[0].1 != 1 {
                continue;
            }
            let mut sums = vec![false; d + 1];
            sums[0] = true;
            for k in self.factor_degrees(p) {
                for s in (k..=d).rev() {
                    sums[s] |= sums[s - k];
                }
            }
            for (x, s) in possible.iter_mut().zip(&sums) {
                *x &= *s;
            }
            if d > 1 && possible[1..d].iter().all(|x| !x) {
                return Irreducibility::Certified;
            }
        }
        if d == 1 {
            Irreducibility::Certified
        } else {
            Irreducibility::Inconclusive
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Certified,
    /// Every tested prime allowed a proper factor. Polynomials with
    /// non-cyclic Galois group always end up here.
    Inconclusive,
}

/// Primes used for the irreducibility check.
pub const CERTIFICATE_PRIMES: [u64; 12] = [101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157];

/// A validated collection of newform records.
#[derive(Clone, Debug, Default)]
pub struct NewformStore {
    pub schema_version: u32,
    pub source: Option<String>,
    pub source_commit: String,
    pub ap_bound: u64,
    records: Vec<Arc<NewformRecord>>,
    by_label: HashMap<String, usize>,
}

impl NewformStore {
    pub fn load(path: impl AsRef<Path>) -> Result<NewformStore> {
        NewformStore::from_json(&std::fs::read_to_string(path)?)
    }

    /// Parse and validate a fixture document. Blank input gives an empty store.
    pub fn from_json(text: &str) -> Result<NewformStore> {
        if text.trim().is_empty() {
            return Ok(NewformStore::default());
        }
        let doc: RawDocument = serde_json::from_str(text)?;
        if doc.schema_version == 0 || doc.schema_version > SCHEMA_VERSION {
            return Err(Error::Parse(format!("unsupported schema_version {}", doc.schema_version)));
        }
        if doc.source_commit.trim().is_empty() {
            return Err(Error::Parse("source_commit must not be empty".into()));
        }
        let ap_bound = doc.ap_bound.unwrap_or(11);
        let mut store = NewformStore {
            schema_version: doc.schema_version,
            source: doc.source,
            source_commit: doc.source_commit,
            ap_bound,
            ..Default::default()
        };
        for (i, v) in doc.records.into_iter().enumerate() {
            let label = v
                .get("label")
                .and_then(|l| l.as_str())
                .map_or_else(|| format!("#{i}"), str::to_string);
            let raw: RawRecord =
                serde_json::from_value(v).map_err(|e| Error::Schema { label: label.clone(), msg: e.to_string() })?;
            let rec = NewformRecord::from_raw(raw, ap_bound)?;
            if store.by_label.contains_key(&rec.label) {
                return schema(&rec.label, "label: duplicate");
            }
            store.by_label.insert(rec.label.clone(), store.records.len());
            store.records.push(Arc::new(rec));
        }
        Ok(store)
    }

    /// The fixture bundled with the crate.
    pub fn bundled() -> Result<NewformStore> {
        NewformStore::from_json(include_str!("../data/newforms.json"))
    }

    pub fn records(&self) -> &[Arc<NewformRecord>] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn get(&self, label: &str) -> Option<&Arc<NewformRecord>> {
        self.by_label.get(label).map(|&i| &self.records[i])
    }

    /// Records whose level divides `n`.
    pub fn dividing(&self, n: u64) -> impl Iterator<Item = &Arc<NewformRecord>> + '_ {
        self.records.iter().filter(move |r| n % r.level == 0)
    }
}

/// A newform reduced modulo one prime above p.
#[derive(Clone, Debug)]
pub struct ReducedNewform {
    pub record: Arc<NewformRecord>,
    /// Position of the chosen root among the sorted distinct roots.
    pub root_index: usize,
    pub root: FieldElement,
    pub a_mod: BTreeMap<u64, FieldElement>,
    /// The nebentype, as a character mod the form's level.
    pub nebentype: DirichletChar,
}

impl ReducedNewform {
    pub fn label(&self) -> &str {
        &self.record.label
    }

    pub fn weight(&self) -> u32 {
        self.record.weight
    }

    pub fn a(&self, l: u64) -> Option<&FieldElement> {
        self.a_mod.get(&l)
    }
}

fn eval_value(f: &ExtField, v: &FieldValue, root: &FieldElement, what: &str, label: &str) -> Result<FieldElement> {
    let p = f.p();
    let den = residue(&v.den, p);
    if den == 0 {
        return Err(Error::Input(format!("{label}: denominator of {what} is divisible by p = {p}")));
    }
    let mut acc = f.zero();
    for a in v.num.iter().rev() {
        acc = f.add(&f.mul(&acc, root), &f.from_u64(residue(a, p)));
    }
    Ok(f.mul(&acc, &f.inv(&f.from_u64(den)).unwrap()))
}

/// All reductions of `record` into `field`, one per distinct root of
/// `field_poly` there.
pub fn reduce(record: &Arc<NewformRecord>, field: &Arc<ExtField>) -> Result<Vec<ReducedNewform>> {
    let p = field.p();
    let fp = record.field_poly_mod(p);
    let report = root_report(field, &Poly::from_fp(field, &fp))?;
    let mut roots = report.roots;
    roots.dedup();
    if roots.is_empty() {
        return Err(enlarge_r_error(field, &format!("field_poly of {}", record.label), &record.factor_degrees(p)));
    }
    let group = unit_group(record.level)?;
    let mut out = Vec::with_capacity(roots.len());
    for (root_index, root) in roots.into_iter().enumerate() {
        let mut a_mod = BTreeMap::new();
        for (&l, v) in &record.ap {
            a_mod.insert(l, eval_value(field, v, &root, &format!("a_{l}"), &record.label)?);
        }
        let zeta = eval_value(field, &record.zeta, &root, "zeta", &record.label)?;
        if zeta.is_zero() {
            return Err(Error::Input(format!("{}: zeta reduces to 0", record.label)));
        }
        let values = record.nebentype.gen_values_order.iter().map(|&e| field.pow_i64(&zeta, e)).collect();
        let nebentype = DirichletChar::new(group.clone(), field.clone(), values)?;
        out.push(ReducedNewform { record: record.clone(), root_index, root, a_mod, nebentype });
    }
    Ok(out)
}

/// Smallest r such that every record has a reduction into GF(p^r) and the
/// values of characters mod n are defined there.
pub fn choose_r<'a>(p: PrimeModulus, records: impl IntoIterator<Item = &'a NewformRecord>, n: u64) -> Result<usize> {
    let p = p.get();
    let e = unit_group(n)?.exponent().max(1);
    if gcd(p, e) != 1 {
        return Err(Error::Input(format!("p = {p} divides the exponent of (Z/{n})^x")));
    }
    let mut r = mult_order(p, e) as usize;
    for rec in records {
        let min = rec.factor_degrees(p).first().copied().unwrap_or(1);
        r = lcm(r as u64, min as u64) as usize;
    }
    Ok(r)
}
