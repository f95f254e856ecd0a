//! Reducible 4-dimensional Galois representations, known only through the
//! characteristic polynomials of Frobenius elements.
//!
//! Conventions: the cyclotomic character sends Frob_l to l, a character
//! chi eps^w contributes `1 - chi(l) l^w X` and a twisted newform
//! chi eps^w sigma_f of weight k contributes
//! `1 - chi(l) l^w a_l X + chi(l)^2 l^(2w) eps_f(l) l^(k-1) X^2`.
//! A rep matches Hecke data when
//! `det(1 - rho(Frob_l) X) = sum_k (-1)^k l^(k(k-1)/2) a(l,k) X^k`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::characters::{CharNames, DirichletChar};
use crate::eigen::{Eigensystem, Label};
use crate::error::{input, parse, Error, Result};
use crate::field::{ExtField, FieldElement};
use crate::newform::ReducedNewform;
use crate::poly::Poly;

/// The setting a representation lives in: level N, coefficient degree g
/// and nebentype eta (a character mod N over the working field).
#[derive(Clone, Debug)]
pub struct RepContext {
    pub g: u32,
    pub eta: DirichletChar,
}

impl RepContext {
    pub fn new(g: u32, eta: DirichletChar) -> Arc<RepContext> {
        Arc::new(RepContext { g, eta })
    }

    pub fn level(&self) -> u64 {
        self.eta.modulus()
    }

    pub fn field(&self) -> &Arc<ExtField> {
        self.eta.field()
    }

    /// Primes l for which Frobenius polynomials make sense.
    pub fn is_good_prime(&self, l: u64) -> bool {
        l % self.field().p() != 0 && self.level() % l != 0
    }

    fn check_prime(&self, l: u64) -> Result<()> {
        if l < 2 || !crate::field::is_prime(l) {
            return input(format!("{l} is not prime"));
        }
        if !self.is_good_prime(l) {
            return input(format!("l = {l} divides pN"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub enum Constituent {
    Char { chi: DirichletChar, w: u32 },
    Twist { form: ReducedNewform, chi: DirichletChar, w: u32 },
}

impl Constituent {
    pub fn dimension(&self) -> usize {
        match self {
            Constituent::Char { .. } => 1,
            Constituent::Twist { .. } => 2,
        }
    }

    pub fn chi(&self) -> &DirichletChar {
        match self {
            Constituent::Char { chi, .. } | Constituent::Twist { chi, .. } => chi,
        }
    }

    pub fn w(&self) -> u32 {
        match self {
            Constituent::Char { w, .. } | Constituent::Twist { w, .. } => *w,
        }
    }

    pub fn form(&self) -> Option<&ReducedNewform> {
        match self {
            Constituent::Char { .. } => None,
            Constituent::Twist { form, .. } => Some(form),
        }
    }

    /// Hodge-Tate weights: `[w]` or `[w, w + k - 1]`.
    pub fn hodge_tate(&self) -> Vec<u32> {
        match self {
            Constituent::Char { w, .. } => vec![*w],
            Constituent::Twist { form, w, .. } => vec![*w, w + form.weight() - 1],
        }
    }

    /// Eigenvalues of complex conjugation.
    pub fn oddness(&self) -> Vec<i8> {
        let t = (self.chi().sign() * if self.w() % 2 == 0 { 1 } else { -1 }) as i8;
        match self {
            Constituent::Char { .. } => vec![t],
            Constituent::Twist { .. } => vec![t, -t],
        }
    }

    /// `det(1 - c(Frob_l) X)`, ascending in X. The caller checks l.
    fn frob_poly(&self, f: &ExtField, l: u64) -> Result<Poly> {
        let chi_l = f.mul(&self.chi().eval(l as i64)?, &f.pow_u64(&f.from_u64(l), self.w() as u64));
        match self {
            Constituent::Char { .. } => Ok(Poly::new(vec![f.one(), f.neg(&chi_l)])),
            Constituent::Twist { form, .. } => {
                let a = form
                    .a(l)
                    .ok_or_else(|| Error::Input(format!("no a_{l} for {}", form.label())))?;
                let eps = form.nebentype.eval(l as i64)?;
                let det = f.mul(
                    &f.mul(&f.square(&chi_l), &eps),
                    &f.pow_u64(&f.from_u64(l), form.weight() as u64 - 1),
                );
                Ok(Poly::new(vec![f.one(), f.neg(&f.mul(&chi_l, a)), det]))
            }
        }
    }
}

/// `det(1 - c(Frob_l) X)` for a single constituent, l not dividing pN.
pub fn frob_charpoly(c: &Constituent, l: u64) -> Result<Poly> {
    let f = c.chi().field().clone();
    if l % f.p() == 0 || c.chi().modulus() % l == 0 {
        return input(format!("l = {l} divides pN"));
    }
    if let Some(form) = c.form() {
        if form.record.level % l == 0 {
            return input(format!("l = {l} divides the level of {}", form.label()));
        }
    }
    c.frob_poly(&f, l)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PatternType {
    Type1,
    Type2,
    Type3,
    Type4,
    Type5,
    Other,
}

impl fmt::Display for PatternType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PatternType::Type1 => "type1",
            PatternType::Type2 => "type2",
            PatternType::Type3 => "type3",
            PatternType::Type4 => "type4",
            PatternType::Type5 => "type5",
            PatternType::Other => "other",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct GaloisRep {
    ctx: Arc<RepContext>,
    constituents: Vec<Constituent>,
}

impl GaloisRep {
    /// Validates dimensions and ranges and puts the constituents in
    /// canonical order: characters by w, then the newform twist.
    pub fn new(ctx: Arc<RepContext>, mut constituents: Vec<Constituent>) -> Result<GaloisRep> {
        let n = ctx.level();
        let g = ctx.g;
        let dim: usize = constituents.iter().map(Constituent::dimension).sum();
        if dim != 4 {
            return input(format!("constituent dimensions sum to {dim}, not 4"));
        }
        if constituents.iter().filter(|c| c.form().is_some()).count() > 1 {
            return input("at most one newform constituent is allowed");
        }
        for c in &mut constituents {
            if c.w() > g + 3 {
                return input(format!("cyclotomic exponent {} exceeds g + 3 = {}", c.w(), g + 3));
            }
            if c.chi().field() != ctx.field() {
                return input("constituent character lives over a different field");
            }
            let lifted = match c.chi().modulus() {
                m if m == n => None,
                m if n % m == 0 => Some(c.chi().lift(ctx.eta.group())?),
                m => return input(format!("character modulus {m} does not divide N = {n}")),
            };
            if let Some(x) = lifted {
                match c {
                    Constituent::Char { chi, .. } | Constituent::Twist { chi, .. } => *chi = x,
                }
            }
            if let Some(form) = c.form() {
                let k = form.weight();
                if !(2..=g + 4).contains(&k) {
                    return input(format!("newform weight {k} outside 2..={}", g + 4));
                }
                if n % form.record.level != 0 {
                    return input(format!("newform level {} does not divide N = {n}", form.record.level));
                }
                if form.nebentype.field() != ctx.field() {
                    return input("newform reduced into a different field");
                }
            }
        }
        constituents.sort_by(|a, b| {
            let key = |c: &Constituent| (c.form().is_some(), c.w());
            key(a).cmp(&key(b)).then_with(|| a.chi().values().cmp(b.chi().values()))
        });
        Ok(GaloisRep { ctx, constituents })
    }

    pub fn context(&self) -> &Arc<RepContext> {
        &self.ctx
    }

    pub fn constituents(&self) -> &[Constituent] {
        &self.constituents
    }

    pub fn newform(&self) -> Option<&ReducedNewform> {
        self.constituents.iter().find_map(Constituent::form)
    }

    /// `det(1 - rho(Frob_l) X)`, of degree 4.
    pub fn charpoly(&self, l: u64) -> Result<Poly> {
        self.ctx.check_prime(l)?;
        let f = self.ctx.field();
        let mut acc = Poly::constant(f.one());
        for c in &self.constituents {
            acc = acc.mul(f, &c.frob_poly(f, l)?);
        }
        Ok(acc)
    }

    /// Eigenvalues a(l, 0..=4) of the Hecke operators T(l, k) predicted by
    /// the rep.
    pub fn hecke_values(&self, l: u64) -> Result<[FieldElement; 5]> {
        let f = self.ctx.field();
        let cp = self.charpoly(l)?;
        let l_inv = f.inv(&f.from_u64(l)).unwrap();
        Ok(std::array::from_fn(|k| {
            let e = cp.coeff(f, k);
            let e = if k % 2 == 1 { f.neg(&e) } else { e };
            f.mul(&e, &f.pow_u64(&l_inv, (k * (k.saturating_sub(1)) / 2) as u64))
        }))
    }

    /// Predicted eigenvalues at the given labels (k in 0..=4).
    pub fn hecke_data(&self, labels: &[Label]) -> Result<HeckeData> {
        let mut per_l: BTreeMap<u64, [FieldElement; 5]> = BTreeMap::new();
        let mut values = BTreeMap::new();
        for &lab in labels {
            if lab.k > 4 {
                return input(format!("no operator {lab}"));
            }
            if !per_l.contains_key(&lab.l) {
                per_l.insert(lab.l, self.hecke_values(lab.l)?);
            }
            values.insert(lab, per_l[&lab.l][lab.k as usize].clone());
        }
        Ok(HeckeData { values })
    }

    /// True when the rep predicts exactly `data` at every supplied label.
    pub fn matches(&self, data: &HeckeData) -> Result<bool> {
        let mut cache: BTreeMap<u64, [FieldElement; 5]> = BTreeMap::new();
        for (lab, v) in &data.values {
            if lab.k > 4 {
                return input(format!("no operator {lab}"));
            }
            if !cache.contains_key(&lab.l) {
                cache.insert(lab.l, self.hecke_values(lab.l)?);
            }
            if &cache[&lab.l][lab.k as usize] != v {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn hodge_tate(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.constituents.iter().flat_map(Constituent::hodge_tate).collect();
        v.sort_unstable();
        v
    }

    /// Sorted Hodge-Tate weights equal `[0, 1, 2, g + 3]`.
    pub fn ht_check(&self) -> bool {
        self.hodge_tate() == [0, 1, 2, self.ctx.g + 3]
    }

    /// X^4 coefficient equals eta(l) l^(g+6) at every good prime in `primes`.
    pub fn det_check(&self, primes: &[u64]) -> Result<bool> {
        let f = self.ctx.field();
        for &l in primes.iter().filter(|&&l| self.ctx.is_good_prime(l)) {
            let top = self.charpoly(l)?.coeff(f, 4);
            let want = f.mul(&self.ctx.eta.eval(l as i64)?, &f.pow_u64(&f.from_u64(l), self.ctx.g as u64 + 6));
            if top != want {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Determinant character compared symbolically: the product of the
    /// character parts (newform nebentype included) equals eta, and the
    /// cyclotomic exponents add up to g + 6.
    pub fn det_character_check(&self) -> Result<bool> {
        let mut acc = DirichletChar::trivial(self.ctx.eta.group().clone(), self.ctx.field().clone());
        let mut total = 0u32;
        for c in &self.constituents {
            match c {
                Constituent::Char { chi, w } => {
                    acc = acc.mul(chi)?;
                    total += w;
                }
                Constituent::Twist { form, chi, w } => {
                    acc = acc.mul(&chi.pow(2))?.mul(&form.nebentype.lift(self.ctx.eta.group())?)?;
                    total += 2 * w + form.weight() - 1;
                }
            }
        }
        Ok(acc == self.ctx.eta && total == self.ctx.g + 6)
    }

    pub fn oddness(&self) -> Vec<i8> {
        let mut v: Vec<i8> = self.constituents.iter().flat_map(Constituent::oddness).collect();
        v.sort_unstable();
        v
    }

    pub fn odd_check(&self) -> bool {
        self.oddness() == [-1, -1, 1, 1]
    }

    pub fn classify(&self) -> PatternType {
        let g = self.ctx.g;
        let chars: Vec<(u32, &DirichletChar)> = self
            .constituents
            .iter()
            .filter(|c| c.form().is_none())
            .map(|c| (c.w(), c.chi()))
            .collect();
        let ws: Vec<u32> = chars.iter().map(|c| c.0).collect();
        let trivial_at = |w: u32| chars.iter().any(|&(x, c)| x == w && c.is_trivial());
        // exactly one of the characters at w = 0 and w = 2 is nontrivial
        let one_of_0_2 = || {
            let nontriv = chars.iter().filter(|&&(x, c)| (x == 0 || x == 2) && !c.is_trivial()).count();
            nontriv == 1
        };
        match self.newform() {
            None => {
                if ws != [0, 1, 2, g + 3] || !trivial_at(1) || !one_of_0_2() {
                    return PatternType::Other;
                }
                if trivial_at(g + 3) {
                    PatternType::Type1
                } else {
                    PatternType::Type2
                }
            }
            Some(form) => {
                let twist = self.constituents.last().unwrap();
                if !twist.chi().is_trivial() {
                    return PatternType::Other;
                }
                let k = form.weight();
                match (twist.w(), ws.as_slice()) {
                    (2, [0, 1]) if k == g + 2 && trivial_at(0) && trivial_at(1) => PatternType::Type3,
                    (0, [1, x]) if *x == g + 3 && k == 3 && trivial_at(1) && trivial_at(g + 3) => {
                        PatternType::Type4
                    }
                    (1, [0, 2]) if k == g + 3 && one_of_0_2() => PatternType::Type5,
                    _ => PatternType::Other,
                }
            }
        }
    }

    /// The textual form, without instantiation details.
    pub fn spec(&self) -> RepSpec {
        RepSpec {
            terms: self
                .constituents
                .iter()
                .map(|c| TermSpec { chi: c.chi().clone(), w: c.w(), form: c.form().map(|f| f.label().to_string()) })
                .collect(),
        }
    }

    pub fn to_text(&self, names: &CharNames) -> String {
        self.spec().to_text(names)
    }
}

/// Hecke eigenvalues a(l, k) at a set of labels (the computed set).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HeckeData {
    pub values: BTreeMap<Label, FieldElement>,
}

impl HeckeData {
    pub fn from_eigensystem(e: &Eigensystem) -> HeckeData {
        HeckeData { values: e.values.clone() }
    }

    pub fn labels(&self) -> Vec<Label> {
        self.values.keys().copied().collect()
    }

    /// Primes appearing in the computed set.
    pub fn primes(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.values.keys().map(|l| l.l).collect();
        v.dedup();
        v
    }

    /// a(l,0) = 1 and a(l,4) = eta(l) l^g wherever these are present.
    pub fn check_normalization(&self, ctx: &RepContext) -> Result<()> {
        let f = ctx.field();
        for (lab, v) in &self.values {
            let want = match lab.k {
                0 => f.one(),
                4 => f.mul(&ctx.eta.eval(lab.l as i64)?, &f.pow_u64(&f.from_u64(lab.l), ctx.g as u64)),
                _ => continue,
            };
            if *v != want {
                return input(format!("{lab} should be {want}, found {v}"));
            }
        }
        Ok(())
    }
}

/// One summand of a rep before its newform (if any) is reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermSpec {
    pub chi: DirichletChar,
    pub w: u32,
    pub form: Option<String>,
}

/// A rep as written, e.g. `chi3*e^0 + e^1 + e^2 + e^4` or
/// `e^0 + e^1 + e^2*s[3.8.a.a]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepSpec {
    pub terms: Vec<TermSpec>,
}

impl RepSpec {
    pub fn parse(text: &str, names: &CharNames) -> Result<RepSpec> {
        let mut terms = Vec::new();
        for term in text.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return parse(format!("empty summand in {text:?}"));
            }
            let mut w = None;
            let mut form = None;
            let mut chi_parts = Vec::new();
            for factor in split_factors(term) {
                if let Some(e) = factor.strip_prefix("e^") {
                    let e: u32 = e.parse().map_err(|_| Error::Parse(format!("bad exponent in {term:?}")))?;
                    if w.replace(e).is_some() {
                        return parse(format!("two cyclotomic factors in {term:?}"));
                    }
                } else if let Some(label) = factor.strip_prefix("s[").and_then(|s| s.strip_suffix(']')) {
                    if form.replace(label.to_string()).is_some() {
                        return parse(format!("two newforms in {term:?}"));
                    }
                } else {
                    chi_parts.push(factor);
                }
            }
            let w = w.ok_or_else(|| Error::Parse(format!("missing e^w in {term:?}")))?;
            let chi = if chi_parts.is_empty() { names.trivial() } else { names.parse(&chi_parts.join("*"))? };
            terms.push(TermSpec { chi, w, form });
        }
        Ok(RepSpec { terms })
    }

    /// Canonical text: characters by w, then the newform summand.
    pub fn to_text(&self, names: &CharNames) -> String {
        let mut terms: Vec<&TermSpec> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            (a.form.is_some(), a.w).cmp(&(b.form.is_some(), b.w)).then_with(|| a.chi.values().cmp(b.chi.values()))
        });
        let parts: Vec<String> = terms
            .iter()
            .map(|t| {
                let mut s = String::new();
                if let Some(n) = names.name(&t.chi) {
                    s.push_str(&n);
                    s.push('*');
                }
                s.push_str(&format!("e^{}", t.w));
                if let Some(l) = &t.form {
                    s.push_str(&format!("*s[{l}]"));
                }
                s
            })
            .collect();
        parts.join(" + ")
    }

    pub fn newform_label(&self) -> Option<&str> {
        self.terms.iter().find_map(|t| t.form.as_deref())
    }

    /// Build the rep using `form` for the newform summand, if there is one.
    pub fn instantiate(&self, ctx: &Arc<RepContext>, form: Option<&ReducedNewform>) -> Result<GaloisRep> {
        let mut cs = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            cs.push(match &t.form {
                None => Constituent::Char { chi: t.chi.clone(), w: t.w },
                Some(label) => {
                    let form = form.ok_or_else(|| Error::Input(format!("no reduction supplied for {label}")))?;
                    if form.label() != label {
                        return input(format!("expected a reduction of {label}, got {}", form.label()));
                    }
                    Constituent::Twist { form: form.clone(), chi: t.chi.clone(), w: t.w }
                }
            });
        }
        GaloisRep::new(ctx.clone(), cs)
    }
}

/// Split on `*` outside brackets, so `chi[12;7↦1,5↦-1]` stays whole.
fn split_factors(term: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in term.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            '*' if depth == 0 => {
                out.push(term[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(term[start..].trim());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::newform::{reduce, NewformStore};

    fn ctx(n: u64, g: u32, p: u64, eta: &str) -> (Arc<RepContext>, CharNames) {
        let f = make_field(p, 1).unwrap();
        let names = CharNames::new(n, &f).unwrap();
        let eta = names.parse(eta).unwrap();
        (RepContext::new(g, eta), names)
    }

    fn rep(text: &str, c: &Arc<RepContext>, names: &CharNames) -> GaloisRep {
        RepSpec::parse(text, names).unwrap().instantiate(c, None).unwrap()
    }

    fn delta(f: &Arc<ExtField>) -> ReducedNewform {
        let doc = r#"{"schema_version":1,"source_commit":"test","records":[{"label":"1.12.a.a","level":1,"weight":12,
            "char":{"modulus":1,"order":1,"gen_values_order":[]},"field_poly":[0,1],
            "ap":{"2":[-24],"3":[252],"5":[4830],"7":[-16744],"11":[534612]}}]}"#;
        let store = NewformStore::from_json(doc).unwrap();
        reduce(store.get("1.12.a.a").unwrap(), f).unwrap().remove(0)
    }

    #[test]
    fn character_polynomials() {
        let (c, names) = ctx(3, 1, 12379, "chi3");
        let f = c.field().clone();
        let triv = Constituent::Char { chi: names.trivial(), w: 0 };
        for l in [2, 5, 7, 11] {
            assert_eq!(frob_charpoly(&triv, l).unwrap(), Poly::new(vec![f.one(), f.from_i64(-1)]));
        }
        let top = Constituent::Char { chi: names.trivial(), w: 4 };
        assert_eq!(frob_charpoly(&top, 2).unwrap(), Poly::new(vec![f.one(), f.from_i64(-16)]));
        assert!(frob_charpoly(&top, 3).is_err());
    }

    #[test]
    fn four_characters_at_two() {
        let (c, names) = ctx(3, 1, 12379, "chi3");
        let f = c.field().clone();
        let r = rep("e^0 + e^1 + chi3*e^2 + e^4", &c, &names);
        let h = r.hecke_values(2).unwrap();
        assert_eq!(h[0], f.one());
        assert_eq!(h[1], f.from_i64(15));
        // X^4 coefficient chi3(2) 2^7 and a(2,4) = eta(2) 2^g
        assert_eq!(r.charpoly(2).unwrap().coeff(&f, 4), f.from_i64(-128));
        assert_eq!(h[4], f.from_i64(-2));
        assert!(r.det_check(&[2, 5, 7, 11]).unwrap());
        assert!(r.det_character_check().unwrap());
        assert!(r.ht_check());
        assert_eq!(r.oddness(), vec![-1, -1, 1, 1]);
        assert_eq!(r.classify(), PatternType::Type1);
        let r2 = rep("chi3*e^0 + e^1 + e^2 + e^4", &c, &names);
        assert_eq!(r2.oddness(), vec![-1, -1, 1, 1]);
    }

    #[test]
    fn elementary_symmetric_trace() {
        let (c, names) = ctx(1, 3, 12379, "1");
        let f = c.field().clone();
        let r = rep("e^0 + e^1 + e^2 + e^6", &c, &names);
        for l in [2u64, 3, 5, 7, 11] {
            let x1 = r.charpoly(l).unwrap().coeff(&f, 1);
            assert_eq!(x1, f.neg(&f.from_u64(1 + l + l * l + l.pow(6))));
        }
        assert_eq!(r.classify(), PatternType::Other);
        assert!(!rep("e^0 + e^1 + e^2 + e^5", &c, &names).ht_check());
    }

    #[test]
    fn delta_twist() {
        let (c, names) = ctx(1, 10, 12379, "1");
        let f = c.field().clone();
        let d = delta(&f);
        let tw = Constituent::Twist { form: d.clone(), chi: names.trivial(), w: 2 };
        // (1 - 4 a_2 X + 2^4 2^11 X^2) with a_2 = -24
        assert_eq!(
            frob_charpoly(&tw, 2).unwrap(),
            Poly::new(vec![f.one(), f.from_i64(96), f.from_i64(1 << 15)])
        );
        let r = RepSpec::parse("e^0 + e^1 + e^2*s[1.12.a.a]", &names).unwrap().instantiate(&c, Some(&d)).unwrap();
        // (1 - X)(1 - 2X)(1 + 96X + 2^15 X^2), expanded by hand
        let cp: Vec<FieldElement> = [1, 93, 32482, -98112, 65536].iter().map(|&x| f.from_i64(x)).collect();
        assert_eq!(r.charpoly(2).unwrap(), Poly::new(cp));
        // divided by 2^(k(k-1)/2) after the sign flip; a(2,4) = 2^10
        let want: Vec<FieldElement> = [1, -93, 16241, 12264, 1024].iter().map(|&x| f.from_i64(x)).collect();
        assert_eq!(r.hecke_values(2).unwrap().to_vec(), want);
        assert_eq!(r.classify(), PatternType::Type3);
        assert!(r.ht_check() && r.odd_check() && r.det_check(&[2, 3, 5, 7, 11]).unwrap());
    }

    #[test]
    fn text_round_trip() {
        let f = make_field(12037, 1).unwrap();
        let names = CharNames::new(15, &f).unwrap();
        for t in ["chi15_0*e^0 + e^1 + e^2 + e^4", "e^0 + chi15_1^2*e^2 + e^1*s[15.4.a.a]", "e^1 + e^4 + e^0*s[5.3.c.a]"] {
            assert_eq!(RepSpec::parse(t, &names).unwrap().to_text(&names), t);
        }
        let shuffled = RepSpec::parse("e^4 + e^1 + chi15_0*e^0 + e^2", &names).unwrap();
        assert_eq!(shuffled.to_text(&names), "chi15_0*e^0 + e^1 + e^2 + e^4");
        assert!(RepSpec::parse("e^0 + chi99*e^1", &names).is_err());
        assert!(RepSpec::parse("e^0 + + e^1", &names).is_err());
    }

    #[test]
    fn validation() {
        let (c, names) = ctx(3, 1, 12379, "chi3");
        let spec = RepSpec::parse("e^0 + e^1 + e^2", &names).unwrap();
        assert!(spec.instantiate(&c, None).is_err());
        let spec = RepSpec::parse("e^0 + e^1 + e^2 + e^5", &names).unwrap();
        assert!(spec.instantiate(&c, None).unwrap_err().to_string().contains("g + 3"));
    }
}
