//! Search for reducible representations matching Hecke eigenvalues.
//!
//! Candidates are sums of four characters, or two characters plus a
//! twisted newform, whose sorted Hodge-Tate weights are `[0, 1, 2, g+3]`.
//! Rather than testing every candidate, the search indexes partial traces
//! at one prime and only fully checks candidates whose trace of Frobenius
//! already agrees there.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use crate::characters::{enumerate_chars, CharNames, DirichletChar};
use crate::eigen::Label;
use crate::error::{input, Error, Result};
use crate::field::{ExtField, FieldElement};
use crate::galrep::{Constituent, GaloisRep, HeckeData, PatternType, RepContext};
use crate::newform::{reduce, NewformStore, ReducedNewform};

/// Matching only ever sees the supplied operators; with few primes an
/// unrelated representation agreeing on all of them is not ruled out.
pub const SMALL_SET_CAVEAT: &str = "only a few Hecke operators were supplied; \
agreement at these does not exclude a different representation that differs elsewhere, \
although such a coincidence is improbable";

/// Fewer distinct primes than this in the computed set triggers the caveat.
pub const SMALL_SET_PRIMES: usize = 4;

/// Prefilters applied before the Hecke comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FilterOptions {
    /// The determinant character must be eta times eps^(g+6).
    pub det: bool,
    /// Complex conjugation must have eigenvalues +1, +1, -1, -1.
    pub odd: bool,
}

impl Default for FilterOptions {
    fn default() -> Self {
        FilterOptions { det: true, odd: true }
    }
}

/// Placement of a newform summand: it carries eps^w and weight k, and the
/// two characters take the remaining Hodge-Tate weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwistShape {
    pub w: u32,
    pub k: u32,
    pub char_ws: [u32; 2],
}

/// All ways to split `[0, 1, 2, g+3]` into `[w, w+k-1]` plus two singletons.
pub fn twist_shapes(g: u32) -> Vec<TwistShape> {
    let t = [0, 1, 2, g + 3];
    let mut out = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            let rest: Vec<u32> = (0..4).filter(|&x| x != i && x != j).map(|x| t[x]).collect();
            out.push(TwistShape { w: t[i], k: t[j] - t[i] + 1, char_ws: [rest[0], rest[1]] });
        }
    }
    out.retain(|s| s.k >= 2);
    out
}

#[derive(Clone, Debug)]
pub struct FinderContext {
    rep: Arc<RepContext>,
    chars: Vec<DirichletChar>,
    forms: Vec<ReducedNewform>,
    computed: BTreeSet<Label>,
    class_primes: Vec<u64>,
    options: FilterOptions,
}

impl FinderContext {
    /// Reduces every record of level dividing N whose weight fits one of
    /// the twist shapes.
    pub fn new(rep: Arc<RepContext>, store: &NewformStore, computed: &[Label]) -> Result<FinderContext> {
        let weights: BTreeSet<u32> = twist_shapes(rep.g).iter().map(|s| s.k).collect();
        let mut forms = Vec::new();
        for rec in store.dividing(rep.level()).filter(|r| weights.contains(&r.weight)) {
            forms.extend(reduce(rec, rep.field())?);
        }
        let bound = if store.ap_bound == 0 { 11 } else { store.ap_bound };
        FinderContext::with_forms(rep, forms, computed, bound)
    }

    /// Uses the given reductions as the newform candidates. Classes are
    /// formed from Frobenius polynomials at good primes up to `class_bound`.
    pub fn with_forms(
        rep: Arc<RepContext>,
        forms: Vec<ReducedNewform>,
        computed: &[Label],
        class_bound: u64,
    ) -> Result<FinderContext> {
        for lab in computed {
            if lab.k > 4 {
                return input(format!("no operator {lab}"));
            }
            if !rep.is_good_prime(lab.l) || !crate::field::is_prime(lab.l) {
                return input(format!("{lab}: l must be a prime not dividing pN"));
            }
        }
        let n = rep.level();
        for f in &forms {
            if n % f.record.level != 0 {
                return input(format!("{} has level not dividing {n}", f.label()));
            }
        }
        let chars = enumerate_chars(n, rep.field())?;
        let class_primes = (2..=class_bound).filter(|&l| crate::field::is_prime(l) && rep.is_good_prime(l)).collect();
        Ok(FinderContext {
            rep,
            chars,
            forms,
            computed: computed.iter().copied().collect(),
            class_primes,
            options: FilterOptions::default(),
        })
    }

    pub fn with_options(mut self, options: FilterOptions) -> FinderContext {
        self.options = options;
        self
    }

    pub fn rep_context(&self) -> &Arc<RepContext> {
        &self.rep
    }

    pub fn field(&self) -> &Arc<ExtField> {
        self.rep.field()
    }

    pub fn chars(&self) -> &[DirichletChar] {
        &self.chars
    }

    pub fn forms(&self) -> &[ReducedNewform] {
        &self.forms
    }

    pub fn computed(&self) -> &BTreeSet<Label> {
        &self.computed
    }

    /// Trivial characters drop out of the determinant and parity filters.
    fn passes_filters(&self, rep: &GaloisRep) -> Result<bool> {
        if self.options.odd && !rep.odd_check() {
            return Ok(false);
        }
        if self.options.det && !rep.det_character_check()? {
            return Ok(false);
        }
        Ok(true)
    }

    fn four_chars(&self, c: [&DirichletChar; 4]) -> Result<GaloisRep> {
        let ws = [0, 1, 2, self.rep.g + 3];
        let cs = c.iter().zip(ws).map(|(chi, w)| Constituent::Char { chi: (*chi).clone(), w }).collect();
        GaloisRep::new(self.rep.clone(), cs)
    }

    fn with_twist(
        &self,
        s: &TwistShape,
        a: &DirichletChar,
        b: &DirichletChar,
        t: &DirichletChar,
        f: &ReducedNewform,
    ) -> Result<GaloisRep> {
        GaloisRep::new(
            self.rep.clone(),
            vec![
                Constituent::Char { chi: a.clone(), w: s.char_ws[0] },
                Constituent::Char { chi: b.clone(), w: s.char_ws[1] },
                Constituent::Twist { form: f.clone(), chi: t.clone(), w: s.w },
            ],
        )
    }

    /// Every candidate passing the prefilters, in a deterministic order.
    pub fn enumerate_candidates(&self) -> Result<Vec<GaloisRep>> {
        let mut out = Vec::new();
        let cs = &self.chars;
        for a in cs {
            for b in cs {
                for c in cs {
                    for d in cs {
                        let rep = self.four_chars([a, b, c, d])?;
                        if self.passes_filters(&rep)? {
                            out.push(rep);
                        }
                    }
                }
            }
        }
        for s in twist_shapes(self.rep.g) {
            for f in self.forms.iter().filter(|f| f.weight() == s.k) {
                for t in cs {
                    for a in cs {
                        for b in cs {
                            let rep = self.with_twist(&s, a, b, t, f)?;
                            if self.passes_filters(&rep)? {
                                out.push(rep);
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    fn check_data(&self, data: &HeckeData) -> Result<()> {
        for lab in data.values.keys() {
            if !self.rep.is_good_prime(lab.l) {
                return input(format!("{lab}: l divides pN"));
            }
            if !self.computed.is_empty() && !self.computed.contains(lab) {
                return input(format!("{lab} is not in the computed operator set"));
            }
        }
        Ok(())
    }

    /// All candidates predicting exactly `data`, grouped into classes of
    /// reps with identical Frobenius polynomials at the class primes.
    pub fn find(&self, data: &HeckeData) -> Result<MatchReport> {
        self.check_data(data)?;
        let pivot = data.values.keys().find(|l| l.k == 1).map(|l| l.l);
        let mut matches = Vec::new();
        match pivot {
            None => {
                for rep in self.enumerate_candidates()? {
                    if rep.matches(data)? {
                        matches.push(rep);
                    }
                }
            }
            Some(l) => {
                let trace = data.values[&Label::new(l, 1)].clone();
                self.indexed_search(l, &trace, data, &mut matches)?;
            }
        }
        self.report(matches, data)
    }

    fn indexed_search(&self, l: u64, trace: &FieldElement, data: &HeckeData, out: &mut Vec<GaloisRep>) -> Result<()> {
        let f = self.field().clone();
        let g = self.rep.g;
        let lw = |w: u32| f.pow_u64(&f.from_u64(l), w as u64);
        let at_l: Vec<FieldElement> = self.chars.iter().map(|c| c.eval(l as i64)).collect::<Result<_>>()?;
        let term = |i: usize, w: u32| f.mul(&at_l[i], &lw(w));
        let n = self.chars.len();
        let pair_index = |w0: u32, w1: u32| {
            let mut m: HashMap<FieldElement, Vec<(usize, usize)>> = HashMap::new();
            for i in 0..n {
                let x = term(i, w0);
                for j in 0..n {
                    m.entry(f.add(&x, &term(j, w1))).or_default().push((i, j));
                }
            }
            m
        };
        let mut consider = |rep: GaloisRep| -> Result<()> {
            if self.passes_filters(&rep)? && rep.matches(data)? {
                out.push(rep);
            }
            Ok(())
        };

        let low = pair_index(0, 1);
        for k in 0..n {
            for m in 0..n {
                let rest = f.sub(trace, &f.add(&term(k, 2), &term(m, g + 3)));
                for &(i, j) in low.get(&rest).into_iter().flatten() {
                    let cs = &self.chars;
                    consider(self.four_chars([&cs[i], &cs[j], &cs[k], &cs[m]])?)?;
                }
            }
        }

        for s in twist_shapes(g) {
            let index = pair_index(s.char_ws[0], s.char_ws[1]);
            for form in self.forms.iter().filter(|x| x.weight() == s.k) {
                let a = form
                    .a(l)
                    .ok_or_else(|| Error::Input(format!("no a_{l} for {}", form.label())))?;
                let base = f.mul(a, &lw(s.w));
                for t in 0..n {
                    let rest = f.sub(trace, &f.mul(&at_l[t], &base));
                    for &(i, j) in index.get(&rest).into_iter().flatten() {
                        let cs = &self.chars;
                        consider(self.with_twist(&s, &cs[i], &cs[j], &cs[t], form)?)?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Frobenius polynomials at the class primes, as a grouping key.
    fn class_key(&self, rep: &GaloisRep) -> Result<Vec<FieldElement>> {
        let f = self.field();
        let mut key = Vec::new();
        for &l in &self.class_primes {
            let cp = rep.charpoly(l)?;
            key.extend((1..=4).map(|k| cp.coeff(f, k)));
        }
        Ok(key)
    }

    fn report(&self, mut matches: Vec<GaloisRep>, data: &HeckeData) -> Result<MatchReport> {
        matches.sort_by_cached_key(sort_key);
        let mut by_key: BTreeMap<Vec<FieldElement>, Vec<usize>> = BTreeMap::new();
        for (i, m) in matches.iter().enumerate() {
            by_key.entry(self.class_key(m)?).or_default().push(i);
        }
        let mut classes: Vec<MatchClass> = by_key
            .into_values()
            .map(|members| {
                let representative = *members
                    .iter()
                    .min_by_key(|&&i| (nontrivial_chars(&matches[i]), i))
                    .unwrap();
                MatchClass { pattern: matches[representative].classify(), members, representative }
            })
            .collect();
        classes.sort_by_key(|c| c.representative);

        let mut warnings = Vec::new();
        if matches.is_empty() {
            warnings.push(
                "no candidate matches: the representation may be irreducible or of a shape outside the search".into(),
            );
        }
        for c in &classes {
            if c.pattern == PatternType::Other {
                warnings.push(format!("match {} fits none of the five usual patterns", c.representative));
            }
        }
        let caveat = (data.primes().len() < SMALL_SET_PRIMES).then_some(SMALL_SET_CAVEAT);
        Ok(MatchReport { unique: classes.len() == 1, matches, classes, warnings, caveat })
    }
}

fn nontrivial_chars(rep: &GaloisRep) -> usize {
    rep.constituents().iter().filter(|c| !c.chi().is_trivial()).count()
}

/// Total order on reps used to make reports deterministic.
pub fn sort_key(rep: &GaloisRep) -> Vec<(bool, u32, Vec<FieldElement>, String, usize)> {
    rep.constituents()
        .iter()
        .map(|c| {
            let (label, root) = c.form().map_or((String::new(), 0), |f| (f.label().to_string(), f.root_index));
            (c.form().is_some(), c.w(), c.chi().values().to_vec(), label, root)
        })
        .collect()
}

/// Matches with identical Frobenius polynomials at every class prime.
#[derive(Clone, Debug)]
pub struct MatchClass {
    /// Indices into [`MatchReport::matches`].
    pub members: Vec<usize>,
    /// The member with the fewest nontrivial characters.
    pub representative: usize,
    pub pattern: PatternType,
}

#[derive(Clone, Debug)]
pub struct MatchReport {
    pub matches: Vec<GaloisRep>,
    pub classes: Vec<MatchClass>,
    /// Exactly one class matched.
    pub unique: bool,
    pub warnings: Vec<String>,
    /// Set when the computed set has few primes.
    pub caveat: Option<&'static str>,
}

impl MatchReport {
    /// The representative of the single matching class.
    pub fn unique_rep(&self) -> Option<&GaloisRep> {
        self.unique.then(|| &self.matches[self.classes[0].representative])
    }

    /// Whether some member of some class prints as `text`.
    pub fn contains_text(&self, text: &str, names: &CharNames) -> bool {
        self.matches.iter().any(|m| m.to_text(names) == text)
    }

    /// Index of the class containing a rep printing as `text`.
    pub fn class_of_text(&self, text: &str, names: &CharNames) -> Option<usize> {
        self.classes
            .iter()
            .position(|c| c.members.iter().any(|&i| self.matches[i].to_text(names) == text))
    }
}

/// Observations about a set of reps found for one (N, g, eta): pairs that
/// should come together and the company type-4 reps keep. Warnings only.
pub fn table_lints(reps: &[GaloisRep], names: &CharNames) -> Vec<String> {
    let texts: BTreeSet<String> = reps.iter().map(|r| r.to_text(names)).collect();
    let types: BTreeSet<PatternType> = reps.iter().map(GaloisRep::classify).collect();
    let mut out = Vec::new();
    for r in reps {
        let pattern = r.classify();
        if matches!(pattern, PatternType::Type1 | PatternType::Type2 | PatternType::Type5) {
            let partner = swap_zero_two(r);
            if let Some(p) = partner {
                let text = p.to_text(names);
                if !texts.contains(&text) {
                    out.push(format!("{} ({pattern}) appears without its partner {text}", r.to_text(names)));
                }
            }
        }
        if pattern == PatternType::Type4 && !(types.contains(&PatternType::Type3) && types.contains(&PatternType::Type1)) {
            out.push(format!("{} (type4) appears without both a type3 and a type1 rep", r.to_text(names)));
        }
    }
    out
}

/// Move the nontrivial character between the eps^0 and eps^2 summands.
fn swap_zero_two(r: &GaloisRep) -> Option<GaloisRep> {
    let cs: Vec<Constituent> = r
        .constituents()
        .iter()
        .map(|c| match c {
            Constituent::Char { chi, w: 0 } => Constituent::Char { chi: chi.clone(), w: 2 },
            Constituent::Char { chi, w: 2 } => Constituent::Char { chi: chi.clone(), w: 0 },
            other => other.clone(),
        })
        .collect();
    GaloisRep::new(r.context().clone(), cs).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::galrep::RepSpec;

    fn level3() -> (FinderContext, CharNames) {
        let f = make_field(12379, 1).unwrap();
        let names = CharNames::new(3, &f).unwrap();
        let ctx = RepContext::new(1, names.parse("chi3").unwrap());
        let labels: Vec<Label> = [2u64, 5, 7, 11].iter().flat_map(|&l| (1..=3).map(move |k| Label::new(l, k))).collect();
        (FinderContext::with_forms(ctx, vec![], &labels, 11).unwrap(), names)
    }

    #[test]
    fn shapes() {
        let ks: Vec<(u32, u32)> = twist_shapes(1).iter().map(|s| (s.w, s.k)).collect();
        assert_eq!(ks, vec![(0, 2), (0, 3), (0, 5), (1, 2), (1, 4), (2, 3)]);
    }

    #[test]
    fn trivial_level_one() {
        let f = make_field(12379, 1).unwrap();
        let names = CharNames::new(1, &f).unwrap();
        let ctx = RepContext::new(0, names.trivial());
        let fc = FinderContext::with_forms(ctx, vec![], &[], 11).unwrap();
        let c = fc.enumerate_candidates().unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].to_text(&names), "e^0 + e^1 + e^2 + e^3");
        let report = fc.find(&HeckeData::default()).unwrap();
        assert!(report.unique && report.caveat.is_some());
    }

    #[test]
    fn level_three_round_trip() {
        let (fc, names) = level3();
        let all: Vec<String> = fc.enumerate_candidates().unwrap().iter().map(|r| r.to_text(&names)).collect();
        assert!(all.contains(&"e^0 + e^1 + chi3*e^2 + e^4".to_string()));
        assert!(all.contains(&"chi3*e^0 + e^1 + e^2 + e^4".to_string()));
        let distinct: BTreeSet<&String> = all.iter().collect();
        assert_eq!(distinct.len(), all.len());

        let text = "chi3*e^0 + e^1 + e^2 + e^4";
        let rho = RepSpec::parse(text, &names).unwrap().instantiate(fc.rep_context(), None).unwrap();
        let labels: Vec<Label> = fc.computed().iter().copied().collect();
        let data = rho.hecke_data(&labels).unwrap();
        let report = fc.find(&data).unwrap();
        assert!(report.unique);
        assert_eq!(report.unique_rep().unwrap().to_text(&names), text);
        assert!(report.caveat.is_none());

        let mut bad = data.clone();
        let v = bad.values.get_mut(&Label::new(2, 1)).unwrap();
        *v = fc.field().add(v, &fc.field().one());
        assert!(fc.find(&bad).unwrap().matches.is_empty());
    }

    #[test]
    fn indexed_search_agrees_with_enumeration() {
        let (fc, _) = level3();
        let fc = fc.with_options(FilterOptions { det: false, odd: false });
        let labels: Vec<Label> = vec![Label::new(2, 1), Label::new(5, 1)];
        for rep in fc.enumerate_candidates().unwrap().iter().step_by(7) {
            let data = rep.hecke_data(&labels).unwrap();
            let fast: Vec<_> = fc.find(&data).unwrap().matches.iter().map(sort_key).collect();
            let mut slow: Vec<_> =
                fc.enumerate_candidates().unwrap().iter().filter(|r| r.matches(&data).unwrap()).map(sort_key).collect();
            slow.sort();
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn rejects_bad_labels() {
        let (fc, _) = level3();
        let mut data = HeckeData::default();
        data.values.insert(Label::new(3, 1), fc.field().one());
        assert!(fc.find(&data).is_err());
    }
}
