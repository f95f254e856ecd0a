//! Tables of eigenspaces and their representations: parsing, printing and
//! end-to-end verification against the finder.
//!
//! A table is a block such as
//!
//! ```text
//! Level N = 5. Coeffs Sym^3(V)*chi5. Field GF(16001^2).
//! Computed T2, T3, T7. Dim 3.
//! 1 | 1 | e^0 + e^1 + chi5*e^2 + e^6
//! ```
//!
//! Rows give the Galois multiplicity, the Hecke multiplicity and the rep.
//! `T7` stands for T(7,1), T(7,2), T(7,3); `T(7,1)` for T(7,1) alone.
//! Blocks are separated by blank lines.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use crate::characters::CharNames;
use crate::eigen::Label;
use crate::error::{parse, Error, Result};
use crate::field::{make_field, ExtField};
use crate::finder::{sort_key, table_lints, FinderContext};
use crate::galrep::{GaloisRep, HeckeData, PatternType, RepContext, RepSpec};
use crate::newform::{reduce, NewformStore, ReducedNewform};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComputedOp {
    /// T(l,1), T(l,2) and T(l,3).
    Full(u64),
    /// T(l,1) only.
    First(u64),
}

impl ComputedOp {
    pub fn labels(&self) -> Vec<Label> {
        match *self {
            ComputedOp::Full(l) => (1..=3).map(|k| Label::new(l, k)).collect(),
            ComputedOp::First(l) => vec![Label::new(l, 1)],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableHeader {
    pub level: u64,
    pub g: u32,
    /// Character expression for eta, empty when trivial.
    pub eta: String,
    pub p: u64,
    pub r: usize,
    pub computed: Vec<ComputedOp>,
    pub dim: usize,
    /// Trailing tag after the dimension, kept verbatim.
    pub tag: Option<String>,
}

impl TableHeader {
    /// `V`, `Sym^g(V)`, with `*eta` appended when eta is nontrivial.
    pub fn coeffs(&self) -> String {
        let base = if self.g == 1 { "V".to_string() } else { format!("Sym^{}(V)", self.g) };
        if self.eta.is_empty() {
            base
        } else {
            format!("{base}*{}", self.eta)
        }
    }

    pub fn labels(&self) -> Vec<Label> {
        self.computed.iter().flat_map(ComputedOp::labels).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub galois_mult: usize,
    pub hecke_mult: usize,
    pub rep: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub header: TableHeader,
    pub rows: Vec<TableRow>,
}

fn num<T: std::str::FromStr>(s: &str, what: &str, line: &str) -> Result<T> {
    s.trim().parse().map_err(|_| Error::Parse(format!("bad {what} in {line:?}")))
}

fn parse_first_line(line: &str) -> Result<(u64, u32, String, u64, usize)> {
    let rest = line
        .strip_prefix("Level N = ")
        .ok_or_else(|| Error::Parse(format!("expected 'Level N = ' in {line:?}")))?;
    let (n, rest) = rest.split_once(". Coeffs ").ok_or_else(|| Error::Parse(format!("no Coeffs in {line:?}")))?;
    let (coeffs, rest) = rest.split_once(". Field GF(").ok_or_else(|| Error::Parse(format!("no Field in {line:?}")))?;
    let field = rest.strip_suffix(").").ok_or_else(|| Error::Parse(format!("bad field in {line:?}")))?;
    let (p, r) = match field.split_once('^') {
        Some((p, r)) => (num(p, "p", line)?, num(r, "r", line)?),
        None => (num(field, "p", line)?, 1),
    };
    let (base, eta) = coeffs.split_once('*').unwrap_or((coeffs, ""));
    let g = if base == "V" {
        1
    } else {
        let inner = base
            .strip_prefix("Sym^")
            .and_then(|s| s.strip_suffix("(V)"))
            .ok_or_else(|| Error::Parse(format!("bad coefficients in {line:?}")))?;
        num(inner, "g", line)?
    };
    Ok((num(n, "level", line)?, g, eta.to_string(), p, r))
}

/// An operator list as printed after `Computed`, e.g. `T2, T3, T(7,1)`.
pub fn parse_computed(ops: &str) -> Result<Vec<ComputedOp>> {
    let mut out = Vec::new();
    for op in ops.split(", ").map(str::trim).filter(|o| !o.is_empty()) {
        if let Some(inner) = op.strip_prefix("T(").and_then(|s| s.strip_suffix(",1)")) {
            out.push(ComputedOp::First(num(inner, "operator", op)?));
        } else if let Some(l) = op.strip_prefix('T') {
            out.push(ComputedOp::Full(num(l, "operator", op)?));
        } else {
            return parse(format!("bad operator {op:?}"));
        }
    }
    Ok(out)
}

fn parse_dim_line(line: &str) -> Result<(Vec<ComputedOp>, usize, Option<String>)> {
    let (ops, rest) = match line.strip_prefix("Computed ") {
        Some(s) => {
            let (ops, rest) = s.split_once(". Dim ").ok_or_else(|| Error::Parse(format!("no Dim in {line:?}")))?;
            (parse_computed(ops)?, rest)
        }
        None => {
            let rest = line.strip_prefix("Dim ").ok_or_else(|| Error::Parse(format!("expected Computed or Dim in {line:?}")))?;
            (Vec::new(), rest)
        }
    };
    let (dim, tag) = rest.split_once('.').ok_or_else(|| Error::Parse(format!("bad Dim in {line:?}")))?;
    let tag = tag.trim();
    Ok((ops, num(dim, "dimension", line)?, (!tag.is_empty()).then(|| tag.to_string())))
}

pub fn parse_tables(text: &str) -> Result<Vec<Table>> {
    let mut out = Vec::new();
    for block in text.split("\n\n").map(str::trim).filter(|b| !b.is_empty()) {
        let mut lines = block.lines();
        let first = lines.next().unwrap();
        let (level, g, eta, p, r) = parse_first_line(first)?;
        let second = lines.next().ok_or_else(|| Error::Parse(format!("table {first:?} has no Dim line")))?;
        let (computed, dim, tag) = parse_dim_line(second)?;
        let mut rows = Vec::new();
        for line in lines {
            let parts: Vec<&str> = line.splitn(3, " | ").collect();
            if parts.len() != 3 {
                return parse(format!("bad row {line:?}"));
            }
            rows.push(TableRow {
                galois_mult: num(parts[0], "Galois multiplicity", line)?,
                hecke_mult: num(parts[1], "Hecke multiplicity", line)?,
                rep: parts[2].trim().to_string(),
            });
        }
        if rows.is_empty() != computed.is_empty() {
            return parse(format!("table {first:?}: rows require a Computed line and vice versa"));
        }
        out.push(Table { header: TableHeader { level, g, eta, p, r, computed, dim, tag }, rows });
    }
    Ok(out)
}

/// Inverse of [`parse_tables`].
pub fn emit_tables(tables: &[Table]) -> String {
    let mut s = String::new();
    for (i, t) in tables.iter().enumerate() {
        if i > 0 {
            s.push('\n');
        }
        emit_table_into(&mut s, t);
    }
    s
}

pub fn emit_table(t: &Table) -> String {
    let mut s = String::new();
    emit_table_into(&mut s, t);
    s
}

fn emit_table_into(s: &mut String, t: &Table) {
    let h = &t.header;
    let field = if h.r == 1 { h.p.to_string() } else { format!("{}^{}", h.p, h.r) };
    let _ = writeln!(s, "Level N = {}. Coeffs {}. Field GF({field}).", h.level, h.coeffs());
    if !h.computed.is_empty() {
        let ops: Vec<String> = h
            .computed
            .iter()
            .map(|op| match op {
                ComputedOp::Full(l) => format!("T{l}"),
                ComputedOp::First(l) => format!("T({l},1)"),
            })
            .collect();
        let _ = write!(s, "Computed {}. ", ops.join(", "));
    }
    let _ = write!(s, "Dim {}.", h.dim);
    if let Some(tag) = &h.tag {
        let _ = write!(s, " {tag}");
    }
    s.push('\n');
    for r in &t.rows {
        let _ = writeln!(s, "{} | {} | {}", r.galois_mult, r.hecke_mult, r.rep);
    }
}

/// The tables bundled with the crate, as printed.
pub fn bundled_tables() -> Result<Vec<Table>> {
    parse_tables(include_str!("../data/tables.txt"))
}

/// One side of an erratum: a rep, optionally with its two multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
struct ErratumSide {
    mults: Option<(usize, usize)>,
    rep: String,
}

impl ErratumSide {
    fn parse(text: &str, line: &str) -> Result<ErratumSide> {
        let parts: Vec<&str> = text.split(" | ").collect();
        match parts[..] {
            [rep] => Ok(ErratumSide { mults: None, rep: rep.to_string() }),
            [gm, hm, rep] => Ok(ErratumSide {
                mults: Some((num(gm, "Galois multiplicity", line)?, num(hm, "Hecke multiplicity", line)?)),
                rep: rep.to_string(),
            }),
            _ => parse(format!("bad errata line {line:?}")),
        }
    }
}

/// Corrections to printed rows, keyed by level, coefficients and rep text.
///
/// A line is `level | coeffs | printed => corrected`, where each side is
/// either a rep or a full row `gm | hm | rep`.
#[derive(Clone, Debug, Default)]
pub struct Errata {
    map: HashMap<(u64, String, String), (ErratumSide, ErratumSide)>,
}

impl Errata {
    pub fn parse(text: &str) -> Result<Errata> {
        let mut map = HashMap::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let parts: Vec<&str> = line.splitn(3, " | ").collect();
            let fix = parts.get(2).and_then(|s| s.split_once(" => "));
            let (Some(fix), 3) = (fix, parts.len()) else {
                return parse(format!("bad errata line {line:?}"));
            };
            let (from, to) = (ErratumSide::parse(fix.0, line)?, ErratumSide::parse(fix.1, line)?);
            map.insert((num(parts[0], "level", line)?, parts[1].to_string(), from.rep.clone()), (from, to));
        }
        Ok(Errata { map })
    }

    pub fn bundled() -> Result<Errata> {
        Errata::parse(include_str!("../data/errata.txt"))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// The corrected row, if an erratum matches `row` as printed.
    pub fn correct(&self, header: &TableHeader, row: &TableRow) -> Option<TableRow> {
        let (from, to) = self.map.get(&(header.level, header.coeffs(), row.rep.clone()))?;
        if from.mults.is_some_and(|m| m != (row.galois_mult, row.hecke_mult)) {
            return None;
        }
        let (galois_mult, hecke_mult) = to.mults.unwrap_or((row.galois_mult, row.hecke_mult));
        Some(TableRow { galois_mult, hecke_mult, rep: to.rep.clone() })
    }

    /// Copy of `tables` with every listed correction applied.
    pub fn apply(&self, tables: &[Table]) -> Vec<Table> {
        tables
            .iter()
            .map(|t| Table {
                header: t.header.clone(),
                rows: t.rows.iter().map(|r| self.correct(&t.header, r).unwrap_or_else(|| r.clone())).collect(),
            })
            .collect()
    }
}

/// Field, characters and rep context for a table header.
pub struct TableSetting {
    pub field: Arc<ExtField>,
    pub names: CharNames,
    pub ctx: Arc<RepContext>,
}

impl TableSetting {
    pub fn new(h: &TableHeader) -> Result<TableSetting> {
        let field = make_field(h.p, h.r)?;
        let names = CharNames::new(h.level, &field)?;
        let eta = if h.eta.is_empty() { names.trivial() } else { names.parse(&h.eta)? };
        Ok(TableSetting { ctx: RepContext::new(h.g, eta), field, names })
    }
}

/// Reductions shared between tables over the same field.
#[derive(Default)]
pub struct ReductionCache {
    map: HashMap<(String, String), Vec<ReducedNewform>>,
}

impl ReductionCache {
    pub fn get(&mut self, store: &NewformStore, label: &str, field: &Arc<ExtField>) -> Result<Vec<ReducedNewform>> {
        let key = (label.to_string(), field.descriptor());
        if let Some(v) = self.map.get(&key) {
            return Ok(v.clone());
        }
        let rec = store
            .get(label)
            .ok_or_else(|| Error::Input(format!("newform {label} is not in the fixture")))?;
        let v = reduce(rec, field)?;
        self.map.insert(key, v.clone());
        Ok(v)
    }

    /// Reductions of every record of level dividing N with one of the weights.
    pub fn candidates(
        &mut self,
        store: &NewformStore,
        n: u64,
        weights: &[u32],
        field: &Arc<ExtField>,
    ) -> Result<Vec<ReducedNewform>> {
        let labels: Vec<String> = store
            .dividing(n)
            .filter(|r| weights.contains(&r.weight))
            .map(|r| r.label.clone())
            .collect();
        let mut out = Vec::new();
        for l in labels {
            // a form with no prime of residue degree dividing r cannot occur
            match self.get(store, &l, field) {
                Ok(v) => out.extend(v),
                Err(Error::EnlargeR(_)) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(out)
    }
}

/// Outcome for one row.
#[derive(Clone, Debug)]
pub struct RowReport {
    pub rep: String,
    /// False for rows left out by [`RowSelection`].
    pub checked: bool,
    pub elapsed: std::time::Duration,
    /// Instantiations passing the Hodge-Tate, determinant and parity checks.
    pub valid: usize,
    pub pattern: Option<PatternType>,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct TableReport {
    pub title: String,
    pub rows: Vec<RowReport>,
    pub failures: Vec<String>,
    pub warnings: Vec<String>,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.rows.iter().all(|r| r.failures.is_empty())
    }
}

/// Which checks to run per row; the finder step dominates the cost.
#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub run_finder: bool,
    pub filters: crate::finder::FilterOptions,
    pub rows: RowSelection,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { run_finder: true, filters: Default::default(), rows: RowSelection::All }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowSelection {
    All,
    /// Rows whose rep is a sum of four characters.
    CharactersOnly,
    /// Rows with a newform twist.
    NewformsOnly,
}

impl RowSelection {
    pub fn includes(self, rep: &str) -> bool {
        let twisted = rep.contains("s[");
        match self {
            RowSelection::All => true,
            RowSelection::CharactersOnly => !twisted,
            RowSelection::NewformsOnly => twisted,
        }
    }
}

const CHECK_PRIMES: [u64; 5] = [2, 3, 5, 7, 11];

/// Every valid instantiation of a row's rep, with the checks that failed
/// for the rejected ones.
pub fn instantiate_row(
    spec: &RepSpec,
    setting: &TableSetting,
    store: &NewformStore,
    cache: &mut ReductionCache,
) -> Result<(Vec<GaloisRep>, Vec<String>)> {
    let mut reps = Vec::new();
    let mut rejected = Vec::new();
    let candidates: Vec<Option<ReducedNewform>> = match spec.newform_label() {
        None => vec![None],
        Some(l) => cache.get(store, l, &setting.field)?.into_iter().map(Some).collect(),
    };
    for form in candidates {
        let rep = spec.instantiate(&setting.ctx, form.as_ref())?;
        let mut bad = Vec::new();
        if !rep.ht_check() {
            bad.push(format!("Hodge-Tate weights {:?}", rep.hodge_tate()));
        }
        if !rep.det_character_check()? || !rep.det_check(&CHECK_PRIMES)? {
            bad.push("determinant".to_string());
        }
        if !rep.odd_check() {
            bad.push(format!("complex conjugation {:?}", rep.oddness()));
        }
        if bad.is_empty() {
            reps.push(rep);
        } else {
            let which = form.map_or(String::new(), |f| format!(" (root {})", f.root_index));
            rejected.push(format!("{}{which}: {}", spec.to_text(&setting.names), bad.join(", ")));
        }
    }
    Ok((reps, rejected))
}

/// Check one table: each row's rep is valid, appears as many times as its
/// Galois multiplicity says, and is the unique match for its own Hecke
/// eigenvalues at the computed operators.
pub fn verify_table(
    table: &Table,
    store: &NewformStore,
    cache: &mut ReductionCache,
    opts: VerifyOptions,
) -> Result<TableReport> {
    let h = &table.header;
    let title = emit_table(&Table { header: h.clone(), rows: vec![] }).trim_end().replace('\n', " ");
    let mut report = TableReport { title, rows: Vec::new(), failures: Vec::new(), warnings: Vec::new() };
    let total: usize = table.rows.iter().map(|r| r.galois_mult * r.hecke_mult).sum();
    if total != h.dim {
        report.failures.push(format!("multiplicities add up to {total}, not Dim {}", h.dim));
    }
    for r in &table.rows {
        if !(1..=6).contains(&r.galois_mult) || ![1, 3, 4, 6, 9].contains(&r.hecke_mult) {
            report.warnings.push(format!("unusual multiplicities {} | {} for {}", r.galois_mult, r.hecke_mult, r.rep));
        }
    }
    if table.rows.is_empty() {
        return Ok(report);
    }

    let setting = TableSetting::new(h)?;
    let labels = h.labels();
    let finder = if opts.run_finder {
        let weights: Vec<u32> = crate::finder::twist_shapes(h.g).iter().map(|s| s.k).collect();
        let forms = cache.candidates(store, h.level, &weights, &setting.field)?;
        let bound = if store.ap_bound == 0 { 11 } else { store.ap_bound };
        Some(FinderContext::with_forms(setting.ctx.clone(), forms, &labels, bound)?.with_options(opts.filters))
    } else {
        None
    };

    let mut expected: BTreeMap<String, usize> = BTreeMap::new();
    for r in &table.rows {
        *expected.entry(r.rep.clone()).or_default() += r.galois_mult;
    }
    let mut found_reps = Vec::new();
    let mut seen = BTreeMap::new();
    for r in &table.rows {
        let start = std::time::Instant::now();
        let checked = opts.rows.includes(&r.rep);
        let mut row = RowReport {
            rep: r.rep.clone(),
            checked,
            elapsed: Default::default(),
            valid: 0,
            pattern: None,
            failures: Vec::new(),
        };
        if !checked {
            report.rows.push(row);
            continue;
        }
        let spec = match RepSpec::parse(&r.rep, &setting.names) {
            Ok(s) => s,
            Err(e) => {
                row.failures.push(e.to_string());
                report.rows.push(row);
                continue;
            }
        };
        let printed = spec.to_text(&setting.names);
        if printed != r.rep {
            row.failures.push(format!("prints back as {printed:?}"));
        }
        let (reps, _) = match instantiate_row(&spec, &setting, store, cache) {
            Ok(x) => x,
            Err(e) => {
                row.failures.push(e.to_string());
                report.rows.push(row);
                continue;
            }
        };
        row.valid = reps.len();
        if reps.len() != expected[&r.rep] {
            row.failures.push(format!(
                "{} valid instantiations, Galois multiplicities of rows with this rep add up to {}",
                reps.len(),
                expected[&r.rep]
            ));
        }
        row.pattern = reps.first().map(GaloisRep::classify);
        if row.pattern == Some(PatternType::Other) {
            row.failures.push("fits none of the five patterns".into());
        }
        // one row per orbit; duplicate texts share the instantiations
        let first_time = seen.insert(r.rep.clone(), ()).is_none();
        if let (Some(fc), true) = (&finder, first_time) {
            for rep in &reps {
                let data = rep.hecke_data(&labels)?;
                if let Err(e) = data.check_normalization(&setting.ctx) {
                    row.failures.push(e.to_string());
                }
                let full = rep.hecke_data(&CHECK_PRIMES.iter().filter(|&&l| setting.ctx.is_good_prime(l)).flat_map(|&l| [Label::new(l, 0), Label::new(l, 4)]).collect::<Vec<_>>())?;
                if let Err(e) = full.check_normalization(&setting.ctx) {
                    row.failures.push(e.to_string());
                }
                let m = fc.find(&data)?;
                let key = sort_key(rep);
                let hit = m.classes.iter().position(|c| c.members.iter().any(|&i| sort_key(&m.matches[i]) == key));
                match (hit, m.classes.len()) {
                    (Some(_), 1) => {}
                    (None, _) => row.failures.push("not matched by its own eigenvalues".into()),
                    (Some(_), n) => {
                        let others: Vec<String> = m
                            .classes
                            .iter()
                            .map(|c| m.matches[c.representative].to_text(&setting.names))
                            .collect();
                        row.failures.push(format!("{n} matching classes: {}", others.join("; ")));
                    }
                }
            }
        }
        found_reps.extend(reps.into_iter().take(1));
        row.elapsed = start.elapsed();
        report.rows.push(row);
    }
    if opts.rows == RowSelection::All {
        report.warnings.extend(table_lints(&found_reps, &setting.names));
    }
    Ok(report)
}

/// Computed operators covered by `labels`: `Full` when k = 1, 2, 3 are all
/// present for l, `First` when only k = 1 is.
pub fn computed_ops(labels: &[Label]) -> Result<Vec<ComputedOp>> {
    let mut by_prime: BTreeMap<u64, Vec<u8>> = BTreeMap::new();
    for lab in labels.iter().filter(|l| (1..=3).contains(&l.k)) {
        by_prime.entry(lab.l).or_default().push(lab.k);
    }
    by_prime
        .into_iter()
        .map(|(l, mut ks)| {
            ks.sort_unstable();
            ks.dedup();
            match ks.as_slice() {
                [1, 2, 3] => Ok(ComputedOp::Full(l)),
                [1] => Ok(ComputedOp::First(l)),
                _ => parse(format!("operators at {l} are neither T(l,1) alone nor T(l,1..3)")),
            }
        })
        .collect()
}

/// One table for a decomposed space: each Galois orbit becomes a row whose
/// rep is the unique match of its eigenvalues, or `?` when there is none.
pub fn table_from_decomposition(
    finder: &FinderContext,
    names: &CharNames,
    decomposition: &crate::eigen::Decomposition,
    computed: Vec<ComputedOp>,
) -> Result<(Table, Vec<crate::finder::MatchReport>)> {
    let ctx = finder.rep_context();
    let f = ctx.field();
    let orbits = crate::eigen::space_orbits(&decomposition.spaces, &ctx.eta);
    let mut rows = Vec::new();
    let mut reports = Vec::new();
    for o in &orbits {
        let space = &decomposition.spaces[o.representative];
        let report = finder.find(&HeckeData::from_eigensystem(&space.eigensystem))?;
        let rep = report.unique_rep().map_or_else(|| "?".to_string(), |r| r.to_text(names));
        rows.push(TableRow { galois_mult: o.galois_mult, hecke_mult: space.hecke_mult, rep });
        reports.push(report);
    }
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by(|&a, &b| rows[a].rep.cmp(&rows[b].rep));
    let rows = order.iter().map(|&i| rows[i].clone()).collect();
    let reports = order.iter().map(|&i| reports[i].clone()).collect();
    let header = TableHeader {
        level: ctx.level(),
        g: ctx.g,
        eta: names.name(&ctx.eta).unwrap_or_default(),
        p: f.p(),
        r: f.r(),
        computed,
        dim: decomposition.spaces.iter().map(|s| s.hecke_mult).sum(),
        tag: None,
    };
    Ok((Table { header, rows }, reports))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "Level N = 1. Coeffs Sym^2(V). Field GF(12379).
Dim 0.

Level N = 3. Coeffs V*chi3. Field GF(12379).
Computed T2, T5, T7, T11. Dim 2.
1 | 1 | e^0 + e^1 + chi3*e^2 + e^4
1 | 1 | chi3*e^0 + e^1 + e^2 + e^4

Level N = 5. Coeffs Sym^5(V)*chi5. Field GF(16001^6).
Computed T2, T3, T(7,1). Dim 4. [X]
2 | 1 | e^0 + e^1 + e^2*s[5.7.c.a]
";

    #[test]
    fn parse_and_emit() {
        let t = parse_tables(SAMPLE).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[0].header.dim, 0);
        assert_eq!(t[1].header.labels().len(), 12);
        let h = &t[2].header;
        assert_eq!((h.level, h.g, h.eta.as_str(), h.p, h.r), (5, 5, "chi5", 16001, 6));
        assert_eq!(h.computed, vec![ComputedOp::Full(2), ComputedOp::Full(3), ComputedOp::First(7)]);
        assert_eq!(h.tag.as_deref(), Some("[X]"));
        assert_eq!(emit_tables(&t), SAMPLE);
    }

    #[test]
    fn verify_character_table() {
        let t = parse_tables(SAMPLE).unwrap();
        let store = NewformStore::default();
        let mut cache = ReductionCache::default();
        let r = verify_table(&t[1], &store, &mut cache, VerifyOptions::default()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.warnings.is_empty(), "{:?}", r.warnings);
        let mut broken = t[1].clone();
        broken.rows[0].rep = "e^0 + e^1 + e^2 + e^4".into();
        let r = verify_table(&broken, &store, &mut cache, VerifyOptions::default()).unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn errata_lookup() {
        let e = Errata::parse("# c\n3 | V*chi3 | a => b\n3 | V | 2 | 1 | c => 1 | 2 | c\n").unwrap();
        let t = parse_tables(SAMPLE).unwrap();
        let row = |gm, hm, rep: &str| TableRow { galois_mult: gm, hecke_mult: hm, rep: rep.into() };
        assert_eq!(e.correct(&t[1].header, &row(1, 1, "a")), Some(row(1, 1, "b")));
        assert_eq!(e.correct(&t[0].header, &row(1, 1, "a")), None);
        assert!(Errata::parse("3 | V | a").is_err());
        assert!(Errata::parse("3 | V | 1 | a => b").is_err());
        let mut h = t[0].header.clone();
        (h.level, h.g, h.eta) = (3, 1, String::new());
        assert_eq!(h.coeffs(), "V");
        assert_eq!(e.correct(&h, &row(2, 1, "c")), Some(row(1, 2, "c")));
        assert_eq!(e.correct(&h, &row(1, 1, "c")), None);
    }
}
