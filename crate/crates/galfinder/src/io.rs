//! Plain-text files for Hecke data and operator matrices.
//!
//! Both formats start with `key value` header lines and allow `#` comments.
//! A Hecke data file looks like
//!
//! ```text
//! field GF(12379^1):modulus=0,1
//! level 3
//! g 1
//! eta chi3
//! 2 1 12
//! 2 2 40
//! ```
//!
//! Field elements are written as comma-separated coefficients in the power
//! basis of the modulus. `field GF(p^r)` without a modulus selects the
//! default one. An operator file has `field`, `dim`, optional `level` and
//! `eta`, then for each operator a line `T l k` followed by `dim` rows of
//! space-separated entries.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::characters::{CharNames, DirichletChar};
use crate::eigen::{Label, OperatorFamily};
use crate::error::{parse, Error, Result};
use crate::field::{make_field, ExtField};
use crate::galrep::{HeckeData, RepContext};
use crate::matrix::Matrix;

/// `GF(p^r)` or a full descriptor with an explicit modulus.
pub fn parse_field(s: &str) -> Result<Arc<ExtField>> {
    let s = s.trim();
    if s.contains(":modulus=") {
        return ExtField::parse_descriptor(s);
    }
    let inner = s
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("bad field {s:?}")))?;
    let (p, r) = inner.split_once('^').unwrap_or((inner, "1"));
    let p = p.trim().parse().map_err(|_| Error::Parse(format!("bad p in {s:?}")))?;
    let r = r.trim().parse().map_err(|_| Error::Parse(format!("bad r in {s:?}")))?;
    make_field(p, r)
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn header_value<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    line.strip_prefix(key).filter(|r| r.starts_with(' ')).map(str::trim)
}

#[derive(Clone, Debug)]
pub struct HeckeFile {
    pub ctx: Arc<RepContext>,
    pub names: CharNames,
    pub data: HeckeData,
}

pub fn parse_hecke_file(text: &str) -> Result<HeckeFile> {
    let mut field = None;
    let mut level = None;
    let mut g = None;
    let mut eta_text = None;
    let mut entries = Vec::new();
    for (no, line) in content_lines(text) {
        let err = |what: &str| Error::Parse(format!("line {no}: {what}: {line:?}"));
        if let Some(v) = header_value(line, "field") {
            field = Some(parse_field(v)?);
        } else if let Some(v) = header_value(line, "level") {
            level = Some(v.parse::<u64>().map_err(|_| err("bad level"))?);
        } else if let Some(v) = header_value(line, "g") {
            g = Some(v.parse::<u32>().map_err(|_| err("bad g"))?);
        } else if let Some(v) = header_value(line, "eta") {
            eta_text = Some(v.to_string());
        } else {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(err("expected 'l k value'"));
            }
            let l = parts[0].parse::<u64>().map_err(|_| err("bad l"))?;
            let k = parts[1].parse::<u8>().ok().filter(|&k| k <= 4).ok_or_else(|| err("k must be 0..4"))?;
            entries.push((no, Label::new(l, k), parts[2].to_string()));
        }
    }
    let field = field.ok_or_else(|| Error::Parse("missing 'field' header".into()))?;
    let level = level.ok_or_else(|| Error::Parse("missing 'level' header".into()))?;
    let g = g.ok_or_else(|| Error::Parse("missing 'g' header".into()))?;
    let names = CharNames::new(level, &field)?;
    let eta = names.parse(eta_text.as_deref().unwrap_or("1"))?;
    let ctx = RepContext::new(g, eta);
    let mut data = HeckeData::default();
    for (no, label, v) in entries {
        let value = field.parse_element(&v).map_err(|e| Error::Parse(format!("line {no}: {e}")))?;
        if data.values.insert(label, value).is_some() {
            return parse(format!("line {no}: {label} given twice"));
        }
    }
    data.check_normalization(&ctx)?;
    Ok(HeckeFile { ctx, names, data })
}

pub fn write_hecke_file(ctx: &RepContext, names: &CharNames, data: &HeckeData) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "field {}", ctx.field().descriptor());
    let _ = writeln!(s, "level {}", ctx.level());
    let _ = writeln!(s, "g {}", ctx.g);
    let _ = writeln!(s, "eta {}", names.name(&ctx.eta).unwrap_or_else(|| "1".into()));
    for (lab, v) in &data.values {
        let _ = writeln!(s, "{} {} {}", lab.l, lab.k, v);
    }
    s
}

#[derive(Clone, Debug)]
pub struct OperatorFile {
    pub family: OperatorFamily,
    /// Nebentype used to group eigensystems into orbits; trivial mod 1 when
    /// the file gives none.
    pub eta: DirichletChar,
}

pub fn parse_operator_file(text: &str) -> Result<OperatorFile> {
    let mut field: Option<Arc<ExtField>> = None;
    let mut dim = None;
    let mut level = 1;
    let mut eta_text = "1".to_string();
    let mut labels = Vec::new();
    let mut matrices = Vec::new();
    let mut rows: Vec<Vec<crate::field::FieldElement>> = Vec::new();
    let mut in_matrix = false;
    for (no, line) in content_lines(text) {
        let err = |what: &str| Error::Parse(format!("line {no}: {what}: {line:?}"));
        if in_matrix {
            let (f, n) = (field.as_ref().unwrap(), dim.unwrap());
            let row = line
                .split_whitespace()
                .map(|e| f.parse_element(e))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| Error::Parse(format!("line {no}: {e}")))?;
            if row.len() != n {
                return Err(err(&format!("expected {n} entries")));
            }
            rows.push(row);
            if rows.len() == n {
                matrices.push(Matrix::from_rows(std::mem::take(&mut rows)));
                in_matrix = false;
            }
            continue;
        }
        if let Some(v) = header_value(line, "field") {
            field = Some(parse_field(v)?);
        } else if let Some(v) = header_value(line, "dim") {
            dim = Some(v.parse::<usize>().map_err(|_| err("bad dim"))?);
        } else if let Some(v) = header_value(line, "level") {
            level = v.parse::<u64>().map_err(|_| err("bad level"))?;
        } else if let Some(v) = header_value(line, "eta") {
            eta_text = v.to_string();
        } else if let Some(v) = header_value(line, "T") {
            let (l, k) = v.split_once(' ').ok_or_else(|| err("expected 'T l k'"))?;
            let l = l.trim().parse::<u64>().map_err(|_| err("bad l"))?;
            let k = k.trim().parse::<u8>().map_err(|_| err("bad k"))?;
            if field.is_none() || dim.is_none() {
                return Err(err("'field' and 'dim' must come before the matrices"));
            }
            labels.push(Label::new(l, k));
            in_matrix = dim != Some(0);
            if !in_matrix {
                matrices.push(Matrix::zeros(field.as_ref().unwrap(), 0, 0));
            }
        } else {
            return Err(err("unexpected line"));
        }
    }
    if in_matrix {
        return parse("file ends inside a matrix");
    }
    let field = field.ok_or_else(|| Error::Parse("missing 'field' header".into()))?;
    let eta = CharNames::new(level, &field)?.parse(&eta_text)?;
    Ok(OperatorFile { family: OperatorFamily::new(field, labels, matrices)?, eta })
}

pub fn write_operator_file(family: &OperatorFamily, eta: Option<(&DirichletChar, &CharNames)>) -> String {
    let mut s = String::new();
    let f = family.field();
    let _ = writeln!(s, "field {}", f.descriptor());
    let _ = writeln!(s, "dim {}", family.dim());
    if let Some((eta, names)) = eta {
        let _ = writeln!(s, "level {}", eta.modulus());
        let _ = writeln!(s, "eta {}", names.name(eta).unwrap_or_else(|| "1".into()));
    }
    for (lab, m) in family.labels().iter().zip(family.matrices()) {
        let _ = writeln!(s, "T {} {}", lab.l, lab.k);
        for i in 0..m.rows() {
            let row: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galrep::RepSpec;

    #[test]
    fn hecke_file_round_trip() {
        let f = make_field(12379, 1).unwrap();
        let names = CharNames::new(3, &f).unwrap();
        let ctx = RepContext::new(1, names.parse("chi3").unwrap());
        let rep = RepSpec::parse("chi3*e^0 + e^1 + e^2 + e^4", &names).unwrap().instantiate(&ctx, None).unwrap();
        let labels: Vec<Label> = [2, 5].iter().flat_map(|&l| (0..=4).map(move |k| Label::new(l, k))).collect();
        let data = rep.hecke_data(&labels).unwrap();
        let text = write_hecke_file(&ctx, &names, &data);
        let back = parse_hecke_file(&text).unwrap();
        assert_eq!(back.data, data);
        assert_eq!(back.ctx.eta, ctx.eta);
        assert_eq!(write_hecke_file(&back.ctx, &back.names, &back.data), text);
    }

    #[test]
    fn hecke_file_errors() {
        let head = "field GF(12379)\nlevel 3\ng 1\neta chi3\n";
        assert!(parse_hecke_file(&format!("{head}2 1 5\n")).is_ok());
        assert!(parse_hecke_file(&format!("{head}2 5 5\n")).is_err());
        assert!(parse_hecke_file(&format!("{head}2 1 5\n2 1 6\n")).is_err());
        // a(l,0) must be 1
        assert!(parse_hecke_file(&format!("{head}2 0 5\n")).is_err());
        assert!(parse_hecke_file("level 3\ng 1\n").is_err());
        assert!(parse_hecke_file("field GF(12379)\nlevel 3\ng 1\neta chi7\n").is_err());
    }

    #[test]
    fn operator_file_round_trip() {
        let text = "# two operators\nfield GF(7^2)\ndim 2\nT 2 1\n1,0 0,0\n0,0 3,1\nT 3 1\n2,0 0,0\n0,0 2,0\n";
        let ops = parse_operator_file(text).unwrap();
        assert_eq!(ops.family.dim(), 2);
        assert_eq!(ops.family.labels(), &[Label::new(2, 1), Label::new(3, 1)]);
        let again = write_operator_file(&ops.family, None);
        let back = parse_operator_file(&again).unwrap();
        assert_eq!(back.family.matrices(), ops.family.matrices());
        assert!(parse_operator_file("field GF(7)\ndim 2\nT 2 1\n1 0\n").is_err());
        assert!(parse_operator_file("dim 1\nT 2 1\n1\n").is_err());
    }
}
