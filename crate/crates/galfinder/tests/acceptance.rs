//! Acceptance checks. Runs without the libtest harness and prints one
//! PASS/FAIL line per criterion; exits nonzero if any criterion fails.
//!
//! Set `GALFINDER_ACCEPTANCE=quick` to skip the newform round trip.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use galfinder::characters::{basis_rows, CharNames, Parity};
use galfinder::eigen::{joint_eigenspaces, Label, OperatorFamily};
use galfinder::field::{make_field, ExtField, FieldElement};
use galfinder::finder::{sort_key, FilterOptions, FinderContext};
use galfinder::galrep::{GaloisRep, RepSpec};
use galfinder::matrix::Matrix;
use galfinder::newform::NewformStore;
use galfinder::symg::{det4, dimension, mat_mul, CoeffVector, IntMatrix, SymGModule};
use galfinder::tables::{
    bundled_tables, instantiate_row, verify_table, Errata, ReductionCache, RowSelection, Table, TableSetting,
    VerifyOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CHAR_TABLE_LIMIT: Duration = Duration::from_secs(1);
const CHAR_ROUND_TRIP_LIMIT: Duration = Duration::from_secs(60);
const NEWFORM_ROUND_TRIP_LIMIT: Duration = Duration::from_secs(30 * 60);
const NEWFORM_ROW_LIMIT: Duration = Duration::from_secs(30);
const EIGEN_LIMIT: Duration = Duration::from_secs(60);
const PLANTED_INSTANCES: usize = 50;
const PLANTED_MAX_DIM: usize = 20;
const SYMG_PAIRS: usize = 100;
const SYMG_MAX_DEGREE_COMPOSITION: u32 = 4;
const SYMG_MAX_DEGREE_DIMENSION: u32 = 12;
const INVARIANT_PRIMES: [u64; 5] = [2, 3, 5, 7, 11];
const GALOIS_MULTS: [usize; 6] = [1, 2, 3, 4, 5, 6];
const HECKE_MULTS: [usize; 5] = [1, 3, 4, 6, 9];

/// name, p, order, parity of the basis characters, typed in independently
/// of the bundled data file.
const EXPECTED_CHARACTERS: [(&str, u64, u64, Parity); 22] = [
    ("chi1", 12379, 1, Parity::Even),
    ("chi2", 12379, 1, Parity::Even),
    ("chi3", 12379, 2, Parity::Odd),
    ("chi4", 12379, 2, Parity::Odd),
    ("chi5", 16001, 4, Parity::Odd),
    ("chi6", 12379, 2, Parity::Odd),
    ("chi7", 12037, 6, Parity::Odd),
    ("chi8_0", 12037, 2, Parity::Odd),
    ("chi8_1", 12037, 2, Parity::Even),
    ("chi9", 12037, 6, Parity::Odd),
    ("chi10", 12037, 4, Parity::Odd),
    ("chi11", 16001, 10, Parity::Odd),
    ("chi12_0", 16001, 2, Parity::Odd),
    ("chi12_1", 16001, 2, Parity::Odd),
    ("chi13", 12037, 12, Parity::Odd),
    ("chi14", 12037, 6, Parity::Odd),
    ("chi15_0", 12037, 2, Parity::Odd),
    ("chi15_1", 12037, 4, Parity::Odd),
    ("chi16_0", 16001, 2, Parity::Odd),
    ("chi16_1", 16001, 4, Parity::Even),
    ("chi17", 16001, 16, Parity::Odd),
    ("chi18", 12379, 6, Parity::Odd),
];

type Outcome = Result<String, String>;

fn golden_tables() -> (Vec<Table>, usize) {
    let printed = bundled_tables().expect("bundled tables parse");
    let errata = Errata::bundled().expect("bundled errata parse");
    (errata.apply(&printed), errata.len())
}

fn character_table() -> Outcome {
    let start = Instant::now();
    let rows = basis_rows();
    let mut bad = Vec::new();
    if rows.len() != EXPECTED_CHARACTERS.len() {
        bad.push(format!("{} rows, expected {}", rows.len(), EXPECTED_CHARACTERS.len()));
    }
    let mut nontrivial = 0;
    for (row, &(name, p, order, parity)) in rows.iter().zip(&EXPECTED_CHARACTERS) {
        let f = make_field(p, 1).map_err(|e| e.to_string())?;
        let chi = row.build(&f).map_err(|e| format!("{name}: {e}"))?;
        let sign = chi.eval(-1).map_err(|e| e.to_string())?;
        let computed_parity = if f.is_one(&sign) { Parity::Even } else { Parity::Odd };
        if row.name != name || row.p != p || chi.order() != order || computed_parity != parity {
            bad.push(format!("{name}: order {} parity {computed_parity}", chi.order()));
        }
        nontrivial += usize::from(order > 1);
    }
    let t = start.elapsed();
    if t > CHAR_TABLE_LIMIT {
        bad.push(format!("took {t:?}"));
    }
    if bad.is_empty() {
        Ok(format!("{} rows ({nontrivial} nontrivial) reproduce order and parity in {t:.2?}", rows.len()))
    } else {
        Err(bad.join("; "))
    }
}

fn round_trip(store: &NewformStore, rows: RowSelection, total_limit: Duration, row_limit: Option<Duration>) -> Outcome {
    let start = Instant::now();
    let (tables, _) = golden_tables();
    let mut cache = ReductionCache::default();
    let opts = VerifyOptions { rows, ..Default::default() };
    let (mut checked, mut failures, mut slowest) = (0, Vec::new(), Duration::ZERO);
    for t in &tables {
        if !t.rows.iter().any(|r| rows.includes(&r.rep)) {
            continue;
        }
        let report = match verify_table(t, store, &mut cache, opts) {
            Ok(r) => r,
            Err(e) => {
                failures.push(format!("{}: {e}", t.header.coeffs()));
                continue;
            }
        };
        for r in report.rows.iter().filter(|r| r.checked) {
            checked += 1;
            slowest = slowest.max(r.elapsed);
            if !r.failures.is_empty() {
                failures.push(format!("N={} {}: {} ({})", t.header.level, t.header.coeffs(), r.rep, r.failures.join(", ")));
            }
            if row_limit.is_some_and(|l| r.elapsed > l) {
                failures.push(format!("N={} {}: {} took {:?}", t.header.level, t.header.coeffs(), r.rep, r.elapsed));
            }
        }
        failures.extend(report.failures.iter().map(|f| format!("N={} {}: {f}", t.header.level, t.header.coeffs())));
    }
    let t = start.elapsed();
    if t > total_limit {
        failures.push(format!("took {t:?}"));
    }
    if failures.is_empty() {
        Ok(format!("{checked} rows matched uniquely in {t:.1?} (slowest row {slowest:.2?})"))
    } else {
        let n = failures.len();
        failures.truncate(8);
        Err(format!("{n} problems over {checked} rows: {}", failures.join(" | ")))
    }
}

/// Every valid instantiation of every row, with its table's finder.
struct Golden {
    table: Table,
    setting: TableSetting,
    finder: FinderContext,
    reps: Vec<(String, GaloisRep)>,
}

fn golden_reps(store: &NewformStore) -> Result<Vec<Golden>, String> {
    let (tables, _) = golden_tables();
    let mut cache = ReductionCache::default();
    let mut out = Vec::new();
    for t in tables.into_iter().filter(|t| !t.rows.is_empty()) {
        let h = &t.header;
        let setting = TableSetting::new(h).map_err(|e| e.to_string())?;
        let weights: Vec<u32> = galfinder::finder::twist_shapes(h.g).iter().map(|s| s.k).collect();
        let forms = cache.candidates(store, h.level, &weights, &setting.field).map_err(|e| e.to_string())?;
        let finder = FinderContext::with_forms(setting.ctx.clone(), forms, &h.labels(), store.ap_bound.max(11))
            .map_err(|e| e.to_string())?;
        let mut reps = Vec::new();
        let texts: BTreeSet<&String> = t.rows.iter().map(|r| &r.rep).collect();
        for text in texts {
            let spec = RepSpec::parse(text, &setting.names).map_err(|e| format!("{text}: {e}"))?;
            let (valid, _) = instantiate_row(&spec, &setting, store, &mut cache).map_err(|e| format!("{text}: {e}"))?;
            if valid.is_empty() {
                return Err(format!("N={} {}: {text} has no valid instantiation", h.level, h.coeffs()));
            }
            reps.extend(valid.into_iter().map(|r| (text.clone(), r)));
        }
        out.push(Golden { table: t, setting, finder, reps });
    }
    Ok(out)
}

fn consistency(golden: &[Golden], corrections: usize) -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    for gold in golden {
        let ctx = &gold.setting.ctx;
        let f = ctx.field();
        let g = ctx.g;
        for (text, rep) in &gold.reps {
            count += 1;
            let mut ht = rep.hodge_tate();
            ht.sort_unstable();
            if ht != [0, 1, 2, g + 3] {
                bad.push(format!("{text}: Hodge-Tate {ht:?}"));
            }
            if rep.oddness() != [-1, -1, 1, 1] {
                bad.push(format!("{text}: complex conjugation {:?}", rep.oddness()));
            }
            for &l in INVARIANT_PRIMES.iter().filter(|&&l| ctx.is_good_prime(l)) {
                let cp = rep.charpoly(l).map_err(|e| e.to_string())?;
                let eta = ctx.eta.eval(l as i64).map_err(|e| e.to_string())?;
                let want = f.mul(&eta, &f.pow_u64(&f.from_u64(l), (g + 6) as u64));
                if cp.coeff(f, 4) != want {
                    bad.push(format!("{text}: X^4 coefficient at {l}"));
                }
                let data = rep.hecke_data(&[Label::new(l, 0), Label::new(l, 4)]).map_err(|e| e.to_string())?;
                let a4 = f.mul(&eta, &f.pow_u64(&f.from_u64(l), g as u64));
                if !f.is_one(&data.values[&Label::new(l, 0)]) || data.values[&Label::new(l, 4)] != a4 {
                    bad.push(format!("{text}: a({l},0) or a({l},4)"));
                }
            }
        }
    }
    if bad.is_empty() {
        Ok(format!("{count} instantiations over {} tables, zero exceptions ({corrections} printed rows corrected first)", golden.len()))
    } else {
        let n = bad.len();
        bad.truncate(8);
        Err(format!("{n} exceptions: {}", bad.join(" | ")))
    }
}

fn random_element<R: Rng>(f: &ExtField, rng: &mut R) -> FieldElement {
    f.random(rng)
}

fn random_invertible<R: Rng>(f: &ExtField, n: usize, rng: &mut R) -> (Matrix, Matrix) {
    loop {
        let m = Matrix::from_rows((0..n).map(|_| (0..n).map(|_| random_element(f, rng)).collect()).collect());
        if let Some(inv) = m.inverse(f) {
            return (m, inv);
        }
    }
}

fn eigen_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let fields = [make_field(12037, 1).unwrap(), make_field(12037, 2).unwrap()];
    let labels = [2u64, 3, 5, 7].map(|l| Label::new(l, 1));
    for case in 0..PLANTED_INSTANCES {
        let f = &fields[case % 2];
        let dim = rng.gen_range(1..=PLANTED_MAX_DIM);
        let ops = rng.gen_range(2..=4);
        let systems = rng.gen_range(1..=dim.min(6));
        // multiplicities: each system at least once, the rest spread at random
        let mut mult = vec![1usize; systems];
        for _ in systems..dim {
            mult[rng.gen_range(0..systems)] += 1;
        }
        let values: Vec<Vec<FieldElement>> =
            (0..systems).map(|_| (0..ops).map(|_| random_element(f, &mut rng)).collect()).collect();
        let (p, pinv) = random_invertible(f, dim, &mut rng);
        let matrices: Vec<Matrix> = (0..ops)
            .map(|i| {
                let diag: Vec<FieldElement> =
                    (0..systems).flat_map(|s| std::iter::repeat(values[s][i].clone()).take(mult[s])).collect();
                p.mul(f, &Matrix::diagonal(f, &diag)).mul(f, &pinv)
            })
            .collect();
        let family = OperatorFamily::new(f.clone(), labels[..ops].to_vec(), matrices.clone()).map_err(|e| e.to_string())?;
        let d = joint_eigenspaces(&family).map_err(|e| format!("case {case}: {e}"))?;
        let mut expected: Vec<(Vec<FieldElement>, usize)> = values.iter().cloned().zip(mult.iter().copied()).collect();
        expected.sort();
        let mut found: Vec<(Vec<FieldElement>, usize)> =
            d.spaces.iter().map(|s| (s.eigensystem.value_list(), s.hecke_mult)).collect();
        found.sort();
        if found != expected || !d.semisimple {
            return Err(format!("case {case} (dim {dim}, {ops} operators): recovered {} spaces", found.len()));
        }
        for s in &d.spaces {
            for v in &s.basis {
                for (t, lam) in matrices.iter().zip(s.eigensystem.value_list()) {
                    let tv = t.mul_vec(f, v);
                    let lv: Vec<FieldElement> = v.iter().map(|x| f.mul(x, &lam)).collect();
                    if tv != lv {
                        return Err(format!("case {case}: basis vector is not an eigenvector"));
                    }
                }
            }
        }
    }
    // a Jordan block and a commuting polynomial in it
    let f = &fields[0];
    let mut rng2 = ChaCha8Rng::seed_from_u64(7);
    let (a, b) = (f.from_u64(5), f.from_u64(9));
    let mut j = Matrix::diagonal(f, &[a.clone(), a.clone(), b.clone(), b]);
    j.set(0, 1, f.one());
    let (p, pinv) = random_invertible(f, 4, &mut rng2);
    let t1 = p.mul(f, &j).mul(f, &pinv);
    let t2 = t1.mul(f, &t1);
    let family = OperatorFamily::new(f.clone(), labels[..2].to_vec(), vec![t1, t2]).map_err(|e| e.to_string())?;
    let d = joint_eigenspaces(&family).map_err(|e| e.to_string())?;
    if d.semisimple {
        return Err("Jordan block reported as semisimple".into());
    }
    let t = start.elapsed();
    if t > EIGEN_LIMIT {
        return Err(format!("took {t:?}"));
    }
    Ok(format!("{PLANTED_INSTANCES} planted instances recovered exactly, Jordan block flagged, {t:.2?}"))
}

fn symg_properties() -> Outcome {
    for g in 0..=SYMG_MAX_DEGREE_DIMENSION {
        let b = (g as usize + 1) * (g as usize + 2) * (g as usize + 3) / 6;
        if dimension(g) != b {
            return Err(format!("dimension at g = {g}"));
        }
    }
    let (p, n) = (12037u64, 13u64);
    let f = make_field(p, 1).unwrap();
    let eta = CharNames::new(n, &f).unwrap().parse("chi13").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let random_s = |rng: &mut ChaCha8Rng| -> IntMatrix {
        loop {
            let mut s = [[0i64; 4]; 4];
            for row in s.iter_mut().take(3) {
                for x in row.iter_mut() {
                    *x = rng.gen_range(-4..=4);
                }
            }
            for j in 0..3 {
                s[3][j] = n as i64 * rng.gen_range(-1..=1);
            }
            s[3][3] = rng.gen_range(1..=30);
            let d = det4(&s);
            if d > 0 && galfinder::characters::gcd(d as u64, p * n) == 1 {
                return s;
            }
        }
    };
    let mut pairs = 0;
    while pairs < SYMG_PAIRS {
        let (s1, s2) = (random_s(&mut rng), random_s(&mut rng));
        let s12 = mat_mul(&s1, &s2);
        let d = det4(&s12);
        if d <= 0 || galfinder::characters::gcd((d % (p * n) as i128) as u64, p * n) != 1 {
            continue;
        }
        pairs += 1;
        for g in 0..=SYMG_MAX_DEGREE_COMPOSITION {
            let m = SymGModule::new(g, eta.clone());
            let v = CoeffVector { coeffs: (0..dimension(g)).map(|_| f.from_u64(rng.gen_range(0..p))).collect() };
            let lhs = m.act(&s12, &v).map_err(|e| e.to_string())?;
            let rhs = m.act(&s2, &m.act(&s1, &v).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            if lhs != rhs {
                return Err(format!("composition fails at g = {g} for {s1:?}, {s2:?}"));
            }
        }
    }
    for g in 0..=SYMG_MAX_DEGREE_COMPOSITION {
        let m = SymGModule::new(g, eta.clone());
        let v = CoeffVector { coeffs: (0..dimension(g)).map(|i| f.from_u64(i as u64 + 1)).collect() };
        for l in [2i64, 3, 5, 7, 11] {
            let s = [[l, 0, 0, 0], [0, l, 0, 0], [0, 0, l, 0], [0, 0, 0, l]];
            let c = f.mul(&eta.eval(l).unwrap(), &f.pow_u64(&f.from_u64(l as u64), g as u64));
            let want: Vec<FieldElement> = v.coeffs.iter().map(|x| f.mul(x, &c)).collect();
            if m.act(&s, &v).map_err(|e| e.to_string())?.coeffs != want {
                return Err(format!("scalar {l} at g = {g}"));
            }
        }
    }
    Ok(format!(
        "dimensions to g = {SYMG_MAX_DEGREE_DIMENSION}, {SYMG_PAIRS} composed pairs for g <= {SYMG_MAX_DEGREE_COMPOSITION}, scalars act by eta(l) l^g"
    ))
}

fn match_keys(report: &galfinder::finder::MatchReport) -> BTreeSet<Vec<(bool, u32, Vec<FieldElement>, String, usize)>> {
    report.matches.iter().map(sort_key).collect()
}

fn negative_controls(golden: &[Golden]) -> Outcome {
    let (mut perturbed, mut compared) = (0, 0);
    let mut bad = Vec::new();
    for gold in golden {
        let f = gold.setting.field.clone();
        let labels = gold.table.header.labels();
        let no_det = gold.finder.clone().with_options(FilterOptions { det: false, odd: true });
        for (text, rep) in &gold.reps {
            let data = rep.hecke_data(&labels).map_err(|e| e.to_string())?;
            let with = gold.finder.find(&data).map_err(|e| e.to_string())?;
            let without = no_det.find(&data).map_err(|e| e.to_string())?;
            compared += 1;
            if match_keys(&with) != match_keys(&without) {
                bad.push(format!("N={} {text}: det filter changes the match set", gold.table.header.level));
            }
            for lab in &labels {
                let mut d = data.clone();
                let v = d.values.get_mut(lab).unwrap();
                *v = f.add(v, &f.one());
                perturbed += 1;
                let r = gold.finder.find(&d).map_err(|e| e.to_string())?;
                if !r.matches.is_empty() {
                    bad.push(format!("N={} {text}: {lab} + 1 still matches", gold.table.header.level));
                }
            }
        }
    }
    if bad.is_empty() {
        Ok(format!("{perturbed} perturbed data sets match nothing; {compared} match sets unchanged without the det filter"))
    } else {
        let n = bad.len();
        bad.truncate(8);
        Err(format!("{n} problems: {}", bad.join(" | ")))
    }
}

fn multiplicity_audit() -> Outcome {
    let tables = bundled_tables().map_err(|e| e.to_string())?;
    let mut gm = BTreeSet::new();
    let mut hm = BTreeSet::new();
    let mut bad = Vec::new();
    for t in &tables {
        let total: usize = t.rows.iter().map(|r| r.galois_mult * r.hecke_mult).sum();
        if total != t.header.dim {
            bad.push(format!("N={} {}: {total} != Dim {}", t.header.level, t.header.coeffs(), t.header.dim));
        }
        for r in &t.rows {
            gm.insert(r.galois_mult);
            hm.insert(r.hecke_mult);
        }
    }
    if !gm.iter().all(|m| GALOIS_MULTS.contains(m)) {
        bad.push(format!("Galois multiplicities {gm:?}"));
    }
    if !hm.iter().all(|m| HECKE_MULTS.contains(m)) {
        bad.push(format!("Hecke multiplicities {hm:?}"));
    }
    if bad.is_empty() {
        Ok(format!("{} tables: Galois multiplicities {gm:?}, Hecke multiplicities {hm:?}", tables.len()))
    } else {
        Err(bad.join("; "))
    }
}

fn main() -> ExitCode {
    let quick = std::env::var("GALFINDER_ACCEPTANCE").is_ok_and(|v| v == "quick");
    let store = NewformStore::bundled().expect("bundled newforms load");
    let (_, corrections) = golden_tables();
    let mut results: Vec<(&str, Outcome)> = Vec::new();
    let mut run = |name: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let outcome = f();
        match &outcome {
            Ok(msg) => println!("PASS {name}: {msg}"),
            Err(msg) => println!("FAIL {name}: {msg}"),
        }
        results.push((name, outcome));
    };
    run("character table", &mut character_table);
    run("round trip, character rows", &mut || {
        round_trip(&store, RowSelection::CharactersOnly, CHAR_ROUND_TRIP_LIMIT, None)
    });
    if quick {
        println!("SKIP round trip, newform rows");
    } else {
        run("round trip, newform rows", &mut || {
            round_trip(&store, RowSelection::NewformsOnly, NEWFORM_ROUND_TRIP_LIMIT, Some(NEWFORM_ROW_LIMIT))
        });
    }
    let golden = golden_reps(&store);
    run("consistency invariants", &mut || match &golden {
        Ok(g) => consistency(g, corrections),
        Err(e) => Err(e.clone()),
    });
    run("eigen engine oracle", &mut eigen_oracle);
    run("Sym^g module", &mut symg_properties);
    run("negative controls", &mut || match &golden {
        Ok(g) => negative_controls(g),
        Err(e) => Err(e.clone()),
    });
    run("multiplicity audit", &mut multiplicity_audit);
    let failed = results.iter().filter(|(_, o)| o.is_err()).count();
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
