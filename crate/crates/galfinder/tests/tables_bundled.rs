use galfinder::newform::NewformStore;
use galfinder::tables::{bundled_tables, emit_tables, verify_table, Errata, ReductionCache, VerifyOptions};

#[test]
fn bundled_tables_round_trip() {
    let text = include_str!("../data/tables.txt");
    let t = bundled_tables().unwrap();
    assert_eq!(emit_tables(&t), text);
}

#[test]
fn character_tables_verify_after_errata() {
    let tables = Errata::bundled().unwrap().apply(&bundled_tables().unwrap());
    let store = NewformStore::default();
    let mut cache = ReductionCache::default();
    let mut bad = Vec::new();
    for t in tables.iter().filter(|t| !t.rows.is_empty() && t.rows.iter().all(|r| !r.rep.contains("s["))) {
        let r = verify_table(t, &store, &mut cache, VerifyOptions::default()).unwrap();
        if !r.passed() {
            bad.push(format!("{r:?}"));
        }
    }
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}

#[test]
fn printed_tables_fail_exactly_where_errata_apply() {
    let errata = Errata::bundled().unwrap();
    assert_eq!(errata.len(), 24);
    let store = NewformStore::default();
    let mut cache = ReductionCache::default();
    for t in bundled_tables().unwrap().iter().filter(|t| !t.rows.is_empty() && t.rows.iter().all(|r| !r.rep.contains("s["))) {
        let touched = t.rows.iter().any(|r| errata.correct(&t.header, r).is_some());
        let r = verify_table(t, &store, &mut cache, VerifyOptions::default()).unwrap();
        assert_eq!(r.passed(), !touched, "{}", r.title);
    }
}
