//! `galfinder` command-line tool. Exit status: 0 on success, 1 when a
//! verification fails, 2 on bad input.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use galfinder::characters::{basis_rows, enumerate_chars, gcd, mult_order, unit_group, CharNames};
use galfinder::eigen::{joint_eigenspaces, space_orbits, Label};
use galfinder::error::Error;
use galfinder::field::{make_field, ExtField, PrimeModulus};
use galfinder::finder::{FilterOptions, FinderContext};
use galfinder::galrep::{RepContext, RepSpec};
use galfinder::io::{parse_field, parse_hecke_file, parse_operator_file, write_hecke_file};
use galfinder::newform::{choose_r, reduce, NewformStore};
use galfinder::tables::{
    bundled_tables, computed_ops, emit_table, emit_tables, parse_computed, parse_tables, table_from_decomposition, verify_table,
    ComputedOp, Errata, ReductionCache, VerifyOptions,
};

#[derive(Parser)]
#[command(name = "galfinder", version, about = "Find reducible Galois representations matching Hecke eigenvalues")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct FormsArg {
    /// Newform fixture (JSON); the bundled one when omitted.
    #[arg(long)]
    forms: Option<PathBuf>,
}

impl FormsArg {
    fn load(&self) -> Result<NewformStore> {
        Ok(match &self.forms {
            Some(p) => NewformStore::load(p)?,
            None => NewformStore::bundled()?,
        })
    }
}

#[derive(Args, Clone, Copy)]
struct FilterArgs {
    /// Skip the determinant filter.
    #[arg(long)]
    no_det: bool,
    /// Skip the complex conjugation filter.
    #[arg(long)]
    no_odd: bool,
}

impl FilterArgs {
    fn options(self) -> FilterOptions {
        FilterOptions { det: !self.no_det, odd: !self.no_odd }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the Dirichlet characters mod N with values in GF(p^r).
    Chars {
        #[arg(long)]
        modulus: u64,
        #[arg(long)]
        p: u64,
        /// Defaults to the least r for which all characters mod N exist.
        #[arg(long)]
        r: Option<usize>,
    },
    /// Reduce newforms modulo the primes of their coefficient fields above p.
    Reduce {
        #[command(flatten)]
        forms: FormsArg,
        #[arg(long)]
        p: u64,
        /// Defaults to the least r over which every selected form splits.
        #[arg(long)]
        r: Option<usize>,
        /// Restrict to one label.
        #[arg(long)]
        label: Option<String>,
        /// Restrict to levels dividing N.
        #[arg(long)]
        level: Option<u64>,
    },
    /// Decompose commuting operators into joint eigenspaces.
    Eigen {
        #[arg(long)]
        ops: PathBuf,
    },
    /// Match a Hecke eigensystem against candidate representations.
    Find {
        /// Checked against the data file header when given.
        #[arg(long)]
        level: Option<u64>,
        #[arg(long)]
        g: Option<u32>,
        #[arg(long)]
        eta: Option<String>,
        #[arg(long)]
        data: PathBuf,
        #[command(flatten)]
        forms: FormsArg,
        #[command(flatten)]
        filters: FilterArgs,
        /// Print every match, not only class representatives.
        #[arg(long)]
        all: bool,
    },
    /// Write the Hecke eigenvalues a rep predicts, as a data file.
    Synth {
        #[arg(long)]
        level: u64,
        #[arg(long)]
        g: u32,
        #[arg(long, default_value = "1")]
        eta: String,
        /// `GF(p^r)`.
        #[arg(long)]
        field: String,
        #[arg(long)]
        rep: String,
        /// Operators, e.g. "T2, T3, T(7,1)".
        #[arg(long)]
        computed: String,
        /// Which reduction of the newform to use.
        #[arg(long, default_value_t = 0)]
        root: usize,
        #[command(flatten)]
        forms: FormsArg,
    },
    /// Check every row of a table file against the finder.
    VerifyTables {
        /// Table file; the bundled tables when omitted.
        #[arg(long)]
        tables: Option<PathBuf>,
        #[command(flatten)]
        forms: FormsArg,
        /// Corrections to apply first; the bundled list when omitted.
        #[arg(long)]
        errata: Option<PathBuf>,
        /// Verify the tables exactly as printed.
        #[arg(long, conflicts_with = "errata")]
        no_errata: bool,
        /// Only tables of this level.
        #[arg(long)]
        level: Option<u64>,
        /// Only run the parsing, validity and multiplicity checks.
        #[arg(long)]
        no_finder: bool,
        #[command(flatten)]
        filters: FilterArgs,
        /// Print warnings too.
        #[arg(long, short)]
        verbose: bool,
    },
    /// Decompose operators and print the resulting table.
    EmitTable {
        #[arg(long)]
        ops: PathBuf,
        #[arg(long)]
        level: u64,
        #[arg(long)]
        g: u32,
        #[arg(long, default_value = "1")]
        eta: String,
        #[command(flatten)]
        forms: FormsArg,
        #[command(flatten)]
        filters: FilterArgs,
    },
    /// Print a table file in normalized form (the bundled tables by default).
    Normalize {
        #[arg(long)]
        tables: Option<PathBuf>,
    },
}

/// A failed check, as opposed to bad input.
#[derive(Debug)]
struct Failed;

impl std::fmt::Display for Failed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("verification failed")
    }
}

impl std::error::Error for Failed {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<Failed>() => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Chars { modulus, p, r } => chars(modulus, p, r),
        Command::Reduce { forms, p, r, label, level } => reduce_cmd(&forms.load()?, p, r, label, level),
        Command::Eigen { ops } => eigen(&read(&ops)?),
        Command::Find { level, g, eta, data, forms, filters, all } => {
            let file = parse_hecke_file(&read(&data)?)?;
            if level.is_some_and(|n| n != file.ctx.level()) || g.is_some_and(|g| g != file.ctx.g) {
                bail!(Error::Input("level or g differs from the data file".into()));
            }
            if let Some(eta) = eta {
                if file.names.parse(&eta)? != file.ctx.eta {
                    bail!(Error::Input("eta differs from the data file".into()));
                }
            }
            let labels = file.data.labels();
            let finder = FinderContext::new(file.ctx.clone(), &forms.load()?, &labels)?.with_options(filters.options());
            let report = finder.find(&file.data)?;
            println!("candidates matched: {} in {} classes", report.matches.len(), report.classes.len());
            for c in &report.classes {
                println!("{} | {}", c.pattern, report.matches[c.representative].to_text(&file.names));
                if all {
                    for &i in c.members.iter().filter(|&&i| i != c.representative) {
                        println!("    {}", report.matches[i].to_text(&file.names));
                    }
                }
            }
            println!("unique: {}", report.unique);
            for w in &report.warnings {
                println!("warning: {w}");
            }
            if let Some(c) = report.caveat {
                println!("note: {c}");
            }
            Ok(())
        }
        Command::Synth { level, g, eta, field, rep, computed, root, forms } => {
            let f = parse_field(&field)?;
            let names = CharNames::new(level, &f)?;
            let ctx = RepContext::new(g, names.parse(&eta)?);
            let spec = RepSpec::parse(&rep, &names)?;
            let form = match spec.newform_label() {
                None => None,
                Some(l) => {
                    let store = forms.load()?;
                    let rec = store.get(l).with_context(|| format!("newform {l} is not in the fixture"))?;
                    let mut red = reduce(rec, &f)?;
                    if root >= red.len() {
                        bail!(Error::Input(format!("{l} has {} reductions", red.len())));
                    }
                    Some(red.swap_remove(root))
                }
            };
            let rep = spec.instantiate(&ctx, form.as_ref())?;
            let labels: Vec<Label> = parse_computed(computed.trim().trim_end_matches('.'))?.iter().flat_map(ComputedOp::labels).collect();
            print!("{}", write_hecke_file(&ctx, &names, &rep.hecke_data(&labels)?));
            Ok(())
        }
        Command::VerifyTables { tables, forms, errata, no_errata, level, no_finder, filters, verbose } => {
            let tables = match tables {
                Some(p) => parse_tables(&read(&p)?)?,
                None => bundled_tables()?,
            };
            let tables = if no_errata {
                tables
            } else {
                let e = match errata {
                    Some(p) => Errata::parse(&read(&p)?)?,
                    None => Errata::bundled()?,
                };
                e.apply(&tables)
            };
            let store = forms.load()?;
            let mut cache = ReductionCache::default();
            let opts = VerifyOptions { run_finder: !no_finder, filters: filters.options(), ..Default::default() };
            let (mut passed, mut failed) = (0, 0);
            for t in tables.iter().filter(|t| level.is_none_or(|n| n == t.header.level)) {
                let report = verify_table(t, &store, &mut cache, opts)?;
                let ok = report.passed();
                println!("{} {}", if ok { "PASS" } else { "FAIL" }, report.title);
                for f in &report.failures {
                    println!("    {f}");
                }
                for row in &report.rows {
                    for f in &row.failures {
                        println!("    {}: {f}", row.rep);
                    }
                }
                if verbose {
                    for w in &report.warnings {
                        println!("    warning: {w}");
                    }
                }
                if ok {
                    passed += 1;
                } else {
                    failed += 1;
                }
            }
            println!("{passed} tables passed, {failed} failed");
            if failed > 0 {
                bail!(Failed);
            }
            Ok(())
        }
        Command::EmitTable { ops, level, g, eta, forms, filters } => {
            let file = parse_operator_file(&read(&ops)?)?;
            let f = file.family.field().clone();
            let names = CharNames::new(level, &f)?;
            let ctx = RepContext::new(g, names.parse(&eta)?);
            let labels = file.family.labels().to_vec();
            let computed = computed_ops(&labels)?;
            let finder = FinderContext::new(ctx, &forms.load()?, &labels)?.with_options(filters.options());
            let decomposition = joint_eigenspaces(&file.family)?;
            if !decomposition.semisimple {
                eprintln!("warning: the operators are not simultaneously diagonalizable");
            }
            let (table, _) = table_from_decomposition(&finder, &names, &decomposition, computed)?;
            print!("{}", emit_table(&table));
            Ok(())
        }
        Command::Normalize { tables } => {
            let t = match tables {
                Some(p) => parse_tables(&read(&p)?)?,
                None => bundled_tables()?,
            };
            print!("{}", emit_tables(&t));
            Ok(())
        }
    }
}

fn default_r(p: u64, n: u64) -> Result<usize> {
    let e = unit_group(n)?.exponent();
    if gcd(p, e) != 1 {
        bail!(Error::Input(format!("p = {p} divides the exponent {e} of (Z/{n})^*; pass --r")));
    }
    Ok(if e == 1 { 1 } else { mult_order(p % e, e) as usize })
}

fn chars(modulus: u64, p: u64, r: Option<usize>) -> Result<()> {
    PrimeModulus::new(p)?;
    let r = match r {
        Some(r) => r,
        None => default_r(p, modulus)?,
    };
    let f = make_field(p, r)?;
    let group = unit_group(modulus)?;
    let names = CharNames::new(modulus, &f)?;
    println!("field {}", f.descriptor());
    println!("generators {:?} of orders {:?}", group.generators(), group.orders());
    println!("name | order | parity | conductor | values on generators");
    for c in enumerate_chars(modulus, &f)? {
        let (order, parity, conductor) = c.order_parity_conductor();
        let vals: Vec<String> = c.values().iter().map(ToString::to_string).collect();
        println!(
            "{} | {order} | {parity} | {conductor} | {}",
            names.name(&c).unwrap_or_else(|| "1".into()),
            vals.join("; ")
        );
    }
    let rows: Vec<_> = basis_rows().into_iter().filter(|b| b.modulus == modulus).collect();
    if !rows.is_empty() {
        println!("basis characters:");
        for b in rows {
            match b.build(&f) {
                Ok(c) => println!("  {} | order {} | {}", b.name, c.order(), c.parity()),
                Err(e) => println!("  {} | not defined over this field: {e}", b.name),
            }
        }
    }
    Ok(())
}

fn reduce_cmd(store: &NewformStore, p: u64, r: Option<usize>, label: Option<String>, level: Option<u64>) -> Result<()> {
    let records: Vec<_> = store
        .records()
        .iter()
        .filter(|rec| label.as_ref().is_none_or(|l| *l == rec.label))
        .filter(|rec| level.is_none_or(|n| n % rec.level == 0))
        .cloned()
        .collect();
    if records.is_empty() {
        bail!(Error::Input("no newform selected".into()));
    }
    let pm = PrimeModulus::new(p)?;
    let r = match r {
        Some(r) => r,
        None => choose_r(pm, records.iter().map(|r| r.as_ref()), level.unwrap_or(1))?,
    };
    let f: Arc<ExtField> = make_field(p, r)?;
    println!("field {}", f.descriptor());
    for rec in &records {
        let reds = reduce(rec, &f)?;
        for red in reds {
            let aps: Vec<String> = red.a_mod.iter().map(|(l, a)| format!("a{l}={a}")).collect();
            println!("{} root {} | {}", rec.label, red.root_index, aps.join(" "));
        }
    }
    Ok(())
}

fn eigen(text: &str) -> Result<()> {
    let file = parse_operator_file(text)?;
    let d = joint_eigenspaces(&file.family)?;
    let orbits = space_orbits(&d.spaces, &file.eta);
    println!("dim {} | {} eigenspaces | {} orbits | semisimple {}", file.family.dim(), d.spaces.len(), orbits.len(), d.semisimple);
    for o in &orbits {
        let s = &d.spaces[o.representative];
        println!("{} | {} | {}", o.galois_mult, s.hecke_mult, s.eigensystem.serialize());
    }
    Ok(())
}
