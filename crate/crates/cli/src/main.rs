//! `beauville`: construct, verify and certify Beauville structures from the shell.
//!
//! Exit status: 0 success, 1 a check failed (or a positive result was asked
//! for and not found), 2 invalid input.

mod groups;

use std::fmt::Write as _;
use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use beauville::beauville::{check_witness, Effort, Family, Witness};
use beauville::ffield::symbols::dedekind_symbol;
use beauville::recipes::{
    golden_fixture, structure_sl2, strongly_real_structure_psl2, table1_row, Construction, Fixture,
    Table1Row, FIXTURE_NAMES,
};
use beauville::serial::{
    verify_parsed, ConstructionJson, ElemJson, FieldJson, ReportJson, StructureJson,
};
use beauville::suzuki::{
    odd_centralizers, ree_order_data, suzuki_order_data, sz8, sz_find_structure, verify_sz,
};
use beauville::{make_field, Error, Field, Poly, PolyClass};

const TABLE1_PRIMES: [u64; 12] = [11, 19, 23, 31, 43, 47, 59, 67, 71, 79, 83, 103];

#[derive(Parser, Debug)]
#[command(name = "beauville", version, about = "Beauville structures on L2(q), SL2(q) and Sz(8)")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the document here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Worker threads for commands that process several independent items.
    #[arg(long, default_value_t = 1, global = true)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Psl2,
    Sl2,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum EffortArg {
    Fast,
    Exhaustive,
    /// Exhaustive for q <= 32, fast above.
    Auto,
}

impl EffortArg {
    fn resolve(self, q: u64) -> Effort {
        match self {
            EffortArg::Fast => Effort::Fast,
            EffortArg::Exhaustive => Effort::Exhaustive,
            EffortArg::Auto if q <= 32 => Effort::Exhaustive,
            EffortArg::Auto => Effort::Fast,
        }
    }
}

#[derive(Args, Debug)]
struct FieldArgs {
    /// Field order.
    #[arg(long, conflicts_with_all = ["p", "e"])]
    q: Option<u64>,
    #[arg(long, requires = "e")]
    p: Option<u64>,
    #[arg(long, requires = "p")]
    e: Option<u32>,
    /// Modulus such as `t^3+t+1`; defaults to the smallest primitive polynomial.
    #[arg(long)]
    modulus: Option<String>,
}

impl FieldArgs {
    fn field(&self) -> Result<Field> {
        let (p, e) = match (self.q, self.p, self.e) {
            (Some(q), _, _) => beauville::arith::prime_power(q).ok_or(Error::NotPrimePower(q))?,
            (None, Some(p), Some(e)) => (p, e),
            _ => bail!(Error::Malformed("give --q or both --p and --e".into())),
        };
        let modulus = self.modulus.as_deref().map(|m| Poly::parse(p, m)).transpose()?;
        Ok(make_field(p, e, modulus)?)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Describe a finite field, optionally one of its elements.
    Field {
        #[command(flatten)]
        field: FieldArgs,
        /// Element such as `t^2+1`.
        #[arg(long)]
        elem: Option<String>,
    },
    /// Quadratic symbol (g/f) over F_p[t].
    Symbol {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        g: String,
        #[arg(long)]
        f: String,
    },
    /// Build the recipe structure for one field and verify it.
    Construct {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum, default_value_t = EffortArg::Auto)]
        effort: EffortArg,
    },
    /// Verify a structure document (`-` reads standard input).
    Verify {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = EffortArg::Auto)]
        effort: EffortArg,
    },
    /// Exhaustively search a small group for a structure.
    Search {
        #[arg(long)]
        group: String,
    },
    /// Certify that a small group has no structure.
    Negative {
        #[arg(long)]
        group: String,
    },
    /// Primitive roots d with d - 1 + 1/d a square, for primes q = 3 mod 4.
    Table1 {
        #[arg(long)]
        q: Option<u64>,
    },
    /// Order data for Sz(2^e) and R(3^e); the full Sz(8) structure when e = 3.
    Suzuki {
        #[arg(long, default_value_t = 3)]
        e: u32,
    },
    /// Verify the hand-worked example structures.
    Examples {
        #[arg(long)]
        name: Option<String>,
    },
}

struct Outcome {
    doc: Value,
    text: String,
    ok: bool,
}

impl Outcome {
    fn new(doc: impl Serialize, text: String, ok: bool) -> Result<Outcome> {
        Ok(Outcome { doc: serde_json::to_value(doc)?, text, ok })
    }
}

fn family(f: FamilyArg) -> Family {
    match f {
        FamilyArg::Psl2 => Family::PSL2,
        FamilyArg::Sl2 => Family::SL2,
    }
}

/// Order-preserving map over `jobs` threads.
fn par_map<T: Sync, R: Send>(items: &[T], jobs: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    if jobs <= 1 || items.len() <= 1 {
        return items.iter().map(f).collect();
    }
    let chunk = items.len().div_ceil(jobs);
    std::thread::scope(|s| {
        let handles: Vec<_> = items.chunks(chunk).map(|c| s.spawn(|| c.iter().map(&f).collect::<Vec<R>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

fn cmd_field(args: &FieldArgs, elem: Option<&str>) -> Result<Outcome> {
    let f = args.field()?;
    let g = f.smallest_primitive_root();
    let mut doc = json!({
        "field": FieldJson::from_field(&f),
        "q": f.q(),
        "modulus_text": f.modulus().to_string(),
        "primitive_modulus": f.has_primitive_modulus(),
        "smallest_primitive_root": ElemJson::new(&f, g),
    });
    let mut text = format!(
        "GF({}) = F_{}[t]/({}){}\nsmallest primitive root: {}\n",
        f.q(),
        f.p(),
        f.modulus(),
        if f.has_primitive_modulus() { ", primitive" } else { "" },
        f.format(g)
    );
    if let Some(e) = elem {
        let a = f.parse(e)?;
        let order = f.multiplicative_order(a).ok();
        let sqrt = f.sqrt(a);
        doc["element"] = json!({
            "value": ElemJson::new(&f, a),
            "order": order,
            "is_square": f.is_square(a),
            "sqrt": sqrt.map(|s| ElemJson::new(&f, s)),
            "primitive": f.is_primitive_root(a),
        });
        let _ = writeln!(
            text,
            "{}: order {}, square root {}",
            f.format(a),
            order.map_or("-".into(), |o| o.to_string()),
            sqrt.map_or("none".into(), |s| f.format(s))
        );
    }
    Outcome::new(doc, text, true)
}

fn cmd_symbol(p: u64, g: &str, fs: &str) -> Result<Outcome> {
    let gp = Poly::parse(p, g)?;
    let fp = Poly::parse(p, fs)?;
    let symbol = dedekind_symbol(&gp, &fp)?;
    let irreducible = fp.is_monic() && fp.classify()? != PolyClass::Reducible;
    // independent check through the residue field when f is irreducible
    let euler = if irreducible {
        let k = make_field(p, fp.degree().unwrap_or(0) as u32, Some(fp.clone()))?;
        Some(k.quadratic_character(k.from_poly(&gp)))
    } else {
        None
    };
    let doc = json!({"p": p, "g": gp.to_string(), "f": fp.to_string(), "symbol": symbol, "f_irreducible": irreducible, "euler": euler});
    let text = format!("({gp} / {fp}) over F_{p} = {symbol:+}\n");
    Outcome::new(doc, text, euler.map_or(true, |e| e == symbol))
}

fn construction(f: &Field, fam: Family) -> Result<Construction> {
    Ok(match fam {
        Family::SL2 => structure_sl2(f)?,
        _ => strongly_real_structure_psl2(f)?,
    })
}

fn report_text(r: &ReportJson) -> String {
    let mut s = format!("{:?}({}) [{:?}]: {}\n", r.family, r.q, r.effort, if r.pass { "PASS" } else { "FAIL" });
    for (i, t) in r.triples.iter().enumerate() {
        let _ = writeln!(
            s,
            "  T{}: cond1={} orders={:?} hyperbolic={} generation={:?} ({:?})",
            i + 1,
            t.cond1,
            t.orders,
            t.hyperbolic,
            t.generation,
            t.generation_method
        );
    }
    let _ = writeln!(s, "  cond3={:?} via {:?}", r.cond3, r.cond3_method);
    let _ = writeln!(s, "  strongly real: {}", serde_json::to_string(&r.strongly_real).unwrap_or_default());
    s
}

fn cmd_construct(fam: FamilyArg, args: &FieldArgs, effort: EffortArg) -> Result<Outcome> {
    let f = args.field()?;
    let c = construction(&f, family(fam))?;
    let report = verify_parsed(&beauville::serial::ParsedStructure::Linear(c.structure.clone()), effort.resolve(f.q()))?;
    let ok = report.pass;
    let mut text = format!("branches: T1 {:?}, T2 {:?}\n", c.t1.branch, c.t2.branch);
    text.push_str(&report_text(&report));
    Outcome::new(ConstructionJson::new(&c, Some(report)), text, ok)
}

fn read_input(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn cmd_verify(path: &PathBuf, effort: EffortArg) -> Result<Outcome> {
    let text = read_input(path)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Error::Malformed(e.to_string()))?;
    // bare structures, or `construct`/`suzuki` output wrapping one
    let value = match value.get("structure") {
        Some(s) => s.clone(),
        None => value,
    };
    let doc: StructureJson = serde_json::from_value(value).map_err(|e| Error::Malformed(e.to_string()))?;
    let parsed = doc.parse()?;
    let report = verify_parsed(&parsed, effort.resolve(doc.group.q))?;
    let ok = report.pass;
    let text = report_text(&report);
    Outcome::new(report, text, ok)
}

fn cmd_search(group: &str, negative: bool) -> Result<Outcome> {
    let spec = groups::parse_group(group)?;
    let doc = groups::run_search(spec, group)?;
    let mut v = serde_json::to_value(&doc)?;
    let text = if doc.found {
        format!("{} (order {}): Beauville structure found\n", doc.group, doc.order)
    } else {
        format!(
            "{} (order {}): no Beauville structure ({} generating triples, {} signatures)\n",
            doc.group, doc.order, doc.triples_examined, doc.signatures
        )
    };
    if negative {
        v["certificate"] = json!(if doc.found { "structure exists" } else { "no Beauville structure" });
    }
    let ok = doc.found != negative;
    Outcome::new(v, text, ok)
}

fn cmd_table1(q: Option<u64>, jobs: usize) -> Result<Outcome> {
    let rows: Vec<Table1Row> = match q {
        Some(q) => vec![table1_row(q)?],
        None => par_map(&TABLE1_PRIMES, jobs, |&q| table1_row(q)).into_iter().collect::<Result<_, _>>()?,
    };
    let mut text = String::from("    q    d  d^-1     r   (d = g^i)\n");
    for r in &rows {
        let _ = writeln!(text, "{:>5}{:>5}{:>6}{:>6}   ({}^{})", r.q, r.d, r.d_inv, r.r, r.g, r.i);
    }
    let doc = if q.is_some() { serde_json::to_value(rows[0])? } else { serde_json::to_value(&rows)? };
    Outcome::new(doc, text, true)
}

fn cmd_suzuki(e: u32) -> Result<Outcome> {
    let sz = suzuki_order_data(e)?;
    let ree = ree_order_data(e)?;
    let mut doc = json!({"suzuki_order_data": sz, "ree_order_data": ree});
    let mut text = format!(
        "Sz({}): q-1 = {}, q+r+1 = {}, q-r+1 = {}, n = {}\nR({}): n = {}, types {:?} / {:?}\n",
        sz.q, sz.q_minus_1, sz.q_plus_r_plus_1, sz.q_minus_r_plus_1, sz.n, ree.q, ree.n, ree.t1_type, ree.t2_type
    );
    if e != 3 {
        return Outcome::new(doc, text, true);
    }
    let (ctx, fg) = sz8()?;
    let s = sz_find_structure(&fg)?;
    let report = verify_sz(&ctx, &fg, &s)?;
    let cls = fg.classes();
    let class = |g| cls.class_of[fg.index_of(&g).expect("in group")];
    let count = fg.frobenius_count(class(s.t2.x), class(s.t2.y), class(s.t2.y));
    let report = ReportJson::sz(&ctx, &report);
    doc["group_order"] = json!(fg.order());
    doc["spectrum"] = json!(fg.order_spectrum());
    doc["centralizers"] = json!(odd_centralizers(&fg)?);
    doc["frobenius_count"] = json!(count);
    doc["structure"] = serde_json::to_value(StructureJson::from_sz(&ctx, &s))?;
    let ok = report.pass && !report.has_witness();
    text.push_str(&format!(
        "|Sz(8)| = {}, spectrum {:?}, N(7,13,13) = {}\n",
        fg.order(),
        fg.order_spectrum(),
        count
    ));
    text.push_str(&report_text(&report));
    doc["report"] = serde_json::to_value(report)?;
    Outcome::new(doc, text, ok)
}

fn fixture_involutor_ok(fx: &Fixture) -> bool {
    (0..3u8).any(|r1| {
        (0..3u8).any(|r2| {
            let w = Witness { conjugator: fx.involutor, frobenius: 0, rotations: [r1, r2] };
            check_witness(&fx.structure, &w)
        })
    })
}

fn cmd_examples(name: Option<&str>, jobs: usize) -> Result<Outcome> {
    let names: Vec<&str> = match name {
        Some(n) => vec![n],
        None => FIXTURE_NAMES.to_vec(),
    };
    let fixtures = names.iter().map(|n| golden_fixture(n)).collect::<beauville::Result<Vec<_>>>()?;
    let results = par_map(&fixtures, jobs, |fx| -> Result<Value> {
        let s = &fx.structure;
        let report = verify_parsed(&beauville::serial::ParsedStructure::Linear(s.clone()), Effort::Exhaustive)?;
        Ok(json!({
            "name": fx.name,
            "structure": StructureJson::from_linear(s),
            "involutor": beauville::serial::Mat2Json::new(&s.field, fx.involutor, beauville::psl2::Mode::PGL2),
            "involutor_inverts": fixture_involutor_ok(fx),
            "report": report,
        }))
    });
    let results: Vec<Value> = results.into_iter().collect::<Result<_>>()?;
    let mut text = String::new();
    let mut ok = true;
    for r in &results {
        let pass = r["report"]["pass"] == json!(true) && r["involutor_inverts"] == json!(true);
        ok &= pass;
        let _ = writeln!(text, "{:>8}: {}", r["name"].as_str().unwrap_or("?"), if pass { "PASS" } else { "FAIL" });
    }
    let doc = if name.is_some() { results[0].clone() } else { Value::Array(results) };
    Outcome::new(doc, text, ok)
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Field { field, elem } => cmd_field(field, elem.as_deref()),
        Command::Symbol { p, g, f } => cmd_symbol(*p, g, f),
        Command::Construct { family, field, effort } => cmd_construct(*family, field, *effort),
        Command::Verify { path, effort } => cmd_verify(path, *effort),
        Command::Search { group } => cmd_search(group, false),
        Command::Negative { group } => cmd_search(group, true),
        Command::Table1 { q } => cmd_table1(*q, cli.jobs),
        Command::Suzuki { e } => cmd_suzuki(*e),
        Command::Examples { name } => cmd_examples(name.as_deref(), cli.jobs),
    }
}

/// Library errors that mean the input was bad rather than a check failing.
fn is_input_error(e: &anyhow::Error) -> bool {
    if e.downcast_ref::<std::io::Error>().is_some() {
        return true;
    }
    match e.downcast_ref::<Error>() {
        Some(
            Error::BoundExceeded { .. }
            | Error::NoWitness(_)
            | Error::TooFewTraces { .. }
            | Error::NoSuchTorus { .. }
            | Error::Io(_),
        ) => false,
        Some(_) => true,
        // argument-level problems from this crate
        None => true,
    }
}

fn emit(cli: &Cli, body: String) -> Result<()> {
    match &cli.output {
        Some(p) => std::fs::write(p, body).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (body, code) = match run(&cli) {
        Ok(out) => {
            let body = match cli.format {
                Format::Json => serde_json::to_string_pretty(&out.doc).expect("serializable") + "\n",
                Format::Text => out.text,
            };
            (body, if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            let code = if is_input_error(&e) { 2 } else { 1 };
            eprintln!("error: {e:#}");
            let body = match cli.format {
                Format::Json => serde_json::to_string_pretty(&json!({"error": format!("{e:#}")})).expect("serializable") + "\n",
                Format::Text => String::new(),
            };
            (body, code)
        }
    };
    if let Err(e) = emit(&cli, body) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
