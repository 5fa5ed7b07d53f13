//! `weilsurf` — classification of endomorphism algebras and maximal
//! automorphism groups of polarized abelian surfaces over finite
//! fields.
//!
//! Exit codes: 0 success, 2 usage error, 3 domain rejection (e.g. not a
//! Weil number), 4 golden-table mismatch.
//!
//! Output grammar: rationals as `a/b`; fields as `Q`, `Q(sqrt D)`,
//! `Q(sqrt M, sqrt -N)`, `Q(zeta N)`; algebras as `(a,b / F)`.

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};
use std::process::ExitCode;

use weilsurf::amitsur::quaternion_deg2_finite_subgroups;
use weilsurf::classify::{
    elliptic_aut_groups, elliptic_aut_table, elliptic_endo_ring_families,
    ordinary_square_maximal_groups, product_nonisogenous_maximal_groups,
    simple_surface_maximal_groups, supersingular_square_maximal_groups, EllipticEndAlgebra,
    EllipticKind, MaximalAutReport, GOLDEN_TABLES,
};
use weilsurf::fields::QuadraticField;
use weilsurf::groups::{identify_quaternion_group, FiniteGroupId};
use weilsurf::poly::IntPolynomial;
use weilsurf::quat::{builtin_orders, torsion_units};
use weilsurf::weil::{
    local_invariants, minimal_polynomial, CenterField, PlaceTag, PrimePower, WeilNumberSpec,
};

const EXIT_USAGE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;
const EXIT_GOLDEN: u8 = 4;

#[derive(Parser)]
#[command(
    name = "weilsurf",
    about = "Endomorphism algebras of abelian surfaces over finite fields",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate elliptic isogeny classes over F_q with automorphism groups.
    Elliptic {
        #[arg(long)]
        q: i128,
        #[arg(long)]
        json: bool,
    },
    /// Analyze a q-Weil number: minimal polynomial, center, local invariants.
    Weil {
        #[arg(long)]
        q: i128,
        /// sqrt | beta:<int> | surd:<u>,<v> | zeta:<n> | poly:<c0,c1,...>
        #[arg(long)]
        pi: String,
        #[arg(long)]
        json: bool,
    },
    /// Regenerate a classification table and compare against the golden copy.
    Tables {
        #[arg(long)]
        table: u32,
        /// Print the per-row witness chains.
        #[arg(long)]
        verify_witnesses: bool,
        #[arg(long)]
        json: bool,
    },
    /// Test whether a finite group is admissible in a degree-2 quaternion algebra.
    Embed {
        #[arg(long)]
        group: String,
        /// Q | Qsqrt<D>
        #[arg(long)]
        center: String,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate and identify the torsion units of a builtin order.
    Units {
        #[arg(long)]
        order: String,
        #[arg(long)]
        json: bool,
    },
}

struct CmdError {
    code: u8,
    message: String,
}

fn usage(msg: impl Into<String>) -> CmdError {
    CmdError { code: EXIT_USAGE, message: msg.into() }
}

fn domain(msg: impl Into<String>) -> CmdError {
    CmdError { code: EXIT_DOMAIN, message: msg.into() }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn document(command: &str, inputs: Map<String, Value>, results: Value, witnesses: Value) -> Value {
    json!({
        "schema_version": "1",
        "command": command,
        "inputs": inputs,
        "results": results,
        "witnesses": witnesses,
    })
}

fn rational_str(r: &weilsurf::Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn center_str(center: &CenterField) -> String {
    match center {
        CenterField::Rationals => "Q".into(),
        CenterField::Quadratic(f) => format!("Q(sqrt {})", f.d()),
        CenterField::Biquadratic(f) => format!("Q(sqrt {}, sqrt -{})", f.m(), f.n()),
        CenterField::Cyclotomic(f) => format!("Q(zeta {})", f.n()),
    }
}

fn place_str(tag: &PlaceTag) -> String {
    match tag {
        PlaceTag::Real(i) => format!("real{}", i),
        PlaceTag::OverP(i) => format!("overp{}", i),
    }
}

fn parse_q(q: i128) -> Result<PrimePower, CmdError> {
    PrimePower::new(q).map_err(|e| usage(format!("invalid q = {q}: {e}")))
}

fn run(command: Command) -> Result<(), CmdError> {
    match command {
        Command::Elliptic { q, json } => cmd_elliptic(q, json),
        Command::Weil { q, pi, json } => cmd_weil(q, &pi, json),
        Command::Tables { table, verify_witnesses, json } => {
            cmd_tables(table, verify_witnesses, json)
        }
        Command::Embed { group, center, json } => cmd_embed(&group, &center, json),
        Command::Units { order, json } => cmd_units(&order, json),
    }
}

fn cmd_elliptic(q: i128, json_mode: bool) -> Result<(), CmdError> {
    let q = parse_q(q)?;
    let witnesses = elliptic_aut_groups(q).map_err(|e| domain(e.to_string()))?;
    let mut rows = Vec::new();
    for w in &witnesses {
        let kind = match w.class.kind {
            EllipticKind::Ordinary => "ordinary",
            EllipticKind::SsAllEndos => "ss_all_endos",
            EllipticKind::SsPartial => "ss_partial",
        };
        let algebra = match w.class.end_algebra {
            EllipticEndAlgebra::ImaginaryQuadratic(f) => format!("Q(sqrt {})", f.d()),
            EllipticEndAlgebra::QuaternionDpInf { p } => format!("D_({p},inf)"),
        };
        rows.push(json!({
            "beta": w.class.beta.to_string(),
            "kind": kind,
            "condition": w.class.condition,
            "end_algebra": algebra,
            "aut_group": w.group.tag(),
            "endo_rings": elliptic_endo_ring_families(&w.class),
        }));
    }
    if json_mode {
        let mut inputs = Map::new();
        inputs.insert("q".into(), Value::String(q.q().to_string()));
        let doc = document("elliptic", inputs, json!(rows), json!([]));
        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    } else {
        println!("isogeny classes of elliptic curves over F_{}:", q.q());
        for r in &rows {
            println!(
                "  beta = {:>4}  {:<13} {:<14} aut {}",
                r["beta"].as_str().unwrap(),
                r["kind"].as_str().unwrap(),
                r["end_algebra"].as_str().unwrap(),
                r["aut_group"].as_str().unwrap()
            );
        }
    }
    Ok(())
}

fn parse_pi(spec: &str) -> Result<WeilNumberSpec, CmdError> {
    let bad = || usage(format!("invalid pi spec '{spec}'"));
    if spec == "sqrt" {
        return Ok(WeilNumberSpec::RealSqrtQ { positive: true });
    }
    let (kind, rest) = spec.split_once(':').ok_or_else(bad)?;
    let ints: Result<Vec<i128>, _> = rest.split(',').map(|s| s.trim().parse::<i128>()).collect();
    let ints = ints.map_err(|_| bad())?;
    match (kind, ints.as_slice()) {
        ("beta", [b]) => Ok(WeilNumberSpec::QuadraticTrace { beta: *b }),
        ("surd", [u, v]) => Ok(WeilNumberSpec::BiquadraticSurd { u: *u, v: *v }),
        ("zeta", [n]) if *n > 0 && *n < 1 << 16 => {
            Ok(WeilNumberSpec::ScaledRootOfUnity { n: *n as u32 })
        }
        ("poly", coeffs) if coeffs.len() > 1 => {
            Ok(WeilNumberSpec::Polynomial { h: IntPolynomial::new(coeffs.to_vec()) })
        }
        _ => Err(bad()),
    }
}

fn cmd_weil(q: i128, pi: &str, json_mode: bool) -> Result<(), CmdError> {
    let q = parse_q(q)?;
    let spec = parse_pi(pi)?;
    let h = minimal_polynomial(&spec, q).map_err(|e| domain(e.to_string()))?;
    let desc = local_invariants(&spec, q).map_err(|e| domain(e.to_string()))?;
    let invariants: Vec<Value> = desc
        .invariants
        .iter()
        .map(|(tag, inv)| json!({"place": place_str(tag), "inv": rational_str(inv)}))
        .collect();
    let albert = format!("{:?}", desc.albert_type);
    if json_mode {
        let mut inputs = Map::new();
        inputs.insert("q".into(), Value::String(q.q().to_string()));
        inputs.insert("pi".into(), Value::String(pi.into()));
        let results = json!({
            "min_poly": h.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "center": center_str(&desc.center),
            "invariants": invariants,
            "d": desc.d,
            "e": desc.e,
            "g": desc.g,
            "albert_type": albert,
            "commutative": desc.commutative,
        });
        let doc = document("weil", inputs, results, json!([]));
        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    } else {
        println!("q = {}, pi = {pi}", q.q());
        println!("  min poly coeffs (c0..): {:?}", h.coeffs());
        println!("  center: {}", center_str(&desc.center));
        for (tag, inv) in &desc.invariants {
            println!("  inv at {}: {}", place_str(tag), rational_str(inv));
        }
        println!(
            "  d = {}, e = {}, g = {}, Albert type {albert}, commutative: {}",
            desc.d, desc.e, desc.g, desc.commutative
        );
    }
    Ok(())
}

fn golden_lines(table: &str) -> Result<Vec<String>, CmdError> {
    let content = match std::env::var("WEILSURF_GOLDEN_DIR") {
        Ok(dir) => std::fs::read_to_string(format!("{dir}/tables_v1.txt"))
            .map_err(|e| usage(format!("cannot read golden tables from {dir}: {e}")))?,
        Err(_) => GOLDEN_TABLES.to_string(),
    };
    Ok(content
        .lines()
        .filter(|l| l.starts_with(&format!("{table}|")))
        .map(|l| l.to_string())
        .collect())
}

fn report_lines(name: &str, report: &MaximalAutReport) -> Vec<String> {
    report
        .rows
        .iter()
        .map(|r| format!("{name}|{}|{}|{}", r.index, r.group.tag(), r.q))
        .collect()
}

fn cmd_tables(table: u32, verify: bool, json_mode: bool) -> Result<(), CmdError> {
    let fail = |e: weilsurf::Error| domain(e.to_string());
    let (name, lines, report) = match table {
        2 => {
            let rows = elliptic_aut_table().map_err(fail)?;
            let lines: Vec<String> = rows
                .iter()
                .enumerate()
                .map(|(i, (g, p))| {
                    let col = p.map(|p| p.to_string()).unwrap_or_else(|| "-".into());
                    format!("t2|{}|{}|{}", i + 1, g.tag(), col)
                })
                .collect();
            ("t2", lines, None)
        }
        10 => {
            let r = simple_surface_maximal_groups().map_err(fail)?;
            ("t10", report_lines("t10", &r), Some(r))
        }
        11 => {
            let r = product_nonisogenous_maximal_groups().map_err(fail)?;
            ("t11", report_lines("t11", &r), Some(r))
        }
        12 => {
            let r = ordinary_square_maximal_groups().map_err(fail)?;
            ("t12", report_lines("t12", &r), Some(r))
        }
        13 => {
            let r = supersingular_square_maximal_groups().map_err(fail)?;
            ("t13", report_lines("t13", &r), Some(r))
        }
        other => return Err(usage(format!("unknown table {other} (expected 2/10/11/12/13)"))),
    };
    let mut want = golden_lines(name)?;
    let mut got = lines.clone();
    want.sort();
    got.sort();
    let matches = want == got;

    let witnesses: Vec<Value> = match (&report, verify) {
        (Some(r), true) => r
            .rows
            .iter()
            .map(|row| {
                json!({
                    "row": row.index,
                    "group": row.group.tag(),
                    "q": row.q.to_string(),
                    "constructive": row.constructive,
                    "witness": row.description,
                    "order": row.certificate.as_ref().map(|c| c.description.clone()),
                })
            })
            .collect(),
        _ => vec![],
    };

    if json_mode {
        let mut inputs = Map::new();
        inputs.insert("table".into(), Value::from(table));
        inputs.insert("verify_witnesses".into(), Value::Bool(verify));
        let results = json!({"rows": lines, "golden_match": matches});
        let doc = document("tables", inputs, results, json!(witnesses));
        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    } else {
        for line in &lines {
            println!("{line}");
        }
        if verify {
            if let Some(r) = &report {
                for row in &r.rows {
                    println!("# row {}: {}", row.index, row.description);
                }
                for note in &r.notes {
                    println!("# note: {note}");
                }
            }
        }
        println!("# golden match: {matches}");
    }
    if !matches {
        return Err(CmdError { code: EXIT_GOLDEN, message: format!("table {table} deviates from the golden copy") });
    }
    Ok(())
}

fn parse_center(center: &str) -> Result<CenterField, CmdError> {
    if center == "Q" {
        return Ok(CenterField::Rationals);
    }
    if let Some(d) = center.strip_prefix("Qsqrt") {
        let d: i128 = d.parse().map_err(|_| usage(format!("invalid center '{center}'")))?;
        let f = QuadraticField::new(d).map_err(|e| usage(e.to_string()))?;
        return Ok(CenterField::Quadratic(f));
    }
    Err(usage(format!("invalid center '{center}' (expected Q or Qsqrt<D>)")))
}

fn cmd_embed(group: &str, center: &str, json_mode: bool) -> Result<(), CmdError> {
    let id = FiniteGroupId::from_tag(&group.to_ascii_lowercase())
        .map_err(|_| usage(format!("unknown group '{group}'")))?;
    let field = parse_center(center)?;
    let admitted = quaternion_deg2_finite_subgroups(&field).map_err(|e| usage(e.to_string()))?;
    let admissible = admitted.contains(&id);
    let trace: Vec<String> = admitted.iter().map(|g| g.tag()).collect();
    if json_mode {
        let mut inputs = Map::new();
        inputs.insert("group".into(), Value::String(id.tag()));
        inputs.insert("center".into(), Value::String(center_str(&field)));
        let results = json!({"admissible": admissible, "admitted_groups": trace});
        let doc = document("embed", inputs, results, json!([]));
        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    } else {
        println!(
            "{} over center {}: {}",
            id,
            center_str(&field),
            if admissible { "admissible" } else { "not admissible" }
        );
        println!("  admitted groups: {}", trace.join(", "));
    }
    Ok(())
}

fn cmd_units(order: &str, json_mode: bool) -> Result<(), CmdError> {
    let orders = builtin_orders().map_err(|e| usage(e.to_string()))?;
    let o = orders
        .get(order)
        .ok_or_else(|| usage(format!("unknown order '{order}'")))?;
    let units = torsion_units(o).map_err(|e| domain(e.to_string()))?;
    let id = identify_quaternion_group(&o.alg, &units).map_err(|e| domain(e.to_string()))?;
    if json_mode {
        let mut inputs = Map::new();
        inputs.insert("order".into(), Value::String(order.into()));
        let results = json!({"count": units.len(), "group": id.tag()});
        let doc = document("units", inputs, results, json!([]));
        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    } else {
        println!("{order}: {} torsion units, group {id}", units.len());
    }
    Ok(())
}
