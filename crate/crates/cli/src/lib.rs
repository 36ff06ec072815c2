//! Command implementations behind the `rotweb` binary.
//!
//! Every command produces a [`Report`] and an exit status: 0 on success,
//! 1 when two classifiers disagree or a reproduction check fails, 2 on
//! invalid input.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use rotweb::ckt::{assemble_ckt, killing_obstruction, scan_symmetry, tsn_filter, Ckv, SymmetryMode};
use rotweb::exactmath::numeric::float_real_root_count;
use rotweb::exactmath::{int, parse_rational, rat, Rational};
use rotweb::group::{apply_quartic, GroupElement};
use rotweb::quartic::{
    canonical_form, classify_by_invariants, classify_by_roots, invariants, root_structure, BinaryQuartic, WebType,
};
use rotweb::rotational::catalog::{check_catalog, Catalog};
use rotweb::rotational::{assemble_rotational, RotParams};
use rotweb::separability::{classify_potential, Potential};
use rotweb::Error;

pub const REPORT_SCHEMA: &str = "rotweb.report/v1";
pub const CATALOG_ENV: &str = "ROTWEB_CATALOG";

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub findings: Vec<Value>,
    pub timing_ms: f64,
}

#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub exit_code: i32,
}

/// A failure that ends a command before a report exists.
#[derive(Debug)]
pub struct CliError {
    pub exit_code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let exit_code = match e {
            Error::Consistency(_) | Error::Unclassified(_) => 1,
            _ => 2,
        };
        Self { exit_code, message: e.to_string() }
    }
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        Self { exit_code: 2, message: message.into() }
    }
}

type CmdResult = Result<Outcome, CliError>;

fn finish(command: &str, inputs: Value, results: Value, findings: Vec<Value>, start: Instant) -> Outcome {
    let exit_code = if findings.is_empty() { 0 } else { 1 };
    Outcome {
        report: Report {
            schema: REPORT_SCHEMA,
            command: command.to_string(),
            inputs,
            results,
            findings,
            timing_ms: start.elapsed().as_secs_f64() * 1e3,
        },
        exit_code,
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

/// Exactly one of `params` and `quartic` is expected.
pub fn cmd_classify(params: Option<&str>, quartic: Option<&str>, float_probe: bool) -> CmdResult {
    let start = Instant::now();
    let (inputs, q) = match (params, quartic) {
        (Some(p), None) => {
            let p = RotParams::parse_list(p)?;
            (json!({ "params": p }), p.quartic())
        }
        (None, Some(q)) => {
            let q = BinaryQuartic::parse_list(q)?;
            (json!({ "quartic": q }), q)
        }
        _ => return Err(CliError::input("pass exactly one of --params and --quartic")),
    };
    if q.is_zero() {
        return Err(Error::ZeroQuartic.into());
    }

    let structure = root_structure(&q)?;
    let by_roots = classify_by_roots(&q)?;
    let mut findings = Vec::new();
    let table = match classify_by_invariants(&q) {
        Ok(c) => {
            if c.web_type != Some(by_roots) {
                findings.push(json!({
                    "kind": "classifier_disagreement",
                    "by_roots": by_roots,
                    "by_invariants": c.web_type,
                    "audit": c.audit,
                }));
            }
            to_value(&c)
        }
        Err(e) => {
            findings.push(json!({ "kind": "unclassified", "by_roots": by_roots, "detail": e.to_string() }));
            Value::Null
        }
    };
    let canonical = match canonical_form(&q) {
        Ok(c) => to_value(&c),
        Err(e) => {
            findings.push(json!({ "kind": "canonical_form", "detail": e.to_string() }));
            Value::Null
        }
    };
    let mut results = json!({
        "type": by_roots,
        "label": by_roots.label(),
        "root_structure": structure,
        "real_multiplicities": structure.real_multiplicities(),
        "invariants": invariants(&q),
        "invariant_table": table,
        "canonical": canonical,
    });
    if float_probe {
        let exact_real: u32 = structure.real_multiplicities().len() as u32;
        let probe = float_probe_real_roots(&q);
        if !structure.has_repeated_root() && probe != exact_real as usize {
            findings.push(json!({ "kind": "float_probe", "exact_real_roots": exact_real, "float_real_roots": probe }));
        }
        results["float_probe"] = json!({ "real_roots": probe, "exact_distinct_real_roots": exact_real });
    }
    Ok(finish("classify", inputs, results, findings, start))
}

/// Real roots on ℝP¹ counted by the floating companion oracle, the point
/// at infinity included.
pub fn float_probe_real_roots(q: &BinaryQuartic) -> usize {
    let p = q.dehomogenize();
    let deg = p.degree().unwrap_or(0);
    let finite = if deg == 0 { 0 } else { float_real_root_count(&p) };
    finite + usize::from(deg < 4)
}

fn load_catalog() -> Result<Catalog, CliError> {
    match std::env::var(CATALOG_ENV) {
        Ok(path) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| CliError::input(format!("cannot read catalog `{path}`: {e}")))?;
            Ok(Catalog::parse(&text)?)
        }
        Err(_) => Ok(Catalog::builtin()),
    }
}

pub fn cmd_tables(scales: &[String]) -> CmdResult {
    let start = Instant::now();
    let catalog = load_catalog()?;
    let scales = catalog.default_scales()?.with_overrides(scales.iter().map(String::as_str))?;
    let entries = catalog.instantiate(&scales)?;
    let checks = check_catalog(&entries);
    let findings: Vec<Value> = checks
        .iter()
        .filter(|c| !c.passes())
        .map(|c| json!({ "kind": "catalog_row", "row": c.name, "check": c }))
        .collect();
    let matrix: Vec<Value> = checks
        .iter()
        .map(|c| {
            json!({
                "row": c.name,
                "expected": c.expected_type,
                "classified": c.classified_type,
                "type_matches": c.type_matches,
                "equivalent_to": c.equivalent_to,
                "witness": c.witness.as_ref().map(|w| json!({ "kind": w.kind, "holds": w.holds })),
                "pass": c.passes(),
            })
        })
        .collect();
    let passed = checks.iter().filter(|c| c.passes()).count();
    let results = json!({
        "rows": checks.len(),
        "passed": passed,
        "matrix": matrix,
        "details": checks,
    });
    Ok(finish("tables", json!({ "scales": scales }), results, findings, start))
}

fn parse_constants(defs: &[String]) -> Result<BTreeMap<String, Rational>, CliError> {
    defs.iter()
        .map(|d| {
            let (k, v) = d
                .split_once('=')
                .ok_or_else(|| CliError::input(format!("constant `{d}` is not of the form name=value")))?;
            Ok((k.trim().to_string(), parse_rational(v.trim())?))
        })
        .collect()
}

pub fn cmd_compat(potential: &str, energy: &str, constants: &[String]) -> CmdResult {
    let start = Instant::now();
    let consts = parse_constants(constants)?;
    let energy = parse_rational(energy)?;
    let pot = Potential::parse(potential, energy.clone(), &consts)?;
    let cls = classify_potential(&pot)?;
    let killing = cls
        .solution
        .basis
        .iter()
        .map(|b| Ok(killing_obstruction(&assemble_rotational(b))?.is_zero()))
        .collect::<Result<Vec<bool>, CliError>>()?;
    let inputs = json!({
        "potential": potential,
        "energy": energy.to_string(),
        "constants": consts.iter().map(|(k, v)| (k.clone(), v.to_string())).collect::<BTreeMap<_, _>>(),
    });
    let results = json!({
        "dimension": cls.solution.dimension(),
        "basis": cls.solution.basis,
        "killing_representable": killing,
        "c33_free": cls.solution.c33_free,
        "quartic_rank": cls.solution.quartic_rank(),
        "equations": cls.solution.equations,
        "type": cls.web_type,
        "quartic": cls.quartic,
        "diagnostics": cls.diagnostics,
    });
    Ok(finish("compat", inputs, results, Vec::new(), start))
}

fn parse_generator(name: &str) -> Result<Ckv, CliError> {
    let upper = name.trim().to_ascii_uppercase();
    let (kind, index) = upper.split_at(1);
    let axis = || -> Result<usize, CliError> {
        match index {
            "1" => Ok(0),
            "2" => Ok(1),
            "3" => Ok(2),
            _ => Err(CliError::input(format!("unknown generator `{name}`"))),
        }
    };
    match kind {
        "X" => Ok(Ckv::X(axis()?)),
        "R" => Ok(Ckv::R(axis()?)),
        "I" => Ok(Ckv::I(axis()?)),
        "D" if index.is_empty() => Ok(Ckv::D),
        _ => Err(CliError::input(format!("unknown generator `{name}`; expected X1-3, R1-3, D or I1-3"))),
    }
}

pub fn parse_mode(h: &str) -> Result<SymmetryMode, CliError> {
    match h.trim() {
        "0" => Ok(SymmetryMode::HZero),
        "const" | "constant" => Ok(SymmetryMode::HConstant),
        other => Err(CliError::input(format!("unknown mode `--h {other}`; expected 0 or const"))),
    }
}

pub fn cmd_symmetry(generator: &str, h: &str) -> CmdResult {
    let start = Instant::now();
    let ckv = parse_generator(generator)?;
    let mode = parse_mode(h)?;
    let field = ckv.field();
    let scan = scan_symmetry(&field, mode)?;
    let mut spaces = Vec::new();
    for space in &scan.eigenspaces {
        let filter = tsn_filter(&field, &space.basis)?;
        let mut members = Vec::new();
        for b in &space.basis {
            let k = assemble_ckt(b)?;
            let killing = killing_obstruction(&k)?.is_zero();
            members.push(json!({
                "components": k.components().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "killing_representable": killing,
            }));
        }
        spaces.push(json!({
            "h": space.h.to_string(),
            "dimension": space.basis.len(),
            "tsn_dimension": filter.dimension,
            "whole_space_normal": filter.whole_space_normal,
            "members": members,
        }));
    }
    let results = json!({
        "mode": mode,
        "eigenvalues": scan.eigenspaces.iter().map(|e| e.h.to_string()).collect::<Vec<_>>(),
        "characteristic_polynomial": scan.characteristic_polynomial,
        "irrational_real_eigenvalues": scan.irrational_real_eigenvalues,
        "spaces": spaces,
    });
    Ok(finish("symmetry", json!({ "generator": format!("{ckv:?}"), "h": h }), results, Vec::new(), start))
}

fn representative(t: WebType) -> BinaryQuartic {
    use WebType::*;
    BinaryQuartic::from_ints(match t {
        BiCyclide => [1, 0, -5, 0, 4],
        FlatRingCyclide => [1, 0, 5, 0, 4],
        DiskCyclide => [1, 0, 0, 0, -1],
        InverseProlateSpheroidal => [1, 0, -1, 0, 0],
        InverseOblateSpheroidal => [1, 0, 1, 0, 0],
        Toroidal => [1, 0, 2, 0, 1],
        Bispherical => [1, 0, -2, 0, 1],
        Cardioid => [1, -1, 0, 0, 0],
        TangentSphere => [1, 0, 0, 0, 0],
    })
}

fn random_rational(r: &mut ChaCha8Rng, nonzero: bool) -> Rational {
    loop {
        let n: i64 = r.gen_range(-6..=6);
        if n != 0 || !nonzero {
            return rat(n, r.gen_range(1..=4));
        }
    }
}

/// Randomized agreement check between the two exact classifiers, and with
/// `float_probe` also against the floating root counter.
pub fn cmd_crosscheck(seed: u64, per_type: usize, float_probe: bool) -> CmdResult {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut findings = Vec::new();
    let mut per_type_counts = BTreeMap::new();
    for t in WebType::ALL {
        let rep = representative(t);
        let mut recovered = 0;
        for _ in 0..per_type {
            let g = GroupElement::new(
                random_rational(&mut rng, false),
                random_rational(&mut rng, false),
                random_rational(&mut rng, true),
                random_rational(&mut rng, true),
                random_rational(&mut rng, false),
                rng.gen_bool(0.5),
            )?;
            let q = apply_quartic(&g, &rep)?;
            let by_roots = classify_by_roots(&q)?;
            if by_roots == t {
                recovered += 1;
            } else {
                findings
                    .push(json!({ "kind": "generator_mismatch", "expected": t, "by_roots": by_roots, "quartic": q }));
            }
            let by_table = classify_by_invariants(&q);
            let agrees = matches!(&by_table, Ok(c) if c.web_type == Some(by_roots));
            if !agrees {
                findings.push(json!({
                    "kind": "classifier_disagreement",
                    "quartic": q,
                    "by_roots": by_roots,
                    "by_invariants": by_table.as_ref().ok().and_then(|c| c.web_type),
                    "audit": by_table.as_ref().ok().map(|c| &c.audit),
                }));
            }
        }
        per_type_counts.insert(t.label(), recovered);
    }
    let mut float_checked = 0;
    if float_probe {
        while float_checked < per_type * 9 {
            let q = BinaryQuartic::from_ints(std::array::from_fn(|_| rng.gen_range(-9..=9)));
            if q.is_zero() || invariants(&q).delta == int(0) {
                continue;
            }
            let exact = root_structure(&q)?.real_multiplicities().len();
            let float = float_probe_real_roots(&q);
            if exact != float {
                findings.push(json!({ "kind": "float_probe", "quartic": q, "exact": exact, "float": float }));
            }
            float_checked += 1;
        }
    }
    let results = json!({
        "recovered_by_type": per_type_counts,
        "instances": per_type * 9,
        "float_checked": float_checked,
    });
    let inputs = json!({ "seed": seed, "per_type": per_type, "float_probe": float_probe });
    Ok(finish("crosscheck", inputs, results, findings, start))
}

/// Short human-readable summary of a report.
pub fn render_text(report: &Report) -> String {
    let r = &report.results;
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    match report.command.as_str() {
        "classify" => {
            line(format!("type: {}", r["label"].as_str().unwrap_or("?")));
            line(format!("real root multiplicities: {}", r["real_multiplicities"]));
            line(format!("complex pairs: {}", r["root_structure"]["complex_pairs"]));
            let inv = &r["invariants"];
            line(format!("I = {}, J = {}, Delta = {}, F = {}", inv["I"], inv["J"], inv["Delta"], inv["F"]));
            if let Some(t) = r["invariant_table"]["web_type"].as_str() {
                line(format!("invariant table: {t}"));
            }
            if !r["canonical"].is_null() {
                line(format!(
                    "canonical form {} (parameter ≈ {})",
                    r["canonical"]["form"], r["canonical"]["parameter"]["approx"]
                ));
            }
        }
        "tables" => {
            for row in r["matrix"].as_array().into_iter().flatten() {
                line(format!(
                    "{:<5} {:<28} {}",
                    if row["pass"].as_bool() == Some(true) { "PASS" } else { "FAIL" },
                    row["row"].as_str().unwrap_or(""),
                    row["classified"]
                ));
            }
            line(format!("{}/{} rows pass", r["passed"], r["rows"]));
        }
        "compat" => {
            line(format!("solution dimension: {}", r["dimension"]));
            for b in r["basis"].as_array().into_iter().flatten() {
                line(format!("  {b}"));
            }
            line(r["diagnostics"].as_str().unwrap_or("").to_string());
        }
        "symmetry" => {
            for s in r["spaces"].as_array().into_iter().flatten() {
                line(format!("h = {}: dimension {}, TSN-filtered {}", s["h"], s["dimension"], s["tsn_dimension"]));
            }
        }
        "crosscheck" => {
            line(format!("instances: {}, float checks: {}", r["instances"], r["float_checked"]));
            line(format!("recovered: {}", r["recovered_by_type"]));
        }
        _ => line(serde_json::to_string_pretty(r).unwrap_or_default()),
    }
    for f in &report.findings {
        line(format!("finding: {f}"));
    }
    out
}
