use std::fmt;
use std::path::Path;

use serde::Serialize;

use reidemeister::corpus::Corpus;
use reidemeister::error::{ParseError, WreathError};
use reidemeister::group::{fixed_subgroup, twisted_classes, Automorphism, Elem, FiniteGroup};
use reidemeister::io::{
    from_json, parse_automorphism_json, parse_sigma_json, read_text, resolve_group, resolve_matrix,
    resolve_scenario,
};
use reidemeister::lattice::reidemeister_zk;
use reidemeister::repr::{character_table, tbft_check_with};
use reidemeister::verify::{
    enumerate_automorphisms, run_suite, CheckId, SuiteOptions, DEFAULT_AUTOMORPHISM_CAP,
};
use reidemeister::wreath::scenarios::Scenario;
use reidemeister::wreath::{
    fixed_witness_generator, maximal_orbit_point, separation_pipeline, solvability_pipeline,
    Evidence, ProbeOptions, SigmaElement, WreathAutomorphism,
};

use crate::{Cli, Command, GlobalOpts, GroupAut, VerifyArgs};

pub enum Outcome {
    Success,
    Failed,
}

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or unreadable input; exit code 2.
    Usage(String),
    /// A computation could not complete; exit code 1.
    Failed(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failed(m) => f.write_str(m),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn failed(e: WreathError) -> CliError {
    CliError::Failed(e.to_string())
}

type Result<T> = std::result::Result<T, CliError>;

fn emit<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("report serializes"));
}

fn outcome(ok: bool) -> Outcome {
    if ok {
        Outcome::Success
    } else {
        Outcome::Failed
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    match &cli.command {
        Command::Classes(a) => classes(g, a),
        Command::Reidemeister(a) => reidemeister_number(g, a),
        Command::Fixed(a) => fixed(g, a),
        Command::CharTable { group } => char_table(g, group),
        Command::TbftCheck { group, automorphism } => tbft(g, group, automorphism.as_deref()),
        Command::ZkReidemeister { matrix } => zk(g, matrix),
        Command::WreathCheck { scenario } => wreath_check(g, scenario),
        Command::Witness { scenario, sigma0, m } => witness(g, scenario, sigma0, m.as_deref()),
        Command::Separate {
            scenario,
            radius,
            singles_only,
        } => separate(g, scenario, *radius, !singles_only),
        Command::Solvability { scenario } => solvability(g, scenario),
        Command::Verify(v) => verify(g, v),
    }
}

/// Inline image array, inline JSON object, or a file.
fn resolve_automorphism(spec: &str, group: &FiniteGroup) -> Result<Automorphism> {
    let t = spec.trim_start();
    if t.starts_with('[') {
        let image: Vec<Elem> = from_json(spec, "automorphism argument")?;
        return Automorphism::new(group, image).map_err(|e| ParseError::from(e).into());
    }
    if t.starts_with('{') {
        return Ok(parse_automorphism_json(spec, group, "automorphism argument")?);
    }
    let path = Path::new(spec);
    Ok(parse_automorphism_json(&read_text(path)?, group, &path.display().to_string())?)
}

fn load(a: &GroupAut) -> Result<(FiniteGroup, Automorphism)> {
    let group = resolve_group(&a.group)?;
    let phi = resolve_automorphism(&a.automorphism, &group)?;
    Ok((group, phi))
}

#[derive(Serialize)]
struct ClassesOut {
    reidemeister_number: usize,
    classes: Vec<Vec<Elem>>,
}

fn classes(g: &GlobalOpts, a: &GroupAut) -> Result<Outcome> {
    let (group, phi) = load(a)?;
    let p = twisted_classes(&group, &phi);
    let out = ClassesOut {
        reidemeister_number: p.count(),
        classes: p.classes(),
    };
    if g.json {
        emit(&out);
    } else {
        println!("R(phi) = {}", out.reidemeister_number);
        for (i, c) in out.classes.iter().enumerate() {
            println!("class {i} (size {}): {c:?}", c.len());
        }
    }
    Ok(Outcome::Success)
}

#[derive(Serialize)]
struct ReidemeisterOut {
    reidemeister_number: usize,
    representatives: Vec<Elem>,
    sizes: Vec<usize>,
}

fn reidemeister_number(g: &GlobalOpts, a: &GroupAut) -> Result<Outcome> {
    let (group, phi) = load(a)?;
    let p = twisted_classes(&group, &phi);
    let out = ReidemeisterOut {
        reidemeister_number: p.count(),
        representatives: p.representatives().to_vec(),
        sizes: p.sizes().to_vec(),
    };
    if g.json {
        emit(&out);
    } else {
        println!("R(phi) = {}", out.reidemeister_number);
        println!("representatives: {:?}", out.representatives);
        println!("class sizes: {:?}", out.sizes);
    }
    Ok(Outcome::Success)
}

#[derive(Serialize)]
struct FixedOut {
    order: usize,
    elements: Vec<Elem>,
}

fn fixed(g: &GlobalOpts, a: &GroupAut) -> Result<Outcome> {
    let (group, phi) = load(a)?;
    let f = fixed_subgroup(&group, &phi);
    let out = FixedOut {
        order: f.order(),
        elements: f.members().to_vec(),
    };
    if g.json {
        emit(&out);
    } else {
        println!("|F(phi)| = {}", out.order);
        println!("elements: {:?}", out.elements);
    }
    Ok(Outcome::Success)
}

fn char_table(g: &GlobalOpts, spec: &str) -> Result<Outcome> {
    let group = resolve_group(spec)?;
    let table = character_table(&group).map_err(|e| CliError::Failed(e.to_string()))?;
    if g.json {
        emit(&table);
        return Ok(Outcome::Success);
    }
    let f = table.field();
    let cells: Vec<Vec<String>> = table
        .characters
        .iter()
        .map(|row| row.iter().map(|v| f.format(v)).collect())
        .collect();
    let width = cells
        .iter()
        .flatten()
        .map(String::len)
        .chain(table.class_reps.iter().map(|r| r.to_string().len()))
        .max()
        .unwrap_or(1)
        .max(4);
    println!("z = exp(2 pi i / {})", table.root_order);
    let line = |label: &str, vals: Vec<String>| {
        let body: Vec<String> = vals.iter().map(|v| format!("{v:>width$}")).collect();
        println!("{label:<6}{}", body.join("  "));
    };
    line("rep", table.class_reps.iter().map(|r| r.to_string()).collect());
    line("size", table.class_sizes.iter().map(|r| r.to_string()).collect());
    for (i, row) in cells.into_iter().enumerate() {
        line(&format!("X.{}", i + 1), row);
    }
    Ok(Outcome::Success)
}

fn tbft(g: &GlobalOpts, spec: &str, aut: Option<&str>) -> Result<Outcome> {
    let group = resolve_group(spec)?;
    let table = character_table(&group).map_err(|e| CliError::Failed(e.to_string()))?;
    let auts = match aut {
        Some(a) => vec![resolve_automorphism(a, &group)?],
        None => enumerate_automorphisms(&group, DEFAULT_AUTOMORPHISM_CAP).automorphisms,
    };
    let reports: Vec<_> = auts.iter().map(|phi| tbft_check_with(&group, &table, phi)).collect();
    let ok = reports.iter().all(|r| r.equal && r.fixed_classes == r.fixed_characters);
    if g.json {
        emit(&reports);
    } else {
        for (phi, r) in auts.iter().zip(&reports) {
            println!(
                "phi={:?}: R(phi) = {}, fixed characters = {}, fixed classes = {}: {}",
                phi.image(),
                r.reidemeister_number,
                r.fixed_characters,
                r.fixed_classes,
                if r.equal { "equal" } else { "DIFFERENT" }
            );
        }
    }
    Ok(outcome(ok))
}

fn zk(g: &GlobalOpts, spec: &str) -> Result<Outcome> {
    let d = resolve_matrix(spec)?;
    let z = reidemeister_zk(&d).map_err(|e| CliError::Usage(e.to_string()))?;
    if g.json {
        emit(&z);
        return Ok(Outcome::Success);
    }
    println!("R(d) = {}", z.count);
    println!("Smith diagonal of I - d: {:?}", z.smith.diag.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    if let Some(q) = &z.quotient {
        println!("coker(I - d) invariant factors: {:?}", q.invariant_factors);
    }
    println!("F(d) trivial: {}", z.fixed_trivial);
    Ok(Outcome::Success)
}

fn scenario(g: &GlobalOpts, spec: &str) -> Result<Scenario> {
    let mut sc = resolve_scenario(spec)?;
    if let Some(w) = g.window {
        sc.window = w;
    }
    if let Some(b) = g.budget {
        sc.budget = b;
    }
    Ok(sc)
}

fn automorphism(g: &GlobalOpts, spec: &str) -> Result<WreathAutomorphism> {
    let sc = scenario(g, spec)?;
    sc.automorphism()
        .map_err(|e| CliError::Usage(format!("scenario {}: {e}", sc.name)))
}

#[derive(Serialize)]
struct WreathCheckOut {
    scenario: String,
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<reidemeister::wreath::Certificate>,
}

fn wreath_check(g: &GlobalOpts, spec: &str) -> Result<Outcome> {
    let sc = scenario(g, spec)?;
    let out = match sc.automorphism() {
        Ok(phi) => WreathCheckOut {
            scenario: sc.name.clone(),
            valid: true,
            error: None,
            order: Some(phi.order()),
            certificate: Some(phi.certificate().clone()),
        },
        Err(e) => WreathCheckOut {
            scenario: sc.name.clone(),
            valid: false,
            error: Some(e.to_string()),
            order: None,
            certificate: None,
        },
    };
    if g.json {
        emit(&out);
    } else {
        println!("scenario {}: G of order {}, k = {}", out.scenario, sc.group.order(), sc.k());
        match (&out.certificate, &out.error) {
            (Some(c), _) => {
                println!("valid: {}", c.checks.join(", "));
                println!("order of d: {}", out.order.unwrap_or(0));
                match c.window_order {
                    Some(s) => println!("order of phi' on the window: {s}"),
                    None => println!("order of phi' on the window: above the search limit"),
                }
                if c.condition4.holds() {
                    println!("condition (4): holds on window {}", c.window);
                } else {
                    println!("condition (4): fails on window {} ({:?})", c.window, c.condition4);
                }
            }
            (None, Some(e)) => println!("invalid: {e}"),
            (None, None) => {}
        }
    }
    Ok(outcome(out.valid))
}

fn parse_point(text: &str, k: usize) -> Result<Vec<i64>> {
    let t = text.trim().trim_start_matches('[').trim_end_matches(']');
    let p = t
        .split(',')
        .map(|s| s.trim().parse::<i64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| CliError::Usage(format!("point {text:?}: {e}")))?;
    if p.len() != k {
        return Err(CliError::Usage(format!("point {text:?} has {} coordinates, expected {k}", p.len())));
    }
    Ok(p)
}

fn witness(g: &GlobalOpts, spec: &str, sigma0: &str, m: Option<&str>) -> Result<Outcome> {
    let phi = automorphism(g, spec)?;
    let text = if sigma0.trim_start().starts_with('[') {
        sigma0.to_owned()
    } else {
        read_text(Path::new(sigma0))?
    };
    let s0: SigmaElement = parse_sigma_json(&text, phi.group(), "--sigma0")?;
    s0.check(phi.group(), phi.k()).map_err(|e| CliError::Usage(e.to_string()))?;
    let m = match m {
        Some(m) => parse_point(m, phi.k())?,
        None => maximal_orbit_point(&phi)
            .ok_or_else(|| CliError::Failed("no point with a full d-orbit inside the window".into()))?,
    };
    let w = match fixed_witness_generator(&phi, &s0, &m, g.count) {
        Ok(w) => w,
        Err(e @ (WreathError::NotFixed | WreathError::OrbitNotMaximal { .. })) => {
            return Err(CliError::Usage(e.to_string()))
        }
        Err(e) => return Err(failed(e)),
    };
    if g.json {
        emit(&w);
    } else {
        println!("m = {m:?}, bound 2 diam(sigma0) = {}", w.first().map_or(0, |x| x.bound));
        for x in &w {
            println!(
                "n = {}: separation {} > {}; {}",
                x.multiplier,
                x.separation,
                x.bound,
                serde_json::to_string(&x.element).expect("element serializes")
            );
        }
    }
    Ok(Outcome::Success)
}

fn separate(g: &GlobalOpts, spec: &str, radius: i64, pairwise: bool) -> Result<Outcome> {
    let phi = automorphism(g, spec)?;
    let options = ProbeOptions {
        radius,
        pairwise,
        count: g.count,
    };
    let r = separation_pipeline(&phi, &options).map_err(failed)?;
    if g.json {
        emit(&r);
        return Ok(Outcome::Success);
    }
    println!("R(d) = {}", r.r_bar);
    if r.invariant_factors.is_empty() && r.representatives.is_empty() {
        println!("R(phi) = infinite");
        return Ok(Outcome::Success);
    }
    println!("coker(I - d) invariant factors: {:?}", r.invariant_factors);
    println!("probe set: {}", r.probe_set);
    for rep in &r.representatives {
        match &rep.evidence {
            Evidence::One {
                closures,
                largest_closure,
            } => println!(
                "z = {:?}: R = 1 on {closures} closures (largest of order {largest_closure})",
                rep.z
            ),
            Evidence::Infinite { fixed, witnesses, .. } => println!(
                "z = {:?}: fixed element {} and {} witnesses",
                rep.z,
                serde_json::to_string(fixed).expect("element serializes"),
                witnesses.len()
            ),
        }
    }
    match r.reidemeister_number() {
        Some(n) => println!("R(phi) = {n}; classes separated by the image of z in coker(I - d)"),
        None => println!("R(phi) = infinite"),
    }
    Ok(Outcome::Success)
}

fn solvability(g: &GlobalOpts, spec: &str) -> Result<Outcome> {
    let phi = automorphism(g, spec)?;
    let r = solvability_pipeline(&phi).map_err(failed)?;
    if g.json {
        emit(&r);
    } else {
        println!("|Sigma_0| = {}", r.sigma0_order);
        println!("fixed-point-free on Sigma_0: {}", r.fixed_point_free);
        println!("derived series orders: {:?}", r.derived_orders);
        println!("Sigma_0 solvable: {}", r.sigma0_solvable);
        println!("G solvable: {}", r.group_solvable);
    }
    Ok(outcome(r.consistent()))
}

#[derive(Serialize)]
struct VerifyHeader<'a> {
    seed: u64,
    checks: Vec<&'static str>,
    group: Option<&'a str>,
}

fn verify(g: &GlobalOpts, v: &VerifyArgs) -> Result<Outcome> {
    let checks = if v.all {
        CheckId::ALL.to_vec()
    } else {
        v.check
            .iter()
            .map(|c| c.parse::<CheckId>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(CliError::Usage)?
    };
    let corpus = Corpus::bundled();
    if let Some(name) = &v.group {
        if corpus.get(name).is_none() {
            return Err(CliError::Usage(format!("unknown corpus group {name:?}")));
        }
    }
    let opts = SuiteOptions {
        checks,
        group: v.group.clone(),
        seed: g.seed,
        ..Default::default()
    };
    let report = run_suite(&corpus, &opts);
    let header = VerifyHeader {
        seed: g.seed,
        checks: opts.checks.iter().map(|c| c.name()).collect(),
        group: v.group.as_deref(),
    };
    if g.json {
        println!("{}", serde_json::to_string(&header).expect("header serializes"));
        for e in &report.enumerations {
            if e.truncated {
                println!("{}", serde_json::to_string(e).expect("summary serializes"));
            }
        }
        for r in &report.reports {
            println!("{}", serde_json::to_string(r).expect("report serializes"));
        }
    } else {
        println!("seed {}", header.seed);
        for e in report.enumerations.iter().filter(|e| e.truncated) {
            println!(
                "{}: {} of {} automorphisms sampled",
                e.group.as_deref().unwrap_or("?"),
                e.kept,
                e.found
            );
        }
        for (id, pass, fail, skipped) in report.tally() {
            println!("{:<17} pass {pass:>6}  fail {fail:>3}  skipped {skipped:>3}", id.name());
        }
        for f in report.failures() {
            println!("FAIL {} {}: {:?}", f.check, f.scope, f.counterexample);
        }
    }
    Ok(outcome(report.all_pass()))
}
