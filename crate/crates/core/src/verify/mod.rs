//! Corpus-wide executable checks.
//!
//! | id | instance | statement |
//! |----|----------|-----------|
//! | `tbft` | `(G, phi)` | `R(phi)` equals the number of `phi`-fixed irreducible characters |
//! | `brauer` | `(G, phi)` | fixed irreducible characters and fixed classes agree in number |
//! | `shift-bijection` | `(G, phi)`, `\|G\| <= 16` | right translation by `x` matches the classes of `phi` and `tau_{x^-1} ∘ phi` |
//! | `fixed-points` | `(G, phi)` | `R(phi) > 1` exactly when `F(phi)` is nontrivial |
//! | `orbit-stabilizer` | `(G, phi)` | `\|class(x)\| \|stab(x)\| = \|G\|` |
//! | `rowley` | `(G, phi)` with `F(phi) = {e}` | `G` is solvable |
//! | `extension-sum` | `(G, phi, H)` | projection, intersection and sum statements for `H ⊴ G` |
//! | `smith` | random `d` of finite order | Smith form of `I - d`, cokernel order and dual count |
//! | `iterate-formula` | bundled scenario | iterates of `phi'` on shifted elements match the closed form |
//! | `solvability` | bundled scenario | fixed-point-free `Sigma_0` forces solvable `Sigma_0` and `G` |

pub mod enumerate;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use enumerate::{
    enumerate_automorphisms, enumerate_automorphisms_seeded, AutomorphismEnumeration,
    EnumerationSummary, DEFAULT_AUTOMORPHISM_CAP,
};

use crate::corpus::{named, Corpus};
use crate::group::{
    derived_series, extension_sum_check, fixed_subgroup, generated_subgroup, shift_class_map,
    twisted_classes, twisted_stabilizer, Automorphism, Elem, FiniteGroup, Subgroup,
};
use crate::lattice::{
    dual_fixed_count_abelian, matrix_order, reidemeister_zk, smith_normal_form, IntMatrix,
    ReidemeisterCount,
};
use crate::repr::{character_table, fixed_irreducibles, CharacterTable};
use crate::wreath::{scenarios, solvability_pipeline, SigmaElement, WreathAutomorphism};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckId {
    Tbft,
    Brauer,
    ShiftBijection,
    FixedPoints,
    OrbitStabilizer,
    Rowley,
    ExtensionSum,
    Smith,
    IterateFormula,
    Solvability,
}

impl CheckId {
    pub const ALL: [CheckId; 10] = [
        CheckId::Tbft,
        CheckId::Brauer,
        CheckId::ShiftBijection,
        CheckId::FixedPoints,
        CheckId::OrbitStabilizer,
        CheckId::Rowley,
        CheckId::ExtensionSum,
        CheckId::Smith,
        CheckId::IterateFormula,
        CheckId::Solvability,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::Tbft => "tbft",
            CheckId::Brauer => "brauer",
            CheckId::ShiftBijection => "shift-bijection",
            CheckId::FixedPoints => "fixed-points",
            CheckId::OrbitStabilizer => "orbit-stabilizer",
            CheckId::Rowley => "rowley",
            CheckId::ExtensionSum => "extension-sum",
            CheckId::Smith => "smith",
            CheckId::IterateFormula => "iterate-formula",
            CheckId::Solvability => "solvability",
        }
    }

    fn per_automorphism(self) -> bool {
        matches!(
            self,
            CheckId::Tbft
                | CheckId::Brauer
                | CheckId::ShiftBijection
                | CheckId::FixedPoints
                | CheckId::OrbitStabilizer
                | CheckId::Rowley
        )
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CheckId::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| {
            let known: Vec<&str> = CheckId::ALL.iter().map(|c| c.name()).collect();
            format!("unknown check {s:?}; expected one of {}", known.join(", "))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Scope {
    Group {
        group: String,
    },
    Automorphism {
        group: String,
        image: Vec<Elem>,
    },
    Extension {
        group: String,
        image: Vec<Elem>,
        subgroup: Vec<Elem>,
    },
    Matrix {
        d: IntMatrix,
    },
    Scenario {
        scenario: String,
        seed: u64,
        instances: usize,
    },
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scope::Group { group } => write!(f, "{group}"),
            Scope::Automorphism { group, image } => write!(f, "{group} phi={image:?}"),
            Scope::Extension { group, image, subgroup } => {
                write!(f, "{group} phi={image:?} H={subgroup:?}")
            }
            Scope::Matrix { d } => write!(f, "d={:?}", d.to_i64().unwrap_or_default()),
            Scope::Scenario { scenario, .. } => write!(f, "{scenario}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub detail: String,
    pub expected: String,
    pub found: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: CheckId,
    pub scope: Scope,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl CheckReport {
    fn pass(check: CheckId, scope: Scope) -> Self {
        CheckReport {
            check,
            scope,
            verdict: Verdict::Pass,
            counterexample: None,
            note: None,
        }
    }

    fn fail(check: CheckId, scope: Scope, detail: impl Into<String>, expected: impl ToString, found: impl ToString) -> Self {
        CheckReport {
            check,
            scope,
            verdict: Verdict::Fail,
            counterexample: Some(Counterexample {
                detail: detail.into(),
                expected: expected.to_string(),
                found: found.to_string(),
            }),
            note: None,
        }
    }

    fn skipped(check: CheckId, scope: Scope, note: impl Into<String>) -> Self {
        CheckReport {
            check,
            scope,
            verdict: Verdict::Skipped,
            counterexample: None,
            note: Some(note.into()),
        }
    }

    fn compare<T: PartialEq + ToString>(check: CheckId, scope: Scope, detail: &str, expected: T, found: T) -> Self {
        if expected == found {
            Self::pass(check, scope)
        } else {
            Self::fail(check, scope, detail, expected, found)
        }
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteOptions {
    pub checks: Vec<CheckId>,
    /// Restricts group checks to one corpus group and drops the others.
    pub group: Option<String>,
    pub seed: u64,
    pub automorphism_cap: usize,
    pub shift_max_order: usize,
    /// Automorphisms per group fed to `extension-sum`.
    pub extension_samples: usize,
    pub matrices: usize,
    pub max_dim: usize,
    pub formula_instances: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            checks: CheckId::ALL.to_vec(),
            group: None,
            seed: 0,
            automorphism_cap: DEFAULT_AUTOMORPHISM_CAP,
            shift_max_order: 16,
            extension_samples: 16,
            matrices: 200,
            max_dim: 4,
            formula_instances: 500,
        }
    }
}

impl SuiteOptions {
    pub fn only(checks: &[CheckId]) -> Self {
        SuiteOptions {
            checks: checks.to_vec(),
            ..Default::default()
        }
    }

    fn wants(&self, c: CheckId) -> bool {
        self.checks.contains(&c)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub checks: Vec<CheckId>,
    pub enumerations: Vec<EnumerationSummary>,
    pub reports: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckReport> {
        self.reports.iter().filter(|r| r.failed())
    }

    pub fn all_pass(&self) -> bool {
        self.failures().next().is_none()
    }

    /// `(check, pass, fail, skipped)` for every selected check, in check order.
    pub fn tally(&self) -> Vec<(CheckId, usize, usize, usize)> {
        let mut out: Vec<(CheckId, usize, usize, usize)> = self.checks.iter().map(|&c| (c, 0, 0, 0)).collect();
        out.sort_by_key(|t| t.0);
        out.dedup_by_key(|t| t.0);
        for r in &self.reports {
            let Some(row) = out.iter_mut().find(|t| t.0 == r.check) else {
                continue;
            };
            match r.verdict {
                Verdict::Pass => row.1 += 1,
                Verdict::Fail => row.2 += 1,
                Verdict::Skipped => row.3 += 1,
            }
        }
        out
    }
}

struct GroupContext<'a> {
    group: &'a FiniteGroup,
    name: String,
    table: Option<Result<CharacterTable, String>>,
    solvable: bool,
    shift_max_order: usize,
}

impl<'a> GroupContext<'a> {
    fn new(group: &'a FiniteGroup, with_table: bool, shift_max_order: usize) -> Self {
        GroupContext {
            group,
            name: group.name().unwrap_or("unnamed").to_owned(),
            table: with_table.then(|| character_table(group).map_err(|e| e.to_string())),
            solvable: derived_series(group).solvable,
            shift_max_order,
        }
    }

    fn scope(&self, phi: &Automorphism) -> Scope {
        Scope::Automorphism {
            group: self.name.clone(),
            image: phi.image().to_vec(),
        }
    }
}

fn automorphism_check(id: CheckId, ctx: &GroupContext, phi: &Automorphism) -> Option<CheckReport> {
    let g = ctx.group;
    let scope = ctx.scope(phi);
    let report = match id {
        CheckId::Tbft | CheckId::Brauer => {
            let table = match ctx.table.as_ref()? {
                Ok(t) => t,
                Err(e) => return Some(CheckReport::fail(id, scope, "character table", "a table", e)),
            };
            let (fixed, dual) = fixed_irreducibles(table, phi);
            if id == CheckId::Tbft {
                let r = twisted_classes(g, phi).count();
                CheckReport::compare(id, scope, "R(phi) against fixed irreducible characters", r, fixed)
            } else {
                CheckReport::compare(id, scope, "fixed classes against fixed characters", dual.fixed_classes, fixed)
            }
        }
        CheckId::ShiftBijection => {
            if g.order() > ctx.shift_max_order {
                return None;
            }
            let r = twisted_classes(g, phi).count();
            for x in g.elements() {
                let map = shift_class_map(g, phi, x);
                if !map.verify(g) || map.target.count() != r {
                    return Some(CheckReport::fail(
                        id,
                        scope,
                        format!("shift by element {x}"),
                        r,
                        map.target.count(),
                    ));
                }
            }
            CheckReport::pass(id, scope)
        }
        CheckId::FixedPoints => {
            let r = twisted_classes(g, phi).count();
            let nontrivial = !fixed_subgroup(g, phi).is_trivial();
            CheckReport::compare(id, scope, &format!("R(phi) = {r}"), nontrivial, r > 1)
        }
        CheckId::OrbitStabilizer => {
            let p = twisted_classes(g, phi);
            for x in g.elements() {
                let product = p.class_size(p.class_of(x)) * twisted_stabilizer(g, phi, x).order();
                if product != g.order() {
                    return Some(CheckReport::fail(id, scope, format!("element {x}"), g.order(), product));
                }
            }
            CheckReport::pass(id, scope)
        }
        CheckId::Rowley => {
            if !fixed_subgroup(g, phi).is_trivial() {
                return None;
            }
            CheckReport::compare(id, scope, "solvable group under a fixed-point-free automorphism", true, ctx.solvable)
        }
        _ => return None,
    };
    Some(report)
}

/// Distinct proper nontrivial normal closures of single elements.
pub fn normal_closures(group: &FiniteGroup) -> Vec<Subgroup> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for x in group.elements() {
        let conjugates: Vec<Elem> = group.elements().map(|g| group.conj(g, x)).collect();
        let h = generated_subgroup(group, &conjugates);
        if h.order() > 1 && h.order() < group.order() && seen.insert(h.members().to_vec()) {
            out.push(h);
        }
    }
    out
}

fn is_invariant(sub: &Subgroup, phi: &Automorphism) -> bool {
    sub.members().iter().all(|&x| sub.contains(phi.apply(x)))
}

fn extension_report(name: &str, group: &FiniteGroup, phi: &Automorphism, sub: &Subgroup) -> CheckReport {
    let id = CheckId::ExtensionSum;
    let scope = Scope::Extension {
        group: name.to_owned(),
        image: phi.image().to_vec(),
        subgroup: sub.members().to_vec(),
    };
    match extension_sum_check(group, sub, phi) {
        Err(e) => CheckReport::fail(id, scope, "extension check", "a report", e),
        Ok(r) if r.all_hold() => {
            let mut rep = CheckReport::pass(id, scope);
            if let Some(sum) = &r.sum {
                rep.note = Some(format!("sum {:?} = {}", sum.terms, r.r_phi));
            }
            rep
        }
        Ok(r) => CheckReport::fail(
            id,
            scope,
            serde_json::to_string(&r).unwrap_or_default(),
            "all statements hold",
            "a statement fails",
        ),
    }
}

fn group_reports(group: &FiniteGroup, opts: &SuiteOptions) -> (EnumerationSummary, Vec<CheckReport>) {
    let enumeration = enumerate_automorphisms_seeded(group, opts.automorphism_cap, opts.seed);
    let with_table = opts.wants(CheckId::Tbft) || opts.wants(CheckId::Brauer);
    let ctx = GroupContext::new(group, with_table, opts.shift_max_order);
    let ids: Vec<CheckId> = opts.checks.iter().copied().filter(|c| c.per_automorphism()).collect();
    let mut reports: Vec<CheckReport> = enumeration
        .automorphisms
        .par_iter()
        .flat_map_iter(|phi| ids.iter().filter_map(|&id| automorphism_check(id, &ctx, phi)).collect::<Vec<_>>())
        .collect();

    if opts.wants(CheckId::ExtensionSum) {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut sample: Vec<&Automorphism> = enumeration.automorphisms.iter().collect();
        sample.shuffle(&mut rng);
        sample.truncate(opts.extension_samples);
        let subs = normal_closures(group);
        for phi in sample {
            for h in subs.iter().filter(|h| is_invariant(h, phi)) {
                reports.push(extension_report(&ctx.name, group, phi, h));
            }
        }
    }
    (enumeration.summary(group), reports)
}

/// A random integer matrix of finite order: a block-diagonal matrix with
/// blocks of order 1, 2, 3, 4 or 6 conjugated by a random unimodular matrix.
pub fn random_finite_order_matrix<R: Rng>(rng: &mut R, k: usize) -> IntMatrix {
    const BLOCKS: [&[&[i64]]; 5] = [
        &[&[1]],
        &[&[-1]],
        &[&[0, -1], &[1, -1]],
        &[&[0, -1], &[1, 0]],
        &[&[1, -1], &[1, 0]],
    ];
    let mut m = vec![vec![0i64; k]; k];
    let mut at = 0;
    while at < k {
        let block = loop {
            let b = BLOCKS[rng.gen_range(0..BLOCKS.len())];
            if at + b.len() <= k {
                break b;
            }
        };
        for (i, row) in block.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m[at + i][at + j] = v;
            }
        }
        at += block.len();
    }
    let mut p = vec![vec![0i64; k]; k];
    for (i, row) in p.iter_mut().enumerate() {
        row[i] = 1;
    }
    if k > 1 {
        for _ in 0..2 * k {
            let i = rng.gen_range(0..k);
            let j = (i + rng.gen_range(1..k)) % k;
            let c = if rng.gen_bool(0.5) { 1 } else { -1 };
            for r in 0..k {
                p[r][j] += c * p[r][i];
            }
        }
    }
    let m = IntMatrix::from_i64(&m).expect("square");
    let p = IntMatrix::from_i64(&p).expect("square");
    let p_inv = p.inverse_unimodular().expect("unimodular");
    p.mul(&m).mul(&p_inv)
}

/// Checks the Smith form of `I - d`, the cokernel order against
/// `|det(I - d)|` and the number of dual-fixed characters.
pub fn smith_report(d: &IntMatrix) -> CheckReport {
    let id = CheckId::Smith;
    let scope = Scope::Matrix { d: d.clone() };
    if let Err(e) = matrix_order(d, crate::lattice::DEFAULT_MAX_ORDER) {
        return CheckReport::skipped(id, scope, e.to_string());
    }
    let a = d.identity_minus();
    let snf = smith_normal_form(&a);
    if !snf.verify(&a) {
        return CheckReport::fail(id, scope, "U (I - d) V", "diagonal with divisibility", "mismatch");
    }
    let det = a.determinant().abs();
    let zk = match reidemeister_zk(d) {
        Ok(z) => z,
        Err(e) => return CheckReport::fail(id, scope, "cokernel", "a quotient", e),
    };
    match (&zk.count, &zk.quotient) {
        (ReidemeisterCount::Infinite, _) => {
            CheckReport::compare(id, scope, "det(I - d) of an infinite count", BigInt::from(0), det)
        }
        (ReidemeisterCount::Finite(n), Some(q)) => {
            if BigInt::from(*n) != det {
                return CheckReport::fail(id, scope, "|coker(I - d)|", det, n);
            }
            CheckReport::compare(id, scope, "dual-fixed characters of A", q.order, dual_fixed_count_abelian(q, d))
        }
        (ReidemeisterCount::Finite(_), None) => CheckReport::fail(id, scope, "cokernel", "a quotient", "none"),
    }
}

fn scenario_scope(name: &str, opts: &SuiteOptions) -> Scope {
    Scope::Scenario {
        scenario: name.to_owned(),
        seed: opts.seed,
        instances: opts.formula_instances,
    }
}

/// `instances` random `(m, h, q)` with `m` in `[-3, 3]^k`, `h` in `G_0` and
/// `1 <= q <= s`, drawn from `seed`.
pub fn formula_instances(phi: &WreathAutomorphism, seed: u64, instances: usize) -> Vec<(Vec<i64>, SigmaElement, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = phi.group();
    (0..instances)
        .map(|_| {
            let m: Vec<i64> = (0..phi.k()).map(|_| rng.gen_range(-3..=3)).collect();
            let h = SigmaElement::single(g, vec![0; phi.k()], rng.gen_range(0..g.order()));
            let q = rng.gen_range(1..=phi.order());
            (m, h, q)
        })
        .collect()
}

fn scenario_report(id: CheckId, name: &str, opts: &SuiteOptions) -> CheckReport {
    let scope = scenario_scope(name, opts);
    let Some(sc) = scenarios::by_name(name) else {
        return CheckReport::fail(id, scope, "scenario lookup", name, "missing");
    };
    let phi = match sc.automorphism() {
        Ok(p) => p,
        Err(e) => return CheckReport::fail(id, scope, "scenario validation", "valid", e),
    };
    match id {
        CheckId::IterateFormula => {
            for (m, h, q) in formula_instances(&phi, opts.seed, opts.formula_instances) {
                let detail = format!("m={m:?} h={} q={q}", serde_json::to_string(&h).unwrap_or_default());
                match phi.iterate_formula_check(&m, &h, q) {
                    Ok(r) if r.holds() => {}
                    Ok(r) => {
                        return CheckReport::fail(
                            id,
                            scope,
                            detail,
                            serde_json::to_string(&r.closed_form).unwrap_or_default(),
                            serde_json::to_string(&r.iterated).unwrap_or_default(),
                        )
                    }
                    Err(e) => return CheckReport::fail(id, scope, detail, "a report", e),
                }
            }
            CheckReport::pass(id, scope)
        }
        CheckId::Solvability => match solvability_pipeline(&phi) {
            Err(e) => CheckReport::fail(id, scope, "closure of G_0", "a closure", e),
            Ok(r) if !r.fixed_point_free => CheckReport::skipped(id, scope, "induced automorphism has fixed points"),
            Ok(r) => CheckReport::compare(
                id,
                scope,
                &format!("derived orders {:?}", r.derived_orders),
                "Sigma_0 and G solvable".to_string(),
                solvable_text(r.sigma0_solvable, r.group_solvable),
            ),
        },
        _ => CheckReport::skipped(id, scope, "not a scenario check"),
    }
}

fn solvable_text(sigma0: bool, group: bool) -> String {
    match (sigma0, group) {
        (true, true) => "Sigma_0 and G solvable".into(),
        (false, _) => "Sigma_0 not solvable".into(),
        (true, false) => "G not solvable".into(),
    }
}

/// Runs the selected checks in a deterministic order: groups in corpus
/// order, then matrices, then scenarios.
pub fn run_suite(corpus: &Corpus, opts: &SuiteOptions) -> SuiteReport {
    let groups: Vec<&FiniteGroup> = corpus
        .groups()
        .iter()
        .filter(|g| opts.group.as_deref().map_or(true, |n| g.name() == Some(n)))
        .collect();
    let group_checks = opts.checks.iter().any(|c| c.per_automorphism() || *c == CheckId::ExtensionSum);
    let mut enumerations = Vec::new();
    let mut reports = Vec::new();
    if group_checks {
        for g in groups {
            let (summary, r) = group_reports(g, opts);
            enumerations.push(summary);
            reports.extend(r);
        }
    }
    if opts.group.is_none() {
        if opts.wants(CheckId::Smith) {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let mats: Vec<IntMatrix> = (0..opts.matrices)
                .map(|_| {
                    let k = rng.gen_range(1..=opts.max_dim.max(1));
                    random_finite_order_matrix(&mut rng, k)
                })
                .collect();
            reports.extend(mats.par_iter().map(smith_report).collect::<Vec<_>>());
        }
        for id in [CheckId::IterateFormula, CheckId::Solvability] {
            if opts.wants(id) {
                for sc in scenarios::bundled() {
                    reports.push(scenario_report(id, &sc.name, opts));
                }
            }
        }
    }
    SuiteReport {
        seed: opts.seed,
        checks: opts.checks.clone(),
        enumerations,
        reports,
    }
}

/// Re-runs the check behind a report from its scope alone.
pub fn replay(check: CheckId, scope: &Scope) -> Option<CheckReport> {
    match scope {
        Scope::Automorphism { group, image } => {
            let g = named(group)?;
            let phi = Automorphism::new(&g, image.clone()).ok()?;
            let ctx = GroupContext::new(&g, matches!(check, CheckId::Tbft | CheckId::Brauer), usize::MAX);
            automorphism_check(check, &ctx, &phi)
        }
        Scope::Extension { group, image, subgroup } => {
            let g = named(group)?;
            let phi = Automorphism::new(&g, image.clone()).ok()?;
            let h = Subgroup::new(&g, subgroup.clone()).ok()?;
            Some(extension_report(group, &g, &phi, &h))
        }
        Scope::Matrix { d } => Some(smith_report(d)),
        Scope::Scenario { scenario, seed, instances } => {
            let opts = SuiteOptions {
                seed: *seed,
                formula_instances: *instances,
                ..Default::default()
            };
            Some(scenario_report(check, scenario, &opts))
        }
        Scope::Group { .. } => None,
    }
}

/// Finite `|det(I - d)|` as `u64`, when it fits.
pub fn det_identity_minus(d: &IntMatrix) -> Option<u64> {
    d.identity_minus().determinant().abs().to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Corpus {
        Corpus::bundled().filter(|g| g.order() <= 8)
    }

    #[test]
    fn suite_passes_on_small_groups() {
        let opts = SuiteOptions {
            matrices: 20,
            formula_instances: 20,
            ..Default::default()
        };
        let r = run_suite(&small(), &opts);
        assert!(r.all_pass(), "{:?}", r.failures().next());
        let tally = r.tally();
        assert_eq!(tally.len(), CheckId::ALL.len());
        // Aut(C2^3) has 168 elements, each with one tbft report
        assert!(r.reports.iter().filter(|x| x.check == CheckId::Tbft).count() > 168);
    }

    #[test]
    fn suite_is_deterministic() {
        let opts = SuiteOptions {
            checks: vec![CheckId::ExtensionSum, CheckId::Smith],
            matrices: 10,
            ..Default::default()
        };
        let a = serde_json::to_string(&run_suite(&small(), &opts).reports).unwrap();
        let b = serde_json::to_string(&run_suite(&small(), &opts).reports).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn reports_replay_from_their_scope() {
        let opts = SuiteOptions {
            matrices: 5,
            formula_instances: 5,
            ..Default::default()
        };
        let r = run_suite(&Corpus::bundled().filter(|g| g.order() == 6), &opts);
        for rep in r.reports.iter().step_by(7) {
            assert_eq!(replay(rep.check, &rep.scope).as_ref(), Some(rep));
        }
    }

    #[test]
    fn failing_instance_carries_counterexample() {
        let scope = Scope::Group { group: "C1".into() };
        let rep = CheckReport::compare(CheckId::Tbft, scope, "count", 1, 2);
        assert!(rep.failed());
        let c = rep.counterexample.unwrap();
        assert_eq!((c.expected.as_str(), c.found.as_str()), ("1", "2"));
    }

    #[test]
    fn random_matrices_have_finite_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for k in 1..=4 {
            for _ in 0..10 {
                let d = random_finite_order_matrix(&mut rng, k);
                assert!(matrix_order(&d, 12).is_ok());
                assert!(d.is_unimodular());
            }
        }
    }

    #[test]
    fn extension_candidates_in_s3() {
        let g = named("S3").unwrap();
        let subs = normal_closures(&g);
        assert_eq!(subs.iter().map(|h| h.order()).collect::<Vec<_>>(), vec![3]);
    }
}
