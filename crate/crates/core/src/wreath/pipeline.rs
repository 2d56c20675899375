use std::collections::BTreeSet;

use serde::Serialize;

use super::automorphism::box_points;
use super::closure::maximal_orbit_point;
use super::{
    fixed_witness_generator, sigma_closure, ClosureSeed, Condition4, Point, SigmaElement, Witness,
    WreathAutomorphism, WreathElement,
};
use crate::error::WreathError;
use crate::group::{derived_series, fixed_subgroup, twisted_orbit};
use crate::lattice::{reidemeister_zk, FiniteAbelianQuotient, ReidemeisterCount};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeOptions {
    /// Seeds are the `g_m` with `m` in `[-radius, radius]^k`.
    pub radius: i64,
    /// Also probe products of two seeds at distinct points.
    pub pairwise: bool,
    /// Witnesses requested once a fixed element is found.
    pub count: usize,
}

impl Default for ProbeOptions {
    fn default() -> Self {
        ProbeOptions {
            radius: 2,
            pairwise: true,
            count: 10,
        }
    }
}

impl ProbeOptions {
    pub fn describe(&self) -> String {
        format!(
            "g_m for g != e and m in [-{r},{r}]^k{pairs}",
            r = self.radius,
            pairs = if self.pairwise { ", plus products of two at distinct points" } else { "" }
        )
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Evidence {
    /// In every probed closure the twisted class of the identity is the whole closure.
    One { closures: usize, largest_closure: usize },
    /// A closure contains a nontrivial fixed element, and it seeds `witnesses`.
    Infinite {
        seed: SigmaElement,
        fixed: SigmaElement,
        m: Point,
        witnesses: Vec<Witness>,
    },
}

impl Evidence {
    pub fn is_one(&self) -> bool {
        matches!(self, Evidence::One { .. })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RepresentativeEvidence {
    pub z: Point,
    /// Coordinates of `z` in the quotient `A`.
    pub class: Vec<u64>,
    pub evidence: Evidence,
}

/// Class membership through `f o pi`, where `pi(sigma, z) = z` and `f`
/// projects onto `A = Z^k / im(I - d)`.
#[derive(Clone, Debug, Serialize)]
pub struct SeparationPredicate {
    pub quotient: FiniteAbelianQuotient,
}

impl SeparationPredicate {
    pub fn label(&self, x: &WreathElement) -> Vec<u64> {
        self.quotient.project(&x.z)
    }

    pub fn same_class(&self, x: &WreathElement, y: &WreathElement) -> bool {
        self.label(x) == self.label(y)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SeparationReport {
    pub r_bar: ReidemeisterCount,
    pub invariant_factors: Vec<u64>,
    pub condition4: Condition4,
    pub probe_set: String,
    pub representatives: Vec<RepresentativeEvidence>,
    pub predicate: Option<SeparationPredicate>,
}

impl SeparationReport {
    /// `R(phi)` when every representative gave [`Evidence::One`].
    pub fn reidemeister_number(&self) -> Option<u64> {
        self.predicate.as_ref().map(|p| p.quotient.order)
    }
}

pub(crate) fn probe_seeds(phi: &WreathAutomorphism, options: &ProbeOptions) -> Vec<SigmaElement> {
    let g = phi.group();
    let mut singles = Vec::new();
    for m in box_points(phi.k(), options.radius) {
        for x in g.elements().filter(|&x| x != g.identity()) {
            singles.push(SigmaElement::single(g, m.clone(), x));
        }
    }
    let mut out = singles.clone();
    if options.pairwise {
        let mut seen: BTreeSet<SigmaElement> = singles.iter().cloned().collect();
        for (i, a) in singles.iter().enumerate() {
            for b in &singles[i + 1..] {
                if a.supports_disjoint(b) {
                    let p = a.mul(g, b);
                    if seen.insert(p.clone()) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn probe_error(seed: &SigmaElement, e: WreathError) -> WreathError {
    WreathError::Probe {
        seed: serde_json::to_string(seed).unwrap_or_default(),
        source: Box::new(e),
    }
}

fn evidence_for(
    psi: &WreathAutomorphism,
    seeds: &[SigmaElement],
    count: usize,
) -> Result<Evidence, WreathError> {
    let mut largest = 0;
    for seed in seeds {
        let closure =
            sigma_closure(psi, &ClosureSeed::Element(seed.clone())).map_err(|e| probe_error(seed, e))?;
        largest = largest.max(closure.group.order());
        if let Some(&fixed) = closure.nontrivial_fixed().first() {
            let m = maximal_orbit_point(psi).ok_or_else(|| WreathError::OrbitNotMaximal {
                m: vec![],
                expected: psi.order(),
                found: 0,
            })?;
            let witnesses =
                fixed_witness_generator(psi, fixed, &m, count).map_err(|e| probe_error(seed, e))?;
            return Ok(Evidence::Infinite {
                seed: seed.clone(),
                fixed: fixed.clone(),
                m,
                witnesses,
            });
        }
        // with no fixed points the twisted class of the identity is everything
        let id = closure.group.identity();
        let orbit = twisted_orbit(&closure.group, &closure.automorphism, id);
        if orbit.len() != closure.group.order() {
            return Err(WreathError::InvalidAutomorphism {
                reason: "twisted orbit of the identity disagrees with the fixed subgroup".into(),
            });
        }
    }
    Ok(Evidence::One {
        closures: seeds.len(),
        largest_closure: largest,
    })
}

/// Runs the decomposition test: `R(phi-bar)` through the Smith form, then
/// probe evidence about `R(tau_z o phi')` for one `z` per class of `phi-bar`.
pub fn separation_pipeline(
    phi: &WreathAutomorphism,
    options: &ProbeOptions,
) -> Result<SeparationReport, WreathError> {
    let zk = reidemeister_zk(phi.d())?;
    let mut report = SeparationReport {
        r_bar: zk.count,
        invariant_factors: vec![],
        condition4: phi.certificate().condition4.clone(),
        probe_set: options.describe(),
        representatives: vec![],
        predicate: None,
    };
    let Some(quotient) = zk.quotient else {
        return Ok(report);
    };
    report.invariant_factors = quotient.invariant_factors.clone();
    let seeds = probe_seeds(phi, options);
    for class in quotient.elements() {
        let z = quotient.lift(&class);
        let psi = phi.conjugate_by_shift(&z)?;
        let evidence = evidence_for(&psi, &seeds, options.count)?;
        report.representatives.push(RepresentativeEvidence { z, class, evidence });
    }
    if report.representatives.iter().all(|r| r.evidence.is_one()) {
        report.predicate = Some(SeparationPredicate { quotient });
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct SolvabilityReport {
    /// Order of the closure `Sigma_0` of `G_0` under `phi'`.
    pub sigma0_order: usize,
    pub fixed_point_free: bool,
    pub derived_orders: Vec<usize>,
    pub sigma0_solvable: bool,
    pub group_solvable: bool,
}

impl SolvabilityReport {
    /// A fixed-point-free action on `Sigma_0` must come with solvable
    /// `Sigma_0` and `G`.
    pub fn consistent(&self) -> bool {
        !self.fixed_point_free || (self.sigma0_solvable && self.group_solvable)
    }
}

pub fn solvability_pipeline(phi: &WreathAutomorphism) -> Result<SolvabilityReport, WreathError> {
    let closure = sigma_closure(phi, &ClosureSeed::BaseCopy)?;
    let fixed = fixed_subgroup(&closure.group, &closure.automorphism);
    let series = derived_series(&closure.group);
    Ok(SolvabilityReport {
        sigma0_order: closure.group.order(),
        fixed_point_free: fixed.is_trivial(),
        derived_orders: series.orders(),
        sigma0_solvable: series.solvable,
        group_solvable: derived_series(phi.group()).solvable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wreath::scenarios;

    #[test]
    fn lamplighter_has_fixed_elements() {
        let phi = scenarios::lamplighter().automorphism().unwrap();
        let r = separation_pipeline(&phi, &ProbeOptions::default()).unwrap();
        assert_eq!(r.r_bar, ReidemeisterCount::Finite(2));
        assert_eq!(r.representatives.len(), 2);
        assert!(r.predicate.is_none());
        match &r.representatives[0].evidence {
            Evidence::Infinite { fixed, witnesses, .. } => {
                let g = phi.group();
                assert_eq!(*fixed, SigmaElement::from_pairs(g, [(vec![-2], 1), (vec![2], 1)]).unwrap());
                assert_eq!(witnesses.len(), 10);
            }
            other => panic!("unexpected evidence {other:?}"),
        }
    }

    #[test]
    fn c5_parity_scenario() {
        let phi = scenarios::c5_parity().automorphism().unwrap();
        assert!(!phi.certificate().condition4.holds());
        assert_eq!(phi.certificate().window_order, Some(4));
        let r = separation_pipeline(&phi, &ProbeOptions::default()).unwrap();
        assert!(r.representatives.iter().all(|x| x.evidence.is_one()));
        let p = r.predicate.as_ref().unwrap();
        assert_eq!(r.reidemeister_number(), Some(2));
        for z in -6i64..=6 {
            let x = WreathElement::translation(vec![z]);
            assert_eq!(p.label(&x), vec![z.rem_euclid(2) as u64]);
        }
    }

    #[test]
    fn singular_identity_minus_d_stops_early() {
        let phi = scenarios::identity_shift().automorphism().unwrap();
        let r = separation_pipeline(&phi, &ProbeOptions::default()).unwrap();
        assert_eq!(r.r_bar, ReidemeisterCount::Infinite);
        assert!(r.representatives.is_empty() && r.predicate.is_none());
    }

    #[test]
    fn klein_and_rotation_evidence() {
        let phi = scenarios::klein_order_three().automorphism().unwrap();
        let r = separation_pipeline(&phi, &ProbeOptions::default()).unwrap();
        assert_eq!(r.reidemeister_number(), Some(2));

        let phi = scenarios::c7_rotation().automorphism().unwrap();
        let r = separation_pipeline(&phi, &ProbeOptions::default()).unwrap();
        assert_eq!(r.r_bar, ReidemeisterCount::Finite(3));
        assert!(r.predicate.is_none());
        assert!(r.representatives.iter().all(|x| !x.evidence.is_one()));
    }

    #[test]
    fn klein_scenario_is_solvable() {
        let phi = scenarios::klein_order_three().automorphism().unwrap();
        let r = solvability_pipeline(&phi).unwrap();
        assert!(r.fixed_point_free);
        assert_eq!(r.sigma0_order, 4);
        assert!(r.sigma0_solvable && r.group_solvable && r.consistent());
    }
}
