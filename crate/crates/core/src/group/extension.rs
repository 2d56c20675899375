//! Reidemeister numbers along a `phi`-invariant normal subgroup `H ⊴ Γ`.
//!
//! With `phi'` the restriction to `H` and `phi~` the induced map on `Γ/H`:
//! projection maps classes of `phi` onto classes of `phi~`; `R(phi') <=
//! R(phi) |F(phi~)|`; and when `F(phi~)` is trivial, classes of `phi'` are the
//! traces on `H` of classes of `phi`, with
//! `R(phi) = sum_j R(tau_{g_j} ∘ phi')` over lifts `g_j` of the classes of
//! `phi~`.

use serde::Serialize;

use super::{
    fixed_subgroup, is_normal, quotient, twisted_classes, Automorphism, Elem, FiniteGroup,
    Subgroup,
};
use crate::error::GroupError;

#[derive(Clone, Debug, Serialize)]
pub struct SumFormula {
    /// Lifts `g_j` (minimal element of the coset) of the class
    /// representatives of the quotient automorphism.
    pub representatives: Vec<Elem>,
    /// `R(tau_{g_j} ∘ phi')` for each lift.
    pub terms: Vec<usize>,
    pub total: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionReport {
    pub r_phi: usize,
    pub r_quotient: usize,
    pub r_restricted: usize,
    pub quotient_fixed_order: usize,
    pub fixed_point_free_quotient: bool,
    /// Every class of `phi` projects onto exactly one class of `phi~`.
    pub projection_maps_classes: bool,
    /// `R(phi') <= R(phi) * |F(phi~)|`.
    pub restricted_bound_holds: bool,
    /// Only evaluated when `F(phi~)` is trivial.
    pub intersection_holds: Option<bool>,
    pub sum: Option<SumFormula>,
}

impl ExtensionReport {
    /// All statements that apply to this instance hold.
    pub fn all_hold(&self) -> bool {
        self.projection_maps_classes
            && self.restricted_bound_holds
            && self.r_quotient <= self.r_phi
            && self.intersection_holds.unwrap_or(true)
            && self.sum.as_ref().map_or(true, |s| s.holds)
    }
}

pub fn extension_sum_check(
    gamma: &FiniteGroup,
    sub: &Subgroup,
    phi: &Automorphism,
) -> Result<ExtensionReport, GroupError> {
    if !is_normal(gamma, sub) {
        return Err(GroupError::NotNormal {
            reason: format!("subgroup of order {} is not normal", sub.order()),
        });
    }
    let restricted = sub.restrict(phi)?;
    let quot = quotient(gamma, sub)?;
    let induced = quot.induced(phi);

    let classes = twisted_classes(gamma, phi);
    let q_classes = twisted_classes(&quot.group, &induced);
    let h = sub.as_group();
    let h_classes = twisted_classes(h, &restricted);
    let quotient_fixed_order = fixed_subgroup(&quot.group, &induced).order();

    // each phi-class must land in a single phi~-class, and the image of the
    // class must fill that phi~-class
    let mut projection_maps_classes = true;
    for members in classes.classes() {
        let target = q_classes.class_of(quot.projection[members[0]]);
        let mut hit = vec![false; quot.group.order()];
        for &x in &members {
            let q = quot.projection[x];
            if q_classes.class_of(q) != target {
                projection_maps_classes = false;
            }
            hit[q] = true;
        }
        let covered = hit.iter().filter(|&&b| b).count();
        if covered != q_classes.class_size(target) {
            projection_maps_classes = false;
        }
    }

    let restricted_bound_holds = h_classes.count() <= classes.count() * quotient_fixed_order;
    let fixed_point_free_quotient = quotient_fixed_order == 1;

    let (intersection_holds, sum) = if fixed_point_free_quotient {
        let mut ok = true;
        for local_members in h_classes.classes() {
            let parent: Vec<Elem> = local_members.iter().map(|&i| sub.to_parent(i)).collect();
            let c = classes.class_of(parent[0]);
            if parent.iter().any(|&x| classes.class_of(x) != c) {
                ok = false;
                continue;
            }
            let trace: Vec<Elem> = classes
                .members(c)
                .into_iter()
                .filter(|&x| sub.contains(x))
                .collect();
            if trace != parent {
                ok = false;
            }
        }

        let mut representatives = Vec::new();
        let mut terms = Vec::new();
        for &q in q_classes.representatives() {
            let g = quot.coset_reps[q];
            // tau_g ∘ phi' on local indices of H
            let image: Vec<usize> = sub
                .members()
                .iter()
                .map(|&x| {
                    sub.to_local(gamma.conj(g, phi.apply(x)))
                        .expect("normal invariant subgroup")
                })
                .collect();
            let twisted = Automorphism::from_image_unchecked(image);
            representatives.push(g);
            terms.push(twisted_classes(h, &twisted).count());
        }
        let total = terms.iter().sum();
        let sum = SumFormula {
            representatives,
            terms,
            total,
            holds: total == classes.count(),
        };
        (Some(ok), Some(sum))
    } else {
        (None, None)
    };

    Ok(ExtensionReport {
        r_phi: classes.count(),
        r_quotient: q_classes.count(),
        r_restricted: h_classes.count(),
        quotient_fixed_order,
        fixed_point_free_quotient,
        projection_maps_classes,
        restricted_bound_holds,
        intersection_holds,
        sum,
    })
}
