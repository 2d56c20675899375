use std::collections::BTreeSet;

use serde::Serialize;

use super::{linf_distance, Point, SigmaElement, WreathAutomorphism};
use crate::error::WreathError;
use crate::group::{Automorphism, FiniteGroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosureSeed {
    Element(SigmaElement),
    /// The copy `G_0` of `G` at the origin.
    BaseCopy,
}

/// Finite `phi'`-invariant subgroup of the base generated by the orbit of a seed.
#[derive(Clone, Debug)]
pub struct SigmaClosure {
    pub group: FiniteGroup,
    /// `elements[i]` is the base element behind index `i`; index 0 is the identity.
    pub elements: Vec<SigmaElement>,
    /// `phi'` restricted to the closure.
    pub automorphism: Automorphism,
    /// The orbit that generates the closure.
    pub generators: Vec<SigmaElement>,
}

impl SigmaClosure {
    pub fn index_of(&self, x: &SigmaElement) -> Option<usize> {
        self.elements.iter().position(|e| e == x)
    }

    /// Non-identity elements fixed by the induced automorphism.
    pub fn nontrivial_fixed(&self) -> Vec<&SigmaElement> {
        self.automorphism
            .fixed_points()
            .filter(|&i| i != self.group.identity())
            .map(|i| &self.elements[i])
            .collect()
    }
}

fn orbit(phi: &WreathAutomorphism, x: &SigmaElement) -> Result<Vec<SigmaElement>, WreathError> {
    let mut out = vec![x.clone()];
    let mut cur = phi.apply_sigma(x)?;
    while cur != *x {
        if out.len() >= phi.budget() {
            return Err(WreathError::BudgetExceeded { budget: phi.budget() });
        }
        out.push(cur.clone());
        cur = phi.apply_sigma(&cur)?;
    }
    Ok(out)
}

pub fn sigma_closure(phi: &WreathAutomorphism, seed: &ClosureSeed) -> Result<SigmaClosure, WreathError> {
    let g = phi.group();
    let seeds: Vec<SigmaElement> = match seed {
        ClosureSeed::Element(s) => vec![s.clone()],
        ClosureSeed::BaseCopy => g
            .small_generating_set()
            .into_iter()
            .map(|x| SigmaElement::single(g, vec![0; phi.k()], x))
            .collect(),
    };
    let mut gens = BTreeSet::new();
    for s in &seeds {
        gens.extend(orbit(phi, s)?);
    }
    let mut generators: Vec<SigmaElement> = gens.into_iter().filter(|s| !s.is_identity()).collect();
    if generators.is_empty() {
        generators.push(SigmaElement::identity());
    }
    let budget = phi.budget();
    let (group, elements) = FiniteGroup::from_generators_bounded(&generators, |a, b| a.mul(g, b), budget)?
        .ok_or(WreathError::BudgetExceeded { budget })?;
    let index: std::collections::HashMap<&SigmaElement, usize> =
        elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let mut image = Vec::with_capacity(elements.len());
    for x in &elements {
        let y = phi.apply_sigma(x)?;
        match index.get(&y) {
            Some(&i) => image.push(i),
            None => {
                return Err(WreathError::InvalidAutomorphism {
                    reason: "closure is not invariant under phi'".into(),
                })
            }
        }
    }
    let automorphism = Automorphism::new(&group, image)?;
    Ok(SigmaClosure {
        group,
        elements,
        automorphism,
        generators,
    })
}

/// A `phi'`-fixed element built from a shifted copy of a fixed seed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub multiplier: i64,
    pub element: SigmaElement,
    /// `min_{j != l} |d^j(n m) - d^l(n m)|_inf`.
    pub separation: i64,
    /// `2 diam(supp sigma0)`; always strictly below `separation`.
    pub bound: i64,
}

/// Produces `count` pairwise distinct `phi'`-fixed elements
/// `prod_{j<s} phi'^j(alpha(n m) sigma0)` for increasing `n`.
///
/// Each `n` satisfies the strict separation bound. Consecutive candidates are
/// tried in turn and kept only when their support misses every earlier one,
/// and each kept element is checked fixed by applying `phi'` to it.
pub fn fixed_witness_generator(
    phi: &WreathAutomorphism,
    sigma0: &SigmaElement,
    m: &[i64],
    count: usize,
) -> Result<Vec<Witness>, WreathError> {
    let g = phi.group();
    if sigma0.is_identity() || phi.apply_sigma(sigma0)? != *sigma0 {
        return Err(WreathError::NotFixed);
    }
    let s = phi.order();
    let iterates: Vec<Point> = (0..s).map(|j| phi.apply_d_pow(m, j)).collect();
    let length = (1..=s).find(|&j| phi.apply_d_pow(m, j) == m).unwrap_or(s);
    if length != s || m.iter().all(|&x| x == 0) {
        return Err(WreathError::OrbitNotMaximal {
            m: m.to_vec(),
            expected: s,
            found: if m.iter().all(|&x| x == 0) { 1 } else { length },
        });
    }
    // d^j(n m) = n d^j m, so separations scale linearly in n
    let unit_sep = (0..s)
        .flat_map(|j| (j + 1..s).map(move |l| (j, l)))
        .map(|(j, l)| linf_distance(&iterates[j], &iterates[l]))
        .min();
    let bound = 2 * sigma0.diameter();
    let mut n = match unit_sep {
        Some(u) => bound / u + 1,
        None => 1,
    };

    let mut out: Vec<Witness> = Vec::with_capacity(count);
    let mut used: BTreeSet<Point> = BTreeSet::new();
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        if attempts > phi.budget() {
            return Err(WreathError::BudgetExceeded { budget: phi.budget() });
        }
        let shift: Point = m.iter().map(|x| x * n).collect();
        let mut cur = sigma0.shift(&shift);
        cur.check_window(phi.window())?;
        let mut product = SigmaElement::identity();
        for _ in 0..s {
            product = product.mul(g, &cur);
            cur = phi.apply_sigma(&cur)?;
        }
        let separation = unit_sep.map_or(i64::MAX, |u| u * n);
        let fresh = product.support().iter().all(|p| !used.contains(p));
        if separation > bound
            && fresh
            && !product.is_identity()
            && phi.apply_sigma(&product)? == product
        {
            used.extend(product.support());
            out.push(Witness {
                multiplier: n,
                element: product,
                separation,
                bound,
            });
        }
        n += 1;
    }
    Ok(out)
}

/// First nonzero point, by `l^inf` radius then lexicographically, whose
/// `d`-orbit has the full length `s`.
pub fn maximal_orbit_point(phi: &WreathAutomorphism) -> Option<Point> {
    let s = phi.order();
    for r in 1..=phi.window() {
        for p in super::automorphism::box_points(phi.k(), r) {
            if p.iter().map(|x| x.abs()).max() != Some(r) {
                continue;
            }
            if (1..=s).find(|&j| phi.apply_d_pow(&p, j) == p) == Some(s) {
                return Some(p);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::fixed_subgroup;
    use crate::wreath::scenarios;

    fn delta(g: &FiniteGroup, pts: &[i64]) -> SigmaElement {
        SigmaElement::from_pairs(g, pts.iter().map(|&p| (vec![p], 1))).unwrap()
    }

    #[test]
    fn closures_in_the_lamplighter() {
        let phi = scenarios::lamplighter().automorphism().unwrap();
        let g = phi.group().clone();

        let c = sigma_closure(&phi, &ClosureSeed::Element(SigmaElement::identity())).unwrap();
        assert_eq!(c.group.order(), 1);

        let c = sigma_closure(&phi, &ClosureSeed::Element(delta(&g, &[0]))).unwrap();
        assert_eq!(c.group.order(), 2);
        assert!(c.automorphism.is_identity());

        let c = sigma_closure(&phi, &ClosureSeed::Element(delta(&g, &[1]))).unwrap();
        assert_eq!(c.group.order(), 4);
        let a = c.index_of(&delta(&g, &[1])).unwrap();
        let b = c.index_of(&delta(&g, &[-1])).unwrap();
        assert_eq!(c.automorphism.apply(a), b);
        let fixed = fixed_subgroup(&c.group, &c.automorphism);
        let fixed: Vec<&SigmaElement> = fixed.members().iter().map(|&i| &c.elements[i]).collect();
        assert_eq!(fixed, vec![&SigmaElement::identity(), &delta(&g, &[-1, 1])]);
    }

    #[test]
    fn budget_is_reported() {
        let mut sc = scenarios::lamplighter();
        sc.budget = 3;
        let phi = sc.automorphism().unwrap();
        let g = phi.group().clone();
        let err = sigma_closure(&phi, &ClosureSeed::Element(delta(&g, &[1, 2])));
        assert_eq!(err.err(), Some(WreathError::BudgetExceeded { budget: 3 }));
    }

    #[test]
    fn lamplighter_witnesses() {
        let phi = scenarios::lamplighter().automorphism().unwrap();
        let g = phi.group().clone();
        let w = fixed_witness_generator(&phi, &delta(&g, &[-1, 1]), &[1], 10).unwrap();
        assert_eq!(w.len(), 10);
        assert_eq!(w[0].multiplier, 3);
        assert_eq!(w[0].element, delta(&g, &[-4, -2, 2, 4]));
        for x in &w {
            assert!(x.separation > x.bound);
            assert_eq!(phi.apply_sigma(&x.element).unwrap(), x.element);
        }
    }

    #[test]
    fn witness_preconditions() {
        let phi = scenarios::lamplighter().automorphism().unwrap();
        let g = phi.group().clone();
        assert_eq!(
            fixed_witness_generator(&phi, &delta(&g, &[1]), &[1], 1).err(),
            Some(WreathError::NotFixed)
        );
        assert!(matches!(
            fixed_witness_generator(&phi, &delta(&g, &[0]), &[0], 1),
            Err(WreathError::OrbitNotMaximal { .. })
        ));
    }

    #[test]
    fn maximal_point_for_rotation() {
        let phi = scenarios::c7_rotation().automorphism().unwrap();
        let p = maximal_orbit_point(&phi).unwrap();
        assert_eq!(phi.apply_d_pow(&p, 3), p);
        assert_ne!(phi.apply_d(&p), p);
    }
}
