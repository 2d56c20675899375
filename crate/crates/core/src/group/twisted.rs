//! Twisted conjugacy: the action `g: x -> g x phi(g)^-1` of a finite group on
//! itself, its orbits (Reidemeister classes), fixed points and stabilizers.

use serde::Serialize;

use super::{Automorphism, Elem, FiniteGroup, Subgroup};

/// Partition of a group into the Reidemeister classes of an automorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReidemeisterPartition {
    class_of: Vec<usize>,
    representatives: Vec<Elem>,
    sizes: Vec<usize>,
}

impl ReidemeisterPartition {
    /// Number of classes, i.e. the Reidemeister number.
    pub fn count(&self) -> usize {
        self.representatives.len()
    }

    pub fn class_of(&self, x: Elem) -> usize {
        self.class_of[x]
    }

    pub fn class_ids(&self) -> &[usize] {
        &self.class_of
    }

    /// Minimal element index of each class, in class-id order.
    pub fn representatives(&self) -> &[Elem] {
        &self.representatives
    }

    pub fn class_size(&self, class: usize) -> usize {
        self.sizes[class]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn members(&self, class: usize) -> Vec<Elem> {
        (0..self.class_of.len())
            .filter(|&x| self.class_of[x] == class)
            .collect()
    }

    pub fn classes(&self) -> Vec<Vec<Elem>> {
        let mut out = vec![Vec::new(); self.count()];
        for (x, &c) in self.class_of.iter().enumerate() {
            out[c].push(x);
        }
        out
    }
}

fn check_automorphism(group: &FiniteGroup, phi: &Automorphism) {
    assert_eq!(
        phi.image().len(),
        group.order(),
        "automorphism does not belong to this group"
    );
}

/// `{ g x phi(g)^-1 : g in G }`, sorted.
pub fn twisted_orbit(group: &FiniteGroup, phi: &Automorphism, x: Elem) -> Vec<Elem> {
    check_automorphism(group, phi);
    let mut hit = vec![false; group.order()];
    for g in group.elements() {
        hit[group.mul(group.mul(g, x), group.inv(phi.apply(g)))] = true;
    }
    (0..group.order()).filter(|&y| hit[y]).collect()
}

/// Reidemeister classes of `phi`. Classes are numbered in order of their
/// minimal element, which is also the stored representative.
pub fn twisted_classes(group: &FiniteGroup, phi: &Automorphism) -> ReidemeisterPartition {
    check_automorphism(group, phi);
    let n = group.order();
    let mut class_of = vec![usize::MAX; n];
    let mut representatives = Vec::new();
    let mut sizes = Vec::new();
    // phi(g)^-1 for every g, hoisted out of the orbit loop
    let twist: Vec<Elem> = group.elements().map(|g| group.inv(phi.apply(g))).collect();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let id = representatives.len();
        let mut size = 0;
        for g in 0..n {
            let y = group.mul(group.mul(g, x), twist[g]);
            if class_of[y] == usize::MAX {
                class_of[y] = id;
                size += 1;
            }
        }
        representatives.push(x);
        sizes.push(size);
    }
    ReidemeisterPartition {
        class_of,
        representatives,
        sizes,
    }
}

/// `F(phi) = { x : phi(x) = x }`.
pub fn fixed_subgroup(group: &FiniteGroup, phi: &Automorphism) -> Subgroup {
    check_automorphism(group, phi);
    Subgroup::from_members_unchecked(group, phi.fixed_points().collect())
}

/// `{ g : g x phi(g)^-1 = x }`, which equals `F(tau_x^-1 ∘ phi)`.
pub fn twisted_stabilizer(group: &FiniteGroup, phi: &Automorphism, x: Elem) -> Subgroup {
    check_automorphism(group, phi);
    let members = group
        .elements()
        .filter(|&g| group.mul(group.mul(g, x), group.inv(phi.apply(g))) == x)
        .collect();
    Subgroup::from_members_unchecked(group, members)
}

/// Right translation by `x` carries the classes of `phi` onto the classes of
/// `psi = tau_{x^-1} ∘ phi`, where `tau_{x^-1}(y) = x^-1 y x`.
#[derive(Clone, Debug, Serialize)]
pub struct ShiftMap {
    pub shift: Elem,
    pub shifted: Automorphism,
    pub source: ReidemeisterPartition,
    pub target: ReidemeisterPartition,
    /// `class_map[c]` is the `psi`-class containing `rep(c) * x`.
    pub class_map: Vec<usize>,
}

impl ShiftMap {
    /// Checks that `{g}_phi x = {g x}_psi` for every `g`, and that the class
    /// map is a bijection.
    pub fn verify(&self, group: &FiniteGroup) -> bool {
        if self.source.count() != self.target.count() {
            return false;
        }
        for g in group.elements() {
            let moved = group.mul(g, self.shift);
            if self.target.class_of(moved) != self.class_map[self.source.class_of(g)] {
                return false;
            }
        }
        let mut hit = vec![false; self.target.count()];
        for &c in &self.class_map {
            if std::mem::replace(&mut hit[c], true) {
                return false;
            }
        }
        // translation is a bijection of G, so equal sizes mean equal sets
        (0..self.source.count())
            .all(|c| self.source.class_size(c) == self.target.class_size(self.class_map[c]))
    }
}

pub fn shift_class_map(group: &FiniteGroup, phi: &Automorphism, x: Elem) -> ShiftMap {
    check_automorphism(group, phi);
    let inner = Automorphism::inner(group, group.inv(x));
    let shifted = inner.compose(phi);
    let source = twisted_classes(group, phi);
    let target = twisted_classes(group, &shifted);
    let class_map = source
        .representatives()
        .iter()
        .map(|&g| target.class_of(group.mul(g, x)))
        .collect();
    ShiftMap {
        shift: x,
        shifted,
        source,
        target,
        class_map,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FiniteGroup {
        let t: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        FiniteGroup::from_table(&t).unwrap()
    }

    // S3 on points {0,1,2}, composed right-to-left.
    fn s3() -> (FiniteGroup, Vec<Vec<usize>>) {
        let compose = |a: &Vec<usize>, b: &Vec<usize>| -> Vec<usize> { (0..3).map(|i| a[b[i]]).collect() };
        FiniteGroup::from_generators(&[vec![1, 0, 2], vec![1, 2, 0]], compose).unwrap()
    }

    #[test]
    fn identity_on_z3_gives_singletons() {
        let g = z(3);
        let p = twisted_classes(&g, &Automorphism::identity(&g));
        assert_eq!(p.count(), 3);
        assert_eq!(p.classes(), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn doubling_on_z3_is_one_class() {
        let g = z(3);
        let phi = Automorphism::new(&g, vec![0, 2, 1]).unwrap();
        let p = twisted_classes(&g, &phi);
        assert_eq!(p.count(), 1);
        assert_eq!(fixed_subgroup(&g, &phi).members(), &[0]);
    }

    #[test]
    fn inner_twist_on_s3() {
        let (g, elems) = s3();
        let t12 = elems.iter().position(|p| p == &vec![1, 0, 2]).unwrap();
        let phi = Automorphism::inner(&g, t12);
        assert_eq!(twisted_classes(&g, &phi).count(), 3);
        let fix = fixed_subgroup(&g, &phi);
        assert_eq!(fix.order(), 2);
        assert!(fix.contains(t12));
    }

    #[test]
    fn stabilizer_z4_negation() {
        let g = z(4);
        let neg = Automorphism::new(&g, vec![0, 3, 2, 1]).unwrap();
        assert_eq!(twisted_stabilizer(&g, &neg, 1).members(), &[0, 2]);
        assert_eq!(
            twisted_stabilizer(&g, &neg, g.identity()).members(),
            fixed_subgroup(&g, &neg).members()
        );
        let p = twisted_classes(&g, &neg);
        assert_eq!(p.classes(), vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn orbit_stabilizer_on_s3() {
        let (g, _) = s3();
        for a in g.elements() {
            let phi = Automorphism::inner(&g, a);
            for x in g.elements() {
                let orbit = twisted_orbit(&g, &phi, x).len();
                assert_eq!(orbit * twisted_stabilizer(&g, &phi, x).order(), g.order());
            }
        }
    }

    #[test]
    fn shift_by_identity_is_trivial() {
        let g = z(4);
        let neg = Automorphism::new(&g, vec![0, 3, 2, 1]).unwrap();
        let s = shift_class_map(&g, &neg, g.identity());
        assert_eq!(s.shifted, neg);
        assert_eq!(s.class_map, vec![0, 1]);
        assert!(s.verify(&g));
    }

    #[test]
    fn shift_z4_negation_by_one() {
        // psi(y) = -1 + (-y) + 1 = -y on an abelian group, so the classes are
        // {0,2} and {1,3} again and translation by 1 swaps them
        let g = z(4);
        let neg = Automorphism::new(&g, vec![0, 3, 2, 1]).unwrap();
        let s = shift_class_map(&g, &neg, 1);
        assert_eq!(s.shifted, neg);
        assert_eq!(s.class_map, vec![1, 0]);
        assert!(s.verify(&g));
    }
}
