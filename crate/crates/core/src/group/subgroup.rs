use std::collections::VecDeque;

use serde::Serialize;

use super::{Automorphism, Elem, FiniteGroup};
use crate::error::GroupError;

/// A subgroup of a finite group, carried both as a sorted member list in the
/// parent's indexing and as a group in its own right. Local index `i` of
/// `as_group` corresponds to parent element `members[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subgroup {
    members: Vec<Elem>,
    #[serde(skip)]
    as_group: FiniteGroup,
}

impl Subgroup {
    /// Validates closure and identity, and asserts Lagrange.
    pub fn new(parent: &FiniteGroup, members: Vec<Elem>) -> Result<Self, GroupError> {
        let mut members = members;
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            parent.check_element(m)?;
        }
        if members.binary_search(&parent.identity()).is_err() {
            return Err(GroupError::NotASubgroup {
                reason: "identity missing".into(),
            });
        }
        for &a in &members {
            if members.binary_search(&parent.inv(a)).is_err() {
                return Err(GroupError::NotASubgroup {
                    reason: format!("inverse of {a} missing"),
                });
            }
            for &b in &members {
                if members.binary_search(&parent.mul(a, b)).is_err() {
                    return Err(GroupError::NotASubgroup {
                        reason: format!("{a}*{b} missing"),
                    });
                }
            }
        }
        Ok(Self::from_members_unchecked(parent, members))
    }

    pub(crate) fn from_members_unchecked(parent: &FiniteGroup, mut members: Vec<Elem>) -> Self {
        members.sort_unstable();
        members.dedup();
        assert_eq!(parent.order() % members.len(), 0, "Lagrange violated");
        let local = |x: Elem| members.binary_search(&x).expect("subgroup is closed");
        let table: Vec<Vec<usize>> = members
            .iter()
            .map(|&a| members.iter().map(|&b| local(parent.mul(a, b))).collect())
            .collect();
        let as_group = FiniteGroup::from_table(&table).expect("closed subset of a group is a group");
        Subgroup { members, as_group }
    }

    pub fn whole(parent: &FiniteGroup) -> Self {
        Self::from_members_unchecked(parent, parent.elements().collect())
    }

    pub fn trivial(parent: &FiniteGroup) -> Self {
        Self::from_members_unchecked(parent, vec![parent.identity()])
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// The subgroup as a standalone group on local indices.
    pub fn as_group(&self) -> &FiniteGroup {
        &self.as_group
    }

    pub fn to_local(&self, x: Elem) -> Option<usize> {
        self.members.binary_search(&x).ok()
    }

    pub fn to_parent(&self, i: usize) -> Elem {
        self.members[i]
    }

    /// Restriction of `phi` to this subgroup, on local indices.
    pub fn restrict(&self, phi: &Automorphism) -> Result<Automorphism, GroupError> {
        let mut image = Vec::with_capacity(self.order());
        for &m in &self.members {
            match self.to_local(phi.apply(m)) {
                Some(i) => image.push(i),
                None => {
                    return Err(GroupError::NotInvariant {
                        reason: format!("phi({m}) = {} leaves the subgroup", phi.apply(m)),
                    })
                }
            }
        }
        Ok(Automorphism::from_image_unchecked(image))
    }
}

/// Closure of `gens` by breadth-first right multiplication.
pub fn generated_subgroup(group: &FiniteGroup, gens: &[Elem]) -> Subgroup {
    let mut inside = vec![false; group.order()];
    let mut members = vec![group.identity()];
    inside[group.identity()] = true;
    let mut queue = VecDeque::from([group.identity()]);
    while let Some(x) = queue.pop_front() {
        for &g in gens {
            let y = group.mul(x, g);
            if !inside[y] {
                inside[y] = true;
                members.push(y);
                queue.push_back(y);
            }
        }
    }
    Subgroup::from_members_unchecked(group, members)
}

pub fn is_normal(group: &FiniteGroup, sub: &Subgroup) -> bool {
    group
        .elements()
        .all(|x| sub.members().iter().all(|&h| sub.contains(group.conj(x, h))))
}

/// `[H, H]` as a subgroup of the parent group.
pub fn commutator_subgroup(group: &FiniteGroup, sub: &Subgroup) -> Subgroup {
    let mut gens: Vec<Elem> = Vec::new();
    let mut seen = vec![false; group.order()];
    for &a in sub.members() {
        for &b in sub.members() {
            let c = group.commutator(a, b);
            if !seen[c] {
                seen[c] = true;
                gens.push(c);
            }
        }
    }
    generated_subgroup(group, &gens)
}

/// `G = G^(0) ⊵ G^(1) ⊵ ...` down to the first repeated term.
#[derive(Clone, Debug, Serialize)]
pub struct DerivedSeries {
    pub terms: Vec<Subgroup>,
    pub solvable: bool,
    /// Number of steps down to `{e}` when solvable.
    pub derived_length: Option<usize>,
}

impl DerivedSeries {
    pub fn orders(&self) -> Vec<usize> {
        self.terms.iter().map(Subgroup::order).collect()
    }
}

pub fn derived_series(group: &FiniteGroup) -> DerivedSeries {
    let mut terms = vec![Subgroup::whole(group)];
    loop {
        let last = terms.last().unwrap();
        if last.is_trivial() {
            break;
        }
        let next = commutator_subgroup(group, last);
        if next.order() == last.order() {
            break;
        }
        terms.push(next);
    }
    let solvable = terms.last().unwrap().is_trivial();
    let derived_length = solvable.then(|| terms.len() - 1);
    DerivedSeries {
        terms,
        solvable,
        derived_length,
    }
}

/// `G/H` with cosets numbered by their minimal element.
#[derive(Clone, Debug, Serialize)]
pub struct Quotient {
    #[serde(skip)]
    pub group: FiniteGroup,
    /// Coset index of every element of the parent.
    pub projection: Vec<usize>,
    /// Minimal element of each coset.
    pub coset_reps: Vec<Elem>,
}

impl Quotient {
    /// Automorphism of the quotient induced by `phi` (which must preserve `H`).
    pub fn induced(&self, phi: &Automorphism) -> Automorphism {
        let image = self
            .coset_reps
            .iter()
            .map(|&g| self.projection[phi.apply(g)])
            .collect();
        Automorphism::from_image_unchecked(image)
    }
}

pub fn quotient(group: &FiniteGroup, sub: &Subgroup) -> Result<Quotient, GroupError> {
    if !is_normal(group, sub) {
        return Err(GroupError::NotNormal {
            reason: format!("subgroup of order {} is not normal", sub.order()),
        });
    }
    let mut projection = vec![usize::MAX; group.order()];
    let mut coset_reps = Vec::new();
    for g in group.elements() {
        if projection[g] != usize::MAX {
            continue;
        }
        let id = coset_reps.len();
        for &h in sub.members() {
            projection[group.mul(g, h)] = id;
        }
        coset_reps.push(g);
    }
    let table: Vec<Vec<usize>> = coset_reps
        .iter()
        .map(|&a| coset_reps.iter().map(|&b| projection[group.mul(a, b)]).collect())
        .collect();
    let qgroup = FiniteGroup::from_table(&table)?;
    Ok(Quotient {
        group: qgroup,
        projection,
        coset_reps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm_group(gens: &[Vec<usize>]) -> (FiniteGroup, Vec<Vec<usize>>) {
        let n = gens[0].len();
        let compose = move |a: &Vec<usize>, b: &Vec<usize>| -> Vec<usize> { (0..n).map(|i| a[b[i]]).collect() };
        FiniteGroup::from_generators(gens, compose).unwrap()
    }

    #[test]
    fn generated_in_s3() {
        let (g, elems) = perm_group(&[vec![1, 0, 2], vec![1, 2, 0]]);
        let c3 = elems.iter().position(|p| p == &vec![1, 2, 0]).unwrap();
        let t = elems.iter().position(|p| p == &vec![1, 0, 2]).unwrap();
        assert!(generated_subgroup(&g, &[g.identity()]).is_trivial());
        let a3 = generated_subgroup(&g, &[c3]);
        assert_eq!(a3.order(), 3);
        assert!(is_normal(&g, &a3));
        assert_eq!(generated_subgroup(&g, &[t, c3]).order(), 6);
        assert!(!is_normal(&g, &generated_subgroup(&g, &[t])));
    }

    #[test]
    fn derived_series_s3_and_trivial() {
        let (g, _) = perm_group(&[vec![1, 0, 2], vec![1, 2, 0]]);
        let ds = derived_series(&g);
        assert_eq!(ds.orders(), vec![6, 3, 1]);
        assert!(ds.solvable);
        assert_eq!(ds.derived_length, Some(2));

        let t = FiniteGroup::from_table(&[vec![0]]).unwrap();
        let ds = derived_series(&t);
        assert!(ds.solvable);
        assert_eq!(ds.derived_length, Some(0));
    }

    #[test]
    fn a5_is_perfect() {
        let (g, _) = perm_group(&[vec![1, 2, 0, 3, 4], vec![0, 1, 3, 4, 2], vec![0, 2, 3, 1, 4]]);
        // those three 3-cycles generate A5
        assert_eq!(g.order(), 60);
        let ds = derived_series(&g);
        assert_eq!(ds.orders(), vec![60]);
        assert!(!ds.solvable);
        assert_eq!(ds.derived_length, None);
    }

    #[test]
    fn quotient_of_s3_by_a3() {
        let (g, elems) = perm_group(&[vec![1, 0, 2], vec![1, 2, 0]]);
        let c3 = elems.iter().position(|p| p == &vec![1, 2, 0]).unwrap();
        let a3 = generated_subgroup(&g, &[c3]);
        let q = quotient(&g, &a3).unwrap();
        assert_eq!(q.group.order(), 2);
        assert_eq!(q.coset_reps[0], g.identity());
        let t = elems.iter().position(|p| p == &vec![1, 0, 2]).unwrap();
        assert!(quotient(&g, &generated_subgroup(&g, &[t])).is_err());
    }

    #[test]
    fn subgroup_validation() {
        let (g, _) = perm_group(&[vec![1, 0, 2], vec![1, 2, 0]]);
        assert!(Subgroup::new(&g, vec![g.identity()]).is_ok());
        let not_closed = (0..6).find(|&x| g.element_order(x) == 3).unwrap();
        assert!(Subgroup::new(&g, vec![g.identity(), not_closed]).is_err());
    }
}
