use serde::Serialize;

use super::{Elem, FiniteGroup};
use crate::error::GroupError;

/// A homomorphism between two finite groups, stored as an index map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupMap {
    image: Vec<Elem>,
}

impl GroupMap {
    /// Checks the homomorphism law on every pair.
    pub fn new(source: &FiniteGroup, target: &FiniteGroup, image: Vec<Elem>) -> Result<Self, GroupError> {
        if image.len() != source.order() {
            return Err(GroupError::NotAHomomorphism {
                reason: format!("image has length {}, source has order {}", image.len(), source.order()),
            });
        }
        for &y in &image {
            target.check_element(y)?;
        }
        for x in source.elements() {
            for y in source.elements() {
                if image[source.mul(x, y)] != target.mul(image[x], image[y]) {
                    return Err(GroupError::NotAHomomorphism {
                        reason: format!("f({x}*{y}) != f({x})*f({y})"),
                    });
                }
            }
        }
        Ok(GroupMap { image })
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.image[x]
    }

    pub fn image(&self) -> &[Elem] {
        &self.image
    }

    pub fn kernel(&self, target: &FiniteGroup) -> Vec<Elem> {
        (0..self.image.len())
            .filter(|&x| self.image[x] == target.identity())
            .collect()
    }
}

/// A validated automorphism of a finite group together with its order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Automorphism {
    image: Vec<Elem>,
    order: usize,
}

impl Automorphism {
    pub fn new(group: &FiniteGroup, image: Vec<Elem>) -> Result<Self, GroupError> {
        let n = group.order();
        if image.len() != n {
            return Err(GroupError::NotAnAutomorphism {
                reason: format!("image has length {}, group has order {n}", image.len()),
            });
        }
        let mut hit = vec![false; n];
        for &y in &image {
            group.check_element(y)?;
            if hit[y] {
                return Err(GroupError::NotAnAutomorphism {
                    reason: format!("element {y} is hit twice"),
                });
            }
            hit[y] = true;
        }
        for x in 0..n {
            for y in 0..n {
                if image[group.mul(x, y)] != group.mul(image[x], image[y]) {
                    return Err(GroupError::NotAnAutomorphism {
                        reason: format!("phi({x}*{y}) != phi({x})*phi({y})"),
                    });
                }
            }
        }
        Ok(Self::from_image_unchecked(image))
    }

    /// Skips validation; only for images known to be automorphisms.
    pub(crate) fn from_image_unchecked(image: Vec<Elem>) -> Self {
        let order = permutation_order(&image);
        Automorphism { image, order }
    }

    pub fn identity(group: &FiniteGroup) -> Self {
        Automorphism {
            image: group.elements().collect(),
            order: 1,
        }
    }

    /// `x -> g x g^-1`.
    pub fn inner(group: &FiniteGroup, g: Elem) -> Self {
        Self::from_image_unchecked(group.elements().map(|x| group.conj(g, x)).collect())
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.image[x]
    }

    pub fn image(&self) -> &[Elem] {
        &self.image
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Self::from_image_unchecked(other.image.iter().map(|&x| self.image[x]).collect())
    }

    pub fn inverse(&self) -> Automorphism {
        let mut inv = vec![0; self.image.len()];
        for (x, &y) in self.image.iter().enumerate() {
            inv[y] = x;
        }
        Automorphism {
            image: inv,
            order: self.order,
        }
    }

    pub fn pow(&self, k: usize) -> Automorphism {
        let mut image: Vec<Elem> = (0..self.image.len()).collect();
        for _ in 0..k % self.order {
            image = image.iter().map(|&x| self.image[x]).collect();
        }
        Self::from_image_unchecked(image)
    }

    pub fn fixed_points(&self) -> impl Iterator<Item = Elem> + '_ {
        self.image.iter().enumerate().filter(|(x, &y)| *x == y).map(|(x, _)| x)
    }
}

fn permutation_order(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut order = 1;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        order = num_integer::lcm(order, len);
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FiniteGroup {
        let t: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        FiniteGroup::from_table(&t).unwrap()
    }

    #[test]
    fn negation_on_z4() {
        let g = z(4);
        let neg = Automorphism::new(&g, vec![0, 3, 2, 1]).unwrap();
        assert_eq!(neg.order(), 2);
        assert_eq!(neg.fixed_points().collect::<Vec<_>>(), vec![0, 2]);
        assert!(neg.compose(&neg).is_identity());
    }

    #[test]
    fn rejects_non_homomorphisms() {
        let g = z(4);
        assert!(Automorphism::new(&g, vec![0, 2, 1, 3]).is_err());
        assert!(Automorphism::new(&g, vec![0, 1, 1, 3]).is_err());
        assert!(Automorphism::new(&g, vec![0, 1, 2]).is_err());
    }

    #[test]
    fn group_map_z4_to_z2() {
        let (g, h) = (z(4), z(2));
        let f = GroupMap::new(&g, &h, vec![0, 1, 0, 1]).unwrap();
        assert_eq!(f.kernel(&h), vec![0, 2]);
        assert!(GroupMap::new(&g, &h, vec![0, 1, 1, 0]).is_err());
    }

    #[test]
    fn inner_of_abelian_is_identity() {
        let g = z(5);
        assert!(Automorphism::inner(&g, 3).is_identity());
    }
}
