//! Finite groups given by exact multiplication tables.
//!
//! Elements are dense indices `0..n`. The identity is discovered from the
//! table and is not required to sit at index 0, so arbitrary external tables
//! are accepted as long as they describe a group.

mod automorphism;
mod extension;
mod subgroup;
mod twisted;

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use crate::error::GroupError;
pub use automorphism::{Automorphism, GroupMap};
pub use extension::{extension_sum_check, ExtensionReport, SumFormula};
pub use subgroup::{
    commutator_subgroup, derived_series, generated_subgroup, is_normal, quotient, DerivedSeries,
    Quotient, Subgroup,
};
pub use twisted::{
    fixed_subgroup, shift_class_map, twisted_classes, twisted_orbit, twisted_stabilizer,
    ReidemeisterPartition, ShiftMap,
};

/// Index of an element of a [`FiniteGroup`].
pub type Elem = usize;

/// Orders up to which associativity is checked on every triple.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 64;

/// How thoroughly [`FiniteGroup::from_table_with`] checks associativity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AssociativityCheck {
    /// Exhaustive up to [`EXHAUSTIVE_ASSOCIATIVITY_LIMIT`], sampled above.
    Auto,
    /// Every triple, whatever the order.
    Exhaustive,
    /// `10 n^2` random triples drawn from a seeded generator.
    Sampled { seed: u64 },
}

/// A finite group stored as its Cayley table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteGroup {
    name: Option<String>,
    order: usize,
    #[serde(skip)]
    table: Vec<Elem>,
    identity: Elem,
    inverse: Vec<Elem>,
}

/// Validates a square table and returns the group it describes.
pub fn build_group(table: &[Vec<usize>]) -> Result<FiniteGroup, GroupError> {
    FiniteGroup::from_table(table)
}

impl FiniteGroup {
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self, GroupError> {
        Self::from_table_with(table, AssociativityCheck::Auto)
    }

    pub fn from_table_with(
        table: &[Vec<usize>],
        check: AssociativityCheck,
    ) -> Result<Self, GroupError> {
        let n = table.len();
        let fail = |reason: String| Err(GroupError::NotAGroup { reason });
        if n == 0 {
            return fail("empty table".into());
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return fail(format!("row {i} has length {}, expected {n}", row.len()));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return fail(format!("entry ({i}, {j}) = {v} is out of range"));
                }
            }
            flat.extend_from_slice(row);
        }

        let mut seen = vec![usize::MAX; n];
        for i in 0..n {
            for j in 0..n {
                let v = flat[i * n + j];
                if seen[v] == i {
                    return fail(format!("row {i} is not a permutation (repeats {v})"));
                }
                seen[v] = i;
            }
        }
        seen.fill(usize::MAX);
        for j in 0..n {
            for i in 0..n {
                let v = flat[i * n + j];
                if seen[v] == j {
                    return fail(format!("column {j} is not a permutation (repeats {v})"));
                }
                seen[v] = j;
            }
        }

        let identity = match (0..n).find(|&e| (0..n).all(|j| flat[e * n + j] == j && flat[j * n + e] == j)) {
            Some(e) => e,
            None => return fail("no two-sided identity".into()),
        };
        let mut inverse = vec![0; n];
        for (i, inv) in inverse.iter_mut().enumerate() {
            // Latin rows guarantee a unique right inverse
            let j = (0..n).find(|&j| flat[i * n + j] == identity).unwrap();
            if flat[j * n + i] != identity {
                return fail(format!("element {i} has no two-sided inverse"));
            }
            *inv = j;
        }

        let exhaustive = match check {
            AssociativityCheck::Exhaustive => true,
            AssociativityCheck::Auto => n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT,
            AssociativityCheck::Sampled { .. } => false,
        };
        let assoc = |a: usize, b: usize, c: usize| {
            let ab = flat[a * n + b];
            let bc = flat[b * n + c];
            flat[ab * n + c] == flat[a * n + bc]
        };
        if exhaustive {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return fail(format!("associativity fails on ({a}, {b}, {c})"));
                        }
                    }
                }
            }
        } else {
            let seed = match check {
                AssociativityCheck::Sampled { seed } => seed,
                _ => 0,
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..10 * n * n {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !assoc(a, b, c) {
                    return fail(format!("associativity fails on ({a}, {b}, {c})"));
                }
            }
        }

        Ok(FiniteGroup {
            name: None,
            order: n,
            table: flat,
            identity,
            inverse,
        })
    }

    /// Closes `gens` under `mul` and returns the resulting group together with
    /// the element behind each index. The identity is placed at index 0, the
    /// rest follow in breadth-first discovery order.
    pub fn from_generators<T, F>(gens: &[T], mul: F) -> Result<(Self, Vec<T>), GroupError>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        Self::from_generators_bounded(gens, mul, usize::MAX)
            .map(|r| r.expect("unbounded closure always completes"))
    }

    /// Like [`FiniteGroup::from_generators`], returning `Ok(None)` once more
    /// than `budget` elements have been discovered.
    pub fn from_generators_bounded<T, F>(
        gens: &[T],
        mul: F,
        budget: usize,
    ) -> Result<Option<(Self, Vec<T>)>, GroupError>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        if gens.is_empty() {
            return Err(GroupError::NotAGroup {
                reason: "closure needs at least one generator".into(),
            });
        }
        let mut elements: Vec<T> = Vec::new();
        let mut index: HashMap<T, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        for g in gens {
            if !index.contains_key(g) {
                index.insert(g.clone(), elements.len());
                elements.push(g.clone());
                queue.push_back(elements.len() - 1);
            }
        }
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let p = mul(&elements[i], g);
                if !index.contains_key(&p) {
                    if elements.len() >= budget {
                        return Ok(None);
                    }
                    index.insert(p.clone(), elements.len());
                    elements.push(p);
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        let e = match elements.iter().position(|x| mul(x, x) == *x) {
            Some(e) => e,
            None => {
                return Err(GroupError::NotAGroup {
                    reason: "closure contains no idempotent".into(),
                })
            }
        };
        let ident = elements.remove(e);
        elements.insert(0, ident);
        let index: HashMap<&T, usize> = elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let n = elements.len();
        let mut table = vec![vec![0; n]; n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                table[i][j] = index[&mul(a, b)];
            }
        }
        let group = FiniteGroup::from_table(&table)?;
        Ok(Some((group, elements)))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a]
    }

    pub fn inverses(&self) -> &[Elem] {
        &self.inverse
    }

    /// `g x g^-1`.
    #[inline]
    pub fn conj(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(g, x), self.inverse[g])
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        let ab = self.mul(a, b);
        self.mul(self.mul(self.inverse[a], self.inverse[b]), ab)
    }

    pub fn pow(&self, x: Elem, n: u64) -> Elem {
        let mut acc = self.identity;
        let mut base = x;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: Elem) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        self.elements()
            .map(|x| self.element_order(x))
            .fold(1, num_integer::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn check_element(&self, x: Elem) -> Result<(), GroupError> {
        if x < self.order {
            Ok(())
        } else {
            Err(GroupError::ElementOutOfRange {
                element: x,
                order: self.order,
            })
        }
    }

    /// The table as nested rows, as accepted by [`build_group`].
    pub fn table(&self) -> Vec<Vec<Elem>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn row(&self, a: Elem) -> &[Elem] {
        &self.table[a * self.order..(a + 1) * self.order]
    }

    /// Direct product with component order `(a, b) -> a * |other| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (n, m) = (self.order, other.order);
        let mut table = vec![vec![0; n * m]; n * m];
        for a in 0..n * m {
            for b in 0..n * m {
                let (a1, a2) = (a / m, a % m);
                let (b1, b2) = (b / m, b % m);
                table[a][b] = self.mul(a1, b1) * m + other.mul(a2, b2);
            }
        }
        FiniteGroup::from_table(&table).expect("direct product of groups is a group")
    }

    /// Minimal generating set found greedily in index order.
    pub fn small_generating_set(&self) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut span = vec![false; self.order];
        span[self.identity] = true;
        let mut size = 1;
        // prefer elements of large order, they cover more per generator
        let mut candidates: Vec<Elem> = self.elements().collect();
        candidates.sort_by_key(|&x| (std::cmp::Reverse(self.element_order(x)), x));
        for x in candidates {
            if size == self.order {
                break;
            }
            if span[x] {
                continue;
            }
            gens.push(x);
            let sub = generated_subgroup(self, &gens);
            span.fill(false);
            for &m in sub.members() {
                span[m] = true;
            }
            size = sub.order();
        }
        gens
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> Vec<Vec<usize>> {
        (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect()
    }

    #[test]
    fn trivial_group() {
        let g = build_group(&[vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.identity(), 0);
    }

    #[test]
    fn cyclic_three() {
        let g = build_group(&cyclic(3)).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.inv(1), 2);
        assert_eq!(g.exponent(), 3);
    }

    #[test]
    fn latin_violation() {
        let err = build_group(&[vec![0, 1], vec![1, 1]]).unwrap_err();
        assert!(matches!(err, GroupError::NotAGroup { .. }));
    }

    #[test]
    fn identity_need_not_be_zero() {
        // Z/3 relabelled so that the identity is element 2
        let relabel = [2, 0, 1];
        let base = cyclic(3);
        let mut t = vec![vec![0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                t[relabel[i]][relabel[j]] = relabel[base[i][j]];
            }
        }
        let g = build_group(&t).unwrap();
        assert_eq!(g.identity(), 2);
        assert_eq!(g.mul(0, 1), 2);
    }

    #[test]
    fn latin_square_but_not_associative() {
        // a loop of order 5 that is not a group
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = build_group(&t).unwrap_err().to_string();
        assert!(err.contains("associativity"), "{err}");
    }

    #[test]
    fn ragged_and_out_of_range() {
        assert!(build_group(&[vec![0, 1], vec![1]]).is_err());
        assert!(build_group(&[vec![0, 2], vec![1, 0]]).is_err());
        assert!(build_group(&[]).is_err());
    }

    #[test]
    fn sampled_check_runs() {
        let g = FiniteGroup::from_table_with(&cyclic(7), AssociativityCheck::Sampled { seed: 3 })
            .unwrap();
        assert_eq!(g.order(), 7);
    }

    #[test]
    fn closure_of_permutations() {
        let compose = |a: &Vec<usize>, b: &Vec<usize>| -> Vec<usize> { (0..3).map(|i| a[b[i]]).collect() };
        let (g, elems) =
            FiniteGroup::from_generators(&[vec![1, 0, 2], vec![1, 2, 0]], compose).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.identity(), 0);
        assert_eq!(elems[0], vec![0, 1, 2]);
        assert!(!g.is_abelian());
    }
}
