//! The bundled group corpus: one Cayley table for every isomorphism class of
//! groups of order at most 24, plus `A5`.
//!
//! Dihedral groups are named by degree, so `D4` has order 8 and `D12` has
//! order 24. `Q8`/`Q16` are generalized quaternion, `DicN` is dicyclic of
//! order `4N`, `:` denotes a semidirect product and `o` a central product.

use serde::Serialize;

use crate::group::{Automorphism, Elem, FiniteGroup};

/// Number of isomorphism classes of groups of each order `1..=24`.
pub const GROUP_COUNTS: [usize; 24] = [
    1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15,
];

#[derive(Clone, Debug)]
pub struct Corpus {
    groups: Vec<FiniteGroup>,
}

impl Corpus {
    /// All groups of order at most 24 and `A5`, ordered by group order.
    pub fn bundled() -> Self {
        let mut groups = small_groups();
        groups.push(alternating5());
        Corpus { groups }
    }

    pub fn groups(&self) -> &[FiniteGroup] {
        &self.groups
    }

    pub fn get(&self, name: &str) -> Option<&FiniteGroup> {
        self.groups.iter().find(|g| g.name() == Some(name))
    }

    pub fn names(&self) -> Vec<&str> {
        self.groups.iter().filter_map(|g| g.name()).collect()
    }

    pub fn filter(&self, keep: impl Fn(&FiniteGroup) -> bool) -> Corpus {
        Corpus {
            groups: self.groups.iter().filter(|g| keep(g)).cloned().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }
}

/// Looks a corpus group up by name.
pub fn named(name: &str) -> Option<FiniteGroup> {
    Corpus::bundled().get(name).cloned()
}

pub fn cyclic(n: usize) -> FiniteGroup {
    let t: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    FiniteGroup::from_table(&t).unwrap().with_name(format!("C{n}"))
}

/// `<a, x | a^m, x^k = a^t, x a x^-1 = a^r>` on elements `a^i x^j`, index
/// `i * k + j`.
pub fn metacyclic(m: usize, k: usize, r: usize, t: usize) -> FiniteGroup {
    let n = m * k;
    let mut rpow = vec![1usize; k];
    for j in 1..k {
        rpow[j] = rpow[j - 1] * r % m;
    }
    let mut table = vec![vec![0; n]; n];
    for a in 0..n {
        let (i, j) = (a / k, a % k);
        for b in 0..n {
            let (i2, j2) = (b / k, b % k);
            let wrap = if j + j2 >= k { t } else { 0 };
            let ni = (i + rpow[j] * i2 + wrap) % m;
            let nj = (j + j2) % k;
            table[a][b] = ni * k + nj;
        }
    }
    FiniteGroup::from_table(&table).expect("consistent metacyclic parameters")
}

pub fn dihedral(n: usize) -> FiniteGroup {
    metacyclic(n, 2, n - 1, 0).with_name(format!("D{n}"))
}

/// `N : K` where `action(k)` is the automorphism of `N` by which `k` acts.
/// Element `(n, k)` has index `n * |K| + k`.
pub fn semidirect(
    normal: &FiniteGroup,
    top: &FiniteGroup,
    action: impl Fn(Elem) -> Automorphism,
) -> FiniteGroup {
    let (nn, nk) = (normal.order(), top.order());
    let acts: Vec<Automorphism> = top.elements().map(&action).collect();
    let mut table = vec![vec![0; nn * nk]; nn * nk];
    for a in 0..nn * nk {
        let (n1, k1) = (a / nk, a % nk);
        for b in 0..nn * nk {
            let (n2, k2) = (b / nk, b % nk);
            let n = normal.mul(n1, acts[k1].apply(n2));
            table[a][b] = n * nk + top.mul(k1, k2);
        }
    }
    FiniteGroup::from_table(&table).expect("action is a homomorphism into Aut(N)")
}

fn permutation_group(degree: usize, gens: &[Vec<usize>]) -> FiniteGroup {
    let compose =
        move |a: &Vec<usize>, b: &Vec<usize>| -> Vec<usize> { (0..degree).map(|i| a[b[i]]).collect() };
    FiniteGroup::from_generators(gens, compose).unwrap().0
}

fn product(a: &FiniteGroup, b: &FiniteGroup, name: &str) -> FiniteGroup {
    a.direct_product(b).with_name(name)
}

fn abelian(factors: &[usize], name: &str) -> FiniteGroup {
    let mut g = cyclic(factors[0]);
    for &f in &factors[1..] {
        g = g.direct_product(&cyclic(f));
    }
    g.with_name(name)
}

fn alternating4() -> FiniteGroup {
    permutation_group(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).with_name("A4")
}

fn symmetric4() -> FiniteGroup {
    permutation_group(4, &[vec![1, 2, 3, 0], vec![1, 0, 2, 3]]).with_name("S4")
}

pub fn alternating5() -> FiniteGroup {
    permutation_group(5, &[vec![1, 2, 0, 3, 4], vec![0, 1, 3, 4, 2]]).with_name("A5")
}

/// `SL(2, 3)` as 2x2 matrices over `Z/3`.
fn sl23() -> FiniteGroup {
    let mul = |a: &[u8; 4], b: &[u8; 4]| -> [u8; 4] {
        [
            (a[0] * b[0] + a[1] * b[2]) % 3,
            (a[0] * b[1] + a[1] * b[3]) % 3,
            (a[2] * b[0] + a[3] * b[2]) % 3,
            (a[2] * b[1] + a[3] * b[3]) % 3,
        ]
    };
    FiniteGroup::from_generators(&[[1, 1, 0, 1], [0, 2, 1, 0]], mul)
        .unwrap()
        .0
        .with_name("SL(2,3)")
}

/// Automorphism of an additive product `Z/m1 x Z/m2` (index `i * m2 + j`)
/// given by a coordinate map.
fn additive_aut(
    g: &FiniteGroup,
    m2: usize,
    f: impl Fn(usize, usize) -> (usize, usize),
) -> Automorphism {
    let image = g
        .elements()
        .map(|x| {
            let (i, j) = f(x / m2, x % m2);
            i * m2 + j
        })
        .collect();
    Automorphism::new(g, image).expect("coordinate map is an automorphism")
}

fn small_groups() -> Vec<FiniteGroup> {
    let c = cyclic;
    let s3 = dihedral(3).with_name("S3");
    let d4 = dihedral(4);
    let q8 = metacyclic(4, 2, 3, 2).with_name("Q8");
    let dic3 = metacyclic(6, 2, 5, 3).with_name("Dic3");
    let a4 = alternating4();

    let c4c2 = abelian(&[4, 2], "C4xC2");
    let c3c3 = abelian(&[3, 3], "C3xC3");
    let c2 = c(2);

    // (C4 x C2) : C2 with a -> ab, b -> b
    let g16_3 = {
        let flip = additive_aut(&c4c2, 2, |i, j| (i, (j + i) % 2));
        semidirect(&c4c2, &c2, |k| if k == 0 { Automorphism::identity(&c4c2) } else { flip.clone() })
            .with_name("(C4xC2):C2")
    };
    // C4 o D4 as (C4 x C2) : C2 with a -> a, b -> a^2 b
    let pauli = {
        let twist = additive_aut(&c4c2, 2, |i, j| ((i + 2 * j) % 4, j));
        semidirect(&c4c2, &c2, |k| if k == 0 { Automorphism::identity(&c4c2) } else { twist.clone() })
            .with_name("C4oD4")
    };
    let c3xc3_c2 = {
        let neg = additive_aut(&c3c3, 3, |i, j| ((3 - i) % 3, (3 - j) % 3));
        semidirect(&c3c3, &c2, |k| if k == 0 { Automorphism::identity(&c3c3) } else { neg.clone() })
            .with_name("(C3xC3):C2")
    };
    // C3 : D4 where D4 acts through D4 -> C2, a^i x^j -> i mod 2
    let c3_d4 = {
        let c3 = c(3);
        let neg = Automorphism::new(&c3, vec![0, 2, 1]).unwrap();
        let idc3 = Automorphism::identity(&c3);
        semidirect(&c3, &d4, |e| if (e / 2) % 2 == 1 { neg.clone() } else { idc3.clone() })
            .with_name("C3:D4")
    };

    vec![
        c(1),
        c(2),
        c(3),
        c(4),
        abelian(&[2, 2], "C2xC2"),
        c(5),
        c(6),
        s3.clone(),
        c(7),
        c(8),
        c4c2.clone(),
        abelian(&[2, 2, 2], "C2^3"),
        d4.clone(),
        q8.clone(),
        c(9),
        c3c3.clone(),
        c(10),
        dihedral(5),
        c(11),
        c(12),
        abelian(&[6, 2], "C6xC2"),
        a4.clone(),
        dihedral(6),
        dic3.clone(),
        c(13),
        c(14),
        dihedral(7),
        c(15),
        c(16),
        abelian(&[4, 4], "C4xC4"),
        g16_3,
        metacyclic(4, 4, 3, 0).with_name("C4:C4"),
        abelian(&[8, 2], "C8xC2"),
        metacyclic(8, 2, 5, 0).with_name("M16"),
        dihedral(8),
        metacyclic(8, 2, 3, 0).with_name("QD16"),
        metacyclic(8, 2, 7, 4).with_name("Q16"),
        abelian(&[4, 2, 2], "C4xC2xC2"),
        product(&c2, &d4, "C2xD4"),
        product(&c2, &q8, "C2xQ8"),
        pauli,
        abelian(&[2, 2, 2, 2], "C2^4"),
        c(17),
        c(18),
        abelian(&[6, 3], "C6xC3"),
        dihedral(9),
        product(&c(3), &s3, "C3xS3"),
        c3xc3_c2,
        c(19),
        c(20),
        abelian(&[10, 2], "C10xC2"),
        dihedral(10),
        metacyclic(10, 2, 9, 5).with_name("Dic5"),
        metacyclic(5, 4, 2, 0).with_name("F20"),
        c(21),
        metacyclic(7, 3, 2, 0).with_name("C7:C3"),
        c(22),
        dihedral(11),
        c(23),
        metacyclic(3, 8, 2, 0).with_name("C3:C8"),
        c(24),
        sl23(),
        metacyclic(12, 2, 11, 6).with_name("Dic6"),
        product(&c(4), &s3, "C4xS3"),
        dihedral(12),
        product(&c2, &dic3, "C2xDic3"),
        c3_d4,
        abelian(&[12, 2], "C12xC2"),
        product(&c(3), &d4, "C3xD4"),
        product(&c(3), &q8, "C3xQ8"),
        symmetric4(),
        product(&c2, &a4, "C2xA4"),
        product(&abelian(&[2, 2], "C2xC2"), &s3, "C2xC2xS3"),
        abelian(&[6, 2, 2], "C6xC2xC2"),
    ]
}

/// Isomorphism invariants used to certify that corpus groups of equal order
/// are pairwise non-isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Fingerprint {
    pub order: usize,
    /// Sorted `(element order, centralizer order)` pairs.
    pub order_centralizer: Vec<(usize, usize)>,
    pub center_orders: Vec<usize>,
    pub derived_order: usize,
    pub abelianization_orders: Vec<usize>,
}

pub fn fingerprint(g: &FiniteGroup) -> Fingerprint {
    use crate::group::{commutator_subgroup, quotient, Subgroup};
    let mut order_centralizer: Vec<(usize, usize)> = g
        .elements()
        .map(|x| {
            let cent = g.elements().filter(|&y| g.mul(x, y) == g.mul(y, x)).count();
            (g.element_order(x), cent)
        })
        .collect();
    order_centralizer.sort_unstable();
    let mut center_orders: Vec<usize> = order_centralizer
        .iter()
        .filter(|(_, c)| *c == g.order())
        .map(|(o, _)| *o)
        .collect();
    center_orders.sort_unstable();
    let derived = commutator_subgroup(g, &Subgroup::whole(g));
    let ab = quotient(g, &derived).expect("derived subgroup is normal");
    let mut abelianization_orders: Vec<usize> =
        ab.group.elements().map(|x| ab.group.element_order(x)).collect();
    abelianization_orders.sort_unstable();
    Fingerprint {
        order: g.order(),
        order_centralizer,
        center_orders,
        derived_order: derived.order(),
        abelianization_orders,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn counts_match_known_enumeration() {
        let corpus = Corpus::bundled();
        for n in 1..=24 {
            let k = corpus.groups().iter().filter(|g| g.order() == n).count();
            assert_eq!(k, GROUP_COUNTS[n - 1], "order {n}");
        }
        assert_eq!(corpus.len(), 75);
    }

    #[test]
    fn pairwise_non_isomorphic() {
        let corpus = Corpus::bundled();
        let mut seen = HashSet::new();
        for g in corpus.groups() {
            assert!(seen.insert(fingerprint(g)), "{:?} collides", g.name());
        }
    }

    #[test]
    fn names_are_unique_and_set() {
        let corpus = Corpus::bundled();
        let names: HashSet<&str> = corpus.names().into_iter().collect();
        assert_eq!(names.len(), corpus.len());
    }

    #[test]
    fn spot_checks() {
        let c = Corpus::bundled();
        assert_eq!(c.get("SL(2,3)").unwrap().order(), 24);
        assert_eq!(c.get("A5").unwrap().order(), 60);
        assert_eq!(c.get("D8").unwrap().order(), 16);
        assert!(!c.get("Q8").unwrap().is_abelian());
        let q8 = fingerprint(c.get("Q8").unwrap());
        // one involution in Q8
        assert_eq!(q8.order_centralizer.iter().filter(|(o, _)| *o == 2).count(), 1);
        let pauli = fingerprint(c.get("C4oD4").unwrap());
        assert_eq!(pauli.center_orders, vec![1, 2, 4, 4]);
    }
}
