use std::collections::BTreeSet;
use std::sync::LazyLock;

use proptest::prelude::*;

use reidemeister::wreath::scenarios;
use reidemeister::wreath::{
    fixed_witness_generator, separation_pipeline, sigma_closure, ClosureSeed, Evidence,
    SigmaElement, WreathAutomorphism, WreathElement, WreathProduct,
};

static SCENARIOS: LazyLock<Vec<WreathAutomorphism>> = LazyLock::new(|| {
    scenarios::bundled()
        .into_iter()
        .map(|s| s.automorphism().unwrap())
        .collect()
});

fn sigma(phi: &WreathAutomorphism, pairs: &[(Vec<i64>, usize)]) -> SigmaElement {
    let g = phi.group();
    SigmaElement::from_pairs(g, pairs.iter().map(|(p, x)| (p.clone(), x % g.order()))).unwrap()
}

fn pairs(k: usize, r: i64, max: usize) -> impl Strategy<Value = Vec<(Vec<i64>, usize)>> {
    prop::collection::btree_map(prop::collection::vec(-r..=r, k), 0usize..64, 0..=max)
        .prop_map(|m| m.into_iter().collect())
}

fn element(k: usize) -> impl Strategy<Value = (Vec<(Vec<i64>, usize)>, Vec<i64>)> {
    (pairs(k, 4, 4), prop::collection::vec(-4i64..=4, k))
}

fn with_scenario<T: std::fmt::Debug>(
    inner: impl Fn(usize) -> BoxedStrategy<T>,
) -> impl Strategy<Value = (usize, T)> {
    (0..SCENARIOS.len()).prop_flat_map(move |i| (Just(i), inner(SCENARIOS[i].k())))
}

fn wreath(phi: &WreathAutomorphism, e: &(Vec<(Vec<i64>, usize)>, Vec<i64>)) -> WreathElement {
    WreathElement::new(sigma(phi, &e.0), e.1.clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn multiplication_is_associative_with_inverses(
        (i, (x, y, z)) in with_scenario(|k| (element(k), element(k), element(k)).boxed())
    ) {
        let phi = &SCENARIOS[i];
        let w = WreathProduct::new(phi.group().clone(), phi.k());
        let (x, y, z) = (wreath(phi, &x), wreath(phi, &y), wreath(phi, &z));
        let left = w.mul(&w.mul(&x, &y).unwrap(), &z).unwrap();
        let right = w.mul(&x, &w.mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(w.mul(&x, &w.inv(&x)).unwrap(), w.identity());
        prop_assert_eq!(w.mul(&w.inv(&x), &x).unwrap(), w.identity());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn automorphism_is_a_homomorphism(
        (i, (x, y)) in with_scenario(|k| (element(k), element(k)).boxed())
    ) {
        let phi = &SCENARIOS[i];
        let w = phi.product();
        let (x, y) = (wreath(phi, &x), wreath(phi, &y));
        let lhs = phi.apply(&w.mul(&x, &y).unwrap()).unwrap();
        let rhs = w.mul(&phi.apply(&x).unwrap(), &phi.apply(&y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn iterates_match_the_closed_form(
        (i, (m, h, q)) in with_scenario(|k| (
            prop::collection::vec(-4i64..=4, k),
            pairs(k, 2, 3),
            1usize..=6,
        ).boxed())
    ) {
        let phi = &SCENARIOS[i];
        let q = 1 + (q - 1) % phi.order();
        let r = phi.iterate_formula_check(&m, &sigma(phi, &h), q).unwrap();
        prop_assert!(r.equal, "{:?}", r);
        prop_assert!(r.support_equal, "{:?}", r);
    }

    #[test]
    fn closures_are_closed_and_invariant(
        (i, s) in with_scenario(|k| pairs(k, 2, 2).boxed())
    ) {
        let phi = &SCENARIOS[i];
        let seed = sigma(phi, &s);
        let Ok(c) = sigma_closure(phi, &ClosureSeed::Element(seed.clone())) else {
            // budget exhaustion is allowed, a wrong closure is not
            return Ok(());
        };
        let g = phi.group();
        let set: BTreeSet<&SigmaElement> = c.elements.iter().collect();
        prop_assert!(set.contains(&seed));
        for a in c.elements.iter().take(24) {
            for b in c.elements.iter().take(24) {
                prop_assert!(set.contains(&a.mul(g, b)));
            }
        }
        let images: BTreeSet<SigmaElement> = c.elements.iter().map(|x| phi.apply_sigma(x).unwrap()).collect();
        prop_assert_eq!(images.len(), c.elements.len());
        prop_assert!(images.iter().all(|x| set.contains(x)));
    }
}

#[test]
fn witnesses_are_fixed_distinct_and_disjoint() {
    for name in ["lamplighter", "c7-rotation", "s3-cocycle"] {
        let phi = scenarios::by_name(name).unwrap().automorphism().unwrap();
        let report = separation_pipeline(&phi, &Default::default()).unwrap();
        let first = &report.representatives[0];
        assert!(first.z.iter().all(|&x| x == 0));
        let Evidence::Infinite { fixed, m, .. } = &first.evidence else {
            panic!("{name}: expected a fixed element");
        };
        assert_eq!(phi.apply_sigma(fixed).unwrap(), *fixed);
        let w = fixed_witness_generator(&phi, fixed, m, 6).unwrap();
        let mut seen = BTreeSet::new();
        let mut points = BTreeSet::new();
        for x in &w {
            assert_eq!(phi.apply_sigma(&x.element).unwrap(), x.element, "{name}");
            assert!(x.separation > x.bound);
            assert!(seen.insert(x.element.clone()));
            for p in x.element.support() {
                assert!(points.insert(p), "{name}: supports overlap");
            }
        }
    }
}

#[test]
fn predicate_is_constant_on_twisted_orbits() {
    let phi = scenarios::c5_parity().automorphism().unwrap();
    let report = separation_pipeline(&phi, &Default::default()).unwrap();
    let pred = report.predicate.unwrap();
    let w = phi.product();
    let gens = w.generators();
    let mut frontier = vec![WreathElement::translation(vec![0]), WreathElement::translation(vec![1])];
    for x in frontier.clone() {
        for y in &gens {
            // y x phi(y)^-1 stays in the class of x
            let moved = w.mul(&w.mul(y, &x).unwrap(), &w.inv(&phi.apply(y).unwrap())).unwrap();
            assert!(pred.same_class(&x, &moved));
            frontier.push(moved);
        }
    }
    assert!(!pred.same_class(&frontier[0], &frontier[1]));
}
