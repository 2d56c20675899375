//! Bundled wreath-product automorphisms.
//!
//! | name | G | k | d | notes |
//! |------|---|---|---|-------|
//! | `lamplighter` | C2 | 1 | `[-1]` | fixed elements everywhere |
//! | `c5-parity` | C5 | 1 | `[-1]` | `a0(g) = 2g`; `phi'` has order 4 |
//! | `klein-order-three` | C2xC2 | 1 | `[-1]` | `a0` of order 3 |
//! | `s3-cocycle` | S3 | 1 | `[-1]` | `b(1)` a transposition |
//! | `c7-rotation` | C7 | 2 | order 3 | coboundary `b` |
//! | `identity-shift` | C2 | 1 | `[1]` | `I - d` singular |

use super::{SigmaElement, WreathAutomorphism, WreathSpec, DEFAULT_BUDGET, DEFAULT_WINDOW};
use crate::corpus::{cyclic, named};
use crate::error::WreathError;
use crate::group::{Elem, FiniteGroup};
use crate::lattice::IntMatrix;

#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub group: FiniteGroup,
    pub d: IntMatrix,
    pub b: Vec<SigmaElement>,
    pub a0: Vec<(Elem, SigmaElement)>,
    pub window: i64,
    pub budget: usize,
}

impl Scenario {
    pub fn k(&self) -> usize {
        self.d.dim()
    }

    pub fn spec(&self) -> WreathSpec {
        WreathSpec {
            group: self.group.clone(),
            d: self.d.clone(),
            b: self.b.clone(),
            a0: self.a0.clone(),
            window: self.window,
            budget: self.budget,
        }
    }

    pub fn automorphism(&self) -> Result<WreathAutomorphism, WreathError> {
        WreathAutomorphism::new(self.spec())
    }
}

fn one_dim(name: &str, group: FiniteGroup, d: i64, b: SigmaElement, a0: Vec<(Elem, Elem)>) -> Scenario {
    let a0 = a0
        .into_iter()
        .map(|(g, h)| (g, SigmaElement::single(&group, vec![0], h)))
        .collect();
    Scenario {
        name: name.into(),
        d: IntMatrix::from_i64(&[vec![d]]).unwrap(),
        b: vec![b],
        a0,
        window: DEFAULT_WINDOW,
        budget: DEFAULT_BUDGET,
        group,
    }
}

pub fn lamplighter() -> Scenario {
    one_dim("lamplighter", cyclic(2), -1, SigmaElement::identity(), vec![(1, 1)])
}

pub fn c5_parity() -> Scenario {
    one_dim("c5-parity", cyclic(5), -1, SigmaElement::identity(), vec![(1, 2)])
}

pub fn klein_order_three() -> Scenario {
    let g = named("C2xC2").unwrap();
    let x = 1;
    let y = 2;
    let xy = g.mul(x, y);
    one_dim("klein-order-three", g, -1, SigmaElement::identity(), vec![(x, y), (y, xy)])
}

pub fn s3_cocycle() -> Scenario {
    let g = named("S3").unwrap();
    let t = g.elements().find(|&x| g.element_order(x) == 2).unwrap();
    let r = g.elements().find(|&x| g.element_order(x) == 3).unwrap();
    let b = SigmaElement::single(&g, vec![0], t);
    one_dim("s3-cocycle", g, -1, b, vec![(t, t), (r, r)])
}

pub fn c7_rotation() -> Scenario {
    let g = cyclic(7);
    let d = IntMatrix::from_i64(&[vec![0, -1], vec![1, -1]]).unwrap();
    // b(z) = c alpha(d z)(c^-1) with c = 1 at the origin
    let coboundary = |de: Vec<i64>| SigmaElement::from_pairs(&g, [(vec![0, 0], 1), (de, 6)]).unwrap();
    Scenario {
        name: "c7-rotation".into(),
        b: vec![coboundary(vec![0, 1]), coboundary(vec![-1, -1])],
        a0: vec![(1, SigmaElement::single(&g, vec![0, 0], 2))],
        d,
        window: DEFAULT_WINDOW,
        budget: DEFAULT_BUDGET,
        group: g,
    }
}

pub fn identity_shift() -> Scenario {
    one_dim("identity-shift", cyclic(2), 1, SigmaElement::identity(), vec![(1, 1)])
}

pub fn bundled() -> Vec<Scenario> {
    vec![
        lamplighter(),
        c5_parity(),
        klein_order_three(),
        s3_cocycle(),
        c7_rotation(),
        identity_shift(),
    ]
}

pub fn by_name(name: &str) -> Option<Scenario> {
    bundled().into_iter().find(|s| s.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_bundled_scenario_validates() {
        for s in bundled() {
            let phi = s.automorphism().unwrap_or_else(|e| panic!("{}: {e}", s.name));
            assert_eq!(phi.k(), s.k());
        }
    }

    #[test]
    fn condition4_status() {
        let holds: Vec<(String, bool)> = bundled()
            .into_iter()
            .map(|s| {
                let h = s.automorphism().unwrap().certificate().condition4.holds();
                (s.name, h)
            })
            .collect();
        let expect = [
            ("lamplighter", true),
            ("c5-parity", false),
            ("klein-order-three", false),
            ("c7-rotation", true),
            ("identity-shift", true),
        ];
        for (name, h) in expect {
            assert!(holds.contains(&(name.to_string(), h)), "{name}");
        }
    }
}
