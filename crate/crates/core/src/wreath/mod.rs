//! Restricted wreath products `G wr Z^k = (⊕_{m in Z^k} G_m) ⋊ Z^k`.
//!
//! An element is a pair `(sigma, z)` where `sigma` is a finitely supported
//! function `Z^k -> G` and `z` is a translation. The shift `alpha(z)` moves
//! the coordinate `m` of `sigma` to `m + z`, so
//! `(sigma, z) (sigma', z') = (sigma * alpha(z) sigma', z + z')`.

mod automorphism;
mod closure;
mod pipeline;
pub mod scenarios;

pub use automorphism::{
    Certificate, Condition4, FormulaReport, WreathAutomorphism, WreathSpec, DEFAULT_BUDGET,
    DEFAULT_WINDOW, ORDER_SEARCH_LIMIT,
};
pub use closure::{fixed_witness_generator, maximal_orbit_point, sigma_closure, ClosureSeed, SigmaClosure, Witness};
pub use pipeline::{
    separation_pipeline, solvability_pipeline, Evidence, ProbeOptions, RepresentativeEvidence,
    SeparationPredicate, SeparationReport, SolvabilityReport,
};

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::WreathError;
use crate::group::{Elem, FiniteGroup};

pub type Point = Vec<i64>;

/// Element of the base `⊕ G_m`, stored without identity entries and with
/// points in lexicographic order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SigmaElement {
    entries: BTreeMap<Point, Elem>,
}

#[derive(Serialize, Deserialize)]
struct WireEntry {
    point: Point,
    g: Elem,
}

impl Serialize for SigmaElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let wire: Vec<WireEntry> = self
            .entries
            .iter()
            .map(|(p, &g)| WireEntry { point: p.clone(), g })
            .collect();
        wire.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SigmaElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = Vec::<WireEntry>::deserialize(d)?;
        let mut entries = BTreeMap::new();
        for e in wire {
            if entries.insert(e.point.clone(), e.g).is_some() {
                return Err(serde::de::Error::custom(format!(
                    "point {:?} listed twice",
                    e.point
                )));
            }
        }
        // identity entries are dropped once the group is known, see `canonical`
        Ok(SigmaElement { entries })
    }
}

impl SigmaElement {
    pub fn identity() -> Self {
        Self::default()
    }

    /// `g` placed at `point`.
    pub fn single(group: &FiniteGroup, point: Point, g: Elem) -> Self {
        let mut entries = BTreeMap::new();
        if g != group.identity() {
            entries.insert(point, g);
        }
        SigmaElement { entries }
    }

    /// Builds an element from `(point, g)` pairs; repeated points are rejected.
    pub fn from_pairs(
        group: &FiniteGroup,
        pairs: impl IntoIterator<Item = (Point, Elem)>,
    ) -> Result<Self, WreathError> {
        let mut entries = BTreeMap::new();
        for (p, g) in pairs {
            if g >= group.order() {
                return Err(WreathError::InvalidElement {
                    reason: format!("element {g} out of range for a group of order {}", group.order()),
                });
            }
            if entries.insert(p.clone(), g).is_some() {
                return Err(WreathError::InvalidElement {
                    reason: format!("point {p:?} listed twice"),
                });
            }
        }
        Ok(SigmaElement { entries }.canonical(group))
    }

    /// Drops identity entries.
    pub fn canonical(mut self, group: &FiniteGroup) -> Self {
        let e = group.identity();
        self.entries.retain(|_, g| *g != e);
        self
    }

    pub fn is_identity(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, point: &[i64]) -> Option<Elem> {
        self.entries.get(point).copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Point, Elem)> {
        self.entries.iter().map(|(p, &g)| (p, g))
    }

    pub fn support(&self) -> Vec<Point> {
        self.entries.keys().cloned().collect()
    }

    /// Checks that every point has dimension `k` and every value lies in `group`.
    pub fn check(&self, group: &FiniteGroup, k: usize) -> Result<(), WreathError> {
        for (p, &g) in &self.entries {
            if p.len() != k {
                return Err(WreathError::GroupMismatch {
                    reason: format!("point {p:?} has dimension {}, expected {k}", p.len()),
                });
            }
            if g >= group.order() {
                return Err(WreathError::GroupMismatch {
                    reason: format!("element {g} out of range for a group of order {}", group.order()),
                });
            }
            if g == group.identity() {
                return Err(WreathError::InvalidElement {
                    reason: format!("identity stored at {p:?}"),
                });
            }
        }
        Ok(())
    }

    /// Coordinate-wise product.
    pub fn mul(&self, group: &FiniteGroup, other: &SigmaElement) -> SigmaElement {
        let mut entries = self.entries.clone();
        let e = group.identity();
        for (p, &g) in &other.entries {
            match entries.get_mut(p) {
                Some(x) => {
                    *x = group.mul(*x, g);
                    if *x == e {
                        entries.remove(p);
                    }
                }
                None => {
                    entries.insert(p.clone(), g);
                }
            }
        }
        SigmaElement { entries }
    }

    pub fn inv(&self, group: &FiniteGroup) -> SigmaElement {
        SigmaElement {
            entries: self.entries.iter().map(|(p, &g)| (p.clone(), group.inv(g))).collect(),
        }
    }

    /// `alpha(z)`: the value at `m` moves to `m + z`.
    pub fn shift(&self, z: &[i64]) -> SigmaElement {
        SigmaElement {
            entries: self
                .entries
                .iter()
                .map(|(p, &g)| (p.iter().zip(z).map(|(a, b)| a + b).collect(), g))
                .collect(),
        }
    }

    /// `tau_by(self) = by * self * by^-1`; the support is unchanged.
    pub fn conjugate(&self, group: &FiniteGroup, by: &SigmaElement) -> SigmaElement {
        SigmaElement {
            entries: self
                .entries
                .iter()
                .map(|(p, &g)| {
                    let h = by.get(p).unwrap_or(group.identity());
                    (p.clone(), group.conj(h, g))
                })
                .collect(),
        }
    }

    pub fn commutes_with(&self, group: &FiniteGroup, other: &SigmaElement) -> bool {
        self.entries.iter().all(|(p, &g)| match other.get(p) {
            Some(h) => group.mul(g, h) == group.mul(h, g),
            None => true,
        })
    }

    pub fn supports_disjoint(&self, other: &SigmaElement) -> bool {
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        small.entries.keys().all(|p| !large.entries.contains_key(p))
    }

    /// Diameter of the support in the `l^inf` norm; 0 for at most one point.
    pub fn diameter(&self) -> i64 {
        let pts: Vec<&Point> = self.entries.keys().collect();
        let mut best = 0;
        for (i, p) in pts.iter().enumerate() {
            for q in &pts[i + 1..] {
                best = best.max(linf_distance(p, q));
            }
        }
        best
    }

    /// Largest `|coordinate|` over the support.
    pub fn radius(&self) -> i64 {
        self.entries
            .keys()
            .flat_map(|p| p.iter().map(|x| x.abs()))
            .max()
            .unwrap_or(0)
    }

    pub fn check_window(&self, window: i64) -> Result<(), WreathError> {
        match self.entries.keys().find(|p| p.iter().any(|x| x.abs() > window)) {
            Some(p) => Err(WreathError::WindowExceeded {
                point: p.clone(),
                window,
            }),
            None => Ok(()),
        }
    }
}

pub fn linf_distance(p: &[i64], q: &[i64]) -> i64 {
    p.iter().zip(q).map(|(a, b)| (a - b).abs()).max().unwrap_or(0)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WreathElement {
    pub sigma: SigmaElement,
    pub z: Point,
}

impl WreathElement {
    pub fn new(sigma: SigmaElement, z: Point) -> Self {
        WreathElement { sigma, z }
    }

    pub fn translation(z: Point) -> Self {
        WreathElement {
            sigma: SigmaElement::identity(),
            z,
        }
    }

    pub fn base(sigma: SigmaElement, k: usize) -> Self {
        WreathElement { sigma, z: vec![0; k] }
    }
}

/// The ambient group `G wr Z^k`.
#[derive(Clone, Debug)]
pub struct WreathProduct {
    group: FiniteGroup,
    k: usize,
}

impl WreathProduct {
    pub fn new(group: FiniteGroup, k: usize) -> Self {
        WreathProduct { group, k }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn identity(&self) -> WreathElement {
        WreathElement::translation(vec![0; self.k])
    }

    pub fn check(&self, x: &WreathElement) -> Result<(), WreathError> {
        if x.z.len() != self.k {
            return Err(WreathError::GroupMismatch {
                reason: format!("translation {:?} has dimension {}, expected {}", x.z, x.z.len(), self.k),
            });
        }
        x.sigma.check(&self.group, self.k)
    }

    pub fn mul(&self, x: &WreathElement, y: &WreathElement) -> Result<WreathElement, WreathError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul_unchecked(x, y))
    }

    pub(crate) fn mul_unchecked(&self, x: &WreathElement, y: &WreathElement) -> WreathElement {
        WreathElement {
            sigma: x.sigma.mul(&self.group, &y.sigma.shift(&x.z)),
            z: x.z.iter().zip(&y.z).map(|(a, b)| a + b).collect(),
        }
    }

    /// `(sigma, z)^-1 = (alpha(-z) sigma^-1, -z)`.
    pub fn inv(&self, x: &WreathElement) -> WreathElement {
        let neg: Point = x.z.iter().map(|a| -a).collect();
        WreathElement {
            sigma: x.sigma.inv(&self.group).shift(&neg),
            z: neg,
        }
    }

    /// `g` at the origin for `g` in a small generating set of `G`, followed
    /// by the unit translations.
    pub fn generators(&self) -> Vec<WreathElement> {
        let origin = vec![0; self.k];
        let mut gens: Vec<WreathElement> = self
            .group
            .small_generating_set()
            .into_iter()
            .map(|g| WreathElement::base(SigmaElement::single(&self.group, origin.clone(), g), self.k))
            .collect();
        for i in 0..self.k {
            let mut e = vec![0; self.k];
            e[i] = 1;
            gens.push(WreathElement::translation(e));
        }
        gens
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{cyclic, named};

    #[test]
    fn lamp_multiplication() {
        let w = WreathProduct::new(cyclic(2), 1);
        let g = w.group().clone();
        let x = WreathElement::new(SigmaElement::single(&g, vec![0], 1), vec![1]);
        let xx = w.mul(&x, &x).unwrap();
        let expect = SigmaElement::from_pairs(&g, [(vec![0], 1), (vec![1], 1)]).unwrap();
        assert_eq!(xx, WreathElement::new(expect, vec![2]));
        assert_eq!(w.mul(&w.identity(), &x).unwrap(), x);
        assert_eq!(w.mul(&x, &w.inv(&x)).unwrap(), w.identity());
    }

    #[test]
    fn canonical_form_drops_identity() {
        let g = cyclic(3);
        let a = SigmaElement::single(&g, vec![2], 1);
        let b = SigmaElement::single(&g, vec![2], 2);
        assert!(a.mul(&g, &b).is_identity());
        assert!(SigmaElement::single(&g, vec![0], 0).is_identity());
        assert!(SigmaElement::from_pairs(&g, [(vec![0], 1), (vec![0], 2)]).is_err());
    }

    #[test]
    fn mismatched_dimensions() {
        let w = WreathProduct::new(cyclic(2), 2);
        let x = WreathElement::translation(vec![1]);
        assert!(matches!(w.mul(&x, &x), Err(WreathError::GroupMismatch { .. })));
    }

    #[test]
    fn conjugation_keeps_support() {
        let g = named("S3").unwrap();
        let t = (1..6).find(|&x| g.element_order(x) == 2).unwrap();
        let r = (1..6).find(|&x| g.element_order(x) == 3).unwrap();
        let by = SigmaElement::single(&g, vec![0], t);
        let x = SigmaElement::from_pairs(&g, [(vec![0], r), (vec![3], r)]).unwrap();
        let c = x.conjugate(&g, &by);
        assert_eq!(c.support(), x.support());
        assert_eq!(c.get(&[0]), Some(g.inv(r)));
        assert_eq!(c.get(&[3]), Some(r));
    }

    #[test]
    fn diameter_and_wire_form() {
        let g = cyclic(2);
        let x = SigmaElement::from_pairs(&g, [(vec![1, 0], 1), (vec![-1, 3], 1)]).unwrap();
        assert_eq!(x.diameter(), 3);
        assert_eq!(x.radius(), 3);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"[{"point":[-1,3],"g":1},{"point":[1,0],"g":1}]"#);
        let back: SigmaElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }
}
