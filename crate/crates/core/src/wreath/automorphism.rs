use std::collections::{BTreeSet, HashMap};

use num_integer::lcm;
use serde::Serialize;

use super::{Point, SigmaElement, WreathElement, WreathProduct};
use crate::error::WreathError;
use crate::group::{Elem, FiniteGroup};
use crate::lattice::{matrix_order, IntMatrix, DEFAULT_MAX_ORDER};

/// Half-width of the default box `[-W, W]^k`.
pub const DEFAULT_WINDOW: i64 = 32;
/// Default cap on the number of elements in a closure.
pub const DEFAULT_BUDGET: usize = 1024;
/// Iterates of `phi'` tried per generator when measuring its order.
pub const ORDER_SEARCH_LIMIT: usize = 64;

/// Unvalidated input for [`WreathAutomorphism::new`].
#[derive(Clone, Debug)]
pub struct WreathSpec {
    pub group: FiniteGroup,
    pub d: IntMatrix,
    /// `b(e_1), ..., b(e_k)`.
    pub b: Vec<SigmaElement>,
    /// `a0(g)` for a generating set of `G`; extended multiplicatively.
    pub a0: Vec<(Elem, SigmaElement)>,
    pub window: i64,
    pub budget: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Condition4 {
    HoldsOnWindow,
    FailsOnWindow { point: Point, g: Elem },
}

impl Condition4 {
    pub fn holds(&self) -> bool {
        matches!(self, Condition4::HoldsOnWindow)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub checks: Vec<&'static str>,
    pub condition4: Condition4,
    /// Order of `phi'` on the generators `g_m`, `m` in the window, when
    /// every orbit closes within [`ORDER_SEARCH_LIMIT`] steps.
    pub window_order: Option<usize>,
    pub window: i64,
}

/// Automorphism of `G wr Z^k` given by a triple `(a, b, d)`:
/// `phi(sigma, z) = (phi'(sigma) b(z), d z)` with
/// `phi'(g_m) = b(m) alpha(d m)(a0(g)) b(m)^-1`.
#[derive(Clone, Debug)]
pub struct WreathAutomorphism {
    product: WreathProduct,
    d: IntMatrix,
    d64: Vec<Vec<i64>>,
    d_inv64: Vec<Vec<i64>>,
    order: usize,
    b_gens: Vec<SigmaElement>,
    a0: Vec<SigmaElement>,
    window: i64,
    budget: usize,
    certificate: Certificate,
}

fn invalid(reason: impl Into<String>) -> WreathError {
    WreathError::InvalidAutomorphism { reason: reason.into() }
}

fn mat_apply(m: &[Vec<i64>], v: &[i64]) -> Point {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn unit(k: usize, i: usize) -> Point {
    let mut e = vec![0; k];
    e[i] = 1;
    e
}

/// Every point of `[-r, r]^k` in lexicographic order.
pub(crate) fn box_points(k: usize, r: i64) -> Vec<Point> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|p: Point| {
                (-r..=r).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

impl WreathAutomorphism {
    pub fn new(spec: WreathSpec) -> Result<Self, WreathError> {
        let WreathSpec { group, d, b, a0, window, budget } = spec;
        let k = d.dim();
        let order = matrix_order(&d, DEFAULT_MAX_ORDER)?;
        let d64 = d.to_i64().ok_or_else(|| invalid("matrix entries exceed 64 bits"))?;
        let d_inv64 = d
            .inverse_unimodular()?
            .to_i64()
            .ok_or_else(|| invalid("inverse matrix entries exceed 64 bits"))?;
        if b.len() != k {
            return Err(invalid(format!("expected {k} cocycle values, found {}", b.len())));
        }
        if window < 0 {
            return Err(invalid("window must be non-negative"));
        }
        for s in &b {
            s.check(&group, k)?;
        }
        let a0 = extend_a0(&group, k, a0)?;
        for s in &a0 {
            s.check_window(window)?;
        }

        let mut phi = WreathAutomorphism {
            product: WreathProduct::new(group, k),
            d,
            d64,
            d_inv64,
            order,
            b_gens: b,
            a0,
            window,
            budget,
            certificate: Certificate {
                checks: Vec::new(),
                condition4: Condition4::HoldsOnWindow,
                window_order: None,
                window,
            },
        };
        let mut checks = vec!["finite-order-d", "a0-homomorphism", "a0-injective"];
        phi.check_cocycle()?;
        checks.push("cocycle");
        phi.check_commuting_images()?;
        checks.push("commuting-images");
        let (condition4, window_order) = phi.window_order();
        phi.certificate = Certificate {
            checks,
            condition4,
            window_order,
            window,
        };
        Ok(phi)
    }

    pub fn product(&self) -> &WreathProduct {
        &self.product
    }

    pub fn group(&self) -> &FiniteGroup {
        self.product.group()
    }

    pub fn k(&self) -> usize {
        self.product.k()
    }

    pub fn d(&self) -> &IntMatrix {
        &self.d
    }

    /// Order `s` of `d`.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn window(&self) -> i64 {
        self.window
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    pub fn b_generators(&self) -> &[SigmaElement] {
        &self.b_gens
    }

    pub fn a0(&self, g: Elem) -> &SigmaElement {
        &self.a0[g]
    }

    pub fn apply_d(&self, m: &[i64]) -> Point {
        mat_apply(&self.d64, m)
    }

    pub fn apply_d_pow(&self, m: &[i64], j: usize) -> Point {
        (0..j).fold(m.to_vec(), |p, _| self.apply_d(&p))
    }

    fn b_trivial(&self) -> bool {
        self.b_gens.iter().all(SigmaElement::is_identity)
    }

    /// `b(n e_i)` from `b(x + y) = b(x) alpha(d x)(b(y))`.
    fn b_multiple(&self, i: usize, n: i64) -> SigmaElement {
        let g = self.group();
        let k = self.k();
        let e = unit(k, i);
        let de = self.apply_d(&e);
        let step = if n >= 0 {
            self.b_gens[i].clone()
        } else {
            // b(-e) = alpha(-d e)(b(e)^-1)
            let neg: Point = de.iter().map(|x| -x).collect();
            self.b_gens[i].inv(g).shift(&neg)
        };
        let sign = n.signum();
        let mut acc = SigmaElement::identity();
        for t in 0..n.abs() {
            let off: Point = de.iter().map(|x| x * t * sign).collect();
            acc = acc.mul(g, &step.shift(&off));
        }
        acc
    }

    /// The cocycle `b(z)`, expanded along `e_1, ..., e_k` in order.
    pub fn b(&self, z: &[i64]) -> SigmaElement {
        if self.b_trivial() {
            return SigmaElement::identity();
        }
        let g = self.group();
        let mut acc = SigmaElement::identity();
        let mut x = vec![0; self.k()];
        for (i, &zi) in z.iter().enumerate() {
            if zi == 0 {
                continue;
            }
            acc = acc.mul(g, &self.b_multiple(i, zi).shift(&self.apply_d(&x)));
            x[i] += zi;
        }
        acc
    }

    /// `b(m)` built from the neighbour one step closer to the origin along
    /// the last nonzero coordinate.
    fn b_cached(&self, m: &[i64], cache: &mut HashMap<Point, SigmaElement>) -> SigmaElement {
        if let Some(v) = cache.get(m) {
            return v.clone();
        }
        let Some(i) = m.iter().rposition(|&x| x != 0) else {
            return SigmaElement::identity();
        };
        let step = m[i].signum();
        let mut prev = m.to_vec();
        prev[i] -= step;
        let base = self.b_cached(&prev, cache);
        let v = base.mul(self.group(), &self.b_multiple(i, step).shift(&self.apply_d(&prev)));
        cache.insert(m.to_vec(), v.clone());
        v
    }

    /// `phi'(g_m) = b(m) alpha(d m)(a0(g)) b(m)^-1`, without window checks.
    pub fn generator_image(&self, m: &[i64], g: Elem) -> SigmaElement {
        let shifted = self.a0[g].shift(&self.apply_d(m));
        if self.b_trivial() {
            shifted
        } else {
            shifted.conjugate(self.group(), &self.b(m))
        }
    }

    pub(crate) fn apply_sigma_unbounded(&self, sigma: &SigmaElement) -> SigmaElement {
        let g = self.group();
        sigma
            .entries()
            .fold(SigmaElement::identity(), |acc, (m, x)| acc.mul(g, &self.generator_image(m, x)))
    }

    fn apply_sigma_cached(
        &self,
        sigma: &SigmaElement,
        cache: &mut HashMap<Point, SigmaElement>,
    ) -> SigmaElement {
        if self.b_trivial() {
            return self.apply_sigma_unbounded(sigma);
        }
        let g = self.group();
        sigma.entries().fold(SigmaElement::identity(), |acc, (m, x)| {
            let bm = self.b_cached(m, cache);
            let img = self.a0[x].shift(&self.apply_d(m)).conjugate(g, &bm);
            acc.mul(g, &img)
        })
    }

    /// `phi'` on the base, with every intermediate support kept in the window.
    pub fn apply_sigma(&self, sigma: &SigmaElement) -> Result<SigmaElement, WreathError> {
        sigma.check(self.group(), self.k())?;
        sigma.check_window(self.window)?;
        let g = self.group();
        let mut acc = SigmaElement::identity();
        for (m, x) in sigma.entries() {
            let img = self.generator_image(m, x);
            img.check_window(self.window)?;
            acc = acc.mul(g, &img);
        }
        Ok(acc)
    }

    pub fn apply(&self, x: &WreathElement) -> Result<WreathElement, WreathError> {
        self.product.check(x)?;
        let bz = self.b(&x.z);
        bz.check_window(self.window)?;
        let sigma = self.apply_sigma(&x.sigma)?.mul(self.group(), &bz);
        sigma.check_window(self.window)?;
        Ok(WreathElement {
            sigma,
            z: self.apply_d(&x.z),
        })
    }

    /// `phi'^q`, windowed.
    pub fn apply_sigma_pow(&self, sigma: &SigmaElement, q: usize) -> Result<SigmaElement, WreathError> {
        let mut x = sigma.clone();
        for _ in 0..q {
            x = self.apply_sigma(&x)?;
        }
        Ok(x)
    }

    /// The triple of `tau_z o phi`, i.e. `sigma -> alpha(z) phi'(sigma)` on the base.
    pub fn conjugate_by_shift(&self, z: &[i64]) -> Result<WreathAutomorphism, WreathError> {
        let group = self.group().clone();
        let a0 = (0..group.order())
            .filter(|&g| g != group.identity())
            .map(|g| (g, self.a0[g].shift(z)))
            .collect();
        WreathAutomorphism::new(WreathSpec {
            d: self.d.clone(),
            b: self.b_gens.iter().map(|s| s.shift(z)).collect(),
            a0,
            window: self.window,
            budget: self.budget,
            group,
        })
    }

    /// `b(e_i) alpha(d e_i)(b(e_j)) = b(e_j) alpha(d e_j)(b(e_i))` for `i < j`.
    fn check_cocycle(&self) -> Result<(), WreathError> {
        let g = self.group();
        let k = self.k();
        for i in 0..k {
            for j in i + 1..k {
                let dei = self.apply_d(&unit(k, i));
                let dej = self.apply_d(&unit(k, j));
                let lhs = self.b_gens[i].mul(g, &self.b_gens[j].shift(&dei));
                let rhs = self.b_gens[j].mul(g, &self.b_gens[i].shift(&dej));
                if lhs != rhs {
                    return Err(invalid(format!(
                        "cocycle condition fails for generators {i} and {j}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Images of `G_m` and `G_m'` must commute for `m != m'`. Translating by
    /// `m` reduces this to `m = 0` and offsets `delta = m' - m` for which the
    /// supports `d m + supp a0` can meet, a finite set.
    fn check_commuting_images(&self) -> Result<(), WreathError> {
        let g = self.group();
        let gens = g.small_generating_set();
        let support: BTreeSet<Point> = self.a0.iter().flat_map(|s| s.support()).collect();
        let mut offsets = BTreeSet::new();
        for p in &support {
            for q in &support {
                let diff: Point = q.iter().zip(p).map(|(a, b)| a - b).collect();
                let delta = mat_apply(&self.d_inv64, &diff);
                if delta.iter().any(|&x| x != 0) {
                    offsets.insert(delta);
                }
            }
        }
        let origin = vec![0; self.k()];
        for delta in &offsets {
            for &x in &gens {
                let a = self.generator_image(&origin, x);
                for &y in &gens {
                    let b = self.generator_image(delta, y);
                    if !a.commutes_with(g, &b) {
                        return Err(invalid(format!(
                            "images of coordinates 0 and {delta:?} do not commute"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Per-generator orders of `phi'` on `g_m`, `m` in the window.
    fn window_order(&self) -> (Condition4, Option<usize>) {
        let g = self.group();
        let gens = g.small_generating_set();
        let mut total = Some(1usize);
        let mut condition4 = Condition4::HoldsOnWindow;
        let mut cache = HashMap::new();
        for m in box_points(self.k(), self.window) {
            for &x in &gens {
                let start = SigmaElement::single(g, m.clone(), x);
                let mut cur = start.clone();
                let mut found = None;
                for t in 1..=ORDER_SEARCH_LIMIT {
                    cur = self.apply_sigma_cached(&cur, &mut cache);
                    if cur == start {
                        found = Some(t);
                        break;
                    }
                }
                if condition4.holds() && found.map_or(true, |t| self.order % t != 0) {
                    condition4 = Condition4::FailsOnWindow { point: m.clone(), g: x };
                }
                total = match (total, found) {
                    (Some(a), Some(t)) => Some(lcm(a, t)),
                    _ => None,
                };
            }
        }
        (condition4, total)
    }

    /// `beta(q)` with `beta(1) = b(m)` and `beta(q) = phi'(beta(q-1)) b(d^(q-1) m)`,
    /// so that `phi'^q(alpha(m) h) = tau_beta(q)[alpha(d^q m)(phi'^q h)]`.
    pub fn beta(&self, m: &[i64], q: usize) -> Result<SigmaElement, WreathError> {
        let g = self.group();
        let mut beta = self.b(m);
        let mut point = m.to_vec();
        for _ in 1..q {
            point = self.apply_d(&point);
            beta = self.apply_sigma(&beta)?.mul(g, &self.b(&point));
        }
        beta.check_window(self.window)?;
        Ok(beta)
    }

    /// Computes `phi'^q(alpha(m) h)` by iteration and through `beta(q)`.
    pub fn iterate_formula_check(
        &self,
        m: &[i64],
        h: &SigmaElement,
        q: usize,
    ) -> Result<FormulaReport, WreathError> {
        if q == 0 {
            return Err(invalid("iteration count must be at least 1"));
        }
        if m.len() != self.k() {
            return Err(WreathError::GroupMismatch {
                reason: format!("point {m:?} has dimension {}, expected {}", m.len(), self.k()),
            });
        }
        let iterated = self.apply_sigma_pow(&h.shift(m), q)?;
        let shifted = self.apply_sigma_pow(h, q)?.shift(&self.apply_d_pow(m, q));
        shifted.check_window(self.window)?;
        let beta = self.beta(m, q)?;
        let closed_form = shifted.conjugate(self.group(), &beta);
        Ok(FormulaReport {
            equal: iterated == closed_form,
            support_equal: iterated.support() == shifted.support(),
            iterated,
            closed_form,
            shifted,
            beta,
            q,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FormulaReport {
    pub q: usize,
    pub iterated: SigmaElement,
    pub closed_form: SigmaElement,
    /// `alpha(d^q m)(phi'^q h)`.
    pub shifted: SigmaElement,
    pub beta: SigmaElement,
    pub equal: bool,
    pub support_equal: bool,
}

impl FormulaReport {
    pub fn holds(&self) -> bool {
        self.equal && self.support_equal
    }
}

/// Extends `a0` from the listed elements to all of `G` and checks it is an
/// injective homomorphism into the base.
fn extend_a0(
    group: &FiniteGroup,
    k: usize,
    given: Vec<(Elem, SigmaElement)>,
) -> Result<Vec<SigmaElement>, WreathError> {
    let n = group.order();
    let e = group.identity();
    let mut image: Vec<Option<SigmaElement>> = vec![None; n];
    image[e] = Some(SigmaElement::identity());
    let mut gens = Vec::new();
    for (g, s) in given {
        if g >= n {
            return Err(invalid(format!("a0 lists element {g} outside a group of order {n}")));
        }
        s.check(group, k)?;
        match &image[g] {
            Some(prev) if *prev != s => {
                return Err(invalid(format!("a0 assigns two images to element {g}")))
            }
            _ => {}
        }
        image[g] = Some(s);
        gens.push(g);
    }
    let mut queue: Vec<Elem> = (0..n).filter(|&g| image[g].is_some()).collect();
    while let Some(x) = queue.pop() {
        for &y in &gens {
            let xy = group.mul(x, y);
            if image[xy].is_none() {
                let s = image[x].as_ref().unwrap().mul(group, image[y].as_ref().unwrap());
                image[xy] = Some(s);
                queue.push(xy);
            }
        }
    }
    let image: Vec<SigmaElement> = match image.into_iter().collect::<Option<Vec<_>>>() {
        Some(v) => v,
        None => return Err(invalid("the listed a0 values do not generate G")),
    };
    for x in 0..n {
        for y in 0..n {
            if image[group.mul(x, y)] != image[x].mul(group, &image[y]) {
                return Err(invalid(format!("a0 is not a homomorphism at ({x}, {y})")));
            }
        }
        if (x == e) != image[x].is_identity() {
            return Err(invalid(format!("a0 is not injective: element {x} maps to the identity")));
        }
    }
    Ok(image)
}
