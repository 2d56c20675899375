use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::group::{Automorphism, Elem, FiniteGroup};

/// Default cap on the number of automorphisms kept per group.
pub const DEFAULT_AUTOMORPHISM_CAP: usize = 100_000;

#[derive(Clone, Debug)]
pub struct AutomorphismEnumeration {
    /// Sorted by image when complete; a uniform sample otherwise.
    pub automorphisms: Vec<Automorphism>,
    /// Number of automorphisms the search found.
    pub found: usize,
    pub truncated: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumerationSummary {
    pub group: Option<String>,
    pub kept: usize,
    pub found: usize,
    pub truncated: bool,
}

impl AutomorphismEnumeration {
    pub fn summary(&self, group: &FiniteGroup) -> EnumerationSummary {
        EnumerationSummary {
            group: group.name().map(str::to_owned),
            kept: self.automorphisms.len(),
            found: self.found,
            truncated: self.truncated,
        }
    }
}

/// Spanning tree of the Cayley graph: `parent[x] = (y, i)` with `x = y g_i`.
fn spanning_tree(group: &FiniteGroup, gens: &[Elem]) -> Vec<Elem> {
    let mut order = vec![group.identity()];
    let mut seen = vec![false; group.order()];
    seen[group.identity()] = true;
    let mut head = 0;
    while head < order.len() {
        let y = order[head];
        head += 1;
        for &g in gens {
            let x = group.mul(y, g);
            if !seen[x] {
                seen[x] = true;
                order.push(x);
            }
        }
    }
    order
}

/// Extends generator images to a map on `G`, returning it when it is a
/// bijective homomorphism.
fn extend(group: &FiniteGroup, gens: &[Elem], images: &[Elem], order: &[Elem]) -> Option<Vec<Elem>> {
    let n = group.order();
    let mut image = vec![usize::MAX; n];
    image[group.identity()] = group.identity();
    for &y in order {
        for (&g, &h) in gens.iter().zip(images) {
            let x = group.mul(y, g);
            let v = group.mul(image[y], h);
            if image[x] == usize::MAX {
                image[x] = v;
            } else if image[x] != v {
                return None;
            }
        }
    }
    let mut hit = vec![false; n];
    for &v in &image {
        if std::mem::replace(&mut hit[v], true) {
            return None;
        }
    }
    Some(image)
}

/// All automorphisms of `group`, found by backtracking over images of a small
/// generating set. When more than `cap` exist, a uniform sample of `cap` of
/// them is kept, drawn with a generator seeded by `seed`.
pub fn enumerate_automorphisms_seeded(group: &FiniteGroup, cap: usize, seed: u64) -> AutomorphismEnumeration {
    let gens = group.small_generating_set();
    let order = spanning_tree(group, &gens);
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&g| {
            let o = group.element_order(g);
            group.elements().filter(|&x| group.element_order(x) == o).collect()
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut kept: Vec<Vec<Elem>> = Vec::new();
    let mut found = 0usize;
    let mut images = vec![0; gens.len()];
    let mut idx = vec![0usize; gens.len()];
    if gens.is_empty() {
        kept.push(vec![group.identity()]);
        found = 1;
    } else {
        // odometer over candidate tuples; distinct images of generators must
        // stay distinct, which prunes most of the tree
        'outer: loop {
            let distinct = (0..gens.len()).all(|i| {
                images[i] = candidates[i][idx[i]];
                (0..i).all(|j| images[j] != images[i])
            });
            if distinct {
                if let Some(image) = extend(group, &gens, &images, &order) {
                    found += 1;
                    if kept.len() < cap {
                        kept.push(image);
                    } else {
                        let j = rng.gen_range(0..found);
                        if j < cap {
                            kept[j] = image;
                        }
                    }
                }
            }
            let mut i = gens.len();
            loop {
                if i == 0 {
                    break 'outer;
                }
                i -= 1;
                idx[i] += 1;
                if idx[i] < candidates[i].len() {
                    break;
                }
                idx[i] = 0;
            }
        }
    }
    let truncated = found > kept.len();
    kept.sort();
    AutomorphismEnumeration {
        automorphisms: kept
            .into_iter()
            .map(|img| Automorphism::new(group, img).expect("extension is an automorphism"))
            .collect(),
        found,
        truncated,
    }
}

pub fn enumerate_automorphisms(group: &FiniteGroup, cap: usize) -> AutomorphismEnumeration {
    enumerate_automorphisms_seeded(group, cap, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{cyclic, named};

    #[test]
    fn known_orders() {
        for (name, n) in [("C1", 1), ("C2", 1), ("C3", 2), ("S3", 6), ("C2xC2", 6), ("Q8", 24), ("C2^3", 168)] {
            let g = named(name).unwrap_or_else(|| panic!("{name}"));
            let e = enumerate_automorphisms(&g, DEFAULT_AUTOMORPHISM_CAP);
            assert_eq!((e.found, e.truncated), (n, false), "{name}");
            assert_eq!(e.automorphisms.len(), n);
        }
        assert_eq!(enumerate_automorphisms(&cyclic(12), 100).found, 4);
    }

    #[test]
    fn cap_samples_deterministically() {
        let g = named("C2^3").unwrap();
        let a = enumerate_automorphisms_seeded(&g, 10, 7);
        let b = enumerate_automorphisms_seeded(&g, 10, 7);
        assert!(a.truncated && a.found == 168 && a.automorphisms.len() == 10);
        let imgs = |e: &AutomorphismEnumeration| e.automorphisms.iter().map(|x| x.image().to_vec()).collect::<Vec<_>>();
        assert_eq!(imgs(&a), imgs(&b));
    }
}
