//! Conjugacy classes, exact character tables and the action of an
//! automorphism on irreducible characters.
//!
//! Character tables are computed with Dixon's modular method: central
//! characters are simultaneous eigenvectors of the class multiplication
//! matrices over `F_p` with `p = 1 mod exp(G)`, and each value is lifted to
//! `Z[zeta_e]` from the eigenvalue multiplicities of `rho(g)`, which are
//! small non-negative integers. The lifted table is accepted only after both
//! orthogonality relations hold exactly.

pub mod cyclotomic;
mod modular;

use serde::Serialize;

use crate::error::ReprError;
use crate::group::{twisted_classes, Automorphism, Elem, FiniteGroup};
pub use cyclotomic::{Cyclotomic, CyclotomicField};

/// Conjugacy classes of a finite group with class multiplication constants.
///
/// `mult[i][j][k]` counts pairs `(x, y)` with `x` in class `i`, `y` in class
/// `j` and `x y` equal to the fixed representative of class `k`, so that
/// `C_i C_j = sum_k mult[i][j][k] C_k` in the group algebra and
/// `sum_k mult[i][j][k] |C_k| = |C_i| |C_j|`.
#[derive(Clone, Debug, Serialize)]
pub struct ConjugacyClassData {
    pub class_of: Vec<usize>,
    pub class_sizes: Vec<usize>,
    /// Minimal element of each class; classes are numbered in this order.
    pub class_reps: Vec<Elem>,
    #[serde(skip)]
    pub mult: Vec<Vec<Vec<u64>>>,
}

impl ConjugacyClassData {
    pub fn count(&self) -> usize {
        self.class_reps.len()
    }

    /// Class of `x^-1` for each class.
    pub fn inverse_classes(&self, group: &FiniteGroup) -> Vec<usize> {
        self.class_reps
            .iter()
            .map(|&g| self.class_of[group.inv(g)])
            .collect()
    }

    /// `power_map[j][t]` is the class of `rep_j^t`.
    pub fn power_map(&self, group: &FiniteGroup, t: u64, j: usize) -> usize {
        self.class_of[group.pow(self.class_reps[j], t)]
    }

    /// Permutation of classes induced by an automorphism.
    pub fn class_permutation(&self, phi: &Automorphism) -> Vec<usize> {
        self.class_reps
            .iter()
            .map(|&g| self.class_of[phi.apply(g)])
            .collect()
    }
}

pub fn conjugacy_data(group: &FiniteGroup) -> ConjugacyClassData {
    let part = twisted_classes(group, &Automorphism::identity(group));
    let class_of = part.class_ids().to_vec();
    let class_sizes = part.sizes().to_vec();
    let class_reps = part.representatives().to_vec();
    let r = class_reps.len();
    let members = part.classes();
    let mut mult = vec![vec![vec![0u64; r]; r]; r];
    for (k, &z) in class_reps.iter().enumerate() {
        for (i, ci) in members.iter().enumerate() {
            for &x in ci {
                let y = group.mul(group.inv(x), z);
                mult[i][class_of[y]][k] += 1;
            }
        }
    }
    ConjugacyClassData {
        class_of,
        class_sizes,
        class_reps,
        mult,
    }
}

/// Exact character table. Rows are irreducible characters sorted by degree,
/// trivial character first, then by decreasing coefficient vectors; columns
/// follow the class numbering of [`ConjugacyClassData`].
#[derive(Clone, Debug, Serialize)]
pub struct CharacterTable {
    /// Order of the root of unity all values are expressed over.
    pub root_order: usize,
    pub degrees: Vec<u64>,
    pub class_sizes: Vec<usize>,
    pub class_reps: Vec<Elem>,
    pub characters: Vec<Vec<Cyclotomic>>,
    /// Prime used for the modular computation.
    pub prime: u64,
    #[serde(skip)]
    pub classes: ConjugacyClassData,
}

impl CharacterTable {
    pub fn field(&self) -> CyclotomicField {
        CyclotomicField::new(self.root_order)
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    /// `|G| <chi_a, chi_b>` as an exact cyclotomic integer.
    pub fn scaled_inner_product(&self, a: usize, b: usize) -> Cyclotomic {
        let f = self.field();
        let mut acc = f.zero();
        for (j, &size) in self.class_sizes.iter().enumerate() {
            let term = f.mul(&self.characters[a][j], &f.conj(&self.characters[b][j]));
            acc = f.add(&acc, &f.scale(&term, size as i64));
        }
        acc
    }

    /// Both orthogonality relations and `sum d^2 = |G|`, exactly.
    pub fn verify(&self, group_order: usize) -> Result<(), ReprError> {
        let f = self.field();
        let r = self.characters.len();
        let fail = |reason: String| Err(ReprError::ComputationFailed { reason });
        if r != self.class_sizes.len() {
            return fail(format!("{r} characters for {} classes", self.class_sizes.len()));
        }
        let sq: u64 = self.degrees.iter().map(|d| d * d).sum();
        if sq != group_order as u64 {
            return fail(format!("sum of squared degrees is {sq}, not {group_order}"));
        }
        for a in 0..r {
            for b in a..r {
                let expect = if a == b { group_order as i64 } else { 0 };
                if self.scaled_inner_product(a, b) != f.integer(expect) {
                    return fail(format!("rows {a} and {b} are not orthonormal"));
                }
            }
        }
        for j in 0..r {
            for k in j..r {
                let mut acc = f.zero();
                for row in &self.characters {
                    acc = f.add(&acc, &f.mul(&row[j], &f.conj(&row[k])));
                }
                let expect = if j == k {
                    (group_order / self.class_sizes[j]) as i64
                } else {
                    0
                };
                if acc != f.integer(expect) {
                    return fail(format!("columns {j} and {k} are not orthogonal"));
                }
            }
        }
        Ok(())
    }

    /// Row index of the character `chi ∘ phi` for each row `chi`.
    pub fn character_permutation(&self, class_perm: &[usize]) -> Option<Vec<usize>> {
        self.characters
            .iter()
            .map(|row| {
                let moved: Vec<&Cyclotomic> = class_perm.iter().map(|&j| &row[j]).collect();
                self.characters
                    .iter()
                    .position(|other| other.iter().zip(&moved).all(|(a, b)| a == *b))
            })
            .collect()
    }
}

pub fn character_table(group: &FiniteGroup) -> Result<CharacterTable, ReprError> {
    let classes = conjugacy_data(group);
    let exponent = group.exponent();
    let modular = modular::ModularTable::compute(group, &classes, exponent)?;
    let field = CyclotomicField::new(exponent);

    let r = classes.count();
    let mut rows: Vec<(u64, Vec<Cyclotomic>)> = Vec::with_capacity(r);
    for (deg, values) in modular.degrees.iter().zip(&modular.values) {
        let mut row = Vec::with_capacity(r);
        for j in 0..r {
            row.push(lift_value(group, &classes, &field, &modular, values, *deg, j)?);
        }
        rows.push((*deg, row));
    }
    let trivial_row: Vec<Cyclotomic> = (0..r).map(|_| field.integer(1)).collect();
    rows.sort_by(|(da, ra), (db, rb)| {
        da.cmp(db)
            .then_with(|| (*rb == trivial_row).cmp(&(*ra == trivial_row)))
            .then_with(|| rb.cmp(ra))
    });

    let table = CharacterTable {
        root_order: exponent,
        degrees: rows.iter().map(|(d, _)| *d).collect(),
        class_sizes: classes.class_sizes.clone(),
        class_reps: classes.class_reps.clone(),
        characters: rows.into_iter().map(|(_, row)| row).collect(),
        prime: modular.prime,
        classes,
    };
    table.verify(group.order())?;
    Ok(table)
}

/// `chi(g_j) = sum_l mu_l zeta_o^l`, where `mu_l` is the multiplicity of the
/// eigenvalue `zeta_o^l` of `rho(g_j)` and `o` is the order of `g_j`.
fn lift_value(
    group: &FiniteGroup,
    classes: &ConjugacyClassData,
    field: &CyclotomicField,
    modular: &modular::ModularTable,
    values: &[u64],
    degree: u64,
    j: usize,
) -> Result<Cyclotomic, ReprError> {
    let p = modular.prime;
    let e = field.root_order();
    let o = group.element_order(classes.class_reps[j]);
    let zeta_o = modular::pow_mod(modular.root, (e / o) as u64, p);
    let zeta_o_inv = modular::inv_mod(zeta_o, p);
    let o_inv = modular::inv_mod(o as u64 % p, p);
    let powers: Vec<u64> = (0..o as u64)
        .map(|t| values[classes.power_map(group, t, j)])
        .collect();
    let mut exps = vec![0i64; e];
    let mut total = 0u64;
    for l in 0..o as u64 {
        let step = modular::pow_mod(zeta_o_inv, l, p);
        let mut w = 1u64;
        let mut acc = 0u64;
        for &chi in &powers {
            acc = (acc + chi * w) % p;
            w = w * step % p;
        }
        let mu = acc * o_inv % p;
        if mu > degree {
            return Err(ReprError::ComputationFailed {
                reason: format!("eigenvalue multiplicity {mu} exceeds degree {degree}"),
            });
        }
        total += mu;
        exps[(l as usize) * (e / o)] = mu as i64;
    }
    if total != degree {
        return Err(ReprError::ComputationFailed {
            reason: format!("multiplicities sum to {total}, not {degree}"),
        });
    }
    Ok(field.from_exponents(&exps))
}

/// Action of an automorphism on classes and on irreducible characters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualAction {
    /// `class_permutation[j]` is the class of `phi(rep_j)`.
    pub class_permutation: Vec<usize>,
    /// `character_permutation[a]` is the row equal to `chi_a ∘ phi`.
    pub character_permutation: Vec<usize>,
    pub fixed_classes: usize,
    pub fixed_characters: usize,
}

/// Number of irreducible characters with `chi ∘ phi = chi`, together with
/// the permutations of classes and characters.
pub fn fixed_irreducibles(table: &CharacterTable, phi: &Automorphism) -> (usize, DualAction) {
    let class_permutation = table.classes.class_permutation(phi);
    let character_permutation = table
        .character_permutation(&class_permutation)
        .expect("chi ∘ phi is an irreducible character");
    let fixed_classes = class_permutation
        .iter()
        .enumerate()
        .filter(|(j, &k)| *j == k)
        .count();
    let fixed_characters = character_permutation
        .iter()
        .enumerate()
        .filter(|(a, &b)| *a == b)
        .count();
    (
        fixed_characters,
        DualAction {
            class_permutation,
            character_permutation,
            fixed_classes,
            fixed_characters,
        },
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct TbftReport {
    pub group: Option<String>,
    pub reidemeister_number: usize,
    pub fixed_characters: usize,
    pub fixed_classes: usize,
    pub equal: bool,
}

/// Compares the Reidemeister number of `phi` with the number of irreducible
/// characters it fixes.
pub fn tbft_check(group: &FiniteGroup, phi: &Automorphism) -> Result<TbftReport, ReprError> {
    let table = character_table(group)?;
    Ok(tbft_check_with(group, &table, phi))
}

/// [`tbft_check`] with a precomputed character table.
pub fn tbft_check_with(group: &FiniteGroup, table: &CharacterTable, phi: &Automorphism) -> TbftReport {
    let r = twisted_classes(group, phi).count();
    let (fixed, dual) = fixed_irreducibles(table, phi);
    TbftReport {
        group: group.name().map(str::to_owned),
        reidemeister_number: r,
        fixed_characters: fixed,
        fixed_classes: dual.fixed_classes,
        equal: r == fixed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn abelian_classes_are_singletons() {
        let g = corpus::cyclic(6);
        let cd = conjugacy_data(&g);
        assert_eq!(cd.count(), 6);
        assert!(cd.class_sizes.iter().all(|&s| s == 1));
    }

    #[test]
    fn class_sizes_s3_q8() {
        let s3 = corpus::dihedral(3);
        let mut sizes = conjugacy_data(&s3).class_sizes;
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        let q8 = corpus::metacyclic(4, 2, 3, 2);
        let mut sizes = conjugacy_data(&q8).class_sizes;
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
    }

    #[test]
    fn multiplication_constants_row_sums() {
        let g = corpus::named("SL(2,3)").unwrap();
        let cd = conjugacy_data(&g);
        let r = cd.count();
        for i in 0..r {
            for j in 0..r {
                let lhs: u64 = (0..r).map(|k| cd.mult[i][j][k] * cd.class_sizes[k] as u64).sum();
                assert_eq!(lhs, (cd.class_sizes[i] * cd.class_sizes[j]) as u64);
            }
        }
    }

    #[test]
    fn z2_table() {
        let t = character_table(&corpus::cyclic(2)).unwrap();
        let f = t.field();
        let ints: Vec<Vec<i64>> = t
            .characters
            .iter()
            .map(|row| row.iter().map(|v| f.as_integer(v).unwrap()).collect())
            .collect();
        assert_eq!(ints, vec![vec![1, 1], vec![1, -1]]);
    }

    #[test]
    fn s3_degrees() {
        let t = character_table(&corpus::dihedral(3)).unwrap();
        assert_eq!(t.degrees, vec![1, 1, 2]);
        assert_eq!(t.len(), 3);
    }

    #[test]
    fn a5_table_is_exact() {
        let t = character_table(&corpus::alternating5()).unwrap();
        assert_eq!(t.degrees, vec![1, 3, 3, 4, 5]);
        // the two degree-3 characters take the golden-ratio values
        let f = t.field();
        let irrational = t.characters[1].iter().filter(|v| f.as_integer(v).is_none()).count();
        assert_eq!(irrational, 2);
    }

    #[test]
    fn z4_negation_fixes_two_characters() {
        let g = corpus::cyclic(4);
        let t = character_table(&g).unwrap();
        let neg = Automorphism::new(&g, vec![0, 3, 2, 1]).unwrap();
        let (count, dual) = fixed_irreducibles(&t, &neg);
        assert_eq!(count, 2);
        assert_eq!(dual.fixed_classes, 2);
        let rep = tbft_check_with(&g, &t, &neg);
        assert_eq!(rep.reidemeister_number, 2);
        assert!(rep.equal);
    }

    #[test]
    fn z3_doubling_tbft() {
        let g = corpus::cyclic(3);
        let phi = Automorphism::new(&g, vec![0, 2, 1]).unwrap();
        let rep = tbft_check(&g, &phi).unwrap();
        assert_eq!((rep.reidemeister_number, rep.fixed_characters), (1, 1));
    }

    #[test]
    fn inner_automorphisms_fix_every_character() {
        let g = corpus::dihedral(3);
        let t = character_table(&g).unwrap();
        for x in g.elements() {
            let rep = tbft_check_with(&g, &t, &Automorphism::inner(&g, x));
            assert_eq!(rep.reidemeister_number, 3);
            assert_eq!(rep.fixed_characters, 3);
        }
        let (count, _) = fixed_irreducibles(&t, &Automorphism::identity(&g));
        assert_eq!(count, t.len());
    }

    #[test]
    fn every_corpus_table_certifies() {
        for g in corpus::Corpus::bundled().groups() {
            let t = character_table(g).unwrap_or_else(|e| panic!("{:?}: {e}", g.name()));
            assert_eq!(t.len(), conjugacy_data(g).count());
            assert_eq!(t.degrees[0], 1);
            assert!(t.characters[0].iter().all(|v| t.field().as_integer(v) == Some(1)));
        }
    }
}
