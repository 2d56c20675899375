//! Integer matrices acting on `Z^k`: orders, Smith normal form, and the
//! Reidemeister classes `x ~ x + (I - d) y` of an automorphism `d` of `Z^k`,
//! which are the cosets of `im(I - d)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::LatticeError;

/// Default bound for [`matrix_order`]; covers every finite order in
/// `GL_k(Z)` for `k <= 4`.
pub const DEFAULT_MAX_ORDER: usize = 24;

/// Square integer matrix with arbitrary-precision entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    k: usize,
    entries: Vec<Vec<BigInt>>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum WireEntry {
    Small(i64),
    Big(String),
}

#[derive(Serialize, Deserialize)]
struct WireMatrix {
    k: usize,
    entries: Vec<Vec<WireEntry>>,
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(wire_entry).collect())
            .collect();
        WireMatrix { k: self.k, entries }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = WireMatrix::deserialize(d)?;
        let mut entries = Vec::with_capacity(wire.entries.len());
        for row in wire.entries {
            let mut out = Vec::with_capacity(row.len());
            for e in row {
                out.push(match e {
                    WireEntry::Small(x) => BigInt::from(x),
                    WireEntry::Big(s) => s.parse().map_err(D::Error::custom)?,
                });
            }
            entries.push(out);
        }
        IntMatrix::new(entries)
            .and_then(|m| {
                if m.k == wire.k {
                    Ok(m)
                } else {
                    Err(LatticeError::DimensionMismatch {
                        reason: format!("k = {} but entries are {}x{}", wire.k, m.k, m.k),
                    })
                }
            })
            .map_err(D::Error::custom)
    }
}

impl IntMatrix {
    pub fn new(entries: Vec<Vec<BigInt>>) -> Result<Self, LatticeError> {
        let k = entries.len();
        if let Some(row) = entries.iter().find(|r| r.len() != k) {
            return Err(LatticeError::DimensionMismatch {
                reason: format!("expected {k} columns, found a row of length {}", row.len()),
            });
        }
        Ok(IntMatrix { k, entries })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self, LatticeError> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Self::zero(k);
        for i in 0..k {
            m.entries[i][i] = BigInt::one();
        }
        m
    }

    pub fn zero(k: usize) -> Self {
        IntMatrix {
            k,
            entries: vec![vec![BigInt::zero(); k]; k],
        }
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.entries
    }

    /// Entries as `i64`, or `None` if any entry overflows.
    pub fn to_i64(&self) -> Option<Vec<Vec<i64>>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|x| x.to_i64()).collect())
            .collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.k, other.k);
        let k = self.k;
        let mut out = Self::zero(k);
        for i in 0..k {
            for l in 0..k {
                if self.entries[i][l].is_zero() {
                    continue;
                }
                for j in 0..k {
                    out.entries[i][j] += &self.entries[i][l] * &other.entries[l][j];
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.k, other.k);
        IntMatrix {
            k: self.k,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
                .collect(),
        }
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.entries
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `I - self`.
    pub fn identity_minus(&self) -> IntMatrix {
        Self::identity(self.k).sub(self)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.k)
    }

    /// Fraction-free Gaussian elimination (Bareiss).
    pub fn determinant(&self) -> BigInt {
        let k = self.k;
        if k == 0 {
            return BigInt::one();
        }
        let mut m = self.entries.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for c in 0..k {
            let Some(p) = (c..k).find(|&r| !m[r][c].is_zero()) else {
                return BigInt::zero();
            };
            if p != c {
                m.swap(p, c);
                sign = -sign;
            }
            for r in c + 1..k {
                for j in c + 1..k {
                    let v = &m[r][j] * &m[c][c] - &m[r][c] * &m[c][j];
                    m[r][j] = v / &prev;
                }
                m[r][c] = BigInt::zero();
            }
            prev = m[c][c].clone();
        }
        sign * &m[k - 1][k - 1]
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> IntMatrix {
        IntMatrix {
            k: self.k - 1,
            entries: self
                .entries
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip_row)
                .map(|(_, row)| {
                    row.iter()
                        .enumerate()
                        .filter(|(j, _)| *j != skip_col)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect(),
        }
    }

    /// Classical adjugate, `adj(A) A = det(A) I`.
    pub fn adjugate(&self) -> IntMatrix {
        let k = self.k;
        if k == 1 {
            return Self::identity(1);
        }
        let mut out = Self::zero(k);
        for i in 0..k {
            for j in 0..k {
                let c = self.minor(i, j).determinant();
                out.entries[j][i] = if (i + j) % 2 == 0 { c } else { -c };
            }
        }
        out
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs().is_one()
    }

    /// Inverse of a unimodular matrix.
    pub fn inverse_unimodular(&self) -> Result<IntMatrix, LatticeError> {
        let det = self.determinant();
        if !det.abs().is_one() {
            return Err(LatticeError::NotUnimodular { det: det.to_string() });
        }
        let mut adj = self.adjugate();
        if det.is_negative() {
            for row in adj.entries.iter_mut() {
                for x in row.iter_mut() {
                    *x = -&*x;
                }
            }
        }
        Ok(adj)
    }
}

/// Least `s >= 1` with `d^s = I`.
pub fn matrix_order(d: &IntMatrix, max_order: usize) -> Result<usize, LatticeError> {
    if !d.is_unimodular() {
        return Err(LatticeError::NotUnimodular {
            det: d.determinant().to_string(),
        });
    }
    let mut p = d.clone();
    for s in 1..=max_order {
        if p.is_identity() {
            return Ok(s);
        }
        p = p.mul(d);
    }
    Err(LatticeError::NotFiniteOrder { max_order })
}

/// `U A V = diag(d_1, ..., d_k)` with `d_1 | d_2 | ... | d_k`, `d_i >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub v: IntMatrix,
    #[serde(serialize_with = "serialize_bigints")]
    pub diag: Vec<BigInt>,
}

fn wire_entry(v: &BigInt) -> WireEntry {
    match v.to_i64() {
        Some(x) => WireEntry::Small(x),
        None => WireEntry::Big(v.to_string()),
    }
}

fn serialize_bigints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    v.iter().map(wire_entry).collect::<Vec<_>>().serialize(s)
}

impl SmithDecomposition {
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zero(self.diag.len());
        for (i, d) in self.diag.iter().enumerate() {
            m.entries[i][i] = d.clone();
        }
        m
    }

    /// Checks the defining identity, unimodularity and the divisibility chain.
    pub fn verify(&self, a: &IntMatrix) -> bool {
        let chain = self.diag.windows(2).all(|w| {
            if w[0].is_zero() {
                w[1].is_zero()
            } else {
                (&w[1] % &w[0]).is_zero()
            }
        });
        chain
            && self.diag.iter().all(|x| !x.is_negative())
            && self.u.is_unimodular()
            && self.v.is_unimodular()
            && self.u.mul(a).mul(&self.v) == self.diagonal_matrix()
    }

    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let k = a.k;
    let mut m = a.entries.clone();
    let mut u = IntMatrix::identity(k).entries;
    let mut v = IntMatrix::identity(k).entries;

    for t in 0..k {
        loop {
            // smallest non-zero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..k {
                for j in t..k {
                    if !m[i][j].is_zero()
                        && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            if pi != t {
                m.swap(pi, t);
                u.swap(pi, t);
            }
            if pj != t {
                for row in m.iter_mut() {
                    row.swap(pj, t);
                }
                for row in v.iter_mut() {
                    row.swap(pj, t);
                }
            }

            let mut clean = true;
            for i in t + 1..k {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                for j in 0..k {
                    let s = &q * &m[t][j];
                    m[i][j] -= s;
                    let s = &q * &u[t][j];
                    u[i][j] -= s;
                }
                if !m[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..k {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                for i in 0..k {
                    let s = &q * &m[i][t];
                    m[i][j] -= s;
                    let s = &q * &v[i][t];
                    v[i][j] -= s;
                }
                if !m[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }

            // the pivot must divide the whole trailing block
            let bad = (t + 1..k).find(|&i| (t + 1..k).any(|j| !(&m[i][j] % &m[t][t]).is_zero()));
            match bad {
                Some(i) => {
                    for j in 0..k {
                        let s = m[i][j].clone();
                        m[t][j] += s;
                        let s = u[i][j].clone();
                        u[t][j] += s;
                    }
                }
                None => break,
            }
        }
        if m[t][t].is_negative() {
            for j in 0..k {
                m[t][j] = -&m[t][j];
                u[t][j] = -&u[t][j];
            }
        }
    }

    SmithDecomposition {
        u: IntMatrix { k, entries: u },
        v: IntMatrix { k, entries: v },
        diag: (0..k).map(|i| m[i][i].clone()).collect(),
    }
}

/// `Z^k / im(I - d)` when finite, as `⊕ Z/d_i` with the trivial factors
/// dropped. Residues are canonical in `[0, d_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteAbelianQuotient {
    pub invariant_factors: Vec<u64>,
    /// Row `i` of `U` reduced modulo `d_i`, for the kept factors.
    projection_rows: Vec<Vec<u64>>,
    /// Columns of `U^-1` for the kept factors.
    lift_columns: Vec<Vec<i64>>,
    pub order: u64,
}

impl FiniteAbelianQuotient {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn project(&self, x: &[i64]) -> Vec<u64> {
        self.projection_rows
            .iter()
            .zip(&self.invariant_factors)
            .map(|(row, &d)| {
                let s: i128 = row.iter().zip(x).map(|(&a, &b)| a as i128 * b as i128).sum();
                s.rem_euclid(d as i128) as u64
            })
            .collect()
    }

    /// A point of `Z^k` whose projection is `a`.
    pub fn lift(&self, a: &[u64]) -> Vec<i64> {
        let k = self.lift_columns.first().map_or(0, Vec::len);
        let mut z = vec![0i64; k];
        for (col, &c) in self.lift_columns.iter().zip(a) {
            for (zi, &x) in z.iter_mut().zip(col) {
                *zi += x * c as i64;
            }
        }
        z
    }

    /// Every element of the quotient in lexicographic residue order.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for &d in &self.invariant_factors {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..d).map(move |c| {
                        let mut p = prefix.clone();
                        p.push(c);
                        p
                    })
                })
                .collect();
        }
        out
    }

    pub fn exponent(&self) -> u64 {
        self.invariant_factors.iter().fold(1, |a, &b| num_integer::lcm(a, b))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReidemeisterCount {
    Finite(u64),
    Infinite,
}

impl ReidemeisterCount {
    pub fn finite(self) -> Option<u64> {
        match self {
            ReidemeisterCount::Finite(n) => Some(n),
            ReidemeisterCount::Infinite => None,
        }
    }
}

impl std::fmt::Display for ReidemeisterCount {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ReidemeisterCount::Finite(n) => write!(f, "{n}"),
            ReidemeisterCount::Infinite => write!(f, "infinite"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ZkReidemeister {
    pub count: ReidemeisterCount,
    pub quotient: Option<FiniteAbelianQuotient>,
    /// `F(d) = ker(I - d)` is `{0}`.
    pub fixed_trivial: bool,
    /// Smith form of `I - d`.
    pub smith: SmithDecomposition,
}

impl ZkReidemeister {
    /// `x - y in im(I - d)`, decided from the Smith form.
    pub fn equivalent(&self, x: &[i64], y: &[i64]) -> bool {
        let diff: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| BigInt::from(a - b)).collect();
        let w = self.smith.u.apply(&diff);
        w.iter().zip(&self.smith.diag).all(|(wi, di)| {
            if di.is_zero() {
                wi.is_zero()
            } else {
                (wi % di).is_zero()
            }
        })
    }
}

pub fn reidemeister_zk(d: &IntMatrix) -> Result<ZkReidemeister, LatticeError> {
    if !d.is_unimodular() {
        return Err(LatticeError::NotUnimodular {
            det: d.determinant().to_string(),
        });
    }
    let a = d.identity_minus();
    let smith = smith_normal_form(&a);
    let finite = smith.diag.iter().all(|x| !x.is_zero());
    if !finite {
        return Ok(ZkReidemeister {
            count: ReidemeisterCount::Infinite,
            quotient: None,
            fixed_trivial: false,
            smith,
        });
    }
    let too_large = || LatticeError::DimensionMismatch {
        reason: "cokernel does not fit in 64 bits".into(),
    };
    let u_inv = smith.u.inverse_unimodular()?;
    let mut invariant_factors = Vec::new();
    let mut projection_rows = Vec::new();
    let mut lift_columns = Vec::new();
    for (i, di) in smith.diag.iter().enumerate() {
        if di.is_one() {
            continue;
        }
        let dv = di.to_u64().ok_or_else(too_large)?;
        invariant_factors.push(dv);
        projection_rows.push(
            smith.u.rows()[i]
                .iter()
                .map(|x| x.mod_floor(di).to_u64().unwrap())
                .collect(),
        );
        lift_columns.push(
            (0..a.dim())
                .map(|r| u_inv.get(r, i).to_i64().ok_or_else(too_large))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    let order = invariant_factors
        .iter()
        .try_fold(1u64, |acc, &x| acc.checked_mul(x))
        .ok_or_else(too_large)?;
    Ok(ZkReidemeister {
        count: ReidemeisterCount::Finite(order),
        quotient: Some(FiniteAbelianQuotient {
            invariant_factors,
            projection_rows,
            lift_columns,
            order,
        }),
        fixed_trivial: true,
        smith,
    })
}

/// Number of characters of `A` fixed by the map `d` induces on `A`.
///
/// A character `c` of `⊕ Z/d_i` is fixed iff `c(d a - a) = 0` on each
/// generator `a` of `A`; the count is found by running over all of `A^`.
pub fn dual_fixed_count_abelian(q: &FiniteAbelianQuotient, d: &IntMatrix) -> u64 {
    let d64 = d.to_i64().expect("automorphism entries fit in i64");
    let r = q.rank();
    // (d a_j - a_j) in quotient coordinates, for the generators a_j
    let moved: Vec<Vec<u64>> = (0..r)
        .map(|j| {
            let mut unit = vec![0u64; r];
            unit[j] = 1;
            let x = q.lift(&unit);
            let dx: Vec<i64> = d64
                .iter()
                .map(|row| row.iter().zip(&x).map(|(a, b)| a * b).sum())
                .collect();
            let diff: Vec<i64> = dx.iter().zip(&x).map(|(a, b)| a - b).collect();
            q.project(&diff)
        })
        .collect();
    let exp = q.exponent();
    q.elements()
        .iter()
        .filter(|c| {
            moved.iter().all(|delta| {
                let s: u128 = (0..r)
                    .map(|i| c[i] as u128 * delta[i] as u128 * (exp / q.invariant_factors[i]) as u128)
                    .sum();
                s % exp as u128 == 0
            })
        })
        .count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64(rows).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(matrix_order(&IntMatrix::identity(3), 24), Ok(1));
        assert_eq!(matrix_order(&m(&[vec![-1]]), 24), Ok(2));
        assert_eq!(matrix_order(&m(&[vec![0, -1], vec![1, -1]]), 24), Ok(3));
        assert_eq!(
            matrix_order(&m(&[vec![2, 1], vec![1, 1]]), 24),
            Err(LatticeError::NotFiniteOrder { max_order: 24 })
        );
        assert!(matches!(
            matrix_order(&m(&[vec![2]]), 24),
            Err(LatticeError::NotUnimodular { .. })
        ));
    }

    #[test]
    fn smith_examples() {
        let z = smith_normal_form(&IntMatrix::zero(3));
        assert_eq!(z.diag, vec![BigInt::zero(); 3]);
        assert!(z.u.is_identity() && z.v.is_identity());

        let s = smith_normal_form(&m(&[vec![2]]));
        assert_eq!(s.diag, vec![BigInt::from(2)]);

        let a = m(&[vec![1, 1], vec![-1, 2]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.diag, vec![BigInt::from(1), BigInt::from(3)]);
        assert!(s.verify(&a));
    }

    #[test]
    fn smith_divisibility_fixup() {
        // diag(2, 3) is diagonal but not in Smith form
        let a = m(&[vec![2, 0], vec![0, 3]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.diag, vec![BigInt::from(1), BigInt::from(6)]);
        assert!(s.verify(&a));
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[vec![2, 3, 1], vec![1, 2, 0], vec![0, 0, 1]]);
        assert_eq!(a.determinant(), BigInt::from(1));
        let inv = a.inverse_unimodular().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert_eq!(m(&[vec![0, 1], vec![1, 0]]).determinant(), BigInt::from(-1));
    }

    #[test]
    fn zk_identity_is_infinite() {
        let r = reidemeister_zk(&IntMatrix::identity(2)).unwrap();
        assert_eq!(r.count, ReidemeisterCount::Infinite);
        assert!(r.quotient.is_none());
        assert!(!r.fixed_trivial);
    }

    #[test]
    fn zk_negation() {
        let d = m(&[vec![-1]]);
        let r = reidemeister_zk(&d).unwrap();
        assert_eq!(r.count, ReidemeisterCount::Finite(2));
        let q = r.quotient.as_ref().unwrap();
        assert_eq!(q.invariant_factors, vec![2]);
        for x in -10i64..=10 {
            assert_eq!(q.project(&[x]), vec![x.rem_euclid(2) as u64]);
        }
        assert_eq!(dual_fixed_count_abelian(q, &d), 2);
    }

    #[test]
    fn zk_order_three_rotation() {
        let d = m(&[vec![0, -1], vec![1, -1]]);
        let r = reidemeister_zk(&d).unwrap();
        assert_eq!(r.count, ReidemeisterCount::Finite(3));
        let q = r.quotient.as_ref().unwrap();
        assert_eq!(dual_fixed_count_abelian(q, &d), 3);
        for a in q.elements() {
            assert_eq!(q.project(&q.lift(&a)), a);
        }
    }

    #[test]
    fn trivial_quotient() {
        // det(I - d) = -1 for this hyperbolic matrix
        let d = m(&[vec![2, 1], vec![1, 1]]);
        let r = reidemeister_zk(&d).unwrap();
        assert_eq!(r.count, ReidemeisterCount::Finite(1));
        let q = r.quotient.unwrap();
        assert_eq!(q.rank(), 0);
        assert_eq!(dual_fixed_count_abelian(&q, &d), 1);
    }

    #[test]
    fn wire_format() {
        let a = m(&[vec![1, -2], vec![3, 4]]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"k":2,"entries":[[1,-2],[3,4]]}"#);
        let back: IntMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<IntMatrix>(r#"{"k":3,"entries":[[1]]}"#).is_err());
    }
}
