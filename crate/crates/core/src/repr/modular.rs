//! Character values modulo a prime, by splitting `F_p^r` into common
//! eigenspaces of the class multiplication matrices.

use super::ConjugacyClassData;
use crate::error::ReprError;
use crate::group::FiniteGroup;

pub(crate) struct ModularTable {
    pub prime: u64,
    /// Primitive `exp(G)`-th root of unity in `F_p`.
    pub root: u64,
    pub degrees: Vec<u64>,
    /// `values[a][j] = chi_a(rep_j) mod p`.
    pub values: Vec<Vec<u64>>,
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest prime `p = 1 mod e` with `p^2 > 4 |G|`.
fn choose_prime(exponent: u64, order: u64) -> u64 {
    let mut p = exponent + 1;
    while !(is_prime(p) && p * p > 4 * order) {
        p += exponent;
    }
    p
}

fn primitive_root(p: u64) -> u64 {
    let factors = prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .unwrap_or(1)
}

/// Basis of `{ c : m c = 0 }` for an `rows x cols` matrix over `F_p`.
fn nullspace(mut m: Vec<Vec<u64>>, cols: usize, p: u64) -> Vec<Vec<u64>> {
    let rows = m.len();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for k in 0..cols {
                    m[i][k] = (m[i][k] + p - mul_mod(f, m[r][k], p)) % p;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; cols];
            v[fc] = 1;
            for (i, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = (p - m[i][fc]) % p;
            }
            v
        })
        .collect()
}

impl ModularTable {
    pub fn compute(
        group: &FiniteGroup,
        classes: &ConjugacyClassData,
        exponent: usize,
    ) -> Result<Self, ReprError> {
        let fail = |reason: String| Err(ReprError::ComputationFailed { reason });
        let n = group.order() as u64;
        let p = choose_prime(exponent as u64, n);
        let root = pow_mod(primitive_root(p), (p - 1) / exponent as u64, p);
        let r = classes.count();

        let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r)
            .map(|i| {
                let mut v = vec![0u64; r];
                v[i] = 1;
                v
            })
            .collect()];
        for i in 0..r {
            if spaces.iter().all(|s| s.len() == 1) {
                break;
            }
            let m: Vec<Vec<u64>> = (0..r)
                .map(|j| (0..r).map(|k| classes.mult[i][j][k] % p).collect())
                .collect();
            let mut next = Vec::new();
            for basis in spaces {
                let d = basis.len();
                if d == 1 {
                    next.push(basis);
                    continue;
                }
                // columns of `applied` are M_i b for the basis vectors b
                let applied: Vec<Vec<u64>> = (0..r)
                    .map(|row| {
                        basis
                            .iter()
                            .map(|b| (0..r).fold(0, |acc, k| (acc + mul_mod(m[row][k], b[k], p)) % p))
                            .collect()
                    })
                    .collect();
                let mut found = 0;
                for lambda in 0..p {
                    let shifted: Vec<Vec<u64>> = (0..r)
                        .map(|row| {
                            (0..d)
                                .map(|s| (applied[row][s] + p - mul_mod(lambda, basis[s][row], p)) % p)
                                .collect()
                        })
                        .collect();
                    let kernel = nullspace(shifted, d, p);
                    if kernel.is_empty() {
                        continue;
                    }
                    found += kernel.len();
                    let sub: Vec<Vec<u64>> = kernel
                        .iter()
                        .map(|c| {
                            (0..r)
                                .map(|k| (0..d).fold(0, |acc, s| (acc + mul_mod(c[s], basis[s][k], p)) % p))
                                .collect()
                        })
                        .collect();
                    next.push(sub);
                    if found == d {
                        break;
                    }
                }
                if found != d {
                    return fail(format!("class matrix {i} is not diagonalizable mod {p}"));
                }
            }
            spaces = next;
        }
        if spaces.iter().any(|s| s.len() != 1) {
            return fail("common eigenspaces did not split into lines".into());
        }

        let id_class = classes.class_of[group.identity()];
        let inv_class = classes.inverse_classes(group);
        let mut degrees = Vec::with_capacity(r);
        let mut values = Vec::with_capacity(r);
        for space in spaces {
            let v = &space[0];
            if v[id_class] == 0 {
                return fail("eigenvector vanishes on the identity class".into());
            }
            let norm = inv_mod(v[id_class], p);
            let omega: Vec<u64> = v.iter().map(|&x| mul_mod(x, norm, p)).collect();
            let s = (0..r).fold(0, |acc, j| {
                let t = mul_mod(omega[j], omega[inv_class[j]], p);
                (acc + mul_mod(t, inv_mod(classes.class_sizes[j] as u64 % p, p), p)) % p
            });
            if s == 0 {
                return fail("degenerate central character".into());
            }
            let d2 = mul_mod(n % p, inv_mod(s, p), p);
            let Some(deg) = (1..=n).take_while(|d| d * d <= n).find(|d| d * d % p == d2) else {
                return fail(format!("no degree with square {d2} mod {p}"));
            };
            let chi = (0..r)
                .map(|j| {
                    mul_mod(mul_mod(omega[j], deg, p), inv_mod(classes.class_sizes[j] as u64 % p, p), p)
                })
                .collect();
            degrees.push(deg);
            values.push(chi);
        }
        Ok(ModularTable {
            prime: p,
            root,
            degrees,
            values,
        })
    }
}
