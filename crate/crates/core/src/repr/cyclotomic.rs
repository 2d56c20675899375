//! Exact arithmetic in the cyclotomic ring `Z[zeta_n]`.
//!
//! Values are coefficient vectors in the power basis `1, zeta, ...,
//! zeta^(phi(n)-1)`, obtained by reducing modulo the cyclotomic polynomial.
//! The representation is canonical, so equality is coefficient-wise.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cyclotomic(pub Vec<i64>);

#[derive(Clone, Debug)]
pub struct CyclotomicField {
    n: usize,
    /// Monic cyclotomic polynomial, lowest degree first.
    modulus: Vec<i64>,
    /// `zeta^l` reduced, for `l` in `0..n`.
    powers: Vec<Vec<i64>>,
}

/// `Phi_n` with coefficients lowest degree first.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i64> {
    assert!(n >= 1);
    // x^n - 1
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = exact_div(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    assert_eq!(den[dn], 1, "divisor must be monic");
    let qlen = rem.len() - dn;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        q[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "division is not exact");
    q
}

impl CyclotomicField {
    pub fn new(n: usize) -> Self {
        let modulus = cyclotomic_polynomial(n);
        let deg = modulus.len() - 1;
        let mut powers = Vec::with_capacity(n);
        let mut cur = vec![0i64; deg];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by x, then fold the x^deg term back down
            let top = cur[deg - 1];
            for i in (1..deg).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            for (c, &m) in cur.iter_mut().zip(&modulus) {
                *c -= top * m;
            }
        }
        CyclotomicField { n, modulus, powers }
    }

    /// Order of the root of unity.
    pub fn root_order(&self) -> usize {
        self.n
    }

    /// Dimension of the power basis, `phi(n)`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn zero(&self) -> Cyclotomic {
        Cyclotomic(vec![0; self.degree()])
    }

    pub fn integer(&self, v: i64) -> Cyclotomic {
        let mut c = vec![0; self.degree()];
        c[0] = v;
        Cyclotomic(c)
    }

    /// `zeta^l` for any integer `l`.
    pub fn zeta_pow(&self, l: i64) -> Cyclotomic {
        Cyclotomic(self.powers[l.rem_euclid(self.n as i64) as usize].clone())
    }

    /// `sum_l c_l zeta^l` for exponents in `0..n`.
    pub fn from_exponents(&self, coeffs: &[i64]) -> Cyclotomic {
        let mut out = vec![0i64; self.degree()];
        for (l, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                for (o, &p) in out.iter_mut().zip(&self.powers[l % self.n]) {
                    *o += c * p;
                }
            }
        }
        Cyclotomic(out)
    }

    pub fn add(&self, a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
        Cyclotomic(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
        Cyclotomic(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn scale(&self, a: &Cyclotomic, k: i64) -> Cyclotomic {
        Cyclotomic(a.0.iter().map(|x| x * k).collect())
    }

    pub fn mul(&self, a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
        let deg = self.degree();
        let mut full = vec![0i64; 2 * deg - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                full[i + j] += x * y;
            }
        }
        self.from_exponents(&full)
    }

    /// Image under `zeta -> zeta^k`, `gcd(k, n) = 1`.
    pub fn galois(&self, a: &Cyclotomic, k: i64) -> Cyclotomic {
        let mut full = vec![0i64; self.n];
        for (i, &c) in a.0.iter().enumerate() {
            full[(i as i64 * k).rem_euclid(self.n as i64) as usize] += c;
        }
        self.from_exponents(&full)
    }

    /// Complex conjugate, `zeta -> zeta^-1`.
    pub fn conj(&self, a: &Cyclotomic) -> Cyclotomic {
        self.galois(a, -1)
    }

    /// The integer `v` if `a` is rational, otherwise `None`.
    pub fn as_integer(&self, a: &Cyclotomic) -> Option<i64> {
        a.0[1..].iter().all(|&c| c == 0).then(|| a.0[0])
    }

    /// Text form in powers of `z = exp(2 pi i / n)`, such as `-1 - 2z^2`.
    pub fn format(&self, a: &Cyclotomic) -> String {
        let mut out = String::new();
        for (l, &c) in a.0.iter().enumerate().filter(|(_, &c)| c != 0) {
            let mag = c.unsigned_abs();
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            match (l, mag) {
                (0, _) => out.push_str(&mag.to_string()),
                (_, 1) => {}
                _ => out.push_str(&mag.to_string()),
            }
            match l {
                0 => {}
                1 => out.push('z'),
                _ => out.push_str(&format!("z^{l}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Numerical value, for display only.
    pub fn to_complex(&self, a: &Cyclotomic) -> (f64, f64) {
        let step = 2.0 * std::f64::consts::PI / self.n as f64;
        a.0.iter().enumerate().fold((0.0, 0.0), |(re, im), (l, &c)| {
            let t = step * l as f64;
            (re + c as f64 * t.cos(), im + c as f64 * t.sin())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting() {
        let f = CyclotomicField::new(3);
        assert_eq!(f.format(&f.integer(-2)), "-2");
        assert_eq!(f.format(&f.zero()), "0");
        assert_eq!(f.format(&f.zeta_pow(1)), "z");
        // z^2 = -1 - z
        assert_eq!(f.format(&f.zeta_pow(2)), "-1 - z");
        let f = CyclotomicField::new(8);
        assert_eq!(f.format(&f.scale(&f.zeta_pow(3), 2)), "2z^3");
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(30).len() - 1, 8);
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for n in 2..=30 {
            let f = CyclotomicField::new(n);
            let s = f.from_exponents(&vec![1; n]);
            assert_eq!(s, f.zero(), "n = {n}");
            assert_eq!(f.zeta_pow(n as i64), f.integer(1));
        }
    }

    #[test]
    fn multiplication_is_exponent_addition() {
        let f = CyclotomicField::new(12);
        for a in 0..12 {
            for b in 0..12 {
                assert_eq!(f.mul(&f.zeta_pow(a), &f.zeta_pow(b)), f.zeta_pow(a + b));
            }
        }
    }

    #[test]
    fn conjugation_and_norms() {
        let f = CyclotomicField::new(4);
        let i = f.zeta_pow(1);
        assert_eq!(f.conj(&i), f.zeta_pow(3));
        assert_eq!(f.mul(&i, &f.conj(&i)), f.integer(1));
        let f = CyclotomicField::new(1);
        assert_eq!(f.degree(), 1);
        assert_eq!(f.conj(&f.integer(5)), f.integer(5));
    }
}
