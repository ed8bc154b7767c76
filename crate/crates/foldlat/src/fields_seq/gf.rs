//! GF(p^k) with elements encoded as integers: the element Σ c_i x^i has
//! code Σ c_i p^i.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest field order that gets log/antilog tables.
pub const TABLE_LIMIT: u64 = 1 << 20;

/// Largest field order supported at all (codes must fit in u32 arithmetic comfortably).
pub const FIELD_LIMIT: u64 = 1 << 32;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// (p, k) with q = p^k, if q is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut r, mut k) = (q, 0u32);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
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

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// A finite field with a primitive modulus, so that x generates the
/// multiplicative group.
pub struct FiniteField {
    p: u64,
    k: u32,
    q: u64,
    /// Lower coefficients c_0..c_{k-1} of the monic modulus.
    low: Vec<u64>,
    tables: Option<Tables>,
    baby: OnceLock<(u64, HashMap<u64, u64>)>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {}", self.p, self.k, self.modulus_string())
    }
}

impl Clone for FiniteField {
    fn clone(&self) -> Self {
        FiniteField::from_low(self.p, self.k, self.low.clone())
    }
}

impl FiniteField {
    /// GF(p^k) with the lexicographically least primitive modulus.
    pub fn new(p: u64, k: u32) -> Result<FiniteField> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let q = checked_order(p, k)?;
        // Candidate lower-coefficient codes in increasing order; c_0 ≠ 0.
        for code in 1..q {
            let low = digits(code, p, k as usize);
            if low[0] == 0 {
                continue;
            }
            if order_of_x_is_full(p, k, &low) {
                return Ok(FiniteField::from_low(p, k, low));
            }
        }
        Err(Error::InternalInconsistency(format!("no primitive polynomial of degree {k} over GF({p})")))
    }

    /// GF(p^k) for a given monic modulus, coefficients listed high to low
    /// (leading 1 included).
    pub fn with_modulus(p: u64, high_to_low: &[u64]) -> Result<FiniteField> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let text = high_to_low.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        if high_to_low.len() < 2 || high_to_low[0] != 1 || high_to_low.iter().any(|&c| c >= p) {
            return Err(Error::NotPrimitivePolynomial(text));
        }
        let k = (high_to_low.len() - 1) as u32;
        checked_order(p, k)?;
        let low: Vec<u64> = high_to_low[1..].iter().rev().copied().collect();
        if low[0] == 0 || !order_of_x_is_full(p, k, &low) {
            return Err(Error::NotPrimitivePolynomial(text));
        }
        Ok(FiniteField::from_low(p, k, low))
    }

    fn from_low(p: u64, k: u32, low: Vec<u64>) -> FiniteField {
        let q = p.pow(k);
        let mut f = FiniteField { p, k, q, low, tables: None, baby: OnceLock::new() };
        if q <= TABLE_LIMIT {
            let n = (q - 1) as usize;
            let mut exp = Vec::with_capacity(n);
            let mut log = vec![u32::MAX; q as usize];
            let mut a = 1u64;
            for i in 0..n {
                exp.push(a as u32);
                log[a as usize] = i as u32;
                a = f.mul_x(a);
            }
            f.tables = Some(Tables { exp, log });
        }
        f
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    /// Modulus coefficients high to low, leading 1 included.
    pub fn modulus(&self) -> Vec<u64> {
        let mut v = vec![1];
        v.extend(self.low.iter().rev());
        v
    }

    /// Modulus as a digit string high to low, e.g. "100101" for x^5 + x^2 + 1.
    pub fn modulus_string(&self) -> String {
        let m = self.modulus();
        if self.p < 10 {
            m.iter().map(|c| c.to_string()).collect()
        } else {
            m.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
        }
    }

    /// The primitive element α (the class of x).
    pub fn alpha(&self) -> u64 {
        self.exp(1)
    }

    pub fn coefficients(&self, a: u64) -> Vec<u64> {
        digits(a, self.p, self.k as usize)
    }

    pub fn from_coefficients(&self, c: &[u64]) -> u64 {
        c.iter().rev().fold(0, |acc, &d| acc * self.p + d % self.p)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b, mut out, mut w) = (a, b, 0u64, 1u64);
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * w;
            a /= self.p;
            b /= self.p;
            w *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u64) -> u64 {
        if self.p == 2 {
            return a;
        }
        let (mut a, mut out, mut w) = (a, 0u64, 1u64);
        while a > 0 {
            out += ((self.p - a % self.p) % self.p) * w;
            a /= self.p;
            w *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    /// a · x reduced by the modulus.
    fn mul_x(&self, a: u64) -> u64 {
        let top_w = self.q / self.p;
        let top = a / top_w;
        let shifted = (a % top_w) * self.p;
        if top == 0 {
            return shifted;
        }
        // x^k = -Σ c_i x^i
        let red: Vec<u64> = self.low.iter().map(|&c| (c * top) % self.p).collect();
        self.sub(shifted, self.from_coefficients(&red))
    }

    fn mul_scalar(&self, a: u64, s: u64) -> u64 {
        let c: Vec<u64> = self.coefficients(a).into_iter().map(|d| d * s % self.p).collect();
        self.from_coefficients(&c)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        if let Some(t) = &self.tables {
            let n = self.q - 1;
            let i = (t.log[a as usize] as u64 + t.log[b as usize] as u64) % n;
            return t.exp[i as usize] as u64;
        }
        self.mul_poly(a, b)
    }

    fn mul_poly(&self, a: u64, b: u64) -> u64 {
        let bc = self.coefficients(b);
        let mut acc = 0u64;
        for &d in bc.iter().rev() {
            acc = self.mul_x(acc);
            if d != 0 {
                acc = self.add(acc, self.mul_scalar(a, d));
            }
        }
        acc
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        if a == 0 {
            return u64::from(e == 0);
        }
        if let Some(l) = self.log(a) {
            let n = self.q - 1;
            let i = ((l as u128 * (e % n) as u128) % n as u128) as u64;
            return self.exp(i);
        }
        unreachable!("nonzero element without a logarithm")
    }

    fn pow_poly(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul_poly(r, a);
            }
            a = self.mul_poly(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        let l = self.log(a)?;
        Some(self.exp((self.q - 1 - l) % (self.q - 1)))
    }

    /// α^i.
    pub fn exp(&self, i: u64) -> u64 {
        let n = self.q - 1;
        if let Some(t) = &self.tables {
            return t.exp[(i % n) as usize] as u64;
        }
        let x = if self.k == 1 { self.p - self.low[0] % self.p } else { self.p };
        self.pow_poly(x % self.q, i % n)
    }

    /// Discrete log base α; None for zero.
    pub fn log(&self, a: u64) -> Option<u64> {
        if a == 0 || a >= self.q {
            return None;
        }
        if let Some(t) = &self.tables {
            return Some(t.log[a as usize] as u64);
        }
        // Baby-step giant-step with a cached baby table.
        let n = self.q - 1;
        let (m, baby) = self.baby.get_or_init(|| {
            let m = (n as f64).sqrt().ceil() as u64;
            let mut tbl = HashMap::with_capacity(m as usize);
            let mut cur = 1u64;
            for j in 0..m {
                tbl.entry(cur).or_insert(j);
                cur = self.mul_poly(cur, self.exp(1));
            }
            (m, tbl)
        });
        let giant = self.exp(n - (*m % n));
        let mut g = a;
        for i in 0..=*m {
            if let Some(&j) = baby.get(&g) {
                return Some((i * m + j) % n);
            }
            g = self.mul_poly(g, giant);
        }
        None
    }

    /// Nonzero elements in order α^0, α^1, ….
    pub fn powers(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.q - 1).map(move |i| self.exp(i))
    }
}

fn checked_order(p: u64, k: u32) -> Result<u64> {
    if k == 0 {
        return Err(Error::ParamOutOfRange("field degree must be at least 1".into()));
    }
    match p.checked_pow(k) {
        Some(q) if q <= FIELD_LIMIT => Ok(q),
        _ => Err(Error::FieldTooLarge(p.saturating_pow(k))),
    }
}

fn digits(mut a: u64, p: u64, k: usize) -> Vec<u64> {
    let mut v = vec![0; k];
    for d in v.iter_mut() {
        *d = a % p;
        a /= p;
    }
    v
}

fn order_of_x_is_full(p: u64, k: u32, low: &[u64]) -> bool {
    let probe = FiniteField { p, k, q: p.pow(k), low: low.to_vec(), tables: None, baby: OnceLock::new() };
    let n = probe.q - 1;
    let x = if k == 1 { (p - low[0]) % p } else { p };
    if x == 0 || probe.pow_poly(x, n) != 1 {
        return false;
    }
    prime_factors(n).into_iter().all(|r| probe.pow_poly(x, n / r) != 1)
}

/// GF(p^k) with the canonical modulus.
pub fn gf_build(p: u64, k: u32) -> Result<FiniteField> {
    FiniteField::new(p, k)
}
