//! Finite fields GF(p^m) with q <= 2^16. Elements are canonical integers in
//! [0, q); the base-p digits of the integer are the coefficients of the
//! residue polynomial, digit i holding the coefficient of x^i.

use crate::error::{Error, Result};

pub const MAX_ORDER: u64 = 1 << 16;
const MAX_DEGREE: u32 = 6;

/// One field element, stored in its canonical integer encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Felt(pub u64);

impl std::fmt::Display for Felt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A concrete field GF(p^m). Immutable after construction; all element
/// operations are pure functions of (field, operands).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Field {
    p: u64,
    m: u32,
    q: u64,
    // m+1 coefficients, index i = coefficient of x^i, always monic.
    // For m = 1 this is the polynomial x and is never consulted.
    modulus: Vec<u64>,
}

impl std::fmt::Display for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.m == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{})", self.p, self.m)
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Plain polynomial arithmetic over GF(p), coefficient vectors indexed by degree.

fn poly_eval(p: u64, poly: &[u64], x: u64) -> u64 {
    let mut acc = 0u64;
    for &c in poly.iter().rev() {
        acc = (acc * x + c) % p;
    }
    acc
}

fn poly_divides(p: u64, div: &[u64], poly: &[u64]) -> bool {
    // div is monic. Reduce poly mod div and test for the zero remainder.
    let mut rem: Vec<u64> = poly.to_vec();
    let dd = div.len() - 1;
    while rem.len() > dd {
        let lead = *rem.last().unwrap() % p;
        let shift = rem.len() - 1 - dd;
        if lead != 0 {
            for (j, &dj) in div.iter().enumerate() {
                let idx = shift + j;
                rem[idx] = (rem[idx] + lead * (p - dj % p)) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c % p == 0)
}

fn poly_is_irreducible(p: u64, poly: &[u64]) -> bool {
    let deg = poly.len() - 1;
    match deg {
        0 => false,
        1 => true,
        2 | 3 => (0..p).all(|x| poly_eval(p, poly, x) != 0),
        _ => {
            // No monic factor of degree 1..=deg/2. Exhaustive trial is fine
            // at the orders this crate supports.
            for d in 1..=deg / 2 {
                let count = p.pow(d as u32);
                for t in 0..count {
                    let mut div = Vec::with_capacity(d + 1);
                    let mut v = t;
                    for _ in 0..d {
                        div.push(v % p);
                        v /= p;
                    }
                    div.push(1);
                    if poly_divides(p, &div, poly) {
                        return false;
                    }
                }
            }
            true
        }
    }
}

// First monic irreducible of degree m over GF(p) in canonical counter order.
// Deterministic, so it doubles as the built-in modulus table.
fn default_modulus(p: u64, m: u32) -> Vec<u64> {
    let count = p.pow(m);
    for t in 0..count {
        let mut poly = Vec::with_capacity(m as usize + 1);
        let mut v = t;
        for _ in 0..m {
            poly.push(v % p);
            v /= p;
        }
        poly.push(1);
        if poly_is_irreducible(p, &poly) {
            return poly;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over GF(p)")
}

impl Field {
    /// Build GF(p^m). The modulus may be omitted for m = 1 always and for
    /// p <= 13, m <= 4 where a built-in choice exists.
    pub fn new(p: u64, m: u32, modulus: Option<&[u64]>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 || m > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(m));
        }
        let q128 = (p as u128).pow(m);
        if q128 > MAX_ORDER as u128 {
            return Err(Error::FieldTooLarge { q: q128 });
        }
        let q = q128 as u64;
        let modulus = if m == 1 {
            if let Some(c) = modulus {
                validate_modulus(p, 1, c)?;
            }
            vec![0, 1]
        } else {
            match modulus {
                Some(c) => {
                    validate_modulus(p, m, c)?;
                    c.iter().map(|&x| x % p).collect()
                }
                None if p <= 13 && m <= 4 => default_modulus(p, m),
                None => return Err(Error::ModulusRequired { p, m }),
            }
        };
        Ok(Field { p, m, q, modulus })
    }

    /// The prime field GF(p).
    pub fn prime(p: u64) -> Result<Field> {
        Field::new(p, 1, None)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> Felt {
        Felt(0)
    }

    pub fn one(&self) -> Felt {
        Felt(1)
    }

    /// Validated element from its canonical integer.
    pub fn felt(&self, value: u64) -> Result<Felt> {
        if value < self.q {
            Ok(Felt(value))
        } else {
            Err(Error::ElementOutOfRange { value, q: self.q })
        }
    }

    /// All q elements in ascending canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Felt> {
        (0..self.q).map(Felt)
    }

    fn digits(&self, a: u64) -> [u64; MAX_DEGREE as usize] {
        let mut d = [0u64; MAX_DEGREE as usize];
        let mut v = a;
        for slot in d.iter_mut().take(self.m as usize) {
            *slot = v % self.p;
            v /= self.p;
        }
        d
    }

    fn pack_digits(&self, d: &[u64]) -> u64 {
        let mut v = 0u64;
        for i in (0..self.m as usize).rev() {
            v = v * self.p + d[i] % self.p;
        }
        v
    }

    pub fn add(&self, a: Felt, b: Felt) -> Felt {
        if self.m == 1 {
            return Felt((a.0 + b.0) % self.p);
        }
        let da = self.digits(a.0);
        let db = self.digits(b.0);
        let mut out = [0u64; MAX_DEGREE as usize];
        for i in 0..self.m as usize {
            out[i] = (da[i] + db[i]) % self.p;
        }
        Felt(self.pack_digits(&out))
    }

    pub fn neg(&self, a: Felt) -> Felt {
        if self.m == 1 {
            return Felt((self.p - a.0) % self.p);
        }
        let da = self.digits(a.0);
        let mut out = [0u64; MAX_DEGREE as usize];
        for i in 0..self.m as usize {
            out[i] = (self.p - da[i]) % self.p;
        }
        Felt(self.pack_digits(&out))
    }

    pub fn sub(&self, a: Felt, b: Felt) -> Felt {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Felt, b: Felt) -> Felt {
        if self.m == 1 {
            return Felt(a.0 * b.0 % self.p);
        }
        let m = self.m as usize;
        let da = self.digits(a.0);
        let db = self.digits(b.0);
        let mut buf = [0u64; 2 * MAX_DEGREE as usize];
        for i in 0..m {
            if da[i] == 0 {
                continue;
            }
            for j in 0..m {
                buf[i + j] += da[i] * db[j];
            }
        }
        for c in buf.iter_mut() {
            *c %= self.p;
        }
        // reduce modulo the monic modulus polynomial
        for i in (m..2 * m - 1).rev() {
            let c = buf[i];
            if c != 0 {
                for j in 0..m {
                    buf[i - m + j] = (buf[i - m + j] + c * (self.p - self.modulus[j])) % self.p;
                }
                buf[i] = 0;
            }
        }
        Felt(self.pack_digits(&buf))
    }

    /// Multiplicative inverse; fails on zero.
    pub fn inv(&self, a: Felt) -> Result<Felt> {
        if a.0 == 0 {
            return Err(Error::DivideByZero);
        }
        Ok(self.pow_unsigned(a, self.q - 2))
    }

    pub fn div(&self, a: Felt, b: Felt) -> Result<Felt> {
        Ok(self.mul(a, self.inv(b)?))
    }

    fn pow_unsigned(&self, a: Felt, mut e: u64) -> Felt {
        let mut base = a;
        let mut acc = Felt(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// a^e with e any integer. 0^0 = 1; negative exponents of zero fail.
    pub fn pow(&self, a: Felt, e: i64) -> Result<Felt> {
        if e >= 0 {
            Ok(self.pow_unsigned(a, e as u64))
        } else {
            let inv = self.inv(a)?;
            Ok(self.pow_unsigned(inv, e.unsigned_abs()))
        }
    }

    /// Embed an element of the prime field GF(p) into this field as a
    /// constant polynomial. The source must be prime with the same p.
    pub fn lift(&self, from: &Field, a: Felt) -> Result<Felt> {
        if from.m != 1 || from.p != self.p {
            return Err(Error::FieldMismatch);
        }
        debug_assert!(a.0 < from.q);
        Ok(a)
    }
}

fn validate_modulus(p: u64, m: u32, c: &[u64]) -> Result<()> {
    if c.len() != m as usize + 1 {
        return Err(Error::BadSpec(format!(
            "modulus needs {} coefficients, got {}",
            m + 1,
            c.len()
        )));
    }
    if c.iter().any(|&x| x >= p) {
        return Err(Error::BadSpec("modulus coefficient out of range".into()));
    }
    if c[m as usize] != 1 {
        return Err(Error::BadSpec("modulus must be monic".into()));
    }
    if m > 1 && !poly_is_irreducible(p, c) {
        return Err(Error::NotIrreducible { p });
    }
    Ok(())
}
