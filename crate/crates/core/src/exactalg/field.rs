//! Finite fields GF(p^e) with q = p^e < 2^63.
//!
//! Elements are encoded as a single integer in [0, q): for a prime field the
//! residue itself, for an extension the coefficient sequence (c0,...,c_{e-1})
//! of the polynomial representative written in base p, c0 least significant.
//! The encoding doubles as the global deterministic order on field elements.

use std::fmt;
use std::sync::Arc;

/// Errors from field construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArithError {
    NotPrime(u64),
    ReducibleModulus,
    BadModulus,
    OrderOverflow,
    DivisionByZero,
    FieldMismatch,
    ShapeMismatch,
}

impl fmt::Display for ArithError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithError::NotPrime(p) => write!(f, "{} is not prime", p),
            ArithError::ReducibleModulus => write!(f, "modulus polynomial is reducible"),
            ArithError::BadModulus => write!(f, "malformed modulus polynomial"),
            ArithError::OrderOverflow => write!(f, "field order does not fit in 63 bits"),
            ArithError::DivisionByZero => write!(f, "inverse of zero"),
            ArithError::FieldMismatch => write!(f, "operands belong to different fields"),
            ArithError::ShapeMismatch => write!(f, "dimension mismatch"),
        }
    }
}

impl std::error::Error for ArithError {}

/// An element of some GF(p^e), stored as its integer encoding.
///
/// Carries no field reference; all arithmetic goes through [`FieldSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(pub u64);

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Discrete log/antilog tables for small extension fields.
#[derive(Debug)]
struct LogTables {
    // exp[i] = g^i for a fixed generator g, i in 0..q-1
    exp: Vec<u64>,
    // log[x] defined for x in 1..q; log[0] is a dummy
    log: Vec<u32>,
}

const TABLE_LIMIT: u64 = 1 << 16;

/// Arithmetic context for GF(p^e).
#[derive(Debug, Clone)]
pub struct FieldSpec {
    p: u64,
    e: u32,
    q: u64,
    // ascending coefficients of the monic irreducible modulus, length e+1;
    // empty when e == 1
    modulus: Vec<u64>,
    tables: Option<Arc<LogTables>>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{})", self.p, self.e)
        }
    }
}

/// Deterministic Miller-Rabin, exact for all u64.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == small {
            return true;
        }
        if n % small == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut base: u64, mut exp: u64| {
        let mut acc = 1u64;
        base %= n;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mulmod(acc, base);
            }
            base = mulmod(base, base);
            exp >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
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

// --- polynomial arithmetic over GF(p), coefficient vectors ascending ---

fn poly_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u128; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] += (ai as u128) * (bj as u128) % p as u128;
        }
    }
    let mut prod: Vec<u64> = prod.iter().map(|&c| (c % p as u128) as u64).collect();
    // reduce by the monic modulus of degree e
    let e = modulus.len() - 1;
    let mut deg = prod.len();
    while deg > e {
        deg -= 1;
        let lead = prod[deg];
        if lead != 0 {
            prod[deg] = 0;
            for (k, &mk) in modulus.iter().enumerate().take(e) {
                let sub = (lead as u128 * mk as u128) % p as u128;
                let idx = deg - e + k;
                prod[idx] = ((prod[idx] as u128 + p as u128 - sub) % p as u128) as u64;
            }
        }
    }
    prod.truncate(e);
    poly_trim(&mut prod);
    prod
}

fn poly_pow_mod(base: &[u64], mut exp: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = base.to_vec();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_mul_mod(&acc, &b, modulus, p);
        }
        b = poly_mul_mod(&b, &b, modulus, p);
        exp >>= 1;
    }
    acc
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    // remainder of a by b, b nonzero, not necessarily monic
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let mut bb = b.to_vec();
    poly_trim(&mut bb);
    let db = bb.len() - 1;
    let lead_inv = scalar_inv(bb[db], p);
    while r.len() > db {
        let dr = r.len() - 1;
        let coef = (r[dr] as u128 * lead_inv as u128 % p as u128) as u64;
        if coef != 0 {
            for (k, &bk) in bb.iter().enumerate() {
                let idx = dr - db + k;
                let sub = (coef as u128 * bk as u128) % p as u128;
                r[idx] = ((r[idx] as u128 + p as u128 - sub) % p as u128) as u64;
            }
        }
        poly_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

fn scalar_inv(a: u64, p: u64) -> u64 {
    // a != 0, p prime
    let mut acc = 1u64;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Deterministic irreducibility test for a monic degree-e polynomial over
/// GF(p): x^{p^e} = x mod f, and gcd(x^{p^{e/r}} - x, f) = 1 for each prime
/// r dividing e.
fn is_irreducible(modulus: &[u64], p: u64) -> bool {
    let e = (modulus.len() - 1) as u32;
    if e == 0 {
        return false;
    }
    let x = vec![0u64, 1];
    let q = match p.checked_pow(e) {
        Some(q) => q,
        None => return false,
    };
    let xq = poly_pow_mod(&x, q, modulus, p);
    let mut xq_minus_x = xq.clone();
    // subtract x
    if xq_minus_x.len() < 2 {
        xq_minus_x.resize(2, 0);
    }
    xq_minus_x[1] = (xq_minus_x[1] + p - 1) % p;
    poly_trim(&mut xq_minus_x);
    if !xq_minus_x.is_empty() {
        return false;
    }
    for r in prime_factors(e as u64) {
        let sub = p.pow((e as u64 / r) as u32);
        let mut g = poly_pow_mod(&x, sub, modulus, p);
        if g.len() < 2 {
            g.resize(2, 0);
        }
        g[1] = (g[1] + p - 1) % p;
        poly_trim(&mut g);
        let d = poly_gcd(&g, modulus, p);
        if d.len() != 1 {
            return false;
        }
    }
    true
}

impl FieldSpec {
    /// Build GF(p^e) with the default modulus: the monic irreducible whose
    /// non-leading coefficient sequence has the smallest base-p encoding.
    pub fn new(p: u64, e: u32) -> Result<FieldSpec, ArithError> {
        Self::build(p, e, None)
    }

    /// Build GF(p^e) with an explicit monic modulus (ascending coefficients,
    /// length e+1). Only meaningful for e > 1.
    pub fn with_modulus(p: u64, e: u32, modulus: &[u64]) -> Result<FieldSpec, ArithError> {
        Self::build(p, e, Some(modulus))
    }

    fn build(p: u64, e: u32, modulus: Option<&[u64]>) -> Result<FieldSpec, ArithError> {
        if !is_prime(p) {
            return Err(ArithError::NotPrime(p));
        }
        if e == 0 {
            return Err(ArithError::OrderOverflow);
        }
        let q = p
            .checked_pow(e)
            .filter(|&q| q < (1u64 << 63))
            .ok_or(ArithError::OrderOverflow)?;
        let modulus = if e == 1 {
            if modulus.is_some() {
                return Err(ArithError::BadModulus);
            }
            Vec::new()
        } else {
            match modulus {
                Some(m) => {
                    if m.len() != e as usize + 1 || m[e as usize] != 1 || m.iter().any(|&c| c >= p)
                    {
                        return Err(ArithError::BadModulus);
                    }
                    if !is_irreducible(m, p) {
                        return Err(ArithError::ReducibleModulus);
                    }
                    m.to_vec()
                }
                None => Self::default_modulus(p, e)?,
            }
        };
        let mut spec = FieldSpec {
            p,
            e,
            q,
            modulus,
            tables: None,
        };
        if e > 1 && q <= TABLE_LIMIT {
            spec.tables = Some(Arc::new(spec.build_tables()));
        }
        Ok(spec)
    }

    /// Scan monic degree-e polynomials by the base-p encoding of their
    /// non-leading coefficients; the first irreducible wins. Deterministic.
    fn default_modulus(p: u64, e: u32) -> Result<Vec<u64>, ArithError> {
        let q = p.checked_pow(e).ok_or(ArithError::OrderOverflow)?;
        for enc in 0..q {
            let mut coeffs = Vec::with_capacity(e as usize + 1);
            let mut rest = enc;
            for _ in 0..e {
                coeffs.push(rest % p);
                rest /= p;
            }
            coeffs.push(1);
            if is_irreducible(&coeffs, p) {
                return Ok(coeffs);
            }
        }
        // an irreducible of every degree exists over every prime field
        Err(ArithError::ReducibleModulus)
    }

    fn build_tables(&self) -> LogTables {
        let q = self.q;
        let factors = prime_factors(q - 1);
        let mut gen = 0u64;
        for cand in 2..q {
            let g = FieldElement(cand);
            if factors
                .iter()
                .all(|&r| self.pow_raw(g, (q - 1) / r) != FieldElement(1))
            {
                gen = cand;
                break;
            }
        }
        debug_assert!(gen != 0, "multiplicative group of a finite field is cyclic");
        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut log = vec![0u32; q as usize];
        let mut cur = FieldElement(1);
        for i in 0..(q - 1) as usize {
            exp.push(cur.0);
            log[cur.0 as usize] = i as u32;
            cur = self.mul_raw(cur, FieldElement(gen));
        }
        LogTables { exp, log }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// Field order q = p^e.
    pub fn order(&self) -> u64 {
        self.q
    }

    /// Ascending coefficients of the modulus (empty for prime fields).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// Wrap an encoding as an element. Panics on out-of-range values; parse
    /// paths must range-check first.
    pub fn elem(&self, value: u64) -> FieldElement {
        assert!(
            value < self.q,
            "encoding {} out of range for {}",
            value,
            self
        );
        FieldElement(value)
    }

    fn digits(&self, x: FieldElement) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.e as usize);
        let mut rest = x.0;
        for _ in 0..self.e {
            out.push(rest % self.p);
            rest /= self.p;
        }
        out
    }

    fn from_digits(&self, digits: &[u64]) -> FieldElement {
        let mut acc = 0u64;
        for &d in digits.iter().rev() {
            acc = acc * self.p + d;
        }
        FieldElement(acc)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.e == 1 {
            let s = a.0 + b.0;
            return FieldElement(if s >= self.p { s - self.p } else { s });
        }
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        let da = self.digits(a);
        let db = self.digits(b);
        let sum: Vec<u64> = da
            .iter()
            .zip(&db)
            .map(|(&x, &y)| {
                let s = x + y;
                if s >= self.p {
                    s - self.p
                } else {
                    s
                }
            })
            .collect();
        self.from_digits(&sum)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.e == 1 {
            return FieldElement(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        if self.p == 2 {
            return a;
        }
        let da = self.digits(a);
        let nd: Vec<u64> = da
            .iter()
            .map(|&x| if x == 0 { 0 } else { self.p - x })
            .collect();
        self.from_digits(&nd)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    fn mul_raw(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.e == 1 {
            return FieldElement((a.0 as u128 * b.0 as u128 % self.p as u128) as u64);
        }
        let da = self.digits(a);
        let db = self.digits(b);
        let prod = poly_mul_mod(&da, &db, &self.modulus, self.p);
        self.from_digits(&prod)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if let Some(t) = &self.tables {
            if a.0 == 0 || b.0 == 0 {
                return FieldElement(0);
            }
            let la = t.log[a.0 as usize] as u64;
            let lb = t.log[b.0 as usize] as u64;
            let mut s = la + lb;
            if s >= self.q - 1 {
                s -= self.q - 1;
            }
            return FieldElement(t.exp[s as usize]);
        }
        self.mul_raw(a, b)
    }

    fn pow_raw(&self, base: FieldElement, mut exp: u64) -> FieldElement {
        let mut acc = FieldElement(1);
        let mut b = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_raw(acc, b);
            }
            b = self.mul_raw(b, b);
            exp >>= 1;
        }
        acc
    }

    /// Square-and-multiply exponentiation; 0^0 = 1 by convention.
    pub fn pow(&self, base: FieldElement, mut exp: u64) -> FieldElement {
        if let Some(t) = &self.tables {
            if base.0 == 0 {
                return FieldElement(if exp == 0 { 1 } else { 0 });
            }
            let l = t.log[base.0 as usize] as u128;
            let idx = (l * (exp as u128 % (self.q - 1) as u128)) % (self.q - 1) as u128;
            return FieldElement(t.exp[idx as usize]);
        }
        let mut acc = FieldElement(1);
        let mut b = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, ArithError> {
        if a.0 == 0 {
            return Err(ArithError::DivisionByZero);
        }
        if let Some(t) = &self.tables {
            let l = t.log[a.0 as usize] as u64;
            let idx = if l == 0 { 0 } else { self.q - 1 - l };
            return Ok(FieldElement(t.exp[idx as usize]));
        }
        Ok(self.pow(a, self.q - 2))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, ArithError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// The p-power Frobenius x -> x^p.
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(is_prime(101));
        assert!(is_prime(3037000493));
        assert!(!is_prime(1));
        assert!(!is_prime(4));
        assert!(!is_prime(3215031751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn prime_field() {
        let f = FieldSpec::new(7, 1).unwrap();
        assert_eq!(f.order(), 7);
        assert!(f.modulus().is_empty());
        assert_eq!(f.add(f.elem(5), f.elem(4)), f.elem(2));
        assert_eq!(f.mul(f.elem(3), f.elem(5)), f.elem(1));
        assert_eq!(f.inv(f.elem(3)).unwrap(), f.elem(5));
        // Fermat: 3^7 = 3 mod 7
        assert_eq!(f.frobenius(f.elem(3)), f.elem(3));
    }

    #[test]
    fn not_prime_rejected() {
        assert_eq!(FieldSpec::new(4, 1).unwrap_err(), ArithError::NotPrime(4));
        assert_eq!(FieldSpec::new(1, 1).unwrap_err(), ArithError::NotPrime(1));
    }

    #[test]
    fn order_overflow_rejected() {
        assert_eq!(
            FieldSpec::new(2, 63).unwrap_err(),
            ArithError::OrderOverflow
        );
        assert!(FieldSpec::new(2, 62).is_ok());
    }

    #[test]
    fn gf8_default_modulus() {
        // among monic cubics over GF(2), x^3+x+1 (encoding 3) is the first
        // irreducible: encodings 0,1,2 give x^3, x^3+1, x^3+x, all reducible
        let f = FieldSpec::new(2, 3).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 0, 1]);
        // x * x^2 = x^3 = x + 1
        assert_eq!(f.mul(f.elem(2), f.elem(4)), f.elem(3));
        // x^{-1} = x^2 + 1 since x(x^2+1) = x^3 + x = 1
        assert_eq!(f.inv(f.elem(2)).unwrap(), f.elem(5));
    }

    #[test]
    fn explicit_modulus() {
        // x^3 + x^2 + 1 is the other irreducible cubic over GF(2)
        let f = FieldSpec::with_modulus(2, 3, &[1, 0, 1, 1]).unwrap();
        assert_eq!(f.order(), 8);
        // x * x^2 = x^3 = x^2 + 1
        assert_eq!(f.mul(f.elem(2), f.elem(4)), f.elem(5));
        assert_eq!(
            FieldSpec::with_modulus(2, 3, &[0, 0, 0, 1]).unwrap_err(),
            ArithError::ReducibleModulus
        );
        assert_eq!(
            FieldSpec::with_modulus(2, 3, &[1, 1, 1]).unwrap_err(),
            ArithError::BadModulus
        );
        assert_eq!(
            FieldSpec::with_modulus(7, 1, &[1, 1]).unwrap_err(),
            ArithError::BadModulus
        );
    }

    #[test]
    fn gf9_arithmetic() {
        let f = FieldSpec::new(3, 2).unwrap();
        assert_eq!(f.order(), 9);
        // every nonzero element has order dividing 8
        for v in 1..9 {
            assert_eq!(f.pow(f.elem(v), 8), f.one());
            let inv = f.inv(f.elem(v)).unwrap();
            assert_eq!(f.mul(f.elem(v), inv), f.one());
        }
        // frobenius is additive in characteristic 3
        for a in 0..9 {
            for b in 0..9 {
                let lhs = f.frobenius(f.add(f.elem(a), f.elem(b)));
                let rhs = f.add(f.frobenius(f.elem(a)), f.frobenius(f.elem(b)));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn large_extension_no_tables() {
        // q = 3^11 = 177147 > 2^16, exercises the polynomial path
        let f = FieldSpec::new(3, 11).unwrap();
        let a = f.elem(12345);
        let b = f.elem(98765);
        let ab = f.mul(a, b);
        assert_eq!(f.mul(b, a), ab);
        assert_eq!(f.mul(ab, f.inv(b).unwrap()), a);
        assert_eq!(f.pow(a, f.order() - 1), f.one());
    }

    #[test]
    fn zero_inverse_fails() {
        let f = FieldSpec::new(5, 1).unwrap();
        assert_eq!(f.inv(f.zero()).unwrap_err(), ArithError::DivisionByZero);
    }
}
