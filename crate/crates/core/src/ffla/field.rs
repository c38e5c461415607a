//! Finite fields GF(p^r).
//!
//! A field is fixed by `(p, r)`: the defining modulus is the smallest monic
//! irreducible polynomial of degree `r` over GF(p), where polynomials are
//! compared by their coefficient lists read from the top coefficient down.
//! Elements are stored as the integer `c_0 + c_1 p + ... + c_{r-1} p^{r-1}`,
//! so the integer order on codes is exactly that lexicographic order.
//!
//! Fields of order at most 2^16 use log/antilog and Zech tables. Larger
//! fields fall back to digit-wise polynomial arithmetic.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::FflaError;

/// Largest order for which the log/antilog tables are built.
const TABLE_LIMIT: u64 = 1 << 16;
/// Largest order with a full addition table.
const ADD_TABLE_LIMIT: u64 = 512;
const NO_LOG: u32 = u32::MAX;

pub type FieldRef = Arc<Field>;

/// An element of some GF(p^r), encoded as the base-p integer of its
/// coefficient vector. The owning field is carried by the container
/// (matrix, polynomial) rather than the value.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Scalar(pub u32);

impl Scalar {
    pub const ZERO: Scalar = Scalar(0);
    pub const ONE: Scalar = Scalar(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn code(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

enum Arith {
    Table {
        exp: Vec<u32>,
        log: Vec<u32>,
        zech: Vec<u32>,
        neg: Vec<u32>,
        add: Option<Vec<u32>>,
    },
    Digits,
}

pub struct Field {
    p: u32,
    r: u32,
    q: u32,
    modulus: Vec<u32>,
    pow_p: Vec<u32>,
    primitive: Scalar,
    arith: Arith,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.r)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.r == other.r && self.modulus == other.modulus
    }
}

impl Eq for Field {}

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

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
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

/// Writes `q = p^r` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let mut r = 0;
    let mut m = q;
    while m > 1 {
        m /= p;
        r += 1;
    }
    Some((p, r))
}

impl Field {
    /// Builds GF(p^r) with its canonical modulus.
    pub fn new(p: u64, r: u32) -> Result<FieldRef, FflaError> {
        if !is_prime(p) {
            return Err(FflaError::NotPrime(p));
        }
        if r == 0 {
            return Err(FflaError::ZeroDegree);
        }
        let q = (p as u128).checked_pow(r).filter(|&q| q < u32::MAX as u128);
        let Some(q) = q else {
            return Err(FflaError::FieldTooLarge { p, r });
        };
        let p32 = p as u32;
        let modulus = smallest_irreducible(p, r as usize);
        let mut pow_p = Vec::with_capacity(r as usize + 1);
        let mut acc = 1u32;
        for _ in 0..=r {
            pow_p.push(acc);
            acc = acc.wrapping_mul(p32);
        }
        let mut field = Field {
            p: p32,
            r,
            q: q as u32,
            modulus: modulus.into_iter().map(|c| c as u32).collect(),
            pow_p,
            primitive: Scalar::ONE,
            arith: Arith::Digits,
        };
        field.primitive = field.find_primitive();
        if (q as u64) <= TABLE_LIMIT {
            field.arith = field.build_tables();
        }
        Ok(Arc::new(field))
    }

    /// Builds GF(q) for a prime power `q`.
    pub fn with_order(q: u64) -> Result<FieldRef, FflaError> {
        let (p, r) = prime_power(q).ok_or(FflaError::NotPrimePower(q))?;
        Field::new(p, r)
    }

    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.r
    }

    pub fn order(&self) -> u64 {
        self.q as u64
    }

    /// Monic modulus, coefficients low-to-high (length `r + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive_element(&self) -> Scalar {
        self.primitive
    }

    pub fn same_as(&self, other: &Field) -> bool {
        std::ptr::eq(self, other) || self == other
    }

    /// Embeds an integer through the prime field.
    pub fn from_int(&self, n: i64) -> Scalar {
        Scalar(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Scalar, FflaError> {
        if coeffs.len() > self.r as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(FflaError::BadScalar(format!("{coeffs:?} in {self:?}")));
        }
        Ok(Scalar(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| c * self.pow_p[i])
                .sum(),
        ))
    }

    /// Coefficient vector of length `r`, low-to-high.
    pub fn coeffs(&self, a: Scalar) -> Vec<u32> {
        let mut out = vec![0; self.r as usize];
        self.decode(a, &mut out);
        out
    }

    pub fn scalar_from_code(&self, code: u64) -> Result<Scalar, FflaError> {
        if code >= self.q as u64 {
            return Err(FflaError::BadScalar(format!("code {code} in {self:?}")));
        }
        Ok(Scalar(code as u32))
    }

    /// The class of the polynomial variable, `x mod modulus`.
    pub fn generator_x(&self) -> Scalar {
        if self.r == 1 {
            // x is congruent to -modulus[0]
            self.neg(Scalar(self.modulus[0]))
        } else {
            Scalar(self.p)
        }
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        Scalar(rng.gen_range(0..self.q))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        Scalar(rng.gen_range(1..self.q))
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = Scalar> {
        (0..self.q).map(Scalar)
    }

    #[inline]
    fn decode(&self, a: Scalar, out: &mut [u32]) {
        let mut v = a.0;
        for d in out.iter_mut() {
            *d = v % self.p;
            v /= self.p;
        }
    }

    #[inline]
    fn encode(&self, digits: &[u32]) -> Scalar {
        let mut v = 0u32;
        for &d in digits.iter().rev() {
            v = v * self.p + d;
        }
        Scalar(v)
    }

    fn add_digits(&self, a: Scalar, b: Scalar) -> Scalar {
        if self.p == 2 {
            return Scalar(a.0 ^ b.0);
        }
        if self.r == 1 {
            let s = a.0 as u64 + b.0 as u64;
            return Scalar((s % self.p as u64) as u32);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u32;
        for i in 0..self.r as usize {
            let d = (x % self.p + y % self.p) % self.p;
            out += d * self.pow_p[i];
            x /= self.p;
            y /= self.p;
        }
        Scalar(out)
    }

    fn neg_digits(&self, a: Scalar) -> Scalar {
        if self.p == 2 {
            return a;
        }
        let mut x = a.0;
        let mut out = 0u32;
        for i in 0..self.r as usize {
            let d = x % self.p;
            if d != 0 {
                out += (self.p - d) * self.pow_p[i];
            }
            x /= self.p;
        }
        Scalar(out)
    }

    fn mul_digits(&self, a: Scalar, b: Scalar) -> Scalar {
        if a.is_zero() || b.is_zero() {
            return Scalar::ZERO;
        }
        let p = self.p as u64;
        if self.r == 1 {
            return Scalar(((a.0 as u64 * b.0 as u64) % p) as u32);
        }
        let r = self.r as usize;
        let mut da = [0u32; 32];
        let mut db = [0u32; 32];
        self.decode(a, &mut da[..r]);
        self.decode(b, &mut db[..r]);
        let mut prod = [0u64; 64];
        for i in 0..r {
            if da[i] == 0 {
                continue;
            }
            for j in 0..r {
                prod[i + j] += da[i] as u64 * db[j] as u64;
            }
        }
        for c in prod.iter_mut().take(2 * r - 1) {
            *c %= p;
        }
        for k in (r..2 * r - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            // x^k = x^{k-r} * (-(modulus without top term))
            for (i, &m) in self.modulus[..r].iter().enumerate() {
                if m != 0 {
                    prod[k - r + i] = (prod[k - r + i] + c * (p - m as u64)) % p;
                }
            }
        }
        let digits: Vec<u32> = prod[..r].iter().map(|&c| c as u32).collect();
        self.encode(&digits)
    }

    fn pow_digits(&self, a: Scalar, mut e: u64) -> Scalar {
        let mut base = a;
        let mut acc = Scalar::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_digits(acc, base);
            }
            base = self.mul_digits(base, base);
            e >>= 1;
        }
        acc
    }

    fn find_primitive(&self) -> Scalar {
        let n = self.q as u64 - 1;
        if n == 1 {
            return Scalar::ONE;
        }
        let factors = prime_factors(n);
        (2..self.q)
            .map(Scalar)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&f| self.pow_digits(g, n / f) != Scalar::ONE)
            })
            .expect("multiplicative group of a finite field is cyclic")
    }

    fn build_tables(&self) -> Arith {
        let q = self.q as usize;
        let n = q - 1;
        let mut exp = vec![0u32; n];
        let mut log = vec![NO_LOG; q];
        let mut cur = Scalar::ONE;
        for (i, e) in exp.iter_mut().enumerate() {
            *e = cur.0;
            log[cur.0 as usize] = i as u32;
            cur = self.mul_digits(cur, self.primitive);
        }
        let mut zech = vec![NO_LOG; n];
        for (i, z) in zech.iter_mut().enumerate() {
            let s = self.add_digits(Scalar::ONE, Scalar(exp[i]));
            *z = log[s.0 as usize];
        }
        let neg = (0..q as u32)
            .map(|a| self.neg_digits(Scalar(a)).0)
            .collect();
        let add = (q as u64 <= ADD_TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; q * q];
            for a in 0..q {
                for b in 0..q {
                    t[a * q + b] = self.add_digits(Scalar(a as u32), Scalar(b as u32)).0;
                }
            }
            t
        });
        Arith::Table {
            exp,
            log,
            zech,
            neg,
            add,
        }
    }

    #[inline]
    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if self.p == 2 {
            return Scalar(a.0 ^ b.0);
        }
        match &self.arith {
            Arith::Table {
                exp,
                log,
                zech,
                add,
                ..
            } => {
                if let Some(t) = add {
                    return Scalar(t[a.0 as usize * self.q as usize + b.0 as usize]);
                }
                let n = self.q - 1;
                let la = log[a.0 as usize];
                let lb = log[b.0 as usize];
                let d = if lb >= la { lb - la } else { lb + n - la };
                let z = zech[d as usize];
                if z == NO_LOG {
                    Scalar::ZERO
                } else {
                    let s = la as u64 + z as u64;
                    Scalar(exp[(s % n as u64) as usize])
                }
            }
            Arith::Digits => self.add_digits(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Scalar) -> Scalar {
        match &self.arith {
            Arith::Table { neg, .. } => Scalar(neg[a.0 as usize]),
            Arith::Digits => self.neg_digits(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: Scalar, b: Scalar) -> Scalar {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        if a.is_zero() || b.is_zero() {
            return Scalar::ZERO;
        }
        match &self.arith {
            Arith::Table { exp, log, .. } => {
                let s = log[a.0 as usize] as u64 + log[b.0 as usize] as u64;
                Scalar(exp[(s % (self.q as u64 - 1)) as usize])
            }
            Arith::Digits => self.mul_digits(a, b),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        Some(match &self.arith {
            Arith::Table { exp, log, .. } => {
                let n = self.q - 1;
                let l = log[a.0 as usize];
                Scalar(exp[((n - l) % n) as usize])
            }
            Arith::Digits => self.pow_digits(a, self.q as u64 - 2),
        })
    }

    pub fn div(&self, a: Scalar, b: Scalar) -> Option<Scalar> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Scalar, e: u64) -> Scalar {
        if e == 0 {
            return Scalar::ONE;
        }
        if a.is_zero() {
            return Scalar::ZERO;
        }
        match &self.arith {
            Arith::Table { exp, log, .. } => {
                let n = self.q as u64 - 1;
                let l = log[a.0 as usize] as u64;
                let e = e % n;
                Scalar(exp[((l * e) % n) as usize])
            }
            Arith::Digits => self.pow_digits(a, e),
        }
    }

    /// `x -> x^p`.
    pub fn frobenius(&self, a: Scalar) -> Scalar {
        self.pow(a, self.p as u64)
    }

    /// Inverse Frobenius, `x -> x^(p^(r-1))`.
    pub fn pth_root(&self, a: Scalar) -> Scalar {
        let mut out = a;
        for _ in 1..self.r {
            out = self.frobenius(out);
        }
        out
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: Scalar) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        let mut n = self.q as u64 - 1;
        for f in prime_factors(n) {
            while n.is_multiple_of(f) && self.pow(a, n / f) == Scalar::ONE {
                n /= f;
            }
        }
        Some(n)
    }

    /// A primitive `n`-th root of unity, if `n` divides `q - 1`.
    pub fn root_of_unity(&self, n: u64) -> Option<Scalar> {
        let m = self.q as u64 - 1;
        (n > 0 && m.is_multiple_of(n)).then(|| self.pow(self.primitive, m / n))
    }

    /// Multiply-accumulate `dst[k] += c * src[k]`.
    pub fn axpy(&self, dst: &mut [Scalar], c: Scalar, src: &[Scalar]) {
        if c.is_zero() {
            return;
        }
        match &self.arith {
            Arith::Table { exp, log, .. } => {
                let n = self.q as u64 - 1;
                let lc = log[c.0 as usize] as u64;
                for (d, &s) in dst.iter_mut().zip(src) {
                    if s.is_zero() {
                        continue;
                    }
                    let prod = Scalar(exp[((lc + log[s.0 as usize] as u64) % n) as usize]);
                    *d = self.add(*d, prod);
                }
            }
            Arith::Digits => {
                for (d, &s) in dst.iter_mut().zip(src) {
                    if !s.is_zero() {
                        *d = self.add(*d, self.mul_digits(c, s));
                    }
                }
            }
        }
    }

    pub fn scale_slice(&self, v: &mut [Scalar], c: Scalar) {
        for x in v.iter_mut() {
            *x = self.mul(*x, c);
        }
    }

    pub fn dot(&self, a: &[Scalar], b: &[Scalar]) -> Scalar {
        a.iter()
            .zip(b)
            .fold(Scalar::ZERO, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }
}

// --- prime-field polynomial helpers used only for modulus selection ---

fn pf_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn pf_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    pf_trim(&mut a);
    let dm = m.len() - 1;
    let inv_lead = pf_inv(m[dm], p);
    while a.len() > dm {
        let k = a.len() - 1;
        let c = a[k] * inv_lead % p;
        for (i, &mi) in m.iter().enumerate() {
            let idx = k - dm + i;
            a[idx] = (a[idx] + p - c * mi % p) % p;
        }
        pf_trim(&mut a);
    }
    a
}

fn pf_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    pf_rem(&out, m, p)
}

fn pf_powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = pf_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = pf_mulmod(&acc, &b, m, p);
        }
        b = pf_mulmod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

fn pf_inv(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn pf_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    pf_trim(&mut a);
    pf_trim(&mut b);
    while !b.is_empty() {
        let r = pf_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn pf_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    pf_trim(&mut out);
    out
}

/// Rabin's irreducibility test for a monic `f` of degree `r` over GF(p).
fn rabin_irreducible(f: &[u64], p: u64) -> bool {
    let r = f.len() - 1;
    if r == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    // xp[i] = x^(p^i) mod f
    let mut xp = vec![pf_rem(&x, f, p)];
    for i in 0..r {
        let next = pf_powmod(&xp[i], p, f, p);
        xp.push(next);
    }
    if !pf_sub(&xp[r], &x, p).is_empty() {
        return false;
    }
    for d in prime_factors(r as u64) {
        let h = pf_sub(&xp[r / d as usize], &x, p);
        let g = pf_gcd(f, &h, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree `r` over GF(p),
/// low-to-high coefficients including the leading 1.
pub(crate) fn smallest_irreducible(p: u64, r: usize) -> Vec<u64> {
    let mut t: u64 = 0;
    loop {
        let mut f = Vec::with_capacity(r + 1);
        let mut v = t;
        for _ in 0..r {
            f.push(v % p);
            v /= p;
        }
        f.push(1);
        if rabin_irreducible(&f, p) {
            return f;
        }
        t += 1;
    }
}
