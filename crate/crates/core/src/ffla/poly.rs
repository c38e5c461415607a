//! Univariate polynomials over GF(q) and their factorization.

use std::cmp::Ordering;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::{FieldRef, Scalar};
use super::FflaError;

/// Default seed for the randomized equal-degree splitting step.
pub const DEFAULT_FACTOR_SEED: u64 = 0;

/// Coefficients low-to-high with no trailing zeros; the zero polynomial is
/// the empty list.
#[derive(Clone)]
pub struct Poly {
    field: FieldRef,
    coeffs: Vec<Scalar>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field.same_as(&other.field)
    }
}

impl Eq for Poly {}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c.0) {
                (0, _) => write!(f, "{}", c.0)?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{}x", c.0)?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{}x^{i}", c.0)?,
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn new(field: FieldRef, mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_ints(field: &FieldRef, coeffs: &[i64]) -> Poly {
        let c = coeffs.iter().map(|&n| field.from_int(n)).collect();
        Poly::new(field.clone(), c)
    }

    pub fn zero(field: &FieldRef) -> Poly {
        Poly::new(field.clone(), Vec::new())
    }

    pub fn one(field: &FieldRef) -> Poly {
        Poly::new(field.clone(), vec![Scalar::ONE])
    }

    pub fn constant(field: &FieldRef, c: Scalar) -> Poly {
        Poly::new(field.clone(), vec![c])
    }

    /// `x - a`
    pub fn linear(field: &FieldRef, a: Scalar) -> Poly {
        Poly::new(field.clone(), vec![field.neg(a), Scalar::ONE])
    }

    pub fn x(field: &FieldRef) -> Poly {
        Poly::new(field.clone(), vec![Scalar::ZERO, Scalar::ONE])
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [Scalar::ONE]
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().copied().unwrap_or(Scalar::ZERO)
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).copied().unwrap_or(Scalar::ZERO)
    }

    pub fn monic(&self) -> Poly {
        match self.field.inv(self.leading()) {
            None => self.clone(),
            Some(inv) => self.scale(inv),
        }
    }

    pub fn scale(&self, c: Scalar) -> Poly {
        let f = &self.field;
        Poly::new(
            f.clone(),
            self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        )
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| f.add(self.coeff(i), other.coeff(i)))
            .collect();
        Poly::new(f.clone(), c)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| f.sub(self.coeff(i), other.coeff(i)))
            .collect();
        Poly::new(f.clone(), c)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![Scalar::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            f.axpy(&mut out[i..], a, &other.coeffs);
        }
        Poly::new(f.clone(), out)
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let f = &self.field;
        let dd = d.degree().expect("division by the zero polynomial");
        let inv_lead = f.inv(d.leading()).unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(f), self.clone());
        }
        let mut quot = vec![Scalar::ZERO; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = f.mul(rem[k], inv_lead);
            if c.is_zero() {
                continue;
            }
            quot[k - dd] = c;
            let neg = f.neg(c);
            f.axpy(&mut rem[k - dd..=k], neg, &d.coeffs);
        }
        rem.truncate(dd);
        (Poly::new(f.clone(), quot), Poly::new(f.clone(), rem))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| f.mul(a, f.from_int(i as i64)))
            .collect();
        Poly::new(f.clone(), c)
    }

    pub fn eval(&self, x: Scalar) -> Scalar {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut acc = Poly::one(&self.field).rem(m);
        let mut base = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Given `self = g(x^p)`, returns the p-th root `h` with `h^p = self`.
    fn pth_root(&self) -> Poly {
        let f = &self.field;
        let p = f.characteristic() as usize;
        let c = self
            .coeffs
            .iter()
            .step_by(p)
            .map(|&a| f.pth_root(a))
            .collect();
        Poly::new(f.clone(), c)
    }

    /// Complete factorization into monic irreducibles with multiplicities,
    /// sorted by [`Ord`]. The leading coefficient is dropped.
    pub fn factor(&self) -> Result<Vec<(Poly, usize)>, FflaError> {
        self.factor_with_seed(DEFAULT_FACTOR_SEED)
    }

    pub fn factor_with_seed(&self, seed: u64) -> Result<Vec<(Poly, usize)>, FflaError> {
        if self.is_zero() {
            return Err(FflaError::ZeroPolynomial);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out: Vec<(Poly, usize)> = Vec::new();
        for (part, mult) in square_free(&self.monic()) {
            for (g, d) in distinct_degree(&part) {
                let mut pieces = Vec::new();
                equal_degree(&g, d, &mut rng, &mut pieces);
                for piece in pieces {
                    match out.iter_mut().find(|(h, _)| *h == piece) {
                        Some(entry) => entry.1 += mult,
                        None => out.push((piece, mult)),
                    }
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Whether a nonzero polynomial of positive degree is irreducible.
    pub fn is_irreducible(&self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(1) => true,
            Some(_) => {
                let fac = self.factor().expect("nonzero");
                fac.len() == 1 && fac[0].1 == 1
            }
        }
    }
}

/// Square-free decomposition of a monic polynomial: pairs `(g, m)` with `g`
/// square-free and `f = prod g^m`.
fn square_free(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field();
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let p = field.characteristic() as usize;
    let df = f.derivative();
    if df.is_zero() {
        for (g, m) in square_free(&f.pth_root()) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.divrem(&c).0;
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&c);
        let fac = w.divrem(&y).0;
        if fac.degree().unwrap_or(0) > 0 {
            out.push((fac.monic(), i));
        }
        w = y;
        c = c.divrem(&w).0;
        i += 1;
    }
    if c.degree().unwrap_or(0) > 0 {
        for (g, m) in square_free(&c.monic().pth_root()) {
            out.push((g, m * p));
        }
    }
    out
}

/// Splits a square-free monic polynomial into products of irreducibles of
/// equal degree: pairs `(product, degree)`.
fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field();
    let q = field.order();
    let x = Poly::x(field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut d = 0;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.powmod(q, &rest);
        let g = h.sub(&x).gcd(&rest);
        if g.degree().unwrap_or(0) > 0 {
            rest = rest.divrem(&g).0;
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    if let Some(deg) = rest.degree().filter(|&k| k > 0) {
        out.push((rest.monic(), deg));
    }
    out
}

/// Cantor-Zassenhaus splitting of a product of distinct irreducibles of
/// degree `d`.
fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return;
    }
    if n == d {
        out.push(f.monic());
        return;
    }
    let field = f.field();
    let q = field.order();
    loop {
        let a = Poly::new(field.clone(), (0..n).map(|_| field.random(rng)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if field.characteristic() == 2 {
            // absolute trace: a + a^2 + ... + a^(2^(r d - 1))
            let steps = field.degree() as usize * d;
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..steps {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc
        } else {
            // a^((q^d - 1)/2) = (a^(1 + q + ... + q^(d-1)))^((q-1)/2)
            let mut t = a.rem(f);
            let mut norm = t.clone();
            for _ in 1..d {
                t = t.powmod(q, f);
                norm = norm.mul(&t).rem(f);
            }
            norm.powmod((q - 1) / 2, f).sub(&Poly::one(field))
        };
        let g = b.gcd(f);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let h = f.divrem(&g).0;
            equal_degree(&g, d, rng, out);
            equal_degree(&h.monic(), d, rng, out);
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffla::Field;

    fn product(factors: &[(Poly, usize)], field: &FieldRef) -> Poly {
        factors.iter().fold(Poly::one(field), |acc, (g, m)| {
            (0..*m).fold(acc, |a, _| a.mul(g))
        })
    }

    #[test]
    fn x2_plus_1_irreducible_over_gf3() {
        let f = Field::new(3, 1).unwrap();
        // no roots in GF(3)
        let g = Poly::from_ints(&f, &[1, 0, 1]);
        assert!(f.elements().all(|x| !g.eval(x).is_zero()));
        let fac = g.factor().unwrap();
        assert_eq!(fac, vec![(g.clone(), 1)]);
    }

    #[test]
    fn difference_of_squares_over_gf5() {
        let f = Field::new(5, 1).unwrap();
        let g = Poly::from_ints(&f, &[-1, 0, 1]);
        let fac = g.factor().unwrap();
        assert_eq!(
            fac,
            vec![
                (Poly::from_ints(&f, &[1, 1]), 1),
                (Poly::from_ints(&f, &[4, 1]), 1)
            ]
        );
    }

    #[test]
    fn x4_minus_1_splits_over_gf5() {
        let f = Field::new(5, 1).unwrap();
        let g = Poly::from_ints(&f, &[-1, 0, 0, 0, 1]);
        let fac = g.factor().unwrap();
        let expected: Vec<_> = (1..5).map(|c| (Poly::from_ints(&f, &[c, 1]), 1)).collect();
        assert_eq!(fac, expected);
    }

    #[test]
    fn zero_is_rejected() {
        let f = Field::new(5, 1).unwrap();
        assert!(matches!(
            Poly::zero(&f).factor(),
            Err(FflaError::ZeroPolynomial)
        ));
    }

    #[test]
    fn repeated_and_inseparable_factors() {
        let f = Field::new(3, 1).unwrap();
        // (x+1)^3 (x^2+1)^2 x^4
        let a = Poly::from_ints(&f, &[1, 1]);
        let b = Poly::from_ints(&f, &[1, 0, 1]);
        let x = Poly::x(&f);
        let g = product(&[(a.clone(), 3), (b.clone(), 2), (x.clone(), 4)], &f);
        let fac = g.factor().unwrap();
        assert_eq!(fac, vec![(x, 4), (a, 3), (b, 2)]);
    }

    #[test]
    fn factors_over_extension_fields() {
        for (p, r) in [(2u64, 4u32), (3, 4), (5, 2), (2, 1)] {
            let f = Field::new(p, r).unwrap();
            // x^(q-1) - 1 splits into all linear factors
            let q = f.order() as usize;
            let mut c = vec![Scalar::ZERO; q];
            c[0] = f.neg(Scalar::ONE);
            c[q - 1] = Scalar::ONE;
            let g = Poly::new(f.clone(), c);
            let fac = g.factor().unwrap();
            assert_eq!(fac.len(), q - 1);
            assert!(fac.iter().all(|(h, m)| h.degree() == Some(1) && *m == 1));
            assert_eq!(product(&fac, &f), g);
        }
    }

    #[test]
    fn seed_does_not_change_factorization() {
        let f = Field::new(7, 1).unwrap();
        let g = Poly::from_ints(&f, &[3, 1, 4, 1, 5, 2, 6, 1, 1]);
        assert_eq!(
            g.factor_with_seed(1).unwrap(),
            g.factor_with_seed(99).unwrap()
        );
    }
}
