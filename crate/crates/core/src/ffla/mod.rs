//! Exact arithmetic in GF(p^r): scalars, dense matrices, polynomials.

mod field;
mod mat;
mod poly;

pub use field::{is_prime, prime_factors, prime_power, Field, FieldRef, Scalar};
pub use mat::{Mat, Rref, Subspace};
pub use poly::{Poly, DEFAULT_FACTOR_SEED};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FflaError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("GF({p}^{r}) does not fit the 32-bit element encoding")]
    FieldTooLarge { p: u64, r: u32 },
    #[error("invalid scalar {0}")]
    BadScalar(String),
    #[error("cannot factor the zero polynomial")]
    ZeroPolynomial,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("no embedding of {small} into {big}")]
    NoEmbedding { small: String, big: String },
}

/// Field embedding GF(p^r) -> GF(p^(rs)), fixed by the image of `x`.
#[derive(Clone, Debug)]
pub struct Embedding {
    small: FieldRef,
    big: FieldRef,
    image_of_x: Scalar,
}

impl Embedding {
    /// Sends `x` to the smallest root (by element code) of the small
    /// field's modulus in the big field.
    pub fn new(small: &FieldRef, big: &FieldRef) -> Result<Embedding, FflaError> {
        let fail = || FflaError::NoEmbedding {
            small: format!("{small:?}"),
            big: format!("{big:?}"),
        };
        if small.characteristic() != big.characteristic()
            || !big.degree().is_multiple_of(small.degree())
        {
            return Err(fail());
        }
        let modulus: Vec<Scalar> = small.modulus().iter().map(|&c| Scalar(c)).collect();
        let m = Poly::new(big.clone(), modulus);
        let root = m
            .factor()?
            .into_iter()
            .filter(|(g, _)| g.degree() == Some(1))
            .map(|(g, _)| big.neg(g.coeff(0)))
            .min()
            .ok_or_else(fail)?;
        Ok(Embedding {
            small: small.clone(),
            big: big.clone(),
            image_of_x: root,
        })
    }

    pub fn apply(&self, a: Scalar) -> Scalar {
        let big = &self.big;
        self.small
            .coeffs(a)
            .iter()
            .rev()
            .fold(Scalar::ZERO, |acc, &c| {
                big.add(big.mul(acc, self.image_of_x), Scalar(c))
            })
    }

    pub fn apply_mat(&self, m: &Mat) -> Mat {
        let data = m.data().iter().map(|&a| self.apply(a)).collect();
        Mat::from_vec(&self.big, m.rows(), m.cols(), data)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn embedding_is_a_ring_map() {
        let small = Field::new(3, 2).unwrap();
        let big = Field::new(3, 4).unwrap();
        let e = Embedding::new(&small, &big).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let a = small.random(&mut rng);
            let b = small.random(&mut rng);
            assert_eq!(e.apply(small.mul(a, b)), big.mul(e.apply(a), e.apply(b)));
            assert_eq!(e.apply(small.add(a, b)), big.add(e.apply(a), e.apply(b)));
        }
        assert!(Embedding::new(&big, &small).is_err());
        assert!(Embedding::new(&Field::new(3, 3).unwrap(), &big).is_err());
    }
}
