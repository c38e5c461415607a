//! Spinning, irreducibility testing and splitting.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::MeataxeError;
use crate::ffla::{FieldRef, Mat, Poly, Scalar, Subspace};
use crate::grouprep::Rep;

/// Random algebra elements tried before the deterministic fallback.
pub const RANDOM_ATTEMPTS: usize = 64;
/// Maximum word length in random algebra elements.
pub const MAX_WORD_LEN: usize = 12;
/// Exhaustive vector search runs when the number of lines is at most this.
pub const EXHAUSTIVE_LINES: u64 = 200_000;

/// Smallest subspace containing `seeds` and invariant under `gens`.
pub fn spin(gens: &[Mat], field: &FieldRef, dim: usize, seeds: &[Vec<Scalar>]) -> Subspace {
    let mut s = Subspace::zero(field, dim);
    let mut queue: Vec<Vec<Scalar>> = Vec::new();
    for v in seeds {
        if s.insert(v.clone()) {
            queue.push(v.clone());
        }
    }
    while let Some(v) = queue.pop() {
        if s.is_full() {
            break;
        }
        for g in gens {
            let w = g.mul_vec(&v);
            if s.insert(w.clone()) {
                queue.push(w);
            }
        }
    }
    s
}

/// Vectors fixed by every generator.
pub fn fixed_space(rep: &Rep) -> Subspace {
    let f = rep.field();
    let n = rep.dim();
    if rep.generators().is_empty() {
        return Subspace::full(f, n);
    }
    let mut stacked = Mat::zeros(f, 0, n);
    for g in rep.generators() {
        stacked = stacked.vstack(&g.add_scalar(f.neg(Scalar::ONE)));
    }
    Subspace::column_space(&stacked.kernel())
}

/// Evidence that a module is irreducible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    OneDimensional,
    /// An algebra element `A` and an irreducible factor `f` of its
    /// characteristic polynomial with `dim ker f(A) = deg f`, such that a
    /// kernel vector spins to everything under the generators and a kernel
    /// vector of `f(A)^T` spins to everything under the transposes.
    Norton {
        attempt: usize,
        factor_degree: usize,
        nullity: usize,
    },
    /// Every line was spun and generated the whole space.
    Exhaustive {
        lines: u64,
    },
}

#[derive(Clone, Debug)]
pub enum Irreducibility {
    Irreducible(Certificate),
    /// A proper nonzero invariant subspace.
    Reducible(Subspace),
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible(_))
    }
}

fn word_product(gens: &[Mat], rng: &mut ChaCha8Rng, field: &FieldRef, dim: usize) -> Mat {
    let len = rng.gen_range(1..=MAX_WORD_LEN);
    let mut m = Mat::identity(field, dim);
    for _ in 0..len {
        m = m.mul(&gens[rng.gen_range(0..gens.len())]);
    }
    m
}

/// `c_1 W_1 + c_2 W_2 + c_3 g` with random words `W_i` and generator `g`.
fn random_algebra_element(gens: &[Mat], rng: &mut ChaCha8Rng, field: &FieldRef, dim: usize) -> Mat {
    let w1 = word_product(gens, rng, field, dim);
    let w2 = word_product(gens, rng, field, dim);
    let g = &gens[rng.gen_range(0..gens.len())];
    w1.scale(field.random_nonzero(rng))
        .add(&w2.scale(field.random(rng)))
        .add(&g.scale(field.random(rng)))
}

fn test_element(
    gens: &[Mat],
    transposes: &[Mat],
    a: &Mat,
    attempt: usize,
) -> Result<Option<Irreducibility>, MeataxeError> {
    let field = a.field();
    let dim = a.rows();
    let cp = a.char_poly()?;
    let mut factors: Vec<Poly> = cp.factor()?.into_iter().map(|(f, _)| f).collect();
    factors.sort_by_key(|f| f.degree());
    for f in factors {
        let n = a.eval_poly(&f);
        let ker = n.kernel();
        let nullity = ker.cols();
        let v = ker.column(0);
        let s = spin(gens, field, dim, &[v]);
        if !s.is_full() {
            return Ok(Some(Irreducibility::Reducible(s)));
        }
        let kt = n.transpose().kernel();
        let w = kt.column(0);
        let t = spin(transposes, field, dim, &[w]);
        if !t.is_full() {
            return Ok(Some(Irreducibility::Reducible(t.annihilator())));
        }
        let deg = f.degree().unwrap_or(0);
        if nullity == deg {
            return Ok(Some(Irreducibility::Irreducible(Certificate::Norton {
                attempt,
                factor_degree: deg,
                nullity,
            })));
        }
    }
    Ok(None)
}

fn line_count(q: u64, dim: usize) -> Option<u64> {
    let mut total: u64 = 0;
    let mut pw: u64 = 1;
    for _ in 0..dim {
        total = total.checked_add(pw)?;
        pw = pw.checked_mul(q)?;
    }
    Some(total)
}

/// Spins one vector per line (first nonzero coordinate 1).
fn exhaustive(gens: &[Mat], field: &FieldRef, dim: usize) -> Option<Irreducibility> {
    let lines = line_count(field.order(), dim).filter(|&c| c <= EXHAUSTIVE_LINES)?;
    let elems: Vec<Scalar> = field.elements().collect();
    let q = elems.len();
    for lead in 0..dim {
        let tail = dim - lead - 1;
        let count = q.pow(tail as u32);
        for idx in 0..count {
            let mut v = vec![Scalar::ZERO; dim];
            v[lead] = Scalar::ONE;
            let mut x = idx;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = elems[x % q];
                x /= q;
            }
            let s = spin(gens, field, dim, &[v]);
            if !s.is_full() {
                return Some(Irreducibility::Reducible(s));
            }
        }
    }
    Some(Irreducibility::Irreducible(Certificate::Exhaustive {
        lines,
    }))
}

/// MeatAxe irreducibility test. Deterministic for a given seed.
pub fn is_irreducible(rep: &Rep, seed: u64) -> Result<Irreducibility, MeataxeError> {
    let dim = rep.dim();
    let field = rep.field();
    if dim == 0 {
        return Err(MeataxeError::ZeroModule);
    }
    if dim == 1 {
        return Ok(Irreducibility::Irreducible(Certificate::OneDimensional));
    }
    let gens = rep.generators();
    if gens.is_empty() {
        let e1 = {
            let mut v = vec![Scalar::ZERO; dim];
            v[0] = Scalar::ONE;
            v
        };
        return Ok(Irreducibility::Reducible(Subspace::spanned_by(
            field,
            dim,
            [e1],
        )));
    }
    let transposes: Vec<Mat> = gens.iter().map(|g| g.transpose()).collect();
    // single generators are cheap and often decisive
    for g in gens {
        if let Some(res) = test_element(gens, &transposes, g, 0)? {
            return Ok(res);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=RANDOM_ATTEMPTS {
        let a = random_algebra_element(gens, &mut rng, field, dim);
        if let Some(res) = test_element(gens, &transposes, &a, attempt)? {
            return Ok(res);
        }
    }
    exhaustive(gens, field, dim).ok_or(MeataxeError::Inconclusive {
        dim,
        attempts: RANDOM_ATTEMPTS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffla::Field;
    use crate::grouprep::{borel_group, cyclic_group, semidirect_group};

    #[test]
    fn standard_borel_rep_has_fixed_line() {
        let f = Field::new(5, 1).unwrap();
        let g = borel_group(&f, 3, &[]).unwrap();
        let r = Rep::standard(&g).unwrap();
        match is_irreducible(&r, 0).unwrap() {
            Irreducibility::Reducible(s) => {
                assert!(s.dim() > 0 && s.dim() < 3);
                assert!(r.generators().iter().all(|m| s.is_invariant_under(m)));
            }
            other => panic!("expected reducible, got {other:?}"),
        }
        let e1 = vec![Scalar::ONE, Scalar::ZERO, Scalar::ZERO];
        assert_eq!(spin(r.generators(), &f, 3, &[e1]).dim(), 1);
    }

    #[test]
    fn one_dimensional_is_irreducible() {
        let f = Field::new(5, 1).unwrap();
        let g = cyclic_group(4).unwrap();
        let r = Rep::character(&g, &f, &[f.from_int(2)]).unwrap();
        assert!(is_irreducible(&r, 0).unwrap().is_irreducible());
    }

    #[test]
    fn regular_rep_of_cyclic_group_reducible() {
        let f = Field::new(3, 4).unwrap();
        let g = cyclic_group(5).unwrap();
        let r = Rep::regular(&g, &f, 100).unwrap();
        assert!(!is_irreducible(&r, 0).unwrap().is_irreducible());
        assert_eq!(fixed_space(&r).dim(), 1);
    }

    #[test]
    fn two_dim_irreducible_over_small_field() {
        // S3 acting on the sum-zero plane over GF(2) is irreducible
        let f = Field::new(2, 1).unwrap();
        let g = semidirect_group(3, 2).unwrap();
        let a = Mat::from_ints(&f, &[&[0, 1], &[1, 1]]);
        let t = Mat::from_ints(&f, &[&[0, 1], &[1, 0]]);
        let r = Rep::new(g, f.clone(), vec![a, t]).unwrap();
        assert!(is_irreducible(&r, 0).unwrap().is_irreducible());
        assert!(exhaustive(r.generators(), &f, 2).unwrap().is_irreducible());
    }
}
