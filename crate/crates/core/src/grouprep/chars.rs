//! Character data `ω^a · unr(λ)` and Levi block partitions.

use serde::{Deserialize, Serialize};

use super::GroupError;
use crate::ffla::{FieldRef, Scalar};

/// A smooth character `ω^a · unr(λ)`, `a` taken mod `p - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CharData {
    pub a: u64,
    pub lambda: Scalar,
}

impl CharData {
    pub fn new(a: i64, lambda: Scalar, p: u64) -> Result<CharData, GroupError> {
        if lambda.is_zero() {
            return Err(GroupError::OutOfRange(
                "unramified value must be nonzero".into(),
            ));
        }
        Ok(CharData {
            a: a.rem_euclid((p - 1) as i64) as u64,
            lambda,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericityReport {
    pub generic: bool,
    /// Pairs `(i, j)` with `χ_i χ_j^{-1} ∈ {1, ω, ω^{-1}}`.
    pub offending: Vec<(usize, usize)>,
    /// Set for `p = 2`, where `ω` is trivial and the three exclusions coincide.
    pub degenerate: bool,
}

/// Whether all ratios `χ_i χ_j^{-1}` avoid `1` and `ω^{±1}`.
pub fn is_generic(chars: &[CharData], p: u64, field: &FieldRef) -> GenericityReport {
    let m = (p - 1) as i64;
    let mut offending = Vec::new();
    for i in 0..chars.len() {
        for j in 0..chars.len() {
            if i == j {
                continue;
            }
            let ratio = field
                .div(chars[i].lambda, chars[j].lambda)
                .expect("lambda is nonzero");
            if ratio != Scalar::ONE {
                continue;
            }
            let d = (chars[i].a as i64 - chars[j].a as i64).rem_euclid(m);
            if d == 0 || d == 1 % m || d == (m - 1) % m {
                offending.push((i, j));
            }
        }
    }
    GenericityReport {
        generic: offending.is_empty(),
        offending,
        degenerate: p == 2,
    }
}

/// Levi block sizes `(n_1, ..., n_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    blocks: Vec<usize>,
}

impl Partition {
    pub fn new(blocks: Vec<usize>) -> Result<Partition, GroupError> {
        if blocks.is_empty() || blocks.contains(&0) {
            return Err(GroupError::OutOfRange(format!(
                "block sizes must be positive: {blocks:?}"
            )));
        }
        Ok(Partition { blocks })
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().sum()
    }

    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    /// Block index of every coordinate `0..n`.
    pub fn block_of(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(l, &b)| std::iter::repeat_n(l, b))
            .collect()
    }

    /// First coordinate of each block.
    pub fn starts(&self) -> Vec<usize> {
        let mut s = 0;
        self.blocks
            .iter()
            .map(|&b| {
                let o = s;
                s += b;
                o
            })
            .collect()
    }

    /// All ordered block decompositions of `n`, in lexicographic order.
    pub fn all_of(n: usize) -> Vec<Partition> {
        fn go(rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition {
                    blocks: cur.clone(),
                });
                return;
            }
            for b in 1..=rest {
                cur.push(b);
                go(rest - b, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            go(n, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: Vec<String> = self.blocks.iter().map(|b| b.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffla::Field;

    fn chars(f: &FieldRef, a: [i64; 3], l: [i64; 3]) -> Vec<CharData> {
        (0..3)
            .map(|i| CharData::new(a[i], f.from_int(l[i]), 5).unwrap())
            .collect()
    }

    #[test]
    fn genericity_examples() {
        let f = Field::new(5, 1).unwrap();
        // 0 - 3 = 1 mod 4 with trivial unramified ratio
        let r = is_generic(&chars(&f, [0, 2, 3], [1, 1, 1]), 5, &f);
        assert!(!r.generic);
        assert!(r.offending.contains(&(0, 2)));
        assert!(is_generic(&chars(&f, [0, 2, 0], [1, 1, 2]), 5, &f).generic);
        assert!(!is_generic(&chars(&f, [1, 1, 3], [2, 2, 1]), 5, &f).generic);
        let f2 = Field::new(2, 2).unwrap();
        let c: Vec<CharData> = (0..3)
            .map(|i| CharData::new(0, f2.from_coeffs(&[i % 2, 1]).unwrap(), 2).unwrap())
            .collect();
        assert!(is_generic(&c, 2, &f2).degenerate);
    }

    #[test]
    fn compositions() {
        assert_eq!(Partition::all_of(3).len(), 4);
        assert_eq!(Partition::all_of(7).len(), 64);
        let p = Partition::new(vec![1, 2]).unwrap();
        assert_eq!(p.block_of(), vec![0, 1, 1]);
        assert_eq!(p.starts(), vec![0, 1]);
        assert!(Partition::new(vec![2, 0]).is_err());
    }
}
