//! Exhaustive computation of the signature set `J` and of the image of
//! the cut map.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use super::{enumerate_cut, CutConvention, JhError};
use crate::ffla::FieldRef;
use crate::grouprep::{lbar_tensor, levi_center, Partition, Rep};
use crate::meataxe::MeataxeError;

/// Largest `n` accepted by default.
pub const DEFAULT_N_CAP: usize = 9;
/// Above this many subset families (or cut families) the counts are
/// accumulated per degree instead of family by family.
pub const LITERAL_LIMIT: u128 = 30_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnumerationMethod {
    /// One step per subset family.
    Literal,
    /// Families grouped by their per-block counts and convolved degree by degree.
    Convolution,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureSet {
    pub partition: Partition,
    /// Signature `μ` to number of eigenvectors with that signature.
    pub counts: BTreeMap<Vec<usize>, u64>,
    pub method: EnumerationMethod,
}

/// Mixed-radix layout for signatures: `μ_l ∈ [0, (n-1) n_l]`.
struct Dense {
    strides: Vec<usize>,
    radices: Vec<usize>,
    size: usize,
}

impl Dense {
    fn new(p: &Partition) -> Dense {
        let n = p.n();
        let radices: Vec<usize> = p.blocks().iter().map(|&b| (n - 1) * b + 1).collect();
        let mut strides = Vec::with_capacity(radices.len());
        let mut s = 1;
        for &r in &radices {
            strides.push(s);
            s *= r;
        }
        Dense {
            strides,
            radices,
            size: s,
        }
    }

    fn decode(&self, idx: usize) -> Vec<usize> {
        self.strides
            .iter()
            .zip(&self.radices)
            .map(|(&s, &r)| idx / s % r)
            .collect()
    }

    fn encode(&self, mu: &[usize]) -> usize {
        mu.iter().zip(&self.strides).map(|(m, s)| m * s).sum()
    }
}

fn families_count(n: usize) -> u128 {
    (1..n)
        .map(|i| (0..i).fold(1u128, |acc, t| acc * (n - t) as u128 / (t + 1) as u128))
        .product()
}

fn accumulate(levels: &[Vec<usize>], base: usize, counts: &mut [u64]) {
    match levels.split_first() {
        None => counts[base] += 1,
        Some((first, [])) => {
            for &d in first {
                counts[base + d] += 1;
            }
        }
        Some((first, rest)) => {
            for &d in first {
                accumulate(rest, base + d, counts);
            }
        }
    }
}

/// Iterates every `(I_1, ..., I_{n-1})` with `#I_i = i`.
pub fn signatures_literal(p: &Partition) -> SignatureSet {
    let n = p.n();
    let dense = Dense::new(p);
    let block_of = p.block_of();
    let levels: Vec<Vec<usize>> = (1..n)
        .map(|i| {
            (0u32..1 << n)
                .filter(|m| m.count_ones() as usize == i)
                .map(|m| {
                    (0..n)
                        .filter(|r| m >> r & 1 == 1)
                        .map(|r| dense.strides[block_of[r]])
                        .sum()
                })
                .collect()
        })
        .collect();
    let mut counts = vec![0u64; dense.size];
    accumulate(&levels, 0, &mut counts);
    let counts = counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(i, &c)| (dense.decode(i), c))
        .collect();
    SignatureSet {
        partition: p.clone(),
        counts,
        method: EnumerationMethod::Literal,
    }
}

fn binom(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, t| acc * (n - t) as u64 / (t + 1) as u64)
}

/// Groups the `i`-subsets by their block counts `(j_l)`, each class having
/// `∏ C(n_l, j_l)` members, and convolves over `i`.
pub fn signatures_convolution(p: &Partition) -> SignatureSet {
    let n = p.n();
    let mut acc: HashMap<Vec<usize>, u64> = HashMap::from([(vec![0; p.k()], 1)]);
    for i in 1..n {
        let cuts = enumerate_cut(i, p, CutConvention::ZeroAllowed).expect("i < n");
        let weighted: Vec<(Vec<usize>, u64)> = cuts
            .into_iter()
            .map(|j| {
                let w = j
                    .iter()
                    .zip(p.blocks())
                    .map(|(&a, &b)| binom(b, a))
                    .product();
                (j, w)
            })
            .collect();
        let mut next: HashMap<Vec<usize>, u64> = HashMap::new();
        for (mu, c) in &acc {
            for (j, w) in &weighted {
                let key: Vec<usize> = mu.iter().zip(j).map(|(a, b)| a + b).collect();
                *next.entry(key).or_insert(0) += c * w;
            }
        }
        acc = next;
    }
    SignatureSet {
        partition: p.clone(),
        counts: acc.into_iter().collect(),
        method: EnumerationMethod::Convolution,
    }
}

pub fn enumerate_signatures(p: &Partition) -> Result<SignatureSet, JhError> {
    enumerate_signatures_with(p, DEFAULT_N_CAP)
}

pub fn enumerate_signatures_with(p: &Partition, cap: usize) -> Result<SignatureSet, JhError> {
    let n = p.n();
    if n > cap {
        return Err(JhError::CapExceeded { n, cap });
    }
    Ok(if families_count(n) <= LITERAL_LIMIT {
        signatures_literal(p)
    } else {
        signatures_convolution(p)
    })
}

/// `{Σ_i j_i : j_i ∈ Cut_i}`, one step per cut family when feasible.
pub fn cut_image(p: &Partition) -> Result<BTreeSet<Vec<usize>>, JhError> {
    let n = p.n();
    let cuts: Vec<Vec<Vec<usize>>> = (1..n)
        .map(|i| enumerate_cut(i, p, CutConvention::ZeroAllowed))
        .collect::<Result<_, _>>()?;
    let total: u128 = cuts.iter().map(|c| c.len() as u128).product();
    if total <= LITERAL_LIMIT {
        let dense = Dense::new(p);
        let levels: Vec<Vec<usize>> = cuts
            .iter()
            .map(|c| c.iter().map(|j| dense.encode(j)).collect())
            .collect();
        let mut hits = vec![0u64; dense.size];
        accumulate(&levels, 0, &mut hits);
        return Ok(hits
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, _)| dense.decode(i))
            .collect());
    }
    let mut acc: BTreeSet<Vec<usize>> = BTreeSet::from([vec![0; p.k()]]);
    for level in &cuts {
        acc = acc
            .iter()
            .flat_map(|mu| {
                level
                    .iter()
                    .map(move |j| mu.iter().zip(j).map(|(a, b)| a + b).collect())
            })
            .collect();
    }
    Ok(acc)
}

/// Number of distinct characters by which the centre of the Levi subgroup
/// acts on `Λ^1 ⊗ ... ⊗ Λ^{n-1}` of the standard representation, read off
/// the diagonals of the concrete matrices.
pub fn eigencharacter_count(p: &Partition, field: &FieldRef) -> Result<usize, JhError> {
    let group = levi_center(field, p.blocks())?;
    let lbar = lbar_tensor(&Rep::standard(&group)?)?;
    let d = lbar.dim();
    for m in lbar.generators() {
        for r in 0..d {
            if m.row(r)
                .iter()
                .enumerate()
                .any(|(c, x)| c != r && !x.is_zero())
            {
                return Err(JhError::Meataxe(MeataxeError::Inconsistent(
                    "central torus does not act diagonally".into(),
                )));
            }
        }
    }
    let chars: BTreeSet<Vec<u32>> = (0..d)
        .map(|x| lbar.generators().iter().map(|m| m.get(x, x).0).collect())
        .collect();
    Ok(chars.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffla::Field;

    fn part(b: &[usize]) -> Partition {
        Partition::new(b.to_vec()).unwrap()
    }

    #[test]
    fn signature_examples() {
        let s = enumerate_signatures(&part(&[1, 1, 1])).unwrap();
        assert_eq!(s.counts.len(), 7);
        assert_eq!(s.counts[&vec![1, 1, 1]], 3);
        let s = enumerate_signatures(&part(&[1, 2])).unwrap();
        let keys: Vec<Vec<usize>> = s.counts.keys().cloned().collect();
        assert_eq!(keys, vec![vec![0, 3], vec![1, 2], vec![2, 1]]);
        assert_eq!(enumerate_signatures(&part(&[4])).unwrap().counts.len(), 1);
        assert!(enumerate_signatures_with(&part(&[5, 5]), 9).is_err());
    }

    #[test]
    fn literal_and_convolution_agree() {
        for n in 2..=6 {
            for p in Partition::all_of(n) {
                assert_eq!(
                    signatures_literal(&p).counts,
                    signatures_convolution(&p).counts
                );
            }
        }
    }

    #[test]
    fn signature_degree() {
        for p in Partition::all_of(5) {
            for mu in enumerate_signatures(&p).unwrap().counts.keys() {
                assert_eq!(mu.iter().sum::<usize>(), 10);
            }
        }
    }

    #[test]
    fn eigencharacters_small() {
        let f = Field::new(11, 1).unwrap();
        assert_eq!(eigencharacter_count(&part(&[1, 1, 1]), &f).unwrap(), 7);
        assert_eq!(eigencharacter_count(&part(&[1, 2]), &f).unwrap(), 3);
    }
}
