//! Cut sets, isotypic signatures and the counting comparison between them.

mod signatures;

pub use signatures::{
    cut_image, eigencharacter_count, enumerate_signatures, enumerate_signatures_with,
    EnumerationMethod, SignatureSet, DEFAULT_N_CAP, LITERAL_LIMIT,
};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::ffla::FflaError;
use crate::grouprep::{exterior_power, GroupError, Partition, Rep};
use crate::meataxe::{composition_series, MeataxeError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JhError {
    #[error("exterior degree {i} out of range for n = {n}")]
    DegreeOutOfRange { i: usize, n: usize },
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("malformed cut family: {0}")]
    BadCutFamily(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Meataxe(#[from] MeataxeError),
    #[error(transparent)]
    Field(#[from] FflaError),
}

/// Which tuples count as cuts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CutConvention {
    /// `0 <= j_l <= n_l`.
    ZeroAllowed,
    /// `1 <= j_l <= n_l`, as literally written in the definition.
    Strict,
}

/// All `(j_l)` with `sum j_l = i` and the convention's bounds, in
/// descending lexicographic order.
pub fn enumerate_cut(
    i: usize,
    partition: &Partition,
    convention: CutConvention,
) -> Result<Vec<Vec<usize>>, JhError> {
    let n = partition.n();
    if i > n {
        return Err(JhError::DegreeOutOfRange { i, n });
    }
    let lo = match convention {
        CutConvention::ZeroAllowed => 0,
        CutConvention::Strict => 1,
    };
    let blocks = partition.blocks();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(blocks.len());
    fn go(
        blocks: &[usize],
        lo: usize,
        rest: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let l = cur.len();
        if l == blocks.len() {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let room: usize = blocks[l + 1..].iter().sum();
        for j in (lo..=blocks[l].min(rest)).rev() {
            if rest - j > room {
                continue;
            }
            cur.push(j);
            go(blocks, lo, rest - j, cur, out);
            cur.pop();
        }
    }
    go(blocks, lo, i, &mut cur, &mut out);
    Ok(out)
}

/// `∏_{1<=i<n} #Cut_i` under the convention.
pub fn prod_cut(partition: &Partition, convention: CutConvention) -> u128 {
    (1..partition.n())
        .map(|i| enumerate_cut(i, partition, convention).map_or(0, |c| c.len() as u128))
        .product()
}

/// Image of one cut per degree: `μ_l = Σ_i j_{i,l}`, with the witness family
/// `I_i` = the first `j_{i,l}` indices of every block (1-based).
pub fn cut_to_signature(
    partition: &Partition,
    tuples: &[Vec<usize>],
) -> Result<(Vec<usize>, Vec<Vec<usize>>), JhError> {
    let n = partition.n();
    let k = partition.k();
    if tuples.len() + 1 != n {
        return Err(JhError::BadCutFamily(format!(
            "expected {} tuples, got {}",
            n - 1,
            tuples.len()
        )));
    }
    let starts = partition.starts();
    let mut mu = vec![0; k];
    let mut family = Vec::with_capacity(tuples.len());
    for (idx, t) in tuples.iter().enumerate() {
        let i = idx + 1;
        if t.len() != k
            || t.iter().sum::<usize>() != i
            || t.iter().zip(partition.blocks()).any(|(j, b)| j > b)
        {
            return Err(JhError::BadCutFamily(format!("{t:?} is not in Cut_{i}")));
        }
        let mut set = Vec::with_capacity(i);
        for l in 0..k {
            mu[l] += t[l];
            set.extend((0..t[l]).map(|r| starts[l] + r + 1));
        }
        family.push(set);
    }
    Ok((mu, family))
}

/// `μ` of a subset family (1-based indices).
pub fn family_signature(partition: &Partition, family: &[Vec<usize>]) -> Vec<usize> {
    let block_of = partition.block_of();
    let mut mu = vec![0; partition.k()];
    for set in family {
        for &r in set {
            mu[block_of[r - 1]] += 1;
        }
    }
    mu
}

/// Cut tuples `(#(I_i ∩ block_l))_l` read off a subset family.
pub fn family_cuts(partition: &Partition, family: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let block_of = partition.block_of();
    family
        .iter()
        .map(|set| {
            let mut t = vec![0; partition.k()];
            for &r in set {
                t[block_of[r - 1]] += 1;
            }
            t
        })
        .collect()
}

/// Two subset families with different cuts and the same signature.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollisionWitness {
    pub families: [Vec<Vec<usize>>; 2],
    pub cuts: [Vec<Vec<usize>>; 2],
    pub signature: Vec<usize>,
}

fn witness_from(
    partition: &Partition,
    first: [Vec<usize>; 2],
    second: [Vec<usize>; 2],
) -> CollisionWitness {
    let n = partition.n();
    let tail: Vec<Vec<usize>> = (3..n).map(|i| (1..=i).collect()).collect();
    let mk = |head: [Vec<usize>; 2]| {
        let mut f: Vec<Vec<usize>> = head.into_iter().collect();
        f.extend(tail.iter().cloned());
        f
    };
    let (a, b) = (mk(first), mk(second));
    let signature = family_signature(partition, &a);
    CollisionWitness {
        cuts: [family_cuts(partition, &a), family_cuts(partition, &b)],
        families: [a, b],
        signature,
    }
}

impl CollisionWitness {
    /// Different cut families, same signature.
    pub fn is_valid(&self, partition: &Partition) -> bool {
        self.cuts[0] != self.cuts[1]
            && family_signature(partition, &self.families[0])
                == family_signature(partition, &self.families[1])
    }
}

/// Non-injectivity witness for `k >= 2`, `n > 2`. For `k = 2` this is the
/// two-block construction; for `k >= 3` it swaps the first indices of the
/// first three blocks, which reduces to `({1},{2,3})` vs `({2},{1,3})`
/// when those indices are `1, 2, 3`.
pub fn collision_witness(partition: &Partition) -> Option<CollisionWitness> {
    let (n, k) = (partition.n(), partition.k());
    if k < 2 || n <= 2 {
        return None;
    }
    let s: Vec<usize> = partition.starts().iter().map(|x| x + 1).collect();
    let w = if k == 2 {
        let l0 = partition.blocks().iter().position(|&b| b >= 2)?;
        let l1 = 1 - l0;
        witness_from(
            partition,
            [vec![s[l0]], sorted(vec![s[l1], s[l0] + 1])],
            [vec![s[l1]], vec![s[l0], s[l0] + 1]],
        )
    } else {
        witness_from(
            partition,
            [vec![s[0]], vec![s[1], s[2]]],
            [vec![s[1]], vec![s[0], s[2]]],
        )
    };
    Some(w)
}

/// The pattern `({1},{2,3},...)` vs `({2},{1,3},...)` taken literally.
pub fn literal_k3_witness(partition: &Partition) -> Option<CollisionWitness> {
    (partition.n() > 2)
        .then(|| witness_from(partition, [vec![1], vec![2, 3]], [vec![2], vec![1, 3]]))
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountingReport {
    pub partition: Vec<usize>,
    pub n: usize,
    pub k: usize,
    pub prod_cut: u128,
    pub prod_cut_strict: u128,
    pub card_j: usize,
    /// Every image of a cut family is a signature.
    pub image_in_j: bool,
    /// Every signature is an image.
    pub surjective: bool,
    pub bound_holds: bool,
    /// `#J < ∏ #Cut`.
    pub strict: bool,
    /// `k >= 2 and n > 2`.
    pub strict_expected: bool,
    pub collision_witness: Option<CollisionWitness>,
    pub witness_valid: Option<bool>,
    /// Whether `({1},{2,3},...)` vs `({2},{1,3},...)` is itself a collision.
    pub literal_k3_witness_valid: Option<bool>,
    /// `Σ` of eigenvector multiplicities; equals `∏ C(n,i)`.
    pub multiplicity_total: u128,
    pub families_total: u128,
    pub method: EnumerationMethod,
}

impl CountingReport {
    pub fn passes(&self) -> bool {
        self.image_in_j
            && self.surjective
            && self.bound_holds
            && self.strict == self.strict_expected
            && self.witness_valid != Some(false)
            && self.multiplicity_total == self.families_total
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

pub fn verify_counting_lemma(partition: &Partition, cap: usize) -> Result<CountingReport, JhError> {
    let n = partition.n();
    let sigs = enumerate_signatures_with(partition, cap)?;
    let image = cut_image(partition)?;
    let prod = prod_cut(partition, CutConvention::ZeroAllowed);
    let card_j = sigs.counts.len();
    let image_in_j = image.iter().all(|mu| sigs.counts.contains_key(mu));
    let surjective = sigs.counts.keys().all(|mu| image.contains(mu));
    let witness = collision_witness(partition);
    let witness_valid = witness
        .as_ref()
        .map(|w| w.is_valid(partition) && sigs.counts.contains_key(&w.signature));
    let literal = (partition.k() >= 3)
        .then(|| literal_k3_witness(partition))
        .flatten();
    Ok(CountingReport {
        partition: partition.blocks().to_vec(),
        n,
        k: partition.k(),
        prod_cut: prod,
        prod_cut_strict: prod_cut(partition, CutConvention::Strict),
        card_j,
        image_in_j,
        surjective,
        bound_holds: card_j as u128 <= prod,
        strict: (card_j as u128) < prod,
        strict_expected: partition.k() >= 2 && n > 2,
        collision_witness: witness,
        witness_valid,
        literal_k3_witness_valid: literal.map(|w| w.is_valid(partition)),
        multiplicity_total: sigs.counts.values().map(|&c| c as u128).sum(),
        families_total: (1..n).map(|i| binomial(n, i)).product(),
        method: sigs.method,
    })
}

/// Reports for every block decomposition of every `n` in `2..=n_max`,
/// computed in parallel, ordered by `(n, partition)`.
pub fn verify_all(n_max: usize, cap: usize) -> Result<Vec<CountingReport>, JhError> {
    let parts: Vec<Partition> = (2..=n_max).flat_map(Partition::all_of).collect();
    parts
        .par_iter()
        .map(|p| verify_counting_lemma(p, cap))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LowerBoundReport {
    pub partition: Vec<usize>,
    pub i: usize,
    pub factors: usize,
    pub cut: usize,
    pub cut_strict: usize,
    pub holds: bool,
    pub holds_strict: bool,
}

/// Composition length of `Λ^i` of a block-diagonal semisimple `rep`
/// against `#Cut_i` under both conventions.
pub fn jh_lower_bound_check(
    rep: &Rep,
    partition: &Partition,
    i: usize,
    seed: u64,
) -> Result<LowerBoundReport, JhError> {
    if partition.n() != rep.dim() {
        return Err(JhError::BadCutFamily(format!(
            "partition {partition} does not match dimension {}",
            rep.dim()
        )));
    }
    let cut = enumerate_cut(i, partition, CutConvention::ZeroAllowed)?.len();
    let cut_strict = enumerate_cut(i, partition, CutConvention::Strict)?.len();
    let factors = composition_series(&exterior_power(rep, i)?, seed)?
        .factors
        .len();
    Ok(LowerBoundReport {
        partition: partition.blocks().to_vec(),
        i,
        factors,
        cut,
        cut_strict,
        holds: factors >= cut,
        holds_strict: factors >= cut_strict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(b: &[usize]) -> Partition {
        Partition::new(b.to_vec()).unwrap()
    }

    #[test]
    fn cut_examples() {
        let z = CutConvention::ZeroAllowed;
        assert_eq!(
            enumerate_cut(1, &part(&[1, 1, 1]), z).unwrap(),
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]
        );
        assert_eq!(
            enumerate_cut(2, &part(&[1, 2]), z).unwrap(),
            vec![vec![1, 1], vec![0, 2]]
        );
        assert_eq!(
            enumerate_cut(3, &part(&[1, 2]), z).unwrap(),
            vec![vec![1, 2]]
        );
        assert!(enumerate_cut(1, &part(&[1, 2]), CutConvention::Strict)
            .unwrap()
            .is_empty());
        assert!(enumerate_cut(4, &part(&[1, 2]), z).is_err());
    }

    #[test]
    fn cut_to_signature_examples() {
        let (mu, fam) = cut_to_signature(&part(&[1, 2]), &[vec![1, 0], vec![1, 1]]).unwrap();
        assert_eq!(mu, vec![2, 1]);
        assert_eq!(fam, vec![vec![1], vec![1, 2]]);
        let p = part(&[1, 1, 1]);
        let a = cut_to_signature(&p, &[vec![1, 0, 0], vec![0, 1, 1]])
            .unwrap()
            .0;
        let b = cut_to_signature(&p, &[vec![0, 1, 0], vec![1, 0, 1]])
            .unwrap()
            .0;
        assert_eq!(a, vec![1, 1, 1]);
        assert_eq!(a, b);
        assert!(cut_to_signature(&p, &[vec![1, 0, 0]]).is_err());
    }

    #[test]
    fn counting_examples() {
        let r = verify_counting_lemma(&part(&[1, 1, 1]), DEFAULT_N_CAP).unwrap();
        assert_eq!((r.prod_cut, r.card_j), (9, 7));
        assert!(r.passes() && r.strict);
        let r = verify_counting_lemma(&part(&[1, 2]), DEFAULT_N_CAP).unwrap();
        assert_eq!((r.prod_cut, r.card_j), (4, 3));
        assert!(r.passes() && r.strict);
        assert_eq!(r.prod_cut_strict, 0);
        let r = verify_counting_lemma(&part(&[1, 1]), DEFAULT_N_CAP).unwrap();
        assert_eq!((r.prod_cut, r.card_j), (2, 2));
        assert!(r.passes() && !r.strict);
    }

    #[test]
    fn literal_witness_needs_distinct_blocks() {
        let w = literal_k3_witness(&part(&[2, 1, 1])).unwrap();
        assert!(!w.is_valid(&part(&[2, 1, 1])));
        assert!(collision_witness(&part(&[2, 1, 1]))
            .unwrap()
            .is_valid(&part(&[2, 1, 1])));
        assert!(literal_k3_witness(&part(&[1, 1, 1, 2]))
            .unwrap()
            .is_valid(&part(&[1, 1, 1, 2])));
    }

    #[test]
    fn all_small_partitions() {
        for r in verify_all(5, DEFAULT_N_CAP).unwrap() {
            assert!(r.passes(), "{r:?}");
        }
    }
}
