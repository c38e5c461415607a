//! Brute-force reference implementations shared by the integration tests.
//! Nothing here calls into the algorithms under test beyond basic field
//! element encoding.

#![allow(dead_code)]

use std::collections::BTreeSet;

/// Trial division.
pub fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Schoolbook product of coefficient vectors modulo a monic modulus
/// (low-degree first), coefficients mod `p`.
pub fn poly_mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let r = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for d in (r..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        for (t, &m) in modulus.iter().enumerate() {
            let idx = d - r + t;
            prod[idx] = (prod[idx] + (p as u64 - c) * m as u64) % p as u64;
        }
    }
    prod.truncate(r);
    prod.into_iter().map(|x| x as u32).collect()
}

/// Every `(I_1, ..., I_{n-1})` with `#I_i = i`, reduced to the signature
/// `μ_l = Σ_i #(I_i ∩ block_l)`.
pub fn signatures_by_brute_force(blocks: &[usize]) -> BTreeSet<Vec<usize>> {
    let n: usize = blocks.iter().sum();
    let mut block_of = Vec::new();
    for (l, &b) in blocks.iter().enumerate() {
        block_of.extend(std::iter::repeat_n(l, b));
    }
    let subsets_by_size: Vec<Vec<u32>> = (0..=n)
        .map(|i| {
            (0u32..1 << n)
                .filter(|m| m.count_ones() as usize == i)
                .collect()
        })
        .collect();
    let mut out = BTreeSet::new();
    fn rec(
        i: usize,
        n: usize,
        mu: &mut Vec<usize>,
        by_size: &[Vec<u32>],
        block_of: &[usize],
        out: &mut BTreeSet<Vec<usize>>,
    ) {
        if i == n {
            out.insert(mu.clone());
            return;
        }
        for &m in &by_size[i] {
            for r in 0..n {
                if m >> r & 1 == 1 {
                    mu[block_of[r]] += 1;
                }
            }
            rec(i + 1, n, mu, by_size, block_of, out);
            for r in 0..n {
                if m >> r & 1 == 1 {
                    mu[block_of[r]] -= 1;
                }
            }
        }
    }
    let mut mu = vec![0; blocks.len()];
    rec(1, n, &mut mu, &subsets_by_size, &block_of, &mut out);
    out
}

/// All tuples in `∏ [lo, b_l]` summing to `i`.
pub fn cuts_by_brute_force(blocks: &[usize], i: usize, lo: usize) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    let total: usize = blocks.iter().map(|b| b + 1).product();
    for mut code in 0..total {
        let mut t = Vec::with_capacity(blocks.len());
        for &b in blocks {
            t.push(code % (b + 1));
            code /= b + 1;
        }
        if t.iter().sum::<usize>() == i && t.iter().all(|&x| x >= lo) {
            out.insert(t);
        }
    }
    out
}

/// Ordered compositions of `n`.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `(Z/l) ⋊ <p>` as pairs `(a, t)` with `(a,t)(a',t') = (a + t a', t t')`.
pub fn semidirect_elements(ell: u64, p: u64) -> Vec<(u64, u64)> {
    let mut k_group = vec![1u64];
    let mut x = p % ell;
    while x != 1 {
        k_group.push(x);
        x = x * p % ell;
    }
    let mut out = Vec::new();
    for a in 0..ell {
        for &t in &k_group {
            out.push((a, t));
        }
    }
    out
}

pub fn semidirect_mul(ell: u64, x: (u64, u64), y: (u64, u64)) -> (u64, u64) {
    ((x.0 + x.1 * y.0) % ell, x.1 * y.1 % ell)
}

/// Number of conjugacy classes by conjugating with every element.
pub fn conjugacy_classes(ell: u64, p: u64) -> usize {
    let elems = semidirect_elements(ell, p);
    let inv = |x: (u64, u64)| {
        *elems
            .iter()
            .find(|&&y| semidirect_mul(ell, x, y) == (0, 1))
            .unwrap()
    };
    let mut classes: BTreeSet<BTreeSet<(u64, u64)>> = BTreeSet::new();
    for &x in &elems {
        let class: BTreeSet<(u64, u64)> = elems
            .iter()
            .map(|&g| semidirect_mul(ell, semidirect_mul(ell, g, x), inv(g)))
            .collect();
        classes.insert(class);
    }
    classes.len()
}
