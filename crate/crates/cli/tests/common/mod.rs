//! Brute-force invariant-subspace enumeration over small prime fields.
//! Vectors of `F_p^d` are numbered in base `p` and subspaces are bitsets of
//! vector numbers, so this needs `p^d <= 128`.

#![allow(dead_code)]

/// Generator matrices as row-major residues acting on column vectors.
pub type Gens = Vec<Vec<Vec<u32>>>;

pub struct Space {
    pub p: u32,
    pub d: usize,
    pub vectors: Vec<Vec<u32>>,
}

impl Space {
    pub fn new(p: u32, d: usize) -> Space {
        let n = (p as usize).pow(d as u32);
        assert!(n <= 128, "p^d too large for the bitset oracle");
        let vectors = (0..n)
            .map(|mut x| {
                (0..d)
                    .map(|_| {
                        let c = (x % p as usize) as u32;
                        x /= p as usize;
                        c
                    })
                    .collect()
            })
            .collect();
        Space { p, d, vectors }
    }

    pub fn index(&self, v: &[u32]) -> usize {
        v.iter()
            .rev()
            .fold(0, |acc, &c| acc * self.p as usize + c as usize)
    }

    fn add_scaled(&self, a: &[u32], c: u32, b: &[u32]) -> Vec<u32> {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| (x + c * y) % self.p)
            .collect()
    }

    pub fn apply(&self, m: &[Vec<u32>], v: &[u32]) -> Vec<u32> {
        m.iter()
            .map(|row| row.iter().zip(v).map(|(&a, &b)| a * b).sum::<u32>() % self.p)
            .collect()
    }

    /// Linear span of a set together with one more vector.
    fn span_with(&self, set: u128, v: &[u32]) -> u128 {
        let mut out = set;
        for x in members(set) {
            for c in 1..self.p {
                out |= 1 << self.index(&self.add_scaled(&self.vectors[x], c, v));
            }
        }
        out
    }

    /// Smallest invariant subspace containing `set` (a subspace) and `v`.
    pub fn closure(&self, gens: &Gens, set: u128, v: &[u32]) -> u128 {
        let mut s = if set >> self.index(v) & 1 == 1 {
            set
        } else {
            self.span_with(set, v)
        };
        loop {
            let mut grown = false;
            for x in members(s) {
                for g in gens {
                    let y = self.apply(g, &self.vectors[x]);
                    if s >> self.index(&y) & 1 == 0 {
                        s = self.span_with(s, &y);
                        grown = true;
                    }
                }
            }
            if !grown {
                return s;
            }
        }
    }

    pub fn zero(&self) -> u128 {
        1
    }

    pub fn full(&self) -> u128 {
        let n = self.vectors.len();
        if n == 128 {
            u128::MAX
        } else {
            (1u128 << n) - 1
        }
    }

    /// Every invariant subspace.
    pub fn invariant_subspaces(&self, gens: &Gens) -> Vec<u128> {
        let mut all = vec![self.zero()];
        let mut i = 0;
        while i < all.len() {
            let w = all[i];
            for v in 0..self.vectors.len() {
                if w >> v & 1 == 0 {
                    let u = self.closure(gens, w, &self.vectors[v]);
                    if !all.contains(&u) {
                        all.push(u);
                    }
                }
            }
            i += 1;
        }
        all
    }

    /// Vectors of `upper` extending a basis of `lower`.
    fn extension_basis(&self, lower: u128, upper: u128) -> Vec<Vec<u32>> {
        let mut cur = lower;
        let mut out = Vec::new();
        for x in members(upper) {
            if cur >> x & 1 == 0 {
                cur = self.span_with(cur, &self.vectors[x]);
                out.push(self.vectors[x].clone());
            }
        }
        out
    }

    /// Action on `upper / lower` in the basis from `extension_basis`, found
    /// by trying every coefficient vector.
    pub fn quotient(&self, gens: &Gens, lower: u128, upper: u128) -> Gens {
        let basis = self.extension_basis(lower, upper);
        let m = basis.len();
        let coeffs = Space::new(self.p, m);
        gens.iter()
            .map(|g| {
                let cols: Vec<Vec<u32>> = basis
                    .iter()
                    .map(|b| {
                        let gb = self.apply(g, b);
                        coeffs
                            .vectors
                            .iter()
                            .find(|c| {
                                let mut r = gb.clone();
                                for (ci, bi) in c.iter().zip(&basis) {
                                    r = self.add_scaled(&r, self.p - ci, bi);
                                }
                                lower >> self.index(&r) & 1 == 1
                            })
                            .expect("upper is invariant")
                            .clone()
                    })
                    .collect();
                (0..m)
                    .map(|i| (0..m).map(|j| cols[j][i]).collect())
                    .collect()
            })
            .collect()
    }
}

pub fn members(set: u128) -> impl Iterator<Item = usize> {
    (0..128).filter(move |i| set >> i & 1 == 1)
}

/// Composition factors of a greedy maximal chain of invariant subspaces.
pub fn composition_factors(p: u32, gens: &Gens) -> Vec<Gens> {
    let d = gens[0].len();
    let space = Space::new(p, d);
    let subs = space.invariant_subspaces(gens);
    let mut cur = space.zero();
    let mut out = Vec::new();
    while cur != space.full() {
        let next = *subs
            .iter()
            .filter(|&&w| w != cur && w & cur == cur)
            .min_by_key(|w| w.count_ones())
            .expect("the whole space is invariant");
        out.push(space.quotient(gens, cur, next));
        cur = next;
    }
    out
}

/// Whether some invertible `X` satisfies `X A_g = B_g X` for every generator.
pub fn isomorphic(p: u32, a: &Gens, b: &Gens) -> bool {
    let m = a[0].len();
    if m != b[0].len() {
        return false;
    }
    let vecs = Space::new(p, m);
    let entries = Space::new(p, m * m).vectors;
    entries.iter().any(|flat| {
        let x: Vec<Vec<u32>> = flat.chunks(m).map(|r| r.to_vec()).collect();
        let invertible = vecs
            .vectors
            .iter()
            .skip(1)
            .all(|v| vecs.apply(&x, v).iter().any(|&c| c != 0));
        invertible
            && a.iter().zip(b).all(|(ga, gb)| {
                (0..m).all(|i| {
                    (0..m).all(|j| {
                        let xa: u32 = (0..m).map(|k| x[i][k] * ga[k][j]).sum::<u32>() % p;
                        let bx: u32 = (0..m).map(|k| gb[i][k] * x[k][j]).sum::<u32>() % p;
                        xa == bx
                    })
                })
            })
    })
}
