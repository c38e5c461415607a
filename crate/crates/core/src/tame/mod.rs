//! Tame quotients `G_l = (Z/l) ⋊ <p>`: admissible primes, class counts,
//! the Frobenius dimension bound, the induced irreducible `σ_l` and the
//! reducibility of `Λ²σ_l`.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::ffla::{is_prime, FflaError, Field, FieldRef, Scalar, Subspace};
use crate::grouprep::{
    cyclic_character, cyclic_group, exterior_power, induce, multiplicative_order, semidirect_group,
    Element, GroupError, GroupRef, Homomorphism, Rep, DEFAULT_CLOSURE_CAP,
};
use crate::meataxe::{
    composition_series, hom_space, is_irreducible, Certificate, Irreducibility, MeataxeError,
};

/// Instances with a larger `#K` are tabulated without running the MeatAxe.
pub const DEFAULT_K_CAP: u64 = 16;
/// Largest group enumerated for explicit class counts.
pub const DEFAULT_GROUP_CAP: usize = 2000;
/// Largest group whose regular representation is decomposed as a cross-check.
pub const REGULAR_CHECK_LIMIT: u64 = 100;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TameError {
    #[error("p = 2 has no admissible l: every odd l has 2 | l - 1")]
    CharacteristicTwo,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{p} has order {k} mod {ell}, below 4")]
    SmallOrder { p: u64, ell: u64, k: u64 },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Meataxe(#[from] MeataxeError),
    #[error(transparent)]
    Field(#[from] FflaError),
}

/// The data `(p, l, #K_l, G_l)`.
#[derive(Clone, Debug, Serialize)]
pub struct TameInstance {
    pub p: u64,
    pub ell: u64,
    pub k_order: u64,
    #[serde(skip)]
    pub group: GroupRef,
}

/// `l ∤ p(p²−1)(p³−1)` and `p ∤ l − 1`.
pub fn is_admissible(p: u64, ell: u64) -> bool {
    if !is_prime(ell) || ell == p {
        return false;
    }
    let pp = p as u128;
    let prod = pp * (pp * pp - 1) * (pp * pp * pp - 1);
    !prod.is_multiple_of(ell as u128) && !(ell - 1).is_multiple_of(p)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl TameInstance {
    /// `G_l` for any pair of distinct primes, admissible or not.
    pub fn new(p: u64, ell: u64) -> Result<TameInstance, TameError> {
        let group = semidirect_group(ell, p)?;
        let k_order = multiplicative_order(p, ell).ok_or(TameError::NotPrime(ell))?;
        Ok(TameInstance {
            p,
            ell,
            k_order,
            group,
        })
    }

    pub fn is_admissible(&self) -> bool {
        is_admissible(self.p, self.ell)
    }

    pub fn order(&self) -> u64 {
        self.ell * self.k_order
    }

    /// `GF(p^{#K})`, which contains the `l`-th roots of unity.
    pub fn splitting_field(&self) -> Result<FieldRef, TameError> {
        Ok(Field::new(self.p, self.k_order as u32)?)
    }

    /// Degree of the smallest field containing both `l`-th and `#K`-th
    /// roots of unity, over which every irreducible of `G_l` is defined.
    pub fn full_splitting_degree(&self) -> u64 {
        let k = self.k_order;
        let r = if k == 1 {
            1
        } else {
            multiplicative_order(self.p % k, k).unwrap_or(1)
        };
        k / gcd(k, r) * r
    }

    /// `p^i mod l` for `i < #K`.
    pub fn orbit_exponents(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.k_order as usize);
        let mut x = 1;
        for _ in 0..self.k_order {
            out.push(x);
            x = x * self.p % self.ell;
        }
        out
    }
}

/// The first `count` admissible primes for `p`, in increasing order.
pub fn find_admissible_primes(p: u64, count: usize) -> Result<Vec<TameInstance>, TameError> {
    if !is_prime(p) {
        return Err(TameError::NotPrime(p));
    }
    if p == 2 {
        return Err(TameError::CharacteristicTwo);
    }
    let mut out = Vec::with_capacity(count);
    let mut lo = 2u64;
    while out.len() < count {
        let hi = lo + 4096;
        let found: Vec<u64> = (lo..hi)
            .into_par_iter()
            .filter(|&l| is_admissible(p, l))
            .collect();
        for ell in found {
            if out.len() == count {
                break;
            }
            let inst = TameInstance::new(p, ell)?;
            if inst.k_order < 4 {
                return Err(TameError::SmallOrder {
                    p,
                    ell,
                    k: inst.k_order,
                });
            }
            out.push(inst);
        }
        lo = hi;
    }
    Ok(out)
}

/// `#K + (l − 1)/#K`.
pub fn class_count(inst: &TameInstance) -> u64 {
    inst.k_order + (inst.ell - 1) / inst.k_order
}

/// Conjugacy classes of the enumerated group, as orbits under conjugation
/// by the generators.
pub fn explicit_class_count(inst: &TameInstance, cap: usize) -> Result<u64, TameError> {
    let g = &inst.group;
    let elems = g.enumerate(cap)?;
    let index: HashMap<&Element, usize> = elems.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let conj: Vec<(Element, Element)> = g
        .generators()
        .iter()
        .map(|s| (s.clone(), g.invert(s)))
        .collect();
    let mut seen = vec![false; elems.len()];
    let mut classes = 0;
    for start in 0..elems.len() {
        if seen[start] {
            continue;
        }
        classes += 1;
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for (s, si) in &conj {
                let y = g.multiply(&g.multiply(s, &elems[i]), si);
                let j = index[&y];
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    Ok(classes)
}

#[derive(Clone, Debug, Serialize)]
pub struct FrobeniusReport {
    pub order: u64,
    /// Least `m` with `#K + (l − 1) m² / #K ≥ l #K`.
    pub m_lower: u64,
    /// `#K · 1² + ((l − 1)/#K) · #K²`.
    pub accounted: u64,
    pub sum_of_squares_check: bool,
}

pub fn frobenius_bound(inst: &TameInstance) -> FrobeniusReport {
    let (k, ell) = (inst.k_order, inst.ell);
    // multiply the inequality through by #K
    let m_lower = (1..)
        .find(|m| k * k + (ell - 1) * m * m >= ell * k * k)
        .expect("m = #K satisfies it");
    let accounted = k + (ell - 1) / k * k * k;
    FrobeniusReport {
        order: inst.order(),
        m_lower,
        accounted,
        sum_of_squares_check: accounted == inst.order(),
    }
}

/// `Ind ψ^j` from `Z/l` over `field`, with transversal the powers of the
/// second generator.
pub fn build_sigma_with(inst: &TameInstance, field: &FieldRef, j: u64) -> Result<Rep, TameError> {
    let psi = cyclic_character(inst.ell, field, j)?;
    let emb = Homomorphism::new(
        cyclic_group(inst.ell)?,
        inst.group.clone(),
        vec![vec![(0, 1)]],
    )?;
    let t = &inst.group.generators()[1];
    let transversal: Vec<Element> = (0..inst.k_order as i64)
        .map(|i| inst.group.power(t, i))
        .collect();
    Ok(induce(&psi, &emb, &transversal, DEFAULT_CLOSURE_CAP)?)
}

/// `σ_l` over `GF(p^{#K})`.
pub fn build_sigma(inst: &TameInstance) -> Result<Rep, TameError> {
    build_sigma_with(inst, &inst.splitting_field()?, 1)
}

#[derive(Clone, Debug, Serialize)]
pub struct TameLambda2Report {
    pub p: u64,
    pub ell: u64,
    pub k_order: u64,
    pub dim_sigma: usize,
    pub dim_lambda2: usize,
    /// `m(m−1)/2 > m`.
    pub inequality_applicable: bool,
    pub sigma_certificate: Option<Certificate>,
    pub lambda2_reducible: bool,
    /// Dimension of the MeatAxe's proper invariant subspace.
    pub witness_dim: Option<usize>,
    pub witness_invariant: bool,
    /// Vectors of `Λ²σ` fixed by `Z/l`.
    pub fixed_space_dim: usize,
    /// `#{i < j : p^i + p^j ≡ 0 mod l}`.
    pub fixed_space_expected: usize,
    pub fixed_space_invariant: bool,
    /// Induction of the trivial character is reducible.
    pub negative_control_reducible: bool,
}

impl TameLambda2Report {
    pub fn passes(&self) -> bool {
        self.inequality_applicable
            && self.sigma_certificate.is_some()
            && self.lambda2_reducible
            && self.witness_invariant
            && self.fixed_space_dim == self.fixed_space_expected
            && self.fixed_space_invariant
            && self.negative_control_reducible
    }
}

fn invariant(s: &Subspace, rep: &Rep) -> bool {
    rep.generators().iter().all(|g| s.is_invariant_under(g))
}

pub fn expected_fixed_dim(inst: &TameInstance) -> usize {
    let e = inst.orbit_exponents();
    let mut n = 0;
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            if (e[i] + e[j]).is_multiple_of(inst.ell) {
                n += 1;
            }
        }
    }
    n
}

pub fn verify_lambda2_reducible(
    inst: &TameInstance,
    seed: u64,
) -> Result<TameLambda2Report, TameError> {
    let field = inst.splitting_field()?;
    let sigma = build_sigma_with(inst, &field, 1)?;
    let m = sigma.dim();
    let sigma_certificate = match is_irreducible(&sigma, seed)? {
        Irreducibility::Irreducible(c) => Some(c),
        Irreducibility::Reducible(_) => None,
    };
    let l2 = exterior_power(&sigma, 2)?;
    let (lambda2_reducible, witness_dim, witness_invariant) = match is_irreducible(&l2, seed)? {
        Irreducibility::Irreducible(_) => (false, None, false),
        Irreducibility::Reducible(w) => {
            let ok = w.dim() > 0 && w.dim() < l2.dim() && invariant(&w, &l2);
            (true, Some(w.dim()), ok)
        }
    };
    // Z/l is generated by the first generator
    let fixed =
        Subspace::column_space(&l2.generator(0).add_scalar(field.neg(Scalar::ONE)).kernel());
    let control = build_sigma_with(inst, &field, 0)?;
    Ok(TameLambda2Report {
        p: inst.p,
        ell: inst.ell,
        k_order: inst.k_order,
        dim_sigma: m,
        dim_lambda2: l2.dim(),
        inequality_applicable: m * (m.saturating_sub(1)) / 2 > m,
        sigma_certificate,
        lambda2_reducible,
        witness_dim,
        witness_invariant,
        fixed_space_dim: fixed.dim(),
        fixed_space_expected: expected_fixed_dim(inst),
        fixed_space_invariant: invariant(&fixed, &l2),
        negative_control_reducible: !is_irreducible(&control, seed)?.is_irreducible(),
    })
}

/// Every irreducible of `G_l` over the full splitting field: the `#K`
/// characters trivial on `Z/l`, then `Ind ψ^j` for one `j` per `<p>`-orbit
/// on `(Z/l)^×`.
pub fn irreducible_reps(inst: &TameInstance) -> Result<Vec<NamedRep>, TameError> {
    let field = Field::new(inst.p, inst.full_splitting_degree() as u32)?;
    let k = inst.k_order;
    let w = field
        .root_of_unity(k)
        .ok_or_else(|| GroupError::MissingRootOfUnity {
            n: k,
            field: format!("{field:?}"),
        })?;
    let mut out = Vec::new();
    for i in 0..k {
        out.push(NamedRep {
            label: format!("chi{i}"),
            rep: Rep::character(&inst.group, &field, &[Scalar::ONE, field.pow(w, i)])?,
        });
    }
    let mut seen = vec![false; inst.ell as usize];
    for j in 1..inst.ell {
        if seen[j as usize] {
            continue;
        }
        let mut x = j;
        for _ in 0..k {
            seen[x as usize] = true;
            x = x * inst.p % inst.ell;
        }
        out.push(NamedRep {
            label: format!("sigma{j}"),
            rep: build_sigma_with(inst, &field, j)?,
        });
    }
    Ok(out)
}

/// An irreducible with a display name: `chi{i}` sends the second
/// generator to `ω^i`, `sigma{j}` is induced from `ψ^j`.
#[derive(Clone, Debug)]
pub struct NamedRep {
    pub label: String,
    pub rep: Rep,
}

#[derive(Clone, Debug, Serialize)]
pub struct IrreducibleReport {
    pub field_degree: u64,
    pub labels: Vec<String>,
    pub dims: Vec<usize>,
    pub sum_of_squares: u64,
    pub order: u64,
    pub all_irreducible: bool,
    pub pairwise_non_isomorphic: bool,
    pub count_matches_classes: bool,
    /// Distinct factors and multiplicities of the regular representation,
    /// when the group is small enough to decompose it.
    pub regular_check: Option<bool>,
}

impl IrreducibleReport {
    pub fn passes(&self) -> bool {
        self.sum_of_squares == self.order
            && self.all_irreducible
            && self.pairwise_non_isomorphic
            && self.count_matches_classes
            && self.regular_check != Some(false)
    }
}

pub fn verify_irreducibles(
    inst: &TameInstance,
    seed: u64,
) -> Result<(Vec<NamedRep>, IrreducibleReport), TameError> {
    let named = irreducible_reps(inst)?;
    let irr: Vec<&Rep> = named.iter().map(|n| &n.rep).collect();
    let mut all_irreducible = true;
    for r in &irr {
        all_irreducible &= is_irreducible(r, seed)?.is_irreducible();
    }
    let mut distinct = true;
    for i in 0..irr.len() {
        for j in i + 1..irr.len() {
            if irr[i].dim() == irr[j].dim() && !hom_space(irr[i], irr[j])?.is_empty() {
                distinct = false;
            }
        }
    }
    let regular_check = if inst.order() <= REGULAR_CHECK_LIMIT {
        let reg = Rep::regular(&inst.group, irr[0].field(), DEFAULT_GROUP_CAP)?;
        let cs = composition_series(&reg, seed)?;
        let counts = cs.factor_counts();
        Some(counts.len() == irr.len() && counts.iter().all(|c| c.multiplicity == c.dim))
    } else {
        None
    };
    let dims: Vec<usize> = irr.iter().map(|r| r.dim()).collect();
    let report = IrreducibleReport {
        field_degree: inst.full_splitting_degree(),
        labels: named.iter().map(|n| n.label.clone()).collect(),
        sum_of_squares: dims.iter().map(|&d| (d * d) as u64).sum(),
        order: inst.order(),
        all_irreducible,
        pairwise_non_isomorphic: distinct,
        count_matches_classes: irr.len() as u64 == class_count(inst),
        regular_check,
        dims,
    };
    Ok((named, report))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowVerdict {
    /// The MeatAxe ran and found an invariant subspace of `Λ²σ`.
    Verified,
    /// The MeatAxe ran and the checks failed.
    Failed,
    /// `#K` above the cap; only the arithmetic is tabulated.
    Reported,
}

#[derive(Clone, Debug, Serialize)]
pub struct TameRow {
    pub ell: u64,
    pub k_order: u64,
    pub order: u64,
    pub classes: u64,
    pub dim_sigma: u64,
    pub dim_lambda2: u64,
    pub reducible: Option<bool>,
    pub verdict: RowVerdict,
    /// Running maximum of `#K` up to this row.
    pub k_envelope: u64,
    pub fixed_space_expected: usize,
}

/// One row per admissible prime; the MeatAxe runs when `#K ≤ k_cap`.
pub fn growth_table(
    p: u64,
    count: usize,
    k_cap: u64,
    seed: u64,
) -> Result<Vec<TameRow>, TameError> {
    let insts = find_admissible_primes(p, count)?;
    let mut rows: Vec<TameRow> = insts
        .par_iter()
        .map(|inst| {
            let k = inst.k_order;
            let (reducible, verdict) = if k <= k_cap {
                let rep = verify_lambda2_reducible(inst, seed)?;
                let v = if rep.passes() {
                    RowVerdict::Verified
                } else {
                    RowVerdict::Failed
                };
                (Some(rep.lambda2_reducible), v)
            } else {
                (None, RowVerdict::Reported)
            };
            Ok(TameRow {
                ell: inst.ell,
                k_order: k,
                order: inst.order(),
                classes: class_count(inst),
                dim_sigma: k,
                dim_lambda2: k * (k - 1) / 2,
                reducible,
                verdict,
                k_envelope: 0,
                fixed_space_expected: expected_fixed_dim(inst),
            })
        })
        .collect::<Result<_, TameError>>()?;
    let mut env = 0;
    for r in &mut rows {
        env = env.max(r.k_order);
        r.k_envelope = env;
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissible_primes_for_three() {
        let v = find_admissible_primes(3, 3).unwrap();
        let got: Vec<(u64, u64)> = v.iter().map(|i| (i.ell, i.k_order)).collect();
        assert_eq!(got, vec![(5, 4), (11, 5), (17, 16)]);
        assert!(!is_admissible(3, 7));
        assert!(!is_admissible(3, 13));
        assert_eq!(
            find_admissible_primes(2, 1).unwrap_err(),
            TameError::CharacteristicTwo
        );
        assert!(find_admissible_primes(9, 1).is_err());
    }

    #[test]
    fn class_counts() {
        let i5 = TameInstance::new(3, 5).unwrap();
        assert_eq!(class_count(&i5), 5);
        assert_eq!(explicit_class_count(&i5, 2000).unwrap(), 5);
        let i11 = TameInstance::new(3, 11).unwrap();
        assert_eq!(class_count(&i11), 7);
        assert_eq!(explicit_class_count(&i11, 2000).unwrap(), 7);
        // 3 generates (Z/7)^×: full metacyclic case
        let i7 = TameInstance::new(3, 7).unwrap();
        assert_eq!(class_count(&i7), 7);
        assert_eq!(explicit_class_count(&i7, 2000).unwrap(), 7);
    }

    #[test]
    fn frobenius_examples() {
        let r = frobenius_bound(&TameInstance::new(3, 5).unwrap());
        assert_eq!(
            (r.m_lower, r.accounted, r.sum_of_squares_check),
            (4, 20, true)
        );
        let r = frobenius_bound(&TameInstance::new(3, 11).unwrap());
        assert_eq!((r.m_lower, r.accounted), (5, 55));
        // 11 ≡ 1 mod 5 gives #K = 1
        let r = frobenius_bound(&TameInstance::new(11, 5).unwrap());
        assert_eq!(r.m_lower, 1);
    }

    #[test]
    fn lambda2_for_five() {
        let r = verify_lambda2_reducible(&TameInstance::new(3, 5).unwrap(), 0).unwrap();
        assert_eq!((r.dim_sigma, r.dim_lambda2, r.fixed_space_dim), (4, 6, 2));
        assert!(r.passes(), "{r:?}");
    }

    #[test]
    fn lambda2_for_eleven() {
        let r = verify_lambda2_reducible(&TameInstance::new(3, 11).unwrap(), 0).unwrap();
        assert_eq!((r.dim_sigma, r.dim_lambda2, r.fixed_space_dim), (5, 10, 0));
        assert!(r.passes(), "{r:?}");
    }

    #[test]
    fn irreducibles_complete() {
        let (_, r) = verify_irreducibles(&TameInstance::new(3, 5).unwrap(), 0).unwrap();
        assert_eq!(r.field_degree, 4);
        assert_eq!(r.dims, vec![1, 1, 1, 1, 4]);
        assert!(r.passes(), "{r:?}");
        let (_, r) = verify_irreducibles(&TameInstance::new(2, 7).unwrap(), 0).unwrap();
        assert_eq!(r.field_degree, 6);
        assert_eq!(r.dims, vec![1, 1, 1, 3, 3]);
        assert!(r.passes(), "{r:?}");
    }

    #[test]
    fn growth_table_first_25() {
        let rows = growth_table(3, 25, DEFAULT_K_CAP, 0).unwrap();
        assert_eq!(rows.len(), 25);
        assert_eq!(rows[24].ell, 233);
        for r in &rows {
            match r.verdict {
                RowVerdict::Verified => {
                    assert!(r.k_order <= DEFAULT_K_CAP && r.reducible == Some(true))
                }
                RowVerdict::Reported => assert!(r.k_order > DEFAULT_K_CAP),
                RowVerdict::Failed => panic!("{r:?}"),
            }
        }
        assert!(rows.windows(2).all(|w| w[0].k_envelope <= w[1].k_envelope));
    }
}
