//! Finite groups given by generators and an explicit multiplication.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::GroupError;
use crate::ffla::{is_prime, FieldRef, Mat, Scalar};

pub type GroupRef = Arc<Group>;

/// Default cap on explicit element enumeration.
pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

/// A word in the generators: `(generator index, exponent)` pairs, read
/// left to right.
pub type Word = Vec<(usize, i64)>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Element {
    Matrix(Mat),
    /// `(a, t)` in `Z/l ⋊ <p>`.
    Affine {
        a: u64,
        t: u64,
    },
    Cyclic(u64),
    Tuple(Vec<Element>),
}

/// Serializable description of a built-in group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", content = "params", rename_all = "kebab-case")]
pub enum GroupSpec {
    /// Upper-triangular invertible matrices with forced zeros at the given
    /// strictly-upper positions (1-based).
    Borel {
        n: usize,
        zero_pattern: Vec<(usize, usize)>,
    },
    /// Centre of the block-diagonal Levi subgroup with these block sizes.
    LeviCenter {
        blocks: Vec<usize>,
    },
    Semidirect {
        ell: u64,
        p: u64,
    },
    Cyclic {
        order: u64,
    },
    Product {
        factors: Vec<GroupSpec>,
    },
}

#[derive(Clone, Debug)]
pub enum GroupKind {
    Matrix { field: FieldRef, degree: usize },
    Semidirect { ell: u64, p: u64, k_order: u64 },
    Cyclic { order: u64 },
    Product(Vec<GroupRef>),
}

pub struct Group {
    name: String,
    spec: GroupSpec,
    kind: GroupKind,
    generators: Vec<Element>,
    relations: Vec<(Word, Word)>,
    known_order: Option<u64>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({})", self.name)
    }
}

/// Multiplicative order of `p` modulo `ell`.
pub fn multiplicative_order(p: u64, ell: u64) -> Option<u64> {
    if ell < 2 || p.is_multiple_of(ell) {
        return None;
    }
    let mut x = p % ell;
    let mut k = 1;
    while x != 1 {
        x = x * p % ell;
        k += 1;
        if k > ell {
            return None;
        }
    }
    Some(k)
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn commutes(i: usize, j: usize) -> (Word, Word) {
    (vec![(i, 1), (j, 1)], vec![(j, 1), (i, 1)])
}

fn has_order(i: usize, n: u64) -> (Word, Word) {
    (vec![(i, n as i64)], Vec::new())
}

/// Checks that the entries forced to zero stay zero under products:
/// `(AB)_{ij} = sum_{i<=k<=j} A_ik B_kj`, so every intermediate `k` needs a
/// forced zero at `(i,k)` or `(k,j)`.
pub fn validate_zero_pattern(n: usize, zeros: &BTreeSet<(usize, usize)>) -> Result<(), GroupError> {
    for &(i, j) in zeros {
        if i == 0 || j > n || i >= j {
            return Err(GroupError::OutOfRange(format!(
                "zero position ({i},{j}) is not strictly upper triangular in degree {n}"
            )));
        }
        for k in i + 1..j {
            if !zeros.contains(&(i, k)) && !zeros.contains(&(k, j)) {
                return Err(GroupError::BadZeroPattern {
                    forced: (i, j),
                    left: (i, k),
                    right: (k, j),
                });
            }
        }
    }
    Ok(())
}

impl Group {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    /// Defining relations known for the built-in group, as pairs of words
    /// that must evaluate equally.
    pub fn relations(&self) -> &[(Word, Word)] {
        &self.relations
    }

    /// Order from the closed formula, when the group has one.
    pub fn known_order(&self) -> Option<u64> {
        self.known_order
    }

    pub fn same_as(&self, other: &Group) -> bool {
        std::ptr::eq(self, other) || (self.spec == other.spec && self.field_matches(other))
    }

    fn field_matches(&self, other: &Group) -> bool {
        match (&self.kind, &other.kind) {
            (GroupKind::Matrix { field: a, .. }, GroupKind::Matrix { field: b, .. }) => {
                a.same_as(b)
            }
            (GroupKind::Product(a), GroupKind::Product(b)) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.same_as(y))
            }
            _ => true,
        }
    }

    pub fn identity(&self) -> Element {
        match &self.kind {
            GroupKind::Matrix { field, degree } => Element::Matrix(Mat::identity(field, *degree)),
            GroupKind::Semidirect { .. } => Element::Affine { a: 0, t: 1 },
            GroupKind::Cyclic { .. } => Element::Cyclic(0),
            GroupKind::Product(fs) => Element::Tuple(fs.iter().map(|g| g.identity()).collect()),
        }
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Element {
        match (&self.kind, x, y) {
            (GroupKind::Matrix { .. }, Element::Matrix(a), Element::Matrix(b)) => {
                Element::Matrix(a.mul(b))
            }
            (
                GroupKind::Semidirect { ell, .. },
                Element::Affine { a, t },
                Element::Affine { a: a2, t: t2 },
            ) => Element::Affine {
                a: (a + t * a2) % ell,
                t: t * t2 % ell,
            },
            (GroupKind::Cyclic { order }, Element::Cyclic(a), Element::Cyclic(b)) => {
                Element::Cyclic((a + b) % order)
            }
            (GroupKind::Product(fs), Element::Tuple(xs), Element::Tuple(ys)) => Element::Tuple(
                fs.iter()
                    .zip(xs.iter().zip(ys))
                    .map(|(g, (a, b))| g.multiply(a, b))
                    .collect(),
            ),
            _ => panic!("element does not belong to {}", self.name),
        }
    }

    pub fn invert(&self, x: &Element) -> Element {
        match (&self.kind, x) {
            (GroupKind::Matrix { .. }, Element::Matrix(a)) => {
                Element::Matrix(a.inverse().expect("group elements are invertible"))
            }
            (GroupKind::Semidirect { ell, .. }, Element::Affine { a, t }) => {
                let ti = pow_mod(*t, ell - 2, *ell);
                Element::Affine {
                    a: (ell - ti * a % ell) % ell,
                    t: ti,
                }
            }
            (GroupKind::Cyclic { order }, Element::Cyclic(a)) => {
                Element::Cyclic((order - a) % order)
            }
            (GroupKind::Product(fs), Element::Tuple(xs)) => {
                Element::Tuple(fs.iter().zip(xs).map(|(g, a)| g.invert(a)).collect())
            }
            _ => panic!("element does not belong to {}", self.name),
        }
    }

    pub fn power(&self, x: &Element, e: i64) -> Element {
        let base = if e < 0 { self.invert(x) } else { x.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = self.identity();
        let mut b = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.multiply(&acc, &b);
            }
            n >>= 1;
            if n > 0 {
                b = self.multiply(&b, &b);
            }
        }
        acc
    }

    pub fn eval_word(&self, w: &[(usize, i64)]) -> Element {
        w.iter().fold(self.identity(), |acc, &(g, e)| {
            let x = self.power(&self.generators[g], e);
            self.multiply(&acc, &x)
        })
    }

    /// All elements by breadth-first closure under right multiplication by
    /// generators, identity first.
    pub fn enumerate(&self, cap: usize) -> Result<Vec<Element>, GroupError> {
        if let Some(n) = self.known_order {
            if n > cap as u64 {
                return Err(GroupError::TooLarge { order: n, cap });
            }
        }
        let id = self.identity();
        let mut seen: HashMap<Element, usize> = HashMap::new();
        let mut out = vec![id.clone()];
        seen.insert(id.clone(), 0);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = self.multiply(&x, g);
                if !seen.contains_key(&y) {
                    if out.len() >= cap {
                        return Err(GroupError::TooLarge {
                            order: self.known_order.unwrap_or(out.len() as u64 + 1),
                            cap,
                        });
                    }
                    seen.insert(y.clone(), out.len());
                    out.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        Ok(out)
    }

    /// Whether the built-in relations hold on the group's own elements.
    pub fn check_relations(&self) -> bool {
        self.relations
            .iter()
            .all(|(l, r)| self.eval_word(l) == self.eval_word(r))
    }
}

/// The subgroup of `B_n(F_q)` with the given strictly-upper entries forced
/// to zero. Generators: one torus generator per diagonal slot (primitive
/// element there), then `I + E_ij` for every free position, in row-major
/// order.
pub fn borel_group(
    field: &FieldRef,
    n: usize,
    zero_pattern: &[(usize, usize)],
) -> Result<GroupRef, GroupError> {
    if n == 0 {
        return Err(GroupError::OutOfRange(
            "matrix degree must be positive".into(),
        ));
    }
    let zeros: BTreeSet<(usize, usize)> = zero_pattern.iter().copied().collect();
    validate_zero_pattern(n, &zeros)?;
    let g = field.primitive_element();
    let mut generators = Vec::new();
    for i in 0..n {
        let mut d = vec![Scalar::ONE; n];
        d[i] = g;
        generators.push(Element::Matrix(Mat::diagonal(field, &d)));
    }
    let mut free = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if !zeros.contains(&(i, j)) {
                free.push((i, j));
                let mut m = Mat::identity(field, n);
                m.set(i - 1, j - 1, Scalar::ONE);
                generators.push(Element::Matrix(m));
            }
        }
    }
    let q = field.order();
    let p = field.characteristic();
    let mut relations = Vec::new();
    for i in 0..n {
        relations.push(has_order(i, q - 1));
        for j in i + 1..n {
            relations.push(commutes(i, j));
        }
    }
    for u in 0..free.len() {
        relations.push(has_order(n + u, p));
    }
    let known_order = (q - 1).checked_pow(n as u32).and_then(|t| {
        q.checked_pow(free.len() as u32)
            .and_then(|u| t.checked_mul(u))
    });
    let name = if zeros.is_empty() {
        format!("B{n}(F{q})")
    } else {
        let z: Vec<String> = zeros.iter().map(|(i, j)| format!("{i}{j}")).collect();
        format!("B{n}(F{q})[0@{}]", z.join(","))
    };
    Ok(Arc::new(Group {
        name,
        spec: GroupSpec::Borel {
            n,
            zero_pattern: zeros.into_iter().collect(),
        },
        kind: GroupKind::Matrix {
            field: field.clone(),
            degree: n,
        },
        generators,
        relations,
        known_order,
    }))
}

/// `{diag(z_1 I_{n_1}, ..., z_k I_{n_k})}`, one generator per block.
pub fn levi_center(field: &FieldRef, blocks: &[usize]) -> Result<GroupRef, GroupError> {
    if blocks.is_empty() || blocks.contains(&0) {
        return Err(GroupError::OutOfRange(format!(
            "bad block sizes {blocks:?}"
        )));
    }
    let n: usize = blocks.iter().sum();
    let g = field.primitive_element();
    let mut generators = Vec::new();
    let mut start = 0;
    for &b in blocks {
        let mut d = vec![Scalar::ONE; n];
        for x in &mut d[start..start + b] {
            *x = g;
        }
        generators.push(Element::Matrix(Mat::diagonal(field, &d)));
        start += b;
    }
    let q = field.order();
    let k = blocks.len();
    let mut relations = Vec::new();
    for i in 0..k {
        relations.push(has_order(i, q - 1));
        for j in i + 1..k {
            relations.push(commutes(i, j));
        }
    }
    Ok(Arc::new(Group {
        name: format!("Z(M{blocks:?})(F{q})"),
        spec: GroupSpec::LeviCenter {
            blocks: blocks.to_vec(),
        },
        kind: GroupKind::Matrix {
            field: field.clone(),
            degree: n,
        },
        generators,
        relations,
        known_order: (q - 1).checked_pow(k as u32),
    }))
}

/// `(Z/l) ⋊ K` with `K = <p> ⊆ (Z/l)^×`, product
/// `(a,t)(a',t') = (a + t a', t t')`. Generators: `(1,1)` then `(0,p)`.
pub fn semidirect_group(ell: u64, p: u64) -> Result<GroupRef, GroupError> {
    if !is_prime(ell) {
        return Err(GroupError::NotPrime(ell));
    }
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    if ell == p {
        return Err(GroupError::EqualPrimes(ell));
    }
    let k = multiplicative_order(p, ell).expect("p is a unit mod l");
    let generators = vec![
        Element::Affine { a: 1 % ell, t: 1 },
        Element::Affine { a: 0, t: p % ell },
    ];
    let relations = vec![
        has_order(0, ell),
        has_order(1, k),
        // t a t^-1 = a^p
        (vec![(1, 1), (0, 1), (1, -1)], vec![(0, (p % ell) as i64)]),
    ];
    Ok(Arc::new(Group {
        name: format!("G_{ell}(p={p})"),
        spec: GroupSpec::Semidirect { ell, p },
        kind: GroupKind::Semidirect { ell, p, k_order: k },
        generators,
        relations,
        known_order: Some(ell * k),
    }))
}

pub fn cyclic_group(order: u64) -> Result<GroupRef, GroupError> {
    if order == 0 {
        return Err(GroupError::OutOfRange("cyclic group of order 0".into()));
    }
    Ok(Arc::new(Group {
        name: format!("Z/{order}"),
        spec: GroupSpec::Cyclic { order },
        kind: GroupKind::Cyclic { order },
        generators: vec![Element::Cyclic(1 % order)],
        relations: vec![has_order(0, order)],
        known_order: Some(order),
    }))
}

/// Direct product; generators are those of each factor in turn, embedded
/// with identities elsewhere.
pub fn product_group(factors: &[GroupRef]) -> Result<GroupRef, GroupError> {
    if factors.is_empty() {
        return Err(GroupError::OutOfRange("empty product".into()));
    }
    let ids: Vec<Element> = factors.iter().map(|g| g.identity()).collect();
    let mut generators = Vec::new();
    let mut relations = Vec::new();
    let mut offsets = Vec::new();
    for (fi, g) in factors.iter().enumerate() {
        let off = generators.len();
        offsets.push(off);
        for x in g.generators() {
            let mut t = ids.clone();
            t[fi] = x.clone();
            generators.push(Element::Tuple(t));
        }
        for (l, r) in g.relations() {
            let shift = |w: &Word| w.iter().map(|&(i, e)| (i + off, e)).collect::<Word>();
            relations.push((shift(l), shift(r)));
        }
    }
    for a in 0..factors.len() {
        for b in a + 1..factors.len() {
            for i in 0..factors[a].num_generators() {
                for j in 0..factors[b].num_generators() {
                    relations.push(commutes(offsets[a] + i, offsets[b] + j));
                }
            }
        }
    }
    let known_order = factors.iter().try_fold(1u64, |acc, g| {
        g.known_order().and_then(|n| acc.checked_mul(n))
    });
    let name = factors
        .iter()
        .map(|g| g.name().to_string())
        .collect::<Vec<_>>()
        .join(" x ");
    Ok(Arc::new(Group {
        name,
        spec: GroupSpec::Product {
            factors: factors.iter().map(|g| g.spec().clone()).collect(),
        },
        kind: GroupKind::Product(factors.to_vec()),
        generators,
        relations,
        known_order,
    }))
}

/// Generator-index offset of each factor inside a product group.
pub fn factor_offsets(group: &Group) -> Option<Vec<usize>> {
    match group.kind() {
        GroupKind::Product(fs) => {
            let mut off = 0;
            Some(
                fs.iter()
                    .map(|g| {
                        let o = off;
                        off += g.num_generators();
                        o
                    })
                    .collect(),
            )
        }
        _ => None,
    }
}

impl GroupSpec {
    /// Builds the described group; matrix groups use `field`.
    pub fn build(&self, field: &FieldRef) -> Result<GroupRef, GroupError> {
        match self {
            GroupSpec::Borel { n, zero_pattern } => borel_group(field, *n, zero_pattern),
            GroupSpec::LeviCenter { blocks } => levi_center(field, blocks),
            GroupSpec::Semidirect { ell, p } => semidirect_group(*ell, *p),
            GroupSpec::Cyclic { order } => cyclic_group(*order),
            GroupSpec::Product { factors } => {
                let fs = factors
                    .iter()
                    .map(|f| f.build(field))
                    .collect::<Result<Vec<_>, _>>()?;
                product_group(&fs)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffla::Field;

    #[test]
    fn borel_orders() {
        let f = Field::new(5, 1).unwrap();
        let full = borel_group(&f, 3, &[]).unwrap();
        assert_eq!(full.known_order(), Some(8000));
        let no_db = borel_group(&f, 3, &[(2, 3)]).unwrap();
        assert_eq!(no_db.known_order(), Some(1600));
        let torus = borel_group(&f, 3, &[(1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(torus.known_order(), Some(64));
        assert!(full.check_relations());
    }

    #[test]
    fn borel_enumeration_matches_formula() {
        let f = Field::new(3, 1).unwrap();
        let g = borel_group(&f, 3, &[]).unwrap();
        assert_eq!(
            g.enumerate(10_000).unwrap().len() as u64,
            g.known_order().unwrap()
        );
        // non-prime field: the additive group of each coordinate comes from conjugation
        let f4 = Field::new(2, 2).unwrap();
        let g = borel_group(&f4, 3, &[(2, 3)]).unwrap();
        assert_eq!(
            g.enumerate(10_000).unwrap().len() as u64,
            g.known_order().unwrap()
        );
        let t = borel_group(&f, 3, &[(1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(t.enumerate(100).unwrap().len(), 8);
    }

    #[test]
    fn non_subgroup_zero_pattern_rejected() {
        let f = Field::new(5, 1).unwrap();
        let err = borel_group(&f, 3, &[(1, 3)]).unwrap_err();
        assert_eq!(
            err,
            GroupError::BadZeroPattern {
                forced: (1, 3),
                left: (1, 2),
                right: (2, 3)
            }
        );
    }

    #[test]
    fn semidirect_orders() {
        for (ell, p, order) in [(5, 3, 20), (11, 3, 55), (7, 2, 21)] {
            let g = semidirect_group(ell, p).unwrap();
            assert_eq!(g.known_order(), Some(order));
            assert_eq!(g.enumerate(1000).unwrap().len() as u64, order);
            assert!(g.check_relations());
        }
        assert_eq!(
            semidirect_group(5, 5).unwrap_err(),
            GroupError::EqualPrimes(5)
        );
    }

    #[test]
    fn enumeration_cap() {
        let f = Field::new(5, 1).unwrap();
        let g = borel_group(&f, 3, &[]).unwrap();
        assert!(matches!(g.enumerate(100), Err(GroupError::TooLarge { .. })));
    }

    #[test]
    fn product_group_relations() {
        let a = semidirect_group(5, 3).unwrap();
        let b = cyclic_group(3).unwrap();
        let g = product_group(&[a, b]).unwrap();
        assert_eq!(g.known_order(), Some(60));
        assert!(g.check_relations());
        assert_eq!(g.enumerate(1000).unwrap().len(), 60);
    }

    #[test]
    fn inverse_is_two_sided() {
        let g = semidirect_group(11, 3).unwrap();
        for x in g.enumerate(100).unwrap() {
            assert_eq!(g.multiply(&x, &g.invert(&x)), g.identity());
        }
    }
}
