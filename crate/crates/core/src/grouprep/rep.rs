//! Representations: one matrix per group generator.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use rand::Rng;

use super::group::{Element, GroupKind, GroupRef, Word};
use super::GroupError;
use crate::ffla::{Embedding, FieldRef, Mat, Scalar, Subspace};

#[derive(Clone)]
pub struct Rep {
    group: GroupRef,
    field: FieldRef,
    dim: usize,
    gens: Vec<Mat>,
}

impl fmt::Debug for Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Rep(dim {} of {} over {:?})",
            self.dim,
            self.group.name(),
            self.field
        )
    }
}

impl Rep {
    /// Checks sizes, invertibility and the group's defining relations.
    pub fn new(group: GroupRef, field: FieldRef, gens: Vec<Mat>) -> Result<Rep, GroupError> {
        if gens.len() != group.num_generators() {
            return Err(GroupError::GeneratorCount {
                expected: group.num_generators(),
                got: gens.len(),
            });
        }
        let dim = gens.first().map_or(0, |m| m.rows());
        for (i, m) in gens.iter().enumerate() {
            if !m.field().same_as(&field) {
                return Err(GroupError::FieldMismatch);
            }
            if m.rows() != dim || m.cols() != dim || !m.is_invertible() {
                return Err(GroupError::BadGenerator(i));
            }
        }
        let rep = Rep::from_parts(group, field, dim, gens);
        if let Some(i) = rep.first_failed_relation() {
            return Err(GroupError::RelationViolated(i));
        }
        Ok(rep)
    }

    /// For matrices already known to define a representation.
    pub(crate) fn from_parts(group: GroupRef, field: FieldRef, dim: usize, gens: Vec<Mat>) -> Rep {
        Rep {
            group,
            field,
            dim,
            gens,
        }
    }

    pub fn trivial(group: &GroupRef, field: &FieldRef) -> Rep {
        let gens = vec![Mat::identity(field, 1); group.num_generators()];
        Rep::from_parts(group.clone(), field.clone(), 1, gens)
    }

    /// One-dimensional representation with the given generator values.
    pub fn character(
        group: &GroupRef,
        field: &FieldRef,
        values: &[Scalar],
    ) -> Result<Rep, GroupError> {
        let gens = values.iter().map(|&v| Mat::scalar(field, 1, v)).collect();
        Rep::new(group.clone(), field.clone(), gens)
    }

    /// The defining representation of a matrix group.
    pub fn standard(group: &GroupRef) -> Result<Rep, GroupError> {
        let GroupKind::Matrix { field, degree } = group.kind() else {
            return Err(GroupError::OutOfRange(format!(
                "{} is not a matrix group",
                group.name()
            )));
        };
        let gens = group
            .generators()
            .iter()
            .map(|g| match g {
                Element::Matrix(m) => m.clone(),
                _ => unreachable!("matrix groups have matrix generators"),
            })
            .collect();
        Ok(Rep::from_parts(group.clone(), field.clone(), *degree, gens))
    }

    /// Permutation representation: generator `g` sends `e_x` to `e_{perm[g][x]}`.
    pub fn from_permutations(
        group: &GroupRef,
        field: &FieldRef,
        perms: &[Vec<usize>],
    ) -> Result<Rep, GroupError> {
        let n = perms.first().map_or(0, |p| p.len());
        let gens = perms
            .iter()
            .map(|p| {
                let mut m = Mat::zeros(field, n, n);
                for (x, &y) in p.iter().enumerate() {
                    m.set(y, x, Scalar::ONE);
                }
                m
            })
            .collect();
        Rep::new(group.clone(), field.clone(), gens)
    }

    /// Left regular representation on the enumerated group.
    pub fn regular(group: &GroupRef, field: &FieldRef, cap: usize) -> Result<Rep, GroupError> {
        let elements = group.enumerate(cap)?;
        let index: HashMap<&Element, usize> =
            elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let perms: Vec<Vec<usize>> = group
            .generators()
            .iter()
            .map(|g| {
                elements
                    .iter()
                    .map(|h| index[&group.multiply(g, h)])
                    .collect()
            })
            .collect();
        let n = elements.len();
        let gens = perms
            .iter()
            .map(|p| {
                let mut m = Mat::zeros(field, n, n);
                for (x, &y) in p.iter().enumerate() {
                    m.set(y, x, Scalar::ONE);
                }
                m
            })
            .collect();
        Ok(Rep::from_parts(group.clone(), field.clone(), n, gens))
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Mat] {
        &self.gens
    }

    pub fn generator(&self, i: usize) -> &Mat {
        &self.gens[i]
    }

    /// Generator values of a one-dimensional representation.
    pub fn character_values(&self) -> Option<Vec<Scalar>> {
        (self.dim == 1).then(|| self.gens.iter().map(|m| m.get(0, 0)).collect())
    }

    pub fn same_group(&self, other: &Rep) -> bool {
        Arc::ptr_eq(&self.group, &other.group) || self.group.same_as(&other.group)
    }

    pub(crate) fn check_compatible(&self, other: &Rep) -> Result<(), GroupError> {
        if !self.same_group(other) {
            return Err(GroupError::GroupMismatch);
        }
        if !self.field.same_as(&other.field) {
            return Err(GroupError::FieldMismatch);
        }
        Ok(())
    }

    pub fn eval_word(&self, w: &[(usize, i64)]) -> Mat {
        let mut acc = Mat::identity(&self.field, self.dim);
        for &(g, e) in w {
            let m = if e < 0 {
                self.gens[g].inverse().expect("generators are invertible")
            } else {
                self.gens[g].clone()
            };
            acc = acc.mul(&m.pow(e.unsigned_abs()));
        }
        acc
    }

    /// Index of the first defining relation violated by the matrices.
    pub fn first_failed_relation(&self) -> Option<usize> {
        self.group
            .relations()
            .iter()
            .position(|(l, r)| self.eval_word(l) != self.eval_word(r))
    }

    /// A random positive word of length `1..=max_len`.
    pub fn random_word<R: Rng + ?Sized>(&self, rng: &mut R, max_len: usize) -> Word {
        let len = rng.gen_range(1..=max_len.max(1));
        (0..len)
            .map(|_| (rng.gen_range(0..self.gens.len().max(1)), 1))
            .collect()
    }

    /// Matrix of every group element, keyed by element, via closure.
    pub fn element_images(&self, cap: usize) -> Result<Vec<(Element, Mat)>, GroupError> {
        let group = &self.group;
        let id = group.identity();
        let mut seen: HashSet<Element> = HashSet::new();
        seen.insert(id.clone());
        let mut out = vec![(id.clone(), Mat::identity(&self.field, self.dim))];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (g, m) in group.generators().iter().zip(&self.gens) {
                let x = group.multiply(&out[i].0, g);
                if seen.contains(&x) {
                    continue;
                }
                if out.len() >= cap {
                    return Err(GroupError::TooLarge {
                        order: group.known_order().unwrap_or(out.len() as u64 + 1),
                        cap,
                    });
                }
                seen.insert(x.clone());
                let y = out[i].1.mul(m);
                out.push((x, y));
                queue.push_back(out.len() - 1);
            }
        }
        Ok(out)
    }

    /// `B^{-1} ρ(g) B`: the representation in the basis given by the columns of `b`.
    pub fn change_basis(&self, b: &Mat) -> Option<Rep> {
        let bi = b.inverse()?;
        let gens = self.gens.iter().map(|m| bi.mul(m).mul(b)).collect();
        Some(Rep::from_parts(
            self.group.clone(),
            self.field.clone(),
            self.dim,
            gens,
        ))
    }

    /// Action on an invariant subspace, in its echelon basis.
    pub fn subrep(&self, w: &Subspace) -> Option<Rep> {
        let basis = w.basis();
        let mut gens = Vec::with_capacity(self.gens.len());
        for m in &self.gens {
            let mut img = Mat::zeros(&self.field, w.dim(), w.dim());
            for (j, v) in basis.iter().enumerate() {
                let y = m.mul_vec(v);
                if !w.contains(&y) {
                    return None;
                }
                for (i, &p) in w.pivots().iter().enumerate() {
                    img.set(i, j, y[p]);
                }
            }
            gens.push(img);
        }
        Some(Rep::from_parts(
            self.group.clone(),
            self.field.clone(),
            w.dim(),
            gens,
        ))
    }

    /// Action on `V / W` in the basis of standard vectors at the non-pivot
    /// coordinates of `W`. `W` must be invariant.
    pub fn quotient(&self, w: &Subspace) -> Rep {
        let comp = w.complement_indices();
        let d = comp.len();
        let gens = self
            .gens
            .iter()
            .map(|m| {
                let mut img = Mat::zeros(&self.field, d, d);
                for (j, &c) in comp.iter().enumerate() {
                    let mut y = m.column(c);
                    w.reduce(&mut y);
                    for (i, &r) in comp.iter().enumerate() {
                        img.set(i, j, y[r]);
                    }
                }
                img
            })
            .collect();
        Rep::from_parts(self.group.clone(), self.field.clone(), d, gens)
    }

    /// `upper / lower` for invariant `lower ⊆ upper`.
    pub fn subquotient(&self, lower: &Subspace, upper: &Subspace) -> Option<Rep> {
        let sub = self.subrep(upper)?;
        let coords = lower
            .basis()
            .iter()
            .map(|v| upper.pivots().iter().map(|&p| v[p]).collect::<Vec<_>>());
        let low = Subspace::spanned_by(&self.field, upper.dim(), coords);
        Some(sub.quotient(&low))
    }

    pub fn direct_sum(&self, other: &Rep) -> Result<Rep, GroupError> {
        self.check_compatible(other)?;
        let n = self.dim + other.dim;
        let gens = self
            .gens
            .iter()
            .zip(&other.gens)
            .map(|(a, b)| {
                let mut m = Mat::zeros(&self.field, n, n);
                for i in 0..self.dim {
                    for j in 0..self.dim {
                        m.set(i, j, a.get(i, j));
                    }
                }
                for i in 0..other.dim {
                    for j in 0..other.dim {
                        m.set(self.dim + i, self.dim + j, b.get(i, j));
                    }
                }
                m
            })
            .collect();
        Ok(Rep::from_parts(
            self.group.clone(),
            self.field.clone(),
            n,
            gens,
        ))
    }

    /// The same matrices read over a larger field.
    pub fn extend_scalars(&self, emb: &Embedding, big: &FieldRef) -> Rep {
        let gens = self.gens.iter().map(|m| emb.apply_mat(m)).collect();
        Rep::from_parts(self.group.clone(), big.clone(), self.dim, gens)
    }
}
