//! Exterior powers, tensor and box products, duals, twists, restriction
//! and induction.

use std::collections::{HashMap, VecDeque};

use super::group::{cyclic_group, factor_offsets, product_group, Element, GroupRef, Word};
use super::rep::Rep;
use super::GroupError;
use crate::ffla::{FieldRef, Mat, Scalar};

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(pos) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[pos] += 1;
        for i in pos + 1..k {
            cur[i] = cur[i - 1] + 1;
        }
    }
}

/// Matrix of `i x i` minors: entry `(I, J)` is `det A[I, J]`, subsets in
/// lexicographic order.
pub fn exterior_power_matrix(a: &Mat, i: usize) -> Mat {
    let n = a.rows();
    let subs = subsets(n, i);
    let d = subs.len();
    let f = a.field();
    let mut out = Mat::zeros(f, d, d);
    for (r, rows) in subs.iter().enumerate() {
        for (c, cols) in subs.iter().enumerate() {
            let v = match i {
                0 => Scalar::ONE,
                1 => a.get(rows[0], cols[0]),
                2 => f.sub(
                    f.mul(a.get(rows[0], cols[0]), a.get(rows[1], cols[1])),
                    f.mul(a.get(rows[0], cols[1]), a.get(rows[1], cols[0])),
                ),
                _ => a.submatrix(rows, cols).det(),
            };
            out.set(r, c, v);
        }
    }
    out
}

pub fn exterior_power(r: &Rep, i: usize) -> Result<Rep, GroupError> {
    if i > r.dim() {
        return Err(GroupError::OutOfRange(format!(
            "exterior power {i} of a {}-dimensional representation",
            r.dim()
        )));
    }
    let gens: Vec<Mat> = r
        .generators()
        .iter()
        .map(|m| exterior_power_matrix(m, i))
        .collect();
    let dim = subsets(r.dim(), i).len();
    Ok(Rep::from_parts(
        r.group().clone(),
        r.field().clone(),
        dim,
        gens,
    ))
}

/// Kronecker product over the same group; basis `e_i ⊗ f_k` at index `i*dim2 + k`.
pub fn tensor(r1: &Rep, r2: &Rep) -> Result<Rep, GroupError> {
    r1.check_compatible(r2)?;
    let gens = r1
        .generators()
        .iter()
        .zip(r2.generators())
        .map(|(a, b)| a.kron(b))
        .collect();
    Ok(Rep::from_parts(
        r1.group().clone(),
        r1.field().clone(),
        r1.dim() * r2.dim(),
        gens,
    ))
}

/// Outer tensor product over `G x H`.
pub fn box_product(r1: &Rep, r2: &Rep) -> Result<Rep, GroupError> {
    box_many(&[r1, r2])
}

/// Outer tensor product of several representations over the product of
/// their groups.
pub fn box_many(reps: &[&Rep]) -> Result<Rep, GroupError> {
    let Some(first) = reps.first() else {
        return Err(GroupError::OutOfRange("empty box product".into()));
    };
    let field = first.field().clone();
    if reps.iter().any(|r| !r.field().same_as(&field)) {
        return Err(GroupError::FieldMismatch);
    }
    let groups: Vec<GroupRef> = reps.iter().map(|r| r.group().clone()).collect();
    let group = product_group(&groups)?;
    let ids: Vec<Mat> = reps
        .iter()
        .map(|r| Mat::identity(&field, r.dim()))
        .collect();
    let mut gens = Vec::new();
    for (k, r) in reps.iter().enumerate() {
        for m in r.generators() {
            let mut acc = Mat::identity(&field, 1);
            for (l, id) in ids.iter().enumerate() {
                acc = acc.kron(if l == k { m } else { id });
            }
            gens.push(acc);
        }
    }
    let dim = reps.iter().map(|r| r.dim()).product();
    Ok(Rep::from_parts(group, field, dim, gens))
}

/// Inverse transpose on generators.
pub fn dual(r: &Rep) -> Rep {
    let gens = r
        .generators()
        .iter()
        .map(|m| m.inverse().expect("generators are invertible").transpose())
        .collect();
    Rep::from_parts(r.group().clone(), r.field().clone(), r.dim(), gens)
}

/// `r ⊗ c` for a one-dimensional `c`.
pub fn twist(r: &Rep, c: &Rep) -> Result<Rep, GroupError> {
    r.check_compatible(c)?;
    let vals = c.character_values().ok_or(GroupError::NotOneDimensional)?;
    let gens = r
        .generators()
        .iter()
        .zip(vals)
        .map(|(m, v)| m.scale(v))
        .collect();
    Ok(Rep::from_parts(
        r.group().clone(),
        r.field().clone(),
        r.dim(),
        gens,
    ))
}

fn check_lbar_dim(r: &Rep) -> Result<(), GroupError> {
    if r.dim() < 2 {
        return Err(GroupError::OutOfRange(
            "needs a representation of dimension at least 2".into(),
        ));
    }
    Ok(())
}

/// `Λ^1 ⊗ Λ^2 ⊗ ... ⊗ Λ^{n-1}` over the same group.
pub fn lbar_tensor(r: &Rep) -> Result<Rep, GroupError> {
    check_lbar_dim(r)?;
    let mut acc = exterior_power(r, 1)?;
    for i in 2..r.dim() {
        acc = tensor(&acc, &exterior_power(r, i)?)?;
    }
    Ok(acc)
}

/// `Λ^1 ⊠ ... ⊠ Λ^{n-1}` over `G^{n-1}`.
pub fn lbar_box(r: &Rep) -> Result<Rep, GroupError> {
    check_lbar_dim(r)?;
    let powers = (1..r.dim())
        .map(|i| exterior_power(r, i))
        .collect::<Result<Vec<_>, _>>()?;
    let refs: Vec<&Rep> = powers.iter().collect();
    if refs.len() == 1 {
        return Ok(powers[0].clone());
    }
    box_many(&refs)
}

/// A homomorphism given by the images of the source generators as words
/// in the target generators.
#[derive(Clone, Debug)]
pub struct Homomorphism {
    source: GroupRef,
    target: GroupRef,
    images: Vec<Word>,
}

impl Homomorphism {
    /// Checks arities and that the source relations hold on the images.
    pub fn new(
        source: GroupRef,
        target: GroupRef,
        images: Vec<Word>,
    ) -> Result<Homomorphism, GroupError> {
        if images.len() != source.num_generators() {
            return Err(GroupError::BadHomomorphism(format!(
                "{} images for {} generators",
                images.len(),
                source.num_generators()
            )));
        }
        if let Some(&(g, _)) = images
            .iter()
            .flatten()
            .find(|(g, _)| *g >= target.num_generators())
        {
            return Err(GroupError::BadHomomorphism(format!(
                "target generator {g} does not exist in {}",
                target.name()
            )));
        }
        let hom = Homomorphism {
            source,
            target,
            images,
        };
        let imgs: Vec<Element> = hom.images.iter().map(|w| hom.target.eval_word(w)).collect();
        let eval = |w: &Word| {
            w.iter().fold(hom.target.identity(), |acc, &(g, e)| {
                hom.target.multiply(&acc, &hom.target.power(&imgs[g], e))
            })
        };
        for (k, (l, r)) in hom.source.relations().iter().enumerate() {
            if eval(l) != eval(r) {
                return Err(GroupError::BadHomomorphism(format!(
                    "relation {k} of the source is not respected"
                )));
            }
        }
        Ok(hom)
    }

    pub fn identity(group: &GroupRef) -> Homomorphism {
        let images = (0..group.num_generators()).map(|i| vec![(i, 1)]).collect();
        Homomorphism {
            source: group.clone(),
            target: group.clone(),
            images,
        }
    }

    /// `G -> G x ... x G`, `g -> (g, ..., g)`, for a product whose factors
    /// all equal `group`.
    pub fn diagonal(group: &GroupRef, product: &GroupRef) -> Result<Homomorphism, GroupError> {
        let offsets = factor_offsets(product).ok_or_else(|| {
            GroupError::BadHomomorphism(format!("{} is not a product", product.name()))
        })?;
        let images = (0..group.num_generators())
            .map(|i| offsets.iter().map(|&o| (o + i, 1)).collect())
            .collect();
        Homomorphism::new(group.clone(), product.clone(), images)
    }

    pub fn source(&self) -> &GroupRef {
        &self.source
    }

    pub fn target(&self) -> &GroupRef {
        &self.target
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn apply_generator(&self, i: usize) -> Element {
        self.target.eval_word(&self.images[i])
    }
}

/// Pullback of a representation of `f.target()` to `f.source()`.
pub fn restrict_along(r: &Rep, f: &Homomorphism) -> Result<Rep, GroupError> {
    if !r.group().same_as(f.target()) {
        return Err(GroupError::BadHomomorphism(format!(
            "representation is of {}, homomorphism lands in {}",
            r.group().name(),
            f.target().name()
        )));
    }
    let gens = f.images().iter().map(|w| r.eval_word(w)).collect();
    Ok(Rep::from_parts(
        f.source().clone(),
        r.field().clone(),
        r.dim(),
        gens,
    ))
}

/// The character of `Z/n` sending the generator to `ζ^j`, where `ζ` is the
/// field's canonical primitive `n`-th root of unity.
pub fn cyclic_character(n: u64, field: &FieldRef, j: u64) -> Result<Rep, GroupError> {
    let z = field
        .root_of_unity(n)
        .ok_or_else(|| GroupError::MissingRootOfUnity {
            n,
            field: format!("{field:?}"),
        })?;
    let g = cyclic_group(n)?;
    Rep::character(&g, field, &[field.pow(z, j % n)])
}

/// `Ind_S^G ψ` for a character `ψ` of `S`, with `S` embedded by `emb` and
/// left cosets `t_j S` given by `transversal`. Basis vector `j` is `t_j ⊗ 1`,
/// so `g t_j = t_i s` puts `ψ(s)` at entry `(i, j)`.
pub fn induce(
    psi: &Rep,
    emb: &Homomorphism,
    transversal: &[Element],
    cap: usize,
) -> Result<Rep, GroupError> {
    let vals = psi
        .character_values()
        .ok_or(GroupError::NotOneDimensional)?;
    if !psi.group().same_as(emb.source()) {
        return Err(GroupError::GroupMismatch);
    }
    let g = emb.target().clone();
    let f = psi.field().clone();
    let gen_imgs: Vec<Element> = (0..vals.len()).map(|i| emb.apply_generator(i)).collect();

    // ψ on the image of S inside G
    let mut table: HashMap<Element, Scalar> = HashMap::new();
    table.insert(g.identity(), Scalar::ONE);
    let mut queue = VecDeque::from([(g.identity(), Scalar::ONE)]);
    while let Some((x, v)) = queue.pop_front() {
        for (h, &c) in gen_imgs.iter().zip(&vals) {
            let y = g.multiply(&x, h);
            let w = f.mul(v, c);
            match table.get(&y) {
                Some(&old) if old != w => {
                    return Err(GroupError::BadHomomorphism(
                        "the character does not factor through the image of the subgroup".into(),
                    ))
                }
                Some(_) => {}
                None => {
                    if table.len() >= cap {
                        return Err(GroupError::TooLarge {
                            order: table.len() as u64 + 1,
                            cap,
                        });
                    }
                    table.insert(y.clone(), w);
                    queue.push_back((y, w));
                }
            }
        }
    }

    let inv_t: Vec<Element> = transversal.iter().map(|t| g.invert(t)).collect();
    for (i, ti) in inv_t.iter().enumerate() {
        for (j, tj) in transversal.iter().enumerate().take(i) {
            if table.contains_key(&g.multiply(ti, tj)) {
                return Err(GroupError::BadTransversal(format!(
                    "elements {j} and {i} lie in the same coset"
                )));
            }
        }
    }
    if let Some(order) = g.known_order() {
        if order != (transversal.len() * table.len()) as u64 {
            return Err(GroupError::BadTransversal(format!(
                "{} cosets of a subgroup of order {} do not cover a group of order {order}",
                transversal.len(),
                table.len()
            )));
        }
    }

    let d = transversal.len();
    let mut gens = Vec::with_capacity(g.num_generators());
    for x in g.generators() {
        let mut m = Mat::zeros(&f, d, d);
        for (j, t) in transversal.iter().enumerate() {
            let xt = g.multiply(x, t);
            let hit = inv_t
                .iter()
                .enumerate()
                .find_map(|(i, ti)| table.get(&g.multiply(ti, &xt)).map(|&v| (i, v)));
            let (i, v) = hit.ok_or_else(|| {
                GroupError::BadTransversal("cosets do not cover the group".into())
            })?;
            m.set(i, j, v);
        }
        gens.push(m);
    }
    Ok(Rep::from_parts(g, f, d, gens))
}
