//! Intertwiner spaces.

use super::MeataxeError;
use crate::ffla::{Mat, Scalar, Subspace};
use crate::grouprep::Rep;

/// Basis of `{X : X ρ1(g) = ρ2(g) X}` as `dim2 x dim1` matrices.
pub fn hom_space(r1: &Rep, r2: &Rep) -> Result<Vec<Mat>, MeataxeError> {
    if !r1.same_group(r2) {
        return Err(MeataxeError::Group(
            crate::grouprep::GroupError::GroupMismatch,
        ));
    }
    if !r1.field().same_as(r2.field()) {
        return Err(MeataxeError::Group(
            crate::grouprep::GroupError::FieldMismatch,
        ));
    }
    let f = r1.field();
    let (d1, d2) = (r1.dim(), r2.dim());
    let n = d1 * d2;
    if n == 0 {
        return Ok(Vec::new());
    }
    // unknown X[i][k] sits at index i*d1 + k
    let mut rows = Subspace::zero(f, n);
    'outer: for (a, b) in r1.generators().iter().zip(r2.generators()) {
        for i in 0..d2 {
            for j in 0..d1 {
                let mut row = vec![Scalar::ZERO; n];
                for k in 0..d1 {
                    let c = a.get(k, j);
                    if !c.is_zero() {
                        row[i * d1 + k] = f.add(row[i * d1 + k], c);
                    }
                }
                for k in 0..d2 {
                    let c = b.get(i, k);
                    if !c.is_zero() {
                        row[k * d1 + j] = f.sub(row[k * d1 + j], c);
                    }
                }
                rows.insert(row);
                if rows.is_full() {
                    break 'outer;
                }
            }
        }
    }
    Ok(rows
        .annihilator()
        .basis()
        .iter()
        .map(|v| Mat::from_vec(f, d2, d1, v.clone()))
        .collect())
}

/// Sum of the images of all homomorphisms `s -> m`.
pub fn trace_of(s: &Rep, m: &Rep) -> Result<Subspace, MeataxeError> {
    let mut img = Subspace::zero(m.field(), m.dim());
    for x in hom_space(s, m)? {
        for c in x.column_vectors() {
            img.insert(c);
        }
    }
    Ok(img)
}
