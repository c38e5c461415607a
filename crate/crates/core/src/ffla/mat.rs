//! Dense matrices over GF(q).
//!
//! Matrices act on column vectors. Subspaces are kept as fully reduced
//! row-echelon bases ([`Subspace`]).

use std::fmt;
use std::hash::{Hash, Hasher};

use super::field::{FieldRef, Scalar};
use super::poly::Poly;
use super::FflaError;

#[derive(Clone)]
pub struct Mat {
    field: FieldRef,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl PartialEq for Mat {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
            && self.field.same_as(&other.field)
    }
}

impl Eq for Mat {}

impl Hash for Mat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<u32> = self.row(i).iter().map(|s| s.0).collect();
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

/// Result of [`Mat::rref`].
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Mat {
    pub fn zeros(field: &FieldRef, rows: usize, cols: usize) -> Mat {
        Mat {
            field: field.clone(),
            rows,
            cols,
            data: vec![Scalar::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &FieldRef, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::ONE);
        }
        m
    }

    pub fn scalar(field: &FieldRef, n: usize, c: Scalar) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, c);
        }
        m
    }

    pub fn diagonal(field: &FieldRef, d: &[Scalar]) -> Mat {
        let mut m = Mat::zeros(field, d.len(), d.len());
        for (i, &c) in d.iter().enumerate() {
            m.set(i, i, c);
        }
        m
    }

    pub fn from_vec(field: &FieldRef, rows: usize, cols: usize, data: Vec<Scalar>) -> Mat {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        Mat {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(field: &FieldRef, rows: &[Vec<Scalar>]) -> Mat {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend_from_slice(r);
        }
        Mat::from_vec(field, rows.len(), cols, data)
    }

    /// Integer entries reduced into the prime field.
    pub fn from_ints(field: &FieldRef, rows: &[&[i64]]) -> Mat {
        let rows: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&n| field.from_int(n)).collect())
            .collect();
        Mat::from_rows(field, &rows)
    }

    /// Matrix whose columns are the given vectors (all of length `n`).
    pub fn from_columns(field: &FieldRef, n: usize, cols: &[Vec<Scalar>]) -> Mat {
        let mut m = Mat::zeros(field, n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, &x) in c.iter().enumerate().take(n) {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Scalar] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols)
                    .all(|j| self.get(i, j) == if i == j { Scalar::ONE } else { Scalar::ZERO })
            })
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let f = &self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        let oc = other.cols;
        for i in 0..self.rows {
            let dst = &mut out.data[i * oc..(i + 1) * oc];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if !a.is_zero() {
                    f.axpy(dst, a, &other.data[k * oc..(k + 1) * oc]);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| self.field.dot(self.row(i), v))
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.rows, v.len(), "vector-matrix dimension mismatch");
        let mut out = vec![Scalar::ZERO; self.cols];
        for (i, &c) in v.iter().enumerate() {
            self.field.axpy(&mut out, c, self.row(i));
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Mat::from_vec(f, self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Mat::from_vec(f, self.rows, self.cols, data)
    }

    pub fn scale(&self, c: Scalar) -> Mat {
        let f = &self.field;
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Mat::from_vec(f, self.rows, self.cols, data)
    }

    /// `self + c * I`
    pub fn add_scalar(&self, c: Scalar) -> Mat {
        assert!(self.is_square());
        let mut m = self.clone();
        for i in 0..self.rows {
            let v = self.field.add(m.get(i, i), c);
            m.set(i, i, v);
        }
        m
    }

    /// Kronecker product; row index of the result is `i * other.rows + k`.
    pub fn kron(&self, other: &Mat) -> Mat {
        let f = &self.field;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Mat::zeros(f, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    let base = (i * other.rows + k) * c + j * other.cols;
                    let src = other.row(k);
                    for (l, &b) in src.iter().enumerate() {
                        out.data[base + l] = f.mul(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Mat {
        let mut m = Mat::zeros(&self.field, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j));
            }
        }
        m
    }

    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Mat {
        let rows: Vec<usize> = (r0..r1).collect();
        let cols: Vec<usize> = (c0..c1).collect();
        self.submatrix(&rows, &cols)
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat::from_vec(&self.field, self.rows + other.rows, self.cols, data)
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let mut m = Mat::zeros(&self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            m.row_mut(i)[..self.cols].copy_from_slice(self.row(i));
            m.row_mut(i)[self.cols..].copy_from_slice(other.row(i));
        }
        m
    }

    /// Reduced row echelon form. The pivot in each column is the first
    /// nonzero entry at or below the current row.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        Rref {
            rank: pivots.len(),
            reduced: m,
            pivots,
        }
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).unwrap();
            f.scale_slice(self.row_mut(r), inv);
            let pivot_row = self.row(r)[c..].to_vec();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let x = self.get(i, c);
                if !x.is_zero() {
                    let neg = f.neg(x);
                    f.axpy(&mut self.row_mut(i)[c..], neg, &pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the null space as the columns of a `cols x nullity` matrix.
    pub fn kernel(&self) -> Mat {
        let Rref {
            reduced, pivots, ..
        } = self.rref();
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Mat::zeros(f, self.cols, free.len());
        for (b, &fc) in free.iter().enumerate() {
            k.set(fc, b, Scalar::ONE);
            for (r, &pc) in pivots.iter().enumerate() {
                k.set(pc, b, f.neg(reduced.get(r, fc)));
            }
        }
        k
    }

    /// Kernel basis vectors as a list.
    pub fn kernel_vectors(&self) -> Vec<Vec<Scalar>> {
        self.kernel().column_vectors()
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Mat::identity(&self.field, n));
        let r = aug.rref();
        if r.pivots.len() < n || r.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.reduced.block(0, n, n, 2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn det(&self) -> Scalar {
        assert!(self.is_square());
        let f = self.field.clone();
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Scalar::ONE;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Scalar::ZERO;
            };
            if pr != c {
                for j in 0..n {
                    m.data.swap(pr * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let piv = m.get(c, c);
            det = f.mul(det, piv);
            let inv = f.inv(piv).unwrap();
            let pivot_row = m.row(c)[c..].to_vec();
            for i in c + 1..n {
                let x = m.get(i, c);
                if !x.is_zero() {
                    let factor = f.neg(f.mul(x, inv));
                    f.axpy(&mut m.row_mut(i)[c..], factor, &pivot_row);
                }
            }
        }
        det
    }

    pub fn pow(&self, mut e: u64) -> Mat {
        assert!(self.is_square());
        let mut acc = Mat::identity(&self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols))
            .fold(Scalar::ZERO, |acc, i| self.field.add(acc, self.get(i, i)))
    }

    /// `f(self)` by Horner's rule.
    pub fn eval_poly(&self, p: &Poly) -> Mat {
        assert!(self.is_square());
        let n = self.rows;
        let mut acc = Mat::zeros(&self.field, n, n);
        for &c in p.coeffs().iter().rev() {
            acc = acc.mul(self).add_scalar(c);
        }
        acc
    }

    /// Characteristic polynomial `det(xI - M)` via reduction to upper
    /// Hessenberg form.
    pub fn char_poly(&self) -> Result<Poly, FflaError> {
        if !self.is_square() {
            return Err(FflaError::DimensionMismatch(format!(
                "char_poly of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let f = self.field.clone();
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h.get(i, m - 1).is_zero()) else {
                continue;
            };
            if i != m {
                for j in 0..n {
                    h.data.swap(i * n + j, m * n + j);
                }
                for r in 0..n {
                    h.data.swap(r * n + i, r * n + m);
                }
            }
            let t_inv = f.inv(h.get(m, m - 1)).unwrap();
            for i in m + 1..n {
                let u = f.mul(h.get(i, m - 1), t_inv);
                if u.is_zero() {
                    continue;
                }
                // row_i -= u row_m ; col_m += u col_i
                let row_m = h.row(m).to_vec();
                f.axpy(h.row_mut(i), f.neg(u), &row_m);
                for r in 0..n {
                    let v = f.add(h.get(r, m), f.mul(u, h.get(r, i)));
                    h.set(r, m, v);
                }
            }
        }
        // p_k = char poly of leading k x k block
        let x = Poly::x(&f);
        let mut ps: Vec<Poly> = vec![Poly::one(&f)];
        for k in 1..=n {
            let mut pk = x
                .sub(&Poly::constant(&f, h.get(k - 1, k - 1)))
                .mul(&ps[k - 1]);
            let mut prod = Scalar::ONE;
            for i in 1..k {
                // prod of subdiagonal entries h[k-1][k-2] ... h[k-i][k-i-1]
                prod = f.mul(prod, h.get(k - i, k - i - 1));
                if prod.is_zero() {
                    break;
                }
                let c = f.mul(prod, h.get(k - i - 1, k - 1));
                if !c.is_zero() {
                    pk = pk.sub(&ps[k - i - 1].scale(c));
                }
            }
            ps.push(pk);
        }
        Ok(ps.pop().unwrap())
    }

    /// Monic minimal polynomial of `v` under `self` (the smallest-degree
    /// monic `g` with `g(M) v = 0`).
    pub fn min_poly(&self, v: &[Scalar]) -> Result<Poly, FflaError> {
        if !self.is_square() || v.len() != self.rows {
            return Err(FflaError::DimensionMismatch(format!(
                "min_poly of a {}x{} matrix with a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let f = self.field.clone();
        let n = self.rows;
        // rows: reduced Krylov vectors, each tagged with its combination of
        // the Krylov basis M^0 v, ..., M^k v as a coefficient vector.
        let mut basis: Vec<(usize, Vec<Scalar>, Vec<Scalar>)> = Vec::new();
        let mut cur = v.to_vec();
        for k in 0..=n {
            let mut w = cur.clone();
            let mut comb = vec![Scalar::ZERO; n + 1];
            comb[k] = Scalar::ONE;
            for (piv, row, rc) in &basis {
                let c = w[*piv];
                if !c.is_zero() {
                    let neg = f.neg(c);
                    f.axpy(&mut w, neg, row);
                    f.axpy(&mut comb, neg, rc);
                }
            }
            match w.iter().position(|x| !x.is_zero()) {
                None => return Ok(Poly::new(f.clone(), comb[..=k].to_vec()).monic()),
                Some(piv) => {
                    let inv = f.inv(w[piv]).unwrap();
                    f.scale_slice(&mut w, inv);
                    f.scale_slice(&mut comb, inv);
                    basis.push((piv, w, comb));
                }
            }
            cur = self.mul_vec(&cur);
        }
        unreachable!("Krylov sequence must become dependent within n+1 steps")
    }
}

/// A subspace of `F^n` held as a fully reduced echelon basis.
#[derive(Clone)]
pub struct Subspace {
    field: FieldRef,
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {})", self.dim(), self.ambient)
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.pivots == other.pivots && self.rows == other.rows
    }
}

impl Eq for Subspace {}

impl Subspace {
    pub fn zero(field: &FieldRef, ambient: usize) -> Subspace {
        Subspace {
            field: field.clone(),
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &FieldRef, ambient: usize) -> Subspace {
        let mut s = Subspace::zero(field, ambient);
        for i in 0..ambient {
            let mut e = vec![Scalar::ZERO; ambient];
            e[i] = Scalar::ONE;
            s.insert(e);
        }
        s
    }

    pub fn spanned_by<I: IntoIterator<Item = Vec<Scalar>>>(
        field: &FieldRef,
        ambient: usize,
        vs: I,
    ) -> Subspace {
        let mut s = Subspace::zero(field, ambient);
        for v in vs {
            s.insert(v);
        }
        s
    }

    /// Span of the columns of `m`.
    pub fn column_space(m: &Mat) -> Subspace {
        Subspace::spanned_by(m.field(), m.rows(), m.column_vectors())
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as the rows of a matrix.
    pub fn basis_rows(&self) -> Mat {
        if self.rows.is_empty() {
            return Mat::zeros(&self.field, 0, self.ambient);
        }
        Mat::from_rows(&self.field, &self.rows)
    }

    /// Basis vectors as the columns of a matrix.
    pub fn basis_columns(&self) -> Mat {
        Mat::from_columns(&self.field, self.ambient, &self.rows)
    }

    /// Reduces `v` modulo the subspace in place.
    pub fn reduce(&self, v: &mut [Scalar]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if !c.is_zero() {
                self.field.axpy(v, self.field.neg(c), row);
            }
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| x.is_zero())
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        assert_eq!(
            v.len(),
            self.ambient,
            "vector length differs from ambient dimension"
        );
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let f = self.field.clone();
        let inv = f.inv(v[p]).unwrap();
        f.scale_slice(&mut v, inv);
        for row in &mut self.rows {
            let c = row[p];
            if !c.is_zero() {
                f.axpy(row, f.neg(c), &v);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for v in &other.rows {
            s.insert(v.clone());
        }
        s
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // x in self ∩ other  <=>  x annihilated by both annihilators
        let a = self.annihilator().sum(&other.annihilator());
        a.annihilator()
    }

    /// `{x : <y, x> = 0 for all y in self}`.
    pub fn annihilator(&self) -> Subspace {
        let k = self.basis_rows().kernel();
        Subspace::column_space(&k)
    }

    /// Non-pivot coordinates; the standard vectors there complete the basis.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }

    /// Whether `m` maps the subspace into itself.
    pub fn is_invariant_under(&self, m: &Mat) -> bool {
        self.rows.iter().all(|v| self.contains(&m.mul_vec(v)))
    }
}
