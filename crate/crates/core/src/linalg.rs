//! Dense exact matrices and echelonized subspaces over a [`PrimeField`].
//!
//! Vectors are rows and matrices act on the right: `v·M`. Composition of maps
//! is the ordinary matrix product in the order the maps are applied.

use std::fmt;

use crate::field::{Fe, PrimeField};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl Mat {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Mat {
        Mat { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_rows(field: PrimeField, cols: usize, rows: Vec<Vec<Fe>>) -> Mat {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        Mat { field, rows: r, cols, data }
    }

    pub fn from_flat(field: PrimeField, rows: usize, cols: usize, data: Vec<Fe>) -> Mat {
        assert_eq!(data.len(), rows * cols);
        Mat { field, rows, cols, data }
    }

    pub fn from_ints(field: PrimeField, rows: &[&[i64]]) -> Mat {
        let cols = rows.first().map_or(0, |r| r.len());
        Mat::from_rows(field, cols, rows.iter().map(|r| r.iter().map(|&x| field.int(x)).collect()).collect())
    }

    pub fn field(&self) -> PrimeField {
        self.field
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

    pub fn get(&self, i: usize, j: usize) -> &Fe {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Fe) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn flat(&self) -> &[Fe] {
        &self.data
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut out = Mat::zeros(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let idx = i * o.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "dimension mismatch in sum");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect();
        Mat { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "dimension mismatch in difference");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect();
        Mat { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &Fe) -> Mat {
        let data = self.data.iter().map(|a| a * c).collect();
        Mat { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Mat {
        let data = self.data.iter().map(|a| -a).collect();
        Mat { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Fe::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Mat::identity(self.field, self.rows)
    }

    /// `g - 1` for a square matrix.
    pub fn minus_identity(&self) -> Mat {
        self.sub(&Mat::identity(self.field, self.rows))
    }

    pub fn vec_mul(&self, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(v.len(), self.rows, "vector length mismatch");
        let mut out = self.field.zeros(self.cols);
        for (k, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let b = self.get(k, j);
                if !b.is_zero() {
                    *o = &*o + &(a * b);
                }
            }
        }
        out
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let rows: Vec<Vec<Fe>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend(self.field.unit_vector(n, i));
                r
            })
            .collect();
        let (red, piv) = rref(self.field, 2 * n, rows);
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        Some(Mat::from_rows(self.field, n, red.into_iter().map(|r| r[n..].to_vec()).collect()))
    }

    /// Power with integer exponent; negative powers require invertibility.
    pub fn pow(&self, e: i64) -> Option<Mat> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Mat::identity(self.field, self.rows);
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            k >>= 1;
        }
        Some(acc)
    }

    /// `g⁻¹ x g`.
    pub fn conj(&self, g: &Mat) -> Mat {
        g.inverse().expect("conjugating by a singular matrix").mul(self).mul(g)
    }

    pub fn determinant(&self) -> Fe {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.row_vecs();
        let mut det = self.field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else { return self.field.zero() };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            det = &det * &m[c][c];
            let inv = m[c][c].inv().expect("nonzero pivot");
            for i in c + 1..n {
                if m[i][c].is_zero() {
                    continue;
                }
                let f = &m[i][c] * &inv;
                for j in c..n {
                    let t = &f * &m[c][j];
                    m[i][j] = &m[i][j] - &t;
                }
            }
        }
        det
    }

    pub fn rank(&self) -> usize {
        rref(self.field, self.cols, self.row_vecs()).1.len()
    }

    pub fn block_diag(blocks: &[Mat]) -> Mat {
        let field = blocks[0].field;
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(field, n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Row-major exact text, e.g. `[[1,0],[0,1]]`.
    pub fn to_text(&self) -> String {
        let mut s = String::from("[");
        for i in 0..self.rows {
            if i > 0 {
                s.push(',');
            }
            s.push_str(&vec_text(self.row(i)));
        }
        s.push(']');
        s
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub fn vec_text(v: &[Fe]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

pub fn vec_add(a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Fe], c: &Fe) -> Vec<Fe> {
    a.iter().map(|x| x * c).collect()
}

pub fn vec_neg(a: &[Fe]) -> Vec<Fe> {
    a.iter().map(|x| -x).collect()
}

pub fn vec_is_zero(a: &[Fe]) -> bool {
    a.iter().all(Fe::is_zero)
}

/// `Σ c_i v_i`.
pub fn lin_comb(field: PrimeField, n: usize, coeffs: &[Fe], vecs: &[Vec<Fe>]) -> Vec<Fe> {
    let mut out = field.zeros(n);
    for (c, v) in coeffs.iter().zip(vecs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o = &*o + &(c * x);
        }
    }
    out
}

/// Fully reduced row echelon form. Returns the nonzero rows sorted by pivot column
/// together with the pivot columns.
pub fn rref(field: PrimeField, ncols: usize, rows: Vec<Vec<Fe>>) -> (Vec<Vec<Fe>>, Vec<usize>) {
    let mut m = rows;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in m[r].iter_mut() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x = &*x - &(&f * y);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    let _ = field;
    (m, pivots)
}

/// Basis of `{x : x·M = 0}`.
pub fn left_kernel(m: &Mat) -> Vec<Vec<Fe>> {
    let f = m.field();
    let t = m.transpose();
    let (red, piv) = rref(f, t.cols(), t.row_vecs());
    let n = m.rows();
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !piv.contains(c)) {
        let mut v = f.zeros(n);
        v[free] = f.one();
        for (row, &p) in red.iter().zip(&piv) {
            v[p] = -&row[free];
        }
        basis.push(v);
    }
    basis
}

/// Solutions of `x·M = b`: a particular solution and a kernel basis.
pub fn solve_left(m: &Mat, b: &[Fe]) -> Option<(Vec<Fe>, Vec<Vec<Fe>>)> {
    let f = m.field();
    let n = m.rows();
    assert_eq!(b.len(), m.cols());
    let rows: Vec<Vec<Fe>> = (0..m.cols())
        .map(|j| {
            let mut r: Vec<Fe> = (0..n).map(|i| m.get(i, j).clone()).collect();
            r.push(b[j].clone());
            r
        })
        .collect();
    let (red, piv) = rref(f, n + 1, rows);
    if piv.contains(&n) {
        return None;
    }
    let mut x = f.zeros(n);
    for (row, &p) in red.iter().zip(&piv) {
        x[p] = row[n].clone();
    }
    Some((x, left_kernel(m)))
}

/// An echelonized subspace of `F^n`. Equal subspaces have identical bases.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    field: PrimeField,
    n: usize,
    basis: Vec<Vec<Fe>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: PrimeField, n: usize) -> Subspace {
        Subspace { field, n, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: PrimeField, n: usize) -> Subspace {
        Subspace::span(field, n, (0..n).map(|i| field.unit_vector(n, i)).collect())
    }

    pub fn span(field: PrimeField, n: usize, vectors: Vec<Vec<Fe>>) -> Subspace {
        for v in &vectors {
            assert_eq!(v.len(), n, "vector length mismatch");
        }
        let (basis, pivots) = rref(field, n, vectors);
        Subspace { field, n, basis, pivots }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }
    pub fn ambient(&self) -> usize {
        self.n
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[Vec<Fe>] {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Canonical representative of `v` modulo this subspace.
    pub fn reduce(&self, v: &[Fe]) -> Vec<Fe> {
        let mut w = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let c = w[p].clone();
                for (x, y) in w.iter_mut().zip(b) {
                    if !y.is_zero() {
                        *x = &*x - &(&c * y);
                    }
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Fe]) -> bool {
        vec_is_zero(&self.reduce(v))
    }

    pub fn contains_space(&self, o: &Subspace) -> bool {
        o.basis.iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[Fe]) -> Option<Vec<Fe>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn from_coords(&self, c: &[Fe]) -> Vec<Fe> {
        lin_comb(self.field, self.n, c, &self.basis)
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        let mut v = self.basis.clone();
        v.extend(o.basis.iter().cloned());
        Subspace::span(self.field, self.n, v)
    }

    pub fn intersect(&self, o: &Subspace) -> Subspace {
        if self.is_zero() || o.is_zero() {
            return Subspace::zero(self.field, self.n);
        }
        let mut rows = self.basis.clone();
        rows.extend(o.basis.iter().map(|v| vec_neg(v)));
        let stacked = Mat::from_rows(self.field, self.n, rows);
        let k = self.dim();
        let vecs = left_kernel(&stacked)
            .into_iter()
            .map(|x| lin_comb(self.field, self.n, &x[..k], &self.basis))
            .collect();
        Subspace::span(self.field, self.n, vecs)
    }

    /// Image under `v ↦ v·M`.
    pub fn image(&self, m: &Mat) -> Subspace {
        Subspace::span(self.field, m.cols(), self.basis.iter().map(|b| m.vec_mul(b)).collect())
    }

    /// Unit vectors at the non-pivot coordinates; they span a complement.
    pub fn complement_basis(&self) -> Vec<Vec<Fe>> {
        (0..self.n).filter(|c| !self.pivots.contains(c)).map(|c| self.field.unit_vector(self.n, c)).collect()
    }

    /// Coordinates of `v` modulo this subspace, in the complement basis.
    pub fn quotient_coords(&self, v: &[Fe]) -> Vec<Fe> {
        let r = self.reduce(v);
        (0..self.n).filter(|c| !self.pivots.contains(c)).map(|c| r[c].clone()).collect()
    }

    /// All vectors (finite fields only).
    pub fn elements(&self) -> Option<Vec<Vec<Fe>>> {
        let coeffs = self.field.all_vectors(self.dim())?;
        Some(coeffs.iter().map(|c| self.from_coords(c)).collect())
    }

    pub fn is_invariant_under(&self, m: &Mat) -> bool {
        self.basis.iter().all(|b| self.contains(&m.vec_mul(b)))
    }

    /// Smallest subspace containing this one and stable under every matrix in `gens`.
    pub fn closure_under(&self, gens: &[Mat]) -> Subspace {
        let mut cur = self.clone();
        loop {
            let mut vecs = cur.basis.clone();
            for g in gens {
                for b in &cur.basis {
                    vecs.push(g.vec_mul(b));
                }
            }
            let next = Subspace::span(self.field, self.n, vecs);
            if next.dim() == cur.dim() {
                return cur;
            }
            cur = next;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> PrimeField {
        PrimeField::Q
    }

    #[test]
    fn inverse_round_trip() {
        let m = Mat::from_ints(q(), &[&[2, 1], &[7, 4]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(Mat::from_ints(q(), &[&[1, 2], &[2, 4]]).inverse().is_none());
        assert_eq!(m.determinant(), q().int(1));
        assert_eq!(Mat::from_ints(q(), &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 3]]).determinant(), q().int(-3));
    }

    #[test]
    fn right_action_composes_in_order() {
        let f = PrimeField::Fp(5);
        let a = Mat::from_ints(f, &[&[1, 0], &[1, 1]]);
        let b = Mat::from_ints(f, &[&[1, 1], &[0, 1]]);
        let v = vec![f.int(0), f.int(1)];
        assert_eq!(b.vec_mul(&a.vec_mul(&v)), a.mul(&b).vec_mul(&v));
    }

    #[test]
    fn kernel_and_solve() {
        let m = Mat::from_ints(q(), &[&[1, 2], &[2, 4], &[0, 1]]);
        let k = left_kernel(&m);
        assert_eq!(k.len(), 1);
        assert!(vec_is_zero(&m.vec_mul(&k[0])));
        let (x, _) = solve_left(&m, &[q().int(3), q().int(7)]).unwrap();
        assert_eq!(m.vec_mul(&x), vec![q().int(3), q().int(7)]);
        let sing = Mat::from_ints(q(), &[&[1, 2], &[2, 4]]);
        assert!(solve_left(&sing, &[q().int(1), q().int(0)]).is_none());
    }

    #[test]
    fn subspace_sum_and_intersection() {
        let f = PrimeField::Fp(2);
        let u = Subspace::span(f, 3, vec![vec![f.int(1), f.int(0), f.int(0)], vec![f.int(0), f.int(1), f.int(0)]]);
        let w = Subspace::span(f, 3, vec![vec![f.int(0), f.int(1), f.int(0)], vec![f.int(0), f.int(0), f.int(1)]]);
        assert_eq!(u.intersect(&w).dim(), 1);
        assert_eq!(u.sum(&w).dim(), 3);
        assert!(u.intersect(&w).contains(&[f.int(0), f.int(1), f.int(0)]));
        assert_eq!(u.elements().unwrap().len(), 4);
    }

    #[test]
    fn reduce_gives_canonical_cosets() {
        let s = Subspace::span(q(), 2, vec![vec![q().int(1), q().int(1)]]);
        assert_eq!(s.reduce(&[q().int(3), q().int(1)]), s.reduce(&[q().int(2), q().int(0)]));
        assert_eq!(s.quotient_coords(&[q().int(3), q().int(1)]), vec![q().int(-2)]);
    }
}
