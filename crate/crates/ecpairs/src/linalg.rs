//! Dense matrices over a finite field, with reduced row echelon form,
//! null spaces, and row space comparisons. Everything is exact.

use crate::error::{Error, Result};
use crate::gf::{Felt, Field};

/// Row-major matrix. Zero-row matrices are allowed (cols must still be known);
/// they show up as parity checks of the full space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Felt>,
}

/// Result of reduction: the canonical form, its rank, and the pivot columns
/// in strictly increasing order.
#[derive(Debug, Clone)]
pub struct Rref {
    pub mat: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Outcome of a linear solve A x = b.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solve {
    Unique(Vec<Felt>),
    Inconsistent,
    Underdetermined,
}

impl Mat {
    pub fn new(field: Field, rows: usize, cols: usize, entries: Vec<Felt>) -> Result<Mat> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| e.0 >= field.q()) {
            return Err(Error::ElementOutOfRange { value: bad.0, q: field.q() });
        }
        Ok(Mat { field, rows, cols, entries })
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Mat {
        Mat { field, rows, cols, entries: vec![Felt(0); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = Felt(1);
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Felt>>) -> Result<Mat> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Mat::new(field, nrows, ncols, rows.into_iter().flatten().collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Felt {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Felt) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        debug_assert!(v.0 < self.field.q());
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Felt] {
        assert!(i < self.rows);
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Felt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.entries[i * self.cols + j];
            }
        }
        t
    }

    /// Stack other's rows under self's.
    pub fn vstack(&self, other: &Mat) -> Result<Mat> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "cannot stack {} columns on {}",
                other.cols, self.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(Mat { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, entries })
    }

    /// Keep exactly the columns listed, in the order given.
    pub fn select_columns(&self, keep: &[usize]) -> Result<Mat> {
        if let Some(&j) = keep.iter().find(|&&j| j >= self.cols) {
            return Err(Error::BadIndex(format!("column {j} out of range")));
        }
        let mut entries = Vec::with_capacity(self.rows * keep.len());
        for i in 0..self.rows {
            let r = self.row(i);
            entries.extend(keep.iter().map(|&j| r[j]));
        }
        Ok(Mat { field: self.field.clone(), rows: self.rows, cols: keep.len(), entries })
    }

    /// Reduced row echelon form. Pivoting is leftmost nonzero column,
    /// topmost nonzero row; the output is the canonical form of the row space.
    pub fn rref(&self) -> Rref {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, col) != Felt(0)) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, col)).expect("pivot is nonzero");
            m.scale_row(r, inv);
            for i in 0..m.rows {
                if i != r {
                    let c = m.get(i, col);
                    if c != Felt(0) {
                        m.add_scaled_row(i, r, f.neg(c));
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        Rref { mat: m, rank: r, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right null space { x : M x = 0 }, one vector per row,
    /// itself in reduced row echelon form. Row count is cols - rank.
    pub fn kernel(&self) -> Mat {
        let f = self.field.clone();
        let red = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|j| !red.pivots.contains(j)).collect();
        let mut basis = Mat::zeros(f.clone(), free.len(), self.cols);
        for (bi, &fc) in free.iter().enumerate() {
            basis.set(bi, fc, Felt(1));
            for (ri, &pc) in red.pivots.iter().enumerate() {
                let v = red.mat.get(ri, fc);
                if v != Felt(0) {
                    basis.set(bi, pc, f.neg(v));
                }
            }
        }
        let canon = basis.rref();
        debug_assert_eq!(canon.rank, free.len(), "kernel basis rows are independent");
        canon.mat
    }

    /// Matrix product self * other.
    pub fn mat_mul(&self, other: &Mat) -> Result<Mat> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Mat::zeros(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == Felt(0) {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, f.add(cur, f.mul(a, other.get(l, j))));
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Felt]) -> Result<Vec<Felt>> {
        if v.len() != self.rows {
            return Err(Error::LengthMismatch { expected: self.rows, got: v.len() });
        }
        let f = &self.field;
        let mut out = vec![Felt(0); self.cols];
        for (i, &c) in v.iter().enumerate() {
            if c == Felt(0) {
                continue;
            }
            let r = self.row(i);
            for j in 0..self.cols {
                out[j] = f.add(out[j], f.mul(c, r[j]));
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[Felt]) -> Result<Vec<Felt>> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch { expected: self.cols, got: v.len() });
        }
        let f = &self.field;
        let mut out = vec![Felt(0); self.rows];
        for (i, slot) in out.iter_mut().enumerate() {
            let r = self.row(i);
            let mut acc = Felt(0);
            for (&rj, &vj) in r.iter().zip(v) {
                acc = f.add(acc, f.mul(rj, vj));
            }
            *slot = acc;
        }
        Ok(out)
    }

    /// Do the two matrices span the same row space?
    pub fn rowspace_eq(&self, other: &Mat) -> Result<bool> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "row spaces in different ambient dimensions {} and {}",
                self.cols, other.cols
            )));
        }
        let a = self.rref();
        let b = other.rref();
        Ok(a.rank == b.rank
            && a.mat.entries[..a.rank * a.mat.cols] == b.mat.entries[..b.rank * b.mat.cols])
    }

    /// Is every row of self inside the row space of other?
    pub fn rows_in_rowspace(&self, other: &Mat) -> Result<bool> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch("ambient dimensions differ".into()));
        }
        if self.rows == 0 {
            return Ok(true);
        }
        let base = other.rank();
        Ok(other.vstack(self)?.rank() == base)
    }

    /// Solve self * x = b, classifying the solution set.
    pub fn solve(&self, b: &[Felt]) -> Result<Solve> {
        if b.len() != self.rows {
            return Err(Error::LengthMismatch { expected: self.rows, got: b.len() });
        }
        let f = self.field.clone();
        // Augment with b as an extra column and reduce.
        let mut aug = Mat::zeros(f.clone(), self.rows, self.cols + 1);
        for (i, &bi) in b.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, bi);
        }
        let red = aug.rref();
        if red.pivots.contains(&self.cols) {
            return Ok(Solve::Inconsistent);
        }
        if red.rank < self.cols {
            return Ok(Solve::Underdetermined);
        }
        let mut x = vec![Felt(0); self.cols];
        for (ri, &pc) in red.pivots.iter().enumerate() {
            x[pc] = red.mat.get(ri, self.cols);
        }
        Ok(Solve::Unique(x))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, i: usize, c: Felt) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            self.entries[idx] = self.field.mul(self.entries[idx], c);
        }
    }

    // row i += c * row src
    fn add_scaled_row(&mut self, i: usize, src: usize, c: Felt) {
        for j in 0..self.cols {
            let v = self.field.mul(self.entries[src * self.cols + j], c);
            let idx = i * self.cols + j;
            self.entries[idx] = self.field.add(self.entries[idx], v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    fn felts(vals: &[u64]) -> Vec<Felt> {
        vals.iter().map(|&v| Felt(v)).collect()
    }

    // Rows v_j^i for i in 0..rows, conventions 0^0 = 1.
    fn vandermonde(field: &Field, points: &[Felt], rows: usize) -> Mat {
        let mut m = Mat::zeros(field.clone(), rows, points.len());
        for i in 0..rows {
            for (j, &x) in points.iter().enumerate() {
                m.set(i, j, field.pow(x, i as i64).unwrap());
            }
        }
        m
    }

    #[test]
    fn rref_of_identity_and_zero() {
        let id = Mat::identity(f(5), 4);
        let r = id.rref();
        assert_eq!(r.mat, id);
        assert_eq!(r.rank, 4);
        assert_eq!(r.pivots, vec![0, 1, 2, 3]);

        let z = Mat::zeros(f(5), 3, 4);
        let r = z.rref();
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
        assert_eq!(r.mat, z);
    }

    #[test]
    fn vandermonde_rank_against_minor_oracle() {
        let f37 = f(37);
        let pts: Vec<Felt> = (0..10).map(Felt).collect();
        let v = vandermonde(&f37, &pts, 3);
        assert_eq!(v.rref().rank, 3);
        // Independent check: some 3x3 minor has a nonzero determinant,
        // computed with the direct formula.
        let det = |c0: usize, c1: usize, c2: usize| -> Felt {
            let g = |i: usize, j: usize| v.get(i, j);
            let f = &f37;
            let t1 = f.mul(g(0, c0), f.sub(f.mul(g(1, c1), g(2, c2)), f.mul(g(1, c2), g(2, c1))));
            let t2 = f.mul(g(0, c1), f.sub(f.mul(g(1, c0), g(2, c2)), f.mul(g(1, c2), g(2, c0))));
            let t3 = f.mul(g(0, c2), f.sub(f.mul(g(1, c0), g(2, c1)), f.mul(g(1, c1), g(2, c0))));
            f.add(f.sub(t1, t2), t3)
        };
        let mut found = false;
        for c0 in 0..10 {
            for c1 in c0 + 1..10 {
                for c2 in c1 + 1..10 {
                    if det(c0, c1, c2) != Felt(0) {
                        found = true;
                    }
                }
            }
        }
        assert!(found);
        // And a repeated-point Vandermonde drops rank.
        let bad = vandermonde(&f37, &felts(&[1, 1, 2]), 3);
        assert_eq!(bad.rref().rank, 2);
    }

    #[test]
    fn kernel_shapes_and_membership() {
        let id = Mat::identity(f(7), 5);
        assert_eq!(id.kernel().rows(), 0);

        let ones = Mat::from_rows(f(2), vec![felts(&[1, 1])]).unwrap();
        let k = ones.kernel();
        assert_eq!(k.rows(), 1);
        assert_eq!(k.row(0), &felts(&[1, 1])[..]);

        let f37 = f(37);
        let v = vandermonde(&f37, &(0..10).map(Felt).collect::<Vec<_>>(), 7);
        let k = v.kernel();
        assert_eq!(k.rows(), 3);
        for i in 0..k.rows() {
            let prod = v.mul_vec(k.row(i)).unwrap();
            assert!(prod.iter().all(|&x| x == Felt(0)));
        }
        // kernel output is canonical: reducing it again changes nothing
        let again = k.rref();
        assert_eq!(again.mat, k);
        assert_eq!(again.rank, 3);
    }

    #[test]
    fn product_and_annihilation() {
        let f5 = f(5);
        let a = Mat::from_rows(f5.clone(), vec![felts(&[1, 2, 3]), felts(&[0, 1, 4])]).unwrap();
        let id = Mat::identity(f5.clone(), 3);
        assert_eq!(a.mat_mul(&id).unwrap(), a);
        let z = Mat::zeros(f5.clone(), 3, 2);
        assert_eq!(a.mat_mul(&z).unwrap(), Mat::zeros(f5.clone(), 2, 2));
        assert!(a.mat_mul(&a).is_err());

        // A times a basis of its kernel, transposed, is zero.
        let k = a.kernel();
        let prod = a.mat_mul(&k.transpose()).unwrap();
        assert_eq!(prod, Mat::zeros(f5, 2, k.rows()));
    }

    #[test]
    fn rowspace_comparisons() {
        let f37 = f(37);
        let a = Mat::from_rows(f37.clone(), vec![felts(&[1, 2, 3]), felts(&[4, 5, 6])]).unwrap();
        // scaled and recombined rows, same span
        let b = Mat::from_rows(
            f37.clone(),
            vec![felts(&[2, 4, 6]), felts(&[5, 7, 9]), felts(&[1, 2, 3])],
        )
        .unwrap();
        assert!(a.rowspace_eq(&b).unwrap());
        let c = Mat::from_rows(f37.clone(), vec![felts(&[1, 2, 3])]).unwrap();
        assert!(!a.rowspace_eq(&c).unwrap());
        assert!(c.rows_in_rowspace(&a).unwrap());
        assert!(!a.rows_in_rowspace(&c).unwrap());
        let empty = Mat::zeros(f37.clone(), 0, 3);
        assert!(empty.rows_in_rowspace(&a).unwrap());

        // Monomial basis versus a Newton-style basis of the same
        // polynomial evaluation space.
        let pts: Vec<Felt> = (0..6).map(Felt).collect();
        let mono = vandermonde(&f37, &pts, 3);
        let mut newton = Mat::zeros(f37.clone(), 3, 6);
        for (j, &x) in pts.iter().enumerate() {
            newton.set(0, j, Felt(1));
            newton.set(1, j, f37.sub(x, Felt(0)));
            newton.set(2, j, f37.mul(f37.sub(x, Felt(0)), f37.sub(x, Felt(1))));
        }
        assert!(mono.rowspace_eq(&newton).unwrap());
    }

    #[test]
    fn solve_classification() {
        let f7 = f(7);
        let a = Mat::from_rows(f7.clone(), vec![felts(&[1, 1]), felts(&[0, 1]), felts(&[1, 0])])
            .unwrap();
        match a.solve(&felts(&[5, 2, 3])).unwrap() {
            Solve::Unique(x) => assert_eq!(x, felts(&[3, 2])),
            other => panic!("expected unique, got {other:?}"),
        }
        assert_eq!(a.solve(&felts(&[5, 2, 4])).unwrap(), Solve::Inconsistent);

        let wide = Mat::from_rows(f7.clone(), vec![felts(&[1, 1, 1])]).unwrap();
        assert_eq!(wide.solve(&felts(&[3])).unwrap(), Solve::Underdetermined);

        // 0x0 system with empty rhs is trivially unique (empty solution).
        let trivial = Mat::zeros(f7, 0, 0);
        assert_eq!(trivial.solve(&[]).unwrap(), Solve::Unique(vec![]));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_mat() -> impl Strategy<Value = Mat> {
            (0usize..4, 1usize..7, 1usize..7).prop_flat_map(|(fi, r, c)| {
                let field = [f(2), f(3), f(5), f(37)][fi].clone();
                let q = field.q();
                proptest::collection::vec(0u64..q, r * c)
                    .prop_map(move |vals| {
                        Mat::new(field.clone(), r, c, vals.into_iter().map(Felt).collect())
                            .unwrap()
                    })
            })
        }

        proptest! {
            #[test]
            fn rref_is_idempotent(m in arb_mat()) {
                let r1 = m.rref();
                let r2 = r1.mat.rref();
                prop_assert_eq!(&r1.mat, &r2.mat);
                prop_assert_eq!(r1.rank, r2.rank);
                prop_assert_eq!(r1.pivots, r2.pivots);
            }

            #[test]
            fn rank_equals_transpose_rank(m in arb_mat()) {
                prop_assert_eq!(m.rank(), m.transpose().rank());
            }

            #[test]
            fn rank_nullity(m in arb_mat()) {
                let k = m.kernel();
                prop_assert_eq!(m.rank() + k.rows(), m.cols());
                for i in 0..k.rows() {
                    let prod = m.mul_vec(k.row(i)).unwrap();
                    prop_assert!(prod.iter().all(|&x| x == Felt(0)));
                }
            }

            #[test]
            fn pivots_strictly_increase(m in arb_mat()) {
                let r = m.rref();
                prop_assert!(r.pivots.windows(2).all(|w| w[0] < w[1]));
                prop_assert_eq!(r.pivots.len(), r.rank);
            }
        }
    }
}
