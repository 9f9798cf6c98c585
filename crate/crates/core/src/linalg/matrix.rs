use std::fmt;

use super::field::{format_rational, Field, Rational};
use super::LinalgError;

/// Dense row-major matrix over a [`Field`].
#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

pub type RationalMatrix = Matrix<Rational>;
pub type ComplexMatrix = Matrix<num_complex::Complex64>;

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    pub fn scalar(n: usize, value: F) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = value.clone();
        }
        m
    }

    pub fn diagonal(values: &[F]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m.data[i * n + i] = v.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::Ragged);
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
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

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: F) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && self.approx_eq(&Self::identity(self.rows))
    }

    pub fn is_diagonal(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal_entries(&self) -> Vec<F> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    /// Literal equality in exact mode, tolerance-based in complex mode.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| a.approx_eq(b))
    }

    pub fn max_entry_difference(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.distance(b))
            .fold(0.0, f64::max)
    }

    /// First column in which the two matrices differ.
    pub fn first_differing_column(&self, other: &Self) -> Option<usize> {
        (0..self.cols).find(|&j| (0..self.rows).any(|i| !self.get(i, j).approx_eq(other.get(i, j))))
    }

    fn check_same_shape(&self, other: &Self) -> Result<(), LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.plus(b)).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.minus(b)).collect(),
        })
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|x| x.times(c))
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.negated())
    }

    /// `self += c * other`, skipping the work when `c` is zero.
    pub fn add_scaled(&mut self, c: &F, other: &Self) -> Result<(), LinalgError> {
        self.check_same_shape(other)?;
        if c.is_zero() {
            return Ok(());
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                a.add_assign_ref(&b.times(c));
            }
        }
        Ok(())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let n = other.cols;
        let mut out = Self::zeros(self.rows, n);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * n..(i + 1) * n];
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let b_row = &other.data[k * n..(k + 1) * n];
                for (o, b) in out_row.iter_mut().zip(b_row) {
                    if !b.is_zero() {
                        o.add_assign_ref(&a.times(b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Product of a non-empty chain, left to right.
    pub fn product<'a>(factors: impl IntoIterator<Item = &'a Self>) -> Result<Self, LinalgError> {
        let mut iter = factors.into_iter();
        let mut acc = iter.next().ok_or(LinalgError::Empty)?.clone();
        for f in iter {
            acc = acc.matmul(f)?;
        }
        Ok(acc)
    }

    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.data[(i * other.rows + k) * cols + j * other.cols + l] = a.times(b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn commutes_with(&self, other: &Self) -> Result<bool, LinalgError> {
        Ok(self.matmul(other)?.approx_eq(&other.matmul(self)?))
    }

    fn pivot_row(&self, col: usize, from: usize) -> Option<usize> {
        if F::is_exact() {
            (from..self.rows).find(|&r| !self.get(r, col).is_zero())
        } else {
            let zero = F::zero();
            (from..self.rows)
                .filter(|&r| !self.get(r, col).is_zero())
                .max_by(|&a, &b| {
                    self.get(a, col)
                        .distance(&zero)
                        .total_cmp(&self.get(b, col).distance(&zero))
                })
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = self.pivot_row(c, r) else {
                continue;
            };
            self.swap_rows(p, r);
            let inv = self.get(r, c).inv().expect("pivot is nonzero");
            for j in c..self.cols {
                let v = self.get(r, j).times(&inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let pv = self.get(r, j);
                    if pv.is_zero() {
                        continue;
                    }
                    let v = self.get(i, j).minus(&factor.times(pv));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    pub fn inverse(&self) -> Result<Self, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, F::one());
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(LinalgError::Singular);
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// Basis of the right nullspace, one column vector per free variable
    /// (free variable set to 1, other free variables 0).
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let mut r = self.clone();
        let pivots = r.rref_in_place();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = r.get(row, f).negated();
                }
                v
            })
            .collect()
    }

    /// Square matrix power with non-negative exponent.
    pub fn pow(&self, mut exp: u32) -> Result<Self, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        let mut acc = Self::identity(self.rows);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.matmul(&base)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.matmul(&base)?;
            }
        }
        Ok(acc)
    }
}

impl RationalMatrix {
    /// Embeds an exact matrix into another field.
    pub fn embed<G: Field>(&self) -> Matrix<G> {
        self.map(G::from_rational)
    }

    /// Entries as `"p/q"` strings.
    pub fn to_report_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(format_rational).collect())
            .collect()
    }
}

/// Permutation taking `x ⊗ y` (dims `dx`, `dy`) to `y ⊗ x`.
pub fn flip<F: Field>(dx: usize, dy: usize) -> Matrix<F> {
    let n = dx * dy;
    let mut m = Matrix::zeros(n, n);
    for i in 0..dx {
        for j in 0..dy {
            m.set(j * dx + i, i * dy + j, F::one());
        }
    }
    m
}

/// Permutation matrix moving tensor slot `i` to slot `perm[i]`.
pub fn leg_permutation<F: Field>(dims: &[usize], perm: &[usize]) -> Matrix<F> {
    let n: usize = dims.iter().product();
    let k = dims.len();
    let mut target_dims = vec![0; k];
    for (i, &p) in perm.iter().enumerate() {
        target_dims[p] = dims[i];
    }
    let mut m = Matrix::zeros(n, n);
    let mut idx = vec![0usize; k];
    for flat in 0..n {
        let mut rem = flat;
        for s in (0..k).rev() {
            idx[s] = rem % dims[s];
            rem /= dims[s];
        }
        let mut target = 0;
        for s in 0..k {
            let src = perm.iter().position(|&p| p == s).expect("perm is a permutation");
            target = target * target_dims[s] + idx[src];
        }
        m.set(target, flat, F::one());
    }
    m
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let parts: Vec<String> = self.row(i).iter().map(|x| x.report_parts().join(",")).collect();
            writeln!(f, "  [{}]", parts.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::field::{int, rat};

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let k = RationalMatrix::identity(2).kron(&RationalMatrix::identity(3));
        assert_eq!(k, RationalMatrix::identity(6));
    }

    #[test]
    fn inverse_of_diagonal() {
        let d = RationalMatrix::diagonal(&[int(2), int(3)]);
        assert_eq!(d.inverse().unwrap(), RationalMatrix::diagonal(&[rat(1, 2), rat(1, 3)]));
    }

    #[test]
    fn singular_inverse_is_an_error() {
        let s = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.inverse(), Err(LinalgError::Singular));
    }

    #[test]
    fn nullspace_of_row_vector() {
        let a = m(&[&[1, -1]]);
        assert_eq!(a.nullspace(), vec![vec![int(1), int(1)]]);
    }

    #[test]
    fn matmul_shape_mismatch() {
        let a = m(&[&[1, 2]]);
        assert!(matches!(a.matmul(&a), Err(LinalgError::ShapeMismatch { .. })));
    }

    #[test]
    fn flip_swaps_tensor_factors() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let b = m(&[&[5, 6, 7], &[8, 9, 10], &[11, 12, 13]]);
        let tau = flip::<Rational>(2, 3);
        let lhs = tau.matmul(&a.kron(&b)).unwrap();
        let rhs = b.kron(&a).matmul(&tau).unwrap();
        assert_eq!(lhs, rhs);
        assert!(tau.matmul(&flip(3, 2)).unwrap().is_identity());
    }

    #[test]
    fn leg_permutation_moves_slots() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let b = m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 2]]);
        let c = m(&[&[5]]);
        // a in slot 0 -> slot 2, b slot 1 -> slot 0, c slot 2 -> slot 1
        let perm = [2, 0, 1];
        let p = leg_permutation::<Rational>(&[2, 3, 1], &perm);
        let lhs = p.matmul(&a.kron(&b).kron(&c)).unwrap();
        let rhs = b.kron(&c).kron(&a).matmul(&p).unwrap();
        assert_eq!(lhs, rhs);
    }
}
