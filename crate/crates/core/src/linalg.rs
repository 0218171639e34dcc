//! Exact dense linear algebra over the Gaussian rationals.
//!
//! Pivoting is deterministic (leftmost nonzero column, topmost nonzero row),
//! so every basis produced here is reproducible run to run. The elimination
//! loops skip zero entries of the pivot row, which matters a lot for the
//! mostly-monomial matrices the Clifford layer produces.

use std::fmt;

use crate::error::Error;
use crate::scalar::GaussianRational as Q;

pub type Vector = Vec<Q>;

/// Dense `rows × cols` matrix over `Q(i)`, row major.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.set(k, k, Q::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vector>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        ExactMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Q) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    /// Parses integer literals; handy in tests.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Q::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Q {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Q) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self, r: usize) -> Vector {
        self.row(r).to_vec()
    }

    pub fn col_vec(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Q::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn scale(&self, s: &Q) -> Self {
        let mut out = self.clone();
        for v in &mut out.data {
            if !v.is_zero() {
                *v = &*v * s;
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let t = a * b;
                    let cell = &mut out.data[i * other.cols + j];
                    *cell += &t;
                }
            }
        }
        out
    }

    /// Matrix applied to a column vector.
    pub fn apply(&self, v: &[Q]) -> Vector {
        assert_eq!(self.cols, v.len(), "apply shape mismatch");
        let mut out = vec![Q::zero(); self.rows];
        for (k, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for i in 0..self.rows {
                let a = self.at(i, k);
                if !a.is_zero() {
                    out[i] += &(a * x);
                }
            }
        }
        out
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.at(r, c).clone()
            } else {
                other.at(r, c - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        ExactMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Reduced row-echelon form together with the pivot columns.
    ///
    /// The result is the unique RREF of the input; pivot columns are strictly
    /// increasing.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = rref_in_place(&mut m);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        rref_in_place(&mut m).len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Basis of `{x : Ax = 0}`, one vector per free column of the RREF.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let piv_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = Some(k);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if piv_set[free].is_some() {
                continue;
            }
            let mut v = vec![Q::zero(); self.cols];
            v[free] = Q::one();
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = -r.at(k, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// A particular solution of `Ax = b`, or `None` when `b` is not in the
    /// column space. Free variables are set to zero.
    pub fn solve(&self, b: &[Q]) -> Result<Option<Vector>, Error> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: matrix has {} rows, rhs has length {}",
                self.rows,
                b.len()
            )));
        }
        let rhs = ExactMatrix::from_rows(b.iter().map(|x| vec![x.clone()]).collect());
        Ok(self
            .solve_matrix(&rhs)?
            .map(|x| (0..self.cols).map(|r| x.at(r, 0).clone()).collect()))
    }

    /// Solves `AX = B` column by column in one elimination pass; `None` if any
    /// column of `B` falls outside the column space of `A`.
    pub fn solve_matrix(&self, b: &Self) -> Result<Option<Self>, Error> {
        if b.rows != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: matrix has {} rows, rhs has {}",
                self.rows, b.rows
            )));
        }
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = ExactMatrix::zeros(self.cols, b.cols);
        for (k, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, r.at(k, self.cols + j).clone());
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let aug = self.hstack(&Self::identity(self.rows));
        let (r, pivots) = aug.rref();
        if pivots.len() != self.rows || pivots.iter().enumerate().any(|(k, &p)| k != p) {
            return None;
        }
        Some(Self::from_fn(self.rows, self.rows, |i, j| {
            r.at(i, self.rows + j).clone()
        }))
    }

    pub fn trace(&self) -> Q {
        assert_eq!(self.rows, self.cols);
        let mut t = Q::zero();
        for k in 0..self.rows {
            t += self.at(k, k);
        }
        t
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// In-place Gauss–Jordan; returns the pivot columns.
fn rref_in_place(m: &mut ExactMatrix) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Topmost nonzero entry in this column at or below row r.
        let Some(p) = (r..rows).find(|&rr| !m.at(rr, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.data.swap(p * cols + j, r * cols + j);
            }
        }
        // Normalize the pivot row.
        let inv = m.at(r, c).inverse().expect("pivot is nonzero");
        if !inv.is_one() {
            for j in c..cols {
                let cell = &mut m.data[r * cols + j];
                if !cell.is_zero() {
                    *cell = &*cell * &inv;
                }
            }
        }
        // Columns where the pivot row is nonzero; everything else is untouched.
        let nz: Vec<usize> = (c..cols).filter(|&j| !m.at(r, j).is_zero()).collect();
        for t in 0..rows {
            if t == r {
                continue;
            }
            let factor = m.at(t, c).clone();
            if factor.is_zero() {
                continue;
            }
            for &j in &nz {
                let s = &factor * m.at(r, j);
                let cell = &mut m.data[t * cols + j];
                *cell -= &s;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// A subspace of `Q(i)^n` in canonical form: the nonzero rows of an RREF.
///
/// Two row spaces are equal iff their canonical bases are equal, which makes
/// basis-independence tests exact.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RowSpace {
    basis: ExactMatrix,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn from_rows(rows: Vec<Vector>, ambient_dim: usize) -> Self {
        if rows.is_empty() {
            return RowSpace {
                basis: ExactMatrix::zeros(0, ambient_dim),
                pivots: Vec::new(),
            };
        }
        let m = ExactMatrix::from_rows(rows);
        Self::from_matrix(&m)
    }

    pub fn from_matrix(m: &ExactMatrix) -> Self {
        let (r, pivots) = m.rref();
        let dim = pivots.len();
        let basis = ExactMatrix::from_fn(dim, m.cols(), |i, j| r.at(i, j).clone());
        RowSpace { basis, pivots }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vector> {
        (0..self.dim()).map(|r| self.basis.row_vec(r)).collect()
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is outside
    /// the subspace. Reading off pivot columns suffices because the basis is
    /// in RREF.
    pub fn coordinates(&self, v: &[Q]) -> Option<Vector> {
        assert_eq!(v.len(), self.ambient_dim());
        let coords: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        // Residual must vanish exactly.
        let mut residual = v.to_vec();
        for (k, coef) in coords.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            for j in 0..v.len() {
                let b = self.basis.at(k, j);
                if !b.is_zero() {
                    residual[j] -= &(coef * b);
                }
            }
        }
        if residual.iter().all(Q::is_zero) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_space(&self, other: &RowSpace) -> bool {
        (0..other.dim()).all(|r| self.contains(other.basis.row(r)))
    }

    /// Sum of two subspaces of the same ambient space.
    pub fn sum(&self, other: &RowSpace) -> RowSpace {
        RowSpace::from_matrix(&self.basis.vstack(&other.basis))
    }

    /// Intersection, via the kernel of the stacked basis.
    pub fn intersect(&self, other: &RowSpace) -> RowSpace {
        if self.dim() == 0 || other.dim() == 0 {
            return RowSpace::from_rows(Vec::new(), self.ambient_dim());
        }
        // x = a·B1 = b·B2  <=>  (a, b) in kernel of [B1^T | -B2^T].
        let stacked = self
            .basis
            .transpose()
            .hstack(&other.basis.transpose().scale(&-Q::one()));
        let mut rows = Vec::new();
        for k in stacked.kernel_basis() {
            let a = &k[..self.dim()];
            let mut v = vec![Q::zero(); self.ambient_dim()];
            for (idx, coef) in a.iter().enumerate() {
                if coef.is_zero() {
                    continue;
                }
                for j in 0..self.ambient_dim() {
                    let b = self.basis.at(idx, j);
                    if !b.is_zero() {
                        v[j] += &(coef * b);
                    }
                }
            }
            rows.push(v);
        }
        RowSpace::from_rows(rows, self.ambient_dim())
    }
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    assert_eq!(a.len(), b.len());
    let mut s = Q::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += &(x * y);
        }
    }
    s
}

pub fn add_scaled(target: &mut [Q], src: &[Q], coef: &Q) {
    if coef.is_zero() {
        return;
    }
    for (t, s) in target.iter_mut().zip(src) {
        if !s.is_zero() {
            *t += &(coef * s);
        }
    }
}

pub fn zero_vector(n: usize) -> Vector {
    vec![Q::zero(); n]
}

pub fn unit_vector(n: usize, k: usize) -> Vector {
    let mut v = zero_vector(n);
    v[k] = Q::one();
    v
}

pub fn is_zero_vector(v: &[Q]) -> bool {
    v.iter().all(Q::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qi() -> Q {
        Q::i()
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = ExactMatrix::identity(3);
        let (r, pivots) = id.rref();
        assert_eq!(r, id);
        assert_eq!(pivots, vec![0, 1, 2]);

        let z = ExactMatrix::zeros(2, 2);
        let (r, pivots) = z.rref();
        assert!(r.is_zero());
        assert!(pivots.is_empty());
    }

    #[test]
    fn rref_gaussian_example() {
        // [[1, i], [i, -1]]: second row is i times the first.
        let m = ExactMatrix::from_rows(vec![
            vec![Q::one(), qi()],
            vec![qi(), Q::from_int(-1)],
        ]);
        let (r, pivots) = m.rref();
        assert_eq!(pivots, vec![0]);
        assert_eq!(r.at(0, 0), &Q::one());
        assert_eq!(r.at(0, 1), &qi());
        assert!(r.row(1).iter().all(Q::is_zero));
    }

    #[test]
    fn kernel_cases() {
        assert!(ExactMatrix::identity(4).kernel_basis().is_empty());

        // [[1, i]] -> kernel spanned by (-i, 1).
        let m = ExactMatrix::from_rows(vec![vec![Q::one(), qi()]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        // Check A k = 0 and that it is a multiple of (-i, 1).
        assert!(is_zero_vector(&[dot(m.row(0), &k[0])]));
        let scale = k[0][1].inverse().unwrap();
        assert_eq!(&k[0][0] * &scale, -qi());

        let z = ExactMatrix::zeros(3, 3);
        assert_eq!(z.kernel_basis().len(), 3);

        // rank + nullity = cols.
        assert_eq!(m.rank() + m.nullity(), m.cols());
    }

    #[test]
    fn solve_cases() {
        let id = ExactMatrix::identity(3);
        let b = vec![Q::from_int(2), qi(), Q::from_ratio(1, 2)];
        assert_eq!(id.solve(&b).unwrap().unwrap(), b);

        // A = [[1],[i]], b = (1, i) -> x = (1).
        let a = ExactMatrix::from_rows(vec![vec![Q::one()], vec![qi()]]);
        let x = a.solve(&[Q::one(), qi()]).unwrap().unwrap();
        assert_eq!(x, vec![Q::one()]);

        // b = (1, 0) is not proportional to (1, i).
        assert!(a.solve(&[Q::one(), Q::zero()]).unwrap().is_none());

        // Dimension mismatch is an explicit error.
        assert!(a.solve(&[Q::one()]).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let m = ExactMatrix::from_rows(vec![
            vec![Q::one(), qi(), Q::zero()],
            vec![Q::zero(), Q::one(), Q::from_ratio(1, 2)],
            vec![qi(), Q::zero(), Q::one()],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), ExactMatrix::identity(3));
        assert_eq!(inv.mul(&m), ExactMatrix::identity(3));

        let singular = ExactMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn row_space_equality() {
        let a = RowSpace::from_rows(
            vec![vec![Q::one(), qi()], vec![Q::from_int(2), &qi() * &Q::from_int(2)]],
            2,
        );
        let b = RowSpace::from_rows(vec![vec![-qi(), Q::one()]], 2);
        // (−i)(1, i) = (−i, 1): same line.
        assert_eq!(a, b);
        assert_eq!(a.dim(), 1);
        assert!(a.contains(&[&qi() * &Q::from_int(3), Q::from_int(-3)]));
    }

    #[test]
    fn row_space_intersection() {
        let e1 = vec![Q::one(), Q::zero(), Q::zero()];
        let e2 = vec![Q::zero(), Q::one(), Q::zero()];
        let e3 = vec![Q::zero(), Q::zero(), Q::one()];
        let a = RowSpace::from_rows(vec![e1.clone(), e2.clone()], 3);
        let b = RowSpace::from_rows(vec![e2.clone(), e3], 3);
        let c = a.intersect(&b);
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&e2));
    }
}
