//! Finite-dimensional associative algebras given by structure constants.
//!
//! An algebra is a basis, a unit vector, and the sparse tensor
//! `c[a][b] = coordinates of basis_a · basis_b`. Everything downstream
//! (Clifford algebras, matrix algebras, quotients, corners, Ext machinery)
//! speaks this one language. Algebras are immutable after construction and
//! shared behind an `Arc`.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::Error;
use crate::linalg::{self, ExactMatrix, RowSpace, Vector};
use crate::scalar::GaussianRational as Q;
use crate::Result;

/// Sparse coordinate vector: (basis index, coefficient), sorted by index.
pub type SparseVec = Vec<(usize, Q)>;

pub fn sparse_from_dense(v: &[Q]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, c.clone()))
        .collect()
}

pub fn dense_from_sparse(v: &SparseVec, dim: usize) -> Vector {
    let mut out = linalg::zero_vector(dim);
    for (k, c) in v {
        out[*k] = c.clone();
    }
    out
}

struct AlgebraData {
    dim: usize,
    unit: Vector,
    /// `table[a * dim + b]` = coordinates of `e_a · e_b`.
    table: Vec<SparseVec>,
    /// Z/2 parity per basis element, when the algebra is graded.
    parity: Option<Vec<u8>>,
    basis_names: Vec<String>,
    /// A generating set, computed once at construction.
    generators: Vec<usize>,
}

/// A cheaply clonable handle to an immutable algebra.
#[derive(Clone)]
pub struct Algebra(Arc<AlgebraData>);

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra(dim {})", self.dim())
    }
}

impl Algebra {
    pub fn new(
        dim: usize,
        unit: Vector,
        table: Vec<SparseVec>,
        parity: Option<Vec<u8>>,
        basis_names: Vec<String>,
    ) -> Result<Self> {
        if unit.len() != dim || table.len() != dim * dim {
            return Err(Error::Internal("algebra constructor shape mismatch".into()));
        }
        if let Some(p) = &parity {
            if p.len() != dim {
                return Err(Error::Internal("parity labels have wrong length".into()));
            }
        }
        let names = if basis_names.is_empty() {
            (0..dim).map(|k| format!("b{k}")).collect()
        } else {
            basis_names
        };
        let mut alg = Algebra(Arc::new(AlgebraData {
            dim,
            unit,
            table,
            parity,
            basis_names: names,
            generators: Vec::new(),
        }));
        alg.check_unit_laws()?;
        let gens = alg.compute_generators();
        Arc::get_mut(&mut alg.0)
            .expect("freshly constructed algebra has a unique handle")
            .generators = gens;
        Ok(alg)
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground_field() -> Self {
        Algebra::new(
            1,
            vec![Q::one()],
            vec![vec![(0, Q::one())]],
            Some(vec![0]),
            vec!["1".into()],
        )
        .expect("ground field is well formed")
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn unit(&self) -> &Vector {
        &self.0.unit
    }

    pub fn parity(&self) -> Option<&[u8]> {
        self.0.parity.as_deref()
    }

    pub fn basis_name(&self, k: usize) -> &str {
        &self.0.basis_names[k]
    }

    pub fn same_as(&self, other: &Algebra) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn basis_product(&self, a: usize, b: usize) -> &SparseVec {
        &self.0.table[a * self.0.dim + b]
    }

    pub fn element(&self, coords: Vector) -> AlgebraElement {
        assert_eq!(coords.len(), self.dim());
        AlgebraElement {
            algebra: self.clone(),
            coords,
        }
    }

    pub fn zero_element(&self) -> AlgebraElement {
        self.element(linalg::zero_vector(self.dim()))
    }

    pub fn unit_element(&self) -> AlgebraElement {
        self.element(self.0.unit.clone())
    }

    pub fn basis_element(&self, k: usize) -> AlgebraElement {
        self.element(linalg::unit_vector(self.dim(), k))
    }

    /// Coordinates of `x · y`.
    pub fn multiply_coords(&self, x: &[Q], y: &[Q]) -> Vector {
        let mut out = linalg::zero_vector(self.dim());
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let coef = xa * yb;
                for (s, c) in self.basis_product(a, b) {
                    out[*s] += &(&coef * c);
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by `x` (columns are `x · e_b`).
    pub fn left_mult_matrix(&self, x: &[Q]) -> ExactMatrix {
        let d = self.dim();
        let mut m = ExactMatrix::zeros(d, d);
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for b in 0..d {
                for (s, c) in self.basis_product(a, b) {
                    let v = xa * c;
                    let cell = m.at(*s, b).clone();
                    m.set(*s, b, &cell + &v);
                }
            }
        }
        m
    }

    /// Matrix of right multiplication by `x` (columns are `e_a · x`).
    pub fn right_mult_matrix(&self, x: &[Q]) -> ExactMatrix {
        let d = self.dim();
        let mut m = ExactMatrix::zeros(d, d);
        for (b, xb) in x.iter().enumerate() {
            if xb.is_zero() {
                continue;
            }
            for a in 0..d {
                for (s, c) in self.basis_product(a, b) {
                    let v = xb * c;
                    let cell = m.at(*s, a).clone();
                    m.set(*s, a, &cell + &v);
                }
            }
        }
        m
    }

    /// Trace of left multiplication by `e_a`, for all `a` at once.
    pub fn basis_left_traces(&self) -> Vector {
        let d = self.dim();
        let mut traces = linalg::zero_vector(d);
        for a in 0..d {
            let mut t = Q::zero();
            for b in 0..d {
                for (s, c) in self.basis_product(a, b) {
                    if *s == b {
                        t += c;
                    }
                }
            }
            traces[a] = t;
        }
        traces
    }

    fn check_unit_laws(&self) -> Result<()> {
        let d = self.dim();
        for b in 0..d {
            let eb = linalg::unit_vector(d, b);
            let left = self.multiply_coords(&self.0.unit, &eb);
            let right = self.multiply_coords(&eb, &self.0.unit);
            if left != eb || right != eb {
                return Err(Error::Internal(format!(
                    "unit law fails at basis element {}",
                    self.basis_name(b)
                )));
            }
        }
        Ok(())
    }

    /// Checks `(e_a e_b) e_c = e_a (e_b e_c)`: exhaustively for dim <= 64,
    /// on `samples` random triples above that. Works on the sparse table
    /// directly, so each triple costs only a handful of term products.
    pub fn check_associativity(&self, rng: &mut impl Rng, samples: usize) -> Result<()> {
        let d = self.dim();
        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            let mut left = std::collections::BTreeMap::new();
            for (s, co) in self.basis_product(a, b) {
                for (t, co2) in self.basis_product(*s, c) {
                    let entry = left.entry(*t).or_insert_with(Q::zero);
                    *entry += &(co * co2);
                }
            }
            let mut right = std::collections::BTreeMap::new();
            for (s, co) in self.basis_product(b, c) {
                for (t, co2) in self.basis_product(a, *s) {
                    let entry = right.entry(*t).or_insert_with(Q::zero);
                    *entry += &(co * co2);
                }
            }
            left.retain(|_, v| !v.is_zero());
            right.retain(|_, v| !v.is_zero());
            if left != right {
                return Err(Error::Internal(format!(
                    "associativity fails on ({}, {}, {})",
                    self.basis_name(a),
                    self.basis_name(b),
                    self.basis_name(c)
                )));
            }
            Ok(())
        };
        if d <= 64 {
            for a in 0..d {
                for b in 0..d {
                    for c in 0..d {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            for _ in 0..samples {
                check(rng.gen_range(0..d), rng.gen_range(0..d), rng.gen_range(0..d))?;
            }
        }
        Ok(())
    }

    /// Parity must be multiplicative on all basis pairs.
    pub fn check_grading(&self) -> Result<()> {
        let Some(parity) = self.parity() else {
            return Err(Error::MissingParity);
        };
        let d = self.dim();
        for a in 0..d {
            for b in 0..d {
                let expected = (parity[a] + parity[b]) % 2;
                for (s, c) in self.basis_product(a, b) {
                    if !c.is_zero() && parity[*s] != expected {
                        return Err(Error::Internal(format!(
                            "grading fails on ({}, {})",
                            self.basis_name(a),
                            self.basis_name(b)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// A small generating set of basis indices, computed at construction.
    pub fn generators(&self) -> &[usize] {
        &self.0.generators
    }

    /// Greedy sweep, closing the span of words under left multiplication by
    /// the chosen generators.
    fn compute_generators(&self) -> Vec<usize> {
        let d = self.dim();
        let mut gens: Vec<usize> = Vec::new();
        let mut span = RowSpace::from_rows(vec![self.0.unit.clone()], d);
        for k in 0..d {
            if span.dim() == d {
                break;
            }
            if span.contains(&linalg::unit_vector(d, k)) {
                continue;
            }
            gens.push(k);
            // Close under left multiplication by all generators chosen so far.
            loop {
                let mut new_rows = span.basis_rows();
                let before = span.dim();
                for &g in &gens {
                    for row in span.basis_rows() {
                        new_rows.push(self.multiply_coords(&linalg::unit_vector(d, g), &row));
                    }
                }
                span = RowSpace::from_rows(new_rows, d);
                if span.dim() == before {
                    break;
                }
            }
        }
        gens
    }

    /// The full matrix algebra `M_m(self)`, basis `E_{kl} ⊗ e_b` ordered by
    /// `(k, l, b)`.
    pub fn matrix_algebra(&self, m: usize) -> Result<Algebra> {
        assert!(m >= 1, "matrix size must be at least 1");
        let d = self.dim();
        let dim = m * m * d;
        let idx = |k: usize, l: usize, b: usize| (k * m + l) * d + b;
        let mut unit = linalg::zero_vector(dim);
        for k in 0..m {
            for (b, c) in self.0.unit.iter().enumerate() {
                if !c.is_zero() {
                    unit[idx(k, k, b)] = c.clone();
                }
            }
        }
        let mut table = vec![SparseVec::new(); dim * dim];
        for k in 0..m {
            for l in 0..m {
                for b in 0..d {
                    for l2 in 0..m {
                        for b2 in 0..d {
                            // (E_{kl} ⊗ e_b)(E_{l l2} ⊗ e_b2) = E_{k l2} ⊗ e_b e_b2.
                            let prod: SparseVec = self
                                .basis_product(b, b2)
                                .iter()
                                .map(|(s, c)| (idx(k, l2, *s), c.clone()))
                                .collect();
                            table[idx(k, l, b) * dim + idx(l, l2, b2)] = prod;
                        }
                    }
                }
            }
        }
        let names = (0..m)
            .flat_map(|k| {
                (0..m).flat_map(move |l| {
                    (0..d).map(move |b| (k, l, b))
                })
            })
            .map(|(k, l, b)| format!("E{}{}*{}", k + 1, l + 1, self.basis_name(b)))
            .collect();
        Algebra::new(dim, unit, table, None, names)
    }
}

/// An element of a [`Algebra`], as a dense coordinate vector.
#[derive(Clone)]
pub struct AlgebraElement {
    algebra: Algebra,
    coords: Vector,
}

impl AlgebraElement {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn coords(&self) -> &Vector {
        &self.coords
    }

    pub fn into_coords(self) -> Vector {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        linalg::is_zero_vector(&self.coords)
    }

    pub fn mul(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        if !self.algebra.same_as(&other.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(self
            .algebra
            .element(self.algebra.multiply_coords(&self.coords, &other.coords)))
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        if !self.algebra.same_as(&other.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Ok(self.algebra.element(coords))
    }

    pub fn sub(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        if !self.algebra.same_as(&other.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        Ok(self.algebra.element(coords))
    }

    pub fn scale(&self, s: &Q) -> AlgebraElement {
        self.algebra
            .element(self.coords.iter().map(|c| c * s).collect())
    }

    pub fn pow(&self, e: u32) -> Result<AlgebraElement> {
        let mut acc = self.algebra.unit_element();
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn is_idempotent(&self) -> bool {
        match self.mul(self) {
            Ok(sq) => sq.coords == self.coords,
            Err(_) => false,
        }
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({})·{}", c, self.algebra.basis_name(k)))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Precomputed solver for repeated systems `A x = v` with a fixed `A`.
///
/// One elimination of `[A | I]` up front; each solve is then a single
/// matrix-vector product plus a consistency check.
pub struct LinearSolver {
    cols: usize,
    rows: usize,
    elim: ExactMatrix,
    pivots: Vec<usize>,
}

impl LinearSolver {
    pub fn new(a: &ExactMatrix) -> Self {
        let aug = a.hstack(&ExactMatrix::identity(a.rows()));
        let (r, pivots_all) = aug.rref();
        let pivots: Vec<usize> = pivots_all.iter().copied().filter(|&p| p < a.cols()).collect();
        let elim = ExactMatrix::from_fn(a.rows(), a.rows(), |i, j| r.at(i, a.cols() + j).clone());
        LinearSolver {
            cols: a.cols(),
            rows: a.rows(),
            elim,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// A particular solution of `A x = v` (free variables zero), or `None`
    /// when inconsistent.
    ///
    /// With `E·A = R` from the precomputed elimination, `A x = v` is
    /// equivalent to `R x = E v`; since the solution sets free variables to
    /// zero and `R` is in RREF, consistency reduces to the zero rows of `R`.
    pub fn solve(&self, v: &[Q]) -> Option<Vector> {
        assert_eq!(v.len(), self.rows);
        let t = self.elim.apply(v);
        for tv in t.iter().skip(self.pivots.len()) {
            if !tv.is_zero() {
                return None;
            }
        }
        let mut x = linalg::zero_vector(self.cols);
        for (row, &p) in self.pivots.iter().enumerate() {
            x[p] = t[row].clone();
        }
        Some(x)
    }
}

/// A subspace of a parent algebra that is closed under multiplication and has
/// its own unit, packaged as an algebra in its own right.
pub struct Subalgebra {
    pub algebra: Algebra,
    /// Rows are the chosen basis vectors inside the parent.
    pub basis: ExactMatrix,
}

impl Subalgebra {
    /// Coordinates in the parent of a subalgebra element.
    pub fn embed(&self, coords: &[Q]) -> Vector {
        assert_eq!(coords.len(), self.algebra.dim());
        let mut out = linalg::zero_vector(self.basis.cols());
        for (k, c) in coords.iter().enumerate() {
            linalg::add_scaled(&mut out, self.basis.row(k), c);
        }
        out
    }
}

/// Builds the subalgebra spanned by `basis_rows` (must be closed under the
/// parent product and contain `unit_in_parent`).
pub fn subalgebra(
    parent: &Algebra,
    basis_rows: Vec<Vector>,
    unit_in_parent: Vector,
    names: Vec<String>,
) -> Result<Subalgebra> {
    let k = basis_rows.len();
    let basis = ExactMatrix::from_rows(basis_rows.clone());
    let solver = LinearSolver::new(&basis.transpose());
    if solver.rank() != k {
        return Err(Error::Internal("subalgebra basis is dependent".into()));
    }
    let unit = solver
        .solve(&unit_in_parent)
        .ok_or_else(|| Error::Internal("subalgebra unit not in span".into()))?;
    let mut table = vec![SparseVec::new(); k * k];
    for a in 0..k {
        for b in 0..k {
            let prod = parent.multiply_coords(&basis_rows[a], &basis_rows[b]);
            let coords = solver.solve(&prod).ok_or_else(|| {
                Error::Internal(format!("subalgebra not closed at pair ({a}, {b})"))
            })?;
            table[a * k + b] = sparse_from_dense(&coords);
        }
    }
    let algebra = Algebra::new(k, unit, table, None, names)?;
    Ok(Subalgebra { algebra, basis })
}

/// A quotient `A / I` by a two-sided ideal, with the projection and a chosen
/// linear section.
pub struct QuotientAlgebra {
    pub algebra: Algebra,
    /// `q × d`: coordinates in the quotient of a parent element.
    pub projection: ExactMatrix,
    /// `d × q`: the section picking the representative with zero pivot part.
    pub section: ExactMatrix,
}

pub fn quotient_algebra(parent: &Algebra, ideal_rows: &[Vector]) -> Result<QuotientAlgebra> {
    let d = parent.dim();
    let ideal = RowSpace::from_rows(ideal_rows.to_vec(), d);
    let pivots: Vec<usize> = {
        // Recover pivot columns from the canonical basis.
        let (_, p) = ideal.basis().rref();
        p
    };
    let is_pivot = {
        let mut v = vec![false; d];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    let free: Vec<usize> = (0..d).filter(|&c| !is_pivot[c]).collect();
    let q = free.len();

    // projection: e_{pivot_k} ≡ -sum over free coords of row_k; e_free ≡ e_free.
    let mut projection = ExactMatrix::zeros(q, d);
    for (fi, &f) in free.iter().enumerate() {
        projection.set(fi, f, Q::one());
    }
    for (k, &p) in pivots.iter().enumerate() {
        for (fi, &f) in free.iter().enumerate() {
            let v = ideal.basis().at(k, f);
            if !v.is_zero() {
                projection.set(fi, p, -v.clone());
            }
        }
    }
    let mut section = ExactMatrix::zeros(d, q);
    for (fi, &f) in free.iter().enumerate() {
        section.set(f, fi, Q::one());
    }

    let unit = projection.apply(parent.unit());
    let mut table = vec![SparseVec::new(); q * q];
    for a in 0..q {
        for b in 0..q {
            let pa = section.col_vec(a);
            let pb = section.col_vec(b);
            let prod = parent.multiply_coords(&pa, &pb);
            table[a * q + b] = sparse_from_dense(&projection.apply(&prod));
        }
    }
    let names = free
        .iter()
        .map(|&f| format!("[{}]", parent.basis_name(f)))
        .collect();
    let algebra = Algebra::new(q, unit, table, None, names)?;
    Ok(QuotientAlgebra {
        algebra,
        projection,
        section,
    })
}

/// A unital linear map between algebras, stored as a
/// `target_dim × source_dim` matrix.
#[derive(Clone)]
pub struct AlgebraMorphism {
    pub source: Algebra,
    pub target: Algebra,
    pub matrix: ExactMatrix,
}

impl AlgebraMorphism {
    pub fn apply(&self, coords: &[Q]) -> Vector {
        self.matrix.apply(coords)
    }

    /// Checks that the map is unital and multiplicative on all basis pairs.
    pub fn verify_homomorphism(&self) -> Result<()> {
        if self.matrix.rows() != self.target.dim() || self.matrix.cols() != self.source.dim() {
            return Err(Error::Internal("morphism matrix has wrong shape".into()));
        }
        if self.apply(self.source.unit()) != *self.target.unit() {
            return Err(Error::Internal("morphism does not preserve the unit".into()));
        }
        let d = self.source.dim();
        let images: Vec<Vector> = (0..d).map(|k| self.matrix.col_vec(k)).collect();
        for a in 0..d {
            for b in 0..d {
                let lhs = {
                    let mut v = linalg::zero_vector(self.target.dim());
                    for (s, c) in self.source.basis_product(a, b) {
                        linalg::add_scaled(&mut v, &images[*s], c);
                    }
                    v
                };
                let rhs = self.target.multiply_coords(&images[a], &images[b]);
                if lhs != rhs {
                    return Err(Error::Internal(format!(
                        "morphism not multiplicative on ({}, {})",
                        self.source.basis_name(a),
                        self.source.basis_name(b)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Full isomorphism check: homomorphism, plus an invertible matrix.
    pub fn verify_isomorphism(&self) -> Result<()> {
        self.verify_homomorphism()?;
        if self.matrix.inverse().is_none() {
            return Err(Error::Internal("morphism matrix is singular".into()));
        }
        Ok(())
    }

    pub fn inverse(&self) -> Result<AlgebraMorphism> {
        let inv = self
            .matrix
            .inverse()
            .ok_or_else(|| Error::Internal("morphism is not invertible".into()))?;
        Ok(AlgebraMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            matrix: inv,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn ground_field_and_matrix_algebra() {
        let k = Algebra::ground_field();
        assert_eq!(k.dim(), 1);
        let m2 = k.matrix_algebra(2).unwrap();
        assert_eq!(m2.dim(), 4);
        // E11 and E22 are orthogonal idempotents summing to 1.
        let e11 = m2.basis_element(0);
        let e22 = m2.basis_element(3);
        assert!(e11.is_idempotent());
        assert!(e22.is_idempotent());
        assert!(e11.mul(&e22).unwrap().is_zero());
        assert_eq!(
            e11.add(&e22).unwrap().coords(),
            m2.unit_element().coords()
        );
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        m2.check_associativity(&mut rng, 0).unwrap();

        // M_1(A) = A (same structure constants).
        let m1 = k.matrix_algebra(1).unwrap();
        assert_eq!(m1.dim(), k.dim());
        assert_eq!(m1.basis_product(0, 0), k.basis_product(0, 0));
    }

    #[test]
    fn generators_of_matrix_algebra() {
        let m2 = Algebra::ground_field().matrix_algebra(2).unwrap();
        let gens = m2.generators();
        assert!(!gens.is_empty());
        assert!(gens.len() <= 3);
    }

    #[test]
    fn quotient_by_nilpotents() {
        // k[j]/j² -> quotient by (j) is the ground field.
        let dim = 2;
        let mut table = vec![SparseVec::new(); 4];
        table[0] = vec![(0, Q::one())];
        table[1] = vec![(1, Q::one())];
        table[2] = vec![(1, Q::one())];
        table[3] = SparseVec::new(); // j·j = 0
        let a = Algebra::new(
            dim,
            vec![Q::one(), Q::zero()],
            table,
            None,
            vec!["1".into(), "j".into()],
        )
        .unwrap();
        let q = quotient_algebra(&a, &[vec![Q::zero(), Q::one()]]).unwrap();
        assert_eq!(q.algebra.dim(), 1);
        assert_eq!(q.projection.apply(&[Q::one(), Q::from_int(5)]), vec![Q::one()]);
    }

    #[test]
    fn linear_solver_matches_direct_solve() {
        let m = ExactMatrix::from_i64(&[&[1, 2, 0], &[0, 1, 1]]);
        let solver = LinearSolver::new(&m);
        let v = vec![Q::from_int(3), Q::from_int(2)];
        let x = solver.solve(&v).unwrap();
        assert_eq!(m.apply(&x), v);
        // Inconsistent system for a taller matrix.
        let tall = ExactMatrix::from_i64(&[&[1], &[1]]);
        let s2 = LinearSolver::new(&tall);
        assert!(s2.solve(&[Q::one(), Q::from_int(2)]).is_none());
        assert!(s2.solve(&[Q::one(), Q::one()]).is_some());
    }
}
