//! Left modules over a finite-dimensional algebra.
//!
//! A module is its dimension plus one action matrix per algebra basis
//! element. Hom spaces are computed by solving the intertwiner equations
//! against a generating set of the algebra; the isomorphism oracle tests
//! invertibility of random combinations of a Hom basis over a deterministic
//! seed sequence, with an exhaustive fallback on small Hom spaces.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, LinearSolver};
use crate::error::Error;
use crate::linalg::{self, ExactMatrix, RowSpace, Vector};
use crate::scalar::GaussianRational as Q;
use crate::Result;

#[derive(Clone)]
pub struct LeftModule {
    algebra: Algebra,
    dim: usize,
    /// `action[a]` is the matrix of `ρ(e_a)`.
    action: Vec<ExactMatrix>,
}

impl LeftModule {
    pub fn new(algebra: Algebra, dim: usize, action: Vec<ExactMatrix>) -> Result<Self> {
        if action.len() != algebra.dim() {
            return Err(Error::DimensionMismatch(
                "one action matrix per algebra basis element required".into(),
            ));
        }
        for m in &action {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch(
                    "action matrix of wrong shape".into(),
                ));
            }
        }
        let module = LeftModule {
            algebra,
            dim,
            action,
        };
        if module.dim > 0 && module.act_element(module.algebra.unit()) != ExactMatrix::identity(dim)
        {
            return Err(Error::Internal("unit does not act as identity".into()));
        }
        Ok(module)
    }

    /// The algebra acting on itself by left multiplication.
    pub fn regular(algebra: &Algebra) -> Self {
        let action = (0..algebra.dim())
            .map(|a| algebra.left_mult_matrix(&linalg::unit_vector(algebra.dim(), a)))
            .collect();
        LeftModule {
            algebra: algebra.clone(),
            dim: algebra.dim(),
            action,
        }
    }

    pub fn zero(algebra: &Algebra) -> Self {
        LeftModule {
            algebra: algebra.clone(),
            dim: 0,
            action: vec![ExactMatrix::zeros(0, 0); algebra.dim()],
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, a: usize) -> &ExactMatrix {
        &self.action[a]
    }

    /// The matrix of `ρ(x)` for an algebra element in dense coordinates.
    pub fn act_element(&self, x: &[Q]) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.dim, self.dim);
        for (a, c) in x.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.action[a].scale(c));
            }
        }
        m
    }

    pub fn apply(&self, x: &[Q], v: &[Q]) -> Vector {
        let mut out = linalg::zero_vector(self.dim);
        for (a, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let av = self.action[a].apply(v);
            linalg::add_scaled(&mut out, &av, c);
        }
        out
    }

    /// Full check that the action respects the structure constants:
    /// exhaustive on all basis pairs for `algebra.dim() <= limit`, sampled
    /// otherwise.
    pub fn validate(&self, rng: &mut impl Rng, limit: usize, samples: usize) -> Result<()> {
        let d = self.algebra.dim();
        let check = |a: usize, b: usize| -> Result<()> {
            let lhs = self.action[a].mul(&self.action[b]);
            let mut rhs = ExactMatrix::zeros(self.dim, self.dim);
            for (s, c) in self.algebra.basis_product(a, b) {
                rhs = rhs.add(&self.action[*s].scale(c));
            }
            if lhs != rhs {
                return Err(Error::Internal(format!(
                    "module action violates structure constants at ({a}, {b})"
                )));
            }
            Ok(())
        };
        if d <= limit {
            for a in 0..d {
                for b in 0..d {
                    check(a, b)?;
                }
            }
        } else {
            for _ in 0..samples {
                check(rng.gen_range(0..d), rng.gen_range(0..d))?;
            }
        }
        Ok(())
    }

    /// The submodule generated by the given vectors, as a module in its own
    /// basis plus the basis rows inside `self`.
    ///
    /// Closure runs over a generating set of the algebra; a span closed under
    /// generators is closed under every word in them.
    pub fn submodule(&self, spanning: &[Vector], generators: &[usize]) -> (LeftModule, ExactMatrix) {
        let mut span = RowSpace::from_rows(spanning.to_vec(), self.dim);
        loop {
            let before = span.dim();
            let mut rows = span.basis_rows();
            for &g in generators {
                for row in span.basis_rows() {
                    rows.push(self.action[g].apply(&row));
                }
            }
            span = RowSpace::from_rows(rows, self.dim);
            if span.dim() == before {
                break;
            }
        }
        self.submodule_on_invariant_basis(span)
    }

    /// Packages an already-invariant subspace as a module.
    pub fn submodule_on_invariant_basis(&self, span: RowSpace) -> (LeftModule, ExactMatrix) {
        let k = span.dim();
        let basis = span.basis().clone();
        let mut action = Vec::with_capacity(self.algebra.dim());
        for a in 0..self.algebra.dim() {
            let mut m = ExactMatrix::zeros(k, k);
            for col in 0..k {
                let img = self.action[a].apply(basis.row(col));
                let coords = span
                    .coordinates(&img)
                    .expect("subspace is invariant under the action");
                for (r, c) in coords.into_iter().enumerate() {
                    if !c.is_zero() {
                        m.set(r, col, c);
                    }
                }
            }
            action.push(m);
        }
        (
            LeftModule {
                algebra: self.algebra.clone(),
                dim: k,
                action,
            },
            basis,
        )
    }

    /// The quotient by an invariant subspace, with the projection matrix.
    pub fn quotient(&self, sub: &RowSpace) -> (LeftModule, ExactMatrix) {
        let d = self.dim;
        let (reduced, pivots) = sub.basis().rref();
        let is_pivot = {
            let mut v = vec![false; d];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let free: Vec<usize> = (0..d).filter(|&c| !is_pivot[c]).collect();
        let q = free.len();
        let mut projection = ExactMatrix::zeros(q, d);
        for (fi, &f) in free.iter().enumerate() {
            projection.set(fi, f, Q::one());
        }
        for (k, &p) in pivots.iter().enumerate() {
            for (fi, &f) in free.iter().enumerate() {
                let v = reduced.at(k, f);
                if !v.is_zero() {
                    projection.set(fi, p, -v.clone());
                }
            }
        }
        let mut action = Vec::with_capacity(self.algebra.dim());
        for a in 0..self.algebra.dim() {
            let mut m = ExactMatrix::zeros(q, q);
            for (col, &f) in free.iter().enumerate() {
                let img = self.action[a].apply(&linalg::unit_vector(d, f));
                let proj = projection.apply(&img);
                for (r, c) in proj.into_iter().enumerate() {
                    if !c.is_zero() {
                        m.set(r, col, c);
                    }
                }
            }
            action.push(m);
        }
        (
            LeftModule {
                algebra: self.algebra.clone(),
                dim: q,
                action,
            },
            projection,
        )
    }

    pub fn direct_sum(modules: &[&LeftModule]) -> LeftModule {
        assert!(!modules.is_empty());
        let algebra = modules[0].algebra.clone();
        assert!(modules.iter().all(|m| m.algebra.same_as(&algebra)));
        let dim: usize = modules.iter().map(|m| m.dim).sum();
        let mut action = Vec::with_capacity(algebra.dim());
        for a in 0..algebra.dim() {
            let mut m = ExactMatrix::zeros(dim, dim);
            let mut offset = 0;
            for module in modules {
                for r in 0..module.dim {
                    for c in 0..module.dim {
                        let v = module.action[a].at(r, c);
                        if !v.is_zero() {
                            m.set(offset + r, offset + c, v.clone());
                        }
                    }
                }
                offset += module.dim;
            }
            action.push(m);
        }
        LeftModule {
            algebra,
            dim,
            action,
        }
    }
}

/// Basis of `Hom_A(M, N)`: matrices `T` with `T·ρ_M(g) = ρ_N(g)·T` for every
/// algebra generator `g`.
pub fn hom_space(m: &LeftModule, n: &LeftModule) -> Result<Vec<ExactMatrix>> {
    if !m.algebra.same_as(&n.algebra) {
        return Err(Error::AlgebraMismatch);
    }
    if m.dim == 0 || n.dim == 0 {
        return Ok(Vec::new());
    }
    let gens = m.algebra.generators();
    let unknowns = n.dim * m.dim; // T[r][c], flattened r * m.dim + c
    let mut rows = Vec::new();
    for &g in gens {
        let rm = m.action(g);
        let rn = n.action(g);
        for r in 0..n.dim {
            for c in 0..m.dim {
                // sum_k T[r][k]·rm[k][c] - rn[r][k]·T[k][c] = 0
                let mut row = linalg::zero_vector(unknowns);
                for k in 0..m.dim {
                    let v = rm.at(k, c);
                    if !v.is_zero() {
                        row[r * m.dim + k] += v;
                    }
                }
                for k in 0..n.dim {
                    let v = rn.at(r, k);
                    if !v.is_zero() {
                        row[k * m.dim + c] -= v;
                    }
                }
                if !linalg::is_zero_vector(&row) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        (0..unknowns).map(|k| linalg::unit_vector(unknowns, k)).collect()
    } else {
        ExactMatrix::from_rows(rows).kernel_basis()
    };
    Ok(kernel
        .into_iter()
        .map(|flat| {
            ExactMatrix::from_fn(n.dim, m.dim, |r, c| flat[r * m.dim + c].clone())
        })
        .collect())
}

fn small_coefficient(rng: &mut impl Rng) -> Q {
    let re = rng.gen_range(-2i64..=2);
    let im = rng.gen_range(-2i64..=2);
    &Q::from_int(re) + &(&Q::i() * &Q::from_int(im))
}

fn combine(basis: &[ExactMatrix], coeffs: &[Q]) -> ExactMatrix {
    let mut t = ExactMatrix::zeros(basis[0].rows(), basis[0].cols());
    for (b, c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            t = t.add(&b.scale(c));
        }
    }
    t
}

/// Searches `span(basis)` for an invertible matrix: random small combinations
/// over a deterministic seed sequence, then an exhaustive `{0, ±1, ±i}` grid
/// when the basis has at most 3 elements.
pub fn invertible_combination(basis: &[ExactMatrix], seed: u64) -> Option<ExactMatrix> {
    if basis.is_empty() {
        return None;
    }
    // Single basis elements first: usually enough.
    for b in basis {
        if b.inverse().is_some() {
            return Some(b.clone());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..12 {
        let coeffs: Vec<Q> = (0..basis.len()).map(|_| small_coefficient(&mut rng)).collect();
        let t = combine(basis, &coeffs);
        if t.inverse().is_some() {
            return Some(t);
        }
    }
    if basis.len() <= 3 {
        let grid = [
            Q::zero(),
            Q::one(),
            -Q::one(),
            Q::i(),
            -Q::i(),
        ];
        let n = basis.len();
        let total = grid.len().pow(n as u32);
        for code in 1..total {
            let mut c = code;
            let coeffs: Vec<Q> = (0..n)
                .map(|_| {
                    let v = grid[c % grid.len()].clone();
                    c /= grid.len();
                    v
                })
                .collect();
            let t = combine(basis, &coeffs);
            if t.inverse().is_some() {
                return Some(t);
            }
        }
    }
    None
}

/// The module isomorphism oracle.
pub fn is_isomorphic(m: &LeftModule, n: &LeftModule, seed: u64) -> Result<bool> {
    if !m.algebra.same_as(&n.algebra) {
        return Err(Error::AlgebraMismatch);
    }
    if m.dim != n.dim {
        return Ok(false);
    }
    if m.dim == 0 {
        return Ok(true);
    }
    let basis = hom_space(m, n)?;
    Ok(invertible_combination(&basis, seed).is_some())
}

/// An explicit isomorphism, when one exists.
pub fn find_isomorphism(m: &LeftModule, n: &LeftModule, seed: u64) -> Result<Option<ExactMatrix>> {
    if !m.algebra.same_as(&n.algebra) {
        return Err(Error::AlgebraMismatch);
    }
    if m.dim != n.dim {
        return Ok(None);
    }
    if m.dim == 0 {
        return Ok(Some(ExactMatrix::zeros(0, 0)));
    }
    let basis = hom_space(m, n)?;
    Ok(invertible_combination(&basis, seed))
}

/// Krull–Schmidt decomposition against a list of candidate indecomposables.
///
/// Each round searches for a split pair `f: X -> M`, `g: M -> X` with
/// `g∘f` invertible; `p = f∘(gf)^{-1}∘g` is then an idempotent of `End(M)`
/// whose image is a copy of `X`, and the complement `ker p` is invariant.
/// Anything no candidate divides is returned as the remainder. The pair
/// search tries Hom-basis pairs first, then random combinations over a
/// deterministic seed sequence.
pub fn decompose_against(
    m: &LeftModule,
    candidates: &[&LeftModule],
    seed: u64,
) -> Result<(Vec<usize>, Option<LeftModule>)> {
    let mut found = Vec::new();
    let mut current = m.clone();
    'peel: while current.dim() > 0 {
        // Larger candidates first keeps the leftover small.
        let mut order: Vec<usize> = (0..candidates.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(candidates[i].dim()));
        for idx in order {
            let x = candidates[idx];
            if x.dim() == 0 || x.dim() > current.dim() {
                continue;
            }
            if let Some(p) = split_off(&current, x, seed)? {
                // Complement of the image of the idempotent p.
                let kernel = p.kernel_basis();
                let span = RowSpace::from_rows(kernel, current.dim());
                if span.dim() + x.dim() != current.dim() {
                    return Err(Error::Internal("split complement has wrong dimension".into()));
                }
                let (next, _) = current.submodule_on_invariant_basis(span);
                found.push(idx);
                current = next;
                continue 'peel;
            }
        }
        // No registered candidate divides what is left.
        return Ok((found, Some(current)));
    }
    Ok((found, None))
}

/// A split pair for `X | M`, returned as the idempotent `f∘(gf)^{-1}∘g` of
/// `End(M)` projecting onto a copy of `X`; `None` if no pair is found.
fn split_off(m: &LeftModule, x: &LeftModule, seed: u64) -> Result<Option<ExactMatrix>> {
    let to_m = hom_space(x, m)?;
    let to_x = hom_space(m, x)?;
    if to_m.is_empty() || to_x.is_empty() {
        return Ok(None);
    }
    let try_pair = |f: &ExactMatrix, g: &ExactMatrix| -> Option<ExactMatrix> {
        let gf = g.mul(f);
        let inv = gf.inverse()?;
        Some(f.mul(&inv).mul(g))
    };
    for f in &to_m {
        for g in &to_x {
            if let Some(p) = try_pair(f, g) {
                return Ok(Some(p));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_5eed);
    for _ in 0..20 {
        let cf: Vec<Q> = (0..to_m.len()).map(|_| small_coefficient(&mut rng)).collect();
        let cg: Vec<Q> = (0..to_x.len()).map(|_| small_coefficient(&mut rng)).collect();
        let f = combine(&to_m, &cf);
        let g = combine(&to_x, &cg);
        if let Some(p) = try_pair(&f, &g) {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// `End_A(M)` as an algebra, together with the matrix basis realizing it.
pub struct EndAlgebra {
    pub algebra: Algebra,
    pub basis: Vec<ExactMatrix>,
}

pub fn end_algebra(m: &LeftModule) -> Result<EndAlgebra> {
    let basis = hom_space(m, m)?;
    if basis.is_empty() {
        return Err(Error::Internal("End(M) of the zero module".into()));
    }
    let k = basis.len();
    let flat: Vec<Vector> = basis
        .iter()
        .map(|t| {
            let mut v = Vec::with_capacity(m.dim * m.dim);
            for r in 0..m.dim {
                v.extend(t.row(r).iter().cloned());
            }
            v
        })
        .collect();
    let solver = LinearSolver::new(&ExactMatrix::from_rows(flat).transpose());
    let express = |t: &ExactMatrix| -> Result<Vector> {
        let mut v = Vec::with_capacity(m.dim * m.dim);
        for r in 0..m.dim {
            v.extend(t.row(r).iter().cloned());
        }
        solver
            .solve(&v)
            .ok_or_else(|| Error::Internal("End(M) is not closed".into()))
    };
    let unit = express(&ExactMatrix::identity(m.dim))?;
    let mut table = vec![Vec::new(); k * k];
    for a in 0..k {
        for b in 0..k {
            let prod = basis[a].mul(&basis[b]);
            let coords = express(&prod)?;
            table[a * k + b] = crate::algebra::sparse_from_dense(&coords);
        }
    }
    let algebra = Algebra::new(k, unit, table, None, Vec::new())?;
    Ok(EndAlgebra { algebra, basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::CliffordAlgebra;
    use crate::qspace::QuadraticSpace;

    fn even_algebra(entries: &[i64]) -> Algebra {
        CliffordAlgebra::new(&QuadraticSpace::diagonal_form(entries).unwrap())
            .unwrap()
            .even_part()
            .algebra()
            .clone()
    }

    #[test]
    fn regular_module_and_hom() {
        // Hom_A(A, A) ≅ A as vector spaces.
        let a = even_algebra(&[1, 1, 0]);
        let reg = LeftModule::regular(&a);
        let homs = hom_space(&reg, &reg).unwrap();
        assert_eq!(homs.len(), a.dim());
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        reg.validate(&mut rng, 64, 0).unwrap();
    }

    #[test]
    fn submodule_and_quotient_shapes() {
        let a = even_algebra(&[1, 0]);
        // A = k ⊕ kj; the ideal (j) is a 1-dimensional submodule.
        let reg = LeftModule::regular(&a);
        let gens = a.generators();
        let (sub, basis) = reg.submodule(&[linalg::unit_vector(2, 1)], &gens);
        assert_eq!(sub.dim(), 1);
        assert_eq!(basis.rows(), 1);
        let (quot, _) = reg.quotient(&RowSpace::from_matrix(&basis));
        assert_eq!(quot.dim(), 1);
        // j acts as zero on both the submodule and the quotient.
        assert!(sub.action(1).is_zero());
        assert!(quot.action(1).is_zero());
    }

    #[test]
    fn direct_sum_and_iso_oracle() {
        let a = even_algebra(&[1, 0]);
        let reg = LeftModule::regular(&a);
        let gens = a.generators();
        let (sub, _) = reg.submodule(&[linalg::unit_vector(2, 1)], &gens);
        let sum = LeftModule::direct_sum(&[&sub, &sub]);
        assert_eq!(sum.dim(), 2);
        // S ⊕ S is not isomorphic to the regular module (j acts by zero on
        // one, nontrivially on the other).
        assert!(!is_isomorphic(&sum, &reg, 0).unwrap());
        assert!(is_isomorphic(&reg, &reg, 0).unwrap());
        assert!(is_isomorphic(&sub, &sub, 0).unwrap());
    }

    #[test]
    fn end_of_regular_module() {
        let a = even_algebra(&[1, 0]);
        let reg = LeftModule::regular(&a);
        let end = end_algebra(&reg).unwrap();
        // End_A(A) ≅ A^op, so dimension 2 here.
        assert_eq!(end.algebra.dim(), 2);
    }
}
