//! Structure theory of finite-dimensional associative algebras over `Q(i)`:
//! radical, semisimple quotient, Wedderburn blocks, primitive idempotents,
//! indecomposable projectives and simples.
//!
//! The radical comes from the characteristic-zero trace criterion and is then
//! certified: the ideal is checked to be two-sided and nilpotent with a
//! semisimple quotient, which pins it down uniquely. Blocks are split by
//! diagonalizing multiplication on the center (eigenvalues must lie in
//! `Q(i)`; a failure is an explicit error, never a silent field extension),
//! and each block is certified to be a full matrix algebra by exhibiting a
//! complete set of matrix units via its action on a minimal left ideal.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    quotient_algebra, subalgebra, Algebra, LinearSolver, QuotientAlgebra, Subalgebra,
};
use crate::error::Error;
use crate::linalg::{self, ExactMatrix, RowSpace, Vector};
use crate::modules::{self, LeftModule};
use crate::scalar::GaussianRational as Q;
use crate::Result;

/// The Jacobson radical of an algebra, with its nilpotency data.
pub struct RadicalIdeal {
    basis: RowSpace,
    nilpotency_index: usize,
    /// `dim r^1, dim r^2, ...` down to and including the first zero.
    series: Vec<usize>,
}

impl RadicalIdeal {
    pub fn basis(&self) -> &RowSpace {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn nilpotency_index(&self) -> usize {
        self.nilpotency_index
    }

    pub fn series(&self) -> &[usize] {
        &self.series
    }

    pub fn basis_rows(&self) -> Vec<Vector> {
        self.basis.basis_rows()
    }
}

/// Radical via the trace criterion `{x : tr(L_{xy}) = 0 for all y}`, then
/// certified: two-sided, nilpotent, semisimple quotient.
pub fn radical(algebra: &Algebra) -> Result<RadicalIdeal> {
    let d = algebra.dim();
    let traces = algebra.basis_left_traces();
    // T[a][b] = tr(L_{e_a e_b}); x in radical iff x·T = 0.
    let mut t = ExactMatrix::zeros(d, d);
    for a in 0..d {
        for b in 0..d {
            let mut v = Q::zero();
            for (s, c) in algebra.basis_product(a, b) {
                if !traces[*s].is_zero() {
                    v += &(c * &traces[*s]);
                }
            }
            if !v.is_zero() {
                t.set(a, b, v);
            }
        }
    }
    let kernel = t.transpose().kernel_basis();
    let basis = RowSpace::from_rows(kernel, d);

    // Two-sidedness.
    for row in basis.basis_rows() {
        for a in 0..d {
            let ea = linalg::unit_vector(d, a);
            if !basis.contains(&algebra.multiply_coords(&ea, &row))
                || !basis.contains(&algebra.multiply_coords(&row, &ea))
            {
                return Err(Error::Internal(
                    "radical candidate is not a two-sided ideal".into(),
                ));
            }
        }
    }

    // Nilpotency, recording the dimension series.
    let mut series = Vec::new();
    let mut power = basis.clone();
    let mut index = 1usize;
    loop {
        series.push(power.dim());
        if power.dim() == 0 {
            break;
        }
        if index > d {
            return Err(Error::Internal("radical candidate is not nilpotent".into()));
        }
        let mut rows = Vec::new();
        for x in power.basis_rows() {
            for y in basis.basis_rows() {
                rows.push(algebra.multiply_coords(&x, &y));
            }
        }
        power = RowSpace::from_rows(rows, d);
        index += 1;
    }
    let nilpotency_index = series.len().max(1);

    // Semisimple quotient: nondegenerate trace form.
    let quotient = quotient_algebra(algebra, &basis.basis_rows())?;
    let qd = quotient.algebra.dim();
    let qtraces = quotient.algebra.basis_left_traces();
    let mut qt = ExactMatrix::zeros(qd, qd);
    for a in 0..qd {
        for b in 0..qd {
            let mut v = Q::zero();
            for (s, c) in quotient.algebra.basis_product(a, b) {
                if !qtraces[*s].is_zero() {
                    v += &(c * &qtraces[*s]);
                }
            }
            if !v.is_zero() {
                qt.set(a, b, v);
            }
        }
    }
    if qt.rank() != qd {
        return Err(Error::Internal(
            "quotient by radical candidate is not semisimple".into(),
        ));
    }

    Ok(RadicalIdeal {
        basis,
        nilpotency_index,
        series,
    })
}

/// The center `{x : xy = yx for all y}` as a row space.
pub fn center(algebra: &Algebra) -> RowSpace {
    let d = algebra.dim();
    let mut rows = Vec::new();
    for b in 0..d {
        let eb = linalg::unit_vector(d, b);
        let diff = algebra
            .left_mult_matrix(&eb)
            .sub(&algebra.right_mult_matrix(&eb));
        for r in 0..d {
            if !linalg::is_zero_vector(diff.row(r)) {
                rows.push(diff.row_vec(r));
            }
        }
    }
    if rows.is_empty() {
        return RowSpace::from_rows(
            (0..d).map(|k| linalg::unit_vector(d, k)).collect(),
            d,
        );
    }
    RowSpace::from_rows(ExactMatrix::from_rows(rows).kernel_basis(), d)
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(BigRational::zero());
    }
    let num: BigInt = r.numer().sqrt();
    let den: BigInt = r.denom().sqrt();
    if &(&num * &num) == r.numer() && &(&den * &den) == r.denom() {
        Some(BigRational::new(num, den))
    } else {
        None
    }
}

/// Exact square root in `Q(i)`, when it exists.
pub fn gaussian_sqrt(d: &Q) -> Option<Q> {
    if d.is_zero() {
        return Some(Q::zero());
    }
    let (a, b) = (d.re().clone(), d.im().clone());
    if b.is_zero() {
        if !a.is_negative() {
            return rational_sqrt(&a).map(|r| Q::new(r, BigRational::zero()));
        }
        return rational_sqrt(&(-a)).map(|r| Q::new(BigRational::zero(), r));
    }
    let norm_sqrt = rational_sqrt(&d.norm())?;
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let x_sq = (&a + &norm_sqrt) * &half;
    let x = rational_sqrt(&x_sq)?;
    if x.is_zero() {
        return None;
    }
    let y = &b / &(BigRational::from_integer(BigInt::from(2)) * &x);
    let candidate = Q::new(x, y);
    if &candidate * &candidate == *d {
        Some(candidate)
    } else {
        None
    }
}

/// Roots in `Q(i)` of a monic squarefree polynomial (low-to-high
/// coefficients, leading 1 omitted is not allowed: pass the full monic
/// coefficient list including the top 1). `None` when a factor of degree
/// at least 2 resists our exact methods.
fn roots_of_squarefree(coeffs: &[Q]) -> Option<Vec<Q>> {
    let deg = coeffs.len() - 1;
    assert!(coeffs[deg].is_one(), "polynomial must be monic");
    match deg {
        0 => Some(Vec::new()),
        1 => Some(vec![-coeffs[0].clone()]),
        2 => {
            let b = coeffs[1].clone();
            let c = coeffs[0].clone();
            let disc = &(&b * &b) - &(&Q::from_int(4) * &c);
            let s = gaussian_sqrt(&disc)?;
            let half = Q::from_ratio(1, 2);
            let r1 = &(&(-b.clone()) + &s) * &half;
            let r2 = &(&(-b) - &s) * &half;
            Some(vec![r1, r2])
        }
        _ => {
            // Peel off roots from a small candidate list.
            let mut candidates = vec![Q::zero()];
            for n in [1i64, 2, 3] {
                for (re, im) in [(n, 0), (-n, 0), (0, n), (0, -n)] {
                    candidates.push(Q::from_parts(re, 1, im, 1));
                }
            }
            for (re, im) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                candidates.push(Q::from_parts(re, 1, im, 1));
            }
            for (re_n, re_d, im_n, im_d) in [(1, 2, 0, 1), (-1, 2, 0, 1), (0, 1, 1, 2), (0, 1, -1, 2)] {
                candidates.push(Q::from_parts(re_n, re_d, im_n, im_d));
            }
            let eval = |p: &[Q], x: &Q| -> Q {
                let mut acc = Q::zero();
                for c in p.iter().rev() {
                    acc = &(&acc * x) + c;
                }
                acc
            };
            for cand in candidates {
                if eval(coeffs, &cand).is_zero() {
                    // Synthetic division by (x - cand).
                    let mut quotient = vec![Q::zero(); deg];
                    let mut carry = Q::zero();
                    for k in (0..deg).rev() {
                        let v = &coeffs[k + 1] + &(&carry * &cand);
                        quotient[k] = v.clone();
                        carry = v;
                    }
                    let mut roots = roots_of_squarefree(&quotient)?;
                    roots.push(cand);
                    return Some(roots);
                }
            }
            None
        }
    }
}

/// Monic minimal polynomial of `u` relative to the idempotent unit `e`
/// (low-to-high coefficients including the leading 1).
fn minimal_polynomial(algebra: &Algebra, u: &[Q], e: &[Q]) -> Vec<Q> {
    let d = algebra.dim();
    let mut powers: Vec<Vector> = vec![e.to_vec()];
    loop {
        let last = powers.last().unwrap();
        let next = algebra.multiply_coords(last, u);
        let mat = ExactMatrix::from_rows(powers.clone()).transpose();
        if let Some(expr) = LinearSolver::new(&mat).solve(&next) {
            let mut coeffs: Vec<Q> = expr.iter().map(|c| -c.clone()).collect();
            coeffs.push(Q::one());
            return coeffs;
        }
        powers.push(next);
        assert!(powers.len() <= d + 1, "minimal polynomial search overran");
    }
}

/// Euclidean polynomial division helpers over `Q(i)`, low-to-high
/// coefficient vectors with nonzero leading terms.
fn poly_trim(mut p: Vec<Q>) -> Vec<Q> {
    while p.len() > 1 && p.last().map_or(false, Q::is_zero) {
        p.pop();
    }
    p
}

fn poly_rem(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = b[db].inverse().expect("nonzero leading coefficient");
    while r.len() > db.max(0) && r.len() - 1 >= db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        if dr < db {
            break;
        }
        let factor = &r[dr] * &lead_inv;
        for k in 0..=db {
            let idx = dr - db + k;
            let sub = &factor * &b[k];
            r[idx] = &r[idx] - &sub;
        }
        r = poly_trim(r);
        if r.len() == 1 && r[0].is_zero() {
            break;
        }
    }
    r
}

fn poly_gcd(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut x = poly_trim(a.to_vec());
    let mut y = poly_trim(b.to_vec());
    while !(y.len() == 1 && y[0].is_zero()) {
        let r = poly_rem(&x, &y);
        x = y;
        y = poly_trim(r);
    }
    // Normalize monic.
    let inv = x.last().unwrap().inverse().expect("nonzero gcd");
    x.iter().map(|c| c * &inv).collect()
}

/// The squarefree part `p / gcd(p, p')`, monic.
fn squarefree_part(p: &[Q]) -> Vec<Q> {
    if p.len() <= 2 {
        return p.to_vec();
    }
    let derivative: Vec<Q> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * &Q::from_int(k as i64))
        .collect();
    let g = poly_gcd(p, &poly_trim(derivative));
    if g.len() == 1 {
        return p.to_vec();
    }
    // Long division p / g is exact.
    let mut quotient = vec![Q::zero(); p.len() - g.len() + 1];
    let mut r = p.to_vec();
    let dg = g.len() - 1;
    let lead_inv = g[dg].inverse().expect("monic gcd");
    while r.len() > dg && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        if dr < dg {
            break;
        }
        let factor = &r[dr] * &lead_inv;
        quotient[dr - dg] = factor.clone();
        for k in 0..=dg {
            let idx = dr - dg + k;
            let sub = &factor * &g[k];
            r[idx] = &r[idx] - &sub;
        }
        r = poly_trim(r);
    }
    poly_trim(quotient)
}

/// One Wedderburn block of the semisimple quotient.
pub struct BlockData {
    /// The central primitive idempotent cutting this block, in quotient
    /// coordinates.
    pub central_idempotent: Vector,
    /// Matrix size `m` (the block is `M_m(k)`).
    pub size: usize,
    /// Diagonal matrix units `E_11, ..., E_mm`, in quotient coordinates.
    pub diagonal_idempotents: Vec<Vector>,
}

/// The semisimple quotient with its verified block decomposition.
pub struct Wedderburn {
    pub quotient: QuotientAlgebra,
    pub blocks: Vec<BlockData>,
}

impl Wedderburn {
    /// Multiset of block sizes, sorted ascending.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.blocks.iter().map(|b| b.size).collect();
        v.sort_unstable();
        v
    }
}

/// Central primitive idempotents of a (semisimple, commutative-center) split
/// algebra, by refining against multiplication on the center.
fn central_primitive_idempotents(algebra: &Algebra) -> Result<Vec<Vector>> {
    let z = center(algebra);
    let d = algebra.dim();
    let mut idems: Vec<Vector> = vec![algebra.unit().clone()];
    for zi in 0..z.dim() {
        let zvec = z.basis().row_vec(zi);
        let mut next = Vec::new();
        for e in idems {
            // Dimension of Z·e: if a line, e is already primitive in Z.
            let ze_rows: Vec<Vector> = (0..z.dim())
                .map(|k| algebra.multiply_coords(z.basis().row(k), &e))
                .collect();
            if RowSpace::from_rows(ze_rows, d).dim() <= 1 {
                next.push(e);
                continue;
            }
            let u = algebra.multiply_coords(&zvec, &e);
            let minpoly = minimal_polynomial(algebra, &u, &e);
            if minpoly.len() <= 2 {
                next.push(e);
                continue;
            }
            let roots = roots_of_squarefree(&minpoly)
                .ok_or_else(|| Error::BlockSplitFailed(algebra.dim()))?;
            for (ri, root) in roots.iter().enumerate() {
                // Lagrange projector: prod_{j≠i} (u - λ_j e) / (λ_i - λ_j).
                let mut proj = e.clone();
                for (rj, other) in roots.iter().enumerate() {
                    if ri == rj {
                        continue;
                    }
                    let scale = (root - other)
                        .inverse()
                        .ok_or_else(|| Error::Internal("repeated root in min poly".into()))?;
                    let mut shifted = u.clone();
                    linalg::add_scaled(&mut shifted, &e, &-other.clone());
                    let term: Vector = shifted.iter().map(|c| c * &scale).collect();
                    proj = algebra.multiply_coords(&proj, &term);
                }
                if !linalg::is_zero_vector(&proj) {
                    next.push(proj);
                }
            }
        }
        idems = next;
    }
    // Verify: orthogonal idempotents summing to 1, each cutting a line of Z.
    let mut total = linalg::zero_vector(d);
    for e in &idems {
        if algebra.multiply_coords(e, e) != *e {
            return Err(Error::Internal("central splitting produced a non-idempotent".into()));
        }
        let ze_rows: Vec<Vector> = (0..z.dim())
            .map(|k| algebra.multiply_coords(z.basis().row(k), e))
            .collect();
        if RowSpace::from_rows(ze_rows, d).dim() != 1 {
            return Err(Error::BlockSplitFailed(algebra.dim()));
        }
        for (t, c) in total.iter_mut().zip(e) {
            *t += c;
        }
    }
    for (a, ea) in idems.iter().enumerate() {
        for eb in idems.iter().skip(a + 1) {
            if !linalg::is_zero_vector(&algebra.multiply_coords(ea, eb)) {
                return Err(Error::Internal("central idempotents are not orthogonal".into()));
            }
        }
    }
    if total != *algebra.unit() {
        return Err(Error::Internal("central idempotents do not sum to 1".into()));
    }
    Ok(idems)
}

/// A minimal left ideal of a split simple algebra `B ≅ M_m(k)`, as a row
/// space in `B` coordinates.
///
/// Descends through corners: keep an idempotent `e`, inspect the corner
/// `eBe`, pick a non-scalar element, split off an eigenvalue of its minimal
/// polynomial (squarefree-reduced; eigenvalues must lie in `Q(i)`), and
/// replace `e` by the idempotent generator of the resulting proper left
/// ideal of the corner. When the corner is a line, `B·e` is minimal.
fn minimal_left_ideal(b: &Algebra, target: usize, seed: u64) -> Result<RowSpace> {
    let d = b.dim();
    let left_ideal_of = |y: &Vector| -> RowSpace {
        let rows: Vec<Vector> = (0..d)
            .map(|a| b.multiply_coords(&linalg::unit_vector(d, a), y))
            .collect();
        RowSpace::from_rows(rows, d)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut e = b.unit().clone();
    loop {
        // Corner eBe.
        let corner_rows: Vec<Vector> = (0..d)
            .map(|a| {
                let m = b.multiply_coords(&e, &linalg::unit_vector(d, a));
                b.multiply_coords(&m, &e)
            })
            .collect();
        let corner = RowSpace::from_rows(corner_rows, d);
        if corner.dim() == 1 {
            break;
        }
        // Candidate non-scalar corner elements: the corner basis first, then
        // seeded random combinations.
        let mut candidates: Vec<Vector> = corner.basis_rows();
        for _ in 0..24 {
            let mut y = linalg::zero_vector(d);
            for row in corner.basis_rows() {
                let c = &Q::from_int(rng.gen_range(-2i64..=2))
                    + &(&Q::i() * &Q::from_int(rng.gen_range(-1i64..=1)));
                linalg::add_scaled(&mut y, &row, &c);
            }
            candidates.push(y);
        }
        let scalar_line = RowSpace::from_rows(vec![e.clone()], d);
        let mut descended = false;
        for cand in candidates {
            if linalg::is_zero_vector(&cand) || scalar_line.contains(&cand) {
                continue;
            }
            let minpoly = minimal_polynomial(b, &cand, &e);
            let reduced = squarefree_part(&minpoly);
            let Some(roots) = roots_of_squarefree(&reduced) else {
                continue;
            };
            let Some(root) = roots.into_iter().next() else {
                continue;
            };
            // y = cand - root·e is a nonzero zero divisor of the corner.
            let mut y = cand.clone();
            linalg::add_scaled(&mut y, &e, &-root);
            if linalg::is_zero_vector(&y) {
                continue;
            }
            // The proper left ideal (eBe)·y and its idempotent generator.
            let cy_rows: Vec<Vector> = corner
                .basis_rows()
                .iter()
                .map(|c| b.multiply_coords(c, &y))
                .collect();
            let cy = RowSpace::from_rows(cy_rows, d);
            if cy.dim() == 0 || cy.dim() >= corner.dim() {
                continue;
            }
            // A left ideal of a semisimple algebra is Ce' for an idempotent
            // e' ∈ Cy acting as a right identity: z_j · e' = z_j. Solve
            // sum_i alpha_i · (z_j · r_i) = z_j over the basis of Cy.
            let k = cy.dim();
            let mut system_rows = Vec::new();
            let mut rhs = Vec::new();
            for j in 0..k {
                let z = cy.basis().row_vec(j);
                let products: Vec<Vector> = (0..k)
                    .map(|i| b.multiply_coords(&z, cy.basis().row(i)))
                    .collect();
                for coord in 0..d {
                    let mut row = linalg::zero_vector(k);
                    for (i, p) in products.iter().enumerate() {
                        row[i] = p[coord].clone();
                    }
                    system_rows.push(row);
                    rhs.push(z[coord].clone());
                }
            }
            let system = ExactMatrix::from_rows(system_rows);
            let Some(alpha) = LinearSolver::new(&system).solve(&rhs) else {
                continue;
            };
            let mut e_new = linalg::zero_vector(d);
            for (i, c) in alpha.iter().enumerate() {
                linalg::add_scaled(&mut e_new, cy.basis().row(i), c);
            }
            if b.multiply_coords(&e_new, &e_new) != e_new {
                continue;
            }
            e = e_new;
            descended = true;
            break;
        }
        if !descended {
            return Err(Error::BlockSplitFailed(d));
        }
    }
    let ideal = left_ideal_of(&e);
    if ideal.dim() != target {
        return Err(Error::BlockSplitFailed(d));
    }
    Ok(ideal)
}

/// Certifies one block `B ≅ M_m(k)` by building matrix units from the action
/// on a minimal left ideal; returns the units in `B` coordinates, row i,j
/// flattened as `i * m + j`.
fn block_matrix_units(b: &Algebra, m: usize, seed: u64) -> Result<Vec<Vector>> {
    let d = b.dim();
    let ideal = minimal_left_ideal(b, m, seed)?;
    let solver = LinearSolver::new(&ideal.basis().transpose());
    // rho: B -> M_m via left multiplication on the ideal, flattened.
    let mut flat_cols = Vec::with_capacity(d);
    for a in 0..d {
        let mut flat = Vec::with_capacity(m * m);
        let mut cols = Vec::with_capacity(m);
        for k in 0..m {
            let img = b.multiply_coords(&linalg::unit_vector(d, a), ideal.basis().row(k));
            let coords = solver
                .solve(&img)
                .ok_or_else(|| Error::Internal("minimal ideal is not invariant".into()))?;
            cols.push(coords);
        }
        for r in 0..m {
            for c in 0..m {
                flat.push(cols[c][r].clone());
            }
        }
        flat_cols.push(flat);
    }
    let p = ExactMatrix::from_rows(flat_cols).transpose(); // m² × d
    let pinv_solver = LinearSolver::new(&p);
    if pinv_solver.rank() != d {
        return Err(Error::BlockSplitFailed(d));
    }
    let mut units = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            let mut target = linalg::zero_vector(m * m);
            target[i * m + j] = Q::one();
            let u = pinv_solver
                .solve(&target)
                .ok_or(Error::BlockSplitFailed(d))?;
            units.push(u);
        }
    }
    // Certify the unit relations exactly.
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                for l in 0..m {
                    let prod = b.multiply_coords(&units[i * m + j], &units[k * m + l]);
                    let expected = if j == k {
                        units[i * m + l].clone()
                    } else {
                        linalg::zero_vector(d)
                    };
                    if prod != expected {
                        return Err(Error::BlockSplitFailed(d));
                    }
                }
            }
        }
    }
    let mut sum = linalg::zero_vector(d);
    for i in 0..m {
        for (s, c) in sum.iter_mut().zip(&units[i * m + i]) {
            *s += c;
        }
    }
    if sum != *b.unit() {
        return Err(Error::BlockSplitFailed(d));
    }
    Ok(units)
}

/// Splits `A / rad` into verified matrix blocks.
pub fn wedderburn(algebra: &Algebra, rad: &RadicalIdeal, seed: u64) -> Result<Wedderburn> {
    let quotient = quotient_algebra(algebra, &rad.basis_rows())?;
    let qa = &quotient.algebra;
    let centrals = central_primitive_idempotents(qa)?;
    let mut blocks = Vec::new();
    for e in centrals {
        // The block Ā·e as its own algebra.
        let d = qa.dim();
        let rows: Vec<Vector> = (0..d)
            .map(|a| qa.multiply_coords(&linalg::unit_vector(d, a), &e))
            .collect();
        let space = RowSpace::from_rows(rows, d);
        let block_dim = space.dim();
        let m = (1..=block_dim).find(|k| k * k == block_dim).ok_or(
            Error::BlockSplitFailed(block_dim),
        )?;
        let sub: Subalgebra = subalgebra(qa, space.basis_rows(), e.clone(), Vec::new())?;
        let units = block_matrix_units(&sub.algebra, m, seed)?;
        let diagonal = (0..m)
            .map(|i| sub.embed(&units[i * m + i]))
            .collect();
        blocks.push(BlockData {
            central_idempotent: e,
            size: m,
            diagonal_idempotents: diagonal,
        });
    }
    // Dimension bookkeeping: sum of m² equals dim(A/r).
    let total: usize = blocks.iter().map(|b| b.size * b.size).sum();
    if total != quotient.algebra.dim() {
        return Err(Error::Internal("block dimensions do not add up".into()));
    }
    Ok(Wedderburn { quotient, blocks })
}

/// Multiset of Wedderburn block sizes of `A / rad(A)`, ascending.
pub fn semisimple_blocks(algebra: &Algebra) -> Result<Vec<usize>> {
    let rad = radical(algebra)?;
    Ok(wedderburn(algebra, &rad, 0)?.block_sizes())
}

/// Lifts the diagonal idempotents of every block through the radical:
/// pairwise orthogonal, primitive, summing to 1.
pub fn primitive_idempotents_from(
    algebra: &Algebra,
    wed: &Wedderburn,
) -> Result<Vec<Vector>> {
    let d = algebra.dim();
    let bar_idems: Vec<Vector> = wed
        .blocks
        .iter()
        .flat_map(|b| b.diagonal_idempotents.iter().cloned())
        .collect();
    let mut lifted: Vec<Vector> = Vec::new();
    let mut corner = algebra.unit().clone(); // 1 - sum of lifts so far
    for (count, bar) in bar_idems.iter().enumerate() {
        if count + 1 == bar_idems.len() {
            // The last one is forced.
            let e = corner.clone();
            if algebra.multiply_coords(&e, &e) != e {
                return Err(Error::Internal("final idempotent is not idempotent".into()));
            }
            if wed.quotient.projection.apply(&e) != *bar {
                return Err(Error::Internal("final idempotent has wrong residue".into()));
            }
            lifted.push(e);
            break;
        }
        let x0 = wed.quotient.section.apply(bar);
        // Move into the corner so orthogonality to previous lifts is automatic.
        let mut e = algebra.multiply_coords(&corner, &algebra.multiply_coords(&x0, &corner));
        let mut stabilized = false;
        for _ in 0..=d {
            if algebra.multiply_coords(&e, &e) == e {
                stabilized = true;
                break;
            }
            // e <- 3e² - 2e³
            let e2 = algebra.multiply_coords(&e, &e);
            let e3 = algebra.multiply_coords(&e2, &e);
            let mut next = linalg::zero_vector(d);
            linalg::add_scaled(&mut next, &e2, &Q::from_int(3));
            linalg::add_scaled(&mut next, &e3, &Q::from_int(-2));
            e = next;
        }
        if !stabilized {
            return Err(Error::Internal(format!(
                "idempotent lifting did not stabilize within {d} iterations"
            )));
        }
        if wed.quotient.projection.apply(&e) != *bar {
            return Err(Error::Internal("lifted idempotent has wrong residue".into()));
        }
        for (c, v) in corner.iter_mut().zip(&e) {
            *c -= v;
        }
        lifted.push(e);
    }
    // Certify: orthogonal, idempotent, summing to 1.
    let mut sum = linalg::zero_vector(d);
    for e in &lifted {
        if algebra.multiply_coords(e, e) != *e {
            return Err(Error::Internal("lift is not idempotent".into()));
        }
        for (s, c) in sum.iter_mut().zip(e) {
            *s += c;
        }
    }
    if sum != *algebra.unit() {
        return Err(Error::Internal("lifted idempotents do not sum to 1".into()));
    }
    for (a, ea) in lifted.iter().enumerate() {
        for eb in lifted.iter().skip(a + 1) {
            if !linalg::is_zero_vector(&algebra.multiply_coords(ea, eb))
                || !linalg::is_zero_vector(&algebra.multiply_coords(eb, ea))
            {
                return Err(Error::Internal("lifted idempotents are not orthogonal".into()));
            }
        }
    }
    Ok(lifted)
}

/// Primitive orthogonal idempotents of `A`, lifted from `A / rad`.
pub fn primitive_idempotents(algebra: &Algebra) -> Result<Vec<Vector>> {
    primitive_idempotents_seeded(algebra, 0)
}

/// Same, but with the seed driving the minimal-left-ideal search exposed.
pub fn primitive_idempotents_seeded(algebra: &Algebra, seed: u64) -> Result<Vec<Vector>> {
    let rad = radical(algebra)?;
    let wed = wedderburn(algebra, &rad, seed)?;
    primitive_idempotents_from(algebra, &wed)
}

/// The full structure sheet of an algebra: radical, blocks, idempotents,
/// indecomposable projectives `P_i = A e_i`, simples `S_i = P_i / r P_i`,
/// and the isomorphism classes among them.
pub struct AlgebraStructure {
    pub algebra: Algebra,
    pub radical: RadicalIdeal,
    pub wedderburn: Wedderburn,
    pub idempotents: Vec<Vector>,
    pub projectives: Vec<LeftModule>,
    /// Basis of `P_i` inside `A` (rows).
    pub projective_bases: Vec<ExactMatrix>,
    pub simples: Vec<LeftModule>,
    /// For each idempotent index, the index of its class representative.
    pub class_of: Vec<usize>,
    /// Indices of the distinct class representatives, in first-seen order.
    pub representatives: Vec<usize>,
}

pub fn analyze(algebra: &Algebra, seed: u64) -> Result<AlgebraStructure> {
    let rad = radical(algebra)?;
    let wed = wedderburn(algebra, &rad, seed)?;
    let idempotents = primitive_idempotents_from(algebra, &wed)?;
    let regular = LeftModule::regular(algebra);
    let d = algebra.dim();

    let mut projectives = Vec::new();
    let mut projective_bases = Vec::new();
    let mut simples = Vec::new();
    for e in &idempotents {
        let rows: Vec<Vector> = (0..d)
            .map(|a| algebra.multiply_coords(&linalg::unit_vector(d, a), e))
            .collect();
        let span = RowSpace::from_rows(rows, d);
        let (p, basis) = regular.submodule_on_invariant_basis(span);
        // rad·P inside P's own coordinates.
        let rad_rows: Vec<Vector> = rad
            .basis_rows()
            .iter()
            .flat_map(|r| {
                (0..p.dim())
                    .map(|k| p.apply(r, &linalg::unit_vector(p.dim(), k)))
                    .collect::<Vec<_>>()
            })
            .collect();
        let rad_space = RowSpace::from_rows(rad_rows, p.dim());
        let (s, _) = p.quotient(&rad_space);
        projectives.push(p);
        projective_bases.push(basis);
        simples.push(s);
    }

    // Group idempotents into isomorphism classes via the simples.
    let mut class_of = vec![usize::MAX; idempotents.len()];
    let mut representatives = Vec::new();
    for i in 0..idempotents.len() {
        let mut found = None;
        for &r in &representatives {
            if modules::is_isomorphic(&simples[i], &simples[r], seed)? {
                found = Some(r);
                break;
            }
        }
        match found {
            Some(r) => class_of[i] = r,
            None => {
                class_of[i] = i;
                representatives.push(i);
            }
        }
    }

    // Dimension bookkeeping: A = ⊕ P_i.
    let total: usize = projectives.iter().map(|p| p.dim()).sum();
    if total != d {
        return Err(Error::Internal("projectives do not fill the algebra".into()));
    }

    Ok(AlgebraStructure {
        algebra: algebra.clone(),
        radical: rad,
        wedderburn: wed,
        idempotents,
        projectives,
        projective_bases,
        simples,
        class_of,
        representatives,
    })
}

impl AlgebraStructure {
    /// Distinct `(P_i, S_i)` pairs up to isomorphism, in first-seen order.
    pub fn distinct_pairs(&self) -> Vec<(&LeftModule, &LeftModule)> {
        self.representatives
            .iter()
            .map(|&r| (&self.projectives[r], &self.simples[r]))
            .collect()
    }

    /// Multiplicity of each representative class inside `A = ⊕ P_i`.
    pub fn class_multiplicity(&self, rep: usize) -> usize {
        self.class_of.iter().filter(|&&c| c == rep).count()
    }
}

/// A deterministic isomorphism-invariant summary used as a necessary
/// condition when cross-checking constructive isomorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraFingerprint {
    pub dimension: usize,
    /// `dim r, dim r², ...` down to the first zero inclusive.
    pub radical_series: Vec<usize>,
    /// Sorted block sizes of `A / r`.
    pub blocks: Vec<usize>,
    /// `cartan[i][j] = dim Hom(P_i, P_j) = dim e_i A e_j` over distinct
    /// projectives.
    pub cartan: Vec<Vec<usize>>,
}

pub fn fingerprint(algebra: &Algebra, seed: u64) -> Result<AlgebraFingerprint> {
    let structure = analyze(algebra, seed)?;
    let d = algebra.dim();
    let reps = &structure.representatives;
    let mut cartan = vec![vec![0usize; reps.len()]; reps.len()];
    for (i, &ri) in reps.iter().enumerate() {
        for (j, &rj) in reps.iter().enumerate() {
            let ei = &structure.idempotents[ri];
            let ej = &structure.idempotents[rj];
            let rows: Vec<Vector> = (0..d)
                .map(|a| {
                    let left = algebra.multiply_coords(ei, &linalg::unit_vector(d, a));
                    algebra.multiply_coords(&left, ej)
                })
                .collect();
            cartan[i][j] = RowSpace::from_rows(rows, d).dim();
        }
    }
    // Positive diagonal is part of the contract.
    for (i, row) in cartan.iter().enumerate() {
        if row[i] == 0 {
            return Err(Error::Internal("Cartan diagonal entry is zero".into()));
        }
    }
    Ok(AlgebraFingerprint {
        dimension: d,
        radical_series: structure.radical.series().to_vec(),
        blocks: structure.wedderburn.block_sizes(),
        cartan,
    })
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
    fn radical_examples() {
        // Cl0(<1,1,0>): radical of dimension 2 (the off-diagonal part).
        let a = even_algebra(&[1, 1, 0]);
        let r = radical(&a).unwrap();
        assert_eq!(r.dim(), 2);
        assert_eq!(r.series(), &[2, 0]);

        // Cl0(<1,0>) = k ⊕ kj: radical is the line kj.
        let b = even_algebra(&[1, 0]);
        let rb = radical(&b).unwrap();
        assert_eq!(rb.dim(), 1);
        assert_eq!(rb.series(), &[1, 0]);

        // M2(k) is semisimple.
        let m2 = Algebra::ground_field().matrix_algebra(2).unwrap();
        let rm = radical(&m2).unwrap();
        assert_eq!(rm.dim(), 0);
        assert_eq!(rm.series(), &[0]);
    }

    #[test]
    fn block_examples() {
        // Cl0(<1,1,1,1>) ≅ M2 × M2.
        assert_eq!(semisimple_blocks(&even_algebra(&[1, 1, 1, 1])).unwrap(), vec![2, 2]);
        // Cl0(<1,1,1,1,1>) ≅ M4.
        assert_eq!(semisimple_blocks(&even_algebra(&[1, 1, 1, 1, 1])).unwrap(), vec![4]);
        // Cl0(<1,1,0>) / r ≅ k × k.
        assert_eq!(semisimple_blocks(&even_algebra(&[1, 1, 0])).unwrap(), vec![1, 1]);
        // Cl0(<1,1>) ≅ k × k already.
        assert_eq!(semisimple_blocks(&even_algebra(&[1, 1])).unwrap(), vec![1, 1]);
        // Cl0(<1,1,1>) ≅ M2.
        assert_eq!(semisimple_blocks(&even_algebra(&[1, 1, 1])).unwrap(), vec![2]);
    }

    #[test]
    fn idempotent_examples() {
        // Cl0(<1,1,0>): two primitive orthogonal idempotents.
        let a = even_algebra(&[1, 1, 0]);
        let idems = primitive_idempotents(&a).unwrap();
        assert_eq!(idems.len(), 2);

        // Cl0(<1,0>) is local: only the unit.
        let b = even_algebra(&[1, 0]);
        let idems_b = primitive_idempotents(&b).unwrap();
        assert_eq!(idems_b.len(), 1);
        assert_eq!(idems_b[0], *b.unit());

        // The ground field.
        let k = Algebra::ground_field();
        assert_eq!(primitive_idempotents(&k).unwrap().len(), 1);
    }

    #[test]
    fn projectives_and_simples_examples() {
        // Cl0(<1,1,0>): P1, P2 of dim 2; S1, S2 of dim 1, non-isomorphic.
        let a = even_algebra(&[1, 1, 0]);
        let s = analyze(&a, 0).unwrap();
        assert_eq!(s.projectives.len(), 2);
        assert!(s.projectives.iter().all(|p| p.dim() == 2));
        assert!(s.simples.iter().all(|m| m.dim() == 1));
        assert_eq!(s.representatives.len(), 2);

        // Cl0(<1,1,1,1,1>): one class, P = S of dim 4, multiplicity 4.
        let c = even_algebra(&[1, 1, 1, 1, 1]);
        let sc = analyze(&c, 0).unwrap();
        assert_eq!(sc.representatives.len(), 1);
        let (p, s4) = sc.distinct_pairs()[0];
        assert_eq!(p.dim(), 4);
        assert_eq!(s4.dim(), 4);

        // Cl0(<1,0>): one P of dim 2, one S of dim 1.
        let b = even_algebra(&[1, 0]);
        let sb = analyze(&b, 0).unwrap();
        assert_eq!(sb.representatives.len(), 1);
        let (pb, sb1) = sb.distinct_pairs()[0];
        assert_eq!(pb.dim(), 2);
        assert_eq!(sb1.dim(), 1);
    }

    #[test]
    fn fingerprint_examples() {
        let a = even_algebra(&[1, 1, 0]);
        let f = fingerprint(&a, 0).unwrap();
        assert_eq!(f.dimension, 4);
        assert_eq!(f.radical_series, vec![2, 0]);
        assert_eq!(f.blocks, vec![1, 1]);
        assert_eq!(f.cartan, vec![vec![1, 1], vec![1, 1]]);

        let m2 = Algebra::ground_field().matrix_algebra(2).unwrap();
        let fm = fingerprint(&m2, 0).unwrap();
        assert_eq!(fm.dimension, 4);
        assert_eq!(fm.radical_series, vec![0]);
        assert_eq!(fm.blocks, vec![2]);
        assert_eq!(fm.cartan, vec![vec![1]]);

        // k ⊕ kj: Hom(P, P) = A has dimension 2.
        let b = even_algebra(&[1, 0]);
        let fb = fingerprint(&b, 0).unwrap();
        assert_eq!(fb.dimension, 2);
        assert_eq!(fb.radical_series, vec![1, 0]);
        assert_eq!(fb.blocks, vec![1]);
        assert_eq!(fb.cartan, vec![vec![2]]);
    }

    #[test]
    fn gaussian_sqrt_cases() {
        assert_eq!(gaussian_sqrt(&Q::from_int(4)), Some(Q::from_int(2)));
        assert_eq!(gaussian_sqrt(&Q::from_int(-1)), Some(Q::i()));
        // 2i = (1+i)².
        assert_eq!(
            gaussian_sqrt(&Q::from_parts(0, 1, 2, 1)),
            Some(Q::from_parts(1, 1, 1, 1))
        );
        assert_eq!(gaussian_sqrt(&Q::from_int(2)), None);
        assert_eq!(gaussian_sqrt(&Q::from_ratio(1, 4)), Some(Q::from_ratio(1, 2)));
    }
}
