//! Matrix factorizations of the quadric from graded ideals, fiber ranks of
//! the associated spinor sheaves, their Krull–Schmidt classification, and
//! the splitting criterion for the canonical extensions.
//!
//! The pair `(φ, ψ)` comes from left multiplication by `Σ x_i v_i` between
//! the halves of `I^W`; the identity `φψ = ψφ = q·I` is verified symbolically
//! on construction. Classification happens on the algebra side (the halves
//! as `Cl0(q)`-modules) and is transported through the registry labels.

use rand::Rng;

use crate::algebra::LinearSolver;
use crate::clifford::{left_ideal, CliffordAlgebra, GradedIdeal};
use crate::error::Error;
use crate::graded::GradedClModule;
use crate::linalg::{self, ExactMatrix, Vector};
use crate::qspace::{random_isometry, IsotropicSubspace, QuadraticSpace};
use crate::registry::{ideal_half_module, FormContext, Identification};
use crate::scalar::GaussianRational as Q;
use crate::Result;

/// A square matrix of linear forms `Σ x_i Φ_i`, stored per coordinate.
#[derive(Clone)]
pub struct LinearFormMatrix {
    size: usize,
    comps: Vec<ExactMatrix>,
}

impl LinearFormMatrix {
    pub fn new(size: usize, comps: Vec<ExactMatrix>) -> Self {
        assert!(comps.iter().all(|m| m.rows() == size && m.cols() == size));
        LinearFormMatrix { size, comps }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn variables(&self) -> usize {
        self.comps.len()
    }

    pub fn component(&self, i: usize) -> &ExactMatrix {
        &self.comps[i]
    }

    /// Evaluation at a point of `k^N`.
    pub fn evaluate(&self, point: &[Q]) -> ExactMatrix {
        assert_eq!(point.len(), self.comps.len());
        let mut out = ExactMatrix::zeros(self.size, self.size);
        for (p, comp) in point.iter().zip(&self.comps) {
            if !p.is_zero() {
                out = out.add(&comp.scale(p));
            }
        }
        out
    }
}

/// A matrix factorization `φψ = ψφ = q·I` of the quadratic form.
pub struct MatrixFactorization {
    pub space: QuadraticSpace,
    pub phi: LinearFormMatrix,
    pub psi: LinearFormMatrix,
}

impl MatrixFactorization {
    pub fn size(&self) -> usize {
        self.phi.size()
    }

    /// The symbolic identity, coefficient by coefficient: for the diagonal
    /// form, `Ψ_i Φ_i = q_i·I` and `Ψ_i Φ_j + Ψ_j Φ_i = 0` for `i ≠ j`, and
    /// the same with the factors swapped.
    pub fn verify_identity(&self) -> Result<()> {
        let n = self.space.dim();
        let m = self.size();
        for (first, second) in [(&self.psi, &self.phi), (&self.phi, &self.psi)] {
            for i in 0..n {
                for j in i..n {
                    let mut sum = first.component(i).mul(second.component(j));
                    if i != j {
                        sum = sum.add(&first.component(j).mul(second.component(i)));
                    }
                    let expected = if i == j {
                        ExactMatrix::identity(m).scale(&Q::from_int(self.space.entry(i) as i64))
                    } else {
                        ExactMatrix::zeros(m, m)
                    };
                    if sum != expected {
                        return Err(Error::Internal(format!(
                            "factorization identity fails at coefficient x_{} x_{}",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The factorization of `q` induced by left multiplication on `I^W`.
pub fn matrix_factorization(
    cl: &CliffordAlgebra,
    w: &IsotropicSubspace,
) -> Result<MatrixFactorization> {
    let ideal = left_ideal(cl, w)?;
    factorization_from_ideal(cl, &ideal)
}

/// `Φ_i` is left multiplication by `v_i` from `I_0` to `I_1` in the chosen
/// bases, `Ψ_i` the same from `I_1` to `I_0`; only the generator actions are
/// computed.
pub fn factorization_from_ideal(
    cl: &CliffordAlgebra,
    ideal: &GradedIdeal,
) -> Result<MatrixFactorization> {
    let k = ideal.even_dim();
    if k != ideal.odd_dim() {
        return Err(Error::IncompatibleGrading(format!(
            "ideal halves have dimensions {} and {}",
            k,
            ideal.odd_dim()
        )));
    }
    let n = cl.space().dim();
    let d = cl.dim();
    let solver_even = LinearSolver::new(&ideal.even().basis().transpose());
    let solver_odd = LinearSolver::new(&ideal.odd().basis().transpose());
    let mut phi = Vec::with_capacity(n);
    let mut psi = Vec::with_capacity(n);
    for i in 0..n {
        let gen = linalg::unit_vector(d, 1usize << i);
        let mut p = ExactMatrix::zeros(k, k);
        let mut s = ExactMatrix::zeros(k, k);
        for c in 0..k {
            let img = cl.algebra().multiply_coords(&gen, ideal.even().basis().row(c));
            let coords = solver_odd
                .solve(&img)
                .ok_or_else(|| Error::Internal("I_0 does not map into I_1".into()))?;
            for (r, v) in coords.into_iter().enumerate() {
                if !v.is_zero() {
                    p.set(r, c, v);
                }
            }
            let img = cl.algebra().multiply_coords(&gen, ideal.odd().basis().row(c));
            let coords = solver_even
                .solve(&img)
                .ok_or_else(|| Error::Internal("I_1 does not map into I_0".into()))?;
            for (r, v) in coords.into_iter().enumerate() {
                if !v.is_zero() {
                    s.set(r, c, v);
                }
            }
        }
        phi.push(p);
        psi.push(s);
    }
    let mf = MatrixFactorization {
        space: cl.space().clone(),
        phi: LinearFormMatrix::new(k, phi),
        psi: LinearFormMatrix::new(k, psi),
    };
    mf.verify_identity()?;
    Ok(mf)
}

/// The general construction for any graded `Cl(q)`-module: `Φ_i` is the
/// even-to-odd block of the action of `v_i`, `Ψ_i` the odd-to-even block.
pub fn factorization_from_graded(
    cl: &CliffordAlgebra,
    m: &GradedClModule,
) -> Result<MatrixFactorization> {
    let k = m.even_dim();
    if k != m.odd_dim() {
        return Err(Error::IncompatibleGrading(format!(
            "graded halves have dimensions {} and {}",
            k,
            m.odd_dim()
        )));
    }
    let n = cl.space().dim();
    let mut phi = Vec::with_capacity(n);
    let mut psi = Vec::with_capacity(n);
    for i in 0..n {
        let act = m.module().action(1usize << i);
        let mut p = ExactMatrix::zeros(k, k);
        let mut s = ExactMatrix::zeros(k, k);
        for r in 0..k {
            for c in 0..k {
                let v = act.at(k + r, c);
                if !v.is_zero() {
                    p.set(r, c, v.clone());
                }
                let w = act.at(r, k + c);
                if !w.is_zero() {
                    s.set(r, c, w.clone());
                }
            }
        }
        phi.push(p);
        psi.push(s);
    }
    let mf = MatrixFactorization {
        space: cl.space().clone(),
        phi: LinearFormMatrix::new(k, phi),
        psi: LinearFormMatrix::new(k, psi),
    };
    mf.verify_identity()?;
    Ok(mf)
}

/// Rank of the cokernel fiber of the spinor sheaf at a point of the quadric:
/// `M - rank(φ(p))`.
pub fn fiber_rank(mf: &MatrixFactorization, point: &[Q]) -> Result<usize> {
    if linalg::is_zero_vector(point) {
        return Err(Error::ZeroVector);
    }
    if !mf.space.q_value(point).is_zero() {
        return Err(Error::PointOffQuadric);
    }
    Ok(mf.size() - mf.phi.evaluate(point).rank())
}

/// A deterministic rational point of the quadric away from special loci:
/// a standard isotropic vector moved by a random exact isometry, plus a
/// random kernel contribution.
pub fn random_quadric_point(space: &QuadraticSpace, rng: &mut impl Rng) -> Result<Vector> {
    let nz = space.nonzero_indices();
    let kernel = space.kernel_indices();
    let mut point = linalg::zero_vector(space.dim());
    if nz.len() >= 2 {
        let mut seed_vec = linalg::zero_vector(space.dim());
        seed_vec[nz[0]] = if space.entry(nz[0]) == 1 { Q::one() } else { Q::i() };
        seed_vec[nz[1]] = if space.entry(nz[1]) == 1 { Q::i() } else { Q::one() };
        let t = random_isometry(space, rng, 8);
        point = t.apply(&seed_vec);
    }
    for &k in &kernel {
        let re = rng.gen_range(-3i64..=3);
        let im = rng.gen_range(-1i64..=1);
        point[k] = &Q::from_int(re) + &(&Q::i() * &Q::from_int(im));
    }
    if linalg::is_zero_vector(&point) {
        if let Some(&k) = kernel.first() {
            point[k] = Q::one();
        } else {
            return Err(Error::Internal(
                "the quadric has no nonzero rational points here".into(),
            ));
        }
    }
    debug_assert!(space.q_value(&point).is_zero());
    Ok(point)
}

/// Classification of the two graded halves of `I^W` against the registry.
pub struct Classification {
    /// Decomposition of `I_0^W` (the sheaf side).
    pub s_half: Identification,
    /// Decomposition of `I_1^W`.
    pub t_half: Identification,
    pub generic_rank: usize,
}

/// Decomposes both halves of `I^W` into registered classes; the paper's
/// classification needs corank ≤ 1.
pub fn classify(ctx: &FormContext, w: &IsotropicSubspace) -> Result<Classification> {
    if ctx.space.corank() > 1 {
        return Err(Error::UnsupportedClassification(ctx.space.corank()));
    }
    if w.space() != &ctx.space {
        return Err(Error::AlgebraMismatch);
    }
    let ideal = left_ideal(&ctx.cl, w)?;
    let m0 = ideal_half_module(&ctx.cl, &ctx.even, ideal.even())?;
    let m1 = ideal_half_module(&ctx.cl, &ctx.even, ideal.odd())?;
    let s_half = ctx.decompose_and_identify(&m0)?;
    let t_half = ctx.decompose_and_identify(&m1)?;
    // Generic rank of the sheaf: size minus generic rank of φ; a random
    // smooth point computes it when one exists, else the size itself.
    let mf = factorization_from_ideal(&ctx.cl, &ideal)?;
    let generic_rank = if ctx.space.rank() >= 2 {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(ctx.seed());
        use rand::SeedableRng as _;
        let point = random_quadric_point(&ctx.space, &mut rng)?;
        mf.size() - mf.phi.evaluate(&point).rank()
    } else {
        mf.size()
    };
    Ok(Classification {
        s_half,
        t_half,
        generic_rank,
    })
}

/// The splitting predicate for `0 -> S^W -> S^{W'} -> T^W -> 0` with
/// `W' ⊂ W` of codimension one: split iff `W ∩ K = W' ∩ K`.
pub fn extension_split(w: &IsotropicSubspace, w_sub: &IsotropicSubspace) -> Result<bool> {
    if w.space() != w_sub.space() {
        return Err(Error::AlgebraMismatch);
    }
    let big = w.row_space();
    let small = w_sub.row_space();
    if !big.contains_space(&small) || big.dim() != small.dim() + 1 {
        return Err(Error::DimensionMismatch(
            "second subspace must sit inside the first with codimension 1".into(),
        ));
    }
    Ok(w.kernel_intersection() == w_sub.kernel_intersection())
}

/// Cross-check of the splitting predicate through classification: when split,
/// the decomposition of `I_0^{W'}` is the union of both halves of `I^W`.
pub fn extension_split_crosscheck(
    ctx: &FormContext,
    w: &IsotropicSubspace,
    w_sub: &IsotropicSubspace,
) -> Result<(bool, bool)> {
    let split = extension_split(w, w_sub)?;
    let big = classify(ctx, w)?;
    let small = classify(ctx, w_sub)?;
    let mut union = big.s_half.labels.clone();
    union.extend(big.t_half.labels.iter().copied());
    union.sort();
    let agrees = (small.s_half.labels == union
        && small.s_half.unknown.is_empty()
        && big.s_half.unknown.is_empty()
        && big.t_half.unknown.is_empty())
        == split;
    Ok((split, agrees))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qspace::{standard_isotropic, IsotropicSpec};
    use crate::registry::Label;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn space(entries: &[i64]) -> QuadraticSpace {
        QuadraticSpace::diagonal_form(entries).unwrap()
    }

    #[test]
    fn one_by_one_factorization() {
        // <1,1,0>, W max: φ = (x1 + i x2), ψ = (x1 - i x2).
        let q = space(&[1, 1, 0]);
        let cl = CliffordAlgebra::new(&q).unwrap();
        let w = standard_isotropic(&q, &IsotropicSpec::Max).unwrap();
        let mf = matrix_factorization(&cl, &w).unwrap();
        assert_eq!(mf.size(), 1);
        let phi_x1 = mf.phi.component(0).at(0, 0).clone();
        let phi_x2 = mf.phi.component(1).at(0, 0).clone();
        let psi_x1 = mf.psi.component(0).at(0, 0).clone();
        let psi_x2 = mf.psi.component(1).at(0, 0).clone();
        // Up to the common normalization of the two basis vectors, the pair
        // is (x1 + i x2, x1 - i x2): the products must match exactly.
        assert_eq!(&phi_x1 * &psi_x1, Q::one());
        assert_eq!(&phi_x2 * &psi_x2, Q::one());
        assert_eq!(&phi_x1 * &psi_x2, -(&phi_x2 * &psi_x1));
        assert_eq!(&phi_x2 * &phi_x1.inverse().unwrap(), Q::i());
        assert!(mf.phi.component(2).is_zero());
    }

    #[test]
    fn factorization_sizes_and_identity() {
        let q = space(&[1, 1, 1, 1, 0]);
        let cl = CliffordAlgebra::new(&q).unwrap();
        for (spec, size) in [
            (IsotropicSpec::Max, 2usize),
            (IsotropicSpec::Dim { dim: 2, kernel: false }, 4),
            (IsotropicSpec::Zero, 16),
        ] {
            let w = standard_isotropic(&q, &spec).unwrap();
            let mf = matrix_factorization(&cl, &w).unwrap();
            assert_eq!(mf.size(), size);
        }
    }

    #[test]
    fn fiber_ranks_on_the_nodal_quadric() {
        let q = space(&[1, 1, 1, 1, 0]);
        let cl = CliffordAlgebra::new(&q).unwrap();
        let wmax = standard_isotropic(&q, &IsotropicSpec::Max).unwrap();
        let mf = matrix_factorization(&cl, &wmax).unwrap();
        // Node [0:0:0:0:1]: rank doubles to 2 = 2^{codim-1}.
        let node = linalg::unit_vector(5, 4);
        assert_eq!(fiber_rank(&mf, &node).unwrap(), 2);
        // Smooth point [1:i:0:0:0]: generic rank 1.
        let mut smooth = linalg::zero_vector(5);
        smooth[0] = Q::one();
        smooth[1] = Q::i();
        assert_eq!(fiber_rank(&mf, &smooth).unwrap(), 1);
        // Off-quadric and zero points error.
        assert!(matches!(
            fiber_rank(&mf, &linalg::unit_vector(5, 0)),
            Err(Error::PointOffQuadric)
        ));
        assert!(matches!(
            fiber_rank(&mf, &linalg::zero_vector(5)),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn nondegenerate_sheaves_are_locally_free() {
        // <1,1,1,1>, W max: rank 1 everywhere on the smooth quadric.
        let q = space(&[1, 1, 1, 1]);
        let cl = CliffordAlgebra::new(&q).unwrap();
        let w = standard_isotropic(&q, &IsotropicSpec::Max).unwrap();
        let mf = matrix_factorization(&cl, &w).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10 {
            let p = random_quadric_point(&q, &mut rng).unwrap();
            assert_eq!(fiber_rank(&mf, &p).unwrap(), 1);
        }
    }

    #[test]
    fn classification_table_rows() {
        // The dimension-5 corank-1 table.
        let ctx = FormContext::new(&space(&[1, 1, 1, 1, 0]), 0).unwrap();
        // W' of dimension 2 with K ⊂ W': S1 ⊕ S2 on each half.
        let with_k =
            standard_isotropic(&ctx.space, &IsotropicSpec::Dim { dim: 2, kernel: true }).unwrap();
        let c = classify(&ctx, &with_k).unwrap();
        assert_eq!(c.s_half.labels, vec![Label::S1, Label::S2]);
        assert_eq!(c.t_half.labels, vec![Label::S1, Label::S2]);
        assert_eq!(c.generic_rank, 2);

        // W' of dimension 2 with K ⊄ W': the locally free extensions.
        let without_k =
            standard_isotropic(&ctx.space, &IsotropicSpec::Dim { dim: 2, kernel: false }).unwrap();
        let c2 = classify(&ctx, &without_k).unwrap();
        assert_eq!(c2.s_half.labels.len(), 1);
        assert_eq!(c2.t_half.labels.len(), 1);
        assert!(matches!(c2.s_half.labels[0], Label::G1 | Label::G2));
        assert!(matches!(c2.t_half.labels[0], Label::G1 | Label::G2));
        assert_ne!(c2.s_half.labels[0], c2.t_half.labels[0]);
        assert_eq!(c2.generic_rank, 2);

        // W = 0: G1² ⊕ G2² on each half, generic rank 8.
        let zero = standard_isotropic(&ctx.space, &IsotropicSpec::Zero).unwrap();
        let c3 = classify(&ctx, &zero).unwrap();
        assert_eq!(
            c3.s_half.labels,
            vec![Label::G1, Label::G1, Label::G2, Label::G2]
        );
        assert_eq!(c3.generic_rank, 8);

        // Corank 2 refuses.
        let ctx2 = FormContext::new(&space(&[1, 1, 0, 0]), 0);
        // Context construction itself is fine; classify refuses.
        if let Ok(ctx2) = ctx2 {
            let w = standard_isotropic(&ctx2.space, &IsotropicSpec::Zero).unwrap();
            assert!(matches!(
                classify(&ctx2, &w),
                Err(Error::UnsupportedClassification(2))
            ));
        }
    }

    #[test]
    fn splitting_criterion() {
        let q = space(&[1, 1, 1, 1, 0]);
        let wmax = standard_isotropic(&q, &IsotropicSpec::Max).unwrap();
        // W' = first two basis vectors of W max (hyperbolic pairs): ε ∉ W'.
        let w_no_k = IsotropicSubspace::new(
            q.clone(),
            vec![wmax.basis()[0].clone(), wmax.basis()[1].clone()],
        )
        .unwrap();
        assert!(!extension_split(&wmax, &w_no_k).unwrap());
        // W' containing ε: both intersections equal K.
        let w_with_k = IsotropicSubspace::new(
            q.clone(),
            vec![wmax.basis()[0].clone(), wmax.basis()[2].clone()],
        )
        .unwrap();
        assert!(extension_split(&wmax, &w_with_k).unwrap());
        // Nondegenerate forms always split.
        let qn = space(&[1, 1, 1, 1]);
        let wn = standard_isotropic(&qn, &IsotropicSpec::Max).unwrap();
        let wn_sub =
            IsotropicSubspace::new(qn.clone(), vec![wn.basis()[0].clone()]).unwrap();
        assert!(extension_split(&wn, &wn_sub).unwrap());
        // Not a subspace: error.
        let other = IsotropicSubspace::new(
            q.clone(),
            vec![{
                let mut v = linalg::zero_vector(5);
                v[0] = Q::one();
                v[1] = -Q::i();
                v
            }],
        )
        .unwrap();
        assert!(extension_split(&w_no_k, &other).is_err());
    }
}
