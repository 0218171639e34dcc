//! Z/2-graded left `Cl(q)`-modules and the equivalence with `Cl0(q)`-modules:
//! `M -> M_0` with quasi-inverse `N -> Cl(q) ⊗_{Cl0(q)} N`.

use crate::algebra::LinearSolver;
use crate::clifford::{CliffordAlgebra, EvenClifford, GradedIdeal};
use crate::error::Error;
use crate::linalg::{self, ExactMatrix, Vector};
use crate::modules::{self, invertible_combination, LeftModule};
use crate::scalar::GaussianRational as Q;
use crate::Result;

/// A graded left `Cl(q)`-module: the underlying module with its basis
/// arranged as `[even block | odd block]`.
pub struct GradedClModule {
    module: LeftModule,
    even_dim: usize,
}

impl GradedClModule {
    /// Wraps a module whose first `even_dim` basis vectors span the even
    /// part; checks that every homogeneous algebra element respects the
    /// block structure.
    pub fn new(cl: &CliffordAlgebra, module: LeftModule, even_dim: usize) -> Result<Self> {
        if !module.algebra().same_as(cl.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        let parity = cl
            .algebra()
            .parity()
            .ok_or(Error::MissingParity)?
            .to_vec();
        let dim = module.dim();
        for (a, &p) in parity.iter().enumerate() {
            let act = module.action(a);
            for r in 0..dim {
                for c in 0..dim {
                    if act.at(r, c).is_zero() {
                        continue;
                    }
                    let src_even = c < even_dim;
                    let dst_even = r < even_dim;
                    let ok = if p == 0 {
                        src_even == dst_even
                    } else {
                        src_even != dst_even
                    };
                    if !ok {
                        return Err(Error::IncompatibleGrading(format!(
                            "basis element {} maps across the grading",
                            cl.algebra().basis_name(a)
                        )));
                    }
                }
            }
        }
        Ok(GradedClModule { module, even_dim })
    }

    pub fn module(&self) -> &LeftModule {
        &self.module
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn even_dim(&self) -> usize {
        self.even_dim
    }

    pub fn odd_dim(&self) -> usize {
        self.module.dim() - self.even_dim
    }

    /// `I^W` as a graded module, basis `[I_0 rows | I_1 rows]`.
    pub fn from_ideal(cl: &CliffordAlgebra, ideal: &GradedIdeal) -> Result<Self> {
        let mut rows = ideal.even().basis_rows();
        let even_dim = rows.len();
        rows.extend(ideal.odd().basis_rows());
        let dim = rows.len();
        let basis = ExactMatrix::from_rows(rows.clone());
        let solver = LinearSolver::new(&basis.transpose());
        let d = cl.dim();
        let mut action = Vec::with_capacity(d);
        for a in 0..d {
            let mut act = ExactMatrix::zeros(dim, dim);
            for (col, row) in rows.iter().enumerate() {
                let image = cl
                    .algebra()
                    .multiply_coords(&linalg::unit_vector(d, a), row);
                let coords = solver
                    .solve(&image)
                    .ok_or_else(|| Error::Internal("ideal is not invariant".into()))?;
                for (r, c) in coords.into_iter().enumerate() {
                    if !c.is_zero() {
                        act.set(r, col, c);
                    }
                }
            }
            action.push(act);
        }
        let module = LeftModule::new(cl.algebra().clone(), dim, action)?;
        GradedClModule::new(cl, module, even_dim)
    }

    /// `Cl(q)` as a graded module over itself, basis reordered to
    /// `[even monomials | odd monomials]`.
    pub fn regular(cl: &CliffordAlgebra) -> Result<Self> {
        let d = cl.dim();
        let even: Vec<usize> = (0..d).filter(|m| m.count_ones() % 2 == 0).collect();
        let odd: Vec<usize> = (0..d).filter(|m| m.count_ones() % 2 == 1).collect();
        let mut rows = Vec::with_capacity(d);
        for &m in even.iter().chain(odd.iter()) {
            rows.push(linalg::unit_vector(d, m));
        }
        let even_dim = even.len();
        let basis = ExactMatrix::from_rows(rows.clone());
        let solver = LinearSolver::new(&basis.transpose());
        let mut action = Vec::with_capacity(d);
        for a in 0..d {
            let mut act = ExactMatrix::zeros(d, d);
            for (col, row) in rows.iter().enumerate() {
                let image = cl
                    .algebra()
                    .multiply_coords(&linalg::unit_vector(d, a), row);
                let coords = solver.solve(&image).expect("regular module basis");
                for (r, c) in coords.into_iter().enumerate() {
                    if !c.is_zero() {
                        act.set(r, col, c);
                    }
                }
            }
            action.push(act);
        }
        let module = LeftModule::new(cl.algebra().clone(), d, action)?;
        GradedClModule::new(cl, module, even_dim)
    }

    /// The even part `M_0` as a `Cl0(q)`-module.
    pub fn even_restrict(&self, even: &EvenClifford) -> Result<LeftModule> {
        let k = self.even_dim;
        let mut action = Vec::with_capacity(even.dim());
        for b in 0..even.dim() {
            let parent = even.embed(&linalg::unit_vector(even.dim(), b));
            let full = self.module.act_element(&parent);
            let mut act = ExactMatrix::zeros(k, k);
            for r in 0..k {
                for c in 0..k {
                    let v = full.at(r, c);
                    if !v.is_zero() {
                        act.set(r, c, v.clone());
                    }
                }
            }
            action.push(act);
        }
        LeftModule::new(even.algebra().clone(), k, action)
    }
}

/// Induction `N -> Cl(q) ⊗_{Cl0(q)} N`: the even part is `1 ⊗ N`, the odd
/// part `u ⊗ N` for a fixed invertible odd generator `u` (needs `q ≠ 0`).
pub fn induce(
    cl: &CliffordAlgebra,
    even: &EvenClifford,
    n: &LeftModule,
) -> Result<GradedClModule> {
    if !n.algebra().same_as(even.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let space = cl.space();
    let u_index = *space
        .nonzero_indices()
        .first()
        .ok_or(Error::ZeroForm)?;
    let u = cl.generator(u_index);
    let q_u = Q::from_int(space.entry(u_index) as i64);
    let u_inv = u.scale(&q_u.inverse().expect("nonzero diagonal entry"));

    let k = n.dim();
    let dim = 2 * k;
    let d = cl.dim();
    // Even-part coordinates of a product of Clifford elements.
    let even_coords = |x: &crate::clifford::CliffordElement| -> Result<Vector> {
        even.restrict(&x.to_dense())
            .ok_or_else(|| Error::Internal("expected an even element".into()))
    };
    let mut action = Vec::with_capacity(d);
    for a in 0..d {
        let mono = cl.element_from_dense(&linalg::unit_vector(d, a));
        let mut act = ExactMatrix::zeros(dim, dim);
        if a.count_ones() % 2 == 0 {
            // Even: block diagonal, e_S on 1⊗N and u^{-1} e_S u on u⊗N.
            let top = n.act_element(&even_coords(&mono)?);
            let conj = u_inv.multiply(&mono)?.multiply(&u)?;
            let bottom = n.act_element(&even_coords(&conj)?);
            for r in 0..k {
                for c in 0..k {
                    let v = top.at(r, c);
                    if !v.is_zero() {
                        act.set(r, c, v.clone());
                    }
                    let w = bottom.at(r, c);
                    if !w.is_zero() {
                        act.set(k + r, k + c, w.clone());
                    }
                }
            }
        } else {
            // Odd: e_S·(1⊗n) = u ⊗ (u^{-1} e_S)·n and
            //      e_S·(u⊗n) = 1 ⊗ (e_S u)·n.
            let to_odd = n.act_element(&even_coords(&u_inv.multiply(&mono)?)?);
            let to_even = n.act_element(&even_coords(&mono.multiply(&u)?)?);
            for r in 0..k {
                for c in 0..k {
                    let v = to_odd.at(r, c);
                    if !v.is_zero() {
                        act.set(k + r, c, v.clone());
                    }
                    let w = to_even.at(r, c);
                    if !w.is_zero() {
                        act.set(r, k + c, w.clone());
                    }
                }
            }
        }
        action.push(act);
    }
    let module = LeftModule::new(cl.algebra().clone(), dim, action)?;
    GradedClModule::new(cl, module, k)
}

/// Isomorphism oracle for graded modules: an invertible intertwiner of the
/// underlying `Cl(q)`-modules that respects both blocks.
pub fn is_graded_isomorphic(
    m: &GradedClModule,
    n: &GradedClModule,
    seed: u64,
) -> Result<bool> {
    if m.dim() != n.dim() || m.even_dim() != n.even_dim() {
        return Ok(false);
    }
    if m.dim() == 0 {
        return Ok(true);
    }
    let homs = modules::hom_space(m.module(), n.module())?;
    // Impose the block constraint: off-diagonal blocks vanish.
    let mut rows = Vec::new();
    let dim = m.dim();
    let k = m.even_dim();
    for (r, c) in (0..dim).flat_map(|r| (0..dim).map(move |c| (r, c))) {
        let cross = (r < k) != (c < k);
        if !cross {
            continue;
        }
        let mut row = linalg::zero_vector(homs.len());
        let mut nonzero = false;
        for (j, h) in homs.iter().enumerate() {
            let v = h.at(r, c);
            if !v.is_zero() {
                row[j] = v.clone();
                nonzero = true;
            }
        }
        if nonzero {
            rows.push(row);
        }
    }
    let graded: Vec<ExactMatrix> = if rows.is_empty() {
        homs
    } else {
        ExactMatrix::from_rows(rows)
            .kernel_basis()
            .into_iter()
            .map(|coef| {
                let mut t = ExactMatrix::zeros(dim, dim);
                for (j, c) in coef.iter().enumerate() {
                    if !c.is_zero() {
                        t = t.add(&homs[j].scale(c));
                    }
                }
                t
            })
            .collect()
    };
    Ok(invertible_combination(&graded, seed).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::left_ideal;
    use crate::qspace::{
        random_isotropic_subspace, standard_isotropic, IsotropicSpec, QuadraticSpace,
    };
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn setup(entries: &[i64]) -> (QuadraticSpace, CliffordAlgebra, EvenClifford) {
        let space = QuadraticSpace::diagonal_form(entries).unwrap();
        let cl = CliffordAlgebra::new(&space).unwrap();
        let even = cl.even_part();
        (space, cl, even)
    }

    #[test]
    fn ideal_restriction_dims() {
        // I^{W_max} of <1,1,0>: M_0 = I_0 has dimension 1.
        let (space, cl, even) = setup(&[1, 1, 0]);
        let w = standard_isotropic(&space, &IsotropicSpec::Max).unwrap();
        let ideal = left_ideal(&cl, &w).unwrap();
        let graded = GradedClModule::from_ideal(&cl, &ideal).unwrap();
        assert_eq!(graded.even_dim(), 1);
        let m0 = graded.even_restrict(&even).unwrap();
        assert_eq!(m0.dim(), 1);
    }

    #[test]
    fn induce_regular() {
        // Induction of Cl0(q) gives Cl(q).
        let (_, cl, even) = setup(&[1, 1, 0]);
        let n = LeftModule::regular(even.algebra());
        let induced = induce(&cl, &even, &n).unwrap();
        assert_eq!(induced.dim(), cl.dim());
        let regular = GradedClModule::regular(&cl).unwrap();
        assert!(is_graded_isomorphic(&induced, &regular, 0).unwrap());
    }

    #[test]
    fn round_trips() {
        let (space, cl, even) = setup(&[1, 1, 1, 1, 0]);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for trial in 0..5 {
            let dim = 1 + (trial % 3);
            let w = random_isotropic_subspace(&space, dim, &mut rng).unwrap();
            let ideal = left_ideal(&cl, &w).unwrap();
            let graded = GradedClModule::from_ideal(&cl, &ideal).unwrap();
            // induce(even_restrict(M)) ≅ M as graded modules.
            let m0 = graded.even_restrict(&even).unwrap();
            let back = induce(&cl, &even, &m0).unwrap();
            assert!(is_graded_isomorphic(&back, &graded, trial as u64).unwrap());
            // even_restrict(induce(N)) ≅ N as plain modules.
            let again = back.even_restrict(&even).unwrap();
            assert!(modules::is_isomorphic(&again, &m0, trial as u64).unwrap());
        }
    }

    #[test]
    fn grading_violation_is_detected() {
        let (_, cl, _) = setup(&[1, 0]);
        // The regular module with a wrong even block size.
        let reg = GradedClModule::regular(&cl).unwrap();
        let module = reg.module().clone();
        assert!(matches!(
            GradedClModule::new(&cl, module, 1),
            Err(Error::IncompatibleGrading(_))
        ));
    }
}
