//! Property tests for the exact kernel: linear algebra invariants, field
//! axioms on random scalars, and the geometric invariants of isotropic
//! subspaces and Clifford multiplication.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use spinorlab_core::clifford::CliffordAlgebra;
use spinorlab_core::linalg::{self, ExactMatrix};
use spinorlab_core::qspace::{self, QuadraticSpace};
use spinorlab_core::scalar::GaussianRational as Q;

fn scalar_strategy() -> impl Strategy<Value = Q> {
    (-4i64..=4, 1i64..=3, -4i64..=4, 1i64..=3)
        .prop_map(|(a, b, c, d)| Q::from_parts(a, b, c, d))
}

fn matrix_strategy(max_dim: usize) -> impl Strategy<Value = ExactMatrix> {
    (1..=max_dim, 1..=max_dim)
        .prop_flat_map(|(r, c)| {
            proptest::collection::vec(scalar_strategy(), r * c)
                .prop_map(move |data| {
                    ExactMatrix::from_fn(r, c, |i, j| data[i * c + j].clone())
                })
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms_hold_exactly(a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        if !a.is_zero() {
            let inv = a.inverse().unwrap();
            prop_assert!((&a * &inv).is_one());
        }
    }

    #[test]
    fn rref_is_idempotent(m in matrix_strategy(5)) {
        let (r1, p1) = m.rref();
        let (r2, p2) = r1.rref();
        prop_assert_eq!(&r1, &r2);
        prop_assert_eq!(p1, p2);
        // Pivots strictly increasing.
        let (_, pivots) = m.rref();
        prop_assert!(pivots.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn rank_equals_transpose_rank(m in matrix_strategy(5)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert_eq!(m.rank() + m.nullity(), m.cols());
    }

    #[test]
    fn solve_kernel_consistency(m in matrix_strategy(4), x0 in proptest::collection::vec(scalar_strategy(), 4)) {
        // Build a consistent system and check that every kernel shift solves it.
        let x0 = &x0[..m.cols()];
        let b = m.apply(x0);
        let x = m.solve(&b).unwrap().expect("consistent by construction");
        prop_assert_eq!(m.apply(&x), b.clone());
        for v in m.kernel_basis() {
            let shifted: Vec<Q> = x.iter().zip(&v).map(|(a, w)| a + w).collect();
            prop_assert_eq!(m.apply(&shifted), b.clone());
        }
    }
}

#[test]
fn isotropic_spans_vanish_on_random_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for entries in [
        vec![1, 1, 0],
        vec![1, 1, 1, 1, 0],
        vec![1, 1, 1, 1],
        vec![1, 1, 1, 0, 0],
        vec![1, 1, 1, 1, 1, 1, 0],
    ] {
        let q = QuadraticSpace::diagonal_form(&entries).unwrap();
        for dim in 0..=q.max_isotropic_dim() {
            let w = qspace::random_isotropic_subspace(&q, dim, &mut rng).unwrap();
            for _ in 0..20 {
                let mut v = linalg::zero_vector(q.dim());
                for b in w.basis() {
                    let c = Q::from_parts(
                        rand::Rng::gen_range(&mut rng, -3i64..=3),
                        1,
                        rand::Rng::gen_range(&mut rng, -3i64..=3),
                        1,
                    );
                    linalg::add_scaled(&mut v, b, &c);
                }
                assert!(q.q_value(&v).is_zero());
            }
        }
    }
}

#[test]
fn clifford_dimensions_and_grading_across_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 1..=6usize {
        for rank in 0..=n {
            let q = QuadraticSpace::standard(rank, n - rank);
            let cl = CliffordAlgebra::new(&q).unwrap();
            assert_eq!(cl.dim(), 1 << n);
            assert_eq!(cl.even_part().dim(), 1 << (n - 1));
            cl.algebra().check_grading().unwrap();
            cl.algebra().check_associativity(&mut rng, 200).unwrap();
        }
    }
    // N = 7: sampled associativity.
    let q7 = QuadraticSpace::standard(6, 1);
    let cl7 = CliffordAlgebra::new(&q7).unwrap();
    cl7.algebra().check_grading().unwrap();
    cl7.algebra().check_associativity(&mut rng, 1000).unwrap();
}

#[test]
fn max_isotropic_dim_shifts_under_hyperbolic_sum() {
    for n in 1..=5usize {
        for rank in 0..=n {
            let q = QuadraticSpace::standard(rank, n - rank);
            assert_eq!(
                q.add_hyperbolic_plane().max_isotropic_dim(),
                q.max_isotropic_dim() + 1
            );
        }
    }
}

#[test]
fn scalar_text_round_trip_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..200 {
        let v = Q::from_parts(
            rand::Rng::gen_range(&mut rng, -20i64..=20),
            rand::Rng::gen_range(&mut rng, 1i64..=12),
            rand::Rng::gen_range(&mut rng, -20i64..=20),
            rand::Rng::gen_range(&mut rng, 1i64..=12),
        );
        let s = v.to_string();
        assert_eq!(Q::parse(&s).unwrap(), v, "round trip through `{s}`");
    }
}
