//! Randomized properties over small matrices and Jordan specs.

mod common;

use common::*;
use frobcent::canon::{build_jordan_matrix, invariant_factors, jordan_transform, JordanSpec};
use frobcent::centralizer::{centralizer_basis, structured_centralizer_basis};
use frobcent::frobsys::{
    build_centralizer_system, conjugate_system, direct_sum_systems, CentralizerSystem,
};
use frobcent::wire::{mat_from_json, mat_to_json, to_compact};
use frobcent::{decide, FieldSpec, Mat, Poly};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![Just(q()), Just(gf(2)), Just(gf(3)), Just(gf(7))]
}

fn matrix() -> impl Strategy<Value = Mat> {
    (field(), 1usize..=4).prop_flat_map(|(f, n)| {
        proptest::collection::vec(-3i64..=3, n * n).prop_map(move |v| {
            let rows: Vec<&[i64]> = v.chunks(n).collect();
            Mat::from_i64(f, &rows)
        })
    })
}

/// Specs with eigenvalues in {0, 1, 2} and at most five blocks of size <= 3.
fn spec() -> impl Strategy<Value = JordanSpec> {
    proptest::collection::vec((0i64..3, 1usize..=3), 1..=5)
        .prop_map(|blocks| JordanSpec::from_i64(q(), &blocks).unwrap())
}

/// Spec whose blocks share a size per eigenvalue.
fn equal_spec() -> impl Strategy<Value = JordanSpec> {
    proptest::collection::vec((1usize..=2, 1usize..=2), 1..=3).prop_map(|groups| {
        let blocks: Vec<(i64, usize)> = groups
            .iter()
            .enumerate()
            .flat_map(|(e, &(m, s))| std::iter::repeat_n((e as i64, s), m))
            .collect();
        JordanSpec::from_i64(q(), &blocks).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn invariant_factors_form_a_divisibility_chain(c in matrix()) {
        let f = invariant_factors(&c).unwrap();
        let chain = f.chain();
        for w in chain.windows(2) {
            prop_assert!(Poly::divides(&w[0], &w[1]).unwrap());
        }
        prop_assert_eq!(f.characteristic_polynomial().degree(), Some(c.rows()));
        prop_assert!(c.eval_poly(f.minimal_polynomial()).unwrap().is_zero());
        prop_assert!(chain.iter().all(Poly::is_monic));
    }

    #[test]
    fn report_invariants(c in matrix()) {
        let r = decide(&c).unwrap();
        prop_assert!(!r.separable_frobenius || r.frobenius);
        prop_assert_eq!(r.separable_frobenius, r.diagonalizable_over_closure);
        prop_assert_eq!(r.split_over_base, r.jordan.is_some());
        prop_assert_eq!(r.witness_system.is_some(), r.frobenius && r.split_over_base);
        if let Some(w) = &r.witness_system {
            prop_assert!(w.is_verified());
            prop_assert!(w.algebra().same_span(&centralizer_basis(&c).unwrap()));
        }
        if let Some(spec) = &r.jordan {
            prop_assert_eq!(spec.has_equal_sizes(), r.frobenius);
        }
        prop_assert_eq!(to_compact(&r.to_json()), to_compact(&decide(&c).unwrap().to_json()));
    }

    #[test]
    fn every_two_by_two_is_frobenius(f in field(), e in proptest::array::uniform4(-9i64..=9)) {
        let c = Mat::from_i64(f, &[&[e[0], e[1]], &[e[2], e[3]]]);
        prop_assert!(decide(&c).unwrap().frobenius);
    }

    #[test]
    fn matrix_json_round_trips(c in matrix()) {
        prop_assert_eq!(mat_from_json(&mat_to_json(&c), None).unwrap(), c);
    }

    #[test]
    fn jordan_transform_recovers_conjugated_spec(s in spec(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_unimodular(q(), s.dimension(), &mut rng);
        let c = conjugate(&build_jordan_matrix(&s), &u);
        let (t, found) = jordan_transform(&c).unwrap();
        prop_assert_eq!(found.canonical(), s.canonical());
        prop_assert_eq!(&(&t.inverse().unwrap() * &c) * &t, build_jordan_matrix(&found));
    }

    #[test]
    fn centralizer_dimension_is_min_sum(s in spec()) {
        let expected: usize = s
            .groups()
            .iter()
            .map(|(_, sizes)| sizes.iter().flat_map(|a| sizes.iter().map(move |b| (*a).min(*b))).sum::<usize>())
            .sum();
        let structured = structured_centralizer_basis(&s).unwrap();
        prop_assert_eq!(structured.dim(), expected);
        prop_assert!(structured.closure_defect().is_none());
        prop_assert!(structured.same_span(&centralizer_basis(&build_jordan_matrix(&s)).unwrap()));
    }

    #[test]
    fn built_systems_survive_sums_and_conjugation(a in equal_spec(), b in equal_spec(), seed in any::<u64>()) {
        let built = |s: &JordanSpec| match build_centralizer_system(s).unwrap() {
            CentralizerSystem::Built { system, .. } => system,
            CentralizerSystem::EqualSizeViolation { .. } => unreachable!(),
        };
        let sum = direct_sum_systems(&built(&a), &built(&b)).unwrap();
        prop_assert!(sum.is_verified());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_unimodular(q(), sum.ambient(), &mut rng);
        prop_assert!(conjugate_system(&sum, &u).unwrap().is_verified());
    }

    #[test]
    fn equal_size_violation_iff_unequal(s in spec()) {
        let violated = matches!(
            build_centralizer_system(&s).unwrap(),
            CentralizerSystem::EqualSizeViolation { .. }
        );
        prop_assert_eq!(violated, !s.has_equal_sizes());
    }
}
