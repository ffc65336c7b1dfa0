//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line, captured or not.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use frobcent::canon::{build_jordan_matrix, invariant_factors};
use frobcent::centralizer::{centralizer_basis, structured_centralizer_basis};
use frobcent::decide::{decide, gcd_criterion};
use frobcent::frobsys::{
    build_centralizer_system, conjugate_system, expand_separability, frobenius_algebra_oracle,
    full_matrix_system, jordan_block_system, probe_separability, separability_element,
    verify_system, CentralizerSystem, SearchSpace,
};
use frobcent::matrix::shift_matrix;
use frobcent::{FieldSpec, Mat};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Returns a one-line summary of what was checked; panics on failure.
type Check = fn() -> String;

fn companion_examples() -> String {
    let a = decide(&Mat::from_i64(q(), &[&[0, 0, 1], &[0, 1, 0], &[-1, 0, 2]])).unwrap();
    assert!(!a.frobenius, "(a) must not be Frobenius");
    assert!(!a.separable_frobenius);

    let b = decide(&Mat::from_i64(q(), &[&[0, 0, 1], &[0, 0, 0], &[-1, 0, 2]])).unwrap();
    assert!(b.frobenius, "(b) must be Frobenius");
    assert!(!b.separable_frobenius, "(b) must not be separable");

    let c = decide(&Mat::from_i64(q(), &[&[0, 1], &[-1, 0]])).unwrap();
    assert!(c.frobenius && c.separable_frobenius, "(c) must be separable Frobenius");
    assert!(!c.split_over_base, "(c) must not split over Q");
    "3 matrices over Q: not Frobenius / Frobenius only / separable, non-split".into()
}

fn nilpotent_block_witnesses() -> String {
    for n in 1..=8 {
        let s = jordan_block_system(q(), n).unwrap();
        assert!(verify_system(&s).passed, "n = {n} fails verification");
        for space in SearchSpace::ALL {
            let d = separability_element(&s, space).unwrap();
            if n == 1 {
                let d = d.unwrap_or_else(|| panic!("n = 1 needs a solution in {}", space.name()));
                assert!(expand_separability(&s, &d).is_identity());
            } else {
                assert!(d.is_none(), "n = {n}: unexpected solution in {}", space.name());
            }
        }
    }
    "n = 1..8 verified; separability only at n = 1, in all 3 spaces".into()
}

fn full_matrix_separability() -> String {
    let mut cases = 0;
    let mut warned = 0;
    for field in [q(), gf(2), gf(3), gf(5)] {
        for n in 1..=6 {
            let s = full_matrix_system(field, n).unwrap();
            let invertible = field.modulus().is_none_or(|p| n as u64 % p != 0);
            let probe = probe_separability(&s).unwrap();
            assert_eq!(probe.scalars.is_some(), invertible, "{field}, n = {n}: scalars");
            let d = probe
                .relative_centralizer
                .as_ref()
                .unwrap_or_else(|| panic!("{field}, n = {n}: relative centralizer unsolvable"));
            assert!(expand_separability(&s, d).is_identity(), "{field}, n = {n}: witness");
            let disagree = probe.scalars.is_some() != probe.relative_centralizer.is_some();
            assert_eq!(!probe.warnings.is_empty(), !probe.all_agree(), "{field}, n = {n}: warning");
            assert!(!disagree || !probe.warnings.is_empty());
            warned += usize::from(disagree);
            cases += 1;
        }
    }
    format!("{cases} (field, n) cases; {warned} scalar/relative disagreements, all warned")
}

fn criterion_equivalence() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut total = 0;
    let mut non_frobenius = 0;
    for field in [q(), gf(5)] {
        for spec in all_specs(field, &[0, 1, 2], 6) {
            let n = spec.dimension();
            let u = random_unimodular(field, n, &mut rng);
            let c = conjugate(&build_jordan_matrix(&spec), &u);
            let literal = spec.has_equal_sizes();
            let gcd = gcd_criterion(&invariant_factors(&c).unwrap()).unwrap();
            let report = decide(&c).unwrap();
            let oracle = frobenius_algebra_oracle(&centralizer_basis(&c).unwrap())
                .unwrap_or_else(|e| panic!("oracle failed on {spec:?}: {e}"));
            assert_eq!(gcd, literal, "gcd vs literal on {spec:?} over {field}");
            assert_eq!(report.frobenius, literal, "decide vs literal on {spec:?}");
            assert_eq!(oracle.is_frobenius(), literal, "oracle vs literal on {spec:?}");
            total += 1;
            non_frobenius += usize::from(!literal);
        }
    }
    assert!(total >= 200);
    format!("{total} conjugated specs over Q and GF(5) ({non_frobenius} non-Frobenius), full agreement")
}

fn structure_suite() -> String {
    let mut total = 0;
    for spec in all_specs(q(), &[0, 1, 2], 7) {
        let structured = structured_centralizer_basis(&spec).unwrap();
        let kron = centralizer_basis(&build_jordan_matrix(&spec)).unwrap();
        assert_eq!(structured.dim(), kron.dim(), "{spec:?}");
        assert!(structured.same_span(&kron), "{spec:?}");
        let groups = spec.groups();
        if groups.len() == 1 {
            let sizes = &groups[0].1;
            let formula: usize = sizes
                .iter()
                .flat_map(|a| sizes.iter().map(move |b| (*a).min(*b)))
                .sum();
            assert_eq!(kron.dim(), formula, "{spec:?}");
        }
        total += 1;
    }
    format!("{total} specs of total size <= 7: equal spans, min-sum dimension formula")
}

fn shift_law() -> String {
    let mut checked = 0;
    for l in 1..=6usize {
        for m in 1..=6 {
            for n in 1..=6usize {
                for k1 in 0..=7 {
                    for k2 in n.saturating_sub(m)..=7 {
                        let lhs = &shift_matrix(q(), l, m, k1) * &shift_matrix(q(), m, n, k2);
                        assert_eq!(lhs, shift_matrix(q(), l, n, k1 + k2), "({l},{m},{n},{k1},{k2})");
                        checked += 1;
                    }
                }
            }
        }
    }
    // k2 = 0 < n - m = 1
    let lhs = &shift_matrix(q(), 2, 1, 0) * &shift_matrix(q(), 1, 2, 0);
    assert_ne!(lhs, shift_matrix(q(), 2, 2, 0));
    format!("{checked} admissible products; counterexample (l,m,n,k1,k2) = (2,1,2,0,0)")
}

fn two_by_two_totality() -> String {
    let mut count = 0;
    for p in [3u64, 5] {
        let f = gf(p);
        let p = p as i64;
        for code in 0..p.pow(4) {
            let e = [code % p, code / p % p, code / p / p % p, code / p / p / p];
            let c = Mat::from_i64(f, &[&[e[0], e[1]], &[e[2], e[3]]]);
            assert!(decide(&c).unwrap().frobenius, "{c}");
            count += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..500 {
        let c = random_matrix(q(), 2, 50, &mut rng);
        assert!(decide(&c).unwrap().frobenius, "{c}");
        count += 1;
    }
    format!("{count} matrices (81 over GF(3), 625 over GF(5), 500 over Q), all Frobenius")
}

/// Every `(m, s)` with `m * s <= budget`, per eigenvalue, possibly absent.
fn equal_size_specs(field: FieldSpec, eigs: &[i64], budget: usize) -> Vec<frobcent::canon::JordanSpec> {
    let mut shapes: Vec<Vec<(i64, usize, usize)>> = vec![vec![]];
    for &e in eigs {
        let mut next = Vec::new();
        for shape in &shapes {
            let used: usize = shape.iter().map(|&(_, m, s)| m * s).sum();
            next.push(shape.clone());
            for s in 1..=budget - used {
                for m in 1..=(budget - used) / s {
                    let mut t = shape.clone();
                    t.push((e, m, s));
                    next.push(t);
                }
            }
        }
        shapes = next;
    }
    shapes
        .into_iter()
        .filter(|s| !s.is_empty())
        .map(|s| {
            let blocks: Vec<(i64, usize)> = s
                .iter()
                .flat_map(|&(e, m, size)| std::iter::repeat_n((e, size), m))
                .collect();
            frobcent::canon::JordanSpec::from_i64(field, &blocks).unwrap()
        })
        .collect()
}

fn construction_soundness() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let specs = equal_size_specs(q(), &[0, 1, 2], 8);
    let results: Vec<()> = {
        use rayon::prelude::*;
        let seeds: Vec<u64> = specs.iter().map(|_| rand::Rng::gen(&mut rng)).collect();
        specs
            .par_iter()
            .zip(seeds)
            .map(|(spec, seed)| {
                let CentralizerSystem::Built { system, .. } = build_centralizer_system(spec).unwrap() else {
                    panic!("{spec:?} has equal sizes");
                };
                assert!(verify_system(&system).passed, "{spec:?}");
                let kron = centralizer_basis(&build_jordan_matrix(spec)).unwrap();
                assert!(system.algebra().same_span(&kron), "{spec:?}: span");
                let mut local = ChaCha8Rng::seed_from_u64(seed);
                let u = random_unimodular(q(), spec.dimension(), &mut local);
                let moved = conjugate_system(&system, &u).unwrap();
                assert!(moved.is_verified(), "{spec:?}: conjugated");
            })
            .collect()
    };
    format!("{} equal-size specs of total size <= 8, built, matched and transported", results.len())
}

fn main() {
    let criteria: [(&str, Check, Duration); 8] = [
        ("1 companion-matrix examples", companion_examples, Duration::from_secs(1)),
        ("2 nilpotent Jordan block witnesses", nilpotent_block_witnesses, Duration::from_secs(5)),
        ("3 full matrix algebra separability", full_matrix_separability, Duration::from_secs(10)),
        ("4 criterion equivalence", criterion_equivalence, Duration::from_secs(120)),
        ("5 structured centralizer", structure_suite, Duration::from_secs(30)),
        ("6 shift multiplication law", shift_law, Duration::from_secs(5)),
        ("7 2x2 totality", two_by_two_totality, Duration::from_secs(60)),
        ("8 construction soundness", construction_soundness, Duration::from_secs(120)),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, check, budget) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check));
        let elapsed = start.elapsed();
        let timing = format!("{:.2}s, budget {}s", elapsed.as_secs_f64(), budget.as_secs());
        match result {
            Ok(summary) => println!("PASS criterion {name}: {summary} [{timing}]"),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("FAIL criterion {name}: {msg} [{timing}]");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
