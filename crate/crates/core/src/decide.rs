//! Classification of `S_n(c, F)/F` with witnesses and cross-checks.
//!
//! The verdicts come from the invariant factors `d_1 | ... | d_k` of `c`:
//!
//! * Frobenius iff `gcd(d_i, d_k / d_i) = 1` for every `i < k`, i.e. every
//!   irreducible factor has the same exponent in each `d_i` it divides;
//! * separable Frobenius iff `d_k` is squarefree.
//!
//! When the spectrum splits over the base field the literal Jordan block
//! conditions are checked as well, and for Frobenius cases an explicit
//! system is built, verified and probed for separability elements.

use rayon::prelude::*;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::canon::{invariant_factors, jordan_structure, jordan_transform, InvariantFactors, JordanSpec, JordanStructure};
use crate::error::Result;
use crate::field::FieldSpec;
use crate::frobsys::{
    build_centralizer_system, conjugate_system, probe_separability, CentralizerSystem, FrobeniusSystem,
    SeparabilityProbe,
};
use crate::matrix::Mat;
use crate::poly::Poly;
use crate::wire;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputDigest {
    pub size: usize,
    pub field: FieldSpec,
    /// SHA-256 of the compact matrix JSON, lowercase hex.
    pub sha256: String,
}

impl InputDigest {
    pub fn of(c: &Mat) -> Self {
        let canonical = wire::to_compact(&wire::mat_to_json(c));
        let hash = Sha256::digest(canonical.as_bytes());
        InputDigest {
            size: c.rows(),
            field: c.field(),
            sha256: hash.iter().map(|b| format!("{b:02x}")).collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct DecisionReport {
    pub input_digest: InputDigest,
    pub invariant_factors: InvariantFactors,
    pub frobenius: bool,
    pub separable_frobenius: bool,
    pub diagonalizable_over_closure: bool,
    pub split_over_base: bool,
    pub jordan: Option<JordanSpec>,
    pub witness_system: Option<FrobeniusSystem>,
    pub separability_probe: Option<SeparabilityProbe>,
    pub warnings: Vec<String>,
}

impl DecisionReport {
    pub fn to_json(&self) -> Value {
        json!({
            "input_digest": {
                "size": self.input_digest.size,
                "field": wire::field_to_json(self.input_digest.field),
                "sha256": self.input_digest.sha256,
            },
            "invariant_factors": wire::invariant_factors_to_json(&self.invariant_factors),
            "frobenius": self.frobenius,
            "separable_frobenius": self.separable_frobenius,
            "diagonalizable_over_closure": self.diagonalizable_over_closure,
            "split_over_base": self.split_over_base,
            "jordan": self.jordan.as_ref().map(wire::spec_to_json),
            "witness_system": self.witness_system.as_ref().map(wire::system_to_json),
            "separability_probe": self.separability_probe.as_ref().map(wire::probe_to_json),
            "warnings": self.warnings,
        })
    }
}

/// `gcd(d_i, d_k / d_i) = 1` for every factor before the last.
pub fn gcd_criterion(f: &InvariantFactors) -> Result<bool> {
    let chain = f.chain();
    let top = f.minimal_polynomial();
    for d in &chain[..chain.len() - 1] {
        if !top.exact_div(d)?.gcd(d)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `gcd(d_k, d_k') = 1`.
pub fn squarefree_criterion(f: &InvariantFactors) -> Result<bool> {
    let top: &Poly = f.minimal_polynomial();
    Ok(top.gcd(&top.derivative())?.is_one())
}

pub fn decide(c: &Mat) -> Result<DecisionReport> {
    let n = c.ensure_square()?;
    let factors = invariant_factors(c)?;
    let frobenius = gcd_criterion(&factors)?;
    let separable = squarefree_criterion(&factors)?;
    let mut warnings = Vec::new();

    if let Some(p) = c.field().modulus() {
        if p as usize <= n {
            warnings.push(format!(
                "characteristic caveat: GF({p}) with p <= n = {n}, so some of 1..n are not units; \
                 verdicts follow the invariant-factor criteria without that hypothesis"
            ));
        }
    }

    let mut report = DecisionReport {
        input_digest: InputDigest::of(c),
        invariant_factors: factors,
        frobenius,
        separable_frobenius: separable,
        diagonalizable_over_closure: separable,
        split_over_base: false,
        jordan: None,
        witness_system: None,
        separability_probe: None,
        warnings,
    };

    if let JordanStructure::FullySplit(_) = jordan_structure(c)? {
        report.split_over_base = true;
        let (u, spec) = jordan_transform(c)?;
        if spec.has_equal_sizes() != frobenius {
            report.warnings.push(format!(
                "criterion disagreement: gcd criterion says frobenius = {frobenius}, \
                 Jordan block sizes say {}",
                spec.has_equal_sizes()
            ));
        }
        if spec.all_sizes_one() != separable {
            report.warnings.push(format!(
                "criterion disagreement: squarefree criterion says separable = {separable}, \
                 Jordan block sizes say {}",
                spec.all_sizes_one()
            ));
        }
        if frobenius {
            attach_witness(&mut report, &spec, &u)?;
        }
        report.jordan = Some(spec);
    }
    Ok(report)
}

/// Builds the system for the Jordan form, moves it to `S(c)` and probes it.
fn attach_witness(report: &mut DecisionReport, spec: &JordanSpec, u: &Mat) -> Result<()> {
    let CentralizerSystem::Built { system, .. } = build_centralizer_system(spec)? else {
        return Ok(());
    };
    // u^{-1} c u = J, so S(c) = u S(J) u^{-1}
    let witness = conjugate_system(&system, &u.inverse()?)?;
    if !witness.is_verified() {
        report
            .warnings
            .push("witness system failed verification and was dropped".into());
        return Ok(());
    }
    let probe = probe_separability(&witness)?;
    report.warnings.extend(probe.warnings.iter().cloned());
    report.witness_system = Some(witness);
    report.separability_probe = Some(probe);
    Ok(())
}

/// Independent [`decide`] per input, evaluated in parallel, in input order.
pub fn decide_batch(inputs: &[Mat]) -> Vec<Result<DecisionReport>> {
    inputs.par_iter().map(decide).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centralizer::centralizer_basis;
    use crate::frobsys::verify_system;
    use crate::matrix::jordan_block;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    #[test]
    fn companion_example_matrices() {
        let a = decide(&Mat::from_i64(q(), &[&[0, 0, 1], &[0, 1, 0], &[-1, 0, 2]])).unwrap();
        assert!(!a.frobenius && !a.separable_frobenius);
        assert!(a.witness_system.is_none());

        let b = decide(&Mat::from_i64(q(), &[&[0, 0, 1], &[0, 0, 0], &[-1, 0, 2]])).unwrap();
        assert!(b.frobenius && !b.separable_frobenius && b.split_over_base);
        let w = b.witness_system.as_ref().unwrap();
        assert!(verify_system(w).passed);
        let c = Mat::from_i64(q(), &[&[0, 0, 1], &[0, 0, 0], &[-1, 0, 2]]);
        assert!(w.algebra().same_span(&centralizer_basis(&c).unwrap()));

        let c = decide(&Mat::from_i64(q(), &[&[0, 1], &[-1, 0]])).unwrap();
        assert!(c.frobenius && c.separable_frobenius && !c.split_over_base);
        assert!(c.jordan.is_none() && c.witness_system.is_none());
        assert!(c.warnings.is_empty());
    }

    #[test]
    fn batch_preserves_order_and_isolates_failures() {
        assert!(decide_batch(&[]).is_empty());
        let out = decide_batch(&[
            Mat::identity(q(), 2),
            Mat::zeros(q(), 2, 3),
            jordan_block(2, &q().zero()),
        ]);
        let first = out[0].as_ref().unwrap();
        assert!(first.frobenius && first.separable_frobenius);
        assert!(out[1].is_err());
        let third = out[2].as_ref().unwrap();
        assert!(third.frobenius && !third.separable_frobenius);
    }

    #[test]
    fn small_characteristic_warnings() {
        let f = FieldSpec::prime(2).unwrap();
        let r = decide(&Mat::zeros(f, 2, 2)).unwrap();
        assert!(r.separable_frobenius);
        assert!(r.warnings.iter().any(|w| w.starts_with("characteristic caveat")));
        assert!(r.warnings.iter().any(|w| w.starts_with("separability depends")));
        let probe = r.separability_probe.unwrap();
        assert!(probe.scalars.is_none() && probe.relative_centralizer.is_some());
    }

    #[test]
    fn report_json_key_order() {
        let r = decide(&Mat::identity(q(), 1)).unwrap().to_json();
        let keys: Vec<&str> = r.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(
            keys,
            [
                "input_digest",
                "invariant_factors",
                "frobenius",
                "separable_frobenius",
                "diagonalizable_over_closure",
                "split_over_base",
                "jordan",
                "witness_system",
                "separability_probe",
                "warnings"
            ]
        );
        assert_eq!(r["input_digest"]["sha256"].as_str().unwrap().len(), 64);
    }
}
