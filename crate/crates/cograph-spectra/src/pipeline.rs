//! End-to-end run: recognition, twin sequence, matrix synthesis, and the
//! full verification battery, packaged as a [`RunReport`].

use std::time::Instant;

use crate::cotree::graph_to_cotree;
use crate::exact::{inner_product, ExactScalar};
use crate::graph::Graph;
use crate::report::RunReport;
use crate::synthesis::{
    scale_to_numeric, synthesize, twin_sequence, P4Witness, SynthesisError,
};
use crate::verify::{
    check_annihilator, check_diagonal, check_dspec_size, check_pattern, check_predicted,
    spectrum_report, SpectrumReport, Verdict, VerifyError,
};

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("not a cograph: vertices {} {} {} {} induce a P4", .0.quad.0, .0.quad.1, .0.quad.2, .0.quad.3)]
    NotACograph(P4Witness),
    #[error(transparent)]
    Synthesis(SynthesisError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

impl From<SynthesisError> for PipelineError {
    fn from(e: SynthesisError) -> Self {
        match e {
            SynthesisError::NotACograph(w) => PipelineError::NotACograph(w),
            other => PipelineError::Synthesis(other),
        }
    }
}

/// Synthesizes the matrix for `g` and runs every check. Verdict order:
/// pattern, diagonal, annihilator, predicted, dspec_size, eigenbasis.
pub fn certify(g: &Graph, input: &str, lambda: f64) -> Result<RunReport, PipelineError> {
    let started = Instant::now();
    let cotree = graph_to_cotree(g).map_err(PipelineError::NotACograph)?;
    let seq = twin_sequence(g)?;
    let s = synthesize(&seq)?;
    let numeric = scale_to_numeric(&s.matrix, lambda)?;

    let mut verdicts = Vec::new();
    verdicts.push(check_pattern(&s.matrix, g)?);
    verdicts.push(check_diagonal(&s.matrix));
    let annihilator = check_annihilator(&s.matrix);
    verdicts.push(annihilator.clone());

    let spectrum = if annihilator.passed {
        let sr = spectrum_report(&s.matrix, &annihilator, &numeric, lambda)?;
        verdicts.push(check_predicted(&sr.multiplicities, &s.predicted));
        verdicts.push(check_dspec_size(&sr.multiplicities));
        sr
    } else {
        SpectrumReport {
            multiplicities: [0; 4],
            numeric_eigenvalues: Vec::new(),
            max_deviation: f64::NAN,
        }
    };
    verdicts.push(check_eigenbasis(&s));

    Ok(RunReport {
        input: input.to_string(),
        lambda,
        cotree: cotree.to_string(),
        base: seq.base,
        steps: seq.steps,
        cases: s.cases,
        matrix: s.matrix,
        numeric,
        spectrum,
        verdicts,
        walltime_ms: started.elapsed().as_millis(),
    })
}

/// Exact eigen relation and orthonormality for the lifted basis.
fn check_eigenbasis(s: &crate::synthesis::Synthesis) -> Verdict {
    for (idx, pair) in s.basis.iter().enumerate() {
        let mx = s.matrix.matvec(&pair.vector);
        let mu = ExactScalar::from_int(pair.eigenvalue);
        for (i, (lhs, x)) in mx.iter().zip(&pair.vector).enumerate() {
            if !lhs.sub(&mu.mul(x)).is_zero() {
                return Verdict {
                    check: "eigenbasis".to_string(),
                    passed: false,
                    detail: format!(
                        "residual of vector {} nonzero at component {}",
                        idx + 1,
                        i + 1
                    ),
                };
            }
        }
    }
    for i in 0..s.basis.len() {
        for j in i..s.basis.len() {
            let ip = inner_product(&s.basis[i].vector, &s.basis[j].vector);
            let want = if i == j {
                ExactScalar::one()
            } else {
                ExactScalar::zero()
            };
            if ip != want {
                return Verdict {
                    check: "eigenbasis".to_string(),
                    passed: false,
                    detail: format!("inner product of vectors {} and {} is off", i + 1, j + 1),
                };
            }
        }
    }
    Verdict {
        check: "eigenbasis".to_string(),
        passed: true,
        detail: String::new(),
    }
}
