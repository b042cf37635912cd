//! Certification of synthesized matrices: sparsity pattern, diagonal
//! constraint, annihilating polynomial, exact eigenvalue multiplicities,
//! and a floating-point Jacobi cross-check.
//!
//! The spectral claim DSpec(M) ⊆ {−λ, 0, λ, 2λ} is certified exactly by
//! checking that (M + I)·M·(M − I)·(M − 2I) is the zero matrix in λ-units:
//! for a symmetric matrix, a squarefree polynomial annihilates it exactly
//! when the spectrum lies in the polynomial's root set.

use crate::exact::{ExactMatrix, ExactScalar};
use crate::graph::Graph;
use crate::synthesis::PredictedSpectrum;

pub const EIGENVALUES: [i64; 4] = [-1, 0, 1, 2];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

impl Verdict {
    fn pass(check: &str) -> Self {
        Verdict {
            check: check.to_string(),
            passed: true,
            detail: String::new(),
        }
    }

    fn fail(check: &str, detail: String) -> Self {
        Verdict {
            check: check.to_string(),
            passed: false,
            detail,
        }
    }
}

/// Exact multiplicities over {−λ, 0, λ, 2λ} plus the numeric cross-check.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    /// Multiplicities of −λ, 0, λ, 2λ in that order.
    pub multiplicities: [usize; 4],
    pub numeric_eigenvalues: Vec<f64>,
    /// Max numeric deviation from the nearest element of the eigenvalue set.
    pub max_deviation: f64,
}

impl SpectrumReport {
    pub fn distinct_count(&self) -> usize {
        self.multiplicities.iter().filter(|&&m| m > 0).count()
    }

    pub fn mult(&self, mu: i64) -> usize {
        EIGENVALUES
            .iter()
            .position(|&e| e == mu)
            .map_or(0, |i| self.multiplicities[i])
    }
}

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error("dimension mismatch: matrix is {matrix} but graph has {graph} vertices")]
    DimensionMismatch { matrix: usize, graph: usize },
    #[error("annihilator check has not passed; exact multiplicities are undefined")]
    AnnihilatorNotVerified,
    #[error("Jacobi iteration did not converge after {0} sweeps")]
    NonConvergence(usize),
    #[error("input matrix is not symmetric within tolerance")]
    NotSymmetric,
}

/// Passes iff the exact nonzero off-diagonal support equals the edge set.
pub fn check_pattern(m: &ExactMatrix, g: &Graph) -> Result<Verdict, VerifyError> {
    if m.n() != g.n() {
        return Err(VerifyError::DimensionMismatch {
            matrix: m.n(),
            graph: g.n(),
        });
    }
    for u in 1..=g.n() {
        for v in u + 1..=g.n() {
            let nonzero = !m.get(u - 1, v - 1).is_zero();
            if nonzero != g.has_edge(u, v) {
                return Ok(Verdict::fail(
                    "pattern",
                    format!(
                        "entry ({u},{v}) is {} but edge is {}",
                        if nonzero { "nonzero" } else { "zero" },
                        if g.has_edge(u, v) { "present" } else { "absent" }
                    ),
                ));
            }
        }
    }
    Ok(Verdict::pass("pattern"))
}

/// Passes iff every diagonal entry is exactly 0 or λ.
pub fn check_diagonal(m: &ExactMatrix) -> Verdict {
    for i in 0..m.n() {
        let d = m.get(i, i);
        if !d.is_zero() && *d != ExactScalar::one() {
            return Verdict::fail(
                "diagonal",
                format!("diagonal entry {} is outside {{0, λ}}", i + 1),
            );
        }
    }
    Verdict::pass("diagonal")
}

/// Passes iff (M + I)·M·(M − I)·(M − 2I) = 0 exactly.
pub fn check_annihilator(m: &ExactMatrix) -> Verdict {
    let mut prod = ExactMatrix::identity(m.n());
    for mu in EIGENVALUES {
        prod = prod.matmul(&m.sub_scalar_diag(mu));
    }
    if prod.is_zero() {
        Verdict::pass("annihilator")
    } else {
        let loc = (0..m.n())
            .flat_map(|i| (0..m.n()).map(move |j| (i, j)))
            .find(|&(i, j)| !prod.get(i, j).is_zero())
            .unwrap();
        Verdict::fail(
            "annihilator",
            format!(
                "(M+I)M(M−I)(M−2I) is nonzero at ({},{})",
                loc.0 + 1,
                loc.1 + 1
            ),
        )
    }
}

/// Exact multiplicity of each candidate eigenvalue as n − rank(M − μI).
/// Valid only once the annihilator check has passed.
pub fn exact_multiplicities(
    m: &ExactMatrix,
    annihilator: &Verdict,
) -> Result<[usize; 4], VerifyError> {
    if !annihilator.passed {
        return Err(VerifyError::AnnihilatorNotVerified);
    }
    let mut mults = [0usize; 4];
    for (i, &mu) in EIGENVALUES.iter().enumerate() {
        mults[i] = m.n() - m.sub_scalar_diag(mu).rank();
    }
    debug_assert_eq!(mults.iter().sum::<usize>(), m.n());
    Ok(mults)
}

/// Passes iff exact multiplicities agree with the case-tally prediction.
pub fn check_predicted(mults: &[usize; 4], p: &PredictedSpectrum) -> Verdict {
    for (i, &mu) in EIGENVALUES.iter().enumerate() {
        if mults[i] != p.mult(mu) {
            return Verdict::fail(
                "predicted",
                format!(
                    "multiplicity of {mu}λ: exact {} vs predicted {}",
                    mults[i],
                    p.mult(mu)
                ),
            );
        }
    }
    Verdict::pass("predicted")
}

/// Passes iff at most four candidate eigenvalues have nonzero multiplicity.
pub fn check_dspec_size(mults: &[usize; 4]) -> Verdict {
    let distinct = mults.iter().filter(|&&m| m > 0).count();
    if distinct <= 4 {
        Verdict::pass("dspec_size")
    } else {
        Verdict::fail("dspec_size", format!("{distinct} distinct eigenvalues"))
    }
}

const JACOBI_MAX_SWEEPS: usize = 100;
const JACOBI_REL_TOL: f64 = 1e-12;

/// Eigenvalues of a dense real symmetric matrix by cyclic Jacobi rotations,
/// sorted ascending. Sweeps until the off-diagonal Frobenius norm drops
/// below 1e−12 of the matrix norm, at most 100 sweeps.
pub fn numeric_eigenvalues(m: &[Vec<f64>]) -> Result<Vec<f64>, VerifyError> {
    let n = m.len();
    let norm: f64 = m
        .iter()
        .flat_map(|row| row.iter().map(|x| x * x))
        .sum::<f64>()
        .sqrt();
    for i in 0..n {
        for j in 0..n {
            if (m[i][j] - m[j][i]).abs() > 1e-12 * norm.max(1.0) {
                return Err(VerifyError::NotSymmetric);
            }
        }
    }
    let mut a: Vec<Vec<f64>> = m.to_vec();
    if n <= 1 {
        return Ok(a.first().map(|r| r[0]).into_iter().collect());
    }
    let threshold = JACOBI_REL_TOL * norm;
    for _sweep in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum::<f64>()
            .sqrt();
        if off < threshold || off == 0.0 {
            let mut eigs: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
            eigs.sort_by(|x, y| x.partial_cmp(y).unwrap());
            return Ok(eigs);
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                // classic Jacobi rotation annihilating a[p][q]
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    Err(VerifyError::NonConvergence(JACOBI_MAX_SWEEPS))
}

/// Builds the full spectrum report: exact multiplicities plus the numeric
/// eigenvalues of the matrix scaled by `lambda` and their worst deviation
/// from the exact multiset.
pub fn spectrum_report(
    m: &ExactMatrix,
    annihilator: &Verdict,
    numeric: &[Vec<f64>],
    lambda: f64,
) -> Result<SpectrumReport, VerifyError> {
    let multiplicities = exact_multiplicities(m, annihilator)?;
    let numeric_eigenvalues = numeric_eigenvalues(numeric)?;
    let mut exact: Vec<f64> = EIGENVALUES
        .iter()
        .zip(&multiplicities)
        .flat_map(|(&mu, &mult)| std::iter::repeat(mu as f64 * lambda).take(mult))
        .collect();
    exact.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let max_deviation = numeric_eigenvalues
        .iter()
        .zip(&exact)
        .map(|(n, e)| (n - e).abs())
        .fold(0.0f64, f64::max);
    Ok(SpectrumReport {
        multiplicities,
        numeric_eigenvalues,
        max_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::synthesis::{synthesize, twin_sequence};

    fn k2_matrix() -> ExactMatrix {
        let g = Graph::from_edges(2, &[(1, 2)]);
        synthesize(&twin_sequence(&g).unwrap()).unwrap().matrix
    }

    #[test]
    fn pattern_pass_and_fail() {
        let m = k2_matrix();
        let k2 = Graph::from_edges(2, &[(1, 2)]);
        assert!(check_pattern(&m, &k2).unwrap().passed);
        let e2 = Graph::empty(2);
        let v = check_pattern(&m, &e2).unwrap();
        assert!(!v.passed);
        assert!(v.detail.contains("(1,2)"));
    }

    #[test]
    fn pattern_dimension_mismatch() {
        let m = k2_matrix();
        let g3 = Graph::empty(3);
        assert!(matches!(
            check_pattern(&m, &g3),
            Err(VerifyError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn annihilator_on_zero_and_k2() {
        assert!(check_annihilator(&ExactMatrix::zero(1)).passed);
        assert!(check_annihilator(&k2_matrix()).passed);
    }

    #[test]
    fn annihilator_rejects_perturbed_k2() {
        let mut m = k2_matrix();
        m.set_sym(0, 1, ExactScalar::from_int(-2));
        assert!(!check_annihilator(&m).passed);
    }

    #[test]
    fn multiplicities_of_k2() {
        let m = k2_matrix();
        let ann = check_annihilator(&m);
        let mults = exact_multiplicities(&m, &ann).unwrap();
        // {-λ: 0, 0: 1, λ: 0, 2λ: 1}
        assert_eq!(mults, [0, 1, 0, 1]);
    }

    #[test]
    fn multiplicities_of_p3_and_c4() {
        let p3 = Graph::from_edges(3, &[(1, 2), (2, 3)]);
        let s = synthesize(&twin_sequence(&p3).unwrap()).unwrap();
        let ann = check_annihilator(&s.matrix);
        let mults = exact_multiplicities(&s.matrix, &ann).unwrap();
        assert_eq!(mults, [0, 1, 1, 1]);
        assert!(check_predicted(&mults, &s.predicted).passed);

        let c4 = Graph::from_edges(4, &[(1, 3), (1, 4), (2, 3), (2, 4)]);
        let s = synthesize(&twin_sequence(&c4).unwrap()).unwrap();
        let ann = check_annihilator(&s.matrix);
        let mults = exact_multiplicities(&s.matrix, &ann).unwrap();
        assert_eq!(mults, [0, 1, 2, 1]);
        assert_eq!(check_dspec_size(&mults), Verdict::pass("dspec_size"));
    }

    #[test]
    fn multiplicities_require_annihilator() {
        let m = k2_matrix();
        let bad = Verdict::fail("annihilator", "test".into());
        assert!(matches!(
            exact_multiplicities(&m, &bad),
            Err(VerifyError::AnnihilatorNotVerified)
        ));
    }

    #[test]
    fn predicted_mismatch_reported() {
        let p = PredictedSpectrum {
            mult_minus: 0,
            mult_zero: 2,
            mult_lambda: 0,
            mult_two: 0,
        };
        let v = check_predicted(&[0, 1, 0, 1], &p);
        assert!(!v.passed);
        assert!(v.detail.contains("multiplicity"));
    }

    #[test]
    fn jacobi_small_cases() {
        let eigs = numeric_eigenvalues(&[vec![1.0, -1.0], vec![-1.0, 1.0]]).unwrap();
        assert!((eigs[0] - 0.0).abs() < 1e-10);
        assert!((eigs[1] - 2.0).abs() < 1e-10);

        let zeros = numeric_eigenvalues(&vec![vec![0.0; 4]; 4]).unwrap();
        assert!(zeros.iter().all(|&e| e == 0.0));

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let p3 = vec![
            vec![1.0, -s, -s],
            vec![-s, 1.0, 0.0],
            vec![-s, 0.0, 1.0],
        ];
        let eigs = numeric_eigenvalues(&p3).unwrap();
        for (got, want) in eigs.iter().zip([0.0, 1.0, 2.0]) {
            assert!((got - want).abs() < 1e-9);
        }
    }

    #[test]
    fn jacobi_rejects_asymmetric() {
        let m = vec![vec![0.0, 1.0], vec![2.0, 0.0]];
        assert!(matches!(
            numeric_eigenvalues(&m),
            Err(VerifyError::NotSymmetric)
        ));
    }

    #[test]
    fn rank_invariant_under_row_shuffle() {
        let c4 = Graph::from_edges(4, &[(1, 3), (1, 4), (2, 3), (2, 4)]);
        let s = synthesize(&twin_sequence(&c4).unwrap()).unwrap();
        let m = s.matrix.sub_scalar_diag(1);
        let base_rank = m.rank();
        // symmetric permutation of rows and columns preserves rank
        for perm in [[1usize, 0, 2, 3], [3, 2, 1, 0], [2, 0, 3, 1]] {
            let mut p = ExactMatrix::zero(4);
            for i in 0..4 {
                for j in 0..4 {
                    *p.get_mut(i, j) = m.get(perm[i], perm[j]).clone();
                }
            }
            assert_eq!(p.rank(), base_rank);
        }
    }
}
