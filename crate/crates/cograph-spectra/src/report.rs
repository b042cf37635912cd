//! The run report: a line-oriented document carrying the cotree, the twin
//! sequence, the exact matrix as (a, b, k) integer triples, the numeric
//! matrix at the chosen λ, the spectrum, and all verdicts. Exact entries
//! round-trip losslessly; the numeric section is for humans and plotting.

use num_bigint::BigInt;
use std::str::FromStr;

use crate::exact::{ExactMatrix, ExactScalar};
use crate::graph::TwinKind;
use crate::synthesis::{Case, PredictedSpectrum, TwinStep};
use crate::verify::{SpectrumReport, Verdict, EIGENVALUES};

pub const REPORT_HEADER: &str = "cograph-spectra report v1";

#[derive(Debug, Clone)]
pub struct RunReport {
    pub input: String,
    pub lambda: f64,
    pub cotree: String,
    pub base: usize,
    pub steps: Vec<TwinStep>,
    pub cases: Vec<Case>,
    pub matrix: ExactMatrix,
    pub numeric: Vec<Vec<f64>>,
    pub spectrum: SpectrumReport,
    pub verdicts: Vec<Verdict>,
    pub walltime_ms: u128,
}

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("missing report header")]
    MissingHeader,
    #[error("malformed report line {0}: {1:?}")]
    BadLine(usize, String),
    #[error("missing field {0}")]
    MissingField(&'static str),
}

impl RunReport {
    pub fn all_passed(&self) -> bool {
        !self.verdicts.is_empty() && self.verdicts.iter().all(|v| v.passed)
    }

    /// Predicted spectrum implied by the recorded case tally.
    pub fn predicted(&self) -> PredictedSpectrum {
        let mut p = PredictedSpectrum {
            mult_zero: 1,
            ..Default::default()
        };
        for c in &self.cases {
            match c {
                Case::C1 => p.mult_zero += 1,
                Case::C2 => p.mult_lambda += 1,
                Case::C3 => p.mult_two += 1,
                Case::C4 => p.mult_minus += 1,
            }
        }
        p
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let n = self.matrix.n();
        out.push_str(REPORT_HEADER);
        out.push('\n');
        out.push_str(&format!("input: {}\n", self.input));
        out.push_str(&format!("lambda: {:.16e}\n", self.lambda));
        out.push_str(&format!("cotree: {}\n", self.cotree));
        out.push_str(&format!("base: {}\n", self.base));
        for (step, case) in self.steps.iter().zip(&self.cases) {
            let kind = match step.kind {
                TwinKind::FalseTwin => "false",
                TwinKind::TrueTwin => "true",
            };
            out.push_str(&format!(
                "step: added={} twin_of={} kind={} case={}\n",
                step.added,
                step.twin_of,
                kind,
                case.id()
            ));
        }
        out.push_str(&format!("matrix: n={n}\n"));
        for i in 0..n {
            for j in i..n {
                let (a, b, k) = self.matrix.get(i, j).parts();
                out.push_str(&format!("exact: {} {} {a} {b} {k}\n", i + 1, j + 1));
            }
        }
        for i in 0..n {
            for j in i..n {
                out.push_str(&format!(
                    "numeric: {} {} {:.16e}\n",
                    i + 1,
                    j + 1,
                    self.numeric[i][j]
                ));
            }
        }
        let mults = self
            .spectrum
            .multiplicities
            .iter()
            .zip(EIGENVALUES)
            .map(|(m, mu)| format!("{mu}:{m}"))
            .collect::<Vec<_>>()
            .join(" ");
        out.push_str(&format!("spectrum: {mults}\n"));
        let eigs = self
            .spectrum
            .numeric_eigenvalues
            .iter()
            .map(|e| format!("{e:.16e}"))
            .collect::<Vec<_>>()
            .join(" ");
        out.push_str(&format!("numeric_eigenvalues: {eigs}\n"));
        out.push_str(&format!(
            "max_deviation: {:.16e}\n",
            self.spectrum.max_deviation
        ));
        for v in &self.verdicts {
            if v.passed {
                out.push_str(&format!("verdict: {} pass\n", v.check));
            } else {
                out.push_str(&format!("verdict: {} FAIL {}\n", v.check, v.detail));
            }
        }
        out.push_str(&format!("walltime_ms: {}\n", self.walltime_ms));
        out
    }

    pub fn parse(text: &str) -> Result<RunReport, ReportError> {
        let mut lines = text.lines().enumerate();
        let Some((_, header)) = lines.next() else {
            return Err(ReportError::MissingHeader);
        };
        if header != REPORT_HEADER {
            return Err(ReportError::MissingHeader);
        }

        let mut input = None;
        let mut lambda = None;
        let mut cotree = None;
        let mut base = None;
        let mut steps = Vec::new();
        let mut cases = Vec::new();
        let mut n = None;
        let mut exact: Vec<(usize, usize, ExactScalar)> = Vec::new();
        let mut numeric: Vec<(usize, usize, f64)> = Vec::new();
        let mut multiplicities = None;
        let mut numeric_eigenvalues = None;
        let mut max_deviation = None;
        let mut verdicts = Vec::new();
        let mut walltime_ms = None;

        for (lineno, line) in lines {
            let bad = || ReportError::BadLine(lineno + 1, line.to_string());
            let Some((key, rest)) = line.split_once(':') else {
                return Err(bad());
            };
            let rest = rest.trim();
            match key {
                "input" => input = Some(rest.to_string()),
                "lambda" => lambda = Some(rest.parse().map_err(|_| bad())?),
                "cotree" => cotree = Some(rest.to_string()),
                "base" => base = Some(rest.parse().map_err(|_| bad())?),
                "step" => {
                    let mut added = None;
                    let mut twin_of = None;
                    let mut kind = None;
                    let mut case = None;
                    for field in rest.split_whitespace() {
                        let (k, v) = field.split_once('=').ok_or_else(bad)?;
                        match k {
                            "added" => added = Some(v.parse().map_err(|_| bad())?),
                            "twin_of" => twin_of = Some(v.parse().map_err(|_| bad())?),
                            "kind" => {
                                kind = Some(match v {
                                    "false" => TwinKind::FalseTwin,
                                    "true" => TwinKind::TrueTwin,
                                    _ => return Err(bad()),
                                })
                            }
                            "case" => {
                                case = Some(match v {
                                    "1" => Case::C1,
                                    "2" => Case::C2,
                                    "3" => Case::C3,
                                    "4" => Case::C4,
                                    _ => return Err(bad()),
                                })
                            }
                            _ => return Err(bad()),
                        }
                    }
                    steps.push(TwinStep {
                        added: added.ok_or_else(bad)?,
                        twin_of: twin_of.ok_or_else(bad)?,
                        kind: kind.ok_or_else(bad)?,
                    });
                    cases.push(case.ok_or_else(bad)?);
                }
                "matrix" => {
                    let v = rest.strip_prefix("n=").ok_or_else(bad)?;
                    n = Some(v.parse::<usize>().map_err(|_| bad())?);
                }
                "exact" => {
                    let toks: Vec<&str> = rest.split_whitespace().collect();
                    let [i, j, a, b, k] = toks[..] else {
                        return Err(bad());
                    };
                    let i: usize = i.parse().map_err(|_| bad())?;
                    let j: usize = j.parse().map_err(|_| bad())?;
                    let a = BigInt::from_str(a).map_err(|_| bad())?;
                    let b = BigInt::from_str(b).map_err(|_| bad())?;
                    let k: u32 = k.parse().map_err(|_| bad())?;
                    exact.push((i, j, ExactScalar::new(a, b, k)));
                }
                "numeric" => {
                    let toks: Vec<&str> = rest.split_whitespace().collect();
                    let [i, j, v] = toks[..] else {
                        return Err(bad());
                    };
                    numeric.push((
                        i.parse().map_err(|_| bad())?,
                        j.parse().map_err(|_| bad())?,
                        v.parse().map_err(|_| bad())?,
                    ));
                }
                "spectrum" => {
                    let mut mults = [0usize; 4];
                    for part in rest.split_whitespace() {
                        let (mu, m) = part.split_once(':').ok_or_else(bad)?;
                        let mu: i64 = mu.parse().map_err(|_| bad())?;
                        let idx = EIGENVALUES
                            .iter()
                            .position(|&e| e == mu)
                            .ok_or_else(bad)?;
                        mults[idx] = m.parse().map_err(|_| bad())?;
                    }
                    multiplicities = Some(mults);
                }
                "numeric_eigenvalues" => {
                    let eigs: Result<Vec<f64>, _> =
                        rest.split_whitespace().map(|t| t.parse()).collect();
                    numeric_eigenvalues = Some(eigs.map_err(|_| bad())?);
                }
                "max_deviation" => max_deviation = Some(rest.parse().map_err(|_| bad())?),
                "verdict" => {
                    let (check, status) = rest.split_once(' ').ok_or_else(bad)?;
                    let (passed, detail) = if status == "pass" {
                        (true, String::new())
                    } else if let Some(d) = status.strip_prefix("FAIL") {
                        (false, d.trim().to_string())
                    } else {
                        return Err(bad());
                    };
                    verdicts.push(Verdict {
                        check: check.to_string(),
                        passed,
                        detail,
                    });
                }
                "walltime_ms" => walltime_ms = Some(rest.parse().map_err(|_| bad())?),
                _ => return Err(bad()),
            }
        }

        let n = n.ok_or(ReportError::MissingField("matrix"))?;
        let mut matrix = ExactMatrix::zero(n);
        for (i, j, v) in exact {
            matrix.set_sym(i - 1, j - 1, v);
        }
        let mut num = vec![vec![0.0; n]; n];
        for (i, j, v) in numeric {
            num[i - 1][j - 1] = v;
            num[j - 1][i - 1] = v;
        }
        Ok(RunReport {
            input: input.ok_or(ReportError::MissingField("input"))?,
            lambda: lambda.ok_or(ReportError::MissingField("lambda"))?,
            cotree: cotree.ok_or(ReportError::MissingField("cotree"))?,
            base: base.ok_or(ReportError::MissingField("base"))?,
            steps,
            cases,
            matrix,
            numeric: num,
            spectrum: SpectrumReport {
                multiplicities: multiplicities.ok_or(ReportError::MissingField("spectrum"))?,
                numeric_eigenvalues: numeric_eigenvalues
                    .ok_or(ReportError::MissingField("numeric_eigenvalues"))?,
                max_deviation: max_deviation.ok_or(ReportError::MissingField("max_deviation"))?,
            },
            verdicts,
            walltime_ms: walltime_ms.ok_or(ReportError::MissingField("walltime_ms"))?,
        })
    }
}
