use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cograph_spectra::cotree::{cotree_to_graph, graph_to_cotree, parse_cotree, random_cotree};
use cograph_spectra::formats::{parse_edgelist, parse_graph6};
use cograph_spectra::graph::Graph;
use cograph_spectra::pipeline::{certify, PipelineError};
use cograph_spectra::report::RunReport;
use cograph_spectra::synthesis::scale_to_numeric;
use cograph_spectra::verify::{
    check_annihilator, check_diagonal, check_dspec_size, check_pattern, exact_multiplicities,
    numeric_eigenvalues,
};

const EXIT_OK: u8 = 0;
const EXIT_VERIFY_FAIL: u8 = 1;
const EXIT_NOT_COGRAPH: u8 = 2;
const EXIT_INPUT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "cograph-spectra", version, about = "Four-eigenvalue matrices for cographs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct InputArgs {
    /// graph6 string (single-byte size form, n <= 62)
    #[arg(long)]
    g6: Option<String>,
    /// path to an edge-list file, or "-" for stdin
    #[arg(long)]
    edges: Option<String>,
    /// cotree DSL string, e.g. "J(1,U(2,3))"
    #[arg(long)]
    cotree: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the normalized cotree of a cograph, or an induced-P4 witness
    Recognize {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Synthesize the matrix, run all checks, and write a run report
    Synth {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        /// report destination; stdout when omitted
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Re-verify a previously written run report against its graph
    Check {
        /// path to a run report
        report: std::path::PathBuf,
    },
    /// Print the numeric eigenvalues of the synthesized matrix
    Eig {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
    },
    /// Seeded end-to-end fuzzing: random cotrees through the full pipeline
    Fuzz {
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn load_graph(input: &InputArgs) -> Result<(Graph, String), String> {
    if let Some(g6) = &input.g6 {
        let g = parse_graph6(g6).map_err(|e| e.to_string())?;
        return Ok((g, format!("g6 {g6}")));
    }
    if let Some(path) = &input.edges {
        let text = if path == "-" {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| e.to_string())?;
            buf
        } else {
            std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?
        };
        let g = parse_edgelist(&text).map_err(|e| e.to_string())?;
        return Ok((g, format!("edges {path}")));
    }
    if let Some(dsl) = &input.cotree {
        let t = parse_cotree(dsl).map_err(|e| e.to_string())?;
        return Ok((cotree_to_graph(&t), format!("cotree {dsl}")));
    }
    unreachable!("clap enforces exactly one input flag");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Recognize { input } => cmd_recognize(&input),
        Command::Synth { input, lambda, out } => cmd_synth(&input, lambda, out.as_deref()),
        Command::Check { report } => cmd_check(&report),
        Command::Eig { input, lambda } => cmd_eig(&input, lambda),
        Command::Fuzz {
            n_max,
            trials,
            seed,
        } => cmd_fuzz(n_max, trials, seed),
    };
    ExitCode::from(code)
}

fn cmd_recognize(input: &InputArgs) -> u8 {
    let (g, _) = match load_graph(input) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    match graph_to_cotree(&g) {
        Ok(t) => {
            println!("{t}");
            EXIT_OK
        }
        Err(w) => {
            let (a, b, c, d) = w.quad;
            eprintln!("not a cograph: induced P4 on vertices {a},{b},{c},{d}");
            EXIT_NOT_COGRAPH
        }
    }
}

fn cmd_synth(input: &InputArgs, lambda: f64, out: Option<&std::path::Path>) -> u8 {
    if lambda == 0.0 {
        eprintln!("error: lambda must be nonzero");
        return EXIT_INPUT_ERROR;
    }
    let (g, desc) = match load_graph(input) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    match certify(&g, &desc, lambda) {
        Ok(report) => {
            let text = report.serialize();
            if let Some(path) = out {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!("error: {}: {e}", path.display());
                    return EXIT_INPUT_ERROR;
                }
            } else {
                print!("{text}");
            }
            if report.all_passed() {
                EXIT_OK
            } else {
                for v in report.verdicts.iter().filter(|v| !v.passed) {
                    eprintln!("check failed: {} ({})", v.check, v.detail);
                }
                EXIT_VERIFY_FAIL
            }
        }
        Err(PipelineError::NotACograph(w)) => {
            let (a, b, c, d) = w.quad;
            eprintln!("not a cograph: induced P4 on vertices {a},{b},{c},{d}");
            EXIT_NOT_COGRAPH
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_VERIFY_FAIL
        }
    }
}

fn cmd_check(path: &std::path::Path) -> u8 {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {e}", path.display());
            return EXIT_INPUT_ERROR;
        }
    };
    let report = match RunReport::parse(&text) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    let tree = match parse_cotree(&report.cotree) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: report cotree: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    let g = cotree_to_graph(&tree);

    let mut ok = true;
    let mut record = |name: &str, passed: bool| {
        println!("{name}: {}", if passed { "pass" } else { "FAIL" });
        ok &= passed;
    };
    match check_pattern(&report.matrix, &g) {
        Ok(v) => record("pattern", v.passed),
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    }
    record("diagonal", check_diagonal(&report.matrix).passed);
    let ann = check_annihilator(&report.matrix);
    record("annihilator", ann.passed);
    if ann.passed {
        let mults = exact_multiplicities(&report.matrix, &ann).expect("annihilator just passed");
        record("spectrum", mults == report.spectrum.multiplicities);
        record("dspec_size", check_dspec_size(&mults).passed);
        let predicted = report.predicted();
        record(
            "predicted",
            (0..4).all(|i| mults[i] == predicted.mult(cograph_spectra::verify::EIGENVALUES[i])),
        );
    }
    if ok {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAIL
    }
}

fn cmd_eig(input: &InputArgs, lambda: f64) -> u8 {
    if lambda == 0.0 {
        eprintln!("error: lambda must be nonzero");
        return EXIT_INPUT_ERROR;
    }
    let (g, _) = match load_graph(input) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    let seq = match cograph_spectra::synthesis::twin_sequence(&g) {
        Ok(seq) => seq,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_NOT_COGRAPH;
        }
    };
    let s = cograph_spectra::synthesis::synthesize(&seq).expect("valid sequence");
    let numeric = scale_to_numeric(&s.matrix, lambda).expect("lambda checked nonzero");
    match numeric_eigenvalues(&numeric) {
        Ok(eigs) => {
            for e in eigs {
                println!("{e:.16e}");
            }
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_VERIFY_FAIL
        }
    }
}

fn cmd_fuzz(n_max: usize, trials: usize, seed: u64) -> u8 {
    if n_max < 1 || trials < 1 {
        eprintln!("error: n_max and trials must be at least 1");
        return EXIT_INPUT_ERROR;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut passes = 0usize;
    let mut failures = 0usize;
    for trial in 0..trials {
        let n = rng.gen_range(1..=n_max);
        let tree_seed: u64 = rng.gen();
        let tree = random_cotree(n, tree_seed);
        let g = cotree_to_graph(&tree);
        match certify(&g, &format!("fuzz trial {trial}"), 1.0) {
            Ok(report) if report.all_passed() => passes += 1,
            Ok(report) => {
                failures += 1;
                eprintln!("trial {trial} FAILED, replay cotree: {tree}");
                for v in report.verdicts.iter().filter(|v| !v.passed) {
                    eprintln!("  {}: {}", v.check, v.detail);
                }
            }
            Err(e) => {
                failures += 1;
                eprintln!("trial {trial} ERRORED ({e}), replay cotree: {tree}");
            }
        }
    }
    println!("fuzz: {passes} passed, {failures} failed of {trials} trials (n_max={n_max}, seed={seed})");
    if failures == 0 {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAIL
    }
}
