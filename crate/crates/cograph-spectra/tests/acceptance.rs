//! End-to-end acceptance suite. Each test prints one pass/fail line.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cograph_spectra::cotree::{
    cotree_to_graph, graph_to_cotree, normalize, random_cotree, CoTree,
};
use cograph_spectra::exact::{inner_product, ExactScalar};
use cograph_spectra::formats::{encode_graph6, parse_graph6};
use cograph_spectra::graph::{find_induced_p4, is_induced_p4, join_of, union_of, Graph};
use cograph_spectra::pipeline::certify;
use cograph_spectra::report::RunReport;
use cograph_spectra::synthesis::{
    replay, scale_to_numeric, synthesize, twin_sequence, Synthesis,
};
use cograph_spectra::verify::{
    check_annihilator, check_diagonal, check_dspec_size, check_pattern, check_predicted,
    exact_multiplicities, numeric_eigenvalues, EIGENVALUES,
};

/// The shared fuzz corpus for criteria 1, 3, 4: 1000 seeded cotrees, n <= 12.
fn fuzz_corpus() -> Vec<(CoTree, Graph)> {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    (0..1000)
        .map(|_| {
            let n = rng.gen_range(1..=12);
            let tree = random_cotree(n, rng.gen());
            let g = cotree_to_graph(&tree);
            (tree, g)
        })
        .collect()
}

fn synth_for(g: &Graph) -> Synthesis {
    synthesize(&twin_sequence(g).expect("corpus graphs are cographs")).unwrap()
}

#[test]
fn criterion_1_theorem_certificate_on_fuzz_corpus() {
    let started = std::time::Instant::now();
    for (tree, g) in fuzz_corpus() {
        let s = synth_for(&g);
        assert!(
            check_pattern(&s.matrix, &g).unwrap().passed,
            "pattern failed for {tree}"
        );
        assert!(check_diagonal(&s.matrix).passed, "diagonal failed for {tree}");
        let ann = check_annihilator(&s.matrix);
        assert!(ann.passed, "annihilator failed for {tree}");
        let mults = exact_multiplicities(&s.matrix, &ann).unwrap();
        assert!(
            check_predicted(&mults, &s.predicted).passed,
            "predicted failed for {tree}"
        );
        assert!(check_dspec_size(&mults).passed, "dspec_size failed for {tree}");
        assert!(mults.iter().filter(|&&m| m > 0).count() <= 4);
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs() < 60,
        "certificate run took {elapsed:?}, budget is 60s"
    );
    println!("criterion 1 (Theorem 2 certificate, 1000 cotrees n<=12, {elapsed:?}): pass");
}

#[test]
fn criterion_2_recognition_matches_brute_force_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut cographs = 0usize;
    for trial in 0..10_000 {
        let n = rng.gen_range(1..=8);
        let p = [0.2, 0.5, 0.8][trial % 3];
        let mut g = Graph::empty(n);
        for u in 1..=n {
            for v in u + 1..=n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v);
                }
            }
        }
        let oracle_says_cograph = find_induced_p4(&g).is_none();
        match graph_to_cotree(&g) {
            Ok(tree) => {
                assert!(oracle_says_cograph, "recognition accepted a non-cograph");
                assert_eq!(cotree_to_graph(&tree), g, "cotree does not evaluate back");
                cographs += 1;
            }
            Err(w) => {
                assert!(!oracle_says_cograph, "recognition rejected a cograph");
                assert!(is_induced_p4(&g, w.quad), "witness is not an induced P4");
            }
        }
    }
    println!("criterion 2 (recognition vs oracle, 10000 samples, {cographs} cographs): pass");
}

#[test]
fn criterion_3_twin_sequence_replay_and_case_tally() {
    for (tree, g) in fuzz_corpus() {
        let seq = twin_sequence(&g).unwrap();
        assert_eq!(replay(&seq), g, "replay mismatch for {tree}");
        let s = synthesize(&seq).unwrap();
        let ann = check_annihilator(&s.matrix);
        let mults = exact_multiplicities(&s.matrix, &ann).unwrap();
        for (i, &mu) in EIGENVALUES.iter().enumerate() {
            assert_eq!(
                mults[i],
                s.predicted.mult(mu),
                "case tally mismatch at {mu}λ for {tree}"
            );
        }
    }
    println!("criterion 3 (twin-sequence replay + case tally, 1000 cotrees): pass");
}

#[test]
fn criterion_4_eigenbasis_exactness_and_orthonormality() {
    let mut instances = 0usize;
    for (tree, g) in fuzz_corpus() {
        if g.n() > 10 {
            continue;
        }
        instances += 1;
        let s = synth_for(&g);
        for pair in &s.basis {
            let mx = s.matrix.matvec(&pair.vector);
            let mu = ExactScalar::from_int(pair.eigenvalue);
            for (lhs, x) in mx.iter().zip(&pair.vector) {
                assert!(
                    lhs.sub(&mu.mul(x)).is_zero(),
                    "nonzero eigen residual for {tree}"
                );
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
                assert_eq!(ip, want, "basis not orthonormal for {tree}");
            }
        }
    }
    assert!(instances > 0);
    println!("criterion 4 (exact eigenbasis, {instances} instances n<=10): pass");
}

#[test]
fn criterion_5_numeric_cross_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for trial in 0..100 {
        let n = rng.gen_range(1..=32);
        let tree = random_cotree(n, rng.gen());
        let g = cotree_to_graph(&tree);
        let s = synth_for(&g);
        let ann = check_annihilator(&s.matrix);
        let mults = exact_multiplicities(&s.matrix, &ann).unwrap();
        let lambda = [1.0, 2.5, -3.0][trial % 3];
        let numeric = scale_to_numeric(&s.matrix, lambda).unwrap();
        let eigs = numeric_eigenvalues(&numeric).unwrap();
        let mut exact: Vec<f64> = EIGENVALUES
            .iter()
            .zip(&mults)
            .flat_map(|(&mu, &m)| std::iter::repeat(mu as f64 * lambda).take(m))
            .collect();
        exact.sort_by(|x, y| x.partial_cmp(y).unwrap());
        assert_eq!(eigs.len(), exact.len());
        let tol = 1e-9 * lambda.abs().max(1.0);
        for (got, want) in eigs.iter().zip(&exact) {
            assert!(
                (got - want).abs() <= tol,
                "numeric {got} vs exact {want} at λ={lambda} for {tree}"
            );
        }
    }
    println!("criterion 5 (numeric cross-check, 100 instances n<=32): pass");
}

#[test]
fn criterion_6_threshold_family() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..200 {
        let n = rng.gen_range(1..=12);
        // threshold graph: grow from K1 by isolated or dominating vertices
        let mut g = Graph::singleton();
        for _ in 1..n {
            g = if rng.gen::<bool>() {
                union_of(&g, &Graph::singleton())
            } else {
                join_of(&g, &Graph::singleton())
            };
        }
        let report = certify(&g, "threshold", 1.0).expect("threshold graphs are cographs");
        assert!(
            report.all_passed(),
            "certificate failed on a threshold graph with {} vertices",
            g.n()
        );
    }
    println!("criterion 6 (200 threshold graphs n<=12): pass");
}

#[test]
fn criterion_7_single_entry_perturbation_is_detected() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut done = 0usize;
    while done < 50 {
        let n = rng.gen_range(2..=10);
        let tree = random_cotree(n, rng.gen());
        let g = cotree_to_graph(&tree);
        let s = synth_for(&g);
        let nonzero: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !s.matrix.get(i, j).is_zero())
            .collect();
        if nonzero.is_empty() {
            continue;
        }
        let (i, j) = nonzero[rng.gen_range(0..nonzero.len())];
        let mut perturbed = s.matrix.clone();
        let half = ExactScalar::new(1, 0, 1); // λ/2
        perturbed.set_sym(i, j, s.matrix.get(i, j).add(&half));

        let ann = check_annihilator(&perturbed);
        let caught = if !ann.passed {
            true
        } else {
            let mults = exact_multiplicities(&perturbed, &ann).unwrap();
            !check_predicted(&mults, &s.predicted).passed
        };
        assert!(
            caught,
            "perturbation at ({},{}) went undetected for {tree}",
            i + 1,
            j + 1
        );
        done += 1;
    }
    println!("criterion 7 (50 perturbed matrices all detected): pass");
}

#[test]
fn criterion_8_determinism_and_round_trips() {
    // byte-identical reports under a fixed seed, modulo the wall-time line
    let strip = |text: &str| -> String {
        text.lines()
            .filter(|l| !l.starts_with("walltime_ms:"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    for seed in 0..20u64 {
        let tree = random_cotree(9, seed);
        let g = cotree_to_graph(&tree);
        let a = certify(&g, "det", 1.0).unwrap().serialize();
        let b = certify(&g, "det", 1.0).unwrap().serialize();
        assert_eq!(strip(&a), strip(&b), "reports differ for seed {seed}");

        // run report round trip
        let parsed = RunReport::parse(&a).unwrap();
        assert_eq!(strip(&parsed.serialize()), strip(&a));
    }

    // graph6 encode∘decode is the identity
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let n = rng.gen_range(1..=20);
        let mut g = Graph::empty(n);
        for u in 1..=n {
            for v in u + 1..=n {
                if rng.gen::<bool>() {
                    g.add_edge(u, v);
                }
            }
        }
        let enc = encode_graph6(&g).unwrap();
        assert_eq!(parse_graph6(&enc).unwrap(), g);
    }

    // normalize is idempotent, and re-bracketings of one tree agree
    for pair_seed in 0..100u64 {
        let tree = random_cotree(10, pair_seed);
        let norm = normalize(&tree);
        assert_eq!(normalize(&norm), norm);
        let mut rng = ChaCha8Rng::seed_from_u64(pair_seed ^ 0xdead_beef);
        let a = rebracket(&norm, &mut rng);
        let b = rebracket(&norm, &mut rng);
        assert_eq!(normalize(&a), norm);
        assert_eq!(normalize(&a), normalize(&b), "seed {pair_seed}");
    }
    println!("criterion 8 (determinism + round trips): pass");
}

/// Introduces redundant structure without changing the evaluated graph:
/// groups of same-label children get nested under an extra node.
fn rebracket(t: &CoTree, rng: &mut ChaCha8Rng) -> CoTree {
    match t {
        CoTree::Leaf(l) => CoTree::Leaf(*l),
        CoTree::Node(kind, children) => {
            let mut out: Vec<CoTree> = children.iter().map(|c| rebracket(c, rng)).collect();
            while out.len() >= 3 && rng.gen_bool(0.5) {
                let at = rng.gen_range(0..out.len() - 1);
                let grouped: Vec<CoTree> = out.drain(at..at + 2).collect();
                out.insert(at, CoTree::Node(*kind, grouped));
            }
            if rng.gen_bool(0.3) {
                // a single-child chain of the opposite label, spliced by normalize
                return CoTree::Node(
                    kind.flipped(),
                    vec![CoTree::Node(*kind, out)],
                );
            }
            CoTree::Node(*kind, out)
        }
    }
}
