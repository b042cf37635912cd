//! Twin-sequence extraction and the inductive matrix construction.
//!
//! A cograph is reduced to K1 by repeatedly deleting the larger vertex of
//! the lexicographically first twin pair. Replaying the deletions in
//! reverse as twin additions drives the matrix construction: each addition
//! copies the twin's row and column scaled by 1/√2 and overwrites the 2×2
//! block on the pair according to one of four cases, selected by the twin
//! kind and the current diagonal entry. Each case contributes one new
//! eigenvalue (0, λ, 2λ, or −λ respectively), so the final matrix has at
//! most four distinct eigenvalues.

use std::collections::{BTreeMap, BTreeSet};

use crate::exact::{ExactMatrix, ExactScalar};
use crate::graph::{Graph, TwinKind};

/// One twin addition: vertex `added` enters as a twin of `twin_of`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwinStep {
    pub added: usize,
    pub twin_of: usize,
    pub kind: TwinKind,
}

/// Builds a cograph from K1 by iterated twin additions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinSequence {
    pub base: usize,
    pub steps: Vec<TwinStep>,
}

/// Certificate that a graph is not a cograph: an induced 4-vertex path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct P4Witness {
    pub quad: (usize, usize, usize, usize),
}

#[derive(Debug, thiserror::Error)]
pub enum SynthesisError {
    #[error("not a cograph: vertices {} {} {} {} induce a P4", .0.quad.0, .0.quad.1, .0.quad.2, .0.quad.3)]
    NotACograph(P4Witness),
    #[error("internal invariant violation: diagonal entry outside {{0, λ}}")]
    InternalInvariantViolation,
    #[error("lambda must be nonzero")]
    ZeroLambda,
}

/// The four construction cases of the inductive step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    /// False twins, diagonal 0. New eigenvalue 0.
    C1,
    /// False twins, diagonal λ. New eigenvalue λ.
    C2,
    /// True twins, diagonal 0. New eigenvalue 2λ.
    C3,
    /// True twins, diagonal λ. New eigenvalue −λ.
    C4,
}

impl Case {
    pub fn id(self) -> u8 {
        match self {
            Case::C1 => 1,
            Case::C2 => 2,
            Case::C3 => 3,
            Case::C4 => 4,
        }
    }

    /// The eigenvalue contributed by the new basis vector, in λ-units.
    pub fn new_eigenvalue(self) -> i64 {
        match self {
            Case::C1 => 0,
            Case::C2 => 1,
            Case::C3 => 2,
            Case::C4 => -1,
        }
    }
}

/// Eigenvalue multiplicities over {−λ, 0, λ, 2λ}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PredictedSpectrum {
    pub mult_minus: usize,
    pub mult_zero: usize,
    pub mult_lambda: usize,
    pub mult_two: usize,
}

impl PredictedSpectrum {
    pub fn total(&self) -> usize {
        self.mult_minus + self.mult_zero + self.mult_lambda + self.mult_two
    }

    /// Multiplicity of `mu` λ-units, `mu ∈ {−1, 0, 1, 2}`.
    pub fn mult(&self, mu: i64) -> usize {
        match mu {
            -1 => self.mult_minus,
            0 => self.mult_zero,
            1 => self.mult_lambda,
            2 => self.mult_two,
            _ => 0,
        }
    }

    fn bump(&mut self, mu: i64) {
        match mu {
            -1 => self.mult_minus += 1,
            0 => self.mult_zero += 1,
            1 => self.mult_lambda += 1,
            2 => self.mult_two += 1,
            _ => unreachable!(),
        }
    }
}

/// Adjacency on a shrinking subset of the original vertex labels.
struct SubGraph {
    adj: BTreeMap<usize, BTreeSet<usize>>,
}

impl SubGraph {
    fn of(g: &Graph) -> Self {
        let adj = (1..=g.n()).map(|u| (u, g.neighbors(u).clone())).collect();
        SubGraph { adj }
    }

    fn remove(&mut self, v: usize) {
        self.adj.remove(&v);
        for nbrs in self.adj.values_mut() {
            nbrs.remove(&v);
        }
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[&u].contains(&v)
    }

    /// Lexicographically smallest twin pair among the remaining labels.
    fn find_twin_pair(&self) -> Option<(usize, usize, TwinKind)> {
        let labels: Vec<usize> = self.adj.keys().copied().collect();
        for (i, &u) in labels.iter().enumerate() {
            for &v in &labels[i + 1..] {
                let nu = self.adj[&u].iter().filter(|&&w| w != v);
                let nv = self.adj[&v].iter().filter(|&&w| w != u);
                if nu.eq(nv) {
                    let kind = if self.has_edge(u, v) {
                        TwinKind::TrueTwin
                    } else {
                        TwinKind::FalseTwin
                    };
                    return Some((u, v, kind));
                }
            }
        }
        None
    }

    fn find_induced_p4(&self) -> Option<(usize, usize, usize, usize)> {
        let labels: Vec<usize> = self.adj.keys().copied().collect();
        for &a in &labels {
            for &b in &labels {
                if b == a || !self.has_edge(a, b) {
                    continue;
                }
                for &c in &labels {
                    if c == a || c == b || !self.has_edge(b, c) || self.has_edge(a, c) {
                        continue;
                    }
                    for &d in &labels {
                        if d == a || d == b || d == c {
                            continue;
                        }
                        if self.has_edge(c, d) && !self.has_edge(a, d) && !self.has_edge(b, d) {
                            return Some((a, b, c, d));
                        }
                    }
                }
            }
        }
        None
    }
}

/// Reduces `g` to K1 by twin deletions and returns the additions in replay
/// order. Deterministic: always the lexicographically first twin pair, and
/// the larger vertex of the pair is the one deleted.
pub fn twin_sequence(g: &Graph) -> Result<TwinSequence, SynthesisError> {
    assert!(g.n() >= 1, "graph must have at least one vertex");
    let mut sub = SubGraph::of(g);
    let mut removals = Vec::new();
    while sub.adj.len() > 1 {
        match sub.find_twin_pair() {
            Some((u, v, kind)) => {
                removals.push(TwinStep {
                    added: v,
                    twin_of: u,
                    kind,
                });
                sub.remove(v);
            }
            None => {
                let quad = sub
                    .find_induced_p4()
                    .expect("twin-free graph on >= 2 vertices must contain an induced P4");
                return Err(SynthesisError::NotACograph(P4Witness { quad }));
            }
        }
    }
    let base = *sub.adj.keys().next().unwrap();
    removals.reverse();
    Ok(TwinSequence {
        base,
        steps: removals,
    })
}

/// Rebuilds the graph a twin sequence describes. Used to validate sequences
/// and as the replay oracle in tests.
pub fn replay(seq: &TwinSequence) -> Graph {
    let n = seq.steps.len() + 1;
    let mut g = Graph::empty(n);
    let mut active = BTreeSet::from([seq.base]);
    for step in &seq.steps {
        debug_assert!(active.contains(&step.twin_of));
        debug_assert!(!active.contains(&step.added));
        let nbrs: Vec<usize> = g.neighbors(step.twin_of).iter().copied().collect();
        for w in nbrs {
            g.add_edge(step.added, w);
        }
        if step.kind == TwinKind::TrueTwin {
            g.add_edge(step.added, step.twin_of);
        }
        active.insert(step.added);
    }
    g
}

/// A basis eigenvector together with its eigenvalue in λ-units.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenPair {
    pub vector: Vec<ExactScalar>,
    pub eigenvalue: i64,
}

/// Everything the inductive construction produces for one twin sequence.
#[derive(Debug, Clone)]
pub struct Synthesis {
    pub matrix: ExactMatrix,
    pub basis: Vec<EigenPair>,
    pub cases: Vec<Case>,
    pub predicted: PredictedSpectrum,
}

/// Runs the four-case construction over a twin sequence. The matrix is in
/// λ-units, indexed by the original vertex labels (label i at row i−1).
pub fn synthesize(seq: &TwinSequence) -> Result<Synthesis, SynthesisError> {
    let n = seq.steps.len() + 1;
    // Working order: position -> vertex label, in insertion order.
    let mut order = vec![seq.base];
    let mut m = ExactMatrix::zero(1);
    let mut basis = vec![EigenPair {
        vector: vec![ExactScalar::one()],
        eigenvalue: 0,
    }];
    let mut cases = Vec::with_capacity(n - 1);
    let mut predicted = PredictedSpectrum::default();
    predicted.bump(0); // the K1 base contributes the eigenvalue 0

    for step in &seq.steps {
        let p = order
            .iter()
            .position(|&l| l == step.twin_of)
            .expect("twin_of must already be placed");
        let old_dim = order.len();
        let new = old_dim;
        order.push(step.added);

        let diag = m.get(p, p);
        let diag_is_zero = if diag.is_zero() {
            true
        } else if *diag == ExactScalar::one() {
            false
        } else {
            return Err(SynthesisError::InternalInvariantViolation);
        };
        let case = match (step.kind, diag_is_zero) {
            (TwinKind::FalseTwin, true) => Case::C1,
            (TwinKind::FalseTwin, false) => Case::C2,
            (TwinKind::TrueTwin, true) => Case::C3,
            (TwinKind::TrueTwin, false) => Case::C4,
        };
        cases.push(case);
        predicted.bump(case.new_eigenvalue());

        // Grow the matrix: rows/cols outside {p, new} are copied, the
        // coupling entries to p are scaled by 1/√2 and duplicated to new.
        let mut grown = ExactMatrix::zero(old_dim + 1);
        for i in 0..old_dim {
            for j in i..old_dim {
                if i != p && j != p {
                    grown.set_sym(i, j, m.get(i, j).clone());
                }
            }
        }
        for u in 0..old_dim {
            if u == p {
                continue;
            }
            let scaled = m.get(u, p).div_sqrt2();
            grown.set_sym(u, p, scaled.clone());
            grown.set_sym(u, new, scaled);
        }
        let lam = ExactScalar::one;
        let (dd, off) = match case {
            Case::C1 => (ExactScalar::zero(), ExactScalar::zero()),
            Case::C2 => (lam(), ExactScalar::zero()),
            Case::C3 => (lam(), lam().neg()),
            Case::C4 => (ExactScalar::zero(), lam()),
        };
        grown.set_sym(p, p, dd.clone());
        grown.set_sym(new, new, dd);
        grown.set_sym(p, new, off);
        m = grown;

        // Lift the basis: split each vector's p-component by 1/√2 across
        // positions p and new, and append the antisymmetric vector.
        for pair in &mut basis {
            let half = pair.vector[p].div_sqrt2();
            pair.vector[p] = half.clone();
            pair.vector.push(half);
        }
        let mut fresh = vec![ExactScalar::zero(); old_dim + 1];
        fresh[p] = ExactScalar::inv_sqrt2();
        fresh[new] = ExactScalar::inv_sqrt2().neg();
        basis.push(EigenPair {
            vector: fresh,
            eigenvalue: case.new_eigenvalue(),
        });
    }

    // Permute from insertion order to label order.
    let mut pos_of_label = vec![0usize; n + 1];
    for (pos, &label) in order.iter().enumerate() {
        pos_of_label[label] = pos;
    }
    let mut matrix = ExactMatrix::zero(n);
    for i in 1..=n {
        for j in i..=n {
            matrix.set_sym(
                i - 1,
                j - 1,
                m.get(pos_of_label[i], pos_of_label[j]).clone(),
            );
        }
    }
    let basis = basis
        .into_iter()
        .map(|pair| EigenPair {
            vector: (1..=n)
                .map(|label| pair.vector[pos_of_label[label]].clone())
                .collect(),
            eigenvalue: pair.eigenvalue,
        })
        .collect();

    Ok(Synthesis {
        matrix,
        basis,
        cases,
        predicted,
    })
}

/// The lifted orthonormal eigenbasis for a twin sequence.
pub fn eigenbasis(seq: &TwinSequence) -> Result<Vec<EigenPair>, SynthesisError> {
    Ok(synthesize(seq)?.basis)
}

/// Entry-wise numeric evaluation of the λ-unit matrix at a concrete λ.
pub fn scale_to_numeric(m: &ExactMatrix, lambda: f64) -> Result<Vec<Vec<f64>>, SynthesisError> {
    if lambda == 0.0 {
        return Err(SynthesisError::ZeroLambda);
    }
    Ok((0..m.n())
        .map(|i| (0..m.n()).map(|j| m.get(i, j).to_f64(lambda)).collect())
        .collect())
}
