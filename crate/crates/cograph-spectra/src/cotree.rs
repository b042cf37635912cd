//! Cotrees: rooted trees with union/join internal labels whose leaves are
//! the graph's vertices. Includes the text DSL, normalization to the
//! canonical form, evaluation to a graph, and recognition (graph to cotree
//! or an induced-P4 witness).

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{join_of, union_of, Graph, TwinKind};
use crate::synthesis::{twin_sequence, P4Witness, SynthesisError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum NodeKind {
    Union,
    Join,
}

impl NodeKind {
    pub fn flipped(self) -> Self {
        match self {
            NodeKind::Union => NodeKind::Join,
            NodeKind::Join => NodeKind::Union,
        }
    }
}

/// The derived ordering is the canonical child order: leaves before
/// internal nodes, leaves by label, internal nodes by kind then children
/// lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum CoTree {
    Leaf(usize),
    Node(NodeKind, Vec<CoTree>),
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {offset}")]
    Syntax { offset: usize },
    #[error("duplicate leaf label {0}")]
    DuplicateLabel(usize),
    #[error("leaf labels are not contiguous: {missing} is missing")]
    LabelGap { missing: usize },
}

impl CoTree {
    /// Leaf labels in left-to-right order.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            CoTree::Leaf(l) => out.push(*l),
            CoTree::Node(_, children) => {
                for c in children {
                    c.collect_leaves(out);
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.leaves().len()
    }

    /// Checks the normalized-form invariants: every internal node has at
    /// least two children and a label different from its parent's.
    pub fn is_normalized(&self) -> bool {
        fn walk(t: &CoTree, parent: Option<NodeKind>) -> bool {
            match t {
                CoTree::Leaf(_) => true,
                CoTree::Node(kind, children) => {
                    children.len() >= 2
                        && parent != Some(*kind)
                        && children.iter().all(|c| walk(c, Some(*kind)))
                }
            }
        }
        walk(self, None)
    }
}

impl std::fmt::Display for CoTree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CoTree::Leaf(l) => write!(f, "{l}"),
            CoTree::Node(kind, children) => {
                let tag = match kind {
                    NodeKind::Union => 'U',
                    NodeKind::Join => 'J',
                };
                write!(f, "{tag}(")?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(ParseError::Syntax { offset: self.pos })
        }
    }

    fn expr(&mut self) -> Result<CoTree, ParseError> {
        match self.peek() {
            Some(b'U') | Some(b'J') => {
                let kind = if self.bytes[self.pos] == b'U' {
                    NodeKind::Union
                } else {
                    NodeKind::Join
                };
                self.pos += 1;
                self.expect(b'(')?;
                let mut children = vec![self.expr()?];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    children.push(self.expr()?);
                }
                self.expect(b')')?;
                Ok(CoTree::Node(kind, children))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self
                    .bytes
                    .get(self.pos)
                    .is_some_and(|b| b.is_ascii_digit())
                {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                let label: usize = text
                    .parse()
                    .map_err(|_| ParseError::Syntax { offset: start })?;
                if label == 0 {
                    return Err(ParseError::Syntax { offset: start });
                }
                Ok(CoTree::Leaf(label))
            }
            _ => Err(ParseError::Syntax { offset: self.pos }),
        }
    }
}

/// Parses the cotree DSL: `Expr := LEAF | ("U"|"J") "(" Expr ("," Expr)* ")"`.
/// Leaf labels must be exactly 1..n, each once.
pub fn parse_cotree(text: &str) -> Result<CoTree, ParseError> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let t = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(ParseError::Syntax { offset: p.pos });
    }
    let mut seen = std::collections::BTreeSet::new();
    let leaves = t.leaves();
    for &l in &leaves {
        if !seen.insert(l) {
            return Err(ParseError::DuplicateLabel(l));
        }
    }
    for want in 1..=leaves.len() {
        if !seen.contains(&want) {
            return Err(ParseError::LabelGap { missing: want });
        }
    }
    Ok(t)
}

/// Bottom-up evaluation: leaves become K1, union/join nodes combine their
/// children. Leaf labels are preserved as vertex ids.
pub fn cotree_to_graph(t: &CoTree) -> Graph {
    // Evaluate positionally, then map position i back to the i-th leaf label.
    let leaves = t.leaves();
    let positional = eval_positional(t);
    let mut g = Graph::empty(leaves.len());
    for (u, v) in positional.edges() {
        g.add_edge(leaves[u - 1], leaves[v - 1]);
    }
    g
}

fn eval_positional(t: &CoTree) -> Graph {
    match t {
        CoTree::Leaf(_) => Graph::singleton(),
        CoTree::Node(kind, children) => {
            let mut acc = eval_positional(&children[0]);
            for c in &children[1..] {
                let g = eval_positional(c);
                acc = match kind {
                    NodeKind::Union => union_of(&acc, &g),
                    NodeKind::Join => join_of(&acc, &g),
                };
            }
            acc
        }
    }
}

/// Splices out single-child nodes, flattens same-label parent/child chains,
/// and sorts children canonically. Idempotent; preserves the evaluated graph.
pub fn normalize(t: &CoTree) -> CoTree {
    match t {
        CoTree::Leaf(l) => CoTree::Leaf(*l),
        CoTree::Node(kind, children) => {
            let mut out = Vec::new();
            for c in children {
                match normalize(c) {
                    CoTree::Node(k2, grand) if k2 == *kind => out.extend(grand),
                    other => out.push(other),
                }
            }
            if out.len() == 1 {
                return out.pop().unwrap();
            }
            out.sort();
            CoTree::Node(*kind, out)
        }
    }
}

/// Swaps every internal label, producing the complement graph's cotree.
pub fn complement_cotree(t: &CoTree) -> CoTree {
    match t {
        CoTree::Leaf(l) => CoTree::Leaf(*l),
        CoTree::Node(kind, children) => CoTree::Node(
            kind.flipped(),
            children.iter().map(complement_cotree).collect(),
        ),
    }
}

/// Recognition: the normalized cotree of a cograph, or an induced-P4
/// witness. Built by recording twin eliminations and replaying them as
/// leaf insertions.
pub fn graph_to_cotree(g: &Graph) -> Result<CoTree, P4Witness> {
    let seq = match twin_sequence(g) {
        Ok(seq) => seq,
        Err(SynthesisError::NotACograph(w)) => return Err(w),
        Err(e) => unreachable!("twin_sequence on a plain graph: {e}"),
    };
    let mut t = CoTree::Leaf(seq.base);
    for step in &seq.steps {
        let kind = match step.kind {
            TwinKind::FalseTwin => NodeKind::Union,
            TwinKind::TrueTwin => NodeKind::Join,
        };
        t = insert_twin(t, step.twin_of, step.added, kind);
    }
    Ok(normalize(&t))
}

fn insert_twin(t: CoTree, at: usize, added: usize, kind: NodeKind) -> CoTree {
    match t {
        CoTree::Leaf(l) if l == at => {
            CoTree::Node(kind, vec![CoTree::Leaf(at), CoTree::Leaf(added)])
        }
        CoTree::Leaf(l) => CoTree::Leaf(l),
        CoTree::Node(k, children) => CoTree::Node(
            k,
            children
                .into_iter()
                .map(|c| insert_twin(c, at, added, kind))
                .collect(),
        ),
    }
}

/// Deterministic random normalized cotree on leaves 1..=n. The label set
/// is split recursively into at least two blocks with labels alternating
/// between union and join by depth.
pub fn random_cotree(n: usize, seed: u64) -> CoTree {
    assert!(n >= 1, "random_cotree requires n >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels: Vec<usize> = (1..=n).collect();
    labels.shuffle(&mut rng);
    let root_kind = if rng.gen::<bool>() {
        NodeKind::Join
    } else {
        NodeKind::Union
    };
    let t = build_random(&labels, root_kind, &mut rng);
    normalize(&t)
}

fn build_random(labels: &[usize], kind: NodeKind, rng: &mut ChaCha8Rng) -> CoTree {
    if labels.len() == 1 {
        return CoTree::Leaf(labels[0]);
    }
    let blocks = rng.gen_range(2..=labels.len());
    // blocks-1 distinct cut points over 1..len
    let mut cuts: Vec<usize> = (1..labels.len()).collect();
    cuts.shuffle(rng);
    cuts.truncate(blocks - 1);
    cuts.sort_unstable();
    cuts.push(labels.len());
    let mut children = Vec::with_capacity(blocks);
    let mut start = 0;
    for &end in &cuts {
        children.push(build_random(&labels[start..end], kind.flipped(), rng));
        start = end;
    }
    CoTree::Node(kind, children)
}
