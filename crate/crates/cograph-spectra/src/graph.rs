//! Labeled simple undirected graphs with the union/join algebra and the
//! twin / induced-P4 primitives everything else is built on.
//!
//! Vertices are 1-based contiguous integers. Union and join keep the first
//! operand's labels and shift the second operand's labels by an offset.

use std::collections::BTreeSet;

/// A simple undirected graph on vertices `1..=n`.
///
/// Adjacency is stored as a sorted neighbor set per vertex, which gives
/// O(deg) twin comparison and deterministic iteration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<BTreeSet<usize>>,
}

/// Whether a twin pair is adjacent (true twins) or not (false twins).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwinKind {
    FalseTwin,
    TrueTwin,
}

impl Graph {
    /// The empty graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![BTreeSet::new(); n + 1],
        }
    }

    /// The one-vertex graph.
    pub fn singleton() -> Self {
        Graph::empty(1)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Adds the edge `{u, v}`. Panics on self-loops or out-of-range labels.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop {u}");
        assert!(u >= 1 && u <= self.n && v >= 1 && v <= self.n);
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.adj[u].contains(&v)
    }

    pub fn neighbors(&self, u: usize) -> &BTreeSet<usize> {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj[1..=self.n].iter().map(|s| s.len()).sum::<usize>() / 2
    }

    /// Edges as sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 1..=self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

}

/// Disjoint union. `g1` keeps labels `1..=n1`; `g2` shifts to `n1+1..=n1+n2`.
pub fn union_of(g1: &Graph, g2: &Graph) -> Graph {
    let n1 = g1.n;
    let mut g = Graph::empty(n1 + g2.n);
    for (u, v) in g1.edges() {
        g.add_edge(u, v);
    }
    for (u, v) in g2.edges() {
        g.add_edge(u + n1, v + n1);
    }
    g
}

/// Join: the union plus every cross edge between the operands' ranges.
pub fn join_of(g1: &Graph, g2: &Graph) -> Graph {
    let n1 = g1.n;
    let mut g = union_of(g1, g2);
    for u in 1..=n1 {
        for v in n1 + 1..=n1 + g2.n {
            g.add_edge(u, v);
        }
    }
    g
}

pub fn complement_of(g: &Graph) -> Graph {
    let mut c = Graph::empty(g.n);
    for u in 1..=g.n {
        for v in u + 1..=g.n {
            if !g.has_edge(u, v) {
                c.add_edge(u, v);
            }
        }
    }
    c
}

/// Finds the lexicographically smallest twin pair `(u, v)` with `u < v`,
/// i.e. vertices whose neighborhoods agree outside `{u, v}`.
pub fn find_twin_pair(g: &Graph) -> Option<(usize, usize, TwinKind)> {
    for u in 1..=g.n {
        for v in u + 1..=g.n {
            if are_twins(g, u, v) {
                let kind = if g.has_edge(u, v) {
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

fn are_twins(g: &Graph, u: usize, v: usize) -> bool {
    if g.degree(u) != g.degree(v) {
        return false;
    }
    g.adj[u]
        .iter()
        .filter(|&&w| w != v)
        .eq(g.adj[v].iter().filter(|&&w| w != u))
}

/// Brute-force search for an induced 4-vertex path: returns `(a, b, c, d)`
/// inducing exactly the edges ab, bc, cd. This is the recognition oracle.
pub fn find_induced_p4(g: &Graph) -> Option<(usize, usize, usize, usize)> {
    for a in 1..=g.n {
        for b in 1..=g.n {
            if b == a || !g.has_edge(a, b) {
                continue;
            }
            for c in 1..=g.n {
                if c == a || c == b || !g.has_edge(b, c) || g.has_edge(a, c) {
                    continue;
                }
                for d in 1..=g.n {
                    if d == a || d == b || d == c {
                        continue;
                    }
                    if g.has_edge(c, d) && !g.has_edge(a, d) && !g.has_edge(b, d) {
                        return Some((a, b, c, d));
                    }
                }
            }
        }
    }
    None
}

/// Checks that `(a, b, c, d)` induces exactly the path edges ab, bc, cd.
pub fn is_induced_p4(g: &Graph, quad: (usize, usize, usize, usize)) -> bool {
    let (a, b, c, d) = quad;
    let vs = [a, b, c, d];
    if vs.iter().any(|&v| v < 1 || v > g.n) {
        return false;
    }
    for i in 0..4 {
        for j in i + 1..4 {
            if vs[i] == vs[j] {
                return false;
            }
        }
    }
    g.has_edge(a, b)
        && g.has_edge(b, c)
        && g.has_edge(c, d)
        && !g.has_edge(a, c)
        && !g.has_edge(a, d)
        && !g.has_edge(b, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for u in 1..=n {
            for v in u + 1..=n {
                g.add_edge(u, v);
            }
        }
        g
    }

    fn path(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for u in 1..n {
            g.add_edge(u, u + 1);
        }
        g
    }

    fn c4() -> Graph {
        Graph::from_edges(4, &[(1, 3), (1, 4), (2, 3), (2, 4)])
    }

    #[test]
    fn union_examples() {
        let g = union_of(&k(1), &k(1));
        assert_eq!(g.n(), 2);
        assert_eq!(g.edge_count(), 0);

        let g = union_of(&k(2), &k(1));
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), vec![(1, 2)]);

        let g = union_of(&k(2), &k(2));
        assert_eq!(g.edges(), vec![(1, 2), (3, 4)]);
    }

    #[test]
    fn join_examples() {
        let g = join_of(&k(1), &k(1));
        assert_eq!(g.edges(), vec![(1, 2)]);

        let g = join_of(&k(1), &Graph::empty(2));
        assert_eq!(g.edges(), vec![(1, 2), (1, 3)]);

        let g = join_of(&Graph::empty(2), &Graph::empty(2));
        assert_eq!(g.edges(), vec![(1, 3), (1, 4), (2, 3), (2, 4)]);
    }

    #[test]
    fn complement_examples() {
        assert_eq!(complement_of(&k(2)), Graph::empty(2));
        assert_eq!(
            complement_of(&c4()).edges(),
            vec![(1, 2), (3, 4)]
        );
        let p3 = path(3);
        assert_eq!(complement_of(&complement_of(&p3)), p3);
    }

    #[test]
    fn twin_pair_examples() {
        assert_eq!(find_twin_pair(&c4()), Some((1, 2, TwinKind::FalseTwin)));
        assert_eq!(find_twin_pair(&k(2)), Some((1, 2, TwinKind::TrueTwin)));
        assert_eq!(find_twin_pair(&path(4)), None);
    }

    #[test]
    fn p4_examples() {
        assert_eq!(find_induced_p4(&path(4)), Some((1, 2, 3, 4)));
        assert_eq!(find_induced_p4(&c4()), None);
        let mut c5 = path(5);
        c5.add_edge(5, 1);
        let w = find_induced_p4(&c5).expect("C5 contains an induced P4");
        assert!(is_induced_p4(&c5, w));
    }

    #[test]
    fn twin_kind_matches_adjacency() {
        for g in [k(3), c4(), path(3), union_of(&k(2), &k(2))] {
            if let Some((u, v, kind)) = find_twin_pair(&g) {
                assert_eq!(kind == TwinKind::TrueTwin, g.has_edge(u, v));
            }
        }
    }

    #[test]
    fn de_morgan_union_join() {
        let g1 = path(3);
        let g2 = c4();
        assert_eq!(
            complement_of(&union_of(&g1, &g2)),
            join_of(&complement_of(&g1), &complement_of(&g2))
        );
    }
}
