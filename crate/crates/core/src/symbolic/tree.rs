use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{intersects, PullbackId, SymbolicError};

/// Largest order [`build_tree`] accepts by default.
pub const DEFAULT_MAX_ORDER: usize = 20;

/// Pullback itineraries of order at most `n`, joined when the pullbacks intersect.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackTree {
    n: usize,
    nodes: Vec<PullbackId>,
    edges: Vec<(usize, usize)>,
}

/// All words of length `n` in lexicographic order, each followed by `1_∞`.
fn order_n_nodes(n: usize) -> Vec<PullbackId> {
    (0..1u64 << n)
        .map(|bits| {
            let word: Vec<u8> = (0..n).rev().map(|b| ((bits >> b) & 1) as u8).collect();
            PullbackId::from_word(&word)
        })
        .collect()
}

pub fn build_tree(n: usize) -> Result<PullbackTree, SymbolicError> {
    build_tree_with_budget(n, DEFAULT_MAX_ORDER)
}

/// The tree `A_n`. Edges come from each node's unique intersecting neighbour on the side
/// of `Δ`, which is exactly where the intersection predicate can hold.
pub fn build_tree_with_budget(n: usize, max_order: usize) -> Result<PullbackTree, SymbolicError> {
    if n > max_order || n >= 63 {
        return Err(SymbolicError::BudgetExceeded { n, max: max_order });
    }
    let nodes = order_n_nodes(n);
    let index: HashMap<&PullbackId, usize> = nodes.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut edges: Vec<(usize, usize)> = nodes
        .iter()
        .enumerate()
        .filter_map(|(j, node)| {
            let parent = node.parent()?;
            let i = index[&parent];
            debug_assert!(intersects(&nodes[i], node));
            Some((i.min(j), i.max(j)))
        })
        .collect();
    edges.sort_unstable();
    Ok(PullbackTree { n, nodes, edges })
}

impl PullbackTree {
    /// Builds the graph on an arbitrary node list by evaluating the predicate on every pair.
    pub fn from_nodes(n: usize, nodes: Vec<PullbackId>) -> Self {
        let count = nodes.len();
        let edges: Vec<(usize, usize)> = (0..count)
            .into_par_iter()
            .flat_map_iter(|i| {
                let nodes = &nodes;
                (i + 1..count).filter_map(move |j| intersects(&nodes[i], &nodes[j]).then_some((i, j)))
            })
            .collect();
        Self { n, nodes, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[PullbackId] {
        &self.nodes
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn index_of(&self, id: &PullbackId) -> Option<usize> {
        self.nodes.iter().position(|p| p == id)
    }

    /// A copy with the `idx`-th edge dropped.
    pub fn without_edge(&self, idx: usize) -> Self {
        let mut out = self.clone();
        out.edges.remove(idx);
        out
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        self.adjacency().swap_remove(i)
    }

    pub fn is_connected(&self) -> bool {
        if self.nodes.is_empty() {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_acyclic(&self) -> bool {
        // Union-find: an edge joining two vertices already in one component closes a cycle.
        let mut parent: Vec<usize> = (0..self.nodes.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.nodes.len() && self.is_connected() && self.is_acyclic()
    }

    pub fn is_triangle_free(&self) -> bool {
        let adj = self.adjacency();
        self.edges.iter().all(|&(a, b)| {
            let (x, y) = (&adj[a], &adj[b]);
            let (mut i, mut j) = (0, 0);
            while i < x.len() && j < y.len() {
                match x[i].cmp(&y[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => return false,
                }
            }
            true
        })
    }

    /// One `"a" -- "b"` line per edge.
    pub fn to_graph_lines(&self) -> String {
        let mut out = String::new();
        for &(a, b) in &self.edges {
            writeln!(out, "\"{}\" -- \"{}\"", self.nodes[a], self.nodes[b]).expect("string write");
        }
        out
    }

    fn labeled_edges(&self) -> BTreeSet<(&PullbackId, &PullbackId)> {
        self.edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (&self.nodes[a], &self.nodes[b]);
                if x <= y {
                    (x, y)
                } else {
                    (y, x)
                }
            })
            .collect()
    }
}

impl Serialize for PullbackTree {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("PullbackTree", 3)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("nodes", &self.nodes)?;
        let edges: Vec<[usize; 2]> = self.edges.iter().map(|&(a, b)| [a, b]).collect();
        s.serialize_field("edges", &edges)?;
        s.end()
    }
}

/// Whether the identity on itinerary labels is an isomorphism between the two graphs that
/// also respects the shift (every node's shift is again a node).
pub fn same_intersection_pattern(
    a: &PullbackTree,
    b: &PullbackTree,
) -> Result<bool, SymbolicError> {
    if a.n != b.n {
        return Err(SymbolicError::OrderMismatch {
            left: a.n,
            right: b.n,
        });
    }
    let labels_a: HashSet<&PullbackId> = a.nodes.iter().collect();
    let labels_b: HashSet<&PullbackId> = b.nodes.iter().collect();
    if labels_a != labels_b || labels_a.len() != a.nodes.len() || labels_b.len() != b.nodes.len() {
        return Ok(false);
    }
    let shift_closed = |labels: &HashSet<&PullbackId>| {
        labels.iter().all(|p| labels.contains(&p.shift(1)))
    };
    if !shift_closed(&labels_a) || !shift_closed(&labels_b) {
        return Ok(false);
    }
    Ok(a.labeled_edges() == b.labeled_edges())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pb(s: &str) -> PullbackId {
        s.parse().unwrap()
    }

    /// The intersection condition evaluated symbol by symbol on long prefixes.
    fn literal_predicate(i: &PullbackId, j: &PullbackId) -> bool {
        let len = i.head().len().max(j.head().len()) + 2;
        let (si, sj) = (i.itinerary().prefix(len), j.itinerary().prefix(len));
        let holds = |x: &[u8], y: &[u8]| {
            (0..len).any(|k| {
                x[..k] == y[..k]
                    && x[k] == 1
                    && y[k] == 0
                    && (k + 1..len).all(|r| x[r] == 1 && y[r] == 1)
            })
        };
        holds(&si, &sj) || holds(&sj, &si)
    }

    #[test]
    fn predicate_agrees_with_literal_condition() {
        for n in 0..=6 {
            let nodes = order_n_nodes(n);
            for x in &nodes {
                for y in &nodes {
                    assert_eq!(intersects(x, y), literal_predicate(x, y), "{x} {y}");
                }
            }
        }
    }

    #[test]
    fn small_trees() {
        let t0 = build_tree(0).unwrap();
        assert_eq!(t0.nodes(), &[PullbackId::delta()]);
        assert!(t0.edges().is_empty());

        let t1 = build_tree(1).unwrap();
        assert_eq!(t1.nodes().len(), 2);
        assert_eq!(t1.edges().len(), 1);

        // 101* -- 1* -- 01* -- 001*
        let t2 = build_tree(2).unwrap();
        let labeled: BTreeSet<(String, String)> = t2
            .labeled_edges()
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        let expected: BTreeSet<(String, String)> = [("1*", "101*"), ("01*", "1*"), ("001*", "01*")]
            .into_iter()
            .map(|(a, b)| {
                let (a, b) = (pb(a), pb(b));
                let (x, y) = if a <= b { (a, b) } else { (b, a) };
                (x.to_string(), y.to_string())
            })
            .collect();
        assert_eq!(labeled, expected);
    }

    #[test]
    fn tree_matches_pairwise_oracle() {
        for n in 0..=8 {
            let t = build_tree(n).unwrap();
            let brute = PullbackTree::from_nodes(n, t.nodes().to_vec());
            assert_eq!(t.edges(), brute.edges(), "n = {n}");
            assert!(t.is_tree());
            assert!(t.is_triangle_free());
        }
    }

    #[test]
    fn patterns() {
        let t3 = build_tree(3).unwrap();
        assert!(same_intersection_pattern(&t3, &t3).unwrap());
        assert!(!same_intersection_pattern(&t3, &t3.without_edge(2)).unwrap());
        let mut shuffled = t3.nodes().to_vec();
        shuffled.reverse();
        shuffled.swap(1, 5);
        let rebuilt = PullbackTree::from_nodes(3, shuffled);
        assert!(same_intersection_pattern(&t3, &rebuilt).unwrap());
        assert!(matches!(
            same_intersection_pattern(&t3, &build_tree(2).unwrap()),
            Err(SymbolicError::OrderMismatch { left: 3, right: 2 })
        ));
    }

    #[test]
    fn budget() {
        assert!(matches!(
            build_tree_with_budget(5, 4),
            Err(SymbolicError::BudgetExceeded { n: 5, max: 4 })
        ));
    }

    #[test]
    fn json_and_graph_output() {
        let t1 = build_tree(1).unwrap();
        assert_eq!(
            serde_json::to_string(&t1).unwrap(),
            r#"{"n":1,"nodes":["01*","1*"],"edges":[[0,1]]}"#
        );
        assert_eq!(t1.to_graph_lines(), "\"01*\" -- \"1*\"\n");
    }
}
