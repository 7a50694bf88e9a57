//! Plain and 2-edge-coloured simple graphs on dense vertex indices.
//!
//! Graphs are immutable values. Every operation that "extends" a graph
//! returns a new one; edges are kept normalised as `(u, v)` with `u < v` and
//! sorted, so iteration order is deterministic.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// A normalised undirected edge `(u, v)` with `u < v`.
pub type Edge = (Vertex, Vertex);

#[inline]
pub fn normalize(u: Vertex, v: Vertex) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<Vertex>>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    vertex_count: usize,
    edges: Vec<Edge>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;

    fn try_from(r: GraphRepr) -> Result<Self> {
        Graph::new(r.vertex_count, r.edges)
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            vertex_count: g.n,
            edges: g.edges,
        }
    }
}

impl Graph {
    /// Builds a simple graph, rejecting loops, duplicate edges and
    /// out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            list.push(normalize(u, v));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        Ok(Self::from_sorted(n, list))
    }

    fn from_sorted(n: usize, edges: Vec<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Self::from_sorted(n, edges)
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
    }

    /// `K_{a,b}` with the first `a` vertices on one side.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a)
            .flat_map(|u| (a..a + b).map(move |v| (u, v)))
            .collect();
        Self::from_sorted(a + b, edges)
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Self::new(10, edges).expect("petersen graph is simple")
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted, normalised edge list.
    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Sorted neighbour list.
    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Position of an edge in [`Graph::edges`].
    pub fn edge_index(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.edges.binary_search(&normalize(u, v)).ok()
    }

    /// Spanning subgraph keeping the edges accepted by `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(Vertex, Vertex) -> bool) -> Graph {
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|&(u, v)| keep(u, v))
            .collect();
        Self::from_sorted(self.n, edges)
    }

    /// Induced subgraph on `vertices`; vertex `i` of the result is
    /// `vertices[i]`.
    pub fn induced(&self, vertices: &[Vertex]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        Graph::new(vertices.len(), edges).expect("induced subgraph of a simple graph")
    }

    /// Whether `vertices` induces a connected subgraph. The empty set is
    /// not connected.
    pub fn is_connected_subset(&self, vertices: &[Vertex]) -> bool {
        let Some(&start) = vertices.first() else {
            return false;
        };
        let mut inside = vec![false; self.n];
        for &v in vertices {
            inside[v] = true;
        }
        let mut seen = vec![false; self.n];
        seen[start] = true;
        let mut stack = vec![start];
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        let distinct = {
            let mut s = vertices.to_vec();
            s.sort_unstable();
            s.dedup();
            s.len()
        };
        count == distinct
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.is_connected_subset(&(0..self.n).collect::<Vec<_>>())
    }

    /// Whether some edge joins a vertex of `a` to a vertex of `b`.
    pub fn sets_adjacent(&self, a: &[Vertex], b: &[Vertex]) -> bool {
        a.iter()
            .any(|&u| b.iter().any(|&v| self.has_edge(u, v)))
    }

    /// Whether the graph has any cycle.
    pub fn has_cycle(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(u, v) in &self.edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a == b {
                return true;
            }
            parent[a] = b;
        }
        false
    }

    /// Adjacency bitmasks, for graphs with at most 64 vertices.
    pub fn adjacency_masks(&self) -> Vec<u64> {
        assert!(self.n <= 64, "bitmask view needs at most 64 vertices");
        self.adj
            .iter()
            .map(|a| a.iter().fold(0u64, |m, &w| m | (1 << w)))
            .collect()
    }
}

impl fmt::Display for Graph {
    /// Writes the plain text edge-list format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n, self.edges.len())?;
        for &(u, v) in &self.edges {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    #[serde(rename = "R")]
    Red,
    #[serde(rename = "B")]
    Blue,
}

impl Color {
    #[inline]
    pub fn is_red(self) -> bool {
        self == Color::Red
    }

    #[inline]
    pub fn swapped(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Color::Red => 'R',
            Color::Blue => 'B',
        }
    }
}

/// A simple graph whose every edge is Red or Blue.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ColoredRepr", into = "ColoredRepr")]
pub struct ColoredGraph {
    graph: Graph,
    /// Aligned with `graph.edges()`.
    colors: Vec<Color>,
}

#[derive(Serialize, Deserialize)]
struct ColoredRepr {
    vertex_count: usize,
    edges: Vec<(Vertex, Vertex, Color)>,
}

impl TryFrom<ColoredRepr> for ColoredGraph {
    type Error = Error;

    fn try_from(r: ColoredRepr) -> Result<Self> {
        ColoredGraph::new(r.vertex_count, r.edges)
    }
}

impl From<ColoredGraph> for ColoredRepr {
    fn from(g: ColoredGraph) -> Self {
        ColoredRepr {
            vertex_count: g.vertex_count(),
            edges: g.colored_edges().collect(),
        }
    }
}

impl ColoredGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex, Color)>) -> Result<Self> {
        let mut list: Vec<(Edge, Color)> = edges
            .into_iter()
            .map(|(u, v, c)| (normalize(u, v), c))
            .collect();
        list.sort_unstable();
        let graph = Graph::new(n, list.iter().map(|&(e, _)| e))?;
        let colors = list.into_iter().map(|(_, c)| c).collect();
        Ok(ColoredGraph { graph, colors })
    }

    /// Colours every edge of `graph` with `color_of(u, v)` (`u < v`).
    pub fn from_graph(graph: Graph, mut color_of: impl FnMut(Vertex, Vertex) -> Color) -> Self {
        let colors = graph.edges().iter().map(|&(u, v)| color_of(u, v)).collect();
        ColoredGraph { graph, colors }
    }

    pub fn monochromatic(graph: Graph, color: Color) -> Self {
        Self::from_graph(graph, |_, _| color)
    }

    #[inline]
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn color(&self, u: Vertex, v: Vertex) -> Option<Color> {
        self.graph.edge_index(u, v).map(|i| self.colors[i])
    }

    pub fn colored_edges(&self) -> impl Iterator<Item = (Vertex, Vertex, Color)> + '_ {
        self.graph
            .edges()
            .iter()
            .zip(&self.colors)
            .map(|(&(u, v), &c)| (u, v, c))
    }

    pub fn colored_neighbors(&self, v: Vertex) -> impl Iterator<Item = (Vertex, Color)> + '_ {
        self.graph
            .neighbors(v)
            .iter()
            .map(move |&w| (w, self.color(v, w).expect("neighbour edge exists")))
    }

    pub fn red_count(&self) -> usize {
        self.colors.iter().filter(|c| c.is_red()).count()
    }

    pub fn blue_count(&self) -> usize {
        self.edge_count() - self.red_count()
    }

    /// Spanning subgraph keeping the edges accepted by `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(Vertex, Vertex, Color) -> bool) -> ColoredGraph {
        let edges: Vec<_> = self.colored_edges().filter(|&(u, v, c)| keep(u, v, c)).collect();
        ColoredGraph::new(self.vertex_count(), edges).expect("subgraph of a simple graph")
    }

    /// Returns a copy with `extra` vertices appended and `edges` added.
    pub fn extended(
        &self,
        extra: usize,
        edges: impl IntoIterator<Item = (Vertex, Vertex, Color)>,
    ) -> Result<ColoredGraph> {
        ColoredGraph::new(
            self.vertex_count() + extra,
            self.colored_edges().chain(edges),
        )
    }

    /// Induced coloured subgraph; vertex `i` of the result is `vertices[i]`.
    pub fn induced(&self, vertices: &[Vertex]) -> ColoredGraph {
        let mut edges = Vec::new();
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if let Some(c) = self.color(a, b) {
                    edges.push((i, j, c));
                }
            }
        }
        ColoredGraph::new(vertices.len(), edges).expect("induced subgraph of a simple graph")
    }

    pub fn swap_colors(&self) -> ColoredGraph {
        ColoredGraph {
            graph: self.graph.clone(),
            colors: self.colors.iter().map(|c| c.swapped()).collect(),
        }
    }
}

impl fmt::Display for ColoredGraph {
    /// Writes the coloured text edge-list format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.vertex_count(), self.edge_count())?;
        for (u, v, c) in self.colored_edges() {
            writeln!(f, "{u} {v} {}", c.letter())?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    X,
    Y,
}

impl Side {
    #[inline]
    pub fn flip(self) -> Side {
        match self {
            Side::X => Side::Y,
            Side::Y => Side::X,
        }
    }

    /// `flip` when `odd` holds.
    #[inline]
    pub fn flip_if(self, odd: bool) -> Side {
        if odd {
            self.flip()
        } else {
            self
        }
    }
}

/// A proper 2-colouring of a plain graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartition {
    pub side: Vec<Side>,
}

impl Bipartition {
    /// Whether every edge of `g` crosses the partition.
    pub fn is_proper_for(&self, g: &Graph) -> bool {
        self.side.len() == g.vertex_count()
            && g.edges().iter().all(|&(u, v)| self.side[u] != self.side[v])
    }
}

/// An odd cycle given as its vertex sequence (closing edge implicit).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddCycle {
    pub cycle: Vec<Vertex>,
}

impl OddCycle {
    /// Whether this is a simple cycle of odd length in `g`.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let k = self.cycle.len();
        if k < 3 || k.is_multiple_of(2) {
            return false;
        }
        let mut seen = self.cycle.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == k && (0..k).all(|i| g.has_edge(self.cycle[i], self.cycle[(i + 1) % k]))
    }
}

/// Breadth-first 2-colouring. Returns a proper bipartition, or an odd
/// cycle reconstructed from the BFS tree at the first conflicting edge.
pub fn is_bipartite(g: &Graph) -> std::result::Result<Bipartition, OddCycle> {
    let n = g.vertex_count();
    let mut side: Vec<Option<Side>> = vec![None; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(Side::X);
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            let su = side[u].expect("queued vertices are coloured");
            for &w in g.neighbors(u) {
                match side[w] {
                    None => {
                        side[w] = Some(su.flip());
                        parent[w] = u;
                        depth[w] = depth[u] + 1;
                        queue.push_back(w);
                    }
                    Some(sw) if sw == su => {
                        return Err(odd_cycle_from_tree(u, w, &parent, &depth));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(Bipartition {
        side: side.into_iter().map(|s| s.expect("all coloured")).collect(),
    })
}

fn odd_cycle_from_tree(u: Vertex, w: Vertex, parent: &[usize], depth: &[usize]) -> OddCycle {
    let (mut a, mut b) = (u, w);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    // `left` and `right` both end at the common ancestor.
    right.pop();
    right.reverse();
    left.extend(right);
    OddCycle { cycle: left }
}

/// Replaces every Blue edge by a path of length two through a fresh vertex.
/// Fresh vertices are numbered `n, n+1, ...` in edge order.
pub fn subdivide_blue_once(cg: &ColoredGraph) -> Graph {
    let n = cg.vertex_count();
    let mut next = n;
    let mut edges = Vec::with_capacity(cg.red_count() + 2 * cg.blue_count());
    for (u, v, c) in cg.colored_edges() {
        match c {
            Color::Red => edges.push((u, v)),
            Color::Blue => {
                edges.push((u, next));
                edges.push((next, v));
                next += 1;
            }
        }
    }
    Graph::new(next, edges).expect("subdivision of a simple graph is simple")
}
