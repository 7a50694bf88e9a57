//! RB-bipartite recognition, the half-edge extractor and the
//! vertex-addition step shared by the projector and the builders.
//!
//! A 2-coloured graph is RB-bipartite when every cycle uses an even number
//! of Red edges. Equivalently its vertices split into sides `X`, `Y` with
//! every Red edge crossing and every Blue edge staying within a side, which
//! is exactly balance of the signed graph with Red as the negative sign.

use std::collections::{BTreeMap, VecDeque};
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::cycles::for_each_cycle;
use crate::error::{Error, Result};
use crate::graph::{Color, ColoredGraph, Side, Vertex};

/// Side assignment for a set of vertices. Vertices outside the domain are
/// `None`; a partition is valid for a coloured graph when every edge has
/// both endpoints placed and respects its colour.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<String, Side>", into = "BTreeMap<String, Side>")]
pub struct RbBipartition {
    side: Vec<Option<Side>>,
}

// JSON object keys are strings, so the map form keys vertices by their
// decimal index.
impl TryFrom<BTreeMap<String, Side>> for RbBipartition {
    type Error = std::num::ParseIntError;

    fn try_from(map: BTreeMap<String, Side>) -> std::result::Result<Self, Self::Error> {
        let mut p = RbBipartition::default();
        for (v, s) in map {
            p.set(v.parse()?, s);
        }
        Ok(p)
    }
}

impl From<RbBipartition> for BTreeMap<String, Side> {
    fn from(p: RbBipartition) -> Self {
        p.placed().map(|(v, s)| (v.to_string(), s)).collect()
    }
}

impl RbBipartition {
    pub fn total(side: Vec<Side>) -> Self {
        RbBipartition {
            side: side.into_iter().map(Some).collect(),
        }
    }

    /// An empty assignment over `n` vertices.
    pub fn unplaced(n: usize) -> Self {
        RbBipartition {
            side: vec![None; n],
        }
    }

    #[inline]
    pub fn side(&self, v: Vertex) -> Option<Side> {
        self.side.get(v).copied().flatten()
    }

    pub fn set(&mut self, v: Vertex, s: Side) {
        if self.side.len() <= v {
            self.side.resize(v + 1, None);
        }
        self.side[v] = Some(s);
    }

    pub fn placed(&self) -> impl Iterator<Item = (Vertex, Side)> + '_ {
        self.side
            .iter()
            .enumerate()
            .filter_map(|(v, s)| s.map(|s| (v, s)))
    }

    /// Whether an edge of colour `c` between `u` and `v` respects the sides.
    pub fn allows(&self, u: Vertex, v: Vertex, c: Color) -> bool {
        match (self.side(u), self.side(v)) {
            (Some(a), Some(b)) => (a != b) == c.is_red(),
            _ => false,
        }
    }

    pub fn is_valid_for(&self, cg: &ColoredGraph) -> bool {
        cg.colored_edges().all(|(u, v, c)| self.allows(u, v, c))
    }

    /// Whether an `x`-`y` path must use an odd number of Red edges to keep
    /// the partition valid.
    pub fn needs_r_odd(&self, x: Vertex, y: Vertex) -> bool {
        self.side(x) != self.side(y)
    }
}

/// A closed walk using an odd number of Red edges. The walk lists its
/// vertices once; the closing step from the last vertex back to the first
/// is implicit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ROddCertificate {
    pub walk: Vec<Vertex>,
    pub red_count: usize,
}

impl ROddCertificate {
    /// Counts Red traversals of a closed walk, or `None` if some step is
    /// not an edge.
    pub fn count_red(cg: &ColoredGraph, walk: &[Vertex]) -> Option<usize> {
        let k = walk.len();
        if k < 2 {
            return None;
        }
        let mut reds = 0;
        for i in 0..k {
            match cg.color(walk[i], walk[(i + 1) % k])? {
                Color::Red => reds += 1,
                Color::Blue => {}
            }
        }
        Some(reds)
    }

    pub fn is_valid_for(&self, cg: &ColoredGraph) -> bool {
        self.red_count % 2 == 1 && Self::count_red(cg, &self.walk) == Some(self.red_count)
    }
}

/// JSON form of either certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RbCertificate {
    Partition { side: RbBipartition },
    ROdd { walk: Vec<Vertex>, red_count: usize },
}

impl From<std::result::Result<RbBipartition, ROddCertificate>> for RbCertificate {
    fn from(r: std::result::Result<RbBipartition, ROddCertificate>) -> Self {
        match r {
            Ok(side) => RbCertificate::Partition { side },
            Err(c) => RbCertificate::ROdd {
                walk: c.walk,
                red_count: c.red_count,
            },
        }
    }
}

/// Union-find where each vertex stores the parity of its label relative to
/// its parent.
struct ParityUnionFind {
    parent: Vec<usize>,
    parity: Vec<bool>,
    size: Vec<usize>,
}

impl ParityUnionFind {
    fn new(n: usize) -> Self {
        ParityUnionFind {
            parent: (0..n).collect(),
            parity: vec![false; n],
            size: vec![1; n],
        }
    }

    /// Root of `v` and the parity of `v` relative to it.
    fn find(&mut self, v: usize) -> (usize, bool) {
        let p = self.parent[v];
        if p == v {
            return (v, false);
        }
        let (root, up) = self.find(p);
        self.parity[v] ^= up;
        self.parent[v] = root;
        (root, self.parity[v])
    }

    /// Records `label(u) ^ label(v) == differ`. Returns `false` on conflict.
    fn union(&mut self, u: usize, v: usize, differ: bool) -> Option<bool> {
        let (ru, pu) = self.find(u);
        let (rv, pv) = self.find(v);
        if ru == rv {
            return Some((pu ^ pv) == differ);
        }
        let (big, small) = if self.size[ru] >= self.size[rv] { (ru, rv) } else { (rv, ru) };
        self.parent[small] = big;
        self.parity[small] = pu ^ pv ^ differ;
        self.size[big] += self.size[small];
        None
    }
}

/// Decides RB-bipartiteness with a certificate either way.
///
/// Edges are processed in sorted order; Red edges force their endpoints
/// apart, Blue edges force them together. The first edge whose constraint
/// contradicts the spanning forest built so far closes an R-odd cycle with
/// the forest path between its endpoints.
pub fn rb_certify(cg: &ColoredGraph) -> std::result::Result<RbBipartition, ROddCertificate> {
    let n = cg.vertex_count();
    let mut uf = ParityUnionFind::new(n);
    let mut forest: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for (u, v, c) in cg.colored_edges() {
        match uf.union(u, v, c.is_red()) {
            None => {
                forest[u].push(v);
                forest[v].push(u);
            }
            Some(true) => {}
            Some(false) => {
                let walk = forest_path(&forest, u, v);
                let red_count = ROddCertificate::count_red(cg, &walk)
                    .expect("forest path plus closing edge is a closed walk");
                return Err(ROddCertificate { walk, red_count });
            }
        }
    }
    let side = (0..n)
        .map(|v| if uf.find(v).1 { Side::Y } else { Side::X })
        .collect();
    Ok(RbBipartition::total(side))
}

fn forest_path(forest: &[Vec<Vertex>], from: Vertex, to: Vertex) -> Vec<Vertex> {
    let mut prev = vec![usize::MAX; forest.len()];
    prev[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &w in &forest[v] {
            if prev[w] == usize::MAX {
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = prev[cur];
        path.push(cur);
    }
    path.reverse();
    path
}

/// Brute-force reference: the first simple cycle with an odd number of Red
/// edges, by enumerating all cycles. Limited to 16 vertices.
pub fn brute_force_r_odd_cycle(cg: &ColoredGraph) -> Result<Option<Vec<Vertex>>> {
    for_each_cycle(cg.graph(), 16, |c| {
        let reds = (0..c.len())
            .filter(|&i| cg.color(c[i], c[(i + 1) % c.len()]) == Some(Color::Red))
            .count();
        if reds % 2 == 1 {
            ControlFlow::Break(c.to_vec())
        } else {
            ControlFlow::Continue(())
        }
    })
}

/// Output of [`rb_extract_half`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfExtraction {
    pub subgraph: ColoredGraph,
    pub partition: RbBipartition,
    /// `e_R(X,Y) - e_B(X,Y)` for the chosen partition.
    pub balance: i64,
}

/// Finds an RB-bipartite spanning subgraph with at least half the edges.
///
/// Vertices are placed in `order` by conditional expectations: each goes
/// to the side maximising Red-crossing minus Blue-crossing edges towards
/// the already placed vertices (ties to `X`). The expected contribution of
/// every undecided edge is zero-sum between the two choices, so the final
/// balance is at least `(e_R - e_B) / 2`, and keeping Blue edges within
/// sides plus Red edges across keeps `e_B + balance >= e/2` edges.
pub fn rb_extract_half(cg: &ColoredGraph, order: &[Vertex]) -> Result<HalfExtraction> {
    let n = cg.vertex_count();
    let mut seen = vec![false; n];
    if order.len() != n || order.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true)) {
        return Err(Error::InvalidArgument("order must be a permutation of the vertices".into()));
    }
    let mut side: Vec<Option<Side>> = vec![None; n];
    let mut balance = 0i64;
    for &v in order {
        // decided contribution to the balance for each choice of side
        let (mut as_x, mut as_y) = (0i64, 0i64);
        for (w, c) in cg.colored_neighbors(v) {
            let sign = if c.is_red() { 1 } else { -1 };
            match side[w] {
                Some(Side::X) => as_y += sign,
                Some(Side::Y) => as_x += sign,
                None => {}
            }
        }
        let (s, gain) = if as_y > as_x { (Side::Y, as_y) } else { (Side::X, as_x) };
        side[v] = Some(s);
        balance += gain;
    }
    let partition = RbBipartition { side };
    let subgraph = cg.filter_edges(|u, v, c| partition.allows(u, v, c));
    Ok(HalfExtraction {
        subgraph,
        partition,
        balance,
    })
}

/// Placement of a fresh vertex chosen by [`rb_add_vertex`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Placement {
    pub side: Side,
    pub kept: Vec<(Vertex, Color)>,
}

/// Places a fresh vertex next to a valid partition, keeping the incident
/// edges that agree with its side (Red to the other side, Blue to the same
/// side). The better side keeps at least half of `incident`; ties go to `X`.
pub fn rb_add_vertex(partition: &RbBipartition, incident: &[(Vertex, Color)]) -> Result<Placement> {
    let mut keep_x = Vec::new();
    let mut keep_y = Vec::new();
    for &(w, c) in incident {
        let sw = partition
            .side(w)
            .ok_or_else(|| Error::InvalidArgument(format!("neighbour {w} is not placed")))?;
        let target = sw.flip_if(c.is_red());
        if target == Side::X {
            keep_x.push((w, c));
        } else {
            keep_y.push((w, c));
        }
    }
    Ok(if keep_x.len() >= keep_y.len() {
        Placement { side: Side::X, kept: keep_x }
    } else {
        Placement { side: Side::Y, kept: keep_y }
    })
}

/// Appends the placed vertex as vertex `n` of `cg` with its kept edges.
pub fn apply_placement(
    cg: &ColoredGraph,
    partition: &RbBipartition,
    placement: &Placement,
) -> (ColoredGraph, RbBipartition) {
    let w = cg.vertex_count();
    let graph = cg
        .extended(1, placement.kept.iter().map(|&(v, c)| (w, v, c)))
        .expect("kept edges join distinct existing vertices");
    let mut p = partition.clone();
    p.set(w, placement.side);
    (graph, p)
}
