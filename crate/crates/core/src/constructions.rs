//! Seeded random graphs and the extremal constructions.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Color, ColoredGraph, Graph, Vertex};
use crate::minor::MinorModel;

/// A 64-bit seed. Equal seeds give bit-identical samples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seed(pub u64);

impl Seed {
    /// An independent generator for stream `stream` of this seed.
    pub fn rng(self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.0);
        rng.set_stream(stream);
        rng
    }

    /// Seed of trial `trial`, independent of how many trials run.
    pub fn derive(self, trial: u64) -> Seed {
        Seed(self.rng(trial).next_u64())
    }
}

/// Index of the pair `u < v` in the lexicographic list of all pairs.
fn pair_index(n: usize, u: usize, v: usize) -> u64 {
    (u * n - u * (u + 1) / 2 + (v - u - 1)) as u64
}

/// `G(n, p)`. Pair `(u, v)` is decided by its own stream of the seed, so
/// the result does not depend on the order pairs are visited in.
pub fn random_graph(n: usize, p: f64, seed: Seed) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if seed.rng(pair_index(n, u, v)).gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("pairs are distinct")
}

/// Colours every edge of `g` Red with probability `red`, one stream per
/// edge.
pub fn random_coloring(g: &Graph, red: f64, seed: Seed) -> ColoredGraph {
    let n = g.vertex_count() as u64;
    ColoredGraph::from_graph(g.clone(), |u, v| {
        let stream = (1 << 40) + u as u64 * n + v as u64;
        if seed.rng(stream).gen::<f64>() < red {
            Color::Red
        } else {
            Color::Blue
        }
    })
}

/// `K_n` with every non-edge of `h` subdivided once, and the natural
/// `K_n` model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GhConstruction {
    pub graph: Graph,
    /// The original vertices, which keep their labels `0..n`.
    pub branch: Vec<Vertex>,
    /// Subdivision vertex of each non-edge `(i, j)`, `i < j`, in
    /// lexicographic order; numbered from `n` upwards.
    pub subdivided: Vec<((Vertex, Vertex), Vertex)>,
}

impl GhConstruction {
    /// The model whose part `i` is `v_i` plus the subdivision vertices of
    /// the non-edges `(i, j)` with `j > i`.
    pub fn model(&self) -> MinorModel {
        let mut parts: Vec<Vec<Vertex>> = self.branch.iter().map(|&v| vec![v]).collect();
        for &((i, _), mid) in &self.subdivided {
            parts[i].push(mid);
        }
        MinorModel::new(self.graph.clone(), parts).expect("the natural parts form a model")
    }
}

pub fn build_gh(h: &Graph) -> GhConstruction {
    let n = h.vertex_count();
    let mut edges = Vec::new();
    let mut subdivided = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if h.has_edge(i, j) {
                edges.push((i, j));
            } else {
                let mid = n + subdivided.len();
                edges.push((i, mid));
                edges.push((mid, j));
                subdivided.push(((i, j), mid));
            }
        }
    }
    GhConstruction {
        graph: Graph::new(n + subdivided.len(), edges).expect("construction is simple"),
        branch: (0..n).collect(),
        subdivided,
    }
}

/// A random minimised `K_k` model: each part is a random tree on 1 to
/// `max_part` vertices, joined to every other part by exactly one edge
/// between random endpoints.
pub fn random_minimized_model(k: usize, max_part: usize, seed: Seed) -> MinorModel {
    assert!(max_part >= 1);
    let mut rng = seed.rng(0);
    let mut parts = Vec::with_capacity(k);
    let mut edges = Vec::new();
    let mut next = 0;
    for _ in 0..k {
        let size = rng.gen_range(1..=max_part);
        let part: Vec<Vertex> = (next..next + size).collect();
        for (idx, &v) in part.iter().enumerate().skip(1) {
            edges.push((part[rng.gen_range(0..idx)], v));
        }
        next += size;
        parts.push(part);
    }
    for i in 0..k {
        for j in i + 1..k {
            let a = parts[i][rng.gen_range(0..parts[i].len())];
            let b = parts[j][rng.gen_range(0..parts[j].len())];
            edges.push((a, b));
        }
    }
    let host = Graph::new(next, edges).expect("trees and single cross edges are simple");
    let roots = parts.iter().map(|p| p[rng.gen_range(0..p.len())]).collect();
    MinorModel::with_roots(host, parts, roots).expect("parts are disjoint trees")
}

/// `per_s[s] = t + C(s,2) + C(t-s,2)`: the fewest vertices of a complete
/// bipartite graph holding a `TK_t` with `s` branch vertices on one side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TkMinOrder {
    pub t: u64,
    pub per_s: Vec<u64>,
    pub min_order: u64,
}

fn choose2(k: u64) -> u64 {
    k * k.saturating_sub(1) / 2
}

pub fn bipartite_tk_min_order(t: u64) -> Result<TkMinOrder> {
    if t == 0 {
        return Err(Error::InvalidArgument("t must be at least 1".into()));
    }
    let per_s: Vec<u64> = (0..=t).map(|s| t + choose2(s) + choose2(t - s)).collect();
    let min_order = *per_s.iter().min().expect("t + 1 entries");
    Ok(TkMinOrder { t, per_s, min_order })
}

/// `K_{ceil(t^2/4)}` together with the reasons no bipartite subgraph of it
/// contains a `TK_t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologicalLowerBound {
    pub t: u64,
    pub graph: Graph,
    /// `tcl` of the complete host, equal to its order.
    pub host_tcl: u64,
    pub min_order: u64,
    /// Largest `tcl` over bipartite subgraphs, when small enough to search.
    pub exhaustive_max_bipartite_tcl: Option<u64>,
}

impl TopologicalLowerBound {
    pub fn holds(&self) -> bool {
        self.host_tcl < self.min_order
            && self.exhaustive_max_bipartite_tcl.is_none_or(|m| m < self.t)
    }
}

/// Largest `t` for which the exhaustive check runs.
pub const EXHAUSTIVE_LB_T: u64 = 5;

pub fn topological_lb_construction(t: u64) -> Result<TopologicalLowerBound> {
    if t < 2 {
        return Err(Error::InvalidArgument("t must be at least 2".into()));
    }
    let order = (t * t).div_ceil(4);
    let graph = Graph::complete(order as usize);
    let min_order = bipartite_tk_min_order(t)?.min_order;
    let exhaustive_max_bipartite_tcl = if t <= EXHAUSTIVE_LB_T {
        Some(crate::oracles::max_bipartite_tcl(&graph)?.value as u64)
    } else {
        None
    };
    Ok(TopologicalLowerBound {
        t,
        graph,
        host_tcl: order,
        min_order,
        exhaustive_max_bipartite_tcl,
    })
}
