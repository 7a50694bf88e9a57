//! RB-bipartite topological cliques in 2-coloured complete graphs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{normalize, Color, ColoredGraph, Side, Vertex};
use crate::rb::{rb_add_vertex, rb_certify, RbBipartition};

use super::connector::{connect_pair, Connection};

fn choose2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

/// Host order the builder requires: `C(t+3, 2)`.
pub fn host_requirement(t: usize) -> usize {
    choose2(t + 3)
}

/// Host order the inductive argument needs: `2t + 2 + C(t+1, 2)`.
pub fn inductive_requirement(t: usize) -> usize {
    2 * t + 2 + choose2(t + 1)
}

/// Vertex budget of a `TK_t` built one branch vertex at a time.
pub fn vertex_budget(t: usize) -> usize {
    1 + choose2(t + 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchPath {
    pub a: Vertex,
    pub b: Vertex,
    /// From `a` to `b`.
    pub path: Vec<Vertex>,
    pub red_count: usize,
}

/// Branch vertices joined pairwise by internally disjoint paths, with an
/// RB-bipartition of the union of the paths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologicalModel {
    pub branch: Vec<Vertex>,
    pub paths: Vec<BranchPath>,
    pub partition: RbBipartition,
    /// Whether the model is a complete subgraph found by a failed
    /// connection rather than grown to the end.
    pub from_clique: bool,
    /// Whether every vertex used lies below [`inductive_requirement`].
    pub within_inductive_host: bool,
}

impl TopologicalModel {
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut vs: Vec<Vertex> = self.paths.iter().flat_map(|p| p.path.iter().copied()).collect();
        vs.extend(&self.branch);
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// The union of the paths, coloured as in `host`.
    pub fn subgraph(&self, host: &ColoredGraph) -> Result<ColoredGraph> {
        let mut edges = Vec::new();
        for p in &self.paths {
            for w in p.path.windows(2) {
                let c = host
                    .color(w[0], w[1])
                    .ok_or_else(|| Error::InvalidArgument(format!("({}, {}) is not a host edge", w[0], w[1])))?;
                edges.push((w[0], w[1], c));
            }
        }
        ColoredGraph::new(host.vertex_count(), edges)
    }

    /// Checks that this is a `TK_t` in `host` whose paths form an
    /// RB-bipartite graph under `partition`, within the vertex budget.
    pub fn validate(&self, host: &ColoredGraph, t: usize) -> std::result::Result<(), String> {
        let mut branch = self.branch.clone();
        branch.sort_unstable();
        branch.dedup();
        if branch.len() != t || self.branch.len() != t {
            return Err(format!("expected {t} distinct branch vertices"));
        }
        if self.paths.len() != choose2(t) {
            return Err(format!("expected {} paths, got {}", choose2(t), self.paths.len()));
        }
        let mut pairs: Vec<_> = self.paths.iter().map(|p| normalize(p.a, p.b)).collect();
        pairs.sort_unstable();
        pairs.dedup();
        if pairs.len() != self.paths.len() || pairs.iter().any(|&(a, b)| !branch.contains(&a) || !branch.contains(&b)) {
            return Err("paths do not join each branch pair exactly once".into());
        }
        let mut used = vec![false; host.vertex_count()];
        for &b in &branch {
            used[b] = true;
        }
        for p in &self.paths {
            if p.path.first() != Some(&p.a) || p.path.last() != Some(&p.b) {
                return Err(format!("path {:?} does not join {} and {}", p.path, p.a, p.b));
            }
            for &v in &p.path[1..p.path.len() - 1] {
                if v >= used.len() || std::mem::replace(&mut used[v], true) {
                    return Err(format!("internal vertex {v} is shared"));
                }
            }
        }
        let sub = self.subgraph(host).map_err(|e| e.to_string())?;
        for p in &self.paths {
            let reds = p.path.windows(2).filter(|w| sub.color(w[0], w[1]) == Some(Color::Red)).count();
            if reds != p.red_count {
                return Err(format!("wrong Red count on path {:?}", p.path));
            }
        }
        if !self.partition.is_valid_for(&sub) || rb_certify(&sub).is_err() {
            return Err("union of the paths is not RB-bipartite".into());
        }
        let count = self.vertices().len();
        if count > vertex_budget(t) {
            return Err(format!("{count} vertices exceed the budget {}", vertex_budget(t)));
        }
        Ok(())
    }
}

/// Copy of `cg` with the colour of every edge at `w` swapped.
fn swap_at(cg: &ColoredGraph, w: Vertex) -> ColoredGraph {
    ColoredGraph::from_graph(cg.graph().clone(), |u, v| {
        let c = cg.color(u, v).expect("edge of cg");
        if u == w || v == w { c.swapped() } else { c }
    })
}

/// Connects `w` to `v` by a path with an odd number of Red edges when the
/// sides differ. For same-side pairs the colours at `w` are swapped and
/// `w` moved across, which turns the requirement into an odd one; swapping
/// back changes only the first edge of the path, and the internal sides
/// are unaffected.
fn connect_from(
    host: &ColoredGraph,
    partition: &RbBipartition,
    w: Vertex,
    v: Vertex,
    pool: &[Vertex],
) -> Result<Connection> {
    if partition.needs_r_odd(w, v) {
        return connect_pair(partition, w, v, pool, host);
    }
    let swapped = swap_at(host, w);
    let mut moved = partition.clone();
    moved.set(w, partition.side(w).expect("w is placed").flip());
    connect_pair(&moved, w, v, pool, &swapped)
}

/// Grows an RB-bipartite `TK_t` in the 2-coloured complete graph `cg`.
///
/// Branch vertices are added one at a time, taking the smallest unused
/// vertex. The new vertex `w` is placed on the side keeping at least half
/// of its direct edges to the current branch vertices; every other branch
/// vertex is then reached through at most two unused vertices. If such a
/// connection is impossible, the unused vertices already form an
/// RB-bipartite complete graph, and `t` of them are returned instead.
pub fn rb_topological_clique(cg: &ColoredGraph, t: usize) -> Result<TopologicalModel> {
    let n = cg.vertex_count();
    if cg.edge_count() != choose2(n) {
        return Err(Error::InvalidArgument("host must be a complete graph".into()));
    }
    if t == 0 {
        return Err(Error::InvalidArgument("t must be at least 1".into()));
    }
    if n < host_requirement(t) {
        return Err(Error::HostTooSmall { needed: host_requirement(t), got: n });
    }
    let mut used = vec![false; n];
    let mut branch = vec![0];
    used[0] = true;
    let mut partition = RbBipartition::default();
    partition.set(0, Side::X);
    let mut paths: Vec<BranchPath> = Vec::new();

    while branch.len() < t {
        let w = (0..n).find(|&v| !used[v]).expect("host is large enough");
        used[w] = true;
        let incident: Vec<(Vertex, Color)> = branch
            .iter()
            .map(|&b| (b, cg.color(w, b).expect("complete host")))
            .collect();
        let placement = rb_add_vertex(&partition, &incident)?;
        partition.set(w, placement.side);
        let mut new_paths: Vec<BranchPath> = placement
            .kept
            .iter()
            .map(|&(b, c)| BranchPath {
                a: b,
                b: w,
                path: vec![b, w],
                red_count: usize::from(c.is_red()),
            })
            .collect();
        for &b in &branch {
            if placement.kept.iter().any(|&(k, _)| k == b) {
                continue;
            }
            let pool: Vec<Vertex> = (0..n).filter(|&v| !used[v]).collect();
            match connect_from(cg, &partition, w, b, &pool)? {
                Connection::Path { path, sides } => {
                    for (&v, &s) in path[1..path.len() - 1].iter().zip(&sides) {
                        used[v] = true;
                        partition.set(v, s);
                    }
                    let mut path = path;
                    path.reverse();
                    let red_count = path
                        .windows(2)
                        .filter(|e| cg.color(e[0], e[1]) == Some(Color::Red))
                        .count();
                    new_paths.push(BranchPath { a: b, b: w, path, red_count });
                }
                Connection::Clique { vertices, partition: local } => {
                    if vertices.len() < t {
                        return Err(Error::Internal(format!("pool of {} vertices ran short", vertices.len())));
                    }
                    return Ok(clique_model(cg, &vertices[..t], &local, t));
                }
            }
        }
        paths.extend(new_paths);
        branch.push(w);
    }
    paths.sort_by_key(|p| normalize(p.a, p.b));
    let mut model = TopologicalModel {
        branch,
        paths,
        partition,
        from_clique: false,
        within_inductive_host: false,
    };
    model.within_inductive_host = model.vertices().iter().all(|&v| v < inductive_requirement(t));
    Ok(model)
}

fn clique_model(cg: &ColoredGraph, vertices: &[Vertex], local: &RbBipartition, t: usize) -> TopologicalModel {
    let mut paths = Vec::new();
    for (i, &a) in vertices.iter().enumerate() {
        for &b in &vertices[i + 1..] {
            let red = cg.color(a, b) == Some(Color::Red);
            paths.push(BranchPath { a, b, path: vec![a, b], red_count: usize::from(red) });
        }
    }
    let mut partition = RbBipartition::default();
    for &v in vertices {
        partition.set(v, local.side(v).expect("witness covers its vertices"));
    }
    TopologicalModel {
        branch: vertices.to_vec(),
        paths,
        partition,
        from_clique: true,
        within_inductive_host: vertices.iter().all(|&v| v < inductive_requirement(t)),
    }
}
