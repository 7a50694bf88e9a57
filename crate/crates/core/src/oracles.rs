//! Exact brute-force graph parameters for small instances.
//!
//! These are the reference values the constructive algorithms are checked
//! against. They share no code with the algorithms beyond [`Graph`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Bipartition, Graph, Side, Vertex};

/// Largest graph the exhaustive Hadwiger search accepts.
pub const HADWIGER_LIMIT: usize = 10;
/// Largest graph the topological clique search accepts.
pub const TCL_LIMIT: usize = 9;

fn guard(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::InstanceTooLarge { size: n, limit })
    } else {
        Ok(())
    }
}

/// Trivial lower bound: 0 for the empty graph, 1 without edges, 2 for a
/// forest with an edge, 3 when there is a cycle. It is exact below 3 for
/// both minors and topological minors.
fn small_bound(g: &Graph) -> usize {
    match (g.vertex_count(), g.edge_count()) {
        (0, _) => 0,
        (_, 0) => 1,
        _ if g.has_cycle() => 3,
        _ => 2,
    }
}

/// Exact Hadwiger number by exhaustive search over clique models.
/// Refuses graphs with more than [`HADWIGER_LIMIT`] vertices.
pub fn hadwiger_exhaustive(g: &Graph) -> Result<usize> {
    guard(g.vertex_count(), HADWIGER_LIMIT)?;
    let search = ModelSearch::new(g);
    let mut t = small_bound(g);
    while t < g.vertex_count() && search.has_clique_model(t + 1) {
        t += 1;
    }
    Ok(t)
}

/// Exact Hadwiger number. Vertices of degree at most two are first removed
/// or suppressed, which preserves the answer whenever it is at least 4;
/// answers up to 3 come from [`small_bound`]. The remaining kernel must have
/// at most [`HADWIGER_LIMIT`] vertices.
pub fn hadwiger_oracle(g: &Graph) -> Result<usize> {
    let base = small_bound(g);
    let kernel = reduce_low_degree(g);
    if kernel.vertex_count() > HADWIGER_LIMIT {
        return Err(Error::InstanceTooLarge {
            size: kernel.vertex_count(),
            limit: HADWIGER_LIMIT,
        });
    }
    Ok(base.max(hadwiger_exhaustive(&kernel)?))
}

/// Repeatedly deletes vertices of degree at most one, deletes degree-two
/// vertices whose neighbours are adjacent, and suppresses the remaining
/// degree-two vertices. Every step takes a minor, and none lowers a
/// Hadwiger number of 4 or more.
pub fn reduce_low_degree(g: &Graph) -> Graph {
    let n = g.vertex_count();
    let mut adj: Vec<std::collections::BTreeSet<Vertex>> =
        (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut alive = vec![true; n];
    let mut changed = true;
    while changed {
        changed = false;
        for v in 0..n {
            if !alive[v] || adj[v].len() > 2 {
                continue;
            }
            let nbrs: Vec<Vertex> = adj[v].iter().copied().collect();
            for &w in &nbrs {
                adj[w].remove(&v);
            }
            adj[v].clear();
            alive[v] = false;
            if let [a, b] = nbrs[..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
            changed = true;
        }
    }
    let kept: Vec<Vertex> = (0..n).filter(|&v| alive[v]).collect();
    let mut index = vec![usize::MAX; n];
    for (i, &v) in kept.iter().enumerate() {
        index[v] = i;
    }
    let edges = kept.iter().flat_map(|&v| {
        let index = &index;
        adj[v].iter().filter(move |&&w| v < w).map(move |&w| (index[v], index[w]))
    });
    Graph::new(kept.len(), edges.collect::<Vec<_>>()).expect("reduction keeps the graph simple")
}

/// Clique model search on bitmasks. Parts are chosen in increasing order of
/// their smallest vertex, each a connected set adjacent to all earlier ones.
struct ModelSearch {
    n: usize,
    /// Connected vertex sets grouped by smallest vertex, smallest sets first.
    connected_by_min: Vec<Vec<u32>>,
    /// Closed neighbourhood union (open neighbourhood suffices) per set.
    nbr: Vec<u32>,
}

impl ModelSearch {
    fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        let adj: Vec<u32> = g.adjacency_masks().into_iter().map(|m| m as u32).collect();
        let full = 1usize << n;
        let mut nbr = vec![0u32; full];
        for mask in 1..full {
            let low = mask.trailing_zeros() as usize;
            nbr[mask] = nbr[mask & (mask - 1)] | adj[low];
        }
        let mut connected_by_min = vec![Vec::new(); n];
        for mask in 1..full as u32 {
            let low = mask.trailing_zeros();
            // grow from the lowest vertex inside the mask
            let mut reach = 1u32 << low;
            loop {
                let next = reach | (nbr[reach as usize] & mask);
                if next == reach {
                    break;
                }
                reach = next;
            }
            if reach == mask {
                connected_by_min[low as usize].push(mask);
            }
        }
        for sets in &mut connected_by_min {
            sets.sort_by_key(|m| (m.count_ones(), *m));
        }
        ModelSearch {
            n,
            connected_by_min,
            nbr,
        }
    }

    fn has_clique_model(&self, t: usize) -> bool {
        if t <= 1 {
            return t == 0 || self.n >= 1;
        }
        let mut chosen = Vec::with_capacity(t);
        self.extend(&mut chosen, 0, 0, t)
    }

    fn extend(&self, chosen: &mut Vec<u32>, used: u32, from: usize, t: usize) -> bool {
        let need = t - chosen.len();
        if need == 0 {
            return true;
        }
        let all = if self.n == 32 { u32::MAX } else { (1u32 << self.n) - 1 };
        let avail = all & !used & !((1u32 << from) - 1);
        if (avail.count_ones() as usize) < need {
            return false;
        }
        if chosen.iter().any(|&p| self.nbr[p as usize] & avail == 0) {
            return false;
        }
        for v in from..self.n {
            if avail >> v & 1 == 0 {
                continue;
            }
            if ((avail >> v).count_ones() as usize) < need {
                break;
            }
            for &set in &self.connected_by_min[v] {
                if set & !avail != 0 {
                    continue;
                }
                if chosen.iter().all(|&p| self.nbr[p as usize] & set != 0) {
                    chosen.push(set);
                    if self.extend(chosen, used | set, v + 1, t) {
                        return true;
                    }
                    chosen.pop();
                }
            }
        }
        false
    }
}

/// Exact topological clique number: the largest `t` such that some
/// subdivision of `K_t` is a subgraph. Refuses graphs with more than
/// [`TCL_LIMIT`] vertices.
pub fn tcl_oracle(g: &Graph) -> Result<usize> {
    guard(g.vertex_count(), TCL_LIMIT)?;
    let mut t = small_bound(g);
    while t < g.vertex_count() && has_topological_clique(g, t + 1) {
        t += 1;
    }
    Ok(t)
}

/// Whether `g` contains a subdivision of `K_t`, by trying every branch set
/// and backtracking over internally disjoint path systems. Adjacent branch
/// pairs always use their edge, which never hurts.
pub fn has_topological_clique(g: &Graph, t: usize) -> bool {
    let n = g.vertex_count();
    if t > n {
        return false;
    }
    let candidates: Vec<Vertex> = (0..n).filter(|&v| g.degree(v) + 1 >= t).collect();
    let mut branch = Vec::with_capacity(t);
    choose_branch(g, t, &candidates, 0, &mut branch)
}

fn choose_branch(g: &Graph, t: usize, cand: &[Vertex], from: usize, branch: &mut Vec<Vertex>) -> bool {
    if branch.len() == t {
        return route_branch_set(g, branch);
    }
    for i in from..cand.len() {
        if cand.len() - i < t - branch.len() {
            break;
        }
        branch.push(cand[i]);
        if choose_branch(g, t, cand, i + 1, branch) {
            return true;
        }
        branch.pop();
    }
    false
}

fn route_branch_set(g: &Graph, branch: &[Vertex]) -> bool {
    let n = g.vertex_count();
    let mut blocked = vec![false; n];
    for &b in branch {
        blocked[b] = true;
    }
    let mut pending = Vec::new();
    for (i, &a) in branch.iter().enumerate() {
        for &b in &branch[i + 1..] {
            if !g.has_edge(a, b) {
                pending.push((a, b));
            }
        }
    }
    if pending.len() > n - branch.len() {
        return false;
    }
    route_pairs(g, &pending, &mut blocked)
}

fn route_pairs(g: &Graph, pending: &[(Vertex, Vertex)], blocked: &mut [bool]) -> bool {
    let Some((&(a, b), rest)) = pending.split_first() else {
        return true;
    };
    let mut path = Vec::new();
    route_from(g, a, b, rest, blocked, &mut path)
}

/// Extends a path from `cur` towards `target` through unblocked vertices;
/// on reaching it, routes the remaining pairs.
fn route_from(
    g: &Graph,
    cur: Vertex,
    target: Vertex,
    rest: &[(Vertex, Vertex)],
    blocked: &mut [bool],
    path: &mut Vec<Vertex>,
) -> bool {
    for &w in g.neighbors(cur) {
        if w == target {
            if !path.is_empty() && route_pairs(g, rest, blocked) {
                return true;
            }
        } else if !blocked[w] {
            blocked[w] = true;
            path.push(w);
            let found = route_from(g, w, target, rest, blocked, path);
            path.pop();
            blocked[w] = false;
            if found {
                return true;
            }
        }
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteOptimum {
    pub value: usize,
    /// The bipartition whose crossing subgraph attains `value`.
    pub witness: Bipartition,
}

fn max_over_bipartitions(
    g: &Graph,
    limit: usize,
    param: impl Fn(&Graph) -> Result<usize>,
) -> Result<BipartiteOptimum> {
    let n = g.vertex_count();
    guard(n, limit)?;
    let mut best: Option<(usize, u32)> = None;
    // vertex 0 stays on side X
    for mask in 0u32..(1 << n.saturating_sub(1)) {
        let side = |v: Vertex| v > 0 && (mask >> (v - 1)) & 1 == 1;
        let crossing = g.filter_edges(|u, v| side(u) != side(v));
        let value = param(&crossing)?;
        if best.is_none_or(|(b, _)| value > b) {
            best = Some((value, mask));
        }
    }
    let (value, mask) = best.unwrap_or((0, 0));
    let side = (0..n)
        .map(|v| if v > 0 && (mask >> (v - 1)) & 1 == 1 { Side::Y } else { Side::X })
        .collect();
    Ok(BipartiteOptimum {
        value,
        witness: Bipartition { side },
    })
}

/// Largest Hadwiger number of a bipartite subgraph. Every bipartite
/// subgraph lies inside the crossing subgraph of its own bipartition, and
/// minors are monotone under subgraphs, so maximising over the crossing
/// subgraphs of all bipartitions is exact.
pub fn max_bipartite_hadwiger(g: &Graph) -> Result<BipartiteOptimum> {
    max_over_bipartitions(g, HADWIGER_LIMIT, hadwiger_oracle)
}

/// Largest topological clique number of a bipartite subgraph.
pub fn max_bipartite_tcl(g: &Graph) -> Result<BipartiteOptimum> {
    max_over_bipartitions(g, TCL_LIMIT, tcl_oracle)
}

/// Largest Hadwiger number of a bipartite subgraph of `G(h)`, the complete
/// graph on `V(h)` with every non-edge of `h` subdivided once.
///
/// A bipartite subgraph of `G(h)` induces a bipartition `X` of the branch
/// vertices. Its direct edges cross `X`, its complete subdivided paths stay
/// inside a side, and anything else is a pendant edge. Pendant edges and
/// subdivisions only matter for Hadwiger numbers below 3, so the answer is
/// the maximum of 2 and, over all `X`, the Hadwiger number of the graph on
/// `V(h)` with the `h`-edges crossing `X` and the non-edges inside a side.
pub fn max_bipartite_hadwiger_gh(h: &Graph) -> Result<(usize, Vec<Side>)> {
    let n = h.vertex_count();
    guard(n, HADWIGER_LIMIT)?;
    if n < 2 {
        return Ok((n, vec![Side::X; n]));
    }
    let complete = Graph::complete(n);
    let mut best = (2usize, 0u32);
    for mask in 0u32..(1 << (n - 1)) {
        let side = |v: Vertex| v > 0 && (mask >> (v - 1)) & 1 == 1;
        let f = complete.filter_edges(|u, v| h.has_edge(u, v) == (side(u) != side(v)));
        let value = hadwiger_exhaustive(&f)?;
        if value > best.0 {
            best = (value, mask);
        }
    }
    let sides = (0..n)
        .map(|v| if v > 0 && (best.1 >> (v - 1)) & 1 == 1 { Side::Y } else { Side::X })
        .collect();
    Ok((best.0, sides))
}
