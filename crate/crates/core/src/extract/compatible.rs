//! Compatible partitions: disjoint, pairwise adjacent vertex sets with no
//! connectivity requirement.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Largest graph the exact searches accept.
pub const EXACT_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompatiblePartition {
    pub parts: Vec<Vec<Vertex>>,
}

impl CompatiblePartition {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let mut seen = vec![false; g.vertex_count()];
        for p in &self.parts {
            if p.is_empty() {
                return false;
            }
            for &v in p {
                if v >= seen.len() || std::mem::replace(&mut seen[v], true) {
                    return false;
                }
            }
        }
        self.parts.iter().enumerate().all(|(i, a)| {
            self.parts[i + 1..].iter().all(|b| g.sets_adjacent(a, b))
        })
    }
}

fn mask_to_vec(mask: u32) -> Vec<Vertex> {
    (0..32).filter(|&v| mask >> v & 1 == 1).collect()
}

fn neighbourhoods(g: &Graph) -> Vec<u32> {
    let adj: Vec<u32> = g.adjacency_masks().into_iter().map(|m| m as u32).collect();
    let mut nbr = vec![0u32; 1 << g.vertex_count()];
    for mask in 1..nbr.len() {
        nbr[mask] = nbr[mask & (mask - 1)] | adj[mask.trailing_zeros() as usize];
    }
    nbr
}

/// Exact search for a compatible partition with exactly `m` parts.
///
/// Vertices are assigned to parts in order as restricted growth strings,
/// in lexicographic order; since leftover vertices can always join an
/// existing part, covering every vertex loses nothing.
pub fn find_compatible_partition(g: &Graph, m: usize) -> Result<Option<CompatiblePartition>> {
    let n = g.vertex_count();
    if n > EXACT_LIMIT {
        return Err(Error::InstanceTooLarge { size: n, limit: EXACT_LIMIT });
    }
    if m == 0 {
        return Ok(Some(CompatiblePartition { parts: Vec::new() }));
    }
    if m > n {
        return Ok(None);
    }
    let nbr = neighbourhoods(g);
    let mut parts = vec![0u32; m];
    let found = assign(&nbr, n, m, 0, 0, &mut parts);
    Ok(found.then(|| CompatiblePartition {
        parts: parts.into_iter().map(mask_to_vec).collect(),
    }))
}

fn assign(nbr: &[u32], n: usize, m: usize, v: usize, open: usize, parts: &mut [u32]) -> bool {
    if n - v < m - open {
        return false;
    }
    if v == n {
        return (0..m).all(|a| (a + 1..m).all(|b| nbr[parts[a] as usize] & parts[b] != 0));
    }
    for label in 0..(open + 1).min(m) {
        parts[label] |= 1 << v;
        let open = open.max(label + 1);
        if assign(nbr, n, m, v + 1, open, parts) {
            return true;
        }
        parts[label] &= !(1 << v);
    }
    false
}

/// The largest `m` with a compatible partition into `m` parts.
pub fn max_compatible_partition(g: &Graph) -> Result<CompatiblePartition> {
    let mut best = find_compatible_partition(g, 0)?.expect("zero parts always fit");
    for m in 1..=g.vertex_count() {
        match find_compatible_partition(g, m)? {
            Some(p) => best = p,
            None => break,
        }
    }
    Ok(best)
}

/// Largest compatible partition whose parts, not necessarily covering the
/// graph, have total `cost` at most `budget`. Parts are listed by
/// increasing smallest vertex.
pub fn max_compatible_partition_within(
    g: &Graph,
    budget: usize,
    cost: impl Fn(&[Vertex]) -> usize,
) -> Result<CompatiblePartition> {
    let n = g.vertex_count();
    if n > EXACT_LIMIT {
        return Err(Error::InstanceTooLarge { size: n, limit: EXACT_LIMIT });
    }
    let costs: Vec<usize> = (0..1u32 << n).map(|m| cost(&mask_to_vec(m))).collect();
    let search = Budgeted {
        n,
        nbr: neighbourhoods(g),
        costs,
        budget,
    };
    let mut best = Vec::new();
    for m in 1..=n {
        let mut chosen = Vec::with_capacity(m);
        if !search.extend(&mut chosen, 0, (1u32 << n) - 1, 0, m) {
            break;
        }
        best = chosen;
    }
    Ok(CompatiblePartition {
        parts: best.into_iter().map(mask_to_vec).collect(),
    })
}

struct Budgeted {
    n: usize,
    nbr: Vec<u32>,
    costs: Vec<usize>,
    budget: usize,
}

impl Budgeted {
    fn extend(&self, chosen: &mut Vec<u32>, spent: usize, avail: u32, from: usize, m: usize) -> bool {
        let need = m - chosen.len();
        if need == 0 {
            return true;
        }
        let avail = avail & !((1u32 << from) - 1);
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
            let rest = avail & !((2u32 << v) - 1);
            // submasks of `rest`, largest first
            let mut sub = rest;
            loop {
                let part = sub | 1 << v;
                let spent = spent.saturating_add(self.costs[part as usize]);
                if spent <= self.budget && chosen.iter().all(|&p| self.nbr[p as usize] & part != 0) {
                    chosen.push(part);
                    if self.extend(chosen, spent, avail & !part, v + 1, m) {
                        return true;
                    }
                    chosen.pop();
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
        }
        false
    }
}

/// Greedy compatible partition for graphs of any size.
///
/// Starts from singletons and, while some pair of parts is not adjacent,
/// either merges two parts or deletes one, whichever leaves the fewest
/// non-adjacent pairs (merges win ties). With `density_cap`, edges between
/// the highest-degree endpoints are first removed until the edge density
/// is at most the cap.
pub fn greedy_compatible_partition(g: &Graph, density_cap: Option<f64>) -> CompatiblePartition {
    let thinned;
    let g = match density_cap {
        Some(cap) => {
            thinned = thin_to_density(g, cap);
            &thinned
        }
        None => g,
    };
    let mut parts: Vec<Vec<Vertex>> = (0..g.vertex_count()).map(|v| vec![v]).collect();
    let mut apart: Vec<Vec<bool>> = (0..parts.len())
        .map(|a| (0..parts.len()).map(|b| a != b && !g.has_edge(a, b)).collect())
        .collect();
    loop {
        let k = parts.len();
        let conflicts: Vec<usize> = apart.iter().map(|r| r.iter().filter(|&&x| x).count()).collect();
        let total: usize = conflicts.iter().sum::<usize>() / 2;
        if total == 0 {
            break;
        }
        // (remaining conflicts, 0 = merge / 1 = delete, a, b)
        let mut best: Option<(usize, u8, usize, usize)> = None;
        for a in 0..k {
            for b in a + 1..k {
                let shared = (0..k).filter(|&c| c != a && c != b && apart[a][c] && apart[b][c]).count();
                let after = total + apart[a][b] as usize + shared - conflicts[a] - conflicts[b];
                let cand = (after, 0, a, b);
                best = Some(best.map_or(cand, |b| b.min(cand)));
            }
            let cand = (total - conflicts[a], 1, a, a);
            best = Some(best.map_or(cand, |b| b.min(cand)));
        }
        let (_, kind, a, b) = best.expect("at least two parts when a conflict exists");
        if kind == 0 {
            let moved = parts.remove(b);
            parts[a].extend(moved);
            parts[a].sort_unstable();
            for c in 0..k {
                apart[a][c] = apart[a][c] && apart[b][c];
                apart[c][a] = apart[a][c];
            }
            apart[a][a] = false;
            apart.remove(b);
            for row in &mut apart {
                row.remove(b);
            }
        } else {
            parts.remove(a);
            apart.remove(a);
            for row in &mut apart {
                row.remove(a);
            }
        }
    }
    CompatiblePartition { parts }
}

/// Removes edges, highest endpoint-degree sum first (larger pair on ties),
/// until the density is at most `cap`.
pub fn thin_to_density(g: &Graph, cap: f64) -> Graph {
    let n = g.vertex_count();
    let pairs = (n * n.saturating_sub(1) / 2).max(1) as f64;
    let mut edges: Vec<(usize, usize)> = g.edges().to_vec();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    while !edges.is_empty() && edges.len() as f64 / pairs > cap {
        let (k, _) = edges
            .iter()
            .enumerate()
            .max_by_key(|&(_, &(u, v))| (deg[u] + deg[v], u, v))
            .expect("nonempty");
        let (u, v) = edges.remove(k);
        deg[u] -= 1;
        deg[v] -= 1;
    }
    Graph::new(n, edges).expect("subgraph of a simple graph")
}
