//! Clique minor models, their minimisation, canonical paths and the
//! auxiliary colouring that records canonical-path parity.
//!
//! For a minimised model (every part induces a tree and each pair of parts
//! is joined by exactly one host edge), a spanning subgraph of the host made
//! of all part trees plus the cross edges of some set of part pairs is
//! bipartite exactly when that set of pairs, coloured by the auxiliary
//! graph, is RB-bipartite. [`lift_odd_circuit`] and [`project_odd_cycle`]
//! carry the two directions of that correspondence.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{normalize, Color, ColoredGraph, Edge, Graph, Vertex};
use crate::rb::ROddCertificate;

/// Disjoint vertex subsets of a host graph with one root per part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorModel {
    host: Graph,
    parts: Vec<Vec<Vertex>>,
    roots: Vec<Vertex>,
}

impl MinorModel {
    /// Parts are sorted; each root is the smallest vertex of its part.
    pub fn new(host: Graph, parts: Vec<Vec<Vertex>>) -> Result<Self> {
        let roots = parts
            .iter()
            .map(|p| p.iter().copied().min().unwrap_or(usize::MAX))
            .collect();
        Self::with_roots(host, parts, roots)
    }

    pub fn with_roots(host: Graph, mut parts: Vec<Vec<Vertex>>, roots: Vec<Vertex>) -> Result<Self> {
        if roots.len() != parts.len() {
            return Err(Error::NotAModel("one root per part required".into()));
        }
        let mut owner = vec![usize::MAX; host.vertex_count()];
        for (i, p) in parts.iter_mut().enumerate() {
            if p.is_empty() {
                return Err(Error::NotAModel(format!("part {i} is empty")));
            }
            p.sort_unstable();
            for &v in p.iter() {
                if v >= host.vertex_count() {
                    return Err(Error::NotAModel(format!("vertex {v} out of range")));
                }
                if owner[v] != usize::MAX {
                    return Err(Error::NotAModel(format!("vertex {v} lies in two parts")));
                }
                owner[v] = i;
            }
            if p.binary_search(&roots[i]).is_err() {
                return Err(Error::NotAModel(format!("root of part {i} is not in the part")));
            }
        }
        Ok(MinorModel { host, parts, roots })
    }

    /// The singleton model of `K_n` on a complete host.
    pub fn singletons(host: Graph) -> Result<Self> {
        let parts = (0..host.vertex_count()).map(|v| vec![v]).collect();
        Self::new(host, parts)
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn parts(&self) -> &[Vec<Vertex>] {
        &self.parts
    }

    pub fn roots(&self) -> &[Vertex] {
        &self.roots
    }

    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    /// Part index of every host vertex.
    pub fn part_of(&self) -> Vec<Option<usize>> {
        let mut owner = vec![None; self.host.vertex_count()];
        for (i, p) in self.parts.iter().enumerate() {
            for &v in p {
                owner[v] = Some(i);
            }
        }
        owner
    }

    /// Checks that the parts are connected and pairwise adjacent.
    pub fn check_clique_model(&self) -> Result<()> {
        for (i, p) in self.parts.iter().enumerate() {
            if !self.host.is_connected_subset(p) {
                return Err(Error::NotAModel(format!("part {i} is disconnected")));
            }
        }
        let k = self.parts.len();
        let mut adjacent = vec![vec![false; k]; k];
        let owner = self.part_of();
        for &(u, v) in self.host.edges() {
            if let (Some(a), Some(b)) = (owner[u], owner[v]) {
                adjacent[a][b] = true;
                adjacent[b][a] = true;
            }
        }
        for i in 0..k {
            for j in i + 1..k {
                if !adjacent[i][j] {
                    return Err(Error::NotAModel(format!("no edge between parts {i} and {j}")));
                }
            }
        }
        Ok(())
    }

    /// Whether every part induces a tree, every pair of parts is joined by
    /// exactly one edge, and every host vertex lies in a part.
    pub fn is_minimized(&self) -> bool {
        let owner = self.part_of();
        if owner.iter().any(Option::is_none) {
            return false;
        }
        let k = self.parts.len();
        let mut inner = vec![0usize; k];
        let mut cross = vec![vec![0usize; k]; k];
        for &(u, v) in self.host.edges() {
            let (a, b) = (owner[u].unwrap(), owner[v].unwrap());
            if a == b {
                inner[a] += 1;
            } else {
                cross[a.min(b)][a.max(b)] += 1;
            }
        }
        (0..k).all(|i| {
            inner[i] + 1 == self.parts[i].len()
                && self.host.is_connected_subset(&self.parts[i])
                && (i + 1..k).all(|j| cross[i][j] == 1)
        })
    }

    /// The unique host edge between parts `i` and `j` of a minimised
    /// model (the smallest one otherwise).
    pub fn cross_edge(&self, i: usize, j: usize) -> Option<Edge> {
        let (small, large) = if self.parts[i].len() <= self.parts[j].len() { (i, j) } else { (j, i) };
        let mut best: Option<Edge> = None;
        for &u in &self.parts[small] {
            for &w in self.host.neighbors(u) {
                if self.parts[large].binary_search(&w).is_ok() {
                    let e = normalize(u, w);
                    best = Some(best.map_or(e, |b| b.min(e)));
                }
            }
        }
        best
    }
}

/// A minimised model on a relabelled host, with the map back to the
/// original vertex labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Minimized {
    pub model: MinorModel,
    /// `original[v]` is the label in the input host of minimised vertex `v`.
    pub original: Vec<Vertex>,
}

/// Deletes everything not needed for the `K_n` model: vertices outside all
/// parts, all part edges except a breadth-first spanning tree from the
/// root, and all cross edges except the lexicographically smallest per
/// pair of parts. The minimised host numbers the vertices part by part.
pub fn minimize_model(model: &MinorModel) -> Result<Minimized> {
    model.check_clique_model()?;
    let host = &model.host;
    let mut original = Vec::new();
    let mut relabel = vec![usize::MAX; host.vertex_count()];
    for p in &model.parts {
        for &v in p {
            relabel[v] = original.len();
            original.push(v);
        }
    }
    let owner = model.part_of();
    let mut edges: Vec<Edge> = Vec::new();
    for (i, p) in model.parts.iter().enumerate() {
        let root = model.roots[i];
        let mut seen = vec![false; host.vertex_count()];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &w in host.neighbors(v) {
                if owner[w] == Some(i) && !seen[w] {
                    seen[w] = true;
                    edges.push((relabel[v], relabel[w]));
                    queue.push_back(w);
                }
            }
        }
        debug_assert_eq!(p.iter().filter(|&&v| seen[v]).count(), p.len());
    }
    let k = model.parts.len();
    for i in 0..k {
        for j in i + 1..k {
            let (u, v) = model.cross_edge(i, j).expect("checked pairwise adjacency");
            edges.push((relabel[u], relabel[v]));
        }
    }
    let new_host = Graph::new(original.len(), edges)?;
    let parts = model
        .parts
        .iter()
        .map(|p| p.iter().map(|&v| relabel[v]).collect())
        .collect();
    let roots = model.roots.iter().map(|&r| relabel[r]).collect();
    let model = MinorModel::with_roots(new_host, parts, roots)?;
    debug_assert!(model.is_minimized());
    Ok(Minimized { model, original })
}

/// The unique root-to-root path inside parts `i` and `j` of a minimised
/// model, from the root of `i` to the root of `j`.
pub fn canonical_path(model: &MinorModel, i: usize, j: usize) -> Result<Vec<Vertex>> {
    let (a, b) = (model.roots[i], model.roots[j]);
    let owner = model.part_of();
    let inside = |v: Vertex| owner[v] == Some(i) || owner[v] == Some(j);
    let mut prev = vec![usize::MAX; model.host.vertex_count()];
    prev[a] = a;
    let mut queue = VecDeque::from([a]);
    while let Some(v) = queue.pop_front() {
        if v == b {
            let mut path = vec![b];
            let mut cur = b;
            while cur != a {
                cur = prev[cur];
                path.push(cur);
            }
            path.reverse();
            return Ok(path);
        }
        for &w in model.host.neighbors(v) {
            if inside(w) && prev[w] == usize::MAX {
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    Err(Error::NotAModel(format!("parts {i} and {j} are not joined")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalPath {
    pub i: usize,
    pub j: usize,
    pub path: Vec<Vertex>,
}

/// The auxiliary graph on part indices. Pair `ij` is Red when its canonical
/// path has odd length and Blue when even.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuxiliaryGraph {
    pub colored: ColoredGraph,
    /// Sorted by `(i, j)` with `i < j`; each path runs from root `i` to
    /// root `j`.
    pub paths: Vec<CanonicalPath>,
}

impl AuxiliaryGraph {
    /// Canonical path oriented from root `i` to root `j`.
    pub fn path(&self, i: usize, j: usize) -> Option<Vec<Vertex>> {
        let (a, b) = (i.min(j), i.max(j));
        let k = self.paths.binary_search_by_key(&(a, b), |p| (p.i, p.j)).ok()?;
        let mut p = self.paths[k].path.clone();
        if i > j {
            p.reverse();
        }
        Some(p)
    }

    /// The coloured subgraph on the selected pairs.
    pub fn restrict(&self, sub: &[Edge]) -> Result<ColoredGraph> {
        let mut edges = Vec::with_capacity(sub.len());
        for &(i, j) in sub {
            let c = self.colored.color(i, j).ok_or_else(|| {
                Error::InvalidArgument(format!("pair ({i}, {j}) is not an auxiliary edge"))
            })?;
            edges.push((i, j, c));
        }
        ColoredGraph::new(self.colored.vertex_count(), edges)
    }
}

pub fn build_auxiliary(model: &MinorModel) -> Result<AuxiliaryGraph> {
    let k = model.part_count();
    let owner = model.part_of();
    let mut joined = vec![vec![false; k]; k];
    for &(u, v) in model.host.edges() {
        if let (Some(a), Some(b)) = (owner[u], owner[v]) {
            joined[a][b] = true;
            joined[b][a] = true;
        }
    }
    let mut edges = Vec::new();
    let mut paths = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            if !joined[i][j] {
                continue;
            }
            let path = canonical_path(model, i, j)?;
            let color = if (path.len() - 1) % 2 == 1 { Color::Red } else { Color::Blue };
            edges.push((i, j, color));
            paths.push(CanonicalPath { i, j, path });
        }
    }
    Ok(AuxiliaryGraph {
        colored: ColoredGraph::new(k, edges)?,
        paths,
    })
}

/// Host subgraph made of every edge inside a part plus the cross edges of
/// the selected auxiliary pairs.
pub fn lift_subgraph(model: &MinorModel, aux: &AuxiliaryGraph, sub: &[Edge]) -> Result<Graph> {
    let k = model.part_count();
    let mut selected = vec![vec![false; k]; k];
    for &(i, j) in sub {
        if aux.colored.color(i, j).is_none() {
            return Err(Error::InvalidArgument(format!("pair ({i}, {j}) is not an auxiliary edge")));
        }
        selected[i][j] = true;
        selected[j][i] = true;
    }
    let owner = model.part_of();
    Ok(model.host.filter_edges(|u, v| match (owner[u], owner[v]) {
        (Some(a), Some(b)) => a == b || selected[a][b],
        _ => false,
    }))
}

/// Concatenates canonical paths along an R-odd closed walk of the
/// auxiliary graph. The result is a closed walk in the host (closing step
/// implicit) of odd length.
pub fn lift_odd_circuit(aux: &AuxiliaryGraph, circuit: &[usize]) -> Result<Vec<Vertex>> {
    match ROddCertificate::count_red(&aux.colored, circuit) {
        Some(r) if r % 2 == 1 => {}
        Some(_) => return Err(Error::InvalidArgument("circuit is not R-odd".into())),
        None => return Err(Error::InvalidArgument("circuit is not a closed walk".into())),
    }
    let k = circuit.len();
    let mut walk = Vec::new();
    for t in 0..k {
        let seg = aux
            .path(circuit[t], circuit[(t + 1) % k])
            .expect("walk steps are auxiliary edges");
        walk.extend_from_slice(&seg[..seg.len() - 1]);
    }
    Ok(walk)
}

/// Projects an odd cycle of a lifted subgraph onto the sequence of parts it
/// passes through. The result is a closed walk in the auxiliary graph with
/// an odd number of Red traversals.
pub fn project_odd_cycle(
    model: &MinorModel,
    aux: &AuxiliaryGraph,
    sub: &[Edge],
    cycle: &[Vertex],
) -> Result<Vec<usize>> {
    let k = cycle.len();
    if k < 3 || k.is_multiple_of(2) {
        return Err(Error::InvalidArgument("expected an odd cycle".into()));
    }
    let owner = model.part_of();
    let mut classes = Vec::with_capacity(k);
    for &v in cycle {
        classes.push(owner.get(v).copied().flatten().ok_or_else(|| {
            Error::NotInLift(format!("vertex {v} is outside every part"))
        })?);
    }
    for t in 0..k {
        let (u, v) = (cycle[t], cycle[(t + 1) % k]);
        if !model.host.has_edge(u, v) {
            return Err(Error::NotInLift(format!("({u}, {v}) is not a host edge")));
        }
        let (a, b) = (classes[t], classes[(t + 1) % k]);
        if a != b && !sub.contains(&(a, b)) && !sub.contains(&(b, a)) {
            return Err(Error::NotInLift(format!("cross edge ({u}, {v}) joins unselected parts {a} and {b}")));
        }
    }
    // start at a class boundary so that runs do not wrap around
    let Some(start) = (0..k).find(|&t| classes[t] != classes[(t + k - 1) % k]) else {
        return Err(Error::NotInLift("cycle stays inside one part".into()));
    };
    let mut walk: Vec<usize> = Vec::new();
    for t in 0..k {
        let c = classes[(start + t) % k];
        if walk.last() != Some(&c) {
            walk.push(c);
        }
    }
    debug_assert!(walk.first() != walk.last());
    match ROddCertificate::count_red(&aux.colored, &walk) {
        Some(r) if r % 2 == 1 => Ok(walk),
        _ => Err(Error::NotAModel("projection is not R-odd; model is not minimised".into())),
    }
}
