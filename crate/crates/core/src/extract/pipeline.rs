//! Extraction of a bipartite clique minor from a clique minor.
//!
//! The model is minimised and its auxiliary graph built. A reserved set
//! `S` of part indices is kept aside; on the rest, a half-size
//! RB-bipartite subgraph `H'` is taken and a compatible partition of `H'`
//! chosen. Every part that is not already connected in `H'` gets a
//! projector from `S`, whose vertices are then chained together with
//! connectors from what remains of `S`. The resulting connected sets form
//! an RB-bipartite clique model in the auxiliary graph, which lifts to a
//! bipartite clique model in the host.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{is_bipartite, Bipartition, ColoredGraph, Edge, Graph, Vertex};
use crate::minor::{build_auxiliary, lift_subgraph, minimize_model, AuxiliaryGraph, Minimized, MinorModel};
use crate::rb::{rb_extract_half, RbBipartition};

use super::compatible::{greedy_compatible_partition, max_compatible_partition_within, EXACT_LIMIT};
use super::connector::{build_projector, connect_pair, Connection};

/// Reserved vertices spent by each stage.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub reserved: usize,
    pub projector: usize,
    pub connector: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    /// Parts assembled from the compatible partition.
    Assembled,
    /// A failed connection exposed a larger RB-bipartite clique among the
    /// reserved parts.
    ReservedClique,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub m_achieved: usize,
    /// A `K_m` model whose host is the bipartite subgraph of the input.
    pub model: MinorModel,
    pub partition_witness: Bipartition,
    /// Each part as a set of auxiliary vertices (parts of the input model).
    pub aux_parts: Vec<Vec<usize>>,
    pub budget: Budget,
    /// Planned parts abandoned because their connection failed.
    pub dropped_parts: usize,
    pub outcome: Outcome,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidityChecks {
    pub disjoint: bool,
    pub connected: bool,
    pub pairwise_adjacent: bool,
    /// The model host is a subgraph of the input and the witness is a
    /// proper 2-colouring of it.
    pub bipartite: bool,
}

impl ValidityChecks {
    pub fn all(&self) -> bool {
        self.disjoint && self.connected && self.pairwise_adjacent && self.bipartite
    }
}

impl PipelineReport {
    pub fn checks(&self, g: &Graph) -> ValidityChecks {
        let sub = self.model.host();
        let parts = self.model.parts();
        let mut owner = vec![false; sub.vertex_count()];
        let disjoint = parts.iter().flatten().all(|&v| v < owner.len() && !std::mem::replace(&mut owner[v], true));
        let connected = parts.iter().all(|p| !p.is_empty() && sub.is_connected_subset(p));
        let pairwise_adjacent = parts
            .iter()
            .enumerate()
            .all(|(i, a)| parts[i + 1..].iter().all(|b| sub.sets_adjacent(a, b)));
        let bipartite = sub.vertex_count() == g.vertex_count()
            && sub.edges().iter().all(|&(u, v)| g.has_edge(u, v))
            && self.partition_witness.side.len() == sub.vertex_count()
            && self.partition_witness.is_proper_for(sub);
        ValidityChecks {
            disjoint,
            connected,
            pairwise_adjacent,
            bipartite,
        }
    }
}

/// Worst-case reserved vertices a part costs: nothing when it is already
/// connected, otherwise a projector of `p = 1 + floor(log2 |U|)` vertices
/// chained by `p - 1` connectors of two vertices each.
fn planned_cost(h: &Graph, part: &[Vertex]) -> usize {
    if part.is_empty() || h.is_connected_subset(part) {
        0
    } else {
        let p = 1 + part.len().ilog2() as usize;
        3 * p - 2
    }
}

struct Grown {
    part: Vec<Vertex>,
    graph: ColoredGraph,
    partition: RbBipartition,
    projector: usize,
    connector: usize,
}

enum GrowFailure {
    Clique(Vec<Vertex>, RbBipartition),
    Pool,
}

/// Projects `u` onto fresh pool vertices and chains them; commits nothing
/// on failure.
fn grow_part(
    current: &ColoredGraph,
    partition: &RbBipartition,
    u: &[Vertex],
    pool: &[Vertex],
    joins: &ColoredGraph,
) -> Result<std::result::Result<Grown, GrowFailure>> {
    let proj = match build_projector(current, partition, u, pool, joins) {
        Ok(p) => p,
        Err(Error::PoolExhausted { .. }) => return Ok(Err(GrowFailure::Pool)),
        Err(e) => return Err(e),
    };
    let mut rest: Vec<Vertex> = pool.iter().copied().filter(|v| !proj.vertices.contains(v)).collect();
    let (mut graph, mut partition) = (proj.graph, proj.partition);
    let mut part: Vec<Vertex> = u.iter().chain(&proj.vertices).copied().collect();
    let mut connector = 0;
    for pair in proj.vertices.windows(2) {
        match connect_pair(&partition, pair[0], pair[1], &rest, joins)? {
            c @ Connection::Path { .. } => {
                (graph, partition) = c.apply(&graph, &partition, joins)?;
                let Connection::Path { path, .. } = c else { unreachable!() };
                let internal = &path[1..path.len() - 1];
                rest.retain(|v| !internal.contains(v));
                part.extend_from_slice(internal);
                connector += internal.len();
            }
            Connection::Clique { vertices, partition } => {
                return Ok(Err(GrowFailure::Clique(vertices, partition)));
            }
        }
    }
    part.sort_unstable();
    Ok(Ok(Grown {
        part,
        graph,
        partition,
        projector: proj.vertices.len(),
        connector,
    }))
}

/// Size of the reserved set for `n` parts.
pub fn reserved_size(n: usize, epsilon: f64) -> usize {
    ((epsilon * n as f64).ceil() as usize).max(2)
}

pub fn bipartite_minor_pipeline(g: &Graph, model: &MinorModel, epsilon: f64) -> Result<PipelineReport> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidArgument(format!("epsilon must lie in (0, 1), got {epsilon}")));
    }
    if model.host() != g {
        return Err(Error::InvalidArgument("model host differs from the input graph".into()));
    }
    let min = minimize_model(model)?;
    let aux = build_auxiliary(&min.model)?;
    let n = min.model.part_count();
    let reserved = reserved_size(n, epsilon);
    if reserved >= n {
        return Err(Error::BudgetExhausted { needed: reserved + 1, available: n });
    }
    let r = n - reserved;
    let kept: Vec<Vertex> = (0..r).collect();
    let half = rb_extract_half(&aux.colored.induced(&kept), &kept)?;
    let h_prime = half.subgraph.graph().clone();

    let plan = if r <= EXACT_LIMIT {
        max_compatible_partition_within(&h_prime, reserved, |p| planned_cost(&h_prime, p))?
    } else {
        let mut greedy = greedy_compatible_partition(&h_prime, None);
        greedy.parts.sort_by_key(|p| planned_cost(&h_prime, p));
        let mut spent = 0;
        greedy.parts.retain(|p| {
            spent += planned_cost(&h_prime, p);
            spent <= reserved
        });
        greedy
    };

    let mut current = ColoredGraph::new(n, half.subgraph.colored_edges())?;
    let mut partition = half.partition.clone();
    let mut pool: Vec<Vertex> = (r..n).collect();
    let mut parts: Vec<Vec<Vertex>> = Vec::new();
    let mut budget = Budget { reserved, ..Budget::default() };
    let mut dropped = 0;
    let mut best_clique: Option<(Vec<Vertex>, RbBipartition)> = None;

    for u in &plan.parts {
        if current.graph().is_connected_subset(u) {
            parts.push(u.clone());
            continue;
        }
        match grow_part(&current, &partition, u, &pool, &aux.colored)? {
            Ok(grown) => {
                pool.retain(|v| grown.part.binary_search(v).is_err());
                budget.projector += grown.projector;
                budget.connector += grown.connector;
                current = grown.graph;
                partition = grown.partition;
                parts.push(grown.part);
            }
            Err(failure) => {
                dropped += 1;
                if let GrowFailure::Clique(vs, p) = failure {
                    if best_clique.as_ref().is_none_or(|(b, _)| vs.len() > b.len()) {
                        best_clique = Some((vs, p));
                    }
                }
            }
        }
    }

    if !partition.is_valid_for(&current) {
        return Err(Error::Internal("assembled auxiliary subgraph lost its partition".into()));
    }
    let (aux_parts, sub_edges, outcome) = match best_clique {
        Some((vs, _)) if vs.len() > parts.len() => {
            let mut edges = Vec::new();
            for (i, &a) in vs.iter().enumerate() {
                for &b in &vs[i + 1..] {
                    edges.push((a, b));
                }
            }
            (vs.iter().map(|&v| vec![v]).collect(), edges, Outcome::ReservedClique)
        }
        _ => (parts, current.graph().edges().to_vec(), Outcome::Assembled),
    };
    lift_report(g, &min, &aux, aux_parts, &sub_edges, budget, dropped, outcome)
}

#[allow(clippy::too_many_arguments)]
fn lift_report(
    g: &Graph,
    min: &Minimized,
    aux: &AuxiliaryGraph,
    aux_parts: Vec<Vec<usize>>,
    sub: &[Edge],
    budget: Budget,
    dropped_parts: usize,
    outcome: Outcome,
) -> Result<PipelineReport> {
    let lifted = lift_subgraph(&min.model, aux, sub)?;
    let edges = lifted
        .edges()
        .iter()
        .map(|&(u, v)| (min.original[u], min.original[v]));
    let subgraph = Graph::new(g.vertex_count(), edges.collect::<Vec<_>>())?;
    let partition_witness = is_bipartite(&subgraph)
        .map_err(|c| Error::Internal(format!("lifted subgraph has the odd cycle {:?}", c.cycle)))?;
    let model_parts: Vec<Vec<Vertex>> = aux_parts
        .iter()
        .map(|p| {
            p.iter()
                .flat_map(|&k| min.model.parts()[k].iter().map(|&v| min.original[v]))
                .collect()
        })
        .collect();
    let model = MinorModel::new(subgraph, model_parts)?;
    Ok(PipelineReport {
        m_achieved: aux_parts.len(),
        model,
        partition_witness,
        aux_parts,
        budget,
        dropped_parts,
        outcome,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_gh, random_graph, Seed};
    use crate::oracles::max_bipartite_hadwiger;

    #[test]
    fn complete_host() {
        let g = Graph::complete(12);
        let model = MinorModel::singletons(g.clone()).unwrap();
        let report = bipartite_minor_pipeline(&g, &model, 0.25).unwrap();
        assert!(report.checks(&g).all(), "{report:?}");
        assert!(report.m_achieved >= 3);
        assert_eq!(report.budget.reserved, 3);
    }

    #[test]
    fn complete_host_within_oracle() {
        for n in 4..=10 {
            let g = Graph::complete(n);
            let model = MinorModel::singletons(g.clone()).unwrap();
            let report = bipartite_minor_pipeline(&g, &model, 0.25).unwrap();
            assert!(report.checks(&g).all());
            assert!(report.m_achieved <= max_bipartite_hadwiger(&g).unwrap().value);
        }
    }

    #[test]
    fn blue_auxiliary_needs_no_reserve() {
        // G(empty) has an all-Blue auxiliary graph
        let h = Graph::empty(8);
        let gh = build_gh(&h);
        let report = bipartite_minor_pipeline(&gh.graph, &gh.model(), 0.25).unwrap();
        assert!(report.checks(&gh.graph).all());
        // the kept six parts form a Blue K_6, already RB-bipartite
        assert_eq!(report.m_achieved, 6);
        assert_eq!(report.budget.projector + report.budget.connector, 0);
    }

    #[test]
    fn red_auxiliary_output_is_bipartite() {
        let gh = build_gh(&Graph::complete(9));
        let report = bipartite_minor_pipeline(&gh.graph, &gh.model(), 0.25).unwrap();
        assert!(report.checks(&gh.graph).all());
    }

    #[test]
    fn rejects_bad_input() {
        let g = Graph::cycle(5);
        let model = MinorModel::new(g.clone(), vec![vec![0], vec![2], vec![4]]).unwrap();
        assert!(matches!(bipartite_minor_pipeline(&g, &model, 0.25), Err(Error::NotAModel(_))));
        let k3 = Graph::complete(3);
        let model = MinorModel::singletons(k3.clone()).unwrap();
        assert!(matches!(
            bipartite_minor_pipeline(&k3, &model, 0.9),
            Err(Error::BudgetExhausted { .. })
        ));
        assert!(bipartite_minor_pipeline(&k3, &model, 0.0).is_err());
    }

    #[test]
    fn random_gh_hosts() {
        for seed in 0..30 {
            let h = random_graph(6 + (seed % 7) as usize, 0.5, Seed(seed));
            let gh = build_gh(&h);
            let report = bipartite_minor_pipeline(&gh.graph, &gh.model(), 0.25).unwrap();
            assert!(report.checks(&gh.graph).all(), "seed {seed}");
            assert!(report.m_achieved >= 1);
        }
    }

    #[test]
    fn greedy_path_for_large_models() {
        let g = Graph::complete(24);
        let model = MinorModel::singletons(g.clone()).unwrap();
        let report = bipartite_minor_pipeline(&g, &model, 0.25).unwrap();
        assert!(report.checks(&g).all());
        assert!(report.m_achieved >= 3);
    }
}
