//! The two ways reserved vertices are spent: projectors, which give every
//! vertex of a set a neighbour in a small new set, and connectors, which
//! join two vertices through at most two new ones.
//!
//! Both work inside a fixed index space. The current graph is RB-bipartite
//! under a partial [`RbBipartition`]; pool vertices are unplaced, and the
//! colour of every pair involving a pool vertex is read from `joins`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Color, ColoredGraph, Side, Vertex};
use crate::rb::{rb_add_vertex, rb_certify, RbBipartition};

fn join(joins: &ColoredGraph, u: Vertex, v: Vertex) -> Result<Color> {
    joins
        .color(u, v)
        .ok_or_else(|| Error::InvalidArgument(format!("no colour given for the pair ({u}, {v})")))
}

fn placed(partition: &RbBipartition, v: Vertex) -> Result<Side> {
    partition
        .side(v)
        .ok_or_else(|| Error::InvalidArgument(format!("vertex {v} is not placed")))
}

/// Result of [`build_projector`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Projector {
    /// Pool vertices used, in order of use.
    pub vertices: Vec<Vertex>,
    pub graph: ColoredGraph,
    pub partition: RbBipartition,
}

/// Spends pool vertices in order until every vertex of `u` has a neighbour
/// among them. Each one is placed on the side keeping at least half of its
/// edges to the still uncovered vertices, so at most `1 + floor(log2 |u|)`
/// are used.
pub fn build_projector(
    current: &ColoredGraph,
    partition: &RbBipartition,
    u: &[Vertex],
    pool: &[Vertex],
    joins: &ColoredGraph,
) -> Result<Projector> {
    if u.is_empty() {
        return Err(Error::InvalidArgument("projector target set is empty".into()));
    }
    let mut edges: Vec<(Vertex, Vertex, Color)> = current.colored_edges().collect();
    let mut partition = partition.clone();
    let mut uncovered: Vec<Vertex> = u.to_vec();
    let mut vertices = Vec::new();
    let mut pool = pool.iter();
    while !uncovered.is_empty() {
        let &i = pool.next().ok_or(Error::PoolExhausted { used: vertices.len() })?;
        if partition.side(i).is_some() {
            return Err(Error::InvalidArgument(format!("pool vertex {i} is already placed")));
        }
        let incident = uncovered
            .iter()
            .map(|&v| Ok((v, join(joins, i, v)?)))
            .collect::<Result<Vec<_>>>()?;
        let placement = rb_add_vertex(&partition, &incident)?;
        partition.set(i, placement.side);
        uncovered.retain(|v| placement.kept.iter().all(|&(w, _)| w != *v));
        edges.extend(placement.kept.iter().map(|&(w, c)| (i, w, c)));
        vertices.push(i);
    }
    Ok(Projector {
        vertices,
        graph: ColoredGraph::new(current.vertex_count(), edges)?,
        partition,
    })
}

/// Outcome of [`connect_pair`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Connection {
    /// `path` runs from `x` to `y`; `sides` places its internal vertices.
    Path { path: Vec<Vertex>, sides: Vec<Side> },
    /// No short path exists, and the pool induces an RB-bipartite complete
    /// graph under `partition`.
    Clique {
        vertices: Vec<Vertex>,
        partition: RbBipartition,
    },
}

impl Connection {
    /// Adds the path and its internal vertices to the current graph.
    pub fn apply(
        &self,
        current: &ColoredGraph,
        partition: &RbBipartition,
        joins: &ColoredGraph,
    ) -> Result<(ColoredGraph, RbBipartition)> {
        let Connection::Path { path, sides } = self else {
            return Err(Error::InvalidArgument("a clique outcome has no path to add".into()));
        };
        let mut partition = partition.clone();
        for (&v, &s) in path[1..path.len() - 1].iter().zip(sides) {
            partition.set(v, s);
        }
        let mut edges: Vec<_> = current.colored_edges().collect();
        for w in path.windows(2) {
            edges.push((w[0], w[1], join(joins, w[0], w[1])?));
        }
        Ok((ColoredGraph::new(current.vertex_count(), edges)?, partition))
    }
}

/// Joins `x` to `y` through one or two pool vertices so that the partition
/// extends, or shows that the pool is an RB-bipartite clique.
///
/// The path needs an odd number of Red edges exactly when `x` and `y` lie
/// on different sides. Every one- and two-vertex path through the pool is
/// tried, shortest first, in pool order. When none fits, the case analysis
/// of the pool's joins to `x` and `y` forces the pool to split into two
/// classes with Red edges only between them.
pub fn connect_pair(
    partition: &RbBipartition,
    x: Vertex,
    y: Vertex,
    pool: &[Vertex],
    joins: &ColoredGraph,
) -> Result<Connection> {
    let (sx, sy) = (placed(partition, x)?, placed(partition, y)?);
    if let Some(&v) = pool.iter().find(|&&v| partition.side(v).is_some() || v == x || v == y) {
        return Err(Error::InvalidArgument(format!("pool vertex {v} is already in use")));
    }
    let to_x = pool.iter().map(|&a| join(joins, x, a)).collect::<Result<Vec<_>>>()?;
    let to_y = pool.iter().map(|&a| join(joins, a, y)).collect::<Result<Vec<_>>>()?;
    let side_of: Vec<Side> = to_x.iter().map(|c| sx.flip_if(c.is_red())).collect();

    for (k, &a) in pool.iter().enumerate() {
        if side_of[k].flip_if(to_y[k].is_red()) == sy {
            return Ok(Connection::Path {
                path: vec![x, a, y],
                sides: vec![side_of[k]],
            });
        }
    }
    for (k, &a) in pool.iter().enumerate() {
        for (l, &b) in pool.iter().enumerate() {
            if k == l {
                continue;
            }
            let sb = side_of[k].flip_if(join(joins, a, b)?.is_red());
            if sb.flip_if(to_y[l].is_red()) == sy {
                return Ok(Connection::Path {
                    path: vec![x, a, b, y],
                    sides: vec![side_of[k], sb],
                });
            }
        }
    }
    let inner = joins.induced(pool);
    match rb_certify(&inner) {
        Ok(local) => {
            let mut partition = RbBipartition::default();
            for (k, &v) in pool.iter().enumerate() {
                partition.set(v, local.side(k).expect("total on the pool"));
            }
            Ok(Connection::Clique {
                vertices: pool.to_vec(),
                partition,
            })
        }
        Err(_) => Err(Error::Internal(format!(
            "no short {x}-{y} path and the pool is not RB-bipartite"
        ))),
    }
}
