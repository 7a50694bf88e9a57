//! Brute-force simple cycle enumeration for small oracle instances.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Hard cap on the number of vertices cycle enumeration accepts.
pub const MAX_CYCLE_VERTICES: usize = 16;

fn check_size(g: &Graph, max_vertices: usize) -> Result<()> {
    let limit = max_vertices.min(MAX_CYCLE_VERTICES);
    if g.vertex_count() > limit {
        return Err(Error::InstanceTooLarge {
            size: g.vertex_count(),
            limit,
        });
    }
    Ok(())
}

/// Every simple cycle of `g` exactly once up to rotation and reflection.
///
/// Each cycle starts at its smallest vertex, and its second vertex is
/// smaller than its last.
pub fn enumerate_cycles(g: &Graph, max_vertices: usize) -> Result<Vec<Vec<Vertex>>> {
    let mut out = Vec::new();
    for_each_cycle(g, max_vertices, |c| {
        out.push(c.to_vec());
        ControlFlow::<()>::Continue(())
    })?;
    Ok(out)
}

/// Visits the cycles of [`enumerate_cycles`] without collecting them.
/// Returns the break value if the visitor stopped early.
pub fn for_each_cycle<B>(
    g: &Graph,
    max_vertices: usize,
    mut visit: impl FnMut(&[Vertex]) -> ControlFlow<B>,
) -> Result<Option<B>> {
    check_size(g, max_vertices)?;
    let n = g.vertex_count();
    let mut on_path = vec![false; n];
    let mut path = Vec::with_capacity(n);
    for start in 0..n {
        path.push(start);
        on_path[start] = true;
        let r = extend(g, start, &mut path, &mut on_path, &mut visit);
        on_path[start] = false;
        path.pop();
        if let ControlFlow::Break(b) = r {
            return Ok(Some(b));
        }
    }
    Ok(None)
}

fn extend<B>(
    g: &Graph,
    start: Vertex,
    path: &mut Vec<Vertex>,
    on_path: &mut [bool],
    visit: &mut impl FnMut(&[Vertex]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let last = *path.last().expect("path starts non-empty");
    for &w in g.neighbors(last) {
        if w == start {
            if path.len() >= 3 && path[1] < last {
                visit(path)?;
            }
        } else if w > start && !on_path[w] {
            on_path[w] = true;
            path.push(w);
            let r = extend(g, start, path, on_path, visit);
            path.pop();
            on_path[w] = false;
            r?;
        }
    }
    ControlFlow::Continue(())
}
