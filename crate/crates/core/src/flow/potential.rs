use std::collections::VecDeque;

use super::network::ResidualGraph;
use crate::error::{Error, Result};

/// A potential `pi` with `length(u,v) >= pi(v) - pi(u)` on every residual arc
/// and `pi(0) = 0`.
///
/// Shortest distances from a virtual root joined to every vertex by a
/// zero-length arc (queue-based Bellman–Ford). `warm` seeds the labels; an
/// already feasible seed is confirmed in one pass.
pub fn feasible_potential(res: &ResidualGraph, warm: Option<&[i64]>) -> Result<Vec<i64>> {
    let n = res.vertex_count();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut adj = vec![Vec::new(); n];
    for a in res.arcs() {
        adj[a.tail].push((a.head, a.length));
    }
    let mut dist: Vec<i64> = match warm {
        Some(w) if w.len() == n => {
            let shift = w.iter().copied().max().unwrap_or(0);
            w.iter().map(|&x| x - shift).collect()
        }
        _ => vec![0; n],
    };
    let mut hops = vec![0usize; n];
    let mut queued = vec![true; n];
    let mut queue: VecDeque<usize> = (0..n).collect();
    while let Some(u) = queue.pop_front() {
        queued[u] = false;
        for &(v, len) in &adj[u] {
            let nd = dist[u] + len;
            if nd < dist[v] {
                dist[v] = nd;
                hops[v] = hops[u] + 1;
                if hops[v] >= n {
                    return Err(Error::NegativeCycle);
                }
                if !queued[v] {
                    queued[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    let base = dist[0];
    Ok(dist.into_iter().map(|d| d - base).collect())
}
