use std::collections::VecDeque;

use super::network::{Flow, FlowNetwork, ResidualGraph};
use crate::error::{Error, Result};

/// Paired-edge residual structure: edge `2a` is arc `a`, edge `2a + 1` its
/// reverse.
pub(super) struct EdgeGraph {
    pub(super) n: usize,
    pub(super) to: Vec<usize>,
    pub(super) cap: Vec<i64>,
    pub(super) cost: Vec<i64>,
    pub(super) adj: Vec<Vec<usize>>,
}

impl EdgeGraph {
    pub(super) fn with_capacity(n: usize, arcs: usize) -> Self {
        Self {
            n,
            to: Vec::with_capacity(2 * arcs),
            cap: Vec::with_capacity(2 * arcs),
            cost: Vec::with_capacity(2 * arcs),
            adj: vec![Vec::new(); n],
        }
    }

    pub(super) fn from_network(net: &FlowNetwork) -> Self {
        let mut g = Self::with_capacity(net.vertex_count(), net.arcs().len());
        for arc in net.arcs() {
            g.push(arc.tail, arc.head, arc.cap, arc.cost);
        }
        g
    }

    pub(super) fn push(&mut self, u: usize, v: usize, cap: i64, cost: i64) -> usize {
        let e = self.to.len();
        self.to.push(v);
        self.cap.push(cap);
        self.cost.push(cost);
        self.adj[u].push(e);
        self.to.push(u);
        self.cap.push(0);
        self.cost.push(-cost);
        self.adj[v].push(e + 1);
        e
    }

    /// Flow on original arc `a` equals the residual capacity of its reverse.
    pub(super) fn flow_on(&self, a: usize) -> i64 {
        self.cap[2 * a + 1]
    }

    pub(super) fn send(&mut self, e: usize, amount: i64) {
        self.cap[e] -= amount;
        self.cap[e ^ 1] += amount;
    }

    /// Dinic from `s` to `t`; returns the value pushed.
    pub(super) fn dinic(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0i64;
        let mut level = vec![usize::MAX; self.n];
        let mut it = vec![0usize; self.n];
        loop {
            level.fill(usize::MAX);
            level[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &e in &self.adj[u] {
                    let v = self.to[e];
                    if self.cap[e] > 0 && level[v] == usize::MAX {
                        level[v] = level[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
            if level[t] == usize::MAX {
                return total;
            }
            it.fill(0);
            loop {
                let pushed = self.blocking_path(s, t, &level, &mut it);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
    }

    /// One augmenting path in the level graph, found by an explicit-stack DFS
    /// with current-arc pointers.
    fn blocking_path(&mut self, s: usize, t: usize, level: &[usize], it: &mut [usize]) -> i64 {
        let mut path: Vec<usize> = Vec::new();
        let mut u = s;
        loop {
            if u == t {
                let amount = path.iter().map(|&e| self.cap[e]).min().unwrap_or(0);
                for &e in &path {
                    self.send(e, amount);
                }
                return amount;
            }
            let mut advanced = false;
            while it[u] < self.adj[u].len() {
                let e = self.adj[u][it[u]];
                let v = self.to[e];
                if self.cap[e] > 0 && level[v] == level[u] + 1 {
                    path.push(e);
                    u = v;
                    advanced = true;
                    break;
                }
                it[u] += 1;
            }
            if !advanced {
                // dead end: retreat and skip the arc that led here
                match path.pop() {
                    None => return 0,
                    Some(e) => {
                        u = self.to[e ^ 1];
                        it[u] += 1;
                    }
                }
            }
        }
    }
}

/// Integral maximum `s`-`t` flow; arc costs are ignored.
pub fn max_flow(net: &FlowNetwork, s: usize, t: usize) -> Result<(Flow, i64)> {
    let n = net.vertex_count();
    for x in [s, t] {
        if x >= n {
            return Err(Error::VertexOutOfRange { vertex: x, len: n });
        }
    }
    if s == t {
        return Err(Error::Input("source and sink coincide".into()));
    }
    let mut g = EdgeGraph::from_network(net);
    let value = g.dinic(s, t);
    let flow = Flow::from_values((0..net.arcs().len()).map(|a| g.flow_on(a)).collect());
    Ok((flow, value))
}

/// Source side of a minimum cut: the vertices reachable from `s` in the
/// residual graph of a maximum flow.
pub fn min_cut_side(net: &FlowNetwork, flow: &Flow, s: usize, t: usize) -> Result<Vec<bool>> {
    let side = ResidualGraph::new(net, flow).reachable_from(s);
    if side[t] {
        return Err(Error::NotMaximum);
    }
    Ok(side)
}
