use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NetArc {
    pub tail: usize,
    pub head: usize,
    pub cap: i64,
    pub cost: i64,
}

/// Integer network. Arc ids are insertion indices.
#[derive(Debug, Clone, Default, Serialize)]
pub struct FlowNetwork {
    n: usize,
    arcs: Vec<NetArc>,
    demands: Option<Vec<i64>>,
}

impl FlowNetwork {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            arcs: Vec::new(),
            demands: None,
        }
    }

    /// Panics on an out-of-range endpoint or negative capacity.
    pub fn add_arc(&mut self, tail: usize, head: usize, cap: i64, cost: i64) -> usize {
        assert!(tail < self.n && head < self.n, "arc ({tail}, {head}) out of range");
        assert!(cap >= 0, "negative capacity {cap}");
        self.arcs.push(NetArc { tail, head, cap, cost });
        self.arcs.len() - 1
    }

    /// Set `d(v)`; a positive value is net outflow (supply).
    pub fn set_demands(&mut self, demands: Vec<i64>) -> Result<()> {
        if demands.len() != self.n {
            return Err(Error::Input(format!(
                "{} demands for {} vertices",
                demands.len(),
                self.n
            )));
        }
        self.demands = Some(demands);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[NetArc] {
        &self.arcs
    }

    pub fn arc(&self, id: usize) -> NetArc {
        self.arcs[id]
    }

    pub fn demands(&self) -> Option<&[i64]> {
        self.demands.as_deref()
    }

    /// Total capacity of the arcs leaving `side`.
    pub fn cut_capacity(&self, side: &[bool]) -> i64 {
        self.cut_arcs(side).into_iter().map(|a| self.arcs[a].cap).sum()
    }

    /// Ids of arcs from `side` to its complement.
    pub fn cut_arcs(&self, side: &[bool]) -> Vec<usize> {
        (0..self.arcs.len())
            .filter(|&a| side[self.arcs[a].tail] && !side[self.arcs[a].head])
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Flow {
    values: Vec<i64>,
}

impl Flow {
    pub fn zero(net: &FlowNetwork) -> Self {
        Self {
            values: vec![0; net.arcs.len()],
        }
    }

    pub fn from_values(values: Vec<i64>) -> Self {
        Self { values }
    }

    pub fn value(&self, arc: usize) -> i64 {
        self.values[arc]
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// `∂f(v)` = outflow minus inflow.
    pub fn boundary(&self, net: &FlowNetwork) -> Vec<i64> {
        let mut b = vec![0; net.n];
        for (a, arc) in net.arcs.iter().enumerate() {
            b[arc.tail] += self.values[a];
            b[arc.head] -= self.values[a];
        }
        b
    }

    pub fn cost(&self, net: &FlowNetwork) -> i64 {
        net.arcs
            .iter()
            .zip(&self.values)
            .map(|(arc, &f)| arc.cost * f)
            .sum()
    }

    pub fn respects_capacities(&self, net: &FlowNetwork) -> bool {
        self.values.len() == net.arcs.len()
            && net
                .arcs
                .iter()
                .zip(&self.values)
                .all(|(arc, &f)| (0..=arc.cap).contains(&f))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResidualArc {
    pub tail: usize,
    pub head: usize,
    pub residual: i64,
    pub length: i64,
    /// Underlying network arc.
    pub arc: usize,
    pub forward: bool,
}

/// Residual graph `G_f` with length `cost` on forward arcs and `-cost` on
/// backward arcs. Only arcs with positive residual capacity are present.
#[derive(Debug, Clone)]
pub struct ResidualGraph {
    n: usize,
    arcs: Vec<ResidualArc>,
}

impl ResidualGraph {
    pub fn new(net: &FlowNetwork, flow: &Flow) -> Self {
        let mut arcs = Vec::new();
        for (a, arc) in net.arcs.iter().enumerate() {
            let f = flow.values[a];
            if f < arc.cap {
                arcs.push(ResidualArc {
                    tail: arc.tail,
                    head: arc.head,
                    residual: arc.cap - f,
                    length: arc.cost,
                    arc: a,
                    forward: true,
                });
            }
            if f > 0 {
                arcs.push(ResidualArc {
                    tail: arc.head,
                    head: arc.tail,
                    residual: f,
                    length: -arc.cost,
                    arc: a,
                    forward: false,
                });
            }
        }
        Self { n: net.n, arcs }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[ResidualArc] {
        &self.arcs
    }

    pub fn reachable_from(&self, s: usize) -> Vec<bool> {
        self.search(s, false)
    }

    /// Vertices that reach `t`.
    pub fn reaching(&self, t: usize) -> Vec<bool> {
        self.search(t, true)
    }

    fn search(&self, root: usize, reverse: bool) -> Vec<bool> {
        let mut adj = vec![Vec::new(); self.n];
        for a in &self.arcs {
            if reverse {
                adj[a.head].push(a.tail);
            } else {
                adj[a.tail].push(a.head);
            }
        }
        let mut seen = vec![false; self.n];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    /// First residual arc with `length < pi(head) - pi(tail)`, if any.
    pub fn violated_by(&self, pi: &[i64]) -> Option<ResidualArc> {
        self.arcs
            .iter()
            .copied()
            .find(|a| a.length < pi[a.head] - pi[a.tail])
    }

    pub fn has_negative_cycle(&self) -> bool {
        matches!(
            super::potential::feasible_potential(self, None),
            Err(Error::NegativeCycle)
        )
    }
}
