use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::dinic::EdgeGraph;
use super::network::{Flow, FlowNetwork};
use crate::error::{Error, Result};

/// Minimum-cost flow meeting the network's demands exactly, together with
/// node potentials `h` certifying optimality (`cost(u,v) + h(u) - h(v) >= 0`
/// on every residual arc).
#[derive(Debug, Clone)]
pub struct BFlowSolution {
    pub flow: Flow,
    pub cost: i64,
    pub potentials: Vec<i64>,
}

/// Minimum-cost b-flow by capacity-scaling successive shortest paths.
pub fn min_cost_bflow(net: &FlowNetwork) -> Result<Flow> {
    min_cost_bflow_with_potentials(net).map(|s| s.flow)
}

pub fn min_cost_bflow_with_potentials(net: &FlowNetwork) -> Result<BFlowSolution> {
    let n = net.vertex_count();
    let demands = net.demands().map(<[i64]>::to_vec).unwrap_or_else(|| vec![0; n]);
    check_feasible(net, &demands)?;

    let mut g = EdgeGraph::from_network(net);
    let mut excess = demands;
    let mut h = vec![0i64; n];

    let max_cap = net.arcs().iter().map(|a| a.cap).max().unwrap_or(0);
    let max_excess = excess.iter().map(|x| x.abs()).max().unwrap_or(0);
    let top = max_cap.max(max_excess).max(1);
    let mut delta: i64 = 1 << (63 - top.leading_zeros());

    let mut dist = vec![i64::MAX; n];
    let mut prev = vec![usize::MAX; n];
    let mut done = vec![false; n];
    loop {
        // saturate delta-residual arcs with negative reduced cost
        for u in 0..n {
            for idx in 0..g.adj[u].len() {
                let e = g.adj[u][idx];
                let v = g.to[e];
                if g.cap[e] >= delta && g.cost[e] + h[u] - h[v] < 0 {
                    let amount = g.cap[e];
                    g.send(e, amount);
                    excess[u] -= amount;
                    excess[v] += amount;
                }
            }
        }

        loop {
            let sources: Vec<usize> = (0..n).filter(|&v| excess[v] >= delta).collect();
            if sources.is_empty() || !excess.iter().any(|&x| x <= -delta) {
                break;
            }
            dist.fill(i64::MAX);
            prev.fill(usize::MAX);
            done.fill(false);
            let mut heap = BinaryHeap::new();
            for &s in &sources {
                dist[s] = 0;
                heap.push(Reverse((0i64, s)));
            }
            let mut sink = None;
            while let Some(Reverse((d, u))) = heap.pop() {
                if done[u] || d > dist[u] {
                    continue;
                }
                done[u] = true;
                if excess[u] <= -delta {
                    sink = Some(u);
                    break;
                }
                for &e in &g.adj[u] {
                    if g.cap[e] < delta {
                        continue;
                    }
                    let v = g.to[e];
                    let nd = d + g.cost[e] + h[u] - h[v];
                    if nd < dist[v] {
                        dist[v] = nd;
                        prev[v] = e;
                        heap.push(Reverse((nd, v)));
                    }
                }
            }
            let Some(t) = sink else { break };
            let reach = dist[t];
            for v in 0..n {
                h[v] += if done[v] { dist[v] } else { reach };
            }
            let mut amount = -excess[t];
            let mut v = t;
            while prev[v] != usize::MAX {
                let e = prev[v];
                amount = amount.min(g.cap[e]);
                v = g.to[e ^ 1];
            }
            let s = v;
            amount = amount.min(excess[s]);
            let mut v = t;
            while prev[v] != usize::MAX {
                let e = prev[v];
                g.send(e, amount);
                v = g.to[e ^ 1];
            }
            excess[s] -= amount;
            excess[t] += amount;
        }

        if delta == 1 {
            break;
        }
        delta /= 2;
    }

    let unmet: i64 = excess.iter().filter(|&&x| x > 0).sum();
    if unmet > 0 {
        return Err(Error::Infeasible { unmet });
    }
    let flow = Flow::from_values((0..net.arcs().len()).map(|a| g.flow_on(a)).collect());
    let cost = flow.cost(net);
    Ok(BFlowSolution {
        flow,
        cost,
        potentials: h,
    })
}

/// Max-flow check on the supersource/supersink transformation.
fn check_feasible(net: &FlowNetwork, demands: &[i64]) -> Result<()> {
    let total: i64 = demands.iter().sum();
    let supply: i64 = demands.iter().filter(|&&d| d > 0).sum();
    if total != 0 {
        return Err(Error::Infeasible { unmet: total.abs() });
    }
    if supply == 0 {
        return Ok(());
    }
    let n = net.vertex_count();
    let (ss, tt) = (n, n + 1);
    let mut g = EdgeGraph::with_capacity(n + 2, net.arcs().len() + n);
    for arc in net.arcs() {
        g.push(arc.tail, arc.head, arc.cap, 0);
    }
    for (v, &d) in demands.iter().enumerate() {
        if d > 0 {
            g.push(ss, v, d, 0);
        } else if d < 0 {
            g.push(v, tt, -d, 0);
        }
    }
    let routed = g.dinic(ss, tt);
    if routed < supply {
        return Err(Error::Infeasible {
            unmet: supply - routed,
        });
    }
    Ok(())
}
