//! Diverse minimum s-t cuts in unit-capacity digraphs.

use crate::error::{Error, Result};
use crate::flow::{self, Flow, FlowNetwork, ResidualGraph};
use crate::framework::{solve_diverse, Backend, DiverseSolution, Ideal, Measure, BOT, TOP};
use crate::ringfamily::{lift, BlockPartition, PreReductionMap};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl Digraph {
    pub fn new(n: usize, arcs: Vec<(usize, usize)>) -> Result<Self> {
        for &(u, v) in &arcs {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, len: n });
                }
            }
        }
        Ok(Self { n, arcs })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Ids of arcs leaving `side`.
    pub fn out_arcs(&self, side: &[bool]) -> Vec<usize> {
        (0..self.arcs.len())
            .filter(|&a| side[self.arcs[a].0] && !side[self.arcs[a].1])
            .collect()
    }

    /// Whether `t` is reachable from `s` after deleting the arcs in `removed`.
    pub fn connects_without(&self, s: usize, t: usize, removed: &[usize]) -> bool {
        let mut skip = vec![false; self.arcs.len()];
        for &a in removed {
            skip[a] = true;
        }
        let mut adj = vec![Vec::new(); self.n];
        for (a, &(u, v)) in self.arcs.iter().enumerate() {
            if !skip[a] {
                adj[u].push(v);
            }
        }
        let mut seen = vec![false; self.n];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen[t]
    }

    fn unit_network(&self) -> FlowNetwork {
        let mut net = FlowNetwork::new(self.n);
        for &(u, v) in &self.arcs {
            net.add_arc(u, v, 1, 0);
        }
        net
    }
}

/// Condensed residual graph of a maximum flow. Its closed sets are exactly
/// the source sides of minimum cuts.
#[derive(Debug, Clone)]
pub struct PqDag {
    partition: BlockPartition,
    flow: Flow,
    q: usize,
}

impl PqDag {
    /// Vertex partition: `BOT` is the source part, `TOP` the sink part.
    pub fn partition(&self) -> &BlockPartition {
        &self.partition
    }

    pub fn flow(&self) -> &Flow {
        &self.flow
    }

    /// Size of every minimum cut.
    pub fn q(&self) -> usize {
        self.q
    }

    /// Source side `R(s') ∪ R(ideal)`.
    pub fn side_of(&self, ideal: &Ideal) -> Vec<bool> {
        self.partition.member_of(ideal)
    }
}

pub fn build_pq(g: &Digraph, s: usize, t: usize) -> Result<PqDag> {
    let net = g.unit_network();
    let (flow, value) = flow::max_flow(&net, s, t)?;
    let side = flow::min_cut_side(&net, &flow, s, t)?;
    if net.cut_capacity(&side) != value {
        return Err(Error::Internal("max-flow value differs from cut capacity".into()));
    }
    let residual = ResidualGraph::new(&net, &flow);
    let from_s = residual.reachable_from(s);
    let to_t = residual.reaching(t);

    let n = g.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for a in residual.arcs() {
        if !from_s[a.tail] && !to_t[a.tail] && !from_s[a.head] && !to_t[a.head] {
            adj[a.tail].push(a.head);
        }
    }
    let alive: Vec<bool> = (0..n).map(|v| !from_s[v] && !to_t[v]).collect();
    let (comp, count) = strongly_connected(&adj, &alive);

    let mut arcs: Vec<(usize, usize)> = Vec::new();
    for u in 0..n {
        for &v in &adj[u] {
            if comp[u] != comp[v] {
                arcs.push((comp[u] + 2, comp[v] + 2));
            }
        }
    }
    arcs.sort_unstable();
    arcs.dedup();
    let block_of = (0..n)
        .map(|v| {
            if from_s[v] {
                BOT
            } else if to_t[v] {
                TOP
            } else {
                comp[v] + 2
            }
        })
        .collect();
    let partition = BlockPartition::new(block_of, count, &arcs)?;
    Ok(PqDag {
        partition,
        flow,
        q: value as usize,
    })
}

/// Tarjan's algorithm with an explicit stack over the `alive` vertices.
/// Components are numbered in the order they are completed.
fn strongly_connected(adj: &[Vec<usize>], alive: &[bool]) -> (Vec<usize>, usize) {
    let n = adj.len();
    const NONE: usize = usize::MAX;
    let mut index = vec![NONE; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![NONE; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut count = 0;
    for root in (0..n).filter(|&v| alive[v]) {
        if index[root] != NONE {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (u, ref mut pos)) = call.last_mut() {
            if *pos < adj[u].len() {
                let v = adj[u][*pos];
                *pos += 1;
                if index[v] == NONE {
                    index[v] = next_index;
                    low[v] = next_index;
                    next_index += 1;
                    stack.push(v);
                    on_stack[v] = true;
                    call.push((v, 0));
                } else if on_stack[v] {
                    low[u] = low[u].min(index[v]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[u]);
            }
            if low[u] == index[u] {
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp[w] = count;
                    if w == u {
                        break;
                    }
                }
                count += 1;
            }
        }
    }
    (comp, count)
}

/// `(tail, head)` for arcs carrying flow, `(t, t)` otherwise.
pub fn mincut_pre_reduction(flow: &Flow, g: &Digraph, t: usize) -> PreReductionMap {
    PreReductionMap::new(
        g.arcs()
            .iter()
            .enumerate()
            .map(|(a, &(u, v))| if flow.value(a) == 1 { (u, v) } else { (t, t) })
            .collect(),
    )
}

#[derive(Debug, Clone)]
pub struct MincutSolution {
    /// Arc ids of each cut, sorted.
    pub cuts: Vec<Vec<usize>>,
    pub q: usize,
    pub solution: DiverseSolution,
}

pub fn solve_diverse_mincut(
    g: &Digraph,
    s: usize,
    t: usize,
    k: usize,
    measure: &Measure,
    backend: Backend,
) -> Result<MincutSolution> {
    let pq = build_pq(g, s, t)?;
    let r_hat = mincut_pre_reduction(&pq.flow, g, t);
    let r = lift(&r_hat, &pq.partition)?;
    let solution = solve_diverse(pq.partition.poset(), &r, k, measure, backend)?;
    let cuts = solution.tuple.sets().to_vec();
    for cut in &cuts {
        if cut.len() != pq.q || g.connects_without(s, t, cut) {
            return Err(Error::Internal(format!("output {cut:?} is not a minimum cut")));
        }
    }
    Ok(MincutSolution {
        cuts,
        q: pq.q,
        solution,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // s = 0, a = 1, b = 2, t = 3; arcs sa, sb, at, bt
    fn diamond() -> Digraph {
        Digraph::new(4, vec![(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    // s = 0, a = 1, t = 2
    fn path() -> Digraph {
        Digraph::new(3, vec![(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn path_condensation() {
        let pq = build_pq(&path(), 0, 2).unwrap();
        assert_eq!(pq.q(), 1);
        let blocks = pq.partition().blocks();
        assert_eq!(blocks, vec![vec![0], vec![2], vec![1]]);
        assert_eq!(pq.partition().poset().arcs(), &[(TOP, 2), (2, BOT)]);
    }

    #[test]
    fn diamond_condensation() {
        let pq = build_pq(&diamond(), 0, 3).unwrap();
        assert_eq!(pq.q(), 2);
        let blocks = pq.partition().blocks();
        assert_eq!(blocks.len(), 4);
        assert_eq!(blocks[BOT], vec![0]);
        assert_eq!(blocks[TOP], vec![3]);
        // no arcs between the two interior components
        assert!(pq.partition().poset().arcs().iter().all(|&(u, v)| u == TOP || v == BOT));
    }

    #[test]
    fn direct_arc_only() {
        let g = Digraph::new(2, vec![(0, 1)]).unwrap();
        let pq = build_pq(&g, 0, 1).unwrap();
        assert_eq!(pq.q(), 1);
        assert_eq!(pq.partition().poset().len(), 2);
    }

    #[test]
    fn pre_reduction_on_unit_paths() {
        for (g, t) in [(path(), 2), (diamond(), 3)] {
            let pq = build_pq(&g, 0, t).unwrap();
            let r_hat = mincut_pre_reduction(pq.flow(), &g, t);
            assert_eq!(r_hat.image(), g.arcs());
        }
        // a dead-end arc carries no flow
        let g = Digraph::new(4, vec![(0, 1), (1, 2), (0, 3)]).unwrap();
        let pq = build_pq(&g, 0, 2).unwrap();
        let r_hat = mincut_pre_reduction(pq.flow(), &g, 2);
        assert_eq!(r_hat.image()[2], (2, 2));
    }

    #[test]
    fn diamond_diverse_cuts() {
        for backend in [Backend::Mcf, Backend::Cut] {
            let sum = solve_diverse_mincut(&diamond(), 0, 3, 2, &Measure::Sum, backend).unwrap();
            assert_eq!(sum.solution.diversity, 4);
            assert_eq!(sum.q, 2);
            let cov = solve_diverse_mincut(&diamond(), 0, 3, 2, &Measure::Cov, backend).unwrap();
            assert_eq!(cov.solution.diversity, 4);
            let one = solve_diverse_mincut(&diamond(), 0, 3, 1, &Measure::Sum, backend).unwrap();
            assert_eq!(one.solution.diversity, 0);
            assert_eq!(one.cuts.len(), 1);
        }
    }

    #[test]
    fn unreachable_sink_gives_empty_cuts() {
        let g = Digraph::new(3, vec![(0, 1), (2, 1)]).unwrap();
        let sol = solve_diverse_mincut(&g, 0, 2, 3, &Measure::Sum, Backend::Auto).unwrap();
        assert_eq!(sol.q, 0);
        assert_eq!(sol.cuts, vec![Vec::<usize>::new(); 3]);
        assert_eq!(sol.solution.diversity, 0);
    }

    #[test]
    fn tarjan_finds_cycles() {
        let adj = vec![vec![1], vec![2], vec![0, 3], vec![]];
        let (comp, count) = strongly_connected(&adj, &[true; 4]);
        assert_eq!(count, 2);
        assert_eq!(comp[0], comp[1]);
        assert_eq!(comp[1], comp[2]);
        assert_ne!(comp[2], comp[3]);
    }
}
