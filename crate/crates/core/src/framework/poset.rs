use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fixed id of the poset minimum.
pub const BOT: usize = 0;
/// Fixed id of the poset maximum.
pub const TOP: usize = 1;

/// A finite poset with distinct minimum and maximum, stored as a DAG whose
/// arcs point from larger to smaller elements. `TOP` is the unique source and
/// `BOT` the unique sink; `u ⪯ v` for interior `u, v` iff `v` reaches `u`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDag {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl PosetDag {
    /// Validate and wrap an arc list over vertices `0..n` (`n >= 2`).
    pub fn new(n: usize, arcs: Vec<(usize, usize)>) -> Result<Self> {
        if n < 2 {
            return Err(Error::Poset(format!("need at least bot and top, got {n} vertices")));
        }
        let mut indeg = vec![0usize; n];
        let mut outdeg = vec![0usize; n];
        for &(u, v) in &arcs {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, len: n });
                }
            }
            if u == v {
                return Err(Error::Poset(format!("self-loop at {u}")));
            }
            outdeg[u] += 1;
            indeg[v] += 1;
        }
        for v in 0..n {
            if v != TOP && indeg[v] == 0 {
                return Err(Error::Poset(format!("vertex {v} has no incoming arc but is not top")));
            }
            if v != BOT && outdeg[v] == 0 {
                return Err(Error::Poset(format!("vertex {v} has no outgoing arc but is not bot")));
            }
        }
        if indeg[TOP] != 0 {
            return Err(Error::Poset("top has an incoming arc".into()));
        }
        if outdeg[BOT] != 0 {
            return Err(Error::Poset("bot has an outgoing arc".into()));
        }
        let dag = Self { n, arcs };
        if dag.topological_order().is_none() {
            return Err(Error::Poset("arc set contains a cycle".into()));
        }
        Ok(dag)
    }

    /// Build a poset from `interior` elements (ids `2..2 + interior`) and
    /// arcs among them, wiring `TOP` above every maximal element and every
    /// minimal element above `BOT` (or `TOP -> BOT` when there is no interior).
    pub fn from_interior(interior: usize, interior_arcs: &[(usize, usize)]) -> Result<Self> {
        let n = interior + 2;
        let mut has_in = vec![false; n];
        let mut has_out = vec![false; n];
        let mut arcs = Vec::with_capacity(interior_arcs.len() + 2 * interior + 1);
        for &(u, v) in interior_arcs {
            for x in [u, v] {
                if x < 2 || x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, len: n });
                }
            }
            has_out[u] = true;
            has_in[v] = true;
            arcs.push((u, v));
        }
        for v in 2..n {
            if !has_in[v] {
                arcs.push((TOP, v));
            }
            if !has_out[v] {
                arcs.push((v, BOT));
            }
        }
        if interior == 0 {
            arcs.push((TOP, BOT));
        }
        Self::new(n, arcs)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn interior(&self) -> impl Iterator<Item = usize> {
        2..self.n
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn successors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.arcs {
            adj[u].push(v);
        }
        adj
    }

    /// Kahn order from `TOP` towards `BOT`; `None` on a cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        topological_order(self.n, &self.arcs)
    }

    /// Whether `from` reaches `to` (reflexive).
    pub fn reaches(&self, from: usize, to: usize) -> bool {
        Reachability::new(self).reaches(from, to)
    }
}

pub(crate) fn topological_order(n: usize, arcs: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in arcs {
        adj[u].push(v);
        indeg[v] += 1;
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &v in &adj[u] {
            indeg[v] -= 1;
            if indeg[v] == 0 {
                queue.push_back(v);
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// Reachability oracle: a bitset closure for small posets, DFS otherwise.
pub(crate) struct Reachability {
    n: usize,
    adj: Vec<Vec<usize>>,
    closure: Option<Vec<Vec<u64>>>,
}

const CLOSURE_LIMIT: usize = 16_384;

impl Reachability {
    pub(crate) fn new(dag: &PosetDag) -> Self {
        let adj = dag.successors();
        let closure = (dag.n <= CLOSURE_LIMIT).then(|| {
            let words = dag.n.div_ceil(64);
            let order = dag.topological_order().expect("validated acyclic");
            let mut rows = vec![vec![0u64; words]; dag.n];
            for &u in order.iter().rev() {
                let mut row = vec![0u64; words];
                row[u / 64] |= 1 << (u % 64);
                for &v in &adj[u] {
                    for (w, x) in row.iter_mut().zip(&rows[v]) {
                        *w |= x;
                    }
                }
                rows[u] = row;
            }
            rows
        });
        Self { n: dag.n, adj, closure }
    }

    pub(crate) fn reaches(&self, from: usize, to: usize) -> bool {
        if let Some(rows) = &self.closure {
            return rows[from][to / 64] >> (to % 64) & 1 == 1;
        }
        let adj = &self.adj;
        let mut seen = vec![false; self.n];
        let mut stack = vec![from];
        seen[from] = true;
        while let Some(u) = stack.pop() {
            if u == to {
                return true;
            }
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        false
    }
}

/// A downward-closed set of interior elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ideal {
    members: Vec<usize>,
}

impl Ideal {
    pub fn empty() -> Self {
        Self { members: Vec::new() }
    }

    /// Check downward closure with one pass over the arcs.
    pub fn new(poset: &PosetDag, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        let mut mask = vec![false; poset.len()];
        for &v in &members {
            if v >= poset.len() {
                return Err(Error::VertexOutOfRange { vertex: v, len: poset.len() });
            }
            if v == BOT || v == TOP {
                return Err(Error::Poset(format!("ideal member {v} is not an interior element")));
            }
            mask[v] = true;
        }
        for &(u, v) in poset.arcs() {
            if mask[u] && v != BOT && !mask[v] {
                return Err(Error::NotAnIdeal { member: u, missing: v });
            }
        }
        Ok(Self { members })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    /// Membership in `I ∪ {BOT}`.
    pub fn mask_with_bot(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        mask[BOT] = true;
        for &v in &self.members {
            mask[v] = true;
        }
        mask
    }
}

/// Assigns each ground element `e` a pair `(e_plus, e_minus)` of poset
/// vertices with `e_plus ⪯ e_minus`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionMap {
    image: Vec<(usize, usize)>,
}

impl ReductionMap {
    pub fn new(image: Vec<(usize, usize)>) -> Self {
        Self { image }
    }

    pub fn ground_size(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[(usize, usize)] {
        &self.image
    }

    pub fn get(&self, e: usize) -> (usize, usize) {
        self.image[e]
    }

    /// Elements with `e_plus == e_minus`; they belong to no solution.
    pub fn degenerate(&self) -> Vec<usize> {
        (0..self.image.len())
            .filter(|&e| self.image[e].0 == self.image[e].1)
            .collect()
    }

    pub fn validate(&self, poset: &PosetDag) -> Result<()> {
        let reach = Reachability::new(poset);
        for (e, &(plus, minus)) in self.image.iter().enumerate() {
            for x in [plus, minus] {
                if x >= poset.len() {
                    return Err(Error::VertexOutOfRange { vertex: x, len: poset.len() });
                }
            }
            if !reach.reaches(minus, plus) {
                return Err(Error::ReductionOrder { element: e, plus, minus });
            }
        }
        Ok(())
    }
}

/// `sup_r(I) = { e | e_plus ∈ I ∪ {⊥}, e_minus ∉ I ∪ {⊥} }`.
pub fn sup_r(ideal: &Ideal, r: &ReductionMap, poset: &PosetDag) -> Vec<usize> {
    let mask = ideal.mask_with_bot(poset.len());
    (0..r.ground_size())
        .filter(|&e| {
            let (plus, minus) = r.get(e);
            mask[plus] && !mask[minus]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Min-cut poset of the path s -> a -> t: one interior block `m = 2`.
    pub(crate) fn g2_poset() -> (PosetDag, ReductionMap) {
        let poset = PosetDag::from_interior(1, &[]).unwrap();
        // element 0 = arc sa, element 1 = arc at
        let r = ReductionMap::new(vec![(BOT, 2), (2, TOP)]);
        (poset, r)
    }

    #[test]
    fn from_interior_wires_terminals() {
        let (poset, _) = g2_poset();
        assert_eq!(poset.arcs(), &[(TOP, 2), (2, BOT)]);
        let empty = PosetDag::from_interior(0, &[]).unwrap();
        assert_eq!(empty.arcs(), &[(TOP, BOT)]);
    }

    #[test]
    fn rejects_malformed_dags() {
        assert!(PosetDag::new(2, vec![]).is_err());
        assert!(PosetDag::new(3, vec![(TOP, 2), (2, BOT), (2, 2)]).is_err());
        assert!(PosetDag::new(4, vec![(TOP, 2), (2, 3), (3, 2), (3, BOT)]).is_err());
        assert!(PosetDag::new(3, vec![(TOP, BOT), (2, BOT)]).is_err());
        assert!(PosetDag::new(2, vec![(TOP, 5)]).is_err());
    }

    #[test]
    fn sup_r_on_single_element() {
        let poset = PosetDag::from_interior(0, &[]).unwrap();
        let r = ReductionMap::new(vec![(BOT, TOP)]);
        assert_eq!(sup_r(&Ideal::empty(), &r, &poset), vec![0]);
    }

    #[test]
    fn sup_r_on_path_graph() {
        let (poset, r) = g2_poset();
        r.validate(&poset).unwrap();
        assert_eq!(sup_r(&Ideal::empty(), &r, &poset), vec![0]);
        let m = Ideal::new(&poset, [2]).unwrap();
        assert_eq!(sup_r(&m, &r, &poset), vec![1]);
    }

    #[test]
    fn ideal_closure_violation_has_witness() {
        // chain 3 -> 2: 2 ⪯ 3
        let poset = PosetDag::from_interior(2, &[(3, 2)]).unwrap();
        assert!(Ideal::new(&poset, [2]).is_ok());
        assert_eq!(
            Ideal::new(&poset, [3]).unwrap_err(),
            Error::NotAnIdeal { member: 3, missing: 2 }
        );
        assert!(Ideal::new(&poset, [TOP]).is_err());
    }

    #[test]
    fn reduction_map_order_checked() {
        let (poset, _) = g2_poset();
        let bad = ReductionMap::new(vec![(2, BOT)]);
        assert!(matches!(bad.validate(&poset), Err(Error::ReductionOrder { .. })));
        let outside = ReductionMap::new(vec![(BOT, 9)]);
        assert!(matches!(outside.validate(&poset), Err(Error::VertexOutOfRange { .. })));
        let degenerate = ReductionMap::new(vec![(2, 2), (BOT, TOP)]);
        assert_eq!(degenerate.degenerate(), vec![0]);
    }
}
