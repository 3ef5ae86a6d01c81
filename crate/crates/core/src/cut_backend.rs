//! Minimum k-potentials through a minimum s-t cut in a k-layer graph.

use std::fmt::Write as _;

use crate::convex::ConvexKind;
use crate::error::{Error, Result};
use crate::flow::{self, FlowNetwork};
use crate::framework::{h_value, validate_potential, KPotential, KPotentialInstance, BOT, TOP};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutPenalty {
    Binom,
    Cov,
}

/// Arc class in the layered graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LayerArc {
    /// `v^i -> v^{i+1}`
    Chain,
    /// Reversed instance arc or terminal hookup.
    Structure,
    /// Penalty arc carrying an instance weight.
    Penalty,
}

#[derive(Debug, Clone)]
pub struct CutReduction {
    network: FlowNetwork,
    classes: Vec<LayerArc>,
    big_m: i64,
    penalty: CutPenalty,
    n: usize,
    k: usize,
}

impl CutReduction {
    pub fn network(&self) -> &FlowNetwork {
        &self.network
    }

    pub fn classes(&self) -> &[LayerArc] {
        &self.classes
    }

    pub fn big_m(&self) -> i64 {
        self.big_m
    }

    pub fn penalty(&self) -> CutPenalty {
        self.penalty
    }

    pub fn source(&self) -> usize {
        self.k * self.n
    }

    pub fn sink(&self) -> usize {
        self.k * self.n + 1
    }

    /// Id of `v^i` for `1 <= i <= k`.
    pub fn layer(&self, v: usize, i: usize) -> usize {
        debug_assert!((1..=self.k).contains(&i) && v < self.n);
        (i - 1) * self.n + v
    }

    /// Graphviz rendering with one cluster per layer.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph layered {\n  rankdir=LR;\n");
        let _ = writeln!(out, "  {} [label=\"s\", shape=box];", self.source());
        let _ = writeln!(out, "  {} [label=\"t\", shape=box];", self.sink());
        for i in 1..=self.k {
            let _ = writeln!(out, "  subgraph cluster_{i} {{\n    label=\"layer {i}\";");
            for v in 0..self.n {
                let _ = writeln!(out, "    {} [label=\"{v}^{i}\"];", self.layer(v, i));
            }
            out.push_str("  }\n");
        }
        for (a, class) in self.network.arcs().iter().zip(&self.classes) {
            let style = match class {
                LayerArc::Chain => "dotted",
                LayerArc::Structure => "solid",
                LayerArc::Penalty => "bold",
            };
            let label = if *class == LayerArc::Penalty { a.cap.to_string() } else { "M".into() };
            let _ = writeln!(out, "  {} -> {} [style={style}, label=\"{label}\"];", a.tail, a.head);
        }
        out.push_str("}\n");
        out
    }
}

fn penalty_of(inst: &KPotentialInstance) -> Result<CutPenalty> {
    match inst.convex().kind() {
        ConvexKind::Binom => Ok(CutPenalty::Binom),
        ConvexKind::Cov => Ok(CutPenalty::Cov),
        _ => Err(Error::UnsupportedPenalty),
    }
}

pub fn build_cut(inst: &KPotentialInstance) -> Result<CutReduction> {
    build_cut_with_big_m(inst, inst.default_big_m()?)
}

pub fn build_cut_with_big_m(inst: &KPotentialInstance, big_m: i64) -> Result<CutReduction> {
    let penalty = penalty_of(inst)?;
    let (n, k) = (inst.vertex_count(), inst.k());
    let mut red = CutReduction {
        network: FlowNetwork::new(k * n + 2),
        classes: Vec::new(),
        big_m,
        penalty,
        n,
        k,
    };
    let (s, t) = (red.source(), red.sink());
    let add = |red: &mut CutReduction, u: usize, v: usize, cap: i64, class: LayerArc| {
        red.network.add_arc(u, v, cap, 0);
        red.classes.push(class);
    };
    for v in 0..n {
        for i in 1..k {
            let (a, b) = (red.layer(v, i), red.layer(v, i + 1));
            add(&mut red, a, b, big_m, LayerArc::Chain);
        }
    }
    for i in 1..=k {
        for a in inst.arcs() {
            let (from, to) = (red.layer(a.head, i), red.layer(a.tail, i));
            add(&mut red, from, to, big_m, LayerArc::Structure);
        }
        let bot = red.layer(BOT, i);
        add(&mut red, bot, t, big_m, LayerArc::Structure);
        let top = red.layer(TOP, i);
        add(&mut red, s, top, big_m, LayerArc::Structure);
    }
    for a in inst.arcs().iter().filter(|a| a.weight > 0) {
        for i in 1..=k {
            let targets = match penalty {
                CutPenalty::Binom => i + 1..=k,
                CutPenalty::Cov => i + 1..=(i + 1).min(k),
            };
            for j in targets {
                let (from, to) = (red.layer(a.tail, i), red.layer(a.head, j));
                add(&mut red, from, to, a.weight, LayerArc::Penalty);
            }
        }
    }
    Ok(red)
}

/// `p(v) = max { i | i = 0 or v^i ∉ X }`, checked against `δ(X) < M` and
/// `H(p) = δ(X)`.
pub fn extract_potential(
    side: &[bool],
    red: &CutReduction,
    inst: &KPotentialInstance,
) -> Result<KPotential> {
    let cut = red.network.cut_capacity(side);
    if cut >= red.big_m {
        return Err(Error::Internal(format!(
            "cut capacity {cut} is not below M = {}",
            red.big_m
        )));
    }
    let values = (0..red.n)
        .map(|v| {
            (1..=red.k)
                .rev()
                .find(|&i| !side[red.layer(v, i)])
                .unwrap_or(0) as i64
        })
        .collect();
    let p = KPotential::new(values);
    validate_potential(&p, inst)
        .map_err(|v| Error::Internal(format!("extracted potential invalid: {v}")))?;
    let h = h_value(&p, inst)?;
    if h != cut {
        return Err(Error::Internal(format!("H(p) = {h} differs from cut capacity {cut}")));
    }
    Ok(p)
}

#[derive(Debug, Clone)]
pub struct CutOutcome {
    pub potential: KPotential,
    pub h: i64,
    pub vertices: usize,
    pub arcs: usize,
}

pub fn solve_min_k_potential_cut(inst: &KPotentialInstance) -> Result<(KPotential, i64)> {
    solve_cut(inst).map(|o| (o.potential, o.h))
}

pub fn solve_cut(inst: &KPotentialInstance) -> Result<CutOutcome> {
    let red = build_cut(inst)?;
    let (s, t) = (red.source(), red.sink());
    let (flow, value) = flow::max_flow(&red.network, s, t)?;
    let side = flow::min_cut_side(&red.network, &flow, s, t)?;
    let cut = red.network.cut_capacity(&side);
    if cut != value {
        return Err(Error::Internal(format!("flow value {value} differs from cut {cut}")));
    }
    let potential = extract_potential(&side, &red, inst)?;
    Ok(CutOutcome {
        potential,
        h: value,
        vertices: red.network.vertex_count(),
        arcs: red.network.arcs().len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::ConvexSpec;
    use crate::framework::{build_instance, PosetDag, ReductionMap, WeightedArc};

    fn g2(convex: ConvexSpec, k: usize) -> KPotentialInstance {
        let poset = PosetDag::from_interior(1, &[]).unwrap();
        let r = ReductionMap::new(vec![(BOT, 2), (2, TOP)]);
        build_instance(&poset, &r, &convex, k).unwrap()
    }

    fn penalty_arcs(red: &CutReduction) -> Vec<(usize, usize, i64)> {
        red.network()
            .arcs()
            .iter()
            .zip(red.classes())
            .filter(|(_, c)| **c == LayerArc::Penalty)
            .map(|(a, _)| (a.tail, a.head, a.cap))
            .collect()
    }

    #[test]
    fn g2_binom_layout() {
        let red = build_cut(&g2(ConvexSpec::binom(2), 2)).unwrap();
        assert_eq!(red.big_m(), 3);
        assert_eq!(penalty_arcs(&red).len(), 2);
        assert_eq!(red.source(), 6);
        assert_eq!(red.sink(), 7);
        assert_eq!(red.layer(2, 2), 5);
    }

    #[test]
    fn single_layer_has_no_chain_or_penalty() {
        for convex in [ConvexSpec::binom(1), ConvexSpec::cov(1)] {
            let red = build_cut(&g2(convex, 1)).unwrap();
            assert!(red.classes().iter().all(|c| *c == LayerArc::Structure));
        }
    }

    #[test]
    fn cov_penalty_arcs() {
        let inst = KPotentialInstance::from_arcs(
            2,
            vec![WeightedArc { tail: TOP, head: BOT, weight: 2 }],
            ConvexSpec::cov(3),
            3,
        )
        .unwrap();
        let red = build_cut(&inst).unwrap();
        let expected = vec![
            (red.layer(TOP, 1), red.layer(BOT, 2), 2),
            (red.layer(TOP, 2), red.layer(BOT, 3), 2),
        ];
        assert_eq!(penalty_arcs(&red), expected);
    }

    #[test]
    fn rejects_square() {
        assert_eq!(
            build_cut(&g2(ConvexSpec::square(2), 2)).unwrap_err(),
            Error::UnsupportedPenalty
        );
    }

    #[test]
    fn g2_optima() {
        let (p, h) = solve_min_k_potential_cut(&g2(ConvexSpec::binom(2), 2)).unwrap();
        assert_eq!(h, 0);
        assert_eq!(p.get(2), 1);
        assert_eq!(solve_min_k_potential_cut(&g2(ConvexSpec::cov(2), 2)).unwrap().1, 0);
    }

    #[test]
    fn forced_full_range_cov() {
        let poset = PosetDag::from_interior(0, &[]).unwrap();
        let r = ReductionMap::new(vec![(BOT, TOP)]);
        let inst = build_instance(&poset, &r, &ConvexSpec::cov(3), 3).unwrap();
        assert_eq!(solve_min_k_potential_cut(&inst).unwrap().1, 2);
    }

    #[test]
    fn all_zero_weights() {
        let poset = PosetDag::from_interior(2, &[]).unwrap();
        let inst = build_instance(&poset, &ReductionMap::new(vec![]), &ConvexSpec::binom(3), 3).unwrap();
        let (p, h) = solve_min_k_potential_cut(&inst).unwrap();
        assert_eq!(h, 0);
        assert!(validate_potential(&p, &inst).is_ok());
    }

    #[test]
    fn extraction_rejects_expensive_cut() {
        let inst = g2(ConvexSpec::binom(2), 2);
        let red = build_cut(&inst).unwrap();
        // only s on the source side: every s -> TOP^i arc is cut
        let mut side = vec![false; red.network().vertex_count()];
        side[red.source()] = true;
        assert!(matches!(extract_potential(&side, &red, &inst), Err(Error::Internal(_))));
    }

    #[test]
    fn dot_mentions_every_layer() {
        let red = build_cut(&g2(ConvexSpec::cov(3), 3)).unwrap();
        let dot = red.to_dot();
        assert!(dot.contains("cluster_3"));
        assert_eq!(dot.matches("->").count(), red.network().arcs().len());
    }
}
