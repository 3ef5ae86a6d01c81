//! Minimum k-potentials through a minimum-cost flow and its dual.

use serde::Serialize;
use serde_json::{json, Value};

use crate::flow::{self, FlowNetwork, ResidualGraph};
use crate::framework::{h_value, validate_potential, KPotential, KPotentialInstance, BOT, TOP};
use crate::error::{Error, Result};

/// Where a network arc comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum ArcRole {
    /// Copy `segment` of instance arc `arc` with positive weight.
    Weighted { arc: usize, segment: usize },
    /// Copy `copy` (0 or 1) of a zero-weight instance arc.
    Unweighted { arc: usize, copy: usize },
    /// Copy `copy` of the root arc to an interior vertex.
    Root { vertex: usize, copy: usize },
    RootBot,
    RootTop,
}

#[derive(Debug, Clone)]
pub struct McfReduction {
    network: FlowNetwork,
    big_m: i64,
    provenance: Vec<ArcRole>,
}

/// Network id of the extra root vertex.
pub const ROOT: usize = 0;

/// Network id of instance vertex `v`.
pub fn network_vertex(v: usize) -> usize {
    v + 1
}

impl McfReduction {
    pub fn network(&self) -> &FlowNetwork {
        &self.network
    }

    pub fn big_m(&self) -> i64 {
        self.big_m
    }

    pub fn provenance(&self) -> &[ArcRole] {
        &self.provenance
    }

    /// Arcs, costs, capacities and demands as JSON.
    pub fn to_json(&self) -> Value {
        let arcs: Vec<Value> = self
            .network
            .arcs()
            .iter()
            .zip(&self.provenance)
            .map(|(a, role)| {
                json!({
                    "tail": a.tail,
                    "head": a.head,
                    "cost": a.cost,
                    "cap": a.cap,
                    "origin": role,
                })
            })
            .collect();
        json!({
            "vertices": self.network.vertex_count(),
            "root": ROOT,
            "big_m": self.big_m,
            "arcs": arcs,
            "demands": self.network.demands().unwrap_or(&[]),
        })
    }
}

pub fn build_mcf(inst: &KPotentialInstance) -> Result<McfReduction> {
    build_mcf_with_big_m(inst, inst.default_big_m()?)
}

/// Same construction with a caller-chosen `M`; it must exceed `H(p)` for
/// every k-potential for the solve to be meaningful.
pub fn build_mcf_with_big_m(inst: &KPotentialInstance, big_m: i64) -> Result<McfReduction> {
    const CTX: &str = "building the flow network";
    let k = inst.k() as i64;
    let n = inst.vertex_count();
    let m = big_m;
    let profile = inst.convex().breakpoints_k(inst.k())?;
    let mut net = FlowNetwork::new(n + 1);
    let mut provenance = Vec::new();

    let mut degree = vec![0i64; n + 1];
    for (idx, a) in inst.arcs().iter().enumerate() {
        let (u, v) = (network_vertex(a.tail), network_vertex(a.head));
        degree[u] += 1;
        degree[v] -= 1;
        if a.weight == 0 {
            for (copy, cost) in [0, k].into_iter().enumerate() {
                net.add_arc(u, v, m, cost);
                provenance.push(ArcRole::Unweighted { arc: idx, copy });
            }
            continue;
        }
        let w = a.weight;
        let mul = |x: i64| w.checked_mul(x).ok_or(Error::Overflow(CTX));
        let mut caps = Vec::with_capacity(profile.points.len());
        caps.push(mul(profile.first_slope)?.checked_add(m).ok_or(Error::Overflow(CTX))?);
        for (l, r) in profile.left_slopes.iter().zip(&profile.right_slopes) {
            caps.push(mul(r - l)?);
        }
        caps.push(m.checked_sub(mul(profile.last_slope)?).ok_or(Error::Overflow(CTX))?);
        for (segment, (&b, &cap)) in profile.points.iter().zip(&caps).enumerate() {
            if cap < 0 {
                return Err(Error::Input(format!("M = {m} too small for arc weight {w}")));
            }
            net.add_arc(u, v, cap, b as i64);
            provenance.push(ArcRole::Weighted { arc: idx, segment });
        }
    }

    let double_m = m.checked_mul(2).ok_or(Error::Overflow(CTX))?;
    for v in 0..n {
        let x = network_vertex(v);
        degree[ROOT] += 1;
        degree[x] -= 1;
        match v {
            BOT => {
                net.add_arc(ROOT, x, double_m, k);
                provenance.push(ArcRole::RootBot);
            }
            TOP => {
                net.add_arc(ROOT, x, double_m, 0);
                provenance.push(ArcRole::RootTop);
            }
            _ => {
                for (copy, cost) in [0, k].into_iter().enumerate() {
                    net.add_arc(ROOT, x, m, cost);
                    provenance.push(ArcRole::Root { vertex: v, copy });
                }
            }
        }
    }

    let demands = degree
        .into_iter()
        .map(|d| d.checked_mul(m).ok_or(Error::Overflow(CTX)))
        .collect::<Result<Vec<_>>>()?;
    net.set_demands(demands)?;
    Ok(McfReduction {
        network: net,
        big_m: m,
        provenance,
    })
}

/// Outcome of a min-cost-flow solve, with sizes for reporting.
#[derive(Debug, Clone)]
pub struct McfOutcome {
    pub potential: KPotential,
    pub h: i64,
    pub flow_cost: i64,
    pub vertices: usize,
    pub arcs: usize,
}

pub fn solve_min_k_potential_mcf(inst: &KPotentialInstance) -> Result<(KPotential, i64)> {
    solve_mcf(inst).map(|o| (o.potential, o.h))
}

/// Build, solve the flow, recover a dual potential from the residual graph
/// and restrict it to the instance vertices.
pub fn solve_mcf(inst: &KPotentialInstance) -> Result<McfOutcome> {
    let red = build_mcf(inst)?;
    let net = red.network();
    let sol = flow::min_cost_bflow_with_potentials(net).map_err(|e| match e {
        Error::Infeasible { unmet } => {
            Error::Internal(format!("reduction network infeasible ({unmet} units unmet)"))
        }
        other => other,
    })?;
    let residual = ResidualGraph::new(net, &sol.flow);
    let pi = flow::feasible_potential(&residual, Some(&sol.potentials))?;
    if let Some(a) = residual.violated_by(&pi) {
        return Err(Error::Internal(format!("dual potential violates residual arc {a:?}")));
    }
    let potential = KPotential::new((0..inst.vertex_count()).map(|v| pi[network_vertex(v)]).collect());
    validate_potential(&potential, inst)
        .map_err(|v| Error::Internal(format!("recovered potential invalid: {v}")))?;
    let h = h_value(&potential, inst)?;
    Ok(McfOutcome {
        potential,
        h,
        flow_cost: sol.cost,
        vertices: net.vertex_count(),
        arcs: net.arcs().len(),
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

    fn weighted_copies(red: &McfReduction, arc: usize) -> Vec<(i64, i64)> {
        red.network()
            .arcs()
            .iter()
            .zip(red.provenance())
            .filter(|(_, role)| matches!(role, ArcRole::Weighted { arc: a, .. } if *a == arc))
            .map(|(a, _)| (a.cost, a.cap))
            .collect()
    }

    #[test]
    fn cov_weighted_arc_layout() {
        let inst = KPotentialInstance::from_arcs(
            2,
            vec![WeightedArc { tail: TOP, head: BOT, weight: 1 }],
            ConvexSpec::cov(3),
            3,
        )
        .unwrap();
        let red = build_mcf(&inst).unwrap();
        let m = red.big_m();
        assert_eq!(m, 3);
        assert_eq!(weighted_copies(&red, 0), vec![(0, m), (1, 1), (3, m - 1)]);
    }

    #[test]
    fn zero_weight_and_root_arcs() {
        let inst = g2(ConvexSpec::square(2), 2);
        let red = build_mcf(&inst).unwrap();
        let m = red.big_m();
        assert_eq!(m, 9);
        let net = red.network();
        let unweighted: Vec<_> = net
            .arcs()
            .iter()
            .zip(red.provenance())
            .filter(|(_, r)| matches!(r, ArcRole::Unweighted { arc: 0, .. }))
            .map(|(a, _)| (a.cost, a.cap))
            .collect();
        assert_eq!(unweighted, vec![(0, m), (2, m)]);
        for (a, role) in net.arcs().iter().zip(red.provenance()) {
            match role {
                ArcRole::RootBot => assert_eq!((a.cost, a.cap), (2, 2 * m)),
                ArcRole::RootTop => assert_eq!((a.cost, a.cap), (0, 2 * m)),
                _ => {}
            }
        }
        let d = net.demands().unwrap();
        assert_eq!(d.iter().sum::<i64>(), 0);
        // root has out-degree |V| = 3 in G'
        assert_eq!(d[ROOT], 3 * m);
        // m (network 3): out-arcs (m, BOT) twice, in-arcs (TOP, m) twice + root arc
        assert_eq!(d[network_vertex(2)], m * (2 - 3));
    }

    #[test]
    fn capacities_telescope() {
        for convex in [ConvexSpec::square(5), ConvexSpec::cov(5), ConvexSpec::binom(5)] {
            let inst = KPotentialInstance::from_arcs(
                2,
                vec![WeightedArc { tail: TOP, head: BOT, weight: 3 }],
                convex.clone(),
                5,
            )
            .unwrap();
            let red = build_mcf(&inst).unwrap();
            let caps: Vec<i64> = weighted_copies(&red, 0).into_iter().map(|c| c.1).collect();
            assert!(caps.iter().all(|&c| c >= 0));
            let profile = convex.breakpoints_k(5).unwrap();
            let middle: i64 = caps[1..caps.len() - 1].iter().sum();
            assert_eq!(middle, 3 * (profile.last_slope - profile.first_slope));
            assert_eq!(caps.iter().sum::<i64>(), 2 * red.big_m());
        }
    }

    #[test]
    fn g2_square_optimum() {
        let (p, h) = solve_min_k_potential_mcf(&g2(ConvexSpec::square(2), 2)).unwrap();
        assert_eq!(h, 2);
        assert_eq!(p.get(2), 1);
    }

    #[test]
    fn all_zero_weights() {
        let poset = PosetDag::from_interior(3, &[(3, 2)]).unwrap();
        let inst = build_instance(&poset, &ReductionMap::new(vec![]), &ConvexSpec::square(3), 3).unwrap();
        let (p, h) = solve_min_k_potential_mcf(&inst).unwrap();
        assert_eq!(h, 0);
        assert!(validate_potential(&p, &inst).is_ok());
    }

    #[test]
    fn forced_full_range() {
        let poset = PosetDag::from_interior(0, &[]).unwrap();
        let r = ReductionMap::new(vec![(BOT, TOP)]);
        let inst = build_instance(&poset, &r, &ConvexSpec::square(3), 3).unwrap();
        assert_eq!(solve_min_k_potential_mcf(&inst).unwrap().1, 9);
    }

    #[test]
    fn linear_penalty_single_segment() {
        // phi(x) = 2x has no breakpoints on [0, 3]
        let convex = crate::convex::validate_table(&[0, 2, 4, 6]).unwrap();
        let inst = g2(convex, 3);
        let red = build_mcf(&inst).unwrap();
        let m = red.big_m();
        let copies = weighted_copies(&red, 2);
        assert_eq!(copies, vec![(0, m + 2), (3, m - 2)]);
        let (_, h) = solve_min_k_potential_mcf(&inst).unwrap();
        assert_eq!(h, 6);
    }

    #[test]
    fn dump_is_json() {
        let red = build_mcf(&g2(ConvexSpec::cov(2), 2)).unwrap();
        let v = red.to_json();
        assert_eq!(v["arcs"].as_array().unwrap().len(), red.network().arcs().len());
        assert_eq!(v["arcs"][0]["origin"]["role"], "unweighted");
    }
}
