use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::diversity::SolutionTuple;
use super::poset::{PosetDag, ReductionMap, BOT, TOP};
use crate::convex::ConvexSpec;
use crate::error::{Error, Result};

/// Arc of a k-potential instance. Structural arcs carry weight 0; element
/// arcs `(e_minus, e_plus)` carry the number of elements mapped onto them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WeightedArc {
    pub tail: usize,
    pub head: usize,
    pub weight: i64,
}

/// Minimum k-potential instance `(G, w, phi, k)`.
#[derive(Debug, Clone)]
pub struct KPotentialInstance {
    n: usize,
    arcs: Vec<WeightedArc>,
    convex: ConvexSpec,
    k: usize,
    ground_size: usize,
    dropped: Vec<usize>,
}

impl KPotentialInstance {
    /// Assemble an instance directly from weighted arcs (used for synthetic
    /// instances). The arc set must form a DAG with unique source `TOP` and
    /// unique sink `BOT`.
    pub fn from_arcs(n: usize, arcs: Vec<WeightedArc>, convex: ConvexSpec, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidK(0));
        }
        if arcs.iter().any(|a| a.weight < 0) {
            return Err(Error::Input("negative arc weight".into()));
        }
        PosetDag::new(n, arcs.iter().map(|a| (a.tail, a.head)).collect())?;
        let convex = convex.with_bound(k)?;
        Ok(Self {
            n,
            arcs,
            convex,
            k,
            ground_size: 0,
            dropped: Vec::new(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[WeightedArc] {
        &self.arcs
    }

    pub fn convex(&self) -> &ConvexSpec {
        &self.convex
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `|E|` before dropping degenerate elements.
    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    /// Elements with `e_plus == e_minus`, left out of the arc weights.
    pub fn dropped(&self) -> &[usize] {
        &self.dropped
    }

    pub fn total_weight(&self) -> i64 {
        self.arcs.iter().map(|a| a.weight).sum()
    }

    /// Same graph and weights with another penalty.
    pub fn with_convex(&self, convex: ConvexSpec) -> Result<Self> {
        Ok(Self {
            convex: convex.with_bound(self.k)?,
            ..self.clone()
        })
    }

    /// `M = sum_a w(a) phi(k) + 1`, which exceeds `H(p)` for every k-potential.
    pub fn default_big_m(&self) -> Result<i64> {
        let phi_k = self.convex.eval_unchecked(self.k);
        self.total_weight()
            .checked_mul(phi_k)
            .and_then(|x| x.checked_add(1))
            .ok_or(Error::Overflow("computing M"))
    }
}

/// Build `(G_I, w_I, phi)`: the poset arcs with weight 0 plus one arc
/// `(e_minus, e_plus)` per distinct element image, weighted by multiplicity.
pub fn build_instance(
    poset: &PosetDag,
    r: &ReductionMap,
    convex: &ConvexSpec,
    k: usize,
) -> Result<KPotentialInstance> {
    if k == 0 {
        return Err(Error::InvalidK(0));
    }
    r.validate(poset)?;
    let convex = convex.with_bound(k)?;

    let mut arcs: Vec<WeightedArc> = poset
        .arcs()
        .iter()
        .map(|&(tail, head)| WeightedArc { tail, head, weight: 0 })
        .collect();
    let mut multiplicity: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    let mut dropped = Vec::new();
    for (e, &(plus, minus)) in r.image().iter().enumerate() {
        if plus == minus {
            dropped.push(e);
            continue;
        }
        *multiplicity.entry((minus, plus)).or_insert(0) += 1;
    }
    arcs.extend(
        multiplicity
            .into_iter()
            .map(|((tail, head), weight)| WeightedArc { tail, head, weight }),
    );
    // Every non-terminal vertex of a validated poset already has an in- and
    // an out-arc, so no isolated vertex survives to be pruned.
    Ok(KPotentialInstance {
        n: poset.len(),
        arcs,
        convex,
        k,
        ground_size: r.ground_size(),
        dropped,
    })
}

/// Integer labels on the instance vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KPotential {
    pub values: Vec<i64>,
}

impl KPotential {
    pub fn new(values: Vec<i64>) -> Self {
        Self { values }
    }

    pub fn get(&self, v: usize) -> i64 {
        self.values[v]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PotentialViolation {
    WrongLength { expected: usize, got: usize },
    /// `(P1)`: `p(BOT) = k` and `p(TOP) = 0`.
    Terminal { vertex: usize, value: i64, expected: i64 },
    /// `(P2)`: `0 <= p(v) <= k`.
    Range { vertex: usize, value: i64 },
    /// `(P3)`: `p(tail) <= p(head)` along every arc.
    Monotone { tail: usize, head: usize },
}

impl fmt::Display for PotentialViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PotentialViolation::WrongLength { expected, got } => {
                write!(f, "expected {expected} labels, got {got}")
            }
            PotentialViolation::Terminal { vertex, value, expected } => {
                write!(f, "(P1) p({vertex}) = {value}, expected {expected}")
            }
            PotentialViolation::Range { vertex, value } => {
                write!(f, "(P2) p({vertex}) = {value} outside [0, k]")
            }
            PotentialViolation::Monotone { tail, head } => {
                write!(f, "(P3) p({tail}) > p({head}) on arc ({tail}, {head})")
            }
        }
    }
}

/// Check `(P1)`, `(P2)` and `(P3)` in that order and report the first failure.
pub fn validate_potential(
    p: &KPotential,
    inst: &KPotentialInstance,
) -> std::result::Result<(), PotentialViolation> {
    let k = inst.k as i64;
    if p.values.len() != inst.n {
        return Err(PotentialViolation::WrongLength {
            expected: inst.n,
            got: p.values.len(),
        });
    }
    if p.values[BOT] != k {
        return Err(PotentialViolation::Terminal {
            vertex: BOT,
            value: p.values[BOT],
            expected: k,
        });
    }
    if p.values[TOP] != 0 {
        return Err(PotentialViolation::Terminal {
            vertex: TOP,
            value: p.values[TOP],
            expected: 0,
        });
    }
    if let Some(v) = (0..inst.n).find(|&v| !(0..=k).contains(&p.values[v])) {
        return Err(PotentialViolation::Range { vertex: v, value: p.values[v] });
    }
    if let Some(a) = inst.arcs.iter().find(|a| p.values[a.tail] > p.values[a.head]) {
        return Err(PotentialViolation::Monotone { tail: a.tail, head: a.head });
    }
    Ok(())
}

fn require_valid(p: &KPotential, inst: &KPotentialInstance) -> Result<()> {
    validate_potential(p, inst).map_err(|v| Error::InvalidPotential(v.to_string()))
}

/// `H(p) = sum_{(u,v)} w(u,v) phi(p(v) - p(u))`.
pub fn h_value(p: &KPotential, inst: &KPotentialInstance) -> Result<i64> {
    require_valid(p, inst)?;
    let mut total: i64 = 0;
    for a in inst.arcs.iter().filter(|a| a.weight > 0) {
        let x = (p.values[a.head] - p.values[a.tail]) as usize;
        let term = a
            .weight
            .checked_mul(inst.convex.eval_unchecked(x))
            .ok_or(Error::Overflow("evaluating H"))?;
        total = total.checked_add(term).ok_or(Error::Overflow("evaluating H"))?;
    }
    Ok(total)
}

/// `S_i = { e | p(e_minus) < i <= p(e_plus) }` for `i = 1..=k`.
///
/// The potential is checked against `inst`, which must have been built from
/// `r`.
pub fn solutions_from_potential(
    p: &KPotential,
    r: &ReductionMap,
    inst: &KPotentialInstance,
) -> Result<SolutionTuple> {
    require_valid(p, inst)?;
    let k = inst.k;
    let mut sets = vec![Vec::new(); k];
    for (e, &(plus, minus)) in r.image().iter().enumerate() {
        let lo = p.values[minus];
        let hi = p.values[plus];
        for i in (lo + 1)..=hi {
            sets[(i - 1) as usize].push(e);
        }
    }
    Ok(SolutionTuple::new(sets))
}
