//! Brute-force references. Everything here is exhaustive and guarded by a
//! hard size limit.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::framework::{d_cov, d_sum_pairwise, h_value, Ideal, KPotential, KPotentialInstance, PosetDag, SolutionTuple, BOT, TOP};
use crate::lattice::ProductLattice;
use crate::mincut::Digraph;
use crate::stable_matching::SmInstance;

pub const MAX_CUT_VERTICES: usize = 20;
pub const MAX_SM_N: usize = 6;
pub const MAX_TUPLES: u64 = 1_000_000;
pub const MAX_POTENTIALS: u64 = 1_000_000;
pub const MAX_IDEAL_POSET: usize = 20;

fn too_large(what: &str) -> Error {
    Error::TooLarge(what.into())
}

/// Source sides `X` (with `s ∈ X ∌ t`) of all minimum cuts, by scanning
/// every subset.
pub fn enum_min_cut_sides(g: &Digraph, s: usize, t: usize) -> Result<Vec<Vec<bool>>> {
    let n = g.vertex_count();
    if n > MAX_CUT_VERTICES {
        return Err(too_large(&format!("{n} vertices, oracle limit {MAX_CUT_VERTICES}")));
    }
    if s >= n || t >= n || s == t {
        return Err(Error::Input("source and sink must be distinct vertices".into()));
    }
    let others: Vec<usize> = (0..n).filter(|&v| v != s && v != t).collect();
    let mut best = usize::MAX;
    let mut sides = Vec::new();
    for bits in 0u64..(1 << others.len()) {
        let mut side = vec![false; n];
        side[s] = true;
        for (j, &v) in others.iter().enumerate() {
            side[v] = bits >> j & 1 == 1;
        }
        let size = g.out_arcs(&side).len();
        if size < best {
            best = size;
            sides.clear();
        }
        if size == best {
            sides.push(side);
        }
    }
    Ok(sides)
}

/// Minimum cuts as sorted arc-id sets, deduplicated.
pub fn enum_min_cuts(g: &Digraph, s: usize, t: usize) -> Result<Vec<Vec<usize>>> {
    let cuts: BTreeSet<Vec<usize>> = enum_min_cut_sides(g, s, t)?.iter().map(|x| g.out_arcs(x)).collect();
    Ok(cuts.into_iter().collect())
}

/// Every permutation as `partner[u]`, in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

/// Stable matchings as `partner[u]`, from all `n!` perfect matchings.
pub fn enum_stable_matchings(inst: &SmInstance) -> Result<Vec<Vec<usize>>> {
    if inst.n() > MAX_SM_N {
        return Err(too_large(&format!("n = {}, oracle limit {MAX_SM_N}", inst.n())));
    }
    Ok(permutations(inst.n()).into_iter().filter(|m| inst.is_stable(m)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMeasure {
    Sum,
    Cov,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub optimum: i64,
    /// The first optimal tuple in lexicographic order of solution indices.
    pub tuple: Vec<Vec<usize>>,
    pub count: u64,
}

/// Exact optimum over ordered k-tuples with repetition.
pub fn best_ktuple(solutions: &[Vec<usize>], k: usize, measure: OracleMeasure) -> Result<OracleReport> {
    if k == 0 {
        return Err(Error::InvalidK(k));
    }
    if solutions.is_empty() {
        return Err(Error::Input("no solutions to choose from".into()));
    }
    let total = (solutions.len() as u64)
        .checked_pow(k as u32)
        .filter(|&t| t <= MAX_TUPLES)
        .ok_or_else(|| too_large(&format!("{}^{k} tuples, oracle limit {MAX_TUPLES}", solutions.len())))?;
    let mut idx = vec![0usize; k];
    let mut best: Option<OracleReport> = None;
    for _ in 0..total {
        let tuple = SolutionTuple::new(idx.iter().map(|&i| solutions[i].clone()).collect());
        let value = match measure {
            OracleMeasure::Sum => d_sum_pairwise(&tuple),
            OracleMeasure::Cov => d_cov(&tuple),
        };
        match &mut best {
            Some(b) if value < b.optimum => {}
            Some(b) if value == b.optimum => b.count += 1,
            _ => {
                best = Some(OracleReport {
                    optimum: value,
                    tuple: tuple.into_sets(),
                    count: 1,
                })
            }
        }
        for slot in idx.iter_mut().rev() {
            *slot += 1;
            if *slot < solutions.len() {
                break;
            }
            *slot = 0;
        }
    }
    Ok(best.expect("at least one tuple"))
}

/// Minimum of `H` over every valid k-potential.
pub fn brute_min_k_potential(inst: &KPotentialInstance) -> Result<(KPotential, i64)> {
    let mut best: Option<(KPotential, i64)> = None;
    for p in enum_potentials(inst)? {
        let h = h_value(&p, inst)?;
        if best.as_ref().map_or(true, |(_, b)| h < *b) {
            best = Some((p, h));
        }
    }
    best.ok_or_else(|| Error::Internal("no valid k-potential".into()))
}

/// Every valid k-potential, interior values in odometer order.
pub fn enum_potentials(inst: &KPotentialInstance) -> Result<Vec<KPotential>> {
    let (n, k) = (inst.vertex_count(), inst.k());
    let interior = n.saturating_sub(2);
    let total = (k as u64 + 1)
        .checked_pow(interior as u32)
        .filter(|&t| t <= MAX_POTENTIALS)
        .ok_or_else(|| too_large(&format!("{}^{interior} potentials, oracle limit {MAX_POTENTIALS}", k + 1)))?;
    let mut values = vec![0i64; n];
    values[BOT] = k as i64;
    values[TOP] = 0;
    let mut out = Vec::new();
    for _ in 0..total {
        if inst.arcs().iter().all(|a| values[a.tail] <= values[a.head]) {
            out.push(KPotential::new(values.clone()));
        }
        for v in (2..n).rev() {
            values[v] += 1;
            if values[v] <= k as i64 {
                break;
            }
            values[v] = 0;
        }
    }
    Ok(out)
}

/// All ideals of the interior, by scanning subsets.
pub fn enum_ideals(poset: &PosetDag) -> Result<Vec<Ideal>> {
    let m = poset.len() - 2;
    if m > MAX_IDEAL_POSET {
        return Err(too_large(&format!("{m} interior vertices, oracle limit {MAX_IDEAL_POSET}")));
    }
    let mut out = Vec::new();
    for bits in 0u64..(1 << m) {
        let members = (0..m).filter(|j| bits >> j & 1 == 1).map(|j| j + 2);
        if let Ok(ideal) = Ideal::new(poset, members) {
            out.push(ideal);
        }
    }
    Ok(out)
}

/// Lattice members encoded as ground-set subsets.
pub fn enum_lattice_members(lat: &ProductLattice) -> Vec<Vec<usize>> {
    lat.members().iter().map(|m| lat.encode(m)).collect()
}
