//! Diverse stable matchings through the rotation poset.
//!
//! Preferences are 0-based: `pref_u[u]` lists `V` from most to least
//! preferred. Matchings are stored as `partner[u] = v`. The ground set of
//! solutions is `U × V` with element id `u * n + v`; the ring family of
//! P-sets lives on `U × (V ∪ {⊤})` with id `u * (n + 1) + v` and `⊤ = n`.

use crate::error::{Error, Result};
use crate::framework::{solve_diverse, Backend, DiverseSolution, Measure, BOT, TOP};
use crate::ringfamily::{lift, BlockPartition, PreReductionMap};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmInstance {
    n: usize,
    pref_u: Vec<Vec<usize>>,
    pref_v: Vec<Vec<usize>>,
    rank_u: Vec<Vec<usize>>,
    rank_v: Vec<Vec<usize>>,
}

fn ranks(prefs: &[Vec<usize>], n: usize, side: &str) -> Result<Vec<Vec<usize>>> {
    if prefs.len() != n {
        return Err(Error::Input(format!("{} {side}-side lists for n = {n}", prefs.len())));
    }
    prefs
        .iter()
        .enumerate()
        .map(|(x, list)| {
            let mut rank = vec![usize::MAX; n];
            if list.len() != n {
                return Err(Error::Input(format!("{side}{x}: list has {} entries, expected {n}", list.len())));
            }
            for (r, &y) in list.iter().enumerate() {
                if y >= n || rank[y] != usize::MAX {
                    return Err(Error::Input(format!("{side}{x}: list is not a permutation")));
                }
                rank[y] = r;
            }
            Ok(rank)
        })
        .collect()
}

impl SmInstance {
    pub fn new(pref_u: Vec<Vec<usize>>, pref_v: Vec<Vec<usize>>) -> Result<Self> {
        let n = pref_u.len();
        if n == 0 {
            return Err(Error::Input("instance needs n >= 1".into()));
        }
        let rank_u = ranks(&pref_u, n, "u")?;
        let rank_v = ranks(&pref_v, n, "v")?;
        Ok(Self {
            n,
            pref_u,
            pref_v,
            rank_u,
            rank_v,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pref_u(&self) -> &[Vec<usize>] {
        &self.pref_u
    }

    pub fn pref_v(&self) -> &[Vec<usize>] {
        &self.pref_v
    }

    /// Position of `v` in `u`'s list (0 = first choice).
    pub fn rank_u(&self, u: usize, v: usize) -> usize {
        self.rank_u[u][v]
    }

    pub fn rank_v(&self, v: usize, u: usize) -> usize {
        self.rank_v[v][u]
    }

    pub fn is_perfect(&self, partner: &[usize]) -> bool {
        let mut used = vec![false; self.n];
        partner.len() == self.n
            && partner.iter().all(|&v| v < self.n && !std::mem::replace(&mut used[v], true))
    }

    /// A pair preferring each other to their partners, if any.
    pub fn blocking_pair(&self, partner: &[usize]) -> Option<(usize, usize)> {
        let mut partner_v = vec![0; self.n];
        for (u, &v) in partner.iter().enumerate() {
            partner_v[v] = u;
        }
        (0..self.n)
            .flat_map(|u| (0..self.n).map(move |v| (u, v)))
            .find(|&(u, v)| {
                self.rank_u[u][v] < self.rank_u[u][partner[u]]
                    && self.rank_v[v][u] < self.rank_v[v][partner_v[v]]
            })
    }

    pub fn is_stable(&self, partner: &[usize]) -> bool {
        self.is_perfect(partner) && self.blocking_pair(partner).is_none()
    }

    /// Element ids `u * n + v` of a matching.
    pub fn elements(&self, partner: &[usize]) -> Vec<usize> {
        partner.iter().enumerate().map(|(u, &v)| u * self.n + v).collect()
    }

    /// `P(M)` as a mask over `U × (V ∪ {⊤})`.
    pub fn p_set(&self, partner: &[usize]) -> Vec<bool> {
        let w = self.n + 1;
        let mut mask = vec![false; self.n * w];
        for (u, &m) in partner.iter().enumerate() {
            for &v in &self.pref_u[u][..=self.rank_u[u][m]] {
                mask[u * w + v] = true;
            }
        }
        mask
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    U,
    V,
}

/// Deferred acceptance with `side` proposing. The result is always reported
/// as `partner[u]`.
pub fn gale_shapley(inst: &SmInstance, side: Side) -> Vec<usize> {
    let n = inst.n;
    let (prop, recv_rank) = match side {
        Side::U => (&inst.pref_u, &inst.rank_v),
        Side::V => (&inst.pref_v, &inst.rank_u),
    };
    let mut next = vec![0usize; n];
    let mut held: Vec<Option<usize>> = vec![None; n];
    let mut free: Vec<usize> = (0..n).rev().collect();
    while let Some(p) = free.pop() {
        let r = prop[p][next[p]];
        next[p] += 1;
        match held[r] {
            None => held[r] = Some(p),
            Some(cur) if recv_rank[r][p] < recv_rank[r][cur] => {
                held[r] = Some(p);
                free.push(cur);
            }
            Some(_) => free.push(p),
        }
    }
    let mut partner = vec![0; n];
    for (r, p) in held.into_iter().enumerate() {
        let p = p.expect("deferred acceptance matches everyone");
        match side {
            Side::U => partner[p] = r,
            Side::V => partner[r] = p,
        }
    }
    partner
}

/// `((u_0, v_0), ..., (u_{c-1}, v_{c-1}))`: eliminating it moves `u_i` to
/// `v_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rotation {
    pub pairs: Vec<(usize, usize)>,
}

#[derive(Debug, Clone)]
pub struct RotationPoset {
    pub rotations: Vec<Rotation>,
    /// `(a, b)`: rotation `b` must be eliminated before rotation `a`.
    pub precedence: Vec<(usize, usize)>,
    /// `d(ρ)` for every rotation, as `(u, v)` pairs.
    pub blocks: Vec<Vec<(usize, usize)>>,
    pub man_optimal: Vec<usize>,
    pub woman_optimal: Vec<usize>,
}

/// `s_M(u)`: the first `v` after `u`'s partner that prefers `u` to her own.
fn successor(inst: &SmInstance, partner: &[usize], partner_v: &[usize], u: usize) -> Option<usize> {
    let start = inst.rank_u[u][partner[u]] + 1;
    inst.pref_u[u][start..]
        .iter()
        .copied()
        .find(|&v| inst.rank_v[v][u] < inst.rank_v[v][partner_v[v]])
}

pub fn build_rotation_poset(inst: &SmInstance) -> Result<RotationPoset> {
    let n = inst.n;
    let m0 = gale_shapley(inst, Side::U);
    let mz = gale_shapley(inst, Side::V);
    let mut partner = m0.clone();
    let mut partner_v = vec![0; n];
    for (u, &v) in partner.iter().enumerate() {
        partner_v[v] = u;
    }
    let mut rotations: Vec<Rotation> = Vec::new();
    // moved_to[u][v]: rotation that gave u the partner v
    let mut moved_to = vec![vec![None; n]; n];
    // per v: (rotation, old partner, new partner)
    let mut improvements: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); n];

    while partner != mz {
        let succ: Vec<Option<usize>> = (0..n).map(|u| successor(inst, &partner, &partner_v, u)).collect();
        let cycle = find_cycle(&succ, &partner_v).ok_or_else(|| {
            Error::Internal("no exposed rotation before reaching the V-optimal matching".into())
        })?;
        let id = rotations.len();
        let pairs: Vec<(usize, usize)> = cycle.iter().map(|&u| (u, partner[u])).collect();
        let c = pairs.len();
        for i in 0..c {
            let (u, _) = pairs[i];
            let (next_u, next_v) = pairs[(i + 1) % c];
            partner[u] = next_v;
            partner_v[next_v] = u;
            moved_to[u][next_v] = Some(id);
            improvements[next_v].push((id, next_u, u));
        }
        rotations.push(Rotation { pairs });
    }

    let mut precedence = Vec::new();
    let mut blocks = Vec::with_capacity(rotations.len());
    for (id, rot) in rotations.iter().enumerate() {
        let c = rot.pairs.len();
        let mut block = Vec::new();
        for i in 0..c {
            let (u, v) = rot.pairs[i];
            let v_next = rot.pairs[(i + 1) % c].1;
            if let Some(prev) = moved_to[u][v] {
                precedence.push((id, prev));
            }
            let (lo, hi) = (inst.rank_u[u][v], inst.rank_u[u][v_next]);
            for &w in &inst.pref_u[u][lo + 1..hi] {
                let ru = inst.rank_v[w][u];
                if let Some(&(prev, _, _)) = improvements[w]
                    .iter()
                    .find(|&&(_, old, new)| inst.rank_v[w][old] > ru && inst.rank_v[w][new] < ru)
                {
                    precedence.push((id, prev));
                }
            }
            block.extend(inst.pref_u[u][lo + 1..=hi].iter().map(|&x| (u, x)));
        }
        blocks.push(block);
    }
    precedence.sort_unstable();
    precedence.dedup();
    Ok(RotationPoset {
        rotations,
        precedence,
        blocks,
        man_optimal: m0,
        woman_optimal: mz,
    })
}

/// A cycle of `u -> partner_v[succ(u)]`, scanning starts in increasing order.
fn find_cycle(succ: &[Option<usize>], partner_v: &[usize]) -> Option<Vec<usize>> {
    let n = succ.len();
    let mut state = vec![0u8; n];
    for start in 0..n {
        if state[start] != 0 {
            continue;
        }
        let mut path = Vec::new();
        let mut u = start;
        loop {
            if state[u] == 1 {
                let pos = path.iter().position(|&x| x == u).expect("on path");
                return Some(path[pos..].to_vec());
            }
            if state[u] == 2 {
                break;
            }
            state[u] = 1;
            path.push(u);
            match succ[u] {
                Some(v) => u = partner_v[v],
                None => break,
            }
        }
        for x in path {
            state[x] = 2;
        }
    }
    None
}

/// `(u, v) -> ((u, v), (u, next choice after v or ⊤))`.
pub fn sm_pre_reduction(inst: &SmInstance) -> PreReductionMap {
    let (n, w) = (inst.n, inst.n + 1);
    let mut image = vec![(0, 0); n * n];
    for u in 0..n {
        for v in 0..n {
            let r = inst.rank_u[u][v];
            let next = inst.pref_u[u].get(r + 1).copied().unwrap_or(n);
            image[u * n + v] = (u * w + v, u * w + next);
        }
    }
    PreReductionMap::new(image)
}

/// Blocks of the P-set family: `P(M_0)`, one block per rotation, and the rest
/// (including the `⊤` column).
pub fn sm_partition(inst: &SmInstance, rp: &RotationPoset) -> Result<BlockPartition> {
    let w = inst.n + 1;
    let bottom = inst.p_set(&rp.man_optimal);
    let mut block_of: Vec<usize> = bottom.iter().map(|&b| if b { BOT } else { TOP }).collect();
    for (id, block) in rp.blocks.iter().enumerate() {
        for &(u, v) in block {
            block_of[u * w + v] = id + 2;
        }
    }
    let arcs: Vec<(usize, usize)> = rp.precedence.iter().map(|&(a, b)| (a + 2, b + 2)).collect();
    BlockPartition::new(block_of, rp.rotations.len(), &arcs)
}

#[derive(Debug, Clone)]
pub struct SmSolution {
    /// `partner[u]` for each of the k matchings.
    pub matchings: Vec<Vec<usize>>,
    pub solution: DiverseSolution,
}

pub fn solve_diverse_sm(inst: &SmInstance, k: usize, measure: &Measure, backend: Backend) -> Result<SmSolution> {
    let rp = build_rotation_poset(inst)?;
    let part = sm_partition(inst, &rp)?;
    let r = lift(&sm_pre_reduction(inst), &part)?;
    let solution = solve_diverse(part.poset(), &r, k, measure, backend)?;
    let n = inst.n;
    let mut matchings = Vec::with_capacity(k);
    for set in solution.tuple.sets() {
        let mut partner = vec![usize::MAX; n];
        for &e in set {
            partner[e / n] = e % n;
        }
        if !inst.is_stable(&partner) {
            return Err(Error::Internal(format!("output {set:?} is not a stable matching")));
        }
        matchings.push(partner);
    }
    Ok(SmSolution { matchings, solution })
}
