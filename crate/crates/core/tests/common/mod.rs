//! Seeded instance generators shared by the integration tests.
#![allow(dead_code)]

use kdiverse_core::convex::{validate_table, ConvexSpec};
use kdiverse_core::framework::{build_instance, KPotentialInstance, PosetDag, ReductionMap};
use kdiverse_core::lattice::ProductLattice;
use kdiverse_core::mincut::Digraph;
use kdiverse_core::stable_matching::SmInstance;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `s = 0`, `t = n - 1`, no loops, parallel arcs allowed.
pub fn random_digraph(rng: &mut impl Rng, n: usize, m: usize) -> Digraph {
    let arcs = (0..m)
        .map(|_| loop {
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if u != v {
                break (u, v);
            }
        })
        .collect();
    Digraph::new(n, arcs).unwrap()
}

pub fn random_sm(rng: &mut impl Rng, n: usize) -> SmInstance {
    let mut side = || {
        (0..n)
            .map(|_| {
                let mut list: Vec<usize> = (0..n).collect();
                list.shuffle(rng);
                list
            })
            .collect::<Vec<_>>()
    };
    let pu = side();
    let pv = side();
    SmInstance::new(pu, pv).unwrap()
}

/// Closure of a random set of tuples in a product of at most three orders
/// with at most four elements each.
pub fn random_lattice(rng: &mut impl Rng) -> ProductLattice {
    let q = rng.gen_range(1..=3);
    let sizes: Vec<usize> = (0..q).map(|_| rng.gen_range(1..=4)).collect();
    let orders: Vec<Vec<usize>> = sizes
        .iter()
        .enumerate()
        .map(|(i, &s)| (0..s).map(|r| 10 * i + r).collect())
        .collect();
    let seeds = rng.gen_range(1..=4);
    let mut members: Vec<Vec<usize>> = (0..seeds)
        .map(|_| sizes.iter().map(|&s| rng.gen_range(0..s)).collect())
        .collect();
    members.sort();
    members.dedup();
    loop {
        let mut grown = members.clone();
        for a in &members {
            for b in &members {
                grown.push(a.iter().zip(b).map(|(x, y)| *x.min(y)).collect());
                grown.push(a.iter().zip(b).map(|(x, y)| *x.max(y)).collect());
            }
        }
        grown.sort();
        grown.dedup();
        if grown.len() == members.len() {
            break;
        }
        members = grown;
    }
    let labelled = members
        .iter()
        .map(|m| m.iter().zip(&orders).map(|(&r, o)| o[r]).collect())
        .collect();
    ProductLattice::new(orders, labelled).unwrap()
}

/// Random nondecreasing convex table on `[0, k]`.
pub fn random_table(rng: &mut impl Rng, k: usize) -> ConvexSpec {
    let mut steps: Vec<i64> = (0..k).map(|_| rng.gen_range(0..=3)).collect();
    steps.sort_unstable();
    let mut values = vec![0];
    for s in steps {
        values.push(values.last().unwrap() + s);
    }
    validate_table(&values).unwrap()
}

/// A poset with up to `max_interior` interior vertices and a reduction map
/// over up to `max_ground` elements.
pub fn random_poset_and_map(rng: &mut impl Rng, max_interior: usize, max_ground: usize) -> (PosetDag, ReductionMap) {
    let m = rng.gen_range(0..=max_interior);
    let mut arcs = Vec::new();
    for hi in 0..m {
        for lo in 0..hi {
            if rng.gen_bool(0.3) {
                arcs.push((hi + 2, lo + 2));
            }
        }
    }
    let poset = PosetDag::from_interior(m, &arcs).unwrap();
    let e = rng.gen_range(0..=max_ground);
    let image = (0..e)
        .map(|_| {
            let minus = rng.gen_range(0..poset.len());
            let below: Vec<usize> = (0..poset.len()).filter(|&v| poset.reaches(minus, v)).collect();
            (*below.choose(rng).unwrap(), minus)
        })
        .collect();
    let r = ReductionMap::new(image);
    r.validate(&poset).unwrap();
    (poset, r)
}

pub fn random_convex(rng: &mut impl Rng, k: usize) -> ConvexSpec {
    match rng.gen_range(0..4) {
        0 => ConvexSpec::square(k),
        1 => ConvexSpec::binom(k),
        2 => ConvexSpec::cov(k),
        _ => random_table(rng, k),
    }
}

pub fn random_potential_instance(rng: &mut impl Rng) -> (PosetDag, ReductionMap, KPotentialInstance) {
    let (poset, r) = random_poset_and_map(rng, 4, 6);
    let k = rng.gen_range(1..=3);
    let convex = random_convex(rng, k);
    let inst = build_instance(&poset, &r, &convex, k).unwrap();
    (poset, r, inst)
}
