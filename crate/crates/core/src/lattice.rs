//! Diverse members of an explicit sublattice of a product of total orders.
//!
//! Coordinate `i` holds an order `E_i` listed from smallest to largest. A
//! member is one element per coordinate. Internally elements are ranks, the
//! solution ground set is the disjoint union of the `E_i` (id `offset_i +
//! rank`), and the ring family lives on the `E_i` each extended by a
//! coordinate top `⊤_i`.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::framework::{solve_diverse, Backend, DiverseSolution, Measure, BOT, TOP};
use crate::ringfamily::{lift, BlockPartition, PreReductionMap};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductLattice {
    orders: Vec<Vec<usize>>,
    /// Members as rank tuples, sorted.
    members: Vec<Vec<usize>>,
}

fn meet(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().zip(b).map(|(&x, &y)| x.min(y)).collect()
}

fn join(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().zip(b).map(|(&x, &y)| x.max(y)).collect()
}

fn leq(a: &[usize], b: &[usize]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

impl ProductLattice {
    /// `members` are given as element ids, one per coordinate. Duplicates
    /// are merged.
    pub fn new(orders: Vec<Vec<usize>>, members: Vec<Vec<usize>>) -> Result<Self> {
        if orders.is_empty() || orders.iter().any(Vec::is_empty) {
            return Err(Error::Input("every total order needs at least one element".into()));
        }
        let rank: Vec<HashMap<usize, usize>> = orders
            .iter()
            .enumerate()
            .map(|(i, order)| {
                let map: HashMap<usize, usize> = order.iter().enumerate().map(|(r, &e)| (e, r)).collect();
                if map.len() != order.len() {
                    return Err(Error::Input(format!("order {i} repeats an element")));
                }
                Ok(map)
            })
            .collect::<Result<_>>()?;
        let mut set = BTreeSet::new();
        for (m, tuple) in members.iter().enumerate() {
            if tuple.len() != orders.len() {
                return Err(Error::Input(format!(
                    "member {m} has {} coordinates, expected {}",
                    tuple.len(),
                    orders.len()
                )));
            }
            let ranks = tuple
                .iter()
                .zip(&rank)
                .enumerate()
                .map(|(i, (e, map))| {
                    map.get(e)
                        .copied()
                        .ok_or_else(|| Error::Input(format!("member {m}: {e} is not in order {i}")))
                })
                .collect::<Result<Vec<_>>>()?;
            set.insert(ranks);
        }
        if set.is_empty() {
            return Err(Error::Input("lattice has no members".into()));
        }
        let members: Vec<Vec<usize>> = set.into_iter().collect();
        let lookup: BTreeSet<&Vec<usize>> = members.iter().collect();
        for a in &members {
            for b in &members {
                for c in [meet(a, b), join(a, b)] {
                    if !lookup.contains(&c) {
                        return Err(Error::Input(format!(
                            "members are not closed under meet and join: {:?}",
                            self_labels(&orders, &c)
                        )));
                    }
                }
            }
        }
        Ok(Self { orders, members })
    }

    pub fn orders(&self) -> &[Vec<usize>] {
        &self.orders
    }

    /// Rank tuples, lexicographically sorted.
    pub fn members(&self) -> &[Vec<usize>] {
        &self.members
    }

    pub fn dims(&self) -> usize {
        self.orders.len()
    }

    pub fn minimum(&self) -> Vec<usize> {
        self.members.iter().fold(self.members[0].clone(), |acc, m| meet(&acc, m))
    }

    pub fn maximum(&self) -> Vec<usize> {
        self.members.iter().fold(self.members[0].clone(), |acc, m| join(&acc, m))
    }

    /// Element labels of a rank tuple.
    pub fn labels(&self, ranks: &[usize]) -> Vec<usize> {
        self_labels(&self.orders, ranks)
    }

    fn offsets(&self, extra: usize) -> Vec<usize> {
        let mut acc = 0;
        self.orders
            .iter()
            .map(|o| {
                acc += o.len() + extra;
                acc - o.len() - extra
            })
            .collect()
    }

    /// Size of the disjoint union of the orders.
    pub fn ground_size(&self) -> usize {
        self.orders.iter().map(Vec::len).sum()
    }

    /// Ground-set encoding of a rank tuple: one element per coordinate.
    pub fn encode(&self, ranks: &[usize]) -> Vec<usize> {
        self.offsets(0).iter().zip(ranks).map(|(o, r)| o + r).collect()
    }

    /// Inverse of [`Self::encode`] for a set with one element per coordinate.
    pub fn decode(&self, set: &[usize]) -> Option<Vec<usize>> {
        let offsets = self.offsets(0);
        let mut ranks = vec![None; self.dims()];
        for &e in set {
            let i = offsets.iter().rposition(|&o| o <= e)?;
            let r = e - offsets[i];
            if r >= self.orders[i].len() || ranks[i].replace(r).is_some() {
                return None;
            }
        }
        ranks.into_iter().collect()
    }

    /// Down-set of every coordinate, as a mask over the extended ground set.
    pub fn p_set(&self, ranks: &[usize]) -> Vec<bool> {
        let mut mask = Vec::new();
        for (order, &r) in self.orders.iter().zip(ranks) {
            mask.extend((0..=order.len()).map(|x| x <= r));
        }
        mask
    }
}

fn self_labels(orders: &[Vec<usize>], ranks: &[usize]) -> Vec<usize> {
    orders.iter().zip(ranks).map(|(o, &r)| o[r]).collect()
}

/// Join-irreducible members in topological order, with the order between
/// them as `(larger, smaller)` index pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinIrreducibles {
    pub members: Vec<Vec<usize>>,
    pub order: Vec<(usize, usize)>,
}

pub fn join_irreducibles(lat: &ProductLattice) -> JoinIrreducibles {
    let bottom = lat.minimum();
    let mut irr: Vec<Vec<usize>> = lat
        .members
        .iter()
        .filter(|x| **x != bottom)
        .filter(|x| {
            let below = lat
                .members
                .iter()
                .filter(|y| y != x && leq(y, x))
                .fold(bottom.clone(), |acc, y| join(&acc, y));
            below != **x
        })
        .cloned()
        .collect();
    irr.sort_by_key(|x| (x.iter().sum::<usize>(), x.clone()));
    let mut order = Vec::new();
    for a in 0..irr.len() {
        for b in 0..irr.len() {
            if a != b && leq(&irr[b], &irr[a]) {
                order.push((a, b));
            }
        }
    }
    JoinIrreducibles { members: irr, order }
}

/// Blocks `P(Y_j) ∖ P(Y_{j-1})` along `Y_0 = min`, `Y_j = Y_{j-1} ∨ X_j`, and
/// the map `e -> (e, cover of e or ⊤_i)`.
pub fn chain_blocks(lat: &ProductLattice, irr: &JoinIrreducibles) -> Result<(BlockPartition, PreReductionMap)> {
    let ext = lat.offsets(1);
    let size = lat.ground_size() + lat.dims();
    let mut block_of = vec![TOP; size];
    let mut y = lat.minimum();
    for (i, &r) in y.iter().enumerate() {
        for x in 0..=r {
            block_of[ext[i] + x] = BOT;
        }
    }
    for (j, x) in irr.members.iter().enumerate() {
        let next = join(&y, x);
        for i in 0..lat.dims() {
            for r in y[i] + 1..=next[i] {
                block_of[ext[i] + r] = j + 2;
            }
        }
        y = next;
    }
    let arcs: Vec<(usize, usize)> = irr.order.iter().map(|&(a, b)| (a + 2, b + 2)).collect();
    let part = BlockPartition::new(block_of, irr.members.len(), &arcs)?;

    let mut image = Vec::with_capacity(lat.ground_size());
    for (i, order) in lat.orders.iter().enumerate() {
        for r in 0..order.len() {
            image.push((ext[i] + r, ext[i] + r + 1));
        }
    }
    Ok((part, PreReductionMap::new(image)))
}

#[derive(Debug, Clone)]
pub struct LatticeSolution {
    /// Element labels of each chosen member.
    pub members: Vec<Vec<usize>>,
    pub solution: DiverseSolution,
}

pub fn solve_diverse_lattice(
    lat: &ProductLattice,
    k: usize,
    measure: &Measure,
    backend: Backend,
) -> Result<LatticeSolution> {
    let irr = join_irreducibles(lat);
    let (part, r_hat) = chain_blocks(lat, &irr)?;
    let r = lift(&r_hat, &part)?;
    let solution = solve_diverse(part.poset(), &r, k, measure, backend)?;
    let mut members = Vec::with_capacity(k);
    for set in solution.tuple.sets() {
        let ranks = lat
            .decode(set)
            .filter(|x| lat.members.binary_search(x).is_ok())
            .ok_or_else(|| Error::Internal(format!("output {set:?} is not a lattice member")))?;
        members.push(lat.labels(&ranks));
    }
    Ok(LatticeSolution { members, solution })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> ProductLattice {
        ProductLattice::new(vec![vec![1, 2, 3]], vec![vec![1], vec![2], vec![3]]).unwrap()
    }

    fn square() -> ProductLattice {
        let members = vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]];
        ProductLattice::new(vec![vec![0, 1], vec![0, 1]], members).unwrap()
    }

    #[test]
    fn chain_irreducibles() {
        let irr = join_irreducibles(&chain3());
        assert_eq!(irr.members, vec![vec![1], vec![2]]);
        assert_eq!(irr.order, vec![(1, 0)]);
    }

    #[test]
    fn square_irreducibles_are_atoms() {
        let irr = join_irreducibles(&square());
        assert_eq!(irr.members, vec![vec![0, 1], vec![1, 0]]);
        assert!(irr.order.is_empty());
    }

    #[test]
    fn chain_block_layout() {
        let lat = chain3();
        let (part, r_hat) = chain_blocks(&lat, &join_irreducibles(&lat)).unwrap();
        // ranks 0..3 then ⊤
        assert_eq!(part.blocks(), vec![vec![0], vec![3], vec![1], vec![2]]);
        assert_eq!(r_hat.image(), &[(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn square_blocks() {
        let lat = square();
        let (part, _) = chain_blocks(&lat, &join_irreducibles(&lat)).unwrap();
        // coordinate 0 occupies ids 0..3, coordinate 1 ids 3..6
        assert_eq!(part.blocks(), vec![vec![0, 3], vec![2, 5], vec![4], vec![1]]);
    }

    #[test]
    fn singleton_lattice() {
        let lat = ProductLattice::new(vec![vec![7, 8]], vec![vec![8]]).unwrap();
        assert!(join_irreducibles(&lat).members.is_empty());
        let sol = solve_diverse_lattice(&lat, 3, &Measure::Sum, Backend::Auto).unwrap();
        assert_eq!(sol.members, vec![vec![8]; 3]);
        assert_eq!(sol.solution.diversity, 0);
    }

    #[test]
    fn diverse_members() {
        for backend in [Backend::Mcf, Backend::Cut] {
            let sq = solve_diverse_lattice(&square(), 2, &Measure::Sum, backend).unwrap();
            assert_eq!(sq.solution.diversity, 4);
            let ch = solve_diverse_lattice(&chain3(), 2, &Measure::Sum, backend).unwrap();
            assert_eq!(ch.solution.diversity, 2);
            // every member is a single element, so any two distinct ones tie
            assert_ne!(ch.members[0], ch.members[1]);
            let one = solve_diverse_lattice(&square(), 1, &Measure::Sum, backend).unwrap();
            assert_eq!(one.solution.diversity, 0);
        }
    }

    #[test]
    fn encoding_round_trip() {
        let lat = square();
        for m in lat.members() {
            let set = lat.encode(m);
            assert_eq!(set.len(), 2);
            assert_eq!(lat.decode(&set).as_ref(), Some(m));
        }
        assert_eq!(lat.decode(&[0, 1]), None);
    }

    #[test]
    fn rejects_unclosed_family() {
        let members = vec![vec![0, 1], vec![1, 0]];
        assert!(ProductLattice::new(vec![vec![0, 1], vec![0, 1]], members).is_err());
        assert!(ProductLattice::new(vec![vec![0, 1]], vec![vec![5]]).is_err());
        assert!(ProductLattice::new(vec![vec![0, 1]], vec![]).is_err());
    }
}
