//! Block partitions of ring families and pre-reduction maps.
//!
//! A ring family over `R` is represented by a partition of `R` into blocks:
//! the minimal member `X_⊥`, the complement of the maximal member, and the
//! interior blocks, ordered by a poset. Members are exactly the unions of
//! `X_⊥` with the blocks of an ideal.

use crate::error::{Error, Result};
use crate::framework::{Ideal, PosetDag, ReductionMap};

#[derive(Debug, Clone)]
pub struct BlockPartition {
    block_of: Vec<usize>,
    poset: PosetDag,
}

impl BlockPartition {
    /// `block_of[x]` is `BOT` for `X_⊥`, `TOP` for the complement of the
    /// maximal member, and `2 + j` for interior block `j`. The interior order
    /// is given by arcs from larger to smaller blocks (poset ids).
    pub fn new(block_of: Vec<usize>, interior: usize, interior_arcs: &[(usize, usize)]) -> Result<Self> {
        let poset = PosetDag::from_interior(interior, interior_arcs)?;
        let mut seen = vec![false; poset.len()];
        for (x, &b) in block_of.iter().enumerate() {
            if b >= poset.len() {
                return Err(Error::Input(format!("element {x} assigned to missing block {b}")));
            }
            seen[b] = true;
        }
        if let Some(b) = seen.iter().position(|&s| !s) {
            return Err(Error::Input(format!("block {b} is empty")));
        }
        Ok(Self { block_of, poset })
    }

    pub fn ground_size(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn poset(&self) -> &PosetDag {
        &self.poset
    }

    /// Elements of every block, indexed by poset id.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.poset.len()];
        for (x, &b) in self.block_of.iter().enumerate() {
            blocks[b].push(x);
        }
        blocks
    }

    /// `X_⊥` together with the blocks of `ideal`, as a membership mask.
    pub fn member_of(&self, ideal: &Ideal) -> Vec<bool> {
        let mask = ideal.mask_with_bot(self.poset.len());
        self.block_of.iter().map(|&b| mask[b]).collect()
    }
}

/// Element `e` maps to `(e_plus, e_minus)` in the ground set of the family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreReductionMap {
    image: Vec<(usize, usize)>,
}

impl PreReductionMap {
    pub fn new(image: Vec<(usize, usize)>) -> Self {
        Self { image }
    }

    pub fn image(&self) -> &[(usize, usize)] {
        &self.image
    }

    /// `sup(X) = { e | e_plus ∈ X, e_minus ∉ X }`.
    pub fn sup(&self, member: &[bool]) -> Vec<usize> {
        (0..self.image.len())
            .filter(|&e| {
                let (plus, minus) = self.image[e];
                member[plus] && !member[minus]
            })
            .collect()
    }

    /// `e_minus ∈ X` implies `e_plus ∈ X` for every element.
    pub fn respects(&self, member: &[bool]) -> bool {
        self.image.iter().all(|&(plus, minus)| !member[minus] || member[plus])
    }
}

/// Fresh elements added to a ground set so that `X_⊥` is nonempty and the
/// maximal member is proper.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Augmentation {
    pub ground_size: usize,
    pub bot: Option<usize>,
    pub tops: Vec<usize>,
}

impl Augmentation {
    /// Add the bottom element to a member when one was introduced.
    pub fn apply(&self, member: &mut Vec<bool>) {
        member.resize(self.ground_size, false);
        if let Some(b) = self.bot {
            member[b] = true;
        }
    }
}

/// New ids follow the original ground set: first `⊥` (when the minimal member
/// is empty), then `top_count` top elements (when the maximal member is all of
/// the ground set).
pub fn augment_terminals(ground_size: usize, bottom_empty: bool, top_full: bool, top_count: usize) -> Augmentation {
    let mut next = ground_size;
    let bot = bottom_empty.then(|| {
        next += 1;
        next - 1
    });
    let tops = if top_full {
        let tops: Vec<usize> = (next..next + top_count.max(1)).collect();
        next += tops.len();
        tops
    } else {
        Vec::new()
    };
    Augmentation {
        ground_size: next,
        bot,
        tops,
    }
}

/// `r(e) = (block of e_plus, block of e_minus)`.
pub fn lift(r_hat: &PreReductionMap, part: &BlockPartition) -> Result<ReductionMap> {
    let image = r_hat
        .image
        .iter()
        .map(|&(plus, minus)| {
            for x in [plus, minus] {
                if x >= part.ground_size() {
                    return Err(Error::Input(format!("pre-reduction image {x} is not in the partition")));
                }
            }
            Ok((part.block_of(plus), part.block_of(minus)))
        })
        .collect::<Result<Vec<_>>>()?;
    let r = ReductionMap::new(image);
    r.validate(&part.poset)?;
    Ok(r)
}
