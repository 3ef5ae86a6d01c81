use serde::Serialize;

use crate::convex::ConvexSpec;

/// An ordered k-tuple of subsets of the ground set, each kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionTuple {
    sets: Vec<Vec<usize>>,
}

impl SolutionTuple {
    pub fn new(mut sets: Vec<Vec<usize>>) -> Self {
        for s in &mut sets {
            s.sort_unstable();
            s.dedup();
        }
        Self { sets }
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn into_sets(self) -> Vec<Vec<usize>> {
        self.sets
    }

    pub fn k(&self) -> usize {
        self.sets.len()
    }

    /// Common set size, or `None` if sizes differ or the tuple is empty.
    pub fn common_size(&self) -> Option<usize> {
        let q = self.sets.first()?.len();
        self.sets.iter().all(|s| s.len() == q).then_some(q)
    }

    /// `mu_e` for every `e < ground_size`; elements beyond are ignored.
    pub fn multiplicity(&self, ground_size: usize) -> Vec<usize> {
        let mut mu = vec![0; ground_size];
        for s in &self.sets {
            for &e in s {
                if e < ground_size {
                    mu[e] += 1;
                }
            }
        }
        mu
    }

    fn ground_bound(&self) -> usize {
        self.sets.iter().flatten().map(|&e| e + 1).max().unwrap_or(0)
    }
}

/// `sum_{i<j} |S_i △ S_j|` by merging every pair.
pub fn d_sum_pairwise(t: &SolutionTuple) -> i64 {
    let sets = t.sets();
    let mut total = 0i64;
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            total += symmetric_difference_len(&sets[i], &sets[j]) as i64;
        }
    }
    total
}

fn symmetric_difference_len(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut common) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                common += 1;
                i += 1;
                j += 1;
            }
        }
    }
    a.len() + b.len() - 2 * common
}

/// `sum_e mu_e (k - mu_e)`. Equals [`d_sum_pairwise`] for every tuple.
pub fn d_sum(t: &SolutionTuple) -> i64 {
    let k = t.k() as i64;
    t.multiplicity(t.ground_bound())
        .into_iter()
        .map(|mu| mu as i64 * (k - mu as i64))
        .sum()
}

/// `|S_1 ∪ ... ∪ S_k|`.
pub fn d_cov(t: &SolutionTuple) -> i64 {
    t.multiplicity(t.ground_bound()).into_iter().filter(|&mu| mu > 0).count() as i64
}

/// `sum_e phi(mu_e)`, the penalty minimized by the potential problem.
pub fn d_phi_star(t: &SolutionTuple, convex: &ConvexSpec) -> i64 {
    t.multiplicity(t.ground_bound())
        .into_iter()
        .map(|mu| convex.eval_unchecked(mu))
        .sum()
}
