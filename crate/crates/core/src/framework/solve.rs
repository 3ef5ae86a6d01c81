use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::diversity::{d_cov, d_phi_star, d_sum, d_sum_pairwise, SolutionTuple};
use super::instance::{build_instance, solutions_from_potential, KPotential};
use super::poset::{PosetDag, ReductionMap};
use crate::convex::ConvexSpec;
use crate::cut_backend::solve_cut;
use crate::error::{Error, Result};
use crate::mcf_backend::solve_mcf;

/// Diversity measure to maximize.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Measure {
    /// Sum of pairwise symmetric differences.
    Sum,
    /// Size of the union.
    Cov,
    /// Minimize `sum_e phi(mu_e)` for a user-supplied convex `phi`.
    Table(ConvexSpec),
}

impl Measure {
    pub fn label(&self) -> &'static str {
        match self {
            Measure::Sum => "sum",
            Measure::Cov => "cov",
            Measure::Table(_) => "table",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Mcf,
    Cut,
    Auto,
}

impl Backend {
    pub fn label(self) -> &'static str {
        match self {
            Backend::Mcf => "mcf",
            Backend::Cut => "cut",
            Backend::Auto => "auto",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mcf" => Ok(Backend::Mcf),
            "cut" => Ok(Backend::Cut),
            "auto" => Ok(Backend::Auto),
            other => Err(Error::Input(format!("unknown backend `{other}`"))),
        }
    }
}

/// Concrete backend and penalty for a measure. `sum` is `x^2` for the flow
/// backend and `x(x-1)/2` for the cut backend; both have the same maximizers.
pub fn resolve(measure: &Measure, backend: Backend, k: usize) -> Result<(Backend, ConvexSpec)> {
    let backend = match (measure, backend) {
        (Measure::Table(_), Backend::Cut) => return Err(Error::UnsupportedPenalty),
        (Measure::Table(_), Backend::Auto) => Backend::Mcf,
        (_, Backend::Auto) => Backend::Cut,
        (_, b) => b,
    };
    let convex = match (measure, backend) {
        (Measure::Sum, Backend::Mcf) => ConvexSpec::square(k),
        (Measure::Sum, _) => ConvexSpec::binom(k),
        (Measure::Cov, _) => ConvexSpec::cov(k),
        (Measure::Table(spec), _) => spec.with_bound(k)?,
    };
    Ok((backend, convex))
}

/// A diverse k-tuple with its certificate.
#[derive(Debug, Clone)]
pub struct DiverseSolution {
    pub tuple: SolutionTuple,
    pub potential: KPotential,
    /// The measure's value on `tuple`: `d_sum`, `d_cov`, or `sum phi(mu)` for
    /// tables.
    pub diversity: i64,
    /// Optimal `H`, equal to `sum_e phi(mu_e)` under the penalty used.
    pub penalty: i64,
    pub backend: Backend,
    pub convex: ConvexSpec,
    /// Size of the network handed to the flow solver.
    pub vertices: usize,
    pub arcs: usize,
}

/// Solve the k-diverse problem for the family `{ sup_r(I) }` of a poset.
pub fn solve_diverse(
    poset: &PosetDag,
    r: &ReductionMap,
    k: usize,
    measure: &Measure,
    backend: Backend,
) -> Result<DiverseSolution> {
    if k == 0 {
        return Err(Error::InvalidK(0));
    }
    let (backend, convex) = resolve(measure, backend, k)?;
    let inst = build_instance(poset, r, &convex, k)?;
    let (potential, penalty, vertices, arcs) = match backend {
        Backend::Cut => {
            let o = solve_cut(&inst)?;
            (o.potential, o.h, o.vertices, o.arcs)
        }
        _ => {
            let o = solve_mcf(&inst)?;
            (o.potential, o.h, o.vertices, o.arcs)
        }
    };
    let tuple = solutions_from_potential(&potential, r, &inst)?;
    if d_phi_star(&tuple, &convex) != penalty {
        return Err(Error::Internal("penalty of the solution tuple differs from H".into()));
    }
    let diversity = match measure {
        Measure::Sum => {
            let direct = d_sum_pairwise(&tuple);
            if direct != d_sum(&tuple) {
                return Err(Error::Internal("pairwise and multiplicity d_sum disagree".into()));
            }
            direct
        }
        Measure::Cov => d_cov(&tuple),
        Measure::Table(_) => penalty,
    };
    Ok(DiverseSolution {
        tuple,
        potential,
        diversity,
        penalty,
        backend,
        convex,
        vertices,
        arcs,
    })
}
