//! End-to-end runs on parsed inputs: JSON reports, reduction dumps, and the
//! three-way self test.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::cut_backend::build_cut;
use crate::error::{Error, Result};
use crate::framework::{build_instance, resolve, Backend, KPotentialInstance, Measure, PosetDag, ReductionMap};
use crate::io::{self, MincutInput};
use crate::lattice::{chain_blocks, join_irreducibles, solve_diverse_lattice, ProductLattice};
use crate::mcf_backend::build_mcf;
use crate::mincut::{build_pq, mincut_pre_reduction, solve_diverse_mincut, Digraph};
use crate::oracle::{self, OracleMeasure, OracleReport};
use crate::ringfamily::lift;
use crate::stable_matching::{build_rotation_poset, sm_partition, sm_pre_reduction, solve_diverse_sm, SmInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    Mincut,
    Sm,
    Lattice,
}

impl Problem {
    pub fn label(self) -> &'static str {
        match self {
            Problem::Mincut => "mincut",
            Problem::Sm => "sm",
            Problem::Lattice => "lattice",
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mincut" => Ok(Problem::Mincut),
            "sm" => Ok(Problem::Sm),
            "lattice" => Ok(Problem::Lattice),
            other => Err(Error::Input(format!("unknown problem `{other}`"))),
        }
    }
}

/// A parsed instance of one of the three applications.
#[derive(Debug, Clone)]
pub enum Input {
    Mincut(MincutInput),
    Sm(SmInstance),
    Lattice(ProductLattice),
}

impl Input {
    pub fn parse(problem: Problem, text: &str) -> Result<Self> {
        Ok(match problem {
            Problem::Mincut => Input::Mincut(io::parse_dimacs(text)?),
            Problem::Sm => Input::Sm(io::parse_preferences(text)?),
            Problem::Lattice => Input::Lattice(io::parse_lattice(text)?),
        })
    }

    pub fn problem(&self) -> Problem {
        match self {
            Input::Mincut(_) => Problem::Mincut,
            Input::Sm(_) => Problem::Sm,
            Input::Lattice(_) => Problem::Lattice,
        }
    }

    /// The instance in its file format.
    pub fn to_text(&self) -> String {
        match self {
            Input::Mincut(m) => io::write_dimacs(&m.graph, m.s, m.t),
            Input::Sm(inst) => io::write_preferences(inst),
            Input::Lattice(lat) => io::write_lattice(lat),
        }
    }

    /// The poset and reduction map handed to the k-potential solver.
    pub fn reduction(&self) -> Result<(PosetDag, ReductionMap)> {
        let (part, r_hat) = match self {
            Input::Mincut(m) => {
                let pq = build_pq(&m.graph, m.s, m.t)?;
                let r_hat = mincut_pre_reduction(pq.flow(), &m.graph, m.t);
                (pq.partition().clone(), r_hat)
            }
            Input::Sm(inst) => {
                let rp = build_rotation_poset(inst)?;
                (sm_partition(inst, &rp)?, sm_pre_reduction(inst))
            }
            Input::Lattice(lat) => chain_blocks(lat, &join_irreducibles(lat))?,
        };
        let r = lift(&r_hat, &part)?;
        Ok((part.poset().clone(), r))
    }

    /// Every solution as a ground-set subset, by brute force.
    pub fn enumerate(&self) -> Result<Vec<Vec<usize>>> {
        match self {
            Input::Mincut(m) => oracle::enum_min_cuts(&m.graph, m.s, m.t),
            Input::Sm(inst) => Ok(oracle::enum_stable_matchings(inst)?
                .iter()
                .map(|p| {
                    let mut e = inst.elements(p);
                    e.sort_unstable();
                    e
                })
                .collect()),
            Input::Lattice(lat) => Ok(oracle::enum_lattice_members(lat)),
        }
    }

    /// JSON form of one solution given as ground-set ids.
    pub fn render(&self, set: &[usize]) -> Value {
        match self {
            Input::Mincut(_) => json!(set.iter().map(|a| a + 1).collect::<Vec<_>>()),
            Input::Sm(inst) => {
                let n = inst.n();
                json!(set.iter().map(|e| [e / n + 1, e % n + 1]).collect::<Vec<_>>())
            }
            Input::Lattice(lat) => match lat.decode(set) {
                Some(ranks) => json!(lat.labels(&ranks)),
                None => json!(set),
            },
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub k: usize,
    pub measure: Measure,
    pub backend: Backend,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Stats {
    pub vertices: usize,
    pub arcs: usize,
    pub solve_ms: f64,
}

/// The JSON document printed by a run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub problem: Problem,
    pub k: usize,
    pub measure: &'static str,
    pub backend: Backend,
    /// Size shared by every solution.
    pub q: usize,
    pub diversity: i64,
    /// Optimal `sum_e phi(mu_e)` under the penalty the backend used.
    pub penalty: i64,
    pub solutions: Vec<Value>,
    pub stats: Stats,
}

pub fn run(input: &Input, cfg: &RunConfig) -> Result<RunReport> {
    let start = Instant::now();
    let (q, solution) = match input {
        Input::Mincut(m) => {
            let s = solve_diverse_mincut(&m.graph, m.s, m.t, cfg.k, &cfg.measure, cfg.backend)?;
            (s.q, s.solution)
        }
        Input::Sm(inst) => (inst.n(), solve_diverse_sm(inst, cfg.k, &cfg.measure, cfg.backend)?.solution),
        Input::Lattice(lat) => (
            lat.dims(),
            solve_diverse_lattice(lat, cfg.k, &cfg.measure, cfg.backend)?.solution,
        ),
    };
    let solve_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(RunReport {
        problem: input.problem(),
        k: cfg.k,
        measure: cfg.measure.label(),
        backend: solution.backend,
        q,
        diversity: solution.diversity,
        penalty: solution.penalty,
        solutions: solution.tuple.sets().iter().map(|s| input.render(s)).collect(),
        stats: Stats {
            vertices: solution.vertices,
            arcs: solution.arcs,
            solve_ms,
        },
    })
}

fn potential_instance(input: &Input, cfg: &RunConfig, backend: Backend) -> Result<KPotentialInstance> {
    let (poset, r) = input.reduction()?;
    let (_, convex) = resolve(&cfg.measure, backend, cfg.k)?;
    build_instance(&poset, &r, &convex, cfg.k)
}

/// The min-cost-flow network as JSON.
pub fn dump_mcf(input: &Input, cfg: &RunConfig) -> Result<String> {
    let red = build_mcf(&potential_instance(input, cfg, Backend::Mcf)?)?;
    Ok(serde_json::to_string_pretty(&red.to_json()).expect("plain data serializes"))
}

/// The layered cut graph as DOT.
pub fn dump_cut(input: &Input, cfg: &RunConfig) -> Result<String> {
    Ok(build_cut(&potential_instance(input, cfg, Backend::Cut)?)?.to_dot())
}

fn oracle_measure(measure: &Measure) -> Result<OracleMeasure> {
    match measure {
        Measure::Sum => Ok(OracleMeasure::Sum),
        Measure::Cov => Ok(OracleMeasure::Cov),
        Measure::Table(_) => Err(Error::Input("the oracle supports only sum and cov".into())),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleOutput {
    pub problem: Problem,
    pub k: usize,
    pub measure: &'static str,
    pub optimum: i64,
    pub count: u64,
    pub feasible: usize,
    pub solutions: Vec<Value>,
}

pub fn run_oracle(input: &Input, k: usize, measure: &Measure) -> Result<OracleOutput> {
    let all = input.enumerate()?;
    let OracleReport { optimum, tuple, count } = oracle::best_ktuple(&all, k, oracle_measure(measure)?)?;
    Ok(OracleOutput {
        problem: input.problem(),
        k,
        measure: measure.label(),
        optimum,
        count,
        feasible: all.len(),
        solutions: tuple.iter().map(|s| input.render(s)).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelftestReport {
    pub problem: Problem,
    pub k: usize,
    pub measure: &'static str,
    pub mcf: i64,
    pub cut: i64,
    pub oracle: i64,
    pub agree: bool,
    /// Smallest failing input found, in the problem's file format.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reproduction: Option<Reproduction>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Reproduction {
    pub k: usize,
    pub input: String,
}

/// `(mcf, cut, oracle)` optima.
fn three_way(input: &Input, k: usize, measure: &Measure) -> Result<(i64, i64, i64)> {
    let cfg = |backend| RunConfig {
        k,
        measure: measure.clone(),
        backend,
    };
    let mcf = run(input, &cfg(Backend::Mcf))?.diversity;
    let cut = run(input, &cfg(Backend::Cut))?.diversity;
    let oracle = run_oracle(input, k, measure)?.optimum;
    Ok((mcf, cut, oracle))
}

fn disagrees(input: &Input, k: usize, measure: &Measure) -> bool {
    match three_way(input, k, measure) {
        Ok((a, b, c)) => a != b || b != c,
        Err(e) => !matches!(e, Error::TooLarge(_) | Error::Input(_)),
    }
}

/// Run both backends and the oracle and compare their optima.
pub fn selftest(input: &Input, k: usize, measure: &Measure) -> Result<SelftestReport> {
    oracle_measure(measure)?;
    let (mcf, cut, oracle) = three_way(input, k, measure)?;
    let agree = mcf == cut && cut == oracle;
    let reproduction = (!agree).then(|| {
        let (k, input) = minimize(input, k, |i, k| disagrees(i, k, measure));
        Reproduction { k, input: input.to_text() }
    });
    Ok(SelftestReport {
        problem: input.problem(),
        k,
        measure: measure.label(),
        mcf,
        cut,
        oracle,
        agree,
        reproduction,
    })
}

/// Greedy shrinking while `fails` holds: lower k first, then drop min-cut
/// arcs one at a time.
pub fn minimize(input: &Input, k: usize, fails: impl Fn(&Input, usize) -> bool) -> (usize, Input) {
    let mut k = k;
    while k > 1 && fails(input, k - 1) {
        k -= 1;
    }
    let mut cur = input.clone();
    if let Input::Mincut(m) = input {
        let mut arcs = m.graph.arcs().to_vec();
        let mut i = 0;
        while i < arcs.len() {
            let mut fewer = arcs.clone();
            fewer.remove(i);
            let candidate = Input::Mincut(MincutInput {
                graph: Digraph::new(m.graph.vertex_count(), fewer.clone()).expect("subset of valid arcs"),
                s: m.s,
                t: m.t,
            });
            if fails(&candidate, k) {
                arcs = fewer;
                cur = candidate;
            } else {
                i += 1;
            }
        }
    }
    (k, cur)
}

/// Process exit status for an error: 2 for malformed input, 3 for a
/// configuration the pipeline cannot serve, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Input(_) | Error::ConvexTable(_) | Error::VertexOutOfRange { .. } => 2,
        Error::UnsupportedPenalty | Error::InvalidK(_) | Error::TooLarge(_) | Error::ConvexOutOfRange { .. } => 3,
        _ => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const G1: &str = "p max 4 4\nn 1 s\nn 4 t\na 1 2\na 1 3\na 2 4\na 3 4\n";
    const SM1: &str = "2\n1 2\n2 1\n2 1\n1 2\n";

    fn cfg(k: usize, measure: Measure, backend: Backend) -> RunConfig {
        RunConfig { k, measure, backend }
    }

    #[test]
    fn mincut_report() {
        let input = Input::parse(Problem::Mincut, G1).unwrap();
        let report = run(&input, &cfg(2, Measure::Sum, Backend::Auto)).unwrap();
        assert_eq!(report.diversity, 4);
        assert_eq!(report.q, 2);
        assert_eq!(report.backend, Backend::Cut);
        assert_eq!(report.solutions.len(), 2);
        let one = run(&input, &cfg(1, Measure::Sum, Backend::Mcf)).unwrap();
        assert_eq!(one.diversity, 0);
    }

    #[test]
    fn sm_report_renders_pairs() {
        let input = Input::parse(Problem::Sm, SM1).unwrap();
        let report = run(&input, &cfg(2, Measure::Cov, Backend::Auto)).unwrap();
        assert_eq!(report.diversity, 4);
        let mut rendered: Vec<String> = report.solutions.iter().map(|s| s.to_string()).collect();
        rendered.sort();
        assert_eq!(rendered, vec!["[[1,1],[2,2]]", "[[1,2],[2,1]]"]);
    }

    #[test]
    fn reports_are_deterministic() {
        let input = Input::parse(Problem::Mincut, G1).unwrap();
        let c = cfg(3, Measure::Cov, Backend::Mcf);
        let (mut a, mut b) = (run(&input, &c).unwrap(), run(&input, &c).unwrap());
        a.stats.solve_ms = 0.0;
        b.stats.solve_ms = 0.0;
        assert_eq!(a, b);
    }

    #[test]
    fn selftest_examples() {
        let g1 = Input::parse(Problem::Mincut, G1).unwrap();
        let r = selftest(&g1, 2, &Measure::Sum).unwrap();
        assert!(r.agree && r.oracle == 4 && r.reproduction.is_none());
        let sm1 = Input::parse(Problem::Sm, SM1).unwrap();
        assert_eq!(selftest(&sm1, 3, &Measure::Cov).unwrap().oracle, 4);
        let g2 = Input::parse(Problem::Mincut, "p max 3 2\nn 1 s\nn 3 t\na 1 2\na 2 3\n").unwrap();
        let r = selftest(&g2, 2, &Measure::Cov).unwrap();
        assert!(r.agree);
        assert_eq!(r.cut, 2);
    }

    #[test]
    fn minimize_drops_irrelevant_arcs() {
        let g1 = Input::parse(Problem::Mincut, G1).unwrap();
        // fails whenever arc 1 -> 3 (0-based (0, 2)) is present
        let fails = |i: &Input, _k: usize| match i {
            Input::Mincut(m) => m.graph.arcs().contains(&(0, 2)),
            _ => false,
        };
        let (k, small) = minimize(&g1, 3, fails);
        assert_eq!(k, 1);
        match small {
            Input::Mincut(m) => assert_eq!(m.graph.arcs(), &[(0, 2)]),
            _ => unreachable!(),
        }
    }

    #[test]
    fn dumps() {
        let g1 = Input::parse(Problem::Mincut, G1).unwrap();
        let c = cfg(2, Measure::Sum, Backend::Auto);
        assert!(dump_mcf(&g1, &c).unwrap().contains("\"arcs\""));
        assert!(dump_cut(&g1, &c).unwrap().starts_with("digraph"));
        let table = cfg(2, Measure::Table(crate::convex::ConvexSpec::square(2)), Backend::Auto);
        assert_eq!(dump_cut(&g1, &table).unwrap_err(), Error::UnsupportedPenalty);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Parse { line: 3, message: String::new() }), 2);
        assert_eq!(exit_code(&Error::UnsupportedPenalty), 3);
        assert_eq!(exit_code(&Error::Internal(String::new())), 1);
    }
}
