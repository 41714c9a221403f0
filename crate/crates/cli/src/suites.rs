//! Verification suites behind `sqfpow verify`.

use clap::ValueEnum;
use serde::Serialize;
use sqfpow::admissible::verify_aim_statements;
use sqfpow::forest_engine::{char_independence, check_nonincreasing, path_g_closed_form, ForestEngine};
use sqfpow::resolution::{invariants, power_invariants};
use sqfpow::splittings::{forest_power_splitting, verify_betti_splitting, verify_ek_criterion, EkMap, EkVerdict};
use sqfpow::{FieldSpec, Graph, MonomialIdeal};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Distant-edge Betti splittings, their ideal identities and EK maps.
    Splitting,
    /// Forest recursions for g and reg against the Betti oracle.
    ForestRecursion,
    /// Path closed form and path/cycle depths for n = 3..=n-max.
    Path,
    /// reg = aim + k and the aim inequalities.
    #[value(name = "section4", alias = "aim")]
    #[serde(rename = "section4")]
    AimStatements,
    /// Betti tables over GF(2), GF(3) and Q.
    CharIndependence,
    /// g never increases in k.
    Nonincreasing,
}

/// One failed check.
#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub graph: Option<Graph>,
    pub k: Option<usize>,
    pub check: String,
    pub expected: String,
    pub got: String,
}

/// Result of running a suite on one graph.
pub enum GraphOutcome {
    NotApplicable(String),
    Checked { checks: usize, failure: Option<Failure>, notes: Vec<String> },
}

struct Tally {
    graph: Graph,
    checks: usize,
    failure: Option<Failure>,
    notes: Vec<String>,
}

impl Tally {
    fn new(g: &Graph) -> Self {
        Tally { graph: g.clone(), checks: 0, failure: None, notes: Vec::new() }
    }

    /// Records a check; keeps the first failure.
    fn check(&mut self, k: Option<usize>, name: &str, ok: bool, expected: impl ToString, got: impl ToString) {
        self.checks += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(Failure {
                graph: Some(self.graph.clone()),
                k,
                check: name.to_string(),
                expected: expected.to_string(),
                got: got.to_string(),
            });
        }
    }

    fn done(self) -> GraphOutcome {
        GraphOutcome::Checked { checks: self.checks, failure: self.failure, notes: self.notes }
    }
}

fn ek_summary(v: &EkVerdict) -> String {
    match v {
        EkVerdict::Holds { exhaustive: true, checked } => format!("holds on all {checked} subsets"),
        EkVerdict::Holds { exhaustive: false, checked } => format!("holds on {checked} sampled subsets"),
        EkVerdict::Fails { witness } => format!("fails on a subset of {} generators", witness.len()),
    }
}

fn check_ek(t: &mut Tally, k: usize, name: &str, map: &EkMap, limit: usize) {
    let v = verify_ek_criterion(map, limit);
    t.check(Some(k), name, v.holds(), "lcm condition on every subset", ek_summary(&v));
}

pub fn run_on_graph(
    suite: Suite,
    g: &Graph,
    engine: &ForestEngine,
    ek_limit: usize,
) -> sqfpow::Result<GraphOutcome> {
    let field = engine.field();
    let forest_only = |what: &str| GraphOutcome::NotApplicable(format!("{what} needs a forest"));
    let mut t = Tally::new(g);
    match suite {
        Suite::Path => unreachable!("the path suite does not take a graph"),
        Suite::Splitting => {
            if !g.is_forest() {
                return Ok(forest_only("the distant-edge splitting"));
            }
            let nu = g.matching_number();
            if nu < 3 {
                return Ok(GraphOutcome::NotApplicable(format!("matching number {nu} < 3")));
            }
            for k in 1..=nu {
                let fs = forest_power_splitting(g, k)?;
                for id in &fs.identities {
                    t.check(Some(k), &id.name, id.holds, "equal generator sets", if id.holds { "equal" } else { "different" });
                }
                let v = verify_betti_splitting(&fs.splitting, field)?;
                t.check(Some(k), "betti_splitting", v.holds(), "additive Betti numbers", format!("{v:?}"));
                if let Some(ps) = fs.pendant_splitting()? {
                    let v = verify_betti_splitting(&ps, field)?;
                    t.check(Some(k), "pendant_betti_splitting", v.holds(), "additive Betti numbers", format!("{v:?}"));
                }
                check_ek(&mut t, k, "intersection_ek_map", &fs.intersection_ek_map()?, ek_limit);
                if let Some(map) = fs.pendant_ek_map()? {
                    check_ek(&mut t, k, "pendant_ek_map", &map, ek_limit);
                }
            }
        }
        Suite::ForestRecursion => {
            if !g.is_forest() {
                return Ok(forest_only("the forest recursion"));
            }
            let ideal = MonomialIdeal::edge_ideal(g);
            for k in 1..=g.matching_number() {
                let oracle = power_invariants(&ideal, k, field)?;
                let (rg, rr) = (engine.g(g, k)?, engine.reg(g, k)?);
                t.check(Some(k), "g_recursion", rg == oracle.g, oracle.g, rg);
                t.check(Some(k), "reg_recursion", rr == oracle.reg, oracle.reg, rr);
            }
        }
        Suite::AimStatements => {
            if !g.is_forest() {
                return Ok(forest_only("reg = aim + k"));
            }
            for c in verify_aim_statements(g, field)? {
                t.check(Some(c.k), c.name, c.holds, "holds", &c.detail);
            }
        }
        Suite::CharIndependence => {
            let fields = [FieldSpec::Prime(2), FieldSpec::Prime(3), FieldSpec::Rational];
            let report = char_independence(g, &fields)?;
            if g.is_forest() {
                for &(k, same) in &report.rows {
                    t.check(Some(k), "same_betti_tables", same, "identical over gf2, gf3, q", if same { "identical" } else { "different" });
                }
            } else {
                for &(k, same) in &report.rows {
                    t.notes.push(format!("k={k}: tables {}", if same { "identical" } else { "differ" }));
                }
            }
        }
        Suite::Nonincreasing => {
            if !g.is_forest() {
                return Ok(forest_only("the monotonicity check"));
            }
            let r = check_nonincreasing(engine, g)?;
            t.check(None, "recursion_matches_oracle", r.oracle_agrees, "oracle values", format!("{:?}", r.values));
            t.check(None, "g_nonincreasing", r.nonincreasing, "g(k+1) <= g(k)", format!("{:?}", r.values));
            let last = r.values.last().copied();
            t.check(Some(r.values.len()), "g_at_nu_is_zero", last.is_none_or(|v| v == 0), 0, format!("{last:?}"));
        }
    }
    Ok(t.done())
}

/// `g(P_n, k) = max(⌈n/3⌉ - k, 0)`, `depth S/I(P_n) = ⌈n/3⌉` and
/// `depth S/I(C_n) = ⌈(n-1)/3⌉` for `n = 3..=n_max`.
pub fn run_path_suite(n_max: usize, field: FieldSpec) -> sqfpow::Result<(usize, Option<Failure>)> {
    let mut checks = 0;
    let fail = |graph: &Graph, k: Option<usize>, check: &str, expected: String, got: String| Failure {
        graph: Some(graph.clone()),
        k,
        check: check.to_string(),
        expected,
        got,
    };
    for n in 3..=n_max {
        let path = Graph::path(n)?;
        let cycle = Graph::cycle(n)?;
        let ip = MonomialIdeal::edge_ideal(&path);
        for k in 1..=n / 2 {
            checks += 1;
            let got = power_invariants(&ip, k, field)?.g;
            let expected = path_g_closed_form(n, k)? as i64;
            if got != expected {
                return Ok((checks, Some(fail(&path, Some(k), "path_closed_form", expected.to_string(), got.to_string()))));
            }
        }
        checks += 2;
        let dp = invariants(&ip, field)?.depth_quotient();
        if dp != n.div_ceil(3) {
            return Ok((checks, Some(fail(&path, None, "path_depth", n.div_ceil(3).to_string(), dp.to_string()))));
        }
        let dc = invariants(&MonomialIdeal::edge_ideal(&cycle), field)?.depth_quotient();
        if dc != (n - 1).div_ceil(3) {
            return Ok((checks, Some(fail(&cycle, None, "cycle_depth", (n - 1).div_ceil(3).to_string(), dc.to_string()))));
        }
    }
    Ok((checks, None))
}
