//! Recursions for the normalized depth function and the regularity of
//! squarefree powers of forest edge ideals, with closed forms and checkers.
//!
//! All ideals live in the ring of all `n` vertices of the input graph: deleting
//! vertices for the recursion leaves them as isolated vertices, each adding 1
//! to depth and to `g`.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use serde::Serialize;

use crate::admissible::aim;
use crate::error::{domain, input, Result};
use crate::graphs::{Graph, SetupLabeling};
use crate::monomials::MonomialIdeal;
use crate::resolution::{betti_table, power_invariants, BettiTable, FieldSpec};

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    Oracle,
    Recursion,
    ClosedForm,
}

/// The terms of the depth recursion at one `k`; `None` is `+∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecursionTerms {
    pub labeling: SetupLabeling,
    pub k: usize,
    /// `g_{G1}(k)`, `g_{G2}(k-1)`, `g_{G3}(k-1)`, `g_{G3}(k)`.
    pub inputs: [Option<i64>; 4],
    /// The inputs after their offsets.
    pub terms: [Option<i64>; 4],
    pub value: i64,
}

type Memo<T> = RwLock<HashMap<(String, usize), T>>;

/// Memoizing evaluator of the forest recursions; values for `ν ≤ 2` come from
/// the Betti oracle over `field`.
#[derive(Debug)]
pub struct ForestEngine {
    field: FieldSpec,
    memoize: bool,
    g_memo: Memo<i64>,
    reg_memo: Memo<usize>,
}

impl Default for ForestEngine {
    fn default() -> Self {
        Self::new(FieldSpec::default())
    }
}

/// Every component with an edge is a single edge.
fn is_perfect_matching_forest(g: &Graph) -> bool {
    g.edges().iter().all(|&(u, v)| g.degree(u) == 1 && g.degree(v) == 1)
}

impl ForestEngine {
    pub fn new(field: FieldSpec) -> Self {
        ForestEngine { field, memoize: true, g_memo: RwLock::default(), reg_memo: RwLock::default() }
    }

    /// Same recursion without the cache.
    pub fn unmemoized(field: FieldSpec) -> Self {
        ForestEngine { memoize: false, ..Self::new(field) }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn cached_values(&self) -> usize {
        self.g_memo.read().map(|m| m.len()).unwrap_or(0) + self.reg_memo.read().map(|m| m.len()).unwrap_or(0)
    }

    fn validate(g: &Graph, k: usize) -> Result<usize> {
        if !g.is_forest() {
            return domain("the recursions apply to forests only");
        }
        let nu = g.matching_number();
        if k == 0 || k > nu {
            return input(format!("k must lie in 1..={nu}; got {k}"));
        }
        Ok(nu)
    }

    /// `g_{I(G)}(k)`.
    pub fn g(&self, g: &Graph, k: usize) -> Result<i64> {
        Self::validate(g, k)?;
        Ok(self.g_inner(g, k)?.expect("k is in range"))
    }

    /// `reg(I(G)^[k])`.
    pub fn reg(&self, g: &Graph, k: usize) -> Result<usize> {
        Self::validate(g, k)?;
        Ok(self.reg_inner(g, k)?.expect("k is in range"))
    }

    /// How [`Self::g`] and [`Self::reg`] evaluate at the top level.
    pub fn source(g: &Graph) -> Source {
        let nu = g.matching_number();
        if nu <= 2 {
            Source::Oracle
        } else if is_perfect_matching_forest(g) {
            Source::ClosedForm
        } else {
            Source::Recursion
        }
    }

    fn key(g: &Graph, k: usize) -> Option<(String, usize)> {
        g.forest_canonical_form().map(|c| (c, k))
    }

    fn lookup<T: Copy>(&self, memo: &Memo<T>, key: &Option<(String, usize)>) -> Option<T> {
        if !self.memoize {
            return None;
        }
        key.as_ref().and_then(|k| memo.read().ok()?.get(k).copied())
    }

    fn store<T>(&self, memo: &Memo<T>, key: Option<(String, usize)>, value: T) {
        if let (true, Some(k), Ok(mut m)) = (self.memoize, key, memo.write()) {
            m.entry(k).or_insert(value);
        }
    }

    /// `None` encodes `+∞` for `k > ν`. At `k = 0` the scaled summands built
    /// from `I^[0] = S` are principal, so the value used is `n` (depth `n - 1`
    /// with `d_0 = 0`), not `+∞`.
    fn g_inner(&self, g: &Graph, k: usize) -> Result<Option<i64>> {
        if k == 0 {
            return Ok(Some(g.n() as i64));
        }
        if k > g.matching_number() {
            return Ok(None);
        }
        let key = Self::key(g, k);
        if let Some(v) = self.lookup(&self.g_memo, &key) {
            return Ok(Some(v));
        }
        let value = match Self::source(g) {
            Source::Oracle => power_invariants(&MonomialIdeal::edge_ideal(g), k, self.field)?.g,
            Source::ClosedForm => {
                let m = g.edge_count() as i64;
                g.n() as i64 - m - k as i64
            }
            Source::Recursion => self.terms_inner(g, k)?.value,
        };
        self.store(&self.g_memo, key, value);
        Ok(Some(value))
    }

    fn terms_inner(&self, g: &Graph, k: usize) -> Result<RecursionTerms> {
        let labeling = SetupLabeling::new(g)?;
        let t = labeling.t() as i64;
        let (g1, g2, g3) = (labeling.g1(g), labeling.g2(g), labeling.g3(g));
        let inputs = [
            self.g_inner(&g1, k)?,
            self.g_inner(&g2, k - 1)?,
            self.g_inner(&g3, k - 1)?,
            self.g_inner(&g3, k)?,
        ];
        // The pendant summand (x_P)·J costs t - 1 in depth and the splitting
        // one more, so both G3 terms shift by t + 1 relative to t = 0.
        let offsets = if t == 0 { [0, 2, 3, 2] } else { [0, 2 + t, 3 + t, 2 + t] };
        let terms: [Option<i64>; 4] = std::array::from_fn(|i| inputs[i].map(|x| x - offsets[i]));
        let value = terms.iter().flatten().min().copied();
        match value {
            Some(value) => Ok(RecursionTerms { labeling, k, inputs, terms, value }),
            None => domain("every recursion term is out of range"),
        }
    }

    /// The depth recursion unfolded one level, for graphs with `ν ≥ 3`.
    pub fn g_terms(&self, g: &Graph, k: usize) -> Result<RecursionTerms> {
        let nu = Self::validate(g, k)?;
        if nu < 3 {
            return domain(format!("matching number {nu} < 3; the oracle handles this case"));
        }
        self.terms_inner(g, k)
    }

    /// `None` encodes `-∞`.
    fn reg_inner(&self, g: &Graph, k: usize) -> Result<Option<usize>> {
        let nu = g.matching_number();
        if k == 0 || k > nu {
            return Ok(None);
        }
        let key = Self::key(g, k);
        if let Some(v) = self.lookup(&self.reg_memo, &key) {
            return Ok(Some(v));
        }
        let value = match Self::source(g) {
            Source::Oracle => power_invariants(&MonomialIdeal::edge_ideal(g), k, self.field)?.reg,
            Source::ClosedForm => g.edge_count() + k,
            Source::Recursion => {
                let labeling = SetupLabeling::new(g)?;
                let terms = [
                    self.reg_inner(&labeling.g1(g), k)?,
                    self.reg_inner(&labeling.g2(g), k - 1)?.map(|r| r + 2),
                    self.reg_inner(&labeling.g3(g), k)?.map(|r| r + 1),
                ];
                match terms.iter().flatten().max() {
                    Some(&v) => v,
                    None => return domain("every recursion term is out of range"),
                }
            }
        };
        self.store(&self.reg_memo, key, value);
        Ok(Some(value))
    }
}

fn shared_engine() -> &'static ForestEngine {
    static ENGINE: OnceLock<ForestEngine> = OnceLock::new();
    ENGINE.get_or_init(ForestEngine::default)
}

/// `g_{I(G)}(k)` for a forest, through the shared memoizing engine.
pub fn g_forest(g: &Graph, k: usize) -> Result<i64> {
    shared_engine().g(g, k)
}

/// `reg(I(G)^[k])` for a forest, through the shared memoizing engine.
pub fn reg_forest(g: &Graph, k: usize) -> Result<usize> {
    shared_engine().reg(g, k)
}

/// `⌈n/3⌉ - k`, clamped at 0.
pub fn path_g_closed_form(n: usize, k: usize) -> Result<usize> {
    if n < 2 {
        return input(format!("paths need at least 2 vertices; got {n}"));
    }
    if k == 0 || k > n / 2 {
        return input(format!("k must lie in 1..={}; got {k}", n / 2));
    }
    Ok(n.div_ceil(3).saturating_sub(k))
}

/// `g` along `k = 1..=ν` and whether it never increases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotonicityReport {
    pub values: Vec<i64>,
    /// The oracle gave the same values.
    pub oracle_agrees: bool,
    pub nonincreasing: bool,
}

impl MonotonicityReport {
    pub fn holds(&self) -> bool {
        self.oracle_agrees && self.nonincreasing
    }
}

pub fn check_nonincreasing(engine: &ForestEngine, g: &Graph) -> Result<MonotonicityReport> {
    let nu = g.matching_number();
    let values: Vec<i64> = (1..=nu).map(|k| engine.g(g, k)).collect::<Result<_>>()?;
    let ideal = MonomialIdeal::edge_ideal(g);
    let oracle: Vec<i64> =
        (1..=nu).map(|k| power_invariants(&ideal, k, engine.field).map(|p| p.g)).collect::<Result<_>>()?;
    Ok(MonotonicityReport {
        oracle_agrees: oracle == values,
        nonincreasing: values.windows(2).all(|w| w[1] <= w[0]),
        values,
    })
}

/// Oracle `g(k)` against the bound from a longest induced path with `ℓ` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathBoundReport {
    pub ell: usize,
    pub nu: usize,
    pub nu_at_least_half_ell: bool,
    /// `(k, g(k), bound)` for `1 <= k <= ⌊ℓ/2⌋`.
    pub rows: Vec<(usize, i64, i64)>,
}

impl PathBoundReport {
    pub fn holds(&self) -> bool {
        self.nu_at_least_half_ell && self.rows.iter().all(|&(_, g, b)| g <= b)
    }

    pub fn tight(&self) -> bool {
        self.rows.iter().all(|&(_, g, b)| g == b)
    }
}

/// `⌈(3n - 2ℓ)/3⌉ - k` for `k <= ⌈ℓ/3⌉`, and `n - ℓ` beyond.
pub fn induced_path_bound_value(n: usize, ell: usize, k: usize) -> i64 {
    if k <= ell.div_ceil(3) {
        (3 * n - 2 * ell).div_ceil(3) as i64 - k as i64
    } else {
        (n - ell) as i64
    }
}

pub fn induced_path_bound(g: &Graph, field: FieldSpec) -> Result<PathBoundReport> {
    if !g.is_connected() || g.n() == 0 {
        return input("the induced path bound needs a connected graph");
    }
    let n = g.n();
    let ell = g.longest_induced_path_order();
    let nu = g.matching_number();
    let ideal = MonomialIdeal::edge_ideal(g);
    let rows = (1..=(ell / 2).min(nu))
        .map(|k| Ok((k, power_invariants(&ideal, k, field)?.g, induced_path_bound_value(n, ell, k))))
        .collect::<Result<_>>()?;
    Ok(PathBoundReport { ell, nu, nu_at_least_half_ell: nu >= ell / 2, rows })
}

/// Betti tables of every `I(G)^[k]` over several fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharReport {
    pub fields: Vec<FieldSpec>,
    /// `(k, identical)`.
    pub rows: Vec<(usize, bool)>,
}

impl CharReport {
    pub fn identical(&self) -> bool {
        self.rows.iter().all(|r| r.1)
    }
}

fn same_entries(a: &BettiTable, b: &BettiTable) -> bool {
    a.entries().eq(b.entries())
}

pub fn char_independence(g: &Graph, fields: &[FieldSpec]) -> Result<CharReport> {
    if fields.is_empty() {
        return input("no fields to compare");
    }
    let ideal = MonomialIdeal::edge_ideal(g);
    let rows = (1..=g.matching_number())
        .map(|k| {
            let power = ideal.squarefree_power(k)?;
            let tables: Vec<BettiTable> = fields.iter().map(|&f| betti_table(&power, f)).collect::<Result<_>>()?;
            Ok((k, tables.windows(2).all(|w| same_entries(&w[0], &w[1]))))
        })
        .collect::<Result<_>>()?;
    Ok(CharReport { fields: fields.to_vec(), rows })
}

/// `g` of the path and the cycle on `n` vertices at one `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CycleRow {
    pub n: usize,
    pub k: usize,
    pub g_path: i64,
    pub g_cycle: i64,
}

impl CycleRow {
    pub fn equal(&self) -> bool {
        self.g_path == self.g_cycle
    }
}

/// Largest `n` accepted by [`cycle_question`]: vertices must fit in a word.
pub const CYCLE_N_MAX: usize = crate::graphs::MAX_VERTICES;

/// Path and cycle `g` for `n = 3..=n_max` and `k = 1..=⌊n/2⌋`. Rows at `k = 1`
/// differ by at most one; rows at `k >= 2` are the open comparison.
pub fn cycle_question(n_max: usize, field: FieldSpec) -> Result<Vec<CycleRow>> {
    if n_max > CYCLE_N_MAX {
        return input(format!("n_max {n_max} exceeds {CYCLE_N_MAX}"));
    }
    let mut rows = Vec::new();
    for n in 3..=n_max {
        let path = MonomialIdeal::edge_ideal(&Graph::path(n)?);
        let cycle = MonomialIdeal::edge_ideal(&Graph::cycle(n)?);
        for k in 1..=n / 2 {
            rows.push(CycleRow {
                n,
                k,
                g_path: power_invariants(&path, k, field)?.g,
                g_cycle: power_invariants(&cycle, k, field)?.g,
            });
        }
    }
    Ok(rows)
}

/// Which polynomial ring the profile is computed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Ambient {
    /// One variable per vertex, isolated ones included.
    #[default]
    AllVertices,
    /// Isolated vertices dropped; `g` and depth fall by their number.
    CoveredVertices,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProfileRow {
    pub k: usize,
    pub d_k: usize,
    pub depth: usize,
    pub g: i64,
    pub reg: usize,
    pub aim: Option<usize>,
    pub source: Source,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProfileReport {
    pub graph: Graph,
    pub ambient: Ambient,
    pub variables: usize,
    pub rows: Vec<ProfileRow>,
}

/// Profile of `I(G)^[k]` for `k = 1..=ν(G)`: recursions for forests, the oracle
/// otherwise.
pub fn profile(engine: &ForestEngine, g: &Graph, ambient: Ambient) -> Result<ProfileReport> {
    let graph = match ambient {
        Ambient::AllVertices => g.clone(),
        Ambient::CoveredVertices => g.induced_subgraph(g.covered_mask())?.graph,
    };
    let nu = graph.matching_number();
    let forest = graph.is_forest();
    let ideal = MonomialIdeal::edge_ideal(&graph);
    let mut rows = Vec::with_capacity(nu);
    for k in 1..=nu {
        let d_k = 2 * k;
        let (g_val, reg, source) = if forest {
            (engine.g(&graph, k)?, engine.reg(&graph, k)?, ForestEngine::source(&graph))
        } else {
            let p = power_invariants(&ideal, k, engine.field)?;
            (p.g, p.reg, Source::Oracle)
        };
        rows.push(ProfileRow {
            k,
            d_k,
            depth: (g_val + d_k as i64 - 1) as usize,
            g: g_val,
            reg,
            aim: Some(aim(&graph, k)?),
            source,
        });
    }
    Ok(ProfileReport { variables: graph.n(), graph, ambient, rows })
}
