//! Graded Betti numbers of squarefree monomial ideals, and the invariants read
//! off them.
//!
//! For a multidegree `W` the Betti number `β_{i,W}(I)` is computed from whichever
//! of two complexes on `W` is smaller: the restriction `Δ_W` of the
//! Stanley-Reisner complex (`β_{i,W} = dim H̃_{|W|-i-2}(Δ_W)`) or the upper Koszul
//! complex `K^W = {F ⊆ W : x_{W∖F} ∈ I}` (`β_{i,W} = dim H̃_{i-1}(K^W)`). Only
//! multidegrees in the lcm lattice of the generators can carry Betti numbers.

mod homology;
mod rank;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::graphs::bit;
use crate::monomials::MonomialIdeal;

pub use homology::reduced_homology_dims;

/// Coefficient field: `GF(p)` for a prime `p`, or the rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Prime(u32),
    Rational,
}

impl FieldSpec {
    pub fn prime(p: u32) -> Result<Self> {
        let is_prime = p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
        if !is_prime {
            return Err(Error::Input(format!("{p} is not prime")));
        }
        if p >= 1 << 16 {
            return Err(Error::Input(format!("prime {p} too large; use p < 65536")));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Prime(p) => *p,
            FieldSpec::Rational => 0,
        }
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Prime(2)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "gf{p}"),
            FieldSpec::Rational => write!(f, "q"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `gf<p>`, `GF(<p>)`, `q`, `qq` and `rational`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        if matches!(t.as_str(), "q" | "qq" | "rational" | "rationals") {
            return Ok(FieldSpec::Rational);
        }
        let digits = t
            .strip_prefix("gf(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix("gf"));
        match digits.and_then(|d| d.parse::<u32>().ok()) {
            Some(p) => FieldSpec::prime(p),
            None => Err(Error::Input(format!("unknown field '{s}'; expected gf2, gf3, ..., or q"))),
        }
    }
}

/// Graded Betti numbers `β_{i,j}(I)` of an ideal (not of the quotient).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    ambient: usize,
    field: FieldSpec,
    entries: BTreeMap<(usize, usize), u64>,
}

impl BettiTable {
    pub fn new(ambient: usize, field: FieldSpec) -> Self {
        BettiTable { ambient, field, entries: BTreeMap::new() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries `((i, j), β_{i,j})` in increasing `(i, j)` order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&mut self, i: usize, j: usize, beta: u64) {
        if beta > 0 {
            *self.entries.entry((i, j)).or_insert(0) += beta;
        }
    }

    /// Sum of two tables, the second shifted by `shift` homological steps.
    pub fn plus_shifted(&self, other: &BettiTable, shift: usize) -> BettiTable {
        let mut out = self.clone();
        for ((i, j), b) in other.entries() {
            out.add(i + shift, j, b);
        }
        out
    }

    pub fn projdim(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, _)| i).max()
    }

    pub fn reg(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, j)| j - i).max()
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }
}

/// Macaulay2-style layout: one row per `j - i`, one column per `i`.
impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (Some(pd), Some(reg)) = (self.projdim(), self.reg()) else {
            return writeln!(f, "(zero table)");
        };
        let low = self.entries.keys().map(|&(i, j)| j - i).min().unwrap_or(0);
        let width = self.entries.values().map(|b| b.to_string().len()).max().unwrap_or(1).max(pd.to_string().len());
        write!(f, "{:>6}", "")?;
        for i in 0..=pd {
            write!(f, " {i:>width$}")?;
        }
        writeln!(f)?;
        write!(f, "total:")?;
        for i in 0..=pd {
            let t: u64 = self.entries.iter().filter(|((a, _), _)| *a == i).map(|(_, b)| b).sum();
            write!(f, " {t:>width$}")?;
        }
        writeln!(f)?;
        for r in low..=reg {
            write!(f, "{r:>5}:")?;
            for i in 0..=pd {
                let b = self.get(i, i + r);
                if b == 0 {
                    write!(f, " {:>width$}", ".")?;
                } else {
                    write!(f, " {b:>width$}")?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Whether `F` is a face of the Stanley-Reisner complex, i.e. `x_F ∉ I`.
pub fn stanley_reisner_face(ideal: &MonomialIdeal, face: u64) -> bool {
    !ideal.contains_support(face)
}

/// The lcm lattice of the minimal generators, as supports, in increasing mask order.
pub fn lcm_degrees(ideal: &MonomialIdeal) -> Vec<u64> {
    let gens = ideal.gens();
    let mut seen: BTreeSet<u64> = gens.iter().copied().collect();
    let mut frontier: Vec<u64> = seen.iter().copied().collect();
    while let Some(a) = frontier.pop() {
        for &g in gens {
            let u = a | g;
            if u != a && seen.insert(u) {
                frontier.push(u);
            }
        }
    }
    seen.into_iter().collect()
}

/// Which complex computes the multigraded Betti numbers at a given `W`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// The smaller of the two complexes.
    Auto,
    StanleyReisner,
    UpperKoszul,
}

/// Nonzero `(i, β_{i,W}(I))` for the multidegree `W`.
pub fn multigraded_betti(ideal: &MonomialIdeal, w: u64, field: FieldSpec, route: Route) -> Vec<(usize, u64)> {
    let verts: Vec<usize> = crate::graphs::vertices_of(w).collect();
    let size = verts.len();
    assert!(size <= 24, "multidegree with {size} variables is too large");
    let to_local = |m: u64| -> u32 {
        verts.iter().enumerate().filter(|(_, &v)| m & bit(v) != 0).fold(0, |acc, (i, _)| acc | 1 << i)
    };
    let full = (1u32 << size) - 1;
    let mut in_ideal = vec![false; 1 << size];
    for &g in ideal.gens() {
        if g & !w == 0 {
            in_ideal[to_local(g) as usize] = true;
        }
    }
    for b in 0..size {
        for m in 0..=full {
            if m >> b & 1 == 0 && in_ideal[m as usize] {
                in_ideal[(m | 1 << b) as usize] = true;
            }
        }
    }
    let members = in_ideal.iter().filter(|&&x| x).count();
    let use_sr = match route {
        Route::Auto => (1usize << size) - members <= members,
        Route::StanleyReisner => true,
        Route::UpperKoszul => false,
    };
    let mut out = Vec::new();
    if use_sr {
        let faces: Vec<u32> = (0..=full).filter(|&m| !in_ideal[m as usize]).collect();
        for (s, h) in homology::reduced_homology_local(&faces, size, field).into_iter().enumerate() {
            // H̃_{s-1} contributes to i = |W| - (s - 1) - 2.
            if h > 0 && size > s {
                out.push((size - s - 1, h));
            }
        }
    } else {
        let faces: Vec<u32> = (0..=full).filter(|&m| in_ideal[(full ^ m) as usize]).collect();
        for (s, h) in homology::reduced_homology_local(&faces, size, field).into_iter().enumerate() {
            // H̃_{s-1} contributes to i = s.
            if h > 0 {
                out.push((s, h));
            }
        }
    }
    out.sort_unstable();
    out
}

fn check_tableable(ideal: &MonomialIdeal) -> Result<()> {
    if ideal.is_zero() {
        return domain("the zero ideal has no Betti table");
    }
    if ideal.is_unit() {
        return domain("the unit ideal is not proper");
    }
    Ok(())
}

fn table_over(ideal: &MonomialIdeal, field: FieldSpec, ws: impl Iterator<Item = u64>, route: Route) -> BettiTable {
    let mut table = BettiTable::new(ideal.ambient(), field);
    for w in ws {
        let j = w.count_ones() as usize;
        for (i, b) in multigraded_betti(ideal, w, field, route) {
            table.add(i, j, b);
        }
    }
    table
}

/// Exact graded Betti table, summing only over the lcm lattice.
pub fn betti_table(ideal: &MonomialIdeal, field: FieldSpec) -> Result<BettiTable> {
    check_tableable(ideal)?;
    Ok(table_over(ideal, field, lcm_degrees(ideal).into_iter(), Route::Auto))
}

/// Betti table from the full sum over every `W ⊆ {1..n}`; exponential in `n`.
pub fn betti_table_full_sum(ideal: &MonomialIdeal, field: FieldSpec, route: Route) -> Result<BettiTable> {
    check_tableable(ideal)?;
    if ideal.ambient() > 16 {
        return Err(Error::Input("full-subset sum limited to 16 variables".into()));
    }
    let n = ideal.ambient();
    Ok(table_over(ideal, field, (0..1u64 << n).map(|m| m << 1), route))
}

/// projdim, depth of the quotient and regularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum HomologicalInvariants {
    /// `I = 0`: `S/I = S` has depth `n`; projdim and reg are undefined.
    ZeroIdeal { ambient: usize },
    Ideal { projdim: usize, depth_quotient: usize, reg: usize },
}

impl HomologicalInvariants {
    pub fn from_table(table: &BettiTable) -> Result<Self> {
        match (table.projdim(), table.reg()) {
            (Some(projdim), Some(reg)) => {
                let n = table.ambient();
                if projdim + 1 > n {
                    return domain(format!("projdim {projdim} exceeds n - 1 = {}", n as i64 - 1));
                }
                Ok(HomologicalInvariants::Ideal { projdim, depth_quotient: n - projdim - 1, reg })
            }
            _ => domain("empty Betti table"),
        }
    }

    pub fn depth_quotient(&self) -> usize {
        match *self {
            HomologicalInvariants::ZeroIdeal { ambient } => ambient,
            HomologicalInvariants::Ideal { depth_quotient, .. } => depth_quotient,
        }
    }

    pub fn projdim(&self) -> Result<usize> {
        match *self {
            HomologicalInvariants::ZeroIdeal { .. } => domain("projdim of the zero ideal is undefined"),
            HomologicalInvariants::Ideal { projdim, .. } => Ok(projdim),
        }
    }

    pub fn reg(&self) -> Result<usize> {
        match *self {
            HomologicalInvariants::ZeroIdeal { .. } => domain("regularity of the zero ideal is undefined"),
            HomologicalInvariants::Ideal { reg, .. } => Ok(reg),
        }
    }
}

pub fn invariants(ideal: &MonomialIdeal, field: FieldSpec) -> Result<HomologicalInvariants> {
    if ideal.is_zero() {
        return Ok(HomologicalInvariants::ZeroIdeal { ambient: ideal.ambient() });
    }
    HomologicalInvariants::from_table(&betti_table(ideal, field)?)
}

/// Invariants of one squarefree power `I^[k]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PowerInvariants {
    pub k: usize,
    /// Initial degree `d_k` of `I^[k]`.
    pub d_k: usize,
    pub depth: usize,
    /// Normalized depth `depth(S/I^[k]) - (d_k - 1)`.
    pub g: i64,
    pub reg: usize,
    pub projdim: usize,
}

/// Invariants of `I^[k]` for `1 <= k <= ν(I)`.
pub fn power_invariants(ideal: &MonomialIdeal, k: usize, field: FieldSpec) -> Result<PowerInvariants> {
    let power = ideal.squarefree_power(k)?;
    if power.is_zero() {
        return domain(format!("I^[{k}] is zero; k exceeds the monomial grade"));
    }
    let inv = invariants(&power, field)?;
    let d_k = power.initial_degree()?;
    let depth = inv.depth_quotient();
    Ok(PowerInvariants {
        k,
        d_k,
        depth,
        g: depth as i64 - (d_k as i64 - 1),
        reg: inv.reg()?,
        projdim: inv.projdim()?,
    })
}

/// [`power_invariants`] for every `k = 1..=ν(I)`.
pub fn power_profile(ideal: &MonomialIdeal, field: FieldSpec) -> Result<Vec<PowerInvariants>> {
    (1..=ideal.monomial_grade()).map(|k| power_invariants(ideal, k, field)).collect()
}

pub fn g_profile(ideal: &MonomialIdeal, field: FieldSpec) -> Result<BTreeMap<usize, i64>> {
    Ok(power_profile(ideal, field)?.into_iter().map(|p| (p.k, p.g)).collect())
}

pub fn reg_profile(ideal: &MonomialIdeal, field: FieldSpec) -> Result<BTreeMap<usize, usize>> {
    Ok(power_profile(ideal, field)?.into_iter().map(|p| (p.k, p.reg)).collect())
}

pub fn depth_profile(ideal: &MonomialIdeal, field: FieldSpec) -> Result<BTreeMap<usize, usize>> {
    Ok(power_profile(ideal, field)?.into_iter().map(|p| (p.k, p.depth)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{mask_of, Graph};

    const GF2: FieldSpec = FieldSpec::Prime(2);

    fn edge_ideal(g: &Graph) -> MonomialIdeal {
        MonomialIdeal::edge_ideal(g)
    }

    fn ideal(n: usize, gens: &[&[usize]]) -> MonomialIdeal {
        MonomialIdeal::from_supports(n, gens.iter().map(|g| mask_of(g.iter().copied()))).unwrap()
    }

    #[test]
    fn field_parsing() {
        assert_eq!("gf2".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(2));
        assert_eq!("GF(3)".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(3));
        assert_eq!("q".parse::<FieldSpec>().unwrap(), FieldSpec::Rational);
        assert!("gf4".parse::<FieldSpec>().is_err());
        assert!("r".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::default(), FieldSpec::Prime(2));
    }

    #[test]
    fn faces_and_lcm_lattice() {
        let p3 = edge_ideal(&Graph::path(3).unwrap());
        assert!(stanley_reisner_face(&p3, mask_of([1, 3])));
        assert!(!stanley_reisner_face(&p3, mask_of([1, 2])));
        assert!(stanley_reisner_face(&p3, 0));
        assert_eq!(lcm_degrees(&ideal(2, &[&[1, 2]])), vec![mask_of([1, 2])]);
        let two = lcm_degrees(&ideal(4, &[&[1, 2], &[3, 4]]));
        assert_eq!(two.len(), 3);
        assert!(two.contains(&mask_of([1, 2, 3, 4])));
        assert_eq!(lcm_degrees(&p3), vec![mask_of([1, 2]), mask_of([2, 3]), mask_of([1, 2, 3])]);
    }

    #[test]
    fn small_tables() {
        let principal = betti_table(&ideal(2, &[&[1, 2]]), GF2).unwrap();
        assert_eq!(principal.entries().collect::<Vec<_>>(), vec![((0, 2), 1)]);
        let p3 = betti_table(&edge_ideal(&Graph::path(3).unwrap()), GF2).unwrap();
        assert_eq!(p3.entries().collect::<Vec<_>>(), vec![((0, 2), 2), ((1, 3), 1)]);
        let p4 = edge_ideal(&Graph::path(4).unwrap());
        assert_eq!(betti_table(&p4, GF2).unwrap().entries().collect::<Vec<_>>(),
            betti_table(&p4, FieldSpec::Rational).unwrap().entries().collect::<Vec<_>>());
        assert!(betti_table(&MonomialIdeal::zero(3), GF2).is_err());
        assert!(betti_table(&MonomialIdeal::unit(3), GF2).is_err());
    }

    #[test]
    fn complete_intersection_is_koszul() {
        let ci = ideal(6, &[&[1, 2], &[3, 4], &[5, 6]]);
        let t = betti_table(&ci, GF2).unwrap();
        assert_eq!(t.entries().collect::<Vec<_>>(), vec![((0, 2), 3), ((1, 4), 3), ((2, 6), 1)]);
        assert_eq!(g_profile(&ci, GF2).unwrap(), BTreeMap::from([(1, 2), (2, 1), (3, 0)]));
    }

    #[test]
    fn invariants_and_zero_ideal() {
        let p4 = edge_ideal(&Graph::path(4).unwrap());
        let sq = p4.squarefree_power(2).unwrap();
        assert_eq!(invariants(&sq, GF2).unwrap().reg().unwrap(), 4);
        let zero = invariants(&MonomialIdeal::zero(5), GF2).unwrap();
        assert_eq!(zero.depth_quotient(), 5);
        assert!(zero.reg().is_err());
        assert!(zero.projdim().is_err());
    }

    #[test]
    fn path_and_cycle_depths() {
        for n in 3..=9 {
            let p = invariants(&edge_ideal(&Graph::path(n).unwrap()), GF2).unwrap();
            assert_eq!(p.depth_quotient(), n.div_ceil(3), "P{n}");
            let c = invariants(&edge_ideal(&Graph::cycle(n).unwrap()), GF2).unwrap();
            assert_eq!(c.depth_quotient(), (n - 1).div_ceil(3), "C{n}");
        }
    }

    #[test]
    fn path_profile() {
        let p7 = edge_ideal(&Graph::path(7).unwrap());
        assert_eq!(g_profile(&p7, GF2).unwrap(), BTreeMap::from([(1, 2), (2, 1), (3, 0)]));
        assert_eq!(depth_profile(&p7, GF2).unwrap().len(), 3);
        assert_eq!(reg_profile(&p7, GF2).unwrap()[&3], 6);
    }

    #[test]
    fn generator_counts_in_row_zero() {
        let i = ideal(5, &[&[1], &[2, 3], &[3, 4, 5], &[1, 5]]);
        let t = betti_table(&i, GF2).unwrap();
        assert_eq!(t.get(0, 1), 1);
        assert_eq!(t.get(0, 2), 1);
        assert_eq!(t.get(0, 3), 1);
    }

    #[test]
    fn display_layout() {
        let t = betti_table(&edge_ideal(&Graph::path(3).unwrap()), GF2).unwrap();
        let s = t.to_string();
        assert!(s.contains("total: 2 1"), "{s}");
        assert!(s.contains("    2: 2 1"), "{s}");
    }
}
