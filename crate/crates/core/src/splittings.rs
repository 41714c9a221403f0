//! Generator partitions `I = I1 + I2`, checks of the Betti splitting identity,
//! and the lcm strict-divisibility criterion for Tor-vanishing inclusions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, input, Error, Result};
use crate::graphs::{bit, vertices_of, Graph, SetupLabeling};
use crate::monomials::{lex_cmp, write_monomial, MonomialIdeal};
use crate::resolution::{betti_table, BettiTable, FieldSpec};

/// `I = I1 + I2` where the minimal generators of `I` are the disjoint union of
/// those of `I1` and `I2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Splitting {
    pub whole: MonomialIdeal,
    pub first: MonomialIdeal,
    pub second: MonomialIdeal,
    pub intersection: MonomialIdeal,
}

impl Splitting {
    pub fn from_parts(first: MonomialIdeal, second: MonomialIdeal) -> Result<Self> {
        let whole = first.sum(&second)?;
        let mut parts: Vec<u64> = first.gens().iter().chain(second.gens()).copied().collect();
        parts.sort_unstable();
        let mut gens = whole.gens().to_vec();
        gens.sort_unstable();
        if parts != gens {
            return input(format!(
                "{first} and {second} do not partition the minimal generators of {whole}"
            ));
        }
        let intersection = first.intersection(&second)?;
        Ok(Splitting { whole, first, second, intersection })
    }

    /// Either part zero.
    pub fn is_degenerate(&self) -> bool {
        self.first.is_zero() || self.second.is_zero()
    }
}

/// Generators divisible by `x` go to the second part, the rest to the first.
pub fn x_partition(ideal: &MonomialIdeal, x: usize) -> Result<Splitting> {
    if x == 0 || x > ideal.ambient() {
        return input(format!("variable x{x} outside x1..x{}", ideal.ambient()));
    }
    let (second, first): (Vec<u64>, Vec<u64>) = ideal.gens().iter().copied().partition(|&g| g & bit(x) != 0);
    Splitting::from_parts(
        MonomialIdeal::minimal(ideal.ambient(), first),
        MonomialIdeal::minimal(ideal.ambient(), second),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplittingVerdict {
    Holds { degenerate: bool },
    /// `β_{i,j}(I)` differs from `β_{i,j}(I1) + β_{i,j}(I2) + β_{i-1,j}(I1 ∩ I2)`.
    Fails { i: usize, j: usize, whole: u64, first: u64, second: u64, intersection_shifted: u64 },
}

impl SplittingVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, SplittingVerdict::Holds { .. })
    }
}

fn table_or_empty(ideal: &MonomialIdeal, field: FieldSpec) -> Result<BettiTable> {
    if ideal.is_zero() {
        Ok(BettiTable::new(ideal.ambient(), field))
    } else {
        betti_table(ideal, field)
    }
}

pub fn verify_betti_splitting(s: &Splitting, field: FieldSpec) -> Result<SplittingVerdict> {
    let degenerate = s.is_degenerate();
    let whole = table_or_empty(&s.whole, field)?;
    let first = table_or_empty(&s.first, field)?;
    let second = table_or_empty(&s.second, field)?;
    let inter = table_or_empty(&s.intersection, field)?;
    let sum = first.plus_shifted(&second, 0).plus_shifted(&inter, 1);
    let mut cells: Vec<(usize, usize)> = whole.entries().chain(sum.entries()).map(|(c, _)| c).collect();
    cells.sort_unstable();
    cells.dedup();
    for (i, j) in cells {
        if whole.get(i, j) != sum.get(i, j) {
            return Ok(SplittingVerdict::Fails {
                i,
                j,
                whole: whole.get(i, j),
                first: first.get(i, j),
                second: second.get(i, j),
                intersection_shifted: if i == 0 { 0 } else { inter.get(i - 1, j) },
            });
        }
    }
    Ok(SplittingVerdict::Holds { degenerate })
}

/// Every `x`-partition of `I` and whether it is a Betti splitting.
pub fn x_splitting_search(ideal: &MonomialIdeal, field: FieldSpec) -> Result<Vec<(usize, SplittingVerdict)>> {
    let support = ideal.support();
    vertices_of(support)
        .map(|x| Ok((x, verify_betti_splitting(&x_partition(ideal, x)?, field)?)))
        .collect()
}

/// `(I, x_n)^[k] = I^[k] + x_n I^[k-1]` for `I` in the first `n - 1` variables.
#[derive(Debug, Clone)]
pub struct ConeSplitting {
    pub k: usize,
    pub splitting: Splitting,
    /// `x_n I^[k]`, which the intersection of the parts must equal.
    pub expected_intersection: MonomialIdeal,
}

impl ConeSplitting {
    pub fn intersection_identity_holds(&self) -> bool {
        self.splitting.intersection == self.expected_intersection
    }
}

/// The ideal `(I, x_n)` with `n = ambient(I) + 1`.
pub fn cone(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    let n = ideal.ambient() + 1;
    ideal.with_ambient(n)?.sum(&MonomialIdeal::from_supports(n, [bit(n)])?)
}

pub fn cone_power_splitting(ideal: &MonomialIdeal, k: usize) -> Result<ConeSplitting> {
    let nu = ideal.monomial_grade();
    if k < 2 || k > nu + 1 {
        return input(format!("cone splitting needs 2 <= k <= {}; got k = {k}", nu + 1));
    }
    let n = ideal.ambient() + 1;
    let big = ideal.with_ambient(n)?;
    let first = big.power_or_unit(k);
    let second = big.power_or_unit(k - 1).scale_support(bit(n))?;
    let splitting = Splitting::from_parts(first, second)?;
    let expected_intersection = big.power_or_unit(k).scale_support(bit(n))?;
    Ok(ConeSplitting { k, splitting, expected_intersection })
}

/// Both sides of the depth formula for `J = (I, x_n)` at one `k`. `None` is `+∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConeDepthCheck {
    pub k: usize,
    pub g_cone: i64,
    pub predicted: Option<i64>,
}

impl ConeDepthCheck {
    pub fn holds(&self) -> bool {
        self.predicted == Some(self.g_cone)
    }
}

/// Compares `g_J(k)` with `min{g_I(k) + d_k - d_{k-1} - 1, g_I(k-1)}` for every
/// `1 <= k <= ν(J)`, using `g_I(0) = g_I(ν(I)+1) = ∞` and `d_0 = 0`.
pub fn verify_cone_depth_formula(ideal: &MonomialIdeal, field: FieldSpec) -> Result<Vec<ConeDepthCheck>> {
    if ideal.is_zero() {
        return domain("the cone formula needs a nonzero ideal");
    }
    let nu = ideal.monomial_grade();
    let base = crate::resolution::power_profile(ideal, field)?;
    let g_i = |k: usize| -> Option<i64> { (k >= 1 && k <= nu).then(|| base[k - 1].g) };
    let d_i = |k: usize| -> usize { if k == 0 { 0 } else { base[k - 1].d_k } };
    let j = cone(ideal)?;
    let nu_j = j.monomial_grade();
    if nu_j != nu + 1 {
        return domain(format!("cone has monomial grade {nu_j}, expected {}", nu + 1));
    }
    (1..=nu_j)
        .map(|k| {
            let g_cone = crate::resolution::power_invariants(&j, k, field)?.g;
            let first = g_i(k).map(|g| g + d_i(k) as i64 - d_i(k - 1) as i64 - 1);
            let predicted = match (first, g_i(k - 1)) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            };
            Ok(ConeDepthCheck { k, g_cone, predicted })
        })
        .collect()
}

/// A named ideal identity and whether both sides have the same minimal generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
}

/// The splitting of `I(G)^[k]` at a distant edge of a forest, in the caller's
/// labels. With leaf `l`, support `s`, anchor `a` and pendant leaves `p_j`:
/// `G1 = G - l`, `G2 = G - {l, s}`, `G3 = G - {l, s, a}`, all in the same ambient.
#[derive(Debug, Clone)]
pub struct ForestSplitting {
    pub labeling: SetupLabeling,
    pub k: usize,
    /// `I(G)^[k] = I(G1)^[k] + x_l x_s I(G2)^[k-1]`.
    pub splitting: Splitting,
    /// `x_l x_s [I(G3)^[k] + x_a I(G3)^[k-1]]`.
    pub j1: MonomialIdeal,
    /// `x_l x_s (x_{p_1}, ..., x_{p_t}) I(G2)^[k-1]`.
    pub j2: MonomialIdeal,
    pub identities: Vec<IdentityCheck>,
    g2_prev: MonomialIdeal,
    g3_power: MonomialIdeal,
    g3_prev: MonomialIdeal,
}

impl ForestSplitting {
    pub fn t(&self) -> usize {
        self.labeling.t()
    }

    pub fn all_identities_hold(&self) -> bool {
        self.identities.iter().all(|c| c.holds)
    }

    /// `J = J1 + J2` with `J` the intersection of the two parts; only when `t > 0`.
    pub fn pendant_splitting(&self) -> Result<Option<Splitting>> {
        if self.t() == 0 {
            return Ok(None);
        }
        Splitting::from_parts(self.j1.clone(), self.j2.clone()).map(Some)
    }

    fn edge_bits(&self) -> u64 {
        bit(self.labeling.leaf) | bit(self.labeling.support)
    }

    /// The map from the minimal generators of `J` to those of `x_l x_s I(G2)^[k-1]`
    /// used to show that `J -> x_l x_s I(G2)^[k-1]` is Tor-vanishing.
    pub fn intersection_ek_map(&self) -> Result<EkMap> {
        let ls = self.edge_bits();
        let a = bit(self.labeling.anchor);
        let pendants = self.labeling.pendants.iter().fold(0u64, |m, &p| m | bit(p));
        let tilde = canonical_ek_map(&self.g3_power, &self.g3_prev)?;
        let codomain = self.g2_prev.scale_support(ls)?;
        let j = &self.splitting.intersection;
        let mut assignment = Vec::with_capacity(j.len());
        for &g in j.gens() {
            let rest = g & !ls;
            let image = if g & ls != ls {
                None
            } else if self.g3_power.gens().contains(&rest) {
                tilde.image(rest)
            } else if rest & a != 0 && self.g3_prev.gens().contains(&(rest & !a)) {
                Some(rest & !a)
            } else {
                let p = rest & pendants;
                (p.count_ones() == 1 && self.g2_prev.gens().contains(&(rest & !p))).then_some(rest & !p)
            };
            match image {
                Some(img) => assignment.push((g, img | ls)),
                None => return domain(format!("generator {} of J fits none of the three cases", show(g))),
            }
        }
        EkMap::new(j.clone(), codomain, assignment)
    }

    /// The map from `(x_{p_1}, ..., x_{p_t}) J1` to `J2`, when `t > 0`.
    pub fn pendant_ek_map(&self) -> Result<Option<EkMap>> {
        let Some(split) = self.pendant_splitting()? else {
            return Ok(None);
        };
        let ls = self.edge_bits();
        let a = bit(self.labeling.anchor);
        let pendants = self.labeling.pendants.iter().fold(0u64, |m, &p| m | bit(p));
        let tilde = canonical_ek_map(&self.g3_power, &self.g3_prev)?;
        let dom = &split.intersection;
        let mut assignment = Vec::with_capacity(dom.len());
        for &g in dom.gens() {
            let p = g & pendants;
            let rest = g & !ls & !p;
            let image = if g & ls != ls || p.count_ones() != 1 {
                None
            } else if self.g3_power.gens().contains(&rest) {
                tilde.image(rest).map(|u| u | p)
            } else if rest & a != 0 && self.g3_prev.gens().contains(&(rest & !a)) {
                Some((rest & !a) | p)
            } else {
                None
            };
            match image {
                Some(img) => assignment.push((g, img | ls)),
                None => return domain(format!("generator {} fits neither case", show(g))),
            }
        }
        EkMap::new(dom.clone(), self.j2.clone(), assignment).map(Some)
    }
}

fn show(support: u64) -> String {
    let mut s = String::new();
    write_monomial(&mut s, support).ok();
    s
}

fn check(name: impl Into<String>, lhs: &MonomialIdeal, rhs: &MonomialIdeal) -> IdentityCheck {
    IdentityCheck { name: name.into(), holds: lhs == rhs }
}

/// Builds the distant-edge splitting of `I(G)^[k]` and checks every ideal
/// identity it rests on.
pub fn forest_power_splitting(g: &Graph, k: usize) -> Result<ForestSplitting> {
    if !g.is_forest() {
        return domain("not a forest; use the Betti oracle directly");
    }
    let nu = g.matching_number();
    if nu < 3 {
        return domain(format!("matching number {nu} < 3; use the Betti oracle for the base case"));
    }
    if k == 0 || k > nu {
        return input(format!("k must lie in 1..={nu}; got {k}"));
    }
    let labeling = SetupLabeling::new(g)?;
    let n = g.n();
    let (l, s, a) = (bit(labeling.leaf), bit(labeling.support), bit(labeling.anchor));
    let i_g = MonomialIdeal::edge_ideal(g);
    let i1 = MonomialIdeal::edge_ideal(&labeling.g1(g));
    let i2 = MonomialIdeal::edge_ideal(&labeling.g2(g));
    let i3 = MonomialIdeal::edge_ideal(&labeling.g3(g));

    let whole = i_g.power_or_unit(k);
    let g1_power = i1.power_or_unit(k);
    let g2_power = i2.power_or_unit(k);
    let g2_prev = i2.power_or_unit(k - 1);
    let g3_power = i3.power_or_unit(k);
    let g3_prev = i3.power_or_unit(k - 1);

    let leaf_part = g2_prev.scale_support(l | s)?;
    let splitting = Splitting::from_parts(g1_power.clone(), leaf_part.clone())?;
    let anchor_core = g3_power.sum(&g3_prev.scale_support(a)?)?;
    let j1 = anchor_core.scale_support(l | s)?;
    let j2 = g2_prev.variable_multiple(&labeling.pendants)?.scale_support(l | s)?;
    let j = &splitting.intersection;

    let mut identities = vec![check("power_split", &whole, &splitting.whole)];
    identities.push(check("intersection_formula", j, &j1.sum(&j2)?));

    let mut g1_rhs = g3_prev.scale_support(s | a)?.sum(&g2_power)?;
    for &p in &labeling.pendants {
        g1_rhs = g1_rhs.sum(&g2_prev.scale_support(s | bit(p))?)?;
    }
    identities.push(check("g1_decomposition", &g1_power, &g1_rhs));
    identities.push(check(
        "g2_g3_exchange",
        &g2_power.sum(&g3_prev.scale_support(a)?)?,
        &anchor_core,
    ));
    identities.push(check(
        "meets_anchor_part",
        &g3_prev.scale_support(s | a)?.intersection(&leaf_part)?,
        &g3_prev.scale_support(l | s | a)?,
    ));
    for &p in &labeling.pendants {
        identities.push(check(
            format!("meets_pendant_part[{p}]"),
            &g2_prev.scale_support(s | bit(p))?.intersection(&leaf_part)?,
            &g2_prev.scale_support(l | s | bit(p))?,
        ));
    }
    identities.push(check(
        "meets_g2_part",
        &g2_power.intersection(&leaf_part)?,
        &g2_power.scale_support(l | s)?,
    ));
    identities.push(IdentityCheck {
        name: "j2_nonzero_iff_pendants".into(),
        holds: j2.is_zero() == labeling.pendants.is_empty(),
    });
    if !labeling.pendants.is_empty() {
        identities.push(check(
            "pendant_intersection",
            &j1.intersection(&j2)?,
            &j1.variable_multiple(&labeling.pendants)?,
        ));
    }
    debug_assert_eq!(whole.ambient(), n);
    Ok(ForestSplitting { labeling, k, splitting, j1, j2, identities, g2_prev, g3_power, g3_prev })
}

/// An assignment `φ: G(J) -> G(L)` of minimal generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EkMap {
    domain: MonomialIdeal,
    codomain: MonomialIdeal,
    assignment: Vec<(u64, u64)>,
}

impl EkMap {
    /// Checks that every generator of `domain` is mapped exactly once to a
    /// generator of `codomain` dividing it.
    pub fn new(domain: MonomialIdeal, codomain: MonomialIdeal, mut assignment: Vec<(u64, u64)>) -> Result<Self> {
        if domain.ambient() != codomain.ambient() {
            return Err(Error::AmbientMismatch(domain.ambient(), codomain.ambient()));
        }
        assignment.sort_unstable_by(|x, y| lex_cmp(x.0, y.0));
        let mut keys: Vec<u64> = assignment.iter().map(|p| p.0).collect();
        let mut gens = domain.gens().to_vec();
        keys.sort_unstable();
        gens.sort_unstable();
        if keys != gens {
            return input("assignment does not cover the minimal generators exactly once");
        }
        for &(u, v) in &assignment {
            if !codomain.gens().contains(&v) {
                return input(format!("image {} is not a minimal generator of the codomain", show(v)));
            }
            if v & !u != 0 {
                return input(format!("image {} does not divide {}", show(v), show(u)));
            }
        }
        Ok(EkMap { domain, codomain, assignment })
    }

    pub fn domain(&self) -> &MonomialIdeal {
        &self.domain
    }

    pub fn codomain(&self) -> &MonomialIdeal {
        &self.codomain
    }

    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.assignment
    }

    pub fn image(&self, u: u64) -> Option<u64> {
        self.assignment.iter().find(|p| p.0 == u).map(|p| p.1)
    }

    pub fn identity(ideal: &MonomialIdeal) -> Self {
        EkMap {
            domain: ideal.clone(),
            codomain: ideal.clone(),
            assignment: ideal.gens().iter().map(|&g| (g, g)).collect(),
        }
    }
}

/// Removes the largest variable of each generator of `J` and sends it to the
/// lexicographically smallest generator of `L` dividing what is left. Each such
/// quotient must lie in `L`, which `∂*J ⊆ L` guarantees.
pub fn canonical_ek_map(j: &MonomialIdeal, l: &MonomialIdeal) -> Result<EkMap> {
    if j.ambient() != l.ambient() {
        return Err(Error::AmbientMismatch(j.ambient(), l.ambient()));
    }
    if j.is_unit() {
        return domain("generator 1 has no variable to remove");
    }
    for &u in j.gens() {
        let v = 63 - u.leading_zeros() as usize;
        if !l.contains_support(u & !bit(v)) {
            return domain(format!("{}/x{v} is not in the codomain", show(u)));
        }
    }
    let assignment = j
        .gens()
        .iter()
        .map(|&u| {
            let top = 63 - u.leading_zeros() as usize;
            let rest = u & !bit(top);
            let image = l
                .gens()
                .iter()
                .copied()
                .filter(|&g| g & !rest == 0)
                .min_by(|&a, &b| lex_cmp(a, b))
                .expect("quotient membership was checked");
            (u, image)
        })
        .collect();
    EkMap::new(j.clone(), l.clone(), assignment)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EkVerdict {
    /// Every nonempty `Ω` passed (`exhaustive`), or every sampled one did.
    Holds { exhaustive: bool, checked: u64 },
    /// `lcm φ(Ω)` does not strictly divide `lcm Ω`.
    Fails { witness: Vec<u64> },
}

impl EkVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, EkVerdict::Holds { .. })
    }
}

/// Default generator count up to which every subset is checked.
pub const EK_EXHAUSTIVE_LIMIT: usize = 16;
const EK_SAMPLES: u64 = 1 << 16;
const EK_SEED: u64 = 0x5eed;

/// Checks that `lcm(φ(u) : u ∈ Ω)` strictly divides `lcm(Ω)` for every nonempty
/// `Ω ⊆ G(J)`: exhaustively when `|G(J)| <= limit`, otherwise on seeded samples.
pub fn verify_ek_criterion(map: &EkMap, limit: usize) -> EkVerdict {
    if map.assignment.len() <= limit.min(40) {
        verify_ek_exhaustive(map)
    } else {
        verify_ek_sampled(map, EK_SAMPLES, EK_SEED)
    }
}

fn verify_ek_exhaustive(map: &EkMap) -> EkVerdict {
    let pairs = &map.assignment;
    let m = pairs.len();
    let mut in_omega = vec![false; m];
    let mut cnt_u = [0u32; 64];
    let mut cnt_phi = [0u32; 64];
    let (mut lcm_u, mut lcm_phi) = (0u64, 0u64);
    let toggle = |cnt: &mut [u32; 64], lcm: &mut u64, mono: u64, add: bool| {
        for v in vertices_of(mono) {
            if add {
                cnt[v] += 1;
                *lcm |= bit(v);
            } else {
                cnt[v] -= 1;
                if cnt[v] == 0 {
                    *lcm &= !bit(v);
                }
            }
        }
    };
    // Reflected Gray code: step s flips element trailing_zeros(s).
    let steps: u64 = 1u64 << m;
    for step in 1..steps {
        let e = step.trailing_zeros() as usize;
        let add = !in_omega[e];
        in_omega[e] = add;
        toggle(&mut cnt_u, &mut lcm_u, pairs[e].0, add);
        toggle(&mut cnt_phi, &mut lcm_phi, pairs[e].1, add);
        if lcm_phi & !lcm_u != 0 || lcm_phi == lcm_u {
            let witness = (0..m).filter(|&i| in_omega[i]).map(|i| pairs[i].0).collect();
            return EkVerdict::Fails { witness };
        }
    }
    EkVerdict::Holds { exhaustive: true, checked: steps - 1 }
}

/// Samples `samples` random nonempty subsets, plus all singletons.
pub fn verify_ek_sampled(map: &EkMap, samples: u64, seed: u64) -> EkVerdict {
    let pairs = &map.assignment;
    let fails = |omega: &[usize]| {
        let lu = omega.iter().fold(0u64, |m, &i| m | pairs[i].0);
        let lp = omega.iter().fold(0u64, |m, &i| m | pairs[i].1);
        lp & !lu != 0 || lp == lu
    };
    for i in 0..pairs.len() {
        if fails(&[i]) {
            return EkVerdict::Fails { witness: vec![pairs[i].0] };
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut omega = Vec::with_capacity(pairs.len());
    for _ in 0..samples {
        omega.clear();
        let density: f64 = rng.gen_range(0.05..1.0);
        omega.extend((0..pairs.len()).filter(|_| rng.gen_bool(density)));
        if omega.is_empty() {
            continue;
        }
        if fails(&omega) {
            return EkVerdict::Fails { witness: omega.iter().map(|&i| pairs[i].0).collect() };
        }
    }
    EkVerdict::Holds { exhaustive: false, checked: samples + pairs.len() as u64 }
}
