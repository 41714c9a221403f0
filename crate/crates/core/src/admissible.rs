//! k-admissible matchings and the number `aim(G, k)`.
//!
//! A matching `M` is k-admissible when it splits into nonempty parts such that
//! edges in different parts form gaps, every part induces a forest, and the part
//! sizes `a_1..a_r` satisfy `a_1 + ... + a_r <= r + k - 1`.

use crate::error::{domain, input, Result};
use crate::graphs::{bit, edge_mask, Edge, Graph, Matching, SetupLabeling};
use crate::resolution::{power_invariants, FieldSpec};
use crate::monomials::MonomialIdeal;

/// `a_1 + ... + a_r <= r + k - 1`.
pub fn is_k_admissible_sequence(a: &[usize], k: usize) -> bool {
    a.iter().sum::<usize>() < a.len() + k
}

/// A matching together with a partition witnessing k-admissibility.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleCertificate {
    pub matching: Matching,
    pub parts: Vec<Vec<Edge>>,
    pub k: usize,
}

impl AdmissibleCertificate {
    pub fn sizes(&self) -> Vec<usize> {
        self.parts.iter().map(Vec::len).collect()
    }

    /// Re-checks every defining condition against `g`.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let mut all: Vec<Edge> = self.parts.iter().flatten().copied().collect();
        all.sort_unstable();
        let covers = all == self.matching.edges() && self.parts.iter().all(|p| !p.is_empty());
        covers
            && cross_pairs_are_gaps(g, &self.parts)
            && is_k_admissible_sequence(&self.sizes(), self.k)
            && self.parts.iter().all(|p| induces_forest(g, p))
    }
}

fn cross_pairs_are_gaps(g: &Graph, parts: &[Vec<Edge>]) -> bool {
    parts.iter().enumerate().all(|(i, p)| {
        parts[i + 1..]
            .iter()
            .all(|q| p.iter().all(|&e| q.iter().all(|&f| g.is_gap(e, f).unwrap_or(false))))
    })
}

fn induces_forest(g: &Graph, part: &[Edge]) -> bool {
    let vm = part.iter().fold(0u64, |m, &e| m | edge_mask(e));
    g.restrict(vm).is_forest()
}

fn check_matching(g: &Graph, m: &Matching) -> Result<()> {
    if m.is_matching_of(g) {
        Ok(())
    } else {
        input(format!("{m} is not a matching of the graph"))
    }
}

/// Components of the relation "`e` and `f` do not form a gap" on the edges of `M`.
pub fn conflict_components(g: &Graph, m: &Matching) -> Result<Vec<Vec<Edge>>> {
    check_matching(g, m)?;
    let edges = m.edges();
    let mut comp: Vec<usize> = (0..edges.len()).collect();
    fn find(comp: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while comp[r] != r {
            r = comp[r];
        }
        comp[x] = r;
        r
    }
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if !g.is_gap(edges[i], edges[j])? {
                let (a, b) = (find(&mut comp, i), find(&mut comp, j));
                comp[a.max(b)] = a.min(b);
            }
        }
    }
    let mut parts: Vec<Vec<Edge>> = Vec::new();
    let mut slot = vec![usize::MAX; edges.len()];
    for i in 0..edges.len() {
        let r = find(&mut comp, i);
        if slot[r] == usize::MAX {
            slot[r] = parts.len();
            parts.push(Vec::new());
        }
        parts[slot[r]].push(edges[i]);
    }
    Ok(parts)
}

/// Decides k-admissibility through the conflict components: any admissible
/// partition is a coarsening of them, and coarsening never helps.
pub fn is_k_admissible_matching(g: &Graph, m: &Matching, k: usize) -> Option<AdmissibleCertificate> {
    if m.is_empty() {
        return None;
    }
    let parts = conflict_components(g, m).ok()?;
    let excess: usize = parts.iter().map(|p| p.len() - 1).sum();
    if excess + 1 > k || !parts.iter().all(|p| induces_forest(g, p)) {
        return None;
    }
    Some(AdmissibleCertificate { matching: m.clone(), parts, k })
}

/// Largest matching accepted by [`brute_force_admissible`].
pub const BRUTE_FORCE_MAX_EDGES: usize = 10;

/// Tries every set partition of `M` against the defining conditions.
pub fn brute_force_admissible(g: &Graph, m: &Matching, k: usize) -> Result<Option<AdmissibleCertificate>> {
    check_matching(g, m)?;
    let edges = m.edges();
    let s = edges.len();
    if s > BRUTE_FORCE_MAX_EDGES {
        return domain(format!("{s} edges; set-partition search is limited to {BRUTE_FORCE_MAX_EDGES}"));
    }
    if s == 0 {
        return Ok(None);
    }
    // gap[i] has bit j when edges i and j form an induced 2-matching.
    let mut gap = vec![0u32; s];
    for i in 0..s {
        for j in 0..s {
            let (e, f) = (edges[i], edges[j]);
            let (me, mf) = (edge_mask(e), edge_mask(f));
            let touching = (g.neighbors(e.0) | g.neighbors(e.1)) & mf != 0;
            if i != j && me & mf == 0 && !touching {
                gap[i] |= 1 << j;
            }
        }
    }
    let forest = |sub: u32| -> bool {
        let vm = (0..s).filter(|&i| sub >> i & 1 == 1).fold(0u64, |m, i| m | edge_mask(edges[i]));
        let verts = vm.count_ones() as usize;
        let e_count: usize = crate::graphs::vertices_of(vm).map(|v| (g.neighbors(v) & vm).count_ones() as usize).sum::<usize>() / 2;
        let comps = g.restrict(vm).connected_components().iter().filter(|&&c| c & vm != 0).count();
        e_count + comps == verts
    };
    let mut labels = vec![0usize; s];
    let found = partitions(&mut labels, 0, 0, &mut |labels, r| {
        let part_masks: Vec<u32> =
            (0..r).map(|b| (0..s).filter(|&i| labels[i] == b).fold(0, |m, i| m | 1 << i)).collect();
        let sizes: Vec<usize> = part_masks.iter().map(|p| p.count_ones() as usize).collect();
        let gaps_ok = (0..s).all(|i| (0..s).all(|j| labels[i] == labels[j] || gap[i] >> j & 1 == 1));
        gaps_ok && is_k_admissible_sequence(&sizes, k) && part_masks.iter().all(|&p| forest(p))
    });
    Ok(found.map(|(labels, r)| AdmissibleCertificate {
        matching: m.clone(),
        parts: (0..r).map(|b| (0..s).filter(|&i| labels[i] == b).map(|i| edges[i]).collect()).collect(),
        k,
    }))
}

/// Restricted growth strings: `labels[i] <= max(labels[..i]) + 1`.
fn partitions(
    labels: &mut Vec<usize>,
    i: usize,
    blocks: usize,
    accept: &mut dyn FnMut(&[usize], usize) -> bool,
) -> Option<(Vec<usize>, usize)> {
    if i == labels.len() {
        return accept(labels, blocks).then(|| (labels.clone(), blocks));
    }
    for b in 0..=blocks {
        labels[i] = b;
        let next = if b == blocks { blocks + 1 } else { blocks };
        if let Some(hit) = partitions(labels, i + 1, next, accept) {
            return Some(hit);
        }
    }
    None
}

/// A largest k-admissible matching, or `None` when there is none.
pub fn aim_certificate(g: &Graph, k: usize) -> Result<Option<AdmissibleCertificate>> {
    let nu = g.matching_number();
    if k == 0 || k > nu {
        return input(format!("aim(G, k) is defined for 1 <= k <= ν(G) = {nu}; got k = {k}"));
    }
    for size in (1..=nu).rev() {
        if let Some(cert) = g.k_matchings(size).find_map(|m| is_k_admissible_matching(g, &m, k)) {
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

/// `aim(G, k)`: the largest size of a k-admissible matching, 0 if none exists.
pub fn aim(g: &Graph, k: usize) -> Result<usize> {
    Ok(aim_certificate(g, k)?.map_or(0, |c| c.matching.len()))
}

/// Result of one statement about `aim` at one `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AimCheck {
    pub name: &'static str,
    pub k: usize,
    pub holds: bool,
    pub detail: String,
}

/// The regularity formula `reg(I(G)^[k]) = aim(G, k) + k` and the facts about
/// `aim` it relies on, for every `1 <= k <= ν(G)` of a forest.
pub fn verify_aim_statements(g: &Graph, field: FieldSpec) -> Result<Vec<AimCheck>> {
    if !g.is_forest() {
        return domain("the regularity formula is checked on forests only");
    }
    let nu = g.matching_number();
    let ideal = MonomialIdeal::edge_ideal(g);
    let aims: Vec<usize> = (1..=nu).map(|k| aim(g, k)).collect::<Result<_>>()?;
    let a = |k: usize| aims[k - 1];
    let mut out = Vec::new();
    let mut push = |name, k, holds, detail: String| out.push(AimCheck { name, k, holds, detail });
    for k in 1..=nu {
        let reg = power_invariants(&ideal, k, field)?.reg;
        push("reg_equals_aim_plus_k", k, reg == a(k) + k, format!("reg {reg}, aim {}", a(k)));
        push("aim_at_least_k", k, a(k) >= k, format!("aim {}", a(k)));
        if k >= 2 {
            push("aim_step_at_most_one", k, a(k) <= a(k - 1) + 1, format!("{} -> {}", a(k - 1), a(k)));
            push("aim_nondecreasing", k, a(k - 1) <= a(k), format!("{} -> {}", a(k - 1), a(k)));
            for d in g.distant_edges() {
                let h = g.delete_vertices(bit(d.leaf) | bit(d.support));
                let lower = aim(&h, k - 1)? + 1;
                push(
                    "distant_edge_lower_bound",
                    k,
                    lower <= a(k),
                    format!("edge {}-{}: {lower} <= {}", d.support, d.leaf, a(k)),
                );
            }
        }
    }
    if nu >= 1 {
        let indm = g.induced_matching_number();
        push("aim_one_is_indm", 1, a(1) == indm, format!("aim {}, indm {indm}", a(1)));
        push("aim_top_is_nu", nu, a(nu) == nu, format!("aim {}, ν {nu}", a(nu)));
    }
    if nu >= 3 {
        let setup = SetupLabeling::new(g)?;
        let parts = [setup.g1(g), setup.g2(g), setup.g3(g)];
        let nus: Vec<usize> = parts.iter().map(Graph::matching_number).collect();
        let sub_aim = |i: usize, k: usize| -> Result<Option<usize>> {
            if k == 0 || k > nus[i] { Ok(None) } else { aim(&parts[i], k).map(Some) }
        };
        for k in 1..=nu {
            let terms = [sub_aim(0, k)?, sub_aim(1, k - 1)?.map(|x| x + 1), sub_aim(2, k)?.map(|x| x + 1)];
            let best = terms.iter().flatten().max().copied();
            push("aim_recursion", k, best == Some(a(k)), format!("terms {terms:?}, aim {}", a(k)));
        }
    }
    Ok(out)
}
