//! Acceptance checks: one PASS/FAIL line per criterion.
//!
//! Every comparison is exact integer or set equality (`TOLERANCE = 0`). A
//! criterion listed in `KNOWN_RED` prints FAIL with its reason and does not
//! fail the run; any other FAIL, or a listed criterion that starts passing,
//! exits nonzero.

mod independent;

use std::process::ExitCode;
use std::time::Instant;

use sqfpow::admissible::{aim, brute_force_admissible, is_k_admissible_matching};
use sqfpow::corpus::{brooms, forest_corpus, random_forest_corpus};
use sqfpow::forest_engine::ForestEngine;
use sqfpow::graphs::SetupLabeling;
use sqfpow::resolution::{betti_table, invariants, power_invariants};
use sqfpow::splittings::{
    canonical_ek_map, forest_power_splitting, verify_betti_splitting, verify_cone_depth_formula, verify_ek_criterion,
    EkVerdict,
};
use sqfpow::{FieldSpec, Graph, Matching, MonomialIdeal};

const TOLERANCE: i64 = 0;
const GF2: FieldSpec = FieldSpec::Prime(2);
const FIELDS: [FieldSpec; 3] = [FieldSpec::Prime(2), FieldSpec::Prime(3), FieldSpec::Rational];

/// Criteria whose literal statement contradicts an exact computation.
const KNOWN_RED: &[(u32, &str)] = &[(
    1,
    "the quoted g(G1,2) = 3 is g(G1,1); the exact value is 2 (library oracle, both homology routes, GF(2) and Q, and \
     the independent Hochster check agree), and the quoted terms {3,1,2,2} come from a recursion whose two G3 \
     offsets are one too small for t > 0; the exact recursion gives {2,1,1,1} with the same minimum 1",
)];

type Verdict = Result<String, String>;

fn same(a: i64, b: i64) -> bool {
    (a - b).abs() <= TOLERANCE
}

fn expect(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok { Ok(()) } else { Err(what()) }
}

fn pendant_forest() -> Graph {
    let edges = [(1, 2), (2, 3), (3, 4), (3, 9), (9, 10), (10, 5), (10, 6), (10, 7), (10, 8), (10, 11)];
    Graph::from_edges(11, &edges).unwrap()
}

fn oracle_g(g: &Graph, k: usize) -> i64 {
    power_invariants(&MonomialIdeal::edge_ideal(g), k, GF2).unwrap().g
}

fn independent_g(g: &Graph, k: usize) -> i64 {
    independent::normalized_depth(g.n(), &independent::edge_gens(&g.edges()), k).unwrap()
}

/// Forests on at most `n_max` vertices with matching number at least 3 and a
/// leaf whose support has another neighbour, plus the eleven-vertex pendant
/// forest. Forests made only of disjoint edges have no such leaf.
fn splitting_corpus(n_max: usize) -> Vec<Graph> {
    let mut v: Vec<Graph> = forest_corpus(n_max)
        .unwrap()
        .into_iter()
        .filter(|g| g.matching_number() >= 3 && SetupLabeling::new(g).is_ok())
        .collect();
    v.push(pendant_forest());
    v
}

fn worked_forest_values() -> Verdict {
    let g = pendant_forest();
    let s = SetupLabeling::new(&g).map_err(|e| e.to_string())?;
    let (g1, g2, g3) = (s.g1(&g), s.g2(&g), s.g3(&g));
    let quoted: [(&str, &Graph, usize, i64); 5] =
        [("g(G,2)", &g, 2, 1), ("g(G1,2)", &g1, 2, 3), ("g(G2,1)", &g2, 1, 7), ("g(G3,1)", &g3, 1, 8), ("g(G3,2)", &g3, 2, 7)];
    let mut problems = Vec::new();
    let mut shown = Vec::new();
    for (name, h, k, want) in quoted {
        let (lib, ind) = (oracle_g(h, k), independent_g(h, k));
        if lib != ind {
            problems.push(format!("{name}: library {lib} vs independent {ind}"));
        }
        if !same(lib, want) {
            problems.push(format!("{name} = {lib}, quoted {want}"));
        }
        shown.push(format!("{name}={lib}"));
    }
    let terms = ForestEngine::new(GF2).g_terms(&g, 2).map_err(|e| e.to_string())?;
    let got: Vec<i64> = terms.terms.iter().map(|t| t.expect("all four terms are finite here")).collect();
    if got != [3, 1, 2, 2] {
        problems.push(format!("recursion terms {got:?}, quoted [3, 1, 2, 2]"));
    }
    if !same(terms.value, 1) {
        problems.push(format!("recursion minimum {}, quoted 1", terms.value));
    }
    shown.push(format!("g(G1,1)={}", oracle_g(&g1, 1)));
    let detail = format!("{}, t={}, terms {got:?}, min {}", shown.join(" "), s.t(), terms.value);
    if problems.is_empty() { Ok(detail) } else { Err(format!("{}; {detail}", problems.join("; "))) }
}

fn path_closed_form() -> Verdict {
    let mut checks = 0;
    for n in 3..=12 {
        let ideal = MonomialIdeal::edge_ideal(&Graph::path(n).unwrap());
        for k in 1..=n / 2 {
            let g = power_invariants(&ideal, k, GF2).unwrap().g;
            let want = (n.div_ceil(3) as i64 - k as i64).max(0);
            expect(same(g, want), || format!("P{n}, k={k}: g={g}, formula {want}"))?;
            checks += 1;
        }
    }
    Ok(format!("{checks} (n, k) pairs, n = 3..12"))
}

fn reg_equals_aim_plus_k() -> Verdict {
    let mut graphs = random_forest_corpus(200, 9).unwrap();
    for n in 2..=9 {
        graphs.push(Graph::path(n).unwrap());
        graphs.push(Graph::star(n).unwrap());
    }
    graphs.extend(brooms(9).unwrap());
    let mut checks = 0;
    for g in &graphs {
        let ideal = MonomialIdeal::edge_ideal(g);
        for k in 1..=g.matching_number() {
            let reg = power_invariants(&ideal, k, GF2).unwrap().reg as i64;
            let a = aim(g, k).unwrap() as i64;
            expect(same(reg, a + k as i64), || format!("{g}, k={k}: reg {reg}, aim+k {}", a + k as i64))?;
            checks += 1;
        }
    }
    Ok(format!("{} graphs, {checks} (graph, k) pairs", graphs.len()))
}

fn distant_edge_betti_splittings() -> Verdict {
    let corpus = splitting_corpus(8);
    let (mut main, mut pendant) = (0, 0);
    for g in &corpus {
        for k in 1..=g.matching_number() {
            let fs = forest_power_splitting(g, k).map_err(|e| format!("{g}, k={k}: {e}"))?;
            let v = verify_betti_splitting(&fs.splitting, GF2).unwrap();
            expect(v.holds(), || format!("{g}, k={k}: {v:?}"))?;
            main += 1;
            if let Some(ps) = fs.pendant_splitting().unwrap() {
                let v = verify_betti_splitting(&ps, GF2).unwrap();
                expect(v.holds(), || format!("{g}, k={k}, pendant part: {v:?}"))?;
                pendant += 1;
            }
        }
    }
    Ok(format!("{} forests, {main} leaf splittings, {pendant} pendant splittings", corpus.len()))
}

fn splitting_ideal_identities() -> Verdict {
    let corpus = splitting_corpus(8);
    let mut checks = 0;
    let mut names = std::collections::BTreeSet::new();
    for g in &corpus {
        for k in 1..=g.matching_number() {
            let fs = forest_power_splitting(g, k).map_err(|e| e.to_string())?;
            for id in &fs.identities {
                expect(id.holds, || format!("{g}, k={k}: {} fails", id.name))?;
                names.insert(id.name.split('[').next().unwrap().to_string());
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} generator-set equalities over {} identity kinds", names.len()))
}

fn recursion_matches_oracle() -> Verdict {
    let corpus = forest_corpus(10).unwrap();
    let engine = ForestEngine::new(GF2);
    let mut checks = 0;
    for g in &corpus {
        let ideal = MonomialIdeal::edge_ideal(g);
        for k in 1..=g.matching_number() {
            let p = power_invariants(&ideal, k, GF2).unwrap();
            let (rg, rr) = (engine.g(g, k).unwrap(), engine.reg(g, k).unwrap());
            expect(same(rg, p.g), || format!("{g}, k={k}: recursion g {rg}, oracle {}", p.g))?;
            expect(same(rr as i64, p.reg as i64), || format!("{g}, k={k}: recursion reg {rr}, oracle {}", p.reg))?;
            checks += 1;
        }
    }
    Ok(format!("{} forests on 1..10 vertices, {checks} (forest, k) pairs, g and reg", corpus.len()))
}

fn g_nonincreasing_and_zero_at_nu() -> Verdict {
    let corpus = forest_corpus(10).unwrap();
    let mut count = 0;
    for g in &corpus {
        let nu = g.matching_number();
        if nu == 0 {
            continue;
        }
        let ideal = MonomialIdeal::edge_ideal(g);
        let values: Vec<i64> = (1..=nu).map(|k| power_invariants(&ideal, k, GF2).unwrap().g).collect();
        expect(values.windows(2).all(|w| w[1] <= w[0]), || format!("{g}: g = {values:?}"))?;
        // Each isolated vertex adds one to depth, so g(ν) equals their number.
        let last = *values.last().unwrap();
        let isolated = g.isolated_count() as i64;
        expect(same(last, isolated), || format!("{g}: g(ν) = {last} with {isolated} isolated vertices"))?;
        count += 1;
    }
    Ok(format!("{count} forests with an edge; g(ν) = 0 once isolated vertices are dropped"))
}

fn betti_tables_field_independent() -> Verdict {
    let corpus = forest_corpus(9).unwrap();
    let mut tables = 0;
    for g in &corpus {
        let ideal = MonomialIdeal::edge_ideal(g);
        for k in 1..=g.matching_number() {
            let p = ideal.squarefree_power(k).unwrap();
            let t: Vec<_> = FIELDS.iter().map(|&f| betti_table(&p, f).unwrap()).collect();
            let entries: Vec<Vec<_>> = t.iter().map(|t| t.entries().collect()).collect();
            expect(entries.windows(2).all(|w| w[0] == w[1]), || format!("{g}, k={k}: tables differ"))?;
            tables += 1;
        }
    }
    Ok(format!("{tables} powers compared over gf2, gf3, q"))
}

fn path_and_cycle_depths() -> Verdict {
    for n in 3..=10 {
        for (g, want) in [(Graph::path(n).unwrap(), n.div_ceil(3)), (Graph::cycle(n).unwrap(), (n - 1).div_ceil(3))] {
            let lib = invariants(&MonomialIdeal::edge_ideal(&g), GF2).unwrap().depth_quotient();
            let ind = independent::depth(n, &independent::edge_gens(&g.edges()));
            expect(lib == want && ind == want, || format!("{g}: depth {lib} (independent {ind}), want {want}"))?;
        }
    }
    Ok("n = 3..10, library and independent computation".into())
}

fn ek_criterion_canonical_maps() -> Verdict {
    let mut maps = 0;
    let mut subsets = 0u64;
    for g in forest_corpus(7).unwrap() {
        let ideal = MonomialIdeal::edge_ideal(&g);
        let nu = g.matching_number();
        for k in 2..=nu {
            let j = ideal.squarefree_power(k).unwrap();
            for l in 1..k {
                let map = canonical_ek_map(&j, &ideal.squarefree_power(l).unwrap()).map_err(|e| e.to_string())?;
                match verify_ek_criterion(&map, 40) {
                    EkVerdict::Holds { exhaustive: true, checked } => subsets += checked,
                    other => return Err(format!("{g}, k={k}, l={l}: {other:?}")),
                }
                maps += 1;
            }
        }
    }
    Ok(format!("{maps} maps, {subsets} generator subsets, all exhaustive"))
}

fn cone_depth_formula() -> Verdict {
    let mut ideals: Vec<(String, MonomialIdeal)> =
        (3..=8).map(|n| (format!("P{n}"), MonomialIdeal::edge_ideal(&Graph::path(n).unwrap()))).collect();
    ideals.push(("K_{1,3}".into(), MonomialIdeal::edge_ideal(&Graph::star(4).unwrap())));
    let mut checks = 0;
    for (name, ideal) in &ideals {
        for c in verify_cone_depth_formula(ideal, GF2).unwrap() {
            expect(c.holds(), || format!("{name}, k={}: g_J {} vs formula {:?}", c.k, c.g_cone, c.predicted))?;
            checks += 1;
        }
    }
    // The cone over P3 is (x1x2, x2x3, x4) in four variables.
    let cone_gens = [0b110u64, 0b1100, 1 << 4];
    let p3 = verify_cone_depth_formula(&ideals[0].1, GF2).unwrap();
    let values: Vec<i64> = p3.iter().map(|c| c.g_cone).collect();
    let ind: Vec<i64> = (1..=2).map(|k| independent::normalized_depth(4, &cone_gens, k).unwrap()).collect();
    expect(values == [1, 0] && ind == [1, 0], || format!("cone over P3: g_J = {values:?}, independent {ind:?}"))?;
    Ok(format!("{checks} (ideal, k) pairs; cone over P3 has g_J = [1, 0]"))
}

/// Admissibility of `M` in `G` depends only on `G[V(M)]`, so it suffices to
/// range over every graph on `2m` vertices containing the perfect matching
/// `{1,2}, {3,4}, ...`; a matching in a graph on at most 8 vertices has
/// `m <= 4` edges.
fn admissibility_fast_path_matches_brute_force() -> Verdict {
    let mut cases = 0u64;
    for m in 1..=4usize {
        let n = 2 * m;
        let matching: Vec<(usize, usize)> = (0..m).map(|i| (2 * i + 1, 2 * i + 2)).collect();
        let free: Vec<(usize, usize)> = (1..=n)
            .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
            .filter(|&(u, v)| !(u % 2 == 1 && v == u + 1))
            .collect();
        let mm = Matching::new(matching.iter().copied()).unwrap();
        let mut edges = Vec::with_capacity(matching.len() + free.len());
        for mask in 0u64..1 << free.len() {
            edges.clear();
            edges.extend_from_slice(&matching);
            edges.extend(free.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e));
            let g = Graph::from_edges(n, &edges).unwrap();
            for k in 1..=4 {
                let fast = is_k_admissible_matching(&g, &mm, k);
                let slow = brute_force_admissible(&g, &mm, k).unwrap();
                if fast.is_some() != slow.is_some() || fast.as_ref().is_some_and(|c| !c.is_valid_for(&g)) {
                    return Err(format!("{g}, M={mm}, k={k}: fast {:?}, brute force {:?}", fast, slow));
                }
                cases += 1;
            }
        }
    }
    // The literal sweep on small graphs: every labelled graph on 5 vertices and
    // every one of its matchings.
    let mut literal = 0u64;
    let pairs: Vec<(usize, usize)> = (1..=5).flat_map(|u| (u + 1..=5).map(move |v| (u, v))).collect();
    for mask in 0u64..1 << pairs.len() {
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        let g = Graph::from_edges(5, &edges).unwrap();
        for size in 1..=g.matching_number() {
            for mm in g.k_matchings(size) {
                for k in 1..=4 {
                    let fast = is_k_admissible_matching(&g, &mm, k).is_some();
                    let slow = brute_force_admissible(&g, &mm, k).unwrap().is_some();
                    expect(fast == slow, || format!("{g}, M={mm}, k={k}: fast {fast}, brute force {slow}"))?;
                    literal += 1;
                }
            }
        }
    }
    Ok(format!("{cases} (G[V(M)], k) cases for |M| <= 4, plus {literal} literal cases on 5 vertices"))
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Verdict); 12] = [
        (1, "worked_forest_values", worked_forest_values),
        (2, "path_closed_form", path_closed_form),
        (3, "reg_equals_aim_plus_k", reg_equals_aim_plus_k),
        (4, "distant_edge_betti_splittings", distant_edge_betti_splittings),
        (5, "splitting_ideal_identities", splitting_ideal_identities),
        (6, "recursion_matches_oracle", recursion_matches_oracle),
        (7, "g_nonincreasing_and_zero_at_nu", g_nonincreasing_and_zero_at_nu),
        (8, "betti_tables_field_independent", betti_tables_field_independent),
        (9, "path_and_cycle_depths", path_and_cycle_depths),
        (10, "ek_criterion_canonical_maps", ek_criterion_canonical_maps),
        (11, "cone_depth_formula", cone_depth_formula),
        (12, "admissibility_fast_path_matches_brute_force", admissibility_fast_path_matches_brute_force),
    ];
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut unexpected = 0;
    for (id, name, run) in criteria {
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let verdict = run();
        let secs = start.elapsed().as_secs_f64();
        let known = KNOWN_RED.iter().find(|(k, _)| *k == id).map(|(_, why)| *why);
        match (&verdict, known) {
            (Ok(detail), None) => println!("PASS {id:>2} {name} ({secs:.1}s): {detail}"),
            (Err(detail), None) => {
                unexpected += 1;
                println!("FAIL {id:>2} {name} ({secs:.1}s): {detail}");
            }
            (Err(detail), Some(why)) => {
                println!("FAIL {id:>2} {name} ({secs:.1}s): {detail}");
                println!("     known: {why}");
            }
            (Ok(detail), Some(_)) => {
                unexpected += 1;
                println!("PASS {id:>2} {name} ({secs:.1}s): {detail}");
                println!("     listed as known-failing but passed; update KNOWN_RED");
            }
        }
    }
    if unexpected == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
