//! Graph collections used by the verification suites.

use std::collections::BTreeMap;

use crate::error::{input, Result};
use crate::graphs::{Graph, MAX_VERTICES};

/// One representative of every isomorphism class of forests on exactly `n`
/// vertices, isolated vertices included, sorted by edge count and then by
/// canonical form.
pub fn all_forests(n: usize) -> Result<Vec<Graph>> {
    if n == 0 || n > MAX_VERTICES {
        return input(format!("forest size {n} is outside 1..={MAX_VERTICES}"));
    }
    let mut level = vec![Graph::empty(1)?];
    for m in 2..=n {
        let mut next: BTreeMap<(usize, String), Graph> = BTreeMap::new();
        for g in &level {
            let mut edges = g.edges();
            let grown = Graph::from_edges(m, &edges)?;
            next.entry(key(&grown)).or_insert(grown);
            for v in 1..m {
                edges.push((v, m));
                let grown = Graph::from_edges(m, &edges)?;
                edges.pop();
                next.entry(key(&grown)).or_insert(grown);
            }
        }
        level = next.into_values().collect();
    }
    Ok(level)
}

fn key(g: &Graph) -> (usize, String) {
    (g.edge_count(), g.forest_canonical_form().expect("growing a forest by a leaf keeps it a forest"))
}

/// `all_forests(n)` for every `n` in `1..=n_max`.
pub fn forest_corpus(n_max: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        out.extend(all_forests(n)?);
    }
    Ok(out)
}

/// Brooms with `handle + bristles ≤ n_max`, at least one bristle and a
/// handle of two or more vertices; `broom(h, 1)` is the path `P_{h+1}`.
pub fn brooms(n_max: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 3..=n_max {
        for handle in 2..n {
            out.push(Graph::broom(handle, n - handle)?);
        }
    }
    Ok(out)
}

/// Seeded random forests; seed `s` gives a forest on `2 + s % (n_max - 1)`
/// vertices.
pub fn random_forest_corpus(seeds: u64, n_max: usize) -> Result<Vec<Graph>> {
    if n_max < 2 {
        return input("random corpus needs n_max >= 2");
    }
    (0..seeds).map(|s| Graph::random_forest(2 + (s % (n_max as u64 - 1)) as usize, s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forest_counts() {
        // Unlabelled forests on n vertices: 1, 2, 3, 6, 10, 20, 37, 76, 153, 329.
        let counts: Vec<usize> = (1..=10).map(|n| all_forests(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 6, 10, 20, 37, 76, 153, 329]);
        assert!(all_forests(6).unwrap().iter().all(|g| g.is_forest() && g.n() == 6));
    }

    #[test]
    fn other_collections() {
        let b = brooms(5).unwrap();
        assert_eq!(b.len(), 1 + 2 + 3);
        assert!(b.iter().all(|g| g.is_forest() && g.is_connected()));
        let r = random_forest_corpus(20, 9).unwrap();
        assert_eq!(r.len(), 20);
        assert!(r.iter().all(|g| g.is_forest() && (2..=9).contains(&g.n())));
        assert!(all_forests(0).is_err());
    }
}
