//! A second, deliberately naive depth computation used to cross-check the
//! library: squarefree powers by brute force and projective dimension from
//! Hochster's formula over GF(2), summed over every vertex subset.
//!
//! Monomials are bitmasks with bit `v` standing for `x_v`, as in the library,
//! but nothing here calls library code.

#![allow(dead_code)]

pub fn edge_gens(edges: &[(usize, usize)]) -> Vec<u64> {
    edges.iter().map(|&(u, v)| 1u64 << u | 1u64 << v).collect()
}

fn minimalize(mut gens: Vec<u64>) -> Vec<u64> {
    gens.sort_unstable_by_key(|g| (g.count_ones(), *g));
    gens.dedup();
    let mut out: Vec<u64> = Vec::new();
    for g in gens {
        if !out.iter().any(|&h| h & g == h) {
            out.push(g);
        }
    }
    out
}

/// Minimal generators of `I^[k]`: products of `k` generators with pairwise
/// disjoint supports.
pub fn squarefree_power(gens: &[u64], k: usize) -> Vec<u64> {
    fn go(gens: &[u64], start: usize, k: usize, acc: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..gens.len() {
            if gens[i] & acc == 0 {
                go(gens, i + 1, k - 1, acc | gens[i], out);
            }
        }
    }
    let mut out = Vec::new();
    go(gens, 0, k, 0, &mut out);
    minimalize(out)
}

fn gf2_rank(mut rows: Vec<Vec<u64>>) -> usize {
    let mut rank = 0;
    let width = rows.first().map_or(0, |r| r.len() * 64);
    for col in 0..width {
        let (w, b) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & b != 0) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for r in 0..rows.len() {
            if r != rank && rows[r][w] & b != 0 {
                for (x, y) in rows[r].iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Reduced homology of the complex `faces` (closed under subsets); entry
/// `s` is `dim H̃_{s-1}` over GF(2).
fn reduced_homology(faces: &[u64]) -> Vec<usize> {
    let top = faces.iter().map(|f| f.count_ones() as usize).max().unwrap_or(0);
    let by_size: Vec<Vec<u64>> =
        (0..=top).map(|s| faces.iter().copied().filter(|f| f.count_ones() as usize == s).collect()).collect();
    let mut ranks = vec![0usize; top + 2];
    for s in 1..=top {
        let lower = &by_size[s - 1];
        let words = lower.len().div_ceil(64).max(1);
        let rows: Vec<Vec<u64>> = by_size[s]
            .iter()
            .map(|&f| {
                let mut row = vec![0u64; words];
                for (i, &l) in lower.iter().enumerate() {
                    if l & f == l {
                        row[i / 64] |= 1 << (i % 64);
                    }
                }
                row
            })
            .collect();
        ranks[s] = gf2_rank(rows);
    }
    (0..=top).map(|s| by_size[s].len() - ranks[s] - ranks[s + 1]).collect()
}

/// `depth S/I` in `n` variables (`x_1..x_n`) for a nonzero proper ideal.
pub fn depth(n: usize, gens: &[u64]) -> usize {
    let mut projdim = 0;
    for w in 1u64..1 << n {
        let w = w << 1;
        if !gens.iter().any(|&g| g & w == g) {
            continue;
        }
        // Faces of the Stanley-Reisner complex restricted to W.
        let verts: Vec<u64> = (1..=n).map(|v| 1u64 << v).filter(|b| w & b != 0).collect();
        let faces: Vec<u64> = (0u64..1 << verts.len())
            .map(|sel| verts.iter().enumerate().filter(|(i, _)| sel >> i & 1 == 1).fold(0, |m, (_, b)| m | b))
            .filter(|&f| !gens.iter().any(|&g| g & f == g))
            .collect();
        for (s, &h) in reduced_homology(&faces).iter().enumerate() {
            // β_{i,W}(I) = dim H̃_{|W|-i-2}, and H̃_{s-1} gives i = |W| - s - 1.
            if h > 0 {
                projdim = projdim.max(verts.len() - s - 1);
            }
        }
    }
    n - projdim - 1
}

/// `depth(S/I^[k]) - (d_k - 1)`, or `None` when `I^[k] = 0`.
pub fn normalized_depth(n: usize, gens: &[u64], k: usize) -> Option<i64> {
    let p = squarefree_power(gens, k);
    let d = p.iter().map(|g| g.count_ones()).min()? as i64;
    Some(depth(n, &p) as i64 - (d - 1))
}
