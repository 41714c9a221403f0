//! Reduced simplicial homology with the augmentation map.

use std::collections::BTreeMap;

use super::rank::{rank, SparseColumn};
use super::FieldSpec;

/// Dimensions of reduced homology of a complex on the vertices `0..w`, with
/// faces given as bitmasks. Entry `s` of the result is `dim H̃_{s-1}`; the void
/// complex yields an empty vector.
pub(crate) fn reduced_homology_local(faces: &[u32], w: usize, field: FieldSpec) -> Vec<u64> {
    if faces.is_empty() {
        return Vec::new();
    }
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); w + 1];
    let mut idx = vec![u32::MAX; 1 << w];
    for &f in faces {
        let s = f.count_ones() as usize;
        idx[f as usize] = by_size[s].len() as u32;
        by_size[s].push(f);
    }
    let top = by_size.iter().rposition(|v| !v.is_empty()).unwrap_or(0);
    // ranks[s]: rank of the boundary from faces of size s to size s - 1.
    let mut ranks = vec![0usize; top + 2];
    for s in 1..=top {
        if by_size[s].is_empty() || by_size[s - 1].is_empty() {
            continue;
        }
        let cols: Vec<SparseColumn> = by_size[s]
            .iter()
            .map(|&f| {
                let mut col = Vec::with_capacity(s);
                let mut bits = f;
                let mut j = 0;
                while bits != 0 {
                    let b = bits & bits.wrapping_neg();
                    bits ^= b;
                    let row = idx[(f ^ b) as usize];
                    debug_assert!(row != u32::MAX, "face set not closed under subsets");
                    col.push((row as usize, if j % 2 == 0 { 1 } else { -1 }));
                    j += 1;
                }
                col
            })
            .collect();
        ranks[s] = rank(field, by_size[s - 1].len(), &cols);
    }
    (0..=top)
        .map(|s| (by_size[s].len() - ranks[s] - ranks[s + 1]) as u64)
        .collect()
}

/// Nonzero reduced homology dimensions `d -> dim H̃_d` of the simplicial complex
/// generated by `faces` (every subset of a listed face is a face).
///
/// `[]` is the void complex (no homology at all); `[0]` is the irrelevant
/// complex `{∅}` with `H̃_{-1} = 1`.
pub fn reduced_homology_dims(faces: &[u64], field: FieldSpec) -> BTreeMap<i32, u64> {
    let support = faces.iter().fold(0u64, |m, &f| m | f);
    let verts: Vec<u32> = (0..64).filter(|&v| support >> v & 1 == 1).collect();
    let w = verts.len();
    assert!(w <= 24, "complex has {w} vertices; at most 24 are supported");
    let local = |f: u64| -> u32 {
        verts.iter().enumerate().filter(|(_, &v)| f >> v & 1 == 1).fold(0, |m, (i, _)| m | 1 << i)
    };
    let mut present = vec![false; 1 << w];
    let mut stack: Vec<u32> = faces.iter().map(|&f| local(f)).collect();
    while let Some(f) = stack.pop() {
        if present[f as usize] {
            continue;
        }
        present[f as usize] = true;
        let mut bits = f;
        while bits != 0 {
            let b = bits & bits.wrapping_neg();
            bits ^= b;
            stack.push(f ^ b);
        }
    }
    let closed: Vec<u32> = (0..1u32 << w).filter(|&f| present[f as usize]).collect();
    reduced_homology_local(&closed, w, field)
        .into_iter()
        .enumerate()
        .filter(|&(_, h)| h != 0)
        .map(|(s, h)| (s as i32 - 1, h))
        .collect()
}
