//! Permutations of `0..n` as index vectors.

use alloc::vec;
use alloc::vec::Vec;

/// True iff `img` hits every point of `0..img.len()` exactly once.
pub fn is_permutation(img: &[usize]) -> bool {
    let mut seen = vec![false; img.len()];
    for &v in img {
        if v >= img.len() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

/// Composition `f after g`, i.e. `x -> f[g[x]]`.
pub fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&x| f[x]).collect()
}

/// Inverse of a permutation. Caller must ensure `img` is one.
pub fn invert(img: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; img.len()];
    for (x, &v) in img.iter().enumerate() {
        inv[v] = x;
    }
    inv
}

pub fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = identity(n);
    loop {
        out.push(cur.clone());
        if !next_permutation(&mut cur) {
            return out;
        }
    }
}

/// Advances to the lexicographically next permutation; false at the last one.
pub fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
