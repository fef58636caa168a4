//! Finite groups as dense Cayley tables.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::perm;

/// A finite group on the carrier `0..n` with a validated Cayley table.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FiniteGroup {
    n: usize,
    /// `mul[a*n + b] = a * b`
    mul: Vec<usize>,
    e: usize,
    inv: Vec<usize>,
}

impl FiniteGroup {
    /// Validates associativity, identity and inverses; reports the first
    /// failure in lexicographic order.
    pub fn new(n: usize, mul: Vec<usize>) -> Result<Self, Error> {
        if mul.len() != n * n {
            return Err(Error::Shape { expected: n * n, found: mul.len() });
        }
        for (i, &v) in mul.iter().enumerate() {
            if v >= n {
                return Err(Error::Range { index: i, value: v, n });
            }
        }
        let at = |a: usize, b: usize| mul[a * n + b];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(Error::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or(Error::NoIdentity)?;
        let mut inv = vec![usize::MAX; n];
        for x in 0..n {
            inv[x] = (0..n)
                .find(|&y| at(x, y) == e && at(y, x) == e)
                .ok_or(Error::NoInverse { x })?;
        }
        Ok(FiniteGroup { n, mul, e, inv })
    }

    pub fn from_nested(mul: &[Vec<usize>]) -> Result<Self, Error> {
        let n = mul.len();
        let mut flat = Vec::with_capacity(n * n);
        for row in mul {
            if row.len() != n {
                return Err(Error::Shape { expected: n, found: row.len() });
            }
            flat.extend_from_slice(row);
        }
        Self::new(n, flat)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.e
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn table(&self) -> &[usize] {
        &self.mul
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (a..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Every element squares to the identity.
    pub fn is_two_torsion(&self) -> bool {
        (0..self.n).all(|a| self.mul(a, a) == self.e)
    }

    /// Relabels the carrier by the permutation `p`.
    pub fn relabel(&self, p: &[usize]) -> FiniteGroup {
        let n = self.n;
        let pinv = perm::invert(p);
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = p[self.mul(pinv[a], pinv[b])];
            }
        }
        let e = p[self.e];
        let mut inv = vec![0; n];
        for x in 0..n {
            inv[x] = p[self.inv[pinv[x]]];
        }
        FiniteGroup { n, mul, e, inv }
    }

    /// Lexicographically minimal Cayley table over relabelings that put the
    /// identity at index 0. Two groups are isomorphic iff their canonical
    /// tables coincide.
    pub fn canonical_table(&self) -> Vec<usize> {
        let n = self.n;
        let mut best: Option<Vec<usize>> = None;
        let mut p = perm::identity(n);
        loop {
            if p[self.e] == 0 {
                let cand = self.relabel(&p).mul;
                if best.as_ref().map_or(true, |b| cand < *b) {
                    best = Some(cand);
                }
            }
            if !perm::next_permutation(&mut p) {
                break;
            }
        }
        best.unwrap()
    }

    pub fn is_isomorphic_to(&self, other: &FiniteGroup) -> bool {
        self.n == other.n && self.canonical_table() == other.canonical_table()
    }

    /// Conjugacy classes, each sorted, ordered by minimal element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut classes = Vec::new();
        for x in 0..self.n {
            if seen[x] {
                continue;
            }
            let mut class: Vec<usize> = (0..self.n)
                .map(|g| self.mul(self.mul(self.inv(g), x), g))
                .collect();
            class.sort();
            class.dedup();
            for &y in &class {
                seen[y] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Closure of a subset under multiplication (and hence inverses, the
    /// group being finite).
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut in_set = vec![false; self.n];
        in_set[self.e] = true;
        let mut frontier: Vec<usize> = Vec::new();
        for &g in gens {
            if !in_set[g] {
                in_set[g] = true;
                frontier.push(g);
            }
        }
        let mut members: Vec<usize> = (0..self.n).filter(|&x| in_set[x]).collect();
        while let Some(g) = frontier.pop() {
            let snapshot = members.clone();
            for &h in &snapshot {
                for v in [self.mul(g, h), self.mul(h, g)] {
                    if !in_set[v] {
                        in_set[v] = true;
                        members.push(v);
                        frontier.push(v);
                    }
                }
            }
        }
        members.sort();
        members
    }

    /// A minimal-size generating set, found by increasing subset size.
    pub fn minimal_generating_set(&self) -> Vec<usize> {
        if self.n == 1 {
            return Vec::new();
        }
        let candidates: Vec<usize> = (0..self.n).filter(|&x| x != self.e).collect();
        for size in 1..=candidates.len() {
            let mut idx: Vec<usize> = (0..size).collect();
            loop {
                let gens: Vec<usize> = idx.iter().map(|&i| candidates[i]).collect();
                if self.closure(&gens).len() == self.n {
                    return gens;
                }
                if !next_combination(&mut idx, candidates.len()) {
                    break;
                }
            }
        }
        unreachable!("the whole carrier generates the group");
    }

    /// All automorphisms as image vectors, lexicographically sorted.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let gens = self.minimal_generating_set();
        if gens.is_empty() {
            return vec![vec![0]];
        }
        let mut out = Vec::new();
        let mut images = vec![usize::MAX; gens.len()];
        self.automorphism_rec(&gens, &mut images, 0, &mut out);
        out.sort();
        out
    }

    fn automorphism_rec(
        &self,
        gens: &[usize],
        images: &mut Vec<usize>,
        depth: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if depth == gens.len() {
            if let Some(map) = self.extend_homomorphism(gens, images) {
                if perm::is_permutation(&map) {
                    out.push(map);
                }
            }
            return;
        }
        for v in 0..self.n {
            images[depth] = v;
            self.automorphism_rec(gens, images, depth + 1, out);
        }
        images[depth] = usize::MAX;
    }

    /// Extends generator images to a homomorphism by building words, or
    /// reports inconsistency.
    pub fn extend_homomorphism(&self, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.n];
        map[self.e] = self.e;
        for (&g, &img) in gens.iter().zip(images) {
            if map[g] != usize::MAX && map[g] != img {
                return None;
            }
            map[g] = img;
        }
        // close under multiplication by generators on both sides
        let mut changed = true;
        while changed {
            changed = false;
            for x in 0..self.n {
                if map[x] == usize::MAX {
                    continue;
                }
                for (&g, &img) in gens.iter().zip(images) {
                    let y = self.mul(x, g);
                    let fy = self.mul(map[x], img);
                    if map[y] == usize::MAX {
                        map[y] = fy;
                        changed = true;
                    } else if map[y] != fy {
                        return None;
                    }
                }
            }
        }
        if map.iter().any(|&v| v == usize::MAX) {
            return None;
        }
        // full homomorphism property
        for a in 0..self.n {
            for b in 0..self.n {
                if map[self.mul(a, b)] != self.mul(map[a], map[b]) {
                    return None;
                }
            }
        }
        Some(map)
    }
}

/// Advances `idx` to the next size-`k` combination of `0..m`; false at the
/// last one.
fn next_combination(idx: &mut [usize], m: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < m - (k - i) {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Builders for the standard small groups used in tests and sweeps.
pub mod builders {
    use super::*;

    pub fn cyclic(n: usize) -> FiniteGroup {
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = (a + b) % n;
            }
        }
        FiniteGroup::new(n, mul).expect("cyclic group")
    }

    /// Direct product, lexicographic carrier order.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
        let n = g.n() * h.n();
        let hn = h.n();
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let (a1, a2) = (a / hn, a % hn);
                let (b1, b2) = (b / hn, b % hn);
                mul[a * n + b] = g.mul(a1, b1) * hn + h.mul(a2, b2);
            }
        }
        FiniteGroup::new(n, mul).expect("direct product")
    }

    /// Symmetric group on `m` letters, elements indexed by lexicographic
    /// rank of the permutation; index 0 is the identity.
    pub fn symmetric(m: usize) -> FiniteGroup {
        let perms = perm::all_permutations(m);
        let rank = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
        let n = perms.len();
        let mut mul = vec![0; n * n];
        for (a, pa) in perms.iter().enumerate() {
            for (b, pb) in perms.iter().enumerate() {
                // product = apply a first, then b
                mul[a * n + b] = rank(&perm::compose(pb, pa));
            }
        }
        FiniteGroup::new(n, mul).expect("symmetric group")
    }

    /// Dihedral group of order `2m`: indices `0..m` rotations, `m..2m`
    /// reflections.
    pub fn dihedral(m: usize) -> FiniteGroup {
        let n = 2 * m;
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let (ra, fa) = (a % m, a >= m);
                let (rb, fb) = (b % m, b >= m);
                let rot = if fb { (rb + m - ra) % m } else { (ra + rb) % m };
                let refl = fa ^ fb;
                mul[a * n + b] = rot + if refl { m } else { 0 };
            }
        }
        FiniteGroup::new(n, mul).expect("dihedral group")
    }

    /// Quaternion group of order 8: 1, -1, i, -i, j, -j, k, -k.
    pub fn quaternion() -> FiniteGroup {
        // encode x as (sign, axis) with axis in {1, i, j, k}
        let enc = |sign: usize, axis: usize| axis * 2 + sign;
        let n = 8;
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let (sa, xa) = (a % 2, a / 2);
                let (sb, xb) = (b % 2, b / 2);
                // multiplication table of {1, i, j, k} with sign of product
                let (axis, extra_sign) = match (xa, xb) {
                    (0, y) => (y, 0),
                    (x, 0) => (x, 0),
                    (x, y) if x == y => (0, 1),
                    (1, 2) => (3, 0),
                    (2, 1) => (3, 1),
                    (2, 3) => (1, 0),
                    (3, 2) => (1, 1),
                    (3, 1) => (2, 0),
                    (1, 3) => (2, 1),
                    _ => unreachable!(),
                };
                mul[a * n + b] = enc((sa + sb + extra_sign) % 2, axis);
            }
        }
        FiniteGroup::new(n, mul).expect("quaternion group")
    }
}
