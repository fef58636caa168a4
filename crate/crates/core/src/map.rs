//! Self-maps of the carrier, of its square, and of its cube.
//!
//! All three are dense tables over flattened indices. A pair `(a, b)` on a
//! carrier of size `n` is flattened as `a*n + b`, a triple `(a, b, c)` as
//! `a*n*n + b*n + c`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::perm;

/// Which wall a reflection bounces off.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A self-map of the carrier `0..n`, not necessarily bijective.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteMap {
    img: Vec<usize>,
}

impl FiniteMap {
    pub fn new(img: Vec<usize>) -> Result<Self, Error> {
        let n = img.len();
        for (i, &v) in img.iter().enumerate() {
            if v >= n {
                return Err(Error::Range { index: i, value: v, n });
            }
        }
        Ok(FiniteMap { img })
    }

    pub fn identity(n: usize) -> Self {
        FiniteMap { img: perm::identity(n) }
    }

    pub fn constant(n: usize, c: usize) -> Self {
        FiniteMap { img: vec![c; n] }
    }

    pub fn n(&self) -> usize {
        self.img.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.img[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.img
    }

    pub fn is_bijective(&self) -> bool {
        perm::is_permutation(&self.img)
    }
}

/// A map on `X x X`, stored as an `n^2`-entry table of flattened pairs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SquareMap {
    n: usize,
    tab: Vec<usize>,
}

impl SquareMap {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> (usize, usize)) -> Self {
        let mut tab = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let (c, d) = f(a, b);
                debug_assert!(c < n && d < n);
                tab.push(c * n + d);
            }
        }
        SquareMap { n, tab }
    }

    pub fn from_table(n: usize, tab: Vec<usize>) -> Result<Self, Error> {
        if tab.len() != n * n {
            return Err(Error::Shape { expected: n * n, found: tab.len() });
        }
        for (i, &v) in tab.iter().enumerate() {
            if v >= n * n {
                return Err(Error::Range { index: i, value: v, n: n * n });
            }
        }
        Ok(SquareMap { n, tab })
    }

    pub fn identity(n: usize) -> Self {
        SquareMap { n, tab: (0..n * n).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn apply_flat(&self, code: usize) -> usize {
        self.tab[code]
    }

    #[inline]
    pub fn apply(&self, a: usize, b: usize) -> (usize, usize) {
        let v = self.tab[a * self.n + b];
        (v / self.n, v % self.n)
    }

    pub fn table(&self) -> &[usize] {
        &self.tab
    }

    pub fn is_bijective(&self) -> bool {
        perm::is_permutation(&self.tab)
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &SquareMap) -> SquareMap {
        debug_assert_eq!(self.n, other.n);
        SquareMap { n: self.n, tab: other.tab.iter().map(|&v| self.tab[v]).collect() }
    }

    pub fn inverse(&self) -> Result<SquareMap, Error> {
        if !self.is_bijective() {
            return Err(Error::NotBijective { what: "square map" });
        }
        Ok(SquareMap { n: self.n, tab: perm::invert(&self.tab) })
    }
}

/// A map on `X x X x X`, stored as an `n^3`-entry table of flattened triples.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CubeMap {
    n: usize,
    tab: Vec<usize>,
}

pub(crate) fn flatten3(n: usize, a: usize, b: usize, c: usize) -> usize {
    (a * n + b) * n + c
}

pub(crate) fn unflatten3(n: usize, code: usize) -> (usize, usize, usize) {
    (code / (n * n), (code / n) % n, code % n)
}

impl CubeMap {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize) -> (usize, usize, usize)) -> Self {
        let mut tab = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (x, y, z) = f(a, b, c);
                    debug_assert!(x < n && y < n && z < n);
                    tab.push(flatten3(n, x, y, z));
                }
            }
        }
        CubeMap { n, tab }
    }

    pub fn from_table(n: usize, tab: Vec<usize>) -> Result<Self, Error> {
        let len = n * n * n;
        if tab.len() != len {
            return Err(Error::Shape { expected: len, found: tab.len() });
        }
        for (i, &v) in tab.iter().enumerate() {
            if v >= len {
                return Err(Error::Range { index: i, value: v, n: len });
            }
        }
        Ok(CubeMap { n, tab })
    }

    pub fn identity(n: usize) -> Self {
        CubeMap { n, tab: (0..n * n * n).collect() }
    }

    /// The square map acting on the first two legs: `(a,b,c) -> (F(a,b), c)`.
    pub fn on_first_legs(f: &SquareMap) -> Self {
        let n = f.n();
        CubeMap::from_fn(n, |a, b, c| {
            let (x, y) = f.apply(a, b);
            (x, y, c)
        })
    }

    /// The square map acting on the last two legs: `(a,b,c) -> (a, F(b,c))`.
    pub fn on_last_legs(f: &SquareMap) -> Self {
        let n = f.n();
        CubeMap::from_fn(n, |a, b, c| {
            let (x, y) = f.apply(b, c);
            (a, x, y)
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn apply_flat(&self, code: usize) -> usize {
        self.tab[code]
    }

    pub fn apply(&self, a: usize, b: usize, c: usize) -> (usize, usize, usize) {
        unflatten3(self.n, self.tab[flatten3(self.n, a, b, c)])
    }

    pub fn table(&self) -> &[usize] {
        &self.tab
    }

    pub fn is_bijective(&self) -> bool {
        perm::is_permutation(&self.tab)
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &CubeMap) -> CubeMap {
        debug_assert_eq!(self.n, other.n);
        CubeMap { n: self.n, tab: other.tab.iter().map(|&v| self.tab[v]).collect() }
    }

    pub fn inverse(&self) -> Result<CubeMap, Error> {
        if !self.is_bijective() {
            return Err(Error::NotBijective { what: "cube map" });
        }
        Ok(CubeMap { n: self.n, tab: perm::invert(&self.tab) })
    }
}

/// All bijections `A` of `0..m` with `A(u_i(x)) = v_i(A(x))` for every
/// constraint pair `(u_i, v_i)` and every point `x`, optionally restricted so
/// that `A(x)` lies in `candidates[x]`.
///
/// This is the workhorse behind the conjugator search and the constrained
/// twist-data searches: assigning one image propagates along the orbit
/// structure of the constraints, which prunes the factorial search space to
/// nothing on the sizes we care about. The `u_i` need not be bijective.
///
/// Results are sorted lexicographically, so output is deterministic.
pub fn intertwiners(
    m: usize,
    constraints: &[(Vec<usize>, Vec<usize>)],
    candidates: Option<&[Vec<usize>]>,
) -> Vec<Vec<usize>> {
    #[derive(Clone)]
    struct State {
        img: Vec<Option<usize>>,
        used: Vec<bool>,
    }

    fn assign(
        st: &mut State,
        constraints: &[(Vec<usize>, Vec<usize>)],
        x: usize,
        v: usize,
    ) -> bool {
        // Propagate a single assignment to closure under all constraints.
        let mut queue = vec![(x, v)];
        while let Some((x, v)) = queue.pop() {
            match st.img[x] {
                Some(old) => {
                    if old != v {
                        return false;
                    }
                    continue;
                }
                None => {
                    if st.used[v] {
                        return false;
                    }
                    st.img[x] = Some(v);
                    st.used[v] = true;
                }
            }
            for (u, w) in constraints {
                queue.push((u[x], w[v]));
            }
        }
        true
    }

    fn rec(
        st: &State,
        m: usize,
        constraints: &[(Vec<usize>, Vec<usize>)],
        candidates: Option<&[Vec<usize>]>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let Some(x) = (0..m).find(|&x| st.img[x].is_none()) else {
            out.push(st.img.iter().map(|v| v.unwrap()).collect());
            return;
        };
        let values: Vec<usize> = match candidates {
            Some(cs) => cs[x].clone(),
            None => (0..m).collect(),
        };
        for v in values {
            if st.used[v] {
                continue;
            }
            let mut next = st.clone();
            if assign(&mut next, constraints, x, v) {
                rec(&next, m, constraints, candidates, out);
            }
        }
    }

    let mut st = State { img: vec![None; m], used: vec![false; m] };
    // Images restricted to a single candidate can be committed up front.
    if let Some(cs) = candidates {
        for x in 0..m {
            if cs[x].len() == 1 && st.img[x].is_none() {
                if !assign(&mut st, constraints, x, cs[x][0]) {
                    return Vec::new();
                }
            }
        }
        // Check pre-propagated images against their candidate lists.
        for x in 0..m {
            if let Some(v) = st.img[x] {
                if !cs[x].contains(&v) {
                    return Vec::new();
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(&st, m, constraints, candidates, &mut out);
    out.sort();
    out
}
