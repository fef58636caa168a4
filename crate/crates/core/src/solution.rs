//! Braided sets (finite Yang–Baxter solutions), reflections, guitar maps,
//! and derived solutions.
//!
//! A solution is `r(a, b) = (sigma[a][b], rho[b][a])`; in action notation the
//! first component is the left action `a -> b` of `a` on `b`, the second the
//! right action `a <- b` of `b` on `a`. The componentwise Yang–Baxter
//! equation is
//!
//! ```text
//! (1)  (a->b) -> ((a<-b)->c)  =  a -> (b->c)
//! (2)  (a->b) <- ((a<-b)->c)  =  (a <- (b->c)) -> (b<-c)
//! (3)  (a<-b) <- c            =  (a <- (b->c)) <- (b<-c)
//! ```
//!
//! and the right reflection equation for `k: X -> X` is
//!
//! ```text
//! (1)  (a->b) -> k(a<-b)      =  (a->k(b)) -> k(a<-k(b))
//! (2)  k((a->b) <- k(a<-b))   =  (a->k(b)) <- k(a<-k(b))
//! ```

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::map::{FiniteMap, Side, SquareMap};
use crate::perm;

/// Cached structural properties of a braided set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolutionFlags {
    pub ybe_holds: bool,
    pub invertible: bool,
    pub involutive: bool,
    pub left_nondegenerate: bool,
    pub right_nondegenerate: bool,
}

/// A finite braided set: carrier `0..n` with action tables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BraidedSet {
    n: usize,
    /// `sigma[a*n + b] = a -> b`
    sigma: Vec<usize>,
    /// `rho[b*n + a] = a <- b` (acting element first, so rows are the actions)
    rho: Vec<usize>,
}

/// Outcome of a total check, carrying the first witness on failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReflectionCheck {
    pub holds: bool,
    /// `(component, a, b)` of the first failing pair in lexicographic order.
    pub witness: Option<(u8, usize, usize)>,
}

fn check_tables(n: usize, sigma: &[usize], rho: &[usize]) -> Result<(), Error> {
    if sigma.len() != n * n {
        return Err(Error::Shape { expected: n * n, found: sigma.len() });
    }
    if rho.len() != n * n {
        return Err(Error::Shape { expected: n * n, found: rho.len() });
    }
    for (i, &v) in sigma.iter().chain(rho.iter()).enumerate() {
        if v >= n {
            return Err(Error::Range { index: i % (n * n), value: v, n });
        }
    }
    Ok(())
}

impl BraidedSet {
    /// Validates the tables and the Yang–Baxter equation; rejects with the
    /// first violating triple otherwise.
    pub fn new(n: usize, sigma: Vec<usize>, rho: Vec<usize>) -> Result<Self, Error> {
        let bs = Self::without_ybe_check(n, sigma, rho)?;
        if let Some((comp, a, b, c)) = bs.first_ybe_violation() {
            return Err(Error::YbeViolation { a, b, c, component: comp });
        }
        Ok(bs)
    }

    /// Builds the tables without requiring the Yang–Baxter equation.
    /// Consumers can interrogate `flags().ybe_holds`.
    pub fn without_ybe_check(n: usize, sigma: Vec<usize>, rho: Vec<usize>) -> Result<Self, Error> {
        check_tables(n, &sigma, &rho)?;
        Ok(BraidedSet { n, sigma, rho })
    }

    pub fn from_nested(sigma: &[Vec<usize>], rho: &[Vec<usize>]) -> Result<Self, Error> {
        let n = sigma.len();
        if rho.len() != n {
            return Err(Error::Shape { expected: n, found: rho.len() });
        }
        let mut fs = Vec::with_capacity(n * n);
        let mut fr = Vec::with_capacity(n * n);
        for row in sigma {
            if row.len() != n {
                return Err(Error::Shape { expected: n, found: row.len() });
            }
            fs.extend_from_slice(row);
        }
        for row in rho {
            if row.len() != n {
                return Err(Error::Shape { expected: n, found: row.len() });
            }
            fr.extend_from_slice(row);
        }
        Self::new(n, fs, fr)
    }

    /// Reads the action tables back out of the full map on `X x X`.
    pub fn from_square_map(map: &SquareMap) -> Self {
        let n = map.n();
        let mut sigma = vec![0; n * n];
        let mut rho = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let (x, y) = map.apply(a, b);
                sigma[a * n + b] = x;
                rho[b * n + a] = y;
            }
        }
        BraidedSet { n, sigma, rho }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `a -> b`
    #[inline]
    pub fn sigma(&self, a: usize, b: usize) -> usize {
        self.sigma[a * self.n + b]
    }

    /// `a <- b`
    #[inline]
    pub fn rho(&self, b: usize, a: usize) -> usize {
        self.rho[b * self.n + a]
    }

    #[inline]
    pub fn apply(&self, a: usize, b: usize) -> (usize, usize) {
        (self.sigma(a, b), self.rho(b, a))
    }

    pub fn sigma_table(&self) -> &[usize] {
        &self.sigma
    }

    pub fn rho_table(&self) -> &[usize] {
        &self.rho
    }

    pub fn sigma_row(&self, a: usize) -> &[usize] {
        &self.sigma[a * self.n..(a + 1) * self.n]
    }

    pub fn rho_row(&self, b: usize) -> &[usize] {
        &self.rho[b * self.n..(b + 1) * self.n]
    }

    /// Inverse of the right action of `b`, or an error when degenerate.
    pub fn rho_inverse_row(&self, b: usize) -> Result<Vec<usize>, Error> {
        let row = self.rho_row(b);
        if !perm::is_permutation(row) {
            return Err(Error::Degenerate { side: Side::Right, at: b });
        }
        Ok(perm::invert(row))
    }

    pub fn as_square_map(&self) -> SquareMap {
        SquareMap::from_fn(self.n, |a, b| self.apply(a, b))
    }

    /// First triple violating a Yang–Baxter component, lexicographically.
    pub fn first_ybe_violation(&self) -> Option<(u8, usize, usize, usize)> {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let ab = self.sigma(a, b); // a -> b
                    let ba = self.rho(b, a); // a <- b
                    let bc = self.sigma(b, c);
                    let cb = self.rho(c, b);
                    // (1): (a->b) -> ((a<-b)->c) = a -> (b->c)
                    if self.sigma(ab, self.sigma(ba, c)) != self.sigma(a, bc) {
                        return Some((1, a, b, c));
                    }
                    // (2): (a->b) <- ((a<-b)->c) = (a <- (b->c)) -> (b<-c)
                    if self.rho(self.sigma(ba, c), ab) != self.sigma(self.rho(bc, a), cb) {
                        return Some((2, a, b, c));
                    }
                    // (3): (a<-b) <- c = (a <- (b->c)) <- (b<-c)
                    if self.rho(c, ba) != self.rho(cb, self.rho(bc, a)) {
                        return Some((3, a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn flags(&self) -> SolutionFlags {
        let r = self.as_square_map();
        let invertible = r.is_bijective();
        let involutive = r.compose(&r) == SquareMap::identity(self.n);
        let left_nondegenerate = (0..self.n).all(|a| perm::is_permutation(self.sigma_row(a)));
        let right_nondegenerate = (0..self.n).all(|b| perm::is_permutation(self.rho_row(b)));
        SolutionFlags {
            ybe_holds: self.first_ybe_violation().is_none(),
            invertible,
            involutive,
            left_nondegenerate,
            right_nondegenerate,
        }
    }

    pub fn is_right_nondegenerate(&self) -> bool {
        (0..self.n).all(|b| perm::is_permutation(self.rho_row(b)))
    }

    pub fn is_left_nondegenerate(&self) -> bool {
        (0..self.n).all(|a| perm::is_permutation(self.sigma_row(a)))
    }

    /// Relabels the carrier by the permutation `p`: the solution
    /// `(p x p) r (p x p)^-1`.
    pub fn relabel(&self, p: &[usize]) -> BraidedSet {
        let n = self.n;
        let pinv = perm::invert(p);
        let mut sigma = vec![0; n * n];
        let mut rho = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                sigma[a * n + b] = p[self.sigma(pinv[a], pinv[b])];
                rho[b * n + a] = p[self.rho(pinv[b], pinv[a])];
            }
        }
        BraidedSet { n, sigma, rho }
    }

    /// Lexicographic key used for canonical ordering of solutions.
    pub fn lex_key(&self) -> (Vec<usize>, Vec<usize>) {
        (self.sigma.clone(), self.rho.clone())
    }

    /// Minimal relabeling of the solution over all carrier permutations.
    pub fn canonical_form(&self) -> BraidedSet {
        let mut best: Option<BraidedSet> = None;
        let mut p = perm::identity(self.n);
        loop {
            let cand = self.relabel(&p);
            if best.as_ref().map_or(true, |b| cand.lex_key() < b.lex_key()) {
                best = Some(cand);
            }
            if !perm::next_permutation(&mut p) {
                break;
            }
        }
        best.unwrap()
    }
}

/// The permutation solution `r(a, b) = (lambda(b), rho(a))` of two commuting
/// permutations.
pub fn permutation_solution(lambda: &FiniteMap, rho: &FiniteMap) -> Result<BraidedSet, Error> {
    if !lambda.is_bijective() {
        return Err(Error::NotBijective { what: "lambda" });
    }
    if !rho.is_bijective() {
        return Err(Error::NotBijective { what: "rho" });
    }
    if lambda.n() != rho.n() {
        return Err(Error::SizeMismatch { left: lambda.n(), right: rho.n() });
    }
    let n = lambda.n();
    for x in 0..n {
        if lambda.apply(rho.apply(x)) != rho.apply(lambda.apply(x)) {
            return Err(Error::NotCommuting { at: x });
        }
    }
    let mut sigma = vec![0; n * n];
    let mut rho_t = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            sigma[a * n + b] = lambda.apply(b);
            rho_t[b * n + a] = rho.apply(a);
        }
    }
    // Holds by construction, but run the full check anyway.
    BraidedSet::new(n, sigma, rho_t)
}

/// A set with a self-distributive binary operation `a < b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shelf {
    n: usize,
    /// `tri[a*n + b] = a < b`
    tri: Vec<usize>,
}

impl Shelf {
    pub fn new(n: usize, tri: Vec<usize>) -> Result<Self, Error> {
        if tri.len() != n * n {
            return Err(Error::Shape { expected: n * n, found: tri.len() });
        }
        for (i, &v) in tri.iter().enumerate() {
            if v >= n {
                return Err(Error::Range { index: i, value: v, n });
            }
        }
        let s = Shelf { n, tri };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if s.op(s.op(a, b), c) != s.op(s.op(a, c), s.op(b, c)) {
                        return Err(Error::ShelfViolation { a, b, c });
                    }
                }
            }
        }
        Ok(s)
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.tri[a * self.n + b]
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// A shelf is a rack when every right translation `- < b` is bijective.
    pub fn is_rack(&self) -> bool {
        (0..self.n).all(|b| {
            let col: Vec<usize> = (0..self.n).map(|a| self.op(a, b)).collect();
            perm::is_permutation(&col)
        })
    }
}

/// The solution `r(a, b) = (b, a < b)` of a shelf.
pub fn rack_solution(s: &Shelf) -> Result<BraidedSet, Error> {
    let n = s.n();
    let mut sigma = vec![0; n * n];
    let mut rho = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            sigma[a * n + b] = b;
            rho[b * n + a] = s.op(a, b);
        }
    }
    let bs = BraidedSet::new(n, sigma, rho)?;
    debug_assert_eq!(bs.is_right_nondegenerate(), s.is_rack());
    Ok(bs)
}

/// The derived solution `r'(a, b) = (((a <-inv b) -> b) <- a, a)`, where
/// `<-inv b` is the inverse of the right action of `b`.
pub fn derived_solution(bs: &BraidedSet) -> Result<BraidedSet, Error> {
    let n = bs.n();
    let mut rho_inv = Vec::with_capacity(n);
    for b in 0..n {
        rho_inv.push(bs.rho_inverse_row(b)?);
    }
    let mut sigma = vec![0; n * n];
    let mut rho = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            let w = rho_inv[b][a];
            sigma[a * n + b] = bs.rho(a, bs.sigma(w, b));
            rho[b * n + a] = a;
        }
    }
    BraidedSet::new(n, sigma, rho)
}

/// Checks the chosen-side reflection equation pointwise.
pub fn check_reflection(bs: &BraidedSet, k: &FiniteMap, side: Side) -> ReflectionCheck {
    debug_assert_eq!(bs.n(), k.n());
    let n = bs.n();
    for a in 0..n {
        for b in 0..n {
            match side {
                Side::Right => {
                    let ab = bs.sigma(a, b);
                    let ba = bs.rho(b, a);
                    let akb = bs.sigma(a, k.apply(b));
                    let bka = bs.rho(k.apply(b), a);
                    if bs.sigma(ab, k.apply(ba)) != bs.sigma(akb, k.apply(bka)) {
                        return ReflectionCheck { holds: false, witness: Some((1, a, b)) };
                    }
                    if k.apply(bs.rho(k.apply(ba), ab)) != bs.rho(k.apply(bka), akb) {
                        return ReflectionCheck { holds: false, witness: Some((2, a, b)) };
                    }
                }
                Side::Left => {
                    // k1 r k1 r = r k1 r k1 with k1 = k x id
                    let x = bs.sigma(a, b);
                    let y = bs.rho(b, a);
                    let p = bs.sigma(k.apply(a), b);
                    let q = bs.rho(b, k.apply(a));
                    if k.apply(bs.sigma(k.apply(x), y)) != bs.sigma(k.apply(p), q) {
                        return ReflectionCheck { holds: false, witness: Some((1, a, b)) };
                    }
                    if bs.rho(y, k.apply(x)) != bs.rho(q, k.apply(p)) {
                        return ReflectionCheck { holds: false, witness: Some((2, a, b)) };
                    }
                }
            }
        }
    }
    ReflectionCheck { holds: true, witness: None }
}

/// The guitar map `J(a, b) = (a <- k(b), b)` of a map `k`.
///
/// `J` is bijective exactly when the solution is right non-degenerate; no
/// reflection property is needed to form the table.
pub fn guitar_map(bs: &BraidedSet, k: &FiniteMap) -> SquareMap {
    SquareMap::from_fn(bs.n(), |a, b| (bs.rho(k.apply(b), a), b))
}

/// The twisted solution `J r J^-1` of an arbitrary map `k`, together with
/// the usual flags. Errors only when the right action is degenerate; the
/// result need not satisfy the Yang–Baxter equation when `k` is not a
/// reflection.
pub fn k_derived_unchecked(bs: &BraidedSet, k: &FiniteMap) -> Result<BraidedSet, Error> {
    let n = bs.n();
    let mut rho_inv = Vec::with_capacity(n);
    for b in 0..n {
        rho_inv.push(bs.rho_inverse_row(b)?);
    }
    // Conjugation route: J r J^-1.
    let j = guitar_map(bs, k);
    let j_inv = j.inverse().expect("right non-degeneracy makes J bijective");
    let conj = j.compose(&bs.as_square_map()).compose(&j_inv);
    // Closed-form route for the same map.
    let closed = SquareMap::from_fn(n, |a, b| {
        let w = rho_inv[k.apply(b)][a];
        let v = bs.rho(b, w);
        let u = bs.rho(k.apply(v), bs.sigma(w, b));
        (u, v)
    });
    assert_eq!(conj, closed, "guitar conjugation disagrees with the closed form");
    Ok(BraidedSet::from_square_map(&closed))
}

/// The `k`-derived solution of a right reflection `k`: conjugation by the
/// guitar map, cross-checked against the closed formula, then validated as a
/// solution.
pub fn k_derived(bs: &BraidedSet, k: &FiniteMap) -> Result<BraidedSet, Error> {
    let check = check_reflection(bs, k, Side::Right);
    if let Some((component, a, b)) = check.witness {
        return Err(Error::NotAReflection { a, b, component });
    }
    let out = k_derived_unchecked(bs, k)?;
    if let Some((comp, a, b, c)) = out.first_ybe_violation() {
        return Err(Error::YbeViolation { a, b, c, component: comp });
    }
    Ok(out)
}

/// Which way the composed right-translation `R_b` reads its middle term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MiddleTerm {
    /// `R_b = rho_{h(b)} rho_{k(h(b))}^-1 rho_{k(b)}`
    KAfterH,
    /// `R_b = rho_{h(b)} rho_{h(k(b))}^-1 rho_{k(b)}`
    HAfterK,
}

/// Closed form of the doubly twisted solution `(r^(k))^(h)`, evaluated from
/// the base tables only, with the middle term selected by `variant`.
#[derive(Debug, Clone)]
pub struct ComposedTwist {
    pub map: SquareMap,
    /// Whether the closed form agrees with the honest double guitar
    /// conjugation on every pair.
    pub matches_double_conjugation: bool,
}

fn reflection_err(check: ReflectionCheck) -> Error {
    let (component, a, b) = check.witness.expect("caller checked failure");
    Error::NotAReflection { a, b, component }
}

/// Evaluates the closed form of `(r^(k))^(h)` directly from the tables of the
/// base solution. `k` must be a reflection for the base solution and `h` one
/// for the `k`-derived solution.
pub fn composed_twist_explicit(
    bs: &BraidedSet,
    k: &FiniteMap,
    h: &FiniteMap,
    variant: MiddleTerm,
) -> Result<ComposedTwist, Error> {
    let n = bs.n();
    let first = k_derived(bs, k)?;
    let check_h = check_reflection(&first, h, Side::Right);
    if !check_h.holds {
        return Err(reflection_err(check_h));
    }
    let oracle = k_derived(&first, h)?;

    let mut rho_inv = Vec::with_capacity(n);
    for b in 0..n {
        rho_inv.push(bs.rho_inverse_row(b)?);
    }
    let middle = |b: usize| match variant {
        MiddleTerm::KAfterH => k.apply(h.apply(b)),
        MiddleTerm::HAfterK => h.apply(k.apply(b)),
    };
    // R_b = rho_{h(b)} o rho_{middle(b)}^-1 o rho_{k(b)}
    let apply_r = |b: usize, x: usize| {
        let step1 = bs.rho(k.apply(b), x);
        let step2 = rho_inv[middle(b)][step1];
        bs.rho(h.apply(b), step2)
    };
    let mut r_rows: Vec<Vec<usize>> = Vec::with_capacity(n);
    for b in 0..n {
        r_rows.push((0..n).map(|x| apply_r(b, x)).collect());
    }
    let mut r_rows_inv = Vec::with_capacity(n);
    for b in 0..n {
        if !perm::is_permutation(&r_rows[b]) {
            return Err(Error::Degenerate { side: Side::Right, at: b });
        }
        r_rows_inv.push(perm::invert(&r_rows[b]));
    }
    let map = SquareMap::from_fn(n, |a, b| {
        let w = r_rows_inv[b][a];
        let v = bs.rho(b, w);
        let u = r_rows[v][bs.sigma(w, b)];
        (u, v)
    });
    let matches = map == oracle.as_square_map();
    Ok(ComposedTwist { map, matches_double_conjugation: matches })
}

/// Whether `rho_{ell(b)} = rho_{h(b)} rho_{k(h(b))}^-1 rho_{k(b)}` holds for
/// all `b` — the row-level condition equivalent to the table equality
/// `r^(ell) = (r^(k))^(h)`.
pub fn composition_condition(
    bs: &BraidedSet,
    k: &FiniteMap,
    h: &FiniteMap,
    ell: &FiniteMap,
) -> Result<bool, Error> {
    let n = bs.n();
    let first = k_derived(bs, k)?;
    let check_h = check_reflection(&first, h, Side::Right);
    if !check_h.holds {
        return Err(reflection_err(check_h));
    }
    let mut rho_inv = Vec::with_capacity(n);
    for b in 0..n {
        rho_inv.push(bs.rho_inverse_row(b)?);
    }
    for b in 0..n {
        for x in 0..n {
            let rhs = bs.rho(h.apply(b), rho_inv[k.apply(h.apply(b))][bs.rho(k.apply(b), x)]);
            if bs.rho(ell.apply(b), x) != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `F r = s F` pointwise: `F` intertwines the two solutions.
pub fn check_d_homomorphism(
    src: &BraidedSet,
    dst: &BraidedSet,
    f: &SquareMap,
) -> Result<bool, Error> {
    if src.n() != dst.n() {
        return Err(Error::SizeMismatch { left: src.n(), right: dst.n() });
    }
    let fr = f.compose(&src.as_square_map());
    let sf = dst.as_square_map().compose(f);
    Ok(fr == sf)
}

/// Common small fixtures used throughout the test suites.
pub mod fixtures {
    use super::*;

    /// The flip `r(a, b) = (b, a)` on a carrier of size `n`.
    pub fn flip(n: usize) -> BraidedSet {
        let idm = FiniteMap::identity(n);
        permutation_solution(&idm, &idm).expect("flip is a solution")
    }

    /// The permutation solution on `Z_3` with `lambda = +1`, `rho = id`.
    pub fn p3() -> BraidedSet {
        let plus1 = FiniteMap::new(vec![1, 2, 0]).unwrap();
        permutation_solution(&plus1, &FiniteMap::identity(3)).expect("p3 is a solution")
    }

    /// The dihedral quandle on `Z_3`: `a < b = 2b - a mod 3`.
    pub fn dihedral_quandle_3() -> BraidedSet {
        let mut tri = vec![0; 9];
        for a in 0..3 {
            for b in 0..3 {
                tri[a * 3 + b] = (2 * b + 2 * a) % 3; // 2b - a = 2b + 2a mod 3
            }
        }
        let shelf = Shelf::new(3, tri).expect("dihedral quandle is a shelf");
        rack_solution(&shelf).expect("quandle solution")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::FiniteMap;

    #[test]
    fn flip_is_valid_and_fully_regular() {
        let bs = fixtures::flip(2);
        let flags = bs.flags();
        assert!(flags.ybe_holds);
        assert!(flags.invertible);
        assert!(flags.involutive);
        assert!(flags.left_nondegenerate);
        assert!(flags.right_nondegenerate);
        assert_eq!(bs.apply(0, 1), (1, 0));
    }

    #[test]
    fn p3_is_a_valid_permutation_solution() {
        let bs = fixtures::p3();
        let flags = bs.flags();
        assert!(flags.ybe_holds);
        assert!(!flags.involutive);
        assert_eq!(bs.apply(0, 0), (1, 0));
        assert_eq!(bs.apply(2, 1), (2, 2));
    }

    #[test]
    fn noncommuting_permutations_are_rejected() {
        // A transposition and a 3-cycle do not commute.
        let t = FiniteMap::new(vec![1, 0, 2]).unwrap();
        let c = FiniteMap::new(vec![1, 2, 0]).unwrap();
        assert!(matches!(permutation_solution(&t, &c), Err(Error::NotCommuting { .. })));
    }

    #[test]
    fn swap_and_plus_one_coincide_on_z2() {
        let swap = FiniteMap::new(vec![1, 0]).unwrap();
        let bs = permutation_solution(&swap, &swap).unwrap();
        assert!(bs.flags().ybe_holds);
    }

    /// Exhaustive oracle over all 256 table pairs on a 2-element set; the
    /// fixture below freezes its first failure.
    fn first_violating_pair_on_two_points() -> (Vec<usize>, Vec<usize>, Error) {
        for code in 0..256usize {
            let mut digits = [0usize; 8];
            let mut c = code;
            for d in digits.iter_mut().rev() {
                *d = c & 1;
                c >>= 1;
            }
            let sigma = digits[0..4].to_vec();
            let rho = digits[4..8].to_vec();
            if let Err(e @ Error::YbeViolation { .. }) =
                BraidedSet::new(2, sigma.clone(), rho.clone())
            {
                return (sigma, rho, e);
            }
        }
        panic!("scan found no violation");
    }

    #[test]
    fn frozen_ybe_violation_fixture_on_two_points() {
        let (sigma, rho, err) = first_violating_pair_on_two_points();
        // Frozen from the exhaustive scan in lexicographic order.
        assert_eq!(sigma, vec![0, 0, 0, 0]);
        assert_eq!(rho, vec![0, 0, 0, 1]);
        assert_eq!(err, Error::YbeViolation { a: 1, b: 1, c: 1, component: 3 });
        assert!(matches!(
            BraidedSet::new(2, sigma, rho),
            Err(Error::YbeViolation { a: 1, b: 1, c: 1, component: 3 })
        ));
    }

    #[test]
    fn shape_and_range_errors() {
        assert!(matches!(
            BraidedSet::new(2, vec![0, 1, 1], vec![0, 0, 1, 1]),
            Err(Error::Shape { .. })
        ));
        assert!(matches!(
            BraidedSet::new(2, vec![0, 1, 1, 2], vec![0, 0, 1, 1]),
            Err(Error::Range { .. })
        ));
    }

    #[test]
    fn trivial_shelf_yields_flip() {
        let tri = vec![0, 0, 1, 1]; // a < b = a
        let shelf = Shelf::new(2, tri).unwrap();
        assert!(shelf.is_rack());
        let bs = rack_solution(&shelf).unwrap();
        assert_eq!(bs, fixtures::flip(2));
    }

    #[test]
    fn dihedral_quandle_solution_is_non_involutive() {
        let bs = fixtures::dihedral_quandle_3();
        let flags = bs.flags();
        assert!(flags.ybe_holds);
        assert!(!flags.involutive);
        assert!(flags.right_nondegenerate);
    }

    #[test]
    fn shelf_violation_reports_witness() {
        // a < b = a + b mod 2 is not self-distributive.
        let tri = vec![0, 1, 1, 0];
        assert!(matches!(Shelf::new(2, tri), Err(Error::ShelfViolation { .. })));
    }

    #[test]
    fn derived_solution_of_flip_is_flip() {
        let bs = fixtures::flip(2);
        assert_eq!(derived_solution(&bs).unwrap(), bs);
    }

    #[test]
    fn derived_solution_of_p3_matches_identity_twist() {
        let bs = fixtures::p3();
        let derived = derived_solution(&bs).unwrap();
        let twisted = k_derived(&bs, &FiniteMap::identity(3)).unwrap();
        assert_eq!(derived, twisted);
        // rho = id makes the guitar map the identity, so the twist returns r.
        assert_eq!(derived, bs);
    }

    #[test]
    fn derived_solution_depends_only_on_the_product() {
        // lambda * rho fixed: all commuting factorizations give one derived
        // solution (here on Z_4, product = +2).
        let shift = |s: usize| {
            FiniteMap::new((0..4).map(|x| (x + s) % 4).collect()).unwrap()
        };
        let mut tables = Vec::new();
        for a in 0..4 {
            let b = (4 + 2 - a) % 4;
            let bs = permutation_solution(&shift(a), &shift(b)).unwrap();
            tables.push(derived_solution(&bs).unwrap());
        }
        for t in &tables[1..] {
            assert_eq!(*t, tables[0]);
        }
    }

    #[test]
    fn identity_is_always_a_right_reflection() {
        for bs in [fixtures::flip(2), fixtures::p3(), fixtures::dihedral_quandle_3()] {
            let k = FiniteMap::identity(bs.n());
            assert!(check_reflection(&bs, &k, Side::Right).holds);
        }
    }

    #[test]
    fn p3_reflections_are_the_shifts() {
        let bs = fixtures::p3();
        let plus1 = FiniteMap::new(vec![1, 2, 0]).unwrap();
        assert!(check_reflection(&bs, &plus1, Side::Right).holds);
        // A transposition does not commute with the 3-cycle: fails with witness.
        let t = FiniteMap::new(vec![1, 0, 2]).unwrap();
        let chk = check_reflection(&bs, &t, Side::Right);
        assert!(!chk.holds);
        assert_eq!(chk.witness, Some((2, 0, 0)));
    }

    #[test]
    fn guitar_map_of_p3_is_identity() {
        let bs = fixtures::p3();
        let plus1 = FiniteMap::new(vec![1, 2, 0]).unwrap();
        assert_eq!(guitar_map(&bs, &plus1), SquareMap::identity(3));
        assert_eq!(guitar_map(&fixtures::flip(2), &FiniteMap::identity(2)), SquareMap::identity(2));
    }

    #[test]
    fn k_derived_rejects_non_reflections() {
        let bs = fixtures::p3();
        let t = FiniteMap::new(vec![1, 0, 2]).unwrap();
        assert!(matches!(k_derived(&bs, &t), Err(Error::NotAReflection { .. })));
        // ... but the unchecked variant still produces the conjugated table.
        let forced = k_derived_unchecked(&bs, &t).unwrap();
        assert_eq!(forced, bs); // rho = id, so J = id regardless of k
    }

    #[test]
    fn degenerate_solutions_are_rejected_by_derivation() {
        // sigma = rho = constant 0 on two points satisfies the YBE but is
        // degenerate on both sides.
        let bs = BraidedSet::new(2, vec![0; 4], vec![0; 4]).unwrap();
        assert!(!bs.is_right_nondegenerate());
        assert!(matches!(derived_solution(&bs), Err(Error::Degenerate { .. })));
    }

    #[test]
    fn d_homomorphism_basics() {
        let bs = fixtures::p3();
        assert!(check_d_homomorphism(&bs, &bs, &SquareMap::identity(3)).unwrap());
        // The guitar map of a reflection intertwines r with r^(k).
        let plus1 = FiniteMap::new(vec![1, 2, 0]).unwrap();
        let j = guitar_map(&bs, &plus1);
        let twisted = k_derived(&bs, &plus1).unwrap();
        assert!(check_d_homomorphism(&bs, &twisted, &j).unwrap());
        let small = fixtures::flip(2);
        assert!(matches!(
            check_d_homomorphism(&bs, &small, &SquareMap::identity(3)),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn composed_twist_on_flip_is_flip() {
        let bs = fixtures::flip(2);
        let idm = FiniteMap::identity(2);
        let out = composed_twist_explicit(&bs, &idm, &idm, MiddleTerm::KAfterH).unwrap();
        assert!(out.matches_double_conjugation);
        assert_eq!(out.map, bs.as_square_map());
    }

    #[test]
    fn composition_condition_for_identities() {
        let bs = fixtures::flip(2);
        let idm = FiniteMap::identity(2);
        assert!(composition_condition(&bs, &idm, &idm, &idm).unwrap());
    }
}
