//! Exhaustive, deterministic enumeration of the finite structures the rest
//! of the crate reasons about: solutions, reflections, groups, skew braces,
//! group reflections, and the counterexample hunt for composed reflections.
//!
//! Every enumerator returns a canonically sorted list, so output never
//! depends on traversal order. Searches that would materialise more than a
//! gate's worth of states refuse to run instead of thrashing.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::brace::{
    braiding_from_skewbrace, check_group_reflection, BraidedGroup, SkewBrace,
};
use crate::error::Error;
use crate::group::FiniteGroup;
use crate::map::{FiniteMap, Side};
use crate::perm;
use crate::solution::{check_reflection, k_derived, k_derived_unchecked, BraidedSet};

/// Largest carrier for the unconstrained solution sweep.
pub const MAX_UNCONSTRAINED_SOLUTION_ORDER: usize = 3;
/// Largest carrier for the non-degenerate solution sweep.
pub const MAX_NONDEGENERATE_SOLUTION_ORDER: usize = 4;
/// Largest order for group, skew-brace and group-reflection enumeration.
pub const MAX_GROUP_ORDER: usize = 8;
/// Default gate for `n^n` reflection sweeps (covers carriers up to 8).
pub const DEFAULT_REFLECTION_SWEEP_GATE: usize = 16_777_216;

/// Which properties the enumerated solutions must have.
#[derive(Debug, Clone, Copy, Default)]
pub struct SolutionConstraints {
    pub nondegenerate: bool,
    pub involutive: bool,
    pub up_to_iso: bool,
}

/// Partially assigned action tables with lazy triple checking.
struct PartialSolution {
    n: usize,
    sigma: Vec<Option<usize>>,
    rho: Vec<Option<usize>>,
}

impl PartialSolution {
    fn new(n: usize) -> Self {
        PartialSolution { n, sigma: vec![None; n * n], rho: vec![None; n * n] }
    }

    #[inline]
    fn sig(&self, a: usize, b: usize) -> Option<usize> {
        self.sigma[a * self.n + b]
    }

    #[inline]
    fn rh(&self, b: usize, a: usize) -> Option<usize> {
        self.rho[b * self.n + a]
    }

    /// False when some fully determined component equation fails.
    fn consistent(&self, involutive: bool) -> bool {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    // (1): (a->b) -> ((a<-b)->c) = a -> (b->c)
                    if let (Some(ab), Some(ba)) = (self.sig(a, b), self.rh(b, a)) {
                        if let Some(inner) = self.sig(ba, c) {
                            if let (Some(l), Some(bc)) = (self.sig(ab, inner), self.sig(b, c)) {
                                if let Some(r) = self.sig(a, bc) {
                                    if l != r {
                                        return false;
                                    }
                                }
                            }
                        }
                    }
                    // (2): (a->b) <- ((a<-b)->c) = (a <- (b->c)) -> (b<-c)
                    if let (Some(ab), Some(ba), Some(bc), Some(cb)) =
                        (self.sig(a, b), self.rh(b, a), self.sig(b, c), self.rh(c, b))
                    {
                        if let Some(inner) = self.sig(ba, c) {
                            if let (Some(l), Some(abc)) = (self.rh(inner, ab), self.rh(bc, a)) {
                                if let Some(r) = self.sig(abc, cb) {
                                    if l != r {
                                        return false;
                                    }
                                }
                            }
                        }
                    }
                    // (3): (a<-b) <- c = (a <- (b->c)) <- (b<-c)
                    if let (Some(ba), Some(bc), Some(cb)) =
                        (self.rh(b, a), self.sig(b, c), self.rh(c, b))
                    {
                        if let (Some(l), Some(abc)) = (self.rh(c, ba), self.rh(bc, a)) {
                            if let Some(r) = self.rh(cb, abc) {
                                if l != r {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
        if involutive {
            for a in 0..n {
                for b in 0..n {
                    if let (Some(x), Some(y)) = (self.sig(a, b), self.rh(b, a)) {
                        if let (Some(xx), Some(yy)) = (self.sig(x, y), self.rh(y, x)) {
                            if (xx, yy) != (a, b) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn freeze(&self) -> BraidedSet {
        let sigma = self.sigma.iter().map(|v| v.unwrap()).collect();
        let rho = self.rho.iter().map(|v| v.unwrap()).collect();
        BraidedSet::without_ybe_check(self.n, sigma, rho).expect("tables in range")
    }
}

/// Enumerates all solutions on `0..n` under the given constraints; sorted by
/// table, optionally reduced modulo relabeling.
pub fn enumerate_solutions(
    n: usize,
    constraints: SolutionConstraints,
    ) -> Result<Vec<BraidedSet>, Error> {
    let bound = if constraints.nondegenerate {
        MAX_NONDEGENERATE_SOLUTION_ORDER
    } else {
        MAX_UNCONSTRAINED_SOLUTION_ORDER
    };
    if n > bound {
        return Err(Error::SizeLimitExceeded { needed: n, gate: bound });
    }
    let mut found: Vec<BraidedSet> = Vec::new();
    if n == 0 {
        return Ok(found);
    }
    if constraints.nondegenerate {
        let perms = perm::all_permutations(n);
        // Slots alternate sigma-row / rho-row per carrier point.
        let mut partial = PartialSolution::new(n);
        fn rec(
            slot: usize,
            n: usize,
            perms: &[Vec<usize>],
            partial: &mut PartialSolution,
            constraints: &SolutionConstraints,
            found: &mut Vec<BraidedSet>,
        ) {
            if slot == 2 * n {
                let bs = partial.freeze();
                if bs.first_ybe_violation().is_none() {
                    found.push(bs);
                }
                return;
            }
            let point = slot / 2;
            let is_sigma = slot % 2 == 0;
            for p in perms {
                for b in 0..n {
                    if is_sigma {
                        partial.sigma[point * n + b] = Some(p[b]);
                    } else {
                        partial.rho[point * n + b] = Some(p[b]);
                    }
                }
                if partial.consistent(constraints.involutive) {
                    rec(slot + 1, n, perms, partial, constraints, found);
                }
            }
            for b in 0..n {
                if is_sigma {
                    partial.sigma[point * n + b] = None;
                } else {
                    partial.rho[point * n + b] = None;
                }
            }
        }
        rec(0, n, &perms, &mut partial, &constraints, &mut found);
    } else {
        // Cell-by-cell over the full map r(a, b); cells ordered so small
        // sub-squares complete first and trip the triple checks early.
        let mut cells: Vec<(usize, usize)> =
            (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
        cells.sort_by_key(|&(a, b)| (a.max(b), a, b));
        let mut partial = PartialSolution::new(n);
        fn rec(
            idx: usize,
            cells: &[(usize, usize)],
            n: usize,
            partial: &mut PartialSolution,
            constraints: &SolutionConstraints,
            found: &mut Vec<BraidedSet>,
        ) {
            if idx == cells.len() {
                let bs = partial.freeze();
                if bs.first_ybe_violation().is_none() {
                    found.push(bs);
                }
                return;
            }
            let (a, b) = cells[idx];
            for x in 0..n {
                for y in 0..n {
                    partial.sigma[a * n + b] = Some(x);
                    partial.rho[b * n + a] = Some(y);
                    if partial.consistent(constraints.involutive) {
                        rec(idx + 1, cells, n, partial, constraints, found);
                    }
                }
            }
            partial.sigma[a * n + b] = None;
            partial.rho[b * n + a] = None;
        }
        rec(0, &cells, n, &mut partial, &constraints, &mut found);
    }
    if constraints.involutive {
        found.retain(|bs| bs.flags().involutive);
    }
    if constraints.nondegenerate {
        found.retain(|bs| {
            let f = bs.flags();
            f.left_nondegenerate && f.right_nondegenerate
        });
    }
    if constraints.up_to_iso {
        let mut seen = BTreeSet::new();
        found.retain(|bs| seen.insert(bs.canonical_form().lex_key()));
    }
    found.sort_by_key(|bs| bs.lex_key());
    Ok(found)
}

/// All maps satisfying the chosen-side reflection equation, by backtracking
/// over values with incremental checks. Always contains the identity.
pub fn enumerate_reflections(
    bs: &BraidedSet,
    side: Side,
    gate: usize,
) -> Result<Vec<FiniteMap>, Error> {
    let n = bs.n();
    let states = n.checked_pow(n as u32).unwrap_or(usize::MAX);
    if states > gate {
        return Err(Error::SizeLimitExceeded { needed: states, gate });
    }
    let mut img: Vec<Option<usize>> = vec![None; n];
    let mut out = Vec::new();

    fn partial_ok(bs: &BraidedSet, img: &[Option<usize>], side: Side) -> bool {
        let k = |x: usize| img[x];
        let n = bs.n();
        for a in 0..n {
            for b in 0..n {
                match side {
                    Side::Right => {
                        let ab = bs.sigma(a, b);
                        let ba = bs.rho(b, a);
                        if let (Some(kb), Some(kba)) = (k(b), k(ba)) {
                            let bka = bs.rho(kb, a);
                            if let Some(kbka) = k(bka) {
                                let akb = bs.sigma(a, kb);
                                if bs.sigma(ab, kba) != bs.sigma(akb, kbka) {
                                    return false;
                                }
                                if let Some(klhs) = k(bs.rho(kba, ab)) {
                                    if klhs != bs.rho(kbka, akb) {
                                        return false;
                                    }
                                }
                            }
                        }
                    }
                    Side::Left => {
                        let x = bs.sigma(a, b);
                        let y = bs.rho(b, a);
                        if let (Some(kx), Some(ka)) = (k(x), k(a)) {
                            let p = bs.sigma(ka, b);
                            let q = bs.rho(b, ka);
                            if let Some(kp) = k(p) {
                                if let Some(kl) = k(bs.sigma(kx, y)) {
                                    if kl != bs.sigma(kp, q) {
                                        return false;
                                    }
                                }
                                if bs.rho(y, kx) != bs.rho(q, kp) {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn rec(
        bs: &BraidedSet,
        img: &mut Vec<Option<usize>>,
        pos: usize,
        side: Side,
        out: &mut Vec<FiniteMap>,
    ) {
        let n = bs.n();
        if pos == n {
            let k = FiniteMap::new(img.iter().map(|v| v.unwrap()).collect()).unwrap();
            if check_reflection(bs, &k, side).holds {
                out.push(k);
            }
            return;
        }
        for v in 0..n {
            img[pos] = Some(v);
            if partial_ok(bs, img, side) {
                rec(bs, img, pos + 1, side, out);
            }
        }
        img[pos] = None;
    }

    rec(bs, &mut img, 0, side, &mut out);
    out.sort();
    debug_assert!(out.contains(&FiniteMap::identity(n)) || n == 0);
    Ok(out)
}

/// Partially assigned Cayley table used by the group backtracker.
struct PartialTable {
    n: usize,
    mul: Vec<Option<usize>>,
    row_used: Vec<Vec<bool>>,
    col_used: Vec<Vec<bool>>,
}

impl PartialTable {
    fn new(n: usize) -> Self {
        let mut t = PartialTable {
            n,
            mul: vec![None; n * n],
            row_used: vec![vec![false; n]; n],
            col_used: vec![vec![false; n]; n],
        };
        for x in 0..n {
            t.set(0, x, x);
            if x != 0 {
                t.set(x, 0, x);
            }
        }
        t
    }

    #[inline]
    fn get(&self, a: usize, b: usize) -> Option<usize> {
        self.mul[a * self.n + b]
    }

    fn set(&mut self, a: usize, b: usize, v: usize) {
        self.mul[a * self.n + b] = Some(v);
        self.row_used[a][v] = true;
        self.col_used[b][v] = true;
    }

    fn unset(&mut self, a: usize, b: usize, v: usize) {
        self.mul[a * self.n + b] = None;
        self.row_used[a][v] = false;
        self.col_used[b][v] = false;
    }

    /// All fully determined associativity instances hold.
    fn assoc_ok(&self) -> bool {
        let n = self.n;
        for x in 1..n {
            for y in 1..n {
                let Some(xy) = self.get(x, y) else { continue };
                for z in 1..n {
                    if let (Some(l), Some(yz)) = (self.get(xy, z), self.get(y, z)) {
                        if let Some(r) = self.get(x, yz) {
                            if l != r {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }
}

/// All groups of order `n` up to isomorphism, by Cayley-table backtracking
/// with identity pinned at 0, Latin-square masks, and associativity checks
/// on every determined triple.
pub fn enumerate_groups(n: usize) -> Result<Vec<FiniteGroup>, Error> {
    if n > MAX_GROUP_ORDER {
        return Err(Error::SizeLimitExceeded { needed: n, gate: MAX_GROUP_ORDER });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut table = PartialTable::new(n);
    let mut raw: Vec<FiniteGroup> = Vec::new();
    fn rec(t: &mut PartialTable, a: usize, b: usize, raw: &mut Vec<FiniteGroup>) {
        let n = t.n;
        if a == n {
            let mul: Vec<usize> = t.mul.iter().map(|v| v.unwrap()).collect();
            if let Ok(g) = FiniteGroup::new(n, mul) {
                raw.push(g);
            }
            return;
        }
        let (na, nb) = if b + 1 == n { (a + 1, 1) } else { (a, b + 1) };
        if t.get(a, b).is_some() {
            rec(t, na, nb, raw);
            return;
        }
        for v in 0..n {
            if t.row_used[a][v] || t.col_used[b][v] {
                continue;
            }
            t.set(a, b, v);
            if t.assoc_ok() {
                rec(t, na, nb, raw);
            }
            t.unset(a, b, v);
        }
    }
    rec(&mut table, 1, 1, &mut raw);
    let mut seen = BTreeSet::new();
    let mut out: Vec<FiniteGroup> = Vec::new();
    for g in raw {
        if seen.insert(g.canonical_table()) {
            out.push(g);
        }
    }
    out.sort_by_key(|g| g.canonical_table());
    Ok(out)
}

/// Strategy for skew-brace enumeration; the two must agree, which the test
/// suites exploit as a cross-validation oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BraceStrategy {
    /// Regular subgroups of the holomorph of each additive group.
    Holomorph,
    /// Row-wise backtracking over multiplicative tables under the brace
    /// axiom, with associativity propagation.
    Direct,
}

/// All skew braces of order `n` up to isomorphism, canonically sorted.
pub fn enumerate_skew_braces(n: usize, strategy: BraceStrategy) -> Result<Vec<SkewBrace>, Error> {
    if n > MAX_GROUP_ORDER {
        return Err(Error::SizeLimitExceeded { needed: n, gate: MAX_GROUP_ORDER });
    }
    let mut all: Vec<SkewBrace> = Vec::new();
    for add in enumerate_groups(n)? {
        let per_group = match strategy {
            BraceStrategy::Holomorph => braces_over_additive_holomorph(&add),
            BraceStrategy::Direct => braces_over_additive_direct(&add),
        };
        all.extend(per_group);
    }
    let mut seen = BTreeSet::new();
    let mut out: Vec<SkewBrace> = Vec::new();
    for sb in all {
        if seen.insert(sb.canonical_key()) {
            out.push(sb);
        }
    }
    out.sort_by_key(|sb| sb.canonical_key());
    Ok(out)
}

/// Skew braces with the given additive group, one per isomorphism class of
/// the enumeration strategy's raw output (deduplication happens later).
pub fn braces_over_additive_holomorph(add: &FiniteGroup) -> Vec<SkewBrace> {
    let n = add.n();
    let zero = add.identity();
    let auts = add.automorphisms();
    // Holomorph elements with a prescribed image of zero.
    let hol_with_image = |a: usize| -> Vec<Vec<usize>> {
        auts.iter()
            .map(|phi| (0..n).map(|x| add.mul(a, phi[x])).collect())
            .collect()
    };
    let identity: Vec<usize> = (0..n).collect();

    // Closure of a set of permutations under composition, pruned to regular
    // subgroup candidates: at most n elements, trivial stabiliser of zero.
    fn close(
        base: &BTreeSet<Vec<usize>>,
        extra: &[usize],
        n: usize,
        zero: usize,
    ) -> Option<BTreeSet<Vec<usize>>> {
        let mut set = base.clone();
        let mut frontier: Vec<Vec<usize>> = vec![extra.to_vec()];
        if set.insert(extra.to_vec()) {
            while let Some(g) = frontier.pop() {
                let members: Vec<Vec<usize>> = set.iter().cloned().collect();
                for h in members {
                    for prod in [perm::compose(&g, &h), perm::compose(&h, &g)] {
                        if !set.contains(&prod) {
                            if prod[zero] == zero && prod.iter().enumerate().any(|(i, &v)| v != i)
                            {
                                return None; // non-identity stabiliser
                            }
                            if set.len() + 1 > n {
                                return None;
                            }
                            set.insert(prod.clone());
                            frontier.push(prod);
                        }
                    }
                }
            }
        }
        Some(set)
    }

    fn rec(
        current: &BTreeSet<Vec<usize>>,
        add: &FiniteGroup,
        hol_with_image: &dyn Fn(usize) -> Vec<Vec<usize>>,
        zero: usize,
        seen: &mut BTreeSet<Vec<Vec<usize>>>,
        found: &mut Vec<Vec<Vec<usize>>>,
    ) {
        let n = add.n();
        let key: Vec<Vec<usize>> = current.iter().cloned().collect();
        if !seen.insert(key.clone()) {
            return;
        }
        if current.len() == n {
            found.push(key);
            return;
        }
        let orbit: BTreeSet<usize> = current.iter().map(|h| h[zero]).collect();
        let Some(a) = (0..n).find(|x| !orbit.contains(x)) else {
            return;
        };
        for g in hol_with_image(a) {
            if let Some(next) = close(current, &g, n, zero) {
                rec(&next, add, hol_with_image, zero, seen, found);
            }
        }
    }

    let mut base = BTreeSet::new();
    base.insert(identity);
    let mut seen = BTreeSet::new();
    let mut found = Vec::new();
    rec(&base, add, &hol_with_image, zero, &mut seen, &mut found);

    let mut out = Vec::new();
    for subgroup in found {
        // regular: one element per image of zero
        let mut mul = vec![0usize; n * n];
        for h in &subgroup {
            let a = h[zero];
            for b in 0..n {
                mul[a * n + b] = h[b];
            }
        }
        let Ok(mul) = FiniteGroup::new(n, mul) else {
            continue;
        };
        if let Ok(sb) = SkewBrace::new(add.clone(), mul) {
            out.push(sb);
        }
    }
    out
}

/// Direct strategy: rows of the multiplicative table are forced by the brace
/// axiom to be translates of additive endomorphisms; backtrack over rows
/// with associativity propagation and validate the full axioms at the end.
pub fn braces_over_additive_direct(add: &FiniteGroup) -> Vec<SkewBrace> {
    let n = add.n();
    let zero = add.identity();
    // Candidate rows per element a: bijections row with row(zero) = a and
    // row(b + c) = row(b) - a + row(c). Generated from images of additive
    // generators, independently of the automorphism machinery.
    let gens = if n == 1 { vec![] } else { add.minimal_generating_set() };
    let row_candidates = |a: usize| -> Vec<Vec<usize>> {
        if n == 1 {
            return vec![vec![zero]];
        }
        let mut out = Vec::new();
        let mut images = vec![0usize; gens.len()];
        loop {
            // extend from row(zero) = a by row(b+g) = row(b) - a + row(g)
            let mut row = vec![usize::MAX; n];
            row[zero] = a;
            for (&g, &img) in gens.iter().zip(&images) {
                row[g] = img;
            }
            let mut ok = gens.iter().zip(&images).all(|(&g, &img)| row[g] == img);
            'grow: while ok {
                let mut changed = false;
                for b in 0..n {
                    if row[b] == usize::MAX {
                        continue;
                    }
                    for (&g, &img) in gens.iter().zip(&images) {
                        let tgt = add.mul(b, g);
                        let val = add.mul(add.mul(row[b], add.inv(a)), img);
                        if row[tgt] == usize::MAX {
                            row[tgt] = val;
                            changed = true;
                        } else if row[tgt] != val {
                            ok = false;
                            break 'grow;
                        }
                    }
                }
                if !changed {
                    break;
                }
            }
            if ok && row.iter().all(|&v| v != usize::MAX) && perm::is_permutation(&row) {
                // full brace-row property
                let brace_row = (0..n).all(|b| {
                    (0..n).all(|c| {
                        row[add.mul(b, c)] == add.mul(add.mul(row[b], add.inv(a)), row[c])
                    })
                });
                if brace_row && !out.contains(&row) {
                    out.push(row);
                }
            }
            // odometer
            let mut i = 0;
            loop {
                if i == images.len() {
                    return out;
                }
                images[i] += 1;
                if images[i] < n {
                    break;
                }
                images[i] = 0;
                i += 1;
            }
        }
    };

    let mut candidates: Vec<Vec<Vec<usize>>> = Vec::with_capacity(n);
    for a in 0..n {
        candidates.push(row_candidates(a));
    }

    #[derive(Clone)]
    struct State {
        rows: Vec<Option<Vec<usize>>>,
    }

    fn propagate(st: &mut State, add: &FiniteGroup, zero: usize) -> bool {
        // row_{x*y} = row_x o row_y whenever both factors are known
        let n = add.n();
        loop {
            let mut changed = false;
            for x in 0..n {
                let Some(rx) = st.rows[x].clone() else { continue };
                for y in 0..n {
                    let Some(ry) = st.rows[y].clone() else { continue };
                    let z = rx[y]; // x * y = row_x(y)
                    let forced: Vec<usize> = (0..n).map(|w| rx[ry[w]]).collect();
                    match &st.rows[z] {
                        Some(rz) => {
                            if *rz != forced {
                                return false;
                            }
                        }
                        None => {
                            if forced[zero] != z || !perm::is_permutation(&forced) {
                                return false;
                            }
                            st.rows[z] = Some(forced);
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn rec(
        st: &State,
        add: &FiniteGroup,
        candidates: &[Vec<Vec<usize>>],
        zero: usize,
        out: &mut Vec<SkewBrace>,
    ) {
        let n = add.n();
        let Some(a) = (0..n).find(|&a| st.rows[a].is_none()) else {
            let mut mul = vec![0usize; n * n];
            for a in 0..n {
                let row = st.rows[a].as_ref().unwrap();
                for b in 0..n {
                    mul[a * n + b] = row[b];
                }
            }
            let Ok(mul) = FiniteGroup::new(n, mul) else { return };
            if let Ok(sb) = SkewBrace::new(add.clone(), mul) {
                out.push(sb);
            }
            return;
        };
        for row in &candidates[a] {
            let mut next = st.clone();
            next.rows[a] = Some(row.clone());
            if propagate(&mut next, add, zero) {
                rec(&next, add, candidates, zero, out);
            }
        }
    }

    let mut st = State { rows: vec![None; n] };
    let identity_row: Vec<usize> = (0..n).collect();
    st.rows[zero] = Some(identity_row);
    let mut out = Vec::new();
    rec(&st, add, &candidates, zero, &mut out);
    out
}

/// All group reflections of a braided group: seed values on a minimal
/// generating set, extend by the product rule to a fixpoint (branching on
/// any value the rule leaves free), then verify all axioms.
pub fn enumerate_group_reflections(bg: &BraidedGroup) -> Result<Vec<FiniteMap>, Error> {
    let n = bg.n();
    if n > MAX_GROUP_ORDER {
        return Err(Error::SizeLimitExceeded { needed: n, gate: MAX_GROUP_ORDER });
    }
    let e = bg.grp.identity();
    let gens = if n == 1 { vec![] } else { bg.grp.minimal_generating_set() };

    fn propagate(bg: &BraidedGroup, img: &mut Vec<Option<usize>>) -> bool {
        let n = bg.n();
        loop {
            let mut changed = false;
            for a in 0..n {
                for b in 0..n {
                    let Some(kb) = img[b] else { continue };
                    let arg = bg.bs.rho(kb, a);
                    let Some(karg) = img[arg] else { continue };
                    let val = bg.grp.mul(bg.bs.sigma(a, kb), karg);
                    let tgt = bg.grp.mul(a, b);
                    match img[tgt] {
                        Some(v) => {
                            if v != val {
                                return false;
                            }
                        }
                        None => {
                            img[tgt] = Some(val);
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn complete(
        bg: &BraidedGroup,
        img: &mut Vec<Option<usize>>,
        out: &mut Vec<FiniteMap>,
    ) {
        let n = bg.n();
        if !propagate(bg, img) {
            return;
        }
        match (0..n).find(|&x| img[x].is_none()) {
            None => {
                let k = FiniteMap::new(img.iter().map(|v| v.unwrap()).collect()).unwrap();
                if check_group_reflection(bg, &k).is_group_reflection() {
                    out.push(k);
                }
            }
            Some(x) => {
                for v in 0..n {
                    let mut next = img.clone();
                    next[x] = Some(v);
                    complete(bg, &mut next, out);
                }
            }
        }
    }

    let mut out = Vec::new();
    let mut seeds = vec![0usize; gens.len()];
    loop {
        // generators are distinct non-identity elements, so seeding is
        // conflict-free
        let mut img: Vec<Option<usize>> = vec![None; n];
        img[e] = Some(e);
        for (&g, &v) in gens.iter().zip(&seeds) {
            img[g] = Some(v);
        }
        complete(bg, &mut img, &mut out);
        let mut i = 0;
        loop {
            if i == seeds.len() {
                out.sort();
                out.dedup();
                return Ok(out);
            }
            seeds[i] += 1;
            if seeds[i] < n {
                break;
            }
            seeds[i] = 0;
            i += 1;
        }
    }
}

/// Group reflections of the braided group of a skew brace.
pub fn enumerate_group_reflections_of_brace(sb: &SkewBrace) -> Result<Vec<FiniteMap>, Error> {
    let bg = braiding_from_skewbrace(sb)?;
    enumerate_group_reflections(&bg)
}

/// One failed composition candidate: the canonical `ell` built from group
/// reflections `k` and `h` is not itself a group reflection somewhere.
#[derive(Debug, Clone)]
pub struct EllCounterexample {
    pub order: usize,
    /// Position of the skew brace in the canonical enumeration of its order.
    pub brace_index: usize,
    pub k: FiniteMap,
    pub h: FiniteMap,
    pub k_bijective: bool,
    /// `ell` fails to be a group reflection for the original braided group.
    pub fails_for_base: bool,
    /// `ell` fails to be a group reflection for the twisted braided group.
    pub fails_for_twisted: bool,
    /// Set-level reflection status, for the record.
    pub set_level_base: bool,
    pub set_level_twisted: bool,
    pub ell: FiniteMap,
}

/// Scans one skew brace for composition-candidate failures.
pub fn ell_counterexamples_for_brace(
    order: usize,
    brace_index: usize,
    sb: &SkewBrace,
    require_bijective_k: bool,
) -> Result<Vec<EllCounterexample>, Error> {
    let bg = braiding_from_skewbrace(sb)?;
    let mut out = Vec::new();
    for k in enumerate_group_reflections(&bg)? {
        if require_bijective_k && !k.is_bijective() {
            continue;
        }
        let twisted = crate::group_twist::twisted_braided_group(&bg, &k)?;
        for h in enumerate_group_reflections(&twisted.twisted)? {
            let n = bg.n();
            let img: Vec<usize> = (0..n)
                .map(|a| {
                    let ka = k.apply(a);
                    let kha = k.apply(h.apply(a));
                    bg.grp.mul(bg.grp.mul(ka, bg.grp.inv(kha)), h.apply(a))
                })
                .collect();
            let ell = FiniteMap::new(img)?;
            let twice = k_derived(&twisted.twisted.bs, &h)?;
            let once = k_derived_unchecked(&bg.bs, &ell)?;
            assert_eq!(once, twice, "ell candidate must reproduce the double twist");
            let base_ok = check_group_reflection(&bg, &ell).is_group_reflection();
            let twisted_ok =
                check_group_reflection(&twisted.twisted, &ell).is_group_reflection();
            if !base_ok || !twisted_ok {
                out.push(EllCounterexample {
                    order,
                    brace_index,
                    k: k.clone(),
                    h,
                    k_bijective: k.is_bijective(),
                    fails_for_base: !base_ok,
                    fails_for_twisted: !twisted_ok,
                    set_level_base: check_reflection(&bg.bs, &ell, Side::Right).holds,
                    set_level_twisted: check_reflection(&twisted.twisted.bs, &ell, Side::Right)
                        .holds,
                    ell,
                });
            }
        }
    }
    Ok(out)
}

/// Hunts for composition-candidate failures over all skew braces of the
/// given orders. Output is deterministic: braces are visited in canonical
/// order and reflections in sorted order.
pub fn find_ell_counterexamples(
    orders: core::ops::RangeInclusive<usize>,
    require_bijective_k: bool,
) -> Result<Vec<EllCounterexample>, Error> {
    let mut out = Vec::new();
    for order in orders {
        for (idx, sb) in enumerate_skew_braces(order, BraceStrategy::Holomorph)?
            .iter()
            .enumerate()
        {
            out.extend(ell_counterexamples_for_brace(order, idx, sb, require_bijective_k)?);
        }
    }
    Ok(out)
}
