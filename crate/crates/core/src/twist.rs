//! Set-theoretic Drinfeld twist data and the braid-representation view.
//!
//! A twist for a solution `r` is a triple of bijections `(F, Phi, Psi)` on
//! `X^2`, `X^3`, `X^3` with
//!
//! ```text
//! (i)   F_12 Psi = F_23 Phi
//! (ii)  Psi r_12 = r_12 Psi
//! (iii) Phi r_23 = r_23 Phi
//! ```
//!
//! in which case `F r F^-1` is again a solution. Twists compose and invert,
//! and a twist exists for a bijective `F` exactly when the two three-strand
//! braid representations built from `r` and `F r F^-1` are conjugate; the
//! searches below settle both questions exhaustively at small sizes.

use alloc::vec::Vec;

use crate::error::{Error, TwistAxiom};
use crate::map::{intertwiners, CubeMap, FiniteMap, SquareMap};
use crate::solution::{check_reflection, BraidedSet};
use crate::words::guitar_word;

/// Default domain gate for the exhaustive `X^3` searches: carriers of size
/// at most 3 (27 points).
pub const DEFAULT_CUBE_SEARCH_GATE: usize = 27;

/// A validated Drinfeld twist datum. Twisted solutions depend on `F` alone;
/// equality of data compares the full triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistDatum {
    pub f: SquareMap,
    pub phi: CubeMap,
    pub psi: CubeMap,
}

/// Pointwise outcome of checking a twist datum against a host solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistCheck {
    pub holds: bool,
    pub violation: Option<(TwistAxiom, (usize, usize, usize))>,
    /// Yang–Baxter status of `F r F^-1` (always true when the datum holds).
    pub twisted_ybe_holds: bool,
}

fn unflatten(n: usize, code: usize) -> (usize, usize, usize) {
    (code / (n * n), (code / n) % n, code % n)
}

/// The solution conjugated by a bijective square map, with no Yang–Baxter
/// requirement on the result.
pub fn twisted_solution(bs: &BraidedSet, f: &SquareMap) -> Result<BraidedSet, Error> {
    let f_inv = f.inverse()?;
    let conj = f.compose(&bs.as_square_map()).compose(&f_inv);
    Ok(BraidedSet::from_square_map(&conj))
}

/// Checks the three twist axioms pointwise and reports the first violation.
pub fn check_drinfeld_twist(
    bs: &BraidedSet,
    f: &SquareMap,
    phi: &CubeMap,
    psi: &CubeMap,
) -> Result<TwistCheck, Error> {
    if !f.is_bijective() {
        return Err(Error::NotBijective { what: "F" });
    }
    if !phi.is_bijective() {
        return Err(Error::NotBijective { what: "Phi" });
    }
    if !psi.is_bijective() {
        return Err(Error::NotBijective { what: "Psi" });
    }
    let n = bs.n();
    let r = bs.as_square_map();
    let r12 = CubeMap::on_first_legs(&r);
    let r23 = CubeMap::on_last_legs(&r);
    let f12 = CubeMap::on_first_legs(f);
    let f23 = CubeMap::on_last_legs(f);

    let mut violation = None;
    let lhs = f12.compose(psi);
    let rhs = f23.compose(phi);
    if let Some(code) = (0..n * n * n).find(|&c| lhs.apply_flat(c) != rhs.apply_flat(c)) {
        violation = Some((TwistAxiom::Interchange, unflatten(n, code)));
    }
    if violation.is_none() {
        let lhs = psi.compose(&r12);
        let rhs = r12.compose(psi);
        if let Some(code) = (0..n * n * n).find(|&c| lhs.apply_flat(c) != rhs.apply_flat(c)) {
            violation = Some((TwistAxiom::CommutesBelow, unflatten(n, code)));
        }
    }
    if violation.is_none() {
        let lhs = phi.compose(&r23);
        let rhs = r23.compose(phi);
        if let Some(code) = (0..n * n * n).find(|&c| lhs.apply_flat(c) != rhs.apply_flat(c)) {
            violation = Some((TwistAxiom::CommutesAbove, unflatten(n, code)));
        }
    }
    let twisted_ybe_holds = twisted_solution(bs, f)?.first_ybe_violation().is_none();
    Ok(TwistCheck { holds: violation.is_none(), violation, twisted_ybe_holds })
}

impl TwistDatum {
    pub fn identity(n: usize) -> Self {
        TwistDatum {
            f: SquareMap::identity(n),
            phi: CubeMap::identity(n),
            psi: CubeMap::identity(n),
        }
    }

    /// Validates the triple against a host solution.
    pub fn validate(
        bs: &BraidedSet,
        f: SquareMap,
        phi: CubeMap,
        psi: CubeMap,
    ) -> Result<Self, Error> {
        let chk = check_drinfeld_twist(bs, &f, &phi, &psi)?;
        if let Some((axiom, witness)) = chk.violation {
            return Err(Error::DtViolation { axiom, witness });
        }
        // Redundant by the twisting theorem, so a plain sanity assertion.
        assert!(chk.twisted_ybe_holds, "valid twist produced a non-solution");
        Ok(TwistDatum { f, phi, psi })
    }

    /// The solution this datum twists the host into.
    pub fn twist(&self, bs: &BraidedSet) -> BraidedSet {
        twisted_solution(bs, &self.f).expect("validated twists are bijective")
    }
}

/// The twist datum of a right reflection `k` on a non-degenerate solution:
/// `F` is the guitar map, and
///
/// ```text
/// Phi(a,b,c) = ((a <- (b -> k(c))) <- k(b <- k(c)), b, c)
/// Psi(a,b,c) = (a <- (b -> k(c)), b <- k(c), c)
/// ```
///
/// Both sides of the interchange axiom then equal the three-strand guitar
/// map, which is verified against the word-level recursion.
pub fn twist_from_reflection(bs: &BraidedSet, k: &FiniteMap) -> Result<TwistDatum, Error> {
    let n = bs.n();
    if !bs.is_right_nondegenerate() {
        // find a witness row
        let at = (0..n)
            .find(|&b| !crate::perm::is_permutation(bs.rho_row(b)))
            .unwrap_or(0);
        return Err(Error::Degenerate { side: crate::map::Side::Right, at });
    }
    if !bs.is_left_nondegenerate() {
        let at = (0..n)
            .find(|&a| !crate::perm::is_permutation(bs.sigma_row(a)))
            .unwrap_or(0);
        return Err(Error::Degenerate { side: crate::map::Side::Left, at });
    }
    let chk = check_reflection(bs, k, crate::map::Side::Right);
    if let Some((component, a, b)) = chk.witness {
        return Err(Error::NotAReflection { a, b, component });
    }
    let f = crate::solution::guitar_map(bs, k);
    let phi = CubeMap::from_fn(n, |a, b, c| {
        let bkc = bs.sigma(b, k.apply(c));
        let bkc2 = bs.rho(k.apply(c), b);
        (bs.rho(k.apply(bkc2), bs.rho(bkc, a)), b, c)
    });
    let psi = CubeMap::from_fn(n, |a, b, c| {
        let bkc = bs.sigma(b, k.apply(c));
        (bs.rho(bkc, a), bs.rho(k.apply(c), b), c)
    });
    let datum = TwistDatum::validate(bs, f, phi, psi)?;
    // The common value of the interchange axiom is the three-strand guitar
    // map; cross-check against the independent word-level recursion.
    let common = CubeMap::on_first_legs(&datum.f).compose(&datum.psi);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (x, y, z) = common.apply(a, b, c);
                assert_eq!(
                    guitar_word(bs, k, &[a, b, c]),
                    alloc::vec![x, y, z],
                    "three-strand guitar mismatch at ({a},{b},{c})"
                );
            }
        }
    }
    Ok(datum)
}

/// Composes `t2` (a twist for the `t1`-twisted host) after `t1` (a twist for
/// `bs`), yielding a twist for `bs` whose twisted solution is the double
/// twist.
pub fn compose_twists(bs: &BraidedSet, t1: &TwistDatum, t2: &TwistDatum) -> Result<TwistDatum, Error> {
    let f12 = CubeMap::on_first_legs(&t1.f);
    let f23 = CubeMap::on_last_legs(&t1.f);
    let f12_inv = f12.inverse()?;
    let f23_inv = f23.inverse()?;
    let f = t2.f.compose(&t1.f);
    let phi = f23_inv.compose(&t2.phi).compose(&f23).compose(&t1.phi);
    let psi = f12_inv.compose(&t2.psi).compose(&f12).compose(&t1.psi);
    let out = TwistDatum::validate(bs, f, phi, psi)?;
    // r^(GF) = (r^F)^G, table for table.
    let once = t1.twist(bs);
    let twice = t2.twist(&once);
    assert_eq!(out.twist(bs), twice, "composite twist disagrees with iterated twisting");
    Ok(out)
}

/// Inverts a twist for `bs` into a twist for the twisted solution, which
/// twists it back onto `bs`.
pub fn invert_twist(bs: &BraidedSet, t: &TwistDatum) -> Result<TwistDatum, Error> {
    let twisted = t.twist(bs);
    let f12 = CubeMap::on_first_legs(&t.f);
    let f23 = CubeMap::on_last_legs(&t.f);
    let f12_inv = f12.inverse()?;
    let f23_inv = f23.inverse()?;
    let f = t.f.inverse()?;
    let phi = f23_inv.compose(&t.phi.inverse()?).compose(&f23);
    let psi = f12_inv.compose(&t.psi.inverse()?).compose(&f12);
    let out = TwistDatum::validate(&twisted, f, phi, psi)?;
    assert_eq!(out.twist(&twisted), *bs, "inverse twist does not undo the twist");
    Ok(out)
}

/// The twist `F = f x f`, `Phi = f x id x id`, `Psi = id x id x f` of a
/// carrier bijection. Conjugation by `f x f` always preserves the
/// Yang–Baxter property, so this validates unconditionally.
pub fn twist_from_isomorphism(bs: &BraidedSet, f: &FiniteMap) -> Result<TwistDatum, Error> {
    if !f.is_bijective() {
        return Err(Error::NotBijective { what: "f" });
    }
    let n = bs.n();
    let ff = SquareMap::from_fn(n, |a, b| (f.apply(a), f.apply(b)));
    let phi = CubeMap::from_fn(n, |a, b, c| (f.apply(a), b, c));
    let psi = CubeMap::from_fn(n, |a, b, c| (a, b, f.apply(c)));
    TwistDatum::validate(bs, ff, phi, psi)
}

/// All pairs `(Phi, Psi)` completing a bijective `F` into a twist datum for
/// the host, found by intertwiner search: the commutation axioms say that
/// `Psi` intertwines `(r_12, r_23)` with `(r_12, g)` for a fixed `g`, and
/// `Phi` is determined by `F` and `Psi`. An empty list certifies that `F`
/// admits no twist structure at all.
pub fn find_twist_data(
    bs: &BraidedSet,
    f: &SquareMap,
    gate: usize,
) -> Result<Vec<(CubeMap, CubeMap)>, Error> {
    let n = bs.n();
    let states = n * n * n;
    if states > gate {
        return Err(Error::SizeLimitExceeded { needed: states, gate });
    }
    if !f.is_bijective() {
        return Err(Error::NotBijective { what: "F" });
    }
    let r = bs.as_square_map();
    let r12 = CubeMap::on_first_legs(&r);
    let r23 = CubeMap::on_last_legs(&r);
    let f12 = CubeMap::on_first_legs(f);
    let f23 = CubeMap::on_last_legs(f);
    let f12_inv = f12.inverse()?;
    let f23_inv = f23.inverse()?;
    // Psi r_23 = F_12^-1 F_23 r_23 F_23^-1 F_12 Psi, from the interchange
    // axiom solving Phi = F_23^-1 F_12 Psi and the Phi-commutation.
    let g = f12_inv.compose(&f23).compose(&r23).compose(&f23_inv).compose(&f12);
    let constraints = [
        (r12.table().to_vec(), r12.table().to_vec()),
        (r23.table().to_vec(), g.table().to_vec()),
    ];
    let psis = intertwiners(states, &constraints, None);
    let mut out = Vec::with_capacity(psis.len());
    for tab in psis {
        let psi = CubeMap::from_table(n, tab).expect("intertwiner tables are well-formed");
        let phi = f23_inv.compose(&f12).compose(&psi);
        debug_assert!(check_drinfeld_twist(bs, f, &phi, &psi)
            .map(|c| c.holds)
            .unwrap_or(false));
        out.push((phi, psi));
    }
    out.sort_by(|a, b| a.1.cmp(&b.1));
    Ok(out)
}

/// The three-strand braid representation of an invertible solution: the two
/// generators act as `r` on adjacent legs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidRepresentation {
    pub gen12: CubeMap,
    pub gen23: CubeMap,
}

pub fn braid_rep(bs: &BraidedSet) -> Result<BraidRepresentation, Error> {
    let r = bs.as_square_map();
    if !r.is_bijective() {
        return Err(Error::NotBijective { what: "r" });
    }
    let gen12 = CubeMap::on_first_legs(&r);
    let gen23 = CubeMap::on_last_legs(&r);
    let lhs = gen12.compose(&gen23).compose(&gen12);
    let rhs = gen23.compose(&gen12).compose(&gen23);
    if let Some(code) = (0..lhs.table().len()).find(|&c| lhs.apply_flat(c) != rhs.apply_flat(c)) {
        return Err(Error::BraidRelationViolation { at: code });
    }
    Ok(BraidRepresentation { gen12, gen23 })
}

/// All bijections `a` of `X^3` with `r2.gen = a^-1 r1.gen a` for both
/// generators, canonically sorted.
pub fn conjugators(
    r1: &BraidRepresentation,
    r2: &BraidRepresentation,
    gate: usize,
) -> Result<Vec<CubeMap>, Error> {
    let states = r1.gen12.table().len();
    if states > gate {
        return Err(Error::SizeLimitExceeded { needed: states, gate });
    }
    if states != r2.gen12.table().len() {
        return Err(Error::SizeMismatch { left: states, right: r2.gen12.table().len() });
    }
    // a o r2.gen = r1.gen o a
    let constraints = [
        (r2.gen12.table().to_vec(), r1.gen12.table().to_vec()),
        (r2.gen23.table().to_vec(), r1.gen23.table().to_vec()),
    ];
    let found = intertwiners(states, &constraints, None);
    let n = r1.gen12.n();
    Ok(found
        .into_iter()
        .map(|tab| CubeMap::from_table(n, tab).expect("intertwiner tables are well-formed"))
        .collect())
}

/// First conjugator if any.
pub fn find_conjugator(
    r1: &BraidRepresentation,
    r2: &BraidRepresentation,
    gate: usize,
) -> Result<Option<CubeMap>, Error> {
    Ok(conjugators(r1, r2, gate)?.into_iter().next())
}
