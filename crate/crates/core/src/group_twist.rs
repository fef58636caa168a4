//! Group Drinfeld twists: set-theoretic twist data compatible with a group
//! structure, reflection twists on braided groups, the optimality
//! classification of twisted products, and the two special twist families
//! (fixing families and one-legged twists) every group twist factors
//! through.
//!
//! On top of the set-level axioms a group Drinfeld twist satisfies
//!
//! ```text
//! Phi(1,b,c) = (1,b,c)   Psi(a,b,1) = (a,b,1)
//! F(a,1) = (a,1)         F(1,b) = (1,b)
//! m_23 Phi = F m_23      m_12 Psi = F m_12
//! ```
//!
//! and then `G^F = (G, m F^-1, 1)` is a group carrying the twisted braiding.

use alloc::vec;
use alloc::vec::Vec;

use crate::brace::{
    check_braiding, check_group_reflection, group_reflection_error, BraidedGroup,
};
use crate::error::{Error, GroupTwistAxiom};
use crate::group::FiniteGroup;
use crate::map::{intertwiners, CubeMap, FiniteMap, SquareMap};
use crate::solution::{check_reflection, k_derived, k_derived_unchecked};
use crate::twist::{
    check_drinfeld_twist, twist_from_reflection, twisted_solution, TwistCheck, TwistDatum,
};

/// Default gate for the constrained searches on `X^3`: carriers up to 6.
pub const DEFAULT_GROUP_TWIST_SEARCH_GATE: usize = 216;

/// A twist datum that has passed the group-level axioms for some host.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTwistDatum {
    pub inner: TwistDatum,
}

/// Full outcome of checking a datum against a braided group.
#[derive(Debug, Clone)]
pub struct GroupTwistCheck {
    pub set_level: TwistCheck,
    pub violation: Option<(GroupTwistAxiom, (usize, usize, usize))>,
    /// `(G, m F^-1, 1)`, built when all axioms hold.
    pub twisted_group: Option<FiniteGroup>,
    /// Whether the twisted solution is a braiding on the twisted group.
    pub twisted_braiding_holds: Option<bool>,
}

impl GroupTwistCheck {
    pub fn holds(&self) -> bool {
        self.set_level.holds && self.violation.is_none()
    }
}

/// Checks the group twist axioms pointwise; when everything holds, builds
/// the twisted group and confirms the twisted solution braids it.
pub fn check_group_drinfeld_twist(
    bg: &BraidedGroup,
    f: &SquareMap,
    phi: &CubeMap,
    psi: &CubeMap,
) -> Result<GroupTwistCheck, Error> {
    let set_level = check_drinfeld_twist(&bg.bs, f, phi, psi)?;
    let n = bg.n();
    let e = bg.grp.identity();
    let mut violation = None;
    'bdt1: for b in 0..n {
        for c in 0..n {
            if phi.apply(e, b, c) != (e, b, c) {
                violation = Some((GroupTwistAxiom::UnitTriples, (e, b, c)));
                break 'bdt1;
            }
            if psi.apply(b, c, e) != (b, c, e) {
                violation = Some((GroupTwistAxiom::UnitTriples, (b, c, e)));
                break 'bdt1;
            }
        }
    }
    if violation.is_none() {
        for a in 0..n {
            if f.apply(a, e) != (a, e) || f.apply(e, a) != (e, a) {
                violation = Some((GroupTwistAxiom::UnitPairs, (a, 0, 0)));
                break;
            }
        }
    }
    if violation.is_none() {
        'bdt3: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (x, y, z) = phi.apply(a, b, c);
                    if (x, bg.grp.mul(y, z)) != f.apply(a, bg.grp.mul(b, c)) {
                        violation = Some((GroupTwistAxiom::ProductRight, (a, b, c)));
                        break 'bdt3;
                    }
                }
            }
        }
    }
    if violation.is_none() {
        'bdt4: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (x, y, z) = psi.apply(a, b, c);
                    if (bg.grp.mul(x, y), z) != f.apply(bg.grp.mul(a, b), c) {
                        violation = Some((GroupTwistAxiom::ProductLeft, (a, b, c)));
                        break 'bdt4;
                    }
                }
            }
        }
    }
    let mut twisted_group = None;
    let mut twisted_braiding_holds = None;
    if set_level.holds && violation.is_none() {
        let f_inv = f.inverse()?;
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let (x, y) = f_inv.apply(a, b);
                table[a * n + b] = bg.grp.mul(x, y);
            }
        }
        let grp = FiniteGroup::new(n, table)?;
        let twisted = twisted_solution(&bg.bs, f)?;
        twisted_braiding_holds = Some(check_braiding(&grp, &twisted).holds);
        twisted_group = Some(grp);
    }
    Ok(GroupTwistCheck { set_level, violation, twisted_group, twisted_braiding_holds })
}

impl GroupTwistDatum {
    pub fn identity(n: usize) -> Self {
        GroupTwistDatum { inner: TwistDatum::identity(n) }
    }

    pub fn validate(
        bg: &BraidedGroup,
        f: SquareMap,
        phi: CubeMap,
        psi: CubeMap,
    ) -> Result<Self, Error> {
        let chk = check_group_drinfeld_twist(bg, &f, &phi, &psi)?;
        if let Some((axiom, witness)) = chk.set_level.violation {
            return Err(Error::DtViolation { axiom, witness });
        }
        if let Some((axiom, witness)) = chk.violation {
            return Err(Error::BdtViolation { axiom, witness });
        }
        Ok(GroupTwistDatum { inner: TwistDatum { f, phi, psi } })
    }

    /// The braided group this datum twists the host into.
    pub fn twist(&self, bg: &BraidedGroup) -> Result<BraidedGroup, Error> {
        let chk = check_group_drinfeld_twist(bg, &self.inner.f, &self.inner.phi, &self.inner.psi)?;
        let grp = chk.twisted_group.ok_or(Error::BdtViolation {
            axiom: GroupTwistAxiom::UnitPairs,
            witness: (0, 0, 0),
        })?;
        let bs = twisted_solution(&bg.bs, &self.inner.f)?;
        BraidedGroup::new(grp, bs)
    }
}

/// A braided group twisted by one of its group reflections, with the
/// witnessing datum.
#[derive(Debug, Clone)]
pub struct TwistedByReflection {
    pub twisted: BraidedGroup,
    pub datum: GroupTwistDatum,
}

/// Twists a braided group by a group reflection: the new product is
/// `a * b = (a <-inv k(b)) b`, the unit stays, the inverse of `a` is
/// `a^-1 <- k(a)`, and the braiding is conjugated by the guitar map.
pub fn twisted_braided_group(bg: &BraidedGroup, k: &FiniteMap) -> Result<TwistedByReflection, Error> {
    let report = check_group_reflection(bg, k);
    if !report.is_group_reflection() {
        return Err(group_reflection_error(&report));
    }
    let n = bg.n();
    let mut rho_inv = Vec::with_capacity(n);
    for b in 0..n {
        rho_inv.push(bg.bs.rho_inverse_row(b)?);
    }
    let mut table = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = bg.grp.mul(rho_inv[k.apply(b)][a], b);
        }
    }
    let grp = FiniteGroup::new(n, table)?;
    debug_assert_eq!(grp.identity(), bg.grp.identity());
    for a in 0..n {
        debug_assert_eq!(grp.inv(a), bg.bs.rho(k.apply(a), bg.grp.inv(a)));
    }
    let bs = k_derived(&bg.bs, k)?;
    let twisted = BraidedGroup::new(grp, bs)?;
    let set_datum = twist_from_reflection(&bg.bs, k)?;
    let datum = GroupTwistDatum::validate(bg, set_datum.f, set_datum.phi, set_datum.psi)?;
    debug_assert_eq!(datum.twist(bg)?.grp.table(), twisted.grp.table());
    Ok(TwistedByReflection { twisted, datum })
}

/// Classification of what the `k`-twisted structure of a braided group is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Viability {
    NotGroup,
    GroupOnly,
    BraidedGroup,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwistViability {
    /// From direct group/braiding axiom checks on the twisted tables.
    pub direct: Viability,
    /// From the reflection axioms: unit+product decide the group, the
    /// square rule decides the braiding.
    pub by_axioms: Viability,
    pub consistent: bool,
}

/// Classifies the twisted structure of an arbitrary map `k` on a braided
/// group with faithful right action, both by direct axiom checks and by the
/// reflection-axiom characterisation.
pub fn classify_twist_viability(bg: &BraidedGroup, k: &FiniteMap) -> Result<TwistViability, Error> {
    let n = bg.n();
    let _e = bg.grp.identity();
    if !bg.is_faithful() {
        // The faithful hypothesis fails; report the row-level square rule,
        // which is what survives in the non-faithful case.
        let rho_level = crate::brace::rho_level_square_rule(bg, k);
        return Err(Error::NotFaithful { rho_level_square_rule: rho_level });
    }
    let mut rho_inv = Vec::with_capacity(n);
    for b in 0..n {
        rho_inv.push(bg.bs.rho_inverse_row(b)?);
    }
    let mut table = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = bg.grp.mul(rho_inv[k.apply(b)][a], b);
        }
    }
    let direct = match FiniteGroup::new(n, table) {
        Err(_) => Viability::NotGroup,
        Ok(grp) => {
            let twisted = k_derived_unchecked(&bg.bs, k)?;
            if check_braiding(&grp, &twisted).holds {
                Viability::BraidedGroup
            } else {
                Viability::GroupOnly
            }
        }
    };
    let report = check_group_reflection(bg, k);
    let by_axioms = if !(report.unit_ok && report.product_witness.is_none()) {
        Viability::NotGroup
    } else if report.square_rule_witness.is_some() {
        Viability::GroupOnly
    } else {
        Viability::BraidedGroup
    };
    Ok(TwistViability { direct, by_axioms, consistent: direct == by_axioms })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoTorsionReport {
    /// `k(a)^2` acts trivially on the right for every `a`.
    pub rho_level: bool,
    /// When the right action is faithful: every element squares to 1.
    pub exponent_two: Option<bool>,
}

/// For a bijective group reflection, the squares of its values act trivially
/// on the right; under faithfulness the whole group is 2-torsion.
pub fn two_torsion_check(bg: &BraidedGroup, k: &FiniteMap) -> Result<TwoTorsionReport, Error> {
    if !k.is_bijective() {
        return Err(Error::NotBijective { what: "k" });
    }
    let report = check_group_reflection(bg, k);
    if !report.is_group_reflection() {
        return Err(group_reflection_error(&report));
    }
    let n = bg.n();
    let e = bg.grp.identity();
    let rho_level = (0..n).all(|a| {
        let ka = k.apply(a);
        bg.bs.rho_row(bg.grp.mul(ka, ka)) == bg.bs.rho_row(e)
    });
    let exponent_two = bg.is_faithful().then(|| bg.grp.is_two_torsion());
    Ok(TwoTorsionReport { rho_level, exponent_two })
}

/// The composition candidate `ell(a) = k(a) (k(h(a)))^-1 h(a)` of a group
/// reflection `k` and a group reflection `h` of the twisted structure. Its
/// guitar conjugate always reproduces the double twist; whether it is itself
/// a reflection is reported, not assumed.
#[derive(Debug, Clone)]
pub struct EllCandidate {
    pub ell: FiniteMap,
    pub group_reflection_for_base: bool,
    pub group_reflection_for_twisted: bool,
    pub set_reflection_for_base: bool,
    pub set_reflection_for_twisted: bool,
}

pub fn ell_candidate(bg: &BraidedGroup, k: &FiniteMap, h: &FiniteMap) -> Result<EllCandidate, Error> {
    let twisted = twisted_braided_group(bg, k)?;
    let report_h = check_group_reflection(&twisted.twisted, h);
    if !report_h.is_group_reflection() {
        return Err(group_reflection_error(&report_h));
    }
    let n = bg.n();
    let img: Vec<usize> = (0..n)
        .map(|a| {
            let ka = k.apply(a);
            let kha = k.apply(h.apply(a));
            bg.grp.mul(bg.grp.mul(ka, bg.grp.inv(kha)), h.apply(a))
        })
        .collect();
    let ell = FiniteMap::new(img)?;
    // Double twist versus single guitar conjugation by ell.
    let twice = k_derived(&twisted.twisted.bs, h)?;
    let once = k_derived_unchecked(&bg.bs, &ell)?;
    assert_eq!(once, twice, "ell candidate does not reproduce the double twist");
    Ok(EllCandidate {
        group_reflection_for_base: check_group_reflection(bg, &ell).is_group_reflection(),
        group_reflection_for_twisted: check_group_reflection(&twisted.twisted, &ell)
            .is_group_reflection(),
        set_reflection_for_base: check_reflection(&bg.bs, &ell, crate::map::Side::Right).holds,
        set_reflection_for_twisted: check_reflection(
            &twisted.twisted.bs,
            &ell,
            crate::map::Side::Right,
        )
        .holds,
        ell,
    })
}

/// All `(Phi, Psi)` completing `F` into a *group* Drinfeld twist for the
/// braided group, by intertwiner search with the product axioms folded into
/// per-point candidate lists (at any point only `n` images are possible).
/// An empty list certifies `F` carries no group twist structure.
pub fn find_group_twist_data(
    bg: &BraidedGroup,
    f: &SquareMap,
    gate: usize,
) -> Result<Vec<(CubeMap, CubeMap)>, Error> {
    let n = bg.n();
    let states = n * n * n;
    if states > gate {
        return Err(Error::SizeLimitExceeded { needed: states, gate });
    }
    if !f.is_bijective() {
        return Err(Error::NotBijective { what: "F" });
    }
    let e = bg.grp.identity();
    // Unit pairs are forced on F itself; without them nothing can work.
    for a in 0..n {
        if f.apply(a, e) != (a, e) || f.apply(e, a) != (e, a) {
            return Ok(Vec::new());
        }
    }
    let r = bg.bs.as_square_map();
    let r12 = CubeMap::on_first_legs(&r);
    let r23 = CubeMap::on_last_legs(&r);
    let f12 = CubeMap::on_first_legs(f);
    let f23 = CubeMap::on_last_legs(f);
    let f12_inv = f12.inverse()?;
    let f23_inv = f23.inverse()?;
    let g = f12_inv.compose(&f23).compose(&r23).compose(&f23_inv).compose(&f12);
    let constraints = [
        (r12.table().to_vec(), r12.table().to_vec()),
        (r23.table().to_vec(), g.table().to_vec()),
    ];
    // m_12 Psi = F m_12 pins Psi(a,b,c) to (p t^-1, t, q) for (p, q) =
    // F(ab, c); the unit axiom pins the c = 1 points completely.
    let flat = |x: usize, y: usize, z: usize| (x * n + y) * n + z;
    let mut candidates: Vec<Vec<usize>> = Vec::with_capacity(states);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (p, q) = f.apply(bg.grp.mul(a, b), c);
                let cand: Vec<usize> = if c == e {
                    vec![flat(a, b, e)]
                } else {
                    (0..n).map(|t| flat(bg.grp.mul(p, bg.grp.inv(t)), t, q)).collect()
                };
                candidates.push(cand);
            }
        }
    }
    let psis = intertwiners(states, &constraints, Some(&candidates));
    let mut out = Vec::new();
    for tab in psis {
        let psi = CubeMap::from_table(n, tab).expect("well-formed");
        let phi = f23_inv.compose(&f12).compose(&psi);
        let chk = check_group_drinfeld_twist(bg, f, &phi, &psi)?;
        if chk.holds() {
            out.push((phi, psi));
        }
    }
    out.sort_by(|a, b| a.1.cmp(&b.1));
    Ok(out)
}

/// A type-I twist: the datum of a fixing family, between two group
/// structures on one carrier.
#[derive(Debug, Clone)]
pub struct Type1Twist {
    pub datum: GroupTwistDatum,
    /// How many `(Phi, Psi)` pairs complete `F`; expected to be exactly 1.
    pub pair_count: usize,
}

/// Builds the twist `F(x, y) = (f_xy(x), f_xy(y))` of a family of
/// isomorphisms `f_x: src -> dst` with `f_x(x) = x`, hosted on the
/// conjugation braiding of `src`.
pub fn type1_twist(
    src: &FiniteGroup,
    dst: &FiniteGroup,
    family: &[FiniteMap],
    gate: usize,
) -> Result<Type1Twist, Error> {
    let n = src.n();
    if family.len() != n {
        return Err(Error::Shape { expected: n, found: family.len() });
    }
    for (x, fx) in family.iter().enumerate() {
        if !fx.is_bijective() {
            return Err(Error::NotIsomorphism { x });
        }
        for a in 0..n {
            for b in 0..n {
                if fx.apply(src.mul(a, b)) != dst.mul(fx.apply(a), fx.apply(b)) {
                    return Err(Error::NotIsomorphism { x });
                }
            }
        }
        if fx.apply(x) != x {
            return Err(Error::NotFixing { x });
        }
    }
    let host = crate::brace::braiding_from_skewbrace(&crate::brace::SkewBrace::trivial(src))?;
    let f = SquareMap::from_fn(n, |x, y| {
        let fxy = &family[src.mul(x, y)];
        (fxy.apply(x), fxy.apply(y))
    });
    let pairs = find_group_twist_data(&host, &f, gate)?;
    let Some((phi, psi)) = pairs.first().cloned() else {
        return Err(Error::DtViolation {
            axiom: crate::error::TwistAxiom::Interchange,
            witness: (0, 0, 0),
        });
    };
    let datum = GroupTwistDatum::validate(&host, f, phi, psi)?;
    // The twisted group is dst and the twisted braiding is its conjugation
    // braiding.
    let twisted = datum.twist(&host)?;
    debug_assert_eq!(twisted.grp.table(), dst.table());
    debug_assert!(
        twisted.bs
            == crate::brace::braiding_from_skewbrace(&crate::brace::SkewBrace::trivial(dst))?.bs
    );
    Ok(Type1Twist { datum, pair_count: pairs.len() })
}

/// Recovers the fixing family of a type-I-shaped square map, if it has one:
/// `f_z(y) = F(z y^-1, y)_2`, which must be consistent with the first
/// components and fix `z`.
pub fn extract_type1_family(src: &FiniteGroup, f: &SquareMap) -> Option<Vec<FiniteMap>> {
    let n = src.n();
    let mut family = Vec::with_capacity(n);
    for z in 0..n {
        let img: Vec<usize> =
            (0..n).map(|y| f.apply(src.mul(z, src.inv(y)), y).1).collect();
        if img[z] != z {
            return None;
        }
        family.push(FiniteMap::new(img).ok()?);
    }
    for x in 0..n {
        for y in 0..n {
            let fxy = &family[src.mul(x, y)];
            if f.apply(x, y) != (fxy.apply(x), fxy.apply(y)) {
                return None;
            }
        }
    }
    Some(family)
}

/// Outcome of the one-legged classification: the five conditions on the
/// component maps, and the full axiom check they are equivalent to.
#[derive(Debug, Clone)]
pub struct OneLeggedReport {
    pub conditions_hold: bool,
    /// First witness per failed condition, keyed 1..=5 in the order
    /// bijectivity, unitarity, interchange, left-action, right-action.
    pub condition_failures: Vec<(u8, (usize, usize, usize))>,
    pub full_axioms_hold: bool,
    pub datum: Option<GroupTwistDatum>,
}

/// Classifies when `(a, b) -> (rho_b(a), b)` is a group Drinfeld twist: the
/// component maps must be bijective, unital, and satisfy
///
/// ```text
/// q_{q_c(b)}(q_c(ab) q_c(b)^-1) = q_{bc}(a)
/// q_c(ab) q_c(a<-b)^-1 = (q_c(ab) q_c(b)^-1) -> q_c(b)
/// q_c(a<-b) = (q_c(ab) q_c(b)^-1) <- q_c(b)
/// ```
///
/// in which case `Phi` and `Psi` are forced:
/// `Phi(a,b,c) = (q_{bc}(a), b, c)` and
/// `Psi(a,b,c) = (q_c(ab) q_c(b)^-1, q_c(b), c)`.
pub fn one_legged_twist_check(
    bg: &BraidedGroup,
    varrho: &[Vec<usize>],
) -> Result<OneLeggedReport, Error> {
    let n = bg.n();
    let e = bg.grp.identity();
    if varrho.len() != n {
        return Err(Error::Shape { expected: n, found: varrho.len() });
    }
    for (b, row) in varrho.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Shape { expected: n, found: row.len() });
        }
        for &v in row {
            if v >= n {
                return Err(Error::Range { index: b, value: v, n });
            }
        }
    }
    let q = |b: usize, a: usize| varrho[b][a];
    // Standing hypotheses.
    for a in 0..n {
        if q(e, a) != a {
            return Err(Error::HypothesisViolation { at: a });
        }
        if q(a, e) != e {
            return Err(Error::HypothesisViolation { at: a });
        }
    }
    let mut failures: Vec<(u8, (usize, usize, usize))> = Vec::new();
    for b in 0..n {
        if !crate::perm::is_permutation(&varrho[b]) {
            failures.push((1, (b, 0, 0)));
            break;
        }
    }
    let bijective = failures.is_empty();
    // unitarity is the standing hypothesis, checked above; condition 2
    // never fails here but keeps its slot in the numbering.
    let check_conditions = |failures: &mut Vec<(u8, (usize, usize, usize))>| {
        'c3: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let ab = bg.grp.mul(a, b);
                    let core = bg.grp.mul(q(c, ab), bg.grp.inv(q(c, b)));
                    if q(q(c, b), core) != q(bg.grp.mul(b, c), a) {
                        failures.push((3, (a, b, c)));
                        break 'c3;
                    }
                }
            }
        }
        'c4: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let ab = bg.grp.mul(a, b);
                    let core = bg.grp.mul(q(c, ab), bg.grp.inv(q(c, b)));
                    if bg.grp.mul(q(c, ab), bg.grp.inv(q(c, bg.bs.rho(b, a))))
                        != bg.bs.sigma(core, q(c, b))
                    {
                        failures.push((4, (a, b, c)));
                        break 'c4;
                    }
                }
            }
        }
        'c5: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let ab = bg.grp.mul(a, b);
                    let core = bg.grp.mul(q(c, ab), bg.grp.inv(q(c, b)));
                    if q(c, bg.bs.rho(b, a)) != bg.bs.rho(q(c, b), core) {
                        failures.push((5, (a, b, c)));
                        break 'c5;
                    }
                }
            }
        }
    };
    check_conditions(&mut failures);
    let conditions_hold = failures.is_empty();

    // Full axiom check with the forced Phi and Psi, wherever they can be
    // formed at all.
    let mut full_axioms_hold = false;
    let mut datum = None;
    if bijective {
        let f = SquareMap::from_fn(n, |a, b| (q(b, a), b));
        let phi = CubeMap::from_fn(n, |a, b, c| (q(bg.grp.mul(b, c), a), b, c));
        let psi = CubeMap::from_fn(n, |a, b, c| {
            let ab = bg.grp.mul(a, b);
            (bg.grp.mul(q(c, ab), bg.grp.inv(q(c, b))), q(c, b), c)
        });
        if f.is_bijective() && phi.is_bijective() && psi.is_bijective() {
            let chk = check_group_drinfeld_twist(bg, &f, &phi, &psi)?;
            full_axioms_hold = chk.holds();
            if full_axioms_hold {
                datum = Some(GroupTwistDatum { inner: TwistDatum { f, phi, psi } });
            }
        }
    }
    assert_eq!(
        conditions_hold, full_axioms_hold,
        "one-legged conditions disagree with the full axiom check"
    );
    Ok(OneLeggedReport { conditions_hold, condition_failures: failures, full_axioms_hold, datum })
}

/// A decomposition of a group twist into a fixing-family part followed by a
/// one-legged part.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub family: Vec<FiniteMap>,
    pub intermediate: BraidedGroup,
    pub type1: GroupTwistDatum,
    pub type2: GroupTwistDatum,
}

/// Splits a group twist `t: src -> dst` as a type-I twist followed by a
/// one-legged twist. The second components of `t.F` pin the only possible
/// fixing family, so the factorisation is found directly and verified; a
/// `None` outcome means no such factorisation exists, which would contradict
/// the general decomposition of group twists and is surfaced to the caller
/// as a falsification event.
pub fn decompose_twist(
    src: &BraidedGroup,
    dst: &BraidedGroup,
    t: &GroupTwistDatum,
    gate: usize,
) -> Result<Option<Decomposition>, Error> {
    let n = src.n();
    let states = n * n * n;
    if states > gate {
        return Err(Error::SizeLimitExceeded { needed: states, gate });
    }
    // t must be a valid arrow src -> dst.
    let chk = check_group_drinfeld_twist(src, &t.inner.f, &t.inner.phi, &t.inner.psi)?;
    if let Some((axiom, witness)) = chk.set_level.violation {
        return Err(Error::DtViolation { axiom, witness });
    }
    if let Some((axiom, witness)) = chk.violation {
        return Err(Error::BdtViolation { axiom, witness });
    }
    if chk.twisted_group.as_ref().map(|g| g.table()) != Some(dst.grp.table())
        || twisted_solution(&src.bs, &t.inner.f)? != dst.bs
    {
        return Err(Error::SizeMismatch { left: n, right: dst.n() });
    }
    // The only candidate family: the second components of t.F pin it.
    let mut family = Vec::with_capacity(n);
    for z in 0..n {
        let img: Vec<usize> = (0..n)
            .map(|y| t.inner.f.apply(src.grp.mul(z, src.grp.inv(y)), y).1)
            .collect();
        if img[z] != z {
            return Ok(None);
        }
        let Ok(fz) = FiniteMap::new(img) else {
            return Ok(None);
        };
        family.push(fz);
    }
    let f1 = SquareMap::from_fn(n, |x, y| {
        let fxy = &family[src.grp.mul(x, y)];
        (fxy.apply(x), fxy.apply(y))
    });
    if !f1.is_bijective() {
        return Ok(None);
    }
    // Intermediate group m o F1^-1.
    let f1_inv = f1.inverse()?;
    let mut table = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            let (x, y) = f1_inv.apply(a, b);
            table[a * n + b] = src.grp.mul(x, y);
        }
    }
    let Ok(mid_grp) = FiniteGroup::new(n, table) else {
        return Ok(None);
    };
    // family members must be isomorphisms src -> intermediate
    for (z, fz) in family.iter().enumerate() {
        let _ = z;
        for a in 0..n {
            for b in 0..n {
                if fz.apply(src.grp.mul(a, b)) != mid_grp.mul(fz.apply(a), fz.apply(b)) {
                    return Ok(None);
                }
            }
        }
    }
    let pairs = find_group_twist_data(src, &f1, gate)?;
    let Some((phi1, psi1)) = pairs.first().cloned() else {
        return Ok(None);
    };
    let type1 = GroupTwistDatum { inner: TwistDatum { f: f1.clone(), phi: phi1, psi: psi1 } };
    let mid_bs = twisted_solution(&src.bs, &f1)?;
    let Ok(intermediate) = BraidedGroup::new(mid_grp, mid_bs) else {
        return Ok(None);
    };
    // Remaining factor must be one-legged.
    let f2 = t.inner.f.compose(&f1_inv);
    let mut varrho = vec![vec![0usize; n]; n];
    for a in 0..n {
        for b in 0..n {
            let (x, y) = f2.apply(a, b);
            if y != b {
                return Ok(None);
            }
            varrho[b][a] = x;
        }
    }
    let Ok(report) = one_legged_twist_check(&intermediate, &varrho) else {
        return Ok(None);
    };
    let Some(type2) = report.datum else {
        return Ok(None);
    };
    debug_assert_eq!(type2.inner.f.compose(&type1.inner.f), t.inner.f);
    Ok(Some(Decomposition { family, intermediate, type1, type2 }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::{braiding_from_skewbrace, SkewBrace};
    use crate::group::builders::{cyclic, direct_product, symmetric};
    use crate::map::Side;
    use crate::twist::twist_from_isomorphism;

    fn k4() -> FiniteGroup {
        direct_product(&cyclic(2), &cyclic(2))
    }

    #[test]
    fn identity_datum_is_a_group_twist() {
        let bg = braiding_from_skewbrace(&SkewBrace::trivial(&symmetric(3))).unwrap();
        let t = GroupTwistDatum::identity(6);
        let chk = check_group_drinfeld_twist(&bg, &t.inner.f, &t.inner.phi, &t.inner.psi).unwrap();
        assert!(chk.holds());
        assert_eq!(chk.twisted_group.unwrap().table(), bg.grp.table());
        assert_eq!(chk.twisted_braiding_holds, Some(true));
    }

    #[test]
    fn constant_to_identity_reflection_twists_trivially() {
        let bg = braiding_from_skewbrace(&SkewBrace::trivial(&symmetric(3))).unwrap();
        let k = FiniteMap::constant(6, 0);
        let out = twisted_braided_group(&bg, &k).unwrap();
        assert_eq!(out.twisted.grp.table(), bg.grp.table());
        assert_eq!(out.twisted.bs, bg.bs);
    }

    #[test]
    fn involutive_braiding_identity_reflection_twist() {
        // The flip on K4 twisted by k = id: product (a <-inv b) b = ab.
        let bg = braiding_from_skewbrace(&SkewBrace::trivial(&k4())).unwrap();
        let out = twisted_braided_group(&bg, &FiniteMap::identity(4)).unwrap();
        assert_eq!(out.twisted.grp.table(), bg.grp.table());
    }

    #[test]
    fn set_twist_moving_the_unit_fails_bdt() {
        // f x f for a transposition moving the identity: a valid set-level
        // twist that violates the unit-pair axiom.
        let bg = braiding_from_skewbrace(&SkewBrace::trivial(&k4())).unwrap();
        let f = FiniteMap::new(vec![1, 0, 2, 3]).unwrap();
        let t = twist_from_isomorphism(&bg.bs, &f).unwrap();
        let chk = check_group_drinfeld_twist(&bg, &t.f, &t.phi, &t.psi).unwrap();
        assert!(chk.set_level.holds);
        assert!(chk.violation.is_some());
        assert!(matches!(
            GroupTwistDatum::validate(&bg, t.f, t.phi, t.psi),
            Err(Error::BdtViolation { .. })
        ));
    }

    #[test]
    fn classify_constant_reflection_as_braided_group() {
        let bg = braiding_from_skewbrace(&SkewBrace::trivial(&symmetric(3))).unwrap();
        let k = FiniteMap::constant(6, 0);
        let v = classify_twist_viability(&bg, &k).unwrap();
        assert_eq!(v.direct, Viability::BraidedGroup);
        assert!(v.consistent);
    }

    #[test]
    fn classify_rejects_unfaithful_hosts_with_rho_level_report() {
        let bg = braiding_from_skewbrace(&SkewBrace::trivial(&cyclic(4))).unwrap();
        let err = classify_twist_viability(&bg, &FiniteMap::identity(4)).unwrap_err();
        assert!(matches!(err, Error::NotFaithful { rho_level_square_rule: true }));
    }

    #[test]
    fn two_torsion_on_z2() {
        let bg = braiding_from_skewbrace(&SkewBrace::trivial(&cyclic(2))).unwrap();
        let rep = two_torsion_check(&bg, &FiniteMap::identity(2)).unwrap();
        assert!(rep.rho_level);
        // conjugation on an abelian group is not faithful for n > 1
        assert_eq!(rep.exponent_two, None);
        let err = two_torsion_check(&bg, &FiniteMap::constant(2, 0)).unwrap_err();
        assert!(matches!(err, Error::NotBijective { .. }));
    }

    #[test]
    fn ell_of_constant_reflections_is_constant() {
        let bg = braiding_from_skewbrace(&SkewBrace::trivial(&symmetric(3))).unwrap();
        let k = FiniteMap::constant(6, 0);
        let out = ell_candidate(&bg, &k, &k).unwrap();
        assert_eq!(out.ell, k);
        assert!(out.group_reflection_for_base);
        assert!(out.group_reflection_for_twisted);
    }

    #[test]
    fn identity_family_gives_identity_type1_twist() {
        let g = k4();
        let family: Vec<FiniteMap> = (0..4).map(|_| FiniteMap::identity(4)).collect();
        let t = type1_twist(&g, &g, &family, DEFAULT_GROUP_TWIST_SEARCH_GATE).unwrap();
        assert_eq!(t.datum.inner.f, SquareMap::identity(4));
        assert_eq!(t.pair_count, 1);
    }

    #[test]
    fn nontrivial_fixing_family_on_k4() {
        let g = k4();
        // Swap the two involutions 1 and 2 wherever the fixing rule allows:
        // f_0 = f_3 = the swap (both fix 0 and 3), f_1 = f_2 = id.
        let swap = FiniteMap::new(vec![0, 2, 1, 3]).unwrap();
        let family = vec![swap.clone(), FiniteMap::identity(4), FiniteMap::identity(4), swap];
        let t = type1_twist(&g, &g, &family, DEFAULT_GROUP_TWIST_SEARCH_GATE).unwrap();
        assert_ne!(t.datum.inner.f, SquareMap::identity(4));
        assert_eq!(t.pair_count, 1);
        // extraction inverts construction
        let back = extract_type1_family(&g, &t.datum.inner.f).unwrap();
        assert_eq!(back, family_images(&family));
        fn family_images(fam: &[FiniteMap]) -> Vec<FiniteMap> {
            fam.to_vec()
        }
    }

    #[test]
    fn type1_rejects_non_fixing_families() {
        let g = k4();
        let swap = FiniteMap::new(vec![0, 2, 1, 3]).unwrap();
        let family = vec![FiniteMap::identity(4), swap, FiniteMap::identity(4), FiniteMap::identity(4)];
        assert!(matches!(
            type1_twist(&g, &g, &family, DEFAULT_GROUP_TWIST_SEARCH_GATE),
            Err(Error::NotFixing { x: 1 })
        ));
    }

    #[test]
    fn type1_composition_law() {
        let g = k4();
        let swap = FiniteMap::new(vec![0, 2, 1, 3]).unwrap();
        let fam1 = vec![swap.clone(), FiniteMap::identity(4), FiniteMap::identity(4), swap.clone()];
        let fam2 = fam1.clone();
        let t1 = type1_twist(&g, &g, &fam1, DEFAULT_GROUP_TWIST_SEARCH_GATE).unwrap();
        let t2 = type1_twist(&g, &g, &fam2, DEFAULT_GROUP_TWIST_SEARCH_GATE).unwrap();
        // composed family g_x o f_x
        let composed: Vec<FiniteMap> = (0..4)
            .map(|x| {
                let img: Vec<usize> =
                    (0..4).map(|y| fam2[x].apply(fam1[x].apply(y))).collect();
                FiniteMap::new(img).unwrap()
            })
            .collect();
        let t12 = type1_twist(&g, &g, &composed, DEFAULT_GROUP_TWIST_SEARCH_GATE).unwrap();
        let host = braiding_from_skewbrace(&SkewBrace::trivial(&g)).unwrap();
        let seq = crate::twist::compose_twists(&host.bs, &t1.datum.inner, &t2.datum.inner).unwrap();
        assert_eq!(seq.f, t12.datum.inner.f);
    }

    #[test]
    fn one_legged_identity_table() {
        let bg = braiding_from_skewbrace(&SkewBrace::trivial(&symmetric(3))).unwrap();
        let varrho: Vec<Vec<usize>> = (0..6).map(|_| (0..6).collect()).collect();
        let rep = one_legged_twist_check(&bg, &varrho).unwrap();
        assert!(rep.conditions_hold);
        assert_eq!(rep.datum.unwrap().inner, TwistDatum::identity(6));
    }

    #[test]
    fn one_legged_from_group_reflection_matches_reflection_twist() {
        let bg = braiding_from_skewbrace(&SkewBrace::trivial(&symmetric(3))).unwrap();
        for k in crate::brace::trivial_brace_reflections(&symmetric(3)) {
            let varrho: Vec<Vec<usize>> =
                (0..6).map(|b| (0..6).map(|a| bg.bs.rho(k.apply(b), a)).collect()).collect();
            let rep = one_legged_twist_check(&bg, &varrho).unwrap();
            assert!(rep.conditions_hold, "reflection rows must classify as one-legged");
            let datum = rep.datum.unwrap();
            let direct = twist_from_reflection(&bg.bs, &k).unwrap();
            assert_eq!(datum.inner, direct);
        }
    }

    #[test]
    fn one_legged_abelian_flip_case() {
        // On Z4 with the flip braiding, rows q_c(a) = a * 3^(c mod 2) form a
        // family of automorphisms satisfying the composition rule, hence a
        // group twist.
        let bg = braiding_from_skewbrace(&SkewBrace::trivial(&cyclic(4))).unwrap();
        let varrho: Vec<Vec<usize>> = (0..4)
            .map(|c| (0..4).map(|a| if c % 2 == 1 { (3 * a) % 4 } else { a }).collect())
            .collect();
        let rep = one_legged_twist_check(&bg, &varrho).unwrap();
        assert!(rep.conditions_hold);
        // each row is an automorphism of Z4
        for row in &varrho {
            for a in 0..4 {
                for b in 0..4 {
                    assert_eq!(row[(a + b) % 4], (row[a] + row[b]) % 4);
                }
            }
        }
        // and a row family violating the composition rule fails condition 3
        let bad: Vec<Vec<usize>> = (0..4)
            .map(|c| (0..4).map(|a| if c == 1 { (3 * a) % 4 } else { a }).collect())
            .collect();
        let rep = one_legged_twist_check(&bg, &bad).unwrap();
        assert!(!rep.conditions_hold);
        assert!(rep.condition_failures.iter().any(|&(code, _)| code == 3));
    }

    #[test]
    fn one_legged_hypothesis_violation() {
        let bg = braiding_from_skewbrace(&SkewBrace::trivial(&cyclic(2))).unwrap();
        let varrho = vec![vec![1, 0], vec![0, 1]];
        assert!(matches!(
            one_legged_twist_check(&bg, &varrho),
            Err(Error::HypothesisViolation { .. })
        ));
    }

    #[test]
    fn decompose_identity_twist() {
        let bg = braiding_from_skewbrace(&SkewBrace::trivial(&k4())).unwrap();
        let t = GroupTwistDatum::identity(4);
        let d = decompose_twist(&bg, &bg, &t, DEFAULT_GROUP_TWIST_SEARCH_GATE).unwrap().unwrap();
        assert_eq!(d.type1.inner.f, SquareMap::identity(4));
        assert_eq!(d.type2.inner.f, SquareMap::identity(4));
    }

    #[test]
    fn decompose_reflection_twist_has_identity_family() {
        let bg = braiding_from_skewbrace(&SkewBrace::trivial(&symmetric(3))).unwrap();
        let k = trivial_reflection_with_nontrivial_guitar(&bg);
        let out = twisted_braided_group(&bg, &k).unwrap();
        let d = decompose_twist(&bg, &out.twisted, &out.datum, DEFAULT_GROUP_TWIST_SEARCH_GATE)
            .unwrap()
            .unwrap();
        for fz in &d.family {
            assert_eq!(*fz, FiniteMap::identity(6));
        }
        assert_eq!(d.type2.inner.f, out.datum.inner.f);
    }

    fn trivial_reflection_with_nontrivial_guitar(bg: &BraidedGroup) -> FiniteMap {
        for k in crate::brace::trivial_brace_reflections(&symmetric(3)) {
            let j = crate::solution::guitar_map(&bg.bs, &k);
            if j != SquareMap::identity(6) {
                return k;
            }
        }
        panic!("expected a reflection with nontrivial guitar map");
    }

    #[test]
    fn decompose_type1_twist_has_trivial_one_legged_part() {
        let g = k4();
        let swap = FiniteMap::new(vec![0, 2, 1, 3]).unwrap();
        let family = vec![swap.clone(), FiniteMap::identity(4), FiniteMap::identity(4), swap];
        let t = type1_twist(&g, &g, &family, DEFAULT_GROUP_TWIST_SEARCH_GATE).unwrap();
        let host = braiding_from_skewbrace(&SkewBrace::trivial(&g)).unwrap();
        let dst = t.datum.twist(&host).unwrap();
        let d = decompose_twist(&host, &dst, &t.datum, DEFAULT_GROUP_TWIST_SEARCH_GATE)
            .unwrap()
            .unwrap();
        assert_eq!(d.type2.inner.f, SquareMap::identity(4));
        assert_eq!(d.family, family);
    }

    #[test]
    fn ell_set_vs_group_status_on_s3() {
        // k = h = a transposition-collapse reflection on the trivial brace.
        let s3 = symmetric(3);
        let bg = braiding_from_skewbrace(&SkewBrace::trivial(&s3)).unwrap();
        let ks = crate::brace::trivial_brace_reflections(&s3);
        for k in &ks {
            let twisted = twisted_braided_group(&bg, k).unwrap();
            for h in &ks {
                if check_group_reflection(&twisted.twisted, h).is_group_reflection() {
                    let out = ell_candidate(&bg, k, h).unwrap();
                    // the defining identity always holds; reflection status
                    // may vary and is only reported
                    let _ = out;
                }
            }
        }
    }
}
