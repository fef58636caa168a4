//! The verification battery: every claim the library is built around, run as
//! an exhaustive desk-scale check with one pass/fail entry per criterion,
//! plus machine-readable adjudications of the places where the brute force
//! contradicts the source material's displayed formulas.

use serde::Serialize;
use serde_json::{json, Value};

use reflectwist_core::brace::{
    braiding_from_skewbrace, check_group_reflection, skewbrace_from_braiding,
    trivial_brace_reflections, SkewBrace,
};
use reflectwist_core::group::builders::{cyclic, dihedral, direct_product, quaternion};
use reflectwist_core::group::FiniteGroup;
use reflectwist_core::group_twist::{
    classify_twist_viability, twisted_braided_group, two_torsion_check, type1_twist,
    DEFAULT_GROUP_TWIST_SEARCH_GATE,
};
use reflectwist_core::map::{CubeMap, FiniteMap, Side, SquareMap};
use reflectwist_core::perm;
use reflectwist_core::search::{
    braces_over_additive_direct, braces_over_additive_holomorph, enumerate_reflections,
    enumerate_skew_braces, enumerate_solutions, find_ell_counterexamples, BraceStrategy,
    EllCounterexample, SolutionConstraints, DEFAULT_REFLECTION_SWEEP_GATE,
};
use reflectwist_core::solution::{
    composed_twist_explicit, composition_condition, guitar_map, k_derived,
    k_derived_unchecked, permutation_solution, BraidedSet, MiddleTerm,
};
use reflectwist_core::twist::{braid_rep, conjugators, find_twist_data, twist_from_reflection};
use reflectwist_core::words::{
    involutivity_transfer_check, garside_commutation_check, monoid_reflection_check, GradedComponent,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

impl Level {
    pub fn parse(s: &str) -> Option<Level> {
        match s {
            "quick" => Some(Level::Quick),
            "full" => Some(Level::Full),
            _ => None,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CriterionReport {
    pub id: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub details: Value,
}

#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub format_version: u32,
    pub level: &'static str,
    pub passed: bool,
    pub criteria: Vec<CriterionReport>,
    pub adjudications: Vec<Value>,
}

const WORD_GATE: usize = 1_000_000;
const SWEEP: usize = DEFAULT_REFLECTION_SWEEP_GATE;

fn n_pow(n: usize) -> usize {
    n.pow(n as u32)
}

fn all_maps(n: usize) -> Vec<FiniteMap> {
    (0..n.pow(n as u32))
        .map(|code| {
            let mut img = vec![0usize; n];
            let mut c = code;
            for slot in img.iter_mut() {
                *slot = c % n;
                c /= n;
            }
            FiniteMap::new(img).unwrap()
        })
        .collect()
}

fn nondeg(n: usize, up_to_iso: bool) -> Vec<BraidedSet> {
    enumerate_solutions(n, SolutionConstraints { nondegenerate: true, up_to_iso, ..Default::default() })
        .unwrap()
}

fn braces(order: usize) -> Vec<SkewBrace> {
    use std::collections::BTreeMap;
    use std::sync::Mutex;
    static CACHE: Mutex<BTreeMap<usize, Vec<SkewBrace>>> = Mutex::new(BTreeMap::new());
    let mut cache = CACHE.lock().unwrap();
    cache
        .entry(order)
        .or_insert_with(|| enumerate_skew_braces(order, BraceStrategy::Holomorph).unwrap())
        .clone()
}

/// Criterion 1: every right reflection of every non-degenerate solution of
/// size <= 3 yields a validating twist datum and a twisted solution.
fn c1(_level: Level) -> CriterionReport {
    let mut instances = 0usize;
    let mut failures = 0usize;
    for n in 1..=3usize {
        for bs in nondeg(n, false) {
            for k in enumerate_reflections(&bs, Side::Right, SWEEP).unwrap() {
                instances += 1;
                let datum_ok = twist_from_reflection(&bs, &k).is_ok();
                let twisted_ok = k_derived(&bs, &k)
                    .map(|t| t.flags().ybe_holds)
                    .unwrap_or(false);
                if !(datum_ok && twisted_ok) {
                    failures += 1;
                }
            }
        }
    }
    CriterionReport {
        id: "reflection-twists-are-drinfeld",
        title: "reflection twists validate and twist into solutions (sizes <= 3)",
        passed: failures == 0 && instances > 0,
        details: json!({"instances": instances, "failures": failures}),
    }
}

/// Criterion 2: the closed form of the doubly twisted solution, in its
/// oracle-selected orientation, equals the double conjugation on the whole
/// corpus, and the row condition is equivalent to the table equality.
fn c2(level: Level) -> CriterionReport {
    let mut instances = 0usize;
    let mut kh_failures = 0usize;
    let mut hk_matches_everywhere = true;
    let mut condition_mismatches = 0usize;
    let max_n = if level == Level::Quick { 3 } else { 4 };
    for n in 2..=max_n {
        for bs in nondeg(n, n == 4) {
            for k in enumerate_reflections(&bs, Side::Right, SWEEP).unwrap() {
                let once = k_derived(&bs, &k).unwrap();
                for h in enumerate_reflections(&once, Side::Right, SWEEP).unwrap() {
                    instances += 1;
                    let target = k_derived(&once, &h).unwrap();
                    let out = composed_twist_explicit(&bs, &k, &h, MiddleTerm::KAfterH).unwrap();
                    if !out.matches_double_conjugation
                        || out.map != target.as_square_map()
                    {
                        kh_failures += 1;
                    }
                    match composed_twist_explicit(&bs, &k, &h, MiddleTerm::HAfterK) {
                        Ok(alt) => {
                            if !alt.matches_double_conjugation {
                                hk_matches_everywhere = false;
                            }
                        }
                        Err(_) => hk_matches_everywhere = false,
                    }
                    // row condition vs table equality over a deterministic
                    // sweep of candidate maps
                    let candidates: Vec<FiniteMap> = if n <= 3 {
                        all_maps(n)
                    } else {
                        let total = n.pow(n as u32);
                        (0..total)
                            .step_by(7)
                            .take(40)
                            .map(|code| {
                                let mut img = vec![0usize; n];
                                let mut c = code;
                                for slot in img.iter_mut() {
                                    *slot = c % n;
                                    c /= n;
                                }
                                FiniteMap::new(img).unwrap()
                            })
                            .collect()
                    };
                    for ell in candidates {
                        let cond = composition_condition(&bs, &k, &h, &ell).unwrap();
                        let tables = k_derived_unchecked(&bs, &ell).unwrap() == target;
                        if cond != tables {
                            condition_mismatches += 1;
                        }
                    }
                }
            }
        }
    }
    CriterionReport {
        id: "composed-twist-closed-form",
        title: "closed form of double twists matches double conjugation",
        passed: kh_failures == 0 && condition_mismatches == 0 && instances > 0,
        details: json!({
            "instances": instances,
            "kh_failures": kh_failures,
            "hk_matches_everywhere": hk_matches_everywhere,
            "matching_variant": "k-after-h",
            "condition_equivalence_mismatches": condition_mismatches,
        }),
    }
}

/// Criterion 3: stated expectation is that the swap-shift square map on
/// the two-point shift solution admits no twist structure and no
/// representation conjugator, while the identity-shift case admits both.
/// The exhaustive searches refute the impossibility half under this
/// crate's composition convention (see the twist-axiom-composition-order
/// adjudication): the swap case carries exactly two data pairs and two
/// conjugators, in matching counts. Reported as stated.
fn c3(_level: Level) -> CriterionReport {
    let swap = FiniteMap::new(vec![1, 0]).unwrap();
    let idm = FiniteMap::identity(2);
    let f = SquareMap::from_fn(2, |a, b| (1 - a, b)); // (p, q) = (swap, id)

    let shifted = permutation_solution(&swap, &idm).unwrap();
    let pairs_shifted = find_twist_data(&shifted, &f, 27).unwrap();
    let twisted = reflectwist_core::twist::twisted_solution(&shifted, &f).unwrap();
    let conj_shifted = {
        let rep = braid_rep(&shifted).unwrap();
        let rep2 = braid_rep(&twisted).unwrap();
        conjugators(&rep, &rep2, 27).unwrap()
    };

    let flip = permutation_solution(&idm, &idm).unwrap();
    let pairs_flip = find_twist_data(&flip, &f, 27).unwrap();
    let twisted_flip = reflectwist_core::twist::twisted_solution(&flip, &f).unwrap();
    let conj_flip = {
        let rep = braid_rep(&flip).unwrap();
        let rep2 = braid_rep(&twisted_flip).unwrap();
        conjugators(&rep, &rep2, 27).unwrap()
    };

    let passed = pairs_shifted.is_empty()
        && conj_shifted.is_empty()
        && !pairs_flip.is_empty()
        && !conj_flip.is_empty();
    CriterionReport {
        id: "permutation-twist-impossibility",
        title: "the swap-shift square map is a D-isomorphism but not a twist",
        passed,
        details: json!({
            "expected": "swap case admits no pairs and no conjugators; identity case admits both",
            "swap_case_pairs": pairs_shifted.len(),
            "swap_case_conjugators": conj_shifted.len(),
            "identity_case_pairs": pairs_flip.len(),
            "identity_case_conjugators": conj_flip.len(),
            "pair_and_conjugator_counts_agree": pairs_shifted.len() == conj_shifted.len()
                && pairs_flip.len() == conj_flip.len(),
            "note": "see the twist-axiom-composition-order adjudication for the verified witness",
        }),
    }
}

/// Criterion 4: reflection twists conjugate the three-strand representations
/// via `F_12 Psi`, and twist existence coincides with conjugator existence
/// for every bijective square map on two points.
fn c4(_level: Level) -> CriterionReport {
    let mut witness_failures = 0usize;
    let mut witness_instances = 0usize;
    for n in 2..=3usize {
        for bs in nondeg(n, false) {
            if !bs.flags().invertible {
                continue;
            }
            for k in enumerate_reflections(&bs, Side::Right, SWEEP).unwrap() {
                witness_instances += 1;
                let t = twist_from_reflection(&bs, &k).unwrap();
                let twisted = t.twist(&bs);
                let rep = braid_rep(&bs).unwrap();
                let rep2 = braid_rep(&twisted).unwrap();
                let a = CubeMap::on_first_legs(&t.f).compose(&t.psi);
                let a_inv = a.inverse().unwrap();
                let ok = a.compose(&rep.gen12).compose(&a_inv) == rep2.gen12
                    && a.compose(&rep.gen23).compose(&a_inv) == rep2.gen23;
                if !ok {
                    witness_failures += 1;
                }
            }
        }
    }
    let mut sweep_disagreements = 0usize;
    let mut sweep_count_mismatches = 0usize;
    let all_f: Vec<SquareMap> = perm::all_permutations(4)
        .into_iter()
        .map(|p| SquareMap::from_table(2, p).unwrap())
        .collect();
    for bs in enumerate_solutions(2, SolutionConstraints::default()).unwrap() {
        if !bs.flags().invertible {
            continue;
        }
        let rep = braid_rep(&bs).unwrap();
        for f in &all_f {
            let pairs = find_twist_data(&bs, f, 27).unwrap();
            let twisted = reflectwist_core::twist::twisted_solution(&bs, f).unwrap();
            if twisted.first_ybe_violation().is_some() {
                if !pairs.is_empty() {
                    sweep_disagreements += 1;
                }
                continue;
            }
            let rep2 = braid_rep(&twisted).unwrap();
            let found = conjugators(&rep, &rep2, 27).unwrap();
            if pairs.is_empty() != found.is_empty() {
                sweep_disagreements += 1;
            }
            if pairs.len() != found.len() {
                sweep_count_mismatches += 1;
            }
        }
    }
    CriterionReport {
        id: "braid-representation-equivalence",
        title: "twist data and representation conjugators coincide",
        passed: witness_failures == 0 && sweep_disagreements == 0 && sweep_count_mismatches == 0,
        details: json!({
            "witness_instances": witness_instances,
            "witness_failures": witness_failures,
            "two_point_sweep_disagreements": sweep_disagreements,
            "two_point_sweep_count_mismatches": sweep_count_mismatches,
        }),
    }
}

/// Criterion 5: skew brace <-> braiding round trip is exact, and every group
/// reflection twists into a full braided group with a valid group twist.
fn c5(_level: Level) -> CriterionReport {
    let mut roundtrip_failures = 0usize;
    let mut twist_failures = 0usize;
    let mut reflections = 0usize;
    for order in 1..=6usize {
        for sb in braces(order) {
            let bg = braiding_from_skewbrace(&sb).unwrap();
            if skewbrace_from_braiding(&bg).unwrap() != sb {
                roundtrip_failures += 1;
            }
            for k in reflectwist_core::search::enumerate_group_reflections(&bg).unwrap() {
                reflections += 1;
                // validates twisted group axioms, braiding axioms, and the
                // group-twist axioms internally
                if twisted_braided_group(&bg, &k).is_err() {
                    twist_failures += 1;
                }
            }
        }
    }
    CriterionReport {
        id: "skewbrace-roundtrip-and-twists",
        title: "round trips exact; group reflections twist into braided groups",
        passed: roundtrip_failures == 0 && twist_failures == 0 && reflections > 0,
        details: json!({
            "roundtrip_failures": roundtrip_failures,
            "group_reflections": reflections,
            "twist_failures": twist_failures,
        }),
    }
}

/// Criterion 6: on faithful hosts, direct axiom classification of the
/// twisted structure agrees with the unit+product / square-rule
/// characterisation, for every map at order <= 4 and sampled above.
fn c6(level: Level) -> CriterionReport {
    let mut checked = 0usize;
    let mut inconsistent = 0usize;
    for order in 1..=4usize {
        for sb in braces(order) {
            let bg = braiding_from_skewbrace(&sb).unwrap();
            if !bg.is_faithful() {
                continue;
            }
            for k in all_maps(order) {
                checked += 1;
                if !classify_twist_viability(&bg, &k).unwrap().consistent {
                    inconsistent += 1;
                }
            }
        }
    }
    if level == Level::Full {
        for order in 5..=6usize {
            for sb in braces(order) {
                let bg = braiding_from_skewbrace(&sb).unwrap();
                if !bg.is_faithful() {
                    continue;
                }
                let total = order.pow(order as u32);
                let stride = (total / 1000).max(1);
                let mut code = 0usize;
                while code < total {
                    let mut img = vec![0usize; order];
                    let mut c = code;
                    for slot in img.iter_mut() {
                        *slot = c % order;
                        c /= order;
                    }
                    let k = FiniteMap::new(img).unwrap();
                    checked += 1;
                    if !classify_twist_viability(&bg, &k).unwrap().consistent {
                        inconsistent += 1;
                    }
                    code += stride;
                }
            }
        }
    }
    // the involutivity axiom implies the square rule on faithful hosts,
    // and its row-level form unconditionally
    let mut square_rule_failures = 0usize;
    let mut rho_level_failures = 0usize;
    for order in 1..=6usize {
        for sb in braces(order) {
            let bg = braiding_from_skewbrace(&sb).unwrap();
            let faithful = bg.is_faithful();
            for k in reflectwist_core::search::enumerate_group_reflections(&bg).unwrap() {
                if faithful && !check_group_reflection(&bg, &k).satisfies_square_rule() {
                    square_rule_failures += 1;
                }
                if !reflectwist_core::brace::rho_level_square_rule(&bg, &k) {
                    rho_level_failures += 1;
                }
            }
        }
    }
    CriterionReport {
        id: "twisted-product-optimality",
        title: "axiom classification equals direct checks on faithful hosts",
        passed: inconsistent == 0
            && square_rule_failures == 0
            && rho_level_failures == 0
            && checked > 0,
        details: json!({
            "maps_checked": checked,
            "inconsistent": inconsistent,
            "square_rule_failures_on_faithful_hosts": square_rule_failures,
            "row_level_square_rule_failures": rho_level_failures,
            "scope_note": "the square-rule characterisation first diverges from the direct \
                           checks at order 6, on 4 of the 46656 maps of the faithful host — \
                           maps this criterion's stated stride sample does not visit; among \
                           actual group reflections the first divergence is at order 8; see \
                           the square-rule-scope adjudication",
        }),
    }
}

/// Criterion 7: stated expectation is that every faithful instance with a
/// bijective group reflection has group exponent dividing 2, with the
/// row-level consequence holding unconditionally. Both statements hold
/// through order 6 but fail at order 8 under this crate's conjugation
/// convention: the identity map is a bijective group reflection on some
/// involutive order-8 braces whose multiplicative group has exponent 4,
/// while the twisted structure is still a perfectly valid braided group.
/// Reported as stated; see the square-rule-scope adjudication.
fn c7(level: Level) -> CriterionReport {
    let max_order = if level == Level::Quick { 4 } else { 8 };
    let mut faithful_instances = 0usize;
    let mut failures = 0usize;
    let mut rho_level_failures = 0usize;
    let mut first_failure = None;
    for order in 1..=max_order {
        for (idx, sb) in braces(order).iter().enumerate() {
            let bg = braiding_from_skewbrace(sb).unwrap();
            for k in reflectwist_core::search::enumerate_group_reflections(&bg).unwrap() {
                if !k.is_bijective() {
                    continue;
                }
                let rep = two_torsion_check(&bg, &k).unwrap();
                if !rep.rho_level {
                    rho_level_failures += 1;
                }
                if let Some(two_torsion) = rep.exponent_two {
                    faithful_instances += 1;
                    if !two_torsion {
                        failures += 1;
                        if first_failure.is_none() {
                            first_failure = Some(json!({
                                "order": order,
                                "brace_index": idx,
                                "k": k.images(),
                                "twisted_structure_is_braided_group":
                                    twisted_braided_group(&bg, &k).is_ok(),
                            }));
                        }
                    }
                }
            }
        }
    }
    CriterionReport {
        id: "two-torsion",
        title: "bijective group reflections force 2-torsion (faithful case)",
        passed: failures == 0 && rho_level_failures == 0,
        details: json!({
            "faithful_bijective_instances": faithful_instances,
            "failures": failures,
            "rho_level_failures": rho_level_failures,
            "first_failure": first_failure,
            "note": "holds through order 6; see the square-rule-scope adjudication",
        }),
    }
}

/// Criterion 8: the published counterexample orders for the composition
/// candidate. Stated expectation: clean through order 5, both failure kinds
/// at order 6, bijective-k clean through 7 and failing at 8. The exhaustive
/// hunt under the printed definitions contradicts this (first failures at
/// order 4, with bijective k); the criterion is reported as stated and the
/// discrepancy is adjudicated with a minimal witness.
fn c8(level: Level) -> CriterionReport {
    let max_order = if level == Level::Quick { 4 } else { 8 };
    let found = find_ell_counterexamples(1..=max_order, false).unwrap();
    let by_order = |o: usize| -> Vec<&EllCounterexample> {
        found.iter().filter(|c| c.order == o).collect()
    };
    let empty_1_to_5 = (1..=5.min(max_order)).all(|o| by_order(o).is_empty());
    let order6 = if max_order >= 6 { by_order(6) } else { Vec::new() };
    let order6_nonempty_both = !order6.is_empty()
        && order6.iter().any(|c| c.fails_for_base)
        && order6.iter().any(|c| c.fails_for_twisted);
    let bij: Vec<&EllCounterexample> = found.iter().filter(|c| c.k_bijective).collect();
    let bij_empty_to_7 = bij.iter().all(|c| c.order > 7.min(max_order));
    let bij_at_8 = bij.iter().any(|c| c.order == 8);
    let passed = empty_1_to_5
        && (max_order < 6 || order6_nonempty_both)
        && bij_empty_to_7
        && (max_order < 8 || bij_at_8);
    let mut per_order = serde_json::Map::new();
    for o in 1..=max_order {
        let at = by_order(o);
        per_order.insert(
            o.to_string(),
            json!({
                "total": at.len(),
                "base_kind": at.iter().filter(|c| c.fails_for_base).count(),
                "twisted_kind": at.iter().filter(|c| c.fails_for_twisted).count(),
                "bijective_k": at.iter().filter(|c| c.k_bijective).count(),
            }),
        );
    }
    CriterionReport {
        id: "ell-counterexample-hunt",
        title: "composition-candidate failures appear at the published orders",
        passed,
        details: json!({
            "expected": "clean through 5; both kinds at 6; bijective clean through 7, failing at 8",
            "per_order": per_order,
            "empty_through_5": empty_1_to_5,
            "order6_nonempty_both_kinds": order6_nonempty_both,
            "bijective_empty_through_7": bij_empty_to_7,
            "bijective_nonempty_at_8": bij_at_8,
            "note": "see the ell-counterexample-orders adjudication for the verified minimal witness",
        }),
    }
}

/// Criterion 9: the two skew-brace enumeration strategies agree through
/// order 6, and the order-6/8 class counts clear the database lower bounds.
fn c9(level: Level) -> CriterionReport {
    let mut strategy_mismatches = 0usize;
    for n in 1..=6usize {
        let hol = enumerate_skew_braces(n, BraceStrategy::Holomorph).unwrap();
        let dir = enumerate_skew_braces(n, BraceStrategy::Direct).unwrap();
        if hol.iter().map(|b| b.canonical_key()).collect::<Vec<_>>()
            != dir.iter().map(|b| b.canonical_key()).collect::<Vec<_>>()
        {
            strategy_mismatches += 1;
        }
    }
    let six = braces(6).len();
    let eight = braces(8).len();
    let mut order8_sweep = json!("skipped at quick level");
    let mut order8_sweep_ok = true;
    if level == Level::Full {
        // per-additive-group dual-strategy agreement at order 8
        let mut per_group = Vec::new();
        for add in [
            cyclic(8),
            direct_product(&cyclic(4), &cyclic(2)),
            direct_product(&direct_product(&cyclic(2), &cyclic(2)), &cyclic(2)),
            dihedral(4),
            quaternion(),
        ] {
            let mut hol: Vec<_> = braces_over_additive_holomorph(&add)
                .into_iter()
                .map(|b| b.canonical_key())
                .collect();
            hol.sort();
            hol.dedup();
            let mut dir: Vec<_> = braces_over_additive_direct(&add)
                .into_iter()
                .map(|b| b.canonical_key())
                .collect();
            dir.sort();
            dir.dedup();
            if hol != dir {
                order8_sweep_ok = false;
            }
            per_group.push(json!({"classes": hol.len(), "agree": hol == dir}));
        }
        order8_sweep = Value::Array(per_group);
    }
    CriterionReport {
        id: "skewbrace-enumeration-crossvalidation",
        title: "dual-strategy agreement and database lower bounds",
        passed: strategy_mismatches == 0 && six >= 5 && eight >= 34 && order8_sweep_ok,
        details: json!({
            "strategy_mismatches_through_6": strategy_mismatches,
            "order6_classes": six,
            "order8_classes": eight,
            "order8_per_additive_group": order8_sweep,
        }),
    }
}

/// Criterion 10: graded structure monoid checks.
fn c10(level: Level) -> CriterionReport {
    let flip = reflectwist_core::solution::fixtures::flip(2);
    let mut flip_counts_ok = true;
    let dmax_flip = if level == Level::Quick { 6 } else { 8 };
    for d in 1..=dmax_flip {
        if GradedComponent::build(&flip, d, WORD_GATE).unwrap().class_count() != d + 1 {
            flip_counts_ok = false;
        }
    }
    let p3 = reflectwist_core::solution::fixtures::p3();
    let p3_ok = GradedComponent::build(&p3, 2, WORD_GATE).unwrap().class_count() == 2;

    // corpus for the word-level checks: everything on two points, the
    // non-degenerate three-point solutions, and (at full level) the
    // three-point solutions up to isomorphism
    let mut corpus = enumerate_solutions(2, SolutionConstraints::default()).unwrap();
    corpus.extend(nondeg(3, false));
    if level == Level::Full {
        corpus.extend(
            enumerate_solutions(3, SolutionConstraints { up_to_iso: true, ..Default::default() })
                .unwrap(),
        );
    }
    let dmax = if level == Level::Quick { 3 } else { 5 };
    let mut garside_failures = 0usize;
    let mut re_failures = 0usize;
    let mut transfer_failures = 0usize;
    let mut pairs = 0usize;
    for bs in &corpus {
        for k in enumerate_reflections(bs, Side::Right, SWEEP).unwrap() {
            pairs += 1;
            for d in 2..=dmax {
                if !garside_commutation_check(bs, &k, d, WORD_GATE).unwrap() {
                    garside_failures += 1;
                }
            }
            if !monoid_reflection_check(bs, &k, 4.min(dmax + 1), WORD_GATE).unwrap() {
                re_failures += 1;
            }
            if !involutivity_transfer_check(bs, &k, 4.min(dmax + 1), WORD_GATE).unwrap().transfer_holds {
                transfer_failures += 1;
            }
        }
    }
    CriterionReport {
        id: "structure-monoid",
        title: "graded components, commutation, and extended reflections",
        passed: flip_counts_ok
            && p3_ok
            && garside_failures == 0
            && re_failures == 0
            && transfer_failures == 0,
        details: json!({
            "flip_counts_ok": flip_counts_ok,
            "p3_degree2_classes_ok": p3_ok,
            "reflection_pairs": pairs,
            "garside_failures": garside_failures,
            "monoid_re_failures": re_failures,
            "involutivity_transfer_failures": transfer_failures,
        }),
    }
}

/// Criterion 11: trivial-brace reflections match the class-function
/// characterisation, and the fixing-family composition law holds at order 4.
fn c11(_level: Level) -> CriterionReport {
    let mut groups: Vec<FiniteGroup> = Vec::new();
    for n in 1..=6usize {
        groups.extend(reflectwist_core::search::enumerate_groups(n).unwrap());
    }
    let mut classification_mismatches = 0usize;
    for g in &groups {
        // trivial_brace_reflections cross-checks itself against the sweep
        // internally; here we additionally compare with the generator-
        // propagation enumeration
        let classified = trivial_brace_reflections(g);
        let bg = braiding_from_skewbrace(&SkewBrace::trivial(g)).unwrap();
        let enumerated =
            reflectwist_core::search::enumerate_group_reflections(&bg).unwrap();
        if classified != enumerated {
            classification_mismatches += 1;
        }
    }
    // composition law over all fixing families on both order-4 groups
    let mut law_failures = 0usize;
    let mut families_checked = 0usize;
    for g in [cyclic(4), direct_product(&cyclic(2), &cyclic(2))] {
        let auts: Vec<FiniteMap> =
            g.automorphisms().into_iter().map(|a| FiniteMap::new(a).unwrap()).collect();
        let per_point: Vec<Vec<FiniteMap>> = (0..4)
            .map(|x| auts.iter().filter(|f| f.apply(x) == x).cloned().collect())
            .collect();
        let mut families = vec![Vec::new()];
        for x in 0..4 {
            let mut next = Vec::new();
            for fam in &families {
                for f in &per_point[x] {
                    let mut fam = fam.clone();
                    fam.push(f.clone());
                    next.push(fam);
                }
            }
            families = next;
        }
        let host = braiding_from_skewbrace(&SkewBrace::trivial(&g)).unwrap();
        for fam1 in &families {
            let t1 = type1_twist(&g, &g, fam1, DEFAULT_GROUP_TWIST_SEARCH_GATE).unwrap();
            for fam2 in &families {
                families_checked += 1;
                let t2 = type1_twist(&g, &g, fam2, DEFAULT_GROUP_TWIST_SEARCH_GATE).unwrap();
                let composed_family: Vec<FiniteMap> = (0..4)
                    .map(|x| {
                        FiniteMap::new(
                            (0..4).map(|y| fam2[x].apply(fam1[x].apply(y))).collect(),
                        )
                        .unwrap()
                    })
                    .collect();
                let t12 =
                    type1_twist(&g, &g, &composed_family, DEFAULT_GROUP_TWIST_SEARCH_GATE)
                        .unwrap();
                let seq = reflectwist_core::twist::compose_twists(
                    &host.bs,
                    &t1.datum.inner,
                    &t2.datum.inner,
                )
                .unwrap();
                if seq.f != t12.datum.inner.f {
                    law_failures += 1;
                }
            }
        }
    }
    CriterionReport {
        id: "trivial-brace-classification",
        title: "class-function reflections and the fixing-family composition law",
        passed: classification_mismatches == 0 && law_failures == 0,
        details: json!({
            "groups_checked": groups.len(),
            "classification_mismatches": classification_mismatches,
            "families_checked": families_checked,
            "composition_law_failures": law_failures,
        }),
    }
}

/// The empirical adjudications of the displayed-formula discrepancies, with
/// brute-force verdicts and witnesses.
pub fn adjudications() -> Vec<Value> {
    let mut out = Vec::new();

    // 1. The shift-solution twist direction: guitar maps of shift solutions
    // are the identity, so the twisted solution is the original; the
    // alternative displayed table is not even a solution.
    {
        let plus1 = FiniteMap::new(vec![1, 2, 0]).unwrap();
        let p3 = permutation_solution(&plus1, &FiniteMap::identity(3)).unwrap();
        let ks = enumerate_reflections(&p3, Side::Right, SWEEP).unwrap();
        let all_guitars_identity = ks
            .iter()
            .all(|k| guitar_map(&p3, k) == SquareMap::identity(3));
        let all_twists_fixed = ks.iter().all(|k| k_derived(&p3, k).unwrap() == p3);
        // claimed table (a, b) -> (a, lambda(b))
        let mut sigma = vec![0usize; 9];
        let mut rho = vec![0usize; 9];
        for a in 0..3 {
            for b in 0..3 {
                sigma[a * 3 + b] = a;
                rho[b * 3 + a] = (b + 1) % 3;
            }
        }
        let claimed = BraidedSet::without_ybe_check(3, sigma, rho).unwrap();
        let violation = claimed.first_ybe_violation();
        out.push(json!({
            "id": "permutation-solution-twist-direction",
            "claim": "twisting r(a,b) = (lambda(b), a) by a reflection yields (a,b) -> (a, lambda(b))",
            "verdict": "refuted",
            "evidence": {
                "all_guitar_maps_identity": all_guitars_identity,
                "all_twists_return_original": all_twists_fixed,
                "claimed_table_ybe_violation": violation.map(|(comp, a, b, c)| json!({
                    "component": comp, "triple": [a, b, c]
                })),
            },
        }));
    }

    // 2. Middle term of the composed twist: k-after-h matches the double
    // conjugation everywhere; h-after-k fails already at size 4.
    {
        let mut witness = None;
        'outer: for bs in nondeg(4, true) {
            for k in enumerate_reflections(&bs, Side::Right, SWEEP).unwrap() {
                let once = k_derived(&bs, &k).unwrap();
                for h in enumerate_reflections(&once, Side::Right, SWEEP).unwrap() {
                    let ok = composed_twist_explicit(&bs, &k, &h, MiddleTerm::HAfterK)
                        .map(|alt| alt.matches_double_conjugation)
                        .unwrap_or(false);
                    if !ok {
                        witness = Some(json!({
                            "sigma": bs.sigma_table(),
                            "rho": bs.rho_table(),
                            "k": k.images(),
                            "h": h.images(),
                        }));
                        break 'outer;
                    }
                }
            }
        }
        out.push(json!({
            "id": "composed-twist-middle-term",
            "claim": "the displayed middle row of the composed twist reads h-after-k",
            "verdict": "k-after-h",
            "evidence": {
                "kh_matches_all_enumerated_instances": true,
                "hk_failure_witness": witness,
            },
        }));
    }

    // 3. The impossibility claim for product-shaped square maps on shift
    // solutions holds only under the composition order in which the
    // interchange axiom solves to Phi = F_12 Psi F_23^-1. Under this
    // crate's convention (pinned by the closed formula of the twisted
    // solution, which equals J r J^-1 and not J^-1 r J) the swap case
    // carries a twist structure; the witness is verified pointwise.
    {
        let swap = FiniteMap::new(vec![1, 0]).unwrap();
        let shifted = permutation_solution(&swap, &FiniteMap::identity(2)).unwrap();
        let f = SquareMap::from_fn(2, |a, b| (1 - a, b));
        let pairs = find_twist_data(&shifted, &f, 27).unwrap();
        let witness = pairs.first().map(|(phi, psi)| {
            json!({
                "psi_flat": psi.table(),
                "phi_flat": phi.table(),
                "psi_is": "(a, b, c) -> (a, b, 1 - c)",
                "phi_is": "(a, b, c) -> (1 - a, 1 - b, 1 - c)",
            })
        });
        out.push(json!({
            "id": "twist-axiom-composition-order",
            "claim": "a product-shaped bijection on a shift solution is a twist only for the identity shift",
            "verdict": "holds only in the opposite composition order",
            "evidence": {
                "swap_case_pair_count": pairs.len(),
                "witness": witness,
                "note": "the interchange axiom is solved here as Phi = F_23^-1 F_12 Psi,                          the order fixed by the twisted-solution closed formula; the                          displayed impossibility argument solves it as Phi = F_12 Psi F_23^-1",
            },
        }));
    }

    // 4. Counterexample orders for the composition candidate: first
    // failures occur at order 4 with bijective k, not at order 6/8.
    {
        let found = find_ell_counterexamples(1..=4, false).unwrap();
        let minimal = found.first().map(|c| {
            let sb = &braces(4)[c.brace_index];
            json!({
                "order": c.order,
                "add": sb.add.table(),
                "mul": sb.mul.table(),
                "k": c.k.images(),
                "k_bijective": c.k_bijective,
                "h": c.h.images(),
                "ell": c.ell.images(),
                "fails_for_base": c.fails_for_base,
                "fails_for_twisted": c.fails_for_twisted,
            })
        });
        out.push(json!({
            "id": "ell-counterexample-orders",
            "claim": "composition candidates first fail at order 6, and with bijective k at order 8",
            "verdict": "refuted",
            "evidence": {
                "first_failures_at_order": 4,
                "minimal_witness": minimal,
                "note": "reflection corpora brute-verified on hosts and twisted hosts; \
                         the candidate identity holds on every instance, so the witness \
                         is a genuine composition candidate",
            },
        }));
    }
    // 5. Scope of the square rule: at order 8 the square-rule
    // characterisation of braided twisted structures, its row-level form,
    // and the 2-torsion consequence all fail under this crate's conjugation
    // convention, even though every twisted structure of a group reflection
    // still validates as a braided group. Minimal witnesses recorded.
    {
        let mut exponent_witness = None;
        let mut row_level_witness = None;
        'scan: for (idx, sb) in braces(8).iter().enumerate() {
            let bg = braiding_from_skewbrace(sb).unwrap();
            for k in reflectwist_core::search::enumerate_group_reflections(&bg).unwrap() {
                if !k.is_bijective() {
                    continue;
                }
                let rep = two_torsion_check(&bg, &k).unwrap();
                if row_level_witness.is_none() && !rep.rho_level {
                    row_level_witness = Some(json!({
                        "brace_index": idx,
                        "k": k.images(),
                    }));
                }
                if exponent_witness.is_none() && rep.exponent_two == Some(false) {
                    let v = classify_twist_viability(&bg, &k).unwrap();
                    exponent_witness = Some(json!({
                        "brace_index": idx,
                        "k": k.images(),
                        "twisted_structure_is_braided_group":
                            twisted_braided_group(&bg, &k).is_ok(),
                        "square_rule_holds":
                            check_group_reflection(&bg, &k).satisfies_square_rule(),
                        "classification_consistent": v.consistent,
                    }));
                }
                if exponent_witness.is_some() && row_level_witness.is_some() {
                    break 'scan;
                }
            }
        }
        // the characterisation itself first diverges at order 6, on maps
        // satisfying only the unit and product axioms
        let mut characterisation_witness = None;
        'scan6: for (idx, sb) in braces(6).iter().enumerate() {
            let bg = braiding_from_skewbrace(sb).unwrap();
            if !bg.is_faithful() {
                continue;
            }
            let n = 6;
            for code in 0..n_pow(n) {
                let mut img = vec![0usize; n];
                let mut c = code;
                for slot in img.iter_mut() {
                    *slot = c % n;
                    c /= n;
                }
                let k = FiniteMap::new(img).unwrap();
                let v = classify_twist_viability(&bg, &k).unwrap();
                if !v.consistent {
                    characterisation_witness = Some(json!({
                        "order": 6,
                        "brace_index": idx,
                        "k": k.images(),
                        "direct": format!("{:?}", v.direct),
                        "by_axioms": format!("{:?}", v.by_axioms),
                    }));
                    break 'scan6;
                }
            }
        }
        out.push(json!({
            "id": "square-rule-scope",
            "claim": "twisted involutivity implies the square rule, whose row-level form holds \
                      unconditionally, forces 2-torsion under faithfulness, and characterises \
                      braided twisted structures",
            "verdict": "fails beyond small orders under this conjugation convention",
            "evidence": {
                "characterisation_first_divergence": characterisation_witness,
                "faithful_exponent_witness": exponent_witness,
                "row_level_witness": row_level_witness,
                "note": "each witness's twisted structure validates as a braided group by \
                         direct axiom checks; the displayed derivation of the square rule \
                         expands the twisted right action in the opposite composition order, \
                         where these statements are expected to hold",
            },
        }));
    }
    out
}

/// Criterion 12: the adjudication records exist and carry verdicts plus
/// witnesses for at least the two anticipated discrepancies.
fn c12(records: &[Value]) -> CriterionReport {
    let has = |id: &str| records.iter().any(|r| r["id"] == id && !r["verdict"].is_null());
    let passed = has("permutation-solution-twist-direction") && has("composed-twist-middle-term");
    CriterionReport {
        id: "discrepancy-ledger",
        title: "machine-readable adjudications with witnesses",
        passed,
        details: json!({"records": records.len()}),
    }
}

pub fn run(level: Level) -> SuiteReport {
    let adjudications = adjudications();
    let criteria = vec![
        c1(level),
        c2(level),
        c3(level),
        c4(level),
        c5(level),
        c6(level),
        c7(level),
        c8(level),
        c9(level),
        c10(level),
        c11(level),
        c12(&adjudications),
    ];
    let passed = criteria.iter().all(|c| c.passed);
    SuiteReport {
        format_version: 1,
        level: match level {
            Level::Quick => "quick",
            Level::Full => "full",
        },
        passed,
        criteria,
        adjudications,
    }
}
