//! Corpus-level invariants for solutions, reflections, derived solutions and
//! twist data, checked over the exhaustively enumerated small cases.

use reflectwist_core::map::{CubeMap, FiniteMap, Side, SquareMap};
use reflectwist_core::search::{
    enumerate_reflections, enumerate_solutions, SolutionConstraints, DEFAULT_REFLECTION_SWEEP_GATE,
};
use reflectwist_core::solution::{
    check_d_homomorphism, check_reflection, composed_twist_explicit, composition_condition,
    derived_solution, fixtures, guitar_map, k_derived, k_derived_unchecked, permutation_solution,
    BraidedSet, MiddleTerm,
};
use reflectwist_core::twist::{
    braid_rep, compose_twists, conjugators, find_twist_data, invert_twist, twist_from_reflection,
    TwistDatum,
};

const SWEEP: usize = DEFAULT_REFLECTION_SWEEP_GATE;

fn all_two_point_solutions() -> Vec<BraidedSet> {
    enumerate_solutions(2, SolutionConstraints::default()).unwrap()
}

fn nondegenerate_corpus(n: usize) -> Vec<BraidedSet> {
    let up_to_iso = n == 4; // keep the size-4 sweep affordable
    enumerate_solutions(n, SolutionConstraints { nondegenerate: true, up_to_iso, ..Default::default() })
        .unwrap()
}

fn all_maps(n: usize) -> Vec<FiniteMap> {
    let total = n.pow(n as u32);
    (0..total)
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

#[test]
fn operator_form_agrees_with_componentwise_form() {
    // r12 r23 r12 = r23 r12 r23 as cube maps iff the three component
    // equations hold, over every table pair on two points.
    for code in 0..256usize {
        let mut digits = [0usize; 8];
        let mut c = code;
        for d in digits.iter_mut().rev() {
            *d = c & 1;
            c >>= 1;
        }
        let bs =
            BraidedSet::without_ybe_check(2, digits[0..4].to_vec(), digits[4..8].to_vec()).unwrap();
        let r = bs.as_square_map();
        let r12 = CubeMap::on_first_legs(&r);
        let r23 = CubeMap::on_last_legs(&r);
        let operator = r12.compose(&r23).compose(&r12) == r23.compose(&r12).compose(&r23);
        assert_eq!(operator, bs.first_ybe_violation().is_none());
    }
}

#[test]
fn identity_is_a_reflection_for_every_solution() {
    for bs in all_two_point_solutions() {
        assert!(check_reflection(&bs, &FiniteMap::identity(2), Side::Right).holds);
        assert!(check_reflection(&bs, &FiniteMap::identity(2), Side::Left).holds);
    }
    for bs in enumerate_solutions(3, SolutionConstraints { up_to_iso: true, ..Default::default() })
        .unwrap()
    {
        assert!(check_reflection(&bs, &FiniteMap::identity(3), Side::Right).holds);
    }
}

#[test]
fn constant_reflections_follow_the_fixed_point_rule() {
    // On r(a,b) = (lambda(b), a) the constant map to c reflects iff
    // lambda(c) = c, so constant maps are not reflections in general.
    let plus1 = FiniteMap::new(vec![1, 2, 0]).unwrap();
    let bs = permutation_solution(&plus1, &FiniteMap::identity(3)).unwrap();
    for c in 0..3 {
        assert!(!check_reflection(&bs, &FiniteMap::constant(3, c), Side::Right).holds);
    }
    let swap_fix = FiniteMap::new(vec![1, 0, 2]).unwrap();
    let bs = permutation_solution(&swap_fix, &FiniteMap::identity(3)).unwrap();
    assert!(check_reflection(&bs, &FiniteMap::constant(3, 2), Side::Right).holds);
    assert!(!check_reflection(&bs, &FiniteMap::constant(3, 0), Side::Right).holds);
}

#[test]
fn twists_of_reflections_validate_on_nondegenerate_corpus() {
    for n in 1..=3usize {
        for bs in nondegenerate_corpus(n) {
            for k in enumerate_reflections(&bs, Side::Right, SWEEP).unwrap() {
                let twisted = k_derived(&bs, &k).expect("reflection twists stay solutions");
                assert!(twisted.flags().ybe_holds);
                assert!(guitar_map(&bs, &k).is_bijective());
                // the guitar map intertwines the two solutions
                assert!(check_d_homomorphism(&bs, &twisted, &guitar_map(&bs, &k)).unwrap());
            }
        }
    }
}

#[test]
fn derived_solution_is_the_identity_twist() {
    for n in 1..=4usize {
        for bs in nondegenerate_corpus(n) {
            assert_eq!(
                derived_solution(&bs).unwrap(),
                k_derived(&bs, &FiniteMap::identity(n)).unwrap()
            );
        }
    }
    // also on a right-nondegenerate but left-degenerate solution
    let bs = BraidedSet::new(2, vec![0, 0, 0, 0], vec![0, 1, 0, 1]).unwrap();
    assert!(!bs.is_left_nondegenerate());
    assert_eq!(derived_solution(&bs).unwrap(), k_derived(&bs, &FiniteMap::identity(2)).unwrap());
}

#[test]
fn composed_twist_closed_form_matches_double_conjugation() {
    // The k-after-h middle term reproduces the double conjugation on every
    // enumerated (bs, k, h); the other orientation fails somewhere.
    let mut instances = 0usize;
    let mut hk_failures = 0usize;
    for n in 2..=4usize {
        for bs in nondegenerate_corpus(n) {
            for k in enumerate_reflections(&bs, Side::Right, SWEEP).unwrap() {
                let once = k_derived(&bs, &k).unwrap();
                for h in enumerate_reflections(&once, Side::Right, SWEEP).unwrap() {
                    let out = composed_twist_explicit(&bs, &k, &h, MiddleTerm::KAfterH).unwrap();
                    assert!(out.matches_double_conjugation);
                    // independent recomputation of the oracle
                    assert_eq!(out.map, k_derived(&once, &h).unwrap().as_square_map());
                    let alt = composed_twist_explicit(&bs, &k, &h, MiddleTerm::HAfterK);
                    match alt {
                        Ok(alt) => {
                            if !alt.matches_double_conjugation {
                                hk_failures += 1;
                            }
                        }
                        Err(_) => hk_failures += 1, // middle rows degenerate
                    }
                    instances += 1;
                }
            }
        }
    }
    assert!(instances > 1000, "corpus too small: {instances}");
    assert!(hk_failures > 0, "the two orientations never diverged");
}

#[test]
fn composition_condition_is_equivalent_to_table_equality() {
    for n in 2..=3usize {
        for bs in nondegenerate_corpus(n) {
            for k in enumerate_reflections(&bs, Side::Right, SWEEP).unwrap() {
                let once = k_derived(&bs, &k).unwrap();
                for h in enumerate_reflections(&once, Side::Right, SWEEP).unwrap() {
                    let target = k_derived(&once, &h).unwrap();
                    for ell in all_maps(n) {
                        let cond = composition_condition(&bs, &k, &h, &ell).unwrap();
                        let tables = k_derived_unchecked(&bs, &ell).unwrap() == target;
                        assert_eq!(cond, tables);
                    }
                }
            }
        }
    }
}

#[test]
fn perturbing_ell_flips_condition_and_tables_together() {
    // order-4 spot check of the same equivalence
    let bs = nondegenerate_corpus(4)
        .into_iter()
        .find(|bs| {
            // pick one with a nontrivial right action
            (0..4).any(|b| bs.rho_row(b) != (0..4).collect::<Vec<_>>())
        })
        .unwrap();
    let ks = enumerate_reflections(&bs, Side::Right, SWEEP).unwrap();
    let k = &ks[ks.len() - 1];
    let once = k_derived(&bs, k).unwrap();
    let hs = enumerate_reflections(&once, Side::Right, SWEEP).unwrap();
    let h = &hs[hs.len() - 1];
    let target = k_derived(&once, h).unwrap();
    // the canonical ell from the row condition
    for ell in all_maps(4).into_iter().take(64) {
        let cond = composition_condition(&bs, k, h, &ell).unwrap();
        let tables = k_derived_unchecked(&bs, &ell).unwrap() == target;
        assert_eq!(cond, tables);
    }
}

#[test]
fn permutation_solution_reflections_are_the_centralizer() {
    use reflectwist_core::perm;
    for n in 1..=4usize {
        let mut lam = perm::identity(n);
        loop {
            let lambda = FiniteMap::new(lam.clone()).unwrap();
            let bs = permutation_solution(&lambda, &FiniteMap::identity(n)).unwrap();
            for k in all_maps(n) {
                let commutes =
                    (0..n).all(|x| k.apply(lambda.apply(x)) == lambda.apply(k.apply(x)));
                assert_eq!(check_reflection(&bs, &k, Side::Right).holds, commutes);
            }
            if !perm::next_permutation(&mut lam) {
                break;
            }
        }
    }
}

#[test]
fn derived_solution_depends_only_on_the_action_product() {
    use reflectwist_core::perm;
    // group commuting pairs (lambda, rho) by rho o lambda and compare the
    // derived solutions within each group
    for n in 2..=4usize {
        let perms = perm::all_permutations(n);
        let mut by_product: std::collections::BTreeMap<Vec<usize>, BraidedSet> =
            Default::default();
        for l in &perms {
            for r in &perms {
                if perm::compose(l, r) != perm::compose(r, l) {
                    continue;
                }
                let bs = permutation_solution(
                    &FiniteMap::new(l.clone()).unwrap(),
                    &FiniteMap::new(r.clone()).unwrap(),
                )
                .unwrap();
                let derived = derived_solution(&bs).unwrap();
                let product = perm::compose(r, l);
                match by_product.get(&product) {
                    None => {
                        by_product.insert(product, derived);
                    }
                    Some(seen) => assert_eq!(*seen, derived),
                }
            }
        }
    }
}

#[test]
fn reflection_twist_data_compose_and_invert_cleanly() {
    let bs = fixtures::dihedral_quandle_3();
    let ks = enumerate_reflections(&bs, Side::Right, SWEEP).unwrap();
    for k in &ks {
        let t1 = twist_from_reflection(&bs, k).unwrap();
        let once = t1.twist(&bs);
        for h in enumerate_reflections(&once, Side::Right, SWEEP).unwrap() {
            let t2 = twist_from_reflection(&once, &h).unwrap();
            let t12 = compose_twists(&bs, &t1, &t2).unwrap();
            let twice = t2.twist(&once);
            // associativity against a third factor
            for l in enumerate_reflections(&twice, Side::Right, SWEEP).unwrap() {
                let t3 = twist_from_reflection(&twice, &l).unwrap();
                let left = compose_twists(&bs, &t12, &t3).unwrap();
                let t23 = compose_twists(&once, &t2, &t3).unwrap();
                let right = compose_twists(&bs, &t1, &t23).unwrap();
                assert_eq!(left, right);
            }
            // inverse really undoes
            let t12_inv = invert_twist(&bs, &t12).unwrap();
            assert_eq!(t12_inv.twist(&t12.twist(&bs)), bs);
        }
    }
}

#[test]
fn twist_existence_matches_conjugator_existence_on_two_points() {
    use reflectwist_core::perm;
    // Full sweep: every invertible solution on two points, every bijective F.
    let invertible: Vec<BraidedSet> = all_two_point_solutions()
        .into_iter()
        .filter(|bs| bs.flags().invertible)
        .collect();
    assert!(!invertible.is_empty());
    let all_f: Vec<SquareMap> = perm::all_permutations(4)
        .into_iter()
        .map(|p| SquareMap::from_table(2, p).unwrap())
        .collect();
    assert_eq!(all_f.len(), 24);
    for bs in &invertible {
        let rep = braid_rep(bs).unwrap();
        for f in &all_f {
            let pairs = find_twist_data(bs, f, 27).unwrap();
            let twisted = reflectwist_core::twist::twisted_solution(bs, f).unwrap();
            if twisted.first_ybe_violation().is_some() {
                // no twist can exist; the twisted generators also fail the
                // braid relation, so no conjugate representation exists
                assert!(pairs.is_empty());
                assert!(braid_rep(&twisted).is_err());
                continue;
            }
            let rep_twisted = braid_rep(&twisted).unwrap();
            let found = conjugators(&rep, &rep_twisted, 27).unwrap();
            assert_eq!(pairs.is_empty(), found.is_empty());
            // the bijection between pairs and conjugators preserves counts
            assert_eq!(pairs.len(), found.len());
        }
    }
}

#[test]
fn automorphism_twists_fix_the_solution() {
    // every relabeling symmetry of the dihedral quandle solution, found by
    // scanning all carrier permutations, twists the solution onto itself
    use reflectwist_core::perm;
    use reflectwist_core::twist::twist_from_isomorphism;
    let bs = fixtures::dihedral_quandle_3();
    let mut automorphisms = 0usize;
    let mut p = perm::identity(3);
    loop {
        if bs.relabel(&p) == bs {
            automorphisms += 1;
            let f = FiniteMap::new(p.clone()).unwrap();
            let t = twist_from_isomorphism(&bs, &f).unwrap();
            assert_eq!(t.twist(&bs), bs);
        }
        if !perm::next_permutation(&mut p) {
            break;
        }
    }
    assert!(automorphisms > 1, "the quandle has nontrivial symmetries");
}

#[test]
fn identity_twist_data_count_is_positive_where_expected() {
    let bs = fixtures::flip(2);
    let t = TwistDatum::identity(2);
    let pairs = find_twist_data(&bs, &t.f, 27).unwrap();
    assert!(pairs.contains(&(t.phi.clone(), t.psi.clone())));
}
