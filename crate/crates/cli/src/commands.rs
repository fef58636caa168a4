//! Command implementations. Every command prints exactly one JSON report
//! (or one JSON object per line for enumerations) and returns an exit code:
//! 0 all checks pass, 1 a mathematical property failed, 2 malformed input,
//! 3 a size gate was exceeded.

use serde_json::{json, Value};

use reflectwist_core::brace::{
    braiding_from_skewbrace, check_braiding, check_group_reflection, BraidedGroup,
};
use reflectwist_core::group_twist::check_group_drinfeld_twist;
use reflectwist_core::map::Side;
use reflectwist_core::search::{
    ell_counterexamples_for_brace, enumerate_group_reflections, enumerate_groups,
    enumerate_reflections, enumerate_skew_braces, enumerate_solutions, BraceStrategy,
    SolutionConstraints, DEFAULT_REFLECTION_SWEEP_GATE,
};
use reflectwist_core::solution::{check_reflection, derived_solution, k_derived};
use reflectwist_core::twist::{
    check_drinfeld_twist, compose_twists, invert_twist, twist_from_reflection, TwistDatum,
};
use reflectwist_core::words::{
    garside_commutation_check, monoid_reflection_check, GradedComponent,
};
use reflectwist_core::Error as CoreError;

use crate::formats::{self, LoadError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MATH_FAILURE: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_GATE: i32 = 3;

/// State gates, possibly overridden by REFLECTWIST_SIZE_GATE.
pub struct Gates {
    pub words: usize,
    pub cube: usize,
    pub reflections: usize,
}

impl Gates {
    pub fn from_env() -> Gates {
        let over = std::env::var("REFLECTWIST_SIZE_GATE")
            .ok()
            .and_then(|v| v.parse::<usize>().ok());
        Gates {
            words: over.unwrap_or(1_000_000),
            cube: over.unwrap_or(27),
            reflections: over.unwrap_or(DEFAULT_REFLECTION_SWEEP_GATE),
        }
    }
}

pub struct Outcome {
    pub report: Value,
    pub exit: i32,
}

fn ok(report: Value) -> Outcome {
    Outcome { report, exit: EXIT_OK }
}

fn verdict(holds: bool, report: Value) -> Outcome {
    Outcome { report, exit: if holds { EXIT_OK } else { EXIT_MATH_FAILURE } }
}

pub fn core_error_exit(e: &CoreError) -> i32 {
    match e {
        CoreError::Shape { .. } | CoreError::Range { .. } => EXIT_MALFORMED,
        CoreError::SizeLimitExceeded { .. } => EXIT_GATE,
        _ => EXIT_MATH_FAILURE,
    }
}

pub fn load_error_outcome(e: &LoadError) -> Outcome {
    let exit = match e {
        LoadError::Core(ce) => core_error_exit(ce),
        _ => EXIT_MALFORMED,
    };
    Outcome {
        report: json!({"format_version": 1, "error": e.to_string()}),
        exit,
    }
}

fn core_error_outcome(command: &str, e: &CoreError) -> Outcome {
    Outcome {
        report: json!({
            "format_version": 1,
            "command": command,
            "error": e.to_string(),
        }),
        exit: core_error_exit(e),
    }
}

fn side_of(s: &str) -> Option<Side> {
    match s {
        "right" => Some(Side::Right),
        "left" => Some(Side::Left),
        _ => None,
    }
}

pub fn check_ybe(path: &str) -> Result<Outcome, LoadError> {
    let bs = formats::load_solution(path)?;
    let violation = bs.first_ybe_violation();
    let flags = bs.flags();
    Ok(verdict(
        violation.is_none(),
        json!({
            "format_version": 1,
            "command": "check.ybe",
            "ok": violation.is_none(),
            "witness": violation.map(|(comp, a, b, c)| json!({"component": comp, "triple": [a, b, c]})),
            "flags": {
                "invertible": flags.invertible,
                "involutive": flags.involutive,
                "left_nondegenerate": flags.left_nondegenerate,
                "right_nondegenerate": flags.right_nondegenerate,
            },
        }),
    ))
}

pub fn check_braiding_cmd(group_path: &str, solution_path: &str) -> Result<Outcome, LoadError> {
    let g = formats::load_group(group_path)?;
    let bs = formats::load_solution(solution_path)?;
    if g.n() != bs.n() {
        return Err(CoreError::SizeMismatch { left: g.n(), right: bs.n() }.into());
    }
    let chk = check_braiding(&g, &bs);
    Ok(verdict(
        chk.holds,
        json!({
            "format_version": 1,
            "command": "check.braiding",
            "ok": chk.holds,
            "witness": chk.violation.map(|(axiom, w)| json!({
                "axiom": format!("{axiom:?}"),
                "at": [w.0, w.1, w.2],
            })),
        }),
    ))
}

pub fn check_reflection_cmd(
    solution_path: &str,
    map_path: &str,
    side: &str,
) -> Result<Outcome, LoadError> {
    let bs = formats::load_solution(solution_path)?;
    let k = formats::load_map(map_path, bs.n())?;
    let Some(side) = side_of(side) else {
        return Err(CoreError::Shape { expected: 0, found: 0 }.into());
    };
    let chk = check_reflection(&bs, &k, side);
    Ok(verdict(
        chk.holds,
        json!({
            "format_version": 1,
            "command": "check.reflection",
            "ok": chk.holds,
            "witness": chk.witness.map(|(comp, a, b)| json!({"component": comp, "pair": [a, b]})),
        }),
    ))
}

pub fn check_group_reflection_cmd(
    group_path: &str,
    solution_path: &str,
    map_path: &str,
) -> Result<Outcome, LoadError> {
    let g = formats::load_group(group_path)?;
    let bs = formats::load_solution(solution_path)?;
    let k = formats::load_map(map_path, g.n())?;
    let bg = BraidedGroup::new(g, bs).map_err(LoadError::Core)?;
    let rep = check_group_reflection(&bg, &k);
    Ok(verdict(
        rep.is_group_reflection(),
        json!({
            "format_version": 1,
            "command": "check.group-reflection",
            "ok": rep.is_group_reflection(),
            "unit": rep.unit_ok,
            "product_witness": rep.product_witness,
            "involutivity_witness": rep.involutivity_witness,
            "square_rule_witness": rep.square_rule_witness,
            "set_level_holds": rep.set_level.holds,
        }),
    ))
}

pub fn check_twist_cmd(solution_path: &str, twist_path: &str) -> Result<Outcome, LoadError> {
    let bs = formats::load_solution(solution_path)?;
    let (f, phi, psi) = formats::load_twist(twist_path)?;
    let chk = check_drinfeld_twist(&bs, &f, &phi, &psi).map_err(LoadError::Core)?;
    Ok(verdict(
        chk.holds,
        json!({
            "format_version": 1,
            "command": "check.twist",
            "ok": chk.holds,
            "witness": chk.violation.map(|(axiom, w)| json!({
                "axiom": format!("{axiom:?}"),
                "at": [w.0, w.1, w.2],
            })),
            "twisted_ybe_holds": chk.twisted_ybe_holds,
        }),
    ))
}

pub fn check_group_twist_cmd(
    group_path: &str,
    solution_path: &str,
    twist_path: &str,
) -> Result<Outcome, LoadError> {
    let g = formats::load_group(group_path)?;
    let bs = formats::load_solution(solution_path)?;
    let (f, phi, psi) = formats::load_twist(twist_path)?;
    let bg = BraidedGroup::new(g, bs).map_err(LoadError::Core)?;
    let chk = check_group_drinfeld_twist(&bg, &f, &phi, &psi).map_err(LoadError::Core)?;
    let holds = chk.holds();
    Ok(verdict(
        holds,
        json!({
            "format_version": 1,
            "command": "check.group-twist",
            "ok": holds,
            "set_level_ok": chk.set_level.holds,
            "set_level_witness": chk.set_level.violation.map(|(axiom, w)| json!({
                "axiom": format!("{axiom:?}"), "at": [w.0, w.1, w.2],
            })),
            "group_level_witness": chk.violation.map(|(axiom, w)| json!({
                "axiom": format!("{axiom:?}"), "at": [w.0, w.1, w.2],
            })),
            "twisted_group": chk.twisted_group.map(|g| crate::formats::group_to_file(&g).mul),
            "twisted_braiding_holds": chk.twisted_braiding_holds,
        }),
    ))
}

pub fn twist_from_reflection_cmd(
    solution_path: &str,
    map_path: &str,
) -> Result<Outcome, LoadError> {
    let bs = formats::load_solution(solution_path)?;
    let k = formats::load_map(map_path, bs.n())?;
    match twist_from_reflection(&bs, &k) {
        Ok(t) => Ok(ok(json!({
            "format_version": 1,
            "command": "twist.from-reflection",
            "twist": formats::twist_to_file(&t),
        }))),
        Err(e) => Ok(core_error_outcome("twist.from-reflection", &e)),
    }
}

pub fn twist_compose_cmd(
    solution_path: &str,
    first_path: &str,
    second_path: &str,
) -> Result<Outcome, LoadError> {
    let bs = formats::load_solution(solution_path)?;
    let (f1, phi1, psi1) = formats::load_twist(first_path)?;
    let (f2, phi2, psi2) = formats::load_twist(second_path)?;
    let t1 = TwistDatum::validate(&bs, f1, phi1, psi1).map_err(LoadError::Core)?;
    let once = t1.twist(&bs);
    let t2 = TwistDatum::validate(&once, f2, phi2, psi2).map_err(LoadError::Core)?;
    match compose_twists(&bs, &t1, &t2) {
        Ok(t) => Ok(ok(json!({
            "format_version": 1,
            "command": "twist.compose",
            "twist": formats::twist_to_file(&t),
        }))),
        Err(e) => Ok(core_error_outcome("twist.compose", &e)),
    }
}

pub fn twist_invert_cmd(solution_path: &str, twist_path: &str) -> Result<Outcome, LoadError> {
    let bs = formats::load_solution(solution_path)?;
    let (f, phi, psi) = formats::load_twist(twist_path)?;
    let t = TwistDatum::validate(&bs, f, phi, psi).map_err(LoadError::Core)?;
    match invert_twist(&bs, &t) {
        Ok(t) => Ok(ok(json!({
            "format_version": 1,
            "command": "twist.invert",
            "twist": formats::twist_to_file(&t),
        }))),
        Err(e) => Ok(core_error_outcome("twist.invert", &e)),
    }
}

pub fn derive_cmd(solution_path: &str, map_path: Option<&str>) -> Result<Outcome, LoadError> {
    let bs = formats::load_solution(solution_path)?;
    let result = match map_path {
        None => derived_solution(&bs),
        Some(path) => {
            let k = formats::load_map(path, bs.n())?;
            k_derived(&bs, &k)
        }
    };
    match result {
        Ok(out) => Ok(ok(json!({
            "format_version": 1,
            "command": "derive",
            "solution": formats::solution_to_file(&out),
        }))),
        Err(e) => Ok(core_error_outcome("derive", &e)),
    }
}

pub fn monoid_classes_cmd(
    solution_path: &str,
    degree: usize,
    gates: &Gates,
) -> Result<Outcome, LoadError> {
    let bs = formats::load_solution(solution_path)?;
    match GradedComponent::build(&bs, degree, gates.words) {
        Ok(comp) => Ok(ok(json!({
            "format_version": 1,
            "command": "monoid.classes",
            "degree": degree,
            "classes": comp.classes(),
        }))),
        Err(e) => Ok(core_error_outcome("monoid.classes", &e)),
    }
}

pub fn monoid_garside_cmd(
    solution_path: &str,
    map_path: &str,
    degree: usize,
    gates: &Gates,
) -> Result<Outcome, LoadError> {
    let bs = formats::load_solution(solution_path)?;
    let k = formats::load_map(map_path, bs.n())?;
    match garside_commutation_check(&bs, &k, degree, gates.words) {
        Ok(holds) => Ok(verdict(
            holds,
            json!({
                "format_version": 1,
                "command": "monoid.garside",
                "degree": degree,
                "ok": holds,
            }),
        )),
        Err(e) => Ok(core_error_outcome("monoid.garside", &e)),
    }
}

pub fn monoid_re_check_cmd(
    solution_path: &str,
    map_path: &str,
    degree: usize,
    gates: &Gates,
) -> Result<Outcome, LoadError> {
    let bs = formats::load_solution(solution_path)?;
    let k = formats::load_map(map_path, bs.n())?;
    match monoid_reflection_check(&bs, &k, degree, gates.words) {
        Ok(holds) => Ok(verdict(
            holds,
            json!({
                "format_version": 1,
                "command": "monoid.re-check",
                "max_total_degree": degree,
                "ok": holds,
            }),
        )),
        Err(e) => Ok(core_error_outcome("monoid.re-check", &e)),
    }
}

/// Enumeration commands print one JSON object per line in canonical order.
pub struct Lines {
    pub lines: Vec<String>,
    pub exit: i32,
}

pub fn enumerate_solutions_cmd(
    order: usize,
    nondegenerate: bool,
    involutive: bool,
    up_to_iso: bool,
) -> Lines {
    match enumerate_solutions(
        order,
        SolutionConstraints { nondegenerate, involutive, up_to_iso },
    ) {
        Ok(found) => Lines {
            lines: found
                .iter()
                .map(|bs| {
                    serde_json::to_string(&formats::solution_to_file(bs)).expect("serialize")
                })
                .collect(),
            exit: EXIT_OK,
        },
        Err(e) => Lines {
            lines: vec![json!({"format_version": 1, "error": e.to_string()}).to_string()],
            exit: core_error_exit(&e),
        },
    }
}

pub fn enumerate_reflections_cmd(solution_path: &str, side: &str, gates: &Gates) -> Lines {
    let bs = match formats::load_solution(solution_path) {
        Ok(bs) => bs,
        Err(e) => {
            let out = load_error_outcome(&e);
            return Lines { lines: vec![out.report.to_string()], exit: out.exit };
        }
    };
    let Some(side) = side_of(side) else {
        return Lines {
            lines: vec![json!({"format_version": 1, "error": "side must be left or right"})
                .to_string()],
            exit: EXIT_MALFORMED,
        };
    };
    match enumerate_reflections(&bs, side, gates.reflections) {
        Ok(found) => Lines {
            lines: found.iter().map(|k| json!({"k": k.images()}).to_string()).collect(),
            exit: EXIT_OK,
        },
        Err(e) => Lines {
            lines: vec![json!({"format_version": 1, "error": e.to_string()}).to_string()],
            exit: core_error_exit(&e),
        },
    }
}

pub fn enumerate_groups_cmd(order: usize) -> Lines {
    match enumerate_groups(order) {
        Ok(found) => Lines {
            lines: found
                .iter()
                .map(|g| serde_json::to_string(&formats::group_to_file(g)).expect("serialize"))
                .collect(),
            exit: EXIT_OK,
        },
        Err(e) => Lines {
            lines: vec![json!({"format_version": 1, "error": e.to_string()}).to_string()],
            exit: core_error_exit(&e),
        },
    }
}

pub fn enumerate_skew_braces_cmd(order: usize, strategy: &str) -> Lines {
    let strategy = match strategy {
        "holomorph" => BraceStrategy::Holomorph,
        "direct" => BraceStrategy::Direct,
        _ => {
            return Lines {
                lines: vec![json!({
                    "format_version": 1,
                    "error": "strategy must be holomorph or direct",
                })
                .to_string()],
                exit: EXIT_MALFORMED,
            }
        }
    };
    match enumerate_skew_braces(order, strategy) {
        Ok(found) => Lines {
            lines: found
                .iter()
                .map(|sb| {
                    serde_json::to_string(&formats::skew_brace_to_file(sb)).expect("serialize")
                })
                .collect(),
            exit: EXIT_OK,
        },
        Err(e) => Lines {
            lines: vec![json!({"format_version": 1, "error": e.to_string()}).to_string()],
            exit: core_error_exit(&e),
        },
    }
}

pub fn enumerate_group_reflections_cmd(brace_path: &str) -> Lines {
    let sb = match formats::load_skew_brace(brace_path) {
        Ok(sb) => sb,
        Err(e) => {
            let out = load_error_outcome(&e);
            return Lines { lines: vec![out.report.to_string()], exit: out.exit };
        }
    };
    let bg = match braiding_from_skewbrace(&sb) {
        Ok(bg) => bg,
        Err(e) => {
            return Lines {
                lines: vec![json!({"format_version": 1, "error": e.to_string()}).to_string()],
                exit: core_error_exit(&e),
            }
        }
    };
    match enumerate_group_reflections(&bg) {
        Ok(found) => Lines {
            lines: found.iter().map(|k| json!({"k": k.images()}).to_string()).collect(),
            exit: EXIT_OK,
        },
        Err(e) => Lines {
            lines: vec![json!({"format_version": 1, "error": e.to_string()}).to_string()],
            exit: core_error_exit(&e),
        },
    }
}

/// The counterexample hunt; braces are scanned independently, so the work
/// is fanned out over `jobs` threads and reassembled in canonical order.
pub fn hunt_ell_cmd(max_order: usize, bijective_k: bool, jobs: usize) -> Result<Outcome, CoreError> {
    let mut tasks = Vec::new();
    for order in 1..=max_order {
        for (idx, sb) in enumerate_skew_braces(order, BraceStrategy::Holomorph)?
            .into_iter()
            .enumerate()
        {
            tasks.push((order, idx, sb));
        }
    }
    let jobs = jobs.max(1);
    let results: Vec<Vec<reflectwist_core::search::EllCounterexample>> = if jobs == 1 {
        tasks
            .iter()
            .map(|(order, idx, sb)| {
                ell_counterexamples_for_brace(*order, *idx, sb, bijective_k)
            })
            .collect::<Result<_, _>>()?
    } else {
        let chunks: Vec<Vec<usize>> = (0..jobs)
            .map(|j| (j..tasks.len()).step_by(jobs).collect())
            .collect();
        let mut slots: Vec<Option<Result<Vec<_>, CoreError>>> =
            (0..tasks.len()).map(|_| None).collect();
        std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for chunk in &chunks {
                let tasks = &tasks;
                handles.push(scope.spawn(move || {
                    chunk
                        .iter()
                        .map(|&i| {
                            let (order, idx, sb) = &tasks[i];
                            (i, ell_counterexamples_for_brace(*order, *idx, sb, bijective_k))
                        })
                        .collect::<Vec<_>>()
                }));
            }
            for handle in handles {
                for (i, res) in handle.join().expect("worker panicked") {
                    slots[i] = Some(res);
                }
            }
        });
        slots
            .into_iter()
            .map(|slot| slot.expect("all tasks assigned"))
            .collect::<Result<_, _>>()?
    };
    let findings: Vec<Value> = results
        .into_iter()
        .flatten()
        .map(|c| {
            json!({
                "order": c.order,
                "brace_index": c.brace_index,
                "k": c.k.images(),
                "k_bijective": c.k_bijective,
                "h": c.h.images(),
                "ell": c.ell.images(),
                "fails_for_base": c.fails_for_base,
                "fails_for_twisted": c.fails_for_twisted,
                "set_level_base": c.set_level_base,
                "set_level_twisted": c.set_level_twisted,
            })
        })
        .collect();
    Ok(ok(json!({
        "format_version": 1,
        "command": "hunt.ell-counterexamples",
        "max_order": max_order,
        "bijective_k": bijective_k,
        "count": findings.len(),
        "findings": findings,
    })))
}
