//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! The process exits successfully even when a criterion fails, so that the
//! workspace test suite reports the run rather than aborting on it; set
//! `G235_ACCEPTANCE_STRICT=1` to turn any failure into a nonzero exit.

use std::time::Instant;

use g235::abnormal::{b_gamma, b_scalars, h_field, GammaBranch};
use g235::algebra::parse_expression;
use g235::cartan::{assemble_from_cartan_coeffs, cartan_chain, extract_cartan_coeffs, flat_coframe, gauged_flat_coframe, verify_structure_equations};
use g235::diffgeo::{growth_vector, structural_functions, DIM};
use g235::fundform::frame_change_check;
use g235::oracle::{oracle_report, order_stable, reparametrization_check};
use g235::{adapted_frame, int, rat, AdaptedMode, Invariants, OneForm, OracleOptions, PiForm, PipelineOptions, Rational, RationalFunction, Vars, VectorField};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<(bool, String), String>;
type Criterion = (&'static str, fn() -> Outcome);

struct Model {
    name: &'static str,
    f: &'static str,
    points: Vec<Vec<Rational>>,
}

fn vars() -> Vars {
    Vars::new(&["x", "y", "p", "q", "z"])
}

fn field(c: &[&str]) -> VectorField {
    VectorField::parse(c, &vars()).expect("field parses")
}

fn monge_x1() -> VectorField {
    field(&["0", "0", "0", "1", "0"])
}

fn monge_x2(f: &str) -> VectorField {
    field(&["1", "p", "q", "0", f])
}

fn pt(v: [(i64, i64); 5]) -> Vec<Rational> {
    v.iter().map(|&(a, b)| rat(a, b)).collect()
}

fn models() -> Vec<Model> {
    let base = vec![pt([(0, 1), (0, 1), (0, 1), (1, 1), (0, 1)]), pt([(1, 2), (1, 3), (0, 1), (2, 1), (0, 1)])];
    vec![
        Model { name: "q^2", f: "q^2", points: base.clone() },
        Model { name: "q^3", f: "q^3", points: base.clone() },
        Model { name: "q^4", f: "q^4", points: base },
        Model { name: "q^3+q^2 y", f: "q^3 + q^2*y", points: vec![pt([(1, 2), (1, 3), (0, 1), (1, 1), (0, 1)])] },
    ]
}

fn covectors() -> Vec<(Rational, Rational)> {
    vec![(int(0), int(1)), (int(1), int(1))]
}

fn opts() -> PipelineOptions {
    PipelineOptions::default()
}

fn invariants(m: &Model) -> Result<Invariants, String> {
    Invariants::compute(&monge_x1(), &monge_x2(m.f), opts()).map_err(|e| format!("{}: {e}", m.name))
}

fn show(r: &Rational) -> String {
    g235::io::rational_to_string(r)
}

/// Closed-form pipeline versus oracle, exact equality.
fn criterion_1() -> Outcome {
    let mut checked = 0;
    let mut slowest = 0u128;
    for m in models().iter().take(3) {
        let inv = invariants(m)?;
        for q in &m.points {
            for (u4, u5) in covectors() {
                let t = Instant::now();
                let formula = (inv.rho.eval45(q, &u4, &u5).map_err(|e| e.to_string())?, inv.density.eval45(q, &u4, &u5).map_err(|e| e.to_string())?);
                let rep = oracle_report(&inv.abnormal.frame, q, &u4, &u5, OracleOptions::default()).map_err(|e| format!("{}: {e}", m.name))?;
                slowest = slowest.max(t.elapsed().as_millis());
                if rep.canonical != formula {
                    return Ok((
                        false,
                        format!(
                            "{} at {:?}: formula ({}, {}) vs oracle ({}, {})",
                            m.name,
                            q,
                            show(&formula.0),
                            show(&formula.1),
                            show(&rep.canonical.0),
                            show(&rep.canonical.1)
                        ),
                    ));
                }
                checked += 1;
            }
        }
    }
    Ok((true, format!("{checked} (model, point, covector) cases equal; slowest {slowest} ms")))
}

/// The three oracle routes agree.
fn criterion_2() -> Outcome {
    let mut checked = 0;
    for m in models() {
        let inv = invariants(&m)?;
        for q in &m.points {
            for (u4, u5) in covectors() {
                let rep = oracle_report(&inv.abnormal.frame, q, &u4, &u5, OracleOptions::default()).map_err(|e| e.to_string())?;
                if let Err(e) = rep.consensus() {
                    return Ok((false, format!("{}: {e}", m.name)));
                }
                checked += 1;
            }
        }
    }
    Ok((true, format!("{checked} cases, lemma = canonical frame = projective")))
}

/// The flat model has vanishing invariants.
fn criterion_3() -> Outcome {
    let m = &models()[0];
    let inv = invariants(m)?;
    if !inv.rho.is_zero() || !inv.density.is_zero() {
        return Ok((false, "symbolic rho or A nonzero".into()));
    }
    for q in &m.points {
        for (u4, u5) in covectors() {
            let rep = oracle_report(&inv.abnormal.frame, q, &u4, &u5, OracleOptions::default()).map_err(|e| e.to_string())?;
            if rep.canonical != (int(0), int(0)) {
                return Ok((false, format!("oracle gives ({}, {})", show(&rep.canonical.0), show(&rep.canonical.1))));
            }
        }
    }
    Ok((true, "rho = A = 0 symbolically and at every oracle point".into()))
}

/// Weight 4, rank-one velocity, sign locally constant.
fn criterion_4() -> Outcome {
    let mut checked = 0;
    for m in models() {
        let inv = invariants(&m)?;
        for q in &m.points {
            for (u4, u5) in covectors() {
                let rep = oracle_report(&inv.abnormal.frame, q, &u4, &u5, OracleOptions::default()).map_err(|e| e.to_string())?;
                let ok = rep.weight == 4 && rep.velocity.rank_one && *rep.velocity.k.value() != int(0);
                if !ok {
                    return Ok((false, format!("{}: weight {}, rank one {}", m.name, rep.weight, rep.velocity.rank_one)));
                }
                checked += 1;
            }
        }
    }
    Ok((true, format!("{checked} curves of weight 4 with rank-one velocity of fixed sign")))
}

/// Degrees of homogeneity in the fiber.
fn criterion_5() -> Outcome {
    for m in models() {
        let inv = invariants(&m)?;
        let rho_ok = inv.rho.is_zero() || inv.rho.is_homogeneous_of(2);
        let a_ok = inv.density.is_zero() || inv.density.is_homogeneous_of(4);
        if !rho_ok || !a_ok {
            return Ok((false, format!("{}: rho degree {:?}, A degree {:?}", m.name, inv.rho.homogeneous_degree(), inv.density.homogeneous_degree())));
        }
    }
    Ok((true, "rho of degree 2 and A of degree 4 for every model".into()))
}

/// Covariance of `A` under a change of basis of the distribution.
fn criterion_6() -> Outcome {
    let mut lines = Vec::new();
    let mut all = true;
    for m in [&models()[1], &models()[3]] {
        let f = m.f;
        let x1 = monge_x1();
        let x2 = monge_x2(f);
        let changes: Vec<(&str, VectorField, VectorField)> = vec![
            ("constant shear", x1.clone(), field(&["1", "p", "q", "1", f])),
            ("non-constant shear", x1.clone(), field(&["1", "p", "q", "y", f])),
            ("scaling by 2", field(&["0", "0", "0", "2", "0"]), x2.clone()),
            ("mixing, det 2", field(&["1", "p", "q", "1", f]), field(&["1", "p", "q", "-1", f])),
        ];
        let q = &m.points[0];
        for (label, y1, y2) in changes {
            let r = frame_change_check(&x1, &x2, &y1, &y2, q, opts()).map_err(|e| format!("{}: {label}: {e}", m.name))?;
            let ok = r.fiber_scaling_ok && r.tangential_equal;
            all &= ok;
            let measured = match (&r.measured_factor, r.measured_power) {
                (Some(f), _) if *f == int(1) => "factor 1".to_string(),
                (_, Some(k)) => format!("factor |det|^{k}"),
                (Some(f), None) => format!("factor {}", show(f)),
                (None, _) => "inconsistent factor".to_string(),
            };
            let tangential = if r.tangential_equal { "tangential form invariant" } else { "tangential form changed" };
            lines.push(format!("{} {label}: det {}, fiber {measured}, {tangential}, {}", m.name, show(&r.det), if ok { "ok" } else { "mismatch" }));
        }
    }
    Ok((all, lines.join("; ")))
}

/// Structure equations of the canonical moving frame.
fn criterion_7() -> Outcome {
    let mut min_order = usize::MAX;
    for m in models() {
        let inv = invariants(&m)?;
        for q in &m.points {
            for (u4, u5) in covectors() {
                let rep = oracle_report(&inv.abnormal.frame, q, &u4, &u5, OracleOptions::default()).map_err(|e| e.to_string())?;
                if !rep.frame_equations.ok() {
                    return Ok((false, format!("{}: failing entries {:?}", m.name, rep.frame_equations.failures)));
                }
                min_order = min_order.min(rep.frame_equations.checked_order);
            }
        }
    }
    Ok((min_order >= 2, format!("all entries match, checked to tau-order {min_order}")))
}

/// Reparametrisation rules for random reparametrisations.
fn criterion_8() -> Outcome {
    let m = &models()[3];
    let inv = invariants(m)?;
    let q = &m.points[0];
    let rep = oracle_report(&inv.abnormal.frame, q, &int(1), &int(2), OracleOptions::default()).map_err(|e| e.to_string())?;
    let mut rng = StdRng::seed_from_u64(0x235);
    let mut descr = Vec::new();
    for _ in 0..5 {
        let mut phi = Vec::new();
        for k in 0..5 {
            let mut num = rng.gen_range(-4i64..=4);
            if k == 0 && num == 0 {
                num = 1;
            }
            phi.push(rat(num, rng.gen_range(1i64..=5)));
        }
        let ok = reparametrization_check(&rep.chart, &phi, OracleOptions::default()).map_err(|e| e.to_string())?;
        descr.push(phi.iter().map(show).collect::<Vec<_>>().join(","));
        if !ok {
            return Ok((false, format!("rule fails for phi coefficients [{}]", descr.last().unwrap())));
        }
    }
    Ok((true, format!("generating-function and rho rules hold for 5 seeded reparametrisations, e.g. [{}]", descr[0])))
}

/// Closed form of `b` against its definition on both branches.
fn criterion_9() -> Outcome {
    for m in models() {
        let inv = invariants(&m)?;
        let c = &inv.abnormal.c;
        let (b, _) = b_scalars(c);
        for branch in [GammaBranch::OverU5, GammaBranch::OverU4] {
            let g = b_gamma(c, branch).map_err(|e| e.to_string())?;
            if g != b {
                return Ok((false, format!("{}: branch {branch:?} differs", m.name)));
            }
        }
    }
    Ok((true, "b agrees with both gamma branches for every model".into()))
}

/// Symplectic and tangency conventions.
fn criterion_10() -> Outcome {
    let mut checked = 0;
    for m in models() {
        let inv = invariants(&m)?;
        let frame = &inv.abnormal.frame;
        let c = structural_functions(frame).map_err(|e| e.to_string())?;
        let h = h_field(frame, &c).map_err(|e| format!("{}: {e}", m.name))?;
        if (1..=3).any(|k| !h.on_impulse(k, &c).is_zero()) {
            return Ok((false, format!("{}: h not tangent", m.name)));
        }
        for q in &m.points {
            for (u4, u5) in covectors() {
                let rep = oracle_report(frame, q, &u4, &u5, OracleOptions::default()).map_err(|e| e.to_string())?;
                if !rep.chart.self_test.hamiltonian || !rep.chart.self_test.frame_expression {
                    return Ok((false, format!("{}: sigma self-test failed", m.name)));
                }
                checked += 1;
            }
        }
    }
    Ok((true, format!("sigma(lift(u_i), .) = du_i at {checked} points; h(u1) = h(u2) = h(u3) = 0")))
}

/// Oracle invariants do not depend on the jet order.
fn criterion_11() -> Outcome {
    let mut checked = 0;
    for m in models() {
        let inv = invariants(&m)?;
        for q in &m.points {
            for (u4, u5) in covectors() {
                if !order_stable(&inv.abnormal.frame, q, &u4, &u5, 12, 14).map_err(|e| e.to_string())? {
                    return Ok((false, format!("{}: orders 12 and 14 differ", m.name)));
                }
                checked += 1;
            }
        }
    }
    Ok((true, format!("{checked} cases identical at orders 12 and 14")))
}

/// Cartan chain, negative controls and coefficient round trip.
fn criterion_12() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    let points = vec![pt([(1, 2), (1, 3), (1, 5), (1, 1), (0, 1)]), pt([(0, 1), (0, 1), (0, 1), (0, 1), (0, 1)])];
    for (label, cf) in [("flat coframe", flat_coframe()), ("gauged flat coframe", gauged_flat_coframe())] {
        if !verify_structure_equations(&cf).ok() {
            pass = false;
            notes.push(format!("{label} rejected by the verifier"));
            continue;
        }
        let chain = cartan_chain(&cf, &points, opts()).map_err(|e| format!("{label}: {e}"))?;
        let ok = chain.ok() && chain.identities.pi_ok(PiForm::Expanded);
        pass &= ok;
        notes.push(format!("{label}: chain {}", if ok { "holds" } else { "fails" }));
    }

    let mut rng = StdRng::seed_from_u64(35);
    let base = flat_coframe();
    let mut rejected = 0;
    for _ in 0..10 {
        let coeff = RationalFunction::constant(DIM, rat(rng.gen_range(1i64..=5) * if rng.gen_bool(0.5) { 1 } else { -1 }, rng.gen_range(1i64..=3)));
        let a = rng.gen_range(0..DIM);
        let b = rng.gen_range(0..DIM);
        let eta = OneForm::coordinate(b).scale(&coeff.mul_ref(&RationalFunction::var(DIM, a)));
        let perturbed = if rng.gen_bool(0.5) { base.perturb_omega(rng.gen_range(1..=DIM), &eta) } else { base.perturb_bar(rng.gen_range(1..=7), &eta) };
        if !verify_structure_equations(&perturbed).ok() {
            rejected += 1;
        }
    }
    pass &= rejected == 10;
    notes.push(format!("{rejected}/10 perturbed coframes rejected"));

    let v = Vars::base5();
    let synthetic: [RationalFunction; 5] = ["x1", "2/3", "x2*x3 - 1", "0", "1/(1 + x4^2)"].map(|t| parse_expression(t, &v).expect("parses"));
    let round_trip = extract_cartan_coeffs(&assemble_from_cartan_coeffs(&synthetic)) == synthetic;
    pass &= round_trip;
    notes.push(format!("A1..A5 round trip {}", if round_trip { "exact" } else { "broken" }));
    Ok((pass, notes.join("; ")))
}

fn main() {
    // sanity: every test model is a (2,3,5) distribution at its points
    for m in models() {
        for q in &m.points {
            assert_eq!(growth_vector(&monge_x1(), &monge_x2(m.f), q).unwrap(), (2, 3, 5), "{} is degenerate at {q:?}", m.name);
        }
        adapted_frame(&monge_x1(), &monge_x2(m.f), AdaptedMode::Adapted).unwrap();
    }
    let criteria: [Criterion; 12] = [
        ("closed form equals oracle", criterion_1),
        ("oracle routes agree", criterion_2),
        ("flat model has vanishing invariants", criterion_3),
        ("weight, rank and velocity sign", criterion_4),
        ("fiber homogeneity", criterion_5),
        ("frame-change covariance with factor det^2", criterion_6),
        ("canonical structure equations", criterion_7),
        ("reparametrisation rules", criterion_8),
        ("b closed form", criterion_9),
        ("convention self-tests", criterion_10),
        ("order stability", criterion_11),
        ("Cartan chain and negative controls", criterion_12),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = match run() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            failures += 1;
        }
        println!("criterion {:>2}: {} {name} ({detail}) [{:.1}s]", i + 1, if ok { "PASS" } else { "FAIL" }, start.elapsed().as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 && std::env::var("G235_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1") {
        std::process::exit(1);
    }
}
