//! Subcommand execution: builds a [`Report`] from a validated model.

use std::time::Instant;

use g235::abnormal::{AbnormalError, FiberPolynomial};
use g235::algebra::rational::to_pq;
use g235::cartan::{cartan_chain, verify_structure_equations, CartanError};
use g235::diffgeo::{adapted_frame, growth_vector, structural_functions, DIM};
use g235::fundform::FundformError;
use g235::oracle::{oracle_report, OracleError};
use g235::{AdaptedMode, Invariants, Model, OracleOptions, PiForm, PipelineOptions, QuarticForm, Rational};

use crate::report::*;

/// Which sections a subcommand produces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    /// Growth vector per point.
    Check,
    /// Adapted frame and structural functions.
    Frame,
    /// `ρ` and `A`, symbolic and at points.
    Invariants,
    /// Tangential quartic at points.
    Tangential,
    /// Closed form versus Jacobi-curve oracle.
    Oracle,
    /// Cartan-side chain.
    Cartan,
    /// Everything.
    Report,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Frame => "frame",
            Command::Invariants => "invariants",
            Command::Tangential => "tangential",
            Command::Oracle => "oracle",
            Command::Cartan => "cartan",
            Command::Report => "report",
        }
    }

    fn wants(self, other: Command) -> bool {
        self == other || self == Command::Report
    }
}

/// Why a run stopped before producing a report.
#[derive(Debug)]
pub enum Failure {
    /// Malformed input (exit 2).
    Input(String),
    /// Degenerate geometry: wrong growth vector or a pole (exit 3).
    Degenerate(String),
    /// A computation refused to run for a reason that is a verdict (exit 1).
    Verdict(String),
}

/// Settings shared by all subcommands.
#[derive(Clone, Debug)]
pub struct Settings {
    /// How `X5` is formed.
    pub mode: AdaptedMode,
    /// Oracle options.
    pub oracle: OracleOptions,
    /// Record wall-clock times.
    pub timings: bool,
    /// SHA-256 of the model bytes.
    pub fingerprint: String,
}

fn pq(r: &Rational) -> String {
    to_pq(r)
}

fn terms(f: &FiberPolynomial, names: &[String]) -> Vec<FiberTerm> {
    f.terms().map(|(e, c)| FiberTerm { u4: e[3], u5: e[4], coeff: c.display(names).to_string() }).collect()
}

fn quartic(q: &QuarticForm) -> QuarticOut {
    QuarticOut { basis: q.basis.clone(), coeffs: q.coeffs.iter().map(pq).collect() }
}

fn classify_geometry(e: g235::GeometryError) -> Failure {
    Failure::Degenerate(e.to_string())
}

fn classify_fundform(e: FundformError) -> Failure {
    match e {
        FundformError::Geometry(g) => classify_geometry(g),
        FundformError::Abnormal(AbnormalError::Geometry(g)) => classify_geometry(g),
        FundformError::Abnormal(a @ AbnormalError::NotTangent { .. }) => Failure::Verdict(a.to_string()),
        other => Failure::Verdict(other.to_string()),
    }
}

fn classify_oracle(e: OracleError) -> Failure {
    match e {
        OracleError::Pole | OracleError::Geometry(_) => Failure::Degenerate(e.to_string()),
        OracleError::ZeroCovector => Failure::Input(e.to_string()),
        other => Failure::Verdict(other.to_string()),
    }
}

fn classify_cartan(e: CartanError) -> Failure {
    match e {
        CartanError::Geometry(g) => classify_geometry(g),
        CartanError::Fundform(f) => classify_fundform(f),
        other => Failure::Verdict(other.to_string()),
    }
}

fn value(f: &FiberPolynomial, q: &[Rational], u4: &Rational, u5: &Rational) -> Result<Rational, Failure> {
    f.eval45(q, u4, u5).map_err(|e| Failure::Degenerate(e.to_string()))
}

/// Execute a subcommand.
pub fn execute(cmd: Command, model: &Model, s: &Settings) -> Result<Report, Failure> {
    let names = &model.vars.0;
    let opts = PipelineOptions { mode: s.mode, pi_form: PiForm::Expanded, ..Default::default() };
    let mut verdicts = Vec::new();
    let needs_points = matches!(cmd, Command::Check | Command::Tangential | Command::Oracle);
    if needs_points && model.points.is_empty() {
        return Err(Failure::Input("no working points: add \"points\" to the model or pass --point".into()));
    }

    // growth vector first: a non-(2,3,5) point is a degeneracy for every command
    let mut growth = Vec::new();
    for q in &model.points {
        let g = growth_vector(&model.x1, &model.x2, q).map_err(classify_geometry)?;
        let text = format!("({},{},{})", g.0, g.1, g.2);
        if g != (2, 3, 5) {
            return Err(Failure::Degenerate(format!("growth vector {text} at point ({})", q.iter().map(pq).collect::<Vec<_>>().join(", "))));
        }
        growth.push(text);
    }
    if cmd.wants(Command::Check) {
        verdicts.push(Verdict { name: "growth vector (2,3,5) at all points".into(), pass: true });
    }

    let needs_invariants = cmd.wants(Command::Frame) || cmd.wants(Command::Invariants) || cmd.wants(Command::Tangential) || cmd.wants(Command::Oracle);
    let inv = if needs_invariants {
        let frame = adapted_frame(&model.x1, &model.x2, s.mode).map_err(classify_geometry)?;
        for q in &model.points {
            frame.check_at(q).map_err(classify_geometry)?;
        }
        Some(Invariants::compute(&model.x1, &model.x2, opts).map_err(classify_fundform)?)
    } else {
        None
    };

    let mut symbolic = Symbolic::default();
    if cmd.wants(Command::Frame) {
        let inv = inv.as_ref().unwrap();
        let frame = &inv.abnormal.frame;
        symbolic.frame = Some(frame.x.iter().map(|v| v.c.iter().map(|f| f.display(names).to_string()).collect()).collect());
        let c = structural_functions(frame).map_err(classify_geometry)?;
        let mut entries = Vec::new();
        for j in 1..=DIM {
            for i in 1..j {
                for k in 1..=DIM {
                    let v = c.get(j, i, k);
                    if !v.is_zero() {
                        entries.push(StructEntry { j, i, k, value: v.display(names).to_string() });
                    }
                }
            }
        }
        symbolic.structural_functions = Some(entries);
    }
    if cmd.wants(Command::Invariants) {
        let inv = inv.as_ref().unwrap();
        symbolic.rho = Some(terms(&inv.rho, names));
        symbolic.density = Some(terms(&inv.density, names));
        verdicts.push(Verdict { name: "rho homogeneous of degree 2".into(), pass: inv.rho.is_homogeneous_of(2) });
        verdicts.push(Verdict { name: "A homogeneous of degree 4".into(), pass: inv.density.is_homogeneous_of(4) });
    }

    let mut points = Vec::new();
    for (q, g) in model.points.iter().zip(&growth) {
        let start = Instant::now();
        let mut pr = PointReport { point: q.iter().map(pq).collect(), growth: None, invariants: None, tangential: None, oracle: None, millis: None };
        if cmd.wants(Command::Check) {
            pr.growth = Some(g.clone());
        }
        if cmd.wants(Command::Invariants) {
            let inv = inv.as_ref().unwrap();
            let mut vals = Vec::new();
            for (u4, u5) in &model.covectors {
                vals.push(FiberValues { u4: pq(u4), u5: pq(u5), rho: pq(&value(&inv.rho, q, u4, u5)?), density: pq(&value(&inv.density, q, u4, u5)?) });
            }
            pr.invariants = Some(vals);
        }
        if cmd.wants(Command::Tangential) {
            let t = inv.as_ref().unwrap().tangential(q).map_err(classify_fundform)?;
            pr.tangential = Some(quartic(&t));
        }
        if cmd.wants(Command::Oracle) {
            let inv = inv.as_ref().unwrap();
            let mut outs = Vec::new();
            for (u4, u5) in &model.covectors {
                let formula = (value(&inv.rho, q, u4, u5)?, value(&inv.density, q, u4, u5)?);
                let rep = oracle_report(&inv.abnormal.frame, q, u4, u5, s.oracle).map_err(classify_oracle)?;
                let consensus = rep.consensus();
                let equal = matches!(&consensus, Ok(v) if *v == formula) && rep.weight == 4 && rep.velocity.rank_one;
                verdicts.push(Verdict { name: format!("oracle equals formula at ({}) u=({}, {})", pr.point.join(", "), pq(u4), pq(u5)), pass: equal });
                let two = |p: &(Rational, Rational)| [pq(&p.0), pq(&p.1)];
                outs.push(OracleOut {
                    u4: pq(u4),
                    u5: pq(u5),
                    formula: two(&formula),
                    canonical_frame: two(&rep.canonical),
                    lemma: two(&rep.lemma),
                    projective: two(&rep.projective),
                    weight: rep.weight,
                    velocity_sign: rep.velocity.sign,
                    equal,
                });
            }
            pr.oracle = Some(outs);
        }
        if s.timings {
            pr.millis = Some(start.elapsed().as_millis());
        }
        points.push(pr);
    }

    let mut cartan = None;
    let cartan_requested = cmd == Command::Cartan || (cmd == Command::Report && model.coframe.is_some());
    if cartan_requested {
        let cf = model.coframe.as_ref().ok_or_else(|| Failure::Input("the model has no \"coframe\" block".into()))?;
        let structure = verify_structure_equations(cf);
        let failing = structure.failing();
        verdicts.push(Verdict { name: "structure equations".into(), pass: failing.is_empty() });
        let mut section = CartanSection { failing_equations: failing.clone(), cartan_coeffs: None, points: Vec::new() };
        if failing.is_empty() {
            let chain = cartan_chain(cf, &model.points, opts).map_err(classify_cartan)?;
            let checks = [
                ("bracket table derived from the structure equations", chain.brackets.derived_matches_direct),
                ("Cartan frame is adapted", chain.brackets.adapted),
                ("[X1,X3] expansion", chain.brackets.x1x3_matches),
                ("[X2,X3] expansion", chain.brackets.x2x3_matches),
                ("b from the forms equals b", chain.identities.b_ok()),
                ("b1 = b", chain.identities.b1_ok()),
                ("Pi = -4/3 alpha3", chain.identities.pi_ok(PiForm::Expanded)),
                ("master formula reduces to the simplified density", chain.density.cancellation_ok()),
                ("Theta + Theta1 decomposition", chain.density.theta_sum_ok),
                ("35A - B equals the Xi combination", chain.density.difference_ok),
            ];
            for (name, pass) in checks {
                verdicts.push(Verdict { name: name.into(), pass });
            }
            section.cartan_coeffs = Some(chain.density.a_coeffs.iter().map(|f| f.display(names).to_string()).collect());
            for (q, cmp) in model.points.iter().zip(&chain.comparisons) {
                verdicts.push(Verdict { name: format!("F = -35 A_q at ({})", q.iter().map(pq).collect::<Vec<_>>().join(", ")), pass: cmp.ok() });
                section.points.push(CartanPoint {
                    point: q.iter().map(pq).collect(),
                    cartan_tensor: quartic(&cmp.f),
                    tangential: quartic(&cmp.tangential),
                    residual: quartic(&cmp.residual),
                });
            }
        }
        cartan = Some(section);
    }

    let has_symbolic = symbolic.frame.is_some() || symbolic.rho.is_some();
    let pass = verdicts.iter().all(|v| v.pass);
    Ok(Report {
        schema: REPORT_SCHEMA,
        command: cmd.name().into(),
        model: ModelInfo { name: model.name.clone(), fingerprint: s.fingerprint.clone(), coordinates: names.clone() },
        options: OptionsInfo {
            mode: match s.mode {
                AdaptedMode::Adapted => "adapted".into(),
                AdaptedMode::StronglyAdapted => "strongly-adapted".into(),
            },
            oracle_order: s.oracle.order,
            tau_order: s.oracle.tau_order,
        },
        symbolic: has_symbolic.then_some(symbolic),
        points,
        cartan,
        verdicts,
        pass,
    })
}
