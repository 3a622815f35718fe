//! `gwistor`: torsion classification and identity checks for the natural G2
//! structure on unit tangent sphere bundles.
//!
//! Exit codes: 0 success, 1 failed verification, 2 unreadable input,
//! 3 symmetry violation.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gwistor::check::CheckReport;
use gwistor::exterior::Orientation;
use gwistor::flat::{random_points, verify_flat_equations, DEFAULT_STEP, DEFAULT_TOL};
use gwistor::g2::verify_decomposition_identities;
use gwistor::model::{model_rng, Torsion4};
use gwistor::scalar::Rational;
use gwistor::structure::{verify_form_construction, verify_structure_equations, AlmostContact};
use gwistor::torsion_space::{
    intersection_ranks, solution_space, CartanProjectors, SolutionCondition,
};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use gwistor_cli::error::CliError;
use gwistor_cli::report::{classify_model, CheckEntry, Report};
use gwistor_cli::ring::{Ring, RingScalar};
use gwistor_cli::spec::{parse_input, ModelSpec};

#[derive(Parser)]
#[command(
    name = "gwistor",
    version,
    about = "Torsion classification of the gwistor G2 structure"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one model description, or a JSON array of them.
    Classify {
        /// JSON model description file.
        input: PathBuf,
        /// Coefficient ring; overrides the description's own setting.
        #[arg(long, value_enum)]
        ring: Option<Ring>,
        /// Zero threshold; 0 for the rational ring, 1e-9 by default for floats.
        #[arg(long)]
        tol: Option<f64>,
        /// Write the JSON report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the algebraic identity suites in the exact ring.
    Identities {
        /// Reverse the orientation of the Hodge star (negative control).
        #[arg(long)]
        corrupt_orientation: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dimensions of the torsion-space splitting and of the solution spaces.
    TorsionSpace {
        /// Condition to report; all three when omitted.
        #[arg(long, value_parser = parse_condition)]
        condition: Option<SolutionCondition>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Finite-difference check of the flat model.
    FlatCheck {
        #[arg(long, default_value_t = 20)]
        points: usize,
        #[arg(long, default_value_t = DEFAULT_STEP)]
        step: f64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_condition(s: &str) -> Result<SolutionCondition, String> {
    SolutionCondition::from_name(s).ok_or_else(|| {
        let names: Vec<_> = SolutionCondition::ALL.iter().map(|c| c.name()).collect();
        format!("expected one of {}", names.join(", "))
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Classify {
            input,
            ring,
            tol,
            out,
        } => cmd_classify(&input, ring, tol, out.as_deref()),
        Command::Identities {
            corrupt_orientation,
            out,
        } => cmd_identities(corrupt_orientation, out.as_deref()),
        Command::TorsionSpace { condition, out } => cmd_torsion_space(condition, out.as_deref()),
        Command::FlatCheck {
            points,
            step,
            tol,
            seed,
            out,
        } => cmd_flat_check(points, step, tol, seed, out.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gwistor: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn write_json(value: &impl Serialize, out: Option<&Path>) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    match out {
        Some(path) => fs::write(path, text + "\n")
            .map_err(|e| CliError::Failed(format!("{}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn classify_in<S: RingScalar>(spec: &ModelSpec, tol: f64) -> Result<Report, CliError> {
    let model = spec.build::<S>(tol)?;
    classify_model(&model, tol)
}

fn classify_spec(
    spec: &ModelSpec,
    ring: Option<Ring>,
    tol: Option<f64>,
) -> Result<Report, CliError> {
    let ring = ring.or(spec.ring).unwrap_or(Ring::Rational);
    let tol = tol.or(spec.tol).unwrap_or(ring.default_tol());
    if tol < 0.0 {
        return Err(CliError::Parse(format!("tolerance {tol} is negative")));
    }
    match ring {
        Ring::Rational => classify_in::<Rational>(spec, tol),
        Ring::Float => classify_in::<f64>(spec, tol),
    }
}

fn cmd_classify(
    input: &Path,
    ring: Option<Ring>,
    tol: Option<f64>,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let text = fs::read_to_string(input)
        .map_err(|e| CliError::Parse(format!("{}: {e}", input.display())))?;
    let (specs, batch) = parse_input(&text)?;
    let results: Vec<Result<Report, CliError>> = specs
        .par_iter()
        .map(|s| classify_spec(s, ring, tol))
        .collect();
    let reports: Vec<Report> = results.into_iter().collect::<Result<_, _>>()?;
    if batch {
        write_json(&reports, out)?;
    } else {
        write_json(&reports[0], out)?;
    }
    if out.is_some() {
        for r in &reports {
            println!(
                "{}: τ₀ = {}, flags = [{}]",
                r.label,
                r.tau0,
                r.class_flags.join(", ")
            );
        }
    }
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.all_passed())
        .flat_map(|r| {
            r.checks
                .iter()
                .filter(|c| !c.passed)
                .map(move |c| format!("{}: {}", r.label, c.name))
        })
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(format!(
            "checks failed: {}",
            failed.join("; ")
        )))
    }
}

fn entries(report: &CheckReport) -> Vec<CheckEntry> {
    report
        .iter()
        .map(|c| CheckEntry {
            name: c.name.clone(),
            passed: c.passed,
        })
        .collect()
}

fn finish(
    report: &CheckReport,
    out: Option<&Path>,
    json: serde_json::Value,
) -> Result<(), CliError> {
    print!("{report}");
    if let Some(path) = out {
        write_json(&json, Some(path))?;
    }
    let failures: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(format!(
            "{} check(s) failed: {}",
            failures.len(),
            failures.join("; ")
        )))
    }
}

fn cmd_identities(corrupt: bool, out: Option<&Path>) -> Result<(), CliError> {
    let orientation = if corrupt {
        Orientation::Reversed
    } else {
        Orientation::Standard
    };
    let mut report = verify_structure_equations(orientation);
    report.extend(verify_form_construction());
    report.extend(AlmostContact::<Rational>::canonical().check());
    report.extend(verify_decomposition_identities());
    let json = json!({ "orientation": format!("{orientation:?}"), "checks": entries(&report) });
    finish(&report, out, json)
}

fn torsion_components(t: &Torsion4<Rational>) -> Vec<serde_json::Value> {
    t.independent_components()
        .into_iter()
        .map(|(idx, v)| json!([idx, v.render()]))
        .collect()
}

fn cmd_torsion_space(
    condition: Option<SolutionCondition>,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let mut report = CheckReport::new();
    let ranks = CartanProjectors::<Rational>::new().ranks(0.0);
    report.push_detail(
        "Cartan parts ℝ⁴, Λ³, 𝒜₊, 𝒜₋ = 4, 4, 8, 8",
        ranks == [4, 4, 8, 8],
        format!("{ranks:?}"),
    );
    let conditions = condition.map_or(SolutionCondition::ALL.to_vec(), |c| vec![c]);
    let mut spaces = Vec::new();
    for cond in conditions {
        let space = solution_space::<Rational>(cond, 0.0);
        let members = space.basis.iter().all(|t| cond.in_named_subspace(t, 0.0));
        report.push_detail(
            format!("{cond}: dim {}", cond.expected_dim()),
            space.dim == cond.expected_dim(),
            format!("dim {}", space.dim),
        );
        report.push(
            format!("{cond}: basis lies in {}", cond.subspace_name()),
            members,
        );
        spaces.push(json!({
            "condition": cond.name(),
            "dim": space.dim,
            "expected_dim": cond.expected_dim(),
            "subspace": cond.subspace_name(),
            "basis": space.basis.iter().map(torsion_components).collect::<Vec<_>>(),
        }));
    }
    let (a, b, c) = intersection_ranks::<Rational>(0.0);
    report.push_detail(
        "anti_Z space is the intersection of the other two",
        a == b && b == c,
        format!("ranks {a}, {b}, {c}"),
    );
    let json = json!({
        "cartan_ranks": { "vectorial": ranks[0], "skew": ranks[1], "a_plus": ranks[2], "a_minus": ranks[3] },
        "solution_spaces": spaces,
        "intersection_ranks": [a, b, c],
        "checks": entries(&report),
    });
    finish(&report, out, json)
}

fn cmd_flat_check(
    points: usize,
    step: f64,
    tol: f64,
    seed: u64,
    out: Option<&Path>,
) -> Result<(), CliError> {
    if points == 0 {
        return Err(CliError::Parse("--points must be positive".into()));
    }
    let sample = random_points(&mut model_rng(seed), points);
    let flat = verify_flat_equations(&sample, step, tol)?;
    let report = flat.checks();
    let residuals: Vec<_> = flat
        .residuals
        .iter()
        .map(|(name, r, r_half)| json!({ "identity": name, "residual": r, "residual_half_step": r_half }))
        .collect();
    let json = json!({
        "points": flat.points,
        "step": flat.step,
        "tol": flat.tol,
        "seed": seed,
        "residuals": residuals,
        "max_route_difference": flat.max_route_difference,
        "max_gram_error": flat.max_gram_error,
        "max_pipeline_difference": flat.max_pipeline_difference,
        "checks": entries(&report),
    });
    finish(&report, out, json)
}
