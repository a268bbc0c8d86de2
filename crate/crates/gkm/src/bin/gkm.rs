use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

use gkm::cohomology::{check_class, hilbert, solve_degree};
use gkm::constraints::constraint_matrix;
use gkm::corpus;
use gkm::model::GkmSpace;
use gkm::report;

const EXIT_OK: u8 = 0;
const EXIT_INPUT: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "gkm",
    about = "Equivariant cohomology from fixed-point data, in exact rational arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a space document
    Validate {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Hilbert series, Betti numbers, and optionally per-degree bases
    Cohomology {
        file: PathBuf,
        /// Maximum cohomological degree (even)
        #[arg(long)]
        max_degree: u32,
        /// Print a basis of each degree as per-point polynomials
        #[arg(long)]
        emit_basis: bool,
        #[arg(long)]
        json: bool,
    },
    /// Test a class file for membership in the image of restriction
    Check {
        file: PathBuf,
        class_file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// List or emit the embedded example documents
    Examples {
        #[command(subcommand)]
        action: ExamplesAction,
    },
    /// Export the constraint matrix of one degree as text
    ExportMatrix {
        file: PathBuf,
        /// Cohomological degree (even)
        #[arg(long)]
        degree: u32,
    },
}

#[derive(Subcommand)]
enum ExamplesAction {
    List,
    Emit { name: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Validate { file, json } => cmd_validate(&file, json),
        Command::Cohomology {
            file,
            max_degree,
            emit_basis,
            json,
        } => cmd_cohomology(&file, max_degree, emit_basis, json),
        Command::Check { file, class_file, json } => cmd_check(&file, &class_file, json),
        Command::Examples { action } => match action {
            ExamplesAction::List => cmd_examples_list(),
            ExamplesAction::Emit { name } => cmd_examples_emit(&name),
        },
        Command::ExportMatrix { file, degree } => cmd_export_matrix(&file, degree),
    };
    ExitCode::from(code)
}

fn load_space(file: &PathBuf) -> Result<GkmSpace, u8> {
    let text = std::fs::read_to_string(file).map_err(|e| {
        eprintln!("error: cannot read {}: {}", file.display(), e);
        EXIT_INPUT
    })?;
    GkmSpace::parse(&text).map_err(|e| {
        eprintln!("error: {}", e);
        EXIT_INPUT
    })
}

fn load_valid_space(file: &PathBuf) -> Result<GkmSpace, u8> {
    let space = load_space(file)?;
    let report = space.validate();
    for warning in report.warnings() {
        eprintln!("warning: {}: {}", warning.location, warning.message);
    }
    if !report.is_valid() {
        for error in report.errors() {
            eprintln!("error: {}: {}", error.location, error.message);
        }
        return Err(EXIT_VALIDATION);
    }
    Ok(space)
}

fn even_to_polynomial_degree(cohomological: u32) -> Result<u32, u8> {
    if cohomological % 2 != 0 {
        eprintln!("error: cohomological degrees are even; got {}", cohomological);
        return Err(EXIT_INPUT);
    }
    Ok(cohomological / 2)
}

fn cmd_validate(file: &PathBuf, json: bool) -> u8 {
    let space = match load_space(file) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let report = space.validate();
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report::validation_json(&report)).unwrap()
        );
    } else {
        for issue in &report.issues {
            let tag = match issue.severity {
                gkm::model::Severity::Error => "error",
                gkm::model::Severity::Warning => "warning",
            };
            println!("{}: {}: {}", tag, issue.location, issue.message);
        }
        if report.is_valid() {
            println!("valid: {} fixed points, {} strata", space.n_points(), space.strata.len());
        }
    }
    if report.is_valid() {
        EXIT_OK
    } else {
        EXIT_VALIDATION
    }
}

fn cmd_cohomology(file: &PathBuf, max_degree: u32, emit_basis: bool, json: bool) -> u8 {
    let space = match load_valid_space(file) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let max_k = match even_to_polynomial_degree(max_degree) {
        Ok(k) => k,
        Err(code) => return code,
    };
    let data = hilbert(&space, max_k);
    let basis_rendered: Option<Vec<Vec<Vec<(String, String)>>>> = if emit_basis {
        let mut per_degree = Vec::new();
        for k in 0..=max_k {
            let basis = solve_degree(&space, k);
            for class in &basis.classes {
                if !check_class(&space, class).member {
                    eprintln!(
                        "internal error: degree-{} basis class fails its own constraints",
                        2 * k
                    );
                    return EXIT_INTERNAL;
                }
            }
            per_degree.push(
                basis
                    .classes
                    .iter()
                    .map(|c| report::render_class(&space, c))
                    .collect(),
            );
        }
        Some(per_degree)
    } else {
        None
    };
    if json {
        let mut body = report::hilbert_json(&space, &data, None);
        if let Some(per_degree) = &basis_rendered {
            body["basis"] = serde_json::json!(per_degree
                .iter()
                .enumerate()
                .map(|(k, classes)| {
                    serde_json::json!({
                        "degree": 2 * k,
                        "classes": classes
                            .iter()
                            .map(|c| c
                                .iter()
                                .map(|(p, f)| serde_json::json!({"point": p, "value": f}))
                                .collect::<Vec<_>>())
                            .collect::<Vec<_>>(),
                    })
                })
                .collect::<Vec<_>>());
        }
        println!("{}", serde_json::to_string_pretty(&body).unwrap());
    } else {
        let h: Vec<String> = data.equivariant.iter().map(|v| v.to_string()).collect();
        let q: Vec<String> = data.betti_candidates.iter().map(|v| v.to_string()).collect();
        println!("h = {}", h.join(","));
        println!("q = {}", q.join(","));
        println!(
            "betti = ({})",
            data.betti_vector()
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        );
        println!("consistent = {}", data.consistent);
        if let Some(per_degree) = &basis_rendered {
            for (k, classes) in per_degree.iter().enumerate() {
                println!("degree {} basis ({} classes):", 2 * k, classes.len());
                for (i, class) in classes.iter().enumerate() {
                    let parts: Vec<String> = class
                        .iter()
                        .map(|(p, f)| format!("{}: {}", p, f))
                        .collect();
                    println!("  [{}] {}", i, parts.join(", "));
                }
            }
        }
    }
    EXIT_OK
}

fn cmd_check(file: &PathBuf, class_file: &PathBuf, json: bool) -> u8 {
    let space = match load_valid_space(file) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let class_text = match std::fs::read_to_string(class_file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {}", class_file.display(), e);
            return EXIT_INPUT;
        }
    };
    let class = match report::parse_class_file(&class_text, &space) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}", e);
            return EXIT_INPUT;
        }
    };
    let membership = check_class(&space, &class);
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report::membership_json(&space, &membership)).unwrap()
        );
    } else if membership.member {
        println!("member");
    } else {
        println!("non-member");
        for v in &membership.violations {
            println!("  {}", v.describe(&space));
        }
    }
    EXIT_OK
}

fn cmd_examples_list() -> u8 {
    for name in corpus::names() {
        println!("{}", name);
    }
    EXIT_OK
}

fn cmd_examples_emit(name: &str) -> u8 {
    match corpus::get(name) {
        Some(entry) => {
            print!("{}", entry.document);
            EXIT_OK
        }
        None => {
            eprintln!("error: unknown example `{}`; run `gkm examples list`", name);
            EXIT_INPUT
        }
    }
}

fn cmd_export_matrix(file: &PathBuf, degree: u32) -> u8 {
    let space = match load_valid_space(file) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let k = match even_to_polynomial_degree(degree) {
        Ok(k) => k,
        Err(code) => return code,
    };
    let system = constraint_matrix(&space, k);
    print!("{}", report::export_matrix_text(&space, &system));
    EXIT_OK
}
