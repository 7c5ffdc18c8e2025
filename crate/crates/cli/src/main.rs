//! `weyr`: batch front end for Weyr structures, block compositions and
//! monomial complete intersections.
//!
//! Exit status is 0 on success, 2 for mathematical errors on well-formed
//! input (and for sweeps with a disagreeing guarded case), 1 for I/O and
//! parse errors. Errors are written to stdout as `{"error": {...}}`.

mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use weyr::compose::{verify_compose_with, Guard};
use weyr::io::{parse_partition, parse_usize_list, read_matrix};
use weyr::mci::{
    hilbert_function, mci_basis, mult_matrix, strong_lefschetz_check, weak_lefschetz_check,
    weyr_of_general_element, weyr_of_linear_element, AlgebraElement, BasisOrder, MciDescriptor, TermJson,
};
use weyr::sweep::{verify_sweep, CaseSource, SweepRequest, DEFAULT_SEED};
use weyr::weyr::{build_basic_weyr, dual_partition};
use weyr::{compose, sierpinski, weyr_structure_at, Error, ExactMatrix, FieldSpec, Result, Scalar};

use render::{Format, Output};

#[derive(Parser)]
#[command(name = "weyr", version, about = "Exact Weyr structures and monomial complete intersections")]
struct Cli {
    /// Ground field: `q` or `fp:<prime>`.
    #[arg(long, global = true, default_value = "q", value_parser = parse_field)]
    field: FieldSpec,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    output: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Weyr structure of a matrix at one eigenvalue, or at every rational
    /// eigenvalue when none is given.
    Weyr(SpectrumArgs),
    /// Jordan structure, the dual of the Weyr structure.
    Jordan(SpectrumArgs),
    /// Predicted and computed structure of the block composition C(B, t).
    Compose {
        /// Matrix B; alternatively give --partition for a basic Weyr matrix.
        #[arg(long, conflicts_with = "partition")]
        matrix: Option<PathBuf>,
        /// Weyr structure of a basic Weyr matrix to use as B, e.g. `3,2,1`.
        #[arg(long, required_unless_present = "matrix")]
        partition: Option<String>,
        #[arg(long)]
        eigenvalue: Option<String>,
        #[arg(long)]
        t: usize,
        /// Print C(B, t) itself instead of the report.
        #[arg(long)]
        emit_matrix: bool,
        /// Run below the characteristic bound instead of refusing.
        #[arg(long)]
        record: bool,
    },
    /// The Sierpinski matrix B_n, or its Weyr structure at 1.
    Sierpinski {
        n: u32,
        #[arg(long)]
        structure: bool,
        /// With --structure, print the Jordan structure instead.
        #[arg(long, requires = "structure")]
        jordan: bool,
    },
    /// Hilbert function of the algebra with the given degrees.
    MciHilbert(DegreeArgs),
    /// Multiplication matrix of an element (default: the product of all 1 + x_i).
    MciMult {
        #[command(flatten)]
        degrees: DegreeArgs,
        /// Element as a JSON list of {"exponents": [...], "coeff": "a/b"}.
        #[arg(long)]
        element: Option<PathBuf>,
        #[arg(long, value_enum)]
        order: Option<OrderArg>,
    },
    /// Strong (default) or weak Lefschetz check for a linear form.
    MciLefschetz {
        #[command(flatten)]
        degrees: DegreeArgs,
        #[arg(long)]
        weak: bool,
        /// Coefficients of the linear form; all ones by default.
        #[arg(long)]
        coeffs: Option<String>,
    },
    /// Weyr structure of multiplication by a linear form against the sorted
    /// Hilbert function.
    MciWeyr {
        #[command(flatten)]
        degrees: DegreeArgs,
        #[arg(long)]
        coeffs: Option<String>,
    },
    /// Batch of compose checks over basic Weyr matrices.
    VerifySweep {
        /// Every partition of every integer up to this size.
        #[arg(long, conflicts_with = "random")]
        max_size: Option<usize>,
        /// Number of random cases instead.
        #[arg(long, required_unless_present = "max_size")]
        random: Option<usize>,
        #[arg(long, default_value = "2,3")]
        t: String,
        #[arg(long, default_value = "0,1,2", allow_hyphen_values = true)]
        eigenvalues: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 5)]
        max_parts: usize,
        #[arg(long, default_value_t = 4)]
        max_part: usize,
        /// Run cases below the characteristic bound and record them.
        #[arg(long)]
        record: bool,
    },
}

#[derive(clap::Args)]
struct SpectrumArgs {
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    eigenvalue: Option<String>,
}

#[derive(clap::Args)]
struct DegreeArgs {
    /// Degrees d_1,...,d_n.
    #[arg(long)]
    degrees: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Doubling,
    Graded,
}

fn parse_field(s: &str) -> std::result::Result<FieldSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn descriptor(args: &DegreeArgs, field: FieldSpec) -> Result<MciDescriptor> {
    let degrees = parse_usize_list(&args.degrees)?
        .into_iter()
        .map(|d| u32::try_from(d).map_err(|_| Error::Parse(format!("degree {d} too large"))))
        .collect::<Result<Vec<_>>>()?;
    MciDescriptor::new(degrees, field)
}

fn scalar_list(s: &str, field: FieldSpec) -> Result<Vec<Scalar>> {
    s.trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split(',')
        .map(|x| field.parse_scalar(x.trim()))
        .collect()
}

fn i64_list(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("invalid integer '{}'", x.trim()))))
        .collect()
}

fn eigenvalues(m: &ExactMatrix, given: Option<&str>, field: FieldSpec) -> Result<Vec<Scalar>> {
    match given {
        Some(s) => Ok(vec![field.parse_scalar(s)?]),
        None => Ok(m.rational_eigenvalues()?.require_split()?.eigenvalues.iter().map(|(l, _)| l.clone()).collect()),
    }
}

fn run(cli: &Cli) -> Result<(Output, bool)> {
    let field = cli.field;
    let out = match &cli.command {
        Command::Weyr(a) | Command::Jordan(a) => {
            let jordan = matches!(cli.command, Command::Jordan(_));
            let m = read_matrix(&a.matrix, field)?;
            let reports = eigenvalues(&m, a.eigenvalue.as_deref(), m.field())?
                .iter()
                .map(|l| weyr_structure_at(&m, l))
                .collect::<Result<Vec<_>>>()?;
            let single = a.eigenvalue.is_some();
            if jordan {
                Output::jordan(&reports.iter().map(|r| (r.eigenvalue.clone(), dual_partition(&r.structure))).collect::<Vec<_>>(), single)
            } else {
                Output::weyr(&reports, single)
            }
        }
        Command::Compose { matrix, partition, eigenvalue, t, emit_matrix, record } => {
            let b = match (matrix, partition) {
                (Some(path), _) => read_matrix(path, field)?,
                (None, Some(p)) => {
                    let lambda = field.parse_scalar(eigenvalue.as_deref().unwrap_or("0"))?;
                    build_basic_weyr(&lambda, &parse_partition(p)?)?
                }
                (None, None) => unreachable!("clap requires one of them"),
            };
            if *emit_matrix {
                Output::matrix(&compose(&b, *t)?)
            } else {
                let guard = if *record { Guard::Record } else { Guard::Enforce };
                let given = eigenvalue.as_deref().or(partition.as_ref().map(|_| "0"));
                let reports = eigenvalues(&b, given, b.field())?
                    .iter()
                    .map(|l| verify_compose_with(&b, *t, l, guard))
                    .collect::<Result<Vec<_>>>()?;
                let ok = reports.iter().all(|r| r.agree);
                return Ok((Output::compose(&reports, given.is_some()), ok));
            }
        }
        Command::Sierpinski { n, structure, jordan } => {
            let b = sierpinski(*n, field)?;
            if *structure {
                let w = weyr_structure_at(&b, &field.one())?.structure;
                Output::partition(&if *jordan { dual_partition(&w) } else { w })
            } else {
                Output::matrix(&b)
            }
        }
        Command::MciHilbert(d) => Output::list(&hilbert_function(&descriptor(d, field)?)),
        Command::MciMult { degrees, element, order } => {
            let d = descriptor(degrees, field)?;
            let order = match order {
                Some(OrderArg::Doubling) => BasisOrder::SierpinskiDoubling,
                Some(OrderArg::Graded) => BasisOrder::GradedReverseLex,
                None if d.is_quadratic() => BasisOrder::SierpinskiDoubling,
                None => BasisOrder::GradedReverseLex,
            };
            let f = match element {
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                    let terms: Vec<TermJson> = serde_json::from_str(&text)?;
                    AlgebraElement::from_json(&terms, &d)?
                }
                None => AlgebraElement::sierpinski_element(&d),
            };
            Output::matrix(&mult_matrix(&f, &d, &mci_basis(&d, order)?)?)
        }
        Command::MciLefschetz { degrees, weak, coeffs } => {
            let d = descriptor(degrees, field)?;
            let l = match coeffs {
                Some(c) => AlgebraElement::linear(&d, &scalar_list(c, field)?)?,
                None => AlgebraElement::variable_sum(&d),
            };
            let report = if *weak { weak_lefschetz_check(&d, &l)? } else { strong_lefschetz_check(&d, &l)? };
            Output::lefschetz(&report)
        }
        Command::MciWeyr { degrees, coeffs } => {
            let d = descriptor(degrees, field)?;
            let report = match coeffs {
                Some(c) => weyr_of_linear_element(&d, &scalar_list(c, field)?)?,
                None => weyr_of_general_element(&d)?,
            };
            Output::general(&report)
        }
        Command::VerifySweep { max_size, random, t, eigenvalues, seed, max_parts, max_part, record } => {
            let source = match (max_size, random) {
                (Some(max_size), _) => CaseSource::Exhaustive { max_size: *max_size },
                (None, Some(count)) => CaseSource::Random {
                    count: *count,
                    seed: seed.unwrap_or(DEFAULT_SEED),
                    max_parts: *max_parts,
                    max_part: *max_part,
                },
                (None, None) => unreachable!("clap requires one of them"),
            };
            let req = SweepRequest {
                source,
                t_values: parse_usize_list(t)?,
                eigenvalues: i64_list(eigenvalues)?,
                field,
                guard: if *record { Guard::Record } else { Guard::Enforce },
            };
            let summary = verify_sweep(&req)?;
            let ok = summary.ok();
            return Ok((Output::sweep(&summary), ok));
        }
    };
    Ok((out, true))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok((out, ok)) => {
            print!("{}", out.render(cli.output));
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            let obj = serde_json::json!({ "error": { "code": e.code(), "message": e.to_string() } });
            println!("{obj}");
            ExitCode::from(if e.is_domain() { 2 } else { 1 })
        }
    }
}
