//! Command-line front door for the quatconv library: detect which
//! convention produced a data file, migrate datasets between conventions,
//! convert single values between representations, integrate rigid-body
//! kinematics, and run the built-in identity suite.
//!
//! Exit codes are fixed for scriptability:
//!
//! | code | meaning                                            |
//! |------|----------------------------------------------------|
//! | 0    | success / determinate result                       |
//! | 1    | malformed input, bad flags, or I/O failure         |
//! | 2    | detection could not decide (too little evidence)   |
//! | 3    | detection found contradictory or unrecognized data |
//! | 4    | antihomomorphic convention where a paired one is required |

mod checks;
mod maps;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use quatconv::dataset::{migrate_dataset, read_dataset_path, write_dataset_path, DatasetError};
use quatconv::detect::{classify, Verdict, DETECTION_TOLERANCE};
use quatconv::kinematics::{integrate, AngularVelocity, Frame, TrajectoryPoint};
use quatconv::linalg::frobenius_diff;
use quatconv::probes::read_probes_path;
use quatconv::rotvec::{rotvec_to_matrix, rotvec_to_quat};
use quatconv::so3::{matrix_to_quat, quat_to_matrix};
use quatconv::{
    ComponentOrder, ConventionFactors, MatrixMap, Multiplication, QmConvention, Quaternion,
    RotationMatrix, RotationVector, Sign, UnitQuaternion,
};

const EXIT_MALFORMED: u8 = 1;
const EXIT_INDETERMINATE: u8 = 2;
const EXIT_INCONSISTENT: u8 = 3;
const EXIT_ANTIHOMOMORPHIC: u8 = 4;

// ── Flag vocabularies ────────────────────────────────────────────────

/// Any of the four (map, multiplication) pairings.
#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum ConvArg {
    HamiltonCh,
    ShusterCs,
    HamiltonCs,
    ShusterCh,
}

impl ConvArg {
    fn convention(self) -> QmConvention {
        match self {
            ConvArg::HamiltonCh => QmConvention::new(MatrixMap::CH, Multiplication::Hamilton),
            ConvArg::ShusterCs => QmConvention::new(MatrixMap::CS, Multiplication::Shuster),
            ConvArg::HamiltonCs => QmConvention::new(MatrixMap::CS, Multiplication::Hamilton),
            ConvArg::ShusterCh => QmConvention::new(MatrixMap::CH, Multiplication::Shuster),
        }
    }
}

/// The two homomorphic pairings — the only valid migration and
/// integration targets.
#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum PairedConvArg {
    HamiltonCh,
    ShusterCs,
}

impl PairedConvArg {
    fn convention(self) -> QmConvention {
        match self {
            PairedConvArg::HamiltonCh => QmConvention::HAMILTON_CH,
            PairedConvArg::ShusterCs => QmConvention::SHUSTER_CS,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Wxyz,
    Xyzw,
}

impl From<OrderArg> for ComponentOrder {
    fn from(value: OrderArg) -> Self {
        match value {
            OrderArg::Wxyz => ComponentOrder::Wxyz,
            OrderArg::Xyzw => ComponentOrder::Xyzw,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Repr {
    Quat,
    Matrix,
    Rotvec,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "UPPER")]
enum FrameArg {
    A,
    B,
}

impl From<FrameArg> for Frame {
    fn from(value: FrameArg) -> Self {
        match value {
            FrameArg::A => Frame::A,
            FrameArg::B => Frame::B,
        }
    }
}

fn parse_sign(text: &str) -> Result<Sign, String> {
    match text {
        "+1" | "1" | "+" => Ok(Sign::Plus),
        "-1" | "-" => Ok(Sign::Minus),
        _ => Err(format!("expected +1 or -1, got `{text}`")),
    }
}

// ── Command tree ─────────────────────────────────────────────────────

#[derive(Parser)]
#[command(
    name = "quatconv",
    version,
    about = "Detect, migrate, and convert between quaternion conventions",
    long_about = "Detect which quaternion convention produced a data file, migrate datasets \
                  between conventions, convert single values between representations, \
                  integrate rigid-body kinematics, and run the built-in identity suite.\n\n\
                  Quaternion values on the command line are scalar-first: w,x,y,z."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify which convention produced a probe file
    Detect {
        /// JSON Lines probe file of product / q2m / m2q samples
        probe_file: PathBuf,
        /// Match tolerance for sample comparison
        #[arg(long, default_value_t = DETECTION_TOLERANCE)]
        tol: f64,
        /// Component order of quaternion arrays in the file
        #[arg(long, value_enum, default_value = "wxyz")]
        order: OrderArg,
    },
    /// Rewrite a quaternion dataset into a target convention
    Migrate {
        /// Input dataset (JSON Lines, header line first)
        dataset_in: PathBuf,
        /// Output path; records are written scalar-first
        dataset_out: PathBuf,
        /// Target convention
        #[arg(long, value_enum)]
        to: PairedConvArg,
    },
    /// Convert one value between quaternion, matrix, and rotation-vector form
    Convert {
        #[arg(long, value_enum)]
        from: Repr,
        #[arg(long, value_enum)]
        to: Repr,
        /// Convention for quaternion interpretation
        #[arg(long, value_enum, default_value = "hamilton-ch")]
        conv: ConvArg,
        /// Sign factor α_C relating the matrix to the rotation direction
        #[arg(long = "alphaC", value_parser = parse_sign, default_value = "+1")]
        alpha_c: Sign,
        /// Sign factor α_φ fixing the rotation-vector orientation
        #[arg(long = "alphaPhi", value_parser = parse_sign, default_value = "+1")]
        alpha_phi: Sign,
        /// Comma-separated components: 4 for quat (w,x,y,z), 9 for matrix
        /// (row-major), 3 for rotvec
        value: String,
    },
    /// Integrate rigid-body kinematics at constant angular velocity
    Integrate {
        #[arg(long, value_enum, default_value = "hamilton-ch")]
        conv: PairedConvArg,
        #[arg(long = "alphaC", value_parser = parse_sign, default_value = "+1")]
        alpha_c: Sign,
        /// Frame the angular velocity is resolved in
        #[arg(long, value_enum, default_value = "A", ignore_case = true)]
        frame: FrameArg,
        /// Constant angular velocity, comma-separated x,y,z
        #[arg(long)]
        omega: String,
        /// End time in seconds
        #[arg(long)]
        t: f64,
        /// Integration step in seconds
        #[arg(long)]
        dt: f64,
        /// CSV output path; omitted, the trajectory goes to stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in identity suite
    Check {
        /// Seed for the randomized identity batches
        #[arg(long, default_value_t = 2026)]
        seed: u64,
        /// Run a single group (products, homomorphy, sandwich, expansions,
        /// rotvec, table2, kinematics)
        #[arg(long)]
        group: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let quiet = matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = err.print();
            return if quiet {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_MALFORMED)
            };
        }
    };

    let code = match cli.command {
        Command::Detect {
            probe_file,
            tol,
            order,
        } => cmd_detect(&probe_file, tol, order.into()),
        Command::Migrate {
            dataset_in,
            dataset_out,
            to,
        } => cmd_migrate(&dataset_in, &dataset_out, to.convention()),
        Command::Convert {
            from,
            to,
            conv,
            alpha_c,
            alpha_phi,
            value,
        } => cmd_convert(
            from,
            to,
            conv.convention(),
            ConventionFactors::new(alpha_c, alpha_phi),
            &value,
        ),
        Command::Integrate {
            conv,
            alpha_c,
            frame,
            omega,
            t,
            dt,
            out,
        } => cmd_integrate(conv.convention(), alpha_c, frame.into(), &omega, t, dt, out),
        Command::Check { seed, group } => cmd_check(seed, group.as_deref()),
    };
    ExitCode::from(code)
}

// ── detect ───────────────────────────────────────────────────────────

fn verdict_label<V: std::fmt::Display>(verdict: &Verdict<V>) -> String {
    match verdict {
        Verdict::Found(v) => v.to_string(),
        Verdict::Unknown => "unknown (no samples)".to_string(),
        Verdict::Indeterminate => "indeterminate".to_string(),
        Verdict::Inconsistent => "inconsistent".to_string(),
        Verdict::NotRecognized => "unrecognized".to_string(),
    }
}

/// Exit code for a pair of verdicts. Contradictions dominate; a field that
/// was probed but undecidable is indeterminate; a field with no samples at
/// all is merely unasked and only counts when nothing resolved.
fn detection_exit<M, P>(multiplication: &Verdict<M>, map: &Verdict<P>) -> u8 {
    fn contradicted<V>(v: &Verdict<V>) -> bool {
        matches!(v, Verdict::Inconsistent | Verdict::NotRecognized)
    }
    if contradicted(multiplication) || contradicted(map) {
        EXIT_INCONSISTENT
    } else if matches!(multiplication, Verdict::Indeterminate)
        || matches!(map, Verdict::Indeterminate)
    {
        EXIT_INDETERMINATE
    } else if matches!(multiplication, Verdict::Found(_)) || matches!(map, Verdict::Found(_)) {
        0
    } else {
        EXIT_INDETERMINATE
    }
}

fn cmd_detect(probe_file: &PathBuf, tol: f64, order: ComponentOrder) -> u8 {
    let table = match read_probes_path(probe_file, order) {
        Ok(table) => table,
        Err(err) => {
            eprintln!("error: {err}");
            return EXIT_MALFORMED;
        }
    };
    let result = classify(&table, tol);
    println!("multiplication: {}", verdict_label(&result.multiplication));
    println!("map: {}", verdict_label(&result.map));
    println!(
        "homomorphic: {}",
        match result.homomorphic {
            Some(true) => "yes",
            Some(false) => "no",
            None => "unknown",
        }
    );
    detection_exit(&result.multiplication, &result.map)
}

// ── migrate ──────────────────────────────────────────────────────────

fn dataset_error_exit(err: &DatasetError) -> u8 {
    match err {
        DatasetError::AntihomomorphicHeader { .. } => EXIT_ANTIHOMOMORPHIC,
        _ => EXIT_MALFORMED,
    }
}

fn cmd_migrate(input: &PathBuf, output: &PathBuf, target: QmConvention) -> u8 {
    let ds = match read_dataset_path(input) {
        Ok(ds) => ds,
        Err(err) => {
            eprintln!("error: {err}");
            return dataset_error_exit(&err);
        }
    };
    let migrated = match migrate_dataset(&ds, target) {
        Ok(migrated) => migrated,
        Err(err) => {
            eprintln!("error: {err}");
            return dataset_error_exit(&err);
        }
    };
    if let Err(err) = write_dataset_path(output, &migrated) {
        eprintln!("error: {err}");
        return dataset_error_exit(&err);
    }
    let n = migrated.records.len();
    println!(
        "migrated {n} record{}: {} -> {}",
        if n == 1 { "" } else { "s" },
        ds.header.convention(),
        target
    );
    0
}

// ── convert ──────────────────────────────────────────────────────────

fn parse_components(text: &str, expected: usize, what: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != expected {
        return Err(format!(
            "{what} needs {expected} comma-separated components, got {}",
            parts.len()
        ));
    }
    let mut values = Vec::with_capacity(expected);
    for part in parts {
        let v: f64 = part
            .parse()
            .map_err(|_| format!("`{part}` is not a number"))?;
        if !v.is_finite() {
            return Err(format!("component `{part}` is not finite"));
        }
        values.push(v);
    }
    Ok(values)
}

fn format_components(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| format!("{v:.16e}"))
        .collect::<Vec<_>>()
        .join(",")
}

fn matrix_rows(flat: &[f64]) -> [[f64; 3]; 3] {
    [
        [flat[0], flat[1], flat[2]],
        [flat[3], flat[4], flat[5]],
        [flat[6], flat[7], flat[8]],
    ]
}

fn matrix_flat(m: &[[f64; 3]; 3]) -> Vec<f64> {
    m.iter().flatten().copied().collect()
}

fn cmd_convert(
    from: Repr,
    to: Repr,
    conv: QmConvention,
    f: ConventionFactors,
    value: &str,
) -> u8 {
    macro_rules! try_parse {
        ($expr:expr) => {
            match $expr {
                Ok(v) => v,
                Err(message) => {
                    eprintln!("error: {message}");
                    return EXIT_MALFORMED;
                }
            }
        };
    }

    // Parse the source value.
    let (quat_in, matrix_in, rotvec_in) = match from {
        Repr::Quat => {
            let v = try_parse!(parse_components(value, 4, "a quaternion"));
            (Some(Quaternion::new(v[0], v[1], v[2], v[3])), None, None)
        }
        Repr::Matrix => {
            let v = try_parse!(parse_components(value, 9, "a matrix"));
            let m = match RotationMatrix::new(matrix_rows(&v)) {
                Ok(m) => m,
                Err(err) => {
                    eprintln!("error: {err}");
                    return EXIT_MALFORMED;
                }
            };
            (None, Some(m), None)
        }
        Repr::Rotvec => {
            let v = try_parse!(parse_components(value, 3, "a rotation vector"));
            (None, None, Some(RotationVector::new([v[0], v[1], v[2]])))
        }
    };

    let unit_quat = |q: Quaternion<f64>| -> Result<UnitQuaternion<f64>, u8> {
        UnitQuaternion::normalize(q).map_err(|err| {
            eprintln!("error: {err}");
            EXIT_MALFORMED
        })
    };

    match (from, to) {
        (Repr::Quat, Repr::Quat) => {
            println!("{}", format_components(&quat_in.unwrap().to_array()));
        }
        (Repr::Quat, Repr::Matrix) => {
            let q = match unit_quat(quat_in.unwrap()) {
                Ok(q) => q,
                Err(code) => return code,
            };
            let c = quat_to_matrix(conv.map, &q);
            println!("{}", format_components(&matrix_flat(c.as_mat3())));
        }
        (Repr::Quat, Repr::Rotvec) => {
            let q = match unit_quat(quat_in.unwrap()) {
                Ok(q) => q,
                Err(code) => return code,
            };
            match maps::quat_to_rotvec(conv, f, &q) {
                Ok(phi) => println!("{}", format_components(&phi)),
                Err(err) => {
                    eprintln!("error: {err}");
                    return EXIT_ANTIHOMOMORPHIC;
                }
            }
        }
        (Repr::Matrix, Repr::Quat) => {
            let q = matrix_to_quat(conv.map, &matrix_in.unwrap());
            println!("{}", format_components(&q.as_quaternion().to_array()));
        }
        (Repr::Matrix, Repr::Matrix) => {
            println!(
                "{}",
                format_components(&matrix_flat(matrix_in.unwrap().as_mat3()))
            );
        }
        (Repr::Matrix, Repr::Rotvec) => {
            let phi = maps::matrix_to_rotvec(f, &matrix_in.unwrap());
            println!("{}", format_components(&phi));
        }
        (Repr::Rotvec, Repr::Quat) => match rotvec_to_quat(conv, f, rotvec_in.unwrap()) {
            Ok(q) => println!("{}", format_components(&q.as_quaternion().to_array())),
            Err(err) => {
                eprintln!("error: {err}");
                return EXIT_ANTIHOMOMORPHIC;
            }
        },
        (Repr::Rotvec, Repr::Matrix) => {
            let c = rotvec_to_matrix(f, rotvec_in.unwrap());
            println!("{}", format_components(&matrix_flat(c.as_mat3())));
        }
        (Repr::Rotvec, Repr::Rotvec) => {
            println!("{}", format_components(&rotvec_in.unwrap().phi));
        }
    }
    0
}

// ── integrate ────────────────────────────────────────────────────────

fn write_trajectory_csv<W: Write>(
    mut writer: W,
    trajectory: &[TrajectoryPoint<f64>],
) -> std::io::Result<()> {
    writeln!(writer, "t,q1,q2,q3,q4,m11,m12,m13,m21,m22,m23,m31,m32,m33")?;
    for point in trajectory {
        let mut row = Vec::with_capacity(14);
        row.push(point.t);
        row.extend(point.q.as_quaternion().to_array());
        row.extend(matrix_flat(point.c.as_mat3()));
        writeln!(writer, "{}", format_components(&row))?;
    }
    Ok(())
}

fn cmd_integrate(
    conv: QmConvention,
    alpha_c: Sign,
    frame: Frame,
    omega_text: &str,
    t_end: f64,
    dt: f64,
    out: Option<PathBuf>,
) -> u8 {
    let omega = match parse_components(omega_text, 3, "an angular velocity") {
        Ok(v) => AngularVelocity::new([v[0], v[1], v[2]], frame),
        Err(message) => {
            eprintln!("error: {message}");
            return EXIT_MALFORMED;
        }
    };
    let f = ConventionFactors::new(alpha_c, Sign::Plus);
    let trajectory = match integrate(
        conv,
        f,
        &UnitQuaternion::identity(),
        |_| omega,
        t_end,
        dt,
    ) {
        Ok(trajectory) => trajectory,
        Err(err) => {
            eprintln!("error: {err}");
            return EXIT_MALFORMED;
        }
    };

    // The two representations integrate independently; their worst
    // disagreement is the natural health metric to report.
    let drift = trajectory
        .iter()
        .map(|p| frobenius_diff(*quat_to_matrix(conv.map, &p.q).as_mat3(), *p.c.as_mat3()))
        .fold(0.0f64, f64::max);
    let end = trajectory.last().expect("trajectory always holds t = 0");
    let summary = format!(
        "final state: t={:.6}, q={}, max quaternion/matrix drift {:.3e}",
        end.t,
        format_components(&end.q.as_quaternion().to_array()),
        drift
    );

    match out {
        Some(path) => {
            let file = match std::fs::File::create(&path) {
                Ok(file) => file,
                Err(err) => {
                    eprintln!("error: {err}");
                    return EXIT_MALFORMED;
                }
            };
            if let Err(err) = write_trajectory_csv(std::io::BufWriter::new(file), &trajectory) {
                eprintln!("error: {err}");
                return EXIT_MALFORMED;
            }
            println!("wrote {} rows to {}", trajectory.len(), path.display());
            println!("{summary}");
        }
        None => {
            let stdout = std::io::stdout();
            if let Err(err) = write_trajectory_csv(stdout.lock(), &trajectory) {
                eprintln!("error: {err}");
                return EXIT_MALFORMED;
            }
            eprintln!("{summary}");
        }
    }
    0
}

// ── check ────────────────────────────────────────────────────────────

fn cmd_check(seed: u64, group: Option<&str>) -> u8 {
    let selected: Vec<&str> = match group {
        Some(name) => {
            if !checks::GROUP_NAMES.contains(&name) {
                eprintln!(
                    "error: unknown group `{name}`; available: {}",
                    checks::GROUP_NAMES.join(", ")
                );
                return EXIT_MALFORMED;
            }
            vec![checks::GROUP_NAMES[checks::GROUP_NAMES
                .iter()
                .position(|g| *g == name)
                .unwrap()]]
        }
        None => checks::GROUP_NAMES.to_vec(),
    };

    let mut all_pass = true;
    for name in selected {
        let report = checks::run_group(name, seed).expect("selected groups exist");
        if report.failures == 0 {
            println!("check {:<12} pass ({} identities)", report.name, report.checks);
        } else {
            all_pass = false;
            println!(
                "check {:<12} FAIL ({} of {} identities)",
                report.name, report.failures, report.checks
            );
        }
    }
    if all_pass {
        0
    } else {
        EXIT_MALFORMED
    }
}
