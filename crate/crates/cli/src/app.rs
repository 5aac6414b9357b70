//! Subcommand dispatch.
//!
//! Exit codes: 0 on success (and when every geometry check passes), 1 when a
//! geometry check fails, 2 for usage and parse errors, 3 for numerical
//! contract errors.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use matdec::{
    geometry_report, nearest_orthogonal, nearest_singular_on_sphere, pca_fit, polar_decompose,
    procrustes_fit, project, svd, to_sphere, truncate_rank, DenseMatrix, Orientation, PointSet,
    PolarSide,
};

use crate::csv::{
    format_column_csv, format_matrix_csv, format_row_csv, format_value, parse_matrix_csv,
    parse_pointset_csv, ParseError,
};

#[derive(Parser)]
#[command(
    name = "matdec",
    about = "Dense matrix decompositions, nearest-neighbor maps, Procrustes \
             alignment, PCA, and a geometry verification report",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Right,
    Left,
}

#[derive(Subcommand)]
enum Command {
    /// Singular value decomposition; writes <P>_W.csv, <P>_D.csv, <P>_V.csv
    Svd {
        input: PathBuf,
        #[arg(long)]
        out_prefix: String,
    },
    /// Polar decomposition; writes <P>_U.csv and <P>_P.csv
    Polar {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = SideArg::Right)]
        side: SideArg,
        #[arg(long)]
        out_prefix: String,
    },
    /// Nearest orthogonal matrix, printed to stdout
    NearestOrthogonal {
        input: PathBuf,
        /// Force determinant +1 (nearest rotation)
        #[arg(long)]
        special: bool,
    },
    /// Nearest matrix of rank at most RANK, printed to stdout
    Truncate {
        input: PathBuf,
        #[arg(long)]
        rank: usize,
    },
    /// Nearest singular matrix, printed to stdout
    NearestSingular {
        input: PathBuf,
        /// Rescale the input to Frobenius norm sqrt(n) and return the
        /// nearest singular neighbor on that sphere
        #[arg(long)]
        sphere: bool,
    },
    /// Procrustes alignment of two point sets; rotation to stdout,
    /// disparity and centroids to stderr
    Procrustes {
        p: PathBuf,
        q: PathBuf,
        /// Restrict to proper rotations
        #[arg(long)]
        special: bool,
        /// Normalize both sets to unit total squared norm after centering
        #[arg(long)]
        scale: bool,
    },
    /// PCA of a data matrix; writes <P>_mean.csv, <P>_components.csv,
    /// <P>_singular_values.csv, <P>_coeffs.csv
    #[command(group(ArgGroup::new("orientation").args(["rows_as_points", "cols_as_points"])))]
    Pca {
        data: PathBuf,
        #[arg(long)]
        components: usize,
        /// Treat each row as one data point (the default)
        #[arg(long)]
        rows_as_points: bool,
        /// Treat each column as one data point
        #[arg(long)]
        cols_as_points: bool,
        #[arg(long)]
        out_prefix: String,
    },
    /// Run the seeded geometry verification report
    VerifyGeometry {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

enum AppError {
    Parse { file: PathBuf, error: ParseError },
    Io { file: PathBuf, error: std::io::Error },
    Numeric(matdec::Error),
}

impl AppError {
    fn exit_code(&self) -> i32 {
        match self {
            AppError::Parse { .. } | AppError::Io { .. } => 2,
            AppError::Numeric(_) => 3,
        }
    }
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AppError::Parse { file, error } => write!(f, "{}: {}", file.display(), error),
            AppError::Io { file, error } => write!(f, "{}: {}", file.display(), error),
            AppError::Numeric(e) => write!(f, "{}", e),
        }
    }
}

impl From<matdec::Error> for AppError {
    fn from(e: matdec::Error) -> Self {
        AppError::Numeric(e)
    }
}

/// Parses `argv` and runs the selected subcommand, returning the process
/// exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders help/version on stdout (exit 0) and usage errors
            // on stderr (exit 2).
            let _ = e.print();
            return e.exit_code();
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            e.exit_code()
        }
    }
}

fn dispatch(command: Command) -> Result<i32, AppError> {
    match command {
        Command::Svd { input, out_prefix } => {
            let a = read_matrix(&input)?;
            let f = svd(&a)?;
            write_text(&prefixed(&out_prefix, "W"), &format_matrix_csv(&f.w))?;
            write_text(&prefixed(&out_prefix, "D"), &format_column_csv(&f.singular_values))?;
            write_text(&prefixed(&out_prefix, "V"), &format_matrix_csv(&f.v))?;
            Ok(0)
        }
        Command::Polar { input, side, out_prefix } => {
            let a = read_matrix(&input)?;
            let side = match side {
                SideArg::Right => PolarSide::Right,
                SideArg::Left => PolarSide::Left,
            };
            let f = polar_decompose(&a, side)?;
            write_text(&prefixed(&out_prefix, "U"), &format_matrix_csv(&f.u))?;
            write_text(&prefixed(&out_prefix, "P"), &format_matrix_csv(&f.p))?;
            if !f.unique_orthogonal {
                eprintln!("warning: input is singular; the orthogonal factor is not unique");
            }
            Ok(0)
        }
        Command::NearestOrthogonal { input, special } => {
            let a = read_matrix(&input)?;
            let u = nearest_orthogonal(&a, special)?;
            print!("{}", format_matrix_csv(&u));
            Ok(0)
        }
        Command::Truncate { input, rank } => {
            let a = read_matrix(&input)?;
            let t = truncate_rank(&a, rank)?;
            if t.tie {
                eprintln!(
                    "warning: singular values tie at the cut; the nearest rank-{} matrix is not unique",
                    rank
                );
            }
            print!("{}", format_matrix_csv(&t.matrix));
            Ok(0)
        }
        Command::NearestSingular { input, sphere } => {
            let a = read_matrix(&input)?;
            if sphere {
                let point = to_sphere(&a)?;
                let b = nearest_singular_on_sphere(&point)?;
                print!("{}", format_matrix_csv(b.matrix()));
            } else {
                let r = a.rows().min(a.cols());
                if r < 2 {
                    return Err(AppError::Numeric(matdec::Error::RankOutOfRange {
                        rank: 0,
                        max: r,
                    }));
                }
                let t = truncate_rank(&a, r - 1)?;
                if t.tie {
                    eprintln!("warning: singular values tie at the cut; the nearest singular matrix is not unique");
                }
                print!("{}", format_matrix_csv(&t.matrix));
            }
            Ok(0)
        }
        Command::Procrustes { p, q, special, scale } => {
            let p_set = read_pointset(&p)?;
            let q_set = read_pointset(&q)?;
            let fit = procrustes_fit(&p_set, &q_set, special, scale)?;
            print!("{}", format_matrix_csv(&fit.rotation));
            eprintln!("disparity: {}", format_value(fit.disparity));
            eprint!("centroid_p: {}", format_row_csv(&fit.centroid_p));
            eprint!("centroid_q: {}", format_row_csv(&fit.centroid_q));
            if scale {
                eprintln!("scale_p: {}", format_value(fit.scale_p));
                eprintln!("scale_q: {}", format_value(fit.scale_q));
            }
            if !fit.unique {
                eprintln!("warning: degenerate configuration; the optimal map is not unique");
            }
            Ok(0)
        }
        Command::Pca { data, components, rows_as_points: _, cols_as_points, out_prefix } => {
            let matrix = read_matrix(&data)?;
            let orientation = if cols_as_points {
                Orientation::ColsAsPoints
            } else {
                Orientation::RowsAsPoints
            };
            let model = pca_fit(&matrix, orientation)?;
            if components > model.component_count() {
                return Err(AppError::Numeric(matdec::Error::IndexOutOfRange {
                    value: components,
                    max: model.component_count(),
                }));
            }
            write_text(&prefixed(&out_prefix, "mean"), &format_row_csv(&model.mean))?;
            let mut comp_text = String::new();
            for w in &model.components[..components] {
                comp_text.push_str(&format_row_csv(w));
            }
            write_text(&prefixed(&out_prefix, "components"), &comp_text)?;
            write_text(
                &prefixed(&out_prefix, "singular_values"),
                &format_column_csv(&model.singular_values),
            )?;
            let points: Vec<Vec<f64>> = match orientation {
                Orientation::RowsAsPoints => {
                    (0..matrix.rows()).map(|i| matrix.row(i).to_vec()).collect()
                }
                Orientation::ColsAsPoints => (0..matrix.cols()).map(|j| matrix.col(j)).collect(),
            };
            let mut coeff_text = String::new();
            for p in &points {
                let coeffs = project(&model, p, components)?;
                coeff_text.push_str(&format_row_csv(&coeffs));
            }
            write_text(&prefixed(&out_prefix, "coeffs"), &coeff_text)?;
            Ok(0)
        }
        Command::VerifyGeometry { trials, seed, tol } => {
            let report = geometry_report(trials, seed, tol)?;
            print!("{}", report.to_table_string());
            Ok(if report.all_passed() { 0 } else { 1 })
        }
    }
}

fn prefixed(prefix: &str, part: &str) -> PathBuf {
    PathBuf::from(format!("{}_{}.csv", prefix, part))
}

fn read_text(path: &Path) -> Result<String, AppError> {
    fs::read_to_string(path).map_err(|error| AppError::Io { file: path.to_path_buf(), error })
}

fn write_text(path: &Path, text: &str) -> Result<(), AppError> {
    fs::write(path, text).map_err(|error| AppError::Io { file: path.to_path_buf(), error })
}

fn read_matrix(path: &Path) -> Result<DenseMatrix, AppError> {
    parse_matrix_csv(&read_text(path)?)
        .map_err(|error| AppError::Parse { file: path.to_path_buf(), error })
}

fn read_pointset(path: &Path) -> Result<PointSet, AppError> {
    parse_pointset_csv(&read_text(path)?)
        .map_err(|error| AppError::Parse { file: path.to_path_buf(), error })
}
