//! `grassring` — command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input or catalog error,
//! 3 unknown entity, 4 contract violation.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use grassring::catalog::{self, Catalog, SphereBundleDescriptor};
use grassring::duality::{self, IntMatrix};
use grassring::exact::parse_rational;
use grassring::linalg::{Matrix, Q};
use grassring::volumes::SpaceDescriptor;
use grassring::{verify, ClassExpr, Error, ErrorKind};

#[derive(Parser)]
#[command(name = "grassring", version, about = "Exact characteristic-class computations on oriented Grassmannians")]
struct Cli {
    /// Catalog JSON to use instead of the bundled one.
    #[arg(long, global = true, value_name = "PATH")]
    catalog: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Volume of a space such as `G(3,7)`, `SO(5)`, `SLAG(3)` or `S(6)`.
    Volume {
        space: String,
        /// Also print a decimal approximation.
        #[arg(long)]
        approx: bool,
    },
    /// Act on a characteristic class of a catalogued manifold.
    Class { manifold: String, expr: String, action: Action },
    /// Dual basis of the degree-`q` classes under the L² inner product.
    DualBasis { manifold: String, degree: u32 },
    /// A pairing table `∫_cycle class` with its integral dual basis.
    ///
    /// Either `MANIFOLD DEGREE`, or `--matrix` with rows separated by `;`
    /// and rational entries by `,`.
    Pairing {
        manifold: Option<String>,
        degree: Option<u32>,
        #[arg(long, conflicts_with_all = ["manifold", "degree"])]
        matrix: Option<String>,
    },
    /// Smith normal form of an integer matrix (`"2,4;6,8"`).
    Snf { matrix: String },
    /// Betti numbers of a sphere-bundle base by the Gysin sequence.
    ///
    /// Either a catalogued fibration name, or all of the explicit flags.
    Gysin {
        fibration: Option<String>,
        #[arg(long, conflicts_with = "fibration", requires_all = ["total", "base_dim"])]
        fiber_dim: Option<u32>,
        /// Betti numbers of the total space, comma separated.
        #[arg(long, value_delimiter = ',')]
        total: Option<Vec<u64>>,
        #[arg(long)]
        base_dim: Option<u32>,
        /// The bundle's Euler class vanishes rationally.
        #[arg(long)]
        euler_vanishes: bool,
    },
    /// Gauss-map pushforward of a closed surface or 4-manifold.
    Gauss {
        #[arg(long)]
        target: String,
        #[arg(long, allow_hyphen_values = true)]
        chi: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        sign: i64,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        lambda: String,
    },
    /// Poincaré polynomial of `G(k,n)`.
    Betti { manifold: String },
    /// Re-derive every catalogued number and report.
    Verify {
        /// Write the report as JSON.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        /// Only run groups (or checks) matching this pattern.
        #[arg(long)]
        filter: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Action {
    Reduce,
    Integrate,
    Star,
    Dual,
}

enum Failure {
    Engine(Error),
    Usage(String),
    Io(std::io::Error),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Engine(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.kind() {
                ErrorKind::Input => 2,
                ErrorKind::UnknownEntity => 3,
                ErrorKind::Contract => 4,
            })
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let owned;
    let cat = match &cli.catalog {
        Some(p) => {
            owned = Catalog::from_path(p)?;
            &owned
        }
        None => Catalog::default_catalog(),
    };
    match cli.command {
        Command::Volume { space, approx } => {
            let s: SpaceDescriptor = space.parse()?;
            let v = cat.volume(&s)?;
            println!("{v}");
            if approx {
                println!("~ {}", v.to_f64());
            }
        }
        Command::Class { manifold, expr, action } => {
            let m = cat.model(&manifold)?;
            let x: ClassExpr = expr.parse()?;
            match action {
                Action::Reduce => println!("{}", m.reduce(&x)?),
                Action::Integrate => println!("{}", m.integrate(&x)?),
                Action::Star => println!("{}", m.star(&x)?),
                Action::Dual => println!("{}", duality::poincare_dual(&x, m)?),
            }
        }
        Command::DualBasis { manifold, degree } => {
            let m = cat.model(&manifold)?;
            let basis = m.basis_exprs(degree);
            if basis.is_empty() {
                return Err(Error::NoDataForDegree(m.name().to_string(), degree).into());
            }
            for (b, d) in basis.iter().zip(duality::model_dual_basis(m, degree)?) {
                println!("{b}  ->  {d}");
            }
        }
        Command::Pairing { manifold, degree, matrix } => match (manifold, degree, matrix) {
            (_, _, Some(text)) => {
                let p = parse_matrix(&text)?;
                print_dual(&p)?;
            }
            (Some(name), Some(q), None) => {
                let t = cat.cycle_pairing_table(&name, q)?;
                print!("{t}");
                print_dual(&t.entries)?;
            }
            _ => return Err(Failure::Usage("pairing needs MANIFOLD DEGREE or --matrix".into())),
        },
        Command::Snf { matrix } => {
            let a = parse_matrix(&matrix)?;
            let a = duality::to_int_matrix(&a)
                .ok_or_else(|| Error::Parse(format!("`{matrix}` is not an integer matrix")))?;
            let (u, s, v) = duality::smith_normal_form(&a);
            println!("S = {}", render_int(&s));
            println!("U = {}", render_int(&u));
            println!("V = {}", render_int(&v));
        }
        Command::Gysin { fibration, fiber_dim, total, base_dim, euler_vanishes } => {
            let d = match (fibration, fiber_dim, total, base_dim) {
                (Some(name), ..) => SphereBundleDescriptor::from(cat.fibration(&name)?),
                (None, Some(fiber_dim), Some(total_betti), Some(base_dim)) => SphereBundleDescriptor {
                    fiber_dim,
                    total_betti,
                    base_dim,
                    euler_class_vanishes_rationally: euler_vanishes,
                },
                _ => return Err(Failure::Usage("gysin needs a fibration name or --fiber-dim/--total/--base-dim".into())),
            };
            let b = catalog::gysin_betti_solver(&d)?;
            println!("{b}");
        }
        Command::Gauss { target, chi, sign, lambda } => {
            let lambda = parse_rational(&lambda)?;
            println!("{}", catalog::gauss_map_class(&target, chi, sign, &lambda)?.to_explicit_string());
        }
        Command::Betti { manifold } => {
            let p = cat.poincare_polynomial(&manifold)?;
            println!("{p}");
            let b: Vec<String> = p.coefficients().iter().map(u64::to_string).collect();
            println!("betti: {}", b.join(", "));
            println!("euler characteristic: {}", p.alternating_sum());
        }
        Command::Verify { json, filter } => {
            let report = verify::run(cat, filter.as_deref());
            print!("{report}");
            if let Some(path) = json {
                std::fs::write(path, report.to_json() + "\n")?;
            }
            if !report.passed() {
                return Err(Failure::Verify);
            }
        }
    }
    Ok(())
}

fn print_dual(p: &Matrix) -> Result<(), Error> {
    let d = duality::integral_dual_basis(p)?;
    println!("index: {}", duality::lattice_index(p)?);
    println!("dual coefficients: {}", render_q(&d.coefficients));
    println!("integral: {}", d.integral);
    Ok(())
}

/// Rows separated by `;`, entries by `,`; entries are rationals `a/b`.
fn parse_matrix(text: &str) -> Result<Matrix, Error> {
    let m: Matrix = text
        .split(';')
        .map(|row| row.split(',').map(|x| parse_rational(x.trim())).collect::<Result<Vec<Q>, _>>())
        .collect::<Result<_, _>>()?;
    let width = m.first().map_or(0, Vec::len);
    if m.iter().any(|r| r.len() != width) {
        return Err(Error::Parse(format!("ragged matrix `{text}`")));
    }
    Ok(m)
}

fn render_rows<T: ToString>(m: &[Vec<T>]) -> String {
    let rows: Vec<String> = m.iter().map(|r| r.iter().map(T::to_string).collect::<Vec<_>>().join(",")).collect();
    rows.join(";")
}

fn render_q(m: &Matrix) -> String {
    render_rows(m)
}

fn render_int(m: &IntMatrix) -> String {
    render_rows(m)
}
