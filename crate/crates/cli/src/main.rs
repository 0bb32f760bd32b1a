mod parse;
mod svg;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use reptile_core::acceptance;
use reptile_core::algebra::{AlgebraicValue, Cutoff};
use reptile_core::courant::{classify_box, classify_triangle, explain, Verdict, Witness};
use reptile_core::eigenfn::EigenfunctionCombo;
use reptile_core::folding::{build_frame, partition};
use reptile_core::nodal::{count_formula, count_grid, deficiency_report, dirichlet_deficiency_check, nodal_raster};
use reptile_core::qlattice::{enumerate_below, Bc, Domain, Problem, QuantumNumber};
use reptile_core::spectrum::build_index;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] reptile_core::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Failed(String),
}

#[derive(Parser)]
#[command(name = "reptile", version, about = "Spectra, nodal counts and Courant-sharpness for the right isosceles triangle and 2^(1/n) boxes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum DomainKind {
    Triangle,
    Box,
}

#[derive(Clone, Copy, ValueEnum)]
enum BcKind {
    Neumann,
    Dirichlet,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Args, Clone, Copy)]
struct DomainArgs {
    #[arg(long, value_enum, default_value = "triangle")]
    domain: DomainKind,
    /// Box dimension.
    #[arg(long, default_value_t = 2)]
    dim: u32,
    #[arg(long, value_enum, default_value = "neumann")]
    bc: BcKind,
}

impl DomainArgs {
    fn domain(&self) -> Result<Domain, CliError> {
        match self.domain {
            DomainKind::Triangle => Ok(Domain::Triangle),
            DomainKind::Box => Domain::new_box(self.dim).map_err(|e| CliError::Usage(e.to_string())),
        }
    }

    fn problem(&self) -> Result<Problem, CliError> {
        let bc = match self.bc {
            BcKind::Neumann => Bc::Neumann,
            BcKind::Dirichlet => Bc::Dirichlet,
        };
        Ok(Problem::new(self.domain()?, bc))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues (or lattice points) strictly below a cutoff.
    Spectrum {
        #[command(flatten)]
        d: DomainArgs,
        #[arg(long)]
        cutoff: String,
        /// List every quantum number instead of grouped levels.
        #[arg(long)]
        points: bool,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Courant-sharpness verdict for every Neumann eigenvalue below a cutoff.
    Verdicts {
        #[arg(long, value_enum, default_value = "triangle")]
        domain: DomainKind,
        #[arg(long, default_value_t = 2)]
        dim: u32,
        #[arg(long)]
        cutoff: String,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        /// Print the justification for the eigenvalue at this position.
        #[arg(long)]
        explain: Option<usize>,
    },
    /// Nodal-domain count of a basis eigenfunction.
    Nodal {
        #[command(flatten)]
        d: DomainArgs,
        #[arg(long)]
        qn: String,
        /// Minimum samples along the first axis.
        #[arg(long)]
        grid: Option<usize>,
        /// Write the sign map (2-D only).
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Facets and partition of the k-frame.
    Frame {
        #[arg(long, value_enum, default_value = "triangle")]
        domain: DomainKind,
        #[arg(long, default_value_t = 2)]
        dim: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a combination of basis functions at a point.
    Eval {
        #[command(flatten)]
        d: DomainArgs,
        /// Quantum number; repeat for combinations.
        #[arg(long = "qn", required = true)]
        qns: Vec<String>,
        /// Coefficient per quantum number (default 1).
        #[arg(long = "coef", allow_hyphen_values = true)]
        coefs: Vec<f64>,
        /// Point such as `pi/2,0.3`.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Symmetry of a combination under reflection across the cut.
    Checksym {
        #[command(flatten)]
        d: DomainArgs,
        #[arg(long = "qn", required = true)]
        qns: Vec<String>,
        #[arg(long = "coef", allow_hyphen_values = true)]
        coefs: Vec<f64>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = acceptance::SEED)]
        seed: u64,
    },
    /// Largest value of a combination on its k-frame.
    Checkframe {
        #[command(flatten)]
        d: DomainArgs,
        #[arg(long = "qn", required = true)]
        qns: Vec<String>,
        #[arg(long = "coef", allow_hyphen_values = true)]
        coefs: Vec<f64>,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = acceptance::SEED)]
        seed: u64,
    },
    /// Nodal deficiency bounds for a Neumann eigenvalue.
    Deficiency {
        #[arg(long, value_enum, default_value = "triangle")]
        domain: DomainKind,
        #[arg(long, default_value_t = 2)]
        dim: u32,
        #[arg(long)]
        lambda: String,
    },
    /// Both sides of the Dirichlet deficiency identity.
    DirichletCheck {
        #[arg(long, value_enum, default_value = "box")]
        domain: DomainKind,
        #[arg(long, default_value_t = 2)]
        dim: u32,
        #[arg(long)]
        lambda: String,
    },
    /// Run the acceptance criteria.
    Selftest {
        /// Run only these criteria.
        #[arg(long = "criterion")]
        criteria: Vec<u8>,
        #[arg(long)]
        json: bool,
    },
}

fn neumann(domain: DomainKind, dim: u32) -> DomainArgs {
    DomainArgs {
        domain,
        dim,
        bc: BcKind::Neumann,
    }
}

fn cutoff(problem: Problem, s: &str) -> Result<Cutoff, CliError> {
    let c = Cutoff::parse(problem.ring(), s).map_err(|e| CliError::Usage(e.to_string()))?;
    if !c.is_positive() {
        return Err(CliError::Usage("the cutoff must be positive".into()));
    }
    Ok(c)
}

fn value(problem: Problem, s: &str) -> Result<AlgebraicValue, CliError> {
    AlgebraicValue::parse(problem.ring(), s).map_err(|e| CliError::Usage(e.to_string()))
}

fn qn(problem: Problem, s: &str) -> Result<QuantumNumber, CliError> {
    QuantumNumber::new(problem, parse::quantum_number(s)?).map_err(|e| CliError::Usage(e.to_string()))
}

fn combo(problem: Problem, qns: &[String], coefs: &[f64]) -> Result<EigenfunctionCombo, CliError> {
    if !coefs.is_empty() && coefs.len() != qns.len() {
        return Err(CliError::Usage(format!("{} coefficients for {} quantum numbers", coefs.len(), qns.len())));
    }
    let terms = qns
        .iter()
        .enumerate()
        .map(|(i, s)| Ok((coefs.get(i).copied().unwrap_or(1.0), qn(problem, s)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    EigenfunctionCombo::new(problem, terms).map_err(|e| CliError::Usage(e.to_string()))
}

fn emit_json<T: Serialize>(out: &mut impl Write, v: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)?;
    Ok(())
}

fn emit_rows(out: &mut impl Write, format: Format, header: &[&str], rows: &[Vec<String>]) -> Result<(), CliError> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(header)?;
            for r in rows {
                w.write_record(r)?;
            }
            w.flush()?;
        }
        _ => {
            let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
            for r in rows {
                for (w, c) in widths.iter_mut().zip(r) {
                    *w = (*w).max(c.chars().count());
                }
            }
            let line = |cells: Vec<&str>| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            writeln!(out, "{}", line(header.to_vec()))?;
            for r in rows {
                writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
            }
        }
    }
    Ok(())
}

fn join_members(m: &[QuantumNumber]) -> String {
    m.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(" ")
}

fn witness_summary(w: &Witness) -> String {
    match w {
        Witness::Count { nu } => format!("nu={nu}"),
        Witness::BoundaryPoints { points } => format!("boundary {} {}", points[0], points[1]),
        Witness::SubdomainPair { subdomain, pairs, .. } => {
            format!("{subdomain:?} ({},{}) ({},{})", pairs[0].0, pairs[0].1, pairs[1].0, pairs[1].1)
        }
        Witness::Multiplicity { d } => format!("d={d}"),
        Witness::ReferenceSet { kind, size, extra } => format!("{kind:?} size={size} extra={extra}"),
        Witness::BoxPoint { point, nu, .. } => format!("point {point} nu={nu}"),
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<bool, CliError> {
    match cli.command {
        Command::Spectrum { d, cutoff: c, points, format } => {
            let problem = d.problem()?;
            let c = cutoff(problem, &c)?;
            if points {
                let region = enumerate_below(problem, &c)?;
                if format == Format::Json {
                    let rows: Vec<_> = region
                        .points()
                        .iter()
                        .zip(region.values())
                        .map(|(m, v)| json!({"qn": m, "value": v, "value_f64": v.to_f64(), "parity": m.parity()}))
                        .collect();
                    emit_json(out, &json!({"problem": problem, "cutoff": c, "points": rows}))?;
                } else {
                    let rows: Vec<Vec<String>> = region
                        .points()
                        .iter()
                        .zip(region.values())
                        .map(|(m, v)| vec![m.to_string(), v.to_string(), format!("{:.9}", v.to_f64()), m.parity().to_string()])
                        .collect();
                    emit_rows(out, format, &["qn", "value", "approx", "parity"], &rows)?;
                }
            } else {
                let index = build_index(problem, &c)?;
                if format == Format::Json {
                    emit_json(out, &json!({"problem": problem, "cutoff": c, "levels": index.levels()}))?;
                } else {
                    let rows: Vec<Vec<String>> = index
                        .levels()
                        .iter()
                        .map(|l| {
                            vec![
                                l.position.to_string(),
                                l.value.to_string(),
                                format!("{:.9}", l.value.to_f64()),
                                l.multiplicity().to_string(),
                                l.parity().to_string(),
                                join_members(&l.members),
                            ]
                        })
                        .collect();
                    emit_rows(out, format, &["position", "value", "approx", "multiplicity", "parity", "members"], &rows)?;
                }
            }
            Ok(true)
        }
        Command::Verdicts {
            domain,
            dim,
            cutoff: c,
            format,
            explain: pos,
        } => {
            let d = neumann(domain, dim);
            let problem = d.problem()?;
            let c = cutoff(problem, &c)?;
            let verdicts: Vec<Verdict> = match d.domain()? {
                Domain::Triangle => classify_triangle(&c)?,
                Domain::Box(n) => classify_box(n, &c)?,
            };
            if let Some(pos) = pos {
                let v = verdicts
                    .iter()
                    .find(|v| v.position <= pos && pos < v.position + v.multiplicity)
                    .ok_or_else(|| CliError::Usage(format!("position {pos} is not below the cutoff")))?;
                write!(out, "{}", explain(v))?;
                return Ok(true);
            }
            if format == Format::Json {
                emit_json(out, &json!({"problem": problem, "cutoff": c, "verdicts": verdicts}))?;
            } else {
                let rows: Vec<Vec<String>> = verdicts
                    .iter()
                    .map(|v| {
                        vec![
                            v.position.to_string(),
                            v.value.to_string(),
                            format!("{:.6}", v.value_f64),
                            v.multiplicity.to_string(),
                            v.parity.to_string(),
                            if v.sharp { "yes" } else { "no" }.to_string(),
                            format!("{:?}", v.reason),
                            witness_summary(&v.witness),
                        ]
                    })
                    .collect();
                emit_rows(
                    out,
                    format,
                    &["position", "value", "approx", "multiplicity", "parity", "sharp", "reason", "witness"],
                    &rows,
                )?;
            }
            Ok(true)
        }
        Command::Nodal { d, qn: q, grid, svg } => {
            let problem = d.problem()?;
            let m = qn(problem, &q)?;
            let f = EigenfunctionCombo::basis(&m);
            let count = count_grid(&f, grid)?;
            let formula = count_formula(&m).ok().map(|c| c.nu);
            if let Some(path) = svg {
                if problem.dim() != 2 {
                    return Err(CliError::Usage("SVG output needs a 2-D domain".into()));
                }
                let raster = nodal_raster(&f, grid.or(Some(200)));
                std::fs::write(path, svg::nodal(problem.domain, &raster))?;
            }
            emit_json(
                out,
                &json!({"qn": m, "value": m.value(), "nu": count.nu, "method": count.method, "formula": formula}),
            )?;
            Ok(formula.is_none_or(|f| f == count.nu))
        }
        Command::Frame { domain, dim, k, svg, json: as_json } => {
            let dom = neumann(domain, dim).domain()?;
            let frame = build_frame(dom, k);
            if let Some(path) = svg {
                if dom.dim() != 2 {
                    return Err(CliError::Usage("SVG output needs a 2-D domain".into()));
                }
                std::fs::write(path, svg::frame(&frame))?;
            }
            let part = partition(dom, k)?;
            if as_json {
                let facets: Vec<_> = frame
                    .facets
                    .iter()
                    .map(|f| match f.segment_points() {
                        Some((a, b)) => json!({"segment": [a, b]}),
                        None => {
                            let (axis, bounds) = f.slab_bounds(dom).expect("slab");
                            json!({"slab": {"axis": axis, "bounds": bounds}})
                        }
                    })
                    .collect();
                emit_json(out, &json!({"domain": dom, "k": k, "facets": facets, "partition": part}))?;
            } else {
                writeln!(out, "{dom} k={k}: {} facets, {} pieces", frame.facets.len(), part.count)?;
            }
            Ok(true)
        }
        Command::Eval { d, qns, coefs, at } => {
            let f = combo(d.problem()?, &qns, &coefs)?;
            let p = parse::point(&at)?;
            if p.len() != f.problem().dim() {
                return Err(CliError::Usage(format!("point has {} coordinates, domain needs {}", p.len(), f.problem().dim())));
            }
            let v = f.eval(&p).map_err(|e| CliError::Usage(e.to_string()))?;
            emit_json(out, &json!({"point": p, "value": v, "eigenvalue": f.value()}))?;
            Ok(true)
        }
        Command::Checksym { d, qns, coefs, samples, seed } => {
            let f = combo(d.problem()?, &qns, &coefs)?;
            let s = f.symmetry_check(samples, seed);
            emit_json(out, &json!({"eigenvalue": f.value(), "parity": f.value().parity(), "symmetry": format!("{s:?}")}))?;
            Ok(true)
        }
        Command::Checkframe { d, qns, coefs, samples, seed } => {
            let f = combo(d.problem()?, &qns, &coefs)?;
            let core = reptile_core::spectrum::odd_core(f.value())?;
            let r = f.frame_vanishing(&build_frame(f.problem().domain, core.k), samples, seed)?;
            let ok = r.relative <= 1e-9;
            emit_json(out, &json!({"eigenvalue": f.value(), "result": r, "vanishes": ok}))?;
            Ok(ok)
        }
        Command::Deficiency { domain, dim, lambda } => {
            let d = neumann(domain, dim);
            let v = value(d.problem()?, &lambda)?;
            emit_json(out, &deficiency_report(d.domain()?, &v)?)?;
            Ok(true)
        }
        Command::DirichletCheck { domain, dim, lambda } => {
            let d = neumann(domain, dim);
            let v = value(d.problem()?, &lambda)?;
            let c = dirichlet_deficiency_check(d.domain()?, &v)?;
            let ok = c.lhs == c.rhs;
            emit_json(out, &json!({"check": c, "holds": ok}))?;
            Ok(ok)
        }
        Command::Selftest { criteria, json: as_json } => {
            let ids = if criteria.is_empty() { acceptance::criterion_ids() } else { criteria };
            let mut all = true;
            let mut results = Vec::new();
            for id in ids {
                let r = acceptance::run(id).map_err(|e| CliError::Usage(e.to_string()))?;
                all &= r.passed;
                if !as_json {
                    writeln!(out, "{r}")?;
                    out.flush()?;
                }
                results.push(r);
            }
            if as_json {
                emit_json(out, &results)?;
            }
            Ok(all)
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("REPTILE_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| CliError::Usage(format!("REPTILE_THREADS must be a positive integer, got {v:?}")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Failed(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = configure_threads().and_then(|_| run(cli, &mut out));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
