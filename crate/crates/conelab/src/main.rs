use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context as _};
use clap::{Parser, Subcommand, ValueEnum};
use conelab::cache::Cache;
use conelab::convert::{build_file, convert, facets, Context, Direction, Settings};
use conelab::format::ConeFile;
use conelab::report::{orbit_report, orbit_vectors, parse_group, LABEL_BOUND};
use conelab::suites::{parse_range, run_suite, Suite};
use conelab::table::build_table;
use conelab_core::exactvec::PairVector;
use conelab_core::facetlab::{
    classify_facet, cut_roots, ocut_roots, pi_project, psi_point, switch_cut, switch_ocut,
    transport_ints, FacetClass, HypermetricIndex,
};
use conelab_core::generators::{ConeId, Family};
use conelab_core::linalg;
use conelab_core::polyhedra::{Ambient, Cone};
use conelab_core::symmetry::Layout;
use conelab_core::{BigInt, IntVec, PointSet};

#[derive(Parser)]
#[command(
    name = "conelab",
    version,
    about = "Exact polyhedral toolkit for metric, quasi-metric and cut cones"
)]
struct Cli {
    /// Worker threads for parallel sections (0: one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Cache directory (default: $CONELAB_CACHE or .conelab-cache).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Do not read or write the cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Stop with exit code 3 when an intermediate cone exceeds this many rays.
    #[arg(long, global = true)]
    max_rays: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the definitional representation of a family cone.
    Build {
        family: String,
        n: usize,
        /// Bound on |b_i| for the hypermetric families.
        #[arg(long)]
        bound: Option<i64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Add the dual representation by double description.
    Convert {
        input: PathBuf,
        /// `facets` (v-to-h) or `rays` (h-to-v); inferred when omitted.
        #[arg(long)]
        to: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Continue from a stored checkpoint.
        #[arg(long)]
        resume: bool,
        /// Rows between checkpoints.
        #[arg(long, default_value_t = 8)]
        checkpoint_every: usize,
        /// Checkpoint and stop after this many rows.
        #[arg(long)]
        stop_after: Option<usize>,
        /// Include the ray/facet incidence section.
        #[arg(long)]
        incidence: bool,
    },
    /// Facet orbits under a permutation group.
    Orbits {
        input: PathBuf,
        /// `sym`, `rev` (with reversal) or `all` (including the point 0).
        #[arg(long, default_value = "default")]
        group: String,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
        /// Also write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Also write the CSV report here.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Orbit counts per switching type (input: Cut_{n+1} or OCut_n).
        #[arg(long)]
        table: bool,
    },
    /// Root sets of each facet.
    Roots {
        input: PathBuf,
        /// Only this facet (index in the file).
        #[arg(long)]
        facet: Option<usize>,
    },
    /// Switch facets by a root set.
    Switch {
        input: PathBuf,
        /// Comma-separated points of T.
        #[arg(long)]
        set: String,
        #[arg(long)]
        facet: Option<usize>,
    },
    /// Image of a cone on {0} u V under psi or pi, as a ray file.
    Project {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Map::Psi)]
        map: Map,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Symmetric/asymmetric class and hypermetric label of each facet.
    Classify {
        input: PathBuf,
        #[arg(long)]
        facet: Option<usize>,
    },
    /// Run a verification suite.
    Verify {
        /// identities, dimensions, setfunctions, inner, psi-cut, equalities, orbits, table or all.
        suite: String,
        /// Range of n = |V|, as `3..5` or `4`.
        #[arg(long)]
        n: Option<String>,
    },
    /// Orbit counts of the Cut_{n+1} facet types and their transports.
    Table {
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Map {
    Psi,
    Pi,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let start = Instant::now();
    let result = pool.install(|| run(&cli));
    eprintln!("elapsed {:.3}s", start.elapsed().as_secs_f64());
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            let capped = e.chain().any(|c| {
                matches!(
                    c.downcast_ref::<conelab_core::Error>(),
                    Some(
                        conelab_core::Error::ResourceCap { .. }
                            | conelab_core::Error::Interrupted { .. }
                    )
                )
            });
            ExitCode::from(if capped { 3 } else { 2 })
        }
    }
}

fn context(cli: &Cli) -> Context {
    let cache = if cli.no_cache {
        None
    } else {
        Some(
            cli.cache_dir
                .as_ref()
                .map(Cache::new)
                .unwrap_or_else(Cache::from_env),
        )
    };
    let mut settings = Settings::default();
    settings.dd.max_rays = cli.max_rays;
    Context { settings, cache }
}

fn emit(text: &str, output: Option<&Path>) -> anyhow::Result<()> {
    match output {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn show(v: &[BigInt]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn show_set(s: PointSet) -> String {
    format!(
        "{{{}}}",
        s.points()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    )
}

/// The file with its facet list, converting when only rays are present.
fn with_facets(file: ConeFile, ctx: &Context) -> anyhow::Result<ConeFile> {
    if file.inequalities.is_some() {
        return Ok(file);
    }
    convert(&file, Direction::ToFacets, ctx)
}

fn selected(rows: Vec<IntVec>, facet: Option<usize>) -> anyhow::Result<Vec<(usize, IntVec)>> {
    match facet {
        Some(k) if k >= rows.len() => bail!("facet {k} out of range ({} facets)", rows.len()),
        Some(k) => Ok(vec![(k, rows[k].clone())]),
        None => Ok(rows.into_iter().enumerate().collect()),
    }
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    let ctx = context(cli);
    match &cli.command {
        Command::Build {
            family,
            n,
            bound,
            output,
        } => {
            let family: Family = family.parse()?;
            let mut id = ConeId::new(family, *n);
            id.bound = *bound;
            let file = build_file(&id, &ctx.settings.limits)?;
            emit(&file.to_json(), output.as_deref())?;
        }
        Command::Convert {
            input,
            to,
            output,
            resume,
            checkpoint_every,
            stop_after,
            incidence,
        } => {
            let file = ConeFile::load(input)?;
            let dir = match to {
                Some(t) => t.parse()?,
                None if file.rays.is_some() && file.inequalities.is_none() => Direction::ToFacets,
                None => Direction::ToRays,
            };
            let mut ctx = ctx;
            ctx.settings.resume = *resume;
            ctx.settings.checkpoint_every = *checkpoint_every;
            ctx.settings.stop_after = *stop_after;
            let mut out = convert(&file, dir, &ctx)?;
            if *incidence {
                let cone = out.to_cone()?;
                out.attach_incidence(&cone)?;
            }
            emit(&out.to_json(), output.as_deref())?;
        }
        Command::Orbits {
            input,
            group,
            format,
            json,
            csv,
            table,
        } => {
            let file = ConeFile::load(input)?;
            if *table {
                return orbit_table(&file, &ctx);
            }
            let file = with_facets(file, &ctx)?;
            let (layout, vectors) = orbit_vectors(&file)?;
            let g = parse_group(group, layout)?;
            let name = file
                .cone_id()?
                .map(|id| id.to_string())
                .unwrap_or_else(|| input.display().to_string());
            let report = orbit_report(&name, &vectors, layout, g)?;
            if let Some(p) = json {
                emit(&report.to_json(), Some(p))?;
            }
            if let Some(p) = csv {
                emit(&report.to_csv(), Some(p))?;
            }
            emit(
                &match format {
                    ReportFormat::Json => report.to_json(),
                    ReportFormat::Csv => report.to_csv(),
                },
                None,
            )?;
        }
        Command::Roots { input, facet } => {
            let file = with_facets(ConeFile::load(input)?, &ctx)?;
            let (layout, rows) = orbit_vectors(&file)?;
            for (k, v) in selected(rows, *facet)? {
                let roots = match layout {
                    Layout::Pairs { n, with_zero: true } => cut_roots(&v, n)?,
                    Layout::Qn { n } => ocut_roots(&v, n)?,
                    _ => bail!("roots are defined for cones on {{0}} u V and cones in Q_n"),
                };
                let sets: Vec<String> = roots.into_iter().map(show_set).collect();
                println!("{k} [{}] {}", show(&v), sets.join(" "));
            }
        }
        Command::Switch { input, set, facet } => {
            let t = PointSet::from_points(
                set.split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| s.trim().parse::<usize>())
                    .collect::<Result<Vec<_>, _>>()?,
            );
            let file = with_facets(ConeFile::load(input)?, &ctx)?;
            let (layout, rows) = orbit_vectors(&file)?;
            for (k, v) in selected(rows, *facet)? {
                let switched = match layout {
                    Layout::Pairs { n, with_zero: true } => switch_cut(&v, n, t),
                    Layout::Qn { n } => switch_ocut(&v, n, t),
                    _ => bail!("switching is defined for cones on {{0}} u V and cones in Q_n"),
                };
                match switched {
                    Ok(w) => println!("{k} [{}] -> [{}]", show(&v), show(&w)),
                    Err(e) => println!("{k} [{}] {e}", show(&v)),
                }
            }
        }
        Command::Project { input, map, output } => {
            let file = ConeFile::load(input)?;
            let file = if file.rays.is_some() {
                file
            } else {
                convert(&file, Direction::ToRays, &ctx)?
            };
            let Ambient::Pairs {
                n: points,
                with_zero: true,
            } = file.ambient()?
            else {
                bail!("projection needs a cone on {{0}} u V");
            };
            let mut images = Vec::new();
            for r in file.ray_rows()? {
                let x = PairVector::from_ints(points, true, &r)?;
                let image = match map {
                    Map::Psi => linalg::primitive_from_rationals(psi_point(&x)?.expand().coords()),
                    Map::Pi => linalg::primitive_from_rationals(pi_project(&x)?.coords()),
                };
                if image.iter().any(|c| c.sign() != num_bigint::Sign::NoSign)
                    && !images.contains(&image)
                {
                    images.push(image);
                }
            }
            let ambient = match map {
                Map::Psi => Ambient::Arcs { n: points },
                Map::Pi => Ambient::Pairs {
                    n: points,
                    with_zero: true,
                },
            };
            let cone = Cone::from_rays(ambient, images)?;
            let mut out = ConeFile::new(None, points, &cone);
            out.header.params = file.header.params.clone();
            let source = file
                .cone_id()?
                .map(|id| id.to_string())
                .unwrap_or_else(|| "input".into());
            out.header.params.history.push(format!(
                "{} image of {source}",
                match map {
                    Map::Psi => "psi",
                    Map::Pi => "pi",
                }
            ));
            emit(&out.to_json(), output.as_deref())?;
        }
        Command::Classify { input, facet } => {
            let file = with_facets(ConeFile::load(input)?, &ctx)?;
            let (layout, rows) = orbit_vectors(&file)?;
            for (k, v) in selected(rows, *facet)? {
                match layout {
                    Layout::Qn { n } => {
                        let label = HypermetricIndex::new(n, LABEL_BOUND)
                            .ocut_label(&v)
                            .unwrap_or_else(|| "-".into());
                        match classify_facet(&v, n)? {
                            FacetClass::Symmetric { base } => {
                                println!(
                                    "{k} [{}] symmetric base [{}] label {label}",
                                    show(&v),
                                    show(&base)
                                )
                            }
                            FacetClass::Asymmetric { partner } => {
                                println!(
                                    "{k} [{}] asymmetric partner [{}] label {label}",
                                    show(&v),
                                    show(&partner)
                                )
                            }
                        }
                    }
                    Layout::Pairs { n, with_zero: true } => {
                        let label = HypermetricIndex::new(n, LABEL_BOUND)
                            .cut_label(&v)
                            .unwrap_or_else(|| "-".into());
                        match transport_ints(&v, n)? {
                            Some(g) => println!(
                                "{k} [{}] contains e_0, transports to [{}] label {label}",
                                show(&v),
                                show(&g)
                            ),
                            None => {
                                println!("{k} [{}] does not contain e_0 label {label}", show(&v))
                            }
                        }
                    }
                    _ => bail!("classification is defined for cones on {{0}} u V and cones in Q_n"),
                }
            }
        }
        Command::Verify { suite, n } => {
            let suites: Vec<Suite> = if suite.eq_ignore_ascii_case("all") {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse()?]
            };
            let range = n.as_deref().map(parse_range).transpose()?;
            let mut ok = true;
            for s in suites {
                let t = Instant::now();
                let report =
                    run_suite(s, range.clone().unwrap_or_else(|| s.default_range()), &ctx)?;
                eprintln!("{s}: {:.3}s", t.elapsed().as_secs_f64());
                print!("{}", report.render());
                ok &= report.passed();
            }
            return Ok(ok);
        }
        Command::Table { n, json } => {
            let f = facets(&ConeId::new(Family::Cut, n + 1), &ctx)?;
            let t = build_table(*n, &f)?;
            print!("{}", if *json { t.to_json() } else { t.render() });
            return Ok(t.problems.is_empty());
        }
    }
    Ok(true)
}

fn orbit_table(file: &ConeFile, ctx: &Context) -> anyhow::Result<bool> {
    let id = file
        .cone_id()?
        .context("--table needs a Cut or OCut family file")?;
    let n = match id.family {
        Family::Cut => id.n - 1,
        Family::OCut => id.n,
        _ => bail!("--table needs a Cut or OCut family file"),
    };
    let f = facets(&ConeId::new(Family::Cut, n + 1), ctx)?;
    let t = build_table(n, &f)?;
    print!("{}", t.render());
    Ok(t.problems.is_empty())
}
