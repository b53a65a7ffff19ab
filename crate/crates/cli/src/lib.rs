//! `lrc` command-line front end.
//!
//! Every subcommand except `render` prints one [`CertificateDocument`] on
//! stdout. Exit codes: 0 success, 1 usage or precondition error, 2 a
//! mathematical counterexample, 3 budget or horizon exhausted, 4 a document
//! rejected by `check`.

pub mod cert;
mod check;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use lrc_core::billiards::{
    parse_slope, slope_direction, square_min_obstacle, square_obstacle_contact,
    square_path_segments, triangle_contact_report, triangle_min_obstacle, triangle_path_segments,
    DEFAULT_HORIZON,
};
use lrc_core::fieldsearch::{conj34_witness, invisible_subset};
use lrc_core::gap::{check_kappa_bounds, exact_gap, lonely_time, separation_floor, verify_lrc};
use lrc_core::render::{render_svg, Scene};
use lrc_core::viewobstruct::{
    kprime_scan, min_scale_for_direction, obstruction_witness, Direction,
};
use lrc_core::{Error, QuadExt, Rational, SpeedSet};

pub use cert::{CertificateDocument, SCHEMA_VERSION};
pub use check::check_document;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_COUNTEREXAMPLE: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;
pub const EXIT_REJECTED: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "lrc",
    version,
    about = "Exact lonely runner computations and certificates"
)]
struct Cli {
    /// Pretty-print the JSON document.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

fn rational(s: &str) -> Result<Rational, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn quad_slope(s: &str) -> Result<QuadExt, String> {
    parse_slope(s).map_err(|e| e.to_string())
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact loneliness gap of a speed set.
    Gap {
        #[arg(long, value_delimiter = ',', required = true)]
        speeds: Vec<u64>,
    },
    /// Loneliest time of one runner among runners with the given speeds.
    Lonely {
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_hyphen_values = true
        )]
        speeds: Vec<i64>,
        #[arg(long, default_value_t = 0)]
        focus: usize,
    },
    /// Exhaustive conjecture check over coprime speed sets.
    Verify {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        max_speed: u64,
    },
    /// Per-instance lower bound 1/(2k) against the exact gap.
    Kappa {
        #[arg(long, value_delimiter = ',', required = true)]
        speeds: Vec<u64>,
    },
    /// Minimal cube scale obstructing a rational direction.
    Obstruct {
        /// Direction coordinates.
        #[arg(
            long,
            visible_alias = "direction",
            value_delimiter = ',',
            required = true
        )]
        speeds: Vec<u64>,
        #[arg(long, value_parser = rational)]
        alpha: Option<Rational>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Supremum of minimal scales over directions with bounded coordinates.
    Kscan {
        #[arg(long)]
        k: usize,
        #[arg(long, visible_alias = "max-speed")]
        max_coord: u64,
    },
    /// Square-table billiard path and central obstacle.
    Billiard {
        #[arg(long, value_parser = rational)]
        slope: Rational,
        #[arg(long, value_parser = rational)]
        alpha: Option<Rational>,
        #[arg(long, default_value_t = 8)]
        segments: usize,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Equilateral-table billiard: obstruction check or minimal obstacle.
    Triangle {
        /// `p/q` or `sqrt3*p/q`.
        #[arg(long, value_parser = quad_slope)]
        slope: QuadExt,
        #[arg(long, value_parser = rational)]
        alpha: Option<Rational>,
        #[arg(long, default_value_t = DEFAULT_HORIZON)]
        horizon: usize,
        #[arg(long, value_parser = rational, default_value = "1/1024")]
        tolerance: Rational,
        /// Also fold the path through this many strikes.
        #[arg(long)]
        strikes: Option<usize>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Subset of at least k-d speeds with gap (d+1)/(2k), via residues.
    Invisible {
        #[arg(long, value_delimiter = ',', required = true)]
        speeds: Vec<u64>,
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long, default_value_t = 1 << 20)]
        prime_budget: u64,
    },
    /// Modular residue witness with modulus s_i + s_j.
    Conj34 {
        #[arg(long, value_delimiter = ',', required = true)]
        speeds: Vec<u64>,
    },
    /// Re-verify a document produced by another subcommand (`-` for stdin).
    Check { path: PathBuf },
    /// Write an SVG figure.
    Render {
        #[arg(long, value_enum)]
        scene: SceneKind,
        #[arg(long, value_parser = rational)]
        alpha: Option<Rational>,
        /// Repeatable; `p/q` or `sqrt3*p/q` depending on the scene.
        #[arg(long)]
        slope: Vec<String>,
        #[arg(long, default_value_t = 10)]
        strikes: usize,
        #[arg(long, default_value_t = 8)]
        segments: usize,
        #[arg(long, default_value_t = 8)]
        levels: i64,
        #[arg(long, default_value_t = 6)]
        extent: u64,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

fn one<T>(v: Vec<T>) -> Result<T, Outcome> {
    let n = v.len();
    v.into_iter()
        .next()
        .filter(|_| n == 1)
        .ok_or_else(|| Outcome::error(EXIT_USAGE, "scene takes one --slope"))
}

#[derive(Clone, Copy, Debug, ValueEnum)]
#[value(rename_all = "snake_case")]
enum SceneKind {
    Obstruction2d,
    SquareBilliard,
    TriangleBilliard,
    TriangleTiling,
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn doc(doc: CertificateDocument, pretty: bool, code: i32) -> Self {
        Outcome {
            code,
            stdout: doc.to_json(pretty) + "\n",
            stderr: String::new(),
        }
    }

    fn error(code: i32, msg: impl std::fmt::Display) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }

    fn with_log(mut self, msg: impl std::fmt::Display) -> Self {
        self.stderr.push_str(&format!("{msg}\n"));
        self
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn fail(e: Error) -> Outcome {
    match e {
        Error::BudgetExhausted { .. } => Outcome::error(EXIT_EXHAUSTED, e),
        e => Outcome::error(EXIT_USAGE, e),
    }
}

fn write_svg(path: &Path, scene: &Scene) -> Result<(), Outcome> {
    let svg = render_svg(scene).map_err(fail)?;
    std::fs::write(path, svg)
        .map_err(|e| Outcome::error(EXIT_USAGE, format!("{}: {e}", path.display())))
}

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match cli.jobs {
        Some(0) => Outcome::error(EXIT_USAGE, "--jobs must be at least 1"),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(cli.command, cli.json)),
            Err(e) => Outcome::error(EXIT_USAGE, e),
        },
        None => dispatch(cli.command, cli.json),
    }
}

fn speed_set(v: Vec<u64>) -> Result<SpeedSet, Outcome> {
    SpeedSet::new(v).map_err(fail)
}

fn dispatch(command: Command, pretty: bool) -> Outcome {
    match execute(command, pretty) {
        Ok(o) | Err(o) => o,
    }
}

fn execute(command: Command, pretty: bool) -> Result<Outcome, Outcome> {
    let out = match command {
        Command::Gap { speeds } => {
            let s = speed_set(speeds)?;
            let cert = exact_gap(&s);
            Outcome::doc(
                CertificateDocument::new("gap", json!({ "speeds": s }), to_value(&cert)),
                pretty,
                EXIT_OK,
            )
        }
        Command::Lonely { speeds, focus } => {
            let report = lonely_time(&speeds, focus).map_err(fail)?;
            let floor = separation_floor(&speeds, focus).map_err(fail)?;
            let result = json!({ "report": report, "floor": floor });
            Outcome::doc(
                CertificateDocument::new(
                    "lonely",
                    json!({ "speeds": speeds, "focus": focus }),
                    result,
                ),
                pretty,
                EXIT_OK,
            )
        }
        Command::Verify { k, max_speed } => {
            let report = verify_lrc(k, max_speed).map_err(fail)?;
            let code = if report.counterexamples.is_empty() {
                EXIT_OK
            } else {
                EXIT_COUNTEREXAMPLE
            };
            let doc = CertificateDocument::new(
                "verify",
                json!({ "k": k, "max_speed": max_speed }),
                to_value(&report),
            );
            Outcome::doc(doc, pretty, code)
                .with_log(format!("checked {} speed sets", report.checked))
        }
        Command::Kappa { speeds } => {
            let s = speed_set(speeds)?;
            let b = check_kappa_bounds(&s);
            let code = if b.holds {
                EXIT_OK
            } else {
                EXIT_COUNTEREXAMPLE
            };
            Outcome::doc(
                CertificateDocument::new("kappa", json!({ "speeds": s }), to_value(&b)),
                pretty,
                code,
            )
        }
        Command::Obstruct { speeds, alpha, svg } => {
            let dir = Direction::new(speeds).map_err(fail)?;
            let min_scale = min_scale_for_direction(&dir);
            let witness = match &alpha {
                Some(a) => obstruction_witness(&dir, a).map_err(fail)?,
                None => None,
            };
            if let Some(path) = &svg {
                let (Some(a), [x, y]) = (&alpha, dir.coords()) else {
                    return Err(Outcome::error(
                        EXIT_USAGE,
                        "--svg needs a 2-dimensional direction and --alpha",
                    ));
                };
                let scene = Scene::Obstruction2d {
                    alpha: a.clone(),
                    slopes: vec![Rational::new(*y, *x)],
                    extent: 6,
                };
                write_svg(path, &scene)?;
            }
            let result = json!({
                "direction": dir,
                "gap": exact_gap(&dir.speed_set()),
                "min_scale": min_scale,
                "witness": witness,
            });
            let inputs = json!({ "direction": dir, "alpha": alpha });
            Outcome::doc(
                CertificateDocument::new("obstruct", inputs, result),
                pretty,
                EXIT_OK,
            )
        }
        Command::Kscan { k, max_coord } => {
            let scan = kprime_scan(k, max_coord).map_err(fail)?;
            let code = if scan.within_upper {
                EXIT_OK
            } else {
                EXIT_COUNTEREXAMPLE
            };
            let doc = CertificateDocument::new(
                "kscan",
                json!({ "k": k, "max_coord": max_coord }),
                to_value(&scan),
            );
            Outcome::doc(doc, pretty, code)
        }
        Command::Billiard {
            slope,
            alpha,
            segments,
            svg,
        } => {
            let min = square_min_obstacle(&slope).map_err(fail)?;
            let alpha_used = alpha
                .clone()
                .or_else(|| min.is_positive().then(|| min.clone()));
            let contact = match &alpha_used {
                Some(a) => square_obstacle_contact(&slope, a).map_err(fail)?,
                None => None,
            };
            let path = square_path_segments(&slope, segments).map_err(fail)?;
            if let Some(p) = &svg {
                let Some(a) = &alpha_used else {
                    return Err(Outcome::error(
                        EXIT_USAGE,
                        "--svg needs --alpha when the minimal obstacle is 0",
                    ));
                };
                write_svg(
                    p,
                    &Scene::SquareBilliard {
                        slope: slope.clone(),
                        alpha: a.clone(),
                        segments,
                    },
                )?;
            }
            let result = json!({
                "direction": slope_direction(&slope).map_err(fail)?,
                "min_obstacle": min,
                "alpha": alpha_used,
                "contact": contact,
                "path": path,
            });
            let inputs = json!({ "slope": slope, "alpha": alpha, "segments": segments });
            Outcome::doc(
                CertificateDocument::new("billiard", inputs, result),
                pretty,
                EXIT_OK,
            )
        }
        Command::Triangle {
            slope,
            alpha,
            horizon,
            tolerance,
            strikes,
            svg,
        } => {
            let path = match strikes {
                Some(n) => Some(triangle_path_segments(&slope, n).map_err(fail)?),
                None => None,
            };
            let inputs = json!({
                "slope": slope,
                "alpha": alpha,
                "horizon": horizon,
                "tolerance": tolerance,
                "strikes": strikes,
            });
            let (result, code) = match &alpha {
                Some(a) => {
                    let report = triangle_contact_report(&slope, a, horizon).map_err(fail)?;
                    let code = if report.first_hit.is_some() {
                        EXIT_OK
                    } else {
                        EXIT_EXHAUSTED
                    };
                    (json!({ "contact": report, "path": path }), code)
                }
                None => {
                    let bracket =
                        triangle_min_obstacle(&slope, horizon, &tolerance).map_err(fail)?;
                    (json!({ "bracket": bracket, "path": path }), EXIT_OK)
                }
            };
            if let Some(p) = &svg {
                let scene = Scene::TriangleBilliard {
                    slope: slope.clone(),
                    alpha: alpha.clone(),
                    strikes: strikes.unwrap_or(10),
                };
                write_svg(p, &scene)?;
            }
            let out = Outcome::doc(
                CertificateDocument::new("triangle", inputs, result),
                pretty,
                code,
            );
            if code == EXIT_EXHAUSTED {
                out.with_log(format!("no hit within horizon {horizon}"))
            } else {
                out
            }
        }
        Command::Invisible {
            speeds,
            d,
            prime_budget,
        } => {
            let s = speed_set(speeds)?;
            let cert = invisible_subset(&s, d, prime_budget).map_err(fail)?;
            let inputs = json!({ "speeds": s, "d": d, "prime_budget": prime_budget });
            Outcome::doc(
                CertificateDocument::new("invisible", inputs, to_value(&cert)),
                pretty,
                EXIT_OK,
            )
        }
        Command::Conj34 { speeds } => {
            let s = speed_set(speeds)?;
            let witness = conj34_witness(&s).map_err(fail)?;
            let code = if witness.is_some() {
                EXIT_OK
            } else {
                EXIT_COUNTEREXAMPLE
            };
            let result = json!({ "gap": exact_gap(&s), "witness": witness });
            Outcome::doc(
                CertificateDocument::new("conj34", json!({ "speeds": s }), result),
                pretty,
                code,
            )
        }
        Command::Check { path } => {
            let text = if path.as_os_str() == "-" {
                std::io::read_to_string(std::io::stdin())
            } else {
                std::fs::read_to_string(&path)
            }
            .map_err(|e| Outcome::error(EXIT_USAGE, format!("{}: {e}", path.display())))?;
            let doc =
                CertificateDocument::parse(&text).map_err(|e| Outcome::error(EXIT_REJECTED, e))?;
            let verdict = check_document(&doc);
            let result = json!({
                "checked_command": doc.command,
                "valid": verdict.is_ok(),
                "detail": match &verdict { Ok(d) => d.clone(), Err(e) => e.to_string() },
            });
            let code = if verdict.is_ok() {
                EXIT_OK
            } else {
                EXIT_REJECTED
            };
            let inputs = json!({ "path": path.display().to_string() });
            Outcome::doc(
                CertificateDocument::new("check", inputs, result),
                pretty,
                code,
            )
        }
        Command::Render {
            scene,
            alpha,
            slope,
            strikes,
            segments,
            levels,
            extent,
            svg,
        } => {
            let scene = build_scene(scene, alpha, &slope, strikes, segments, levels, extent)?;
            let text = render_svg(&scene).map_err(fail)?;
            match svg {
                Some(p) => {
                    std::fs::write(&p, text)
                        .map_err(|e| Outcome::error(EXIT_USAGE, format!("{}: {e}", p.display())))?;
                    Outcome {
                        code: EXIT_OK,
                        stdout: String::new(),
                        stderr: format!("wrote {}\n", p.display()),
                    }
                }
                None => Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                },
            }
        }
    };
    Ok(out)
}

fn build_scene(
    kind: SceneKind,
    alpha: Option<Rational>,
    slopes: &[String],
    strikes: usize,
    segments: usize,
    levels: i64,
    extent: u64,
) -> Result<Scene, Outcome> {
    let rationals = |default: &[(i64, i64)]| -> Result<Vec<Rational>, Outcome> {
        if slopes.is_empty() {
            return Ok(default.iter().map(|&(p, q)| Rational::new(p, q)).collect());
        }
        slopes
            .iter()
            .map(|s| rational(s).map_err(|e| Outcome::error(EXIT_USAGE, e)))
            .collect()
    };
    let quads = |default: &[i64]| -> Result<Vec<QuadExt>, Outcome> {
        if slopes.is_empty() {
            return Ok(default
                .iter()
                .map(|&n| QuadExt::sqrt3_times(Rational::new(1, n)))
                .collect());
        }
        slopes
            .iter()
            .map(|s| quad_slope(s).map_err(|e| Outcome::error(EXIT_USAGE, e)))
            .collect()
    };
    Ok(match kind {
        SceneKind::Obstruction2d => Scene::Obstruction2d {
            alpha: alpha.unwrap_or_else(|| Rational::new(1, 3)),
            slopes: rationals(&[(2, 1), (1, 2), (1, 5)])?,
            extent,
        },
        SceneKind::SquareBilliard => Scene::SquareBilliard {
            slope: one(rationals(&[(1, 2)])?)?,
            alpha: alpha.unwrap_or_else(|| Rational::new(1, 3)),
            segments,
        },
        SceneKind::TriangleBilliard => Scene::TriangleBilliard {
            slope: one(if slopes.is_empty() {
                Ok(vec![QuadExt::one()])
            } else {
                quads(&[])
            }?)?,
            alpha,
            strikes,
        },
        SceneKind::TriangleTiling => Scene::TriangleTiling {
            alpha: alpha.unwrap_or_else(|| Rational::new(1, 4)),
            slopes: quads(&[5, 7, 9])?,
            levels,
        },
    })
}
