//! `pwrot`: command-line front end for pwrot-core.
//!
//! Exit codes: 0 success, 1 failed check or certificate (or a domain error),
//! 2 usage error or unreadable input.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::Value;

use pwrot_core::bounds::{rational_bound, DEFAULT_DEPTH};
use pwrot_core::diophantine::cf_expand;
use pwrot_core::dynamics::{island_search, orbit};
use pwrot_core::params::ParamsFile;
use pwrot_core::raster::{default_escape_radius, render_attr, render_born, to_pgm};
use pwrot_core::rational::zone_map;
use pwrot_core::report;
use pwrot_core::{AngleSpec, Error, PiecewiseRotation, Window};

#[derive(Parser)]
#[command(name = "pwrot", version, about = "Piecewise rotations of the plane")]
struct Cli {
    /// Worker threads (0 = all cores). Output does not depend on it.
    #[arg(long, global = true, env = "PWROT_THREADS")]
    threads: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum CertMode {
    Escape,
    Attract,
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderMode {
    Born,
    Attr,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sign of the injectivity discriminant.
    Classify {
        #[arg(long)]
        params: PathBuf,
        /// Band around zero treated as bijective.
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Continued-fraction convergents of the rotation number as CSV.
    Convergents {
        /// `rat:p/q`, `surd:p,q,d,r`, JSON, or radians.
        #[arg(long, allow_hyphen_values = true)]
        alpha: AngleSpec,
        #[arg(long, default_value_t = 10)]
        depth: usize,
    },
    /// Certified limit-set radius.
    Bound {
        #[arg(long)]
        params: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        /// Skip the origin optimization.
        #[arg(long)]
        no_shift: bool,
    },
    /// Orbit of a point as CSV.
    Orbit {
        #[arg(long)]
        params: PathBuf,
        /// Starting point `re,im`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
        z: Complex64,
        #[arg(long)]
        steps: usize,
    },
    /// Periodic islands found from a grid of starting points.
    Islands {
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        max_period: usize,
        /// `x0,y0,x1,y1`.
        #[arg(long, allow_hyphen_values = true)]
        window: Window,
        #[arg(long)]
        grid_step: f64,
    },
    /// Escape (delta < 0) or attraction (delta > 0) certificate, even rational angles.
    Certify {
        #[arg(long)]
        params: PathBuf,
        #[arg(long, value_enum)]
        mode: CertMode,
        #[arg(long, default_value_t = 360)]
        samples: usize,
        /// Number of q-blocks (default 10000 for escape, 8000 for attract).
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// PGM image of the bounded-orbit set or of forward images of a disc.
    Render {
        #[arg(long)]
        params: PathBuf,
        #[arg(long, value_enum, default_value = "born")]
        mode: RenderMode,
        #[arg(long, allow_hyphen_values = true)]
        window: Window,
        /// `WxH`.
        #[arg(long, value_parser = parse_size)]
        size: (usize, usize),
        /// Escape-time cap (born) or number of forward steps (attr).
        #[arg(long)]
        iters: u32,
        /// Escape radius (born) or seed-disc radius (attr).
        #[arg(long)]
        escape: Option<f64>,
    },
    /// Replay a worked example.
    Verify {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(report::SUITES))]
        suite: String,
    },
}

fn parse_point(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [re, im] => Ok(Complex64::new(
            re.trim().parse().map_err(|e| format!("{re:?}: {e}"))?,
            im.trim().parse().map_err(|e| format!("{im:?}: {e}"))?,
        )),
        _ => Err("expected re,im".into()),
    }
}

fn parse_size(s: &str) -> Result<(usize, usize), String> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| "expected WxH".to_string())?;
    let w = w.parse().map_err(|e| format!("{w:?}: {e}"))?;
    let h = h.parse().map_err(|e| format!("{h:?}: {e}"))?;
    Ok((w, h))
}

/// What a subcommand produced and whether its checks passed.
struct Output {
    bytes: Vec<u8>,
    ok: bool,
}

impl Output {
    fn json(v: &Value, ok: bool) -> Self {
        let mut bytes = serde_json::to_string_pretty(v).expect("serializable").into_bytes();
        bytes.push(b'\n');
        Output { bytes, ok }
    }
}

fn load(path: &Path) -> pwrot_core::Result<PiecewiseRotation> {
    ParamsFile::load(path)?.to_map()
}

fn run(cmd: Cmd) -> pwrot_core::Result<Output> {
    Ok(match cmd {
        Cmd::Classify { params, tolerance } => {
            Output::json(&report::classify_json(&load(&params)?, tolerance), true)
        }
        Cmd::Convergents { alpha, depth } => {
            let conv = match cf_expand(alpha, depth) {
                Ok(c) => c,
                Err(Error::PrecisionExhausted { trusted, partial }) => {
                    eprintln!("warning: precision exhausted after {trusted} trusted partial quotients");
                    *partial
                }
                Err(e) => return Err(e),
            };
            let mut s = String::from("p,q\n");
            for (p, q) in conv.p.iter().zip(&conv.q) {
                s.push_str(&format!("{p},{q}\n"));
            }
            Output { bytes: s.into_bytes(), ok: true }
        }
        Cmd::Bound { params, depth, no_shift } => {
            Output::json(&report::bound_json(&load(&params)?, depth, !no_shift)?, true)
        }
        Cmd::Orbit { params, z, steps } => {
            let tr = orbit(&load(&params)?, z, steps);
            let mut s = String::from("k,re,im,code\n");
            for (k, (p, c)) in tr.points.iter().zip(&tr.coding).enumerate() {
                s.push_str(&format!("{k},{},{},{c}\n", p.re, p.im));
            }
            Output { bytes: s.into_bytes(), ok: true }
        }
        Cmd::Islands { params, max_period, window, grid_step } => {
            let found = island_search(&load(&params)?, max_period, window, grid_step)?;
            Output::json(&report::islands_json(&found), true)
        }
        Cmd::Certify { params, mode, samples, horizon } => {
            let t = load(&params)?;
            let zm = zone_map(&t)?;
            let m = rational_bound(&t)?.m;
            let r = match mode {
                CertMode::Escape => {
                    let table = zm.measure_all(zm.probe_radius());
                    zm.escape_certificate(&table, m, samples, horizon.unwrap_or(10_000))?
                }
                CertMode::Attract => zm.attract_certificate(m, samples, horizon.unwrap_or(8_000))?,
            };
            Output::json(&report::certificate_json(&r), r.passed)
        }
        Cmd::Render { params, mode, window, size: (w, h), iters, escape } => {
            let t = load(&params)?;
            let radius = escape.unwrap_or_else(|| default_escape_radius(&t));
            let grid = match mode {
                RenderMode::Born => render_born(&t, window, w, h, iters, radius)?,
                RenderMode::Attr => render_attr(&t, radius, window, w, h, iters as usize)?,
            };
            Output { bytes: to_pgm(&grid), ok: true }
        }
        Cmd::Verify { suite } => {
            let r = report::verify_suite(&suite)?;
            let ok = r.passed;
            Output::json(&serde_json::to_value(&r).expect("serializable"), ok)
        }
    })
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Params(_) | Error::Io { .. } | Error::InvalidAngle(_) | Error::PreconditionViolated(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = pwrot_core::with_threads(cli.threads.unwrap_or(0), || run(cli.cmd));
    let out = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &out.bytes).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(&out.bytes).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if out.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
