//! Command-line front end: classify curves, report invariants, sample
//! profiles, synthesize curves and render them as SVG.

pub mod render;
pub mod report;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::rc::Rc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use cuspidal::affine::{profile_a_cusp, profile_a_inflection};
use cuspidal::curve::ExprFn;
use cuspidal::dsl::{catalog_lookup, parse_curve_with};
use cuspidal::euclid::{classify_curve, profile_g};
use cuspidal::synthesis::{
    self, synth_affine_cusp, synth_euclid, synth_inflection, Method, SharedFn,
};
use cuspidal::{CurveSpec, NormalizedProfile, ProfileKind};

pub use render::{render_svg, RenderSpec};
pub use report::{invariant_report, InvariantReport};

/// Environment variable naming the directory for relative output paths.
pub const OUT_DIR_ENV: &str = "CUSPIDAL_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "cuspidal", version, about = "Curvature invariants at cusps and inflections")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct CurveArgs {
    /// Catalog name or a curve `(x(t), y(t))`.
    #[arg(long)]
    pub curve: String,
    /// Parameter binding `name=value`; repeatable.
    #[arg(long = "param", value_parser = parse_binding)]
    pub params: Vec<(String, f64)>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify the point t = 0.
    Classify {
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// Report the invariants at t = 0 as JSON.
    Invariants {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample the normalized curvature profile as CSV (tau,f).
    Profile {
        #[command(flatten)]
        curve: CurveArgs,
        /// euclid-cusp, affine-cusp or inflection; inferred from the class if omitted.
        #[arg(long)]
        kind: Option<ProfileKind>,
        /// `start:stop:count`, both ends included.
        #[arg(long, default_value = "-0.5:0.5:101", value_parser = parse_grid, allow_hyphen_values = true)]
        grid: Grid,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reconstruct a curve from its normalized curvature; CSV (tau,x,y).
    Synthesize {
        #[arg(long)]
        kind: ProfileKind,
        /// Normalized curvature f(tau).
        #[arg(long, allow_hyphen_values = true)]
        f: Option<String>,
        /// Affine cusps: h(tau) with f = 4/25 + tau^2 h.
        #[arg(long, allow_hyphen_values = true)]
        h: Option<String>,
        #[arg(long, default_value_t = 1.0)]
        tau_max: f64,
        /// frame or quadrature (Euclidean cusps only).
        #[arg(long, default_value = "frame")]
        method: Method,
        #[arg(long, default_value_t = 401)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Render a CSV of samples (tau,x,y or tau,f) as SVG.
    Render {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1.5)]
        stroke_width: f64,
        /// Draw the coordinate axes.
        #[arg(long)]
        axes: bool,
        /// `xmin,ymin,xmax,ymax`; fitted to the data if omitted.
        #[arg(long, value_parser = parse_viewport, allow_hyphen_values = true)]
        viewport: Option<[f64; 4]>,
    },
    /// Run the acceptance suite; exits nonzero on failure.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_binding(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected name=value, got `{s}`"))?;
    let v: f64 = v
        .trim()
        .parse()
        .map_err(|_| format!("`{v}` is not a number"))?;
    Ok((k.trim().to_string(), v))
}

/// Parameter values of a `--grid` flag.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid(pub Vec<f64>);

fn parse_grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, n] = parts[..] else {
        return Err(format!("expected start:stop:count, got `{s}`"));
    };
    let num = |x: &str| x.trim().parse::<f64>().map_err(|_| format!("`{x}` is not a number"));
    let (a, b) = (num(a)?, num(b)?);
    let n: usize = n
        .trim()
        .parse()
        .map_err(|_| format!("`{n}` is not a count"))?;
    if n == 0 {
        return Err("grid count must be positive".into());
    }
    if n == 1 {
        return Ok(Grid(vec![a]));
    }
    Ok(Grid(
        (0..n)
            .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
            .collect(),
    ))
}

fn parse_viewport(s: &str) -> Result<[f64; 4], String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| format!("`{x}` is not a number")))
        .collect::<Result<_, _>>()?;
    v.try_into()
        .map_err(|_| format!("expected xmin,ymin,xmax,ymax, got `{s}`"))
}

/// Resolve a catalog name or a curve literal.
pub fn resolve_curve(args: &CurveArgs) -> Result<CurveSpec> {
    let params: BTreeMap<String, f64> = args.params.iter().cloned().collect();
    let spec = if args.curve.trim_start().starts_with('(') {
        parse_curve_with(&args.curve, &params)?
    } else {
        catalog_lookup(&args.curve, &params)?
    };
    Ok(spec)
}

/// Where an output path ends up: relative paths go under `CUSPIDAL_OUT_DIR` when set.
pub fn output_path(p: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if p.is_relative() => Path::new(&dir).join(p),
        _ => p.to_path_buf(),
    }
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(p) => {
            let path = output_path(p);
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)
                    .with_context(|| format!("creating {}", dir.display()))?;
            }
            fs::write(&path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => Ok(stdout.write_all(text.as_bytes())?),
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.iter().map(|v| v.to_string()))?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn profile_csv(p: &NormalizedProfile) -> Result<String> {
    csv_text(
        &["tau", "f"],
        p.grid.iter().zip(&p.values).map(|(t, f)| vec![*t, *f]),
    )
}

/// Read `(x, y)` pairs from a samples CSV (`tau,x,y`) or a profile CSV (`tau,f`).
pub fn read_points(text: &str) -> Result<Vec<(f64, f64)>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let headers = r.headers()?.clone();
    let col = |name: &str| headers.iter().position(|h| h.trim() == name);
    let (ix, iy) = match (col("x"), col("y"), col("tau"), col("f")) {
        (Some(x), Some(y), _, _) => (x, y),
        (_, _, Some(t), Some(f)) => (t, f),
        _ => bail!("CSV needs columns x,y or tau,f (found {})", headers.iter().collect::<Vec<_>>().join(",")),
    };
    let mut points = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec?;
        let get = |i: usize| -> Result<f64> {
            let s = rec.get(i).ok_or_else(|| anyhow!("row {}: missing column", line + 2))?;
            s.trim()
                .parse()
                .map_err(|_| anyhow!("row {}: `{s}` is not a number", line + 2))
        };
        points.push((get(ix)?, get(iy)?));
    }
    Ok(points)
}

fn profile_kind_for(spec: &CurveSpec) -> Result<ProfileKind> {
    let class = classify_curve(spec)?;
    if class.kind.is_cusp() {
        Ok(ProfileKind::EuclidCusp)
    } else if class.kind.is_inflection() {
        Ok(ProfileKind::Inflection)
    } else {
        bail!("profile: t = 0 is {}, not a cusp or an inflection", class.kind)
    }
}

fn parse_fn(text: &str) -> Result<SharedFn> {
    Ok(Rc::new(ExprFn::parse(text)?))
}

fn synthesize(
    kind: ProfileKind,
    f: Option<&str>,
    h: Option<&str>,
    tau_max: f64,
    method: Method,
) -> Result<synthesis::Synthesized> {
    Ok(match (kind, f, h) {
        (ProfileKind::AffineCusp, None, Some(h)) => synth_affine_cusp(parse_fn(h)?, tau_max)?,
        (ProfileKind::AffineCusp, Some(f), None) => {
            synth_affine_cusp(synthesis::affine_h_from_f(parse_fn(f)?)?, tau_max)?
        }
        (_, Some(_), Some(_)) => bail!("synthesize: give either --f or --h, not both"),
        (ProfileKind::AffineCusp, None, None) => bail!("synthesize: --h or --f is required"),
        (_, _, Some(_)) => bail!("synthesize: --h applies to affine cusps only"),
        (_, None, None) => bail!("synthesize: --f is required"),
        (ProfileKind::EuclidCusp, Some(f), None) => synth_euclid(parse_fn(f)?, tau_max, method)?,
        (ProfileKind::Inflection, Some(f), None) => synth_inflection(parse_fn(f)?, tau_max)?,
    })
}

/// Run one command; text that would go to the terminal is written to `stdout`.
/// Returns the process exit code.
pub fn run_command<I, T>(argv: I, stdout: &mut dyn Write) -> Result<i32>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            write!(stdout, "{e}")?;
            return Ok(0);
        }
        Err(e) => {
            // usage errors are clap's to format
            let _ = e.print();
            return Ok(e.exit_code());
        }
    };
    run(cli.command, stdout)
}

pub fn run(command: Command, stdout: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Classify { curve } => {
            let spec = resolve_curve(&curve)?;
            let class = classify_curve(&spec)?;
            emit(&None, &to_json(&class)?, stdout)?;
        }
        Command::Invariants { curve, out } => {
            let spec = resolve_curve(&curve)?;
            emit(&out, &to_json(&invariant_report(&spec)?)?, stdout)?;
        }
        Command::Profile {
            curve,
            kind,
            grid: Grid(grid),
            out,
        } => {
            let spec = resolve_curve(&curve)?;
            let kind = match kind {
                Some(k) => k,
                None => profile_kind_for(&spec)?,
            };
            let profile = match kind {
                ProfileKind::EuclidCusp => profile_g(&spec, &grid)?,
                ProfileKind::AffineCusp => profile_a_cusp(&spec, &grid)?.0,
                ProfileKind::Inflection => profile_a_inflection(&spec, &grid)?.0,
            };
            emit(&out, &profile_csv(&profile)?, stdout)?;
        }
        Command::Synthesize {
            kind,
            f,
            h,
            tau_max,
            method,
            samples,
            out,
            svg,
        } => {
            if samples < 2 {
                bail!("synthesize: need at least 2 samples");
            }
            let s = synthesize(kind, f.as_deref(), h.as_deref(), tau_max, method)?;
            let pts = s.samples(samples)?;
            let text = csv_text(
                &["tau", "x", "y"],
                pts.iter().map(|(t, p)| vec![*t, p.x, p.y]),
            )?;
            emit(&out, &text, stdout)?;
            if let Some(path) = svg {
                let xy: Vec<(f64, f64)> = pts.iter().map(|(_, p)| (p.x, p.y)).collect();
                emit(&Some(path), &render_svg(&xy, &RenderSpec::default())?, stdout)?;
            }
        }
        Command::Render {
            input,
            out,
            stroke_width,
            axes,
            viewport,
        } => {
            let text = fs::read_to_string(&input)
                .with_context(|| format!("reading {}", input.display()))?;
            let spec = RenderSpec {
                viewport,
                stroke_width,
                axes,
            };
            emit(&out, &render_svg(&read_points(&text)?, &spec)?, stdout)?;
        }
        Command::Verify { seed, out } => {
            let report = cuspidal::verify::run_all(seed);
            emit(&out, &to_json(&report)?, stdout)?;
            if !report.passed {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_flag() {
        assert_eq!(parse_grid("-1:1:3").unwrap().0, vec![-1.0, 0.0, 1.0]);
        assert!(parse_grid("0:1").is_err());
        assert!(parse_grid("0:1:0").is_err());
    }

    #[test]
    fn bindings() {
        assert_eq!(parse_binding("a=2").unwrap(), ("a".to_string(), 2.0));
        assert_eq!(parse_binding("a=-0.5").unwrap().1, -0.5);
        assert!(parse_binding("a").is_err());
    }

    #[test]
    fn points_from_both_csv_shapes() {
        assert_eq!(read_points("tau,x,y\n0,1,2\n").unwrap(), vec![(1.0, 2.0)]);
        assert_eq!(read_points("tau,f\n0.5,0.16\n").unwrap(), vec![(0.5, 0.16)]);
        assert!(read_points("a,b\n1,2\n").is_err());
    }
}
