//! Command-line front end.
//!
//! ```text
//! lober [-light] <c1> <c2> <rslt> [-DENS <nPass> <nDens>] [--oracle] [--seed <u64>] [--plot-data <dir>]
//! lober gen circle  <cx> <cy> <r> <n> <out>
//! lober gen ellipse <cx> <cy> <a> <b> <phase> <n> <out>
//! lober gen ovp     <cx> <cy> <r> <n> <gamma> <eps> <t1> <steps> <out>
//! ```
//!
//! Flags may appear anywhere. Without `-DENS` the default densifier profile
//! (3 passes, 10 subdivisions) runs; `-DENS 0` disables it. The default
//! (transverse) method exits with code 3 when it meets a non-transverse
//! crossing, pointing at `-light`. Exit codes: 0 success, 1 file or format
//! problems, 2 usage, 3 non-transverse or inconsistent crossing structure.

use crate::classes::{self, Method};
use crate::densify::{densify, DensifyConfig};
use crate::fixtures;
use crate::geometry::Point2;
use crate::intersect::find_intersections_tolerant;
use crate::{io, winding, Error};
use std::path::PathBuf;

const USAGE: &str = "usage: lober [-light] <c1> <c2> <rslt> [-DENS <nPass> <nDens>] \
[--oracle] [--seed <u64>] [--plot-data <dir>]
       lober gen circle  <cx> <cy> <r> <n> <out>
       lober gen ellipse <cx> <cy> <a> <b> <phase> <n> <out>
       lober gen ovp     <cx> <cy> <r> <n> <gamma> <eps> <t1> <steps> <out>";

/// Fully parsed invocation of the area tool.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub light: bool,
    pub c1_path: PathBuf,
    pub c2_path: PathBuf,
    pub rslt_path: PathBuf,
    /// `None` means the default densifier profile.
    pub densify: Option<(usize, usize)>,
    pub oracle: bool,
    pub seed: u64,
    pub plot_data: Option<PathBuf>,
}

/// Entry point: parses `argv` (program name already stripped), runs, and
/// returns the process exit code.
pub fn run(args: &[String]) -> i32 {
    if args.first().map(String::as_str) == Some("gen") {
        return run_gen(&args[1..]);
    }
    let cfg = match parse_args(args) {
        Ok(cfg) => cfg,
        Err(msg) => {
            eprintln!("{msg}");
            eprintln!("{USAGE}");
            return 2;
        }
    };
    match run_config(&cfg) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("lober: {e}");
            match e {
                Error::NonTransverse { .. }
                | Error::OddIntersectionCount(_)
                | Error::Topology(_) => {
                    eprintln!("lober: the crossing structure is not transverse; rerun with -light");
                    3
                }
                _ => 1,
            }
        }
    }
}

fn parse_args(args: &[String]) -> Result<RunConfig, String> {
    let mut light = false;
    let mut densify = None;
    let mut oracle = false;
    let mut seed = 0u64;
    let mut plot_data = None;
    let mut positional: Vec<PathBuf> = Vec::new();
    let mut it = args.iter().peekable();
    while let Some(arg) = it.next() {
        match arg.as_str() {
            "-light" => light = true,
            "-DENS" => {
                let n_pass: usize = it
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or("-DENS needs a non-negative integer pass count")?;
                let n_dens = if n_pass == 0 {
                    // `-DENS 0` disables; a second integer is allowed but moot
                    if it.peek().is_some_and(|s| s.parse::<usize>().is_ok()) {
                        it.next();
                    }
                    0
                } else {
                    it.next()
                        .and_then(|s| s.parse().ok())
                        .ok_or("-DENS <nPass> needs a second integer <nDens>")?
                };
                densify = Some((n_pass, n_dens));
            }
            "--oracle" => oracle = true,
            "--seed" => {
                seed = it
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or("--seed needs an unsigned integer")?;
            }
            "--plot-data" => {
                plot_data = Some(PathBuf::from(
                    it.next().ok_or("--plot-data needs a directory")?,
                ));
            }
            s if s.starts_with('-') && s.len() > 1 => {
                return Err(format!("unknown flag {s}"));
            }
            s => positional.push(PathBuf::from(s)),
        }
    }
    if positional.len() != 3 {
        return Err(format!(
            "expected exactly three positional arguments <c1> <c2> <rslt>, got {}",
            positional.len()
        ));
    }
    let rslt_path = positional.pop().unwrap();
    let c2_path = positional.pop().unwrap();
    let c1_path = positional.pop().unwrap();
    Ok(RunConfig {
        light,
        c1_path,
        c2_path,
        rslt_path,
        densify,
        oracle,
        seed,
        plot_data,
    })
}

fn run_config(cfg: &RunConfig) -> crate::Result<()> {
    let c1_file = io::read_curve_file(&cfg.c1_path)?;
    let c2_file = io::read_curve_file(&cfg.c2_path)?;
    for w in c1_file.warnings.iter().chain(&c2_file.warnings) {
        eprintln!("lober: warning: {w}");
    }
    let c1 = crate::ClosedCurve::new(c1_file.rows)?;
    let c2 = crate::ClosedCurve::new(c2_file.rows)?;

    let dens_cfg = match cfg.densify {
        None => DensifyConfig::default_profile(),
        Some((n_pass, n_dens)) => DensifyConfig::new(n_pass, n_dens),
    };
    let (c1, c2) = densify(&c1, &c2, &dens_cfg)?;

    let report = if cfg.light {
        winding::set_difference_areas(&c1, &c2)
    } else {
        classes::lobe_areas(&c1, &c2)?
    };
    for note in &report.notes {
        eprintln!("lober: note: {note}");
    }

    if cfg.oracle {
        let est = fixtures::montecarlo_diff_area(&c1, &c2, 1_000_000, cfg.seed);
        eprintln!(
            "lober: oracle: [A1\\A2] ~ {} +- {} ({} samples, seed {})",
            est.value, est.std_error, est.samples, est.seed
        );
        if report.method == Method::Transverse {
            // cross-method relative discrepancy stands in for the missing
            // redundancy estimate of the transverse method
            let w = winding::set_difference_areas(&c1, &c2);
            let rel = |a: f64, b: f64| if a > 0.0 { (a - b).abs() / a } else { 0.0 };
            let r12 = rel(report.a1_minus_a2, w.a1_minus_a2);
            let r21 = rel(report.a2_minus_a1, w.a2_minus_a1);
            io::write_result_with_rel(&cfg.rslt_path, &report, r12, r21)?;
        } else {
            io::write_result(&cfg.rslt_path, &report)?;
        }
    } else {
        io::write_result(&cfg.rslt_path, &report)?;
    }

    let artifacts_dir = cfg
        .rslt_path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("."));
    let set = find_intersections_tolerant(&c1, &c2);
    io::write_artifacts(&artifacts_dir, &set, &c1, &c2)?;

    if let Some(dir) = &cfg.plot_data {
        std::fs::create_dir_all(dir)?;
        let mut counts = [0usize; 2];
        for class in &report.classes {
            let (tag, k) = match class.side {
                classes::Side::A1MinusA2 => ("a1_minus_a2", &mut counts[0]),
                classes::Side::A2MinusA1 => ("a2_minus_a1", &mut counts[1]),
            };
            *k += 1;
            let poly = classes::class_polygon(class, &c1, &c2);
            io::write_points(
                &dir.join(format!("lobe_{tag}_{k:03}.dat")),
                &poly,
                &format!("lobe {tag} #{k} area {}", class.lobe_area),
            )?;
        }
    }
    Ok(())
}

fn run_gen(args: &[String]) -> i32 {
    match try_gen(args) {
        Ok(()) => 0,
        Err(GenError::Usage(msg)) => {
            eprintln!("{msg}");
            eprintln!("{USAGE}");
            2
        }
        Err(GenError::Run(e)) => {
            eprintln!("lober: {e}");
            1
        }
    }
}

enum GenError {
    Usage(String),
    Run(Error),
}

impl From<Error> for GenError {
    fn from(e: Error) -> Self {
        GenError::Run(e)
    }
}

fn try_gen(args: &[String]) -> Result<(), GenError> {
    let usage = |msg: &str| GenError::Usage(msg.to_string());
    let kind = args.first().ok_or_else(|| usage("gen: missing shape"))?;
    let nums = |from: usize, n: usize| -> Result<Vec<f64>, GenError> {
        if args.len() != from + n + 1 {
            return Err(usage("gen: wrong argument count"));
        }
        args[from..from + n]
            .iter()
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|_| usage(&format!("gen: not a number: {s}")))
            })
            .collect()
    };
    let out = PathBuf::from(args.last().ok_or_else(|| usage("gen: missing output"))?);
    match kind.as_str() {
        "circle" => {
            let v = nums(1, 4)?;
            let curve = fixtures::circle(Point2::new(v[0], v[1]), v[2], v[3] as usize);
            io::write_curve(&out, &curve, "circle")?;
        }
        "ellipse" => {
            let v = nums(1, 6)?;
            let curve = fixtures::ellipse(Point2::new(v[0], v[1]), v[2], v[3], v[4], v[5] as usize);
            io::write_curve(&out, &curve, "ellipse")?;
        }
        "ovp" => {
            let v = nums(1, 8)?;
            let seed = fixtures::circle(Point2::new(v[0], v[1]), v[2], v[3] as usize);
            let field = fixtures::OvpField {
                gamma: v[4],
                eps: v[5],
            };
            let curve = fixtures::advect_curve(&seed, &field, 0.0, v[6], v[7] as usize)?;
            io::write_curve(&out, &curve, "advected circle")?;
        }
        other => return Err(usage(&format!("gen: unknown shape {other}"))),
    }
    Ok(())
}
