//! Command execution. Every handler returns a process exit code with a
//! fixed contract: 0 = success, 1 = the computation finished but reported
//! no verdict (unresolved orbit, failed verification, domain error),
//! 2 = usage error caught after parsing, 3 = I/O failure.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use tanlab_core::inverse::{branch_inverse, BranchIndex, Sign};
use tanlab_core::map::MapParameter;
use tanlab_core::orbit::{
    classify_cycle, count_real_fixed_points_principal, iterate_orbit, tangency_parameter,
    ClassifyTolerances, OrbitOptions, OrbitStatus,
};
use tanlab_core::planes::{
    estimate_region_threshold, render_dynamical, render_parameter, Raster, RenderOptions,
    ThresholdSearch,
};
use tanlab_core::symbolic::{cylinder_point, itinerary, sequence_distance, shift, ItineraryWord};
use tanlab_core::{Complex64, SpherePoint};

use crate::args::{
    format_complex, format_grid, Cli, Command, CylinderArgs, FixedPointsArgs, Format, FormatArgs,
    ItineraryArgs, OrbitArgs, RenderDynArgs, RenderParamArgs, Suite, ThresholdArgs, VerifyArgs,
};
use crate::output::{class_name, status_name, ComplexJson, CycleJson, TrajectoryRow};
use crate::ppm::{encode_ppm, palette_color};

/// Configure the global worker pool from `TANLAB_THREADS` (0 or unset:
/// one worker per core). Must run before any parallel work.
pub fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("TANLAB_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| format!("TANLAB_THREADS must be a non-negative integer, got `{raw}`"))?;
    if n >= 1 {
        // A second initialization (e.g. in tests) keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    Ok(())
}

pub fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Orbit(args) => run_orbit(args),
        Command::Cycle(args) => run_cycle(args),
        Command::FixedPoints(args) => run_fixed_points(args),
        Command::Tangency(args) => run_tangency(args),
        Command::Itinerary(args) => run_itinerary(args),
        Command::Cylinder(args) => run_cylinder(args),
        Command::RenderDyn(args) => run_render_dyn(args),
        Command::RenderParam(args) => run_render_param(args),
        Command::Threshold(args) => run_threshold(args),
        Command::Verify(args) => run_verify(args),
    }
}

fn usage_error(msg: &str) -> i32 {
    eprintln!("error: {msg}");
    2
}

/// Write `bytes` to `--out` or stdout; I/O failure maps to exit 3,
/// success passes `status` through.
fn emit(out: &Option<PathBuf>, bytes: &[u8], status: i32) -> i32 {
    let result = match out {
        Some(path) => fs::write(path, bytes),
        None => io::stdout().write_all(bytes),
    };
    match result {
        Ok(()) => status,
        Err(e) => {
            eprintln!("i/o error: {e}");
            3
        }
    }
}

fn reject_ppm(format: Format) -> Option<i32> {
    if format == Format::Ppm {
        Some(usage_error("--format ppm applies only to render commands"))
    } else {
        None
    }
}

fn json_doc<T: Serialize>(doc: &T) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(doc).expect("serializable document");
    s.push('\n');
    s.into_bytes()
}

fn out_echo(out: &Option<PathBuf>) -> Option<String> {
    out.as_ref().map(|p| p.display().to_string())
}

// ---------------------------------------------------------------- orbit

#[derive(Serialize)]
struct OrbitConfig {
    lambda: String,
    z0: String,
    max_iter: usize,
    format: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    out: Option<String>,
}

#[derive(Serialize)]
struct OrbitDoc {
    command: &'static str,
    config: OrbitConfig,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    period: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pole_index: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pole_steps: Option<usize>,
    steps_used: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    cycle: Option<CycleJson>,
    trajectory: Vec<TrajectoryRow>,
}

fn run_orbit(args: OrbitArgs) -> i32 {
    if let Some(code) = reject_ppm(args.format) {
        return code;
    }
    let param = MapParameter::new(args.lambda);
    let opts = OrbitOptions {
        record_trajectory: true,
        ..OrbitOptions::default()
    };
    let result = iterate_orbit(&param, args.z0, args.max_iter, &opts);
    let rows: Vec<TrajectoryRow> = result
        .trajectory
        .as_deref()
        .unwrap_or_default()
        .iter()
        .enumerate()
        .map(|(i, &p)| TrajectoryRow::new(i, p))
        .collect();
    let status = if matches!(result.status, OrbitStatus::Unresolved) {
        1
    } else {
        0
    };

    let bytes = match args.format {
        Format::Text => {
            let mut s = String::new();
            s += &format!("lambda: {}\n", format_complex(args.lambda));
            s += &format!("z0: {}\n", format_complex(args.z0));
            s += &format!("status: {}\n", status_name(&result.status));
            match result.status {
                OrbitStatus::ConvergedToCycle { period } => {
                    s += &format!("period: {period}\n");
                }
                OrbitStatus::HitPole { pole_index, steps } => {
                    s += &format!("pole_index: {pole_index}\npole_steps: {steps}\n");
                }
                OrbitStatus::Unresolved => {}
            }
            s += &format!("steps_used: {}\n", result.steps_used);
            if let Some(cycle) = &result.cycle {
                for (i, p) in cycle.points.iter().enumerate() {
                    s += &format!("cycle[{i}]: {}\n", format_complex(*p));
                }
                s += &format!(
                    "multiplier: {} (abs {})\n",
                    format_complex(cycle.multiplier),
                    cycle.multiplier.norm()
                );
            }
            s.into_bytes()
        }
        Format::Csv => {
            let mut s = String::from("step,re,im,status\n");
            for row in &rows {
                s += &row.csv_line();
                s.push('\n');
            }
            s.into_bytes()
        }
        Format::Json => json_doc(&OrbitDoc {
            command: "orbit",
            config: OrbitConfig {
                lambda: format_complex(args.lambda),
                z0: format_complex(args.z0),
                max_iter: args.max_iter,
                format: args.format.name(),
                out: out_echo(&args.out),
            },
            status: status_name(&result.status),
            period: match result.status {
                OrbitStatus::ConvergedToCycle { period } => Some(period),
                _ => None,
            },
            pole_index: match result.status {
                OrbitStatus::HitPole { pole_index, .. } => Some(pole_index),
                _ => None,
            },
            pole_steps: match result.status {
                OrbitStatus::HitPole { steps, .. } => Some(steps),
                _ => None,
            },
            steps_used: result.steps_used,
            cycle: result.cycle.as_ref().map(CycleJson::from),
            trajectory: rows,
        }),
        Format::Ppm => unreachable!("rejected above"),
    };
    emit(&args.out, &bytes, status)
}

// ---------------------------------------------------------------- cycle

#[derive(Serialize)]
struct CycleDoc {
    command: &'static str,
    config: OrbitConfig,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    cycle: Option<CycleJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    class: Option<String>,
    steps_used: usize,
}

fn run_cycle(args: OrbitArgs) -> i32 {
    if let Some(code) = reject_ppm(args.format) {
        return code;
    }
    let param = MapParameter::new(args.lambda);
    let result = iterate_orbit(&param, args.z0, args.max_iter, &OrbitOptions::default());
    let class = result
        .cycle
        .as_ref()
        .map(|c| class_name(&classify_cycle(c, &ClassifyTolerances::default())));
    let status = if result.cycle.is_some() { 0 } else { 1 };

    let bytes = match args.format {
        Format::Text => {
            let mut s = String::new();
            s += &format!("lambda: {}\n", format_complex(args.lambda));
            s += &format!("status: {}\n", status_name(&result.status));
            if let Some(cycle) = &result.cycle {
                s += &format!("period: {}\n", cycle.period);
                for (i, p) in cycle.points.iter().enumerate() {
                    s += &format!("cycle[{i}]: {}\n", format_complex(*p));
                }
                s += &format!(
                    "multiplier: {} (abs {})\n",
                    format_complex(cycle.multiplier),
                    cycle.multiplier.norm()
                );
                s += &format!("class: {}\n", class.as_deref().unwrap_or(""));
            }
            s.into_bytes()
        }
        Format::Csv => {
            let mut s = String::from("index,re,im\n");
            if let Some(cycle) = &result.cycle {
                for (i, p) in cycle.points.iter().enumerate() {
                    s += &format!("{i},{},{}\n", p.re, p.im);
                }
            }
            s.into_bytes()
        }
        Format::Json => json_doc(&CycleDoc {
            command: "cycle",
            config: OrbitConfig {
                lambda: format_complex(args.lambda),
                z0: format_complex(args.z0),
                max_iter: args.max_iter,
                format: args.format.name(),
                out: out_echo(&args.out),
            },
            status: status_name(&result.status),
            cycle: result.cycle.as_ref().map(CycleJson::from),
            class,
            steps_used: result.steps_used,
        }),
        Format::Ppm => unreachable!("rejected above"),
    };
    emit(&args.out, &bytes, status)
}

// --------------------------------------------------------- fixed-points

#[derive(Serialize)]
struct FixedPointsConfig {
    lambda: String,
    format: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    out: Option<String>,
}

#[derive(Serialize)]
struct FixedPointsDoc {
    command: &'static str,
    config: FixedPointsConfig,
    count: usize,
}

fn run_fixed_points(args: FixedPointsArgs) -> i32 {
    if let Some(code) = reject_ppm(args.format) {
        return code;
    }
    if args.lambda.im != 0.0 {
        return usage_error("fixed-points scans the real line; --lambda must have zero imaginary part (e.g. 0.125+0i)");
    }
    let count = count_real_fixed_points_principal(args.lambda.re);
    let bytes = match args.format {
        Format::Text => format!("count: {count}\n").into_bytes(),
        Format::Csv => format!("count\n{count}\n").into_bytes(),
        Format::Json => json_doc(&FixedPointsDoc {
            command: "fixed-points",
            config: FixedPointsConfig {
                lambda: format_complex(args.lambda),
                format: args.format.name(),
                out: out_echo(&args.out),
            },
            count,
        }),
        Format::Ppm => unreachable!("rejected above"),
    };
    emit(&args.out, &bytes, 0)
}

// -------------------------------------------------------------- tangency

#[derive(Serialize)]
struct TangencyConfig {
    format: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    out: Option<String>,
}

#[derive(Serialize)]
struct TangencyDoc {
    command: &'static str,
    config: TangencyConfig,
    lambda_star: f64,
    x_star: f64,
}

fn run_tangency(args: FormatArgs) -> i32 {
    if let Some(code) = reject_ppm(args.format) {
        return code;
    }
    let t = tangency_parameter();
    let bytes = match args.format {
        Format::Text => {
            format!("lambda_star: {}\nx_star: {}\n", t.lambda_star, t.x_star).into_bytes()
        }
        Format::Csv => format!("lambda_star,x_star\n{},{}\n", t.lambda_star, t.x_star).into_bytes(),
        Format::Json => json_doc(&TangencyDoc {
            command: "tangency",
            config: TangencyConfig {
                format: args.format.name(),
                out: out_echo(&args.out),
            },
            lambda_star: t.lambda_star,
            x_star: t.x_star,
        }),
        Format::Ppm => unreachable!("rejected above"),
    };
    emit(&args.out, &bytes, 0)
}

// ------------------------------------------------------------- itinerary

#[derive(Serialize)]
struct ItineraryConfig {
    lambda: String,
    z0: String,
    max_iter: usize,
    format: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    out: Option<String>,
}

#[derive(Serialize)]
struct ItineraryDoc {
    command: &'static str,
    config: ItineraryConfig,
    word: String,
    symbols: Vec<i32>,
    terminated: bool,
}

fn run_itinerary(args: ItineraryArgs) -> i32 {
    if let Some(code) = reject_ppm(args.format) {
        return code;
    }
    let param = MapParameter::new(args.lambda);
    let word = match itinerary(&param, args.z0, args.max_iter) {
        Ok(word) => word,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let bytes = match args.format {
        Format::Text => format!(
            "word: {word}\nlength: {}\nterminated: {}\n",
            word.len(),
            word.is_terminated()
        )
        .into_bytes(),
        Format::Csv => {
            let mut s = String::from("step,symbol\n");
            for (i, sym) in word.symbols().iter().enumerate() {
                s += &format!("{i},{sym}\n");
            }
            if word.is_terminated() {
                s += &format!("{},inf\n", word.len());
            }
            s.into_bytes()
        }
        Format::Json => json_doc(&ItineraryDoc {
            command: "itinerary",
            config: ItineraryConfig {
                lambda: format_complex(args.lambda),
                z0: format_complex(args.z0),
                max_iter: args.max_iter,
                format: args.format.name(),
                out: out_echo(&args.out),
            },
            word: word.to_string(),
            symbols: word.symbols().to_vec(),
            terminated: word.is_terminated(),
        }),
        Format::Ppm => unreachable!("rejected above"),
    };
    emit(&args.out, &bytes, 0)
}

// -------------------------------------------------------------- cylinder

#[derive(Serialize)]
struct CylinderConfig {
    lambda: String,
    word: String,
    format: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    out: Option<String>,
}

#[derive(Serialize)]
struct CylinderDoc {
    command: &'static str,
    config: CylinderConfig,
    representative: ComplexJson,
    diameter_estimate: f64,
}

fn run_cylinder(args: CylinderArgs) -> i32 {
    if let Some(code) = reject_ppm(args.format) {
        return code;
    }
    let param = MapParameter::new(args.lambda);
    let cyl = match cylinder_point(&param, &args.word) {
        Ok(cyl) => cyl,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let bytes = match args.format {
        Format::Text => format!(
            "word: {}\nrepresentative: {}\ndiameter_estimate: {}\n",
            args.word,
            format_complex(cyl.representative),
            cyl.diameter_estimate
        )
        .into_bytes(),
        Format::Csv => format!(
            "re,im,diameter\n{},{},{}\n",
            cyl.representative.re, cyl.representative.im, cyl.diameter_estimate
        )
        .into_bytes(),
        Format::Json => json_doc(&CylinderDoc {
            command: "cylinder",
            config: CylinderConfig {
                lambda: format_complex(args.lambda),
                word: args.word.to_string(),
                format: args.format.name(),
                out: out_echo(&args.out),
            },
            representative: cyl.representative.into(),
            diameter_estimate: cyl.diameter_estimate,
        }),
        Format::Ppm => unreachable!("rejected above"),
    };
    emit(&args.out, &bytes, 0)
}

// --------------------------------------------------------------- renders

#[derive(Serialize)]
struct RenderConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<String>,
    grid: String,
    max_iter: usize,
    format: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    out: Option<String>,
}

#[derive(Serialize)]
struct RenderDoc {
    command: &'static str,
    config: RenderConfig,
    cols: usize,
    rows: usize,
    codes: Vec<u8>,
    iters: Vec<u32>,
}

fn render_output(
    command: &'static str,
    config: RenderConfig,
    raster: &Raster,
    format: Format,
    out: &Option<PathBuf>,
) -> i32 {
    let bytes = match format {
        Format::Ppm => encode_ppm(raster, palette_color),
        Format::Json => json_doc(&RenderDoc {
            command,
            config,
            cols: raster.spec.cols,
            rows: raster.spec.rows,
            codes: raster.class_codes.iter().map(|c| c.as_u8()).collect(),
            iters: raster.iter_counts.clone(),
        }),
        Format::Text | Format::Csv => {
            return usage_error("render commands support --format ppm or json");
        }
    };
    emit(out, &bytes, 0)
}

fn run_render_dyn(args: RenderDynArgs) -> i32 {
    let param = MapParameter::new(args.lambda);
    let opts = RenderOptions {
        max_iter: args.max_iter,
        ..RenderOptions::dynamical()
    };
    let raster = render_dynamical(&param, &args.grid, &opts);
    render_output(
        "render-dyn",
        RenderConfig {
            lambda: Some(format_complex(args.lambda)),
            grid: format_grid(&args.grid),
            max_iter: args.max_iter,
            format: args.format.name(),
            out: out_echo(&args.out),
        },
        &raster,
        args.format,
        &args.out,
    )
}

fn run_render_param(args: RenderParamArgs) -> i32 {
    let opts = RenderOptions {
        max_iter: args.max_iter,
        ..RenderOptions::parameter()
    };
    let raster = render_parameter(&args.grid, &opts);
    render_output(
        "render-param",
        RenderConfig {
            lambda: None,
            grid: format_grid(&args.grid),
            max_iter: args.max_iter,
            format: args.format.name(),
            out: out_echo(&args.out),
        },
        &raster,
        args.format,
        &args.out,
    )
}

// ------------------------------------------------------------- threshold

#[derive(Serialize)]
struct ThresholdConfig {
    quadrant: u8,
    t_step: f64,
    t_max: f64,
    lambda_bound: f64,
    arc_samples: usize,
    max_iter: usize,
    format: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    out: Option<String>,
}

#[derive(Serialize)]
struct ThresholdDoc {
    command: &'static str,
    config: ThresholdConfig,
    threshold: f64,
}

fn run_threshold(args: ThresholdArgs) -> i32 {
    if let Some(code) = reject_ppm(args.format) {
        return code;
    }
    if !(args.t_step > 0.0 && args.t_step.is_finite()) {
        return usage_error("--t-step must be a positive finite number");
    }
    if !(args.t_max >= args.t_step && args.t_max.is_finite()) {
        return usage_error("--t-max must be finite and at least --t-step");
    }
    if !(args.lambda_bound > 0.0 && args.lambda_bound.is_finite()) {
        return usage_error("--lambda-bound must be a positive finite number");
    }
    if args.arc_samples < 2 {
        return usage_error("--arc-samples must be at least 2");
    }
    let search = ThresholdSearch {
        t_step: args.t_step,
        t_max: args.t_max,
        lambda_bound: args.lambda_bound,
        arc_samples: args.arc_samples,
        max_iter: args.max_iter,
    };
    let threshold = estimate_region_threshold(args.quadrant, &search);
    let bytes = match args.format {
        Format::Text => {
            format!("quadrant: {}\nthreshold: {}\n", args.quadrant, threshold).into_bytes()
        }
        Format::Csv => {
            format!("quadrant,threshold\n{},{}\n", args.quadrant, threshold).into_bytes()
        }
        Format::Json => json_doc(&ThresholdDoc {
            command: "threshold",
            config: ThresholdConfig {
                quadrant: args.quadrant,
                t_step: args.t_step,
                t_max: args.t_max,
                lambda_bound: args.lambda_bound,
                arc_samples: args.arc_samples,
                max_iter: args.max_iter,
                format: args.format.name(),
                out: out_echo(&args.out),
            },
            threshold,
        }),
        Format::Ppm => unreachable!("rejected above"),
    };
    emit(&args.out, &bytes, 0)
}

// ---------------------------------------------------------------- verify

struct CheckLine {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn check_symmetry(seed: u64) -> Vec<CheckLine> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples = 10_000;
    let mut even_max: f64 = 0.0;
    let mut conj_max: f64 = 0.0;
    let mut even_ok = true;
    let mut conj_ok = true;
    for _ in 0..samples {
        let lambda = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let z = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let param = MapParameter::new(lambda);

        match (param.evaluate(z), param.evaluate(-z)) {
            (SpherePoint::Finite(a), SpherePoint::Finite(b)) => {
                let err = (a - b).norm() / a.norm().max(1.0);
                even_max = even_max.max(err);
            }
            (SpherePoint::Infinity, SpherePoint::Infinity) => {}
            _ => even_ok = false,
        }

        let mirror = MapParameter::new(lambda.conj());
        match (param.evaluate(z), mirror.evaluate(z.conj())) {
            (SpherePoint::Finite(a), SpherePoint::Finite(b)) => {
                let err = (a.conj() - b).norm() / a.norm().max(1.0);
                conj_max = conj_max.max(err);
            }
            (SpherePoint::Infinity, SpherePoint::Infinity) => {}
            _ => conj_ok = false,
        }
    }
    even_ok &= even_max <= 1e-12;
    conj_ok &= conj_max <= 1e-12;
    vec![
        CheckLine {
            name: "evenness f(-z) = f(z)",
            passed: even_ok,
            detail: format!("{samples} samples, max relative error {even_max:.3e}"),
        },
        CheckLine {
            name: "conjugation conj(f[lambda](z)) = f[conj lambda](conj z)",
            passed: conj_ok,
            detail: format!("{samples} samples, max relative error {conj_max:.3e}"),
        },
    ]
}

fn check_inverse(seed: u64) -> Vec<CheckLine> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let param = MapParameter::new(Complex64::new(4.0, 4.0));
    let samples = 1_000;
    let mut max_err: f64 = 0.0;
    let mut ok = true;
    let mut done = 0;
    while done < samples {
        let w = Complex64::new(rng.gen_range(-6.0..6.0), rng.gen_range(-6.0..6.0));
        if (w - param.asymptotic_value_plus()).norm() < 1e-6
            || (w - param.asymptotic_value_minus()).norm() < 1e-6
        {
            continue;
        }
        let branch = BranchIndex {
            k: rng.gen_range(-5..=5),
            sign: if rng.gen_bool(0.5) {
                Sign::Plus
            } else {
                Sign::Minus
            },
        };
        let z = match branch_inverse(&param, w, branch) {
            Ok(z) => z,
            Err(_) => {
                ok = false;
                done += 1;
                continue;
            }
        };
        match param.evaluate(z) {
            SpherePoint::Finite(back) => {
                max_err = max_err.max((back - w).norm());
            }
            SpherePoint::Infinity => ok = false,
        }
        done += 1;
    }
    ok &= max_err < 1e-9;
    vec![CheckLine {
        name: "branch round trip f(f_k^{-1}(w)) = w",
        passed: ok,
        detail: format!("{samples} targets, branches |k| <= 5, max error {max_err:.3e}"),
    }]
}

fn check_shift(seed: u64) -> Vec<CheckLine> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));
    let samples = 10_000;
    let mut ultra_ok = true;
    let mut lip_ok = true;
    for _ in 0..samples {
        let (lx, ly, lz) = (
            rng.gen_range(4..12),
            rng.gen_range(4..12),
            rng.gen_range(4..12),
        );
        let mut word = |len: usize| {
            let symbols: Vec<i32> = (0..len).map(|_| rng.gen_range(-4..=4)).collect();
            ItineraryWord::new(symbols, false)
        };
        let x = word(lx);
        let y = word(ly);
        let z = word(lz);
        let dxy = sequence_distance(&x, &y);
        let dyz = sequence_distance(&y, &z);
        let dxz = sequence_distance(&x, &z);
        if dxz > dxy.max(dyz) + 1e-15 {
            ultra_ok = false;
        }
        let (sx, sy) = (shift(&x).unwrap(), shift(&y).unwrap());
        if sequence_distance(&sx, &sy) > 2.0 * dxy + 1e-15 {
            lip_ok = false;
        }
    }
    vec![
        CheckLine {
            name: "word metric is an ultrametric",
            passed: ultra_ok,
            detail: format!("{samples} triples"),
        },
        CheckLine {
            name: "shift is 2-Lipschitz",
            passed: lip_ok,
            detail: format!("{samples} pairs"),
        },
    ]
}

fn run_verify(args: VerifyArgs) -> i32 {
    let mut lines = Vec::new();
    match args.suite {
        Suite::Symmetry => lines.extend(check_symmetry(args.seed)),
        Suite::Inverse => lines.extend(check_inverse(args.seed)),
        Suite::Shift => lines.extend(check_shift(args.seed)),
        Suite::All => {
            lines.extend(check_symmetry(args.seed));
            lines.extend(check_inverse(args.seed));
            lines.extend(check_shift(args.seed));
        }
    }
    let all_pass = lines.iter().all(|l| l.passed);
    let mut s = String::new();
    for line in &lines {
        s += &format!(
            "{}: {} ({})\n",
            line.name,
            if line.passed { "PASS" } else { "FAIL" },
            line.detail
        );
    }
    s += &format!(
        "suite {}: {}\n",
        args.suite.name(),
        if all_pass { "PASS" } else { "FAIL" }
    );
    emit(&args.out, s.as_bytes(), if all_pass { 0 } else { 1 })
}
