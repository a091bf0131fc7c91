//! `mifs`: check, build, sample and render Möbius iterated function systems.

mod config;
mod output;

use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mifs::raster::BLACK;
use mifs::{
    certify_contraction, chaos_game, check_maps_into_disc, draw_circles, iterate_attractor,
    make_contraction, rasterize, recover_spec, sample_random_specs, write_pnm, ChaosOptions,
    Circle, Complex64, ContractionCertificate, DiscImageSpec, IterateOptions, Mifs, PointCloud,
    Raster,
};

use config::{MapEntry, Method, MifsConfig, RenderConfig, Weights};
use output::{write_entry, Precision};

/// Exit code 1: the input is well formed but fails validation.
/// Exit code 2: the input cannot be read or parsed.
#[derive(Debug)]
pub enum Failure {
    Invalid(String),
    Parse(String),
    Io(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Self::Invalid(_) => 1,
            Self::Parse(_) | Self::Io(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Self::Invalid(m) | Self::Parse(m) | Self::Io(m) => m,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "mifs",
    version,
    about = "Möbius iterated function systems on the unit disc"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Test every map of a config for disc invariance and contraction.
    Check {
        /// Config file, or `-` for stdin.
        config: PathBuf,
    },
    /// Build the contraction with a given image disc.
    Gen(GenArgs),
    /// Recover the image disc and free parameters of each map.
    Recover {
        /// Config file, or `-` for stdin.
        config: PathBuf,
        /// Print round-trip (17 digit) numbers.
        #[arg(long)]
        exact: bool,
    },
    /// Emit a random system as a config.
    Sample {
        /// Number of maps.
        #[arg(short = 'n', long, default_value_t = 3)]
        maps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.2)]
        r_min: f64,
        #[arg(long, default_value_t = 0.6)]
        r_max: f64,
        /// Write here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Render the attractor as a PPM image.
    Attractor {
        /// Config file, or `-` for stdin.
        config: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[command(flatten)]
        overrides: RenderOverrides,
    },
    /// Render the unit circle and the image circle of every map as a PPM image.
    Circles {
        /// Config file, or `-` for stdin.
        config: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        width: Option<usize>,
        #[arg(long)]
        height: Option<usize>,
    },
}

#[derive(Args)]
struct GenArgs {
    /// Image disc radius.
    #[arg(long)]
    r: Option<f64>,
    /// Image disc center as `re,im`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    m: Option<Complex64>,
    /// Free coefficient `c` as `re,im`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    c: Option<Complex64>,
    /// Argument of `d` in radians.
    #[arg(long, allow_hyphen_values = true)]
    d_phase: Option<f64>,
    /// Read spec entries from a config instead (`-` for stdin).
    #[arg(long, conflicts_with_all = ["r", "m", "c", "d_phase"])]
    config: Option<PathBuf>,
    /// Print round-trip (17 digit) numbers.
    #[arg(long)]
    exact: bool,
}

#[derive(Args)]
struct RenderOverrides {
    #[arg(long, value_enum)]
    method: Option<MethodArg>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    width: Option<usize>,
    #[arg(long)]
    height: Option<usize>,
    /// Chaos-game orbit length.
    #[arg(long)]
    points: Option<usize>,
    /// Hutchinson stopping tolerance.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum)]
    weights: Option<WeightsArg>,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum MethodArg {
    Hutchinson,
    Chaos,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum WeightsArg {
    Uniform,
    Area,
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let (re, im) = s.split_once(',').ok_or("expected `re,im`")?;
    let part = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"));
    Ok(Complex64::new(part(re)?, part(im)?))
}

fn read_input(path: &Path) -> Result<String, Failure> {
    let io_err = |e: io::Error| Failure::Io(format!("{}: {e}", path.display()));
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).map_err(io_err)?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(io_err)
    }
}

fn load(path: &Path) -> Result<MifsConfig, Failure> {
    MifsConfig::parse(&read_input(path)?)
}

/// Certifies every map, failing on the first that is invalid.
fn build_system(config: &MifsConfig) -> Result<Mifs, Failure> {
    let maps = config
        .maps
        .iter()
        .enumerate()
        .map(|(i, entry)| {
            certify_entry(entry)
                .map_err(|e| Failure::Invalid(format!("map {}: {}", i + 1, e.message())))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Mifs::new(maps).map_err(|e| Failure::Invalid(e.to_string()))
}

fn certify_entry(entry: &MapEntry) -> Result<ContractionCertificate, Failure> {
    if let Some(spec) = entry.spec() {
        spec?;
    }
    certify_contraction(&entry.transform()?).map_err(|e| Failure::Invalid(e.to_string()))
}

fn print(text: &str) -> Result<(), Failure> {
    io::stdout()
        .write_all(text.as_bytes())
        .map_err(|e| Failure::Io(format!("stdout: {e}")))
}

fn check(path: &Path) -> Result<(), Failure> {
    let config = load(path)?;
    let p = Precision::Human;
    let mut out = String::new();
    let mut failures = Vec::new();
    for (i, entry) in config.maps.iter().enumerate() {
        let _ = writeln!(out, "[[maps]]\nindex = {}", i + 1);
        let t = match entry.transform() {
            Ok(t) => t,
            Err(e) => {
                let _ = writeln!(out, "valid = false\nerror = {:?}\n", e.message());
                failures.push(format!("map {}: {}", i + 1, e.message()));
                continue;
            }
        };
        for (name, z) in [("a", t.a()), ("b", t.b()), ("c", t.c()), ("d", t.d())] {
            let _ = writeln!(out, "{name} = {}", p.complex(z));
        }
        let mut reasons = Vec::new();
        if let Some(Err(e)) = entry.spec() {
            let _ = writeln!(out, "spec_valid = false\nspec_error = {:?}", e.message());
            reasons.push(e.message().to_string());
        }
        let _ = writeln!(out, "maps_into_disc = {}", check_maps_into_disc(&t));
        match certify_contraction(&t) {
            Ok(cert) => {
                let _ = writeln!(out, "contractive = true");
                let _ = writeln!(out, "lipschitz = {}", p.num(cert.lipschitz()));
                let _ = writeln!(out, "min_denominator = {}", p.num(cert.min_denominator()));
                let _ = writeln!(out, "image_center = {}", p.complex(cert.image().center()));
                let _ = writeln!(out, "image_radius = {}", p.num(cert.image().radius()));
                if let Some(w) = cert.worst_point() {
                    let _ = writeln!(out, "worst_point = {}", p.complex(w));
                }
            }
            Err(e) => {
                let label = match e.0 {
                    mifs::FailedCondition::ConditionI => "i",
                    mifs::FailedCondition::ConditionII => "ii",
                };
                let _ = writeln!(out, "contractive = false\nfailed_condition = \"{label}\"");
                let _ = writeln!(out, "failed_inequality = {:?}", e.0.inequality());
                reasons.insert(0, e.to_string());
            }
        }
        if !reasons.is_empty() {
            failures.push(format!("map {}: {}", i + 1, reasons.join("; ")));
        }
        out.push('\n');
    }
    print(&out)?;
    match failures.len() {
        0 => Ok(()),
        1 => Err(Failure::Invalid(failures.remove(0))),
        n => Err(Failure::Invalid(format!(
            "{} (and {} more failing maps)",
            failures[0],
            n - 1
        ))),
    }
}

fn gen(args: &GenArgs) -> Result<(), Failure> {
    let specs = match &args.config {
        Some(path) => load(path)?
            .maps
            .iter()
            .map(|e| {
                e.spec()
                    .unwrap_or_else(|| Err(Failure::Invalid("gen reads spec entries only".into())))
            })
            .collect::<Result<Vec<_>, _>>()?,
        None => {
            let (Some(r), Some(m), Some(c), Some(d_phase)) = (args.r, args.m, args.c, args.d_phase)
            else {
                return Err(Failure::Parse(
                    "gen needs --r, --m, --c and --d-phase, or --config".into(),
                ));
            };
            vec![DiscImageSpec::new(r, m, c, d_phase)
                .map_err(|e| Failure::Invalid(e.to_string()))?]
        }
    };
    let p = Precision::from_exact_flag(args.exact);
    let mut out = String::new();
    for spec in &specs {
        let cert = make_contraction(spec).map_err(|e| Failure::Invalid(e.to_string()))?;
        write_entry(&mut out, &MapEntry::from_transform(cert.transform()), p);
        out.push('\n');
    }
    print(&out)
}

fn recover(path: &Path, exact: bool) -> Result<(), Failure> {
    let config = load(path)?;
    let p = Precision::from_exact_flag(exact);
    let mut out = String::new();
    for (i, entry) in config.maps.iter().enumerate() {
        let t = entry
            .transform()
            .map_err(|e| Failure::Invalid(format!("map {}: {}", i + 1, e.message())))?;
        let spec = recover_spec(&t).map_err(|e| Failure::Invalid(format!("map {}: {e}", i + 1)))?;
        write_entry(&mut out, &MapEntry::from_spec(&spec, None), p);
        out.push('\n');
    }
    print(&out)
}

fn sample(
    n: usize,
    seed: u64,
    r_min: f64,
    r_max: f64,
    output: Option<&Path>,
) -> Result<(), Failure> {
    let specs =
        sample_random_specs(n, seed, r_min, r_max).map_err(|e| Failure::Invalid(e.to_string()))?;
    let mut text = format!("# {n} random maps, seed {seed}, r in [{r_min}, {r_max}]\n\n");
    for spec in &specs {
        let cert = make_contraction(spec).map_err(|e| Failure::Invalid(e.to_string()))?;
        write_entry(
            &mut text,
            &MapEntry::from_spec(spec, Some(cert.transform())),
            Precision::Exact,
        );
        text.push('\n');
    }
    let render = RenderConfig {
        seed,
        ..RenderConfig::default()
    };
    text.push_str(&toml::to_string(&Wrapper { render }).expect("render block serializes"));
    match output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
        }
        None => print(&text),
    }
}

#[derive(serde::Serialize)]
struct Wrapper {
    render: RenderConfig,
}

fn render_settings(config: &MifsConfig, o: &RenderOverrides) -> RenderConfig {
    let mut r = config.render.clone().unwrap_or_default();
    if let Some(m) = o.method {
        r.method = match m {
            MethodArg::Hutchinson => Method::Hutchinson,
            MethodArg::Chaos => Method::Chaos,
        };
    }
    if let Some(w) = o.weights {
        r.weights = match w {
            WeightsArg::Uniform => Weights::Uniform,
            WeightsArg::Area => Weights::Area,
        };
    }
    r.seed = o.seed.unwrap_or(r.seed);
    r.width = o.width.unwrap_or(r.width);
    r.height = o.height.unwrap_or(r.height);
    r.points = o.points.unwrap_or(r.points);
    r.tol = o.tol.unwrap_or(r.tol);
    r
}

fn attractor(path: &Path, output: &Path, overrides: &RenderOverrides) -> Result<(), Failure> {
    let config = load(path)?;
    let sys = build_system(&config)?;
    let settings = render_settings(&config, overrides);
    let viewport = settings.viewport()?;
    let (cloud, summary) = match settings.method {
        Method::Hutchinson => {
            if settings.tol.is_nan() || settings.tol <= 0.0 {
                return Err(Failure::Invalid("render.tol must be positive".into()));
            }
            let opts = IterateOptions {
                max_iter: settings.max_iter,
                tol: settings.tol,
                budget: settings.budget,
                thin_cell: None,
                seed: settings.seed,
            };
            let att = iterate_attractor(&sys, &PointCloud::single(Complex64::new(0.0, 0.0)), &opts);
            let last = att.step_distances.last().copied().unwrap_or(f64::NAN);
            let summary = format!(
                "hutchinson: {} iterations, last step {:.3e}, converged {}",
                att.iterations_used,
                last,
                att.converged(settings.tol)
            );
            (att.cloud, summary)
        }
        Method::Chaos => {
            let mut opts =
                ChaosOptions::new(settings.points, settings.seed).with_burn_in(settings.burn_in);
            if settings.weights == Weights::Area {
                opts = opts
                    .with_weights(sys.image_area_weights())
                    .map_err(|e| Failure::Invalid(e.to_string()))?;
            }
            (
                chaos_game(&sys, &opts),
                format!("chaos game: seed {}", settings.seed),
            )
        }
    };
    let raster = rasterize(&cloud, settings.width, settings.height, viewport)
        .map_err(|e| Failure::Invalid(e.to_string()))?;
    save(&raster, output)?;
    print(&format!(
        "wrote {} ({}x{}, {} points; {summary})\n",
        output.display(),
        settings.width,
        settings.height,
        cloud.len()
    ))
}

fn circles(
    path: &Path,
    output: &Path,
    width: Option<usize>,
    height: Option<usize>,
) -> Result<(), Failure> {
    let config = load(path)?;
    let sys = build_system(&config)?;
    let settings = config.render.clone().unwrap_or_default();
    let (w, h) = (
        width.unwrap_or(settings.width),
        height.unwrap_or(settings.height),
    );
    let raster =
        Raster::new(w, h, settings.viewport()?).map_err(|e| Failure::Invalid(e.to_string()))?;
    let mut all = vec![Circle::UNIT];
    all.extend(sys.maps().iter().map(|m| *m.image()));
    let raster = draw_circles(raster, &all, BLACK);
    save(&raster, output)?;
    print(&format!(
        "wrote {} ({w}x{h}, unit circle and {} image circles)\n",
        output.display(),
        sys.len()
    ))
}

fn save(raster: &Raster, output: &Path) -> Result<(), Failure> {
    write_pnm(raster, output).map_err(|e| Failure::Io(format!("{}: {e}", output.display())))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Check { config } => check(&config),
        Command::Gen(args) => gen(&args),
        Command::Recover { config, exact } => recover(&config, exact),
        Command::Sample {
            maps,
            seed,
            r_min,
            r_max,
            output,
        } => sample(maps, seed, r_min, r_max, output.as_deref()),
        Command::Attractor {
            config,
            output,
            overrides,
        } => attractor(&config, &output, &overrides),
        Command::Circles {
            config,
            output,
            width,
            height,
        } => circles(&config, &output, width, height),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("mifs: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
