//! Command-line front end for the `funkdisc` kernel.
//!
//! Exit codes: 0 success, 1 failed verification, 2 bad input or geometry,
//! 3 IO failure.

// `!(a > b)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod figure;
pub mod format;
pub mod sample;
pub mod verify;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use funkdisc::geodesics::{band_residual, push_to_model, sample_times, to_model};
use funkdisc::laplace::{laplacian_busemann, laplacian_fd_oracle};
use funkdisc::parse::{parse_coords, parse_fixed};
use funkdisc::{
    eval_hilbert, eval_model, forward_hit, funk_distance, hilbert_distance, BoundaryPoint, BusemannField,
    BusemannMetric, Chord, DiscPoint, FunkRay, GeomError, HilbertLine, HorocycleLevel, IsometryId,
    MeasureKind, ModelId, ModelPoint,
};
use serde::Serialize;
use thiserror::Error;

use crate::figure::BandFigure;
use crate::format::{num, ser_f64, ser_vec};
use crate::verify::{Plan, Suite, VerificationReport};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("writing output: {0}")]
    Output(#[from] io::Error),
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0} verification check(s) failed")]
    VerificationFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::VerificationFailed(_) => 1,
            CliError::Usage(_) | CliError::Geom(_) => 2,
            CliError::Io { .. } | CliError::Output(_) | CliError::Csv(_) => 3,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "funkdisc",
    version,
    about = "Funk and Hilbert geometry of the unit disc"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the Randers metric of a model at a point and vector.
    Eval(EvalArgs),
    /// Apply one of the model isometries to a point and optional vector.
    Map(MapArgs),
    /// Funk or Hilbert distance between two disc points.
    Distance(DistanceArgs),
    /// Busemann function of the geodesic from p towards the boundary point y.
    Busemann(BusemannArgs),
    /// Sample a horocycle b = a as CSV.
    Horocycle(HorocycleArgs),
    /// Laplacian of a Funk Busemann function, closed form and finite differences.
    Laplacian(LaplacianArgs),
    /// Sample a Funk ray or Hilbert line as CSV, optionally in another model.
    Geodesic(GeodesicArgs),
    /// Run the seeded verification suites.
    Verify(VerifyArgs),
    /// Render Funk chords in the band model as SVG.
    FigureBand(FigureArgs),
}

#[derive(Debug, Args)]
struct EvalArgs {
    /// Model tag: ff, fp, fu, fb, fuh1, fuh2, fus1, fus2.
    #[arg(long, value_parser = parse_model)]
    model: ModelId,
    /// Point, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    /// Tangent vector, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    v: String,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct MapArgs {
    /// eta, pi, psi, sigma, xi, phi, f or g.
    #[arg(long = "map", value_parser = parse_isometry)]
    id: IsometryId,
    /// Apply the inverse map; the point is then read in the target chart.
    #[arg(long)]
    inverse: bool,
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    #[arg(long, allow_hyphen_values = true)]
    v: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DiscMetric {
    Funk,
    Hilbert,
}

impl DiscMetric {
    fn busemann(self) -> BusemannMetric {
        match self {
            DiscMetric::Funk => BusemannMetric::Funk,
            DiscMetric::Hilbert => BusemannMetric::Hilbert,
        }
    }

    fn name(self) -> &'static str {
        match self {
            DiscMetric::Funk => "funk",
            DiscMetric::Hilbert => "hilbert",
        }
    }
}

#[derive(Debug, Args)]
struct DistanceArgs {
    #[arg(long = "type", value_enum)]
    kind: DiscMetric,
    #[arg(long, allow_hyphen_values = true)]
    from: String,
    #[arg(long, allow_hyphen_values = true)]
    to: String,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct FieldArgs {
    #[arg(long = "type", value_enum)]
    kind: DiscMetric,
    /// Base point of the geodesic.
    #[arg(long, allow_hyphen_values = true)]
    p: String,
    /// Boundary point the geodesic tends to.
    #[arg(long, allow_hyphen_values = true)]
    y: String,
}

impl FieldArgs {
    fn field(&self) -> CliResult<BusemannField> {
        Ok(BusemannField::new(
            self.kind.busemann(),
            disc(&self.p)?,
            boundary(&self.y)?,
        ))
    }
}

#[derive(Debug, Args)]
struct BusemannArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    /// Also evaluate the truncation `d(x, gamma(t)) - t`.
    #[arg(long, allow_hyphen_values = true)]
    t: Option<f64>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct HorocycleArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Level of the Busemann function.
    #[arg(long, allow_hyphen_values = true)]
    a: f64,
    #[arg(long, default_value_t = 64)]
    n: usize,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct LaplacianArgs {
    #[arg(long, value_parser = parse_measure)]
    measure: MeasureKind,
    #[arg(long, allow_hyphen_values = true)]
    p: String,
    #[arg(long, allow_hyphen_values = true)]
    y: String,
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct GeodesicArgs {
    #[arg(long, value_enum)]
    metric: DiscMetric,
    /// Chart for the output coordinates.
    #[arg(long, value_parser = parse_model, default_value = "ff")]
    model: ModelId,
    #[arg(long, allow_hyphen_values = true)]
    p: String,
    /// Boundary point the geodesic tends to.
    #[arg(
        long,
        allow_hyphen_values = true,
        conflicts_with = "v",
        required_unless_present = "v"
    )]
    y: Option<String>,
    /// Initial direction; the boundary point is its forward hit.
    #[arg(long, allow_hyphen_values = true)]
    v: Option<String>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    t0: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 5.0)]
    t1: f64,
    #[arg(long, default_value_t = funkdisc::geodesics::DEFAULT_SAMPLES)]
    n: usize,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct FigureArgs {
    #[arg(long)]
    out: PathBuf,
}

fn parse_model(s: &str) -> Result<ModelId, GeomError> {
    s.parse()
}

fn parse_isometry(s: &str) -> Result<IsometryId, GeomError> {
    s.parse()
}

fn parse_measure(s: &str) -> Result<MeasureKind, GeomError> {
    s.parse()
}

fn disc(s: &str) -> CliResult<DiscPoint> {
    let [x1, x2] = parse_fixed::<2>(s)?;
    Ok(DiscPoint::new(x1, x2)?)
}

fn boundary(s: &str) -> CliResult<BoundaryPoint> {
    let [y1, y2] = parse_fixed::<2>(s)?;
    Ok(BoundaryPoint::new(y1, y2)?)
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> CliResult<()> {
    match cli.command {
        Command::Eval(a) => eval(a, out),
        Command::Map(a) => map(a, out),
        Command::Distance(a) => distance(a, out),
        Command::Busemann(a) => busemann(a, out),
        Command::Horocycle(a) => horocycle(a, out),
        Command::Laplacian(a) => laplacian(a, out),
        Command::Geodesic(a) => geodesic(a, out),
        Command::Verify(a) => verify_cmd(a, out),
        Command::FigureBand(a) => figure_band(a, out),
    }
}

/// Prints a record as JSON or as aligned `key value` lines.
fn emit<T: Serialize>(record: &T, json: bool, out: &mut dyn Write) -> CliResult<()> {
    let value = serde_json::to_value(record).expect("records serialize");
    if json {
        writeln!(out, "{}", serde_json::to_string(&value).expect("json value"))?;
        return Ok(());
    }
    let fields = value.as_object().expect("records are objects");
    let width = fields.keys().map(|k| k.len()).max().unwrap_or(0);
    for (key, v) in fields {
        writeln!(out, "{key:width$}  {}", human(v))?;
    }
    Ok(())
}

fn human(v: &serde_json::Value) -> String {
    use serde_json::Value;
    match v {
        Value::Number(n) => n.as_f64().map(num).unwrap_or_else(|| n.to_string()),
        Value::Array(items) => items.iter().map(human).collect::<Vec<_>>().join(","),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[derive(Serialize)]
struct EvalRecord {
    model: String,
    #[serde(serialize_with = "ser_vec")]
    x: Vec<f64>,
    #[serde(serialize_with = "ser_vec")]
    v: Vec<f64>,
    #[serde(serialize_with = "ser_f64")]
    alpha: f64,
    #[serde(serialize_with = "ser_f64")]
    beta: f64,
    #[serde(serialize_with = "ser_f64")]
    total: f64,
}

fn eval(a: EvalArgs, out: &mut dyn Write) -> CliResult<()> {
    let x = parse_coords(&a.x)?;
    let v = parse_coords(&a.v)?;
    let p = ModelPoint::new(a.model, &x)?;
    let r = eval_model(&p, &v)?;
    let record = EvalRecord {
        model: a.model.to_string(),
        x,
        v,
        alpha: r.alpha,
        beta: r.beta,
        total: r.total,
    };
    emit(&record, a.json, out)
}

#[derive(Serialize)]
struct MapRecord {
    map: String,
    inverse: bool,
    from: String,
    to: String,
    #[serde(serialize_with = "ser_vec")]
    point: Vec<f64>,
    #[serde(serialize_with = "ser_vec", skip_serializing_if = "Vec::is_empty")]
    vector: Vec<f64>,
}

fn map(a: MapArgs, out: &mut dyn Write) -> CliResult<()> {
    let id = a.id;
    let (from, to) = if a.inverse {
        (id.target(), id.source())
    } else {
        (id.source(), id.target())
    };
    let x = ModelPoint::new(from, &parse_coords(&a.x)?)?;
    let image = if a.inverse {
        id.apply_inverse(&x)?
    } else {
        id.apply(&x)?
    };
    let vector = match &a.v {
        None => Vec::new(),
        Some(v) => {
            let v = parse_coords(v)?;
            if a.inverse {
                if v.len() == 3 {
                    x.check_tangent([v[0], v[1], v[2]])?;
                }
                id.differential_inverse(&x)?.apply(&v)?
            } else {
                id.differential(&x)?.apply(&v)?
            }
        }
    };
    let record = MapRecord {
        map: id.to_string(),
        inverse: a.inverse,
        from: from.to_string(),
        to: to.to_string(),
        point: image.coords().to_vec(),
        vector,
    };
    emit(&record, a.json, out)
}

#[derive(Serialize)]
struct DistanceRecord {
    #[serde(rename = "type")]
    kind: &'static str,
    #[serde(serialize_with = "ser_vec")]
    from: Vec<f64>,
    #[serde(serialize_with = "ser_vec")]
    to: Vec<f64>,
    #[serde(serialize_with = "ser_f64")]
    distance: f64,
}

fn distance(a: DistanceArgs, out: &mut dyn Write) -> CliResult<()> {
    let from = disc(&a.from)?;
    let to = disc(&a.to)?;
    let d = match a.kind {
        DiscMetric::Funk => funk_distance(from, to),
        DiscMetric::Hilbert => hilbert_distance(from, to),
    };
    let record = DistanceRecord {
        kind: a.kind.name(),
        from: from.coords().to_vec(),
        to: to.coords().to_vec(),
        distance: d,
    };
    emit(&record, a.json, out)
}

#[derive(Serialize)]
struct BusemannRecord {
    #[serde(rename = "type")]
    kind: &'static str,
    #[serde(serialize_with = "ser_vec")]
    p: Vec<f64>,
    #[serde(serialize_with = "ser_vec")]
    y: Vec<f64>,
    #[serde(serialize_with = "ser_vec")]
    x: Vec<f64>,
    #[serde(serialize_with = "ser_f64")]
    value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    truncation: Option<Truncation>,
}

#[derive(Serialize)]
struct Truncation {
    #[serde(serialize_with = "ser_f64")]
    t: f64,
    #[serde(serialize_with = "ser_f64")]
    value: f64,
    #[serde(serialize_with = "ser_f64")]
    error: f64,
}

fn busemann(a: BusemannArgs, out: &mut dyn Write) -> CliResult<()> {
    let field = a.field.field()?;
    let x = disc(&a.x)?;
    let value = field.value(x);
    let truncation = match a.t {
        None => None,
        Some(t) => {
            let truncated = field.truncated(x, t)?;
            Some(Truncation {
                t,
                value: truncated,
                error: (truncated - value).abs(),
            })
        }
    };
    let record = BusemannRecord {
        kind: a.field.kind.name(),
        p: field.p.coords().to_vec(),
        y: field.y.coords().to_vec(),
        x: x.coords().to_vec(),
        value,
        truncation,
    };
    if !a.json {
        // flatten the nested record for the table view
        emit(
            &(BusemannFlat {
                kind: record.kind,
                p: record.p.clone(),
                y: record.y.clone(),
                x: record.x.clone(),
                value,
                t: record.truncation.as_ref().map(|t| t.t),
                truncated: record.truncation.as_ref().map(|t| t.value),
                truncation_error: record.truncation.as_ref().map(|t| t.error),
            }),
            false,
            out,
        )
    } else {
        emit(&record, true, out)
    }
}

#[derive(Serialize)]
struct BusemannFlat {
    #[serde(rename = "type")]
    kind: &'static str,
    p: Vec<f64>,
    y: Vec<f64>,
    x: Vec<f64>,
    value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    truncated: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    truncation_error: Option<f64>,
}

/// Opens the CSV destination, or standard output when none is given.
fn csv_writer<'a>(
    path: &Option<PathBuf>,
    out: &'a mut dyn Write,
) -> CliResult<csv::Writer<Box<dyn Write + 'a>>> {
    let sink: Box<dyn Write + 'a> = match path {
        Some(p) => Box::new(create(p)?),
        None => Box::new(out),
    };
    Ok(csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(sink))
}

fn create(path: &Path) -> CliResult<File> {
    File::create(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn horocycle(a: HorocycleArgs, out: &mut dyn Write) -> CliResult<()> {
    let level = HorocycleLevel::new(a.field.field()?, a.a)?;
    let points = level.points(a.n)?;
    let mut w = csv_writer(&a.out, out)?;
    w.write_record(["x1", "x2", "level_residual"])?;
    for x in points {
        w.write_record([num(x.x1()), num(x.x2()), num(level.level_residual(x))])?;
    }
    w.flush().map_err(CliError::Output)
}

#[derive(Serialize)]
struct LaplacianRecord {
    measure: &'static str,
    #[serde(serialize_with = "ser_vec")]
    x: Vec<f64>,
    #[serde(serialize_with = "ser_f64")]
    closed_form: f64,
    #[serde(serialize_with = "ser_f64")]
    fd_oracle: f64,
    #[serde(serialize_with = "ser_f64")]
    difference: f64,
}

fn laplacian(a: LaplacianArgs, out: &mut dyn Write) -> CliResult<()> {
    let field = BusemannField::funk(disc(&a.p)?, boundary(&a.y)?);
    let x = disc(&a.x)?;
    let closed = laplacian_busemann(a.measure, &field, x)?;
    let oracle = laplacian_fd_oracle(a.measure, &field, x)?;
    let record = LaplacianRecord {
        measure: a.measure.tag(),
        x: x.coords().to_vec(),
        closed_form: closed,
        fd_oracle: oracle,
        difference: (closed - oracle).abs(),
    };
    emit(&record, a.json, out)
}

fn geodesic(a: GeodesicArgs, out: &mut dyn Write) -> CliResult<()> {
    if a.n < 2 {
        return Err(CliError::Usage(format!("--n must be at least 2, got {}", a.n)));
    }
    let p = disc(&a.p)?;
    let y = match (&a.y, &a.v) {
        (Some(y), _) => boundary(y)?,
        (None, Some(v)) => forward_hit(p, parse_fixed::<2>(v)?.into())?,
        (None, None) => return Err(CliError::Usage("one of --y or --v is required".into())),
    };
    if a.metric == DiscMetric::Funk && a.t0 < 0.0 {
        return Err(CliError::Usage(format!(
            "Funk rays start at t = 0, got --t0 {}",
            a.t0
        )));
    }
    let times = sample_times(a.t0, a.t1, a.n)?;
    let band_chord = if a.model == ModelId::Fb {
        Some(Chord::through(p.coords(), y.coords())?)
    } else {
        None
    };

    let mut header = vec!["t".to_string()];
    header.extend((1..=a.model.dim()).map(|i| format!("x{i}")));
    header.push("speed_residual".into());
    if band_chord.is_some() {
        header.push("band_residual".into());
    }

    let mut rows = Vec::with_capacity(times.len());
    for t in times {
        let (x, v) = match a.metric {
            DiscMetric::Funk => {
                let ray = FunkRay::new(p, y);
                (ray.point(t)?, ray.velocity(t))
            }
            DiscMetric::Hilbert => {
                let line = HilbertLine::new(p, y);
                (line.point(t)?, line.velocity(t))
            }
        };
        let (image, speed) = match a.metric {
            DiscMetric::Funk => {
                let (image, w) = push_to_model(x, v.coords(), a.model)?;
                let speed = eval_model(&image, &w)?.total;
                (image, speed)
            }
            // the models carry Funk metrics, so Hilbert speed is measured in the disc
            DiscMetric::Hilbert => (to_model(x, a.model)?, eval_hilbert(x, v).total),
        };
        let mut row = vec![num(t)];
        row.extend(image.coords().iter().map(|c| num(*c)));
        row.push(num((speed - 1.0).abs()));
        if let Some(chord) = band_chord {
            row.push(num(band_residual(chord, &image)?));
        }
        rows.push(row);
    }

    let mut w = csv_writer(&a.out, out)?;
    w.write_record(&header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush().map_err(CliError::Output)
}

fn verify_cmd(a: VerifyArgs, out: &mut dyn Write) -> CliResult<()> {
    if a.samples == 0 {
        return Err(CliError::Usage("--samples must be positive".into()));
    }
    let reports = verify::run(
        a.suite,
        Plan {
            samples: a.samples,
            seed: a.seed,
        },
    );
    if a.json {
        writeln!(
            out,
            "{}",
            serde_json::to_string(&reports).expect("reports serialize")
        )?;
    } else {
        for r in &reports {
            writeln!(out, "{}", report_line(r))?;
        }
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    if failed > 0 {
        return Err(CliError::VerificationFailed(failed));
    }
    Ok(())
}

fn report_line(r: &VerificationReport) -> String {
    format!(
        "{} {}/{} samples={} max_residual={} tolerance={} seed={}",
        if r.passed { "PASS" } else { "FAIL" },
        r.suite,
        r.check,
        r.samples,
        num(r.max_residual),
        num(r.tolerance),
        r.seed
    )
}

fn figure_band(a: FigureArgs, out: &mut dyn Write) -> CliResult<()> {
    let fig = BandFigure::build()?;
    let mut file = create(&a.out)?;
    file.write_all(fig.to_svg().as_bytes())
        .map_err(|source| CliError::Io {
            path: a.out.display().to_string(),
            source,
        })?;
    writeln!(
        out,
        "wrote {} curves to {} (max band residual {})",
        fig.curves.len(),
        a.out.display(),
        num(fig.max_residual())
    )?;
    Ok(())
}
