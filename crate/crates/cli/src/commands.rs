use clap::{Args, ValueEnum};
use grassgeo::geom::{
    distance, exp0, exp0_frame, frame_distance, frame_of_chart, geodesic_ode, log0,
    ChartPoint, Frame, TangentVector,
};
use grassgeo::kernel::{
    cayley_distance, cayley_distance_frames, critical_points, diastasis, energy, energy_gradient, g24_relation,
    normalized_overlap, plucker_embed, plucker_overlap_oracle, subsets, EnergySpec,
};
use grassgeo::linalg::{frobenius, max_abs};
use grassgeo::loci::{
    cartan_to_tangent, conjugate_stratum_i, conjugate_stratum_w, cut_locus_report, dexp_min_singular,
    disjoint_union_check, isoclinic_test, schubert_dims, schubert_membership, tangent_conjugate_times, CartanVector,
    ConjugateTime, DivisorClass, Flag, RootSign, SchubertSymbol, DEFAULT_ANGLE_TOL, DEFAULT_FD_STEP,
};
use grassgeo::sampling::SeededRng;
use grassgeo::topology::characteristic_report;
use grassgeo::GrassmannSpace;
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::io::{complex, matrix, num, nums, MatrixArg};

pub const ODE_STEPS: usize = 4000;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(grassgeo::Error),
}

impl From<grassgeo::Error> for CliError {
    fn from(e: grassgeo::Error) -> Self {
        CliError::Domain(e)
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub space: Option<GrassmannSpace>,
    pub tol: f64,
    pub seed: u64,
    pub verify: bool,
}

impl RunConfig {
    fn space(&self) -> CliResult<GrassmannSpace> {
        self.space.ok_or_else(|| CliError::Usage("this command needs --space N M [compact|noncompact]".into()))
    }
}

fn one() -> f64 {
    1.0
}
fn three() -> f64 {
    3.0
}
fn ode_steps() -> usize {
    ODE_STEPS
}
fn scan_points() -> usize {
    200
}
fn fd_step() -> f64 {
    DEFAULT_FD_STEP
}
fn window() -> f64 {
    1e-2
}
fn angle_tol() -> f64 {
    DEFAULT_ANGLE_TOL
}

#[derive(Args, Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ExpArgs {
    /// Tangent vector B (random unit vector if omitted).
    #[arg(long)]
    #[serde(default)]
    pub b: Option<MatrixArg>,
    /// Geodesic parameter; the endpoint is Exp_o(tB).
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    #[serde(default = "one")]
    pub t: f64,
    /// Report the frame instead of chart coordinates.
    #[arg(long)]
    #[serde(default)]
    pub frame: bool,
}

#[derive(Args, Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct LogArgs {
    #[arg(long)]
    #[serde(default)]
    pub z: Option<MatrixArg>,
}

#[derive(Args, Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct GeodesicCheckArgs {
    #[arg(long)]
    #[serde(default)]
    pub b: Option<MatrixArg>,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    #[serde(default = "one")]
    pub t: f64,
    #[arg(long, default_value_t = ODE_STEPS)]
    #[serde(default = "ode_steps")]
    pub steps: usize,
}

#[derive(Args, Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct PairArgs {
    #[arg(long)]
    #[serde(default)]
    pub z1: Option<MatrixArg>,
    #[arg(long)]
    #[serde(default)]
    pub z2: Option<MatrixArg>,
    /// Frames instead of chart points (reach the polar divisor).
    #[arg(long, conflicts_with = "z1")]
    #[serde(default)]
    pub f1: Option<MatrixArg>,
    #[arg(long, conflicts_with = "z2")]
    #[serde(default)]
    pub f2: Option<MatrixArg>,
}

#[derive(Args, Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ConjugateTimesArgs {
    /// Cartan vector h, min(n, m) components of unit length.
    #[arg(long, num_args = 1.., allow_negative_numbers = true)]
    pub h: Vec<f64>,
    #[arg(long, default_value_t = 3.0)]
    #[serde(default = "three")]
    pub tmax: f64,
    /// Rescale h to unit length instead of rejecting it.
    #[arg(long)]
    #[serde(default)]
    pub normalize: bool,
}

#[derive(Args, Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ConjugateScanArgs {
    #[arg(long, num_args = 1.., allow_negative_numbers = true)]
    pub h: Vec<f64>,
    #[arg(long, default_value_t = 3.0)]
    #[serde(default = "three")]
    pub tmax: f64,
    /// Scan points t_k = k tmax / points, k = 1..points.
    #[arg(long, default_value_t = 200)]
    #[serde(default = "scan_points")]
    pub points: usize,
    #[arg(long, default_value_t = DEFAULT_FD_STEP)]
    #[serde(default = "fd_step")]
    pub fd_step: f64,
    /// A row is flagged when a predicted time lies within this distance.
    #[arg(long, default_value_t = 1e-2)]
    #[serde(default = "window")]
    pub window: f64,
    #[arg(long)]
    #[serde(default)]
    pub normalize: bool,
}

#[derive(Args, Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FrameArgs {
    /// Frame with orthonormal columns (random plane if neither --f nor --z).
    #[arg(long, conflicts_with = "z")]
    #[serde(default)]
    pub f: Option<MatrixArg>,
    /// Chart point, converted to its frame.
    #[arg(long)]
    #[serde(default)]
    pub z: Option<MatrixArg>,
}

#[derive(Args, Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct StrataArgs {
    #[arg(long, conflicts_with = "z")]
    #[serde(default)]
    pub f: Option<MatrixArg>,
    #[arg(long)]
    #[serde(default)]
    pub z: Option<MatrixArg>,
    #[arg(long, default_value_t = DEFAULT_ANGLE_TOL)]
    #[serde(default = "angle_tol")]
    pub angle_tol: f64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FlagKind {
    /// W_p = span(e_1..e_p).
    #[default]
    Standard,
    /// e_{n+1}..e_{n+m} first, so W_m is the orthogonal complement of the origin.
    Polar,
}

#[derive(Args, Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct SchubertArgs {
    #[arg(long, conflicts_with = "z")]
    #[serde(default)]
    pub f: Option<MatrixArg>,
    #[arg(long)]
    #[serde(default)]
    pub z: Option<MatrixArg>,
    /// Schubert symbol ω (n nondecreasing entries in [0, m]).
    #[arg(long, num_args = 1..)]
    #[serde(default)]
    pub omega: Vec<usize>,
    #[arg(long, value_enum, default_value_t = FlagKind::Standard)]
    #[serde(default)]
    pub flag: FlagKind,
}

#[derive(Args, Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct IsoclinicArgs {
    #[arg(long)]
    #[serde(default)]
    pub f1: Option<MatrixArg>,
    #[arg(long)]
    #[serde(default)]
    pub f2: Option<MatrixArg>,
    #[arg(long, default_value_t = DEFAULT_ANGLE_TOL)]
    #[serde(default = "angle_tol")]
    pub angle_tol: f64,
}

#[derive(Args, Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct EnergyArgs {
    /// Diagonal weights eps_1..eps_{n+m}.
    #[arg(long, num_args = 1.., allow_negative_numbers = true)]
    pub eps: Vec<f64>,
    #[arg(long, conflicts_with = "z")]
    #[serde(default)]
    pub f: Option<MatrixArg>,
    /// Chart point; the gradient is reported as well.
    #[arg(long)]
    #[serde(default)]
    pub z: Option<MatrixArg>,
}

#[derive(Args, Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct WeightsArgs {
    /// Diagonal weights (default 1, 2, ..., n+m).
    #[arg(long, num_args = 1.., allow_negative_numbers = true)]
    #[serde(default)]
    pub eps: Vec<f64>,
}

fn space_value(space: &GrassmannSpace) -> Value {
    json!({ "n": space.n(), "m": space.m(), "curvature": space.curvature().to_string() })
}

fn envelope(command: &str, space: &GrassmannSpace, body: Value) -> Value {
    let mut out = json!({ "command": command, "space": space_value(space) });
    if let (Value::Object(o), Value::Object(b)) = (&mut out, body) {
        o.extend(b);
    }
    out
}

fn rng(cfg: &RunConfig, index: u64) -> SeededRng {
    SeededRng::with_stream(cfg.seed, index)
}

fn tangent(arg: &Option<MatrixArg>, space: GrassmannSpace, rng: &mut SeededRng) -> CliResult<TangentVector> {
    match arg {
        Some(m) => Ok(TangentVector::new(space, m.0.clone())?),
        None => Ok(rng.tangent(space, 1.0)),
    }
}

fn chart(arg: &Option<MatrixArg>, space: GrassmannSpace, rng: &mut SeededRng) -> CliResult<ChartPoint> {
    match arg {
        Some(m) => Ok(ChartPoint::new(space, m.0.clone())?),
        None => Ok(rng.chart_point(space)),
    }
}

fn frame(arg: &Option<MatrixArg>, space: GrassmannSpace, rng: &mut SeededRng) -> CliResult<Frame> {
    match arg {
        Some(m) => Ok(Frame::new(space, m.0.clone())?),
        None => Ok(rng.frame(space)?),
    }
}

fn plane(args: &FrameArgs, space: GrassmannSpace, rng: &mut SeededRng) -> CliResult<Frame> {
    match &args.z {
        Some(z) => Ok(frame_of_chart(&ChartPoint::new(space, z.0.clone())?)?),
        None => frame(&args.f, space, rng),
    }
}

fn cartan(h: &[f64], normalize: bool) -> CliResult<CartanVector> {
    Ok(if normalize { CartanVector::normalized(h.to_vec())? } else { CartanVector::new(h.to_vec())? })
}

fn weights(eps: &[f64], space: &GrassmannSpace) -> CliResult<EnergySpec> {
    if eps.is_empty() {
        return Ok(EnergySpec::new((1..=space.dim()).map(|k| k as f64).collect())?);
    }
    Ok(EnergySpec::new(eps.to_vec())?)
}

/// Largest principal (compact) or hyperbolic (noncompact) angle between two planes.
fn max_angle(a: &Frame, b: &Frame) -> CliResult<f64> {
    let angles = if a.space().is_compact() { a.principal_angles(b)? } else { a.hyperbolic_angles(b)? };
    Ok(angles.iter().copied().fold(0.0, f64::max))
}

pub fn exp(a: &ExpArgs, cfg: &RunConfig, index: u64) -> CliResult<Value> {
    let space = cfg.space()?;
    let b = tangent(&a.b, space, &mut rng(cfg, index))?;
    let tb = b.scaled(a.t);
    let mut body = json!({ "t": num(a.t), "b": matrix(b.matrix()) });
    if a.frame {
        let f = exp0_frame(&tb)?;
        body["frame"] = matrix(f.matrix());
        if cfg.verify {
            body["verify"] = match geodesic_ode(&b, a.t, ODE_STEPS) {
                Ok(ode) => {
                    let gap = max_angle(&frame_of_chart(&ode)?, &f)?;
                    json!({ "oracle": "geodesic-ode", "steps": ODE_STEPS, "max_angle": num(gap) })
                }
                Err(e @ grassgeo::Error::LeftChart { .. }) => {
                    json!({ "oracle": "geodesic-ode", "steps": ODE_STEPS, "unavailable": e.to_string() })
                }
                Err(e) => return Err(e.into()),
            };
        }
    } else {
        let z = exp0(&tb)?;
        body["z"] = matrix(z.matrix());
        if cfg.verify {
            let ode = geodesic_ode(&b, a.t, ODE_STEPS)?;
            let diff = max_abs(&(ode.matrix() - z.matrix()));
            body["verify"] = json!({ "oracle": "geodesic-ode", "steps": ODE_STEPS, "max_abs_diff": num(diff) });
        }
    }
    Ok(envelope("exp", &space, body))
}

pub fn log(a: &LogArgs, cfg: &RunConfig, index: u64) -> CliResult<Value> {
    let space = cfg.space()?;
    let z = chart(&a.z, space, &mut rng(cfg, index))?;
    let b = log0(&z)?;
    let mut body = json!({ "z": matrix(z.matrix()), "b": matrix(b.matrix()), "norm": num(b.norm()) });
    if cfg.verify {
        let back = exp0(&b)?;
        body["verify"] = json!({ "oracle": "exp0", "max_abs_diff": num(max_abs(&(back.matrix() - z.matrix()))) });
    }
    Ok(envelope("log", &space, body))
}

pub fn geodesic_check(a: &GeodesicCheckArgs, cfg: &RunConfig, index: u64) -> CliResult<Value> {
    let space = cfg.space()?;
    let b = tangent(&a.b, space, &mut rng(cfg, index))?;
    let exact = exp0(&b.scaled(a.t))?;
    let ode = geodesic_ode(&b, a.t, a.steps)?;
    let body = json!({
        "t": num(a.t),
        "steps": a.steps,
        "b": matrix(b.matrix()),
        "exp": matrix(exact.matrix()),
        "ode": matrix(ode.matrix()),
        "max_abs_diff": num(max_abs(&(exact.matrix() - ode.matrix()))),
    });
    Ok(envelope("geodesic-check", &space, body))
}

fn chart_pair(a: &PairArgs, space: GrassmannSpace, cfg: &RunConfig, index: u64) -> CliResult<(ChartPoint, ChartPoint)> {
    let mut r = rng(cfg, index);
    let z1 = chart(&a.z1, space, &mut r)?;
    let z2 = chart(&a.z2, space, &mut r)?;
    Ok((z1, z2))
}

fn frame_pair(a: &PairArgs, space: GrassmannSpace, cfg: &RunConfig, index: u64) -> CliResult<Option<(Frame, Frame)>> {
    if a.f1.is_none() && a.f2.is_none() {
        return Ok(None);
    }
    let mut r = rng(cfg, index);
    let f1 = frame(&a.f1, space, &mut r)?;
    let f2 = frame(&a.f2, space, &mut r)?;
    Ok(Some((f1, f2)))
}

fn no_frames(a: &PairArgs, command: &str) -> CliResult<()> {
    if a.f1.is_some() || a.f2.is_some() {
        return Err(CliError::Usage(format!("{command} takes chart points --z1/--z2, not frames")));
    }
    Ok(())
}

/// `|det(F1^H Λ F2)|` on orthonormal frames: the normalized overlap
/// modulus (compact) or its reciprocal (noncompact).
fn frame_overlap(f1: &Frame, f2: &Frame) -> f64 {
    let space = f1.space();
    let mut lf2 = f2.matrix().clone();
    for i in space.n()..space.dim() {
        let s = space.form_sign(i);
        lf2.row_mut(i).iter_mut().for_each(|z| *z *= s);
    }
    (f1.matrix().adjoint() * lf2).determinant().norm()
}

pub fn overlap(a: &PairArgs, cfg: &RunConfig, index: u64) -> CliResult<Value> {
    let space = cfg.space()?;
    no_frames(a, "overlap")?;
    let (z1, z2) = chart_pair(a, space, cfg, index)?;
    let ov = normalized_overlap(&z1, &z2)?;
    let mut body = json!({
        "z1": matrix(z1.matrix()),
        "z2": matrix(z2.matrix()),
        "raw": complex(ov.raw),
        "normalized": complex(ov.normalized),
        "modulus": num(ov.normalized.norm()),
    });
    if cfg.verify {
        let (f1, f2) = (frame_of_chart(&z1)?, frame_of_chart(&z2)?);
        let (oracle, modulus) = if space.is_compact() {
            ("cauchy-binet", plucker_overlap_oracle(&f1, &f2)?.norm())
        } else {
            ("frame-determinant", 1.0 / frame_overlap(&f1, &f2))
        };
        body["verify"] = json!({
            "oracle": oracle,
            "modulus": num(modulus),
            "abs_diff": num((modulus - ov.normalized.norm()).abs()),
        });
    }
    Ok(envelope("overlap", &space, body))
}

pub fn distance_cmd(a: &PairArgs, cfg: &RunConfig, index: u64) -> CliResult<Value> {
    let space = cfg.space()?;
    let body = match frame_pair(a, space, cfg, index)? {
        Some((f1, f2)) => json!({ "distance": num(frame_distance(&f1, &f2)?) }),
        None => {
            let (z1, z2) = chart_pair(a, space, cfg, index)?;
            json!({ "z1": matrix(z1.matrix()), "z2": matrix(z2.matrix()), "distance": num(distance(&z1, &z2)?) })
        }
    };
    Ok(envelope("distance", &space, body))
}

pub fn diastasis_cmd(a: &PairArgs, cfg: &RunConfig, index: u64) -> CliResult<Value> {
    let space = cfg.space()?;
    no_frames(a, "diastasis")?;
    let (z1, z2) = chart_pair(a, space, cfg, index)?;
    let d = diastasis(&z1, &z2)?;
    let mut body = json!({ "z1": matrix(z1.matrix()), "z2": matrix(z2.matrix()), "diastasis": num(d) });
    if cfg.verify && space.is_compact() {
        let dc = cayley_distance(&z1, &z2)?;
        body["verify"] = json!({ "identity": "D + 2 ln cos d_c", "residual": num(d + 2.0 * dc.cos().ln()) });
    }
    Ok(envelope("diastasis", &space, body))
}

pub fn cayley(a: &PairArgs, cfg: &RunConfig, index: u64) -> CliResult<Value> {
    let space = cfg.space()?;
    let body = match frame_pair(a, space, cfg, index)? {
        Some((f1, f2)) => json!({ "cayley_distance": num(cayley_distance_frames(&f1, &f2)?) }),
        None => {
            let (z1, z2) = chart_pair(a, space, cfg, index)?;
            let d = cayley_distance(&z1, &z2)?;
            json!({ "z1": matrix(z1.matrix()), "z2": matrix(z2.matrix()), "cayley_distance": num(d) })
        }
    };
    Ok(envelope("cayley", &space, body))
}

fn time_value(t: &ConjugateTime) -> Value {
    let contributions: Vec<Value> = t
        .contributions
        .iter()
        .map(|c| {
            json!({
                "family": c.family.name(),
                "indices": c.indices,
                "sign": c.sign.map(|s| if s == RootSign::Plus { "+" } else { "-" }),
                "lambda": c.lambda,
                "multiplicity": c.multiplicity,
            })
        })
        .collect();
    json!({ "t": num(t.t), "family": t.family().name(), "multiplicity": t.multiplicity, "contributions": contributions })
}

pub fn conjugate_times(a: &ConjugateTimesArgs, cfg: &RunConfig) -> CliResult<Value> {
    let space = cfg.space()?;
    let h = cartan(&a.h, a.normalize)?;
    let times = tangent_conjugate_times(space, &h, a.tmax)?;
    let t_values: Vec<f64> = times.iter().map(|t| t.t).collect();
    let body = json!({
        "h": nums(h.components()),
        "tmax": num(a.tmax),
        "t_values": nums(&t_values),
        "times": times.iter().map(time_value).collect::<Vec<_>>(),
    });
    Ok(envelope("conjugate-times", &space, body))
}

/// One row of a conjugate-time scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub t: f64,
    pub min_singular_normalized: f64,
    pub predicted: bool,
}

pub fn conjugate_scan(a: &ConjugateScanArgs, cfg: &RunConfig) -> CliResult<(GrassmannSpace, Vec<ScanRow>)> {
    let space = cfg.space()?;
    if a.points == 0 || !(a.tmax > 0.0) {
        return Err(CliError::Usage("scan needs --points >= 1 and --tmax > 0".into()));
    }
    let h = cartan(&a.h, a.normalize)?;
    let predicted: Vec<f64> = tangent_conjugate_times(space, &h, a.tmax + a.window)?.iter().map(|t| t.t).collect();
    let b = cartan_to_tangent(space, &h)?;
    let rows = (1..=a.points)
        .into_par_iter()
        .map(|k| {
            let t = a.tmax * k as f64 / a.points as f64;
            let s = dexp_min_singular(&b, t, a.fd_step)?;
            let flagged = predicted.iter().any(|&p| (p - t).abs() <= a.window);
            Ok(ScanRow { t, min_singular_normalized: s, predicted: flagged })
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok((space, rows))
}

pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from("t,min_singular_normalized,predicted_flag\n");
    for r in rows {
        out.push_str(&format!("{},{},{}\n", num(r.t), num(r.min_singular_normalized), u8::from(r.predicted)));
    }
    out
}

pub fn scan_json(space: &GrassmannSpace, a: &ConjugateScanArgs, rows: &[ScanRow]) -> Value {
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| json!({ "t": num(r.t), "min_singular_normalized": num(r.min_singular_normalized), "predicted_flag": r.predicted }))
        .collect();
    envelope("conjugate-scan", space, json!({ "h": nums(&a.h), "fd_step": num(a.fd_step), "rows": rows }))
}

pub fn cut_test(a: &FrameArgs, cfg: &RunConfig, index: u64) -> CliResult<Value> {
    let space = cfg.space()?;
    let f = plane(a, space, &mut rng(cfg, index))?;
    let (class, on_cut_locus, overlap, max_angle) = match disjoint_union_check(&f, cfg.tol)? {
        DivisorClass::NearDivisor { overlap, max_angle } => ("near-divisor", false, overlap, max_angle),
        class => {
            let r = cut_locus_report(&f, cfg.tol)?;
            let name = if matches!(class, DivisorClass::Chart(_)) { "chart" } else { "polar-divisor" };
            (name, r.on_cut_locus, r.overlap, r.max_angle)
        }
    };
    let body = json!({
        "frame": matrix(f.matrix()),
        "tol": num(cfg.tol),
        "on_cut_locus": on_cut_locus,
        "overlap": num(overlap),
        "max_angle": num(max_angle),
        "class": class,
    });
    Ok(envelope("cut-test", &space, body))
}

pub fn schubert(a: &SchubertArgs, cfg: &RunConfig, index: u64) -> CliResult<Value> {
    let space = cfg.space()?;
    let f = plane(&FrameArgs { f: a.f.clone(), z: a.z.clone() }, space, &mut rng(cfg, index))?;
    let flag = match a.flag {
        FlagKind::Standard => Flag::standard(space.dim()),
        FlagKind::Polar => Flag::polar_adapted(&space),
    };
    let dims = schubert_dims(&f, &flag, cfg.tol)?;
    let mut body = json!({ "frame": matrix(f.matrix()), "flag": format!("{:?}", a.flag).to_lowercase(), "dims": dims });
    if !a.omega.is_empty() {
        let symbol = SchubertSymbol::new(a.omega.clone(), space.m())?;
        let m = schubert_membership(&f, &symbol, &flag, cfg.tol)?;
        body["omega"] = json!(symbol.omega());
        body["sigma"] = json!(symbol.sigma());
        body["jumps"] = json!(symbol.jumps());
        body["in_z"] = json!(m.in_z);
        body["generic"] = json!(m.generic);
    }
    Ok(envelope("schubert", &space, body))
}

pub fn strata(a: &StrataArgs, cfg: &RunConfig, index: u64) -> CliResult<Value> {
    let space = cfg.space()?;
    let f = plane(&FrameArgs { f: a.f.clone(), z: a.z.clone() }, space, &mut rng(cfg, index))?;
    let angles = Frame::origin(space).principal_angles(&f)?;
    let body = json!({
        "frame": matrix(f.matrix()),
        "angles": nums(&angles),
        "stratum_w": conjugate_stratum_w(&f, a.angle_tol)?,
        "stratum_i": conjugate_stratum_i(&f, a.angle_tol)?,
    });
    Ok(envelope("strata", &space, body))
}

pub fn isoclinic(a: &IsoclinicArgs, cfg: &RunConfig, index: u64) -> CliResult<Value> {
    let space = cfg.space()?;
    let mut r = rng(cfg, index);
    let f1 = frame(&a.f1, space, &mut r)?;
    let f2 = frame(&a.f2, space, &mut r)?;
    let angles = if space.is_compact() { f1.principal_angles(&f2)? } else { f1.hyperbolic_angles(&f2)? };
    let body = json!({ "angles": nums(&angles), "isoclinic": isoclinic_test(&f1, &f2, a.angle_tol)? });
    Ok(envelope("isoclinic", &space, body))
}

pub fn plucker(a: &FrameArgs, cfg: &RunConfig, index: u64) -> CliResult<Value> {
    let space = cfg.space()?;
    let f = plane(a, space, &mut rng(cfg, index))?;
    let p = plucker_embed(&f)?;
    let mut body = json!({
        "frame": matrix(f.matrix()),
        "subsets": subsets(space.dim(), space.n()),
        "components": p.components().iter().map(|&z| complex(z)).collect::<Vec<_>>(),
        "relations_residual": num(p.relations_residual()),
    });
    if space.n() == 2 && space.m() == 2 {
        body["three_term_relation"] = complex(g24_relation(&p)?);
    }
    Ok(envelope("plucker", &space, body))
}

pub fn energy_cmd(a: &EnergyArgs, cfg: &RunConfig, index: u64) -> CliResult<Value> {
    let space = cfg.space()?;
    let spec = weights(&a.eps, &space)?;
    let mut r = rng(cfg, index);
    let body = match &a.f {
        Some(m) => {
            let f = Frame::new(space, m.0.clone())?;
            json!({ "energy": num(energy(&spec, &f)?) })
        }
        None => {
            let z = chart(&a.z, space, &mut r)?;
            let g = energy_gradient(&spec, &z)?;
            json!({
                "z": matrix(z.matrix()),
                "energy": num(energy(&spec, &frame_of_chart(&z)?)?),
                "gradient": matrix(&g),
                "gradient_norm": num(frobenius(&g)),
            })
        }
    };
    Ok(envelope("energy", &space, body))
}

pub fn critical(a: &WeightsArgs, cfg: &RunConfig) -> CliResult<Value> {
    let space = cfg.space()?;
    let spec = weights(&a.eps, &space)?;
    let points: Vec<Value> = critical_points(space, &spec)?
        .iter()
        .map(|p| json!({ "subset": p.subset, "value": num(p.value), "gradient_norm": num(p.gradient_norm) }))
        .collect();
    Ok(envelope("critical-points", &space, json!({ "eps": nums(spec.eps()), "count": points.len(), "points": points })))
}

pub fn char_numbers(a: &WeightsArgs, cfg: &RunConfig) -> CliResult<Value> {
    let space = cfg.space()?;
    if !space.is_compact() {
        return Err(CliError::Domain(grassgeo::Error::UnsupportedSpace { op: "char-numbers", required: "compact" }));
    }
    let spec = weights(&a.eps, &space)?;
    let r = characteristic_report(space.n(), space.m(), &spec)?;
    let body = json!({
        "euler": r.euler,
        "weyl_ratio": r.weyl_ratio,
        "cell_count": r.cell_count,
        "fundamental_rep_dim": r.fundamental_rep_dim,
        "kodaira_n": r.kodaira_n,
        "critical_count": r.critical_count,
        "max_orthogonal_coherent": r.max_orthogonal_coherent,
        "max_coherent_overlap": num(r.max_coherent_overlap),
        "all_equal": r.all_equal(),
    });
    Ok(envelope("char-numbers", &space, body))
}
