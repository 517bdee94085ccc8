//! Deterministic parameter sweeps, argmax refinement, and the long-time
//! plateau (trapping) detector.

mod presets;

pub use presets::{figure_preset, preset_ids, FigurePreset};

use crate::dynamics::{evolve, EvolutionContext};
use crate::error::{Error, Result};
use crate::estimation::{
    fi_projective, qfi_matrix, qfi_temperature_closed, ratio_r, MeasurementBasis,
};
use crate::rates::{rate_bundle, BathParams, ProbeParams};
use std::fmt;
use std::str::FromStr;

/// Sweepable parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamKey {
    Temperature,
    Theta,
    Phi,
    U,
    Lambda,
    Omega0,
    Tau,
}

impl fmt::Display for ParamKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ParamKey::Temperature => "T",
            ParamKey::Theta => "theta",
            ParamKey::Phi => "phi",
            ParamKey::U => "u",
            ParamKey::Lambda => "lambda",
            ParamKey::Omega0 => "omega0",
            ParamKey::Tau => "tau",
        };
        write!(f, "{s}")
    }
}

impl FromStr for ParamKey {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "T" | "temperature" => Ok(ParamKey::Temperature),
            "theta" => Ok(ParamKey::Theta),
            "phi" => Ok(ParamKey::Phi),
            "u" => Ok(ParamKey::U),
            "lambda" => Ok(ParamKey::Lambda),
            "omega0" => Ok(ParamKey::Omega0),
            "tau" => Ok(ParamKey::Tau),
            other => Err(Error::Config(format!("unknown sweep parameter '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxisScale {
    Linear,
    Log,
}

impl fmt::Display for AxisScale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxisScale::Linear => write!(f, "lin"),
            AxisScale::Log => write!(f, "log"),
        }
    }
}

/// One free axis of a sweep.
#[derive(Clone, Debug)]
pub struct AxisSpec {
    pub key: ParamKey,
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub scale: AxisScale,
}

impl AxisSpec {
    pub fn new(key: ParamKey, min: f64, max: f64, count: usize, scale: AxisScale) -> Result<Self> {
        let axis = Self {
            key,
            min,
            max,
            count,
            scale,
        };
        axis.validate()?;
        Ok(axis)
    }

    pub fn validate(&self) -> Result<()> {
        if self.count < 2 {
            return Err(Error::Config(format!(
                "axis {} needs at least 2 points",
                self.key
            )));
        }
        if !(self.min < self.max) {
            return Err(Error::Config(format!(
                "axis {}: min {} must be below max {}",
                self.key, self.min, self.max
            )));
        }
        if self.scale == AxisScale::Log && self.min <= 0.0 {
            return Err(Error::Config(format!(
                "axis {}: log scale requires positive bounds",
                self.key
            )));
        }
        Ok(())
    }

    /// Strictly increasing grid of `count` values.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.count;
        (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                match self.scale {
                    AxisScale::Linear => self.min + t * (self.max - self.min),
                    AxisScale::Log => (self.min.ln() + t * (self.max.ln() - self.min.ln())).exp(),
                }
            })
            .collect()
    }
}

/// Full parameter assignment for everything a sweep does not vary.
#[derive(Clone, Copy, Debug)]
pub struct FixedParams {
    pub probe: ProbeParams,
    pub bath: BathParams,
    pub tau: f64,
    pub include_lamb: bool,
}

impl FixedParams {
    fn with(&self, key: ParamKey, value: f64) -> Self {
        let mut out = *self;
        match key {
            ParamKey::Temperature => out.bath.temperature = value,
            ParamKey::Theta => out.probe.theta = value,
            ParamKey::Phi => out.probe.phi = value,
            ParamKey::U => out.probe.u = value,
            ParamKey::Lambda => out.probe.lambda = value,
            ParamKey::Omega0 => out.probe.omega0 = value,
            ParamKey::Tau => out.tau = value,
        }
        out
    }
}

/// What a sweep evaluates at each grid point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    /// Closed-form temperature QFI.
    Qfi,
    /// Classical Fisher information of the sigma_z readout.
    FiSigmaZ,
    /// The (T, theta) Fisher matrix entries.
    QfiMatrix,
    /// Simultaneous-estimation total variance (with the ratio R alongside).
    DeltaS,
    /// Individual-estimation total variance.
    DeltaI,
    /// Ratio R = Delta_i / Delta_s.
    RatioR,
    /// Evolved density-matrix entries.
    RhoEntries,
    /// The rate bundle feeding the dynamics.
    Rates,
}

impl Quantity {
    pub fn columns(&self) -> &'static [&'static str] {
        match self {
            Quantity::Qfi => &["qfi"],
            Quantity::FiSigmaZ => &["fi_sigma_z"],
            Quantity::QfiMatrix => &["h_tt", "h_ttheta", "h_thetatheta"],
            Quantity::DeltaS => &["delta_s", "ratio_r"],
            Quantity::DeltaI => &["delta_i"],
            Quantity::RatioR => &["ratio_r"],
            Quantity::RhoEntries => &["rho_ee", "re_rho_eg", "im_rho_eg", "rho_gg"],
            Quantity::Rates => &[
                "gamma0",
                "n_mean",
                "dn_dt",
                "delta",
                "omega_shifted",
                "m_factor",
            ],
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Quantity::Qfi => "qfi",
            Quantity::FiSigmaZ => "fi_sigma_z",
            Quantity::QfiMatrix => "qfi_matrix",
            Quantity::DeltaS => "delta_s",
            Quantity::DeltaI => "delta_i",
            Quantity::RatioR => "ratio_r",
            Quantity::RhoEntries => "rho_entries",
            Quantity::Rates => "rates",
        };
        write!(f, "{s}")
    }
}

impl FromStr for Quantity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "qfi" => Ok(Quantity::Qfi),
            "fi_sigma_z" => Ok(Quantity::FiSigmaZ),
            "qfi_matrix" => Ok(Quantity::QfiMatrix),
            "delta_s" => Ok(Quantity::DeltaS),
            "delta_i" => Ok(Quantity::DeltaI),
            "ratio_r" => Ok(Quantity::RatioR),
            "rho_entries" => Ok(Quantity::RhoEntries),
            "rates" => Ok(Quantity::Rates),
            other => Err(Error::Config(format!("unknown quantity '{other}'"))),
        }
    }
}

/// A 1- or 2-axis sweep specification.
#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub free: Vec<AxisSpec>,
    pub fixed: FixedParams,
    pub quantity: Quantity,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.free.is_empty() || self.free.len() > 2 {
            return Err(Error::Config(format!(
                "sweeps take 1 or 2 free axes, got {}",
                self.free.len()
            )));
        }
        for axis in &self.free {
            axis.validate()?;
        }
        if self.free.len() == 2 && self.free[0].key == self.free[1].key {
            return Err(Error::Config("free axes must be distinct".into()));
        }
        Ok(())
    }
}

/// One grid point's outcome; per-point failures are recorded, not fatal.
#[derive(Clone, Debug)]
pub enum PointOutcome {
    Values(Vec<f64>),
    Missing(String),
}

impl PointOutcome {
    pub fn values(&self) -> Option<&[f64]> {
        match self {
            PointOutcome::Values(v) => Some(v),
            PointOutcome::Missing(_) => None,
        }
    }
}

/// Tabular sweep output, row-major over the axis grids (first axis outer).
#[derive(Clone, Debug)]
pub struct SweepResult {
    pub axes: Vec<(ParamKey, Vec<f64>)>,
    pub columns: Vec<String>,
    pub points: Vec<PointOutcome>,
    pub metadata: Vec<(String, String)>,
}

impl SweepResult {
    pub fn missing_count(&self) -> usize {
        self.points
            .iter()
            .filter(|p| matches!(p, PointOutcome::Missing(_)))
            .count()
    }

    /// Row-major index for a 2-axis sweep.
    pub fn index(&self, i: usize, j: usize) -> usize {
        match self.axes.len() {
            1 => i,
            _ => i * self.axes[1].1.len() + j,
        }
    }
}

/// Evaluate one quantity at a fully fixed parameter point.
pub fn evaluate_point(fp: &FixedParams, quantity: Quantity) -> Result<Vec<f64>> {
    fp.probe.validate()?;
    let bundle = rate_bundle(&fp.probe, &fp.bath, fp.include_lamb)?;
    if quantity == Quantity::Rates {
        return Ok(vec![
            bundle.gamma0,
            bundle.n_mean,
            bundle.dn_dt,
            bundle.delta,
            bundle.omega_shifted,
            bundle.m_factor,
        ]);
    }
    let ctx = EvolutionContext::new(bundle, fp.tau)?;
    match quantity {
        Quantity::Qfi => Ok(vec![qfi_temperature_closed(&fp.probe, &ctx)]),
        Quantity::FiSigmaZ => Ok(vec![fi_projective(
            &fp.probe,
            &ctx,
            MeasurementBasis::SigmaZ,
        )?]),
        Quantity::QfiMatrix => {
            let m = qfi_matrix(&fp.probe, &ctx)?;
            Ok(vec![m.h_tt(), m.h_ttheta(), m.h_thetatheta()])
        }
        Quantity::DeltaS => {
            let m = qfi_matrix(&fp.probe, &ctx)?;
            let (_, delta_s, r) = ratio_r(&m)?;
            Ok(vec![delta_s, r])
        }
        Quantity::DeltaI => {
            let m = qfi_matrix(&fp.probe, &ctx)?;
            let (delta_i, _, _) = ratio_r(&m)?;
            Ok(vec![delta_i])
        }
        Quantity::RatioR => {
            let m = qfi_matrix(&fp.probe, &ctx)?;
            let (_, _, r) = ratio_r(&m)?;
            Ok(vec![r])
        }
        Quantity::RhoEntries => {
            let s = evolve(&fp.probe, &ctx);
            Ok(vec![
                s.excited_population(),
                s.coherence().re,
                s.coherence().im,
                s.ground_population(),
            ])
        }
        Quantity::Rates => unreachable!(),
    }
}

/// Run a sweep over its grid; identical specs produce bit-identical results.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let grids: Vec<(ParamKey, Vec<f64>)> = spec
        .free
        .iter()
        .map(|axis| (axis.key, axis.grid()))
        .collect();

    let mut points = Vec::new();
    match grids.len() {
        1 => {
            for &x in &grids[0].1 {
                let fp = spec.fixed.with(grids[0].0, x);
                points.push(outcome(&fp, spec.quantity));
            }
        }
        _ => {
            for &x in &grids[0].1 {
                for &y in &grids[1].1 {
                    let fp = spec.fixed.with(grids[0].0, x).with(grids[1].0, y);
                    points.push(outcome(&fp, spec.quantity));
                }
            }
        }
    }

    Ok(SweepResult {
        axes: grids,
        columns: spec
            .quantity
            .columns()
            .iter()
            .map(|s| s.to_string())
            .collect(),
        points,
        metadata: metadata_for(spec),
    })
}

fn outcome(fp: &FixedParams, quantity: Quantity) -> PointOutcome {
    match evaluate_point(fp, quantity) {
        Ok(v) => PointOutcome::Values(v),
        Err(e) => PointOutcome::Missing(e.to_string()),
    }
}

fn metadata_for(spec: &SweepSpec) -> Vec<(String, String)> {
    let f = &spec.fixed;
    let num = |x: f64| format!("{x:.17e}");
    let mut meta = vec![
        ("version".into(), env!("CARGO_PKG_VERSION").to_string()),
        ("quantity".into(), spec.quantity.to_string()),
        ("coupling".into(), f.probe.coupling.to_string()),
        ("omega0".into(), num(f.probe.omega0)),
        ("lambda".into(), num(f.probe.lambda)),
        ("u".into(), num(f.probe.u)),
        ("theta".into(), num(f.probe.theta)),
        ("phi".into(), num(f.probe.phi)),
        ("T".into(), num(f.bath.temperature)),
        ("cutoff_eps".into(), num(f.bath.cutoff_eps)),
        ("tau".into(), num(f.tau)),
        ("include_lamb".into(), f.include_lamb.to_string()),
        ("quadrature_rel_tol".into(), "1e-10".into()),
        ("quadrature_abs_tol".into(), "1e-14".into()),
    ];
    for (i, axis) in spec.free.iter().enumerate() {
        meta.push((
            format!("axis{}", i + 1),
            format!(
                "{}:{:.17e}:{:.17e}:{}:{}",
                axis.key, axis.min, axis.max, axis.count, axis.scale
            ),
        ));
    }
    meta
}

/// Locate a grid-detected interior maximum: returns (lo, mid, hi) around the
/// largest sample if it is not at the boundary.
pub fn grid_max_bracket(xs: &[f64], qs: &[f64]) -> Option<(f64, f64, f64)> {
    if xs.len() != qs.len() || xs.len() < 3 {
        return None;
    }
    let mut best = 0;
    for (i, q) in qs.iter().enumerate() {
        if *q > qs[best] {
            best = i;
        }
    }
    if best == 0 || best == xs.len() - 1 {
        return None;
    }
    Some((xs[best - 1], xs[best], xs[best + 1]))
}

/// Golden-section refinement of a bracketed interior maximum of the sweep
/// quantity along one axis. The bracket is (lo, mid, hi) with the sampled
/// maximum at mid; refinement tightens the abscissa to 1e-6 of the original
/// bracket width.
pub fn refine_argmax(
    spec: &SweepSpec,
    axis: ParamKey,
    bracket: (f64, f64, f64),
) -> Result<(f64, f64)> {
    let (lo, mid, hi) = bracket;
    if !(lo < mid && mid < hi) {
        return Err(Error::InvalidBracket(format!(
            "bracket ({lo}, {mid}, {hi}) is not ordered"
        )));
    }
    let eval = |x: f64| -> Result<f64> {
        let fp = spec.fixed.with(axis, x);
        Ok(evaluate_point(&fp, spec.quantity)?[0])
    };
    let f_lo = eval(lo)?;
    let f_mid = eval(mid)?;
    let f_hi = eval(hi)?;
    if f_mid < f_lo.max(f_hi) {
        return Err(Error::InvalidBracket(format!(
            "no interior maximum: f({lo}) = {f_lo}, f({mid}) = {f_mid}, f({hi}) = {f_hi}"
        )));
    }

    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let width_target = 1e-6 * (hi - lo);
    let mut a = lo;
    let mut b = hi;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = eval(x1)?;
    let mut f2 = eval(x2)?;
    while b - a > width_target {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = eval(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = eval(x2)?;
        }
    }
    let x_opt = 0.5 * (a + b);
    let q_opt = eval(x_opt)?;
    Ok((x_opt, q_opt.max(f1).max(f2)))
}

/// Verdict of the long-time plateau analysis.
#[derive(Clone, Copy, Debug)]
pub struct TrappingReport {
    pub is_trapped: bool,
    /// Mean of the last decade of samples.
    pub plateau_value: f64,
    /// Relative spread over the last decade.
    pub drift: f64,
}

/// Decide whether a QFI time series has settled onto its plateau.
///
/// `relax_rate` is gamma(w0) M, the population relaxation rate. The series
/// must cover at least two decades of tau beyond 1/relax_rate; the verdict is
/// trapped when the relative spread over the last decade is at most 1e-3.
pub fn trapping_detector(taus: &[f64], values: &[f64], relax_rate: f64) -> Result<TrappingReport> {
    if taus.len() != values.len() || taus.len() < 4 {
        return Err(Error::InsufficientSpan(format!(
            "need matching series with >= 4 samples, got {} and {}",
            taus.len(),
            values.len()
        )));
    }
    if !(relax_rate > 0.0) {
        return Err(Error::Domain(format!(
            "relaxation rate must be > 0, got {relax_rate}"
        )));
    }
    if taus.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain(
            "time series must be strictly increasing".into(),
        ));
    }
    let t_relax = 1.0 / relax_rate;
    let t_end = *taus.last().unwrap();
    if t_end < 99.999 * t_relax {
        return Err(Error::InsufficientSpan(format!(
            "series ends at {t_end:.3e} but needs two decades beyond 1/(gamma M) = {t_relax:.3e}"
        )));
    }
    let window_start = t_end / 10.0;
    let tail: Vec<f64> = taus
        .iter()
        .zip(values)
        .filter(|(t, _)| **t >= window_start)
        .map(|(_, v)| *v)
        .collect();
    if tail.len() < 2 {
        return Err(Error::InsufficientSpan(
            "fewer than 2 samples in the last decade".into(),
        ));
    }
    let mean = tail.iter().sum::<f64>() / tail.len() as f64;
    let max = tail.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = tail.iter().cloned().fold(f64::INFINITY, f64::min);
    let drift = (max - min) / mean.abs().max(f64::MIN_POSITIVE);
    Ok(TrappingReport {
        is_trapped: drift <= 1e-3,
        plateau_value: mean,
        drift,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rates::CouplingKind;
    use std::f64::consts::PI;

    fn fixed(coupling: CouplingKind) -> FixedParams {
        FixedParams {
            probe: ProbeParams::new(1.0, 0.2, 1.0, PI, 0.0, coupling).unwrap(),
            bath: BathParams::with_temperature(0.5).unwrap(),
            tau: 10.0,
            include_lamb: false,
        }
    }

    #[test]
    fn axis_grids() {
        let lin = AxisSpec::new(ParamKey::U, 0.0, 1.0, 5, AxisScale::Linear).unwrap();
        assert_eq!(lin.grid(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let log = AxisSpec::new(ParamKey::Tau, 1.0, 100.0, 3, AxisScale::Log).unwrap();
        let g = log.grid();
        assert!((g[1] - 10.0).abs() < 1e-12);
        assert!(AxisSpec::new(ParamKey::U, 1.0, 0.0, 5, AxisScale::Linear).is_err());
        assert!(AxisSpec::new(ParamKey::U, 0.0, 1.0, 1, AxisScale::Linear).is_err());
        assert!(AxisSpec::new(ParamKey::Tau, 0.0, 1.0, 4, AxisScale::Log).is_err());
    }

    #[test]
    fn sweep_over_phi_is_constant() {
        let spec = SweepSpec {
            free: vec![AxisSpec::new(ParamKey::Phi, 0.0, 6.0, 7, AxisScale::Linear).unwrap()],
            fixed: FixedParams {
                probe: ProbeParams::new(1.0, 0.2, 1.0, 1.3, 0.0, CouplingKind::Udw).unwrap(),
                ..fixed(CouplingKind::Udw)
            },
            quantity: Quantity::Qfi,
        };
        let result = run_sweep(&spec).unwrap();
        assert_eq!(result.missing_count(), 0);
        let first = result.points[0].values().unwrap()[0];
        for p in &result.points {
            let v = p.values().unwrap()[0];
            assert!((v - first).abs() <= 1e-12 * first.abs());
        }
    }

    #[test]
    fn sweep_is_deterministic() {
        let spec = SweepSpec {
            free: vec![
                AxisSpec::new(ParamKey::Temperature, 0.1, 2.0, 4, AxisScale::Log).unwrap(),
                AxisSpec::new(ParamKey::U, 0.1, 2.0, 3, AxisScale::Linear).unwrap(),
            ],
            fixed: fixed(CouplingKind::Udw),
            quantity: Quantity::Qfi,
        };
        let a = run_sweep(&spec).unwrap();
        let b = run_sweep(&spec).unwrap();
        for (x, y) in a.points.iter().zip(&b.points) {
            assert_eq!(x.values().unwrap(), y.values().unwrap());
        }
        assert_eq!(a.points.len(), 12);
        // row-major ordering
        assert_eq!(a.index(2, 1), 7);
    }

    #[test]
    fn sweep_records_failures_and_continues() {
        // gamma0 = 0 makes the steady state undefined for ratio_r rows at
        // tau > 0: the matrix is singular (H_TT = 0), flagged per point
        let mut fp = fixed(CouplingKind::Udw);
        fp.probe.lambda = 0.0;
        let spec = SweepSpec {
            free: vec![
                AxisSpec::new(ParamKey::Temperature, 0.1, 1.0, 3, AxisScale::Linear).unwrap(),
            ],
            fixed: fp,
            quantity: Quantity::RatioR,
        };
        let result = run_sweep(&spec).unwrap();
        assert_eq!(result.missing_count(), 3);
        for p in &result.points {
            assert!(matches!(p, PointOutcome::Missing(_)));
        }
    }

    #[test]
    fn refine_argmax_on_quadratic() {
        // synthetic check through a real sweepable quantity is overkill here;
        // drive the golden section directly with a shifted parabola in tau
        // via a sweep over a quantity that is concave in tau on this range
        let spec = SweepSpec {
            free: vec![AxisSpec::new(ParamKey::Tau, 0.1, 2000.0, 40, AxisScale::Log).unwrap()],
            fixed: fixed(CouplingKind::Udw),
            quantity: Quantity::Qfi,
        };
        let result = run_sweep(&spec).unwrap();
        let xs = result.axes[0].1.clone();
        let qs: Vec<f64> = result
            .points
            .iter()
            .map(|p| p.values().unwrap()[0])
            .collect();
        let bracket = grid_max_bracket(&xs, &qs).expect("interior maximum");
        let (x_opt, q_opt) = refine_argmax(&spec, ParamKey::Tau, bracket).unwrap();
        assert!(x_opt > bracket.0 && x_opt < bracket.2);
        assert!(q_opt >= qs.iter().cloned().fold(f64::MIN, f64::max) * (1.0 - 1e-12));

        // invalid bracket: endpoint above interior
        let bad = refine_argmax(
            &spec,
            ParamKey::Tau,
            (bracket.1, bracket.2, bracket.2 * 4.0),
        );
        assert!(bad.is_err());
    }

    #[test]
    fn trapping_on_synthetic_series() {
        let taus: Vec<f64> = (0..60).map(|i| 10f64.powf(i as f64 * 0.1)).collect();
        let constant = vec![3.5; 60];
        let report = trapping_detector(&taus, &constant, 10.0).unwrap();
        assert!(report.is_trapped);
        assert_eq!(report.plateau_value, 3.5);

        // decaying series: clearly not settled
        let decaying: Vec<f64> = taus.iter().map(|t| 1.0 / t.sqrt()).collect();
        let report = trapping_detector(&taus, &decaying, 10.0).unwrap();
        assert!(!report.is_trapped);

        // insufficient span
        let err = trapping_detector(&taus, &constant, 1e-4);
        assert!(matches!(err, Err(Error::InsufficientSpan(_))));
    }

    #[test]
    fn grid_bracket_rejects_boundary_maxima() {
        let xs = vec![1.0, 2.0, 3.0, 4.0];
        assert!(grid_max_bracket(&xs, &[4.0, 3.0, 2.0, 1.0]).is_none());
        assert!(grid_max_bracket(&xs, &[1.0, 2.0, 3.0, 4.0]).is_none());
        let b = grid_max_bracket(&xs, &[1.0, 5.0, 3.0, 1.0]).unwrap();
        assert_eq!(b, (1.0, 2.0, 3.0));
    }
}
