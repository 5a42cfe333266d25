//! Deterministic parallel parameter sweeps over 1-D and 2-D grids.
//!
//! Cell evaluation is pure and embarrassingly parallel; records are written
//! by cell index, so output is identical for any worker count.

use rayon::prelude::*;

use crate::entanglement::{all_channels, ChannelSet};
use crate::error::{Error, Result};
use crate::model::{Parameter, SystemParams};
use crate::spectra::{select_operating_point, two_mode_eigenvalues, PtPhase};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisScale {
    Linear,
    Log,
}

/// One sweep axis over a [`SystemParams`] field.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepAxis {
    pub parameter: Parameter,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub scale: AxisScale,
}

/// Grid values realized from an axis, with integer collapsing bookkeeping.
#[derive(Debug, Clone)]
pub struct AxisValues {
    pub values: Vec<f64>,
    /// Number of duplicate integer samples that were collapsed.
    pub collapsed: usize,
}

impl SweepAxis {
    pub fn new(parameter: Parameter, start: f64, stop: f64, points: usize) -> Self {
        SweepAxis { parameter, start, stop, points, scale: AxisScale::Linear }
    }

    pub fn validate(&self) -> Result<()> {
        if self.points == 0 {
            return Err(Error::InvalidArgument("axis needs at least one point".into()));
        }
        if !self.start.is_finite() || !self.stop.is_finite() {
            return Err(Error::InvalidArgument("axis bounds must be finite".into()));
        }
        if self.points > 1 && self.start >= self.stop {
            return Err(Error::InvalidArgument(format!(
                "axis start must be below stop for multi-point axes, got [{}, {}]",
                self.start, self.stop
            )));
        }
        if self.scale == AxisScale::Log && self.start <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "log-scale axis needs start > 0, got {}",
                self.start
            )));
        }
        Ok(())
    }

    /// Realize the grid. Integer parameters are rounded to unique values.
    pub fn realize(&self) -> Result<AxisValues> {
        self.validate()?;
        let n = self.points;
        let mut values: Vec<f64> = if n == 1 {
            vec![self.start]
        } else {
            match self.scale {
                AxisScale::Linear => {
                    let step = (self.stop - self.start) / (n - 1) as f64;
                    (0..n).map(|i| self.start + step * i as f64).collect()
                }
                AxisScale::Log => {
                    let lstep = (self.stop / self.start).ln() / (n - 1) as f64;
                    (0..n).map(|i| self.start * (lstep * i as f64).exp()).collect()
                }
            }
        };
        let mut collapsed = 0;
        if self.parameter.is_integer() {
            let mut unique: Vec<f64> = Vec::with_capacity(values.len());
            for v in values.iter().map(|v| v.round()) {
                if unique.last() != Some(&v) {
                    unique.push(v);
                } else {
                    collapsed += 1;
                }
            }
            values = unique;
        }
        Ok(AxisValues { values, collapsed })
    }
}

/// What to compute per cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepQuantity {
    /// Full entanglement pipeline.
    Channels,
    /// Steady state + stability verdict only.
    Stability,
    /// Steady state only.
    Intensity,
    /// Closed-form two-mode optical spectrum (no steady-state solve).
    Eigenvalues,
}

impl SweepQuantity {
    pub fn name(&self) -> &'static str {
        match self {
            SweepQuantity::Channels => "channels",
            SweepQuantity::Stability => "stability",
            SweepQuantity::Intensity => "intensity",
            SweepQuantity::Eigenvalues => "eigenvalues",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "channels" => Ok(SweepQuantity::Channels),
            "stability" => Ok(SweepQuantity::Stability),
            "intensity" => Ok(SweepQuantity::Intensity),
            "eigenvalues" => Ok(SweepQuantity::Eigenvalues),
            other => Err(Error::InvalidArgument(format!("unknown sweep quantity '{other}'"))),
        }
    }
}

/// One grid cell.
#[derive(Debug, Clone)]
pub struct SweepRecord {
    pub axis1: f64,
    pub axis2: Option<f64>,
    pub stable: bool,
    pub marginal: bool,
    pub channels: Option<ChannelSet>,
    pub intensity_c: Option<f64>,
    pub branch_count: usize,
    pub pt_phase: Option<PtPhase>,
    pub diagnostics: String,
}

/// A realized sweep with its records in row-major order.
#[derive(Debug, Clone)]
pub struct SweepResult {
    pub quantity: SweepQuantity,
    pub axis1: SweepAxis,
    pub axis2: Option<SweepAxis>,
    pub values1: Vec<f64>,
    pub values2: Vec<f64>,
    pub records: Vec<SweepRecord>,
    pub warnings: Vec<String>,
}

impl SweepResult {
    pub fn record(&self, i1: usize, i2: usize) -> &SweepRecord {
        &self.records[i1 * self.values2.len().max(1) + i2]
    }
}

fn evaluate_cell(
    base: &SystemParams,
    quantity: SweepQuantity,
    a1: (Parameter, f64),
    a2: Option<(Parameter, f64)>,
) -> SweepRecord {
    let mut p = a1.0.apply(base, a1.1);
    if let Some((param2, v2)) = a2 {
        p = param2.apply(&p, v2);
    }
    let mut rec = SweepRecord {
        axis1: a1.1,
        axis2: a2.map(|(_, v)| v),
        stable: false,
        marginal: false,
        channels: None,
        intensity_c: None,
        branch_count: 0,
        pt_phase: None,
        diagnostics: String::new(),
    };

    if quantity == SweepQuantity::Eigenvalues {
        let ph = two_mode_eigenvalues(p.delta_c, p.kappa_a, p.kappa_c, p.j1, p.j2);
        let max_re = ph.lambda_plus.re.max(ph.lambda_minus.re);
        rec.stable = max_re < -crate::spectra::MARGINAL_BAND;
        rec.marginal = max_re.abs() < crate::spectra::MARGINAL_BAND;
        rec.pt_phase = Some(ph);
        return rec;
    }

    match quantity {
        SweepQuantity::Channels => match all_channels(&p) {
            Ok(report) => {
                rec.stable = report.verdict.stable;
                rec.marginal = report.verdict.marginal;
                rec.channels = report.channels;
                rec.intensity_c = Some(report.intensity_c);
                rec.branch_count = report.branch_count;
            }
            Err(e) => rec.diagnostics = e.to_string(),
        },
        SweepQuantity::Stability | SweepQuantity::Intensity => {
            match select_operating_point(&p) {
                Ok(point) => {
                    rec.stable = point.verdict.stable;
                    rec.marginal = point.verdict.marginal;
                    rec.intensity_c = Some(point.steady.intensity_c);
                    rec.branch_count = point.branch_count;
                }
                Err(e) => rec.diagnostics = e.to_string(),
            }
        }
        SweepQuantity::Eigenvalues => unreachable!(),
    }
    rec
}

/// Sweep one axis.
pub fn run_sweep_1d(
    base: &SystemParams,
    axis: &SweepAxis,
    quantity: SweepQuantity,
) -> Result<SweepResult> {
    let realized = axis.realize()?;
    let mut warnings = Vec::new();
    if realized.collapsed > 0 {
        warnings.push(format!(
            "axis '{}': collapsed {} duplicate integer samples",
            axis.parameter.name(),
            realized.collapsed
        ));
    }
    let records: Vec<SweepRecord> = realized
        .values
        .par_iter()
        .map(|&v| evaluate_cell(base, quantity, (axis.parameter, v), None))
        .collect();
    Ok(SweepResult {
        quantity,
        axis1: axis.clone(),
        axis2: None,
        values1: realized.values,
        values2: Vec::new(),
        records,
        warnings,
    })
}

/// Sweep two distinct parameters over a row-major grid.
pub fn run_sweep_2d(
    base: &SystemParams,
    axis1: &SweepAxis,
    axis2: &SweepAxis,
    quantity: SweepQuantity,
) -> Result<SweepResult> {
    if axis1.parameter == axis2.parameter {
        return Err(Error::InvalidArgument(format!(
            "sweep axes must target distinct parameters, both are '{}'",
            axis1.parameter.name()
        )));
    }
    let r1 = axis1.realize()?;
    let r2 = axis2.realize()?;
    let mut warnings = Vec::new();
    for (axis, r) in [(axis1, &r1), (axis2, &r2)] {
        if r.collapsed > 0 {
            warnings.push(format!(
                "axis '{}': collapsed {} duplicate integer samples",
                axis.parameter.name(),
                r.collapsed
            ));
        }
    }
    let pairs: Vec<(f64, f64)> = r1
        .values
        .iter()
        .flat_map(|&v1| r2.values.iter().map(move |&v2| (v1, v2)))
        .collect();
    let records: Vec<SweepRecord> = pairs
        .par_iter()
        .map(|&(v1, v2)| {
            evaluate_cell(base, quantity, (axis1.parameter, v1), Some((axis2.parameter, v2)))
        })
        .collect();
    Ok(SweepResult {
        quantity,
        axis1: axis1.clone(),
        axis2: Some(axis2.clone()),
        values1: r1.values,
        values2: r2.values,
        records,
        warnings,
    })
}

/// Paired drive sweeps: the gain-cavity arm against the parametric-drive arm.
#[derive(Debug, Clone)]
pub struct OpaComparison {
    pub pt: SweepResult,
    pub opa: SweepResult,
}

/// Run the same drive-amplitude sweep through both enhancement schemes.
///
/// The PT arm runs `base` as given (parametric drive off). The OPA arm
/// replaces the active cavity's gain by a loss of the passive cavity's
/// magnitude and enables the parametric drive with the gain/phase carried in
/// `base` (`opa_gain`, `opa_phase`).
pub fn opa_comparison(base: &SystemParams, drive_axis: &SweepAxis) -> Result<OpaComparison> {
    let mut pt_base = base.clone();
    pt_base.opa_enabled = false;
    let mut opa_base = base.clone();
    opa_base.opa_enabled = true;
    opa_base.kappa_c = -base.kappa_a;

    let pt = run_sweep_1d(&pt_base, drive_axis, SweepQuantity::Channels)?;
    let opa = run_sweep_1d(&opa_base, drive_axis, SweepQuantity::Channels)?;
    Ok(OpaComparison { pt, opa })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_validation() {
        let ax = SweepAxis::new(Parameter::J1, 0.0, 1.0, 0);
        assert!(ax.validate().is_err());
        let ax = SweepAxis::new(Parameter::J1, 1.0, 0.5, 5);
        assert!(ax.validate().is_err());
        let ax = SweepAxis { scale: AxisScale::Log, ..SweepAxis::new(Parameter::J1, 0.0, 1.0, 5) };
        assert!(ax.validate().is_err());
        let ax = SweepAxis::new(Parameter::J1, 0.5, 0.5, 1);
        assert!(ax.validate().is_ok());
    }

    #[test]
    fn linear_and_log_grids() {
        let ax = SweepAxis::new(Parameter::J1, 0.0, 1.0, 5);
        let v = ax.realize().unwrap().values;
        assert_eq!(v, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let ax = SweepAxis {
            scale: AxisScale::Log,
            ..SweepAxis::new(Parameter::TemperatureK, 1.0, 100.0, 3)
        };
        let v = ax.realize().unwrap().values;
        assert!((v[1] - 10.0).abs() < 1e-12);
    }

    #[test]
    fn integer_axis_collapses_duplicates() {
        let ax = SweepAxis::new(Parameter::NTotal, 100.0, 102.0, 5);
        let r = ax.realize().unwrap();
        assert_eq!(r.values, vec![100.0, 101.0, 102.0]);
        assert_eq!(r.collapsed, 2);
    }

    #[test]
    fn degenerate_grid_equals_point_evaluation() {
        let base = SystemParams { kappa_c: 0.02, ..Default::default() };
        let ax1 = SweepAxis::new(Parameter::J1, 0.6, 0.6, 1);
        let ax2 = SweepAxis::new(Parameter::J2, 0.2, 0.2, 1);
        let grid = run_sweep_2d(&base, &ax1, &ax2, SweepQuantity::Channels).unwrap();
        assert_eq!(grid.records.len(), 1);
        let direct = all_channels(&base).unwrap();
        let rec = &grid.records[0];
        assert_eq!(rec.stable, direct.verdict.stable);
        let (a, b) = (rec.channels.unwrap(), direct.channels.unwrap());
        assert_eq!(a.e_ac, b.e_ac);
        assert_eq!(a.e_b1_b2, b.e_b1_b2);
    }

    #[test]
    fn duplicate_axes_rejected() {
        let base = SystemParams::default();
        let ax = SweepAxis::new(Parameter::J1, 0.0, 1.0, 3);
        assert!(run_sweep_2d(&base, &ax, &ax, SweepQuantity::Stability).is_err());
    }

    #[test]
    fn unstable_cells_carry_no_channels() {
        let base = SystemParams::default();
        // Gain-only active cavity without couplings is unstable everywhere.
        let mut p = base;
        p.j1 = 0.0;
        p.j2 = 0.0;
        p.g_m = 0.0;
        let ax = SweepAxis::new(Parameter::Drive, 0.0, 8.0, 4);
        let res = run_sweep_1d(&p, &ax, SweepQuantity::Channels).unwrap();
        for rec in &res.records {
            assert!(!rec.stable);
            assert!(rec.channels.is_none());
        }
    }

    #[test]
    fn eigenvalue_sweep_reports_phases() {
        let base = SystemParams::default();
        let ax = SweepAxis::new(Parameter::J1, 0.0, 3.0, 7);
        let res = run_sweep_1d(&base, &ax, SweepQuantity::Eigenvalues).unwrap();
        assert_eq!(res.records.len(), 7);
        assert!(res.records.iter().all(|r| r.pt_phase.is_some()));
        // Real parts coalesce beyond the exceptional point.
        let last = res.records.last().unwrap().pt_phase.unwrap();
        assert!((last.lambda_plus.re - last.lambda_minus.re).abs() < 1e-12);
    }

    #[test]
    fn record_count_is_product_of_axis_lengths() {
        let base = SystemParams { kappa_c: 0.02, ..Default::default() };
        let ax1 = SweepAxis::new(Parameter::J1, 0.2, 1.0, 3);
        let ax2 = SweepAxis::new(Parameter::J2, 0.1, 0.4, 4);
        let grid = run_sweep_2d(&base, &ax1, &ax2, SweepQuantity::Intensity).unwrap();
        assert_eq!(grid.records.len(), 12);
        // Row-major order: axis2 varies fastest.
        assert_eq!(grid.records[0].axis1, 0.2);
        assert_eq!(grid.records[1].axis1, 0.2);
        assert!((grid.records[4].axis1 - 0.6).abs() < 1e-12);
        assert!((grid.record(1, 2).axis2.unwrap() - 0.3).abs() < 1e-12);
    }

    #[test]
    fn opa_comparison_at_zero_gain_is_degenerate() {
        // With zero parametric gain and a loss-matched active cavity the two
        // arms are the same model.
        let base = SystemParams {
            kappa_a: 0.3,
            kappa_c: -0.3,
            opa_gain: 0.0,
            opa_phase: 0.0,
            ..Default::default()
        };
        let ax = SweepAxis::new(Parameter::Drive, 2.0, 10.0, 3);
        let cmp = opa_comparison(&base, &ax).unwrap();
        for (a, b) in cmp.pt.records.iter().zip(&cmp.opa.records) {
            assert_eq!(a.stable, b.stable);
            if let (Some(x), Some(y)) = (a.channels, b.channels) {
                assert!((x.e_c_b2 - y.e_c_b2).abs() < 1e-9);
                assert!((x.e_b1_b2 - y.e_b1_b2).abs() < 1e-9);
            }
        }
    }
}
