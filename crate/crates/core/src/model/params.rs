//! System parameters and derived scalars.
//!
//! All rates are dimensionless in units of the vibrational frequency; the
//! absolute vibrational frequency is carried only for the thermal phonon
//! occupation, and temperature is the only other absolute-unit input.

use crate::error::{Error, Result};

/// CODATA values (exact in the 2019 SI).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Reduced Planck constant, J s.
    pub hbar: f64,
    /// Boltzmann constant, J/K.
    pub k_boltzmann: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        PhysicalConstants { hbar: 1.054_571_817e-34, k_boltzmann: 1.380_649e-23 }
    }
}

/// Full parameter set for one run; the single source of truth for a point
/// evaluation. Immutable after validation.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemParams {
    /// Absolute vibrational angular frequency (rad/s), used only for the
    /// thermal occupation.
    pub omega_m_abs: f64,
    /// Passive-cavity loss rate (units of omega_m), > 0.
    pub kappa_a: f64,
    /// Active-cavity gain rate (units of omega_m). Positive means gain;
    /// negative values model a second lossy cavity in validation setups.
    pub kappa_c: f64,
    /// Bare detunings (units of omega_m).
    pub delta_a: f64,
    pub delta_c: f64,
    /// Vibrational damping rates (units of omega_m), > 0.
    pub gamma_1: f64,
    pub gamma_2: f64,
    /// Nonreciprocal inter-cavity couplings (units of omega_m).
    pub j1: f64,
    pub j2: f64,
    /// Single-molecule optomechanical coupling (units of omega_m).
    pub g_m: f64,
    /// Drive amplitudes (units of omega_m).
    pub drive_a: f64,
    pub drive_c: f64,
    /// Total molecule count and the size of the first collective partition.
    pub n_total: u32,
    pub m_partition: u32,
    /// Bath temperature in kelvin.
    pub temperature: f64,
    /// Parametric-drive variant of the active cavity.
    pub opa_enabled: bool,
    /// Parametric gain (units of omega_m).
    pub opa_gain: f64,
    /// Parametric pump phase (radians).
    pub opa_phase: f64,
}

impl Default for SystemParams {
    /// The documented baseline parameter point. Every CLI and config default
    /// equals this set.
    fn default() -> Self {
        SystemParams {
            omega_m_abs: 2.0 * std::f64::consts::PI * 30.0e12,
            kappa_a: 1.0,
            kappa_c: 0.1,
            delta_a: 1.0,
            delta_c: 1.0,
            gamma_1: 1e-4,
            gamma_2: 1e-4,
            j1: 0.6,
            j2: 0.2,
            g_m: 1e-3,
            drive_a: 16.0,
            drive_c: 16.0,
            n_total: 100,
            m_partition: 50,
            temperature: 312.0,
            opa_enabled: false,
            opa_gain: 0.0,
            opa_phase: 0.0,
        }
    }
}

impl SystemParams {
    pub fn validate(&self) -> Result<()> {
        let finite = [
            self.kappa_a,
            self.kappa_c,
            self.delta_a,
            self.delta_c,
            self.gamma_1,
            self.gamma_2,
            self.j1,
            self.j2,
            self.g_m,
            self.drive_a,
            self.drive_c,
            self.temperature,
            self.omega_m_abs,
            self.opa_gain,
            self.opa_phase,
        ];
        if !finite.iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidParams("all rates must be finite".into()));
        }
        if self.kappa_a <= 0.0 {
            return Err(Error::InvalidParams(format!("kappa_a must be > 0, got {}", self.kappa_a)));
        }
        if self.gamma_1 <= 0.0 || self.gamma_2 <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "gamma_1 and gamma_2 must be > 0, got {} and {}",
                self.gamma_1, self.gamma_2
            )));
        }
        if self.temperature < 0.0 {
            return Err(Error::InvalidParams(format!(
                "temperature must be >= 0, got {}",
                self.temperature
            )));
        }
        if self.omega_m_abs <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "omega_m_abs must be > 0, got {}",
                self.omega_m_abs
            )));
        }
        if self.m_partition < 1 || self.m_partition > self.n_total {
            return Err(Error::InvalidParams(format!(
                "partition must satisfy 1 <= m_partition <= n_total, got M={} N={}",
                self.m_partition, self.n_total
            )));
        }
        Ok(())
    }

    /// Collective couplings (g1, g2) = g_m (sqrt(M), sqrt(N - M)).
    pub fn collective_couplings(&self) -> (f64, f64) {
        let g1 = self.g_m * (self.m_partition as f64).sqrt();
        let g2 = self.g_m * ((self.n_total - self.m_partition) as f64).sqrt();
        (g1, g2)
    }

    /// Bose-Einstein occupation of the vibrational modes at `temperature`.
    ///
    /// Exactly zero at T = 0 (and for exponents large enough to overflow).
    pub fn thermal_occupation_with(&self, c: &PhysicalConstants) -> f64 {
        if self.temperature <= 0.0 {
            return 0.0;
        }
        let x = c.hbar * self.omega_m_abs / (c.k_boltzmann * self.temperature);
        let denom = x.exp_m1();
        if denom.is_finite() {
            1.0 / denom
        } else {
            0.0
        }
    }

    pub fn thermal_occupation(&self) -> f64 {
        self.thermal_occupation_with(&PhysicalConstants::default())
    }
}

/// A sweepable scalar or count field of [`SystemParams`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parameter {
    KappaA,
    KappaC,
    DeltaA,
    DeltaC,
    Gamma1,
    Gamma2,
    J1,
    J2,
    GM,
    DriveA,
    DriveC,
    /// Sets both drive amplitudes together (the figure-style single pump
    /// amplitude).
    Drive,
    NTotal,
    MPartition,
    TemperatureK,
    OpaGain,
    OpaPhase,
}

impl Parameter {
    pub const ALL: [Parameter; 17] = [
        Parameter::KappaA,
        Parameter::KappaC,
        Parameter::DeltaA,
        Parameter::DeltaC,
        Parameter::Gamma1,
        Parameter::Gamma2,
        Parameter::J1,
        Parameter::J2,
        Parameter::GM,
        Parameter::DriveA,
        Parameter::DriveC,
        Parameter::Drive,
        Parameter::NTotal,
        Parameter::MPartition,
        Parameter::TemperatureK,
        Parameter::OpaGain,
        Parameter::OpaPhase,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Parameter::KappaA => "kappa_a",
            Parameter::KappaC => "kappa_c",
            Parameter::DeltaA => "delta_a",
            Parameter::DeltaC => "delta_c",
            Parameter::Gamma1 => "gamma_1",
            Parameter::Gamma2 => "gamma_2",
            Parameter::J1 => "j1",
            Parameter::J2 => "j2",
            Parameter::GM => "g_m",
            Parameter::DriveA => "drive_a",
            Parameter::DriveC => "drive_c",
            Parameter::Drive => "drive",
            Parameter::NTotal => "n_total",
            Parameter::MPartition => "m_partition",
            Parameter::TemperatureK => "temperature_k",
            Parameter::OpaGain => "opa_gain",
            Parameter::OpaPhase => "opa_phase",
        }
    }

    pub fn parse(name: &str) -> Result<Parameter> {
        Parameter::ALL
            .iter()
            .copied()
            .find(|p| p.name() == name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown sweep parameter '{name}'")))
    }

    /// Integer-valued parameters sample rounded unique grid values.
    pub fn is_integer(&self) -> bool {
        matches!(self, Parameter::NTotal | Parameter::MPartition)
    }

    /// Return a copy of `base` with this parameter set to `value`.
    pub fn apply(&self, base: &SystemParams, value: f64) -> SystemParams {
        let mut p = base.clone();
        match self {
            Parameter::KappaA => p.kappa_a = value,
            Parameter::KappaC => p.kappa_c = value,
            Parameter::DeltaA => p.delta_a = value,
            Parameter::DeltaC => p.delta_c = value,
            Parameter::Gamma1 => p.gamma_1 = value,
            Parameter::Gamma2 => p.gamma_2 = value,
            Parameter::J1 => p.j1 = value,
            Parameter::J2 => p.j2 = value,
            Parameter::GM => p.g_m = value,
            Parameter::DriveA => p.drive_a = value,
            Parameter::DriveC => p.drive_c = value,
            Parameter::Drive => {
                p.drive_a = value;
                p.drive_c = value;
            }
            Parameter::NTotal => p.n_total = value.round().max(0.0) as u32,
            Parameter::MPartition => p.m_partition = value.round().max(0.0) as u32,
            Parameter::TemperatureK => p.temperature = value,
            Parameter::OpaGain => p.opa_gain = value,
            Parameter::OpaPhase => p.opa_phase = value,
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn collective_couplings_reference_point() {
        let p = SystemParams::default();
        let (g1, g2) = p.collective_couplings();
        // g_m sqrt(50) with g_m = 1e-3.
        assert!((g1 - 1e-3 * 50f64.sqrt()).abs() < 1e-18);
        assert!((g1 - g2).abs() < 1e-18);
        assert!((g1 - 7.0711e-3).abs() < 1e-6);
    }

    #[test]
    fn degenerate_partition_gives_zero_g2() {
        let p = SystemParams { m_partition: 100, ..Default::default() };
        let (g1, g2) = p.collective_couplings();
        assert_eq!(g2, 0.0);
        assert!((g1 - 1e-2).abs() < 1e-15);
    }

    #[test]
    fn thermal_occupation_zero_at_zero_kelvin() {
        let p = SystemParams { temperature: 0.0, ..Default::default() };
        assert_eq!(p.thermal_occupation(), 0.0);
    }

    #[test]
    fn thermal_occupation_reference_values() {
        let p312 = SystemParams::default();
        let n312 = p312.thermal_occupation();
        assert!((n312 - 1.00e-2).abs() / 1.00e-2 < 0.01, "n_th(312K) = {n312}");

        let p700 = SystemParams { temperature: 700.0, ..Default::default() };
        let n700 = p700.thermal_occupation();
        assert!((n700 - 0.1466).abs() / 0.1466 < 0.01, "n_th(700K) = {n700}");
    }

    #[test]
    fn thermal_occupation_monotone_in_temperature() {
        // Below ~50 K the occupation underflows f64 entirely; the strict
        // monotonicity statement applies to the representable range.
        let mut last = 0.0;
        for t in [50.0, 100.0, 312.0, 500.0, 700.0, 1000.0] {
            let p = SystemParams { temperature: t, ..Default::default() };
            let n = p.thermal_occupation();
            assert!(n > last, "n_th not increasing at T={t}");
            last = n;
        }
    }

    #[test]
    fn validation_rejects_bad_partition() {
        let p = SystemParams { m_partition: 150, ..Default::default() };
        assert!(p.validate().is_err());
        let p = SystemParams { m_partition: 0, ..Default::default() };
        assert!(p.validate().is_err());
    }

    #[test]
    fn parameter_names_round_trip() {
        for p in Parameter::ALL {
            assert_eq!(Parameter::parse(p.name()).unwrap(), p);
        }
        assert!(Parameter::parse("bogus").is_err());
    }

    #[test]
    fn drive_sets_both_amplitudes() {
        let base = SystemParams::default();
        let p = Parameter::Drive.apply(&base, 3.5);
        assert_eq!(p.drive_a, 3.5);
        assert_eq!(p.drive_c, 3.5);
    }
}
