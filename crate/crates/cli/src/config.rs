//! Run configuration: key=value config files, flag overrides, and the
//! round-trippable serialization of a resolved run.
//!
//! File format: one `key=value` per line, `#` starts a comment, blank lines
//! ignored. Flags always override file values. Every default equals the
//! library's baseline parameter point.

use std::fmt;

use ptmcom_core::{AxisScale, Parameter, SweepAxis, SweepQuantity, SystemParams};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Steady,
    StabilityMap,
    EpScan,
    Entangle,
    Sweep,
    CompareOpa,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Steady => "steady",
            Command::StabilityMap => "stability-map",
            Command::EpScan => "ep-scan",
            Command::Entangle => "entangle",
            Command::Sweep => "sweep",
            Command::CompareOpa => "compare-opa",
        }
    }

    pub fn parse(s: &str) -> CliResult<Command> {
        match s {
            "steady" => Ok(Command::Steady),
            "stability-map" => Ok(Command::StabilityMap),
            "ep-scan" => Ok(Command::EpScan),
            "entangle" => Ok(Command::Entangle),
            "sweep" => Ok(Command::Sweep),
            "compare-opa" => Ok(Command::CompareOpa),
            other => Err(CliError::Config(format!("unknown command '{other}'"))),
        }
    }
}

/// Which per-cell scalar a heatmap or line plot colors by.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelChoice {
    EAc,
    EAB1,
    ECB2,
    EB1B2,
    EAB2,
    ECB1,
    Intensity,
}

impl ChannelChoice {
    pub fn name(&self) -> &'static str {
        match self {
            ChannelChoice::EAc => "e_ac",
            ChannelChoice::EAB1 => "e_aB1",
            ChannelChoice::ECB2 => "e_cB2",
            ChannelChoice::EB1B2 => "e_B1B2",
            ChannelChoice::EAB2 => "e_aB2",
            ChannelChoice::ECB1 => "e_cB1",
            ChannelChoice::Intensity => "intensity",
        }
    }

    pub fn parse(s: &str) -> CliResult<ChannelChoice> {
        match s {
            "e_ac" => Ok(ChannelChoice::EAc),
            "e_aB1" => Ok(ChannelChoice::EAB1),
            "e_cB2" => Ok(ChannelChoice::ECB2),
            "e_B1B2" => Ok(ChannelChoice::EB1B2),
            "e_aB2" => Ok(ChannelChoice::EAB2),
            "e_cB1" => Ok(ChannelChoice::ECB1),
            "intensity" => Ok(ChannelChoice::Intensity),
            other => Err(CliError::Config(format!("unknown channel '{other}'"))),
        }
    }

    /// Extract the selected scalar from a sweep record, if present.
    pub fn extract(&self, rec: &ptmcom_core::SweepRecord) -> Option<f64> {
        match self {
            ChannelChoice::Intensity => rec.intensity_c,
            _ => rec.channels.map(|c| match self {
                ChannelChoice::EAc => c.e_ac,
                ChannelChoice::EAB1 => c.e_a_b1,
                ChannelChoice::ECB2 => c.e_c_b2,
                ChannelChoice::EB1B2 => c.e_b1_b2,
                ChannelChoice::EAB2 => c.e_a_b2,
                ChannelChoice::ECB1 => c.e_c_b1,
                ChannelChoice::Intensity => unreachable!(),
            }),
        }
    }
}

/// A fully resolved run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: SystemParams,
    pub command: Command,
    pub axis1: Option<SweepAxis>,
    pub axis2: Option<SweepAxis>,
    pub quantity: SweepQuantity,
    pub channel: ChannelChoice,
    pub output_path: Option<String>,
    pub emit_svg: bool,
    /// Worker threads for sweeps; 0 = auto.
    pub threads: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            params: SystemParams::default(),
            command: Command::Entangle,
            axis1: None,
            axis2: None,
            quantity: SweepQuantity::Channels,
            channel: ChannelChoice::EAc,
            output_path: None,
            emit_svg: false,
            threads: 0,
        }
    }
}

/// Flag-style overrides collected by the argument parser; `None` means the
/// flag was absent.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub command: Option<Command>,
    pub entries: Vec<(String, String)>,
}

/// Parse a config file body plus flag overrides into a validated RunConfig.
pub fn parse_config(file_body: Option<&str>, overrides: &Overrides) -> CliResult<RunConfig> {
    let mut cfg = RunConfig::default();
    let mut command_seen = false;

    if let Some(body) = file_body {
        for (idx, raw) in body.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Config(format!(
                    "line {line_no}: expected key=value, got '{line}'"
                )));
            };
            let key = key.trim();
            let value = value.trim();
            apply_key(&mut cfg, key, value, &mut command_seen).map_err(|e| match e {
                CliError::Config(msg) => CliError::Config(format!("line {line_no}, key '{key}': {msg}")),
                other => other,
            })?;
        }
    }

    for (key, value) in &overrides.entries {
        apply_key(&mut cfg, key, value, &mut command_seen)
            .map_err(|e| match e {
                CliError::Config(msg) => CliError::Config(format!("flag --{}: {msg}", key.replace('_', "-"))),
                other => other,
            })?;
    }
    if let Some(cmd) = overrides.command {
        cfg.command = cmd;
        command_seen = true;
    }
    if !command_seen {
        return Err(CliError::Config(
            "no command given (pass a subcommand or set command= in the config file)".into(),
        ));
    }

    cfg.params
        .validate()
        .map_err(|e| CliError::Config(format!("invalid parameter set: {e}")))?;
    validate_axes(&cfg)?;
    Ok(cfg)
}

fn validate_axes(cfg: &RunConfig) -> CliResult<()> {
    for ax in [&cfg.axis1, &cfg.axis2].into_iter().flatten() {
        ax.validate().map_err(|e| CliError::Config(e.to_string()))?;
    }
    if let (Some(a1), Some(a2)) = (&cfg.axis1, &cfg.axis2) {
        if a1.parameter == a2.parameter {
            return Err(CliError::Config(format!(
                "axis1 and axis2 both target '{}'",
                a1.parameter.name()
            )));
        }
    }
    match cfg.command {
        Command::StabilityMap => {
            if cfg.axis1.is_none() || cfg.axis2.is_none() {
                return Err(CliError::Config("stability-map needs axis1 and axis2".into()));
            }
        }
        Command::Sweep => {
            if cfg.axis1.is_none() {
                return Err(CliError::Config("sweep needs at least axis1".into()));
            }
        }
        _ => {}
    }
    if cfg.emit_svg && cfg.output_path.is_none() {
        return Err(CliError::Config("--svg needs an output path to derive the SVG name".into()));
    }
    Ok(())
}

fn parse_f64(value: &str) -> CliResult<f64> {
    let v: f64 = value
        .parse()
        .map_err(|_| CliError::Config(format!("malformed number '{value}'")))?;
    if !v.is_finite() {
        return Err(CliError::Config(format!("non-finite value '{value}'")));
    }
    Ok(v)
}

fn parse_count(value: &str) -> CliResult<u32> {
    value.parse().map_err(|_| CliError::Config(format!("malformed count '{value}'")))
}

fn parse_bool(value: &str) -> CliResult<bool> {
    match value {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        other => Err(CliError::Config(format!("malformed boolean '{other}'"))),
    }
}

fn apply_key(
    cfg: &mut RunConfig,
    key: &str,
    value: &str,
    command_seen: &mut bool,
) -> CliResult<()> {
    let p = &mut cfg.params;
    match key {
        "kappa_a" => p.kappa_a = parse_f64(value)?,
        "kappa_c" => p.kappa_c = parse_f64(value)?,
        "delta_a" => p.delta_a = parse_f64(value)?,
        "delta_c" => p.delta_c = parse_f64(value)?,
        "gamma_1" => p.gamma_1 = parse_f64(value)?,
        "gamma_2" => p.gamma_2 = parse_f64(value)?,
        "j1" => p.j1 = parse_f64(value)?,
        "j2" => p.j2 = parse_f64(value)?,
        "g_m" => p.g_m = parse_f64(value)?,
        "drive_a" => p.drive_a = parse_f64(value)?,
        "drive_c" => p.drive_c = parse_f64(value)?,
        "drive" => {
            let v = parse_f64(value)?;
            p.drive_a = v;
            p.drive_c = v;
        }
        "n_total" => p.n_total = parse_count(value)?,
        "m_partition" => p.m_partition = parse_count(value)?,
        "temperature_k" => p.temperature = parse_f64(value)?,
        "omega_m_abs" => p.omega_m_abs = parse_f64(value)?,
        "opa_enabled" => p.opa_enabled = parse_bool(value)?,
        "opa_gain" => p.opa_gain = parse_f64(value)?,
        "opa_phase" => p.opa_phase = parse_f64(value)?,
        "command" => {
            cfg.command = Command::parse(value)?;
            *command_seen = true;
        }
        "axis1" => cfg.axis1 = Some(parse_axis(value)?),
        "axis2" => cfg.axis2 = Some(parse_axis(value)?),
        "quantity" => {
            cfg.quantity = SweepQuantity::parse(value).map_err(|e| CliError::Config(e.to_string()))?
        }
        "channel" => cfg.channel = ChannelChoice::parse(value)?,
        "output" => cfg.output_path = Some(value.to_string()),
        "emit_svg" => cfg.emit_svg = parse_bool(value)?,
        "threads" => {
            cfg.threads =
                value.parse().map_err(|_| CliError::Config(format!("malformed count '{value}'")))?
        }
        other => return Err(CliError::Config(format!("unknown key '{other}'"))),
    }
    Ok(())
}

/// Axis syntax: `param:start:stop:points[:linear|log]`.
pub fn parse_axis(spec: &str) -> CliResult<SweepAxis> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 4 && parts.len() != 5 {
        return Err(CliError::Config(format!(
            "axis '{spec}' must be param:start:stop:points[:scale]"
        )));
    }
    let parameter =
        Parameter::parse(parts[0]).map_err(|e| CliError::Config(e.to_string()))?;
    let start = parse_f64(parts[1])?;
    let stop = parse_f64(parts[2])?;
    let points: usize =
        parts[3].parse().map_err(|_| CliError::Config(format!("malformed count '{}'", parts[3])))?;
    let scale = match parts.get(4) {
        None | Some(&"linear") => AxisScale::Linear,
        Some(&"log") => AxisScale::Log,
        Some(other) => {
            return Err(CliError::Config(format!("unknown axis scale '{other}'")));
        }
    };
    Ok(SweepAxis { parameter, start, stop, points, scale })
}

fn axis_to_string(ax: &SweepAxis) -> String {
    format!(
        "{}:{}:{}:{}:{}",
        ax.parameter.name(),
        ax.start,
        ax.stop,
        ax.points,
        match ax.scale {
            AxisScale::Linear => "linear",
            AxisScale::Log => "log",
        }
    )
}

impl RunConfig {
    /// Serialize to the config-file format; `parse_config` on the result
    /// reproduces this configuration exactly.
    pub fn to_config_string(&self) -> String {
        let mut out = String::new();
        let p = &self.params;
        let mut push = |k: &str, v: fmt::Arguments| out.push_str(&format!("{k}={v}\n"));
        push("command", format_args!("{}", self.command.name()));
        push("kappa_a", format_args!("{}", p.kappa_a));
        push("kappa_c", format_args!("{}", p.kappa_c));
        push("delta_a", format_args!("{}", p.delta_a));
        push("delta_c", format_args!("{}", p.delta_c));
        push("gamma_1", format_args!("{}", p.gamma_1));
        push("gamma_2", format_args!("{}", p.gamma_2));
        push("j1", format_args!("{}", p.j1));
        push("j2", format_args!("{}", p.j2));
        push("g_m", format_args!("{}", p.g_m));
        push("drive_a", format_args!("{}", p.drive_a));
        push("drive_c", format_args!("{}", p.drive_c));
        push("n_total", format_args!("{}", p.n_total));
        push("m_partition", format_args!("{}", p.m_partition));
        push("temperature_k", format_args!("{}", p.temperature));
        push("omega_m_abs", format_args!("{}", p.omega_m_abs));
        push("opa_enabled", format_args!("{}", p.opa_enabled));
        push("opa_gain", format_args!("{}", p.opa_gain));
        push("opa_phase", format_args!("{}", p.opa_phase));
        if let Some(ax) = &self.axis1 {
            push("axis1", format_args!("{}", axis_to_string(ax)));
        }
        if let Some(ax) = &self.axis2 {
            push("axis2", format_args!("{}", axis_to_string(ax)));
        }
        push("quantity", format_args!("{}", self.quantity.name()));
        push("channel", format_args!("{}", self.channel.name()));
        if let Some(path) = &self.output_path {
            push("output", format_args!("{}", path));
        }
        push("emit_svg", format_args!("{}", self.emit_svg));
        push("threads", format_args!("{}", self.threads));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_no_flags_yields_baseline_defaults() {
        let overrides =
            Overrides { command: Some(Command::Entangle), entries: Vec::new() };
        let cfg = parse_config(Some(""), &overrides).unwrap();
        let p = &cfg.params;
        assert_eq!(p.kappa_a, 1.0);
        assert_eq!(p.kappa_c, 0.1);
        assert_eq!(p.j1, 0.6);
        assert_eq!(p.j2, 0.2);
        assert_eq!(p.g_m, 1e-3);
        assert_eq!(p.n_total, 100);
        assert_eq!(p.m_partition, 50);
        assert_eq!(p.drive_a, 16.0);
        assert_eq!(p.drive_c, 16.0);
        assert_eq!(p.temperature, 312.0);
        assert_eq!(p.gamma_1, 1e-4);
        assert_eq!(p.delta_a, 1.0);
        assert_eq!(p.delta_c, 1.0);
    }

    #[test]
    fn flags_override_file_values() {
        let overrides = Overrides {
            command: Some(Command::Sweep),
            entries: vec![
                ("j1".into(), "0.8".into()),
                ("axis1".into(), "j2:0:1:11".into()),
            ],
        };
        let cfg = parse_config(Some("j1 = 0.6\naxis1=j1:0:1:5\n"), &overrides).unwrap();
        assert_eq!(cfg.params.j1, 0.8);
        assert_eq!(cfg.axis1.as_ref().unwrap().parameter, Parameter::J2);
        assert_eq!(cfg.axis1.as_ref().unwrap().points, 11);
    }

    #[test]
    fn unknown_key_names_key_and_line() {
        let overrides = Overrides { command: Some(Command::Steady), entries: Vec::new() };
        let err = parse_config(Some("kappa_a=1\nbogus=2\n"), &overrides).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 2"), "{msg}");
        assert!(msg.contains("bogus"), "{msg}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn malformed_number_is_config_error() {
        let overrides = Overrides { command: Some(Command::Steady), entries: Vec::new() };
        let err = parse_config(Some("kappa_a=abc\n"), &overrides).unwrap_err();
        assert!(err.to_string().contains("kappa_a"));
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn partition_invariant_violation_rejected() {
        let overrides = Overrides {
            command: Some(Command::Steady),
            entries: vec![("m_partition".into(), "150".into())],
        };
        let err = parse_config(Some(""), &overrides).unwrap_err();
        assert!(err.to_string().contains("m_partition"));
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let body = "# comment\n\n  kappa_a = 0.9 # trailing\n";
        let overrides = Overrides { command: Some(Command::Steady), entries: Vec::new() };
        let cfg = parse_config(Some(body), &overrides).unwrap();
        assert_eq!(cfg.params.kappa_a, 0.9);
    }

    #[test]
    fn drive_sets_both_amplitudes() {
        let overrides = Overrides { command: Some(Command::Steady), entries: Vec::new() };
        let cfg = parse_config(Some("drive=3.5\n"), &overrides).unwrap();
        assert_eq!(cfg.params.drive_a, 3.5);
        assert_eq!(cfg.params.drive_c, 3.5);
    }

    #[test]
    fn round_trip_reproduces_config_exactly() {
        let overrides = Overrides {
            command: Some(Command::Sweep),
            entries: vec![
                ("j1".into(), "0.12345678901234567".into()),
                ("temperature_k".into(), "512.25".into()),
                ("axis1".into(), "drive:0.5:16:41:log".into()),
                ("axis2".into(), "n_total:50:250:21".into()),
                ("quantity".into(), "stability".into()),
                ("channel".into(), "e_B1B2".into()),
                ("output".into(), "out/data.csv".into()),
                ("emit_svg".into(), "true".into()),
                ("threads".into(), "4".into()),
            ],
        };
        let cfg = parse_config(None, &overrides).unwrap();
        let emitted = cfg.to_config_string();
        let reparsed =
            parse_config(Some(&emitted), &Overrides::default()).unwrap();
        assert_eq!(cfg, reparsed);
    }

    #[test]
    fn missing_command_is_config_error() {
        let err = parse_config(Some("kappa_a=1\n"), &Overrides::default()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn duplicate_axis_parameters_rejected() {
        let overrides = Overrides {
            command: Some(Command::StabilityMap),
            entries: vec![
                ("axis1".into(), "j1:0:1:5".into()),
                ("axis2".into(), "j1:0:2:5".into()),
            ],
        };
        let err = parse_config(None, &overrides).unwrap_err();
        assert!(err.to_string().contains("axis"));
    }

    #[test]
    fn axis_syntax_errors() {
        assert!(parse_axis("j1:0:1").is_err());
        assert!(parse_axis("nope:0:1:5").is_err());
        assert!(parse_axis("j1:0:1:5:cubic").is_err());
        assert!(parse_axis("j1:a:1:5").is_err());
        let ax = parse_axis("temperature_k:100:700:11:log").unwrap();
        assert_eq!(ax.scale, AxisScale::Log);
    }
}
