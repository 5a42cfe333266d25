use clap::{Parser, Subcommand};

use ptmcom_cli::{parse_config, run, CliError, Command, Overrides};

/// Steady states, stability maps, exceptional points, and entanglement
/// channels of a gain-loss double-cavity molecular optomechanical model.
///
/// All rates are in units of the vibrational frequency; temperature is in
/// kelvin. Defaults reproduce the documented baseline parameter point.
#[derive(Parser, Debug)]
#[command(name = "ptmcom", version, arg_required_else_help = true)]
struct Cli {
    /// Key=value config file; flags override file values.
    #[arg(long, global = true)]
    config: Option<std::path::PathBuf>,

    #[arg(long, global = true)]
    kappa_a: Option<f64>,
    #[arg(long, global = true)]
    kappa_c: Option<f64>,
    #[arg(long, global = true)]
    delta_a: Option<f64>,
    #[arg(long, global = true)]
    delta_c: Option<f64>,
    #[arg(long, global = true)]
    gamma_1: Option<f64>,
    #[arg(long, global = true)]
    gamma_2: Option<f64>,
    #[arg(long, global = true)]
    j1: Option<f64>,
    #[arg(long, global = true)]
    j2: Option<f64>,
    #[arg(long, global = true)]
    g_m: Option<f64>,
    #[arg(long, global = true)]
    drive_a: Option<f64>,
    #[arg(long, global = true)]
    drive_c: Option<f64>,
    /// Set both drive amplitudes at once.
    #[arg(long, global = true)]
    drive: Option<f64>,
    #[arg(long, global = true)]
    n_total: Option<u32>,
    #[arg(long, global = true)]
    m_partition: Option<u32>,
    /// Bath temperature in kelvin.
    #[arg(long, global = true)]
    temperature_k: Option<f64>,
    /// Absolute vibrational angular frequency in rad/s.
    #[arg(long, global = true)]
    omega_m_abs: Option<f64>,
    #[arg(long, global = true)]
    opa_enabled: Option<bool>,
    #[arg(long, global = true)]
    opa_gain: Option<f64>,
    #[arg(long, global = true)]
    opa_phase: Option<f64>,

    /// Sweep axis, `param:start:stop:points[:linear|log]`.
    #[arg(long, global = true)]
    axis1: Option<String>,
    #[arg(long, global = true)]
    axis2: Option<String>,
    /// Per-cell quantity: channels, stability, intensity, eigenvalues.
    #[arg(long, global = true)]
    quantity: Option<String>,
    /// Scalar plotted by SVG emitters: e_ac, e_aB1, e_cB2, e_B1B2, e_aB2,
    /// e_cB1, intensity.
    #[arg(long, global = true)]
    channel: Option<String>,
    /// Output file; tables go to stdout when absent.
    #[arg(short, long, global = true)]
    output: Option<String>,
    /// Also write an SVG plot next to the output file.
    #[arg(long, global = true)]
    svg: bool,
    /// Worker threads for sweeps (0 = auto; PTMCOM_THREADS is the fallback).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Option<CliCommand>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum CliCommand {
    /// Solve and classify the mean-field steady-state branches.
    Steady,
    /// Boolean stability map over two parameter axes.
    StabilityMap,
    /// Two-mode spectrum along one axis plus the exceptional-point location.
    EpScan,
    /// Stability verdict and the six entanglement channels at one point.
    Entangle,
    /// 1-D or 2-D parameter sweep.
    Sweep,
    /// Drive sweep through the gain-loss and parametric-drive schemes.
    CompareOpa,
}

impl From<CliCommand> for Command {
    fn from(c: CliCommand) -> Command {
        match c {
            CliCommand::Steady => Command::Steady,
            CliCommand::StabilityMap => Command::StabilityMap,
            CliCommand::EpScan => Command::EpScan,
            CliCommand::Entangle => Command::Entangle,
            CliCommand::Sweep => Command::Sweep,
            CliCommand::CompareOpa => Command::CompareOpa,
        }
    }
}

fn overrides_from_cli(cli: &Cli) -> Overrides {
    let mut entries: Vec<(String, String)> = Vec::new();
    let mut push_f64 = |k: &str, v: Option<f64>| {
        if let Some(x) = v {
            entries.push((k.to_string(), x.to_string()));
        }
    };
    push_f64("kappa_a", cli.kappa_a);
    push_f64("kappa_c", cli.kappa_c);
    push_f64("delta_a", cli.delta_a);
    push_f64("delta_c", cli.delta_c);
    push_f64("gamma_1", cli.gamma_1);
    push_f64("gamma_2", cli.gamma_2);
    push_f64("j1", cli.j1);
    push_f64("j2", cli.j2);
    push_f64("g_m", cli.g_m);
    push_f64("drive_a", cli.drive_a);
    push_f64("drive_c", cli.drive_c);
    push_f64("drive", cli.drive);
    push_f64("temperature_k", cli.temperature_k);
    push_f64("omega_m_abs", cli.omega_m_abs);
    push_f64("opa_gain", cli.opa_gain);
    push_f64("opa_phase", cli.opa_phase);
    if let Some(v) = cli.n_total {
        entries.push(("n_total".into(), v.to_string()));
    }
    if let Some(v) = cli.m_partition {
        entries.push(("m_partition".into(), v.to_string()));
    }
    if let Some(v) = cli.opa_enabled {
        entries.push(("opa_enabled".into(), v.to_string()));
    }
    if let Some(v) = &cli.axis1 {
        entries.push(("axis1".into(), v.clone()));
    }
    if let Some(v) = &cli.axis2 {
        entries.push(("axis2".into(), v.clone()));
    }
    if let Some(v) = &cli.quantity {
        entries.push(("quantity".into(), v.clone()));
    }
    if let Some(v) = &cli.channel {
        entries.push(("channel".into(), v.clone()));
    }
    if let Some(v) = &cli.output {
        entries.push(("output".into(), v.clone()));
    }
    if cli.svg {
        entries.push(("emit_svg".into(), "true".into()));
    }
    if let Some(v) = cli.threads {
        entries.push(("threads".into(), v.to_string()));
    }
    Overrides { command: cli.command.map(Command::from), entries }
}

fn real_main() -> Result<(), CliError> {
    let cli = Cli::parse();
    let file_body = match &cli.config {
        Some(path) => Some(
            std::fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("cannot read config '{}': {e}", path.display())))?,
        ),
        None => None,
    };
    let overrides = overrides_from_cli(&cli);
    let cfg = parse_config(file_body.as_deref(), &overrides)?;
    run::run(&cfg)
}

fn main() {
    if let Err(e) = real_main() {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
