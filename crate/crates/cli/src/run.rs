//! Subcommand dispatch: orchestrates the library, writes tables and plots.
//!
//! Orchestration is single-threaded; sweeps parallelize internally through
//! the worker pool configured here.

use std::io::Write as _;
use std::path::{Path, PathBuf};

use ptmcom_core::{
    all_channels, build_linearized, exceptional_point_j1, full_stability, opa_comparison,
    run_sweep_1d, run_sweep_2d, solve_steady_state_opa, solve_steady_states, Parameter, SweepAxis,
    SweepQuantity, SweepResult,
};

use crate::config::{ChannelChoice, Command, RunConfig};
use crate::csv;
use crate::error::{CliError, CliResult};
use crate::svg;

/// Worker-thread resolution: explicit setting, then PTMCOM_THREADS, then auto.
pub fn resolve_threads(configured: usize) -> usize {
    if configured > 0 {
        return configured;
    }
    std::env::var("PTMCOM_THREADS").ok().and_then(|v| v.parse().ok()).unwrap_or(0)
}

pub fn run(cfg: &RunConfig) -> CliResult<()> {
    let threads = resolve_threads(cfg.threads);
    if threads > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| CliError::Config(format!("cannot build a {threads}-thread pool: {e}")))?;
        pool.install(|| dispatch(cfg))
    } else {
        dispatch(cfg)
    }
}

fn dispatch(cfg: &RunConfig) -> CliResult<()> {
    match cfg.command {
        Command::Steady => cmd_steady(cfg),
        Command::EpScan => cmd_ep_scan(cfg),
        Command::Entangle => cmd_entangle(cfg),
        Command::Sweep => cmd_sweep(cfg),
        Command::StabilityMap => cmd_stability_map(cfg),
        Command::CompareOpa => cmd_compare_opa(cfg),
    }
}

fn write_output(path: &str, body: &str) -> CliResult<()> {
    let mut f = std::fs::File::create(path)
        .map_err(|e| CliError::Io(format!("cannot create '{path}': {e}")))?;
    f.write_all(body.as_bytes())
        .map_err(|e| CliError::Io(format!("cannot write '{path}': {e}")))?;
    Ok(())
}

fn svg_path(output: &str) -> PathBuf {
    Path::new(output).with_extension("svg")
}

fn emit_table(cfg: &RunConfig, body: &str) -> CliResult<()> {
    match &cfg.output_path {
        Some(path) => {
            write_output(path, body)?;
            println!("wrote {path}");
            Ok(())
        }
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn report_warnings(result: &SweepResult) {
    for w in &result.warnings {
        eprintln!("warning: {w}");
    }
}

fn cmd_steady(cfg: &RunConfig) -> CliResult<()> {
    let p = &cfg.params;
    let branches =
        if p.opa_enabled { solve_steady_state_opa(p)? } else { solve_steady_states(p)? };
    let mut body = String::from(
        "branch,intensity_c,effective_detuning_c,re_alpha_c,im_alpha_c,re_alpha_a,im_alpha_a,stable,max_real_part,residual\n",
    );
    println!("{} steady-state branch(es):", branches.len());
    for ss in &branches {
        let ls = build_linearized(p, ss)?;
        let verdict = full_stability(&ls)?;
        println!(
            "  {:<7} I_c = {:<12.6} detuning = {:<10.6} stable = {:<5} max Re = {:.3e}",
            ss.branch.label(),
            ss.intensity_c,
            ss.effective_detuning_c,
            verdict.stable,
            verdict.max_real_part
        );
        body.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            ss.branch.label(),
            ss.intensity_c,
            ss.effective_detuning_c,
            ss.alpha_c.re,
            ss.alpha_c.im,
            ss.alpha_a.re,
            ss.alpha_a.im,
            verdict.stable,
            verdict.max_real_part,
            ss.residual
        ));
    }
    if let Some(path) = &cfg.output_path {
        write_output(path, &body)?;
        println!("wrote {path}");
    }
    Ok(())
}

fn cmd_ep_scan(cfg: &RunConfig) -> CliResult<()> {
    let p = &cfg.params;
    let axis = cfg
        .axis1
        .clone()
        .unwrap_or_else(|| SweepAxis::new(Parameter::J1, 0.0, 3.0, 301));
    let result = run_sweep_1d(p, &axis, SweepQuantity::Eigenvalues)?;
    report_warnings(&result);
    match exceptional_point_j1(p.kappa_a, p.kappa_c, p.j2) {
        Ok(ep) => println!("exceptional point: j1 = {ep} (kappa_a = {}, kappa_c = {}, j2 = {})", p.kappa_a, p.kappa_c, p.j2),
        Err(e) => println!("exceptional point: none ({e})"),
    }
    emit_table(cfg, &csv::eigen_csv(&result))?;
    if cfg.emit_svg {
        let path = svg_path(cfg.output_path.as_ref().expect("validated"));
        write_output(path.to_str().unwrap(), &svg::line_plot_svg(&result, cfg.channel)?)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn cmd_entangle(cfg: &RunConfig) -> CliResult<()> {
    let p = &cfg.params;
    let report = all_channels(p)?;
    println!(
        "stability: stable = {}, max Re = {:.6e}, branches = {}",
        report.verdict.stable, report.verdict.max_real_part, report.branch_count
    );
    println!("intensity_c = {}", report.intensity_c);
    match &report.channels {
        Some(ch) => {
            println!("e_ac   = {}", ch.e_ac);
            println!("e_aB1  = {}", ch.e_a_b1);
            println!("e_cB2  = {}", ch.e_c_b2);
            println!("e_B1B2 = {}", ch.e_b1_b2);
            println!("e_aB2  = {}", ch.e_a_b2);
            println!("e_cB1  = {}", ch.e_c_b1);
            if let Some(d) = report.physicality_deficit {
                println!("uncertainty-bound deficit: {d:.3e} (negative means the asymmetric-coupling model is non-positive here)");
            }
        }
        None => println!("unstable operating point: no channels"),
    }
    if cfg.output_path.is_some() {
        // Degenerate one-cell sweep over the current drive keeps the output
        // in the canonical table schema.
        let axis = SweepAxis::new(Parameter::Drive, p.drive_c, p.drive_c, 1);
        let result = run_sweep_1d(p, &axis, SweepQuantity::Channels)?;
        emit_table(cfg, &csv::sweep_csv(&result))?;
    }
    Ok(())
}

fn cmd_sweep(cfg: &RunConfig) -> CliResult<()> {
    let axis1 = cfg.axis1.as_ref().expect("validated");
    let result = match &cfg.axis2 {
        Some(axis2) => {
            if cfg.quantity == SweepQuantity::Eigenvalues {
                return Err(CliError::Config(
                    "eigenvalue sweeps are 1-D; drop axis2 or change --quantity".into(),
                ));
            }
            run_sweep_2d(&cfg.params, axis1, axis2, cfg.quantity)?
        }
        None => run_sweep_1d(&cfg.params, axis1, cfg.quantity)?,
    };
    report_warnings(&result);
    let stable = result.records.iter().filter(|r| r.stable).count();
    eprintln!("{} cells, {} stable", result.records.len(), stable);

    let table = if cfg.quantity == SweepQuantity::Eigenvalues {
        csv::eigen_csv(&result)
    } else {
        csv::sweep_csv(&result)
    };
    emit_table(cfg, &table)?;

    if cfg.emit_svg {
        let path = svg_path(cfg.output_path.as_ref().expect("validated"));
        let body = if result.axis2.is_some() {
            svg::heatmap_svg(&result, cfg.channel)?
        } else {
            svg::line_plot_svg(&result, cfg.channel)?
        };
        write_output(path.to_str().unwrap(), &body)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn cmd_stability_map(cfg: &RunConfig) -> CliResult<()> {
    let axis1 = cfg.axis1.as_ref().expect("validated");
    let axis2 = cfg.axis2.as_ref().expect("validated");
    let result = run_sweep_2d(&cfg.params, axis1, axis2, SweepQuantity::Stability)?;
    report_warnings(&result);
    let stable = result.records.iter().filter(|r| r.stable).count();
    eprintln!("{} cells, {} stable", result.records.len(), stable);
    emit_table(cfg, &csv::sweep_csv(&result))?;
    if cfg.emit_svg {
        let path = svg_path(cfg.output_path.as_ref().expect("validated"));
        write_output(
            path.to_str().unwrap(),
            &svg::heatmap_svg(&result, ChannelChoice::Intensity)?,
        )?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn cmd_compare_opa(cfg: &RunConfig) -> CliResult<()> {
    let axis = cfg
        .axis1
        .clone()
        .unwrap_or_else(|| SweepAxis::new(Parameter::Drive, 2.0, 16.0, 15));
    let cmp = opa_comparison(&cfg.params, &axis)?;
    report_warnings(&cmp.pt);
    report_warnings(&cmp.opa);
    let max_of = |res: &SweepResult, f: fn(&ptmcom_core::ChannelSet) -> f64| -> f64 {
        res.records
            .iter()
            .filter_map(|r| r.channels.as_ref().map(f))
            .fold(f64::NEG_INFINITY, f64::max)
    };
    println!(
        "peak e_cB2: gain-loss arm {} vs parametric arm {}",
        max_of(&cmp.pt, |c| c.e_c_b2),
        max_of(&cmp.opa, |c| c.e_c_b2)
    );
    println!(
        "peak e_B1B2: gain-loss arm {} vs parametric arm {}",
        max_of(&cmp.pt, |c| c.e_b1_b2),
        max_of(&cmp.opa, |c| c.e_b1_b2)
    );
    emit_table(cfg, &csv::comparison_csv(&cmp))
}
