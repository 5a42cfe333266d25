//! CSV emitters. The sweep table is the canonical, byte-deterministic
//! artifact: fixed header, row-major record order, floats printed as the
//! shortest round-trip decimal, empty cells for absent values.

use std::fmt::Write as _;

use ptmcom_core::{OpaComparison, PhaseRegion, SweepQuantity, SweepRecord, SweepResult};

pub const SWEEP_HEADER: &str =
    "axis1,axis2,stable,e_ac,e_aB1,e_cB2,e_B1B2,e_aB2,e_cB1,intensity_c,branch_count";

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn sweep_row(rec: &SweepRecord) -> String {
    let ch = rec.channels;
    format!(
        "{},{},{},{},{},{},{},{},{},{},{}",
        rec.axis1,
        fmt_opt(rec.axis2),
        rec.stable,
        fmt_opt(ch.map(|c| c.e_ac)),
        fmt_opt(ch.map(|c| c.e_a_b1)),
        fmt_opt(ch.map(|c| c.e_c_b2)),
        fmt_opt(ch.map(|c| c.e_b1_b2)),
        fmt_opt(ch.map(|c| c.e_a_b2)),
        fmt_opt(ch.map(|c| c.e_c_b1)),
        fmt_opt(rec.intensity_c),
        rec.branch_count,
    )
}

/// Canonical sweep/stability table.
pub fn sweep_csv(result: &SweepResult) -> String {
    let mut out = String::with_capacity(64 * (result.records.len() + 1));
    out.push_str(SWEEP_HEADER);
    out.push('\n');
    for rec in &result.records {
        out.push_str(&sweep_row(rec));
        out.push('\n');
    }
    out
}

/// Two-mode spectrum table for exceptional-point scans.
pub fn eigen_csv(result: &SweepResult) -> String {
    debug_assert_eq!(result.quantity, SweepQuantity::Eigenvalues);
    let mut out = String::new();
    out.push_str(
        "axis1,re_lambda_plus,im_lambda_plus,re_lambda_minus,im_lambda_minus,discriminant,phase\n",
    );
    for rec in &result.records {
        let ph = rec.pt_phase.expect("eigenvalue sweep records carry a spectrum");
        let phase = match ph.phase {
            PhaseRegion::PreEp => "pre_ep",
            PhaseRegion::PostEp => "post_ep",
            PhaseRegion::AtEp => "at_ep",
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            rec.axis1,
            ph.lambda_plus.re,
            ph.lambda_plus.im,
            ph.lambda_minus.re,
            ph.lambda_minus.im,
            ph.discriminant,
            phase
        );
    }
    out
}

/// Paired comparison table for the two enhancement schemes.
pub fn comparison_csv(cmp: &OpaComparison) -> String {
    let mut out = String::new();
    out.push_str("axis1,pt_stable,pt_e_cB2,pt_e_B1B2,opa_stable,opa_e_cB2,opa_e_B1B2\n");
    for (pt, opa) in cmp.pt.records.iter().zip(&cmp.opa.records) {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            pt.axis1,
            pt.stable,
            fmt_opt(pt.channels.map(|c| c.e_c_b2)),
            fmt_opt(pt.channels.map(|c| c.e_b1_b2)),
            opa.stable,
            fmt_opt(opa.channels.map(|c| c.e_c_b2)),
            fmt_opt(opa.channels.map(|c| c.e_b1_b2)),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use ptmcom_core::{run_sweep_1d, run_sweep_2d, Parameter, SweepAxis, SystemParams};

    #[test]
    fn header_only_for_empty_records() {
        let base = SystemParams { kappa_c: 0.02, ..Default::default() };
        let ax = SweepAxis::new(Parameter::J1, 0.6, 0.6, 1);
        let mut res = run_sweep_1d(&base, &ax, SweepQuantity::Intensity).unwrap();
        res.records.clear();
        let csv = sweep_csv(&res);
        assert_eq!(csv, format!("{SWEEP_HEADER}\n"));
    }

    #[test]
    fn degenerate_grid_is_a_two_line_file() {
        let base = SystemParams { kappa_c: 0.02, ..Default::default() };
        let ax1 = SweepAxis::new(Parameter::J1, 0.6, 0.6, 1);
        let ax2 = SweepAxis::new(Parameter::J2, 0.2, 0.2, 1);
        let res = run_sweep_2d(&base, &ax1, &ax2, SweepQuantity::Channels).unwrap();
        let csv = sweep_csv(&res);
        assert_eq!(csv.lines().count(), 2);
        assert!(csv.starts_with(SWEEP_HEADER));
    }

    #[test]
    fn every_numeric_round_trips() {
        let base = SystemParams { kappa_c: 0.02, ..Default::default() };
        let ax1 = SweepAxis::new(Parameter::J1, 0.17, 1.3, 4);
        let ax2 = SweepAxis::new(Parameter::J2, 0.07, 0.41, 3);
        let res = run_sweep_2d(&base, &ax1, &ax2, SweepQuantity::Channels).unwrap();
        let csv = sweep_csv(&res);
        for line in csv.lines().skip(1) {
            for field in line.split(',') {
                if field.is_empty() || field == "true" || field == "false" {
                    continue;
                }
                let v: f64 = field.parse().expect("numeric field parses");
                assert_eq!(v.to_string(), field, "shortest round-trip violated for {field}");
            }
        }
    }

    #[test]
    fn unstable_rows_have_empty_channel_cells() {
        let base = SystemParams { j1: 0.0, j2: 0.0, g_m: 0.0, ..Default::default() };
        let ax = SweepAxis::new(Parameter::Drive, 0.0, 4.0, 2);
        let res = run_sweep_1d(&base, &ax, SweepQuantity::Channels).unwrap();
        let csv = sweep_csv(&res);
        let row = csv.lines().nth(1).unwrap();
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields[2], "false");
        for f in &fields[3..9] {
            assert!(f.is_empty(), "unstable row carries channel value: {row}");
        }
    }
}
