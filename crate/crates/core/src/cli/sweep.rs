use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::Result;
use crate::geometry::{germ_invariants, invariant_report, Method};
use crate::germs::FrontalNormalForm;
use crate::numeric::linspace;
use crate::scalar::Scalar;

pub const CSV_HEADER: &str = "s_tilde,u_root,label,r_b,r_c,kappa_g_abs,kappa_n,method_rb,method_rc";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepOptions {
    pub s_min: f64,
    pub s_max: f64,
    pub count: usize,
}

/// One `S2` point of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub s_tilde: f64,
    pub u_root: f64,
    pub label: String,
    pub r_b: f64,
    pub r_c: f64,
    pub kappa_g_abs: Option<f64>,
    pub kappa_n: Option<f64>,
    pub method_rb: Method,
    pub method_rc: Method,
}

/// Rows ordered by `s~`, then by root. Samples run on the current rayon pool;
/// the output order never depends on scheduling.
pub fn sweep_rows<S: Scalar>(fnf: &FrontalNormalForm<S>, opts: &SweepOptions) -> Result<Vec<SweepRow>> {
    if opts.count == 0 {
        return Ok(Vec::new());
    }
    let germ = germ_invariants(fnf)?;
    let samples = linspace(opts.s_min, opts.s_max, opts.count);
    let per_sample: Vec<Vec<SweepRow>> = samples
        .par_iter()
        .map(|&st| {
            let reports = invariant_report(fnf, &germ, st)?;
            Ok(reports
                .into_iter()
                .map(|r| SweepRow {
                    s_tilde: st,
                    u_root: r.u0,
                    label: r.label.code(),
                    r_b: r.r_b.value,
                    r_c: r.r_c.value,
                    kappa_g_abs: r.kappa_g_abs.map(|t| t.value),
                    kappa_n: r.kappa_n.map(|t| t.value),
                    method_rb: r.r_b.method,
                    method_rc: r.r_c.method,
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(per_sample.into_iter().flatten().collect())
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub fn sweep_csv<S: Scalar>(fnf: &FrontalNormalForm<S>, opts: &SweepOptions) -> Result<String> {
    let rows = sweep_rows(fnf, opts)?;
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            num(r.s_tilde),
            num(r.u_root),
            r.label,
            num(r.r_b),
            num(r.r_c),
            opt(r.kappa_g_abs),
            opt(r.kappa_n),
            r.method_rb,
            r.method_rc
        )
        .expect("writing to a String");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germs::builtin_normal_form;

    #[test]
    fn header_only_for_zero_samples() {
        let f = FrontalNormalForm::from_s1(&builtin_normal_form("fs_plus", 8).unwrap()).unwrap();
        let csv = sweep_csv(&f, &SweepOptions { s_min: 0.01, s_max: 0.3, count: 0 }).unwrap();
        assert_eq!(csv, format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn fs_plus_secondary_curvature_column() {
        let f = FrontalNormalForm::from_s1(&builtin_normal_form("fs_plus", 8).unwrap()).unwrap();
        let rows = sweep_rows(&f, &SweepOptions { s_min: 0.01, s_max: 0.3, count: 30 }).unwrap();
        assert_eq!(rows.len(), 60);
        for w in rows.windows(2) {
            assert!(w[0].s_tilde < w[1].s_tilde || (w[0].s_tilde == w[1].s_tilde && w[0].u_root < w[1].u_root));
        }
        for r in &rows {
            assert!((r.r_c - 45.0 * 2f64.sqrt()).abs() < 1e-8, "{r:?}");
            assert_eq!(r.method_rc, Method::Oracle);
        }
    }
}
