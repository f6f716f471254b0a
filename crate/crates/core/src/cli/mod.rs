//! Library side of the `cuspidal` binary: germ preparation, sweeps, meshes,
//! the classification report and the verification suites.

mod classify_report;
mod mesh;
pub mod random;
mod sweep;
pub mod verify;

pub use classify_report::{classify_report, ClassifyReport};
pub use mesh::{mesh_obj, MeshOptions, MeshOutput, MeshSidecar};
pub use sweep::{sweep_csv, sweep_rows, SweepOptions, SweepRow, CSV_HEADER};

use crate::error::{Error, Result};
use crate::frontal::minimal_frontalization;
use crate::germs::{normalize, FrontalNormalForm, MapGerm, NormalFormS1};
use crate::scalar::{Rational, Scalar};

/// Scalar tower selected on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScalarMode {
    #[default]
    Exact,
    Float,
}

/// A germ brought to frontal normal form with a reduced parameter.
#[derive(Debug, Clone)]
pub struct Prepared<S: Scalar> {
    pub normal_form: NormalFormS1<S>,
    pub frontal: bool,
    /// `v f33` removed by minimal frontalization (zero for frontals).
    pub obstruction: crate::jets::Jet<S>,
    pub frontal_part: FrontalNormalForm<S>,
    /// Frontal part with `c1(0, s) = s`, when the reduction applies.
    pub reduced: Option<FrontalNormalForm<S>>,
    /// `s = h(sigma)` used by the reduction (identity when none was needed).
    pub reparam: Option<crate::jets::Jet<S>>,
    pub notes: Vec<String>,
}

pub fn prepare<S: Scalar>(germ: &MapGerm<S>) -> Result<Prepared<S>> {
    let (nf, _) = normalize(germ)?;
    let frontal = crate::frontal::is_frontal(&nf);
    let (fr, obstruction) = minimal_frontalization(&nf)?;
    let mut notes = Vec::new();
    if !frontal {
        notes.push(format!(
            "germ is not frontal; using its frontal part (obstruction {})",
            obstruction.pretty()
        ));
    }
    let (reduced, reparam) = match fr.expand_c1() {
        Ok(_) => (Some(fr.clone()), None),
        Err(Error::NotReducedC1) => match fr.reduce_parameter() {
            Ok((r, h)) => {
                notes.push(format!(
                    "parameter reparametrized so that c1(0,s) = s (order drops to {})",
                    r.order
                ));
                (Some(r), Some(h))
            }
            Err(e) => {
                notes.push(format!("parameter reduction unavailable: {e}"));
                (None, None)
            }
        },
        Err(e) => {
            notes.push(format!("c1 expansion unavailable: {e}"));
            (None, None)
        }
    };
    Ok(Prepared {
        normal_form: nf,
        frontal,
        obstruction,
        frontal_part: fr,
        reduced,
        reparam,
        notes,
    })
}

/// `Prepared` in the requested tower. In exact mode an irrational square root
/// during normalization is reported with a hint to use `--float`.
pub enum AnyPrepared {
    Exact(Prepared<Rational>),
    Float(Prepared<f64>),
}

pub fn prepare_mode(germ: &MapGerm<Rational>, mode: ScalarMode) -> Result<AnyPrepared> {
    match mode {
        ScalarMode::Exact => prepare(germ).map(AnyPrepared::Exact).map_err(|e| match e {
            Error::IrrationalSqrt(what) => {
                Error::IrrationalSqrt(format!("{what} (rerun with --float)"))
            }
            other => other,
        }),
        ScalarMode::Float => prepare(&germ.to_f64()).map(AnyPrepared::Float),
    }
}

/// Runs `f` on a rayon pool with `threads` workers (`0` = rayon default).
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvariantViolation(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}
