use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::frontal::singular_sets;
use crate::geometry::trace_self_intersection;
use crate::germs::MapGerm;
use crate::jets::Var;
use crate::numeric::{linspace, newton};
use crate::scalar::Scalar;

use super::Prepared;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeshOptions {
    pub s: f64,
    pub grid: usize,
    pub extent: f64,
    /// Mesh the frontal part of the normal form instead of the input germ.
    pub frontalize: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelfIntersectionPoint {
    pub u0: f64,
    pub u_vv: f64,
}

/// JSON written next to the OBJ file.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeshSidecar {
    pub s: f64,
    pub grid: usize,
    pub extent: f64,
    pub frontal: bool,
    /// Roots of `c1(u, s)`; `null` when the germ is not a deformed cuspidal `S_k`.
    pub s2_roots: Option<Vec<f64>>,
    pub self_intersection: Vec<SelfIntersectionPoint>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeshOutput {
    pub obj: String,
    pub sidecar: MeshSidecar,
}

/// `sigma` with `h(sigma) = s` for the parameter reduction `s = h(sigma)`.
fn reduced_parameter<S: Scalar>(p: &Prepared<S>, s: f64) -> Result<f64> {
    let Some(h) = &p.reparam else {
        return Ok(s);
    };
    let h = h.to_f64();
    let dh = h.differentiate(Var::S);
    let slope = *dh.constant_term();
    newton(
        |x| (h.evaluate_f64([0.0, 0.0, x]) - s, dh.evaluate_f64([0.0, 0.0, x])),
        s / slope,
        1e-15,
        100,
    )
}

fn s2_data<S: Scalar>(p: &Prepared<S>, s: f64) -> Result<(Option<Vec<f64>>, Vec<SelfIntersectionPoint>)> {
    let Some(fnf) = &p.reduced else {
        return Ok((None, Vec::new()));
    };
    if fnf.expand_c1()?.is_degenerate() {
        return Ok((None, Vec::new()));
    }
    let sigma = reduced_parameter(p, s)?;
    let roots = singular_sets(fnf, sigma)?.s2;
    let mut si = Vec::new();
    if sigma != 0.0 {
        for &u0 in &roots {
            if let Ok(b) = trace_self_intersection(fnf, sigma, u0) {
                si.push(SelfIntersectionPoint { u0, u_vv: b.u_vv });
            }
        }
    }
    Ok((Some(roots), si))
}

/// Samples `(u, v) in [-extent, extent]^2` on a `grid x grid` lattice.
///
/// Vertices are written row-major in `u` then `v` with 17 significant digits;
/// faces are quads. The input germ is meshed as given unless `frontalize` is
/// set, in which case the frontal part of its normal form is used.
pub fn mesh_obj<S: Scalar>(germ: &MapGerm<S>, p: &Prepared<S>, opts: &MeshOptions) -> Result<MeshOutput> {
    if opts.grid < 2 {
        return Err(Error::Spec(format!("grid must be at least 2, got {}", opts.grid)));
    }
    if !(opts.extent > 0.0 && opts.extent.is_finite()) {
        return Err(Error::Spec(format!("extent must be positive, got {}", opts.extent)));
    }
    let surface = if opts.frontalize {
        let mut nf = p.normal_form.clone();
        nf.f33 = crate::jets::Jet::zero(nf.order - 1);
        nf.assemble()?.to_f64()
    } else {
        germ.to_f64()
    };
    let ticks = linspace(-opts.extent, opts.extent, opts.grid);
    let points: Vec<[f64; 3]> = (0..opts.grid * opts.grid)
        .into_par_iter()
        .map(|k| surface.evaluate_f64([ticks[k / opts.grid], ticks[k % opts.grid], opts.s]))
        .collect();
    let n = opts.grid;
    let mut obj = String::with_capacity(points.len() * 80 + (n - 1) * (n - 1) * 32);
    for [x, y, z] in &points {
        writeln!(obj, "v {x:.16e} {y:.16e} {z:.16e}").expect("writing to a String");
    }
    for i in 0..n - 1 {
        for j in 0..n - 1 {
            let a = i * n + j + 1;
            writeln!(obj, "f {} {} {} {}", a, a + n, a + n + 1, a + 1).expect("writing to a String");
        }
    }
    let (s2_roots, self_intersection) = s2_data(p, opts.s)?;
    Ok(MeshOutput {
        obj,
        sidecar: MeshSidecar {
            s: opts.s,
            grid: opts.grid,
            extent: opts.extent,
            frontal: p.frontal || opts.frontalize,
            s2_roots,
            self_intersection,
        },
    })
}
