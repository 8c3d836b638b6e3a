//! CSV and JSON artifact writers.

use std::fs;
use std::io::Write;
use std::path::Path;

use active_flux::equations::Conserved;
use active_flux::{AfState, Equation, Grid1d, RunDiagnostics};

fn component_names(eq: &Equation) -> &'static [&'static str] {
    if eq.is_scalar() {
        &["u"]
    } else {
        &["density", "momentum", "energy"]
    }
}

fn write_table(
    path: &Path,
    header: &str,
    xs: impl Iterator<Item = f64>,
    values: &[Conserved],
    m: usize,
) -> std::io::Result<()> {
    let mut out = String::new();
    out.push_str(header);
    out.push('\n');
    for (x, u) in xs.zip(values) {
        out.push_str(&format!("{x:.16e}"));
        for c in 0..m {
            out.push_str(&format!(",{:.16e}", u.0[c]));
        }
        out.push('\n');
    }
    fs::write(path, out)
}

/// `averages.csv`: cell centers and cell-average components.
pub fn write_averages(
    dir: &Path,
    eq: &Equation,
    grid: &Grid1d,
    state: &AfState,
) -> std::io::Result<()> {
    let names = component_names(eq);
    let header = format!("x,{}", names.join(","));
    write_table(
        &dir.join("averages.csv"),
        &header,
        (0..grid.n_cells).map(|i| grid.cell_center(i)),
        &state.averages,
        eq.n_components(),
    )
}

/// `points.csv`: interface coordinates and point-value components.
pub fn write_points(
    dir: &Path,
    eq: &Equation,
    grid: &Grid1d,
    state: &AfState,
) -> std::io::Result<()> {
    let names = component_names(eq);
    let header = format!("x,{}", names.join(","));
    write_table(
        &dir.join("points.csv"),
        &header,
        (0..=grid.n_cells).map(|i| grid.interface(i)),
        &state.points,
        eq.n_components(),
    )
}

pub struct MetaInfo<'a> {
    pub problem: &'a str,
    pub n_cells: usize,
    pub cfl: f64,
    pub splitting: &'a str,
    pub bp_average: &'a str,
    pub bp_point: &'a str,
    pub power_law: bool,
    pub t_final: f64,
    pub wall_seconds: f64,
}

/// `meta.json`: run configuration plus diagnostics (dt history, limiter
/// activation counts, minimum density/pressure, solution ranges over the
/// whole run and at the final time).
pub fn write_meta(
    dir: &Path,
    info: &MetaInfo,
    eq: &Equation,
    diag: &RunDiagnostics,
    final_state: &AfState,
) -> std::io::Result<()> {
    let m = eq.n_components();
    let (final_lo, final_hi) = final_state.component_range(m);
    let to_vec = |a: &[f64]| a[..m].to_vec();
    let json = serde_json::json!({
        "problem": info.problem,
        "equation": if eq.is_scalar() { "scalar" } else { "euler" },
        "gamma": eq.gamma(),
        "n_cells": info.n_cells,
        "cfl": info.cfl,
        "splitting": info.splitting,
        "bp_average": info.bp_average,
        "bp_point": info.bp_point,
        "power_law": info.power_law,
        "t_final": info.t_final,
        "steps": diag.steps,
        "halvings": diag.halvings,
        "dt_history": diag.dt_history,
        "avg_limiter_activations": diag.avg_limiter_activations,
        "point_limiter_activations": diag.point_limiter_activations,
        "center_repairs": diag.center_repairs,
        "min_density": finite_or_null(diag.min_density),
        "min_pressure": finite_or_null(diag.min_pressure),
        "range": {
            "min": to_vec(&diag.comp_min),
            "max": to_vec(&diag.comp_max),
        },
        "final_range": {
            "min": to_vec(&final_lo),
            "max": to_vec(&final_hi),
        },
        "wall_time_seconds": info.wall_seconds,
    });
    let mut f = fs::File::create(dir.join("meta.json"))?;
    writeln!(f, "{}", serde_json::to_string_pretty(&json)?)
}

fn finite_or_null(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}
