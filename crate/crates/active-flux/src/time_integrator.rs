//! SSP-RK3 stepping, CFL-based time-step selection, the bound-preserving
//! time-step constraints, and the rollback/halving protocol.

use crate::equations::{Equation, MAX_COMPONENTS};
use crate::error::{Error, Result};
use crate::mesh::{AfState, Grid1d};
use crate::scheme::{Scheme, StageReport};

/// Time-marching parameters.
#[derive(Clone, Copy, Debug)]
pub struct StepController {
    pub cfl: f64,
    pub t_final: f64,
    pub max_halvings: u32,
}

impl StepController {
    pub fn new(cfl: f64, t_final: f64) -> Self {
        StepController {
            cfl,
            t_final,
            max_halvings: 20,
        }
    }
}

/// CFL time step dt = C / max_i,l (|lambda_l(Ubar_i)| / dx_i), evaluated on
/// the cell averages. Returns t_final - t when every wave speed vanishes.
pub fn compute_dt(
    eq: &Equation,
    state: &AfState,
    grid: &Grid1d,
    cfl: f64,
    t_final: f64,
) -> Result<f64> {
    let mut rate: f64 = 0.0;
    for (i, u) in state.averages.iter().enumerate() {
        let w = eq.max_wave_speed(*u).map_err(|e| match e {
            Error::Domain(msg) => Error::Domain(format!("cell {i}: {msg}")),
            other => other,
        })?;
        rate = rate.max(w / grid.dx);
    }
    let remaining = t_final - state.time;
    if rate <= 0.0 {
        return Ok(remaining);
    }
    Ok((cfl / rate).min(remaining))
}

/// States combinable by the convex stage combinations of SSP-RK3.
pub trait ConvexCombine: Clone {
    fn convex(a: f64, x: &Self, b: f64, y: &Self) -> Self;
}

impl ConvexCombine for f64 {
    fn convex(a: f64, x: &f64, b: f64, y: &f64) -> f64 {
        a * x + b * y
    }
}

impl ConvexCombine for AfState {
    fn convex(a: f64, x: &AfState, b: f64, y: &AfState) -> AfState {
        AfState::linear_comb(a, x, b, y)
    }
}

/// One SSP-RK3 step built from a forward-Euler operator `fe`:
///   U*    = FE(U^n)
///   U**   = 3/4 U^n + 1/4 FE(U*)
///   U^n+1 = 1/3 U^n + 2/3 FE(U**)
pub fn ssp_rk3_step<S: ConvexCombine, E>(
    s0: &S,
    mut fe: impl FnMut(&S, u32) -> std::result::Result<S, E>,
) -> std::result::Result<S, E> {
    let s1 = fe(s0, 0)?;
    let s2 = fe(&s1, 1)?;
    let s2 = S::convex(0.75, s0, 0.25, &s2);
    let s3 = fe(&s2, 2)?;
    Ok(S::convex(1.0 / 3.0, s0, 2.0 / 3.0, &s3))
}

/// Aggregated observations of a completed run.
#[derive(Clone, Debug)]
pub struct RunDiagnostics {
    pub steps: u64,
    pub halvings: u64,
    pub dt_history: Vec<f64>,
    pub avg_limiter_activations: u64,
    pub point_limiter_activations: u64,
    pub center_repairs: u64,
    /// Minimum density over all accepted stage outputs (Euler only).
    pub min_density: f64,
    /// Minimum pressure over all accepted stage outputs (Euler only).
    pub min_pressure: f64,
    /// Componentwise range over all accepted stage outputs, averages and
    /// points combined, including the initial state.
    pub comp_min: [f64; MAX_COMPONENTS],
    pub comp_max: [f64; MAX_COMPONENTS],
}

impl RunDiagnostics {
    fn new() -> Self {
        RunDiagnostics {
            steps: 0,
            halvings: 0,
            dt_history: Vec::new(),
            avg_limiter_activations: 0,
            point_limiter_activations: 0,
            center_repairs: 0,
            min_density: f64::INFINITY,
            min_pressure: f64::INFINITY,
            comp_min: [f64::INFINITY; MAX_COMPONENTS],
            comp_max: [f64::NEG_INFINITY; MAX_COMPONENTS],
        }
    }

    fn absorb_initial(&mut self, eq: &Equation, state: &AfState) {
        let m = eq.n_components();
        let (lo, hi) = state.component_range(m);
        for c in 0..MAX_COMPONENTS {
            self.comp_min[c] = self.comp_min[c].min(lo[c]);
            self.comp_max[c] = self.comp_max[c].max(hi[c]);
        }
        if let Equation::Euler { gamma } = eq {
            for u in state.averages.iter().chain(state.points.iter()) {
                self.min_density = self.min_density.min(u.density());
                if u.density() > 0.0 {
                    let p = (gamma - 1.0)
                        * (u.energy() - 0.5 * u.momentum() * u.momentum() / u.density());
                    self.min_pressure = self.min_pressure.min(p);
                }
            }
        }
    }

    fn absorb_report(&mut self, r: &StageReport) {
        self.avg_limiter_activations += r.avg_activations;
        self.point_limiter_activations += r.point_activations;
        self.center_repairs += r.center_repairs;
        self.min_density = self.min_density.min(r.min_density);
        self.min_pressure = self.min_pressure.min(r.min_pressure);
        for c in 0..MAX_COMPONENTS {
            self.comp_min[c] = self.comp_min[c].min(r.comp_min[c]);
            self.comp_max[c] = self.comp_max[c].max(r.comp_max[c]);
        }
    }
}

enum Attempt {
    Accepted(AfState, StageReport),
    /// Limiting was required but a BP precondition failed; retry with dt/2.
    Retry(String),
    /// A state left the domain of the flux or eigensystem evaluations.
    Inadmissible(String),
}

fn try_step(scheme: &Scheme, state: &AfState, dt: f64) -> Attempt {
    let mut merged = StageReport::empty();
    let result = ssp_rk3_step(state, |s, _stage| {
        let (out, report) = scheme.forward_euler_stage(s, dt)?;
        merged.merge(&report);
        Ok(out)
    });
    match result {
        Err(Error::Domain(msg)) => Attempt::Inadmissible(msg),
        Err(e) => Attempt::Inadmissible(e.to_string()),
        Ok(out) => {
            if merged.limited() {
                if !merged.intermediates_admissible {
                    return Attempt::Retry(
                        "an intermediate Riemann state left the admissible set".into(),
                    );
                }
                if scheme.limiter.bp_average.is_on() && dt > merged.avg_dt_bound {
                    return Attempt::Retry(format!(
                        "dt = {dt:.3e} exceeds the average BP bound {:.3e}",
                        merged.avg_dt_bound
                    ));
                }
                if scheme.limiter.bp_point.is_on() && dt > merged.point_dt_bound {
                    return Attempt::Retry(format!(
                        "dt = {dt:.3e} exceeds the point BP bound {:.3e}",
                        merged.point_dt_bound
                    ));
                }
            }
            Attempt::Accepted(out, merged)
        }
    }
}

/// March the state to `t_final`.
///
/// Each step proposes the CFL time step, attempts a full SSP-RK3 step, and
/// accepts it unless limiting was required while a BP precondition failed
/// (inadmissible intermediate state or a violated BP time-step constraint),
/// in which case the step is rolled back and rerun with half the step size,
/// up to `max_halvings` times. With all limiting disabled an inadmissible
/// state aborts the run immediately with a diagnostic.
pub fn advance_with_bp_protocol(
    scheme: &Scheme,
    mut state: AfState,
    ctrl: &StepController,
) -> Result<(AfState, RunDiagnostics)> {
    let mut diag = RunDiagnostics::new();
    diag.absorb_initial(&scheme.equation, &state);
    let t_final = ctrl.t_final;
    let tiny = 1e-14 * t_final.abs().max(1.0);

    while t_final - state.time > tiny {
        let t_before = state.time;
        let dt0 =
            compute_dt(&scheme.equation, &state, &scheme.grid, ctrl.cfl, t_final).map_err(|e| {
                Error::Abort {
                    time: t_before,
                    detail: e.to_string(),
                }
            })?;
        let mut dt = dt0;
        let mut halvings = 0u32;
        loop {
            match try_step(scheme, &state, dt) {
                Attempt::Accepted(mut out, report) => {
                    out.time = t_before + dt;
                    state = out;
                    diag.steps += 1;
                    diag.dt_history.push(dt);
                    diag.absorb_report(&report);
                    break;
                }
                Attempt::Inadmissible(msg) if !scheme.limiter.any_bp() => {
                    return Err(Error::Abort {
                        time: t_before,
                        detail: msg,
                    });
                }
                Attempt::Retry(msg) | Attempt::Inadmissible(msg) => {
                    halvings += 1;
                    diag.halvings += 1;
                    if halvings > ctrl.max_halvings {
                        return Err(Error::Abort {
                            time: t_before,
                            detail: format!(
                                "step rejected after {} halvings (dt = {dt:.3e}): {msg}",
                                ctrl.max_halvings
                            ),
                        });
                    }
                    dt *= 0.5;
                }
            }
        }
    }
    state.time = t_final;
    Ok((state, diag))
}
