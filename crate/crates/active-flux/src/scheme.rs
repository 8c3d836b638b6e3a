//! One forward-Euler stage of the semi-discrete active flux scheme, with
//! optional bound-preserving limiting of both degrees of freedom. SSP-RK3
//! composes three of these stages.

use crate::bp_average::{
    alpha_bound, intermediate_state, limit_euler_flux, limit_scalar_flux, low_order_flux,
};
use crate::bp_point::{
    blend_euler_point, blend_scalar_point, llf_point_update, repair_cell_center,
};
use crate::equations::{Conserved, Equation, MAX_COMPONENTS};
use crate::error::{Error, Result};
use crate::mesh::{ghost_averages, ghost_points, AfState, Boundary, Grid1d, HaloArray};
use crate::reconstruction::cell_center_from_simpson;
use crate::splitting::{point_rhs_fvs, point_rhs_js, PointWindow, SplittingKind};

/// Limiter activation mode. `Local` bounds are defined for scalar problems
/// only; for Euler both `Global` and `Local` enforce positivity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BpMode {
    Off,
    Global,
    Local,
}

impl BpMode {
    pub fn parse(name: &str) -> Option<BpMode> {
        match name {
            "off" => Some(BpMode::Off),
            "global" => Some(BpMode::Global),
            "local" => Some(BpMode::Local),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            BpMode::Off => "off",
            BpMode::Global => "global",
            BpMode::Local => "local",
        }
    }

    pub fn is_on(&self) -> bool {
        !matches!(self, BpMode::Off)
    }
}

/// Switches for the limiting machinery.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LimiterConfig {
    pub bp_average: BpMode,
    pub bp_point: BpMode,
    pub power_law: bool,
}

impl LimiterConfig {
    pub fn none() -> Self {
        LimiterConfig {
            bp_average: BpMode::Off,
            bp_point: BpMode::Off,
            power_law: false,
        }
    }

    pub fn bp_global() -> Self {
        LimiterConfig {
            bp_average: BpMode::Global,
            bp_point: BpMode::Global,
            power_law: false,
        }
    }

    pub fn bp_local() -> Self {
        LimiterConfig {
            bp_average: BpMode::Local,
            bp_point: BpMode::Local,
            power_law: false,
        }
    }

    pub fn any_bp(&self) -> bool {
        self.bp_average.is_on() || self.bp_point.is_on()
    }
}

/// A fully configured spatial scheme on one grid.
#[derive(Clone, Debug)]
pub struct Scheme {
    pub equation: Equation,
    pub grid: Grid1d,
    pub boundary: Boundary,
    pub splitting: SplittingKind,
    pub limiter: LimiterConfig,
}

/// Observations from one forward-Euler stage, consumed by the step
/// acceptance protocol.
#[derive(Clone, Copy, Debug)]
pub struct StageReport {
    pub avg_activations: u64,
    pub point_activations: u64,
    pub center_repairs: u64,
    pub intermediates_admissible: bool,
    /// min_i dx_i / (alpha_{i-1/2} + alpha_{i+1/2}); infinite when the
    /// average limiter is off.
    pub avg_dt_bound: f64,
    /// min over points of (dx_i + dx_{i+1}) / (4 max(alpha_i, alpha_{i+1}));
    /// infinite when the point limiter is off.
    pub point_dt_bound: f64,
    pub min_density: f64,
    pub min_pressure: f64,
    pub comp_min: [f64; MAX_COMPONENTS],
    pub comp_max: [f64; MAX_COMPONENTS],
}

impl StageReport {
    pub fn empty() -> Self {
        StageReport {
            avg_activations: 0,
            point_activations: 0,
            center_repairs: 0,
            intermediates_admissible: true,
            avg_dt_bound: f64::INFINITY,
            point_dt_bound: f64::INFINITY,
            min_density: f64::INFINITY,
            min_pressure: f64::INFINITY,
            comp_min: [f64::INFINITY; MAX_COMPONENTS],
            comp_max: [f64::NEG_INFINITY; MAX_COMPONENTS],
        }
    }

    pub fn merge(&mut self, o: &StageReport) {
        self.avg_activations += o.avg_activations;
        self.point_activations += o.point_activations;
        self.center_repairs += o.center_repairs;
        self.intermediates_admissible &= o.intermediates_admissible;
        self.avg_dt_bound = self.avg_dt_bound.min(o.avg_dt_bound);
        self.point_dt_bound = self.point_dt_bound.min(o.point_dt_bound);
        self.min_density = self.min_density.min(o.min_density);
        self.min_pressure = self.min_pressure.min(o.min_pressure);
        for c in 0..MAX_COMPONENTS {
            self.comp_min[c] = self.comp_min[c].min(o.comp_min[c]);
            self.comp_max[c] = self.comp_max[c].max(o.comp_max[c]);
        }
    }

    pub fn limited(&self) -> bool {
        self.avg_activations > 0 || self.point_activations > 0
    }
}

impl Scheme {
    pub fn new(
        equation: Equation,
        grid: Grid1d,
        boundary: Boundary,
        splitting: SplittingKind,
        limiter: LimiterConfig,
    ) -> Result<Self> {
        splitting.validate(&equation)?;
        Ok(Scheme {
            equation,
            grid,
            boundary,
            splitting,
            limiter,
        })
    }

    /// Global maximum-principle bounds of the equation, used by the global
    /// limiter modes and the cell-center repair.
    fn global_bounds(&self) -> (f64, f64) {
        match self.equation.scalar_bounds() {
            Some(b) => (b.lo, b.hi),
            None => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    /// One forward-Euler stage U + dt L(U) applied jointly to the averages
    /// and the point values, with the configured limiting. The report
    /// carries the stage-local BP time-step bounds and limiter statistics.
    pub fn forward_euler_stage(&self, s: &AfState, dt: f64) -> Result<(AfState, StageReport)> {
        let eq = &self.equation;
        let n = self.grid.n_cells;
        let dx = self.grid.dx;
        let mut report = StageReport::empty();

        debug_assert_eq!(s.averages.len(), n);
        debug_assert_eq!(s.points.len(), n + 1);

        let ga = ghost_averages(eq, s, self.boundary, 2);
        let gp = ghost_points(eq, s, self.boundary, 2);

        let flux = self.average_fluxes(s, &ga, &mut report)?;
        let mut averages = Vec::with_capacity(n);
        let mu = dt / dx;
        for i in 0..n {
            averages.push(s.averages[i] - mu * (flux[i + 1] - flux[i]));
        }

        let points = self.advance_points(&ga, &gp, dt, &mut report)?;

        let out = AfState {
            averages,
            points,
            time: s.time + dt,
        };
        for (i, u) in out.averages.iter().enumerate() {
            if !u.is_finite() {
                return Err(Error::Domain(format!(
                    "non-finite cell average at cell {i}: {:?}",
                    u.0
                )));
            }
        }
        for (j, u) in out.points.iter().enumerate() {
            if !u.is_finite() {
                return Err(Error::Domain(format!(
                    "non-finite point value at interface {j}: {:?}",
                    u.0
                )));
            }
        }
        self.record_stats(&out, &mut report);
        Ok((out, report))
    }

    /// Interface fluxes for the cell-average update. The high-order flux is
    /// the physical flux of the interface point value; with limiting active
    /// it is blended toward the first-order LLF flux so every limited
    /// intermediate state stays admissible.
    fn average_fluxes(
        &self,
        s: &AfState,
        ga: &HaloArray,
        report: &mut StageReport,
    ) -> Result<Vec<Conserved>> {
        let eq = &self.equation;
        let n = self.grid.n_cells;
        let periodic = self.boundary == Boundary::Periodic;
        let unique = if periodic { n } else { n + 1 };
        let mut flux = vec![Conserved::ZERO; n + 1];

        if !self.limiter.bp_average.is_on() {
            for (j, f) in flux.iter_mut().enumerate().take(unique) {
                *f = eq.flux(s.points[j]).map_err(|e| at_interface(j, e))?;
            }
            if periodic {
                flux[n] = flux[0];
            }
            return Ok(flux);
        }

        // interface wave-speed bounds and intermediate states on the
        // extended range -1..=n+1 (the local bounds of the two boundary
        // cells reach one interface beyond the domain)
        let lo = -1isize;
        let hi = n as isize + 1;
        let len = (hi - lo + 1) as usize;
        let mut alphas = vec![0.0f64; len];
        let mut inters = vec![Conserved::ZERO; len];
        for j in lo..=hi {
            let ul = ga.at(j - 1);
            let ur = ga.at(j);
            let a = alpha_bound(eq, ul, ur).map_err(|e| at_interface_signed(j, e))?;
            let idx = (j - lo) as usize;
            alphas[idx] = a;
            inters[idx] =
                intermediate_state(eq, ul, ur, a).map_err(|e| at_interface_signed(j, e))?;
        }
        let alpha_at = |j: isize| alphas[(j - lo) as usize];
        let inter_at = |j: isize| inters[(j - lo) as usize];

        // per-cell local bounds for the scalar local maximum principle
        let local_bounds = |i: isize| -> (f64, f64) {
            let a = ga.at(i).as_scalar();
            let l = inter_at(i).as_scalar();
            let r = inter_at(i + 1).as_scalar();
            (a.min(l).min(r), a.max(l).max(r))
        };
        let (glo, ghi) = self.global_bounds();

        for j in 0..unique {
            let jj = j as isize;
            let u_tilde = inter_at(jj);
            if !eq.is_admissible(u_tilde) {
                report.intermediates_admissible = false;
            }
            let alpha = alpha_at(jj);
            let f_high = eq.flux(s.points[j]).map_err(|e| at_interface(j, e))?;
            let f_low = low_order_flux(eq, ga.at(jj - 1), ga.at(jj), alpha)
                .map_err(|e| at_interface(j, e))?;
            if eq.is_scalar() {
                let df = (f_high - f_low).as_scalar();
                let (ll, hl, lr, hr) = match self.limiter.bp_average {
                    BpMode::Local => {
                        let (l_lo, l_hi) = local_bounds(jj - 1);
                        let (r_lo, r_hi) = local_bounds(jj);
                        (l_lo, l_hi, r_lo, r_hi)
                    }
                    _ => (glo, ghi, glo, ghi),
                };
                let df_lim = limit_scalar_flux(df, u_tilde.as_scalar(), alpha, ll, hl, lr, hr);
                if df_lim != df {
                    report.avg_activations += 1;
                }
                flux[j] = Conserved::scalar(f_low.as_scalar() + df_lim);
            } else {
                let (f_lim, _, activated) = limit_euler_flux(eq, f_low, f_high, u_tilde, alpha)
                    .map_err(|e| at_interface(j, e))?;
                report.avg_activations += activated as u64;
                flux[j] = f_lim;
            }
        }
        if periodic {
            flux[n] = flux[0];
        }

        // BP time-step bound of the average update
        let mut bound = f64::INFINITY;
        for i in 0..n as isize {
            let denom = alpha_at(i) + alpha_at(i + 1);
            if denom > 0.0 {
                bound = bound.min(self.grid.dx / denom);
            }
        }
        report.avg_dt_bound = bound;
        Ok(flux)
    }

    /// Forward-Euler update of every point value, blended toward the
    /// staggered LLF fallback when the point limiter is active.
    fn advance_points(
        &self,
        ga: &HaloArray,
        gp: &HaloArray,
        dt: f64,
        report: &mut StageReport,
    ) -> Result<Vec<Conserved>> {
        let eq = &self.equation;
        let n = self.grid.n_cells;
        let dx = self.grid.dx;
        let periodic = self.boundary == Boundary::Periodic;
        let unique = if periodic { n } else { n + 1 };
        let bp_on = self.limiter.bp_point.is_on();
        let (glo, ghi) = self.global_bounds();

        // Simpson cell-center values on cells -1..=n, shared by the two
        // interfaces of each cell; repaired once per cell when limiting is
        // active so the FVS stencils only ever see admissible centers.
        let centers: Option<Vec<Conserved>> = if self.splitting == SplittingKind::Js {
            None
        } else {
            let mut cs = Vec::with_capacity(n + 2);
            for i in -1..=(n as isize) {
                let mut c = cell_center_from_simpson(gp.at(i), ga.at(i), gp.at(i + 1));
                if bp_on {
                    let (repaired, changed) = repair_cell_center(eq, c, ga.at(i))
                        .map_err(|e| at_interface_signed(i, e))?;
                    c = repaired;
                    report.center_repairs += changed as u64;
                }
                cs.push(c);
            }
            Some(cs)
        };

        let mut points = vec![Conserved::ZERO; n + 1];
        for j in 0..unique {
            let jj = j as isize;
            let window = PointWindow {
                pt_left: gp.at(jj - 1),
                avg_left: ga.at(jj - 1),
                pt_mid: gp.at(jj),
                avg_right: ga.at(jj),
                pt_right: gp.at(jj + 1),
                dx_left: dx,
                dx_right: dx,
            };
            let rhs = match self.splitting {
                SplittingKind::Js => point_rhs_js(eq, &window, self.limiter.power_law)
                    .map_err(|e| at_interface(j, e))?,
                kind => {
                    let cs = centers.as_ref().expect("centers exist for FVS");
                    let cl = cs[j]; // cell j-1, shifted by one
                    let cr = cs[j + 1]; // cell j
                    point_rhs_fvs(eq, kind, &window, cl, cr, self.limiter.power_law)
                        .map_err(|e| at_interface(j, e))?
                }
            };
            let u_high = window.pt_mid + dt * rhs;
            points[j] = if !bp_on {
                u_high
            } else {
                let u_low = llf_point_update(
                    eq,
                    window.pt_left,
                    window.pt_mid,
                    window.pt_right,
                    dx,
                    dx,
                    dt,
                )
                .map_err(|e| at_interface(j, e))?;
                if eq.is_scalar() {
                    let (lo, hi) = match self.limiter.bp_point {
                        BpMode::Local => {
                            let m = window
                                .avg_left
                                .as_scalar()
                                .min(window.avg_right.as_scalar())
                                .min(window.pt_mid.as_scalar());
                            let mx = window
                                .avg_left
                                .as_scalar()
                                .max(window.avg_right.as_scalar())
                                .max(window.pt_mid.as_scalar());
                            (m, mx)
                        }
                        _ => (glo, ghi),
                    };
                    let (theta, limited) =
                        blend_scalar_point(u_high.as_scalar(), u_low.as_scalar(), lo, hi);
                    if theta < 1.0 {
                        report.point_activations += 1;
                    }
                    Conserved::scalar(limited)
                } else {
                    let (ts, tss, limited) =
                        blend_euler_point(eq, u_high, u_low).map_err(|e| at_interface(j, e))?;
                    if ts < 1.0 || tss < 1.0 {
                        report.point_activations += 1;
                    }
                    limited
                }
            };
        }
        if periodic {
            points[n] = points[0];
        }

        if bp_on {
            // staggered-mesh BP time-step bound: per-cell wave-speed bounds
            // alpha_i = max of the spectral radii at the two cell interfaces
            let mut cell_alpha = vec![0.0f64; n + 2]; // cells -1..=n shifted by 1
            for i in -1..=(n as isize) {
                let wl = eq
                    .max_wave_speed(gp.at(i))
                    .map_err(|e| at_interface_signed(i, e))?;
                let wr = eq
                    .max_wave_speed(gp.at(i + 1))
                    .map_err(|e| at_interface_signed(i + 1, e))?;
                cell_alpha[(i + 1) as usize] = wl.max(wr);
            }
            let mut bound = f64::INFINITY;
            for j in 0..unique {
                let a = cell_alpha[j].max(cell_alpha[j + 1]);
                if a > 0.0 {
                    bound = bound.min((dx + dx) / (4.0 * a));
                }
            }
            report.point_dt_bound = bound;
        }
        Ok(points)
    }

    fn record_stats(&self, out: &AfState, report: &mut StageReport) {
        let m = self.equation.n_components();
        let (lo, hi) = out.component_range(m);
        for c in 0..MAX_COMPONENTS {
            report.comp_min[c] = report.comp_min[c].min(lo[c]);
            report.comp_max[c] = report.comp_max[c].max(hi[c]);
        }
        if let Equation::Euler { gamma } = self.equation {
            for u in out.averages.iter().chain(out.points.iter()) {
                let rho = u.density();
                report.min_density = report.min_density.min(rho);
                if rho > 0.0 {
                    let p = (gamma - 1.0) * (u.energy() - 0.5 * u.momentum() * u.momentum() / rho);
                    report.min_pressure = report.min_pressure.min(p);
                } else {
                    report.min_pressure = f64::NEG_INFINITY;
                }
            }
        }
    }
}

fn at_interface(j: usize, e: Error) -> Error {
    match e {
        Error::Domain(msg) => Error::Domain(format!("interface {j}: {msg}")),
        other => other,
    }
}

fn at_interface_signed(j: isize, e: Error) -> Error {
    match e {
        Error::Domain(msg) => Error::Domain(format!("interface {j}: {msg}")),
        other => other,
    }
}
