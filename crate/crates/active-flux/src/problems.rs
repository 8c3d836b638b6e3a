//! Benchmark registry: initial data, boundary kinds, final times, default
//! CFL numbers, and exact or reference solution oracles.

use std::sync::Arc;

use crate::bp_average::{alpha_bound, low_order_flux};
use crate::equations::{Conserved, Equation, EulerPrimitive};
use crate::error::{Error, Result};
use crate::mesh::{cell_average_of, discrete_scalar_bounds, init_state, AfState, Boundary, Grid1d};
use crate::riemann;
use crate::scheme::{LimiterConfig, Scheme};
use crate::splitting::SplittingKind;
use crate::time_integrator::{advance_with_bp_protocol, StepController};

type InitFn = Arc<dyn Fn(f64) -> Conserved + Send + Sync>;
type ExactFn = Arc<dyn Fn(f64, f64) -> Conserved + Send + Sync>;
type SpecialInit = Arc<dyn Fn(&Grid1d) -> Result<AfState> + Send + Sync>;

/// Reference solution attached to a benchmark.
#[derive(Clone)]
pub enum Reference {
    /// Pointwise exact solution (x, t) -> U.
    Exact(ExactFn),
    /// Exact Riemann solution of the problem's own initial data.
    RiemannExact {
        left: EulerPrimitive,
        right: EulerPrimitive,
        x0: f64,
    },
    /// First-order LLF finite-volume run on a fine mesh.
    FineMeshLowOrder {
        n: usize,
    },
    /// This library's own LLF-FVS scheme with BP limiting on a fine mesh.
    FineMeshSelf {
        n: usize,
    },
    None,
}

/// A fully described benchmark problem.
#[derive(Clone)]
pub struct ProblemSpec {
    pub name: &'static str,
    pub equation: Equation,
    pub x_min: f64,
    pub x_max: f64,
    pub boundary: Boundary,
    pub t_final: f64,
    pub default_n: usize,
    /// Default CFL numbers per splitting (js, llf, sw, vh), taken from the
    /// experiments; environment-dependent defaults, not guarantees.
    cfl: [f64; 4],
    init: InitFn,
    special_init: Option<SpecialInit>,
    pub reference: Reference,
}

impl ProblemSpec {
    pub fn default_cfl(&self, splitting: SplittingKind) -> f64 {
        match splitting {
            SplittingKind::Js => self.cfl[0],
            SplittingKind::LlfFvs => self.cfl[1],
            SplittingKind::SwFvs => self.cfl[2],
            SplittingKind::VhFvs => self.cfl[3],
        }
    }

    pub fn init_value(&self, x: f64) -> Conserved {
        (self.init)(x)
    }

    /// Build the discrete initial state on `n` cells. For scalar problems
    /// the global maximum-principle bounds are read off the discrete data
    /// and installed in the returned equation.
    pub fn initialize(&self, n: usize) -> Result<(Equation, Grid1d, AfState)> {
        let grid = Grid1d::new(self.x_min, self.x_max, n)?;
        let state = match &self.special_init {
            Some(f) => f(&grid)?,
            None => init_state(&self.equation, &grid, &|x| (self.init)(x))?,
        };
        let eq = if self.equation.is_scalar() {
            let (lo, hi) = discrete_scalar_bounds(&state);
            self.equation.with_scalar_bounds(lo, hi)
        } else {
            self.equation
        };
        Ok((eq, grid, state))
    }

    /// Reference cell averages at time `t` on the given grid, if the
    /// problem has a reference. Fine-mesh references are computed on demand.
    pub fn reference_averages(&self, grid: &Grid1d, t: f64) -> Result<Option<Vec<Conserved>>> {
        match &self.reference {
            Reference::None => Ok(None),
            Reference::Exact(f) => {
                let averages = (0..grid.n_cells)
                    .map(|i| {
                        cell_average_of(&|x| f(x, t), grid.interface(i), grid.interface(i + 1))
                    })
                    .collect();
                Ok(Some(averages))
            }
            Reference::RiemannExact { left, right, x0 } => {
                let gamma = self.equation.gamma().expect("Riemann reference is Euler");
                let sol = riemann::solve(gamma, *left, *right)?;
                let f = |x: f64| -> Conserved {
                    let prim = if t > 0.0 {
                        sol.sample((x - x0) / t)
                    } else if x < *x0 {
                        *left
                    } else {
                        *right
                    };
                    if prim.rho <= 0.0 {
                        // vacuum plateau of a near-vacuum solution
                        Conserved::euler(0.0, 0.0, 0.0)
                    } else {
                        prim.conserved(gamma)
                    }
                };
                let averages = (0..grid.n_cells)
                    .map(|i| cell_average_of(&f, grid.interface(i), grid.interface(i + 1)))
                    .collect();
                Ok(Some(averages))
            }
            Reference::FineMeshLowOrder { n } => {
                let fine = low_order_llf_averages(self, *n, t)?;
                Ok(Some(aggregate(&fine, grid.n_cells)?))
            }
            Reference::FineMeshSelf { n } => {
                let fine = self_scheme_averages(self, *n, t)?;
                Ok(Some(aggregate(&fine, grid.n_cells)?))
            }
        }
    }
}

/// Coarsen fine-mesh cell averages onto `n_coarse` cells by block means.
fn aggregate(fine: &[Conserved], n_coarse: usize) -> Result<Vec<Conserved>> {
    if !fine.len().is_multiple_of(n_coarse) {
        return Err(Error::Config(format!(
            "reference mesh {} is not a multiple of {}",
            fine.len(),
            n_coarse
        )));
    }
    let block = fine.len() / n_coarse;
    Ok((0..n_coarse)
        .map(|i| {
            let mut acc = Conserved::ZERO;
            for u in &fine[i * block..(i + 1) * block] {
                acc += *u;
            }
            acc * (1.0 / block as f64)
        })
        .collect())
}

/// First-order LLF finite-volume reference on `n` cells; an adequate
/// monotone oracle for scalar problems whose exact solution is awkward
/// after wave interactions.
pub fn low_order_llf_averages(
    spec: &ProblemSpec,
    n: usize,
    t_final: f64,
) -> Result<Vec<Conserved>> {
    let (eq, grid, state) = spec.initialize(n)?;
    let mut avg = state.averages;
    let nn = n as isize;
    let wrap = |i: isize| -> usize {
        match spec.boundary {
            Boundary::Periodic => (((i % nn) + nn) % nn) as usize,
            _ => i.clamp(0, nn - 1) as usize,
        }
    };
    let mut t = 0.0;
    while t < t_final - 1e-14 * t_final.max(1.0) {
        let mut alpha_max: f64 = 0.0;
        for u in &avg {
            alpha_max = alpha_max.max(eq.max_wave_speed(*u)?);
        }
        let dt = if alpha_max > 0.0 {
            (0.45 * grid.dx / alpha_max).min(t_final - t)
        } else {
            t_final - t
        };
        let mut flux = vec![Conserved::ZERO; n + 1];
        for (j, f) in flux.iter_mut().enumerate() {
            let ul = avg[wrap(j as isize - 1)];
            let ur = avg[wrap(j as isize)];
            let a = alpha_bound(&eq, ul, ur)?;
            *f = low_order_flux(&eq, ul, ur, a)?;
        }
        let mu = dt / grid.dx;
        let next: Vec<Conserved> = (0..n)
            .map(|i| avg[i] - mu * (flux[i + 1] - flux[i]))
            .collect();
        avg = next;
        t += dt;
    }
    Ok(avg)
}

/// Fine-mesh reference computed with this library's own LLF-FVS scheme and
/// global BP limiting.
pub fn self_scheme_averages(spec: &ProblemSpec, n: usize, t_final: f64) -> Result<Vec<Conserved>> {
    let (eq, grid, state) = spec.initialize(n)?;
    let scheme = Scheme::new(
        eq,
        grid,
        spec.boundary,
        SplittingKind::LlfFvs,
        LimiterConfig::bp_global(),
    )?;
    let ctrl = StepController::new(spec.default_cfl(SplittingKind::LlfFvs), t_final);
    let (out, _) = advance_with_bp_protocol(&scheme, state, &ctrl)?;
    Ok(out.averages)
}

fn wrap_periodic(x: f64, x_min: f64, x_max: f64) -> f64 {
    let len = x_max - x_min;
    let mut y = (x - x_min) % len;
    if y < 0.0 {
        y += len;
    }
    y + x_min
}

/// Advection of the four-feature profile (smooth Gaussians, a square wave,
/// a triangle, and half-ellipses) over one period.
pub fn advection_profile() -> ProblemSpec {
    let init: InitFn = Arc::new(|x| Conserved::scalar(four_feature_profile(x)));
    let exact: ExactFn = Arc::new(move |x, t| {
        Conserved::scalar(four_feature_profile(wrap_periodic(x - t, -1.0, 1.0)))
    });
    ProblemSpec {
        name: "advection",
        equation: Equation::advection(1.0),
        x_min: -1.0,
        x_max: 1.0,
        boundary: Boundary::Periodic,
        t_final: 2.0,
        default_n: 400,
        cfl: [0.1, 0.1, 0.1, 0.1],
        init,
        special_init: None,
        reference: Reference::Exact(exact),
    }
}

fn four_feature_profile(x: f64) -> f64 {
    let a = 0.5;
    let z = -0.7;
    let delta = 0.005;
    let alpha = 10.0;
    let beta = 2.0f64.ln() / (36.0 * delta * delta);
    let g1 = |x: f64, z: f64| (-beta * (x - z) * (x - z)).exp();
    let g2 = |x: f64, a: f64| (1.0 - alpha * alpha * (x - a) * (x - a)).max(0.0).sqrt();
    if (-0.8..=-0.6).contains(&x) {
        (g1(x, z - delta) + g1(x, z + delta) + 4.0 * g1(x, z)) / 6.0
    } else if (-0.4..=-0.2).contains(&x) {
        1.0
    } else if (0.0..=0.2).contains(&x) {
        1.0 - (10.0 * (x - 0.1)).abs()
    } else if (0.4..=0.6).contains(&x) {
        (g2(x, a - delta) + g2(x, a + delta) + 4.0 * g2(x, a)) / 6.0
    } else {
        0.0
    }
}

/// Smooth sine advection used for plumbing-level convergence studies.
pub fn advection_sine() -> ProblemSpec {
    let init: InitFn = Arc::new(|x| Conserved::scalar((std::f64::consts::PI * x).sin()));
    let exact: ExactFn = Arc::new(|x, t| {
        Conserved::scalar((std::f64::consts::PI * wrap_periodic(x - t, -1.0, 1.0)).sin())
    });
    ProblemSpec {
        name: "advection_sine",
        equation: Equation::advection(1.0),
        x_min: -1.0,
        x_max: 1.0,
        boundary: Boundary::Periodic,
        t_final: 2.0,
        default_n: 80,
        cfl: [0.4, 0.4, 0.4, 0.4],
        init,
        special_init: None,
        reference: Reference::Exact(exact),
    }
}

/// Burgers square wave: a self-steepening shock plus a rarefaction. The
/// reference is a first-order LLF run on 20000 cells; after the waves
/// interact the exact solution is ODE-defined, and a fine monotone mesh is
/// an adequate oracle.
pub fn burgers_square() -> ProblemSpec {
    let init: InitFn = Arc::new(|x| Conserved::scalar(if x.abs() < 0.2 { 2.0 } else { -1.0 }));
    ProblemSpec {
        name: "burgers_square",
        equation: Equation::burgers(),
        x_min: -1.0,
        x_max: 1.0,
        boundary: Boundary::Periodic,
        t_final: 0.5,
        default_n: 200,
        cfl: [0.3, 0.3, 0.3, 0.3],
        init,
        special_init: None,
        reference: Reference::FineMeshLowOrder { n: 20000 },
    }
}

pub const ACCURACY_ZETA: f64 = 1.0 - 1e-7;

/// Smooth Euler flow with gamma = 3, where both Riemann invariants satisfy
/// Burgers equations and the exact solution follows from characteristics.
/// The density dips to 1e-7, so BP limiting is required.
pub fn euler_accuracy() -> ProblemSpec {
    let zeta = ACCURACY_ZETA;
    let init: InitFn = Arc::new(move |x| {
        let rho = 1.0 + zeta * (std::f64::consts::PI * x).sin();
        EulerPrimitive::new(rho, 0.0, rho.powi(3)).conserved(3.0)
    });
    let exact: ExactFn = Arc::new(move |x, t| {
        accuracy_exact(x, t, zeta).expect("characteristic root solve converges for t <= 0.1")
    });
    ProblemSpec {
        name: "euler_accuracy",
        equation: Equation::euler(3.0),
        x_min: -1.0,
        x_max: 1.0,
        boundary: Boundary::Periodic,
        t_final: 0.1,
        default_n: 80,
        cfl: [0.18, 0.18, 0.18, 0.18],
        init,
        special_init: None,
        reference: Reference::Exact(exact),
    }
}

fn accuracy_rho0(x: f64, zeta: f64) -> f64 {
    1.0 + zeta * (std::f64::consts::PI * x).sin()
}

/// Foot point of one characteristic family: solves
/// x + sign * sqrt(3) rho0(xi) t - xi = 0 by safeguarded Newton.
fn accuracy_root(x: f64, t: f64, zeta: f64, sign: f64) -> Result<f64> {
    let sqrt3 = 3.0f64.sqrt();
    let g = |xi: f64| x + sign * sqrt3 * accuracy_rho0(xi, zeta) * t - xi;
    let dg = |xi: f64| {
        sign * sqrt3 * zeta * std::f64::consts::PI * (std::f64::consts::PI * xi).cos() * t - 1.0
    };
    let span = 2.0 * sqrt3 * t + 1e-12;
    let (mut lo, mut hi) = if sign > 0.0 {
        (x, x + span)
    } else {
        (x - span, x)
    };
    let mut xi = 0.5 * (lo + hi);
    for _ in 0..200 {
        let val = g(xi);
        if val.abs() <= 1e-13 {
            return Ok(xi);
        }
        // g is strictly decreasing for t <= 0.1
        if val > 0.0 {
            lo = xi;
        } else {
            hi = xi;
        }
        let newton = xi - val / dg(xi);
        xi = if newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    Err(Error::RootFind(format!(
        "characteristic foot point did not converge at x = {x}, t = {t}"
    )))
}

/// Exact solution of the gamma = 3 accuracy test by the method of
/// characteristics.
pub fn accuracy_exact(x: f64, t: f64, zeta: f64) -> Result<Conserved> {
    let x1 = accuracy_root(x, t, zeta, 1.0)?;
    let x2 = accuracy_root(x, t, zeta, -1.0)?;
    let rho = 0.5 * (accuracy_rho0(x1, zeta) + accuracy_rho0(x2, zeta));
    let v = 3.0f64.sqrt() * (rho - accuracy_rho0(x1, zeta));
    Ok(EulerPrimitive::new(rho, v, rho.powi(3)).conserved(3.0))
}

/// Double rarefaction Riemann problem; the exact solution contains a
/// vacuum point.
pub fn double_rarefaction() -> ProblemSpec {
    let left = EulerPrimitive::new(7.0, -1.0, 0.2);
    let right = EulerPrimitive::new(7.0, 1.0, 0.2);
    let init: InitFn = Arc::new(move |x| {
        if x < 0.5 {
            left.conserved(1.4)
        } else {
            right.conserved(1.4)
        }
    });
    ProblemSpec {
        name: "double_rarefaction",
        equation: Equation::euler(1.4),
        x_min: 0.0,
        x_max: 1.0,
        boundary: Boundary::Outflow,
        t_final: 0.3,
        default_n: 400,
        cfl: [0.4, 0.4, 0.4, 0.1],
        init,
        special_init: None,
        reference: Reference::RiemannExact {
            left,
            right,
            x0: 0.5,
        },
    }
}

/// LeBlanc shock tube: initial pressure ratio 1e9.
pub fn leblanc() -> ProblemSpec {
    let left = EulerPrimitive::new(2.0, 0.0, 1e9);
    let right = EulerPrimitive::new(1e-3, 0.0, 1.0);
    let init: InitFn = Arc::new(move |x| {
        if x < 0.5 {
            left.conserved(1.4)
        } else {
            right.conserved(1.4)
        }
    });
    ProblemSpec {
        name: "leblanc",
        equation: Equation::euler(1.4),
        x_min: 0.0,
        x_max: 1.0,
        boundary: Boundary::Outflow,
        t_final: 5e-6,
        default_n: 400,
        cfl: [0.15, 0.4, 0.4, 0.15],
        init,
        special_init: None,
        reference: Reference::RiemannExact {
            left,
            right,
            x0: 0.5,
        },
    }
}

pub const SEDOV_ENERGY: f64 = 3.2e6;

/// Sedov point blast: a delta-like energy deposition in the centered cell.
/// The cell average and the two interface point values of that cell carry
/// total energy 3.2e6 / dx; everything else is quiescent background.
/// Requires an odd cell count so a single centered cell exists.
pub fn sedov() -> ProblemSpec {
    let background = Conserved::euler(1.0, 0.0, 1e-12);
    let special: SpecialInit = Arc::new(move |grid: &Grid1d| {
        let n = grid.n_cells;
        if n.is_multiple_of(2) {
            return Err(Error::Config(format!(
                "the Sedov setup needs an odd number of cells for a single centered cell, got {n}"
            )));
        }
        let center = (n - 1) / 2;
        let e_center = SEDOV_ENERGY / grid.dx;
        let mut averages = vec![background; n];
        averages[center] = Conserved::euler(1.0, 0.0, e_center);
        let mut points = vec![background; n + 1];
        points[center] = Conserved::euler(1.0, 0.0, e_center);
        points[center + 1] = Conserved::euler(1.0, 0.0, e_center);
        Ok(AfState {
            averages,
            points,
            time: 0.0,
        })
    });
    let init: InitFn = Arc::new(move |_| background);
    ProblemSpec {
        name: "sedov",
        equation: Equation::euler(1.4),
        x_min: -2.0,
        x_max: 2.0,
        boundary: Boundary::Outflow,
        t_final: 1e-3,
        default_n: 801,
        cfl: [0.1, 0.4, 0.3, 0.25],
        init,
        special_init: Some(special),
        reference: Reference::None,
    }
}

/// Woodward-Colella blast-wave interaction: two strong shocks in a closed
/// tube with reflecting walls.
pub fn blast_wave() -> ProblemSpec {
    let init: InitFn = Arc::new(|x| {
        let p = if x < 0.1 {
            1000.0
        } else if x < 0.9 {
            0.01
        } else {
            100.0
        };
        EulerPrimitive::new(1.0, 0.0, p).conserved(1.4)
    });
    ProblemSpec {
        name: "blast_wave",
        equation: Equation::euler(1.4),
        x_min: 0.0,
        x_max: 1.0,
        boundary: Boundary::Reflective,
        t_final: 0.038,
        default_n: 800,
        cfl: [0.3, 0.4, 0.4, 0.35],
        init,
        special_init: None,
        reference: Reference::FineMeshSelf { n: 1600 },
    }
}

/// Shu-Osher shock / entropy-wave interaction.
pub fn shu_osher() -> ProblemSpec {
    let init: InitFn = Arc::new(|x| {
        if x < -4.0 {
            EulerPrimitive::new(3.857143, 2.629369, 10.33333).conserved(1.4)
        } else {
            EulerPrimitive::new(1.0 + 0.2 * (5.0 * x).sin(), 0.0, 1.0).conserved(1.4)
        }
    });
    ProblemSpec {
        name: "shu_osher",
        equation: Equation::euler(1.4),
        x_min: -5.0,
        x_max: 5.0,
        boundary: Boundary::Outflow,
        t_final: 1.8,
        default_n: 400,
        cfl: [0.3, 0.3, 0.3, 0.3],
        init,
        special_init: None,
        reference: Reference::FineMeshSelf { n: 4000 },
    }
}

pub fn all_names() -> &'static [&'static str] {
    &[
        "advection",
        "advection_sine",
        "burgers_square",
        "euler_accuracy",
        "double_rarefaction",
        "leblanc",
        "sedov",
        "blast_wave",
        "shu_osher",
    ]
}

pub fn by_name(name: &str) -> Option<ProblemSpec> {
    match name {
        "advection" => Some(advection_profile()),
        "advection_sine" => Some(advection_sine()),
        "burgers_square" => Some(burgers_square()),
        "euler_accuracy" => Some(euler_accuracy()),
        "double_rarefaction" => Some(double_rarefaction()),
        "leblanc" => Some(leblanc()),
        "sedov" => Some(sedov()),
        "blast_wave" => Some(blast_wave()),
        "shu_osher" => Some(shu_osher()),
        _ => None,
    }
}
