//! Uniform 1D grid, the dual degrees of freedom of the active flux method
//! (cell averages plus interface point values), boundary extension, norms,
//! and conservation accounting.

use crate::equations::{Conserved, Equation, MAX_COMPONENTS};
use crate::error::{Error, Result};

/// Uniform grid on [x_min, x_max] with `n_cells` cells.
///
/// Cell `i` spans [x_min + i dx, x_min + (i+1) dx]; interface `j` sits at
/// x_min + j dx, j = 0..=n_cells.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid1d {
    pub x_min: f64,
    pub x_max: f64,
    pub n_cells: usize,
    pub dx: f64,
}

impl Grid1d {
    pub fn new(x_min: f64, x_max: f64, n_cells: usize) -> Result<Self> {
        if !(x_max > x_min) || n_cells == 0 {
            return Err(Error::Config(format!(
                "invalid grid: [{x_min}, {x_max}] with {n_cells} cells"
            )));
        }
        Ok(Grid1d {
            x_min,
            x_max,
            n_cells,
            dx: (x_max - x_min) / n_cells as f64,
        })
    }

    pub fn cell_center(&self, i: usize) -> f64 {
        self.x_min + (i as f64 + 0.5) * self.dx
    }

    pub fn interface(&self, j: usize) -> f64 {
        self.x_min + j as f64 * self.dx
    }
}

/// Boundary treatment for ghost data.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary {
    /// Identifies point index 0 with index N.
    Periodic,
    /// Copies the nearest interior value.
    Outflow,
    /// Mirrors with negated momentum (Euler); applies to averages and points.
    Reflective,
}

/// The active flux degrees of freedom: N cell averages and N+1 interface
/// point values.
#[derive(Clone, Debug, PartialEq)]
pub struct AfState {
    pub averages: Vec<Conserved>,
    pub points: Vec<Conserved>,
    pub time: f64,
}

impl AfState {
    pub fn n_cells(&self) -> usize {
        self.averages.len()
    }

    pub fn is_finite(&self) -> bool {
        self.averages.iter().all(|u| u.is_finite()) && self.points.iter().all(|u| u.is_finite())
    }

    /// Linear combination a*x + b*y of averages, points, and time.
    pub fn linear_comb(a: f64, x: &AfState, b: f64, y: &AfState) -> AfState {
        debug_assert_eq!(x.averages.len(), y.averages.len());
        AfState {
            averages: x
                .averages
                .iter()
                .zip(&y.averages)
                .map(|(u, w)| a * *u + b * *w)
                .collect(),
            points: x
                .points
                .iter()
                .zip(&y.points)
                .map(|(u, w)| a * *u + b * *w)
                .collect(),
            time: a * x.time + b * y.time,
        }
    }

    /// Componentwise (min, max) over averages and points combined.
    pub fn component_range(&self, m: usize) -> ([f64; MAX_COMPONENTS], [f64; MAX_COMPONENTS]) {
        let mut lo = [f64::INFINITY; MAX_COMPONENTS];
        let mut hi = [f64::NEG_INFINITY; MAX_COMPONENTS];
        for u in self.averages.iter().chain(self.points.iter()) {
            for c in 0..m {
                lo[c] = lo[c].min(u.0[c]);
                hi[c] = hi[c].max(u.0[c]);
            }
        }
        (lo, hi)
    }
}

/// 5-point Gauss-Legendre rule on [-1, 1]: exact for polynomials up to
/// degree 9, so third-order initialization is never quadrature-limited.
pub fn gauss5() -> [(f64, f64); 5] {
    let s = (10.0f64 / 7.0).sqrt();
    let x2 = (5.0 - 2.0 * s).sqrt() / 3.0;
    let x4 = (5.0 + 2.0 * s).sqrt() / 3.0;
    let w70 = 70.0f64.sqrt();
    let w2 = (322.0 + 13.0 * w70) / 900.0;
    let w4 = (322.0 - 13.0 * w70) / 900.0;
    [
        (0.0, 128.0 / 225.0),
        (-x2, w2),
        (x2, w2),
        (-x4, w4),
        (x4, w4),
    ]
}

/// Cell average of `f` over [a, b] by 5-point Gauss-Legendre.
pub fn cell_average_of(f: &dyn Fn(f64) -> Conserved, a: f64, b: f64) -> Conserved {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = Conserved::ZERO;
    for (node, weight) in gauss5() {
        acc += weight * f(mid + half * node);
    }
    acc * 0.5
}

/// Discrete initialization: point values sampled exactly at the interfaces,
/// averages by 5-point Gauss quadrature per cell.
pub fn init_state(
    eq: &Equation,
    grid: &Grid1d,
    init: &dyn Fn(f64) -> Conserved,
) -> Result<AfState> {
    let n = grid.n_cells;
    let points: Vec<Conserved> = (0..=n).map(|j| init(grid.interface(j))).collect();
    let averages: Vec<Conserved> = (0..n)
        .map(|i| cell_average_of(&init, grid.interface(i), grid.interface(i + 1)))
        .collect();
    for (i, u) in averages.iter().enumerate() {
        if !u.is_finite() || (!eq.is_scalar() && !eq.is_admissible(*u)) {
            return Err(Error::Domain(format!(
                "initial cell average {i} is inadmissible: {:?}",
                u.0
            )));
        }
    }
    for (j, u) in points.iter().enumerate() {
        if !u.is_finite() || (!eq.is_scalar() && !eq.is_admissible(*u)) {
            return Err(Error::Domain(format!(
                "initial point value {j} is inadmissible: {:?}",
                u.0
            )));
        }
    }
    Ok(AfState {
        averages,
        points,
        time: 0.0,
    })
}

/// Global bounds of the discrete initial data, over averages and points
/// (component 0). These define the scalar maximum principle.
pub fn discrete_scalar_bounds(state: &AfState) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for u in state.averages.iter().chain(state.points.iter()) {
        lo = lo.min(u.as_scalar());
        hi = hi.max(u.as_scalar());
    }
    (lo, hi)
}

/// Array extended by ghost entries on both sides, indexed by a signed
/// offset into the interior numbering.
#[derive(Clone, Debug)]
pub struct HaloArray {
    data: Vec<Conserved>,
    halo: usize,
}

impl HaloArray {
    pub fn at(&self, i: isize) -> Conserved {
        self.data[(i + self.halo as isize) as usize]
    }

    pub fn interior_len(&self) -> usize {
        self.data.len() - 2 * self.halo
    }
}

/// Ghost-extended cell averages. `halo <= 2` covers every stencil in the
/// scheme.
pub fn ghost_averages(
    eq: &Equation,
    state: &AfState,
    boundary: Boundary,
    halo: usize,
) -> HaloArray {
    let n = state.averages.len() as isize;
    let h = halo as isize;
    let mut data = Vec::with_capacity((n + 2 * h) as usize);
    for i in -h..n + h {
        let u = match boundary {
            Boundary::Periodic => state.averages[(((i % n) + n) % n) as usize],
            Boundary::Outflow => state.averages[i.clamp(0, n - 1) as usize],
            Boundary::Reflective => {
                if i < 0 {
                    eq.reflect(state.averages[(-1 - i) as usize])
                } else if i >= n {
                    eq.reflect(state.averages[(2 * n - 1 - i) as usize])
                } else {
                    state.averages[i as usize]
                }
            }
        };
        data.push(u);
    }
    HaloArray { data, halo }
}

/// Ghost-extended point values. Periodic wrapping uses period N, which is
/// consistent with the identification `points[0] == points[N]`.
pub fn ghost_points(eq: &Equation, state: &AfState, boundary: Boundary, halo: usize) -> HaloArray {
    let n = (state.points.len() - 1) as isize; // interfaces 0..=n
    let h = halo as isize;
    let mut data = Vec::with_capacity((n + 1 + 2 * h) as usize);
    for j in -h..n + 1 + h {
        let u = match boundary {
            Boundary::Periodic => state.points[(((j % n) + n) % n) as usize],
            Boundary::Outflow => state.points[j.clamp(0, n) as usize],
            Boundary::Reflective => {
                if j < 0 {
                    eq.reflect(state.points[(-j) as usize])
                } else if j > n {
                    eq.reflect(state.points[(2 * n - j) as usize])
                } else {
                    state.points[j as usize]
                }
            }
        };
        data.push(u);
    }
    HaloArray { data, halo }
}

/// Sum of cell averages times dx, the discrete conserved total.
pub fn total_mass(state: &AfState, dx: f64) -> Conserved {
    let mut acc = Conserved::ZERO;
    for u in &state.averages {
        acc += *u;
    }
    acc * dx
}

/// Per-component l1 norm of the difference between the cell averages and a
/// reference given as cell averages.
pub fn l1_error(state: &AfState, reference: &[Conserved], m: usize) -> [f64; MAX_COMPONENTS] {
    assert_eq!(state.averages.len(), reference.len());
    let n = state.averages.len() as f64;
    let mut err = [0.0; MAX_COMPONENTS];
    for (u, r) in state.averages.iter().zip(reference) {
        for c in 0..m {
            err[c] += (u.0[c] - r.0[c]).abs();
        }
    }
    for e in err.iter_mut() {
        *e /= n;
    }
    err
}

/// Reference cell averages of a pointwise function, by Gauss quadrature.
pub fn reference_averages(grid: &Grid1d, f: &dyn Fn(f64) -> Conserved) -> Vec<Conserved> {
    (0..grid.n_cells)
        .map(|i| cell_average_of(f, grid.interface(i), grid.interface(i + 1)))
        .collect()
}
