//! In-cell reconstructions and their interface derivatives.
//!
//! Two parabola parametrizations appear in the point-value update: the state
//! parabola matches the two interface values and the cell average, while the
//! flux parabola matches the two interface fluxes and the cell-center flux.
//! The monotone power-law reconstruction replaces the parabola near
//! discontinuities; it is parametrized by the interface values and the cell
//! average and applied componentwise.

use crate::equations::Conserved;

/// Values of one cell used by a reconstruction: left interface, mid value
/// (cell average for the state parabola, cell-center value for the flux
/// parabola), right interface, and the cell width.
#[derive(Clone, Copy, Debug)]
pub struct CellTriple {
    pub left: Conserved,
    pub mid: Conserved,
    pub right: Conserved,
    pub dx: f64,
}

/// Quadratic in the local coordinate xi = x / dx, xi in [-1/2, 1/2]:
/// c0 + c1 xi + c2 xi^2, stored per component.
#[derive(Clone, Copy, Debug)]
pub struct Parabola {
    pub c0: Conserved,
    pub c1: Conserved,
    pub c2: Conserved,
    pub dx: f64,
}

impl Parabola {
    /// Value at local coordinate x in [-dx/2, dx/2].
    pub fn eval(&self, x: f64) -> Conserved {
        let xi = x / self.dx;
        self.c0 + xi * self.c1 + xi * xi * self.c2
    }

    /// Derivative at local coordinate x.
    pub fn deriv(&self, x: f64) -> Conserved {
        let xi = x / self.dx;
        (self.c1 + 2.0 * xi * self.c2) * (1.0 / self.dx)
    }

    /// Exact cell average of the quadratic.
    pub fn average(&self) -> Conserved {
        self.c0 + self.c2 * (1.0 / 12.0)
    }
}

/// Parabola reproducing the interface values and the cell average:
/// evaluates to `left`/`right` at -+dx/2 and integrates to `mid`.
pub fn parabola_from_average(t: &CellTriple) -> Parabola {
    Parabola {
        c0: 0.25 * (6.0 * t.mid - t.left - t.right),
        c1: t.right - t.left,
        c2: -3.0 * (2.0 * t.mid - t.left - t.right),
        dx: t.dx,
    }
}

/// Derivative of the state parabola of cell i at its right interface:
/// (2 U_{i-1/2} - 6 Ubar_i + 4 U_{i+1/2}) / dx. Third-order accurate.
pub fn deriv_plus_average(t: &CellTriple) -> Conserved {
    (2.0 * t.left - 6.0 * t.mid + 4.0 * t.right) * (1.0 / t.dx)
}

/// Derivative of the state parabola of cell i+1 at its left interface:
/// (-4 U_{i+1/2} + 6 Ubar_{i+1} - 2 U_{i+3/2}) / dx.
pub fn deriv_minus_average(t: &CellTriple) -> Conserved {
    (-4.0 * t.left + 6.0 * t.mid - 2.0 * t.right) * (1.0 / t.dx)
}

/// Cell-center value by Simpson's rule: (-U_{i-1/2} + 6 Ubar_i - U_{i+1/2})/4.
pub fn cell_center_from_simpson(left: Conserved, avg: Conserved, right: Conserved) -> Conserved {
    0.25 * (6.0 * avg - left - right)
}

/// Cell average by Simpson's rule from interface and center values:
/// (F_{i-1/2} + 4 F_i + F_{i+1/2}) / 6.
pub fn simpson_average(left: Conserved, center: Conserved, right: Conserved) -> Conserved {
    (left + 4.0 * center + right) * (1.0 / 6.0)
}

/// Derivative of the flux parabola (mid is the cell-center value) at the
/// right interface: (F_{i-1/2} - 4 F_i + 3 F_{i+1/2}) / dx.
pub fn flux_deriv_plus(t: &CellTriple) -> Conserved {
    (t.left - 4.0 * t.mid + 3.0 * t.right) * (1.0 / t.dx)
}

/// Derivative of the flux parabola at the left interface:
/// (-3 F_{i+1/2} + 4 F_{i+1} - F_{i+3/2}) / dx.
pub fn flux_deriv_minus(t: &CellTriple) -> Conserved {
    (-3.0 * t.left + 4.0 * t.mid - t.right) * (1.0 / t.dx)
}

/// Classification of the in-cell profile for the derivative limiter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PowerLawClass {
    /// r > 2: u(x) = u_l + (u_r - u_l) xi^r.
    SteepRight(f64),
    /// 0 < r < 1/2: u(x) = u_r - (u_r - u_l) (1 - xi)^(1/r).
    SteepLeft(f64),
    /// Monotone parabola (1/2 < r < 2), unavoidable extremum, zero
    /// denominator, or r outside [1/50, 50]: keep the parabola.
    Parabolic,
}

/// Ratio r = (u_r - ubar) / (ubar - u_l) and its limiter classification.
pub fn classify_power_law(left: f64, avg: f64, right: f64) -> PowerLawClass {
    let denom = avg - left;
    if denom == 0.0 {
        return PowerLawClass::Parabolic;
    }
    let r = (right - avg) / denom;
    if r > 2.0 && r <= 50.0 {
        PowerLawClass::SteepRight(r)
    } else if (0.02..0.5).contains(&r) {
        PowerLawClass::SteepLeft(r)
    } else {
        PowerLawClass::Parabolic
    }
}

/// The raw ratio r; infinite if the denominator vanishes.
pub fn power_law_ratio(left: f64, avg: f64, right: f64) -> f64 {
    (right - avg) / (avg - left)
}

/// Interface derivatives (left, right) of the limited reconstruction of one
/// component. Falls back to the average-parametrized parabola outside the
/// power-law applicability window; since a quadratic is determined by its
/// interface values and average, passing the Simpson flux average here
/// reproduces the flux-parabola derivatives exactly.
pub fn power_law_derivs(left: f64, avg: f64, right: f64, dx: f64) -> (f64, f64) {
    match classify_power_law(left, avg, right) {
        PowerLawClass::SteepRight(r) => (0.0, (right - left) * r / dx),
        PowerLawClass::SteepLeft(r) => ((right - left) / (r * dx), 0.0),
        PowerLawClass::Parabolic => (
            (-4.0 * left + 6.0 * avg - 2.0 * right) / dx,
            (2.0 * left - 6.0 * avg + 4.0 * right) / dx,
        ),
    }
}

/// Componentwise power-law derivatives of a cell triple whose mid entry is
/// the cell average (state triple for JS, Simpson flux average for FVS).
pub fn power_law_derivs_vec(t: &CellTriple, m: usize) -> (Conserved, Conserved) {
    let mut dl = Conserved::ZERO;
    let mut dr = Conserved::ZERO;
    for c in 0..m {
        let (l, r) = power_law_derivs(t.left.0[c], t.mid.0[c], t.right.0[c], t.dx);
        dl.0[c] = l;
        dr.0[c] = r;
    }
    (dl, dr)
}

/// Pointwise evaluation of the limited reconstruction of one component at
/// local coordinate xi in [0, 1] (left to right interface). Used by tests
/// and the verification suites.
pub fn power_law_eval(left: f64, avg: f64, right: f64, xi: f64) -> f64 {
    match classify_power_law(left, avg, right) {
        PowerLawClass::SteepRight(r) => left + (right - left) * xi.powf(r),
        PowerLawClass::SteepLeft(r) => right - (right - left) * (1.0 - xi).powf(1.0 / r),
        PowerLawClass::Parabolic => {
            let t = CellTriple {
                left: Conserved::scalar(left),
                mid: Conserved::scalar(avg),
                right: Conserved::scalar(right),
                dx: 1.0,
            };
            parabola_from_average(&t).eval(xi - 0.5).as_scalar()
        }
    }
}
