//! Scaling limiter for the point-value update: a first-order staggered LLF
//! fallback scheme and convex blends that enforce the scalar maximum
//! principle or Euler positivity. Also repairs inadmissible Simpson
//! cell-center values used by the FVS point update.

use crate::bp_average::EPS_FLOOR;
use crate::equations::{Conserved, Equation};
use crate::error::{Error, Result};

/// LLF flux between two point values, together with the wave-speed bound
/// alpha_i = max of the two spectral radii.
pub fn llf_point_flux(
    eq: &Equation,
    u_left: Conserved,
    u_right: Conserved,
) -> Result<(Conserved, f64)> {
    let alpha = eq.max_wave_speed(u_left)?.max(eq.max_wave_speed(u_right)?);
    let f = 0.5 * (eq.flux(u_left)? + eq.flux(u_right)?) - 0.5 * alpha * (u_right - u_left);
    Ok((f, alpha))
}

/// First-order LLF update of the point value at interface i+1/2, viewing
/// the point values as averages on a staggered mesh. BP under
/// dt <= (dx_i + dx_{i+1}) / (4 max(alpha_i, alpha_{i+1})).
pub fn llf_point_update(
    eq: &Equation,
    u_left: Conserved,
    u_mid: Conserved,
    u_right: Conserved,
    dx_left: f64,
    dx_right: f64,
    dt: f64,
) -> Result<Conserved> {
    let (f_left, _) = llf_point_flux(eq, u_left, u_mid)?;
    let (f_right, _) = llf_point_flux(eq, u_mid, u_right)?;
    Ok(u_mid - (2.0 * dt / (dx_left + dx_right)) * (f_right - f_left))
}

/// Blend a high-order scalar point value toward the LLF fallback until it
/// lies inside [lo, hi]. Returns (theta, limited value); an already
/// admissible u_high is returned unchanged.
pub fn blend_scalar_point(u_high: f64, u_low: f64, lo: f64, hi: f64) -> (f64, f64) {
    if u_high >= lo && u_high <= hi {
        return (1.0, u_high);
    }
    if !u_high.is_finite() {
        return (0.0, u_low);
    }
    let theta = if u_high < lo {
        (u_low - lo) / (u_low - u_high)
    } else {
        (hi - u_low) / (u_high - u_low)
    };
    let theta = theta.clamp(0.0, 1.0);
    let blended = theta * u_high + (1.0 - theta) * u_low;
    // the exact blend lands on the bound; guard the last ulp of rounding
    (theta, blended.clamp(lo, hi))
}

/// Two-step Euler blend: density first (component-only), then a full-vector
/// blend restoring pressure positivity, justified by the concavity of the
/// pressure. `u_low` must be admissible.
///
/// Returns (theta_star, theta_star_star, limited state).
pub fn blend_euler_point(
    eq: &Equation,
    u_high: Conserved,
    u_low: Conserved,
) -> Result<(f64, f64, Conserved)> {
    if eq.is_admissible(u_high) {
        return Ok((1.0, 1.0, u_high));
    }
    if !eq.is_admissible(u_low) {
        return Err(Error::Domain(format!(
            "fallback state for the point limiter is inadmissible: {:?}",
            u_low.0
        )));
    }
    if !u_high.is_finite() {
        return Ok((0.0, 0.0, u_low));
    }
    let eps_rho = EPS_FLOOR.min(u_low.density());
    let theta_star = if u_high.density() < eps_rho {
        ((u_low.density() - eps_rho) / (u_low.density() - u_high.density())).clamp(0.0, 1.0)
    } else {
        1.0
    };
    let mut u_star = u_high;
    u_star.0[0] = theta_star * u_high.density() + (1.0 - theta_star) * u_low.density();

    let p_low = eq.pressure(u_low)?;
    let eps_p = EPS_FLOOR.min(p_low);
    let p_star = eq.pressure(u_star)?;
    let theta_ss = if p_star < eps_p {
        ((p_low - eps_p) / (p_low - p_star)).clamp(0.0, 1.0)
    } else {
        1.0
    };
    let limited = theta_ss * u_star + (1.0 - theta_ss) * u_low;
    Ok((theta_star, theta_ss, limited))
}

/// Repair an inadmissible Simpson cell-center value by blending toward the
/// (admissible) cell average: bound clipping for scalar equations, the
/// two-step density/pressure blend for Euler. Returns the repaired value
/// and whether anything changed.
pub fn repair_cell_center(
    eq: &Equation,
    center: Conserved,
    average: Conserved,
) -> Result<(Conserved, bool)> {
    if eq.is_admissible(center) {
        return Ok((center, false));
    }
    match eq {
        Equation::Euler { .. } => {
            let (_, _, repaired) = blend_euler_point(eq, center, average)?;
            Ok((repaired, true))
        }
        _ => {
            let b = eq.scalar_bounds().unwrap();
            Ok((
                Conserved::scalar(center.as_scalar().clamp(b.lo, b.hi)),
                true,
            ))
        }
    }
}
