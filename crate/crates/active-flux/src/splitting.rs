//! Right-hand sides for the point-value update: Jacobian splitting and flux
//! vector splittings assembled with the upwind-biased stencil derivatives.

use crate::equations::{Conserved, Equation};
use crate::error::{Error, Result};
use crate::reconstruction::{
    cell_center_from_simpson, deriv_minus_average, deriv_plus_average, flux_deriv_minus,
    flux_deriv_plus, power_law_derivs_vec, simpson_average, CellTriple,
};

/// Selector for the point-value update.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplittingKind {
    /// Jacobian splitting J = J^+ + J^- by eigenvalue sign.
    Js,
    /// Local Lax-Friedrichs (Rusanov) flux vector splitting.
    LlfFvs,
    /// Steger-Warming / upwind flux vector splitting F^± = (F ± |J| U)/2.
    SwFvs,
    /// Van Leer-Hänel Mach-number splitting; Euler only.
    VhFvs,
}

impl SplittingKind {
    pub fn parse(name: &str) -> Option<SplittingKind> {
        match name {
            "js" => Some(SplittingKind::Js),
            "llf" => Some(SplittingKind::LlfFvs),
            "sw" => Some(SplittingKind::SwFvs),
            "vh" => Some(SplittingKind::VhFvs),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SplittingKind::Js => "js",
            SplittingKind::LlfFvs => "llf",
            SplittingKind::SwFvs => "sw",
            SplittingKind::VhFvs => "vh",
        }
    }

    pub fn validate(&self, eq: &Equation) -> Result<()> {
        if matches!(self, SplittingKind::VhFvs) && eq.is_scalar() {
            return Err(Error::Config(
                "the van Leer-Hänel splitting is defined only for the Euler equations".into(),
            ));
        }
        Ok(())
    }
}

/// A sign-definite flux split F = F^+ + F^-.
#[derive(Clone, Copy, Debug)]
pub struct SplitFluxPair {
    pub plus: Conserved,
    pub minus: Conserved,
}

/// LLF splitting F^± = (F(U) ± alpha U) / 2; `alpha` must dominate the
/// spectral radius across the stencil the split is used on.
pub fn split_llf(eq: &Equation, u: Conserved, alpha: f64) -> Result<SplitFluxPair> {
    let f = eq.flux(u)?;
    Ok(SplitFluxPair {
        plus: 0.5 * (f + alpha * u),
        minus: 0.5 * (f - alpha * u),
    })
}

/// Steger-Warming splitting. For Euler this is the explicit closed form
/// obtained from the homogeneity property F = J U; for scalar equations it
/// is the generic upwind splitting (f(u) ± |f'(u)| u) / 2.
pub fn split_sw(eq: &Equation, u: Conserved) -> Result<SplitFluxPair> {
    match eq {
        Equation::Euler { gamma } => {
            let prim = eq.primitive(u)?;
            if !(prim.p > 0.0) {
                return Err(Error::Domain(format!(
                    "Steger-Warming splitting needs positive pressure, got {}",
                    prim.p
                )));
            }
            let g = *gamma;
            let a = prim.sound_speed(g);
            let v = prim.v;
            let lam = [v, v + a, v - a];
            let part = |clamp: fn(f64) -> f64| -> Conserved {
                let l1 = clamp(lam[0]);
                let l2 = clamp(lam[1]);
                let l3 = clamp(lam[2]);
                let alpha = 2.0 * (g - 1.0) * l1 + l2 + l3;
                let c = prim.rho / (2.0 * g);
                Conserved::euler(
                    c * alpha,
                    c * (alpha * v + a * (l2 - l3)),
                    c * (0.5 * alpha * v * v + a * v * (l2 - l3) + a * a / (g - 1.0) * (l2 + l3)),
                )
            };
            Ok(SplitFluxPair {
                plus: part(|l| l.max(0.0)),
                minus: part(|l| l.min(0.0)),
            })
        }
        _ => {
            let f = eq.flux(u)?;
            let j = eq.eigenvalues(u)?[0];
            let w = u.as_scalar();
            Ok(SplitFluxPair {
                plus: Conserved::scalar(0.5 * (f.as_scalar() + j.abs() * w)),
                minus: Conserved::scalar(0.5 * (f.as_scalar() - j.abs() * w)),
            })
        }
    }
}

/// Van Leer-Hänel splitting based on the Mach number. For |M| >= 1 the flux
/// is fully one-sided, which keeps the mass flux C0-continuous at |M| = 1.
pub fn split_vh(eq: &Equation, u: Conserved) -> Result<SplitFluxPair> {
    let gamma = match eq {
        Equation::Euler { gamma } => *gamma,
        _ => {
            return Err(Error::Config(
                "the van Leer-Hänel splitting is defined only for the Euler equations".into(),
            ))
        }
    };
    let prim = eq.primitive(u)?;
    if !(prim.p > 0.0) {
        return Err(Error::Domain(format!(
            "van Leer-Hänel splitting needs positive pressure, got {}",
            prim.p
        )));
    }
    let f = eq.flux(u)?;
    let mach = prim.mach(gamma);
    if mach >= 1.0 {
        return Ok(SplitFluxPair {
            plus: f,
            minus: Conserved::ZERO,
        });
    }
    if mach <= -1.0 {
        return Ok(SplitFluxPair {
            plus: Conserved::ZERO,
            minus: f,
        });
    }
    let a = prim.sound_speed(gamma);
    let h = prim.enthalpy(gamma);
    let mass = |sign: f64| sign * 0.25 * prim.rho * a * (mach + sign) * (mach + sign);
    let p_split = |sign: f64| 0.5 * (1.0 + sign * gamma * mach) * prim.p;
    let side = |sign: f64| {
        let m = mass(sign);
        Conserved::euler(m, m * prim.v + p_split(sign), m * h)
    };
    Ok(SplitFluxPair {
        plus: side(1.0),
        minus: side(-1.0),
    })
}

/// Evaluate the configured splitting at one state. `alpha` is consumed by
/// the LLF splitting only.
pub fn split(
    eq: &Equation,
    kind: SplittingKind,
    u: Conserved,
    alpha: f64,
) -> Result<SplitFluxPair> {
    match kind {
        SplittingKind::Js => Err(Error::Config(
            "Jacobian splitting has no split flux; use point_rhs_js".into(),
        )),
        SplittingKind::LlfFvs => split_llf(eq, u, alpha),
        SplittingKind::SwFvs => split_sw(eq, u),
        SplittingKind::VhFvs => split_vh(eq, u),
    }
}

/// The five states around interface i+1/2 entering the point update:
/// U_{i-1/2}, Ubar_i, U_{i+1/2}, Ubar_{i+1}, U_{i+3/2}.
#[derive(Clone, Copy, Debug)]
pub struct PointWindow {
    pub pt_left: Conserved,
    pub avg_left: Conserved,
    pub pt_mid: Conserved,
    pub avg_right: Conserved,
    pub pt_right: Conserved,
    pub dx_left: f64,
    pub dx_right: f64,
}

impl PointWindow {
    /// Simpson cell-center values of the two adjacent cells.
    pub fn simpson_centers(&self) -> (Conserved, Conserved) {
        (
            cell_center_from_simpson(self.pt_left, self.avg_left, self.pt_mid),
            cell_center_from_simpson(self.pt_mid, self.avg_right, self.pt_right),
        )
    }
}

/// Stencil wave-speed bound for the LLF splitting: the largest |lambda|
/// over the five states U_{i-1/2}, U_i, U_{i+1/2}, U_{i+1}, U_{i+3/2}.
pub fn llf_alpha_stencil(eq: &Equation, states: &[Conserved; 5]) -> Result<f64> {
    let mut alpha = 0.0f64;
    for u in states {
        alpha = alpha.max(eq.max_wave_speed(*u)?);
    }
    Ok(alpha)
}

/// Jacobian-splitting right-hand side of the point-value update at
/// interface i+1/2: -[J^+(U) D^+ + J^-(U) D^-].
pub fn point_rhs_js(eq: &Equation, w: &PointWindow, power_law: bool) -> Result<Conserved> {
    let m = eq.n_components();
    let left_triple = CellTriple {
        left: w.pt_left,
        mid: w.avg_left,
        right: w.pt_mid,
        dx: w.dx_left,
    };
    let right_triple = CellTriple {
        left: w.pt_mid,
        mid: w.avg_right,
        right: w.pt_right,
        dx: w.dx_right,
    };
    let (d_plus, d_minus) = if power_law {
        let (_, dr) = power_law_derivs_vec(&left_triple, m);
        let (dl, _) = power_law_derivs_vec(&right_triple, m);
        (dr, dl)
    } else {
        (
            deriv_plus_average(&left_triple),
            deriv_minus_average(&right_triple),
        )
    };
    let es = eq.eigensystem(w.pt_mid)?;
    Ok(-(es.jacobian_plus_times(d_plus) + es.jacobian_minus_times(d_minus)))
}

/// Flux-vector-splitting right-hand side at interface i+1/2:
/// -[(D~^+ F^+) + (D~^- F^-)]. The cell-center states must already be
/// admissible (repaired by the caller when limiting is active). For the LLF
/// splitting one alpha per interface stencil is used at all five locations,
/// so the split flux is a single-valued function on the stencil.
pub fn point_rhs_fvs(
    eq: &Equation,
    kind: SplittingKind,
    w: &PointWindow,
    center_left: Conserved,
    center_right: Conserved,
    power_law: bool,
) -> Result<Conserved> {
    let m = eq.n_components();
    let alpha = if kind == SplittingKind::LlfFvs {
        llf_alpha_stencil(
            eq,
            &[w.pt_left, center_left, w.pt_mid, center_right, w.pt_right],
        )?
    } else {
        0.0
    };
    let fp_ll = split(eq, kind, w.pt_left, alpha)?.plus;
    let fp_cl = split(eq, kind, center_left, alpha)?.plus;
    let mid = split(eq, kind, w.pt_mid, alpha)?;
    let fm_cr = split(eq, kind, center_right, alpha)?.minus;
    let fm_rr = split(eq, kind, w.pt_right, alpha)?.minus;

    let d_plus;
    let d_minus;
    if power_law {
        let fbar_left = simpson_average(fp_ll, fp_cl, mid.plus);
        let (_, dr) = power_law_derivs_vec(
            &CellTriple {
                left: fp_ll,
                mid: fbar_left,
                right: mid.plus,
                dx: w.dx_left,
            },
            m,
        );
        d_plus = dr;
        let fbar_right = simpson_average(mid.minus, fm_cr, fm_rr);
        let (dl, _) = power_law_derivs_vec(
            &CellTriple {
                left: mid.minus,
                mid: fbar_right,
                right: fm_rr,
                dx: w.dx_right,
            },
            m,
        );
        d_minus = dl;
    } else {
        d_plus = flux_deriv_plus(&CellTriple {
            left: fp_ll,
            mid: fp_cl,
            right: mid.plus,
            dx: w.dx_left,
        });
        d_minus = flux_deriv_minus(&CellTriple {
            left: mid.minus,
            mid: fm_cr,
            right: fm_rr,
            dx: w.dx_right,
        });
    }
    Ok(-(d_plus + d_minus))
}
