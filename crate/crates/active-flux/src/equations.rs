//! Conserved systems: linear advection, Burgers, and the 1D compressible
//! Euler equations with a perfect-gas EOS.
//!
//! Every operation here is a pure function of its inputs and safe to call
//! concurrently.

use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Number of components of the largest supported system (Euler).
pub const MAX_COMPONENTS: usize = 3;

/// Conserved state vector with fixed capacity.
///
/// Scalar systems use component 0 and keep the remaining lanes at zero;
/// the Euler equations use (density, momentum, total energy).
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Conserved(pub [f64; MAX_COMPONENTS]);

impl Conserved {
    pub const ZERO: Conserved = Conserved([0.0; MAX_COMPONENTS]);

    pub fn scalar(u: f64) -> Self {
        Conserved([u, 0.0, 0.0])
    }

    pub fn euler(density: f64, momentum: f64, energy: f64) -> Self {
        Conserved([density, momentum, energy])
    }

    /// Component 0, the value of a scalar conservation law.
    pub fn as_scalar(&self) -> f64 {
        self.0[0]
    }

    pub fn density(&self) -> f64 {
        self.0[0]
    }

    pub fn momentum(&self) -> f64 {
        self.0[1]
    }

    pub fn energy(&self) -> f64 {
        self.0[2]
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    /// First `m` components as a slice.
    pub fn components(&self, m: usize) -> &[f64] {
        &self.0[..m]
    }

    pub fn map2(self, other: Conserved, f: impl Fn(f64, f64) -> f64) -> Conserved {
        Conserved([
            f(self.0[0], other.0[0]),
            f(self.0[1], other.0[1]),
            f(self.0[2], other.0[2]),
        ])
    }
}

impl Add for Conserved {
    type Output = Conserved;
    fn add(self, o: Conserved) -> Conserved {
        self.map2(o, |a, b| a + b)
    }
}

impl Sub for Conserved {
    type Output = Conserved;
    fn sub(self, o: Conserved) -> Conserved {
        self.map2(o, |a, b| a - b)
    }
}

impl Neg for Conserved {
    type Output = Conserved;
    fn neg(self) -> Conserved {
        Conserved([-self.0[0], -self.0[1], -self.0[2]])
    }
}

impl Mul<f64> for Conserved {
    type Output = Conserved;
    fn mul(self, s: f64) -> Conserved {
        Conserved([self.0[0] * s, self.0[1] * s, self.0[2] * s])
    }
}

impl Mul<Conserved> for f64 {
    type Output = Conserved;
    fn mul(self, v: Conserved) -> Conserved {
        v * self
    }
}

impl Div<f64> for Conserved {
    type Output = Conserved;
    fn div(self, s: f64) -> Conserved {
        Conserved([self.0[0] / s, self.0[1] / s, self.0[2] / s])
    }
}

impl AddAssign for Conserved {
    fn add_assign(&mut self, o: Conserved) {
        *self = *self + o;
    }
}

/// Closed global bounds for a scalar maximum principle. Determined from the
/// discrete initial data (averages and point values).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScalarBounds {
    pub lo: f64,
    pub hi: f64,
}

impl ScalarBounds {
    pub const UNBOUNDED: ScalarBounds = ScalarBounds {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    pub fn contains(&self, u: f64) -> bool {
        self.lo <= u && u <= self.hi
    }
}

/// Primitive variables of the Euler equations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EulerPrimitive {
    pub rho: f64,
    pub v: f64,
    pub p: f64,
}

impl EulerPrimitive {
    pub fn new(rho: f64, v: f64, p: f64) -> Self {
        EulerPrimitive { rho, v, p }
    }

    pub fn conserved(&self, gamma: f64) -> Conserved {
        let energy = self.p / (gamma - 1.0) + 0.5 * self.rho * self.v * self.v;
        Conserved::euler(self.rho, self.rho * self.v, energy)
    }

    pub fn sound_speed(&self, gamma: f64) -> f64 {
        (gamma * self.p / self.rho).sqrt()
    }

    /// Specific enthalpy H = (E + p) / rho.
    pub fn enthalpy(&self, gamma: f64) -> f64 {
        let e = self.p / ((gamma - 1.0) * self.rho);
        0.5 * self.v * self.v + e + self.p / self.rho
    }

    pub fn mach(&self, gamma: f64) -> f64 {
        self.v / self.sound_speed(gamma)
    }
}

/// The conservation law being solved.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Equation {
    /// u_t + (speed * u)_x = 0.
    Advection { speed: f64, bounds: ScalarBounds },
    /// u_t + (u^2 / 2)_x = 0.
    Burgers { bounds: ScalarBounds },
    /// Compressible Euler equations with perfect-gas EOS p = (gamma-1) rho e.
    Euler { gamma: f64 },
}

impl Equation {
    pub fn advection(speed: f64) -> Self {
        Equation::Advection {
            speed,
            bounds: ScalarBounds::UNBOUNDED,
        }
    }

    pub fn burgers() -> Self {
        Equation::Burgers {
            bounds: ScalarBounds::UNBOUNDED,
        }
    }

    /// Panics if `gamma <= 1`.
    pub fn euler(gamma: f64) -> Self {
        assert!(gamma > 1.0, "adiabatic index must satisfy gamma > 1");
        Equation::Euler { gamma }
    }

    pub fn n_components(&self) -> usize {
        match self {
            Equation::Euler { .. } => 3,
            _ => 1,
        }
    }

    pub fn is_scalar(&self) -> bool {
        !matches!(self, Equation::Euler { .. })
    }

    pub fn gamma(&self) -> Option<f64> {
        match self {
            Equation::Euler { gamma } => Some(*gamma),
            _ => None,
        }
    }

    pub fn scalar_bounds(&self) -> Option<ScalarBounds> {
        match self {
            Equation::Advection { bounds, .. } | Equation::Burgers { bounds } => Some(*bounds),
            Equation::Euler { .. } => None,
        }
    }

    /// Returns a copy with the global maximum-principle bounds installed.
    /// No effect on Euler.
    pub fn with_scalar_bounds(self, lo: f64, hi: f64) -> Self {
        let b = ScalarBounds { lo, hi };
        match self {
            Equation::Advection { speed, .. } => Equation::Advection { speed, bounds: b },
            Equation::Burgers { .. } => Equation::Burgers { bounds: b },
            e @ Equation::Euler { .. } => e,
        }
    }

    /// Physical flux F(U).
    pub fn flux(&self, u: Conserved) -> Result<Conserved> {
        match self {
            Equation::Advection { speed, .. } => Ok(Conserved::scalar(speed * u.as_scalar())),
            Equation::Burgers { .. } => {
                let w = u.as_scalar();
                Ok(Conserved::scalar(0.5 * w * w))
            }
            Equation::Euler { gamma } => {
                let rho = u.density();
                if !(rho > 0.0) || !u.is_finite() {
                    return Err(Error::Domain(format!(
                        "flux evaluation needs positive finite density, got state {:?}",
                        u.0
                    )));
                }
                let v = u.momentum() / rho;
                let p = (gamma - 1.0) * (u.energy() - 0.5 * u.momentum() * v);
                Ok(Conserved::euler(
                    u.momentum(),
                    u.momentum() * v + p,
                    (u.energy() + p) * v,
                ))
            }
        }
    }

    /// Pressure recovered from a conserved Euler state. The result may be
    /// non-positive; only `rho <= 0` is a domain error.
    pub fn pressure(&self, u: Conserved) -> Result<f64> {
        match self {
            Equation::Euler { gamma } => {
                let rho = u.density();
                if !(rho > 0.0) {
                    return Err(Error::Domain(format!(
                        "pressure undefined for non-positive density {rho}"
                    )));
                }
                Ok((gamma - 1.0) * (u.energy() - 0.5 * u.momentum() * u.momentum() / rho))
            }
            _ => Err(Error::Domain(
                "pressure is only defined for the Euler equations".into(),
            )),
        }
    }

    pub fn primitive(&self, u: Conserved) -> Result<EulerPrimitive> {
        match self {
            Equation::Euler { .. } => {
                let rho = u.density();
                if !(rho > 0.0) {
                    return Err(Error::Domain(format!(
                        "primitive conversion needs positive density, got {rho}"
                    )));
                }
                let v = u.momentum() / rho;
                let p = self.pressure(u)?;
                Ok(EulerPrimitive { rho, v, p })
            }
            _ => Err(Error::Domain(
                "primitive variables are only defined for the Euler equations".into(),
            )),
        }
    }

    pub fn sound_speed(&self, u: Conserved) -> Result<f64> {
        match self {
            Equation::Euler { gamma } => {
                let prim = self.primitive(u)?;
                if !(prim.p > 0.0) {
                    return Err(Error::Domain(format!(
                        "sound speed undefined for non-positive pressure {}",
                        prim.p
                    )));
                }
                Ok(prim.sound_speed(*gamma))
            }
            _ => Err(Error::Domain(
                "sound speed is only defined for the Euler equations".into(),
            )),
        }
    }

    /// Eigenvalues of dF/dU in ascending order; unused lanes stay zero.
    pub fn eigenvalues(&self, u: Conserved) -> Result<[f64; MAX_COMPONENTS]> {
        match self {
            Equation::Advection { speed, .. } => Ok([*speed, 0.0, 0.0]),
            Equation::Burgers { .. } => Ok([u.as_scalar(), 0.0, 0.0]),
            Equation::Euler { gamma } => {
                let prim = self.primitive(u)?;
                if !(prim.p > 0.0) {
                    return Err(Error::Domain(format!(
                        "eigenvalues undefined for non-positive pressure {}",
                        prim.p
                    )));
                }
                let a = prim.sound_speed(*gamma);
                Ok([prim.v - a, prim.v, prim.v + a])
            }
        }
    }

    /// Spectral radius of dF/dU.
    pub fn max_wave_speed(&self, u: Conserved) -> Result<f64> {
        let lam = self.eigenvalues(u)?;
        Ok(lam[..self.n_components()]
            .iter()
            .fold(0.0f64, |m, l| m.max(l.abs())))
    }

    /// Eigendecomposition dF/dU = R diag(lambda) R^{-1}.
    ///
    /// For Euler the right eigenvectors are normalized so that the first row
    /// of R is (1, 1, 1).
    pub fn eigensystem(&self, u: Conserved) -> Result<Eigensystem> {
        match self {
            Equation::Advection { .. } | Equation::Burgers { .. } => {
                let lam = self.eigenvalues(u)?;
                let mut right = [[0.0; 3]; 3];
                let mut left = [[0.0; 3]; 3];
                right[0][0] = 1.0;
                left[0][0] = 1.0;
                Ok(Eigensystem {
                    values: lam,
                    right,
                    left,
                    m: 1,
                })
            }
            Equation::Euler { gamma } => {
                let prim = self.primitive(u)?;
                if !(prim.p > 0.0) {
                    return Err(Error::Domain(format!(
                        "eigensystem undefined for non-positive pressure {}",
                        prim.p
                    )));
                }
                let g = *gamma;
                let a = prim.sound_speed(g);
                let v = prim.v;
                let h = prim.enthalpy(g);
                let values = [v - a, v, v + a];
                let right = [
                    [1.0, 1.0, 1.0],
                    [v - a, v, v + a],
                    [h - v * a, 0.5 * v * v, h + v * a],
                ];
                let gm = g - 1.0;
                let inv2a2 = 0.5 / (a * a);
                let ke = 0.5 * v * v;
                let left = [
                    [
                        inv2a2 * (gm * ke + a * v),
                        inv2a2 * (-gm * v - a),
                        inv2a2 * gm,
                    ],
                    [(a * a - gm * ke) / (a * a), gm * v / (a * a), -gm / (a * a)],
                    [
                        inv2a2 * (gm * ke - a * v),
                        inv2a2 * (-gm * v + a),
                        inv2a2 * gm,
                    ],
                ];
                Ok(Eigensystem {
                    values,
                    right,
                    left,
                    m: 3,
                })
            }
        }
    }

    /// Membership in the admissible set: closed bounds for scalar problems,
    /// strictly positive density and pressure for Euler. Total function.
    pub fn is_admissible(&self, u: Conserved) -> bool {
        match self {
            Equation::Advection { bounds, .. } | Equation::Burgers { bounds } => {
                let w = u.as_scalar();
                w.is_finite() && bounds.contains(w)
            }
            Equation::Euler { gamma } => {
                let rho = u.density();
                if !u.is_finite() || !(rho > 0.0) {
                    return false;
                }
                let p = (gamma - 1.0) * (u.energy() - 0.5 * u.momentum() * u.momentum() / rho);
                p > 0.0
            }
        }
    }

    /// Mirror image of a state at a reflecting wall: momentum is negated for
    /// Euler, scalar states are copied unchanged.
    pub fn reflect(&self, u: Conserved) -> Conserved {
        match self {
            Equation::Euler { .. } => Conserved::euler(u.density(), -u.momentum(), u.energy()),
            _ => u,
        }
    }
}

/// Eigendecomposition of a flux Jacobian, with helpers for applying the
/// sign-split parts J^{+-} = R Lambda^{+-} R^{-1}.
#[derive(Clone, Copy, Debug)]
pub struct Eigensystem {
    pub values: [f64; MAX_COMPONENTS],
    /// Columns are the right eigenvectors.
    pub right: [[f64; MAX_COMPONENTS]; MAX_COMPONENTS],
    /// R^{-1}; rows are the left eigenvectors.
    pub left: [[f64; MAX_COMPONENTS]; MAX_COMPONENTS],
    pub m: usize,
}

impl Eigensystem {
    fn apply(&self, v: Conserved, weight: impl Fn(f64) -> f64) -> Conserved {
        let mut w = [0.0; MAX_COMPONENTS];
        for k in 0..self.m {
            let mut s = 0.0;
            for j in 0..self.m {
                s += self.left[k][j] * v.0[j];
            }
            w[k] = weight(self.values[k]) * s;
        }
        let mut out = [0.0; MAX_COMPONENTS];
        for i in 0..self.m {
            let mut s = 0.0;
            for k in 0..self.m {
                s += self.right[i][k] * w[k];
            }
            out[i] = s;
        }
        Conserved(out)
    }

    /// J^+ v with Lambda^+ = diag(max(lambda, 0)).
    pub fn jacobian_plus_times(&self, v: Conserved) -> Conserved {
        self.apply(v, |l| l.max(0.0))
    }

    /// J^- v with Lambda^- = diag(min(lambda, 0)).
    pub fn jacobian_minus_times(&self, v: Conserved) -> Conserved {
        self.apply(v, |l| l.min(0.0))
    }

    /// |J| v with |Lambda| = Lambda^+ - Lambda^-.
    pub fn jacobian_abs_times(&self, v: Conserved) -> Conserved {
        self.apply(v, |l| l.abs())
    }

    /// J v, reconstructing the full Jacobian action.
    pub fn jacobian_times(&self, v: Conserved) -> Conserved {
        self.apply(v, |l| l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn euler() -> Equation {
        Equation::euler(1.4)
    }

    #[test]
    fn flux_euler_at_rest() {
        // zero velocity: only the pressure term survives, p = (gamma-1) E
        let f = euler().flux(Conserved::euler(1.0, 0.0, 1.0)).unwrap();
        assert_relative_eq!(f.0[0], 0.0);
        assert_relative_eq!(f.0[1], 0.4, epsilon = 1e-15);
        assert_relative_eq!(f.0[2], 0.0);
    }

    #[test]
    fn flux_burgers() {
        let eq = Equation::burgers();
        let f = eq.flux(Conserved::scalar(2.0)).unwrap();
        assert_relative_eq!(f.as_scalar(), 2.0);
    }

    #[test]
    fn flux_euler_moving() {
        // rho=1, v=1, p=1 => E = 0.5 + 1/0.4 = 3, F = (1, 2, 4);
        // the expected triple was recomputed independently before freezing.
        let u = EulerPrimitive::new(1.0, 1.0, 1.0).conserved(1.4);
        assert_relative_eq!(u.energy(), 3.0, epsilon = 1e-14);
        let f = euler().flux(u).unwrap();
        assert_relative_eq!(f.0[0], 1.0, epsilon = 1e-14);
        assert_relative_eq!(f.0[1], 2.0, epsilon = 1e-14);
        assert_relative_eq!(f.0[2], 4.0, epsilon = 1e-14);
    }

    #[test]
    fn flux_rejects_nonpositive_density() {
        assert!(euler().flux(Conserved::euler(-1.0, 0.0, 1.0)).is_err());
        assert!(euler().flux(Conserved::euler(0.0, 0.0, 1.0)).is_err());
    }

    #[test]
    fn eigenvalues_unit_sound_speed() {
        // a = sqrt(gamma p / rho) = 1 by construction
        let u = EulerPrimitive::new(1.0, 0.0, 1.0 / 1.4).conserved(1.4);
        let lam = euler().eigenvalues(u).unwrap();
        assert_relative_eq!(lam[0], -1.0, epsilon = 1e-14);
        assert_relative_eq!(lam[1], 0.0, epsilon = 1e-14);
        assert_relative_eq!(lam[2], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn eigenvalues_scalar() {
        let adv = Equation::advection(1.0);
        assert_eq!(adv.eigenvalues(Conserved::scalar(5.0)).unwrap()[0], 1.0);
        let b = Equation::burgers();
        assert_eq!(b.eigenvalues(Conserved::scalar(-1.0)).unwrap()[0], -1.0);
    }

    #[test]
    fn eigenvalues_mirror_symmetry() {
        let eq = euler();
        let up = EulerPrimitive::new(1.3, 0.7, 2.0).conserved(1.4);
        let um = EulerPrimitive::new(1.3, -0.7, 2.0).conserved(1.4);
        let lp = eq.eigenvalues(up).unwrap();
        let lm = eq.eigenvalues(um).unwrap();
        for k in 0..3 {
            assert_relative_eq!(lp[k], -lm[2 - k], epsilon = 1e-13);
        }
    }

    /// Finite-difference Jacobian of the flux, the independent oracle for the
    /// analytic eigendecomposition.
    fn fd_jacobian(eq: &Equation, u: Conserved) -> [[f64; 3]; 3] {
        let mut jac = [[0.0; 3]; 3];
        for j in 0..3 {
            let h = 1e-6 * (1.0 + u.0[j].abs());
            let mut up = u;
            let mut um = u;
            up.0[j] += h;
            um.0[j] -= h;
            let fp = eq.flux(up).unwrap();
            let fm = eq.flux(um).unwrap();
            for i in 0..3 {
                jac[i][j] = (fp.0[i] - fm.0[i]) / (2.0 * h);
            }
        }
        jac
    }

    #[test]
    fn eigensystem_reconstructs_jacobian() {
        let eq = euler();
        let mut rng_state = 88172645463325252u64;
        let mut rand01 = move || {
            // xorshift64, deterministic
            rng_state ^= rng_state << 13;
            rng_state ^= rng_state >> 7;
            rng_state ^= rng_state << 17;
            (rng_state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..1000 {
            let rho = 0.3 + 3.0 * rand01();
            let v = -2.0 + 4.0 * rand01();
            let p = 0.3 + 3.0 * rand01();
            let u = EulerPrimitive::new(rho, v, p).conserved(1.4);
            let es = eq.eigensystem(u).unwrap();
            let jfd = fd_jacobian(&eq, u);
            let mut norm = 0.0f64;
            let mut err = 0.0f64;
            for j in 0..3 {
                let mut col = Conserved::ZERO;
                col.0[j] = 1.0;
                let jcol = es.jacobian_times(col);
                for i in 0..3 {
                    norm = norm.max(jfd[i][j].abs());
                    err = err.max((jcol.0[i] - jfd[i][j]).abs());
                }
            }
            assert!(err <= 1e-5 * norm, "err={err} norm={norm}");
            // R * Rinv = I
            for i in 0..3 {
                for j in 0..3 {
                    let mut s = 0.0;
                    for k in 0..3 {
                        s += es.left[i][k] * es.right[k][j];
                    }
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((s - expect).abs() < 1e-12, "Rinv R != I at ({i},{j}): {s}");
                }
            }
        }
    }

    /// Analytic flux Jacobian of the 1D Euler equations.
    fn analytic_jacobian(gamma: f64, u: Conserved) -> [[f64; 3]; 3] {
        let v = u.momentum() / u.density();
        let e = u.energy();
        let rho = u.density();
        let h = (e + (gamma - 1.0) * (e - 0.5 * rho * v * v)) / rho;
        let gm = gamma - 1.0;
        [
            [0.0, 1.0, 0.0],
            [0.5 * (gamma - 3.0) * v * v, (3.0 - gamma) * v, gm],
            [v * (0.5 * gm * v * v - h), h - gm * v * v, gamma * v],
        ]
    }

    #[test]
    fn eigensystem_matches_analytic_jacobian() {
        let eq = euler();
        for (rho, v, p) in [(1.0, 0.0, 1.0), (0.4, -1.7, 2.3), (3.0, 0.9, 0.05)] {
            let u = EulerPrimitive::new(rho, v, p).conserved(1.4);
            let es = eq.eigensystem(u).unwrap();
            let jexact = analytic_jacobian(1.4, u);
            let scale = jexact.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()));
            for j in 0..3 {
                let mut col = Conserved::ZERO;
                col.0[j] = 1.0;
                let jcol = es.jacobian_times(col);
                for i in 0..3 {
                    assert!(
                        (jcol.0[i] - jexact[i][j]).abs() <= 1e-12 * scale,
                        "J[{i}][{j}] = {} vs analytic {}",
                        jcol.0[i],
                        jexact[i][j]
                    );
                }
            }
        }
    }

    #[test]
    fn eigensystem_scalar_trivial() {
        let eq = Equation::advection(2.5);
        let es = eq.eigensystem(Conserved::scalar(0.3)).unwrap();
        assert_eq!(es.m, 1);
        assert_eq!(es.values[0], 2.5);
        assert_eq!(es.right[0][0], 1.0);
        assert_eq!(es.left[0][0], 1.0);
    }

    #[test]
    fn pressure_values() {
        let eq = euler();
        assert_relative_eq!(
            eq.pressure(Conserved::euler(1.0, 0.0, 1.0)).unwrap(),
            0.4,
            epsilon = 1e-15
        );
        // (rho v)^2 / (2 rho) = 4/4 = 1, p = 0.4 * (2 - 1)
        assert_relative_eq!(
            eq.pressure(Conserved::euler(2.0, 2.0, 2.0)).unwrap(),
            0.4,
            epsilon = 1e-15
        );
        // linear in E at rest
        let p1 = eq.pressure(Conserved::euler(1.0, 0.0, 3.0)).unwrap();
        let p2 = eq.pressure(Conserved::euler(1.0, 0.0, 6.0)).unwrap();
        assert_relative_eq!(p2, 2.0 * p1, epsilon = 1e-14);
        assert!(eq.pressure(Conserved::euler(-1.0, 0.0, 1.0)).is_err());
    }

    #[test]
    fn primitive_round_trip() {
        let eq = euler();
        for (rho, v, p) in [(1.0, 0.0, 1.0), (7.0, -1.0, 0.2), (1e-3, 2.0, 1e-9)] {
            let prim = EulerPrimitive::new(rho, v, p);
            let u = prim.conserved(1.4);
            let back = eq.primitive(u).unwrap();
            assert_relative_eq!(back.rho, rho, max_relative = 1e-14);
            assert_relative_eq!(back.v, v, max_relative = 1e-14);
            // recovering p subtracts the kinetic energy, so the attainable
            // accuracy degrades with E/p; the bound reflects that
            let tol = 1e-13 * p.abs() + 4.0 * f64::EPSILON * u.energy().abs();
            assert!(
                (back.p - p).abs() <= tol,
                "p round trip off by {}",
                back.p - p
            );
        }
    }

    #[test]
    fn admissibility() {
        let eq = euler();
        assert!(eq.is_admissible(Conserved::euler(1.0, 0.0, 1.0)));
        // kinetic energy 2 exceeds E=1 => negative pressure
        assert!(!eq.is_admissible(Conserved::euler(1.0, 2.0, 1.0)));
        assert!(!eq.is_admissible(Conserved::euler(-1.0, 0.0, 1.0)));
        assert!(!eq.is_admissible(Conserved::euler(f64::NAN, 0.0, 1.0)));

        let adv = Equation::advection(1.0).with_scalar_bounds(0.0, 1.0);
        assert!(adv.is_admissible(Conserved::scalar(0.0))); // closed bounds
        assert!(adv.is_admissible(Conserved::scalar(1.0)));
        assert!(!adv.is_admissible(Conserved::scalar(1.0 + 1e-12)));
    }

    #[test]
    fn admissible_set_is_convex() {
        let eq = euler();
        let mut rng_state = 0x9e3779b97f4a7c15u64;
        let mut rand01 = move || {
            rng_state ^= rng_state << 13;
            rng_state ^= rng_state >> 7;
            rng_state ^= rng_state << 17;
            (rng_state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..500 {
            let u1 = EulerPrimitive::new(0.1 + rand01(), 4.0 * rand01() - 2.0, 0.1 + rand01())
                .conserved(1.4);
            let u2 = EulerPrimitive::new(0.1 + rand01(), 4.0 * rand01() - 2.0, 0.1 + rand01())
                .conserved(1.4);
            let t = rand01();
            assert!(eq.is_admissible(t * u1 + (1.0 - t) * u2));
        }
    }

    #[test]
    fn reflect_negates_momentum() {
        let eq = euler();
        let u = Conserved::euler(1.0, 2.0, 3.0);
        assert_eq!(eq.reflect(u), Conserved::euler(1.0, -2.0, 3.0));
        let adv = Equation::advection(1.0);
        assert_eq!(adv.reflect(Conserved::scalar(0.5)), Conserved::scalar(0.5));
    }
}
