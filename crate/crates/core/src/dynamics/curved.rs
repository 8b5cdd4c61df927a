use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use super::{HamiltonianSystem, State};
use crate::error::{Error, Result};

/// Curvature kernels `S_κ`, `C_κ`, `T_κ = S_κ/C_κ`, with a Taylor branch for
/// `|κ|x² < 1e−6`.
pub mod kernels {
    const SERIES_THRESHOLD: f64 = 1e-6;

    pub fn s(kappa: f64, x: f64) -> f64 {
        let z = kappa * x * x;
        if z.abs() < SERIES_THRESHOLD {
            x * (1.0 - z / 6.0 + z * z / 120.0 - z * z * z / 5040.0)
        } else if kappa > 0.0 {
            let r = kappa.sqrt();
            (r * x).sin() / r
        } else {
            let r = (-kappa).sqrt();
            (r * x).sinh() / r
        }
    }

    pub fn c(kappa: f64, x: f64) -> f64 {
        let z = kappa * x * x;
        if z.abs() < SERIES_THRESHOLD {
            1.0 - z / 2.0 + z * z / 24.0 - z * z * z / 720.0
        } else if kappa > 0.0 {
            (kappa.sqrt() * x).cos()
        } else {
            ((-kappa).sqrt() * x).cosh()
        }
    }

    pub fn t(kappa: f64, x: f64) -> f64 {
        let z = kappa * x * x;
        if z.abs() < SERIES_THRESHOLD {
            x * (1.0 + z / 3.0 + 2.0 * z * z / 15.0 + 17.0 * z * z * z / 315.0)
        } else if kappa > 0.0 {
            let r = kappa.sqrt();
            (r * x).tan() / r
        } else {
            let r = (-kappa).sqrt();
            (r * x).tanh() / r
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvedOscillatorSpec {
    pub kappa: f64,
    pub omega: f64,
    pub p_phi: f64,
}

fn check_domain(kappa: f64, rho: f64, p_phi: f64) -> Result<()> {
    if kappa > 0.0 && kappa.sqrt() * rho.abs() >= FRAC_PI_2 {
        return Err(Error::Domain(format!(
            "sqrt(kappa)*rho = {} reaches pi/2",
            kappa.sqrt() * rho.abs()
        )));
    }
    if rho == 0.0 && p_phi != 0.0 {
        return Err(Error::Domain("rho = 0 with nonzero p_phi".into()));
    }
    Ok(())
}

/// `p_ρ² + p_φ²/S_κ(ρ)² + ω² T_κ(ρ)²`.
pub fn curved_oscillator_hamiltonian(spec: &CurvedOscillatorSpec, rho: f64, p_rho: f64) -> Result<f64> {
    check_domain(spec.kappa, rho, spec.p_phi)?;
    let mut h = p_rho * p_rho + (spec.omega * kernels::t(spec.kappa, rho)).powi(2);
    if spec.p_phi != 0.0 {
        h += (spec.p_phi / kernels::s(spec.kappa, rho)).powi(2);
    }
    Ok(h)
}

/// The curved oscillator as a flow on `(ρ, φ, p_ρ, p_φ)`.
#[derive(Clone, Copy, Debug)]
pub struct CurvedOscillator {
    pub kappa: f64,
    pub omega: f64,
}

impl CurvedOscillator {
    pub fn new(kappa: f64, omega: f64) -> Self {
        CurvedOscillator { kappa, omega }
    }

    fn spec_at(&self, x: &State) -> CurvedOscillatorSpec {
        CurvedOscillatorSpec {
            kappa: self.kappa,
            omega: self.omega,
            p_phi: x[3],
        }
    }
}

impl HamiltonianSystem for CurvedOscillator {
    fn energy(&self, x: &State) -> Result<f64> {
        curved_oscillator_hamiltonian(&self.spec_at(x), x[0], x[2])
    }

    fn vector_field(&self, x: &State) -> Result<State> {
        let [rho, _, p_rho, p_phi] = *x;
        check_domain(self.kappa, rho, p_phi)?;
        let k = self.kappa;
        let t = kernels::t(k, rho);
        // ∂/∂ρ of ω²T² is 2ω²T(1 + κT²)
        let mut d_rho = 2.0 * self.omega * self.omega * t * (1.0 + k * t * t);
        let mut phi_dot = 0.0;
        if p_phi != 0.0 {
            let s = kernels::s(k, rho);
            let c = kernels::c(k, rho);
            d_rho -= 2.0 * p_phi * p_phi * c / (s * s * s);
            phi_dot = 2.0 * p_phi / (s * s);
        }
        Ok([2.0 * p_rho, phi_dot, -d_rho, 0.0])
    }

    fn observables(&self) -> Vec<String> {
        vec!["H".into(), "C".into()]
    }

    fn observe(&self, x: &State) -> Result<Vec<f64>> {
        Ok(vec![self.energy(x)?, x[3]])
    }

    /// The angle difference is wrapped to `(−π, π]`.
    fn difference(&self, a: &State, b: &State) -> State {
        let tau = std::f64::consts::TAU;
        let mut dphi = (a[1] - b[1]).rem_euclid(tau);
        if dphi > std::f64::consts::PI {
            dphi -= tau;
        }
        [a[0] - b[0], dphi, a[2] - b[2], a[3] - b[3]]
    }

    fn coordinate_names(&self) -> [&'static str; 4] {
        ["rho", "phi", "p_rho", "p_phi"]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn spec(kappa: f64, omega: f64, p_phi: f64) -> CurvedOscillatorSpec {
        CurvedOscillatorSpec { kappa, omega, p_phi }
    }

    #[test]
    fn flat_case() {
        let h = curved_oscillator_hamiltonian(&spec(0.0, 2.0, 0.5), 1.5, 0.3).unwrap();
        let want = 0.09 + 0.25 / 2.25 + 4.0 * 2.25;
        assert!((h - want).abs() < 1e-14);
    }

    #[test]
    fn sphere_quarter() {
        let h = curved_oscillator_hamiltonian(&spec(1.0, 1.0, 0.0), FRAC_PI_4, 0.0).unwrap();
        assert!((h - 1.0).abs() < 1e-14);
    }

    /// Series in κ of the Hamiltonian through second order:
    /// `T² = ρ² + 2κρ⁴/3 + 17κ²ρ⁶/45`, `1/S² = 1/ρ² + κ/3 + κ²ρ²/15`.
    fn series_oracle(kappa: f64, omega: f64, p_phi: f64, rho: f64, p_rho: f64) -> f64 {
        let r2 = rho * rho;
        let t2 = r2 + 2.0 * kappa * r2 * r2 / 3.0 + 17.0 * kappa * kappa * r2 * r2 * r2 / 45.0;
        let inv_s2 = 1.0 / r2 + kappa / 3.0 + kappa * kappa * r2 / 15.0;
        p_rho * p_rho + p_phi * p_phi * inv_s2 + omega * omega * t2
    }

    #[test]
    fn small_curvature_limits() {
        // rho = 20 puts |κ|ρ² above the series threshold, so both kernel
        // branches are exercised
        for rho in [0.3, 1.0, 2.0, 20.0] {
            let flat = curved_oscillator_hamiltonian(&spec(0.0, 1.3, 0.7), rho, 0.2).unwrap();
            assert!((flat - series_oracle(0.0, 1.3, 0.7, rho, 0.2)).abs() <= 1e-14 * flat);
            for kappa in [1e-8, -1e-8] {
                let h = curved_oscillator_hamiltonian(&spec(kappa, 1.3, 0.7), rho, 0.2).unwrap();
                let want = series_oracle(kappa, 1.3, 0.7, rho, 0.2);
                assert!((h - want).abs() <= 1e-10 * want, "kappa {kappa} rho {rho}: {h} vs {want}");
            }
        }
    }

    #[test]
    fn kernel_branches_agree() {
        // just above and below the series threshold
        for kappa in [1e-6, -1e-6, 0.5, -0.5] {
            for x in [0.999e0, 1.001e0, 1e-3] {
                let s = kernels::s(kappa, x);
                let c = kernels::c(kappa, x);
                let t = kernels::t(kappa, x);
                assert!((t - s / c).abs() < 1e-10, "kappa {kappa} x {x}");
                assert!((c * c + kappa * s * s - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            curved_oscillator_hamiltonian(&spec(1.0, 1.0, 0.0), FRAC_PI_2, 0.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            curved_oscillator_hamiltonian(&spec(0.0, 1.0, 1.0), 0.0, 0.0),
            Err(Error::Domain(_))
        ));
        assert!(curved_oscillator_hamiltonian(&spec(-1.0, 1.0, 0.0), 10.0, 0.0).is_ok());
    }

    #[test]
    fn field_matches_finite_differences() {
        let sys = CurvedOscillator::new(0.7, 1.1);
        let x = [0.6, 0.2, -0.4, 0.3];
        let f = sys.vector_field(&x).unwrap();
        let h = 1e-6;
        let e = |rho: f64, pr: f64| sys.energy(&[rho, x[1], pr, x[3]]).unwrap();
        let dh_drho = (e(x[0] + h, x[2]) - e(x[0] - h, x[2])) / (2.0 * h);
        let dh_dpr = (e(x[0], x[2] + h) - e(x[0], x[2] - h)) / (2.0 * h);
        assert!((f[0] - dh_dpr).abs() < 1e-6);
        assert!((f[2] + dh_drho).abs() < 1e-6);
    }
}
