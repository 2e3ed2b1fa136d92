use serde::{Deserialize, Serialize};

use crate::{C64, Error, Result};

/// Boundary-parameter regimes of the ground-state zero patterns in the
/// `(chi_plus, chi_minus)` plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Regime::I => "I",
            Regime::II => "II",
            Regime::III => "III",
            Regime::IV => "IV",
            Regime::V => "V",
            Regime::VI => "VI",
        };
        write!(f, "{s}")
    }
}

/// Model parameters of the open chain.
///
/// The crossing parameter `eta` is positive; the boundary couplings are
/// `eps` (left), `eps_prime` (right) and the boundary phases `sigma_l` and
/// `sigma_r_bar`. The right phase is stored through its real combination
/// `sigma_r_bar = sigma_r - 2i*eta`, so that hermiticity of the Hamiltonian
/// amounts to all stored fields being real. Inhomogeneities are stored as
/// the real `theta_bar[j]` with `theta[j] = i*theta_bar[j]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub eta: f64,
    pub eps: f64,
    pub eps_prime: f64,
    pub sigma_l: f64,
    pub sigma_r_bar: f64,
    pub n_sites: usize,
    pub theta_bar: Vec<f64>,
}

impl ModelParams {
    /// Build and validate a parameter set in the hermiticity class.
    pub fn new(
        eta: f64,
        eps: f64,
        eps_prime: f64,
        sigma_l: f64,
        sigma_r_bar: f64,
        n_sites: usize,
        theta_bar: Vec<f64>,
    ) -> Result<Self> {
        let p = ModelParams {
            eta,
            eps,
            eps_prime,
            sigma_l,
            sigma_r_bar,
            n_sites,
            theta_bar,
        };
        p.validate()?;
        Ok(p)
    }

    /// Homogeneous chain (all inhomogeneities zero).
    pub fn homogeneous(
        eta: f64,
        eps: f64,
        eps_prime: f64,
        sigma_l: f64,
        sigma_r_bar: f64,
        n_sites: usize,
    ) -> Result<Self> {
        Self::new(eta, eps, eps_prime, sigma_l, sigma_r_bar, n_sites, vec![0.0; n_sites])
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eta > 0.0) || !self.eta.is_finite() {
            return Err(Error::InvalidParams(format!(
                "crossing parameter eta must be positive, got {}",
                self.eta
            )));
        }
        for (name, v) in [
            ("eps", self.eps),
            ("eps_prime", self.eps_prime),
            ("sigma_l", self.sigma_l),
            ("sigma_r_bar", self.sigma_r_bar),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidParams(format!("{name} must be finite, got {v}")));
            }
        }
        let pi = std::f64::consts::PI;
        for (name, v) in [("sigma_l", self.sigma_l), ("sigma_r_bar", self.sigma_r_bar)] {
            if v <= -pi || v > pi {
                return Err(Error::InvalidParams(format!(
                    "{name} must lie in (-pi, pi], got {v}"
                )));
            }
        }
        if self.n_sites == 0 {
            return Err(Error::InvalidParams("chain length must be positive".into()));
        }
        if self.theta_bar.len() != self.n_sites {
            return Err(Error::InvalidParams(format!(
                "expected {} inhomogeneities, got {}",
                self.n_sites,
                self.theta_bar.len()
            )));
        }
        Ok(())
    }

    /// Left boundary scale `chi_plus = arcsinh(exp(eps)/2) > 0`.
    pub fn chi_plus(&self) -> f64 {
        (self.eps.exp() / 2.0).asinh()
    }

    /// Right boundary scale `chi_minus = arcsinh(exp(eps_prime)/2) > 0`.
    pub fn chi_minus(&self) -> f64 {
        (self.eps_prime.exp() / 2.0).asinh()
    }

    /// The complex right phase `sigma_r = sigma_r_bar + 2i*eta`.
    pub fn sigma_r(&self) -> C64 {
        C64::new(self.sigma_r_bar, 2.0 * self.eta)
    }

    /// Complex inhomogeneities `theta[j] = i*theta_bar[j]`.
    pub fn thetas(&self) -> Vec<C64> {
        self.theta_bar.iter().map(|&t| C64::new(0.0, t)).collect()
    }

    /// True when every inhomogeneity vanishes.
    pub fn is_homogeneous(&self) -> bool {
        self.theta_bar.iter().all(|&t| t == 0.0)
    }

    /// Same parameters with a different chain length (inhomogeneities reset
    /// to zero).
    pub fn with_n_sites(&self, n_sites: usize) -> Self {
        ModelParams {
            n_sites,
            theta_bar: vec![0.0; n_sites],
            ..self.clone()
        }
    }

    /// Regime of the ground-state zero pattern, from the thresholds on
    /// `(chi_plus, chi_minus)` against `eta` and `3 eta`.
    ///
    /// Boundaries are inclusive on the closed side: `chi >= 3 eta` counts as
    /// the large-chi class and `chi >= eta` as the middle class.
    pub fn regime(&self) -> Regime {
        #[derive(PartialEq, Clone, Copy)]
        enum Class {
            Large,  // chi >= 3 eta
            Middle, // eta <= chi < 3 eta
            Small,  // chi < eta
        }
        let class = |chi: f64| {
            if chi >= 3.0 * self.eta {
                Class::Large
            } else if chi >= self.eta {
                Class::Middle
            } else {
                Class::Small
            }
        };
        use Class::*;
        match (class(self.chi_plus()), class(self.chi_minus())) {
            (Large, Large) => Regime::I,
            (Large, Middle) | (Middle, Large) => Regime::II,
            (Large, Small) | (Small, Large) => Regime::III,
            (Middle, Middle) => Regime::IV,
            (Middle, Small) | (Small, Middle) => Regime::V,
            (Small, Small) => Regime::VI,
        }
    }

    /// Smaller of the two boundary scales.
    pub fn chi_min(&self) -> f64 {
        self.chi_plus().min(self.chi_minus())
    }

    /// Larger of the two boundary scales.
    pub fn chi_max(&self) -> f64 {
        self.chi_plus().max(self.chi_minus())
    }

    /// Stable content hash of the parameter set, used to key caches.
    pub fn content_hash(&self) -> u64 {
        // FNV-1a over the exact bit patterns of the fields.
        let mut h: u64 = 0xcbf29ce484222325;
        let mut eat = |bytes: &[u8]| {
            for &b in bytes {
                h ^= b as u64;
                h = h.wrapping_mul(0x100000001b3);
            }
        };
        for v in [self.eta, self.eps, self.eps_prime, self.sigma_l, self.sigma_r_bar] {
            eat(&v.to_bits().to_le_bytes());
        }
        eat(&(self.n_sites as u64).to_le_bytes());
        for &t in &self.theta_bar {
            eat(&t.to_bits().to_le_bytes());
        }
        h
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(eps: f64, eps_prime: f64) -> ModelParams {
        ModelParams::homogeneous(0.35, eps, eps_prime, 0.6, 0.7, 4).unwrap()
    }

    #[test]
    fn chi_values_match_closed_form() {
        let p = base(2.0, 0.3);
        assert!((p.chi_plus() - (2.0f64.exp() / 2.0).asinh()).abs() < 1e-15);
        assert!((p.chi_plus() - 2.0177).abs() < 1e-3);
        assert!((p.chi_minus() - 0.632).abs() < 1e-3);
    }

    #[test]
    fn regime_classification_examples() {
        // chi_plus ~ 2.02 >= 3*0.35, chi_minus ~ 0.632 in [eta, 3 eta).
        assert_eq!(base(2.0, 0.3).regime(), Regime::II);
        assert_eq!(base(2.0, 2.0).regime(), Regime::I);
        assert_eq!(base(2.0, -1.0).regime(), Regime::III);
        assert_eq!(base(0.3, 0.3).regime(), Regime::IV);
        assert_eq!(base(0.3, -1.0).regime(), Regime::V);
        assert_eq!(base(-1.0, -1.0).regime(), Regime::VI);
    }

    #[test]
    fn regime_boundary_is_inclusive() {
        // chi = 3 eta exactly on both boundaries classifies as regime I.
        let eta = 0.35f64;
        let chi = 3.0 * eta;
        let eps = (2.0 * chi.sinh()).ln();
        let p = ModelParams::homogeneous(eta, eps, eps, 0.0, 0.0, 2).unwrap();
        assert!((p.chi_plus() - chi).abs() < 1e-14);
        assert_eq!(p.regime(), Regime::I);
    }

    #[test]
    fn regime_symmetric_under_boundary_swap() {
        for (e1, e2) in [(2.0, 0.3), (0.3, -1.0), (2.0, -1.0), (0.1, 0.9)] {
            assert_eq!(base(e1, e2).regime(), base(e2, e1).regime());
        }
    }

    #[test]
    fn invalid_params_rejected() {
        assert!(ModelParams::homogeneous(-0.1, 0.0, 0.0, 0.0, 0.0, 2).is_err());
        assert!(ModelParams::homogeneous(0.35, 0.0, 0.0, 4.0, 0.0, 2).is_err());
        assert!(ModelParams::new(0.35, 0.0, 0.0, 0.0, 0.0, 2, vec![0.1]).is_err());
    }
}
