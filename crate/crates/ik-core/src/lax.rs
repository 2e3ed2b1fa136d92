//! R-matrix, boundary K-matrices, scalar functions and the algebraic
//! identities tying them together.
//!
//! The R-matrix acts on C^3 x C^3 with basis ordering |11>, |12>, ..., |33>
//! (first factor most significant) and conserves the layer grading, giving
//! the 19-entry sparsity pattern of the model.

use ndarray::Array2;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::matrix::{
    embed_pair, identity, kron, permutation, relative_residual, swap_factors, transpose_second,
    zeros,
};
use crate::{C64, Error, ModelParams, Result};

#[inline]
fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Evaluator for the R-matrix at fixed crossing parameter.
#[derive(Debug, Clone, Copy)]
pub struct RMatrix {
    pub eta: f64,
    corruption: Option<((usize, usize), C64)>,
}

impl RMatrix {
    pub fn new(eta: f64) -> Self {
        RMatrix { eta, corruption: None }
    }

    /// Diagnostic constructor: adds `delta` to entry `(row, col)` of every
    /// evaluated matrix. Used by fault-injection checks of the verifier.
    pub fn with_corruption(eta: f64, entry: (usize, usize), delta: C64) -> Self {
        RMatrix { eta, corruption: Some((entry, delta)) }
    }

    pub fn h1(&self, u: C64) -> C64 {
        let eta = self.eta;
        (u - c(3.0 * eta)).sinh() - c((5.0 * eta).sinh()) + c((3.0 * eta).sinh()) + c(eta.sinh())
    }

    pub fn h2(&self, u: C64) -> C64 {
        (u - c(3.0 * self.eta)).sinh() + c((3.0 * self.eta).sinh())
    }

    pub fn h3(&self, u: C64) -> C64 {
        (u - c(5.0 * self.eta)).sinh() + c(self.eta.sinh())
    }

    pub fn h4(&self, u: C64) -> C64 {
        (u - c(self.eta)).sinh() + c(self.eta.sinh())
    }

    pub fn e(&self, u: C64) -> C64 {
        let eta = self.eta;
        -2.0 * (-u / 2.0).exp() * (2.0 * eta).sinh() * (u / 2.0 - c(3.0 * eta)).cosh()
    }

    pub fn e_bar(&self, u: C64) -> C64 {
        let eta = self.eta;
        -2.0 * (u / 2.0).exp() * (2.0 * eta).sinh() * (u / 2.0 - c(3.0 * eta)).cosh()
    }

    pub fn f(&self, u: C64) -> C64 {
        let eta = self.eta;
        -2.0 * (-u + c(2.0 * eta)).exp() * eta.sinh() * (2.0 * eta).sinh()
            - (4.0 * eta).sinh() * (-eta).exp()
    }

    pub fn f_bar(&self, u: C64) -> C64 {
        let eta = self.eta;
        2.0 * (u - c(2.0 * eta)).exp() * eta.sinh() * (2.0 * eta).sinh()
            - (4.0 * eta).sinh() * eta.exp()
    }

    pub fn g(&self, u: C64) -> C64 {
        let eta = self.eta;
        2.0 * (-u / 2.0 + c(2.0 * eta)).exp() * (u / 2.0).sinh() * (2.0 * eta).sinh()
    }

    pub fn g_bar(&self, u: C64) -> C64 {
        let eta = self.eta;
        -2.0 * (u / 2.0 - c(2.0 * eta)).exp() * (u / 2.0).sinh() * (2.0 * eta).sinh()
    }

    /// The 9x9 matrix at spectral parameter `u`.
    pub fn at(&self, u: C64) -> Array2<C64> {
        let mut r = zeros(9);
        let (h1, h2, h3, h4) = (self.h1(u), self.h2(u), self.h3(u), self.h4(u));
        let (e, eb) = (self.e(u), self.e_bar(u));
        let (f, fb) = (self.f(u), self.f_bar(u));
        let (g, gb) = (self.g(u), self.g_bar(u));
        r[(0, 0)] = h3;
        r[(1, 1)] = h2;
        r[(1, 3)] = e;
        r[(2, 2)] = h4;
        r[(2, 4)] = g;
        r[(2, 6)] = f;
        r[(3, 1)] = eb;
        r[(3, 3)] = h2;
        r[(4, 2)] = gb;
        r[(4, 4)] = h1;
        r[(4, 6)] = g;
        r[(5, 5)] = h2;
        r[(5, 7)] = e;
        r[(6, 2)] = fb;
        r[(6, 4)] = gb;
        r[(6, 6)] = h4;
        r[(7, 5)] = eb;
        r[(7, 7)] = h2;
        r[(8, 8)] = h3;
        if let Some((entry, delta)) = self.corruption {
            r[entry] += delta;
        }
        r
    }

    /// R with the two tensor factors swapped.
    pub fn at_swapped(&self, u: C64) -> Array2<C64> {
        swap_factors(&self.at(u), 3)
    }

    /// Crossing matrix V, with V^2 = 1.
    pub fn crossing_matrix(&self) -> Array2<C64> {
        let mut v = zeros(3);
        v[(0, 2)] = c(-(-self.eta).exp());
        v[(1, 1)] = c(1.0);
        v[(2, 0)] = c(-self.eta.exp());
        v
    }
}

/// Public R-matrix constructor.
pub fn r_matrix(params: &ModelParams, u: C64) -> Array2<C64> {
    RMatrix::new(params.eta).at(u)
}

/// Boundary reflection matrices.
#[derive(Debug, Clone)]
pub struct KMatrices {
    pub params: ModelParams,
}

impl KMatrices {
    pub fn new(params: &ModelParams) -> Self {
        KMatrices { params: params.clone() }
    }

    /// Generic left-type reflection matrix with coupling `eps` and phase
    /// `sigma` (the phase may be complex, as needed by the dual matrix).
    fn k_generic(eta: f64, eps: f64, sigma: C64, u: C64) -> Array2<C64> {
        let mut k = zeros(3);
        let i = C64::i();
        k[(0, 0)] = c(1.0) + 2.0 * (-u - c(eps)).exp() * eta.sinh();
        k[(0, 2)] = 2.0 * (c(-eps) + i * sigma).exp() * u.sinh();
        k[(1, 1)] = c(1.0) - 2.0 * (-eps).exp() * (u - c(eta)).sinh();
        k[(2, 0)] = 2.0 * (c(-eps) - i * sigma).exp() * u.sinh();
        k[(2, 2)] = c(1.0) + 2.0 * (u - c(eps)).exp() * eta.sinh();
        k
    }

    /// Left reflection matrix.
    pub fn k_left(&self, u: C64) -> Array2<C64> {
        let p = &self.params;
        Self::k_generic(p.eta, p.eps, c(p.sigma_l), u)
    }

    /// Right (dual) reflection matrix, built from the left one by the
    /// crossing substitution with primed boundary parameters.
    pub fn k_right(&self, u: C64) -> Array2<C64> {
        let p = &self.params;
        let arg = -u + c(6.0 * p.eta) + C64::new(0.0, std::f64::consts::PI);
        let kl = Self::k_generic(p.eta, p.eps_prime, p.sigma_r(), arg);
        self.m_diag().dot(&kl)
    }

    /// The constant diagonal matrix diag(e^{2 eta}, 1, e^{-2 eta}).
    pub fn m_diag(&self) -> Array2<C64> {
        let mut m = zeros(3);
        m[(0, 0)] = c((2.0 * self.params.eta).exp());
        m[(1, 1)] = c(1.0);
        m[(2, 2)] = c((-2.0 * self.params.eta).exp());
        m
    }
}

pub fn k_left(params: &ModelParams, u: C64) -> Array2<C64> {
    KMatrices::new(params).k_left(u)
}

pub fn k_right(params: &ModelParams, u: C64) -> Array2<C64> {
    KMatrices::new(params).k_right(u)
}

/// Closed-form scalar functions entering the functional relations.
#[derive(Debug, Clone)]
pub struct ScalarFunctions {
    pub eta: f64,
    pub eps: f64,
    pub eps_prime: f64,
    pub thetas: Vec<C64>,
}

impl ScalarFunctions {
    pub fn new(params: &ModelParams) -> Self {
        ScalarFunctions {
            eta: params.eta,
            eps: params.eps,
            eps_prime: params.eps_prime,
            thetas: params.thetas(),
        }
    }

    pub fn phi1(&self, u: C64) -> C64 {
        phi1(self.eta, u)
    }

    pub fn phi2(&self, u: C64) -> C64 {
        phi2(self.eta, u)
    }

    pub fn phi3(&self, u: C64) -> C64 {
        phi3(self.eta, u)
    }

    pub fn delta1(&self, u: C64) -> C64 {
        let eta = self.eta;
        let mut v = c(-4.0)
            * (c(1.0) - 2.0 * (-self.eps).exp() * (u - c(eta)).sinh())
            * (c(1.0) + 2.0 * (-self.eps).exp() * (u + c(eta)).sinh())
            * (c(1.0) - 2.0 * (-self.eps_prime).exp() * (u - c(eta)).sinh())
            * (c(1.0) + 2.0 * (-self.eps_prime).exp() * (u + c(eta)).sinh())
            * (u + c(6.0 * eta)).sinh()
            * (u + c(eta)).cosh()
            * (u - c(6.0 * eta)).sinh()
            * (u - c(eta)).cosh();
        for &t in &self.thetas {
            v *= phi1(eta, u - t) * phi1(eta, u + t);
        }
        v
    }

    pub fn delta2(&self, u: C64) -> C64 {
        let eta = self.eta;
        let ch = (u - c(eta)).cosh();
        let mut v = c(-4.0)
            * (c(1.0) - 2.0 * (-self.eps).exp() * (u - c(eta)).sinh())
            * (c(1.0) - 2.0 * (-self.eps_prime).exp() * (u - c(eta)).sinh())
            * (u + c(4.0 * eta)).sinh()
            * (u - c(6.0 * eta)).sinh()
            * ch
            * ch;
        for &t in &self.thetas {
            v *= phi3(eta, u - t) * phi3(eta, u + t);
        }
        v
    }
}

pub fn phi1(eta: f64, u: C64) -> C64 {
    c(-4.0)
        * (u / 2.0 - c(2.0 * eta)).sinh()
        * (u / 2.0 + c(2.0 * eta)).sinh()
        * (u / 2.0 - c(3.0 * eta)).cosh()
        * (u / 2.0 + c(3.0 * eta)).cosh()
}

pub fn phi2(eta: f64, u: C64) -> C64 {
    c(-4.0)
        * (u / 2.0 - c(5.0 * eta)).cosh()
        * (u / 2.0 - c(eta)).cosh()
        * (u / 2.0).sinh()
        * (u / 2.0 - c(6.0 * eta)).sinh()
}

pub fn phi3(eta: f64, u: C64) -> C64 {
    c(-2.0) * (u / 2.0 + c(2.0 * eta)).sinh() * (u / 2.0 - c(3.0 * eta)).cosh()
}

pub fn scalar_functions(params: &ModelParams) -> ScalarFunctions {
    ScalarFunctions::new(params)
}

/// The algebraic identities that can be verified numerically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    Qybe,
    Unitarity,
    Crossing,
    Pt,
    Periodicity,
    Re,
    DualRe,
}

impl Identity {
    pub const ALL: [Identity; 7] = [
        Identity::Qybe,
        Identity::Unitarity,
        Identity::Crossing,
        Identity::Pt,
        Identity::Periodicity,
        Identity::Re,
        Identity::DualRe,
    ];

    /// Number of independent spectral parameters the identity involves.
    pub fn arity(&self) -> usize {
        match self {
            Identity::Qybe => 3,
            Identity::Re | Identity::DualRe => 2,
            _ => 1,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Identity::Qybe => "qybe",
            Identity::Unitarity => "unitarity",
            Identity::Crossing => "crossing",
            Identity::Pt => "pt",
            Identity::Periodicity => "periodicity",
            Identity::Re => "re",
            Identity::DualRe => "dual_re",
        }
    }
}

impl std::str::FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "qybe" => Ok(Identity::Qybe),
            "unitarity" => Ok(Identity::Unitarity),
            "crossing" => Ok(Identity::Crossing),
            "pt" => Ok(Identity::Pt),
            "periodicity" => Ok(Identity::Periodicity),
            "re" => Ok(Identity::Re),
            "dual_re" => Ok(Identity::DualRe),
            other => Err(Error::InvalidParams(format!("unknown identity '{other}'"))),
        }
    }
}

/// Residuals of one identity over a set of evaluation points.
#[derive(Debug, Clone, Serialize)]
pub struct ResidualReport {
    pub identity: Identity,
    pub per_point: Vec<f64>,
    pub max: f64,
}

/// Verify one identity at the given points. Each point carries as many
/// spectral parameters as the identity's arity. Residuals are relative
/// max-norms with floor 1; they are reported, never thrown.
pub fn verify_identity(
    which: Identity,
    params: &ModelParams,
    points: &[Vec<C64>],
) -> Result<ResidualReport> {
    verify_identity_with(which, params, points, &RMatrix::new(params.eta))
}

/// Same as [`verify_identity`] but with a caller-supplied R evaluator,
/// used by fault-injection tests and diagnostics.
pub fn verify_identity_with(
    which: Identity,
    params: &ModelParams,
    points: &[Vec<C64>],
    r: &RMatrix,
) -> Result<ResidualReport> {
    let km = KMatrices::new(params);
    let mut per_point = Vec::with_capacity(points.len());
    for pt in points {
        if pt.len() != which.arity() {
            return Err(Error::InvalidParams(format!(
                "identity {} expects {} spectral parameters per point, got {}",
                which.name(),
                which.arity(),
                pt.len()
            )));
        }
        let res = match which {
            Identity::Qybe => residual_qybe(r, pt[0], pt[1], pt[2]),
            Identity::Unitarity => residual_unitarity(r, pt[0]),
            Identity::Crossing => residual_crossing(r, pt[0]),
            Identity::Pt => residual_pt(r, pt[0]),
            Identity::Periodicity => residual_periodicity(r, pt[0]),
            Identity::Re => residual_re(r, &km, pt[0], pt[1]),
            Identity::DualRe => residual_dual_re(r, &km, pt[0], pt[1]),
        };
        per_point.push(res);
    }
    let max = per_point.iter().copied().fold(0.0, f64::max);
    Ok(ResidualReport { identity: which, per_point, max })
}

fn residual_qybe(r: &RMatrix, u1: C64, u2: C64, u3: C64) -> f64 {
    let r12 = embed_pair(&r.at(u1 - u2), 3, 3, 0, 1);
    let r13 = embed_pair(&r.at(u1 - u3), 3, 3, 0, 2);
    let r23 = embed_pair(&r.at(u2 - u3), 3, 3, 1, 2);
    let lhs = r12.dot(&r13).dot(&r23);
    let rhs = r23.dot(&r13).dot(&r12);
    relative_residual(&lhs, &rhs)
}

fn residual_unitarity(r: &RMatrix, u: C64) -> f64 {
    let lhs = r.at(u).dot(&r.at_swapped(-u));
    let rhs = identity(9).mapv(|x| x * phi1(r.eta, u));
    relative_residual(&lhs, &rhs)
}

fn residual_crossing(r: &RMatrix, u: C64) -> f64 {
    let v = r.crossing_matrix();
    let v1 = kron(&v, &identity(3));
    let arg = -u + c(6.0 * r.eta) + C64::new(0.0, std::f64::consts::PI);
    let rt2 = transpose_second(&r.at(arg), 3);
    let rhs = v1.dot(&rt2).dot(&v1);
    relative_residual(&r.at(u), &rhs)
}

fn residual_pt(r: &RMatrix, u: C64) -> f64 {
    let lhs = r.at_swapped(u);
    let rhs = r.at(u).t().to_owned();
    relative_residual(&lhs, &rhs)
}

fn residual_periodicity(r: &RMatrix, u: C64) -> f64 {
    let shifted = u + C64::new(0.0, 2.0 * std::f64::consts::PI);
    relative_residual(&r.at(u), &r.at(shifted))
}

fn residual_re(r: &RMatrix, km: &KMatrices, u: C64, mu: C64) -> f64 {
    let k1 = kron(&km.k_left(u), &identity(3));
    let k2 = kron(&identity(3), &km.k_left(mu));
    let lhs = r.at(u - mu).dot(&k1).dot(&r.at_swapped(u + mu)).dot(&k2);
    let rhs = k2.dot(&r.at(u + mu)).dot(&k1).dot(&r.at_swapped(u - mu));
    relative_residual(&lhs, &rhs)
}

fn residual_dual_re(r: &RMatrix, km: &KMatrices, u: C64, mu: C64) -> f64 {
    let m = km.m_diag();
    let m_inv = {
        let mut inv = zeros(3);
        for i in 0..3 {
            inv[(i, i)] = c(1.0) / m[(i, i)];
        }
        inv
    };
    let k1 = kron(&km.k_right(u), &identity(3));
    let k2 = kron(&identity(3), &km.k_right(mu));
    let m1 = kron(&m, &identity(3));
    let m1_inv = kron(&m_inv, &identity(3));
    let m2 = kron(&identity(3), &m);
    let m2_inv = kron(&identity(3), &m_inv);
    let shift = c(12.0 * r.eta);
    let lhs = r
        .at(mu - u)
        .dot(&k1)
        .dot(&m1_inv)
        .dot(&r.at_swapped(-u - mu + shift))
        .dot(&m1)
        .dot(&k2);
    let rhs = k2
        .dot(&m2_inv)
        .dot(&r.at(-u - mu + shift))
        .dot(&m2)
        .dot(&k1)
        .dot(&r.at_swapped(mu - u));
    relative_residual(&lhs, &rhs)
}

/// Draw seeded random spectral points in the box Re u in [-3, 3],
/// Im u in [-pi, pi], `arity` parameters per point.
pub fn random_points(seed: u64, count: usize, arity: usize) -> Vec<Vec<C64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pi = std::f64::consts::PI;
    (0..count)
        .map(|_| {
            (0..arity)
                .map(|_| C64::new(rng.random_range(-3.0..3.0), rng.random_range(-pi..pi)))
                .collect()
        })
        .collect()
}

/// Draw a seeded random parameter set inside the hermiticity class.
pub fn random_hermitian_params(seed: u64, n_sites: usize) -> ModelParams {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pi = std::f64::consts::PI;
    ModelParams::new(
        rng.random_range(0.2..0.6),
        rng.random_range(-1.0..2.5),
        rng.random_range(-1.0..2.5),
        rng.random_range(-pi..pi).max(-pi + 1e-9),
        rng.random_range(-pi..pi).max(-pi + 1e-9),
        n_sites,
        vec![0.0; n_sites],
    )
    .expect("random draw stays in the valid box")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::max_abs;

    fn params() -> ModelParams {
        ModelParams::homogeneous(0.35, 2.0, 0.3, 0.6, 0.7, 2).unwrap()
    }

    #[test]
    fn r_at_zero_is_scaled_permutation() {
        let p = params();
        let r0 = r_matrix(&p, C64::new(0.0, 0.0));
        let scale = c(p.eta.sinh() - (5.0 * p.eta).sinh());
        let expected = permutation(3).mapv(|x| x * scale);
        assert!(relative_residual(&r0, &expected) < 1e-14);
    }

    #[test]
    fn r_has_nineteen_nonzero_entries() {
        let p = params();
        let r = r_matrix(&p, C64::new(0.7, 0.3));
        let nz = r.iter().filter(|z| z.norm() > 1e-14).count();
        assert_eq!(nz, 19);
    }

    #[test]
    fn r_is_two_pi_i_periodic() {
        let p = params();
        let rep = verify_identity(Identity::Periodicity, &p, &random_points(3, 20, 1)).unwrap();
        assert!(rep.max < 1e-12, "max residual {}", rep.max);
    }

    #[test]
    fn unitarity_factor_value_at_zero() {
        let eta = 0.35;
        let expected = 4.0 * (2.0f64 * eta).sinh().powi(2) * (3.0 * eta).cosh().powi(2);
        let got = phi1(eta, C64::new(0.0, 0.0));
        assert!((got - c(expected)).norm() < 1e-13);
    }

    #[test]
    fn all_seven_identities_hold_at_random_points() {
        for draw in 0..10u64 {
            let p = random_hermitian_params(1000 + draw, 2);
            for which in Identity::ALL {
                let pts = random_points(77 + draw, 100, which.arity());
                let rep = verify_identity(which, &p, &pts).unwrap();
                assert!(
                    rep.max < 1e-12,
                    "identity {} draw {draw}: residual {}",
                    which.name(),
                    rep.max
                );
            }
        }
    }

    #[test]
    fn crossing_matrix_squares_to_identity() {
        let r = RMatrix::new(0.4);
        let v = r.crossing_matrix();
        assert!(relative_residual(&v.dot(&v), &identity(3)) < 1e-14);
    }

    #[test]
    fn k_left_at_zero_is_scalar() {
        let p = params();
        let k0 = k_left(&p, C64::new(0.0, 0.0));
        let scale = c(1.0) + 2.0 * c((-p.eps).exp() * p.eta.sinh());
        let expected = identity(3).mapv(|x| x * scale);
        assert!(relative_residual(&k0, &expected) < 1e-14);
    }

    #[test]
    fn k_left_corner_entry() {
        let p = params();
        let u = C64::new(0.8, -0.2);
        let k = k_left(&p, u);
        let expected = 2.0 * (C64::new(-p.eps, p.sigma_l)).exp() * u.sinh();
        assert!((k[(0, 2)] - expected).norm() < 1e-14);
    }

    #[test]
    fn k_right_matches_substitution_rule() {
        let p = params();
        let km = KMatrices::new(&p);
        let m = km.m_diag();
        for pt in random_points(11, 20, 1) {
            let u = pt[0];
            let arg = -u + c(6.0 * p.eta) + C64::new(0.0, std::f64::consts::PI);
            let kl_primed = KMatrices::k_generic(p.eta, p.eps_prime, p.sigma_r(), arg);
            let expected = m.dot(&kl_primed);
            assert!(relative_residual(&km.k_right(u), &expected) < 1e-14);
        }
    }

    #[test]
    fn k_left_invariant_under_sigma_shift_by_two_pi() {
        // sigma enters only through exp(+-i sigma); shifting by 2 pi is a
        // no-op even though the shifted value leaves the principal range.
        let p = params();
        let u = C64::new(0.4, 0.9);
        let k1 = KMatrices::k_generic(p.eta, p.eps, c(p.sigma_l), u);
        let k2 = KMatrices::k_generic(p.eta, p.eps, c(p.sigma_l + 2.0 * std::f64::consts::PI), u);
        assert!(relative_residual(&k1, &k2) < 1e-12);
    }

    #[test]
    fn scalar_function_zeros() {
        let eta = 0.41;
        assert!(phi1(eta, c(4.0 * eta)).norm() < 1e-13);
        assert!(phi3(eta, c(-4.0 * eta)).norm() < 1e-13);
        assert!(phi2(eta, C64::new(0.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn corrupted_r_entry_breaks_yang_baxter() {
        let p = params();
        let r = RMatrix::with_corruption(p.eta, (1, 3), c(0.05));
        let pts = random_points(5, 10, 3);
        let rep = verify_identity_with(Identity::Qybe, &p, &pts, &r).unwrap();
        assert!(rep.max > 1e-3);
    }

    #[test]
    fn random_points_are_deterministic_per_seed() {
        let a = random_points(42, 5, 2);
        let b = random_points(42, 5, 2);
        assert_eq!(a, b);
        let c_ = random_points(43, 5, 2);
        assert!(a != c_);
        assert!(a.iter().flatten().all(|z| z.re.abs() <= 3.0 && z.im.abs() <= std::f64::consts::PI));
        assert!(max_abs(&r_matrix(&params(), a[0][0])).is_finite());
    }
}
