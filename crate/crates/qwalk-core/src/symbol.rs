//! Fourier-symbol analysis of the constant-coin walk.
//!
//! For a constant coin with parameters (a, b, α, β, δ) the walk decomposes
//! over momenta k into the 2×2 unitaries Û(k) = diag(e^{ik}, e^{−ik})·C.
//! Everything here is closed form: eigenvalues, normalized eigenvectors,
//! group velocities v_j = i λ'_j/λ_j, their derivatives, and the fiber
//! operators V̂(k), Ĥ(k). The three-way case split on a (0, interior, 1)
//! follows the degeneracy cutoff in [`crate::coin`].

use crate::coin::{CoinCase, CoinParams};
use crate::mat2::{C64, Mat2, Vec2, I, ONE, ZERO};

/// Auxiliary trigonometric data attached to a coin:
/// τ(k) = a cos(k + α − δ/2), ς(k) = a sin(k + α − δ/2), η = √(1 − τ²),
/// and θ = arccos a.
#[derive(Debug, Clone, Copy)]
pub struct Aux {
    p: CoinParams,
}

impl Aux {
    pub fn new(p: &CoinParams) -> Self {
        Aux { p: *p }
    }

    fn phase_arg(&self, k: f64) -> f64 {
        k + self.p.alpha - 0.5 * self.p.delta
    }

    pub fn tau(&self, k: f64) -> f64 {
        self.p.a * self.phase_arg(k).cos()
    }

    /// ς(k); the paper writes this with a varsigma.
    pub fn sigma(&self, k: f64) -> f64 {
        self.p.a * self.phase_arg(k).sin()
    }

    pub fn eta(&self, k: f64) -> f64 {
        (1.0 - self.tau(k).powi(2)).max(0.0).sqrt()
    }

    pub fn theta_star(&self) -> f64 {
        self.p.theta_star()
    }
}

/// Eigen-data of Û(k): eigenvalues λ_j, unit eigenvectors u_j, and group
/// velocities v_j, indexed j = 1, 2 (stored at j − 1).
#[derive(Debug, Clone)]
pub struct SymbolEigen {
    pub k: f64,
    pub lambda: [C64; 2],
    pub u: [Vec2; 2],
    pub v: [f64; 2],
}

fn sign_of(j: usize) -> f64 {
    assert!(j == 1 || j == 2, "branch index must be 1 or 2, got {j}");
    if j == 1 {
        1.0
    } else {
        -1.0
    }
}

/// Case-resolved trigonometric data: exact limits in the degenerate cases.
fn case_data(p: &CoinParams, k: f64) -> (f64, f64, f64) {
    match p.case() {
        CoinCase::Zero => (0.0, 0.0, 1.0),
        _ => {
            let aux = Aux::new(p);
            (aux.tau(k), aux.sigma(k), aux.eta(k))
        }
    }
}

/// Û(k) = diag(e^{ik}, e^{−ik})·C as an explicit 2×2 unitary.
pub fn symbol_at(p: &CoinParams, k: f64) -> Mat2 {
    let up = C64::from_polar(1.0, k);
    let dn = C64::from_polar(1.0, -k);
    Mat2::new(
        up * C64::from_polar(p.a, p.alpha),
        up * C64::from_polar(p.b, p.beta),
        dn * -C64::from_polar(p.b, p.delta - p.beta),
        dn * C64::from_polar(p.a, p.delta - p.alpha),
    )
}

/// Closed-form eigenvalues, eigenvectors, and velocities of Û(k).
pub fn eigenpairs(p: &CoinParams, k: f64) -> SymbolEigen {
    match p.case() {
        CoinCase::One => {
            let lambda = [
                C64::from_polar(1.0, k + p.alpha),
                C64::from_polar(1.0, -(k + p.alpha - p.delta)),
            ];
            SymbolEigen {
                k,
                lambda,
                u: [[ONE, ZERO], [ZERO, ONE]],
                v: [-1.0, 1.0],
            }
        }
        _ => {
            let (tau, sig, eta) = case_data(p, k);
            let half_det = C64::from_polar(1.0, 0.5 * p.delta);
            let bk = C64::from_polar(p.b, k + p.beta - 0.5 * p.delta);
            let mut lambda = [ZERO; 2];
            let mut u = [[ZERO; 2]; 2];
            let mut v = [0.0; 2];
            for j in [1, 2] {
                let s = sign_of(j);
                lambda[j - 1] = half_det * C64::new(tau, s * eta);
                let norm = (eta + s * sig).sqrt() / (p.b * (2.0 * eta).sqrt());
                u[j - 1] = [
                    I * bk * C64::new(norm, 0.0),
                    C64::new(norm * (sig - s * eta), 0.0),
                ];
                v[j - 1] = if p.case() == CoinCase::Zero {
                    0.0
                } else {
                    -s * sig / eta
                };
            }
            SymbolEigen { k, lambda, u, v }
        }
    }
}

/// Group velocity v_j(k) = i λ'_j(k)/λ_j(k).
pub fn velocity(p: &CoinParams, k: f64, j: usize) -> f64 {
    let s = sign_of(j);
    match p.case() {
        CoinCase::Zero => 0.0,
        CoinCase::One => -s,
        CoinCase::Mid => {
            let (_, sig, eta) = case_data(p, k);
            -s * sig / eta
        }
    }
}

/// v'_j(k); zero in both degenerate cases.
pub fn velocity_derivative(p: &CoinParams, k: f64, j: usize) -> f64 {
    let s = sign_of(j);
    match p.case() {
        CoinCase::Zero | CoinCase::One => 0.0,
        CoinCase::Mid => {
            let (tau, _, eta) = case_data(p, k);
            -s * tau * p.b * p.b / eta.powi(3)
        }
    }
}

/// Analytic k-derivatives u'_j(k) of the eigenvectors from `eigenpairs`.
/// Zero for a = 1, where the eigenvectors are constant.
pub fn eigenvector_derivatives(p: &CoinParams, k: f64) -> [Vec2; 2] {
    match p.case() {
        CoinCase::One => [[ZERO; 2], [ZERO; 2]],
        _ => {
            let (tau, sig, eta) = case_data(p, k);
            let bk = C64::from_polar(p.b, k + p.beta - 0.5 * p.delta);
            let g = sig / eta;
            let gp = tau * p.b * p.b / eta.powi(3);
            let mut out = [[ZERO; 2]; 2];
            for j in [1, 2] {
                let s = sign_of(j);
                let norm = (eta + s * sig).sqrt() / (p.b * (2.0 * eta).sqrt());
                let norm_prime = norm * s * gp / (2.0 * (1.0 + s * g));
                let w = sig - s * eta;
                let w_prime = tau * (1.0 - s * g);
                // u_j = N (i b(k), w); b'(k) = i b(k).
                out[j - 1] = [
                    I * bk * C64::new(norm_prime, 0.0) - bk * C64::new(norm, 0.0),
                    C64::new(norm_prime * w + norm * w_prime, 0.0),
                ];
            }
            out
        }
    }
}

/// V̂(k) = Σ_j v_j(k) |u_j⟩⟨u_j| (Hermitian, commutes with Û(k)).
pub fn v_hat(p: &CoinParams, k: f64) -> Mat2 {
    let e = eigenpairs(p, k);
    let mut m = Mat2::zero();
    for j in 0..2 {
        m = m + Mat2::outer(e.u[j], e.u[j]).scale(C64::new(e.v[j], 0.0));
    }
    m
}

/// Ĥ(k) = −Σ_j v'_j(k) |u_j⟩⟨u_j|.
pub fn h_hat(p: &CoinParams, k: f64) -> Mat2 {
    let e = eigenpairs(p, k);
    let mut m = Mat2::zero();
    for j in 0..2 {
        let vp = velocity_derivative(p, k, j + 1);
        m = m + Mat2::outer(e.u[j], e.u[j]).scale(C64::new(-vp, 0.0));
    }
    m
}
