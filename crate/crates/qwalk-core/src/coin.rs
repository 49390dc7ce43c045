//! 2×2 unitary coins, their canonical parametrization, and position-dependent
//! coin fields.
//!
//! A coin is parametrized as
//!
//! ```text
//! C = [[ a e^{iα},       b e^{iβ}      ],
//!      [ −b e^{i(δ−β)},  a e^{i(δ−α)} ]]
//! ```
//!
//! with a, b ≥ 0, a² + b² = 1 and det C = e^{iδ}. The branch δ ∈ (−π, π] and
//! the conventions α = 0 when a = 0, β = 0 when b = 0 make the parametrization
//! single-valued, so `parametrize` and `reconstruct` are mutual inverses.

use crate::angle::{norm_2pi, norm_pm_pi};
use crate::error::{validation, Result};
use crate::mat2::{C64, Mat2, ONE};
use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;

/// Below this, `a` (resp. `b`) is treated as exactly 0; above `1 − cutoff`,
/// as exactly 1. This drives the three-way case split used downstream.
pub const DEGENERACY_CUTOFF: f64 = 1e-12;

const UNITARITY_TOL: f64 = 1e-12;

/// A validated 2×2 unitary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinMatrix {
    m: Mat2,
}

impl CoinMatrix {
    /// Validates unitarity (‖C*C − I‖ ≤ 1e−12) and |det C| = 1.
    pub fn new(c00: C64, c01: C64, c10: C64, c11: C64) -> Result<Self> {
        let m = Mat2::new(c00, c01, c10, c11);
        let defect = m.unitarity_defect();
        if defect > UNITARITY_TOL {
            return Err(validation(format!(
                "coin is not unitary: ‖C*C − I‖ = {defect:.3e} exceeds {UNITARITY_TOL:.0e}"
            )));
        }
        let det_err = (m.det().norm() - 1.0).abs();
        if det_err > UNITARITY_TOL {
            return Err(validation(format!(
                "coin determinant off the unit circle: ||det| − 1| = {det_err:.3e} exceeds {UNITARITY_TOL:.0e}"
            )));
        }
        Ok(CoinMatrix { m })
    }

    pub fn from_mat2(m: Mat2) -> Result<Self> {
        CoinMatrix::new(m.e[0][0], m.e[0][1], m.e[1][0], m.e[1][1])
    }

    pub fn hadamard() -> Self {
        let s = C64::new(FRAC_1_SQRT_2, 0.0);
        CoinMatrix {
            m: Mat2::new(s, s, s, -s),
        }
    }

    pub fn identity() -> Self {
        CoinMatrix {
            m: Mat2::identity(),
        }
    }

    /// The one-defect coin diag(1, −1).
    pub fn defect() -> Self {
        CoinMatrix {
            m: Mat2::diag(ONE, -ONE),
        }
    }

    pub fn mat(&self) -> Mat2 {
        self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.m.e[i][j]
    }

    pub fn op_norm_diff(&self, other: &CoinMatrix) -> f64 {
        (self.m - other.m).op_norm()
    }

    /// Multiplies every entry by a global phase e^{iφ} (still unitary).
    pub fn phase_rotated(&self, phi: f64) -> Self {
        CoinMatrix {
            m: self.m.scale(C64::from_polar(1.0, phi)),
        }
    }
}

/// Which of the paper's three spectral cases the coin falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoinCase {
    /// a = 0: pure point spectrum.
    Zero,
    /// a ∈ (0, 1): two proper arcs.
    Mid,
    /// a = 1: full circle.
    One,
}

/// Canonical coin parameters (a, b, α, β, δ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinParams {
    pub a: f64,
    pub b: f64,
    pub alpha: f64,
    pub beta: f64,
    pub delta: f64,
}

impl CoinParams {
    pub fn new(a: f64, b: f64, alpha: f64, beta: f64, delta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&a) || !(0.0..=1.0).contains(&b) {
            return Err(validation(format!(
                "coin amplitudes must lie in [0, 1], got a = {a}, b = {b}"
            )));
        }
        let sphere_err = (a * a + b * b - 1.0).abs();
        if sphere_err > UNITARITY_TOL {
            return Err(validation(format!(
                "coin amplitudes must satisfy a² + b² = 1: off by {sphere_err:.3e}"
            )));
        }
        Ok(CoinParams {
            a,
            b,
            alpha: norm_pm_pi(alpha),
            beta: norm_pm_pi(beta),
            delta: norm_pm_pi(delta),
        })
    }

    /// Builds params from `a` alone, with b = √(1 − a²).
    pub fn from_a(a: f64, alpha: f64, beta: f64, delta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&a) {
            return Err(validation(format!("a must lie in [0, 1], got {a}")));
        }
        CoinParams::new(a, (1.0 - a * a).max(0.0).sqrt(), alpha, beta, delta)
    }

    pub fn case(&self) -> CoinCase {
        if self.a < DEGENERACY_CUTOFF {
            CoinCase::Zero
        } else if 1.0 - self.a < DEGENERACY_CUTOFF {
            CoinCase::One
        } else {
            CoinCase::Mid
        }
    }

    /// θ = arccos a, the half-gap angle of the spectral arcs.
    pub fn theta_star(&self) -> f64 {
        self.a.clamp(0.0, 1.0).acos()
    }
}

/// Extracts (a, b, α, β, δ) from a unitary coin.
pub fn parametrize(c: &CoinMatrix) -> CoinParams {
    let a = c.entry(0, 0).norm();
    let b = c.entry(0, 1).norm();
    let delta = norm_pm_pi(c.mat().det().arg());
    let alpha = if a < DEGENERACY_CUTOFF {
        0.0
    } else {
        norm_pm_pi(c.entry(0, 0).arg())
    };
    let beta = if b < DEGENERACY_CUTOFF {
        0.0
    } else {
        norm_pm_pi(c.entry(0, 1).arg())
    };
    CoinParams {
        a,
        b,
        alpha,
        beta,
        delta,
    }
}

/// Rebuilds the coin matrix from its parameters.
pub fn reconstruct(p: &CoinParams) -> Result<CoinMatrix> {
    let sphere_err = (p.a * p.a + p.b * p.b - 1.0).abs();
    if sphere_err > UNITARITY_TOL {
        return Err(validation(format!(
            "cannot reconstruct: a² + b² = 1 violated by {sphere_err:.3e}"
        )));
    }
    let c00 = C64::from_polar(p.a, p.alpha);
    let c01 = C64::from_polar(p.b, p.beta);
    let c10 = -C64::from_polar(p.b, p.delta - p.beta);
    let c11 = C64::from_polar(p.a, p.delta - p.alpha);
    CoinMatrix::new(c00, c01, c10, c11)
}

#[derive(Debug, Clone)]
enum FieldRule {
    Constant {
        coin: CoinMatrix,
    },
    TwoPhase {
        plus: CoinMatrix,
        minus: CoinMatrix,
        defect: Option<CoinMatrix>,
    },
    SplitStep {
        theta_minus: f64,
        theta_plus: f64,
        scale: f64,
    },
    Table {
        entries: BTreeMap<i64, CoinMatrix>,
        left: CoinMatrix,
        right: CoinMatrix,
    },
}

/// A position-dependent coin x ↦ C(x) with declared left/right asymptotics
/// and short-range constants (κ, ε) per side.
#[derive(Debug, Clone)]
pub struct CoinField {
    rule: FieldRule,
    /// Global phase e^{iφ} multiplying every coin (used by spectral
    /// covariance checks; 0 for all named families).
    global_phase: f64,
    pub kappa_l: f64,
    pub kappa_r: f64,
    pub eps_l: f64,
    pub eps_r: f64,
}

impl CoinField {
    pub fn constant(coin: CoinMatrix) -> Self {
        CoinField {
            rule: FieldRule::Constant { coin },
            global_phase: 0.0,
            kappa_l: 1.0,
            kappa_r: 1.0,
            eps_l: 1.0,
            eps_r: 1.0,
        }
    }

    /// Explicit per-site coins inside a finite table, with tail coins used
    /// outside it (left tail for x < 0, right tail for x ≥ 0).
    pub fn table(
        entries: impl IntoIterator<Item = (i64, CoinMatrix)>,
        left: CoinMatrix,
        right: CoinMatrix,
        kappa: f64,
        eps: f64,
    ) -> Result<Self> {
        if kappa <= 0.0 || eps <= 0.0 {
            return Err(validation("short-range constants κ, ε must be positive"));
        }
        Ok(CoinField {
            rule: FieldRule::Table {
                entries: entries.into_iter().collect(),
                left,
                right,
            },
            global_phase: 0.0,
            kappa_l: kappa,
            kappa_r: kappa,
            eps_l: eps,
            eps_r: eps,
        })
    }

    pub fn coin_at(&self, x: i64) -> CoinMatrix {
        let c = self.raw_coin_at(x);
        if self.global_phase == 0.0 {
            c
        } else {
            c.phase_rotated(self.global_phase)
        }
    }

    fn raw_coin_at(&self, x: i64) -> CoinMatrix {
        match &self.rule {
            FieldRule::Constant { coin } => *coin,
            FieldRule::TwoPhase {
                plus,
                minus,
                defect,
            } => {
                if x == 0 {
                    if let Some(d) = defect {
                        return *d;
                    }
                }
                if x >= 0 {
                    *plus
                } else {
                    *minus
                }
            }
            FieldRule::SplitStep {
                theta_minus,
                theta_plus,
                scale,
            } => {
                let mid = 0.5 * (theta_minus + theta_plus);
                let half = 0.5 * (theta_plus - theta_minus);
                rotation(mid + half * (x as f64 / scale).tanh())
            }
            FieldRule::Table {
                entries,
                left,
                right,
            } => entries.get(&x).copied().unwrap_or(if x < 0 {
                *left
            } else {
                *right
            }),
        }
    }

    pub fn left_coin(&self) -> CoinMatrix {
        let c = match &self.rule {
            FieldRule::Constant { coin } => *coin,
            FieldRule::TwoPhase { minus, .. } => *minus,
            FieldRule::SplitStep { theta_minus, .. } => rotation(*theta_minus),
            FieldRule::Table { left, .. } => *left,
        };
        if self.global_phase == 0.0 {
            c
        } else {
            c.phase_rotated(self.global_phase)
        }
    }

    pub fn right_coin(&self) -> CoinMatrix {
        let c = match &self.rule {
            FieldRule::Constant { coin } => *coin,
            FieldRule::TwoPhase { plus, .. } => *plus,
            FieldRule::SplitStep { theta_plus, .. } => rotation(*theta_plus),
            FieldRule::Table { right, .. } => *right,
        };
        if self.global_phase == 0.0 {
            c
        } else {
            c.phase_rotated(self.global_phase)
        }
    }

    pub fn left_params(&self) -> CoinParams {
        parametrize(&self.left_coin())
    }

    pub fn right_params(&self) -> CoinParams {
        parametrize(&self.right_coin())
    }

    /// Rotates every coin of the field by a global phase e^{iφ}.
    pub fn phase_rotated(&self, phi: f64) -> Self {
        let mut out = self.clone();
        out.global_phase += phi;
        out
    }
}

/// The rotation coin R(θ) = [[cos(θ/2), −sin(θ/2)], [sin(θ/2), cos(θ/2)]].
pub fn rotation(theta: f64) -> CoinMatrix {
    let (s, c) = (0.5 * theta).sin_cos();
    CoinMatrix {
        m: Mat2::new(
            C64::new(c, 0.0),
            C64::new(-s, 0.0),
            C64::new(s, 0.0),
            C64::new(c, 0.0),
        ),
    }
}

/// The two-phase coin (1/√2)[[1, e^{iσ}], [e^{−iσ}, −1]].
pub fn phase_coin(sigma: f64) -> CoinMatrix {
    let s = FRAC_1_SQRT_2;
    CoinMatrix {
        m: Mat2::new(
            C64::new(s, 0.0),
            C64::from_polar(s, sigma),
            C64::from_polar(s, -sigma),
            C64::new(-s, 0.0),
        ),
    }
}

/// Two-phase field: C(x) uses σ₊ for x ≥ 0 and σ₋ for x ≤ −1. With
/// `with_defect`, C(0) is replaced by diag(1, −1). The asymptotics are exact,
/// so any positive (κ, ε) is valid; κ = ε = 1 is stored.
pub fn two_phase(sigma_plus: f64, sigma_minus: f64, with_defect: bool) -> CoinField {
    CoinField {
        rule: FieldRule::TwoPhase {
            plus: phase_coin(norm_2pi(sigma_plus)),
            minus: phase_coin(norm_2pi(sigma_minus)),
            defect: with_defect.then(CoinMatrix::defect),
        },
        global_phase: 0.0,
        kappa_l: 1.0,
        kappa_r: 1.0,
        eps_l: 1.0,
        eps_r: 1.0,
    }
}

/// Rotation-profile field C(x) = R(θ₂(x)) with
/// θ₂(x) = ½(θ₋+θ₊) + ½(θ₊−θ₋)·tanh(x/scale), interpolating between R(θ₋)
/// at −∞ and R(θ₊) at +∞. The exponential tail dominates any power law, so
/// κ = |θ₊ − θ₋|, ε = 1 is stored.
pub fn split_step_profile(theta_minus: f64, theta_plus: f64, scale: f64) -> Result<CoinField> {
    if scale.is_nan() || scale <= 0.0 {
        return Err(validation(format!("scale must be positive, got {scale}")));
    }
    let kappa = (theta_plus - theta_minus).abs().max(f64::MIN_POSITIVE);
    Ok(CoinField {
        rule: FieldRule::SplitStep {
            theta_minus,
            theta_plus,
            scale,
        },
        global_phase: 0.0,
        kappa_l: kappa,
        kappa_r: kappa,
        eps_l: 1.0,
        eps_r: 1.0,
    })
}

/// Outcome of a short-range tail check.
#[derive(Debug, Clone, PartialEq)]
pub struct ShortRangeReport {
    pub pass: bool,
    /// max over checked x of ‖C(x) − C_★‖ / (κ|x|^{−1−ε}).
    pub worst_ratio: f64,
    pub worst_x: Option<i64>,
}

/// Checks ‖C(x) − C_ℓ‖ ≤ κ|x|^{−1−ε} for x < 0 in the window, and the
/// symmetric bound with C_r for x > 0. x = 0 carries no constraint.
/// Failures are data, not errors.
pub fn verify_short_range(
    f: &CoinField,
    window: std::ops::RangeInclusive<i64>,
    kappa: f64,
    eps: f64,
) -> Result<ShortRangeReport> {
    if window.is_empty() {
        return Err(validation("short-range window must be nonempty"));
    }
    let left = f.left_coin();
    let right = f.right_coin();
    let mut worst_ratio = 0.0_f64;
    let mut worst_x = None;
    for x in window {
        if x == 0 {
            continue;
        }
        let tail = if x < 0 { &left } else { &right };
        let dev = f.coin_at(x).op_norm_diff(tail);
        let bound = kappa * (x.unsigned_abs() as f64).powf(-1.0 - eps);
        let ratio = dev / bound;
        if ratio > worst_ratio {
            worst_ratio = ratio;
            worst_x = Some(x);
        }
    }
    Ok(ShortRangeReport {
        pass: worst_ratio <= 1.0 + 1e-12,
        worst_ratio,
        worst_x,
    })
}
