//! Angle normalization and circular distance helpers.

use std::f64::consts::{PI, TAU};

/// Normalize to the branch (−π, π], mapping −π to +π.
pub fn norm_pm_pi(x: f64) -> f64 {
    let r = (x + PI).rem_euclid(TAU);
    if r == 0.0 {
        PI
    } else {
        r - PI
    }
}

/// Normalize to [0, 2π).
pub fn norm_2pi(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r == TAU {
        0.0
    } else {
        r
    }
}

/// Distance between two angles along the circle, in [0, π].
pub fn circ_dist(a: f64, b: f64) -> f64 {
    let d = (norm_2pi(a) - norm_2pi(b)).abs();
    d.min(TAU - d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pm_pi_branch() {
        assert_eq!(norm_pm_pi(-PI), PI);
        assert_eq!(norm_pm_pi(PI), PI);
        assert!((norm_pm_pi(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert!((norm_pm_pi(-0.1) + 0.1).abs() < 1e-15);
    }

    #[test]
    fn two_pi_range() {
        assert_eq!(norm_2pi(TAU), 0.0);
        assert!((norm_2pi(-0.5) - (TAU - 0.5)).abs() < 1e-15);
        assert!(norm_2pi(7.0) >= 0.0 && norm_2pi(7.0) < TAU);
    }

    #[test]
    fn circular_distance_wraps() {
        assert!((circ_dist(0.1, TAU - 0.1) - 0.2).abs() < 1e-15);
        assert!((circ_dist(1.0, 1.0)).abs() < 1e-15);
        assert!((circ_dist(0.0, PI) - PI).abs() < 1e-15);
    }
}
