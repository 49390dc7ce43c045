//! Arc geometry of σ(U_★), essential spectrum, thresholds, and the Mourre
//! function ρ̃.
//!
//! For a ∈ (0, 1) the symbol spectrum consists of two closed arcs of the unit
//! circle of length π − 2θ each, θ = arccos a, symmetric about the axis
//! e^{iδ/2}. For a = 1 it is the whole circle, for a = 0 two points of
//! infinite multiplicity. Thresholds are the arc endpoints of either
//! asymptotic side; the Mourre function vanishes exactly there and is
//! strictly positive on arc interiors.

use crate::angle::{circ_dist, norm_2pi};
use crate::coin::{CoinCase, CoinParams};
use std::f64::consts::{PI, TAU};

const MERGE_TOL: f64 = 1e-12;

/// A closed arc {e^{iγ} : γ ∈ [start, start + len]} with start ∈ [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub start: f64,
    pub len: f64,
}

/// A closed subset of the unit circle: a disjoint union of arcs, plus
/// isolated points (each an eigenvalue of infinite multiplicity, arising
/// only from a = 0 sides).
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralArcs {
    pub arcs: Vec<Arc>,
    pub points: Vec<f64>,
}

impl SpectralArcs {
    pub fn full_circle() -> Self {
        SpectralArcs {
            arcs: vec![Arc { start: 0.0, len: TAU }],
            points: vec![],
        }
    }

    pub fn total_length(&self) -> f64 {
        self.arcs.iter().map(|a| a.len).sum()
    }

    /// Non-wrapping cover of the arcs by intervals [s, e] ⊆ [0, 2π].
    fn pieces(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        for a in &self.arcs {
            let s = norm_2pi(a.start);
            let e = s + a.len;
            if e <= TAU + MERGE_TOL {
                out.push((s, e.min(TAU)));
            } else {
                out.push((s, TAU));
                out.push((0.0, e - TAU));
            }
        }
        out
    }
}

/// Which asymptotic side a threshold comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    Left,
    Right,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Threshold {
    pub angle: f64,
    pub origin: Origin,
}

/// The threshold set τ(U) = ∂σ(U_ℓ) ∪ ∂σ(U_r); at most 8 points.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdSet {
    pub points: Vec<Threshold>,
}

impl ThresholdSet {
    pub fn angles(&self) -> Vec<f64> {
        self.points.iter().map(|t| t.angle).collect()
    }

    /// Circular distance from γ to the nearest threshold (∞ if none).
    pub fn distance(&self, gamma: f64) -> f64 {
        self.points
            .iter()
            .map(|t| circ_dist(gamma, t.angle))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Value of the Mourre function: a nonnegative real, or +∞ off the spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RhoValue {
    Finite(f64),
    Infinite,
}

impl RhoValue {
    pub fn min(self, other: RhoValue) -> RhoValue {
        match (self, other) {
            (RhoValue::Infinite, y) => y,
            (x, RhoValue::Infinite) => x,
            (RhoValue::Finite(x), RhoValue::Finite(y)) => RhoValue::Finite(x.min(y)),
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            RhoValue::Finite(x) => *x > 0.0,
            RhoValue::Infinite => true,
        }
    }
}

/// σ(U_★) as arcs/points of the unit circle.
pub fn arcs(p: &CoinParams) -> SpectralArcs {
    match p.case() {
        CoinCase::One => SpectralArcs::full_circle(),
        CoinCase::Zero => SpectralArcs {
            arcs: vec![],
            points: vec![
                norm_2pi(0.5 * p.delta + 0.5 * PI),
                norm_2pi(0.5 * p.delta + 1.5 * PI),
            ],
        },
        CoinCase::Mid => {
            let theta = p.theta_star();
            let len = PI - 2.0 * theta;
            SpectralArcs {
                arcs: vec![
                    Arc {
                        start: norm_2pi(0.5 * p.delta + theta),
                        len,
                    },
                    Arc {
                        start: norm_2pi(PI + 0.5 * p.delta + theta),
                        len,
                    },
                ],
                points: vec![],
            }
        }
    }
}

/// Circular distance from γ to the set (0 when inside an arc or on a point).
pub fn distance_to(s: &SpectralArcs, gamma: f64) -> f64 {
    let g = norm_2pi(gamma);
    let mut d = f64::INFINITY;
    for (lo, hi) in s.pieces() {
        if g >= lo - MERGE_TOL && g <= hi + MERGE_TOL {
            return 0.0;
        }
        d = d.min(circ_dist(g, lo)).min(circ_dist(g, hi));
    }
    for p in &s.points {
        d = d.min(circ_dist(g, *p));
    }
    d
}

/// Membership of e^{iγ} in the set, boundary counted inside.
/// For a ∈ (0, 1) this is equivalent to |cos(γ − δ/2)| ≤ a.
pub fn contains(s: &SpectralArcs, gamma: f64) -> bool {
    let g = norm_2pi(gamma);
    for (lo, hi) in s.pieces() {
        if g >= lo - MERGE_TOL && g <= hi + MERGE_TOL {
            return true;
        }
    }
    s.points.iter().any(|p| circ_dist(g, *p) <= MERGE_TOL)
}

/// Membership of e^{iγ} in a single arc, boundary counted inside.
pub fn arc_contains(arc: &Arc, gamma: f64) -> bool {
    let g = norm_2pi(gamma);
    let s = norm_2pi(arc.start);
    let e = s + arc.len;
    (g >= s - MERGE_TOL && g <= e + MERGE_TOL)
        || (e > TAU && g <= e - TAU + MERGE_TOL)
}

/// Normalized union of arc sets: overlapping or touching arcs are merged,
/// wrap-around is re-joined, and point entries are carried over.
fn merge_arc_sets(sets: &[&SpectralArcs]) -> SpectralArcs {
    let mut pieces: Vec<(f64, f64)> = sets.iter().flat_map(|s| s.pieces()).collect();
    let mut points: Vec<f64> = sets.iter().flat_map(|s| s.points.iter().copied()).collect();
    points.sort_by(f64::total_cmp);
    points.dedup_by(|a, b| circ_dist(*a, *b) <= MERGE_TOL);

    if pieces.is_empty() {
        return SpectralArcs { arcs: vec![], points };
    }
    pieces.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut merged: Vec<(f64, f64)> = vec![pieces[0]];
    for &(lo, hi) in &pieces[1..] {
        let last = merged.last_mut().unwrap();
        if lo <= last.1 + MERGE_TOL {
            last.1 = last.1.max(hi);
        } else {
            merged.push((lo, hi));
        }
    }
    // Re-join across the cut at 0 if both ends touch it.
    let covers_all = merged.len() == 1 && merged[0].0 <= MERGE_TOL && merged[0].1 >= TAU - MERGE_TOL;
    if covers_all {
        return SpectralArcs {
            arcs: vec![Arc { start: 0.0, len: TAU }],
            points,
        };
    }
    let mut arcs: Vec<Arc> = Vec::new();
    let wraps = merged.len() >= 2
        && merged.first().unwrap().0 <= MERGE_TOL
        && merged.last().unwrap().1 >= TAU - MERGE_TOL;
    if wraps {
        let first = merged.remove(0);
        let last = merged.pop().unwrap();
        arcs.push(Arc {
            start: last.0,
            len: (TAU - last.0) + first.1,
        });
    }
    for (lo, hi) in merged {
        arcs.push(Arc {
            start: lo,
            len: hi - lo,
        });
    }
    arcs.sort_by(|x, y| x.start.total_cmp(&y.start));
    SpectralArcs { arcs, points }
}

/// Essential spectrum of U: σ(U_ℓ) ∪ σ(U_r), normalized.
pub fn essential_spectrum(left: &CoinParams, right: &CoinParams) -> SpectralArcs {
    let l = arcs(left);
    let r = arcs(right);
    merge_arc_sets(&[&l, &r])
}

fn side_endpoint_angles(p: &CoinParams) -> Vec<f64> {
    match p.case() {
        CoinCase::One => vec![],
        CoinCase::Zero => vec![
            norm_2pi(0.5 * p.delta + 0.5 * PI),
            norm_2pi(0.5 * p.delta + 1.5 * PI),
        ],
        CoinCase::Mid => {
            let theta = p.theta_star();
            let d2 = 0.5 * p.delta;
            vec![
                norm_2pi(d2 + theta),
                norm_2pi(d2 + PI - theta),
                norm_2pi(d2 + PI + theta),
                norm_2pi(d2 + TAU - theta),
            ]
        }
    }
}

/// τ(U): arc endpoints of both sides, duplicates merged within 1e−10.
pub fn thresholds(left: &CoinParams, right: &CoinParams) -> ThresholdSet {
    let mut raw: Vec<Threshold> = side_endpoint_angles(left)
        .into_iter()
        .map(|angle| Threshold {
            angle,
            origin: Origin::Left,
        })
        .chain(side_endpoint_angles(right).into_iter().map(|angle| Threshold {
            angle,
            origin: Origin::Right,
        }))
        .collect();
    raw.sort_by(|x, y| x.angle.total_cmp(&y.angle));
    let mut points: Vec<Threshold> = Vec::new();
    for t in raw {
        match points.last_mut() {
            Some(last) if circ_dist(last.angle, t.angle) <= 1e-10 => {
                if last.origin != t.origin {
                    last.origin = Origin::Both;
                }
            }
            _ => points.push(t),
        }
    }
    // The sort above cannot see wrap-around duplicates (e.g. 0 vs 2π − 1e−12).
    if points.len() >= 2 {
        let first = points[0];
        let last = *points.last().unwrap();
        if circ_dist(first.angle, last.angle) <= 1e-10 {
            points.pop();
            if first.origin != last.origin {
                points[0].origin = Origin::Both;
            }
        }
    }
    ThresholdSet { points }
}

/// Complement of the arc union in [0, 2π), as normalized arcs.
/// Point entries carry no interior and do not affect the complement.
pub fn gaps(s: &SpectralArcs) -> SpectralArcs {
    let normalized = merge_arc_sets(&[s]);
    if normalized.arcs.is_empty() {
        return SpectralArcs::full_circle();
    }
    if normalized.total_length() >= TAU - MERGE_TOL {
        return SpectralArcs {
            arcs: vec![],
            points: vec![],
        };
    }
    let mut ends: Vec<(f64, f64)> = normalized
        .arcs
        .iter()
        .map(|a| (norm_2pi(a.start), a.len))
        .collect();
    ends.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut out = Vec::new();
    for i in 0..ends.len() {
        let cur_end = ends[i].0 + ends[i].1;
        let next_start = if i + 1 < ends.len() {
            ends[i + 1].0
        } else {
            ends[0].0 + TAU
        };
        let len = next_start - cur_end;
        if len > MERGE_TOL {
            out.push(Arc {
                start: norm_2pi(cur_end),
                len,
            });
        }
    }
    out.sort_by(|x, y| x.start.total_cmp(&y.start));
    SpectralArcs {
        arcs: out,
        points: vec![],
    }
}

/// The asymptotic Mourre function ρ̃ of one side, evaluated at e^{iθ}:
/// +∞ off the spectrum, 0 at arc endpoints (and at the two point-spectrum
/// angles when a = 0), the closed-form interior value
/// (a² − c²)/(1 − c²) with c = cos(θ − δ/2) otherwise, and constantly 1
/// when a = 1.
pub fn rho_tilde_asymptotic(p: &CoinParams, theta: f64) -> RhoValue {
    match p.case() {
        CoinCase::One => RhoValue::Finite(1.0),
        CoinCase::Zero => {
            let points = [
                norm_2pi(0.5 * p.delta + 0.5 * PI),
                norm_2pi(0.5 * p.delta + 1.5 * PI),
            ];
            if points.iter().any(|q| circ_dist(theta, *q) <= MERGE_TOL) {
                RhoValue::Finite(0.0)
            } else {
                RhoValue::Infinite
            }
        }
        CoinCase::Mid => {
            let c = (theta - 0.5 * p.delta).cos();
            let gap = c.abs() - p.a;
            if gap > MERGE_TOL {
                RhoValue::Infinite
            } else if gap.abs() <= MERGE_TOL {
                RhoValue::Finite(0.0)
            } else {
                RhoValue::Finite((p.a * p.a - c * c) / (1.0 - c * c))
            }
        }
    }
}

/// Lower bound for the Mourre function of the full walk at e^{iθ}:
/// the smaller of the two asymptotic values.
pub fn mourre_lower_bound(left: &CoinParams, right: &CoinParams, theta: f64) -> RhoValue {
    rho_tilde_asymptotic(left, theta).min(rho_tilde_asymptotic(right, theta))
}
