//! States on ℤ, the shift S, coin application, the walk U = SC, position
//! observables, and the identification maps j_ℓ, j_r, J.
//!
//! A state is a finitely supported ℂ²-valued amplitude field. Storage is a
//! contiguous array of ℂ² cells plus an integer offset, so one evolution step
//! costs O(support) and the light cone |support(Ψ_t)| ⊆ support(Ψ₀) + t is
//! enforced exactly: the shift moves amplitudes by exactly one site and
//! anything outside stays exactly zero.

use crate::coin::CoinField;
use crate::mat2::{C64, Vec2, ZERO};

/// Finitely supported ℂ²-valued wave function on ℤ.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkState {
    offset: i64,
    amps: Vec<[C64; 2]>,
}

impl WalkState {
    /// The zero state.
    pub fn zero() -> Self {
        WalkState {
            offset: 0,
            amps: vec![],
        }
    }

    /// δ_x ⊗ spinor.
    pub fn delta(x: i64, spinor: Vec2) -> Self {
        let mut s = WalkState {
            offset: x,
            amps: vec![spinor],
        };
        s.trim();
        s
    }

    /// Builds a state from (site, spinor) pairs; later duplicates overwrite.
    pub fn from_sites(sites: impl IntoIterator<Item = (i64, Vec2)>) -> Self {
        let sites: Vec<(i64, Vec2)> = sites.into_iter().collect();
        let Some(&(first, _)) = sites.first() else {
            return WalkState::zero();
        };
        let lo = sites.iter().map(|(x, _)| *x).min().unwrap_or(first);
        let hi = sites.iter().map(|(x, _)| *x).max().unwrap_or(first);
        let mut amps = vec![[ZERO; 2]; (hi - lo + 1) as usize];
        for (x, v) in sites {
            amps[(x - lo) as usize] = v;
        }
        let mut s = WalkState { offset: lo, amps };
        s.trim();
        s
    }

    fn trim(&mut self) {
        let is_zero = |c: &[C64; 2]| c[0] == ZERO && c[1] == ZERO;
        while self.amps.last().is_some_and(is_zero) {
            self.amps.pop();
        }
        let leading = self.amps.iter().take_while(|c| is_zero(c)).count();
        if leading > 0 {
            self.amps.drain(..leading);
            self.offset += leading as i64;
        }
        if self.amps.is_empty() {
            self.offset = 0;
        }
    }

    /// Amplitude at site x (zero outside the stored window).
    pub fn amp(&self, x: i64) -> Vec2 {
        if x < self.offset {
            return [ZERO; 2];
        }
        let i = (x - self.offset) as usize;
        self.amps.get(i).copied().unwrap_or([ZERO; 2])
    }

    /// Occupied window (lo, hi), if any.
    pub fn support(&self) -> Option<(i64, i64)> {
        if self.amps.is_empty() {
            None
        } else {
            Some((self.offset, self.offset + self.amps.len() as i64 - 1))
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Vec2)> + '_ {
        self.amps
            .iter()
            .enumerate()
            .map(move |(i, v)| (self.offset + i as i64, *v))
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps
            .iter()
            .map(|c| c[0].norm_sqr() + c[1].norm_sqr())
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Pointwise difference, mostly for residual checks in tests.
    pub fn sub(&self, other: &WalkState) -> WalkState {
        let lo = match (self.support(), other.support()) {
            (None, None) => return WalkState::zero(),
            (Some((a, _)), None) => a,
            (None, Some((b, _))) => b,
            (Some((a, _)), Some((b, _))) => a.min(b),
        };
        let hi = self
            .support()
            .map(|s| s.1)
            .into_iter()
            .chain(other.support().map(|s| s.1))
            .max()
            .unwrap();
        let mut amps = Vec::with_capacity((hi - lo + 1) as usize);
        for x in lo..=hi {
            let a = self.amp(x);
            let b = other.amp(x);
            amps.push([a[0] - b[0], a[1] - b[1]]);
        }
        let mut s = WalkState { offset: lo, amps };
        s.trim();
        s
    }
}

/// (SΨ)(x) = (Ψ⁽⁰⁾(x+1), Ψ⁽¹⁾(x−1)): the up component moves left, the down
/// component moves right. Exactly norm-preserving (a permutation of
/// amplitudes).
pub fn apply_shift(s: &WalkState) -> WalkState {
    let Some((lo, hi)) = s.support() else {
        return WalkState::zero();
    };
    let new_lo = lo - 1;
    let new_hi = hi + 1;
    let mut amps = vec![[ZERO; 2]; (new_hi - new_lo + 1) as usize];
    for (i, cell) in amps.iter_mut().enumerate() {
        let x = new_lo + i as i64;
        cell[0] = s.amp(x + 1)[0];
        cell[1] = s.amp(x - 1)[1];
    }
    let mut out = WalkState {
        offset: new_lo,
        amps,
    };
    out.trim();
    out
}

/// (CΨ)(x) = C(x)Ψ(x), sitewise.
pub fn apply_coin(f: &CoinField, s: &WalkState) -> WalkState {
    let mut out = s.clone();
    for (i, cell) in out.amps.iter_mut().enumerate() {
        let x = out.offset + i as i64;
        *cell = f.coin_at(x).mat().mul_vec(*cell);
    }
    out.trim();
    out
}

/// One step of U = S∘C.
pub fn step(f: &CoinField, s: &WalkState) -> WalkState {
    apply_shift(&apply_coin(f, s))
}

/// t steps of the walk.
pub fn evolve(f: &CoinField, s: &WalkState, t: usize) -> WalkState {
    let mut cur = s.clone();
    for _ in 0..t {
        cur = step(f, &cur);
    }
    cur
}

/// Position-distribution observables of a state.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservableReport {
    pub norm: f64,
    /// ⟨Q⟩ in lattice sites (normalized by ‖Ψ‖²).
    pub mean_position: f64,
    /// ⟨Q²⟩ in sites².
    pub second_moment: f64,
    /// Per-site probabilities p(x) = ‖Ψ(x)‖₂².
    pub distribution: Vec<(i64, f64)>,
}

pub fn observe(s: &WalkState) -> ObservableReport {
    let mut distribution = Vec::new();
    let mut total = 0.0;
    let mut m1 = 0.0;
    let mut m2 = 0.0;
    for (x, v) in s.iter() {
        let p = v[0].norm_sqr() + v[1].norm_sqr();
        distribution.push((x, p));
        total += p;
        m1 += x as f64 * p;
        m2 += (x as f64).powi(2) * p;
    }
    let (mean_position, second_moment) = if total > 0.0 {
        (m1 / total, m2 / total)
    } else {
        (0.0, 0.0)
    };
    ObservableReport {
        norm: total.sqrt(),
        mean_position,
        second_moment,
        distribution,
    }
}

/// Histogram of X_t/t after t steps. Exploratory output: the weak-limit
/// shape it suggests is not verified by this crate.
#[derive(Debug, Clone, PartialEq)]
pub struct VelocityHistogram {
    /// (bin center, probability mass) over x/t ∈ [−1, 1].
    pub bins: Vec<(f64, f64)>,
    /// max |x|/t over occupied sites.
    pub max_support_speed: f64,
}

pub fn velocity_histogram(
    f: &CoinField,
    s: &WalkState,
    t: usize,
    bins: usize,
) -> crate::error::Result<VelocityHistogram> {
    if t == 0 {
        return Err(crate::error::validation(
            "velocity histogram needs t ≥ 1 steps",
        ));
    }
    if bins == 0 {
        return Err(crate::error::validation("bin count must be positive"));
    }
    let final_state = evolve(f, s, t);
    let width = 2.0 / bins as f64;
    let mut mass = vec![0.0; bins];
    let mut max_speed = 0.0_f64;
    for (x, v) in final_state.iter() {
        let p = v[0].norm_sqr() + v[1].norm_sqr();
        if p == 0.0 {
            continue;
        }
        let speed = x as f64 / t as f64;
        max_speed = max_speed.max(speed.abs());
        let idx = (((speed + 1.0) / width) as usize).min(bins - 1);
        mass[idx] += p;
    }
    Ok(VelocityHistogram {
        bins: mass
            .iter()
            .enumerate()
            .map(|(i, m)| (-1.0 + (i as f64 + 0.5) * width, *m))
            .collect(),
        max_support_speed: max_speed,
    })
}

/// J(Ψℓ, Ψr) = jℓΨℓ + jrΨr with jr the indicator of x ≥ 0 and jℓ = 1 − jr.
pub fn join(left: &WalkState, right: &WalkState) -> WalkState {
    let mut sites = Vec::new();
    for (x, v) in left.iter() {
        if x < 0 {
            sites.push((x, v));
        }
    }
    for (x, v) in right.iter() {
        if x >= 0 {
            sites.push((x, v));
        }
    }
    WalkState::from_sites(sites)
}

/// J*Ψ = (jℓΨ, jrΨ).
pub fn split(s: &WalkState) -> (WalkState, WalkState) {
    let mut l = Vec::new();
    let mut r = Vec::new();
    for (x, v) in s.iter() {
        if x < 0 {
            l.push((x, v));
        } else {
            r.push((x, v));
        }
    }
    (WalkState::from_sites(l), WalkState::from_sites(r))
}
