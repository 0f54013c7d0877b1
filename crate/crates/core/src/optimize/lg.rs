//! Local-global sequences: `j1` local iterations then the bulk global
//! segment.

use rayon::prelude::*;
use std::f64::consts::PI;

use super::{pick_best, Candidate, Family, ScaledSchedule, GRID_STEP, REFINE_TOL};
use crate::error::Error;
use crate::model::Parity;
use crate::roots::{best_feasible_root, bisect_any, golden_max, roots_full_period};

/// Leftover amplitude outside the target block after the sequence, as a
/// function of the scaled parameters:
/// `F = [sin^2(g)cos(2a) + cos^2(g)] sin(2e/sqrt(K))
///    - sin(g) sin(2a) cos(2e/sqrt(K)) + p sin^2(g) [1 - cos(2a)]`.
pub fn lg_residual(gamma: f64, alpha: f64, eta: f64, parity: Parity, k: u64) -> f64 {
    let p = parity.sign();
    let (s, c) = gamma.sin_cos();
    let y = 2.0 * eta / (k as f64).sqrt();
    let (sy, cy) = y.sin_cos();
    let (sa, ca) = (2.0 * alpha).sin_cos();
    (s * s * ca + c * c) * sy - s * sa * cy + p * s * s * (1.0 - ca)
}

/// Stationarity of `R = eta - alpha` along the constraint:
/// `H = 2 sin(a) [cos^2(g) sin(a) cos(2e/sqrt(K)) + p sin(g) cos(a)]`.
pub fn lg_stationarity(gamma: f64, alpha: f64, eta: f64, parity: Parity, k: u64) -> f64 {
    let p = parity.sign();
    let (s, c) = gamma.sin_cos();
    let y = 2.0 * eta / (k as f64).sqrt();
    let (sal, cal) = alpha.sin_cos();
    2.0 * sal * (c * c * sal * y.cos() + p * s * cal)
}

/// Smallest nonnegative root of the constraint in `eta`, scanning
/// `2*eta/sqrt(K)` over one full period.
pub fn lg_solve_eta(gamma: f64, alpha: f64, parity: Parity, k: u64) -> Result<f64, Error> {
    let half_sqrt_k = 0.5 * (k as f64).sqrt();
    roots_full_period(|y| lg_residual(gamma, alpha, half_sqrt_k * y, parity, k))
        .first()
        .map(|&y| half_sqrt_k * y)
        .ok_or(Error::NoRoot {
            context: "local-global constraint",
        })
}

/// Largest feasible root in `eta` (bulk global count stays nonnegative),
/// i.e. the root maximizing `R` at this `alpha`.
pub(crate) fn lg_best_eta(gamma: f64, alpha: f64, parity: Parity, k: u64) -> Option<f64> {
    let half_sqrt_k = 0.5 * (k as f64).sqrt();
    best_feasible_root(|y| lg_residual(gamma, alpha, half_sqrt_k * y, parity, k))
        .map(|y| half_sqrt_k * y)
}

/// Large-block, large-K series of the odd-branch optimum:
/// `alpha = g + g^3/2`, `eta = g + 2g^3/3`, `R = g^3/6`.
pub fn lg_asymptotic(gamma: f64) -> (f64, f64, f64) {
    let g3 = gamma * gamma * gamma;
    (gamma + 0.5 * g3, gamma + 2.0 * g3 / 3.0, g3 / 6.0)
}

/// Maximizes `R = eta(alpha) - alpha` over `alpha` in `[0, pi)`.
///
/// Dense grid scan, golden-section refinement, then a stationarity polish:
/// the final `alpha` is the root of the bracketed factor of
/// [`lg_stationarity`] whenever the optimum is interior.
pub fn lg_optimal(k: u64, parity: Parity) -> Result<ScaledSchedule, Error> {
    if k < 2 {
        return Err(Error::TooSmall {
            what: "block count K",
            min: 2,
            got: k,
        });
    }
    let gamma = (k as f64).sqrt().recip().asin();
    let candidate_at = |alpha: f64| -> Option<Candidate> {
        lg_best_eta(gamma, alpha, parity, k).map(|eta| Candidate {
            alpha,
            beta: 0.0,
            delta: 0.0,
            eta,
            r: eta - alpha,
        })
    };
    let r_or_neg_inf =
        |alpha: f64| candidate_at(alpha).map_or(f64::NEG_INFINITY, |c| c.r);

    let steps = (PI / GRID_STEP) as usize;
    let mut candidates: Vec<Candidate> = (0..steps)
        .into_par_iter()
        .filter_map(|i| candidate_at(i as f64 * GRID_STEP))
        .collect();
    let grid_best = pick_best(&candidates).ok_or(Error::NoRoot {
        context: "local-global optimization grid",
    })?;

    let lo = (grid_best.alpha - GRID_STEP).max(0.0);
    let hi = (grid_best.alpha + GRID_STEP).min(PI);
    let (refined_alpha, _) = golden_max(r_or_neg_inf, lo, hi, REFINE_TOL);
    candidates.extend(candidate_at(refined_alpha));

    // The plateau of R around an interior optimum can be flat to within
    // rounding; the stationarity root pins alpha sharply.
    if refined_alpha > 2.0 * GRID_STEP {
        let bracket = |alpha: f64| match lg_best_eta(gamma, alpha, parity, k) {
            Some(eta) => {
                lg_stationarity(gamma, alpha, eta, parity, k) / (2.0 * alpha.sin())
            }
            None => f64::NAN,
        };
        let (lo, hi) = (refined_alpha - GRID_STEP, (refined_alpha + GRID_STEP).min(PI));
        if bracket(lo).is_finite() && bracket(hi).is_finite() {
            if let Some(stationary) = bisect_any(bracket, lo, hi) {
                candidates.extend(candidate_at(stationary));
            }
        }
    }

    let best = pick_best(&candidates).expect("grid best is always present");
    Ok(ScaledSchedule {
        family: Family::Lg,
        alpha: best.alpha,
        beta: 0.0,
        delta: 0.0,
        eta: best.eta,
        parity,
    })
}
