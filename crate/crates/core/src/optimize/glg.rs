//! Global-local-global sequences: the bulk global segment, then `j1`
//! local iterations, then a trailing global segment of `beta*sqrt(b)`.

use rayon::prelude::*;
use std::f64::consts::{FRAC_PI_4, PI};

use super::{pick_best, Candidate, Family, ScaledSchedule, GRID_STEP, REFINE_TOL};
use crate::error::Error;
use crate::model::Parity;
use crate::roots::{best_feasible_root, golden_max};

/// Leftover amplitude outside the target block, with the substitutions
/// `2*j0*theta1 = pi/2 - 2*eta/sqrt(K)`, `2*j1*theta2 = 2*alpha` and
/// `2*j2*theta1 = 2*beta/sqrt(K)`; `parity` is the sign `(-1)^{j2}` of the
/// trailing segment.
pub fn glg_residual(
    gamma: f64,
    alpha: f64,
    beta: f64,
    eta: f64,
    parity: Parity,
    k: u64,
) -> f64 {
    let p = parity.sign();
    let (s, c) = gamma.sin_cos();
    let sqrt_k = (k as f64).sqrt();
    // phi0 = pi/2 - y: cos(phi0) = sin(y), sin(phi0) = cos(y)
    let (c0, s0) = (2.0 * eta / sqrt_k).sin_cos();
    let (s2, c2) = (2.0 * beta / sqrt_k).sin_cos();
    let (sa, ca) = (2.0 * alpha).sin_cos();
    ca * (-c * s2 * s0 + s * s * c0 * c * (c2 - p))
        + sa * (-s * c * s2 * c0 - s * c * s0 * (c2 - p))
        + c * c0 * (p * s * s + c * c * c2)
}

/// Large-K limit of the solved deficit:
/// `eta = beta*cos(2*alpha) + ((1 - p)/2)*sin(2*alpha)`.
pub fn glg_large_k_eta(alpha: f64, beta: f64, parity: Parity) -> f64 {
    let (sa, ca) = (2.0 * alpha).sin_cos();
    beta * ca + 0.5 * (1.0 - parity.sign()) * sa
}

/// Largest feasible root of the constraint in `eta` at fixed `(alpha, beta)`.
pub(crate) fn glg_best_eta(
    gamma: f64,
    alpha: f64,
    beta: f64,
    parity: Parity,
    k: u64,
) -> Option<f64> {
    let half_sqrt_k = 0.5 * (k as f64).sqrt();
    best_feasible_root(|y| glg_residual(gamma, alpha, beta, half_sqrt_k * y, parity, k))
        .map(|y| half_sqrt_k * y)
}

/// Maximizes `R = eta - beta - alpha` over the admissible box, scanning
/// `beta` in the outer loop and `alpha` in the inner loop, with
/// golden-section refinement of both.
pub fn glg_optimal(k: u64, parity: Parity) -> Result<ScaledSchedule, Error> {
    if k < 2 {
        return Err(Error::TooSmall {
            what: "block count K",
            min: 2,
            got: k,
        });
    }
    let gamma = (k as f64).sqrt().recip().asin();
    let beta_max = FRAC_PI_4 * (k as f64).sqrt();
    let beta_step = beta_max / 200.0;

    let candidate_at = |alpha: f64, beta: f64| -> Option<Candidate> {
        glg_best_eta(gamma, alpha, beta, parity, k).map(|eta| Candidate {
            alpha,
            beta,
            delta: 0.0,
            eta,
            r: eta - beta - alpha,
        })
    };
    // best alpha at fixed beta: grid scan plus golden refinement
    let inner = |beta: f64| -> Option<Candidate> {
        let steps = (PI / GRID_STEP) as usize;
        let grid: Vec<Candidate> = (0..steps)
            .filter_map(|i| candidate_at(i as f64 * GRID_STEP, beta))
            .collect();
        let best = pick_best(&grid)?;
        let r_of = |alpha: f64| candidate_at(alpha, beta).map_or(f64::NEG_INFINITY, |c| c.r);
        let (refined, _) = golden_max(
            r_of,
            (best.alpha - GRID_STEP).max(0.0),
            (best.alpha + GRID_STEP).min(PI),
            REFINE_TOL,
        );
        let mut all = grid;
        all.extend(candidate_at(refined, beta));
        pick_best(&all)
    };

    let mut candidates: Vec<Candidate> = (0..200)
        .into_par_iter()
        .filter_map(|i| inner(i as f64 * beta_step))
        .collect();
    let scan_best = pick_best(&candidates).ok_or(Error::NoRoot {
        context: "global-local-global optimization grid",
    })?;

    let value_of = |beta: f64| inner(beta).map_or(f64::NEG_INFINITY, |c| c.r);
    let (beta_refined, _) = golden_max(
        value_of,
        (scan_best.beta - beta_step).max(0.0),
        (scan_best.beta + beta_step).min(beta_max - 1e-12),
        REFINE_TOL,
    );
    candidates.extend(inner(beta_refined));

    let best = pick_best(&candidates).expect("scan best is always present");
    Ok(ScaledSchedule {
        family: Family::Glg,
        alpha: best.alpha,
        beta: best.beta,
        delta: 0.0,
        eta: best.eta,
        parity,
    })
}
