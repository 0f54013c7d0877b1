//! Local-global-local sequences: `j1` locals, the bulk global segment,
//! `j3` locals, then one final global query.

use rayon::prelude::*;
use std::f64::consts::{FRAC_PI_2, PI};

use super::{pick_best, Candidate, Family, ScaledSchedule, GRID_STEP, REFINE_TOL};
use crate::error::Error;
use crate::model::{asymptotic_global, Parity, ReducedMatrix, ReducedState};
use crate::roots::{best_feasible_root, golden_max};

/// Scan step for the second local segment.
const DELTA_STEP: f64 = 0.02;

/// Leftover amplitude outside the target block, in the form
/// `X*sin(2a) + Y*(cos(2a) - 1) + Z` with the substitutions
/// `2*j1*theta2 = 2*alpha`, `2*j2*theta1 = pi/2 - 2*eta/sqrt(K)`,
/// `2*j3*theta2 = 2*delta`; `parity` is `(-1)^{j2}`.
///
/// The parity part of `Y` carries the factor
/// `1 - 2cos^2(g)(1 - cos(2d))`, which vanishes exactly where
/// `cos(2*delta)` meets the closed-form schedule equation; see
/// `residual_matches_matrix_evolution` below for the defining check
/// against the asymptotic iteration matrices.
pub fn lgl_residual(
    gamma: f64,
    alpha: f64,
    delta: f64,
    eta: f64,
    parity: Parity,
    k: u64,
) -> f64 {
    let p = parity.sign();
    let (s, c) = gamma.sin_cos();
    let (s2g, c2g) = (2.0 * gamma).sin_cos();
    let (sd, cd) = (2.0 * delta).sin_cos();
    let (sa, ca) = (2.0 * alpha).sin_cos();
    let (sy, cy) = (2.0 * eta / (k as f64).sqrt()).sin_cos();

    let x = s * s2g * sd * sy + s * s * s2g * cd * cy + s * c * c2g * cy;
    let osc = p * (1.0 - 2.0 * c * c * (1.0 - cd));
    let y = s * s * s2g * sd * cy - s * s * s * s2g * cd * sy - s * s * c * (c2g * sy + osc);
    let z = s2g * sd * cy - s * s2g * cd * sy - c * c2g * sy;
    x * sa + y * (ca - 1.0) + z
}

/// Largest feasible root of the constraint in `eta` at fixed
/// `(alpha, delta)`.
pub(crate) fn lgl_best_eta(
    gamma: f64,
    alpha: f64,
    delta: f64,
    parity: Parity,
    k: u64,
) -> Option<f64> {
    let half_sqrt_k = 0.5 * (k as f64).sqrt();
    best_feasible_root(|y| lgl_residual(gamma, alpha, delta, half_sqrt_k * y, parity, k))
        .map(|y| half_sqrt_k * y)
}

/// Optimizes the second local segment at fixed `alpha`: returns
/// `(delta, max_delta [eta - delta])`.
pub(crate) fn lgl_best_delta(
    gamma: f64,
    alpha: f64,
    parity: Parity,
    k: u64,
) -> Option<(f64, f64)> {
    let value = |delta: f64| -> Option<f64> {
        lgl_best_eta(gamma, alpha, delta, parity, k).map(|eta| eta - delta)
    };
    let steps = (FRAC_PI_2 / DELTA_STEP) as usize;
    let grid: Vec<(f64, f64)> = (0..=steps)
        .filter_map(|i| {
            let d = (i as f64 * DELTA_STEP).min(FRAC_PI_2);
            value(d).map(|v| (d, v))
        })
        .collect();
    let &(grid_delta, grid_value) = grid
        .iter()
        .max_by(|a, b| a.1.total_cmp(&b.1))?;
    let (refined, refined_value) = golden_max(
        |d| value(d).unwrap_or(f64::NEG_INFINITY),
        (grid_delta - DELTA_STEP).max(0.0),
        (grid_delta + DELTA_STEP).min(FRAC_PI_2),
        REFINE_TOL,
    );
    if refined_value > grid_value {
        Some((refined, refined_value))
    } else {
        Some((grid_delta, grid_value))
    }
}

/// Maximizes `R = eta - alpha - delta` with `eta` solved from the
/// constraint and `delta` optimized at every `alpha`.
pub fn lgl_optimal(k: u64, parity: Parity) -> Result<ScaledSchedule, Error> {
    if k < 2 {
        return Err(Error::TooSmall {
            what: "block count K",
            min: 2,
            got: k,
        });
    }
    let gamma = (k as f64).sqrt().recip().asin();
    let candidate_at = |alpha: f64| -> Option<Candidate> {
        lgl_best_delta(gamma, alpha, parity, k).map(|(delta, value)| Candidate {
            alpha,
            beta: 0.0,
            delta,
            eta: value + delta,
            r: value - alpha,
        })
    };

    let steps = (PI / GRID_STEP) as usize;
    let mut candidates: Vec<Candidate> = (0..steps)
        .into_par_iter()
        .filter_map(|i| candidate_at(i as f64 * GRID_STEP))
        .collect();
    let grid_best = pick_best(&candidates).ok_or(Error::NoRoot {
        context: "local-global-local optimization grid",
    })?;

    let r_of = |alpha: f64| candidate_at(alpha).map_or(f64::NEG_INFINITY, |c| c.r);
    let (refined, _) = golden_max(
        r_of,
        (grid_best.alpha - GRID_STEP).max(0.0),
        (grid_best.alpha + GRID_STEP).min(PI),
        REFINE_TOL,
    );
    candidates.extend(candidate_at(refined));

    let best = pick_best(&candidates).expect("grid best is always present");
    Ok(ScaledSchedule {
        family: Family::Lgl,
        alpha: best.alpha,
        beta: 0.0,
        delta: best.delta,
        eta: best.eta,
        parity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grk::grk_scaled;
    use std::f64::consts::FRAC_PI_6;

    fn gamma_of(k: u64) -> f64 {
        (k as f64).sqrt().recip().asin()
    }

    /// Independent evaluation of the constraint through the asymptotic
    /// iteration matrices: u-component of
    /// `G1(2*theta1 -> 0, odd) * L(2d) * G1(pi/2 - y, p) * L(2a)` applied
    /// to the limit initial state `(0, sin g, cos g)`.
    fn residual_by_matrices(
        gamma: f64,
        alpha: f64,
        delta: f64,
        eta: f64,
        parity: Parity,
        k: u64,
    ) -> f64 {
        let local = |angle: f64| -> ReducedMatrix {
            let (s, c) = angle.sin_cos();
            ReducedMatrix([[c, s, 0.0], [-s, c, 0.0], [0.0, 0.0, 1.0]])
        };
        let y = 2.0 * eta / (k as f64).sqrt();
        let mut v = ReducedState::new(0.0, gamma.sin(), gamma.cos());
        v = local(2.0 * alpha).apply(v);
        v = asymptotic_global(gamma, FRAC_PI_2 - y, parity).apply(v);
        v = local(2.0 * delta).apply(v);
        v = asymptotic_global(gamma, 0.0, Parity::Odd).apply(v);
        v.a_u
    }

    #[test]
    fn residual_matches_matrix_evolution() {
        // the printed X/Y/Z form equals (minus) the u-amplitude computed by
        // multiplying the asymptotic iteration matrices, for both parities
        let mut worst: f64 = 0.0;
        for (k, alpha, delta, eta) in [
            (5u64, 0.3, 0.5, 0.9),
            (8, 1.2, 0.1, 0.4),
            (36, 2.6, 1.4, 3.1),
            (100, 0.05, 0.61, 0.52),
        ] {
            let g = gamma_of(k);
            for parity in [Parity::Odd, Parity::Even] {
                let direct = lgl_residual(g, alpha, delta, eta, parity, k);
                let matrix = residual_by_matrices(g, alpha, delta, eta, parity, k);
                worst = worst.max((direct + matrix).abs());
            }
        }
        assert!(worst < 1e-12, "worst deviation {worst:e}");
    }

    #[test]
    fn no_first_locals_reproduces_schedule_solution() {
        // at alpha = 0 only the Z part survives; its root at the closed-form
        // (delta, eta) is the optimized schedule for every K
        for k in [2u64, 5, 36, 200] {
            let scaled = grk_scaled(k).unwrap();
            let res = lgl_residual(gamma_of(k), 0.0, scaled.alpha, scaled.eta, Parity::Odd, k);
            assert!(res.abs() < 1e-12, "K={k}: {res:e}");
            let eta = lgl_best_eta(gamma_of(k), 0.0, scaled.alpha, Parity::Odd, k).unwrap();
            assert!((eta - scaled.eta).abs() < 1e-9, "K={k}");
        }
    }

    #[test]
    fn parity_term_vanishes_at_alpha_zero() {
        for k in [4u64, 25] {
            let g = gamma_of(k);
            for (delta, eta) in [(0.3, 0.8), (1.1, 0.2)] {
                let odd = lgl_residual(g, 0.0, delta, eta, Parity::Odd, k);
                let even = lgl_residual(g, 0.0, delta, eta, Parity::Even, k);
                assert_eq!(odd, even);
            }
        }
    }

    #[test]
    fn large_k_residual_approaches_linear_form() {
        // leading order in gamma: residual / gamma -> sin(2a) + 2sin(2d) - 2eta
        let k = 64u64;
        let (alpha, delta, eta) = (0.4, 0.3, 0.7);
        for gamma in [1e-3, 1e-4] {
            let lhs = lgl_residual(gamma, alpha, delta, eta, Parity::Odd, k) / gamma;
            let rhs = (2.0 * alpha).sin() + 2.0 * (2.0 * delta).sin() - 2.0 * eta;
            assert!((lhs - rhs).abs() < 2e-2, "gamma={gamma}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn large_k_optimum_structure() {
        // gamma -> 0 optimum: alpha = 0, delta = pi/6, eta = sqrt(3)/2
        let best = lgl_optimal(100_000, Parity::Odd).unwrap();
        assert!(best.alpha <= 1e-3);
        assert!((best.delta - FRAC_PI_6).abs() < 1e-2);
        assert!((best.eta - 3.0f64.sqrt() / 2.0).abs() < 1e-2);
        assert!((best.r() - 0.34243).abs() < 1e-3);
    }

    #[test]
    fn optimum_matches_schedule_closed_form() {
        for k in [5u64, 36] {
            let scaled = grk_scaled(k).unwrap();
            for parity in [Parity::Odd, Parity::Even] {
                let best = lgl_optimal(k, parity).unwrap();
                assert!(best.alpha <= 1e-3, "K={k}: alpha = {}", best.alpha);
                assert!(
                    (best.r() - scaled.r).abs() <= 1e-3,
                    "K={k}: {} vs {}",
                    best.r(),
                    scaled.r
                );
            }
        }
    }

    #[test]
    fn parities_agree_at_the_optimum() {
        for k in [5u64, 36] {
            let odd = lgl_optimal(k, Parity::Odd).unwrap();
            let even = lgl_optimal(k, Parity::Even).unwrap();
            assert!((odd.r() - even.r()).abs() <= 1e-6, "K={k}");
        }
    }
}
