//! Scaled-parameter optimization of partial-search sequence families.
//!
//! Three families are studied, all in the large-block limit where integer
//! iteration counts become continuous coefficients of `sqrt(b)`:
//!
//! * `LG`  — `j1 = alpha*sqrt(b)` local iterations followed by a bulk
//!   global segment of `(pi/4)*sqrt(N) - eta*sqrt(b)` iterations.
//! * `GLG` — a bulk global segment, `alpha*sqrt(b)` locals, and a trailing
//!   `beta*sqrt(b)` global segment.
//! * `LGL` — `alpha*sqrt(b)` locals, the bulk global segment,
//!   `delta*sqrt(b)` locals, and one final global query.
//!
//! A schedule is valid when the leftover amplitude outside the target
//! block vanishes; each family's `*_residual` function is that amplitude
//! as a function of the scaled parameters. The figure of merit is the
//! speedup coefficient `R` in the query count `(pi/4)*sqrt(N) - R*sqrt(b)`:
//! `R = eta - alpha - beta - delta`. The sign `(-1)^{j}` of the bulk (or
//! trailing, for GLG) global count enters the constraints explicitly, so
//! every solver takes a [`Parity`] and treats the two branches separately.

mod glg;
mod lg;
mod lgl;

pub use glg::{glg_large_k_eta, glg_optimal, glg_residual};
pub use lg::{lg_asymptotic, lg_optimal, lg_residual, lg_solve_eta, lg_stationarity};
pub use lgl::{lgl_optimal, lgl_residual};

pub(crate) use glg::glg_best_eta;
pub(crate) use lg::lg_best_eta;
pub(crate) use lgl::{lgl_best_delta, lgl_best_eta};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::model::Parity;

/// Step of the dense scan over schedule coefficients.
pub(crate) const GRID_STEP: f64 = 1e-3;
/// Width below which golden-section refinement stops.
pub(crate) const REFINE_TOL: f64 = 1e-8;
/// Optima closer in `R` than this are tied; ties resolve to the smallest
/// schedule coefficients.
pub(crate) const TIE_EPS: f64 = 1e-9;

/// Sequence family tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Lg,
    Glg,
    Lgl,
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "lg" => Ok(Family::Lg),
            "glg" => Ok(Family::Glg),
            "lgl" => Ok(Family::Lgl),
            other => Err(format!("unknown family `{other}` (expected lg|glg|lgl)")),
        }
    }
}

impl std::str::FromStr for Parity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "odd" => Ok(Parity::Odd),
            "even" => Ok(Parity::Even),
            other => Err(format!("unknown parity `{other}` (expected odd|even)")),
        }
    }
}

/// Optimized scaled schedule for one family and parity branch.
///
/// Coefficients a family does not use are zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScaledSchedule {
    pub family: Family,
    /// First local segment, `j = alpha*sqrt(b)`.
    pub alpha: f64,
    /// Trailing global segment (GLG only), `j = beta*sqrt(b)`.
    pub beta: f64,
    /// Second local segment (LGL only), `j = delta*sqrt(b)`.
    pub delta: f64,
    /// Bulk global deficit, `j = (pi/4)*sqrt(N) - eta*sqrt(b)`.
    pub eta: f64,
    /// Branch sign of the parity-carrying global segment.
    pub parity: Parity,
}

impl ScaledSchedule {
    /// Speedup coefficient `R = eta - alpha - beta - delta`.
    pub fn r(&self) -> f64 {
        self.eta - self.alpha - self.beta - self.delta
    }
}

/// One sample of an `R`-versus-`alpha` curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub alpha: f64,
    pub eta: f64,
    pub r: f64,
}

/// Curve samples in ascending `alpha`, plus the number of grid points
/// where the constraint had no feasible root.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Curve {
    pub points: Vec<CurvePoint>,
    pub omitted: usize,
}

/// Evaluates one `R(alpha)` curve on the given grid.
///
/// `eta` is solved from the family constraint at every grid point; for the
/// LGL family the second local segment is optimized at each point, and for
/// GLG the trailing global segment is held at its optimal vanishing size
/// (`beta = 0`). Points with no feasible root are omitted and counted.
pub fn curve(family: Family, k: u64, parity: Parity, alpha_grid: &[f64]) -> Result<Curve, Error> {
    if k < 2 {
        return Err(Error::TooSmall {
            what: "block count K",
            min: 2,
            got: k,
        });
    }
    let gamma = (k as f64).sqrt().recip().asin();
    let mut points: Vec<CurvePoint> = alpha_grid
        .par_iter()
        .filter_map(|&alpha| match family {
            Family::Lg => lg_best_eta(gamma, alpha, parity, k).map(|eta| CurvePoint {
                alpha,
                eta,
                r: eta - alpha,
            }),
            Family::Glg => glg_best_eta(gamma, alpha, 0.0, parity, k).map(|eta| CurvePoint {
                alpha,
                eta,
                r: eta - alpha,
            }),
            Family::Lgl => lgl_best_delta(gamma, alpha, parity, k).map(|(delta, value)| {
                CurvePoint {
                    alpha,
                    eta: value + delta,
                    r: value - alpha,
                }
            }),
        })
        .collect();
    points.sort_by(|a, b| a.alpha.total_cmp(&b.alpha));
    Ok(Curve {
        omitted: alpha_grid.len() - points.len(),
        points,
    })
}

/// Closed-form quantities behind the oscillation-cancellation identity.
///
/// `cos_val = (1 - tan^2(gamma))/2` and
/// `sin_val = sqrt(3 - 4sin^2(gamma)) / (2cos^2(gamma))` form a valid
/// cosine/sine pair, `cos_val` equals the schedule-equation value of the
/// second local rotation, and `lhs = cos(gamma)sin(2gamma)*cos_val` matches
/// `rhs = sin(gamma)cos(2gamma)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AppendixCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub cos_val: f64,
    pub sin_val: f64,
}

/// Evaluates the cancellation identity quantities for `k` blocks.
pub fn appendix_cancellation_check(k: u64) -> Result<AppendixCheck, Error> {
    if k < 2 {
        return Err(Error::TooSmall {
            what: "block count K",
            min: 2,
            got: k,
        });
    }
    let gamma = (k as f64).sqrt().recip().asin();
    let (s, c) = gamma.sin_cos();
    let tan = s / c;
    let cos_val = 0.5 * (1.0 - tan * tan);
    let sin_val = (3.0 - 4.0 * s * s).sqrt() / (2.0 * c * c);
    Ok(AppendixCheck {
        lhs: c * (2.0 * gamma).sin() * cos_val,
        rhs: s * (2.0 * gamma).cos(),
        cos_val,
        sin_val,
    })
}

/// Central-difference derivatives of `S(alpha) = alpha - eta(alpha)` at
/// `alpha = 0`, with the second local segment fixed at its optimum.
///
/// `S` tracks the combined first-local-plus-bulk-global query count of the
/// LGL family in units of `sqrt(b)`; at the optimum both returned
/// derivatives vanish, i.e. trading early local queries against bulk
/// global ones is flat to second order.
pub fn lgl_flat_direction_check(k: u64) -> Result<(f64, f64), Error> {
    if k < 2 {
        return Err(Error::TooSmall {
            what: "block count K",
            min: 2,
            got: k,
        });
    }
    let gamma = (k as f64).sqrt().recip().asin();
    let (delta_opt, _) = lgl_best_delta(gamma, 0.0, Parity::Odd, k).ok_or(Error::NoRoot {
        context: "second-local optimization at alpha = 0",
    })?;
    let s = |alpha: f64| -> Result<f64, Error> {
        lgl_best_eta(gamma, alpha, delta_opt, Parity::Odd, k)
            .map(|eta| alpha - eta)
            .ok_or(Error::NoRoot {
                context: "flat-direction eta solve",
            })
    };
    let h = 1e-3;
    let plus = s(h)?;
    let minus = s(-h)?;
    let center = s(0.0)?;
    Ok(((plus - minus) / (2.0 * h), (plus - 2.0 * center + minus) / (h * h)))
}

/// Candidate optimum used during grid scans and refinement.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Candidate {
    pub alpha: f64,
    pub beta: f64,
    pub delta: f64,
    pub eta: f64,
    pub r: f64,
}

/// Picks the best candidate: maximal `R`, ties broken toward the smallest
/// `beta`, then `delta`, then `alpha`.
pub(crate) fn pick_best(candidates: &[Candidate]) -> Option<Candidate> {
    let best_r = candidates
        .iter()
        .map(|c| c.r)
        .max_by(f64::total_cmp)?;
    candidates
        .iter()
        .filter(|c| c.r >= best_r - TIE_EPS)
        .min_by(|a, b| {
            (a.beta, a.delta, a.alpha)
                .partial_cmp(&(b.beta, b.delta, b.alpha))
                .unwrap()
        })
        .copied()
}
