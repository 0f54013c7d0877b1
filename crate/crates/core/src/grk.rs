//! Closed-form optimized global-local-global schedule and its speedup.
//!
//! The schedule runs `j0` global iterations, then `j1` local iterations,
//! then a single trailing global query. In scaled form the local count is
//! `alpha*sqrt(b)` and the bulk global count is `(pi/4)*sqrt(N) -
//! eta*sqrt(b)`, so the whole search costs `(pi/4)*sqrt(N) - R*sqrt(b)`
//! queries with `R = eta - alpha`.

use serde::Serialize;
use std::f64::consts::FRAC_PI_2;

use crate::error::Error;
use crate::model::{apply_sequence, DatabaseGeometry, IterationSequence, Segment};

/// Scaled schedule coefficients for a given block count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrkScaled {
    /// Local-segment coefficient: `j1 = alpha * sqrt(b)`.
    pub alpha: f64,
    /// Bulk-global deficit: `j0 = (pi/4) * sqrt(N) - eta * sqrt(b)`.
    pub eta: f64,
    /// Speedup coefficient `R = eta - alpha`.
    pub r: f64,
}

/// Closed-form scaled schedule for `k` blocks.
///
/// `alpha = arccos(sin(g)cos(2g) / (cos(g)sin(2g))) / 2` and
/// `eta = (sqrt(K)/2) * arctan(sin(g)sqrt(3-4sin^2(g)) / cos(2g))`, with the
/// arctangent branch in `(0, pi/2]` so `cos(2g) = 0` maps to `pi/2`.
pub fn grk_scaled(k: u64) -> Result<GrkScaled, Error> {
    if k < 2 {
        return Err(Error::TooSmall {
            what: "block count K",
            min: 2,
            got: k,
        });
    }
    let gamma = (k as f64).sqrt().recip().asin();
    let (s, c) = gamma.sin_cos();
    let cos2g = (2.0 * gamma).cos();
    let sin2g = (2.0 * gamma).sin();

    let alpha = 0.5 * (s * cos2g / (c * sin2g)).acos();
    let mut half_angle = (s * (3.0 - 4.0 * s * s).sqrt()).atan2(cos2g);
    if half_angle <= 0.0 {
        half_angle += std::f64::consts::PI;
    }
    let eta = 0.5 * (k as f64).sqrt() * half_angle;
    Ok(GrkScaled {
        alpha,
        eta,
        r: eta - alpha,
    })
}

/// Integer schedule realizing the scaled solution on a concrete geometry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrkSchedule {
    /// Leading global iteration count.
    pub j0: u64,
    /// Local iteration count.
    pub j1: u64,
    /// Trailing global count; always 1.
    pub j2: u64,
    /// Scaled local coefficient for this `K`.
    pub alpha: f64,
    /// Scaled global deficit for this `K`.
    pub eta: f64,
    /// Speedup coefficient `eta - alpha`.
    pub r: f64,
}

impl GrkSchedule {
    /// Total number of oracle queries `j0 + j1 + j2`.
    pub fn total_queries(&self) -> u64 {
        self.j0 + self.j1 + self.j2
    }

    /// The schedule as an iteration sequence, first segment first.
    pub fn sequence(&self) -> IterationSequence {
        IterationSequence::new(vec![
            Segment::global(self.j0),
            Segment::local(self.j1),
            Segment::global(self.j2),
        ])
    }
}

/// Rounds the scaled schedule to integers for `geom` and locally improves
/// it: candidates within +-2 of the rounded counts are scored by the exact
/// reduced simulation and the pair with the smallest leftover `|a_u|` wins.
pub fn grk_integer_schedule(geom: &DatabaseGeometry) -> Result<GrkSchedule, Error> {
    if geom.b < 16 {
        return Err(Error::TooSmall {
            what: "block size b",
            min: 16,
            got: geom.b,
        });
    }
    let scaled = grk_scaled(geom.k)?;
    let (s, c) = geom.gamma.sin_cos();
    let cos2g = (2.0 * geom.gamma).cos();
    let sin2g = (2.0 * geom.gamma).sin();

    let j1_guess = ((s * cos2g / (c * sin2g)).acos() / (2.0 * geom.theta2)).round();
    let j0_guess = ((FRAC_PI_2 - 2.0 * scaled.eta / (geom.k as f64).sqrt())
        / (2.0 * geom.theta1))
        .round()
        .max(0.0);

    let start = geom.initial_state();
    let mut best: Option<(f64, u64, u64)> = None;
    for dj0 in -2i64..=2 {
        for dj1 in -2i64..=2 {
            let j0 = j0_guess as i64 + dj0;
            let j1 = j1_guess as i64 + dj1;
            if j0 < 0 || j1 < 0 {
                continue;
            }
            let (j0, j1) = (j0 as u64, j1 as u64);
            let seq = IterationSequence::new(vec![
                Segment::global(j0),
                Segment::local(j1),
                Segment::global(1),
            ]);
            let left = apply_sequence(geom, &seq, start).a_u.abs();
            if best.map_or(true, |(b, _, _)| left < b) {
                best = Some((left, j0, j1));
            }
        }
    }
    let (_, j0, j1) = best.expect("candidate grid is never empty");
    Ok(GrkSchedule {
        j0,
        j1,
        j2: 1,
        alpha: scaled.alpha,
        eta: scaled.eta,
        r: scaled.r,
    })
}

/// Evaluates the scaled speedup on a list of block counts.
pub fn grk_r_curve(ks: &[u64]) -> Result<Vec<(u64, f64)>, Error> {
    ks.iter().map(|&k| Ok((k, grk_scaled(k)?.r))).collect()
}
