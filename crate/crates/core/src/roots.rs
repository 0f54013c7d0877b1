//! Root finding and 1-D maximization for the scaled constraint equations.
//!
//! Every constraint in this crate reduces, at fixed schedule parameters, to
//! `f(y) = a*sin(y) + b*cos(y) + c` in the rescaled bulk-global variable
//! `y = 2*eta/sqrt(K)`. Roots are located by a fixed-step scan for sign
//! changes followed by bisection on the original function.

use once_cell::sync::Lazy;
use std::f64::consts::{FRAC_PI_2, PI};

/// Scan step in `y`.
pub(crate) const SCAN_STEP: f64 = 1e-3;
/// Bisection stops once the bracket is narrower than this.
const BISECT_WIDTH: f64 = 1e-12;
/// Slack for roots sitting exactly on the `y = pi/2` feasibility boundary.
pub(crate) const BOUNDARY_SLACK: f64 = 1e-9;

/// Precomputed (sin, cos) on the scan grid `y_i = i * SCAN_STEP` covering
/// `[0, 2*pi]`; shared by every solver call.
static SCAN_TABLE: Lazy<Vec<(f64, f64)>> = Lazy::new(|| {
    let count = (2.0 * PI / SCAN_STEP).ceil() as usize + 2;
    (0..count)
        .map(|i| {
            let y = i as f64 * SCAN_STEP;
            y.sin_cos()
        })
        .collect()
});

/// Coefficients of `a*sin(y) + b*cos(y) + c`, recovered by probing `f` at
/// four quadrature points. Exact for functions of that form.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SinusoidForm {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl SinusoidForm {
    pub fn probe(f: &impl Fn(f64) -> f64) -> Self {
        let f0 = f(0.0);
        let f1 = f(FRAC_PI_2);
        let f2 = f(PI);
        let f3 = f(1.5 * PI);
        let form = SinusoidForm {
            a: 0.5 * (f1 - f3),
            b: 0.5 * (f0 - f2),
            c: 0.5 * (f0 + f2),
        };
        debug_assert!(
            (f(1.0) - form.eval(1.0)).abs() <= 1e-9 * (1.0 + form.a.abs() + form.b.abs()),
            "constraint is not of sinusoidal form"
        );
        form
    }

    pub fn eval_table(&self, i: usize) -> f64 {
        let (s, c) = SCAN_TABLE[i];
        self.a * s + self.b * c + self.c
    }
}

/// All roots of `f` in `[0, hi)`, ascending. `f` must have sinusoidal form.
fn scan_roots(f: &impl Fn(f64) -> f64, hi: f64) -> Vec<f64> {
    let form = SinusoidForm::probe(f);
    let last = ((hi / SCAN_STEP).ceil() as usize).min(SCAN_TABLE.len() - 1);
    let mut roots = Vec::new();
    let mut prev = form.eval_table(0);
    if prev == 0.0 {
        roots.push(0.0);
    }
    for i in 1..=last {
        let cur = form.eval_table(i);
        if cur == 0.0 {
            roots.push(i as f64 * SCAN_STEP);
        } else if prev != 0.0 && prev.signum() != cur.signum() {
            roots.push(bisect(f, (i - 1) as f64 * SCAN_STEP, i as f64 * SCAN_STEP));
        }
        prev = cur;
    }
    roots.retain(|&r| r < hi);
    roots
}

/// Bisection on a bracket with a sign change; refines to width 1e-12.
fn bisect(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    loop {
        let mid = 0.5 * (lo + hi);
        if hi - lo < BISECT_WIDTH {
            return mid;
        }
        let fmid = f(mid);
        if fmid == 0.0 {
            return mid;
        }
        if flo.signum() == fmid.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
}

/// All roots over one full period `[0, 2*pi)`.
pub(crate) fn roots_full_period(f: impl Fn(f64) -> f64) -> Vec<f64> {
    scan_roots(&f, 2.0 * PI)
}

/// Largest root with `y <= pi/2` (a nonnegative bulk-global count), if any.
/// Larger `y` means a larger deficit `eta`, hence fewer queries.
pub(crate) fn best_feasible_root(f: impl Fn(f64) -> f64) -> Option<f64> {
    let cap = FRAC_PI_2 + BOUNDARY_SLACK;
    scan_roots(&f, FRAC_PI_2 + 2.0 * SCAN_STEP)
        .into_iter()
        .rev()
        .find(|&r| r <= cap)
}

/// Golden-section maximization of `f` on `[lo, hi]`, refined until the
/// bracket is narrower than `tol`. Returns `(argmax, max)`.
pub(crate) fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 > f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    let mid = 0.5 * (lo + hi);
    (mid, f(mid))
}

/// Bisection for a sign change of an arbitrary continuous function on
/// `[lo, hi]`; returns `None` when the endpoints do not bracket a root.
pub(crate) fn bisect_any(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Option<f64> {
    let flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if flo.signum() == fhi.signum() {
        return None;
    }
    let (mut lo, mut hi, mut flo) = (lo, hi, flo);
    while hi - lo > BISECT_WIDTH {
        let mid = 0.5 * (lo + hi);
        let fmid = f(mid);
        if fmid == 0.0 {
            return Some(mid);
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_simple_roots() {
        // sin(y) - 0.5: roots at pi/6 and 5*pi/6
        let f = |y: f64| y.sin() - 0.5;
        let roots = roots_full_period(f);
        assert_eq!(roots.len(), 2);
        assert!((roots[0] - PI / 6.0).abs() < 1e-11);
        assert!((roots[1] - 5.0 * PI / 6.0).abs() < 1e-11);
    }

    #[test]
    fn finds_root_at_zero() {
        let f = |y: f64| 2.0 * y.sin();
        let roots = roots_full_period(f);
        assert!(roots[0] == 0.0);
        assert!((roots[1] - PI).abs() < 1e-11);
    }

    #[test]
    fn feasible_root_respects_cap() {
        // roots at pi/6 and 5*pi/6; only pi/6 is feasible
        let best = best_feasible_root(|y: f64| y.sin() - 0.5).unwrap();
        assert!((best - PI / 6.0).abs() < 1e-11);
        // root exactly at pi/2
        let best = best_feasible_root(|y: f64| y.cos()).unwrap();
        assert!((best - FRAC_PI_2).abs() < 1e-11);
        // no feasible root at all
        assert!(best_feasible_root(|y: f64| y.sin() + 2.0).is_none());
    }

    #[test]
    fn golden_finds_parabola_peak() {
        let (x, v) = golden_max(|x: f64| 1.0 - (x - 0.3) * (x - 0.3), 0.0, 1.0, 1e-10);
        assert!((x - 0.3).abs() < 1e-8);
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bisect_any_needs_bracket() {
        assert!(bisect_any(|x| x * x + 1.0, -1.0, 1.0).is_none());
        let r = bisect_any(|x| x * x - 2.0, 0.0, 2.0).unwrap();
        assert!((r - 2.0f64.sqrt()).abs() < 1e-11);
    }
}
