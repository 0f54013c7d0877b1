//! Brute-force state-vector simulator over all `N` items.
//!
//! This is the reference implementation the reduced model is checked
//! against: every iteration touches the full amplitude vector, blocks are
//! contiguous index ranges of length `b`, and nothing is shared with the
//! 3x3 matrix code path.

use crate::error::Error;
use crate::model::{
    DatabaseGeometry, IterationKind, IterationSequence, ReducedState,
};

/// Compensated (Kahan) sum; keeps the oracle's error independent of `N`.
fn ksum<I: IntoIterator<Item = f64>>(xs: I) -> f64 {
    let mut sum = 0.0;
    let mut carry = 0.0;
    for x in xs {
        let y = x - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    sum
}

/// Full real amplitude vector with a marked target item.
#[derive(Debug, Clone, PartialEq)]
pub struct FullState {
    amplitudes: Vec<f64>,
    target: usize,
    geometry: DatabaseGeometry,
}

impl FullState {
    /// Uniform superposition `1/sqrt(N)` on every item.
    pub fn uniform(geometry: DatabaseGeometry, target: u64) -> Result<Self, Error> {
        if target >= geometry.n {
            return Err(Error::IndexOutOfRange {
                index: target,
                n: geometry.n,
            });
        }
        let amp = (geometry.n as f64).sqrt().recip();
        Ok(FullState {
            amplitudes: vec![amp; geometry.n as usize],
            target: target as usize,
            geometry,
        })
    }

    pub fn geometry(&self) -> &DatabaseGeometry {
        &self.geometry
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        ksum(self.amplitudes.iter().map(|a| a * a)).sqrt()
    }

    /// One global iteration: sign flip at the target, then inversion about
    /// the average of the whole vector. O(N).
    pub fn step_global(&mut self) {
        self.amplitudes[self.target] = -self.amplitudes[self.target];
        let twice_mean = 2.0 * ksum(self.amplitudes.iter().copied()) / self.geometry.n as f64;
        for a in &mut self.amplitudes {
            *a = twice_mean - *a;
        }
    }

    /// One local iteration: sign flip at the target, then inversion about
    /// the average inside every block independently. O(N).
    pub fn step_local(&mut self) {
        self.amplitudes[self.target] = -self.amplitudes[self.target];
        let b = self.geometry.b as usize;
        for block in self.amplitudes.chunks_mut(b) {
            let twice_mean = 2.0 * ksum(block.iter().copied()) / b as f64;
            for a in block {
                *a = twice_mean - *a;
            }
        }
    }

    /// Repeats one iteration kind `count` times.
    pub fn apply(&mut self, kind: IterationKind, count: u64) {
        for _ in 0..count {
            match kind {
                IterationKind::Global => self.step_global(),
                IterationKind::Local => self.step_local(),
            }
        }
    }

    /// Applies a whole sequence, first listed segment first.
    pub fn apply_sequence(&mut self, seq: &IterationSequence) {
        for seg in &seq.steps {
            self.apply(seg.kind, seg.count);
        }
    }

    /// Projects onto the reduced `(|t>, |ntt>, |u>)` basis and returns the
    /// norm of the component outside that span.
    pub fn project_reduced(&self) -> (ReducedState, f64) {
        let b = self.geometry.b as usize;
        let t = self.target;
        let block_start = (t / b) * b;
        let block_end = block_start + b;

        let a_t = self.amplitudes[t];
        let ntt_norm = ((b - 1).max(1) as f64).sqrt();
        let a_ntt = ksum(
            self.amplitudes[block_start..block_end]
                .iter()
                .enumerate()
                .filter(|(i, _)| block_start + i != t)
                .map(|(_, a)| *a),
        ) / ntt_norm;
        let u_norm = ((self.geometry.n - self.geometry.b) as f64).sqrt();
        let a_u = ksum(
            self.amplitudes[..block_start]
                .iter()
                .chain(self.amplitudes[block_end..].iter())
                .copied(),
        ) / u_norm;

        let ntt_amp = a_ntt / ntt_norm;
        let u_amp = a_u / u_norm;
        let residual_sq = ksum(self.amplitudes.iter().enumerate().map(|(i, a)| {
            let proj = if i == t {
                a_t
            } else if (block_start..block_end).contains(&i) {
                ntt_amp
            } else {
                u_amp
            };
            (a - proj) * (a - proj)
        }));
        (
            ReducedState::new(a_t, a_ntt, a_u),
            residual_sq.max(0.0).sqrt(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{apply_sequence, Segment};

    #[test]
    fn uniform_state_examples() {
        let g = DatabaseGeometry::new(4, 2).unwrap();
        let s = FullState::uniform(g, 0).unwrap();
        assert_eq!(s.amplitudes(), &[0.5, 0.5, 0.5, 0.5]);
        assert!((s.norm() - 1.0).abs() < 1e-15);

        assert_eq!(
            FullState::uniform(g, 7).unwrap_err(),
            Error::IndexOutOfRange { index: 7, n: 4 }
        );

        for n in [8u64, 1024, 65536] {
            let g = DatabaseGeometry::new(n, 4).unwrap();
            assert!((FullState::uniform(g, n - 1).unwrap().norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn single_global_step_solves_n4() {
        let g = DatabaseGeometry::new(4, 2).unwrap();
        let mut s = FullState::uniform(g, 0).unwrap();
        s.step_global();
        assert!((s.amplitudes()[0] - 1.0).abs() < 1e-12);
        assert!((s.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn global_amplitude_follows_grover_rotation() {
        let g = DatabaseGeometry::new(64, 4).unwrap();
        let mut s = FullState::uniform(g, 5).unwrap();
        for j in 1..=20u64 {
            s.step_global();
            let want = ((2 * j + 1) as f64 * g.theta1).sin();
            assert!(
                (s.amplitudes()[5] - want).abs() < 1e-10,
                "j={j}: {} vs {}",
                s.amplitudes()[5],
                want
            );
            assert!((s.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn local_step_fixes_non_target_blocks() {
        let g = DatabaseGeometry::new(8, 2).unwrap();
        let mut s = FullState::uniform(g, 1).unwrap();
        let before: Vec<f64> = s.amplitudes()[4..8].to_vec();
        s.step_local();
        assert_eq!(&s.amplitudes()[4..8], &before[..]);
        assert!((s.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn local_steps_match_reduced_rotation() {
        let g = DatabaseGeometry::new(8, 2).unwrap();
        let mut s = FullState::uniform(g, 0).unwrap();
        let mut reduced = g.initial_state();
        let local = g.local_matrix();
        for _ in 0..10 {
            s.step_local();
            reduced = local.apply(reduced);
            let (projected, residual) = s.project_reduced();
            assert!(residual < 1e-12);
            assert!(projected.max_component_diff(&reduced) < 1e-12);
        }
    }

    #[test]
    fn projection_of_uniform_state_is_initial_state() {
        let g = DatabaseGeometry::new(16, 4).unwrap();
        let (projected, residual) = FullState::uniform(g, 3).unwrap().project_reduced();
        assert!(residual < 1e-12);
        assert!(projected.max_component_diff(&g.initial_state()) < 1e-12);
    }

    #[test]
    fn projection_of_single_item_in_target_block() {
        let g = DatabaseGeometry::new(16, 4).unwrap();
        let mut s = FullState::uniform(g, 0).unwrap();
        s.amplitudes = vec![0.0; 16];
        s.amplitudes[1] = 1.0; // non-target item inside the target block
        let (projected, residual) = s.project_reduced();
        let b = g.b as f64;
        assert!((projected.a_t - 0.0).abs() < 1e-15);
        assert!((projected.a_ntt - (b - 1.0).sqrt().recip()).abs() < 1e-15);
        assert!((projected.a_u - 0.0).abs() < 1e-15);
        assert!((residual - (1.0 - 1.0 / (b - 1.0)).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn block_symmetry_after_mixed_sequence() {
        let g = DatabaseGeometry::new(256, 8).unwrap();
        let seq = IterationSequence::new(vec![
            Segment::global(11),
            Segment::local(6),
            Segment::global(2),
            Segment::local(9),
        ]);
        let mut s = FullState::uniform(g, 37).unwrap();
        s.apply_sequence(&seq);

        let b = g.b as usize;
        let tb = s.target() / b;
        for blk in 0..g.k as usize {
            let items = &s.amplitudes()[blk * b..(blk + 1) * b];
            let reference = if blk == tb {
                items[(s.target() + 1 - blk * b) % b]
            } else {
                items[0]
            };
            for (i, a) in items.iter().enumerate() {
                if blk == tb && blk * b + i == s.target() {
                    continue;
                }
                assert!((a - reference).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn norm_drift_stays_small_over_many_iterations() {
        let g = DatabaseGeometry::new(1024, 4).unwrap();
        let mut s = FullState::uniform(g, 100).unwrap();
        for i in 0..10_000 {
            if i % 2 == 0 {
                s.step_global();
            } else {
                s.step_local();
            }
        }
        assert!((s.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn reduced_and_full_agree_on_a_fixed_sequence() {
        let g = DatabaseGeometry::new(4096, 8).unwrap();
        let seq = IterationSequence::new(vec![
            Segment::global(64),
            Segment::local(23),
            Segment::global(7),
            Segment::local(150),
            Segment::global(190),
        ]);
        let mut full = FullState::uniform(g, 1234).unwrap();
        full.apply_sequence(&seq);
        let (projected, residual) = full.project_reduced();
        let reduced = apply_sequence(&g, &seq, g.initial_state());
        assert!(residual < 1e-10);
        assert!(projected.max_component_diff(&reduced) < 1e-10);
    }
}
