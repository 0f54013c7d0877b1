//! Exact reduced-space model of global and local Grover iterations.
//!
//! A database of `N` items split into `K` contiguous blocks of size `b`
//! stays inside a three-dimensional real subspace under both iteration
//! operators. The orthonormal basis of that subspace is the target item
//! `|t>`, the normalized sum `|ntt>` of the non-target items of the target
//! block, and the normalized sum `|u>` of all items outside the target
//! block. Both iterations restrict to exact 3x3 orthogonal matrices on
//! this basis, which makes simulation cost independent of `N`.

use serde::Serialize;

use crate::error::Error;

/// Database layout `N = K * b` together with the derived angles.
///
/// The angles satisfy `sin^2(theta1) = 1/N`, `sin^2(theta2) = 1/b` and
/// `sin(gamma) = 1/sqrt(K)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DatabaseGeometry {
    /// Total number of items.
    pub n: u64,
    /// Number of blocks.
    pub k: u64,
    /// Block size `N / K`.
    pub b: u64,
    /// `arcsin(1/sqrt(K))`, in radians.
    pub gamma: f64,
    /// `arcsin(1/sqrt(N))`, in radians.
    pub theta1: f64,
    /// `arcsin(1/sqrt(b))`, in radians.
    pub theta2: f64,
}

impl DatabaseGeometry {
    /// Builds the geometry for `n` items in `k` blocks.
    ///
    /// Requires `k >= 2`, `k | n` and a block size of at least 2.
    pub fn new(n: u64, k: u64) -> Result<Self, Error> {
        if k < 2 {
            return Err(Error::TooSmall {
                what: "block count K",
                min: 2,
                got: k,
            });
        }
        if n % k != 0 {
            return Err(Error::NonDivisible { n, k });
        }
        let b = n / k;
        if b < 2 {
            return Err(Error::TooSmall {
                what: "block size b",
                min: 2,
                got: b,
            });
        }
        Ok(DatabaseGeometry {
            n,
            k,
            b,
            gamma: (k as f64).sqrt().recip().asin(),
            theta1: (n as f64).sqrt().recip().asin(),
            theta2: (b as f64).sqrt().recip().asin(),
        })
    }

    /// The uniform superposition over the whole database, projected on the
    /// reduced basis: `(sin(gamma)sin(theta2), sin(gamma)cos(theta2), cos(gamma))`.
    pub fn initial_state(&self) -> ReducedState {
        let (sg, cg) = self.gamma.sin_cos();
        let (st, ct) = self.theta2.sin_cos();
        ReducedState {
            a_t: sg * st,
            a_ntt: sg * ct,
            a_u: cg,
        }
    }

    /// Exact matrix of one global iteration on the reduced basis.
    ///
    /// Built as `-(I - 2|s1><s1|) * diag(-1, 1, 1)` with `|s1>` the reduced
    /// uniform state; its `(t, t)` entry equals `cos(2*theta1)` and its
    /// determinant is -1.
    pub fn global_matrix(&self) -> ReducedMatrix {
        let s = self.initial_state();
        let v = [s.a_t, s.a_ntt, s.a_u];
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                let refl = if i == j { 1.0 } else { 0.0 } - 2.0 * v[i] * v[j];
                *entry = if j == 0 { refl } else { -refl };
            }
        }
        ReducedMatrix(m)
    }

    /// Exact matrix of one local iteration: a rotation by `2*theta2` in the
    /// `(|t>, |ntt>)` plane that leaves `|u>` fixed.
    pub fn local_matrix(&self) -> ReducedMatrix {
        let (s2, c2) = (2.0 * self.theta2).sin_cos();
        ReducedMatrix([[c2, s2, 0.0], [-s2, c2, 0.0], [0.0, 0.0, 1.0]])
    }
}

/// Sign `(-1)^j` of an iteration count, as it enters the large-block
/// asymptotic matrices and the scaled constraint equations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    /// `-1.0` for odd counts, `+1.0` for even counts.
    pub fn sign(self) -> f64 {
        match self {
            Parity::Odd => -1.0,
            Parity::Even => 1.0,
        }
    }

    /// Parity of a concrete iteration count.
    pub fn of(count: u64) -> Self {
        if count % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Large-block limit of `j` global iterations, with `phi = 2*j*theta1` and
/// `parity = (-1)^j`: a rotation by `phi` in the plane spanned by `|t>` and
/// `sin(gamma)|ntt> + cos(gamma)|u>`, times `parity` on the complement.
pub fn asymptotic_global(gamma: f64, phi: f64, parity: Parity) -> ReducedMatrix {
    let p = parity.sign();
    let (s, c) = gamma.sin_cos();
    let (sp, cp) = phi.sin_cos();
    ReducedMatrix([
        [cp, sp * s, sp * c],
        [-sp * s, p * c * c + cp * s * s, s * c * (cp - p)],
        [-sp * c, s * c * (cp - p), p * s * s + cp * c * c],
    ])
}

/// Real amplitudes on the `(|t>, |ntt>, |u>)` basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReducedState {
    pub a_t: f64,
    pub a_ntt: f64,
    pub a_u: f64,
}

impl ReducedState {
    pub fn new(a_t: f64, a_ntt: f64, a_u: f64) -> Self {
        ReducedState { a_t, a_ntt, a_u }
    }

    /// Euclidean norm of the amplitude vector.
    pub fn norm(&self) -> f64 {
        (self.a_t * self.a_t + self.a_ntt * self.a_ntt + self.a_u * self.a_u).sqrt()
    }

    /// Probability of measuring any item of the target block:
    /// `a_t^2 + a_ntt^2`, which equals `1 - a_u^2` for unit states.
    pub fn block_success_probability(&self) -> f64 {
        self.a_t * self.a_t + self.a_ntt * self.a_ntt
    }

    /// Largest per-component difference to another state.
    pub fn max_component_diff(&self, other: &ReducedState) -> f64 {
        let dt = (self.a_t - other.a_t).abs();
        let dn = (self.a_ntt - other.a_ntt).abs();
        let du = (self.a_u - other.a_u).abs();
        dt.max(dn).max(du)
    }
}

/// 3x3 real matrix on the reduced basis, row and column order `(t, ntt, u)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedMatrix(pub [[f64; 3]; 3]);

impl ReducedMatrix {
    pub const IDENTITY: ReducedMatrix = ReducedMatrix([
        [1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0],
    ]);

    pub fn mul(&self, rhs: &ReducedMatrix) -> ReducedMatrix {
        let mut out = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = (0..3).map(|l| self.0[i][l] * rhs.0[l][j]).sum();
            }
        }
        ReducedMatrix(out)
    }

    /// Matrix power by repeated squaring.
    pub fn pow(&self, mut exp: u64) -> ReducedMatrix {
        let mut result = ReducedMatrix::IDENTITY;
        let mut base = *self;
        while exp > 0 {
            if exp & 1 == 1 {
                result = base.mul(&result);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        result
    }

    pub fn apply(&self, s: ReducedState) -> ReducedState {
        let v = [s.a_t, s.a_ntt, s.a_u];
        let mut out = [0.0; 3];
        for (i, row) in self.0.iter().enumerate() {
            out[i] = row[0] * v[0] + row[1] * v[1] + row[2] * v[2];
        }
        ReducedState::new(out[0], out[1], out[2])
    }

    pub fn transpose(&self) -> ReducedMatrix {
        let m = &self.0;
        ReducedMatrix([
            [m[0][0], m[1][0], m[2][0]],
            [m[0][1], m[1][1], m[2][1]],
            [m[0][2], m[1][2], m[2][2]],
        ])
    }

    pub fn determinant(&self) -> f64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    /// Largest entrywise deviation of `M^T M` from the identity.
    pub fn orthogonality_defect(&self) -> f64 {
        let gram = self.transpose().mul(self);
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((gram.0[i][j] - want).abs());
            }
        }
        worst
    }

    /// Largest entrywise difference to another matrix.
    pub fn max_entry_diff(&self, other: &ReducedMatrix) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).abs());
            }
        }
        worst
    }
}

/// Which of the two iteration operators a segment repeats.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IterationKind {
    Global,
    Local,
}

/// A run of `count` identical iterations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Segment {
    pub kind: IterationKind,
    pub count: u64,
}

impl Segment {
    pub fn global(count: u64) -> Self {
        Segment {
            kind: IterationKind::Global,
            count,
        }
    }

    pub fn local(count: u64) -> Self {
        Segment {
            kind: IterationKind::Local,
            count,
        }
    }
}

/// Ordered list of iteration segments; the first listed segment acts first.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct IterationSequence {
    pub steps: Vec<Segment>,
}

impl IterationSequence {
    pub fn new(steps: Vec<Segment>) -> Self {
        IterationSequence { steps }
    }

    /// Total number of oracle queries in the sequence.
    pub fn total_queries(&self) -> u64 {
        self.steps.iter().map(|s| s.count).sum()
    }
}

/// Applies a sequence of exact reduced iterations to `start`, first listed
/// segment first. Segment powers are computed by repeated squaring.
pub fn apply_sequence(
    geom: &DatabaseGeometry,
    seq: &IterationSequence,
    start: ReducedState,
) -> ReducedState {
    let global = geom.global_matrix();
    let local = geom.local_matrix();
    let mut state = start;
    for seg in &seq.steps {
        let m = match seg.kind {
            IterationKind::Global => &global,
            IterationKind::Local => &local,
        };
        state = m.pow(seg.count).apply(state);
    }
    state
}
