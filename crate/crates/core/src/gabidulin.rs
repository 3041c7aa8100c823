//! Moore matrices and the randomized construction of support-constrained
//! Gabidulin generator matrices.
//!
//! A draw picks integer coordinates `γ_ij` uniformly from `{0, …, N-1}`,
//! forms evaluation points `x_i = Σ_j γ_ij b_j` in the power basis, builds the
//! `k x n` Moore matrix `A` with rows `θ^{r}(x_1), …, θ^{r}(x_n)`, and the row
//! combination `T` whose row `i` is `det[e_j | A_{:,Z_i}]` for `j = 1..k`.
//! `G = T·A` then vanishes on every `Z_i` identically. The draw succeeds when
//! `det T ≠ 0` and the points are linearly independent over `Q`; otherwise the
//! construction redraws with the next sub-seed.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constraints::{check_condition, complete_sets, ConstraintError, SupportSpec};
use crate::field::{CycloElement, GaloisContext, Rational};
use crate::linalg::{ExactMatrix, LinalgError};

/// Redraw budget used by the CLI when none is given.
pub const DEFAULT_MAX_RETRIES: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error("{what} = {value} exceeds the field degree m = {m}")]
    TooLarge {
        what: &'static str,
        value: usize,
        m: usize,
    },
    #[error("sample set size must be at least 1")]
    EmptySampleSet,
    #[error("epsilon must satisfy 0 < epsilon <= 1, got {0}")]
    EpsilonOutOfRange(String),
    #[error("all {attempts} draws failed (det T or the top Moore minor vanished)")]
    RetriesExhausted { attempts: u32 },
    #[error("spec has n = {n} columns but {points} evaluation points were given")]
    PointCount { n: usize, points: usize },
    #[error(transparent)]
    Constraint(#[from] ConstraintError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Evaluation points together with the random coordinates that produced them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluationPoints {
    pub x: Vec<CycloElement>,
    /// `gamma[i][j]` is the coefficient of basis element `b_{j+1}` in `x_{i+1}`.
    pub gamma: Vec<Vec<u64>>,
    pub sample_set_size: u64,
    /// Seed of the generator that drew `gamma`.
    pub seed: u64,
}

impl EvaluationPoints {
    /// Reassembles `x` from explicit coordinates.
    pub fn from_gamma(
        ctx: &GaloisContext,
        gamma: Vec<Vec<u64>>,
        sample_set_size: u64,
        seed: u64,
    ) -> Result<Self, ConstructionError> {
        let m = ctx.degree();
        if gamma.len() > m {
            return Err(ConstructionError::TooLarge {
                what: "n",
                value: gamma.len(),
                m,
            });
        }
        let mut x = Vec::with_capacity(gamma.len());
        for row in &gamma {
            let coeffs: Vec<Rational> = row
                .iter()
                .map(|&g| Rational::from_integer(BigInt::from(g)))
                .collect();
            x.push(ctx.element(coeffs).map_err(LinalgError::from)?);
        }
        Ok(Self {
            x,
            gamma,
            sample_set_size,
            seed,
        })
    }
}

/// Moore matrix with entry `(i, j) = θ^i(x_j)` for `i < rows`.
pub fn moore_matrix(
    ctx: &GaloisContext,
    x: &[CycloElement],
    rows: usize,
) -> Result<ExactMatrix, ConstructionError> {
    let m = ctx.degree();
    if rows > m {
        return Err(ConstructionError::TooLarge {
            what: "rows",
            value: rows,
            m,
        });
    }
    if x.len() > m {
        return Err(ConstructionError::TooLarge {
            what: "n",
            value: x.len(),
            m,
        });
    }
    let mut entries = Vec::with_capacity(rows * x.len());
    for i in 0..rows {
        for xj in x {
            entries.push(ctx.apply_aut(xj, i));
        }
    }
    Ok(ExactMatrix::new(ctx, rows, x.len(), entries)?)
}

/// Whether `x_1..x_n` are linearly independent over `Q`, decided by the
/// top `n x n` Moore minor.
pub fn is_independent(ctx: &GaloisContext, x: &[CycloElement]) -> Result<bool, ConstructionError> {
    Ok(!top_moore_minor(ctx, x)?.is_zero())
}

/// `det M_{[n],[n]}` for the Moore matrix of `x`.
pub fn top_moore_minor(
    ctx: &GaloisContext,
    x: &[CycloElement],
) -> Result<CycloElement, ConstructionError> {
    Ok(moore_matrix(ctx, x, x.len())?.det()?)
}

/// Draws `n` points with coordinates uniform in `{0, …, s_size-1}`.
///
/// The generator is ChaCha8 seeded with `seed`; coordinates are drawn
/// row-major: all of `x_1`'s coordinates, then `x_2`'s, and so on.
pub fn sample_points(
    ctx: &GaloisContext,
    n: usize,
    s_size: u64,
    seed: u64,
) -> Result<EvaluationPoints, ConstructionError> {
    if s_size == 0 {
        return Err(ConstructionError::EmptySampleSet);
    }
    let m = ctx.degree();
    if n > m {
        return Err(ConstructionError::TooLarge {
            what: "n",
            value: n,
            m,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gamma: Vec<Vec<u64>> = (0..n)
        .map(|_| (0..m).map(|_| rng.gen_range(0..s_size)).collect())
        .collect();
    EvaluationPoints::from_gamma(ctx, gamma, s_size, seed)
}

/// Smallest `|S|` with `(n + k(k-1)) / |S| ≤ epsilon`.
pub fn required_sample_size(
    n: usize,
    k: usize,
    epsilon: &Rational,
) -> Result<u64, ConstructionError> {
    if !(epsilon > &Rational::zero() && epsilon <= &Rational::one()) {
        return Err(ConstructionError::EpsilonOutOfRange(epsilon.to_string()));
    }
    let degree = BigRational::from_integer(BigInt::from(failure_degree(n, k)));
    let size = (degree / epsilon).ceil().to_integer();
    Ok(size.to_u64().unwrap_or(u64::MAX).max(1))
}

/// Total degree `n + k(k-1)` of the polynomial whose vanishing makes a draw fail.
pub fn failure_degree(n: usize, k: usize) -> u64 {
    (n + k * k.saturating_sub(1)) as u64
}

/// Sub-seed for draw number `attempt` under the run seed `seed`.
///
/// SplitMix64 applied to `seed + attempt · φ64`, so consecutive attempts and
/// neighbouring run seeds get unrelated streams.
pub fn derive_seed(seed: u64, attempt: u64) -> u64 {
    let mut z = seed.wrapping_add(attempt.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// One draw of the construction, kept whether or not it succeeded.
#[derive(Debug, Clone)]
pub struct Draw {
    pub points: EvaluationPoints,
    pub a: ExactMatrix,
    pub t: ExactMatrix,
    pub g: ExactMatrix,
    pub det_t: CycloElement,
    pub det_moore: CycloElement,
}

impl Draw {
    /// `det T · det M_{[n],[n]} ≠ 0`.
    pub fn succeeded(&self) -> bool {
        !self.det_t.is_zero() && !self.det_moore.is_zero()
    }
}

/// The row-combination matrix for a completed spec: row `i` is
/// `det[e_j | A_{:,Z_i}]`, `j = 1..k`.
pub fn combination_matrix(
    ctx: &GaloisContext,
    spec: &SupportSpec,
    a: &ExactMatrix,
) -> Result<ExactMatrix, ConstructionError> {
    let k = spec.k();
    let mut entries = Vec::with_capacity(k * k);
    for i in 0..k {
        let cols = spec.row_zeros(i);
        entries.extend(a.select_columns(&cols).bordered_minor_row()?);
    }
    Ok(ExactMatrix::new(ctx, k, k, entries)?)
}

/// Builds `A`, `T` and `G` for given points. `spec` must be completed.
pub fn draw_from_points(
    ctx: &GaloisContext,
    spec: &SupportSpec,
    points: EvaluationPoints,
) -> Result<Draw, ConstructionError> {
    if points.x.len() != spec.n() {
        return Err(ConstructionError::PointCount {
            n: spec.n(),
            points: points.x.len(),
        });
    }
    if !spec.is_completed() {
        return Err(ConstraintError::Invalid(format!(
            "every zero set must have exactly k - 1 = {} columns",
            spec.k() - 1
        ))
        .into());
    }
    let a = moore_matrix(ctx, &points.x, spec.k())?;
    let t = combination_matrix(ctx, spec, &a)?;
    let g = t.mul(&a)?;
    let det_t = t.det()?;
    let det_moore = top_moore_minor(ctx, &points.x)?;
    Ok(Draw {
        points,
        a,
        t,
        g,
        det_t,
        det_moore,
    })
}

/// A single draw with the given seed, no retries. `spec` must be completed.
pub fn draw_once(
    ctx: &GaloisContext,
    spec: &SupportSpec,
    s_size: u64,
    seed: u64,
) -> Result<Draw, ConstructionError> {
    let points = sample_points(ctx, spec.n(), s_size, seed)?;
    draw_from_points(ctx, spec, points)
}

/// A successful construction.
#[derive(Debug, Clone)]
pub struct ConstructionResult {
    /// The spec as given.
    pub spec: SupportSpec,
    /// The completed spec actually used to build `T`.
    pub completed: SupportSpec,
    pub a: ExactMatrix,
    pub t: ExactMatrix,
    pub g: ExactMatrix,
    pub points: EvaluationPoints,
    pub s_size: u64,
    /// Run seed; draw `r` used `derive_seed(seed, r)`.
    pub seed: u64,
    pub max_retries: u32,
    /// Failed draws before the successful one.
    pub retries: u32,
}

/// Las Vegas construction: draws until `det T · det M_{[n],[n]} ≠ 0`,
/// allowing up to `max_retries` failed draws.
pub fn construct(
    spec: &SupportSpec,
    ctx: &GaloisContext,
    s_size: u64,
    seed: u64,
    max_retries: u32,
) -> Result<ConstructionResult, ConstructionError> {
    let m = ctx.degree();
    if spec.n() > m {
        return Err(ConstructionError::TooLarge {
            what: "n",
            value: spec.n(),
            m,
        });
    }
    let report = check_condition(spec)?;
    if !report.holds {
        return Err(ConstraintError::ConditionViolated {
            omega: report.omega,
        }
        .into());
    }
    let completed = complete_sets(spec)?;
    for attempt in 0..=max_retries {
        let draw = draw_once(ctx, &completed, s_size, derive_seed(seed, attempt as u64))?;
        if draw.succeeded() {
            return Ok(ConstructionResult {
                spec: spec.clone(),
                completed,
                a: draw.a,
                t: draw.t,
                g: draw.g,
                points: draw.points,
                s_size,
                seed,
                max_retries,
                retries: attempt,
            });
        }
    }
    Err(ConstructionError::RetriesExhausted {
        attempts: max_retries + 1,
    })
}
