//! Polynomial oracle for the intersection condition.
//!
//! For a completed spec (every `|Z_i| = k - 1`), row `i` of the `k x k`
//! matrix `P` holds the coefficients of `∏_{t∈Z_i} (X - α_t)` in increasing
//! powers of `X`, i.e. `P_ij = e_{k-j}(-α_t : t ∈ Z_i)`. The condition holds
//! exactly when `det P` is not the zero polynomial in `α_1..α_n`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::constraints::{check_condition, subsets_of_size, ConstraintError, SupportSpec};
use crate::field::Rational;

/// Largest `k` accepted by [`OracleMode::Symbolic`].
pub const MAX_SYMBOLIC_K: usize = 6;
/// Independent evaluations performed by [`OracleMode::Randomized`].
pub const RANDOMIZED_TRIALS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("symbolic expansion is limited to k <= {limit}, got k = {k}")]
    TooLarge { k: usize, limit: usize },
    #[error("every zero set must have exactly k - 1 = {expected} columns")]
    NotCompleted { expected: usize },
    #[error(transparent)]
    Constraint(#[from] ConstraintError),
}

/// Sparse polynomial over `Q` in a fixed number of variables.
#[derive(Clone, PartialEq, Eq)]
pub struct SymbolicPolynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl SymbolicPolynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    /// The variable with 0-based index `i`.
    pub fn variable(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range");
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(exps, Rational::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Monomial exponent vectors and their (nonzero) coefficients.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// Total degree; the zero polynomial reports 0.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars, "point dimension mismatch");
        self.terms
            .iter()
            .map(|(exps, c)| {
                exps.iter().zip(point).fold(c.clone(), |acc, (&e, x)| {
                    acc * num_traits::pow(x.clone(), e as usize)
                })
            })
            .sum()
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }
}

impl Add for &SymbolicPolynomial {
    type Output = SymbolicPolynomial;
    fn add(self, rhs: &SymbolicPolynomial) -> SymbolicPolynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SymbolicPolynomial {
    type Output = SymbolicPolynomial;
    fn sub(self, rhs: &SymbolicPolynomial) -> SymbolicPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &SymbolicPolynomial {
    type Output = SymbolicPolynomial;
    fn neg(self) -> SymbolicPolynomial {
        SymbolicPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &SymbolicPolynomial {
    type Output = SymbolicPolynomial;
    fn mul(self, rhs: &SymbolicPolynomial) -> SymbolicPolynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = SymbolicPolynomial::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exps = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }
}

impl fmt::Debug for SymbolicPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(exps, c)| {
                let mono: Vec<String> = exps
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            format!("a{}", i + 1)
                        } else {
                            format!("a{}^{e}", i + 1)
                        }
                    })
                    .collect();
                if mono.is_empty() {
                    c.to_string()
                } else {
                    format!("{c}*{}", mono.join("*"))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

fn require_completed(spec: &SupportSpec) -> Result<(), OracleError> {
    if spec.is_completed() {
        Ok(())
    } else {
        Err(OracleError::NotCompleted {
            expected: spec.k() - 1,
        })
    }
}

/// Coefficients of `∏ (X - root)` in increasing powers of `X`, over any ring.
fn monic_from_roots<T: Clone>(
    roots: &[T],
    one: T,
    zero: T,
    mul: impl Fn(&T, &T) -> T,
    add: impl Fn(&T, &T) -> T,
    neg: impl Fn(&T) -> T,
) -> Vec<T> {
    let mut coeffs = vec![one];
    for r in roots {
        let minus_r = neg(r);
        let mut next = vec![zero.clone(); coeffs.len() + 1];
        for (d, c) in coeffs.iter().enumerate() {
            next[d + 1] = add(&next[d + 1], c);
            next[d] = add(&next[d], &mul(&minus_r, c));
        }
        coeffs = next;
    }
    coeffs
}

/// The `k x k` matrix `P` of a completed spec; the last column is all ones.
pub fn build_p_matrix(spec: &SupportSpec) -> Result<Vec<Vec<SymbolicPolynomial>>, OracleError> {
    require_completed(spec)?;
    let n = spec.n();
    Ok((0..spec.k())
        .map(|i| {
            let roots: Vec<SymbolicPolynomial> = spec
                .row_zeros(i)
                .into_iter()
                .map(|t| SymbolicPolynomial::variable(n, t))
                .collect();
            monic_from_roots(
                &roots,
                SymbolicPolynomial::one(n),
                SymbolicPolynomial::zero(n),
                |a, b| a * b,
                |a, b| a + b,
                |a| -a,
            )
        })
        .collect())
}

/// Division-free determinant by cofactor expansion with memoized minors
/// (`O(k 2^k)` polynomial products).
pub fn symbolic_det(matrix: &[Vec<SymbolicPolynomial>]) -> SymbolicPolynomial {
    let k = matrix.len();
    let nvars = matrix
        .first()
        .and_then(|r| r.first())
        .map_or(0, |p| p.nvars);
    let mut memo: HashMap<u32, SymbolicPolynomial> = HashMap::new();

    fn minor(
        matrix: &[Vec<SymbolicPolynomial>],
        cols: u32,
        nvars: usize,
        memo: &mut HashMap<u32, SymbolicPolynomial>,
    ) -> SymbolicPolynomial {
        let k = matrix.len();
        let row = k - cols.count_ones() as usize;
        if row == k {
            return SymbolicPolynomial::one(nvars);
        }
        if let Some(hit) = memo.get(&cols) {
            return hit.clone();
        }
        let mut acc = SymbolicPolynomial::zero(nvars);
        let mut position = 0;
        for c in 0..k {
            if cols & (1 << c) == 0 {
                continue;
            }
            let entry = &matrix[row][c];
            if !entry.is_zero() {
                let sub = minor(matrix, cols & !(1 << c), nvars, memo);
                let term = entry * &sub;
                acc = if position % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            position += 1;
        }
        memo.insert(cols, acc.clone());
        acc
    }

    assert!(k < 32, "matrix too large for symbolic expansion");
    minor(matrix, ((1u64 << k) - 1) as u32, nvars, &mut memo)
}

/// How [`det_p_is_nonzero`] decides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleMode {
    /// Full expansion of `det P`.
    Symbolic,
    /// Evaluation at random integer points; "nonzero" answers carry a witness.
    Randomized,
}

impl std::str::FromStr for OracleMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "symbolic" => Ok(Self::Symbolic),
            "randomized" => Ok(Self::Randomized),
            other => Err(format!(
                "unknown oracle mode {other:?} (symbolic | randomized)"
            )),
        }
    }
}

impl fmt::Display for OracleMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Symbolic => "symbolic",
            Self::Randomized => "randomized",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleVerdict {
    pub mode: OracleMode,
    pub det_p_nonzero: bool,
    /// Values of `α_1..α_n` where `det P ≠ 0` (randomized mode only).
    pub witness_point: Option<Vec<u64>>,
}

/// Size of the integer range sampled by the randomized mode: at least 100
/// times the degree bound `k(k-1)/2`, so each evaluation misses a nonzero
/// `det P` with probability at most 1/100.
pub fn randomized_sample_size(k: usize) -> u64 {
    (100 * (k * k.saturating_sub(1) / 2) as u64).max(100)
}

/// Decides whether `det P` is a nonzero polynomial.
pub fn det_p_is_nonzero(
    spec: &SupportSpec,
    mode: OracleMode,
    seed: u64,
) -> Result<OracleVerdict, OracleError> {
    require_completed(spec)?;
    match mode {
        OracleMode::Symbolic => {
            if spec.k() > MAX_SYMBOLIC_K {
                return Err(OracleError::TooLarge {
                    k: spec.k(),
                    limit: MAX_SYMBOLIC_K,
                });
            }
            let det = symbolic_det(&build_p_matrix(spec)?);
            Ok(OracleVerdict {
                mode,
                det_p_nonzero: !det.is_zero(),
                witness_point: None,
            })
        }
        OracleMode::Randomized => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let range = randomized_sample_size(spec.k());
            for _ in 0..RANDOMIZED_TRIALS {
                let point: Vec<u64> = (0..spec.n()).map(|_| rng.gen_range(0..range)).collect();
                if !eval_det_p(spec, &point).is_zero() {
                    return Ok(OracleVerdict {
                        mode,
                        det_p_nonzero: true,
                        witness_point: Some(point),
                    });
                }
            }
            Ok(OracleVerdict {
                mode,
                det_p_nonzero: false,
                witness_point: None,
            })
        }
    }
}

/// `det P` evaluated at integer `α`, computed with integer Bareiss elimination.
pub fn eval_det_p(spec: &SupportSpec, alpha: &[u64]) -> BigInt {
    let k = spec.k();
    let mut rows: Vec<Vec<BigInt>> = (0..k)
        .map(|i| {
            let roots: Vec<BigInt> = spec
                .row_zeros(i)
                .iter()
                .map(|&t| BigInt::from(alpha[t]))
                .collect();
            monic_from_roots(
                &roots,
                BigInt::one(),
                BigInt::zero(),
                |a, b| a * b,
                |a, b| a + b,
                |a| -a,
            )
        })
        .collect();
    integer_bareiss_det(&mut rows)
}

fn integer_bareiss_det(a: &mut [Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                let (q, r) = v.div_rem(&prev);
                debug_assert!(r.is_zero());
                a[i][j] = q;
            }
        }
        prev = a[k][k].clone();
    }
    if negate {
        -a[n - 1][n - 1].clone()
    } else {
        a[n - 1][n - 1].clone()
    }
}

/// Agreement between the intersection condition and the oracle over every
/// family of `(k-1)`-subsets of `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepTable {
    pub n: usize,
    pub k: usize,
    pub mode: OracleMode,
    pub families: u64,
    pub condition_true_det_nonzero: u64,
    pub condition_false_det_zero: u64,
    pub condition_true_det_zero: u64,
    pub condition_false_det_nonzero: u64,
}

impl SweepTable {
    pub fn agreements(&self) -> u64 {
        self.condition_true_det_nonzero + self.condition_false_det_zero
    }

    pub fn all_agree(&self) -> bool {
        self.agreements() == self.families
    }
}

/// Runs the oracle on every completed family for `(n, k)` and tabulates the
/// agreement with [`check_condition`].
pub fn sweep_families(
    n: usize,
    k: usize,
    mode: OracleMode,
    seed: u64,
) -> Result<SweepTable, OracleError> {
    let subsets = subsets_of_size(n, k.saturating_sub(1));
    let mut table = SweepTable {
        n,
        k,
        mode,
        families: 0,
        condition_true_det_nonzero: 0,
        condition_false_det_zero: 0,
        condition_true_det_zero: 0,
        condition_false_det_nonzero: 0,
    };
    let total = (subsets.len() as u64).pow(k as u32);
    for index in 0..total {
        let mut rest = index;
        let zeros: Vec<Vec<usize>> = (0..k)
            .map(|_| {
                let pick = (rest % subsets.len() as u64) as usize;
                rest /= subsets.len() as u64;
                subsets[pick].clone()
            })
            .collect();
        let spec = SupportSpec::new(n, k, zeros)?;
        let condition = check_condition(&spec)?.holds;
        let nonzero = det_p_is_nonzero(&spec, mode, seed.wrapping_add(index))?.det_p_nonzero;
        table.families += 1;
        match (condition, nonzero) {
            (true, true) => table.condition_true_det_nonzero += 1,
            (false, false) => table.condition_false_det_zero += 1,
            (true, false) => table.condition_true_det_zero += 1,
            (false, true) => table.condition_false_det_nonzero += 1,
        }
    }
    Ok(table)
}
