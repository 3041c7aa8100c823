//! Dense exact matrices over `Q(ζ_p)`.
//!
//! Zero tests are exact comparisons of canonical representations, so rank
//! and determinant answers carry no rounding caveats.

use std::fmt;

use crate::field::{CycloElement, FieldError, GaloisContext};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Row-major matrix whose entries all belong to the same `Q(ζ_p)`.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    p: u32,
    entries: Vec<CycloElement>,
}

impl ExactMatrix {
    pub fn new(
        ctx: &GaloisContext,
        rows: usize,
        cols: usize,
        entries: Vec<CycloElement>,
    ) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::Shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        for e in &entries {
            ctx.check(e)?;
        }
        Ok(Self {
            rows,
            cols,
            p: ctx.p(),
            entries,
        })
    }

    pub fn from_fn(
        ctx: &GaloisContext,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> CycloElement,
    ) -> Result<Self, LinalgError> {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self::new(ctx, rows, cols, entries)
    }

    pub fn zeros(ctx: &GaloisContext, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            p: ctx.p(),
            entries: vec![ctx.zero(); rows * cols],
        }
    }

    pub fn identity(ctx: &GaloisContext, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.entries[i * n + i] = ctx.one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn entries(&self) -> &[CycloElement] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloElement {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: CycloElement) {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        assert_eq!(value.p(), self.p, "cyclotomic field mismatch");
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[CycloElement] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            p: self.p,
            entries,
        }
    }

    /// Submatrix keeping the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            for &j in cols {
                entries.push(self.get(i, j).clone());
            }
        }
        Self {
            rows: self.rows,
            cols: cols.len(),
            p: self.p,
            entries,
        }
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            entries.extend_from_slice(self.row(i));
        }
        Self {
            rows: rows.len(),
            cols: self.cols,
            p: self.p,
            entries,
        }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.cols || self.p != other.p {
            return Err(LinalgError::Shape(format!(
                "cannot stack {}x{} on {}x{}",
                other.rows, other.cols, self.rows, self.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            p: self.p,
            entries,
        })
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        if self.p != rhs.p {
            return Err(FieldError::ContextMismatch {
                left: self.p,
                right: rhs.p,
            }
            .into());
        }
        let mut entries = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = CycloElement::zero(self.p);
                for t in 0..self.cols {
                    let (a, b) = (self.get(i, t), rhs.get(t, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                entries.push(acc);
            }
        }
        Ok(Self {
            rows: self.rows,
            cols: rhs.cols,
            p: self.p,
            entries,
        })
    }

    /// Exact determinant.
    ///
    /// Matrices up to 4x4 use division-free cofactor expansion; larger ones
    /// use Bareiss fraction-free elimination.
    pub fn det(&self) -> Result<CycloElement, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows <= 4 {
            let cols: Vec<usize> = (0..self.cols).collect();
            Ok(self.cofactor_det(0, &cols))
        } else {
            Ok(self.bareiss_det())
        }
    }

    fn cofactor_det(&self, row: usize, cols: &[usize]) -> CycloElement {
        match cols.len() {
            0 => CycloElement::one(self.p),
            1 => self.get(row, cols[0]).clone(),
            2 => {
                let a = self.get(row, cols[0]) * self.get(row + 1, cols[1]);
                let b = self.get(row, cols[1]) * self.get(row + 1, cols[0]);
                &a - &b
            }
            _ => {
                let mut acc = CycloElement::zero(self.p);
                for (pos, &c) in cols.iter().enumerate() {
                    let entry = self.get(row, c);
                    if entry.is_zero() {
                        continue;
                    }
                    let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let term = entry * &self.cofactor_det(row + 1, &rest);
                    acc = if pos % 2 == 0 {
                        &acc + &term
                    } else {
                        &acc - &term
                    };
                }
                acc
            }
        }
    }

    fn bareiss_det(&self) -> CycloElement {
        let n = self.rows;
        let mut a: Vec<Vec<CycloElement>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut negate = false;
        let mut prev_inv: Option<CycloElement> = None;
        for k in 0..n.saturating_sub(1) {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        negate = !negate;
                    }
                    None => return CycloElement::zero(self.p),
                }
            }
            fraction_free_step(&mut a, k, k, prev_inv.as_ref());
            if k + 2 < n {
                prev_inv = Some(a[k][k].inv().expect("pivot is nonzero"));
            }
        }
        let d = a[n - 1][n - 1].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    /// Exact rank by fraction-free row echelon reduction.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<CycloElement>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut rank = 0;
        let mut prev_inv: Option<CycloElement> = None;
        for c in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(pivot) = (rank..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(rank, pivot);
            fraction_free_step(&mut a, rank, c, prev_inv.as_ref());
            rank += 1;
            if rank < self.rows {
                prev_inv = Some(a[rank - 1][c].inv().expect("pivot is nonzero"));
            }
        }
        rank
    }

    /// For a `k x (k-1)` matrix `A`, the `k` values `det[e_j | A]`.
    ///
    /// This is the first row of the adjugate of `[0 | A]`, so the returned
    /// row `v` always satisfies `v · A = 0`.
    pub fn bordered_minor_row(&self) -> Result<Vec<CycloElement>, LinalgError> {
        let k = self.rows;
        if self.cols + 1 != k {
            return Err(LinalgError::Shape(format!(
                "bordered minors need a k x (k-1) matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        let all_cols: Vec<usize> = (0..self.cols).collect();
        let out = (0..k)
            .map(|j| {
                let kept: Vec<usize> = (0..k).filter(|&i| i != j).collect();
                let minor = self.select_rows(&kept).select_columns(&all_cols);
                let d = minor.det().expect("minor is square");
                if j % 2 == 0 {
                    d
                } else {
                    -d
                }
            })
            .collect();
        Ok(out)
    }
}

/// One Bareiss step on pivot `(r, c)`: every row below is replaced by
/// `(pivot * row - row[c] * pivot_row) / previous_pivot`, which clears
/// column `c` and keeps the entries as small as the exact minors.
fn fraction_free_step(
    a: &mut [Vec<CycloElement>],
    r: usize,
    c: usize,
    prev_inv: Option<&CycloElement>,
) {
    let (top, rest) = a.split_at_mut(r + 1);
    let pivot_row = &top[r];
    let pivot = &pivot_row[c];
    for row in rest.iter_mut() {
        let factor = row[c].clone();
        for j in c + 1..pivot_row.len() {
            let mut v = pivot * &row[j];
            if !factor.is_zero() && !pivot_row[j].is_zero() {
                v = &v - &(&factor * &pivot_row[j]);
            }
            if let Some(inv) = prev_inv {
                if !v.is_zero() {
                    v = &v * inv;
                }
            }
            row[j] = v;
        }
        row[c] = CycloElement::zero(pivot.p());
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix<{}> {}x{} [", self.p, self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    fn ctx5() -> GaloisContext {
        GaloisContext::new(5).unwrap()
    }

    #[test]
    fn identity_det_and_rank() {
        let ctx = ctx5();
        for n in 0..7 {
            let id = ExactMatrix::identity(&ctx, n);
            assert!(id.det().unwrap().is_one(), "n = {n}");
            assert_eq!(id.rank(), n);
        }
    }

    #[test]
    fn zero_column_gives_zero_det() {
        let ctx = ctx5();
        for n in [3, 5, 6] {
            let m = ExactMatrix::from_fn(&ctx, n, n, |i, j| {
                if j == 1 {
                    ctx.zero()
                } else {
                    ctx.zeta_pow((i * j + i) as u64)
                }
            })
            .unwrap();
            assert!(m.det().unwrap().is_zero());
        }
    }

    #[test]
    fn two_by_two_example() {
        let ctx = ctx5();
        let m = ExactMatrix::new(
            &ctx,
            2,
            2,
            vec![
                ctx.zeta_pow(1),
                ctx.zeta_pow(2),
                ctx.zeta_pow(2),
                ctx.zeta_pow(4),
            ],
        )
        .unwrap();
        let expected: Vec<Rational> = [2, 1, 1, 1]
            .iter()
            .map(|&v| Rational::from_integer(v.into()))
            .collect();
        assert_eq!(m.det().unwrap().coeffs(), expected.as_slice());
    }

    #[test]
    fn det_rejects_non_square() {
        let ctx = ctx5();
        assert_eq!(
            ExactMatrix::zeros(&ctx, 2, 3).det(),
            Err(LinalgError::NotSquare { rows: 2, cols: 3 })
        );
    }

    #[test]
    fn ranks() {
        let ctx = ctx5();
        assert_eq!(ExactMatrix::zeros(&ctx, 3, 4).rank(), 0);
        let z = ctx.zeta_pow(1);
        let r0 = [ctx.from_integer(3), &ctx.one() + &ctx.zeta_pow(3)];
        let r1 = [&z * &r0[0], &z * &r0[1]];
        let m = ExactMatrix::new(&ctx, 2, 2, [r0, r1].concat()).unwrap();
        assert_eq!(m.rank(), 1);
        assert!(m.det().unwrap().is_zero());
    }

    #[test]
    fn bordered_row_two_by_one() {
        let ctx = ctx5();
        let a = &ctx.zeta_pow(2) + &ctx.from_integer(3);
        let b = ctx.zeta_pow(3);
        let m = ExactMatrix::new(&ctx, 2, 1, vec![a.clone(), b.clone()]).unwrap();
        let row = m.bordered_minor_row().unwrap();
        assert_eq!(row, vec![b.clone(), -a.clone()]);
        assert!((&(&row[0] * &a) + &(&row[1] * &b)).is_zero());
    }

    #[test]
    fn bordered_row_with_zero_column() {
        let ctx = ctx5();
        let m = ExactMatrix::from_fn(&ctx, 4, 3, |i, j| {
            if j == 2 {
                ctx.zero()
            } else {
                ctx.zeta_pow((i + 2 * j) as u64)
            }
        })
        .unwrap();
        assert!(m
            .bordered_minor_row()
            .unwrap()
            .iter()
            .all(CycloElement::is_zero));
    }

    #[test]
    fn bordered_row_single_row() {
        let ctx = ctx5();
        let m = ExactMatrix::zeros(&ctx, 1, 0);
        let row = m.bordered_minor_row().unwrap();
        assert_eq!(row.len(), 1);
        assert!(row[0].is_one());
        assert!(ExactMatrix::zeros(&ctx, 3, 3).bordered_minor_row().is_err());
    }

    #[test]
    fn shape_checks() {
        let ctx = ctx5();
        assert!(ExactMatrix::new(&ctx, 2, 2, vec![ctx.one()]).is_err());
        let other = GaloisContext::new(7).unwrap();
        assert!(ExactMatrix::new(&ctx, 1, 1, vec![other.one()]).is_err());
        let a = ExactMatrix::zeros(&ctx, 2, 3);
        assert!(a.mul(&a).is_err());
    }
}
