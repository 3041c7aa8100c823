use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{FieldError, Rational};

/// An element of `Q(ζ_p)` in the power basis `1, ζ, …, ζ^{p-2}`.
///
/// Coefficients are canonical rationals, so two elements are equal exactly
/// when their representations are equal.
///
/// The arithmetic operators panic when mixing fields; the `try_*` methods
/// report [`FieldError::ContextMismatch`] instead.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloElement {
    p: u32,
    coeffs: Vec<Rational>,
}

impl CycloElement {
    pub(crate) fn from_coeffs_unchecked(p: u32, coeffs: Vec<Rational>) -> Self {
        debug_assert_eq!(coeffs.len(), (p - 1) as usize);
        Self { p, coeffs }
    }

    pub(crate) fn zero(p: u32) -> Self {
        Self::from_coeffs_unchecked(p, vec![Rational::zero(); (p - 1) as usize])
    }

    pub(crate) fn one(p: u32) -> Self {
        let mut e = Self::zero(p);
        e.coeffs[0] = Rational::one();
        e
    }

    pub(crate) fn zeta_pow(p: u32, e: u64) -> Self {
        let mut acc = vec![Rational::zero(); p as usize];
        acc[(e % p as u64) as usize] = Rational::one();
        Self::from_full_residue(p, acc)
    }

    /// Reduces a vector indexed by `0..p` (coefficients of `ζ^0..ζ^{p-1}`)
    /// through `ζ^{p-1} = -(1 + ζ + … + ζ^{p-2})`.
    pub(crate) fn from_full_residue(p: u32, mut acc: Vec<Rational>) -> Self {
        debug_assert_eq!(acc.len(), p as usize);
        let top = acc.pop().expect("p >= 3");
        if !top.is_zero() {
            for c in acc.iter_mut() {
                *c -= &top;
            }
        }
        Self::from_coeffs_unchecked(p, acc)
    }

    /// The conductor `p` of the field this element lives in.
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// True when the element lies in the base field `Q`.
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn ensure_same(&self, other: &Self) -> Result<(), FieldError> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(FieldError::ContextMismatch {
                left: self.p,
                right: other.p,
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.ensure_same(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self::from_coeffs_unchecked(self.p, coeffs))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.ensure_same(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self::from_coeffs_unchecked(self.p, coeffs))
    }

    /// Schoolbook product on cleared-denominator integer coefficients,
    /// followed by folding `ζ^p = 1` and the cyclotomic relation for `ζ^{p-1}`.
    pub fn try_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.ensure_same(other)?;
        let p = self.p as usize;
        let (xs, dx) = cleared(&self.coeffs);
        let (ys, dy) = cleared(&other.coeffs);
        let mut acc = vec![BigInt::zero(); p];
        for (i, a) in xs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in ys.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                acc[(i + j) % p] += a * b;
            }
        }
        let top = acc.pop().expect("p >= 3");
        let den = dx * dy;
        let coeffs = acc
            .into_iter()
            .map(|c| Rational::new(c - &top, den.clone()))
            .collect();
        Ok(Self::from_coeffs_unchecked(self.p, coeffs))
    }

    /// Multiplicative inverse as the product of the other `p - 2` conjugates
    /// divided by the norm.
    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        let conjugates = (2..self.p as usize)
            .map(|j| self.conjugate(j))
            .fold(Self::one(self.p), |acc, c| &acc * &c);
        let norm = self * &conjugates;
        debug_assert!(norm.is_rational());
        Ok(conjugates.scale(&norm.coeffs[0].recip()))
    }

    /// Image under `ζ -> ζ^j`.
    fn conjugate(&self, j: usize) -> Self {
        let p = self.p as usize;
        let mut acc = vec![Rational::zero(); p];
        for (i, c) in self.coeffs.iter().enumerate() {
            acc[i * j % p] = c.clone();
        }
        Self::from_full_residue(self.p, acc)
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.ensure_same(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::from_coeffs_unchecked(self.p, self.coeffs.iter().map(|c| c * r).collect())
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.p);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }
}

impl fmt::Debug for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloElement<{}>({})", self.p, self)
    }
}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (negative, abs) = if c < &Rational::zero() {
                (true, -c.clone())
            } else {
                (false, c.clone())
            };
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            match (i, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (_, true) => {}
                (_, false) => write!(f, "{abs}*")?,
            }
            match i {
                0 => {}
                1 => f.write_str("ζ")?,
                _ => write!(f, "ζ^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&CycloElement> for &CycloElement {
            type Output = CycloElement;
            fn $method(self, rhs: &CycloElement) -> CycloElement {
                self.$checked(rhs).expect("cyclotomic field mismatch")
            }
        }
        impl $trait<CycloElement> for CycloElement {
            type Output = CycloElement;
            fn $method(self, rhs: CycloElement) -> CycloElement {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &CycloElement {
    type Output = CycloElement;
    fn neg(self) -> CycloElement {
        CycloElement::from_coeffs_unchecked(self.p, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for CycloElement {
    type Output = CycloElement;
    fn neg(self) -> CycloElement {
        -&self
    }
}

/// Integer numerators over a common denominator.
fn cleared(coeffs: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let den = coeffs.iter().fold(BigInt::one(), |acc, c| {
        if c.denom().is_one() {
            acc
        } else {
            acc.lcm(c.denom())
        }
    });
    let nums = coeffs
        .iter()
        .map(|c| {
            if c.denom().is_one() {
                c.numer() * &den
            } else {
                c.numer() * (&den / c.denom())
            }
        })
        .collect();
    (nums, den)
}
