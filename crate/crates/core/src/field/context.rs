use num_traits::Zero;

use super::{CycloElement, FieldError, Rational};

/// The cyclotomic field `Q(ζ_p)` for an odd prime `p`, viewed as a cyclic
/// extension of `Q` of degree `m = p - 1`.
///
/// The Galois group is generated by `θ = σ_g : ζ ↦ ζ^g` where `g` is the
/// smallest primitive root modulo `p`. The fixed basis is the power basis
/// `1, ζ, …, ζ^{m-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisContext {
    p: u32,
    generator: u32,
    // aut_targets[e][i] = g^e * i mod p
    aut_targets: Vec<Vec<usize>>,
}

impl GaloisContext {
    pub fn new(p: u32) -> Result<Self, FieldError> {
        if p < 3 || !is_prime(p) {
            return Err(FieldError::NotOddPrime(p));
        }
        let generator = smallest_primitive_root(p);
        let m = (p - 1) as usize;
        let mut aut_targets = Vec::with_capacity(m);
        let mut power: u64 = 1;
        for _ in 0..m {
            aut_targets.push(
                (0..m)
                    .map(|i| ((power * i as u64) % p as u64) as usize)
                    .collect(),
            );
            power = power * generator as u64 % p as u64;
        }
        Ok(Self {
            p,
            generator,
            aut_targets,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Degree `m = p - 1` of the extension.
    pub fn degree(&self) -> usize {
        (self.p - 1) as usize
    }

    /// The primitive root `g` defining `θ`.
    pub fn generator(&self) -> u32 {
        self.generator
    }

    pub fn zero(&self) -> CycloElement {
        CycloElement::zero(self.p)
    }

    pub fn one(&self) -> CycloElement {
        CycloElement::one(self.p)
    }

    /// `ζ^e` for any exponent, reduced through `ζ^p = 1`.
    pub fn zeta_pow(&self, e: u64) -> CycloElement {
        CycloElement::zeta_pow(self.p, e)
    }

    pub fn from_rational(&self, r: Rational) -> CycloElement {
        let mut coeffs = vec![Rational::zero(); self.degree()];
        coeffs[0] = r;
        CycloElement::from_coeffs_unchecked(self.p, coeffs)
    }

    pub fn from_integer(&self, v: i64) -> CycloElement {
        self.from_rational(Rational::from_integer(v.into()))
    }

    /// Builds an element from its power-basis coordinates.
    pub fn element(&self, coeffs: Vec<Rational>) -> Result<CycloElement, FieldError> {
        if coeffs.len() != self.degree() {
            return Err(FieldError::WrongLength {
                expected: self.degree(),
                found: coeffs.len(),
            });
        }
        Ok(CycloElement::from_coeffs_unchecked(self.p, coeffs))
    }

    /// The fixed `Q`-basis `b_1, …, b_m = 1, ζ, …, ζ^{m-1}`.
    pub fn basis(&self) -> Vec<CycloElement> {
        (0..self.degree() as u64)
            .map(|i| self.zeta_pow(i))
            .collect()
    }

    /// `θ^e(a)`. The exponent is taken modulo `m`.
    ///
    /// # Panics
    ///
    /// If `a` belongs to a different field.
    pub fn apply_aut(&self, a: &CycloElement, e: usize) -> CycloElement {
        assert_eq!(
            a.p(),
            self.p,
            "element belongs to a different cyclotomic field"
        );
        let m = self.degree();
        let targets = &self.aut_targets[e % m];
        let mut acc = vec![Rational::zero(); self.p as usize];
        for (i, c) in a.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc[targets[i]] += c;
            }
        }
        CycloElement::from_full_residue(self.p, acc)
    }

    pub(crate) fn check(&self, a: &CycloElement) -> Result<(), FieldError> {
        if a.p() == self.p {
            Ok(())
        } else {
            Err(FieldError::ContextMismatch {
                left: self.p,
                right: a.p(),
            })
        }
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

/// Smallest primitive root modulo an odd prime `p`.
pub(crate) fn smallest_primitive_root(p: u32) -> u32 {
    let p = p as u64;
    let factors = prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("every prime has a primitive root") as u32
}
