use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;
use sparsegab::field::{CycloElement, GaloisContext, Rational};

fn element(ctx: &GaloisContext, nums: &[i64], dens: &[i64]) -> CycloElement {
    let coeffs = nums
        .iter()
        .zip(dens)
        .take(ctx.degree())
        .map(|(&n, &d)| Rational::new(n.into(), d.into()))
        .collect();
    ctx.element(coeffs).unwrap()
}

fn arb_element() -> impl Strategy<Value = (u32, Vec<i64>, Vec<i64>)> {
    (
        prop::sample::select(vec![3u32, 5, 7, 11]),
        prop::collection::vec(-9i64..=9, 10),
        prop::collection::vec(1i64..=4, 10),
    )
}

/// Inverse by solving `a · x = 1` as a linear system over `Q` in the power
/// basis, with Gauss-Jordan elimination.
fn inverse_by_linear_solve(ctx: &GaloisContext, a: &CycloElement) -> CycloElement {
    let m = ctx.degree();
    let columns: Vec<CycloElement> = (0..m).map(|i| a * &ctx.zeta_pow(i as u64)).collect();
    let mut rows: Vec<Vec<Rational>> = (0..m)
        .map(|r| {
            let mut row: Vec<Rational> = columns.iter().map(|c| c.coeffs()[r].clone()).collect();
            row.push(if r == 0 {
                Rational::one()
            } else {
                Rational::zero()
            });
            row
        })
        .collect();
    for c in 0..m {
        let piv = (c..m)
            .find(|&r| !rows[r][c].is_zero())
            .expect("a is invertible");
        rows.swap(c, piv);
        let inv = rows[c][c].recip();
        for x in rows[c].iter_mut() {
            *x *= &inv;
        }
        let pivot = rows[c].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != c && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot).skip(c) {
                    *x -= p * &f;
                }
            }
        }
    }
    ctx.element(rows.into_iter().map(|row| row[m].clone()).collect())
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn ring_axioms((p, n1, d1) in arb_element(), (_, n2, d2) in arb_element(), (_, n3, d3) in arb_element()) {
        let ctx = GaloisContext::new(p).unwrap();
        let (a, b, c) = (element(&ctx, &n1, &d1), element(&ctx, &n2, &d2), element(&ctx, &n3, &d3));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn inverses((p, nums, dens) in arb_element()) {
        let ctx = GaloisContext::new(p).unwrap();
        let a = element(&ctx, &nums, &dens);
        prop_assume!(!a.is_zero());
        let inv = a.inv().unwrap();
        prop_assert!((&a * &inv).is_one());
        prop_assert_eq!(inv, inverse_by_linear_solve(&ctx, &a));
    }

    #[test]
    fn automorphism_laws((p, n1, d1) in arb_element(), (_, n2, d2) in arb_element(), e in 0usize..20) {
        let ctx = GaloisContext::new(p).unwrap();
        let (a, b) = (element(&ctx, &n1, &d1), element(&ctx, &n2, &d2));
        prop_assert_eq!(ctx.apply_aut(&(&a * &b), e), &ctx.apply_aut(&a, e) * &ctx.apply_aut(&b, e));
        prop_assert_eq!(ctx.apply_aut(&(&a + &b), e), &ctx.apply_aut(&a, e) + &ctx.apply_aut(&b, e));
        prop_assert_eq!(&ctx.apply_aut(&a, ctx.degree()), &a);
        prop_assert_eq!(&ctx.apply_aut(&a, 0), &a);
        prop_assert_eq!(ctx.apply_aut(&ctx.apply_aut(&a, e), 1), ctx.apply_aut(&a, e + 1));
    }

    #[test]
    fn theta_fixes_exactly_the_rationals((p, nums, dens) in arb_element(), keep_rational in any::<bool>()) {
        let ctx = GaloisContext::new(p).unwrap();
        let mut a = element(&ctx, &nums, &dens);
        if keep_rational {
            a = ctx.from_rational(a.coeffs()[0].clone());
        }
        prop_assert_eq!(ctx.apply_aut(&a, 1) == a, a.is_rational());
    }

    #[test]
    fn coefficients_stay_canonical((p, n1, d1) in arb_element(), (_, n2, d2) in arb_element()) {
        let ctx = GaloisContext::new(p).unwrap();
        let (a, b) = (element(&ctx, &n1, &d1), element(&ctx, &n2, &d2));
        let mut outputs = vec![&a * &b, &a - &b, ctx.apply_aut(&a, 1)];
        if !b.is_zero() {
            outputs.push(a.try_div(&b).unwrap());
        }
        for out in outputs {
            for c in out.coeffs() {
                prop_assert!(c.denom() > &BigInt::zero());
                prop_assert!(c.numer().gcd(c.denom()).is_one());
            }
        }
    }
}

#[test]
fn theta_orbit_of_zeta_has_full_length() {
    for p in [3u32, 5, 7, 11, 13] {
        let ctx = GaloisContext::new(p).unwrap();
        let z = ctx.zeta_pow(1);
        let orbit: std::collections::HashSet<Vec<String>> = (0..ctx.degree())
            .map(|e| {
                ctx.apply_aut(&z, e)
                    .coeffs()
                    .iter()
                    .map(|c| c.to_string())
                    .collect()
            })
            .collect();
        assert_eq!(orbit.len(), ctx.degree(), "p = {p}");
    }
}

#[test]
fn power_relation() {
    let ctx = GaloisContext::new(7).unwrap();
    let z = ctx.zeta_pow(1);
    assert!(z.pow(7).is_one());
    assert_eq!(z.pow(9), ctx.zeta_pow(2));
    let sum = (0..7).fold(ctx.zero(), |acc, e| &acc + &ctx.zeta_pow(e));
    assert!(sum.is_zero());
}
