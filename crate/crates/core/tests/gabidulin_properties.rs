use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sparsegab::constraints::SupportSpec;
use sparsegab::field::{CycloElement, GaloisContext, Rational};
use sparsegab::gabidulin::{
    construct, draw_once, failure_degree, is_independent, moore_matrix, top_moore_minor,
    EvaluationPoints, DEFAULT_MAX_RETRIES,
};

/// Rank over `Q` of the points' coordinate vectors, by plain Gaussian
/// elimination on rationals.
fn rational_rank(rows: &[Vec<Rational>]) -> usize {
    let mut a = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = a[rank][c].recip();
        let pivot = a[rank].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != rank && !row[c].is_zero() {
                let f = &row[c] * &inv;
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= p * &f;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Searches coefficient vectors in `{-r..r}^n` for a vanishing combination.
fn small_dependence(x: &[CycloElement], ctx: &GaloisContext, r: i64) -> bool {
    let n = x.len();
    let width = (2 * r + 1) as usize;
    (1..width.pow(n as u32)).any(|mut code| {
        let mut acc = ctx.zero();
        let mut nonzero = false;
        for xi in x {
            let beta = (code % width) as i64 - r;
            code /= width;
            if beta != 0 {
                nonzero = true;
                acc = &acc + &xi.scale(&Rational::from_integer(beta.into()));
            }
        }
        nonzero && acc.is_zero()
    })
}

fn coords(x: &[CycloElement]) -> Vec<Vec<Rational>> {
    x.iter().map(|e| e.coeffs().to_vec()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    /// Dependence over Q, dependent Moore columns, and a vanishing top minor
    /// all coincide.
    #[test]
    fn independence_criteria_agree(
        p in prop::sample::select(vec![5u32, 7]),
        n in 1usize..=4,
        vals in prop::collection::vec(-2i64..=2, 24),
        plant in any::<bool>(),
    ) {
        let ctx = GaloisContext::new(p).unwrap();
        let m = ctx.degree();
        let mut x: Vec<CycloElement> = (0..n)
            .map(|i| {
                let c = (0..m).map(|j| Rational::from_integer(vals[(i * m + j) % vals.len()].into())).collect();
                ctx.element(c).unwrap()
            })
            .collect();
        if plant && n >= 2 {
            // last point = x_1 - 2 x_2 + x_3 over the earlier points
            let weights = [1i64, -2, 1];
            let planted = (0..n - 1).fold(ctx.zero(), |acc, i| {
                &acc + &x[i].scale(&Rational::from_integer(weights[i].into()))
            });
            x[n - 1] = planted;
        }
        let over_q = rational_rank(&coords(&x)) < n;
        let full = moore_matrix(&ctx, &x, m).unwrap();
        let columns_dependent = full.rank() < n;
        let minor_zero = top_moore_minor(&ctx, &x).unwrap().is_zero();
        prop_assert_eq!(over_q, columns_dependent);
        prop_assert_eq!(over_q, minor_zero);
        prop_assert_eq!(is_independent(&ctx, &x).unwrap(), !minor_zero);
        if plant && n >= 2 {
            prop_assert!(minor_zero);
            prop_assert!(small_dependence(&x, &ctx, 2));
        }
    }
}

fn spec(n: usize, k: usize, zeros: &[&[usize]]) -> SupportSpec {
    SupportSpec::new(n, k, zeros.iter().map(|z| z.iter().copied())).unwrap()
}

#[test]
fn rows_are_theta_polynomial_evaluations() {
    let ctx = GaloisContext::new(7).unwrap();
    let s = spec(5, 3, &[&[0, 1], &[1, 2], &[3, 4]]);
    let r = construct(&s, &ctx, 300, 17, DEFAULT_MAX_RETRIES).unwrap();
    for row in 0..3 {
        for (j, xj) in r.points.x.iter().enumerate() {
            let f_at_x = (0..3).fold(ctx.zero(), |acc, i| {
                &acc + &(r.t.get(row, i) * &ctx.apply_aut(xj, i))
            });
            assert_eq!(&f_at_x, r.g.get(row, j));
        }
    }
}

#[test]
fn row_space_is_preserved() {
    let ctx = GaloisContext::new(11).unwrap();
    let s = spec(6, 3, &[&[0, 1], &[2, 3], &[4, 5]]);
    for seed in 0..3 {
        let r = construct(&s, &ctx, 1200, seed, DEFAULT_MAX_RETRIES).unwrap();
        assert_eq!(r.g.rank(), 3);
        assert_eq!(r.a.vstack(&r.g).unwrap().rank(), 3);
    }
}

#[test]
fn points_reassemble_from_coordinates() {
    let ctx = GaloisContext::new(7).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let gamma: Vec<Vec<u64>> = (0..4)
        .map(|_| (0..6).map(|_| rng.gen_range(0..9)).collect())
        .collect();
    let pts = EvaluationPoints::from_gamma(&ctx, gamma.clone(), 9, 0).unwrap();
    let basis = ctx.basis();
    for (x, g) in pts.x.iter().zip(&gamma) {
        let sum = g.iter().zip(&basis).fold(ctx.zero(), |acc, (&c, b)| {
            &acc + &b.scale(&Rational::from_integer(c.into()))
        });
        assert_eq!(x, &sum);
    }
}

/// Failure frequency over many single draws stays within the
/// `(n + k(k-1)) / |S|` bound plus three binomial standard deviations.
fn failure_rate_within_bound(p: u32, s: &SupportSpec, s_size: u64, trials: u64) {
    let ctx = GaloisContext::new(p).unwrap();
    let completed = sparsegab::complete_sets(s).unwrap();
    let failures = (0..trials)
        .filter(|&seed| {
            !draw_once(&ctx, &completed, s_size, seed)
                .unwrap()
                .succeeded()
        })
        .count() as f64;
    let bound = failure_degree(s.n(), s.k()) as f64 / s_size as f64;
    let slack = 3.0 * (bound * (1.0 - bound) / trials as f64).sqrt();
    let rate = failures / trials as f64;
    assert!(
        rate <= bound + slack,
        "rate {rate} exceeds {bound} + {slack}"
    );
}

#[test]
fn failure_rate_small_sample_set() {
    failure_rate_within_bound(5, &spec(3, 2, &[&[0], &[1]]), 10, 300);
}

#[test]
fn failure_rate_three_rows() {
    failure_rate_within_bound(7, &spec(4, 3, &[&[0, 1], &[2, 3], &[0, 2]]), 30, 200);
}
