//! Library values against independent brute-force computations.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use hlq::hl::{elementary, hl_poly, QPoly};
use hlq::partitions::{enumerate, Bounds, Partition};
use hlq::qcomb::{csq_euler_sides, qbinom};
use hlq::series::{IntSeries, SeriesFactor};
use hlq::verify::{phi_expansion, rr_identity, rr_lhs, rr_rhs};

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(big(num), big(den))
}

/// Number of partitions of each `m < limit` into parts accepted by `allowed`.
fn restricted_partition_counts(limit: usize, allowed: impl Fn(usize) -> bool) -> Vec<BigInt> {
    let mut counts = vec![BigInt::zero(); limit];
    counts[0] = BigInt::one();
    for part in (1..limit).filter(|&p| allowed(p)) {
        for m in part..limit {
            let prev = counts[m - part].clone();
            counts[m] += prev;
        }
    }
    counts
}

fn assert_coefficients(series: &IntSeries, expected: &[BigInt], what: &str) {
    for (e, want) in expected.iter().enumerate() {
        assert_eq!(&series.coeff(e as i64), want, "{what}: coefficient of q^{e}");
    }
}

#[test]
fn partition_enumeration_counts_match_recurrence() {
    let counts = restricted_partition_counts(25, |_| true);
    for (n, want) in counts.iter().enumerate() {
        let listed = enumerate(Bounds { weight: Some(n), ..Default::default() }).unwrap();
        assert_eq!(&big(listed.len() as i64), want, "p({n})");
    }
    let euler = SeriesFactor::poch(big(1), 1, 1).reciprocal_infinite(25).unwrap();
    assert_coefficients(&euler, &counts, "1/(q;q)_inf");
}

#[test]
fn pentagonal_number_theorem() {
    let order = 120i64;
    let product = SeriesFactor::poch(big(1), 1, 1).pochhammer_infinite(order).unwrap();
    let mut expected = vec![BigInt::zero(); order as usize];
    for j in -10i64..=10 {
        let e = j * (3 * j - 1) / 2;
        if e < order {
            expected[e as usize] += if j % 2 == 0 { 1 } else { -1 };
        }
    }
    assert_coefficients(&product, &expected, "(q;q)_inf");
}

#[test]
fn distinct_parts_product_counts_distinct_partitions() {
    let product = SeriesFactor::poch_plus(big(1), 1, 1).pochhammer_infinite(30).unwrap();
    let odd = restricted_partition_counts(30, |p| p % 2 == 1);
    for (n, want) in odd.iter().enumerate() {
        let distinct = enumerate(Bounds { weight: Some(n), ..Default::default() })
            .unwrap()
            .into_iter()
            .filter(|l| l.parts().windows(2).all(|w| w[0] > w[1]))
            .count();
        assert_eq!(&big(distinct as i64), want, "distinct vs odd parts of {n}");
    }
    assert_coefficients(&product, &odd, "(-q;q)_inf");
}

/// `sum_n q^{exponent(n)}/(q^2;q^2)_n` below `q^limit`, by counting partitions
/// of `e - exponent(n)` into even parts at most `2n`.
fn even_part_sum(limit: usize, exponent: impl Fn(usize) -> usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); limit];
    let mut n = 0;
    while exponent(n) < limit {
        let counts = restricted_partition_counts(limit, |p| p % 2 == 0 && p <= 2 * n);
        for e in exponent(n)..limit {
            out[e] += &counts[e - exponent(n)];
        }
        n += 1;
    }
    out
}

#[test]
fn families_at_k_one_match_single_sums() {
    // at k = 1 the denominator (-q)_{λ_1} (q)_{λ_1} is (q^2;q^2)_{λ_1}
    for (id, exponent) in [("krr1", (|n: usize| n * n + n) as fn(usize) -> usize), ("krr9", |n| n * n), ("krr6", |n| n * n)] {
        let ident = rr_identity(id).unwrap();
        let expected = even_part_sum(50, exponent);
        assert_coefficients(&rr_lhs(ident, 1, 50).unwrap(), &expected, id);
        assert_coefficients(&rr_rhs(ident, 1, 50).unwrap(), &expected, id);
    }
}

#[test]
fn gaussian_binomials_count_inversions() {
    for n in 0..=8usize {
        for m in 0..=n {
            let mut expected = vec![BigInt::zero(); m * (n - m) + 1];
            for word in 0u32..(1 << n) {
                if word.count_ones() as usize != m {
                    continue;
                }
                // a one at position i before a zero at position j > i is an inversion
                let mut inversions = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        if word >> i & 1 == 1 && word >> j & 1 == 0 {
                            inversions += 1;
                        }
                    }
                }
                expected[inversions] += 1;
            }
            let g = qbinom(n, m as i64, 1);
            assert_coefficients(&g, &expected, &format!("[{n},{m}]"));
            assert!(g.is_exact());
            assert_eq!(g.max_exp(), Some((m * (n - m)) as i64));
        }
    }
}

#[test]
fn finite_plus_products_count_subset_sums() {
    for n in 0..=10usize {
        let (lhs, rhs) = csq_euler_sides(n);
        let top = n * (n + 1) / 2;
        let mut expected = vec![BigInt::zero(); top + 1];
        for subset in 0u32..(1 << n) {
            let sum: usize = (0..n).filter(|i| subset >> i & 1 == 1).map(|i| i + 1).sum();
            expected[sum] += 1;
        }
        assert_coefficients(&rhs, &expected, &format!("(-q;q)_{n}"));
        assert_coefficients(&lhs, &expected, &format!("q^2-binomial sum, n={n}"));
    }
}

/// `sum over permutations w of sign(w) prod_i x_i^{exps[w(i)]}`.
fn alternant(xs: &[BigRational], exps: &[usize]) -> BigRational {
    let n = xs.len();
    let mut total = BigRational::zero();
    for perm in (0..n).permutations(n) {
        let mut inversions = 0;
        for i in 0..n {
            for j in i + 1..n {
                if perm[i] > perm[j] {
                    inversions += 1;
                }
            }
        }
        let mut term = if inversions % 2 == 0 { BigRational::one() } else { -BigRational::one() };
        for (i, &p) in perm.iter().enumerate() {
            term *= num_traits::pow(xs[i].clone(), exps[p]);
        }
        total += term;
    }
    total
}

fn sample_points(n: usize) -> Vec<Vec<BigRational>> {
    let pool = [rat(2, 3), rat(-5, 2), rat(7, 4), rat(3, 1), rat(-1, 5), rat(4, 7)];
    (0..3).map(|shift| (0..n).map(|i| pool[(i + 2 * shift) % pool.len()].clone()).collect()).collect()
}

#[test]
fn hall_littlewood_at_t_zero_is_schur_bialternant() {
    for n in 1..=4usize {
        for lambda in enumerate(Bounds { max_weight: Some(5), max_length: Some(n), ..Default::default() }).unwrap() {
            let poly = hl_poly(&lambda, n, false);
            for xs in sample_points(n) {
                let top: Vec<usize> = (0..n).map(|j| lambda.part(j + 1) + n - 1 - j).collect();
                let bottom: Vec<usize> = (0..n).map(|j| n - 1 - j).collect();
                let schur = alternant(&xs, &top) / alternant(&xs, &bottom);
                assert_eq!(poly.eval(&xs, &BigRational::zero()), schur, "s_{lambda} in {n} variables");
            }
        }
    }
}

#[test]
fn hall_littlewood_at_t_one_is_monomial_symmetric() {
    for n in 1..=4usize {
        for lambda in enumerate(Bounds { max_weight: Some(5), max_length: Some(n), ..Default::default() }).unwrap() {
            let poly = hl_poly(&lambda, n, false);
            let padded: Vec<usize> = (1..=n).map(|i| lambda.part(i)).collect();
            for xs in sample_points(n) {
                let mut m = BigRational::zero();
                for arrangement in padded.iter().copied().permutations(n).unique() {
                    let mut term = BigRational::one();
                    for (x, &e) in xs.iter().zip(&arrangement) {
                        term *= num_traits::pow(x.clone(), e);
                    }
                    m += term;
                }
                assert_eq!(poly.eval(&xs, &BigRational::one()), m, "m_{lambda} in {n} variables");
            }
        }
    }
}

#[test]
fn columns_are_elementary_symmetric() {
    for n in 1..=4usize {
        for r in 0..=n {
            let col = Partition::column(r);
            let e: QPoly = elementary(n, r);
            assert_eq!(hl_poly(&col, n, false), e, "P_(1^{r}) with t = q");
            assert_eq!(hl_poly(&col, n, true), e, "P_(1^{r}) with t = q^2");
        }
    }
}

#[test]
fn two_row_hall_littlewood_by_hand() {
    // P_(2)(x1, x2; t) = x1^2 + x2^2 + (1 - t) x1 x2
    let p = hl_poly(&Partition::new(vec![2]).unwrap(), 2, false);
    assert_eq!(p.coeff(&[2, 0]), IntSeries::one());
    assert_eq!(p.coeff(&[0, 2]), IntSeries::one());
    assert_eq!(p.coeff(&[1, 1]), IntSeries::polynomial([(0, big(1)), (1, big(-1))]));
    assert_eq!(p.num_terms(), 3);
}

#[test]
fn product_side_in_one_variable() {
    // (1 + q x)/(1 - x) = 1 + sum_{r >= 1} (1 + q) x^r
    let phi = phi_expansion(1, 7);
    assert_eq!(phi.coeff(&[0]), IntSeries::one());
    for r in 1..=7u32 {
        assert_eq!(phi.coeff(&[r]), IntSeries::polynomial([(0, big(1)), (1, big(1))]), "x^{r}");
    }
    assert_eq!(phi.num_terms(), 8);
}
