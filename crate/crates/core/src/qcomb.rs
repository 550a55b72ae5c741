//! q-binomials, the gap-product `(x)_λ`, theta products and the Jacobi
//! triple product in its two summed forms.

use num_bigint::BigInt;
use thiserror::Error;

use crate::partitions::Partition;
use crate::series::{Coefficient, IntSeries, QLaurentSeries, SeriesError, SeriesFactor};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QcombError {
    #[error("triple product needs 0 < x_exp < modulus, got x_exp={0}, modulus={1}")]
    OutOfRange(i64, i64),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

fn one() -> BigInt {
    BigInt::from(1)
}

/// `(q^step; q^step)_n` as an exact polynomial.
pub fn q_factorial(n: usize, step: i64) -> IntSeries {
    SeriesFactor::poch(one(), step, step).pochhammer_finite(n)
}

/// Gaussian binomial `[n, m]` in the variable `q^step`; zero unless `0 <= m <= n`.
pub fn qbinom(n: usize, m: i64, step: i64) -> IntSeries {
    if m < 0 || m as usize > n {
        return IntSeries::zero();
    }
    let m = m as usize;
    let k = m.min(n - m);
    // row[j] holds [i, j] as a dense coefficient vector, built by q-Pascal
    let mut row: Vec<Vec<BigInt>> = vec![vec![one()]];
    for i in 1..=n {
        let mut next: Vec<Vec<BigInt>> = Vec::with_capacity(k.min(i) + 1);
        for j in 0..=k.min(i) {
            // [i, j] = [i-1, j-1] + q^j [i-1, j]
            let mut c: Vec<BigInt> = if j >= 1 { row[j - 1].clone() } else { Vec::new() };
            if j < row.len() {
                let shifted = &row[j];
                if c.len() < shifted.len() + j {
                    c.resize(shifted.len() + j, BigInt::default());
                }
                for (e, v) in shifted.iter().enumerate() {
                    c[e + j] += v;
                }
            }
            next.push(c);
        }
        row = next;
    }
    let dense = &row[k];
    IntSeries::polynomial(dense.iter().enumerate().map(|(e, c)| (e as i64 * step, c.clone())))
}

/// `[n, λ] = (q)_n / ((q)_{n - λ_1} (q)_λ)` in `q^step`; zero if `λ_1 > n`.
pub fn qbinom_partition(n: usize, lambda: &Partition, step: i64) -> IntSeries {
    if lambda.largest() > n {
        return IntSeries::zero();
    }
    let mut acc = qbinom(n, lambda.largest() as i64, step);
    for i in 1..lambda.len() {
        acc = acc.mul(&qbinom(lambda.part(i), lambda.part(i + 1) as i64, step));
    }
    acc
}

/// `(x)_λ`: the product of `(x; q^step)_{gap}` over the gaps `λ_i - λ_{i+1}`,
/// with `x` and the step taken from `factor`.
pub fn pochhammer_partition<C: Coefficient>(factor: &SeriesFactor<C>, lambda: &Partition) -> QLaurentSeries<C> {
    let mut acc = QLaurentSeries::one();
    for g in lambda.gaps() {
        if g > 0 {
            acc = acc.mul(&factor.pochhammer_finite(g));
        }
    }
    acc
}

/// [`pochhammer_partition`] known below `q^order`, for nonnegative exponents.
pub fn pochhammer_partition_to<C: Coefficient>(factor: &SeriesFactor<C>, lambda: &Partition, order: i64) -> QLaurentSeries<C> {
    let mut acc = QLaurentSeries::one().truncate(order);
    for g in lambda.gaps() {
        if g > 0 {
            acc = acc.mul(&factor.pochhammer_finite_to(g, order)).truncate(order);
        }
    }
    acc
}

/// `(±q^x_exp; q^step)_λ` over the integers.
pub fn pochhammer_partition_sym(sign: i8, x_exp: i64, lambda: &Partition, step: i64) -> IntSeries {
    pochhammer_partition(&SeriesFactor { sign, coeff: one(), q_shift: x_exp, step }, lambda)
}

/// A product of infinite Pochhammer symbols divided by others.
#[derive(Clone, Debug, Default)]
pub struct ThetaProduct {
    pub factors: Vec<SeriesFactor<BigInt>>,
    pub divisors: Vec<SeriesFactor<BigInt>>,
}

impl ThetaProduct {
    /// `(q^e1, q^e2, ...; q^modulus)_∞`.
    pub fn theta(exps: &[i64], modulus: i64) -> Self {
        ThetaProduct {
            factors: exps.iter().map(|&e| SeriesFactor::poch(one(), e, modulus)).collect(),
            divisors: Vec::new(),
        }
    }

    pub fn times(mut self, f: SeriesFactor<BigInt>) -> Self {
        self.factors.push(f);
        self
    }

    pub fn over(mut self, f: SeriesFactor<BigInt>) -> Self {
        self.divisors.push(f);
        self
    }

    /// Expansion through `q^order`.
    pub fn evaluate(&self, order: i64) -> Result<IntSeries, SeriesError> {
        let mut parts = Vec::new();
        for f in &self.factors {
            parts.push(f.pochhammer_infinite(order)?);
        }
        for f in &self.divisors {
            parts.push(f.reciprocal_infinite(order)?);
        }
        Ok(crate::series::product_truncated(&parts, order))
    }
}

/// `(q^D, q^x, q^{D-x}; q^D)_∞`, the triple product `J(q^x, q^D)`.
pub fn jacobi_triple_lhs(x_exp: i64, modulus: i64, order: i64) -> Result<IntSeries, QcombError> {
    if !(0 < x_exp && x_exp < modulus) {
        return Err(QcombError::OutOfRange(x_exp, modulus));
    }
    if order <= 0 {
        return Ok(IntSeries::zero_to(order));
    }
    Ok(ThetaProduct::theta(&[modulus, x_exp, modulus - x_exp], modulus).evaluate(order)?)
}

/// The two summed forms of the triple product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TripleForm {
    /// `sum_{r>=0} (-1)^r x^r q^C(r,2) (1 - q^{2r+1} / x^{2r+1})`
    Paired,
    /// `1 + sum_{r>=1} (-1)^r x^r q^C(r,2) (1 + q^r / x^{2r})`
    Symmetric,
}

/// The theta sum at `x = q^x_exp`, `q -> q^modulus`, through `q^order`.
pub fn jacobi_triple_sum(form: TripleForm, x_exp: i64, modulus: i64, order: i64) -> Result<IntSeries, QcombError> {
    if !(0 < x_exp && x_exp < modulus) {
        return Err(QcombError::OutOfRange(x_exp, modulus));
    }
    let (j, d) = (x_exp, modulus);
    let mut terms: Vec<(i64, BigInt)> = Vec::new();
    let start = match form {
        TripleForm::Paired => 0,
        TripleForm::Symmetric => {
            terms.push((0, one()));
            1
        }
    };
    let mut r = start;
    loop {
        let c2 = r * (r - 1) / 2;
        let sign = if r % 2 == 0 { one() } else { -one() };
        let e1 = j * r + d * c2;
        let (e2, s2) = match form {
            TripleForm::Paired => (d * (c2 + 2 * r + 1) - j * (r + 1), -sign.clone()),
            TripleForm::Symmetric => (d * (r * (r + 1) / 2) - j * r, sign.clone()),
        };
        // both exponents increase with r because 0 < j < d
        if e1 >= order && e2 >= order {
            break;
        }
        terms.push((e1, sign));
        terms.push((e2, s2));
        r += 1;
    }
    Ok(IntSeries::from_terms(terms, Some(order)))
}

/// Both sides of `sum_k q^k [n,k]_{q^2} = prod_{k=1}^n (1 + q^k)` as exact polynomials.
pub fn csq_euler_sides(n: usize) -> (IntSeries, IntSeries) {
    let mut lhs = IntSeries::zero();
    for k in 0..=n {
        lhs = lhs.add(&qbinom(n, k as i64, 2).shift(k as i64));
    }
    let rhs = SeriesFactor::poch_plus(one(), 1, 1).pochhammer_finite(n);
    (lhs, rhs)
}

pub fn csq_euler_check(n: usize) -> bool {
    let (l, r) = csq_euler_sides(n);
    l == r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::int_poly;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn gaussian_examples() {
        assert_eq!(qbinom(2, 1, 1), int_poly(&[1, 1]));
        assert_eq!(qbinom(5, 0, 1), IntSeries::one());
        assert_eq!(qbinom(3, 4, 1), IntSeries::zero());
        assert_eq!(qbinom(3, -1, 1), IntSeries::zero());
        // (q)_4 / ((q)_2 (q)_2) by exact division
        let num = q_factorial(4, 1).truncate(20);
        let den = q_factorial(2, 1).mul(&q_factorial(2, 1)).truncate(20);
        let quotient = num.mul(&den.invert().unwrap()).truncate(20);
        assert_eq!(quotient, qbinom(4, 2, 1).truncate(20));
        assert_eq!(qbinom(4, 2, 1), int_poly(&[1, 1, 2, 1, 1]));
        assert_eq!(qbinom(2, 1, 2), int_poly(&[1, 0, 1]));
    }

    #[test]
    fn partition_binomials() {
        assert_eq!(qbinom_partition(3, &p(&[2]), 1), int_poly(&[1, 1, 1]));
        assert_eq!(qbinom_partition(2, &p(&[3, 1]), 1), IntSeries::zero());
        assert_eq!(qbinom_partition(2, &p(&[2, 1]), 1), int_poly(&[1, 1]));
        assert_eq!(qbinom_partition(4, &Partition::empty(), 1), IntSeries::one());
    }

    #[test]
    fn gap_products() {
        assert_eq!(pochhammer_partition_sym(1, 1, &Partition::empty(), 1), IntSeries::one());
        // (-q)_(2,2) = (-q)_0 (-q)_2
        assert_eq!(pochhammer_partition_sym(1, 1, &p(&[2, 2]), 1), int_poly(&[1, 1, 1, 1]));
        let expected = q_factorial(2, 1).mul(&q_factorial(1, 1));
        assert_eq!(pochhammer_partition_sym(-1, 1, &p(&[3, 1]), 1), expected);
    }

    #[test]
    fn triple_product_forms() {
        for d in 2..=6 {
            for j in 1..d {
                let prod = jacobi_triple_lhs(j, d, 30).unwrap();
                assert_eq!(jacobi_triple_sum(TripleForm::Paired, j, d, 30).unwrap(), prod, "paired j={j} d={d}");
                assert_eq!(jacobi_triple_sum(TripleForm::Symmetric, j, d, 30).unwrap(), prod, "symmetric j={j} d={d}");
            }
        }
        assert!(jacobi_triple_lhs(0, 3, 10).is_err());
        assert!(jacobi_triple_lhs(3, 3, 10).is_err());
        assert!(jacobi_triple_lhs(1, 3, 0).unwrap().is_zero());
    }

    #[test]
    fn csq_euler_small() {
        assert!(csq_euler_check(0));
        assert_eq!(csq_euler_sides(2).0, int_poly(&[1, 1, 1, 1]));
        assert!(csq_euler_check(10));
    }
}
