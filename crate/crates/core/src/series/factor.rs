//! Pochhammer-type products `(c q^s; q^step)_n` and their infinite versions.

use super::{Coefficient, QLaurentSeries, SeriesError};

/// The product over `k >= 0` of `1 + sign * coeff * q^(q_shift + k * step)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesFactor<C> {
    pub sign: i8,
    pub coeff: C,
    pub q_shift: i64,
    pub step: i64,
}

impl<C: Coefficient> SeriesFactor<C> {
    /// `(coeff * q^shift; q^step)`, the usual minus-sign Pochhammer.
    pub fn poch(coeff: C, q_shift: i64, step: i64) -> Self {
        SeriesFactor { sign: -1, coeff, q_shift, step }
    }

    /// `(-coeff * q^shift; q^step)`.
    pub fn poch_plus(coeff: C, q_shift: i64, step: i64) -> Self {
        SeriesFactor { sign: 1, coeff, q_shift, step }
    }

    fn signed_coeff(&self) -> C {
        if self.sign < 0 {
            self.coeff.neg_ref()
        } else {
            self.coeff.clone()
        }
    }

    fn term(&self, k: i64) -> QLaurentSeries<C> {
        let mut f = QLaurentSeries::one();
        f.add_to_coeff(self.q_shift + k * self.step, &self.signed_coeff());
        f
    }

    /// Exact finite product of the first `n` factors. Any integer step is
    /// allowed here, including negative ones as in `(a; q^-1)_n`.
    pub fn pochhammer_finite(&self, n: usize) -> QLaurentSeries<C> {
        let mut acc = QLaurentSeries::one();
        if self.coeff.is_zero() {
            return acc;
        }
        for k in 0..n as i64 {
            acc = acc.mul(&self.term(k));
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    /// The first `n` factors known below `q^order`. Factors whose `q`-exponent
    /// is nonnegative are truncated as they are multiplied in.
    pub fn pochhammer_finite_to(&self, n: usize, order: i64) -> QLaurentSeries<C> {
        if self.coeff.is_zero() {
            return QLaurentSeries::one().truncate(order);
        }
        let lowest = (0..n as i64).map(|k| self.q_shift + k * self.step).min().unwrap_or(0);
        if lowest < 0 {
            return self.pochhammer_finite(n).truncate(order);
        }
        let mut acc = QLaurentSeries::one().truncate(order);
        for k in 0..n as i64 {
            if self.q_shift + k * self.step >= order {
                break;
            }
            acc = acc.mul(&self.term(k)).truncate(order);
        }
        acc
    }

    /// The infinite product known through `q^order` (exclusive).
    pub fn pochhammer_infinite(&self, order: i64) -> Result<QLaurentSeries<C>, SeriesError> {
        if self.step <= 0 {
            return Err(SeriesError::Divergent(self.step));
        }
        Ok(infinite_product(&self.signed_coeff(), self.q_shift, self.step, order))
    }

    /// Reciprocal of the infinite product, known through `q^order`.
    pub fn reciprocal_infinite(&self, order: i64) -> Result<QLaurentSeries<C>, SeriesError> {
        if self.step <= 0 {
            return Err(SeriesError::Divergent(self.step));
        }
        let v = negative_valuation(&self.coeff, self.q_shift, self.step);
        let prod = infinite_product(&self.signed_coeff(), self.q_shift, self.step, order + 2 * v);
        prod.invert_to(order)
    }
}

/// Sum of the exponents `shift + k * step` that are negative, i.e. the
/// valuation of the whole product.
fn negative_valuation<C: Coefficient>(coeff: &C, shift: i64, step: i64) -> i64 {
    if coeff.is_zero() {
        return 0;
    }
    let mut total = 0;
    let mut e = shift;
    while e < 0 {
        total += e;
        e += step;
    }
    total
}

/// `prod_{k >= 0} (1 + c q^(shift + k*step))` through `q^order`, `step >= 1`.
pub fn infinite_product<C: Coefficient>(c: &C, shift: i64, step: i64, order: i64) -> QLaurentSeries<C> {
    assert!(step >= 1);
    if c.is_zero() {
        return QLaurentSeries::one_to(order);
    }
    let mut remaining_neg = negative_valuation(c, shift, step);
    let mut acc = QLaurentSeries::<C>::one();
    let mut k = 0i64;
    loop {
        let e = shift + k * step;
        if e > 0 && acc.min_exp() + e >= order {
            break;
        }
        if e < 0 {
            remaining_neg -= e;
        }
        let cap = order - remaining_neg;
        let mut f = QLaurentSeries::one();
        f.add_to_coeff(e, c);
        acc = acc.mul_trunc(&f, cap);
        if acc.is_zero() && acc.is_exact() {
            return acc;
        }
        if acc.is_zero() {
            // everything cancelled below the cap; later factors cannot help
            break;
        }
        k += 1;
    }
    acc.truncate(order)
}

/// Product of `factors` known through `q^order`, truncating each partial
/// product as early as the remaining factors' valuations allow.
pub fn product_truncated<C: Coefficient>(factors: &[QLaurentSeries<C>], order: i64) -> QLaurentSeries<C> {
    let mut suffix = vec![0i64; factors.len() + 1];
    for i in (0..factors.len()).rev() {
        suffix[i] = suffix[i + 1] + factors[i].min_exp();
    }
    let mut acc = QLaurentSeries::one();
    for (i, f) in factors.iter().enumerate() {
        acc = acc.mul_trunc(f, order - suffix[i + 1]);
        if acc.is_zero() && acc.is_exact() {
            return acc;
        }
    }
    acc.truncate(order)
}
