//! Power series in `z`, truncated below `z^z_order`, whose coefficients are
//! truncated Laurent series in `q`.

use crate::series::{Coefficient, QLaurentSeries};

#[derive(Clone, Debug, PartialEq)]
pub struct Bivariate<C> {
    coeffs: Vec<QLaurentSeries<C>>,
}

impl<C: Coefficient> Bivariate<C> {
    /// Exact zero in every coefficient.
    pub fn zero(z_order: usize) -> Self {
        Bivariate { coeffs: vec![QLaurentSeries::zero(); z_order] }
    }

    pub fn one(z_order: usize) -> Self {
        Self::monomial(z_order, 0, QLaurentSeries::one())
    }

    /// `z^m * s`.
    pub fn monomial(z_order: usize, m: usize, s: QLaurentSeries<C>) -> Self {
        let mut out = Self::zero(z_order);
        if m < z_order {
            out.coeffs[m] = s;
        }
        out
    }

    pub fn from_coeffs(coeffs: Vec<QLaurentSeries<C>>) -> Self {
        Bivariate { coeffs }
    }

    pub fn z_order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, m: usize) -> &QLaurentSeries<C> {
        &self.coeffs[m]
    }

    pub fn coeffs(&self) -> &[QLaurentSeries<C>] {
        &self.coeffs
    }

    pub fn add_to_coeff(&mut self, m: usize, e: i64, delta: &C) {
        if m < self.coeffs.len() {
            self.coeffs[m].add_to_coeff(e, delta);
        }
    }

    /// The smallest `q`-order over all coefficients; `None` if all are exact.
    pub fn min_order(&self) -> Option<i64> {
        self.coeffs.iter().filter_map(|c| c.order()).min()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.z_order().min(other.z_order());
        Bivariate { coeffs: (0..n).map(|m| self.coeffs[m].add(&other.coeffs[m])).collect() }
    }

    pub fn neg(&self) -> Self {
        Bivariate { coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.z_order().min(other.z_order());
        let mut coeffs = Vec::with_capacity(n);
        for m in 0..n {
            let mut acc = QLaurentSeries::zero();
            for i in 0..=m {
                let (a, b) = (&self.coeffs[i], &other.coeffs[m - i]);
                if (a.is_exact() && a.is_zero()) || (b.is_exact() && b.is_zero()) {
                    continue;
                }
                acc = acc.add(&a.mul(b));
            }
            coeffs.push(acc);
        }
        Bivariate { coeffs }
    }

    /// Multiplies every coefficient by the `q`-series `s`.
    pub fn scale(&self, s: &QLaurentSeries<C>) -> Self {
        Bivariate { coeffs: self.coeffs.iter().map(|c| c.mul(s)).collect() }
    }

    /// Multiplication by `z^k`.
    pub fn shift_z(&self, k: usize) -> Self {
        let n = self.z_order();
        let mut coeffs = vec![QLaurentSeries::zero(); n.min(k)];
        coeffs.extend(self.coeffs.iter().take(n.saturating_sub(k)).cloned());
        Bivariate { coeffs }
    }

    /// The substitution `z -> z q^t`.
    pub fn twist(&self, t: i64) -> Self {
        Bivariate { coeffs: self.coeffs.iter().enumerate().map(|(m, c)| c.shift(t * m as i64)).collect() }
    }

    pub fn truncate_q(&self, order: i64) -> Self {
        Bivariate { coeffs: self.coeffs.iter().map(|c| c.truncate(order)).collect() }
    }

    pub fn map_coeffs<D: Coefficient, F: Fn(&C) -> D>(&self, f: F) -> Bivariate<D> {
        Bivariate { coeffs: self.coeffs.iter().map(|c| c.map_coeffs(&f)).collect() }
    }
}

/// One factor `1 - x z^e q^s` with `x` a ring element.
fn linear_factor<C: Coefficient>(z_order: usize, x: &C, z_exp: usize, q_exp: i64) -> Bivariate<C> {
    let mut out = Bivariate::one(z_order);
    if z_exp < z_order {
        out.coeffs[z_exp] = QLaurentSeries::monomial(x.neg_ref(), q_exp);
    }
    out
}

/// `1 / (1 - x z^e q^s)` as a geometric series in `z`, exact in `q`.
fn geometric_factor<C: Coefficient>(z_order: usize, x: &C, z_exp: usize, q_exp: i64) -> Bivariate<C> {
    assert!(z_exp >= 1, "a geometric factor needs a positive z-power");
    let mut out = Bivariate::zero(z_order);
    let mut power = C::one();
    let mut j = 0usize;
    while j * z_exp < z_order {
        out.coeffs[j * z_exp] = QLaurentSeries::monomial(power.clone(), q_exp * j as i64);
        power = power.mul_ref(x);
        j += 1;
    }
    out
}

/// `(x z^e q^s; q^d)_n = prod_{j<n} (1 - x z^e q^{s + j d})`, exact in `q`.
pub fn z_poch_finite<C: Coefficient>(z_order: usize, x: &C, z_exp: usize, shift: i64, step: i64, n: usize) -> Bivariate<C> {
    let mut acc = Bivariate::one(z_order);
    for j in 0..n as i64 {
        acc = acc.mul(&linear_factor(z_order, x, z_exp, shift + j * step));
    }
    acc
}

/// `1 / (x z^e q^s; q^d)_n`, exact in `q`.
pub fn z_poch_finite_recip<C: Coefficient>(
    z_order: usize,
    x: &C,
    z_exp: usize,
    shift: i64,
    step: i64,
    n: usize,
) -> Bivariate<C> {
    let mut acc = Bivariate::one(z_order);
    for j in 0..n as i64 {
        acc = acc.mul(&geometric_factor(z_order, x, z_exp, shift + j * step));
    }
    acc
}

/// `(x z^e q^s; q^d)_∞` (or its reciprocal) with every `z`-coefficient
/// known through `q^order`.
///
/// Only the factors `j < K` are multiplied out. A term of `z^{e t}` that
/// involves an omitted factor has `q`-exponent at least
/// `t s + d ((t-1)(t-2)/2 + max(K, t-1))` for the product, and `t s + d K`
/// for the reciprocal; `K` is the least value pushing these past `order`.
pub fn z_poch_infinite<C: Coefficient>(
    z_order: usize,
    x: &C,
    z_exp: usize,
    shift: i64,
    step: i64,
    reciprocal: bool,
    order: i64,
) -> Bivariate<C> {
    assert!(z_exp >= 1 && step >= 1);
    if x.is_zero() {
        return Bivariate::one(z_order);
    }
    let max_t = (z_order.saturating_sub(1) / z_exp) as i64;
    let omitted_floor = |t: i64, kk: i64| -> i64 {
        if reciprocal {
            t * shift + step * kk
        } else {
            t * shift + step * ((t - 1) * (t - 2) / 2 + kk.max(t - 1))
        }
    };
    let mut kk = 0i64;
    while (1..=max_t).any(|t| omitted_floor(t, kk) < order) {
        kk += 1;
    }
    let mut acc = if reciprocal {
        z_poch_finite_recip(z_order, x, z_exp, shift, step, kk as usize)
    } else {
        z_poch_finite(z_order, x, z_exp, shift, step, kk as usize)
    };
    for t in 1..=max_t {
        let m = t as usize * z_exp;
        acc.coeffs[m] = acc.coeffs[m].truncate(omitted_floor(t, kk));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{IntSeries, SeriesFactor};
    use num_bigint::BigInt;

    fn one() -> BigInt {
        BigInt::from(1)
    }

    #[test]
    fn product_matches_z_free_specialisation() {
        // (z; q)_∞ times 1/(z; q)_∞ is one
        let p = z_poch_infinite(6, &one(), 1, 0, 1, false, 20);
        let r = z_poch_infinite(6, &one(), 1, 0, 1, true, 20);
        let prod = p.mul(&r);
        assert_eq!(prod.coeff(0).truncate(20), IntSeries::one().truncate(20));
        for m in 1..6 {
            assert!(prod.coeff(m).truncate(20).is_zero(), "m={m}");
        }
    }

    #[test]
    fn coefficients_follow_the_euler_expansion() {
        // [z^m] (z; q)_∞ = (-1)^m q^C(m,2) / (q)_m
        let p = z_poch_infinite(5, &one(), 1, 0, 1, false, 25);
        for m in 0..5usize {
            let sign = if m % 2 == 0 { 1 } else { -1 };
            let expected = SeriesFactor::poch(one(), 1, 1)
                .pochhammer_finite(m)
                .invert_to(25)
                .unwrap()
                .shift((m * m.saturating_sub(1) / 2) as i64)
                .scale(&BigInt::from(sign))
                .truncate(25);
            assert_eq!(p.coeff(m).truncate(25), expected, "m={m}");
        }
    }

    #[test]
    fn negative_shift_windows() {
        // 1/(z^2 q^-2; q^2)_∞: [z^{2t}] = q^{-2t} / (q^2;q^2)_t
        let r = z_poch_infinite(7, &one(), 2, -2, 2, true, 15);
        for t in 0..=3usize {
            let c = r.coeff(2 * t);
            assert!(c.is_known(14), "t={t} order {:?}", c.order());
            let expected = SeriesFactor::poch(one(), 2, 2)
                .pochhammer_finite(t)
                .invert_to(15 + 2 * t as i64)
                .unwrap()
                .shift(-2 * t as i64)
                .truncate(15);
            assert_eq!(c.truncate(15), expected);
        }
        assert!(r.coeff(1).truncate(15).is_zero());
    }

    #[test]
    fn shifts_and_twists() {
        let b: Bivariate<BigInt> = Bivariate::monomial(4, 1, IntSeries::one());
        let s = b.shift_z(2);
        assert_eq!(s.coeff(3), &IntSeries::one());
        assert!(b.shift_z(3).coeff(3).is_zero());
        assert_eq!(s.twist(2).coeff(3), &IntSeries::monomial(one(), 6));
    }
}
