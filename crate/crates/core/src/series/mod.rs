//! Truncated Laurent series in one variable `q` with exact coefficients.
//!
//! A series stores every coefficient below its `order` exactly. An exact
//! polynomial has no order at all (`order() == None`). Binary operations
//! never widen the reliable window: a product's order is
//! `min(o1 + v2, o2 + v1)` where `v` is the valuation of each operand.

mod coeff;
mod factor;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use thiserror::Error;

pub use coeff::{ABPoly, AbExp, Coefficient};
pub use factor::{infinite_product, product_truncated, SeriesFactor};

/// Series with integer coefficients.
pub type IntSeries = QLaurentSeries<BigInt>;
/// Series whose coefficients are polynomials in the formal symbols `a`, `b`.
pub type AbSeries = QLaurentSeries<ABPoly>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("lowest coefficient {0} is not a unit")]
    NotInvertible(String),
    #[error("cannot invert the zero series")]
    ZeroInverse,
    #[error("inverse of an exact polynomial needs an explicit order")]
    UnboundedInverse,
    #[error("infinite product with step {0} does not converge")]
    Divergent(i64),
}

/// Minimum of two optional truncation orders, `None` meaning unbounded.
pub(crate) fn min_order(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct QLaurentSeries<C> {
    coeffs: BTreeMap<i64, C>,
    order: Option<i64>,
}

impl<C: Coefficient> QLaurentSeries<C> {
    /// The zero series known through `order` (exclusive).
    pub fn zero_to(order: i64) -> Self {
        QLaurentSeries { coeffs: BTreeMap::new(), order: Some(order) }
    }

    /// The exact zero polynomial.
    pub fn zero() -> Self {
        QLaurentSeries { coeffs: BTreeMap::new(), order: None }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^e` as an exact polynomial.
    pub fn monomial(c: C, e: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        QLaurentSeries { coeffs, order: None }
    }

    /// `1 + O(q^order)`: the unit element known only through `order`.
    pub fn one_to(order: i64) -> Self {
        Self::one().truncate(order)
    }

    /// Builds a series from `(exponent, coefficient)` terms; repeated
    /// exponents are summed and terms at or beyond `order` dropped.
    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(terms: I, order: Option<i64>) -> Self {
        let mut coeffs: BTreeMap<i64, C> = BTreeMap::new();
        for (e, c) in terms {
            if order.is_some_and(|o| e >= o) {
                continue;
            }
            match coeffs.get_mut(&e) {
                Some(existing) => existing.add_assign_ref(&c),
                None => {
                    coeffs.insert(e, c);
                }
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        QLaurentSeries { coeffs, order }
    }

    pub fn polynomial<I: IntoIterator<Item = (i64, C)>>(terms: I) -> Self {
        Self::from_terms(terms, None)
    }

    pub fn order(&self) -> Option<i64> {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order.is_none()
    }

    /// True when every coefficient is zero (within the window).
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Lowest exponent that may be nonzero: the valuation, or the order
    /// when no term is known.
    pub fn min_exp(&self) -> i64 {
        self.valuation().or(self.order).unwrap_or(0)
    }

    /// Highest stored exponent.
    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Coefficient of `q^e` (zero when absent).
    pub fn coeff(&self, e: i64) -> C {
        self.coeffs.get(&e).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &C)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Whether `q^e` lies inside the reliable window.
    pub fn is_known(&self, e: i64) -> bool {
        self.order.is_none_or(|o| e < o)
    }

    /// Restricts the window to exponents below `order`.
    pub fn truncate(&self, order: i64) -> Self {
        let new_order = min_order(self.order, Some(order));
        let o = new_order.expect("finite");
        QLaurentSeries {
            coeffs: self.coeffs.range(..o).map(|(e, c)| (*e, c.clone())).collect(),
            order: new_order,
        }
    }

    /// Adds `delta` to the coefficient of `q^e`.
    pub fn add_to_coeff(&mut self, e: i64, delta: &C) {
        if !self.is_known(e) {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert_with(C::zero);
        entry.add_assign_ref(delta);
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = min_order(self.order, other.order);
        let mut out = self.truncate_opt(order);
        for (e, c) in other.coeffs.iter() {
            if order.is_some_and(|o| *e >= o) {
                break;
            }
            match out.coeffs.get_mut(e) {
                Some(existing) => {
                    existing.add_assign_ref(c);
                    if existing.is_zero() {
                        out.coeffs.remove(e);
                    }
                }
                None => {
                    out.coeffs.insert(*e, c.clone());
                }
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        QLaurentSeries {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c.neg_ref())).collect(),
            order: self.order,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Multiplies every coefficient by the ring element `c`.
    pub fn scale(&self, c: &C) -> Self {
        QLaurentSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, x)| (*e, x.mul_ref(c)))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
            order: self.order,
        }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        QLaurentSeries {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
            order: self.order.map(|o| o + k),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_capped(other, None)
    }

    /// Product restricted to exponents below `cap`; the result's order is
    /// the smaller of `cap` and the natural product order.
    pub fn mul_trunc(&self, other: &Self, cap: i64) -> Self {
        self.mul_capped(other, Some(cap))
    }

    fn mul_capped(&self, other: &Self, cap: Option<i64>) -> Self {
        let natural = match (self.order, other.order) {
            (None, None) => None,
            _ => {
                // an empty operand with finite order still bounds the product
                let v1 = self.min_exp();
                let v2 = other.min_exp();
                let mut o = None;
                if let Some(o1) = self.order {
                    if !(other.is_exact() && other.is_zero()) {
                        o = min_order(o, Some(o1 + v2));
                    }
                }
                if let Some(o2) = other.order {
                    if !(self.is_exact() && self.is_zero()) {
                        o = min_order(o, Some(o2 + v1));
                    }
                }
                o
            }
        };
        let order = min_order(natural, cap);
        if self.is_zero() || other.is_zero() {
            return QLaurentSeries { coeffs: BTreeMap::new(), order };
        }
        let lo = self.min_exp() + other.min_exp();
        let hi = {
            let top = self.max_exp().unwrap() + other.max_exp().unwrap() + 1;
            match order {
                Some(o) => top.min(o),
                None => top,
            }
        };
        if hi <= lo {
            return QLaurentSeries { coeffs: BTreeMap::new(), order };
        }
        let mut acc: Vec<C> = vec![C::zero(); (hi - lo) as usize];
        let v2 = other.min_exp();
        for (e1, c1) in self.coeffs.iter() {
            if e1 + v2 >= hi {
                break;
            }
            for (e2, c2) in other.coeffs.iter() {
                let e = e1 + e2;
                if e >= hi {
                    break;
                }
                acc[(e - lo) as usize].mul_add_assign(c1, c2);
            }
        }
        let coeffs = acc
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (lo + i as i64, c))
            .collect();
        QLaurentSeries { coeffs, order }
    }

    /// Two-sided inverse through the series' own window.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        match self.order {
            Some(_) => self.invert_impl(None),
            None => Err(SeriesError::UnboundedInverse),
        }
    }

    /// Inverse computed through exponent `order` (exclusive), or through
    /// the natural window if that is smaller.
    pub fn invert_to(&self, order: i64) -> Result<Self, SeriesError> {
        self.invert_impl(Some(order))
    }

    fn invert_impl(&self, target: Option<i64>) -> Result<Self, SeriesError> {
        let v = self.valuation().ok_or(SeriesError::ZeroInverse)?;
        let lead = self.coeff(v);
        let lead_inv = lead.unit_inverse().ok_or_else(|| SeriesError::NotInvertible(lead.to_string()))?;
        // result = q^{-v} * w, w known for relative exponents below `rel`
        let natural = self.order.map(|o| o - v);
        let wanted = target.map(|t| t + v);
        let rel = min_order(natural, wanted).ok_or(SeriesError::UnboundedInverse)?;
        let rel = rel.max(0);
        let unit: Vec<(i64, &C)> = self.coeffs.iter().skip(1).map(|(e, c)| (e - v, c)).collect();
        let mut w: Vec<C> = Vec::with_capacity(rel as usize);
        let neg_lead_inv = lead_inv.neg_ref();
        for n in 0..rel {
            if n == 0 {
                w.push(lead_inv.clone());
                continue;
            }
            let mut s = C::zero();
            for (j, uj) in unit.iter() {
                if *j > n {
                    break;
                }
                let prev = &w[(n - j) as usize];
                if !prev.is_zero() {
                    s.mul_add_assign(uj, prev);
                }
            }
            w.push(s.mul_ref(&neg_lead_inv));
        }
        let coeffs = w
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64 - v, c))
            .collect();
        Ok(QLaurentSeries { coeffs, order: Some(rel - v) })
    }

    /// Substitutes `q -> q^m`.
    pub fn substitute_q_power(&self, m: i64) -> Self {
        assert!(m >= 1, "substitution power must be positive");
        QLaurentSeries {
            coeffs: self.coeffs.iter().map(|(e, c)| (e * m, c.clone())).collect(),
            order: self.order.map(|o| o * m),
        }
    }

    /// Applies a ring map to every coefficient.
    pub fn map_coeffs<D: Coefficient, F: Fn(&C) -> D>(&self, f: F) -> QLaurentSeries<D> {
        QLaurentSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (*e, f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
            order: self.order,
        }
    }

    /// Canonical `(exponent, coefficient-string)` pairs in ascending order.
    pub fn to_pairs(&self) -> Vec<(i64, String)> {
        self.coeffs.iter().map(|(e, c)| (*e, c.to_string())).collect()
    }

    fn truncate_opt(&self, order: Option<i64>) -> Self {
        match order {
            Some(o) => self.truncate(o),
            None => self.clone(),
        }
    }
}

impl QLaurentSeries<ABPoly> {
    /// Embeds an integer series.
    pub fn from_int(s: &IntSeries) -> Self {
        s.map_coeffs(|c| ABPoly::constant(c.clone()))
    }

    /// Applies the extraction operator `[b^i]`.
    pub fn b_coefficient(&self, i: u32) -> Self {
        self.map_coeffs(|c| c.b_coefficient(i))
    }

    /// Converts to an integer series when no formal symbol remains.
    pub fn to_int(&self) -> Option<IntSeries> {
        let mut coeffs = BTreeMap::new();
        for (e, c) in self.coeffs.iter() {
            coeffs.insert(*e, c.as_constant()?);
        }
        Some(QLaurentSeries { coeffs, order: self.order })
    }
}

impl IntSeries {
    /// Embeds an integer series into another coefficient ring.
    pub fn lift<C: Coefficient>(&self) -> QLaurentSeries<C> {
        self.map_coeffs(C::from_bigint)
    }
}

impl<C: Coefficient> Coefficient for QLaurentSeries<C> {
    fn zero() -> Self {
        QLaurentSeries::zero()
    }
    fn one() -> Self {
        QLaurentSeries::one()
    }
    fn from_i64(v: i64) -> Self {
        QLaurentSeries::constant(C::from_i64(v))
    }
    fn from_bigint(v: &BigInt) -> Self {
        QLaurentSeries::constant(C::from_bigint(v))
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add_ref(&self, other: &Self) -> Self {
        QLaurentSeries::add(self, other)
    }
    fn neg_ref(&self) -> Self {
        QLaurentSeries::neg(self)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        QLaurentSeries::mul(self, other)
    }
    fn unit_inverse(&self) -> Option<Self> {
        if !self.is_exact() || self.coeffs.len() != 1 {
            return None;
        }
        let (e, c) = self.coeffs.iter().next()?;
        Some(QLaurentSeries::monomial(c.unit_inverse()?, -e))
    }
    fn is_compound(&self) -> bool {
        self.coeffs.len() > 1 || self.order.is_some()
    }
}

impl<C: Coefficient> fmt::Display for QLaurentSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.coeffs.iter() {
            let rendered = c.to_string();
            let (neg, mag) = match rendered.strip_prefix('-') {
                Some(rest) if !c.is_compound() => (true, rest.to_string()),
                _ => (false, rendered),
            };
            let mag = if c.is_compound() { format!("({mag})") } else { mag };
            let body = match (*e, mag.as_str()) {
                (0, _) => mag.clone(),
                (1, "1") => "q".to_string(),
                (_, "1") => format!("q^{e}"),
                (1, _) => format!("{mag}*q"),
                _ => format!("{mag}*q^{e}"),
            };
            match (first, neg) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        if let Some(o) = self.order {
            write!(f, " + O(q^{o})")?;
        }
        Ok(())
    }
}

impl<C: Coefficient> Add for &QLaurentSeries<C> {
    type Output = QLaurentSeries<C>;
    fn add(self, rhs: Self) -> QLaurentSeries<C> {
        QLaurentSeries::add(self, rhs)
    }
}

impl<C: Coefficient> Sub for &QLaurentSeries<C> {
    type Output = QLaurentSeries<C>;
    fn sub(self, rhs: Self) -> QLaurentSeries<C> {
        QLaurentSeries::sub(self, rhs)
    }
}

impl<C: Coefficient> Mul for &QLaurentSeries<C> {
    type Output = QLaurentSeries<C>;
    fn mul(self, rhs: Self) -> QLaurentSeries<C> {
        QLaurentSeries::mul(self, rhs)
    }
}

impl<C: Coefficient> Neg for &QLaurentSeries<C> {
    type Output = QLaurentSeries<C>;
    fn neg(self) -> QLaurentSeries<C> {
        QLaurentSeries::neg(self)
    }
}

/// Integer polynomial from a dense coefficient list starting at `q^0`.
pub fn int_poly(coeffs: &[i64]) -> IntSeries {
    IntSeries::polynomial(coeffs.iter().enumerate().map(|(i, c)| (i as i64, BigInt::from(*c))))
}

/// Integer series from a dense coefficient list starting at `q^0`, known through `coeffs.len()`.
pub fn int_series(coeffs: &[i64]) -> IntSeries {
    IntSeries::from_terms(
        coeffs.iter().enumerate().map(|(i, c)| (i as i64, BigInt::from(*c))),
        Some(coeffs.len() as i64),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geometric(order: i64) -> IntSeries {
        IntSeries::from_terms((0..order).map(|e| (e, BigInt::from(1))), Some(order))
    }

    fn dense(s: &IntSeries, lo: i64, hi: i64) -> Vec<i64> {
        (lo..hi).map(|e| i64::try_from(s.coeff(e)).unwrap()).collect()
    }

    #[test]
    fn add_cancels() {
        let s = &int_poly(&[1, 1]) + &int_poly(&[1, -1]);
        assert_eq!(s, int_poly(&[2]));
        assert_eq!(&s + &IntSeries::zero(), s);
    }

    #[test]
    fn add_laurent_merge() {
        let s = IntSeries::polynomial([(-1, BigInt::from(1)), (0, BigInt::from(1))]);
        let t = &s + &IntSeries::one();
        assert_eq!(t.min_exp(), -1);
        assert_eq!(t.to_string(), "q^-1 + 2");
    }

    #[test]
    fn add_takes_smaller_window() {
        let s = &geometric(5) + &geometric(8);
        assert_eq!(s.order(), Some(5));
        assert_eq!(dense(&s, 0, 5), vec![2; 5]);
    }

    #[test]
    fn mul_examples() {
        let t = &int_poly(&[1, -1]) * &geometric(12);
        assert_eq!(t.order(), Some(12));
        assert_eq!(t, IntSeries::one_to(12));

        let p = &int_poly(&[1, -1]) * &int_poly(&[1, 0, -1]);
        assert_eq!(p, int_poly(&[1, -1, -1, 1]));

        let inv_q = IntSeries::monomial(BigInt::from(1), -1);
        let q = IntSeries::monomial(BigInt::from(1), 1);
        assert_eq!(&inv_q * &q, IntSeries::one());
    }

    #[test]
    fn mul_window_rule_with_valuation() {
        // (q^3 + O(q^10)) * (1 + q + O(q^5)) is known through min(10 + 0, 5 + 3)
        let a = IntSeries::from_terms([(3, BigInt::from(1))], Some(10));
        let b = IntSeries::from_terms([(0, BigInt::from(1)), (1, BigInt::from(1))], Some(5));
        assert_eq!((&a * &b).order(), Some(8));
        // negative valuation shrinks the window
        let c = IntSeries::from_terms([(-2, BigInt::from(1))], Some(10));
        assert_eq!((&c * &b).order(), Some(3));
        // empty series with finite order
        let z = IntSeries::zero_to(4);
        assert_eq!((&z * &a).order(), Some(7));
    }

    #[test]
    fn invert_examples() {
        let inv = int_poly(&[1, -1]).truncate(10).invert().unwrap();
        assert_eq!(inv, geometric(10));
        assert_eq!(IntSeries::one().truncate(5).invert().unwrap(), IntSeries::one_to(5));
        assert_eq!(int_poly(&[1, -1]).invert(), Err(SeriesError::UnboundedInverse));
        assert!(matches!(int_poly(&[2, 1]).invert_to(5), Err(SeriesError::NotInvertible(_))));
        assert_eq!(IntSeries::zero_to(3).invert(), Err(SeriesError::ZeroInverse));
    }

    #[test]
    fn invert_laurent_window() {
        // q^-1 (1 - q) has inverse q / (1 - q); with input known through q^5 the
        // inverse is known through q^7
        let s = IntSeries::from_terms([(-1, BigInt::from(1)), (0, BigInt::from(-1))], Some(5));
        let inv = s.invert().unwrap();
        assert_eq!(inv.order(), Some(7));
        assert_eq!(dense(&inv, 0, 7), vec![0, 1, 1, 1, 1, 1, 1]);
        assert_eq!(&s * &inv, IntSeries::one_to(6));
    }

    #[test]
    fn substitute_examples() {
        assert_eq!(int_poly(&[1, 1]).substitute_q_power(2), int_poly(&[1, 0, 1]));
        let s = int_poly(&[1, -1, 0, 1]);
        assert_eq!(s.substitute_q_power(1), s);
        assert_eq!(s.substitute_q_power(2), int_poly(&[1, 0, -1, 0, 0, 0, 1]));
        assert_eq!(geometric(4).substitute_q_power(3).order(), Some(12));
    }

    #[test]
    fn display_forms() {
        assert_eq!(int_poly(&[1, -1, 0, 2]).to_string(), "1 - q + 2*q^3");
        assert_eq!(IntSeries::zero_to(3).to_string(), "0 + O(q^3)");
        let ab = AbSeries::polynomial([(0, ABPoly::one().sub_ref(&ABPoly::a())), (2, ABPoly::b())]);
        assert_eq!(ab.to_string(), "(1 - a) + b*q^2");
        let ab2 = AbSeries::polynomial([(1, ABPoly::one().sub_ref(&ABPoly::a()))]);
        assert_eq!(ab2.to_string(), "(1 - a)*q");
        assert_eq!(ab2.to_pairs(), vec![(1, "1 - a".to_string())]);
    }

    #[test]
    fn b_extraction() {
        let s = AbSeries::polynomial([(0, ABPoly::one().add_ref(&ABPoly::b())), (1, ABPoly::a().mul_ref(&ABPoly::b()))]);
        assert_eq!(s.b_coefficient(0), AbSeries::one());
        assert_eq!(s.b_coefficient(1).to_string(), "1 + a*q");
        assert_eq!(s.b_coefficient(0).to_int(), Some(IntSeries::one()));
        assert_eq!(s.b_coefficient(1).to_int(), None);
    }
}
