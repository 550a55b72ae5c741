//! Exact coefficient rings for truncated q-series.
//!
//! Three rings are used: unbounded integers for the hot path, rationals for
//! evaluation at points, and sparse bivariate polynomials in two formal
//! symbols `a` and `b` over the integers.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A commutative ring with exact arithmetic.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_bigint(v: &BigInt) -> Self;
    fn is_zero(&self) -> bool;

    fn add_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;

    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.add_ref(other);
    }

    /// `self += a * b`
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        self.add_assign_ref(&a.mul_ref(b));
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Multiplicative inverse when `self` is a unit of the ring.
    fn unit_inverse(&self) -> Option<Self>;

    /// True when the printed form needs parentheses as a multiplier.
    fn is_compound(&self) -> bool {
        false
    }
}

impl Coefficient for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn from_bigint(v: &BigInt) -> Self {
        v.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
    fn unit_inverse(&self) -> Option<Self> {
        if One::is_one(&self.abs()) {
            Some(self.clone())
        } else {
            None
        }
    }
}

impl Coefficient for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn unit_inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn is_compound(&self) -> bool {
        !One::is_one(self.denom())
    }
}

/// Exponent pair `(deg_a, deg_b)`.
pub type AbExp = (u32, u32);

/// Polynomial in the formal symbols `a`, `b` with integer coefficients.
///
/// Terms are kept sorted by `(deg_a, deg_b)` with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ABPoly {
    terms: Vec<(AbExp, BigInt)>,
}

impl ABPoly {
    pub fn constant(c: BigInt) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(deg_a: u32, deg_b: u32, c: BigInt) -> Self {
        if Zero::is_zero(&c) {
            Self::default()
        } else {
            ABPoly { terms: vec![((deg_a, deg_b), c)] }
        }
    }

    pub fn a() -> Self {
        Self::monomial(1, 0, BigInt::from(1))
    }

    pub fn b() -> Self {
        Self::monomial(0, 1, BigInt::from(1))
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms<I: IntoIterator<Item = (AbExp, BigInt)>>(terms: I) -> Self {
        let mut map = std::collections::BTreeMap::<AbExp, BigInt>::new();
        for (e, c) in terms {
            *map.entry(e).or_default() += c;
        }
        ABPoly { terms: map.into_iter().filter(|(_, c)| !Zero::is_zero(c)).collect() }
    }

    pub fn terms(&self) -> &[(AbExp, BigInt)] {
        &self.terms
    }

    pub fn coeff(&self, deg_a: u32, deg_b: u32) -> BigInt {
        self.terms
            .binary_search_by(|(e, _)| e.cmp(&(deg_a, deg_b)))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    pub fn degree_a(&self) -> u32 {
        self.terms.iter().map(|((da, _), _)| *da).max().unwrap_or(0)
    }

    pub fn degree_b(&self) -> u32 {
        self.terms.iter().map(|((_, db), _)| *db).max().unwrap_or(0)
    }

    /// The coefficient of `b^i`, as a polynomial in `a` alone.
    pub fn b_coefficient(&self, i: u32) -> ABPoly {
        ABPoly {
            terms: self
                .terms
                .iter()
                .filter(|((_, db), _)| *db == i)
                .map(|((da, _), c)| ((*da, 0), c.clone()))
                .collect(),
        }
    }

    /// The integer value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::default()),
            [((0, 0), c)] => Some(c.clone()),
            _ => None,
        }
    }

    /// Drops every term with `deg_a > cap_a` or `deg_b > cap_b`.
    pub fn truncate_degrees(&self, cap_a: u32, cap_b: u32) -> ABPoly {
        ABPoly {
            terms: self
                .terms
                .iter()
                .filter(|((da, db), _)| *da <= cap_a && *db <= cap_b)
                .cloned()
                .collect(),
        }
    }
}

impl Coefficient for ABPoly {
    fn zero() -> Self {
        ABPoly::default()
    }
    fn one() -> Self {
        ABPoly::constant(BigInt::from(1))
    }
    fn from_i64(v: i64) -> Self {
        ABPoly::constant(BigInt::from(v))
    }
    fn from_bigint(v: &BigInt) -> Self {
        ABPoly::constant(v.clone())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_ref(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &other.terms[j];
            match ea.cmp(eb) {
                std::cmp::Ordering::Less => {
                    out.push((*ea, ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((*eb, cb.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = ca + cb;
                    if !Zero::is_zero(&s) {
                        out.push((*ea, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().cloned());
        ABPoly { terms: out }
    }

    fn neg_ref(&self) -> Self {
        ABPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.terms.is_empty() || other.terms.is_empty() {
            return ABPoly::default();
        }
        if let [((0, 0), c)] = self.terms.as_slice() {
            return ABPoly { terms: other.terms.iter().map(|(e, d)| (*e, c * d)).collect() };
        }
        if let [((0, 0), c)] = other.terms.as_slice() {
            return ABPoly { terms: self.terms.iter().map(|(e, d)| (*e, d * c)).collect() };
        }
        // dense accumulation over the (deg_a, deg_b) box
        let width = (self.degree_b() + other.degree_b() + 1) as usize;
        let height = (self.degree_a() + other.degree_a() + 1) as usize;
        let mut acc = vec![BigInt::default(); width * height];
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                let idx = (a1 + a2) as usize * width + (b1 + b2) as usize;
                acc[idx] += c1 * c2;
            }
        }
        let terms = acc
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !Zero::is_zero(c))
            .map(|(idx, c)| (((idx / width) as u32, (idx % width) as u32), c))
            .collect();
        ABPoly { terms }
    }

    fn unit_inverse(&self) -> Option<Self> {
        match self.as_constant() {
            Some(c) if One::is_one(&c.abs()) => Some(ABPoly::constant(c)),
            _ => None,
        }
    }

    fn is_compound(&self) -> bool {
        self.terms.len() > 1
    }
}

impl fmt::Display for ABPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((da, db), c)) in self.terms.iter().enumerate() {
            let mut vars = Vec::new();
            match da {
                0 => {}
                1 => vars.push("a".to_string()),
                d => vars.push(format!("a^{d}")),
            }
            match db {
                0 => {}
                1 => vars.push("b".to_string()),
                d => vars.push(format!("b^{d}")),
            }
            let mag = c.abs();
            let body = if vars.is_empty() {
                mag.to_string()
            } else if One::is_one(&mag) {
                vars.join("*")
            } else {
                format!("{mag}*{}", vars.join("*"))
            };
            match (i, c.is_negative()) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn ab_product_expands() {
        let one_minus_a = ABPoly::one().sub_ref(&ABPoly::a());
        let one_minus_b = ABPoly::one().sub_ref(&ABPoly::b());
        let p = one_minus_a.mul_ref(&one_minus_b);
        assert_eq!(p.to_string(), "1 - b - a + a*b");
        assert_eq!(p.coeff(1, 1), int(1));
        assert_eq!(p.b_coefficient(1).to_string(), "-1 + a");
    }

    #[test]
    fn ab_cancellation_normalizes() {
        let p = ABPoly::a().add_ref(&ABPoly::a().neg_ref());
        assert!(p.is_zero());
        assert_eq!(p.terms().len(), 0);
        assert_eq!(ABPoly::from_terms([((1, 0), int(2)), ((1, 0), int(-2))]), ABPoly::zero());
    }

    #[test]
    fn units() {
        assert_eq!(int(-1).unit_inverse(), Some(int(-1)));
        assert_eq!(int(2).unit_inverse(), None);
        assert!(ABPoly::a().unit_inverse().is_none());
        assert_eq!(ABPoly::from_i64(-1).unit_inverse(), Some(ABPoly::from_i64(-1)));
    }
}
