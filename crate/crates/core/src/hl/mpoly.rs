//! Sparse multivariate polynomials in `x_1..x_n` over a coefficient ring.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::series::{Coefficient, IntSeries};

pub type Exponents = Vec<u32>;

#[derive(Clone, PartialEq, Debug)]
pub struct MPoly<R> {
    nvars: usize,
    terms: BTreeMap<Exponents, R>,
}

/// Polynomials in `x` with integer Laurent polynomials in `q` as coefficients.
pub type QPoly = MPoly<IntSeries>;

impl<R: Coefficient> MPoly<R> {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: R) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, R::one())
    }

    pub fn monomial(exps: Exponents, c: R) -> Self {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MPoly { nvars, terms }
    }

    /// The single variable `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, R::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &R)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> R {
        self.terms.get(exps).cloned().unwrap_or_else(R::zero)
    }

    pub fn add_term(&mut self, exps: Exponents, c: &R) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(existing) => {
                existing.add_assign_ref(c);
                if existing.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c.clone());
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg_ref())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), &x.mul_ref(c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_to_degree(other, u32::MAX)
    }

    /// Product keeping only monomials of total degree `<= max_degree`.
    pub fn mul_to_degree(&self, other: &Self, max_degree: u32) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            let d1: u32 = e1.iter().sum();
            for (e2, c2) in &other.terms {
                let d2: u32 = e2.iter().sum();
                if d1.saturating_add(d2) > max_degree {
                    continue;
                }
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, &c1.mul_ref(c2));
            }
        }
        out
    }

    /// Terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms of total degree `<= d`.
    pub fn truncate_degree(&self, d: u32) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() <= d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Appends a new variable `x_{n+1}` raised to `power`.
    pub fn extend_with_power(&self, power: u32) -> Self {
        MPoly {
            nvars: self.nvars + 1,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = e.clone();
                    e2.push(power);
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    /// Exchanges variables `i` and `j`.
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = e.clone();
                    e2.swap(i, j);
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    /// Keeps the terms whose exponent vector satisfies `keep`.
    pub fn filter_terms<F: Fn(&[u32]) -> bool>(&self, keep: F) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(e, _)| keep(e)).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }
}

/// Evaluates an integer Laurent polynomial in `q` at a nonzero rational.
pub fn eval_q(s: &IntSeries, q: &BigRational) -> BigRational {
    let mut acc = <BigRational as Zero>::zero();
    for (e, c) in s.terms() {
        let base = if e >= 0 { q.clone() } else { q.recip() };
        acc += num_traits::pow(base, e.unsigned_abs() as usize) * BigRational::from_integer(c.clone());
    }
    acc
}

impl QPoly {
    /// Value at `x = xs`, `q = q`.
    pub fn eval(&self, xs: &[BigRational], q: &BigRational) -> BigRational {
        assert_eq!(xs.len(), self.nvars);
        let mut acc = <BigRational as Zero>::zero();
        for (e, c) in &self.terms {
            let mut m = eval_q(c, q);
            for (x, &k) in xs.iter().zip(e) {
                if k > 0 {
                    m *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += m;
        }
        acc
    }

    /// Embeds an integer polynomial in `x`.
    pub fn from_int_terms<I: IntoIterator<Item = (Exponents, BigInt)>>(nvars: usize, terms: I) -> Self {
        let mut out = Self::zero(nvars);
        for (e, c) in terms {
            out.add_term(e, &IntSeries::constant(c));
        }
        out
    }

    /// Substitutes `q = 0`; terms with negative `q`-powers are rejected.
    pub fn at_q_zero(&self) -> Option<MPoly<BigInt>> {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if c.min_exp() < 0 {
                return None;
            }
            out.add_term(e.clone(), &c.coeff(0));
        }
        Some(out)
    }
}

impl MPoly<BigInt> {
    pub fn eval_int(&self, xs: &[BigRational]) -> BigRational {
        let mut acc = <BigRational as Zero>::zero();
        for (e, c) in &self.terms {
            let mut m = BigRational::from_integer(c.clone());
            for (x, &k) in xs.iter().zip(e) {
                m *= num_traits::pow(x.clone(), k as usize);
            }
            acc += m;
        }
        acc
    }
}

impl<R: Coefficient> fmt::Display for MPoly<R> {
    /// One line per monomial, `[e1,e2,...] : coefficient`, in lexicographic order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return writeln!(f, "0");
        }
        if self.terms.len() == 1 && self.terms.keys().next().is_some_and(|e| e.iter().all(|&k| k == 0)) {
            let c = self.terms.values().next().unwrap();
            if c.is_one() {
                return writeln!(f, "1");
            }
        }
        for (e, c) in &self.terms {
            let exps: Vec<String> = e.iter().map(|k| k.to_string()).collect();
            writeln!(f, "[{}] : {}", exps.join(","), c)?;
        }
        Ok(())
    }
}

/// The elementary symmetric polynomial `e_r(x_1..x_n)`.
pub fn elementary<R: Coefficient>(nvars: usize, r: usize) -> MPoly<R> {
    let mut out = MPoly::zero(nvars);
    if r > nvars {
        return out;
    }
    let mut chosen = vec![0u32; nvars];
    fn rec<R: Coefficient>(i: usize, left: usize, chosen: &mut Vec<u32>, out: &mut MPoly<R>) {
        if left == 0 {
            out.add_term(chosen.clone(), &R::one());
            return;
        }
        if i == chosen.len() || chosen.len() - i < left {
            return;
        }
        chosen[i] = 1;
        rec(i + 1, left - 1, chosen, out);
        chosen[i] = 0;
        rec(i + 1, left, chosen, out);
    }
    rec(0, r, &mut chosen, &mut out);
    out
}

#[cfg(test)]
pub(crate) fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::int_poly;

    #[test]
    fn arithmetic_and_dump() {
        let x = QPoly::var(2, 0);
        let y = QPoly::var(2, 1);
        let s = x.add(&y);
        let sq = s.mul(&s);
        assert_eq!(sq.coeff(&[1, 1]), int_poly(&[2]));
        assert_eq!(sq.to_string(), "[0,2] : 1\n[1,1] : 2\n[2,0] : 1\n");
        assert_eq!(QPoly::one(2).to_string(), "1\n");
        assert!(s.sub(&s).is_zero());
        assert_eq!(sq.mul_to_degree(&s, 2), QPoly::zero(2));
        assert_eq!(sq.swap_vars(0, 1), sq);
    }

    #[test]
    fn elementary_counts() {
        let e2: QPoly = elementary(4, 2);
        assert_eq!(e2.num_terms(), 6);
        let e5: QPoly = elementary(4, 5);
        assert!(e5.is_zero());
        let e0: QPoly = elementary(3, 0);
        assert_eq!(e0, QPoly::one(3));
    }

    #[test]
    fn evaluation() {
        let p = QPoly::monomial(vec![2, 1], IntSeries::polynomial([(-1, BigInt::from(1)), (1, BigInt::from(3))]));
        // x^2 y (q^-1 + 3q) at x=2, y=3, q=2
        let v = p.eval(&[rational(2), rational(3)], &rational(2));
        assert_eq!(v, rational(12) * (BigRational::new(BigInt::from(1), BigInt::from(2)) + rational(6)));
    }
}
