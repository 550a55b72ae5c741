//! Exact evaluation at rational points: the symmetrization oracle for
//! `P_λ`, the product forms Φ and Ψ, and a seeded point sampler.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::partitions::Partition;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("the expression has a pole at the sampled point")]
    Pole,
    #[error("no pole-free point found after {0} attempts")]
    Exhausted(usize),
}

/// Entries are `+1` or `-1`; `-1` inverts the matching variable.
pub type SignVector = Vec<i8>;

#[derive(Clone, Debug, PartialEq)]
pub struct RationalPoint {
    pub xs: Vec<BigRational>,
    pub q: BigRational,
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn checked_div(num: BigRational, den: &BigRational) -> Result<BigRational, EvalError> {
    if den.is_zero() {
        Err(EvalError::Pole)
    } else {
        Ok(num / den)
    }
}

fn pow_i(x: &BigRational, e: i64) -> Result<BigRational, EvalError> {
    if e >= 0 {
        Ok(num_traits::pow(x.clone(), e as usize))
    } else if x.is_zero() {
        Err(EvalError::Pole)
    } else {
        Ok(num_traits::pow(x.recip(), e.unsigned_abs() as usize))
    }
}

/// `(x; t)_n` at rational arguments.
fn rational_poch(x: &BigRational, t: &BigRational, n: usize) -> BigRational {
    let mut acc = BigRational::one();
    let mut term = x.clone();
    for _ in 0..n {
        acc *= BigRational::one() - &term;
        term *= t;
    }
    acc
}

/// `[n, r]` in the variable `t` at a rational point.
fn rational_qbinom(n: usize, r: usize, t: &BigRational) -> Result<BigRational, EvalError> {
    if r > n {
        return Ok(BigRational::zero());
    }
    let num = rational_poch(t, t, n);
    let den = rational_poch(t, t, r) * rational_poch(t, t, n - r);
    checked_div(num, &den)
}

fn twist(xs: &[BigRational], xi: &[i8]) -> Result<Vec<BigRational>, EvalError> {
    assert_eq!(xs.len(), xi.len(), "sign vector length must match the alphabet");
    xs.iter()
        .zip(xi)
        .map(|(x, &s)| if s < 0 { checked_div(BigRational::one(), x) } else { Ok(x.clone()) })
        .collect()
}

/// `P_λ(x; t)` from its definition as a normalized sum over `S_n`.
///
/// The prefactor `prod_{i >= 0} (1-t)^{m_i} / (t;t)_{m_i}` includes
/// `m_0 = n - l(λ)`, without which the dominant coefficient is not 1.
pub fn hl_oracle(lambda: &Partition, xs: &[BigRational], t: &BigRational) -> Result<BigRational, EvalError> {
    let n = xs.len();
    if lambda.len() > n {
        return Ok(BigRational::zero());
    }
    let mut mult = lambda.multiplicities();
    mult[0] = n - lambda.len();
    let mut prefactor = BigRational::one();
    let one_minus_t = BigRational::one() - t;
    for &m in &mult {
        let num = num_traits::pow(one_minus_t.clone(), m);
        prefactor *= checked_div(num, &rational_poch(t, t, m))?;
    }
    let parts: Vec<usize> = (1..=n).map(|i| lambda.part(i)).collect();
    let mut total = BigRational::zero();
    for w in (0..n).permutations(n) {
        let mut term = BigRational::one();
        for (i, &wi) in w.iter().enumerate() {
            term *= num_traits::pow(xs[wi].clone(), parts[i]);
        }
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (&xs[w[i]], &xs[w[j]]);
                term = checked_div(term * (a - t * b), &(a - b))?;
            }
        }
        total += term;
    }
    Ok(prefactor * total)
}

/// `Φ(X^ξ) prod_i x_i^{k(1 - ξ_i)/2}` where
/// `Φ(X) = prod_i (1 + q x_i)/(1 - x_i) prod_{j<k} (1 - q^2 x_j x_k)/(1 - x_j x_k)`.
pub fn phi_eval(xi: &[i8], point: &RationalPoint, k: u32) -> Result<BigRational, EvalError> {
    let ys = twist(&point.xs, xi)?;
    let q = &point.q;
    let q2 = q * q;
    let mut acc = BigRational::one();
    for y in &ys {
        acc = checked_div(acc * (BigRational::one() + q * y), &(BigRational::one() - y))?;
    }
    for (a, b) in ys.iter().tuple_combinations() {
        let p = a * b;
        acc = checked_div(acc * (BigRational::one() - &q2 * &p), &(BigRational::one() - p))?;
    }
    for (x, &s) in point.xs.iter().zip(xi) {
        if s < 0 {
            acc *= num_traits::pow(x.clone(), k as usize);
        }
    }
    Ok(acc)
}

/// `Ψ(X^ξ)` where `Ψ(X) = prod_i 1/(1 - x_i^2) prod_{j<k} (1 - q^2 x_j x_k)/(1 - x_j x_k)`.
pub fn psi_eval(xi: &[i8], point: &RationalPoint) -> Result<BigRational, EvalError> {
    let ys = twist(&point.xs, xi)?;
    let q2 = &point.q * &point.q;
    let mut acc = BigRational::one();
    for y in &ys {
        acc = checked_div(acc, &(BigRational::one() - y * y))?;
    }
    for (a, b) in ys.iter().tuple_combinations() {
        let p = a * b;
        acc = checked_div(acc * (BigRational::one() - &q2 * &p), &(BigRational::one() - p))?;
    }
    Ok(acc)
}

/// Ψ at `x_i = z q^{2i-2}` with the first `r` variables inverted:
/// `(-1)^r z^{2r} q^{6 C(r,2)} [n, r]_{q^2} (1 - z^2 q^{4r-2}) / (z^2 q^{2r-2}; q^2)_{n+1}`.
pub fn psi_principal_closed_form(n: usize, r: usize, z: &BigRational, q: &BigRational) -> Result<BigRational, EvalError> {
    let q2 = q * q;
    let r_i = r as i64;
    let sign = if r.is_multiple_of(2) { int(1) } else { int(-1) };
    let z2 = z * z;
    let mut acc = sign * pow_i(z, 2 * r_i)? * pow_i(q, 3 * r_i * (r_i - 1))?;
    acc *= rational_qbinom(n, r, &q2)?;
    acc *= BigRational::one() - &z2 * pow_i(q, 4 * r_i - 2)?;
    let den = rational_poch(&(&z2 * pow_i(q, 2 * r_i - 2)?), &q2, n + 1);
    checked_div(acc, &den)
}

/// The same quantity as written in one printed source, with `[n, r]_q` and
/// `(z q^{r-1}; q)_{n+1}` in the denominator. Kept so that the discrepancy
/// can be demonstrated.
pub fn psi_principal_printed(n: usize, r: usize, z: &BigRational, q: &BigRational) -> Result<BigRational, EvalError> {
    let r_i = r as i64;
    let sign = if r.is_multiple_of(2) { int(1) } else { int(-1) };
    let mut acc = sign * pow_i(z, 2 * r_i)? * pow_i(q, 3 * r_i * (r_i - 1))?;
    acc *= rational_qbinom(n, r, q)?;
    acc *= BigRational::one() - z * z * pow_i(q, 4 * r_i - 2)?;
    let den = rational_poch(&(z * pow_i(q, r_i - 1)?), q, n + 1);
    checked_div(acc, &den)
}

/// Reproducible source of small rational points.
#[derive(Clone, Debug)]
pub struct PointSampler {
    rng: ChaCha8Rng,
    fixed_q: Option<BigRational>,
}

impl PointSampler {
    pub fn new(seed: u64) -> Self {
        PointSampler { rng: ChaCha8Rng::seed_from_u64(seed), fixed_q: None }
    }

    /// Pins `q` to a given value instead of sampling it.
    pub fn with_fixed_q(mut self, q: BigRational) -> Self {
        self.fixed_q = Some(q);
        self
    }

    fn small_rational(&mut self) -> BigRational {
        loop {
            let num: i64 = self.rng.random_range(-9..=9);
            let den: i64 = self.rng.random_range(1..=7);
            let r = BigRational::new(BigInt::from(num), BigInt::from(den));
            // 0 and ±1 make many of the product forms degenerate
            if !r.is_zero() && !r.abs().is_one() {
                return r;
            }
        }
    }

    /// `n` distinct coordinates and a value of `q`.
    pub fn sample(&mut self, n: usize) -> RationalPoint {
        let mut xs: Vec<BigRational> = Vec::with_capacity(n);
        while xs.len() < n {
            let x = self.small_rational();
            if !xs.contains(&x) {
                xs.push(x);
            }
        }
        let q = match &self.fixed_q {
            Some(q) => q.clone(),
            None => self.small_rational(),
        };
        RationalPoint { xs, q }
    }

    /// Samples until `f` succeeds, skipping points where it hits a pole.
    pub fn sample_where<T, F>(&mut self, n: usize, max_attempts: usize, mut f: F) -> Result<(RationalPoint, T), EvalError>
    where
        F: FnMut(&RationalPoint) -> Result<T, EvalError>,
    {
        for _ in 0..max_attempts {
            let pt = self.sample(n);
            match f(&pt) {
                Ok(v) => return Ok((pt, v)),
                Err(EvalError::Pole) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(EvalError::Exhausted(max_attempts))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frac(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn oracle_small_cases() {
        let xs = vec![frac(2, 3), frac(-5, 2), frac(7, 4)];
        let t = frac(3, 5);
        assert_eq!(hl_oracle(&Partition::empty(), &xs, &t).unwrap(), int(1));
        let p1 = hl_oracle(&Partition::new(vec![1]).unwrap(), &xs[..2], &t).unwrap();
        assert_eq!(p1, &xs[0] + &xs[1]);
        let coincident = vec![frac(1, 2), frac(1, 2)];
        assert_eq!(hl_oracle(&Partition::new(vec![1]).unwrap(), &coincident, &t), Err(EvalError::Pole));
    }

    #[test]
    fn phi_examples() {
        let pt = RationalPoint { xs: vec![int(2)], q: int(0) };
        assert_eq!(phi_eval(&[-1], &pt, 1).unwrap(), int(4));
        let pt2 = RationalPoint { xs: vec![frac(1, 3), frac(2, 5)], q: frac(-2, 3) };
        let untwisted = phi_eval(&[1, 1], &pt2, 5).unwrap();
        let direct = (int(1) + &pt2.q * &pt2.xs[0]) / (int(1) - &pt2.xs[0]) * (int(1) + &pt2.q * &pt2.xs[1])
            / (int(1) - &pt2.xs[1])
            * (int(1) - &pt2.q * &pt2.q * &pt2.xs[0] * &pt2.xs[1])
            / (int(1) - &pt2.xs[0] * &pt2.xs[1]);
        assert_eq!(untwisted, direct);
        // q = 0: prod 1/(1-x_i) prod 1/(1-x_i x_j)
        let pt0 = RationalPoint { xs: pt2.xs.clone(), q: int(0) };
        let schur_side = int(1) / ((int(1) - &pt0.xs[0]) * (int(1) - &pt0.xs[1]) * (int(1) - &pt0.xs[0] * &pt0.xs[1]));
        assert_eq!(phi_eval(&[1, 1], &pt0, 3).unwrap(), schur_side);
        let pole = RationalPoint { xs: vec![int(1)], q: int(2) };
        assert_eq!(phi_eval(&[1], &pole, 1), Err(EvalError::Pole));
    }

    #[test]
    fn psi_examples() {
        let pt = RationalPoint { xs: vec![int(2)], q: int(3) };
        assert_eq!(psi_eval(&[1], &pt).unwrap(), frac(-1, 3));
        let pt2 = RationalPoint { xs: vec![frac(1, 3), frac(2, 7)], q: frac(5, 2) };
        assert_eq!(psi_eval(&[1, 1], &pt2).unwrap(), psi_eval(&[1, 1], &pt2).unwrap());
    }

    #[test]
    fn psi_principal_matches_closed_form() {
        let z = frac(2, 5);
        let q = frac(-3, 4);
        for n in 1..=3usize {
            for r in 0..=n {
                let xs: Vec<BigRational> = (0..n).map(|i| &z * num_traits::pow(q.clone(), 2 * i)).collect();
                let xi: Vec<i8> = (0..n).map(|i| if i < r { -1 } else { 1 }).collect();
                let direct = psi_eval(&xi, &RationalPoint { xs, q: q.clone() }).unwrap();
                assert_eq!(psi_principal_closed_form(n, r, &z, &q).unwrap(), direct, "n={n} r={r}");
            }
        }
    }

    #[test]
    fn sampler_is_reproducible() {
        let a = PointSampler::new(7).sample(3);
        let b = PointSampler::new(7).sample(3);
        assert_eq!(a, b);
        assert_ne!(a, PointSampler::new(8).sample(3));
        let fixed = PointSampler::new(1).with_fixed_q(int(0)).sample(2);
        assert!(fixed.q.is_zero());
        let mut s = PointSampler::new(3);
        let r: Result<(RationalPoint, ()), _> = s.sample_where(2, 5, |_| Err(EvalError::Pole));
        assert_eq!(r.unwrap_err(), EvalError::Exhausted(5));
    }
}
