//! Hall-Littlewood polynomials `P_λ(x_1..x_n; t)` with `t = q` or `t = q^2`.
//!
//! Polynomials are built by peeling off the last variable: `λ/μ` runs over
//! horizontal strips and each strip carries the weight
//! `ψ_{λ/μ}(t) = prod_j (1 - t^{m_j(μ)})`, the product over the columns `j`
//! left untouched by the strip while column `j + 1` receives a cell.

mod eval;
mod mpoly;

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::partitions::{is_vertical_strip, Partition};
use crate::qcomb::{qbinom, qbinom_partition};
use crate::series::{IntSeries, SeriesFactor};

pub use eval::{
    hl_oracle, phi_eval, psi_eval, psi_principal_closed_form, psi_principal_printed, EvalError, PointSampler,
    RationalPoint, SignVector,
};
pub use mpoly::{elementary, eval_q, Exponents, MPoly, QPoly};

/// Memo table of Hall-Littlewood polynomials for one value of `t`.
///
/// Tables are not shared between threads; each verification task owns one.
#[derive(Debug)]
pub struct HlTable {
    t_power: i64,
    memo: HashMap<(Partition, usize), QPoly>,
}

impl HlTable {
    /// `q_square` selects `t = q^2`, otherwise `t = q`.
    pub fn new(q_square: bool) -> Self {
        HlTable { t_power: if q_square { 2 } else { 1 }, memo: HashMap::new() }
    }

    pub fn t_power(&self) -> i64 {
        self.t_power
    }

    /// `P_λ(x_1..x_n)`; zero when `l(λ) > n`.
    pub fn get(&mut self, lambda: &Partition, n: usize) -> QPoly {
        if lambda.len() > n {
            return QPoly::zero(n);
        }
        if n == 0 {
            return QPoly::one(0);
        }
        let key = (lambda.clone(), n);
        if let Some(p) = self.memo.get(&key) {
            return p.clone();
        }
        let mut out = QPoly::zero(n);
        for mu in lambda.horizontal_strips_removed() {
            if mu.len() > n - 1 {
                continue;
            }
            let weight = strip_weight(lambda, &mu, self.t_power);
            let sub = self.get(&mu, n - 1);
            let k = (lambda.weight() - mu.weight()) as u32;
            out = out.add(&sub.extend_with_power(k).scale(&weight));
        }
        self.memo.insert(key, out.clone());
        out
    }
}

/// `P_λ(x_1..x_n; q)` or `P_λ(x_1..x_n; q^2)`.
pub fn hl_poly(lambda: &Partition, n: usize, q_square: bool) -> QPoly {
    HlTable::new(q_square).get(lambda, n)
}

/// `ψ_{λ/μ}(q^t_power)` for a horizontal strip `λ/μ`.
fn strip_weight(lambda: &Partition, mu: &Partition, t_power: i64) -> IntSeries {
    let lc = lambda.conjugate();
    let mc = mu.conjugate();
    let mult = mu.multiplicities();
    let theta = |j: usize| lc.part(j) - mc.part(j);
    let mut w = IntSeries::one();
    for j in 1..=lambda.largest() {
        if theta(j) == 0 && theta(j + 1) == 1 {
            let m = mult.get(j).copied().unwrap_or(0) as i64;
            w = w.mul(&IntSeries::polynomial([(0, BigInt::from(1)), (t_power * m, BigInt::from(-1))]));
        }
    }
    w
}

/// The Pieri coefficient `f^λ_{μ,(1^m)}` in `q^step`:
/// `prod_i [λ'_i - λ'_{i+1}, λ'_i - μ'_i]`, zero unless `λ/μ` is a vertical `m`-strip.
pub fn pieri_coeff(lambda: &Partition, mu: &Partition, m: usize, step: i64) -> IntSeries {
    if !is_vertical_strip(lambda, mu, m) {
        return IntSeries::zero();
    }
    let lc = lambda.conjugate();
    let mc = mu.conjugate();
    let mut acc = IntSeries::one();
    for i in 1..=lambda.largest() {
        let top = lc.part(i) - lc.part(i + 1);
        let bottom = lc.part(i) as i64 - mc.part(i) as i64;
        acc = acc.mul(&qbinom(top, bottom, step));
    }
    acc
}

/// `P_{λ'}` at `x_i = z q^{2i-2}` (`i = 1..n`) with `t = q^2` equals
/// `z^{z_exp} q^{q_exp} qbinom`.
#[derive(Clone, Debug, PartialEq)]
pub struct PrincipalValue {
    pub z_exp: usize,
    pub q_exp: i64,
    pub qbinom: IntSeries,
}

pub fn principal_value(lambda: &Partition, n: usize) -> PrincipalValue {
    PrincipalValue {
        z_exp: lambda.weight(),
        q_exp: 2 * lambda.n_stat() as i64,
        qbinom: qbinom_partition(n, lambda, 2),
    }
}

/// `prod_i (-q)_{m_i(λ)}` over `i = 1..limit` (all parts when `limit` is `None`).
pub fn minus_q_multiplicity_weight(lambda: &Partition, limit: Option<usize>) -> IntSeries {
    let minus_q = SeriesFactor::poch_plus(BigInt::from(1), 1, 1);
    let mut acc = IntSeries::one();
    for (i, &m) in lambda.multiplicities().iter().enumerate().skip(1) {
        if limit.is_some_and(|l| i > l) {
            break;
        }
        if m > 0 {
            acc = acc.mul(&minus_q.pochhammer_finite(m));
        }
    }
    acc
}
