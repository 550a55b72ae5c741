//! Classical one-variable identities: Euler, the q-binomial theorem in its
//! infinite and finite forms, the triple product, and the q^2-binomial sum.

use num_bigint::BigInt;

use super::{guarded, spec, Checker, Strategy, VerificationReport, VerifyError, VerifyOptions};
use crate::qcomb::{csq_euler_sides, jacobi_triple_lhs, jacobi_triple_sum, qbinom, TripleForm};
use crate::series::{ABPoly, AbSeries, Coefficient, IntSeries, SeriesFactor};

fn one() -> BigInt {
    BigInt::from(1)
}

/// `1/(x;q)_∞ = sum_m x^m/(q;q)_m` at `x = q^j`, `j = 1, 2, 3`.
pub fn verify_euler(order: i64, opts: &VerifyOptions) -> VerificationReport {
    let s = spec("euler", "reciprocal product against the sum of x^m/(q;q)_m", Strategy::QSeries, &[("q_order", order)]);
    guarded(s, |s| {
        let mut ck = Checker::new(opts);
        for j in 1..=3i64 {
            let lhs = SeriesFactor::poch(one(), j, 1).reciprocal_infinite(order)?;
            let mut rhs = IntSeries::zero_to(order);
            let mut m = 0i64;
            while j * m < order {
                let den = SeriesFactor::poch(one(), 1, 1).pochhammer_finite(m as usize);
                rhs = rhs.add(&den.invert_to(order - j * m)?.shift(j * m));
                m += 1;
            }
            if !ck.series(&format!("x=q^{j}"), &lhs, &rhs, 0, order)? {
                break;
            }
        }
        Ok(ck.finish(s.clone(), format!("q^{order}"), None))
    })
}

/// `sum_m (a;q)_m x^m/(q;q)_m = (ax;q)_∞/(x;q)_∞`, formal `a`, `x = q^j`.
pub fn verify_q_binomial(order: i64, opts: &VerifyOptions) -> VerificationReport {
    let s = spec("q-binomial", "q-binomial theorem with formal a at x = q^j", Strategy::QSeries, &[("q_order", order)]);
    guarded(s, |s| {
        let mut ck = Checker::new(opts);
        let a = ABPoly::a();
        for j in 1..=3i64 {
            let mut lhs = AbSeries::zero_to(order);
            let mut m = 0i64;
            while j * m < order {
                let num = SeriesFactor::poch(a.clone(), 0, 1).pochhammer_finite(m as usize);
                let den = SeriesFactor::poch(one(), 1, 1).pochhammer_finite(m as usize).invert_to(order - j * m)?;
                lhs = lhs.add(&num.mul(&AbSeries::from_int(&den)).shift(j * m));
                m += 1;
            }
            let top = SeriesFactor::poch(a.clone(), j, 1).pochhammer_infinite(order)?;
            let bottom = SeriesFactor::poch(<ABPoly as Coefficient>::one(), j, 1).reciprocal_infinite(order)?;
            let rhs = top.mul(&bottom);
            if !ck.series(&format!("x=q^{j}"), &lhs, &rhs, 0, order)? {
                break;
            }
        }
        Ok(ck.finish(s.clone(), format!("q^{order}"), None))
    })
}

/// `(a;q)_n = sum_m (-1)^m q^C(m,2) [n,m] a^m` for formal `a`, `n <= max_n`.
pub fn verify_finite_q_binomial(max_n: usize, opts: &VerifyOptions) -> VerificationReport {
    let s = spec(
        "finite-q-binomial",
        "finite product (a;q)_n as a sum of Gaussian binomials",
        Strategy::QSeries,
        &[("n", max_n as i64)],
    );
    guarded(s, |s| {
        let mut ck = Checker::new(opts);
        for n in (0..=max_n).rev() {
            let lhs = SeriesFactor::poch(ABPoly::a(), 0, 1).pochhammer_finite(n);
            let mut rhs = AbSeries::zero();
            for m in 0..=n {
                let sign = if m % 2 == 0 { 1 } else { -1 };
                let c = ABPoly::monomial(m as u32, 0, BigInt::from(sign));
                let term = AbSeries::from_int(&qbinom(n, m as i64, 1)).scale(&c).shift((m * m.saturating_sub(1) / 2) as i64);
                rhs = rhs.add(&term);
            }
            let hi = (n * n) as i64 + 1;
            if !ck.series(&format!("n={n}"), &lhs, &rhs, 0, hi)? {
                break;
            }
        }
        Ok(ck.finish(s.clone(), "exact polynomials".into(), None))
    })
}

/// Both summed forms of the triple product against `(q^D, q^j, q^{D-j}; q^D)_∞`.
pub fn verify_jacobi_triple(max_modulus: i64, order: i64, opts: &VerifyOptions) -> VerificationReport {
    let s = spec(
        "jacobi-triple",
        "triple product against its two theta-sum forms",
        Strategy::QSeries,
        &[("modulus", max_modulus), ("q_order", order)],
    );
    guarded(s, |s| {
        let mut ck = Checker::new(opts);
        'outer: for d in 2..=max_modulus {
            for j in 1..d {
                let prod = jacobi_triple_lhs(j, d, order).map_err(|e| VerifyError::Invalid(e.to_string()))?;
                for form in [TripleForm::Paired, TripleForm::Symmetric] {
                    let sum = jacobi_triple_sum(form, j, d, order).map_err(|e| VerifyError::Invalid(e.to_string()))?;
                    if !ck.series(&format!("D={d} j={j} {form:?}"), &prod, &sum, 0, order)? {
                        break 'outer;
                    }
                }
            }
        }
        Ok(ck.finish(s.clone(), format!("q^{order}"), None))
    })
}

/// `sum_k q^k [n,k]_{q^2} = (-q;q)_n` for `n <= max_n`.
pub fn verify_csq_euler(max_n: usize, opts: &VerifyOptions) -> VerificationReport {
    let s = spec(
        "csq-euler",
        "sum of q^k times q^2-binomials against (-q;q)_n",
        Strategy::QSeries,
        &[("n", max_n as i64)],
    );
    guarded(s, |s| {
        let mut ck = Checker::new(opts);
        for n in (0..=max_n).rev() {
            let (lhs, rhs) = csq_euler_sides(n);
            let hi = (n * (n + 1) / 2) as i64 + 1;
            if !ck.series(&format!("n={n}"), &lhs, &rhs, 0, hi)? {
                break;
            }
        }
        Ok(ck.finish(s.clone(), "exact polynomials".into(), None))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_identities() {
        let opts = VerifyOptions::default();
        assert!(verify_euler(15, &opts).is_match());
        assert!(verify_q_binomial(12, &opts).is_match());
        assert!(verify_finite_q_binomial(5, &opts).is_match());
        assert!(verify_jacobi_triple(4, 20, &opts).is_match());
        assert!(verify_csq_euler(6, &opts).is_match());
    }
}
