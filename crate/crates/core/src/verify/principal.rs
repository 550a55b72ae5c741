//! Identities between finite sums over partitions in a box and products in
//! `z`: the principal specialization of the finite Kawanaka-type identity,
//! its `k -> ∞` case, the Macdonald sum, the q-Pieri rule, and the
//! `n -> ∞` limit.

use num_bigint::BigInt;

use super::bivariate::{z_poch_finite, z_poch_finite_recip, Bivariate};
use super::master::ab_sides;
use super::{guarded, spec, Checker, Strategy, VerificationReport, VerifyError, VerifyOptions};
use crate::hl::principal_value;
use crate::partitions::{enumerate, Bounds, Partition};
use crate::qcomb::{pochhammer_partition_sym, qbinom, qbinom_partition};
use crate::series::{IntSeries, QLaurentSeries};

fn one() -> BigInt {
    BigInt::from(1)
}

fn box_partitions(weight: usize, max_part: usize, max_length: Option<usize>) -> Vec<Partition> {
    enumerate(Bounds { weight: Some(weight), max_part: Some(max_part), max_length, ..Default::default() })
        .expect("bounded by weight")
}

fn sign(r: usize) -> BigInt {
    if r.is_multiple_of(2) {
        one()
    } else {
        -one()
    }
}

/// `prod_{i=1}^{k-1} (-q)_{λ_i - λ_{i+1}}`
fn leading_gap_weight(lambda: &Partition, k: usize) -> IntSeries {
    let mut acc = IntSeries::one();
    for i in 1..k {
        let g = lambda.part(i) - lambda.part(i + 1);
        acc = acc.mul(&crate::series::SeriesFactor::poch_plus(one(), 1, 1).pochhammer_finite(g));
    }
    acc
}

/// Both sides of the principal specialization, exact in `q`:
/// `sum_{l(λ)<=k} prod_{i<k} (-q)_{λ_i-λ_{i+1}} z^{|λ|} q^{n2(λ)} [n,λ]_{q^2}` against
/// `sum_{r=0}^n (-1)^r z^{kr} q^{(k+1)r^2} [n,r]_{q^2} (-z)_{2n+1}/(z^2 q^{2r};q^2)_{n+1} (1 - z q^{2r})`.
pub fn principal_sides(n: usize, k: usize, z_order: usize) -> (Bivariate<BigInt>, Bivariate<BigInt>) {
    let mut lhs = Vec::with_capacity(z_order);
    for m in 0..z_order {
        let mut c = IntSeries::zero();
        for lambda in box_partitions(m, n, Some(k)) {
            let pv = principal_value(&lambda, n);
            // the principal value carries q^{2n(λ)}; z -> zq turns it into q^{n2(λ)}
            let term = pv.qbinom.shift(pv.q_exp + pv.z_exp as i64).mul(&leading_gap_weight(&lambda, k));
            c = c.add(&term);
        }
        lhs.push(c);
    }
    let minus_one = -one();
    let shared = z_poch_finite(z_order, &minus_one, 1, 0, 1, 2 * n + 1);
    let mut rhs = Bivariate::zero(z_order);
    for r in 0..=n {
        if k * r >= z_order {
            break;
        }
        let ri = r as i64;
        let c = qbinom(n, ri, 2).shift((k as i64 + 1) * ri * ri).scale(&sign(r));
        let term = Bivariate::monomial(z_order, k * r, c)
            .mul(&shared)
            .mul(&z_poch_finite_recip(z_order, &one(), 2, 2 * ri, 2, n + 1))
            .mul(&z_poch_finite(z_order, &one(), 1, 2 * ri, 1, 1));
        rhs = rhs.add(&term);
    }
    (Bivariate::from_coeffs(lhs), rhs)
}

/// The principal specialization for every `(n, k)` listed.
pub fn verify_principal(
    instances: &[(usize, usize)],
    z_order: usize,
    q_order: i64,
    opts: &VerifyOptions,
) -> VerificationReport {
    let max_n = instances.iter().map(|p| p.0).max().unwrap_or(0);
    let max_k = instances.iter().map(|p| p.1).max().unwrap_or(0);
    let s = spec(
        "kawanaka-principal",
        "principal specialization x_i = z q^{2i-2} of the finite identity, as a (z,q) series",
        Strategy::ZqBivariate,
        &[("n", max_n as i64), ("k", max_k as i64), ("z_order", z_order as i64), ("q_order", q_order)],
    );
    guarded(s, |s| {
        let mut ck = Checker::new(opts);
        for &(n, k) in instances {
            if k == 0 {
                return Err(VerifyError::Invalid("k must be positive".into()));
            }
            let (lhs, rhs) = principal_sides(n, k, z_order);
            if !ck.bivariate(&format!("n={n} k={k}"), &lhs.truncate_q(q_order), &rhs.truncate_q(q_order), 0, q_order)? {
                break;
            }
        }
        Ok(ck.finish(s.clone(), format!("z^{} q^{q_order}", z_order - 1), None))
    })
}

/// `sum_λ z^{|λ|} q^{2n(λ)} (-q)_λ [n,λ]_{q^2} = (-z)_{2n}/(z^2;q^2)_n` for each `n` listed.
pub fn verify_kinf(ns: &[usize], z_order: usize, q_order: i64, opts: &VerifyOptions) -> VerificationReport {
    let s = spec(
        "kinf",
        "sum over all lengths with (-q)_λ weights against (-z)_{2n}/(z^2;q^2)_n",
        Strategy::ZqBivariate,
        &[("n", ns.iter().copied().max().unwrap_or(0) as i64), ("z_order", z_order as i64), ("q_order", q_order)],
    );
    guarded(s, |s| {
        let mut ck = Checker::new(opts);
        for &n in ns {
            let mut lhs = Vec::with_capacity(z_order);
            for m in 0..z_order {
                let mut c = IntSeries::zero();
                for lambda in box_partitions(m, n, None) {
                    let w = pochhammer_partition_sym(1, 1, &lambda, 1);
                    c = c.add(&qbinom_partition(n, &lambda, 2).mul(&w).shift(2 * lambda.n_stat() as i64));
                }
                lhs.push(c);
            }
            let lhs = Bivariate::from_coeffs(lhs);
            let rhs = z_poch_finite(z_order, &-one(), 1, 0, 1, 2 * n).mul(&z_poch_finite_recip(z_order, &one(), 2, 0, 2, n));
            if !ck.bivariate(&format!("n={n}"), &lhs.truncate_q(q_order), &rhs.truncate_q(q_order), 0, q_order)? {
                break;
            }
        }
        Ok(ck.finish(s.clone(), format!("z^{} q^{q_order}", z_order - 1), None))
    })
}

/// `sum_λ z^{|λ|} q^{n(λ)} [n,λ] = (-z)_n/(z^2)_n` for each `n` listed.
pub fn verify_mac2(ns: &[usize], z_order: usize, q_order: i64, opts: &VerifyOptions) -> VerificationReport {
    let s = spec(
        "mac2",
        "sum of z^{|λ|} q^{n(λ)} [n,λ] against (-z)_n/(z^2)_n",
        Strategy::ZqBivariate,
        &[("n", ns.iter().copied().max().unwrap_or(0) as i64), ("z_order", z_order as i64), ("q_order", q_order)],
    );
    guarded(s, |s| {
        let mut ck = Checker::new(opts);
        for &n in ns {
            let mut lhs = Vec::with_capacity(z_order);
            for m in 0..z_order {
                let mut c = IntSeries::zero();
                for lambda in box_partitions(m, n, None) {
                    c = c.add(&qbinom_partition(n, &lambda, 1).shift(lambda.n_stat() as i64));
                }
                lhs.push(c);
            }
            let lhs = Bivariate::from_coeffs(lhs);
            let rhs = z_poch_finite(z_order, &-one(), 1, 0, 1, n).mul(&z_poch_finite_recip(z_order, &one(), 2, 0, 1, n));
            if !ck.bivariate(&format!("n={n}"), &lhs.truncate_q(q_order), &rhs.truncate_q(q_order), 0, q_order)? {
                break;
            }
        }
        Ok(ck.finish(s.clone(), format!("z^{} q^{q_order}", z_order - 1), None))
    })
}

/// Both sides of the q-Pieri rule for `(n, m, μ)`:
/// `q^{C(m,2)+n(μ)} [n,m] [n,μ]` and
/// `sum_λ q^{n(λ)} [n,λ] prod_i [λ_i - λ_{i+1}, λ_i - μ_i]` over horizontal `m`-strips `λ/μ` with `λ_1 <= n`.
pub fn qpieri_sides(n: usize, m: usize, mu: &Partition) -> (IntSeries, IntSeries) {
    let lhs = qbinom(n, m as i64, 1)
        .mul(&qbinom_partition(n, mu, 1))
        .shift((m * m.saturating_sub(1) / 2 + mu.n_stat()) as i64);
    let mut rhs = IntSeries::zero();
    for lambda in mu.horizontal_strips_added(m, n) {
        let mut term = qbinom_partition(n, &lambda, 1).shift(lambda.n_stat() as i64);
        for i in 1..=lambda.len() {
            let top = lambda.part(i) - lambda.part(i + 1);
            let bottom = lambda.part(i) as i64 - mu.part(i) as i64;
            term = term.mul(&qbinom(top, bottom, 1));
        }
        rhs = rhs.add(&term);
    }
    (lhs, rhs)
}

/// The q-Pieri rule for every `μ` with `μ_1 <= n` and `l(μ) <= max_length`, `n <= max_n`, `m <= max_m`.
pub fn verify_qpieri(max_n: usize, max_m: usize, max_length: usize, opts: &VerifyOptions) -> VerificationReport {
    let s = spec(
        "qpieri",
        "q-Pieri rule for Gaussian binomials of partitions",
        Strategy::QSeries,
        &[("n", max_n as i64), ("m", max_m as i64), ("length", max_length as i64)],
    );
    guarded(s, |s| {
        let mut ck = Checker::new(opts);
        'outer: for n in (1..=max_n).rev() {
            let mus = enumerate(Bounds { max_part: Some(n), max_length: Some(max_length), ..Default::default() })
                .map_err(|e| VerifyError::Invalid(e.to_string()))?;
            for mu in &mus {
                for m in 0..=max_m {
                    let (lhs, rhs) = qpieri_sides(n, m, mu);
                    let hi = lhs.max_exp().max(rhs.max_exp()).unwrap_or(0) + 1;
                    let hi = hi.max(1);
                    if !ck.series(&format!("n={n} m={m} mu={mu}"), &lhs, &rhs, 0, hi)? {
                        break 'outer;
                    }
                }
            }
        }
        Ok(ck.finish(s.clone(), "exact polynomials".into(), None))
    })
}

/// The `n -> ∞` limit: for `m < z_order` the principal specialization at `n`,
/// after `z -> z/q`, agrees with both sides of
/// `sum z^{|λ|} q^{2n(λ)}/((-q)_{λ_k}(q)_λ) = (-z/q)_∞ sum_r (-1)^r z^{kr} q^{r+(2k+2)C(r,2)}
///  (1 - z q^{2r-1}) / ((q^2;q^2)_r (z^2 q^{2r-2};q^2)_∞)`
/// through `q^{2(n-m+1)}`; the limit identity itself is checked through `q^q_order`.
pub fn verify_lim1(ks: &[usize], n: usize, z_order: usize, q_order: i64, opts: &VerifyOptions) -> VerificationReport {
    let s = spec(
        "lim1",
        "n -> infinity limit of the principal specialization and the a = b = 0 case of the (z,q) identity",
        Strategy::ZqBivariate,
        &[
            ("k", ks.iter().copied().max().unwrap_or(0) as i64),
            ("n", n as i64),
            ("z_order", z_order as i64),
            ("q_order", q_order),
        ],
    );
    guarded(s, |s| {
        let mut ck = Checker::new(opts);
        let zero = BigInt::from(0);
        for &k in ks {
            let (lim_l, lim_r) = ab_sides(k, z_order, &zero, &zero, q_order)?;
            let label = format!("k={k}");
            if !ck.bivariate(&format!("{label} limit identity"), &lim_l, &lim_r, -q_order, q_order)? {
                break;
            }
            let (fin_l, fin_r) = principal_sides(n, k, z_order);
            let (fin_l, fin_r) = (fin_l.twist(-1), fin_r.twist(-1));
            for m in 0..z_order {
                let hi = (2 * (n as i64 - m as i64 + 1)).min(q_order);
                if hi <= 0 {
                    continue;
                }
                let pairs: [(&str, &QLaurentSeries<BigInt>, &QLaurentSeries<BigInt>); 2] = [
                    ("sum", fin_l.coeff(m), lim_l.coeff(m)),
                    ("closed form", fin_r.coeff(m), lim_r.coeff(m)),
                ];
                for (what, finite, limit) in pairs {
                    if !ck.series(&format!("{label} z^{m} {what}"), &finite.truncate(hi), &limit.truncate(hi), -q_order, hi)? {
                        return Ok(ck.finish(s.clone(), String::new(), None));
                    }
                }
            }
        }
        let z_top = z_order - 1;
        Ok(ck.finish(s.clone(), format!("z^{z_top} q^{q_order}; finite n={n} to q^{{2(n-m+1)}}"), None))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_instances_hold() {
        let opts = VerifyOptions::default();
        assert!(verify_principal(&[(1, 1), (2, 2)], 4, 12, &opts).is_match());
        assert!(verify_kinf(&[1, 2], 4, 12, &opts).is_match());
        assert!(verify_mac2(&[1, 2], 4, 12, &opts).is_match());
        assert!(verify_qpieri(3, 2, 2, &opts).is_match());
    }

    #[test]
    fn principal_sides_at_one_variable() {
        // n = 1, k = 1: sum_{r <= 1} z^r q^0 against (1 + z)... both sides agree through z^3
        let (l, r) = principal_sides(1, 1, 4);
        for m in 0..4 {
            assert_eq!(l.coeff(m).truncate(10), r.coeff(m).truncate(10), "z^{m}");
        }
    }
}
