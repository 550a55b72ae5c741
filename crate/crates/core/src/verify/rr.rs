//! The twelve Rogers-Ramanujan type families indexed by `k`, checked from
//! their partition sums against theta products, plus the derivation of
//! each from a master form and the three single-sum `k = 1` cases.

use num_bigint::BigInt;

use super::master::{master_sides, MasterKind, Param};
use super::{guarded, spec, Checker, Strategy, VerificationReport, VerifyError, VerifyOptions};
use crate::partitions::{enumerate_by_cost, Partition};
use crate::qcomb::{pochhammer_partition_to, ThetaProduct};
use crate::series::{product_truncated, AbSeries, IntSeries, SeriesFactor};

fn one() -> BigInt {
    BigInt::from(1)
}

/// `(-q^shift; q^step)_n` below `q^order`.
fn plus_poch(shift: i64, step: i64, n: usize, order: i64) -> IntSeries {
    SeriesFactor::poch_plus(one(), shift, step).pochhammer_finite_to(n, order)
}

fn minus(shift: i64, step: i64) -> SeriesFactor<BigInt> {
    SeriesFactor::poch(one(), shift, step)
}

fn plus(shift: i64, step: i64) -> SeriesFactor<BigInt> {
    SeriesFactor::poch_plus(one(), shift, step)
}

/// `sum_{l(λ) <= k} q^{E(λ)} num(λ_1) / ((-q^s;q^s)_{λ_k} (q^s;q^s)_λ)` against a product.
///
/// `E(λ) = first(λ_1) + sum_{i >= 2} rest(λ_i)`.
pub struct RrIdentity {
    pub id: &'static str,
    pub description: &'static str,
    pub base: i64,
    pub first: fn(i64) -> i64,
    pub rest: fn(i64) -> i64,
    pub numerator: fn(usize, i64) -> IntSeries,
    pub rhs: fn(i64) -> ThetaProduct,
}

fn unit(_: usize, _: i64) -> IntSeries {
    IntSeries::one()
}

const TABLE: [RrIdentity; 12] = [
    RrIdentity {
        id: "krr1",
        description: "q^{|λ|+n2} over length <= k against (q^{2k+2},q^{2k+1},q;q^{2k+2})/(q)",
        base: 1,
        first: |p| p + p * p,
        rest: |p| p + p * p,
        numerator: unit,
        rhs: |k| ThetaProduct::theta(&[2 * k + 2, 2 * k + 1, 1], 2 * k + 2).over(minus(1, 1)),
    },
    RrIdentity {
        id: "krr2",
        description: "(-q)_{λ1} weighted sum against (-q)/(q) (q^{2k+1},q^{2k},q;q^{2k+1})",
        base: 1,
        first: |p| (p * p + p) / 2,
        rest: |p| p + p * p,
        numerator: |p, o| plus_poch(1, 1, p, o),
        rhs: |k| ThetaProduct::theta(&[2 * k + 1, 2 * k, 1], 2 * k + 1).times(plus(1, 1)).over(minus(1, 1)),
    },
    RrIdentity {
        id: "krr3",
        description: "base q^2 sum with (-q;q^2)_{λ1} against (-q;q^2)/(q^2;q^2) (q^{4k+2},q^{4k+1},q;q^{4k+2})",
        base: 2,
        first: |p| p * p + 2 * p,
        rest: |p| 2 * p + 2 * p * p,
        numerator: |p, o| plus_poch(1, 2, p, o),
        rhs: |k| ThetaProduct::theta(&[4 * k + 2, 4 * k + 1, 1], 4 * k + 2).times(plus(1, 2)).over(minus(2, 2)),
    },
    RrIdentity {
        id: "krr4",
        description: "base q^2 sum with (-q)_{2λ1} against (-q)/(q) (q^{4k},q^{4k-1},q;q^{4k})",
        base: 2,
        first: |p| p,
        rest: |p| 2 * p + 2 * p * p,
        numerator: |p, o| plus_poch(1, 1, 2 * p, o),
        rhs: |k| ThetaProduct::theta(&[4 * k, 4 * k - 1, 1], 4 * k).times(plus(1, 1)).over(minus(1, 1)),
    },
    RrIdentity {
        id: "krr5",
        description: "(-q)_{λ1}(1-q^{λ1}) weighted sum against (-q)/(q) (q^{2k+1},q^{2k-1},q^2;q^{2k+1})",
        base: 1,
        first: |p| (p * p - p) / 2,
        rest: |p| p + p * p,
        numerator: |p, o| plus_poch(1, 1, p, o).mul(&IntSeries::polynomial([(0, one()), (p as i64, -one())])),
        rhs: |k| ThetaProduct::theta(&[2 * k + 1, 2 * k - 1, 2], 2 * k + 1).times(plus(1, 1)).over(minus(1, 1)),
    },
    RrIdentity {
        id: "krr6",
        description: "q^{|λ|+n2-λ1} sum against (q^{2k+2},q^{2k},q^2;q^{2k+2})/(q)",
        base: 1,
        first: |p| p * p,
        rest: |p| p + p * p,
        numerator: unit,
        rhs: |k| ThetaProduct::theta(&[2 * k + 2, 2 * k, 2], 2 * k + 2).over(minus(1, 1)),
    },
    RrIdentity {
        id: "krr7",
        description: "base q^2 sum with exponent -λ1^2-2λ1 against (-q;q^2)/(q^2;q^2) (q^{4k+2},q^{4k-1},q^3;q^{4k+2})",
        base: 2,
        first: |p| p * p,
        rest: |p| 2 * p + 2 * p * p,
        numerator: |p, o| plus_poch(1, 2, p, o),
        rhs: |k| ThetaProduct::theta(&[4 * k + 2, 4 * k - 1, 3], 4 * k + 2).times(plus(1, 2)).over(minus(2, 2)),
    },
    RrIdentity {
        id: "krr8",
        description: "(1-q^{2λ1}) weighted sum against (q^{2k+2},q^{2k-1},q^3;q^{2k+2})/(q)",
        base: 1,
        first: |p| p * p - p,
        rest: |p| p + p * p,
        numerator: |p, _| IntSeries::polynomial([(0, one()), (2 * p as i64, -one())]),
        rhs: |k| ThetaProduct::theta(&[2 * k + 2, 2 * k - 1, 3], 2 * k + 2).over(minus(1, 1)),
    },
    RrIdentity {
        id: "krr9",
        description: "q^{n2} sum against (q^{2k+2},q^{k+1},q^{k+1};q^{2k+2})/(q)",
        base: 1,
        first: |p| p * p,
        rest: |p| p * p,
        numerator: unit,
        rhs: |k| ThetaProduct::theta(&[2 * k + 2, k + 1, k + 1], 2 * k + 2).over(minus(1, 1)),
    },
    RrIdentity {
        id: "krr10",
        description: "base q^2 sum q^{2n2-λ1^2}(-q;q^2)_{λ1} against (-q;q^2)/(q^2;q^2) (q^{4k+2},q^{2k+1},q^{2k+1};q^{4k+2})",
        base: 2,
        first: |p| p * p,
        rest: |p| 2 * p * p,
        numerator: |p, o| plus_poch(1, 2, p, o),
        rhs: |k| ThetaProduct::theta(&[4 * k + 2, 2 * k + 1, 2 * k + 1], 4 * k + 2).times(plus(1, 2)).over(minus(2, 2)),
    },
    RrIdentity {
        id: "krr11",
        description: "q^{n2-(λ1^2+λ1)/2}(-q)_{λ1} sum against (-1)/(q) (q^{2k+1},q^k,q^{k+1};q^{2k+1})",
        base: 1,
        first: |p| (p * p - p) / 2,
        rest: |p| p * p,
        numerator: |p, o| plus_poch(1, 1, p, o),
        rhs: |k| ThetaProduct::theta(&[2 * k + 1, k, k + 1], 2 * k + 1).times(plus(0, 1)).over(minus(1, 1)),
    },
    RrIdentity {
        id: "krr12",
        description: "q^{n2-λ1} sum against (-1)/(q^2;q^2) (q^{2k+2},q^k,q^{k+2};q^{2k+2})",
        base: 1,
        first: |p| p * p - p,
        rest: |p| p * p,
        numerator: unit,
        rhs: |k| ThetaProduct::theta(&[2 * k + 2, k, k + 2], 2 * k + 2).times(plus(0, 1)).over(minus(2, 2)),
    },
];

pub fn rr_ids() -> Vec<&'static str> {
    TABLE.iter().map(|r| r.id).collect()
}

pub fn rr_identity(id: &str) -> Option<&'static RrIdentity> {
    TABLE.iter().find(|r| r.id == id)
}

/// The partition sum through `q^order`.
pub fn rr_lhs(ident: &RrIdentity, k: usize, order: i64) -> Result<IntSeries, VerifyError> {
    let s = ident.base;
    let first = |p: usize| (ident.first)(p as i64);
    let rest = |p: usize| (ident.rest)(p as i64);
    let mut acc = IntSeries::zero_to(order);
    for lambda in enumerate_by_cost(k, first, rest, order) {
        let e = lambda_cost(ident, &lambda);
        let room = order - e;
        let gaps = pochhammer_partition_to(&minus(s, s), &lambda, room);
        let den = plus_poch(s, s, lambda.part(k), room).mul(&gaps);
        let num = (ident.numerator)(lambda.largest(), room);
        let inv = den.invert_to(room)?;
        acc = acc.add(&num.truncate(room).mul(&inv).shift(e));
    }
    Ok(acc)
}

fn lambda_cost(ident: &RrIdentity, lambda: &Partition) -> i64 {
    if lambda.is_empty() {
        return 0;
    }
    let parts = lambda.parts();
    (ident.first)(parts[0] as i64) + parts[1..].iter().map(|&p| (ident.rest)(p as i64)).sum::<i64>()
}

/// The product side through `q^order`.
pub fn rr_rhs(ident: &RrIdentity, k: usize, order: i64) -> Result<IntSeries, VerifyError> {
    Ok((ident.rhs)(k as i64).evaluate(order)?)
}

fn rr_spec(id: &str, description: &str, ks: &[usize], order: i64) -> super::IdentitySpec {
    spec(
        id,
        description,
        Strategy::QSeries,
        &[("k", ks.iter().copied().max().unwrap_or(0) as i64), ("q_order", order)],
    )
}

/// One family for each `k` listed, through `q^order`.
pub fn verify_rr(id: &str, ks: &[usize], order: i64, opts: &VerifyOptions) -> VerificationReport {
    let Some(ident) = rr_identity(id) else {
        let s = spec(id, "unknown", Strategy::QSeries, &[]);
        return VerificationReport::error(s, &VerifyError::UnknownId(id.to_string()));
    };
    let s = rr_spec(id, ident.description, ks, order);
    guarded(s, |s| {
        let mut ck = Checker::new(opts);
        for &k in ks {
            if k == 0 {
                return Err(VerifyError::Invalid("k must be positive".into()));
            }
            let lhs = rr_lhs(ident, k, order)?;
            let rhs = rr_rhs(ident, k, order)?;
            if !ck.series(&format!("k={k}"), &lhs, &rhs, 0, order)? {
                break;
            }
        }
        Ok(ck.finish(s.clone(), format!("q^{order}"), None))
    })
}

/// How a family arises from a master form: substitute `a`, `b` under
/// `q -> q^scale`, then take `sum_i mult_i [b^i]`; the result equals
/// `num/den` times the family's partition sum.
struct Derivation {
    id: &'static str,
    kind: MasterKind,
    scale: i64,
    a: Param,
    b: Param,
    /// `(i, multiplier)` with the multiplier as `(exponent, coefficient)` terms
    extraction: &'static [(u32, Terms)],
    normalizer: (Terms, Terms),
}

/// `(exponent, coefficient)` pairs of a Laurent polynomial in q
type Terms = &'static [(i64, i64)];

const A_HALF: Param = Param::Scaled { coeff: -1, exp: -1 };
const UNIT: Terms = &[(0, 1)];
const NO_NORM: (Terms, Terms) = (UNIT, UNIT);

const DERIVATIONS: [Derivation; 12] = [
    Derivation { id: "krr1", kind: MasterKind::Zq2, scale: 1, a: Param::Zero, b: Param::Zero, extraction: &[], normalizer: NO_NORM },
    Derivation { id: "krr2", kind: MasterKind::Zq2, scale: 1, a: A_HALF, b: Param::Zero, extraction: &[], normalizer: NO_NORM },
    Derivation { id: "krr3", kind: MasterKind::Zq2, scale: 2, a: A_HALF, b: Param::Zero, extraction: &[], normalizer: NO_NORM },
    Derivation {
        id: "krr4",
        kind: MasterKind::Zq2,
        scale: 2,
        a: A_HALF,
        b: Param::Scaled { coeff: -1, exp: -2 },
        extraction: &[],
        normalizer: NO_NORM,
    },
    Derivation {
        id: "krr5",
        kind: MasterKind::Zq2,
        scale: 1,
        a: A_HALF,
        b: Param::Formal,
        extraction: &[(1, &[(0, 1), (-1, -1)])],
        normalizer: NO_NORM,
    },
    Derivation {
        id: "krr6",
        kind: MasterKind::Zq2,
        scale: 1,
        a: Param::Zero,
        b: Param::Formal,
        extraction: &[(0, UNIT), (1, &[(0, 1), (-1, -1)])],
        normalizer: NO_NORM,
    },
    Derivation {
        id: "krr7",
        kind: MasterKind::Zq2,
        scale: 2,
        a: A_HALF,
        b: Param::Formal,
        extraction: &[(0, UNIT), (1, &[(0, 1), (-2, -1)])],
        normalizer: NO_NORM,
    },
    Derivation {
        id: "krr8",
        kind: MasterKind::Zq2,
        scale: 1,
        a: Param::Zero,
        b: Param::Formal,
        extraction: &[(1, UNIT), (2, &[(0, 1), (-1, -1)])],
        // this extraction gives -q^2/(1-q^2) times the family's weights
        normalizer: (&[(2, -1)], &[(0, 1), (2, -1)]),
    },
    Derivation { id: "krr9", kind: MasterKind::Zq, scale: 1, a: Param::Zero, b: Param::Zero, extraction: &[], normalizer: NO_NORM },
    Derivation { id: "krr10", kind: MasterKind::Zq, scale: 2, a: A_HALF, b: Param::Zero, extraction: &[], normalizer: NO_NORM },
    Derivation { id: "krr11", kind: MasterKind::Zq, scale: 1, a: A_HALF, b: Param::Zero, extraction: &[], normalizer: NO_NORM },
    Derivation {
        id: "krr12",
        kind: MasterKind::Zq,
        scale: 1,
        a: Param::Zero,
        b: Param::Formal,
        extraction: &[(0, UNIT), (1, &[(0, 1), (-1, -1)])],
        normalizer: NO_NORM,
    },
];

fn int_terms(terms: &[(i64, i64)]) -> IntSeries {
    IntSeries::polynomial(terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
}

fn apply_extraction(d: &Derivation, side: &AbSeries) -> Result<IntSeries, VerifyError> {
    let combined = if d.extraction.is_empty() {
        side.clone()
    } else {
        let mut acc = AbSeries::zero();
        for &(i, mult) in d.extraction {
            acc = acc.add(&side.b_coefficient(i).mul(&AbSeries::from_int(&int_terms(mult))));
        }
        acc
    };
    combined
        .to_int()
        .ok_or_else(|| VerifyError::Invalid(format!("{}: a formal symbol survived the specialization", d.id)))
}

/// Derives a family from its master form: the specialized master sides
/// agree with each other, and (after the normalizer) with the family's
/// partition sum and with its theta product.
pub fn verify_rr_derived(id: &str, ks: &[usize], order: i64, opts: &VerifyOptions) -> VerificationReport {
    let report_id = format!("{id}-derived");
    let Some(d) = DERIVATIONS.iter().find(|d| d.id == id) else {
        let s = spec(&report_id, "unknown", Strategy::QSeries, &[]);
        return VerificationReport::error(s, &VerifyError::UnknownId(id.to_string()));
    };
    let ident = rr_identity(id).expect("every derivation has a family");
    let s = rr_spec(&report_id, "family obtained from a specialized master form", ks, order);
    guarded(s, |s| {
        let mut ck = Checker::new(opts);
        let (num, den) = (int_terms(d.normalizer.0), int_terms(d.normalizer.1));
        // extraction multipliers carry q^-s; a margin keeps the window intact
        let margin = 2 * d.scale + 2;
        for &k in ks {
            let (ml, mr) = master_sides(d.kind, k, d.a, d.b, d.scale, order + margin)?;
            let ml = apply_extraction(d, &ml)?;
            let mr = apply_extraction(d, &mr)?;
            let label = format!("k={k}");
            if !ck.series(&format!("{label} master sides"), &ml, &mr, 0, order)? {
                break;
            }
            let direct_l = rr_lhs(ident, k, order + margin)?;
            let direct_r = rr_rhs(ident, k, order + margin)?;
            let scaled_l = product_truncated(&[ml.clone(), den.clone()], order);
            let scaled_r = product_truncated(&[mr.clone(), den.clone()], order);
            let target_l = product_truncated(&[direct_l, num.clone()], order);
            let target_r = product_truncated(&[direct_r, num.clone()], order);
            if !ck.series(&format!("{label} partition sum"), &scaled_l, &target_l, 0, order)? {
                break;
            }
            if !ck.series(&format!("{label} product"), &scaled_r, &target_r, 0, order)? {
                break;
            }
        }
        Ok(ck.finish(s.clone(), format!("q^{order}"), None))
    })
}

/// Single sums at `k = 1`: `sum q^{n^2+2n}(-q;q^2)_n/(q^4;q^4)_n`,
/// `sum q^{n^2}/(q^2;q^2)_n` and `sum q^{n^2}(-q;q^2)_n/(q^4;q^4)_n`.
pub fn verify_k1_reductions(order: i64, opts: &VerifyOptions) -> VerificationReport {
    let s = spec("k1-reductions", "three single-sum identities at k = 1", Strategy::QSeries, &[("q_order", order)]);
    guarded(s, |s| {
        let mut ck = Checker::new(opts);
        type Case = (&'static str, fn(i64) -> i64, bool, i64, ThetaProduct);
        let cases: [Case; 3] = [
            (
                "rr3",
                |n| n * n + 2 * n,
                true,
                4,
                ThetaProduct::theta(&[1, 5, 6], 6).times(plus(1, 2)).over(minus(2, 2)),
            ),
            ("rr6", |n| n * n, false, 2, ThetaProduct::theta(&[2, 2, 4], 4).over(minus(1, 1))),
            (
                "rr7",
                |n| n * n,
                true,
                4,
                ThetaProduct::theta(&[3, 3, 6], 6).times(plus(1, 2)).over(minus(2, 2)),
            ),
        ];
        for (name, exponent, odd_weight, den_step, product) in cases {
            let lhs = single_sum(exponent, odd_weight, den_step, order)?;
            let rhs = product.evaluate(order)?;
            if !ck.series(name, &lhs, &rhs, 0, order)? {
                break;
            }
        }
        Ok(ck.finish(s.clone(), format!("q^{order}"), None))
    })
}

/// `sum_n q^{exponent(n)} [(-q;q^2)_n] / (q^d;q^d)_n`.
fn single_sum(exponent: fn(i64) -> i64, odd_weight: bool, den_step: i64, order: i64) -> Result<IntSeries, VerifyError> {
    let mut acc = IntSeries::zero_to(order);
    let mut n = 0i64;
    while exponent(n) < order {
        let e = exponent(n);
        let num = if odd_weight { plus_poch(1, 2, n as usize, order - e) } else { IntSeries::one() };
        let inv = minus(den_step, den_step).pochhammer_finite(n as usize).invert_to(order - e)?;
        acc = acc.add(&num.truncate(order - e).mul(&inv).shift(e));
        n += 1;
    }
    Ok(acc)
}

/// The `k = 1` single sum named `rr6`, used by the command line dump.
pub fn rr6_lhs(order: i64) -> Result<IntSeries, VerifyError> {
    single_sum(|n| n * n, false, 2, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_family_at_small_order() {
        for id in rr_ids() {
            let r = verify_rr(id, &[1, 2], 20, &VerifyOptions::default());
            assert!(r.is_match(), "{r:?}");
        }
    }

    #[test]
    fn derivations_at_small_order() {
        for id in rr_ids() {
            let r = verify_rr_derived(id, &[1, 2], 15, &VerifyOptions::default());
            assert!(r.is_match(), "{r:?}");
        }
    }

    #[test]
    fn single_b_coefficient_is_not_krr12() {
        let d = Derivation { extraction: &[(1, &[(0, 1), (-1, -1)])], ..DERIVATIONS[11] };
        let (ml, _) = master_sides(d.kind, 1, d.a, d.b, d.scale, 10).unwrap();
        let got = apply_extraction(&d, &ml).unwrap();
        let krr12 = rr_lhs(rr_identity("krr12").unwrap(), 1, 10).unwrap();
        let krr9 = rr_lhs(rr_identity("krr9").unwrap(), 1, 10).unwrap();
        assert_eq!(got.truncate(8), krr12.sub(&krr9).truncate(8));
    }

    #[test]
    fn unknown_family_reports_error() {
        assert_eq!(verify_rr("krr13", &[1], 10, &VerifyOptions::default()).status, super::super::Status::Error);
        assert_eq!(verify_rr_derived("krr13", &[1], 10, &VerifyOptions::default()).status, super::super::Status::Error);
    }
}
