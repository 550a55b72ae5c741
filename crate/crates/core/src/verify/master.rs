//! Identities with two formal parameters `a`, `b`: the bivariate `(z, q)`
//! identity with `(a,b;q^-1)_{λ_1}` weights, its two master forms at
//! `z = q^2` and `z = q`, and the unrestricted-length version.

use num_bigint::BigInt;

use super::bivariate::{z_poch_finite, z_poch_infinite, Bivariate};
use super::{guarded, spec, Checker, Strategy, VerificationReport, VerifyError, VerifyOptions};
use crate::partitions::{enumerate, enumerate_by_cost, Bounds, Partition};
use crate::qcomb::pochhammer_partition_sym;
use crate::series::{product_truncated, ABPoly, AbSeries, Coefficient, IntSeries, QLaurentSeries, SeriesFactor};

/// A value substituted for `a` or `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Param {
    Zero,
    /// the formal symbol itself
    Formal,
    /// `coeff * q^exp`
    Scaled { coeff: i64, exp: i64 },
}

impl Param {
    fn split(self, symbol: &ABPoly) -> (ABPoly, i64) {
        match self {
            Param::Zero => (<ABPoly as Coefficient>::zero(), 0),
            Param::Formal => (symbol.clone(), 0),
            Param::Scaled { coeff, exp } => (ABPoly::constant(BigInt::from(coeff)), exp),
        }
    }

    fn exp(self) -> Option<i64> {
        match self {
            Param::Zero => None,
            Param::Formal => Some(0),
            Param::Scaled { exp, .. } => Some(exp),
        }
    }

    /// Lowest `q`-exponent of `(x; q^-s)_p` for this value of `x`.
    fn falling_valuation(self, p: usize, s: i64) -> i64 {
        match self.exp() {
            None => 0,
            Some(e) => (0..p as i64).map(|j| (e - s * j).min(0)).sum(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MasterKind {
    /// the specialization `z = q^2`
    Zq2,
    /// the specialization `z = q`
    Zq,
}

impl MasterKind {
    pub fn name(self) -> &'static str {
        match self {
            MasterKind::Zq2 => "zq2",
            MasterKind::Zq => "zq",
        }
    }

    fn part_cost(self, p: usize, s: i64) -> i64 {
        let p = p as i64;
        match self {
            MasterKind::Zq2 => s * (p + p * p),
            MasterKind::Zq => s * p * p,
        }
    }
}

/// Lowest `q`-exponent of `(x q^shift; q^step)_∞` with nonzero `x`.
fn factor_valuation(shift: i64, step: i64) -> i64 {
    let mut total = 0;
    let mut e = shift;
    while e < 0 {
        total += e;
        e += step;
    }
    total
}

/// `prod(finite) * prod(infinite factors)` known through `q^order`; each
/// entry of `infinite` is `(factor, reciprocal)`.
fn product_with_infinite(
    finite: &[AbSeries],
    infinite: &[(SeriesFactor<ABPoly>, bool)],
    order: i64,
) -> Result<AbSeries, VerifyError> {
    if finite.iter().any(|f| f.is_exact() && f.is_zero()) {
        return Ok(AbSeries::zero());
    }
    let finite_val: i64 = finite.iter().map(|f| f.min_exp()).sum();
    let vals: Vec<i64> = infinite
        .iter()
        .map(|(f, recip)| {
            if f.coeff.is_zero() {
                0
            } else {
                let v = factor_valuation(f.q_shift, f.step);
                if *recip {
                    -v
                } else {
                    v
                }
            }
        })
        .collect();
    let total: i64 = vals.iter().sum();
    let mut parts: Vec<AbSeries> = finite.to_vec();
    for ((f, recip), v) in infinite.iter().zip(&vals) {
        let need = order - finite_val - (total - v);
        parts.push(if *recip { f.reciprocal_infinite(need)? } else { f.pochhammer_infinite(need)? });
    }
    Ok(product_truncated(&parts, order))
}

/// Lowest `q`-exponent of `(x q^e; q^-s)_p` for nonzero `x`.
fn falling_floor(x: &(ABPoly, i64), s: i64, p: usize) -> i64 {
    if x.0.is_zero() {
        0
    } else {
        (0..p as i64).map(|j| (x.1 - s * j).min(0)).sum()
    }
}

/// `(x q^e; q^-s)_p` known below `q^bound`. Partial products are pruned as
/// soon as the remaining factors can no longer bring a term under `bound`.
fn falling_below(x: &(ABPoly, i64), s: i64, p: usize, bound: i64) -> AbSeries {
    if x.0.is_zero() || p == 0 {
        return AbSeries::one().truncate(bound);
    }
    let drops: Vec<i64> = (0..p as i64).map(|j| (x.1 - s * j).min(0)).collect();
    let mut remaining: i64 = drops.iter().sum();
    let neg = x.0.neg_ref();
    let mut acc: std::collections::BTreeMap<i64, ABPoly> = [(0i64, <ABPoly as Coefficient>::one())].into();
    for (j, drop) in drops.iter().enumerate() {
        remaining -= drop;
        let e = x.1 - s * j as i64;
        let mut next: std::collections::BTreeMap<i64, ABPoly> = std::collections::BTreeMap::new();
        for (t, c) in &acc {
            for (exp, coeff) in [(*t, c.clone()), (t + e, c.mul_ref(&neg))] {
                if exp + remaining >= bound {
                    continue;
                }
                let slot = next.entry(exp).or_insert_with(<ABPoly as Coefficient>::zero);
                *slot = slot.add_ref(&coeff);
            }
        }
        next.retain(|_, c| !c.is_zero());
        acc = next;
    }
    AbSeries::from_terms(acc, Some(bound))
}

/// `(x; q^-s)_p (y; q^-s)_p` for the two parameter values, known below `q^bound`.
fn falling_pair(a: &(ABPoly, i64), b: &(ABPoly, i64), s: i64, p: usize, bound: i64) -> AbSeries {
    let fa = falling_below(a, s, p, bound - falling_floor(b, s, p));
    let fb = falling_below(b, s, p, bound - falling_floor(a, s, p));
    fa.mul(&fb).truncate(bound)
}

/// `(-q^s; q^s)_{λ_k} (q^s; q^s)_λ`.
fn restricted_denominator(lambda: &Partition, k: usize, s: i64) -> IntSeries {
    let head = SeriesFactor::poch_plus(BigInt::from(1), s, s).pochhammer_finite(lambda.part(k));
    head.mul(&pochhammer_partition_sym(-1, s, lambda, s))
}

/// Both sides of a master form under `q -> q^scale`, with `a` and `b`
/// replaced as given (exponents already refer to the scaled variable).
pub fn master_sides(
    kind: MasterKind,
    k: usize,
    a: Param,
    b: Param,
    scale: i64,
    order: i64,
) -> Result<(AbSeries, AbSeries), VerifyError> {
    if k == 0 || scale < 1 {
        return Err(VerifyError::Invalid(format!("need k >= 1 and scale >= 1, got k={k}, scale={scale}")));
    }
    let s = scale;
    let (av, bv) = (a.split(&ABPoly::a()), b.split(&ABPoly::b()));
    let first = |p: usize| kind.part_cost(p, s) + a.falling_valuation(p, s) + b.falling_valuation(p, s);
    let rest = |p: usize| kind.part_cost(p, s);
    let mut top = 1;
    while first(top) < order {
        top += 1;
    }
    if (1..top + 8).any(|p| first(p + 1) < first(p)) {
        return Err(VerifyError::Invalid("partition cost is not monotone for these parameters".into()));
    }

    let mut lhs = AbSeries::zero_to(order);
    for lambda in enumerate_by_cost(k, first, rest, order) {
        let exponent: i64 = lambda.parts().iter().map(|&p| kind.part_cost(p, s)).sum();
        let num = falling_pair(&av, &bv, s, lambda.largest(), order - exponent).shift(exponent);
        if num.is_zero() {
            continue;
        }
        let v = num.min_exp();
        let inv = restricted_denominator(&lambda, k, s).invert_to(order - v)?;
        lhs = lhs.add(&num.truncate(order).mul(&AbSeries::from_int(&inv)));
    }

    let one = <ABPoly as Coefficient>::one();
    let ab = (av.0.mul_ref(&bv.0), av.1 + bv.1);
    let pref_ab = match kind {
        MasterKind::Zq2 => ab.1 + 2 * s,
        MasterKind::Zq => ab.1 + s,
    };
    let prefix = [
        (SeriesFactor::poch(one.clone(), s, s), true),
        (SeriesFactor::poch(ab.0.clone(), pref_ab, s), true),
    ];
    let prefix_val: i64 = if ab.0.is_zero() { 0 } else { -factor_valuation(pref_ab, s) };
    let work = order - prefix_val;

    let k = k as i64;
    let term_floor = |r: i64| -> i64 {
        let main = match kind {
            MasterKind::Zq2 => s * ((2 * k + 1) * r + (2 * k + 2) * (r * (r - 1) / 2)),
            MasterKind::Zq => s * (k + 1) * r * r,
        };
        let tail_shift = match kind {
            MasterKind::Zq2 => s * (r + 2),
            MasterKind::Zq => s * (r + 1),
        };
        let tails: i64 = [a.exp(), b.exp()].iter().flatten().map(|e| factor_valuation(e + tail_shift, s)).sum();
        main + a.falling_valuation(r as usize, s) + b.falling_valuation(r as usize, s) + tails
    };
    let mut sum = AbSeries::zero_to(work);
    let mut r = 0i64;
    loop {
        let floor = term_floor(r);
        if floor >= work && term_floor(r + 1) >= floor {
            break;
        }
        if floor < work {
            let sign = if r % 2 == 0 { 1 } else { -1 };
            let (main, tail_shift, weight) = match kind {
                MasterKind::Zq2 => (s * ((2 * k + 1) * r + (2 * k + 2) * (r * (r - 1) / 2)), s * (r + 2), sign),
                MasterKind::Zq => (s * (k + 1) * r * r, s * (r + 1), if r == 0 { 1 } else { 2 * sign }),
            };
            let mut fin = falling_pair(&av, &bv, s, r as usize, work - main)
                .shift(main)
                .scale(&ABPoly::constant(BigInt::from(weight)));
            if kind == MasterKind::Zq2 {
                fin = fin.mul(&AbSeries::polynomial([(0, one.clone()), (s * (2 * r + 1), one.neg_ref())]));
            }
            let tails = [
                (SeriesFactor::poch(av.0.clone(), av.1 + tail_shift, s), false),
                (SeriesFactor::poch(bv.0.clone(), bv.1 + tail_shift, s), false),
            ];
            sum = sum.add(&product_with_infinite(&[fin], &tails, work)?);
        }
        r += 1;
    }
    let rhs = product_with_infinite(&[sum], &prefix, order)?;
    Ok((lhs, rhs))
}

/// A master form with formal `a` and `b` through `q^order`, for each `k` listed.
pub fn verify_master(kind: MasterKind, ks: &[usize], order: i64, opts: &VerifyOptions) -> VerificationReport {
    let id = format!("master-{}", kind.name());
    let what = match kind {
        MasterKind::Zq2 => "bivariate identity at z = q^2, formal a and b",
        MasterKind::Zq => "bivariate identity at z = q, formal a and b",
    };
    let s = spec(&id, what, Strategy::QSeries, &[("k", ks.iter().copied().max().unwrap_or(0) as i64), ("q_order", order)]);
    guarded(s, |s| {
        let mut ck = Checker::new(opts);
        for &k in ks {
            let (lhs, rhs) = master_sides(kind, k, Param::Formal, Param::Formal, 1, order)?;
            if !ck.series(&format!("k={k}"), &lhs, &rhs, 0, order)? {
                break;
            }
        }
        Ok(ck.finish(s.clone(), format!("q^{order}"), None))
    })
}

/// `q^{2n(λ)} (a,b;q^-1)_{λ_1} / den(λ)` known through `q^hi`.
fn weighted_term<C: Coefficient>(lambda: &Partition, a: &C, b: &C, den: &IntSeries, hi: i64) -> Result<QLaurentSeries<C>, VerifyError> {
    let p = lambda.largest();
    let num = SeriesFactor::poch(a.clone(), 0, -1)
        .pochhammer_finite(p)
        .mul(&SeriesFactor::poch(b.clone(), 0, -1).pochhammer_finite(p))
        .shift(2 * lambda.n_stat() as i64);
    let v = num.min_exp();
    if v >= hi {
        return Ok(QLaurentSeries::zero_to(hi));
    }
    let inv = den.invert_to(hi - v)?;
    Ok(num.truncate(hi).mul(&inv.lift()))
}

fn partitions_of(m: usize, max_length: Option<usize>) -> Vec<Partition> {
    enumerate(Bounds { weight: Some(m), max_length, ..Default::default() }).expect("bounded by weight")
}

/// Both sides of the `(z, q)` identity for partitions with at most `k` parts:
/// `sum z^{|λ|} q^{2n(λ)} (a,b;q^-1)_{λ_1} / ((-q)_{λ_k} (q)_λ)` against
/// `(-z/q)_∞/(abz)_∞ sum_r (-1)^r z^{kr} q^{r+(2k+2)C(r,2)} (a,b;q^-1)_r/(q^2;q^2)_r
///  (azq^r, bzq^r)_∞/(z^2 q^{2r-2};q^2)_∞ (1 - z q^{2r-1})`.
///
/// Every `z`-coefficient of both sides is known through `q^hi`.
pub fn ab_sides<C: Coefficient>(k: usize, z_order: usize, a: &C, b: &C, hi: i64) -> Result<(Bivariate<C>, Bivariate<C>), VerifyError> {
    if k == 0 {
        return Err(VerifyError::Invalid("k must be positive".into()));
    }
    let mut lhs = Vec::with_capacity(z_order);
    for m in 0..z_order {
        let mut c = QLaurentSeries::zero_to(hi);
        for lambda in partitions_of(m, Some(k)) {
            c = c.add(&weighted_term(&lambda, a, b, &restricted_denominator(&lambda, k, 1), hi)?);
        }
        lhs.push(c);
    }
    let lhs = Bivariate::from_coeffs(lhs);

    let one = C::one();
    let minus_one = one.neg_ref();
    let ab = a.mul_ref(b);
    let mut work = hi + 2 * z_order as i64;
    for _ in 0..8 {
        let prefix = z_poch_infinite(z_order, &minus_one, 1, -1, 1, false, work)
            .mul(&z_poch_infinite(z_order, &ab, 1, 0, 1, true, work));
        let mut sum = Bivariate::zero(z_order);
        let mut r = 0usize;
        while k * r < z_order {
            let ri = r as i64;
            let sign = if r.is_multiple_of(2) { one.clone() } else { minus_one.clone() };
            let fin = SeriesFactor::poch(a.clone(), 0, -1)
                .pochhammer_finite(r)
                .mul(&SeriesFactor::poch(b.clone(), 0, -1).pochhammer_finite(r))
                .shift(ri + (2 * k as i64 + 2) * (ri * (ri - 1) / 2))
                .scale(&sign);
            let v = fin.min_exp();
            let inv = SeriesFactor::poch(BigInt::from(1), 2, 2).pochhammer_finite(r).invert_to(work - v)?;
            let c = fin.truncate(work).mul(&inv.lift());
            let term = Bivariate::monomial(z_order, k * r, c)
                .mul(&z_poch_infinite(z_order, a, 1, ri, 1, false, work))
                .mul(&z_poch_infinite(z_order, b, 1, ri, 1, false, work))
                .mul(&z_poch_infinite(z_order, &one, 2, 2 * ri - 2, 2, true, work))
                .mul(&z_poch_finite(z_order, &one, 1, 2 * ri - 1, 1, 1));
            sum = sum.add(&term);
            r += 1;
        }
        let rhs = prefix.mul(&sum);
        match rhs.min_order() {
            Some(o) if o < hi => work += (hi - o).max(4),
            _ => return Ok((lhs, rhs.truncate_q(hi))),
        }
    }
    Err(VerifyError::WindowTooNarrow(format!("right side did not reach q^{hi}")))
}

/// The `(z, q)` identity with formal `a`, `b`, for each `k` listed, on the window `lo <= e < hi`.
pub fn verify_ab_master(ks: &[usize], z_order: usize, lo: i64, hi: i64, opts: &VerifyOptions) -> VerificationReport {
    let s = spec(
        "ab-master",
        "(z,q) identity with (a,b;q^-1) weights over partitions of length at most k",
        Strategy::ZqBivariate,
        &[
            ("k", ks.iter().copied().max().unwrap_or(0) as i64),
            ("z_order", z_order as i64),
            ("q_lo", lo),
            ("q_order", hi),
        ],
    );
    guarded(s, |s| {
        if lo > 0 || hi <= 0 {
            return Err(VerifyError::Invalid(format!("window must satisfy lo <= 0 < hi, got ({lo}, {hi})")));
        }
        let mut ck = Checker::new(opts);
        for &k in ks {
            let (lhs, rhs) = ab_sides(k, z_order, &ABPoly::a(), &ABPoly::b(), hi)?;
            if !ck.bivariate(&format!("k={k}"), &lhs, &rhs, lo, hi)? {
                break;
            }
        }
        Ok(ck.finish(s.clone(), format!("z^{} q^{hi}", z_order - 1), None))
    })
}

/// Both sides of `sum_λ z^{|λ|} q^{2n(λ)} (a,b;q^-1)_{λ_1}/(q)_λ = (az,bz)_∞/(z,abz)_∞`.
pub fn abext_sides<C: Coefficient>(z_order: usize, a: &C, b: &C, hi: i64) -> Result<(Bivariate<C>, Bivariate<C>), VerifyError> {
    let mut lhs = Vec::with_capacity(z_order);
    for m in 0..z_order {
        let mut c = QLaurentSeries::zero_to(hi);
        for lambda in partitions_of(m, None) {
            let den = pochhammer_partition_sym(-1, 1, &lambda, 1);
            c = c.add(&weighted_term(&lambda, a, b, &den, hi)?);
        }
        lhs.push(c);
    }
    let one = C::one();
    let rhs = z_poch_infinite(z_order, a, 1, 0, 1, false, hi)
        .mul(&z_poch_infinite(z_order, b, 1, 0, 1, false, hi))
        .mul(&z_poch_infinite(z_order, &one, 1, 0, 1, true, hi))
        .mul(&z_poch_infinite(z_order, &a.mul_ref(b), 1, 0, 1, true, hi));
    Ok((Bivariate::from_coeffs(lhs), rhs.truncate_q(hi)))
}

/// The unrestricted-length identity with formal `a`, `b`; also its `a = b = 0` case.
pub fn verify_abext(z_order: usize, lo: i64, hi: i64, opts: &VerifyOptions) -> VerificationReport {
    let s = spec(
        "abext",
        "sum over all partitions with (a,b;q^-1) weights against (az,bz)/(z,abz)",
        Strategy::ZqBivariate,
        &[("z_order", z_order as i64), ("q_lo", lo), ("q_order", hi)],
    );
    guarded(s, |s| {
        let mut ck = Checker::new(opts);
        let (lhs, rhs) = abext_sides(z_order, &ABPoly::a(), &ABPoly::b(), hi)?;
        if ck.bivariate("formal a,b", &lhs, &rhs, lo, hi)? {
            let zero = BigInt::from(0);
            let (l0, r0) = abext_sides(z_order, &zero, &zero, hi)?;
            ck.bivariate("a=b=0", &l0, &r0, lo, hi)?;
        }
        Ok(ck.finish(s.clone(), format!("z^{} q^{hi}", z_order - 1), None))
    })
}
