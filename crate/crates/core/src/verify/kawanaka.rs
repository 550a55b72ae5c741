//! Identities for sums of Hall-Littlewood polynomials: degreewise
//! comparisons of polynomials in `x`, and the finite identity compared at
//! exact rational points.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{guarded, spec, Checker, Strategy, VerificationReport, VerifyError, VerifyOptions};
use crate::hl::{hl_oracle, minus_q_multiplicity_weight, phi_eval, HlTable, PointSampler, QPoly};
use crate::partitions::{enumerate, Bounds, Partition};
use crate::series::IntSeries;

fn q_mono(c: i64, e: i64) -> IntSeries {
    IntSeries::monomial(BigInt::from(c), e)
}

fn exps_of(nvars: usize, idx: &[usize]) -> Vec<u32> {
    let mut e = vec![0u32; nvars];
    for &i in idx {
        e[i] += 1;
    }
    e
}

/// `1 + c x^e`.
fn linear(nvars: usize, e: Vec<u32>, c: IntSeries) -> QPoly {
    QPoly::one(nvars).add(&QPoly::monomial(e, c))
}

/// `1/(1 - x^e)` through x-degree `degree`.
fn geometric(nvars: usize, e: &[u32], degree: u32) -> QPoly {
    let d: u32 = e.iter().sum();
    let mut out = QPoly::zero(nvars);
    let mut j = 0u32;
    while j * d <= degree {
        out.add_term(e.iter().map(|k| k * j).collect(), &IntSeries::one());
        j += 1;
    }
    out
}

/// Multiplies out `factors`, keeping total x-degree at most `degree`.
fn product(nvars: usize, factors: &[QPoly], degree: u32) -> QPoly {
    factors.iter().fold(QPoly::one(nvars), |acc, f| acc.mul_to_degree(f, degree))
}

/// `Φ(X) = prod_i (1 + q x_i)/(1 - x_i) prod_{i<j} (1 - q^2 x_i x_j)/(1 - x_i x_j)` through `degree`.
pub fn phi_expansion(n: usize, degree: u32) -> QPoly {
    let mut factors = Vec::new();
    for i in 0..n {
        factors.push(linear(n, exps_of(n, &[i]), q_mono(1, 1)));
        factors.push(geometric(n, &exps_of(n, &[i]), degree));
    }
    for (i, j) in (0..n).tuple_combinations() {
        factors.push(linear(n, exps_of(n, &[i, j]), q_mono(-1, 2)));
        factors.push(geometric(n, &exps_of(n, &[i, j]), degree));
    }
    product(n, &factors, degree)
}

fn partitions_up_to(max_weight: usize, max_length: usize) -> Vec<Partition> {
    enumerate(Bounds { max_weight: Some(max_weight), max_length: Some(max_length), ..Default::default() })
        .expect("bounded by weight")
}

fn degree_spec(id: &str, description: &str, ns: &[usize], degree: u32) -> super::IdentitySpec {
    spec(
        id,
        description,
        Strategy::MpolyDegreewise,
        &[("n", ns.iter().copied().max().unwrap_or(0) as i64), ("degree", degree as i64)],
    )
}

/// `sum_λ prod_i (-q)_{m_i(λ)} P_λ(X; q^2) = Φ(X)` in every x-degree up to `degree`.
pub fn verify_kawanaka(ns: &[usize], degree: u32, opts: &VerifyOptions) -> VerificationReport {
    let s = degree_spec("kawanaka", "sum of (-q)_{m_i} weighted P_λ(X;q^2) against the product Φ", ns, degree);
    guarded(s, |s| {
        let mut ck = Checker::new(opts);
        for &n in ns.iter().rev() {
            let mut table = HlTable::new(true);
            let mut lhs = QPoly::zero(n);
            for lambda in partitions_up_to(degree as usize, n) {
                let w = minus_q_multiplicity_weight(&lambda, None);
                lhs = lhs.add(&table.get(&lambda, n).scale(&w));
            }
            let rhs = phi_expansion(n, degree);
            if !ck.mpoly(&format!("n={n}"), &lhs, &rhs, degree)? {
                break;
            }
        }
        Ok(ck.finish(s.clone(), format!("x-degree {degree}"), None))
    })
}

/// The finite identity
/// `sum_{λ_1<=k, l(λ)<=n} prod_{i<k} (-q)_{m_i} P_λ(X;q^2) = sum_ξ Φ(X^ξ) prod_i x_i^{k(1-ξ_i)/2}`
/// at `points` seeded rational points per `(n, k)`; `fixed_q` pins `q`.
pub fn verify_finite_box(
    instances: &[(usize, usize)],
    points: usize,
    seed: u64,
    fixed_q: Option<BigRational>,
    opts: &VerifyOptions,
) -> VerificationReport {
    let max_n = instances.iter().map(|p| p.0).max().unwrap_or(0);
    let max_k = instances.iter().map(|p| p.1).max().unwrap_or(0);
    let mut params = vec![("n", max_n as i64), ("k", max_k as i64), ("points", points as i64), ("seed", seed as i64)];
    if fixed_q.as_ref().is_some_and(|q| q.is_zero()) {
        params.push(("q_fixed_zero", 1));
    }
    let s = spec(
        "kawanaka-finite",
        "finite sum over λ in an n-by-k box against the signed sum of Φ(X^ξ); exact evaluation at random rational points",
        Strategy::RationalPoint,
        &params,
    );
    guarded(s, |s| {
        let mut ck = Checker::new(opts);
        'outer: for &(n, k) in instances {
            if n == 0 || k == 0 {
                return Err(VerifyError::Invalid("n and k must be positive".into()));
            }
            let mut table = HlTable::new(true);
            let mut lhs_poly = QPoly::zero(n);
            for lambda in enumerate(Bounds { max_part: Some(k), max_length: Some(n), ..Default::default() })
                .map_err(|e| VerifyError::Invalid(e.to_string()))?
            {
                let w = minus_q_multiplicity_weight(&lambda, Some(k - 1));
                lhs_poly = lhs_poly.add(&table.get(&lambda, n).scale(&w));
            }
            let signs: Vec<Vec<i8>> = (0..n).map(|_| [1i8, -1]).multi_cartesian_product().collect();
            let mut sampler = PointSampler::new(seed.wrapping_add((n as u64) << 16).wrapping_add(k as u64));
            if let Some(q) = &fixed_q {
                sampler = sampler.with_fixed_q(q.clone());
            }
            for i in 0..points {
                let (pt, rhs) = sampler.sample_where(n, 200, |pt| {
                    let mut acc = BigRational::zero();
                    for xi in &signs {
                        acc += phi_eval(xi, pt, k as u32)?;
                    }
                    Ok(acc)
                })?;
                let lhs = lhs_poly.eval(&pt.xs, &pt.q);
                if !ck.value(&format!("n={n} k={k}"), i, points, lhs, rhs) {
                    break 'outer;
                }
            }
        }
        Ok(ck.finish(s.clone(), format!("{points} points per instance"), Some("probabilistic-exact: exact arithmetic at random points".into())))
    })
}

/// `sum_μ P_μ(X;t) = prod_i 1/(1-x_i) prod_{i<j} (1 - t x_i x_j)/(1 - x_i x_j)` for `t = q` and `t = q^2`.
pub fn verify_hl_summation(ns: &[usize], degree: u32, opts: &VerifyOptions) -> VerificationReport {
    let s = degree_spec("hl-summation", "sum of all P_μ(X;t) against its product, t = q and t = q^2", ns, degree);
    guarded(s, |s| {
        let mut ck = Checker::new(opts);
        'outer: for &n in ns.iter().rev() {
            for q_square in [false, true] {
                let mut table = HlTable::new(q_square);
                let mut lhs = QPoly::zero(n);
                for lambda in partitions_up_to(degree as usize, n) {
                    lhs = lhs.add(&table.get(&lambda, n));
                }
                let t = table.t_power();
                let mut factors = Vec::new();
                for i in 0..n {
                    factors.push(geometric(n, &exps_of(n, &[i]), degree));
                }
                for (i, j) in (0..n).tuple_combinations() {
                    factors.push(linear(n, exps_of(n, &[i, j]), q_mono(-1, t)));
                    factors.push(geometric(n, &exps_of(n, &[i, j]), degree));
                }
                let rhs = product(n, &factors, degree);
                if !ck.mpoly(&format!("n={n} t=q^{t}"), &lhs, &rhs, degree)? {
                    break 'outer;
                }
            }
        }
        Ok(ck.finish(s.clone(), format!("x-degree {degree}"), None))
    })
}

/// `prod` over cells with arm 0 and even leg of `(1 - q^{leg+1})`.
fn arm_zero_weight(lambda: &Partition) -> IntSeries {
    let conj = lambda.conjugate();
    let mut acc = IntSeries::one();
    for (i, &p) in lambda.parts().iter().enumerate() {
        let leg = conj.part(p) - (i + 1);
        if leg.is_multiple_of(2) {
            acc = acc.mul(&IntSeries::polynomial([(0, BigInt::from(1)), (leg as i64 + 1, BigInt::from(-1))]));
        }
    }
    acc
}

/// `sum_λ q^{o(λ)/2} prod_{a(v)=0, l(v) even} (1 - q^{l(v)+1}) P_λ(X;q) = prod_{i<=j} (1 - q x_i x_j)/(1 - x_i x_j)`,
/// summed over `λ` whose odd parts have even multiplicity.
pub fn verify_kawanaka2(ns: &[usize], degree: u32, opts: &VerifyOptions) -> VerificationReport {
    let s = degree_spec(
        "kawanaka2",
        "sum over λ with even multiplicities of odd parts against prod_{i<=j} (1 - q x_i x_j)/(1 - x_i x_j)",
        ns,
        degree,
    );
    guarded(s, |s| {
        let mut ck = Checker::new(opts);
        for &n in ns.iter().rev() {
            let mut table = HlTable::new(false);
            let mut lhs = QPoly::zero(n);
            for lambda in partitions_up_to(degree as usize, n) {
                let mult = lambda.multiplicities();
                if mult.iter().enumerate().any(|(i, &m)| i % 2 == 1 && m % 2 == 1) {
                    continue;
                }
                let odd = lambda.odd_parts();
                if odd % 2 != 0 {
                    return Err(VerifyError::Invalid(format!("odd number of odd parts in {lambda}")));
                }
                let w = arm_zero_weight(&lambda).shift(odd as i64 / 2);
                lhs = lhs.add(&table.get(&lambda, n).scale(&w));
            }
            let mut factors = Vec::new();
            for (i, j) in (0..n).tuple_combinations_with_replacement() {
                factors.push(linear(n, exps_of(n, &[i, j]), q_mono(-1, 1)));
                factors.push(geometric(n, &exps_of(n, &[i, j]), degree));
            }
            let rhs = product(n, &factors, degree);
            if !ck.mpoly(&format!("n={n}"), &lhs, &rhs, degree)? {
                break;
            }
        }
        Ok(ck.finish(s.clone(), format!("x-degree {degree}"), None))
    })
}

trait PairsWithReplacement: Iterator<Item = usize> + Sized + Clone {
    fn tuple_combinations_with_replacement(self) -> std::vec::IntoIter<(usize, usize)> {
        let items: Vec<usize> = self.collect();
        let mut out = Vec::new();
        for (a, &i) in items.iter().enumerate() {
            for &j in &items[a..] {
                out.push((i, j));
            }
        }
        out.into_iter()
    }
}

impl<I: Iterator<Item = usize> + Clone> PairsWithReplacement for I {}

/// The two readings of `n(λ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Convention {
    /// `sum (i-1) λ_i`
    RowIndex,
    /// `sum C(λ_i, 2)`
    Binomial,
}

impl Convention {
    fn apply(self, lambda: &Partition) -> i64 {
        match self {
            Convention::RowIndex => lambda.n_macdonald() as i64,
            Convention::Binomial => lambda.n_stat() as i64,
        }
    }

    fn describe(self) -> &'static str {
        match self {
            Convention::RowIndex => "n(λ) = sum (i-1) λ_i",
            Convention::Binomial => "n(λ) = sum C(λ_i, 2)",
        }
    }
}

/// `sum_λ q^{n(λ)} prod_{j=1}^{l(λ)} (1 + q^{1-j} y) P_λ(X;q) = prod_i (1 + x_i y)/(1 - x_i)`,
/// tried under both readings of `n(λ)`; `y` is the last variable.
pub fn verify_macdonald_y(ns: &[usize], degree: u32, y_degree: u32, opts: &VerifyOptions) -> VerificationReport {
    let s = spec(
        "macdonald-y",
        "sum of q^{n(λ)} prod (1 + q^{1-j} y) P_λ(X;q) against prod (1 + x_i y)/(1 - x_i), both readings of n(λ)",
        Strategy::MpolyDegreewise,
        &[("n", ns.iter().copied().max().unwrap_or(0) as i64), ("degree", degree as i64), ("y_degree", y_degree as i64)],
    );
    guarded(s, |s| {
        let mut outcomes = Vec::new();
        for conv in [Convention::RowIndex, Convention::Binomial] {
            let mut ck = Checker::new(opts);
            for &n in ns.iter().rev() {
                let (lhs, rhs) = macdonald_y_sides(n, degree, y_degree, conv);
                if !ck.mpoly(&format!("n={n} {}", conv.describe()), &lhs, &rhs, degree)? {
                    break;
                }
            }
            outcomes.push((conv, ck.finish(s.clone(), format!("x-degree {degree}, y-degree {y_degree}"), None)));
        }
        let holding: Vec<Convention> = outcomes.iter().filter(|(_, r)| r.is_match()).map(|(c, _)| *c).collect();
        let failing: Vec<String> = outcomes
            .iter()
            .filter(|(_, r)| !r.is_match())
            .map(|(c, r)| {
                let at = r.witness.as_ref().map(|w| format!(" (first difference {} at {})", w.instance, w.site)).unwrap_or_default();
                format!("fails with {}{at}", c.describe())
            })
            .collect();
        let mut parts: Vec<String> = holding.iter().map(|c| format!("holds with {}", c.describe())).collect();
        parts.extend(failing);
        let note = parts.join("; ");
        let chosen = match holding.first() {
            Some(c) => outcomes.into_iter().find(|(conv, _)| conv == c).expect("present").1,
            None => outcomes.into_iter().next().expect("two conventions").1,
        };
        Ok(super::VerificationReport { note: Some(note), ..chosen })
    })
}

fn macdonald_y_sides(n: usize, degree: u32, y_degree: u32, conv: Convention) -> (QPoly, QPoly) {
    let nv = n + 1;
    let keep = |e: &[u32]| e[..n].iter().sum::<u32>() <= degree && e[n] <= y_degree;
    let mut table = HlTable::new(false);
    let mut lhs = QPoly::zero(nv);
    for lambda in partitions_up_to(degree as usize, n) {
        let mut w = QPoly::constant(nv, IntSeries::monomial(BigInt::from(1), conv.apply(&lambda)));
        for j in 1..=lambda.len() {
            let f = linear(nv, exps_of(nv, &[n]), q_mono(1, 1 - j as i64));
            w = w.mul(&f).filter_terms(keep);
        }
        let p = table.get(&lambda, n).extend_with_power(0);
        lhs = lhs.add(&p.mul(&w).filter_terms(keep));
    }
    let mut rhs = QPoly::one(nv);
    for i in 0..n {
        rhs = rhs.mul(&linear(nv, exps_of(nv, &[i, n]), q_mono(1, 0))).filter_terms(keep);
        rhs = rhs.mul(&geometric(nv, &exps_of(nv, &[i]), degree)).filter_terms(keep);
    }
    (lhs, rhs)
}

/// Branching `P_λ` against the symmetrization definition at `points`
/// rational points, for `|λ| <= max_weight`, `l(λ) <= n <= max_n`, with
/// `t = q` and `t = q^2`; also checks monic leading terms and symmetry.
pub fn verify_hl_oracle(max_weight: usize, max_n: usize, points: usize, seed: u64, opts: &VerifyOptions) -> VerificationReport {
    let s = spec(
        "hl-oracle",
        "branching-rule P_λ against the symmetrization definition at rational points",
        Strategy::RationalPoint,
        &[("weight", max_weight as i64), ("n", max_n as i64), ("points", points as i64), ("seed", seed as i64)],
    );
    guarded(s, |s| {
        let mut ck = Checker::new(opts);
        let mut sampler = PointSampler::new(seed);
        let mut structural = Vec::new();
        'outer: for n in (1..=max_n).rev() {
            for q_square in [false, true] {
                let mut table = HlTable::new(q_square);
                for lambda in partitions_up_to(max_weight, n) {
                    let poly = table.get(&lambda, n);
                    let lead: Vec<u32> = (1..=n).map(|i| lambda.part(i) as u32).collect();
                    if poly.coeff(&lead) != IntSeries::one() {
                        structural.push(format!("P_{lambda} in {n} variables is not monic"));
                    }
                    if (0..n.saturating_sub(1)).any(|i| poly.swap_vars(i, i + 1) != poly) {
                        structural.push(format!("P_{lambda} in {n} variables is not symmetric"));
                    }
                    let label = format!("λ={lambda} n={n} t=q^{}", table.t_power());
                    for i in 0..points {
                        let pt = sampler.sample(n);
                        let t = if q_square { &pt.q * &pt.q } else { pt.q.clone() };
                        let oracle = hl_oracle(&lambda, &pt.xs, &t)?;
                        let branch = poly.eval(&pt.xs, &pt.q);
                        if !ck.value(&label, i, points, branch, oracle) {
                            break 'outer;
                        }
                    }
                }
            }
        }
        if !structural.is_empty() {
            return Err(VerifyError::Invalid(structural.join("; ")));
        }
        Ok(ck.finish(s.clone(), format!("{points} points per polynomial"), None))
    })
}
