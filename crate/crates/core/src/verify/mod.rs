//! Identity checks. Each check builds the two sides of an identity along
//! separate code paths and compares them exactly, reporting the first
//! disagreement.

pub mod bivariate;
mod classic;
mod kawanaka;
mod master;
mod principal;
pub mod registry;
mod rr;

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hl::{EvalError, MPoly};
use crate::series::{Coefficient, IntSeries, QLaurentSeries, SeriesError};

pub use bivariate::Bivariate;
pub use classic::{
    verify_csq_euler, verify_euler, verify_finite_q_binomial, verify_jacobi_triple, verify_q_binomial,
};
pub use kawanaka::{
    phi_expansion,
    verify_hl_oracle, verify_hl_summation, verify_kawanaka, verify_kawanaka2, verify_macdonald_y, verify_finite_box,
};
pub use master::{abext_sides, master_sides, ab_sides, verify_abext, verify_master, verify_ab_master, MasterKind, Param};
pub use principal::{principal_sides, qpieri_sides, verify_principal, verify_kinf, verify_lim1, verify_mac2, verify_qpieri};
pub use registry::{catalog, run_by_id, verify_all, verify_all_with_fault, CatalogEntry, Profile, Settings};
pub use rr::{rr6_lhs, rr_identity, rr_ids, rr_lhs, rr_rhs, verify_k1_reductions, verify_rr, verify_rr_derived, RrIdentity};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("window too narrow: {0}")]
    WindowTooNarrow(String),
    #[error("unknown identity id {0:?}")]
    UnknownId(String),
    #[error("invalid parameter: {0}")]
    Invalid(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Match,
    Mismatch,
    Error,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    QSeries,
    ZqBivariate,
    MpolyDegreewise,
    RationalPoint,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::QSeries => "q-series",
            Strategy::ZqBivariate => "zq-bivariate",
            Strategy::MpolyDegreewise => "mpoly-degreewise",
            Strategy::RationalPoint => "rational-point",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentitySpec {
    pub id: String,
    pub description: String,
    pub params: BTreeMap<String, i64>,
    pub strategy: Strategy,
}

/// A coefficient position on one side of a comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Site {
    /// `q^e`
    Q(i64),
    /// `z^m q^e`
    Zq(usize, i64),
    /// `x^exps q^e`
    Mono(Vec<u32>, i64),
    /// value at the `i`-th sampled point
    Point(usize),
}

impl std::fmt::Display for Site {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Site::Q(e) => write!(f, "q^{e}"),
            Site::Zq(m, e) => write!(f, "z^{m} q^{e}"),
            Site::Mono(x, e) => {
                let xs: Vec<String> = x.iter().map(|k| k.to_string()).collect();
                write!(f, "x^[{}] q^{e}", xs.join(","))
            }
            Site::Point(i) => write!(f, "point {i}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Lhs,
    Rhs,
}

/// Adds one at `site` on `side` before comparing, to exercise mismatch reporting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fault {
    pub side: Side,
    pub site: Site,
}

/// The region a check compares, from which fault sites can be drawn.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Region {
    Q { lo: i64, hi: i64 },
    Zq { z_order: usize, lo: i64, hi: i64 },
    Mono { nvars: usize, degree: u32 },
    Points { count: usize },
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub fault: Option<Fault>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    /// sub-instance label, e.g. `k=2`
    pub instance: String,
    pub site: Site,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub spec: IdentitySpec,
    pub status: Status,
    pub verified_through: String,
    pub witness: Option<Witness>,
    pub note: Option<String>,
    pub region: Option<Region>,
    pub comparisons: usize,
}

impl VerificationReport {
    pub fn is_match(&self) -> bool {
        self.status == Status::Match
    }

    pub(crate) fn error(spec: IdentitySpec, err: &VerifyError) -> Self {
        VerificationReport {
            spec,
            status: Status::Error,
            verified_through: "nothing".into(),
            witness: None,
            note: Some(err.to_string()),
            region: None,
            comparisons: 0,
        }
    }
}

pub(crate) fn spec(id: &str, description: &str, strategy: Strategy, params: &[(&str, i64)]) -> IdentitySpec {
    IdentitySpec {
        id: id.to_string(),
        description: description.to_string(),
        params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        strategy,
    }
}

/// Accumulates comparisons for one report, stopping at the first mismatch.
pub(crate) struct Checker<'a> {
    fault: Option<&'a Fault>,
    witness: Option<Witness>,
    comparisons: usize,
    region: Option<Region>,
}

impl<'a> Checker<'a> {
    pub fn new(opts: &'a VerifyOptions) -> Self {
        Checker { fault: opts.fault.as_ref(), witness: None, comparisons: 0, region: None }
    }

    pub fn failed(&self) -> bool {
        self.witness.is_some()
    }

    pub fn set_region(&mut self, region: Region) {
        if self.region.is_none() {
            self.region = Some(region);
        }
    }

    fn fault_for(&self, side: Side) -> Option<&Site> {
        self.fault.filter(|f| f.side == side).map(|f| &f.site)
    }

    fn record(&mut self, instance: &str, site: Site, lhs: String, rhs: String) {
        self.witness = Some(Witness { instance: instance.to_string(), site, lhs, rhs });
    }

    /// Compares two q-series on `lo <= e < hi`. Both must be known through `hi`.
    pub fn series<C: Coefficient>(
        &mut self,
        instance: &str,
        lhs: &QLaurentSeries<C>,
        rhs: &QLaurentSeries<C>,
        lo: i64,
        hi: i64,
    ) -> Result<bool, VerifyError> {
        if self.failed() {
            return Ok(false);
        }
        self.set_region(Region::Q { lo, hi });
        for (name, s) in [("left", lhs), ("right", rhs)] {
            if !s.is_known(hi - 1) {
                return Err(VerifyError::WindowTooNarrow(format!(
                    "{instance}: {name} side known only below q^{}",
                    s.order().unwrap_or(hi)
                )));
            }
        }
        let mut lhs = lhs.clone();
        let mut rhs = rhs.clone();
        if let Some(Site::Q(e)) = self.fault_for(Side::Lhs) {
            lhs.add_to_coeff(*e, &C::one());
        }
        if let Some(Site::Q(e)) = self.fault_for(Side::Rhs) {
            rhs.add_to_coeff(*e, &C::one());
        }
        self.comparisons += 1;
        if let Some(e) = first_difference(&lhs, &rhs, hi) {
            self.record(instance, Site::Q(e), lhs.coeff(e).to_string(), rhs.coeff(e).to_string());
            return Ok(false);
        }
        Ok(true)
    }

    /// Compares bivariate series on `z^m`, `m < z_order`, and `lo <= e < hi`.
    pub fn bivariate<C: Coefficient>(
        &mut self,
        instance: &str,
        lhs: &Bivariate<C>,
        rhs: &Bivariate<C>,
        lo: i64,
        hi: i64,
    ) -> Result<bool, VerifyError> {
        if self.failed() {
            return Ok(false);
        }
        let z_order = lhs.z_order().min(rhs.z_order());
        self.set_region(Region::Zq { z_order, lo, hi });
        let mut lhs = lhs.clone();
        let mut rhs = rhs.clone();
        if let Some(Site::Zq(m, e)) = self.fault_for(Side::Lhs) {
            lhs.add_to_coeff(*m, *e, &C::one());
        }
        if let Some(Site::Zq(m, e)) = self.fault_for(Side::Rhs) {
            rhs.add_to_coeff(*m, *e, &C::one());
        }
        self.comparisons += 1;
        for m in 0..z_order {
            let (l, r) = (lhs.coeff(m), rhs.coeff(m));
            for (name, s) in [("left", l), ("right", r)] {
                if !s.is_known(hi - 1) {
                    return Err(VerifyError::WindowTooNarrow(format!(
                        "{instance}: {name} side z^{m} known only below q^{}",
                        s.order().unwrap_or(hi)
                    )));
                }
                if let Some(v) = s.valuation() {
                    if v < lo {
                        return Err(VerifyError::WindowTooNarrow(format!(
                            "{instance}: {name} side z^{m} has a term at q^{v}, below q^{lo}"
                        )));
                    }
                }
            }
            if let Some(e) = first_difference(l, r, hi) {
                self.record(instance, Site::Zq(m, e), l.coeff(e).to_string(), r.coeff(e).to_string());
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Compares polynomials in `x` with `q`-polynomial coefficients, all monomials.
    pub fn mpoly(&mut self, instance: &str, lhs: &MPoly<IntSeries>, rhs: &MPoly<IntSeries>, degree: u32) -> Result<bool, VerifyError> {
        if self.failed() {
            return Ok(false);
        }
        self.set_region(Region::Mono { nvars: lhs.nvars(), degree });
        let mut lhs = lhs.clone();
        let mut rhs = rhs.clone();
        let bump = |p: &mut MPoly<IntSeries>, site: Option<&Site>| {
            if let Some(Site::Mono(x, e)) = site {
                if x.len() == p.nvars() {
                    p.add_term(x.clone(), &IntSeries::monomial(1.into(), *e));
                }
            }
        };
        bump(&mut lhs, self.fault_for(Side::Lhs));
        bump(&mut rhs, self.fault_for(Side::Rhs));
        self.comparisons += 1;
        let diff = lhs.sub(&rhs);
        if let Some((x, c)) = diff.terms().next() {
            let e = c.valuation().expect("nonzero coefficient");
            let (l, r) = (lhs.coeff(x), rhs.coeff(x));
            self.record(instance, Site::Mono(x.clone(), e), l.to_string(), r.to_string());
            return Ok(false);
        }
        Ok(true)
    }

    /// Compares two exact values at the `index`-th sample point.
    pub fn value(&mut self, instance: &str, index: usize, count: usize, lhs: BigRational, rhs: BigRational) -> bool {
        if self.failed() {
            return false;
        }
        self.set_region(Region::Points { count });
        let one = BigRational::from_integer(1.into());
        let lhs = match self.fault_for(Side::Lhs) {
            Some(Site::Point(i)) if *i == index => lhs + &one,
            _ => lhs,
        };
        let rhs = match self.fault_for(Side::Rhs) {
            Some(Site::Point(i)) if *i == index => rhs + &one,
            _ => rhs,
        };
        self.comparisons += 1;
        if lhs != rhs {
            self.record(instance, Site::Point(index), lhs.to_string(), rhs.to_string());
            return false;
        }
        true
    }

    pub fn finish(self, spec: IdentitySpec, verified_through: String, note: Option<String>) -> VerificationReport {
        let status = if self.witness.is_some() { Status::Mismatch } else { Status::Match };
        VerificationReport {
            spec,
            status,
            verified_through,
            witness: self.witness,
            note,
            region: self.region,
            comparisons: self.comparisons,
        }
    }
}

fn first_difference<C: Coefficient>(lhs: &QLaurentSeries<C>, rhs: &QLaurentSeries<C>, hi: i64) -> Option<i64> {
    let diff = lhs.sub(rhs);
    // terms below the window are reported too
    let first = diff.terms().map(|(e, _)| e).find(|&e| e < hi);
    first
}

/// Runs `body`, turning an error into an error report.
pub(crate) fn guarded<F>(spec: IdentitySpec, body: F) -> VerificationReport
where
    F: FnOnce(&IdentitySpec) -> Result<VerificationReport, VerifyError>,
{
    match body(&spec) {
        Ok(r) => r,
        Err(e) => VerificationReport::error(spec, &e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn poly(terms: &[(i64, i64)]) -> IntSeries {
        IntSeries::polynomial(terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    #[test]
    fn first_difference_is_reported() {
        let opts = VerifyOptions::default();
        let mut ck = Checker::new(&opts);
        assert!(ck.series("a", &poly(&[(0, 1), (2, 3)]), &poly(&[(0, 1), (2, 3)]), 0, 5).unwrap());
        assert!(!ck.series("b", &poly(&[(1, 1), (3, 2)]), &poly(&[(1, 1), (3, 1)]), 0, 5).unwrap());
        let r = ck.finish(spec("t", "t", Strategy::QSeries, &[]), "q^5".into(), None);
        assert_eq!(r.status, Status::Mismatch);
        let w = r.witness.unwrap();
        assert_eq!((w.instance.as_str(), w.site, w.lhs.as_str(), w.rhs.as_str()), ("b", Site::Q(3), "2", "1"));
        assert_eq!(r.comparisons, 2);
    }

    #[test]
    fn differences_past_the_window_are_ignored() {
        let opts = VerifyOptions::default();
        let mut ck = Checker::new(&opts);
        assert!(ck.series("a", &poly(&[(6, 1)]), &poly(&[]), 0, 5).unwrap());
    }

    #[test]
    fn short_series_are_rejected() {
        let opts = VerifyOptions::default();
        let mut ck = Checker::new(&opts);
        let short = IntSeries::one_to(3);
        assert!(matches!(ck.series("a", &short, &short, 0, 5), Err(VerifyError::WindowTooNarrow(_))));
    }

    #[test]
    fn injected_fault_flips_the_comparison() {
        let opts = VerifyOptions { fault: Some(Fault { side: Side::Rhs, site: Site::Q(2) }) };
        let mut ck = Checker::new(&opts);
        let s = poly(&[(0, 1), (2, 5)]);
        assert!(!ck.series("a", &s, &s, 0, 5).unwrap());
        let w = ck.finish(spec("t", "t", Strategy::QSeries, &[]), String::new(), None).witness.unwrap();
        assert_eq!((w.site, w.lhs.as_str(), w.rhs.as_str()), (Site::Q(2), "5", "6"));
    }

    #[test]
    fn point_fault_only_hits_its_index() {
        let opts = VerifyOptions { fault: Some(Fault { side: Side::Lhs, site: Site::Point(1) }) };
        let mut ck = Checker::new(&opts);
        let v = BigRational::from_integer(BigInt::from(3));
        assert!(ck.value("x", 0, 2, v.clone(), v.clone()));
        assert!(!ck.value("x", 1, 2, v.clone(), v));
    }
}
