//! The catalog of identity checks and the parameters each runs with.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    classic, kawanaka, master, principal, rr, Fault, Strategy, VerificationReport, VerifyError, VerifyOptions,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Profile {
    #[default]
    Quick,
    Full,
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::Quick => "quick",
            Profile::Full => "full",
        })
    }
}

impl FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "quick" => Ok(Profile::Quick),
            "full" => Ok(Profile::Full),
            other => Err(format!("unknown profile {other:?} (expected quick or full)")),
        }
    }
}

/// Profile defaults plus explicit overrides. A `k` or `n` override replaces
/// the range a check would otherwise sweep with that single value.
#[derive(Clone, Debug, Default)]
pub struct Settings {
    pub profile: Profile,
    pub k: Option<usize>,
    pub n: Option<usize>,
    pub q_order: Option<i64>,
    pub q_lo: Option<i64>,
    pub z_order: Option<usize>,
    pub degree: Option<u32>,
    pub points: Option<usize>,
    pub seed: u64,
}

impl Settings {
    pub fn new(profile: Profile) -> Self {
        Settings { profile, seed: 1, ..Default::default() }
    }

    fn pick<T>(&self, quick: T, full: T) -> T {
        match self.profile {
            Profile::Quick => quick,
            Profile::Full => full,
        }
    }

    fn ks(&self, quick: usize, full: usize) -> Vec<usize> {
        match self.k {
            Some(k) => vec![k],
            None => (1..=self.pick(quick, full)).collect(),
        }
    }

    fn ns(&self, quick: usize, full: usize) -> Vec<usize> {
        match self.n {
            Some(n) => vec![n],
            None => (1..=self.pick(quick, full)).collect(),
        }
    }

    fn n_max(&self, quick: usize, full: usize) -> usize {
        self.n.unwrap_or_else(|| self.pick(quick, full))
    }

    fn k_max(&self, quick: usize, full: usize) -> usize {
        self.k.unwrap_or_else(|| self.pick(quick, full))
    }

    fn pairs(&self, n: (usize, usize), k: (usize, usize)) -> Vec<(usize, usize)> {
        let ks = self.ks(k.0, k.1);
        self.ns(n.0, n.1).into_iter().flat_map(|n| ks.iter().map(move |&k| (n, k))).collect()
    }

    fn q_order(&self, quick: i64, full: i64) -> i64 {
        self.q_order.unwrap_or_else(|| self.pick(quick, full))
    }

    fn q_lo(&self, quick: i64, full: i64) -> i64 {
        self.q_lo.unwrap_or_else(|| self.pick(quick, full))
    }

    fn z_order(&self, quick: usize, full: usize) -> usize {
        self.z_order.unwrap_or_else(|| self.pick(quick, full))
    }

    fn degree(&self, quick: u32, full: u32) -> u32 {
        self.degree.unwrap_or_else(|| self.pick(quick, full))
    }

    fn points(&self, quick: usize, full: usize) -> usize {
        self.points.unwrap_or_else(|| self.pick(quick, full))
    }
}

type Runner = Box<dyn Fn(&Settings, &VerifyOptions) -> VerificationReport + Send + Sync>;

pub struct CatalogEntry {
    pub id: String,
    pub description: String,
    pub strategy: Strategy,
    run: Runner,
}

impl CatalogEntry {
    fn new<F>(id: &str, description: &str, strategy: Strategy, run: F) -> Self
    where
        F: Fn(&Settings, &VerifyOptions) -> VerificationReport + Send + Sync + 'static,
    {
        CatalogEntry { id: id.to_string(), description: description.to_string(), strategy, run: Box::new(run) }
    }

    pub fn run(&self, settings: &Settings, opts: &VerifyOptions) -> VerificationReport {
        (self.run)(settings, opts)
    }
}

impl fmt::Debug for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CatalogEntry").field("id", &self.id).field("strategy", &self.strategy).finish()
    }
}

/// Every registered check, sorted by id.
pub fn catalog() -> Vec<CatalogEntry> {
    use Strategy::*;
    let mut out = vec![
        CatalogEntry::new("kawanaka", "(-q)_{m_i}-weighted sum of P_λ(X;q^2) against Φ(X)", MpolyDegreewise, |s, o| {
            kawanaka::verify_kawanaka(&s.ns(2, 3), s.degree(6, 8), o)
        }),
        CatalogEntry::new("kawanaka-finite", "finite box sum against the signed sum of Φ(X^ξ)", RationalPoint, |s, o| {
            kawanaka::verify_finite_box(&s.pairs((2, 3), (3, 4)), s.points(5, 20), s.seed, None, o)
        }),
        CatalogEntry::new("kawanaka-principal", "principal specialization of the finite box sum", ZqBivariate, |s, o| {
            principal::verify_principal(&s.pairs((3, 5), (3, 4)), s.z_order(6, 8), s.q_order(20, 30), o)
        }),
        CatalogEntry::new("ab-master", "(z,q) identity with formal a and b", ZqBivariate, |s, o| {
            master::verify_ab_master(&s.ks(2, 3), s.z_order(4, 6), s.q_lo(-10, -20), s.q_order(15, 30), o)
        }),
        CatalogEntry::new("master-zq2", "master form at z = q^2 with formal a and b", QSeries, |s, o| {
            master::verify_master(master::MasterKind::Zq2, &s.ks(2, 3), s.q_order(20, 40), o)
        }),
        CatalogEntry::new("master-zq", "master form at z = q with formal a and b", QSeries, |s, o| {
            master::verify_master(master::MasterKind::Zq, &s.ks(2, 3), s.q_order(20, 40), o)
        }),
        CatalogEntry::new("k1-reductions", "three single-sum identities at k = 1", QSeries, |s, o| {
            rr::verify_k1_reductions(s.q_order(30, 50), o)
        }),
        CatalogEntry::new("kinf", "all-length sum with (-q)_λ weights", ZqBivariate, |s, o| {
            principal::verify_kinf(&s.ns(3, 4), s.z_order(6, 8), s.q_order(20, 30), o)
        }),
        CatalogEntry::new("qpieri", "q-Pieri rule for Gaussian binomials", QSeries, |s, o| {
            principal::verify_qpieri(s.n_max(3, 4), s.k_max(3, 4), s.pick(3, 4), o)
        }),
        CatalogEntry::new("mac2", "sum of z^{|λ|} q^{n(λ)} [n,λ] against (-z)_n/(z^2)_n", ZqBivariate, |s, o| {
            principal::verify_mac2(&s.ns(3, 4), s.z_order(6, 8), s.q_order(20, 30), o)
        }),
        CatalogEntry::new("abext", "all-partition sum with formal a and b", ZqBivariate, |s, o| {
            master::verify_abext(s.z_order(4, 6), s.q_lo(-10, -20), s.q_order(15, 30), o)
        }),
        CatalogEntry::new("hl-summation", "sum of all P_μ(X;t), t = q and q^2", MpolyDegreewise, |s, o| {
            kawanaka::verify_hl_summation(&s.ns(2, 3), s.degree(4, 6), o)
        }),
        CatalogEntry::new("kawanaka2", "sum over λ with even odd-part multiplicities", MpolyDegreewise, |s, o| {
            kawanaka::verify_kawanaka2(&s.ns(2, 2), s.degree(4, 6), o)
        }),
        CatalogEntry::new("macdonald-y", "y-deformed summation under both readings of n(λ)", MpolyDegreewise, |s, o| {
            kawanaka::verify_macdonald_y(&s.ns(2, 2), s.degree(4, 4), 2, o)
        }),
        CatalogEntry::new("csq-euler", "sum of q^k [n,k]_{q^2} against (-q;q)_n", QSeries, |s, o| {
            classic::verify_csq_euler(s.n_max(10, 20), o)
        }),
        CatalogEntry::new("lim1", "n -> infinity limit against the a = b = 0 case", ZqBivariate, |s, o| {
            principal::verify_lim1(&s.ks(2, 3), s.n_max(6, 8), s.z_order(4, 6), s.q_order(15, 20), o)
        }),
        CatalogEntry::new("q-binomial", "q-binomial theorem with formal a", QSeries, |s, o| {
            classic::verify_q_binomial(s.q_order(30, 60), o)
        }),
        CatalogEntry::new("finite-q-binomial", "(a;q)_n as a sum of Gaussian binomials", QSeries, |s, o| {
            classic::verify_finite_q_binomial(s.n_max(6, 10), o)
        }),
        CatalogEntry::new("euler", "Euler's expansion of 1/(x;q)_∞", QSeries, |s, o| classic::verify_euler(s.q_order(30, 60), o)),
        CatalogEntry::new("jacobi-triple", "triple product in both summed forms", QSeries, |s, o| {
            classic::verify_jacobi_triple(s.pick(5, 8), s.q_order(40, 80), o)
        }),
        CatalogEntry::new("hl-oracle", "branching-rule P_λ against the symmetrization definition", RationalPoint, |s, o| {
            kawanaka::verify_hl_oracle(s.pick(4, 6), s.n_max(3, 4), s.points(3, 10), s.seed, o)
        }),
    ];
    for id in rr::rr_ids() {
        let description = rr::rr_identity(id).map(|r| r.description).unwrap_or_default();
        out.push(CatalogEntry::new(id, description, QSeries, move |s, o| {
            rr::verify_rr(id, &s.ks(2, 4), s.q_order(30, 60), o)
        }));
        out.push(CatalogEntry::new(&format!("{id}-derived"), "family as a specialization of a master form", QSeries, move |s, o| {
            rr::verify_rr_derived(id, &s.ks(2, 3), s.q_order(20, 40), o)
        }));
    }
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

/// Runs one catalog entry by id.
pub fn run_by_id(id: &str, settings: &Settings, opts: &VerifyOptions) -> Result<VerificationReport, VerifyError> {
    catalog()
        .into_iter()
        .find(|e| e.id == id)
        .map(|e| e.run(settings, opts))
        .ok_or_else(|| VerifyError::UnknownId(id.to_string()))
}

/// Runs every entry in parallel; reports come back sorted by id.
pub fn verify_all(settings: &Settings) -> Vec<VerificationReport> {
    verify_all_with_fault(settings, None)
}

/// Like [`verify_all`], injecting `fault` into the entry named by its id only.
pub fn verify_all_with_fault(settings: &Settings, fault: Option<(&str, Fault)>) -> Vec<VerificationReport> {
    let entries = catalog();
    let mut reports: Vec<VerificationReport> = entries
        .par_iter()
        .map(|e| {
            let opts = match &fault {
                Some((id, f)) if *id == e.id => VerifyOptions { fault: Some(f.clone()) },
                _ => VerifyOptions::default(),
            };
            e.run(settings, &opts)
        })
        .collect();
    reports.sort_by(|a, b| a.spec.id.cmp(&b.spec.id));
    reports
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_sorted() {
        let ids: Vec<String> = catalog().into_iter().map(|e| e.id).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(ids, sorted);
        for id in ["kawanaka", "kawanaka-finite", "ab-master", "krr12", "krr12-derived", "hl-oracle", "lim1"] {
            assert!(ids.iter().any(|i| i == id), "{id}");
        }
    }

    #[test]
    fn overrides_replace_ranges() {
        let mut s = Settings::new(Profile::Full);
        assert_eq!(s.ks(2, 4), vec![1, 2, 3, 4]);
        s.k = Some(3);
        s.n = Some(2);
        assert_eq!(s.ks(2, 4), vec![3]);
        assert_eq!(s.pairs((1, 5), (1, 4)), vec![(2, 3)]);
        assert_eq!(s.q_order(10, 20), 20);
    }

    #[test]
    fn profile_names() {
        assert_eq!("full".parse::<Profile>().unwrap(), Profile::Full);
        assert!("fast".parse::<Profile>().is_err());
        assert_eq!(Profile::Quick.to_string(), "quick");
    }

    #[test]
    fn unknown_id() {
        let err = run_by_id("nosuch", &Settings::new(Profile::Quick), &VerifyOptions::default()).unwrap_err();
        assert_eq!(err, VerifyError::UnknownId("nosuch".into()));
    }
}
