//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hlq::series::Coefficient;
use hlq::verify::*;

type Outcome = Result<String, String>;

fn require(report: &VerificationReport) -> Outcome {
    if report.is_match() {
        Ok(format!("{} through {}", report.spec.id, report.verified_through))
    } else {
        Err(format!(
            "{} {:?}: witness {:?} note {:?}",
            report.spec.id, report.status, report.witness, report.note
        ))
    }
}

fn all(reports: &[VerificationReport]) -> Outcome {
    let mut lines = Vec::new();
    for r in reports {
        lines.push(require(r)?);
    }
    Ok(lines.join("; "))
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let took = start.elapsed();
    if took > limit {
        Err(format!("took {:.1}s, limit {:.0}s", took.as_secs_f64(), limit.as_secs_f64()))
    } else {
        Ok(())
    }
}

fn pairs(max_n: usize, max_k: usize) -> Vec<(usize, usize)> {
    (1..=max_n).flat_map(|n| (1..=max_k).map(move |k| (n, k))).collect()
}

fn none() -> VerifyOptions {
    VerifyOptions::default()
}

fn kawanaka_degree_eight() -> Outcome {
    require(&verify_kawanaka(&[1, 2, 3], 8, &none()))
}

fn finite_identity_at_points() -> Outcome {
    let first = verify_finite_box(&pairs(3, 4), 20, 2024, None, &none());
    let again = verify_finite_box(&pairs(3, 4), 20, 2024, None, &none());
    if first != again {
        return Err("same seed gave different reports".into());
    }
    if first.comparisons != 12 * 20 {
        return Err(format!("expected 240 point comparisons, ran {}", first.comparisons));
    }
    require(&first)
}

fn principal_specialization() -> Outcome {
    require(&verify_principal(&pairs(5, 4), 8, 30, &none()))
}

fn formal_ab_identity() -> Outcome {
    let start = Instant::now();
    let r = verify_ab_master(&[1, 2, 3], 6, -20, 30, &none());
    within(Duration::from_secs(60), start)?;
    require(&r)
}

fn master_forms() -> Outcome {
    all(&[
        verify_master(MasterKind::Zq2, &[1, 2, 3], 40, &none()),
        verify_master(MasterKind::Zq, &[1, 2, 3], 40, &none()),
    ])
}

fn twelve_families() -> Outcome {
    let start = Instant::now();
    let reports: Vec<VerificationReport> = rr_ids().into_iter().map(|id| verify_rr(id, &[1, 2, 3, 4], 60, &none())).collect();
    within(Duration::from_secs(60), start)?;
    if reports.len() != 12 {
        return Err(format!("expected 12 families, found {}", reports.len()));
    }
    all(&reports)
}

fn single_sums() -> Outcome {
    require(&verify_k1_reductions(50, &none()))
}

fn auxiliary_identities() -> Outcome {
    all(&[
        verify_kinf(&[1, 2, 3, 4], 8, 30, &none()),
        verify_mac2(&[1, 2, 3, 4], 8, 30, &none()),
        verify_abext(6, -20, 30, &none()),
        verify_qpieri(4, 4, 4, &none()),
        verify_csq_euler(20, &none()),
    ])
}

fn oracle_equivalence() -> Outcome {
    require(&verify_hl_oracle(6, 4, 10, 99, &none()))
}

fn side_identities() -> Outcome {
    let k2 = require(&verify_kawanaka2(&[1, 2], 6, &none()))?;
    let y = verify_macdonald_y(&[1, 2], 4, 2, &none());
    let note = y.note.clone().unwrap_or_default();
    let holds: Vec<&str> = note.split("; ").filter(|s| s.starts_with("holds with")).collect();
    if holds.len() != 1 {
        return Err(format!("convention report is not definitive: {note:?}"));
    }
    Ok(format!("{k2}; macdonald-y {note}"))
}

/// A uniformly chosen site inside `region`.
fn random_site(rng: &mut ChaCha8Rng, region: &Region) -> Site {
    match region {
        Region::Q { lo, hi } => Site::Q(rng.random_range(*lo..*hi)),
        Region::Zq { z_order, lo, hi } => Site::Zq(rng.random_range(0..*z_order), rng.random_range(*lo..*hi)),
        Region::Mono { nvars, degree } => {
            let mut left = rng.random_range(0..=*degree);
            let mut exps = vec![0u32; *nvars];
            for slot in exps.iter_mut() {
                let take = rng.random_range(0..=left);
                *slot = take;
                left -= take;
            }
            Site::Mono(exps, rng.random_range(0..6))
        }
        Region::Points { count } => Site::Point(rng.random_range(0..*count)),
    }
}

fn fault_injection() -> Outcome {
    let settings = Settings::new(Profile::Quick);
    let baseline = verify_all(&settings);
    if let Some(bad) = baseline.iter().find(|r| !r.is_match()) {
        return Err(format!("baseline {} does not match", bad.spec.id));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut flipped = Vec::new();
    for _ in 0..20 {
        let target = &baseline[rng.random_range(0..baseline.len())];
        let region = target.region.as_ref().ok_or_else(|| format!("{} has no region", target.spec.id))?;
        let side = if rng.random_bool(0.5) { Side::Lhs } else { Side::Rhs };
        let site = random_site(&mut rng, region);
        let fault = Fault { side, site: site.clone() };
        let reports = verify_all_with_fault(&settings, Some((&target.spec.id, fault)));
        for (before, after) in baseline.iter().zip(&reports) {
            if before.spec.id == target.spec.id {
                if after.status != Status::Mismatch {
                    return Err(format!("{} stayed {:?} with a fault at {site}", target.spec.id, after.status));
                }
                let w = after.witness.as_ref().ok_or("mismatch without witness")?;
                if w.site != site || w.lhs == w.rhs {
                    return Err(format!("{}: fault at {site}, witness {w:?}", target.spec.id));
                }
            } else if after != before {
                return Err(format!("fault in {} changed {}", target.spec.id, before.spec.id));
            }
        }
        flipped.push(format!("{}@{site}", target.spec.id));
    }
    Ok(format!("20 injections, each flipped only its target: {}", flipped.join(", ")))
}

fn cross_coherence() -> Outcome {
    let lim = require(&verify_lim1(&[1, 2, 3, 4], 8, 7, 20, &none()))?;
    for (id, kind) in [("krr1", MasterKind::Zq2), ("krr9", MasterKind::Zq)] {
        let ident = rr_identity(id).ok_or("missing family")?;
        for k in 1..=4 {
            let (ml, mr) = master_sides(kind, k, Param::Zero, Param::Zero, 1, 60).map_err(|e| e.to_string())?;
            let ml = ml.to_int().ok_or("formal symbol left at a = b = 0")?;
            let mr = mr.to_int().ok_or("formal symbol left at a = b = 0")?;
            let l = rr_lhs(ident, k, 60).map_err(|e| e.to_string())?;
            let r = rr_rhs(ident, k, 60).map_err(|e| e.to_string())?;
            for e in 0..60 {
                if ml.coeff(e) != l.coeff(e) || mr.coeff(e) != r.coeff(e) {
                    return Err(format!("{id} k={k} differs from the master form at q^{e}"));
                }
            }
            if l.coeff(0).is_zero() {
                return Err(format!("{id} k={k} has a vanishing constant term"));
            }
        }
    }
    Ok(format!("{lim}; krr1 and krr9 equal the a = b = 0 master forms through q^60"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 12] = [
        ("Kawanaka summation, n <= 3, x-degree 8", kawanaka_degree_eight),
        ("finite box identity, n <= 3, k <= 4, 20 points", finite_identity_at_points),
        ("principal specialization, n <= 5, k <= 4, z^8, q^30", principal_specialization),
        ("formal (a,b) identity, k <= 3, z^6, q in [-20, 30)", formal_ab_identity),
        ("master forms at z = q^2 and z = q, k <= 3, q^40", master_forms),
        ("twelve families, k <= 4, q^60", twelve_families),
        ("k = 1 single sums, q^50", single_sums),
        ("kinf, mac2, abext, q-Pieri, csq-euler", auxiliary_identities),
        ("branching P_λ against the symmetrization oracle", oracle_equivalence),
        ("even-multiplicity sum and y-identity convention", side_identities),
        ("fault injection", fault_injection),
        ("limits and a = b = 0 master forms", cross_coherence),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS ({secs:.1}s) {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2} FAIL ({secs:.1}s) {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
