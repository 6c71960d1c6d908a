//! Acceptance suite: each test pins one exit criterion with exact
//! (zero-tolerance) checks and prints one pass/fail line. Run with
//! `cargo test --test acceptance -- --nocapture` to see the lines.

use std::time::{Duration, Instant};

use biharm_core::calculus::{band_from_term, commutator, toeplitz};
use biharm_core::decide::{
    coefficient_relations_check, decide_commute, decide_normal, degree_match_check,
    Classification,
};
use biharm_core::numeric::{q_ratio, GaussRational};
use biharm_core::oracle::{consistency_check_pair, consistency_check_symbol};
use biharm_core::selftest::{
    converse_pair, forward_pair, mismatched_pair, random_normality_symbol, random_symbol,
    run_selftest, SelfTestConfig, SplitMix64,
};
use biharm_core::symbol::{disk_sample_points, BiharmonicSymbol, QuasiHomogeneousTerm};

const SEED: u64 = 0x5eed_ba5e;

fn finish(name: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    println!("{name}: PASS in {elapsed:?} (budget {budget:?})");
    assert!(elapsed <= budget, "{name} exceeded its runtime budget: {elapsed:?}");
}

fn sym(text: &str) -> BiharmonicSymbol {
    BiharmonicSymbol::parse(text).unwrap()
}

#[test]
fn criterion_1_basis_action_closed_forms() {
    let started = Instant::now();
    for p in -6i64..=6 {
        for s in 0..=6u32 {
            let term = QuasiHomogeneousTerm { p, s, c: GaussRational::one() };
            let (shift, coeff) = band_from_term(&term).unwrap();
            assert_eq!(shift, p);
            for k in 0..=20i64 {
                let actual = coeff.eval(k as usize);
                let expected = if k + p < 0 {
                    GaussRational::zero()
                } else {
                    GaussRational::from_q(q_ratio(2 * k + 2 * p + 2, 2 * k + p + s as i64 + 2))
                };
                assert_eq!(actual, expected, "p={p} s={s} k={k}");
            }
        }
    }
    // Spot values.
    let (_, r2) = band_from_term(&QuasiHomogeneousTerm {
        p: 0,
        s: 2,
        c: GaussRational::one(),
    })
    .unwrap();
    assert_eq!(r2.eval(0), GaussRational::ratio(1, 2));
    let (_, zbar2) = band_from_term(&QuasiHomogeneousTerm {
        p: -2,
        s: 2,
        c: GaussRational::one(),
    })
    .unwrap();
    assert_eq!(zbar2.eval(2), GaussRational::ratio(1, 3));
    finish("criterion 1 (basis action reproduction)", started, Duration::from_secs(1));
}

#[test]
fn criterion_2_forward_direction_200() {
    let started = Instant::now();
    for t in 0..200u32 {
        let mut rng = SplitMix64::for_trial(SEED, 20, t as u64);
        let (phi, psi, c1, c2) = forward_pair(&mut rng, 3, t % 9);
        assert!(
            commutator(&phi, &psi).is_zero(),
            "trial {t}: affine image does not commute"
        );
        let verdict = decide_commute(&phi, &psi).unwrap();
        assert!(verdict.commute && verdict.hypotheses_met);
        assert_eq!(verdict.relation, Some((c1, c2)), "trial {t}: constants not recovered");
    }
    finish("criterion 2 (forward direction, 200/200)", started, Duration::from_secs(30));
}

#[test]
fn criterion_3_converse_direction_200() {
    let started = Instant::now();
    for t in 0..200u32 {
        let mut rng = SplitMix64::for_trial(SEED, 30, t as u64);
        let (phi, psi) = converse_pair(&mut rng, t % 9);
        assert!(phi.affine_relation(&psi).is_none());
        let verdict = decide_commute(&phi, &psi).unwrap();
        assert!(!verdict.commute, "trial {t}: unrelated nondegenerate pair commutes");
        let witness = verdict.witness.expect("witness entry required");
        assert!(!witness.value.is_zero());
        assert_eq!(
            commutator(&phi, &psi).entry(witness.shift, witness.k),
            witness.value,
            "trial {t}: witness is not an entry of the commutator"
        );
    }
    finish("criterion 3 (converse direction, 200/200)", started, Duration::from_secs(60));
}

#[test]
fn criterion_4_degree_matching() {
    let started = Instant::now();
    // Every commuting (forward) pair has matching component degrees, and any
    // converse-trial pair that happened to commute would have to as well.
    for t in 0..200u32 {
        let mut rng = SplitMix64::for_trial(SEED, 20, t as u64);
        let (phi, psi, _, _) = forward_pair(&mut rng, 3, t % 9);
        let report = degree_match_check(&phi, &psi).unwrap();
        assert!(report.all_match, "trial {t}: commuting pair with mismatched degrees");
    }
    for t in 0..200u32 {
        let mut rng = SplitMix64::for_trial(SEED, 30, t as u64);
        let (phi, psi) = converse_pair(&mut rng, t % 9);
        if decide_commute(&phi, &psi).unwrap().commute {
            assert!(degree_match_check(&phi, &psi).unwrap().all_match);
        }
    }
    // Deliberately mismatched nondegenerate degrees force nonzero commutators.
    for t in 0..50u32 {
        let mut rng = SplitMix64::for_trial(SEED, 40, t as u64);
        let (phi, psi) = mismatched_pair(&mut rng);
        let report = degree_match_check(&phi, &psi).unwrap();
        assert!(!report.all_match, "trial {t}: generator failed to mismatch degrees");
        assert!(
            !commutator(&phi, &psi).is_zero(),
            "trial {t}: mismatched-degree pair commutes"
        );
    }
    finish("criterion 4 (degree matching)", started, Duration::from_secs(30));
}

#[test]
fn criterion_5_coefficient_identities_100() {
    let started = Instant::now();
    for t in 0..100u32 {
        let mut rng = SplitMix64::for_trial(SEED, 50, t as u64);
        let (phi, psi, _, _) = forward_pair(&mut rng, 3, t % 9);
        assert!(commutator(&phi, &psi).is_zero());
        let checks = coefficient_relations_check(&phi, &psi).unwrap();
        assert_eq!(checks.len(), 8);
        for check in checks {
            assert!(check.holds, "trial {t}: identity {} fails", check.id);
        }
    }
    finish("criterion 5 (coefficient identities, 100/100)", started, Duration::from_secs(30));
}

#[test]
fn criterion_6_oracle_equivalence_at_24() {
    let started = Instant::now();
    for t in 0..100u32 {
        let mut rng = SplitMix64::for_trial(SEED, 60, t as u64);
        let sym = random_symbol(&mut rng, 4);
        consistency_check_symbol(&sym, 24).unwrap_or_else(|e| panic!("trial {t}: {e}"));
    }
    for t in 0..100u32 {
        let mut rng = SplitMix64::for_trial(SEED, 61, t as u64);
        let a = random_symbol(&mut rng, 4);
        let b = random_symbol(&mut rng, 4);
        consistency_check_pair(&a, &b, 24).unwrap_or_else(|e| panic!("trial {t}: {e}"));
    }
    finish("criterion 6 (oracle equivalence, 200 checks at K=24)", started, Duration::from_secs(60));
}

#[test]
fn criterion_7_normality_corollary_200() {
    let started = Instant::now();
    let mut lines = 0u32;
    let mut not_normal = 0u32;
    let mut constants = 0u32;
    for t in 0..200u32 {
        let mut rng = SplitMix64::for_trial(SEED, 70, t as u64);
        let phi = random_normality_symbol(&mut rng, 3, t as u64);
        let verdict = decide_normal(&phi).unwrap();
        let kernel = commutator(&phi, &phi.conjugate()).is_zero();
        assert_eq!(verdict.normal, kernel, "trial {t}: verdict vs exact self-commutator");
        assert_eq!(
            verdict.normal,
            verdict.relation.is_some(),
            "trial {t}: normality vs self-conjugate relation"
        );
        match verdict.classification {
            Classification::Line => {
                lines += 1;
                let line = verdict.line.as_ref().unwrap();
                let points = disk_sample_points();
                assert_eq!(points.len(), 25);
                for z in points {
                    assert!(line.holds_at(&phi, &z), "trial {t}: line equation fails at {z}");
                }
            }
            Classification::NotNormal => not_normal += 1,
            Classification::Constant => constants += 1,
        }
    }
    assert!(lines > 0 && not_normal > 0 && constants > 0, "all classes must be exercised");

    // The unilateral shift: not normal, with the known self-commutator
    // diagonal of its adjoint pair.
    let verdict = decide_normal(&sym("z")).unwrap();
    assert!(!verdict.normal);
    assert_eq!(verdict.classification, Classification::NotNormal);
    let comm = commutator(&sym("conj(z)"), &sym("z"));
    for k in 0..8i64 {
        assert_eq!(
            comm.entry(0, k as usize),
            GaussRational::from_q(q_ratio(1, (k + 1) * (k + 2))),
        );
    }
    finish("criterion 7 (normality corollary, 200 symbols)", started, Duration::from_secs(60));
}

#[test]
fn criterion_8_adjoint_weighted_transpose_50() {
    let started = Instant::now();
    let dim = 16usize;
    for t in 0..50u32 {
        let mut rng = SplitMix64::for_trial(SEED, 80, t as u64);
        let phi = random_symbol(&mut rng, 3);
        let m = toeplitz(&phi).truncate(dim);
        let m_star = toeplitz(&phi.conjugate()).truncate(dim);
        for j in 0..dim {
            for k in 0..dim {
                let weight = q_ratio(k as i64 + 1, j as i64 + 1);
                let expected = m.get(j, k).conj().mul_q(&weight);
                assert_eq!(
                    m_star.get(k, j),
                    &expected,
                    "trial {t}: adjoint identity fails at ({j}, {k})"
                );
            }
        }
    }
    finish("criterion 8 (adjoint weighted transpose, 50 at K=16)", started, Duration::from_secs(10));
}

#[test]
fn criterion_9_selftest_determinism() {
    let started = Instant::now();
    let config = SelfTestConfig { seed: 7, trials: 10, max_degree: 3, section_dim: 12 };
    let first = run_selftest(config);
    let second = run_selftest(config);
    assert!(first.all_passed(), "{}", first.render());
    assert_eq!(
        first.render().into_bytes(),
        second.render().into_bytes(),
        "same seed must produce byte-identical reports"
    );
    finish("criterion 9 (selftest determinism)", started, Duration::from_secs(60));
}

/// The affine solver's leading-coefficient identity: whenever a commuting
/// nondegenerate pair admits a relation, C1 equals the ratio of the leading
/// coefficients of the matching |z|^2-analytic components.
#[test]
fn relation_constant_is_the_leading_ratio() {
    let started = Instant::now();
    for t in 0..100u32 {
        let mut rng = SplitMix64::for_trial(SEED, 90, t as u64);
        let (phi, psi, _, _) = forward_pair(&mut rng, 3, t % 9);
        let (c1, _) = phi.affine_relation(&psi).unwrap();
        let lead_phi = phi.a2().last().unwrap();
        let lead_psi = psi.a2().last().unwrap();
        assert_eq!(c1, lead_phi / lead_psi, "trial {t}");
    }
    finish("supplement (C1 as leading-coefficient ratio)", started, Duration::from_secs(30));
}
