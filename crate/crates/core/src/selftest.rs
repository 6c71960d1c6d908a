//! Seeded randomized self-test suites and the symbol generators behind them.
//!
//! Everything here is deterministic in the seed: the generator is a fixed
//! splitmix sequence and per-trial sub-seeds are derived from the suite seed
//! and the trial index, so a report is a pure function of its configuration.

use std::fmt::Write as _;

use crate::calculus::commutator;
use crate::decide::{
    coefficient_relations_check, decide_commute, decide_normal, degree_match_check,
    Classification,
};
use crate::numeric::{q_ratio, GaussRational};
use crate::oracle::{consistency_check_pair, consistency_check_symbol};
use crate::symbol::{disk_sample_points, BiharmonicSymbol};

/// Splitmix64: tiny, stable, seedable.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform-ish draw in `0..n`; the slight modulo bias is irrelevant here.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        self.next_u64() % n
    }

    /// Derives the generator for one trial of one suite.
    pub fn for_trial(seed: u64, suite: u64, trial: u64) -> Self {
        let mut mixer = SplitMix64::new(seed ^ suite.wrapping_mul(0xa076_1d64_78bd_642f));
        let base = mixer.next_u64();
        SplitMix64::new(base.wrapping_add(trial.wrapping_mul(0x9e37_79b9_7f4a_7c15)))
    }
}

/// The coefficient pool used by the randomized suites.
pub fn coeff_pool() -> Vec<GaussRational> {
    let third = |re: i64, im: i64| GaussRational::new(q_ratio(re, 3), q_ratio(im, 3));
    vec![
        GaussRational::zero(),
        GaussRational::one(),
        -&GaussRational::one(),
        GaussRational::i(),
        -&GaussRational::i(),
        GaussRational::ratio(1, 2),
        GaussRational::ratio(-1, 2),
        third(1, -1),
        third(-1, 1),
    ]
}

pub fn random_coeff(rng: &mut SplitMix64) -> GaussRational {
    let pool = coeff_pool();
    pool[rng.below(pool.len() as u64) as usize].clone()
}

pub fn random_nonzero_coeff(rng: &mut SplitMix64) -> GaussRational {
    loop {
        let c = random_coeff(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

/// Unconstrained random symbol: components may be missing entirely.
pub fn random_symbol(rng: &mut SplitMix64, max_degree: u32) -> BiharmonicSymbol {
    let component = |rng: &mut SplitMix64| -> Vec<GaussRational> {
        if rng.below(4) == 0 {
            return Vec::new();
        }
        let deg = rng.below(max_degree as u64 + 1) as usize;
        (0..=deg).map(|_| random_coeff(rng)).collect()
    };
    BiharmonicSymbol::new(
        component(rng),
        component(rng),
        component(rng),
        component(rng),
    )
}

/// Random symbol with exactly the requested component degrees and nonzero
/// leading coefficients. Anti-analytic degrees must be >= 1 for the
/// component to survive canonicalization.
pub fn random_symbol_with_degrees(
    rng: &mut SplitMix64,
    n1: usize,
    m1: usize,
    n2: usize,
    m2: usize,
) -> BiharmonicSymbol {
    assert!(m1 >= 1 && m2 >= 1, "anti-analytic constants fold away");
    let list = |rng: &mut SplitMix64, deg: usize| -> Vec<GaussRational> {
        let mut v: Vec<GaussRational> = (0..deg).map(|_| random_coeff(rng)).collect();
        v.push(random_nonzero_coeff(rng));
        v
    };
    let sym = BiharmonicSymbol::new(
        list(rng, n1),
        list(rng, m1),
        list(rng, n2),
        list(rng, m2),
    );
    debug_assert!(sym.nondegeneracy().hypotheses_met);
    sym
}

/// Nondegenerate symbol with degrees drawn in `1..=max_degree`.
pub fn random_nondegenerate_symbol(rng: &mut SplitMix64, max_degree: u32) -> BiharmonicSymbol {
    let max = max_degree.max(1) as u64;
    let deg = |rng: &mut SplitMix64| 1 + rng.below(max) as usize;
    let (n1, m1, n2, m2) = (deg(rng), deg(rng), deg(rng), deg(rng));
    random_symbol_with_degrees(rng, n1, m1, n2, m2)
}

/// Degree pairs realizing one of the nine orderings of (analytic degree,
/// |z|^2-analytic degree) and (anti-analytic, |z|^2-anti-analytic), with all
/// degrees in `1..=3`.
pub fn degrees_for_ordering(rng: &mut SplitMix64, ordering: u32) -> (usize, usize, usize, usize) {
    let mut pick = |ord: u32| -> (usize, usize) {
        match ord {
            0 => {
                let low = 1 + rng.below(2) as usize;
                (low, low + 1)
            }
            1 => {
                let d = 1 + rng.below(3) as usize;
                (d, d)
            }
            _ => {
                let low = 1 + rng.below(2) as usize;
                (low + 1, low)
            }
        }
    };
    let (n1, n2) = pick(ordering % 3);
    let (m1, m2) = pick((ordering / 3) % 3);
    (n1, m1, n2, m2)
}

/// Breaks the affine relation of a pair by bumping one non-constant
/// coefficient, resampling until the perturbed symbol keeps its exact
/// component degrees, stays nondegenerate, and admits no relation.
pub fn perturb_off_relation(
    rng: &mut SplitMix64,
    phi: &BiharmonicSymbol,
    psi: &BiharmonicSymbol,
) -> BiharmonicSymbol {
    loop {
        let delta = random_nonzero_coeff(rng);
        let component = rng.below(4);
        let (list, is_anti): (&[GaussRational], bool) = match component {
            0 => (phi.a1(), false),
            1 => (phi.c1(), true),
            2 => (phi.a2(), false),
            _ => (phi.c2(), true),
        };
        // Skip a1[0] (a free constant) and the canonical zero slots c1[0],
        // c2[0]; a2[0] is a genuine coordinate.
        let min_idx = if component == 2 { 0 } else { 1 };
        if list.len() <= min_idx {
            continue;
        }
        let idx = min_idx + rng.below((list.len() - min_idx) as u64) as usize;
        let mut bumped: Vec<GaussRational> = list.to_vec();
        bumped[idx] = &bumped[idx] + &delta;
        let _ = is_anti;
        let candidate = match component {
            0 => BiharmonicSymbol::new(bumped, phi.c1().to_vec(), phi.a2().to_vec(), phi.c2().to_vec()),
            1 => BiharmonicSymbol::new(phi.a1().to_vec(), bumped, phi.a2().to_vec(), phi.c2().to_vec()),
            2 => BiharmonicSymbol::new(phi.a1().to_vec(), phi.c1().to_vec(), bumped, phi.c2().to_vec()),
            _ => BiharmonicSymbol::new(phi.a1().to_vec(), phi.c1().to_vec(), phi.a2().to_vec(), bumped),
        };
        let degrees_kept = candidate.a1().len() == phi.a1().len()
            && candidate.c1().len() == phi.c1().len()
            && candidate.a2().len() == phi.a2().len()
            && candidate.c2().len() == phi.c2().len();
        if degrees_kept
            && candidate.nondegeneracy().hypotheses_met
            && candidate.affine_relation(psi).is_none()
        {
            return candidate;
        }
    }
}

/// Symbols for the normality suite: a rotating mix of generic, real-valued,
/// rotated-line, and constant symbols.
pub fn random_normality_symbol(rng: &mut SplitMix64, max_degree: u32, class: u64) -> BiharmonicSymbol {
    match class % 4 {
        0 => random_symbol(rng, max_degree),
        1 => {
            // Real-valued: psi + conj(psi).
            let psi = random_symbol(rng, max_degree);
            psi.add(&psi.conjugate())
        }
        2 => {
            // alpha + u^2 * real with |u| = 1: the image sits on a line.
            let psi = random_symbol(rng, max_degree);
            let real = psi.add(&psi.conjugate());
            let u = GaussRational::new(q_ratio(3, 5), q_ratio(4, 5));
            let alpha = random_coeff(rng);
            real.affine(&(&u * &u), &alpha)
        }
        _ => BiharmonicSymbol::constant(random_coeff(rng)),
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SelfTestConfig {
    pub seed: u64,
    pub trials: u32,
    pub max_degree: u32,
    pub section_dim: usize,
}

#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub passed: u32,
    pub total: u32,
    pub first_failure: Option<String>,
}

impl SuiteOutcome {
    fn run(name: &'static str, total: u32, mut trial: impl FnMut(u32) -> Result<(), String>) -> Self {
        let mut passed = 0;
        let mut first_failure = None;
        for t in 0..total {
            match trial(t) {
                Ok(()) => passed += 1,
                Err(msg) => {
                    if first_failure.is_none() {
                        first_failure = Some(format!("trial {t}: {msg}"));
                    }
                }
            }
        }
        SuiteOutcome { name, passed, total, first_failure }
    }

    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

#[derive(Clone, Debug)]
pub struct SelfTestReport {
    pub config: SelfTestConfig,
    pub suites: Vec<SuiteOutcome>,
}

impl SelfTestReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(|s| s.ok())
    }

    /// Deterministic text rendering; identical configurations produce
    /// byte-identical reports.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        let _ = writeln!(
            out,
            "selftest seed={} trials={} max-degree={} k={}",
            c.seed, c.trials, c.max_degree, c.section_dim
        );
        for suite in &self.suites {
            let status = if suite.ok() { "PASS" } else { "FAIL" };
            let _ = write!(out, "{:<24} {} {}/{}", suite.name, status, suite.passed, suite.total);
            if let Some(msg) = &suite.first_failure {
                let _ = write!(out, "  first failure: {msg}");
            }
            let _ = writeln!(out);
        }
        let _ = writeln!(
            out,
            "result: {}",
            if self.all_passed() { "PASS" } else { "FAIL" }
        );
        out
    }
}

const SUITE_FORWARD: u64 = 1;
const SUITE_CONVERSE: u64 = 2;
const SUITE_DEGREES: u64 = 3;
const SUITE_RELATIONS: u64 = 4;
const SUITE_NORMALITY: u64 = 5;
const SUITE_ORACLE: u64 = 6;

/// One affine pair `(phi, psi)` with `phi = C1 psi + C2`, `C1 != 0`.
pub fn forward_pair(
    rng: &mut SplitMix64,
    max_degree: u32,
    ordering: u32,
) -> (BiharmonicSymbol, BiharmonicSymbol, GaussRational, GaussRational) {
    let (n1, m1, n2, m2) = degrees_for_ordering(rng, ordering);
    let _ = max_degree;
    let psi = random_symbol_with_degrees(rng, n1, m1, n2, m2);
    let c1 = random_nonzero_coeff(rng);
    let c2 = random_coeff(rng);
    let phi = psi.affine(&c1, &c2);
    (phi, psi, c1, c2)
}

/// One nondegenerate pair with matched degrees and no affine relation.
pub fn converse_pair(
    rng: &mut SplitMix64,
    ordering: u32,
) -> (BiharmonicSymbol, BiharmonicSymbol) {
    let (n1, m1, n2, m2) = degrees_for_ordering(rng, ordering);
    let psi = random_symbol_with_degrees(rng, n1, m1, n2, m2);
    let base = psi.affine(&random_nonzero_coeff(rng), &random_coeff(rng));
    let phi = perturb_off_relation(rng, &base, &psi);
    (phi, psi)
}

pub fn run_selftest(config: SelfTestConfig) -> SelfTestReport {
    let trials = config.trials;
    let seed = config.seed;
    let max_degree = config.max_degree;
    let dim = config.section_dim;

    let forward = SuiteOutcome::run("theorem-forward", trials, |t| {
        let mut rng = SplitMix64::for_trial(seed, SUITE_FORWARD, t as u64);
        let (phi, psi, c1, c2) = forward_pair(&mut rng, max_degree, t % 9);
        let verdict = decide_commute(&phi, &psi).map_err(|e| e.to_string())?;
        if !verdict.commute {
            return Err("affine image does not commute".to_string());
        }
        if verdict.relation != Some((c1, c2)) {
            return Err("solver did not recover the affine constants".to_string());
        }
        Ok(())
    });

    let converse = SuiteOutcome::run("theorem-converse", trials, |t| {
        let mut rng = SplitMix64::for_trial(seed, SUITE_CONVERSE, t as u64);
        let (phi, psi) = converse_pair(&mut rng, t % 9);
        let verdict = decide_commute(&phi, &psi).map_err(|e| e.to_string())?;
        if verdict.commute {
            return Err("unrelated pair commutes".to_string());
        }
        if verdict.witness.is_none() {
            return Err("noncommuting verdict without witness".to_string());
        }
        Ok(())
    });

    let degrees = SuiteOutcome::run("degree-match", trials, |t| {
        let mut rng = SplitMix64::for_trial(seed, SUITE_DEGREES, t as u64);
        if t % 2 == 0 {
            // Commuting pairs must have matching component degrees.
            let (phi, psi, _, _) = forward_pair(&mut rng, max_degree, t % 9);
            let report = degree_match_check(&phi, &psi).map_err(|e| e.to_string())?;
            if !report.all_match {
                return Err("commuting pair with mismatched degrees".to_string());
            }
        } else {
            // Deliberately mismatched nondegenerate pairs cannot commute.
            let (phi, psi) = mismatched_pair(&mut rng);
            let report = degree_match_check(&phi, &psi).map_err(|e| e.to_string())?;
            if report.all_match {
                return Err("generator failed to mismatch degrees".to_string());
            }
            if commutator(&phi, &psi).is_zero() {
                return Err("mismatched-degree pair commutes".to_string());
            }
        }
        Ok(())
    });

    let relations = SuiteOutcome::run("coefficient-relations", trials, |t| {
        let mut rng = SplitMix64::for_trial(seed, SUITE_RELATIONS, t as u64);
        let (phi, psi, _, _) = forward_pair(&mut rng, max_degree, t % 9);
        let checks = coefficient_relations_check(&phi, &psi).map_err(|e| e.to_string())?;
        for check in checks {
            if !check.holds {
                return Err(format!("identity {} fails on a commuting pair", check.id));
            }
        }
        Ok(())
    });

    let normality = SuiteOutcome::run("normality", trials, |t| {
        let mut rng = SplitMix64::for_trial(seed, SUITE_NORMALITY, t as u64);
        let phi = random_normality_symbol(&mut rng, max_degree, t as u64);
        let verdict = decide_normal(&phi).map_err(|e| e.to_string())?;
        let kernel_normal = commutator(&phi, &phi.conjugate()).is_zero();
        if verdict.normal != kernel_normal {
            return Err("verdict disagrees with the exact self-commutator".to_string());
        }
        if verdict.normal != verdict.relation.is_some() {
            return Err("normality and the self-conjugate relation disagree".to_string());
        }
        if verdict.classification == Classification::Line {
            let line = verdict.line.as_ref().expect("line verdict carries an equation");
            for z in disk_sample_points() {
                if !line.holds_at(&phi, &z) {
                    return Err(format!("line equation fails at z = {z}"));
                }
            }
        }
        Ok(())
    });

    let oracle = SuiteOutcome::run("oracle-consistency", trials * 2, |t| {
        let mut rng = SplitMix64::for_trial(seed, SUITE_ORACLE, t as u64);
        if t % 2 == 0 {
            let sym = random_symbol(&mut rng, max_degree.max(4));
            consistency_check_symbol(&sym, dim).map_err(|e| e.to_string())
        } else {
            let a = random_symbol(&mut rng, max_degree);
            let b = random_symbol(&mut rng, max_degree);
            consistency_check_pair(&a, &b, dim).map_err(|e| e.to_string())
        }
    });

    SelfTestReport {
        config,
        suites: vec![forward, converse, degrees, relations, normality, oracle],
    }
}

/// Nondegenerate pair with at least one component degree differing.
pub fn mismatched_pair(rng: &mut SplitMix64) -> (BiharmonicSymbol, BiharmonicSymbol) {
    let ordering = rng.below(9) as u32;
    let (n1, m1, n2, m2) = degrees_for_ordering(rng, ordering);
    let psi = random_symbol_with_degrees(rng, n1, m1, n2, m2);
    // Bump one component's degree (capped shape keeps runtimes small).
    let (mut p1, mut q1, mut p2, mut q2) = (n1, m1, n2, m2);
    match rng.below(4) {
        0 => p1 = n1 + 1,
        1 => q1 = m1 + 1,
        2 => p2 = n2 + 1,
        _ => q2 = m2 + 1,
    }
    let phi = random_symbol_with_degrees(rng, p1, q1, p2, q2);
    (phi, psi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_is_deterministic() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..16 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn generators_respect_their_contracts() {
        let mut rng = SplitMix64::new(7);
        for ordering in 0..9 {
            let (n1, m1, n2, m2) = degrees_for_ordering(&mut rng, ordering);
            match ordering % 3 {
                0 => assert!(n1 < n2),
                1 => assert!(n1 == n2),
                _ => assert!(n1 > n2),
            }
            match (ordering / 3) % 3 {
                0 => assert!(m1 < m2),
                1 => assert!(m1 == m2),
                _ => assert!(m1 > m2),
            }
            let sym = random_symbol_with_degrees(&mut rng, n1, m1, n2, m2);
            assert!(sym.nondegeneracy().hypotheses_met);
            assert_eq!(sym.a1().len() - 1, n1);
            assert_eq!(sym.c1().len() - 1, m1);
            assert_eq!(sym.a2().len() - 1, n2);
            assert_eq!(sym.c2().len() - 1, m2);
        }
    }

    #[test]
    fn perturbation_breaks_the_relation() {
        let mut rng = SplitMix64::new(11);
        for t in 0..10 {
            let (phi, psi) = converse_pair(&mut rng, t % 9);
            assert!(phi.affine_relation(&psi).is_none());
            assert!(crate::decide::hypotheses_met(&phi, &psi));
        }
    }

    #[test]
    fn small_selftest_passes_and_is_reproducible() {
        let config = SelfTestConfig { seed: 7, trials: 6, max_degree: 3, section_dim: 10 };
        let report = run_selftest(config);
        assert!(report.all_passed(), "{}", report.render());
        let again = run_selftest(config);
        assert_eq!(report.render(), again.render());
    }
}
