//! Acceptance criteria. Each criterion prints one PASS/FAIL line; the test
//! fails if any criterion does.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};
use std::io::Write;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use renyi_uncertainty::bounds::{
    bound_relation1, bound_relation2, bound_uncoupled, phi, state_independent_single_bound,
};
use renyi_uncertainty::cli::fuzz::{run_trial, FuzzConfig, TrialOutcome};
use renyi_uncertainty::entropy::{renyi_entropy, shannon_entropy, RenyiOrder};
use renyi_uncertainty::quantum::{pure_density, ProbabilityDistribution};
use renyi_uncertainty::scenarios::{
    build_helstrom_pvm, build_unambiguous_povm, DiscriminationScenario, PRINTED_TOL,
};

const EXACT: f64 = 1e-9;
const FUZZ_SEED: u64 = 20_240_601;
const FUZZ_TRIALS: usize = 10_000;

struct Verdict {
    id: usize,
    title: &'static str,
    pass: bool,
    detail: String,
}

fn report(v: &Verdict) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(
        out,
        "criterion {:>2} {} {}: {}",
        v.id,
        if v.pass { "PASS" } else { "FAIL" },
        v.title,
        v.detail
    );
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

/// `log2(sum p^alpha) / (1 - alpha)`, or Shannon at 1.
fn oracle_entropy(p: &[f64], alpha: f64) -> f64 {
    if alpha == 1.0 {
        return -p.iter().filter(|&&x| x > 0.0).map(|&x| x * x.log2()).sum::<f64>();
    }
    p.iter().filter(|&&x| x > 0.0).map(|&x| x.powf(alpha)).sum::<f64>().log2() / (1.0 - alpha)
}

fn conjugate(alpha: f64) -> f64 {
    alpha / (2.0 * alpha - 1.0)
}

fn silver_log() -> f64 {
    (SQRT_2 + 1.0).log2()
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let m = build_unambiguous_povm();
    let n = build_helstrom_pvm();
    let rho = pure_density(&DiscriminationScenario::new().psi1);
    let bound = bound_relation1(&m, &n, &rho).unwrap();
    let elapsed = start.elapsed();
    Verdict {
        id: 1,
        title: "coupled bound of the discrimination example",
        pass: close(bound, 1.0, EXACT) && elapsed < Duration::from_secs(1),
        detail: format!("{bound:.12} (expect 1), {elapsed:?}"),
    }
}

fn criterion_2() -> Verdict {
    let m = build_unambiguous_povm();
    let n = build_helstrom_pvm();
    let rho = pure_density(&DiscriminationScenario::new().psi1);
    let u = bound_uncoupled(&m, &n, &rho).unwrap();
    let exact = 2.0 - silver_log();
    Verdict {
        id: 2,
        title: "uncoupled bound of the discrimination example",
        pass: close(u, exact, EXACT) && close(u, 0.728, PRINTED_TOL),
        detail: format!("{u:.12} (closed form {exact:.12}, printed 0.728)"),
    }
}

fn criterion_3() -> Verdict {
    let sc = DiscriminationScenario::new();
    let rho = pure_density(&sc.psi1);
    let pm = phi(&sc.unambiguous, &rho).unwrap();
    let pn = phi(&sc.helstrom, &rho).unwrap();
    let want_m = FRAC_1_SQRT_2;
    let want_n = (SQRT_2 + 1.0) / (2.0 * SQRT_2);
    Verdict {
        id: 3,
        title: "largest outcome probabilities",
        pass: close(pm, want_m, EXACT) && close(pn, want_n, EXACT),
        detail: format!("unambiguous {pm:.12} (expect {want_m:.12}), helstrom {pn:.12} (expect {want_n:.12})"),
    }
}

fn criterion_4() -> Verdict {
    let sc = DiscriminationScenario::new();
    let rho = pure_density(&sc.psi1);
    let r2 = bound_relation2(&sc.unambiguous, &rho).unwrap();
    let trivial = state_independent_single_bound(&sc.unambiguous).unwrap();
    let want = silver_log() - 1.0;
    Verdict {
        id: 4,
        title: "single-measurement bounds of the unambiguous POVM",
        pass: close(r2, 0.5, EXACT)
            && close(trivial, want, EXACT)
            && close(r2, 0.5, PRINTED_TOL)
            && close(trivial, 0.272, PRINTED_TOL),
        detail: format!("state-dependent {r2:.12} (expect 0.5), state-independent {trivial:.12} (expect {want:.12}, printed 0.272)"),
    }
}

fn criterion_5() -> Verdict {
    let sc = DiscriminationScenario::new();
    let err = sc.helstrom_error_probability();
    let (inc1, inc2) = sc.inconclusive_probabilities();
    let want_err = (SQRT_2 - 1.0) * 2f64.powf(-1.5);
    Verdict {
        id: 5,
        title: "discrimination figures of merit",
        pass: close(err, want_err, EXACT) && close(inc1, FRAC_1_SQRT_2, EXACT) && close(inc2, FRAC_1_SQRT_2, EXACT),
        detail: format!("error {err:.12} (expect {want_err:.12}), inconclusive {inc1:.12}/{inc2:.12} (expect {FRAC_1_SQRT_2:.12})"),
    }
}

struct Fuzz {
    outcomes: Vec<TrialOutcome>,
    errors: Vec<String>,
    elapsed: Duration,
}

fn run_fuzz_trials() -> Fuzz {
    let config = FuzzConfig::new(FUZZ_SEED, FUZZ_TRIALS, 2..=6);
    let start = Instant::now();
    let mut outcomes = Vec::with_capacity(FUZZ_TRIALS);
    let mut errors = Vec::new();
    for i in 0..FUZZ_TRIALS {
        match run_trial(&config, i) {
            Ok(o) => outcomes.push(o),
            Err(e) => errors.push(format!("trial {i}: {e}")),
        }
    }
    Fuzz {
        outcomes,
        errors,
        elapsed: start.elapsed(),
    }
}

fn coverage(f: &Fuzz) -> String {
    let pure = f.outcomes.iter().filter(|o| o.spec.state_rank == 1).count();
    let rank_one = f.outcomes.iter().filter(|o| o.spec.rank_one).count();
    format!(
        "{} trials ({} pure, {} mixed, {} rank-one, {} general)",
        f.outcomes.len(),
        pure,
        f.outcomes.len() - pure,
        rank_one,
        f.outcomes.len() - rank_one
    )
}

fn probabilities(o: &TrialOutcome) -> (&[f64], &[f64]) {
    let m = &o.report.measurements;
    (&m[0].probabilities, &m[1].probabilities)
}

fn criterion_6(f: &Fuzz) -> Verdict {
    let mut bad = 0;
    let mut worst = f64::INFINITY;
    for o in &f.outcomes {
        let (pm, pn) = probabilities(o);
        for alpha in [0.6, 1.0, 2.0, 4.0] {
            let lhs = oracle_entropy(pm, alpha) + oracle_entropy(pn, conjugate(alpha));
            let slack = lhs - o.relation1_bound;
            worst = worst.min(slack);
            if slack.is_nan() || slack < -EXACT {
                bad += 1;
            }
        }
    }
    let mixed = f.outcomes.iter().any(|o| o.spec.state_rank > 1);
    let pure = f.outcomes.iter().any(|o| o.spec.state_rank == 1);
    let rank_one = f.outcomes.iter().any(|o| o.spec.rank_one);
    let general = f.outcomes.iter().any(|o| !o.spec.rank_one);
    Verdict {
        id: 6,
        title: "coupled bound on random instances",
        pass: bad == 0
            && f.errors.is_empty()
            && f.outcomes.len() == FUZZ_TRIALS
            && mixed
            && pure
            && rank_one
            && general
            && f.elapsed < Duration::from_secs(60),
        detail: format!(
            "{bad} violations, {} errors, min slack {worst:.3e}, {} in {:?}",
            f.errors.len(),
            coverage(f),
            f.elapsed
        ),
    }
}

fn criterion_7(f: &Fuzz) -> Verdict {
    let mut bad = 0;
    let mut worst = f64::INFINITY;
    for o in &f.outcomes {
        let (pm, pn) = probabilities(o);
        let bm = -pm.iter().cloned().fold(0.0, f64::max).log2();
        let bn = -pn.iter().cloned().fold(0.0, f64::max).log2();
        for alpha in [0.3, 1.0, 2.0, 10.0] {
            let (hm, hn) = (oracle_entropy(pm, alpha), oracle_entropy(pn, alpha));
            for slack in [hm - bm, hn - bn, hm + hn - o.uncoupled_bound] {
                worst = worst.min(slack);
                if slack.is_nan() || slack < -EXACT {
                    bad += 1;
                }
            }
        }
    }
    Verdict {
        id: 7,
        title: "single-measurement and uncoupled bounds on random instances",
        pass: bad == 0 && !f.outcomes.is_empty(),
        detail: format!("{bad} violations, min slack {worst:.3e}"),
    }
}

fn criterion_8(f: &Fuzz) -> Verdict {
    let mut above = 0;
    let mut unsaturated = 0;
    let mut max_gap = 0.0f64;
    for o in &f.outcomes {
        let p = o.report.pair.as_ref().unwrap();
        let fv = p.f.unwrap();
        if fv > p.max_root_product_norm + EXACT {
            above += 1;
        }
        if o.spec.rank_one {
            let gap = (p.max_root_product_norm - fv).abs();
            max_gap = max_gap.max(gap);
            if gap.is_nan() || gap > EXACT {
                unsaturated += 1;
            }
        }
    }
    Verdict {
        id: 8,
        title: "f below the largest root-product norm, equality for rank-one elements",
        pass: above == 0 && unsaturated == 0 && !f.outcomes.is_empty(),
        detail: format!("{above} above the norm, {unsaturated} rank-one gaps over tolerance, max gap {max_gap:.3e}"),
    }
}

fn criterion_9() -> Verdict {
    const GRID: [f64; 8] = [0.25, 0.5, 0.99, 1.0, 1.01, 2.0, 5.0, 20.0];
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut non_monotone = 0;
    let mut far = 0;
    let mut worst_gap = 0.0f64;
    for trial in 0..1000 {
        let len = rng.random_range(1..=16);
        let mut w: Vec<f64> = (0..len).map(|_| rng.random::<f64>()).collect();
        if trial % 4 == 0 {
            w[rng.random_range(0..len)] = 0.0;
        }
        if w.iter().sum::<f64>() == 0.0 {
            w[0] = 1.0;
        }
        let total: f64 = w.iter().sum();
        let p = ProbabilityDistribution::new(w.iter().map(|x| x / total).collect()).unwrap();
        let h: Vec<f64> = GRID
            .iter()
            .map(|&a| renyi_entropy(&p, RenyiOrder::new(a).unwrap()))
            .collect();
        if h.windows(2).any(|w| w[1] > w[0] + 1e-10) {
            non_monotone += 1;
        }
        let shannon = shannon_entropy(&p);
        for a in [1.0 - 1e-6, 1.0 + 1e-6] {
            let gap = (renyi_entropy(&p, RenyiOrder::new(a).unwrap()) - shannon).abs();
            worst_gap = worst_gap.max(gap);
            if gap > 1e-4 {
                far += 1;
            }
        }
    }
    Verdict {
        id: 9,
        title: "Rényi entropy monotone in the order and continuous at 1",
        pass: non_monotone == 0 && far == 0,
        detail: format!("{non_monotone} non-monotone, {far} far from Shannon, max gap {worst_gap:.3e}"),
    }
}

fn criterion_10(f: &Fuzz) -> Verdict {
    let coupled = f
        .outcomes
        .iter()
        .filter(|o| o.relation1_bound > o.uncoupled_bound + EXACT)
        .count();
    let uncoupled = f
        .outcomes
        .iter()
        .filter(|o| o.uncoupled_bound > o.relation1_bound + EXACT)
        .count();
    Verdict {
        id: 10,
        title: "neither bound dominates the other",
        pass: coupled >= 1 && uncoupled >= 1,
        detail: format!("coupled stronger {coupled}, uncoupled stronger {uncoupled}"),
    }
}

#[test]
fn acceptance() {
    let fuzz = run_fuzz_trials();
    let verdicts = vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(&fuzz),
        criterion_7(&fuzz),
        criterion_8(&fuzz),
        criterion_9(),
        criterion_10(&fuzz),
    ];
    for v in &verdicts {
        report(v);
    }
    let failed: Vec<usize> = verdicts.iter().filter(|v| !v.pass).map(|v| v.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
