//! Randomized verification suites. Trial `t` always draws from
//! `TrialRng::new(seed, stream)` with a stream derived from `t` alone, so
//! reports are identical for any number of worker threads.

use std::thread;

use super::identities::{identity_suite, IdentityOutcome};
use super::report::{CheckResult, Counterexample, Relation, TheoremReport};
use super::trace::trace_t_run;
use crate::adversarial::{
    auto_precision, example_matrix_h_shifted, leading_eps, slow_matrix_h, verify_slow_general,
    verify_slow_sweep, EXAMPLE_MIN_DIGITS,
};
use crate::error::{Error, Result};
use crate::kernel::{run_steps, sweep_with, t_operator};
use crate::matrix::{conjugate_signed_perm, SignedPermutation, SymMatrix};
use crate::rng::TrialRng;
use crate::scalar::{BigFloat, Precision, Scalar};
use crate::strategy::CyclicStrategy;

/// Required reduction factor of two `I1` cycles.
pub const MAIN_BOUND: f64 = 1.0 - 1e-5;

/// Scale of the off-diagonal entries in the near-diagonal family.
pub const NEAR_DIAGONAL_SCALE: f64 = 1e-8;

pub const SLOW_SWEEP_EPS: [&str; 3] = ["1e-6", "1e-8", "1e-10"];
pub const BLOCK_EPS: [&str; 2] = ["1e-2", "1e-3"];
pub const BLOCK_ORDERS: [usize; 3] = [5, 6, 8];

/// Sampling family of a patterned test matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Uniform,
    NearDiagonal,
    NearSlow,
}

impl Family {
    /// Half the trials are uniform, a quarter each come from the two stress families.
    pub fn of_trial(trial: u64) -> Family {
        match trial % 4 {
            2 => Family::NearDiagonal,
            3 => Family::NearSlow,
            _ => Family::Uniform,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Uniform => "uniform",
            Family::NearDiagonal => "near_diagonal",
            Family::NearSlow => "near_slow",
        }
    }
}

fn require_trials(trials: u64) -> Result<()> {
    if trials == 0 {
        return Err(Error::OutOfRange("trials must be positive".into()));
    }
    Ok(())
}

/// Upper-triangle entries `(a13, a14, a23, a24)` positions, 0-based.
const PATTERN_OFF: [(usize, usize); 4] = [(0, 2), (0, 3), (1, 2), (1, 3)];

fn patterned<T: Scalar>(p: Precision, diag: [f64; 4], off: [f64; 4]) -> SymMatrix<T> {
    SymMatrix::from_upper(4, p, |r, s| {
        if r == s {
            return T::from_f64(p, diag[r]);
        }
        match PATTERN_OFF.iter().position(|&q| q == (r, s)) {
            Some(k) => T::from_f64(p, off[k]),
            None => T::zero(p),
        }
    })
    .expect("order 4")
}

fn draw4(rng: &mut TrialRng, scale: f64) -> [f64; 4] {
    std::array::from_fn(|_| scale * rng.symmetric())
}

/// A random matrix with `a12 = a34 = 0` from the given family.
pub fn sample_patterned<T: Scalar>(family: Family, rng: &mut TrialRng, p: Precision) -> Result<SymMatrix<T>> {
    match family {
        Family::Uniform => {
            let diag = draw4(rng, 1.0);
            Ok(patterned(p, diag, draw4(rng, 1.0)))
        }
        Family::NearDiagonal => {
            let diag = draw4(rng, 1.0);
            Ok(patterned(p, diag, draw4(rng, NEAR_DIAGONAL_SCALE)))
        }
        Family::NearSlow => {
            let eps = 10f64.powf(-5.0 - 3.0 * rng.unit());
            let mut h = slow_matrix_h(&T::from_f64(p, eps))?;
            let noise = eps * eps;
            for r in 0..4 {
                for s in r..4 {
                    if (r, s) == (0, 1) || (r, s) == (2, 3) {
                        continue;
                    }
                    let v = h.get(r, s).clone() + T::from_f64(p, noise * rng.symmetric());
                    h.set(r, s, v);
                }
            }
            Ok(h)
        }
    }
}

/// Runs `f` on trials `0..trials` over `jobs` threads; results are in trial order.
pub fn run_trials<R, F>(trials: u64, jobs: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(u64) -> R + Sync,
{
    let jobs = jobs.clamp(1, trials.max(1) as usize) as u64;
    if jobs == 1 {
        return (0..trials).map(&f).collect();
    }
    let chunk = trials.div_ceil(jobs);
    thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|j| {
                let f = &f;
                scope.spawn(move || (j * chunk..((j + 1) * chunk).min(trials)).map(f).collect::<Vec<R>>())
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

/// `A^(0), A^(2), ..., A^(2m)` under `strategy`.
fn even_iterates<T: Scalar>(a: &SymMatrix<T>, strategy: &CyclicStrategy, m: usize) -> Result<Vec<SymMatrix<T>>> {
    let mut out = vec![a.clone()];
    let cycles = (2 * m).div_ceil(strategy.period());
    sweep_with(a, strategy, cycles, |k, _, x| {
        if k % 2 == 0 && k <= 2 * m {
            out.push(x.clone());
        }
    })?;
    Ok(out)
}

/// `S(A^(12)) / S(A)` under `I1`.
pub fn main_ratio<T: Scalar>(a: &SymMatrix<T>) -> Result<T> {
    let out = run_steps(a, &CyclicStrategy::i1(), 12)?;
    Ok(out.off_norm() / a.off_norm())
}

fn merge_identities(acc: &mut Vec<IdentityOutcome>, next: &[IdentityOutcome]) {
    if acc.is_empty() {
        acc.extend_from_slice(next);
    } else {
        for (a, n) in acc.iter_mut().zip(next) {
            a.merge(n);
        }
    }
}

fn push_identities(report: &mut TheoremReport, prefix: &str, outcomes: &[IdentityOutcome]) {
    for o in outcomes {
        report.push(CheckResult::new(format!("{prefix}{}", o.name), o.worst, Relation::AtMost, o.tolerance));
    }
}

fn fmt_f64(x: f64) -> String {
    format!("{x:.17e}")
}

struct MainTrial {
    family: Family,
    ratio: Option<f64>,
    identities: Vec<IdentityOutcome>,
    failure: Option<Counterexample>,
}

/// Two `I1` cycles on random patterned matrices must reduce the off-norm by
/// at least `1e-5`. Each trace is also checked against the identity suite.
pub fn verify_theorem_main<T: Scalar>(trials: u64, seed: u64, p: Precision, jobs: usize) -> Result<TheoremReport> {
    require_trials(trials)?;
    let results = run_trials(trials, jobs, |t| -> Result<MainTrial> {
        let family = Family::of_trial(t);
        let a = sample_patterned::<T>(family, &mut TrialRng::new(seed, t), p)?;
        if a.off_norm().is_zero() {
            return Ok(MainTrial { family, ratio: None, identities: Vec::new(), failure: None });
        }
        let ratio = main_ratio(&a)?.to_f64();
        let identities = identity_suite(&trace_t_run(&a, 6)?);
        let failure = if ratio > MAIN_BOUND || ratio.is_nan() {
            Some(Counterexample::new("max_ratio", &a, Some(seed), Some(t), Some(12)))
        } else {
            identities
                .iter()
                .find(|o| !o.pass())
                .map(|o| Counterexample::new(&format!("identity.{}", o.name), &a, Some(seed), Some(t), o.worst_step))
        };
        Ok(MainTrial { family, ratio: Some(ratio), identities, failure })
    });

    let mut report = TheoremReport::new("thm36", p, Some(seed), trials);
    let mut worst = (f64::NEG_INFINITY, 0u64);
    let mut per_family = [f64::NEG_INFINITY; 3];
    let mut ids = Vec::new();
    for (t, r) in results.into_iter().enumerate() {
        let r = r?;
        let Some(ratio) = r.ratio else {
            report.skipped += 1;
            continue;
        };
        if ratio > worst.0 || ratio.is_nan() {
            worst = (if ratio.is_nan() { f64::INFINITY } else { ratio }, t as u64);
        }
        let slot = &mut per_family[r.family as usize];
        *slot = slot.max(ratio);
        merge_identities(&mut ids, &r.identities);
        if let Some(c) = r.failure {
            report.attach(c);
        }
    }
    report.push(CheckResult::new("max_ratio", worst.0, Relation::AtMost, MAIN_BOUND));
    push_identities(&mut report, "identity.", &ids);
    report.value("max_ratio", fmt_f64(worst.0));
    report.value("worst_trial", worst.1);
    for f in [Family::Uniform, Family::NearDiagonal, Family::NearSlow] {
        report.value(&format!("max_ratio.{}", f.name()), fmt_f64(per_family[f as usize]));
    }
    Ok(report)
}

/// Zero pattern and expected conclusion of the six special cases.
#[derive(Clone, Copy, Debug)]
struct SpecialCase {
    name: &'static str,
    zero: &'static [(usize, usize)],
    diagonal_after: Option<usize>,
}

const SPECIAL_CASES: [SpecialCase; 6] = [
    SpecialCase { name: "case_i", zero: &[(0, 3), (1, 2)], diagonal_after: Some(2) },
    SpecialCase { name: "case_ii", zero: &[(0, 2), (1, 3)], diagonal_after: Some(4) },
    SpecialCase { name: "case_iii", zero: &[(0, 2)], diagonal_after: None },
    SpecialCase { name: "case_iv", zero: &[(1, 3)], diagonal_after: None },
    SpecialCase { name: "case_v", zero: &[(0, 3)], diagonal_after: None },
    SpecialCase { name: "case_vi", zero: &[(1, 2)], diagonal_after: None },
];

/// Patterned matrices with extra zeros: the first two cases end diagonal
/// after two and four steps, the other four halve `S²` within four steps.
pub fn verify_lemma_special_cases<T: Scalar>(trials: u64, seed: u64, p: Precision, jobs: usize) -> Result<TheoremReport> {
    require_trials(trials)?;
    let tol = p.verification_tolerance();
    let strategy = CyclicStrategy::i1();
    let mut report = TheoremReport::new("lemma37", p, Some(seed), trials * SPECIAL_CASES.len() as u64);
    for (c, case) in SPECIAL_CASES.iter().enumerate() {
        let results = run_trials(trials, jobs, |t| -> Result<Option<(f64, SymMatrix<T>)>> {
            let mut rng = TrialRng::new(seed, t * SPECIAL_CASES.len() as u64 + c as u64);
            let diag = draw4(&mut rng, 1.0);
            let mut off = draw4(&mut rng, 1.0);
            for z in case.zero {
                off[PATTERN_OFF.iter().position(|q| q == z).expect("pattern entry")] = 0.0;
            }
            let a = patterned::<T>(p, diag, off);
            if a.off_norm().is_zero() {
                return Ok(None);
            }
            let value = match case.diagonal_after {
                Some(steps) => run_steps(&a, &strategy, steps)?.off_norm().to_f64(),
                None => (run_steps(&a, &strategy, 4)?.off_norm_sq() / a.off_norm_sq()).to_f64(),
            };
            Ok(Some((value, a)))
        });
        let (relation, limit, check) = match case.diagonal_after {
            Some(steps) => (Relation::Below, tol, format!("{}_off_norm_after_{steps}", case.name)),
            None => (Relation::AtMost, 0.5 * (1.0 + tol), format!("{}_ratio_sq_after_4", case.name)),
        };
        let mut worst = f64::NEG_INFINITY;
        for (t, r) in results.into_iter().enumerate() {
            let Some((v, a)) = r? else {
                report.skipped += 1;
                continue;
            };
            let v = if v.is_nan() { f64::INFINITY } else { v };
            worst = worst.max(v);
            if !relation.holds(v, limit) {
                report.attach(Counterexample::new(&check, &a, Some(seed), Some(t as u64), case.diagonal_after.or(Some(4))));
            }
        }
        report.push(CheckResult::new(check, worst, relation, limit));
    }
    Ok(report)
}

/// `T^k(A) = (Q^k)ᵀ A^(2k) Q^k` for `k = 0..=6`, entrywise.
pub fn verify_prop_34<T: Scalar>(trials: u64, seed: u64, p: Precision, jobs: usize) -> Result<TheoremReport> {
    require_trials(trials)?;
    let tol = p.verification_tolerance();
    let q = SignedPermutation::q4();
    let strategy = CyclicStrategy::i1();
    let results = run_trials(trials, jobs, |t| -> Result<(f64, f64, usize, SymMatrix<T>)> {
        let a = sample_patterned::<T>(Family::Uniform, &mut TrialRng::new(seed, t), p)?;
        let mut b = a.clone();
        let s0 = a.off_norm();
        let iterates = even_iterates(&a, &strategy, 6)?;
        let (mut worst, mut worst_s, mut at) = (0.0f64, 0.0f64, 0usize);
        for (k, steps) in iterates.iter().enumerate() {
            if k > 0 {
                b = t_operator(&b)?.0;
            }
            let conj = conjugate_signed_perm(steps, &q.power(k as u32))?;
            let d = b.max_abs_diff(&conj)?.to_f64();
            if d > worst {
                worst = d;
                at = k;
            }
            if !s0.is_zero() {
                worst_s = worst_s.max(((b.off_norm() - steps.off_norm()).abs() / s0.clone()).to_f64());
            }
        }
        Ok((worst, worst_s, at, a))
    });
    let mut report = TheoremReport::new("prop34", p, Some(seed), trials);
    let (mut worst, mut worst_s) = (0.0f64, 0.0f64);
    for (t, r) in results.into_iter().enumerate() {
        let (d, ds, k, a) = r?;
        worst = worst.max(d);
        worst_s = worst_s.max(ds);
        if d >= tol || d.is_nan() {
            report.attach(Counterexample::new("max_entry_deviation", &a, Some(seed), Some(t as u64), Some(k)));
        }
    }
    report.push(CheckResult::new("max_entry_deviation", worst, Relation::Below, tol));
    report.push(CheckResult::new("max_off_norm_rel_deviation", worst_s, Relation::Below, tol));
    Ok(report)
}

/// `I2` on `A` against `I1` on `PᵀAP` for `P` in `{P12, P34}`: after `2r`
/// steps, `r = 1, 2, 3`, the iterates agree up to conjugation by `P`.
pub fn verify_prop_32<T: Scalar>(trials: u64, seed: u64, p: Precision, jobs: usize) -> Result<TheoremReport> {
    require_trials(trials)?;
    let tol = p.verification_tolerance();
    let perms = [
        ("p12", SignedPermutation::transposition(4, 1, 2)?),
        ("p34", SignedPermutation::transposition(4, 3, 4)?),
    ];
    let (i1, i2) = (CyclicStrategy::i1(), CyclicStrategy::i2());
    let results = run_trials(trials, jobs, |t| -> Result<([f64; 2], SymMatrix<T>)> {
        let mut rng = TrialRng::new(seed, t);
        let a = SymMatrix::from_upper(4, p, |_, _| T::from_f64(p, rng.symmetric()))?;
        let mut worst = [0.0f64; 2];
        for (w, (_, perm)) in worst.iter_mut().zip(&perms) {
            let xs = even_iterates(&a, &i2, 3)?;
            let ys = even_iterates(&conjugate_signed_perm(&a, perm)?, &i1, 3)?;
            for (x, y) in xs.iter().zip(&ys).skip(1) {
                *w = w.max(y.max_abs_diff(&conjugate_signed_perm(x, perm)?)?.to_f64());
            }
        }
        Ok((worst, a))
    });
    let mut report = TheoremReport::new("prop32", p, Some(seed), trials);
    let mut worst = [0.0f64; 2];
    for (t, r) in results.into_iter().enumerate() {
        let (w, a) = r?;
        for (k, (name, _)) in perms.iter().enumerate() {
            worst[k] = worst[k].max(w[k]);
            if w[k] >= tol || w[k].is_nan() {
                report.attach(Counterexample::new(&format!("max_entry_deviation_{name}"), &a, Some(seed), Some(t as u64), None));
            }
        }
    }
    for (k, (name, _)) in perms.iter().enumerate() {
        report.push(CheckResult::new(format!("max_entry_deviation_{name}"), worst[k], Relation::Below, tol));
    }
    Ok(report)
}

/// The identity suite on random traces of every sampling family, plus the
/// slow family and, at 100 digits or more, the worked example.
pub fn verify_identities<T: Scalar>(trials: u64, seed: u64, p: Precision, jobs: usize) -> Result<TheoremReport> {
    require_trials(trials)?;
    let results = run_trials(trials, jobs, |t| -> Result<(Vec<IdentityOutcome>, SymMatrix<T>)> {
        let a = sample_patterned::<T>(Family::of_trial(t), &mut TrialRng::new(seed, t), p)?;
        Ok((identity_suite(&trace_t_run(&a, 6)?), a))
    });
    let mut report = TheoremReport::new("identities", p, Some(seed), trials);
    let mut ids = Vec::new();
    for (t, r) in results.into_iter().enumerate() {
        let (o, a) = r?;
        if let Some(bad) = o.iter().find(|o| !o.pass()) {
            report.attach(Counterexample::new(&bad.name, &a, Some(seed), Some(t as u64), bad.worst_step));
        }
        merge_identities(&mut ids, &o);
    }
    let mut structured = vec![slow_matrix_h(&T::from_f64(p, 1e-6))?];
    if p.decimal_digits() >= EXAMPLE_MIN_DIGITS {
        structured.push(example_matrix_h_shifted(p)?);
    }
    for a in &structured {
        let o = identity_suite(&trace_t_run(a, 6)?);
        if let Some(bad) = o.iter().find(|o| !o.pass()) {
            report.attach(Counterexample::new(&bad.name, a, None, None, bad.worst_step));
        }
        merge_identities(&mut ids, &o);
    }
    push_identities(&mut report, "", &ids);
    report.value("structured_traces", structured.len());
    Ok(report)
}

/// One-cycle slow family check for each `ε` in `eps`, each at its
/// automatically selected precision.
pub fn verify_slow_sweep_suite(eps: &[&str]) -> Result<Vec<TheoremReport>> {
    eps.iter()
        .map(|e| {
            let p = auto_precision(parse_f64(e)?);
            let mut r = verify_slow_sweep(&BigFloat::parse(p, e)?)?;
            r.theorem = format!("{}@eps={e}", r.theorem);
            Ok(r)
        })
        .collect()
}

/// Block construction check for every order and `ε`, at the precision
/// selected for the leading block parameter.
pub fn verify_slow_general_suite(orders: &[usize], eps: &[&str], dense: bool) -> Result<Vec<TheoremReport>> {
    let mut out = Vec::new();
    for e in eps {
        let lead = leading_eps(&parse_f64(e)?)?;
        let p = auto_precision(lead);
        let eps = BigFloat::parse(p, e)?;
        for &n in orders {
            let mut r = verify_slow_general(&eps, n, dense)?;
            r.theorem = format!("{}@n={n},eps={e}", r.theorem);
            out.push(r);
        }
    }
    Ok(out)
}

fn parse_f64(s: &str) -> Result<f64> {
    s.parse().map_err(|_| Error::Parse(format!("bad number `{s}`")))
}
