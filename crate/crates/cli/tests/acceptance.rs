//! Acceptance suite: one PASS/FAIL line per criterion. Seeds, point counts,
//! tolerances and time budgets are pinned below.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::Parser;
use qhyper::askey_wilson::{aw_hermite_degenerate, eval_aw, eval_special_value, AWParams, Rep, SpecialArgs, SpecialValueId};
use qhyper::identities::{self, point_rng, sample_point, sample_until, RhsKind, MAX_REJECTIONS};
use qhyper::integrals::{sweep_integral, IntegralOptions, IntegralRepId};
use qhyper::products::{
    self, awgf_coefficient_check, nassrallah2_matches_cayley_orr_b, quad_cor13, sample_product_point, sweep_classical,
    sweep_product, thm21_matches_cayley_orr_a, triple_at_u_equals_t, triple_sum_32pf, ClassicalLimit, ProductId,
    ProductOptions, TripleSumParams,
};
use qhyper::qkernel::qpoch;
use qhyper::report::{ParamMap, VerificationReport};
use qhyper::{Error, ExactScalar, Scalar};
use qhyper_cli::{run, Cli, RunConfig};

type X = ExactScalar;

const SEED: u64 = 20_240_601;
const TERMINATING_POINTS: usize = 25;
const TERMINATING_N: std::ops::RangeInclusive<usize> = 0..=8;
const ODD_N: [usize; 5] = [1, 3, 5, 7, 9];
const AW_POINTS: usize = 25;
const AW_MAX_N: usize = 8;
const SPECIAL_POINTS: usize = 5;
const SPECIAL_MAX_N: usize = 10;
const AWGF_POINTS: usize = 10;
const AWGF_MAX_N: usize = 10;
const TRIPLE_POINTS: usize = 5;
const TRIPLE_EPS: f64 = 1e-30;
const U_EQUALS_T_EPS: f64 = 1e-28;
const PRODUCT_POINTS: usize = 5;
const PRODUCT_EPS: f64 = 1e-30;
const PRODUCT_RADIUS: f64 = 0.25;
const COEFFICIENT_ORDER: usize = 9;
const CAYLEY_ORR_POINTS: usize = 5;
const CAYLEY_ORR_MAX_N: usize = 10;
const INTEGRAL_POINTS: usize = 2;
const INTEGRAL_EPS: f64 = 1e-25;
const CLASSICAL_POINTS: usize = 3;

const TERMINATING_BUDGET: Duration = Duration::from_secs(300);
const TRIPLE_BUDGET: Duration = Duration::from_secs(120);
const INTEGRAL_BUDGET: Duration = Duration::from_secs(300);

/// Outcome of one criterion: pass flag and a one-line account.
type Verdict = (bool, String);

type Criterion = fn() -> qhyper::Result<Verdict>;

fn tally(reports: &[VerificationReport]) -> (usize, usize) {
    (reports.len(), reports.iter().filter(|r| !r.pass).count())
}

fn first_failure(reports: &[VerificationReport]) -> String {
    match reports.iter().find(|r| !r.pass) {
        Some(r) => format!("; first failure {} n={:?} at {:?}: {} vs {}", r.identity_id, r.n, r.params, r.lhs, r.rhs),
        None => String::new(),
    }
}

fn budget(start: Instant, limit: Duration) -> (bool, String) {
    let t = start.elapsed();
    (t <= limit, format!("{:.1} s of {} s", t.as_secs_f64(), limit.as_secs()))
}

/// Random exact points for the named parameters, redrawn while `eval`
/// reports a pole.
fn points<T>(seed: u64, count: usize, names: &[&str], mut eval: impl FnMut(&ParamMap) -> qhyper::Result<T>) -> qhyper::Result<Vec<T>> {
    (0..count)
        .map(|i| {
            let mut rng = point_rng(seed, i as u64);
            for _ in 0..MAX_REJECTIONS {
                match eval(&sample_point(names, &mut rng)) {
                    Err(Error::PoleError { .. }) | Err(Error::ConstraintViolation(_)) => continue,
                    other => return other,
                }
            }
            Err(Error::SamplerExhausted { id: names.join(","), attempts: MAX_REJECTIONS })
        })
        .collect()
}

fn terminating_suite() -> qhyper::Result<Verdict> {
    let start = Instant::now();
    let exact: Vec<_> = identities::records().iter().filter(|r| r.kind == RhsKind::Exact).collect();
    let mut all = Vec::new();
    for rec in &exact {
        all.extend(identities::sweep(rec.id, TERMINATING_POINTS, SEED, TERMINATING_N)?);
    }
    let bad: Vec<_> = all.iter().filter(|r| !r.degenerate && (!r.pass || r.abs_err != 0.0)).cloned().collect();
    let (in_time, t) = budget(start, TERMINATING_BUDGET);
    Ok((
        exact.len() == 20 && bad.is_empty() && in_time,
        format!(
            "terminating identities: {} exact ids x {TERMINATING_POINTS} points x n=0..8, {} checks, {} unequal ({t}){}",
            exact.len(),
            all.len(),
            bad.len(),
            first_failure(&bad)
        ),
    ))
}

fn parity_vanishing() -> qhyper::Result<Verdict> {
    let mut checks = 0;
    let mut bad = Vec::new();
    for id in ["T_ANDREWS_WATSON", "T_BAILEY41", "T_GASPER_RAHMAN_WATSON"] {
        let rec = identities::lookup(id)?;
        for t in 0..TERMINATING_POINTS {
            let mut rng = point_rng(SEED, t as u64);
            let rows = sample_until(id, rec.params, &mut rng, |p| {
                ODD_N.iter().map(|&n| Ok((p.clone(), n, rec.lhs_value(p, n)?, identities::verify(id, p, n)?))).collect::<qhyper::Result<Vec<_>>>()
            })?;
            for (p, n, lhs, report) in rows {
                checks += 1;
                if !(lhs.is_zero() && report.degenerate && report.pass) {
                    bad.push(format!("{id} n={n} at {p:?}"));
                }
            }
        }
    }
    Ok((bad.is_empty(), format!("parity vanishing: {checks} odd-n checks over 3 ids, {} nonzero{}", bad.len(), bad.first().map(|b| format!("; first {b}")).unwrap_or_default())))
}

fn aw_point(p: &ParamMap, n: usize) -> AWParams<X> {
    AWParams { a: p["a"].clone(), b: p["b"].clone(), c: p["c"].clone(), d: p["d"].clone(), q: p["q"].clone(), w: p["w"].clone(), n }
}

fn aw_cross_representation() -> qhyper::Result<Verdict> {
    let names = ["q", "a", "b", "c", "d", "w"];
    let rows = points(SEED, AW_POINTS, &names, |p| {
        (0..=AW_MAX_N)
            .map(|n| {
                let vals = Rep::ALL.iter().map(|&r| eval_aw(&aw_point(p, n), r)).collect::<qhyper::Result<Vec<_>>>()?;
                let at_d = eval_aw(&AWParams { w: p["d"].clone(), ..aw_point(p, n) }, Rep::R1)?;
                // p_n at w = d from the product closed form d^{-n} (ad, bd, cd; q)_n.
                let (d, q) = (&p["d"], &p["q"]);
                let oracle = d.powi(-(n as i64))
                    * &qpoch(&(p["a"].clone() * d), q, n)
                    * &qpoch(&(p["b"].clone() * d), q, n)
                    * &qpoch(&(p["c"].clone() * d), q, n);
                let sv = eval_special_value(
                    SpecialValueId::Aw32,
                    &SpecialArgs { q, a: &p["a"], b: &p["b"], c: Some(&p["c"]), d: Some(d) },
                    n,
                )?;
                Ok((vals.windows(2).all(|w| w[0] == w[1]), at_d == oracle && sv.lhs == sv.rhs && sv.rhs == oracle))
            })
            .collect::<qhyper::Result<Vec<_>>>()
    })?;
    let flat: Vec<_> = rows.into_iter().flatten().collect();
    let reps_bad = flat.iter().filter(|x| !x.0).count();
    let aw32_bad = flat.iter().filter(|x| !x.1).count();
    Ok((
        reps_bad == 0 && aw32_bad == 0,
        format!("Askey-Wilson R1=R2=R3=CONV: {} (point, n) pairs, {reps_bad} disagreements; w=d product value: {aw32_bad} mismatches", flat.len()),
    ))
}

fn special_values() -> qhyper::Result<Verdict> {
    let quadratic = [SpecialValueId::Bailey0, SpecialValueId::AndrewsWhipple0, SpecialValueId::Newquad, SpecialValueId::Esoteric];
    let mut checks = 0;
    let mut alt_checks = 0;
    let mut bad = Vec::new();
    for id in quadratic {
        let rows = points(SEED, SPECIAL_POINTS, &["q", "a", "b"], |p| {
            (0..=SPECIAL_MAX_N)
                .map(|n| eval_special_value(id, &SpecialArgs { q: &p["q"], a: &p["a"], b: &p["b"], c: None, d: None }, n).map(|v| (p.clone(), n, v)))
                .collect::<qhyper::Result<Vec<_>>>()
        })?;
        for (p, n, v) in rows.into_iter().flatten() {
            checks += 1;
            let alt_ok = v.rhs_alt.as_ref().is_none_or(|alt| {
                alt_checks += 1;
                *alt == v.rhs
            });
            if v.lhs != v.rhs || !alt_ok {
                bad.push(format!("{} n={n} at {p:?}", id.name()));
            }
        }
    }
    Ok((
        bad.is_empty() && alt_checks > 0,
        format!(
            "quadratic special values: {checks} checks for n<=10 incl. {alt_checks} two-form consistency checks, {} mismatches{}",
            bad.len(),
            bad.first().map(|b| format!("; first {b}")).unwrap_or_default()
        ),
    ))
}

/// Continuous q-Hermite polynomial `sum_k [n k]_q w^{n-2k}`.
fn q_hermite(w: &X, q: &X, n: usize) -> X {
    (0..=n).fold(X::from_i64(0), |acc, k| {
        let binom = qpoch(q, q, n) / &(qpoch(q, q, k) * &qpoch(q, q, n - k));
        acc + &(binom * &w.powi(n as i64 - 2 * k as i64))
    })
}

fn generating_function() -> qhyper::Result<Verdict> {
    let names = ["q", "a", "b", "c", "d", "w"];
    let rows = points(SEED, AWGF_POINTS, &names, |p| awgf_coefficient_check(&p["a"], &p["b"], &p["c"], &p["d"], &p["w"], &p["q"], AWGF_MAX_N))?;
    let flat: Vec<_> = rows.into_iter().flatten().collect();
    let (total, failed) = tally(&flat);
    let zero = X::from_i64(0);
    let (w, q) = (X::gauss(2, 3, 1, 4), X::ratio(-1, 3));
    let hermite = awgf_coefficient_check(&zero, &zero, &zero, &zero, &w, &q, AWGF_MAX_N)?;
    let mut hermite_bad = hermite.iter().filter(|r| !r.pass).count();
    for n in 0..=AWGF_MAX_N {
        if aw_hermite_degenerate(&w, &q, n)? != q_hermite(&w, &q, n) {
            hermite_bad += 1;
        }
    }
    Ok((
        failed == 0 && hermite_bad == 0,
        format!("generating function: {total} coefficients at {AWGF_POINTS} points, {failed} unequal; q-Hermite degeneration: {hermite_bad} mismatches{}", first_failure(&flat)),
    ))
}

fn triple_and_quadruple_sums() -> qhyper::Result<Verdict> {
    let start = Instant::now();
    let opts = ProductOptions { prec: 256, eps: TRIPLE_EPS, radius: PRODUCT_RADIUS };
    let ut_opts = ProductOptions { eps: U_EQUALS_T_EPS, ..opts };
    let mut reports = Vec::new();
    for i in 0..TRIPLE_POINTS {
        let mut rng = point_rng(SEED, i as u64);
        let mut done = false;
        for _ in 0..MAX_REJECTIONS {
            let p = TripleSumParams::from_map(&sample_product_point(ProductId::Triple32pf, &mut rng))?;
            let attempt = (|| Ok::<_, Error>([triple_sum_32pf(&p, &opts)?, quad_cor13(&p, &opts)?, triple_at_u_equals_t(&p, &ut_opts)?]))();
            match attempt {
                Err(Error::PoleError { .. }) | Err(Error::ConstraintViolation(_)) | Err(Error::DivergenceError(_)) => continue,
                other => {
                    reports.extend(other?);
                    done = true;
                    break;
                }
            }
        }
        if !done {
            return Err(Error::SamplerExhausted { id: "TRIPLE_32PF".into(), attempts: MAX_REJECTIONS });
        }
    }
    let (total, failed) = tally(&reports);
    let (in_time, t) = budget(start, TRIPLE_BUDGET);
    Ok((
        failed == 0 && in_time,
        format!("triple and quadruple sums: {TRIPLE_POINTS} points, {total} checks at 1e-30 (u=t at 1e-28), {failed} failed ({t}){}", first_failure(&reports)),
    ))
}

fn product_transformations() -> qhyper::Result<Verdict> {
    let opts = ProductOptions { prec: 256, eps: PRODUCT_EPS, radius: PRODUCT_RADIUS };
    let mut values = Vec::new();
    for id in ProductId::ALL {
        values.extend(sweep_product(id, PRODUCT_POINTS, SEED, &opts)?);
    }
    let mut coeffs = Vec::new();
    let exact_ids: Vec<_> = ProductId::ALL.into_iter().filter(|id| id.has_exact_coefficients()).collect();
    for &id in &exact_ids {
        for i in 0..PRODUCT_POINTS {
            let mut rng = point_rng(SEED, i as u64);
            let rs = (0..MAX_REJECTIONS)
                .find_map(|_| match products::product_coefficient_check(id, &sample_product_point(id, &mut rng), COEFFICIENT_ORDER) {
                    Err(Error::PoleError { .. }) | Err(Error::ConstraintViolation(_)) => None,
                    other => Some(other),
                })
                .unwrap_or(Err(Error::SamplerExhausted { id: id.name().into(), attempts: MAX_REJECTIONS }))?;
            coeffs.extend(rs);
        }
    }
    let (vt, vf) = tally(&values);
    let (ct, cf) = tally(&coeffs);
    Ok((
        vf == 0 && cf == 0 && vt == ProductId::ALL.len() * PRODUCT_POINTS,
        format!(
            "product transformations: {vt} value checks over {} ids, {vf} failed; {ct} exact coefficients through z^9 over {} ids, {cf} unequal{}{}",
            ProductId::ALL.len(),
            exact_ids.len(),
            first_failure(&values),
            first_failure(&coeffs)
        ),
    ))
}

fn cayley_orr_consistency() -> qhyper::Result<Verdict> {
    let rows = points(SEED, CAYLEY_ORR_POINTS, &["q", "a", "b"], |p| {
        let mut v = thm21_matches_cayley_orr_a(&p["q"], &p["a"], &p["b"], CAYLEY_ORR_MAX_N)?;
        v.extend(nassrallah2_matches_cayley_orr_b(&p["q"], &p["a"], &p["b"], CAYLEY_ORR_MAX_N)?);
        Ok(v)
    })?;
    let flat: Vec<_> = rows.into_iter().flatten().collect();
    let (total, failed) = tally(&flat);
    Ok((
        failed == 0 && total == CAYLEY_ORR_POINTS * 2 * (CAYLEY_ORR_MAX_N + 1),
        format!("Cayley-Orr consistency: {total} coefficients (THM21 and NASSRALLAH_2, n<=10), {failed} unequal{}", first_failure(&flat)),
    ))
}

fn integral_representations() -> qhyper::Result<Verdict> {
    let start = Instant::now();
    let opts = IntegralOptions { eps: INTEGRAL_EPS, ..IntegralOptions::default() };
    let mut reports = Vec::new();
    for id in IntegralRepId::ALL {
        reports.extend(sweep_integral(id, INTEGRAL_POINTS, SEED, &opts)?);
    }
    let (total, failed) = tally(&reports);
    let (in_time, t) = budget(start, INTEGRAL_BUDGET);
    let worst = reports.iter().map(|r| r.rel_err).fold(0.0, f64::max);
    Ok((
        failed == 0 && in_time && total == IntegralRepId::ALL.len() * INTEGRAL_POINTS * 3,
        format!(
            "integral representations: {total} checks (series at 1e-25, sigma and f independence at 2e-25), {failed} failed, worst {worst:.1e} ({t}){}",
            first_failure(&reports)
        ),
    ))
}

fn classical_limits() -> qhyper::Result<Verdict> {
    let mut reports = Vec::new();
    for which in ClassicalLimit::ALL {
        reports.extend(sweep_classical(which, CLASSICAL_POINTS, SEED)?);
    }
    let (total, failed) = tally(&reports);
    Ok((failed == 0, format!("classical limits: {total} checks at 1e-10, {failed} failed{}", first_failure(&reports))))
}

fn determinism() -> qhyper::Result<Verdict> {
    let sweeps: [&[&str]; 4] = [
        &["qhyper", "sweep", "T_NEW_N2", "--trials", "25", "--seed", "7", "--n-range", "0..8"],
        &["qhyper", "sweep", "SRIV_JAIN", "--trials", "5", "--seed", "7"],
        &["qhyper", "sweep", "THM21", "--mode", "exact", "--trials", "3", "--seed", "7", "--format", "csv"],
        &["qhyper", "sweep", "IR_SRIV_JAIN", "--trials", "1", "--seed", "7"],
    ];
    let mut differing = Vec::new();
    for args in sweeps {
        let once = || -> qhyper::Result<String> {
            let cfg = RunConfig::from_cli(Cli::parse_from(args)).map_err(Error::ConstraintViolation)?;
            run(&cfg).map(|o| o.text).map_err(|e| Error::ConstraintViolation(e.to_string()))
        };
        if once()? != once()? {
            differing.push(args[2]);
        }
    }
    Ok((differing.is_empty(), format!("determinism: {} sweeps rerun, {} differ {:?}", sweeps.len(), differing.len(), differing)))
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 11] = [
        ("1", terminating_suite),
        ("2", parity_vanishing),
        ("3", aw_cross_representation),
        ("4", special_values),
        ("5", generating_function),
        ("6", triple_and_quadruple_sums),
        ("7", product_transformations),
        ("8", cayley_orr_consistency),
        ("9", integral_representations),
        ("10", classical_limits),
        ("11", determinism),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (label, check) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| f == label) {
            continue;
        }
        let (pass, line) = check().unwrap_or_else(|e| (false, format!("error: {e}")));
        println!("criterion {label:>2}: {}  {line}", if pass { "PASS" } else { "FAIL" });
        failed += usize::from(!pass);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} acceptance criteria failed");
        ExitCode::FAILURE
    }
}
