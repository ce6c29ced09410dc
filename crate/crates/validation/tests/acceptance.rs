//! Acceptance criteria 1 to 11. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use divseries::arith::multiperfect_up_to;
use divseries::identities::verify_sigma_power_product;
use divseries::ramanujan::{ramanujan_hoelder, DirectEvaluator};
use divseries::series::{
    coefficient_extremes, convergence_profiles, convolved_coefficient, eval_central_binomial, eval_geometric_half_many,
    eval_squarefree_many, expansion_terms, SeriesId, SeriesValue, SigmaOrder, WeightKind,
};
use divseries::zetakit::{
    dilog_half, estimate_binomial_constant, leshchiner_check, zeta_alternating, zeta_central_binomial, zeta_direct,
    zeta_srivastava, Alternation, LeshchinerFamily, Precision,
};
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn ensure(ok: bool, detail: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(detail())
    }
}

fn precision() -> Precision {
    Precision::default()
}

fn bits() -> u32 {
    precision().bits()
}

fn float(q: &Rational) -> Float {
    Float::with_val(bits(), q)
}

fn gap(a: &Float, b: &Float) -> f64 {
    Float::with_val(bits(), a - b).abs().to_f64()
}

fn pi() -> Float {
    Float::with_val(bits(), Constant::Pi)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Möbius and totient by trial division.
fn mu_phi(n: u64) -> (i64, u64) {
    let (mut m, mut mu, mut phi) = (n, 1i64, n);
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            mu = if e > 1 { 0 } else { -mu };
            phi = phi / p * (p - 1);
        }
        p += 1;
    }
    if m > 1 {
        mu = -mu;
        phi = phi / m * (m - 1);
    }
    (mu, phi)
}

/// `c_k(N) = Σ_{d | gcd(k, N)} d μ(k/d)`.
fn ramanujan_oracle(k: u64, n: u64) -> i64 {
    let g = gcd(k, n);
    (1..=g).filter(|d| g % d == 0).map(|d| d as i64 * mu_phi(k / d).0).sum()
}

/// `σ_s(N) / N^s` by listing divisors.
fn sigma_ratio_oracle(s: u32, n: u64) -> Rational {
    let total: Integer = (1..=n).filter(|d| n % d == 0).map(|d| Integer::from(d).pow(s)).sum();
    Rational::from((total, Integer::from(n).pow(s)))
}

fn inverse_central_binomial(d: u64) -> Rational {
    Rational::from((1, Integer::from(2 * d).binomial(d as u32)))
}

/// 1. Closed form and exponential sum agree on every `1 ≤ k, N ≤ 200`.
fn hoelder_matches_direct() -> Outcome {
    let start = Instant::now();
    let mut mismatches = 0;
    for k in 1..=200u64 {
        let direct = DirectEvaluator::new(k, precision()).map_err(|e| e.to_string())?;
        for n in 1..=200u64 {
            let n = Integer::from(n);
            let closed = ramanujan_hoelder(&Integer::from(k), &n).map_err(|e| e.to_string())?;
            if direct.evaluate(&n).ok() != Some(closed) {
                mismatches += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(mismatches == 0, || format!("{mismatches} mismatches"))?;
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("40000 cases, 0 mismatches in {:.2} s", elapsed.as_secs_f64()))
}

/// 2. Prefactors 3, 5/2, 36/17 and the central-binomial `ζ(2)`, `ζ(4)`.
fn prefactors_and_binomial_zeta() -> Outcome {
    let mut worst: f64 = 0.0;
    for (s, alternation, expected) in [
        (2, Alternation::Plain, Rational::from(3)),
        (3, Alternation::Alternating, Rational::from((5, 2))),
        (4, Alternation::Plain, Rational::from((36, 17))),
    ] {
        let estimate = estimate_binomial_constant(s, alternation, 60, precision()).map_err(|e| e.to_string())?;
        let d = gap(estimate.value.value(), &float(&expected));
        worst = worst.max(d);
        ensure(d <= 1e-12, || format!("s = {s}: off by {d:e} from {expected}"))?;
    }
    let pi = pi();
    let zeta2 = Float::with_val(bits(), pi.square_ref()) / 6u32;
    let zeta4 = Float::with_val(bits(), (&pi).pow(4u32)) / 90u32;
    let d2 = gap(
        &float(&zeta_central_binomial(2, 40).map_err(|e| e.to_string())?),
        &zeta2,
    );
    let d4 = gap(
        &float(&zeta_central_binomial(4, 40).map_err(|e| e.to_string())?),
        &zeta4,
    );
    ensure(d2 <= 1e-20 && d4 <= 1e-20, || {
        format!("zeta(2) off by {d2:e}, zeta(4) off by {d4:e}")
    })?;
    Ok(format!(
        "prefactor error <= {worst:.1e}; zeta(2), zeta(4) errors {d2:.1e}, {d4:.1e}"
    ))
}

/// 3. The first four terms of the `σ(N)/(3N)` expansion, bracket by bracket.
fn first_four_brackets() -> Outcome {
    for n in 1..=60u64 {
        let c = |k| Rational::from(ramanujan_oracle(k, n));
        let half = |q: Rational| q / 2u32;
        let brackets = [
            Rational::from((1, 2)),
            (half(c(2)) + Rational::from((1, 6))) / 4u32,
            (half(c(3)) + Rational::from((1, 20))) / 9u32,
            (half(c(4)) + c(2) / 6u32 + Rational::from((1, 70))) / 16u32,
        ];
        let terms = expansion_terms(SigmaOrder::One, &Integer::from(n), 4).map_err(|e| e.to_string())?;
        for (i, ((index, term), bracket)) in terms.iter().zip(&brackets).enumerate() {
            ensure(*index == i as u64 + 1 && term == bracket, || {
                format!("N = {n}, term {}: {term} vs {bracket}", i + 1)
            })?;
        }
        let sum: Rational = brackets.iter().sum();
        let partial = eval_central_binomial(SigmaOrder::One, &Integer::from(n), 4).map_err(|e| e.to_string())?;
        ensure(partial == sum * 3u32, || format!("N = {n}: partial sum {partial}"))?;
    }
    Ok("N = 1..60, four terms each, including 1/2 and 1/C(8,4) = 1/70".into())
}

/// 4. `a_n` equals its φ-form when `n | N` and its μ-form when `gcd(n, N) = 1`.
fn coefficient_extremes_hold() -> Outcome {
    let mut checked = 0;
    for n in 1..=100u64 {
        let divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
        let phi_form: Rational = divisors
            .iter()
            .map(|&d| inverse_central_binomial(d) * Integer::from(mu_phi(n / d).1))
            .sum();
        let mu_form: Rational = divisors
            .iter()
            .map(|&d| inverse_central_binomial(d) * Integer::from(mu_phi(n / d).0))
            .sum();
        let (max, min) = coefficient_extremes(&Integer::from(n)).map_err(|e| e.to_string())?;
        ensure(max == phi_form && min == mu_form, || {
            format!("n = {n}: extremes {max}, {min}")
        })?;
        for big_n in 1..=300u64 {
            let a = convolved_coefficient(&Integer::from(n), &Integer::from(big_n), WeightKind::CentralBinomial)
                .map_err(|e| e.to_string())?;
            if big_n % n == 0 {
                ensure(a == phi_form, || format!("n = {n}, N = {big_n}: {a} != {phi_form}"))?;
                checked += 1;
            }
            if gcd(n, big_n) == 1 {
                ensure(a == mu_form, || format!("n = {n}, N = {big_n}: {a} != {mu_form}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} equality cases for n <= 100, N <= 300"))
}

/// 5. All three central-binomial series at `T = 10^5` for `N ≤ 20`.
fn central_binomial_limits() -> Outcome {
    let start = Instant::now();
    let ns: Vec<Integer> = (1..=20u64).map(Integer::from).collect();
    let grid = [100, 1_000, 10_000, 100_000];
    let tolerance = Rational::from((1, 1000));
    let mut summary = Vec::new();
    for order in SigmaOrder::ALL {
        let profiles = convergence_profiles(SeriesId::CentralBinomial(order), &ns, &grid, precision())
            .map_err(|e| e.to_string())?;
        let mut worst_digits = i64::MAX;
        for (n, profile) in (1..=20u64).zip(&profiles) {
            let target = sigma_ratio_oracle(order.sigma_exponent(), n);
            let last = profile.samples.last().unwrap();
            let SeriesValue::Exact(value) = &last.value else {
                return Err(format!("{order:?} N = {n}: value is not exact"));
            };
            let error = Rational::from(value - &target).abs();
            ensure(error <= tolerance, || {
                format!("{order:?} N = {n}: error {:e}", error.to_f64())
            })?;
            let digits: Vec<i64> = profile.samples.iter().map(|s| s.digits_correct).collect();
            ensure(digits.windows(2).all(|w| w[0] <= w[1]), || {
                format!("{order:?} N = {n}: digits {digits:?}")
            })?;
            worst_digits = worst_digits.min(last.digits_correct);
        }
        summary.push(format!("s = {} >= {worst_digits} digits", order.sigma_exponent()));
    }
    Ok(format!(
        "{} at 10^5 terms, {:.0} s",
        summary.join(", "),
        start.elapsed().as_secs_f64()
    ))
}

/// 6. Geometric and squarefree series at `T = 10^5`, and the dilogarithm at 1/2.
fn geometric_squarefree_and_dilog() -> Outcome {
    let ns: Vec<Integer> = (1..=20u64).map(Integer::from).collect();
    let geometric = eval_geometric_half_many(&ns, 100_000).map_err(|e| e.to_string())?;
    let squarefree = eval_squarefree_many(&ns, 100_000).map_err(|e| e.to_string())?;
    let pi = pi();
    let pi2 = Float::with_val(bits(), pi.square_ref());
    let log2 = Float::with_val(bits(), Constant::Log2);
    let log2sq = Float::with_val(bits(), log2.square_ref());
    let geometric_factor = Float::with_val(bits(), 1 - Float::with_val(bits(), &log2sq * 6u32) / &pi2);
    let squarefree_factor = Float::with_val(bits(), 90u32 / Float::with_val(bits(), pi2.square_ref()));
    let mut worst: f64 = 0.0;
    for (i, n) in (1..=20u64).enumerate() {
        let abundancy = float(&sigma_ratio_oracle(1, n));
        let g = Float::with_val(bits(), &geometric_factor * &abundancy) / 2u32;
        let q = Float::with_val(bits(), &squarefree_factor * &abundancy);
        let dg = gap(&float(&geometric[i]), &g);
        let dq = gap(&float(&squarefree[i]), &q);
        worst = worst.max(dg).max(dq);
        ensure(dg <= 1e-3 && dq <= 1e-3, || format!("N = {n}: errors {dg:e}, {dq:e}"))?;
    }
    let dilog_target = Float::with_val(bits(), &pi2 / 12u32) - Float::with_val(bits(), &log2sq / 2u32);
    let dilog = gap(&float(&dilog_half(60).map_err(|e| e.to_string())?), &dilog_target);
    ensure(dilog <= 1e-17, || format!("dilog error {dilog:e}"))?;
    Ok(format!(
        "series error <= {worst:.1e} at 10^5 terms; dilog(60) error {dilog:.1e}"
    ))
}

/// 7. The prime-power product for `σ_s(N)/N^s`, exactly, `N ≤ 10^4`, `s = 2..6`.
fn sigma_power_products() -> Outcome {
    const LIMIT: usize = 10_000;
    let mut checks = 0;
    for s in 2..=6u32 {
        let mut sieve = vec![Integer::new(); LIMIT + 1];
        for d in 1..=LIMIT {
            let power = Integer::from(d).pow(s);
            for multiple in (d..=LIMIT).step_by(d) {
                sieve[multiple] += &power;
            }
        }
        for (n, total) in sieve.into_iter().enumerate().skip(1) {
            let report = verify_sigma_power_product(&Integer::from(n), s).map_err(|e| e.to_string())?;
            let expected = Rational::from((total, Integer::from(n).pow(s)));
            ensure(report.equal && report.lhs == expected, || {
                format!("N = {n}, s = {s}: {} vs {}", report.lhs, report.rhs)
            })?;
            checks += 1;
        }
    }
    Ok(format!("{checks} exact equalities"))
}

/// 8. The rising-factorial series with 50 outer terms against two other sums.
fn rising_factorial_series() -> Outcome {
    let p = precision();
    let mut worst: f64 = 0.0;
    for (s, alternating_terms) in [(2.0, 500_000), (3.0, 20_000), (4.0, 2_000)] {
        let value = zeta_srivastava(s, 50, p).map_err(|e| e.to_string())?.value.into_float();
        let direct = zeta_direct(s, p, 40).map_err(|e| e.to_string())?.value.into_float();
        let alternating = zeta_alternating(s, p, alternating_terms)
            .map_err(|e| e.to_string())?
            .approximation
            .value
            .into_float();
        for (name, other) in [("direct", &direct), ("alternating", &alternating)] {
            let d = gap(&value, other);
            worst = worst.max(d);
            ensure(d <= 1e-10, || format!("s = {s}: {d:e} from {name}"))?;
        }
    }
    Ok(format!(
        "s = 2, 3, 4 within {worst:.1e} of the direct and alternating sums"
    ))
}

/// 9. Both generating-function families against their middle forms.
fn leshchiner_families() -> Outcome {
    let z = Rational::from((1, 2));
    let mut lines = Vec::new();
    let mut failed = Vec::new();
    for family in [LeshchinerFamily::Odd, LeshchinerFamily::Even] {
        let report = leshchiner_check(family, &z, 40, 10_000, precision()).map_err(|e| e.to_string())?;
        let d = report.generating_vs_middle.to_f64();
        lines.push(format!(
            "{family:?}: generating vs middle {d:.2e}, middle vs binomial {:.2e} (reported)",
            report.middle_vs_binomial.to_f64()
        ));
        if d > 1e-12 {
            failed.push(format!("{family:?}"));
        }
    }
    let detail = lines.join("; ");
    if failed.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{} family exceeds 1e-12. {detail}", failed.join(", ")))
    }
}

/// Runs the `divseries` command line in-process.
fn cli(args: &[&str]) -> Result<String, String> {
    let (mut stdout, mut stderr) = (Vec::new(), Vec::new());
    let argv = std::iter::once("divseries").chain(args.iter().copied());
    let code = divseries_cli::run(argv, &mut stdout, &mut stderr);
    ensure(code == divseries_cli::EXIT_OK, || {
        String::from_utf8_lossy(&stderr).into_owned()
    })?;
    String::from_utf8(stdout).map_err(|e| e.to_string())
}

/// 10. The binomial-vs-Ramanujan convergence table on the default grid.
fn benchmark_table() -> Outcome {
    let args = [
        "bench",
        "--series",
        "thm1-i,ramanujan-baseline-2",
        "--N",
        "1,6,12",
        "--format",
        "csv",
    ];
    let first = cli(&args)?;
    let second = cli(&args)?;
    ensure(first == second, || "two runs differ".into())?;
    let mut reader = csv::Reader::from_reader(first.as_bytes());
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| e.to_string())?
        .iter()
        .map(String::from)
        .collect();
    ensure(
        header == ["series", "N", "terms", "value", "target", "abs_error", "digits_correct"],
        || format!("header {header:?}"),
    )?;
    let rows: Vec<Vec<String>> = reader
        .records()
        .map(|r| r.map(|r| r.iter().map(String::from).collect()))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure(rows.len() == 24, || format!("{} rows", rows.len()))?;
    let mut digits_at_end = Vec::new();
    for series in ["ramanujan-baseline-2", "thm1-i"] {
        for n in [1u64, 6, 12] {
            let cells: Vec<&Vec<String>> = rows
                .iter()
                .filter(|r| r[0] == series && r[1] == n.to_string())
                .collect();
            let terms: Vec<&str> = cells.iter().map(|r| r[2].as_str()).collect();
            ensure(terms == ["10", "100", "1000", "10000"], || {
                format!("{series} N = {n}: terms {terms:?}")
            })?;
            let target: Rational = cells[0][4].parse().map_err(|_| format!("target {}", cells[0][4]))?;
            ensure(target == sigma_ratio_oracle(1, n), || {
                format!("{series} N = {n}: target {target}")
            })?;
            let errors: Vec<f64> = cells.iter().map(|r| r[5].parse().unwrap_or(f64::NAN)).collect();
            ensure(errors[3] <= 1e-3, || {
                format!("{series} N = {n}: final error {:e}", errors[3])
            })?;
            ensure(errors.windows(2).all(|w| w[1] <= w[0]), || {
                format!("{series} N = {n}: errors {errors:?}")
            })?;
            digits_at_end.push(format!("{series} N={n}: {}", cells[3][6]));
        }
    }
    Ok(format!(
        "24 rows, deterministic; digits at 10^4 terms: {}",
        digits_at_end.join(", ")
    ))
}

/// 11. Perfect numbers below `10^4`.
fn perfect_numbers() -> Outcome {
    let text = cli(&[
        "scan-multiperfect",
        "--limit",
        "10000",
        "--ratio",
        "2",
        "--format",
        "csv",
    ])?;
    let found: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap_or(""))
        .collect();
    ensure(found == ["6", "28", "496", "8128"], || format!("found {found:?}"))?;
    let library = multiperfect_up_to(10_000, 2).map_err(|e| e.to_string())?;
    ensure(library == [6, 28, 496, 8128], || format!("library found {library:?}"))?;
    Ok("{6, 28, 496, 8128}".into())
}

fn main() {
    let criteria: [Criterion; 11] = [
        (
            1,
            "closed-form Ramanujan sums equal the exponential sums",
            hoelder_matches_direct,
        ),
        (
            2,
            "binomial prefactors and central-binomial zeta values",
            prefactors_and_binomial_zeta,
        ),
        (3, "first four terms of the sigma(N)/N expansion", first_four_brackets),
        (4, "coefficient extremes", coefficient_extremes_hold),
        (
            5,
            "central-binomial series limits at 10^5 terms",
            central_binomial_limits,
        ),
        (
            6,
            "geometric and squarefree series limits, dilogarithm at 1/2",
            geometric_squarefree_and_dilog,
        ),
        (7, "prime-power product for sigma_s(N)/N^s", sigma_power_products),
        (8, "rising-factorial zeta series", rising_factorial_series),
        (
            9,
            "generating functions against their middle forms",
            leshchiner_families,
        ),
        (10, "benchmark table against the Ramanujan series", benchmark_table),
        (11, "perfect numbers below 10^4", perfect_numbers),
    ];
    let mut failures = 0;
    for (id, title, check) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|panic| {
            let message = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {message}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {id:>2} PASS  {title}: {detail}"),
            Err(detail) => {
                failures += 1;
                println!("criterion {id:>2} FAIL  {title}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", 11 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
