//! Divisor-function series built by convolving a weight `w` with Ramanujan
//! sums, `a_n = Σ_{d|n} w(d) c_{n/d}(N)`, and their truncated evaluation.
//!
//! Partial sums of the rational series are exact. Comparison with targets
//! that contain `π` or `log 2` happens only at the end, in [`BigReal`].

mod engine;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::arith::{central_binomial, factorize, mobius, sigma};
use crate::error::{require_positive, require_positive_u64, Error, Result};
use crate::identities::{eval_corrected_series_many, CorrectedOrder};
use crate::ramanujan::{ramanujan_hoelder, ramanujan_row};
use crate::zetakit::{digits_correct, log2, pi, zeta_reference, BigReal, Precision};

/// The weight `w(d)` convolved with the Ramanujan sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WeightKind {
    /// `1 / C(2d, d)`
    CentralBinomial,
    /// `(−1)^{d−1} / C(2d, d)`
    AlternatingCentralBinomial,
    /// `2^{-d}`
    GeometricHalf,
    /// `μ(d)²`
    Squarefree,
}

impl WeightKind {
    pub const ALL: [WeightKind; 4] = [
        WeightKind::CentralBinomial,
        WeightKind::AlternatingCentralBinomial,
        WeightKind::GeometricHalf,
        WeightKind::Squarefree,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            WeightKind::CentralBinomial => "cb",
            WeightKind::AlternatingCentralBinomial => "alt-cb",
            WeightKind::GeometricHalf => "geometric-half",
            WeightKind::Squarefree => "squarefree",
        }
    }

    pub fn weight(self, d: u64) -> Result<Rational> {
        require_positive_u64("d", d)?;
        match self {
            WeightKind::CentralBinomial | WeightKind::AlternatingCentralBinomial => {
                let d32 = index_u32("d", d)?;
                let inverse = Rational::from((Integer::from(1), central_binomial(d32)?));
                if self == WeightKind::AlternatingCentralBinomial && d % 2 == 0 {
                    Ok(-inverse)
                } else {
                    Ok(inverse)
                }
            }
            WeightKind::GeometricHalf => {
                let d32 = index_u32("d", d)?;
                Ok(Rational::from((Integer::from(1), Integer::from(1) << d32)))
            }
            WeightKind::Squarefree => {
                let mu = mobius(&Integer::from(d))?;
                Ok(Rational::from(mu * mu))
            }
        }
    }
}

impl fmt::Display for WeightKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for WeightKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cb" | "central-binomial" | "central_binomial" => Ok(WeightKind::CentralBinomial),
            "alt-cb" | "acb" | "alternating-central-binomial" | "alternating_central_binomial" => {
                Ok(WeightKind::AlternatingCentralBinomial)
            }
            "geometric-half" | "geometric_half" | "geo" => Ok(WeightKind::GeometricHalf),
            "squarefree" | "sqf" => Ok(WeightKind::Squarefree),
            _ => Err(Error::Domain {
                name: "weight",
                value: s.to_string(),
                reason: "expected cb, alt-cb, geometric-half or squarefree",
            }),
        }
    }
}

/// Which divisor sum `σ_s(N)/N^s` a central-binomial series converges to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SigmaOrder {
    /// `σ(N)/N`: weight `1/C(2d,d)`, `n^{-2}`, prefactor 3.
    One,
    /// `σ₂(N)/N²`: weight `(−1)^{d−1}/C(2d,d)`, `n^{-3}`, prefactor 5/2.
    Two,
    /// `σ₃(N)/N³`: weight `1/C(2d,d)`, `n^{-4}`, prefactor 36/17.
    Three,
}

impl SigmaOrder {
    pub const ALL: [SigmaOrder; 3] = [SigmaOrder::One, SigmaOrder::Two, SigmaOrder::Three];

    pub fn sigma_exponent(self) -> u32 {
        match self {
            SigmaOrder::One => 1,
            SigmaOrder::Two => 2,
            SigmaOrder::Three => 3,
        }
    }

    /// Power of `n` in the denominator of the series.
    pub fn series_exponent(self) -> u32 {
        self.sigma_exponent() + 1
    }

    pub fn weight(self) -> WeightKind {
        match self {
            SigmaOrder::Two => WeightKind::AlternatingCentralBinomial,
            _ => WeightKind::CentralBinomial,
        }
    }

    pub fn prefactor(self) -> Rational {
        match self {
            SigmaOrder::One => Rational::from(3),
            SigmaOrder::Two => Rational::from((5, 2)),
            SigmaOrder::Three => Rational::from((36, 17)),
        }
    }

    fn roman(self) -> &'static str {
        match self {
            SigmaOrder::One => "i",
            SigmaOrder::Two => "ii",
            SigmaOrder::Three => "iii",
        }
    }
}

/// Every series the library can evaluate and profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SeriesId {
    /// Central-binomial weight against `σ_s(N)/N^s`; tags `thm1-i`, `thm1-ii`,
    /// `thm1-iii`.
    CentralBinomial(SigmaOrder),
    /// `Σ n^{-2} Σ_{d|n} 2^{-d} c_{n/d}(N)`; tag `lemma3`.
    GeometricHalf,
    /// `Σ n^{-2} Σ_{d|n} μ(d)² c_{n/d}(N)`; tag `lemma4`.
    Squarefree,
    /// `ζ(s) Σ c_k(N)/k^s`; tag `ramanujan-baseline-<s>`.
    RamanujanBaseline(u32),
    /// The `σ(N)/N` central-binomial series times the product turning it into
    /// `σ₂(N)/N²` or `σ₃(N)/N³`; tags `lemma6-ii`, `lemma6-iii`.
    Corrected(CorrectedOrder),
}

impl fmt::Display for SeriesId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesId::CentralBinomial(order) => write!(f, "thm1-{}", order.roman()),
            SeriesId::GeometricHalf => f.write_str("lemma3"),
            SeriesId::Squarefree => f.write_str("lemma4"),
            SeriesId::RamanujanBaseline(s) => write!(f, "ramanujan-baseline-{s}"),
            SeriesId::Corrected(order) => write!(f, "lemma6-{}", order.sigma_order().roman()),
        }
    }
}

impl FromStr for SeriesId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::Domain {
            name: "series",
            value: s.to_string(),
            reason:
                "expected thm1-i, thm1-ii, thm1-iii, lemma3, lemma4, ramanujan-baseline-<s>, lemma6-ii or lemma6-iii",
        };
        let normalized = s.replace('_', "-");
        match normalized.as_str() {
            "thm1-i" => Ok(SeriesId::CentralBinomial(SigmaOrder::One)),
            "thm1-ii" => Ok(SeriesId::CentralBinomial(SigmaOrder::Two)),
            "thm1-iii" => Ok(SeriesId::CentralBinomial(SigmaOrder::Three)),
            "lemma3" => Ok(SeriesId::GeometricHalf),
            "lemma4" => Ok(SeriesId::Squarefree),
            "lemma6-ii" => Ok(SeriesId::Corrected(CorrectedOrder::Two)),
            "lemma6-iii" => Ok(SeriesId::Corrected(CorrectedOrder::Three)),
            "ramanujan-baseline" => Ok(SeriesId::RamanujanBaseline(2)),
            other => {
                let s_value = other.strip_prefix("ramanujan-baseline-").ok_or_else(unknown)?;
                let s_value: u32 = s_value.parse().map_err(|_| unknown())?;
                if s_value < 2 {
                    return Err(Error::Domain {
                        name: "s",
                        value: s_value.to_string(),
                        reason: "the Ramanujan series is evaluated for s >= 2",
                    });
                }
                Ok(SeriesId::RamanujanBaseline(s_value))
            }
        }
    }
}

/// A limit a series is measured against.
#[derive(Clone, Debug, PartialEq)]
pub enum Target {
    Exact(Rational),
    Real(BigReal),
}

/// A truncated series value.
#[derive(Clone, Debug, PartialEq)]
pub enum SeriesValue {
    Exact(Rational),
    Real(BigReal),
}

impl Target {
    pub fn to_big_real(&self, precision: Precision) -> BigReal {
        match self {
            Target::Exact(q) => BigReal::from_rational(q, precision),
            Target::Real(r) => r.clone(),
        }
    }
}

impl SeriesValue {
    pub fn to_big_real(&self, precision: Precision) -> BigReal {
        match self {
            SeriesValue::Exact(q) => BigReal::from_rational(q, precision),
            SeriesValue::Real(r) => r.clone(),
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            SeriesValue::Exact(q) => Some(q),
            SeriesValue::Real(_) => None,
        }
    }
}

/// `|value − target|`, computed exactly when both sides are rational.
pub fn abs_error(value: &SeriesValue, target: &Target, precision: Precision) -> BigReal {
    match (value, target) {
        (SeriesValue::Exact(v), Target::Exact(t)) => BigReal::from_rational(&Rational::from(v - t).abs(), precision),
        _ => value.to_big_real(precision).abs_diff(&target.to_big_real(precision)),
    }
}

impl SeriesId {
    pub fn target(&self, n: &Integer, precision: Precision) -> Result<Target> {
        require_positive("N", n)?;
        let abundancy = || -> Result<Rational> { sigma_ratio(1, n) };
        match *self {
            SeriesId::CentralBinomial(order) => Ok(Target::Exact(sigma_ratio(order.sigma_exponent(), n)?)),
            SeriesId::Corrected(order) => Ok(Target::Exact(sigma_ratio(order.sigma_order().sigma_exponent(), n)?)),
            SeriesId::RamanujanBaseline(s) => Ok(Target::Exact(sigma_ratio(s - 1, n)?)),
            SeriesId::GeometricHalf => Ok(Target::Real(geometric_half_target(&abundancy()?, precision))),
            SeriesId::Squarefree => Ok(Target::Real(squarefree_target(&abundancy()?, precision))),
        }
    }

    pub fn evaluate(&self, n: &Integer, terms: u64, precision: Precision) -> Result<SeriesValue> {
        let mut values = self.evaluate_many(std::slice::from_ref(n), terms, precision)?;
        Ok(values.pop().expect("one value per input"))
    }

    /// Evaluates the same truncation for several `N`, sharing the work that
    /// does not depend on `N`.
    pub fn evaluate_many(&self, ns: &[Integer], terms: u64, precision: Precision) -> Result<Vec<SeriesValue>> {
        let exact = |values: Vec<Rational>| values.into_iter().map(SeriesValue::Exact).collect();
        match *self {
            SeriesId::CentralBinomial(order) => Ok(exact(eval_central_binomial_many(order, ns, terms)?)),
            SeriesId::GeometricHalf => Ok(exact(eval_geometric_half_many(ns, terms)?)),
            SeriesId::Squarefree => Ok(exact(eval_squarefree_many(ns, terms)?)),
            SeriesId::Corrected(order) => Ok(exact(eval_corrected_series_many(order, ns, terms)?)),
            SeriesId::RamanujanBaseline(s) => ns
                .iter()
                .map(|n| eval_ramanujan_baseline(s, n, terms, precision).map(SeriesValue::Real))
                .collect(),
        }
    }
}

/// `σ_s(N)/N^s` as a reduced fraction.
pub fn sigma_ratio(s: u32, n: &Integer) -> Result<Rational> {
    let numerator = sigma(s, n)?;
    Ok(Rational::from((numerator, Integer::from(n.pow(s)))))
}

/// `(1 − 6 log(2)²/π²) · σ(N)/(2N)`.
pub fn geometric_half_target(abundancy: &Rational, precision: Precision) -> BigReal {
    let bits = precision.bits();
    let pi = pi(precision).into_float();
    let ln2 = log2(precision).into_float();
    let ratio = Float::with_val(bits, ln2.square_ref()) * 6u32 / pi.square();
    let factor = Float::with_val(bits, 1u32) - ratio;
    BigReal::new(factor * Float::with_val(bits, abundancy) / 2u32, precision)
}

/// `(90/π⁴) · σ(N)/N`.
pub fn squarefree_target(abundancy: &Rational, precision: Precision) -> BigReal {
    let bits = precision.bits();
    let pi4 = pi(precision).into_float().pow(4u32);
    let value = Float::with_val(bits, abundancy) * 90u32 / pi4;
    BigReal::new(value, precision)
}

/// `a_n = Σ_{d|n} w(d) c_{n/d}(N)`, term by term from the closed form of
/// `c_k(N)`.
pub fn convolved_coefficient(n: &Integer, big_n: &Integer, weight: WeightKind) -> Result<Rational> {
    require_positive("n", n)?;
    require_positive("N", big_n)?;
    let mut sum = Rational::new();
    for d in factorize(n)?.divisors() {
        let d_small = d.to_u64().ok_or_else(|| Error::Domain {
            name: "n",
            value: n.to_string(),
            reason: "divisors must fit in 64 bits",
        })?;
        let c = ramanujan_hoelder(&Integer::from(n / &d), big_n)?;
        if c != 0 {
            sum += weight.weight(d_small)? * c;
        }
    }
    Ok(sum)
}

/// Largest and smallest value of the central-binomial `a_n` over all `N`:
/// `Σ_{d|n} φ(n/d)/C(2d,d)` (when `n | N`) and `Σ_{d|n} μ(n/d)/C(2d,d)`
/// (when `gcd(n, N) = 1`).
pub fn coefficient_extremes(n: &Integer) -> Result<(Rational, Rational)> {
    require_positive("n", n)?;
    let mut max = Rational::new();
    let mut min = Rational::new();
    for d in factorize(n)?.divisors() {
        let d_small = d.to_u64().unwrap_or(u64::MAX);
        let w = WeightKind::CentralBinomial.weight(d_small)?;
        let cofactor = factorize(&Integer::from(n / &d))?;
        max += Rational::from(&w * cofactor.totient());
        min += w * cofactor.mobius();
    }
    Ok((max, min))
}

/// `(n, a_n / n^m)` for `n = 1..=terms`; the sum of the second components
/// times the prefactor is the partial sum of the central-binomial series.
pub fn expansion_terms(order: SigmaOrder, big_n: &Integer, terms: u64) -> Result<Vec<(u64, Rational)>> {
    require_positive_u64("terms", terms)?;
    let m = order.series_exponent();
    (1..=terms)
        .map(|n| {
            let a = convolved_coefficient(&Integer::from(n), big_n, order.weight())?;
            Ok((n, a / Integer::from(n).pow(m)))
        })
        .collect()
}

/// Exact partial sum of the central-binomial series for `σ_s(N)/N^s`,
/// prefactor included.
pub fn eval_central_binomial(order: SigmaOrder, n: &Integer, terms: u64) -> Result<Rational> {
    Ok(eval_central_binomial_many(order, std::slice::from_ref(n), terms)?.remove(0))
}

pub fn eval_central_binomial_many(order: SigmaOrder, ns: &[Integer], terms: u64) -> Result<Vec<Rational>> {
    let sums = exact_partial_sums(order.weight(), order.series_exponent(), ns, terms)?;
    let prefactor = order.prefactor();
    Ok(sums.into_iter().map(|s| s * &prefactor).collect())
}

/// Exact partial sum of `Σ n^{-2} Σ_{d|n} 2^{-d} c_{n/d}(N)`.
pub fn eval_geometric_half(n: &Integer, terms: u64) -> Result<Rational> {
    Ok(eval_geometric_half_many(std::slice::from_ref(n), terms)?.remove(0))
}

pub fn eval_geometric_half_many(ns: &[Integer], terms: u64) -> Result<Vec<Rational>> {
    exact_partial_sums(WeightKind::GeometricHalf, 2, ns, terms)
}

/// Exact partial sum of `Σ n^{-2} Σ_{d|n} μ(d)² c_{n/d}(N)`.
pub fn eval_squarefree(n: &Integer, terms: u64) -> Result<Rational> {
    Ok(eval_squarefree_many(std::slice::from_ref(n), terms)?.remove(0))
}

pub fn eval_squarefree_many(ns: &[Integer], terms: u64) -> Result<Vec<Rational>> {
    exact_partial_sums(WeightKind::Squarefree, 2, ns, terms)
}

/// `Σ_{n ≤ terms} a_n / n^m` for each `N` in `ns`, with
/// `a_n = Σ_{d|n} w(d) c_{n/d}(N)`.
pub fn exact_partial_sums(weight: WeightKind, m: u32, ns: &[Integer], terms: u64) -> Result<Vec<Rational>> {
    require_positive_u64("terms", terms)?;
    index_u32("terms", terms)?;
    if m < 1 {
        return Err(Error::Domain {
            name: "m",
            value: m.to_string(),
            reason: "the power of n must be at least 1",
        });
    }
    let divisor_lists: Vec<Vec<Integer>> = ns
        .iter()
        .map(|n| {
            require_positive("N", n)?;
            Ok(factorize(n)?.divisors())
        })
        .collect::<Result<_>>()?;
    let xs = engine::required_points(terms, divisor_lists.iter().flatten());
    let unit = engine::unit_partial_sums(weight, m, &xs);
    Ok(ns
        .iter()
        .zip(&divisor_lists)
        .map(|(n, divisors)| unit.combine(m, n, divisors, terms))
        .collect())
}

/// `ζ(s) Σ_{k ≤ terms} c_k(N)/k^s` at working precision.
pub fn eval_ramanujan_baseline(s: u32, n: &Integer, terms: u64, precision: Precision) -> Result<BigReal> {
    if s < 2 {
        return Err(Error::Domain {
            name: "s",
            value: s.to_string(),
            reason: "the Ramanujan series is evaluated for s >= 2",
        });
    }
    let bits = precision.bits();
    let row = ramanujan_row(n, terms)?;
    let mut sum = Float::new(bits);
    for (k, c) in (1u64..).zip(&row) {
        if *c != 0 {
            let power = Float::with_val(bits, k).pow(s);
            sum += Float::with_val(bits, c) / power;
        }
    }
    let zeta = zeta_reference(f64::from(s), precision)?;
    Ok(BigReal::new(sum * zeta.value.value(), precision))
}

/// One truncation point of a [`ConvergenceProfile`].
#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    pub terms: u64,
    pub value: SeriesValue,
    pub abs_error: BigReal,
    pub digits_correct: i64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceProfile {
    pub series: SeriesId,
    pub n_input: Integer,
    pub target: Target,
    /// Ordered by increasing `terms`.
    pub samples: Vec<Sample>,
}

/// Errors of `series` against its target at every truncation in `grid`.
pub fn convergence_profile(
    series: SeriesId,
    n: &Integer,
    grid: &[u64],
    precision: Precision,
) -> Result<ConvergenceProfile> {
    Ok(convergence_profiles(series, std::slice::from_ref(n), grid, precision)?.remove(0))
}

/// [`convergence_profile`] for several `N`, one profile per input in order.
///
/// Grid points are evaluated in parallel; the output does not depend on
/// scheduling.
pub fn convergence_profiles(
    series: SeriesId,
    ns: &[Integer],
    grid: &[u64],
    precision: Precision,
) -> Result<Vec<ConvergenceProfile>> {
    let mut grid = grid.to_vec();
    grid.sort_unstable();
    grid.dedup();
    for &t in &grid {
        require_positive_u64("terms", t)?;
    }
    let targets: Vec<Target> = ns.iter().map(|n| series.target(n, precision)).collect::<Result<_>>()?;
    let columns: Vec<Vec<SeriesValue>> = grid
        .par_iter()
        .map(|&t| series.evaluate_many(ns, t, precision))
        .collect::<Result<_>>()?;
    Ok(ns
        .iter()
        .zip(targets)
        .enumerate()
        .map(|(i, (n, target))| {
            let samples = grid
                .iter()
                .zip(&columns)
                .map(|(&terms, column)| {
                    let value = column[i].clone();
                    let abs_error = abs_error(&value, &target, precision);
                    let digits_correct = digits_correct(abs_error.value(), precision.digits());
                    Sample {
                        terms,
                        value,
                        abs_error,
                        digits_correct,
                    }
                })
                .collect();
            ConvergenceProfile {
                series,
                n_input: n.clone(),
                target,
                samples,
            }
        })
        .collect())
}

fn index_u32(name: &'static str, value: u64) -> Result<u32> {
    u32::try_from(value).map_err(|_| Error::Domain {
        name,
        value: value.to_string(),
        reason: "index must fit in 32 bits",
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: u64) -> Integer {
        Integer::from(v)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn coefficient_examples() {
        let cb = WeightKind::CentralBinomial;
        assert_eq!(convolved_coefficient(&int(1), &int(7), cb).unwrap(), q(1, 2));
        assert_eq!(convolved_coefficient(&int(2), &int(1), cb).unwrap(), q(-1, 3));
        assert_eq!(
            convolved_coefficient(&int(4), &int(4), cb).unwrap(),
            Rational::from(1) + q(1, 6) + q(1, 70)
        );
    }

    #[test]
    fn extremes_examples() {
        assert_eq!(coefficient_extremes(&int(1)).unwrap(), (q(1, 2), q(1, 2)));
        assert_eq!(coefficient_extremes(&int(2)).unwrap(), (q(2, 3), q(-1, 3)));
        assert_eq!(coefficient_extremes(&int(3)).unwrap(), (q(21, 20), q(-9, 20)));
    }

    #[test]
    fn central_binomial_examples() {
        assert_eq!(eval_central_binomial(SigmaOrder::One, &int(6), 1).unwrap(), q(3, 2));
        assert_eq!(eval_central_binomial(SigmaOrder::Two, &int(1), 1).unwrap(), q(5, 4));
    }

    #[test]
    fn small_truncations_match_term_by_term_sums() {
        for order in SigmaOrder::ALL {
            for n in [1u64, 2, 6, 12, 30] {
                let terms = expansion_terms(order, &int(n), 40).unwrap();
                let mut running = Rational::new();
                for (t, contribution) in terms {
                    running += contribution;
                    if [1, 5, 17, 40].contains(&t) {
                        let expected = Rational::from(&running * &order.prefactor());
                        assert_eq!(eval_central_binomial(order, &int(n), t).unwrap(), expected);
                    }
                }
            }
        }
    }

    #[test]
    fn expansion_terms_examples() {
        let at = |n: u64| expansion_terms(SigmaOrder::One, &int(n), 2).unwrap();
        assert_eq!(at(5)[0], (1, q(1, 2)));
        assert_eq!(at(1)[1], (2, q(-1, 12)));
        assert_eq!(at(2)[1], (2, q(1, 6)));
    }

    #[test]
    fn geometric_and_squarefree_single_terms() {
        assert_eq!(eval_geometric_half(&int(1), 1).unwrap(), q(1, 2));
        assert_eq!(eval_squarefree(&int(1), 1).unwrap(), Rational::from(1));
    }

    #[test]
    fn series_tags_round_trip() {
        let ids = [
            SeriesId::CentralBinomial(SigmaOrder::One),
            SeriesId::CentralBinomial(SigmaOrder::Two),
            SeriesId::CentralBinomial(SigmaOrder::Three),
            SeriesId::GeometricHalf,
            SeriesId::Squarefree,
            SeriesId::RamanujanBaseline(3),
            SeriesId::Corrected(CorrectedOrder::Two),
            SeriesId::Corrected(CorrectedOrder::Three),
        ];
        for id in ids {
            assert_eq!(id.to_string().parse::<SeriesId>().unwrap(), id);
        }
        assert_eq!(
            "ramanujan-baseline".parse::<SeriesId>().unwrap(),
            SeriesId::RamanujanBaseline(2)
        );
        assert!("thm1-iv".parse::<SeriesId>().is_err());
        assert!("ramanujan-baseline-1".parse::<SeriesId>().is_err());
        for w in WeightKind::ALL {
            assert_eq!(w.tag().parse::<WeightKind>().unwrap(), w);
        }
    }

    #[test]
    fn single_term_profile() {
        let p = Precision::default();
        let profile = convergence_profile(SeriesId::CentralBinomial(SigmaOrder::One), &int(1), &[1], p).unwrap();
        assert_eq!(profile.samples[0].value, SeriesValue::Exact(q(3, 2)));
        assert_eq!(profile.samples[0].abs_error, BigReal::from_rational(&q(1, 2), p));
    }

    #[test]
    fn baseline_approaches_abundancy() {
        let p = Precision::new(30).unwrap();
        let v = eval_ramanujan_baseline(2, &int(6), 2000, p).unwrap();
        assert!((v.to_f64() - 2.0).abs() < 1e-2);
        assert!(eval_ramanujan_baseline(1, &int(6), 10, p).is_err());
    }
}
