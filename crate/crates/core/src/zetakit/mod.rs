//! Arbitrary-precision `ζ(s)` evaluators and the constants the divisor series
//! are measured against.
//!
//! Every evaluator returns an [`Approximation`] whose `error_bound` covers both
//! truncation and rounding. Precision is always an explicit argument; nothing
//! here reads global state, so concurrent calls at different precisions are
//! independent.

mod real;

use std::sync::OnceLock;

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::arith::central_binomial;
use crate::error::{require_positive_u64, Error, Result};

pub use real::{digits_correct, log2, pi, Approximation, BigReal, Precision};

/// Largest number of Euler–Maclaurin correction terms tried by
/// [`zeta_direct`].
const MAX_EM_TERMS: usize = 30;

/// Bernoulli numbers `B_2, B_4, …, B_{2(MAX_EM_TERMS+1)}` divided by the
/// matching factorial `(2j)!`.
fn bernoulli_over_factorial() -> &'static [Rational] {
    static TABLE: OnceLock<Vec<Rational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let top = 2 * (MAX_EM_TERMS + 1);
        // Akiyama–Tanigawa
        let mut a: Vec<Rational> = Vec::with_capacity(top + 1);
        let mut bernoulli = Vec::with_capacity(top + 1);
        for m in 0..=top {
            a.push(Rational::from((1, m as u32 + 1)));
            for j in (1..=m).rev() {
                let diff = Rational::from(&a[j - 1] - &a[j]);
                a[j - 1] = diff * j as u32;
            }
            bernoulli.push(a[0].clone());
        }
        let mut factorial = Integer::from(1);
        let mut out = Vec::with_capacity(MAX_EM_TERMS + 1);
        for (k, b) in bernoulli.iter().enumerate().take(top + 1).skip(1) {
            factorial *= k as u32;
            if k % 2 == 0 {
                out.push(Rational::from(b / &factorial));
            }
        }
        out
    })
}

/// `n^{-s}` with a fast path for integral exponents.
struct InversePower {
    s: Float,
    integral: Option<i32>,
    bits: u32,
}

impl InversePower {
    fn new(s: f64, bits: u32) -> Self {
        let integral = (s.fract() == 0.0 && s.abs() < f64::from(i32::MAX)).then_some(s as i32);
        Self {
            s: Float::with_val(bits, s),
            integral,
            bits,
        }
    }

    fn at(&self, n: u64) -> Float {
        let base = Float::with_val(self.bits, n);
        match self.integral {
            Some(k) => base.pow(-k),
            None => base.pow(Float::with_val(self.bits, -&self.s)),
        }
    }
}

fn check_s(s: f64, lower: f64, reason: &'static str) -> Result<()> {
    if !s.is_finite() || s <= lower {
        return Err(Error::Domain {
            name: "s",
            value: s.to_string(),
            reason,
        });
    }
    Ok(())
}

/// Relative rounding allowance for a sum of `terms` roundings at `bits`.
fn rounding_allowance(terms: u64, magnitude: f64, bits: u32) -> Float {
    let mut r = Float::with_val(bits, terms.saturating_add(64));
    r *= magnitude.max(1.0);
    r >> (bits - 2)
}

/// `ζ(s)` for real `s > 1` from the first `terms − 1` terms of `Σ n^{-s}` and
/// an Euler–Maclaurin tail started at `n = terms`.
///
/// The tail uses correction terms while they decrease in size; the reported
/// bound is twice the first omitted term plus a rounding allowance. For
/// `x^{-s}` every derivative has constant sign, so the remainder is bounded
/// by the first omitted term.
pub fn zeta_direct(s: f64, precision: Precision, terms: u64) -> Result<Approximation> {
    check_s(s, 1.0, "the direct series needs s > 1")?;
    require_positive_u64("terms", terms)?;
    let bits = precision.bits();
    let power = InversePower::new(s, bits);

    let mut sum = Float::new(bits);
    for n in 1..terms {
        sum += power.at(n);
    }

    let s_f = Float::with_val(bits, s);
    let m = Float::with_val(bits, terms);
    let m_sq = Float::with_val(bits, m.square_ref());
    let m_pow = power.at(terms);

    let integral = Float::with_val(bits, &m * &m_pow) / Float::with_val(bits, &s_f - 1u32);
    let mut tail = integral + Float::with_val(bits, &m_pow >> 1u32);

    // (s)_{2j-1} M^{-s-2j+1}, starting at j = 1
    let mut derivative = Float::with_val(bits, &m_pow * &s_f) / &m;
    let coefficients = bernoulli_over_factorial();
    let mut previous: Option<Float> = None;
    let mut omitted: Option<Float> = None;
    for (j, coefficient) in coefficients.iter().enumerate().take(MAX_EM_TERMS + 1) {
        let term = Float::with_val(bits, coefficient) * &derivative;
        let size = Float::with_val(bits, term.abs_ref());
        let growing = previous.as_ref().is_some_and(|p| size >= *p);
        if growing || j == MAX_EM_TERMS {
            omitted = Some(size);
            break;
        }
        tail += &term;
        previous = Some(size);
        let j = j as u32 + 1;
        derivative *= Float::with_val(bits, &s_f + (2 * j - 1)) * Float::with_val(bits, &s_f + 2 * j);
        derivative /= &m_sq;
    }

    let value = sum + tail;
    let magnitude = 1.0 + 1.0 / (s - 1.0);
    let mut bound = omitted.expect("loop always records the omitted term") * 2u32;
    bound += rounding_allowance(terms, magnitude, bits);
    Ok(Approximation {
        value: BigReal::new(value, precision),
        error_bound: BigReal::new(bound, precision),
    })
}

/// Result of [`zeta_alternating`].
#[derive(Clone, Debug)]
pub struct AlternatingZeta {
    pub approximation: Approximation,
    /// Set for `0 < s < 1`, where the series converges only conditionally.
    pub slow_convergence: bool,
}

/// `ζ(s) = (1 − 2^{1−s})^{-1} Σ (−1)^{n−1} n^{-s}` summed to `terms` terms.
///
/// The bound is the first omitted term divided by `|1 − 2^{1−s}|`.
pub fn zeta_alternating(s: f64, precision: Precision, terms: u64) -> Result<AlternatingZeta> {
    check_s(s, 0.0, "the alternating series needs s > 0")?;
    if s == 1.0 {
        return Err(Error::Domain {
            name: "s",
            value: "1".into(),
            reason: "the prefactor 1 - 2^(1-s) vanishes at s = 1",
        });
    }
    require_positive_u64("terms", terms)?;
    let bits = precision.bits();
    let power = InversePower::new(s, bits);

    let mut eta = Float::new(bits);
    for n in 1..=terms {
        if n % 2 == 1 {
            eta += power.at(n);
        } else {
            eta -= power.at(n);
        }
    }
    let two_pow = Float::with_val(bits, 2u32).pow(Float::with_val(bits, 1.0 - s));
    let factor = Float::with_val(bits, 1u32 - two_pow);
    let factor_abs = Float::with_val(bits, factor.abs_ref());

    let mut bound = power.at(terms + 1);
    bound += rounding_allowance(terms, 1.0, bits);
    bound /= &factor_abs;
    Ok(AlternatingZeta {
        approximation: Approximation {
            value: BigReal::new(eta / factor, precision),
            error_bound: BigReal::new(bound, precision),
        },
        slow_convergence: s < 1.0,
    })
}

/// Sign pattern of a central-binomial zeta series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Alternation {
    Plain,
    Alternating,
}

/// Exact `Σ_{n ≤ terms} (±1)^{n−1} / (C(2n,n) n^s)`.
pub fn binomial_zeta_sum(s: u32, alternation: Alternation, terms: u64) -> Result<Rational> {
    require_positive_u64("terms", terms)?;
    let terms = u32::try_from(terms).map_err(|_| Error::Domain {
        name: "terms",
        value: terms.to_string(),
        reason: "central binomial index must fit in 32 bits",
    })?;
    // common denominator: accumulate numerators over ∏-free lcm growth
    let mut sum = Rational::new();
    for n in 1..=terms {
        let denominator = central_binomial(n)? * Integer::from(n).pow(s);
        let term = Rational::from((Integer::from(1), denominator));
        if alternation == Alternation::Alternating && n % 2 == 0 {
            sum -= term;
        } else {
            sum += term;
        }
    }
    Ok(sum)
}

/// The three rational-prefactor series
/// `ζ(2) = 3 Σ 1/(C(2n,n)n²)`, `ζ(3) = 5/2 Σ (−1)^{n−1}/(C(2n,n)n³)`,
/// `ζ(4) = 36/17 Σ 1/(C(2n,n)n⁴)`, truncated at `terms`.
pub fn zeta_central_binomial(s: u32, terms: u64) -> Result<Rational> {
    let (prefactor, alternation) = central_binomial_prefactor(s)?;
    Ok(binomial_zeta_sum(s, alternation, terms)? * prefactor)
}

/// Prefactor and sign pattern of the rational central-binomial series for
/// `s ∈ {2, 3, 4}`.
pub fn central_binomial_prefactor(s: u32) -> Result<(Rational, Alternation)> {
    match s {
        2 => Ok((Rational::from(3), Alternation::Plain)),
        3 => Ok((Rational::from((5, 2)), Alternation::Alternating)),
        4 => Ok((Rational::from((36, 17)), Alternation::Plain)),
        _ => Err(Error::Domain {
            name: "s",
            value: s.to_string(),
            reason: "rational central-binomial series exist for s = 2, 3, 4",
        }),
    }
}

/// Numerical estimate of `c_s = ζ(s) / Σ (±1)^{n−1}/(C(2n,n) n^s)`.
#[derive(Clone, Debug)]
pub struct ConstantEstimate {
    pub value: BigReal,
    /// Continued-fraction convergents of `value` with denominators below
    /// [`MAX_CONVERGENT_DENOMINATOR`].
    pub convergents: Vec<Rational>,
}

pub const MAX_CONVERGENT_DENOMINATOR: u32 = 1_000_000;

/// `ζ(s)` with a term count that makes the Euler–Maclaurin bound negligible
/// at `precision`.
pub fn zeta_reference(s: f64, precision: Precision) -> Result<Approximation> {
    let terms = u64::from(precision.digits()) + 40 + s.max(0.0).ceil() as u64;
    zeta_direct(s, precision, terms)
}

pub fn estimate_binomial_constant(
    s: u32,
    alternation: Alternation,
    terms: u64,
    precision: Precision,
) -> Result<ConstantEstimate> {
    if s < 2 {
        return Err(Error::Domain {
            name: "s",
            value: s.to_string(),
            reason: "the constant is estimated for s >= 2",
        });
    }
    let bits = precision.bits();
    let zeta = zeta_reference(f64::from(s), precision)?;
    let sum = binomial_zeta_sum(s, alternation, terms)?;
    let ratio = Float::with_val(bits, zeta.value.value() / Float::with_val(bits, &sum));
    let convergents = continued_fraction_convergents(&ratio, MAX_CONVERGENT_DENOMINATOR);
    Ok(ConstantEstimate {
        value: BigReal::new(ratio, precision),
        convergents,
    })
}

/// Convergents `h/k` of the (exact, binary) value of `x` with `k < max_den`.
pub fn continued_fraction_convergents(x: &Float, max_den: u32) -> Vec<Rational> {
    let Some(exact) = x.to_rational() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let (mut h_prev, mut h) = (Integer::from(0), Integer::from(1));
    let (mut k_prev, mut k) = (Integer::from(1), Integer::from(0));
    let mut rest = exact;
    loop {
        let a = rest.clone().floor().into_numer_denom().0;
        let h_next = Integer::from(&a * &h) + &h_prev;
        let k_next = Integer::from(&a * &k) + &k_prev;
        if k_next >= max_den {
            break;
        }
        out.push(Rational::from((h_next.clone(), k_next.clone())));
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        let frac = rest - Rational::from(a);
        if frac == 0 {
            break;
        }
        rest = frac.recip();
    }
    out
}

/// `ζ(s) = (2^s − 2)^{-1} Σ_{n ≥ 1} (s+1)_{2n}/(2n)! · ζ(s+2n)/2^{2n}`,
/// summed to `outer_terms` terms with every inner `ζ` from [`zeta_direct`].
pub fn zeta_srivastava(s: f64, outer_terms: u64, precision: Precision) -> Result<Approximation> {
    check_s(s, 0.0, "the rising-factorial series needs s > 0")?;
    require_positive_u64("outer_terms", outer_terms)?;
    let bits = precision.bits();
    let s_f = Float::with_val(bits, s);
    let denominator = Float::with_val(bits, 2u32).pow(&s_f) - 2u32;
    if Float::with_val(bits, denominator.abs_ref()) < 1e-6 {
        return Err(Error::Domain {
            name: "s",
            value: s.to_string(),
            reason: "2^s - 2 is too close to zero",
        });
    }

    let mut sum = Float::new(bits);
    let mut inner_error = Float::new(bits);
    // (s+1)_{2n} / (2n)! / 4^n, advanced in place
    let mut weight = Float::with_val(bits, 1u32);
    for n in 1..=outer_terms {
        let two_n = 2 * n;
        weight *= Float::with_val(bits, &s_f + (two_n - 1)) * Float::with_val(bits, &s_f + two_n);
        weight /= (two_n - 1) * two_n * 4;
        let arg = s + two_n as f64;
        let inner = zeta_direct(arg, precision, 40 + arg.ceil() as u64)?;
        sum += Float::with_val(bits, &weight * inner.value.value());
        inner_error += Float::with_val(bits, &weight * inner.error_bound.value());
    }

    // tail: terms shrink at least geometrically by `ratio` beyond n = K + 1
    let k = outer_terms as f64;
    let ratio = (s + 2.0 * k + 3.0) * (s + 2.0 * k + 4.0) / ((2.0 * k + 3.0) * (2.0 * k + 4.0) * 4.0);
    let next_arg = s + 2.0 * k + 2.0;
    let two_n = 2 * (outer_terms + 1);
    let next_weight = Float::with_val(bits, &weight)
        * Float::with_val(bits, &s_f + (two_n - 1))
        * Float::with_val(bits, &s_f + two_n)
        / ((two_n - 1) * two_n * 4);
    let zeta_cap = 1.0 + 2f64.powf(-next_arg) + 2f64.powf(1.0 - next_arg) / (next_arg - 1.0);
    let tail = if ratio < 1.0 {
        next_weight * zeta_cap / (1.0 - ratio)
    } else {
        Float::with_val(bits, rug::float::Special::Infinity)
    };

    let denominator_abs = Float::with_val(bits, denominator.abs_ref());
    let mut bound = tail + inner_error + rounding_allowance(outer_terms, 4.0, bits);
    bound /= &denominator_abs;
    Ok(Approximation {
        value: BigReal::new(sum / denominator, precision),
        error_bound: BigReal::new(bound, precision),
    })
}

/// Exact `Σ_{n ≤ terms} 1/(2^n n²)`.
pub fn dilog_half(terms: u64) -> Result<Rational> {
    require_positive_u64("terms", terms)?;
    let mut sum = Rational::new();
    for n in 1..=terms {
        let denominator = (Integer::from(1) << n as u32) * Integer::from(n).pow(2u32);
        sum += Rational::from((Integer::from(1), denominator));
    }
    Ok(sum)
}

/// `ζ(2)/2 − log(2)²/2`.
pub fn dilog_half_closed_form(precision: Precision) -> BigReal {
    let bits = precision.bits();
    let pi = pi(precision).into_float();
    let ln2 = log2(precision).into_float();
    let zeta2 = Float::with_val(bits, pi.square_ref()) / 6u32;
    let value = (zeta2 - ln2.square()) / 2u32;
    BigReal::new(value, precision)
}

#[derive(Clone, Debug)]
pub struct DilogCheck {
    pub partial_sum: Rational,
    pub closed_form: BigReal,
    pub deviation: BigReal,
    /// `Σ_{n > terms} 2^{-n}/n² ≤ 2^{-terms}/(terms+1)²`.
    pub tail_bound: BigReal,
}

pub fn dilog_half_check(terms: u64, precision: Precision) -> Result<DilogCheck> {
    let partial_sum = dilog_half(terms)?;
    let closed_form = dilog_half_closed_form(precision);
    let deviation = BigReal::from_rational(&partial_sum, precision).abs_diff(&closed_form);
    let tail = Rational::from((
        Integer::from(1),
        (Integer::from(1) << terms as u32) * Integer::from(terms + 1).pow(2u32),
    ));
    Ok(DilogCheck {
        partial_sum,
        closed_form,
        deviation,
        tail_bound: BigReal::from_rational(&tail, precision),
    })
}

/// The two generating-function families compared by [`leshchiner_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LeshchinerFamily {
    /// `Σ_k ζ(2k+3) z^{2k}` against `Σ_n 1/(n³(1 − z²/n²))`.
    Odd,
    /// `Σ_k (1 − 2^{-k}) ζ(2k+2) z^{2k}` against `Σ_n 1/(n²(1 − z²/n²))`.
    Even,
}

impl LeshchinerFamily {
    fn middle_exponent(self) -> u32 {
        match self {
            LeshchinerFamily::Odd => 3,
            LeshchinerFamily::Even => 2,
        }
    }
}

/// Hard tolerance on |generating function − middle form|.
pub const LESHCHINER_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct LeshchinerReport {
    pub family: LeshchinerFamily,
    pub z: Rational,
    /// Generating-function side, `k_terms` terms of the `ζ` power series.
    pub generating_function: BigReal,
    /// `Σ 1/(n^m (1 − z²/n²))` with an Euler–Maclaurin tail.
    pub middle_form: BigReal,
    /// Central-binomial right-hand side, as printed.
    pub binomial_form: BigReal,
    pub generating_vs_middle: BigReal,
    pub middle_vs_binomial: BigReal,
    /// `generating_vs_middle ≤ LESHCHINER_TOLERANCE`. This is the hard check;
    /// `middle_vs_binomial` is reported only.
    pub generating_matches_middle: bool,
}

pub fn leshchiner_check(
    family: LeshchinerFamily,
    z: &Rational,
    k_terms: u64,
    n_terms: u64,
    precision: Precision,
) -> Result<LeshchinerReport> {
    if Rational::from(z.abs_ref()) >= 1 {
        return Err(Error::Domain {
            name: "z",
            value: z.to_string(),
            reason: "the generating functions need |z| < 1",
        });
    }
    require_positive_u64("k_terms", k_terms)?;
    require_positive_u64("n_terms", n_terms)?;
    let bits = precision.bits();
    let m = family.middle_exponent();
    let z_f = Float::with_val(bits, z);
    let z_sq = Float::with_val(bits, z_f.square_ref());

    // generating-function side
    let mut generating = Float::new(bits);
    let mut z_power = Float::with_val(bits, 1u32);
    for k in 0..k_terms {
        let arg = f64::from(2 * k as u32 + m);
        let zeta = zeta_direct(arg, precision, 40 + arg as u64)?;
        let mut term = Float::with_val(bits, zeta.value.value() * &z_power);
        if family == LeshchinerFamily::Even {
            let weight = Float::with_val(bits, 1u32) - (Float::with_val(bits, 1u32) >> k as u32);
            term *= weight;
        }
        generating += term;
        z_power *= &z_sq;
    }

    let middle = middle_form(m, &z_f, n_terms, bits);
    let binomial = binomial_form(family, &z_sq, n_terms.min(2 * u64::from(precision.digits()) + 40), bits);

    let generating = BigReal::new(generating, precision);
    let middle = BigReal::new(middle, precision);
    let binomial = BigReal::new(binomial, precision);
    let generating_vs_middle = generating.abs_diff(&middle);
    let middle_vs_binomial = middle.abs_diff(&binomial);
    let generating_matches_middle = generating_vs_middle.value().clone() <= LESHCHINER_TOLERANCE;
    Ok(LeshchinerReport {
        family,
        z: z.clone(),
        generating_function: generating,
        middle_form: middle,
        binomial_form: binomial,
        generating_vs_middle,
        middle_vs_binomial,
        generating_matches_middle,
    })
}

/// `Σ_{n<M} n^{2−m}/(n² − z²)` plus `∫_M^∞ f + f(M)/2 − f'(M)/12`.
fn middle_form(m: u32, z: &Float, n_terms: u64, bits: u32) -> Float {
    let z_sq = Float::with_val(bits, z.square_ref());
    let f = |x: &Float| -> Float {
        let x_sq = Float::with_val(bits, x.square_ref());
        let denominator = Float::with_val(bits, &x_sq - &z_sq);
        match m {
            2 => denominator.recip(),
            _ => (denominator * x).recip(),
        }
    };
    let mut sum = Float::new(bits);
    for n in 1..n_terms {
        sum += f(&Float::with_val(bits, n));
    }
    let big_m = Float::with_val(bits, n_terms);
    let m_sq = Float::with_val(bits, big_m.square_ref());
    let integral = if z.is_zero() {
        Float::with_val(bits, m - 1).recip() / Float::with_val(bits, (&big_m).pow(m - 1))
    } else if m == 2 {
        let ratio = Float::with_val(bits, &big_m + z) / Float::with_val(bits, &big_m - z);
        ratio.ln() / (Float::with_val(bits, z * 2u32))
    } else {
        let inner = Float::with_val(bits, 1u32) - Float::with_val(bits, &z_sq / &m_sq);
        -inner.ln() / Float::with_val(bits, &z_sq * 2u32)
    };
    let derivative = if m == 2 {
        let d = Float::with_val(bits, &m_sq - &z_sq);
        -Float::with_val(bits, &big_m * 2u32) / d.square()
    } else {
        let numerator = Float::with_val(bits, &m_sq * 3u32) - &z_sq;
        let d = Float::with_val(bits, &m_sq - &z_sq) * &big_m;
        -numerator / d.square()
    };
    sum + integral + f(&big_m) / 2u32 - derivative / 12u32
}

fn binomial_form(family: LeshchinerFamily, z_sq: &Float, terms: u64, bits: u32) -> Float {
    let half = Float::with_val(bits, 0.5);
    let mut sum = Float::new(bits);
    let mut product = Float::with_val(bits, 1u32);
    let mut central = Integer::from(1);
    for n in 1..=terms {
        // C(2n, n) = C(2n−2, n−1) · 2(2n−1)/n
        central *= 2 * (2 * n - 1);
        central.div_exact_mut(&Integer::from(n));
        let n_sq = Float::with_val(bits, n * n);
        let shrink = Float::with_val(bits, 1u32) - Float::with_val(bits, z_sq / &n_sq);
        let inner = Float::with_val(bits, 2u32) / &shrink;
        let bracket = match family {
            LeshchinerFamily::Odd => Float::with_val(bits, &half - &inner),
            LeshchinerFamily::Even => Float::with_val(bits, &inner - &half),
        };
        let denominator = Float::with_val(bits, &central) * Float::with_val(bits, n).pow(3u32);
        let mut term = bracket * &product / denominator;
        if n % 2 == 0 {
            term = -term;
        }
        sum += term;
        product *= shrink;
    }
    sum
}
