//! Ramanujan sums `c_k(N) = Σ_{gcd(u,k)=1} e^{-2πiuN/k}`.
//!
//! The production path is the closed form `μ(k/e) φ(k)/φ(k/e)` with
//! `e = gcd(k, N)`, which is exact. [`ramanujan_direct`] evaluates the
//! exponential sum itself and exists to cross-check it.

use rayon::prelude::*;
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer};

use crate::arith::factorize;
use crate::error::{require_positive, require_positive_u64, Error, Result};
use crate::zetakit::Precision;

/// `c_k(n)` together with its arguments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamanujanValue {
    pub k: Integer,
    pub n: Integer,
    pub value: Integer,
}

impl RamanujanValue {
    pub fn compute(k: Integer, n: Integer) -> Result<Self> {
        let value = ramanujan_hoelder(&k, &n)?;
        Ok(Self { k, n, value })
    }
}

/// `c_k(n)` via `μ(k/e) φ(k)/φ(k/e)`, `e = gcd(k, n)`.
pub fn ramanujan_hoelder(k: &Integer, n: &Integer) -> Result<Integer> {
    require_positive("k", k)?;
    require_positive("n", n)?;
    let e = Integer::from(k.gcd_ref(n));
    let quotient = Integer::from(k / &e);
    let q = factorize(&quotient)?;
    let mu = q.mobius();
    if mu == 0 {
        return Ok(Integer::new());
    }
    let mut value = factorize(k)?.totient();
    value.div_exact_mut(&q.totient());
    if mu < 0 {
        value = -value;
    }
    Ok(value)
}

/// Largest `k` accepted by the direct evaluator; the sum has `φ(k)` terms.
pub const MAX_DIRECT_K: u64 = 10_000_000;

/// Evaluates `c_k(n)` for one fixed `k` from the definition, with the cosine
/// and sine of every `2πr/k` tabulated once.
pub struct DirectEvaluator {
    k: u64,
    cos: Vec<Float>,
    sin: Vec<Float>,
    units: Vec<u64>,
    precision: Precision,
}

impl DirectEvaluator {
    pub fn new(k: u64, precision: Precision) -> Result<Self> {
        require_positive_u64("k", k)?;
        if k > MAX_DIRECT_K {
            return Err(Error::Domain {
                name: "k",
                value: k.to_string(),
                reason: "the direct sum is limited to k <= 10^7",
            });
        }
        let bits = precision.bits();
        let two_pi = Float::with_val(bits, Constant::Pi) * 2u32;
        let (cos, sin) = (0..k)
            .map(|r| {
                let angle = Float::with_val(bits, &two_pi * r) / k;
                angle.sin_cos(Float::new(bits))
            })
            .map(|(s, c)| (c, s))
            .unzip();
        let units = (1..=k).filter(|&u| gcd(u, k) == 1).collect();
        Ok(Self {
            k,
            cos,
            sin,
            units,
            precision,
        })
    }

    pub fn evaluate(&self, n: &Integer) -> Result<Integer> {
        require_positive("n", n)?;
        let bits = self.precision.bits();
        let residue = Integer::from(n % self.k).to_u64().expect("residue below k");
        let mut re = Float::new(bits);
        let mut im = Float::new(bits);
        for &u in &self.units {
            let r = ((u128::from(u) * u128::from(residue)) % u128::from(self.k)) as usize;
            re += &self.cos[r];
            im -= &self.sin[r];
        }
        let guard = Float::with_val(bits, 10u32).pow(-(self.precision.digits() as i32 / 2));
        let nearest = Float::with_val(bits, re.round_ref());
        let distance = Float::with_val(bits, &re - &nearest).abs();
        let im_abs = im.abs();
        if distance >= guard || im_abs >= guard {
            return Err(Error::RoundingGuard {
                k: self.k.to_string(),
                n: n.to_string(),
                detail: format!(
                    "distance to nearest integer {}, imaginary part {}",
                    distance.to_f64(),
                    im_abs.to_f64()
                ),
            });
        }
        Ok(nearest.to_integer().expect("finite value"))
    }
}

/// `c_k(n)` from the exponential-sum definition at the given precision.
///
/// Fails with [`Error::RoundingGuard`] if the real part is not within
/// `10^{-digits/2}` of an integer or the imaginary part is not that small.
pub fn ramanujan_direct(k: &Integer, n: &Integer, precision: Precision) -> Result<Integer> {
    require_positive("k", k)?;
    let k = k.to_u64().filter(|&k| k <= MAX_DIRECT_K).ok_or_else(|| Error::Domain {
        name: "k",
        value: k.to_string(),
        reason: "the direct sum is limited to k <= 10^7",
    })?;
    DirectEvaluator::new(k, precision)?.evaluate(n)
}

/// `[c_1(n), …, c_{k_max}(n)]`, computed in parallel.
pub fn ramanujan_row(n: &Integer, k_max: u64) -> Result<Vec<Integer>> {
    require_positive("n", n)?;
    require_positive_u64("k_max", k_max)?;
    (1..=k_max)
        .into_par_iter()
        .map(|k| ramanujan_hoelder(&Integer::from(k), n))
        .collect()
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
