//! Exact partial sums of `Σ_{n ≤ x} (w ⋆ μ)(n) / n^m` for several `x` at once.
//!
//! Every term is scaled to a single integer denominator
//! `K = D_w · lcm(1..T)^m`, so the sweep only adds, subtracts and multiplies
//! integers and reduces the final fraction once. Grouping `d` by
//! `M = ⌊x/d⌋` keeps the number of big multiplications near `√T` per `x`.

use std::collections::BTreeMap;

use rug::ops::Pow;
use rug::{Integer, Rational};

use super::WeightKind;
use crate::arith::{lcm_up_to, mobius_table};

/// Numerators of the unit partial sums over the shared `denominator`.
pub(crate) struct UnitSums {
    pub denominator: Integer,
    pub numerators: BTreeMap<u64, Integer>,
}

impl UnitSums {
    /// `Σ_{n ≤ terms} (w ⋆ c(N))(n) / n^m`, using
    /// `c_j(N) = Σ_{e | gcd(j,N)} e μ(j/e)`, which turns the sum into
    /// `Σ_{e | N} e^{1−m} S_1(⌊terms/e⌋)`.
    ///
    /// `divisors` must list the divisors of `n` and every `⌊terms/e⌋` with
    /// `e ≤ terms` must have been requested.
    pub fn combine(&self, m: u32, n: &Integer, divisors: &[Integer], terms: u64) -> Rational {
        let mut total = Integer::new();
        for e in divisors {
            let Some(e_small) = e.to_u64().filter(|&e| e <= terms) else {
                continue;
            };
            let numerator = &self.numerators[&(terms / e_small)];
            let cofactor = Integer::from(n / e).pow(m - 1);
            total += Integer::from(numerator * &cofactor);
        }
        let denominator = Integer::from(n.pow(m - 1)) * &self.denominator;
        Rational::from((total, denominator))
    }
}

/// `x` values needed to evaluate `terms` terms for every `N` whose divisors
/// are listed.
pub(crate) fn required_points<'a>(terms: u64, divisors: impl IntoIterator<Item = &'a Integer>) -> Vec<u64> {
    let mut xs: Vec<u64> = divisors
        .into_iter()
        .filter_map(|e| e.to_u64())
        .filter(|&e| e <= terms)
        .map(|e| terms / e)
        .collect();
    xs.sort_unstable();
    xs.dedup();
    xs
}

struct Cursor {
    x: u64,
    /// `d ≤ cut` are handled one at a time against the Möbius sweep.
    cut: u64,
    last_prefix: Integer,
    grouped: Integer,
    singles: Integer,
}

/// `S_1(x) = Σ_{d j ≤ x} w(d) μ(j) / (d j)^m` for each `x` in `xs`, as
/// numerators over one common denominator.
pub(crate) fn unit_partial_sums(weight: WeightKind, m: u32, xs: &[u64]) -> UnitSums {
    let mut xs: Vec<u64> = xs.iter().copied().filter(|&x| x > 0).collect();
    xs.sort_unstable();
    xs.dedup();
    let Some(&t) = xs.last() else {
        return UnitSums {
            denominator: Integer::from(1),
            numerators: BTreeMap::new(),
        };
    };

    let lm = lcm_up_to(t).pow(m);
    let dw = match weight {
        WeightKind::CentralBinomial | WeightKind::AlternatingCentralBinomial => lcm_up_to(2 * t),
        WeightKind::GeometricHalf => Integer::from(1) << u32::try_from(t).expect("terms fit in u32"),
        WeightKind::Squarefree => Integer::from(1),
    };
    let k = Integer::from(&dw * &lm);
    let mu = mobius_table(t as usize);

    let m_cut = t.isqrt();
    let mobius_prefix = small_mobius_prefixes(&mu, m, m_cut);
    let mut cursors: Vec<Cursor> = xs
        .iter()
        .map(|&x| Cursor {
            x,
            cut: x / (m_cut + 1),
            last_prefix: Integer::new(),
            grouped: Integer::new(),
            singles: Integer::new(),
        })
        .collect();
    let stored_len = t / (m_cut + 1);
    let mut stored: Vec<Integer> = Vec::with_capacity(stored_len as usize);

    // E_d = K w(d) / d^m, always an integer
    let mut term = match weight {
        WeightKind::Squarefree => k.clone(),
        _ => Integer::from(&k >> 1u32),
    };
    let mut prefix = Integer::new();
    for d in 1..=t {
        if d > 1 {
            advance_term(&mut term, weight, m, d, &mu, &k);
        }
        prefix += &term;
        if d <= stored_len {
            stored.push(term.clone());
        }
        for c in cursors.iter_mut().filter(|c| d <= c.x) {
            if d <= c.cut {
                if d == c.cut {
                    c.last_prefix.clone_from(&prefix);
                }
                continue;
            }
            let group = c.x / d;
            if d == c.x || c.x / (d + 1) != group {
                let q = &mobius_prefix[group as usize];
                let mut diff = Integer::from(&prefix - &c.last_prefix);
                diff.div_exact_mut(q.denom());
                c.grouped += diff * q.numer();
                c.last_prefix.clone_from(&prefix);
            }
        }
    }

    // remaining small d pair with large M = ⌊x/d⌋: sweep Y(M) = Σ_{j ≤ M} μ(j) lm / j^m
    let mut events: Vec<(u64, usize, u64)> = Vec::new();
    for (i, c) in cursors.iter().enumerate() {
        for d in 1..=c.cut {
            events.push((c.x / d, i, d));
        }
    }
    events.sort_unstable();
    let mut y = Integer::new();
    let mut j = 0u64;
    for (group, i, d) in events {
        while j < group {
            j += 1;
            if mu[j as usize] != 0 {
                let mut part = lm.clone();
                divide_words(&mut part, std::iter::repeat_n(j, m as usize));
                if mu[j as usize] > 0 {
                    y += part;
                } else {
                    y -= part;
                }
            }
        }
        cursors[i].singles += Integer::from(&stored[(d - 1) as usize] * &y);
    }

    let numerators = cursors
        .into_iter()
        .map(|mut c| {
            c.singles.div_exact_mut(&lm);
            (c.x, c.grouped + c.singles)
        })
        .collect();
    UnitSums {
        denominator: k,
        numerators,
    }
}

/// `Σ_{j ≤ M} μ(j)/j^m` for `M = 0..=limit`.
fn small_mobius_prefixes(mu: &[i8], m: u32, limit: u64) -> Vec<Rational> {
    let mut out = Vec::with_capacity(limit as usize + 1);
    let mut acc = Rational::new();
    out.push(acc.clone());
    for j in 1..=limit {
        if mu[j as usize] != 0 {
            let term = Rational::from((i32::from(mu[j as usize]), Integer::from(j).pow(m)));
            acc += term;
        }
        out.push(acc.clone());
    }
    out
}

/// `E_{d−1} → E_d`.
fn advance_term(term: &mut Integer, weight: WeightKind, m: u32, d: u64, mu: &[i8], k: &Integer) {
    let p = d - 1;
    let repeat = |base: u64, times: u32| std::iter::repeat_n(base, times as usize);
    match weight {
        WeightKind::CentralBinomial | WeightKind::AlternatingCentralBinomial => {
            // w(d)/w(d−1) = d / (2(2d−1)), so E_d = E_{d−1} p^m / (2(2p+1) d^{m−1})
            multiply_words(term, repeat(p, m));
            divide_words(term, repeat(d, m - 1).chain([2 * (2 * p + 1)]));
            if weight == WeightKind::AlternatingCentralBinomial {
                *term = -std::mem::take(term);
            }
        }
        WeightKind::GeometricHalf => {
            multiply_words(term, repeat(p, m));
            divide_words(term, repeat(d, m).chain([2]));
        }
        WeightKind::Squarefree => {
            if mu[d as usize] == 0 {
                *term = Integer::new();
            } else {
                term.clone_from(k);
                divide_words(term, repeat(d, m));
            }
        }
    }
}

/// Packs `factors` greedily into products that fit in one machine word, so
/// every big-integer operation takes the single-limb path.
fn packed_words(factors: impl IntoIterator<Item = u64>) -> impl Iterator<Item = u64> {
    let mut factors = factors.into_iter().peekable();
    std::iter::from_fn(move || {
        let mut word = factors.next()?;
        while let Some(&next) = factors.peek() {
            match word.checked_mul(next) {
                Some(product) => {
                    word = product;
                    factors.next();
                }
                None => break,
            }
        }
        Some(word)
    })
}

fn multiply_words(value: &mut Integer, factors: impl IntoIterator<Item = u64>) {
    for word in packed_words(factors) {
        *value *= word;
    }
}

fn divide_words(value: &mut Integer, factors: impl IntoIterator<Item = u64>) {
    for word in packed_words(factors) {
        value.div_exact_mut(&Integer::from(word));
    }
}
