//! Exact integer arithmetic: factorization and the classical multiplicative
//! functions built on it.

use rug::ops::Pow;
use rug::{Complete, Integer};

use crate::error::{require_positive, require_positive_u64, Error, Result};

/// Trial division runs over all candidates below this bound before the
/// cofactor is handed to Pollard–Brent.
const TRIAL_BOUND: u32 = 1 << 12;

/// Miller–Rabin with these bases is deterministic below 3.317·10^24.
const MR_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimePower {
    pub prime: Integer,
    pub exponent: u32,
}

/// Canonical prime-power decomposition of a positive integer.
///
/// Primes are strictly increasing; `1` has no factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    n: Integer,
    factors: Vec<PrimePower>,
}

impl Factorization {
    pub fn n(&self) -> &Integer {
        &self.n
    }

    pub fn factors(&self) -> &[PrimePower] {
        &self.factors
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|f| f.exponent == 1)
    }

    /// Multiplies the prime powers back together.
    pub fn reassemble(&self) -> Integer {
        self.factors
            .iter()
            .fold(Integer::from(1), |acc, f| acc * f.prime.clone().pow(f.exponent))
    }

    /// `σ_s` from the prime powers: `∏ (p^{s(α+1)} − 1)/(p^s − 1)`, or
    /// `∏ (α+1)` when `s = 0`.
    pub fn sigma(&self, s: u32) -> Integer {
        let mut acc = Integer::from(1);
        for f in &self.factors {
            if s == 0 {
                acc *= f.exponent + 1;
            } else {
                let ps = f.prime.clone().pow(s);
                let num: Integer = ps.clone().pow(f.exponent + 1) - 1u32;
                acc *= num.div_exact(&(ps - 1u32));
            }
        }
        acc
    }

    pub fn totient(&self) -> Integer {
        let mut acc = Integer::from(1);
        for f in &self.factors {
            acc *= f.prime.clone().pow(f.exponent - 1) * (f.prime.clone() - 1u32);
        }
        acc
    }

    pub fn mobius(&self) -> i32 {
        if !self.is_squarefree() {
            0
        } else if self.factors.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All divisors in ascending order.
    pub fn divisors(&self) -> Vec<Integer> {
        let mut divs = vec![Integer::from(1)];
        for f in &self.factors {
            let len = divs.len();
            let mut power = Integer::from(1);
            for _ in 0..f.exponent {
                power *= &f.prime;
                for i in 0..len {
                    divs.push((&divs[i] * &power).complete());
                }
            }
        }
        divs.sort();
        divs
    }
}

pub fn factorize(n: &Integer) -> Result<Factorization> {
    require_positive("n", n)?;
    let mut rest = n.clone();
    let mut primes: Vec<Integer> = Vec::new();

    let push_divisions = |rest: &mut Integer, p: u32, primes: &mut Vec<Integer>| {
        while rest.is_divisible_u(p) {
            rest.div_exact_u_mut(p);
            primes.push(Integer::from(p));
        }
    };
    push_divisions(&mut rest, 2, &mut primes);
    push_divisions(&mut rest, 3, &mut primes);
    let mut p = 5u32;
    while p < TRIAL_BOUND && Integer::from(p) * p <= rest {
        push_divisions(&mut rest, p, &mut primes);
        push_divisions(&mut rest, p + 2, &mut primes);
        p += 6;
    }
    if rest > 1 {
        if rest < Integer::from(TRIAL_BOUND) * TRIAL_BOUND {
            primes.push(rest);
        } else {
            split_cofactor(rest, &mut primes);
        }
    }
    primes.sort();

    let mut factors: Vec<PrimePower> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some(last) if last.prime == p => last.exponent += 1,
            _ => factors.push(PrimePower { prime: p, exponent: 1 }),
        }
    }
    Ok(Factorization { n: n.clone(), factors })
}

fn split_cofactor(n: Integer, out: &mut Vec<Integer>) {
    if n == 1 {
        return;
    }
    if is_prime(&n) {
        out.push(n);
        return;
    }
    if let Some(root) = perfect_square_root(&n) {
        split_cofactor(root.clone(), out);
        split_cofactor(root, out);
        return;
    }
    let d = pollard_brent(&n);
    let other = n.div_exact(&d);
    split_cofactor(d, out);
    split_cofactor(other, out);
}

fn perfect_square_root(n: &Integer) -> Option<Integer> {
    n.is_perfect_square().then(|| n.clone().sqrt())
}

/// Pollard's rho with Brent's cycle detection and batched gcds. The
/// polynomial constant walks 1, 2, 3, … so the output is deterministic.
fn pollard_brent(n: &Integer) -> Integer {
    const BATCH: u32 = 64;
    for c in 1u32.. {
        let step = |x: &Integer| -> Integer { (x.clone().square() + c) % n };
        let mut y = Integer::from(2);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut g = Integer::from(1);
        let mut q = Integer::from(1);
        let mut r = 1u64;
        while g == 1 {
            x.clone_from(&y);
            for _ in 0..r {
                y = step(&y);
            }
            let mut k = 0u64;
            while k < r && g == 1 {
                ys.clone_from(&y);
                let batch = u64::from(BATCH).min(r - k);
                for _ in 0..batch {
                    y = step(&y);
                    q = (q * (x.clone() - &y).abs()) % n;
                }
                g = q.clone().gcd(n);
                k += batch;
            }
            r *= 2;
        }
        if g == *n {
            // the batch overshot; replay one step at a time
            loop {
                ys = step(&ys);
                g = (x.clone() - &ys).abs().gcd(n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != *n {
            return g;
        }
    }
    unreachable!("rho constant search is unbounded")
}

/// Primality test with a fixed witness set; exact below 3.317·10^24 and
/// backed by GMP's BPSW-based check above that.
pub fn is_prime(n: &Integer) -> bool {
    if *n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if *n == p {
            return true;
        }
        if n.is_divisible_u(p) {
            return false;
        }
    }
    let n_minus_one: Integer = (n - 1u32).complete();
    let twos = n_minus_one.find_one(0).unwrap_or(0);
    let d: Integer = (&n_minus_one >> twos).complete();
    let strong_witness = |a: u32| -> bool {
        let mut x = Integer::from(a).pow_mod(&d, n).expect("modulus is positive");
        if x == 1 || x == n_minus_one {
            return false;
        }
        for _ in 1..twos {
            x = x.square() % n;
            if x == n_minus_one {
                return false;
            }
        }
        true
    };
    if MR_BASES.iter().any(|&a| strong_witness(a)) {
        return false;
    }
    let deterministic_limit = Integer::from(3_317_044_064_679_887_385_961_981u128);
    *n < deterministic_limit || n.is_probably_prime(30) != rug::integer::IsPrime::No
}

pub fn sigma(s: u32, n: &Integer) -> Result<Integer> {
    Ok(factorize(n)?.sigma(s))
}

pub fn totient(n: &Integer) -> Result<Integer> {
    Ok(factorize(n)?.totient())
}

pub fn mobius(n: &Integer) -> Result<i32> {
    Ok(factorize(n)?.mobius())
}

pub fn divisors(n: &Integer) -> Result<Vec<Integer>> {
    Ok(factorize(n)?.divisors())
}

/// `C(2n, n)`.
pub fn central_binomial(n: u32) -> Result<Integer> {
    require_positive_u64("n", u64::from(n))?;
    Ok(Integer::from(2 * u64::from(n)).binomial(n))
}

/// Every `N ≤ limit` whose abundancy `σ(N)/N` equals `ratio` exactly.
///
/// Uses an additive divisor-sum sieve, so `limit` is capped at `10^9`; at that
/// size `σ(N) < 2^40` and the machine-word accumulators cannot overflow.
pub fn multiperfect_up_to(limit: u64, ratio: u64) -> Result<Vec<u64>> {
    const MAX_LIMIT: u64 = 1_000_000_000;
    if limit > MAX_LIMIT {
        return Err(Error::Domain {
            name: "limit",
            value: limit.to_string(),
            reason: "sieve limit is capped at 10^9",
        });
    }
    require_positive_u64("ratio", ratio)?;
    let len = limit as usize + 1;
    let mut sums = vec![0u64; len];
    for d in 1..len {
        for multiple in (d..len).step_by(d) {
            sums[multiple] += d as u64;
        }
    }
    Ok((1..len)
        .filter(|&n| sums[n] == ratio * n as u64)
        .map(|n| n as u64)
        .collect())
}

/// Möbius values `μ(0..=limit)` by a linear sieve; index 0 is unused.
pub(crate) fn mobius_table(limit: usize) -> Vec<i8> {
    let mut mu = vec![1i8; limit + 1];
    let mut composite = vec![false; limit + 1];
    let mut primes: Vec<usize> = Vec::new();
    if limit >= 1 {
        mu[0] = 0;
    }
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let ip = i * p;
            if ip > limit {
                break;
            }
            composite[ip] = true;
            if i % p == 0 {
                mu[ip] = 0;
                break;
            }
            mu[ip] = -mu[i];
        }
    }
    mu
}

/// Primes up to and including `limit`.
pub(crate) fn primes_up_to(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    if limit < 2 {
        return Vec::new();
    }
    let mut sieve = vec![true; limit + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= limit {
        if sieve[i] {
            for j in (i * i..=limit).step_by(i) {
                sieve[j] = false;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter(|(_, &p)| p)
        .map(|(i, _)| i as u64)
        .collect()
}

/// `lcm(1, 2, …, n)`; `1` for `n = 0`.
pub(crate) fn lcm_up_to(n: u64) -> Integer {
    let mut acc = Integer::from(1);
    for p in primes_up_to(n) {
        let mut power = p;
        while power <= n / p {
            power *= p;
        }
        acc *= power;
    }
    acc
}
