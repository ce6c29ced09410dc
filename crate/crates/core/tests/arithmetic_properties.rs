use divseries::arith::{divisors, factorize, mobius, sigma, totient};
use divseries::ramanujan::{ramanujan_direct, ramanujan_hoelder};
use divseries::zetakit::Precision;
use proptest::prelude::*;
use rug::Integer;

const LIMIT: usize = 10_000;

/// `σ_s(n)` for every `n ≤ limit` by adding each `d^s` to its multiples.
fn sigma_sieve(s: u32, limit: usize) -> Vec<u128> {
    let mut out = vec![0u128; limit + 1];
    for d in 1..=limit {
        let power = (d as u128).pow(s);
        for multiple in (d..=limit).step_by(d) {
            out[multiple] += power;
        }
    }
    out
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

struct Table {
    sigma: Vec<[Integer; 4]>,
    totient: Vec<Integer>,
    mobius: Vec<i32>,
}

fn table() -> Table {
    let mut sigma_rows = vec![std::array::from_fn(|_| Integer::new())];
    let mut totients = vec![Integer::new()];
    let mut mobius_values = vec![0];
    for n in 1..=LIMIT {
        let f = factorize(&Integer::from(n)).unwrap();
        sigma_rows.push(std::array::from_fn(|s| f.sigma(s as u32)));
        totients.push(f.totient());
        mobius_values.push(f.mobius());
    }
    Table {
        sigma: sigma_rows,
        totient: totients,
        mobius: mobius_values,
    }
}

#[test]
fn sigma_product_matches_divisor_enumeration() {
    let t = table();
    for s in 0..4u32 {
        let brute = sigma_sieve(s, LIMIT);
        for (n, (row, expected)) in t.sigma.iter().zip(&brute).enumerate().skip(1) {
            assert_eq!(row[s as usize], *expected, "sigma({s}, {n})");
        }
    }
}

#[test]
fn classical_functions_are_multiplicative() {
    let t = table();
    for m in 1..=LIMIT {
        for n in m..=LIMIT / m {
            if gcd(m as u64, n as u64) != 1 {
                continue;
            }
            let mn = m * n;
            for s in 0..4 {
                assert_eq!(t.sigma[mn][s], Integer::from(&t.sigma[m][s] * &t.sigma[n][s]));
            }
            assert_eq!(t.totient[mn], Integer::from(&t.totient[m] * &t.totient[n]));
            assert_eq!(t.mobius[mn], t.mobius[m] * t.mobius[n]);
        }
    }
}

#[test]
fn divisor_sums_of_totient_and_mobius() {
    let t = table();
    for n in 1..=LIMIT {
        let ds = divisors(&Integer::from(n)).unwrap();
        assert_eq!(Integer::from(ds.len()), t.sigma[n][0]);
        let phi_sum: Integer = ds.iter().map(|d| t.totient[d.to_usize().unwrap()].clone()).sum();
        assert_eq!(phi_sum, n);
        let mu_sum: i32 = ds.iter().map(|d| t.mobius[d.to_usize().unwrap()]).sum();
        assert_eq!(mu_sum, i32::from(n == 1));
    }
}

#[test]
fn factorization_round_trips_to_one_hundred_thousand() {
    for n in 1..=100_000u64 {
        let f = factorize(&Integer::from(n)).unwrap();
        assert_eq!(f.reassemble(), n);
        let primes: Vec<&Integer> = f.factors().iter().map(|pp| &pp.prime).collect();
        assert!(primes.windows(2).all(|w| w[0] < w[1]), "{n}");
    }
}

#[test]
fn ramanujan_special_cases_and_periodicity() {
    for k in 1..=200u64 {
        let kk = Integer::from(k);
        let phi = totient(&kk).unwrap();
        let mu = mobius(&kk).unwrap();
        for n in 1..=200u64 {
            let c = ramanujan_hoelder(&kk, &Integer::from(n)).unwrap();
            if n % k == 0 {
                assert_eq!(c, phi, "c_{k}({n})");
            }
            if gcd(k, n) == 1 {
                assert_eq!(c, mu, "c_{k}({n})");
            }
            assert_eq!(c, ramanujan_hoelder(&kk, &Integer::from(n + k)).unwrap());
            assert!(c.clone().abs() <= phi);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn factorization_round_trips_for_wide_inputs(n in 1u64..u64::MAX) {
        let f = factorize(&Integer::from(n)).unwrap();
        prop_assert_eq!(f.reassemble(), n);
    }

    #[test]
    fn sigma_is_multiplicative_beyond_the_table(a in 1u32..1_000_000, b in 1u32..1_000_000, s in 0u32..5) {
        prop_assume!(gcd(u64::from(a), u64::from(b)) == 1);
        let product = sigma(s, &Integer::from(a)).unwrap() * sigma(s, &Integer::from(b)).unwrap();
        prop_assert_eq!(sigma(s, &(Integer::from(a) * b)).unwrap(), product);
    }

    #[test]
    fn closed_form_matches_exponential_sum(k in 1u64..600, n in 1u64..100_000) {
        let p = Precision::new(30).unwrap();
        let direct = ramanujan_direct(&Integer::from(k), &Integer::from(n), p).unwrap();
        prop_assert_eq!(ramanujan_hoelder(&Integer::from(k), &Integer::from(n)).unwrap(), direct);
    }
}
