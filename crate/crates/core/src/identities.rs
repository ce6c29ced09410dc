//! Exact identities linking `σ_s(N)/N^s` to `σ(N)/N` through a product over
//! the prime powers exactly dividing `N`, and the corrected series built on
//! them.

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::arith::{factorize, Factorization};
use crate::error::{require_positive, Error, Result};
use crate::series::{eval_central_binomial_many, sigma_ratio, SigmaOrder};

/// Largest `s` accepted by [`sigma_power_product`].
pub const MAX_PRODUCT_EXPONENT: u32 = 64;

/// The outcome of one exact identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub identity: &'static str,
    pub n: Integer,
    pub s: u32,
    pub lhs: Rational,
    pub rhs: Rational,
    pub equal: bool,
}

impl IdentityReport {
    fn new(identity: &'static str, n: &Integer, s: u32, lhs: Rational, rhs: Rational) -> Self {
        let equal = lhs == rhs;
        Self {
            identity,
            n: n.clone(),
            s,
            lhs,
            rhs,
            equal,
        }
    }
}

/// `∏_{p^α ∥ N} (Σ_{i<s} p^{i(α+1)}) / (p^{(s−1)α} Σ_{i<s} p^i)`, the factor with
/// `σ_s(N)/N^s = σ(N)/N · product`.
pub fn sigma_power_product(n: &Integer, s: u32) -> Result<Rational> {
    check_exponent(s)?;
    Ok(product_over(&factorize(n)?, s))
}

fn check_exponent(s: u32) -> Result<()> {
    if !(2..=MAX_PRODUCT_EXPONENT).contains(&s) {
        return Err(Error::Domain {
            name: "s",
            value: s.to_string(),
            reason: "the product is defined for 2 <= s <= 64",
        });
    }
    Ok(())
}

fn product_over(factorization: &Factorization, s: u32) -> Rational {
    let mut product = Rational::from(1);
    for pp in factorization.factors() {
        let p = &pp.prime;
        let alpha = pp.exponent;
        let step = Integer::from(p.pow(alpha + 1));
        let mut numerator = Integer::new();
        let mut term = Integer::from(1);
        for _ in 0..s {
            numerator += &term;
            term *= &step;
        }
        let mut denominator = Integer::new();
        let mut term = Integer::from(p.pow((s - 1) * alpha));
        for _ in 0..s {
            denominator += &term;
            term *= p;
        }
        product *= Rational::from((numerator, denominator));
    }
    product
}

/// Checks `σ_s(N)/N^s = σ(N)/N · sigma_power_product(N, s)` exactly.
pub fn verify_sigma_power_product(n: &Integer, s: u32) -> Result<IdentityReport> {
    require_positive("N", n)?;
    check_exponent(s)?;
    let factorization = factorize(n)?;
    let lhs = Rational::from((factorization.sigma(s), Integer::from(n.pow(s))));
    let abundancy = Rational::from((factorization.sigma(1), n.clone()));
    let rhs = abundancy * product_over(&factorization, s);
    Ok(IdentityReport::new("sigma-power-product", n, s, lhs, rhs))
}

/// The two orders for which the product is written out in closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CorrectedOrder {
    /// `(p^{α+1} + 1) / (p^{α+1} + p^α)`
    Two,
    /// `(p^{2(α+1)} + p^{α+1} + 1) / (p^{2α+2} + p^{2α+1} + p^{2α})`
    Three,
}

impl CorrectedOrder {
    pub const ALL: [CorrectedOrder; 2] = [CorrectedOrder::Two, CorrectedOrder::Three];

    pub fn sigma_order(self) -> SigmaOrder {
        match self {
            CorrectedOrder::Two => SigmaOrder::Two,
            CorrectedOrder::Three => SigmaOrder::Three,
        }
    }

    pub fn exponent(self) -> u32 {
        self.sigma_order().sigma_exponent()
    }
}

/// The product for `s = 2` or `3` from its written-out per-prime factor.
pub fn closed_form_product(order: CorrectedOrder, n: &Integer) -> Result<Rational> {
    let mut product = Rational::from(1);
    for pp in factorize(n)?.factors() {
        let p = &pp.prime;
        let a = pp.exponent;
        let pw = |e: u32| Integer::from(p.pow(e));
        let factor = match order {
            CorrectedOrder::Two => Rational::from((pw(a + 1) + 1u32, pw(a + 1) + pw(a))),
            CorrectedOrder::Three => Rational::from((
                pw(2 * (a + 1)) + pw(a + 1) + 1u32,
                pw(2 * a + 2) + pw(2 * a + 1) + pw(2 * a),
            )),
        };
        product *= factor;
    }
    Ok(product)
}

/// Both checks for one written-out product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormCheck {
    pub order: CorrectedOrder,
    /// Written-out product against the general product.
    pub against_general: IdentityReport,
    /// `σ_s(N)/N^s` against `σ(N)/N` times the written-out product.
    pub against_sigma: IdentityReport,
}

impl ClosedFormCheck {
    pub fn passed(&self) -> bool {
        self.against_general.equal && self.against_sigma.equal
    }
}

/// Checks the written-out products for `s = 2` and `s = 3`.
pub fn verify_closed_form_products(n: &Integer) -> Result<[ClosedFormCheck; 2]> {
    require_positive("N", n)?;
    let check = |order: CorrectedOrder| -> Result<ClosedFormCheck> {
        let s = order.exponent();
        let closed = closed_form_product(order, n)?;
        let general = sigma_power_product(n, s)?;
        let against_general = IdentityReport::new("closed-form-product", n, s, closed.clone(), general);
        let lhs = sigma_ratio(s, n)?;
        let rhs = sigma_ratio(1, n)? * closed;
        let against_sigma = IdentityReport::new("closed-form-sigma", n, s, lhs, rhs);
        Ok(ClosedFormCheck {
            order,
            against_general,
            against_sigma,
        })
    };
    Ok([check(CorrectedOrder::Two)?, check(CorrectedOrder::Three)?])
}

/// `3 · product · Σ_{n ≤ terms} n^{-2} Σ_{d|n} c_{n/d}(N)/C(2d,d)`, which
/// converges to `σ₂(N)/N²` or `σ₃(N)/N³`.
pub fn eval_corrected_series(order: CorrectedOrder, n: &Integer, terms: u64) -> Result<Rational> {
    Ok(eval_corrected_series_many(order, std::slice::from_ref(n), terms)?.remove(0))
}

pub fn eval_corrected_series_many(order: CorrectedOrder, ns: &[Integer], terms: u64) -> Result<Vec<Rational>> {
    let sums = eval_central_binomial_many(SigmaOrder::One, ns, terms)?;
    ns.iter()
        .zip(sums)
        .map(|(n, sum)| Ok(sum * closed_form_product(order, n)?))
        .collect()
}
