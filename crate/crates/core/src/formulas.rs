//! Exact values of λ(n, k), the number of n×n binary matrices with exactly
//! k ones in every row and column, for k = 1, 2, 3.
//!
//! λ(n, 2) has four independent routes (a partition sum and three
//! recurrences). None of them calls another, so agreement between them is a
//! real cross-check. All arithmetic is on unbounded integers.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};

/// Unbounded nonnegative count.
pub type BigCount = BigUint;

pub fn factorial(n: u64) -> BigCount {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn binomial(n: u64, k: u64) -> Result<BigCount> {
    if k > n {
        return Err(invalid!("binomial({n}, {k}) with k > n"));
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    Ok(acc)
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 {
        return Err(invalid!("n must be at least 1"));
    }
    Ok(())
}

fn to_count(value: BigInt, what: &str) -> Result<BigCount> {
    value
        .to_biguint()
        .ok_or_else(|| Error::Internal(format!("{what} came out negative")))
}

fn exact_div(num: &BigInt, den: &BigInt, what: &str) -> Result<BigInt> {
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(Error::Internal(format!("{what}: {num} is not divisible by {den}")));
    }
    Ok(q)
}

/// λ(n, 1) = n!.
pub fn lambda_n_1(n: u32) -> Result<BigCount> {
    check_n(n)?;
    Ok(factorial(n as u64))
}

/// Multiplicities `x[r]` for r = 2..=n with Σ r·x[r] = n, i.e. the
/// partitions of n into parts of size at least 2.
///
/// Descends from the largest part size to the smallest, bounding each
/// multiplicity by the weight still to be placed.
fn for_each_partition(n: u32, mut visit: impl FnMut(&[u32])) {
    fn go(r: u32, remaining: u32, x: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
        if r < 2 {
            if remaining == 0 {
                visit(x);
            }
            return;
        }
        for mult in (0..=remaining / r).rev() {
            x[r as usize] = mult;
            go(r - 1, remaining - mult * r, x, visit);
        }
        x[r as usize] = 0;
    }
    let mut x = vec![0; n as usize + 1];
    go(n, n, &mut x, &mut visit);
}

/// λ(n, 2) as Σ (n!)² / Π_{r=2..n} x_r! (2r)^{x_r} over the solutions of
/// 2x₂ + 3x₃ + ⋯ + n·xₙ = n.
pub fn lambda_n_2_partition_sum(n: u32) -> Result<BigCount> {
    check_n(n)?;
    let top = {
        let f = factorial(n as u64);
        &f * &f
    };
    let mut total = BigUint::zero();
    let mut failure = None;
    for_each_partition(n, |x| {
        let mut den = BigUint::one();
        for (r, &mult) in x.iter().enumerate().skip(2) {
            if mult > 0 {
                den *= factorial(mult as u64) * BigUint::from(2 * r as u64).pow(mult);
            }
        }
        let (q, rem) = top.div_rem(&den);
        if !rem.is_zero() && failure.is_none() {
            failure = Some(format!("partition term {x:?} is not an integer"));
        }
        total += q;
    });
    match failure {
        Some(msg) => Err(Error::Internal(msg)),
        None => Ok(total),
    }
}

/// λ(n, 2) by
/// λ(n) = ½ n (n−1)² [(2n−3) λ(n−2) + (n−2)² λ(n−3)], n ≥ 4,
/// from λ(1) = 0, λ(2) = 1, λ(3) = 6.
pub fn lambda_n_2_anand(n: u32) -> Result<BigCount> {
    check_n(n)?;
    let mut memo: Vec<BigUint> = vec![BigUint::zero(), BigUint::zero(), BigUint::one(), BigUint::from(6u32)];
    for m in 4..=n as u64 {
        let i = m as usize;
        let inner = (2 * m - 3) * &memo[i - 2] + (m - 2) * (m - 2) * &memo[i - 3];
        let doubled = m * (m - 1) * (m - 1) * inner;
        if doubled.is_odd() {
            return Err(Error::Internal(format!("odd numerator at n = {m}")));
        }
        memo.push(doubled >> 1);
    }
    Ok(memo[n as usize].clone())
}

/// λ(n, 2) by
/// λ(n) = (n−1) n λ(n−1) + (n−1)² n / 2 · λ(n−2), n ≥ 3,
/// from λ(1) = 0, λ(2) = 1.
pub fn lambda_n_2_good_crook(n: u32) -> Result<BigCount> {
    check_n(n)?;
    let mut memo: Vec<BigUint> = vec![BigUint::zero(), BigUint::zero(), BigUint::one()];
    for m in 3..=n as u64 {
        let i = m as usize;
        let half = (m - 1) * (m - 1) * m * &memo[i - 2];
        if half.is_odd() {
            return Err(Error::Internal(format!("odd numerator at n = {m}")));
        }
        let next = (m - 1) * m * &memo[i - 1] + (half >> 1);
        memo.push(next);
    }
    Ok(memo[n as usize].clone())
}

/// Memoized mutual recurrence of λ(n, 2) with the auxiliary sequence π:
///
/// λ(m+1) = m(2m−1) λ(m) + m² λ(m−1) − π(m+1),  m ≥ 2
/// π(m+1) = m²(m−1)²/4 · [8(m−2)(m−3) λ(m−2) + (m−2)² λ(m−3) − 4π(m−1)],  m ≥ 4
///
/// seeded with λ(1) = 0, λ(2) = 1, π(1) = π(2) = π(3) = 0, π(4) = 9.
#[derive(Debug, Clone)]
pub struct PiTable {
    // index 0 unused
    lambda: Vec<BigInt>,
    pi: Vec<BigInt>,
}

impl Default for PiTable {
    fn default() -> Self {
        Self::new()
    }
}

impl PiTable {
    pub fn new() -> Self {
        PiTable {
            lambda: vec![BigInt::zero(), BigInt::zero(), BigInt::one()],
            pi: vec![
                BigInt::zero(),
                BigInt::zero(),
                BigInt::zero(),
                BigInt::zero(),
                BigInt::from(9),
            ],
        }
    }

    fn extend_to(&mut self, n: usize) -> Result<()> {
        while self.lambda.len() <= n {
            let next = self.lambda.len(); // = m + 1
            let m = (next - 1) as i64;
            if next >= self.pi.len() {
                // here next ≥ 5, so m ≥ 4
                let coef = BigInt::from(m * m * (m - 1) * (m - 1));
                let bracket = BigInt::from(8 * (m - 2) * (m - 3)) * &self.lambda[next - 3]
                    + BigInt::from((m - 2) * (m - 2)) * &self.lambda[next - 4]
                    - BigInt::from(4) * &self.pi[next - 2];
                let pi = exact_div(&(coef * bracket), &BigInt::from(4), "pi recurrence")?;
                self.pi.push(pi);
            }
            let lam = BigInt::from(m * (2 * m - 1)) * &self.lambda[next - 1]
                + BigInt::from(m * m) * &self.lambda[next - 2]
                - &self.pi[next];
            if lam.sign() == Sign::Minus {
                return Err(Error::Internal(format!("negative lambda at n = {next}")));
            }
            self.lambda.push(lam);
        }
        Ok(())
    }

    pub fn lambda(&mut self, n: u32) -> Result<BigCount> {
        check_n(n)?;
        self.extend_to(n as usize)?;
        to_count(self.lambda[n as usize].clone(), "lambda")
    }

    /// π(n); negative values would be reported as an internal error.
    pub fn pi(&mut self, n: u32) -> Result<BigCount> {
        check_n(n)?;
        while self.pi.len() <= n as usize {
            let len = self.lambda.len();
            self.extend_to(len)?;
        }
        to_count(self.pi[n as usize].clone(), "pi")
    }
}

pub fn lambda_n_2_pi(n: u32) -> Result<BigCount> {
    PiTable::new().lambda(n)
}

/// Value of the explicit λ(n, 3) sum together with the number of
/// (α, β, γ) terms it ran over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitSum {
    pub value: BigCount,
    pub terms: usize,
}

/// λ(n, 3) = n!²/6ⁿ Σ (−1)^β (β+3γ)! 2^α 3^β / (α! β! γ!² 6^γ),
/// summed over α + β + γ = n.
///
/// Each term times n!²·6^(n−γ) is an integer, because n!²/(α!β!γ!²) is a
/// multinomial coefficient times n!/γ!. The terms are accumulated over the
/// common denominator 6^(2n) and the total is divided exactly at the end.
pub fn lambda_n_3_detailed(n: u32) -> Result<ExplicitSum> {
    check_n(n)?;
    let n64 = n as u64;
    let nf = factorial(n64);
    let mut acc = BigInt::zero();
    let mut terms = 0usize;
    for alpha in 0..=n64 {
        for beta in 0..=(n64 - alpha) {
            let gamma = n64 - alpha - beta;
            terms += 1;
            let multinomial = &nf / (factorial(alpha) * factorial(beta) * factorial(gamma));
            let falling = &nf / factorial(gamma);
            let magnitude = multinomial
                * falling
                * factorial(beta + 3 * gamma)
                * BigUint::from(2u32).pow(alpha as u32)
                * BigUint::from(3u32).pow(beta as u32)
                * BigUint::from(6u32).pow((n64 - gamma) as u32);
            let sign = if beta % 2 == 1 { Sign::Minus } else { Sign::Plus };
            acc += BigInt::from_biguint(sign, magnitude);
        }
    }
    let den = BigInt::from_biguint(Sign::Plus, BigUint::from(6u32).pow(2 * n));
    let value = exact_div(&acc, &den, "explicit sum")?;
    Ok(ExplicitSum {
        value: to_count(value, "explicit sum")?,
        terms,
    })
}

pub fn lambda_n_3(n: u32) -> Result<BigCount> {
    lambda_n_3_detailed(n).map(|s| s.value)
}

/// Named evaluation routes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    /// n! (k = 1).
    Factorial,
    Partition,
    Anand,
    GoodCrook,
    Pi,
    /// The explicit signed sum (k = 3).
    Explicit,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Factorial => "factorial",
            Route::Partition => "partition",
            Route::Anand => "anand",
            Route::GoodCrook => "good-crook",
            Route::Pi => "pi",
            Route::Explicit => "explicit",
        }
    }

    pub fn k(self) -> u32 {
        match self {
            Route::Factorial => 1,
            Route::Partition | Route::Anand | Route::GoodCrook | Route::Pi => 2,
            Route::Explicit => 3,
        }
    }

    /// Routes that apply to a given k.
    pub fn for_k(k: u32) -> &'static [Route] {
        match k {
            1 => &[Route::Factorial],
            2 => &[Route::Partition, Route::Anand, Route::GoodCrook, Route::Pi],
            3 => &[Route::Explicit],
            _ => &[],
        }
    }

    pub fn evaluate(self, n: u32) -> Result<BigCount> {
        match self {
            Route::Factorial => lambda_n_1(n),
            Route::Partition => lambda_n_2_partition_sum(n),
            Route::Anand => lambda_n_2_anand(n),
            Route::GoodCrook => lambda_n_2_good_crook(n),
            Route::Pi => lambda_n_2_pi(n),
            Route::Explicit => lambda_n_3(n),
        }
    }
}

impl std::str::FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "factorial" => Route::Factorial,
            "partition" => Route::Partition,
            "anand" => Route::Anand,
            "good-crook" => Route::GoodCrook,
            "pi" => Route::Pi,
            "explicit" => Route::Explicit,
            other => return Err(invalid!("unknown route {other:?}")),
        })
    }
}

/// Every route that evaluates λ(n, k), labelled. Routes for λ(n, n − k)
/// are included under a `complement:` label, since flipping every entry maps
/// k-regular matrices onto (n − k)-regular ones.
pub fn applicable_routes(n: u32, k: u32) -> Result<Vec<(String, Route)>> {
    check_n(n)?;
    if !(1..=3).contains(&k) {
        return Err(invalid!(
            "no known formula for lambda(n, k) with k = {k}; formulas exist for k = 1, 2, 3"
        ));
    }
    let mut routes: Vec<(String, Route)> =
        Route::for_k(k).iter().map(|&r| (r.name().to_string(), r)).collect();
    if k < n && n - k != k {
        for &r in Route::for_k(n - k) {
            routes.push((format!("complement:{}", r.name()), r));
        }
    }
    Ok(routes)
}

/// λ(n, k) for k in 1..=3, evaluated by every applicable route.
/// Disagreement is reported as [`Error::Mismatch`].
pub fn lambda(n: u32, k: u32) -> Result<BigCount> {
    let mut value: Option<BigCount> = None;
    for (label, route) in applicable_routes(n, k)? {
        let v = route.evaluate(n)?;
        match &value {
            Some(first) if *first != v => {
                return Err(Error::Mismatch(format!(
                    "lambda({n}, {k}): route {label} gives {v}, expected {first}"
                )))
            }
            Some(_) => {}
            None => value = Some(v),
        }
    }
    Ok(value.expect("at least one route per k"))
}
