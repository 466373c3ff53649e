//! Exact counting primitives: binomial and trinomial coefficients, central
//! trinomials, and logarithmic evaluation for sizes where the exact integers
//! are unwieldy.
//!
//! Exact results are arbitrary-precision ([`BigCount`]); nothing here
//! overflows. Two independent routes to the trinomial numbers are provided on
//! purpose: [`trinomial`] expands the defining polynomial coefficient by
//! coefficient (slow, transparent), while [`central_trinomial`] and
//! [`next_central_trinomial`] use a two-term recurrence (fast). The test
//! suites hold the two routes against each other.

use num::bigint::BigUint;
use num::traits::{One, ToPrimitive, Zero};

/// Arbitrary-precision unsigned count.
pub type BigCount = BigUint;

/// Binomial coefficient `C(n, k)`.
///
/// Returns 0 when `k < 0` or `k > n`, so sums over a full row may be written
/// without bounds fiddling.
pub fn binomial(n: u64, k: i64) -> BigCount {
    if k < 0 {
        return BigCount::zero();
    }
    let k = k as u64;
    if k > n {
        return BigCount::zero();
    }
    // Multiply/divide one factor at a time; every intermediate value is a
    // binomial coefficient itself, so each division is exact.
    let k = k.min(n - k);
    let mut result = BigCount::one();
    for i in 0..k {
        result = result * BigCount::from(n - i) / BigCount::from(i + 1);
    }
    result
}

/// All coefficients of `(x^2 + x + 1)^n` as a dense vector of length `2n + 1`.
///
/// Index `i` holds the coefficient of `x^i`. This is the plain reference
/// route to the trinomial numbers: repeated multiplication by the defining
/// polynomial, nothing clever. Quadratic in `n` and intended for `n` up to a
/// couple of thousand; the recurrence route is the fast path.
pub fn trinomial_row(n: u64) -> Vec<BigCount> {
    let n = usize::try_from(n).expect("row length must fit in memory");
    let mut row = vec![BigCount::one()];
    for step in 0..n {
        let mut next = vec![BigCount::zero(); 2 * (step + 1) + 1];
        for (i, c) in row.iter().enumerate() {
            next[i] += c;
            next[i + 1] += c;
            next[i + 2] += c;
        }
        row = next;
    }
    row
}

/// Trinomial coefficient: the coefficient of `x^(n + k)` in `(x^2 + x + 1)^n`.
///
/// Symmetric in `k` (`trinomial(n, k) == trinomial(n, -k)`) and 0 for
/// `|k| > n`. Computed by full polynomial expansion; see [`trinomial_row`]
/// for the cost caveat and [`central_trinomial`] for the fast route to the
/// two central columns.
pub fn trinomial(n: u64, k: i64) -> BigCount {
    if k.unsigned_abs() > n {
        return BigCount::zero();
    }
    let idx = (n as i64 + k) as usize;
    trinomial_row(n).swap_remove(idx)
}

/// Central trinomial `t(n)` and its successor `t(n + 1)` from the two-term
/// recurrence `n * t(n) = (2n - 1) * t(n - 1) + 3 * (n - 1) * t(n - 2)`,
/// starting from `t(0) = t(1) = 1`.
///
/// One sweep serves both [`central_trinomial`] and
/// [`next_central_trinomial`], so callers needing both columns (the ternary
/// power computation does) pay for a single pass.
pub fn central_trinomial_pair(n: u64) -> (BigCount, BigCount) {
    let mut prev = BigCount::one(); // t(0)
    let mut curr = BigCount::one(); // t(1)
    if n == 0 {
        return (prev, curr);
    }
    for m in 2..=(n + 1) {
        let next = (BigCount::from(2 * m - 1) * &curr + BigCount::from(3 * (m - 1)) * &prev)
            / BigCount::from(m);
        prev = curr;
        curr = next;
    }
    (prev, curr)
}

/// Central trinomial coefficient: the coefficient of `x^n` in
/// `(x^2 + x + 1)^n`, via the two-term recurrence.
///
/// First values: 1, 1, 3, 7, 19, 51, 141, ...
pub fn central_trinomial(n: u64) -> BigCount {
    central_trinomial_pair(n).0
}

/// Next-to-central trinomial coefficient: the coefficient of `x^(n + 1)` in
/// `(x^2 + x + 1)^n`, computed as `(t(n + 1) - t(n)) / 2` from the central
/// values. The difference is always even, so the division is exact.
pub fn next_central_trinomial(n: u64) -> BigCount {
    let (t_n, t_next) = central_trinomial_pair(n);
    (t_next - t_n) >> 1
}

/// Natural logarithm of a positive quantity too large to hold in an `f64`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogValue {
    /// ln of the represented value.
    pub log_value: f64,
}

impl LogValue {
    /// The represented value, `exp(log_value)`; overflows to infinity when
    /// the value exceeds the `f64` range.
    pub fn exp(self) -> f64 {
        self.log_value.exp()
    }
}

/// Exact factorials 0! through 20!; 20! is the largest that fits in a `u64`.
const FACTORIALS: [u64; 21] = [
    1,
    1,
    2,
    6,
    24,
    120,
    720,
    5_040,
    40_320,
    362_880,
    3_628_800,
    39_916_800,
    479_001_600,
    6_227_020_800,
    87_178_291_200,
    1_307_674_368_000,
    20_922_789_888_000,
    355_687_428_096_000,
    6_402_373_705_728_000,
    121_645_100_408_832_000,
    2_432_902_008_176_640_000,
];

/// `ln(n!)`: table lookup for `n <= 20`, Stirling's series beyond.
///
/// The series is carried through the `1/n^7` term, which keeps the absolute
/// error of the logarithm below `2e-13` everywhere (and far below that for
/// large `n`).
pub fn ln_factorial(n: u64) -> f64 {
    if n <= 20 {
        return (FACTORIALS[n as usize] as f64).ln();
    }
    let x = n as f64;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let series = inv * (1.0 / 12.0 + inv2 * (-1.0 / 360.0 + inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
    (x + 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + series
}

/// `ln C(n, k)` as a [`LogValue`], for sizes where the exact integer route
/// would be wasteful.
///
/// The represented value `exp(log_value)` matches the exact coefficient to a
/// relative error below `1e-10` for all `n` up to at least `10^4`.
///
/// # Panics
///
/// When `k > n`; the logarithm of zero is not representable.
pub fn log_binomial(n: u64, k: u64) -> LogValue {
    assert!(k <= n, "log_binomial requires k <= n (got n = {n}, k = {k})");
    LogValue {
        log_value: ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k),
    }
}

/// The ratio `C(2m, m) / 4^m` evaluated directly in floating point.
///
/// For small `m` the ratio is accumulated as the product of `(2j - 1) / (2j)`
/// over `j = 1..=m`, which is exact up to rounding; past `m = 10^4` an
/// asymptotic series in `1/m` takes over (its truncation error is below
/// `f64` resolution there). Relative error stays within a few `1e-14`
/// across the switch. This quantity is the binary pivot probability for an
/// even number of others, and the odd case is one rational factor away, so
/// it is the workhorse for float evaluation of binary power at sizes far
/// beyond exact-arithmetic reach.
pub fn central_binomial_ratio(m: u64) -> f64 {
    if m <= 10_000 {
        let mut r = 1.0f64;
        for j in 1..=m {
            r *= (2 * j - 1) as f64 / (2 * j) as f64;
        }
        return r;
    }
    let x = m as f64;
    let inv = 1.0 / x;
    let correction = 1.0
        + inv * (-1.0 / 8.0
            + inv * (1.0 / 128.0 + inv * (5.0 / 1024.0 + inv * (-21.0 / 32768.0))));
    correction / (std::f64::consts::PI * x).sqrt()
}

/// Natural log of an exact count, accurate enough to compare float routes
/// against exact ones (absolute error a few 1e-12 even for hundred-kilobit
/// integers).
pub fn ln_big(x: &BigCount) -> f64 {
    assert!(!x.is_zero(), "ln of zero is undefined");
    let bits = x.bits();
    let shift = bits.saturating_sub(53);
    let mantissa = (x >> shift)
        .to_f64()
        .expect("53-bit mantissa always converts");
    mantissa.ln() + shift as f64 * std::f64::consts::LN_2
}
