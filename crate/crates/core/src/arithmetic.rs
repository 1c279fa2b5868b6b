//! Exact integer arithmetic: gcd, modular exponentiation, multiplicative
//! order, trial-division factorization and continued fractions.
//!
//! Magnitudes are bounded by `2^127 - 1`. Any operation whose true result
//! would exceed that bound fails with [`Error::Overflow`] instead of wrapping.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Exact non-negative integer no larger than `2^127 - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactInt(u128);

impl ExactInt {
    pub const MAX: ExactInt = ExactInt(i128::MAX as u128);
    pub const ZERO: ExactInt = ExactInt(0);
    pub const ONE: ExactInt = ExactInt(1);

    pub fn new(value: u128) -> Result<Self> {
        if value > Self::MAX.0 {
            return Err(Error::Overflow("value"));
        }
        Ok(ExactInt(value))
    }

    #[inline]
    pub fn get(self) -> u128 {
        self.0
    }

    pub fn checked_add(self, rhs: ExactInt) -> Result<ExactInt> {
        self.0
            .checked_add(rhs.0)
            .ok_or(Error::Overflow("sum"))
            .and_then(ExactInt::new)
    }

    pub fn checked_mul(self, rhs: ExactInt) -> Result<ExactInt> {
        self.0
            .checked_mul(rhs.0)
            .ok_or(Error::Overflow("product"))
            .and_then(ExactInt::new)
    }

    /// `self^exp`, computed exactly.
    pub fn checked_pow(self, exp: u64) -> Result<ExactInt> {
        let mut acc = ExactInt::ONE;
        let mut base = self;
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(base)?;
            }
        }
        Ok(acc)
    }

    /// Quotient and remainder: `self = q * divisor + r` with `r < divisor`.
    pub fn div_rem(self, divisor: ExactInt) -> Result<(ExactInt, ExactInt)> {
        if divisor.0 == 0 {
            return Err(Error::InvalidArgument("division by zero"));
        }
        Ok((ExactInt(self.0 / divisor.0), ExactInt(self.0 % divisor.0)))
    }
}

impl From<u64> for ExactInt {
    fn from(value: u64) -> Self {
        ExactInt(value as u128)
    }
}

impl From<u32> for ExactInt {
    fn from(value: u32) -> Self {
        ExactInt(value as u128)
    }
}

impl TryFrom<u128> for ExactInt {
    type Error = Error;
    fn try_from(value: u128) -> Result<Self> {
        ExactInt::new(value)
    }
}

impl fmt::Display for ExactInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Greatest common divisor by Euclid's algorithm; `gcd(a, 0) = a`.
pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `(a * b) mod n` for `a, b < n`, without overflowing `u128`.
pub(crate) fn mul_mod(a: u128, b: u128, n: u128) -> u128 {
    if let Some(p) = a.checked_mul(b) {
        return p % n;
    }
    // a, b < n <= 2^128 - 1; fall back to double-and-add.
    let (mut a, mut b) = (a % n, b % n);
    let mut acc = 0u128;
    while b > 0 {
        if b & 1 == 1 {
            acc = add_mod(acc, a, n);
        }
        a = add_mod(a, a, n);
        b >>= 1;
    }
    acc
}

fn add_mod(a: u128, b: u128, n: u128) -> u128 {
    let (s, carry) = a.overflowing_add(b);
    if carry || s >= n {
        s.wrapping_sub(n)
    } else {
        s
    }
}

/// `a^x mod n` by square-and-multiply. `a^x` itself is never formed.
pub fn mod_pow(a: u128, x: u64, n: u128) -> Result<u128> {
    if n < 2 {
        return Err(Error::ModulusTooSmall(n));
    }
    let mut base = a % n;
    let mut acc = 1u128;
    let mut e = x;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        e >>= 1;
    }
    Ok(acc)
}

/// Inverse of `a` modulo `n`, if it exists.
pub fn mod_inverse(a: u128, n: u128) -> Option<u128> {
    if n == 1 {
        return Some(0);
    }
    if n > i128::MAX as u128 {
        return None;
    }
    let (mut old_r, mut r) = ((a % n) as i128, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(n as i128) as u128)
}

/// Smallest `r >= 1` with `a^r = 1 (mod n)`, found by stepping through powers.
///
/// The search is bounded by `n` steps.
pub fn multiplicative_order(a: u128, n: u128) -> Result<u64> {
    if n < 2 {
        return Err(Error::ModulusTooSmall(n));
    }
    if gcd(a % n, n) != 1 {
        return Err(Error::NotCoprime { a, n });
    }
    let base = a % n;
    let mut power = base;
    let mut r: u64 = 1;
    while power != 1 {
        if r as u128 >= n {
            return Err(Error::OrderSearchExhausted { a, n });
        }
        power = mul_mod(power, base, n);
        r += 1;
    }
    Ok(r)
}

/// Prime factorization `N = prod b_i^e_i`, primes ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimeFactorization {
    n: u128,
    factors: Vec<(u128, u32)>,
}

impl PrimeFactorization {
    /// The factored number.
    pub fn n(&self) -> u128 {
        self.n
    }

    /// `(b_i, e_i)` pairs with `b_i` ascending.
    pub fn factors(&self) -> &[(u128, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u128> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// The multiples `m_i = N / b_i`.
    pub fn multiples(&self) -> Vec<u128> {
        self.primes().map(|p| self.n / p).collect()
    }

    /// Prime powers `b_i^e_i`, in factor order.
    pub fn prime_powers(&self) -> Vec<u128> {
        self.factors.iter().map(|&(p, e)| p.pow(e)).collect()
    }

    pub fn is_square_free(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn is_prime(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Trial division up to `sqrt(n)`.
pub fn factorize(n: u128) -> Result<PrimeFactorization> {
    if n < 2 {
        return Err(Error::ModulusTooSmall(n));
    }
    let mut factors = Vec::new();
    let mut rest = n;
    let mut p: u128 = 2;
    while p <= rest / p {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(PrimeFactorization { n, factors })
}

/// A continued-fraction convergent `p / q` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Convergent {
    pub numerator: u128,
    pub denominator: u128,
}

/// All convergents of `v / m`, ending with `v / m` in lowest terms.
pub fn convergents(v: u128, m: u128) -> Result<Vec<Convergent>> {
    if m == 0 {
        return Err(Error::InvalidArgument("denominator must be positive"));
    }
    if v >= m {
        return Err(Error::OutOfRange { value: v, bound: m });
    }
    // p_{-1}/q_{-1} = 1/0, p_{-2}/q_{-2} = 0/1
    let (mut p_prev, mut q_prev) = (1u128, 0u128);
    let (mut p_prev2, mut q_prev2) = (0u128, 1u128);
    let (mut num, mut den) = (v, m);
    let mut out = Vec::new();
    loop {
        let coeff = num / den;
        let p = coeff
            .checked_mul(p_prev)
            .and_then(|x| x.checked_add(p_prev2))
            .ok_or(Error::Overflow("convergent numerator"))?;
        let q = coeff
            .checked_mul(q_prev)
            .and_then(|x| x.checked_add(q_prev2))
            .ok_or(Error::Overflow("convergent denominator"))?;
        out.push(Convergent {
            numerator: p,
            denominator: q,
        });
        (p_prev2, q_prev2, p_prev, q_prev) = (p_prev, q_prev, p, q);
        let rem = num % den;
        if rem == 0 {
            break;
        }
        (num, den) = (den, rem);
    }
    Ok(out)
}
