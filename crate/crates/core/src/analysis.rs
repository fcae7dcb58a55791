//! Growth-ratio and bound reports over exact game counts.
//!
//! `r_n = (1/n) * M_n^(1/n)` is computed in binary fixed point from the exact
//! integer: the logarithm comes from the bit length plus an `atanh` series
//! on the normalized mantissa, so `M_n` is never rounded to a float.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::counting::{double_factorial, Counter};
use crate::error::Result;

/// Fractional bits carried by [`Fixed`].
pub const FRAC_BITS: u64 = 192;

pub const LOWER_ENVELOPE: f64 = 2.0 / std::f64::consts::E;
pub const UPPER_ENVELOPE: f64 = 4.0 / std::f64::consts::E;
pub const CRUDE_CONSTANT: f64 = 108.0;

/// Label for the asymptotic columns, which drop the `o(n)` terms.
pub const ENVELOPE_NOTE: &str = "envelope (not a theorem at finite n)";

/// Signed binary fixed point with [`FRAC_BITS`] fractional bits.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fixed(BigInt);

impl Fixed {
    fn unit() -> BigInt {
        BigInt::one() << FRAC_BITS
    }

    pub fn from_int(value: i64) -> Fixed {
        Fixed(BigInt::from(value) << FRAC_BITS)
    }

    fn mul(&self, other: &Fixed) -> Fixed {
        Fixed((&self.0 * &other.0) >> FRAC_BITS)
    }

    fn div_int(&self, divisor: u64) -> Fixed {
        Fixed(&self.0 / BigInt::from(divisor))
    }

    fn add(&self, other: &Fixed) -> Fixed {
        Fixed(&self.0 + &other.0)
    }

    fn sub(&self, other: &Fixed) -> Fixed {
        Fixed(&self.0 - &other.0)
    }

    pub fn to_f64(&self) -> f64 {
        // keep 64 fractional bits; magnitudes here are far below 2^60
        let shifted: BigInt = &self.0 >> (FRAC_BITS - 64);
        shifted.to_f64().unwrap_or(f64::NAN) / 2f64.powi(64)
    }

    /// Decimal rendering rounded half away from zero to `digits` places.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = num_traits::pow(BigInt::from(10u32), digits);
        let magnitude = self.0.abs() * scale;
        let half = BigInt::one() << (FRAC_BITS - 1);
        let scaled: BigInt = (magnitude + half) >> FRAC_BITS;
        let text = scaled.to_string();
        let text = format!("{text:0>width$}", width = digits + 1);
        let (int_part, frac_part) = text.split_at(text.len() - digits);
        let sign = if self.0.sign() == Sign::Minus && scaled.is_positive() {
            "-"
        } else {
            ""
        };
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    }
}

impl fmt::Display for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(f.precision().unwrap_or(6)))
    }
}

/// `atanh(z)` for fixed-point `|z| < 1`.
fn atanh(z: &Fixed) -> Fixed {
    let z2 = z.mul(z);
    let mut power = z.clone();
    let mut sum = z.clone();
    let mut k = 1u64;
    loop {
        power = power.mul(&z2);
        let term = power.div_int(2 * k + 1);
        if term.0.is_zero() {
            return sum;
        }
        sum = sum.add(&term);
        k += 1;
    }
}

fn ln2() -> Fixed {
    let third = Fixed(Fixed::unit() / 3);
    let half = atanh(&third);
    half.add(&half)
}

/// Natural logarithm of a positive integer.
///
/// # Panics
///
/// If `x` is zero.
pub fn ln_integer(x: &BigUint) -> Fixed {
    assert!(!x.is_zero(), "logarithm of zero");
    let exponent = x.bits() - 1;
    // mantissa in [1, 2), scaled by 2^FRAC_BITS
    let mantissa = BigInt::from((x << FRAC_BITS) >> exponent);
    let unit = Fixed::unit();
    let z = Fixed(((&mantissa - &unit) << FRAC_BITS) / (&mantissa + &unit));
    let half = atanh(&z);
    let ln_mantissa = half.add(&half);
    Fixed(ln2().0 * BigInt::from(exponent)).add(&ln_mantissa)
}

/// `e^y`, by reducing `y` modulo `ln 2` and summing the Taylor series.
pub fn exp(y: &Fixed) -> Fixed {
    let ln2 = ln2();
    let (quotient, _) = (&y.0 + (&ln2.0 >> 1u32)).div_mod_floor(&ln2.0);
    let reduced = y.sub(&Fixed(&quotient * &ln2.0));
    let mut term = Fixed(Fixed::unit());
    let mut sum = term.clone();
    let mut k = 1u64;
    loop {
        term = term.mul(&reduced).div_int(k);
        if term.0.is_zero() {
            break;
        }
        sum = sum.add(&term);
        k += 1;
    }
    let shift = quotient.to_i64().expect("exponent within range");
    match shift.cmp(&0) {
        Ordering::Less => Fixed(sum.0 >> (-shift) as u64),
        _ => Fixed(sum.0 << shift as u64),
    }
}

/// `(1/n) * count^(1/n)`.
///
/// # Panics
///
/// If `n` or `count` is zero.
pub fn nth_root_ratio(count: &BigUint, n: u64) -> Fixed {
    assert!(n >= 1, "ratio needs n >= 1");
    let log = ln_integer(count).div_int(n).sub(&ln_integer(&BigUint::from(n)));
    exp(&log)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioReport {
    pub n: usize,
    pub count: BigUint,
    pub ratio: Fixed,
    pub lower_envelope: f64,
    pub upper_envelope: f64,
    /// Whether `r_n < r_{n-1}`; `None` for the first row.
    pub decreasing: Option<bool>,
}

/// Ratio rows for `n = 1..counts.len()-1`, where `counts[n] = M_n`.
pub fn ratio_table_from_counts(counts: &[BigUint]) -> Vec<RatioReport> {
    let mut reports: Vec<RatioReport> = Vec::new();
    for (n, count) in counts.iter().enumerate().skip(1) {
        let ratio = nth_root_ratio(count, n as u64);
        let decreasing = reports.last().map(|prev| ratio < prev.ratio);
        reports.push(RatioReport {
            n,
            count: count.clone(),
            ratio,
            lower_envelope: LOWER_ENVELOPE,
            upper_envelope: UPPER_ENVELOPE,
            decreasing,
        });
    }
    reports
}

pub fn ratio_table(counter: &mut Counter, max_n: usize) -> Result<Vec<RatioReport>> {
    let counts = (0..=max_n)
        .map(|n| counter.count_games(n))
        .collect::<Result<Vec<_>>>()?;
    Ok(ratio_table_from_counts(&counts))
}

/// First `n` whose ratio fails to drop below its predecessor.
pub fn first_increase(reports: &[RatioReport]) -> Option<usize> {
    reports
        .iter()
        .find(|r| r.decreasing == Some(false))
        .map(|r| r.n)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub n: usize,
    pub count: BigUint,
    /// `(2n-1)!!`
    pub double_factorial: BigUint,
    pub lower_bound_holds: bool,
    /// `(2/e)^n n^n`
    pub lower_envelope: f64,
    /// `(4/e)^n n^n`
    pub upper_envelope: f64,
    /// `108^n n^n`
    pub crude_bound: f64,
}

fn envelope(constant: f64, n: usize) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let n = n as f64;
    (n * (constant.ln() + n.ln())).exp()
}

pub fn bound_table_from_counts(counts: &[BigUint]) -> Vec<BoundReport> {
    counts
        .iter()
        .enumerate()
        .skip(1)
        .map(|(n, count)| {
            let lower = double_factorial(2 * n as i64 - 1);
            BoundReport {
                n,
                count: count.clone(),
                lower_bound_holds: &lower <= count,
                double_factorial: lower,
                lower_envelope: envelope(2.0 / std::f64::consts::E, n),
                upper_envelope: envelope(4.0 / std::f64::consts::E, n),
                crude_bound: envelope(CRUDE_CONSTANT, n),
            }
        })
        .collect()
}

pub fn bound_table(counter: &mut Counter, max_n: usize) -> Result<Vec<BoundReport>> {
    let counts = (0..=max_n)
        .map(|n| counter.count_games(n))
        .collect::<Result<Vec<_>>>()?;
    Ok(bound_table_from_counts(&counts))
}
