//! Exact rational arithmetic and the combinatorial tables used throughout.
//!
//! The coefficient field is `num_rational::BigRational`, which keeps every
//! value reduced with a positive denominator.

use std::str::FromStr;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::series::{Direction, GradedSeries};

/// Exact rational number.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed integer `{0}`")]
    BadInteger(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("denominator must be positive")]
    NegativeDenominator,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("double factorial undefined for {0} (need n >= -1)")]
    DoubleFactorialDomain(i64),
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders as `num/den`, or just `num` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

fn parse_int(s: &str) -> Result<BigInt, ParseRationalError> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseRationalError::BadInteger(s.to_string()));
    }
    BigInt::from_str(s).map_err(|_| ParseRationalError::BadInteger(s.to_string()))
}

/// Parses `num` or `num/den` (surrounding whitespace allowed, nothing else).
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let num = parse_int(n)?;
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(ParseRationalError::ZeroDenominator);
            }
            if den.is_negative() {
                return Err(ParseRationalError::NegativeDenominator);
            }
            Ok(Rational::new(num, den))
        }
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `n!! = n (n-2) (n-4) ...` with `(-1)!! = 0!! = 1`.
pub fn double_factorial(n: i64) -> Result<BigInt, ArithError> {
    if n < -1 {
        return Err(ArithError::DoubleFactorialDomain(n));
    }
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    Ok(acc)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| (acc * (n - i)).div_floor(&BigInt::from(i + 1)))
}

static BERNOULLI: RwLock<Vec<Rational>> = RwLock::new(Vec::new());

/// Bernoulli number `B_n` from the generating function `t/(e^t - 1)`.
///
/// This is the convention with `B_1 = -1/2`; the other common convention
/// (`t e^t/(e^t - 1)`) flips the sign of `B_1` only.
///
/// Values come from exact series division and are memoized for the process.
pub fn bernoulli(n: usize) -> Rational {
    if let Some(b) = BERNOULLI.read().expect("bernoulli cache poisoned").get(n) {
        return b.clone();
    }
    let mut cache = BERNOULLI.write().expect("bernoulli cache poisoned");
    if cache.len() <= n {
        let len = (n + 1).max(2 * cache.len()).max(32);
        *cache = bernoulli_table(len);
    }
    cache[n].clone()
}

/// `B_0 .. B_{len-1}` by inverting `(e^t - 1)/t = sum t^k/(k+1)!`.
fn bernoulli_table(len: usize) -> Vec<Rational> {
    let mut fact = BigInt::one();
    let mut quotient = Vec::with_capacity(len);
    for k in 0..len {
        fact *= k + 1;
        quotient.push(Rational::new(BigInt::one(), fact.clone()));
    }
    let egf = GradedSeries::new(Direction::Ascending, 0, quotient)
        .reciprocal()
        .expect("(e^t - 1)/t has unit constant term");
    let mut fact = BigInt::one();
    (0..len)
        .map(|m| {
            if m > 0 {
                fact *= m;
            }
            egf.coeff(m as i64).expect("within precision") * Rational::from_integer(fact.clone())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_small_values() {
        assert_eq!(bernoulli(0), int(1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(3), int(0));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(12), rat(-691, 2730));
    }

    #[test]
    fn odd_bernoulli_vanish() {
        for k in 1..40 {
            assert!(bernoulli(2 * k + 1).is_zero(), "B_{}", 2 * k + 1);
        }
    }

    // Independent of the series engine: sum_{k<=m} C(m+1,k) B_k = 0 for m >= 1.
    #[test]
    fn bernoulli_matches_classical_recurrence() {
        let mut table = vec![int(1)];
        for m in 1..=60u64 {
            let s: Rational = (0..m)
                .map(|k| Rational::from_integer(binomial(m + 1, k)) * &table[k as usize])
                .sum();
            table.push(-s / int(m as i64 + 1));
        }
        for (n, b) in table.iter().enumerate() {
            assert_eq!(&bernoulli(n), b, "B_{n}");
        }
    }

    #[test]
    fn bernoulli_egf_times_quotient_is_one() {
        let n = 60;
        let egf: Vec<Rational> = (0..n)
            .map(|m| bernoulli(m) / Rational::from_integer(factorial(m as u64)))
            .collect();
        let quotient: Vec<Rational> = (0..n)
            .map(|k| Rational::new(BigInt::one(), factorial(k as u64 + 1)))
            .collect();
        let a = GradedSeries::new(Direction::Ascending, 0, egf);
        let b = GradedSeries::new(Direction::Ascending, 0, quotient);
        let prod = &a * &b;
        for e in 0..n as i64 {
            let want = if e == 0 { int(1) } else { int(0) };
            assert_eq!(prod.coeff(e).unwrap(), want);
        }
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial(-1).unwrap(), BigInt::from(1));
        assert_eq!(double_factorial(0).unwrap(), BigInt::from(1));
        assert_eq!(double_factorial(3).unwrap(), BigInt::from(3));
        assert_eq!(double_factorial(7).unwrap(), BigInt::from(105));
        assert_eq!(double_factorial(8).unwrap(), BigInt::from(384));
        assert_eq!(double_factorial(-2), Err(ArithError::DoubleFactorialDomain(-2)));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-1/12").unwrap(), rat(-1, 12));
        assert_eq!(parse_rational(" 4/6 ").unwrap(), rat(2, 3));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("1/0"), Err(ParseRationalError::ZeroDenominator));
        assert_eq!(parse_rational("1/-2"), Err(ParseRationalError::NegativeDenominator));
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("/3").is_err());
        assert!(parse_rational("").is_err());
        assert_eq!(format_rational(&rat(-1, 12)), "-1/12");
        assert_eq!(format_rational(&int(3)), "3");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_rat() -> impl Strategy<Value = Rational> {
            (-1000i64..1000, 1i64..500).prop_map(|(n, d)| rat(n, d))
        }

        proptest! {
            #[test]
            fn distributive(a in small_rat(), b in small_rat(), c in small_rat()) {
                prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            }

            #[test]
            fn reduced_with_positive_denominator(a in small_rat(), b in small_rat()) {
                let q = &a * &b - &a / rat(7, 3);
                prop_assert!(q.denom().is_positive());
                prop_assert!(q.numer().gcd(q.denom()).is_one());
            }

            #[test]
            fn format_parse_round_trip(a in small_rat()) {
                prop_assert_eq!(parse_rational(&format_rational(&a)).unwrap(), a);
            }
        }
    }
}
