use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{GradedSeries, Result, SeriesError};
use crate::arith::Rational;

/// The first `len` coefficients as integers over one common denominator.
fn integer_form(coeffs: &[Rational], len: usize) -> (Vec<BigInt>, BigInt) {
    let head = &coeffs[..coeffs.len().min(len)];
    let den = head.iter().fold(BigInt::one(), |d, c| d.lcm(c.denom()));
    let nums = head.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    (nums, den)
}

impl GradedSeries {
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_direction(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_direction(other)?;
        Ok(self.add_unchecked(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_direction(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_same_direction(other)?;
        Ok(self.mul_unchecked(&other.reciprocal()?))
    }

    fn add_unchecked(&self, other: &Self, subtract: bool) -> Self {
        let prec = self.prec().min(other.prec());
        let start = self.start.min(other.start).min(prec);
        let mut coeffs = vec![Rational::zero(); (prec - start) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = self.start + i as i64;
            if k < prec {
                coeffs[(k - start) as usize] += c;
            }
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            let k = other.start + i as i64;
            if k < prec {
                if subtract {
                    coeffs[(k - start) as usize] -= c;
                } else {
                    coeffs[(k - start) as usize] += c;
                }
            }
        }
        Self::from_local(self.dir, start, coeffs)
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let start = self.start + other.start;
        let prec = (self.start + other.prec()).min(other.start + self.prec());
        let len = (prec - start).max(0) as usize;
        let (a, da) = integer_form(&self.coeffs, len);
        let (b, db) = integer_form(&other.coeffs, len);
        let mut acc = vec![BigInt::zero(); len];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(len - i) {
                if !y.is_zero() {
                    acc[i + j] += x * y;
                }
            }
        }
        let den = da * db;
        let coeffs = acc.into_iter().map(|n| Rational::new(n, den.clone())).collect();
        Self::from_local(self.dir, start.min(prec), coeffs)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::from_local(self.dir, self.prec(), Vec::new());
        }
        let coeffs = self.coeffs.iter().map(|x| x * c).collect();
        Self::from_local(self.dir, self.start, coeffs)
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self::from_local(self.dir, self.start + self.dir.local(k), self.coeffs.clone())
    }

    /// Adds `c z^0`; a constant beyond the horizon is absorbed.
    pub fn add_constant(&self, c: &Rational) -> Self {
        if self.prec() <= 0 || c.is_zero() {
            return self.clone();
        }
        let start = self.start.min(0);
        let mut coeffs = vec![Rational::zero(); (self.prec() - start) as usize];
        for (i, x) in self.coeffs.iter().enumerate() {
            coeffs[(self.start - start) as usize + i] = x.clone();
        }
        coeffs[(-start) as usize] += c;
        Self::from_local(self.dir, start, coeffs)
    }

    /// Multiplicative inverse; keeps the number of known terms.
    pub fn reciprocal(&self) -> Result<Self> {
        let a0 = self.coeffs.first().ok_or(SeriesError::ZeroReciprocal)?;
        let inv0 = a0.recip();
        let n = self.coeffs.len();
        let mut r: Vec<Rational> = Vec::with_capacity(n);
        r.push(inv0.clone());
        for k in 1..n {
            let mut acc = Rational::zero();
            for i in 1..=k {
                let a = &self.coeffs[i];
                if !a.is_zero() {
                    acc += a * &r[k - i];
                }
            }
            r.push(-acc * &inv0);
        }
        Ok(Self::from_local(self.dir, -self.start, r))
    }

    /// Integer power with any nonzero leading coefficient.
    pub fn powi(&self, n: i64) -> Result<Self> {
        if n == 0 {
            let mut coeffs = vec![Rational::zero(); self.coeffs.len().max(1)];
            coeffs[0] = Rational::one();
            return Ok(Self::from_local(self.dir, 0, coeffs));
        }
        let mut sq = if n < 0 { self.reciprocal()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc: Option<Self> = None;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => sq.clone(),
                    Some(a) => a.mul_unchecked(&sq),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            sq = sq.mul_unchecked(&sq);
        }
        Ok(acc.expect("n != 0"))
    }
}

impl Add for &GradedSeries {
    type Output = GradedSeries;
    fn add(self, rhs: Self) -> GradedSeries {
        self.checked_add(rhs).expect("series addition")
    }
}

impl Sub for &GradedSeries {
    type Output = GradedSeries;
    fn sub(self, rhs: Self) -> GradedSeries {
        self.checked_sub(rhs).expect("series subtraction")
    }
}

impl Mul for &GradedSeries {
    type Output = GradedSeries;
    fn mul(self, rhs: Self) -> GradedSeries {
        self.checked_mul(rhs).expect("series multiplication")
    }
}

impl Neg for &GradedSeries {
    type Output = GradedSeries;
    fn neg(self) -> GradedSeries {
        self.scale(&-Rational::one())
    }
}

impl Neg for GradedSeries {
    type Output = GradedSeries;
    fn neg(self) -> GradedSeries {
        -&self
    }
}
