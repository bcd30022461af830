use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{GradedSeries, Result, SeriesError};
use crate::arith::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hyperbolic {
    Sinh,
    Cosh,
    Coth,
    Csch,
}

impl GradedSeries {
    /// `exp(self)` for a series vanishing at the expansion point.
    ///
    /// A nonzero constant term would need `e` in the coefficient field, so it
    /// is rejected; callers cancel such factors by hand.
    pub fn exp(&self) -> Result<Self> {
        if let Some(lead) = self.lead_exponent() {
            if self.start() < 1 {
                return Err(SeriesError::ExpNotNilpotent(lead));
            }
        }
        let n = self.prec().max(0) as usize;
        // n E_n = sum_{k=1}^{n} k a_k E_{n-k}
        let a: Vec<Rational> = (0..n as i64).map(|k| self.local_coeff(k)).collect();
        let mut e: Vec<Rational> = Vec::with_capacity(n);
        if n > 0 {
            e.push(Rational::one());
        }
        for m in 1..n {
            let mut acc = Rational::zero();
            for k in 1..=m {
                if !a[k].is_zero() {
                    acc += &a[k] * &e[m - k] * Rational::from_integer(BigInt::from(k));
                }
            }
            e.push(acc / Rational::from_integer(BigInt::from(m)));
        }
        Ok(Self::from_local(self.dir, 0, e))
    }

    /// `log(self)` for a series with leading term exactly `1`.
    pub fn log(&self) -> Result<Self> {
        if self.start() != 0 || !self.lead_coeff().is_some_and(|c| c.is_one()) {
            return Err(SeriesError::LogLeadingTerm);
        }
        let a = self.local_coeffs();
        let n = a.len();
        // n L_n = n a_n - sum_{k=1}^{n-1} k L_k a_{n-k}
        let mut l = vec![Rational::zero(); n];
        for m in 1..n {
            let mut acc = &a[m] * Rational::from_integer(BigInt::from(m));
            for k in 1..m {
                if !l[k].is_zero() {
                    acc -= &l[k] * &a[m - k] * Rational::from_integer(BigInt::from(k));
                }
            }
            l[m] = acc / Rational::from_integer(BigInt::from(m));
        }
        Ok(Self::from_local(self.dir, 0, l))
    }

    /// `self^r` on the branch whose leading coefficient is `c^r` with `c` the
    /// leading coefficient. Non-integer `r` requires `c = 1`.
    pub fn pow(&self, r: &Rational) -> Result<Self> {
        if r.is_integer() {
            let n: i64 = r.to_integer().try_into().map_err(|_| SeriesError::FractionalExponent {
                power: r.to_string(),
                lead: self.lead_exponent().unwrap_or(0),
            })?;
            return self.powi(n);
        }
        let c = self.lead_coeff().ok_or(SeriesError::ZeroReciprocal)?;
        if !c.is_one() {
            return Err(SeriesError::NonUnitLeading(c.to_string()));
        }
        let lead = self.start();
        let shifted = r * Rational::from_integer(BigInt::from(lead));
        if !shifted.is_integer() {
            return Err(SeriesError::FractionalExponent {
                power: r.to_string(),
                lead: self.lead_exponent().unwrap_or(0),
            });
        }
        let new_start: i64 = shifted.to_integer().try_into().expect("small exponent");
        let a = self.local_coeffs();
        let n = a.len();
        // Miller's recurrence for P = A^r, A_0 = 1:
        // m P_m = sum_{k=1}^{m} ((r+1) k - m) A_k P_{m-k}
        let r1 = r + Rational::one();
        let mut p: Vec<Rational> = Vec::with_capacity(n);
        p.push(Rational::one());
        for m in 1..n {
            let mut acc = Rational::zero();
            let mq = Rational::from_integer(BigInt::from(m));
            for k in 1..=m {
                if a[k].is_zero() {
                    continue;
                }
                let w = &r1 * Rational::from_integer(BigInt::from(k)) - &mq;
                acc += w * &a[k] * &p[m - k];
            }
            p.push(acc / mq);
        }
        Ok(Self::from_local(self.dir, new_start, p))
    }

    /// `sinh`, `cosh`, `coth` or `csch` of a series vanishing at the expansion
    /// point; `coth` and `csch` carry a simple pole.
    pub fn hyperbolic(&self, kind: Hyperbolic) -> Result<Self> {
        if self.lead_exponent().is_some() && self.start() < 1 {
            return Err(SeriesError::HyperbolicArgument);
        }
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        let ep = self.exp()?;
        let em = (-self).exp()?;
        let sinh = (&ep - &em).scale(&half);
        Ok(match kind {
            Hyperbolic::Sinh => sinh,
            Hyperbolic::Cosh => (&ep + &em).scale(&half),
            Hyperbolic::Csch => sinh.reciprocal()?,
            Hyperbolic::Coth => &(&ep + &em).scale(&half) * &sinh.reciprocal()?,
        })
    }

    pub fn sqrt(&self) -> Result<Self> {
        self.pow(&Rational::new(BigInt::one(), BigInt::from(2)))
    }

    /// Leading coefficient is strictly positive.
    pub fn has_positive_lead(&self) -> bool {
        self.lead_coeff().is_some_and(|c| c.is_positive())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::series::Direction::{Ascending, Descending};

    fn t(h: i64) -> GradedSeries {
        GradedSeries::var(Ascending, h)
    }

    #[test]
    fn exp_of_zero_is_one() {
        let e = GradedSeries::zero(Ascending, 6).exp().unwrap();
        assert_eq!(e, GradedSeries::one(Ascending, 6));
    }

    #[test]
    fn exp_rejects_constant_term() {
        let s = GradedSeries::one(Ascending, 4);
        assert_eq!(s.exp(), Err(SeriesError::ExpNotNilpotent(0)));
        let d = GradedSeries::var(Descending, -5);
        assert_eq!(d.exp(), Err(SeriesError::ExpNotNilpotent(1)));
    }

    #[test]
    fn log_one_plus_z() {
        let s = GradedSeries::from_terms(Ascending, [(0, int(1)), (1, int(1))], 8);
        let l = s.log().unwrap();
        for k in 1..8 {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            assert_eq!(l.coeff(k).unwrap(), rat(sign, k));
        }
        assert_eq!(GradedSeries::var(Ascending, 4).log(), Err(SeriesError::LogLeadingTerm));
    }

    #[test]
    fn exp_log_inverse() {
        let s = GradedSeries::from_terms(Ascending, [(1, rat(2, 3)), (2, rat(-5, 7)), (4, int(3))], 12);
        let back = s.exp().unwrap().log().unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn inverse_square_root_head() {
        // (w^2 + 2/3 w^3 + 1/2 w^4)^(-1/2) = w^-1 (1 - 1/3 w + ...)
        let g = GradedSeries::from_terms(Ascending, [(2, int(1)), (3, rat(2, 3)), (4, rat(1, 2))], 5);
        let p = g.pow(&rat(-1, 2)).unwrap();
        assert_eq!(p.lead_exponent(), Some(-1));
        assert_eq!(p.coeff(-1).unwrap(), int(1));
        assert_eq!(p.coeff(0).unwrap(), rat(-1, 3));
    }

    #[test]
    fn pow_preconditions() {
        let g = GradedSeries::from_terms(Ascending, [(2, int(3))], 5);
        assert!(matches!(g.pow(&rat(1, 2)), Err(SeriesError::NonUnitLeading(_))));
        let h = GradedSeries::from_terms(Ascending, [(1, int(1))], 5);
        assert!(matches!(h.pow(&rat(1, 2)), Err(SeriesError::FractionalExponent { .. })));
        // Integer powers accept any leading coefficient.
        assert_eq!(g.pow(&int(2)).unwrap().coeff(4).unwrap(), int(9));
    }

    #[test]
    fn hyperbolic_expansions() {
        let coth = t(12).hyperbolic(Hyperbolic::Coth).unwrap();
        assert_eq!(coth.lead_exponent(), Some(-1));
        assert_eq!(coth.coeff(-1).unwrap(), int(1));
        assert_eq!(coth.coeff(1).unwrap(), rat(1, 3));
        assert_eq!(coth.coeff(3).unwrap(), rat(-1, 45));
        assert_eq!(coth.coeff(5).unwrap(), rat(2, 945));
        assert_eq!(coth.coeff(0).unwrap(), int(0));

        let csch = t(8).hyperbolic(Hyperbolic::Csch).unwrap();
        assert_eq!(csch.coeff(1).unwrap(), rat(-1, 6));
        assert_eq!(csch.coeff(3).unwrap(), rat(7, 360));

        let sinh = t(8).hyperbolic(Hyperbolic::Sinh).unwrap();
        assert_eq!(sinh.coeff(3).unwrap(), rat(1, 6));
        assert_eq!(sinh.coeff(5).unwrap(), rat(1, 120));
        let cosh = t(8).hyperbolic(Hyperbolic::Cosh).unwrap();
        assert_eq!(cosh.coeff(2).unwrap(), rat(1, 2));

        assert_eq!(
            GradedSeries::one(Ascending, 3).hyperbolic(Hyperbolic::Sinh),
            Err(SeriesError::HyperbolicArgument)
        );
    }

    #[test]
    fn hyperbolic_of_descending_argument() {
        // coth(1/z) at infinity is z + z^-1/3 - z^-3/45 + ...
        let inv = GradedSeries::monomial(Descending, -1, int(1), -10);
        let c = inv.hyperbolic(Hyperbolic::Coth).unwrap();
        assert_eq!(c.coeff(1).unwrap(), int(1));
        assert_eq!(c.coeff(-1).unwrap(), rat(1, 3));
        assert_eq!(c.coeff(-3).unwrap(), rat(-1, 45));
    }
}
