use num_bigint::BigInt;
use num_traits::Zero;

use super::{Direction, GradedSeries, Result, SeriesError};
use crate::arith::Rational;

impl GradedSeries {
    /// Substitutes `inner` for the variable of `self`.
    ///
    /// Writing the outer series in its local parameter, `outer = t^s P(t)`,
    /// the substitution evaluates `w^s P(w)` by Horner's rule, where `w` is
    /// `inner` for an ascending outer series and `1/inner` for a descending
    /// one. This converges order by order exactly when `w` vanishes at the
    /// inner series' expansion point. The result lives in `inner`'s
    /// direction; precision follows from the arithmetic.
    pub fn compose(&self, inner: &GradedSeries) -> Result<Self> {
        let w = match self.dir {
            Direction::Ascending => inner.clone(),
            Direction::Descending => {
                if inner.is_zero() {
                    return Err(SeriesError::NonConvergentSubstitution(
                        "descending outer series needs an inner series with a known lead".into(),
                    ));
                }
                inner.reciprocal()?
            }
        };
        if w.is_zero() {
            if w.prec() < 1 {
                return Err(SeriesError::NonConvergentSubstitution(
                    "inner series is unknown at its expansion point".into(),
                ));
            }
        } else if w.start() < 1 {
            let needed = match self.dir {
                Direction::Ascending => "inner series must vanish at its expansion point",
                Direction::Descending => "inner series must have a pole at its expansion point",
            };
            return Err(SeriesError::NonConvergentSubstitution(format!(
                "{needed}; inner lead exponent {:?}",
                inner.lead_exponent()
            )));
        }

        // Horner over P, starting from the unknown tail O(t^0).
        let mut acc = GradedSeries::from_local(w.dir, 0, Vec::new());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_unchecked(&w).add_constant(c);
        }
        if self.start == 0 {
            return Ok(acc);
        }
        Ok(w.powi(self.start)?.mul_unchecked(&acc))
    }

    /// Compositional inverse.
    ///
    /// Ascending input must be `c z + ...` with `c != 0`; descending input
    /// must be `c z + c_0 + c_1 z^-1 + ...`. The result has the same
    /// direction and horizon.
    pub fn revert(&self) -> Result<Self> {
        match self.dir {
            Direction::Ascending => {
                if self.start != 1 || self.coeffs.is_empty() {
                    return Err(SeriesError::RevertShape(format!("{:?}", self.lead_exponent())));
                }
                Ok(revert_local(self))
            }
            Direction::Descending => {
                if self.start != -1 || self.coeffs.is_empty() {
                    return Err(SeriesError::RevertShape(format!("{:?}", self.lead_exponent())));
                }
                // With t = 1/z, G(t) = 1/g(1/t) is an ordinary series c^-1 t + ...
                // and 1/r(1/t) is its reversion.
                let g = self.reciprocal()?;
                let r = revert_local(&g);
                r.reciprocal()
            }
        }
    }
}

/// Lagrange inversion in the local parameter: `[t^n] r = (1/n) [w^{n-1}] (w/g)^n`.
fn revert_local(g: &GradedSeries) -> GradedSeries {
    let n = g.coeffs.len();
    let q = GradedSeries::from_local(g.dir, 0, g.coeffs.clone())
        .reciprocal()
        .expect("nonzero linear coefficient");
    let mut coeffs = Vec::with_capacity(n);
    let mut power = q.clone();
    for k in 1..=n {
        let c = power.local_coeff(k as i64 - 1) / Rational::from_integer(BigInt::from(k));
        coeffs.push(c);
        if k < n {
            power = power.mul_unchecked(&q);
        }
    }
    debug_assert!(coeffs.first().is_some_and(|c| !c.is_zero()));
    GradedSeries::from_local(g.dir, 1, coeffs)
}
