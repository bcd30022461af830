use num_bigint::BigInt;
use num_traits::Zero;

use super::{GradedSeries, Result, SeriesError};
use crate::arith::Rational;

impl GradedSeries {
    /// Termwise `d/dz`.
    pub fn derivative(&self) -> Self {
        let horizon = self.horizon() - 1;
        let terms = self
            .terms()
            .filter(|(e, _)| *e != 0)
            .map(|(e, c)| (e - 1, c * Rational::from_integer(BigInt::from(e))))
            .collect::<Vec<_>>();
        Self::from_terms(self.dir, terms, horizon)
    }

    /// Termwise `integral dz` with zero constant of integration.
    ///
    /// Fails if the `z^-1` coefficient is nonzero or not known.
    pub fn antiderivative(&self) -> Result<Self> {
        match self.coeff(-1) {
            Some(c) if c.is_zero() => {}
            _ => return Err(SeriesError::LogarithmicTerm),
        }
        let terms = self
            .terms()
            .map(|(e, c)| (e + 1, c / Rational::from_integer(BigInt::from(e + 1))))
            .collect::<Vec<_>>();
        Ok(Self::from_terms(self.dir, terms, self.horizon() + 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::series::Direction::{Ascending, Descending};

    #[test]
    fn derivative_of_cube() {
        let s = GradedSeries::monomial(Ascending, 3, int(1), 10);
        let d = s.derivative();
        assert_eq!(d.coeff(2).unwrap(), int(3));
        assert_eq!(d.horizon(), 9);
    }

    #[test]
    fn descending_derivative() {
        let s = GradedSeries::from_terms(Descending, [(1, int(1)), (0, int(5)), (-2, int(2))], -4);
        let d = s.derivative();
        assert_eq!(d.coeff(0).unwrap(), int(1));
        assert_eq!(d.coeff(-1).unwrap(), int(0));
        assert_eq!(d.coeff(-3).unwrap(), int(-4));
        assert_eq!(d.horizon(), -5);
    }

    #[test]
    fn antiderivative_of_z_times_k() {
        // z K with K = z + z^3/36 + ...
        let zk = GradedSeries::from_terms(Ascending, [(2, int(1)), (4, rat(1, 36))], 6);
        let a = zk.antiderivative().unwrap();
        assert_eq!(a.coeff(3).unwrap(), rat(1, 3));
        assert_eq!(a.coeff(5).unwrap(), rat(1, 180));
        assert_eq!(a.horizon(), 7);
    }

    #[test]
    fn antiderivative_rejects_reciprocal() {
        let s = GradedSeries::monomial(Ascending, -1, int(1), 3);
        assert_eq!(s.antiderivative(), Err(SeriesError::LogarithmicTerm));
        // Unknown z^-1 coefficient is rejected as well.
        let d = GradedSeries::var(Descending, 0);
        assert_eq!(d.antiderivative(), Err(SeriesError::LogarithmicTerm));
    }

    #[test]
    fn derivative_undoes_antiderivative() {
        let s = GradedSeries::from_terms(Descending, [(2, int(3)), (0, rat(1, 2)), (-3, rat(-7, 5))], -9);
        let back = s.antiderivative().unwrap().derivative();
        assert_eq!(back, s);
    }
}
