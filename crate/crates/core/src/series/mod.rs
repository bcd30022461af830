//! Truncated formal Laurent series in one variable.
//!
//! A [`GradedSeries`] is either *ascending* (a Laurent series at `z = 0`,
//! truncated toward higher powers of `z`) or *descending* (a Laurent series
//! at `z = infinity`, truncated toward more negative powers of `z`).
//!
//! Internally both are stored in the local parameter `t`, where `t = z` for
//! ascending series and `t = 1/z` for descending ones. In `t` every series is
//! an ordinary truncated Laurent series `sum_{i} c_i t^{start+i} + O(t^prec)`,
//! so the ring operations are shared and only calculus and substitution need
//! to know the direction.
//!
//! Every value records how far its coefficients are known. Operations derive
//! the precision of their result from the precision of their inputs, so a
//! coefficient reported by [`GradedSeries::coeff`] is always exact.

mod calculus;
mod compose;
mod ops;
mod transcendental;

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::arith::Rational;

pub use transcendental::Hyperbolic;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Expansion at `z = 0`; omitted terms have higher exponents.
    Ascending,
    /// Expansion at `z = infinity`; omitted terms have lower exponents.
    Descending,
}

impl Direction {
    /// Converts a `z`-exponent to the exponent of the local parameter `t`.
    /// The map is an involution.
    fn local(self, exponent: i64) -> i64 {
        match self {
            Direction::Ascending => exponent,
            Direction::Descending => -exponent,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("direction mismatch: {0:?} vs {1:?}")]
    DirectionMismatch(Direction, Direction),
    #[error("reciprocal of a series with no known nonzero term")]
    ZeroReciprocal,
    #[error("exp needs a series vanishing at the expansion point, got lead exponent {0}")]
    ExpNotNilpotent(i64),
    #[error("log needs leading term 1")]
    LogLeadingTerm,
    #[error("fractional power needs a unit leading coefficient, got {0}")]
    NonUnitLeading(String),
    #[error("power {power} does not map lead exponent {lead} to an integer exponent")]
    FractionalExponent { power: String, lead: i64 },
    #[error("substitution does not converge: {0}")]
    NonConvergentSubstitution(String),
    #[error("reversion needs lead exponent 1 with nonzero coefficient, got {0}")]
    RevertShape(String),
    #[error("antiderivative would produce a logarithm (z^-1 term)")]
    LogarithmicTerm,
    #[error("argument of hyperbolic function must vanish at the expansion point")]
    HyperbolicArgument,
}

pub type Result<T> = std::result::Result<T, SeriesError>;

/// A truncated formal Laurent series with exact rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedSeries {
    dir: Direction,
    /// Exponent in `t` of `coeffs[0]`; equals the precision when empty.
    start: i64,
    /// Known coefficients; `coeffs[0] != 0` unless empty.
    coeffs: Vec<Rational>,
}

impl GradedSeries {
    /// Builds `sum_i coeffs[i] z^{lead -+ i}` (minus for descending), known
    /// through `coeffs.len()` terms. Leading zeros are trimmed.
    pub fn new(dir: Direction, lead_exponent: i64, coeffs: Vec<Rational>) -> Self {
        Self::from_local(dir, dir.local(lead_exponent), coeffs)
    }

    pub(crate) fn from_local(dir: Direction, start: i64, coeffs: Vec<Rational>) -> Self {
        let mut s = Self { dir, start, coeffs };
        s.normalize();
        s
    }

    /// Series from `(exponent, coefficient)` pairs, known strictly before
    /// `horizon` (the first exponent whose coefficient is unknown).
    pub fn from_terms<I>(dir: Direction, terms: I, horizon: i64) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let prec = dir.local(horizon);
        let terms: Vec<(i64, Rational)> =
            terms.into_iter().map(|(e, c)| (dir.local(e), c)).filter(|(t, _)| *t < prec).collect();
        let start = terms.iter().map(|(t, _)| *t).min().unwrap_or(prec);
        let mut coeffs = vec![Rational::zero(); (prec - start) as usize];
        for (t, c) in terms {
            coeffs[(t - start) as usize] += c;
        }
        Self::from_local(dir, start, coeffs)
    }

    /// `0 + O(horizon)`.
    pub fn zero(dir: Direction, horizon: i64) -> Self {
        Self::from_local(dir, dir.local(horizon), Vec::new())
    }

    /// `c z^e + O(horizon)`.
    pub fn monomial(dir: Direction, exponent: i64, c: Rational, horizon: i64) -> Self {
        Self::from_terms(dir, [(exponent, c)], horizon)
    }

    /// The coordinate `z` itself.
    pub fn var(dir: Direction, horizon: i64) -> Self {
        Self::monomial(dir, 1, Rational::from_integer(1.into()), horizon)
    }

    pub fn one(dir: Direction, horizon: i64) -> Self {
        Self::monomial(dir, 0, Rational::from_integer(1.into()), horizon)
    }

    fn normalize(&mut self) {
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.start += lead_zeros as i64;
        }
    }

    pub fn direction(&self) -> Direction {
        self.dir
    }

    /// Exponent of the first nonzero term, `None` for a zero series.
    pub fn lead_exponent(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then(|| self.dir.local(self.start))
    }

    pub fn lead_coeff(&self) -> Option<&Rational> {
        self.coeffs.first()
    }

    /// Number of known orders past the leading term.
    pub fn depth(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// First exponent whose coefficient is not known.
    pub fn horizon(&self) -> i64 {
        self.dir.local(self.prec())
    }

    pub(crate) fn prec(&self) -> i64 {
        self.start + self.coeffs.len() as i64
    }

    pub(crate) fn start(&self) -> i64 {
        self.start
    }

    pub(crate) fn local_coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True if the coefficient of `z^exponent` is known.
    pub fn knows(&self, exponent: i64) -> bool {
        self.dir.local(exponent) < self.prec()
    }

    /// Coefficient of `z^exponent`, or `None` beyond the horizon.
    pub fn coeff(&self, exponent: i64) -> Option<Rational> {
        let t = self.dir.local(exponent);
        if t >= self.prec() {
            None
        } else if t < self.start {
            Some(Rational::zero())
        } else {
            Some(self.coeffs[(t - self.start) as usize].clone())
        }
    }

    /// Coefficient of `t^k` in the local parameter (zero if below start).
    pub(crate) fn local_coeff(&self, k: i64) -> Rational {
        if k < self.start || k >= self.prec() {
            Rational::zero()
        } else {
            self.coeffs[(k - self.start) as usize].clone()
        }
    }

    /// Nonzero known terms as `(exponent, coefficient)`, leading term first.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.dir.local(self.start + i as i64), c))
    }

    /// Exponents from the lead toward the horizon, i.e. in truncation order.
    pub fn exponents_from(&self, from: i64, count: usize) -> Vec<i64> {
        let step = match self.dir {
            Direction::Ascending => 1,
            Direction::Descending => -1,
        };
        (0..count as i64).map(|i| from + step * i).collect()
    }

    /// Drops every term at or beyond `horizon`.
    pub fn truncate(&self, horizon: i64) -> Self {
        let prec = self.dir.local(horizon).min(self.prec());
        if prec <= self.start {
            return Self::from_local(self.dir, prec, Vec::new());
        }
        let mut out = self.clone();
        out.coeffs.truncate((prec - self.start) as usize);
        out.normalize();
        out
    }

    /// Same coefficients read in the opposite direction with `z -> 1/z`.
    /// An ascending series in `z` becomes a descending series in `z` whose
    /// coefficient at `z^{-e}` is the old coefficient at `z^e`.
    pub fn invert_variable(&self) -> Self {
        let dir = match self.dir {
            Direction::Ascending => Direction::Descending,
            Direction::Descending => Direction::Ascending,
        };
        Self { dir, start: self.start, coeffs: self.coeffs.clone() }
    }

    pub(crate) fn check_same_direction(&self, other: &Self) -> Result<()> {
        if self.dir != other.dir {
            return Err(SeriesError::DirectionMismatch(self.dir, other.dir));
        }
        Ok(())
    }
}

impl fmt::Debug for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z")?,
                _ => write!(f, "{c}*z^{e}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(z^{})", self.horizon())
    }
}
