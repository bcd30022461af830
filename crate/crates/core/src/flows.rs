//! Exponentials of vector fields `D = sign * sum_k g_k z^{p(k)} d/dz`.
//!
//! `exp(D)` acts on series as the substitution `g -> g o exp(D) z`, so a
//! coefficient family together with its exponent law encodes a formal change
//! of coordinates. Each application of `D` moves every term strictly toward
//! the horizon, which makes `sum D^n g / n!` finite at any fixed precision,
//! and it makes the coefficients recoverable from `exp(D) z` one order at a
//! time.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{int, Rational};
use crate::series::{Direction, GradedSeries, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlowError {
    #[error("exponent law z^({offset}{step:+}k) does not move {dir:?} series toward the horizon at k = {k}")]
    NonTerminating { offset: i64, step: i64, dir: Direction, k: usize },
    #[error("flow target must be z + ... with unit leading coefficient, got lead {0}")]
    TargetShape(String),
    #[error("target coefficient at z^{0} is not reachable with this exponent law")]
    Unreachable(i64),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

pub type Result<T> = std::result::Result<T, FlowError>;

/// `k -> p(k) = offset + step * k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExponentLaw {
    pub offset: i64,
    pub step: i64,
}

impl ExponentLaw {
    /// `z^{1-k}`, the law of `a_m`, `e_m` and `â_k`.
    pub const STANDARD: Self = Self { offset: 1, step: -1 };
    /// `z^{1-2m}`, the law of `l_m`.
    pub const EVEN: Self = Self { offset: 1, step: -2 };
    /// `z^{1+k}`, the convention of the factor series `f_{+i}`; it only
    /// terminates on ascending series.
    pub const RAISING: Self = Self { offset: 1, step: 1 };

    pub fn exponent(&self, k: usize) -> i64 {
        self.offset + self.step * k as i64
    }

    /// Checks that every `z^{p(k)} d/dz`, `1 <= k <= count`, moves `dir`
    /// series strictly toward their horizon.
    pub fn check(&self, dir: Direction, count: usize) -> Result<()> {
        for k in [1, count.max(1)] {
            let p = self.exponent(k);
            let ok = match dir {
                Direction::Descending => p <= 0,
                Direction::Ascending => p >= 2,
            };
            if !ok {
                return Err(FlowError::NonTerminating { offset: self.offset, step: self.step, dir, k });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn factor(self) -> Rational {
        match self {
            Sign::Plus => Rational::one(),
            Sign::Minus => -Rational::one(),
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Whether coefficients past the stored ones are zero or simply unknown.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tail {
    Zero,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowCoeffs {
    values: Vec<Rational>,
    law: ExponentLaw,
    sign: Sign,
    tail: Tail,
}

impl FlowCoeffs {
    /// A finite family; every coefficient past `values` is zero.
    pub fn finite(values: Vec<Rational>, law: ExponentLaw, sign: Sign) -> Self {
        Self { values, law, sign, tail: Tail::Zero }
    }

    /// The leading part of an infinite family whose later terms are unknown.
    pub fn truncated(values: Vec<Rational>, law: ExponentLaw, sign: Sign) -> Self {
        Self { values, law, sign, tail: Tail::Unknown }
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// `k`-th coefficient, 1-based; zero past the stored values.
    pub fn get(&self, k: usize) -> Rational {
        self.values.get(k - 1).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn law(&self) -> ExponentLaw {
        self.law
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    pub fn with_sign(&self, sign: Sign) -> Self {
        Self { sign, ..self.clone() }
    }

    pub fn with_value(&self, k: usize, value: Rational) -> Self {
        let mut out = self.clone();
        if out.values.len() < k {
            out.values.resize(k, Rational::zero());
        }
        out.values[k - 1] = value;
        out
    }

    /// The vector field coefficient `sign * sum g_k z^{p(k)}` in direction
    /// `dir`, known at least up to local precision `min_prec`.
    fn field(&self, dir: Direction, min_prec: i64) -> GradedSeries {
        let sign = self.sign.factor();
        let terms = self
            .values
            .iter()
            .enumerate()
            .map(|(i, g)| (self.law.exponent(i + 1), g * &sign));
        let horizon = match self.tail {
            Tail::Unknown => self.law.exponent(self.values.len() + 1),
            Tail::Zero => {
                let local = min_prec.max(1);
                match dir {
                    Direction::Ascending => local,
                    Direction::Descending => -local,
                }
            }
        };
        GradedSeries::from_terms(dir, terms, horizon)
    }
}

/// `exp(D) target = sum_n D^n(target)/n!`.
pub fn flow_apply(coeffs: &FlowCoeffs, target: &GradedSeries) -> Result<GradedSeries> {
    let dir = target.direction();
    coeffs.law.check(dir, coeffs.values.len())?;
    let span = target.prec() - target.start().min(target.prec());
    let field = coeffs.field(dir, target.prec() + span + 2);

    let mut result = target.clone();
    let mut term = target.clone();
    let mut n = 1i64;
    loop {
        term = (&field * &term.derivative()).scale(&int(n).recip());
        if term.start() >= result.prec() {
            break;
        }
        result = &result + &term;
        n += 1;
    }
    Ok(result)
}

/// Solves `exp(sign * sum g_k z^{p(k)} d/dz) z = target` for the `g_k`.
///
/// The coefficient of `z^{p(k)}` in `exp(D) z` is `sign * g_k` plus a
/// polynomial in `g_1 .. g_{k-1}`, so the family is found one coefficient at
/// a time. Every coefficient whose exponent is inside the target's horizon
/// is determined; the result is marked as truncated past that.
pub fn flow_solve(target: &GradedSeries, law: ExponentLaw, sign: Sign) -> Result<FlowCoeffs> {
    let dir = target.direction();
    if target.lead_exponent() != Some(1) || !target.lead_coeff().is_some_and(|c| c.is_one()) {
        return Err(FlowError::TargetShape(format!("{:?}", target.lead_exponent())));
    }
    let count = (1..).take_while(|&k| target.knows(law.exponent(k))).count();
    law.check(dir, count)?;

    let mut values: Vec<Rational> = Vec::with_capacity(count);
    for k in 1..=count {
        let p = law.exponent(k);
        let beyond = match dir {
            Direction::Descending => p - 1,
            Direction::Ascending => p + 1,
        };
        let partial = FlowCoeffs::finite(values.clone(), law, sign);
        let z = GradedSeries::var(dir, beyond);
        let got = flow_apply(&partial, &z)?.coeff(p).expect("inside horizon");
        let want = target.coeff(p).expect("inside horizon");
        values.push((want - got) * sign.factor());
    }

    let solved = FlowCoeffs::truncated(values, law, sign);
    let z = GradedSeries::var(dir, target.horizon());
    let back = flow_apply(&solved, &z)?;
    for e in target.exponents_from(1, target.depth() + 1) {
        match back.coeff(e) {
            Some(c) if Some(&c) != target.coeff(e).as_ref() => return Err(FlowError::Unreachable(e)),
            _ => {}
        }
    }
    Ok(solved)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::series::Direction::{Ascending, Descending};

    fn z(h: i64) -> GradedSeries {
        GradedSeries::var(Descending, h)
    }

    #[test]
    fn translation() {
        let c = FlowCoeffs::finite(vec![rat(3, 7)], ExponentLaw::STANDARD, Sign::Plus);
        let out = flow_apply(&c, &z(-12)).unwrap();
        assert_eq!(out, GradedSeries::from_terms(Descending, [(1, int(1)), (0, rat(3, 7))], -12));
    }

    #[test]
    fn square_root_flow() {
        // dz/dt = a/z integrates to sqrt(z^2 + 2a)
        let a = rat(5, 3);
        let c = FlowCoeffs::finite(vec![Rational::zero(), a.clone()], ExponentLaw::STANDARD, Sign::Plus);
        let out = flow_apply(&c, &z(-10)).unwrap();
        assert_eq!(out.coeff(1).unwrap(), int(1));
        assert_eq!(out.coeff(-1).unwrap(), a.clone());
        assert_eq!(out.coeff(-3).unwrap(), -&a * &a / int(2));
        assert_eq!(out.coeff(-5).unwrap(), &a * &a * &a / int(2));
        assert_eq!(out.horizon(), -10);
    }

    #[test]
    fn solve_identity_gives_zeros() {
        let c = flow_solve(&z(-8), ExponentLaw::STANDARD, Sign::Plus).unwrap();
        assert_eq!(c.values().len(), 8);
        assert!(c.values().iter().all(|v| v.is_zero()));
    }

    #[test]
    fn solve_round_trip() {
        let target = GradedSeries::from_terms(
            Descending,
            [(1, int(1)), (0, rat(2, 3)), (-1, rat(-1, 12)), (-2, rat(11, 270)), (-4, int(2))],
            -7,
        );
        let c = flow_solve(&target, ExponentLaw::STANDARD, Sign::Plus).unwrap();
        assert_eq!(c.get(1), rat(2, 3));
        assert_eq!(c.get(2), rat(-1, 12));
        assert_eq!(flow_apply(&c, &z(-7)).unwrap(), target);

        let m = flow_solve(&target, ExponentLaw::STANDARD, Sign::Minus).unwrap();
        assert_eq!(m.get(1), rat(-2, 3));
        assert_eq!(flow_apply(&m, &z(-7)).unwrap(), target);
    }

    #[test]
    fn even_law_needs_odd_target() {
        let odd = GradedSeries::from_terms(Descending, [(1, int(1)), (-1, rat(-1, 180)), (-3, int(1))], -6);
        let l = flow_solve(&odd, ExponentLaw::EVEN, Sign::Minus).unwrap();
        assert_eq!(l.get(1), rat(1, 180));
        let even = GradedSeries::from_terms(Descending, [(1, int(1)), (0, int(1))], -6);
        assert_eq!(flow_solve(&even, ExponentLaw::EVEN, Sign::Plus), Err(FlowError::Unreachable(0)));
    }

    #[test]
    fn raising_law_on_descending_rejected() {
        let c = FlowCoeffs::finite(vec![int(1)], ExponentLaw::RAISING, Sign::Plus);
        assert!(matches!(flow_apply(&c, &z(-5)), Err(FlowError::NonTerminating { .. })));
        // The same law is fine at z = 0: exp(a z^2 d/dz) z = z / (1 - a z).
        let x = GradedSeries::var(Ascending, 8);
        let out = flow_apply(&c, &x).unwrap();
        for e in 1..8 {
            assert_eq!(out.coeff(e).unwrap(), int(1));
        }
    }

    #[test]
    fn target_shape_checked() {
        let bad = GradedSeries::from_terms(Descending, [(1, int(2))], -4);
        assert!(matches!(flow_solve(&bad, ExponentLaw::STANDARD, Sign::Plus), Err(FlowError::TargetShape(_))));
    }

    #[test]
    fn truncated_family_limits_precision() {
        let c = FlowCoeffs::truncated(vec![int(1), int(2)], ExponentLaw::STANDARD, Sign::Plus);
        let out = flow_apply(&c, &z(-20)).unwrap();
        assert_eq!(out.horizon(), -2);
    }
}
