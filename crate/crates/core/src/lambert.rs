//! Series attached to the two real branches of the Lambert W function.
//!
//! * `b_n`: coefficients of `v = -W_{-1}(-e^{-1-z^2/2}) = 1 + sum b_n z^n`,
//!   with the twin `u = -W_0(...)` obtained by `z -> -z`.
//! * `c_n`: coefficients of the nontrivial solution `mu = sum c_n x^n` of
//!   `(1-x) e^{-(1-x)} = (1+mu) e^{-(1+mu)}`.
//! * `K = (v - u)/2`, the odd part of `v`, which is half the branch
//!   difference `(W_0 - W_{-1})/2` at `-e^{-1-z^2/2}`.
//!
//! Both families come from a quadratic recursion and, independently, from
//! reverting the functional equation they solve. Identities containing a
//! factor `e^{+-1}` are compared after multiplying through by `e`, so both
//! sides stay in the rational series ring.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{double_factorial, factorial, int, Rational};
use crate::report::{compare_lists, compare_series, Mismatch};
use crate::series::{Direction, GradedSeries, Hyperbolic, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LambertError {
    #[error("order {got} below the minimum {min}")]
    OrderTooSmall { got: usize, min: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

pub type Result<T> = std::result::Result<T, LambertError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    B,
    C,
}

/// A coefficient family indexed from 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchCoeffs {
    family: Family,
    values: Vec<Rational>,
}

impl BranchCoeffs {
    pub fn from_values(family: Family, values: Vec<Rational>) -> Self {
        Self { family, values }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    /// `n`-th coefficient, 1-based.
    pub fn get(&self, n: usize) -> &Rational {
        &self.values[n - 1]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Copy with coefficient `n` replaced.
    pub fn with_value(&self, n: usize, value: Rational) -> Self {
        let mut out = self.clone();
        out.values[n - 1] = value;
        out
    }

    /// `sum_n values[n] x^n + O(x^{order+1})` as an ascending series.
    pub fn to_series(&self) -> GradedSeries {
        GradedSeries::new(Direction::Ascending, 1, self.values.clone())
    }
}

fn require(order: usize, min: usize) -> Result<()> {
    if order < min {
        return Err(LambertError::OrderTooSmall { got: order, min });
    }
    Ok(())
}

/// `(n+1) b_n = b_{n-1} - sum_{k=2}^{n-1} k b_k b_{n+1-k}`, `b_1 = 1`, `b_2 = 1/3`.
pub fn coeffs_b(order: usize) -> Result<BranchCoeffs> {
    require(order, 2)?;
    let mut b: Vec<Rational> = vec![Rational::zero(); order + 1];
    b[1] = Rational::one();
    b[2] = Rational::new(1.into(), 3.into());
    for n in 3..=order {
        let mut acc = b[n - 1].clone();
        for k in 2..n {
            acc -= int(k as i64) * &b[k] * &b[n + 1 - k];
        }
        b[n] = acc / int(n as i64 + 1);
    }
    b.remove(0);
    Ok(BranchCoeffs::from_values(Family::B, b))
}

/// `(n+1) c_n = 2 + sum_{j=2}^{n-1} c_j (1 - j c_{n-j+1})`, `c_1 = 1`, `c_2 = 2/3`.
pub fn coeffs_c(order: usize) -> Result<BranchCoeffs> {
    require(order, 2)?;
    let mut c: Vec<Rational> = vec![Rational::zero(); order + 1];
    c[1] = Rational::one();
    c[2] = Rational::new(2.into(), 3.into());
    for n in 3..=order {
        let mut acc = int(2);
        for j in 2..n {
            acc += &c[j] * (Rational::one() - int(j as i64) * &c[n - j + 1]);
        }
        c[n] = acc / int(n as i64 + 1);
    }
    c.remove(0);
    Ok(BranchCoeffs::from_values(Family::C, c))
}

/// `sigma(s) = s * sqrt(2 (s - log(1+s)) / s^2)`, known below `s^horizon`.
///
/// Taking logarithms in `(1+s) e^{-s} = e^{-z^2/2}` gives
/// `sigma(s)^2 = z^2`, so the branch with `v > 1` for `z > 0` is
/// `s = sigma^{-1}(z)`.
fn sigma(horizon: i64) -> std::result::Result<GradedSeries, SeriesError> {
    let s = GradedSeries::var(Direction::Ascending, horizon + 1);
    let log = s.add_constant(&Rational::one()).log()?;
    let q = (&s - &log).scale(&int(2)).shift(-2);
    Ok(q.sqrt()?.shift(1))
}

/// Oracle for the `b` family: reverts `sigma` instead of running the recursion.
pub fn b_via_reversion(order: usize) -> Result<BranchCoeffs> {
    require(order, 1)?;
    let s = sigma(order as i64 + 1)?.revert()?;
    let values = (1..=order as i64).map(|n| s.coeff(n).expect("within horizon")).collect();
    Ok(BranchCoeffs::from_values(Family::B, values))
}

/// Oracle for the `c` family: the nontrivial root of
/// `sigma(mu) = -sigma(-x)`, i.e. `mu = sigma^{-1}(-sigma(-x))`.
pub fn c_via_functional_equation(order: usize) -> Result<BranchCoeffs> {
    require(order, 1)?;
    let h = order as i64 + 1;
    let sig = sigma(h)?;
    let minus_x = GradedSeries::monomial(Direction::Ascending, 1, int(-1), h);
    let inner = -sig.compose(&minus_x)?;
    let mu = sig.revert()?.compose(&inner)?;
    let values = (1..=order as i64).map(|n| mu.coeff(n).expect("within horizon")).collect();
    Ok(BranchCoeffs::from_values(Family::C, values))
}

#[derive(Debug, Clone)]
pub struct UvK {
    pub u: GradedSeries,
    pub v: GradedSeries,
    pub k: GradedSeries,
}

/// `v = 1 + sum b_i z^i`, `u = 1 + sum (-1)^i b_i z^i`, `K = (v - u)/2`.
pub fn series_uvk(b: &BranchCoeffs) -> UvK {
    let horizon = b.order() as i64 + 1;
    let v = GradedSeries::from_terms(
        Direction::Ascending,
        std::iter::once((0, Rational::one())).chain((1..=b.order()).map(|i| (i as i64, b.get(i).clone()))),
        horizon,
    );
    let u = GradedSeries::from_terms(
        Direction::Ascending,
        std::iter::once((0, Rational::one())).chain((1..=b.order()).map(|i| {
            let c = b.get(i).clone();
            (i as i64, if i % 2 == 0 { c } else { -c })
        })),
        horizon,
    );
    let k = (&v - &u).scale(&Rational::new(1.into(), 2.into()));
    UvK { u, v, k }
}

pub fn series_k(b: &BranchCoeffs) -> GradedSeries {
    series_uvk(b).k
}

/// `mu = sum c_n x^n`.
pub fn series_mu(c: &BranchCoeffs) -> GradedSeries {
    c.to_series()
}

/// `W_0(z) = sum_{n>=1} (-n)^{n-1}/n! z^n` through `z^order`.
pub fn w0_taylor(order: usize) -> GradedSeries {
    let coeffs = (1..=order as u64)
        .map(|n| {
            let num = BigInt::from(-(n as i64)).pow(n as u32 - 1);
            Rational::new(num, factorial(n))
        })
        .collect();
    GradedSeries::new(Direction::Ascending, 1, coeffs)
}

/// `W_0` as the reversion of `w e^w`.
pub fn w0_via_reversion(order: usize) -> Result<GradedSeries> {
    let w = GradedSeries::var(Direction::Ascending, order as i64 + 1);
    Ok((&w * &w.exp()?).revert()?)
}

/// Stirling coefficients `s_i = (2i+1)!! b_{2i+1}` for `i < count`.
pub fn stirling_coeffs(b: &BranchCoeffs, count: usize) -> Vec<Rational> {
    (0..count)
        .map(|i| {
            let df = double_factorial(2 * i as i64 + 1).expect("odd argument");
            Rational::from_integer(df) * b.get(2 * i + 1)
        })
        .collect()
}

fn gaussian(horizon: i64) -> std::result::Result<GradedSeries, SeriesError> {
    GradedSeries::monomial(Direction::Ascending, 2, Rational::new((-1).into(), 2.into()), horizon).exp()
}

/// `e^{-z^2/2}` against `K csch(K) e^{1 - K coth K}` from `z^0` through `z^order`.
pub fn check_k_functional(k: &GradedSeries, order: usize) -> Result<Option<Mismatch>> {
    let coth = k.hyperbolic(Hyperbolic::Coth)?;
    let csch = k.hyperbolic(Hyperbolic::Csch)?;
    let k_coth = k * &coth;
    let exponent = (-&k_coth).add_constant(&Rational::one());
    let rhs = &(k * &csch) * &exponent.exp()?;
    let lhs = gaussian(order as i64 + 1)?;
    Ok(compare_series(&lhs, &rhs, 0, order + 1))
}

/// `K^2 coth K - K` against `integral z K dz` from `z^3` through `z^{3+order}`.
pub fn check_k_integral(k: &GradedSeries, order: usize) -> Result<Option<Mismatch>> {
    let coth = k.hyperbolic(Hyperbolic::Coth)?;
    let lhs = &(&(k * k) * &coth) - k;
    let rhs = k.shift(1).antiderivative()?;
    Ok(compare_series(&lhs, &rhs, 3, order + 1))
}

/// `v e^{1-v}` against `e^{-z^2/2}`, from `z^0` through `z^order`.
pub fn check_v_equation(b: &BranchCoeffs, order: usize) -> Result<Option<Mismatch>> {
    let v = series_uvk(b).v;
    let s = v.add_constant(&-Rational::one());
    let lhs = &v * &(-&s).exp()?;
    let rhs = gaussian(order as i64 + 1)?;
    Ok(compare_series(&lhs, &rhs, 0, order + 1))
}

/// `(1 + mu) e^{-mu}` against `(1 - x) e^x`, i.e. the Karamata equation with
/// `e^{-1}` cancelled.
pub fn check_karamata_equation(c: &BranchCoeffs, order: usize) -> Result<Option<Mismatch>> {
    let mu = series_mu(c);
    let lhs = &mu.add_constant(&Rational::one()) * &(-&mu).exp()?;
    let x = GradedSeries::var(Direction::Ascending, order as i64 + 1);
    let rhs = &(-&x).add_constant(&Rational::one()) * &x.exp()?;
    Ok(compare_series(&lhs, &rhs, 0, order + 1))
}

/// The recursion values against the reversion oracle, then the defining equation.
pub fn check_v_ode(b: &BranchCoeffs) -> Result<Option<Mismatch>> {
    let oracle = b_via_reversion(b.order())?;
    if let Some(m) = compare_lists(b.values(), oracle.values(), 1) {
        return Ok(Some(m.with_detail("b recursion vs reversion of v e^{1-v} = e^{-z^2/2}")));
    }
    Ok(check_v_equation(b, b.order())?.map(|m| m.with_detail("v e^{1-v} = e^{-z^2/2}")))
}

pub fn check_karamata(c: &BranchCoeffs) -> Result<Option<Mismatch>> {
    let oracle = c_via_functional_equation(c.order())?;
    if let Some(m) = compare_lists(c.values(), oracle.values(), 1) {
        return Ok(Some(m.with_detail("c recursion vs root of the Karamata equation")));
    }
    Ok(check_karamata_equation(c, c.order())?.map(|m| m.with_detail("(1+mu) e^{-mu} = (1-x) e^x")))
}

/// Taylor coefficients against the reversion of `w e^w`, then `W e^W = z`.
pub fn check_w0(taylor: &GradedSeries, order: usize) -> Result<Option<Mismatch>> {
    let oracle = w0_via_reversion(order)?;
    if let Some(m) = compare_series(taylor, &oracle, 1, order) {
        return Ok(Some(m.with_detail("Taylor coefficients vs reversion of w e^w")));
    }
    let back = taylor * &taylor.exp()?;
    let z = GradedSeries::var(Direction::Ascending, order as i64 + 1);
    Ok(compare_series(&back, &z, 1, order).map(|m| m.with_detail("W e^W = z")))
}
