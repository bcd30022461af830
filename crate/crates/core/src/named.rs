//! The named series and flow coefficient families.
//!
//! Every `series_*` function returns exactly `order + 1` known coefficients
//! starting at the series' lead. Compositions, reciprocals and fractional
//! powers lose a few orders each, so each series is first built at a larger
//! working precision and then truncated.

use num_traits::One;

use crate::arith::{int, rat, Rational};
use crate::error::{require, Error, Result};
use crate::flows::{flow_solve, ExponentLaw, FlowCoeffs, Sign};
use crate::lambert::{coeffs_b, coeffs_c};
use crate::series::{Direction, GradedSeries, Hyperbolic};

use Direction::{Ascending, Descending};

const MAX_MARGIN: usize = 256;

fn step(dir: Direction, lead: i64, k: usize) -> i64 {
    match dir {
        Ascending => lead + k as i64,
        Descending => lead - k as i64,
    }
}

/// Builds at increasing working precision until `order + 1` coefficients
/// from `lead` are known, then truncates to exactly that many.
fn fit<F>(what: &'static str, dir: Direction, lead: i64, order: usize, build: F) -> Result<GradedSeries>
where
    F: Fn(usize) -> Result<GradedSeries>,
{
    let mut margin = 4;
    while margin <= MAX_MARGIN {
        let s = build(order + margin)?;
        if s.knows(step(dir, lead, order)) {
            return Ok(s.truncate(step(dir, lead, order + 1)));
        }
        margin *= 2;
    }
    Err(Error::PrecisionExhausted { what, order })
}

/// `f = (-2 log(1 - w) - 2w)^{-1/2}` with `w = 1/(1+z)`.
pub fn series_f(order: usize) -> Result<GradedSeries> {
    fit("f", Descending, 1, order, |n| {
        let w = GradedSeries::var(Descending, -(n as i64)).add_constant(&int(1)).reciprocal()?;
        let log = (-&w).add_constant(&int(1)).log()?;
        let g = &log.scale(&int(-2)) - &w.scale(&int(2));
        Ok(g.pow(&rat(-1, 2))?)
    })
}

/// `theta = (3 sum_k b_{2k+1}/(2k+3) z^{-2k-3})^{-1/3}`.
pub fn series_theta(order: usize) -> Result<GradedSeries> {
    fit("theta", Descending, 1, order, |n| {
        let b = coeffs_b(n.max(2))?;
        let terms = (0..)
            .take_while(|k| 2 * k + 1 <= n)
            .map(|k| (-(2 * k as i64 + 3), int(3) * b.get(2 * k + 1) / int(2 * k as i64 + 3)));
        let inner = GradedSeries::from_terms(Descending, terms, -(n as i64 + 3));
        Ok(inner.pow(&rat(-1, 3))?)
    })
}

/// `h = (3 z^{-2} coth(z^{-1}) - 3 z^{-1})^{-1/3}`.
pub fn series_h(order: usize) -> Result<GradedSeries> {
    fit("h", Descending, 1, order, |n| {
        let t = GradedSeries::var(Ascending, n as i64 + 4);
        let coth = t.hyperbolic(Hyperbolic::Coth)?;
        let inner = (&(&(&t * &t) * &coth) - &t).scale(&int(3));
        Ok(inner.invert_variable().pow(&rat(-1, 3))?)
    })
}

/// `phi(t) = e^t sinh(t)/t - 1`, so that `f_{+1}(z) = 1/phi(1/z)`.
pub fn series_phi(order: usize) -> Result<GradedSeries> {
    fit("phi", Ascending, 1, order, |n| {
        let t = GradedSeries::var(Ascending, n as i64 + 3);
        let prod = &t.exp()? * &t.hyperbolic(Hyperbolic::Sinh)?;
        Ok(prod.shift(-1).add_constant(&-Rational::one()))
    })
}

/// `1/y`, where `y` is the inverse of `f_{+1}`: the reversion of `phi`
/// read in `z^{-1}`.
pub fn series_y_inverse(order: usize) -> Result<GradedSeries> {
    fit("y^-1", Descending, -1, order, |n| Ok(series_phi(n)?.revert()?.invert_variable()))
}

pub fn series_y(order: usize) -> Result<GradedSeries> {
    fit("y", Descending, 1, order, |n| Ok(series_y_inverse(n)?.reciprocal()?))
}

/// `f_{+1} = 1/(z e^{1/z} sinh(1/z) - 1)`.
pub fn series_fplus1(order: usize) -> Result<GradedSeries> {
    fit("f+1", Descending, 1, order, |n| Ok(series_phi(n)?.invert_variable().reciprocal()?))
}

/// `f_{+2}`, the compositional inverse of `h`.
pub fn series_fplus2(order: usize) -> Result<GradedSeries> {
    fit("f+2", Descending, 1, order, |n| Ok(series_h(n)?.revert()?))
}

/// `f_+ = f_{+1} o f_{+2}`.
pub fn series_fplus(order: usize) -> Result<GradedSeries> {
    fit("f+", Descending, 1, order, |n| Ok(series_fplus1(n)?.compose(&series_fplus2(n)?)?))
}

pub fn series_theta_of_f(order: usize) -> Result<GradedSeries> {
    fit("theta(f)", Descending, 1, order, |n| Ok(series_theta(n)?.compose(&series_f(n)?)?))
}

/// `K(1/z)`, with `K = sum b_{2i+1} z^{2i+1}`.
pub fn series_k_of_reciprocal(order: usize) -> Result<GradedSeries> {
    let b = coeffs_b((order + 1).max(2))?;
    let k = crate::lambert::series_k(&b);
    Ok(k.invert_variable().truncate(-(order as i64 + 2)))
}

/// `F = x + 1/2 sum_{n>=2} c_n x^n`.
pub fn series_big_f(order: usize) -> Result<GradedSeries> {
    let c = coeffs_c((order + 1).max(2))?;
    let terms = std::iter::once((1, int(1))).chain((2..=order + 1).map(|n| (n as i64, c.get(n) / int(2))));
    Ok(GradedSeries::from_terms(Ascending, terms, order as i64 + 2))
}

/// `H = (3 F^2 coth F - 3F)^{-1/3}`.
pub fn series_big_h(order: usize) -> Result<GradedSeries> {
    fit("H", Ascending, -1, order, |n| {
        let f = series_big_f(n)?;
        let coth = f.hyperbolic(Hyperbolic::Coth)?;
        let inner = (&(&(&f * &f) * &coth) - &f).scale(&int(3));
        Ok(inner.pow(&rat(-1, 3))?)
    })
}

/// `E = 1 + sqrt(x^2 + 4/(3 H^3))`.
pub fn series_big_e(order: usize) -> Result<GradedSeries> {
    fit("E", Ascending, 0, order, |n| {
        let h = series_big_h(n)?;
        let x = GradedSeries::var(Ascending, n as i64 + 4);
        let radicand = &(&x * &x) + &h.powi(-3)?.scale(&rat(4, 3));
        Ok(radicand.sqrt()?.add_constant(&int(1)))
    })
}

/// `a_m` with `exp(sum a_m z^{1-m} d/dz) z = f`.
pub fn coeffs_a(order: usize) -> Result<FlowCoeffs> {
    require("a", order, 1)?;
    Ok(flow_solve(&series_f(order)?, ExponentLaw::STANDARD, Sign::Plus)?)
}

/// `e_m` with `exp(sum e_m z^{1-m} d/dz) z = theta(f)`.
pub fn coeffs_e(order: usize) -> Result<FlowCoeffs> {
    require("e", order, 1)?;
    Ok(flow_solve(&series_theta_of_f(order)?, ExponentLaw::STANDARD, Sign::Plus)?)
}

/// `â_k` with `exp(sum â_k z^{1-k} d/dz) z = f_+`.
pub fn coeffs_ahat(order: usize) -> Result<FlowCoeffs> {
    require("ahat", order, 1)?;
    Ok(flow_solve(&series_fplus(order)?, ExponentLaw::STANDARD, Sign::Plus)?)
}

/// `l_m` with `exp(-sum l_m z^{1-2m} d/dz) z = theta`.
pub fn coeffs_l(order: usize) -> Result<FlowCoeffs> {
    require("l", order, 1)?;
    Ok(flow_solve(&series_theta(2 * order)?, ExponentLaw::EVEN, Sign::Minus)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn head(s: &GradedSeries, from: i64, count: usize) -> Vec<Rational> {
        s.exponents_from(from, count).into_iter().map(|e| s.coeff(e).unwrap()).collect()
    }

    #[test]
    fn f_head_and_exact_length() {
        let f = series_f(4).unwrap();
        assert_eq!(head(&f, 1, 5), [int(1), rat(2, 3), rat(-1, 12), rat(11, 270), rat(-329, 12960)]);
        assert_eq!(f.horizon(), -4);
    }

    #[test]
    fn f_defining_relation() {
        let f = series_f(12).unwrap();
        let g = f.powi(-2).unwrap();
        let w = GradedSeries::var(Descending, -20).add_constant(&int(1)).reciprocal().unwrap();
        let direct = &(-&w).add_constant(&int(1)).log().unwrap().scale(&int(-2)) - &w.scale(&int(2));
        assert!(crate::report::compare_series(&g, &direct, -2, 13).is_none());
    }

    #[test]
    fn theta_and_h_heads() {
        let th = series_theta(4).unwrap();
        assert_eq!(head(&th, 1, 5), [int(1), int(0), rat(-1, 180), int(0), rat(13, 453600)]);
        let h = series_h(4).unwrap();
        assert_eq!(head(&h, 1, 5), [int(1), int(0), rat(1, 45), int(0), rat(-16, 14175)]);
    }

    #[test]
    fn theta_cubed_inverse_is_b_sum() {
        let th = series_theta(10).unwrap();
        let b = coeffs_b(12).unwrap();
        let cube = th.powi(-3).unwrap();
        for k in 0..5 {
            let want = int(3) * b.get(2 * k + 1) / int(2 * k as i64 + 3);
            assert_eq!(cube.coeff(-(2 * k as i64 + 3)).unwrap(), want);
        }
    }

    #[test]
    fn y_and_fplus_heads() {
        let yi = series_y_inverse(4).unwrap();
        assert_eq!(head(&yi, -1, 5), [int(1), rat(-2, 3), rat(5, 9), rat(-68, 135), rat(193, 405)]);
        let fp = series_fplus(2).unwrap();
        assert_eq!(head(&fp, 1, 3), [int(1), rat(-2, 3), rat(4, 45)]);
        let tf = series_theta_of_f(4).unwrap();
        assert_eq!(head(&tf, 1, 5), [int(1), rat(2, 3), rat(-4, 45), rat(2, 45), rat(-401, 14175)]);
    }

    #[test]
    fn big_f_h_e_heads() {
        let f = series_big_f(3).unwrap();
        assert_eq!(head(&f, 1, 3), [int(1), rat(1, 3), rat(2, 9)]);
        let e = series_big_e(3).unwrap();
        assert_eq!(head(&e, 0, 3), [int(1), int(1), rat(2, 3)]);
        let h = series_big_h(3).unwrap();
        let lead = h.powi(-3).unwrap().scale(&rat(4, 3));
        assert_eq!(lead.lead_exponent(), Some(3));
        assert_eq!(lead.coeff(3).unwrap(), rat(4, 3));
    }

    #[test]
    fn flow_families_heads() {
        let a = coeffs_a(3).unwrap();
        assert_eq!(a.get(1), rat(2, 3));
        assert_eq!(a.get(2), rat(-1, 12));
        assert_eq!(a.values().len(), 3);
        let l = coeffs_l(3).unwrap();
        assert_eq!(l.get(1), rat(1, 180));
        assert_eq!(l.values().len(), 3);
    }

    #[test]
    fn order_guards() {
        assert!(matches!(coeffs_a(0), Err(Error::OrderTooSmall { .. })));
    }
}
