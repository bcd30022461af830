//! Series-level verifiers for the chain `h(y) = theta(f)`, the `f_+`
//! functional equation, the flow laws and the Bernoulli form of `n(z)`.
//!
//! Each identity has a `check_*` form taking its ingredients explicitly, so
//! that a single perturbed coefficient can be fed through, and a `verify_*`
//! form that builds the standard ingredients. Both compare `order + 1`
//! coefficients from the lead and return the first mismatch, if any.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{bernoulli, factorial, int, rat, Rational};
use crate::error::{require, Result};
use crate::flows::{flow_apply, ExponentLaw, FlowCoeffs, Sign};
use crate::lambert::{coeffs_b, coeffs_c, series_k, series_mu, BranchCoeffs};
use crate::named::*;
use crate::report::{compare_series, Mismatch};
use crate::series::{Direction, GradedSeries, Hyperbolic};

use Direction::{Ascending, Descending};

/// Extra orders carried by the ingredients of every `verify_*`.
pub const MARGIN: usize = 3;

fn z(order: usize) -> GradedSeries {
    GradedSeries::var(Descending, -(order as i64 + MARGIN as i64 + 2))
}

fn tag(m: Option<Mismatch>, detail: &str) -> Option<Mismatch> {
    m.map(|m| if m.detail.is_some() { m } else { m.with_detail(detail) })
}

/// `h o y` against `theta o f`.
pub fn check_prop_hy(
    h: &GradedSeries,
    y: &GradedSeries,
    theta: &GradedSeries,
    f: &GradedSeries,
    order: usize,
) -> Result<Option<Mismatch>> {
    let lhs = h.compose(y)?;
    let rhs = theta.compose(f)?;
    Ok(tag(compare_series(&lhs, &rhs, 1, order + 1), "h(y) = theta(f)"))
}

pub fn verify_prop_hy(order: usize) -> Result<Option<Mismatch>> {
    require("prop-hy", order, 3)?;
    let n = order + MARGIN;
    check_prop_hy(&series_h(n)?, &series_y(n)?, &series_theta(n)?, &series_f(n)?, order)
}

/// `1/y` against `K(1/f)`.
pub fn check_lemma_yk(
    y_inverse: &GradedSeries,
    k: &GradedSeries,
    f: &GradedSeries,
    order: usize,
) -> Result<Option<Mismatch>> {
    let rhs = k.compose(&f.reciprocal()?)?;
    Ok(tag(compare_series(y_inverse, &rhs, -1, order + 1), "1/y = K(1/f)"))
}

pub fn verify_lemma_yk(order: usize) -> Result<Option<Mismatch>> {
    require("lemma-yk", order, 3)?;
    let n = order + MARGIN;
    check_lemma_yk(&series_y_inverse(n)?, &series_k(&coeffs_b(n + 1)?), &series_f(n)?, order)
}

/// Reads `f^{-1}` in the lemma as the compositional inverse instead. `K`
/// needs an argument vanishing at infinity, and the inverse of `f` grows
/// like `z`, so this reading has no series at all where `1/y` starts at
/// `z^{-1}`. Always returns the resulting mismatch.
pub fn lemma_yk_compositional_reading(order: usize) -> Result<Mismatch> {
    let n = order + MARGIN;
    let y_inverse = series_y_inverse(n)?;
    let inverse_f = series_f(n)?.revert()?;
    let lead = y_inverse.lead_coeff().cloned().unwrap_or_else(Rational::zero);
    let detail = match series_k(&coeffs_b(n + 1)?).compose(&inverse_f) {
        Err(e) => format!("K(f^<-1>) undefined: {e}"),
        Ok(s) => format!("K(f^<-1>) has lead exponent {:?}", s.lead_exponent()),
    };
    Ok(Mismatch {
        exponent: y_inverse.lead_exponent().unwrap_or(-1),
        lhs: lead.to_string(),
        rhs: format!("lead z^{}", inverse_f.lead_exponent().unwrap_or(0)),
        detail: Some(detail),
    })
}

/// `exp(-sum â_k z^{1-k} d/dz) z` against `exp(sum e_m z^{1-m} d/dz) z`,
/// then both against the reversion of `f_+`.
pub fn check_iden(ahat: &FlowCoeffs, e: &FlowCoeffs, fplus: &GradedSeries, order: usize) -> Result<Option<Mismatch>> {
    let id = z(order);
    let lhs = flow_apply(&ahat.with_sign(ahat.sign().flip()), &id)?;
    let rhs = flow_apply(e, &id)?;
    if let Some(m) = compare_series(&lhs, &rhs, 1, order + 1) {
        return Ok(Some(m.with_detail("exp(-ahat) z = exp(e) z")));
    }
    Ok(tag(compare_series(&lhs, &fplus.revert()?, 1, order + 1), "exp(-ahat) z = f_+^<-1>"))
}

pub fn verify_iden(order: usize) -> Result<Option<Mismatch>> {
    require("iden", order, 3)?;
    let n = order + MARGIN;
    check_iden(&coeffs_ahat(n)?, &coeffs_e(n)?, &series_fplus(n)?, order)
}

/// `(1 - x) e^x` against `E e^{1-E}` with `x = 1/(1+f_+)` and
/// `E = 1 + sqrt(x^2 + 4/(3 z^3))`, then the residual of `f_{+2}` in
/// `z^{-3}/3 = w^2 coth(w) - w` with `w = 1/f_{+2}`.
pub fn check_fplus_functional(fplus: &GradedSeries, fplus2: &GradedSeries, order: usize) -> Result<Option<Mismatch>> {
    let x = fplus.add_constant(&int(1)).reciprocal()?;
    let lhs = &(-&x).add_constant(&int(1)) * &x.exp()?;
    let z_cubed = GradedSeries::monomial(Descending, -3, rat(4, 3), x.horizon() - 2);
    let s = (&(&x * &x) + &z_cubed).sqrt()?;
    let rhs = &s.add_constant(&int(1)) * &(-&s).exp()?;
    if let Some(m) = compare_series(&lhs, &rhs, 0, order + 1) {
        return Ok(Some(m.with_detail("(1-x) e^x = E e^(1-E), x = 1/(1+f_+)")));
    }

    let w = fplus2.reciprocal()?;
    let coth = GradedSeries::var(Ascending, order as i64 + 8).hyperbolic(Hyperbolic::Coth)?.compose(&w)?;
    let residual = &(&(&w * &w) * &coth) - &w;
    let third = GradedSeries::monomial(Descending, -3, rat(1, 3), residual.horizon());
    Ok(tag(compare_series(&residual, &third, -3, order + 1), "f_+2 residual"))
}

/// `E = 1 + sqrt(x^2 + 4/(3 H^3))` against `1 + mu`, then
/// `(1 - x) e^x = E e^{1-E}`.
pub fn check_big_e(h: &GradedSeries, c: &BranchCoeffs, order: usize) -> Result<Option<Mismatch>> {
    let x = GradedSeries::var(Ascending, h.horizon() + 4);
    let s = (&(&x * &x) + &h.powi(-3)?.scale(&rat(4, 3))).sqrt()?;
    let e = s.add_constant(&int(1));
    let one_plus_mu = series_mu(c).add_constant(&int(1));
    if let Some(m) = compare_series(&e, &one_plus_mu, 0, order + 1) {
        return Ok(Some(m.with_detail("E = 1 + mu")));
    }
    let lhs = &(-&x).add_constant(&int(1)) * &x.exp()?;
    let rhs = &e * &(-&s).exp()?;
    Ok(tag(compare_series(&lhs, &rhs, 0, order + 1), "(1-x) e^x = E e^(1-E)"))
}

pub fn verify_fplus_functional(order: usize) -> Result<Option<Mismatch>> {
    require("fplus-functional", order, 3)?;
    let n = order + MARGIN;
    if let Some(m) = check_fplus_functional(&series_fplus(n)?, &series_fplus2(n)?, order)? {
        return Ok(Some(m));
    }
    check_big_e(&series_big_h(n)?, &coeffs_c(n + 2)?, order)
}

/// Everything the flow-law check consumes.
#[derive(Debug, Clone)]
pub struct FlowLawInputs {
    pub a: FlowCoeffs,
    pub l: FlowCoeffs,
    pub theta: GradedSeries,
    pub f: GradedSeries,
    pub theta_of_f: GradedSeries,
    pub k_of_reciprocal: GradedSeries,
    /// Families for the inverse law.
    pub samples: Vec<FlowCoeffs>,
    /// Values of `a` for the closed form `exp(a z^{-1} d/dz) z = sqrt(z^2 + 2a)`.
    pub closed_form: Vec<Rational>,
}

impl FlowLawInputs {
    pub fn standard(order: usize, seed: u64) -> Result<Self> {
        let n = order + MARGIN;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut small = move || rat(rng.gen_range(-9..=9), rng.gen_range(1..=9));
        let mut samples = vec![coeffs_ahat(n)?];
        for len in [1, 2, 3, n] {
            samples.push(FlowCoeffs::finite((0..len).map(|_| small()).collect(), ExponentLaw::STANDARD, Sign::Plus));
        }
        let closed_form = vec![int(1), rat(-1, 2), rat(5, 3), small(), small()];
        Ok(Self {
            a: coeffs_a(n)?,
            l: coeffs_l(n)?,
            theta: series_theta(n)?,
            f: series_f(n)?,
            theta_of_f: series_theta_of_f(n)?,
            k_of_reciprocal: series_k_of_reciprocal(n)?,
            samples,
            closed_form,
        })
    }
}

/// Composition law, automorphism law, inverse law and the closed-form flow.
pub fn check_flow_laws(inputs: &FlowLawInputs, order: usize) -> Result<Option<Mismatch>> {
    let id = z(order);
    let count = order + 1;

    let theta = flow_apply(&inputs.l, &id)?;
    let composed = flow_apply(&inputs.a, &theta)?;
    if let Some(m) = compare_series(&composed, &inputs.theta_of_f, 1, count) {
        return Ok(Some(m.with_detail("exp(a) exp(-l) z = theta(f)")));
    }
    if let Some(m) = compare_series(&theta, &inputs.theta, 1, count) {
        return Ok(Some(m.with_detail("exp(-l) z = theta")));
    }

    let f = flow_apply(&inputs.a, &id)?;
    if let Some(m) = compare_series(&f, &inputs.f, 1, count) {
        return Ok(Some(m.with_detail("exp(a) z = f")));
    }
    for (name, g) in [("theta", &inputs.theta), ("f", &inputs.f), ("K(1/z)", &inputs.k_of_reciprocal)] {
        let lhs = flow_apply(&inputs.a, g)?;
        let rhs = g.compose(&f)?;
        let from = g.lead_exponent().unwrap_or(1);
        if let Some(m) = compare_series(&lhs, &rhs, from, count) {
            return Ok(Some(m.with_detail(format!("exp(a) {name} = {name}(exp(a) z)"))));
        }
    }

    for (i, c) in inputs.samples.iter().enumerate() {
        let forward = flow_apply(c, &id)?;
        let backward = flow_apply(&c.with_sign(c.sign().flip()), &id)?;
        if let Some(m) = compare_series(&backward, &forward.revert()?, 1, count) {
            return Ok(Some(m.with_detail(format!("inverse law, sample {i}"))));
        }
    }

    for a in &inputs.closed_form {
        for sign in [Sign::Plus, Sign::Minus] {
            let c = FlowCoeffs::finite(vec![Rational::zero(), a.clone()], ExponentLaw::STANDARD, sign);
            let lhs = flow_apply(&c, &id)?;
            let shift = match sign {
                Sign::Plus => a * int(2),
                Sign::Minus => a * int(-2),
            };
            let zz = &id * &id;
            let rhs = zz.add_constant(&shift).sqrt()?;
            if let Some(m) = compare_series(&lhs, &rhs, 1, count) {
                return Ok(Some(m.with_detail(format!("closed form sqrt(z^2 + 2a), a = {a}, {sign:?}"))));
            }
        }
    }
    Ok(None)
}

pub fn verify_flow_laws(order: usize, seed: u64) -> Result<Option<Mismatch>> {
    require("flow-laws", order, 3)?;
    check_flow_laws(&FlowLawInputs::standard(order, seed)?, order)
}

/// `sum_{k>=2} 2^{2k} B_{2k}/(2k)! z^{-2k-1}` against
/// `z^{-2} coth(z^{-1}) - z^{-1} - z^{-3}/3`, from `z^{-5}`.
pub fn check_nz_bernoulli(bernoulli: &dyn Fn(usize) -> Rational, order: usize) -> Result<Option<Mismatch>> {
    let horizon = -(order as i64 + 6);
    let terms = (2..)
        .take_while(|k| 2 * k + 1 < order + 6)
        .map(|k| {
            let c = Rational::from_integer(BigInt::from(4).pow(k as u32)) * bernoulli(2 * k)
                / Rational::from_integer(factorial(2 * k as u64));
            (-(2 * k as i64) - 1, c)
        });
    let lhs = GradedSeries::from_terms(Descending, terms, horizon);

    let t = GradedSeries::var(Ascending, order as i64 + 8);
    let coth = t.hyperbolic(Hyperbolic::Coth)?;
    let closed = &(&(&t * &t) * &coth) - &(&t + &t.powi(3)?.scale(&rat(1, 3)));
    let rhs = closed.invert_variable();
    Ok(tag(compare_series(&lhs, &rhs, -5, order + 1), "n(z) Bernoulli sum"))
}

pub fn verify_nz_bernoulli(order: usize) -> Result<Option<Mismatch>> {
    require("nz-bernoulli", order, 5)?;
    check_nz_bernoulli(&bernoulli, order)
}
