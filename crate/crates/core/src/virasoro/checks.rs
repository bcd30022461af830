use std::ops::RangeInclusive;

use num_traits::Zero;

use super::{exp_op_apply, make_L, make_alpha, LinearOp, OperatorError, QPoly};
use crate::arith::{int, rat, Rational};
use crate::flows::FlowCoeffs;
use crate::lambert::BranchCoeffs;
use crate::report::Mismatch;

/// Mismatch located at the weight of the first differing monomial.
fn poly_mismatch(lhs: &QPoly, rhs: &QPoly, context: impl FnOnce() -> String) -> Option<Mismatch> {
    lhs.first_difference(rhs).map(|(m, a, b)| {
        Mismatch::new(m.weight() as i64, &a, &b).with_detail(format!("{}, monomial {m}", context()))
    })
}

fn index_bound(corpus: &[QPoly], extra: i64) -> u32 {
    corpus.iter().map(QPoly::max_index).max().unwrap_or(0) + extra as u32 + 1
}

/// The central term `(m^3 - m)/12`.
pub fn virasoro_central(m: i64) -> Rational {
    rat(m * m * m - m, 12)
}

/// `[L_m, L_n] p = (m - n) L_{m+n} p + delta_{m+n,0} central(m) p` on every
/// corpus element.
pub fn check_virasoro_commutator(
    m: i64,
    n: i64,
    corpus: &[QPoly],
    central: &dyn Fn(i64) -> Rational,
) -> Option<Mismatch> {
    let bound = index_bound(corpus, m.abs() + n.abs() + (m + n).abs());
    let (lm, ln, lmn) = (make_L(m, bound), make_L(n, bound), make_L(m + n, bound));
    let c = if m + n == 0 { central(m) } else { Rational::zero() };
    corpus.iter().find_map(|p| {
        let lhs = &lm.apply(&ln.apply(p)) - &ln.apply(&lm.apply(p));
        let rhs = &lmn.apply(p).scale(&int(m - n)) + &p.scale(&c);
        poly_mismatch(&lhs, &rhs, || format!("[L_{m}, L_{n}] on {p}"))
    })
}

pub fn check_virasoro_commutators(
    range: RangeInclusive<i64>,
    corpus: &[QPoly],
    central: &dyn Fn(i64) -> Rational,
) -> Option<Mismatch> {
    range.clone().find_map(|m| range.clone().find_map(|n| check_virasoro_commutator(m, n, corpus, central)))
}

/// `[alpha_n / n, L_k] p = c alpha_{n+k} p`; requires `n != 0`, `n + k != 0`.
/// The stated bracket has `c = 1`.
pub fn check_heisenberg_commutator(n: i64, k: i64, corpus: &[QPoly], c: &Rational) -> Option<Mismatch> {
    assert!(n != 0 && n + k != 0, "bracket is only stated for n != 0, n + k != 0");
    let bound = index_bound(corpus, n.abs() + k.abs() + (n + k).abs());
    let a = make_alpha(n).scaled(&rat(1, n));
    let lk = make_L(k, bound);
    let ank = make_alpha(n + k).scaled(c);
    corpus.iter().find_map(|p| {
        let lhs = &a.apply(&lk.apply(p)) - &lk.apply(&a.apply(p));
        poly_mismatch(&lhs, &ank.apply(p), || format!("[alpha_{n}/{n}, L_{k}] on {p}"))
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeisenbergOutcome {
    pub mismatch: Option<Mismatch>,
    /// `(n, k)` pairs with `n + k = 0`, which are not checked.
    pub skipped: Vec<(i64, i64)>,
    pub checked: usize,
}

pub fn check_heisenberg_commutators(range: RangeInclusive<i64>, corpus: &[QPoly], c: &Rational) -> HeisenbergOutcome {
    let mut out = HeisenbergOutcome { mismatch: None, skipped: Vec::new(), checked: 0 };
    for n in range.clone().filter(|&n| n != 0) {
        for k in range.clone() {
            if n + k == 0 {
                out.skipped.push((n, k));
                continue;
            }
            out.checked += 1;
            if out.mismatch.is_none() {
                out.mismatch = check_heisenberg_commutator(n, k, corpus, c);
            }
        }
    }
    out
}

/// `L_m` sends weight-`w` homogeneous input to weight `w - m` or to zero.
/// The mismatch exponent is `m`; the sides are the expected and observed
/// weights. `build(m, index_bound)` supplies the operator, normally `make_L`.
pub fn check_grading(
    range: RangeInclusive<i64>,
    corpus: &[QPoly],
    build: &dyn Fn(i64, u32) -> LinearOp,
) -> Option<Mismatch> {
    let bound = index_bound(corpus, range.start().abs().max(range.end().abs()));
    for m in range {
        let op = build(m, bound);
        for p in corpus {
            let Some(Some(w)) = p.homogeneous_weight() else { continue };
            let image = op.apply(p);
            let ok = match image.homogeneous_weight() {
                Some(None) => true,
                Some(Some(v)) => v as i64 == w as i64 - m,
                None => false,
            };
            if !ok {
                let seen = match image.homogeneous_weight() {
                    Some(Some(v)) => v.to_string(),
                    _ => "mixed".to_string(),
                };
                return Some(Mismatch {
                    exponent: m,
                    lhs: (w as i64 - m).to_string(),
                    rhs: seen,
                    detail: Some(format!("L_{m} on {p}")),
                });
            }
        }
    }
    None
}

/// Checks
/// `exp(sum l_m (L_{2m} - (2m+3) d/dq_{2m+3})) p`
/// `= exp(sum l_m L_{2m}) exp(-sum b_{2k+1} d/dq_{2k+3}) p`
/// on a corpus of weight `<= weight`, with the sums cut at `2m <= weight`
/// and `2k + 3 <= weight`; every omitted term kills the corpus.
pub fn check_factorization(
    l: &FlowCoeffs,
    b: &BranchCoeffs,
    weight: u32,
    corpus: &[QPoly],
) -> Result<Option<Mismatch>, OperatorError> {
    let bound = index_bound(corpus, 0).max(weight + 3);
    let mut left = Vec::new();
    let mut virasoro = Vec::new();
    for m in (1..).take_while(|m| 2 * m <= weight) {
        let l2m = make_L(2 * m as i64, bound);
        let dilaton = LinearOp::derivative(2 * m + 3, -int(2 * m as i64 + 3));
        left.push((l.get(m as usize), l2m.plus(&dilaton)));
        virasoro.push((l.get(m as usize), l2m));
    }
    let shifts: Vec<_> = (1..)
        .take_while(|k| 2 * k + 3 <= weight)
        .map(|k| (-b.get(2 * k as usize + 1).clone(), LinearOp::derivative(2 * k + 3, int(1))))
        .collect();
    for p in corpus {
        let lhs = exp_op_apply(&left, p)?;
        let rhs = exp_op_apply(&virasoro, &exp_op_apply(&shifts, p)?)?;
        if let Some(m) = poly_mismatch(&lhs, &rhs, || format!("on {p}")) {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// The highest residual weight that a fixture truncated at `weight_bound`
/// determines for `L_{2m}`.
pub fn kw_checked_weight(m: u32, weight_bound: u32) -> Result<u32, OperatorError> {
    if m == 0 {
        return Err(OperatorError::ConstraintIndex);
    }
    weight_bound
        .checked_sub(2 * m + 3)
        .ok_or(OperatorError::InsufficientWeight { bound: weight_bound, m })
}

/// `e^{-F} (L_{2m} - (2m+3) d/dq_{2m+3}) e^F`, up to weight `max_weight`.
pub fn kw_residual(f: &QPoly, m: u32, max_weight: u32) -> QPoly {
    let two_m = 2 * m;
    let bound = f.max_index().max(two_m + 3);
    let mut r = make_L(two_m as i64, bound).apply(f);
    for a in 1..two_m {
        let b = two_m - a;
        let prod = &f.derivative(a) * &f.derivative(b);
        r = &r + &prod.scale(&rat((a * b) as i64, 2));
    }
    r = &r - &f.derivative(two_m + 3).scale(&int(two_m as i64 + 3));
    r.truncate_weight(max_weight)
}

/// The residual vanishes through the weight the fixture determines. The
/// mismatch exponent is the weight of the first nonzero residual term.
pub fn check_kw_constraints(f: &QPoly, m: u32, weight_bound: u32) -> Result<Option<Mismatch>, OperatorError> {
    let top = kw_checked_weight(m, weight_bound)?;
    let r = kw_residual(&f.truncate_weight(weight_bound), m, top);
    Ok(poly_mismatch(&r, &QPoly::zero(), || format!("residual of L_{} constraint", 2 * m)))
}
