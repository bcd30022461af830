//! Polynomials in `q_1, q_2, ...` and the operators `L_m`, `alpha_n` acting
//! on them.
//!
//! `q_k` has weight `k`. Every operator here is a finite sum of basic
//! operators, each of which shifts weight by a fixed amount, so application
//! is exact and `exp` of a weight-lowering operator is a finite sum.

mod checks;
pub mod corpus;
pub mod fixture;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{int, rat, Rational};

pub use checks::*;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperatorError {
    #[error("operator term {0} does not lower weight, so its exponential does not terminate")]
    NotWeightLowering(String),
    #[error("fixture weight bound {bound} leaves no residual weight to check for m = {m}")]
    InsufficientWeight { bound: u32, m: u32 },
    #[error("constraint index m must be >= 1")]
    ConstraintIndex,
}

/// A monomial as the sorted multiset of its variable indices; `[1, 1, 3]`
/// is `q_1^2 q_3`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    /// Panics on a zero index; variables are `q_1, q_2, ...`.
    pub fn new(mut indices: Vec<u32>) -> Self {
        assert!(indices.iter().all(|&i| i > 0), "q-indices start at 1");
        indices.sort_unstable();
        Self(indices)
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn max_index(&self) -> u32 {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn degree(&self, j: u32) -> usize {
        let lo = self.0.partition_point(|&i| i < j);
        let hi = self.0.partition_point(|&i| i <= j);
        hi - lo
    }

    fn times(&self, k: u32) -> Self {
        let mut v = self.0.clone();
        let at = v.partition_point(|&i| i <= k);
        v.insert(at, k);
        Self(v)
    }

    /// `d/dq_j` as `(multiplicity, quotient)`, or `None` if `q_j` is absent.
    fn lower(&self, j: u32) -> Option<(usize, Self)> {
        let lo = self.0.partition_point(|&i| i < j);
        let e = self.degree(j);
        if e == 0 {
            return None;
        }
        let mut v = self.0.clone();
        v.remove(lo);
        Some((e, Self(v)))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let k = self.0[i];
            let e = self.degree(k);
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "q{k}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
            i += e;
        }
        Ok(())
    }
}

/// A polynomial in the `q_k` with exact coefficients; zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl QPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_terms([(Monomial::one(), c)])
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn var(k: u32) -> Self {
        Self::from_terms([(Monomial::new(vec![k]), Rational::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn max_index(&self) -> u32 {
        self.terms.keys().map(Monomial::max_index).max().unwrap_or(0)
    }

    pub fn max_weight(&self) -> u32 {
        self.terms.keys().map(Monomial::weight).max().unwrap_or(0)
    }

    /// The common weight of all terms; `None` if mixed. The zero polynomial
    /// is homogeneous of every weight and reports `Some(None)`.
    pub fn homogeneous_weight(&self) -> Option<Option<u32>> {
        let mut weights = self.terms.keys().map(Monomial::weight);
        match weights.next() {
            None => Some(None),
            Some(w) => weights.all(|x| x == w).then_some(Some(w)),
        }
    }

    /// The part of weight exactly `w`.
    pub fn component(&self, w: u32) -> Self {
        Self::from_terms(self.terms.iter().filter(|(m, _)| m.weight() == w).map(|(m, c)| (m.clone(), c.clone())))
    }

    /// Drops every term of weight above `w`.
    pub fn truncate_weight(&self, w: u32) -> Self {
        Self::from_terms(self.terms.iter().filter(|(m, _)| m.weight() <= w).map(|(m, c)| (m.clone(), c.clone())))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, x)| (m.clone(), x * c)))
    }

    pub fn derivative(&self, j: u32) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if let Some((e, q)) = m.lower(j) {
                out.add_term(q, c * int(e as i64));
            }
        }
        out
    }

    /// The first monomial, in canonical order, where `self` and `other`
    /// differ, with both coefficients.
    pub fn first_difference(&self, other: &Self) -> Option<(Monomial, Rational, Rational)> {
        let diff = self - other;
        diff.terms.keys().next().map(|m| (m.clone(), self.coeff(m), other.coeff(m)))
    }
}

impl std::ops::Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl std::ops::Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        let mut out = QPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let mut v = a.0.clone();
                v.extend_from_slice(&b.0);
                v.sort_unstable();
                out.add_term(Monomial(v), x * y);
            }
        }
        out
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{m}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasicOp {
    /// `c q_k d/dq_j`
    Shift { c: Rational, raise: u32, lower: u32 },
    /// `c d^2/dq_a dq_b`
    SecondDerivative { c: Rational, a: u32, b: u32 },
    /// `c q_i q_j`
    Product { c: Rational, i: u32, j: u32 },
    /// `c q_k`
    Multiply { c: Rational, k: u32 },
    /// `c d/dq_j`
    Derivative { c: Rational, j: u32 },
    /// `c`
    Identity { c: Rational },
}

impl BasicOp {
    /// Weight added to a monomial by this term.
    pub fn weight_shift(&self) -> i64 {
        match self {
            BasicOp::Shift { raise, lower, .. } => *raise as i64 - *lower as i64,
            BasicOp::SecondDerivative { a, b, .. } => -(*a as i64) - *b as i64,
            BasicOp::Product { i, j, .. } => *i as i64 + *j as i64,
            BasicOp::Multiply { k, .. } => *k as i64,
            BasicOp::Derivative { j, .. } => -(*j as i64),
            BasicOp::Identity { .. } => 0,
        }
    }

    fn scaled(&self, s: &Rational) -> Self {
        let mut out = self.clone();
        match &mut out {
            BasicOp::Shift { c, .. }
            | BasicOp::SecondDerivative { c, .. }
            | BasicOp::Product { c, .. }
            | BasicOp::Multiply { c, .. }
            | BasicOp::Derivative { c, .. }
            | BasicOp::Identity { c } => *c *= s,
        }
        out
    }

    fn apply_to(&self, m: &Monomial, x: &Rational, out: &mut QPoly) {
        match self {
            BasicOp::Shift { c, raise, lower } => {
                if let Some((e, q)) = m.lower(*lower) {
                    out.add_term(q.times(*raise), c * x * int(e as i64));
                }
            }
            BasicOp::SecondDerivative { c, a, b } => {
                if let Some((e1, q1)) = m.lower(*a) {
                    if let Some((e2, q2)) = q1.lower(*b) {
                        out.add_term(q2, c * x * int((e1 * e2) as i64));
                    }
                }
            }
            BasicOp::Product { c, i, j } => out.add_term(m.times(*i).times(*j), c * x),
            BasicOp::Multiply { c, k } => out.add_term(m.times(*k), c * x),
            BasicOp::Derivative { c, j } => {
                if let Some((e, q)) = m.lower(*j) {
                    out.add_term(q, c * x * int(e as i64));
                }
            }
            BasicOp::Identity { c } => out.add_term(m.clone(), c * x),
        }
    }
}

impl fmt::Display for BasicOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasicOp::Shift { c, raise, lower } => write!(f, "({c}) q{raise} d/dq{lower}"),
            BasicOp::SecondDerivative { c, a, b } => write!(f, "({c}) d^2/dq{a}dq{b}"),
            BasicOp::Product { c, i, j } => write!(f, "({c}) q{i} q{j}"),
            BasicOp::Multiply { c, k } => write!(f, "({c}) q{k}"),
            BasicOp::Derivative { c, j } => write!(f, "({c}) d/dq{j}"),
            BasicOp::Identity { c } => write!(f, "({c})"),
        }
    }
}

/// A finite sum of basic operators.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinearOp {
    terms: Vec<BasicOp>,
}

impl LinearOp {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: Vec<BasicOp>) -> Self {
        Self { terms: terms.into_iter().filter(|t| !is_zero_term(t)).collect() }
    }

    pub fn terms(&self) -> &[BasicOp] {
        &self.terms
    }

    pub fn identity(c: Rational) -> Self {
        Self::from_terms(vec![BasicOp::Identity { c }])
    }

    pub fn derivative(j: u32, c: Rational) -> Self {
        Self::from_terms(vec![BasicOp::Derivative { c, j }])
    }

    pub fn scaled(&self, s: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|t| t.scaled(s)).collect())
    }

    pub fn plus(&self, other: &Self) -> Self {
        Self::from_terms(self.terms.iter().chain(&other.terms).cloned().collect())
    }

    pub fn apply(&self, p: &QPoly) -> QPoly {
        let mut out = QPoly::zero();
        for (m, x) in p.terms() {
            for t in &self.terms {
                t.apply_to(m, x, &mut out);
            }
        }
        out
    }
}

fn is_zero_term(t: &BasicOp) -> bool {
    match t {
        BasicOp::Shift { c, .. }
        | BasicOp::SecondDerivative { c, .. }
        | BasicOp::Product { c, .. }
        | BasicOp::Multiply { c, .. }
        | BasicOp::Derivative { c, .. }
        | BasicOp::Identity { c } => c.is_zero(),
    }
}

/// `L_m = sum (k+m) q_k d/dq_{k+m} + 1/2 sum_{a+b=m} ab d^2/dq_a dq_b
/// + 1/2 sum_{i+j=-m} q_i q_j`, all indices positive.
///
/// Shift terms are generated for lowered indices `k + m <= index_bound`,
/// so `apply` is exact on polynomials whose variables all have index at most
/// `index_bound`.
#[allow(non_snake_case)]
pub fn make_L(m: i64, index_bound: u32) -> LinearOp {
    let mut terms = Vec::new();
    let half = rat(1, 2);
    for j in 1..=index_bound as i64 {
        let k = j - m;
        if k > 0 {
            terms.push(BasicOp::Shift { c: int(j), raise: k as u32, lower: j as u32 });
        }
    }
    for a in 1..m {
        let b = m - a;
        terms.push(BasicOp::SecondDerivative { c: &half * int(a * b), a: a as u32, b: b as u32 });
    }
    for i in 1..-m {
        let j = -m - i;
        terms.push(BasicOp::Product { c: half.clone(), i: i as u32, j: j as u32 });
    }
    LinearOp::from_terms(terms)
}

/// `alpha_n`: multiplication by `q_{-n}` for `n < 0`, `n d/dq_n` for
/// `n > 0`, and zero for `n = 0`.
pub fn make_alpha(n: i64) -> LinearOp {
    match n {
        0 => LinearOp::zero(),
        n if n < 0 => LinearOp::from_terms(vec![BasicOp::Multiply { c: Rational::one(), k: (-n) as u32 }]),
        n => LinearOp::derivative(n as u32, int(n)),
    }
}

/// `exp(sum c_i A_i) p`, provided every term of every `A_i` lowers weight.
pub fn exp_op_apply(ops: &[(Rational, LinearOp)], p: &QPoly) -> Result<QPoly, OperatorError> {
    let mut sum = LinearOp::zero();
    for (c, op) in ops {
        for t in op.terms() {
            if t.weight_shift() >= 0 {
                return Err(OperatorError::NotWeightLowering(t.to_string()));
            }
        }
        sum = sum.plus(&op.scaled(c));
    }
    let mut result = p.clone();
    let mut term = p.clone();
    let mut n = 1i64;
    while !term.is_zero() {
        term = sum.apply(&term).scale(&Rational::new(BigInt::one(), BigInt::from(n)));
        result = &result + &term;
        n += 1;
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(indices: &[u32]) -> QPoly {
        QPoly::from_terms([(Monomial::new(indices.to_vec()), int(1))])
    }

    #[test]
    fn l_examples() {
        assert_eq!(make_L(0, 5).apply(&q(&[3])), q(&[3]).scale(&int(3)));
        assert_eq!(make_L(1, 5).apply(&q(&[2])), q(&[1]).scale(&int(2)));
        assert_eq!(make_L(-2, 5).apply(&QPoly::one()), q(&[1, 1]).scale(&rat(1, 2)));
        assert_eq!(make_L(2, 5).apply(&q(&[1, 1])), QPoly::one());
    }

    #[test]
    fn l0_is_weight_operator() {
        let p = &q(&[1, 2, 2]) + &q(&[5]).scale(&rat(2, 7));
        let l0 = make_L(0, 6).apply(&p);
        assert_eq!(l0, p.scale(&int(5)));
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(make_alpha(3).apply(&q(&[3])), QPoly::constant(int(3)));
        assert_eq!(make_alpha(-2).apply(&QPoly::one()), q(&[2]));
        assert!(make_alpha(1).apply(&q(&[2])).is_zero());
        assert!(make_alpha(0).apply(&q(&[1])).is_zero());
    }

    #[test]
    fn derivative_counts_multiplicity() {
        assert_eq!(q(&[1, 1, 1]).derivative(1), q(&[1, 1]).scale(&int(3)));
        assert!(q(&[2]).derivative(1).is_zero());
    }

    #[test]
    fn exp_examples() {
        let shifts = [(rat(-1, 36), LinearOp::derivative(5, int(1)))];
        assert_eq!(exp_op_apply(&shifts, &q(&[5])).unwrap(), &q(&[5]) - &QPoly::constant(rat(1, 36)));
        assert_eq!(exp_op_apply(&[], &q(&[2, 3])).unwrap(), q(&[2, 3]));
        assert_eq!(exp_op_apply(&[(int(1), make_L(2, 4))], &q(&[1, 1])).unwrap(), &q(&[1, 1]) + &QPoly::one());
        let err = exp_op_apply(&[(int(1), make_L(-1, 4))], &QPoly::one());
        assert!(matches!(err, Err(OperatorError::NotWeightLowering(_))));
    }

    #[test]
    fn exp_group_law_on_commuting_shifts() {
        let a = (rat(2, 3), LinearOp::derivative(5, int(1)));
        let b = (rat(-1, 7), LinearOp::derivative(2, int(1)));
        let p = &(&q(&[5, 5, 2]) + &q(&[2, 2, 2])) + &q(&[5, 7]);
        let sequential = exp_op_apply(&[a.clone()], &exp_op_apply(&[b.clone()], &p).unwrap()).unwrap();
        let joint = exp_op_apply(&[a, b], &p).unwrap();
        assert_eq!(sequential, joint);
    }

    #[test]
    fn monomial_display() {
        assert_eq!(Monomial::new(vec![3, 1, 1]).to_string(), "q1^2*q3");
        assert_eq!(Monomial::one().to_string(), "1");
    }
}
