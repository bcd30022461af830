//! Named verifiers, their configuration and their documented faults.

use std::str::FromStr;

use thiserror::Error;

use crate::arith::{bernoulli, int, rat, Rational};
use crate::error::{require, Error, Result};
use crate::identities::{self as id, MARGIN};
use crate::lambert;
use crate::named;
use crate::report::{timed, Mismatch, VerificationReport};
use crate::series::{Direction, GradedSeries};
use crate::virasoro::{self as vir, corpus, fixture::Fixture, make_L, LinearOp, Monomial, QPoly};

pub const IDENTITIES: &[&str] = &[
    "prop-hy",
    "lemma-yk",
    "iden",
    "fplus-functional",
    "k-functional",
    "k-integral",
    "karamata",
    "nz-bernoulli",
    "flow-laws",
    "virasoro-commutators",
    "heisenberg-commutators",
    "grading",
    "factorization",
    "kw-constraints",
    "w0-reversion",
    "v-ode",
];

/// Smallest accepted `order` for each series identity; the operator
/// identities take their size from the corpus weight instead.
pub fn min_order(identity: &str) -> Option<usize> {
    Some(match identity {
        "prop-hy" | "lemma-yk" | "iden" | "fplus-functional" | "k-integral" | "flow-laws" => 3,
        "k-functional" => 4,
        "nz-bernoulli" => 5,
        "karamata" | "v-ode" => 2,
        "w0-reversion" => 1,
        "virasoro-commutators" | "heisenberg-commutators" | "grading" | "factorization" | "kw-constraints" => 0,
        _ => return None,
    })
}

/// The single-coefficient fault `--perturb` injects into each identity, and
/// where the first mismatch lands at the default configuration.
pub struct Perturbation {
    pub identity: &'static str,
    pub fault: &'static str,
    pub first_mismatch: i64,
}

pub const PERTURBATIONS: &[Perturbation] = &[
    Perturbation { identity: "prop-hy", fault: "h: z^-1 coefficient 1/45 -> 1/44", first_mismatch: -1 },
    Perturbation { identity: "lemma-yk", fault: "b_3: 1/36 -> 1/35", first_mismatch: -3 },
    Perturbation { identity: "iden", fault: "e_3 -> e_3 + 1", first_mismatch: -2 },
    Perturbation { identity: "fplus-functional", fault: "H: x^1 coefficient + 1", first_mismatch: 4 },
    Perturbation { identity: "k-functional", fault: "b_3: 1/36 -> 1/35", first_mismatch: 4 },
    Perturbation { identity: "k-integral", fault: "b_3: 1/36 -> 1/35", first_mismatch: 5 },
    Perturbation { identity: "karamata", fault: "c_3: 4/9 -> 13/9", first_mismatch: 3 },
    Perturbation { identity: "nz-bernoulli", fault: "B_4: -1/30 -> 29/30", first_mismatch: -5 },
    Perturbation { identity: "flow-laws", fault: "l_1: 1/180 -> 181/180", first_mismatch: -1 },
    Perturbation { identity: "virasoro-commutators", fault: "central term (m^3-m)/12 -> (m^3-m)/12 + 1", first_mismatch: 0 },
    Perturbation { identity: "heisenberg-commutators", fault: "bracket coefficient of alpha_{n+k}: 1 -> 2", first_mismatch: 10 },
    Perturbation { identity: "grading", fault: "L_m gains a constant term 1", first_mismatch: -5 },
    Perturbation { identity: "factorization", fault: "b_3: 1/36 -> 1/35", first_mismatch: 0 },
    Perturbation { identity: "kw-constraints", fault: "fixture q_3: 1/24 -> 1/23", first_mismatch: 1 },
    Perturbation { identity: "w0-reversion", fault: "z^3 coefficient 3/2 -> 5/2", first_mismatch: 3 },
    Perturbation { identity: "v-ode", fault: "b_4: -1/270 -> 269/270", first_mismatch: 4 },
];

pub fn perturbation(identity: &str) -> Option<&'static Perturbation> {
    PERTURBATIONS.iter().find(|p| p.identity == identity)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RangeError {
    #[error("expected A..B, got {0:?}")]
    Shape(String),
    #[error("bad range endpoint {0:?}")]
    Endpoint(String),
    #[error("empty range {0}..{1}")]
    Empty(i64, i64),
}

/// An inclusive index range written `A..B`, as in `-5..5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexRange {
    pub lo: i64,
    pub hi: i64,
}

impl IndexRange {
    pub fn to_range(self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }
}

impl Default for IndexRange {
    fn default() -> Self {
        Self { lo: -5, hi: 5 }
    }
}

impl FromStr for IndexRange {
    type Err = RangeError;

    fn from_str(s: &str) -> std::result::Result<Self, RangeError> {
        let (a, b) = s.trim().split_once("..").ok_or_else(|| RangeError::Shape(s.to_string()))?;
        let parse = |x: &str| x.trim().parse::<i64>().map_err(|_| RangeError::Endpoint(x.to_string()));
        let (lo, hi) = (parse(a)?, parse(b)?);
        if lo > hi {
            return Err(RangeError::Empty(lo, hi));
        }
        Ok(Self { lo, hi })
    }
}

#[derive(Debug, Clone)]
pub struct Config {
    pub order: usize,
    pub seed: u64,
    /// Exhaustive corpus weight for the operator identities.
    pub weight: u32,
    pub range: IndexRange,
    /// `F_K` table for kw-constraints; the shipped fixture when `None`.
    pub fixture: Option<Fixture>,
    pub perturb: bool,
}

pub const DEFAULT_ORDER: usize = 40;

impl Default for Config {
    fn default() -> Self {
        Self { order: DEFAULT_ORDER, seed: 1, weight: 9, range: IndexRange::default(), fixture: None, perturb: false }
    }
}

/// Rejects unknown names and orders below an identity's minimum.
pub fn validate(identity: &str, config: &Config) -> Result<()> {
    let min = min_order(identity).ok_or_else(|| Error::UnknownIdentity(identity.to_string()))?;
    let name: &'static str = IDENTITIES.iter().find(|n| **n == identity).expect("listed");
    require(name, config.order, min)
}

pub fn run(identity: &str, config: &Config) -> Result<Vec<VerificationReport>> {
    validate(identity, config)?;
    let mut extra = Vec::new();
    let mut report_order = config.order as i64;
    let mut failure = None;
    let mut report = timed(|| {
        let outcome = dispatch(identity, config, &mut extra, &mut report_order);
        match outcome {
            Ok(m) => VerificationReport::from_outcome(identity, report_order, m),
            Err(e) => {
                failure = Some(e);
                VerificationReport::skipped(identity, report_order)
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    report.order = report_order;
    let mut out = vec![report];
    out.extend(extra);
    Ok(out)
}

/// Runs several identities concurrently; reports come back in input order.
pub fn run_many(identities: &[&str], config: &Config) -> Result<Vec<VerificationReport>> {
    for name in identities {
        validate(name, config)?;
    }
    let results: Vec<Result<Vec<VerificationReport>>> = std::thread::scope(|s| {
        let handles: Vec<_> = identities.iter().map(|name| s.spawn(move || run(name, config))).collect();
        handles.into_iter().map(|h| h.join().expect("verifier thread panicked")).collect()
    });
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

pub fn run_all(config: &Config) -> Result<Vec<VerificationReport>> {
    run_many(IDENTITIES, config)
}

fn bump(x: &Rational) -> Rational {
    x + int(1)
}

fn dispatch(
    identity: &str,
    cfg: &Config,
    extra: &mut Vec<VerificationReport>,
    report_order: &mut i64,
) -> Result<Option<Mismatch>> {
    let order = cfg.order;
    let n = order + MARGIN;
    let p = cfg.perturb;
    let b_with = |len: usize, k: usize, v: Rational| -> Result<lambert::BranchCoeffs> {
        let b = lambert::coeffs_b(len)?;
        Ok(if p { b.with_value(k, v) } else { b })
    };
    Ok(match identity {
        "prop-hy" => {
            let mut h = named::series_h(n)?;
            if p {
                h = &h + &GradedSeries::monomial(Direction::Descending, -1, rat(1, 44) - rat(1, 45), h.horizon());
            }
            id::check_prop_hy(&h, &named::series_y(n)?, &named::series_theta(n)?, &named::series_f(n)?, order)?
        }
        "lemma-yk" => {
            let k = lambert::series_k(&b_with(n + 1, 3, rat(1, 35))?);
            id::check_lemma_yk(&named::series_y_inverse(n)?, &k, &named::series_f(n)?, order)?
        }
        "iden" => {
            let mut e = named::coeffs_e(n)?;
            if p {
                e = e.with_value(3, bump(&e.get(3)));
            }
            id::check_iden(&named::coeffs_ahat(n)?, &e, &named::series_fplus(n)?, order)?
        }
        "fplus-functional" => {
            let m = id::check_fplus_functional(&named::series_fplus(n)?, &named::series_fplus2(n)?, order)?;
            if m.is_some() {
                return Ok(m);
            }
            let mut h = named::series_big_h(n)?;
            if p {
                h = &h + &GradedSeries::monomial(Direction::Ascending, 1, int(1), h.horizon());
            }
            id::check_big_e(&h, &lambert::coeffs_c(n + 2)?, order)?
        }
        "k-functional" => {
            let k = lambert::series_k(&b_with(order + 1, 3, rat(1, 35))?);
            lambert::check_k_functional(&k, order)?
        }
        "k-integral" => {
            let k = lambert::series_k(&b_with(order + 3, 3, rat(1, 35))?);
            lambert::check_k_integral(&k, order)?
        }
        "karamata" => {
            let c = lambert::coeffs_c(order)?;
            let c = if p { c.with_value(3, bump(c.get(3))) } else { c };
            lambert::check_karamata(&c)?
        }
        "v-ode" => {
            let b = lambert::coeffs_b(order)?;
            let b = if p { b.with_value(4, bump(b.get(4))) } else { b };
            lambert::check_v_ode(&b)?
        }
        "w0-reversion" => {
            let mut w = lambert::w0_taylor(order);
            if p {
                w = &w + &GradedSeries::monomial(Direction::Ascending, 3, int(1), w.horizon());
            }
            lambert::check_w0(&w, order)?
        }
        "nz-bernoulli" => {
            let bern = |k: usize| if p && k == 4 { bump(&bernoulli(4)) } else { bernoulli(k) };
            id::check_nz_bernoulli(&bern, order)?
        }
        "flow-laws" => {
            let mut inputs = id::FlowLawInputs::standard(order, cfg.seed)?;
            if p {
                inputs.l = inputs.l.with_value(1, bump(&inputs.l.get(1)));
            }
            id::check_flow_laws(&inputs, order)?
        }
        "virasoro-commutators" => {
            *report_order = cfg.weight as i64;
            let corpus = corpus::standard(cfg.weight, cfg.seed);
            let central = |m: i64| if p { bump(&vir::virasoro_central(m)) } else { vir::virasoro_central(m) };
            vir::check_virasoro_commutators(cfg.range.to_range(), &corpus, &central)
        }
        "heisenberg-commutators" => {
            *report_order = cfg.weight as i64;
            let corpus = corpus::standard(cfg.weight, cfg.seed);
            let c = if p { int(2) } else { int(1) };
            let out = vir::check_heisenberg_commutators(cfg.range.to_range(), &corpus, &c);
            if !out.skipped.is_empty() {
                extra.push(VerificationReport::skipped("heisenberg-commutators[n+k=0]", cfg.weight as i64));
            }
            out.mismatch
        }
        "grading" => {
            *report_order = cfg.weight as i64;
            let corpus = corpus::standard(cfg.weight, cfg.seed);
            let build = |m: i64, bound: u32| {
                let l = make_L(m, bound);
                if p {
                    l.plus(&LinearOp::identity(int(1)))
                } else {
                    l
                }
            };
            vir::check_grading(cfg.range.to_range(), &corpus, &build)
        }
        "factorization" => {
            *report_order = cfg.weight as i64;
            let w = cfg.weight;
            let mut corpus = corpus::exhaustive(w);
            corpus.extend(corpus::random(cfg.seed, 24, w));
            let l = named::coeffs_l(w as usize / 2 + 1)?;
            let b = b_with(w as usize + 1, 3, rat(1, 35))?;
            vir::check_factorization(&l, &b, w, &corpus)?
        }
        "kw-constraints" => {
            let fx = cfg.fixture.clone().unwrap_or_else(vir::fixture::shipped);
            *report_order = fx.weight_bound as i64;
            let mut f = fx.poly.clone();
            if p {
                let q3 = QPoly::from_terms([(Monomial::new(vec![3]), rat(1, 23) - f.coeff(&Monomial::new(vec![3])))]);
                f = &f + &q3;
            }
            vir::kw_checked_weight(1, fx.weight_bound)?;
            let mut first = None;
            for m in (1..).take_while(|m| vir::kw_checked_weight(*m, fx.weight_bound).is_ok()) {
                if let Some(mm) = vir::check_kw_constraints(&f, m, fx.weight_bound)? {
                    first = Some(mm);
                    break;
                }
            }
            first
        }
        other => return Err(Error::UnknownIdentity(other.to_string())),
    })
}
