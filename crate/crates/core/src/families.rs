//! Coefficient tables for the `coeffs` subcommand.

use crate::arith::{bernoulli, Rational};
use crate::error::{require, Error, Result};
use crate::flows::FlowCoeffs;
use crate::lambert::{self, BranchCoeffs};
use crate::named;
use crate::series::{Direction, GradedSeries};

pub const FAMILIES: &[&str] = &[
    "b", "c", "a", "e", "ahat", "l", "theta", "f", "h", "y", "fplus", "F", "H", "E", "w0", "bernoulli", "stirling",
];

/// `order` entries of `family` as `(index, value)`. For series the index is
/// the exponent, starting at the lead and counting `order + 1` terms; for
/// coefficient sequences it is the sequence index.
pub fn family_coeffs(family: &str, order: usize) -> Result<Vec<(i64, Rational)>> {
    require("coeffs", order, 1)?;
    let branch = |b: BranchCoeffs| b.values().iter().take(order).cloned().zip(1..).map(|(v, i)| (i, v)).collect();
    let flow = |f: FlowCoeffs| f.values().iter().cloned().zip(1..).map(|(v, i)| (i, v)).collect();
    Ok(match family {
        "b" => branch(lambert::coeffs_b(order.max(2))?),
        "c" => branch(lambert::coeffs_c(order.max(2))?),
        "a" => flow(named::coeffs_a(order)?),
        "e" => flow(named::coeffs_e(order)?),
        "ahat" => flow(named::coeffs_ahat(order)?),
        "l" => flow(named::coeffs_l(order)?),
        "theta" => series(&named::series_theta(order)?, order),
        "f" => series(&named::series_f(order)?, order),
        "h" => series(&named::series_h(order)?, order),
        "y" => series(&named::series_y(order)?, order),
        "fplus" => series(&named::series_fplus(order)?, order),
        "F" => series(&named::series_big_f(order)?, order),
        "H" => series(&named::series_big_h(order)?, order),
        "E" => series(&named::series_big_e(order)?, order),
        "w0" => lambert::w0_taylor(order).terms().map(|(e, c)| (e, c.clone())).collect(),
        "bernoulli" => (0..=order).map(|n| (n as i64, bernoulli(n))).collect(),
        "stirling" => {
            let b = lambert::coeffs_b(2 * order + 1)?;
            lambert::stirling_coeffs(&b, order).into_iter().zip(0..).map(|(v, i)| (i, v)).collect()
        }
        other => return Err(Error::UnknownFamily(other.to_string())),
    })
}

fn series(s: &GradedSeries, order: usize) -> Vec<(i64, Rational)> {
    let lead = s.lead_exponent().unwrap_or(0);
    let step = match s.direction() {
        Direction::Ascending => 1,
        Direction::Descending => -1,
    };
    (0..=order as i64)
        .map(|i| lead + step * i)
        .map(|e| (e, s.coeff(e).expect("fitted to order")))
        .collect()
}
