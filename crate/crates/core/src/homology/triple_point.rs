//! Lower bounds for the triple point number from colored diagrams.

use serde::{Deserialize, Serialize};

use super::chain::{Cell, Chain, Cochain};
use super::cocycles::values_bounded;
use super::complex::{pi_forget, SymmetricComplex};
use super::Flavor;
use crate::error::{Error, Result};

/// One triple point of a colored diagram with its sign, the region color
/// `y` (if any) and the three sheet colors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriplePointRecord {
    pub sign: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<String>,
    pub x: [usize; 3],
}

/// The weight sum `Σ ε·(y, x₁, x₂, x₃)` as a 3-chain of `complex`.
pub fn records_to_chain(
    complex: &SymmetricComplex,
    records: &[TriplePointRecord],
) -> Result<Chain> {
    let mut chain = Chain::zero(3, complex.with_y());
    for r in records {
        if r.sign != 1 && r.sign != -1 {
            return Err(Error::InvalidInput(format!(
                "triple point sign {} is not ±1",
                r.sign
            )));
        }
        let y = match (&r.y, complex.action()) {
            (None, None) => None,
            (Some(label), Some(action)) => Some(
                action
                    .labels()
                    .iter()
                    .position(|l| l == label)
                    .or_else(|| label.parse::<usize>().ok().filter(|&i| i < action.size()))
                    .ok_or_else(|| {
                        Error::InvalidInput(format!("unknown region color {label:?}"))
                    })?,
            ),
            (None, Some(_)) => {
                return Err(Error::InvalidInput(
                    "triple point is missing its region color".into(),
                ))
            }
            (Some(_), None) => {
                return Err(Error::InvalidInput(
                    "region color given but the complex has no Y".into(),
                ))
            }
        };
        let cell = Cell { y, x: r.x.to_vec() };
        complex.check_cell(&cell)?;
        chain.add_term(cell, r.sign)?;
    }
    Ok(chain)
}

/// `|θ(Σ ε·tuple)|`. The weight sum must be a `Qρ` cycle and `θ` must take
/// values in `{−1, 0, 1}`. A cochain without `Y` is evaluated after
/// forgetting the region colors.
pub fn triple_point_bound(
    complex: &SymmetricComplex,
    records: &[TriplePointRecord],
    theta: &Cochain,
) -> Result<u64> {
    if theta.degree() != 3 || theta.quandle_order() != complex.q() {
        return Err(Error::InvalidInput(
            "expected a 3-cochain over the complex's quandle".into(),
        ));
    }
    if !values_bounded(theta) {
        return Err(Error::Precondition(
            "cocycle takes values outside {-1, 0, 1}".into(),
        ));
    }
    let chain = records_to_chain(complex, records)?;
    if !complex.is_cycle(Flavor::QRho, &chain)? {
        return Err(Error::NotACycle);
    }
    let value = match (theta.y_size(), complex.y_size()) {
        (None, Some(_)) => theta.evaluate(&pi_forget(&chain))?,
        (a, b) if a == b => theta.evaluate(&chain)?,
        _ => {
            return Err(Error::InvalidInput(
                "cochain and complex have different region colors".into(),
            ))
        }
    };
    Ok(value.unsigned_abs())
}
