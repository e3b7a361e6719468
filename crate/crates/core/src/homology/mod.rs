//! Symmetric quandle chain complexes and their integral homology.

mod chain;
mod cocycles;
mod complex;
mod compute;
mod orbit;
mod scan;
mod tilde3;
mod triple_point;
mod xset;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

pub use chain::{Cell, Chain, ChainFile, ChainTerm, Cochain};
pub use cocycles::{
    a_cochain, a_combination, coboundary, is_pm_monic, is_symmetric_cocycle, phi, phi_double_prime,
    phi_prime, values_bounded, ACochainVariant,
};
pub use complex::{pi_forget, SymmetricComplex};
pub use compute::{homology, ClassCoordinates, HomologyGroup, HomologyResult, ResourceGuard};
pub use orbit::{orbit_homology, reduced_boundary, OrbitQuotient};
pub use scan::{
    small_support_null_scan, Counterexample, NullScanner, ScanMode, ScanReport, DEFAULT_SEED,
};
pub use tilde3::{cycle_c, cycle_gamma};
pub use triple_point::{records_to_chain, triple_point_bound, TriplePointRecord};
pub use xset::{verify_xset_action, XSetAction, XSetViolation};

/// Which subcomplex is divided out: nothing, `D^Q`, `D^ρ`, or `D^Q + D^ρ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Flavor {
    R,
    Q,
    #[serde(rename = "Rrho")]
    RRho,
    #[serde(rename = "Qrho")]
    QRho,
}

impl Flavor {
    pub fn uses_degenerate(self) -> bool {
        matches!(self, Flavor::Q | Flavor::QRho)
    }

    pub fn uses_rho(self) -> bool {
        matches!(self, Flavor::RRho | Flavor::QRho)
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::R => "R",
            Flavor::Q => "Q",
            Flavor::RRho => "Rrho",
            Flavor::QRho => "Qrho",
        })
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('ρ', "rho").as_str() {
            "r" => Ok(Flavor::R),
            "q" => Ok(Flavor::Q),
            "rrho" | "r-rho" => Ok(Flavor::RRho),
            "qrho" | "q-rho" => Ok(Flavor::QRho),
            _ => Err(Error::InvalidInput(format!(
                "unknown flavor {s:?} (expected R, Q, Rrho or Qrho)"
            ))),
        }
    }
}

/// Slots `i` used for the pairing generators `t + τ_i(t)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RhoRange {
    /// `i ∈ {1, …, n}`.
    #[default]
    Full,
    /// `i ∈ {1, …, n−1}`; does not give a subcomplex in general.
    Restricted,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flavor_names() {
        for f in [Flavor::R, Flavor::Q, Flavor::RRho, Flavor::QRho] {
            assert_eq!(f.to_string().parse::<Flavor>().unwrap(), f);
        }
        assert_eq!("Qρ".parse::<Flavor>().unwrap(), Flavor::QRho);
        assert!("X".parse::<Flavor>().is_err());
        assert_eq!(serde_json::to_string(&Flavor::QRho).unwrap(), "\"Qrho\"");
    }
}
