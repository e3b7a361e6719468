//! The 3-cochains `A(x,y,z)` over a symmetric quandle and the cocycles
//! `φ`, `φ′`, `φ″` of `R̃_3`.

use super::chain::{Cell, Cochain};
use super::complex::SymmetricComplex;
use super::Flavor;
use crate::error::{Error, Result};
use crate::quandle::{build_tilde_r, FiniteQuandle, GoodInvolution};

/// Which sixth term to use in `A(x,y,z)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ACochainVariant {
    /// `+χ(ρx◁z, y◁z, ρz)`, which makes `A` vanish on `D^ρ`.
    #[default]
    Corrected,
    /// `+χ(ρx◁y, y◁z, ρz)`.
    AsPrinted,
}

/// Eight-term signed sum of characteristic functions of triples.
pub fn a_cochain(
    q: &FiniteQuandle,
    rho: &GoodInvolution,
    x: usize,
    y: usize,
    z: usize,
    variant: ACochainVariant,
) -> Result<Cochain> {
    let n = q.size();
    if x >= n || y >= n || z >= n {
        return Err(Error::InvalidInput(format!(
            "({x},{y},{z}) is not a triple of elements of a quandle of order {n}"
        )));
    }
    if rho.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: rho.len(),
        });
    }
    let op = |a, b| q.op(a, b);
    let r = |a| rho.apply(a);
    let sixth = match variant {
        ACochainVariant::Corrected => op(r(x), z),
        ACochainVariant::AsPrinted => op(r(x), y),
    };
    let terms: [(i64, [usize; 3]); 8] = [
        (1, [x, y, z]),
        (-1, [r(x), y, z]),
        (-1, [op(x, y), r(y), z]),
        (-1, [op(x, z), op(y, z), r(z)]),
        (1, [op(r(x), y), r(y), z]),
        (1, [sixth, op(y, z), r(z)]),
        (1, [op(op(x, y), z), op(r(y), z), r(z)]),
        (-1, [op(op(r(x), y), z), op(r(y), z), r(z)]),
    ];
    let mut out = Cochain::zero(3, n, None);
    for (k, t) in terms {
        out.add_at(&Cell::new(t.to_vec()), k);
    }
    Ok(out)
}

/// `Σ k·A(x,y,z)` over the given terms.
pub fn a_combination(
    q: &FiniteQuandle,
    rho: &GoodInvolution,
    terms: &[(i64, [usize; 3])],
    variant: ACochainVariant,
) -> Result<Cochain> {
    let mut out = Cochain::zero(3, q.size(), None);
    for &(k, [x, y, z]) in terms {
        out = out.plus(&a_cochain(q, rho, x, y, z, variant)?, k)?;
    }
    Ok(out)
}

const PHI: [(i64, [usize; 3]); 3] = [(1, [0, 1, 0]), (1, [0, 1, 2]), (-1, [0, 2, 1])];

const PHI_PRIME: [(i64, [usize; 3]); 12] = [
    (1, [0, 1, 0]),
    (1, [0, 1, 2]),
    (1, [0, 2, 0]),
    (-1, [0, 2, 1]),
    (1, [1, 0, 1]),
    (-1, [1, 0, 2]),
    (1, [1, 2, 0]),
    (1, [1, 2, 1]),
    (1, [2, 0, 1]),
    (1, [2, 0, 2]),
    (-1, [2, 1, 0]),
    (1, [2, 1, 2]),
];

fn over_tilde_three(terms: &[(i64, [usize; 3])]) -> Cochain {
    let t = build_tilde_r(1).expect("R̃_3 is constructible");
    a_combination(&t.quandle, &t.rho, terms, ACochainVariant::Corrected)
        .expect("terms are elements of R̃_3")
}

/// `φ = A(0,1,0) + A(0,1,2) − A(0,2,1)` on `R̃_3`.
pub fn phi() -> Cochain {
    over_tilde_three(&PHI)
}

/// The twelve-term combination `φ′` on `R̃_3`.
pub fn phi_prime() -> Cochain {
    over_tilde_three(&PHI_PRIME)
}

/// `φ″`, the cocycle used against the checkerboard cycle. It is the same
/// combination as `φ′`.
pub fn phi_double_prime() -> Cochain {
    over_tilde_three(&PHI_PRIME)
}

fn check_domain(complex: &SymmetricComplex, theta: &Cochain) -> Result<()> {
    if theta.quandle_order() != complex.q() || theta.y_size() != complex.y_size() {
        return Err(Error::InvalidInput(
            "cochain and complex have different cell sets".into(),
        ));
    }
    Ok(())
}

/// `δθ = θ ∘ ∂`, one degree up.
pub fn coboundary(complex: &SymmetricComplex, theta: &Cochain) -> Result<Cochain> {
    check_domain(complex, theta)?;
    let n = theta.degree() + 1;
    let values = (0..complex.cell_count(n))
        .map(|i| {
            complex
                .cell_boundary(n, i)
                .iter()
                .map(|&(j, k)| k * theta.value_at(j))
                .sum()
        })
        .collect();
    Cochain::from_values(n, complex.q(), complex.y_size(), values)
}

/// Whether `θ` vanishes on the flavor's subcomplex and on every boundary.
pub fn is_symmetric_cocycle(
    complex: &SymmetricComplex,
    theta: &Cochain,
    flavor: Flavor,
) -> Result<bool> {
    check_domain(complex, theta)?;
    for v in complex.subcomplex_vectors(flavor, theta.degree())? {
        if v.iter().map(|&(j, k)| k * theta.value_at(j)).sum::<i64>() != 0 {
            return Ok(false);
        }
    }
    Ok(coboundary(complex, theta)?.values().iter().all(|&v| v == 0))
}

/// `θ(a,b,c) = ±1` whenever `a ∉ {b, ρb}` and `c ∉ {b, ρb}`.
pub fn is_pm_monic(theta: &Cochain, q: &FiniteQuandle, rho: &GoodInvolution) -> Result<bool> {
    if theta.degree() != 3 || theta.quandle_order() != q.size() || rho.len() != q.size() {
        return Err(Error::InvalidInput(
            "expected a 3-cochain over the given quandle".into(),
        ));
    }
    let monic = (0..theta.values().len()).all(|i| {
        let cell = Cell::from_index(i, q.size(), 3, theta.y_size().is_some());
        let [a, b, c] = [cell.x[0], cell.x[1], cell.x[2]];
        let near = |v: usize| v == b || v == rho.apply(b);
        near(a) || near(c) || theta.value_at(i).abs() == 1
    });
    Ok(monic)
}

/// Whether every value lies in `{−1, 0, 1}`.
pub fn values_bounded(theta: &Cochain) -> bool {
    theta.values().iter().all(|v| v.abs() <= 1)
}
