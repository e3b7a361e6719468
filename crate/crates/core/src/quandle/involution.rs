use serde::Serialize;

use super::FiniteQuandle;
use crate::error::{Error, Result};

/// A map `ρ: X → X` stored as the image of each element.
///
/// Construction only checks that `ρ` is a permutation of the right size;
/// [`verify_good_involution`] checks the remaining conditions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GoodInvolution {
    images: Vec<usize>,
}

impl GoodInvolution {
    pub fn new(images: Vec<usize>, size: usize) -> Result<Self> {
        if images.len() != size {
            return Err(Error::SizeMismatch {
                expected: size,
                found: images.len(),
            });
        }
        let mut seen = vec![false; size];
        for &v in &images {
            if v >= size || std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidInput(format!(
                    "rho is not a permutation of 0..{size}"
                )));
            }
        }
        Ok(Self { images })
    }

    pub fn identity(size: usize) -> Self {
        Self {
            images: (0..size).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum InvolutionViolation {
    /// `ρ(ρ(x)) ≠ x`.
    NotInvolution { x: usize },
    /// `ρ(x ◁ y) ≠ ρ(x) ◁ y`.
    Equivariance { x: usize, y: usize },
    /// `x ◁ ρ(y) ≠ x ◁ ȳ`.
    LeftDivision { x: usize, y: usize },
}

/// Returns the first violated condition, or `None` for a good involution.
pub fn verify_good_involution(
    quandle: &FiniteQuandle,
    rho: &GoodInvolution,
) -> Result<Option<InvolutionViolation>> {
    let q = quandle.size();
    if rho.len() != q {
        return Err(Error::SizeMismatch {
            expected: q,
            found: rho.len(),
        });
    }
    if !quandle.is_right_invertible() {
        return Err(Error::Precondition(
            "operation table is not right-invertible".into(),
        ));
    }
    if let Some(x) = (0..q).find(|&x| rho.apply(rho.apply(x)) != x) {
        return Ok(Some(InvolutionViolation::NotInvolution { x }));
    }
    for x in 0..q {
        for y in 0..q {
            if rho.apply(quandle.op(x, y)) != quandle.op(rho.apply(x), y) {
                return Ok(Some(InvolutionViolation::Equivariance { x, y }));
            }
        }
    }
    for x in 0..q {
        for y in 0..q {
            if quandle.op(x, rho.apply(y)) != quandle.op_inv(x, y) {
                return Ok(Some(InvolutionViolation::LeftDivision { x, y }));
            }
        }
    }
    Ok(None)
}

/// All good involutions of `quandle`, in lexicographic order of their image
/// vectors. `max_size` bounds the quandle order (the search is exponential in
/// the number of inner-automorphism orbits).
pub fn enumerate_good_involutions(
    quandle: &FiniteQuandle,
    max_size: usize,
) -> Result<Vec<GoodInvolution>> {
    let q = quandle.size();
    if q > max_size {
        return Err(Error::ResourceGuard(format!(
            "quandle of order {q} exceeds the enumeration limit {max_size}"
        )));
    }
    if !quandle.is_right_invertible() {
        return Err(Error::Precondition(
            "operation table is not right-invertible".into(),
        ));
    }
    // ρ(y) must have column equal to the inverse of column y
    let candidates: Vec<Vec<usize>> = (0..q)
        .map(|y| {
            (0..q)
                .filter(|&z| (0..q).all(|x| quandle.op(x, z) == quandle.op_inv(x, y)))
                .collect()
        })
        .collect();
    let mut found = Vec::new();
    let mut assignment = vec![usize::MAX; q];
    search(quandle, &candidates, &mut assignment, &mut found);
    found.sort();
    let mut out = Vec::with_capacity(found.len());
    for images in found {
        let rho = GoodInvolution { images };
        if verify_good_involution(quandle, &rho)?.is_none() {
            out.push(rho);
        }
    }
    Ok(out)
}

fn search(
    quandle: &FiniteQuandle,
    candidates: &[Vec<usize>],
    assignment: &mut Vec<usize>,
    found: &mut Vec<Vec<usize>>,
) {
    let Some(x) = assignment.iter().position(|&v| v == usize::MAX) else {
        found.push(assignment.clone());
        return;
    };
    for &z in &candidates[x] {
        let mut trial = assignment.clone();
        if propagate(quandle, candidates, &mut trial, x, z) {
            search(quandle, candidates, &mut trial, found);
        }
    }
}

// Assigns ρ(x) = z and everything it forces through equivariance and
// ρ² = id. Returns false on a contradiction.
fn propagate(
    quandle: &FiniteQuandle,
    candidates: &[Vec<usize>],
    assignment: &mut [usize],
    x: usize,
    z: usize,
) -> bool {
    let q = quandle.size();
    let mut stack = vec![(x, z)];
    while let Some((u, v)) = stack.pop() {
        if assignment[u] != usize::MAX {
            if assignment[u] != v {
                return false;
            }
            continue;
        }
        if !candidates[u].contains(&v) {
            return false;
        }
        assignment[u] = v;
        stack.push((v, u));
        for y in 0..q {
            stack.push((quandle.op(u, y), quandle.op(v, y)));
            stack.push((quandle.op_inv(u, y), quandle.op_inv(v, y)));
        }
    }
    true
}
