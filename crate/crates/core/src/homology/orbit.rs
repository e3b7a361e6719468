use std::collections::VecDeque;

use dashu_int::IBig;

use super::chain::Chain;
use super::complex::SymmetricComplex;
use super::compute::{HomologyGroup, ResourceGuard};
use super::Flavor;
use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, IntMatrix};

/// Explicit basis of `C_n / D_n` when it is free.
///
/// `D^ρ` identifies `t` with `−τ_i(t)`, so cells fall into orbits under the
/// `τ_i`. An orbit is zero if it holds a degenerate tuple (flavors with
/// `D^Q`), 2-torsion if the signs are inconsistent, and free of rank one
/// otherwise.
#[derive(Clone, Debug)]
pub struct OrbitQuotient {
    degree: usize,
    reps: Vec<usize>,
    class: Vec<CellClass>,
    torsion_orbits: usize,
    zero_orbits: usize,
}

impl OrbitQuotient {
    pub fn new(complex: &SymmetricComplex, flavor: Flavor, n: usize) -> Result<Self> {
        if flavor.uses_rho() && complex.rho().is_none() {
            return Err(Error::Precondition(format!(
                "flavor {flavor} needs a good involution"
            )));
        }
        let count = complex.cell_count(n);
        let mut sign = vec![0i64; count];
        let mut class = vec![CellClass::Zero; count];
        let mut reps = Vec::new();
        let (mut torsion_orbits, mut zero_orbits) = (0, 0);
        let slots = if flavor.uses_rho() {
            match complex.rho_range() {
                super::RhoRange::Full => n,
                super::RhoRange::Restricted => n.saturating_sub(1),
            }
        } else {
            0
        };
        for start in 0..count {
            if sign[start] != 0 {
                continue;
            }
            sign[start] = 1;
            let mut members = vec![start];
            let mut queue = VecDeque::from([start]);
            let (mut conflict, mut degenerate) = (false, false);
            while let Some(t) = queue.pop_front() {
                let cell = complex.cell(n, t);
                if flavor.uses_degenerate() && cell.x.windows(2).any(|w| w[0] == w[1]) {
                    degenerate = true;
                }
                for i in 1..=slots {
                    let s = complex.index(&complex.pair_transform(&cell, i)?);
                    if sign[s] == 0 {
                        sign[s] = -sign[t];
                        members.push(s);
                        queue.push_back(s);
                    } else if sign[s] != -sign[t] {
                        conflict = true;
                    }
                }
            }
            if degenerate {
                zero_orbits += 1;
            } else if conflict {
                torsion_orbits += 1;
                for &m in &members {
                    class[m] = CellClass::Torsion;
                }
            } else {
                // start is the smallest index in its orbit and has sign +1
                let id = reps.len();
                reps.push(start);
                for &m in &members {
                    class[m] = CellClass::Free(id, sign[m]);
                }
            }
        }
        Ok(Self {
            degree: n,
            reps,
            class,
            torsion_orbits,
            zero_orbits,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.reps.len()
    }

    /// Cell index of each free orbit's representative.
    pub fn representatives(&self) -> &[usize] {
        &self.reps
    }

    pub fn torsion_orbits(&self) -> usize {
        self.torsion_orbits
    }

    pub fn zero_orbits(&self) -> usize {
        self.zero_orbits
    }

    pub fn is_free(&self) -> bool {
        self.torsion_orbits == 0
    }

    /// Free orbit and sign of a cell, or None if its class is zero.
    pub fn class_of_cell(&self, index: usize) -> Result<Option<(usize, i64)>> {
        match self.class[index] {
            CellClass::Free(id, s) => Ok(Some((id, s))),
            CellClass::Zero => Ok(None),
            CellClass::Torsion => Err(Error::Precondition(format!(
                "cell {index} lies in a 2-torsion orbit of the degree-{} quotient",
                self.degree
            ))),
        }
    }

    /// Image in the quotient basis of sparse cell coordinates.
    pub fn project(&self, v: &[(usize, i64)]) -> Result<Vec<i64>> {
        let mut out = vec![0i64; self.rank()];
        for &(i, k) in v {
            if let Some((orbit, s)) = self.class_of_cell(i)? {
                out[orbit] += s * k;
            }
        }
        Ok(out)
    }

    pub fn project_chain(&self, complex: &SymmetricComplex, chain: &Chain) -> Result<Vec<i64>> {
        complex.check_chain(chain)?;
        self.project(&chain.to_sparse(complex.q()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum CellClass {
    /// Free orbit and sign relative to its representative.
    Free(usize, i64),
    Zero,
    Torsion,
}

/// Matrix of `∂_n` from the degree-`n` quotient basis to the degree-`n−1`
/// one.
pub fn reduced_boundary(
    complex: &SymmetricComplex,
    lower: &OrbitQuotient,
    upper: &OrbitQuotient,
) -> Result<IntMatrix> {
    if !lower.is_free() {
        return Err(Error::Precondition(format!(
            "degree-{} quotient has 2-torsion",
            lower.degree
        )));
    }
    let mut m = IntMatrix::zeros(lower.rank(), upper.rank());
    for (j, &rep) in upper.reps.iter().enumerate() {
        let col = lower.project(&complex.cell_boundary(upper.degree, rep))?;
        for (i, v) in col.into_iter().enumerate() {
            if v != 0 {
                m.set(i, j, IBig::from(v));
            }
        }
    }
    Ok(m)
}

/// Homology of the explicit quotient complex. Fails when a quotient in
/// degree `n` or `n−1` has 2-torsion.
pub fn orbit_homology(
    complex: &SymmetricComplex,
    flavor: Flavor,
    n: usize,
    guard: &ResourceGuard,
) -> Result<HomologyGroup> {
    if n == 0 {
        return Err(Error::InvalidInput(
            "homology is computed from degree 1".into(),
        ));
    }
    if complex.cell_count(n + 1) > guard.max_cells {
        return Err(Error::ResourceGuard(format!(
            "C_{} is above the cell limit",
            n + 1
        )));
    }
    let lower = OrbitQuotient::new(complex, flavor, n - 1)?;
    let mid = OrbitQuotient::new(complex, flavor, n)?;
    let upper = OrbitQuotient::new(complex, flavor, n + 1)?;
    if !mid.is_free() {
        return Err(Error::Precondition(format!(
            "degree-{n} quotient has 2-torsion"
        )));
    }
    let d_n = reduced_boundary(complex, &lower, &mid)?;
    let d_next = reduced_boundary(complex, &mid, &upper)?;
    let rank_n = smith_normal_form(&d_n, false).rank;
    let s = smith_normal_form(&d_next, false);
    let torsion = s
        .invariant_factors()
        .iter()
        .filter(|d| **d > IBig::ONE)
        .map(|d| {
            u64::try_from(d)
                .map_err(|_| Error::ResourceGuard(format!("torsion coefficient {d} too large")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HomologyGroup {
        free_rank: mid.rank() - rank_n - s.rank,
        torsion,
    })
}
