use std::collections::HashSet;
use std::fmt;

use dashu_int::ops::RemEuclid;
use dashu_int::IBig;
use serde::Serialize;

use super::chain::Chain;
use super::complex::{to_ibig, SymmetricComplex};
use super::Flavor;
use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, sparse_from_dense, EchelonLattice, IntMatrix, SmithForm};

/// Limits on the work a homology computation may do.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResourceGuard {
    /// Largest dense matrix (rows × columns) that may be built.
    pub max_matrix_cells: usize,
    /// Largest number of basis tuples in any chain group touched.
    pub max_cells: usize,
}

impl Default for ResourceGuard {
    fn default() -> Self {
        Self {
            max_matrix_cells: 50_000_000,
            max_cells: 2_000_000,
        }
    }
}

impl ResourceGuard {
    fn matrix(&self, rows: usize, cols: usize, what: &str) -> Result<()> {
        match rows.checked_mul(cols) {
            Some(c) if c <= self.max_matrix_cells => Ok(()),
            _ => Err(Error::ResourceGuard(format!(
                "{what} would be {rows}×{cols}, above the limit of {} entries",
                self.max_matrix_cells
            ))),
        }
    }

    fn cells(&self, count: usize, degree: usize) -> Result<()> {
        if count > self.max_cells {
            return Err(Error::ResourceGuard(format!(
                "C_{degree} has {count} basis tuples, above the limit of {}",
                self.max_cells
            )));
        }
        Ok(())
    }
}

/// `Z^free_rank ⊕ Z/d₁ ⊕ Z/d₂ ⊕ …` with `d₁ | d₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z_{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

/// Coordinates of a homology class: free part and `(residue, modulus)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCoordinates {
    pub free: Vec<IBig>,
    pub torsion: Vec<(IBig, IBig)>,
}

impl ClassCoordinates {
    pub fn is_zero(&self) -> bool {
        self.free.iter().all(IBig::is_zero) && self.torsion.iter().all(|(r, _)| r.is_zero())
    }
}

#[derive(Clone, Debug)]
pub struct HomologyResult {
    pub degree: usize,
    pub flavor: Flavor,
    pub group: HomologyGroup,
    complex: SymmetricComplex,
    // lattice of z with ∂z ∈ D_{n−1}
    kernel: EchelonLattice,
    smith: SmithForm,
}

impl HomologyResult {
    /// Coordinates of the class of `z`; zero iff `z` is null-homologous.
    pub fn class_of(&self, z: &Chain) -> Result<ClassCoordinates> {
        self.complex.check_chain(z)?;
        if z.degree() != self.degree {
            return Err(Error::SizeMismatch {
                expected: self.degree,
                found: z.degree(),
            });
        }
        let w = self
            .kernel
            .coordinates(&to_ibig(&z.to_sparse(self.complex.q())))
            .ok_or(Error::NotACycle)?;
        let v = self.smith.right.as_ref().expect("tracked transform");
        let k = w.len();
        let y: Vec<IBig> = (0..k)
            .map(|j| {
                w.iter()
                    .enumerate()
                    .filter(|(_, wi)| !wi.is_zero())
                    .fold(IBig::ZERO, |acc, (i, wi)| acc + wi * v.get(i, j))
            })
            .collect();
        let rank = self.smith.rank;
        let torsion = (0..rank)
            .filter(|&i| self.smith.diagonal[i] > IBig::ONE)
            .map(|i| {
                let d = &self.smith.diagonal[i];
                (IBig::from((&y[i]).rem_euclid(d)), d.clone())
            })
            .collect();
        Ok(ClassCoordinates {
            free: y[rank..].to_vec(),
            torsion,
        })
    }

    pub fn complex(&self) -> &SymmetricComplex {
        &self.complex
    }
}

/// `H_n = ker(C_n → C_{n−1}/D_{n−1}) / (im ∂_{n+1} + D_n)` over the integers.
pub fn homology(
    complex: &SymmetricComplex,
    flavor: Flavor,
    n: usize,
    guard: &ResourceGuard,
) -> Result<HomologyResult> {
    if flavor.uses_rho() && complex.rho().is_none() {
        return Err(Error::Precondition(format!(
            "flavor {flavor} needs a good involution"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidInput(
            "homology is computed from degree 1".into(),
        ));
    }
    let (c_prev, c_n, c_next) = (
        complex.cell_count(n - 1),
        complex.cell_count(n),
        complex.cell_count(n + 1),
    );
    guard.cells(c_next, n + 1)?;

    let kernel = cycle_lattice(complex, flavor, n, c_prev, c_n, guard)?;

    let mut image = EchelonLattice::new(c_n);
    for j in 0..c_next {
        image.insert(to_ibig(&complex.cell_boundary(n + 1, j)));
    }
    for v in complex.subcomplex_vectors(flavor, n)? {
        image.insert(to_ibig(&v));
    }

    let k = kernel.rank();
    guard.matrix(image.rank(), k, "relation matrix")?;
    guard.matrix(k, k, "relation transform")?;
    let mut x = IntMatrix::zeros(image.rank(), k);
    for (r, row) in image.basis().enumerate() {
        let coords = kernel.coordinates(row).ok_or_else(|| {
            Error::Precondition("subcomplex is not closed under the boundary".into())
        })?;
        for (j, c) in coords.into_iter().enumerate() {
            if !c.is_zero() {
                x.set(r, j, c);
            }
        }
    }
    let smith = smith_normal_form(&x, true);
    let torsion = smith.diagonal[..smith.rank]
        .iter()
        .filter(|d| **d > IBig::ONE)
        .map(|d| {
            u64::try_from(d)
                .map_err(|_| Error::ResourceGuard(format!("torsion coefficient {d} too large")))
        })
        .collect::<Result<Vec<_>>>()?;
    let group = HomologyGroup {
        free_rank: k - smith.rank,
        torsion,
    };
    Ok(HomologyResult {
        degree: n,
        flavor,
        group,
        complex: complex.clone(),
        kernel,
        smith,
    })
}

// {z ∈ C_n : ∂z ∈ D_{n−1}}, from the kernel of [∂_n | D_{n−1}].
fn cycle_lattice(
    complex: &SymmetricComplex,
    flavor: Flavor,
    n: usize,
    c_prev: usize,
    c_n: usize,
    guard: &ResourceGuard,
) -> Result<EchelonLattice> {
    let boundaries: Vec<Vec<(usize, i64)>> =
        (0..c_n).map(|j| complex.cell_boundary(n, j)).collect();
    if boundaries.iter().all(Vec::is_empty) {
        return Ok(EchelonLattice::full(c_n));
    }
    let mut seen = HashSet::new();
    let extra: Vec<Vec<(usize, i64)>> = complex
        .subcomplex_vectors(flavor, n - 1)?
        .into_iter()
        .filter(|v| seen.insert(v.clone()))
        .collect();
    let cols = c_n + extra.len();
    guard.matrix(c_prev, cols, "boundary matrix")?;
    guard.matrix(cols, cols, "boundary transform")?;
    let mut b = IntMatrix::zeros(c_prev, cols);
    for (j, col) in boundaries.iter().chain(extra.iter()).enumerate() {
        for &(i, v) in col {
            b.set(i, j, IBig::from(v));
        }
    }
    let smith = smith_normal_form(&b, true);
    let v = smith.right.as_ref().expect("tracked transform");
    let mut kernel = EchelonLattice::new(c_n);
    for j in smith.rank..cols {
        let column: Vec<IBig> = (0..c_n).map(|i| v.get(i, j).clone()).collect();
        kernel.insert(sparse_from_dense(&column));
    }
    Ok(kernel)
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::homology::XSetAction;
    use crate::quandle::{build_tilde_r, FiniteQuandle, GoodInvolution};

    fn group(free_rank: usize, torsion: &[u64]) -> HomologyGroup {
        HomologyGroup {
            free_rank,
            torsion: torsion.to_vec(),
        }
    }

    #[test]
    fn trivial_quandle_rack_homology() {
        // one-element quandle: C_n = Z, ∂_n = 0 for odd n... with the sign
        // pattern here every term cancels, so H_n^R = Z
        let cx = SymmetricComplex::new(FiniteQuandle::trivial(1), None, None).unwrap();
        for n in 1..=3 {
            assert_eq!(
                homology(&cx, Flavor::R, n, &ResourceGuard::default())
                    .unwrap()
                    .group,
                group(1, &[])
            );
            assert!(homology(&cx, Flavor::Q, n + 1, &ResourceGuard::default())
                .unwrap()
                .group
                .is_trivial());
        }
    }

    #[test]
    fn dihedral_three_quandle_homology() {
        // known values for R_3: H₂^Q = 0, H₃^Q = Z_3, H₂^R = Z
        let cx = SymmetricComplex::new(FiniteQuandle::dihedral(3).unwrap(), None, None).unwrap();
        let g = ResourceGuard::default();
        assert_eq!(
            homology(&cx, Flavor::Q, 2, &g).unwrap().group,
            group(0, &[])
        );
        assert_eq!(
            homology(&cx, Flavor::Q, 3, &g).unwrap().group,
            group(0, &[3])
        );
        assert_eq!(
            homology(&cx, Flavor::R, 2, &g).unwrap().group,
            group(1, &[])
        );
    }

    #[test]
    fn tilde_three_values() {
        let t = build_tilde_r(1).unwrap();
        let g = ResourceGuard::default();
        let cx = SymmetricComplex::new(t.quandle.clone(), Some(t.rho.clone()), None).unwrap();
        assert!(homology(&cx, Flavor::QRho, 2, &g)
            .unwrap()
            .group
            .is_trivial());
        assert_eq!(
            homology(&cx, Flavor::QRho, 3, &g).unwrap().group,
            group(1, &[])
        );
        let cy = SymmetricComplex::new(
            t.quandle.clone(),
            Some(t.rho),
            Some(XSetAction::checkerboard(&t.quandle)),
        )
        .unwrap();
        assert_eq!(
            homology(&cy, Flavor::QRho, 3, &g).unwrap().group,
            group(1, &[3])
        );
    }

    #[test]
    fn boundaries_project_to_zero() {
        let t = build_tilde_r(1).unwrap();
        let cx = SymmetricComplex::new(t.quandle, Some(t.rho), None).unwrap();
        let h = homology(&cx, Flavor::QRho, 3, &ResourceGuard::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let terms: Vec<(usize, i64)> = (0..4)
                .map(|_| (rng.random_range(0..1296), rng.random_range(-2..=2)))
                .collect();
            let w = Chain::from_sparse(4, false, 6, &crate::homology::complex::merge(terms));
            let b = cx.boundary(&w).unwrap();
            assert!(h.class_of(&b).unwrap().is_zero());
        }
        let not_cycle = Chain::plain(3, &[(1, &[0, 1, 2])]).unwrap();
        assert!(matches!(h.class_of(&not_cycle), Err(Error::NotACycle)));
    }

    #[test]
    fn two_torsion_from_fixed_points() {
        // ρ = id on R_3: t + τ(t) may equal 2t, so the quotient has 2-torsion
        let cx = SymmetricComplex::new(
            FiniteQuandle::dihedral(3).unwrap(),
            Some(GoodInvolution::identity(3)),
            None,
        )
        .unwrap();
        let h = homology(&cx, Flavor::QRho, 2, &ResourceGuard::default()).unwrap();
        assert!(h.group.free_rank == 0);
    }

    #[test]
    fn guard_trips() {
        let t = build_tilde_r(1).unwrap();
        let cx = SymmetricComplex::new(t.quandle, Some(t.rho), None).unwrap();
        let tight = ResourceGuard {
            max_matrix_cells: 100,
            max_cells: 2_000_000,
        };
        assert!(matches!(
            homology(&cx, Flavor::QRho, 3, &tight),
            Err(Error::ResourceGuard(_))
        ));
        let few = ResourceGuard {
            max_matrix_cells: 50_000_000,
            max_cells: 100,
        };
        assert!(matches!(
            homology(&cx, Flavor::QRho, 3, &few),
            Err(Error::ResourceGuard(_))
        ));
    }

    #[test]
    fn display() {
        assert_eq!(group(1, &[3]).to_string(), "Z ⊕ Z_3");
        assert_eq!(group(0, &[]).to_string(), "0");
        assert_eq!(group(2, &[]).to_string(), "Z^2");
    }
}
