//! Search for non-null-homologous cycles of small support in the `Qρ`
//! quotient complex.

use dashu_int::IBig;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::chain::{Cell, Chain, ChainFile};
use super::complex::SymmetricComplex;
use super::compute::ResourceGuard;
use super::orbit::{reduced_boundary, OrbitQuotient};
use super::Flavor;
use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, EchelonLattice, IntMatrix, SparseVec};

/// Seed used by random scans unless another is given.
pub const DEFAULT_SEED: u64 = 0x5eed_0003;

/// Counterexamples kept in a report; the count covers all of them.
const KEPT_COUNTEREXAMPLES: usize = 32;

const RANDOM_CHUNK: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScanMode {
    /// Every support of size `1..=max_support`.
    Exhaustive { max_support: usize },
    /// `trials` uniformly drawn supports with sizes in `min_size..=max_size`.
    Random {
        seed: u64,
        trials: u64,
        min_size: usize,
        max_size: usize,
    },
    /// The given sets of cells, each replaced by the orbits it meets.
    Explicit(Vec<Vec<Cell>>),
}

impl ScanMode {
    fn name(&self) -> &'static str {
        match self {
            ScanMode::Exhaustive { .. } => "exhaustive",
            ScanMode::Random { .. } => "random",
            ScanMode::Explicit(_) => "explicit",
        }
    }
}

/// A cycle supported on a small set of orbit representatives whose class
/// is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub support: Vec<String>,
    pub cycle: ChainFile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub degree: usize,
    pub max_support: usize,
    pub quotient_rank: usize,
    pub supports_checked: u64,
    pub kernel_vectors_checked: u64,
    pub counterexample_count: u64,
    pub counterexamples: Vec<Counterexample>,
}

impl ScanReport {
    pub fn is_clean(&self) -> bool {
        self.counterexample_count == 0
    }
}

/// `∂̄_n` and the image of `∂̄_{n+1}` in the orbit basis of `C_n/D_n`.
pub struct NullScanner<'a> {
    complex: &'a SymmetricComplex,
    quotient: OrbitQuotient,
    boundary: IntMatrix,
    image: EchelonLattice,
}

impl<'a> NullScanner<'a> {
    pub fn new(complex: &'a SymmetricComplex, n: usize, guard: &ResourceGuard) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("scans start in degree 1".into()));
        }
        if complex.cell_count(n + 1) > guard.max_cells {
            return Err(Error::ResourceGuard(format!(
                "C_{} is above the cell limit",
                n + 1
            )));
        }
        let lower = OrbitQuotient::new(complex, Flavor::QRho, n - 1)?;
        let quotient = OrbitQuotient::new(complex, Flavor::QRho, n)?;
        let upper = OrbitQuotient::new(complex, Flavor::QRho, n + 1)?;
        if !quotient.is_free() {
            return Err(Error::Precondition(format!(
                "degree-{n} quotient has 2-torsion"
            )));
        }
        let boundary = reduced_boundary(complex, &lower, &quotient)?;
        let above = reduced_boundary(complex, &quotient, &upper)?;
        let mut image = EchelonLattice::new(quotient.rank());
        for j in 0..above.cols() {
            let col: SparseVec = above
                .column(j)
                .into_iter()
                .enumerate()
                .filter(|(_, v)| *v != IBig::ZERO)
                .collect();
            image.insert(col);
        }
        Ok(Self {
            complex,
            quotient,
            boundary,
            image,
        })
    }

    pub fn quotient(&self) -> &OrbitQuotient {
        &self.quotient
    }

    pub fn rank(&self) -> usize {
        self.quotient.rank()
    }

    /// Kernel vectors of `∂̄` restricted to `support` that are not
    /// boundaries, together with the number of kernel vectors examined.
    pub fn check(&self, support: &[usize]) -> (usize, Vec<Vec<IBig>>) {
        let mut m = IntMatrix::zeros(self.boundary.rows(), support.len());
        for (j, &s) in support.iter().enumerate() {
            for i in 0..self.boundary.rows() {
                let v = self.boundary.get(i, s);
                if *v != IBig::ZERO {
                    m.set(i, j, v.clone());
                }
            }
        }
        let snf = smith_normal_form(&m, true);
        let v = snf.right.expect("tracked");
        let mut bad = Vec::new();
        for k in snf.rank..support.len() {
            let coeffs = v.column(k);
            let full: SparseVec = support
                .iter()
                .zip(&coeffs)
                .filter(|(_, c)| **c != IBig::ZERO)
                .map(|(&s, c)| (s, c.clone()))
                .collect();
            let mut sorted = full;
            sorted.sort_by_key(|(i, _)| *i);
            if !self.image.contains(&sorted) {
                bad.push(coeffs);
            }
        }
        (support.len() - snf.rank, bad)
    }

    fn counterexample(&self, support: &[usize], coeffs: &[IBig]) -> Result<Counterexample> {
        let n = self.quotient.degree();
        let mut chain = Chain::zero(n, self.complex.with_y());
        for (&s, c) in support.iter().zip(coeffs) {
            let k = i64::try_from(c)
                .map_err(|_| Error::ResourceGuard(format!("coefficient {c} too large")))?;
            chain.add_term(self.complex.cell(n, self.quotient.representatives()[s]), k)?;
        }
        let labels = self.complex.action().map(|a| a.labels());
        Ok(Counterexample {
            support: support
                .iter()
                .map(|&s| {
                    self.complex
                        .cell(n, self.quotient.representatives()[s])
                        .to_string()
                })
                .collect(),
            cycle: chain.to_file(labels),
        })
    }

    fn run(&self, supports: &[Vec<usize>], report: &mut ScanReport) -> Result<()> {
        let results: Vec<(usize, Vec<Vec<IBig>>)> =
            supports.par_iter().map(|s| self.check(s)).collect();
        for (s, (kernel, bad)) in supports.iter().zip(results) {
            report.supports_checked += 1;
            report.kernel_vectors_checked += kernel as u64;
            for coeffs in bad {
                report.counterexample_count += 1;
                if report.counterexamples.len() < KEPT_COUNTEREXAMPLES {
                    report
                        .counterexamples
                        .push(self.counterexample(s, &coeffs)?);
                }
            }
        }
        Ok(())
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k == 0 || k > n {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else {
            return out;
        };
        c[i] += 1;
        for j in i + 1..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

/// Checks that every `Qρ` cycle in degree `n` supported on few orbit
/// representatives is null-homologous. The report does not depend on how
/// the work is split across threads.
pub fn small_support_null_scan(
    complex: &SymmetricComplex,
    n: usize,
    mode: &ScanMode,
    guard: &ResourceGuard,
) -> Result<ScanReport> {
    let scanner = NullScanner::new(complex, n, guard)?;
    let r = scanner.rank();
    let mut report = ScanReport {
        mode: mode.name().into(),
        seed: None,
        degree: n,
        max_support: 0,
        quotient_rank: r,
        supports_checked: 0,
        kernel_vectors_checked: 0,
        counterexample_count: 0,
        counterexamples: Vec::new(),
    };
    match mode {
        ScanMode::Exhaustive { max_support } => {
            if *max_support == 0 {
                return Err(Error::InvalidInput("max_support must be at least 1".into()));
            }
            report.max_support = *max_support;
            for k in 1..=(*max_support).min(r) {
                scanner.run(&combinations(r, k), &mut report)?;
            }
        }
        ScanMode::Random {
            seed,
            trials,
            min_size,
            max_size,
        } => {
            if *min_size == 0 || min_size > max_size || *max_size > r {
                return Err(Error::InvalidInput(format!(
                    "support sizes {min_size}..={max_size} do not fit rank {r}"
                )));
            }
            report.seed = Some(*seed);
            report.max_support = *max_size;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut left = *trials;
            while left > 0 {
                let batch = left.min(RANDOM_CHUNK as u64) as usize;
                let supports: Vec<Vec<usize>> = (0..batch)
                    .map(|_| {
                        let k = rng.random_range(*min_size..=*max_size);
                        let mut s = sample(&mut rng, r, k).into_vec();
                        s.sort_unstable();
                        s
                    })
                    .collect();
                scanner.run(&supports, &mut report)?;
                left -= batch as u64;
            }
        }
        ScanMode::Explicit(sets) => {
            let mut supports = Vec::with_capacity(sets.len());
            for cells in sets {
                let mut s = Vec::new();
                for cell in cells {
                    complex.check_cell(cell)?;
                    if cell.degree() != n {
                        return Err(Error::InvalidInput(format!(
                            "cell {cell} is not of degree {n}"
                        )));
                    }
                    if let Some((orbit, _)) = scanner.quotient.class_of_cell(complex.index(cell))? {
                        s.push(orbit);
                    }
                }
                s.sort_unstable();
                s.dedup();
                report.max_support = report.max_support.max(s.len());
                supports.push(s);
            }
            scanner.run(&supports, &mut report)?;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{cycle_c, XSetAction};
    use crate::quandle::build_tilde_r;

    #[test]
    fn combination_counts() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(24, 3).len(), 2024);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn small_supports_are_null() {
        let t = build_tilde_r(1).unwrap();
        let g = ResourceGuard::default();
        let cx = SymmetricComplex::new(t.quandle.clone(), Some(t.rho.clone()), None).unwrap();
        let rep =
            small_support_null_scan(&cx, 3, &ScanMode::Exhaustive { max_support: 3 }, &g).unwrap();
        assert!(rep.is_clean());
        assert_eq!(rep.supports_checked, 12 + 66 + 220);
        let cy = SymmetricComplex::new(
            t.quandle.clone(),
            Some(t.rho),
            Some(XSetAction::checkerboard(&t.quandle)),
        )
        .unwrap();
        assert!(
            small_support_null_scan(&cy, 3, &ScanMode::Exhaustive { max_support: 3 }, &g)
                .unwrap()
                .is_clean()
        );
    }

    #[test]
    fn c_is_flagged() {
        let t = build_tilde_r(1).unwrap();
        let cx = SymmetricComplex::new(t.quandle, Some(t.rho), None).unwrap();
        let cells: Vec<Cell> = cycle_c().terms().map(|(c, _)| c.clone()).collect();
        let rep = small_support_null_scan(
            &cx,
            3,
            &ScanMode::Explicit(vec![cells]),
            &ResourceGuard::default(),
        )
        .unwrap();
        assert_eq!(rep.max_support, 4);
        assert_eq!(rep.counterexample_count, 1);
    }

    #[test]
    fn random_scan_is_reproducible() {
        let t = build_tilde_r(1).unwrap();
        let cx = SymmetricComplex::new(t.quandle, Some(t.rho), None).unwrap();
        let mode = ScanMode::Random {
            seed: DEFAULT_SEED,
            trials: 2000,
            min_size: 4,
            max_size: 6,
        };
        let a = small_support_null_scan(&cx, 3, &mode, &ResourceGuard::default()).unwrap();
        let b = small_support_null_scan(&cx, 3, &mode, &ResourceGuard::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.seed, Some(DEFAULT_SEED));
        assert!(a.counterexample_count > 0);
    }
}
