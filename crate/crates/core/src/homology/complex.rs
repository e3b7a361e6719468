use std::collections::HashSet;

use dashu_int::IBig;

use super::chain::{Cell, Chain};
use super::xset::XSetAction;
use super::{Flavor, RhoRange};
use crate::error::{Error, Result};
use crate::linalg::{EchelonLattice, SparseVec};
use crate::quandle::{FiniteQuandle, GoodInvolution};

/// The chain complex `C_*(X)_Y` of a quandle with optional good involution
/// and optional `(X, ρ)`-set.
#[derive(Clone, Debug)]
pub struct SymmetricComplex {
    quandle: FiniteQuandle,
    rho: Option<GoodInvolution>,
    action: Option<XSetAction>,
    rho_range: RhoRange,
}

impl SymmetricComplex {
    pub fn new(
        quandle: FiniteQuandle,
        rho: Option<GoodInvolution>,
        action: Option<XSetAction>,
    ) -> Result<Self> {
        if let Some(r) = &rho {
            if r.len() != quandle.size() {
                return Err(Error::SizeMismatch {
                    expected: quandle.size(),
                    found: r.len(),
                });
            }
        }
        if let Some(a) = &action {
            if a.size() == 0 {
                return Err(Error::InvalidInput("coefficient set is empty".into()));
            }
            if (0..a.size()).any(|y| (0..quandle.size()).any(|x| a.act(y, x) >= a.size())) {
                return Err(Error::InvalidInput(
                    "action leaves the coefficient set".into(),
                ));
            }
        }
        if !quandle.is_right_invertible() {
            return Err(Error::Precondition(
                "operation table is not right-invertible".into(),
            ));
        }
        Ok(Self {
            quandle,
            rho,
            action,
            rho_range: RhoRange::Full,
        })
    }

    pub fn with_rho_range(mut self, range: RhoRange) -> Self {
        self.rho_range = range;
        self
    }

    pub fn quandle(&self) -> &FiniteQuandle {
        &self.quandle
    }

    pub fn rho(&self) -> Option<&GoodInvolution> {
        self.rho.as_ref()
    }

    pub fn action(&self) -> Option<&XSetAction> {
        self.action.as_ref()
    }

    pub fn rho_range(&self) -> RhoRange {
        self.rho_range
    }

    pub fn q(&self) -> usize {
        self.quandle.size()
    }

    pub fn with_y(&self) -> bool {
        self.action.is_some()
    }

    pub fn y_size(&self) -> Option<usize> {
        self.action.as_ref().map(XSetAction::size)
    }

    /// Rank of `C_n`. Without `Y`, `C₀ = 0`.
    pub fn cell_count(&self, n: usize) -> usize {
        match (n, &self.action) {
            (0, None) => 0,
            (_, a) => a
                .as_ref()
                .map_or(1, XSetAction::size)
                .saturating_mul(self.q().saturating_pow(n as u32)),
        }
    }

    pub fn cell(&self, n: usize, index: usize) -> Cell {
        Cell::from_index(index, self.q(), n, self.with_y())
    }

    pub fn index(&self, cell: &Cell) -> usize {
        cell.index(self.q())
    }

    pub fn check_cell(&self, cell: &Cell) -> Result<()> {
        if cell.y.is_some() != self.with_y() {
            return Err(Error::InvalidInput(format!(
                "cell {cell} does not match the coefficient set"
            )));
        }
        if let Some(&x) = cell.x.iter().find(|&&x| x >= self.q()) {
            return Err(Error::InvalidInput(format!("{x} is not a quandle element")));
        }
        if let (Some(y), Some(size)) = (cell.y, self.y_size()) {
            if y >= size {
                return Err(Error::InvalidInput(format!(
                    "{y} is not in the coefficient set"
                )));
            }
        }
        Ok(())
    }

    pub fn check_chain(&self, chain: &Chain) -> Result<()> {
        if chain.with_y() != self.with_y() {
            return Err(Error::InvalidInput(
                "chain does not match the coefficient set".into(),
            ));
        }
        chain.terms().try_for_each(|(c, _)| self.check_cell(c))
    }

    /// `∂_n(y, x₁,…,x_n) = Σ_i (−1)^i [(y, x₁,…,x̂_i,…,x_n)
    ///   − (y·x_i, x₁◁x_i,…,x_{i−1}◁x_i, x_{i+1},…,x_n)]`
    /// as sparse coordinates in the basis of `C_{n−1}`.
    pub fn cell_boundary(&self, n: usize, index: usize) -> Vec<(usize, i64)> {
        if n == 0 || (n == 1 && !self.with_y()) {
            return Vec::new();
        }
        let cell = self.cell(n, index);
        let x = &cell.x;
        let mut out: Vec<(usize, i64)> = Vec::with_capacity(2 * n);
        for i in 0..n {
            let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
            let xi = x[i];
            let mut face: Vec<usize> = Vec::with_capacity(n - 1);
            face.extend_from_slice(&x[..i]);
            face.extend_from_slice(&x[i + 1..]);
            let mut acted: Vec<usize> = Vec::with_capacity(n - 1);
            acted.extend(x[..i].iter().map(|&v| self.quandle.op(v, xi)));
            acted.extend_from_slice(&x[i + 1..]);
            let y_acted = cell
                .y
                .map(|y| self.action.as_ref().expect("with Y").act(y, xi));
            let a = Cell { y: cell.y, x: face }.index(self.q());
            let b = Cell {
                y: y_acted,
                x: acted,
            }
            .index(self.q());
            if a != b {
                out.push((a, sign));
                out.push((b, -sign));
            }
        }
        merge(out)
    }

    pub fn boundary(&self, chain: &Chain) -> Result<Chain> {
        self.check_chain(chain)?;
        let n = chain.degree();
        if n == 0 {
            return Err(Error::InvalidInput(
                "the boundary is defined from degree 1".into(),
            ));
        }
        let mut acc: Vec<(usize, i64)> = Vec::new();
        for (cell, k) in chain.terms() {
            acc.extend(
                self.cell_boundary(n, self.index(cell))
                    .into_iter()
                    .map(|(i, v)| (i, v * k)),
            );
        }
        Ok(Chain::from_sparse(
            n - 1,
            self.with_y(),
            self.q(),
            &merge(acc),
        ))
    }

    /// `τ_i(y, x) = (y·x_i, x₁◁x_i, …, x_{i−1}◁x_i, ρ(x_i), x_{i+1}, …, x_n)`
    /// with `i` counted from 1.
    pub fn pair_transform(&self, cell: &Cell, i: usize) -> Result<Cell> {
        let rho = self
            .rho
            .as_ref()
            .ok_or_else(|| Error::Precondition("no good involution given".into()))?;
        self.check_cell(cell)?;
        if i == 0 || i > cell.degree() {
            return Err(Error::InvalidInput(format!(
                "slot {i} is outside 1..={}",
                cell.degree()
            )));
        }
        let xi = cell.x[i - 1];
        let mut x = cell.x.clone();
        for v in &mut x[..i - 1] {
            *v = self.quandle.op(*v, xi);
        }
        x[i - 1] = rho.apply(xi);
        let y = cell
            .y
            .map(|y| self.action.as_ref().expect("with Y").act(y, xi));
        Ok(Cell { y, x })
    }

    fn slots(&self, n: usize) -> std::ops::RangeInclusive<usize> {
        match self.rho_range {
            RhoRange::Full => 1..=n,
            RhoRange::Restricted => 1..=n.saturating_sub(1),
        }
    }

    /// Generators of `D_n^Q`: tuples with two equal adjacent entries.
    pub fn degenerate_generators(&self, n: usize) -> Vec<Chain> {
        self.degenerate_indices(n)
            .map(|i| Chain::from_sparse(n, self.with_y(), self.q(), &[(i, 1)]))
            .collect()
    }

    fn degenerate_indices(&self, n: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.cell_count(n)).filter(move |&i| self.cell(n, i).x.windows(2).any(|w| w[0] == w[1]))
    }

    /// Generators `t + τ_i(t)` of `D_n^ρ`, deduplicated, in order of first
    /// appearance.
    pub fn rho_pair_generators(&self, n: usize) -> Result<Vec<Chain>> {
        Ok(self
            .rho_pair_vectors(n)?
            .into_iter()
            .map(|v| Chain::from_sparse(n, self.with_y(), self.q(), &v))
            .collect())
    }

    fn rho_pair_vectors(&self, n: usize) -> Result<Vec<Vec<(usize, i64)>>> {
        if self.rho.is_none() {
            return Err(Error::Precondition("no good involution given".into()));
        }
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for t in 0..self.cell_count(n) {
            let cell = self.cell(n, t);
            for i in self.slots(n) {
                let s = self.index(&self.pair_transform(&cell, i)?);
                if seen.insert((t.min(s), t.max(s))) {
                    out.push(if t == s {
                        vec![(t, 2)]
                    } else {
                        merge(vec![(t, 1), (s, 1)])
                    });
                }
            }
        }
        Ok(out)
    }

    /// Sparse generators of the flavor's subcomplex in degree `n`.
    pub fn subcomplex_vectors(&self, flavor: Flavor, n: usize) -> Result<Vec<Vec<(usize, i64)>>> {
        let mut out: Vec<Vec<(usize, i64)>> = Vec::new();
        if flavor.uses_degenerate() {
            out.extend(self.degenerate_indices(n).map(|i| vec![(i, 1)]));
        }
        if flavor.uses_rho() {
            out.extend(self.rho_pair_vectors(n)?);
        }
        Ok(out)
    }

    pub fn subcomplex_lattice(&self, flavor: Flavor, n: usize) -> Result<EchelonLattice> {
        let mut lattice = EchelonLattice::new(self.cell_count(n));
        for v in self.subcomplex_vectors(flavor, n)? {
            lattice.insert(to_ibig(&v));
        }
        Ok(lattice)
    }

    /// Whether `∂z` lies in the flavor's subcomplex.
    pub fn is_cycle(&self, flavor: Flavor, chain: &Chain) -> Result<bool> {
        let b = self.boundary(chain)?;
        if b.is_zero() {
            return Ok(true);
        }
        if flavor == Flavor::R {
            return Ok(false);
        }
        let lattice = self.subcomplex_lattice(flavor, chain.degree() - 1)?;
        Ok(lattice.contains(&to_ibig(&b.to_sparse(self.q()))))
    }

    /// Whether `z` lies in the flavor's subcomplex itself.
    pub fn in_subcomplex(&self, flavor: Flavor, chain: &Chain) -> Result<bool> {
        self.check_chain(chain)?;
        if chain.is_zero() {
            return Ok(true);
        }
        let lattice = self.subcomplex_lattice(flavor, chain.degree())?;
        Ok(lattice.contains(&to_ibig(&chain.to_sparse(self.q()))))
    }
}

/// Deletes the `y` slot: `(y, x₁,…,x_n) ↦ (x₁,…,x_n)`.
pub fn pi_forget(chain: &Chain) -> Chain {
    let mut out = Chain::zero(chain.degree(), false);
    for (cell, k) in chain.terms() {
        out.add_term(Cell::new(cell.x.clone()), k)
            .expect("same degree");
    }
    out
}

pub(crate) fn to_ibig(v: &[(usize, i64)]) -> SparseVec {
    v.iter()
        .filter(|(_, k)| *k != 0)
        .map(|&(i, k)| (i, IBig::from(k)))
        .collect()
}

/// Sorts by index, sums duplicates and drops zeros.
pub(crate) fn merge(mut v: Vec<(usize, i64)>) -> Vec<(usize, i64)> {
    v.sort_unstable_by_key(|&(i, _)| i);
    let mut out: Vec<(usize, i64)> = Vec::with_capacity(v.len());
    for (i, k) in v {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc += k,
            _ => out.push((i, k)),
        }
        if out.last().is_some_and(|(_, acc)| *acc == 0) {
            out.pop();
        }
    }
    out
}
