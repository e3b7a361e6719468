//! Finite quandles given by their operation tables.
//!
//! `table[x][y] = x ◁ y`: rows are the left argument, columns the right one.
//! Elements are always the indices `0..size`; labels are for display only.

mod extension;
mod involution;
mod tilde;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GeneratedGroup;
use crate::signed_perm::SignedPermutation;

pub use extension::{
    check_extension, cocycle_extension, symmetric_coboundary, verify_symmetric_2cocycle,
    CocycleReport, CocycleViolation, CoefficientGroup, QuandleHom, TwoCochain,
};
pub use involution::{
    enumerate_good_involutions, verify_good_involution, GoodInvolution, InvolutionViolation,
};
pub use tilde::{build_tilde_r, TildeDihedral};

/// Coset data kept alongside quandles built as `(G, H, ζ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetProvenance {
    pub representatives: Vec<SignedPermutation>,
    pub zeta: SignedPermutation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteQuandle {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    // x ◁ ȳ, present when every column is a permutation
    inverse: Option<Vec<Vec<usize>>>,
    provenance: Option<CosetProvenance>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    /// First `x` with `x ◁ x ≠ x`.
    pub idempotency: Option<usize>,
    /// First column `y` whose map `x ↦ x ◁ y` is not a bijection, with a
    /// value hit twice.
    pub right_invertibility: Option<(usize, usize)>,
    /// First `(x, y, z)` with `(x◁y)◁z ≠ (x◁z)◁(y◁z)`.
    pub self_distributivity: Option<(usize, usize, usize)>,
}

impl AxiomReport {
    pub fn is_ok(&self) -> bool {
        self.idempotency.is_none()
            && self.right_invertibility.is_none()
            && self.self_distributivity.is_none()
    }
}

impl FiniteQuandle {
    /// Wraps an operation table. Only the shape is checked here; use
    /// [`FiniteQuandle::verify_axioms`] for the quandle axioms.
    pub fn from_table(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let q = table.len();
        if labels.len() != q {
            return Err(Error::SizeMismatch {
                expected: q,
                found: labels.len(),
            });
        }
        for (x, row) in table.iter().enumerate() {
            if row.len() != q {
                return Err(Error::InvalidInput(format!(
                    "row {x} has {} entries, expected {q}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= q) {
                return Err(Error::InvalidInput(format!(
                    "row {x} contains out-of-range element {bad}"
                )));
            }
        }
        let inverse = invert_columns(&table);
        Ok(Self {
            labels,
            table,
            inverse,
            provenance: None,
        })
    }

    pub fn with_index_labels(table: Vec<Vec<usize>>) -> Result<Self> {
        let labels = (0..table.len()).map(|i| i.to_string()).collect();
        Self::from_table(labels, table)
    }

    /// The one-to-one-quandle on `size` elements: `x ◁ y = x`.
    pub fn trivial(size: usize) -> Self {
        let table = (0..size).map(|x| vec![x; size]).collect();
        Self::with_index_labels(table).expect("well-formed table")
    }

    /// `R_m`: `i ◁ j = 2j − i (mod m)`.
    pub fn dihedral(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidInput(
                "dihedral quandle order must be positive".into(),
            ));
        }
        let table = (0..m)
            .map(|i| (0..m).map(|j| (2 * j + m - i) % m).collect())
            .collect();
        Self::with_index_labels(table)
    }

    /// The coset quandle `(G, H, ζ)` with `Hu ◁ Hv = H u v⁻¹ ζ v`, cosets
    /// ordered by canonical representative.
    pub fn coset(
        group: &GeneratedGroup,
        subgroup: &GeneratedGroup,
        zeta: &SignedPermutation,
    ) -> Result<Self> {
        let partition = group.coset_partition(subgroup)?;
        let reps: Vec<_> = partition
            .cosets()
            .iter()
            .map(|c| c.representative.clone())
            .collect();
        Self::coset_with_representatives(group, subgroup, zeta, &reps)
    }

    /// Same as [`FiniteQuandle::coset`] but with element `i` being the coset
    /// of `representatives[i]`.
    pub fn coset_with_representatives(
        group: &GeneratedGroup,
        subgroup: &GeneratedGroup,
        zeta: &SignedPermutation,
        representatives: &[SignedPermutation],
    ) -> Result<Self> {
        if !subgroup.contains(zeta) {
            return Err(Error::Precondition(format!(
                "zeta {zeta} is not in the subgroup"
            )));
        }
        if let Some(h) = subgroup
            .elements()
            .iter()
            .find(|h| h.compose_unchecked(zeta) != zeta.compose_unchecked(h))
        {
            return Err(Error::Precondition(format!(
                "zeta {zeta} does not commute with subgroup element {h}"
            )));
        }
        let partition = group.coset_partition(subgroup)?;
        let mut position = vec![usize::MAX; partition.len()];
        for (i, r) in representatives.iter().enumerate() {
            let c = partition
                .coset_of(group, r)
                .ok_or_else(|| Error::NotInGroup(r.format_notation()))?;
            if position[c] != usize::MAX {
                return Err(Error::InvalidInput(format!(
                    "representatives {i} and {} share a coset",
                    position[c]
                )));
            }
            position[c] = i;
        }
        if representatives.len() != partition.len() {
            return Err(Error::SizeMismatch {
                expected: partition.len(),
                found: representatives.len(),
            });
        }
        let q = representatives.len();
        let mut table = vec![vec![0usize; q]; q];
        for (i, u) in representatives.iter().enumerate() {
            for (j, v) in representatives.iter().enumerate() {
                let w = u
                    .compose_unchecked(&v.inverse())
                    .compose_unchecked(zeta)
                    .compose_unchecked(v);
                let c = partition.coset_of(group, &w).expect("closed group");
                table[i][j] = position[c];
            }
        }
        let labels = (0..q).map(|i| i.to_string()).collect();
        let mut quandle = Self::from_table(labels, table)?;
        quandle.provenance = Some(CosetProvenance {
            representatives: representatives.to_vec(),
            zeta: zeta.clone(),
        });
        Ok(quandle)
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn provenance(&self) -> Option<&CosetProvenance> {
        self.provenance.as_ref()
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    /// `x ◁ ȳ`, the unique `z` with `z ◁ y = x`. Panics if the table is not
    /// right-invertible.
    #[inline]
    pub fn op_inv(&self, x: usize, y: usize) -> usize {
        self.inverse
            .as_ref()
            .expect("operation table is not right-invertible")[x][y]
    }

    pub fn is_right_invertible(&self) -> bool {
        self.inverse.is_some()
    }

    pub fn verify_axioms(&self) -> AxiomReport {
        let q = self.size();
        let mut report = AxiomReport {
            idempotency: (0..q).find(|&x| self.op(x, x) != x),
            ..Default::default()
        };
        'cols: for y in 0..q {
            let mut hit = vec![false; q];
            for x in 0..q {
                let v = self.op(x, y);
                if std::mem::replace(&mut hit[v], true) {
                    report.right_invertibility = Some((y, v));
                    break 'cols;
                }
            }
        }
        'outer: for x in 0..q {
            for y in 0..q {
                for z in 0..q {
                    if self.op(self.op(x, y), z) != self.op(self.op(x, z), self.op(y, z)) {
                        report.self_distributivity = Some((x, y, z));
                        break 'outer;
                    }
                }
            }
        }
        report
    }

    /// Transitivity of the inner automorphism group on the elements.
    pub fn is_connected(&self) -> bool {
        let q = self.size();
        if q == 0 {
            return true;
        }
        let mut seen = vec![false; q];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for c in 0..q {
                let mut next = vec![self.op(x, c)];
                if let Some(inv) = &self.inverse {
                    next.push(inv[x][c]);
                }
                for z in next {
                    if !seen[z] {
                        seen[z] = true;
                        queue.push_back(z);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// `(x ◁ y) ◁ y = x` for all `x, y`.
    pub fn is_involutory(&self) -> bool {
        let q = self.size();
        (0..q).all(|x| (0..q).all(|y| self.op(self.op(x, y), y) == x))
    }

    pub fn to_file(&self, rho: Option<&GoodInvolution>) -> QuandleFile {
        QuandleFile {
            labels: self.labels.clone(),
            table: self.table.clone(),
            rho: rho.map(|r| r.as_slice().to_vec()),
        }
    }

    pub fn from_file(file: &QuandleFile) -> Result<(Self, Option<GoodInvolution>)> {
        let quandle = Self::from_table(file.labels.clone(), file.table.clone())?;
        let rho = match &file.rho {
            Some(r) => Some(GoodInvolution::new(r.clone(), quandle.size())?),
            None => None,
        };
        Ok((quandle, rho))
    }

    /// CSV with a header row of labels; row `x` lists `x ◁ y` for every `y`.
    pub fn to_csv(&self) -> String {
        fn field(s: &str) -> String {
            if s.contains([',', '"', '\n']) {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.to_string()
            }
        }
        let mut out = String::from("◁");
        for l in &self.labels {
            out.push(',');
            out.push_str(&field(l));
        }
        out.push('\n');
        for (x, row) in self.table.iter().enumerate() {
            out.push_str(&field(&self.labels[x]));
            for &v in row {
                out.push(',');
                out.push_str(&field(&self.labels[v]));
            }
            out.push('\n');
        }
        out
    }
}

fn invert_columns(table: &[Vec<usize>]) -> Option<Vec<Vec<usize>>> {
    let q = table.len();
    let mut inverse = vec![vec![usize::MAX; q]; q];
    for y in 0..q {
        for x in 0..q {
            let v = table[x][y];
            if inverse[v][y] != usize::MAX {
                return None;
            }
            inverse[v][y] = x;
        }
    }
    Some(inverse)
}

/// On-disk quandle format: `{"labels": [...], "table": [[...]], "rho": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuandleFile {
    pub labels: Vec<String>,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<Vec<usize>>,
}
