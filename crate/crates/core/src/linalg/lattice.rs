use std::collections::BTreeMap;

use dashu_int::ops::{DivEuclid, ExtendedGcd};
use dashu_int::IBig;

/// Sparse integer vector: `(index, value)` pairs, strictly increasing
/// indices, no stored zeros.
pub type SparseVec = Vec<(usize, IBig)>;

pub fn sparse_from_dense(dense: &[IBig]) -> SparseVec {
    dense
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (i, v.clone()))
        .collect()
}

pub fn sparse_to_dense(v: &[(usize, IBig)], dim: usize) -> Vec<IBig> {
    let mut out = vec![IBig::ZERO; dim];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// `ca · a + cb · b`.
pub fn combine(a: &[(usize, IBig)], ca: &IBig, b: &[(usize, IBig)], cb: &IBig) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (idx, val) = match (a.get(i), b.get(j)) {
            (Some((ia, va)), Some((ib, _))) if ia < ib => {
                i += 1;
                (*ia, ca * va)
            }
            (Some((ia, _)), Some((ib, vb))) if ib < ia => {
                j += 1;
                (*ib, cb * vb)
            }
            (Some((ia, va)), Some((_, vb))) => {
                i += 1;
                j += 1;
                (*ia, ca * va + cb * vb)
            }
            (Some((ia, va)), None) => {
                i += 1;
                (*ia, ca * va)
            }
            (None, Some((ib, vb))) => {
                j += 1;
                (*ib, cb * vb)
            }
            (None, None) => unreachable!(),
        };
        if !val.is_zero() {
            out.push((idx, val));
        }
    }
    out
}

/// A sublattice of `Zᵈ` kept as a row-echelon basis with distinct pivots and
/// positive leading entries.
#[derive(Clone, Debug, Default)]
pub struct EchelonLattice {
    dim: usize,
    rows: BTreeMap<usize, SparseVec>,
}

impl EchelonLattice {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            rows: BTreeMap::new(),
        }
    }

    pub fn full(dim: usize) -> Self {
        let rows = (0..dim).map(|i| (i, vec![(i, IBig::ONE)])).collect();
        Self { dim, rows }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Basis rows in pivot order.
    pub fn basis(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    /// Adds `v` to the generating set. Returns true if the rank grew.
    pub fn insert(&mut self, mut v: SparseVec) -> bool {
        let rank_before = self.rows.len();
        loop {
            let Some((p, b)) = v.first().cloned() else {
                return false;
            };
            let Some(row) = self.rows.get_mut(&p) else {
                if b < IBig::ZERO {
                    for (_, x) in &mut v {
                        *x = -std::mem::take(x);
                    }
                }
                self.rows.insert(p, v);
                self.settle(p);
                return self.rows.len() > rank_before;
            };
            let a = row[0].1.clone();
            if (&b % &a).is_zero() {
                v = combine(&v, &IBig::ONE, row, &-(&b / &a));
                continue;
            }
            let (g, s, t) = (&a).gcd_ext(&b);
            let g = IBig::from(g);
            let new_row = combine(row, &s, &v, &t);
            v = combine(&v, &(&a / &g), row, &-(&b / &g));
            *row = new_row;
            self.settle(p);
        }
    }

    // Keeps entries at pivot columns reduced into [0, pivot) after row `p`
    // changed, which stops coefficient growth.
    fn settle(&mut self, p: usize) {
        self.size_reduce(p, p + 1);
        let above: Vec<usize> = self
            .rows
            .range(..p)
            .filter(|(_, r)| r.binary_search_by_key(&p, |(i, _)| *i).is_ok())
            .map(|(t, _)| *t)
            .collect();
        for t in above {
            self.size_reduce(t, p);
        }
    }

    fn size_reduce(&mut self, t: usize, from: usize) {
        let mut pos = from;
        loop {
            let row = &self.rows[&t];
            let next = row
                .iter()
                .find(|(i, _)| *i >= pos && *i != t && self.rows.contains_key(i))
                .map(|(i, v)| (*i, v.clone()));
            let Some((i, val)) = next else {
                return;
            };
            let other = &self.rows[&i];
            let q = (&val).div_euclid(&other[0].1);
            if !q.is_zero() {
                let reduced = combine(row, &IBig::ONE, other, &-q);
                self.rows.insert(t, reduced);
            }
            pos = i + 1;
        }
    }

    /// Coefficients of `v` over the basis rows (in pivot order), or None if
    /// `v` is not in the lattice.
    pub fn coordinates(&self, v: &[(usize, IBig)]) -> Option<Vec<IBig>> {
        let pivots = self.pivots();
        let mut coeffs = vec![IBig::ZERO; pivots.len()];
        let mut rest: SparseVec = v.to_vec();
        while let Some((p, b)) = rest.first().cloned() {
            let row = self.rows.get(&p)?;
            let a = &row[0].1;
            if !(&b % a).is_zero() {
                return None;
            }
            let q = &b / a;
            rest = combine(&rest, &IBig::ONE, row, &-&q);
            coeffs[pivots.binary_search(&p).expect("pivot present")] = q;
        }
        Some(coeffs)
    }

    pub fn contains(&self, v: &[(usize, IBig)]) -> bool {
        self.coordinates(v).is_some()
    }
}
