use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A basis tuple `(y, x₁, …, x_n)`, or `(x₁, …, x_n)` when there is no
/// coefficient set. Ordered lexicographically on `(y, x₁, …)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub y: Option<usize>,
    pub x: Vec<usize>,
}

impl Cell {
    pub fn new(x: Vec<usize>) -> Self {
        Self { y: None, x }
    }

    pub fn with_y(y: usize, x: Vec<usize>) -> Self {
        Self { y: Some(y), x }
    }

    pub fn degree(&self) -> usize {
        self.x.len()
    }

    /// Position in the lexicographic enumeration of all cells of this shape
    /// over a quandle of order `q`.
    pub fn index(&self, q: usize) -> usize {
        let x = self.x.iter().fold(0, |acc, &v| acc * q + v);
        match self.y {
            Some(y) => y * q.pow(self.x.len() as u32) + x,
            None => x,
        }
    }

    pub fn from_index(mut index: usize, q: usize, degree: usize, with_y: bool) -> Self {
        let mut x = vec![0; degree];
        for slot in x.iter_mut().rev() {
            *slot = index % q;
            index /= q;
        }
        Self {
            y: with_y.then_some(index),
            x,
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::with_capacity(self.x.len() + 1);
        if let Some(y) = self.y {
            parts.push(format!("y{y}"));
        }
        parts.extend(self.x.iter().map(ToString::to_string));
        write!(f, "({})", parts.join(","))
    }
}

/// Finitely supported integer combination of cells of one degree.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Chain {
    degree: usize,
    with_y: bool,
    terms: BTreeMap<Cell, i64>,
}

impl Chain {
    pub fn zero(degree: usize, with_y: bool) -> Self {
        Self {
            degree,
            with_y,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        degree: usize,
        with_y: bool,
        terms: impl IntoIterator<Item = (Cell, i64)>,
    ) -> Result<Self> {
        let mut chain = Self::zero(degree, with_y);
        for (cell, coeff) in terms {
            chain.add_term(cell, coeff)?;
        }
        Ok(chain)
    }

    /// Chain over tuples without a `y` slot.
    pub fn plain(degree: usize, terms: &[(i64, &[usize])]) -> Result<Self> {
        Self::from_terms(
            degree,
            false,
            terms.iter().map(|(c, x)| (Cell::new(x.to_vec()), *c)),
        )
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn with_y(&self) -> bool {
        self.with_y
    }

    pub fn add_term(&mut self, cell: Cell, coeff: i64) -> Result<()> {
        if cell.degree() != self.degree {
            return Err(Error::SizeMismatch {
                expected: self.degree,
                found: cell.degree(),
            });
        }
        if cell.y.is_some() != self.with_y {
            return Err(Error::InvalidInput(format!(
                "cell {cell} does not match the chain's coefficient set"
            )));
        }
        if coeff == 0 {
            return Ok(());
        }
        match self.terms.entry(cell) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
        Ok(())
    }

    pub fn coeff(&self, cell: &Cell) -> i64 {
        self.terms.get(cell).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Cell, i64)> {
        self.terms.iter().map(|(c, &v)| (c, v))
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero(self.degree, self.with_y);
        }
        Self {
            degree: self.degree,
            with_y: self.with_y,
            terms: self
                .terms
                .iter()
                .map(|(c, &v)| (c.clone(), v * k))
                .collect(),
        }
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (c, v) in other.terms() {
            out.add_term(c.clone(), v)?;
        }
        Ok(out)
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.plus(&other.scaled(-1))
    }

    /// Sparse coordinates in the lexicographic cell basis.
    pub fn to_sparse(&self, q: usize) -> Vec<(usize, i64)> {
        let mut v: Vec<(usize, i64)> = self.terms.iter().map(|(c, &k)| (c.index(q), k)).collect();
        v.sort_unstable_by_key(|&(i, _)| i);
        v
    }

    pub fn from_sparse(degree: usize, with_y: bool, q: usize, v: &[(usize, i64)]) -> Self {
        let terms = v
            .iter()
            .filter(|(_, k)| *k != 0)
            .map(|&(i, k)| (Cell::from_index(i, q, degree, with_y), k))
            .collect();
        Self {
            degree,
            with_y,
            terms,
        }
    }

    /// JSON form with `y` written by label.
    pub fn to_file(&self, y_labels: Option<&[String]>) -> ChainFile {
        let terms = self
            .terms
            .iter()
            .map(|(c, &coeff)| ChainTerm {
                coeff,
                y: c.y.map(|y| {
                    y_labels
                        .and_then(|l| l.get(y).cloned())
                        .unwrap_or_else(|| y.to_string())
                }),
                x: c.x.clone(),
            })
            .collect();
        ChainFile {
            degree: self.degree,
            terms,
        }
    }

    pub fn from_file(file: &ChainFile, y_labels: Option<&[String]>) -> Result<Self> {
        let with_y = file.terms.first().is_some_and(|t| t.y.is_some());
        let mut chain = Self::zero(file.degree, with_y);
        for t in &file.terms {
            let y = match (&t.y, y_labels) {
                (None, _) => None,
                (Some(label), labels) => {
                    let found = labels.and_then(|l| l.iter().position(|s| s == label));
                    Some(match found {
                        Some(i) => i,
                        None => label.parse().map_err(|_| {
                            Error::InvalidInput(format!(
                                "unknown coefficient-set element {label:?}"
                            ))
                        })?,
                    })
                }
            };
            chain.add_term(Cell { y, x: t.x.clone() }, t.coeff)?;
        }
        Ok(chain)
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, &v)) in self.terms.iter().enumerate() {
            let sign = if v < 0 {
                "-"
            } else if i > 0 {
                "+"
            } else {
                ""
            };
            let mag = v.unsigned_abs();
            if mag == 1 {
                write!(f, "{sign}{c}")?;
            } else {
                write!(f, "{sign}{mag}{c}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainTerm {
    pub coeff: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<String>,
    pub x: Vec<usize>,
}

/// `{"degree": n, "terms": [{"coeff": k, "y": "α", "x": [..]}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainFile {
    pub degree: usize,
    pub terms: Vec<ChainTerm>,
}

/// Integer-valued function on the cells of one degree, stored densely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    q: usize,
    y_size: Option<usize>,
    values: Vec<i64>,
}

impl Cochain {
    pub fn zero(degree: usize, q: usize, y_size: Option<usize>) -> Self {
        let len = y_size.unwrap_or(1) * q.pow(degree as u32);
        Self {
            degree,
            q,
            y_size,
            values: vec![0; len],
        }
    }

    /// The characteristic function of one cell.
    pub fn characteristic(cell: &Cell, q: usize, y_size: Option<usize>) -> Self {
        let mut c = Self::zero(cell.degree(), q, y_size);
        c.values[cell.index(q)] = 1;
        c
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn quandle_order(&self) -> usize {
        self.q
    }

    pub fn y_size(&self) -> Option<usize> {
        self.y_size
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn value(&self, cell: &Cell) -> i64 {
        self.values[cell.index(self.q)]
    }

    pub fn value_at(&self, index: usize) -> i64 {
        self.values[index]
    }

    pub fn add_at(&mut self, cell: &Cell, v: i64) {
        let i = cell.index(self.q);
        self.values[i] += v;
    }

    pub fn from_values(
        degree: usize,
        q: usize,
        y_size: Option<usize>,
        values: Vec<i64>,
    ) -> Result<Self> {
        let len = y_size.unwrap_or(1) * q.pow(degree as u32);
        if values.len() != len {
            return Err(Error::SizeMismatch {
                expected: len,
                found: values.len(),
            });
        }
        Ok(Self {
            degree,
            q,
            y_size,
            values,
        })
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self {
            values: self.values.iter().map(|v| v * k).collect(),
            ..self.clone()
        }
    }

    pub fn plus(&self, other: &Self, k: i64) -> Result<Self> {
        if (self.degree, self.q, self.y_size) != (other.degree, other.q, other.y_size) {
            return Err(Error::InvalidInput(
                "cochains live on different cell sets".into(),
            ));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + k * b)
            .collect();
        Ok(Self {
            values,
            ..self.clone()
        })
    }

    pub fn evaluate(&self, chain: &Chain) -> Result<i64> {
        if chain.degree() != self.degree || chain.with_y() != self.y_size.is_some() {
            return Err(Error::InvalidInput(format!(
                "cannot evaluate a degree-{} cochain on a degree-{} chain",
                self.degree,
                chain.degree()
            )));
        }
        let mut total = 0i64;
        for (cell, k) in chain.terms() {
            if cell.x.iter().any(|&x| x >= self.q)
                || cell.y.is_some_and(|y| y >= self.y_size.unwrap_or(0))
            {
                return Err(Error::InvalidInput(format!(
                    "cell {cell} is outside the cochain's domain"
                )));
            }
            total += k * self.value(cell);
        }
        Ok(total)
    }

    /// `(cell, value)` for every nonzero value, in cell order.
    pub fn support(&self) -> Vec<(Cell, i64)> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0)
            .map(|(i, &v)| {
                (
                    Cell::from_index(i, self.q, self.degree, self.y_size.is_some()),
                    v,
                )
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip_and_order() {
        let q = 6;
        for i in 0..2 * 216 {
            let c = Cell::from_index(i, q, 3, true);
            assert_eq!(c.index(q), i);
        }
        let mut cells: Vec<Cell> = (0..216).map(|i| Cell::from_index(i, q, 3, false)).collect();
        let sorted = {
            let mut s = cells.clone();
            s.sort();
            s
        };
        assert_eq!(cells, sorted);
        cells.dedup();
        assert_eq!(cells.len(), 216);
    }

    #[test]
    fn chain_arithmetic_drops_zeros() {
        let a = Chain::plain(2, &[(1, &[0, 1]), (2, &[1, 0])]).unwrap();
        let b = Chain::plain(2, &[(-1, &[0, 1])]).unwrap();
        let s = a.plus(&b).unwrap();
        assert_eq!(s.support_size(), 1);
        assert_eq!(s.coeff(&Cell::new(vec![1, 0])), 2);
        assert!(a.minus(&a).unwrap().is_zero());
        assert!(Chain::plain(2, &[(1, &[0])]).is_err());
        assert_eq!(s.to_string(), "2(1,0)");
    }

    #[test]
    fn json_round_trip() {
        let labels = vec!["α".to_string(), "β".to_string()];
        let c = Chain::from_terms(
            2,
            true,
            [
                (Cell::with_y(1, vec![0, 2]), -3),
                (Cell::with_y(0, vec![1, 1]), 1),
            ],
        )
        .unwrap();
        let file = c.to_file(Some(&labels));
        let text = serde_json::to_string(&file).unwrap();
        assert_eq!(
            text,
            r#"{"degree":2,"terms":[{"coeff":1,"y":"α","x":[1,1]},{"coeff":-3,"y":"β","x":[0,2]}]}"#
        );
        let back = Chain::from_file(&serde_json::from_str(&text).unwrap(), Some(&labels)).unwrap();
        assert_eq!(back, c);
        let plain = Chain::plain(1, &[(4, &[2])]).unwrap();
        assert_eq!(Chain::from_file(&plain.to_file(None), None).unwrap(), plain);
    }

    #[test]
    fn cochain_evaluation() {
        let chi = Cochain::characteristic(&Cell::new(vec![0, 1, 0]), 6, None);
        let z = Chain::plain(3, &[(5, &[0, 1, 0]), (2, &[0, 1, 1])]).unwrap();
        assert_eq!(chi.evaluate(&z).unwrap(), 5);
        assert_eq!(chi.plus(&chi, 2).unwrap().evaluate(&z).unwrap(), 15);
        assert!(chi
            .evaluate(&Chain::plain(2, &[(1, &[0, 0])]).unwrap())
            .is_err());
        assert_eq!(chi.support(), vec![(Cell::new(vec![0, 1, 0]), 1)]);
    }
}
