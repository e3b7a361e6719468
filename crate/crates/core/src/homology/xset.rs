use serde::Serialize;

use crate::error::{Error, Result};
use crate::quandle::{FiniteQuandle, GoodInvolution};

/// A right action of the quandle's associated group on a finite set `Y`,
/// given by the translations `y ↦ y·x` for each quandle element `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XSetAction {
    labels: Vec<String>,
    // translation[y][x] = y·x
    translation: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum XSetViolation {
    /// `y ↦ y·x` is not a bijection of `Y`.
    NotBijective { x: usize },
    /// `y·(x₁◁x₂) ≠ ((y·x₂⁻¹)·x₁)·x₂`.
    Conjugation { y: usize, x1: usize, x2: usize },
    /// `y·ρ(x) ≠ y·x⁻¹`.
    Inversion { y: usize, x: usize },
}

impl XSetAction {
    pub fn new(
        labels: Vec<String>,
        translation: Vec<Vec<usize>>,
        quandle_order: usize,
    ) -> Result<Self> {
        if translation.len() != labels.len() {
            return Err(Error::SizeMismatch {
                expected: labels.len(),
                found: translation.len(),
            });
        }
        for row in &translation {
            if row.len() != quandle_order {
                return Err(Error::SizeMismatch {
                    expected: quandle_order,
                    found: row.len(),
                });
            }
            if row.iter().any(|&v| v >= labels.len()) {
                return Err(Error::InvalidInput("translation leaves the set".into()));
            }
        }
        Ok(Self {
            labels,
            translation,
        })
    }

    /// `Y = {α, β}` with every translation the swap.
    pub fn checkerboard(quandle: &FiniteQuandle) -> Self {
        let q = quandle.size();
        Self {
            labels: vec!["α".into(), "β".into()],
            translation: vec![vec![1; q], vec![0; q]],
        }
    }

    /// One-point set.
    pub fn trivial(quandle: &FiniteQuandle) -> Self {
        Self {
            labels: vec!["*".into()],
            translation: vec![vec![0; quandle.size()]],
        }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    #[inline]
    pub fn act(&self, y: usize, x: usize) -> usize {
        self.translation[y][x]
    }

    fn inverse_translation(&self, x: usize) -> Option<Vec<usize>> {
        let mut inv = vec![usize::MAX; self.size()];
        for y in 0..self.size() {
            let v = self.act(y, x);
            if inv[v] != usize::MAX {
                return None;
            }
            inv[v] = y;
        }
        Some(inv)
    }
}

/// Returns the first violated action axiom, or `None`.
pub fn verify_xset_action(
    quandle: &FiniteQuandle,
    rho: &GoodInvolution,
    action: &XSetAction,
) -> Result<Option<XSetViolation>> {
    let q = quandle.size();
    if action.translation.first().is_some_and(|r| r.len() != q) {
        return Err(Error::SizeMismatch {
            expected: q,
            found: action.translation[0].len(),
        });
    }
    let mut inverses = Vec::with_capacity(q);
    for x in 0..q {
        match action.inverse_translation(x) {
            Some(inv) => inverses.push(inv),
            None => return Ok(Some(XSetViolation::NotBijective { x })),
        }
    }
    for y in 0..action.size() {
        for x1 in 0..q {
            for x2 in 0..q {
                let lhs = action.act(y, quandle.op(x1, x2));
                let rhs = action.act(action.act(inverses[x2][y], x1), x2);
                if lhs != rhs {
                    return Ok(Some(XSetViolation::Conjugation { y, x1, x2 }));
                }
            }
        }
    }
    for y in 0..action.size() {
        for x in 0..q {
            if action.act(y, rho.apply(x)) != inverses[x][y] {
                return Ok(Some(XSetViolation::Inversion { y, x }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::build_tilde_r;

    #[test]
    fn checkerboard_is_an_action() {
        let t = build_tilde_r(1).unwrap();
        let y = XSetAction::checkerboard(&t.quandle);
        for u in 0..6 {
            assert_eq!(y.act(0, u), 1);
            assert_eq!(y.act(y.act(1, u), u), 1);
        }
        assert_eq!(verify_xset_action(&t.quandle, &t.rho, &y).unwrap(), None);
        let one = XSetAction::trivial(&t.quandle);
        assert_eq!(verify_xset_action(&t.quandle, &t.rho, &one).unwrap(), None);
    }

    #[test]
    fn broken_actions_are_caught() {
        let t = build_tilde_r(1).unwrap();
        // swap only under element 0: breaks the conjugation rule
        let mut rows = vec![vec![0; 6], vec![1; 6]];
        rows[0][0] = 1;
        rows[1][0] = 0;
        let y = XSetAction::new(vec!["a".into(), "b".into()], rows, 6).unwrap();
        assert!(verify_xset_action(&t.quandle, &t.rho, &y)
            .unwrap()
            .is_some());
        let collapse = XSetAction::new(
            vec!["a".into(), "b".into()],
            vec![vec![0; 6], vec![0; 6]],
            6,
        )
        .unwrap();
        assert_eq!(
            verify_xset_action(&t.quandle, &t.rho, &collapse).unwrap(),
            Some(XSetViolation::NotBijective { x: 0 })
        );
    }
}
