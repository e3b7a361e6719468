use dashu_int::ops::Abs;
use dashu_int::IBig;

use super::IntMatrix;
use crate::error::Result;

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal,
/// `d₀ | d₁ | … | d_{rank−1}` all positive.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: Vec<IBig>,
    pub rank: usize,
    pub left: Option<IntMatrix>,
    pub right: Option<IntMatrix>,
}

impl SmithForm {
    pub fn invariant_factors(&self) -> &[IBig] {
        &self.diagonal[..self.rank]
    }

    pub fn diagonal_matrix(&self, rows: usize, cols: usize) -> IntMatrix {
        let mut d = IntMatrix::zeros(rows, cols);
        for (i, v) in self.diagonal.iter().enumerate() {
            d.set(i, i, v.clone());
        }
        d
    }

    /// Recomputes `U·M·V`, compares it with `D`, checks the divisibility
    /// chain and that both transforms have determinant ±1.
    pub fn verify(&self, m: &IntMatrix) -> Result<bool> {
        let (Some(u), Some(v)) = (&self.left, &self.right) else {
            return Ok(false);
        };
        let product = u.mul(m)?.mul(v)?;
        if product != self.diagonal_matrix(m.rows(), m.cols()) {
            return Ok(false);
        }
        let chain = self.diagonal[..self.rank].iter().all(|d| *d > IBig::ZERO)
            && self.diagonal[self.rank..].iter().all(IBig::is_zero)
            && self.diagonal[..self.rank]
                .windows(2)
                .all(|w| (&w[1] % &w[0]).is_zero());
        let unit = |x: IBig| x.abs() == IBig::ONE;
        Ok(chain && unit(u.determinant()?) && unit(v.determinant()?))
    }
}

/// Smith normal form, optionally tracking the row transform `U` and the
/// column transform `V`.
pub fn smith_normal_form(m: &IntMatrix, track: bool) -> SmithForm {
    let (r, c) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = track.then(|| IntMatrix::identity(r));
    let mut v = track.then(|| IntMatrix::identity(c));
    let mut rank = 0;

    for t in 0..r.min(c) {
        loop {
            let Some((pi, pj)) = smallest_entry(&a, t) else {
                return finish(a, rank, u, v);
            };
            a.swap_rows(t, pi);
            if let Some(u) = u.as_mut() {
                u.swap_rows(t, pi);
            }
            a.swap_cols(t, pj);
            if let Some(v) = v.as_mut() {
                v.swap_cols(t, pj);
            }

            let pivot = a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..r {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = a.get(i, t) / &pivot;
                let neg = -q;
                a.add_row_multiple(i, t, &neg);
                if let Some(u) = u.as_mut() {
                    u.add_row_multiple(i, t, &neg);
                }
                clean &= a.get(i, t).is_zero();
            }
            for j in t + 1..c {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = a.get(t, j) / &pivot;
                let neg = -q;
                a.add_col_multiple(j, t, &neg);
                if let Some(v) = v.as_mut() {
                    v.add_col_multiple(j, t, &neg);
                }
                clean &= a.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            if (&pivot).abs() != IBig::ONE {
                let offending =
                    (t + 1..r).find(|&i| (t + 1..c).any(|j| !(a.get(i, j) % &pivot).is_zero()));
                if let Some(i) = offending {
                    a.add_row_multiple(t, i, &IBig::ONE);
                    if let Some(u) = u.as_mut() {
                        u.add_row_multiple(t, i, &IBig::ONE);
                    }
                    continue;
                }
            }
            break;
        }
        if *a.get(t, t) < IBig::ZERO {
            a.negate_row(t);
            if let Some(u) = u.as_mut() {
                u.negate_row(t);
            }
        }
        rank = t + 1;
    }
    finish(a, rank, u, v)
}

fn finish(
    a: IntMatrix,
    rank: usize,
    left: Option<IntMatrix>,
    right: Option<IntMatrix>,
) -> SmithForm {
    let diagonal = (0..a.rows().min(a.cols()))
        .map(|i| a.get(i, i).clone())
        .collect();
    SmithForm {
        diagonal,
        rank,
        left,
        right,
    }
}

// Position of a nonzero entry of least magnitude in the trailing block, or
// None if the block is zero.
fn smallest_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), IBig)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            let mag = x.abs();
            if mag == IBig::ONE {
                return Some((i, j));
            }
            if best.as_ref().is_none_or(|(_, b)| mag < *b) {
                best = Some(((i, j), mag));
            }
        }
    }
    best.map(|(p, _)| p)
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn smith(rows: &[Vec<i64>]) -> (IntMatrix, SmithForm) {
        let m = IntMatrix::from_rows(rows).unwrap();
        let s = smith_normal_form(&m, true);
        (m, s)
    }

    #[test]
    fn textbook_examples() {
        let (m, s) = smith(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert!(s.verify(&m).unwrap());
        assert_eq!(
            s.invariant_factors(),
            &[IBig::from(2), IBig::from(6), IBig::from(12)]
        );

        // Z/2 ⊕ Z/3 ≅ Z/6
        let (m, s) = smith(&[vec![2, 0], vec![0, 3]]);
        assert!(s.verify(&m).unwrap());
        assert_eq!(s.invariant_factors(), &[IBig::ONE, IBig::from(6)]);

        let (m, s) = smith(&[vec![0, 0, 0], vec![0, 0, 0]]);
        assert!(s.verify(&m).unwrap());
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn degenerate_shapes() {
        let empty = IntMatrix::zeros(0, 4);
        let s = smith_normal_form(&empty, true);
        assert_eq!(s.rank, 0);
        assert_eq!(s.right.as_ref().unwrap(), &IntMatrix::identity(4));
        assert!(s.verify(&empty).unwrap());
        let (m, s) = smith(&[vec![0, 5, 0, 10]]);
        assert!(s.verify(&m).unwrap());
        assert_eq!(s.invariant_factors(), &[IBig::from(5)]);
    }

    // Determinantal divisors: d₀⋯d_{k−1} is the gcd of the k×k minors. For
    // 2×2 matrices that is gcd of entries, then |det|.
    fn two_by_two_oracle(a: i64, b: i64, c: i64, d: i64) -> Vec<i64> {
        fn gcd(x: i64, y: i64) -> i64 {
            if y == 0 {
                x.abs()
            } else {
                gcd(y, x % y)
            }
        }
        let g = gcd(gcd(a, b), gcd(c, d));
        let det = (a * d - b * c).abs();
        match (g, det) {
            (0, _) => vec![],
            (g, 0) => vec![g],
            (g, det) => vec![g, det / g],
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn random_matrices_verify(
            rows in 1usize..7, cols in 1usize..7,
            seed in prop::collection::vec(-9i64..10, 36),
        ) {
            let data: Vec<Vec<i64>> = (0..rows).map(|i| seed[i * 6..i * 6 + cols].to_vec()).collect();
            let (m, s) = smith(&data);
            prop_assert!(s.verify(&m).unwrap());
            let untracked = smith_normal_form(&m, false);
            prop_assert_eq!(untracked.rank, s.rank);
            prop_assert_eq!(untracked.invariant_factors(), s.invariant_factors());
        }

        #[test]
        fn two_by_two_matches_determinantal_divisors(a in -30i64..30, b in -30i64..30, c in -30i64..30, d in -30i64..30) {
            let (_, s) = smith(&[vec![a, b], vec![c, d]]);
            let got: Vec<i64> = s.invariant_factors().iter().map(|x| i64::try_from(x).unwrap()).collect();
            prop_assert_eq!(got, two_by_two_oracle(a, b, c, d));
        }
    }
}
