//! Signed permutation matrices in column-tuple notation.
//!
//! A signed permutation of size `m` is stored as the tuple
//! `(ε₁σ(1), …, ε_mσ(m))`: column `k` of the matrix is `ε_k e_{σ(k)}`.
//! Products are ordinary matrix products, so for `p = (ε_i σ(i))` and
//! `q = (δ_j τ(j))` the `k`-th entry of `p·q` is `ε_{τ(k)} δ_k σ(τ(k))`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    // 1-based signed targets, exactly as written in tuple notation.
    entries: Box<[i32]>,
}

impl SignedPermutation {
    pub fn identity(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidInput(
                "signed permutation size must be positive".into(),
            ));
        }
        Ok(Self {
            entries: (1..=size as i32).collect(),
        })
    }

    /// Builds a signed permutation from its tuple entries, validating that the
    /// magnitudes form a permutation of `1..=m`.
    pub fn from_entries(entries: &[i32]) -> Result<Self> {
        let m = entries.len();
        let text = format_entries(entries);
        if m == 0 {
            return Err(Error::Notation {
                text,
                reason: "empty tuple".into(),
            });
        }
        let mut seen = vec![false; m];
        for &e in entries {
            let mag = e.unsigned_abs() as usize;
            if e == 0 || mag > m {
                return Err(Error::Notation {
                    text,
                    reason: format!("entry {e} out of range 1..={m}"),
                });
            }
            if std::mem::replace(&mut seen[mag - 1], true) {
                return Err(Error::Notation {
                    text,
                    reason: format!("repeated magnitude {mag}"),
                });
            }
        }
        Ok(Self {
            entries: entries.into(),
        })
    }

    /// Diagonal element `(ε₁·1, …, ε_m·m)`; `negative[k]` marks a `-1` in column `k`.
    pub fn diagonal(negative: &[bool]) -> Result<Self> {
        let entries: Vec<i32> = negative
            .iter()
            .enumerate()
            .map(|(k, &neg)| if neg { -(k as i32 + 1) } else { k as i32 + 1 })
            .collect();
        Self::from_entries(&entries)
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[i32] {
        &self.entries
    }

    /// Target of column `k` (0-based) as a 0-based row index.
    pub fn target(&self, k: usize) -> usize {
        self.entries[k].unsigned_abs() as usize - 1
    }

    pub fn sign(&self, k: usize) -> i32 {
        self.entries[k].signum()
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch {
                expected: self.size(),
                found: other.size(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Self) -> Self {
        let entries = other
            .entries
            .iter()
            .map(|&q| self.entries[q.unsigned_abs() as usize - 1] * q.signum())
            .collect();
        Self { entries }
    }

    pub fn inverse(&self) -> Self {
        let mut entries = vec![0i32; self.size()];
        for (k, &e) in self.entries.iter().enumerate() {
            entries[e.unsigned_abs() as usize - 1] = (k as i32 + 1) * e.signum();
        }
        Self {
            entries: entries.into(),
        }
    }

    pub fn pow(&self, exponent: i64) -> Self {
        let base = if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut acc = Self {
            entries: (1..=self.size() as i32).collect(),
        };
        for _ in 0..exponent.unsigned_abs() {
            acc = acc.compose_unchecked(&base);
        }
        acc
    }

    /// Sign of the underlying permutation times the product of the entry signs.
    pub fn determinant(&self) -> i32 {
        let m = self.size();
        let mut visited = vec![false; m];
        let mut parity = 0usize;
        for start in 0..m {
            if visited[start] {
                continue;
            }
            let mut len = 0;
            let mut k = start;
            while !visited[k] {
                visited[k] = true;
                k = self.target(k);
                len += 1;
            }
            parity += len - 1;
        }
        let negatives = self.entries.iter().filter(|&&e| e < 0).count();
        if (parity + negatives) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn strip_signs(&self) -> Self {
        Self {
            entries: self.entries.iter().map(|e| e.abs()).collect(),
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(k, &e)| e.unsigned_abs() as usize == k + 1)
    }

    pub fn is_identity(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(k, &e)| e == k as i32 + 1)
    }

    /// Dense matrix view, `rows[i][j]` being the `(i, j)` entry.
    pub fn to_matrix(&self) -> Vec<Vec<i32>> {
        let m = self.size();
        let mut rows = vec![vec![0; m]; m];
        for k in 0..m {
            rows[self.target(k)][k] = self.sign(k);
        }
        rows
    }

    pub fn parse_notation(text: &str) -> Result<Self> {
        let err = |reason: &str| Error::Notation {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let inner = text
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| err("expected a parenthesised tuple"))?;
        let entries = inner
            .split(',')
            .map(|tok| {
                let tok = tok.trim().replace('\u{2212}', "-");
                tok.parse::<i32>()
                    .map_err(|_| err(&format!("bad entry `{tok}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_entries(&entries).map_err(|e| match e {
            Error::Notation { reason, .. } => err(&reason),
            other => other,
        })
    }

    pub fn format_notation(&self) -> String {
        format_entries(&self.entries)
    }

    fn order_key(&self) -> impl Iterator<Item = (u32, i32)> + '_ {
        self.entries.iter().map(|e| (e.unsigned_abs(), e.signum()))
    }
}

fn format_entries(entries: &[i32]) -> String {
    let body: Vec<String> = entries.iter().map(i32::to_string).collect();
    format!("({})", body.join(","))
}

/// Lexicographic on the image array, comparing `(target, sign)` pairs with `-1 < +1`.
impl Ord for SignedPermutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.order_key().cmp(other.order_key()))
    }
}

impl PartialOrd for SignedPermutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_notation())
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_notation())
    }
}

impl FromStr for SignedPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_notation(s)
    }
}

impl Serialize for SignedPermutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.format_notation())
    }
}

impl<'de> Deserialize<'de> for SignedPermutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        Self::parse_notation(&text).map_err(serde::de::Error::custom)
    }
}


#[cfg(test)]
mod tests {
    use super::strategies::signed_perm;
    use super::*;
    use proptest::prelude::*;

    fn sp(s: &str) -> SignedPermutation {
        s.parse().unwrap()
    }

    #[test]
    fn identity_and_determinant() {
        assert_eq!(
            SignedPermutation::identity(3).unwrap().format_notation(),
            "(1,2,3)"
        );
        assert_eq!(SignedPermutation::identity(5).unwrap().determinant(), 1);
        assert!(SignedPermutation::identity(0).is_err());
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(
            sp("(1,5,4,-3,-2)").compose(&sp("(5,1,2,3,4)")).unwrap(),
            sp("(-2,1,5,4,-3)")
        );
        assert_eq!(
            sp("(5,1,2,3,4)").compose(&sp("(1,5,4,-3,-2)")).unwrap(),
            sp("(5,4,3,-2,-1)")
        );
        let a = sp("(1,3,-2)");
        assert_eq!(a.compose(&a).unwrap(), sp("(1,-2,-3)"));
        assert!(a.compose(&sp("(1,2)")).is_err());
    }

    #[test]
    fn compose_matches_matrix_product() {
        let p = sp("(1,5,4,-3,-2)");
        let q = sp("(5,1,2,3,4)");
        let (pm, qm) = (p.to_matrix(), q.to_matrix());
        let mut prod = vec![vec![0; 5]; 5];
        for i in 0..5 {
            for j in 0..5 {
                prod[i][j] = (0..5).map(|k| pm[i][k] * qm[k][j]).sum();
            }
        }
        assert_eq!(p.compose(&q).unwrap().to_matrix(), prod);
    }

    #[test]
    fn inverse_and_determinant_examples() {
        assert_eq!(sp("(3,1,2)").inverse(), sp("(2,3,1)"));
        assert_eq!(sp("(1,3,-2)").determinant(), 1);
        assert_eq!(sp("(-1,2,3)").determinant(), -1);
        assert_eq!(sp("(1,3,-2)").strip_signs(), sp("(1,3,2)"));
        assert_eq!(sp("(3,1,2)").strip_signs(), sp("(3,1,2)"));
    }

    #[test]
    fn notation_errors() {
        assert!(SignedPermutation::parse_notation("(1,1,2)").is_err());
        assert!(SignedPermutation::parse_notation("(1,4,2)").is_err());
        assert!(SignedPermutation::parse_notation("(0,1)").is_err());
        assert!(SignedPermutation::parse_notation("1,2").is_err());
        assert!(SignedPermutation::parse_notation("(1,x)").is_err());
        assert_eq!(sp("( 1, −3, 2 )"), sp("(1,-3,2)"));
    }

    #[test]
    fn ordering_is_target_then_sign() {
        assert!(sp("(-1,2)") < sp("(1,2)"));
        assert!(sp("(1,2)") < sp("(2,1)"));
        assert!(sp("(1,-2)") < sp("(1,2)"));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn group_laws(p in signed_perm(5), q in signed_perm(5), r in signed_perm(5)) {
            let e = SignedPermutation::identity(5).unwrap();
            prop_assert_eq!(p.compose(&q).unwrap().compose(&r).unwrap(), p.compose(&q.compose(&r).unwrap()).unwrap());
            prop_assert_eq!(p.compose(&e).unwrap(), p.clone());
            prop_assert_eq!(e.compose(&p).unwrap(), p.clone());
            prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
            prop_assert!(p.inverse().compose(&p).unwrap().is_identity());
            prop_assert_eq!(p.inverse().inverse(), p.clone());
        }

        #[test]
        fn homomorphisms(p in signed_perm(6), q in signed_perm(6)) {
            let pq = p.compose(&q).unwrap();
            prop_assert_eq!(pq.determinant(), p.determinant() * q.determinant());
            prop_assert_eq!(pq.strip_signs(), p.strip_signs().compose(&q.strip_signs()).unwrap());
        }

        #[test]
        fn notation_round_trip(p in signed_perm(7)) {
            let text = p.format_notation();
            prop_assert_eq!(SignedPermutation::parse_notation(&text).unwrap(), p.clone());
            prop_assert_eq!(SignedPermutation::parse_notation(&text).unwrap().format_notation(), text);
        }
    }
}
