//! Finite groups of signed permutations enumerated by closure.
//!
//! Everything here is small enough to enumerate outright: the groups
//! `G_{2n+1} ⊂ SH_{2n+1}` have order `(2n+1)·2^{2n+1}`.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signed_perm::SignedPermutation;

#[derive(Clone, Debug)]
pub struct GeneratedGroup {
    generators: Vec<SignedPermutation>,
    elements: Vec<SignedPermutation>,
    index: HashMap<SignedPermutation, usize>,
}

impl GeneratedGroup {
    /// Breadth-first closure from the identity, right-multiplying by the
    /// generators in the given order.
    pub fn generate(generators: &[SignedPermutation]) -> Result<Self> {
        Self::generate_bounded(generators, None)
    }

    pub fn generate_bounded(
        generators: &[SignedPermutation],
        max_elements: Option<usize>,
    ) -> Result<Self> {
        let first = generators
            .first()
            .ok_or_else(|| Error::InvalidInput("at least one generator is required".into()))?;
        let m = first.size();
        if let Some(g) = generators.iter().find(|g| g.size() != m) {
            return Err(Error::SizeMismatch {
                expected: m,
                found: g.size(),
            });
        }
        let identity = SignedPermutation::identity(m)?;
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::from([(identity, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for s in generators {
                let h = elements[i].compose_unchecked(s);
                if !index.contains_key(&h) {
                    if max_elements.is_some_and(|cap| elements.len() >= cap) {
                        return Err(Error::ResourceGuard(format!(
                            "group closure exceeds {} elements",
                            max_elements.unwrap()
                        )));
                    }
                    index.insert(h.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(h);
                }
            }
        }
        Ok(Self {
            generators: generators.to_vec(),
            elements,
            index,
        })
    }

    /// Subgroup with the given elements. A generating set is picked greedily
    /// in element order so that the closure reproduces exactly this set.
    fn from_closed_subset(members: Vec<SignedPermutation>) -> Result<Self> {
        let mut generators: Vec<SignedPermutation> = Vec::new();
        let mut current = Self::generate(&members[..1])?;
        for g in &members {
            if !current.contains(g) {
                generators.push(g.clone());
                current = Self::generate(&generators)?;
            }
        }
        if generators.is_empty() {
            generators.push(members[0].clone());
        }
        debug_assert_eq!(current.order(), members.len());
        Self::generate(&generators)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.elements[0].size()
    }

    pub fn generators(&self) -> &[SignedPermutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[SignedPermutation] {
        &self.elements
    }

    pub fn contains(&self, g: &SignedPermutation) -> bool {
        self.index.contains_key(g)
    }

    pub fn index_of(&self, g: &SignedPermutation) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn identity(&self) -> &SignedPermutation {
        &self.elements[0]
    }

    pub fn is_subgroup_of(&self, other: &Self) -> bool {
        self.elements.iter().all(|g| other.contains(g))
    }

    pub fn centralizer(&self, g: &SignedPermutation) -> Result<Self> {
        if !self.contains(g) {
            return Err(Error::NotInGroup(g.format_notation()));
        }
        let members: Vec<_> = self
            .elements
            .iter()
            .filter(|c| g.compose_unchecked(c) == c.compose_unchecked(g))
            .cloned()
            .collect();
        Self::from_closed_subset(members)
    }

    pub fn coset_partition(&self, subgroup: &Self) -> Result<CosetPartition> {
        if let Some(h) = subgroup.elements.iter().find(|h| !self.contains(h)) {
            return Err(Error::Precondition(format!(
                "subgroup element {h} is not in the group"
            )));
        }
        let mut raw: Vec<Vec<usize>> = Vec::new();
        let mut assigned = vec![false; self.order()];
        for (i, g) in self.elements.iter().enumerate() {
            if assigned[i] {
                continue;
            }
            let members: Vec<usize> = subgroup
                .elements
                .iter()
                .map(|h| self.index[&h.compose_unchecked(g)])
                .collect();
            for &j in &members {
                assigned[j] = true;
            }
            raw.push(members);
        }
        let mut cosets: Vec<RightCoset> = raw
            .into_iter()
            .map(|ids| {
                let members: Vec<SignedPermutation> =
                    ids.iter().map(|&j| self.elements[j].clone()).collect();
                let representative = members.iter().min().cloned().expect("coset is nonempty");
                RightCoset {
                    representative,
                    members,
                }
            })
            .collect();
        cosets.sort_by(|x, y| x.representative.cmp(&y.representative));
        let mut element_coset = vec![0usize; self.order()];
        for (c, coset) in cosets.iter().enumerate() {
            for g in &coset.members {
                element_coset[self.index[g]] = c;
            }
        }
        Ok(CosetPartition {
            cosets,
            element_coset,
        })
    }

    pub fn right_cosets(&self, subgroup: &Self) -> Result<Vec<RightCoset>> {
        Ok(self.coset_partition(subgroup)?.cosets)
    }

    pub fn strip_signs_image(&self) -> Self {
        let gens: Vec<_> = self
            .generators
            .iter()
            .map(SignedPermutation::strip_signs)
            .collect();
        Self::generate(&gens).expect("generators share one size")
    }

    pub fn export(&self) -> GroupExport {
        GroupExport {
            size: self.degree(),
            generators: self
                .generators
                .iter()
                .map(SignedPermutation::format_notation)
                .collect(),
            elements: self
                .elements
                .iter()
                .map(SignedPermutation::format_notation)
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupExport {
    pub size: usize,
    pub generators: Vec<String>,
    pub elements: Vec<String>,
}

/// A right coset `H·rep`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightCoset {
    pub representative: SignedPermutation,
    pub members: Vec<SignedPermutation>,
}

#[derive(Clone, Debug)]
pub struct CosetPartition {
    cosets: Vec<RightCoset>,
    // indexed by the element index in the ambient group
    element_coset: Vec<usize>,
}

impl CosetPartition {
    pub fn cosets(&self) -> &[RightCoset] {
        &self.cosets
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    pub fn coset_of(&self, group: &GeneratedGroup, g: &SignedPermutation) -> Option<usize> {
        group.index_of(g).map(|i| self.element_coset[i])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Prefix {
    Identity,
    A,
}

/// `g = prefix · b^exponent · diagonal`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub prefix: Prefix,
    pub exponent: usize,
    pub diagonal: SignedPermutation,
}

/// The group `G_{2n+1}` generated by
/// `a = (1, 2n+1, 2n, …, n+2, −(n+1), …, −2)` and `b = (2n+1, 1, 2, …, 2n)`.
#[derive(Clone, Debug)]
pub struct SignedDihedralGroup {
    n: usize,
    a: SignedPermutation,
    b: SignedPermutation,
    group: GeneratedGroup,
}

impl SignedDihedralGroup {
    pub fn build(n: usize) -> Result<Self> {
        Self::build_bounded(n, None)
    }

    pub fn build_bounded(n: usize, max_elements: Option<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("n must be at least 1".into()));
        }
        let m = 2 * n + 1;
        if let Some(cap) = max_elements {
            // |G| = m·2^m, known in advance
            let predicted = (m as u128) << m.min(100);
            if m >= 100 || predicted > cap as u128 {
                return Err(Error::ResourceGuard(format!(
                    "G_{m} has {m}·2^{m} elements, above the cap of {cap}"
                )));
            }
        }
        let m_i = m as i32;
        let mut a_entries = vec![1i32];
        a_entries.extend((n as i32 + 2..=m_i).rev());
        a_entries.extend((2..=n as i32 + 1).rev().map(|k| -k));
        let mut b_entries = vec![m_i];
        b_entries.extend(1..m_i);
        let a = SignedPermutation::from_entries(&a_entries)?;
        let b = SignedPermutation::from_entries(&b_entries)?;
        let group = GeneratedGroup::generate_bounded(&[a.clone(), b.clone()], max_elements)?;
        Ok(Self { n, a, b, group })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        2 * self.n + 1
    }

    pub fn a(&self) -> &SignedPermutation {
        &self.a
    }

    pub fn b(&self) -> &SignedPermutation {
        &self.b
    }

    pub fn group(&self) -> &GeneratedGroup {
        &self.group
    }

    pub fn normal_form(&self, g: &SignedPermutation) -> Result<NormalForm> {
        if !self.group.contains(g) {
            return Err(Error::NotInGroup(g.format_notation()));
        }
        let a_inv = self.a.inverse();
        let b_inv = self.b.inverse();
        for (prefix, stripped) in [
            (Prefix::Identity, g.clone()),
            (Prefix::A, a_inv.compose_unchecked(g)),
        ] {
            let mut rest = stripped;
            for exponent in 0..self.degree() {
                if rest.is_diagonal() {
                    return Ok(NormalForm {
                        prefix,
                        exponent,
                        diagonal: rest,
                    });
                }
                rest = b_inv.compose_unchecked(&rest);
            }
        }
        unreachable!("every element of G_(2n+1) has a normal form")
    }

    pub fn recompose(&self, nf: &NormalForm) -> SignedPermutation {
        let tail = self
            .b
            .pow(nf.exponent as i64)
            .compose_unchecked(&nf.diagonal);
        match nf.prefix {
            Prefix::Identity => tail,
            Prefix::A => self.a.compose_unchecked(&tail),
        }
    }

    /// Diagonal elements of the group (the kernel of `strip_signs`).
    pub fn kernel(&self) -> Vec<SignedPermutation> {
        self.group
            .elements()
            .iter()
            .filter(|g| g.is_diagonal())
            .cloned()
            .collect()
    }

    fn diag_from_signs(signs: &[i32]) -> SignedPermutation {
        let neg: Vec<bool> = signs.iter().map(|&s| s < 0).collect();
        SignedPermutation::diagonal(&neg).expect("nonempty")
    }

    fn diag_signs(d: &SignedPermutation) -> Vec<i32> {
        debug_assert!(d.is_diagonal());
        (0..d.size()).map(|k| d.sign(k)).collect()
    }

    /// `(ε₁, …, ε_m) ↦ (ε₁, ε_m, …, ε₂)`.
    pub fn f_a(&self, d: &SignedPermutation) -> SignedPermutation {
        let e = Self::diag_signs(d);
        let m = e.len();
        let out: Vec<i32> = (0..m)
            .map(|k| if k == 0 { e[0] } else { e[m - k] })
            .collect();
        Self::diag_from_signs(&out)
    }

    /// `f_b^power`; `f_b(ε₁, …, ε_m) = (ε_m, ε₁, …, ε_{m−1})`.
    pub fn f_b_pow(&self, d: &SignedPermutation, power: i64) -> SignedPermutation {
        let e = Self::diag_signs(d);
        let m = e.len() as i64;
        let out: Vec<i32> = (0..m)
            .map(|k| e[(k - power).rem_euclid(m) as usize])
            .collect();
        Self::diag_from_signs(&out)
    }

    /// Negative signs in positions `n+1` and `2n+1`.
    pub fn i_plus(&self) -> SignedPermutation {
        let mut neg = vec![false; self.degree()];
        neg[self.n] = true;
        neg[2 * self.n] = true;
        SignedPermutation::diagonal(&neg).expect("nonempty")
    }

    /// Negative signs in positions `1` and `n+2`.
    pub fn i_minus(&self) -> SignedPermutation {
        let mut neg = vec![false; self.degree()];
        neg[0] = true;
        neg[self.n + 1] = true;
        SignedPermutation::diagonal(&neg).expect("nonempty")
    }

    /// The diagonal with a single `+` at 1-based position `i`.
    pub fn i_single(&self, i: usize) -> SignedPermutation {
        let neg: Vec<bool> = (1..=self.degree()).map(|k| k != i).collect();
        SignedPermutation::diagonal(&neg).expect("nonempty")
    }
}

pub fn build_g(n: usize) -> Result<SignedDihedralGroup> {
    SignedDihedralGroup::build(n)
}
