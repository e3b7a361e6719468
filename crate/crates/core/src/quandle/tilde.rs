use super::{FiniteQuandle, GoodInvolution, QuandleHom};
use crate::error::Result;
use crate::group::{GeneratedGroup, SignedDihedralGroup};
use crate::signed_perm::SignedPermutation;

/// `R̃_{2n+1} = (G_{2n+1}, C(a), a)` with its canonical good involution and
/// the projection onto `R_{2n+1}`.
#[derive(Clone, Debug)]
pub struct TildeDihedral {
    pub group: SignedDihedralGroup,
    pub subgroup: GeneratedGroup,
    pub quandle: FiniteQuandle,
    pub rho: GoodInvolution,
    pub base: FiniteQuandle,
    pub projection: QuandleHom,
}

impl TildeDihedral {
    pub fn n(&self) -> usize {
        self.group.n()
    }

    /// Coset representative of element `x`.
    pub fn representative(&self, x: usize) -> &SignedPermutation {
        &self
            .quandle
            .provenance()
            .expect("coset quandle")
            .representatives[x]
    }
}

pub fn build_tilde_r(n: usize) -> Result<TildeDihedral> {
    let group = SignedDihedralGroup::build(n)?;
    let subgroup = group.group().centralizer(group.a())?;
    let a = group.a().clone();
    let quandle = if n == 1 {
        let b = group.b();
        let diag = |e: &[i32]| SignedPermutation::from_entries(e).expect("valid diagonal");
        let reps = [
            SignedPermutation::identity(3)?,
            b.pow(2),
            b.clone(),
            diag(&[-1, -2, 3]),
            b.pow(2).compose_unchecked(&diag(&[-1, 2, -3])),
            b.compose_unchecked(&diag(&[-1, -2, 3])),
        ];
        FiniteQuandle::coset_with_representatives(group.group(), &subgroup, &a, &reps)?
    } else {
        FiniteQuandle::coset(group.group(), &subgroup, &a)?
    };
    let reps = &quandle.provenance().expect("coset quandle").representatives;
    let partition = group.group().coset_partition(&subgroup)?;
    let mut position = vec![0usize; partition.len()];
    for (i, r) in reps.iter().enumerate() {
        position[partition.coset_of(group.group(), r).expect("in group")] = i;
    }

    let d = rho_multiplier(n);
    let images = reps
        .iter()
        .map(|u| {
            position[partition
                .coset_of(group.group(), &d.compose_unchecked(u))
                .expect("in group")]
        })
        .collect();
    let rho = GoodInvolution::new(images, quandle.size())?;

    let m = 2 * n + 1;
    let base = FiniteQuandle::dihedral(m)?;
    let map = reps.iter().map(|u| project(u, m)).collect();
    let projection = QuandleHom::new(&quandle, &base, map)?;
    Ok(TildeDihedral {
        group,
        subgroup,
        quandle,
        rho,
        base,
        projection,
    })
}

// (ε, −2, …, −(n+1), n+2, …, 2n+1), ε = −1 for odd n and +1 for even n
fn rho_multiplier(n: usize) -> SignedPermutation {
    let m = 2 * n + 1;
    let entries: Vec<i32> = (1..=m as i32)
        .map(|k| match k {
            1 if n % 2 == 1 => -1,
            1 => 1,
            k if k <= n as i32 + 1 => -k,
            k => k,
        })
        .collect();
    SignedPermutation::from_entries(&entries).expect("valid diagonal")
}

// Hu ↦ 1 − k (mod m), k the position of ±1 in u. C(a) fixes ±e₁, so this
// only depends on the coset, and it matches ⟨x⟩yⁱ ↦ −i on D_{2m}.
fn project(u: &SignedPermutation, m: usize) -> usize {
    let k = u
        .entries()
        .iter()
        .position(|e| e.abs() == 1)
        .expect("permutation")
        + 1;
    (m + 1 - k) % m
}
