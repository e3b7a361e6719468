use serde::Serialize;

use super::{FiniteQuandle, GoodInvolution};
use crate::error::{Error, Result};

/// A function `X² → A`, indexed `[x][y]`.
pub type TwoCochain = Vec<Vec<i64>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientGroup {
    Integers,
    /// `Z/k`, values kept in `0..k`.
    Cyclic(u64),
}

impl CoefficientGroup {
    pub fn reduce(self, a: i64) -> i64 {
        match self {
            CoefficientGroup::Integers => a,
            CoefficientGroup::Cyclic(k) => a.rem_euclid(k as i64),
        }
    }

    fn check(self) -> Result<()> {
        match self {
            CoefficientGroup::Cyclic(0) => Err(Error::InvalidInput(
                "cyclic coefficient group of order 0".into(),
            )),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CocycleViolation {
    /// `φ(x, x) ≠ 0`.
    Idempotency { x: usize },
    /// `φ(x,y) + φ(x◁y, z) ≠ φ(x,z) + φ(x◁z, y◁z)`.
    Distributivity { x: usize, y: usize, z: usize },
    /// `φ(x, y) + φ(ρ(x), y) ≠ 0`.
    RhoFirst { x: usize, y: usize },
    /// `φ(x, y) + φ(x◁y, ρ(y)) ≠ 0`.
    RhoSecond { x: usize, y: usize },
}

pub type CocycleReport = Option<CocycleViolation>;

/// Checks the symmetric 2-cocycle conditions, returning the first violation.
pub fn verify_symmetric_2cocycle(
    quandle: &FiniteQuandle,
    rho: &GoodInvolution,
    phi: &[Vec<i64>],
    group: CoefficientGroup,
) -> Result<CocycleReport> {
    group.check()?;
    let q = quandle.size();
    if rho.len() != q {
        return Err(Error::SizeMismatch {
            expected: q,
            found: rho.len(),
        });
    }
    if phi.len() != q || phi.iter().any(|row| row.len() != q) {
        return Err(Error::InvalidInput(format!(
            "cochain must be a {q}×{q} table"
        )));
    }
    let zero = |v: i64| group.reduce(v) == 0;
    if let Some(x) = (0..q).find(|&x| !zero(phi[x][x])) {
        return Ok(Some(CocycleViolation::Idempotency { x }));
    }
    for x in 0..q {
        for y in 0..q {
            let xy = quandle.op(x, y);
            for z in 0..q {
                let lhs = phi[x][y] + phi[xy][z];
                let rhs = phi[x][z] + phi[quandle.op(x, z)][quandle.op(y, z)];
                if !zero(lhs - rhs) {
                    return Ok(Some(CocycleViolation::Distributivity { x, y, z }));
                }
            }
        }
    }
    for x in 0..q {
        for y in 0..q {
            if !zero(phi[x][y] + phi[rho.apply(x)][y]) {
                return Ok(Some(CocycleViolation::RhoFirst { x, y }));
            }
        }
    }
    for x in 0..q {
        for y in 0..q {
            if !zero(phi[x][y] + phi[quandle.op(x, y)][rho.apply(y)]) {
                return Ok(Some(CocycleViolation::RhoSecond { x, y }));
            }
        }
    }
    Ok(None)
}

/// `φ(x, y) = g(x) − g(x ◁ y)`. This is a symmetric 2-cocycle whenever
/// `g(ρ(x)) = −g(x)`.
pub fn symmetric_coboundary(
    quandle: &FiniteQuandle,
    g: &[i64],
    group: CoefficientGroup,
) -> Result<TwoCochain> {
    group.check()?;
    let q = quandle.size();
    if g.len() != q {
        return Err(Error::SizeMismatch {
            expected: q,
            found: g.len(),
        });
    }
    Ok((0..q)
        .map(|x| {
            (0..q)
                .map(|y| group.reduce(g[x] - g[quandle.op(x, y)]))
                .collect()
        })
        .collect())
}

/// `X ×_φ Z/k` with `(x,a) ◁ (y,b) = (x◁y, a + φ(x,y))` and
/// `ρ̃(x,a) = (ρ(x), −a)`. Element `(x, a)` has index `x·k + a`.
pub fn cocycle_extension(
    quandle: &FiniteQuandle,
    rho: &GoodInvolution,
    phi: &[Vec<i64>],
    group: CoefficientGroup,
) -> Result<(FiniteQuandle, GoodInvolution)> {
    let CoefficientGroup::Cyclic(k) = group else {
        return Err(Error::InvalidInput(
            "extensions need a finite coefficient group".into(),
        ));
    };
    if let Some(v) = verify_symmetric_2cocycle(quandle, rho, phi, group)? {
        return Err(Error::Precondition(format!(
            "not a symmetric 2-cocycle: {v:?}"
        )));
    }
    let q = quandle.size();
    let k = k as usize;
    let index = |x: usize, a: i64| x * k + group.reduce(a) as usize;
    let mut labels = Vec::with_capacity(q * k);
    let mut table = vec![vec![0usize; q * k]; q * k];
    let mut images = vec![0usize; q * k];
    for x in 0..q {
        for a in 0..k as i64 {
            labels.push(format!("({},{a})", quandle.labels()[x]));
            images[index(x, a)] = index(rho.apply(x), -a);
            for y in 0..q {
                let target = index(quandle.op(x, y), a + phi[x][y]);
                for b in 0..k {
                    table[index(x, a)][y * k + b] = target;
                }
            }
        }
    }
    let extended = FiniteQuandle::from_table(labels, table)?;
    let rho = GoodInvolution::new(images, q * k)?;
    Ok((extended, rho))
}

/// A quandle homomorphism, given by the image of each source element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuandleHom {
    map: Vec<usize>,
    target_size: usize,
}

impl QuandleHom {
    /// Checks `f(x ◁ y) = f(x) ◁ f(y)` before accepting the map.
    pub fn new(source: &FiniteQuandle, target: &FiniteQuandle, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.size() {
            return Err(Error::SizeMismatch {
                expected: source.size(),
                found: map.len(),
            });
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= target.size()) {
            return Err(Error::InvalidInput(format!(
                "image {bad} is outside the target"
            )));
        }
        for x in 0..source.size() {
            for y in 0..source.size() {
                if map[source.op(x, y)] != target.op(map[x], map[y]) {
                    return Err(Error::InvalidInput(format!(
                        "not a homomorphism at ({x}, {y})"
                    )));
                }
            }
        }
        Ok(Self {
            map,
            target_size: target.size(),
        })
    }

    pub fn identity(quandle: &FiniteQuandle) -> Self {
        Self {
            map: (0..quandle.size()).collect(),
            target_size: quandle.size(),
        }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    /// The common fiber size if the map is surjective with constant fibers.
    pub fn fiber_size(&self) -> Option<usize> {
        let mut counts = vec![0usize; self.target_size];
        for &v in &self.map {
            counts[v] += 1;
        }
        let first = *counts.first()?;
        (first > 0 && counts.iter().all(|&c| c == first)).then_some(first)
    }
}

pub fn check_extension(f: &QuandleHom) -> bool {
    f.fiber_size().is_some()
}
