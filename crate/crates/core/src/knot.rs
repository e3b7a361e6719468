//! Gauss codes of classical and virtual knots and their quandle colorings.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quandle::{FiniteQuandle, QuandleHom};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Visit {
    pub label: String,
    pub over: bool,
    pub positive: bool,
}

/// A crossing in arc terms: `out = in ◁ over` when positive, `out = in ◁⁻¹
/// over` when negative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub over: usize,
    pub under_in: usize,
    pub under_out: usize,
    pub positive: bool,
}

/// A one-component Gauss code. Virtual crossings do not appear. Arcs run
/// from one under-visit to the next; arc `k` ends at the `k`-th under-visit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussCode {
    visits: Vec<Visit>,
    crossings: Vec<Crossing>,
    arcs: usize,
}

impl GaussCode {
    pub fn unknot() -> Self {
        Self {
            visits: Vec::new(),
            crossings: Vec::new(),
            arcs: 1,
        }
    }

    pub fn from_visits(visits: Vec<Visit>) -> Result<Self> {
        if visits.is_empty() {
            return Ok(Self::unknot());
        }
        let mut seen: HashMap<&str, (Option<usize>, Option<usize>)> = HashMap::new();
        for (i, v) in visits.iter().enumerate() {
            let slot = seen.entry(v.label.as_str()).or_default();
            let side = if v.over { &mut slot.0 } else { &mut slot.1 };
            if side.replace(i).is_some() {
                let kind = if v.over { "over" } else { "under" };
                return Err(Error::GaussCode(format!(
                    "crossing {} has two {kind}-visits",
                    v.label
                )));
            }
        }
        let mut order: Vec<(&str, usize, usize)> = Vec::with_capacity(seen.len());
        for (label, (o, u)) in &seen {
            match (o, u) {
                (Some(o), Some(u)) => {
                    if visits[*o].positive != visits[*u].positive {
                        return Err(Error::GaussCode(format!(
                            "crossing {label} has mismatched signs"
                        )));
                    }
                    order.push((label, *o, *u));
                }
                (None, _) => {
                    return Err(Error::GaussCode(format!(
                        "crossing {label} has no over-visit"
                    )))
                }
                (_, None) => {
                    return Err(Error::GaussCode(format!(
                        "crossing {label} has no under-visit"
                    )))
                }
            }
        }
        order.sort_by_key(|&(_, _, u)| u);

        let arcs = order.len();
        // number of under-visits strictly before each position
        let mut before = Vec::with_capacity(visits.len());
        let mut count = 0;
        for v in &visits {
            before.push(count);
            if !v.over {
                count += 1;
            }
        }
        let crossings = order
            .iter()
            .map(|&(_, o, u)| Crossing {
                over: before[o] % arcs,
                under_in: before[u],
                under_out: (before[u] + 1) % arcs,
                positive: visits[u].positive,
            })
            .collect();
        Ok(Self {
            visits,
            crossings,
            arcs,
        })
    }

    /// Tokens `O<label><sign>` / `U<label><sign>` with sign `+`, `-` or `−`.
    /// Whitespace and commas between tokens are ignored. Empty text is the
    /// unknot.
    pub fn parse(text: &str) -> Result<Self> {
        let mut visits = Vec::new();
        let mut chars = text.chars().peekable();
        while let Some(&c) = chars.peek() {
            if c.is_whitespace() || c == ',' {
                chars.next();
                continue;
            }
            let over = match c.to_ascii_uppercase() {
                'O' => true,
                'U' => false,
                _ => return Err(Error::GaussCode(format!("expected O or U, found {c:?}"))),
            };
            chars.next();
            let mut label = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_alphanumeric() || d == '_' {
                    label.push(d);
                    chars.next();
                } else {
                    break;
                }
            }
            if label.is_empty() {
                return Err(Error::GaussCode("visit without a crossing label".into()));
            }
            let positive = match chars.next() {
                Some('+') => true,
                Some('-' | '−') => false,
                other => {
                    return Err(Error::GaussCode(format!(
                        "crossing {label} needs a sign, found {other:?}"
                    )))
                }
            };
            visits.push(Visit {
                label,
                over,
                positive,
            });
        }
        Self::from_visits(visits)
    }

    pub fn visits(&self) -> &[Visit] {
        &self.visits
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn arc_count(&self) -> usize {
        self.arcs
    }

    pub fn is_unknot(&self) -> bool {
        self.visits.is_empty()
    }

    /// The same diagram read from a basepoint `k` visits later.
    pub fn rotated(&self, k: usize) -> Self {
        if self.visits.is_empty() {
            return self.clone();
        }
        let mut visits = self.visits.clone();
        let len = visits.len();
        visits.rotate_left(k % len);
        Self::from_visits(visits).expect("rotation keeps a valid code valid")
    }
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.visits {
            write!(
                f,
                "{}{}{}",
                if v.over { 'O' } else { 'U' },
                v.label,
                if v.positive { '+' } else { '-' }
            )?;
        }
        Ok(())
    }
}

/// A quandle element for each arc.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Coloring(pub Vec<usize>);

impl Coloring {
    pub fn is_constant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }
}

fn check_quandle(q: &FiniteQuandle) -> Result<()> {
    if q.size() == 0 || !q.is_right_invertible() {
        return Err(Error::Precondition(
            "colorings need a nonempty right-invertible table".into(),
        ));
    }
    Ok(())
}

pub fn is_valid_coloring(q: &FiniteQuandle, code: &GaussCode, coloring: &Coloring) -> bool {
    coloring.0.len() == code.arcs
        && coloring.0.iter().all(|&c| c < q.size())
        && code.crossings.iter().all(|x| {
            let (a, b, c) = (
                coloring.0[x.under_in],
                coloring.0[x.over],
                coloring.0[x.under_out],
            );
            c == if x.positive {
                q.op(a, b)
            } else {
                q.op_inv(a, b)
            }
        })
}

struct Search<'a> {
    q: &'a FiniteQuandle,
    code: &'a GaussCode,
    // crossings touching each arc
    touching: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(q: &'a FiniteQuandle, code: &'a GaussCode) -> Self {
        let mut touching = vec![Vec::new(); code.arcs];
        for (i, x) in code.crossings.iter().enumerate() {
            for a in [x.over, x.under_in, x.under_out] {
                if !touching[a].contains(&i) {
                    touching[a].push(i);
                }
            }
        }
        Self { q, code, touching }
    }

    // Assigns `arc = color` and everything it forces. Returns false on a
    // contradiction; `trail` records every arc assigned here.
    fn assign(
        &self,
        colors: &mut [Option<usize>],
        arc: usize,
        color: usize,
        trail: &mut Vec<usize>,
    ) -> bool {
        let mut queue = vec![(arc, color)];
        while let Some((a, c)) = queue.pop() {
            match colors[a] {
                Some(old) if old == c => continue,
                Some(_) => return false,
                None => {
                    colors[a] = Some(c);
                    trail.push(a);
                }
            }
            for &i in &self.touching[a] {
                let x = self.code.crossings[i];
                match (colors[x.under_in], colors[x.over], colors[x.under_out]) {
                    (Some(u), Some(o), out) => {
                        let want = if x.positive {
                            self.q.op(u, o)
                        } else {
                            self.q.op_inv(u, o)
                        };
                        match out {
                            Some(v) if v != want => return false,
                            Some(_) => {}
                            None => queue.push((x.under_out, want)),
                        }
                    }
                    (None, Some(o), Some(v)) => {
                        let want = if x.positive {
                            self.q.op_inv(v, o)
                        } else {
                            self.q.op(v, o)
                        };
                        queue.push((x.under_in, want));
                    }
                    _ => {}
                }
            }
        }
        true
    }

    fn visit(&self, colors: &mut Vec<Option<usize>>, found: &mut dyn FnMut(&[Option<usize>])) {
        let Some(arc) = colors.iter().position(Option::is_none) else {
            found(colors);
            return;
        };
        for c in 0..self.q.size() {
            let mut trail = Vec::new();
            if self.assign(colors, arc, c, &mut trail) {
                self.visit(colors, found);
            }
            for a in trail {
                colors[a] = None;
            }
        }
    }

    fn from_first(&self, c: usize, found: &mut dyn FnMut(&[Option<usize>])) {
        let mut colors = vec![None; self.code.arcs];
        if self.assign(&mut colors, 0, c, &mut Vec::new()) {
            self.visit(&mut colors, found);
        }
    }
}

/// Number of colorings, by backtracking with propagation.
pub fn count_colorings(q: &FiniteQuandle, code: &GaussCode) -> Result<u64> {
    check_quandle(q)?;
    let search = Search::new(q, code);
    Ok((0..q.size())
        .into_par_iter()
        .map(|c| {
            let mut n = 0u64;
            search.from_first(c, &mut |_| n += 1);
            n
        })
        .sum())
}

/// Colorings that are not constant.
pub fn count_nontrivial_colorings(q: &FiniteQuandle, code: &GaussCode) -> Result<u64> {
    Ok(count_colorings(q, code)? - q.size() as u64)
}

/// All colorings in lexicographic order.
pub fn enumerate_colorings(q: &FiniteQuandle, code: &GaussCode) -> Result<Vec<Coloring>> {
    check_quandle(q)?;
    let search = Search::new(q, code);
    let mut out = Vec::new();
    for c in 0..q.size() {
        search.from_first(c, &mut |colors| {
            out.push(Coloring(
                colors.iter().map(|c| c.expect("complete")).collect(),
            ))
        });
    }
    out.sort();
    Ok(out)
}

/// Arcwise image of a coloring under a quandle homomorphism.
pub fn project_coloring(
    source: &FiniteQuandle,
    f: &QuandleHom,
    code: &GaussCode,
    coloring: &Coloring,
) -> Result<Coloring> {
    if f.as_slice().len() != source.size() {
        return Err(Error::SizeMismatch {
            expected: source.size(),
            found: f.as_slice().len(),
        });
    }
    if !is_valid_coloring(source, code, coloring) {
        return Err(Error::InvalidInput("not a coloring of this code".into()));
    }
    Ok(Coloring(coloring.0.iter().map(|&c| f.apply(c)).collect()))
}

/// One row of a coloring report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoringCount {
    pub code: String,
    pub quandle: String,
    pub total: u64,
    pub nontrivial: u64,
}

pub fn coloring_count(
    q: &FiniteQuandle,
    quandle_name: &str,
    code: &GaussCode,
) -> Result<ColoringCount> {
    let total = count_colorings(q, code)?;
    Ok(ColoringCount {
        code: code.to_string(),
        quandle: quandle_name.into(),
        total,
        nontrivial: total - q.size() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::build_tilde_r;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const TREFOIL: &str = "O1+U2+O3+U1+O2+U3+";

    fn brute_force(q: &FiniteQuandle, code: &GaussCode) -> u64 {
        let (n, a) = (q.size(), code.arc_count());
        let mut count = 0;
        let mut colors = vec![0usize; a];
        loop {
            if is_valid_coloring(q, code, &Coloring(colors.clone())) {
                count += 1;
            }
            let Some(i) = (0..a).find(|&i| colors[i] + 1 < n) else {
                return count;
            };
            colors[i] += 1;
            colors[..i].iter_mut().for_each(|c| *c = 0);
        }
    }

    fn random_code(rng: &mut ChaCha8Rng, crossings: usize) -> GaussCode {
        let mut visits = Vec::new();
        for i in 0..crossings {
            let positive = rng.random_bool(0.5);
            visits.push(Visit {
                label: i.to_string(),
                over: true,
                positive,
            });
            visits.push(Visit {
                label: i.to_string(),
                over: false,
                positive,
            });
        }
        visits.shuffle(rng);
        GaussCode::from_visits(visits).unwrap()
    }

    fn quandles() -> Vec<(String, FiniteQuandle)> {
        let mut out: Vec<(String, FiniteQuandle)> = (1..=6)
            .map(|m| (format!("R_{m}"), FiniteQuandle::dihedral(m).unwrap()))
            .collect();
        out.push(("T_2".into(), FiniteQuandle::trivial(2)));
        out.push(("tilde R_3".into(), build_tilde_r(1).unwrap().quandle));
        out
    }

    #[test]
    fn parsing() {
        let t = GaussCode::parse(TREFOIL).unwrap();
        assert_eq!((t.crossings().len(), t.arc_count()), (3, 3));
        assert_eq!(t.to_string(), TREFOIL);
        assert_eq!(GaussCode::parse("").unwrap().arc_count(), 1);
        assert_eq!(
            GaussCode::parse("O1+U1−"),
            Err(Error::GaussCode("crossing 1 has mismatched signs".into()))
        );
        assert!(GaussCode::parse("O1+U2+").is_err());
        assert!(GaussCode::parse("O1+O1+").is_err());
        assert!(GaussCode::parse("X1+").is_err());
        assert!(GaussCode::parse("O1 U1").is_err());
        assert_eq!(GaussCode::parse("o1-, u1-").unwrap().arc_count(), 1);
    }

    #[test]
    fn trefoil_counts() {
        let t = GaussCode::parse(TREFOIL).unwrap();
        let r3 = FiniteQuandle::dihedral(3).unwrap();
        assert_eq!(count_colorings(&r3, &t).unwrap(), 9);
        assert_eq!(brute_force(&r3, &t), 9);
        assert_eq!(count_nontrivial_colorings(&r3, &t).unwrap(), 6);
        assert_eq!(count_colorings(&FiniteQuandle::trivial(1), &t).unwrap(), 1);
        let tilde = build_tilde_r(1).unwrap().quandle;
        assert_eq!(
            count_colorings(&tilde, &t).unwrap(),
            brute_force(&tilde, &t)
        );
        assert!(count_nontrivial_colorings(&tilde, &t).unwrap() > 0);
    }

    #[test]
    fn unknot_counts() {
        for (_, q) in quandles() {
            assert_eq!(
                count_colorings(&q, &GaussCode::unknot()).unwrap(),
                q.size() as u64
            );
            assert_eq!(
                count_nontrivial_colorings(&q, &GaussCode::unknot()).unwrap(),
                0
            );
        }
    }

    #[test]
    fn matches_brute_force_on_small_codes() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for crossings in 1..=4 {
            for _ in 0..25 {
                let code = random_code(&mut rng, crossings);
                for (name, q) in quandles() {
                    let n = count_colorings(&q, &code).unwrap();
                    assert_eq!(n, brute_force(&q, &code), "{code} over {name}");
                    assert!(n >= q.size() as u64);
                    assert_eq!(enumerate_colorings(&q, &code).unwrap().len() as u64, n);
                }
            }
        }
    }

    #[test]
    fn rotation_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let tilde = build_tilde_r(1).unwrap().quandle;
        for _ in 0..30 {
            let code = random_code(&mut rng, 5);
            let n = count_colorings(&tilde, &code).unwrap();
            for k in 1..code.visits().len() {
                assert_eq!(count_colorings(&tilde, &code.rotated(k)).unwrap(), n);
            }
        }
    }

    #[test]
    fn projections_and_lifts() {
        let t = build_tilde_r(1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut codes = vec![GaussCode::parse(TREFOIL).unwrap()];
        codes.extend((0..20).map(|_| random_code(&mut rng, 4)));
        for code in codes {
            let lifts = enumerate_colorings(&t.quandle, &code).unwrap();
            let mut by_image: HashMap<Coloring, u64> = HashMap::new();
            for col in &lifts {
                let image = project_coloring(&t.quandle, &t.projection, &code, col).unwrap();
                assert!(is_valid_coloring(&t.base, &code, &image));
                if col.is_constant() {
                    assert!(image.is_constant());
                }
                *by_image.entry(image).or_default() += 1;
            }
            let base = enumerate_colorings(&t.base, &code).unwrap();
            assert!(by_image.keys().all(|c| base.contains(c)));
            assert_eq!(by_image.values().sum::<u64>(), lifts.len() as u64);
        }
        let bad = Coloring(vec![0, 1, 0]);
        assert!(project_coloring(
            &t.quandle,
            &t.projection,
            &GaussCode::parse(TREFOIL).unwrap(),
            &bad
        )
        .is_err());
    }

    #[test]
    fn colorings_in_a_rho_pair_are_constant() {
        // 0 and 3 = ρ(0) act trivially on each other, so such colorings
        // cannot change color at a crossing
        let t = build_tilde_r(1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for crossings in 1..=5 {
            for _ in 0..20 {
                let code = random_code(&mut rng, crossings);
                for col in enumerate_colorings(&t.quandle, &code).unwrap() {
                    if col.0.iter().all(|c| *c == 0 || *c == 3) {
                        assert!(col.is_constant(), "{code}: {:?}", col.0);
                    }
                }
            }
        }
    }
}
