//! Named chains over `R̃_3` (element labels as in its standard table).

use super::chain::{Cell, Chain};

/// `c = (2,1,2) + (2,0,1) − (1,0,2) − (0,2,1)`.
pub fn cycle_c() -> Chain {
    Chain::plain(
        3,
        &[
            (1, &[2, 1, 2]),
            (1, &[2, 0, 1]),
            (-1, &[1, 0, 2]),
            (-1, &[0, 2, 1]),
        ],
    )
    .expect("well-formed chain")
}

/// The checkerboard 3-cycle `γ`, with `α = 0` and `β = 1`:
/// `(α,0,1,0)+(α,0,1,2)+(α,0,2,0)+(α,1,2,0)−(α,2,1,0)+(β,0,2,0)+(β,1,2,0)+(β,2,0,1)`.
pub fn cycle_gamma() -> Chain {
    const ALPHA: usize = 0;
    const BETA: usize = 1;
    let terms: [(usize, [usize; 3], i64); 8] = [
        (ALPHA, [0, 1, 0], 1),
        (ALPHA, [0, 1, 2], 1),
        (ALPHA, [0, 2, 0], 1),
        (ALPHA, [1, 2, 0], 1),
        (ALPHA, [2, 1, 0], -1),
        (BETA, [0, 2, 0], 1),
        (BETA, [1, 2, 0], 1),
        (BETA, [2, 0, 1], 1),
    ];
    Chain::from_terms(
        3,
        true,
        terms
            .iter()
            .map(|&(y, x, k)| (Cell::with_y(y, x.to_vec()), k)),
    )
    .expect("well-formed chain")
}
