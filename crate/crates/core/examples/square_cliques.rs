//! Sets of shifts whose pairwise differences are all squares; each gives
//! `D(N) <= (N + Σ shifts)/(k+1)`.

use sqdiff::solver::find_square_cliques;

fn main() -> sqdiff::Result<()> {
    for k in [2, 3] {
        for c in find_square_cliques(1_000_000, k)?.iter().take(3) {
            println!(
                "k={k} shifts={:?} difference roots={:?} D(N) <= (N+{})/{}",
                c.shifts(),
                c.difference_roots(),
                c.shift_sum(),
                k + 1
            );
        }
    }
    Ok(())
}
