//! Solver results written to and merged from a JSON-lines journal.

use sqdiff::solver::{solve_exact_d, Budget, CacheRecord, SolverCache};

fn main() -> sqdiff::Result<()> {
    let dir = std::env::temp_dir().join(format!("sqdiff-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("journal.jsonl");
    // a budget-limited run first, then the exact one
    let partial = solve_exact_d(120, Budget::nodes(50))?;
    SolverCache::append(&path, &CacheRecord::from_result(&partial, 0))?;
    for n in [40, 80, 120] {
        let exact = solve_exact_d(n, Budget::unlimited())?;
        SolverCache::append(&path, &CacheRecord::from_result(&exact, 0))?;
    }
    let cache = SolverCache::load(&path)?;
    for r in cache.records() {
        println!("N={} D={} {}", r.n, r.value, r.status);
    }
    println!(
        "{}",
        std::fs::read_to_string(&path)?
            .lines()
            .next()
            .unwrap_or_default()
    );
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
