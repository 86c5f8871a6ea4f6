//! Progressions `{a, a+r², …, a+(M-1)r²}` that meet a dense set in more than
//! `D(M)` points, and the square-difference count they force.

use sqdiff::rng::{random_set, seeded};
use sqdiff::suites::oracle_d;
use sqdiff::varnavides::{chain_audit, count_good, lemma_v_check, overcount_per_pair};

fn main() -> sqdiff::Result<()> {
    let n = 2_000;
    let b = random_set(&mut seeded(5), n, 0.95);
    for m in 2..=10 {
        let dm = oracle_d(m)?;
        let tally = count_good(&b, m, dm)?;
        let lemma = lemma_v_check(&b, m, dm)?;
        let audit = chain_audit(&b, m, dm)?;
        println!(
            "M={m} D(M)={dm} progressions={} good={} pairs={} >= {:.1} chain={} overcount={}",
            tally.total,
            tally.good,
            lemma.measured,
            lemma.bound,
            audit.holds(),
            overcount_per_pair(&b, m)?
        );
    }
    Ok(())
}
