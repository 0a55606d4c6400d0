//! Enumerates tournaments up to isomorphism and tallies their dichromatic numbers.
//!
//!     cargo run --release --example small_census [max_n]

use std::collections::BTreeMap;

use dichromatic::{coloring, isomorphism, transitive};

fn main() -> dichromatic::Result<()> {
    let max: usize = std::env::args().nth(1).map_or(Ok(7), |s| s.parse()).expect("max_n must be a number");
    for n in 1..=max {
        let all = isomorphism::enumerate_tournaments(n)?;
        let mut by_chi: BTreeMap<usize, usize> = BTreeMap::new();
        let mut tt5_free = 0;
        for t in &all {
            *by_chi.entry(coloring::dichromatic_number(t)).or_default() += 1;
            if transitive::contains_tt(t, 5).is_none() {
                tt5_free += 1;
            }
        }
        println!("n={n}: {} tournaments, by chi {by_chi:?}, {tt5_free} without TT5", all.len());
    }
    Ok(())
}
