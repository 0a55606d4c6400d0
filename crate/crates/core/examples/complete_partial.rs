//! Exhaustive completion of a partial tournament under a pruning rule.
//!
//! Glues a 7-vertex tournament to a transitive 5-set with every cross pair
//! left open and lists the completions that are not 3-colourable.
//!
//!     cargo run --release --example complete_partial [Pal7|W|W0|W1]

use std::time::Instant;

use dichromatic::completions::{Completions, Pruner};
use dichromatic::{isomorphism, named, PartialTournament, Tournament};

fn main() -> dichromatic::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "W1".into());
    let (_, x) = named::seven_vertex_three_chromatic()
        .into_iter()
        .find(|(n, _)| *n == name)
        .unwrap_or_else(|| panic!("unknown tournament {name}"));
    let root = PartialTournament::disjoint_union(&x, &Tournament::transitive(5)?)?;
    println!("{name} + TT5: {} open pairs", root.undecided_count());

    let start = Instant::now();
    let p11 = Tournament::paley(11)?;
    let mut search = Completions::new(&root, Pruner::k_colorable(3));
    let mut found = 0;
    for t in search.by_ref() {
        found += 1;
        if found <= 3 {
            println!("  {t}  contains paley(11): {}", isomorphism::contains_subtournament(&t, &p11).is_some());
        }
    }
    println!("{found} completions, {:?}, {:?}", search.stats(), start.elapsed());
    Ok(())
}
