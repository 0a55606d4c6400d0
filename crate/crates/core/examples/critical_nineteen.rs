//! The 19-vertex tournament that needs five colours, and its criticality:
//! reversing any arc or deleting any vertex makes it 4-colourable.
//!
//!     cargo run --release --example critical_nineteen

use dichromatic::{coloring, Tournament};

fn main() {
    let t = Tournament::blowup_pal7();
    let (k, w) = coloring::dichromatic_witness(&t);
    println!("chi = {k}: {:?}", w.classes());
    let mut reversals = 0;
    for (i, j) in t.arcs().collect::<Vec<_>>() {
        if coloring::k_colorable(&t.with_reversed_arc(i, j), 4).is_some() {
            reversals += 1;
        }
    }
    let deletions = (0..t.n())
        .filter(|&v| coloring::k_colorable(&t.delete_vertex(v).expect("19 vertices"), 4).is_some())
        .count();
    println!("{reversals}/{} reversals and {deletions}/{} deletions are 4-colourable", t.arc_count(), t.n());
}
