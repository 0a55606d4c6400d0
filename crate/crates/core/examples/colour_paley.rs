//! Dichromatic numbers of the Paley tournaments, with a witness colouring.
//!
//!     cargo run --release --example colour_paley

use dichromatic::{coloring, Tournament};

fn main() -> dichromatic::Result<()> {
    for n in [3, 7, 11, 19] {
        let t = Tournament::paley(n)?;
        let (k, witness) = coloring::dichromatic_witness(&t);
        assert!(witness.verify(&t));
        println!("paley({n:>2}): chi = {k}");
        for (c, class) in witness.classes().iter().enumerate() {
            println!("    colour {c}: {class}");
        }
    }
    Ok(())
}
