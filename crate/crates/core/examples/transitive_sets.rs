//! Maximal transitive subsets, transitive k-sets and disjoint TT5 packings.
//!
//!     cargo run --release --example transitive_sets

use dichromatic::{transitive, Tournament};

fn main() -> dichromatic::Result<()> {
    let p7 = Tournament::paley(7)?;
    let list = transitive::maximal_transitive_sets(&p7);
    println!("paley(7): {} maximal transitive sets, largest has {}", list.len(), list.max_size());
    for s in list.iter() {
        print!("{s} ");
    }
    println!();

    let x = Tournament::x13();
    println!("x13 contains TT4: {:?}", transitive::contains_tt(&x, 4));
    println!("x13 contains TT5: {:?}", transitive::contains_tt(&x, 5));

    let t = Tournament::blowup_pal7();
    match transitive::disjoint_tt5_packing(&t, 3) {
        Some(sets) => println!("19-vertex blow-up: three disjoint TT5 {sets:?}"),
        None => println!("19-vertex blow-up: no three disjoint TT5"),
    }
    Ok(())
}
