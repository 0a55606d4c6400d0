//! Canonical forms, isomorphism tests, automorphism groups and embeddings.
//!
//!     cargo run --release --example canonical_forms

use dichromatic::{isomorphism, named, Tournament};

fn main() -> dichromatic::Result<()> {
    let p7 = Tournament::paley(7)?;
    // reversing every arc of a Paley tournament gives an isomorphic copy
    let rev = p7.reversed();
    println!("paley(7) ~ reverse: {}", isomorphism::are_isomorphic(&p7, &rev));
    println!("canonical code {}", isomorphism::canonical_form(&p7)?);
    println!("relabelling to canonical order: {:?}", isomorphism::canonical_labeling(&p7)?.1);

    let x = Tournament::x13();
    let auts = isomorphism::automorphisms(&x);
    println!("x13: {} automorphisms, orbit of 0 = {}", auts.len(), isomorphism::orbit(&auts, 0));

    let p11 = Tournament::paley(11)?;
    let w1 = named::w1();
    println!("W1 inside paley(11) at {:?}", isomorphism::subtournament_embedding(&p11, &w1));
    println!("paley(7) inside paley(11): {:?}", isomorphism::contains_subtournament(&p11, &p7));
    Ok(())
}
