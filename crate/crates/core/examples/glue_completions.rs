//! 8-completions (a TT5 plus a triangle that stays 3-chromatic) and the
//! 13-vertex completions of two of them glued along their triangles.
//!
//!     cargo run --release --example glue_completions [i] [j]

use dichromatic::completions;
use dichromatic::coloring;

fn main() -> dichromatic::Result<()> {
    let eight = completions::eight_completions();
    println!("{} 8-completions up to symmetry of the triangle", eight.len());
    let mut args = std::env::args().skip(1).map(|s| s.parse::<usize>().expect("index"));
    let i = args.next().unwrap_or(0);
    let j = args.next().unwrap_or(49);
    for r in 0..3 {
        let out = completions::thirteen_completions(&eight[i], &eight[j], r)?;
        println!("pair ({i}, {j}) rotation {r}: {} 13-completions", out.len());
        if let Some(t) = out.first() {
            println!("  first: {t}  chi = {}", coloring::dichromatic_number(t));
        }
    }
    Ok(())
}
