//! The canonical extension of a vertex function to a subdivision: the unique
//! extension keeping an admissible divisor admissible after the move.
//!
//! Run with: cargo run --example canonical_extension

use vlimits::chipfire::Subdivision;
use vlimits::graph::{fixtures, Cochain0};
use vlimits::oracle;

fn main() {
    let b2 = fixtures::banana();
    let sub = Subdivision::new(&b2, &[2, 3], 1).unwrap();

    let mut d = sub.zero_divisor();
    d.coeffs[sub.vertex_by_label("z:e2:2").unwrap()] = 1;

    let f = Cochain0::from_values(vec![0, 2]); // f(u) = 0, f(v) = 2
    let ext = sub.canonical_extension(&d, &f).unwrap();

    println!("divisor: one chip at z:e2:2; f(u) = 0, f(v) = 2");
    println!("canonical extension:");
    for (i, value) in ext.iter().enumerate() {
        println!("   {:8} -> {value}", sub.vertex_label(i));
    }

    let moved = d.plus(&sub.principal_divisor(&ext));
    println!("resulting divisor is admissible: {}", sub.is_admissible(&moved));

    // The exhaustive per-chain search finds the same (and only) extension.
    let per_chain = oracle::per_chain_extensions(&sub, &d, &f);
    for (e, solutions) in per_chain.iter().enumerate() {
        println!(
            "chain {} admits {} bounded extension(s)",
            b2.edge(e).id,
            solutions.len()
        );
    }
    let found = oracle::unique_extension(&sub, &d, &f).unwrap();
    assert_eq!(found, ext);
    println!("exhaustive search agrees with the canonical extension");
}
