//! The degeneration order between stable limits: cell containment, its
//! cover relation, and DOT output for the Hasse diagram.
//!
//! Run with: cargo run --example degeneration_poset

use vlimits::graph::{fixtures, Cochain0};
use vlimits::slopes::SlopeContext;
use vlimits::toric::{cell_contains, census, degenerates, CharacterPair, TruncationWindow};

fn main() {
    let tri = fixtures::triangle();
    let basis = tri.cycle_basis();
    let ctx = SlopeContext::untwisted(&tri, &[1, 2, 2], 1).unwrap();
    let ch = CharacterPair::ones(&tri, &basis);
    let bdeg = Cochain0::constant(3, 1);
    let window = TruncationWindow {
        n_max: 2,
        f_radius: 3,
        cell_radius: 1,
    };
    let census = census(&ctx, &ch, &bdeg, &window).unwrap();

    println!("census of {} cells on the triangle with lengths (1, 2, 2)", census.entries.len());
    println!("cover pairs in the degeneration order:");
    for &(i, j) in &census.hasse {
        println!(
            "   {} (dim {})  >  {} (dim {})",
            census.entries[i].cell,
            census.entries[i].dim,
            census.entries[j].cell,
            census.entries[j].dim
        );
    }

    // Degeneration queries between descriptors.
    if let (Some(a), Some(b)) = (census.entries.first(), census.entries.get(1)) {
        println!(
            "\n{} degenerates from {}: {}",
            a.cell,
            b.cell,
            degenerates(a, b)
        );
        println!(
            "containment is reflexive: {}",
            cell_contains(&a.cell, &a.cell)
        );
    }

    // Compact DOT rendering of the Hasse diagram.
    println!("\ndigraph degenerations {{");
    for d in &census.entries {
        println!("  \"{}\" [label=\"{} dim {}\"];", d.cell, d.cell, d.dim);
    }
    for &(i, j) in &census.hasse {
        println!(
            "  \"{}\" -> \"{}\";",
            census.entries[i].cell, census.entries[j].cell
        );
    }
    println!("}}");
}
