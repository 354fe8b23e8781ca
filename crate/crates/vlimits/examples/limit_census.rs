//! The census of stable-limit cells: every cell in a window with its
//! per-component degrees, gluing coordinates and translation class.
//!
//! Run with: cargo run --example limit_census

use vlimits::graph::{fixtures, Cochain0};
use vlimits::io::rat_str;
use vlimits::linalg::rat;
use vlimits::slopes::SlopeContext;
use vlimits::toric::{census, CharacterPair, TruncationWindow};

fn main() {
    let b2 = fixtures::banana();
    let basis = b2.cycle_basis();
    let ctx = SlopeContext::untwisted(&b2, &[1, 1], 1).unwrap();
    let ch = CharacterPair::new(
        &b2,
        &basis,
        vec![rat(2), rat(3)], // edge character a
        vec![rat(5)],         // cycle character b
    )
    .unwrap();
    let bdeg = Cochain0::from_values(vec![1, 1]);
    let window = TruncationWindow {
        n_max: 4,
        f_radius: 6,
        cell_radius: 2,
    };

    let census = census(&ctx, &ch, &bdeg, &window).unwrap();
    println!(
        "{} cells ({} duplicate keys merged), boundary touched: {}",
        census.entries.len(),
        census.merged_duplicates,
        census.boundary_touched
    );
    for d in &census.entries {
        let degrees: Vec<String> = d.degrees.values.iter().map(|v| v.to_string()).collect();
        let gluing: Vec<String> = d
            .gluing
            .iter()
            .map(|c| format!("{}: ({} : {})", b2.edge(c.edge).id, rat_str(&c.x), rat_str(&c.y)))
            .collect();
        println!(
            "   cell {} dim {} from (n = {}, f(v) = {:2})  degrees ({})  orbit dim {}  [{}]",
            d.cell,
            d.dim,
            d.exponent,
            d.f.values[1],
            degrees.join(", "),
            d.orbit_dim,
            gluing.join("; ")
        );
    }
    println!(
        "total degree conserved: {}",
        census.total_degree_invariant(&bdeg)
    );
}
