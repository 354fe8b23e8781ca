//! The exact quadratic form, Voronoi cells of the Laplacian-image lattice,
//! and locating points in the mixed tiling.
//!
//! Run with: cargo run --example voronoi_tiles

use vlimits::graph::{fixtures, Cochain0};
use vlimits::io::rat_str;
use vlimits::linalg::rat;
use vlimits::slopes::SlopeContext;
use vlimits::tilings::{locate_tile, QuadraticForm, TileLocation};

fn main() {
    let b2 = fixtures::banana();
    let q = QuadraticForm::full(&b2).unwrap();

    // q(chi_v - chi_u) = 1/2 on the two-edge banana.
    let eta = Cochain0::from_values(vec![rat(-1), rat(1)]);
    println!("q(chi_v - chi_u) = {}", rat_str(&q.value(&eta).unwrap()));

    // The lattice is generated by 2(chi_v - chi_u); its midpoint is a
    // boundary point of the origin cell.
    let origin = Cochain0::zero(2);
    println!(
        "midpoint in Vor(O): {}, strictly: {}",
        q.voronoi_contains(&origin, &eta, false).unwrap(),
        q.voronoi_contains(&origin, &eta, true).unwrap()
    );

    // Locate points in the mixed tiling (lengths (1,1), no twist).
    let ctx = SlopeContext::untwisted(&b2, &[1, 1], 1).unwrap();
    for (label, vals) in [
        ("origin", vec![rat(0), rat(0)]),
        ("lattice point 2(chi_v - chi_u)", vec![rat(-2), rat(2)]),
        ("midpoint", vec![rat(-1), rat(1)]),
    ] {
        let eta = Cochain0::from_values(vals);
        match locate_tile(&ctx, &eta).unwrap() {
            TileLocation::Interior(tile) => {
                println!("{label}: interior of the tile of cell {}", tile.cell)
            }
            TileLocation::Boundary(tiles) => {
                let cells: Vec<String> = tiles.iter().map(|t| t.cell.to_string()).collect();
                println!("{label}: boundary of {}", cells.join(" and "));
            }
        }
    }
}
