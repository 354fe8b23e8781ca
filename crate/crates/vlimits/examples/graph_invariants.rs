//! Cochain complex and lattice invariants of small dual graphs.
//!
//! Run with: cargo run --example graph_invariants

use vlimits::graph::fixtures;
use vlimits::graph::{Cochain0, Cochain1, Graph};

fn describe(name: &str, g: &Graph) {
    println!("== {name}: {} vertices, {} edges", g.vertex_count(), g.edge_count());
    println!("   genus               {}", g.genus());
    println!("   spanning trees      {}", g.spanning_tree_count());
    println!("   lattice index       {}", g.lattice_index());
    println!("   adjoint image index {}", g.adjoint_image_index());
    let factors: Vec<String> = g
        .jacobian_invariants()
        .iter()
        .map(|d| d.to_string())
        .collect();
    println!("   jacobian factors    [{}]", factors.join(", "));
    let basis = g.cycle_basis();
    println!("   cycle basis rank    {} (saturated: {})", basis.len(), basis.is_saturated());
}

fn main() {
    for (name, g) in [
        ("single edge", fixtures::k2()),
        ("two parallel edges", fixtures::banana()),
        ("three parallel edges", fixtures::theta()),
        ("triangle", fixtures::triangle()),
        ("complete graph on four vertices", fixtures::k4()),
    ] {
        describe(name, &g);
    }

    // The complex in action: d, its adjoint, and the Laplacian.
    let tri = fixtures::triangle();
    let f = Cochain0::indicator(3, 0);
    let df = tri.coboundary(&f);
    println!("\ncoboundary of the first-vertex indicator on the triangle:");
    for e in 0..tri.edge_count() {
        println!("   {}: {}", tri.edge(e).id, df.stored(e));
    }
    println!("laplacian values: {:?}", tri.laplacian(&f).values);

    // Adjointness of the pairing, checked on one pair.
    let h = Cochain1::from_stored(vec![1, -2, 3]);
    assert_eq!(f.dot(&tri.adjoint(&h)), tri.coboundary(&f).dot(&h));
    println!("pairing adjointness holds on a sample pair");
}
