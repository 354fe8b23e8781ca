//! Render the standard Voronoi tiling of the triangle graph (the hexagonal
//! picture of the two-dimensional root lattice) as an SVG with an exact
//! JSON sidecar.
//!
//! Run with: cargo run --example tiling_figure

use vlimits::cli::{cmd_tiling_svg, load_graph};

const TRIANGLE: &str = r#"{"vertices": ["a", "b", "c"], "edges": [
    {"id": "e1", "tail": "a", "head": "b", "length": 1, "twist": 0},
    {"id": "e2", "tail": "b", "head": "c", "length": 1, "twist": 0},
    {"id": "e3", "tail": "a", "head": "c", "length": 1, "twist": 0}
]}"#;

fn main() {
    let data = load_graph(TRIANGLE).unwrap();
    let (svg, sidecar) = cmd_tiling_svg(&data, 25, 3).unwrap();

    let dir = std::env::temp_dir();
    let svg_path = dir.join("triangle-tiling.svg");
    let json_path = dir.join("triangle-tiling.svg.json");
    std::fs::write(&svg_path, &svg).unwrap();
    std::fs::write(&json_path, &sidecar).unwrap();

    println!("wrote {}", svg_path.display());
    println!("wrote {}", json_path.display());
    let tiles = sidecar.matches("\"cell\"").count();
    println!("figure shades membership over a 25x25 grid; {tiles} tiles in the sidecar");
}
