//! Floor-slope cochains: the half-integer cell index of a stable limit and
//! the spanning subgraph of integral edges.
//!
//! Run with: cargo run --example slope_cells

use vlimits::graph::{fixtures, Cochain0};
use vlimits::slopes::{separation_check, SlopeContext};

fn main() {
    let b2 = fixtures::banana();
    let ctx = SlopeContext::untwisted(&b2, &[2, 3], 1).unwrap();

    println!("lengths (2, 3), no twist, exponent 1:");
    for k in -3..=3 {
        let f = Cochain0::from_values(vec![0, k]);
        let cell = ctx.slope_cochain(&f);
        let mask = ctx.integral_subgraph(&f);
        let edges: Vec<&str> = (0..2)
            .filter(|&e| mask[e])
            .map(|e| b2.edge(e).id.as_str())
            .collect();
        println!(
            "   f(v) = {k:2} -> cell {cell}, integral edges {{{}}}",
            edges.join(", ")
        );
    }

    // Base change refines the arrangement: the same f at exponent 2.
    let ctx2 = ctx.with_exponent(2).unwrap();
    let f = Cochain0::from_values(vec![0, 1]);
    println!(
        "exponent 1 vs 2 at f(v) = 1: {} vs {}",
        ctx.slope_cochain(&f),
        ctx2.slope_cochain(&f)
    );

    // Distinct cells never differ by a nonzero integral cycle.
    let report = separation_check(&ctx, 4, 6).unwrap();
    println!(
        "separation check: {} window entries, {} pairs, counterexample: {}",
        report.entries,
        report.pairs_checked,
        report.counterexample.is_some()
    );
}
