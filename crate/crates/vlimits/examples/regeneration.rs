//! Regeneration bookkeeping: limit divisors on the subdivision, recovery of
//! the twist from a divisor, and the transport identity tying chip-firing to
//! floor slopes.
//!
//! Run with: cargo run --example regeneration

use vlimits::graph::{fixtures, Arc, Cochain0};
use vlimits::io::rat_str;
use vlimits::regen::{divisor_twist, twister_degrees, RegenContext};
use vlimits::slopes::SlopeContext;
use vlimits::toric::CharacterPair;

fn main() {
    let b2 = fixtures::banana();
    let basis = b2.cycle_basis();
    let slopes = SlopeContext::untwisted(&b2, &[2, 3], 1).unwrap();
    let ctx = RegenContext::new(
        slopes,
        Cochain0::from_values(vec![1, 1]),
        CharacterPair::ones(&b2, &basis),
    )
    .unwrap();
    let sub = ctx.subdivision();

    let f = Cochain0::indicator(2, 1); // chi_v
    println!("chain indices at f = chi_v:");
    for a in b2.stored_arcs() {
        println!("   {}: {}", b2.edge(a.edge).id, ctx.chain_index(&f, a));
    }

    let d = ctx.limit_divisor(&f);
    println!("limit divisor (nonzero coefficients):");
    for (i, &c) in d.coeffs.iter().enumerate() {
        if c != 0 {
            println!("   {:8} -> {c}", sub.vertex_label(i));
        }
    }

    let twist = divisor_twist(sub, &d);
    println!(
        "recovered twist: e1 -> {}, e2 -> {}",
        rat_str(&twist.get(Arc::fwd(0))),
        rat_str(&twist.get(Arc::fwd(1)))
    );
    println!("case split holds: {}", ctx.twist_case_split_holds(&f));

    // Transport: the limit of h equals the limit of f moved by the canonical
    // extension of h - f, and the slope floors decompose additively.
    let h = Cochain0::from_values(vec![0, 3]);
    let report = ctx.check_transport(&f, &h).unwrap();
    println!(
        "transport f -> h: divisors match {}, floors match {}",
        report.divisors_match, report.floors_match
    );

    // Twister restriction degrees against the chip-firing route.
    let g = Cochain0::from_values(vec![1, -1]);
    let degrees = twister_degrees(sub, &d, &g).unwrap();
    let ext = sub.canonical_extension(&d, &g).unwrap();
    let principal = sub.principal_divisor(&ext);
    println!(
        "twister degrees {:?} equal the firing route {:?}",
        degrees.values,
        &principal.coeffs[..2]
    );
}
