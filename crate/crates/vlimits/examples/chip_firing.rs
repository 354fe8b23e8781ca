//! Admissible divisors on a subdivided graph and chip-firing moves.
//!
//! Run with: cargo run --example chip_firing

use vlimits::chipfire::Subdivision;
use vlimits::graph::fixtures;

fn show(sub: &Subdivision, label: &str, d: &vlimits::chipfire::Divisor) {
    let parts: Vec<String> = d
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| format!("{}{}", if c == 1 { String::new() } else { format!("{c}·") }, sub.vertex_label(i)))
        .collect();
    println!("{label}: {}", if parts.is_empty() { "0".into() } else { parts.join(" + ") });
}

fn main() {
    let b2 = fixtures::banana();
    let sub = Subdivision::new(&b2, &[2, 2], 1).unwrap();

    // One chip on the interior of the first chain.
    let mut d = sub.zero_divisor();
    d.coeffs[sub.vertex_by_label("z:e1:1").unwrap()] = 1;
    show(&sub, "start", &d);
    println!("admissible: {}", sub.is_admissible(&d));
    println!(
        "charge positions from the stored tails: e1 at {:?}, e2 at {:?}",
        sub.charge_position(&d, 0),
        sub.charge_position(&d, 1)
    );

    let v = b2.vertex_index("v").unwrap();
    let u = b2.vertex_index("u").unwrap();

    let after_v = sub.fire(&d, v).unwrap();
    show(&sub, "after firing v", &after_v);

    // Firing commutes.
    let vu = sub.fire(&after_v, u).unwrap();
    let uv = sub.fire(&sub.fire(&d, u).unwrap(), v).unwrap();
    assert_eq!(vu, uv);
    show(&sub, "after firing v then u", &vu);

    // Firing every vertex once is the identity on divisors.
    assert_eq!(vu, d);
    println!("firing every vertex once returned the starting divisor");

    // Pull the divisor back to a finer subdivision: the chip moves to the
    // scaled chain position.
    let fine = Subdivision::new(&b2, &[2, 2], 3).unwrap();
    let pulled = fine.pullback_from(&sub, &d).unwrap();
    show(&fine, "pullback to scale 3", &pulled);
}
