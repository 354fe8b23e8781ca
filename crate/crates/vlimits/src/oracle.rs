//! Independent reference implementations used to cross-validate the main
//! code paths, plus deterministic generators for randomized suites.
//!
//! Nothing here shares logic with the modules it checks: extensions are
//! found by exhaustive per-chain search, cycle membership by forced
//! coefficients, and Voronoi values by direct Laplacian solves.

use crate::chipfire::{Divisor, Subdivision};
use crate::graph::{Cochain0, Cochain1, CycleBasis, Graph};
use rand::Rng;

/// All admissible extensions of `f` with respect to `d`, found chain by
/// chain: interior values of each chain range over the closed interval
/// spanned by the endpoint values widened by the chain length. Returns one
/// solution list per edge; the extension is unique iff every list is a
/// singleton.
pub fn per_chain_extensions(sub: &Subdivision, d: &Divisor, f: &Cochain0<i64>) -> Vec<Vec<Vec<i64>>> {
    let graph = sub.graph();
    let mut out = Vec::with_capacity(graph.edge_count());
    for e in 0..graph.edge_count() {
        let rec = graph.edge(e);
        let segs = sub.segments(e) as i64;
        let interior = (segs - 1) as usize;
        let fu = f.values[rec.tail];
        let fv = f.values[rec.head];
        let lo = fu.min(fv) - segs;
        let hi = fu.max(fv) + segs;
        let mut solutions = Vec::new();
        if interior == 0 {
            solutions.push(Vec::new());
            out.push(solutions);
            continue;
        }
        let mut vals = vec![lo; interior];
        loop {
            // Admissibility of d + div on this chain's interior.
            let at = |j: i64| -> i64 {
                if j == 0 {
                    fu
                } else if j == segs {
                    fv
                } else {
                    vals[(j - 1) as usize]
                }
            };
            let mut charged = 0;
            let mut ok = true;
            for j in 1..segs {
                let div = at(j - 1) + at(j + 1) - 2 * at(j);
                let coeff = d.coeffs[sub.interior_vertex(e, j as u32)] + div;
                match coeff {
                    0 => {}
                    1 => charged += 1,
                    _ => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok && charged <= 1 {
                solutions.push(vals.clone());
            }
            let mut k = 0;
            while k < interior {
                if vals[k] < hi {
                    vals[k] += 1;
                    break;
                }
                vals[k] = lo;
                k += 1;
            }
            if k >= interior {
                break;
            }
        }
        out.push(solutions);
    }
    out
}

/// The unique admissible extension found by exhaustive search, if every
/// chain admits exactly one solution.
pub fn unique_extension(sub: &Subdivision, d: &Divisor, f: &Cochain0<i64>) -> Option<Vec<i64>> {
    let per_chain = per_chain_extensions(sub, d, f);
    if per_chain.iter().any(|s| s.len() != 1) {
        return None;
    }
    let graph = sub.graph();
    let mut ext = vec![0i64; sub.vertex_count()];
    ext[..graph.vertex_count()].copy_from_slice(&f.values);
    for (e, solutions) in per_chain.iter().enumerate() {
        for (j, &v) in solutions[0].iter().enumerate() {
            ext[sub.interior_vertex(e, (j + 1) as u32)] = v;
        }
    }
    Some(ext)
}

/// Cycle membership by forced coefficients: the coefficient of each basis
/// cycle is pinned by the value on its cotree edge; membership holds iff the
/// reconstruction matches exactly.
pub fn cycle_member_forced(basis: &CycleBasis, h: &Cochain1<i64>) -> Option<Vec<i64>> {
    let coeffs: Vec<i64> = basis
        .cotree_edges
        .iter()
        .map(|&e| *h.stored(e))
        .collect();
    let mut recon = Cochain1::zero(h.len());
    for (c, &m) in basis.cycles.iter().zip(&coeffs) {
        recon = recon.plus(&c.scale(m));
    }
    if recon == *h {
        Some(coeffs)
    } else {
        None
    }
}

/// Random connected loopless multigraph: a random spanning tree plus extra
/// random non-loop edges.
pub fn random_connected_graph<R: Rng>(rng: &mut R, max_vertices: usize, max_extra: usize) -> Graph {
    let n = rng.gen_range(2..=max_vertices.max(2));
    let mut vertices = Vec::new();
    for i in 0..n {
        vertices.push(format!("v{}", i + 1));
    }
    let mut edges = Vec::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        edges.push((i, j));
    }
    let extra = rng.gen_range(0..=max_extra);
    for _ in 0..extra {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b {
            edges.push((a, b));
        }
    }
    let triples: Vec<(String, String, String)> = edges
        .iter()
        .enumerate()
        .map(|(k, &(a, b))| {
            (
                format!("e{}", k + 1),
                vertices[a].clone(),
                vertices[b].clone(),
            )
        })
        .collect();
    Graph::new(vertices, triples).expect("construction is valid")
}

/// Random admissible divisor: bounded base coefficients plus at most one
/// interior unit chip per edge.
pub fn random_admissible_divisor<R: Rng>(rng: &mut R, sub: &Subdivision) -> Divisor {
    let graph = sub.graph();
    let mut d = sub.zero_divisor();
    for v in 0..graph.vertex_count() {
        d.coeffs[v] = rng.gen_range(-2..=2);
    }
    for e in 0..graph.edge_count() {
        let segs = sub.segments(e);
        if segs > 1 && rng.gen_bool(0.6) {
            let j = rng.gen_range(1..segs);
            d.coeffs[sub.interior_vertex(e, j)] = 1;
        }
    }
    debug_assert!(sub.is_admissible(&d));
    d
}

/// Random integer vertex function in a box.
pub fn random_function<R: Rng>(rng: &mut R, n: usize, radius: i64) -> Cochain0<i64> {
    Cochain0::from_values((0..n).map(|_| rng.gen_range(-radius..=radius)).collect())
}

/// All connected loopless multigraphs with at most `max_vertices` vertices
/// and at most `max_edges` edges (edge multisets over the vertex pairs, no
/// isomorphism reduction).
pub fn small_connected_multigraphs(max_vertices: usize, max_edges: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 2..=max_vertices {
        let vertices: Vec<String> = (0..n).map(|i| format!("v{}", i + 1)).collect();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| ((a + 1)..n).map(move |b| (a, b)))
            .collect();
        // Multisets of pairs, sizes 1..=max_edges, as nondecreasing index
        // sequences.
        let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
        while let Some(seq) = stack.pop() {
            if !seq.is_empty() {
                let triples: Vec<(String, String, String)> = seq
                    .iter()
                    .enumerate()
                    .map(|(k, &p)| {
                        (
                            format!("e{}", k + 1),
                            vertices[pairs[p].0].clone(),
                            vertices[pairs[p].1].clone(),
                        )
                    })
                    .collect();
                if let Ok(g) = Graph::new(vertices.clone(), triples) {
                    out.push(g);
                }
            }
            if seq.len() < max_edges {
                let start = seq.last().copied().unwrap_or(0);
                for p in start..pairs.len() {
                    let mut next = seq.clone();
                    next.push(p);
                    stack.push(next);
                }
            }
        }
    }
    out
}
