//! The cell complex of the doubly infinite chain arrangement, characters,
//! orbit points with their cycle equations, the census of stable-limit
//! cells, and the degeneration poset.

use crate::graph::{Arc, Cochain0, Cochain1, CycleBasis, FunctionBox, Graph, HalfCochain};
use crate::linalg::{self, Int, Rat};
use crate::slopes::{SlopeContext, SlopeError};
use num::{One, Signed, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ToricError {
    #[error("character values must be nonzero")]
    ZeroCharacter(String),
    #[error("expected {want} character values, got {got}")]
    CharacterCount { want: usize, got: usize },
    #[error("translation requires an integral cycle")]
    NotACycle,
    #[error("torus coordinates must be nonzero")]
    ZeroTorusCoordinate,
    #[error("point does not lie on the expected cell")]
    CellMismatch,
    #[error("gluing coefficients require an untwisted context")]
    TwistedGluing,
    #[error("window parameters must be positive")]
    BadWindow,
    #[error(transparent)]
    Slope(#[from] SlopeError),
    #[error("duplicate cell carries conflicting descriptors")]
    InconsistentDuplicate,
}

/// A cell of the arrangement, named by a half-integer 1-cochain.
pub type CellIndex = HalfCochain;

/// Number of edges on which the index is integral.
pub fn cell_dimension(cell: &CellIndex) -> usize {
    (0..cell.len()).filter(|&e| cell.is_integral(e)).count()
}

/// Closure order of the stratification: the cell of `inner` lies in the
/// closure of the cell of `outer` iff the indices differ by at most 1/2 on
/// every edge and agree on the edges where `inner` is integral.
pub fn cell_contains(outer: &CellIndex, inner: &CellIndex) -> bool {
    assert_eq!(outer.len(), inner.len());
    (0..outer.len()).all(|e| {
        let diff = (outer.twice[e] - inner.twice[e]).abs();
        diff <= 1 && (!inner.is_integral(e) || outer.twice[e] == inner.twice[e])
    })
}

/// Edge character `a` (on the stored orientation, inverses on reversals) and
/// cycle character `b`, extended to edge values by a fixed gauge.
#[derive(Clone, Debug)]
pub struct CharacterPair {
    a: Vec<Rat>,
    b_edge: Vec<Rat>,
    b_cycle: Vec<Rat>,
}

impl CharacterPair {
    /// Build from `a` values per stored edge and `b` values per cycle-basis
    /// element. The edge extension of `b` is the gauge that is 1 on the
    /// spanning-tree edges; observable outputs do not depend on the gauge.
    pub fn new(
        graph: &Graph,
        basis: &CycleBasis,
        a: Vec<Rat>,
        b_cycle: Vec<Rat>,
    ) -> Result<Self, ToricError> {
        if a.len() != graph.edge_count() {
            return Err(ToricError::CharacterCount {
                want: graph.edge_count(),
                got: a.len(),
            });
        }
        if b_cycle.len() != basis.len() {
            return Err(ToricError::CharacterCount {
                want: basis.len(),
                got: b_cycle.len(),
            });
        }
        if a.iter().any(|v| v.is_zero()) {
            return Err(ToricError::ZeroCharacter("a".into()));
        }
        if b_cycle.iter().any(|v| v.is_zero()) {
            return Err(ToricError::ZeroCharacter("b".into()));
        }
        let mut b_edge = vec![Rat::one(); graph.edge_count()];
        for (i, &e) in basis.cotree_edges.iter().enumerate() {
            b_edge[e] = b_cycle[i].clone();
        }
        Ok(CharacterPair { a, b_edge, b_cycle })
    }

    /// Build from explicit edge values for `b`; the cycle character is the
    /// product of edge values along each basis cycle.
    pub fn from_edge_values(
        graph: &Graph,
        basis: &CycleBasis,
        a: Vec<Rat>,
        b_edge: Vec<Rat>,
    ) -> Result<Self, ToricError> {
        if a.len() != graph.edge_count() || b_edge.len() != graph.edge_count() {
            return Err(ToricError::CharacterCount {
                want: graph.edge_count(),
                got: a.len().min(b_edge.len()),
            });
        }
        if a.iter().any(|v| v.is_zero()) {
            return Err(ToricError::ZeroCharacter("a".into()));
        }
        if b_edge.iter().any(|v| v.is_zero()) {
            return Err(ToricError::ZeroCharacter("b".into()));
        }
        let b_cycle = basis
            .cycles
            .iter()
            .map(|c| {
                let mut v = Rat::one();
                for (e, value) in b_edge.iter().enumerate() {
                    v *= rat_pow(value, *c.stored(e));
                }
                v
            })
            .collect();
        Ok(CharacterPair { a, b_edge, b_cycle })
    }

    pub fn ones(graph: &Graph, basis: &CycleBasis) -> Self {
        CharacterPair {
            a: vec![Rat::one(); graph.edge_count()],
            b_edge: vec![Rat::one(); graph.edge_count()],
            b_cycle: vec![Rat::one(); basis.len()],
        }
    }

    pub fn a_stored(&self, e: usize) -> &Rat {
        &self.a[e]
    }

    pub fn b_stored(&self, e: usize) -> &Rat {
        &self.b_edge[e]
    }

    pub fn b_on_cycles(&self) -> &[Rat] {
        &self.b_cycle
    }

    /// `a` evaluated on an arc: the stored value, inverted on reversals.
    pub fn a_on(&self, a: Arc) -> Rat {
        if a.forward {
            self.a[a.edge].clone()
        } else {
            self.a[a.edge].recip()
        }
    }

    pub fn a_pow(&self, e: usize, k: i64) -> Rat {
        rat_pow(&self.a[e], k)
    }

    /// `b` evaluated on an integral cycle: the basis-product of the cycle
    /// character, defined exactly on the span of the basis.
    pub fn b_on_cycle(&self, basis: &CycleBasis, gamma: &Cochain1<i64>) -> Option<Rat> {
        let coeffs = basis.member(gamma)?;
        let mut v = Rat::one();
        for (c, b) in coeffs.iter().zip(&self.b_cycle) {
            v *= rat_pow(b, *c);
        }
        Some(v)
    }
}

pub fn rat_pow(base: &Rat, k: i64) -> Rat {
    match k.cmp(&0) {
        std::cmp::Ordering::Equal => Rat::one(),
        std::cmp::Ordering::Greater => num::pow::pow(base.clone(), k as usize),
        std::cmp::Ordering::Less => num::pow::pow(base.clone(), (-k) as usize).recip(),
    }
}

/// A point of the arrangement supported on one cell: a projective coordinate
/// pair per integral edge, normalized so the second coordinate is 1 when it
/// is nonzero (otherwise the first is normalized to 1).
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitPoint {
    pub cell: CellIndex,
    pub coords: Vec<EdgeCoordinate>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EdgeCoordinate {
    pub edge: usize,
    pub x: Rat,
    pub y: Rat,
}

impl EdgeCoordinate {
    fn normalized(edge: usize, x: Rat, y: Rat) -> Self {
        assert!(!(x.is_zero() && y.is_zero()));
        if !y.is_zero() {
            EdgeCoordinate {
                edge,
                x: x / y.clone(),
                y: Rat::one(),
            }
        } else {
            EdgeCoordinate {
                edge,
                x: Rat::one(),
                y,
            }
        }
    }
}

/// The distinguished point on the cell of `(exponent, f)`: coordinate
/// `(b_e * a_e^slope : 1)` at each integral edge.
pub fn orbit_point(ctx: &SlopeContext, ch: &CharacterPair, f: &Cochain0<i64>) -> OrbitPoint {
    let cell = ctx.slope_cochain(f);
    let coords = ctx
        .graph()
        .stored_arcs()
        .filter(|a| cell.is_integral(a.edge))
        .map(|a| {
            let slope = cell.get_twice(a) / 2;
            let x = ch.b_stored(a.edge) * ch.a_pow(a.edge, slope);
            EdgeCoordinate::normalized(a.edge, x, Rat::one())
        })
        .collect();
    OrbitPoint { cell, coords }
}

/// Check the multiplicative cycle equations of a point on the cell of `f`:
/// for each integral cycle supported on the integral subgraph (basis cycles
/// and their combinations with coefficients up to `bound`), the product of
/// x-coordinates along the cycle, weighted by the characters, balances the
/// product of y-coordinates.
pub fn satisfies_cycle_equations(
    ctx: &SlopeContext,
    ch: &CharacterPair,
    f: &Cochain0<i64>,
    point: &OrbitPoint,
    bound: i64,
) -> Result<bool, ToricError> {
    let cell = ctx.slope_cochain(f);
    if point.cell != cell {
        return Err(ToricError::CellMismatch);
    }
    let graph = ctx.graph();
    let mask = ctx.integral_subgraph(f);
    // Cycle space of the integral subgraph: fundamental cycles of the
    // subgraph, padded back to cochains of the ambient graph.
    let sub_cycles = mask_cycle_basis(graph, &mask);
    if sub_cycles.is_empty() {
        return Ok(true);
    }
    let coord_of = |e: usize| point.coords.iter().find(|c| c.edge == e);
    let g = sub_cycles.len();
    let mut combo = vec![-bound; g];
    loop {
        let mut gamma = Cochain1::zero(graph.edge_count());
        for (c, &m) in sub_cycles.iter().zip(&combo) {
            gamma = gamma.plus(&c.scale(m));
        }
        if !gamma.is_zero() {
            let mut lhs = Rat::one();
            let mut rhs = Rat::one();
            for e in 0..graph.edge_count() {
                let m = *gamma.stored(e);
                if m == 0 {
                    continue;
                }
                let Some(coord) = coord_of(e) else {
                    return Err(ToricError::CellMismatch);
                };
                let w = ch.b_stored(e) * ch.a_pow(e, cell.get_twice(Arc::fwd(e)) / 2);
                let (fwd, mag) = (m > 0, m.unsigned_abs() as usize);
                // Forward traversals contribute x on the left and w*y on the
                // right; backward traversals the mirror image.
                if fwd {
                    lhs *= num::pow::pow(coord.x.clone(), mag);
                    rhs *= num::pow::pow(w, mag) * num::pow::pow(coord.y.clone(), mag);
                } else {
                    lhs *= num::pow::pow(w, mag) * num::pow::pow(coord.y.clone(), mag);
                    rhs *= num::pow::pow(coord.x.clone(), mag);
                }
            }
            if lhs != rhs {
                return Ok(false);
            }
        }
        // Odometer.
        let mut k = 0;
        while k < g {
            if combo[k] < bound {
                combo[k] += 1;
                break;
            }
            combo[k] = -bound;
            k += 1;
        }
        if k >= g {
            break;
        }
    }
    Ok(true)
}

/// Fundamental cycles of the spanning subgraph selected by `mask`, as
/// 1-cochains of the ambient graph.
pub fn mask_cycle_basis(graph: &Graph, mask: &[bool]) -> Vec<Cochain1<i64>> {
    graph.mask_fundamental_cycles(mask).0
}

/// Act by a vertex torus element: the x coordinate of an edge is scaled at
/// the head, the y coordinate at the tail; constant elements act trivially.
pub fn apply_torus(graph: &Graph, z: &[Rat], point: &OrbitPoint) -> Result<OrbitPoint, ToricError> {
    assert_eq!(z.len(), graph.vertex_count());
    if z.iter().any(|v| v.is_zero()) {
        return Err(ToricError::ZeroTorusCoordinate);
    }
    let coords = point
        .coords
        .iter()
        .map(|c| {
            let rec = graph.edge(c.edge);
            EdgeCoordinate::normalized(
                c.edge,
                &c.x * &z[rec.head],
                &c.y * &z[rec.tail],
            )
        })
        .collect();
    Ok(OrbitPoint {
        cell: point.cell.clone(),
        coords,
    })
}

/// Dimension of the torus orbit through a point of the cell: the rank over
/// the rationals of the incidence system of the integral subgraph.
pub fn orbit_dimension(graph: &Graph, cell: &CellIndex) -> usize {
    let rows: Vec<Vec<Int>> = (0..cell.len())
        .filter(|&e| cell.is_integral(e))
        .map(|e| {
            let rec = graph.edge(e);
            let mut row = vec![Int::zero(); graph.vertex_count()];
            row[rec.head] += 1;
            row[rec.tail] -= 1;
            row
        })
        .collect();
    linalg::rank_int(&rows)
}

/// Translate a cell by an integral cycle.
pub fn translate_cell(
    graph: &Graph,
    basis: &CycleBasis,
    cell: &CellIndex,
    gamma: &Cochain1<i64>,
) -> Result<CellIndex, ToricError> {
    if !graph.adjoint(gamma).values.iter().all(|v| *v == 0) || basis.member(gamma).is_none() {
        return Err(ToricError::NotACycle);
    }
    Ok(cell.plus_int(gamma))
}

/// Partition cells by cycle-lattice translation; returns a class id per cell.
pub fn dedup_mod_h1(basis: &CycleBasis, cells: &[CellIndex]) -> Vec<usize> {
    let mut class = vec![usize::MAX; cells.len()];
    let mut next = 0;
    for i in 0..cells.len() {
        if class[i] != usize::MAX {
            continue;
        }
        class[i] = next;
        for j in i + 1..cells.len() {
            if class[j] != usize::MAX {
                continue;
            }
            let diff = cells[j].minus(&cells[i]);
            if let Some(int_diff) = diff.integral_part() {
                if basis.member(&int_diff).is_some() {
                    class[j] = next;
                }
            }
        }
        next += 1;
    }
    class
}

/// Per-edge gluing coefficient of the composed twister subspace: present on
/// the edges where the slope is integral, with value `a^slope` there.
pub fn gluing_coefficients(
    ctx: &SlopeContext,
    ch: &CharacterPair,
    f: &Cochain0<i64>,
) -> Result<Vec<(usize, Rat)>, ToricError> {
    if !ctx.is_untwisted() {
        return Err(ToricError::TwistedGluing);
    }
    let cell = ctx.slope_cochain(f);
    Ok((0..ctx.graph().edge_count())
        .filter(|&e| cell.is_integral(e))
        .map(|e| {
            let slope = ctx.floor_slope(f, Arc::fwd(e));
            (e, ch.a_pow(e, slope))
        })
        .collect())
}

/// Per-vertex degrees of the limit named by a cell, relative to a reference
/// multidegree: at each vertex add the floors of the negated slopes over the
/// incoming arcs.
pub fn descriptor_degrees(graph: &Graph, bdeg: &Cochain0<i64>, cell: &CellIndex) -> Cochain0<i64> {
    let mut out = bdeg.clone();
    for a in graph.arcs() {
        let head = graph.head(a);
        out.values[head] += (-cell.get_twice(a)).div_euclid(2);
    }
    out
}

/// Enumeration bounds for a census: base-change exponents up to `n_max`,
/// function box of radius `f_radius`, and retained cells bounded by
/// `cell_radius` in every coordinate.
#[derive(Clone, Copy, Debug)]
pub struct TruncationWindow {
    pub n_max: u32,
    pub f_radius: i64,
    pub cell_radius: i64,
}

impl TruncationWindow {
    pub fn validate(&self) -> Result<(), ToricError> {
        if self.n_max == 0 || self.n_max > 1_000_000 || self.f_radius < 0 || self.cell_radius <= 0
        {
            return Err(ToricError::BadWindow);
        }
        Ok(())
    }
}

/// The full combinatorial shadow of one stable limit.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitDescriptor {
    /// Canonical enumeration key: smallest exponent, then smallest function.
    pub exponent: u32,
    pub f: Cochain0<i64>,
    pub cell: CellIndex,
    pub dim: usize,
    pub degrees: Cochain0<i64>,
    pub gluing: Vec<EdgeCoordinate>,
    pub h1_class: usize,
    pub orbit_dim: usize,
}

#[derive(Debug)]
pub struct Census {
    pub entries: Vec<LimitDescriptor>,
    /// Pairs `(i, j)` where the cell of entry `i` contains the cell of `j`.
    pub containments: Vec<(usize, usize)>,
    /// Cover relation of the containment order.
    pub hasse: Vec<(usize, usize)>,
    /// Some cell sits exactly on the window boundary, so the window may cut
    /// off parts of the locus; connectivity claims are then suppressed.
    pub boundary_touched: bool,
    /// Connectivity of the containment graph restricted to the window
    /// interior; `None` when the interior is empty.
    pub interior_connected: Option<bool>,
    pub merged_duplicates: usize,
}

impl Census {
    pub fn total_degree_invariant(&self, bdeg: &Cochain0<i64>) -> bool {
        let total = bdeg.degree();
        self.entries.iter().all(|d| {
            let half_edges = (d.cell.len() - cell_dimension(&d.cell)) as i64;
            d.degrees.degree() + half_edges == total
        })
    }

    pub fn max_dimension(&self) -> usize {
        self.entries.iter().map(|d| d.dim).max().unwrap_or(0)
    }

    pub fn top_cells(&self) -> Vec<&LimitDescriptor> {
        let top = self.max_dimension();
        self.entries.iter().filter(|d| d.dim == top).collect()
    }

    /// Connectivity of the undirected containment graph over all entries.
    pub fn containment_connected(&self) -> bool {
        connected_under(self.entries.len(), &self.containments)
    }
}

fn connected_under(n: usize, edges: &[(usize, usize)]) -> bool {
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            for (x, y) in [(a, b), (b, a)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Is `first` a degeneration of `second` (its cell lies in the closure of
/// the cell of `second`)?
pub fn degenerates(first: &LimitDescriptor, second: &LimitDescriptor) -> bool {
    cell_contains(&second.cell, &first.cell)
}

/// Enumerate the stable-limit cells over a truncation window: every
/// `(exponent, f)` pair names a cell; exact duplicates are merged after an
/// agreement check; descriptors carry degrees, gluing data, translation
/// classes and orbit dimensions; the containment order is returned both in
/// full and as its cover relation.
pub fn census(
    ctx: &SlopeContext,
    ch: &CharacterPair,
    bdeg: &Cochain0<i64>,
    window: &TruncationWindow,
) -> Result<Census, ToricError> {
    window.validate()?;
    let graph = ctx.graph();
    assert_eq!(bdeg.len(), graph.vertex_count());
    let basis = graph.cycle_basis();

    let mut by_cell: BTreeMap<CellIndex, LimitDescriptor> = BTreeMap::new();
    let mut merged = 0usize;
    for n in 1..=window.n_max {
        let ctx_n = ctx.with_exponent(n)?;
        for f in FunctionBox::pinned(graph.vertex_count(), window.f_radius) {
            let cell = ctx_n.slope_cochain(&f);
            let in_window = cell.twice.iter().all(|t| t.abs() <= 2 * window.cell_radius);
            if !in_window {
                continue;
            }
            let descriptor = LimitDescriptor {
                exponent: n,
                f: f.clone(),
                cell: cell.clone(),
                dim: cell_dimension(&cell),
                degrees: descriptor_degrees(graph, bdeg, &cell),
                gluing: orbit_point(&ctx_n, ch, &f).coords,
                h1_class: usize::MAX,
                orbit_dim: orbit_dimension(graph, &cell),
            };
            match by_cell.get(&cell) {
                None => {
                    by_cell.insert(cell, descriptor);
                }
                Some(existing) => {
                    // Same cell from a different key must carry the same
                    // observable data, bit for bit.
                    if existing.degrees != descriptor.degrees
                        || existing.gluing != descriptor.gluing
                        || existing.dim != descriptor.dim
                        || existing.orbit_dim != descriptor.orbit_dim
                    {
                        return Err(ToricError::InconsistentDuplicate);
                    }
                    merged += 1;
                }
            }
        }
    }

    let mut entries: Vec<LimitDescriptor> = by_cell.into_values().collect();
    let cells: Vec<CellIndex> = entries.iter().map(|d| d.cell.clone()).collect();
    let classes = dedup_mod_h1(&basis, &cells);
    for (d, c) in entries.iter_mut().zip(&classes) {
        d.h1_class = *c;
    }

    let mut containments = Vec::new();
    for i in 0..entries.len() {
        for j in 0..entries.len() {
            if i != j && cell_contains(&entries[i].cell, &entries[j].cell) {
                containments.push((i, j));
            }
        }
    }
    let contains = |a: usize, b: usize| containments.contains(&(a, b));
    let hasse: Vec<(usize, usize)> = containments
        .iter()
        .copied()
        .filter(|&(i, j)| {
            !(0..entries.len()).any(|k| k != i && k != j && contains(i, k) && contains(k, j))
        })
        .collect();

    let boundary_touched = entries
        .iter()
        .any(|d| d.cell.twice.iter().any(|t| t.abs() == 2 * window.cell_radius));
    let interior: Vec<usize> = (0..entries.len())
        .filter(|&i| {
            entries[i]
                .cell
                .twice
                .iter()
                .all(|t| t.abs() < 2 * window.cell_radius)
        })
        .collect();
    let interior_connected = if interior.is_empty() {
        None
    } else {
        let reindex: BTreeMap<usize, usize> =
            interior.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let edges: Vec<(usize, usize)> = containments
            .iter()
            .filter_map(|&(i, j)| Some((*reindex.get(&i)?, *reindex.get(&j)?)))
            .collect();
        Some(connected_under(interior.len(), &edges))
    };

    Ok(Census {
        entries,
        containments,
        hasse,
        boundary_touched,
        interior_connected,
        merged_duplicates: merged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    fn half(twice: Vec<i64>) -> CellIndex {
        HalfCochain { twice }
    }

    #[test]
    fn containment_rules() {
        let a = half(vec![0, 0]);
        assert!(cell_contains(&a, &a));
        assert!(cell_contains(&half(vec![0, 0]), &half(vec![1, 1])));
        assert!(!cell_contains(&half(vec![1, 0]), &half(vec![0, 0])));
        assert!(!cell_contains(&half(vec![0, 0]), &half(vec![2, 2])));
        assert_eq!(cell_dimension(&half(vec![1, 2])), 1);
    }

    #[test]
    fn orbit_points_match_hand_values() {
        let b2 = banana();
        let basis = b2.cycle_basis();
        let ctx = SlopeContext::untwisted(&b2, &[2, 3], 1).unwrap();

        // All characters 1 at f = 0: every coordinate is (1 : 1).
        let ones = CharacterPair::ones(&b2, &basis);
        let p = orbit_point(&ctx, &ones, &Cochain0::zero(2));
        assert_eq!(p.cell.twice, vec![0, 0]);
        assert!(p.coords.iter().all(|c| c.x.is_one() && c.y.is_one()));

        // a = (2, 3), b edge values (1, 5), f = 6*chi_v: cell (3, 2),
        // coordinates 1*2^3 = 8 and 5*3^2 = 45.
        let ch = CharacterPair::from_edge_values(
            &b2,
            &basis,
            vec![linalg::rat(2), linalg::rat(3)],
            vec![linalg::rat(1), linalg::rat(5)],
        )
        .unwrap();
        let f = Cochain0::from_values(vec![0, 6]);
        let p = orbit_point(&ctx, &ch, &f);
        assert_eq!(p.cell.twice, vec![6, 4]);
        assert_eq!(p.coords.len(), 2);
        assert_eq!(p.coords[0].x, linalg::rat(8));
        assert_eq!(p.coords[1].x, linalg::rat(45));

        // f = 2*chi_v: cell (1, 1/2), single coordinate 1*2^1 at edge 0.
        let f = Cochain0::from_values(vec![0, 2]);
        let p = orbit_point(&ctx, &ch, &f);
        assert_eq!(p.cell.twice, vec![2, 1]);
        assert_eq!(p.coords.len(), 1);
        assert_eq!(p.coords[0].edge, 0);
        assert_eq!(p.coords[0].x, linalg::rat(2));
    }

    #[test]
    fn cycle_equations_hold_and_detect_perturbations() {
        let b2 = banana();
        let basis = b2.cycle_basis();
        let ctx = SlopeContext::untwisted(&b2, &[2, 3], 1).unwrap();
        let ch = CharacterPair::new(
            &b2,
            &basis,
            vec![Rat::new(Int::from(2), Int::from(3)), linalg::rat(5)],
            vec![Rat::new(Int::from(7), Int::from(4))],
        )
        .unwrap();
        let f = Cochain0::from_values(vec![0, 6]);
        let p = orbit_point(&ctx, &ch, &f);
        assert!(satisfies_cycle_equations(&ctx, &ch, &f, &p, 2).unwrap());

        let mut bad = p.clone();
        bad.coords[0].x *= linalg::rat(7);
        assert!(!satisfies_cycle_equations(&ctx, &ch, &f, &bad, 2).unwrap());

        // Trees have no cycle equations.
        let g = k2();
        let gb = g.cycle_basis();
        let gctx = SlopeContext::untwisted(&g, &[2], 1).unwrap();
        let gch = CharacterPair::ones(&g, &gb);
        let gp = orbit_point(&gctx, &gch, &Cochain0::zero(2));
        assert!(satisfies_cycle_equations(&gctx, &gch, &Cochain0::zero(2), &gp, 3).unwrap());
    }

    #[test]
    fn torus_action_and_stabilizers() {
        let b2 = banana();
        let basis = b2.cycle_basis();
        let ctx = SlopeContext::untwisted(&b2, &[1, 1], 1).unwrap();
        let ch = CharacterPair::ones(&b2, &basis);
        let p = orbit_point(&ctx, &ch, &Cochain0::zero(2));

        // Constants act trivially.
        let z = vec![linalg::rat(5), linalg::rat(5)];
        assert_eq!(apply_torus(&b2, &z, &p).unwrap(), p);

        // z = (1, t) scales both x coordinates by t.
        let t = Rat::new(Int::from(3), Int::from(2));
        let z = vec![Rat::one(), t.clone()];
        let q = apply_torus(&b2, &z, &p).unwrap();
        assert!(q.coords.iter().all(|c| c.x == t && c.y.is_one()));

        // Orbit dimension of a fully integral cell is |V| - 1.
        assert_eq!(orbit_dimension(&b2, &half(vec![0, 0])), 1);
        // A cell with no integral edges has a full stabilizer.
        assert_eq!(orbit_dimension(&b2, &half(vec![1, 1])), 0);

        assert!(apply_torus(&b2, &[Rat::zero(), Rat::one()], &p).is_err());
    }

    #[test]
    fn translation_and_dedup() {
        let b2 = banana();
        let basis = b2.cycle_basis();
        let cell = half(vec![0, 0]);

        let gamma = basis.cycles[0].clone();
        let moved = translate_cell(&b2, &basis, &cell, &gamma).unwrap();
        assert_eq!(
            moved.twice,
            vec![2 * gamma.stored(0), 2 * gamma.stored(1)]
        );
        assert_eq!(
            translate_cell(&b2, &basis, &cell, &Cochain1::zero(2)).unwrap(),
            cell
        );

        let mut not_cycle = Cochain1::zero(2);
        not_cycle.set_stored(0, 1);
        assert!(translate_cell(&b2, &basis, &cell, &not_cycle).is_err());

        // The staircase cells are pairwise inequivalent.
        let cells: Vec<CellIndex> = (-2..=2).map(|t| half(vec![t, t])).collect();
        let classes = dedup_mod_h1(&basis, &cells);
        let mut sorted = classes.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), cells.len());

        // Translates of one cell do collapse.
        let c0 = half(vec![0, 0]);
        let c1 = translate_cell(&b2, &basis, &c0, &gamma).unwrap();
        assert_eq!(dedup_mod_h1(&basis, &[c0, c1]), vec![0, 0]);
    }

    #[test]
    fn gluing_coefficient_values() {
        let b2 = banana();
        let basis = b2.cycle_basis();
        let ctx = SlopeContext::untwisted(&b2, &[2, 2], 1).unwrap();
        let ch = CharacterPair::from_edge_values(
            &b2,
            &basis,
            vec![linalg::rat(5), linalg::rat(5)],
            vec![Rat::one(), Rat::one()],
        )
        .unwrap();

        // f = 0: coefficient 1 on every edge.
        let g0 = gluing_coefficients(&ctx, &ch, &Cochain0::zero(2)).unwrap();
        assert_eq!(g0.len(), 2);
        assert!(g0.iter().all(|(_, v)| v.is_one()));

        // Rise 4 over length 2: coefficient 5^2 = 25.
        let f = Cochain0::from_values(vec![0, 4]);
        let g = gluing_coefficients(&ctx, &ch, &f).unwrap();
        assert_eq!(g.len(), 2);
        assert!(g.iter().all(|(_, v)| *v == linalg::rat(25)));

        // Rise 3 over length 2: the edge is absent.
        let f = Cochain0::from_values(vec![0, 3]);
        let g = gluing_coefficients(&ctx, &ch, &f).unwrap();
        assert!(g.is_empty());

        // Twisted contexts are rejected.
        let twisted = SlopeContext::with_integer_twist(
            &b2,
            &[2, 2],
            &Cochain1::from_stored(vec![1, 0]),
            1,
        )
        .unwrap();
        assert!(gluing_coefficients(&twisted, &ch, &Cochain0::zero(2)).is_err());
    }

    #[test]
    fn banana_census_staircase() {
        let b2 = banana();
        let basis = b2.cycle_basis();
        let ctx = SlopeContext::untwisted(&b2, &[1, 1], 1).unwrap();
        let ch = CharacterPair::ones(&b2, &basis);
        let bdeg = Cochain0::from_values(vec![1, 1]);
        let window = TruncationWindow {
            n_max: 4,
            f_radius: 6,
            cell_radius: 2,
        };
        let census = census(&ctx, &ch, &bdeg, &window).unwrap();

        // Exactly the staircase cells (t, t) for |t| <= 2 in half-steps.
        assert_eq!(census.entries.len(), 9);
        for (d, t) in census.entries.iter().zip(-4i64..=4) {
            assert_eq!(d.cell.twice, vec![t, t]);
            assert_eq!(d.dim, if t % 2 == 0 { 2 } else { 0 });
        }
        assert!(census.merged_duplicates > 0);

        // Degrees at the half-cell of f = chi_v: (1, -1), degree balance 2.
        let d = census
            .entries
            .iter()
            .find(|d| d.cell.twice == vec![1, 1])
            .unwrap();
        assert_eq!(d.degrees.values, vec![1, -1]);
        assert!(census.total_degree_invariant(&bdeg));

        // Each top cell carries an orbit of dimension |V| - 1 = 1.
        for d in census.top_cells() {
            assert_eq!(d.orbit_dim, 1);
        }

        // Hasse diagram is a path of 9 nodes: 8 cover pairs, degrees <= 2.
        assert_eq!(census.hasse.len(), 8);
        let mut degree = vec![0usize; census.entries.len()];
        for &(i, j) in &census.hasse {
            degree[i] += 1;
            degree[j] += 1;
        }
        assert!(degree.iter().all(|&d| d <= 2));
        assert!(census.containment_connected());

        // Translation classes are singletons.
        let mut classes: Vec<usize> = census.entries.iter().map(|d| d.h1_class).collect();
        classes.sort_unstable();
        classes.dedup();
        assert_eq!(classes.len(), census.entries.len());

        // The window boundary carries the (±2, ±2) cells.
        assert!(census.boundary_touched);
        assert_eq!(census.interior_connected, Some(true));
    }

    #[test]
    fn compact_type_census_is_a_path() {
        let g = k2();
        let basis = g.cycle_basis();
        let ctx = SlopeContext::untwisted(&g, &[2], 1).unwrap();
        let ch = CharacterPair::ones(&g, &basis);
        let bdeg = Cochain0::from_values(vec![0, 0]);
        let window = TruncationWindow {
            n_max: 3,
            f_radius: 5,
            cell_radius: 2,
        };
        let census = census(&ctx, &ch, &bdeg, &window).unwrap();
        assert!(census.entries.len() > 1);
        assert_eq!(census.hasse.len(), census.entries.len() - 1);
        assert!(census.containment_connected());
        // One edge: every cell is a single coordinate on one axis.
        assert!(census.entries.iter().all(|d| d.cell.len() == 1));
    }

    #[test]
    fn degeneration_pairs() {
        let b2 = banana();
        let basis = b2.cycle_basis();
        let ctx = SlopeContext::untwisted(&b2, &[1, 1], 1).unwrap();
        let ch = CharacterPair::ones(&b2, &basis);
        let bdeg = Cochain0::from_values(vec![1, 1]);
        let window = TruncationWindow {
            n_max: 2,
            f_radius: 4,
            cell_radius: 1,
        };
        let census = census(&ctx, &ch, &bdeg, &window).unwrap();
        let find = |twice: Vec<i64>| {
            census
                .entries
                .iter()
                .find(|d| d.cell.twice == twice)
                .unwrap()
        };
        let origin = find(vec![0, 0]);
        let half_cell = find(vec![1, 1]);
        let one_cell = find(vec![2, 2]);
        assert!(degenerates(half_cell, origin));
        assert!(degenerates(origin, origin));
        assert!(!degenerates(one_cell, origin));
    }
}
