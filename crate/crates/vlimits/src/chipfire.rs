//! Subdivided graphs, divisors, admissibility, canonical extensions, and
//! chip-firing moves.
//!
//! A [`Subdivision`] replaces every edge `e` of the base graph by a chain of
//! `scale * length(e)` unit segments. Interior chain vertices are indexed
//! from the tail of the stored orientation; the reversed indexing identity
//! `z(rev a, i) = z(a, segments - i)` is implemented here so callers never
//! assume it.

use crate::graph::{Arc, Cochain0, Graph};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ChipfireError {
    #[error("edge lengths must be positive")]
    BadLength,
    #[error("subdivision scale must be positive")]
    BadScale,
    #[error("subdivision has more than {0} chain segments on one edge")]
    TooLarge(u64),
    #[error("divisor is not admissible: {0}")]
    NotAdmissible(String),
    #[error("coarse scale {coarse} does not divide fine scale {fine}")]
    ScaleMismatch { coarse: u32, fine: u32 },
    #[error("divisor has {got} coefficients, subdivision has {want} vertices")]
    SizeMismatch { got: usize, want: usize },
}

/// The graph `H^n`: base vertices first (in input order), then the interior
/// chain vertices of each edge in stored-edge order.
pub struct Subdivision<'g> {
    graph: &'g Graph,
    lengths: Vec<u32>,
    scale: u32,
    offsets: Vec<usize>,
    total: usize,
}

impl<'g> Subdivision<'g> {
    pub fn new(graph: &'g Graph, lengths: &[u32], scale: u32) -> Result<Self, ChipfireError> {
        assert_eq!(lengths.len(), graph.edge_count());
        if lengths.contains(&0) {
            return Err(ChipfireError::BadLength);
        }
        if scale == 0 {
            return Err(ChipfireError::BadScale);
        }
        const MAX_SEGMENTS: u64 = 10_000_000;
        let widest = lengths.iter().map(|&l| l as u64 * scale as u64).max().unwrap_or(0);
        if widest > MAX_SEGMENTS {
            return Err(ChipfireError::TooLarge(MAX_SEGMENTS));
        }
        let mut offsets = Vec::with_capacity(graph.edge_count());
        let mut next = graph.vertex_count();
        for &len in lengths {
            offsets.push(next);
            next += (scale * len) as usize - 1;
        }
        Ok(Subdivision {
            graph,
            lengths: lengths.to_vec(),
            scale,
            offsets,
            total: next,
        })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn lengths(&self) -> &[u32] {
        &self.lengths
    }

    /// Number of unit segments on edge `e`.
    pub fn segments(&self, e: usize) -> u32 {
        self.scale * self.lengths[e]
    }

    pub fn vertex_count(&self) -> usize {
        self.total
    }

    pub fn is_base_vertex(&self, w: usize) -> bool {
        w < self.graph.vertex_count()
    }

    /// Interior vertex `j` of stored edge `e`, `1 <= j <= segments(e) - 1`.
    pub fn interior_vertex(&self, e: usize, j: u32) -> usize {
        debug_assert!(j >= 1 && j < self.segments(e));
        self.offsets[e] + (j - 1) as usize
    }

    /// Chain vertex `j` counted from the tail of the arc, `0 <= j <= segments`.
    pub fn chain_vertex(&self, a: Arc, j: u32) -> usize {
        let segs = self.segments(a.edge);
        debug_assert!(j <= segs);
        let from_tail = if a.forward { j } else { segs - j };
        if from_tail == 0 {
            self.graph.tail(Arc::fwd(a.edge))
        } else if from_tail == segs {
            self.graph.head(Arc::fwd(a.edge))
        } else {
            self.interior_vertex(a.edge, from_tail)
        }
    }

    /// Label of a subdivision vertex: the base id, or `z:<edge>:<j>` with `j`
    /// counted from the stored tail.
    pub fn vertex_label(&self, w: usize) -> String {
        if self.is_base_vertex(w) {
            return self.graph.vertex_ids()[w].clone();
        }
        for e in 0..self.graph.edge_count() {
            let lo = self.offsets[e];
            let hi = lo + (self.segments(e) - 1) as usize;
            if w >= lo && w < hi {
                return format!("z:{}:{}", self.graph.edge(e).id, w - lo + 1);
            }
        }
        unreachable!("vertex index out of range")
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        if let Some(v) = self.graph.vertex_index(label) {
            return Some(v);
        }
        let mut parts = label.splitn(3, ':');
        if parts.next()? != "z" {
            return None;
        }
        let e = self.graph.edge_index(parts.next()?)?;
        let j: u32 = parts.next()?.parse().ok()?;
        if j >= 1 && j < self.segments(e) {
            Some(self.interior_vertex(e, j))
        } else {
            None
        }
    }

    pub fn zero_divisor(&self) -> Divisor {
        Divisor {
            coeffs: vec![0; self.total],
        }
    }

    pub fn check_size(&self, d: &Divisor) -> Result<(), ChipfireError> {
        if d.coeffs.len() == self.total {
            Ok(())
        } else {
            Err(ChipfireError::SizeMismatch {
                got: d.coeffs.len(),
                want: self.total,
            })
        }
    }

    /// At most one charged interior vertex per edge, with coefficient 1.
    pub fn is_admissible(&self, d: &Divisor) -> bool {
        self.check_size(d).is_ok()
            && (0..self.graph.edge_count()).all(|e| {
                let mut charged = 0;
                for j in 1..self.segments(e) {
                    match d.coeffs[self.interior_vertex(e, j)] {
                        0 => {}
                        1 => charged += 1,
                        _ => return false,
                    }
                }
                charged <= 1
            })
    }

    /// Position (from the tail of the stored orientation) of the charged
    /// interior vertex of edge `e`, for an admissible divisor.
    pub fn charge_position(&self, d: &Divisor, e: usize) -> Option<u32> {
        (1..self.segments(e)).find(|&j| d.coeffs[self.interior_vertex(e, j)] != 0)
    }

    /// Weighted moment of the chain coefficients toward the head of `a`:
    /// `sum_j (segments - j) * D(z(a, j))`. For an admissible divisor this is
    /// the distance from the charge to the head, and 0 when uncharged.
    pub fn interior_moment(&self, d: &Divisor, a: Arc) -> i64 {
        let segs = self.segments(a.edge) as i64;
        (1..self.segments(a.edge))
            .map(|j| (segs - j as i64) * d.coeffs[self.chain_vertex(a, j)])
            .sum()
    }

    /// Divisor of a function on the subdivision vertices: at each vertex the
    /// sum of `f(tail) - f(vertex)` over incoming arcs. Total degree is 0.
    pub fn principal_divisor(&self, f: &[i64]) -> Divisor {
        assert_eq!(f.len(), self.total);
        let mut coeffs = vec![0i64; self.total];
        for e in 0..self.graph.edge_count() {
            let a = Arc::fwd(e);
            for j in 0..self.segments(e) {
                let x = self.chain_vertex(a, j);
                let y = self.chain_vertex(a, j + 1);
                coeffs[y] += f[x] - f[y];
                coeffs[x] += f[y] - f[x];
            }
        }
        Divisor { coeffs }
    }

    /// The canonical extension of a single vertex indicator: raise the head
    /// vertex and, on each chain into it, everything strictly past the charge.
    fn single_fire_extension(&self, d: &Divisor, v: usize) -> Vec<i64> {
        let mut ext = vec![0i64; self.total];
        ext[v] = 1;
        for a in self.graph.arcs_into(v) {
            let segs = self.segments(a.edge);
            let toward_head = self.interior_moment(d, a);
            debug_assert!(toward_head >= 0 && (toward_head as u32) < segs);
            for j in (segs - toward_head as u32)..segs {
                ext[self.chain_vertex(a, j)] = 1;
            }
        }
        ext
    }

    /// The unique extension of `f` such that `d + div(extension)` stays
    /// admissible: normalize to a nonnegative function by adding a constant
    /// (constant extensions are canonical for constants), then fire vertices
    /// with remaining positive value one at a time.
    pub fn canonical_extension(
        &self,
        d: &Divisor,
        f: &Cochain0<i64>,
    ) -> Result<Vec<i64>, ChipfireError> {
        self.check_size(d)?;
        if !self.is_admissible(d) {
            return Err(ChipfireError::NotAdmissible(
                "canonical extensions require an admissible divisor".into(),
            ));
        }
        assert_eq!(f.len(), self.graph.vertex_count());
        let shift = -f.values.iter().min().copied().unwrap_or(0).min(0);
        let mut remaining: Vec<i64> = f.values.iter().map(|&x| x + shift).collect();
        let mut ext = vec![0i64; self.total];
        let mut current = d.clone();
        while let Some(v) = (0..remaining.len()).find(|&v| remaining[v] > 0) {
            let step = self.single_fire_extension(&current, v);
            let moved = self.principal_divisor(&step);
            current = current.plus(&moved);
            debug_assert!(self.is_admissible(&current));
            for (acc, s) in ext.iter_mut().zip(&step) {
                *acc += s;
            }
            remaining[v] -= 1;
        }
        for x in ext.iter_mut() {
            *x -= shift;
        }
        Ok(ext)
    }

    /// Admissible chip-firing move at a base vertex.
    pub fn fire(&self, d: &Divisor, v: usize) -> Result<Divisor, ChipfireError> {
        let ext = self.canonical_extension(d, &Cochain0::indicator(self.graph.vertex_count(), v))?;
        Ok(d.plus(&self.principal_divisor(&ext)))
    }

    /// Pull a divisor on a coarser subdivision back to this one: base
    /// coefficients are kept, a charge at position `j` moves to position
    /// `j * (scale / coarse.scale)`.
    pub fn pullback_from(
        &self,
        coarse: &Subdivision,
        d: &Divisor,
    ) -> Result<Divisor, ChipfireError> {
        coarse.check_size(d)?;
        if !self.scale.is_multiple_of(coarse.scale) {
            return Err(ChipfireError::ScaleMismatch {
                coarse: coarse.scale,
                fine: self.scale,
            });
        }
        assert_eq!(
            self.lengths, coarse.lengths,
            "pullback requires subdivisions of the same weighted graph"
        );
        let k = self.scale / coarse.scale;
        let mut out = self.zero_divisor();
        for v in 0..self.graph.vertex_count() {
            out.coeffs[v] = d.coeffs[v];
        }
        for e in 0..self.graph.edge_count() {
            for j in 1..coarse.segments(e) {
                let c = d.coeffs[coarse.interior_vertex(e, j)];
                if c != 0 {
                    out.coeffs[self.interior_vertex(e, j * k)] = c;
                }
            }
        }
        Ok(out)
    }
}

/// Integer-valued divisor on the vertices of a subdivision, stored densely
/// in the canonical vertex enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisor {
    pub coeffs: Vec<i64>,
}

impl Divisor {
    pub fn degree(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn plus(&self, other: &Divisor) -> Divisor {
        Divisor {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use proptest::prelude::*;

    fn divisor_from(sub: &Subdivision, entries: &[(&str, i64)]) -> Divisor {
        let mut d = sub.zero_divisor();
        for (label, c) in entries {
            d.coeffs[sub.vertex_by_label(label).unwrap()] = *c;
        }
        d
    }

    #[test]
    fn chain_indexing_reverses() {
        let b2 = banana();
        let sub = Subdivision::new(&b2, &[2, 3], 1).unwrap();
        let a = Arc::fwd(1);
        for j in 0..=3 {
            assert_eq!(sub.chain_vertex(a, j), sub.chain_vertex(a.rev(), 3 - j));
        }
        assert_eq!(sub.vertex_label(sub.chain_vertex(a, 1)), "z:e2:1");
        assert_eq!(sub.vertex_by_label("z:e2:2"), Some(sub.interior_vertex(1, 2)));
    }

    #[test]
    fn principal_divisor_examples() {
        // K2 subdivided with length 2: u - z - v.
        let g = k2();
        let sub = Subdivision::new(&g, &[2], 1).unwrap();
        let f = vec![0, 1, 1]; // u, v, z:e1:1
        let div = sub.principal_divisor(&f);
        assert_eq!(div, divisor_from(&sub, &[("u", 1), ("z:e1:1", -1)]));
        assert_eq!(div.degree(), 0);

        // Constant functions have zero divisor.
        let constant = vec![5; sub.vertex_count()];
        assert!(sub.principal_divisor(&constant).coeffs.iter().all(|&c| c == 0));

        // Banana with both edges of length 2.
        let b2 = banana();
        let sub = Subdivision::new(&b2, &[2, 2], 1).unwrap();
        let mut f = vec![0i64; sub.vertex_count()];
        f[sub.vertex_by_label("v").unwrap()] = 1;
        f[sub.vertex_by_label("z:e1:1").unwrap()] = 1;
        let div = sub.principal_divisor(&f);
        assert_eq!(
            div,
            divisor_from(&sub, &[("u", 1), ("z:e1:1", -1), ("z:e2:1", 1), ("v", -1)])
        );
        assert_eq!(div.degree(), 0);
    }

    #[test]
    fn admissibility_and_moments() {
        let b2 = banana();
        let sub = Subdivision::new(&b2, &[2, 2], 1).unwrap();
        let zero = sub.zero_divisor();
        assert!(sub.is_admissible(&zero));
        for a in b2.arcs() {
            assert_eq!(sub.interior_moment(&zero, a), 0);
        }

        let d = divisor_from(&sub, &[("z:e1:1", 1)]);
        assert!(sub.is_admissible(&d));
        assert_eq!(sub.interior_moment(&d, Arc::fwd(0)), 1);
        assert_eq!(sub.interior_moment(&d, Arc::fwd(1)), 0);

        let bad = divisor_from(&sub, &[("z:e1:1", 2)]);
        assert!(!sub.is_admissible(&bad));
    }

    #[test]
    fn canonical_extension_examples() {
        let b2 = banana();
        let sub = Subdivision::new(&b2, &[2, 2], 1).unwrap();
        let d = divisor_from(&sub, &[("z:e1:1", 1)]); // moment 1 toward v on e1

        // Zero extends to zero.
        let ext = sub.canonical_extension(&d, &Cochain0::zero(2)).unwrap();
        assert!(ext.iter().all(|&x| x == 0));

        // Constants extend as constants with zero divisor.
        let ext = sub.canonical_extension(&d, &Cochain0::constant(2, 1)).unwrap();
        assert!(ext.iter().all(|&x| x == 1));
        assert!(sub.principal_divisor(&ext).coeffs.iter().all(|&c| c == 0));

        // Single-vertex extension: raise v and the chain past the charge.
        let ext = sub.canonical_extension(&d, &Cochain0::indicator(2, 1)).unwrap();
        assert_eq!(ext[sub.vertex_by_label("v").unwrap()], 1);
        assert_eq!(ext[sub.vertex_by_label("z:e1:1").unwrap()], 1);
        assert_eq!(ext[sub.vertex_by_label("z:e2:1").unwrap()], 0);
        assert_eq!(ext[sub.vertex_by_label("u").unwrap()], 0);

        // Rejects non-admissible divisors.
        let bad = divisor_from(&sub, &[("z:e2:1", 3)]);
        assert!(matches!(
            sub.canonical_extension(&bad, &Cochain0::zero(2)),
            Err(ChipfireError::NotAdmissible(_))
        ));
    }

    #[test]
    fn fire_examples() {
        let b2 = banana();
        let sub = Subdivision::new(&b2, &[2, 2], 1).unwrap();
        let d = divisor_from(&sub, &[("z:e1:1", 1)]);
        let fired = sub.fire(&d, 1).unwrap();
        assert_eq!(
            fired,
            divisor_from(&sub, &[("u", 1), ("z:e2:1", 1), ("v", -1)])
        );
        assert!(sub.is_admissible(&fired));

        // Ordinary chip firing on a single unit edge.
        let g = k2();
        let sub = Subdivision::new(&g, &[1], 1).unwrap();
        let fired = sub.fire(&sub.zero_divisor(), 1).unwrap();
        assert_eq!(fired, divisor_from(&sub, &[("u", 1), ("v", -1)]));

        // Firing every vertex once returns the divisor.
        let b2 = banana();
        let sub = Subdivision::new(&b2, &[2, 3], 1).unwrap();
        let d = divisor_from(&sub, &[("z:e2:2", 1), ("u", 2)]);
        let mut cur = d.clone();
        for v in [1, 0] {
            cur = sub.fire(&cur, v).unwrap();
        }
        assert_eq!(cur, d);
    }

    #[test]
    fn pullback_examples() {
        let b2 = banana();
        let coarse = Subdivision::new(&b2, &[2, 2], 1).unwrap();
        let fine = Subdivision::new(&b2, &[2, 2], 2).unwrap();
        let d = divisor_from(&coarse, &[("z:e1:1", 1)]);

        // Identity at equal scale.
        let same = coarse.pullback_from(&coarse, &d).unwrap();
        assert_eq!(same, d);

        // Doubling the scale doubles the interior index.
        let up = fine.pullback_from(&coarse, &d).unwrap();
        assert_eq!(up, divisor_from(&fine, &[("z:e1:2", 1)]));
        assert!(fine.is_admissible(&up));

        let zero = coarse.zero_divisor();
        assert_eq!(fine.pullback_from(&coarse, &zero).unwrap(), fine.zero_divisor());

        let bad = Subdivision::new(&b2, &[2, 2], 3).unwrap();
        assert!(matches!(
            coarse.pullback_from(&bad, &bad.zero_divisor()),
            Err(ChipfireError::ScaleMismatch { .. })
        ));
    }

    fn arb_fixture() -> impl Strategy<Value = (crate::graph::Graph, Vec<u32>)> {
        (0..4usize, proptest::collection::vec(1u32..=3, 3)).prop_map(|(pick, lens)| {
            let g = match pick {
                0 => banana(),
                1 => theta(),
                2 => triangle(),
                _ => k2(),
            };
            let lens = lens[..g.edge_count().min(3)].to_vec();
            let lens = if lens.len() < g.edge_count() {
                let mut l = lens;
                l.resize(g.edge_count(), 1);
                l
            } else {
                lens
            };
            (g, lens)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(150))]

        #[test]
        fn firing_commutes_and_preserves_admissibility(
            (g, lens) in arb_fixture(),
            charges in proptest::collection::vec(0u32..=6, 3),
            base in proptest::collection::vec(-2i64..=2, 3),
            vw in (0usize..3, 0usize..3),
        ) {
            let sub = Subdivision::new(&g, &lens, 1).unwrap();
            let mut d = sub.zero_divisor();
            for v in 0..g.vertex_count() {
                d.coeffs[v] = base[v.min(base.len() - 1)];
            }
            for e in 0..g.edge_count() {
                let segs = sub.segments(e);
                if segs > 1 {
                    let pos = charges[e.min(charges.len() - 1)] % segs;
                    if pos >= 1 {
                        d.coeffs[sub.interior_vertex(e, pos)] = 1;
                    }
                }
            }
            prop_assume!(sub.is_admissible(&d));
            let (v, w) = (vw.0 % g.vertex_count(), vw.1 % g.vertex_count());
            let vw_order = sub.fire(&sub.fire(&d, v).unwrap(), w).unwrap();
            let wv_order = sub.fire(&sub.fire(&d, w).unwrap(), v).unwrap();
            prop_assert_eq!(&vw_order, &wv_order);
            prop_assert!(sub.is_admissible(&vw_order));
            prop_assert_eq!(vw_order.degree(), d.degree());
        }
    }
}
