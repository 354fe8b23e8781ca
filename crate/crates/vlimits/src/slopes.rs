//! Floor slopes of twisted functions, the half-integer slope cochain that
//! names toric cells, and the spanning subgraph of integral edges.

use crate::graph::{Arc, Cochain0, Cochain1, FunctionBox, Graph, HalfCochain};
use crate::linalg::{Int, Rat};
use num::{integer::Integer, ToPrimitive};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SlopeError {
    #[error("edge lengths must be positive")]
    BadLength,
    #[error("base-change exponent must be positive")]
    BadExponent,
    #[error("twist times exponent must be integral on edge index {0}")]
    NonIntegralTwist(usize),
}

/// Graph with edge lengths, a rational twisting 1-cochain, and a base-change
/// exponent. The product of exponent and twist must be integral.
pub struct SlopeContext<'g> {
    graph: &'g Graph,
    lengths: Vec<u32>,
    twist: Cochain1<Rat>,
    exponent: u32,
    scaled_twist: Vec<i64>,
}

impl<'g> SlopeContext<'g> {
    pub fn new(
        graph: &'g Graph,
        lengths: &[u32],
        twist: Cochain1<Rat>,
        exponent: u32,
    ) -> Result<Self, SlopeError> {
        assert_eq!(lengths.len(), graph.edge_count());
        assert_eq!(twist.len(), graph.edge_count());
        if lengths.contains(&0) {
            return Err(SlopeError::BadLength);
        }
        if exponent == 0 {
            return Err(SlopeError::BadExponent);
        }
        let mut scaled = Vec::with_capacity(graph.edge_count());
        for e in 0..graph.edge_count() {
            let v: Rat = twist.stored(e) * Rat::from_integer(Int::from(exponent));
            if !v.is_integer() {
                return Err(SlopeError::NonIntegralTwist(e));
            }
            scaled.push(v.to_integer().to_i64().expect("twist fits in i64"));
        }
        Ok(SlopeContext {
            graph,
            lengths: lengths.to_vec(),
            twist,
            exponent,
            scaled_twist: scaled,
        })
    }

    /// Context with integral twist given on the stored orientation.
    pub fn with_integer_twist(
        graph: &'g Graph,
        lengths: &[u32],
        twist: &Cochain1<i64>,
        exponent: u32,
    ) -> Result<Self, SlopeError> {
        Self::new(graph, lengths, twist.to_rat(), exponent)
    }

    pub fn untwisted(graph: &'g Graph, lengths: &[u32], exponent: u32) -> Result<Self, SlopeError> {
        Self::new(
            graph,
            lengths,
            Cochain1::zero(graph.edge_count()),
            exponent,
        )
    }

    /// Same data at a different base-change exponent.
    pub fn with_exponent(&self, exponent: u32) -> Result<SlopeContext<'g>, SlopeError> {
        SlopeContext::new(self.graph, &self.lengths, self.twist.clone(), exponent)
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn lengths(&self) -> &[u32] {
        &self.lengths
    }

    pub fn twist(&self) -> &Cochain1<Rat> {
        &self.twist
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_untwisted(&self) -> bool {
        self.twist.is_zero()
    }

    /// `exponent * twist` on an arc (an integer by the context invariant).
    pub fn scaled_twist(&self, a: Arc) -> i64 {
        if a.forward {
            self.scaled_twist[a.edge]
        } else {
            -self.scaled_twist[a.edge]
        }
    }

    /// Chain length `exponent * length(e)` of an edge.
    pub fn segments(&self, e: usize) -> i64 {
        self.exponent as i64 * self.lengths[e] as i64
    }

    /// Floor slope of `f` along an arc:
    /// `floor((f(head) - f(tail) + n*twist) / (n*length))`.
    pub fn floor_slope(&self, f: &Cochain0<i64>, a: Arc) -> i64 {
        let rise = f.values[self.graph.head(a)] - f.values[self.graph.tail(a)];
        Integer::div_floor(&(rise + self.scaled_twist(a)), &self.segments(a.edge))
    }

    /// The half-integer cochain of averaged slopes; this is the cell index of
    /// the stable limit named by `(exponent, f)`.
    pub fn slope_cochain(&self, f: &Cochain0<i64>) -> HalfCochain {
        HalfCochain {
            twice: self
                .graph
                .stored_arcs()
                .map(|a| self.floor_slope(f, a) - self.floor_slope(f, a.rev()))
                .collect(),
        }
    }

    /// Spanning subgraph of the edges where the slope cochain is integral.
    pub fn integral_subgraph(&self, f: &Cochain0<i64>) -> Vec<bool> {
        let cell = self.slope_cochain(f);
        (0..self.graph.edge_count())
            .map(|e| cell.is_integral(e))
            .collect()
    }
}

/// One enumerated slope cochain with its enumeration key.
#[derive(Clone, Debug)]
pub struct WindowEntry {
    pub exponent: u32,
    pub f: Cochain0<i64>,
    pub cell: HalfCochain,
}

/// Enumerate slope cochains over all exponents up to `n_max` and all `f`
/// with `f` zero at the first vertex and the remaining values in
/// `[-f_radius, f_radius]` (slopes are translation invariant).
pub fn enumerate_window(
    ctx: &SlopeContext,
    n_max: u32,
    f_radius: i64,
) -> Result<Vec<WindowEntry>, SlopeError> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        let ctx_n = ctx.with_exponent(n)?;
        for f in FunctionBox::pinned(ctx.graph().vertex_count(), f_radius) {
            out.push(WindowEntry {
                exponent: n,
                cell: ctx_n.slope_cochain(&f),
                f,
            });
        }
    }
    Ok(out)
}

/// Counterexample to the separation property: two window entries whose slope
/// cochains differ by a nonzero integral cycle.
#[derive(Clone, Debug)]
pub struct SeparationCounterexample {
    pub first: WindowEntry,
    pub second: WindowEntry,
}

#[derive(Debug)]
pub struct SeparationReport {
    pub entries: usize,
    pub pairs_checked: usize,
    pub counterexample: Option<SeparationCounterexample>,
}

impl SeparationReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Exhaustively check, over a finite window, that slope cochains differing by
/// an integral cycle are in fact equal (cycle membership is decided by a
/// Smith-normal-form solve in the cycle basis).
pub fn separation_check(
    ctx: &SlopeContext,
    n_max: u32,
    f_radius: i64,
) -> Result<SeparationReport, SlopeError> {
    let entries = enumerate_window(ctx, n_max, f_radius)?;
    let basis = ctx.graph().cycle_basis();
    let mut pairs = 0;
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            pairs += 1;
            if entries[i].cell == entries[j].cell {
                continue;
            }
            let diff = entries[i].cell.minus(&entries[j].cell);
            let Some(int_diff) = diff.integral_part() else {
                continue;
            };
            if basis.member(&int_diff).is_some() {
                return Ok(SeparationReport {
                    entries: entries.len(),
                    pairs_checked: pairs,
                    counterexample: Some(SeparationCounterexample {
                        first: entries[i].clone(),
                        second: entries[j].clone(),
                    }),
                });
            }
        }
    }
    Ok(SeparationReport {
        entries: entries.len(),
        pairs_checked: pairs,
        counterexample: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use num::Zero;
    use proptest::prelude::*;

    fn b2_ctx<'g>(graph: &'g Graph, lengths: &[u32], n: u32) -> SlopeContext<'g> {
        SlopeContext::untwisted(graph, lengths, n).unwrap()
    }

    #[test]
    fn floor_slopes_on_banana() {
        let b2 = banana();
        let ctx = b2_ctx(&b2, &[2, 3], 1);
        let f = Cochain0::indicator(2, 1);
        assert_eq!(ctx.floor_slope(&f, Arc::fwd(0)), 0);
        assert_eq!(ctx.floor_slope(&f, Arc::fwd(0).rev()), -1);
        assert_eq!(ctx.floor_slope(&f, Arc::fwd(1)), 0);
        assert_eq!(ctx.floor_slope(&f, Arc::fwd(1).rev()), -1);

        let constant = Cochain0::constant(2, 4);
        for a in b2.arcs() {
            assert_eq!(ctx.floor_slope(&constant, a), 0);
        }

        let f2 = Cochain0::from_values(vec![0, 2]);
        assert_eq!(ctx.floor_slope(&f2, Arc::fwd(0)), 1);
        assert_eq!(ctx.floor_slope(&f2, Arc::fwd(0).rev()), -1);
    }

    #[test]
    fn slope_cochains_on_banana() {
        let b2 = banana();
        let ctx = b2_ctx(&b2, &[2, 3], 1);
        let f = Cochain0::indicator(2, 1);
        assert_eq!(ctx.slope_cochain(&f).twice, vec![1, 1]);
        let f2 = Cochain0::from_values(vec![0, 2]);
        assert_eq!(ctx.slope_cochain(&f2).twice, vec![2, 1]);
        assert_eq!(ctx.slope_cochain(&Cochain0::zero(2)).twice, vec![0, 0]);
    }

    #[test]
    fn integral_subgraphs_on_banana() {
        let b2 = banana();
        let ctx = b2_ctx(&b2, &[2, 3], 1);
        assert_eq!(ctx.integral_subgraph(&Cochain0::zero(2)), vec![true, true]);
        let f2 = Cochain0::from_values(vec![0, 2]);
        assert_eq!(ctx.integral_subgraph(&f2), vec![true, false]);
        let f = Cochain0::indicator(2, 1);
        assert_eq!(ctx.integral_subgraph(&f), vec![false, false]);
    }

    #[test]
    fn twist_validation() {
        let b2 = banana();
        let half = Cochain1::from_stored(vec![
            Rat::new(Int::from(1), Int::from(2)),
            Rat::zero(),
        ]);
        assert!(matches!(
            SlopeContext::new(&b2, &[1, 1], half.clone(), 1),
            Err(SlopeError::NonIntegralTwist(0))
        ));
        let ctx = SlopeContext::new(&b2, &[1, 1], half, 2).unwrap();
        assert_eq!(ctx.scaled_twist(Arc::fwd(0)), 1);
        assert_eq!(ctx.scaled_twist(Arc::fwd(0).rev()), -1);
    }

    #[test]
    fn separation_passes_on_fixtures() {
        let b2 = banana();
        let ctx = b2_ctx(&b2, &[1, 1], 1);
        let report = separation_check(&ctx, 4, 6).unwrap();
        assert!(report.passed(), "{:?}", report.counterexample);

        let th = theta();
        let ctx = SlopeContext::untwisted(&th, &[1, 2, 3], 1).unwrap();
        let report = separation_check(&ctx, 4, 6).unwrap();
        assert!(report.passed(), "{:?}", report.counterexample);

        // Trivial pair: identical keys are equal, hence never a counterexample.
        let report = separation_check(&ctx, 1, 0).unwrap();
        assert!(report.passed());
        assert_eq!(report.entries, 1);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn slope_cochain_invariants(
            fv in proptest::collection::vec(-8i64..=8, 3),
            lens in proptest::collection::vec(1u32..=3, 3),
            shift in -5i64..=5,
            scale_p in 1u32..=3,
        ) {
            let tri = triangle();
            let ctx = SlopeContext::untwisted(&tri, &lens, 1).unwrap();
            let f = Cochain0::from_values(fv.clone());

            // Antisymmetry and half-integrality are structural; the floor
            // pair sums to 0 exactly on integral edges, else to -1.
            let cell = ctx.slope_cochain(&f);
            for a in tri.stored_arcs() {
                let s = ctx.floor_slope(&f, a) + ctx.floor_slope(&f, a.rev());
                let integral = cell.is_integral(a.edge);
                prop_assert_eq!(s, if integral { 0 } else { -1 });
                prop_assert_eq!(cell.get_twice(a), -cell.get_twice(a.rev()));
            }

            // Translation invariance.
            let shifted = Cochain0::from_values(fv.iter().map(|v| v + shift).collect());
            prop_assert_eq!(ctx.slope_cochain(&shifted), cell.clone());

            // Scaling (p*n, p*f) leaves the cochain unchanged.
            let ctx_p = ctx.with_exponent(scale_p).unwrap();
            let f_p = Cochain0::from_values(fv.iter().map(|v| v * scale_p as i64).collect());
            prop_assert_eq!(ctx_p.slope_cochain(&f_p), cell);
        }

        #[test]
        fn length_rescaling_identity(
            fv in proptest::collection::vec(-6i64..=6, 2),
            twist in proptest::collection::vec(-2i64..=2, 2),
            m in 1u32..=2,
        ) {
            // Slopes with (lengths, twist, n=2) match (m*lengths, m*twist, n=2/m).
            prop_assume!(2 % m == 0);
            let b2 = banana();
            let f = Cochain0::from_values(fv);
            let tw = Cochain1::from_stored(twist.clone());
            let ctx = SlopeContext::with_integer_twist(&b2, &[1, 2], &tw, 2).unwrap();
            let scaled_lengths = [m, 2 * m];
            let scaled_twist = tw.scale(m as i64);
            let ctx2 = SlopeContext::with_integer_twist(&b2, &scaled_lengths, &scaled_twist, 2 / m)
                .unwrap();
            prop_assert_eq!(ctx.slope_cochain(&f), ctx2.slope_cochain(&f));
        }
    }
}
