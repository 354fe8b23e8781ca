//! The quadratic form on degree-zero cochains, Voronoi cells of the
//! Laplacian-image lattice, and the twisted mixed tilings realized over the
//! rationals.
//!
//! There is no H-representation of the tiles anywhere: membership and
//! sampling only, all exact. Candidate lattice vectors come from a box in the
//! vertex coordinates whose radius doubles until the verdict agrees on two
//! consecutive radii.

use crate::graph::{Cochain0, FunctionBox, Graph, HalfCochain};
use crate::linalg::{self, Int, Rat};
use crate::slopes::SlopeContext;
use num::{Signed, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TilingError {
    #[error("quadratic form requires a connected spanning subgraph")]
    DisconnectedSubgraph,
    #[error("quadratic form is defined on degree-zero cochains only")]
    NonzeroDegree,
    #[error("point is not in the lattice")]
    NotLatticePoint,
    #[error("tile location requires a context with exponent 1")]
    ExponentNotOne,
    #[error(
        "search window exhausted at radius {radius} ({disconnected_skipped} candidates with \
         disconnected integral subgraph were skipped)"
    )]
    WindowExhausted {
        radius: i64,
        disconnected_skipped: usize,
    },
    #[error("candidate radius exhausted in Voronoi membership")]
    RadiusExhausted,
}

/// Exact Gram data of the quadratic form of a connected spanning subgraph,
/// realized by Laplacian solves on degree-zero cochains.
pub struct QuadraticForm<'g> {
    graph: &'g Graph,
    mask: Vec<bool>,
    gram: Vec<Vec<Rat>>,
}

impl<'g> QuadraticForm<'g> {
    pub fn new(graph: &'g Graph, mask: &[bool]) -> Result<Self, TilingError> {
        assert_eq!(mask.len(), graph.edge_count());
        if !graph.mask_is_connected(mask) {
            return Err(TilingError::DisconnectedSubgraph);
        }
        let n = graph.vertex_count();
        let lap = graph.mask_laplacian_matrix(mask);
        // Reduced Laplacian in the basis indicator(i) - indicator(0).
        let reduced: Vec<Vec<Rat>> = (1..n)
            .map(|i| {
                (1..n)
                    .map(|j| Rat::from_integer(lap[i][j].clone()))
                    .collect()
            })
            .collect();
        let gram = if n == 1 {
            Vec::new()
        } else {
            linalg::invert_rational(&reduced).expect("reduced Laplacian of a connected graph")
        };
        Ok(QuadraticForm {
            graph,
            mask: mask.to_vec(),
            gram,
        })
    }

    pub fn full(graph: &'g Graph) -> Result<Self, TilingError> {
        let mask = vec![true; graph.edge_count()];
        Self::new(graph, &mask)
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    fn coords(eta: &Cochain0<Rat>) -> Vec<Rat> {
        eta.values[1..].to_vec()
    }

    /// Symmetric bilinear extension of the form.
    pub fn pair(&self, eta: &Cochain0<Rat>, zeta: &Cochain0<Rat>) -> Result<Rat, TilingError> {
        if !eta.degree().is_zero() || !zeta.degree().is_zero() {
            return Err(TilingError::NonzeroDegree);
        }
        let a = Self::coords(eta);
        let b = Self::coords(zeta);
        let mut s = Rat::zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                s += ai * &self.gram[i][j] * bj;
            }
        }
        Ok(s)
    }

    /// `q(eta)`: solve the Laplacian against `eta` and pair the solution with
    /// `eta`; positive definite on degree-zero cochains.
    pub fn value(&self, eta: &Cochain0<Rat>) -> Result<Rat, TilingError> {
        self.pair(eta, eta)
    }

    /// Is `beta` in the integral Laplacian image of the subgraph?
    pub fn lattice_member(&self, beta: &Cochain0<i64>) -> bool {
        if !beta.degree().is_zero() {
            return false;
        }
        let n = self.graph.vertex_count();
        let lap = self.graph.mask_laplacian_matrix(&self.mask);
        let rows: Vec<Vec<Int>> = (0..n).map(|i| lap[i].clone()).collect();
        let b: Vec<Int> = beta.values.iter().map(|&v| Int::from(v)).collect();
        linalg::smith_normal_form(&rows).solve(&b).is_some()
    }

    /// Lattice vectors from vertex functions with coordinates in a box of the
    /// given radius (the first vertex is pinned to zero). The subgraph is
    /// connected, so the zero vector arises only from the zero function.
    fn lattice_box(&self, radius: i64) -> Vec<Cochain0<Rat>> {
        FunctionBox::pinned(self.graph.vertex_count(), radius)
            .filter(|f| f.values.iter().any(|&v| v != 0))
            .map(|f| self.mask_laplacian_apply(&f))
            .collect()
    }

    fn mask_laplacian_apply(&self, f: &Cochain0<i64>) -> Cochain0<Rat> {
        let n = self.graph.vertex_count();
        let mut vals = vec![Rat::zero(); n];
        for (e, present) in self.mask.iter().enumerate() {
            if !present {
                continue;
            }
            let rec = self.graph.edge(e);
            let diff = linalg::rat(f.values[rec.head] - f.values[rec.tail]);
            vals[rec.head] += &diff;
            vals[rec.tail] -= &diff;
        }
        Cochain0::from_values(vals)
    }

    /// Membership of `eta` in the Voronoi cell of the origin: `q(eta)` must
    /// not exceed `q(eta - lambda)` over candidate lattice vectors, strictly
    /// if `strict`. The candidate radius doubles until two consecutive radii
    /// agree on the verdict.
    pub fn origin_cell_contains(
        &self,
        eta: &Cochain0<Rat>,
        strict: bool,
    ) -> Result<bool, TilingError> {
        let q_eta = self.value(eta)?;
        let verdict = |radius: i64| -> Result<bool, TilingError> {
            for lam in self.lattice_box(radius) {
                let diff = eta.minus(&lam);
                let q_diff = self.value(&diff)?;
                if q_diff < q_eta || (strict && q_diff == q_eta) {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        let mut radius = 1;
        let mut prev = verdict(radius)?;
        while radius <= 64 {
            let next = verdict(radius * 2)?;
            if next == prev {
                return Ok(next);
            }
            prev = next;
            radius *= 2;
        }
        Err(TilingError::RadiusExhausted)
    }

    /// Membership of `eta` in the Voronoi cell of the lattice point `beta`.
    pub fn voronoi_contains(
        &self,
        beta: &Cochain0<i64>,
        eta: &Cochain0<Rat>,
        strict: bool,
    ) -> Result<bool, TilingError> {
        if !self.lattice_member(beta) {
            return Err(TilingError::NotLatticePoint);
        }
        self.origin_cell_contains(&eta.minus(&beta.to_rat()), strict)
    }
}

/// One tile of the twisted mixed tiling: the cell it is named by, its center
/// (the adjoint of the slope cochain), and the connected spanning subgraph
/// whose Voronoi cell it translates.
#[derive(Clone, Debug)]
pub struct Tile {
    pub f: Cochain0<i64>,
    pub cell: HalfCochain,
    pub center: Cochain0<Rat>,
    pub mask: Vec<bool>,
    pub standard: bool,
}

/// Center of the tile named by `f`: the adjoint of its slope cochain.
pub fn tile_center(ctx: &SlopeContext, f: &Cochain0<i64>) -> Cochain0<Rat> {
    ctx.graph().adjoint(&ctx.slope_cochain(f).to_rat())
}

/// Enumerate the distinct tiles named by functions in the given box
/// (first vertex pinned to zero) whose integral subgraph is connected.
pub fn enumerate_tiles(ctx: &SlopeContext, f_radius: i64) -> Result<Vec<Tile>, TilingError> {
    enumerate_tiles_counting(ctx, f_radius).map(|(tiles, _)| tiles)
}

fn enumerate_tiles_counting(
    ctx: &SlopeContext,
    f_radius: i64,
) -> Result<(Vec<Tile>, usize), TilingError> {
    if ctx.exponent() != 1 {
        return Err(TilingError::ExponentNotOne);
    }
    let graph = ctx.graph();
    let full_form = QuadraticForm::full(graph)?;
    let mut seen: BTreeMap<HalfCochain, Tile> = BTreeMap::new();
    let mut disconnected = 0usize;
    for f in FunctionBox::pinned(graph.vertex_count(), f_radius) {
        let cell = ctx.slope_cochain(&f);
        if seen.contains_key(&cell) {
            continue;
        }
        let mask = ctx.integral_subgraph(&f);
        if !graph.mask_is_connected(&mask) {
            disconnected += 1;
            continue;
        }
        let center = tile_center(ctx, &f);
        let all_edges = mask.iter().all(|&b| b);
        let standard = all_edges && {
            let int_center: Option<Vec<i64>> = center
                .values
                .iter()
                .map(|v| {
                    if v.is_integer() {
                        num::ToPrimitive::to_i64(&v.to_integer())
                    } else {
                        None
                    }
                })
                .collect();
            match int_center {
                Some(vals) => full_form.lattice_member(&Cochain0::from_values(vals)),
                None => false,
            }
        };
        seen.insert(
            cell.clone(),
            Tile {
                f,
                cell,
                center,
                mask,
                standard,
            },
        );
    }
    Ok((seen.into_values().collect(), disconnected))
}

/// Membership of a point in one tile.
pub fn tile_contains(
    graph: &Graph,
    tile: &Tile,
    eta: &Cochain0<Rat>,
    strict: bool,
) -> Result<bool, TilingError> {
    let form = QuadraticForm::new(graph, &tile.mask)?;
    form.origin_cell_contains(&eta.minus(&tile.center), strict)
}

/// A batch of tiles with their quadratic forms cached per subgraph, for
/// repeated membership queries.
pub struct TileSet<'g> {
    pub tiles: Vec<Tile>,
    forms: BTreeMap<Vec<bool>, QuadraticForm<'g>>,
}

impl<'g> TileSet<'g> {
    pub fn build(ctx: &SlopeContext<'g>, f_radius: i64) -> Result<Self, TilingError> {
        let tiles = enumerate_tiles(ctx, f_radius)?;
        let mut forms = BTreeMap::new();
        for t in &tiles {
            if !forms.contains_key(&t.mask) {
                forms.insert(t.mask.clone(), QuadraticForm::new(ctx.graph(), &t.mask)?);
            }
        }
        Ok(TileSet { tiles, forms })
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn contains(
        &self,
        idx: usize,
        eta: &Cochain0<Rat>,
        strict: bool,
    ) -> Result<bool, TilingError> {
        let tile = &self.tiles[idx];
        let form = self.forms.get(&tile.mask).expect("form cached at build");
        form.origin_cell_contains(&eta.minus(&tile.center), strict)
    }

    /// Indices of the tiles containing the point, each with its strictness.
    pub fn hits(&self, eta: &Cochain0<Rat>) -> Result<Vec<(usize, bool)>, TilingError> {
        let mut out = Vec::new();
        for idx in 0..self.tiles.len() {
            if self.contains(idx, eta, false)? {
                let strict = self.contains(idx, eta, true)?;
                out.push((idx, strict));
            }
        }
        Ok(out)
    }

    /// Drop tiles whose center has a coordinate beyond the bound; queries
    /// must then stay well inside the bound.
    pub fn retain_centers_within(&mut self, bound: i64) {
        let b = Rat::from_integer(Int::from(bound));
        self.tiles
            .retain(|t| t.center.values.iter().all(|v| v.abs() <= b));
    }
}

/// Where a point sits in the tiling.
#[derive(Clone, Debug)]
pub enum TileLocation {
    /// Strictly inside a single tile.
    Interior(Tile),
    /// On the common boundary of two or more tiles (all listed).
    Boundary(Vec<Tile>),
}

impl TileLocation {
    pub fn tiles(&self) -> Vec<&Tile> {
        match self {
            TileLocation::Interior(t) => vec![t],
            TileLocation::Boundary(ts) => ts.iter().collect(),
        }
    }
}

/// Find the tiles containing `eta`, growing the function window until the
/// hit set stabilizes across two consecutive radii. Never fails silently:
/// an exhausted window is reported with the number of disconnected-subgraph
/// candidates that were skipped.
pub fn locate_tile(ctx: &SlopeContext, eta: &Cochain0<Rat>) -> Result<TileLocation, TilingError> {
    if ctx.exponent() != 1 {
        return Err(TilingError::ExponentNotOne);
    }
    if !eta.degree().is_zero() {
        return Err(TilingError::NonzeroDegree);
    }
    let graph = ctx.graph();
    let mut forms: BTreeMap<Vec<bool>, QuadraticForm> = BTreeMap::new();
    let mut skipped_disconnected = 0usize;

    let mut radius = 2i64;
    let mut prev: Option<Vec<HalfCochain>> = None;
    while radius <= 64 {
        let (tiles, skipped) = enumerate_tiles_counting(ctx, radius)?;
        skipped_disconnected = skipped;
        let mut hits = Vec::new();
        for tile in tiles {
            if !forms.contains_key(&tile.mask) {
                forms.insert(tile.mask.clone(), QuadraticForm::new(graph, &tile.mask)?);
            }
            let form = &forms[&tile.mask];
            let shifted = eta.minus(&tile.center);
            if form.origin_cell_contains(&shifted, false)? {
                let strict = form.origin_cell_contains(&shifted, true)?;
                hits.push((tile, strict));
            }
        }
        let cells: Vec<HalfCochain> = hits.iter().map(|(t, _)| t.cell.clone()).collect();
        if let Some(prev_cells) = &prev {
            if *prev_cells == cells && !cells.is_empty() {
                return Ok(classify(hits));
            }
        }
        prev = Some(cells);
        radius *= 2;
    }
    Err(TilingError::WindowExhausted {
        radius: 64,
        disconnected_skipped: skipped_disconnected,
    })
}

fn classify(hits: Vec<(Tile, bool)>) -> TileLocation {
    if hits.len() == 1 && hits[0].1 {
        TileLocation::Interior(hits.into_iter().next().unwrap().0)
    } else {
        TileLocation::Boundary(hits.into_iter().map(|(t, _)| t).collect())
    }
}
