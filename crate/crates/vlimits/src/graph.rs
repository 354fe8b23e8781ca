//! The weighted multigraph, its cochain complex, Laplacian, cycle space,
//! and lattice data.
//!
//! A [`Graph`] is a finite connected multigraph without loops. Every stored
//! edge carries a fixed orientation (tail to head); the reversed arc is always
//! computed, never stored, so antisymmetry of 1-cochains is structural.

use crate::linalg::{self, Int, Rat};
use num::{BigInt, Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("edge `{edge}` references unknown vertex `{vertex}`")]
    UnknownVertex { edge: String, vertex: String },
    #[error("edge `{0}` is a loop; loop edges are discarded from dual graphs and rejected here")]
    LoopEdge(String),
    #[error("graph is not connected")]
    Disconnected,
}

#[derive(Clone, Debug)]
pub struct EdgeRec {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

/// Oriented edge: a stored edge index plus a direction flag.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Arc {
    pub edge: usize,
    pub forward: bool,
}

impl Arc {
    pub fn fwd(edge: usize) -> Arc {
        Arc { edge, forward: true }
    }

    pub fn rev(self) -> Arc {
        Arc {
            edge: self.edge,
            forward: !self.forward,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<EdgeRec>,
}

impl Graph {
    /// Build and validate a graph from vertex ids and `(id, tail, head)`
    /// edge triples. Rejects loops, duplicates and disconnected inputs.
    pub fn new<S: Into<String>>(
        vertices: Vec<S>,
        edges: Vec<(S, S, S)>,
    ) -> Result<Graph, GraphError> {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        if vertices.is_empty() {
            return Err(GraphError::Empty);
        }
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(GraphError::DuplicateVertex(v.clone()));
            }
        }
        let index_of = |id: &str| vertices.iter().position(|v| v == id);
        let mut recs: Vec<EdgeRec> = Vec::with_capacity(edges.len());
        for (id, tail, head) in edges {
            let id: String = id.into();
            let tail: String = tail.into();
            let head: String = head.into();
            if recs.iter().any(|e| e.id == id) {
                return Err(GraphError::DuplicateEdge(id));
            }
            let t = index_of(&tail).ok_or_else(|| GraphError::UnknownVertex {
                edge: id.clone(),
                vertex: tail.clone(),
            })?;
            let h = index_of(&head).ok_or_else(|| GraphError::UnknownVertex {
                edge: id.clone(),
                vertex: head.clone(),
            })?;
            if t == h {
                return Err(GraphError::LoopEdge(id));
            }
            recs.push(EdgeRec {
                id,
                tail: t,
                head: h,
            });
        }
        let g = Graph {
            vertices,
            edges: recs,
        };
        if !g.mask_is_connected(&vec![true; g.edge_count()]) {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// First Betti number `|E| - |V| + 1`.
    pub fn genus(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count()
    }

    pub fn vertex_ids(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    pub fn edge(&self, e: usize) -> &EdgeRec {
        &self.edges[e]
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn tail(&self, a: Arc) -> usize {
        if a.forward {
            self.edges[a.edge].tail
        } else {
            self.edges[a.edge].head
        }
    }

    pub fn head(&self, a: Arc) -> usize {
        if a.forward {
            self.edges[a.edge].head
        } else {
            self.edges[a.edge].tail
        }
    }

    /// Arcs in the stored orientation, in edge order.
    pub fn stored_arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        (0..self.edge_count()).map(Arc::fwd)
    }

    /// All `2|E|` arcs, stored orientation first.
    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        (0..self.edge_count())
            .map(Arc::fwd)
            .chain((0..self.edge_count()).map(|e| Arc::fwd(e).rev()))
    }

    pub fn arcs_into(&self, v: usize) -> Vec<Arc> {
        self.arcs().filter(|&a| self.head(a) == v).collect()
    }

    pub fn arcs_out_of(&self, v: usize) -> Vec<Arc> {
        self.arcs().filter(|&a| self.tail(a) == v).collect()
    }

    /// Connected components of the spanning subgraph selected by `mask`,
    /// as a vertex -> component-id map.
    pub fn mask_components(&self, mask: &[bool]) -> Vec<usize> {
        assert_eq!(mask.len(), self.edge_count());
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = next;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for (e, rec) in self.edges.iter().enumerate() {
                    if !mask[e] {
                        continue;
                    }
                    for (x, y) in [(rec.tail, rec.head), (rec.head, rec.tail)] {
                        if x == v && comp[y] == usize::MAX {
                            comp[y] = next;
                            stack.push(y);
                        }
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn mask_component_count(&self, mask: &[bool]) -> usize {
        self.mask_components(mask).iter().max().map_or(0, |m| m + 1)
    }

    pub fn mask_is_connected(&self, mask: &[bool]) -> bool {
        self.mask_component_count(mask) <= 1
    }
}

/// Scalars usable as cochain entries: `i64`, `BigInt`, `BigRational`.
pub trait Scalar:
    Clone
    + PartialEq
    + num::Zero
    + std::ops::Neg<Output = Self>
    + std::ops::AddAssign
    + std::ops::SubAssign
    + for<'a> std::ops::AddAssign<&'a Self>
    + for<'a> std::ops::SubAssign<&'a Self>
{
}

impl Scalar for i64 {}
impl Scalar for BigInt {}
impl Scalar for Rat {}

/// Function on vertices with values in a ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain0<T> {
    pub values: Vec<T>,
}

impl<T: Scalar> Cochain0<T> {
    pub fn zero(n: usize) -> Self {
        Cochain0 {
            values: vec![T::zero(); n],
        }
    }

    pub fn from_values(values: Vec<T>) -> Self {
        Cochain0 { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, v: usize) -> &T {
        &self.values[v]
    }

    /// Total degree `sum_v f(v)`.
    pub fn degree(&self) -> T {
        let mut s = T::zero();
        for v in &self.values {
            s += v;
        }
        s
    }

    pub fn dot(&self, other: &Self) -> T
    where
        T: for<'a> std::ops::Mul<&'a T, Output = T>,
    {
        let mut s = T::zero();
        for (a, b) in self.values.iter().zip(&other.values) {
            s += &(a.clone() * b);
        }
        s
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, b) in out.values.iter_mut().zip(&other.values) {
            *a += b;
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, b) in out.values.iter_mut().zip(&other.values) {
            *a -= b;
        }
        out
    }
}

impl Cochain0<i64> {
    /// Characteristic function of a vertex.
    pub fn indicator(n: usize, v: usize) -> Self {
        let mut c = Self::zero(n);
        c.values[v] = 1;
        c
    }

    pub fn constant(n: usize, k: i64) -> Self {
        Cochain0 { values: vec![k; n] }
    }

    pub fn to_rat(&self) -> Cochain0<Rat> {
        Cochain0 {
            values: self.values.iter().map(|&v| linalg::rat(v)).collect(),
        }
    }
}

/// Antisymmetric function on oriented edges, stored on the chosen
/// orientation only; the reversed value is computed, never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain1<T> {
    values: Vec<T>,
}

impl<T: Scalar> Cochain1<T> {
    pub fn zero(m: usize) -> Self {
        Cochain1 {
            values: vec![T::zero(); m],
        }
    }

    pub fn from_stored(values: Vec<T>) -> Self {
        Cochain1 { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn stored(&self, e: usize) -> &T {
        &self.values[e]
    }

    pub fn get(&self, a: Arc) -> T {
        if a.forward {
            self.values[a.edge].clone()
        } else {
            -self.values[a.edge].clone()
        }
    }

    pub fn set_stored(&mut self, e: usize, v: T) {
        self.values[e] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// Pairing in which the antisymmetrized edge indicators are orthonormal.
    pub fn dot(&self, other: &Self) -> T
    where
        T: for<'a> std::ops::Mul<&'a T, Output = T>,
    {
        let mut s = T::zero();
        for (a, b) in self.values.iter().zip(&other.values) {
            s += &(a.clone() * b);
        }
        s
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, b) in out.values.iter_mut().zip(&other.values) {
            *a += b;
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, b) in out.values.iter_mut().zip(&other.values) {
            *a -= b;
        }
        out
    }
}

impl Cochain1<i64> {
    pub fn scale(&self, k: i64) -> Self {
        Cochain1 {
            values: self.values.iter().map(|v| v * k).collect(),
        }
    }

    pub fn to_rat(&self) -> Cochain1<Rat> {
        Cochain1 {
            values: self.values.iter().map(|&v| linalg::rat(v)).collect(),
        }
    }
}

/// Half-integer 1-cochain, stored as twice the value per stored edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfCochain {
    pub twice: Vec<i64>,
}

impl HalfCochain {
    pub fn zero(m: usize) -> Self {
        HalfCochain { twice: vec![0; m] }
    }

    pub fn len(&self) -> usize {
        self.twice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.twice.is_empty()
    }

    pub fn get_twice(&self, a: Arc) -> i64 {
        if a.forward {
            self.twice[a.edge]
        } else {
            -self.twice[a.edge]
        }
    }

    pub fn is_integral(&self, e: usize) -> bool {
        self.twice[e] % 2 == 0
    }

    /// Floor of the value on an arc.
    pub fn floor(&self, a: Arc) -> i64 {
        self.get_twice(a).div_euclid(2)
    }

    pub fn minus(&self, other: &Self) -> Self {
        HalfCochain {
            twice: self
                .twice
                .iter()
                .zip(&other.twice)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn plus_int(&self, c: &Cochain1<i64>) -> Self {
        HalfCochain {
            twice: (0..self.twice.len())
                .map(|e| self.twice[e] + 2 * c.stored(e))
                .collect(),
        }
    }

    pub fn integral_part(&self) -> Option<Cochain1<i64>> {
        if self.twice.iter().all(|t| t % 2 == 0) {
            Some(Cochain1::from_stored(
                self.twice.iter().map(|t| t / 2).collect(),
            ))
        } else {
            None
        }
    }

    pub fn to_rat(&self) -> Cochain1<Rat> {
        Cochain1::from_stored(
            self.twice
                .iter()
                .map(|&t| Rat::new(Int::from(t), Int::from(2)))
                .collect(),
        )
    }
}

impl fmt::Display for HalfCochain {
    /// Canonical form: parenthesized `k/2` entries in stored edge order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, t) in self.twice.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}/2")?;
        }
        write!(f, ")")
    }
}

impl Graph {
    /// `d(f)(e) = f(head) - f(tail)`.
    pub fn coboundary<T: Scalar>(&self, f: &Cochain0<T>) -> Cochain1<T> {
        assert_eq!(f.len(), self.vertex_count());
        let mut out = Cochain1::zero(self.edge_count());
        for e in 0..self.edge_count() {
            let mut v = f.values[self.edges[e].head].clone();
            v -= &f.values[self.edges[e].tail];
            out.values[e] = v;
        }
        out
    }

    /// Adjoint of the coboundary: sends an antisymmetrized edge indicator to
    /// `head - tail`, extended linearly.
    pub fn adjoint<T: Scalar>(&self, h: &Cochain1<T>) -> Cochain0<T> {
        assert_eq!(h.len(), self.edge_count());
        let mut out = Cochain0::zero(self.vertex_count());
        for e in 0..self.edge_count() {
            out.values[self.edges[e].head] += &h.values[e];
            out.values[self.edges[e].tail] -= &h.values[e];
        }
        out
    }

    pub fn laplacian<T: Scalar>(&self, f: &Cochain0<T>) -> Cochain0<T> {
        self.adjoint(&self.coboundary(f))
    }

    pub fn laplacian_matrix(&self) -> Vec<Vec<Int>> {
        self.mask_laplacian_matrix(&vec![true; self.edge_count()])
    }

    /// Laplacian of the spanning subgraph selected by `mask`.
    pub fn mask_laplacian_matrix(&self, mask: &[bool]) -> Vec<Vec<Int>> {
        let n = self.vertex_count();
        let mut m = vec![vec![Int::zero(); n]; n];
        for (e, rec) in self.edges.iter().enumerate() {
            if !mask[e] {
                continue;
            }
            m[rec.tail][rec.tail] += 1;
            m[rec.head][rec.head] += 1;
            m[rec.tail][rec.head] -= 1;
            m[rec.head][rec.tail] -= 1;
        }
        m
    }

    /// Number of spanning trees, as a cofactor determinant of the Laplacian.
    pub fn spanning_tree_count(&self) -> Int {
        let n = self.vertex_count();
        if n == 1 {
            return Int::from(1);
        }
        let full = self.laplacian_matrix();
        let reduced: Vec<Vec<Int>> = (1..n)
            .map(|i| (1..n).map(|j| full[i][j].clone()).collect())
            .collect();
        determinant_abs(reduced)
    }

    /// Matrix of the Laplacian landing in the degree-zero lattice: row `i-1`
    /// is the `indicator(i) - indicator(0)` coordinate of the columns
    /// `laplacian(indicator(j))`, `j = 0..n`.
    fn degree_zero_laplacian(&self) -> Vec<Vec<Int>> {
        let n = self.vertex_count();
        let full = self.laplacian_matrix();
        (1..n)
            .map(|i| (0..n).map(|j| full[i][j].clone()).collect())
            .collect()
    }

    /// Index of the Laplacian image inside the degree-zero lattice, by Smith
    /// normal form. Equals the spanning tree count for connected graphs.
    pub fn lattice_index(&self) -> Int {
        let m = self.degree_zero_laplacian();
        if m.is_empty() {
            return Int::from(1);
        }
        let s = linalg::smith_normal_form(&m);
        if s.rank() < self.vertex_count() - 1 {
            return Int::zero();
        }
        s.nonzero_product()
    }

    /// Index of the image of the adjoint on all integral 1-cochains inside
    /// the degree-zero lattice (the literal coboundary-adjoint image; on
    /// multigraphs this is generally finer than the Laplacian image).
    pub fn adjoint_image_index(&self) -> Int {
        let n = self.vertex_count();
        if n == 1 {
            return Int::from(1);
        }
        let rows: Vec<Vec<Int>> = (1..n)
            .map(|i| {
                self.edges
                    .iter()
                    .map(|rec| {
                        let mut v = Int::zero();
                        if rec.head == i {
                            v += 1;
                        }
                        if rec.tail == i {
                            v -= 1;
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        let s = linalg::smith_normal_form(&rows);
        if s.rank() < n - 1 {
            return Int::zero();
        }
        s.nonzero_product()
    }

    /// Nontrivial invariant factors of the degree-zero Laplacian cokernel
    /// (the Jacobian group of the graph).
    pub fn jacobian_invariants(&self) -> Vec<Int> {
        let m = self.degree_zero_laplacian();
        if m.is_empty() {
            return Vec::new();
        }
        let s = linalg::smith_normal_form(&m);
        s.diag
            .iter()
            .filter(|d| !d.is_zero() && **d != Int::from(1))
            .cloned()
            .collect()
    }

    /// Fundamental cycles of the spanning subgraph selected by `mask`, for
    /// the deterministic spanning forest that takes edges greedily in stored
    /// order. Cycles are 1-cochains of the ambient graph; each carries value
    /// 1 on its own cotree edge and 0 on the other cotree edges.
    pub fn mask_fundamental_cycles(
        &self,
        mask: &[bool],
    ) -> (Vec<Cochain1<i64>>, Vec<usize>, Vec<usize>) {
        let n = self.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        let mut tree_edges = Vec::new();
        let mut cotree_edges = Vec::new();
        for (e, rec) in self.edges.iter().enumerate() {
            if !mask[e] {
                continue;
            }
            let (a, b) = (find(&mut parent, rec.tail), find(&mut parent, rec.head));
            if a != b {
                parent[a] = b;
                tree_edges.push(e);
            } else {
                cotree_edges.push(e);
            }
        }
        // Forest adjacency for path recovery.
        let mut adj: Vec<Vec<(usize, Arc)>> = vec![Vec::new(); n];
        for &e in &tree_edges {
            let rec = &self.edges[e];
            adj[rec.tail].push((rec.head, Arc::fwd(e)));
            adj[rec.head].push((rec.tail, Arc::fwd(e).rev()));
        }
        let tree_path = |from: usize, to: usize| -> Vec<Arc> {
            let mut prev: Vec<Option<(usize, Arc)>> = vec![None; n];
            let mut visited = vec![false; n];
            visited[from] = true;
            let mut queue = std::collections::VecDeque::from([from]);
            while let Some(v) = queue.pop_front() {
                if v == to {
                    break;
                }
                for &(w, a) in &adj[v] {
                    if !visited[w] {
                        visited[w] = true;
                        prev[w] = Some((v, a));
                        queue.push_back(w);
                    }
                }
            }
            let mut path = Vec::new();
            let mut cur = to;
            while cur != from {
                let (p, a) = prev[cur].expect("cotree edge closes a cycle in its component");
                path.push(a);
                cur = p;
            }
            path.reverse();
            path
        };
        let mut cycles = Vec::new();
        for &e in &cotree_edges {
            let rec = &self.edges[e];
            let mut c = Cochain1::zero(self.edge_count());
            c.set_stored(e, 1);
            // Close the cycle back through the tree from head to tail.
            for a in tree_path(rec.head, rec.tail) {
                let v = if a.forward { 1 } else { -1 };
                c.set_stored(a.edge, c.stored(a.edge) + v);
            }
            debug_assert!(self.adjoint(&c).values.iter().all(|v| *v == 0));
            cycles.push(c);
        }
        (cycles, tree_edges, cotree_edges)
    }

    /// Fundamental cycles of the deterministic spanning tree that takes
    /// edges greedily in stored order.
    pub fn cycle_basis(&self) -> CycleBasis {
        let (cycles, tree_edges, cotree_edges) =
            self.mask_fundamental_cycles(&vec![true; self.edge_count()]);
        let smith = if cycles.is_empty() {
            None
        } else {
            let mat: Vec<Vec<Int>> = (0..self.edge_count())
                .map(|e| cycles.iter().map(|c| Int::from(*c.stored(e))).collect())
                .collect();
            Some(linalg::smith_normal_form(&mat))
        };
        CycleBasis {
            cycles,
            tree_edges,
            cotree_edges,
            smith,
        }
    }
}

fn determinant_abs(m: Vec<Vec<Int>>) -> Int {
    let d = linalg::determinant(m);
    if d.is_negative() {
        -d
    } else {
        d
    }
}

/// Iterator over integer vertex functions with all values in
/// `[-radius, radius]`; the pinned variant holds the first vertex at zero
/// (the natural normalization for translation-invariant quantities).
pub struct FunctionBox {
    values: Vec<i64>,
    radius: i64,
    start: usize,
    done: bool,
}

impl FunctionBox {
    pub fn full(vertices: usize, radius: i64) -> Self {
        assert!(radius >= 0);
        FunctionBox {
            values: vec![-radius; vertices],
            radius,
            start: 0,
            done: vertices == 0,
        }
    }

    pub fn pinned(vertices: usize, radius: i64) -> Self {
        assert!(radius >= 0);
        let mut values = vec![-radius; vertices];
        if !values.is_empty() {
            values[0] = 0;
        }
        FunctionBox {
            values,
            radius,
            start: 1,
            done: vertices == 0,
        }
    }
}

impl Iterator for FunctionBox {
    type Item = Cochain0<i64>;

    fn next(&mut self) -> Option<Cochain0<i64>> {
        if self.done {
            return None;
        }
        let out = Cochain0::from_values(self.values.clone());
        let mut k = self.start;
        loop {
            if k >= self.values.len() {
                self.done = true;
                break;
            }
            if self.values[k] < self.radius {
                self.values[k] += 1;
                break;
            }
            self.values[k] = -self.radius;
            k += 1;
        }
        Some(out)
    }
}

/// Integral basis of the cycle space (kernel of the adjoint), as the
/// fundamental cycles of a deterministic spanning tree.
pub struct CycleBasis {
    pub cycles: Vec<Cochain1<i64>>,
    pub tree_edges: Vec<usize>,
    pub cotree_edges: Vec<usize>,
    smith: Option<linalg::Smith>,
}

impl CycleBasis {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// Coefficients expressing `h` in the basis, if `h` lies in the integral
    /// span; solved through the Smith decomposition of the basis matrix.
    pub fn member(&self, h: &Cochain1<i64>) -> Option<Vec<i64>> {
        if self.cycles.is_empty() {
            return if h.is_zero() { Some(Vec::new()) } else { None };
        }
        let smith = self.smith.as_ref().unwrap();
        let b: Vec<Int> = (0..h.len()).map(|e| Int::from(*h.stored(e))).collect();
        let x = smith.solve(&b)?;
        Some(
            x.iter()
                .map(|v| i64::try_from(v).expect("basis coefficients are small"))
                .collect(),
        )
    }

    /// The integral span is saturated (all elementary divisors are 1), so it
    /// is the full kernel of the adjoint on integral cochains.
    pub fn is_saturated(&self) -> bool {
        match &self.smith {
            None => true,
            Some(s) => {
                s.rank() == self.cycles.len()
                    && s.diag
                        .iter()
                        .filter(|d| !d.is_zero())
                        .all(|d| *d == Int::from(1))
            }
        }
    }
}

/// Small named graphs used across tests, examples and documentation.
pub mod fixtures {
    use super::Graph;

    pub fn k2() -> Graph {
        Graph::new(vec!["u", "v"], vec![("e1", "u", "v")]).unwrap()
    }

    pub fn banana() -> Graph {
        Graph::new(vec!["u", "v"], vec![("e1", "u", "v"), ("e2", "u", "v")]).unwrap()
    }

    pub fn theta() -> Graph {
        Graph::new(
            vec!["u", "v"],
            vec![("e1", "u", "v"), ("e2", "u", "v"), ("e3", "u", "v")],
        )
        .unwrap()
    }

    pub fn triangle() -> Graph {
        Graph::new(
            vec!["a", "b", "c"],
            vec![("e1", "a", "b"), ("e2", "b", "c"), ("e3", "a", "c")],
        )
        .unwrap()
    }

    pub fn k4() -> Graph {
        Graph::new(
            vec!["v1", "v2", "v3", "v4"],
            vec![
                ("e1", "v1", "v2"),
                ("e2", "v1", "v3"),
                ("e3", "v1", "v4"),
                ("e4", "v2", "v3"),
                ("e5", "v2", "v4"),
                ("e6", "v3", "v4"),
            ],
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            Graph::new(vec!["u"], vec![("e1", "u", "u")]),
            Err(GraphError::LoopEdge(_))
        ));
        assert!(matches!(
            Graph::new(vec!["u", "v", "w"], vec![("e1", "u", "v")]),
            Err(GraphError::Disconnected)
        ));
        assert!(matches!(
            Graph::new(vec!["u", "u"], vec![]),
            Err(GraphError::DuplicateVertex(_))
        ));
    }

    #[test]
    fn coboundary_on_fixtures() {
        let b2 = banana();
        let f = Cochain0::indicator(2, 1); // chi_v
        let df = b2.coboundary(&f);
        assert_eq!(*df.stored(0), 1);
        assert_eq!(*df.stored(1), 1);
        assert_eq!(df.get(Arc::fwd(0).rev()), -1);

        let constant = Cochain0::constant(2, 7);
        assert!(b2.coboundary(&constant).is_zero());

        let tri = triangle();
        let f = Cochain0::indicator(3, 2); // chi_c
        let df = tri.coboundary(&f);
        assert_eq!(
            (0..3).map(|e| *df.stored(e)).collect::<Vec<_>>(),
            vec![0, 1, 1]
        );
    }

    #[test]
    fn adjoint_on_fixtures() {
        let b2 = banana();
        let mut h = Cochain1::zero(2);
        h.set_stored(0, 1);
        let dh = b2.adjoint(&h);
        assert_eq!(dh.values, vec![-1, 1]); // chi_v - chi_u

        let mut both = Cochain1::zero(2);
        both.set_stored(0, 1);
        both.set_stored(1, 1);
        assert_eq!(b2.adjoint(&both).values, vec![-2, 2]);

        for c in &b2.cycle_basis().cycles {
            assert!(b2.adjoint(c).values.iter().all(|v| *v == 0));
        }
    }

    #[test]
    fn laplacian_on_fixtures() {
        let b2 = banana();
        let f = Cochain0::indicator(2, 1);
        assert_eq!(b2.laplacian(&f).values, vec![-2, 2]);
        assert!(b2
            .laplacian(&Cochain0::constant(2, 3))
            .values
            .iter()
            .all(|v| *v == 0));

        // Brute-force composition oracle on the triangle.
        let tri = triangle();
        let f = Cochain0::indicator(3, 0);
        let expected = tri.adjoint(&tri.coboundary(&f));
        assert_eq!(tri.laplacian(&f), expected);
        assert_eq!(expected.values, vec![2, -1, -1]);
    }

    #[test]
    fn tree_counts_and_lattice_indices() {
        for (g, trees) in [
            (k2(), 1i64),
            (banana(), 2),
            (theta(), 3),
            (triangle(), 3),
            (k4(), 16),
        ] {
            assert_eq!(g.spanning_tree_count(), Int::from(trees));
            assert_eq!(g.lattice_index(), Int::from(trees));
        }
        // The literal adjoint image is coarser on multigraphs.
        assert_eq!(banana().adjoint_image_index(), Int::from(1));
        assert_eq!(k2().adjoint_image_index(), Int::from(1));
        assert_eq!(triangle().jacobian_invariants(), vec![Int::from(3)]);
    }

    #[test]
    fn cycle_basis_shapes() {
        assert!(k2().cycle_basis().cycles.is_empty());

        let b2 = banana();
        let basis = b2.cycle_basis();
        assert_eq!(basis.len(), 1);
        let c = &basis.cycles[0];
        // Unique independent cycle up to sign.
        assert_eq!((*c.stored(0)).abs(), 1);
        assert_eq!(c.stored(0) + c.stored(1), 0);

        let th = theta();
        let basis = th.cycle_basis();
        assert_eq!(basis.len(), th.genus());
        assert_eq!(basis.len(), 2);
        assert!(basis.is_saturated());
        for c in &basis.cycles {
            assert!(th.adjoint(c).values.iter().all(|v| *v == 0));
        }

        // Membership solves recover coefficients.
        let combo = basis.cycles[0].plus(&basis.cycles[1].scale(-3));
        assert_eq!(basis.member(&combo), Some(vec![1, -3]));
        let mut not_cycle = Cochain1::zero(3);
        not_cycle.set_stored(0, 1);
        assert_eq!(basis.member(&not_cycle), None);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn adjointness_holds(fv in proptest::collection::vec(-10i64..=10, 3),
                             hv in proptest::collection::vec(-10i64..=10, 3)) {
            let tri = triangle();
            let f = Cochain0::from_values(fv);
            let h = Cochain1::from_stored(hv);
            let lhs = f.dot(&tri.adjoint(&h));
            let rhs = tri.coboundary(&f).dot(&h);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn adjoint_lands_in_degree_zero(hv in proptest::collection::vec(-10i64..=10, 3)) {
            let th = theta();
            let h = Cochain1::from_stored(hv);
            prop_assert_eq!(th.adjoint(&h).degree(), 0);
        }
    }
}
