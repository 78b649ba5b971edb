//! Simplicial complexes stored as facet lists, with the operators needed to
//! verify the combinatorial side of the constructions: links and stars,
//! ball boundaries, shellings, missing faces and prime decompositions.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::enumerative::{h_from_f, AspParams, FVector, HVector};
use crate::error::{Error, Result};

pub type Vertex = u32;

/// Sorted, duplicate-free vertex set.
pub type Face = Vec<Vertex>;

pub fn normalize(mut face: Face) -> Face {
    face.sort_unstable();
    face.dedup();
    face
}

pub fn is_subset(a: &[Vertex], b: &[Vertex]) -> bool {
    // both sorted
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

pub fn without(face: &[Vertex], v: Vertex) -> Face {
    face.iter().copied().filter(|&x| x != v).collect()
}

pub fn union(a: &[Vertex], b: &[Vertex]) -> Face {
    normalize(a.iter().chain(b).copied().collect())
}

pub fn intersection(a: &[Vertex], b: &[Vertex]) -> Face {
    a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect()
}

/// Simplicial complex given by its facets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplicialComplex {
    facets: BTreeSet<Face>,
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    dim: isize,
    facets: Vec<Face>,
}

impl Serialize for SimplicialComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ComplexJson {
            dim: self.dim(),
            facets: self.facets.iter().cloned().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SimplicialComplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ComplexJson::deserialize(d)?;
        let c = SimplicialComplex::pure(raw.facets).map_err(serde::de::Error::custom)?;
        if !c.facets.is_empty() && c.dim() != raw.dim {
            return Err(serde::de::Error::custom(format!(
                "declared dim {} but facets have dim {}",
                raw.dim,
                c.dim()
            )));
        }
        Ok(c)
    }
}

impl SimplicialComplex {
    /// Pure complex; every facet must have the same size.
    pub fn pure(facets: impl IntoIterator<Item = Face>) -> Result<Self> {
        let facets: BTreeSet<Face> = facets.into_iter().map(normalize).collect();
        if facets.iter().map(Vec::len).dedup().count() > 1 {
            return Err(Error::Shape("facets of different sizes".into()));
        }
        Ok(SimplicialComplex { facets })
    }

    /// Complex generated by arbitrary faces; non-maximal ones are dropped.
    pub fn generated_by(faces: impl IntoIterator<Item = Face>) -> Self {
        let mut faces: Vec<Face> = faces.into_iter().map(normalize).collect();
        faces.sort_by_key(|f| std::cmp::Reverse(f.len()));
        faces.dedup();
        let mut kept: Vec<Face> = Vec::new();
        for f in faces {
            if !kept.iter().any(|g| is_subset(&f, g)) {
                kept.push(f);
            }
        }
        SimplicialComplex {
            facets: kept.into_iter().collect(),
        }
    }

    /// Full simplex `2^face`.
    pub fn simplex(face: Face) -> Self {
        SimplicialComplex {
            facets: std::iter::once(normalize(face)).collect(),
        }
    }

    /// Boundary of the simplex on `face`.
    pub fn simplex_boundary(face: &[Vertex]) -> Self {
        SimplicialComplex {
            facets: face.iter().map(|&v| without(face, v)).collect(),
        }
    }

    pub fn facets(&self) -> impl Iterator<Item = &Face> + '_ {
        self.facets.iter()
    }

    pub fn facet_set(&self) -> &BTreeSet<Face> {
        &self.facets
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn has_facet(&self, f: &[Vertex]) -> bool {
        self.facets.contains(f)
    }

    /// Dimension of the largest facet; -1 for `{∅}` and for the void complex.
    pub fn dim(&self) -> isize {
        self.facets.iter().map(Vec::len).max().unwrap_or(0) as isize - 1
    }

    pub fn is_pure(&self) -> bool {
        self.facets.iter().map(Vec::len).dedup().count() <= 1
    }

    pub fn vertex_ids(&self) -> Face {
        normalize(self.facets.iter().flatten().copied().collect())
    }

    pub fn contains_face(&self, face: &[Vertex]) -> bool {
        self.facets.iter().any(|f| is_subset(face, f))
    }

    /// All faces of dimension `k` (vertex sets of size `k+1`).
    pub fn all_faces(&self, k: isize) -> Result<BTreeSet<Face>> {
        if k < -1 || k > self.dim() {
            return Err(Error::Domain(format!(
                "k = {k} outside -1..={}",
                self.dim()
            )));
        }
        Ok(self.faces_of_size((k + 1) as usize))
    }

    pub(crate) fn faces_of_size(&self, size: usize) -> BTreeSet<Face> {
        self.facets
            .iter()
            .filter(|f| f.len() >= size)
            .flat_map(|f| f.iter().copied().combinations(size))
            .collect()
    }

    pub fn f_vector(&self) -> FVector {
        let mut entries = vec![if self.facets.is_empty() { 0 } else { 1 }];
        for k in 0..=self.dim() {
            entries.push(self.faces_of_size((k + 1) as usize).len() as i64);
        }
        FVector { entries }
    }

    pub fn h_vector(&self) -> HVector {
        h_from_f(&self.f_vector())
    }

    /// Edges of the 1-skeleton.
    pub fn edges(&self) -> BTreeSet<(Vertex, Vertex)> {
        self.faces_of_size(2)
            .into_iter()
            .map(|e| (e[0], e[1]))
            .collect()
    }

    fn require_face(&self, face: &[Vertex]) -> Result<Face> {
        let face = normalize(face.to_vec());
        if !self.contains_face(&face) {
            return Err(Error::NotAFace(face));
        }
        Ok(face)
    }

    pub fn link(&self, face: &[Vertex]) -> Result<SimplicialComplex> {
        let face = self.require_face(face)?;
        Ok(SimplicialComplex::generated_by(
            self.facets
                .iter()
                .filter(|g| is_subset(&face, g))
                .map(|g| g.iter().copied().filter(|v| face.binary_search(v).is_err()).collect()),
        ))
    }

    pub fn star(&self, face: &[Vertex]) -> Result<SimplicialComplex> {
        let face = self.require_face(face)?;
        Ok(SimplicialComplex {
            facets: self
                .facets
                .iter()
                .filter(|g| is_subset(&face, g))
                .cloned()
                .collect(),
        })
    }

    pub fn induced(&self, vertices: &[Vertex]) -> SimplicialComplex {
        let w = normalize(vertices.to_vec());
        SimplicialComplex::generated_by(
            self.facets
                .iter()
                .map(|g| intersection(g, &w))
                .filter(|g| !g.is_empty()),
        )
    }

    /// Join of two complexes on disjoint vertex sets.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        SimplicialComplex {
            facets: self
                .facets
                .iter()
                .cartesian_product(other.facets.iter())
                .map(|(a, b)| union(a, b))
                .collect(),
        }
    }

    /// Ridge -> number of facets containing it.
    pub(crate) fn ridge_counts(&self) -> BTreeMap<Face, usize> {
        let mut counts = BTreeMap::new();
        for f in &self.facets {
            for &v in f {
                *counts.entry(without(f, v)).or_insert(0) += 1;
            }
        }
        counts
    }

    /// Complex generated by the ridges lying in exactly one facet.
    pub fn boundary_of_ball(&self) -> Result<SimplicialComplex> {
        let mut boundary = BTreeSet::new();
        for (ridge, count) in self.ridge_counts() {
            match count {
                1 => {
                    boundary.insert(ridge);
                }
                2 => {}
                c => return Err(Error::NotPseudomanifold(ridge, c)),
            }
        }
        Ok(SimplicialComplex { facets: boundary })
    }

    /// Vertex sets of size `k+1` that are not faces although all their
    /// proper subsets are.
    pub fn missing_faces(&self, k: usize) -> BTreeSet<Face> {
        let size = k + 1;
        if size < 2 {
            return BTreeSet::new();
        }
        let smaller: HashSet<Face> = self.faces_of_size(size - 1).into_iter().collect();
        let present: HashSet<Face> = self.faces_of_size(size).into_iter().collect();
        let verts = self.vertex_ids();
        let mut out = BTreeSet::new();
        for b in &smaller {
            for &v in &verts {
                if b.binary_search(&v).is_ok() {
                    continue;
                }
                let a = union(b, &[v]);
                if present.contains(&a) || out.contains(&a) {
                    continue;
                }
                if a.iter().all(|&u| smaller.contains(&without(&a, u))) {
                    out.insert(a);
                }
            }
        }
        out
    }

    /// Check a facet order against the shelling condition and record
    /// restriction faces along the way.
    pub fn verify_shelling(&self, order: &[Face]) -> Result<ShellingCertificate> {
        let order: Vec<Face> = order.iter().cloned().map(normalize).collect();
        let as_set: BTreeSet<Face> = order.iter().cloned().collect();
        if as_set.len() != order.len() || as_set != self.facets {
            return Err(Error::NotAShelling {
                step: 0,
                reason: "order is not a permutation of the facets".into(),
            });
        }
        shell_sequence(&order)
    }

    /// Sphere obtained by gluing `tri` (a triangulation of `F`) into the hole
    /// of the ball.
    pub fn glue(&self, tri: &SimplicialComplex) -> SimplicialComplex {
        SimplicialComplex {
            facets: self.facets.union(&tri.facets).cloned().collect(),
        }
    }
}

/// Restriction faces for an arbitrary facet sequence (no permutation check).
pub(crate) fn shell_sequence(order: &[Face]) -> Result<ShellingCertificate> {
    let d = order.first().map_or(0, Vec::len);
    if order.iter().any(|f| f.len() != d) {
        return Err(Error::Shape("shelling of a non-pure complex".into()));
    }
    let mut seen_ridges: HashSet<Face> = HashSet::new();
    let mut restriction = Vec::with_capacity(order.len());
    let mut prefix_h = Vec::with_capacity(order.len());
    let mut hist = vec![0i64; d + 1];
    for (j, f) in order.iter().enumerate() {
        let r: Face = if j == 0 {
            Vec::new()
        } else {
            f.iter()
                .copied()
                .filter(|&v| seen_ridges.contains(&without(f, v)))
                .collect()
        };
        if j > 0 {
            // intersection with the earlier facets is pure of codimension one
            // iff no earlier facet contains the whole restriction face
            if let Some(i) = order[..j].iter().position(|g| is_subset(&r, g)) {
                return Err(Error::NotAShelling {
                    step: j,
                    reason: format!(
                        "facet {:?} meets earlier facet {:?} outside a codimension-one face",
                        f, order[i]
                    ),
                });
            }
        }
        for &v in f {
            seen_ridges.insert(without(f, v));
        }
        hist[r.len()] += 1;
        prefix_h.push(HVector::new(hist.clone()));
        restriction.push(r);
    }
    Ok(ShellingCertificate {
        order: order.to_vec(),
        restriction,
        prefix_h,
    })
}

/// A verified shelling order with its restriction faces and the running
/// h-numbers of each prefix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellingCertificate {
    pub order: Vec<Face>,
    pub restriction: Vec<Face>,
    pub prefix_h: Vec<HVector>,
}

impl ShellingCertificate {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn reversed(&self) -> Vec<Face> {
        self.order.iter().rev().cloned().collect()
    }
}

/// Histogram of restriction-face sizes.
pub fn h_from_shelling(cert: &ShellingCertificate) -> HVector {
    cert.prefix_h
        .last()
        .cloned()
        .unwrap_or_else(|| HVector::new(vec![0]))
}

// ---------------------------------------------------------------------------
// Prime decomposition

/// Top-dimensional cell of a polyhedral sphere. A cell without a boundary
/// complex is a simplex; otherwise `boundary` is the simplicial boundary
/// of a polytope cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub vertices: Face,
    pub boundary: Option<SimplicialComplex>,
    /// Cell comes from the subdivision of the distinguished facet.
    pub from_f: bool,
}

impl Cell {
    pub fn simplex(vertices: Face) -> Self {
        Cell {
            vertices: normalize(vertices),
            boundary: None,
            from_f: false,
        }
    }

    pub fn is_simplex(&self) -> bool {
        self.boundary.is_none()
    }

    fn ridges(&self) -> Vec<Face> {
        match &self.boundary {
            None => self.vertices.iter().map(|&v| without(&self.vertices, v)).collect(),
            Some(b) => b.facets().cloned().collect(),
        }
    }
}

/// Prime factors of a polyhedral sphere made of [`Cell`]s, with the tree of
/// missing faces along which it was cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellDecomposition {
    pub factors: Vec<Vec<Cell>>,
    pub tree_edges: Vec<(usize, usize, Face)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum InsertionOrder {
    Lexicographic,
    #[cfg_attr(not(test), allow(dead_code))]
    ReverseLexicographic,
}

/// Decompose a polyhedral `(d-1)`-sphere whose simplex cells have `d` vertices.
pub fn decompose_cells(cells: Vec<Cell>, d: usize) -> Result<CellDecomposition> {
    decompose_cells_ordered(cells, d, InsertionOrder::Lexicographic)
}

pub(crate) fn decompose_cells_ordered(
    cells: Vec<Cell>,
    d: usize,
    order: InsertionOrder,
) -> Result<CellDecomposition> {
    let mut out = CellDecomposition {
        factors: Vec::new(),
        tree_edges: Vec::new(),
    };
    split_recursive(cells, d, order, &mut out)?;
    Ok(out)
}

fn split_recursive(
    cells: Vec<Cell>,
    d: usize,
    order: InsertionOrder,
    out: &mut CellDecomposition,
) -> Result<()> {
    let ridge_map = cell_ridge_map(&cells)?;
    let missing = missing_cell_faces(&cells, &ridge_map, d);
    let chosen = match order {
        InsertionOrder::Lexicographic => missing.iter().next(),
        InsertionOrder::ReverseLexicographic => missing.iter().next_back(),
    };
    let Some(m) = chosen.cloned() else {
        out.factors.push(cells);
        return Ok(());
    };

    // dual graph without the adjacencies through ridges of m
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); cells.len()];
    for (ridge, owners) in &ridge_map {
        if is_subset(ridge, &m) {
            continue;
        }
        adj[owners[0]].push(owners[1]);
        adj[owners[1]].push(owners[0]);
    }
    let mut comp = vec![usize::MAX; cells.len()];
    let mut ncomp = 0;
    for start in 0..cells.len() {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut queue = VecDeque::from([start]);
        comp[start] = ncomp;
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if comp[y] == usize::MAX {
                    comp[y] = ncomp;
                    queue.push_back(y);
                }
            }
        }
        ncomp += 1;
    }
    if ncomp != 2 {
        return Err(Error::Degenerate(format!(
            "cutting along {m:?} gives {ncomp} components"
        )));
    }
    let mut sides: [Vec<Cell>; 2] = [Vec::new(), Vec::new()];
    for (cell, c) in cells.into_iter().zip(comp) {
        sides[c].push(cell);
    }
    let [a, b] = sides;
    let mut attach = [0usize; 2];
    for (i, mut side) in [a, b].into_iter().enumerate() {
        side.push(Cell::simplex(m.clone()));
        let before = out.factors.len();
        split_recursive(side, d, order, out)?;
        attach[i] = (before..out.factors.len())
            .find(|&k| out.factors[k].iter().any(|c| c.is_simplex() && c.vertices == m))
            .ok_or_else(|| Error::Consistency("inserted face lost during recursion".into()))?;
    }
    out.tree_edges.push((attach[0], attach[1], m));
    Ok(())
}

/// Ridge -> the two cells containing it.
fn cell_ridge_map(cells: &[Cell]) -> Result<BTreeMap<Face, Vec<usize>>> {
    let mut map: BTreeMap<Face, Vec<usize>> = BTreeMap::new();
    for (i, c) in cells.iter().enumerate() {
        for r in c.ridges() {
            map.entry(r).or_default().push(i);
        }
    }
    for (r, owners) in &map {
        if owners.len() != 2 {
            return Err(Error::NotPseudomanifold(r.clone(), owners.len()));
        }
    }
    Ok(map)
}

fn missing_cell_faces(
    cells: &[Cell],
    ridge_map: &BTreeMap<Face, Vec<usize>>,
    d: usize,
) -> BTreeSet<Face> {
    let simplex_cells: HashSet<&Face> = cells
        .iter()
        .filter(|c| c.is_simplex())
        .map(|c| &c.vertices)
        .collect();
    let verts: BTreeSet<Vertex> = cells.iter().flat_map(|c| c.vertices.iter().copied()).collect();
    let mut out = BTreeSet::new();
    for ridge in ridge_map.keys() {
        if ridge.len() + 1 != d {
            continue;
        }
        for &v in &verts {
            if ridge.binary_search(&v).is_ok() {
                continue;
            }
            let cand = union(ridge, &[v]);
            if simplex_cells.contains(&cand) || out.contains(&cand) {
                continue;
            }
            if cand.iter().all(|&u| ridge_map.contains_key(&without(&cand, u))) {
                out.insert(cand);
            }
        }
    }
    out
}

/// Prime decomposition of a simplicial sphere.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeDecomposition {
    pub factors: Vec<SimplicialComplex>,
    pub tree_edges: Vec<(usize, usize, Face)>,
}

pub fn prime_decomposition(sphere: &SimplicialComplex) -> Result<PrimeDecomposition> {
    let d = (sphere.dim() + 1) as usize;
    if d < 3 {
        return Err(Error::Domain(format!(
            "prime decomposition needs a sphere of dimension >= 2, got {}",
            sphere.dim()
        )));
    }
    let cells = sphere.facets().cloned().map(Cell::simplex).collect();
    let dec = decompose_cells(cells, d)?;
    Ok(PrimeDecomposition {
        factors: dec
            .factors
            .into_iter()
            .map(|cells| SimplicialComplex {
                facets: cells.into_iter().map(|c| c.vertices).collect(),
            })
            .collect(),
        tree_edges: dec.tree_edges,
    })
}

pub fn is_simplex_boundary(c: &SimplicialComplex) -> bool {
    let d = (c.dim() + 1) as usize;
    c.vertex_ids().len() == d + 1 && c.num_facets() == d + 1
}

pub fn is_stacked_sphere(sphere: &SimplicialComplex) -> Result<bool> {
    Ok(prime_decomposition(sphere)?
        .factors
        .iter()
        .all(is_simplex_boundary))
}

// ---------------------------------------------------------------------------
// Class C membership

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassCReport {
    pub member: bool,
    pub internal_vertices: Face,
    pub internal_graph_connected: bool,
    /// Boundary edges with no 2-face through an internal vertex.
    pub uncovered_boundary_edges: Vec<(Vertex, Vertex)>,
}

pub fn class_c_membership(ball: &SimplicialComplex) -> Result<ClassCReport> {
    let boundary = ball.boundary_of_ball()?;
    let bverts = boundary.vertex_ids();
    let internal: Face = ball
        .vertex_ids()
        .into_iter()
        .filter(|v| bverts.binary_search(v).is_err())
        .collect();

    let connected = if internal.is_empty() {
        false
    } else {
        let sub = ball.induced(&internal);
        let mut adj: HashMap<Vertex, Vec<Vertex>> = HashMap::new();
        for (a, b) in sub.edges() {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        let mut seen: HashSet<Vertex> = HashSet::from([internal[0]]);
        let mut queue = VecDeque::from([internal[0]]);
        while let Some(x) = queue.pop_front() {
            for &y in adj.get(&x).map(Vec::as_slice).unwrap_or(&[]) {
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen.len() == internal.len()
    };

    let triangles = ball.faces_of_size(3);
    let uncovered: Vec<(Vertex, Vertex)> = boundary
        .edges()
        .into_iter()
        .filter(|&(a, b)| {
            !triangles.iter().any(|t| {
                t.contains(&a)
                    && t.contains(&b)
                    && t.iter()
                        .any(|&x| x != a && x != b && internal.binary_search(&x).is_ok())
            })
        })
        .collect();

    Ok(ClassCReport {
        member: connected && uncovered.is_empty(),
        internal_vertices: internal,
        internal_graph_connected: connected,
        uncovered_boundary_edges: uncovered,
    })
}

// ---------------------------------------------------------------------------
// ASP complexes

/// Combinatorial ASP-pair: the ball `P' = ∂P - {F}` and the vertex set of
/// the distinguished facet `F`. Builders may also carry a triangulation of
/// `F` using only its vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AspComplex {
    pub params: AspParams,
    pub ball: SimplicialComplex,
    #[serde(rename = "F")]
    pub f_vertices: Face,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_triangulation: Option<SimplicialComplex>,
}

impl AspComplex {
    pub fn new(ball: SimplicialComplex, f_vertices: Face) -> Result<Self> {
        let d = (ball.dim() + 1) as usize;
        let f_vertices = normalize(f_vertices);
        if f_vertices.len() < d {
            return Err(Error::InvalidParams(format!(
                "F has {} vertices, needs at least {d}",
                f_vertices.len()
            )));
        }
        let n = ball.vertex_ids().len();
        let params = AspParams::new(d, n, f_vertices.len() - d)?;
        Ok(AspComplex {
            params,
            ball,
            f_vertices,
            f_triangulation: None,
        })
    }

    pub fn with_triangulation(mut self, tri: SimplicialComplex) -> Self {
        self.f_triangulation = Some(tri);
        self
    }

    /// Ball convention: `F` itself not counted.
    pub fn ball_f_vector(&self) -> FVector {
        self.ball.f_vector()
    }

    /// Polytope convention: `F` counted once.
    pub fn polytope_f_vector(&self) -> FVector {
        self.ball.f_vector().ball_to_polytope()
    }

    pub fn h_ball(&self) -> HVector {
        self.ball.h_vector()
    }

    /// Boundary sphere `∂F` of the ball.
    pub fn f_boundary(&self) -> Result<SimplicialComplex> {
        self.ball.boundary_of_ball()
    }

    /// Structural checks: pseudomanifold ridges, boundary vertex set equal to
    /// `F`, and `∂F` induced in the ball.
    pub fn validate(&self) -> Result<()> {
        let boundary = self.f_boundary()?;
        if boundary.vertex_ids() != self.f_vertices {
            return Err(Error::Consistency(format!(
                "boundary vertices {:?} differ from F {:?}",
                boundary.vertex_ids(),
                self.f_vertices
            )));
        }
        let induced = self.ball.induced(&self.f_vertices);
        if induced != boundary {
            return Err(Error::Consistency("∂F is not an induced subcomplex".into()));
        }
        Ok(())
    }

    /// 1-skeleton of the polytope (all its edges lie in the ball).
    pub fn graph_edges(&self) -> BTreeSet<(Vertex, Vertex)> {
        self.ball.edges()
    }
}

/// Fill the hole of the ball with a triangulation of `F`.
pub fn refine_by_triangulation(
    asp: &AspComplex,
    tri_f: &SimplicialComplex,
) -> Result<SimplicialComplex> {
    let verts = tri_f.vertex_ids();
    if !is_subset(&verts, &asp.f_vertices) {
        return Err(Error::Refinement(format!(
            "triangulation uses vertices outside F: {verts:?}"
        )));
    }
    let expected = asp.f_boundary()?;
    let got = tri_f.boundary_of_ball()?;
    if got != expected {
        return Err(Error::Refinement(
            "triangulation boundary differs from ∂F".into(),
        ));
    }
    Ok(asp.ball.glue(tri_f))
}
