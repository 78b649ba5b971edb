//! Combinatorial builders: stacked spheres, pyramids, the almost stacked
//! family `S(d,n,s)`, H-stacking, and the minimizer recognizer.
//!
//! Every choice a builder makes comes from an explicit [`StackingScript`];
//! the random generators only produce scripts.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complexes::{
    decompose_cells, is_subset, normalize, union, without, AspComplex, Cell, Face,
    SimplicialComplex, Vertex,
};
use crate::enumerative::AspParams;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    /// Stack a new vertex over a facet of the ball (or sphere).
    Stack,
    /// H-stack a new vertex over a facet of `∂F`.
    Hstack,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Selector {
    /// Position in the sorted list of eligible facets.
    Index(usize),
    Facet(Face),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StackMove {
    pub kind: MoveKind,
    pub selector: Selector,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StackingScript {
    pub moves: Vec<StackMove>,
}

impl StackingScript {
    pub fn stacks(indices: impl IntoIterator<Item = usize>) -> Self {
        StackingScript {
            moves: indices
                .into_iter()
                .map(|i| StackMove {
                    kind: MoveKind::Stack,
                    selector: Selector::Index(i),
                })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }
}

fn resolve(sel: &Selector, eligible: &BTreeSet<Face>) -> Result<Face> {
    match sel {
        Selector::Index(i) => eligible.iter().nth(*i).cloned().ok_or_else(|| {
            Error::InvalidMove(format!(
                "selector {i} out of range ({} eligible facets)",
                eligible.len()
            ))
        }),
        Selector::Facet(f) => {
            let f = normalize(f.clone());
            if eligible.contains(&f) {
                Ok(f)
            } else {
                Err(Error::InvalidMove(format!("{f:?} is not an eligible facet")))
            }
        }
    }
}

fn stack_into(facets: &mut BTreeSet<Face>, t: &Face, w: Vertex) {
    facets.remove(t);
    for &u in t {
        facets.insert(union(&without(t, u), &[w]));
    }
}

/// Boundary and triangulation of a stacked `m`-polytope on `n` vertices
/// `1..=n`, starting from the simplex on `1..=m+1`.
pub fn stacked_polytope(
    m: usize,
    n: usize,
    script: &StackingScript,
) -> Result<(SimplicialComplex, SimplicialComplex)> {
    if n < m + 1 {
        return Err(Error::InvalidParams(format!("n = {n} < m + 1 = {}", m + 1)));
    }
    if script.len() != n - m - 1 {
        return Err(Error::InvalidMove(format!(
            "script has {} moves, expected {}",
            script.len(),
            n - m - 1
        )));
    }
    let base: Face = (1..=(m + 1) as Vertex).collect();
    let mut boundary: BTreeSet<Face> = base.iter().map(|&v| without(&base, v)).collect();
    let mut cells = vec![base];
    for (k, mv) in script.moves.iter().enumerate() {
        if mv.kind != MoveKind::Stack {
            return Err(Error::InvalidMove("only stack moves apply to spheres".into()));
        }
        let t = resolve(&mv.selector, &boundary)?;
        let w = (m + 2 + k) as Vertex;
        stack_into(&mut boundary, &t, w);
        cells.push(union(&t, &[w]));
    }
    Ok((
        SimplicialComplex::pure(boundary)?,
        SimplicialComplex::pure(cells)?,
    ))
}

/// Stacked `(d-1)`-sphere on `n` vertices.
pub fn stacked_sphere(d: usize, n: usize, script: &StackingScript) -> Result<SimplicialComplex> {
    Ok(stacked_polytope(d, n, script)?.0)
}

/// Cone from a fresh apex over a sphere.
pub fn pyramid(base: &SimplicialComplex, apex: Vertex) -> Result<SimplicialComplex> {
    if base.vertex_ids().contains(&apex) {
        return Err(Error::InvalidMove(format!("apex {apex} already a vertex")));
    }
    SimplicialComplex::pure(base.facets().map(|f| union(f, &[apex])))
}

/// `S(d,n,s)`: pyramid over a stacked `(d-1)`-polytope `F` on `1..=d+s`
/// with apex `d+s+1`, then `n-d-s-1` stackings on ball facets.
pub fn almost_stacked(
    p: AspParams,
    script_f: &StackingScript,
    script_p: &StackingScript,
) -> Result<AspComplex> {
    let (boundary_f, tri_f) = stacked_polytope(p.d - 1, p.f_size(), script_f)?;
    let apex = (p.f_size() + 1) as Vertex;
    let ball = pyramid(&boundary_f, apex)?;
    let mut asp = AspComplex::new(ball, (1..=p.f_size() as Vertex).collect())?
        .with_triangulation(tri_f);
    if script_p.len() != p.n - p.d - p.s - 1 {
        return Err(Error::InvalidMove(format!(
            "script has {} moves, expected {}",
            script_p.len(),
            p.n - p.d - p.s - 1
        )));
    }
    for mv in &script_p.moves {
        if mv.kind != MoveKind::Stack {
            return Err(Error::InvalidMove("S(d,n,s) uses stack moves only".into()));
        }
        asp = stack_ball(&asp, &mv.selector)?;
    }
    Ok(asp)
}

fn next_vertex(asp: &AspComplex) -> Vertex {
    asp.ball.vertex_ids().last().copied().unwrap_or(0) + 1
}

/// Stack a new vertex over a ball facet (never over `F`).
pub fn stack_ball(asp: &AspComplex, sel: &Selector) -> Result<AspComplex> {
    if let Selector::Facet(f) = sel {
        if normalize(f.clone()) == asp.f_vertices {
            return Err(Error::InvalidMove("cannot stack over F".into()));
        }
    }
    let mut facets = asp.ball.facet_set().clone();
    let t = resolve(sel, &facets)?;
    stack_into(&mut facets, &t, next_vertex(asp));
    let mut out = AspComplex::new(SimplicialComplex::pure(facets)?, asp.f_vertices.clone())?;
    out.f_triangulation = asp.f_triangulation.clone();
    Ok(out)
}

/// Add a vertex `w` in the hyperplane of `F` beyond the facet `g` of `∂F`.
pub fn h_stack(asp: &AspComplex, g: &[Vertex]) -> Result<AspComplex> {
    let g = normalize(g.to_vec());
    let boundary = asp.f_boundary()?;
    if !boundary.has_facet(&g) {
        return Err(Error::InvalidHStack(format!("{g:?} is not a facet of ∂F")));
    }
    let owners: Vec<&Face> = asp.ball.facets().filter(|t| is_subset(&g, t)).collect();
    let [t] = owners.as_slice() else {
        return Err(Error::InvalidHStack(format!(
            "{g:?} lies in {} ball facets",
            owners.len()
        )));
    };
    let t = (*t).clone();
    let w = next_vertex(asp);
    let mut facets = asp.ball.facet_set().clone();
    facets.remove(&t);
    for &u in &t {
        let r = without(&t, u);
        if r != g {
            facets.insert(union(&r, &[w]));
        }
    }
    let f_vertices = union(&asp.f_vertices, &[w]);
    let mut out = AspComplex::new(SimplicialComplex::pure(facets)?, f_vertices)?;
    out.f_triangulation = asp
        .f_triangulation
        .as_ref()
        .map(|tri| {
            let mut cells = tri.facet_set().clone();
            cells.insert(union(&g, &[w]));
            SimplicialComplex::pure(cells)
        })
        .transpose()?;
    Ok(out)
}

/// Apply a mixed script of stack and H-stack moves.
pub fn apply_script(asp: &AspComplex, script: &StackingScript) -> Result<AspComplex> {
    let mut cur = asp.clone();
    for mv in &script.moves {
        cur = match mv.kind {
            MoveKind::Stack => stack_ball(&cur, &mv.selector)?,
            MoveKind::Hstack => {
                let boundary = cur.f_boundary()?;
                let g = resolve(&mv.selector, boundary.facet_set())?;
                h_stack(&cur, &g)?
            }
        };
    }
    Ok(cur)
}

/// Random stack script for [`stacked_sphere`].
pub fn random_sphere_script(d: usize, n: usize, seed: u64) -> StackingScript {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let moves = n.saturating_sub(d + 1);
    StackingScript::stacks((0..moves).map(|k| rng.random_range(0..d + 1 + k * (d - 1))))
}

/// Random `(script_f, script_p)` pair for [`almost_stacked`].
pub fn random_almost_stacked_scripts(p: AspParams, seed: u64) -> (StackingScript, StackingScript) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = p.d - 1;
    let script_f =
        StackingScript::stacks((0..p.s).map(|k| rng.random_range(0..m + 1 + k * (m - 1))));
    let ball0 = p.d + p.s * (p.d - 2);
    let script_p = StackingScript::stacks(
        (0..p.n - p.d - p.s - 1).map(|k| rng.random_range(0..ball0 + k * (p.d - 1))),
    );
    (script_f, script_p)
}

/// Random interleaving of `len` stack and H-stack moves valid for `asp`.
pub fn random_mixed_script(asp: &AspComplex, len: usize, seed: u64) -> Result<StackingScript> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = asp.params.d;
    let mut ball = asp.ball.num_facets();
    let mut bf = asp.f_boundary()?.num_facets();
    let moves = (0..len)
        .map(|_| {
            if rng.random_bool(0.5) {
                let i = rng.random_range(0..ball);
                ball += d - 1;
                StackMove {
                    kind: MoveKind::Stack,
                    selector: Selector::Index(i),
                }
            } else {
                let i = rng.random_range(0..bf);
                ball += d - 2;
                bf += d - 2;
                StackMove {
                    kind: MoveKind::Hstack,
                    selector: Selector::Index(i),
                }
            }
        })
        .collect();
    Ok(StackingScript { moves })
}

// ---------------------------------------------------------------------------
// Minimizer recognition

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    D3,
    D4,
    DGt4,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorReport {
    pub vertices: Face,
    pub is_simplex: bool,
    pub has_facet_in_f: bool,
    pub is_pyramid_over_f_factor: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimizerVerdict {
    pub is_minimizer: bool,
    pub regime: Regime,
    pub factor_reports: Vec<FactorReport>,
}

/// Cells of `F` read off the prime decomposition of `∂F`.
fn f_cells(asp: &AspComplex) -> Result<Vec<Cell>> {
    let boundary = asp.f_boundary()?;
    let d = asp.params.d;
    let dec = decompose_cells(
        boundary.facets().cloned().map(Cell::simplex).collect(),
        d - 1,
    )?;
    Ok(dec
        .factors
        .into_iter()
        .map(|cells| {
            let vertices = normalize(cells.iter().flat_map(|c| c.vertices.clone()).collect());
            let is_simplex = vertices.len() == d && cells.len() == d;
            let boundary = (!is_simplex).then(|| {
                SimplicialComplex::pure(cells.into_iter().map(|c| c.vertices))
                    .expect("factor cells share one size")
            });
            Cell {
                vertices,
                boundary,
                from_f: true,
            }
        })
        .collect())
}

fn classify_factor(cells: &[Cell], d: usize, f_vertices: &Face) -> FactorReport {
    let vertices = normalize(cells.iter().flat_map(|c| c.vertices.clone()).collect());
    let is_simplex =
        cells.len() == d + 1 && vertices.len() == d + 1 && cells.iter().all(Cell::is_simplex);
    let has_facet_in_f = cells.iter().any(|c| is_subset(&c.vertices, f_vertices));
    let is_pyramid = cells.iter().filter(|c| c.from_f).any(|base| {
        let extra: Vec<Vertex> = vertices
            .iter()
            .copied()
            .filter(|v| base.vertices.binary_search(v).is_err())
            .collect();
        let [apex] = extra.as_slice() else {
            return false;
        };
        let ridges: BTreeSet<Face> = match &base.boundary {
            None => base.vertices.iter().map(|&v| without(&base.vertices, v)).collect(),
            Some(b) => b.facet_set().clone(),
        };
        let sides: BTreeSet<Face> = cells
            .iter()
            .filter(|c| !std::ptr::eq(*c, base))
            .filter(|c| c.is_simplex())
            .map(|c| without(&c.vertices, *apex))
            .collect();
        cells.len() == ridges.len() + 1 && sides == ridges
    });
    FactorReport {
        vertices,
        is_simplex,
        has_facet_in_f,
        is_pyramid_over_f_factor: is_pyramid,
    }
}

/// Refine `F` by the prime decomposition of `∂F`, decompose the resulting
/// polyhedral sphere and test the factor conditions of the regime.
pub fn recognize_minimizer(asp: &AspComplex) -> Result<MinimizerVerdict> {
    let d = asp.params.d;
    let regime = match d {
        3 => {
            return Err(Error::UnsupportedRegime(
                "every ASP with d = 3 has the minimal f-vector".into(),
            ))
        }
        4 => Regime::D4,
        _ => Regime::DGt4,
    };
    let mut cells: Vec<Cell> = asp.ball.facets().cloned().map(Cell::simplex).collect();
    cells.extend(f_cells(asp)?);
    let dec = decompose_cells(cells, d)?;
    let reports: Vec<FactorReport> = dec
        .factors
        .iter()
        .map(|f| classify_factor(f, d, &asp.f_vertices))
        .collect();
    let is_minimizer = match regime {
        Regime::DGt4 => reports.iter().all(|r| r.is_simplex),
        _ => reports
            .iter()
            .all(|r| (r.is_simplex && !r.has_facet_in_f) || r.is_pyramid_over_f_factor),
    };
    Ok(MinimizerVerdict {
        is_minimizer,
        regime,
        factor_reports: reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{is_stacked_sphere, refine_by_triangulation};
    use crate::enumerative::{check_asp_bounds, f_almost_stacked, f_stacked};

    fn ap(d: usize, n: usize, s: usize) -> AspParams {
        AspParams::new(d, n, s).unwrap()
    }

    pub(crate) fn octahedron() -> SimplicialComplex {
        let mut f = vec![];
        for a in [1, 2] {
            for b in [3, 4] {
                for c in [5, 6] {
                    f.push(vec![a, b, c]);
                }
            }
        }
        SimplicialComplex::pure(f).unwrap()
    }

    #[test]
    fn stacked_spheres() {
        let s = stacked_sphere(4, 5, &StackingScript::default()).unwrap();
        assert_eq!(s, SimplicialComplex::simplex_boundary(&[1, 2, 3, 4, 5]));
        for seed in 0..5 {
            let script = random_sphere_script(4, 8, seed);
            let s = stacked_sphere(4, 8, &script).unwrap();
            assert_eq!(s.f_vector().entries, vec![1, 8, 22, 28, 14]);
            assert_eq!(s.f_vector().ball_to_polytope().polytope_to_ball(), f_stacked(4, 8).unwrap());
            assert!(is_stacked_sphere(&s).unwrap());
        }
        let bad = StackingScript::stacks([99]);
        assert!(matches!(stacked_sphere(3, 5, &bad), Err(Error::InvalidMove(_))));
    }

    #[test]
    fn pyramids() {
        let tri = SimplicialComplex::simplex_boundary(&[1, 2, 3]);
        let cone = pyramid(&tri, 4).unwrap();
        assert_eq!(cone.num_facets(), 3);
        assert!(pyramid(&tri, 2).is_err());
        let py = pyramid(&octahedron(), 7).unwrap();
        assert_eq!(py.f_vector().entries, vec![1, 7, 18, 20, 8]);
        let asp = AspComplex::new(py, (1..=6).collect()).unwrap();
        assert_eq!(asp.params, ap(4, 7, 2));
        assert_eq!(asp.polytope_f_vector(), f_almost_stacked(ap(4, 7, 2)));
    }

    #[test]
    fn almost_stacked_examples() {
        let (sf, sp) = random_almost_stacked_scripts(ap(4, 8, 2), 7);
        let a = almost_stacked(ap(4, 8, 2), &sf, &sp).unwrap();
        assert_eq!(a.ball_f_vector().entries, vec![1, 8, 22, 26, 11]);
        assert_eq!(a.polytope_f_vector().entries, vec![1, 8, 22, 26, 12]);
        a.validate().unwrap();

        let (sf, sp) = random_almost_stacked_scripts(ap(3, 7, 2), 1);
        let a = almost_stacked(ap(3, 7, 2), &sf, &sp).unwrap();
        assert_eq!(a.polytope_f_vector().entries, vec![1, 7, 13, 8]);

        let a = almost_stacked(ap(4, 7, 0), &StackingScript::default(), &StackingScript::stacks([0, 0])).unwrap();
        let sphere = refine_by_triangulation(&a, a.f_triangulation.as_ref().unwrap()).unwrap();
        assert!(is_stacked_sphere(&sphere).unwrap());

        let bad = StackingScript {
            moves: vec![StackMove {
                kind: MoveKind::Stack,
                selector: Selector::Facet(vec![1, 2, 3, 4, 5, 6]),
            }],
        };
        let (sf, _) = random_almost_stacked_scripts(ap(4, 8, 2), 0);
        assert!(matches!(almost_stacked(ap(4, 8, 2), &sf, &bad), Err(Error::InvalidMove(_))));
    }

    #[test]
    fn h_stacking() {
        for d in 4..=6 {
            let trivial = almost_stacked(ap(d, d + 1, 0), &StackingScript::default(), &StackingScript::default()).unwrap();
            let g = trivial.f_boundary().unwrap().facets().next().unwrap().clone();
            let one = h_stack(&trivial, &g).unwrap();
            assert_eq!(one.params, ap(d, d + 2, 1));
            assert_eq!(one.polytope_f_vector(), f_almost_stacked(ap(d, d + 2, 1)));
            assert_eq!(one.ball.num_facets(), trivial.ball.num_facets() + d - 2);
            one.validate().unwrap();
        }
        let a = almost_stacked(ap(4, 6, 1), &StackingScript::stacks([0]), &StackingScript::default()).unwrap();
        assert!(matches!(h_stack(&a, &[1, 5, 6]), Err(Error::InvalidHStack(_))));
        for seed in 0..5 {
            let script = random_mixed_script(&a, 6, seed).unwrap();
            let mut cur = a.clone();
            for mv in &script.moves {
                cur = apply_script(&cur, &StackingScript { moves: vec![mv.clone()] }).unwrap();
                let rep = check_asp_bounds(&cur.polytope_f_vector(), cur.params).unwrap();
                assert!(rep.all_equal_lower(), "{:?}", cur.params);
            }
        }
    }

    #[test]
    fn minimizer_recognition() {
        let (sf, sp) = random_almost_stacked_scripts(ap(5, 9, 2), 3);
        let a = almost_stacked(ap(5, 9, 2), &sf, &sp).unwrap();
        let v = recognize_minimizer(&a).unwrap();
        assert!(v.is_minimizer);
        assert_eq!(v.regime, Regime::DGt4);
        assert!(v.factor_reports.iter().all(|r| r.is_simplex));

        let py = AspComplex::new(pyramid(&octahedron(), 7).unwrap(), (1..=6).collect()).unwrap();
        let v = recognize_minimizer(&py).unwrap();
        assert!(v.is_minimizer);
        assert_eq!(v.regime, Regime::D4);
        assert!(v.factor_reports.iter().any(|r| r.is_pyramid_over_f_factor));

        for seed in 0..4 {
            let (sf, sp) = random_almost_stacked_scripts(ap(4, 9, 3), seed);
            let a = almost_stacked(ap(4, 9, 3), &sf, &sp).unwrap();
            assert!(recognize_minimizer(&a).unwrap().is_minimizer);
        }

        let (sf, sp) = random_almost_stacked_scripts(ap(3, 6, 1), 0);
        let a = almost_stacked(ap(3, 6, 1), &sf, &sp).unwrap();
        assert!(matches!(recognize_minimizer(&a), Err(Error::UnsupportedRegime(_))));
    }

    #[test]
    fn non_minimizer_is_rejected() {
        // free sum of two triangles: a prime 3-sphere on 6 vertices
        let a = SimplicialComplex::simplex_boundary(&[1, 2, 3]);
        let b = SimplicialComplex::simplex_boundary(&[4, 5, 6]);
        let sphere = a.join(&b);
        let f = sphere.facets().next().unwrap().clone();
        let ball = SimplicialComplex::pure(sphere.facets().filter(|x| **x != f).cloned()).unwrap();
        let asp = AspComplex::new(ball, f).unwrap();
        asp.validate().unwrap();
        let rep = check_asp_bounds(&asp.polytope_f_vector(), asp.params).unwrap();
        assert!(!rep.all_equal_lower());
        let v = recognize_minimizer(&asp).unwrap();
        assert!(!v.is_minimizer);
        assert_eq!(v.factor_reports.len(), 1);
    }
}
