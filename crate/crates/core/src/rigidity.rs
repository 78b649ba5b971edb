//! Rigidity matrices of graph frameworks and randomized generic rank.
//!
//! A single embedding's rank is a lower bound on the generic rank, so the
//! certificates in [`RigidityReport`] are one-sided. Ranks are first tried
//! modulo a 61-bit prime; when that already reaches the a priori maximum the
//! exact rank is the same, otherwise the exact Bareiss rank is computed.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complexes::{SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::exactnum::{binom, rank, rank_mod_prime, RatMatrix, Rational};
use crate::par::{self, Strategy};

const PRIME: u64 = (1 << 61) - 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(Vertex, Vertex)>,
}

impl Graph {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<(Vertex, Vertex)>) -> Result<Self> {
        let vs: BTreeSet<Vertex> = vertices.into_iter().collect();
        let mut es = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::Shape(format!("loop at {a}")));
            }
            if !vs.contains(&a) || !vs.contains(&b) {
                return Err(Error::Shape(format!("edge ({a},{b}) uses an undeclared vertex")));
            }
            es.insert((a.min(b), a.max(b)));
        }
        Ok(Graph {
            vertices: vs.into_iter().collect(),
            edges: es.into_iter().collect(),
        })
    }

    /// 1-skeleton of a complex.
    pub fn skeleton(c: &SimplicialComplex) -> Self {
        Graph {
            vertices: c.vertex_ids(),
            edges: c.edges().into_iter().collect(),
        }
    }

    pub fn complete(n: Vertex) -> Self {
        let vertices: Vec<Vertex> = (1..=n).collect();
        let edges = (1..=n)
            .flat_map(|a| (a + 1..=n).map(move |b| (a, b)))
            .collect();
        Graph { vertices, edges }
    }

    pub fn n_v(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_e(&self) -> usize {
        self.edges.len()
    }

    pub fn with_edge(&self, a: Vertex, b: Vertex) -> Result<Self> {
        let mut e = self.edges.clone();
        e.push((a, b));
        Graph::new(self.vertices.clone(), e)
    }
}

pub type Embedding = BTreeMap<Vertex, Vec<Rational>>;

/// One row per edge `{u,v}`: `x_u - x_v` in the block of `u`, the negation
/// in the block of `v`.
pub fn rigidity_matrix(g: &Graph, emb: &Embedding) -> Result<RatMatrix> {
    let d = emb.values().next().map_or(0, Vec::len);
    let col: BTreeMap<Vertex, usize> = g.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    for &v in &g.vertices {
        match emb.get(&v) {
            None => return Err(Error::MissingEmbedding(v)),
            Some(x) if x.len() != d => {
                return Err(Error::Shape(format!("vertex {v} has {} coordinates", x.len())))
            }
            _ => {}
        }
    }
    let mut m = RatMatrix::zeros(g.n_e(), d * g.n_v());
    for (r, &(a, b)) in g.edges.iter().enumerate() {
        let (xa, xb) = (&emb[&a], &emb[&b]);
        for k in 0..d {
            let diff = &xa[k] - &xb[k];
            m.set(r, col[&a] * d + k, diff.clone());
            m.set(r, col[&b] * d + k, -diff);
        }
    }
    Ok(m)
}

/// Generic rank of a rigid framework on `n_v` vertices in dimension `d`.
pub fn max_rank(n_v: usize, d: usize) -> usize {
    if n_v >= d {
        d * n_v - binom(d as i64 + 1, 2) as usize
    } else {
        binom(n_v as i64, 2) as usize
    }
}

fn framework_rank(g: &Graph, emb: &Embedding) -> Result<usize> {
    let m = rigidity_matrix(g, emb)?;
    let d = emb.values().next().map_or(0, Vec::len);
    let cap = g.n_e().min(max_rank(g.n_v(), d));
    let fast = rank_mod_prime(&m, PRIME);
    Ok(if fast == cap { fast } else { rank(&m) })
}

pub fn stress_dimension(g: &Graph, emb: &Embedding) -> Result<usize> {
    Ok(g.n_e() - framework_rank(g, emb)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RigidityReport {
    pub d: usize,
    pub n_v: usize,
    pub n_e: usize,
    pub best_rank: usize,
    pub stress_dim: usize,
    pub rigid_certified: bool,
    pub stress_free_certified: bool,
    pub trials: usize,
    pub seed: u64,
    /// Rank of a supplied embedding fell below the sampled generic rank.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub special_position: Option<bool>,
}

pub fn random_embedding(g: &Graph, d: usize, seed: u64) -> Embedding {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    g.vertices
        .iter()
        .map(|&v| {
            let x = (0..d)
                .map(|_| Rational::from(rng.random_range(-(1i64 << 31)..(1i64 << 31))))
                .collect();
            (v, x)
        })
        .collect()
}

pub fn sample_generic(g: &Graph, d: usize, trials: usize, seed: u64) -> Result<RigidityReport> {
    sample_generic_with(g, d, trials, seed, Strategy::default())
}

pub fn sample_generic_with(
    g: &Graph,
    d: usize,
    trials: usize,
    seed: u64,
    strategy: Strategy,
) -> Result<RigidityReport> {
    if trials == 0 {
        return Err(Error::Domain("at least one trial is required".into()));
    }
    let seeds: Vec<u64> = (0..trials as u64).map(|t| seed.wrapping_add(t.wrapping_mul(0x9E37_79B9_7F4A_7C15))).collect();
    let ranks = par::map(&seeds, strategy, |&s| framework_rank(g, &random_embedding(g, d, s)));
    let ranks = ranks.into_iter().collect::<Result<Vec<_>>>()?;
    let best = ranks.iter().copied().max().unwrap_or(0);
    Ok(RigidityReport {
        d,
        n_v: g.n_v(),
        n_e: g.n_e(),
        best_rank: best,
        stress_dim: g.n_e() - best,
        rigid_certified: best == max_rank(g.n_v(), d),
        stress_free_certified: best == g.n_e(),
        trials,
        seed,
        special_position: None,
    })
}

/// Sampled report plus a check of one specific embedding against it.
pub fn embedding_report(
    g: &Graph,
    emb: &Embedding,
    trials: usize,
    seed: u64,
) -> Result<(RigidityReport, usize)> {
    let d = emb.values().next().map_or(0, Vec::len);
    let mut rep = sample_generic(g, d, trials, seed)?;
    let r = framework_rank(g, emb)?;
    rep.special_position = Some(r < rep.best_rank);
    Ok((rep, r))
}

/// `g_2 = f_1 - d f_0 + C(d+1, 2)`.
pub fn g2_of_skeleton(f0: i64, f1: i64, d: usize) -> i64 {
    f1 - d as i64 * f0 + binom(d as i64 + 1, 2)
}

pub fn kalai_monotonicity_defect(g_p: i64, g_f: i64) -> i64 {
    g_p - g_f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rank;

    fn emb(points: &[(Vertex, &[i64])]) -> Embedding {
        points
            .iter()
            .map(|(v, x)| (*v, x.iter().map(|&c| Rational::from(c)).collect()))
            .collect()
    }

    #[test]
    fn matrix_examples() {
        let g = Graph::new(vec![1, 2], vec![(1, 2)]).unwrap();
        let m = rigidity_matrix(&g, &emb(&[(1, &[0]), (2, &[1])])).unwrap();
        assert_eq!(m.row(0), &[Rational::from(-1), Rational::from(1)]);
        assert_eq!(rank(&m), 1);
        let missing = emb(&[(1, &[0])]);
        assert!(matches!(rigidity_matrix(&g, &missing), Err(Error::MissingEmbedding(2))));

        let tri = Graph::complete(3);
        let rep = sample_generic(&tri, 2, 3, 1).unwrap();
        assert_eq!((rep.best_rank, rep.stress_dim), (3, 0));
        let k4 = Graph::complete(4);
        let rep = sample_generic(&k4, 2, 3, 1).unwrap();
        assert_eq!((rep.best_rank, rep.stress_dim), (5, 1));
        assert!(rep.rigid_certified && !rep.stress_free_certified);
    }

    #[test]
    fn stress_examples() {
        let tree = Graph::new(vec![1, 2, 3, 4], vec![(1, 2), (2, 3), (2, 4)]).unwrap();
        assert_eq!(sample_generic(&tree, 3, 2, 5).unwrap().stress_dim, 0);
        let mut oct = vec![];
        for a in [1, 2] {
            for b in [3, 4] {
                oct.push((a, b));
            }
            for c in [5, 6] {
                oct.push((a, c));
            }
        }
        for b in [3, 4] {
            for c in [5, 6] {
                oct.push((b, c));
            }
        }
        let g = Graph::new((1..=6).collect(), oct).unwrap();
        let rep = sample_generic(&g, 3, 3, 9).unwrap();
        assert_eq!(rep.best_rank, 12);
        assert!(rep.rigid_certified && rep.stress_free_certified);

        for d in 3..=6 {
            let k = Graph::complete(d as Vertex + 1);
            let rep = sample_generic(&k, d, 1, 0).unwrap();
            assert_eq!(rep.best_rank, binom(d as i64 + 1, 2) as usize);
        }
        let disc = Graph::new(vec![1, 2, 3, 4], vec![(1, 2), (3, 4)]).unwrap();
        assert!(!sample_generic(&disc, 1, 3, 0).unwrap().rigid_certified);
        assert!(!sample_generic(&disc, 2, 3, 0).unwrap().rigid_certified);
    }

    #[test]
    fn g2_examples() {
        assert_eq!(g2_of_skeleton(8, 25, 4), 3);
        assert_eq!(g2_of_skeleton(5, 10, 4), 0);
        assert_eq!(g2_of_skeleton(7, 18, 4), 0);
        assert_eq!(kalai_monotonicity_defect(0, 0), 0);
        assert_eq!(g2_of_skeleton(6, 12, 3), 0);
    }

    #[test]
    fn affine_invariance_and_monotonicity() {
        let g = Graph::complete(5).with_edge(1, 2).unwrap();
        let e = random_embedding(&g, 3, 4);
        let r0 = framework_rank(&g, &e).unwrap();
        // x -> A x + b with an invertible rational A
        let a = [[2, 1, 0], [0, 1, -3], [1, 0, 1]];
        let moved: Embedding = e
            .iter()
            .map(|(&v, x)| {
                let y = (0..3)
                    .map(|i| {
                        (0..3).map(|j| Rational::from(a[i][j]) * &x[j]).sum::<Rational>()
                            + Rational::new(i as i64 + 1, 7)
                    })
                    .collect();
                (v, y)
            })
            .collect();
        assert_eq!(r0, framework_rank(&g, &moved).unwrap());

        let path = Graph::new(vec![1, 2, 3, 4], vec![(1, 2), (2, 3), (3, 4)]).unwrap();
        let e = random_embedding(&path, 2, 1);
        let mut cur = path.clone();
        let mut last = framework_rank(&cur, &e).unwrap();
        for (a, b) in [(1, 3), (2, 4), (1, 4)] {
            cur = cur.with_edge(a, b).unwrap();
            let r = framework_rank(&cur, &e).unwrap();
            assert!(r >= last);
            let s = stress_dimension(&cur, &e).unwrap();
            assert_eq!(s, cur.n_e() - r);
            last = r;
        }
        // K4 in the plane: the sixth edge is dependent
        assert_eq!(stress_dimension(&cur, &e).unwrap(), 1);
    }
}
