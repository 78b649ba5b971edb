//! Exact geometric side: supporting hyperplanes by brute force over
//! `d`-subsets, ASP detection, beyond-points and Bruggesser–Mani line
//! shellings.
//!
//! Points are handled in homogeneous integer form `(w, w x)` with `w > 0`
//! the lcm of the denominators, so every sign test is a `BigInt` dot product.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complexes::{
    intersection, is_subset, normalize, shell_sequence, without, AspComplex, Face,
    ShellingCertificate, SimplicialComplex, Vertex,
};
use crate::curves::PointConfig;
use crate::enumerative::HVector;
use crate::error::{Error, Result};
use crate::exactnum::{bareiss_rank, int_det, Rational};
use crate::par::{self, Strategy};

/// Facet with its supporting hyperplane `normal . x = offset`; the polytope
/// lies on the side `normal . x >= offset`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetDescriptor {
    pub vertex_ids: Face,
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

impl FacetDescriptor {
    /// Positive inside, zero on the hyperplane, negative beyond.
    pub fn eval(&self, x: &[Rational]) -> Rational {
        let mut acc = -self.offset.clone();
        for (a, xi) in self.normal.iter().zip(x) {
            acc += &(a * xi);
        }
        acc
    }

    pub fn is_simplex(&self) -> bool {
        self.vertex_ids.len() == self.normal.len()
    }

    fn from_cofactors(vertex_ids: Face, c: Vec<BigInt>) -> Self {
        FacetDescriptor {
            vertex_ids,
            normal: c[1..].iter().cloned().map(Rational::from).collect(),
            offset: Rational::from(-c[0].clone()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct HullOptions {
    pub strategy: Strategy,
    pub max_points: usize,
}

impl Default for HullOptions {
    fn default() -> Self {
        HullOptions {
            strategy: Strategy::default(),
            max_points: 16,
        }
    }
}

fn hom_row(coords: &[Rational]) -> Vec<BigInt> {
    let w = coords.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    std::iter::once(w.clone())
        .chain(coords.iter().map(|x| x.numer() * (&w / x.denom())))
        .collect()
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Coefficients `c` with `c . (1, z) = det[rows; (1, z)]`, up to sign, for
/// `d` homogeneous rows. All zero when the rows are affinely dependent.
fn hyperplane_cofactors(rows: &[&Vec<BigInt>]) -> Vec<BigInt> {
    let d = rows.len();
    (0..=d)
        .map(|j| {
            let minor: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let m = int_det(&minor);
            if j % 2 == 0 {
                m
            } else {
                -m
            }
        })
        .collect()
}

fn primitive(mut c: Vec<BigInt>) -> Vec<BigInt> {
    let g = c.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in c.iter_mut() {
            *x = &*x / &g;
        }
    }
    c
}

/// Sign of the `(d+1) x (d+1)` determinant with a column of ones prepended.
pub fn orientation(pts: &[Vec<Rational>]) -> Result<i32> {
    let d = pts.first().map_or(0, Vec::len);
    if pts.len() != d + 1 || pts.iter().any(|p| p.len() != d) {
        return Err(Error::Shape(format!(
            "orientation needs d+1 points in dimension d, got {} points",
            pts.len()
        )));
    }
    // scaling rows by positive weights keeps the sign
    let rows: Vec<Vec<BigInt>> = pts.iter().map(|p| hom_row(p)).collect();
    let det = int_det(&rows);
    Ok(if det.is_positive() {
        1
    } else if det.is_negative() {
        -1
    } else {
        0
    })
}

pub fn centroid(points: &[&[Rational]]) -> Vec<Rational> {
    let d = points[0].len();
    let k = Rational::from(points.len() as i64);
    (0..d)
        .map(|i| points.iter().map(|p| p[i].clone()).sum::<Rational>() / &k)
        .collect()
}

fn affine_rank(rows: &[&Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| (*r).clone()).collect();
    bareiss_rank(&mut m)
}

/// A full-dimensional point configuration with its facets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polytope {
    pub config: PointConfig,
    pub facets: Vec<FacetDescriptor>,
}

pub fn enumerate_facets(config: &PointConfig) -> Result<Vec<FacetDescriptor>> {
    enumerate_facets_with(config, &HullOptions::default())
}

pub fn enumerate_facets_with(
    config: &PointConfig,
    opts: &HullOptions,
) -> Result<Vec<FacetDescriptor>> {
    let n = config.n();
    let d = config.d;
    if n > opts.max_points {
        return Err(Error::CapExceeded(format!(
            "{n} points exceed the cap of {}",
            opts.max_points
        )));
    }
    let rows: Vec<Vec<BigInt>> = config.points.iter().map(|p| hom_row(&p.coords)).collect();
    let r = affine_rank(&rows.iter().collect::<Vec<_>>());
    if r != d + 1 {
        return Err(Error::Rank {
            rank: r.saturating_sub(1),
            dim: d,
        });
    }
    let ids = config.ids();
    let subsets: Vec<Vec<usize>> = (0..n).combinations(d).collect();
    let found = par::map(&subsets, opts.strategy, |sub| {
        let c = hyperplane_cofactors(&sub.iter().map(|&i| &rows[i]).collect::<Vec<_>>());
        if c.iter().all(Zero::is_zero) {
            return None;
        }
        let mut on = Vec::new();
        let (mut pos, mut neg) = (false, false);
        for (i, row) in rows.iter().enumerate() {
            match dot(&c, row).sign() {
                num_bigint::Sign::NoSign => on.push(ids[i]),
                num_bigint::Sign::Plus => pos = true,
                num_bigint::Sign::Minus => neg = true,
            }
            if pos && neg {
                return None;
            }
        }
        let on = normalize(on);
        // report each facet once, from its lexicographically first spanning subset
        let first_spanning = on
            .iter()
            .map(|id| ids.iter().position(|x| x == id).unwrap())
            .combinations(d)
            .find(|s| {
                affine_rank(&s.iter().map(|&i| &rows[i]).collect::<Vec<_>>()) == d
            })?;
        let mut sorted_sub = sub.clone();
        sorted_sub.sort_by_key(|&i| ids[i]);
        let mut fs = first_spanning;
        fs.sort_by_key(|&i| ids[i]);
        if fs != sorted_sub {
            return None;
        }
        let c = if neg { c.into_iter().map(|x| -x).collect() } else { c };
        Some(FacetDescriptor::from_cofactors(on, primitive(c)))
    });
    let mut facets: BTreeMap<Face, FacetDescriptor> = BTreeMap::new();
    for f in found.into_iter().flatten() {
        facets.entry(f.vertex_ids.clone()).or_insert(f);
    }
    Ok(facets.into_values().collect())
}

impl Polytope {
    pub fn new(config: PointConfig) -> Result<Self> {
        let facets = enumerate_facets(&config)?;
        Ok(Polytope { config, facets })
    }

    pub fn with_options(config: PointConfig, opts: &HullOptions) -> Result<Self> {
        let facets = enumerate_facets_with(&config, opts)?;
        Ok(Polytope { config, facets })
    }

    pub fn d(&self) -> usize {
        self.config.d
    }

    pub fn vertex_ids(&self) -> Face {
        normalize(self.facets.iter().flat_map(|f| f.vertex_ids.iter().copied()).collect())
    }

    fn coords(&self, id: Vertex) -> &[Rational] {
        self.config.coords(id).expect("vertex of the configuration")
    }

    pub fn is_simplicial(&self) -> bool {
        self.facets.iter().all(FacetDescriptor::is_simplex)
    }

    pub fn facet_sets(&self) -> Vec<Face> {
        self.facets.iter().map(|f| f.vertex_ids.clone()).collect()
    }

    /// Boundary complex of a simplicial polytope.
    pub fn boundary_complex(&self) -> Result<SimplicialComplex> {
        if !self.is_simplicial() {
            return Err(Error::Shape("polytope has non-simplex facets".into()));
        }
        SimplicialComplex::pure(self.facet_sets())
    }

    pub fn vertex_centroid(&self) -> Vec<Rational> {
        let ids = self.vertex_ids();
        centroid(&ids.iter().map(|&v| self.coords(v)).collect::<Vec<_>>())
    }

    pub fn is_strictly_inside(&self, x: &[Rational]) -> bool {
        self.facets.iter().all(|f| f.eval(x).signum() > 0)
    }

    /// Largest `k` such that every `k`-subset of vertices lies in a facet.
    pub fn neighborliness(&self) -> usize {
        let verts = self.vertex_ids();
        let mut k = 0;
        while k < verts.len()
            && verts
                .iter()
                .copied()
                .combinations(k + 1)
                .all(|s| self.facets.iter().any(|f| is_subset(&s, &f.vertex_ids)))
        {
            k += 1;
        }
        k
    }

    /// Every ridge (facet intersection of dimension `d-2`) has `d-1` vertices.
    pub fn ridges_are_simplices(&self) -> bool {
        let d = self.d();
        let rows: BTreeMap<Vertex, Vec<BigInt>> = self
            .config
            .points
            .iter()
            .map(|p| (p.id, hom_row(&p.coords)))
            .collect();
        self.facets.iter().tuple_combinations().all(|(a, b)| {
            let w = intersection(&a.vertex_ids, &b.vertex_ids);
            if w.len() < d - 1 {
                return true;
            }
            let r = affine_rank(&w.iter().map(|v| &rows[v]).collect::<Vec<_>>());
            r != d - 1 || w.len() == d - 1
        })
    }

    /// Point strictly beyond facet `idx` and strictly beneath every other
    /// facet, on the ray from the vertex centroid through the facet centroid.
    pub fn point_beyond(&self, idx: usize) -> Vec<Rational> {
        let c = self.vertex_centroid();
        let fv = &self.facets[idx].vertex_ids;
        let m = centroid(&fv.iter().map(|&v| self.coords(v)).collect::<Vec<_>>());
        let dir: Vec<Rational> = m.iter().zip(&c).map(|(a, b)| a - b).collect();
        let mut step = Rational::one();
        loop {
            let t = Rational::one() + &step;
            let y: Vec<Rational> = c.iter().zip(&dir).map(|(ci, di)| ci + &(&t * di)).collect();
            if self.beyond_exactly(idx, &y) {
                return y;
            }
            step = step / Rational::from(2);
        }
    }

    fn beyond_exactly(&self, idx: usize, y: &[Rational]) -> bool {
        self.facets.iter().enumerate().all(|(i, f)| {
            let s = f.eval(y).signum();
            if i == idx {
                s < 0
            } else {
                s > 0
            }
        })
    }

    /// Ridges of facet `idx`: maximal intersections with other facets of
    /// affine dimension `d-2`.
    pub fn facet_ridges(&self, idx: usize) -> Vec<Face> {
        let d = self.d();
        let rows: BTreeMap<Vertex, Vec<BigInt>> = self
            .config
            .points
            .iter()
            .map(|p| (p.id, hom_row(&p.coords)))
            .collect();
        let fv = &self.facets[idx].vertex_ids;
        let mut out: BTreeSet<Face> = BTreeSet::new();
        for (i, g) in self.facets.iter().enumerate() {
            if i == idx {
                continue;
            }
            let w = intersection(fv, &g.vertex_ids);
            if w.len() >= d - 1
                && affine_rank(&w.iter().map(|v| &rows[v]).collect::<Vec<_>>()) == d - 1
            {
                out.insert(w);
            }
        }
        out.into_iter().collect()
    }

    /// `conv(P ∪ {y})` for `y` beyond exactly facet `idx`; the new facets
    /// are the cones from `y` over the ridges of that facet.
    pub fn stack_beyond(&self, idx: usize, id: Vertex, y: Vec<Rational>) -> Result<Polytope> {
        if !self.beyond_exactly(idx, &y) {
            return Err(Error::Domain(format!(
                "point is not beyond exactly facet {:?}",
                self.facets[idx].vertex_ids
            )));
        }
        let config = self.config.with_point(id, y.clone())?;
        let ridges = self.facet_ridges(idx);
        if ridges.iter().any(|r| r.len() != self.d() - 1) {
            return Polytope::new(config);
        }
        let interior = hom_row(&self.vertex_centroid());
        let yrow = hom_row(&y);
        let mut facets: Vec<FacetDescriptor> = self
            .facets
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != idx)
            .map(|(_, f)| f.clone())
            .collect();
        for r in ridges {
            let mut rows: Vec<Vec<BigInt>> = r.iter().map(|&v| hom_row(self.coords(v))).collect();
            rows.push(yrow.clone());
            let c = hyperplane_cofactors(&rows.iter().collect::<Vec<_>>());
            let c = if dot(&c, &interior).is_negative() {
                c.into_iter().map(|x| -x).collect()
            } else {
                c
            };
            let mut ids = r.clone();
            ids.push(id);
            facets.push(FacetDescriptor::from_cofactors(normalize(ids), primitive(c)));
        }
        facets.sort_by(|a, b| a.vertex_ids.cmp(&b.vertex_ids));
        Ok(Polytope { config, facets })
    }

    fn crossing_order(&self, origin: &[Rational], dir: &[Rational]) -> Option<Vec<usize>> {
        let mut pos: Vec<(Rational, usize)> = Vec::new();
        let mut neg: Vec<(Rational, usize)> = Vec::new();
        for (i, f) in self.facets.iter().enumerate() {
            let slope: Rational = f.normal.iter().zip(dir).map(|(a, r)| a * r).sum();
            if slope.is_zero() {
                return None;
            }
            let lambda = -(f.eval(origin) / slope);
            if lambda.signum() > 0 {
                pos.push((lambda, i));
            } else {
                neg.push((lambda, i));
            }
        }
        pos.sort();
        neg.sort();
        let all: Vec<&Rational> = pos.iter().chain(&neg).map(|(l, _)| l).collect();
        if all.iter().sorted().tuple_windows().any(|(a, b)| a == b) {
            return None;
        }
        Some(pos.into_iter().chain(neg).map(|(_, i)| i).collect())
    }

    fn random_direction(&self, rng: &mut ChaCha8Rng, around: &[Rational]) -> Vec<Rational> {
        // combination of vertex offsets, so the scale follows the polytope
        let ids = self.vertex_ids();
        let mut dir = vec![Rational::zero(); self.d()];
        for &v in &ids {
            let w = Rational::from(rng.random_range(-(1i64 << 16)..=(1i64 << 16)));
            for (di, (x, c)) in dir.iter_mut().zip(self.coords(v).iter().zip(around)) {
                *di += &(&w * &(x - c));
            }
        }
        dir
    }

    /// Bruggesser–Mani shelling along a seeded random line through the
    /// vertex centroid, verified before it is returned.
    pub fn line_shelling(&self, seed: u64) -> Result<ShellingCertificate> {
        const RETRIES: usize = 32;
        let complex = self.boundary_complex()?;
        let c = self.vertex_centroid();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..RETRIES {
            let dir = self.random_direction(&mut rng, &c);
            let Some(order) = self.crossing_order(&c, &dir) else {
                continue;
            };
            let facets: Vec<Face> = order.iter().map(|&i| self.facets[i].vertex_ids.clone()).collect();
            if let Ok(cert) = complex.verify_shelling(&facets) {
                return Ok(cert);
            }
        }
        Err(Error::ShellingDegenerate(RETRIES))
    }

    /// Line shelling that shells the star of `y` first and then the rest of
    /// the star of `v`.
    ///
    /// Candidate lines run from an interior origin exactly through `y`. The
    /// first origin is the vertex centroid of the other vertices, later ones
    /// are seeded interior points. On the unperturbed line every facet of
    /// `st(y)` is crossed at `y`; the line is kept if the crossings right
    /// after that tie are exactly the rest of `st(v)`. The tie at `y` is then
    /// broken by nudging the target off `y`, and the result is verified.
    pub fn constrained_line_shelling(
        &self,
        y: Vertex,
        v: Vertex,
        seed: u64,
    ) -> Result<ShellingCertificate> {
        const ATTEMPTS: usize = 48;
        let complex = self.boundary_complex()?;
        if !complex.contains_face(&normalize(vec![y, v])) {
            return Err(Error::Domain(format!("{v} is not a neighbour of {y}")));
        }
        let st_y: BTreeSet<Face> = complex.star(&[y])?.facet_set().clone();
        let st_v: BTreeSet<Face> = complex.star(&[v])?.facet_set().clone();
        let rest_v = st_v.difference(&st_y).count();
        let others: Vec<Vertex> = self.vertex_ids().into_iter().filter(|&u| u != y).collect();
        let yc = self.coords(y).to_vec();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for attempt in 0..ATTEMPTS {
            let origin = if attempt == 0 {
                centroid(&others.iter().map(|&u| self.coords(u)).collect::<Vec<_>>())
            } else {
                self.random_interior(&mut rng, &others)
            };
            let dir: Vec<Rational> = yc.iter().zip(&origin).map(|(a, b)| a - b).collect();
            if !self.prefix_holds(&origin, &dir, &st_y, &st_v, rest_v) {
                continue;
            }
            let wiggle = self.random_direction(&mut rng, &origin);
            let mut eta = Rational::new(1, 1i64 << 20);
            for _ in 0..24 {
                let dir: Vec<Rational> = dir.iter().zip(&wiggle).map(|(a, w)| a + &(&eta * w)).collect();
                eta = eta / Rational::from(16);
                let Some(order) = self.crossing_order(&origin, &dir) else {
                    continue;
                };
                let facets: Vec<Face> =
                    order.iter().map(|&i| self.facets[i].vertex_ids.clone()).collect();
                let head_ok = facets[..st_y.len()].iter().all(|f| st_y.contains(f))
                    && facets[st_y.len()..st_y.len() + rest_v].iter().all(|f| st_v.contains(f));
                if !head_ok {
                    continue;
                }
                if let Ok(cert) = complex.verify_shelling(&facets) {
                    return Ok(cert);
                }
                break;
            }
        }
        Err(Error::ConstrainedShellingNotFound(ATTEMPTS))
    }

    /// Crossing groups along `origin + lambda dir` in shelling order: equal
    /// parameters form one group.
    fn crossing_groups(&self, origin: &[Rational], dir: &[Rational]) -> Option<Vec<Vec<usize>>> {
        let mut pos: Vec<(Rational, usize)> = Vec::new();
        let mut neg: Vec<(Rational, usize)> = Vec::new();
        for (i, f) in self.facets.iter().enumerate() {
            let slope: Rational = f.normal.iter().zip(dir).map(|(a, r)| a * r).sum();
            if slope.is_zero() {
                return None;
            }
            let lambda = -(f.eval(origin) / slope);
            if lambda.signum() > 0 {
                pos.push((lambda, i));
            } else {
                neg.push((lambda, i));
            }
        }
        pos.sort();
        neg.sort();
        let mut groups: Vec<(Rational, Vec<usize>)> = Vec::new();
        for (l, i) in pos.into_iter().chain(neg) {
            match groups.last_mut() {
                Some((m, g)) if *m == l => g.push(i),
                _ => groups.push((l, vec![i])),
            }
        }
        Some(groups.into_iter().map(|(_, g)| g).collect())
    }

    fn prefix_holds(
        &self,
        origin: &[Rational],
        dir: &[Rational],
        st_y: &BTreeSet<Face>,
        st_v: &BTreeSet<Face>,
        rest_v: usize,
    ) -> bool {
        let Some(groups) = self.crossing_groups(origin, dir) else {
            return false;
        };
        let Some((first, rest)) = groups.split_first() else {
            return false;
        };
        let set = |g: &[usize]| -> Vec<Face> { g.iter().map(|&i| self.facets[i].vertex_ids.clone()).collect() };
        if first.len() != st_y.len() || !set(first).iter().all(|f| st_y.contains(f)) {
            return false;
        }
        let mut seen = 0;
        for g in rest {
            if seen == rest_v {
                return true;
            }
            let fs = set(g);
            if seen + fs.len() > rest_v || !fs.iter().all(|f| st_v.contains(f) && !st_y.contains(f)) {
                return false;
            }
            seen += fs.len();
        }
        seen == rest_v
    }

    /// Seeded interior point with barycentric weights in `4..=8`.
    fn random_interior(&self, rng: &mut ChaCha8Rng, ids: &[Vertex]) -> Vec<Rational> {
        let weights: Vec<Rational> = ids.iter().map(|_| Rational::from(rng.random_range(4i64..=8))).collect();
        let total: Rational = weights.iter().cloned().sum();
        let mut c = vec![Rational::zero(); self.d()];
        for (&id, w) in ids.iter().zip(&weights) {
            for (ci, x) in c.iter_mut().zip(self.coords(id)) {
                *ci += &(w * x / &total);
            }
        }
        c
    }
}

/// Facet-level view of a polytope with at most one non-simplex facet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AspGeometry {
    pub polytope: Polytope,
    /// Index of the distinguished facet in `polytope.facets`.
    pub f_index: usize,
    /// No non-simplex facet was found and `F` was designated.
    pub simplicial: bool,
    pub asp: AspComplex,
}

pub fn detect_asp(config: &PointConfig) -> Result<AspGeometry> {
    let polytope = Polytope::new(config.clone())?;
    AspGeometry::from_polytope(polytope)
}

impl AspGeometry {
    /// A simplicial polytope gets its lexicographically first facet as `F`.
    pub fn from_polytope(polytope: Polytope) -> Result<Self> {
        let big: Vec<usize> = (0..polytope.facets.len())
            .filter(|&i| !polytope.facets[i].is_simplex())
            .collect();
        match big.len() {
            0 => Self::designate(polytope, 0, true),
            1 => Self::designate(polytope, big[0], false),
            k => Err(Error::NotAsp(k)),
        }
    }

    fn designate(polytope: Polytope, f_index: usize, simplicial: bool) -> Result<Self> {
        let ball = SimplicialComplex::pure(
            polytope
                .facets
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != f_index)
                .map(|(_, f)| f.vertex_ids.clone()),
        )?;
        let asp = AspComplex::new(ball, polytope.facets[f_index].vertex_ids.clone())?;
        asp.validate()?;
        Ok(AspGeometry {
            polytope,
            f_index,
            simplicial,
            asp,
        })
    }

    /// Choose a different distinguished facet of a simplicial polytope.
    pub fn redesignate(&self, f: &[Vertex]) -> Result<Self> {
        if !self.simplicial {
            return Err(Error::Domain("F is determined for s > 0".into()));
        }
        let f = normalize(f.to_vec());
        let idx = self
            .polytope
            .facets
            .iter()
            .position(|x| x.vertex_ids == f)
            .ok_or_else(|| Error::NotAFace(f.clone()))?;
        Self::designate(self.polytope.clone(), idx, true)
    }

    pub fn f_descriptor(&self) -> &FacetDescriptor {
        &self.polytope.facets[self.f_index]
    }

    /// `Q = conv(P ∪ {y})` with `y` from [`Polytope::point_beyond`].
    pub fn stack_beyond_f(&self) -> Result<(Polytope, Vertex)> {
        let y = self.polytope.point_beyond(self.f_index);
        let id = self.polytope.config.ids().into_iter().max().unwrap_or(0) + 1;
        Ok((self.polytope.stack_beyond(self.f_index, id, y)?, id))
    }

    /// `Q = conv(P ∪ {y})` with `y` placed on the line from the vertex
    /// centroid `c` to a point `z` of `F` close to `v`. `z` is pulled
    /// towards `v` until the facets crossed right after `F` along that line
    /// are exactly the other facets through `v`; `y` sits before every
    /// other crossing, so it is beyond `F` only.
    pub fn stack_beyond_f_near(&self, v: Vertex, seed: u64) -> Result<(Polytope, Vertex)> {
        let p = &self.polytope;
        let fv = &self.f_descriptor().vertex_ids;
        if fv.binary_search(&v).is_err() {
            return Err(Error::Domain(format!("{v} is not a vertex of F")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = p.vertex_centroid();
        let others: Vec<Vertex> = fv.iter().copied().filter(|&u| u != v).collect();
        let fw: Vec<Rational> = others
            .iter()
            .map(|_| Rational::from(rng.random_range(1i64..=4)))
            .collect();
        let ftotal: Rational = fw.iter().cloned().sum();
        let through_v: BTreeSet<usize> = (0..p.facets.len())
            .filter(|&i| i != self.f_index && p.facets[i].vertex_ids.binary_search(&v).is_ok())
            .collect();
        let mut delta = Rational::new(1, 16);
        for _ in 0..64 {
            let mut z: Vec<Rational> =
                p.coords(v).iter().map(|x| (Rational::one() - &delta) * x).collect();
            for (&u, w) in others.iter().zip(&fw) {
                for (zi, x) in z.iter_mut().zip(p.coords(u)) {
                    *zi += &(&delta * w * x / &ftotal);
                }
            }
            delta = delta / Rational::from(4);
            let dir: Vec<Rational> = z.iter().zip(&c).map(|(a, b)| a - b).collect();
            // crossing parameters along c + lambda dir; F is crossed at lambda = 1
            let mut ahead: Vec<(Rational, usize)> = Vec::new();
            for (i, f) in p.facets.iter().enumerate() {
                if i == self.f_index {
                    continue;
                }
                let slope: Rational = f.normal.iter().zip(&dir).map(|(a, r)| a * r).sum();
                if slope.signum() < 0 {
                    ahead.push((-(f.eval(&c) / slope), i));
                }
            }
            ahead.sort();
            let k = through_v.len();
            let head: BTreeSet<usize> = ahead.iter().take(k).map(|&(_, i)| i).collect();
            let separated = ahead.len() == k || ahead[k - 1].0 < ahead[k].0;
            if head != through_v || !separated || ahead.first().is_some_and(|(l, _)| *l <= Rational::one()) {
                continue;
            }
            let eps = match ahead.first() {
                Some((l, _)) => (l - Rational::one()) / Rational::from(2),
                None => Rational::one(),
            };
            let t = Rational::one() + eps;
            let y: Vec<Rational> = c.iter().zip(&dir).map(|(ci, di)| ci + &(&t * di)).collect();
            let id = p.config.ids().into_iter().max().unwrap_or(0) + 1;
            return Ok((p.stack_beyond(self.f_index, id, y)?, id));
        }
        Err(Error::Degenerate(format!("no line through F near {v} isolates its star")))
    }
}

/// Per-step values of `h^j_k(Q) - h^j_k(Q/v) - h^j_k(F) + h^j_k(F/v)` along a
/// shelling of `Q`, where `F = lk(y)` and the other complexes carry the
/// induced shellings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KeyLemmaReport {
    pub y: Vertex,
    pub v: Vertex,
    /// `defects[j][k]` after step `j`.
    pub defects: Vec<Vec<i64>>,
    pub min_defect: i64,
    pub h_q: HVector,
    pub h_q_v: HVector,
    pub h_f: HVector,
    pub h_f_v: HVector,
}

impl KeyLemmaReport {
    pub fn holds(&self) -> bool {
        self.min_defect >= 0
    }
}

pub fn key_lemma_defects(
    cert: &ShellingCertificate,
    y: Vertex,
    v: Vertex,
) -> Result<KeyLemmaReport> {
    let d = cert.order.first().map_or(0, Vec::len);
    let len = d + 1;
    let induced = |pred: &dyn Fn(&Face) -> bool, drop: &[Vertex]| -> Result<Vec<Option<usize>>> {
        let mut steps = Vec::new();
        let mut seq = Vec::new();
        for f in &cert.order {
            if pred(f) {
                let mut g = f.clone();
                for &x in drop {
                    g = without(&g, x);
                }
                seq.push(g);
                steps.push(Some(seq.len() - 1));
            } else {
                steps.push(None);
            }
        }
        let sub = if seq.is_empty() {
            None
        } else {
            Some(shell_sequence(&seq).map_err(|e| {
                Error::Consistency(format!("induced order is not a shelling: {e}"))
            })?)
        };
        Ok(steps
            .into_iter()
            .map(|s| s.map(|i| sub.as_ref().unwrap().restriction[i].len()))
            .collect())
    };
    let q_sizes: Vec<Option<usize>> = cert.restriction.iter().map(|r| Some(r.len())).collect();
    let qv_sizes = induced(&|f: &Face| f.contains(&v), &[v])?;
    let f_sizes = induced(&|f: &Face| f.contains(&y), &[y])?;
    let fv_sizes = induced(&|f: &Face| f.contains(&y) && f.contains(&v), &[y, v])?;

    let mut hist = [vec![0i64; len], vec![0i64; len], vec![0i64; len], vec![0i64; len]];
    let mut defects = Vec::with_capacity(cert.order.len());
    let mut min_defect = i64::MAX;
    for j in 0..cert.order.len() {
        for (h, sizes) in hist
            .iter_mut()
            .zip([&q_sizes, &qv_sizes, &f_sizes, &fv_sizes])
        {
            if let Some(k) = sizes[j] {
                h[k] += 1;
            }
        }
        let row: Vec<i64> = (0..len)
            .map(|k| hist[0][k] - hist[1][k] - hist[2][k] + hist[3][k])
            .collect();
        min_defect = min_defect.min(*row.iter().min().unwrap());
        defects.push(row);
    }
    let [h_q, h_q_v, h_f, h_f_v] = hist.map(HVector::new);
    Ok(KeyLemmaReport {
        y,
        v,
        defects,
        min_defect,
        h_q,
        h_q_v: h_q_v.padded(d),
        h_f: h_f.padded(d),
        h_f_v: h_f_v.padded(d.saturating_sub(1)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{almost_cyclic_points, Point};
    use crate::enumerative::AspParams;
    use crate::gale::almost_cyclic_facets;

    fn config(d: usize, pts: &[&[i64]]) -> PointConfig {
        PointConfig::new(
            d,
            pts.iter()
                .zip(1..)
                .map(|(c, id)| Point {
                    id,
                    coords: c.iter().map(|&x| Rational::from(x)).collect(),
                })
                .collect(),
        )
        .unwrap()
    }

    fn tetra() -> PointConfig {
        config(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])
    }

    fn bipyramid() -> PointConfig {
        // triangle 1,2,3 in z = 0, apexes 4 (up) and 5 (down)
        config(3, &[&[3, 0, 0], &[0, 3, 0], &[-3, -3, 0], &[0, 0, 2], &[0, 0, -2]])
    }

    #[test]
    fn orientation_examples() {
        let r = |v: &[i64]| v.iter().map(|&x| Rational::from(x)).collect::<Vec<_>>();
        let unit = vec![r(&[0, 0, 0]), r(&[1, 0, 0]), r(&[0, 1, 0]), r(&[0, 0, 1])];
        assert_eq!(orientation(&unit).unwrap(), 1);
        let rep = vec![r(&[0, 0, 0]), r(&[1, 0, 0]), r(&[1, 0, 0]), r(&[0, 0, 1])];
        assert_eq!(orientation(&rep).unwrap(), 0);
        assert!(orientation(&unit[..3]).is_err());
    }

    #[test]
    fn small_hulls() {
        let f = enumerate_facets(&tetra()).unwrap();
        assert_eq!(f.len(), 4);
        assert!(f.iter().all(|x| x.vertex_ids.len() == 3));
        let sq = config(2, &[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]);
        let f = enumerate_facets(&sq).unwrap();
        assert_eq!(f.len(), 4);
        assert!(f.iter().all(|x| x.vertex_ids.len() == 2));
        for facet in &f {
            for p in &sq.points {
                let s = facet.eval(&p.coords).signum();
                assert_eq!(s == 0, facet.vertex_ids.contains(&p.id));
                assert!(s >= 0);
            }
        }
        let flat = config(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]);
        assert!(matches!(enumerate_facets(&flat), Err(Error::Rank { rank: 2, dim: 3 })));
    }

    #[test]
    fn interior_points_are_not_vertices() {
        let c = config(2, &[&[0, 0], &[4, 0], &[0, 4], &[1, 1]]);
        let p = Polytope::new(c).unwrap();
        assert_eq!(p.vertex_ids(), vec![1, 2, 3]);
    }

    #[test]
    fn cube_is_not_asp() {
        let mut pts = vec![];
        for x in [0, 1] {
            for y in [0, 1] {
                for z in [0, 1] {
                    pts.push(vec![x, y, z]);
                }
            }
        }
        let refs: Vec<&[i64]> = pts.iter().map(Vec::as_slice).collect();
        assert!(matches!(detect_asp(&config(3, &refs)), Err(Error::NotAsp(6))));
    }

    #[test]
    fn almost_cyclic_agrees_with_gale() {
        for (d, n, s) in [(4, 7, 1), (4, 8, 2), (3, 6, 1), (5, 9, 2)] {
            let p = AspParams::new(d, n, s).unwrap();
            let facets = enumerate_facets(&almost_cyclic_points(p)).unwrap();
            let sets: Vec<Face> = facets.iter().map(|f| f.vertex_ids.clone()).collect();
            assert_eq!(sets, almost_cyclic_facets(p), "{p:?}");
        }
    }

    #[test]
    fn detect_asp_finds_f() {
        let p = AspParams::new(4, 8, 2).unwrap();
        let g = detect_asp(&almost_cyclic_points(p)).unwrap();
        assert!(!g.simplicial);
        assert_eq!(g.asp.f_vertices, vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(g.asp.params, p);
        let g0 = detect_asp(&almost_cyclic_points(AspParams::new(4, 7, 0).unwrap())).unwrap();
        assert!(g0.simplicial);
        assert_eq!(g0.asp.f_vertices, vec![1, 2, 3, 4]);
    }

    #[test]
    fn beyond_points() {
        let p = Polytope::new(tetra()).unwrap();
        for i in 0..4 {
            let y = p.point_beyond(i);
            for (j, f) in p.facets.iter().enumerate() {
                assert_eq!(f.eval(&y).signum() < 0, i == j);
            }
        }
        let g = detect_asp(&almost_cyclic_points(AspParams::new(4, 7, 1).unwrap())).unwrap();
        let (q, y) = g.stack_beyond_f().unwrap();
        assert!(q.is_simplicial());
        assert_eq!(q.vertex_ids().len(), 8);
        let direct = enumerate_facets(&q.config).unwrap();
        assert_eq!(q.facet_sets(), direct.iter().map(|f| f.vertex_ids.clone()).collect::<Vec<_>>());
        assert_eq!(y, 8);
    }

    #[test]
    fn line_shelling_of_tetrahedron() {
        let p = Polytope::new(tetra()).unwrap();
        let cert = p.line_shelling(1).unwrap();
        assert_eq!(cert.len(), 4);
        assert_eq!(crate::complexes::h_from_shelling(&cert).entries, vec![1, 1, 1, 1]);
        p.boundary_complex().unwrap().verify_shelling(&cert.reversed()).unwrap();
    }

    #[test]
    fn constrained_shelling_of_bipyramid() {
        let p = Polytope::new(bipyramid()).unwrap();
        let cert = p.constrained_line_shelling(4, 1, 3).unwrap();
        assert!(cert.order[..3].iter().all(|f| f.contains(&4)));
        let rest_v: Vec<_> = cert.order[3..].iter().take_while(|f| f.contains(&1)).collect();
        assert_eq!(rest_v.len(), 2);
        let rep = key_lemma_defects(&cert, 4, 1).unwrap();
        assert!(rep.holds());
    }

    #[test]
    fn neighborliness_and_ridges() {
        let p = Polytope::new(tetra()).unwrap();
        assert_eq!(p.neighborliness(), 3);
        let g = Polytope::new(almost_cyclic_points(AspParams::new(5, 9, 2).unwrap())).unwrap();
        assert_eq!(g.neighborliness(), 2);
        assert!(g.ridges_are_simplices());
    }

    #[test]
    fn strategies_agree() {
        let c = almost_cyclic_points(AspParams::new(5, 10, 1).unwrap());
        let a = enumerate_facets_with(&c, &HullOptions { strategy: Strategy::Sequential, max_points: 16 }).unwrap();
        let b = enumerate_facets_with(&c, &HullOptions { strategy: Strategy::Parallel, max_points: 16 }).unwrap();
        assert_eq!(a, b);
    }
}
