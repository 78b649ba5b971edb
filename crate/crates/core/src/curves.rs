//! Point configurations on moment-type curves
//! `x(t) = (t, t^2, ..., t^{d-r}, p_1(t), ..., p_r(t))`.
//!
//! The almost cyclic polytope uses `r = 1` and
//! `p(t) = (n-1)^{(t-1)(d-1)} t(t+1)...(t+d+s-1)` sampled at
//! `t_i = -s-d+i`, so the first `d+s` points sit in `{x_d = 0}`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::complexes::Vertex;
use crate::enumerative::AspParams;
use crate::error::{Error, Result};
use crate::exactnum::Rational;

/// One tail coordinate of a curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailPoly {
    /// Coefficients `c_0, c_1, ...` of an ordinary polynomial.
    Polynomial(Vec<Rational>),
    /// The almost cyclic tail `p(t)`; integer parameters only.
    AlmostCyclic(AspParams),
}

impl TailPoly {
    pub fn eval(&self, t: &Rational) -> Result<Rational> {
        match self {
            TailPoly::Polynomial(coeffs) => {
                let mut acc = Rational::zero();
                for c in coeffs.iter().rev() {
                    acc = acc * t + c;
                }
                Ok(acc)
            }
            TailPoly::AlmostCyclic(p) => {
                if !t.is_integer() {
                    return Err(Error::Domain(format!(
                        "p(t) is only evaluated at integers, got {t}"
                    )));
                }
                let t = i64::try_from(t.numer())
                    .map_err(|_| Error::Domain("parameter out of range".into()))?;
                Ok(p_eval(t, *p))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub d: usize,
    pub tails: Vec<TailPoly>,
}

impl CurveSpec {
    pub fn new(d: usize, tails: Vec<TailPoly>) -> Result<Self> {
        if tails.len() >= d {
            return Err(Error::InvalidParams(format!(
                "r = {} replaced coordinates needs r < d = {d}",
                tails.len()
            )));
        }
        Ok(CurveSpec { d, tails })
    }

    pub fn moment(d: usize) -> Self {
        CurveSpec { d, tails: vec![] }
    }

    pub fn almost_cyclic(p: AspParams) -> Self {
        CurveSpec {
            d: p.d,
            tails: vec![TailPoly::AlmostCyclic(p)],
        }
    }

    pub fn r(&self) -> usize {
        self.tails.len()
    }

    pub fn point(&self, t: &Rational) -> Result<Vec<Rational>> {
        let mut coords = Vec::with_capacity(self.d);
        let mut pow = Rational::one();
        for _ in 0..self.d - self.r() {
            pow = &pow * t;
            coords.push(pow.clone());
        }
        for tail in &self.tails {
            coords.push(tail.eval(t)?);
        }
        Ok(coords)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Point {
    pub id: Vertex,
    pub coords: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointConfig {
    pub d: usize,
    pub points: Vec<Point>,
}

impl PointConfig {
    pub fn new(d: usize, points: Vec<Point>) -> Result<Self> {
        let mut ids = BTreeSet::new();
        let mut seen = BTreeSet::new();
        for p in &points {
            if p.coords.len() != d {
                return Err(Error::Shape(format!(
                    "point {} has {} coordinates, expected {d}",
                    p.id,
                    p.coords.len()
                )));
            }
            if !ids.insert(p.id) {
                return Err(Error::Shape(format!("duplicate id {}", p.id)));
            }
            if !seen.insert(p.coords.clone()) {
                return Err(Error::Shape(format!("point {} repeats an earlier point", p.id)));
            }
        }
        Ok(PointConfig { d, points })
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn ids(&self) -> Vec<Vertex> {
        self.points.iter().map(|p| p.id).collect()
    }

    pub fn coords(&self, id: Vertex) -> Option<&[Rational]> {
        self.points
            .iter()
            .find(|p| p.id == id)
            .map(|p| p.coords.as_slice())
    }

    /// Copy with one extra point.
    pub fn with_point(&self, id: Vertex, coords: Vec<Rational>) -> Result<Self> {
        let mut pts = self.points.clone();
        pts.push(Point { id, coords });
        PointConfig::new(self.d, pts)
    }
}

/// `p(t) = (n-1)^{(t-1)(d-1)} t(t+1)...(t+d+s-1)`.
pub fn p_eval(t: i64, p: AspParams) -> Rational {
    let mut prod = Rational::one();
    for i in 0..(p.d + p.s) as i64 {
        prod = prod * Rational::from(t + i);
    }
    if prod.is_zero() {
        return prod;
    }
    let exp = (t - 1) * (p.d as i64 - 1);
    prod * Rational::from(p.n as i64 - 1).pow(exp as i32)
}

/// Curve parameters `t_i = -s-d+i`, `i = 1..n`.
pub fn almost_cyclic_params(p: AspParams) -> Vec<i64> {
    (1..=p.n as i64).map(|i| i - (p.s + p.d) as i64).collect()
}

pub fn almost_cyclic_points(p: AspParams) -> PointConfig {
    let spec = CurveSpec::almost_cyclic(p);
    let points = almost_cyclic_params(p)
        .into_iter()
        .zip(1..)
        .map(|(t, id)| Point {
            id,
            coords: spec.point(&Rational::from(t)).expect("integer parameter"),
        })
        .collect();
    PointConfig { d: p.d, points }
}

/// Points `x(t)` for the given parameters, with ids `1..` in parameter order.
pub fn general_curve_points(spec: &CurveSpec, params: &[Rational]) -> Result<PointConfig> {
    let mut sorted = params.to_vec();
    sorted.sort();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateParameter(w[0].to_string()));
    }
    let points = sorted
        .iter()
        .zip(1..)
        .map(|(t, id)| Ok(Point { id, coords: spec.point(t)? }))
        .collect::<Result<Vec<_>>>()?;
    Ok(PointConfig { d: spec.d, points })
}
