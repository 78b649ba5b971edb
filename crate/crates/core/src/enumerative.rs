//! Face-number profiles and the closed forms for the almost stacked and
//! almost cyclic families.
//!
//! Index conventions:
//! * [`FVector`] stores `f_{-1}, f_0, ..., f_{d-1}`, so `entries[i + 1]` is `f_i`.
//! * [`HVector`] stores `h_0, ..., h_d` with explicit trailing zeros.
//! * A polytope f-vector counts the distinguished facet once; the ball
//!   obtained by deleting that facet does not. [`FVector::ball_to_polytope`]
//!   and [`FVector::polytope_to_ball`] convert.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{binom, Rational};

/// Dimension `d`, vertex count `n` and excess `s` of `P(d,n,s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AspParams {
    pub d: usize,
    pub n: usize,
    pub s: usize,
}

impl AspParams {
    pub fn new(d: usize, n: usize, s: usize) -> Result<Self> {
        if d < 3 {
            return Err(Error::InvalidParams(format!("d = {d} < 3")));
        }
        if n < d + s + 1 {
            return Err(Error::InvalidParams(format!(
                "n = {n} < d + s + 1 = {}",
                d + s + 1
            )));
        }
        Ok(AspParams { d, n, s })
    }

    /// Number of vertices of the distinguished facet.
    pub fn f_size(&self) -> usize {
        self.d + self.s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FVector {
    /// `f_{-1} .. f_{d-1}`.
    #[serde(rename = "f")]
    pub entries: Vec<i64>,
}

impl FVector {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.first() != Some(&1) {
            return Err(Error::Domain("f_{-1} must be 1".into()));
        }
        if entries.iter().any(|&v| v < 0) {
            return Err(Error::Domain("negative face count".into()));
        }
        Ok(FVector { entries })
    }

    /// Number of entries after `f_{-1}`.
    pub fn d(&self) -> usize {
        self.entries.len() - 1
    }

    /// `f_i` for `-1 <= i <= d-1`.
    pub fn f(&self, i: isize) -> i64 {
        self.entries[(i + 1) as usize]
    }

    pub fn ball_to_polytope(&self) -> FVector {
        let mut e = self.entries.clone();
        *e.last_mut().unwrap() += 1;
        FVector { entries: e }
    }

    pub fn polytope_to_ball(&self) -> FVector {
        let mut e = self.entries.clone();
        *e.last_mut().unwrap() -= 1;
        FVector { entries: e }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HVector {
    /// `h_0 .. h_d`.
    #[serde(rename = "h")]
    pub entries: Vec<i64>,
}

impl HVector {
    pub fn new(entries: Vec<i64>) -> Self {
        HVector { entries }
    }

    pub fn d(&self) -> usize {
        self.entries.len() - 1
    }

    /// `h_k`, zero outside `0..=d`.
    pub fn h(&self, k: isize) -> i64 {
        if k < 0 {
            0
        } else {
            self.entries.get(k as usize).copied().unwrap_or(0)
        }
    }

    /// Same values padded (or truncated) to `len` entries.
    pub fn padded(&self, len: usize) -> HVector {
        HVector {
            entries: (0..len).map(|k| self.h(k as isize)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GVector {
    #[serde(rename = "g")]
    pub entries: Vec<i64>,
}

impl GVector {
    pub fn g(&self, k: isize) -> i64 {
        if k < 0 {
            0
        } else {
            self.entries.get(k as usize).copied().unwrap_or(0)
        }
    }
}

pub fn h_from_f(f: &FVector) -> HVector {
    let d = f.d() as i64;
    let entries = (0..=d)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                    sign * binom(d - i, k - i) * f.entries[i as usize]
                })
                .sum()
        })
        .collect();
    HVector { entries }
}

pub fn f_from_h(h: &HVector) -> FVector {
    let d = h.d() as i64;
    let entries = (0..=d)
        .map(|k| (0..=k).map(|i| binom(d - i, k - i) * h.entries[i as usize]).sum())
        .collect();
    FVector { entries }
}

pub fn g_from_h(h: &HVector) -> GVector {
    let entries = (0..h.entries.len())
        .map(|k| h.h(k as isize) - h.h(k as isize - 1))
        .collect();
    GVector { entries }
}

/// g-vector of a boundary sphere, padded to `len` entries so it can be
/// paired with the h-vector of the ball it bounds.
pub fn boundary_g(h_boundary: &HVector, len: usize) -> GVector {
    g_from_h(&h_boundary.padded(len))
}

/// `h_k(P') - h_{d-k}(P') - g_k(dF)` for `k = 0..=d`.
pub fn dehn_sommerville_defect(h_ball: &HVector, g_boundary: &GVector) -> Result<Vec<i64>> {
    if h_ball.entries.len() != g_boundary.entries.len() {
        return Err(Error::Shape(format!(
            "h has {} entries, g has {}",
            h_ball.entries.len(),
            g_boundary.entries.len()
        )));
    }
    let d = h_ball.d() as isize;
    Ok((0..=d)
        .map(|k| h_ball.h(k) - h_ball.h(d - k) - g_boundary.g(k))
        .collect())
}

/// Face numbers `f_k` of a stacked `d`-polytope on `n` vertices, `1 <= k <= d-1`.
pub fn phi(d: usize, n: usize, k: usize) -> Result<i64> {
    if k < 1 || k + 1 > d {
        return Err(Error::Domain(format!("k = {k} outside 1..={}", d - 1)));
    }
    if n < d + 1 {
        return Err(Error::Domain(format!("n = {n} < d + 1")));
    }
    let (d, n, k) = (d as i64, n as i64, k as i64);
    Ok(if k <= d - 2 {
        binom(d, k) * n - binom(d + 1, k + 1) * k
    } else {
        (d - 1) * n - (d + 1) * (d - 2)
    })
}

/// Polytope-convention f-vector of a stacked polytope `S(d,n)`.
pub fn f_stacked(d: usize, n: usize) -> Result<FVector> {
    let mut e = vec![1, n as i64];
    for k in 1..d {
        e.push(phi(d, n, k)?);
    }
    Ok(FVector { entries: e })
}

/// Polytope-convention f-vector of `S(d,n,s)`.
pub fn f_almost_stacked(p: AspParams) -> FVector {
    let mut f = f_stacked(p.d, p.n).expect("AspParams guarantees n >= d + 1");
    let len = f.entries.len();
    f.entries[len - 1] -= p.s as i64;
    f.entries[len - 2] -= p.s as i64;
    f
}

/// h-vector of the ball `C(d,n,s) - {F}`.
pub fn h_almost_cyclic_ball(p: AspParams) -> HVector {
    let (d, n, s) = (p.d as i64, p.n as i64, p.s as i64);
    let mut h = vec![0i64; p.d + 1];
    for k in 0..=(d - 1) / 2 {
        h[k as usize] = binom(n - d - 1 + k, k);
    }
    for k in 1..=d / 2 {
        h[(d - k) as usize] = binom(n - d - 1 + k, k) - binom(s + k - 1, k);
    }
    h[p.d] = 0;
    HVector { entries: h }
}

/// Polytope-convention f-vector of `C(d,n,s)`.
pub fn f_almost_cyclic(p: AspParams) -> FVector {
    f_from_h(&h_almost_cyclic_ball(p)).ball_to_polytope()
}

/// Ball facet count of `C(d,n,s)` for even `d` from the Gale-evenness count.
pub fn almost_cyclic_ball_facets_even(p: AspParams) -> Result<i64> {
    if p.d % 2 != 0 {
        return Err(Error::Domain("facet formula requires even d".into()));
    }
    let (n, s, m) = (p.n as i64, p.s as i64, (p.d / 2) as i64);
    let d = p.d as i64;
    let sum: i64 = (0..m).map(|i| 2 * binom(n - d - 1 + i, i)).sum();
    Ok(binom(n - m - 1, m) + sum - binom(s + m, m))
}

/// Right-hand sides of the upper bound inequalities on the ball h-vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UbtBounds {
    /// `(k, bound on h_k)` for `0 <= k <= floor((d-1)/2)`.
    pub lower_half: Vec<(usize, i64)>,
    /// `(d-k, bound on h_{d-k})` for `1 <= k <= floor(d/2)`.
    pub upper_half: Vec<(usize, i64)>,
}

impl UbtBounds {
    /// Bound on `h_i`, if one is stated for that index.
    pub fn bound(&self, i: usize) -> Option<i64> {
        self.lower_half
            .iter()
            .chain(&self.upper_half)
            .find(|(k, _)| *k == i)
            .map(|&(_, b)| b)
    }
}

pub fn ubt_h_bounds(p: AspParams) -> UbtBounds {
    let (d, n, s) = (p.d as i64, p.n as i64, p.s as i64);
    UbtBounds {
        lower_half: (0..=(d - 1) / 2)
            .map(|k| (k as usize, binom(n - d - 1 + k, k)))
            .collect(),
        upper_half: (1..=d / 2)
            .map(|k| ((d - k) as usize, binom(n - d - 1 + k, k) - binom(s + k - 1, k)))
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexVerdict {
    pub index: usize,
    pub lower_ok: bool,
    pub upper_ok: bool,
    pub equal_lower: bool,
    pub equal_upper: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub params: AspParams,
    pub f_lower: FVector,
    pub f_subject: FVector,
    pub f_upper: FVector,
    pub verdicts: Vec<IndexVerdict>,
}

impl BoundsReport {
    pub fn all_ok(&self) -> bool {
        self.verdicts.iter().all(|v| v.lower_ok && v.upper_ok)
    }

    pub fn all_equal_lower(&self) -> bool {
        self.verdicts.iter().all(|v| v.equal_lower)
    }

    pub fn all_equal_upper(&self) -> bool {
        self.verdicts.iter().all(|v| v.equal_upper)
    }

    /// Indices failing either bound.
    pub fn violations(&self) -> Vec<usize> {
        self.verdicts
            .iter()
            .filter(|v| !(v.lower_ok && v.upper_ok))
            .map(|v| v.index)
            .collect()
    }
}

/// Compare a polytope-convention f-vector against both extremal families.
pub fn check_asp_bounds(f_subject: &FVector, p: AspParams) -> Result<BoundsReport> {
    if f_subject.d() != p.d {
        return Err(Error::ParameterMismatch(format!(
            "f-vector has dimension {}, params say {}",
            f_subject.d(),
            p.d
        )));
    }
    if f_subject.f(0) != p.n as i64 {
        return Err(Error::ParameterMismatch(format!(
            "f_0 = {} but n = {}",
            f_subject.f(0),
            p.n
        )));
    }
    let lo = f_almost_stacked(p);
    let hi = f_almost_cyclic(p);
    let verdicts = (0..p.d)
        .map(|i| {
            let (l, x, u) = (lo.f(i as isize), f_subject.f(i as isize), hi.f(i as isize));
            IndexVerdict {
                index: i,
                lower_ok: l <= x,
                upper_ok: x <= u,
                equal_lower: l == x,
                equal_upper: x == u,
            }
        })
        .collect();
    Ok(BoundsReport {
        params: p,
        f_lower: lo,
        f_subject: f_subject.clone(),
        f_upper: hi,
        verdicts,
    })
}

/// `2 f_{d-2}(P) - d (f_{d-1}(P) - 1) - f_{d-2}(F)`, zero for every ASP.
///
/// `f_p` is in polytope convention; `f_f` is the f-vector of the facet `F`
/// (equivalently of its boundary sphere).
pub fn ridge_identity_defect(f_p: &FVector, f_f: &FVector) -> i64 {
    let d = f_p.d() as isize;
    2 * f_p.f(d - 2) - d as i64 * (f_p.f(d - 1) - 1) - f_f.f(d - 2)
}

/// Slack of the h-recurrence inequality for each `k = 0..d-1`:
/// `(n-d+k)/(k+1) h_{d-k} + (n-d-s)/(k+1) g_k(dF) - h_{d-k-1}`.
pub fn ubt_recurrence_defect(h_ball: &HVector, g_boundary: &GVector, p: AspParams) -> Vec<Rational> {
    let d = p.d as i64;
    let n = p.n as i64;
    let s = p.s as i64;
    (0..d)
        .map(|k| {
            let kk = k as isize;
            let di = d as isize;
            let a = Rational::new(n - d + k, k + 1) * Rational::from(h_ball.h(di - kk));
            let b = Rational::new(n - d - s, k + 1) * Rational::from(g_boundary.g(kk));
            a + b - Rational::from(h_ball.h(di - kk - 1))
        })
        .collect()
}
