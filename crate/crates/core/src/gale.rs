//! Combinatorial facet list of `C(d,n,s)` from Gale's evenness condition.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::complexes::{Face, Vertex};
use crate::enumerative::AspParams;
use crate::par::{self, Strategy};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaleQuery {
    pub params: AspParams,
    pub subset: Face,
}

/// Every pair `u < v` outside the subset has an even number of subset
/// elements strictly between them.
pub fn gale_even(q: &GaleQuery) -> bool {
    let outside: Vec<Vertex> = (1..=q.params.n as Vertex)
        .filter(|v| q.subset.binary_search(v).is_err())
        .collect();
    outside.iter().tuple_combinations().all(|(&u, &v)| {
        q.subset.iter().filter(|&&w| u < w && w < v).count() % 2 == 0
    })
}

/// Same predicate checked on consecutive outside pairs only.
pub fn gale_even_contiguous(q: &GaleQuery) -> bool {
    let outside: Vec<Vertex> = (1..=q.params.n as Vertex)
        .filter(|v| q.subset.binary_search(v).is_err())
        .collect();
    outside
        .iter()
        .tuple_windows()
        .all(|(&u, &v)| (v - u - 1) % 2 == 0)
}

/// Polytope facets of `C(d,n,s)`: `I = {1..d+s}` together with the Gale-even
/// `d`-subsets not contained in `I`, sorted.
pub fn almost_cyclic_facets(p: AspParams) -> Vec<Face> {
    almost_cyclic_facets_with(p, Strategy::default())
}

pub fn almost_cyclic_facets_with(p: AspParams, strategy: Strategy) -> Vec<Face> {
    let big_i = p.f_size() as Vertex;
    let subsets: Vec<Face> = (1..=p.n as Vertex).combinations(p.d).collect();
    let keep = par::map(&subsets, strategy, |s| {
        *s.last().unwrap() > big_i
            && gale_even(&GaleQuery {
                params: p,
                subset: s.clone(),
            })
    });
    let mut out: Vec<Face> = subsets
        .into_iter()
        .zip(keep)
        .filter_map(|(s, k)| k.then_some(s))
        .collect();
    out.push((1..=big_i).collect());
    out.sort();
    out.dedup();
    out
}

/// Gale-even `d`-subsets lying inside `I`. Exposed for inspection only.
pub fn interior_tuples(p: AspParams) -> Vec<Face> {
    (1..=p.f_size() as Vertex)
        .combinations(p.d)
        .filter(|s| {
            gale_even(&GaleQuery {
                params: p,
                subset: s.clone(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerative::almost_cyclic_ball_facets_even;

    fn q(n: usize, subset: &[Vertex]) -> GaleQuery {
        GaleQuery {
            params: AspParams::new(4, n, 0).unwrap(),
            subset: subset.to_vec(),
        }
    }

    #[test]
    fn evenness_examples() {
        assert!(gale_even(&q(7, &[1, 2, 3, 4])));
        assert!(!gale_even(&q(7, &[1, 3, 4, 6])));
        assert!(gale_even(&q(7, &[1, 2, 6, 7])));
    }

    #[test]
    fn facet_list_examples() {
        let f = almost_cyclic_facets(AspParams::new(4, 8, 2).unwrap());
        assert_eq!(f.len(), 15);
        assert_eq!(f.iter().filter(|s| s.len() == 4).count(), 14);
        assert!(f.contains(&vec![1, 2, 3, 4, 5, 6]));

        let f = almost_cyclic_facets(AspParams::new(4, 7, 0).unwrap());
        assert_eq!(f.len(), 14);
        assert!(f.contains(&vec![1, 2, 3, 4]));

        let f = almost_cyclic_facets(AspParams::new(3, 6, 1).unwrap());
        assert_eq!(f.len(), 7);
    }

    #[test]
    fn contiguous_pairs_suffice_and_simplex_facets_leave_i() {
        for d in 3..=6 {
            for s in 0..=3 {
                for n in d + s + 1..=(d + s + 5).min(12) {
                    let p = AspParams::new(d, n, s).unwrap();
                    for sub in (1..=n as Vertex).combinations(d) {
                        let g = GaleQuery { params: p, subset: sub };
                        assert_eq!(gale_even(&g), gale_even_contiguous(&g));
                    }
                    for f in almost_cyclic_facets(p) {
                        if f.len() == d && s > 0 {
                            assert!(*f.last().unwrap() > (d + s) as Vertex);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn even_d_facet_count_formula() {
        for d in [4, 6] {
            for s in 0..=3 {
                for n in d + s + 1..=d + s + 5 {
                    let p = AspParams::new(d, n, s).unwrap();
                    let simplices = almost_cyclic_facets(p)
                        .iter()
                        .filter(|f| f.len() == d && f.iter().any(|&v| v > (d + s) as Vertex))
                        .count() as i64;
                    assert_eq!(simplices, almost_cyclic_ball_facets_even(p).unwrap(), "{p:?}");
                }
            }
        }
    }

    #[test]
    fn strategies_agree() {
        let p = AspParams::new(5, 11, 2).unwrap();
        assert_eq!(
            almost_cyclic_facets_with(p, Strategy::Sequential),
            almost_cyclic_facets_with(p, Strategy::Parallel)
        );
    }

    #[test]
    fn interior_tuples_stay_inside() {
        let p = AspParams::new(4, 8, 2).unwrap();
        let t = interior_tuples(p);
        assert!(!t.is_empty());
        assert!(t.iter().all(|s| s.iter().all(|&v| v <= 6)));
    }
}
