use std::collections::BTreeSet;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use asp_core::complexes::{h_from_shelling, AspComplex, Face};
use asp_core::curves::{almost_cyclic_points, PointConfig};
use asp_core::enumerative::{
    boundary_g, check_asp_bounds, dehn_sommerville_defect, f_almost_stacked, h_from_f,
    ridge_identity_defect, FVector,
};
use asp_core::gale::almost_cyclic_facets;
use asp_core::hull::{detect_asp, enumerate_facets};
use asp_core::rigidity::{g2_of_skeleton, sample_generic, Graph};
use asp_core::stackgen::recognize_minimizer;

use crate::commands::{emit, read_json, summary_f};
use crate::{Check, Failure};

#[derive(Serialize)]
#[serde(rename_all = "snake_case")]
enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Serialize)]
struct CheckResult {
    check: String,
    status: Status,
    detail: Value,
}

type Outcome = anyhow::Result<(Status, Value)>;

fn pass(detail: Value) -> Outcome {
    Ok((Status::Pass, detail))
}

fn verdict(ok: bool, detail: Value) -> Outcome {
    Ok((if ok { Status::Pass } else { Status::Fail }, detail))
}

fn skip(reason: &str) -> Outcome {
    Ok((Status::Skipped, json!({ "reason": reason })))
}

const ALL: [Check; 7] = [
    Check::Bounds,
    Check::Ds,
    Check::Gale,
    Check::Ridge,
    Check::Shelling,
    Check::Rigidity,
    Check::Minimizer,
];

pub fn run(
    complex: &Path,
    points: Option<&Path>,
    summary: Option<&Path>,
    checks: &[Check],
    seed: u64,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let asp: AspComplex = read_json(complex)?;
    let points: Option<PointConfig> = points.map(read_json).transpose()?;
    let f = match summary {
        Some(p) => summary_f(p)?,
        None => asp.polytope_f_vector(),
    };
    let selected: BTreeSet<Check> = if checks.contains(&Check::All) {
        ALL.into_iter().collect()
    } else {
        checks.iter().copied().collect()
    };
    let ctx = Ctx { asp: &asp, points: points.as_ref(), f: &f, seed };
    let mut results = Vec::new();
    for c in selected {
        let (status, detail) = match ctx.run(c) {
            Ok(r) => r,
            Err(e) => (Status::Fail, json!({ "error": format!("{e:#}") })),
        };
        results.push(CheckResult { check: format!("{c:?}").to_lowercase(), status, detail });
    }
    let all_pass = results.iter().all(|r| !matches!(r.status, Status::Fail));
    emit(out, &json!({ "params": asp.params, "checks": results, "all_pass": all_pass }))?;
    if all_pass {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

struct Ctx<'a> {
    asp: &'a AspComplex,
    points: Option<&'a PointConfig>,
    f: &'a FVector,
    seed: u64,
}

impl Ctx<'_> {
    fn run(&self, c: Check) -> Outcome {
        let p = self.asp.params;
        match c {
            Check::Bounds => {
                let r = check_asp_bounds(self.f, p)?;
                verdict(r.all_ok(), json!({ "violations": r.violations(), "report": r }))
            }
            Check::Ds => {
                let h = self.asp.h_ball();
                let g = boundary_g(&self.asp.f_boundary()?.h_vector(), h.entries.len());
                let def = dehn_sommerville_defect(&h, &g)?;
                verdict(def.iter().all(|&x| x == 0), json!({ "defect": def }))
            }
            Check::Ridge => {
                let fb = self.asp.f_boundary()?.f_vector();
                let def = ridge_identity_defect(self.f, &fb);
                verdict(def == 0, json!({ "defect": def }))
            }
            Check::Gale => {
                let Some(points) = self.points else {
                    return skip("needs --points");
                };
                if *points != almost_cyclic_points(p) {
                    return skip("points are not the almost cyclic configuration");
                }
                let gale: BTreeSet<Face> = almost_cyclic_facets(p).into_iter().collect();
                let hull: BTreeSet<Face> =
                    enumerate_facets(points)?.into_iter().map(|f| f.vertex_ids).collect();
                let mut comb: BTreeSet<Face> = self.asp.ball.facet_set().clone();
                comb.insert(self.asp.f_vertices.clone());
                verdict(
                    gale == hull && gale == comb,
                    json!({ "gale": gale.len(), "hull_agrees": gale == hull, "complex_agrees": gale == comb }),
                )
            }
            Check::Shelling => {
                let Some(points) = self.points else {
                    return skip("needs --points");
                };
                let geo = detect_asp(points)?;
                if geo.asp.ball != self.asp.ball {
                    return verdict(false, json!({ "error": "points do not realise the complex" }));
                }
                let (q, y) = geo.stack_beyond_f()?;
                let hq = h_from_f(&q.boundary_complex()?.f_vector());
                let hp = self.asp.h_ball();
                let hf = self.asp.f_boundary()?.h_vector();
                let split = (0..=p.d as isize).all(|k| hq.h(k) == hp.h(k) + hf.h(k - 1));
                let mut agree = 0;
                for s in 0..10 {
                    let cert = q.line_shelling(self.seed.wrapping_add(s))?;
                    agree += usize::from(h_from_shelling(&cert) == hq);
                }
                verdict(split && agree == 10, json!({ "y": y, "h_q": hq.entries, "split_holds": split, "agreeing_shellings": agree }))
            }
            Check::Rigidity => {
                if p.d == 3 && p.s > 0 {
                    return skip("F is a non-triangular 2-face");
                }
                let g = Graph::skeleton(&self.asp.ball);
                let rep = sample_generic(&g, p.d, 3, self.seed)?;
                let g2 = g2_of_skeleton(g.n_v() as i64, g.n_e() as i64, p.d);
                verdict(rep.rigid_certified && rep.stress_dim as i64 == g2, json!({ "g2": g2, "report": rep }))
            }
            Check::Minimizer => {
                if p.d == 3 {
                    return skip("every ASP with d = 3 attains the lower bound");
                }
                let v = recognize_minimizer(self.asp)?;
                let at_lower = *self.f == f_almost_stacked(p);
                verdict(v.is_minimizer == at_lower, json!({ "f_at_lower_bound": at_lower, "verdict": v }))
            }
            Check::All => pass(Value::Null),
        }
    }
}
