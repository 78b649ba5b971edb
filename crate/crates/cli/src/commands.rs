use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{anyhow, bail, Context};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use asp_core::complexes::{AspComplex, SimplicialComplex};
use asp_core::curves::{almost_cyclic_points, PointConfig};
use asp_core::enumerative::{
    boundary_g, check_asp_bounds, f_almost_cyclic, f_almost_stacked, AspParams, FVector,
};
use asp_core::gale::{almost_cyclic_facets, interior_tuples};
use asp_core::hull::{detect_asp, enumerate_facets_with, key_lemma_defects, HullOptions};
use asp_core::par::{self, Strategy};
use asp_core::rigidity::{sample_generic, Graph};
use asp_core::stackgen::{
    almost_stacked, apply_script, random_almost_stacked_scripts, random_mixed_script,
    recognize_minimizer,
};

use crate::{verify, Command, Failure, Format, GaleCmd, Kind, ParamArgs, PointSource, RigidityCmd, StackgenCmd};

pub struct Caps {
    pub max_n: usize,
    pub max_d: usize,
}

impl Caps {
    pub fn from_env(unsafe_large: bool) -> Self {
        if unsafe_large {
            return Caps { max_n: usize::MAX, max_d: usize::MAX };
        }
        let var = |k: &str, dflt| std::env::var(k).ok().and_then(|v| v.parse().ok()).unwrap_or(dflt);
        Caps { max_n: var("ASP_MAX_N", 16), max_d: var("ASP_MAX_D", 6) }
    }

    pub fn check(&self, n: usize, d: usize) -> anyhow::Result<()> {
        if n > self.max_n || d > self.max_d {
            bail!(
                "n = {n}, d = {d} exceeds the caps n <= {}, d <= {}; pass --unsafe-large \
                 (hull work grows like C(n, d))",
                self.max_n,
                self.max_d
            );
        }
        Ok(())
    }

    pub fn params(&self, a: ParamArgs) -> anyhow::Result<AspParams> {
        self.check(a.n, a.d)?;
        Ok(AspParams::new(a.d, a.n, a.s)?)
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn emit<T: Serialize>(out: Option<&Path>, value: &T) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit_text(out, &text)
}

fn emit_text(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => Ok(std::io::stdout().write_all(text.as_bytes())?),
    }
}

pub fn summary(asp: &AspComplex) -> anyhow::Result<Value> {
    let fb = asp.f_boundary()?;
    let h = asp.h_ball();
    Ok(json!({
        "params": asp.params,
        "f": asp.polytope_f_vector().entries,
        "f_ball": asp.ball_f_vector().entries,
        "h_ball": h.entries,
        "g_boundary": boundary_g(&fb.h_vector(), h.entries.len()).entries,
    }))
}

pub fn run(cmd: Command, caps: &Caps) -> Result<(), Failure> {
    match cmd {
        Command::Construct { kind, params, seed, out } => {
            let p = caps.params(params)?;
            fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
            let asp = match kind {
                Kind::CyclicAsp => {
                    let points = almost_cyclic_points(p);
                    emit(Some(&out.join("points.json")), &points)?;
                    detect_asp(&points)?.asp
                }
                Kind::StackedAsp => {
                    let (sf, sp) = random_almost_stacked_scripts(p, seed);
                    emit(Some(&out.join("script.json")), &json!({"f": sf, "p": sp}))?;
                    almost_stacked(p, &sf, &sp)?
                }
            };
            emit(Some(&out.join("complex.json")), &asp)?;
            emit(Some(&out.join("summary.json")), &summary(&asp)?)?;
            Ok(())
        }
        Command::Facets { source, out } => {
            let points = load_points(&source, caps)?;
            let opts = HullOptions { max_points: caps.max_n, ..HullOptions::default() };
            emit(out.as_deref(), &enumerate_facets_with(&points, &opts)?)?;
            Ok(())
        }
        Command::Gale { cmd: GaleCmd::Facets { params, interior_tuples: inner, out } } => {
            let p = caps.params(params)?;
            let list = if inner { interior_tuples(p) } else { almost_cyclic_facets(p) };
            emit(out.as_deref(), &list)?;
            Ok(())
        }
        Command::Verify { complex, points, summary, checks, seed, out } => {
            verify::run(&complex, points.as_deref(), summary.as_deref(), &checks, seed, out.as_deref())
        }
        Command::Table { d, s, n_offset, seed, format, out } => {
            let rows = table(&parse_range(&d)?, &parse_range(&s)?, &parse_range(&n_offset)?, seed, caps)?;
            match format {
                Format::Json => emit(out.as_deref(), &rows)?,
                Format::Csv => emit_text(out.as_deref(), &to_csv(&rows)?)?,
            }
            Ok(())
        }
        Command::Rigidity { cmd: RigidityCmd::Report { input, dim, trials, seed, out } } => {
            let g = load_graph(&input)?;
            caps.check(g.n_v(), dim)?;
            emit(out.as_deref(), &sample_generic(&g, dim, trials, seed)?)?;
            Ok(())
        }
        Command::Shelling { params, seed, v, out } => {
            let p = caps.params(params)?;
            let geo = detect_asp(&almost_cyclic_points(p))?;
            match v {
                None => {
                    let (q, y) = geo.stack_beyond_f()?;
                    let cert = q.line_shelling(seed)?;
                    emit(out.as_deref(), &json!({"y": y, "certificate": cert}))?;
                }
                Some(v) => {
                    let (q, y) = geo.stack_beyond_f_near(v, seed)?;
                    let cert = q.constrained_line_shelling(y, v, seed)?;
                    let report = key_lemma_defects(&cert, y, v)?;
                    emit(out.as_deref(), &json!({"y": y, "certificate": cert, "key_lemma": report}))?;
                    if !report.holds() {
                        return Err(Failure::Check);
                    }
                }
            }
            Ok(())
        }
        Command::Recognize { input, out } | Command::Stackgen { cmd: StackgenCmd::Recognize { input, out } } => {
            let asp: AspComplex = read_json(&input)?;
            emit(out.as_deref(), &recognize_minimizer(&asp)?)?;
            Ok(())
        }
        Command::Stackgen { cmd: StackgenCmd::Build { params, seed, moves, out } } => {
            let p = caps.params(params)?;
            let (sf, sp) = random_almost_stacked_scripts(p, seed);
            let mut asp = almost_stacked(p, &sf, &sp)?;
            let extra = random_mixed_script(&asp, moves, seed)?;
            asp = apply_script(&asp, &extra)?;
            caps.check(asp.params.n, asp.params.d)?;
            emit(
                out.as_deref(),
                &json!({"complex": asp, "scripts": {"f": sf, "p": sp, "extra": extra}, "summary": summary(&asp)?}),
            )?;
            Ok(())
        }
    }
}

fn load_points(source: &PointSource, caps: &Caps) -> anyhow::Result<PointConfig> {
    let points = match (&source.input, source.d, source.n, source.s) {
        (Some(path), ..) => read_json(path)?,
        (None, Some(d), Some(n), Some(s)) => almost_cyclic_points(caps.params(ParamArgs { d, n, s })?),
        _ => bail!("give --input or all of --d --n --s"),
    };
    caps.check(points.n(), points.d)?;
    Ok(points)
}

/// Accepts a graph, an ASP complex or a bare simplicial complex.
fn load_graph(path: &Path) -> anyhow::Result<Graph> {
    let v: Value = read_json(path)?;
    if let Ok(g) = serde_json::from_value::<Graph>(v.clone()) {
        return Ok(Graph::new(g.vertices, g.edges)?);
    }
    if let Ok(a) = serde_json::from_value::<AspComplex>(v.clone()) {
        return Ok(Graph::skeleton(&a.ball));
    }
    let c: SimplicialComplex = serde_json::from_value(v)
        .map_err(|_| anyhow!("{} is not a graph or complex", path.display()))?;
    Ok(Graph::skeleton(&c))
}

fn parse_range(s: &str) -> anyhow::Result<Vec<usize>> {
    let bad = || anyhow!("bad range {s:?}, expected a or a..b");
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            if a > b {
                return Err(bad());
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![s.trim().parse().map_err(|_| bad())?]),
    }
}

#[derive(Serialize)]
struct Row {
    d: usize,
    n: usize,
    s: usize,
    f_stacked: Vec<i64>,
    f_cyclic: Vec<i64>,
    h_cyclic_ball: Vec<i64>,
    lower_le_upper: bool,
    stacked_equals_lower: bool,
    cyclic_equals_upper: bool,
}

fn table(ds: &[usize], ss: &[usize], offs: &[usize], seed: u64, caps: &Caps) -> anyhow::Result<Vec<Row>> {
    let mut cells = Vec::new();
    for &d in ds {
        for &s in ss {
            for &o in offs {
                let n = d + s + o;
                caps.check(n, d)?;
                cells.push(AspParams::new(d, n, s)?);
            }
        }
    }
    let rows = par::map(&cells, Strategy::Parallel, |&p| -> anyhow::Result<Row> {
        let (sf, sp) = random_almost_stacked_scripts(p, seed);
        let st = almost_stacked(p, &sf, &sp)?.polytope_f_vector();
        // measured from the Gale facet list, not the closed form
        let fi: Vec<u32> = (1..=(p.d + p.s) as u32).collect();
        let ball = SimplicialComplex::pure(almost_cyclic_facets(p).into_iter().filter(|f| *f != fi))?;
        let cy = ball.f_vector().ball_to_polytope();
        let (lo, hi) = (f_almost_stacked(p), f_almost_cyclic(p));
        Ok(Row {
            d: p.d,
            n: p.n,
            s: p.s,
            lower_le_upper: lo.entries.iter().zip(&hi.entries).all(|(a, b)| a <= b),
            stacked_equals_lower: check_asp_bounds(&st, p)?.all_equal_lower(),
            cyclic_equals_upper: check_asp_bounds(&cy, p)?.all_equal_upper(),
            h_cyclic_ball: ball.h_vector().entries,
            f_stacked: st.entries,
            f_cyclic: cy.entries,
        })
    });
    rows.into_iter().collect()
}

fn to_csv(rows: &[Row]) -> anyhow::Result<String> {
    let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "d", "n", "s", "f_stacked", "f_cyclic", "h_cyclic_ball", "lower_le_upper", "stacked_equals_lower",
        "cyclic_equals_upper",
    ])?;
    for r in rows {
        w.write_record([
            r.d.to_string(),
            r.n.to_string(),
            r.s.to_string(),
            join(&r.f_stacked),
            join(&r.f_cyclic),
            join(&r.h_cyclic_ball),
            r.lower_le_upper.to_string(),
            r.stacked_equals_lower.to_string(),
            r.cyclic_equals_upper.to_string(),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// f-vector from a summary file, if it carries one.
pub fn summary_f(path: &Path) -> anyhow::Result<FVector> {
    let v: Value = read_json(path)?;
    let f = v.get("f").ok_or_else(|| anyhow!("{} has no \"f\" entry", path.display()))?;
    let entries: Vec<i64> = serde_json::from_value(f.clone())?;
    Ok(FVector::new(entries)?)
}
