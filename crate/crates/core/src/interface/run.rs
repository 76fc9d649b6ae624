use std::collections::BTreeMap;
use std::time::Instant;

use urr_poly::{Matrix, OrderSpec, Poly, RingCtx};

use super::bundle::*;
use super::problem::{Problem, Task};
use crate::error::{Error, Result};
use crate::generic::find_frame;
use crate::groebner::{member_with, std_basis_with, BasisOptions, Membership};
use crate::ideal::krull_dim;
use crate::lift::solve_psi;
use crate::pipeline::{derivative_is_tangent_projection, localize_map, uniformize, GermMap, PipelineOptions};
use crate::sigma::build_sigma;
use crate::variety::{jacobian_at, jacobian_rank_at, smooth_at, tangent_space, VarietyPresentation};

/// Command-line overrides; `None` falls back to the problem file, then
/// to the defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    pub seed: Option<u64>,
    pub max_tries: Option<usize>,
    pub max_lift_degree: Option<u32>,
    pub max_jet_order: Option<u32>,
    pub order: Option<String>,
    pub timings: bool,
}

impl RunOptions {
    pub fn pipeline(&self, p: &Problem) -> PipelineOptions {
        let mut o = PipelineOptions { seed: self.seed.or(p.seed).unwrap_or(0), ..PipelineOptions::default() };
        if let Some(t) = self.max_tries {
            o.max_tries = t;
        }
        if let Some(d) = self.max_lift_degree {
            o.lift.max_degree = d;
        }
        if let Some(n) = self.max_jet_order {
            o.lift.max_jet_order = n;
        }
        o
    }
}

struct Clock {
    on: bool,
    start: Instant,
    stages: BTreeMap<String, u64>,
}

impl Clock {
    fn new(on: bool) -> Self {
        Clock { on, start: Instant::now(), stages: BTreeMap::new() }
    }

    fn lap(&mut self, stage: &str) {
        if self.on {
            let now = Instant::now();
            self.stages.insert(stage.to_string(), (now - self.start).as_micros() as u64);
            self.start = now;
        }
    }
}

struct Builder {
    outputs: Vec<Output>,
    certificates: Vec<BundleCert>,
}

impl Builder {
    fn out(&mut self, name: &str, value: Value) {
        self.outputs.push(Output { name: name.to_string(), value });
    }
}

fn ints_matrix(rows: &[(u32, u32)]) -> Value {
    Value::Matrix { rows: rows.iter().map(|(a, b)| vec![a.to_string(), b.to_string()]).collect() }
}

fn frame_outputs(b: &mut Builder, frame: &crate::generic::SigmaFrame) {
    b.out("change", matrix_value(&frame.change));
    b.out("translation", rationals_value(frame.translation.coords()));
    b.out("tries_used", Value::Integer { value: frame.report.tries_used as u64 });
    b.out("transversal_rank", Value::Integer { value: frame.report.transversal_rank as u64 });
    b.out("only_origin", Value::Flag { value: frame.report.only_origin });
    b.out("noether_finite", Value::Flag { value: frame.report.noether_finite });
    let n = frame.change.rows();
    let mut names: Vec<String> = (1..=n).map(|i| format!("$a{i}")).collect();
    names.push("$z".into());
    let ring = RingCtx::with_reserved(&names).expect("reserved names");
    for (v, w) in frame.report.only_origin_certs.iter().enumerate() {
        b.certificates.push(encode_cert(&format!("W meets Z(I) only at x0, adapted coordinate {}", v + 1), &ring, w));
    }
}

fn germ_outputs(b: &mut Builder, ring: &RingCtx, g: &GermMap) -> Result<()> {
    b.out("G", fractions_value(ring, &g.coords()));
    b.out("G_at_point", rationals_value(&g.value()?));
    b.out("DG", matrix_value(&g.jacobian()?));
    b.out("short_circuit", Value::Flag { value: g.provenance.short_circuit });
    if let Some(q) = &g.provenance.q {
        b.out("q", polys_value(ring, std::slice::from_ref(q)));
    }
    if let Some(l) = &g.provenance.lift {
        let psi: Vec<(Poly, Poly)> = l.psi.iter().map(|p| (p.num.clone(), p.den.clone())).collect();
        b.out("psi", fractions_value(ring, &psi));
    }
    b.out(
        "target_containment",
        Value::Text {
            value: if g.provenance.containment_identical.iter().all(|&c| c) { "identical" } else { "not identical" }.into(),
        },
    );
    b.certificates.extend(g.provenance.certificates.iter().map(encode_labeled));
    Ok(())
}

fn target_variety(p: &Problem, map_name: &str) -> Result<VarietyPresentation> {
    if p.variety_decl("Y").is_some() {
        return p.variety("Y");
    }
    Ok(p.map(map_name)?.target)
}

/// Runs `task` on `problem`. The task line in the file, if any, must agree.
pub fn run_problem(problem: &Problem, task: Task, opts: &RunOptions) -> Result<ResultBundle> {
    if let Some(t) = problem.task {
        if t != task {
            return Err(Error::PreconditionViolated(format!("problem file declares task `{t}`, requested `{task}`")));
        }
    }
    let po = opts.pipeline(problem);
    let ring = &problem.ring;
    let mut clock = Clock::new(opts.timings);
    let mut b = Builder { outputs: Vec::new(), certificates: Vec::new() };
    let mut seed_used = None;
    match task {
        Task::Gb => {
            let i = problem.ideal("I")?;
            let text = opts.order.clone().or_else(|| problem.order.clone()).unwrap_or_else(|| "dp".into());
            let order = OrderSpec::parse(&text, i.ring().names())?;
            let basis = std_basis_with(i.gens(), &order, &BasisOptions::tracked().with_limits(po.limits.clone()))?;
            clock.lap("basis");
            b.out("order", Value::Text { value: text });
            b.out("basis", polys_value(i.ring(), basis.generators()));
            if let Some(rep) = basis.representation() {
                for (k, (g, row)) in basis.generators().iter().zip(rep).enumerate() {
                    let cert = urr_poly::Cert {
                        target: g.clone(),
                        unit: Poly::one(g.nvars()),
                        cofactors: row.iter().cloned().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (c, j)).collect(),
                        point: None,
                    };
                    let w = urr_poly::Witness { generators: basis.input().to_vec(), cert };
                    b.certificates.push(encode_cert(&format!("basis element {} lies in the ideal", k + 1), i.ring(), &w));
                }
            }
        }
        Task::Member => {
            let i = problem.ideal("I")?;
            let f = problem.poly("f")?;
            let n = i.nvars();
            let res = match &problem.point {
                Some(pt) => member_with(f, i.gens(), &OrderSpec::local_degrevlex(n), Some(pt), &po.limits)?,
                None => member_with(f, i.gens(), &OrderSpec::degrevlex(n), None, &po.limits)?,
            };
            clock.lap("membership");
            b.out("member", Value::Flag { value: res.is_in() });
            b.out("local", Value::Flag { value: problem.point.is_some() });
            if let Membership::In(cert) = res {
                let w = urr_poly::Witness { generators: i.gens().to_vec(), cert };
                b.certificates.push(encode_cert("f lies in I", i.ring(), &w));
            }
        }
        Task::Dim => {
            let i = match problem.ideal("I") {
                Ok(i) => i,
                Err(_) => problem.variety("X")?.ideal().clone(),
            };
            let d = krull_dim(&i)?;
            clock.lap("dimension");
            b.out("dim", Value::Integer { value: d as u64 });
        }
        Task::Smooth => {
            let x = problem.variety("X")?;
            let pt = problem.point_or_err()?;
            if !x.contains_point(pt)? {
                return Err(Error::PointNotOnVariety);
            }
            b.out("smooth", Value::Flag { value: smooth_at(&x, pt)? });
            b.out("jacobian", matrix_value(&jacobian_at(x.gens(), x.nvars(), pt)?));
            b.out("jacobian_rank", Value::Integer { value: jacobian_rank_at(&x, pt)? as u64 });
            let t = tangent_space(&x, pt)?;
            if !t.is_empty() {
                b.out("tangent_space", matrix_value(&Matrix::from_rows(t)));
            }
            clock.lap("jacobian");
        }
        Task::Genpos | Task::Sigma | Task::Lift => {
            let x = problem.variety("X")?;
            let i = problem.ideal("I")?;
            let pt = problem.point_or_err()?;
            let frame = find_frame(&x, &i, pt, po.max_tries, po.seed)?;
            seed_used = Some(po.seed);
            clock.lap("frame");
            frame_outputs(&mut b, &frame);
            if task != Task::Genpos {
                let s = build_sigma(&frame)?;
                clock.lap("sigma");
                b.out("sigma", polys_value(&s.ring, &s.sigma));
                b.out("h", polys_value(&s.ring, &s.h_gens));
                if task == Task::Lift {
                    let l = solve_psi(&s, &po.lift)?;
                    clock.lap("lift");
                    let psi: Vec<(Poly, Poly)> = l.psi.iter().map(|p| (p.num.clone(), p.den.clone())).collect();
                    b.out("psi", fractions_value(ring, &psi));
                    b.out("jets", ints_matrix(&l.per_coord));
                    for (k, c) in l.certs.iter().enumerate() {
                        let w = urr_poly::Witness { generators: s.h_gens.clone(), cert: c.clone() };
                        b.certificates.push(encode_cert(
                            &format!("psi_{} o sigma - pi_{} in H at (x0, 0)", k + 1, k + 1),
                            &s.ring,
                            &w,
                        ));
                    }
                }
            }
        }
        Task::Retract => {
            let x = problem.variety("X")?;
            let y = target_variety(problem, "F")?;
            let f = problem.map("F")?;
            let pt = problem.point_or_err()?;
            let g = localize_map(&x, &y, &f, pt, &po)?;
            clock.lap("pipeline");
            if !g.provenance.short_circuit {
                seed_used = Some(po.seed);
            }
            germ_outputs(&mut b, ring, &g)?;
        }
        Task::Uniformize => {
            let x = problem.variety("X")?;
            let i = problem.map("i")?;
            let r = problem.map("r")?;
            let i0 = if problem.has_map("i0") { Some(problem.map("i0")?) } else { None };
            let pt = problem.point_or_err()?;
            let res = uniformize(&x, &i, &r, i0.as_ref(), pt, &po)?;
            clock.lap("pipeline");
            if !res.g.provenance.short_circuit {
                seed_used = Some(po.seed);
            }
            b.out("F", fractions_value(ring, &res.f.coords));
            germ_outputs(&mut b, ring, &res.g)?;
            b.out("h_V", polys_value(ring, std::slice::from_ref(&res.h_v)));
            b.out("h_U", polys_value(ring, std::slice::from_ref(&res.h_u)));
            b.out("pullback", polys_value(ring, std::slice::from_ref(&res.pullback)));
            let proj = derivative_is_tangent_projection(&x, &res.g)?;
            if !proj {
                return Err(Error::PropertyCheckFailed("DG(x0) is not a projection onto the tangent space".into()));
            }
            b.out("DG_tangent_projection", Value::Flag { value: proj });
            for (j, w) in res.identity.iter().enumerate() {
                b.certificates.push(encode_cert(&format!("G|X = id, coordinate {}", j + 1), ring, w));
            }
        }
        Task::Check => {
            return Err(Error::PreconditionViolated("`check` takes a result bundle, not a problem file".into()))
        }
    }
    let l = &po.limits;
    Ok(ResultBundle {
        version: BUNDLE_VERSION.into(),
        task: task.name().into(),
        outputs: b.outputs,
        certificates: b.certificates,
        metadata: Metadata {
            seed: seed_used,
            limits: BundleLimits {
                max_tries: po.max_tries,
                max_lift_degree: po.lift.max_degree,
                max_jet_order: po.lift.max_jet_order,
                jet_slack: po.lift.slack,
                degree_cap: l.degree_cap,
                max_pairs: l.max_pairs,
                max_basis_size: l.max_basis_size,
                max_reduction_steps: l.max_reduction_steps,
            },
            timings_us: opts.timings.then_some(clock.stages),
        },
    })
}
