//! One function per subcommand, each producing a [`RunReport`].

use std::error::Error;
use std::path::Path;

use acgraph::arrangement::{build_mesh, euler_check, face_metrics, flatten_to_2d, planarize, FlattenReport};
use acgraph::charging::{
    charge_sum_check, diagnose_discharged, discharge_six_n, initial_charges, rac_face_conditions,
    six_n_precondition, Arrangement,
};
use acgraph::constructions::{
    construct_alpha_ac, frame_cover, grid_graph, lattice_lines, lemma_convert_build, project,
    stacked_grids, LatticeKind, DEFAULT_MAX_HALVINGS,
};
use acgraph::exact_geom::{format_rational, parse_rational, rational_cos_bound, AngleSpec, Rational};
use acgraph::graph_model::{from_json_str, stats, to_json_string, Embedding, GeometricGraph};
use acgraph::svg::{emit_svg, render_discharge, render_graph, render_planarization, SvgScene};
use acgraph::verify::{bound_table, is_alpha_ac, uniform_bound_check};
use serde_json::{json, Value};

use crate::report::{emit, sha256_hex, Clock, RunReport, Status};
use crate::{
    BoundsArgs, ChargeArgs, Cli, Command, Construction, DischargeArgs, GenerateArgs, PlanarizeArgs,
    StatsArgs, SvgArgs, SvgMode, VerifyArgs,
};

type CmdResult = Result<Status, Box<dyn Error>>;

pub fn run(cli: &Cli) -> CmdResult {
    let clock = Clock::start(cli.timing);
    match &cli.command {
        Command::Generate(a) => generate(cli, a, &clock),
        Command::Verify(a) => verify(cli, a, &clock),
        Command::Planarize(a) => planarize_cmd(cli, a, &clock),
        Command::Charge(a) => charge(cli, a, &clock),
        Command::Discharge(a) => discharge(cli, a, &clock),
        Command::Bounds(a) => bounds(a, &clock),
        Command::Svg(a) => svg(cli, a, &clock),
        Command::Stats(a) => stats_cmd(a, &clock),
    }
}

fn rational(text: &str) -> Result<Rational, Box<dyn Error>> {
    Ok(parse_rational(text.trim()).map_err(|e| format!("bad rational `{text}`: {e}"))?)
}

fn angle(text: &str) -> Result<AngleSpec, Box<dyn Error>> {
    Ok(text.parse::<AngleSpec>()?)
}

/// Graph plus the hash of the bytes it was read from.
fn load_input(path: &Path) -> Result<(GeometricGraph, String), Box<dyn Error>> {
    let bytes = std::fs::read(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let text = String::from_utf8(bytes.clone())?;
    Ok((from_json_str(&text)?, sha256_hex(&bytes)))
}

/// 2D input unchanged; coplanar 3D input carried into the plane.
fn planar_input(g: GeometricGraph, bits: u32) -> Result<(GeometricGraph, Option<FlattenReport>), Box<dyn Error>> {
    if g.points2().is_some() {
        return Ok((g, None));
    }
    let (flat, report) = flatten_to_2d(&g, bits)?;
    Ok((flat, Some(report)))
}

fn finish(mut report: RunReport, clock: &Clock, out: Option<&Path>, status: Status) -> CmdResult {
    clock.stamp(&mut report);
    emit(&report.to_json(), out)?;
    Ok(status)
}

fn generate(cli: &Cli, a: &GenerateArgs, clock: &Clock) -> CmdResult {
    let k = a.k.unwrap_or(a.r);
    let need_t = || a.t.ok_or("--t is required for this construction");
    let need_eps = || -> Result<Rational, Box<dyn Error>> {
        rational(a.eps.as_deref().ok_or("--eps is required for this construction")?)
    };
    let mut report = RunReport::new("generate").param("construction", format!("{:?}", a.construction).to_lowercase());
    report = report.param("r", a.r).param("k", k).param("bits", cli.bits);
    let mut certificate = Value::Null;
    let mut g = match a.construction {
        Construction::Grid => grid_graph(a.r, k),
        Construction::Stacked => stacked_grids(a.r),
        Construction::Lattice => {
            let kind: LatticeKind = a.lattice.parse()?;
            report = report.param("lattice", &a.lattice);
            let arr = lattice_lines(kind, a.r, cli.bits)?;
            lemma_convert_build(&arr, arr.t, k)?
        }
        Construction::Frame => {
            let (t, eps) = (need_t()?, need_eps()?);
            report = report.param("t", t).param("eps", format_rational(&eps));
            let arr = frame_cover(t, &(eps / Rational::from_integer(2.into())), a.r)?;
            lemma_convert_build(&arr, t, k)?
        }
        Construction::Full => {
            let (t, eps) = (need_t()?, need_eps()?);
            report = report.param("t", t).param("eps", format_rational(&eps));
            let (g, cert) = construct_alpha_ac(t, &eps, a.r, cli.bits, DEFAULT_MAX_HALVINGS)?;
            certificate = serde_json::to_value(&cert)?;
            g
        }
    };
    if let Some(text) = &a.gamma {
        let gamma = rational(text)?;
        report = report.param("gamma", format_rational(&gamma));
        let unprojected = matches!(&g.embedding, Embedding::Spatial { plane_normal: None, .. });
        if !unprojected {
            return Err("--gamma applies only to spatial constructions that are not yet projected".into());
        }
        g = project(&g, &gamma)?;
    }
    if let Some(path) = &a.svg {
        emit_svg(&render_graph(&g, &SvgScene::default()), path)?;
    }
    let Some(out) = &a.out else {
        print!("{}", to_json_string(&g));
        return Ok(Status::Pass);
    };
    std::fs::write(out, to_json_string(&g))?;
    report = report.count("n", g.n()).count("m", g.m());
    report.verdict = certificate.get("verdict").and_then(Value::as_bool);
    report.result = json!({ "dim": g.dim(), "certificate": certificate });
    let status = report.verdict.map_or(Status::Pass, Status::from_verdict);
    finish(report, clock, None, status)
}

fn verify(cli: &Cli, a: &VerifyArgs, clock: &Clock) -> CmdResult {
    let (g, hash) = load_input(&a.input)?;
    let mut target = angle(&a.alpha)?;
    let mut report = RunReport::new("verify").param("alpha", &a.alpha).param("bits", cli.bits);
    if let Some(eps) = &a.eps {
        target = target.minus(&rational(eps)?);
        report = report.param("eps", eps);
    }
    report = report.param("threshold", &target);
    report.input_sha256 = Some(hash);
    let threshold = rational_cos_bound(&target, cli.bits)?;
    let cert = is_alpha_ac(&g, &threshold)?;
    let mut verdict = cert.verdict;
    let mut result = json!({ "certificate": cert });
    if a.uniform {
        let u = uniform_bound_check(&g, &target, cli.bits)?;
        verdict &= u.holds;
        result["uniform"] = serde_json::to_value(&u)?;
    }
    report = report.count("n", g.n()).count("m", g.m()).count("crossing_pairs", cert.pair_count);
    report.verdict = Some(verdict);
    report.result = result;
    finish(report, clock, a.out.as_deref(), Status::from_verdict(verdict))
}

fn planarize_cmd(cli: &Cli, a: &PlanarizeArgs, clock: &Clock) -> CmdResult {
    let (g, hash) = load_input(&a.input)?;
    let (g, flat) = planar_input(g, cli.bits)?;
    let p = planarize(&g)?;
    let mesh = build_mesh(&p)?;
    let euler = euler_check(&mesh);
    let faces: Vec<Value> = face_metrics(&mesh)
        .iter()
        .map(|f| json!({ "face": f.face, "len": f.walk_length, "v": f.original_vertex_steps, "shape": f.shape_label, "outer": f.is_outer }))
        .collect();
    if let Some(path) = &a.svg {
        emit_svg(&render_planarization(&p, &SvgScene::default()), path)?;
    }
    let mut report = RunReport::new("planarize").param("bits", cli.bits);
    report.input_sha256 = Some(hash);
    report = report
        .count("n", g.n())
        .count("m", g.m())
        .count("nodes", p.nodes.len())
        .count("arcs", p.arcs.len())
        .count("faces", mesh.face_count())
        .count("crossings", p.crossing_count())
        .count("multi_crossings", p.multi_crossings.len());
    report.verdict = Some(euler.holds);
    report.result = json!({ "faces": faces, "euler": euler, "flatten": flat });
    finish(report, clock, a.out.as_deref(), Status::from_verdict(euler.holds))
}

fn charge(cli: &Cli, a: &ChargeArgs, clock: &Clock) -> CmdResult {
    let (g, hash) = load_input(&a.input)?;
    let (g, flat) = planar_input(g, cli.bits)?;
    let arr = Arrangement::of(&g)?;
    let ledger = initial_charges(&arr.metrics);
    let sum = charge_sum_check(&ledger, &arr);
    let mut result = json!({ "identity": sum, "ledger": ledger, "flatten": flat });
    let mut status = match sum.holds {
        Some(v) => Status::from_verdict(v),
        None => Status::Abstain,
    };
    if a.rac {
        let rac = rac_face_conditions(&arr)?;
        if status == Status::Pass && !rac.holds {
            status = Status::Violation;
        }
        result["rac"] = serde_json::to_value(&rac)?;
    }
    let mut report = RunReport::new("charge").param("bits", cli.bits).param("rac", a.rac);
    report.input_sha256 = Some(hash);
    report = report.count("n", arr.n()).count("m", arr.m()).count("faces", arr.metrics.len());
    report.verdict = match status {
        Status::Pass => Some(true),
        Status::Violation => Some(false),
        Status::Abstain => None,
    };
    report.result = result;
    finish(report, clock, a.out.as_deref(), status)
}

fn discharge(cli: &Cli, a: &DischargeArgs, clock: &Clock) -> CmdResult {
    let (g, hash) = load_input(&a.input)?;
    let (g, flat) = planar_input(g, cli.bits)?;
    let arr = Arrangement::of(&g)?;
    let alpha = angle(&a.alpha)?;
    let cert = if a.diagnostic { None } else { Some(six_n_precondition(&arr, &alpha, cli.bits)?) };
    let ledger = discharge_six_n(&arr)?;
    let mut outcome = diagnose_discharged(&arr, &ledger);
    if let Some(c) = cert {
        outcome.diagnostic = false;
        outcome.precondition = Some(c);
    }
    if let Some(path) = &a.svg {
        emit_svg(&render_discharge(&arr, &ledger, &SvgScene::default()), path)?;
    }
    let mut ledger_json = serde_json::to_value(&ledger)?;
    if !a.trace {
        for t in ledger_json["transfers"].as_array_mut().expect("transfers array") {
            t.as_object_mut().expect("transfer object").remove("walk_trace");
        }
    }
    let mut report = RunReport::new("discharge")
        .param("alpha", &a.alpha)
        .param("bits", cli.bits)
        .param("diagnostic", a.diagnostic)
        .param("trace", a.trace);
    report.input_sha256 = Some(hash);
    report = report.count("n", arr.n()).count("m", arr.m()).count("transfers", ledger.transfers.len());
    report.verdict = Some(outcome.holds);
    let status = Status::from_verdict(outcome.holds);
    report.result = json!({ "report": outcome, "ledger": ledger_json, "flatten": flat });
    finish(report, clock, a.out.as_deref(), status)
}

fn bounds(a: &BoundsArgs, clock: &Clock) -> CmdResult {
    let alpha = angle(&a.alpha)?;
    let table = bound_table(&alpha, a.n)?;
    if a.markdown {
        emit(&table.to_markdown(), a.out.as_deref())?;
        return Ok(Status::Pass);
    }
    let mut report = RunReport::new("bounds").param("alpha", &a.alpha).param("n", a.n);
    report = report.count("rows", table.rows.len());
    report.result = serde_json::to_value(&table)?;
    finish(report, clock, a.out.as_deref(), Status::Pass)
}

fn svg(cli: &Cli, a: &SvgArgs, clock: &Clock) -> CmdResult {
    let (g, hash) = load_input(&a.input)?;
    let scene = SvgScene::default();
    let (text, mode) = match a.mode {
        SvgMode::Graph => (render_graph(&g, &scene), "graph"),
        SvgMode::Planarization => {
            let (g, _) = planar_input(g, cli.bits)?;
            (render_planarization(&planarize(&g)?, &scene), "planarization")
        }
        SvgMode::Discharge => {
            let (g, _) = planar_input(g, cli.bits)?;
            let arr = Arrangement::of(&g)?;
            let ledger = discharge_six_n(&arr)?;
            (render_discharge(&arr, &ledger, &scene), "discharge")
        }
    };
    emit_svg(&text, &a.out)?;
    let mut report = RunReport::new("svg").param("mode", mode).param("out", a.out.display());
    report.input_sha256 = Some(hash);
    report = report.count("bytes", text.len());
    finish(report, clock, None, Status::Pass)
}

fn stats_cmd(a: &StatsArgs, clock: &Clock) -> CmdResult {
    let (g, hash) = load_input(&a.input)?;
    let s = stats(&g)?;
    let mut report = RunReport::new("stats");
    report.input_sha256 = Some(hash);
    report = report.count("n", s.n).count("m", s.m).count("crossings", s.crossing_count);
    report.result = json!({ "dim": g.dim(), "connected": g.is_connected(), "stats": s });
    finish(report, clock, a.out.as_deref(), Status::Pass)
}
