//! One line per acceptance criterion. Exits non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use acgraph::arrangement::{build_mesh, face_metrics, flatten_to_2d, planarize};
use acgraph::charging::{
    charge_sum_check, diagnose_discharged, discharge_six_n, initial_charges, rac_face_conditions,
    six_n_precondition, verify_discharged, Arrangement,
};
use acgraph::constructions::{
    choose_gamma, construct_alpha_ac, frame_cover, project, stacked_grids, t_frame, DEFAULT_MAX_HALVINGS,
};
use acgraph::exact_geom::rational::to_f64;
use acgraph::exact_geom::{
    crossing_angle_at_least, int, rat, rational_cos_bound, AngleSpec, Point2, Point3, Rational,
};
use acgraph::fixtures::{corpus, fixture};
use acgraph::graph_model::{to_json_string, validate, GeometricGraph};
use acgraph::svg::{render_discharge, render_graph, render_planarization, SvgScene};
use acgraph::verify::{bound_table, direction_partition, find_good_rotation, is_alpha_ac, uniform_bound_check, Rotation};
use common::{drawings, right_angle, threshold, Crossings};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BITS: u32 = 64;
const STACKED_TIME_LIMIT: Duration = Duration::from_secs(5);
const PROJECTION_TIME_LIMIT: Duration = Duration::from_secs(60);
/// The discharging instances are certified at this angle.
const SIX_N_ALPHA: &str = "2pi/5 + 1/100";
/// Tolerance when comparing against a floating-point reference value.
const FLOAT_TOL: f64 = 1e-9;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn projected_stacked(r: usize) -> GeometricGraph {
    let g3 = stacked_grids(r);
    let gamma = choose_gamma(&g3, &threshold("pi/2 - 1/10"), DEFAULT_MAX_HALVINGS).unwrap();
    project(&g3, &gamma).unwrap()
}

fn flat(g: &GeometricGraph) -> GeometricGraph {
    flatten_to_2d(g, BITS).unwrap().0
}

// ---------------------------------------------------------------- 1

/// Adjacency by definition: two cube points share an `x` or `y` plane and,
/// in that plane's (height, column) coordinates, differ by ±(0,1), ±(1,1)
/// or ±(1,2).
fn brute_force_stacked_edges(r: i64) -> BTreeSet<((i64, i64, i64), (i64, i64, i64))> {
    let pts: Vec<(i64, i64, i64)> =
        (0..r).flat_map(|x| (0..r).flat_map(move |y| (0..r).map(move |z| (x, y, z)))).collect();
    let step = |dh: i64, dc: i64| matches!((dh, dc), (0, 1) | (1, 1) | (1, 2) | (0, -1) | (-1, -1) | (-1, -2));
    let mut out = BTreeSet::new();
    for (i, &a) in pts.iter().enumerate() {
        for &b in &pts[i + 1..] {
            let in_x_plane = a.0 == b.0 && step(b.2 - a.2, b.1 - a.1);
            let in_y_plane = a.1 == b.1 && step(b.2 - a.2, b.0 - a.0);
            if in_x_plane || in_y_plane {
                out.insert((a, b));
            }
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let mut notes = Vec::new();
    for r in [3usize, 4, 6] {
        let start = Instant::now();
        let g = stacked_grids(r);
        let elapsed = start.elapsed();
        let ri = r as i64;
        let formula = 2 * ri * (3 * ri * ri - 6 * ri + 3);
        let pts = g.points3();
        let as_int = |p: &Point3| (p.x.to_integer().try_into().unwrap(), p.y.to_integer().try_into().unwrap(), p.z.to_integer().try_into().unwrap());
        let built: BTreeSet<_> = g
            .edges
            .iter()
            .map(|&(a, b)| {
                let (p, q) = (as_int(&pts[a]), as_int(&pts[b]));
                (p.min(q), p.max(q))
            })
            .collect();
        let oracle = brute_force_stacked_edges(ri);
        check(g.n() == r * r * r, format!("r={r}: n = {}", g.n()))?;
        check(g.m() as i64 == formula, format!("r={r}: m = {} vs {formula}", g.m()))?;
        check(built.len() == g.m() && built == oracle, format!("r={r}: edge set differs from enumeration"))?;
        check(validate(&g).is_empty(), format!("r={r}: invalid drawing"))?;
        if r == 6 {
            check(elapsed < STACKED_TIME_LIMIT, format!("r=6 took {elapsed:?}"))?;
        }
        notes.push(format!("r={r}: n={} m={} density {:.3}", g.n(), g.m(), g.m() as f64 / g.n() as f64));
    }
    Ok(notes.join("; "))
}

// ---------------------------------------------------------------- 2

fn sign_of_cross(o: &(Rational, Rational), a: &(Rational, Rational), b: &(Rational, Rational)) -> i32 {
    let v = (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0);
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

/// All-pairs reference scan. Crossings are decided on the `(x, y)` shadow
/// of the plane (an affine bijection since the normal has `z = 1`); angles
/// use the true 3D directions.
fn reference_scan(g: &GeometricGraph, cos2_bound: &Rational) -> (usize, usize, Rational) {
    let pts = g.points3();
    let xy: Vec<(Rational, Rational)> = pts.iter().map(|p| (p.x.clone(), p.y.clone())).collect();
    let bbox: Vec<_> = g
        .edges
        .iter()
        .map(|&(a, b)| {
            let (p, q) = (&xy[a], &xy[b]);
            (p.0.clone().min(q.0.clone()), p.0.clone().max(q.0.clone()), p.1.clone().min(q.1.clone()), p.1.clone().max(q.1.clone()))
        })
        .collect();
    let dirs: Vec<Point3> = g.edges.iter().map(|&(a, b)| pts[b].sub(&pts[a])).collect();
    let dot = |u: &Point3, v: &Point3| &u.x * &v.x + &u.y * &v.y + &u.z * &v.z;
    let (mut crossings, mut failures) = (0usize, 0usize);
    let mut worst = Rational::zero();
    for e in 0..g.m() {
        for f in e + 1..g.m() {
            let (be, bf) = (&bbox[e], &bbox[f]);
            if be.1 <= bf.0 || bf.1 <= be.0 || be.3 <= bf.2 || bf.3 <= be.2 {
                continue;
            }
            let (a, b) = (&xy[g.edges[e].0], &xy[g.edges[e].1]);
            let (c, d) = (&xy[g.edges[f].0], &xy[g.edges[f].1]);
            let (o1, o2) = (sign_of_cross(a, b, c), sign_of_cross(a, b, d));
            let (o3, o4) = (sign_of_cross(c, d, a), sign_of_cross(c, d, b));
            if o1 * o2 >= 0 || o3 * o4 >= 0 {
                continue;
            }
            crossings += 1;
            let k = dot(&dirs[e], &dirs[f]);
            let cos2 = &k * &k / (dot(&dirs[e], &dirs[e]) * dot(&dirs[f], &dirs[f]));
            if cos2 > *cos2_bound {
                failures += 1;
            }
            worst = worst.max(cos2);
        }
    }
    (crossings, failures, worst)
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let g3 = stacked_grids(6);
    let th = threshold("pi/2 - 1/10");
    let gamma = choose_gamma(&g3, &th, DEFAULT_MAX_HALVINGS).map_err(|e| e.to_string())?;
    let g = project(&g3, &gamma).map_err(|e| e.to_string())?;
    let cert = is_alpha_ac(&g, &th).map_err(|e| e.to_string())?;
    let pairs = g.m() * (g.m() - 1) / 2;
    let (crossings, failures, worst) = reference_scan(&g, &th.cos2());
    let elapsed = start.elapsed();
    check(cert.verdict, "library verifier rejects")?;
    check(failures == 0, format!("reference scan finds {failures} sharp crossings"))?;
    check(crossings == cert.pair_count, format!("crossing counts differ: {crossings} vs {}", cert.pair_count))?;
    let limit = (std::f64::consts::FRAC_PI_2 - 0.1).cos().powi(2);
    check(to_f64(&worst) <= limit + FLOAT_TOL, "sharpest crossing exceeds the float reference")?;
    check(elapsed < PROJECTION_TIME_LIMIT, format!("took {elapsed:?}"))?;
    Ok(format!(
        "gamma={gamma}, {pairs} pairs scanned, {crossings} crossings, max cos^2 {:.5} <= {limit:.5}, {:.1}s",
        to_f64(&worst),
        elapsed.as_secs_f64()
    ))
}

// ---------------------------------------------------------------- 3

fn criterion_3() -> Outcome {
    let mut notes = Vec::new();
    for (t, delta) in [(3usize, rat(1, 5)), (4, rat(1, 10)), (6, rat(1, 20))] {
        let frame = t_frame(t, &delta).map_err(|e| e.to_string())?;
        check(frame.directions.len() == t, format!("t={t}: {} directions", frame.directions.len()))?;
        let angle = AngleSpec::pi_over(t as i64).minus(&delta);
        let th = rational_cos_bound(&angle, BITS).map_err(|e| e.to_string())?;
        let float_min = std::f64::consts::PI / t as f64 - to_f64(&delta);
        for (i, &(a, b)) in frame.directions.iter().enumerate() {
            for &(c, d) in &frame.directions[i + 1..] {
                let (u, v) = (Point2::from_ints(a, b), Point2::from_ints(c, d));
                check(crossing_angle_at_least(&u, &v, &th).unwrap(), format!("t={t}: ({a},{b}) vs ({c},{d})"))?;
                let acute = {
                    let x = ((a * c + b * d) as f64 / ((a * a + b * b) as f64 * (c * c + d * d) as f64).sqrt()).abs();
                    x.min(1.0).acos()
                };
                check(acute >= float_min - FLOAT_TOL, format!("t={t}: float angle {acute}"))?;
            }
        }
        let cap = (2.0 * 2f64.sqrt() * std::f64::consts::PI / to_f64(&delta)).ceil() as i64 + 1;
        let max_coord = frame.directions.iter().map(|&(a, b)| a.abs().max(b.abs())).max().unwrap();
        check(max_coord <= cap && frame.q == max_coord, format!("t={t}: q={} cap={cap}", frame.q))?;
        let r = 6 * frame.q as usize;
        let arr = frame_cover(t, &delta, r).map_err(|e| e.to_string())?;
        // every line has integer base and direction, so incidence is an
        // exact integer test
        let as_i64 = |r: &Rational| -> i64 { r.to_integer().try_into().unwrap() };
        let lines: Vec<[i64; 4]> = arr
            .lines
            .iter()
            .map(|l| {
                assert!(l.base.x.is_integer() && l.base.y.is_integer() && l.dir.x.is_integer() && l.dir.y.is_integer());
                [as_i64(&l.base.x), as_i64(&l.base.y), as_i64(&l.dir.x), as_i64(&l.dir.y)]
            })
            .collect();
        let mut least = usize::MAX;
        for i in 0..r as i64 {
            for j in 0..r as i64 {
                let on = lines.iter().filter(|[bx, by, dx, dy]| (i - bx) * dy - (j - by) * dx == 0).count();
                least = least.min(on);
            }
        }
        check(least >= t, format!("t={t}: a grid point lies on {least} lines"))?;
        notes.push(format!("t={t}: q={} (cap {cap}), r={r}, {} lines, min incidence {least}", frame.q, arr.lines.len()));
    }
    Ok(notes.join("; "))
}

// ---------------------------------------------------------------- 4

/// Edges of a `p`-column, `k`-row grid graph, by counting each step type.
fn grid_edge_count(p: usize, k: usize) -> usize {
    let (p, k) = (p as i64, k as i64);
    let row = (p - 1).max(0) * k;
    let diag = (p - 1).max(0) * (k - 1).max(0);
    let long = (p - 2).max(0) * (k - 1).max(0);
    (row + diag + long) as usize
}

fn criterion_4() -> Outcome {
    let eps = rat(1, 5);
    let r = 4;
    let mut notes = Vec::new();
    let mut failures = Vec::new();
    for t in [2usize, 3] {
        let (g, cert) = construct_alpha_ac(t, &eps, r, BITS, DEFAULT_MAX_HALVINGS).map_err(|e| e.to_string())?;
        let th = rational_cos_bound(&AngleSpec::pi_over(t as i64).minus(&eps), BITS).unwrap();
        let verdict = is_alpha_ac(&g, &th).map_err(|e| e.to_string())?.verdict;
        let arr = frame_cover(t, &(&eps / int(2)), r).map_err(|e| e.to_string())?;
        let expected: usize = arr
            .lines
            .iter()
            .map(|l| {
                let p = (0..r as i64)
                    .flat_map(|i| (0..r as i64).map(move |j| Point2::from_ints(i, j)))
                    .filter(|p| p.sub(&l.base).cross(&l.dir).is_zero())
                    .count();
                grid_edge_count(p, r)
            })
            .sum();
        let density = g.m() as f64 / g.n() as f64;
        let target = 3 * t - 3;
        notes.push(format!(
            "t={t}: n={} m={} (enumerated {expected}) m/n={}/{}={density:.3} target {target}, slack {:.3}",
            g.n(),
            g.m(),
            g.m(),
            g.n(),
            target as f64 - density
        ));
        if !(verdict && cert.verdict) {
            failures.push(format!("t={t}: not certified"));
        }
        if g.m() != expected {
            failures.push(format!("t={t}: m={} but enumeration gives {expected}", g.m()));
        }
        if g.m() < target * g.n() {
            failures.push(format!("t={t}: m/n {density:.3} < {target}"));
        }
    }
    if failures.is_empty() {
        Ok(notes.join("; "))
    } else {
        Err(format!("{} [{}]", failures.join("; "), notes.join("; ")))
    }
}

// ---------------------------------------------------------------- 5

fn generated_constructions() -> Vec<(String, GeometricGraph)> {
    let mut out: Vec<(String, GeometricGraph)> =
        [3, 4, 6].iter().map(|&r| (format!("stacked r={r}"), projected_stacked(r))).collect();
    for t in [2, 3] {
        let (g, _) = construct_alpha_ac(t, &rat(1, 5), 4, BITS, DEFAULT_MAX_HALVINGS).unwrap();
        out.push((format!("full t={t} r=4"), g));
    }
    out
}

/// `Σ ch(f) = 4n − 8` on connected input. A drawing with `c` components is
/// meshed per component, each contributing its own `4n_i − 8`.
fn identity_holds(name: &str, g: &GeometricGraph) -> Result<usize, String> {
    let arr = Arrangement::of(g).map_err(|e| format!("{name}: {e}"))?;
    let c = arr.components;
    let expected = int(4 * g.n() as i64 - 8 * c as i64);
    let independent: Rational =
        arr.metrics.iter().map(|f| int(f.walk_length as i64 + f.original_vertex_steps as i64 - 4)).sum();
    check(independent == expected, format!("{name}: sum {independent} vs {expected} with {c} components"))?;
    if c == 1 {
        let report = charge_sum_check(&initial_charges(&arr.metrics), &arr);
        check(report.holds == Some(true), format!("{name}: library identity {:?} ({:?})", report.holds, report.note))?;
    }
    Ok(c)
}

fn criterion_5() -> Outcome {
    let mut count = 0;
    let mut split = Vec::new();
    for (name, g) in corpus() {
        check(identity_holds(name, &g)? == 1, format!("{name} is disconnected"))?;
        count += 1;
    }
    for (i, g) in drawings(500, 25, (3, 12), &Crossings::Simple).iter().enumerate() {
        check(identity_holds(&format!("random #{i}"), g)? == 1, format!("random #{i} is disconnected"))?;
        count += 1;
    }
    for (name, g) in generated_constructions() {
        let c = identity_holds(&name, &flat(&g))?;
        if c > 1 {
            split.push(format!("{name} has {c} components, sum = 4n - 8c exactly"));
        }
        count += 1;
    }
    let mut line = format!(
        "{count} drawings (6 fixtures, 25 random, 5 constructions); sum ch(f) = 4n - 8 exactly on all {} connected ones",
        count - split.len()
    );
    if !split.is_empty() {
        line.push_str(&format!("; {}", split.join("; ")));
    }
    Ok(line)
}

// ---------------------------------------------------------------- 6

fn criterion_6() -> Outcome {
    let k4 = fixture("k4").unwrap();
    let arr = Arrangement::of(&k4).unwrap();
    let rac = rac_face_conditions(&arr).map_err(|e| e.to_string())?;
    let thin: Vec<_> = face_metrics(&arr.mesh)
        .into_iter()
        .filter(|f| f.walk_length == 3 && f.original_vertex_steps < 2)
        .collect();
    check(thin.is_empty() && rac.three_face_violations.is_empty(), "K4 has a 3-face with v < 2")?;
    check(k4.m() as i64 == 4 * k4.n() as i64 - 10, "K4 is not at 4n - 10")?;
    check(rac.derived_bound == Some(k4.m() as i64), format!("K4 derived bound {:?}", rac.derived_bound))?;
    let rule = right_angle();
    let graphs = drawings(900, 10, (4, 11), &Crossings::AtLeast(&rule));
    let mut densest = 0.0f64;
    for (i, g) in graphs.iter().enumerate() {
        check(is_alpha_ac(g, &rule).unwrap().verdict, format!("random #{i} is not RAC"))?;
        check((g.m() as i64) <= 4 * g.n() as i64 - 10, format!("random #{i}: m={} n={}", g.m(), g.n()))?;
        let rep = rac_face_conditions(&Arrangement::of(g).unwrap()).map_err(|e| format!("random #{i}: {e}"))?;
        check(rep.holds, format!("random #{i}: face conditions fail"))?;
        densest = densest.max(g.m() as f64 / (4 * g.n() - 10) as f64);
    }
    Ok(format!("K4: m = 6 = 4n - 10, no thin 3-face; 10 random RAC drawings, max m/(4n-10) = {densest:.3}"))
}

// ---------------------------------------------------------------- 7

fn six_n_instances() -> Vec<(String, GeometricGraph)> {
    let mut out: Vec<(String, GeometricGraph)> =
        ["triangle", "x", "k4", "ladder"].iter().map(|n| (n.to_string(), fixture(n).unwrap())).collect();
    let th = threshold(SIX_N_ALPHA);
    for (i, g) in drawings(700, 3, (6, 10), &Crossings::AtLeast(&th)).into_iter().enumerate() {
        out.push((format!("random #{i}"), g));
    }
    out.push(("stacked r=3".into(), flat(&projected_stacked(3))));
    out.push(("stacked r=4".into(), flat(&projected_stacked(4))));
    let (g, _) = construct_alpha_ac(2, &rat(1, 10), 4, BITS, DEFAULT_MAX_HALVINGS).unwrap();
    out.push(("full t=2 r=4".into(), flat(&g)));
    out
}

fn discharge_instance(name: &str, g: &GeometricGraph, alpha: &AngleSpec) -> Result<(), String> {
    let err = |e: &dyn std::fmt::Display| format!("{name}: {e}");
    let arr = Arrangement::of(g).map_err(|e| err(&e))?;
    let ledger = discharge_six_n(&arr).map_err(|e| err(&e))?;
    let report = verify_discharged(&arr, &ledger, alpha, BITS).map_err(|e| err(&e))?;
    check(report.holds, format!("{name}: library report fails"))?;
    let initial: Rational = initial_charges(&arr.metrics).total();
    check(ledger.total() == initial && initial == int(4 * g.n() as i64 - 8), format!("{name}: charge not conserved"))?;
    let mut leaving = vec![0usize; arr.metrics.len()];
    for t in &ledger.transfers {
        let h = 2 * t.exit_arc;
        let ends = [arr.mesh.origin[h], arr.mesh.dest(h)];
        check(ends.iter().all(|&v| !arr.mesh.nodes[v].is_original()), format!("{name}: exit arc at a vertex"))?;
        leaving[t.from_face] += 1;
    }
    for f in &arr.metrics {
        let v = f.original_vertex_steps;
        check(ledger.charges[f.face].clone() * int(3) >= int(v as i64), format!("{name}: face {} below v/3", f.face))?;
        let cap = if v == 0 { f.walk_length } else { f.walk_length.saturating_sub(v + 1) };
        check(leaving[f.face] <= cap, format!("{name}: face {} leaks {} > {cap}", f.face, leaving[f.face]))?;
    }
    check(g.m() as i64 <= 6 * g.n() as i64 - 12 || g.n() < 3, format!("{name}: m > 6n - 12"))
}

fn criterion_7() -> Outcome {
    let alpha: AngleSpec = SIX_N_ALPHA.parse().unwrap();
    let instances = six_n_instances();
    for (name, g) in &instances {
        discharge_instance(name, g, &alpha)?;
    }
    let star = fixture("pentagram").unwrap();
    let arr = Arrangement::of(&star).unwrap();
    check(six_n_precondition(&arr, &alpha, BITS).is_err(), "pentagram passes the precondition")?;
    let ledger = discharge_six_n(&arr).map_err(|e| e.to_string())?;
    let diag = diagnose_discharged(&arr, &ledger);
    let pentagon = arr
        .metrics
        .iter()
        .find(|f| f.walk_length == 5 && f.original_vertex_steps == 0)
        .ok_or("pentagram has no 0-pentagon")?;
    check(ledger.charges[pentagon.face] == rat(-2, 3), format!("0-pentagon ends at {}", ledger.charges[pentagon.face]))?;
    check(!diag.holds, "diagnostic run reports no violation")?;
    Ok(format!(
        "{} instances discharged and verified at {SIX_N_ALPHA}; pentagram rejected, 0-pentagon ends at -2/3",
        instances.len()
    ))
}

// ---------------------------------------------------------------- 8

fn certified_angle(g: &GeometricGraph) -> Option<AngleSpec> {
    ["pi/2", SIX_N_ALPHA, "pi/3", "pi/5"].iter().find_map(|a| {
        let spec: AngleSpec = a.parse().unwrap();
        let th = rational_cos_bound(&spec, BITS).unwrap();
        is_alpha_ac(g, &th).unwrap().verdict.then_some(spec)
    })
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut checked = 0;
    for (name, g) in corpus() {
        let alpha = certified_angle(&g).ok_or(format!("{name}: no certified angle"))?;
        let segs: Vec<_> = (0..g.m()).map(|e| g.segment2(e).unwrap()).collect();
        for _ in 0..20 {
            let rot = Rotation::from_tan_half(&rat(rng.gen_range(-1000..=1000), 997));
            let part = direction_partition(&g, &alpha, &rot).map_err(|e| format!("{name}: {e}"))?;
            let mut all: Vec<usize> = part.buckets.concat();
            all.sort_unstable();
            check(all == (0..g.m()).collect::<Vec<_>>(), format!("{name}: buckets do not partition the edges"))?;
            for b in &part.buckets {
                for (i, &e) in b.iter().enumerate() {
                    for &f in &b[i + 1..] {
                        let crosses = acgraph::exact_geom::properly_cross(&segs[e], &segs[f]).unwrap();
                        check(!crosses, format!("{name}: edges {e} and {f} cross in one bucket"))?;
                    }
                }
            }
        }
        let best = find_good_rotation(&g, &alpha).map_err(|e| format!("{name}: {e}"))?;
        let a = to_f64(&alpha.interval(64).mid());
        let pi = std::f64::consts::PI;
        let float_cap = ((pi % a) / pi * g.m() as f64 + FLOAT_TOL).floor() as usize;
        check(best.last_bucket_size <= float_cap, format!("{name}: last bucket {}", best.last_bucket_size))?;
        let u = uniform_bound_check(&g, &alpha, BITS).map_err(|e| format!("{name}: {e}"))?;
        check(u.holds && u.last_bucket_ok, format!("{name}: uniform bound check fails"))?;
        check((u.last_bucket_cap as usize) <= float_cap, format!("{name}: certified cap above float cap"))?;
        checked += 1;
    }
    Ok(format!("{checked} fixtures x 20 rotations crossing-free; good rotation and uniform bound certified"))
}

// ---------------------------------------------------------------- 9

fn artifacts() -> Vec<String> {
    let scene = SvgScene::default();
    let mut out = Vec::new();
    let (g, cert) = construct_alpha_ac(2, &rat(1, 5), 4, BITS, DEFAULT_MAX_HALVINGS).unwrap();
    out.push(to_json_string(&g));
    out.push(serde_json::to_string(&cert).unwrap());
    out.push(render_graph(&g, &scene));
    for name in ["x", "k4", "ladder", "wedge"] {
        let f = fixture(name).unwrap();
        let p = planarize(&f).unwrap();
        let mesh = build_mesh(&p).unwrap();
        out.push(serde_json::to_string(&face_metrics(&mesh)).unwrap());
        out.push(render_planarization(&p, &scene));
        let arr = Arrangement::of(&f).unwrap();
        let ledger = discharge_six_n(&arr).unwrap();
        out.push(serde_json::to_string(&diagnose_discharged(&arr, &ledger)).unwrap());
        out.push(serde_json::to_string(&ledger).unwrap());
        out.push(render_discharge(&arr, &ledger, &scene));
        out.push(serde_json::to_string(&is_alpha_ac(&f, &right_angle()).unwrap()).unwrap());
    }
    let table = bound_table(&"2pi/5 + 1/100".parse().unwrap(), 100).unwrap();
    out.push(serde_json::to_string(&table).unwrap());
    out.push(table.to_markdown());
    out
}

fn criterion_9() -> Outcome {
    let runs: Vec<Vec<String>> = (0..3).map(|_| artifacts()).collect();
    check(runs[0] == runs[1] && runs[1] == runs[2], "outputs differ between runs")?;
    let bytes: usize = runs[0].iter().map(String::len).sum();
    Ok(format!("{} artifacts ({bytes} bytes) identical across 3 runs", runs[0].len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("construction counts", criterion_1),
        ("projection certification", criterion_2),
        ("t-frame properties", criterion_3),
        ("construction pipeline", criterion_4),
        ("charge identity", criterion_5),
        ("right-angle checks", criterion_6),
        ("discharging", criterion_7),
        ("direction partition", criterion_8),
        ("determinism", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({secs:.1}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({secs:.1}s): {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
