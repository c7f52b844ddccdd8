//! Moving 1/3 into every 1-triangle along its apex bisector, and checking
//! that every face ends with at least a third of its original-vertex count.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{
    initial_charges, is_zero_quadrilateral, one_triangles, third, Arrangement, ChargeLedger,
    ChargingError, OneTriangle, TransferRecord,
};
use crate::arrangement::{FaceMetrics, HalfEdgeMesh};
use crate::exact_geom::rational::serde_rational;
use crate::exact_geom::{rational_cos_bound, AngleSpec, Dot, Point2, Rational};
use crate::verify::{is_alpha_ac, ACCertificate, VerifyError};

/// Side of points relative to the bisector line through the apex, decided
/// exactly: with `d1`, `d2` the wedge directions, the bisector direction is
/// `d1/|d1| + d2/|d2|`, so the side of `p` is the sign of
/// `A/√a + B/√b` with `A = d1 × (p − x)`, `a = |d1|²` and likewise for `B`, `b`.
struct Bisector {
    apex: Point2,
    d1: Point2,
    d2: Point2,
    a: Rational,
    b: Rational,
}

impl Bisector {
    fn new(mesh: &HalfEdgeMesh, tri: &OneTriangle) -> Self {
        let d1 = mesh.vector(tri.first);
        let d2 = mesh.vector(HalfEdgeMesh::twin(tri.last));
        Bisector { apex: mesh.point(tri.apex).clone(), a: d1.norm2(), b: d2.norm2(), d1, d2 }
    }

    fn side(&self, p: &Point2) -> Ordering {
        let w = p.sub(&self.apex);
        let big_a = self.d1.cross(&w);
        let big_b = self.d2.cross(&w);
        let sa = big_a.cmp(&Rational::zero());
        let sb = big_b.cmp(&Rational::zero());
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (s, t) if s == t => s,
            _ => {
                let lhs = &big_a * &big_a * &self.b;
                let rhs = &big_b * &big_b * &self.a;
                match lhs.cmp(&rhs) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }
}

/// Walk from the 1-triangle along the bisector of its wedge, through
/// 0-quadrilaterals, to the first other face; that face pays 1/3.
pub fn bisector_walk(
    mesh: &HalfEdgeMesh,
    metrics: &[FaceMetrics],
    tri: &OneTriangle,
) -> Result<TransferRecord, ChargingError> {
    let ray = Bisector::new(mesh, tri);
    let side_of = |node: usize| -> Result<Ordering, ChargingError> {
        match ray.side(mesh.point(node)) {
            Ordering::Equal => Err(ChargingError::RayThroughNode { face: tri.face, node }),
            s => Ok(s),
        }
    };
    let straddles = |h: usize| -> Result<bool, ChargingError> {
        Ok(side_of(mesh.origin[h])? != side_of(mesh.dest(h))?)
    };
    if !straddles(tri.opposite)? {
        return Err(ChargingError::MalformedTriangle {
            face: tri.face,
            reason: "bisector misses the opposite side".into(),
        });
    }
    let mut trace = vec![tri.face];
    let mut exit = tri.opposite;
    loop {
        let next = mesh.face_of[HalfEdgeMesh::twin(exit)];
        trace.push(next);
        if !is_zero_quadrilateral(&metrics[next]) {
            return Ok(TransferRecord {
                from_face: next,
                to_face: tri.face,
                exit_arc: HalfEdgeMesh::arc_of(exit),
                amount: third(),
                walk_trace: trace,
            });
        }
        if trace.len() > mesh.face_count() + 1 {
            return Err(ChargingError::WalkStuck { face: tri.face, stuck: next });
        }
        let entry = HalfEdgeMesh::twin(exit);
        let mut found = None;
        for h in mesh.face_walk(next) {
            if h != entry && straddles(h)? {
                if found.is_some() {
                    return Err(ChargingError::WalkStuck { face: tri.face, stuck: next });
                }
                found = Some(h);
            }
        }
        exit = found.ok_or(ChargingError::WalkStuck { face: tri.face, stuck: next })?;
    }
}

/// Initial charges followed by one bisector transfer per 1-triangle.
pub fn discharge_six_n(arr: &Arrangement) -> Result<ChargeLedger, ChargingError> {
    arr.require_connected()?;
    if !arr.planarization.is_simple() {
        return Err(ChargingError::Precondition(format!(
            "{} crossing points where three or more edges meet",
            arr.planarization.multi_crossings.len()
        )));
    }
    let mut ledger = initial_charges(&arr.metrics);
    for tri in one_triangles(&arr.mesh, &arr.metrics)? {
        ledger.apply(bisector_walk(&arr.mesh, &arr.metrics, &tri)?);
    }
    Ok(ledger)
}

/// Certify `α > 2π/5` and that the input is αAC.
pub fn six_n_precondition(
    arr: &Arrangement,
    alpha: &AngleSpec,
    bits: u32,
) -> Result<ACCertificate, ChargingError> {
    let floor = AngleSpec::pi_over(5).times(&Rational::from_integer(2.into()));
    if alpha.cmp_certified(&floor, 1024) != Some(Ordering::Greater) {
        return Err(ChargingError::Precondition(format!("alpha = {alpha} is not certified above 2pi/5")));
    }
    let threshold = rational_cos_bound(alpha, bits).map_err(VerifyError::from)?;
    let cert = is_alpha_ac(&arr.planarization.source, &threshold)?;
    if !cert.verdict {
        let detail = cert
            .witness
            .as_ref()
            .map(|w| format!(" (edges {} and {} cross too sharply)", w.e1, w.e2))
            .unwrap_or_default();
        return Err(ChargingError::Precondition(format!("input is not certified {alpha}AC{detail}")));
    }
    Ok(cert)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceOutcome {
    pub face: usize,
    pub walk_length: usize,
    pub v: usize,
    pub shape_label: String,
    #[serde(with = "serde_rational")]
    pub initial: Rational,
    #[serde(with = "serde_rational")]
    pub final_charge: Rational,
    /// Transfers paid by this face.
    pub leaked: usize,
    /// `|f|` if `v(f) = 0`, else `|f| − v(f) − 1`.
    pub leak_bound: i64,
    pub leak_ok: bool,
    /// `ch′(f) ≥ v(f)/3`.
    pub meets_v_third: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObservationCheck {
    pub id: u8,
    pub statement: String,
    pub holds: bool,
    pub counterexamples: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DischargeReport {
    pub n: usize,
    pub m: usize,
    pub diagnostic: bool,
    pub precondition: Option<ACCertificate>,
    #[serde(with = "serde_rational")]
    pub total_initial: Rational,
    #[serde(with = "serde_rational")]
    pub total_final: Rational,
    pub conserved: bool,
    pub identity_holds: bool,
    pub transfers: usize,
    pub faces: Vec<FaceOutcome>,
    pub below_v_third: Vec<usize>,
    pub leak_violations: Vec<usize>,
    /// Transfers whose exit arc touches an original vertex.
    pub exit_arc_violations: Vec<usize>,
    /// `(face, arc)` pairs used by more than one transfer.
    pub repeated_exits: Vec<(usize, usize)>,
    /// Transfers whose trace does not run 1-triangle, 0-quadrilaterals, other.
    pub trace_violations: Vec<usize>,
    pub observations: Vec<ObservationCheck>,
    pub edge_bound: i64,
    /// The bound follows from the face inequalities.
    pub bound_derived: bool,
    pub edge_bound_holds: bool,
    pub holds: bool,
}

/// Check a discharged ledger after certifying the precondition.
pub fn verify_discharged(
    arr: &Arrangement,
    ledger: &ChargeLedger,
    alpha: &AngleSpec,
    bits: u32,
) -> Result<DischargeReport, ChargingError> {
    let cert = six_n_precondition(arr, alpha, bits)?;
    let mut report = diagnose_discharged(arr, ledger);
    report.diagnostic = false;
    report.precondition = Some(cert);
    Ok(report)
}

/// The same checks with no precondition, for exploring inputs the argument
/// does not cover.
pub fn diagnose_discharged(arr: &Arrangement, ledger: &ChargeLedger) -> DischargeReport {
    let mesh = &arr.mesh;
    let metrics = &arr.metrics;
    let (n, m) = (arr.n(), arr.m());
    let initial = initial_charges(metrics);
    let leaks = ledger.leak_counts();
    let faces: Vec<FaceOutcome> = metrics
        .iter()
        .map(|f| {
            let (len, v) = (f.walk_length as i64, f.original_vertex_steps as i64);
            let leak_bound = if v == 0 { len } else { len - v - 1 };
            let fin = ledger.charges[f.face].clone();
            FaceOutcome {
                face: f.face,
                walk_length: f.walk_length,
                v: f.original_vertex_steps,
                shape_label: f.shape_label.clone(),
                initial: initial.charges[f.face].clone(),
                meets_v_third: fin * Rational::from_integer(3.into()) >= Rational::from_integer(v.into()),
                final_charge: ledger.charges[f.face].clone(),
                leaked: leaks[f.face],
                leak_bound,
                leak_ok: leaks[f.face] as i64 <= leak_bound.max(0),
            }
        })
        .collect();
    let below_v_third = faces.iter().filter(|f| !f.meets_v_third).map(|f| f.face).collect::<Vec<_>>();
    let leak_violations = faces.iter().filter(|f| !f.leak_ok).map(|f| f.face).collect::<Vec<_>>();
    let exit_arc_violations = ledger
        .transfers
        .iter()
        .enumerate()
        .filter(|(_, t)| {
            let h = 2 * t.exit_arc;
            mesh.nodes[mesh.origin[h]].is_original() || mesh.nodes[mesh.dest(h)].is_original()
        })
        .map(|(i, _)| i)
        .collect::<Vec<_>>();
    let mut uses: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for t in &ledger.transfers {
        *uses.entry((t.from_face, t.exit_arc)).or_default() += 1;
    }
    let repeated_exits = uses.into_iter().filter(|(_, c)| *c > 1).map(|(k, _)| k).collect::<Vec<_>>();
    let is_one_triangle = |f: usize| metrics[f].walk_length == 3 && metrics[f].original_vertex_steps == 1;
    let trace_violations = ledger
        .transfers
        .iter()
        .enumerate()
        .filter(|(_, t)| {
            let tr = &t.walk_trace;
            tr.len() < 2
                || tr[0] != t.to_face
                || *tr.last().unwrap() != t.from_face
                || !is_one_triangle(t.to_face)
                || !tr[1..tr.len() - 1].iter().all(|&f| is_zero_quadrilateral(&metrics[f]))
                || is_zero_quadrilateral(&metrics[t.from_face])
                || t.amount != third()
        })
        .map(|(i, _)| i)
        .collect::<Vec<_>>();
    let observations = observations(&faces, metrics);
    let total_initial = initial.total();
    let total_final = ledger.total();
    let expected = Rational::from_integer((4 * n as i64 - 8).into());
    let identity_holds = total_initial == expected;
    let conserved = total_final == total_initial;
    let v_sum: usize = metrics.iter().map(|f| f.original_vertex_steps).sum();
    let edge_bound = 6 * n as i64 - 12;
    // Σ ch′ ≥ Σ v/3 = 2|E|/3 and Σ ch′ = 4n − 8
    let bound_derived = below_v_third.is_empty() && conserved && identity_holds && v_sum == 2 * m;
    let edge_bound_holds = m as i64 <= edge_bound;
    let holds = bound_derived
        && edge_bound_holds
        && leak_violations.is_empty()
        && exit_arc_violations.is_empty()
        && repeated_exits.is_empty()
        && trace_violations.is_empty()
        && observations.iter().all(|o| o.holds);
    DischargeReport {
        n,
        m,
        diagnostic: true,
        precondition: None,
        total_initial,
        total_final,
        conserved,
        identity_holds,
        transfers: ledger.transfers.len(),
        faces,
        below_v_third,
        leak_violations,
        exit_arc_violations,
        repeated_exits,
        trace_violations,
        observations,
        edge_bound,
        bound_derived,
        edge_bound_holds,
        holds,
    }
}

fn observations(faces: &[FaceOutcome], metrics: &[FaceMetrics]) -> Vec<ObservationCheck> {
    let check = |id: u8, statement: &str, bad: &dyn Fn(&FaceOutcome) -> bool| {
        let counterexamples: Vec<usize> = faces.iter().filter(|f| bad(f)).map(|f| f.face).collect();
        ObservationCheck { id, statement: statement.into(), holds: counterexamples.is_empty(), counterexamples }
    };
    let zero_quad = |f: &FaceOutcome| is_zero_quadrilateral(&metrics[f.face]);
    vec![
        check(1, "|f| >= 6 implies leaked charge <= |f|/3", &|f| f.walk_length >= 6 && f.leaked > f.walk_length),
        check(2, "|f| = 5 implies v(f) >= 1", &|f| f.walk_length == 5 && f.v == 0),
        check(3, "0-quadrilaterals leak nothing", &|f| zero_quad(f) && f.leaked > 0),
        check(4, "1-triangles end at 1/3", &|f| f.walk_length == 3 && f.v == 1 && f.final_charge != third()),
        check(5, "|f| = 3 implies v(f) >= 1", &|f| f.walk_length == 3 && f.v == 0),
    ]
}
