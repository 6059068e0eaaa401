//! Invariant suites run against one loaded quiver.
//!
//! Every group samples with a seeded generator, so a report depends only
//! on the quiver and the seed.

use std::fmt::Write as _;

use num::{BigInt, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::cone::Cone;
use crate::equiv::{EquivContext, Policy};
use crate::error::{Error, Result};
use crate::genhom::{generic_ext, generic_hom, generic_subs};
use crate::quiver::{Quiver, QuiverType};
use crate::stability::{check_dim_stability, d_cone, in_d_cone, is_schur};
use crate::tame::{alpha_i, compute_tubes, maximal_cones, z_filtration_dims, TubeData};
use crate::vector::{rat, vectors_up_to, DimVector, RatVector, Rational};

pub const DEFAULT_SEED: u64 = 2024;

const PAIRS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupReport {
    pub name: &'static str,
    pub status: Status,
    pub checks: usize,
    pub note: Option<String>,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfCheckReport {
    pub quiver_type: QuiverType,
    pub seed: u64,
    pub tube_ranks: Option<Vec<usize>>,
    pub maximal_cones: Option<usize>,
    pub groups: Vec<GroupReport>,
}

impl SelfCheckReport {
    pub fn all_passed(&self) -> bool {
        self.groups.iter().all(|g| g.status != Status::Fail)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "type": self.quiver_type.name(),
            "seed": self.seed,
            "tube_ranks": self.tube_ranks,
            "maximal_cones": self.maximal_cones,
            "groups": self.groups.iter().map(|g| json!({
                "name": g.name,
                "status": g.status.as_str(),
                "checks": g.checks,
                "note": g.note,
                "counterexample": g.counterexample,
            })).collect::<Vec<_>>(),
            "all_passed": self.all_passed(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "type: {}", self.quiver_type.name());
        if let Some(r) = &self.tube_ranks {
            let _ = writeln!(out, "tube ranks: {r:?}");
        }
        if let Some(m) = self.maximal_cones {
            let _ = writeln!(out, "maximal cones: {m}");
        }
        for g in &self.groups {
            let _ = write!(out, "{}: {} ({} checks)", g.name, g.status.as_str(), g.checks);
            if let Some(n) = &g.note {
                let _ = write!(out, " [{n}]");
            }
            if let Some(c) = &g.counterexample {
                let _ = write!(out, " counterexample: {c}");
            }
            out.push('\n');
        }
        let _ = writeln!(out, "overall: {}", if self.all_passed() { "pass" } else { "fail" });
        out
    }
}

/// Checks run, or the first counterexample found.
type Outcome = std::result::Result<usize, String>;

fn group(name: &'static str, run: impl FnOnce() -> Result<Outcome>) -> GroupReport {
    let (status, checks, note, counterexample) = match run() {
        Ok(Ok(n)) => (Status::Pass, n, None, None),
        Ok(Err(c)) => (Status::Fail, 0, None, Some(c)),
        Err(Error::NotSupported(m)) => (Status::Skipped, 0, Some(format!("NotSupported: {m}")), None),
        Err(e @ Error::BoxTooLarge(_, _)) => (Status::Skipped, 0, Some(e.to_string()), None),
        Err(e) => (Status::Fail, 0, None, Some(format!("error: {e}"))),
    };
    GroupReport { name, status, checks, note, counterexample }
}

fn skipped(name: &'static str, note: String) -> GroupReport {
    GroupReport { name, status: Status::Skipped, checks: 0, note: Some(note), counterexample: None }
}

fn ints(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(lo..=hi)).collect()
}

fn dim(rng: &mut ChaCha8Rng, n: usize, hi: i64) -> DimVector {
    DimVector::new(ints(rng, n, 0, hi)).expect("nonnegative")
}

fn rational(rng: &mut ChaCha8Rng, n: usize) -> RatVector {
    RatVector(
        (0..n)
            .map(|_| Rational::new(BigInt::from(rng.gen_range(-3..=3)), BigInt::from(rng.gen_range(1..=3))))
            .collect(),
    )
}

fn euler_group(q: &Quiver, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let n = q.num_vertices();
    let mut checks = 0;
    for _ in 0..PAIRS {
        let a = ints(rng, n, -3, 3);
        let b = ints(rng, n, -3, 3);
        let mut formula: i64 = (0..n).map(|x| a[x] * b[x]).sum();
        for &(t, h, m) in q.arrows() {
            formula -= m * a[t] * b[h];
        }
        if q.euler_int(&a, &b) != formula {
            return Ok(Err(format!("<{a:?},{b:?}>: matrix {} formula {formula}", q.euler_int(&a, &b))));
        }
        let ar = RatVector::from_ints(&a);
        let br = RatVector::from_ints(&b);
        if q.wt(&ar)?.dot(&br) != rat(formula) {
            return Ok(Err(format!("wt({ar})({br}) != <{ar},{br}>")));
        }
        checks += 2;
    }
    for _ in 0..PAIRS {
        let b = dim(rng, n, 3);
        for x in 0..n {
            if q.euler_dim(&q.projective_dim(x)?, &b) != b[x] {
                return Ok(Err(format!("<gamma_{x},{b}> != {}", b[x])));
            }
            checks += 1;
        }
    }
    Ok(Ok(checks))
}

fn coxeter_group(q: &Quiver, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let n = q.num_vertices();
    let mut checks = 0;
    for _ in 0..PAIRS {
        let b = RatVector::from_ints(&ints(rng, n, -3, 3));
        let c = RatVector::from_ints(&ints(rng, n, -3, 3));
        let tb = q.tau_dim(&b, 1)?;
        if q.euler_form(&b, &c)? != -q.euler_form(&c, &tb)? {
            return Ok(Err(format!("<{b},{c}> != -<{c},tau {b}>")));
        }
        if q.tau_dim(&tb, -1)? != b {
            return Ok(Err(format!("tau^-1 tau {b} != {b}")));
        }
        checks += 2;
    }
    Ok(Ok(checks))
}

fn genhom_group(q: &Quiver, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let n = q.num_vertices();
    let mut checks = 0;
    for x in 0..n {
        let e = DimVector::unit(n, x);
        if generic_ext(q, &e, &e)? != 0 {
            return Ok(Err(format!("ext(e_{x}, e_{x}) != 0")));
        }
        checks += 1;
    }
    for _ in 0..PAIRS / 2 {
        let a = dim(rng, n, 2);
        let b = dim(rng, n, 2);
        let hom = generic_hom(q, &a, &b)?;
        if hom < 0 || generic_ext(q, &a, &b)? < 0 {
            return Ok(Err(format!("hom({a},{b}) = {hom}")));
        }
        let subs = generic_subs(q, &b)?;
        if !subs.contains(&DimVector::zero(n)) || !subs.contains(&b) || subs.iter().any(|s| !s.le(&b)) {
            return Ok(Err(format!("subs({b}) is not a subset of [0,{b}] containing both ends")));
        }
        checks += 2;
    }
    Ok(Ok(checks))
}

fn stability_group(q: &Quiver, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let n = q.num_vertices();
    let mut checks = 0;
    for x in 0..n {
        if !is_schur(q, &DimVector::unit(n, x))? {
            return Ok(Err(format!("e_{x} is not Schur")));
        }
        checks += 1;
    }
    for b in vectors_up_to(n, 3).into_iter().filter(|b| !b.is_zero()) {
        let cone = d_cone(q, &b)?;
        for _ in 0..4 {
            let mut a = rational(rng, n);
            // Push half the samples onto the hyperplane ⟨α, β⟩ = 0.
            if rng.gen_bool(0.5) {
                let f: Vec<Rational> = q.euler_matrix().iter().map(|row| rat(row.iter().zip(b.entries()).map(|(e, y)| e * y).sum())).collect();
                if let Some(p) = (0..n).find(|&x| !f[x].is_zero()) {
                    let v = q.pair_rat_dim(&a, &b);
                    a.0[p] -= v / &f[p];
                }
            }
            let direct = in_d_cone(q, &a, &b)?;
            let king = check_dim_stability(q, &q.wt(&a)?, &b)?.semistable;
            let member = cone.contains(&a)?;
            if direct != king || direct != member {
                return Ok(Err(format!("alpha {a}, beta {b}: in_d_cone {direct}, King {king}, cone {member}")));
            }
            checks += 1;
        }
    }
    Ok(Ok(checks))
}

fn cone_group(q: &Quiver) -> Result<Outcome> {
    let n = q.num_vertices();
    let mut checks = 0;
    for b in vectors_up_to(n, 2).into_iter().filter(|b| !b.is_zero()) {
        let c = d_cone(q, &b)?;
        if !Cone::from_generators(c.vcone())?.equal(&c)? {
            return Ok(Err(format!("D({b}): H and V descriptions differ")));
        }
        if Cone::from_json(&c.to_json())? != c {
            return Ok(Err(format!("D({b}): JSON round trip changed the cone")));
        }
        checks += 2;
    }
    Ok(Ok(checks))
}

fn tube_group(q: &Quiver, t: &TubeData) -> Result<Outcome> {
    let mut checks = 0;
    for tube in &t.tubes {
        let sum = tube.iter().fold(DimVector::zero(t.delta.len()), |acc, b| &acc + b);
        if sum != t.delta {
            return Ok(Err(format!("tube sum {sum} != delta {}", t.delta)));
        }
        checks += 1;
    }
    let all: Vec<&DimVector> = t.quasi_simples().collect();
    for b1 in &all {
        let tb1 = q.tau(b1);
        for b2 in &all {
            let expected = if b1 == b2 {
                1
            } else if tb1.as_ref() == Some(*b2) {
                -1
            } else {
                0
            };
            if q.euler_dim(b1, b2) != expected {
                return Ok(Err(format!("<{b1},{b2}> = {} expected {expected}", q.euler_dim(b1, b2))));
            }
            checks += 1;
        }
    }
    Ok(Ok(checks))
}

fn fan_group(q: &Quiver, t: &TubeData, cones: &[(crate::tame::MultiIndex, Cone)]) -> Result<Outcome> {
    let n = q.num_vertices();
    let mut checks = 0;
    for (index, c) in cones {
        if c.dim() != n - 1 {
            return Ok(Err(format!("C_{index} has dimension {}", c.dim())));
        }
        if !c.relint_contains(&alpha_i(t, index)?.to_rat())? {
            return Ok(Err(format!("alpha_{index} is not in the relative interior of C_{index}")));
        }
        checks += 2;
    }
    for (i, (ii, a)) in cones.iter().enumerate() {
        for (ij, b) in &cones[i + 1..] {
            if !a.is_common_face(b)? {
                return Ok(Err(format!("C_{ii} and C_{ij} do not meet in a common face")));
            }
            checks += 1;
        }
    }
    Ok(Ok(checks))
}

fn z_filtration_group(q: &Quiver, t: &TubeData) -> Result<Outcome> {
    let mut checks = 0;
    for index in t.multi_indices() {
        let a = alpha_i(t, &index)?;
        if q.euler_dim(&a, &t.delta) != 0 {
            return Ok(Err(format!("<alpha_{index}, delta> != 0")));
        }
        checks += 1;
        for (i, &ai) in index.0.iter().enumerate() {
            let sums = z_filtration_dims(t, i + 1, ai)?;
            for s in &sums[..sums.len() - 1] {
                if q.euler_dim(&a, s) != -1 {
                    return Ok(Err(format!("<alpha_{index}, {s}> = {}", q.euler_dim(&a, s))));
                }
                checks += 1;
            }
        }
    }
    Ok(Ok(checks))
}

fn equiv_group(q: &Quiver, rng: &mut ChaCha8Rng, tubes: Option<&TubeData>) -> Result<Outcome> {
    let ctx = EquivContext::new(q, Policy::PeriodicEuclidean)?;
    let n = q.num_vertices();
    let mut checks = 0;
    for _ in 0..10 {
        let a = rational(rng, n);
        let lambda = Rational::new(BigInt::from(rng.gen_range(1..=5)), BigInt::from(rng.gen_range(1..=5)));
        if !ctx.decide(&a, &a)?.equivalent || !ctx.decide(&a, &a.scale(&lambda))?.equivalent {
            return Ok(Err(format!("{a} is not equivalent to a positive multiple of itself")));
        }
        checks += 2;
    }
    if let Some(t) = tubes {
        for index in t.multi_indices() {
            let a = alpha_i(t, &index)?.to_rat();
            let b = &a.scale(&rat(2)) + &t.delta.to_rat();
            if !ctx.decide(&a, &b)?.equivalent {
                return Ok(Err(format!("relative interior points of C_{index} are not equivalent")));
            }
            checks += 1;
        }
    }
    Ok(Ok(checks))
}

/// Runs every invariant group on `q`. Tame groups are skipped on
/// quivers that are not Euclidean.
pub fn selfcheck(q: &Quiver, seed: u64) -> SelfCheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ty = q.classify();
    let mut groups = vec![
        group("euler", || euler_group(q, &mut rng)),
        group("coxeter", || coxeter_group(q, &mut rng)),
        group("genhom", || genhom_group(q, &mut rng)),
        group("stability", || stability_group(q, &mut rng)),
        group("cone", || cone_group(q)),
    ];
    let mut tube_ranks = None;
    let mut cone_count = None;
    let tubes = match &ty {
        QuiverType::Euclidean { .. } => match compute_tubes(q) {
            Ok(t) => Some(t),
            Err(e) => {
                groups.push(GroupReport {
                    name: "tubes",
                    status: Status::Fail,
                    checks: 0,
                    note: None,
                    counterexample: Some(format!("error: {e}")),
                });
                None
            }
        },
        _ => None,
    };
    match (&ty, &tubes) {
        (QuiverType::Euclidean { .. }, Some(t)) => {
            tube_ranks = Some(t.ranks());
            groups.push(group("tubes", || tube_group(q, t)));
            match maximal_cones(t) {
                Ok(cones) => {
                    cone_count = Some(cones.len());
                    groups.push(group("fan", || fan_group(q, t, &cones)));
                }
                Err(e) => groups.push(group("fan", || Err(e))),
            }
            groups.push(group("z_filtration", || z_filtration_group(q, t)));
        }
        (QuiverType::Euclidean { .. }, None) => {}
        _ => {
            let note = format!("NotSupported: {} quiver has no tubes", ty.name());
            for name in ["tubes", "fan", "z_filtration"] {
                groups.push(skipped(name, note.clone()));
            }
        }
    }
    groups.push(group("equiv", || equiv_group(q, &mut rng, tubes.as_ref())));
    SelfCheckReport { quiver_type: ty, seed, tube_ranks, maximal_cones: cone_count, groups }
}
