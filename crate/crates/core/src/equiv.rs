//! GIT-equivalence of rational vectors.
//!
//! Two vectors are equivalent iff they lie in the same cones of the
//! certificate family: every `C_I` (Euclidean quivers) and every `D(β)` for
//! a real Schur root `β`. On Dynkin quivers the roots are finite. On
//! Euclidean quivers the preprojective and preinjective real Schur roots
//! form finitely many arithmetic families `ρ + k·c·δ`, read off from the
//! identity `Φʰ = Id + uᵀδ`, and the regular ones are the finitely many
//! exceptional regular roots of the tubes. Any quiver can also be handled
//! with a total-dimension bound, in which case verdicts are only bounded.

use std::collections::BTreeSet;
use std::fmt;

use num::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::cone::Cone;
use crate::error::{check_len, Error, Result};
use crate::genhom::DEFAULT_BOX_LIMIT;
use crate::linalg;
use crate::quiver::{Quiver, QuiverType};
use crate::stability::{in_d_cone, is_schur};
use crate::tame::{compute_tubes, maximal_cones, MultiIndex, TubeData};
use crate::vector::{vectors_up_to, DimVector, RatVector, Rational};

/// Largest `h` tried when looking for `Φʰ = Id + uᵀδ`.
pub const MAX_COXETER_PERIOD: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Policy {
    CompleteDynkin,
    PeriodicEuclidean,
    Bound(i64),
}

impl Policy {
    /// `dynkin`, `periodic` or `bound:B`.
    pub fn parse(s: &str) -> Result<Policy> {
        match s.trim() {
            "dynkin" => Ok(Policy::CompleteDynkin),
            "periodic" => Ok(Policy::PeriodicEuclidean),
            other => {
                let b = other
                    .strip_prefix("bound:")
                    .and_then(|b| b.parse::<i64>().ok())
                    .filter(|&b| b >= 0)
                    .ok_or_else(|| Error::Parse(format!("unknown policy {other:?}")))?;
                Ok(Policy::Bound(b))
            }
        }
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Policy::CompleteDynkin => write!(f, "dynkin"),
            Policy::PeriodicEuclidean => write!(f, "periodic"),
            Policy::Bound(b) => write!(f, "bound:{b}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Completeness {
    Proven,
    Bounded(i64),
}

impl fmt::Display for Completeness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Completeness::Proven => write!(f, "proven"),
            Completeness::Bounded(b) => write!(f, "bounded({b})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyKind {
    Preprojective,
    Preinjective,
}

/// The roots `seed + k·step`, `k ≥ 0`, with `step` a positive multiple of
/// `δ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootFamily {
    pub kind: FamilyKind,
    pub seed: DimVector,
    pub step: DimVector,
}

impl RootFamily {
    pub fn member(&self, k: i64) -> DimVector {
        &self.seed + &self.step.scaled(k)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": match self.kind { FamilyKind::Preprojective => "preprojective", FamilyKind::Preinjective => "preinjective" },
            "seed": self.seed.to_json(),
            "step": self.step.to_json(),
        })
    }
}

/// Real Schur roots: an explicit finite list plus arithmetic families.
#[derive(Debug, Clone)]
pub struct RootSystem {
    pub explicit: Vec<DimVector>,
    pub families: Vec<RootFamily>,
    pub completeness: Completeness,
}

impl RootSystem {
    /// Every root with total dimension at most `bound`, sorted by total then
    /// lexicographically.
    pub fn up_to(&self, bound: i64) -> Vec<DimVector> {
        let mut out: BTreeSet<(i64, DimVector)> =
            self.explicit.iter().filter(|b| b.total() <= bound).map(|b| (b.total(), b.clone())).collect();
        for f in &self.families {
            let mut k = 0;
            loop {
                let m = f.member(k);
                if m.total() > bound {
                    break;
                }
                out.insert((m.total(), m));
                k += 1;
            }
        }
        out.into_iter().map(|(_, b)| b).collect()
    }
}

/// Minimal `h ≥ 1` with `Φʰ = Id + uᵀδ`, together with `u`.
pub fn coxeter_period(q: &Quiver, delta: &DimVector) -> Option<(usize, RatVector)> {
    let phi = q.coxeter_matrix();
    let n = q.num_vertices();
    let d = delta.to_rat();
    let pivot = (0..n).find(|&j| !d[j].is_zero())?;
    let mut power = phi.clone();
    for h in 1..=MAX_COXETER_PERIOD {
        let mut u = Vec::with_capacity(n);
        let mut ok = true;
        for (x, row) in power.iter().enumerate() {
            let diff: Vec<Rational> =
                row.iter().enumerate().map(|(y, e)| if x == y { e - Rational::one() } else { e.clone() }).collect();
            let c = &diff[pivot] / &d[pivot];
            if diff.iter().zip(&d.0).any(|(e, dy)| *e != &c * dy) {
                ok = false;
                break;
            }
            u.push(c);
        }
        if ok {
            return Some((h, RatVector(u)));
        }
        power = linalg::mul(&power, phi);
    }
    None
}

fn dynkin_roots(q: &Quiver) -> Vec<DimVector> {
    let n = q.num_vertices();
    let mut seen: BTreeSet<DimVector> = (0..n).map(|x| DimVector::unit(n, x)).collect();
    let mut frontier: Vec<DimVector> = seen.iter().cloned().collect();
    while let Some(b) = frontier.pop() {
        for x in 0..n {
            let c = &b + &DimVector::unit(n, x);
            if q.tits_dim(&c) == 1 && seen.insert(c.clone()) {
                frontier.push(c);
            }
        }
    }
    seen.into_iter().collect()
}

/// Exceptional regular roots: sums of fewer than `r` consecutive
/// quasi-simples in a tube of rank `r`.
pub fn regular_exceptional_roots(t: &TubeData) -> Vec<DimVector> {
    let mut out = BTreeSet::new();
    for tube in &t.tubes {
        let r = tube.len();
        for start in 0..r {
            let mut sum = DimVector::zero(t.delta.len());
            for len in 1..r {
                sum = &sum + &tube[(start + len - 1) % r];
                out.insert(sum.clone());
            }
        }
    }
    out.into_iter().collect()
}

fn euclidean_families(q: &Quiver, delta: &DimVector) -> Result<Vec<RootFamily>> {
    let (h, _) = coxeter_period(q, delta)
        .ok_or_else(|| Error::NotSupported(format!("no Coxeter period up to {MAX_COXETER_PERIOD}")))?;
    let n = q.num_vertices();
    let mut families = Vec::new();
    for (kind, sign) in [(FamilyKind::Preprojective, -1i64), (FamilyKind::Preinjective, 1i64)] {
        for x in 0..n {
            let base = match kind {
                FamilyKind::Preprojective => q.projective_dim(x)?,
                FamilyKind::Preinjective => q.injective_dim(x)?,
            };
            for r in 0..h as i64 {
                let seed = q.tau_dim(&base.to_rat(), sign * r)?;
                let next = q.tau_dim(&seed, sign * h as i64)?;
                let (Some(seed), Some(next)) = (seed.to_dim(), next.to_dim()) else {
                    return Err(Error::Internal(format!("τ-orbit of vertex {x} leaves the positive cone")));
                };
                let step = next
                    .checked_sub(&seed)
                    .filter(|s| !s.is_zero())
                    .ok_or_else(|| Error::Internal(format!("family through {seed} does not grow")))?;
                families.push(RootFamily { kind, seed, step });
            }
        }
    }
    Ok(families)
}

pub fn real_schur_roots(q: &Quiver, policy: Policy) -> Result<RootSystem> {
    let ty = q.classify();
    match (policy, &ty) {
        (Policy::Bound(b), _) => {
            let mut explicit = Vec::new();
            for beta in vectors_up_to(q.num_vertices(), b) {
                if !beta.is_zero() && q.tits_dim(&beta) == 1 && is_schur(q, &beta)? {
                    explicit.push(beta);
                }
            }
            explicit.sort();
            Ok(RootSystem { explicit, families: Vec::new(), completeness: Completeness::Bounded(b) })
        }
        (_, QuiverType::Dynkin) => {
            let mut explicit = Vec::new();
            for beta in dynkin_roots(q) {
                if is_schur(q, &beta)? {
                    explicit.push(beta);
                }
            }
            Ok(RootSystem { explicit, families: Vec::new(), completeness: Completeness::Proven })
        }
        (Policy::PeriodicEuclidean, QuiverType::Euclidean { delta }) => {
            let tubes = compute_tubes(q)?;
            let mut explicit = Vec::new();
            for beta in regular_exceptional_roots(&tubes) {
                if is_schur(q, &beta)? {
                    explicit.push(beta);
                }
            }
            let families = euclidean_families(q, delta)?;
            // Membership in a family is decided on its first member.
            for f in &families {
                let size = f.member(1).box_size();
                if size > DEFAULT_BOX_LIMIT {
                    return Err(Error::BoxTooLarge(size, DEFAULT_BOX_LIMIT));
                }
            }
            for f in &families {
                if !is_schur(q, &f.seed)? {
                    return Err(Error::Internal(format!("family seed {} is not a Schur root", f.seed)));
                }
            }
            Ok(RootSystem { explicit, families, completeness: Completeness::Proven })
        }
        (Policy::CompleteDynkin, _) => Err(Error::NotSupported(format!("{} quiver with the dynkin policy", ty.name()))),
        (Policy::PeriodicEuclidean, _) => {
            Err(Error::NotSupported(format!("{} quiver with the periodic policy", ty.name())))
        }
    }
}

/// Cones `D(β)` of a family that contain `α` for every `k ≥ start`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FamilyTail {
    pub seed: DimVector,
    pub start: DimVector,
}

/// The cones of the certificate family that contain `α`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JSet {
    pub c_indices: BTreeSet<MultiIndex>,
    pub real_schur_members: BTreeSet<DimVector>,
    pub family_tails: BTreeSet<FamilyTail>,
    pub complete: bool,
}

impl JSet {
    pub fn to_json(&self) -> Value {
        json!({
            "c_indices": self.c_indices.iter().map(|i| i.0.clone()).collect::<Vec<_>>(),
            "real_schur_members": self.real_schur_members.iter().map(DimVector::to_json).collect::<Vec<_>>(),
            "family_tails": self.family_tails.iter().map(|t| json!({"seed": t.seed.to_json(), "from": t.start.to_json()})).collect::<Vec<_>>(),
            "complete": self.complete,
        })
    }

    fn same_cones(&self, other: &JSet) -> bool {
        self.c_indices == other.c_indices
            && self.real_schur_members == other.real_schur_members
            && self.family_tails == other.family_tails
    }

    /// A cone containing exactly one of the two vectors.
    fn separating(&self, other: &JSet) -> Option<String> {
        if let Some(b) = self.real_schur_members.symmetric_difference(&other.real_schur_members).next() {
            return Some(format!("D({b})"));
        }
        if let Some(t) = self.family_tails.symmetric_difference(&other.family_tails).next() {
            return Some(format!("D({})", t.start));
        }
        self.c_indices.symmetric_difference(&other.c_indices).next().map(|i| format!("C_{i}"))
    }
}

/// Precomputed data for repeated queries on one quiver.
#[derive(Debug, Clone)]
pub struct EquivContext {
    quiver: Quiver,
    policy: Policy,
    roots: RootSystem,
    cones: Vec<(MultiIndex, Cone)>,
    period: i64,
}

impl EquivContext {
    pub fn new(q: &Quiver, policy: Policy) -> Result<EquivContext> {
        let roots = real_schur_roots(q, policy)?;
        let (cones, period) = match q.classify() {
            QuiverType::Euclidean { delta } => {
                let h = if roots.families.is_empty() { 0 } else { coxeter_period(q, &delta).map_or(0, |(h, _)| h as i64) };
                (maximal_cones(&compute_tubes(q)?)?, h)
            }
            _ => (Vec::new(), 0),
        };
        Ok(EquivContext { quiver: q.clone(), policy, roots, cones, period })
    }

    pub fn policy(&self) -> Policy {
        self.policy
    }

    pub fn roots(&self) -> &RootSystem {
        &self.roots
    }

    pub fn j_set(&self, a: &RatVector) -> Result<JSet> {
        let q = &self.quiver;
        check_len(q.num_vertices(), a.len())?;
        let a = a.primitive();
        let mut out = JSet {
            c_indices: BTreeSet::new(),
            real_schur_members: BTreeSet::new(),
            family_tails: BTreeSet::new(),
            complete: self.roots.completeness == Completeness::Proven,
        };
        for (index, c) in &self.cones {
            if c.contains(&a)? {
                out.c_indices.insert(index.clone());
            }
        }
        for beta in &self.roots.explicit {
            if q.pair_rat_dim(&a, beta).is_zero() && in_d_cone(q, &a, beta)? {
                out.real_schur_members.insert(beta.clone());
            }
        }
        for f in &self.roots.families {
            self.family_hits(f, &a, &mut out)?;
        }
        Ok(out)
    }

    /// `α ∈ D(member k)` for `k ≥ 1`, tested on `member 1` after moving `α`
    /// by `Φ^{±(k−1)h}`.
    fn in_member(&self, f: &RootFamily, a: &RatVector, k: i64) -> Result<bool> {
        let q = &self.quiver;
        let shift = match f.kind {
            FamilyKind::Preprojective => (k - 1) * self.period,
            FamilyKind::Preinjective => -(k - 1) * self.period,
        };
        let moved = if shift == 0 { a.clone() } else { q.tau_dim(a, shift)? };
        in_d_cone(q, &moved, &f.member(1))
    }

    fn family_hits(&self, f: &RootFamily, a: &RatVector, out: &mut JSet) -> Result<()> {
        let q = &self.quiver;
        // ⟨α, seed + k·step⟩ = p + k·s is affine in k.
        let p = q.pair_rat_dim(a, &f.seed);
        let s = q.pair_rat_dim(a, &f.step);
        if s.is_zero() {
            if !p.is_zero() {
                return Ok(());
            }
            if in_d_cone(q, a, &f.seed)? {
                out.real_schur_members.insert(f.seed.clone());
            }
            // s = 0 forces ⟨α, δ⟩ = 0, so Φʰ fixes α and every k ≥ 1 agrees.
            if in_d_cone(q, a, &f.member(1))? {
                out.family_tails.insert(FamilyTail { seed: f.seed.clone(), start: f.member(1) });
            }
            return Ok(());
        }
        let k = -p / s;
        if k.is_negative() || !k.is_integer() {
            return Ok(());
        }
        let k: i64 = k
            .to_integer()
            .try_into()
            .map_err(|_| Error::NotSupported("family index out of range".into()))?;
        let hit = if k == 0 { in_d_cone(q, a, &f.seed)? } else { self.in_member(f, a, k)? };
        if hit {
            out.real_schur_members.insert(f.member(k));
        }
        Ok(())
    }

    pub fn decide(&self, a1: &RatVector, a2: &RatVector) -> Result<EquivVerdict> {
        let j1 = self.j_set(a1)?;
        let j2 = self.j_set(a2)?;
        let completeness = self.roots.completeness;
        let equivalent = j1.same_cones(&j2);
        let witness = if equivalent { None } else { j1.separating(&j2) };
        Ok(EquivVerdict { equivalent, witness, completeness })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivVerdict {
    pub equivalent: bool,
    pub witness: Option<String>,
    pub completeness: Completeness,
}

impl EquivVerdict {
    pub fn to_json(&self) -> Value {
        json!({
            "equivalent": self.equivalent,
            "witness": self.witness,
            "completeness": self.completeness.to_string(),
        })
    }
}

pub fn j_set(q: &Quiver, a: &RatVector, policy: Policy) -> Result<JSet> {
    EquivContext::new(q, policy)?.j_set(a)
}

pub fn decide_equiv(q: &Quiver, a1: &RatVector, a2: &RatVector, policy: Policy) -> Result<EquivVerdict> {
    EquivContext::new(q, policy)?.decide(a1, a2)
}

/// Dimension vectors `0 < |β| ≤ bound` whose semi-stability differs
/// between the weights `wt(α₁)` and `wt(α₂)`.
pub fn semistable_witness_check(q: &Quiver, a1: &RatVector, a2: &RatVector, bound: i64) -> Result<Vec<DimVector>> {
    check_len(q.num_vertices(), a1.len())?;
    check_len(q.num_vertices(), a2.len())?;
    let mut out = Vec::new();
    for b in vectors_up_to(q.num_vertices(), bound) {
        if b.is_zero() {
            continue;
        }
        let z1 = q.pair_rat_dim(a1, &b).is_zero();
        let z2 = q.pair_rat_dim(a2, &b).is_zero();
        if !z1 && !z2 {
            continue;
        }
        let s1 = z1 && in_d_cone(q, a1, &b)?;
        let s2 = z2 && in_d_cone(q, a2, &b)?;
        if s1 != s2 {
            out.push(b);
        }
    }
    Ok(out)
}
