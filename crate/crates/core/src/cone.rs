//! Rational convex polyhedral cones with both halfspace and generator
//! descriptions.
//!
//! A [`Cone`] is built from either description and immediately computes
//! the other one with the double-description method, so every value carries
//! both. Inequalities are read as `n·x ≤ 0`. The generator side is kept as
//! the extreme rays of the pointed part plus a basis of the lineality space.

use std::collections::BTreeSet;

use num::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{check_len, Error, Result};
use crate::linalg;
use crate::lp;
use crate::vector::{rational_from_json, RatVector, Rational};

/// Halfspace description: `e·x = 0` for each equality, `n·x ≤ 0` for each
/// inequality.
#[derive(Debug, Clone, PartialEq)]
pub struct HCone {
    pub ambient: usize,
    pub equalities: Vec<RatVector>,
    pub inequalities: Vec<RatVector>,
}

/// Generator description: the nonnegative rational combinations of the
/// generators.
#[derive(Debug, Clone, PartialEq)]
pub struct VCone {
    pub ambient: usize,
    pub generators: Vec<RatVector>,
}

#[derive(Debug, Clone)]
pub struct Cone {
    ambient: usize,
    equalities: Vec<RatVector>,
    inequalities: Vec<RatVector>,
    rays: Vec<RatVector>,
    lineality: Vec<RatVector>,
}

/// Primitive, with the first nonzero entry positive.
fn line_normal(v: &RatVector) -> RatVector {
    let p = v.primitive();
    match p.0.iter().find(|e| !e.is_zero()) {
        Some(first) if first.is_negative() => p.neg(),
        _ => p,
    }
}

fn dedup(vs: impl IntoIterator<Item = RatVector>) -> Vec<RatVector> {
    vs.into_iter().filter(|v| !v.is_zero()).collect::<BTreeSet<_>>().into_iter().collect()
}

impl Cone {
    pub fn from_halfspaces(h: HCone) -> Result<Cone> {
        for v in h.equalities.iter().chain(&h.inequalities) {
            check_len(h.ambient, v.len())?;
        }
        let equalities = dedup(h.equalities.iter().map(line_normal));
        let inequalities = dedup(h.inequalities.iter().map(RatVector::primitive));
        let (rays, lineality) = halfspaces_to_rays(h.ambient, &equalities, &inequalities);
        Ok(Cone { ambient: h.ambient, equalities, inequalities, rays, lineality })
    }

    pub fn from_generators(v: VCone) -> Result<Cone> {
        for g in &v.generators {
            check_len(v.ambient, g.len())?;
        }
        let gens = dedup(v.generators.iter().map(RatVector::primitive));
        // The polar {n : g·n ≤ 0 ∀g} yields the facet normals and, through its
        // lineality space, the equalities.
        let (dual_rays, dual_lineality) = halfspaces_to_rays(v.ambient, &[], &gens);
        let equalities = dedup(dual_lineality.iter().map(line_normal));
        let inequalities = dual_rays;
        let (rays, lineality) = halfspaces_to_rays(v.ambient, &equalities, &inequalities);
        Ok(Cone { ambient: v.ambient, equalities, inequalities, rays, lineality })
    }

    pub fn zero(ambient: usize) -> Cone {
        Cone::from_generators(VCone { ambient, generators: Vec::new() }).expect("zero cone")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn equalities(&self) -> &[RatVector] {
        &self.equalities
    }

    pub fn inequalities(&self) -> &[RatVector] {
        &self.inequalities
    }

    /// Extreme rays of the pointed part, primitive and sorted.
    pub fn rays(&self) -> &[RatVector] {
        &self.rays
    }

    /// Basis of the lineality space.
    pub fn lineality(&self) -> &[RatVector] {
        &self.lineality
    }

    /// Generators whose nonnegative span is the cone: the rays together
    /// with `±` each lineality basis vector.
    pub fn generators(&self) -> Vec<RatVector> {
        let mut out = self.rays.clone();
        for l in &self.lineality {
            out.push(l.clone());
            out.push(l.neg());
        }
        out
    }

    pub fn hcone(&self) -> HCone {
        HCone { ambient: self.ambient, equalities: self.equalities.clone(), inequalities: self.inequalities.clone() }
    }

    pub fn vcone(&self) -> VCone {
        VCone { ambient: self.ambient, generators: self.generators() }
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn contains(&self, p: &RatVector) -> Result<bool> {
        check_len(self.ambient, p.len())?;
        Ok(self.contains_unchecked(p))
    }

    fn contains_unchecked(&self, p: &RatVector) -> bool {
        self.equalities.iter().all(|e| e.dot(p).is_zero()) && self.inequalities.iter().all(|n| !n.dot(p).is_positive())
    }

    /// Membership decided through the generators alone, by an exact LP.
    pub fn contains_via_generators(&self, p: &RatVector) -> Result<bool> {
        check_len(self.ambient, p.len())?;
        Ok(lp::conic_combination(&self.generators(), p).is_some())
    }

    /// An inequality is implicit when it vanishes on the whole cone.
    fn is_implicit(&self, n: &RatVector) -> bool {
        self.rays.iter().all(|r| n.dot(r).is_zero())
    }

    pub fn relint_contains(&self, p: &RatVector) -> Result<bool> {
        if !self.contains(p)? {
            return Ok(false);
        }
        Ok(self.inequalities.iter().filter(|n| !self.is_implicit(n)).all(|n| n.dot(p).is_negative()))
    }

    /// Sum of the extreme rays; lies in the relative interior.
    pub fn relint_point(&self) -> RatVector {
        self.rays.iter().fold(RatVector::zero(self.ambient), |acc, r| &acc + r)
    }

    pub fn dim(&self) -> usize {
        let rows: Vec<Vec<Rational>> = self.rays.iter().chain(&self.lineality).map(|v| v.0.clone()).collect();
        linalg::rank(&rows)
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        check_len(self.ambient, other.ambient)?;
        Cone::from_halfspaces(HCone {
            ambient: self.ambient,
            equalities: self.equalities.iter().chain(&other.equalities).cloned().collect(),
            inequalities: self.inequalities.iter().chain(&other.inequalities).cloned().collect(),
        })
    }

    pub fn is_subset(&self, other: &Cone) -> Result<bool> {
        check_len(self.ambient, other.ambient)?;
        Ok(self.generators().iter().all(|g| other.contains_unchecked(g)))
    }

    pub fn equal(&self, other: &Cone) -> Result<bool> {
        Ok(self.is_subset(other)? && other.is_subset(self)?)
    }

    /// Smallest face of `self` containing `p` (which must lie in `self`).
    pub fn minimal_face(&self, p: &RatVector) -> Result<Cone> {
        let mut equalities = self.equalities.clone();
        let mut inequalities = Vec::new();
        for n in &self.inequalities {
            if n.dot(p).is_zero() {
                equalities.push(n.clone());
            } else {
                inequalities.push(n.clone());
            }
        }
        Cone::from_halfspaces(HCone { ambient: self.ambient, equalities, inequalities })
    }

    /// True iff `self ∩ other` is a face of both cones.
    pub fn is_common_face(&self, other: &Cone) -> Result<bool> {
        let meet = self.intersect(other)?;
        let p = meet.relint_point();
        for c in [self, other] {
            if !c.minimal_face(&p)?.equal(&meet)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `{"ambient", "equalities", "inequalities", "rays"}`; `rays` lists the
    /// full generating set.
    pub fn to_json(&self) -> Value {
        let list = |vs: &[RatVector]| Value::Array(vs.iter().map(RatVector::to_json).collect());
        json!({
            "ambient": self.ambient,
            "equalities": list(&self.equalities),
            "inequalities": list(&self.inequalities),
            "rays": list(&self.generators()),
        })
    }

    /// Reads the cone JSON format. Halfspaces take precedence; a document
    /// with only `rays` is read as a generator description.
    pub fn from_json(v: &Value) -> Result<Cone> {
        let ambient = v
            .get("ambient")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("missing \"ambient\"".into()))? as usize;
        let vectors = |key: &str| -> Result<Option<Vec<RatVector>>> {
            let Some(arr) = v.get(key) else { return Ok(None) };
            let arr = arr.as_array().ok_or_else(|| Error::Parse(format!("\"{key}\" must be an array")))?;
            arr.iter()
                .map(|row| {
                    let row = row.as_array().ok_or_else(|| Error::Parse(format!("\"{key}\" rows must be arrays")))?;
                    row.iter().map(rational_from_json).collect::<Result<Vec<_>>>().map(RatVector)
                })
                .collect::<Result<Vec<_>>>()
                .map(Some)
        };
        let eqs = vectors("equalities")?;
        let ineqs = vectors("inequalities")?;
        if eqs.is_some() || ineqs.is_some() {
            return Cone::from_halfspaces(HCone {
                ambient,
                equalities: eqs.unwrap_or_default(),
                inequalities: ineqs.unwrap_or_default(),
            });
        }
        Cone::from_generators(VCone { ambient, generators: vectors("rays")?.unwrap_or_default() })
    }
}

impl PartialEq for Cone {
    fn eq(&self, other: &Cone) -> bool {
        self.ambient == other.ambient && self.equal(other).unwrap_or(false)
    }
}

/// Double description: `(extreme rays, lineality basis)` of
/// `{x : e·x = 0, n·x ≤ 0}`.
pub fn halfspaces_to_rays(
    ambient: usize,
    equalities: &[RatVector],
    inequalities: &[RatVector],
) -> (Vec<RatVector>, Vec<RatVector>) {
    let all: Vec<Vec<Rational>> = equalities.iter().chain(inequalities).map(|v| v.0.clone()).collect();
    let lineality: Vec<RatVector> = linalg::nullspace(&all, ambient).into_iter().map(|v| line_normal(&RatVector(v))).collect();

    // Coordinates on W ∩ L⊥ where W is cut out by the equalities.
    let mut restrict: Vec<Vec<Rational>> = equalities.iter().map(|v| v.0.clone()).collect();
    restrict.extend(lineality.iter().map(|v| v.0.clone()));
    let basis = linalg::nullspace(&restrict, ambient);
    let k = basis.len();
    if k == 0 {
        return (Vec::new(), lineality);
    }
    let reduced: Vec<Vec<Rational>> = inequalities
        .iter()
        .map(|n| basis.iter().map(|b| crate::vector::dot(&n.0, b)).collect::<Vec<_>>())
        .filter(|r: &Vec<Rational>| r.iter().any(|e| !e.is_zero()))
        .collect();
    let rays_low = pointed_rays(k, &reduced);
    let rays = dedup(rays_low.into_iter().map(|y| {
        let x: Vec<Rational> = (0..ambient)
            .map(|i| basis.iter().zip(&y).fold(Rational::zero(), |acc, (b, c)| acc + &b[i] * c))
            .collect();
        RatVector(x).primitive()
    }));
    (rays, lineality)
}

/// Extreme rays of the pointed cone `{y ∈ Q^k : a·y ≤ 0}`; the rows must
/// have rank `k`.
fn pointed_rays(k: usize, rows: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    // Greedy choice of k independent rows for the initial simplicial cone.
    let mut chosen: Vec<usize> = Vec::new();
    let mut chosen_rows: Vec<Vec<Rational>> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        chosen_rows.push(r.clone());
        if linalg::rank(&chosen_rows) == chosen_rows.len() {
            chosen.push(i);
            if chosen.len() == k {
                break;
            }
        } else {
            chosen_rows.pop();
        }
    }
    assert_eq!(chosen.len(), k, "inequalities of a pointed cone must have full rank");
    let inv = linalg::inverse(&chosen_rows).expect("independent rows");
    // Columns of −A_K⁻¹.
    let mut rays: Vec<Vec<Rational>> = (0..k).map(|j| (0..k).map(|i| -inv[i][j].clone()).collect()).collect();
    let mut processed: Vec<usize> = chosen.clone();

    for (i, a) in rows.iter().enumerate() {
        if chosen.contains(&i) {
            continue;
        }
        let values: Vec<Rational> = rays.iter().map(|r| crate::vector::dot(a, r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&j| values[j].is_positive()).collect();
        if pos.is_empty() {
            processed.push(i);
            continue;
        }
        let neg: Vec<usize> = (0..rays.len()).filter(|&j| values[j].is_negative()).collect();
        let tight = |r: &Vec<Rational>| -> Vec<usize> {
            processed.iter().copied().filter(|&p| crate::vector::dot(&rows[p], r).is_zero()).collect()
        };
        let tight_sets: Vec<Vec<usize>> = rays.iter().map(tight).collect();
        let mut next: Vec<Vec<Rational>> =
            (0..rays.len()).filter(|&j| !values[j].is_positive()).map(|j| rays[j].clone()).collect();
        for &p in &pos {
            for &q in &neg {
                let common: Vec<Vec<Rational>> = tight_sets[p]
                    .iter()
                    .filter(|t| tight_sets[q].contains(t))
                    .map(|&t| rows[t].clone())
                    .collect();
                if common.len() + 2 < k || linalg::rank(&common) + 2 != k {
                    continue;
                }
                let new: Vec<Rational> =
                    rays[q].iter().zip(&rays[p]).map(|(yq, yp)| &values[p] * yq - &values[q] * yp).collect();
                next.push(new);
            }
        }
        rays = next.into_iter().map(|r| crate::vector::primitive(&r)).collect::<BTreeSet<_>>().into_iter().collect();
        processed.push(i);
    }
    rays
}
