//! King's criterion on dimension vectors and the cones `D(β)`.
//!
//! Weights `θ` act on dimension vectors by the dot product. A vector `α`
//! enters through the weight `wt(α)`, so `wt(α)(β) = ⟨α, β⟩`, and
//! `α ∈ D(β)` exactly when `β` is `wt(α)`-semi-stable.

use num::{Signed, Zero};
use serde_json::{json, Value};

use crate::cone::{Cone, HCone, VCone};
use crate::error::{check_len, Result};
use crate::genhom::{dot_u32, subs_shared};
use crate::lp;
use crate::quiver::Quiver;
use crate::vector::{rat, vectors_up_to, DimVector, RatVector, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityVerdict {
    pub semistable: bool,
    pub stable: bool,
    /// When `semistable` is false: a subdimension vector with `θ > 0`, or
    /// `β` itself if `θ(β) ≠ 0`. Otherwise, when `stable` is false: a proper
    /// nonzero subdimension vector with `θ = 0` (or `0` for `β = 0`).
    pub violating_subdim: Option<DimVector>,
}

impl StabilityVerdict {
    pub fn to_json(&self) -> Value {
        json!({
            "semistable": self.semistable,
            "stable": self.stable,
            "violating_subdim": self.violating_subdim.as_ref().map(DimVector::to_json),
        })
    }
}

fn eval(theta: &RatVector, b: &DimVector) -> Rational {
    b.entries()
        .iter()
        .zip(&theta.0)
        .filter(|(&bx, _)| bx != 0)
        .fold(Rational::zero(), |acc, (&bx, t)| acc + t * rat(bx))
}

/// King's criterion over the generic subdimension vectors of `β`.
pub fn check_dim_stability(q: &Quiver, theta: &RatVector, b: &DimVector) -> Result<StabilityVerdict> {
    check_len(q.num_vertices(), theta.len())?;
    check_len(q.num_vertices(), b.len())?;
    if !eval(theta, b).is_zero() {
        return Ok(StabilityVerdict { semistable: false, stable: false, violating_subdim: Some(b.clone()) });
    }
    if b.is_zero() {
        return Ok(StabilityVerdict { semistable: true, stable: false, violating_subdim: Some(b.clone()) });
    }
    let subs = subs_shared(q, b)?.to_dims();
    let mut tight = None;
    for s in subs.iter().filter(|s| !s.is_zero() && *s != b) {
        let v = eval(theta, s);
        if v.is_positive() {
            return Ok(StabilityVerdict { semistable: false, stable: false, violating_subdim: Some(s.clone()) });
        }
        if v.is_zero() && tight.is_none() {
            tight = Some(s.clone());
        }
    }
    Ok(StabilityVerdict { semistable: true, stable: tight.is_none(), violating_subdim: tight })
}

/// Clears denominators of `α`; positive scaling leaves every sign test
/// unchanged.
fn integral(a: &RatVector) -> Option<Vec<i64>> {
    a.primitive().to_ints()
}

/// `α ∈ D(β)`, i.e. `β` is `wt(α)`-semi-stable.
pub fn in_d_cone(q: &Quiver, a: &RatVector, b: &DimVector) -> Result<bool> {
    check_len(q.num_vertices(), a.len())?;
    check_len(q.num_vertices(), b.len())?;
    if let Some(ai) = integral(a) {
        if q.euler_int(&ai, b.entries()) != 0 {
            return Ok(false);
        }
        if b.is_zero() {
            return Ok(true);
        }
        // ⟨α, s⟩ = (α·E)·s
        let theta: Vec<i64> = (0..ai.len())
            .map(|y| (0..ai.len()).map(|x| ai[x] * q.euler_matrix()[x][y]).sum())
            .collect();
        return Ok(subs_shared(q, b)?.iter().all(|s| dot_u32(s, &theta) <= 0));
    }
    Ok(check_dim_stability(q, &q.wt(a)?, b)?.semistable)
}

/// The functional `α ↦ ⟨α, β⟩` as a vector, `E·βᵀ`.
pub fn pairing_functional(q: &Quiver, b: &DimVector) -> RatVector {
    let e = q.euler_matrix();
    RatVector(e.iter().map(|row| rat(row.iter().zip(b.entries()).map(|(x, y)| x * y).sum())).collect())
}

fn proper_subs(q: &Quiver, b: &DimVector) -> Result<Vec<DimVector>> {
    Ok(subs_shared(q, b)?.to_dims().into_iter().filter(|s| !s.is_zero() && s != b).collect())
}

/// `D(β) = {α : ⟨α, β⟩ = 0, ⟨α, β′⟩ ≤ 0 for all β′ ↪ β}`.
pub fn d_cone(q: &Quiver, b: &DimVector) -> Result<Cone> {
    Cone::from_halfspaces(d_halfspaces(q, b)?)
}

pub fn d_halfspaces(q: &Quiver, b: &DimVector) -> Result<HCone> {
    check_len(q.num_vertices(), b.len())?;
    let inequalities = proper_subs(q, b)?.iter().map(|s| pairing_functional(q, s)).collect();
    Ok(HCone { ambient: q.num_vertices(), equalities: vec![pairing_functional(q, b)], inequalities })
}

/// A point of `D⁰(β)` if the strict system is feasible.
pub fn schur_witness(q: &Quiver, b: &DimVector) -> Result<Option<RatVector>> {
    check_len(q.num_vertices(), b.len())?;
    if b.is_zero() {
        return Ok(None);
    }
    let strict: Vec<RatVector> = proper_subs(q, b)?.iter().map(|s| pairing_functional(q, s)).collect();
    Ok(lp::strictly_feasible(&[pairing_functional(q, b)], &strict, q.num_vertices()).map(|w| w.primitive()))
}

/// `β` is a Schur root iff `D⁰(β)` is nonempty.
pub fn is_schur(q: &Quiver, b: &DimVector) -> Result<bool> {
    Ok(schur_witness(q, b)?.is_some())
}

/// `α` is `−⟨·, β⟩`-stable.
pub fn is_beta_simple(q: &Quiver, a: &DimVector, b: &DimVector) -> Result<bool> {
    check_len(q.num_vertices(), a.len())?;
    if a.is_zero() || q.euler_dim(a, b) != 0 {
        return Ok(false);
    }
    let theta = pairing_functional(q, b).neg();
    Ok(check_dim_stability(q, &theta, a)?.stable)
}

#[derive(Debug, Clone)]
pub struct GeneratorSearch {
    pub generators: VCone,
    /// The generated cone is strictly smaller than `D(β)`.
    pub bound_too_small: bool,
}

/// `β`-simple vectors with `|α| ≤ bound`, together with `−γ_x` for each
/// vertex outside the support of `β`.
pub fn d_cone_generators(q: &Quiver, b: &DimVector, bound: i64) -> Result<GeneratorSearch> {
    check_len(q.num_vertices(), b.len())?;
    let n = q.num_vertices();
    let mut generators = Vec::new();
    for a in vectors_up_to(n, bound) {
        if !a.is_zero() && q.euler_dim(&a, b) == 0 && is_beta_simple(q, &a, b)? {
            generators.push(a.to_rat());
        }
    }
    for x in 0..n {
        if b[x] == 0 {
            generators.push(q.projective_dim(x)?.to_rat().neg());
        }
    }
    let generators = VCone { ambient: n, generators };
    let generated = Cone::from_generators(generators.clone())?;
    let bound_too_small = !generated.equal(&d_cone(q, b)?)?;
    Ok(GeneratorSearch { generators, bound_too_small })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::examples::*;

    fn d(v: &[i64]) -> DimVector {
        DimVector::new(v.to_vec()).unwrap()
    }

    fn rv(v: &[i64]) -> RatVector {
        RatVector::from_ints(v)
    }

    #[test]
    fn king_examples() {
        let k = kronecker(2);
        let theta = rv(&[1, -1]);
        let v = check_dim_stability(&k, &theta, &d(&[1, 1])).unwrap();
        assert!(v.semistable && v.stable && v.violating_subdim.is_none());
        let v = check_dim_stability(&k, &theta, &d(&[2, 2])).unwrap();
        assert!(v.semistable && !v.stable);
        assert_eq!(v.violating_subdim, Some(d(&[1, 1])));
        let v = check_dim_stability(&k, &rv(&[0, 0]), &d(&[1, 2])).unwrap();
        assert!(v.semistable && !v.stable && v.violating_subdim.is_some());
        let v = check_dim_stability(&k, &rv(&[-1, 1]), &d(&[1, 1])).unwrap();
        assert!(!v.semistable);
        assert_eq!(v.violating_subdim, Some(d(&[0, 1])));
    }

    #[test]
    fn d_cones_on_kronecker() {
        let k = kronecker(2);
        let dd = d_cone(&k, &d(&[1, 1])).unwrap();
        assert_eq!(dd.rays(), &[rv(&[1, 1])]);
        assert!(dd.is_pointed());
        let d21 = d_cone(&k, &d(&[2, 1])).unwrap();
        assert_eq!(d21.rays(), &[rv(&[1, 0])]);
        assert!(d21.contains(&rv(&[0, 0])).unwrap());
        assert!(in_d_cone(&k, &RatVector::parse("1/2,1/2").unwrap(), &d(&[1, 1])).unwrap());
        assert!(!in_d_cone(&k, &rv(&[1, 0]), &d(&[1, 1])).unwrap());
    }

    #[test]
    fn schur_roots() {
        let k = kronecker(2);
        for b in [[1, 1], [2, 1], [1, 2], [1, 0], [0, 1]] {
            assert!(is_schur(&k, &d(&b)).unwrap(), "{b:?}");
        }
        assert!(!is_schur(&k, &d(&[2, 2])).unwrap());
        assert!(!is_schur(&k, &d(&[3, 3])).unwrap());
        let w = schur_witness(&k, &d(&[1, 1])).unwrap().unwrap();
        assert!(dd_relint(&k, &w));
    }

    fn dd_relint(k: &Quiver, w: &RatVector) -> bool {
        d_cone(k, &d(&[1, 1])).unwrap().relint_contains(w).unwrap()
    }

    #[test]
    fn beta_simple() {
        let k = kronecker(2);
        assert!(is_beta_simple(&k, &d(&[1, 1]), &d(&[1, 1])).unwrap());
        assert!(!is_beta_simple(&k, &d(&[0, 1]), &d(&[1, 1])).unwrap());
        assert!(is_beta_simple(&k, &d(&[0, 1]), &d(&[1, 0])).unwrap());
        assert!(!is_beta_simple(&k, &d(&[0, 0]), &d(&[1, 1])).unwrap());
    }

    #[test]
    fn generators_match_halfspaces() {
        let k = kronecker(2);
        let g = d_cone_generators(&k, &d(&[1, 1]), 4).unwrap();
        assert_eq!(g.generators.generators, vec![rv(&[1, 1])]);
        assert!(!g.bound_too_small);
        let a2 = a_n(2);
        let g = d_cone_generators(&a2, &d(&[1, 0]), 4).unwrap();
        assert!(g.generators.generators.contains(&rv(&[0, -1])));
        assert!(!g.bound_too_small);
        let g = d_cone_generators(&k, &d(&[1, 1]), 0).unwrap();
        assert!(g.bound_too_small);
    }
}
