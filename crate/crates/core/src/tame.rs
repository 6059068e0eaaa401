//! Tubes of a Euclidean quiver and the maximal cones `C_I` of the fan on
//! `D(δ)`.
//!
//! Quasi-simple roots are the real roots `0 < β < δ` with `⟨δ, β⟩ = 0`
//! that are `wt(δ)`-stable. They fall into `τ`-orbits, one per
//! non-homogeneous tube. Each tube is listed as `[β₁, …, β_r]` with
//! `β_{j+1} = τβ_j`, starting at its lexicographically smallest root, and
//! tubes are sorted by that root.

use std::collections::BTreeSet;
use std::fmt;

use serde_json::{json, Value};

use crate::cone::{Cone, VCone};
use crate::error::{Error, Result};
use crate::quiver::Quiver;
use crate::stability::{check_dim_stability, in_d_cone};
use crate::vector::{DimVector, RatVector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TubeData {
    pub delta: DimVector,
    pub tubes: Vec<Vec<DimVector>>,
}

/// One entry `1 ≤ a_i ≤ r_i` per non-homogeneous tube.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<usize>);

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl TubeData {
    pub fn ranks(&self) -> Vec<usize> {
        self.tubes.iter().map(Vec::len).collect()
    }

    pub fn quasi_simples(&self) -> impl Iterator<Item = &DimVector> {
        self.tubes.iter().flatten()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "delta": self.delta.to_json(),
            "tubes": self.tubes.iter().map(|t| t.iter().map(DimVector::to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "ranks": self.ranks(),
        })
    }

    pub fn check_index(&self, index: &MultiIndex) -> Result<()> {
        if index.0.len() != self.tubes.len() {
            return Err(Error::IndexOutOfRange(format!(
                "multi-index {index} has {} entries, expected {}",
                index.0.len(),
                self.tubes.len()
            )));
        }
        for (a, tube) in index.0.iter().zip(&self.tubes) {
            if *a < 1 || *a > tube.len() {
                return Err(Error::IndexOutOfRange(format!("multi-index {index}: entry {a} not in 1..={}", tube.len())));
            }
        }
        Ok(())
    }

    /// Every multi-index, in lexicographic order.
    pub fn multi_indices(&self) -> Vec<MultiIndex> {
        let mut out = vec![Vec::new()];
        for tube in &self.tubes {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (1..=tube.len()).map(move |a| {
                        let mut p = prefix.clone();
                        p.push(a);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(MultiIndex).collect()
    }

    fn non_excluded<'a>(&'a self, index: &'a MultiIndex) -> impl Iterator<Item = &'a DimVector> + 'a {
        self.tubes
            .iter()
            .zip(&index.0)
            .flat_map(|(tube, &a)| tube.iter().enumerate().filter(move |(j, _)| j + 1 != a).map(|(_, b)| b))
    }
}

pub fn compute_tubes(q: &Quiver) -> Result<TubeData> {
    let delta = q.classify().delta().cloned().ok_or(Error::NotEuclidean)?;
    let theta = q.wt(&delta.to_rat())?;
    let mut candidates = BTreeSet::new();
    for b in delta.box_iter() {
        if b.is_zero() || b == delta || q.tits_dim(&b) != 1 || q.euler_dim(&delta, &b) != 0 {
            continue;
        }
        if check_dim_stability(q, &theta, &b)?.stable {
            candidates.insert(b);
        }
    }
    let mut tubes = Vec::new();
    while let Some(start) = candidates.iter().next().cloned() {
        let mut tube = vec![start.clone()];
        candidates.remove(&start);
        let mut cur = start.clone();
        loop {
            let next = q
                .tau(&cur)
                .ok_or_else(|| Error::Internal(format!("τ{cur} is not a dimension vector")))?;
            if next == start {
                break;
            }
            if !candidates.remove(&next) {
                return Err(Error::Internal(format!("τ{cur} = {next} is not a quasi-simple root")));
            }
            tube.push(next.clone());
            cur = next;
        }
        tubes.push(tube);
    }
    Ok(TubeData { delta, tubes })
}

/// `α_I = δ + Σ_i Σ_{j ≠ a_i} β_{i,j}`.
pub fn alpha_i(t: &TubeData, index: &MultiIndex) -> Result<DimVector> {
    t.check_index(index)?;
    Ok(t.non_excluded(index).fold(t.delta.clone(), |acc, b| &acc + b))
}

/// Cone on `δ` and all quasi-simples except `β_{i,a_i}`.
pub fn c_i(t: &TubeData, index: &MultiIndex) -> Result<Cone> {
    t.check_index(index)?;
    let mut generators = vec![t.delta.to_rat()];
    generators.extend(t.non_excluded(index).map(DimVector::to_rat));
    Cone::from_generators(VCone { ambient: t.delta.len(), generators })
}

/// All cones `C_I`, deduplicated, keyed by their first multi-index.
pub fn maximal_cones(t: &TubeData) -> Result<Vec<(MultiIndex, Cone)>> {
    let mut out: Vec<(MultiIndex, Cone)> = Vec::new();
    for index in t.multi_indices() {
        let c = c_i(t, &index)?;
        let mut seen = false;
        for (_, other) in &out {
            if other.equal(&c)? {
                seen = true;
                break;
            }
        }
        if !seen {
            out.push((index, c));
        }
    }
    Ok(out)
}

/// `C(δ)_α`: the intersection of the cones `C_I` that contain `α`.
pub fn git_cone_delta(q: &Quiver, t: &TubeData, a: &RatVector) -> Result<Cone> {
    if !in_d_cone(q, a, &t.delta)? {
        return Err(Error::NotInDomain);
    }
    let mut acc: Option<Cone> = None;
    for (_, c) in maximal_cones(t)? {
        if c.contains(a)? {
            acc = Some(match acc {
                None => c,
                Some(prev) => prev.intersect(&c)?,
            });
        }
    }
    acc.ok_or_else(|| Error::Internal(format!("no cone C_I contains {a}")))
}

/// Multi-indices `I` with `α ∈ C_I`.
pub fn containing_indices(t: &TubeData, a: &RatVector) -> Result<Vec<MultiIndex>> {
    let mut out = Vec::new();
    for index in t.multi_indices() {
        if c_i(t, &index)?.contains(a)? {
            out.push(index);
        }
    }
    Ok(out)
}

/// Dimension vectors of the uniserial filtration of the `δ`-dimensional
/// indecomposable in tube `i` with regular socle `β_{i,a}`:
/// `β_a, β_a + β_{a−1}, …, δ`. Both indices start at 1.
pub fn z_filtration_dims(t: &TubeData, i: usize, a: usize) -> Result<Vec<DimVector>> {
    let tube = t
        .tubes
        .get(i.wrapping_sub(1))
        .ok_or_else(|| Error::IndexOutOfRange(format!("tube {i} not in 1..={}", t.tubes.len())))?;
    let r = tube.len();
    if a < 1 || a > r {
        return Err(Error::IndexOutOfRange(format!("start {a} not in 1..={r}")));
    }
    let mut out = Vec::with_capacity(r);
    let mut sum = DimVector::zero(t.delta.len());
    for k in 0..r {
        sum = &sum + &tube[(a - 1 + r - k) % r];
        out.push(sum.clone());
    }
    Ok(out)
}
