//! Generic extension dimensions and generic subdimension vectors.
//!
//! `β′ ↪ β` holds iff `ext(β′, β − β′) = 0`, and
//! `ext(α, β) = max{−⟨α′, β⟩ : α′ ↪ α}` (the maximum includes `α′ = 0`).
//! The two are computed by mutual recursion on the total dimension. Only
//! the subdimension lists are memoized; ext values are cheap to rebuild
//! from them.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{check_len, Error, Result};
use crate::quiver::Quiver;
use crate::vector::DimVector;

/// Default cap on the number of candidates `|[0, β]|` scanned for one
/// vector.
pub const DEFAULT_BOX_LIMIT: u128 = 1_000_000;

/// Generic subdimension vectors of one vector, stored flat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubList {
    width: usize,
    data: Vec<u32>,
}

impl SubList {
    pub fn len(&self) -> usize {
        self.data.len() / self.width.max(1)
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u32]> {
        self.data.chunks_exact(self.width.max(1))
    }

    pub fn to_dims(&self) -> Vec<DimVector> {
        self.iter()
            .map(|s| DimVector::new(s.iter().map(|&e| e as i64).collect()).expect("nonnegative"))
            .collect()
    }
}

/// `s · w` for a flat subdimension vector.
#[inline]
pub(crate) fn dot_u32(s: &[u32], w: &[i64]) -> i64 {
    s.iter().zip(w).map(|(&a, &b)| a as i64 * b).sum()
}

/// The functional `s ↦ ⟨s, b⟩` as the integer column `E·bᵀ`.
pub(crate) fn right_functional(q: &Quiver, b: &[i64]) -> Vec<i64> {
    q.euler_matrix().iter().map(|row| row.iter().zip(b).map(|(x, y)| x * y).sum()).collect()
}

/// Memo table of generic subdimension vectors, shared by clones of a
/// quiver.
#[derive(Default)]
pub struct SubdimCache {
    subs: RwLock<HashMap<Vec<i64>, Arc<SubList>>>,
}

impl fmt::Debug for SubdimCache {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let len = self.subs.read().map(|m| m.len()).unwrap_or(0);
        write!(f, "SubdimCache({len} entries)")
    }
}

impl SubdimCache {
    fn get(&self, key: &[i64]) -> Option<Arc<SubList>> {
        self.subs.read().expect("cache lock").get(key).cloned()
    }

    fn insert(&self, key: Vec<i64>, value: Arc<SubList>) -> Arc<SubList> {
        self.subs.write().expect("cache lock").entry(key).or_insert(value).clone()
    }

    pub fn len(&self) -> usize {
        self.subs.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn clear(&self) {
        self.subs.write().expect("cache lock").clear();
    }
}

fn guard(b: &DimVector, limit: u128) -> Result<()> {
    let size = b.box_size();
    if size > limit {
        return Err(Error::BoxTooLarge(size, limit));
    }
    Ok(())
}

/// All `β′` with `β′ ↪ β`, sorted lexicographically.
pub fn generic_subs(q: &Quiver, b: &DimVector) -> Result<Vec<DimVector>> {
    generic_subs_with_limit(q, b, DEFAULT_BOX_LIMIT)
}

pub fn generic_subs_with_limit(q: &Quiver, b: &DimVector, limit: u128) -> Result<Vec<DimVector>> {
    check_len(q.num_vertices(), b.len())?;
    guard(b, limit)?;
    Ok(subs(q, b).to_dims())
}

/// Cached variant for internal callers that only iterate.
pub(crate) fn subs_shared(q: &Quiver, b: &DimVector) -> Result<Arc<SubList>> {
    check_len(q.num_vertices(), b.len())?;
    guard(b, DEFAULT_BOX_LIMIT)?;
    Ok(subs(q, b))
}

fn subs(q: &Quiver, b: &DimVector) -> Arc<SubList> {
    let cache = q.subdim_cache();
    if let Some(hit) = cache.get(b.entries()) {
        return hit;
    }
    let width = b.len();
    let mut data = Vec::new();
    for cand in b.box_iter() {
        let keep = cand.is_zero() || cand == *b || {
            let rest = b.checked_sub(&cand).expect("candidate lies in the box");
            ext_vanishes(q, &cand, &rest)
        };
        if keep {
            data.extend(cand.entries().iter().map(|&e| e as u32));
        }
    }
    cache.insert(b.entries().to_vec(), Arc::new(SubList { width, data }))
}

/// `ext(a, b) = 0`, i.e. `⟨s, b⟩ ≥ 0` for every `s ↪ a`.
fn ext_vanishes(q: &Quiver, a: &DimVector, b: &DimVector) -> bool {
    if q.euler_dim(a, b) < 0 {
        return false;
    }
    let w = right_functional(q, b.entries());
    subs(q, a).iter().all(|s| dot_u32(s, &w) >= 0)
}

/// Dimension of `Ext¹` between general representations of dimensions
/// `a` and `b`.
pub fn generic_ext(q: &Quiver, a: &DimVector, b: &DimVector) -> Result<i64> {
    check_len(q.num_vertices(), b.len())?;
    let sa = subs_shared(q, a)?;
    let w = right_functional(q, b.entries());
    Ok(sa.iter().map(|s| -dot_u32(s, &w)).max().unwrap_or(0).max(0))
}

/// `hom = ⟨a, b⟩ + ext` for general representations.
pub fn generic_hom(q: &Quiver, a: &DimVector, b: &DimVector) -> Result<i64> {
    Ok(q.euler_dim(a, b) + generic_ext(q, a, b)?)
}

pub fn is_generic_sub(q: &Quiver, sub: &DimVector, b: &DimVector) -> Result<bool> {
    check_len(q.num_vertices(), sub.len())?;
    check_len(q.num_vertices(), b.len())?;
    let Some(rest) = b.checked_sub(sub) else { return Ok(false) };
    if sub.is_zero() || rest.is_zero() {
        return Ok(true);
    }
    guard(sub, DEFAULT_BOX_LIMIT)?;
    Ok(ext_vanishes(q, sub, &rest))
}
