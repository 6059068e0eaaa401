//! Quivers, the Euler form, the weight isomorphism and the Coxeter matrix.
//!
//! Vectors are row vectors: `⟨α, β⟩ = α·E·βᵀ` where
//! `E[x][y] = δ_xy − #(arrows x → y)`. The Coxeter matrix acts on the right,
//! `τβ = β·Φ`, with `Φ = −E·E⁻ᵀ`; this is the convention for which the
//! Auslander–Reiten identity `⟨β, γ⟩ = −⟨γ, βΦ⟩` holds.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::Arc;

use num::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{check_len, Error, Result};
use crate::genhom::SubdimCache;
use crate::linalg::{self, Matrix};
use crate::vector::{rat, rational_to_json, DimVector, RatVector, Rational};

/// A finite, connected, acyclic quiver. Parallel arrows are stored as a
/// multiplicity.
#[derive(Debug, Clone)]
pub struct Quiver {
    vertices: Vec<String>,
    /// `(tail, head, multiplicity)`, sorted.
    arrows: Vec<(usize, usize, i64)>,
    euler: Vec<Vec<i64>>,
    euler_inv: Matrix,
    coxeter: Matrix,
    coxeter_inv: Matrix,
    subdims: Arc<SubdimCache>,
}

/// The Euler matrix together with the Coxeter matrix and its inverse.
#[derive(Debug, Clone, PartialEq)]
pub struct EulerData {
    pub euler_matrix: Vec<Vec<i64>>,
    pub coxeter_matrix: Matrix,
    pub coxeter_inverse: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuiverType {
    Dynkin,
    Euclidean { delta: DimVector },
    Wild,
}

impl EulerData {
    pub fn to_json(&self) -> Value {
        let rat_rows = |m: &Matrix| -> Value {
            Value::Array(m.iter().map(|row| Value::Array(row.iter().map(rational_to_json).collect())).collect())
        };
        json!({
            "euler_matrix": self.euler_matrix,
            "coxeter_matrix": rat_rows(&self.coxeter_matrix),
            "coxeter_inverse": rat_rows(&self.coxeter_inverse),
        })
    }
}

impl QuiverType {
    pub fn name(&self) -> &'static str {
        match self {
            QuiverType::Dynkin => "Dynkin",
            QuiverType::Euclidean { .. } => "Euclidean",
            QuiverType::Wild => "Wild",
        }
    }

    pub fn delta(&self) -> Option<&DimVector> {
        match self {
            QuiverType::Euclidean { delta } => Some(delta),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            QuiverType::Euclidean { delta } => json!({"type": self.name(), "delta": delta.to_json()}),
            _ => json!({"type": self.name()}),
        }
    }
}

impl Quiver {
    /// Validates raw vertex and arrow lists.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S)]) -> Result<Quiver> {
        if vertices.is_empty() {
            return Err(Error::EmptyQuiver);
        }
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.as_ref().to_string(), i).is_some() {
                return Err(Error::DuplicateVertex(v.as_ref().to_string()));
            }
        }
        let lookup = |v: &S| index.get(v.as_ref()).copied().ok_or_else(|| Error::UnknownVertex(v.as_ref().to_string()));
        let mut counts: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for (t, h) in arrows {
            *counts.entry((lookup(t)?, lookup(h)?)).or_default() += 1;
        }
        let names: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let arrows: Vec<(usize, usize, i64)> = counts.into_iter().map(|((t, h), m)| (t, h, m)).collect();
        check_acyclic(&names, &arrows)?;
        check_connected(&names, &arrows)?;
        Self::from_validated(names, arrows)
    }

    fn from_validated(vertices: Vec<String>, arrows: Vec<(usize, usize, i64)>) -> Result<Quiver> {
        let n = vertices.len();
        let mut euler = vec![vec![0i64; n]; n];
        for (x, row) in euler.iter_mut().enumerate() {
            row[x] = 1;
        }
        for &(t, h, m) in &arrows {
            euler[t][h] -= m;
        }
        let e: Matrix = euler.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect();
        let euler_inv = linalg::inverse(&e).ok_or(Error::SingularEuler)?;
        let et = linalg::transpose(&e);
        let et_inv = linalg::transpose(&euler_inv);
        let neg = |m: Matrix| -> Matrix { m.into_iter().map(|r| r.into_iter().map(|v| -v).collect()).collect() };
        let coxeter = neg(linalg::mul(&e, &et_inv));
        let coxeter_inv = neg(linalg::mul(&et, &euler_inv));
        Ok(Quiver { vertices, arrows, euler, euler_inv, coxeter, coxeter_inv, subdims: Arc::default() })
    }

    /// Parses the quiver JSON format
    /// `{"vertices": [...], "arrows": [{"from": .., "to": ..}, ...]}`.
    pub fn from_json_str(s: &str) -> Result<Quiver> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&v)
    }

    pub fn from_json(v: &Value) -> Result<Quiver> {
        let id = |x: &Value| -> Result<String> {
            match x {
                Value::String(s) => Ok(s.clone()),
                Value::Number(n) => Ok(n.to_string()),
                other => Err(Error::Parse(format!("invalid vertex id {other}"))),
            }
        };
        let vertices = v
            .get("vertices")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing \"vertices\" array".into()))?
            .iter()
            .map(id)
            .collect::<Result<Vec<_>>>()?;
        let arrows = match v.get("arrows") {
            None => Vec::new(),
            Some(a) => a
                .as_array()
                .ok_or_else(|| Error::Parse("\"arrows\" must be an array".into()))?
                .iter()
                .map(|a| {
                    let from = a.get("from").ok_or_else(|| Error::Parse("arrow without \"from\"".into()))?;
                    let to = a.get("to").ok_or_else(|| Error::Parse("arrow without \"to\"".into()))?;
                    Ok((id(from)?, id(to)?))
                })
                .collect::<Result<Vec<_>>>()?,
        };
        Quiver::new(&vertices, &arrows)
    }

    pub fn to_json(&self) -> Value {
        let arrows: Vec<Value> = self
            .arrows
            .iter()
            .flat_map(|&(t, h, m)| {
                (0..m).map(move |_| json!({"from": self.vertices[t], "to": self.vertices[h]}))
            })
            .collect();
        json!({"vertices": self.vertices, "arrows": arrows})
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    /// Arrows as `(tail, head, multiplicity)`.
    pub fn arrows(&self) -> &[(usize, usize, i64)] {
        &self.arrows
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertices.iter().position(|v| v == name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub(crate) fn subdim_cache(&self) -> &SubdimCache {
        &self.subdims
    }

    pub fn euler_matrix(&self) -> &[Vec<i64>] {
        &self.euler
    }

    /// `⟨α, β⟩ = Σ α(x)β(x) − Σ_a α(ta)β(ha)`.
    pub fn euler_form(&self, a: &RatVector, b: &RatVector) -> Result<Rational> {
        check_len(self.num_vertices(), a.len())?;
        check_len(self.num_vertices(), b.len())?;
        let mut s = a.dot(b);
        for &(t, h, m) in &self.arrows {
            s -= &a[t] * &b[h] * rat(m);
        }
        Ok(s)
    }

    /// Integer Euler form; slices must have length `|Q₀|`.
    #[inline]
    pub fn euler_int(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s: i64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
        for &(t, h, m) in &self.arrows {
            s -= m * a[t] * b[h];
        }
        s
    }

    pub fn euler_dim(&self, a: &DimVector, b: &DimVector) -> i64 {
        self.euler_int(a.entries(), b.entries())
    }

    /// Tits form `q(α) = ⟨α, α⟩`.
    pub fn tits_q(&self, a: &RatVector) -> Result<Rational> {
        self.euler_form(a, a)
    }

    pub fn tits_dim(&self, a: &DimVector) -> i64 {
        self.euler_dim(a, a)
    }

    /// `wt(α)_x = ⟨α, e_x⟩`, i.e. the row vector `α·E`.
    pub fn wt(&self, a: &RatVector) -> Result<RatVector> {
        check_len(self.num_vertices(), a.len())?;
        let n = self.num_vertices();
        let mut out = a.0.clone();
        for &(t, h, m) in &self.arrows {
            out[h] -= &a[t] * rat(m);
        }
        debug_assert_eq!(out.len(), n);
        Ok(RatVector(out))
    }

    pub fn wt_inv(&self, theta: &RatVector) -> Result<RatVector> {
        check_len(self.num_vertices(), theta.len())?;
        Ok(RatVector(linalg::vec_mul(&theta.0, &self.euler_inv)))
    }

    /// The weight functional `γ ↦ ⟨α, γ⟩` evaluated on a dimension vector.
    pub fn pair_rat_dim(&self, a: &RatVector, b: &DimVector) -> Rational {
        let mut s = Rational::zero();
        for (x, &bx) in b.entries().iter().enumerate() {
            if bx != 0 {
                s += &a[x] * rat(bx);
            }
        }
        for &(t, h, m) in &self.arrows {
            if b[h] != 0 && !a[t].is_zero() {
                s -= &a[t] * rat(m * b[h]);
            }
        }
        s
    }

    pub fn euler_data(&self) -> EulerData {
        EulerData {
            euler_matrix: self.euler.clone(),
            coxeter_matrix: self.coxeter.clone(),
            coxeter_inverse: self.coxeter_inv.clone(),
        }
    }

    pub fn coxeter_matrix(&self) -> &Matrix {
        &self.coxeter
    }

    /// `β·Φᵏ`; negative `k` uses `Φ⁻¹`.
    pub fn tau_dim(&self, b: &RatVector, k: i64) -> Result<RatVector> {
        check_len(self.num_vertices(), b.len())?;
        let m = if k >= 0 { &self.coxeter } else { &self.coxeter_inv };
        let mut v = b.0.clone();
        for _ in 0..k.unsigned_abs() {
            v = linalg::vec_mul(&v, m);
        }
        Ok(RatVector(v))
    }

    /// `τβ` on a dimension vector, `None` if the result is not a dimension
    /// vector.
    pub fn tau(&self, b: &DimVector) -> Option<DimVector> {
        self.tau_dim(&b.to_rat(), 1).ok()?.to_dim()
    }

    pub fn tau_inv(&self, b: &DimVector) -> Option<DimVector> {
        self.tau_dim(&b.to_rat(), -1).ok()?.to_dim()
    }

    /// Dimension vector `γ_x` of the indecomposable projective at `x`:
    /// `γ_x(y)` counts directed paths `x → y`.
    pub fn projective_dim(&self, x: usize) -> Result<DimVector> {
        if x >= self.num_vertices() {
            return Err(Error::UnknownVertex(x.to_string()));
        }
        Ok(DimVector::new(self.path_counts(x, true)).expect("path counts are nonnegative"))
    }

    /// Dimension vector of the indecomposable injective at `x`: counts of
    /// paths `y → x`.
    pub fn injective_dim(&self, x: usize) -> Result<DimVector> {
        if x >= self.num_vertices() {
            return Err(Error::UnknownVertex(x.to_string()));
        }
        Ok(DimVector::new(self.path_counts(x, false)).expect("path counts are nonnegative"))
    }

    fn path_counts(&self, start: usize, forward: bool) -> Vec<i64> {
        let n = self.num_vertices();
        let order = topological_order(n, &self.arrows).expect("validated quiver is acyclic");
        let mut counts = vec![0i64; n];
        counts[start] = 1;
        let iter: Box<dyn Iterator<Item = &usize>> =
            if forward { Box::new(order.iter()) } else { Box::new(order.iter().rev()) };
        for &v in iter {
            if counts[v] == 0 {
                continue;
            }
            for &(t, h, m) in &self.arrows {
                if forward && t == v {
                    counts[h] += m * counts[v];
                } else if !forward && h == v {
                    counts[t] += m * counts[v];
                }
            }
        }
        counts
    }

    /// Symmetrized Euler matrix `E + Eᵀ`, twice the Tits form.
    pub fn symmetric_form(&self) -> Vec<Vec<i64>> {
        let n = self.num_vertices();
        (0..n).map(|i| (0..n).map(|j| self.euler[i][j] + self.euler[j][i]).collect()).collect()
    }

    /// Dynkin / Euclidean / wild by definiteness of the Tits form.
    pub fn classify(&self) -> QuiverType {
        let sym = self.symmetric_form();
        let m: Matrix = sym.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect();
        match definiteness(m.clone()) {
            Definiteness::PositiveDefinite => QuiverType::Dynkin,
            Definiteness::Indefinite => QuiverType::Wild,
            Definiteness::Semidefinite => {
                let radical = linalg::nullspace(&m, self.num_vertices());
                if radical.len() != 1 {
                    return QuiverType::Wild;
                }
                let v = RatVector(radical.into_iter().next().unwrap()).primitive();
                let v = if v.0.iter().any(Signed::is_negative) { v.neg() } else { v };
                match v.to_dim() {
                    Some(delta) if delta.is_sincere() => QuiverType::Euclidean { delta },
                    _ => QuiverType::Wild,
                }
            }
        }
    }
}

enum Definiteness {
    PositiveDefinite,
    Semidefinite,
    Indefinite,
}

/// Symmetric Gaussian elimination with diagonal pivoting. A negative pivot,
/// or a zero diagonal with a nonzero off-diagonal entry in the same row,
/// certifies indefiniteness.
fn definiteness(mut m: Matrix) -> Definiteness {
    let mut active: Vec<usize> = (0..m.len()).collect();
    while !active.is_empty() {
        if active.iter().any(|&i| m[i][i].is_negative()) {
            return Definiteness::Indefinite;
        }
        let Some(pos) = active.iter().position(|&i| m[i][i].is_positive()) else {
            let off = active.iter().any(|&i| active.iter().any(|&j| i != j && !m[i][j].is_zero()));
            return if off { Definiteness::Indefinite } else { Definiteness::Semidefinite };
        };
        let p = active.remove(pos);
        let piv = m[p][p].clone();
        for &i in &active {
            for &j in &active {
                let t = &m[i][p] * &m[p][j] / &piv;
                m[i][j] -= t;
            }
        }
    }
    Definiteness::PositiveDefinite
}

fn topological_order(n: usize, arrows: &[(usize, usize, i64)]) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    for &(_, h, _) in arrows {
        indeg[h] += 1;
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &(t, h, _) in arrows {
            if t == v {
                indeg[h] -= 1;
                if indeg[h] == 0 {
                    queue.push_back(h);
                }
            }
        }
    }
    (order.len() == n).then_some(order)
}

fn check_acyclic(names: &[String], arrows: &[(usize, usize, i64)]) -> Result<()> {
    if topological_order(names.len(), arrows).is_some() {
        return Ok(());
    }
    // Find an explicit cycle by depth-first search.
    let n = names.len();
    let mut state = vec![0u8; n];
    let mut stack = Vec::new();
    fn dfs(v: usize, arrows: &[(usize, usize, i64)], state: &mut [u8], stack: &mut Vec<usize>) -> Option<Vec<usize>> {
        state[v] = 1;
        stack.push(v);
        for &(t, h, _) in arrows {
            if t != v {
                continue;
            }
            if state[h] == 1 {
                let start = stack.iter().position(|&u| u == h).unwrap();
                return Some(stack[start..].to_vec());
            }
            if state[h] == 0 {
                if let Some(c) = dfs(h, arrows, state, stack) {
                    return Some(c);
                }
            }
        }
        stack.pop();
        state[v] = 2;
        None
    }
    for v in 0..n {
        if state[v] == 0 {
            if let Some(cycle) = dfs(v, arrows, &mut state, &mut stack) {
                return Err(Error::CyclicQuiver(cycle.into_iter().map(|i| names[i].clone()).collect()));
            }
        }
    }
    Err(Error::CyclicQuiver(Vec::new()))
}

fn check_connected(names: &[String], arrows: &[(usize, usize, i64)]) -> Result<()> {
    let n = names.len();
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for &(t, h, _) in arrows {
            let other = if t == v { h } else if h == v { t } else { continue };
            if !seen[other] {
                seen[other] = true;
                queue.push_back(other);
            }
        }
    }
    let missing: Vec<String> = (0..n).filter(|&v| !seen[v]).map(|v| names[v].clone()).collect();
    if missing.is_empty() {
        Ok(())
    } else {
        Err(Error::DisconnectedQuiver(missing, names[0].clone()))
    }
}

/// Small named quivers used throughout the tests and the reference corpus.
pub mod examples {
    use super::Quiver;

    fn build(vertices: &[&str], arrows: &[(&str, &str)]) -> Quiver {
        Quiver::new(vertices, arrows).expect("example quiver is valid")
    }

    /// `1 → 2 → … → n`.
    pub fn a_n(n: usize) -> Quiver {
        let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let arrows: Vec<(String, String)> = (1..n).map(|i| (i.to_string(), (i + 1).to_string())).collect();
        Quiver::new(&names, &arrows).expect("A_n is valid")
    }

    /// `m` parallel arrows `1 → 2`.
    pub fn kronecker(m: usize) -> Quiver {
        let arrows: Vec<(&str, &str)> = (0..m).map(|_| ("1", "2")).collect();
        build(&["1", "2"], &arrows)
    }

    /// Ã_{2,1}: arrows 1→2, 1→3, 3→2.
    pub fn a_tilde_2_1() -> Quiver {
        build(&["1", "2", "3"], &[("1", "2"), ("1", "3"), ("3", "2")])
    }

    /// D̃₄ in subspace orientation, center first: legs 1..4 → c.
    pub fn d4_tilde() -> Quiver {
        build(&["c", "1", "2", "3", "4"], &[("1", "c"), ("2", "c"), ("3", "c"), ("4", "c")])
    }

    /// Ẽ₆ with all three legs of length two pointing at the center.
    pub fn e6_tilde() -> Quiver {
        build(
            &["c", "a1", "a2", "b1", "b2", "d1", "d2"],
            &[("a2", "a1"), ("a1", "c"), ("b2", "b1"), ("b1", "c"), ("d2", "d1"), ("d1", "c")],
        )
    }
}
