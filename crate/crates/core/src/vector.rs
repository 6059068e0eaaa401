//! Dimension vectors and exact rational vectors indexed by quiver vertices.

use std::fmt;
use std::ops::{Add, Index, Sub};

use num::{BigInt, BigRational, Integer, One, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Nonnegative integer vector, one entry per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector(Vec<i64>);

impl DimVector {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.iter().any(|&e| e < 0) {
            return Err(Error::NegativeEntry);
        }
        Ok(DimVector(entries))
    }

    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn unit(n: usize, x: usize) -> Self {
        let mut v = vec![0; n];
        v[x] = 1;
        DimVector(v)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Total dimension `|β|`.
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_sincere(&self) -> bool {
        self.0.iter().all(|&e| e > 0)
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &DimVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self - other`, or `None` if some entry would be negative.
    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        let v: Vec<i64> = self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect();
        if v.iter().any(|&e| e < 0) {
            None
        } else {
            Some(DimVector(v))
        }
    }

    pub fn scaled(&self, k: i64) -> DimVector {
        assert!(k >= 0);
        DimVector(self.0.iter().map(|e| e * k).collect())
    }

    pub fn to_rat(&self) -> RatVector {
        RatVector(self.0.iter().map(|&e| rat(e)).collect())
    }

    /// Every vector `γ` with `0 ≤ γ ≤ self`, in lexicographic order.
    pub fn box_iter(&self) -> BoxIter<'_> {
        BoxIter {
            upper: &self.0,
            current: Some(vec![0; self.0.len()]),
        }
    }

    /// Number of vectors in the box `[0, self]`.
    pub fn box_size(&self) -> u128 {
        self.0.iter().map(|&e| e as u128 + 1).product()
    }

    /// Parses comma separated nonnegative integers such as `2,1,0`.
    pub fn parse(s: &str) -> Result<DimVector> {
        RatVector::parse(s)?
            .to_dim()
            .ok_or_else(|| Error::Parse(format!("{s:?} is not a dimension vector")))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.0.iter().map(|&e| Value::from(e)).collect())
    }
}

impl Index<usize> for DimVector {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &DimVector {
    type Output = DimVector;
    fn add(self, rhs: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

pub struct BoxIter<'a> {
    upper: &'a [i64],
    current: Option<Vec<i64>>,
}

impl Iterator for BoxIter<'_> {
    type Item = DimVector;

    fn next(&mut self) -> Option<DimVector> {
        let cur = self.current.take()?;
        let mut nxt = cur.clone();
        let mut i = nxt.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            if nxt[i] < self.upper[i] {
                nxt[i] += 1;
                for e in &mut nxt[i + 1..] {
                    *e = 0;
                }
                self.current = Some(nxt);
                break;
            }
        }
        Some(DimVector(cur))
    }
}

/// All nonnegative vectors of length `n` with entry sum at most `bound`,
/// ordered by total then lexicographically.
pub fn vectors_up_to(n: usize, bound: i64) -> Vec<DimVector> {
    let mut out = Vec::new();
    for total in 0..=bound {
        let mut cur = vec![0i64; n];
        compositions(&mut cur, 0, total, &mut out);
    }
    out
}

fn compositions(cur: &mut Vec<i64>, pos: usize, remaining: i64, out: &mut Vec<DimVector>) {
    if pos + 1 == cur.len() {
        cur[pos] = remaining;
        out.push(DimVector(cur.clone()));
        return;
    }
    if cur.is_empty() {
        return;
    }
    for v in (0..=remaining).rev() {
        cur[pos] = v;
        compositions(cur, pos + 1, remaining - v, out);
    }
    cur[pos] = 0;
}

/// Exact rational vector, one entry per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatVector(pub Vec<Rational>);

impl RatVector {
    pub fn zero(n: usize) -> Self {
        RatVector(vec![Rational::zero(); n])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        RatVector(v.iter().map(|&e| rat(e)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &RatVector) -> Rational {
        dot(&self.0, &other.0)
    }

    pub fn scale(&self, s: &Rational) -> RatVector {
        RatVector(self.0.iter().map(|e| e * s).collect())
    }

    pub fn neg(&self) -> RatVector {
        RatVector(self.0.iter().map(|e| -e).collect())
    }

    /// Positive multiple with coprime integer entries; the zero vector is
    /// returned unchanged.
    pub fn primitive(&self) -> RatVector {
        RatVector(primitive(&self.0))
    }

    /// Entries as integers, if every entry is integral.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0
            .iter()
            .map(|e| if e.is_integer() { e.to_integer().to_i64() } else { None })
            .collect()
    }

    /// Converts to a dimension vector if all entries are nonnegative integers.
    pub fn to_dim(&self) -> Option<DimVector> {
        DimVector::new(self.to_ints()?).ok()
    }

    /// Parses comma separated rationals such as `1/2,3,-1`.
    pub fn parse(s: &str) -> Result<RatVector> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        if s.trim().is_empty() {
            return Ok(RatVector(Vec::new()));
        }
        s.split(',').map(parse_rational).collect::<Result<Vec<_>>>().map(RatVector)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.0.iter().map(rational_to_json).collect())
    }
}

impl Index<usize> for RatVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl Add for &RatVector {
    type Output = RatVector;
    fn add(self, rhs: &RatVector) -> RatVector {
        RatVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RatVector {
    type Output = RatVector;
    fn sub(self, rhs: &RatVector) -> RatVector {
        RatVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl From<&DimVector> for RatVector {
    fn from(d: &DimVector) -> Self {
        d.to_rat()
    }
}

impl fmt::Display for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Integers become JSON numbers when they fit in an `i64`; everything else
/// is a `"p/q"` string.
pub fn rational_to_json(r: &Rational) -> Value {
    if r.is_integer() {
        if let Some(i) = r.to_integer().to_i64() {
            return Value::from(i);
        }
    }
    Value::String(r.to_string())
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(rat)
            .ok_or_else(|| Error::Parse(format!("non-integer JSON number {n}"))),
        Value::String(s) => parse_rational(s),
        other => Err(Error::Parse(format!("expected a rational, got {other}"))),
    }
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub(crate) fn primitive(v: &[Rational]) -> Vec<Rational> {
    if v.iter().all(Zero::is_zero) {
        return v.to_vec();
    }
    let den = v.iter().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
    let ints: Vec<BigInt> = v.iter().map(|e| (e * Rational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, e| acc.gcd(e));
    ints.into_iter()
        .map(|e| Rational::from_integer(e / &g))
        .collect()
}
