//! Independent oracles shared by the integration tests.

#![allow(dead_code, clippy::needless_range_loop)]

use gitcone::{DimVector, Quiver};
use rand::Rng;

pub const P: u64 = 2_147_483_647;

fn rank_mod_p(mut m: Vec<Vec<u64>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, pivot);
        let inv = pow_mod(m[rank][c], P - 2);
        for e in m[rank].iter_mut() {
            *e = *e * inv % P;
        }
        for r in 0..rows {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c];
                for j in 0..cols {
                    m[r][j] = (m[r][j] + P - f * m[rank][j] % P) % P;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    acc
}

/// One matrix `dim(head) × dim(tail)` per arrow, with uniform entries mod p.
pub fn random_rep<R: Rng>(q: &Quiver, d: &DimVector, rng: &mut R) -> Vec<Vec<Vec<u64>>> {
    let mut out = Vec::new();
    for &(t, h, m) in q.arrows() {
        for _ in 0..m {
            out.push((0..d[h]).map(|_| (0..d[t]).map(|_| rng.gen_range(0..P)).collect()).collect());
        }
    }
    out
}

/// `dim Hom(V, W)` for random representations of dimensions `a` and `b`,
/// the minimum over a few draws.
pub fn hom_oracle<R: Rng>(q: &Quiver, a: &DimVector, b: &DimVector, rng: &mut R) -> i64 {
    (0..2).map(|_| hom_once(q, a, b, rng)).min().unwrap()
}

fn hom_once<R: Rng>(q: &Quiver, a: &DimVector, b: &DimVector, rng: &mut R) -> i64 {
    let n = q.num_vertices();
    let v = random_rep(q, a, rng);
    let w = random_rep(q, b, rng);
    // Unknowns: φ_x is b_x × a_x, flattened.
    let mut offset = vec![0usize; n + 1];
    for x in 0..n {
        offset[x + 1] = offset[x] + (b[x] * a[x]) as usize;
    }
    let unknowns = offset[n];
    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut arrow = 0;
    for &(t, h, m) in q.arrows() {
        for _ in 0..m {
            let va = &v[arrow];
            let wa = &w[arrow];
            arrow += 1;
            // (φ_h V_a − W_a φ_t)[i][j] = 0 for i < b_h, j < a_t
            for i in 0..b[h] as usize {
                for j in 0..a[t] as usize {
                    let mut row = vec![0u64; unknowns];
                    for k in 0..a[h] as usize {
                        let idx = offset[h] + i * a[h] as usize + k;
                        row[idx] = (row[idx] + va[k][j]) % P;
                    }
                    for k in 0..b[t] as usize {
                        let idx = offset[t] + k * a[t] as usize + j;
                        row[idx] = (row[idx] + P - wa[i][k]) % P;
                    }
                    rows.push(row);
                }
            }
        }
    }
    unknowns as i64 - rank_mod_p(rows) as i64
}

pub fn ext_oracle<R: Rng>(q: &Quiver, a: &DimVector, b: &DimVector, rng: &mut R) -> i64 {
    hom_oracle(q, a, b, rng) - q.euler_dim(a, b)
}

/// `β′ ↪ β` decided from random representations: `ext(β′, β − β′) = 0`.
pub fn subs_oracle<R: Rng>(q: &Quiver, b: &DimVector, rng: &mut R) -> Vec<DimVector> {
    b.box_iter()
        .filter(|s| {
            let rest = b.checked_sub(s).unwrap();
            s.is_zero() || rest.is_zero() || ext_oracle(q, s, &rest, rng) == 0
        })
        .collect()
}

/// Euler matrix rebuilt from the arrow list.
pub fn euler_matrix(q: &Quiver) -> Vec<Vec<i64>> {
    let n = q.num_vertices();
    let mut e = vec![vec![0i64; n]; n];
    for (x, row) in e.iter_mut().enumerate() {
        row[x] = 1;
    }
    for &(t, h, m) in q.arrows() {
        e[t][h] -= m;
    }
    e
}

pub fn euler(e: &[Vec<i64>], a: &[i64], b: &[i64]) -> i64 {
    (0..a.len()).map(|x| (0..b.len()).map(|y| a[x] * e[x][y] * b[y]).sum::<i64>()).sum()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Kernel of the symmetrized Euler form, by fraction-free elimination.
/// Returns the positive primitive generator when the kernel is a line.
pub fn radical_generator(q: &Quiver) -> Option<Vec<i64>> {
    let e = euler_matrix(q);
    let n = e.len();
    let mut m: Vec<Vec<i64>> = (0..n).map(|x| (0..n).map(|y| e[x][y] + e[y][x]).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..n {
        let Some(p) = (row..n).find(|&r| m[r][c] != 0) else { continue };
        m.swap(row, p);
        for r in 0..n {
            if r != row && m[r][c] != 0 {
                let (a, b) = (m[row][c], m[r][c]);
                for j in 0..n {
                    m[r][j] = a * m[r][j] - b * m[row][j];
                }
                let g = m[r].iter().fold(0, |g, &v| gcd(g, v));
                if g > 1 {
                    for v in m[r].iter_mut() {
                        *v /= g;
                    }
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    if pivots.len() != n - 1 {
        return None;
    }
    let free = (0..n).find(|c| !pivots.contains(c)).unwrap();
    // Scale so every pivot row solves exactly for its variable.
    let l = pivots.iter().enumerate().fold(1i64, |l, (r, &c)| l / gcd(l, m[r][c]) * m[r][c].abs());
    let mut v = vec![0i64; n];
    v[free] = l;
    for (r, &c) in pivots.iter().enumerate() {
        v[c] = -m[r][free] * l / m[r][c];
    }
    let g = v.iter().fold(0, |g, &x| gcd(g, x));
    let v: Vec<i64> = v.iter().map(|x| x / g).collect();
    let sign = if v.iter().any(|&x| x < 0) { -1 } else { 1 };
    Some(v.iter().map(|x| x * sign).collect())
}

/// Inverse of a unimodular integer matrix by Gauss–Jordan over the
/// rationals, returned as integers.
pub fn inverse_unimodular(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = (0..n)
        .map(|i| a[i].iter().map(|&v| v as f64).chain((0..n).map(|j| if i == j { 1.0 } else { 0.0 })).collect())
        .collect();
    for c in 0..n {
        let p = (c..n).max_by(|&x, &y| m[x][c].abs().total_cmp(&m[y][c].abs())).unwrap();
        m.swap(c, p);
        let d = m[c][c];
        for v in m[c].iter_mut() {
            *v /= d;
        }
        for r in 0..n {
            if r != c {
                let f = m[r][c];
                for j in 0..2 * n {
                    m[r][j] -= f * m[c][j];
                }
            }
        }
    }
    m.iter().map(|row| row[n..].iter().map(|v| v.round() as i64).collect()).collect()
}

/// `τβ` from `⟨β, γ⟩ = −⟨γ, τβ⟩` for all `γ`, i.e. the solution `x` of
/// `E·xᵀ = −Eᵀ·βᵀ`.
pub fn tau(q: &Quiver, b: &[i64]) -> Vec<i64> {
    let e = euler_matrix(q);
    let inv = inverse_unimodular(&e);
    let n = b.len();
    let rhs: Vec<i64> = (0..n).map(|y| -(0..n).map(|x| e[x][y] * b[x]).sum::<i64>()).collect();
    (0..n).map(|x| (0..n).map(|y| inv[x][y] * rhs[y]).sum()).collect()
}

/// Quasi-simple roots by brute force: real roots `0 < β < δ` of defect 0
/// that are not the sum of two such roots.
pub fn quasi_simples(q: &Quiver, delta: &[i64]) -> Vec<Vec<i64>> {
    let e = euler_matrix(q);
    let n = delta.len();
    let mut roots = Vec::new();
    let mut cur = vec![0i64; n];
    loop {
        let mut i = 0;
        while i < n && cur[i] == delta[i] {
            cur[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        cur[i] += 1;
        if cur != delta && euler(&e, &cur, &cur) == 1 && euler(&e, delta, &cur) == 0 {
            roots.push(cur.clone());
        }
    }
    let set: std::collections::HashSet<Vec<i64>> = roots.iter().cloned().collect();
    roots
        .iter()
        .filter(|b| {
            !roots.iter().any(|a| {
                let rest: Vec<i64> = b.iter().zip(a.iter()).map(|(x, y)| x - y).collect();
                rest.iter().all(|&v| v >= 0) && rest.iter().any(|&v| v > 0) && set.contains(&rest)
            })
        })
        .cloned()
        .collect()
}

/// Sizes of the τ-orbits on a set of quasi-simples, sorted.
pub fn orbit_sizes(q: &Quiver, qs: &[Vec<i64>]) -> Vec<usize> {
    let mut seen = std::collections::HashSet::new();
    let mut sizes = Vec::new();
    for b in qs {
        if seen.contains(b) {
            continue;
        }
        let mut len = 0;
        let mut cur = b.clone();
        loop {
            seen.insert(cur.clone());
            len += 1;
            cur = tau(q, &cur);
            if &cur == b {
                break;
            }
        }
        sizes.push(len);
    }
    sizes.sort();
    sizes
}
