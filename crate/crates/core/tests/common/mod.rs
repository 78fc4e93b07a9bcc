//! Shared fixtures and an independent hom-dimension oracle.
//!
//! The oracle draws random representations with entries from a pool of 10^4
//! values and computes `dim Hom(V, W)` as the nullity of the standard linear
//! system, by elimination modulo the prime `2^61 - 1`. It shares no code with
//! the library's rational linear algebra.

#![allow(dead_code)]

use quiver_moduli::{DimVector, Quiver, Weight};
use rand::Rng;

pub const PRIME: u64 = (1 << 61) - 1;
pub const POOL: u64 = 10_000;
pub const SAMPLES: usize = 20;

pub fn dv(v: &[i64]) -> DimVector {
    DimVector::from_entries(v.to_vec())
}

pub fn w(v: &[i64]) -> Weight {
    Weight::from_entries(v.to_vec())
}

pub fn a2() -> Quiver {
    Quiver::from_edges(2, &[(0, 1)]).unwrap()
}

pub fn kronecker(m: usize) -> Quiver {
    Quiver::from_edges(2, &vec![(0, 1); m]).unwrap()
}

pub fn one_loop() -> Quiver {
    Quiver::from_edges(1, &[(0, 0)]).unwrap()
}

pub const EXAMPLE: &str = r#"{
  "vertices": ["1", "2"],
  "arrows": [
    {"id": "a11", "from": "1", "to": "1"},
    {"id": "a12", "from": "1", "to": "2"},
    {"id": "a21", "from": "2", "to": "1"},
    {"id": "a22", "from": "2", "to": "2"}
  ]
}"#;

pub fn example() -> Quiver {
    Quiver::from_json(EXAMPLE).unwrap()
}

/// The five quivers the oracle is checked on.
pub fn oracle_quivers() -> Vec<(&'static str, Quiver)> {
    vec![
        ("A2", a2()),
        ("2-Kronecker", kronecker(2)),
        ("3-Kronecker", kronecker(3)),
        ("one loop", one_loop()),
        ("two-vertex example", example()),
    ]
}

/// Non-negative vectors of length `n` with entry sum at most `t`, lexicographic.
pub fn vectors_up_to_total(n: usize, t: i64) -> Vec<DimVector> {
    fn go(n: usize, left: i64, prefix: &mut Vec<i64>, out: &mut Vec<DimVector>) {
        if prefix.len() == n {
            out.push(DimVector::from_entries(prefix.clone()));
            return;
        }
        for x in 0..=left {
            prefix.push(x);
            go(n, left - x, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, t, &mut Vec::new(), &mut out);
    out
}

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    r
}

fn sub_mod(a: u64, b: u64) -> u64 {
    (a + PRIME - b) % PRIME
}

pub fn rank_mod_p(mut rows: Vec<Vec<u64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = pow_mod(rows[rank][c], PRIME - 2);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = mul_mod(rows[r][c], inv);
                let pivot = rows[rank].clone();
                for (x, &y) in rows[r][c..cols].iter_mut().zip(&pivot[c..cols]) {
                    *x = sub_mod(*x, mul_mod(f, y));
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Matrices indexed `[arrow][row][col]`, shape `dim(head) x dim(tail)`.
pub struct ModRep {
    pub dims: Vec<usize>,
    pub maps: Vec<Vec<Vec<u64>>>,
}

pub fn random_mod_rep(q: &Quiver, dims: &[i64], rng: &mut impl Rng) -> ModRep {
    let dims: Vec<usize> = dims.iter().map(|&d| d as usize).collect();
    let maps = q
        .arrows()
        .iter()
        .map(|a| {
            (0..dims[a.target])
                .map(|_| {
                    (0..dims[a.source])
                        .map(|_| rng.gen_range(0..POOL))
                        .collect()
                })
                .collect()
        })
        .collect();
    ModRep { dims, maps }
}

/// Nullity of `phi -> (W(a) phi(tail) - phi(head) V(a))_a`.
pub fn hom_dim(q: &Quiver, v: &ModRep, w: &ModRep) -> usize {
    let n = q.vertex_count();
    let mut offset = vec![0; n + 1];
    for i in 0..n {
        offset[i + 1] = offset[i] + w.dims[i] * v.dims[i];
    }
    let unknowns = offset[n];
    if unknowns == 0 {
        return 0;
    }
    // phi_i[r][c] lives at offset[i] + r * v.dims[i] + c.
    let var = |i: usize, r: usize, c: usize| offset[i] + r * v.dims[i] + c;
    let mut rows = Vec::new();
    for (ai, a) in q.arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        for r in 0..w.dims[t] {
            for c in 0..v.dims[s] {
                let mut row = vec![0u64; unknowns];
                for k in 0..w.dims[s] {
                    let x = &mut row[var(s, k, c)];
                    *x = (*x + w.maps[ai][r][k]) % PRIME;
                }
                for k in 0..v.dims[t] {
                    let x = &mut row[var(t, r, k)];
                    *x = sub_mod(*x, v.maps[ai][k][c]);
                }
                rows.push(row);
            }
        }
    }
    unknowns - rank_mod_p(rows)
}

/// Minimum of [`hom_dim`] over `samples` random pairs.
pub fn oracle_hom(
    q: &Quiver,
    b: &DimVector,
    d: &DimVector,
    samples: usize,
    rng: &mut impl Rng,
) -> usize {
    (0..samples)
        .map(|_| {
            let v = random_mod_rep(q, b.entries(), rng);
            let w = random_mod_rep(q, d.entries(), rng);
            hom_dim(q, &v, &w)
        })
        .min()
        .unwrap_or(0)
}

/// A random quiver with `1..=max_vertices` vertices and `0..=max_arrows` arrows, loops allowed.
pub fn random_quiver(rng: &mut impl Rng, max_vertices: usize, max_arrows: usize) -> Quiver {
    let n = rng.gen_range(1..=max_vertices);
    let m = rng.gen_range(0..=max_arrows);
    let edges: Vec<(usize, usize)> = (0..m)
        .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
        .collect();
    Quiver::from_edges(n, &edges).unwrap()
}

/// A random instance with nonzero `alpha` (entries `<= max_alpha`),
/// `|theta(i)| <= max_theta` and `theta . alpha = 0`.
pub fn random_balanced_instance(
    rng: &mut impl Rng,
    max_vertices: usize,
    max_arrows: usize,
    max_alpha: i64,
    max_theta: i64,
) -> (Quiver, DimVector, Weight) {
    let q = random_quiver(rng, max_vertices, max_arrows);
    let n = q.vertex_count();
    loop {
        let alpha = DimVector::from_entries((0..n).map(|_| rng.gen_range(0..=max_alpha)).collect());
        let theta = Weight::from_entries(
            (0..n)
                .map(|_| rng.gen_range(-max_theta..=max_theta))
                .collect(),
        );
        if !alpha.is_zero() && theta.pair(&alpha) == 0 {
            return (q, alpha, theta);
        }
    }
}
