#![allow(dead_code)]

use connsum_core::face::Face;
use connsum_core::matrix::IntegerMatrix;
use connsum_core::simplicial::{FaceSubset, SimplicialComplex};
use connsum_core::tor::SubringSpec;

pub fn cx(m: usize, facets: &[&[usize]]) -> SimplicialComplex {
    SimplicialComplex::from_vertex_lists(m, facets).unwrap()
}

pub fn face(m: usize, v: &[usize]) -> Face {
    Face::from_vertices(m, v.iter().copied()).unwrap()
}

pub fn spec(rows: &[Vec<i64>]) -> SubringSpec {
    SubringSpec::new(IntegerMatrix::from_rows(rows).unwrap()).unwrap()
}

/// The pentagon 1-4-3-5-2.
pub fn example_k1() -> SimplicialComplex {
    cx(5, &[&[1, 4], &[4, 3], &[3, 5], &[5, 2], &[2, 1]])
}

/// The triangle on {2,3,5}; 1 and 4 are ghosts.
pub fn example_k2() -> SimplicialComplex {
    cx(5, &[&[2, 3], &[3, 5], &[5, 2]])
}

/// The path 3-5-2.
pub fn example_w() -> SimplicialComplex {
    cx(5, &[&[3, 5], &[5, 2]])
}

/// The 4-cycle 1-4-3-2 with 5 a ghost.
pub fn example_k() -> SimplicialComplex {
    cx(5, &[&[1, 4], &[4, 3], &[3, 2], &[2, 1]])
}

/// Strong choice of `Z`: the open star of vertex 5.
pub fn example_z() -> FaceSubset {
    FaceSubset::new(5, [face(5, &[5]), face(5, &[3, 5]), face(5, &[2, 5])]).unwrap()
}

pub fn example_b() -> Vec<Vec<i64>> {
    vec![vec![1, 0, -2, 0, -1], vec![0, 2, 0, -1, 1]]
}

/// Exponent vectors of total degree `e` on `m` variables whose support is a face of `k`.
pub fn oracle_monomials(k: &SimplicialComplex, e: usize) -> Vec<Vec<u32>> {
    fn rec(i: usize, m: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == m {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for a in 0..=left {
            cur.push(a as u32);
            rec(i + 1, m, left - a, cur, out);
            cur.pop();
        }
    }
    let m = k.vertex_count();
    let mut all = Vec::new();
    rec(0, m, e, &mut Vec::new(), &mut all);
    all.into_iter()
        .filter(|a| {
            let support = (0..m).filter(|&i| a[i] > 0).map(|i| i + 1);
            k.contains(Face::from_vertices(m, support).unwrap())
        })
        .collect()
}

fn rank_mod(mut a: Vec<Vec<i64>>, p: i64) -> usize {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let inv = |x: i64| {
        let (mut r, mut base, mut e) = (1i64, x.rem_euclid(p), p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        r
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r][c].rem_euclid(p) != 0) else { continue };
        a.swap(rank, piv);
        let iv = inv(a[rank][c]);
        let pivot = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != rank {
                let f = row[c].rem_euclid(p) * iv % p;
                if f != 0 {
                    for (x, y) in row.iter_mut().zip(&pivot) {
                        *x = (*x - f * y).rem_euclid(p);
                    }
                }
            }
        }
        rank += 1;
    }
    rank
}

fn subsets_of_size(n: usize, p: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|s| s.count_ones() as usize == p).map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect()).collect()
}

/// `dim_{F_p} H_q(Z[K] ⊗ Koszul(u) ⊗ F_p)` in monomial degree `d`, from dense matrices.
pub fn oracle_koszul_dim(k: &SimplicialComplex, b: &[Vec<i64>], q: usize, d: usize, prime: i64) -> usize {
    let n = b.len();
    let m = k.vertex_count();
    // matrix of C_{p,d} -> C_{p-1,d}
    let differential = |p: usize| -> (usize, usize, Vec<Vec<i64>>) {
        if p > d || p > n || p == 0 {
            let src = if p <= d && p <= n { subsets_of_size(n, p).len() * oracle_monomials(k, d - p).len() } else { 0 };
            let tgt = if p >= 1 && p - 1 <= d && p - 1 <= n {
                subsets_of_size(n, p - 1).len() * oracle_monomials(k, d + 1 - p).len()
            } else {
                0
            };
            return (tgt, src, vec![vec![0; src]; tgt]);
        }
        let src_ext = subsets_of_size(n, p);
        let tgt_ext = subsets_of_size(n, p - 1);
        let src_mon = oracle_monomials(k, d - p);
        let tgt_mon = oracle_monomials(k, d - p + 1);
        let rows = tgt_ext.len() * tgt_mon.len();
        let cols = src_ext.len() * src_mon.len();
        let mut mat = vec![vec![0i64; cols]; rows];
        for (si, sub) in src_ext.iter().enumerate() {
            for (mi, mono) in src_mon.iter().enumerate() {
                let col = si * src_mon.len() + mi;
                for (pos, &i) in sub.iter().enumerate() {
                    let sign = if pos % 2 == 0 { 1 } else { -1 };
                    let rest: Vec<usize> = sub.iter().copied().filter(|&x| x != i).collect();
                    let ti = tgt_ext.iter().position(|t| *t == rest).unwrap();
                    for j in 0..m {
                        if b[i][j] == 0 {
                            continue;
                        }
                        let mut prod = mono.clone();
                        prod[j] += 1;
                        if let Some(tm) = tgt_mon.iter().position(|t| *t == prod) {
                            mat[ti * tgt_mon.len() + tm][col] += sign * b[i][j];
                        }
                    }
                }
            }
        }
        (rows, cols, mat)
    };
    let (_, cols_q, d_q) = differential(q);
    let (_, _, d_next) = differential(q + 1);
    let dim = if q <= d && q <= n { subsets_of_size(n, q).len() * oracle_monomials(k, d - q).len() } else { 0 };
    assert_eq!(cols_q, dim);
    let rank_out = if q == 0 { 0 } else { rank_mod(d_q, prime) };
    let rank_in = rank_mod(d_next, prime);
    dim - rank_out - rank_in
}
