//! Brute-force weight spaces of `f : E → F` on raw monomials.
//!
//! `E = S_{m-1} ⊗ Δ_{n+d+1}` and `F = S_m ⊗ Δ_{n+d}`. A monomial
//! `X^a Y^{-1-b}` of weight `ν(s)` satisfies `a_i + b_i = t_i` for the target
//! `t = (m+n-1-s₁, s₁-s₂, …, s_d)`, so it is determined by `b`. Nothing here
//! uses the index sets or change of basis of [`crate::reduced_matrix`].

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::lattice::STuple;
use crate::matrix::BigMatrix;
use crate::snf::{cokernel, CokernelStructure};

/// `X^a ⊗ Y^{-1-b}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
}

/// `(m+n-1-s₁, s₁-s₂, …, s_{d-1}-s_d, s_d)`; entries may be negative.
pub fn weight_target(m: i64, n: i64, s: &STuple) -> Vec<i64> {
    let s = s.as_slice();
    let mut t = Vec::with_capacity(s.len() + 1);
    t.push(m + n - 1 - s[0]);
    for i in 0..s.len() {
        t.push(s[i] - s.get(i + 1).copied().unwrap_or(0));
    }
    t
}

/// All `b` with `0 ≤ b ≤ t` and `Σb = total`, lexicographically increasing.
fn bounded_tuples(t: &[i64], total: i64) -> Vec<Vec<i64>> {
    fn go(t: &[i64], rest: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let i = cur.len();
        if i == t.len() {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for x in 0..=t[i].min(rest) {
            cur.push(x);
            go(t, rest - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if total >= 0 && t.iter().all(|&x| x >= 0) {
        go(t, total, &mut Vec::with_capacity(t.len()), &mut out);
    }
    out
}

fn basis(t: &[i64], b_total: i64) -> Vec<Monomial> {
    bounded_tuples(t, b_total)
        .into_iter()
        .map(|b| Monomial { a: t.iter().zip(&b).map(|(x, y)| x - y).collect(), b })
        .collect()
}

/// Monomials of `E_ν`: `Σa = m-1`, `Σb = n`.
pub fn basis_e(m: i64, n: i64, s: &STuple) -> Vec<Monomial> {
    basis(&weight_target(m, n, s), n)
}

/// Monomials of `F_ν`: `Σa = m`, `Σb = n-1`.
pub fn basis_f(m: i64, n: i64, s: &STuple) -> Vec<Monomial> {
    basis(&weight_target(m, n, s), n - 1)
}

/// Matrix of `f_ν` with rows indexed by `E_ν` and columns by `F_ν`.
/// `X^a Y^{-1-b} ↦ Σ_{b_i ≥ 1} X^{a+e_i} Y^{-1-(b-e_i)}`.
pub fn full_map_matrix(m: i64, n: i64, s: &STuple) -> BigMatrix {
    let e = basis_e(m, n, s);
    let f = basis_f(m, n, s);
    let mut mat = BigMatrix::zeros(e.len(), f.len());
    for (r, mono) in e.iter().enumerate() {
        for i in 0..mono.b.len() {
            if mono.b[i] == 0 {
                continue;
            }
            let mut c = mono.b.clone();
            c[i] -= 1;
            let col = f.binary_search_by(|x| x.b.cmp(&c)).expect("image lies in F_ν");
            mat.set(r, col, 1.into());
        }
    }
    mat
}

/// `(rank ker f_ν, coker f_ν)` straight from the monomial matrix.
pub fn direct_cohomology(m: i64, n: i64, s: &STuple) -> (usize, CokernelStructure) {
    let mat = full_map_matrix(m, n, s);
    let coker = cokernel(&mat);
    let rank = mat.cols() - coker.free_rank;
    (mat.rows() - rank, coker)
}

fn reverse_lex(x: &[i64], y: &[i64]) -> Ordering {
    x.iter().rev().cmp(y.iter().rev())
}

/// Below the threshold, checks that pairing `b ∈ E_ν` with `b - e₀ ∈ F_ν`
/// and ordering both by reverse-lexicographic `b` makes `f_ν` lower
/// unitriangular.
pub fn triangularity_check(m: i64, n: i64, s: &STuple) -> Result<bool> {
    let s1 = s.s1();
    let threshold = m.min(n);
    if s1 >= threshold {
        return Err(Error::Hypothesis(format!("triangular case needs s1 < {threshold}, got {s1}")));
    }
    let e = basis_e(m, n, s);
    let f = basis_f(m, n, s);
    if e.len() != f.len() {
        return Ok(false);
    }
    let mat = full_map_matrix(m, n, s);

    let mut rows: Vec<usize> = (0..e.len()).collect();
    rows.sort_by(|&i, &j| reverse_lex(&e[i].b, &e[j].b));
    let shifted: Vec<Vec<i64>> = f
        .iter()
        .map(|x| {
            let mut c = x.b.clone();
            c[0] += 1;
            c
        })
        .collect();
    let mut cols: Vec<usize> = (0..f.len()).collect();
    cols.sort_by(|&i, &j| reverse_lex(&shifted[i], &shifted[j]));
    if rows.iter().zip(&cols).any(|(&r, &c)| e[r].b != shifted[c]) {
        return Ok(false);
    }

    let p = mat.permuted(&rows, &cols);
    for i in 0..p.rows() {
        for j in i..p.cols() {
            let expect = if i == j { 1 } else { 0 };
            if *p.get(i, j) != expect.into() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
