//! Smith normal form over `ℤ` and the invariants read off from it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::BigMatrix;

/// Diagonal of the Smith normal form: `d₁ | d₂ | ... | d_r`, all positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

/// Finitely generated abelian group `ℤ^free_rank ⊕ ⊕ ℤ/d_i`, `1 < d₁ | d₂ | ...`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CokernelStructure {
    pub free_rank: usize,
    #[serde(serialize_with = "serialize_decimal")]
    pub invariant_factors: Vec<BigInt>,
}

fn serialize_decimal<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl CokernelStructure {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self { free_rank: rank, invariant_factors: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// `dim (G ⊗ F_p)`: the free rank plus the factors divisible by `p`.
    pub fn dim_mod_p(&self, p: u64) -> usize {
        let p = BigInt::from(p);
        self.free_rank + self.invariant_factors.iter().filter(|d| (*d % &p).is_zero()).count()
    }

    /// Number of cyclic factors with order divisible by `p`, i.e. `dim Tor(F_p, G)`.
    pub fn p_torsion_count(&self, p: u64) -> usize {
        let p = BigInt::from(p);
        self.invariant_factors.iter().filter(|d| (*d % &p).is_zero()).count()
    }

    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }
}

/// Smith normal form of `m` by repeated minimal-pivot Euclidean elimination.
pub fn smith(m: &BigMatrix) -> SmithForm {
    let mut a = m.to_rows();
    let rows = m.rows();
    let cols = m.cols();
    let mut diagonal = Vec::new();

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&a, t..rows, t..cols) else {
            break;
        };
        move_pivot(&mut a, t, pi, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let (head, tail) = a.split_at_mut(i);
                let pivot_row = &head[t];
                for (x, p) in tail[0][t..].iter_mut().zip(&pivot_row[t..]) {
                    if !p.is_zero() {
                        *x -= &q * p;
                    }
                }
                dirty |= !tail[0][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a[t..].iter_mut() {
                    if !row[t].is_zero() {
                        let delta = &q * &row[t];
                        row[j] -= delta;
                    }
                }
                dirty |= !a[t][j].is_zero();
            }
            if dirty {
                // a remainder smaller than the pivot survived in row or column t
                let (pi, pj) = min_abs_cross(&a, t, rows, cols);
                move_pivot(&mut a, t, pi, pj);
                continue;
            }
            let p = a[t][t].clone();
            let offender = (t + 1..rows).find(|&i| a[i][t + 1..].iter().any(|x| !(x % &p).is_zero()));
            match offender {
                Some(i) => {
                    let (head, tail) = a.split_at_mut(i);
                    for (x, y) in head[t][t..].iter_mut().zip(&tail[0][t..]) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        diagonal.push(a[t][t].abs());
    }
    debug_assert!(diagonal.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
    SmithForm { diagonal }
}

fn min_abs_entry(
    a: &[Vec<BigInt>],
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in rows {
        for j in cols.clone() {
            let v = &a[i][j];
            if v.is_zero() {
                continue;
            }
            let av = v.abs();
            let better = match &best {
                None => true,
                Some((_, _, b)) => av < *b,
            };
            if better {
                let unit = av.is_one();
                best = Some((i, j, av));
                if unit {
                    return best.map(|(i, j, _)| (i, j));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn min_abs_cross(a: &[Vec<BigInt>], t: usize, rows: usize, cols: usize) -> (usize, usize) {
    let mut best = (t, t, a[t][t].abs());
    for (i, row) in a.iter().enumerate().take(rows).skip(t + 1) {
        let v = row[t].abs();
        if !v.is_zero() && v < best.2 {
            best = (i, t, v);
        }
    }
    for (j, x) in a[t].iter().enumerate().take(cols).skip(t + 1) {
        let v = x.abs();
        if !v.is_zero() && v < best.2 {
            best = (t, j, v);
        }
    }
    (best.0, best.1)
}

fn move_pivot(a: &mut [Vec<BigInt>], t: usize, pi: usize, pj: usize) {
    a.swap(t, pi);
    if pj != t {
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
    }
}

/// Cokernel of the map whose matrix has one row per generator of the domain:
/// `ℤ^rows → ℤ^cols`, `x ↦ x·M`.
pub fn cokernel(m: &BigMatrix) -> CokernelStructure {
    let snf = smith(m);
    CokernelStructure {
        free_rank: m.cols() - snf.rank(),
        invariant_factors: snf.diagonal.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2;
    while q * q <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

/// `p`-adic valuation; `None` for zero.
pub fn valuation(x: &BigInt, p: u64) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        x = q;
        v += 1;
    }
}

/// Rank over `F_p` by Gaussian elimination.
pub fn rank_mod_p(m: &BigMatrix, p: u64) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let bp = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| x.mod_floor(&bp).to_u64().expect("residue fits in u64"))
                .collect()
        })
        .collect();
    let p128 = p as u128;
    let mut rank = 0;
    for col in 0..m.cols() {
        let Some(piv) = (rank..m.rows()).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = pow_mod(a[rank][col], p - 2, p);
        for x in a[rank].iter_mut() {
            *x = ((*x as u128 * inv as u128) % p128) as u64;
        }
        for i in 0..m.rows() {
            if i == rank || a[i][col] == 0 {
                continue;
            }
            let f = a[i][col] as u128;
            let (head, tail) = if i < rank { a.split_at_mut(rank) } else { a.split_at_mut(i) };
            let (target, pivot) = if i < rank { (&mut head[i], &tail[0]) } else { (&mut tail[0], &head[rank]) };
            for (x, y) in target.iter_mut().zip(pivot.iter()) {
                let sub = (f * *y as u128) % p128;
                *x = ((*x as u128 + p128 - sub) % p128) as u64;
            }
        }
        rank += 1;
    }
    Ok(rank)
}

fn pow_mod(b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut base = b as u128 % p as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    acc as u64
}

/// `#cols - rank_p(M)`: dimension of the cokernel after base change to `F_p`.
pub fn coker_dim_mod_p(m: &BigMatrix, p: u64) -> Result<usize> {
    Ok(m.cols() - rank_mod_p(m, p)?)
}
