//! Closed forms for the determinant of the square wall matrix (`m = n`).
//!
//! With `Σh = n+k` the wall matrix has rows `C(d,h,n)`, columns `C(d,h,k)`
//! and entries `(n-k; b-b')`. Signs below refer to the ordering in which row
//! `r` is `h - (column r)`, see [`phi_compatible_wall_matrix`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::combinatorics::{
    binomial_signed, compositions, delta, multinomial_nonneg, partial_sum_s, HProfile,
};
use crate::error::{Error, Result};
use crate::matrix::BigMatrix;

fn factorial(n: i64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

fn exact_div(num: BigInt, den: BigInt, what: &'static str) -> Result<BigInt> {
    if den.is_zero() {
        return Err(Error::InexactDivision(what));
    }
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(Error::InexactDivision(what));
    }
    Ok(q)
}

/// `(-1)^{S_{k'}}` with `k'` the largest odd integer `≤ k`.
fn sign(h: &HProfile, k: i64) -> BigInt {
    let k_odd = if k % 2 == 1 { k } else { k - 1 };
    if partial_sum_s(h, k_odd).is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn wall_k(n: i64, h: &HProfile) -> Result<i64> {
    if n < 0 {
        return Err(Error::NegativeTop(n));
    }
    let k = h.total() - n;
    if k < 0 {
        return Err(Error::Hypothesis(format!("Σh = {} < n = {n}", h.total())));
    }
    Ok(k)
}

fn check_wall(n: i64, k: i64, h: &HProfile) -> Result<()> {
    if k < 0 || h.total() != n + k {
        return Err(Error::Hypothesis(format!("need Σh = n+k, got Σh = {}, n = {n}, k = {k}", h.total())));
    }
    Ok(())
}

/// Wall matrix with columns `C(d,h,k)` in decreasing lexicographic order and
/// rows `h - b'` in the same order.
pub fn phi_compatible_wall_matrix(n: i64, h: &HProfile) -> Result<BigMatrix> {
    let k = wall_k(n, h)?;
    let cols = compositions(h, k);
    let rows: Vec<Vec<i64>> =
        cols.iter().map(|c| h.as_slice().iter().zip(c).map(|(hi, ci)| hi - ci).collect()).collect();
    Ok(BigMatrix::from_fn(rows.len(), cols.len(), |i, j| {
        let diff: Vec<i64> = rows[i].iter().zip(&cols[j]).map(|(b, c)| b - c).collect();
        multinomial_nonneg(n - k, &diff)
    }))
}

/// Proctor's evaluation
/// `(-1)^{S_{k'}} Π_{b'∈C(k)} Π b'_i! / Π_{b∈C(n)} Π b_i! · Π_{ℓ=0}^{k} [(ℓ+1)⋯(ℓ+n-k)]^{δ_{k-ℓ}}`.
///
/// Requires `Σh = n+k` and `0 ≤ k ≤ n-2`.
pub fn proctor_det(n: i64, k: i64, h: &HProfile) -> Result<BigInt> {
    check_wall(n, k, h)?;
    if k > n - 2 {
        return Err(Error::Hypothesis(format!("need k ≤ n-2, got n = {n}, k = {k}")));
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for b in compositions(h, k) {
        for &x in &b {
            num *= factorial(x);
        }
    }
    for b in compositions(h, n) {
        for &x in &b {
            den *= factorial(x);
        }
    }
    for ell in 0..=k {
        let rising: BigInt = (ell + 1..=ell + n - k).fold(BigInt::one(), |acc, i| acc * i);
        let e = delta(h, k - ell);
        let pow = num_traits::pow(rising, e.unsigned_abs() as usize);
        if e >= 0 {
            num *= pow;
        } else {
            den *= pow;
        }
    }
    Ok(sign(h, k) * exact_div(num, den, "proctor_det")?)
}

/// `(-1)^{S_{k'}} Π_{b∈C(n)} (n; b) / Π_{b'∈C(k)} (n; b' + (n-k)e_i)`, valid
/// when `h_i ≥ k`. `position` is 1-based.
pub fn generalized_simplified_det(n: i64, k: i64, h: &HProfile, position: usize) -> Result<BigInt> {
    check_wall(n, k, h)?;
    if position == 0 || position > h.len() {
        return Err(Error::DimensionMismatch { expected: h.len(), got: position });
    }
    let hi = h.as_slice()[position - 1];
    if hi < k {
        return Err(Error::Hypothesis(format!("h_{position} = {hi} < k = {k}")));
    }
    let num = compositions(h, n).iter().fold(BigInt::one(), |acc, b| acc * multinomial_nonneg(n, b));
    let den = compositions(h, k).into_iter().fold(BigInt::one(), |acc, mut b| {
        b[position - 1] += n - k;
        acc * multinomial_nonneg(n, &b)
    });
    Ok(sign(h, k) * exact_div(num, den, "simplified_det")?)
}

/// [`generalized_simplified_det`] at the first position (`h₁ ≥ k`).
pub fn simplified_det(n: i64, k: i64, h: &HProfile) -> Result<BigInt> {
    generalized_simplified_det(n, k, h, 1)
}

/// `d_{n,t,k} = Π_{i=0}^{k} binom(n,t-i) / binom(n,i)` for `0 ≤ k ≤ t ≤ n`.
pub fn krattenthaler_det(n: i64, t: i64, k: i64) -> Result<BigInt> {
    if !(0 <= k && k <= t && t <= n) {
        return Err(Error::Hypothesis(format!("need 0 ≤ k ≤ t ≤ n, got n = {n}, t = {t}, k = {k}")));
    }
    let (num, den) = (0..=k).fold((BigInt::one(), BigInt::one()), |(a, b), i| {
        (a * binomial_signed(n, t - i), b * binomial_signed(n, i))
    });
    exact_div(num, den, "krattenthaler_det")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{enumerate_dominant_s, STuple};
    use crate::reduced_matrix::{build_matrix, build_sets, sl3_matrix, Sl3Matrix};
    use num_traits::Signed;

    fn hp(h: &[i64]) -> HProfile {
        HProfile::new(h.to_vec()).unwrap()
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn proctor_examples() {
        assert_eq!(proctor_det(2, 0, &hp(&[1, 1])).unwrap().abs(), big(2));
        assert_eq!(proctor_det(4, 1, &hp(&[2, 2, 1])).unwrap(), big(54));
        assert_eq!(proctor_det(4, 0, &hp(&[2, 2, 0])).unwrap().abs(), big(6));
        assert!(proctor_det(3, 2, &hp(&[3, 2])).is_err());
        assert!(proctor_det(4, 1, &hp(&[2, 2])).is_err());
    }

    #[test]
    fn simplified_examples() {
        assert_eq!(simplified_det(4, 1, &hp(&[2, 2, 1])).unwrap(), big(54));
        assert_eq!(simplified_det(2, 0, &hp(&[1, 1])).unwrap().abs(), big(2));
        assert_eq!(simplified_det(4, 0, &hp(&[2, 2, 0])).unwrap().abs(), big(6));
        assert!(simplified_det(4, 3, &hp(&[2, 2, 3])).is_err());

        // k = 1 > n - 2 = 0, so only the direct determinant applies.
        let h = hp(&[1, 2]);
        let direct = phi_compatible_wall_matrix(2, &h).unwrap().determinant();
        assert_eq!(generalized_simplified_det(2, 1, &h, 2).unwrap(), direct);
        assert_eq!(direct, big(-1));
        assert!(generalized_simplified_det(2, 1, &h, 3).is_err());
    }

    #[test]
    fn krattenthaler_examples() {
        assert_eq!(krattenthaler_det(2, 1, 0).unwrap(), big(2));
        assert_eq!(krattenthaler_det(4, 2, 1).unwrap(), big(6));
        for n in 0..8 {
            assert_eq!(krattenthaler_det(n, 0, 0).unwrap(), big(1));
        }
        assert!(krattenthaler_det(3, 1, 2).is_err());
    }

    fn wall_weights(d: usize, n: i64) -> impl Iterator<Item = (i64, HProfile, STuple)> {
        enumerate_dominant_s(n, n, d).into_iter().filter_map(move |s| {
            let spec = build_sets(n, n, &s).ok()?;
            Some((spec.k, spec.h, s))
        })
    }

    #[test]
    fn closed_forms_match_direct_determinants() {
        for d in 2..=4 {
            for n in 0..=6 {
                for (k, h, s) in wall_weights(d, n) {
                    let direct = build_matrix(&build_sets(n, n, &s).unwrap()).determinant();
                    let phi = phi_compatible_wall_matrix(n, &h).unwrap().determinant();
                    assert_eq!(direct.abs(), phi.abs());
                    if k <= n - 2 {
                        let p = proctor_det(n, k, &h).unwrap();
                        assert_eq!(p, phi, "d={d} n={n} h={h:?}");
                    }
                    for i in 1..=d {
                        if h.as_slice()[i - 1] >= k {
                            assert_eq!(generalized_simplified_det(n, k, &h, i).unwrap(), phi, "d={d} n={n} h={h:?} i={i}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn krattenthaler_matches_sl3() {
        for n in 0..=10 {
            for t in 0..=n {
                for k in 0..=t {
                    let Sl3Matrix::Matrix(mat) = sl3_matrix(n, n, t, k).unwrap() else {
                        panic!("wall matrix expected for n={n} t={t} k={k}");
                    };
                    let det = mat.determinant();
                    assert_eq!(krattenthaler_det(n, t, k).unwrap(), det.abs());
                    if k <= n - 2 && t <= n + k && n + k - t >= 0 {
                        let h = hp(&[n + k - t, t]);
                        assert_eq!(proctor_det(n, k, &h).unwrap().abs(), det.abs());
                    }
                }
            }
        }
    }
}
