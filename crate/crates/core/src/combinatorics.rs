//! Multinomial coefficients and bounded compositions `C(d,h,ℓ)`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::STuple;

/// A composition `(b₁,...,b_d)`; rows and columns of every matrix are indexed by these.
pub type Composition = Vec<i64>;

/// Upper bounds `h = (h₁,...,h_d)` with `h_i = s_i - s_{i+1}` and `h_d = s_d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct HProfile(Vec<i64>);

impl HProfile {
    pub fn new(h: Vec<i64>) -> Result<Self> {
        if h.iter().any(|&x| x < 0) {
            return Err(Error::NegativeEntry { what: "h-profile", values: h });
        }
        Ok(Self(h))
    }

    /// Profile of `s`; fails when `s` is not weakly decreasing.
    pub fn from_s(s: &STuple) -> Result<Self> {
        Self::new(s.profile())
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `Σ h_i`, which equals `s₁`.
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Binomial coefficient with `0` outside `0 ≤ k ≤ n`.
pub fn binomial_signed(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    BigInt::from(binomial(n as u64, k as u64))
}

/// `top! / Π parts_i!`, or `0` when a part is negative or the parts do not
/// sum to `top`.
pub fn multinomial(top: i64, parts: &[i64]) -> Result<BigInt> {
    if top < 0 {
        return Err(Error::NegativeTop(top));
    }
    Ok(multinomial_nonneg(top, parts))
}

pub(crate) fn multinomial_nonneg(top: i64, parts: &[i64]) -> BigInt {
    debug_assert!(top >= 0);
    if parts.iter().any(|&p| p < 0) || parts.iter().sum::<i64>() != top {
        return BigInt::zero();
    }
    let mut remaining = top as u64;
    let mut acc = BigUint::one();
    for &p in parts {
        acc *= binomial(remaining, p as u64);
        remaining -= p as u64;
    }
    BigInt::from(acc)
}

/// `C(d,h,ℓ)`: compositions of `ℓ` with `b_i ≤ h_i`, in decreasing
/// lexicographic order (largest `b₁` first).
pub fn compositions(h: &HProfile, ell: i64) -> Vec<Composition> {
    let mut out = Vec::new();
    let h = h.as_slice();
    if ell < 0 || ell > h.iter().sum::<i64>() {
        return out;
    }
    // suffix[i] = Σ_{j ≥ i} h_j
    let mut suffix = vec![0i64; h.len() + 1];
    for i in (0..h.len()).rev() {
        suffix[i] = suffix[i + 1] + h[i];
    }
    let mut cur = vec![0i64; h.len()];
    fill(h, &suffix, 0, ell, &mut cur, &mut out);
    out
}

fn fill(h: &[i64], suffix: &[i64], pos: usize, rest: i64, cur: &mut Vec<i64>, out: &mut Vec<Composition>) {
    if pos == h.len() {
        if rest == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let hi = h[pos].min(rest);
    let lo = (rest - suffix[pos + 1]).max(0);
    for v in (lo..=hi).rev() {
        cur[pos] = v;
        fill(h, suffix, pos + 1, rest - v, cur, out);
    }
}

/// `|C(d,h,ℓ)|` by dynamic programming.
pub fn count_compositions(h: &HProfile, ell: i64) -> u64 {
    if ell < 0 {
        return 0;
    }
    let ell = ell as usize;
    let mut ways = vec![0u64; ell + 1];
    ways[0] = 1;
    for &bound in h.as_slice() {
        let mut next = vec![0u64; ell + 1];
        for (total, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for b in 0..=bound as usize {
                if total + b > ell {
                    break;
                }
                next[total + b] += w;
            }
        }
        ways = next;
    }
    ways[ell]
}

/// `δ_ℓ = |C(d,h,ℓ)| - |C(d,h,ℓ-1)|`.
pub fn delta(h: &HProfile, ell: i64) -> i64 {
    count_compositions(h, ell) as i64 - count_compositions(h, ell - 1) as i64
}

/// `S_ℓ = |C(d,h,0)| + ... + |C(d,h,ℓ)|`; `0` for negative `ℓ`.
pub fn partial_sum_s(h: &HProfile, ell: i64) -> u64 {
    (0..=ell).map(|j| count_compositions(h, j)).sum()
}

/// `|{b ∈ C(d,h,k) : b₁ = ℓ}|`, which equals `δ_{k-ℓ}` when `h₁ ≥ k`.
pub fn delta_via_slice(h: &HProfile, k: i64, ell: i64) -> Result<u64> {
    let h1 = h.as_slice().first().copied().unwrap_or(0);
    if h1 < k {
        return Err(Error::Hypothesis(format!("h1 = {h1} < k = {k}")));
    }
    if ell < 0 || ell > k {
        return Err(Error::Hypothesis(format!("slice index {ell} outside 0..={k}")));
    }
    let tail = HProfile(h.as_slice()[1..].to_vec());
    Ok(count_compositions(&tail, k - ell))
}

/// `b ↦ h - b`, the involution exchanging `C(d,h,ℓ)` and `C(d,h,Σh-ℓ)`.
pub fn complement_bijection(h: &HProfile, b: &[i64]) -> Result<Composition> {
    if b.len() != h.len() {
        return Err(Error::DimensionMismatch { expected: h.len(), got: b.len() });
    }
    if b.iter().zip(h.as_slice()).any(|(&bi, &hi)| bi < 0 || bi > hi) {
        return Err(Error::Hypothesis(format!("{b:?} is not bounded by {:?}", h.as_slice())));
    }
    Ok(h.as_slice().iter().zip(b).map(|(hi, bi)| hi - bi).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hp(h: &[i64]) -> HProfile {
        HProfile::new(h.to_vec()).unwrap()
    }

    fn mn(top: i64, parts: &[i64]) -> BigInt {
        multinomial(top, parts).unwrap()
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(mn(4, &[2, 1, 1]), BigInt::from(12));
        assert_eq!(mn(3, &[1, -1, 3]), BigInt::zero());
        assert_eq!(mn(4, &[2, 2, 0]), BigInt::from(6));
        assert_eq!(mn(4, &[2, 1]), BigInt::zero());
        assert_eq!(mn(0, &[0, 0]), BigInt::one());
        assert_eq!(multinomial(-1, &[]), Err(Error::NegativeTop(-1)));
    }

    #[test]
    fn compositions_examples() {
        assert_eq!(compositions(&hp(&[1, 1]), 2), vec![vec![1, 1]]);
        assert_eq!(
            compositions(&hp(&[2, 2, 1]), 1),
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]
        );
        assert!(compositions(&hp(&[2, 2, 1]), -1).is_empty());
        assert!(compositions(&hp(&[2, 2, 1]), 6).is_empty());
        assert_eq!(
            compositions(&hp(&[2, 2, 1]), 4),
            vec![vec![2, 2, 0], vec![2, 1, 1], vec![1, 2, 1]]
        );
    }

    #[test]
    fn counts() {
        let h = hp(&[2, 2, 1]);
        assert_eq!(delta(&h, 0), 1);
        assert_eq!(delta(&h, 1), 2);
        assert_eq!(partial_sum_s(&h, 1), 4);
        assert_eq!(partial_sum_s(&h, -1), 0);
        assert_eq!(delta(&hp(&[0, 0]), 0), 1);
    }

    #[test]
    fn slice_examples() {
        let h = hp(&[2, 1]);
        assert_eq!(delta_via_slice(&h, 1, 1).unwrap(), 1);
        assert_eq!(delta_via_slice(&h, 1, 0).unwrap(), 1);
        assert_eq!(delta_via_slice(&hp(&[0, 0]), 0, 0).unwrap(), 1);
        assert!(delta_via_slice(&hp(&[1, 3]), 2, 0).is_err());
    }

    #[test]
    fn complement_examples() {
        assert_eq!(complement_bijection(&hp(&[1, 1]), &[1, 1]).unwrap(), vec![0, 0]);
        assert_eq!(complement_bijection(&hp(&[2, 2, 1]), &[2, 2, 0]).unwrap(), vec![0, 0, 1]);
        assert!(complement_bijection(&hp(&[2, 2, 1]), &[3, 0, 0]).is_err());
    }

    fn all_profiles(d: usize, max: i64) -> Vec<HProfile> {
        let mut out = vec![vec![]];
        for _ in 0..d {
            out = out
                .into_iter()
                .flat_map(|p: Vec<i64>| (0..=max).map(move |x| [p.clone(), vec![x]].concat()))
                .collect();
        }
        out.into_iter().map(HProfile).collect()
    }

    #[test]
    fn slice_identity_exhaustive() {
        for d in 1..=4 {
            for h in all_profiles(d, 5) {
                let h1 = h.as_slice()[0];
                for k in 0..=h1 {
                    for ell in 0..=k {
                        assert_eq!(
                            delta_via_slice(&h, k, ell).unwrap() as i64,
                            delta(&h, k - ell),
                            "h={h:?} k={k} ell={ell}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn complement_symmetry_and_involution() {
        for d in 1..=3 {
            for h in all_profiles(d, 3) {
                let total = h.total();
                for ell in 0..=total {
                    let c = compositions(&h, ell);
                    assert_eq!(c.len() as u64, count_compositions(&h, ell));
                    assert_eq!(c.len(), compositions(&h, total - ell).len());
                    for b in &c {
                        let image = complement_bijection(&h, b).unwrap();
                        assert_eq!(image.iter().sum::<i64>(), total - ell);
                        assert_eq!(&complement_bijection(&h, &image).unwrap(), b);
                    }
                    assert_eq!(
                        partial_sum_s(&h, ell) - partial_sum_s(&h, ell - 1),
                        count_compositions(&h, ell)
                    );
                }
            }
        }
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn pascal_recurrence(parts in proptest::collection::vec(0i64..5, 1..5)) {
            let top: i64 = parts.iter().sum();
            prop_assume!(top >= 1);
            let mut sum = BigInt::zero();
            for i in 0..parts.len() {
                if parts[i] >= 1 {
                    let mut lower = parts.clone();
                    lower[i] -= 1;
                    sum += multinomial(top - 1, &lower).unwrap();
                }
            }
            prop_assert_eq!(multinomial(top, &parts).unwrap(), sum);
        }

        #[test]
        fn compositions_are_sorted_and_bounded(
            h in proptest::collection::vec(0i64..4, 1..5),
            ell in 0i64..10,
        ) {
            let h = HProfile::new(h).unwrap();
            let c = compositions(&h, ell);
            prop_assert!(c.windows(2).all(|w| w[0] > w[1]));
            for b in &c {
                prop_assert_eq!(b.iter().sum::<i64>(), ell);
                prop_assert!(b.iter().zip(h.as_slice()).all(|(x, y)| 0 <= *x && x <= y));
            }
        }
    }
}
