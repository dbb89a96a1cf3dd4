//! Weight lattice of type `A_d`.
//!
//! Weights are stored in fundamental-weight coordinates. Root-lattice
//! displacements appear only as [`STuple`]s measured from a base weight,
//! usually the top weight `(m+n-1)ω₁` of the map `f`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// A weight `c₁ω₁ + ... + c_dω_d` of `SL_{d+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct WeightOmega(Vec<i64>);

impl WeightOmega {
    pub fn new(coords: Vec<i64>) -> Self {
        Self(coords)
    }

    /// `c·ω₁` in rank `d`.
    pub fn multiple_of_first(d: usize, c: i64) -> Self {
        let mut coords = vec![0; d];
        if d > 0 {
            coords[0] = c;
        }
        Self(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }
}

impl fmt::Display for WeightOmega {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<i64>> for WeightOmega {
    fn from(coords: Vec<i64>) -> Self {
        Self(coords)
    }
}

/// Coefficients `(s₁,...,s_d)` of the simple roots subtracted from a base weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct STuple(Vec<i64>);

impl STuple {
    pub fn new(s: Vec<i64>) -> Result<Self> {
        if s.iter().any(|&x| x < 0) {
            return Err(Error::NegativeEntry { what: "s-tuple", values: s });
        }
        Ok(Self(s))
    }

    pub fn zero(d: usize) -> Self {
        Self(vec![0; d])
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

    pub fn s1(&self) -> i64 {
        self.0.first().copied().unwrap_or(0)
    }

    /// Profile `h_i = s_i - s_{i+1}`, `h_d = s_d`.
    pub fn profile(&self) -> Vec<i64> {
        let d = self.0.len();
        (0..d)
            .map(|i| self.0[i] - self.0.get(i + 1).copied().unwrap_or(0))
            .collect()
    }
}

impl fmt::Display for STuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        WeightOmega(self.0.clone()).fmt(f)
    }
}

/// Cartan data of type `A_d`: `α_i = 2ω_i - ω_{i-1} - ω_{i+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CartanData {
    d: usize,
}

impl CartanData {
    pub fn new(d: usize) -> Self {
        Self { d }
    }

    pub fn rank(&self) -> usize {
        self.d
    }

    /// Simple root `α_i` (1-based) in ω-coordinates.
    pub fn simple_root(&self, i: usize) -> Vec<i64> {
        assert!(i >= 1 && i <= self.d, "simple root index {i} out of range");
        let mut row = vec![0; self.d];
        row[i - 1] = 2;
        if i >= 2 {
            row[i - 2] = -1;
        }
        if i < self.d {
            row[i] = -1;
        }
        row
    }

    /// Cartan matrix entry `<α_j, α_i^∨>` (0-based indices).
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        if i == j {
            2
        } else if i.abs_diff(j) == 1 {
            -1
        } else {
            0
        }
    }

    /// Solves `Σ c_i α_i = w` over the integers; `None` if `w` is not in the
    /// root lattice.
    pub fn alpha_coordinates(&self, w: &[i64]) -> Option<Vec<i64>> {
        let d = self.d;
        let det = d as i64 + 1;
        let mut out = Vec::with_capacity(d);
        for i in 1..=d {
            // inverse Cartan entry (i,j) is min(i,j)(d+1-max(i,j))/(d+1)
            let num: i64 = (1..=d)
                .map(|j| (i.min(j) * (d + 1 - i.max(j))) as i64 * w[j - 1])
                .sum();
            if num % det != 0 {
                return None;
            }
            out.push(num / det);
        }
        Some(out)
    }

    /// Componentwise floors of the rational α-coordinates of `w`.
    fn alpha_floor(&self, w: &[i64]) -> Vec<i64> {
        let d = self.d;
        let det = d as i64 + 1;
        (1..=d)
            .map(|i| {
                let num: i64 = (1..=d)
                    .map(|j| (i.min(j) * (d + 1 - i.max(j))) as i64 * w[j - 1])
                    .sum();
                Integer::div_floor(&num, &det)
            })
            .collect()
    }
}

/// `base - Σ s_i α_i` in ω-coordinates.
pub fn omega_from_alpha(d: usize, base: &WeightOmega, s: &STuple) -> Result<WeightOmega> {
    if base.rank() != d {
        return Err(Error::DimensionMismatch { expected: d, got: base.rank() });
    }
    if s.len() != d {
        return Err(Error::DimensionMismatch { expected: d, got: s.len() });
    }
    let s = s.as_slice();
    let coords = (0..d)
        .map(|i| {
            let left = if i > 0 { s[i - 1] } else { 0 };
            let right = if i + 1 < d { s[i + 1] } else { 0 };
            base.coords()[i] - 2 * s[i] + left + right
        })
        .collect();
    Ok(WeightOmega(coords))
}

/// Top weight `(m+n-1)ω₁` of both `E = S_{m-1}⊗Δ_{n+d+1}` and `F = S_m⊗Δ_{n+d}`.
pub fn top_weight(m: i64, n: i64, d: usize) -> WeightOmega {
    WeightOmega::multiple_of_first(d, m + n - 1)
}

/// The weight `ν(s) = (m+n-1)ω₁ - Σ s_i α_i`.
pub fn weight_of(m: i64, n: i64, s: &STuple) -> WeightOmega {
    let d = s.len();
    omega_from_alpha(d, &top_weight(m, n, d), s).expect("lengths agree by construction")
}

pub fn is_dominant(w: &WeightOmega) -> bool {
    w.coords().iter().all(|&c| c >= 0)
}

/// All `s` for which `(m+n-1)ω₁ - Σ s_i α_i` is dominant, in lexicographic order.
///
/// Dominance forces `m+n-1 ≥ s₁ ≥ s₂ ≥ ... ≥ s_d ≥ 0`, which bounds the search.
pub fn enumerate_dominant_s(m: i64, n: i64, d: usize) -> Vec<STuple> {
    let top = m + n - 1;
    let mut out = Vec::new();
    if top < 0 || d == 0 {
        return out;
    }
    let base = top_weight(m, n, d);
    let mut s = vec![0i64; d];
    fill_decreasing(&mut s, 0, top, &mut |s| {
        let t = STuple(s.to_vec());
        if is_dominant(&omega_from_alpha(d, &base, &t).expect("lengths agree")) {
            out.push(t);
        }
    });
    out
}

fn fill_decreasing(s: &mut [i64], pos: usize, bound: i64, visit: &mut impl FnMut(&[i64])) {
    if pos == s.len() {
        visit(s);
        return;
    }
    for v in 0..=bound {
        s[pos] = v;
        fill_decreasing(s, pos + 1, v, visit);
    }
}

/// Regime of `μ = mω₁ - (n+d)ω_d` relative to the reflecting wall.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// `n < m`
    Below,
    /// `n = m`
    Wall,
    /// `n > m`
    Above,
}

pub fn regime(m: i64, n: i64) -> Regime {
    match n.cmp(&m) {
        std::cmp::Ordering::Less => Regime::Below,
        std::cmp::Ordering::Equal => Regime::Wall,
        std::cmp::Ordering::Greater => Regime::Above,
    }
}

/// Coordinates in the ε-basis, normalised so the last entry is 0.
fn to_epsilon(w: &[i64]) -> Vec<i64> {
    let d = w.len();
    let mut x = vec![0; d + 1];
    for i in (0..d).rev() {
        x[i] = x[i + 1] + w[i];
    }
    x
}

fn from_epsilon(x: &[i64]) -> Vec<i64> {
    x.windows(2).map(|p| p[0] - p[1]).collect()
}

/// The unique dominant weight in the Weyl orbit of `w`.
pub fn dominant_conjugate(w: &WeightOmega) -> WeightOmega {
    let mut x = to_epsilon(w.coords());
    x.sort_unstable_by(|a, b| b.cmp(a));
    WeightOmega(from_epsilon(&x))
}

/// Size of the Weyl-group orbit of `w`.
pub fn orbit_size(w: &WeightOmega) -> u64 {
    let mut x = to_epsilon(w.coords());
    x.sort_unstable();
    let mut size: u64 = (1..=x.len() as u64).product();
    for run in x.chunk_by(|a, b| a == b) {
        size /= (1..=run.len() as u64).product::<u64>();
    }
    size
}

/// `ν ≤ λ` in the dominance order.
pub fn is_below(nu: &WeightOmega, lambda: &WeightOmega) -> bool {
    let diff: Vec<i64> = lambda.coords().iter().zip(nu.coords()).map(|(a, b)| a - b).collect();
    match CartanData::new(lambda.rank()).alpha_coordinates(&diff) {
        Some(c) => c.iter().all(|&x| x >= 0),
        None => false,
    }
}

/// Dimension of the Weyl character `χ(λ)` by Weyl's formula.
///
/// For dominant `λ` this is `dim V(λ)`. For other weights the polynomial is
/// still evaluated, giving `0` on a wall of the shifted chamber and a signed
/// value elsewhere.
pub fn weyl_dimension(lambda: &WeightOmega) -> BigInt {
    let c = lambda.coords();
    let d = c.len();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..d {
        let mut acc = 0i64;
        for (j, cj) in c.iter().enumerate().skip(i) {
            acc += cj + 1;
            num *= acc;
            den *= (j - i + 1) as i64;
        }
    }
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero(), "Weyl dimension quotient is integral");
    q
}

/// Dominant weight multiplicities of the Weyl module `V(λ)`.
#[derive(Clone, Debug)]
pub struct Character {
    highest: WeightOmega,
    mults: BTreeMap<WeightOmega, u64>,
}

impl Character {
    /// Freudenthal's recursion over all dominant `μ ≤ λ`. A non-dominant `λ`
    /// gives the zero character (`V(λ) = 0`).
    pub fn new(lambda: &WeightOmega) -> Self {
        let mut mults = BTreeMap::new();
        if !is_dominant(lambda) {
            return Self { highest: lambda.clone(), mults };
        }
        let d = lambda.rank();
        let cartan = CartanData::new(d);
        let lam = lambda.coords();

        // dominant μ = λ - Σ c_i α_i, sorted by depth Σ c_i
        let bound = cartan.alpha_floor(lam);
        let mut candidates: Vec<(Vec<i64>, WeightOmega)> = Vec::new();
        let mut c = vec![0i64; d];
        enumerate_box(&mut c, 0, &bound, &mut |c| {
            let mut mu = lam.to_vec();
            for (i, &ci) in c.iter().enumerate() {
                for (j, m) in mu.iter_mut().enumerate() {
                    *m -= ci * cartan.entry(i, j);
                }
            }
            if mu.iter().all(|&x| x >= 0) {
                candidates.push((c.to_vec(), WeightOmega(mu)));
            }
        });
        candidates.sort_by_key(|(c, _)| c.iter().sum::<i64>());

        for (c, mu) in candidates {
            if c.iter().all(|&x| x == 0) {
                mults.insert(mu, 1);
                continue;
            }
            let m = mu.coords();
            let mut sum: i64 = 0;
            for i in 0..d {
                for j in i..d {
                    let pairing: i64 = m[i..=j].iter().sum();
                    let mut step = 1i64;
                    loop {
                        if c[i..=j].iter().any(|&x| x < step) {
                            break;
                        }
                        let mut w = m.to_vec();
                        for l in i..=j {
                            for (t, wt) in w.iter_mut().enumerate() {
                                *wt += step * cartan.entry(l, t);
                            }
                        }
                        let key = dominant_conjugate(&WeightOmega(w));
                        if let Some(&mult) = mults.get(&key) {
                            sum += mult as i64 * (pairing + 2 * step);
                        }
                        step += 1;
                    }
                }
            }
            let denom: i64 = c.iter().zip(lam.iter().zip(m)).map(|(ci, (l, u))| ci * (l + u + 2)).sum();
            let numer = 2 * sum;
            assert!(denom > 0 && numer % denom == 0, "Freudenthal quotient is a nonnegative integer");
            let mult = (numer / denom) as u64;
            if mult > 0 {
                mults.insert(mu, mult);
            }
        }
        Self { highest: lambda.clone(), mults }
    }

    pub fn highest_weight(&self) -> &WeightOmega {
        &self.highest
    }

    /// Multiplicity of an arbitrary weight `ν`.
    pub fn multiplicity(&self, nu: &WeightOmega) -> u64 {
        self.mults.get(&dominant_conjugate(nu)).copied().unwrap_or(0)
    }

    /// Dominant weights with nonzero multiplicity, in increasing order.
    pub fn dominant_weights(&self) -> impl Iterator<Item = (&WeightOmega, u64)> {
        self.mults.iter().map(|(w, &m)| (w, m))
    }

    /// `Σ mult(ν)·|Wν|` over dominant `ν`.
    pub fn dimension(&self) -> u64 {
        self.mults.iter().map(|(w, &m)| m * orbit_size(w)).sum()
    }
}

fn enumerate_box(c: &mut [i64], pos: usize, bound: &[i64], visit: &mut impl FnMut(&[i64])) {
    if pos == c.len() {
        visit(c);
        return;
    }
    for v in 0..=bound[pos].max(-1) {
        c[pos] = v;
        enumerate_box(c, pos + 1, bound, visit);
    }
}

/// Multiplicity of `ν` in the Weyl module `V(λ)`; `0` when `ν ≰ λ` or when
/// `λ` is not dominant.
pub fn freudenthal_multiplicity(lambda: &WeightOmega, nu: &WeightOmega) -> u64 {
    if !is_dominant(lambda) || !is_below(&dominant_conjugate(nu), lambda) {
        return 0;
    }
    Character::new(lambda).multiplicity(nu)
}


#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn omega_from_alpha_is_additive(
            base in proptest::collection::vec(-5i64..6, 3),
            s1 in proptest::collection::vec(0i64..5, 3),
            s2 in proptest::collection::vec(0i64..5, 3),
        ) {
            let base = WeightOmega::new(base);
            let a = STuple::new(s1.clone()).unwrap();
            let b = STuple::new(s2.clone()).unwrap();
            let sum = STuple::new(s1.iter().zip(&s2).map(|(x, y)| x + y).collect()).unwrap();
            let twice = omega_from_alpha(3, &omega_from_alpha(3, &base, &a).unwrap(), &b).unwrap();
            prop_assert_eq!(twice, omega_from_alpha(3, &base, &sum).unwrap());
        }

        #[test]
        fn dominant_conjugate_is_dominant_and_fixed(c in proptest::collection::vec(-6i64..7, 2..5)) {
            let wt = WeightOmega::new(c);
            let dom = dominant_conjugate(&wt);
            prop_assert!(is_dominant(&dom));
            prop_assert_eq!(dominant_conjugate(&dom), dom.clone());
            prop_assert!(is_below(&wt, &dom));
        }
    }
}
