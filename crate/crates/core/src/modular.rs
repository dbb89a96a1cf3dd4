//! Characteristic `p`: weight multiplicities of `H^{d-1}` and `H^d` over
//! `F_p`, the torsion corollaries, Doty's digit description of the factors
//! of `H⁰(m,0)` for `SL₃`, and a character-level check of the sequence
//! `0 → K → V(r, n-2r-2) → H²(n,-n-2) → 0`.
//!
//! Every mod-`p` multiplicity is read off the integral Smith form:
//! `dim H^d_{F_p} = free rank + #{d_i : p | d_i}` and
//! `dim H^{d-1}_{F_p} = rank ker + #{d_i : p | d_i}`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::combinatorics::binomial_signed;
use crate::determinants::krattenthaler_det;
use crate::error::{Error, Result};
use crate::lattice::{is_below, is_dominant, weight_of, CartanData, Character, STuple, WeightOmega};
use crate::reduced_matrix::{scan, weight_space_report, WeightSpaceReport};
use crate::snf::{is_prime, valuation};
use crate::sweep::Execution;

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// One dominant weight with its mod-`p` multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityRow {
    pub report: WeightSpaceReport,
    /// `p ↦ dim H^d_{F_p}(μ)_ν`.
    pub top: BTreeMap<u64, usize>,
    /// `p ↦ dim H^{d-1}_{F_p}(μ)_ν`.
    pub lower: BTreeMap<u64, usize>,
}

/// Rows for every dominant weight, in lexicographic `s` order.
pub fn multiplicity_report(m: i64, n: i64, d: usize, primes: &[u64], exec: Execution) -> Result<Vec<MultiplicityRow>> {
    for &p in primes {
        require_prime(p)?;
    }
    Ok(scan(m, n, d, exec)
        .into_iter()
        .map(|report| MultiplicityRow {
            top: primes.iter().map(|&p| (p, report.top_dim_mod_p(p))).collect(),
            lower: primes.iter().map(|&p| (p, report.lower_dim_mod_p(p))).collect(),
            report,
        })
        .collect())
}

/// Weights where `H^d ⊗ F_p` is nonzero, with their multiplicities.
pub fn nonzero_top_weights(rows: &[MultiplicityRow], p: u64) -> Vec<(WeightOmega, usize)> {
    rows.iter()
        .filter_map(|r| {
            let k = r.top.get(&p).copied().unwrap_or_else(|| r.report.top_dim_mod_p(p));
            (k > 0).then(|| (r.report.omega.clone(), k))
        })
        .collect()
}

/// On the wall `m = n` with `p > n`, no invariant factor is divisible by `p`.
pub fn no_p_torsion_check(n: i64, d: usize, p: u64, exec: Execution) -> Result<bool> {
    require_prime(p)?;
    if p as i64 <= n {
        return Err(Error::Hypothesis(format!("need p > n, got p = {p}, n = {n}")));
    }
    Ok(scan(n, n, d, exec).iter().all(|r| r.cokernel.p_torsion_count(p) == 0))
}

/// `λ₀ = (0,p-2,1,0,…,0)`, or `(0,p-2)` when `d = 2`.
pub fn epp_lambda0(p: u64, d: usize) -> WeightOmega {
    let mut c = vec![0i64; d];
    c[1] = p as i64 - 2;
    if d >= 3 {
        c[2] = 1;
    }
    WeightOmega::new(c)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EppReport {
    pub p: u64,
    pub d: usize,
    pub lambda0: WeightOmega,
    /// Nonzero weights of `H^d ⊗ F_p` for `m = n = p`.
    pub observed: Vec<(WeightOmega, usize)>,
    /// Dominant weights `ν ≤ λ₀`.
    pub expected: Vec<WeightOmega>,
    /// `v_p(det)` of the wall matrix at each observed weight.
    pub valuations: Vec<Option<u32>>,
}

impl EppReport {
    pub fn holds(&self) -> bool {
        let observed: BTreeSet<&WeightOmega> = self.observed.iter().map(|(w, _)| w).collect();
        let expected: BTreeSet<&WeightOmega> = self.expected.iter().collect();
        observed == expected
            && self.observed.iter().all(|(_, k)| *k == 1)
            && self.valuations.iter().all(|v| *v == Some(1))
    }
}

/// For `m = n = p`, compares the nonzero weights of `H^d ⊗ F_p` with the
/// dominant weights below `λ₀`.
pub fn epp_check(p: u64, d: usize, exec: Execution) -> Result<EppReport> {
    require_prime(p)?;
    if d < 2 {
        return Err(Error::RankTooSmall(d));
    }
    let n = p as i64;
    let lambda0 = epp_lambda0(p, d);
    let reports = scan(n, n, d, exec);
    let mut observed = Vec::new();
    let mut valuations = Vec::new();
    for r in &reports {
        let k = r.top_dim_mod_p(p);
        if k > 0 {
            observed.push((r.omega.clone(), k));
            let det = r.matrix.as_ref().map_or_else(BigInt::zero, |m| m.determinant());
            valuations.push(valuation(&det, p));
        }
    }
    let expected = Character::new(&lambda0).dominant_weights().map(|(w, _)| w.clone()).collect();
    Ok(EppReport { p, d, lambda0, observed, expected, valuations })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaRReport {
    pub n: i64,
    pub s: STuple,
    pub omega: WeightOmega,
    pub multiplicity: usize,
}

/// The weight `λ_r` of `H^d(p+r, …)` and its mod-`p` multiplicity.
///
/// Case (i), `0 ≤ r ≤ p-2`: `λ_r = (-1,n,0,…) - (r+1)α₂`.
/// Case (ii), `r = p-1`, `d ≥ 3`: `λ_r = (-1,n,0,…) - pα₂ - α₃`.
pub fn lambda_r_check(p: u64, d: usize, r: i64) -> Result<LambdaRReport> {
    require_prime(p)?;
    if d < 2 {
        return Err(Error::RankTooSmall(d));
    }
    let pi = p as i64;
    let n = pi + r;
    let cartan = CartanData::new(d);
    let mut lambda = vec![0i64; d];
    lambda[0] = -1;
    lambda[1] = n;
    let mut s = vec![0i64; d];
    s[0] = n;
    let sub = |w: &mut Vec<i64>, c: i64, i: usize| {
        for (x, a) in w.iter_mut().zip(cartan.simple_root(i)) {
            *x -= c * a;
        }
    };
    if (0..=pi - 2).contains(&r) {
        sub(&mut lambda, r + 1, 2);
        s[1] = r + 1;
    } else if r == pi - 1 && d >= 3 {
        sub(&mut lambda, pi, 2);
        sub(&mut lambda, 1, 3);
        s[1] = pi;
        s[2] = 1;
    } else {
        return Err(Error::Hypothesis(format!("r = {r} is outside both cases for p = {p}, d = {d}")));
    }
    let s = STuple::new(s)?;
    let omega = weight_of(n, n, &s);
    if omega.coords() != lambda.as_slice() {
        return Err(Error::Hypothesis(format!("s = {s} does not give λ_r = {lambda:?}")));
    }
    let report = weight_space_report(n, n, &s)?;
    Ok(LambdaRReport { n, s, omega, multiplicity: report.top_dim_mod_p(p) })
}

/// Base-`p` digits `c₀, c₁, …, c_e` of `m` with `c_e` the leading digit
/// (`[0]` for `m = 0`).
pub fn p_adic_digits(m: u64, p: u64) -> Vec<u64> {
    let mut digits = Vec::new();
    let mut x = m;
    loop {
        digits.push(x % p);
        x /= p;
        if x == 0 {
            return digits;
        }
    }
}

fn digit_value(m: &[u64], a: &[u8], u: usize, p: u64) -> i64 {
    let a_at = |i: usize| if i == 0 || i > a.len() { 0 } else { a[i - 1] as i64 };
    m[u] as i64 + a_at(u + 1) * p as i64 - a_at(u)
}

/// `E(m)`: tuples `(a₁,…,a_e) ∈ {0,1,2}^e` with
/// `0 ≤ c_u(m) + a_{u+1}p - a_u ≤ 3(p-1)` for `u = 0..e`, `a₀ = a_{e+1} = 0`.
pub fn doty_e(m: u64, p: u64) -> Result<Vec<Vec<u8>>> {
    require_prime(p)?;
    let digits = p_adic_digits(m, p);
    let e = digits.len() - 1;
    let bound = 3 * (p as i64 - 1);
    let mut out = Vec::new();
    let total = 3usize.pow(e as u32);
    for code in 0..total {
        let mut a = vec![0u8; e];
        let mut c = code;
        for slot in a.iter_mut().rev() {
            *slot = (c % 3) as u8;
            c /= 3;
        }
        if (0..=e).all(|u| (0..=bound).contains(&digit_value(&digits, &a, u, p))) {
            out.push(a);
        }
    }
    Ok(out)
}

/// Highest weight `(b₁-b₂, b₂-b₃)` of the factor of `H⁰(m,0)` indexed by
/// `a ∈ E(m)`, where `c_u(b_j)` is `p-1` for `j ≤ N_u`, `R_u` for
/// `j = N_u+1` and `0` beyond, with `N_u, R_u` the quotient and remainder of
/// `c_u(m) + a_{u+1}p - a_u` by `p-1`.
pub fn doty_factor_weight(a: &[u8], m: u64, p: u64) -> Result<WeightOmega> {
    require_prime(p)?;
    let digits = p_adic_digits(m, p);
    if a.len() + 1 != digits.len() {
        return Err(Error::DimensionMismatch { expected: digits.len() - 1, got: a.len() });
    }
    let q = p as i64 - 1;
    let mut b = [0i64; 3];
    let mut place = 1i64;
    for u in 0..digits.len() {
        let v = digit_value(&digits, a, u, p);
        if !(0..=3 * q).contains(&v) {
            return Err(Error::Hypothesis(format!("{a:?} is not in E({m})")));
        }
        let (nu, ru) = (v / q, v % q);
        for (j, bj) in b.iter_mut().enumerate() {
            let j = j as i64 + 1;
            let c = if j <= nu {
                q
            } else if j == nu + 1 {
                ru
            } else {
                0
            };
            *bj += c * place;
        }
        place *= p as i64;
    }
    Ok(WeightOmega::new(vec![b[0] - b[1], b[1] - b[2]]))
}

/// `ν_{t,k} = (2n-1)ω₁ - (n+k)α₁ - tα₂ = (t-2k-1, n+k-2t)`.
pub fn nu_tk(n: i64, t: i64, k: i64) -> WeightOmega {
    let s = STuple::new(vec![n + k, t]).expect("nonnegative by caller");
    weight_of(n, n, &s)
}

fn dual(w: &WeightOmega) -> WeightOmega {
    WeightOmega::new(w.coords().iter().rev().copied().collect())
}

/// Results of the Doty checks for `m = ap^e - 2`, `n = ap^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DotyReport {
    pub p: u64,
    pub a: u64,
    pub e: u32,
    pub e_set_is_binary_cube: bool,
    /// Dual of the factor at `(1,…,1)` is `(p^e-1, (a-2)p^e)`.
    pub socle_ok: bool,
    /// Dual of the factor at `e^i`, `i < e`, is `ν_{p^e+p^{i-1}, p^i}`.
    pub inner_ok: bool,
    /// Dual of the factor at `e^e` is `ν_{p^{e-1}, 0}`.
    pub last_ok: bool,
    /// `p | d_{n,t_i,k_i}` for `i < e`, `v_p(binom(n, p^{e-1})) = 1`, `p ∤ binom(n, p^e)`.
    pub valuations_ok: bool,
}

impl DotyReport {
    pub fn holds(&self) -> bool {
        self.e_set_is_binary_cube && self.socle_ok && self.inner_ok && self.last_ok && self.valuations_ok
    }
}

pub fn doty_check(p: u64, a: u64, e: u32) -> Result<DotyReport> {
    require_prime(p)?;
    if !(2..p).contains(&a) || e == 0 {
        return Err(Error::Hypothesis(format!("need 2 ≤ a ≤ p-1 and e ≥ 1, got p = {p}, a = {a}, e = {e}")));
    }
    let pe = p.pow(e);
    let n = a * pe;
    let m = n - 2;
    let (pi, ni, pei) = (p as i64, n as i64, pe as i64);

    let set = doty_e(m, p)?;
    let cube: Vec<Vec<u8>> = (0..1usize << e)
        .map(|bits| (0..e).map(|i| ((bits >> (e - 1 - i)) & 1) as u8).collect())
        .collect();
    let e_set_is_binary_cube = set == cube;

    let ones = vec![1u8; e as usize];
    let socle_ok =
        dual(&doty_factor_weight(&ones, m, p)?) == WeightOmega::new(vec![pei - 1, (a as i64 - 2) * pei]);

    let mut inner_ok = true;
    let mut valuations_ok = true;
    for i in 1..e {
        let mut ei = ones.clone();
        ei[i as usize - 1] = 0;
        let (t, k) = (pei + pi.pow(i - 1), pi.pow(i));
        inner_ok &= dual(&doty_factor_weight(&ei, m, p)?) == nu_tk(ni, t, k);
        valuations_ok &= valuation(&krattenthaler_det(ni, t, k)?, p).is_some_and(|v| v >= 1);
    }
    let mut ee = ones;
    ee[e as usize - 1] = 0;
    let last_ok = dual(&doty_factor_weight(&ee, m, p)?) == nu_tk(ni, pei / pi, 0);
    valuations_ok &= valuation(&binomial_signed(ni, pei / pi), p) == Some(1);
    valuations_ok &= valuation(&binomial_signed(ni, pei), p) == Some(0);

    Ok(DotyReport { p, a, e, e_set_is_binary_cube, socle_ok, inner_ok, last_ok, valuations_ok })
}

/// Deficit of `H²(n,-n-2) ⊗ F_p` against `V(r, n-2r-2)` at dominant weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Main3Report {
    pub p: u64,
    pub a: u64,
    pub e: u32,
    pub r: i64,
    pub n: i64,
    /// `(p^e-1, (a-2)p^e + r)`.
    pub top: WeightOmega,
    /// `mult_{V(r,n-2r-2)}(ν) - dim H²_{F_p}(ν)` at every dominant weight
    /// where either side is nonzero.
    pub deficits: BTreeMap<WeightOmega, i64>,
    pub nonnegative: bool,
    /// `a ≥ 2`: support below `top` and value 1 there. `a = 1`: deficit 0.
    pub shape_ok: bool,
    /// `n = p²-1` forces `H² = 0`; vacuous otherwise.
    pub vanishing_ok: bool,
}

impl Main3Report {
    pub fn holds(&self) -> bool {
        self.nonnegative && self.shape_ok && self.vanishing_ok
    }
}

pub fn main3_deficit_check(p: u64, a: u64, e: u32, r: i64, exec: Execution) -> Result<Main3Report> {
    require_prime(p)?;
    if !(1..p).contains(&a) || !(0..p as i64).contains(&r) || e == 0 {
        return Err(Error::Hypothesis(format!(
            "need 1 ≤ a ≤ p-1, 0 ≤ r ≤ p-1, e ≥ 1; got p = {p}, a = {a}, e = {e}, r = {r}"
        )));
    }
    let pe = p.pow(e) as i64;
    let n = a as i64 * pe + r;
    let top = WeightOmega::new(vec![pe - 1, (a as i64 - 2) * pe + r]);
    let lambda = WeightOmega::new(vec![r, n - 2 * r - 2]);

    let mut deficits: BTreeMap<WeightOmega, i64> = BTreeMap::new();
    if is_dominant(&lambda) {
        for (w, k) in Character::new(&lambda).dominant_weights() {
            deficits.insert(w.clone(), k as i64);
        }
    }
    let mut h2_total = 0usize;
    for rep in scan(n, n, 2, exec) {
        let k = rep.top_dim_mod_p(p);
        h2_total += k;
        if k > 0 {
            *deficits.entry(rep.omega.clone()).or_insert(0) -= k as i64;
        }
    }
    deficits.retain(|_, v| *v != 0);

    let nonnegative = deficits.values().all(|&v| v >= 0);
    let shape_ok = if a >= 2 {
        deficits.keys().all(|w| is_below(w, &top)) && deficits.get(&top) == Some(&1)
    } else {
        deficits.is_empty()
    };
    let vanishing_ok = n != (p * p) as i64 - 1 || h2_total == 0;
    Ok(Main3Report { p, a, e, r, n, top, deficits, nonnegative, shape_ok, vanishing_ok })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(c: &[i64]) -> WeightOmega {
        WeightOmega::new(c.to_vec())
    }

    #[test]
    fn worked_example_sl4() {
        let rows = multiplicity_report(4, 4, 3, &[3], Execution::Sequential).unwrap();
        let got = nonzero_top_weights(&rows, 3);
        let mut expect = vec![(w(&[1, 0, 2]), 1), (w(&[1, 1, 0]), 1), (w(&[0, 0, 1]), 3)];
        expect.sort();
        let mut got_sorted = got.clone();
        got_sorted.sort();
        assert_eq!(got_sorted, expect);
    }

    #[test]
    fn small_multiplicity_tables() {
        let rows = multiplicity_report(2, 2, 2, &[2], Execution::Sequential).unwrap();
        assert_eq!(nonzero_top_weights(&rows, 2), vec![(w(&[0, 0]), 1)]);
        let rows = multiplicity_report(2, 1, 2, &[2, 3, 5], Execution::Sequential).unwrap();
        for p in [2, 3, 5] {
            assert!(nonzero_top_weights(&rows, p).is_empty());
        }
        assert!(multiplicity_report(2, 2, 2, &[4], Execution::Sequential).is_err());
    }

    #[test]
    fn lower_multiplicity_uses_kernel_and_torsion() {
        let rows = multiplicity_report(2, 2, 2, &[2, 3], Execution::Sequential).unwrap();
        let at = rows.iter().find(|r| r.report.omega == w(&[0, 0])).unwrap();
        assert_eq!(at.lower[&2], 1);
        assert_eq!(at.lower[&3], 0);
    }

    #[test]
    fn no_torsion_examples() {
        assert!(no_p_torsion_check(2, 2, 3, Execution::Sequential).unwrap());
        assert!(no_p_torsion_check(4, 3, 5, Execution::Sequential).unwrap());
        assert!(no_p_torsion_check(4, 3, 7, Execution::Sequential).unwrap());
        assert!(no_p_torsion_check(4, 3, 3, Execution::Sequential).is_err());
    }

    #[test]
    fn epp_examples() {
        let r = epp_check(3, 2, Execution::Sequential).unwrap();
        assert!(r.holds());
        assert_eq!(r.observed, vec![(w(&[0, 1]), 1)]);
        let rep = weight_space_report(3, 3, &STuple::new(vec![3, 1]).unwrap()).unwrap();
        assert_eq!(rep.cokernel.invariant_factors, vec![BigInt::from(3)]);
        let r = epp_check(2, 2, Execution::Sequential).unwrap();
        assert_eq!(r.observed, vec![(w(&[0, 0]), 1)]);
        assert!(r.holds());
        assert!(epp_check(3, 3, Execution::Sequential).unwrap().holds());
    }

    #[test]
    fn lambda_r_examples() {
        let r = lambda_r_check(3, 3, 1).unwrap();
        assert_eq!(r.s.as_slice(), &[4, 2, 0]);
        assert_eq!(r.omega, w(&[1, 0, 2]));
        assert_eq!(r.multiplicity, 1);
        let r = lambda_r_check(2, 3, 0).unwrap();
        assert_eq!(r.s.as_slice(), &[2, 1, 0]);
        assert_eq!(r.multiplicity, 1);
        let r = lambda_r_check(3, 3, 2).unwrap();
        assert_eq!(r.s.as_slice(), &[5, 3, 1]);
        assert_eq!(r.multiplicity, 1);
        assert!(lambda_r_check(3, 2, 2).is_err());
        assert!(lambda_r_check(3, 3, 3).is_err());
    }

    #[test]
    fn digits_and_doty_sets() {
        assert_eq!(p_adic_digits(16, 3), vec![1, 2, 1]);
        assert_eq!(p_adic_digits(48, 5), vec![3, 4, 1]);
        assert_eq!(doty_e(16, 3).unwrap(), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(doty_e(48, 5).unwrap().len(), 4);
        assert_eq!(doty_e(0, 3).unwrap(), vec![Vec::<u8>::new()]);
    }

    #[test]
    fn doty_factor_examples() {
        assert_eq!(doty_factor_weight(&[1, 1], 16, 3).unwrap(), w(&[0, 8]));
        assert_eq!(dual(&doty_factor_weight(&[0, 1], 16, 3).unwrap()), w(&[3, 1]));
        assert_eq!(nu_tk(18, 10, 3), w(&[3, 1]));
        assert_eq!(dual(&doty_factor_weight(&[1, 0], 16, 3).unwrap()), w(&[2, 12]));
        assert_eq!(nu_tk(18, 3, 0), w(&[2, 12]));
        assert!(doty_factor_weight(&[1], 16, 3).is_err());
    }

    #[test]
    fn nu_tk_closed_form() {
        for n in 0..8 {
            for k in 0..4 {
                for t in 0..8 {
                    assert_eq!(nu_tk(n, t, k), w(&[t - 2 * k - 1, n + k - 2 * t]));
                }
            }
        }
    }

    #[test]
    fn doty_small_grid() {
        for (p, a, e) in [(3, 2, 1), (3, 2, 2), (5, 3, 2), (5, 4, 1)] {
            let r = doty_check(p, a, e).unwrap();
            assert!(r.holds(), "{r:?}");
        }
        assert!(doty_check(2, 1, 1).is_err());
    }

    #[test]
    fn main3_examples() {
        let r = main3_deficit_check(3, 1, 1, 1, Execution::Sequential).unwrap();
        assert_eq!(r.n, 4);
        assert!(r.deficits.is_empty());
        assert!(r.holds());
        let r = main3_deficit_check(2, 1, 2, 1, Execution::Sequential).unwrap();
        assert_eq!(r.n, 5);
        assert!(r.holds());
        let r = main3_deficit_check(3, 2, 1, 0, Execution::Sequential).unwrap();
        assert_eq!(r.top, w(&[2, 0]));
        assert_eq!(r.deficits.get(&w(&[2, 0])), Some(&1));
        assert!(r.holds(), "{r:?}");
    }
}
