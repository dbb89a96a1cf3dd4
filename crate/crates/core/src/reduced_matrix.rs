//! Reduced multinomial matrices whose cokernels are the weight spaces of `H^d`.
//!
//! For a dominant weight `ν = (m+n-1)ω₁ - Σ s_i α_i` put `h_i = s_i - s_{i+1}`.
//! Below the threshold `s₁ < min(m,n)` the map `f_ν` is unitriangular and
//! `H^d_ν = 0`. Otherwise set `s₁ = n+k` (when `m ≥ n`) or `s₁ = m+k` (when
//! `n > m`). Rows are indexed by `C = C(d,h,n)` and columns by
//! `D = C(d,h,k+n-m)` resp. `C(d,h,k)`; the entry at `(b, b')` is the
//! multinomial `(m-k; b-b')` resp. `(n-k; b-b')`. The global sign
//! `(-1)^{top+1}` is dropped since it does not change the cokernel.

use num_bigint::BigInt;
use serde::Serialize;

use crate::combinatorics::{binomial_signed, compositions, multinomial_nonneg, Composition, HProfile};
use crate::error::{Error, Result};
use crate::lattice::{is_dominant, regime, weight_of, Regime, STuple, WeightOmega};
use crate::matrix::BigMatrix;
use crate::snf::{cokernel, CokernelStructure};
use crate::sweep::{self, Execution};

/// Index sets and parameters of one reduced matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixSpec {
    pub m: i64,
    pub n: i64,
    pub d: usize,
    pub s: STuple,
    pub h: HProfile,
    pub k: i64,
    pub regime: Regime,
    /// Top index of every multinomial entry: `m-k` or `n-k`.
    pub top: i64,
    /// `C`: compositions of `n` bounded by `h`.
    pub rows: Vec<Composition>,
    /// `D`: compositions of `k+n-m` (`m ≥ n`) or `k` (`n > m`) bounded by `h`.
    pub cols: Vec<Composition>,
}

/// Smallest `s₁` for which the weight space can be nonzero.
pub fn threshold(m: i64, n: i64) -> i64 {
    m.min(n)
}

fn checked_profile(m: i64, n: i64, s: &STuple) -> Result<HProfile> {
    if s.len() < 2 {
        return Err(Error::RankTooSmall(s.len()));
    }
    let nu = weight_of(m, n, s);
    if !is_dominant(&nu) {
        return Err(Error::NotDominant(nu.into_coords()));
    }
    HProfile::from_s(s)
}

/// Builds `C`, `D` and the parameters for the dominant weight `ν(s)`.
///
/// Fails with [`Error::BelowThreshold`] when `s₁ < min(m,n)`, where the
/// weight space is zero.
pub fn build_sets(m: i64, n: i64, s: &STuple) -> Result<MatrixSpec> {
    sets_with(m, n, s, regime(m, n))
}

/// Same as [`build_sets`] but with the index-set formulas of the given
/// regime; on the wall both formulas apply.
pub(crate) fn sets_with(m: i64, n: i64, s: &STuple, formulas: Regime) -> Result<MatrixSpec> {
    let h = checked_profile(m, n, s)?;
    let s1 = s.s1();
    let (k, col_sum, top) = match formulas {
        Regime::Below | Regime::Wall if m >= n => {
            if s1 < n {
                return Err(Error::BelowThreshold { s1, threshold: n });
            }
            let k = s1 - n;
            (k, k + n - m, m - k)
        }
        Regime::Above | Regime::Wall if n >= m => {
            if s1 < m {
                return Err(Error::BelowThreshold { s1, threshold: m });
            }
            let k = s1 - m;
            (k, k, n - k)
        }
        _ => {
            return Err(Error::Hypothesis(format!(
                "regime {formulas:?} does not apply to m={m}, n={n}"
            )))
        }
    };
    Ok(MatrixSpec {
        m,
        n,
        d: s.len(),
        s: s.clone(),
        rows: compositions(&h, n),
        cols: compositions(&h, col_sum),
        h,
        k,
        regime: regime(m, n),
        top,
    })
}

/// The `|C| × |D|` matrix of multinomials `(top; b - b')`.
pub fn build_matrix(spec: &MatrixSpec) -> BigMatrix {
    BigMatrix::from_fn(spec.rows.len(), spec.cols.len(), |i, j| {
        let diff: Vec<i64> = spec.rows[i].iter().zip(&spec.cols[j]).map(|(b, c)| b - c).collect();
        multinomial_nonneg(spec.top, &diff)
    })
}

/// Rank-2 banded binomial matrices `D_{m,n,t,k}` indexed by `t = s₂` and `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sl3Matrix {
    /// The weight space is the cokernel of this matrix.
    Matrix(BigMatrix),
    /// The weight space vanishes.
    Zero,
    /// The weight space is free of this rank (`n > m`, `k < n-m`).
    Free(usize),
}

/// `D_{m,n,t,k}` for `SL₃`, entry `(i,j)` = `binom(m-k, t-k+i-j)` when
/// `m ≥ n` and `binom(n-k, t-k+n-m+i-j)` when `n > m`.
pub fn sl3_matrix(m: i64, n: i64, t: i64, k: i64) -> Result<Sl3Matrix> {
    if m < 0 || n < 0 || t < 0 || k < 0 {
        return Err(Error::NegativeEntry { what: "sl3 parameters", values: vec![m, n, t, k] });
    }
    if m >= n {
        if !(m - n <= k && k <= t) {
            return Ok(Sl3Matrix::Zero);
        }
        let rows = (k + 1) as usize;
        let cols = (k + n - m + 1) as usize;
        Ok(Sl3Matrix::Matrix(BigMatrix::from_fn(rows, cols, |i, j| {
            binomial_signed(m - k, t - k + i as i64 - j as i64)
        })))
    } else if k >= n - m {
        let rows = (k + m - n + 1) as usize;
        let cols = (k + 1) as usize;
        Ok(Sl3Matrix::Matrix(BigMatrix::from_fn(rows, cols, |i, j| {
            binomial_signed(n - k, t - k + n - m + i as i64 - j as i64)
        })))
    } else {
        let rank = t.min(k) - (t - m).max(0) + 1;
        Ok(Sl3Matrix::Free(rank.max(0) as usize))
    }
}

/// One dominant weight space of `H^{d-1}` and `H^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSpaceReport {
    pub m: i64,
    pub n: i64,
    pub s: STuple,
    pub omega: WeightOmega,
    /// `None` below the threshold, where `f_ν` is unitriangular.
    pub spec: Option<MatrixSpec>,
    pub matrix: Option<BigMatrix>,
    /// Rank of `H^{d-1}_ν = ker f_ν`; the `A`-block is unitriangular so this
    /// is `|C| - rank M`.
    pub kernel_rank: usize,
    pub cokernel: CokernelStructure,
}

impl WeightSpaceReport {
    pub fn d(&self) -> usize {
        self.s.len()
    }

    pub fn k(&self) -> Option<i64> {
        self.spec.as_ref().map(|s| s.k)
    }

    pub fn c_size(&self) -> usize {
        self.spec.as_ref().map_or(0, |s| s.rows.len())
    }

    pub fn d_size(&self) -> usize {
        self.spec.as_ref().map_or(0, |s| s.cols.len())
    }

    /// `dim H^d_ν ⊗ F_p`.
    pub fn top_dim_mod_p(&self, p: u64) -> usize {
        self.cokernel.dim_mod_p(p)
    }

    /// `dim H^{d-1}_{F_p}(μ)_ν = rank ker + #(p-torsion factors of H^d_ν)`.
    pub fn lower_dim_mod_p(&self, p: u64) -> usize {
        self.kernel_rank + self.cokernel.p_torsion_count(p)
    }

    pub fn is_top_nonzero(&self) -> bool {
        !self.cokernel.is_zero()
    }
}

/// Computes the `ν(s)` weight spaces of `H^{d-1}` and `H^d` from the reduced matrix.
pub fn weight_space_report(m: i64, n: i64, s: &STuple) -> Result<WeightSpaceReport> {
    let omega = weight_of(m, n, s);
    let spec = match build_sets(m, n, s) {
        Ok(spec) => spec,
        Err(Error::BelowThreshold { .. }) => {
            return Ok(WeightSpaceReport {
                m,
                n,
                s: s.clone(),
                omega,
                spec: None,
                matrix: None,
                kernel_rank: 0,
                cokernel: CokernelStructure::zero(),
            })
        }
        Err(e) => return Err(e),
    };
    let matrix = build_matrix(&spec);
    let cokernel = cokernel(&matrix);
    let rank = matrix.cols() - cokernel.free_rank;
    let kernel_rank = matrix.rows() - rank;
    Ok(WeightSpaceReport {
        m,
        n,
        s: s.clone(),
        omega,
        spec: Some(spec),
        matrix: Some(matrix),
        kernel_rank,
        cokernel,
    })
}

/// Reports for every dominant weight of `E` and `F`, in lexicographic `s` order.
pub fn scan(m: i64, n: i64, d: usize, exec: Execution) -> Vec<WeightSpaceReport> {
    let weights = crate::lattice::enumerate_dominant_s(m, n, d);
    sweep::map(exec, &weights, |s| {
        weight_space_report(m, n, s).expect("enumerated weights are dominant")
    })
}

/// Upper bound `d^{top}` for every row sum of the reduced matrix.
pub fn row_sum_bound(spec: &MatrixSpec) -> BigInt {
    BigInt::from(spec.d).pow(spec.top.max(0) as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::complement_bijection;
    use crate::lattice::enumerate_dominant_s;
    use num_traits::Signed;

    fn s(v: &[i64]) -> STuple {
        STuple::new(v.to_vec()).unwrap()
    }

    #[test]
    fn sets_on_the_wall() {
        let spec = build_sets(4, 4, &s(&[5, 3, 1])).unwrap();
        assert_eq!(spec.h.as_slice(), &[2, 2, 1]);
        assert_eq!(spec.k, 1);
        assert_eq!(spec.rows, vec![vec![2, 2, 0], vec![2, 1, 1], vec![1, 2, 1]]);
        assert_eq!(spec.cols, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);

        let spec = build_sets(2, 2, &s(&[2, 1])).unwrap();
        assert_eq!(spec.h.as_slice(), &[1, 1]);
        assert_eq!(spec.k, 0);
        assert_eq!(spec.rows, vec![vec![1, 1]]);
        assert_eq!(spec.cols, vec![vec![0, 0]]);
    }

    #[test]
    fn empty_column_set() {
        let spec = build_sets(2, 1, &s(&[1, 0])).unwrap();
        assert_eq!(spec.k, 0);
        assert!(spec.cols.is_empty());
        let m = build_matrix(&spec);
        assert_eq!((m.rows(), m.cols()), (1, 0));
    }

    #[test]
    fn below_threshold_and_invalid() {
        assert!(matches!(build_sets(3, 2, &s(&[1, 0])), Err(Error::BelowThreshold { .. })));
        assert!(matches!(build_sets(2, 2, &s(&[2, 0])), Err(Error::NotDominant(_))));
        assert!(matches!(weight_space_report(2, 2, &s(&[3, 0])), Err(Error::NotDominant(_))));
    }

    #[test]
    fn matrix_examples() {
        let m = build_matrix(&build_sets(2, 2, &s(&[2, 1])).unwrap());
        assert_eq!(m, BigMatrix::from_rows(&[vec![2]]));
        let m = build_matrix(&build_sets(4, 4, &s(&[5, 3, 1])).unwrap());
        assert_eq!(m, BigMatrix::from_rows(&[vec![3, 3, 0], vec![6, 3, 3], vec![3, 6, 3]]));
    }

    #[test]
    fn report_examples() {
        let r = weight_space_report(2, 2, &s(&[2, 1])).unwrap();
        assert_eq!(r.cokernel.invariant_factors, vec![BigInt::from(2)]);
        assert_eq!(r.cokernel.free_rank, 0);
        let r = weight_space_report(4, 4, &s(&[5, 3, 1])).unwrap();
        assert_eq!(r.cokernel.invariant_factors, vec![BigInt::from(3), BigInt::from(3), BigInt::from(6)]);
        assert_eq!(r.omega, WeightOmega::new(vec![0, 0, 1]));
        for r in scan(2, 1, 2, Execution::Sequential) {
            assert!(r.cokernel.is_zero(), "s={}", r.s);
        }
    }

    #[test]
    fn sl3_examples() {
        assert_eq!(sl3_matrix(2, 2, 1, 0).unwrap(), Sl3Matrix::Matrix(BigMatrix::from_rows(&[vec![2]])));
        for n in 0..6 {
            assert_eq!(sl3_matrix(n, n, 0, 0).unwrap(), Sl3Matrix::Matrix(BigMatrix::from_rows(&[vec![1]])));
        }
        assert_eq!(sl3_matrix(2, 1, 0, 0).unwrap(), Sl3Matrix::Zero);
        assert!(sl3_matrix(2, 1, -1, 0).is_err());
    }

    #[test]
    fn sl3_matches_general_builder() {
        for m in 0..=8 {
            for n in 0..=8 {
                for st in enumerate_dominant_s(m, n, 2) {
                    let (s1, t) = (st.as_slice()[0], st.as_slice()[1]);
                    let report = weight_space_report(m, n, &st).unwrap();
                    if s1 < threshold(m, n) {
                        assert!(report.cokernel.is_zero());
                        continue;
                    }
                    let k = if m >= n { s1 - n } else { s1 - m };
                    match sl3_matrix(m, n, t, k).unwrap() {
                        Sl3Matrix::Matrix(d) => assert_eq!(Some(d), report.matrix, "m={m} n={n} s={st}"),
                        Sl3Matrix::Zero => assert!(report.cokernel.is_zero(), "m={m} n={n} s={st}"),
                        Sl3Matrix::Free(r) => {
                            assert_eq!(report.cokernel, CokernelStructure::free(r), "m={m} n={n} s={st}")
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn wall_matrices_are_square_with_complement_bijection() {
        for d in 2..=4 {
            for n in 0..=6 {
                for st in enumerate_dominant_s(n, n, d) {
                    let Ok(spec) = build_sets(n, n, &st) else { continue };
                    assert_eq!(spec.rows.len(), spec.cols.len());
                    let mut image: Vec<Composition> =
                        spec.rows.iter().map(|b| complement_bijection(&spec.h, b).unwrap()).collect();
                    image.sort();
                    let mut cols = spec.cols.clone();
                    cols.sort();
                    assert_eq!(image, cols);

                    let below = sets_with(n, n, &st, Regime::Below).unwrap();
                    let above = sets_with(n, n, &st, Regime::Above).unwrap();
                    assert_eq!(below, above);
                }
            }
        }
    }

    #[test]
    fn entries_nonnegative_and_row_sums_bounded() {
        for (m, n) in [(4, 4), (5, 3), (3, 5), (6, 6)] {
            for r in scan(m, n, 3, Execution::Sequential) {
                let (Some(spec), Some(mat)) = (&r.spec, &r.matrix) else { continue };
                let bound = row_sum_bound(spec);
                for i in 0..mat.rows() {
                    assert!(mat.row(i).iter().all(|x| !x.is_negative()));
                    let sum: BigInt = mat.row(i).iter().sum();
                    assert!(sum <= bound);
                }
            }
        }
    }

    #[test]
    fn torsion_only_when_m_at_least_n() {
        for d in 2..=3 {
            for m in 0..=6 {
                for n in 0..=m {
                    for r in scan(m, n, d, Execution::Sequential) {
                        assert_eq!(r.cokernel.free_rank, 0, "d={d} m={m} n={n} s={}", r.s);
                    }
                }
            }
        }
    }
}
