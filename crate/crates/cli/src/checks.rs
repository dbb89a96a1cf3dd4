use anyhow::Result;
use flagcoh::determinants::{generalized_simplified_det, krattenthaler_det, proctor_det, simplified_det};
use flagcoh::lattice::enumerate_dominant_s;
use flagcoh::modular::{doty_check, epp_check, lambda_r_check, main3_deficit_check, no_p_torsion_check};
use flagcoh::oracle::direct_cohomology;
use flagcoh::reduced_matrix::{build_matrix, build_sets, sl3_matrix, weight_space_report, Sl3Matrix};
use flagcoh::sweep::{self, Execution};
use num_traits::Signed;
use serde::Serialize;
use serde_json::{json, Value};

/// One line of a check summary.
#[derive(Debug, Serialize)]
pub struct CheckLine {
    pub check: &'static str,
    pub params: Value,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckLine {
    fn new(check: &'static str, params: Value, pass: bool) -> Self {
        Self { check, params, pass, detail: None }
    }

    fn with_detail(mut self, detail: Option<String>) -> Self {
        self.detail = detail;
        self
    }
}

pub fn oracle_compare(d: usize, m: i64, n: i64, exec: Execution) -> Result<Vec<CheckLine>> {
    let weights = enumerate_dominant_s(m, n, d);
    let outcomes = sweep::try_map(exec, &weights, |s| -> flagcoh::Result<Option<String>> {
        let reduced = weight_space_report(m, n, s)?;
        let (kernel, coker) = direct_cohomology(m, n, s);
        Ok((reduced.cokernel != coker || reduced.kernel_rank != kernel).then(|| {
            format!(
                "s={}: reduced {:?}/ker {} vs oracle {:?}/ker {}",
                s, reduced.cokernel, reduced.kernel_rank, coker, kernel
            )
        }))
    })?;
    let failures: Vec<String> = outcomes.into_iter().flatten().collect();
    let params = json!({ "d": d, "m": m, "n": n, "weights": weights.len() });
    Ok(vec![CheckLine::new("oracle-compare", params, failures.is_empty())
        .with_detail((!failures.is_empty()).then(|| failures.join("; ")))])
}

pub fn det_check(d: usize, n_max: i64) -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();
    for n in 0..=n_max {
        let mut failures = Vec::new();
        let mut cases = 0usize;
        for s in enumerate_dominant_s(n, n, d) {
            let Ok(spec) = build_sets(n, n, &s) else { continue };
            let (k, h) = (spec.k, spec.h.clone());
            let direct = build_matrix(&spec).determinant();
            cases += 1;
            if k <= n - 2 {
                let p = proctor_det(n, k, &h)?;
                if p.abs() != direct.abs() {
                    failures.push(format!("proctor s={s}: {p} vs {direct}"));
                }
                if h.as_slice()[0] >= k && simplified_det(n, k, &h)? != p {
                    failures.push(format!("simplified s={s}"));
                }
            }
            for i in 1..=d {
                if h.as_slice()[i - 1] >= k && generalized_simplified_det(n, k, &h, i)?.abs() != direct.abs() {
                    failures.push(format!("generalized i={i} s={s}"));
                }
            }
        }
        if d == 2 {
            for t in 0..=n {
                for k in 0..=t {
                    if let Sl3Matrix::Matrix(mat) = sl3_matrix(n, n, t, k)? {
                        cases += 1;
                        if krattenthaler_det(n, t, k)? != mat.determinant().abs() {
                            failures.push(format!("krattenthaler t={t} k={k}"));
                        }
                    }
                }
            }
        }
        lines.push(
            CheckLine::new("det-check", json!({ "d": d, "n": n, "cases": cases }), failures.is_empty())
                .with_detail((!failures.is_empty()).then(|| failures.join("; "))),
        );
    }
    Ok(lines)
}

/// `(a, e, r)` with `n = a p^e + r ≤ n_max`, `1 ≤ a ≤ p-1`, `1 ≤ e ≤ 2`, `r ≤ p-1`.
pub fn main3_grid(p: u64, n_max: i64) -> Vec<(u64, u32, i64)> {
    let mut out = Vec::new();
    for e in 1..=2u32 {
        for a in 1..p {
            for r in 0..p as i64 {
                if (a * p.pow(e)) as i64 + r <= n_max {
                    out.push((a, e, r));
                }
            }
        }
    }
    out
}

pub fn main3(p: u64, grid: &[(u64, u32, i64)], exec: Execution) -> Result<Vec<CheckLine>> {
    grid.iter()
        .map(|&(a, e, r)| {
            let rep = main3_deficit_check(p, a, e, r, exec)?;
            let deficits: Vec<String> =
                rep.deficits.iter().map(|(w, v)| format!("{w}:{v}")).collect();
            Ok(CheckLine::new(
                "main3",
                json!({ "p": p, "a": a, "e": e, "r": r, "n": rep.n, "top": rep.top.to_string(), "deficit": deficits }),
                rep.holds(),
            ))
        })
        .collect()
}

pub fn doty(p: u64, grid: &[(u64, u32)]) -> Result<Vec<CheckLine>> {
    grid.iter()
        .map(|&(a, e)| {
            let rep = doty_check(p, a, e)?;
            Ok(CheckLine::new(
                "doty",
                json!({
                    "p": p, "a": a, "e": e,
                    "e_set": rep.e_set_is_binary_cube, "socle": rep.socle_ok,
                    "inner": rep.inner_ok, "last": rep.last_ok, "valuations": rep.valuations_ok,
                }),
                rep.holds(),
            ))
        })
        .collect()
}

pub fn doty_grid(p: u64, e_max: u32) -> Vec<(u64, u32)> {
    (2..p).flat_map(|a| (1..=e_max).map(move |e| (a, e))).collect()
}

pub fn corollaries(primes: &[u64], dims: &[usize], exec: Execution) -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();
    for &p in primes {
        for &d in dims {
            let mut small = Vec::new();
            for n in 0..(p as i64).min(7) {
                if !no_p_torsion_check(n, d, p, exec)? {
                    small.push(n);
                }
            }
            lines.push(
                CheckLine::new("no-p-torsion", json!({ "p": p, "d": d }), small.is_empty())
                    .with_detail((!small.is_empty()).then(|| format!("p-torsion at n = {small:?}"))),
            );

            let epp = epp_check(p, d, exec)?;
            let observed: Vec<String> = epp.observed.iter().map(|(w, k)| format!("{w}:{k}")).collect();
            lines.push(CheckLine::new(
                "epp",
                json!({ "p": p, "d": d, "lambda0": epp.lambda0.to_string(), "observed": observed }),
                epp.holds(),
            ));

            if d >= 3 {
                for r in 0..p as i64 {
                    let rep = lambda_r_check(p, d, r)?;
                    lines.push(CheckLine::new(
                        "lambda-r",
                        json!({ "p": p, "d": d, "r": r, "weight": rep.omega.to_string(), "multiplicity": rep.multiplicity }),
                        rep.multiplicity == 1,
                    ));
                }
            }
        }
        lines.extend(doty(p, &doty_grid(p, 3))?);
        lines.extend(main3(p, &main3_grid(p, 18), exec)?);
    }
    Ok(lines)
}
