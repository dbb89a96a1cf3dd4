use std::collections::BTreeMap;
use std::io::Write;

use anyhow::Result;
use flagcoh::reduced_matrix::WeightSpaceReport;
use flagcoh::HProfile;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// One weight space, as emitted by `cohomology`.
#[derive(Debug, Serialize)]
pub struct Record {
    pub d: usize,
    pub m: i64,
    pub n: i64,
    pub s: Vec<i64>,
    pub k: Option<i64>,
    pub h: Vec<i64>,
    pub omega: Vec<i64>,
    pub c_size: usize,
    pub d_size: usize,
    pub invariant_factors: Vec<String>,
    pub free_rank: usize,
    pub kernel_rank: usize,
    /// `dim H^d ⊗ F_p` keyed by `p`.
    pub mod_p: BTreeMap<String, usize>,
    /// `dim H^{d-1} ⊗ F_p` keyed by `p`.
    pub mod_p_lower: BTreeMap<String, usize>,
}

impl Record {
    pub fn new(r: &WeightSpaceReport, primes: &[u64]) -> Self {
        let h = HProfile::from_s(&r.s).map(|h| h.as_slice().to_vec()).unwrap_or_default();
        Self {
            d: r.d(),
            m: r.m,
            n: r.n,
            s: r.s.as_slice().to_vec(),
            k: r.k(),
            h,
            omega: r.omega.coords().to_vec(),
            c_size: r.c_size(),
            d_size: r.d_size(),
            invariant_factors: r.cokernel.invariant_factors.iter().map(ToString::to_string).collect(),
            free_rank: r.cokernel.free_rank,
            kernel_rank: r.kernel_rank,
            mod_p: primes.iter().map(|&p| (p.to_string(), r.top_dim_mod_p(p))).collect(),
            mod_p_lower: primes.iter().map(|&p| (p.to_string(), r.lower_dim_mod_p(p))).collect(),
        }
    }
}

#[derive(Serialize)]
struct CsvRow {
    d: usize,
    m: i64,
    n: i64,
    s: String,
    k: String,
    h: String,
    omega: String,
    c_size: usize,
    d_size: usize,
    invariant_factors: String,
    free_rank: usize,
    kernel_rank: usize,
    mod_p: String,
    mod_p_lower: String,
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("|")
}

fn join_map(m: &BTreeMap<String, usize>) -> String {
    m.iter().map(|(p, k)| format!("{p}:{k}")).collect::<Vec<_>>().join("|")
}

impl From<&Record> for CsvRow {
    fn from(r: &Record) -> Self {
        Self {
            d: r.d,
            m: r.m,
            n: r.n,
            s: join(&r.s),
            k: r.k.map(|k| k.to_string()).unwrap_or_default(),
            h: join(&r.h),
            omega: join(&r.omega),
            c_size: r.c_size,
            d_size: r.d_size,
            invariant_factors: r.invariant_factors.join("|"),
            free_rank: r.free_rank,
            kernel_rank: r.kernel_rank,
            mod_p: join_map(&r.mod_p),
            mod_p_lower: join_map(&r.mod_p_lower),
        }
    }
}

/// JSON lines, or CSV with a header row.
pub fn emit(records: &[Record], format: Format, out: impl Write) -> Result<()> {
    match format {
        Format::Json => {
            let mut out = out;
            for r in records {
                serde_json::to_writer(&mut out, r)?;
                writeln!(out)?;
            }
            out.flush()?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            if records.is_empty() {
                w.write_record([
                    "d", "m", "n", "s", "k", "h", "omega", "c_size", "d_size", "invariant_factors",
                    "free_rank", "kernel_rank", "mod_p", "mod_p_lower",
                ])?;
            }
            for r in records {
                w.serialize(CsvRow::from(r))?;
            }
            w.flush()?;
        }
    }
    Ok(())
}
