use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use super::complex::SimplicialComplex;
use super::modp::{is_prime, rank_mod_p};
use super::snf::snf_sparse;
use crate::error::{Error, Result};
use crate::ledger::{ConstantsLedger, Magnitude};

fn big_as_strings<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn ln_big(x: &BigInt) -> f64 {
    x.to_biguint().map_or(f64::NAN, |u| crate::ledger::ln_biguint(&u))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeHomology {
    pub k: usize,
    pub simplices: usize,
    pub betti_q: usize,
    pub betti_mod_p: BTreeMap<u64, usize>,
    #[serde(serialize_with = "big_as_strings")]
    pub torsion: Vec<BigInt>,
    pub log_torsion: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HomologySummary {
    pub primes: Vec<u64>,
    pub degrees: Vec<DegreeHomology>,
}

impl HomologySummary {
    pub fn betti_q(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti_q).collect()
    }

    pub fn betti_mod(&self, p: u64) -> Option<Vec<usize>> {
        self.degrees.iter().map(|d| d.betti_mod_p.get(&p).copied()).collect()
    }

    pub fn torsion(&self, k: usize) -> &[BigInt] {
        self.degrees.get(k).map_or(&[], |d| d.torsion.as_slice())
    }

    /// Largest Betti number at degree `k` over the computed fields.
    pub fn betti_max(&self, k: usize) -> usize {
        self.degrees.get(k).map_or(0, |d| d.betti_mod_p.values().copied().fold(d.betti_q, usize::max))
    }
}

/// Integral homology of `c` with Betti numbers over `ℚ` and each `𝔽_p`.
pub fn homology(c: &SimplicialComplex, primes: &[u64]) -> Result<HomologySummary> {
    if let Some(&p) = primes.iter().find(|&&p| !is_prime(p)) {
        return Err(Error::InvalidParameter { name: "primes", reason: format!("{p} is not prime") });
    }
    let mut primes = primes.to_vec();
    primes.sort_unstable();
    primes.dedup();
    let Some(dim) = c.dim() else {
        return Ok(HomologySummary { primes, degrees: Vec::new() });
    };
    let boundaries: Vec<_> = (1..=dim).map(|k| c.boundary_matrix(k)).collect::<Result<_>>()?;
    // rank_q[k] = rank ∂_k, with ∂_0 = ∂_{dim+1} = 0
    let mut rank_q = vec![0usize; dim + 2];
    let mut rank_p: BTreeMap<u64, Vec<usize>> = primes.iter().map(|&p| (p, vec![0; dim + 2])).collect();
    let mut torsion = vec![Vec::new(); dim + 1];
    for (i, b) in boundaries.iter().enumerate() {
        let k = i + 1;
        let s = snf_sparse(b);
        rank_q[k] = s.rank;
        torsion[k - 1] = s.torsion();
        for (&p, r) in rank_p.iter_mut() {
            r[k] = rank_mod_p(b, p);
        }
    }
    let degrees = (0..=dim)
        .map(|k| {
            let n = c.count(k);
            let torsion = std::mem::take(&mut torsion[k]);
            DegreeHomology {
                k,
                simplices: n,
                betti_q: n - rank_q[k] - rank_q[k + 1],
                betti_mod_p: rank_p.iter().map(|(&p, r)| (p, n - r[k] - r[k + 1])).collect(),
                log_torsion: torsion.iter().map(ln_big).sum::<f64>() + 0.0,
                torsion,
            }
        })
        .collect();
    Ok(HomologySummary { primes, degrees })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountRecord {
    pub k: usize,
    pub count: usize,
    pub bound: Magnitude,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimplexCountReport {
    pub records: Vec<CountRecord>,
    pub first_violation: Option<usize>,
    pub pass: bool,
}

/// Checks `#k-simplices <= A^k · B` in every degree.
pub fn simplex_count_check(c: &SimplicialComplex, a: Magnitude, b: Magnitude) -> SimplexCountReport {
    let records: Vec<CountRecord> = c
        .counts()
        .into_iter()
        .enumerate()
        .map(|(k, count)| {
            let bound = Magnitude::from_ln(k as f64 * a.ln() + b.ln());
            CountRecord { k, count, bound, pass: bound.bounds(count as f64) }
        })
        .collect();
    let first_violation = records.iter().find(|r| !r.pass).map(|r| r.k);
    SimplexCountReport { pass: first_violation.is_none(), records, first_violation }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Excluded,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundRecord {
    pub k: usize,
    pub betti: usize,
    pub betti_bound: Magnitude,
    pub betti_status: CheckStatus,
    pub log_torsion: f64,
    pub torsion_bound: Magnitude,
    pub torsion_status: CheckStatus,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsReport {
    pub n: usize,
    pub vol: f64,
    pub f_torsion_provenance: &'static str,
    pub records: Vec<BoundRecord>,
    pub pass: bool,
}

/// Compares Betti numbers with `E(k, n) · vol` and `ln |tors H_k|` with `F · vol`.
///
/// In dimension 3 the degree-one torsion bound is known not to hold in
/// general, so that record is marked excluded and not counted.
pub fn bounds_report(summary: &HomologySummary, ledger: &ConstantsLedger, vol: f64) -> Result<BoundsReport> {
    if !(vol > 0.0) {
        return Err(Error::InvalidParameter { name: "vol", reason: format!("{vol} is not positive") });
    }
    let f_bound = ledger.f_torsion().scale(vol);
    let status = |ok: bool| if ok { CheckStatus::Pass } else { CheckStatus::Fail };
    let records: Vec<BoundRecord> = summary
        .degrees
        .iter()
        .map(|d| {
            let betti = summary.betti_max(d.k);
            let betti_bound = ledger.e_of_k(d.k).scale(vol);
            let torsion_status = if ledger.n() == 3 && d.k == 1 {
                CheckStatus::Excluded
            } else {
                status(f_bound.bounds(d.log_torsion))
            };
            BoundRecord {
                k: d.k,
                betti,
                betti_bound,
                betti_status: status(betti_bound.bounds(betti as f64)),
                log_torsion: d.log_torsion,
                torsion_bound: f_bound,
                torsion_status,
            }
        })
        .collect();
    let pass = records.iter().all(|r| r.betti_status != CheckStatus::Fail && r.torsion_status != CheckStatus::Fail);
    Ok(BoundsReport { n: ledger.n(), vol, f_torsion_provenance: "method-derived", records, pass })
}

/// `(#(k+1)-simplices) · ln √(k+2)`, the Hadamard-type cap on `ln |tors H_k|`.
pub fn hadamard_torsion_cap(c: &SimplicialComplex, k: usize) -> f64 {
    c.count(k + 1) as f64 * 0.5 * ((k + 2) as f64).ln()
}

pub fn as_u64_list(v: &[BigInt]) -> Vec<u64> {
    v.iter().filter_map(ToPrimitive::to_u64).collect()
}
