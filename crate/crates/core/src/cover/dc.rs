use num_bigint::BigUint;
use serde::Serialize;

use crate::homology::{simplex_count_check, SimplexCountReport, SimplicialComplex};
use crate::ledger::{ln_biguint, ConstantsLedger, Magnitude};

/// `(ν₀, ν)` from the ledger's intersection counts.
pub fn refinement_budget(l: &ConstantsLedger) -> (BigUint, BigUint) {
    (l.nu0().clone(), l.nu().clone())
}

/// `C = ν / V_eucl(r/4, n)` and `D = ν · N(n, r/2, 2r)`.
pub fn complexity_constants(l: &ConstantsLedger) -> (Magnitude, BigUint) {
    (l.c_cover(), l.d_degree().clone())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DcReport {
    pub vertex_count: usize,
    pub c_vol: Magnitude,
    pub vertices_ok: bool,
    pub max_degree: usize,
    pub d_bound: Magnitude,
    pub degree_ok: bool,
    pub simplex_counts: SimplexCountReport,
    pub pass: bool,
}

/// Checks vertex count `<= C·Vol`, vertex degree `<= D` and
/// `#k-simplices <= D^k · C·Vol`.
pub fn check_dc(c: &SimplicialComplex, d: Magnitude, c_vol: Magnitude) -> DcReport {
    let vertex_count = c.count(0);
    let max_degree = c.max_vertex_degree();
    let vertices_ok = c_vol.bounds(vertex_count as f64);
    let degree_ok = d.bounds(max_degree as f64);
    let simplex_counts = simplex_count_check(c, d, c_vol);
    DcReport {
        vertex_count,
        c_vol,
        vertices_ok,
        max_degree,
        d_bound: d,
        degree_ok,
        pass: vertices_ok && degree_ok && simplex_counts.pass,
        simplex_counts,
    }
}

/// [`check_dc`] with the ledger's `D` and `C · vol`.
pub fn check_dc_ledger(c: &SimplicialComplex, l: &ConstantsLedger, vol: f64) -> DcReport {
    let d = Magnitude::from_ln(ln_biguint(l.d_degree()));
    check_dc(c, d, l.c_cover().scale(vol))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(s: &[[usize; 2]]) -> SimplicialComplex {
        SimplicialComplex::from_simplices(s.iter().copied()).unwrap()
    }

    #[test]
    fn examples() {
        let point = SimplicialComplex::from_simplices([[0]]).unwrap();
        assert!(check_dc(&point, 1.0.into(), 1.0.into()).pass);
        let c4 = cx(&[[0, 1], [1, 2], [2, 3], [0, 3]]);
        assert!(check_dc(&c4, 2.0.into(), 4.0.into()).pass);
        let r = check_dc(&c4, 2.0.into(), 3.0.into());
        assert!(!r.pass && !r.vertices_ok && r.degree_ok);
        let k5: Vec<[usize; 2]> = (0..5).flat_map(|i| (i + 1..5).map(move |j| [i, j])).collect();
        let r = check_dc(&cx(&k5), 3.0.into(), 100.0.into());
        assert!(!r.degree_ok && !r.pass);
        assert_eq!(r.max_degree, 4);
    }

    #[test]
    fn budgets() {
        let l = ConstantsLedger::with_counts(2, 0.32, 100, 1, 1).unwrap();
        let (nu0, nu) = refinement_budget(&l);
        assert_eq!(nu0, BigUint::from(225u32));
        assert_eq!(nu, BigUint::from(450u32));
        let (c, d) = complexity_constants(&l);
        let v = std::f64::consts::PI * 0.0025f64.powi(2);
        assert!((c.value() - 450.0 / v).abs() / (450.0 / v) < 1e-12);
        assert_eq!(d, BigUint::from(450u32));
    }
}
