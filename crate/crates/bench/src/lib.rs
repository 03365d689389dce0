//! Fixtures shared by the benchmarks in `benches/`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use viscomplex_core::cover::{CuspStrip, Net, QuotientBallOracle};
use viscomplex_core::homology::snf::to_int_matrix;
use viscomplex_core::homology::IntMatrix;
use viscomplex_core::{ConstantsLedger, MoebiusIsometry, SimplicialComplex, UhpPoint};

/// Dense matrix with entries in `-9..=9`, about half of them zero.
pub fn random_matrix(seed: u64, rows: usize, cols: usize) -> IntMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m: Vec<Vec<i64>> =
        (0..rows).map(|_| (0..cols).map(|_| if rng.gen_bool(0.5) { rng.gen_range(-9..=9) } else { 0 }).collect()).collect();
    to_int_matrix(&m)
}

/// `n × n` triangulated torus.
pub fn grid_torus(n: usize) -> SimplicialComplex {
    let v = |i: usize, j: usize| (i % n) * n + j % n;
    let mut t = Vec::new();
    for i in 0..n {
        for j in 0..n {
            t.push(vec![v(i, j), v(i + 1, j), v(i + 1, j + 1)]);
            t.push(vec![v(i, j), v(i, j + 1), v(i + 1, j + 1)]);
        }
    }
    SimplicialComplex::from_simplices(t).expect("grid simplices are valid")
}

/// The cusp band used for the (D, C) check, with its `r/2` net and radius-`r` balls.
pub fn strip_cover() -> (CuspStrip, Net, QuotientBallOracle) {
    let ledger = ConstantsLedger::build(2, 0.32, 100).expect("default ledger");
    let r = ledger.r();
    let strip = CuspStrip::new(ledger.eps(), 0.05, r / 10.0).expect("strip");
    let net = strip.net(r / 2.0).expect("net");
    let oracle = strip.oracle(&net, r);
    (strip, net, oracle)
}

/// Schottky pair with disjoint isometric circles.
pub fn free_pair() -> Vec<MoebiusIsometry> {
    vec![
        MoebiusIsometry::new(3.0, 0.0, 0.0, 1.0 / 3.0).expect("det 1"),
        MoebiusIsometry::new(5.0 / 3.0, 4.0 / 3.0, 4.0 / 3.0, 5.0 / 3.0).expect("det 1"),
    ]
}

pub fn sample_points(seed: u64, count: usize) -> Vec<UhpPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| UhpPoint::new(rng.gen_range(-1.0..1.0), rng.gen_range(0.5..2.0)).expect("upper half-plane"))
        .collect()
}
