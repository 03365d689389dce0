//! Smith normal form over the integers with exact arithmetic.
//!
//! The pivot is always a nonzero entry of least absolute value; after a row
//! and column are cleared, any remaining entry not divisible by the pivot is
//! folded back into the pivot row and the step repeats.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::complex::BoundaryMatrix;

pub type IntMatrix = Vec<Vec<BigInt>>;

#[derive(Clone, Debug, PartialEq)]
pub struct SnfResult {
    /// `min(rows, cols)` nonnegative entries, nonzero ones first.
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    /// `(U, V)` with `U · A · V = diag`.
    pub transforms: Option<(IntMatrix, IntMatrix)>,
}

impl SnfResult {
    fn from_diagonal(diagonal: Vec<BigInt>, transforms: Option<(IntMatrix, IntMatrix)>) -> Self {
        let rank = diagonal.iter().filter(|d| !d.is_zero()).count();
        Self { diagonal, rank, transforms }
    }

    pub fn divisibility_holds(&self) -> bool {
        let nz = &self.diagonal[..self.rank];
        nz.iter().all(|d| d.is_positive())
            && nz.windows(2).all(|w| (&w[1] % &w[0]).is_zero())
            && self.diagonal[self.rank..].iter().all(Zero::is_zero)
    }

    /// Diagonal entries greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| **d > BigInt::one()).cloned().collect()
    }
}

pub fn to_int_matrix(m: &[Vec<i64>]) -> IntMatrix {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = BigInt::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            s += &row[k] * &b[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.len();
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &a[n - 1][n - 1]
}

struct Elimination {
    a: IntMatrix,
    rows: usize,
    cols: usize,
    u: Option<IntMatrix>,
    v: Option<IntMatrix>,
}

impl Elimination {
    fn new(a: IntMatrix, cols: usize, transforms: bool) -> Self {
        let rows = a.len();
        Self {
            a,
            rows,
            cols,
            u: transforms.then(|| identity(rows)),
            v: transforms.then(|| identity(cols)),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            if let Some(u) = &mut self.u {
                u.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for r in &mut self.a {
                r.swap(i, j);
            }
            if let Some(v) = &mut self.v {
                for r in v {
                    r.swap(i, j);
                }
            }
        }
    }

    /// `row[dst] += q · row[src]`
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        fn go(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
            let (s, d) = if src < dst {
                let (lo, hi) = m.split_at_mut(dst);
                (&lo[src], &mut hi[0])
            } else {
                let (lo, hi) = m.split_at_mut(src);
                (&hi[0], &mut lo[dst])
            };
            for (x, y) in d.iter_mut().zip(s) {
                if !y.is_zero() {
                    *x += q * y;
                }
            }
        }
        go(&mut self.a, dst, src, q);
        if let Some(u) = &mut self.u {
            go(u, dst, src, q);
        }
    }

    /// `col[dst] += q · col[src]`
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        fn go(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
            for r in m {
                if !r[src].is_zero() {
                    let t = q * &r[src];
                    r[dst] += t;
                }
            }
        }
        go(&mut self.a, dst, src, q);
        if let Some(v) = &mut self.v {
            go(v, dst, src, q);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -&*x;
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = -&*x;
            }
        }
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                    if x.abs().is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn run(mut self) -> SnfResult {
        let n = self.rows.min(self.cols);
        let mut diag = Vec::with_capacity(n);
        for t in 0..n {
            let Some((pi, pj)) = self.min_entry(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..self.rows {
                    if !self.a[i][t].is_zero() {
                        let q = -(&self.a[i][t] / &self.a[t][t]);
                        self.add_row(i, t, &q);
                        clean &= self.a[i][t].is_zero();
                    }
                }
                for j in t + 1..self.cols {
                    if !self.a[t][j].is_zero() {
                        let q = -(&self.a[t][j] / &self.a[t][t]);
                        self.add_col(j, t, &q);
                        clean &= self.a[t][j].is_zero();
                    }
                }
                if !clean {
                    let pivot = self.a[t][t].abs();
                    let below = (t + 1..self.rows)
                        .filter(|&i| !self.a[i][t].is_zero())
                        .min_by_key(|&i| self.a[i][t].abs());
                    let right = (t + 1..self.cols)
                        .filter(|&j| !self.a[t][j].is_zero())
                        .min_by_key(|&j| self.a[t][j].abs());
                    match (below, right) {
                        (Some(i), Some(j)) if self.a[t][j].abs() < self.a[i][t].abs() => self.swap_cols(t, j),
                        (Some(i), _) if self.a[i][t].abs() < pivot => self.swap_rows(t, i),
                        (_, Some(j)) if self.a[t][j].abs() < pivot => self.swap_cols(t, j),
                        _ => {}
                    }
                    continue;
                }
                let p = self.a[t][t].clone();
                let bad = (t + 1..self.rows).find(|&i| (t + 1..self.cols).any(|j| !self.a[i][j].is_multiple_of(&p)));
                match bad {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            diag.push(self.a[t][t].clone());
        }
        diag.resize(n, BigInt::zero());
        let transforms = self.u.zip(self.v);
        SnfResult::from_diagonal(diag, transforms)
    }
}

/// Smith normal form of a dense matrix, keeping the unimodular transforms.
pub fn snf(m: &IntMatrix) -> SnfResult {
    let cols = m.first().map_or(0, Vec::len);
    Elimination::new(m.clone(), cols, true).run()
}

/// Diagonal only, dense elimination.
pub fn snf_diagonal(m: &IntMatrix) -> SnfResult {
    let cols = m.first().map_or(0, Vec::len);
    Elimination::new(m.clone(), cols, false).run()
}

/// Entry type for the sparse unit-pivot pass; `None` signals overflow.
trait SparseEntry: Clone + PartialEq {
    fn from_i64(v: i64) -> Self;
    fn is_unit(&self) -> bool;
    fn is_nil(&self) -> bool;
    /// `self - f · other`
    fn sub_mul(&self, f: &Self, other: &Self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn into_big(self) -> BigInt;
}

impl SparseEntry for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn sub_mul(&self, f: &Self, other: &Self) -> Option<Self> {
        self.checked_sub(f.checked_mul(*other)?)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
}

impl SparseEntry for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn is_nil(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn sub_mul(&self, f: &Self, other: &Self) -> Option<Self> {
        Some(self - f * other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn into_big(self) -> BigInt {
        self
    }
}

type SparseCol<T> = Vec<(usize, T)>;

/// `col - f · pivot` for columns sorted by row.
fn combine<T: SparseEntry>(col: &SparseCol<T>, f: &T, pivot: &SparseCol<T>) -> Option<SparseCol<T>> {
    let mut out = Vec::with_capacity(col.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    let zero = T::from_i64(0);
    while i < col.len() || j < pivot.len() {
        if j >= pivot.len() || (i < col.len() && col[i].0 < pivot[j].0) {
            out.push(col[i].clone());
            i += 1;
        } else if i >= col.len() || pivot[j].0 < col[i].0 {
            out.push((pivot[j].0, zero.sub_mul(f, &pivot[j].1)?));
            j += 1;
        } else {
            let v = col[i].1.sub_mul(f, &pivot[j].1)?;
            if !v.is_nil() {
                out.push((col[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

/// Column reduction keeping only columns whose lowest entry is a unit as
/// pivots. Their lows are distinct and the pivot block is unitriangular on
/// those rows, so it splits off as an identity. Every other column is then
/// reduced to the rows that carry no pivot and handed back as the
/// remainder. Returns the pivot count and the remainder.
fn unit_pass<T: SparseEntry>(b: &BoundaryMatrix) -> Option<(usize, IntMatrix)> {
    let mut pivots: Vec<SparseCol<T>> = Vec::new();
    let mut pivot_of: HashMap<usize, usize> = HashMap::new();
    let mut stuck: Vec<SparseCol<T>> = Vec::new();
    for col in b.columns() {
        let mut c: SparseCol<T> = col.iter().filter(|e| e.1 != 0).map(|&(i, v)| (i, T::from_i64(v))).collect();
        while let Some((low, lv)) = c.last() {
            let Some(&k) = pivot_of.get(low) else { break };
            let p = &pivots[k];
            // the pivot's low entry is ±1, so dividing by it is multiplying
            let f = lv.mul(&p.last().expect("pivot is nonzero").1)?;
            c = combine(&c, &f, p)?;
        }
        match c.last() {
            None => {}
            Some((low, lv)) if lv.is_unit() => {
                pivot_of.insert(*low, pivots.len());
                pivots.push(c);
            }
            Some(_) => stuck.push(c),
        }
    }
    for c in &mut stuck {
        while let Some(pos) = c.iter().rposition(|e| pivot_of.contains_key(&e.0)) {
            let p = &pivots[pivot_of[&c[pos].0]];
            let f = c[pos].1.mul(&p.last().expect("pivot is nonzero").1)?;
            *c = combine(c, &f, p)?;
        }
    }
    let rows: BTreeSet<usize> = stuck.iter().flatten().map(|e| e.0).collect();
    let row_pos: HashMap<usize, usize> = rows.iter().enumerate().map(|(k, &r)| (r, k)).collect();
    let mut rest = vec![vec![BigInt::zero(); stuck.len()]; rows.len()];
    for (j, c) in stuck.into_iter().enumerate() {
        for (i, v) in c {
            rest[row_pos[&i]][j] = v.into_big();
        }
    }
    Some((pivots.len(), rest))
}

/// Diagonal only, for sparse boundary matrices.
///
/// Unit pivots found by sparse column reduction each split off a `1`; the
/// remainder goes through the dense elimination. Arithmetic is in `i64`
/// unless it would overflow.
pub fn snf_sparse(b: &BoundaryMatrix) -> SnfResult {
    let (ones, dense) = unit_pass::<i64>(b).or_else(|| unit_pass::<BigInt>(b)).expect("big integers do not overflow");
    let cols = dense.first().map_or(0, Vec::len);
    let rest = Elimination::new(dense, cols, false).run();
    let mut diag = vec![BigInt::one(); ones];
    diag.extend(rest.diagonal.into_iter().filter(|d| !Zero::is_zero(d)));
    diag.resize(b.rows().min(b.cols()), BigInt::zero());
    SnfResult::from_diagonal(diag, None)
}
