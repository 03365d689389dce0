use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Finite abstract simplicial complex, stored downward closed.
///
/// Simplices are strictly increasing vertex tuples; orientation is the one
/// induced by that order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimplicialComplex {
    by_dim: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

fn normalize(s: &[usize]) -> Result<Vec<usize>> {
    if s.is_empty() {
        return Err(Error::BadSimplex(Vec::new(), "empty simplex"));
    }
    let mut v = s.to_vec();
    v.sort_unstable();
    if v.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::BadSimplex(s.to_vec(), "repeated vertex"));
    }
    Ok(v)
}

impl SimplicialComplex {
    /// Closure of the given simplices under taking faces.
    pub fn from_simplices<I, S>(simplices: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[usize]>,
    {
        let mut sets: Vec<BTreeSet<Vec<usize>>> = Vec::new();
        let mut tops = Vec::new();
        for s in simplices {
            tops.push(normalize(s.as_ref())?);
        }
        // process from the top dimension down so faces are generated once per parent
        tops.sort_by_key(|s| std::cmp::Reverse(s.len()));
        for s in tops {
            let d = s.len() - 1;
            if sets.len() <= d {
                sets.resize(d + 1, BTreeSet::new());
            }
            if sets[d].contains(&s) {
                continue;
            }
            let mut stack = vec![s];
            while let Some(t) = stack.pop() {
                let d = t.len() - 1;
                if !sets[d].insert(t.clone()) || d == 0 {
                    continue;
                }
                for i in 0..t.len() {
                    let mut f = t.clone();
                    f.remove(i);
                    if !sets[d - 1].contains(&f) {
                        stack.push(f);
                    }
                }
            }
        }
        Ok(Self::from_sets(sets))
    }

    fn from_sets(sets: Vec<BTreeSet<Vec<usize>>>) -> Self {
        let by_dim: Vec<Vec<Vec<usize>>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let index = by_dim
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        Self { by_dim, index }
    }

    /// Top dimension, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.by_dim.is_empty()
    }

    pub fn count(&self, k: usize) -> usize {
        self.by_dim.get(k).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    pub fn simplices(&self, k: usize) -> &[Vec<usize>] {
        self.by_dim.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s.len().checked_sub(1)?)?.get(s).copied()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.index_of(s).is_some()
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.simplices(0).iter().map(|v| v[0]).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim.iter().enumerate().map(|(k, l)| if k % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) }).sum()
    }

    /// Largest number of edges at a single vertex.
    pub fn max_vertex_degree(&self) -> usize {
        let mut deg: HashMap<usize, usize> = HashMap::new();
        for e in self.simplices(1) {
            *deg.entry(e[0]).or_default() += 1;
            *deg.entry(e[1]).or_default() += 1;
        }
        deg.into_values().max().unwrap_or(0)
    }

    /// Simplices that are not a face of any other simplex.
    pub fn maximal_simplices(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for (d, level) in self.by_dim.iter().enumerate() {
            let mut covered = vec![false; level.len()];
            if let Some(up) = self.by_dim.get(d + 1) {
                for s in up {
                    for i in 0..s.len() {
                        let mut f = s.clone();
                        f.remove(i);
                        covered[self.index[d][&f]] = true;
                    }
                }
            }
            out.extend(level.iter().zip(covered).filter(|(_, c)| !c).map(|(s, _)| s.clone()));
        }
        out
    }

    /// Subcomplex of simplices whose vertices all lie in `keep`.
    pub fn induced(&self, keep: &BTreeSet<usize>) -> Self {
        let sets: Vec<BTreeSet<Vec<usize>>> = self
            .by_dim
            .iter()
            .map(|l| l.iter().filter(|s| s.iter().all(|v| keep.contains(v))).cloned().collect::<BTreeSet<_>>())
            .take_while(|s| !s.is_empty())
            .collect();
        Self::from_sets(sets)
    }

    /// Boundary map from `k`-chains to `(k-1)`-chains.
    pub fn boundary_matrix(&self, k: usize) -> Result<BoundaryMatrix> {
        let dim = self.dim().unwrap_or(0);
        if k == 0 || k > dim || self.is_empty() {
            return Err(Error::DegreeOutOfRange { k, dim });
        }
        let m = self.raw_boundary(k);
        if k < dim {
            let up = self.raw_boundary(k + 1);
            if !m.composes_to_zero(&up) {
                return Err(Error::BadSimplex(Vec::new(), "boundary of boundary is nonzero"));
            }
        }
        Ok(m)
    }

    fn raw_boundary(&self, k: usize) -> BoundaryMatrix {
        let columns = self.by_dim[k]
            .iter()
            .map(|s| {
                let mut col: Vec<(usize, i64)> = (0..s.len())
                    .map(|i| {
                        let mut f = s.clone();
                        f.remove(i);
                        (self.index[k - 1][&f], if i % 2 == 0 { 1 } else { -1 })
                    })
                    .collect();
                col.sort_unstable();
                col
            })
            .collect();
        BoundaryMatrix { rows: self.count(k - 1), columns }
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexFile {
    simplices: Vec<Vec<usize>>,
}

impl Serialize for SimplicialComplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ComplexFile { simplices: self.maximal_simplices() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SimplicialComplex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let f = ComplexFile::deserialize(d)?;
        SimplicialComplex::from_simplices(f.simplices).map_err(serde::de::Error::custom)
    }
}

/// Sparse integer matrix stored by columns; each column sorted by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMatrix {
    rows: usize,
    columns: Vec<Vec<(usize, i64)>>,
}

impl BoundaryMatrix {
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, i64)>>) -> Self {
        Self { rows, columns }
    }

    pub fn from_dense(m: &[Vec<i64>]) -> Self {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        let columns = (0..cols)
            .map(|j| (0..rows).filter(|&i| m[i][j] != 0).map(|i| (i, m[i][j])).collect())
            .collect();
        Self { rows, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Vec<(usize, i64)>] {
        &self.columns
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0; self.cols()]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                m[i][j] = v;
            }
        }
        m
    }

    /// `self · other == 0`.
    pub fn composes_to_zero(&self, other: &BoundaryMatrix) -> bool {
        let mut acc: HashMap<usize, i64> = HashMap::new();
        other.columns.iter().all(|col| {
            acc.clear();
            for &(j, w) in col {
                for &(i, v) in &self.columns[j] {
                    *acc.entry(i).or_default() += v * w;
                }
            }
            acc.values().all(|&x| x == 0)
        })
    }
}
