//! Integer matrices, Smith normal form, and the lattice computations
//! (ranks, invariant factors, saturated kernels) that every homology and
//! exactness check in this crate is built on.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense arbitrary-precision integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch(format!("ragged rows: {} vs {} entries", bad.len(), cols)));
        }
        let data = rows.iter().flat_map(|r| r.iter().cloned().map(Into::into)).collect();
        Ok(IntegerMatrix { rows: rows.len(), cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Selects the listed columns, in order.
    pub fn select_columns(&self, columns: &[usize]) -> IntegerMatrix {
        let mut out = Self::zeros(self.rows, columns.len());
        for i in 0..self.rows {
            for (jj, &j) in columns.iter().enumerate() {
                out.set(i, jj, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        let columns = (0..self.cols)
            .map(|j| (0..self.rows).filter_map(|i| nonzero_entry(i, self.get(i, j))).collect())
            .collect();
        SparseMatrix { rows: self.rows, cols: self.cols, columns }
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        self.to_sparse().rank()
    }

    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.to_sparse().invariant_factors()
    }
}

fn nonzero_entry(i: usize, v: &BigInt) -> Option<(usize, BigInt)> {
    if v.is_zero() {
        None
    } else {
        Some((i, v.clone()))
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntegerMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal, each nonzero
/// diagonal entry dividing the next.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries of `D`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    /// Recomputes `U · M · V` and checks it against `D`, the diagonal shape, and the divisibility chain.
    pub fn verify(&self, m: &IntegerMatrix) -> bool {
        let Ok(um) = self.u.mul(m) else { return false };
        let Ok(umv) = um.mul(&self.v) else { return false };
        if umv != self.d {
            return false;
        }
        for i in 0..self.d.rows {
            for j in 0..self.d.cols {
                if i != j && !self.d.get(i, j).is_zero() {
                    return false;
                }
            }
        }
        let diag: Vec<&BigInt> = (0..self.d.rows.min(self.d.cols)).map(|i| self.d.get(i, i)).collect();
        diag.windows(2).all(|w| {
            if w[0].is_zero() {
                w[1].is_zero()
            } else {
                !w[0].is_negative() && (w[1] % w[0]).is_zero()
            }
        }) && diag.last().is_none_or(|x| !x.is_negative())
    }
}

/// Working state for the dense elimination; `u`/`v` are tracked only when requested.
struct DenseSnf {
    a: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
    rows: usize,
    cols: usize,
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

impl DenseSnf {
    fn new(a: Vec<Vec<BigInt>>, rows: usize, cols: usize, track: bool) -> Self {
        let (u, v) = if track { (Some(identity_rows(rows)), Some(identity_rows(cols))) } else { (None, None) };
        DenseSnf { a, u, v, rows, cols }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    /// row_i += k * row_j
    fn add_row(&mut self, i: usize, j: usize, k: &BigInt) {
        let src = self.a[j].clone();
        for (x, y) in self.a[i].iter_mut().zip(&src) {
            if !y.is_zero() {
                *x += k * y;
            }
        }
        if let Some(u) = &mut self.u {
            let src = u[j].clone();
            for (x, y) in u[i].iter_mut().zip(&src) {
                if !y.is_zero() {
                    *x += k * y;
                }
            }
        }
    }

    /// col_i += k * col_j
    fn add_col(&mut self, i: usize, j: usize, k: &BigInt) {
        for row in &mut self.a {
            if !row[j].is_zero() {
                let delta = k * &row[j];
                row[i] += delta;
            }
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                if !row[j].is_zero() {
                    let delta = k * &row[j];
                    row[i] += delta;
                }
            }
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

    fn min_in_submatrix(&self, t: usize) -> Option<(usize, usize)> {
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

    fn run(&mut self) {
        let n = self.rows.min(self.cols);
        for t in 0..n {
            let Some((pi, pj)) = self.min_in_submatrix(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                // Euclidean reduction of column t and row t against the pivot.
                let mut smaller: Option<(usize, bool)> = None;
                for i in t + 1..self.rows {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = self.a[i][t].div_floor(&self.a[t][t]);
                    self.add_row(i, t, &-q);
                    if !self.a[i][t].is_zero() && smaller.is_none() {
                        smaller = Some((i, true));
                    }
                }
                for j in t + 1..self.cols {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = self.a[t][j].div_floor(&self.a[t][t]);
                    self.add_col(j, t, &-q);
                    if !self.a[t][j].is_zero() && smaller.is_none() {
                        smaller = Some((j, false));
                    }
                }
                match smaller {
                    Some((i, true)) => {
                        self.swap_rows(t, i);
                        continue;
                    }
                    Some((j, false)) => {
                        self.swap_cols(t, j);
                        continue;
                    }
                    None => {}
                }
                // Row and column are clear; enforce divisibility of the rest.
                let p = self.a[t][t].clone();
                let offender = (t + 1..self.rows)
                    .find(|&i| (t + 1..self.cols).any(|j| !(&self.a[i][j] % &p).is_zero()));
                match offender {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

fn to_matrix(rows: Vec<Vec<BigInt>>, r: usize, c: usize) -> IntegerMatrix {
    IntegerMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
}

/// Smith normal form with transforms. The result is checked (`U·M·V = D`)
/// before it is returned; a failed check is an internal bug and panics.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithDecomposition {
    let mut work = DenseSnf::new(m.to_rows(), m.rows, m.cols, true);
    work.run();
    let dec = SmithDecomposition {
        u: to_matrix(work.u.take().unwrap(), m.rows, m.rows),
        v: to_matrix(work.v.take().unwrap(), m.cols, m.cols),
        d: to_matrix(work.a, m.rows, m.cols),
    };
    assert!(dec.verify(m), "Smith normal form self-check failed");
    dec
}

fn dense_invariant_factors(a: Vec<Vec<BigInt>>, rows: usize, cols: usize) -> Vec<BigInt> {
    let mut work = DenseSnf::new(a, rows, cols, false);
    work.run();
    (0..rows.min(cols)).map(|i| work.a[i][i].clone()).filter(|x| !x.is_zero()).collect()
}

type SparseVec = Vec<(usize, BigInt)>;

/// `a - k * b` for sparse vectors sorted by index.
fn axpy(a: &SparseVec, k: &BigInt, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ia = a.get(i).map(|x| x.0).unwrap_or(usize::MAX);
        let jb = b.get(j).map(|x| x.0).unwrap_or(usize::MAX);
        if ia < jb {
            out.push(a[i].clone());
            i += 1;
        } else if jb < ia {
            out.push((jb, -(k * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - k * &b[j].1;
            if !v.is_zero() {
                out.push((ia, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn lookup(v: &SparseVec, idx: usize) -> Option<&BigInt> {
    v.binary_search_by_key(&idx, |x| x.0).ok().map(|p| &v[p].1)
}

/// Column-sparse integer matrix: `columns[j]` lists the nonzero `(row, value)` pairs
/// of column `j`, sorted by row. Column `j` is the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    /// Builds from unsorted column entry lists; duplicates are summed and zeros dropped.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, BigInt)>>) -> Self {
        let cols = columns.len();
        let columns = columns
            .into_iter()
            .map(|mut col| {
                col.sort_by_key(|x| x.0);
                let mut merged: SparseVec = Vec::with_capacity(col.len());
                for (i, v) in col {
                    debug_assert!(i < rows);
                    match merged.last_mut() {
                        Some(last) if last.0 == i => last.1 += v,
                        _ => merged.push((i, v)),
                    }
                }
                merged.retain(|x| !x.1.is_zero());
                merged
            })
            .collect();
        SparseMatrix { rows, cols, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[(usize, BigInt)] {
        &self.columns[j]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        lookup(&self.columns[j], i).cloned().unwrap_or_default()
    }

    pub fn to_dense(&self) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(self.rows, self.cols);
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                m.set(*i, j, v.clone());
            }
        }
        m
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                cols[*i].push((j, v.clone()));
            }
        }
        SparseMatrix { rows: self.cols, cols: self.rows, columns: cols }
    }

    /// `self · other`.
    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let columns = other
            .columns
            .iter()
            .map(|col| {
                let mut acc: Vec<(usize, BigInt)> = Vec::new();
                for (k, v) in col {
                    acc.extend(self.columns[*k].iter().map(|(i, w)| (*i, v * w)));
                }
                acc
            })
            .collect();
        Ok(SparseMatrix::from_columns(self.rows, columns))
    }

    /// Stacks `self` on top of `other` (same column count).
    pub fn vstack(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!("vstack {} vs {} columns", self.cols, other.cols)));
        }
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| a.iter().cloned().chain(b.iter().map(|(i, v)| (i + self.rows, v.clone()))).collect())
            .collect();
        Ok(SparseMatrix { rows: self.rows + other.rows, cols: self.cols, columns })
    }

    /// `[self | other]` (same row count).
    pub fn hstack(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch(format!("hstack {} vs {} rows", self.rows, other.rows)));
        }
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().cloned());
        Ok(SparseMatrix { rows: self.rows, cols: self.cols + other.cols, columns })
    }

    pub fn scaled(&self, k: &BigInt) -> SparseMatrix {
        let columns = self
            .columns
            .iter()
            .map(|c| c.iter().map(|(i, v)| (*i, v * k)).filter(|x| !x.1.is_zero()).collect())
            .collect();
        SparseMatrix { rows: self.rows, cols: self.cols, columns }
    }

    /// Nonzero invariant factors (the nonzero diagonal of the Smith form), ascending.
    ///
    /// Unit pivots are eliminated sparsely first; whatever remains is handed
    /// to the dense Smith reduction.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let mut cols: Vec<SparseVec> = self.columns.clone();
        let mut active: BTreeSet<usize> = (0..self.cols).filter(|&j| !cols[j].is_empty()).collect();
        let mut row_cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.rows];
        for &j in &active {
            for (i, _) in &cols[j] {
                row_cols[*i].insert(j);
            }
        }
        let mut units = 0usize;
        loop {
            // Markowitz-style choice among unit entries.
            let mut best: Option<(usize, usize, usize)> = None;
            for &j in &active {
                let clen = cols[j].len();
                for (i, v) in &cols[j] {
                    if v.abs().is_one() {
                        let cost = (clen - 1) * (row_cols[*i].len() - 1);
                        if best.is_none_or(|b| cost < b.2) {
                            best = Some((j, *i, cost));
                        }
                    }
                }
                if matches!(best, Some((_, _, 0))) {
                    break;
                }
            }
            let Some((pj, pi, _)) = best else { break };
            let pivot_col = std::mem::take(&mut cols[pj]);
            let pv = lookup(&pivot_col, pi).unwrap().clone();
            let others: Vec<usize> = row_cols[pi].iter().copied().filter(|&j| j != pj).collect();
            for j in others {
                let a = lookup(&cols[j], pi).unwrap().clone();
                // pv = ±1, so pv^{-1} = pv
                let k = a * &pv;
                let updated = axpy(&cols[j], &k, &pivot_col);
                for (i, _) in &cols[j] {
                    row_cols[*i].remove(&j);
                }
                for (i, _) in &updated {
                    row_cols[*i].insert(j);
                }
                if updated.is_empty() {
                    active.remove(&j);
                }
                cols[j] = updated;
            }
            for (i, _) in &pivot_col {
                row_cols[*i].remove(&pj);
            }
            // Row pi now only meets the pivot column; drop the row from the rest.
            debug_assert!(row_cols[pi].is_empty());
            active.remove(&pj);
            units += 1;
        }

        let mut factors = vec![BigInt::one(); units];
        if !active.is_empty() {
            let live_rows: Vec<usize> = (0..self.rows).filter(|&i| !row_cols[i].is_empty()).collect();
            let row_index: std::collections::HashMap<usize, usize> =
                live_rows.iter().enumerate().map(|(k, &i)| (i, k)).collect();
            let active: Vec<usize> = active.into_iter().collect();
            let mut dense = vec![vec![BigInt::zero(); active.len()]; live_rows.len()];
            for (jj, &j) in active.iter().enumerate() {
                for (i, v) in &cols[j] {
                    dense[row_index[i]][jj] = v.clone();
                }
            }
            let mut rest = dense_invariant_factors(dense, live_rows.len(), active.len());
            rest.sort();
            factors.extend(rest);
        }
        factors
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    /// Rank over `F_p`.
    pub fn rank_mod_p(&self, p: u64) -> usize {
        let pp = BigInt::from(p);
        let mut rows: Vec<Vec<u64>> = vec![vec![0; self.rows]; self.cols];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                rows[j][*i] = v.mod_floor(&pp).to_u64().unwrap();
            }
        }
        rank_mod_p_dense(rows, p)
    }

    /// A basis of the integer kernel `{x ∈ Z^cols | M x = 0}`.
    ///
    /// The basis spans the full (saturated) kernel lattice, not only a finite-index sublattice.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        // Row-echelon reduction over Q keeps the rational kernel; the integer
        // kernel is that intersected with Z^cols, read off from a Smith transform.
        let t = self.transpose();
        let mut pivots: std::collections::BTreeMap<usize, SparseVec> = std::collections::BTreeMap::new();
        for row in t.columns {
            let mut v = row;
            while let Some((lead, a)) = v.first().cloned() {
                match pivots.get(&lead) {
                    Some(p) => {
                        let b = &p[0].1;
                        let g = a.gcd(b);
                        let (ka, kb) = (b / &g, &a / &g);
                        let scaled: SparseVec = v.iter().map(|(i, x)| (*i, x * &ka)).collect();
                        v = normalize_content(axpy(&scaled, &kb, p));
                    }
                    None => {
                        pivots.insert(lead, normalize_content(v));
                        break;
                    }
                }
            }
        }
        let k = pivots.len();
        let mut dense = vec![vec![BigInt::zero(); self.cols]; k];
        for (r, (_, v)) in pivots.iter().enumerate() {
            for (j, x) in v {
                dense[r][*j] = x.clone();
            }
        }
        let reduced = to_matrix(dense, k, self.cols);
        let dec = smith_normal_form(&reduced);
        let rank = dec.rank();
        (rank..self.cols).map(|j| dec.v.column(j)).collect()
    }
}

fn normalize_content(v: SparseVec) -> SparseVec {
    let g = v.iter().fold(BigInt::zero(), |g, (_, x)| g.gcd(x));
    if g.is_zero() || g.is_one() {
        return v;
    }
    let sign = if v.first().is_some_and(|x| x.1.is_negative()) { -g.clone() } else { g.clone() };
    v.into_iter().map(|(i, x)| (i, x / &sign)).collect()
}

fn rank_mod_p_dense(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(pr) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, pr);
        let inv = mod_inverse(rows[rank][c], p);
        for x in rows[rank].iter_mut() {
            *x = (*x as u128 * inv as u128 % p as u128) as u64;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c];
                let (top, rest) = if r < rank {
                    let (a, b) = rows.split_at_mut(rank);
                    (&b[0], &mut a[r])
                } else {
                    let (a, b) = rows.split_at_mut(r);
                    (&a[rank], &mut b[0])
                };
                for (x, y) in rest.iter_mut().zip(top.iter()) {
                    let sub = (f as u128 * *y as u128 % p as u128) as u64;
                    *x = (*x + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p as i128) as u64
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Exactness data for `X --a--> Y --b--> Z` over the integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessCheck {
    pub composite_zero: bool,
    pub rank_a: usize,
    pub rank_b: usize,
    /// `im a` is saturated in `Y` (all invariant factors of `a` are 1).
    pub image_a_saturated: bool,
    pub image_b_saturated: bool,
}

impl ExactnessCheck {
    pub fn run(a: &SparseMatrix, b: &SparseMatrix) -> Result<Self> {
        let composite_zero = b.mul(a)?.is_zero();
        let fa = a.invariant_factors();
        let fb = b.invariant_factors();
        Ok(ExactnessCheck {
            composite_zero,
            rank_a: fa.len(),
            rank_b: fb.len(),
            image_a_saturated: fa.iter().all(One::is_one),
            image_b_saturated: fb.iter().all(One::is_one),
        })
    }

    /// `ker b = im a` inside `Y` of the given rank.
    pub fn exact_at_middle(&self, dim_y: usize) -> bool {
        self.composite_zero && self.image_a_saturated && self.rank_a + self.rank_b == dim_y
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntegerMatrix {
        IntegerMatrix::from_rows(rows).unwrap()
    }

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn snf_of_coprime_diagonal() {
        let a = m(&[vec![2, 0], vec![0, 3]]);
        let dec = smith_normal_form(&a);
        assert_eq!(dec.invariant_factors(), bi(&[1, 6]));
        assert!(dec.verify(&a));
    }

    #[test]
    fn snf_of_zero_matrix() {
        let a = IntegerMatrix::zeros(3, 2);
        let dec = smith_normal_form(&a);
        assert!(dec.d.is_zero());
        assert_eq!(dec.rank(), 0);
    }

    #[test]
    fn snf_of_empty_shapes() {
        let a = IntegerMatrix::zeros(0, 3);
        assert_eq!(smith_normal_form(&a).rank(), 0);
        let a = IntegerMatrix::zeros(2, 0);
        assert_eq!(smith_normal_form(&a).rank(), 0);
        assert!(a.to_sparse().kernel_basis().is_empty());
    }

    #[test]
    fn snf_textbook_example() {
        let a = m(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let dec = smith_normal_form(&a);
        assert_eq!(dec.invariant_factors(), bi(&[2, 6, 12]));
        assert_eq!(a.invariant_factors(), bi(&[2, 6, 12]));
    }

    #[test]
    fn sparse_and_dense_factors_agree() {
        let a = m(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9], vec![1, 0, 1]]);
        assert_eq!(a.invariant_factors(), smith_normal_form(&a).invariant_factors());
        assert_eq!(a.rank(), 3);
    }

    #[test]
    fn kernel_is_saturated() {
        // x + 2y = 0 → kernel spanned by (2, -1); 2x + 4y = 0 has the same kernel
        let a = m(&[vec![2, 4]]);
        let ker = a.to_sparse().kernel_basis();
        assert_eq!(ker.len(), 1);
        let v = &ker[0];
        assert!((&v[0] * BigInt::from(2) + &v[1] * BigInt::from(4)).is_zero());
        assert!(v[0].gcd(&v[1]).is_one());
    }

    #[test]
    fn rank_mod_p_sees_characteristic() {
        let a = m(&[vec![2, 0], vec![0, 1]]);
        assert_eq!(a.to_sparse().rank_mod_p(2), 1);
        assert_eq!(a.to_sparse().rank_mod_p(3), 2);
    }

    #[test]
    fn exactness_of_short_sequence() {
        // 0 -> Z --2--> Z -> Z/2: not saturated, so not exact as free modules
        let a = m(&[vec![2]]).to_sparse();
        let b = IntegerMatrix::zeros(0, 1).to_sparse();
        let chk = ExactnessCheck::run(&a, &b).unwrap();
        assert!(!chk.exact_at_middle(1));
        let a = m(&[vec![1], vec![0]]).to_sparse();
        let b = m(&[vec![0, 1]]).to_sparse();
        assert!(ExactnessCheck::run(&a, &b).unwrap().exact_at_middle(2));
    }

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(13) && !is_prime(1) && !is_prime(15));
    }
}
