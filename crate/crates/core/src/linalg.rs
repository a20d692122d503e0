//! Exact rational matrices.
//!
//! Elimination is fraction-free (Bareiss) on integer-scaled rows; results
//! are returned in reduced row echelon form so they are deterministic.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{common_denominator, format_rational, Q};

#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> QMatrix {
        QMatrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> QMatrix {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    /// Builds from rows; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: impl IntoIterator<Item = Vec<Q>>) -> Result<QMatrix> {
        let mut data = Vec::new();
        let mut nrows = 0;
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {nrows} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r);
            nrows += 1;
        }
        Ok(QMatrix {
            rows: nrows,
            cols,
            data,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> QMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        QMatrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect()),
        )
        .expect("ragged integer matrix")
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Q]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[Q]) -> Result<Vec<Q>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok(self.rows().map(|r| dot(r, x)).collect())
    }

    /// Appends the columns of `other` on the right.
    pub fn hconcat(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{} rows against {} rows",
                self.rows, other.rows
            )));
        }
        QMatrix::from_rows(
            self.cols + other.cols,
            (0..self.rows).map(|i| self.row(i).iter().chain(other.row(i)).cloned().collect()),
        )
    }

    pub fn rank(&self) -> usize {
        bareiss(self).1.len()
    }

    /// Reduced row echelon form: nonzero rows and their pivot columns.
    pub fn rref(&self) -> Echelon {
        let (ints, pivots) = bareiss(self);
        let mut rows: Vec<Vec<Q>> = ints
            .into_iter()
            .take(pivots.len())
            .map(|r| r.into_iter().map(Q::from_integer).collect())
            .collect();
        for (i, &p) in pivots.iter().enumerate().rev() {
            let lead = rows[i][p].clone();
            for x in rows[i].iter_mut() {
                *x /= &lead;
            }
            for h in 0..i {
                let f = rows[h][p].clone();
                if !f.is_zero() {
                    let (top, bottom) = rows.split_at_mut(i);
                    axpy(&mut top[h], &-f, &bottom[0]);
                }
            }
        }
        Echelon {
            cols: self.cols,
            rows,
            pivots,
        }
    }

    /// Basis of `{x : M x = 0}`, in reduced row echelon form.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let e = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !e.pivots.contains(c)).collect();
        let basis = free.iter().map(|&f| {
            let mut x = vec![Q::zero(); self.cols];
            x[f] = Q::one();
            for (row, &p) in e.rows.iter().zip(&e.pivots) {
                x[p] = -row[f].clone();
            }
            x
        });
        QMatrix::from_rows(self.cols, basis)
            .expect("kernel vectors have full length")
            .rref()
            .rows
    }

    /// Basis of `{y : yᵀ M = 0}`: the linear relations among the rows of `M`.
    pub fn left_kernel(&self) -> Vec<Vec<Q>> {
        self.transpose().kernel()
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Q;

    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{}", self.rows, self.cols)?;
        for r in self.rows() {
            let cells: Vec<String> = r.iter().map(format_rational).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Rows cleared of denominators, in row echelon form by Bareiss elimination,
/// with the pivot column of each leading row.
fn bareiss(m: &QMatrix) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut a: Vec<Vec<BigInt>> = m
        .rows()
        .map(|r| {
            let d = common_denominator(r);
            r.iter().map(|x| (x * Q::from_integer(d.clone())).to_integer()).collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            for j in c + 1..m.cols {
                let v = &pivot_row[c] * &row[j] - &row[c] * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// `y += k * x`
fn axpy(y: &mut [Q], k: &Q, x: &[Q]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += k * xi;
        }
    }
}

/// A row space in reduced row echelon form, grown one vector at a time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    cols: usize,
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(cols: usize) -> Echelon {
        Echelon {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its components along the pivot columns of this basis.
    pub fn reduce(&self, v: &[Q]) -> Vec<Q> {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let f = out[p].clone();
            if !f.is_zero() {
                axpy(&mut out, &-f, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Coordinates of `v` in this basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Q]) -> Option<Vec<Q>> {
        let coords: Vec<Q> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (row, c) in self.rows.iter().zip(&coords) {
            if !c.is_zero() {
                axpy(&mut residual, &-c.clone(), row);
            }
        }
        residual.iter().all(Zero::is_zero).then_some(coords)
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Q]) -> Result<bool> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} into {} columns",
                v.len(),
                self.cols
            )));
        }
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let lead = r[p].clone();
        for x in r.iter_mut() {
            *x /= &lead;
        }
        for row in self.rows.iter_mut() {
            let f = row[p].clone();
            if !f.is_zero() {
                axpy(row, &-f, &r);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        Ok(true)
    }
}

/// Outcome of [`solve`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    /// A solution with every free variable set to zero.
    Feasible(Vec<Q>),
    /// `y` with `yᵀA = 0` and `yᵀb ≠ 0`.
    Infeasible { certificate: Vec<Q> },
}

pub fn solve(a: &QMatrix, b: &[Q]) -> Result<Solution> {
    if b.len() != a.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for {} equations",
            b.len(),
            a.nrows()
        )));
    }
    let column = QMatrix::from_rows(1, b.iter().map(|x| vec![x.clone()]))?;
    let e = a.hconcat(&column)?.rref();
    if e.pivots.last() == Some(&a.ncols()) {
        let certificate = a
            .left_kernel()
            .into_iter()
            .find(|y| !dot(y, b).is_zero())
            .expect("an inconsistent system has a separating left kernel vector");
        return Ok(Solution::Infeasible { certificate });
    }
    let mut x = vec![Q::zero(); a.ncols()];
    for (row, &p) in e.rows.iter().zip(&e.pivots) {
        x[p] = row[a.ncols()].clone();
    }
    Ok(Solution::Feasible(x))
}

/// Dimension of the affine hull of `points`.
pub fn affine_dim(points: &[Vec<Q>]) -> Result<usize> {
    let (first, rest) = points.split_first().ok_or(Error::EmptyInput("point set"))?;
    let diffs = rest
        .iter()
        .map(|p| {
            if p.len() != first.len() {
                return Err(Error::DimensionMismatch("points of different dimension".into()));
            }
            Ok(p.iter().zip(first).map(|(x, y)| x - y).collect())
        })
        .collect::<Result<Vec<Vec<Q>>>>()?;
    Ok(QMatrix::from_rows(first.len(), diffs)?.rank())
}

/// Whether `p` lies outside the convex hull of `others`.
pub fn hull_vertex_test(p: &[Q], others: &[Vec<Q>]) -> Result<bool> {
    if others.iter().any(|o| o.len() != p.len()) {
        return Err(Error::DimensionMismatch("points of different dimension".into()));
    }
    // λ ≥ 0 with Σ λ_j o_j = p and Σ λ_j = 1.
    let rows = (0..p.len())
        .map(|d| others.iter().map(|o| o[d].clone()).collect())
        .chain(std::iter::once(vec![Q::one(); others.len()]));
    let a = QMatrix::from_rows(others.len(), rows)?;
    let mut b = p.to_vec();
    b.push(Q::one());
    Ok(!lp_feasible(&a, &b))
}

/// Phase-one simplex with Bland's rule: is `{x ≥ 0 : A x = b}` nonempty?
pub fn lp_feasible(a: &QMatrix, b: &[Q]) -> bool {
    let (m, n) = (a.nrows(), a.ncols());
    // Columns: n structural, m artificial, then the right-hand side.
    let width = n + m + 1;
    let mut t: Vec<Vec<Q>> = (0..m)
        .map(|i| {
            let flip = b[i].is_negative();
            let mut row = vec![Q::zero(); width];
            for j in 0..n {
                row[j] = if flip { -a[(i, j)].clone() } else { a[(i, j)].clone() };
            }
            row[n + i] = Q::one();
            row[n + m] = b[i].abs();
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Reduced costs of the artificial-sum objective; last entry is -objective.
    let mut cost = vec![Q::zero(); width];
    for row in &t {
        for j in 0..n {
            cost[j] -= &row[j];
        }
        cost[n + m] -= &row[n + m];
    }
    while let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Q)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[n + m] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((l, r)) => ratio < *r || (ratio == *r && basis[i] < basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // Phase one is bounded below by zero, so some row always limits the step.
        let (l, _) = leave.expect("phase-one objective is bounded");
        let piv = t[l][enter].clone();
        for x in t[l].iter_mut() {
            *x /= &piv;
        }
        let pivot_row = t[l].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != l && !row[enter].is_zero() {
                let f = -row[enter].clone();
                axpy(row, &f, &pivot_row);
            }
        }
        if !cost[enter].is_zero() {
            let f = -cost[enter].clone();
            axpy(&mut cost, &f, &pivot_row);
        }
        basis[l] = enter;
    }
    cost[n + m].is_zero()
}
