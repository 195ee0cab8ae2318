//! Linear algebra over [`Scalar`]: sparse-row matrices, diagonal metrics,
//! exact elimination, pivoted LDL and unnormalized Gram-Schmidt.

use std::cmp::Ordering;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::scalar::{Scalar, Tolerance};

pub type Vector = Vec<Scalar>;

pub fn zeros(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit(n: usize, k: usize) -> Vector {
    let mut v = zeros(n);
    v[k] = Scalar::one();
    v
}

pub fn vadd(x: &[Scalar], y: &[Scalar]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn vsub(x: &[Scalar], y: &[Scalar]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn vscale(s: &Scalar, x: &[Scalar]) -> Vector {
    if s.is_zero() {
        return zeros(x.len());
    }
    x.iter().map(|a| if a.is_zero() { Scalar::zero() } else { s * a }).collect()
}

/// y += s * x
pub fn axpy(y: &mut [Scalar], s: &Scalar, x: &[Scalar]) {
    if s.is_zero() {
        return;
    }
    for (a, b) in y.iter_mut().zip(x) {
        if !b.is_zero() {
            *a += &(s * b);
        }
    }
}

pub fn vconj(x: &[Scalar]) -> Vector {
    x.iter().map(Scalar::conj).collect()
}

pub fn is_zero_vec(x: &[Scalar], tol: &Tolerance) -> bool {
    x.iter().all(|a| a.is_negligible(tol))
}

pub fn max_abs(x: &[Scalar]) -> f64 {
    x.iter().map(Scalar::abs).fold(0.0, f64::max)
}

/// Diagonal positive weights defining <x, y> = sum_k w_k conj(x_k) y_k.
#[derive(Clone, Debug, PartialEq)]
pub struct Metric(pub Vec<Scalar>);

impl Metric {
    pub fn identity(n: usize) -> Metric {
        Metric(vec![Scalar::one(); n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(Scalar::is_one)
    }

    /// Antilinear in the left slot.
    pub fn inner(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for ((w, a), b) in self.0.iter().zip(x).zip(y) {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            acc += &(&(w * &a.conj()) * b);
        }
        acc
    }

    /// inner on sparse vectors sorted by index.
    pub fn inner_sparse(&self, x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> Scalar {
        let mut acc = Scalar::zero();
        let (mut i, mut j) = (0, 0);
        while i < x.len() && j < y.len() {
            match x[i].0.cmp(&y[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    acc += &(&(&self.0[x[i].0] * &x[i].1.conj()) * &y[j].1);
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    pub fn norm_sq(&self, x: &[Scalar]) -> Scalar {
        self.inner(x, x)
    }

    pub fn direct_sum(&self, other: &Metric) -> Metric {
        Metric(self.0.iter().chain(&other.0).cloned().collect())
    }
}

/// Matrix stored as sorted sparse rows without explicit zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<(usize, Scalar)>>,
}

impl Mat {
    pub fn zeros(nrows: usize, ncols: usize) -> Mat {
        Mat { nrows, ncols, rows: vec![Vec::new(); nrows] }
    }

    pub fn identity(n: usize) -> Mat {
        Mat::diagonal(&vec![Scalar::one(); n])
    }

    pub fn diagonal(d: &[Scalar]) -> Mat {
        let n = d.len();
        let rows = d.iter().enumerate().map(|(i, x)| if x.is_zero() { vec![] } else { vec![(i, x.clone())] }).collect();
        Mat { nrows: n, ncols: n, rows }
    }

    pub fn from_dense(rows: &[Vec<Scalar>], ncols: usize) -> Mat {
        let rows = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), ncols, "ragged dense matrix");
                r.iter().enumerate().filter(|(_, x)| !x.is_prunable()).map(|(j, x)| (j, x.clone())).collect()
            })
            .collect::<Vec<_>>();
        Mat { nrows: rows.len(), ncols, rows }
    }

    /// Builds from (row, col, value) triples; repeated positions are summed.
    pub fn from_triples(nrows: usize, ncols: usize, triples: impl IntoIterator<Item = (usize, usize, Scalar)>) -> Mat {
        let mut rows: Vec<std::collections::BTreeMap<usize, Scalar>> = vec![Default::default(); nrows];
        for (i, j, x) in triples {
            assert!(i < nrows && j < ncols, "entry ({i},{j}) outside {nrows}x{ncols}");
            let e = rows[i].entry(j).or_insert_with(Scalar::zero);
            *e += &x;
        }
        let rows = rows.into_iter().map(|r| r.into_iter().filter(|(_, x)| !x.is_prunable()).collect()).collect();
        Mat { nrows, ncols, rows }
    }

    pub fn from_columns(nrows: usize, cols: &[Vector]) -> Mat {
        let triples = cols.iter().enumerate().flat_map(|(j, c)| {
            c.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(move |(i, x)| (i, j, x.clone()))
        });
        Mat::from_triples(nrows, cols.len(), triples)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &[(usize, Scalar)] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        match self.rows[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => self.rows[i][k].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(j, x)| (i, *j, x)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Vec<Vector> {
        let mut out = vec![zeros(self.ncols); self.nrows];
        for (i, j, x) in self.triples() {
            out[i][j] = x.clone();
        }
        out
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.nrows).map(|i| self.get(i, j)).collect()
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.ncols, "matrix-vector dimension mismatch");
        self.rows
            .iter()
            .map(|r| {
                let mut acc = Scalar::zero();
                for (j, x) in r {
                    if !v[*j].is_zero() {
                        acc += &(x * &v[*j]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.ncols, other.nrows, "matrix product dimension mismatch");
        let triples = self.rows.iter().enumerate().flat_map(|(i, r)| {
            r.iter().flat_map(move |(k, x)| other.rows[*k].iter().map(move |(j, y)| (i, *j, x * y)))
        });
        Mat::from_triples(self.nrows, other.ncols, triples.collect::<Vec<_>>())
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let t = self.triples().chain(other.triples()).map(|(i, j, x)| (i, j, x.clone()));
        Mat::from_triples(self.nrows, self.ncols, t.collect::<Vec<_>>())
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.add(&other.scale(&Scalar::from_i64(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        let t = self.triples().map(|(i, j, x)| (i, j, s * x));
        Mat::from_triples(self.nrows, self.ncols, t.collect::<Vec<_>>())
    }

    pub fn conj(&self) -> Mat {
        let t = self.triples().map(|(i, j, x)| (i, j, x.conj()));
        Mat::from_triples(self.nrows, self.ncols, t.collect::<Vec<_>>())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Mat {
        let t = self.triples().map(|(i, j, x)| (j, i, x.conj()));
        Mat::from_triples(self.ncols, self.nrows, t.collect::<Vec<_>>())
    }

    /// Adjoint with respect to a diagonal metric: W^{-1} A^dagger W.
    pub fn metric_adjoint(&self, m: &Metric) -> Mat {
        assert_eq!(self.nrows, self.ncols);
        let t = self.triples().map(|(i, j, x)| (j, i, &(&x.conj() * &m.0[i]) / &m.0[j]));
        Mat::from_triples(self.ncols, self.nrows, t.collect::<Vec<_>>())
    }

    pub fn block_diag(&self, other: &Mat) -> Mat {
        let t = self
            .triples()
            .map(|(i, j, x)| (i, j, x.clone()))
            .chain(other.triples().map(|(i, j, x)| (i + self.nrows, j + self.ncols, x.clone())));
        Mat::from_triples(self.nrows + other.nrows, self.ncols + other.ncols, t.collect::<Vec<_>>())
    }

    /// Largest entrywise |A - B|, with the position of the worst entry.
    pub fn max_diff(&self, other: &Mat) -> (f64, Option<(usize, usize)>) {
        let d = self.sub(other);
        let mut best = (0.0, None);
        for (i, j, x) in d.triples() {
            if x.abs() > best.0 {
                best = (x.abs(), Some((i, j)));
            }
        }
        best
    }

    pub fn approx_eq(&self, other: &Mat, tol: &Tolerance) -> bool {
        if (self.nrows, self.ncols) != (other.nrows, other.ncols) {
            return false;
        }
        self.triples().chain(other.triples()).all(|(i, j, _)| self.get(i, j).close(&other.get(i, j), tol))
    }
}

/// Pivoted LDL of a hermitian matrix: G = sum_k d_k l_k l_k^dagger with l_k[p_k] = 1.
#[derive(Clone, Debug)]
pub struct Ldl {
    pub pivots: Vec<usize>,
    pub d: Vec<Scalar>,
    pub l: Vec<Vector>,
}

#[derive(Clone, Debug)]
pub struct NotPsd {
    pub index: usize,
    pub detail: String,
}

fn pivot_threshold(x: &Scalar, tol: &Tolerance) -> bool {
    match x {
        Scalar::Exact(_) => x.re_sign() == Ordering::Greater,
        Scalar::Float(_) => x.re_f64() > tol.eps_psd,
    }
}

/// Factorizes a hermitian PSD matrix, pivoting on the largest remaining
/// diagonal. Stops when no diagonal exceeds the threshold and then requires
/// the remaining Schur complement to vanish.
pub fn ldl_psd(g: &[Vector], tol: &Tolerance) -> Result<Ldl, NotPsd> {
    let n = g.len();
    let mut s: Vec<Vector> = g.to_vec();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut out = Ldl { pivots: vec![], d: vec![], l: vec![] };
    loop {
        let best = remaining.iter().copied().max_by(|&a, &b| s[a][a].cmp_re(&s[b][b]));
        let p = match best {
            Some(p) if pivot_threshold(&s[p][p], tol) => p,
            _ => break,
        };
        let d = s[p][p].clone();
        let dinv = d.inv();
        let mut l = zeros(n);
        for &i in &remaining {
            if !s[i][p].is_zero() {
                l[i] = &s[i][p] * &dinv;
            }
        }
        remaining.retain(|&i| i != p);
        for &i in &remaining {
            if s[i][p].is_zero() {
                continue;
            }
            let sip = s[i][p].clone();
            for &j in &remaining {
                if s[p][j].is_zero() {
                    continue;
                }
                let t = &(&sip * &s[p][j]) * &dinv;
                s[i][j] -= &t;
            }
        }
        out.pivots.push(p);
        out.d.push(d);
        out.l.push(l);
    }
    for &i in &remaining {
        for &j in &remaining {
            let x = &s[i][j];
            let bad = match x {
                Scalar::Exact(_) => !x.is_zero(),
                Scalar::Float(_) => {
                    if i == j {
                        x.re_f64() < -tol.eps_psd
                    } else {
                        x.abs() > tol.eps_psd.max(tol.eps_num)
                    }
                }
            };
            if bad {
                return Err(NotPsd {
                    index: i,
                    detail: format!("residual Schur entry ({i},{j}) = {x} after {} pivots", out.pivots.len()),
                });
            }
        }
    }
    Ok(out)
}

fn to_nalgebra(h: &[Vector]) -> DMatrix<Complex64> {
    let n = h.len();
    DMatrix::from_fn(n, n, |i, j| h[i][j].to_c64())
}

/// Eigenvalues of a hermitian matrix (float), ascending.
pub fn hermitian_eigenvalues(h: &[Vector]) -> Vec<f64> {
    if h.is_empty() {
        return vec![];
    }
    let m = to_nalgebra(h);
    let herm = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let mut ev: Vec<f64> = herm.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    ev
}

pub fn min_eigenvalue(h: &[Vector]) -> f64 {
    hermitian_eigenvalues(h).first().copied().unwrap_or(0.0)
}

pub fn max_eigenvalue(h: &[Vector]) -> f64 {
    hermitian_eigenvalues(h).last().copied().unwrap_or(0.0)
}

/// PSD verdict: exact LDL for exact matrices, eigenvalues >= -eps_psd for
/// float ones. Returns the verdict and the smallest eigenvalue.
pub fn is_psd(h: &[Vector], tol: &Tolerance) -> (bool, f64) {
    let min = min_eigenvalue(h);
    let exact = h.iter().flatten().all(|x| matches!(x, Scalar::Exact(_)));
    if exact {
        (ldl_psd(h, tol).is_ok(), min)
    } else {
        (min >= -tol.eps_psd, min)
    }
}

pub fn is_hermitian(h: &[Vector], tol: &Tolerance) -> bool {
    let n = h.len();
    (0..n).all(|i| (0..n).all(|j| h[i][j].close(&h[j][i].conj(), tol)))
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(a: &mut [Vector], tol: &Tolerance) -> Vec<usize> {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let best = (r..nrows)
            .filter(|&i| !a[i][c].is_negligible(tol))
            .max_by(|&x, &y| a[x][c].abs().partial_cmp(&a[y][c].abs()).unwrap_or(Ordering::Equal));
        let Some(p) = best else {
            for row in a.iter_mut().skip(r) {
                row[c] = Scalar::zero();
            }
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv();
        let pr: Vector = a[r].iter().map(|x| x * &inv).collect();
        a[r] = pr;
        for i in 0..nrows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pr = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pr) {
                    if !y.is_zero() {
                        *x -= &(&f * y);
                    }
                }
                a[i][c] = Scalar::zero();
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Nonzero entries of x as (index, value).
pub fn sparse(x: &[Scalar]) -> Vec<(usize, Scalar)> {
    x.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect()
}

/// Rank of a list of vectors by incremental sparse elimination; cheap when
/// the vectors are sparse and nearly triangular.
pub fn sparse_rank<'a>(vs: impl IntoIterator<Item = &'a Vector>, tol: &Tolerance) -> usize {
    use std::collections::BTreeMap;
    let mut pivots: BTreeMap<usize, BTreeMap<usize, Scalar>> = BTreeMap::new();
    for v in vs {
        let mut x: BTreeMap<usize, Scalar> = sparse(v).into_iter().collect();
        loop {
            x.retain(|_, s| !s.is_negligible(tol));
            let Some((&lead, lv)) = x.iter().next() else { break };
            let Some(p) = pivots.get(&lead) else {
                pivots.insert(lead, x);
                break;
            };
            let f = lv / &p[&lead];
            for (&k, pk) in p {
                let e = x.entry(k).or_insert_with(Scalar::zero);
                *e = &*e - &(&f * pk);
            }
            x.remove(&lead);
        }
    }
    pivots.len()
}

pub fn rank(rows: &[Vector], tol: &Tolerance) -> usize {
    let mut a = rows.to_vec();
    rref(&mut a, tol).len()
}

/// Basis of {x : A x = 0} for a dense row list with `ncols` columns.
pub fn nullspace(rows: &[Vector], ncols: usize, tol: &Tolerance) -> Vec<Vector> {
    let mut a = rows.to_vec();
    let pivots = rref(&mut a, tol);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = zeros(ncols);
            v[f] = Scalar::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&a[r][f];
            }
            v
        })
        .collect()
}

/// Solves A X = B for square invertible A (dense, columns of B given as rows of `b`).
pub fn solve(a: &[Vector], b: &[Vector], tol: &Tolerance) -> Option<Vec<Vector>> {
    let n = a.len();
    let m = b.len();
    let mut aug: Vec<Vector> = (0..n)
        .map(|i| {
            let mut row = a[i].clone();
            row.extend(b.iter().map(|col| col[i].clone()));
            row
        })
        .collect();
    let pivots = rref(&mut aug, tol);
    if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
        return None;
    }
    Some((0..m).map(|k| (0..n).map(|i| aug[i][n + k].clone()).collect()).collect())
}

/// Orthogonal (unnormalized) basis of a subspace under a diagonal metric,
/// grown by Gram-Schmidt.
#[derive(Clone, Debug)]
pub struct OrthoBasis {
    pub metric: Metric,
    pub vecs: Vec<Vector>,
    pub norms: Vec<Scalar>,
    tol: Tolerance,
}

impl OrthoBasis {
    pub fn new(metric: Metric, tol: Tolerance) -> OrthoBasis {
        OrthoBasis { metric, vecs: vec![], norms: vec![], tol }
    }

    pub fn spanned_by(metric: Metric, tol: Tolerance, vs: impl IntoIterator<Item = Vector>) -> OrthoBasis {
        let mut b = OrthoBasis::new(metric, tol);
        for v in vs {
            b.add(&v);
        }
        b
    }

    pub fn dim(&self) -> usize {
        self.vecs.len()
    }

    pub fn ambient(&self) -> usize {
        self.metric.dim()
    }

    /// Coefficients <u_k, x>/<u_k, u_k>.
    pub fn coords(&self, x: &[Scalar]) -> Vector {
        self.vecs.iter().zip(&self.norms).map(|(u, n)| &self.metric.inner(u, x) / n).collect()
    }

    pub fn residual(&self, x: &[Scalar]) -> Vector {
        let mut r = x.to_vec();
        for (u, n) in self.vecs.iter().zip(&self.norms) {
            let c = &self.metric.inner(u, &r) / n;
            axpy(&mut r, &-&c, u);
        }
        r
    }

    pub fn project(&self, x: &[Scalar]) -> Vector {
        vsub(x, &self.residual(x))
    }

    fn negligible(&self, r: &[Scalar], x: &[Scalar]) -> bool {
        match r.iter().find(|s| !s.is_zero()) {
            None => true,
            Some(Scalar::Exact(_)) => false,
            Some(_) => {
                let scale = 1f64.max(max_abs(x));
                max_abs(r) <= self.tol.eps_num * scale * 10.0
            }
        }
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        let r = self.residual(x);
        self.negligible(&r, x)
    }

    /// Adds x if independent; returns its index in the basis.
    pub fn add(&mut self, x: &[Scalar]) -> Option<usize> {
        let r = self.residual(x);
        if self.negligible(&r, x) {
            return None;
        }
        let n = self.metric.norm_sq(&r);
        self.vecs.push(r);
        self.norms.push(n);
        Some(self.vecs.len() - 1)
    }

    /// Orthogonal projection onto the span as a matrix.
    pub fn projection(&self) -> Mat {
        let n = self.ambient();
        let mut triples = Vec::new();
        for (u, nrm) in self.vecs.iter().zip(&self.norms) {
            for (i, ui) in u.iter().enumerate() {
                if ui.is_zero() {
                    continue;
                }
                for (j, uj) in u.iter().enumerate() {
                    if uj.is_zero() {
                        continue;
                    }
                    let x = &(&(ui * &uj.conj()) * &self.metric.0[j]) / nrm;
                    triples.push((i, j, x));
                }
            }
        }
        Mat::from_triples(n, n, triples)
    }

    /// Completes to an orthogonal basis of the whole space using unit vectors
    /// and returns the added complement basis.
    pub fn complement(&self) -> OrthoBasis {
        let mut full = self.clone();
        let mut comp = OrthoBasis::new(self.metric.clone(), self.tol);
        for k in 0..self.ambient() {
            if let Some(i) = full.add(&unit(self.ambient(), k)) {
                comp.vecs.push(full.vecs[i].clone());
                comp.norms.push(full.norms[i].clone());
            }
        }
        comp
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_i64(n)
    }

    fn dense(rows: &[&[i64]]) -> Vec<Vector> {
        rows.iter().map(|r| r.iter().map(|&x| s(x)).collect()).collect()
    }

    #[test]
    fn ldl_reconstructs_gram() {
        let g = dense(&[&[4, 2, 2], &[2, 2, 0], &[2, 0, 2]]);
        let f = ldl_psd(&g, &Tolerance::default()).unwrap();
        assert_eq!(f.pivots.len(), 2);
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = Scalar::zero();
                for k in 0..f.d.len() {
                    acc += &(&(&f.l[k][i] * &f.d[k]) * &f.l[k][j].conj());
                }
                assert_eq!(acc, g[i][j]);
            }
        }
    }

    #[test]
    fn ldl_rejects_indefinite() {
        assert!(ldl_psd(&dense(&[&[1, 2], &[2, 1]]), &Tolerance::default()).is_err());
        assert!(ldl_psd(&dense(&[&[0, 1], &[1, 0]]), &Tolerance::default()).is_err());
        assert!(ldl_psd(&dense(&[&[-1]]), &Tolerance::default()).is_err());
    }

    #[test]
    fn nullspace_and_solve() {
        let tol = Tolerance::default();
        let a = dense(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = nullspace(&a, 3, &tol);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let m = Mat::from_dense(&a, 3);
            assert!(is_zero_vec(&m.mul_vec(v), &tol));
        }
        let a = dense(&[&[2, 1], &[1, 3]]);
        let x = solve(&a, &[vec![s(3), s(5)]], &tol).unwrap();
        assert_eq!(x[0], vec![Scalar::ratio(4, 5), Scalar::ratio(7, 5)]);
    }

    #[test]
    fn ortho_basis_projection_is_idempotent() {
        let tol = Tolerance::default();
        let m = Metric(vec![s(1), s(2), s(3)]);
        let b = OrthoBasis::spanned_by(m.clone(), tol, vec![vec![s(1), s(1), s(0)], vec![s(2), s(2), s(0)], vec![s(0), s(1), s(1)]]);
        assert_eq!(b.dim(), 2);
        let p = b.projection();
        assert_eq!(p.mul(&p), p);
        assert_eq!(p.metric_adjoint(&m), p);
        let c = b.complement();
        assert_eq!(c.dim(), 1);
        assert_eq!(p.add(&c.projection()), Mat::identity(3));
    }

    #[test]
    fn sparse_products() {
        let a = Mat::from_dense(&dense(&[&[0, 1], &[1, 0]]), 2);
        assert_eq!(a.mul(&a), Mat::identity(2));
        assert_eq!(a.adjoint(), a);
        assert_eq!(a.mul_vec(&[s(3), s(4)]), vec![s(4), s(3)]);
        assert_eq!(a.block_diag(&Mat::identity(1)).nnz(), 3);
    }

    #[test]
    fn eigenvalues_of_hermitian() {
        let ev = hermitian_eigenvalues(&dense(&[&[2, 1], &[1, 2]]));
        assert!((ev[0] - 1.0).abs() < 1e-12 && (ev[1] - 3.0).abs() < 1e-12);
    }
}
