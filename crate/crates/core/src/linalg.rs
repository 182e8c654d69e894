//! Dense exact linear algebra over [`Scalar`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{common_order, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &Scalar::one())
    }

    /// `c * 1` of size `n`.
    pub fn scalar(n: usize, c: &Scalar) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged matrix rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect())
            .expect("ragged integer matrix")
    }

    /// Builds a matrix from its columns.
    pub fn from_columns(n: usize, cols: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Lifts all entries into `Q(zeta_order)`.
    pub fn in_field(&self, order: u64) -> Result<Self> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.lift(order)).collect::<Result<_>>()?,
        })
    }

    /// Lcm of the field orders of the entries.
    pub fn field_order(&self) -> Result<u64> {
        common_order(&self.data)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(l, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Matrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn checked_add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip(other, |a, b| a - b)
    }

    /// `self - c * 1`.
    pub fn minus_scalar(&self, c: &Scalar) -> Matrix {
        assert!(self.is_square());
        let mut m = self.clone();
        for i in 0..self.rows {
            m[(i, i)] = &m[(i, i)] - c;
        }
        m
    }

    pub fn pow(&self, e: u32) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| if i == j { self[(i, j)].is_one() } else { self[(i, j)].is_zero() })
            })
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = rref_in_place(&mut m.data, m.rows, m.cols);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Rank computed by column elimination (row reduction of the transpose).
    pub fn rank_by_columns(&self) -> usize {
        self.transpose().rank()
    }

    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|j| !pivots.contains(j)).collect();
        let vecs: Vec<Vec<Scalar>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -&r[(i, f)];
                }
                v
            })
            .collect();
        Subspace::span(self.cols, &vecs)
    }

    /// Column space.
    pub fn image(&self) -> Subspace {
        Subspace::span(self.rows, &self.transpose().to_rows())
    }

    pub fn rank_kernel_image(&self) -> (usize, Subspace, Subspace) {
        let img = self.image();
        (img.dim(), self.kernel(), img)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = hstack(&[self.clone(), Matrix::identity(n)])?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::DivisionByZero);
        }
        Ok(r.submatrix(0..n, n..2 * n))
    }

    pub fn determinant(&self) -> Scalar {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.data.clone();
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[r * n + c].is_zero()) else {
                return Scalar::zero();
            };
            if p != c {
                for j in 0..n {
                    m.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = m[c * n + c].clone();
            det = &det * &piv;
            let inv = piv.inv().expect("nonzero pivot");
            for r in c + 1..n {
                if m[r * n + c].is_zero() {
                    continue;
                }
                let f = &m[r * n + c] * &inv;
                for j in c..n {
                    let t = &f * &m[c * n + j];
                    m[r * n + j] = &m[r * n + j] - &t;
                }
            }
        }
        det
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let mut out = Matrix::zeros(rows.len(), cols.len());
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                out[(i, j)] = self[(r, c)].clone();
            }
        }
        out
    }

    pub fn set_block(&mut self, row: usize, col: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(row + i, col + j)] = block[(i, j)].clone();
            }
        }
    }

    /// Solves `self * z = y` for `z` when `self` has independent columns and every
    /// column of `y` lies in its column space.
    pub fn solve_in_span(&self, y: &Matrix) -> Option<Matrix> {
        if y.rows != self.rows {
            return None;
        }
        let d = self.cols;
        let aug = hstack(&[self.clone(), y.clone()]).ok()?;
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= d) || pivots.len() != d {
            return None;
        }
        Some(r.submatrix(0..d, d..d + y.cols))
    }
}

fn rref_in_place(m: &mut [Scalar], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i * cols + c].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = m[r * cols + c].inv().expect("nonzero pivot");
        for j in c..cols {
            if !m[r * cols + j].is_zero() {
                m[r * cols + j] = &m[r * cols + j] * &inv;
            }
        }
        for i in 0..rows {
            if i == r || m[i * cols + c].is_zero() {
                continue;
            }
            let f = m[i * cols + c].clone();
            for j in c..cols {
                if m[r * cols + j].is_zero() {
                    continue;
                }
                let t = &f * &m[r * cols + j];
                m[i * cols + j] = &m[i * cols + j] - &t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn hstack(blocks: &[Matrix]) -> Result<Matrix> {
    let rows = blocks.first().map_or(0, |b| b.rows);
    if blocks.iter().any(|b| b.rows != rows) {
        return Err(Error::Shape("hstack of blocks with different heights".into()));
    }
    let cols = blocks.iter().map(|b| b.cols).sum();
    let mut out = Matrix::zeros(rows, cols);
    let mut c = 0;
    for b in blocks {
        out.set_block(0, c, b);
        c += b.cols;
    }
    Ok(out)
}

pub fn vstack(blocks: &[Matrix]) -> Result<Matrix> {
    let cols = blocks.first().map_or(0, |b| b.cols);
    if blocks.iter().any(|b| b.cols != cols) {
        return Err(Error::Shape("vstack of blocks with different widths".into()));
    }
    let rows = blocks.iter().map(|b| b.rows).sum();
    let mut out = Matrix::zeros(rows, cols);
    let mut r = 0;
    for b in blocks {
        out.set_block(r, 0, b);
        r += b.rows;
    }
    Ok(out)
}

pub fn block_diag(blocks: &[Matrix]) -> Matrix {
    let rows = blocks.iter().map(|b| b.rows).sum();
    let cols = blocks.iter().map(|b| b.cols).sum();
    let mut out = Matrix::zeros(rows, cols);
    let (mut r, mut c) = (0, 0);
    for b in blocks {
        out.set_block(r, c, b);
        r += b.rows;
        c += b.cols;
    }
    out
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add<&Matrix> for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub<&Matrix> for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// A subspace of `K^n`, stored as the nonzero rows of a reduced row echelon
/// form, so equal subspaces have identical representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, &Matrix::identity(ambient).to_rows())
    }

    pub fn span(ambient: usize, vectors: &[Vec<Scalar>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        let mut data: Vec<Scalar> = vectors.iter().flatten().cloned().collect();
        let pivots = rref_in_place(&mut data, vectors.len(), ambient);
        let basis = (0..pivots.len()).map(|i| data[i * ambient..(i + 1) * ambient].to_vec()).collect();
        Subspace { ambient, basis, pivots }
    }

    /// Span of the columns of `m`.
    pub fn column_span(m: &Matrix) -> Self {
        m.image()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    /// Basis vectors as the columns of an `ambient x dim` matrix.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.ambient, &self.basis)
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Shape(format!(
                "subspaces of K^{} and K^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let mut vecs = self.basis.clone();
        vecs.extend(other.basis.iter().cloned());
        Ok(Self::span(self.ambient, &vecs))
    }

    /// Vectors `y` with `<b, y> = 0` for every basis vector `b` (bilinear, no conjugation).
    pub fn annihilator(&self) -> Subspace {
        if self.basis.is_empty() {
            return Self::full(self.ambient);
        }
        Matrix::from_rows(self.basis.clone()).expect("uniform rows").kernel()
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let mut eqs = self.annihilator().basis;
        eqs.extend(other.annihilator().basis);
        if eqs.is_empty() {
            return Ok(Self::full(self.ambient));
        }
        Ok(Matrix::from_rows(eqs)?.kernel())
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        // Reduce against the echelon basis.
        let mut r = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        r.iter().all(Scalar::is_zero)
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check(other)?;
        Ok(other.basis.iter().all(|v| self.contains_vector(v)))
    }

    pub fn is_invariant_under(&self, m: &Matrix) -> bool {
        self.basis.iter().all(|b| {
            let col = Matrix::from_columns(self.ambient, std::slice::from_ref(b));
            self.contains_vector(&(m * &col).column(0))
        })
    }

    /// The quotient `K^n / self`, using the standard basis vectors at non-pivot
    /// positions as complement.
    pub fn quotient(&self) -> Quotient {
        let n = self.ambient;
        let free: Vec<usize> = (0..n).filter(|j| !self.pivots.contains(j)).collect();
        let q = free.len();
        let mut projection = Matrix::zeros(q, n);
        let mut lift = Matrix::zeros(n, q);
        for (t, &j) in free.iter().enumerate() {
            projection[(t, j)] = Scalar::one();
            lift[(j, t)] = Scalar::one();
            // v - sum_r v[p_r] b_r vanishes at pivots; its coordinate j is
            // v[j] - sum_r v[p_r] b_r[j].
            for (b, &p) in self.basis.iter().zip(&self.pivots) {
                if !b[j].is_zero() {
                    projection[(t, p)] = -&b[j];
                }
            }
        }
        Quotient { subspace: self.clone(), projection, lift }
    }
}

/// `K^n / S` with a chosen complement.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub subspace: Subspace,
    /// `dim(quotient) x n`, kills `S`.
    pub projection: Matrix,
    /// `n x dim(quotient)`, a section of the projection.
    pub lift: Matrix,
}

impl Quotient {
    pub fn dim(&self) -> usize {
        self.projection.rows()
    }

    /// The endomorphism induced by `m` on the quotient.
    pub fn induced(&self, m: &Matrix) -> Result<Matrix> {
        if !self.subspace.is_invariant_under(m) {
            return Err(Error::NotInvariant);
        }
        Ok(&(&self.projection * m) * &self.lift)
    }
}

/// Dimension of the unital algebra generated by square matrices of equal size.
pub fn generated_algebra_dim(mats: &[Matrix]) -> Result<usize> {
    let Some(first) = mats.first() else {
        return Ok(1);
    };
    let n = first.rows();
    if mats.iter().any(|m| m.rows() != n || m.cols() != n) {
        return Err(Error::Shape("generators must be square of one size".into()));
    }
    let mut basis = IncrementalBasis::new(n * n);
    let mut queue = vec![Matrix::identity(n)];
    while let Some(m) = queue.pop() {
        if basis.insert(m.entries()) {
            for g in mats {
                queue.push(&m * g);
            }
        }
        if basis.len() == n * n {
            break;
        }
    }
    Ok(basis.len())
}

/// Echelon basis supporting insertion with membership test.
struct IncrementalBasis {
    dim: usize,
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl IncrementalBasis {
    fn new(dim: usize) -> Self {
        IncrementalBasis { dim, rows: Vec::new() }
    }

    fn len(&self) -> usize {
        self.rows.len()
    }

    fn insert(&mut self, v: &[Scalar]) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let mut r = v.to_vec();
        for (p, b) in &self.rows {
            if r[*p].is_zero() {
                continue;
            }
            let f = r[*p].clone();
            for (x, y) in r.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero");
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        self.rows.push((p, r));
        true
    }
}

/// Outcome of an isomorphism test between two matrix tuples.
#[derive(Clone, Debug)]
pub enum Isomorphism {
    /// An invertible `X` with `X A_i = B_i X` for all `i`.
    Isomorphic(Matrix),
    NotIsomorphic,
    Undetermined,
}

impl Isomorphism {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, Isomorphism::Isomorphic(_))
    }
}

/// Maximum number of grid points tried by [`hom_space`]'s invertibility search.
pub const ISO_GRID_BUDGET: usize = 50_000;

#[derive(Clone, Debug)]
pub struct HomSpace {
    /// Basis of `{X : X A_i = B_i X}`, each `n_B x n_A`.
    pub basis: Vec<Matrix>,
    pub isomorphism: Isomorphism,
}

/// Intertwiners from `rep_a` to `rep_b` and an isomorphism decision.
///
/// For `n = n_A = n_B`, `det(sum c_t X_t)` is a polynomial of degree at most `n`
/// in each coefficient, so if it vanishes on the grid `{0, ..., n}^dim` it
/// vanishes identically and no invertible intertwiner exists. The grid is
/// searched when it has at most [`ISO_GRID_BUDGET`] points; otherwise an
/// unsuccessful search reports `Undetermined`.
pub fn hom_space(rep_a: &[Matrix], rep_b: &[Matrix]) -> Result<HomSpace> {
    if rep_a.len() != rep_b.len() {
        return Err(Error::Shape("tuples of different length".into()));
    }
    let na = rep_a.first().map_or(0, Matrix::rows);
    let nb = rep_b.first().map_or(0, Matrix::rows);
    if rep_a.iter().any(|m| m.rows() != na || m.cols() != na)
        || rep_b.iter().any(|m| m.rows() != nb || m.cols() != nb)
    {
        return Err(Error::Shape("tuples must consist of square matrices of one size".into()));
    }
    let unknowns = na * nb;
    let mut eqs: Vec<Vec<Scalar>> = Vec::new();
    for (a, b) in rep_a.iter().zip(rep_b) {
        for r in 0..nb {
            for c in 0..na {
                // (X A)[r][c] - (B X)[r][c], X[r][l] at index r * na + l.
                let mut row = vec![Scalar::zero(); unknowns];
                for l in 0..na {
                    row[r * na + l] = &row[r * na + l] + &a[(l, c)];
                }
                for l in 0..nb {
                    row[l * na + c] = &row[l * na + c] - &b[(r, l)];
                }
                if row.iter().any(|x| !x.is_zero()) {
                    eqs.push(row);
                }
            }
        }
    }
    let space = if eqs.is_empty() {
        Subspace::full(unknowns)
    } else {
        Matrix::from_rows(eqs)?.kernel()
    };
    let basis: Vec<Matrix> = space
        .basis()
        .iter()
        .map(|v| Matrix::from_rows(v.chunks(na.max(1)).map(<[Scalar]>::to_vec).collect()))
        .collect::<Result<_>>()?;
    let isomorphism = decide_invertible(na, nb, &basis);
    Ok(HomSpace { basis, isomorphism })
}

fn decide_invertible(na: usize, nb: usize, basis: &[Matrix]) -> Isomorphism {
    if na != nb {
        return Isomorphism::NotIsomorphic;
    }
    if na == 0 {
        return Isomorphism::Isomorphic(Matrix::zeros(0, 0));
    }
    if basis.is_empty() {
        return Isomorphism::NotIsomorphic;
    }
    if let Some(x) = basis.iter().find(|x| x.is_invertible()) {
        return Isomorphism::Isomorphic(x.clone());
    }
    let d = basis.len();
    if d == 1 {
        return Isomorphism::NotIsomorphic;
    }
    let side = na + 1;
    let points = (side as u128).checked_pow(d as u32);
    let complete = points.is_some_and(|p| p <= ISO_GRID_BUDGET as u128);
    let mut coeffs = vec![0usize; d];
    let mut tried = 0usize;
    loop {
        // advance odometer
        let mut i = 0;
        loop {
            if i == d {
                return if complete { Isomorphism::NotIsomorphic } else { Isomorphism::Undetermined };
            }
            coeffs[i] += 1;
            if coeffs[i] < side {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
        tried += 1;
        if tried > ISO_GRID_BUDGET {
            return Isomorphism::Undetermined;
        }
        let mut x = Matrix::zeros(na, na);
        for (c, b) in coeffs.iter().zip(basis) {
            if *c != 0 {
                x = &x + &b.scale(&Scalar::from_int(*c as i64));
            }
        }
        if x.is_invertible() {
            return Isomorphism::Isomorphic(x);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64, k: i64) -> Scalar {
        Scalar::root_of_unity(n, k).unwrap()
    }

    #[test]
    fn rank_kernel_image_examples() {
        let (r, k, i) = Matrix::identity(3).rank_kernel_image();
        assert_eq!((r, k.dim(), i.dim()), (3, 0, 3));
        let (r, k, _) = Matrix::zeros(2, 3).rank_kernel_image();
        assert_eq!((r, k.dim()), (0, 3));
        assert_eq!(Matrix::from_ints(&[&[0, 1], &[0, 0]]).rank(), 1);
    }

    #[test]
    fn subspace_examples() {
        let a = Subspace::span(2, &[vec![Scalar::one(), Scalar::from_int(2)]]);
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert_eq!(a.sum(&a).unwrap(), a);
        let b = Subspace::span(2, &[vec![Scalar::one(), Scalar::zero()]]);
        assert_eq!(a.intersect(&b).unwrap().dim(), 0);
        assert_eq!(a.sum(&b).unwrap(), Subspace::full(2));
        let line = Subspace::span(3, &[vec![Scalar::one(), Scalar::one(), Scalar::zero()]]);
        let q = line.quotient();
        assert_eq!(q.dim(), 2);
        assert_eq!(q.projection.rank(), 2);
        assert!((&q.projection * &line.basis_matrix()).is_zero());
        assert!((&q.projection * &q.lift).is_identity());
        assert!(matches!(a.sum(&line), Err(Error::Shape(_))));
    }

    #[test]
    fn induced_map_requires_invariance() {
        let line = Subspace::span(2, &[vec![Scalar::one(), Scalar::zero()]]);
        let q = line.quotient();
        let upper = Matrix::from_ints(&[&[1, 5], &[0, 3]]);
        assert_eq!(q.induced(&upper).unwrap(), Matrix::from_ints(&[&[3]]));
        let lower = Matrix::from_ints(&[&[1, 0], &[1, 1]]);
        assert_eq!(q.induced(&lower), Err(Error::NotInvariant));
    }

    #[test]
    fn generated_algebra_examples() {
        assert_eq!(generated_algebra_dim(&[Matrix::from_ints(&[&[7]])]).unwrap(), 1);
        let d1 = Matrix::diagonal(&[Scalar::one(), Scalar::from_int(2)]);
        let d2 = Matrix::diagonal(&[z(3, 1), Scalar::zero()]);
        assert!(generated_algebra_dim(&[d1, d2]).unwrap() <= 2);
        let j = Matrix::from_ints(&[&[0, 1], &[0, 0]]);
        assert_eq!(generated_algebra_dim(&[j.clone(), j.transpose()]).unwrap(), 4);
    }

    #[test]
    fn hom_space_examples() {
        let j = Matrix::from_ints(&[&[0, 1], &[0, 0]]);
        let rep = vec![j.clone(), j.transpose()];
        let h = hom_space(&rep, &rep).unwrap();
        assert_eq!(h.basis.len(), 1);
        assert!(h.isomorphism.is_isomorphic());
        let h = hom_space(&[Matrix::identity(2)], &[Matrix::identity(3)]).unwrap();
        assert!(matches!(h.isomorphism, Isomorphism::NotIsomorphic));
        let h = hom_space(&[Matrix::identity(1)], &[Matrix::scalar(1, &z(3, 1))]).unwrap();
        assert!(h.basis.is_empty());
    }

    #[test]
    fn isomorphism_found_off_basis() {
        // Hom(A, A) for A = diag(1, 1, 2) has basis of singular matrices in echelon form.
        let a = Matrix::diagonal(&[Scalar::one(), Scalar::one(), Scalar::from_int(2)]);
        let h = hom_space(&[a.clone()], &[a]).unwrap();
        assert_eq!(h.basis.len(), 5);
        assert!(h.isomorphism.is_isomorphic());
    }

    #[test]
    fn inverse_and_determinant() {
        let m = Matrix::from_rows(vec![vec![z(4, 1), Scalar::one()], vec![Scalar::zero(), z(8, 1)]]).unwrap();
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        assert_eq!(m.determinant(), z(8, 3));
        assert!(Matrix::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_err());
    }
}
