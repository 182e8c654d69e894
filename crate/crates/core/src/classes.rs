//! Conjugacy classes described by an eigenvalue row and the ranks of partial
//! products, their Jordan forms, and the brackets `xi^[alpha]`, `zeta*[alpha]`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{block_diag, Matrix};
use crate::roots::{DimVector, Weights};
use crate::scalar::{common_order, Rational, Scalar};

/// Multiplicative type: row `i` is `(xi_{i1}, ..., xi_{i,w_i})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeData {
    pub rows: Vec<Vec<Scalar>>,
}

/// Additive type with rational entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditiveType {
    pub rows: Vec<Vec<Rational>>,
}

impl TypeData {
    pub fn new(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        if rows.iter().any(Vec::is_empty) {
            return Err(Error::Input("every type row needs at least one eigenvalue".into()));
        }
        Ok(TypeData { rows })
    }

    pub fn weights(&self) -> Weights {
        Weights::new(self.rows.iter().map(Vec::len).collect()).expect("nonempty rows")
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.rows[i - 1][j - 1]
    }

    /// Lifts every entry into one cyclotomic field.
    pub fn unified(&self) -> Result<Self> {
        let order = common_order(self.rows.iter().flatten())?;
        Ok(TypeData {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|x| x.lift(order)).collect::<Result<_>>())
                .collect::<Result<_>>()?,
        })
    }

    pub fn field_order(&self) -> Result<u64> {
        common_order(self.rows.iter().flatten())
    }

    /// `xi^[e_0] = prod_i xi_{i1}`.
    pub fn first_product(&self) -> Scalar {
        self.rows.iter().fold(Scalar::one(), |acc, r| &acc * &r[0])
    }
}

impl AdditiveType {
    pub fn weights(&self) -> Weights {
        Weights::new(self.rows.iter().map(Vec::len).collect()).expect("nonempty rows")
    }
}

fn increments(w: &Weights, a: &DimVector) -> Result<Vec<Vec<i64>>> {
    a.check_shape(w)?;
    Ok(w.as_slice()
        .iter()
        .enumerate()
        .map(|(i, &wi)| (1..=wi).map(|j| a.arm_entry(i + 1, j - 1) - a.arm_entry(i + 1, j)).collect())
        .collect())
}

/// `xi^[alpha] = prod_{i,j} xi_{ij}^(alpha_{i,j-1} - alpha_{ij})`.
pub fn xi_bracket(t: &TypeData, a: &DimVector) -> Result<Scalar> {
    let inc = increments(&t.weights(), a)?;
    let mut acc = Scalar::one();
    for (row, exps) in t.rows.iter().zip(&inc) {
        for (x, &e) in row.iter().zip(exps) {
            if e != 0 {
                acc = acc.checked_mul(&x.pow(e)?)?;
            }
        }
    }
    Ok(acc)
}

/// `zeta*[alpha] = sum_{i,j} zeta_{ij} (alpha_{i,j-1} - alpha_{ij})`.
pub fn zeta_star(t: &AdditiveType, a: &DimVector) -> Result<Rational> {
    let inc = increments(&t.weights(), a)?;
    let mut acc = Rational::zero();
    for (row, exps) in t.rows.iter().zip(&inc) {
        for (x, &e) in row.iter().zip(exps) {
            acc += x * Rational::from_integer(e.into());
        }
    }
    Ok(acc)
}

/// A conjugacy class: eigenvalue row `(xi_1, ..., xi_d)` annihilating it and
/// `dims = (n_0, ..., n_{d-1})`, `n_j` the rank of `(A - xi_1)...(A - xi_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSpec {
    pub eigenvalues: Vec<Scalar>,
    pub dims: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Validation {
    pub valid: bool,
    pub diagnostics: Vec<String>,
}

impl ClassSpec {
    pub fn new(eigenvalues: Vec<Scalar>, dims: Vec<usize>) -> Result<Self> {
        let c = ClassSpec { eigenvalues, dims };
        let v = c.validate();
        if v.valid {
            Ok(c)
        } else {
            Err(Error::InvalidClass(v.diagnostics.join("; ")))
        }
    }

    pub fn size(&self) -> usize {
        self.dims.first().copied().unwrap_or(0)
    }

    /// `n_j` with the convention `n_d = 0`.
    pub fn dim(&self, j: usize) -> usize {
        self.dims.get(j).copied().unwrap_or(0)
    }

    /// Monotonicity plus `n_{j-1} - n_j >= n_{l-1} - n_l` whenever `j < l` and
    /// `xi_j = xi_l`.
    pub fn validate(&self) -> Validation {
        let mut diagnostics = Vec::new();
        let d = self.eigenvalues.len();
        if d == 0 {
            diagnostics.push("empty eigenvalue row".into());
        }
        if self.dims.len() != d {
            diagnostics.push(format!("{} eigenvalues but {} dims", d, self.dims.len()));
        } else {
            for j in 1..=d {
                if self.dim(j) > self.dim(j - 1) {
                    diagnostics.push(format!("n_{} = {} exceeds n_{} = {}", j, self.dim(j), j - 1, self.dim(j - 1)));
                }
            }
            for j in 1..=d {
                for l in j + 1..=d {
                    if self.eigenvalues[j - 1] != self.eigenvalues[l - 1] {
                        continue;
                    }
                    let dj = self.dim(j - 1) as i64 - self.dim(j) as i64;
                    let dl = self.dim(l - 1) as i64 - self.dim(l) as i64;
                    if dj < dl {
                        diagnostics.push(format!(
                            "equal eigenvalues at positions {j} and {l}: n_{}-n_{} = {dj} < n_{}-n_{} = {dl}",
                            j - 1,
                            j,
                            l - 1,
                            l
                        ));
                    }
                }
            }
        }
        Validation { valid: diagnostics.is_empty(), diagnostics }
    }

    pub fn to_jordan(&self) -> Result<JordanForm> {
        class_to_jordan(self)
    }

    /// A matrix in the class: direct sum of Jordan blocks.
    pub fn representative(&self) -> Result<Matrix> {
        Ok(self.to_jordan()?.representative())
    }
}

#[derive(Clone, Debug)]
pub struct JordanBlock {
    pub eigenvalue: Scalar,
    pub size: usize,
    pub count: usize,
}

/// Multiset of Jordan blocks. Equality ignores block order.
#[derive(Clone, Debug)]
pub struct JordanForm {
    pub blocks: Vec<JordanBlock>,
}

impl JordanForm {
    /// Merges repeated `(eigenvalue, size)` pairs and drops empty entries.
    pub fn new(blocks: Vec<JordanBlock>) -> Self {
        let mut merged: Vec<JordanBlock> = Vec::new();
        for b in blocks {
            if b.count == 0 || b.size == 0 {
                continue;
            }
            match merged.iter_mut().find(|m| m.size == b.size && m.eigenvalue == b.eigenvalue) {
                Some(m) => m.count += b.count,
                None => merged.push(b),
            }
        }
        JordanForm { blocks: merged }
    }

    pub fn size(&self) -> usize {
        self.blocks.iter().map(|b| b.size * b.count).sum()
    }

    /// Distinct eigenvalues in order of first appearance.
    pub fn eigenvalues(&self) -> Vec<Scalar> {
        let mut out: Vec<Scalar> = Vec::new();
        for b in &self.blocks {
            if !out.contains(&b.eigenvalue) {
                out.push(b.eigenvalue.clone());
            }
        }
        out
    }

    /// Largest block size for `lambda` (0 if absent).
    pub fn max_block(&self, lambda: &Scalar) -> usize {
        self.blocks.iter().filter(|b| &b.eigenvalue == lambda).map(|b| b.size).max().unwrap_or(0)
    }

    /// `rank (A - lambda)^m`, read off the block data.
    pub fn rank_power(&self, lambda: &Scalar, m: usize) -> usize {
        self.size()
            - self
                .blocks
                .iter()
                .filter(|b| &b.eigenvalue == lambda)
                .map(|b| b.size.min(m) * b.count)
                .sum::<usize>()
    }

    pub fn representative(&self) -> Matrix {
        let mut blocks = Vec::new();
        for b in &self.blocks {
            for _ in 0..b.count {
                let mut m = Matrix::scalar(b.size, &b.eigenvalue);
                for i in 0..b.size.saturating_sub(1) {
                    m[(i, i + 1)] = Scalar::one();
                }
                blocks.push(m);
            }
        }
        block_diag(&blocks)
    }

    fn count(&self, lambda: &Scalar, size: usize) -> usize {
        self.blocks
            .iter()
            .filter(|b| b.size == size && &b.eigenvalue == lambda)
            .map(|b| b.count)
            .sum()
    }
}

impl PartialEq for JordanForm {
    fn eq(&self, other: &Self) -> bool {
        self.blocks.iter().chain(&other.blocks).all(|b| {
            self.count(&b.eigenvalue, b.size) == other.count(&b.eigenvalue, b.size)
        })
    }
}

impl Eq for JordanForm {}

/// `m_j(lambda)`: occurrences of `lambda` among the first `j` entries of `row`.
fn occurrences(row: &[Scalar], lambda: &Scalar, j: usize) -> usize {
    row[..j].iter().filter(|x| *x == lambda).count()
}

/// Class data of a Jordan form with respect to `xi_row`, or a synthesized
/// minimal row (each eigenvalue repeated up to its largest block size, in
/// order of first appearance).
pub fn class_from_jordan(j: &JordanForm, xi_row: Option<&[Scalar]>) -> Result<ClassSpec> {
    let row: Vec<Scalar> = match xi_row {
        Some(r) => r.to_vec(),
        None => {
            let mut r = Vec::new();
            for lambda in j.eigenvalues() {
                r.extend(std::iter::repeat_n(lambda.clone(), j.max_block(&lambda)));
            }
            if r.is_empty() {
                return Err(Error::Input("empty Jordan form needs an explicit row".into()));
            }
            r
        }
    };
    for lambda in j.eigenvalues() {
        let r = occurrences(&row, &lambda, row.len());
        if r < j.max_block(&lambda) {
            return Err(Error::NotAnnihilating(format!(
                "eigenvalue {lambda} has a block of size {} but appears {r} times",
                j.max_block(&lambda)
            )));
        }
    }
    // rank of prod_{l <= idx} (A - xi_l) on a block (lambda, s) is max(0, s - m_idx(lambda)).
    let dims = (0..row.len())
        .map(|idx| {
            j.blocks
                .iter()
                .map(|b| b.count * b.size.saturating_sub(occurrences(&row, &b.eigenvalue, idx)))
                .sum()
        })
        .collect();
    let c = ClassSpec { eigenvalues: row, dims };
    debug_assert!(c.validate().valid);
    Ok(c)
}

/// The Jordan form determined by a valid class.
pub fn class_to_jordan(c: &ClassSpec) -> Result<JordanForm> {
    let v = c.validate();
    if !v.valid {
        return Err(Error::InvalidClass(v.diagnostics.join("; ")));
    }
    let d = c.eigenvalues.len();
    let mut blocks = Vec::new();
    let mut seen: Vec<&Scalar> = Vec::new();
    for lambda in &c.eigenvalues {
        if seen.contains(&lambda) {
            continue;
        }
        seen.push(lambda);
        // at_least[m-1] = number of blocks of size >= m.
        let at_least: Vec<usize> = (1..=d)
            .filter(|&j| &c.eigenvalues[j - 1] == lambda)
            .map(|j| c.dim(j - 1) - c.dim(j))
            .collect();
        for (m, &cnt) in at_least.iter().enumerate() {
            let next = at_least.get(m + 1).copied().unwrap_or(0);
            blocks.push(JordanBlock { eigenvalue: lambda.clone(), size: m + 1, count: cnt - next });
        }
    }
    Ok(JordanForm::new(blocks))
}

/// Ranks of the partial products `(A - xi_1)...(A - xi_j)`, `j = 0..d-1`, or
/// `None` if the full product is nonzero (`A` is not of this type).
pub fn type_dims(row: &[Scalar], a: &Matrix) -> Option<Vec<usize>> {
    let n = a.rows();
    let mut prod = Matrix::identity(n);
    let mut dims = Vec::with_capacity(row.len());
    for x in row {
        dims.push(prod.rank());
        prod = &prod * &a.minus_scalar(x);
    }
    prod.is_zero().then_some(dims)
}

/// Decrements `n_r, ..., n_s` where `xi_r = xi_{s+1}` (1-based positions).
pub fn reduce_sequence(n: &[usize], r: usize, s: usize, xi_row: &[Scalar]) -> Result<Vec<usize>> {
    let d = xi_row.len();
    if n.len() != d {
        return Err(Error::Shape(format!("{} dims for {} eigenvalues", n.len(), d)));
    }
    if !(1 <= r && r <= s && s < d) {
        return Err(Error::Reduction(format!("need 1 <= r <= s <= {}, got r={r}, s={s}", d as i64 - 1)));
    }
    if xi_row[r - 1] != xi_row[s] {
        return Err(Error::Reduction(format!("xi_{r} != xi_{}", s + 1)));
    }
    let mut out = n.to_vec();
    for x in &mut out[r..=s] {
        if *x == 0 {
            return Err(Error::Reduction("reduction would make a term negative".into()));
        }
        *x -= 1;
    }
    Ok(out)
}

/// Assembles the type and dimension vector of a tuple of classes.
pub fn assemble(classes: &[ClassSpec]) -> Result<(TypeData, DimVector)> {
    let n = classes.first().map_or(0, ClassSpec::size);
    if classes.iter().any(|c| c.size() != n) {
        return Err(Error::InvalidClass("classes have different matrix sizes".into()));
    }
    for (i, c) in classes.iter().enumerate() {
        let v = c.validate();
        if !v.valid {
            return Err(Error::InvalidClass(format!("class {}: {}", i + 1, v.diagnostics.join("; "))));
        }
    }
    let t = TypeData::new(classes.iter().map(|c| c.eigenvalues.clone()).collect())?;
    let alpha = DimVector::new(
        n as i64,
        classes.iter().map(|c| c.dims[1..].iter().map(|&x| x as i64).collect()).collect(),
    );
    Ok((t, alpha))
}

/// The class of arm `i` (1-based) of `alpha` under type `t`.
pub fn class_of_arm(t: &TypeData, alpha: &DimVector, i: usize) -> ClassSpec {
    let mut dims = vec![alpha.a0.max(0) as usize];
    dims.extend(alpha.arms[i - 1].iter().map(|&x| x.max(0) as usize));
    ClassSpec { eigenvalues: t.rows[i - 1].clone(), dims }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::Vertex;
    use crate::scalar::rat;

    fn z(n: u64, k: i64) -> Scalar {
        Scalar::root_of_unity(n, k).unwrap()
    }

    fn block(e: &Scalar, size: usize, count: usize) -> JordanBlock {
        JordanBlock { eigenvalue: e.clone(), size, count }
    }

    #[test]
    fn from_jordan_examples() {
        let l = z(5, 1);
        let m = z(5, 2);
        let c = class_from_jordan(&JordanForm::new(vec![block(&l, 2, 1)]), None).unwrap();
        assert_eq!(c, ClassSpec { eigenvalues: vec![l.clone(), l.clone()], dims: vec![2, 1] });
        // rank (J_2(l) - l) = 1 computed directly:
        let j2 = JordanForm::new(vec![block(&l, 2, 1)]).representative();
        assert_eq!(j2.minus_scalar(&l).rank(), 1);

        let c = class_from_jordan(&JordanForm::new(vec![block(&l, 1, 2), block(&m, 1, 1)]), None).unwrap();
        assert_eq!(c, ClassSpec { eigenvalues: vec![l.clone(), m.clone()], dims: vec![3, 1] });

        let c = class_from_jordan(&JordanForm::new(vec![block(&Scalar::one(), 1, 2)]), None).unwrap();
        assert_eq!(c, ClassSpec { eigenvalues: vec![Scalar::one()], dims: vec![2] });
    }

    #[test]
    fn from_jordan_rejects_short_row() {
        let l = z(5, 1);
        let j = JordanForm::new(vec![block(&l, 2, 1)]);
        assert!(matches!(class_from_jordan(&j, Some(&[l.clone()])), Err(Error::NotAnnihilating(_))));
    }

    #[test]
    fn to_jordan_examples() {
        let l = z(7, 1);
        let m = z(7, 3);
        let c = ClassSpec { eigenvalues: vec![l.clone(), l.clone()], dims: vec![2, 1] };
        assert_eq!(class_to_jordan(&c).unwrap(), JordanForm::new(vec![block(&l, 2, 1)]));
        let c = ClassSpec { eigenvalues: vec![l.clone(), l.clone()], dims: vec![2, 0] };
        assert_eq!(class_to_jordan(&c).unwrap(), JordanForm::new(vec![block(&l, 1, 2)]));
        let c = ClassSpec { eigenvalues: vec![l.clone(), m.clone()], dims: vec![2, 1] };
        assert_eq!(class_to_jordan(&c).unwrap(), JordanForm::new(vec![block(&l, 1, 1), block(&m, 1, 1)]));
    }

    #[test]
    fn validate_examples() {
        let l = z(3, 1);
        let m = z(3, 2);
        let ok = ClassSpec { eigenvalues: vec![l.clone(), l.clone()], dims: vec![2, 1] };
        assert!(ok.validate().valid);
        let bad = ClassSpec { eigenvalues: vec![l.clone(), l.clone()], dims: vec![2, 2] };
        let v = bad.validate();
        assert!(!v.valid);
        assert!(v.diagnostics.iter().any(|d| d.contains("positions 1 and 2")));
        let c = ClassSpec { eigenvalues: vec![l.clone(), m, l], dims: vec![3, 2, 1] };
        assert!(c.validate().valid);
    }

    #[test]
    fn type_dims_of_representatives() {
        let l = z(4, 1);
        let m = z(4, 2);
        let c = ClassSpec { eigenvalues: vec![l.clone(), m.clone(), l.clone()], dims: vec![3, 2, 1] };
        let a = c.representative().unwrap();
        assert_eq!(type_dims(&c.eigenvalues, &a), Some(c.dims.clone()));
        assert_eq!(type_dims(&[l], &a), None);
    }

    #[test]
    fn bracket_examples() {
        let w = Weights::new(vec![2, 2, 2]).unwrap();
        let lam = [z(12, 1), z(12, 5), z(12, 2)];
        let mu = [z(12, 3), z(12, 7), z(12, 4)];
        let t = TypeData::new((0..3).map(|i| vec![lam[i].clone(), mu[i].clone()]).collect()).unwrap();
        let alpha = DimVector::new(2, vec![vec![1], vec![1], vec![1]]);
        let expected = (0..3).fold(Scalar::one(), |acc, i| acc * &lam[i] * &mu[i]);
        assert_eq!(xi_bracket(&t, &alpha).unwrap(), expected);
        let e0 = DimVector::unit(&w, Vertex::Center).unwrap();
        assert_eq!(xi_bracket(&t, &e0).unwrap(), t.first_product());
        assert!(xi_bracket(&t, &DimVector::zero(&w)).unwrap().is_one());
    }

    #[test]
    fn zeta_star_examples() {
        let w = Weights::new(vec![3, 2]).unwrap();
        let t = AdditiveType { rows: vec![vec![rat(1, 2), rat(1, 3), rat(2, 5)], vec![rat(-1, 7), rat(3, 1)]] };
        let e0 = DimVector::unit(&w, Vertex::Center).unwrap();
        assert_eq!(zeta_star(&t, &e0).unwrap(), rat(1, 2) + rat(-1, 7));
        assert!(zeta_star(&t, &DimVector::zero(&w)).unwrap().is_zero());
        // non-strict run on arm 1 from r = 1 to s = 2: zeta_{1,3} - zeta_{1,1}
        let beta = DimVector::new(0, vec![vec![1, 1], vec![0]]);
        assert_eq!(zeta_star(&t, &beta).unwrap(), rat(2, 5) - rat(1, 2));
    }

    #[test]
    fn reduce_examples() {
        let l = z(5, 1);
        let m = z(5, 2);
        let row = vec![l.clone(), m.clone(), l.clone()];
        assert_eq!(reduce_sequence(&[3, 2, 1], 1, 2, &row).unwrap(), vec![3, 1, 0]);
        assert_eq!(reduce_sequence(&[2, 1], 1, 1, &[l.clone(), l.clone()]).unwrap(), vec![2, 0]);
        assert!(matches!(reduce_sequence(&[2, 1], 1, 1, &[l, m]), Err(Error::Reduction(_))));
    }
}
