//! Middle convolution on tuples of invertible matrices with product one, and
//! the eigenvalue transforms `r0'` and `r_v'`.

use crate::classes::{type_dims, TypeData};
use crate::error::{Error, Result};
use crate::linalg::{generated_algebra_dim, vstack, Matrix, Subspace};
use crate::roots::{reflect, DimVector, Vertex};
use crate::scalar::Scalar;

/// Images `rho(g_1), ..., rho(g_k)` with `rho(g_1)...rho(g_k) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    mats: Vec<Matrix>,
}

impl Representation {
    pub fn new(mats: Vec<Matrix>) -> Result<Self> {
        if mats.is_empty() {
            return Err(Error::Input("a representation needs at least one generator".into()));
        }
        let n = mats[0].rows();
        if mats.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::Shape("generators must be square of one size".into()));
        }
        if let Some(i) = mats.iter().position(|m| !m.is_invertible()) {
            return Err(Error::Input(format!("generator {} is not invertible", i + 1)));
        }
        let prod = mats.iter().skip(1).fold(mats[0].clone(), |acc, m| &acc * m);
        if !prod.is_identity() {
            return Err(Error::Input("product of the generators is not the identity".into()));
        }
        Ok(Representation { mats })
    }

    pub fn k(&self) -> usize {
        self.mats.len()
    }

    pub fn dim(&self) -> usize {
        self.mats[0].rows()
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn into_mats(self) -> Vec<Matrix> {
        self.mats
    }

    /// Dimension vector with respect to `t`, failing if some `rho(g_i)` is not
    /// annihilated by `prod_j (X - xi_ij)`.
    pub fn dimension_vector(&self, t: &TypeData) -> Result<DimVector> {
        if t.rows.len() != self.k() {
            return Err(Error::Shape(format!("{} type rows for {} generators", t.rows.len(), self.k())));
        }
        let mut arms = Vec::with_capacity(self.k());
        for (i, (m, row)) in self.mats.iter().zip(&t.rows).enumerate() {
            let dims = type_dims(row, m).ok_or_else(|| {
                Error::NotAnnihilating(format!("generator {} is not of the given type", i + 1))
            })?;
            arms.push(dims[1..].iter().map(|&x| x as i64).collect());
        }
        Ok(DimVector::new(self.dim() as i64, arms))
    }

    /// Absolute irreducibility: the generated algebra is all of `M_n`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let n = self.dim();
        Ok(n > 0 && generated_algebra_dim(&self.mats)? == n * n)
    }
}

/// `r0'(xi)_{i1} = 1/xi_{i1}`, `r0'(xi)_{ij} = xi_{ij} prod_s xi_{s1} / xi_{i1}^2` for `j > 1`.
pub fn r0_prime(t: &TypeData) -> Result<TypeData> {
    let lambda = t.first_product();
    let rows = t
        .rows
        .iter()
        .map(|row| {
            let inv = row[0].inv()?;
            let factor = &(&lambda * &inv) * &inv;
            Ok(std::iter::once(inv).chain(row[1..].iter().map(|x| x * &factor)).collect())
        })
        .collect::<Result<_>>()?;
    TypeData::new(rows)
}

/// Swaps `xi_{ij}` and `xi_{i,j+1}` for the arm vertex `[i, j]`.
pub fn rv_prime(t: &TypeData, v: Vertex) -> Result<TypeData> {
    let w = t.weights();
    let Vertex::Arm(i, j) = v else {
        return Err(Error::UnknownVertex(format!("{v} is not an arm vertex")));
    };
    if !w.contains(v) {
        return Err(Error::UnknownVertex(format!("{v} for weights {:?}", w.as_slice())));
    }
    let mut out = t.clone();
    out.rows[i - 1].swap(j - 1, j);
    Ok(out)
}

/// A subspace on which all generators but one act by `xi_{s1}` and generator
/// `generator` acts by `eigenvalue` (for a quotient, the same on `V / subspace`).
#[derive(Clone, Debug)]
pub struct CollapsingWitness {
    pub generator: usize,
    pub eigenvalue: Scalar,
    pub subspace: Subspace,
}

#[derive(Clone, Debug, Default)]
pub struct CollapsingReport {
    pub has_collapsing_sub: bool,
    pub has_collapsing_quotient: bool,
    pub sub_witnesses: Vec<CollapsingWitness>,
    pub quotient_witnesses: Vec<CollapsingWitness>,
}

impl CollapsingReport {
    pub fn is_noncollapsing(&self) -> bool {
        !self.has_collapsing_sub && !self.has_collapsing_quotient
    }
}

/// Checks the two conditions on `A_{k+1-i} = rho(g_i) / xi_{i1}`, with `tau`
/// restricted to reciprocals of the possible eigenvalues `xi_{ij} / xi_{i1}`.
pub fn collapsing_status(rep: &Representation, t: &TypeData) -> Result<CollapsingReport> {
    rep.dimension_vector(t)?;
    let n = rep.dim();
    let k = rep.k();
    let shifted: Vec<Matrix> = rep.mats.iter().zip(&t.rows).map(|(m, row)| m.minus_scalar(&row[0])).collect();
    let mut report = CollapsingReport::default();
    for i in 0..k {
        let others: Vec<&Matrix> = (0..k).filter(|&j| j != i).map(|j| &shifted[j]).collect();
        let mut distinct: Vec<&Scalar> = Vec::new();
        for mu in &t.rows[i] {
            if distinct.contains(&mu) {
                continue;
            }
            distinct.push(mu);
            let own = rep.mats[i].minus_scalar(mu);

            let mut stack: Vec<Matrix> = others.iter().map(|m| (*m).clone()).collect();
            stack.push(own.clone());
            let common_kernel = vstack(&stack)?.kernel();
            if common_kernel.dim() > 0 {
                report.has_collapsing_sub = true;
                report.sub_witnesses.push(CollapsingWitness {
                    generator: i + 1,
                    eigenvalue: mu.clone(),
                    subspace: common_kernel,
                });
            }

            let images = others
                .iter()
                .map(|m| Subspace::column_span(m))
                .try_fold(Subspace::column_span(&own), |acc, s| acc.sum(&s))?;
            if images.dim() < n {
                report.has_collapsing_quotient = true;
                report.quotient_witnesses.push(CollapsingWitness {
                    generator: i + 1,
                    eigenvalue: mu.clone(),
                    subspace: images,
                });
            }
        }
    }
    Ok(report)
}

/// The convolution `R_0` with respect to `t`, returning the new
/// representation and its type `r0'(t)`.
pub fn convolve(rep: &Representation, t: &TypeData) -> Result<(Representation, TypeData)> {
    let lambda = t.first_product();
    if lambda.is_one() {
        return Err(Error::Precondition("convolution needs prod_i xi_{i1} != 1".into()));
    }
    let alpha = rep.dimension_vector(t)?;
    let status = collapsing_status(rep, t)?;
    if !status.is_noncollapsing() {
        return Err(Error::Precondition("representation has a collapsing subrepresentation or quotient".into()));
    }
    let k = rep.k();
    let n = rep.dim();
    // a[l] is A_{l+1}; A_{k+1-i} = rho(g_i) / xi_{i1}.
    let mut a = vec![Matrix::zeros(n, n); k];
    for (i, (m, row)) in rep.mats.iter().zip(&t.rows).enumerate() {
        a[k - 1 - i] = m.scale(&row[0].inv()?);
    }
    let big = k * n;
    let mut d = Matrix::zeros(big, big);
    for (l, al) in a.iter().enumerate() {
        d.set_block(l * n, l * n, al);
    }
    let one = Scalar::one();
    let g: Vec<Matrix> = (0..k)
        .map(|m| {
            let mut gm = Matrix::identity(big);
            for (l, al) in a.iter().enumerate() {
                let block = match l.cmp(&m) {
                    std::cmp::Ordering::Less => al.minus_scalar(&one),
                    std::cmp::Ordering::Equal => al.scale(&lambda),
                    std::cmp::Ordering::Greater => al.minus_scalar(&one).scale(&lambda),
                };
                gm.set_block(m * n, l * n, &block);
            }
            gm
        })
        .collect();
    let kk = d.minus_scalar(&one).kernel();
    let stacked: Vec<Matrix> = g.iter().map(|gm| gm.minus_scalar(&one)).collect();
    let ll = vstack(&stacked)?.kernel();
    let quotient = kk.sum(&ll)?.quotient();
    let mut out = vec![Matrix::zeros(0, 0); k];
    for (i, row) in t.rows.iter().enumerate() {
        let induced = quotient
            .induced(&g[k - 1 - i])
            .map_err(|_| Error::Internal("K + L is not invariant".into()))?;
        out[i] = induced.scale(&row[0].inv()?);
    }

    let expected_dim = alpha.arms.iter().map(|arm| arm.first().copied().unwrap_or(0)).sum::<i64>() - alpha.a0;
    if quotient.dim() as i64 != expected_dim {
        return Err(Error::Internal(format!(
            "convolution has dimension {}, expected {expected_dim}",
            quotient.dim()
        )));
    }
    let t_out = r0_prime(t)?;
    if out.is_empty() || quotient.dim() == 0 {
        return Err(Error::Internal("convolution produced the zero representation".into()));
    }
    let rep_out = Representation::new(out)
        .map_err(|e| Error::Internal(format!("convolution output is not a representation: {e}")))?;
    let beta = rep_out
        .dimension_vector(&t_out)
        .map_err(|e| Error::Internal(format!("convolution output has the wrong type: {e}")))?;
    let w = t.weights();
    if beta != reflect(&w, Vertex::Center, &alpha)? {
        return Err(Error::Internal(format!("convolution output has dimension vector {beta}, expected s_0({alpha})")));
    }
    Ok((rep_out, t_out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::xi_bracket;
    use crate::linalg::hom_space;
    use crate::roots::Weights;

    fn z(n: u64, k: i64) -> Scalar {
        Scalar::root_of_unity(n, k).unwrap()
    }

    /// Hypergeometric triple: `g_1` with eigenvalues `a`, `g_2` with eigenvalues
    /// `b`, `g_3 = (g_1 g_2)^-1` a pseudo-reflection.
    fn hypergeometric(a: [Scalar; 2], b: [Scalar; 2]) -> (Representation, TypeData) {
        let companion = |r: &[Scalar; 2]| {
            let c1 = &r[0] + &r[1];
            let c0 = -&(&r[0] * &r[1]);
            Matrix::from_rows(vec![vec![Scalar::zero(), c0], vec![Scalar::one(), c1]]).unwrap()
        };
        let ha = companion(&a);
        let hb = companion(&[b[0].inv().unwrap(), b[1].inv().unwrap()]);
        let g3 = &hb * &ha.inverse().unwrap();
        let rep = Representation::new(vec![ha, hb.inverse().unwrap(), g3.clone()]).unwrap();
        let t = TypeData::new(vec![a.to_vec(), b.to_vec(), vec![Scalar::one(), g3.determinant()]]).unwrap();
        (rep, t)
    }

    #[test]
    fn r0_prime_examples() {
        let t = TypeData::new(vec![vec![z(4, 1)]]).unwrap();
        assert_eq!(r0_prime(&t).unwrap().rows[0][0], z(4, 3));
        let t = TypeData::new(vec![vec![Scalar::one(), z(5, 2)], vec![Scalar::one(), z(5, 1)]]).unwrap();
        let r = r0_prime(&t).unwrap();
        assert!(r.rows.iter().all(|row| row[0].is_one()));
        assert_eq!(r0_prime(&r).unwrap(), t);
    }

    #[test]
    fn bracket_identities() {
        let w = Weights::new(vec![2, 2, 2]).unwrap();
        let t = TypeData::new(vec![
            vec![z(7, 1), z(7, 3)],
            vec![z(5, 2), z(7, 5)],
            vec![z(3, 1), z(35, 4)],
        ])
        .unwrap();
        let r0 = r0_prime(&t).unwrap();
        for alpha in [
            DimVector::new(2, vec![vec![1], vec![1], vec![1]]),
            DimVector::new(3, vec![vec![1], vec![2], vec![0]]),
            DimVector::new(1, vec![vec![0], vec![0], vec![0]]),
        ] {
            let s0 = reflect(&w, Vertex::Center, &alpha).unwrap();
            assert_eq!(xi_bracket(&r0, &s0).unwrap(), xi_bracket(&t, &alpha).unwrap());
            for i in 1..=3 {
                let v = Vertex::Arm(i, 1);
                let sv = reflect(&w, v, &alpha).unwrap();
                let rv = rv_prime(&t, v).unwrap();
                assert_eq!(xi_bracket(&rv, &sv).unwrap(), xi_bracket(&t, &alpha).unwrap());
            }
        }
    }

    #[test]
    fn rv_prime_examples() {
        let l = z(3, 1);
        let m = z(3, 2);
        let t = TypeData::new(vec![vec![l.clone(), m.clone()]]).unwrap();
        let s = rv_prime(&t, Vertex::Arm(1, 1)).unwrap();
        assert_eq!(s.rows[0], vec![m, l]);
        assert_eq!(rv_prime(&s, Vertex::Arm(1, 1)).unwrap(), t);
        assert!(matches!(rv_prime(&t, Vertex::Arm(1, 2)), Err(Error::UnknownVertex(_))));
        assert!(matches!(rv_prime(&t, Vertex::Center), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn one_dimensional_rep_is_collapsing() {
        let xs = [z(3, 1), z(3, 1), z(3, 1)];
        let rep = Representation::new(xs.iter().map(|x| Matrix::scalar(1, x)).collect()).unwrap();
        let t = TypeData::new(xs.iter().map(|x| vec![x.clone(), Scalar::one()]).collect()).unwrap();
        let r = collapsing_status(&rep, &t).unwrap();
        assert!(r.has_collapsing_sub && r.has_collapsing_quotient);
    }

    #[test]
    fn scalar_pair_is_collapsing() {
        let x = z(5, 2);
        let m = Matrix::scalar(2, &x);
        let rep = Representation::new(vec![m.clone(), m.inverse().unwrap()]).unwrap();
        let t = TypeData::new(vec![vec![x.clone()], vec![x.inv().unwrap()]]).unwrap();
        assert!(!collapsing_status(&rep, &t).unwrap().is_noncollapsing());
    }

    #[test]
    fn hypergeometric_convolution() {
        let (rep, t) = hypergeometric([z(5, 1), z(5, 2)], [z(5, 1), z(7, 1)]);
        assert!(rep.is_irreducible().unwrap());
        let alpha = rep.dimension_vector(&t).unwrap();
        assert_eq!(alpha, DimVector::new(2, vec![vec![1], vec![1], vec![1]]));
        assert!(collapsing_status(&rep, &t).unwrap().is_noncollapsing());
        let (out, t2) = convolve(&rep, &t).unwrap();
        assert_eq!(out.dim(), 1);
        let prod = out.mats().iter().fold(Matrix::identity(1), |acc, m| &acc * m);
        assert!(prod.is_identity());
        assert_eq!(t2, r0_prime(&t).unwrap());

        let (back, t3) = convolve(&out, &t2).unwrap();
        assert_eq!(t3, t);
        let h = hom_space(rep.mats(), back.mats()).unwrap();
        assert_eq!(h.basis.len(), 1);
        assert!(h.isomorphism.is_isomorphic());
    }

    #[test]
    fn rank_bookkeeping() {
        let (rep, t) = hypergeometric([z(3, 1), z(4, 1)], [z(5, 1), z(6, 1)]);
        let (out, t2) = convolve(&rep, &t).unwrap();
        for i in 0..3 {
            assert_eq!(
                out.mats()[i].minus_scalar(&t2.rows[i][0]).rank(),
                rep.mats()[i].minus_scalar(&t.rows[i][0]).rank()
            );
        }
        assert!(collapsing_status(&out, &t2).unwrap().is_noncollapsing());
    }

    #[test]
    fn convolution_preconditions() {
        let (rep, mut t) = hypergeometric([z(5, 1), z(5, 2)], [z(5, 1), z(7, 1)]);
        let lambda = t.first_product();
        // Rescaling the first entries so their product is one changes the type.
        t.rows[2][0] = &t.rows[2][0] * &lambda.inv().unwrap();
        assert!(matches!(convolve(&rep, &t), Err(Error::Precondition(_))));
    }
}
