//! Orbit-closure membership by the Gerstenhaber–Hesselink rank criterion, and
//! flag/triple certificates for it.

use std::collections::HashSet;

use crate::classes::{class_to_jordan, reduce_sequence, type_dims, ClassSpec, JordanBlock, JordanForm};
use crate::error::{Error, Result};
use crate::linalg::{block_diag, Matrix, Subspace};
use crate::scalar::Scalar;

/// True iff the class of `b` lies in the closure of the class of `a`:
/// `rank (B - l)^m <= rank (A - l)^m` for every eigenvalue `l` and `1 <= m <= n`.
pub fn gh_leq(a: &JordanForm, b: &JordanForm) -> Result<bool> {
    let n = a.size();
    if b.size() != n {
        return Err(Error::Shape(format!("Jordan forms of sizes {n} and {}", b.size())));
    }
    let mut lambdas = a.eigenvalues();
    for l in b.eigenvalues() {
        if !lambdas.contains(&l) {
            lambdas.push(l);
        }
    }
    Ok(lambdas
        .iter()
        .all(|l| (1..=n).all(|m| b.rank_power(l, m) <= a.rank_power(l, m))))
}

/// Jordan form of `b` assuming its eigenvalues lie among `candidates`.
pub fn jordan_form_over(b: &Matrix, candidates: &[Scalar]) -> Result<JordanForm> {
    if !b.is_square() {
        return Err(Error::Shape("matrix is not square".into()));
    }
    let n = b.rows();
    let mut blocks = Vec::new();
    let mut found = 0;
    let mut distinct: Vec<&Scalar> = Vec::new();
    for l in candidates {
        if distinct.contains(&l) {
            continue;
        }
        distinct.push(l);
        let ranks = rank_powers(b, l, n);
        found += n - ranks[n];
        for m in 1..=n {
            // ranks[m-1] - ranks[m] blocks of size >= m
            let ge_m = ranks[m - 1] - ranks[m];
            let ge_next = if m < n { ranks[m] - ranks[m + 1] } else { 0 };
            blocks.push(JordanBlock { eigenvalue: l.clone(), size: m, count: ge_m - ge_next });
        }
    }
    if found != n {
        return Err(Error::NotSplit);
    }
    Ok(JordanForm::new(blocks))
}

/// `rank (b - l)^m` for `m = 0..=upto`.
fn rank_powers(b: &Matrix, l: &Scalar, upto: usize) -> Vec<usize> {
    let shifted = b.minus_scalar(l);
    let mut p = Matrix::identity(b.rows());
    let mut out = vec![b.rows()];
    for _ in 0..upto {
        if *out.last().unwrap() == 0 {
            out.push(0);
            continue;
        }
        p = &p * &shifted;
        out.push(p.rank());
    }
    out
}

/// Decides whether `b` lies in the closure of the class `c`.
///
/// Only eigenvalues of the class need testing: if the inequalities hold there,
/// the algebraic multiplicities of `b` at those eigenvalues already sum to `n`.
/// A matrix with any other eigenvalue (in the field or not) is never in the
/// closure.
pub fn closure_contains(c: &ClassSpec, b: &Matrix) -> Result<bool> {
    let a = class_to_jordan(c)?;
    let n = c.size();
    if b.rows() != n || b.cols() != n {
        return Err(Error::Shape(format!("expected a {n}x{n} matrix, got {}x{}", b.rows(), b.cols())));
    }
    for l in a.eigenvalues() {
        let ranks = rank_powers(b, &l, n);
        if (1..=n).any(|m| ranks[m] > a.rank_power(&l, m)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Spaces `V_0, ..., V_d` with `dim V_j = n_j` (`n_d = 0`) and maps
/// `phi_j: V_{j-1} -> V_j`, `psi_j: V_j -> V_{j-1}` such that
/// `B - psi_1 phi_1 = xi_1` and `phi_j psi_j - psi_{j+1} phi_{j+1} = xi_{j+1} - xi_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleCertificate {
    pub xi: Vec<Scalar>,
    pub dims: Vec<usize>,
    pub phi: Vec<Matrix>,
    pub psi: Vec<Matrix>,
    /// Reductions `(r, s)` applied to pass from the class dims to the flag of `B`.
    pub reductions: Vec<(usize, usize)>,
}

/// Builds a certificate that `b` lies in the closure of `c`.
///
/// When the image flag of `b` has the dims of `c` the certificate comes from the
/// flag directly; otherwise a chain of reductions from the dims of `c` to those
/// of the flag is searched and extra one-dimensional blocks are added.
pub fn build_triple(c: &ClassSpec, b: &Matrix) -> Result<TripleCertificate> {
    let v = c.validate();
    if !v.valid {
        return Err(Error::InvalidClass(v.diagnostics.join("; ")));
    }
    let n = c.size();
    if b.rows() != n || b.cols() != n {
        return Err(Error::Shape(format!("expected a {n}x{n} matrix, got {}x{}", b.rows(), b.cols())));
    }
    let Some(flag_dims) = type_dims(&c.eigenvalues, b) else {
        return Err(Error::NotAnnihilating("prod (B - xi_j) is nonzero".into()));
    };
    let direct = flag_triple(&c.eigenvalues, b)?;
    if flag_dims == c.dims {
        return Ok(direct);
    }
    let chain = find_reduction_chain(&c.dims, &flag_dims, &c.eigenvalues)
        .ok_or_else(|| Error::NoReductionChain { from: c.dims.clone(), to: flag_dims.clone() })?;
    Ok(assemble_reduced(direct, &chain))
}

/// The certificate given by `V_j = Im((B - xi_1)...(B - xi_j))`, `phi_j` the
/// restriction of `B - xi_j` and `psi_j` the inclusion.
fn flag_triple(xi: &[Scalar], b: &Matrix) -> Result<TripleCertificate> {
    let n = b.rows();
    let d = xi.len();
    let mut bases = vec![Matrix::identity(n)];
    let mut prod = Matrix::identity(n);
    for x in xi {
        prod = &prod * &b.minus_scalar(x);
        bases.push(Subspace::column_span(&prod).basis_matrix());
    }
    let mut phi = Vec::with_capacity(d);
    let mut psi = Vec::with_capacity(d);
    for j in 1..=d {
        let image = &b.minus_scalar(&xi[j - 1]) * &bases[j - 1];
        phi.push(
            bases[j]
                .solve_in_span(&image)
                .ok_or_else(|| Error::Internal("flag is not stable".into()))?,
        );
        psi.push(
            bases[j - 1]
                .solve_in_span(&bases[j])
                .ok_or_else(|| Error::Internal("flag is not decreasing".into()))?,
        );
    }
    let dims = bases.iter().map(Matrix::cols).collect();
    Ok(TripleCertificate { xi: xi.to_vec(), dims, phi, psi, reductions: Vec::new() })
}

/// Depth-first search for reductions turning `from` into `to`.
pub fn find_reduction_chain(from: &[usize], to: &[usize], xi: &[Scalar]) -> Option<Vec<(usize, usize)>> {
    let d = xi.len();
    let pairs: Vec<(usize, usize)> = (1..d)
        .flat_map(|r| (r..d).map(move |s| (r, s)))
        .filter(|&(r, s)| xi[r - 1] == xi[s])
        .collect();
    let mut failed = HashSet::new();
    let mut chain = Vec::new();
    dfs(from, to, xi, &pairs, &mut failed, &mut chain).then_some(chain)
}

fn dfs(
    cur: &[usize],
    to: &[usize],
    xi: &[Scalar],
    pairs: &[(usize, usize)],
    failed: &mut HashSet<Vec<usize>>,
    chain: &mut Vec<(usize, usize)>,
) -> bool {
    if cur == to {
        return true;
    }
    if failed.contains(cur) || cur.iter().zip(to).any(|(a, b)| a < b) {
        return false;
    }
    for &(r, s) in pairs {
        if cur[r..=s].iter().zip(&to[r..=s]).any(|(a, b)| a <= b) {
            continue;
        }
        let next = reduce_sequence(cur, r, s, xi).expect("admissible reduction");
        chain.push((r, s));
        if dfs(&next, to, xi, pairs, failed, chain) {
            return true;
        }
        chain.pop();
    }
    failed.insert(cur.to_vec());
    false
}

/// Extends a certificate for reduced dims to one for the unreduced dims: each
/// reduction `(r, s)` adds a line to `V_r, ..., V_s` on which `psi_j = 1` and
/// `phi_j = (xi_r - xi_j)` for `r < j <= s`, all other blocks zero.
pub fn assemble_reduced(base: TripleCertificate, chain: &[(usize, usize)]) -> TripleCertificate {
    let d = base.xi.len();
    let xi = &base.xi;
    let mut phi = Vec::with_capacity(d);
    let mut psi = Vec::with_capacity(d);
    let mut dims = base.dims.clone();
    for &(r, s) in chain {
        for x in &mut dims[r..=s] {
            *x += 1;
        }
    }
    for j in 1..=d {
        // Blocks of phi_j: V_{j-1} -> V_j, the base block then one per reduction.
        let mut phi_blocks = vec![base.phi[j - 1].clone()];
        let mut psi_blocks = vec![base.psi[j - 1].clone()];
        for &(r, s) in chain {
            let in_prev = (r..=s).contains(&(j - 1));
            let in_cur = (r..=s).contains(&j);
            let (rows, cols) = (usize::from(in_cur), usize::from(in_prev));
            let mut f = Matrix::zeros(rows, cols);
            let mut g = Matrix::zeros(cols, rows);
            if in_prev && in_cur {
                f[(0, 0)] = &xi[r - 1] - &xi[j - 1];
                g[(0, 0)] = Scalar::one();
            }
            phi_blocks.push(f);
            psi_blocks.push(g);
        }
        phi.push(block_diag(&phi_blocks));
        psi.push(block_diag(&psi_blocks));
    }
    let mut reductions = base.reductions;
    reductions.extend_from_slice(chain);
    TripleCertificate { xi: base.xi, dims, phi, psi, reductions }
}

/// Checks the certificate identities exactly.
pub fn verify_triple(cert: &TripleCertificate, b: &Matrix, xi: &[Scalar]) -> Result<bool> {
    let d = xi.len();
    if cert.phi.len() != d || cert.psi.len() != d || cert.dims.len() != d + 1 {
        return Err(Error::Shape(format!("certificate does not have {d} steps")));
    }
    if cert.dims[d] != 0 {
        return Ok(false);
    }
    if b.rows() != cert.dims[0] || b.cols() != cert.dims[0] {
        return Err(Error::Shape("matrix size differs from n_0".into()));
    }
    for j in 1..=d {
        let (f, g) = (&cert.phi[j - 1], &cert.psi[j - 1]);
        if f.rows() != cert.dims[j] || f.cols() != cert.dims[j - 1] || g.rows() != cert.dims[j - 1] || g.cols() != cert.dims[j] {
            return Err(Error::Shape(format!("maps at step {j} have inconsistent shapes")));
        }
    }
    if !(b - &(&cert.psi[0] * &cert.phi[0])).minus_scalar(&xi[0]).is_zero() {
        return Ok(false);
    }
    for j in 1..d {
        let lhs = &(&cert.phi[j - 1] * &cert.psi[j - 1]) - &(&cert.psi[j] * &cert.phi[j]);
        if !lhs.minus_scalar(&(&xi[j] - &xi[j - 1])).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::class_from_jordan;

    fn z(n: u64, k: i64) -> Scalar {
        Scalar::root_of_unity(n, k).unwrap()
    }

    fn nilpotent(parts: &[usize]) -> JordanForm {
        JordanForm::new(
            parts.iter().map(|&s| JordanBlock { eigenvalue: Scalar::zero(), size: s, count: 1 }).collect(),
        )
    }

    fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in (1..=max.min(n)).rev() {
            for mut rest in partitions(n - first, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }

    fn dominates(p: &[usize], q: &[usize]) -> bool {
        let mut sp = 0;
        let mut sq = 0;
        (0..p.len().max(q.len())).all(|i| {
            sp += p.get(i).copied().unwrap_or(0);
            sq += q.get(i).copied().unwrap_or(0);
            sp >= sq
        })
    }

    #[test]
    fn nilpotent_closure_is_dominance() {
        assert!(gh_leq(&nilpotent(&[2, 2]), &nilpotent(&[2, 1, 1])).unwrap());
        assert!(!gh_leq(&nilpotent(&[2, 1, 1]), &nilpotent(&[2, 2])).unwrap());
        for n in 1..=6 {
            let ps = partitions(n, n);
            for p in &ps {
                for q in &ps {
                    assert_eq!(gh_leq(&nilpotent(p), &nilpotent(q)).unwrap(), dominates(p, q), "{p:?} {q:?}");
                }
            }
        }
    }

    #[test]
    fn gh_is_a_partial_order() {
        let e = [Scalar::zero(), Scalar::one()];
        for n in 1..=5 {
            // Forms with eigenvalues 0 and 1 of multiplicities k and n - k.
            let mut forms = Vec::new();
            for k in 0..=n {
                for p in partitions(k, k) {
                    for q in partitions(n - k, n - k) {
                        let blocks = p
                            .iter()
                            .map(|&s| JordanBlock { eigenvalue: e[0].clone(), size: s, count: 1 })
                            .chain(q.iter().map(|&s| JordanBlock { eigenvalue: e[1].clone(), size: s, count: 1 }))
                            .collect();
                        forms.push(JordanForm::new(blocks));
                    }
                }
            }
            for a in &forms {
                assert!(gh_leq(a, a).unwrap());
                for b in &forms {
                    if gh_leq(a, b).unwrap() && gh_leq(b, a).unwrap() {
                        assert_eq!(a, b);
                    }
                    for c in &forms {
                        if gh_leq(a, b).unwrap() && gh_leq(b, c).unwrap() {
                            assert!(gh_leq(a, c).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn gh_size_mismatch() {
        assert!(matches!(gh_leq(&nilpotent(&[2]), &nilpotent(&[1])), Err(Error::Shape(_))));
    }

    #[test]
    fn distinct_vs_scalar() {
        let a = JordanForm::new(vec![
            JordanBlock { eigenvalue: z(3, 1), size: 1, count: 1 },
            JordanBlock { eigenvalue: z(3, 2), size: 1, count: 1 },
        ]);
        let b = JordanForm::new(vec![JordanBlock { eigenvalue: Scalar::one(), size: 1, count: 2 }]);
        assert!(!gh_leq(&a, &b).unwrap());
    }

    #[test]
    fn closure_examples() {
        let l = z(5, 1);
        let m = z(5, 3);
        let j2 = ClassSpec { eigenvalues: vec![l.clone(), l.clone()], dims: vec![2, 1] };
        let scalar = Matrix::scalar(2, &l);
        assert!(closure_contains(&j2, &scalar).unwrap());
        let sc = ClassSpec { eigenvalues: vec![l.clone()], dims: vec![2] };
        let j2m = j2.representative().unwrap();
        assert!(!closure_contains(&sc, &j2m).unwrap());
        let diag = ClassSpec { eigenvalues: vec![l.clone(), m.clone()], dims: vec![2, 1] };
        assert!(!closure_contains(&diag, &j2m).unwrap());
        assert!(closure_contains(&diag, &diag.representative().unwrap()).unwrap());
    }

    #[test]
    fn jordan_form_over_detects_missing_eigenvalues() {
        let a = Matrix::from_ints(&[&[0, -1], &[1, 0]]);
        assert!(matches!(jordan_form_over(&a, &[Scalar::one()]), Err(Error::NotSplit)));
        let i = z(4, 1);
        let j = jordan_form_over(&a, &[i.clone(), -&i]).unwrap();
        assert_eq!(j.size(), 2);
    }

    #[test]
    fn triple_via_one_reduction() {
        let l = z(5, 1);
        let c = ClassSpec { eigenvalues: vec![l.clone(), l.clone()], dims: vec![2, 1] };
        let b = Matrix::scalar(2, &l);
        let cert = build_triple(&c, &b).unwrap();
        assert_eq!(cert.reductions, vec![(1, 1)]);
        assert_eq!(cert.dims, vec![2, 1, 0]);
        assert!(verify_triple(&cert, &b, &c.eigenvalues).unwrap());
    }

    #[test]
    fn direct_triple_and_perturbation() {
        let l = z(6, 1);
        let m = z(6, 2);
        let c = ClassSpec { eigenvalues: vec![l.clone(), m.clone(), l.clone()], dims: vec![4, 2, 1] };
        let b = c.representative().unwrap();
        let mut cert = build_triple(&c, &b).unwrap();
        assert!(cert.reductions.is_empty());
        assert!(verify_triple(&cert, &b, &c.eigenvalues).unwrap());
        cert.phi[0][(0, 0)] = &cert.phi[0][(0, 0)] + &Scalar::one();
        assert!(!verify_triple(&cert, &b, &c.eigenvalues).unwrap());
    }

    #[test]
    fn scalar_class_triple() {
        let c = ClassSpec { eigenvalues: vec![Scalar::one()], dims: vec![1] };
        let b = Matrix::identity(1);
        let cert = build_triple(&c, &b).unwrap();
        assert_eq!(cert.dims, vec![1, 0]);
        assert!(verify_triple(&cert, &b, &c.eigenvalues).unwrap());
    }

    #[test]
    fn certificates_agree_with_gh() {
        // Every Jordan form with eigenvalues in {1, -1} of size <= 4, against
        // every class with the minimal row of a form of the same size.
        let e = [Scalar::one(), Scalar::from_int(-1)];
        for n in 1..=4 {
            let mut forms = Vec::new();
            for k in 0..=n {
                for p in partitions(k, k) {
                    for q in partitions(n - k, n - k) {
                        let blocks = p
                            .iter()
                            .map(|&s| JordanBlock { eigenvalue: e[0].clone(), size: s, count: 1 })
                            .chain(q.iter().map(|&s| JordanBlock { eigenvalue: e[1].clone(), size: s, count: 1 }))
                            .collect();
                        forms.push(JordanForm::new(blocks));
                    }
                }
            }
            for a in &forms {
                let c = class_from_jordan(a, None).unwrap();
                for bj in &forms {
                    let b = bj.representative();
                    let gh = gh_leq(a, bj).unwrap();
                    assert_eq!(closure_contains(&c, &b).unwrap(), gh);
                    match build_triple(&c, &b) {
                        Ok(cert) => {
                            assert!(gh);
                            assert!(verify_triple(&cert, &b, &c.eigenvalues).unwrap());
                        }
                        Err(_) => assert!(!gh, "no certificate for {c:?} and {bj:?}"),
                    }
                }
            }
        }
    }

    #[test]
    fn lemma_rank_identity() {
        // dim V - rank (psi phi + mu)^m = dim W - rank (phi psi + mu)^m
        let phi = Matrix::from_ints(&[&[1, 2, 0], &[0, 1, 3]]);
        let psi = Matrix::from_ints(&[&[2, 0], &[1, -1], &[0, 4]]);
        for mu in [Scalar::from_int(-2), Scalar::from_int(3), z(3, 1)] {
            for m in 1..=3u32 {
                let lhs = 3 - (&psi * &phi).minus_scalar(&-&mu).pow(m).rank();
                let rhs = 2 - (&phi * &psi).minus_scalar(&-&mu).pow(m).rank();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
