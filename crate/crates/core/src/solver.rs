//! Decision procedures for matrix equations `A_1 ... A_k = 1` (and the additive
//! `A_1 + ... + A_k = 0`) with `A_i` in prescribed classes or their closures,
//! plus the constructive rigid algorithm and genericity utilities.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classes::{assemble, class_of_arm, type_dims, xi_bracket, zeta_star, AdditiveType, ClassSpec, TypeData};
use crate::closure::closure_contains;
use crate::convolution::{convolve, r0_prime, rv_prime, Representation};
use crate::error::{Error, Result};
use crate::linalg::{block_diag, generated_algebra_dim, Matrix};
use crate::roots::{
    classify, enumerate_positive_roots_below, p as p_form, pairing_with_vertex, reflect, DimVector, RootClass,
    RootTag, Vertex, Weights,
};
use crate::scalar::{max_field_order, Rational, Scalar};

/// A tuple of classes of one matrix size, viewed as a type and dimension vector.
#[derive(Clone, Debug)]
pub struct Problem {
    classes: Vec<ClassSpec>,
    weights: Weights,
    t: TypeData,
    alpha: DimVector,
}

impl Problem {
    pub fn new(classes: Vec<ClassSpec>) -> Result<Self> {
        if classes.is_empty() {
            return Err(Error::Input("a problem needs at least one class".into()));
        }
        let (t, alpha) = assemble(&classes)?;
        let t = t.unified()?;
        Ok(Problem { weights: t.weights(), classes, t, alpha })
    }

    /// The problem with classes read off a type and dimension vector.
    pub fn from_type(t: TypeData, alpha: DimVector) -> Result<Self> {
        let w = t.weights();
        alpha.check_shape(&w)?;
        if !alpha.is_nonnegative() {
            return Err(Error::Input(format!("dimension vector {alpha} has negative entries")));
        }
        let classes = (1..=w.k()).map(|i| class_of_arm(&t, &alpha, i)).collect();
        Self::new(classes)
    }

    pub fn classes(&self) -> &[ClassSpec] {
        &self.classes
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    pub fn type_data(&self) -> &TypeData {
        &self.t
    }

    pub fn alpha(&self) -> &DimVector {
        &self.alpha
    }

    /// The type as rationals, for the additive equation.
    pub fn additive_type(&self) -> Result<AdditiveType> {
        let rows = self
            .t
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| x.to_rational().ok_or_else(|| Error::Input(format!("additive eigenvalue {x} is not rational"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        Ok(AdditiveType { rows })
    }
}

/// Which bracket condition a part must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// `xi^[beta] = 1`.
    Multiplicative,
    /// `zeta*[beta] = 0`.
    AdditiveZero,
    /// `zeta*[beta]` an integer, and zero when `beta` is not strict.
    AdditiveInteger,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bracket {
    Multiplicative(Scalar),
    Additive(Rational),
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bracket::Multiplicative(s) => write!(f, "{s}"),
            Bracket::Additive(r) => write!(f, "{r}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Part {
    pub root: DimVector,
    pub class: RootClass,
    pub bracket: Bracket,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// Parts in non-increasing lexicographic order.
    pub parts: Vec<Part>,
}

impl Decomposition {
    pub fn roots(&self) -> Vec<DimVector> {
        self.parts.iter().map(|p| p.root.clone()).collect()
    }
}

#[derive(Clone, Debug)]
pub struct DecompositionSearch {
    pub decompositions: Vec<Decomposition>,
    /// More decompositions exist beyond the limit.
    pub limit_reached: bool,
}

enum Filter<'a> {
    Mult(&'a TypeData),
    Add(&'a AdditiveType, Mode),
}

impl Filter<'_> {
    fn bracket(&self, beta: &DimVector, class: &RootClass) -> Result<Option<Bracket>> {
        Ok(match self {
            Filter::Mult(t) => {
                let b = xi_bracket(t, beta)?;
                b.is_one().then_some(Bracket::Multiplicative(b))
            }
            Filter::Add(t, mode) => {
                let z = zeta_star(t, beta)?;
                let ok = if *mode == Mode::AdditiveInteger && class.strict { z.is_integer() } else { z.is_zero() };
                ok.then_some(Bracket::Additive(z))
            }
        })
    }
}

fn admissible_parts(w: &Weights, target: &DimVector, filter: &Filter) -> Result<Vec<Part>> {
    let mut parts = Vec::new();
    for (root, class) in enumerate_positive_roots_below(w, target)? {
        if let Some(bracket) = filter.bracket(&root, &class)? {
            parts.push(Part { root, class, bracket });
        }
    }
    parts.sort_by(|a, b| b.root.flat().cmp(&a.root.flat()));
    Ok(parts)
}

struct Search<'a> {
    parts: &'a [Part],
    limit: usize,
    found: Vec<Vec<usize>>,
    overflow: bool,
    dead: HashSet<(Vec<i64>, usize)>,
    stack: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, residual: &DimVector, start: usize) -> bool {
        if residual.is_zero() {
            if self.found.len() == self.limit {
                self.overflow = true;
            } else {
                self.found.push(self.stack.clone());
            }
            return true;
        }
        let key = (residual.flat(), start);
        if self.dead.contains(&key) {
            return false;
        }
        let mut any = false;
        for idx in start..self.parts.len() {
            if self.overflow {
                return true;
            }
            let root = &self.parts[idx].root;
            if root.le(residual) {
                self.stack.push(idx);
                any |= self.run(&residual.sub(root), idx);
                self.stack.pop();
            }
        }
        if !any {
            self.dead.insert(key);
        }
        any
    }
}

fn search(parts: &[Part], target: &DimVector, limit: usize) -> DecompositionSearch {
    let mut s = Search { parts, limit, found: Vec::new(), overflow: false, dead: HashSet::new(), stack: Vec::new() };
    s.run(target, 0);
    DecompositionSearch {
        decompositions: s
            .found
            .into_iter()
            .map(|idx| Decomposition { parts: idx.into_iter().map(|i| parts[i].clone()).collect() })
            .collect(),
        limit_reached: s.overflow,
    }
}

/// Decompositions of `alpha` into positive roots satisfying the bracket
/// condition of `mode`, as multisets in a canonical order. At most `limit`
/// are returned; `limit_reached` reports that more exist.
pub fn enumerate_admissible_decompositions(p: &Problem, mode: Mode, limit: usize) -> Result<DecompositionSearch> {
    let additive;
    let filter = match mode {
        Mode::Multiplicative => Filter::Mult(&p.t),
        _ => {
            additive = p.additive_type()?;
            Filter::Add(&additive, mode)
        }
    };
    let parts = admissible_parts(&p.weights, &p.alpha, &filter)?;
    Ok(search(&parts, &p.alpha, limit))
}

/// The decision, with the evidence that produced it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Answer {
    Yes,
    No,
    Undecided,
}

#[derive(Clone, Debug)]
pub struct Construction {
    pub mats: Vec<Matrix>,
    /// The decomposition realized: strict parts are built as rigid irreducible
    /// blocks, non-strict parts act through closure.
    pub parts: Vec<DimVector>,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub answer: Answer,
    pub criterion: String,
    pub reason: String,
    pub decomposition: Option<Decomposition>,
    pub construction: Option<Construction>,
    /// Strict parts of the decomposition not built explicitly.
    pub unconstructed_parts: Vec<DimVector>,
}

impl Verdict {
    fn new(answer: Answer, criterion: &str, reason: impl Into<String>) -> Self {
        Verdict {
            answer,
            criterion: criterion.into(),
            reason: reason.into(),
            decomposition: None,
            construction: None,
            unconstructed_parts: Vec::new(),
        }
    }
}

const CLOSURE_CRITERION: &str = "sum of positive roots with bracket 1";
const ADDITIVE_CRITERION: &str = "sum of positive roots with zeta-bracket 0";
const RIGID_CRITERION: &str = "strict real root with bracket 1 and no nontrivial decomposition";

/// Number of decompositions tried when looking for one whose strict parts are
/// all rigid-constructible.
const CONSTRUCTION_CANDIDATES: usize = 64;

/// Solvability of `A_1 ... A_k = 1` with `A_i` in the closure of the `i`-th class.
pub fn decide_closure_multiplicative(p: &Problem) -> Result<Verdict> {
    let found = enumerate_admissible_decompositions(p, Mode::Multiplicative, 1)?;
    let Some(first) = found.decompositions.into_iter().next() else {
        return Ok(Verdict::new(Answer::No, CLOSURE_CRITERION, "no decomposition into positive roots with bracket 1"));
    };
    let mut v = Verdict::new(Answer::Yes, CLOSURE_CRITERION, format!("decomposition into {} part(s)", first.parts.len()));
    let strict: Vec<DimVector> = first.parts.iter().filter(|x| x.class.strict).map(|x| x.root.clone()).collect();
    v.decomposition = Some(first);
    v.construction = build_closure_solution(p)?;
    if v.construction.is_none() {
        v.unconstructed_parts = strict;
    }
    Ok(v)
}

/// Looks for a decomposition whose strict parts all lie in `S_xi`, builds each
/// as a rigid block and checks the direct sum against the closures.
fn build_closure_solution(p: &Problem) -> Result<Option<Construction>> {
    let candidates = enumerate_admissible_decompositions(p, Mode::Multiplicative, CONSTRUCTION_CANDIDATES)?;
    let mut memo: HashMap<Vec<i64>, bool> = HashMap::new();
    'outer: for d in &candidates.decompositions {
        for part in d.parts.iter().filter(|x| x.class.strict) {
            let key = part.root.flat();
            let member = match memo.get(&key) {
                Some(&m) => m,
                None => {
                    let m = in_s_xi(&p.weights, &p.t, &part.root)?.member;
                    memo.insert(key, m);
                    m
                }
            };
            if !member {
                continue 'outer;
            }
        }
        let mut blocks: Vec<Vec<Matrix>> = vec![Vec::new(); p.weights.k()];
        for part in d.parts.iter().filter(|x| x.class.strict) {
            let rep = construct_rigid_for(&p.t, &part.root, VertexOrder::CenterFirst)?;
            for (i, m) in rep.into_mats().into_iter().enumerate() {
                blocks[i].push(m);
            }
        }
        let mats: Vec<Matrix> = blocks.iter().map(|b| block_diag(b)).collect();
        let report = verify_solution(&mats, p, VerifyMode::Closure)?;
        if !report.ok {
            return Err(Error::Internal(format!("constructed closure solution fails: {}", report.failures.join("; "))));
        }
        return Ok(Some(Construction { mats, parts: d.roots() }));
    }
    Ok(None)
}

/// Solvability of `A_1 + ... + A_k = 0` with `A_i` in the closure of the
/// `i`-th class, for rational eigenvalues.
pub fn decide_closure_additive(p: &Problem) -> Result<Verdict> {
    let found = enumerate_admissible_decompositions(p, Mode::AdditiveZero, 1)?;
    Ok(match found.decompositions.into_iter().next() {
        Some(d) => {
            let mut v = Verdict::new(Answer::Yes, ADDITIVE_CRITERION, format!("decomposition into {} part(s)", d.parts.len()));
            v.unconstructed_parts = d.parts.iter().filter(|x| x.class.strict).map(|x| x.root.clone()).collect();
            v.decomposition = Some(d);
            v
        }
        None => Verdict::new(Answer::No, ADDITIVE_CRITERION, "no decomposition into positive roots with zeta-bracket 0"),
    })
}

#[derive(Clone, Debug)]
pub struct Membership {
    pub member: bool,
    pub reason: String,
    /// A nontrivial decomposition, when that is why membership fails.
    pub decomposition: Option<Decomposition>,
}

/// Whether `a` is a strict real root with `xi^[a] = 1` admitting no nontrivial
/// decomposition into positive roots with bracket 1.
pub fn in_s_xi(w: &Weights, t: &TypeData, a: &DimVector) -> Result<Membership> {
    let fail = |reason: &str| Ok(Membership { member: false, reason: reason.into(), decomposition: None });
    a.check_shape(w)?;
    if a.is_zero() || !a.is_nonnegative() {
        return fail("not a positive vector");
    }
    let class = classify(w, a)?;
    match class.tag {
        RootTag::NotRoot => return fail("not a root"),
        RootTag::ImaginaryRoot => return fail("imaginary root"),
        RootTag::RealRoot => {}
    }
    if !class.strict {
        return fail("not strict");
    }
    if !xi_bracket(t, a)?.is_one() {
        return fail("bracket is not 1");
    }
    let parts: Vec<Part> = admissible_parts(w, a, &Filter::Mult(t))?.into_iter().filter(|x| &x.root != a).collect();
    if let Some(d) = search(&parts, a, 1).decompositions.into_iter().next() {
        return Ok(Membership {
            member: false,
            reason: "nontrivial decomposition with bracket 1".into(),
            decomposition: Some(d),
        });
    }
    Ok(Membership { member: true, reason: "strict real root with no nontrivial decomposition".into(), decomposition: None })
}

/// Existence of a rigid irreducible solution with `A_i` in the given classes.
pub fn decide_rigid(p: &Problem) -> Result<Verdict> {
    let m = in_s_xi(&p.weights, &p.t, &p.alpha)?;
    let mut v = Verdict::new(if m.member { Answer::Yes } else { Answer::No }, RIGID_CRITERION, m.reason);
    v.decomposition = m.decomposition;
    Ok(v)
}

/// Order in which vertices are tried by [`construct_rigid`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexOrder {
    /// `0, [1,1], [1,2], ...`
    CenterFirst,
    /// Arm vertices from the last one backwards, then `0`.
    ArmsFirst,
}

impl VertexOrder {
    fn vertices(self, w: &Weights) -> Vec<Vertex> {
        let mut v = w.vertices();
        if self == VertexOrder::ArmsFirst {
            v.reverse();
        }
        v
    }
}

/// The rigid irreducible solution of a problem with `alpha` in `S_xi`.
pub fn construct_rigid(p: &Problem, order: VertexOrder) -> Result<Representation> {
    let m = in_s_xi(&p.weights, &p.t, &p.alpha)?;
    if !m.member {
        return Err(Error::Precondition(format!("no rigid irreducible solution: {}", m.reason)));
    }
    construct_rigid_for(&p.t, &p.alpha, order)
}

/// Reflection descent to `e_0`, then convolutions back up. The result is
/// checked for product one, the prescribed type and dimension vector,
/// absolute irreducibility and `p(alpha) = 0`.
fn construct_rigid_for(t: &TypeData, alpha: &DimVector, order: VertexOrder) -> Result<Representation> {
    let w = t.weights();
    let rep = descend(&w, t, alpha, order)?;
    let beta = rep.dimension_vector(t)?;
    if &beta != alpha {
        return Err(Error::Internal(format!("constructed dimension vector {beta}, expected {alpha}")));
    }
    let n = rep.dim();
    if generated_algebra_dim(rep.mats())? != n * n {
        return Err(Error::Internal("constructed representation is not irreducible".into()));
    }
    if p_form(&w, alpha)? != 0 {
        return Err(Error::Internal(format!("p({alpha}) is not zero")));
    }
    Ok(rep)
}

fn descend(w: &Weights, t: &TypeData, alpha: &DimVector, order: VertexOrder) -> Result<Representation> {
    if alpha.a0 == 1 && alpha.total() == 1 {
        return Representation::new(t.rows.iter().map(|row| Matrix::scalar(1, &row[0])).collect());
    }
    for v in order.vertices(w) {
        if pairing_with_vertex(w, alpha, v) <= 0 {
            continue;
        }
        let next = reflect(w, v, alpha)?;
        if !next.is_nonnegative() || next.is_zero() || !next.is_strict() {
            continue;
        }
        return match v {
            Vertex::Center => {
                let t0 = r0_prime(t)?;
                let rep = descend(w, &t0, &next, order)?;
                Ok(convolve(&rep, &t0)?.0)
            }
            Vertex::Arm(..) => descend(w, &rv_prime(t, v)?, &next, order),
        };
    }
    Err(Error::Internal(format!("no strict descending reflection from {alpha}")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    /// Each `A_i` lies in the class itself.
    Exact,
    /// Each `A_i` lies in the closure of the class.
    Closure,
}

#[derive(Clone, Debug)]
pub struct SolutionReport {
    pub ok: bool,
    pub product_is_identity: bool,
    pub class_ok: Vec<bool>,
    /// Failed identities in check order.
    pub failures: Vec<String>,
}

/// Checks `A_1 ... A_k = 1` and class (or closure) membership of each `A_i`.
pub fn verify_solution(mats: &[Matrix], p: &Problem, mode: VerifyMode) -> Result<SolutionReport> {
    let k = p.weights.k();
    let n = p.alpha.a0 as usize;
    if mats.len() != k {
        return Err(Error::Shape(format!("{} matrices for {k} classes", mats.len())));
    }
    if let Some(i) = mats.iter().position(|m| m.rows() != n || m.cols() != n) {
        return Err(Error::Shape(format!("matrix {} is not {n}x{n}", i + 1)));
    }
    let mut failures = Vec::new();
    let prod = mats.iter().fold(Matrix::identity(n), |acc, m| &acc * m);
    let product_is_identity = prod.is_identity();
    if !product_is_identity {
        failures.push("A_1 ... A_k != 1".to_string());
    }
    let mut class_ok = Vec::with_capacity(k);
    for (i, (m, c)) in mats.iter().zip(&p.classes).enumerate() {
        let ok = match mode {
            VerifyMode::Exact => type_dims(&c.eigenvalues, m).as_ref() == Some(&c.dims),
            VerifyMode::Closure => closure_contains(c, m)?,
        };
        if !ok {
            failures.push(match mode {
                VerifyMode::Exact => format!("A_{} is not in class {}", i + 1, i + 1),
                VerifyMode::Closure => format!("A_{} is not in the closure of class {}", i + 1, i + 1),
            });
        }
        class_ok.push(ok);
    }
    Ok(SolutionReport { ok: failures.is_empty(), product_is_identity, class_ok, failures })
}

/// Evaluation of the conjectured criterion for irreducible solutions. This is
/// a combinatorial condition only, not a statement about existence.
#[derive(Clone, Debug)]
pub struct ConjectureReport {
    pub positive_root: bool,
    pub bracket_one: bool,
    pub p_alpha: i64,
    /// `None` when the decomposition limit was reached first.
    pub inequality_holds: Option<bool>,
    pub violating: Option<Decomposition>,
    pub decompositions_checked: usize,
}

impl ConjectureReport {
    pub fn condition(&self) -> Option<bool> {
        if !self.positive_root || !self.bracket_one {
            return Some(false);
        }
        self.inequality_holds
    }
}

/// `alpha` a positive root, `xi^[alpha] = 1` and `p(alpha) > sum p(parts)` for
/// every nontrivial decomposition into positive roots with bracket 1.
pub fn conjecture_condition(p: &Problem, limit: usize) -> Result<ConjectureReport> {
    let w = &p.weights;
    let alpha = &p.alpha;
    let positive_root = alpha.is_nonnegative() && !alpha.is_zero() && classify(w, alpha)?.is_positive_root();
    let bracket_one = xi_bracket(&p.t, alpha)?.is_one();
    let p_alpha = p_form(w, alpha)?;
    let mut report = ConjectureReport {
        positive_root,
        bracket_one,
        p_alpha,
        inequality_holds: None,
        violating: None,
        decompositions_checked: 0,
    };
    if !positive_root || !bracket_one {
        return Ok(report);
    }
    let parts: Vec<Part> =
        admissible_parts(w, alpha, &Filter::Mult(&p.t))?.into_iter().filter(|x| &x.root != alpha).collect();
    let found = search(&parts, alpha, limit);
    report.decompositions_checked = found.decompositions.len();
    for d in &found.decompositions {
        let sum: i64 = d.parts.iter().map(|x| p_form(w, &x.root)).sum::<Result<i64>>()?;
        if p_alpha <= sum {
            report.inequality_holds = Some(false);
            report.violating = Some(d.clone());
            return Ok(report);
        }
    }
    if !found.limit_reached {
        report.inequality_holds = Some(true);
    }
    Ok(report)
}

/// Most box points [`generic_xi`] will sweep.
pub const MAX_BOX_POINTS: u64 = 4_000_000;

const TRIES_PER_PRIME: usize = 16;

/// Roots of unity `xi_{ij} = zeta_N^{m_ij}` with `xi^[beta] = 1` for `beta` in
/// the box exactly when `beta` is a multiple of `a`, and the sweep proving it.
#[derive(Clone, Debug)]
pub struct GenericXi {
    pub order: u64,
    pub exponents: Vec<Vec<i64>>,
    pub t: TypeData,
    pub box_bound: DimVector,
    pub points_checked: u64,
    pub multiples_in_box: Vec<DimVector>,
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn next_prime(mut n: u64) -> u64 {
    while !is_prime(n) {
        n += 1;
    }
    n
}

/// Extended gcd coefficients: `sum y_i d_i = gcd(d)`.
fn bezout(d: &[i64]) -> (i64, Vec<i64>) {
    let mut g = 0i64;
    let mut y = vec![0i64; d.len()];
    for (idx, &x) in d.iter().enumerate() {
        let e = g.extended_gcd(&x);
        for c in y.iter_mut().take(idx) {
            *c *= e.x;
        }
        y[idx] = e.y;
        g = e.gcd;
    }
    if g < 0 {
        g = -g;
        y.iter_mut().for_each(|c| *c = -*c);
    }
    (g, y)
}

fn box_points(bound: &[i64]) -> u64 {
    bound.iter().try_fold(1u64, |acc, &b| acc.checked_mul(b as u64 + 1)).unwrap_or(u64::MAX)
}

/// Chooses `N = g p` (`g` the gcd of the entries of `a`, `p` prime) and
/// exponents with `L(a/g) = p mod N`, `L` the exponent of the bracket, so that
/// multiples of `a` are exactly the box points with bracket 1. Each candidate is
/// checked over the whole box; primes grow from `n_hint / g` until one works.
pub fn generic_xi(w: &Weights, a: &DimVector, box_bound: &DimVector, n_hint: Option<u64>, seed: u64) -> Result<GenericXi> {
    a.check_shape(w)?;
    box_bound.check_shape(w)?;
    if a.is_zero() || !a.is_nonnegative() {
        return Err(Error::Input("genericity target must be nonzero and nonnegative".into()));
    }
    if !a.le(box_bound) {
        return Err(Error::Input(format!("box {box_bound} does not contain {a}")));
    }
    let bound = box_bound.flat();
    let points = box_points(&bound);
    if points > MAX_BOX_POINTS {
        return Err(Error::Input(format!("box has {points} points, more than {MAX_BOX_POINTS}")));
    }
    let g = a.flat().into_iter().fold(0i64, |acc, x| acc.gcd(&x));
    let primitive = a.flat().into_iter().map(|x| x / g).collect::<Vec<_>>();
    let primitive = DimVector::from_flat(w, &primitive)?;
    // Increments of a/g, indexed like the exponents.
    let inc: Vec<Vec<i64>> = w
        .as_slice()
        .iter()
        .enumerate()
        .map(|(i, &wi)| (1..=wi).map(|j| primitive.arm_entry(i + 1, j - 1) - primitive.arm_entry(i + 1, j)).collect())
        .collect();
    let flat_inc: Vec<i64> = inc.iter().flatten().copied().collect();
    let (h, y) = bezout(&flat_inc);
    debug_assert_eq!(h, 1);
    let g = g as u64;
    let cap = max_field_order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut prime = next_prime((n_hint.unwrap_or(2) / g).max(2));
    loop {
        let order = g.checked_mul(prime).filter(|&n| n <= cap).ok_or(Error::FieldOrderTooLarge {
            order: g.saturating_mul(prime),
            max: cap,
        })?;
        let n = order as i128;
        for _ in 0..TRIES_PER_PRIME {
            let mut m: Vec<i128> = flat_inc.iter().map(|_| rng.gen_range(0..n)).collect();
            let l: i128 = m.iter().zip(&flat_inc).map(|(&x, &d)| x * d as i128).sum::<i128>().rem_euclid(n);
            let shift = (prime as i128 - l).rem_euclid(n);
            for (x, &c) in m.iter_mut().zip(&y) {
                *x = (*x + shift * c as i128).rem_euclid(n);
            }
            if let Some(multiples) = sweep(w, a, &bound, &m, n)? {
                let mut exponents = Vec::new();
                let mut it = m.iter();
                for &wi in w.as_slice() {
                    exponents.push(it.by_ref().take(wi).map(|&x| x as i64).collect::<Vec<_>>());
                }
                let rows = exponents
                    .iter()
                    .map(|row| row.iter().map(|&e| Scalar::root_of_unity(order, e)).collect::<Result<Vec<_>>>())
                    .collect::<Result<_>>()?;
                return Ok(GenericXi {
                    order,
                    exponents,
                    t: TypeData::new(rows)?,
                    box_bound: box_bound.clone(),
                    points_checked: points,
                    multiples_in_box: multiples,
                });
            }
        }
        prime = next_prime(prime + 1);
    }
}

/// Bracket exponent coefficients per vertex: `c_0 = sum_i m_{i1}`,
/// `c_{[i,j]} = m_{i,j+1} - m_{ij}`; returns the multiples of `a` if bracket 1
/// occurs exactly on them.
fn sweep(w: &Weights, a: &DimVector, bound: &[i64], m: &[i128], n: i128) -> Result<Option<Vec<DimVector>>> {
    let mut coeff = vec![0i128];
    let mut offset = 0;
    for &wi in w.as_slice() {
        coeff[0] += m[offset];
        for j in 1..wi {
            coeff.push(m[offset + j] - m[offset + j - 1]);
        }
        offset += wi;
    }
    let mut cur = vec![0i64; bound.len()];
    let mut multiples = Vec::new();
    loop {
        let l: i128 = cur.iter().zip(&coeff).map(|(&x, &c)| x as i128 * c).sum::<i128>().rem_euclid(n);
        let beta = DimVector::from_flat(w, &cur)?;
        let multiple = beta.multiple_of(a).is_some();
        if (l == 0) != multiple {
            return Ok(None);
        }
        if multiple {
            multiples.push(beta);
        }
        let mut idx = 0;
        loop {
            if idx == cur.len() {
                return Ok(Some(multiples));
            }
            if cur[idx] < bound[idx] {
                cur[idx] += 1;
                break;
            }
            cur[idx] = 0;
            idx += 1;
        }
    }
}
