//! Root system of the star-shaped graph `Gamma_w`.
//!
//! The graph has a central vertex `0` and, for each `i`, an arm
//! `[i,1] - [i,2] - ... - [i,w_i - 1]` attached to `0` at `[i,1]`. Dimension
//! vectors are integer vectors on its vertices.

use std::fmt;

use crate::error::{Error, Result};

/// Arm lengths plus one: arm `i` has `w_i - 1` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weights(Vec<usize>);

/// A vertex of `Gamma_w`. Arm vertices are 1-based: `Arm(i, j)` is `[i,j]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Center,
    Arm(usize, usize),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Center => write!(f, "0"),
            Vertex::Arm(i, j) => write!(f, "[{i},{j}]"),
        }
    }
}

impl Weights {
    pub fn new(w: Vec<usize>) -> Result<Self> {
        if w.iter().any(|&x| x == 0) {
            return Err(Error::Input("weights must be positive".into()));
        }
        Ok(Weights(w))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Number of arms `k`.
    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn num_vertices(&self) -> usize {
        1 + self.0.iter().map(|w| w - 1).sum::<usize>()
    }

    /// Vertices in the fixed order `0, [1,1], [1,2], ..., [2,1], ...`.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out = vec![Vertex::Center];
        for (i, &w) in self.0.iter().enumerate() {
            out.extend((1..w).map(|j| Vertex::Arm(i + 1, j)));
        }
        out
    }

    pub fn contains(&self, v: Vertex) -> bool {
        match v {
            Vertex::Center => true,
            Vertex::Arm(i, j) => i >= 1 && i <= self.k() && j >= 1 && j < self.0[i - 1],
        }
    }

    fn check(&self, v: Vertex) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v.to_string()))
        }
    }

    pub fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        match v {
            Vertex::Center => {
                (0..self.k()).filter(|&i| self.0[i] >= 2).map(|i| Vertex::Arm(i + 1, 1)).collect()
            }
            Vertex::Arm(i, j) => {
                let mut out = vec![if j == 1 { Vertex::Center } else { Vertex::Arm(i, j - 1) }];
                if j + 1 < self.0[i - 1] {
                    out.push(Vertex::Arm(i, j + 1));
                }
                out
            }
        }
    }
}

/// Integer vector on the vertex set of `Gamma_w`.
///
/// `arms[i][j-1]` holds the component at `[i+1, j]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector {
    pub a0: i64,
    pub arms: Vec<Vec<i64>>,
}

impl DimVector {
    pub fn new(a0: i64, arms: Vec<Vec<i64>>) -> Self {
        DimVector { a0, arms }
    }

    pub fn zero(w: &Weights) -> Self {
        DimVector { a0: 0, arms: w.0.iter().map(|&wi| vec![0; wi - 1]).collect() }
    }

    /// The coordinate vector `epsilon_v`.
    pub fn unit(w: &Weights, v: Vertex) -> Result<Self> {
        w.check(v)?;
        let mut out = Self::zero(w);
        out.set(v, 1);
        Ok(out)
    }

    pub fn conforms(&self, w: &Weights) -> bool {
        self.arms.len() == w.k() && self.arms.iter().zip(&w.0).all(|(a, &wi)| a.len() + 1 == wi)
    }

    pub fn check_shape(&self, w: &Weights) -> Result<()> {
        if self.conforms(w) {
            Ok(())
        } else {
            Err(Error::Shape(format!("dimension vector {self} does not match weights {:?}", w.0)))
        }
    }

    /// The shape implied by the arm lengths.
    pub fn weights(&self) -> Weights {
        Weights(self.arms.iter().map(|a| a.len() + 1).collect())
    }

    pub fn get(&self, v: Vertex) -> i64 {
        match v {
            Vertex::Center => self.a0,
            Vertex::Arm(i, j) => self.arms[i - 1][j - 1],
        }
    }

    pub fn set(&mut self, v: Vertex, x: i64) {
        match v {
            Vertex::Center => self.a0 = x,
            Vertex::Arm(i, j) => self.arms[i - 1][j - 1] = x,
        }
    }

    /// Arm entry with the conventions `alpha_{i0} = alpha_0`, `alpha_{i,w_i} = 0`.
    /// `arm` is 1-based.
    pub fn arm_entry(&self, arm: usize, j: usize) -> i64 {
        if j == 0 {
            self.a0
        } else {
            self.arms[arm - 1].get(j - 1).copied().unwrap_or(0)
        }
    }

    /// Coordinates in vertex order.
    pub fn flat(&self) -> Vec<i64> {
        let mut out = vec![self.a0];
        for arm in &self.arms {
            out.extend_from_slice(arm);
        }
        out
    }

    pub fn from_flat(w: &Weights, xs: &[i64]) -> Result<Self> {
        if xs.len() != w.num_vertices() {
            return Err(Error::Shape(format!(
                "expected {} coordinates, got {}",
                w.num_vertices(),
                xs.len()
            )));
        }
        let mut arms = Vec::with_capacity(w.k());
        let mut pos = 1;
        for &wi in &w.0 {
            arms.push(xs[pos..pos + wi - 1].to_vec());
            pos += wi - 1;
        }
        Ok(DimVector { a0: xs[0], arms })
    }

    fn zip_with(&self, other: &Self, f: impl Fn(i64, i64) -> i64) -> Self {
        DimVector {
            a0: f(self.a0, other.a0),
            arms: self
                .arms
                .iter()
                .zip(&other.arms)
                .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect())
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |x, y| x + y)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |x, y| x - y)
    }

    pub fn scale(&self, c: i64) -> Self {
        self.zip_with(self, |x, _| c * x)
    }

    pub fn is_zero(&self) -> bool {
        self.flat().iter().all(|&x| x == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.flat().iter().all(|&x| x >= 0)
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &Self) -> bool {
        self.flat().iter().zip(other.flat()).all(|(&x, y)| x <= y)
    }

    pub fn total(&self) -> i64 {
        self.flat().iter().sum()
    }

    /// `alpha_0 >= alpha_{i1} >= ... >= alpha_{i,w_i-1} >= 0` on every arm.
    pub fn is_strict(&self) -> bool {
        self.arms.iter().all(|arm| {
            let mut prev = self.a0;
            for &x in arm {
                if x > prev {
                    return false;
                }
                prev = x;
            }
            prev >= 0
        })
    }

    /// If `other` is an integer multiple `c * self`, returns `c`.
    pub fn multiple_of(&self, base: &Self) -> Option<i64> {
        let xs = self.flat();
        let bs = base.flat();
        let (pivot, &b) = bs.iter().enumerate().find(|(_, &b)| b != 0)?;
        if xs[pivot] % b != 0 {
            return None;
        }
        let c = xs[pivot] / b;
        xs.iter().zip(&bs).all(|(&x, &y)| x == c * y).then_some(c)
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.a0)?;
        for (i, arm) in self.arms.iter().enumerate() {
            if i > 0 {
                write!(f, " |")?;
            }
            for x in arm {
                write!(f, " {x}")?;
            }
        }
        write!(f, ")")
    }
}

/// The symmetric bilinear form with `(e_v, e_v) = 2` and `-1` across edges.
pub fn pairing(w: &Weights, a: &DimVector, b: &DimVector) -> Result<i64> {
    a.check_shape(w)?;
    b.check_shape(w)?;
    let mut s = 2 * a.a0 * b.a0;
    for (aa, ba) in a.arms.iter().zip(&b.arms) {
        let mut prev_a = a.a0;
        let mut prev_b = b.a0;
        for (&x, &y) in aa.iter().zip(ba) {
            s += 2 * x * y - prev_a * y - prev_b * x;
            prev_a = x;
            prev_b = y;
        }
    }
    Ok(s)
}

/// `q(a) = (a, a) / 2`.
pub fn q(w: &Weights, a: &DimVector) -> Result<i64> {
    Ok(pairing(w, a, a)? / 2)
}

/// `p(a) = 1 - q(a)`.
pub fn p(w: &Weights, a: &DimVector) -> Result<i64> {
    Ok(1 - q(w, a)?)
}

/// `(a, e_v)`, computed locally.
pub fn pairing_with_vertex(w: &Weights, a: &DimVector, v: Vertex) -> i64 {
    2 * a.get(v) - w.neighbors(v).into_iter().map(|u| a.get(u)).sum::<i64>()
}

/// `s_v(a) = a - (a, e_v) e_v`.
pub fn reflect(w: &Weights, v: Vertex, a: &DimVector) -> Result<DimVector> {
    w.check(v)?;
    a.check_shape(w)?;
    let mut out = a.clone();
    out.set(v, a.get(v) - pairing_with_vertex(w, a, v));
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootTag {
    NotRoot,
    RealRoot,
    ImaginaryRoot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
    Mixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootClass {
    pub tag: RootTag,
    pub sign: Sign,
    pub strict: bool,
    pub in_fundamental_region: bool,
}

impl RootClass {
    pub fn is_root(&self) -> bool {
        self.tag != RootTag::NotRoot
    }

    pub fn is_positive_root(&self) -> bool {
        self.is_root() && self.sign == Sign::Positive
    }
}

fn support_connected(w: &Weights, a: &DimVector) -> bool {
    let support: Vec<Vertex> = w.vertices().into_iter().filter(|&v| a.get(v) != 0).collect();
    let Some(&start) = support.first() else {
        return false;
    };
    let mut seen = vec![start];
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for u in w.neighbors(v) {
            if a.get(u) != 0 && !seen.contains(&u) {
                seen.push(u);
                stack.push(u);
            }
        }
    }
    seen.len() == support.len()
}

/// Nonzero, nonnegative, connected support and `(a, e_v) <= 0` for all `v`.
pub fn in_fundamental_region(w: &Weights, a: &DimVector) -> bool {
    a.is_nonnegative()
        && !a.is_zero()
        && support_connected(w, a)
        && w.vertices().into_iter().all(|v| pairing_with_vertex(w, a, v) <= 0)
}

/// For a positive non-strict root `alpha_0 = 0`, `alpha_{l,j} = 1` for `r <= j <= s`,
/// returns `(l, r, s)`.
pub fn nonstrict_run(w: &Weights, a: &DimVector) -> Option<(usize, usize, usize)> {
    if !a.conforms(w) || a.a0 != 0 {
        return None;
    }
    let mut found = None;
    for (i, arm) in a.arms.iter().enumerate() {
        if arm.iter().all(|&x| x == 0) {
            continue;
        }
        if found.is_some() || arm.iter().any(|&x| x != 0 && x != 1) {
            return None;
        }
        let r = arm.iter().position(|&x| x == 1).unwrap();
        let s = arm.iter().rposition(|&x| x == 1).unwrap();
        if arm[r..=s].iter().any(|&x| x != 1) {
            return None;
        }
        found = Some((i + 1, r + 1, s + 1));
    }
    found
}

/// Kac's reflection descent on a positive vector.
fn classify_positive(w: &Weights, a: &DimVector) -> RootTag {
    let vertices = w.vertices();
    let mut cur = a.clone();
    loop {
        if cur.total() == 1 {
            return RootTag::RealRoot;
        }
        if !support_connected(w, &cur) {
            return RootTag::NotRoot;
        }
        let descending = vertices.iter().copied().find(|&v| pairing_with_vertex(w, &cur, v) > 0);
        let Some(v) = descending else {
            return RootTag::ImaginaryRoot;
        };
        let next = cur.get(v) - pairing_with_vertex(w, &cur, v);
        if next < 0 {
            return RootTag::NotRoot;
        }
        cur.set(v, next);
    }
}

/// Classifies a nonzero vector as a real root, imaginary root or non-root.
pub fn classify(w: &Weights, a: &DimVector) -> Result<RootClass> {
    a.check_shape(w)?;
    if a.is_zero() {
        return Err(Error::ZeroVector);
    }
    let flat = a.flat();
    let has_pos = flat.iter().any(|&x| x > 0);
    let has_neg = flat.iter().any(|&x| x < 0);
    let sign = match (has_pos, has_neg) {
        (true, true) => Sign::Mixed,
        (true, false) => Sign::Positive,
        _ => Sign::Negative,
    };
    let tag = match sign {
        Sign::Mixed => RootTag::NotRoot,
        Sign::Positive => classify_positive(w, a),
        Sign::Negative => classify_positive(w, &a.scale(-1)),
    };
    Ok(RootClass {
        tag,
        sign,
        strict: a.is_strict(),
        in_fundamental_region: in_fundamental_region(w, a),
    })
}

/// All positive roots `beta` with `0 <= beta <= bound`, in lexicographic order of
/// their coordinate vectors.
pub fn enumerate_positive_roots_below(
    w: &Weights,
    bound: &DimVector,
) -> Result<Vec<(DimVector, RootClass)>> {
    bound.check_shape(w)?;
    if !bound.is_nonnegative() {
        return Err(Error::Input("bound must be componentwise nonnegative".into()));
    }
    let upper = bound.flat();
    let mut out = Vec::new();
    let mut cur = vec![0i64; upper.len()];
    loop {
        if cur.iter().any(|&x| x != 0) {
            let beta = DimVector::from_flat(w, &cur)?;
            let class = classify(w, &beta)?;
            if class.is_positive_root() {
                out.push((beta, class));
            }
        }
        // Odometer increment, last coordinate fastest.
        let mut i = upper.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if cur[i] < upper[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
        }
    }
}
