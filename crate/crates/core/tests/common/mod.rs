//! Independent oracles shared by the integration tests. Nothing here calls the
//! library's root system or search code.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use dsforge::Scalar;

pub fn z(n: u64, k: i64) -> Scalar {
    Scalar::root_of_unity(n, k).unwrap()
}

/// Star graph with vertices `0, [1,1], [1,2], ...` in flat order.
pub struct Star {
    pub w: Vec<usize>,
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Star {
    pub fn new(w: &[usize]) -> Self {
        let mut edges = Vec::new();
        let mut next = 1;
        for &wi in w {
            let mut prev = 0;
            for _ in 1..wi {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
        }
        Star { w: w.to_vec(), n: next, edges }
    }

    /// Flat index of arm vertex `[i, j]`, both 1-based.
    pub fn index(&self, i: usize, j: usize) -> usize {
        1 + self.w[..i - 1].iter().map(|&x| x - 1).sum::<usize>() + (j - 1)
    }

    pub fn form(&self, a: &[i64], b: &[i64]) -> i64 {
        let diag: i64 = a.iter().zip(b).map(|(x, y)| 2 * x * y).sum();
        let off: i64 = self.edges.iter().map(|&(u, v)| a[u] * b[v] + a[v] * b[u]).sum();
        diag - off
    }

    pub fn pairing_unit(&self, a: &[i64], v: usize) -> i64 {
        let mut e = vec![0; self.n];
        e[v] = 1;
        self.form(a, &e)
    }

    pub fn reflect(&self, v: usize, a: &[i64]) -> Vec<i64> {
        let mut out = a.to_vec();
        out[v] -= self.pairing_unit(a, v);
        out
    }

    fn connected(&self, a: &[i64]) -> bool {
        let support: Vec<usize> = (0..self.n).filter(|&v| a[v] != 0).collect();
        let Some(&s) = support.first() else { return false };
        let mut seen = HashSet::from([s]);
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &(x, y) in &self.edges {
                let u = if x == v { y } else if y == v { x } else { continue };
                if a[u] != 0 && seen.insert(u) {
                    stack.push(u);
                }
            }
        }
        seen.len() == support.len()
    }

    /// Positive real and imaginary roots of height at most `h`, grown upward
    /// from simple roots and from the fundamental set by reflections.
    pub fn positive_roots(&self, h: i64) -> (HashSet<Vec<i64>>, HashSet<Vec<i64>>) {
        let simple = (0..self.n).map(|v| {
            let mut e = vec![0; self.n];
            e[v] = 1;
            e
        });
        let real = self.orbit_upward(simple.collect(), h);
        let fundamental: Vec<Vec<i64>> = nonnegative_vectors(self.n, h)
            .into_iter()
            .filter(|a| self.connected(a) && (0..self.n).all(|v| self.pairing_unit(a, v) <= 0))
            .collect();
        let imaginary = self.orbit_upward(fundamental, h);
        (real, imaginary)
    }

    fn orbit_upward(&self, seeds: Vec<Vec<i64>>, h: i64) -> HashSet<Vec<i64>> {
        let mut seen: HashSet<Vec<i64>> = seeds.iter().cloned().collect();
        let mut queue: VecDeque<Vec<i64>> = seeds.into();
        while let Some(a) = queue.pop_front() {
            for v in 0..self.n {
                let b = self.reflect(v, &a);
                if b[v] > a[v] && b.iter().sum::<i64>() <= h && seen.insert(b.clone()) {
                    queue.push_back(b);
                }
            }
        }
        seen
    }

    /// Exponent of `zeta_N` in `xi^[beta]` when `xi_ij = zeta_N^{e[i][j]}`.
    pub fn bracket_exponent(&self, e: &[Vec<i64>], beta: &[i64]) -> i64 {
        let mut total = 0;
        for (i, row) in e.iter().enumerate() {
            let wi = self.w[i];
            let at = |j: usize| if j == 0 { beta[0] } else if j >= wi { 0 } else { beta[self.index(i + 1, j)] };
            for j in 1..=wi {
                total += row[j - 1] * (at(j - 1) - at(j));
            }
        }
        total
    }
}

/// All nonzero nonnegative vectors of length `n` with entry sum at most `h`.
pub fn nonnegative_vectors(n: usize, h: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    fn rec(i: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == cur.len() {
            if cur.iter().any(|&x| x != 0) {
                out.push(cur.clone());
            }
            return;
        }
        for x in 0..=left {
            cur[i] = x;
            rec(i + 1, left - x, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, h, &mut cur, &mut out);
    out
}

/// Every multiset of vectors from `parts` summing to `target`, each sorted
/// in descending order.
pub fn brute_force_decompositions(parts: &[Vec<i64>], target: &[i64]) -> BTreeSet<Vec<Vec<i64>>> {
    let mut sorted = parts.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut out = BTreeSet::new();
    fn rec(parts: &[Vec<i64>], from: usize, left: Vec<i64>, acc: &mut Vec<Vec<i64>>, out: &mut BTreeSet<Vec<Vec<i64>>>) {
        if left.iter().all(|&x| x == 0) {
            let mut d = acc.clone();
            d.sort_by(|a, b| b.cmp(a));
            out.insert(d);
            return;
        }
        for idx in from..parts.len() {
            let p = &parts[idx];
            if p.iter().zip(&left).all(|(a, b)| a <= b) {
                acc.push(p.clone());
                let rest = left.iter().zip(p).map(|(a, b)| a - b).collect();
                rec(parts, idx, rest, acc, out);
                acc.pop();
            }
        }
    }
    rec(&sorted, 0, target.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// All partitions of `n`, parts non-increasing.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(acc.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            acc.push(p);
            rec(n - p, p, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// `p` dominates `q`: every prefix sum of `p` is at least that of `q`.
pub fn dominates(p: &[usize], q: &[usize]) -> bool {
    let (mut sp, mut sq) = (0, 0);
    (0..p.len().max(q.len())).all(|i| {
        sp += p.get(i).copied().unwrap_or(0);
        sq += q.get(i).copied().unwrap_or(0);
        sp >= sq
    })
}
