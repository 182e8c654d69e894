//! Cyclotomic polynomials and small number-theoretic helpers.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_integer::Integer;

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1);
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn mobius(n: u64) -> i32 {
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
/// The polynomial is monic of degree `euler_phi(n)`.
pub fn cyclotomic_poly(n: u64) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(p) = cache.read().unwrap().get(&n) {
        return p.clone();
    }
    let poly = Arc::new(compute_cyclotomic(n));
    cache.write().unwrap().insert(n, poly.clone());
    poly
}

// Phi_n = prod_{d | n} (x^d - 1)^{mu(n/d)}: multiply the positive factors, then
// divide out the negative ones exactly.
fn compute_cyclotomic(n: u64) -> Vec<i64> {
    let divs = divisors(n);
    let mut poly: Vec<i128> = vec![1];
    for &d in &divs {
        if mobius(n / d) == 1 {
            let d = d as usize;
            let mut next = vec![0i128; poly.len() + d];
            for (i, &c) in poly.iter().enumerate() {
                next[i] = next[i].checked_sub(c).expect("cyclotomic coefficient overflow");
                next[i + d] = next[i + d].checked_add(c).expect("cyclotomic coefficient overflow");
            }
            poly = next;
        }
    }
    for &d in &divs {
        if mobius(n / d) == -1 {
            let d = d as usize;
            let qlen = poly.len() - d;
            let mut q = vec![0i128; qlen];
            for i in 0..qlen {
                let prev = if i >= d { q[i - d] } else { 0 };
                q[i] = prev.checked_sub(poly[i]).expect("cyclotomic coefficient overflow");
            }
            poly = q;
        }
    }
    // Sign: the construction yields Phi_n up to the sign (-1)^{#positive - #negative factors}.
    if *poly.last().unwrap() < 0 {
        for c in poly.iter_mut() {
            *c = -*c;
        }
    }
    poly.into_iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient exceeds i64"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(*cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_poly(2), vec![1, 1]);
        assert_eq!(*cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_poly(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(*cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn degree_matches_phi() {
        for n in 1..=200 {
            assert_eq!(cyclotomic_poly(n).len() as u64 - 1, euler_phi(n), "n = {n}");
        }
    }

    #[test]
    fn phi_105_has_a_minus_two() {
        // First cyclotomic polynomial with a coefficient outside {-1, 0, 1}.
        assert!(cyclotomic_poly(105).contains(&-2));
    }
}
