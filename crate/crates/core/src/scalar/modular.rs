//! Integer and multi-modular kernels for cyclotomic arithmetic.
//!
//! Products run on integer polynomials with a common denominator. Inverses
//! are computed modulo word-sized primes, lifted by Chinese remaindering and
//! rational reconstruction, and accepted only after an exact check.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::cyclotomic::cyclotomic_poly;
use super::Rational;

/// Splits `a` as `num / den` with integer `num` and positive `den`.
pub(super) fn to_integer_poly(a: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let den = a.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let num = a.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    (num, den)
}

/// `a * b` reduced modulo the monic `N`-th cyclotomic polynomial.
pub(super) fn mul_reduce(order: u64, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut prod = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                prod[i + j] += x * y;
            }
        }
    }
    reduce_int(order, &mut prod);
    prod
}

fn reduce_int(order: u64, poly: &mut Vec<BigInt>) {
    let modulus = cyclotomic_poly(order);
    let deg = modulus.len() - 1;
    for d in (deg..poly.len()).rev() {
        if poly[d].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut poly[d]);
        let base = d - deg;
        for (t, &m) in modulus[..deg].iter().enumerate() {
            match m {
                0 => {}
                1 => poly[base + t] -= &c,
                -1 => poly[base + t] += &c,
                m => poly[base + t] -= &c * m,
            }
        }
    }
    poly.resize(deg, BigInt::zero());
}

/// Inverse of a nonzero element given by its reduced coordinates.
pub(super) fn inverse(order: u64, a: &[Rational]) -> Vec<Rational> {
    let modulus = cyclotomic_poly(order);
    let deg = modulus.len() - 1;
    let (num, den) = to_integer_poly(a);
    let mut crt = Crt::new(deg);
    let mut next_check = 2;
    for p in Primes::new() {
        let Some(inv) = inverse_mod_p(&num, &modulus, p) else {
            continue;
        };
        crt.push(&inv, p);
        if crt.primes < next_check {
            continue;
        }
        next_check *= 2;
        if let Some(cand) = crt.reconstruct() {
            let (cn, cd) = to_integer_poly(&cand);
            let prod = mul_reduce(order, &num, &cn);
            if prod[0] == cd && prod[1..].iter().all(Zero::is_zero) {
                return cand.into_iter().map(|c| c * &den).collect();
            }
        }
    }
    unreachable!("prime sequence is infinite")
}

struct Crt {
    residues: Vec<BigInt>,
    modulus: BigInt,
    primes: usize,
}

impl Crt {
    fn new(len: usize) -> Self {
        Crt { residues: vec![BigInt::zero(); len], modulus: BigInt::one(), primes: 0 }
    }

    fn push(&mut self, r: &[u64], p: u64) {
        let m_inv = pow_mod(big_mod(&self.modulus, p), p - 2, p);
        for (x, &ri) in self.residues.iter_mut().zip(r) {
            let diff = (ri + p - big_mod(x, p)) % p;
            let h = mul_mod(diff, m_inv, p);
            *x += &self.modulus * h;
        }
        self.modulus *= p;
        self.primes += 1;
    }

    fn reconstruct(&self) -> Option<Vec<Rational>> {
        let bound = (&self.modulus >> 1u32).sqrt();
        self.residues.iter().map(|x| rational_reconstruct(x, &self.modulus, &bound)).collect()
    }
}

fn rational_reconstruct(x: &BigInt, m: &BigInt, bound: &BigInt) -> Option<Rational> {
    let (mut r0, mut r1) = (m.clone(), x.clone());
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > *bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(Rational::new(r1, s1))
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

fn big_mod(x: &BigInt, p: u64) -> u64 {
    let r = (x % p).to_u64_digits();
    let v = r.1.first().copied().unwrap_or(0);
    if r.0 == Sign::Minus && v != 0 {
        p - v
    } else {
        v
    }
}

// Extended Euclid in F_p[x]; `None` when `a` is not a unit modulo `m`.
fn inverse_mod_p(a: &[BigInt], m: &[i64], p: u64) -> Option<Vec<u64>> {
    let deg = m.len() - 1;
    let mut r0: Vec<u64> = m.iter().map(|&c| if c < 0 { p - (c.unsigned_abs() % p) } else { c as u64 % p }).collect();
    let mut r1: Vec<u64> = a.iter().map(|c| big_mod(c, p)).collect();
    trim(&mut r0);
    trim(&mut r1);
    let (mut t0, mut t1) = (vec![0u64], vec![1u64]);
    while r1.len() > 1 || r1[0] != 0 {
        if r1.len() == 1 {
            let c = pow_mod(r1[0], p - 2, p);
            let mut out: Vec<u64> = t1.iter().map(|&x| mul_mod(x, c, p)).collect();
            out.resize(deg, 0);
            return Some(out);
        }
        let (q, r) = divmod(&r0, &r1, p);
        let qt = poly_mul(&q, &t1, p);
        let t2 = poly_sub(&t0, &qt, p);
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t2);
    }
    None
}

fn trim(p: &mut Vec<u64>) {
    while p.len() > 1 && p.last() == Some(&0) {
        p.pop();
    }
    if p.is_empty() {
        p.push(0);
    }
}

fn divmod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = b.len() - 1;
    let lead_inv = pow_mod(b[db], p - 2, p);
    let mut r = a.to_vec();
    let mut q = vec![0u64; a.len().saturating_sub(db).max(1)];
    while r.len() > db && !(r.len() == 1 && r[0] == 0) {
        let dr = r.len() - 1;
        let c = mul_mod(r[dr], lead_inv, p);
        let shift = dr - db;
        for (t, &bt) in b.iter().enumerate() {
            r[shift + t] = (r[shift + t] + p - mul_mod(c, bt, p)) % p;
        }
        q[shift] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

/// Primes below `2^62`, descending.
struct Primes {
    next: u64,
}

impl Primes {
    fn new() -> Self {
        Primes { next: (1u64 << 62) - 1 }
    }
}

impl Iterator for Primes {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        while self.next > 3 {
            let c = self.next;
            self.next -= 2;
            if is_prime(c) {
                return Some(c);
            }
        }
        None
    }
}

fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &b in &BASES {
        let mut x = pow_mod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}
