//! Exact arithmetic in cyclotomic fields `Q(zeta_N)`.
//!
//! A [`Scalar`] stores its coordinates in the power basis
//! `1, zeta_N, ..., zeta_N^(phi(N)-1)`, reduced modulo the `N`-th cyclotomic
//! polynomial, so two scalars of the same field order are equal exactly when
//! their coordinate vectors are. Scalars of different orders are compared and
//! combined in `Q(zeta_lcm)`.

mod cyclotomic;
mod modular;
mod parse;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use cyclotomic::{cyclotomic_poly, euler_phi, lcm};
pub use parse::parse_scalar;

/// Arbitrary precision rational number, always in lowest terms.
pub type Rational = BigRational;

/// Default ceiling on the order `N` of the working field `Q(zeta_N)`.
pub const DEFAULT_MAX_FIELD_ORDER: u64 = 1 << 20;

static MAX_FIELD_ORDER: AtomicU64 = AtomicU64::new(DEFAULT_MAX_FIELD_ORDER);

/// Current ceiling on cyclotomic field orders.
pub fn max_field_order() -> u64 {
    MAX_FIELD_ORDER.load(Ordering::Relaxed)
}

/// Sets the ceiling on cyclotomic field orders (process wide).
pub fn set_max_field_order(max: u64) {
    MAX_FIELD_ORDER.store(max.max(1), Ordering::Relaxed);
}

fn check_order(order: u64) -> Result<()> {
    let max = max_field_order();
    if order > max {
        Err(Error::FieldOrderTooLarge { order, max })
    } else {
        Ok(())
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// An element of the cyclotomic field `Q(zeta_N)`.
#[derive(Clone, Debug)]
pub struct Scalar {
    order: u64,
    coeffs: Vec<Rational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { order: 1, coeffs: vec![Rational::zero()] }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(r: Rational) -> Self {
        Scalar { order: 1, coeffs: vec![r] }
    }

    /// `zeta_n^k`, for any integer `k`.
    pub fn root_of_unity(n: u64, k: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Input("root of unity of order 0".into()));
        }
        check_order(n)?;
        let e = k.rem_euclid(n as i64) as usize;
        let mut poly = vec![Rational::zero(); e + 1];
        poly[e] = Rational::one();
        Ok(Self::from_poly(n, poly))
    }

    /// Builds `sum_i poly[i] zeta_order^i`, reducing as needed.
    pub fn from_poly(order: u64, mut poly: Vec<Rational>) -> Self {
        reduce(order, &mut poly);
        Scalar { order, coeffs: poly }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Power-basis coordinates, `euler_phi(order)` of them.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if this scalar lies in `Q`.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-expresses `self` in `Q(zeta_order)`; `self.order()` must divide `order`.
    pub fn lift(&self, order: u64) -> Result<Self> {
        if order % self.order != 0 {
            return Err(Error::Input(format!(
                "cannot embed Q(zeta_{}) into Q(zeta_{})",
                self.order, order
            )));
        }
        check_order(order)?;
        if order == self.order {
            return Ok(self.clone());
        }
        let step = (order / self.order) as usize;
        let mut poly = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Ok(Self::from_poly(order, poly))
    }

    fn common(a: &Scalar, b: &Scalar) -> Result<(u64, Option<Scalar>, Option<Scalar>)> {
        if a.order == b.order {
            return Ok((a.order, None, None));
        }
        let l = lcm(a.order, b.order);
        check_order(l)?;
        let la = if a.order == l { None } else { Some(a.lift(l)?) };
        let lb = if b.order == l { None } else { Some(b.lift(l)?) };
        Ok((l, la, lb))
    }

    fn with_common<T>(&self, other: &Scalar, f: impl FnOnce(u64, &Scalar, &Scalar) -> T) -> Result<T> {
        let (l, la, lb) = Self::common(self, other)?;
        Ok(f(l, la.as_ref().unwrap_or(self), lb.as_ref().unwrap_or(other)))
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.with_common(other, |l, a, b| Scalar {
            order: l,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.with_common(other, |l, a, b| Scalar {
            order: l,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        })
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.with_common(other, |l, a, b| mul_same(l, &a.coeffs, &b.coeffs))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        let inv = other.inv()?;
        self.checked_mul(&inv)
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.to_rational() {
            let mut coeffs = vec![Rational::zero(); self.coeffs.len()];
            coeffs[0] = r.recip();
            return Ok(Scalar { order: self.order, coeffs });
        }
        Ok(Scalar { order: self.order, coeffs: modular::inverse(self.order, &self.coeffs) })
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, exp: i64) -> Result<Scalar> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Scalar::one().lift(self.order)?;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Multiplies by a rational constant.
    pub fn scale(&self, r: &Rational) -> Scalar {
        Scalar { order: self.order, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }
}

/// Brings all values into one field `Q(zeta_L)`, `L` the lcm of their orders.
pub fn coerce(values: &[Scalar]) -> Result<Vec<Scalar>> {
    let mut l = 1;
    for v in values {
        l = lcm(l, v.order);
        check_order(l)?;
    }
    values.iter().map(|v| v.lift(l)).collect()
}

/// Lcm of the field orders of `values`, checked against the ceiling.
pub fn common_order<'a>(values: impl IntoIterator<Item = &'a Scalar>) -> Result<u64> {
    let mut l = 1;
    for v in values {
        l = lcm(l, v.order);
        check_order(l)?;
    }
    Ok(l)
}

fn reduce(order: u64, poly: &mut Vec<Rational>) {
    let modulus = cyclotomic_poly(order);
    let deg = modulus.len() - 1;
    if poly.len() > deg {
        for d in (deg..poly.len()).rev() {
            if poly[d].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut poly[d], Rational::zero());
            let base = d - deg;
            for (t, &m) in modulus[..deg].iter().enumerate() {
                match m {
                    0 => {}
                    1 => poly[base + t] -= &c,
                    -1 => poly[base + t] += &c,
                    m => poly[base + t] -= &c * Rational::from_integer(BigInt::from(m)),
                }
            }
        }
    }
    poly.resize(deg, Rational::zero());
}

fn mul_same(order: u64, a: &[Rational], b: &[Rational]) -> Scalar {
    if a[1..].iter().all(Zero::is_zero) {
        return Scalar { order, coeffs: b.iter().map(|y| y * &a[0]).collect() };
    }
    if b[1..].iter().all(Zero::is_zero) {
        return Scalar { order, coeffs: a.iter().map(|x| x * &b[0]).collect() };
    }
    let (an, ad) = modular::to_integer_poly(a);
    let (bn, bd) = modular::to_integer_poly(b);
    let den = ad * bd;
    let coeffs = modular::mul_reduce(order, &an, &bn)
        .into_iter()
        .map(|c| Rational::new(c, den.clone()))
        .collect();
    Scalar { order, coeffs }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        match Self::common(self, other) {
            Ok((_, la, lb)) => {
                la.as_ref().unwrap_or(self).coeffs == lb.as_ref().unwrap_or(other).coeffs
            }
            Err(_) => false,
        }
    }
}

impl Eq for Scalar {}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
// Panics on division by zero; use `checked_div` for a `Result`.
binop!(Div, div, checked_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

/// Prints in the scalar grammar, e.g. `3/2*z8 - z8^2 + 1`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let sym = match k {
                0 => None,
                1 => Some(format!("z{}", self.order)),
                _ => Some(format!("z{}^{}", self.order, k)),
            };
            match sym {
                None => write!(f, "{mag}")?,
                Some(s) if mag.is_one() => write!(f, "{s}")?,
                Some(s) => write!(f, "{mag}*{s}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64, k: i64) -> Scalar {
        Scalar::root_of_unity(n, k).unwrap()
    }

    #[test]
    fn inverse_of_zeta8() {
        assert_eq!(z(8, 1).inv().unwrap(), z(8, 7));
    }

    #[test]
    fn zeta6_products() {
        assert!((z(6, 1) * z(6, 5)).is_one());
        assert_eq!(z(6, 3), Scalar::from_int(-1));
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert_eq!(Scalar::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn coerce_to_lcm() {
        let out = coerce(&[z(4, 1), z(6, 1)]).unwrap();
        assert!(out.iter().all(|s| s.order() == 12));
        assert_eq!(out[0], z(4, 1));
        let out = coerce(&[Scalar::from_int(2)]).unwrap();
        assert_eq!(out[0].order(), 1);
        let out = coerce(&[z(2, 1), z(3, 1)]).unwrap();
        assert_eq!(out[0].order(), 6);
        assert_eq!(out[0].coeffs(), z(6, 3).coeffs());
        assert_eq!(out[1].coeffs(), z(6, 2).coeffs());
    }

    #[test]
    fn roots_of_unity_vanish_on_cyclotomic() {
        for n in 1..=24u64 {
            let zeta = z(n, 1);
            assert!(zeta.pow(n as i64).unwrap().is_one(), "zeta_{n}^{n}");
            let mut acc = Scalar::zero();
            for (i, &c) in cyclotomic_poly(n).iter().enumerate() {
                acc = acc + Scalar::from_int(c) * zeta.pow(i as i64).unwrap();
            }
            assert!(acc.is_zero(), "Phi_{n}(zeta_{n})");
        }
    }

    #[test]
    fn field_order_cap() {
        assert!(matches!(
            Scalar::root_of_unity(DEFAULT_MAX_FIELD_ORDER + 1, 1),
            Err(Error::FieldOrderTooLarge { .. })
        ));
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!(z(8, 1).scale(&rat(1, 2)).to_string(), "1/2*z8");
        assert_eq!((z(8, 2) - Scalar::one()).to_string(), "-1 + z8^2");
    }
}
