use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Serialize, Serializer};

use super::field::{Field, FieldElement};
use crate::error::{invalid, Error, Result};

/// A t-adic valuation; the zero element has valuation `+∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Valuation::Infinite
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// Serialized as an integer, or the string `"inf"`.
impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_i64(*v),
            Valuation::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Dense polynomial in `t` over `F_q`; `coeffs[k]` multiplies `t^k` and the
/// last coefficient is nonzero.
#[derive(Clone)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && same_field(&self.field, &other.field)
    }
}

impl Eq for Poly {}

fn same_field(a: &Field, b: &Field) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Poly {
    pub fn zero(field: &Field) -> Self {
        Self {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(field, field.one())
    }

    pub fn constant(field: &Field, c: FieldElement) -> Self {
        Self::monomial(field, c, 0)
    }

    /// `c·t^k`.
    pub fn monomial(field: &Field, c: FieldElement, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero(field);
        }
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = c;
        Self {
            field: field.clone(),
            coeffs,
        }
    }

    /// The variable `t`.
    pub fn t(field: &Field) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    pub fn from_coeffs(field: &Field, coeffs: Vec<FieldElement>) -> Self {
        let mut p = Self {
            field: field.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    /// From prime-subfield integer coefficients, low-to-high.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Self {
        Self::from_coeffs(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == self.field.one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<FieldElement> {
        self.coeffs.last().copied()
    }

    pub fn valuation(&self) -> Valuation {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(k) => Valuation::Finite(k as i64),
            None => Valuation::Infinite,
        }
    }

    /// Exponents with nonzero coefficients, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, _)| k)
            .collect()
    }

    fn assert_same_field(&self, other: &Poly) {
        assert!(
            same_field(&self.field, &other.field),
            "polynomials over different fields"
        );
    }

    pub fn scale(&self, c: FieldElement) -> Poly {
        let k = &self.field;
        Poly::from_coeffs(k, self.coeffs.iter().map(|&a| k.mul(a, c)).collect())
    }

    /// `self += a·b`, without allocating a product.
    pub fn add_mul_assign(&mut self, a: &Poly, b: &Poly) {
        self.assert_same_field(a);
        self.assert_same_field(b);
        if a.is_zero() || b.is_zero() {
            return;
        }
        let k = self.field.clone();
        let need = a.coeffs.len() + b.coeffs.len() - 1;
        if self.coeffs.len() < need {
            self.coeffs.resize(need, k.zero());
        }
        // iterate the sparser factor on the outside
        let (outer, inner) = if a.nonzero_count() <= b.nonzero_count() {
            (a, b)
        } else {
            (b, a)
        };
        for (i, &x) in outer.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let dst = &mut self.coeffs[i..];
            for (j, &y) in inner.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    dst[j] = k.add(dst[j], k.mul(x, y));
                }
            }
        }
        self.trim();
    }

    fn nonzero_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn add_assign(&mut self, other: &Poly) {
        self.assert_same_field(other);
        let k = self.field.clone();
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), k.zero());
        }
        for (d, &s) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *d = k.add(*d, s);
        }
        self.trim();
    }

    /// Non-negative powers only; negative exponents need a rational function.
    pub fn pow(&self, n: i64) -> Result<Poly> {
        if n < 0 {
            return Err(invalid(
                "negative exponent on a polynomial; use RationalFn",
            ));
        }
        let mut acc = Poly::one(&self.field);
        let mut base = self.clone();
        let mut n = n as u64;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Horner evaluation at `x ∈ F_q`.
    pub fn eval(&self, x: FieldElement) -> FieldElement {
        let k = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(k.zero(), |acc, &c| k.add(k.mul(acc, x), c))
    }

    /// Euclidean division.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.assert_same_field(divisor);
        let k = &self.field;
        let lead = divisor.leading_coeff().ok_or(Error::DivisionByZero)?;
        let lead_inv = k.inv(lead)?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(k), self.clone()));
        }
        let mut quot = vec![k.zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = k.mul(rem[i + dd], lead_inv);
            quot[i] = c;
            if c.is_zero() {
                continue;
            }
            for (j, &y) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = k.sub(rem[i + j], k.mul(c, y));
            }
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(k, quot), Poly::from_coeffs(k, rem)))
    }

    /// Scales to leading coefficient one; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            Some(c) => self.scale(self.field.inv(c).expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let k = &self.field;
        Poly::from_coeffs(k, self.coeffs.iter().map(|&a| k.neg(a)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero(&self.field);
        out.add_mul_assign(self, rhs);
        out
    }
}

/// High-degree-first `c*t^k` terms; coefficient one is omitted on
/// non-constant terms; the zero polynomial renders as `0`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let k = &self.field;
        let mut first = true;
        for (e, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let mono = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            };
            if e == 0 {
                write!(f, "{}", k.render(c))?;
            } else if c == k.one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", k.render(c))?;
            }
        }
        Ok(())
    }
}

/// All `q^d` monic polynomials of degree `d`, each exactly once.
pub fn monic_enumerate(field: &Field, d: usize) -> impl Iterator<Item = Poly> + '_ {
    let q = field.order();
    let total = (q as u128).pow(d as u32);
    (0..total).map(move |mut code| {
        let mut coeffs = Vec::with_capacity(d + 1);
        for _ in 0..d {
            coeffs.push(field.from_code((code % q as u128) as u32).expect("in range"));
            code /= q as u128;
        }
        coeffs.push(field.one());
        Poly::from_coeffs(field, coeffs)
    })
}

#[cfg(test)]
mod tests {
    use super::super::field::make_field;
    use super::*;

    #[test]
    fn product_over_f3() {
        let k = make_field(3, 1).unwrap();
        let a = Poly::from_ints(&k, &[1, 1]);
        let b = Poly::from_ints(&k, &[2, 1]);
        assert_eq!(&a * &b, Poly::from_ints(&k, &[2, 0, 1]));
        assert_eq!((&a * &b).to_string(), "t^2+2");
    }

    #[test]
    fn rendering_examples() {
        let k = make_field(3, 1).unwrap();
        let p = Poly::from_ints(&k, &[2, 0, 2, 0, 2, 0, 2]);
        assert_eq!(p.to_string(), "2*t^6+2*t^4+2*t^2+2");
        assert_eq!(Poly::zero(&k).to_string(), "0");
        assert_eq!(Poly::t(&k).to_string(), "t");
        let k9 = make_field(3, 2).unwrap();
        let c = k9.from_coeffs(&[0, 1]).unwrap();
        let q = &Poly::monomial(&k9, c, 3) + &Poly::one(&k9);
        assert_eq!(q.to_string(), "[0,1]*t^3+[1,0]");
    }

    #[test]
    fn valuations() {
        let k = make_field(3, 1).unwrap();
        assert_eq!(
            Poly::from_ints(&k, &[0, 0, 1, 0, 1, 0, 1]).valuation(),
            Valuation::Finite(2)
        );
        assert_eq!(
            Poly::from_ints(&k, &[2, 0, 2, 0, 2, 0, 2]).valuation(),
            Valuation::Finite(0)
        );
        assert_eq!(Poly::zero(&k).valuation(), Valuation::Infinite);
        assert!(Valuation::Finite(i64::MAX) < Valuation::Infinite);
    }

    #[test]
    fn monic_count() {
        let k = make_field(3, 1).unwrap();
        let all: Vec<Poly> = monic_enumerate(&k, 2).collect();
        assert_eq!(all.len(), 9);
        for (i, a) in all.iter().enumerate() {
            assert_eq!(a.degree(), Some(2));
            assert_eq!(a.leading_coeff(), Some(k.one()));
            assert!(all[i + 1..].iter().all(|b| b != a));
        }
        assert_eq!(monic_enumerate(&k, 0).count(), 1);
    }

    #[test]
    fn pow_and_division() {
        let k = make_field(2, 2).unwrap();
        let a = Poly::from_coeffs(&k, vec![k.from_code(2).unwrap(), k.one()]);
        assert!(a.pow(-1).is_err());
        let a5 = a.pow(5).unwrap();
        assert_eq!(a5.degree(), Some(5));
        let (qt, r) = a5.div_rem(&a).unwrap();
        assert!(r.is_zero());
        assert_eq!(qt, a.pow(4).unwrap());
        assert!(a.div_rem(&Poly::zero(&k)).is_err());
        assert_eq!(a5.gcd(&a.pow(2).unwrap()), a.pow(2).unwrap().monic());
    }
}
