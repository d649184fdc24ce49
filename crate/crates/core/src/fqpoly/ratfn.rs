use std::fmt;

use super::field::Field;
use super::poly::{Poly, Valuation};
use crate::error::{Error, Result};

/// A reduced quotient `num / den` in `F_q(t)`: `den` is monic and coprime to
/// `num`; zero is `0 / 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFn {
    num: Poly,
    den: Poly,
}

impl RationalFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            let one = Poly::one(num.field());
            return Self { num, den: one };
        }
        let g = num.gcd(&den);
        let (n, _) = num.div_rem(&g).expect("gcd is nonzero");
        let (d, _) = den.div_rem(&g).expect("gcd is nonzero");
        let lead = d.leading_coeff().expect("denominator is nonzero");
        let inv = d.field().inv(lead).expect("nonzero");
        Self {
            num: n.scale(inv),
            den: d.scale(inv),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        let one = Poly::one(p.field());
        Self { num: p, den: one }
    }

    pub fn zero(field: &Field) -> Self {
        Self::from_poly(Poly::zero(field))
    }

    pub fn one(field: &Field) -> Self {
        Self::from_poly(Poly::one(field))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial, when the denominator is one.
    pub fn as_poly(&self) -> Option<&Poly> {
        self.den.is_one().then_some(&self.num)
    }

    /// `v_t(num) - v_t(den)`.
    pub fn valuation(&self) -> Valuation {
        match (self.num.valuation(), self.den.valuation()) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a - b),
            _ => Valuation::Infinite,
        }
    }

    /// Re-reduces; a no-op on values built through this API.
    pub fn normalized(&self) -> Self {
        Self::normalize(self.num.clone(), self.den.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        if self.den == other.den {
            return Self::normalize(&self.num + &other.num, self.den.clone());
        }
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        Self::normalize(num, &self.den * &other.den)
    }

    pub fn neg(&self) -> Self {
        Self {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::normalize(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn inverse(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    /// `a^n` for any integer `n`; `0^n` with `n < 0` fails.
    pub fn pow_poly(a: &Poly, n: i64) -> Result<Self> {
        let base = a.pow(n.unsigned_abs() as i64)?;
        if n >= 0 {
            Ok(Self::from_poly(base))
        } else {
            Self::new(Poly::one(a.field()), base)
        }
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::field::make_field;
    use super::*;

    #[test]
    fn sum_of_inverse_squares_deg_one_f3() {
        // Σ_{θ ∈ F_3} 1/(t+θ)^2 over a common denominator
        let k = make_field(3, 1).unwrap();
        let mut acc = RationalFn::zero(&k);
        for theta in 0..3 {
            let a = Poly::from_ints(&k, &[theta, 1]);
            acc = acc.add(&RationalFn::pow_poly(&a, -2).unwrap());
        }
        let expected = RationalFn::new(
            Poly::one(&k),
            Poly::from_ints(&k, &[0, 0, 1, 0, 1, 0, 1]),
        )
        .unwrap();
        assert_eq!(acc, expected);
        assert_eq!(acc.to_string(), "(1)/(t^6+t^4+t^2)");
        assert_eq!(acc.valuation(), Valuation::Finite(-2));
    }

    #[test]
    fn cancellation_and_normalization() {
        let k = make_field(5, 1).unwrap();
        let x = RationalFn::new(
            Poly::from_ints(&k, &[1, 2]),
            Poly::from_ints(&k, &[3, 0, 2]),
        )
        .unwrap();
        assert!(x.add(&x.neg()).is_zero());
        assert_eq!(x.normalized(), x);
        assert_eq!(x.normalized().normalized(), x.normalized());
        assert_eq!(x.denominator().leading_coeff(), Some(k.one()));
        assert_eq!(x.mul(&x.inverse().unwrap()), RationalFn::one(&k));
        assert!(RationalFn::zero(&k).inverse().is_err());
        assert!(RationalFn::new(Poly::one(&k), Poly::zero(&k)).is_err());
    }

    #[test]
    fn common_factor_is_removed() {
        let k = make_field(3, 1).unwrap();
        let f = Poly::from_ints(&k, &[1, 1]);
        let g = Poly::from_ints(&k, &[2, 1]);
        let h = Poly::from_ints(&k, &[0, 1]);
        let x = RationalFn::new(&f * &h, &g * &h).unwrap();
        assert_eq!(x.numerator(), &f);
        assert_eq!(x.denominator(), &g);
    }
}
