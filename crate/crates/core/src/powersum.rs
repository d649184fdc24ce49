//! Power sums `S_d(s) = Σ_{a monic, deg a = d} a^{-s}`.
//!
//! Two independent routes: the expansion over `U_d(-s)` with Lucas-reduced
//! multinomial coefficients ([`power_sum_formula`]), and literal summation
//! over all monic polynomials ([`power_sum_bruteforce`]).

use std::collections::BTreeMap;

use serde::Serialize;

use crate::compose::{enumerate_u, modest, Composition, Convention, Limits};
use crate::digitlab::{l_value, DigitVector, PrimePower};
use crate::error::{invalid, Error, Result};
use crate::fqpoly::{monic_enumerate, Field, Poly, RationalFn, Valuation};

/// Default cap on the number of monic polynomials summed by brute force.
pub const DEFAULT_MAX_EVALUATIONS: u128 = 1_000_000;

/// Largest t-degree the expansion will materialise.
pub const MAX_DEGREE: u128 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Formula,
    Bruteforce,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Method::Formula => write!(f, "formula"),
            Method::Bruteforce => write!(f, "bruteforce"),
        }
    }
}

/// A polynomial for `s <= 0`, a rational function for `s > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PowerSumValue {
    Poly(Poly),
    Rational(RationalFn),
}

impl PowerSumValue {
    pub fn is_zero(&self) -> bool {
        match self {
            PowerSumValue::Poly(p) => p.is_zero(),
            PowerSumValue::Rational(r) => r.is_zero(),
        }
    }

    pub fn valuation(&self) -> Valuation {
        match self {
            PowerSumValue::Poly(p) => p.valuation(),
            PowerSumValue::Rational(r) => r.valuation(),
        }
    }

    pub fn to_rational(&self) -> RationalFn {
        match self {
            PowerSumValue::Poly(p) => RationalFn::from_poly(p.clone()),
            PowerSumValue::Rational(r) => r.clone(),
        }
    }
}

impl std::fmt::Display for PowerSumValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PowerSumValue::Poly(p) => write!(f, "{p}"),
            PowerSumValue::Rational(r) => write!(f, "{r}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSumResult {
    pub q: PrimePower,
    pub d: usize,
    pub s: i64,
    pub value: PowerSumValue,
    pub valuation: Valuation,
    pub method: Method,
}

/// Flat JSON form of a [`PowerSumResult`].
#[derive(Debug, Clone, Serialize)]
pub struct PowerSumRecord {
    pub q: u64,
    pub p: u64,
    pub f: u32,
    pub d: usize,
    pub s: i64,
    pub method: Method,
    pub value: String,
    pub valuation: Valuation,
}

impl PowerSumResult {
    fn new(q: PrimePower, d: usize, s: i64, value: PowerSumValue, method: Method) -> Self {
        let valuation = value.valuation();
        Self {
            q,
            d,
            s,
            value,
            valuation,
            method,
        }
    }

    pub fn record(&self) -> PowerSumRecord {
        PowerSumRecord {
            q: self.q.q(),
            p: self.q.p(),
            f: self.q.f(),
            d: self.d,
            s: self.s,
            method: self.method,
            value: self.value.to_string(),
            valuation: self.valuation,
        }
    }

    /// The polynomial value (`s <= 0`).
    pub fn poly(&self) -> Option<&Poly> {
        match &self.value {
            PowerSumValue::Poly(p) => Some(p),
            PowerSumValue::Rational(r) => r.as_poly(),
        }
    }
}

fn negated_index(s: i64) -> Result<u64> {
    if s >= 0 {
        return Err(invalid(format!("index s = {s} must be negative")));
    }
    Ok(s.unsigned_abs())
}

/// `multinomial(k; m_0, …, m_d) mod p`, valid for carry-free `m`: the
/// product over base-p digit columns of the digit-level multinomials.
pub fn lucas_multinomial(k: u64, parts: &[u64], p: u64) -> u64 {
    let mut fact = vec![1u64; p as usize];
    for i in 1..p as usize {
        fact[i] = fact[i - 1] * i as u64 % p;
    }
    let inv = |x: u64| mod_pow(x, p - 2, p);
    let kd = DigitVector::new(k, p).expect("p >= 2");
    let pd: Vec<DigitVector> = parts
        .iter()
        .map(|&m| DigitVector::new(m, p).expect("p >= 2"))
        .collect();
    let mut acc = 1u64;
    for (j, &a) in kd.digits().iter().enumerate() {
        acc = acc * fact[a as usize] % p;
        for d in &pd {
            let c = d.digits().get(j).copied().unwrap_or(0);
            acc = acc * inv(fact[c as usize]) % p;
        }
    }
    acc
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Accumulates `Σ_{m ∈ U_d(k)} coeff(m)·t^{wt(m)}` keyed by exponent.
fn accumulate(field: &Field, k: u64, elements: &[Composition], sign: i64) -> Result<Poly> {
    let p = field.prime_power().p();
    let mut terms: BTreeMap<usize, crate::fqpoly::FieldElement> = BTreeMap::new();
    for m in elements {
        let w = m.weight();
        if w > MAX_DEGREE {
            return Err(Error::ResourceLimit(format!("t-degree {w} too large")));
        }
        let c = field.from_int(sign * lucas_multinomial(k, m.parts(), p) as i64);
        let slot = terms.entry(w as usize).or_insert(field.zero());
        *slot = field.add(*slot, c);
    }
    let top = terms.keys().next_back().copied().unwrap_or(0);
    let mut coeffs = vec![field.zero(); top + 1];
    for (e, c) in terms {
        coeffs[e] = c;
    }
    Ok(Poly::from_coeffs(field, coeffs))
}

/// `S_d(s)` for `s < 0` via `(-1)^d Σ_{m ∈ U_d(-s)} multinomial(-s; m) t^{wt(m)}`.
pub fn power_sum_formula(
    field: &Field,
    d: usize,
    s: i64,
    limits: &Limits,
) -> Result<PowerSumResult> {
    let k = negated_index(s)?;
    let q = field.prime_power();
    let elements = enumerate_u(k, d, &q, limits)?;
    let sign = if d % 2 == 0 { 1 } else { -1 };
    let value = accumulate(field, k, &elements, sign)?;
    Ok(PowerSumResult::new(
        q,
        d,
        s,
        PowerSumValue::Poly(value),
        Method::Formula,
    ))
}

fn check_evaluations(field: &Field, d: usize, max_evaluations: u128) -> Result<()> {
    let n = (field.order() as u128).checked_pow(d as u32);
    match n {
        Some(n) if n <= max_evaluations => Ok(()),
        _ => Err(Error::ResourceLimit(format!(
            "q^d = {}^{d} monic polynomials exceeds the limit {max_evaluations}",
            field.order()
        ))),
    }
}

/// `S_d(s)` by literal summation over the `q^d` monic polynomials of degree
/// `d`.
pub fn power_sum_bruteforce(
    field: &Field,
    d: usize,
    s: i64,
    max_evaluations: u128,
) -> Result<PowerSumResult> {
    check_evaluations(field, d, max_evaluations)?;
    let q = field.prime_power();
    let value = if s <= 0 {
        let mut acc = Poly::zero(field);
        for a in monic_enumerate(field, d) {
            acc.add_assign(&a.pow(-s)?);
        }
        PowerSumValue::Poly(acc)
    } else {
        let mut acc = RationalFn::zero(field);
        for a in monic_enumerate(field, d) {
            acc = acc.add(&RationalFn::pow_poly(&a, -s)?);
        }
        PowerSumValue::Rational(acc)
    };
    Ok(PowerSumResult::new(q, d, s, value, Method::Bruteforce))
}

/// `S_d(-k)` for every `k = 1..=k_max` by brute force, sharing the
/// incremental powers `a, a^2, …` of each monic `a`. Entry `k - 1` holds
/// `S_d(-k)`.
pub fn power_sums_bruteforce_range(
    field: &Field,
    d: usize,
    k_max: u64,
    max_evaluations: u128,
) -> Result<Vec<Poly>> {
    check_evaluations(field, d, max_evaluations)?;
    let mut sums = vec![Poly::zero(field); k_max as usize];
    for a in monic_enumerate(field, d) {
        let mut power = Poly::one(field);
        for sum in sums.iter_mut() {
            power = &power * &a;
            sum.add_assign(&power);
        }
    }
    Ok(sums)
}

/// `ν_d(s) = v_t(S_d(s))` read off the modest element of `U_d(-s)`:
/// `d·M_0 + (d-1)·M_1 + … + M_{d-1}`, or `+∞` when `U_d(-s)` is empty.
pub fn nu(d: usize, s: i64, q: &PrimePower, limits: &Limits) -> Result<Valuation> {
    let k = negated_index(s)?;
    match modest(k, d, q, Convention::U, limits) {
        Ok(m) => Ok(Valuation::Finite(m.weight() as i64)),
        Err(Error::EmptySet(_)) => Ok(Valuation::Infinite),
        Err(e) => Err(e),
    }
}

/// `S_d(s) = 0` iff `d > L_{-s}`.
pub fn vanishes(d: usize, s: i64, q: &PrimePower) -> Result<bool> {
    let k = negated_index(s)?;
    let l = l_value(k, q)?;
    Ok(num_rational::Ratio::from_integer(d as u64) > l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fqpoly::make_field;

    fn f3() -> Field {
        make_field(3, 1).unwrap()
    }

    #[test]
    fn formula_values_q3() {
        let k = f3();
        let lim = Limits::default();
        let s1 = power_sum_formula(&k, 1, -8, &lim).unwrap();
        assert_eq!(s1.value.to_string(), "2*t^6+2*t^4+2*t^2+2");
        let s2 = power_sum_formula(&k, 2, -8, &lim).unwrap();
        assert_eq!(s2.value.to_string(), "t^6+t^4+t^2");
        assert_eq!(s2.valuation, Valuation::Finite(2));
        let s3 = power_sum_formula(&k, 3, -8, &lim).unwrap();
        assert!(s3.value.is_zero());
        assert_eq!(s3.valuation, Valuation::Infinite);
        assert!(power_sum_formula(&k, 1, 0, &lim).is_err());
    }

    #[test]
    fn bruteforce_values_q3() {
        let k = f3();
        let inv = power_sum_bruteforce(&k, 1, 2, DEFAULT_MAX_EVALUATIONS).unwrap();
        assert_eq!(inv.value.to_string(), "(1)/(t^6+t^4+t^2)");
        for s in [-5, 0, 3] {
            let one = power_sum_bruteforce(&k, 0, s, DEFAULT_MAX_EVALUATIONS).unwrap();
            assert_eq!(one.value.to_string(), "1");
        }
        let zero = power_sum_bruteforce(&k, 2, 0, DEFAULT_MAX_EVALUATIONS).unwrap();
        assert!(zero.value.is_zero());
        let s8 = power_sum_bruteforce(&k, 2, -8, DEFAULT_MAX_EVALUATIONS).unwrap();
        assert_eq!(s8.value.to_string(), "t^6+t^4+t^2");
    }

    #[test]
    fn bruteforce_guard() {
        let k = make_field(3, 2).unwrap();
        assert!(matches!(
            power_sum_bruteforce(&k, 3, -1, 100),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn range_matches_single() {
        let k = make_field(2, 2).unwrap();
        let all = power_sums_bruteforce_range(&k, 2, 12, DEFAULT_MAX_EVALUATIONS).unwrap();
        for (i, p) in all.iter().enumerate() {
            let single =
                power_sum_bruteforce(&k, 2, -(i as i64 + 1), DEFAULT_MAX_EVALUATIONS).unwrap();
            assert_eq!(single.poly().unwrap(), p);
        }
    }

    #[test]
    fn nu_examples() {
        let q = PrimePower::from_q(3).unwrap();
        let lim = Limits::default();
        assert_eq!(nu(1, -8, &q, &lim).unwrap(), Valuation::Finite(0));
        assert_eq!(nu(2, -8, &q, &lim).unwrap(), Valuation::Finite(2));
        assert_eq!(nu(3, -8, &q, &lim).unwrap(), Valuation::Infinite);
        for s in -20..0 {
            assert_eq!(nu(0, s, &q, &lim).unwrap(), Valuation::Finite(0));
        }
    }

    #[test]
    fn vanishing_examples() {
        let q3 = PrimePower::from_q(3).unwrap();
        assert!(vanishes(3, -8, &q3).unwrap());
        assert!(!vanishes(2, -8, &q3).unwrap());
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let q = PrimePower::from_q(q).unwrap();
            assert!(!vanishes(1, -(q.q_minus_one() as i64), &q).unwrap());
        }
    }

    #[test]
    fn lucas_small() {
        // 8 = 22_3; (2,6) = (2_3, 20_3): digit columns 2!/2! · 2!/2! = 1
        assert_eq!(lucas_multinomial(8, &[2, 6], 3), 1);
        // 8 = (4,4): 4 = 11_3, columns 2!/(1!1!) twice = 4 ≡ 1
        assert_eq!(lucas_multinomial(8, &[4, 4], 3), 1);
        // C(10, 3) = 120 ≡ 1 mod 7 with 10 = 13_7, 3 = 3_7, 7 = 10_7
        assert_eq!(lucas_multinomial(10, &[3, 7], 7), 120 % 7);
    }
}
