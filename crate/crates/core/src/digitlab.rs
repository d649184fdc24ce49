//! Base-p and base-q digit combinatorics.
//!
//! Everything here works on exact integers. Vectors that would carry
//! fractions with denominator `q - 1` are stored as integer numerators
//! ([`FracVector`]), so every comparison and integrality test is exact.
//!
//! Notation used in the doc comments: `Γ(n)` collects the base-p digits of
//! `n` by position modulo `f`; `E` is the cyclic matrix with
//! `(E x)_i = p·x_{i+1} - x_i`; `ψ_i` is the `i`-th row of `(q-1)·E⁻¹`, i.e.
//! `(ψ_i)_j = p^((j - i) mod f)`.

use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{invalid, Error, Result};

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A prime power `q = p^f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PrimePower {
    p: u64,
    f: u32,
    q: u64,
}

impl PrimePower {
    pub fn new(p: u64, f: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(invalid(format!("{p} is not prime")));
        }
        if f == 0 {
            return Err(invalid("exponent f must be at least 1"));
        }
        let q = p
            .checked_pow(f)
            .ok_or_else(|| Error::Overflow(format!("{p}^{f} does not fit in 64 bits")))?;
        Ok(Self { p, f, q })
    }

    /// Factors `q` as a prime power.
    pub fn from_q(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(invalid(format!("{q} is not a prime power")));
        }
        let mut p = 2u64;
        while q % p != 0 {
            p += 1;
        }
        let mut rest = q;
        let mut f = 0u32;
        while rest % p == 0 {
            rest /= p;
            f += 1;
        }
        if rest != 1 {
            return Err(invalid(format!("{q} is not a prime power")));
        }
        Ok(Self { p, f, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn q_minus_one(&self) -> u64 {
        self.q - 1
    }

    /// `n` is q-even iff it is divisible by `q - 1`.
    pub fn is_q_even(&self, n: u64) -> bool {
        n % (self.q - 1) == 0
    }

    fn fi(&self) -> usize {
        self.f as usize
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}^{}", self.q, self.p, self.f)
    }
}

/// Digit expansion of a non-negative integer, least significant digit first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitVector {
    base: u64,
    digits: Vec<u64>,
}

impl DigitVector {
    pub fn new(value: u64, base: u64) -> Result<Self> {
        if base < 2 {
            return Err(invalid("digit base must be at least 2"));
        }
        let mut digits = Vec::new();
        let mut n = value;
        while n > 0 {
            digits.push(n % base);
            n /= base;
        }
        Ok(Self { base, digits })
    }

    /// Builds from explicit digits, trimming leading zeros.
    pub fn from_digits(base: u64, mut digits: Vec<u64>) -> Result<Self> {
        if base < 2 {
            return Err(invalid("digit base must be at least 2"));
        }
        if let Some(d) = digits.iter().find(|&&d| d >= base) {
            return Err(invalid(format!("digit {d} out of range for base {base}")));
        }
        while digits.last() == Some(&0) {
            digits.pop();
        }
        let out = Self { base, digits };
        out.try_value()?;
        Ok(out)
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    fn try_value(&self) -> Result<u64> {
        let mut acc: u64 = 0;
        for &d in self.digits.iter().rev() {
            acc = acc
                .checked_mul(self.base)
                .and_then(|a| a.checked_add(d))
                .ok_or_else(|| Error::Overflow("digit vector value exceeds 64 bits".into()))?;
        }
        Ok(acc)
    }

    pub fn value(&self) -> u64 {
        // construction guarantees the value fits
        self.try_value().expect("validated at construction")
    }

    pub fn digit_sum(&self) -> u64 {
        self.digits.iter().sum()
    }

    /// Exponents of the multiset of base-powers, smallest first. For a prime
    /// base this is the multiset 𝒫(n).
    pub fn power_exponents(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.digit_sum() as usize);
        for (j, &d) in self.digits.iter().enumerate() {
            out.extend(std::iter::repeat(j as u32).take(d as usize));
        }
        out
    }
}

/// Sum of the base-q digits of `k`.
pub fn digit_sum_base_q(k: u64, q: &PrimePower) -> Result<u64> {
    if k == 0 {
        return Err(invalid("digit sum requires k >= 1"));
    }
    Ok(DigitVector::new(k, q.q())?.digit_sum())
}

/// Carry-free sum of `parts` in base `p`.
///
/// Returns `Ok(None)` when some digit column reaches `p`.
pub fn carry_free_add(parts: &[u64], p: u64) -> Result<Option<u64>> {
    if p < 2 {
        return Err(invalid("base must be at least 2"));
    }
    let mut rest: Vec<u64> = parts.to_vec();
    let mut total: u128 = 0;
    let mut place: u128 = 1;
    while rest.iter().any(|&x| x > 0) {
        let mut column = 0u64;
        for x in rest.iter_mut() {
            column += *x % p;
            *x /= p;
        }
        if column >= p {
            return Ok(None);
        }
        total += column as u128 * place;
        place = place.saturating_mul(p as u128);
    }
    u64::try_from(total)
        .map(Some)
        .map_err(|_| Error::Overflow("carry-free sum exceeds 64 bits".into()))
}

/// `L_k = min_{0 <= i < f} ℓ(k·p^i) / (q - 1)` as an exact rational.
///
/// `k·p^i` is never formed; its base-q digits are read off the base-p digits
/// of `k` shifted by `i` places.
pub fn l_value(k: u64, q: &PrimePower) -> Result<Ratio<u64>> {
    if k == 0 {
        return Err(invalid("L_k requires k >= 1"));
    }
    let base_p = DigitVector::new(k, q.p())?;
    let f = q.fi();
    let mut best = u64::MAX;
    for shift in 0..f {
        let mut sum = 0u64;
        let mut block = 0u64;
        let mut place = 1u64;
        let mut filled = shift;
        // the first `shift` base-p places are zero
        for _ in 0..shift {
            place *= q.p();
        }
        for &d in base_p.digits() {
            block += d * place;
            filled += 1;
            place *= q.p();
            if filled == f {
                sum += block;
                block = 0;
                place = 1;
                filled = 0;
            }
        }
        sum += block;
        best = best.min(sum);
    }
    Ok(Ratio::new(best, q.q_minus_one()))
}

/// `Γ(n) ∈ ℕ^f`, as a multiset-of-digits vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaVector {
    q: PrimePower,
    entries: Vec<u64>,
}

impl GammaVector {
    pub fn new(q: PrimePower, entries: Vec<u64>) -> Result<Self> {
        if entries.len() != q.fi() {
            return Err(invalid(format!(
                "vector of length {} does not match f = {}",
                entries.len(),
                q.f()
            )));
        }
        Ok(Self { q, entries })
    }

    pub fn zero(q: PrimePower) -> Self {
        Self {
            q,
            entries: vec![0; q.fi()],
        }
    }

    /// Standard basis vector `e_i`.
    pub fn unit(q: PrimePower, i: usize) -> Self {
        let mut out = Self::zero(q);
        out.entries[i % q.fi()] = 1;
        out
    }

    pub fn prime_power(&self) -> PrimePower {
        self.q
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    /// Total digit multiplicity (the number of p-powers represented).
    pub fn total(&self) -> u64 {
        self.entries.iter().sum()
    }

    /// `⟨ψ_i, v⟩`.
    pub fn psi_dot(&self, i: usize) -> u128 {
        let f = self.q.fi();
        let p = self.q.p() as u128;
        self.entries
            .iter()
            .enumerate()
            .map(|(j, &x)| x as u128 * p.pow(((j + f - i % f) % f) as u32))
            .sum()
    }

    /// Cyclic shift `R`, so that `Γ(p·n) = R·Γ(n)`.
    pub fn rotate(&self) -> Self {
        let f = self.q.fi();
        let mut entries = vec![0; f];
        for (j, &x) in self.entries.iter().enumerate() {
            entries[(j + 1) % f] = x;
        }
        Self { q: self.q, entries }
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &Self) -> bool {
        self.entries
            .iter()
            .zip(&other.entries)
            .all(|(a, b)| a <= b)
    }

    /// Strict order `self < other`: `<=` componentwise with
    /// at least one strict coordinate.
    pub fn lt(&self, other: &Self) -> bool {
        self.le(other) && self != other
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()?;
        Some(Self { q: self.q, entries })
    }

    pub fn add(&self, other: &Self) -> Self {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Self { q: self.q, entries }
    }

    /// Exact `E⁻¹ v`.
    pub fn preimage(&self) -> FracVector {
        let f = self.q.fi();
        let numerators = (0..f)
            .map(|i| i128::try_from(self.psi_dot(i)).expect("fits in i128"))
            .collect();
        FracVector {
            q: self.q,
            numerators,
        }
    }
}

impl fmt::Display for GammaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// `Γ(n)`: entry `i` sums the base-p digits of `n` at positions `≡ i (mod f)`.
pub fn gamma(n: u64, q: &PrimePower) -> Result<GammaVector> {
    if n == 0 {
        return Err(invalid("Γ(n) requires n >= 1"));
    }
    Ok(gamma_of(n, q))
}

/// `Γ(n)` without the positivity check; `Γ(0) = 0̄`.
pub(crate) fn gamma_of(n: u64, q: &PrimePower) -> GammaVector {
    let f = q.fi();
    let mut entries = vec![0u64; f];
    let mut rest = n;
    let mut j = 0usize;
    while rest > 0 {
        entries[j % f] += rest % q.p();
        rest /= q.p();
        j += 1;
    }
    GammaVector { q: *q, entries }
}

/// A vector in `(q-1)⁻¹ ℤ^f`, stored by numerators over the fixed
/// denominator `q - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FracVector {
    q: PrimePower,
    numerators: Vec<i128>,
}

impl FracVector {
    pub fn from_numerators(q: PrimePower, numerators: Vec<i128>) -> Result<Self> {
        if numerators.len() != q.fi() {
            return Err(invalid("numerator vector length must equal f"));
        }
        Ok(Self { q, numerators })
    }

    /// Embeds an integer vector (numerators are scaled by `q - 1`).
    pub fn from_integers(q: PrimePower, values: &[i64]) -> Result<Self> {
        let d = q.q_minus_one() as i128;
        Self::from_numerators(q, values.iter().map(|&x| x as i128 * d).collect())
    }

    pub fn prime_power(&self) -> PrimePower {
        self.q
    }

    pub fn numerators(&self) -> &[i128] {
        &self.numerators
    }

    pub fn denominator(&self) -> u64 {
        self.q.q_minus_one()
    }

    pub fn len(&self) -> usize {
        self.numerators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numerators.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        let d = self.denominator() as i128;
        self.numerators.iter().all(|x| x % d == 0)
    }

    /// Entries as integers when the vector is integral.
    pub fn to_integers(&self) -> Option<Vec<i128>> {
        let d = self.denominator() as i128;
        self.is_integral()
            .then(|| self.numerators.iter().map(|x| x / d).collect())
    }

    pub fn entry(&self, i: usize) -> Ratio<i128> {
        Ratio::new(self.numerators[i], self.denominator() as i128)
    }

    pub fn floor(&self, i: usize) -> i128 {
        self.numerators[i].div_euclid(self.denominator() as i128)
    }

    pub fn ceil(&self, i: usize) -> i128 {
        -(-self.numerators[i]).div_euclid(self.denominator() as i128)
    }

    /// `E v`: entry `i` is `p·v_{i+1} - v_i`.
    pub fn apply_e(&self) -> FracVector {
        let f = self.len();
        let p = self.q.p() as i128;
        let numerators = (0..f)
            .map(|i| p * self.numerators[(i + 1) % f] - self.numerators[i])
            .collect();
        FracVector {
            q: self.q,
            numerators,
        }
    }

    /// `E⁻¹ v`: entry `i` is `⟨ψ_i, v⟩ / (q - 1)`.
    ///
    /// Integer inputs always map back into `(q-1)⁻¹ ℤ^f`; a general input
    /// whose preimage needs the denominator `(q-1)²` is rejected.
    pub fn apply_e_inv(&self) -> Result<FracVector> {
        let f = self.len();
        let p = self.q.p() as i128;
        let d = self.denominator() as i128;
        let mut numerators = Vec::with_capacity(f);
        for i in 0..f {
            let dot: i128 = (0..f)
                .map(|j| self.numerators[j] * p.pow(((j + f - i) % f) as u32))
                .sum();
            if dot % d != 0 {
                return Err(invalid(
                    "E⁻¹ v leaves (q-1)⁻¹ℤ^f; input is not in E·(q-1)⁻¹ℤ^f",
                ));
            }
            numerators.push(dot / d);
        }
        Ok(FracVector {
            q: self.q,
            numerators,
        })
    }

    /// Smallest entry, as an exact rational.
    pub fn min_entry(&self) -> Ratio<i128> {
        let m = *self.numerators.iter().min().expect("f >= 1");
        Ratio::new(m, self.denominator() as i128)
    }
}

/// Membership in `𝔍 = E ℤ^f ∩ (ℕ^f \ {0̄})`.
pub fn in_frak_j(v: &GammaVector) -> bool {
    !v.is_zero() && v.preimage().is_integral()
}

/// Membership in `I_m`: `v ≠ 0̄` and every entry of `E⁻¹ v` exceeds `m - 1`.
pub fn in_i_m(v: &GammaVector, m: u64) -> bool {
    if v.is_zero() {
        return false;
    }
    let d = v.q.q_minus_one() as i128;
    let bound = (m as i128 - 1) * d;
    v.preimage().numerators().iter().all(|&x| x > bound)
}

/// Membership in `J_m`: `v ≠ 0̄`, `E⁻¹ v` integral with minimum exactly `m`.
/// `J_0` is empty.
pub fn in_j_m(v: &GammaVector, m: u64) -> bool {
    if m == 0 || v.is_zero() {
        return false;
    }
    match v.preimage().to_integers() {
        Some(x) => x.iter().min() == Some(&(m as i128)),
        None => false,
    }
}

fn check_cover_pre(u: &GammaVector, v: &GammaVector) -> Result<(FracVector, FracVector, i128)> {
    if u.q != v.q {
        return Err(invalid("vectors over different prime powers"));
    }
    if v.is_zero() {
        return Err(invalid("v must be nonzero"));
    }
    if !v.lt(u) {
        return Err(invalid(format!("need v < u, got v = {v}, u = {u}")));
    }
    let alpha = v.preimage();
    let beta = u.preimage();
    let k = (0..alpha.len())
        .map(|i| beta.floor(i) - alpha.ceil(i))
        .min()
        .expect("f >= 1");
    if k < 0 {
        return Err(invalid(format!(
            "min(floor(β_i) - ceil(α_i)) = {k} is negative"
        )));
    }
    Ok((alpha, beta, k))
}

/// `k = min_i (⌊β_i⌋ - ⌈α_i⌉)` for `α = E⁻¹v`, `β = E⁻¹u`, after validating
/// the cover precondition `0̄ < v < u`, `k >= 0`.
pub fn cover_slack(u: &GammaVector, v: &GammaVector) -> Result<u64> {
    let (_, _, k) = check_cover_pre(u, v)?;
    Ok(k as u64)
}

/// Extends `v` to some `w ∈ 𝔍` with `v <= w <= u` and `u - w ∈ J_k ∪ I_{k+1}`.
///
/// With `l` the smallest index attaining `k`, sets `γ_l = ⌈α_l⌉` and then
/// `γ_i = min(⌊β_i⌋ - k, p·γ_{i+1} - v_i)` for `i = l-1, …, l-f+1`
/// (indices mod `f`); the result is `w = E γ`.
pub fn extend_to_cover(u: &GammaVector, v: &GammaVector) -> Result<GammaVector> {
    let (alpha, beta, k) = check_cover_pre(u, v)?;
    let f = alpha.len();
    let p = u.q.p() as i128;
    let l = (0..f)
        .find(|&i| beta.floor(i) - alpha.ceil(i) == k)
        .expect("minimum is attained");

    let mut g = vec![0i128; f];
    g[l] = alpha.ceil(l);
    for step in 1..f {
        let i = (l + f - step) % f;
        let next = g[(i + 1) % f];
        g[i] = (beta.floor(i) - k).min(p * next - v.entries[i] as i128);
    }

    let entries = (0..f)
        .map(|i| {
            let w = p * g[(i + 1) % f] - g[i];
            u64::try_from(w).map_err(|_| {
                Error::TheoremViolation(format!("cover construction produced negative entry {w}"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GammaVector { q: u.q, entries })
}
