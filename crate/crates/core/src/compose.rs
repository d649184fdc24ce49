//! Carry-free compositions: the sets `U_d(k)` and `W_d(N)`, valid matrices,
//! τ-monotonic representatives, and the greedy, modest and optimal elements.
//!
//! `U_d(k)` holds tuples `(m_0, …, m_d)` with carry-free sum `k` and
//! `m_1, …, m_d` positive and q-even. `W_d(N)` holds `(X_1, …, X_d)` with
//! `(X_d, …, X_1) ∈ U_{d-1}(N)`. Enumeration goes through valid matrices so
//! the cost depends on digit multiplicities, not on the size of `N`.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::digitlab::{gamma_of, in_frak_j, DigitVector, GammaVector, PrimePower};
use crate::error::{invalid, Error, Result};

/// Which indexing a [`Composition`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `(m_0, …, m_d)`, parts `1..=d` positive and q-even.
    U,
    /// `(X_1, …, X_d)`, parts `1..d` positive and q-even.
    W,
}

/// Guards against combinatorial blowup.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest allowed base-p digit sum of the target.
    pub max_multiplicity: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_multiplicity: 24,
        }
    }
}

impl Limits {
    fn check(&self, n: u64, q: &PrimePower) -> Result<()> {
        let m = DigitVector::new(n, q.p())?.digit_sum();
        if m > self.max_multiplicity {
            return Err(Error::ResourceLimit(format!(
                "base-{} digit multiplicity of {n} is {m}, above the limit {}",
                q.p(),
                self.max_multiplicity
            )));
        }
        Ok(())
    }
}

/// An element of `U_d(k)` or `W_d(N)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Composition {
    q: PrimePower,
    parts: Vec<u64>,
    convention: Convention,
    target: u64,
}

impl Composition {
    /// Validates carry-freeness and the q-even positivity constraints.
    pub fn new(q: PrimePower, parts: Vec<u64>, convention: Convention) -> Result<Self> {
        if parts.is_empty() {
            return Err(invalid("a composition needs at least one part"));
        }
        let target = crate::digitlab::carry_free_add(&parts, q.p())?
            .ok_or_else(|| invalid(format!("parts {parts:?} carry in base {}", q.p())))?;
        let constrained: Box<dyn Iterator<Item = &u64>> = match convention {
            Convention::U => Box::new(parts.iter().skip(1)),
            Convention::W => Box::new(parts.iter().take(parts.len() - 1)),
        };
        for &x in constrained {
            if x == 0 || !q.is_q_even(x) {
                return Err(invalid(format!(
                    "part {x} must be positive and divisible by {}",
                    q.q_minus_one()
                )));
            }
        }
        Ok(Self {
            q,
            parts,
            convention,
            target,
        })
    }

    fn raw(q: PrimePower, parts: Vec<u64>, convention: Convention, target: u64) -> Self {
        Self {
            q,
            parts,
            convention,
            target,
        }
    }

    pub fn prime_power(&self) -> PrimePower {
        self.q
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn target(&self) -> u64 {
        self.target
    }

    /// `d`: the number of constrained parts plus one in W-convention, and
    /// the number of constrained parts in U-convention.
    pub fn depth(&self) -> usize {
        match self.convention {
            Convention::U => self.parts.len() - 1,
            Convention::W => self.parts.len(),
        }
    }

    /// U-convention: `d·m_0 + (d-1)·m_1 + … + m_{d-1}`, the t-degree of the
    /// matching monomial. W-convention: `X_1 + 2·X_2 + … + d·X_d`.
    pub fn weight(&self) -> u128 {
        let n = self.parts.len();
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let coef = match self.convention {
                    Convention::U => n - 1 - i,
                    Convention::W => i + 1,
                };
                coef as u128 * x as u128
            })
            .sum()
    }

    /// Reversal into the other convention: `U_{d}(k) ↔ W_{d+1}(k)`.
    pub fn reversed(&self) -> Composition {
        let mut parts = self.parts.clone();
        parts.reverse();
        let convention = match self.convention {
            Convention::U => Convention::W,
            Convention::W => Convention::U,
        };
        Self::raw(self.q, parts, convention, self.target)
    }

    /// `Γ` of every part, as matrix columns.
    pub fn gamma_columns(&self) -> Vec<GammaVector> {
        self.parts.iter().map(|&x| gamma_of(x, &self.q)).collect()
    }

    /// Multiplies every part by `p^n`.
    pub fn scaled_by_p_power(&self, n: u32) -> Result<Composition> {
        let factor = self
            .q
            .p()
            .checked_pow(n)
            .ok_or_else(|| Error::Overflow("p^n exceeds 64 bits".into()))?;
        let scale = |x: u64| {
            x.checked_mul(factor)
                .ok_or_else(|| Error::Overflow("scaled part exceeds 64 bits".into()))
        };
        let parts = self
            .parts
            .iter()
            .map(|&x| scale(x))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::raw(self.q, parts, self.convention, scale(self.target)?))
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: lexicographic on parts.
impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.parts
            .cmp(&other.parts)
            .then(self.convention.cmp(&other.convention))
            .then(self.target.cmp(&other.target))
            .then(self.q.q().cmp(&other.q.q()))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// An `f × d` matrix `B` with columns summing to `Γ(N)` and the first `d-1`
/// columns in `𝔍`; exactly the matrices with `W^B_d(N)` nonempty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ValidMatrix {
    q: PrimePower,
    target: u64,
    columns: Vec<GammaVector>,
}

impl ValidMatrix {
    pub fn new(q: PrimePower, target: u64, columns: Vec<GammaVector>) -> Result<Self> {
        if columns.is_empty() {
            return Err(invalid("a valid matrix needs at least one column"));
        }
        let mut sum = GammaVector::zero(q);
        for c in &columns {
            if c.prime_power() != q {
                return Err(invalid("column over a different prime power"));
            }
            sum = sum.add(c);
        }
        if sum != gamma_of(target, &q) {
            return Err(invalid(format!(
                "columns sum to {sum}, not Γ({target}) = {}",
                gamma_of(target, &q)
            )));
        }
        if let Some((i, c)) = columns[..columns.len() - 1]
            .iter()
            .enumerate()
            .find(|(_, c)| !in_frak_j(c))
        {
            return Err(invalid(format!("column {} = {c} is not in 𝔍", i + 1)));
        }
        Ok(Self { q, target, columns })
    }

    pub fn prime_power(&self) -> PrimePower {
        self.q
    }

    pub fn target(&self) -> u64 {
        self.target
    }

    pub fn columns(&self) -> &[GammaVector] {
        &self.columns
    }

    pub fn depth(&self) -> usize {
        self.columns.len()
    }

    /// Row-major view: `rows()[i][j]` is entry `i` of column `B_{j+1}`.
    pub fn rows(&self) -> Vec<Vec<u64>> {
        let f = self.q.f() as usize;
        (0..f)
            .map(|i| self.columns.iter().map(|c| c.entries()[i]).collect())
            .collect()
    }
}

impl fmt::Display for ValidMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// `τ_k(n)` for every residue class `k`: exponents of the p-powers in
/// `𝒫(n)` at positions `≡ k (mod f)`, largest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauSequence {
    classes: Vec<Vec<u32>>,
}

impl TauSequence {
    pub fn new(n: u64, q: &PrimePower) -> Self {
        let f = q.f() as usize;
        let mut classes = vec![Vec::new(); f];
        let digits = DigitVector::new(n, q.p()).expect("p >= 2");
        for (j, &a) in digits.digits().iter().enumerate().rev() {
            classes[j % f].extend(std::iter::repeat(j as u32).take(a as usize));
        }
        Self { classes }
    }

    pub fn class(&self, k: usize) -> &[u32] {
        &self.classes[k]
    }

    pub fn classes(&self) -> &[Vec<u32>] {
        &self.classes
    }

    /// `τ(n)`: all exponents, largest first.
    pub fn full(&self) -> Vec<u32> {
        let mut all: Vec<u32> = self.classes.iter().flatten().copied().collect();
        all.sort_unstable_by(|a, b| b.cmp(a));
        all
    }
}

fn check_target(n: u64, d: usize) -> Result<()> {
    if n == 0 {
        return Err(invalid("target must be at least 1"));
    }
    if d == 0 {
        return Err(invalid("W_d(N) needs d >= 1"));
    }
    Ok(())
}

/// All valid matrices of `W_d(N)`, in canonical order.
pub fn valid_matrices(
    n: u64,
    d: usize,
    q: &PrimePower,
    limits: &Limits,
) -> Result<Vec<ValidMatrix>> {
    check_target(n, d)?;
    limits.check(n, q)?;
    let mut out = Vec::new();
    let mut cols = Vec::with_capacity(d);
    choose_columns(&gamma_of(n, q), d - 1, &mut cols, &mut |cols, last| {
        let mut columns = cols.to_vec();
        columns.push(last.clone());
        out.push(ValidMatrix {
            q: *q,
            target: n,
            columns,
        });
    });
    out.sort();
    Ok(out)
}

/// Picks `remaining_j` columns in `𝔍` below `rest`, then hands the leftover
/// to `emit` as the unconstrained last column.
fn choose_columns(
    rest: &GammaVector,
    remaining_j: usize,
    cols: &mut Vec<GammaVector>,
    emit: &mut dyn FnMut(&[GammaVector], &GammaVector),
) {
    if remaining_j == 0 {
        emit(cols, rest);
        return;
    }
    for w in sub_vectors(rest) {
        if !in_frak_j(&w) {
            continue;
        }
        let left = rest.checked_sub(&w).expect("w <= rest");
        cols.push(w);
        choose_columns(&left, remaining_j - 1, cols, emit);
        cols.pop();
    }
}

/// Every `w` with `0̄ <= w <= bound`.
fn sub_vectors(bound: &GammaVector) -> Vec<GammaVector> {
    let q = bound.prime_power();
    let mut out = vec![Vec::new()];
    for &b in bound.entries() {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u64>| {
                (0..=b).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|e| GammaVector::new(q, e).expect("length f"))
        .collect()
}

/// Calls `emit` with the parts of every composition in `W^B_d(N)`.
fn expand_matrix(b: &ValidMatrix, emit: &mut dyn FnMut(&[u64])) {
    let q = b.q;
    let f = q.f() as usize;
    let d = b.depth();
    let digits = DigitVector::new(b.target, q.p()).expect("p >= 2");
    let positions: Vec<(usize, u64, u64)> = digits
        .digits()
        .iter()
        .enumerate()
        .filter(|(_, &a)| a > 0)
        .map(|(j, &a)| (j, a, q.p().pow(j as u32)))
        .collect();
    let mut caps: Vec<Vec<u64>> = (0..f)
        .map(|k| b.columns.iter().map(|c| c.entries()[k]).collect())
        .collect();
    let mut parts = vec![0u64; d];
    place_positions(&positions, 0, f, &mut caps, &mut parts, emit);
}

fn place_positions(
    positions: &[(usize, u64, u64)],
    idx: usize,
    f: usize,
    caps: &mut [Vec<u64>],
    parts: &mut [u64],
    emit: &mut dyn FnMut(&[u64]),
) {
    let Some(&(j, count, power)) = positions.get(idx) else {
        if caps.iter().flatten().all(|&c| c == 0) {
            emit(parts);
        }
        return;
    };
    split_count(
        count,
        0,
        power,
        j % f,
        caps,
        parts,
        &mut |caps, parts| place_positions(positions, idx + 1, f, caps, parts, emit),
    );
}

/// Distributes `count` copies of `power` over parts `i..`, respecting the
/// per-part capacities of residue class `class`.
fn split_count(
    count: u64,
    i: usize,
    power: u64,
    class: usize,
    caps: &mut [Vec<u64>],
    parts: &mut [u64],
    next: &mut dyn FnMut(&mut [Vec<u64>], &mut [u64]),
) {
    if count == 0 {
        next(caps, parts);
        return;
    }
    if i == parts.len() {
        return;
    }
    let most = count.min(caps[class][i]);
    for c in 0..=most {
        caps[class][i] -= c;
        parts[i] += c * power;
        split_count(count - c, i + 1, power, class, caps, parts, next);
        parts[i] -= c * power;
        caps[class][i] += c;
    }
}

/// `W^B_d(N)` in canonical order.
pub fn matrix_class(b: &ValidMatrix) -> Vec<Composition> {
    let mut out = Vec::new();
    expand_matrix(b, &mut |parts| {
        out.push(Composition::raw(b.q, parts.to_vec(), Convention::W, b.target))
    });
    out.sort();
    out
}

/// `W_d(N)` in canonical order.
pub fn enumerate_w(n: u64, d: usize, q: &PrimePower, limits: &Limits) -> Result<Vec<Composition>> {
    let mut out = Vec::new();
    for b in valid_matrices(n, d, q, limits)? {
        expand_matrix(&b, &mut |parts| {
            out.push(Composition::raw(*q, parts.to_vec(), Convention::W, n))
        });
    }
    out.sort();
    Ok(out)
}

/// `U_d(k)` in canonical order, via the reversal bijection with `W_{d+1}(k)`.
pub fn enumerate_u(k: u64, d: usize, q: &PrimePower, limits: &Limits) -> Result<Vec<Composition>> {
    let mut out: Vec<Composition> = enumerate_w(k, d + 1, q, limits)?
        .iter()
        .map(Composition::reversed)
        .collect();
    out.sort();
    Ok(out)
}

/// Fills each part of `W^B_d(N)` with consecutive runs of `τ_k(N)`. With
/// `largest_first` the earliest parts get the largest p-powers (the
/// τ-monotonic composition); otherwise the latest parts do.
fn tau_fill(b: &ValidMatrix, largest_first: bool) -> Composition {
    let q = b.q;
    let tau = TauSequence::new(b.target, &q);
    let d = b.depth();
    let mut parts = vec![0u64; d];
    for (k, seq) in tau.classes().iter().enumerate() {
        let mut it = seq.iter();
        let order: Box<dyn Iterator<Item = usize>> = if largest_first {
            Box::new(0..d)
        } else {
            Box::new((0..d).rev())
        };
        for i in order {
            for _ in 0..b.columns[i].entries()[k] {
                let e = it.next().expect("column sums match Γ(N)");
                parts[i] += q.p().pow(*e);
            }
        }
    }
    Composition::raw(q, parts, Convention::W, b.target)
}

/// The τ-monotonic composition of `W^B_d(N)`: the lexicographically largest
/// and unique minimum-weight element of that class.
pub fn tau_monotonic_rep(b: &ValidMatrix) -> Composition {
    tau_fill(b, true)
}

/// The element of `W^B_d(N)` whose reversal is lexicographically largest.
pub fn reverse_tau_rep(b: &ValidMatrix) -> Composition {
    tau_fill(b, false)
}

fn empty_set(n: u64, d: usize, conv: Convention) -> Error {
    let name = match conv {
        Convention::U => "U",
        Convention::W => "W",
    };
    Error::EmptySet(format!("{name}_{d}({n}) is empty"))
}

/// Lexicographically largest element of `W_d(N)`, taken over the
/// τ-monotonic representatives of the valid matrices.
fn modest_w(n: u64, d: usize, q: &PrimePower, limits: &Limits) -> Result<Composition> {
    valid_matrices(n, d, q, limits)?
        .iter()
        .map(tau_monotonic_rep)
        .max()
        .ok_or_else(|| empty_set(n, d, Convention::W))
}

/// The modest element.
///
/// In W-convention this is the lexicographically largest element of
/// `W_d(N)`. In U-convention it is the element of `U_d(k)` whose reversal is
/// lexicographically largest.
pub fn modest(
    n: u64,
    d: usize,
    q: &PrimePower,
    convention: Convention,
    limits: &Limits,
) -> Result<Composition> {
    match convention {
        Convention::W => modest_w(n, d, q, limits),
        Convention::U => {
            check_target(n, d + 1)?;
            modest_w(n, d + 1, q, limits)
                .map(|c| c.reversed())
                .map_err(|e| match e {
                    Error::EmptySet(_) => empty_set(n, d, Convention::U),
                    other => other,
                })
        }
    }
}

/// Lexicographically largest element of `U_d(k)`.
pub fn greedy(k: u64, d: usize, q: &PrimePower, limits: &Limits) -> Result<Composition> {
    valid_matrices(k, d + 1, q, limits)?
        .iter()
        .map(|b| reverse_tau_rep(b).reversed())
        .max()
        .ok_or_else(|| empty_set(k, d, Convention::U))
}

/// Modest element found by scanning the full enumeration.
pub fn modest_by_enumeration(
    n: u64,
    d: usize,
    q: &PrimePower,
    convention: Convention,
    limits: &Limits,
) -> Result<Composition> {
    match convention {
        Convention::W => enumerate_w(n, d, q, limits)?
            .into_iter()
            .max()
            .ok_or_else(|| empty_set(n, d, convention)),
        Convention::U => enumerate_u(n, d, q, limits)?
            .into_iter()
            .max_by(|a, b| a.parts().iter().rev().cmp(b.parts().iter().rev()))
            .ok_or_else(|| empty_set(n, d, convention)),
    }
}

/// Greedy element found by scanning the full enumeration.
pub fn greedy_by_enumeration(
    k: u64,
    d: usize,
    q: &PrimePower,
    limits: &Limits,
) -> Result<Composition> {
    enumerate_u(k, d, q, limits)?
        .into_iter()
        .max()
        .ok_or_else(|| empty_set(k, d, Convention::U))
}

/// All minimum-weight elements of `W_d(N)`, in canonical order.
pub fn optimal_set(n: u64, d: usize, q: &PrimePower, limits: &Limits) -> Result<Vec<Composition>> {
    let all = enumerate_w(n, d, q, limits)?;
    let best = all
        .iter()
        .map(Composition::weight)
        .min()
        .ok_or_else(|| empty_set(n, d, Convention::W))?;
    Ok(all.into_iter().filter(|c| c.weight() == best).collect())
}
