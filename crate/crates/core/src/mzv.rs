//! Multizeta values `ζ(s_1, …, s_r) = Σ_{d_1 > … > d_r >= 0} Π S_{d_i}(s_i)`.
//!
//! For all-negative indices every sum is finite (`S_d(s) = 0` once
//! `d > L_{-s}`) and the value is an exact polynomial. Mixed or positive
//! indices are summed with rational-function arithmetic up to a degree cap,
//! and flagged exact only when a negative leading index bounds `d_1`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::compose::Limits;
use crate::digitlab::{l_value, PrimePower};
use crate::error::{invalid, Error, Result};
use crate::fqpoly::{Field, Poly, RationalFn, Valuation};
use crate::powersum::{nu, power_sum_bruteforce, power_sum_formula};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Nonzero,
    TrivialZero,
    NontrivialZero,
    NotApplicable,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Classification::Nonzero => "nonzero",
            Classification::TrivialZero => "trivial_zero",
            Classification::NontrivialZero => "nontrivial_zero",
            Classification::NotApplicable => "not_applicable",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SignPattern {
    AllNegative,
    AllPositive,
    Mixed,
}

/// A tuple of nonzero integers `(s_1, …, s_r)`, `r >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZetaIndex {
    q: PrimePower,
    s: Vec<i64>,
}

impl ZetaIndex {
    pub fn new(q: PrimePower, s: Vec<i64>) -> Result<Self> {
        if s.is_empty() {
            return Err(invalid("a zeta index needs depth at least 1"));
        }
        if s.contains(&0) {
            return Err(invalid("zeta indices must be nonzero"));
        }
        Ok(Self { q, s })
    }

    pub fn prime_power(&self) -> PrimePower {
        self.q
    }

    pub fn entries(&self) -> &[i64] {
        &self.s
    }

    pub fn depth(&self) -> usize {
        self.s.len()
    }

    pub fn weight(&self) -> i64 {
        self.s.iter().sum()
    }

    pub fn sign_pattern(&self) -> SignPattern {
        if self.s.iter().all(|&x| x < 0) {
            SignPattern::AllNegative
        } else if self.s.iter().all(|&x| x > 0) {
            SignPattern::AllPositive
        } else {
            SignPattern::Mixed
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZetaValue {
    Poly(Poly),
    Rational(RationalFn),
}

impl ZetaValue {
    pub fn is_zero(&self) -> bool {
        match self {
            ZetaValue::Poly(p) => p.is_zero(),
            ZetaValue::Rational(r) => r.is_zero(),
        }
    }

    pub fn valuation(&self) -> Valuation {
        match self {
            ZetaValue::Poly(p) => p.valuation(),
            ZetaValue::Rational(r) => r.valuation(),
        }
    }
}

impl fmt::Display for ZetaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZetaValue::Poly(p) => write!(f, "{p}"),
            ZetaValue::Rational(r) => write!(f, "{r}"),
        }
    }
}

/// `exact = false` marks a partial sum of an infinite series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaResult {
    pub index: ZetaIndex,
    pub value: ZetaValue,
    pub valuation: Valuation,
    pub classification: Classification,
    pub exact: bool,
}

/// Flat record for JSON and CSV output.
#[derive(Debug, Clone, Serialize)]
pub struct ZetaRecord {
    pub q: u64,
    pub p: u64,
    pub f: u32,
    pub s: Vec<i64>,
    pub depth: usize,
    pub value: String,
    pub valuation: Valuation,
    pub classification: Classification,
    pub exact: bool,
}

impl ZetaResult {
    pub fn record(&self) -> ZetaRecord {
        let q = self.index.q;
        ZetaRecord {
            q: q.q(),
            p: q.p(),
            f: q.f(),
            s: self.index.s.clone(),
            depth: self.index.depth(),
            value: self.value.to_string(),
            valuation: self.valuation,
            classification: self.classification,
            exact: self.exact,
        }
    }
}

fn floor_l(k: u64, q: &PrimePower) -> Result<usize> {
    Ok(l_value(k, q)?.to_integer() as usize)
}

fn all_negative(s: &[i64]) -> Result<()> {
    if s.is_empty() {
        return Err(invalid("a zeta index needs depth at least 1"));
    }
    if let Some(x) = s.iter().find(|&&x| x >= 0) {
        return Err(invalid(format!("index entry {x} is not negative")));
    }
    Ok(())
}

/// Def. of trivial zero: some `i <= r-1` (1-indexed) has `r - i > L_{-s_i}`.
pub fn is_trivial_zero(s: &[i64], q: &PrimePower) -> Result<bool> {
    all_negative(s)?;
    let r = s.len();
    for (i, &x) in s.iter().enumerate().take(r - 1) {
        let gap = (r - (i + 1)) as u64;
        if Ratio::from_integer(gap) > l_value(x.unsigned_abs(), q)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Predicted classification of an all-negative tuple of depth at least 2:
/// `TrivialZero` when the trivial-zero criterion holds, `Nonzero` otherwise.
pub fn classify_zero(s: &[i64], q: &PrimePower) -> Result<Classification> {
    if s.len() < 2 {
        return Err(invalid(
            "the trivial-zero criterion needs depth >= 2; use goss_check for depth 1",
        ));
    }
    Ok(if is_trivial_zero(s, q)? {
        Classification::TrivialZero
    } else {
        Classification::Nonzero
    })
}

/// `S_d(-k)` for `d = 0..=⌊L_k⌋`, for a fixed set of `k`.
#[derive(Debug, Clone)]
pub struct NegativePowerSums {
    field: Field,
    table: BTreeMap<u64, Vec<Poly>>,
}

impl NegativePowerSums {
    pub fn new(field: &Field, ks: impl IntoIterator<Item = u64>, limits: &Limits) -> Result<Self> {
        let q = field.prime_power();
        let mut table = BTreeMap::new();
        for k in ks {
            if k == 0 || table.contains_key(&k) {
                continue;
            }
            let top = floor_l(k, &q)?;
            let row = (0..=top)
                .map(|d| {
                    power_sum_formula(field, d, -(k as i64), limits)
                        .map(|r| r.poly().expect("negative index gives a polynomial").clone())
                })
                .collect::<Result<Vec<_>>>()?;
            table.insert(k, row);
        }
        Ok(Self {
            field: field.clone(),
            table,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Largest `d` with `S_d(-k) ≠ 0`.
    pub fn top_degree(&self, k: u64) -> Option<usize> {
        self.table.get(&k).map(|row| row.len() - 1)
    }

    /// `S_d(-k)`, or `None` when `d > L_k` (the sum vanishes) or `k` is not
    /// tabulated.
    pub fn get(&self, d: usize, k: u64) -> Option<&Poly> {
        self.table.get(&k).and_then(|row| row.get(d))
    }

    fn row(&self, k: u64) -> Result<&[Poly]> {
        self.table
            .get(&k)
            .map(Vec::as_slice)
            .ok_or_else(|| invalid(format!("S_d(-{k}) not tabulated")))
    }

    /// Tail sums `T[D] = Σ_{D > d_1 > … > d_m >= 0} Π S_{d_i}(s_i)` over the
    /// given index tuple, for `D = 0..=max_d` (the empty tuple gives `1`).
    pub fn tails(&self, s: &[i64], max_d: usize) -> Result<Vec<Poly>> {
        let Some((&head, rest)) = s.split_first() else {
            return Ok(vec![Poly::one(&self.field); max_d + 1]);
        };
        let inner = self.tails(rest, max_d)?;
        let row = self.row(head.unsigned_abs())?;
        let mut out = Vec::with_capacity(max_d + 1);
        let mut acc = Poly::zero(&self.field);
        for d in 0..=max_d {
            out.push(acc.clone());
            if let Some(sd) = row.get(d) {
                acc.add_mul_assign(sd, &inner[d]);
            }
        }
        Ok(out)
    }

    /// `Σ_{d} S_d(s_1)·T[d]`, the full multizeta value given the tail sums of
    /// `(s_2, …, s_r)`.
    fn close(&self, head: i64, tails: &[Poly]) -> Result<Poly> {
        let row = self.row(head.unsigned_abs())?;
        let mut acc = Poly::zero(&self.field);
        // descending d_1
        for d in (0..row.len().min(tails.len())).rev() {
            acc.add_mul_assign(&row[d], &tails[d]);
        }
        Ok(acc)
    }

    /// Exact `ζ(s)` for an all-negative tuple, classified.
    pub fn evaluate(&self, s: &[i64]) -> Result<ZetaResult> {
        all_negative(s)?;
        let max_d = s
            .iter()
            .map(|&x| self.top_degree(x.unsigned_abs()).unwrap_or(0))
            .max()
            .unwrap_or(0);
        let tails = self.tails(&s[1..], max_d)?;
        let value = self.close(s[0], &tails)?;
        finish_negative(self.field.prime_power(), s, value)
    }
}

fn finish_negative(q: PrimePower, s: &[i64], value: Poly) -> Result<ZetaResult> {
    let index = ZetaIndex::new(q, s.to_vec())?;
    let zero = value.is_zero();
    let classification = if s.len() == 1 {
        if zero {
            Classification::NotApplicable
        } else {
            Classification::Nonzero
        }
    } else {
        let trivial = is_trivial_zero(s, &q)?;
        match (zero, trivial) {
            (true, true) => Classification::TrivialZero,
            (false, false) => Classification::Nonzero,
            (true, false) => {
                return Err(Error::TheoremViolation(format!(
                    "ζ{s:?} = 0 over F_{} but the index is not a trivial zero",
                    q.q()
                )))
            }
            (false, true) => {
                return Err(Error::TheoremViolation(format!(
                    "ζ{s:?} ≠ 0 over F_{} but the index is a trivial zero",
                    q.q()
                )))
            }
        }
    };
    Ok(ZetaResult {
        index,
        valuation: value.valuation(),
        value: ZetaValue::Poly(value),
        classification,
        exact: true,
    })
}

/// Exact `ζ(s)` for `s` with every entry negative.
///
/// A zero value at depth `>= 2` that is not a trivial zero is reported as
/// [`Error::TheoremViolation`] instead of being classified.
pub fn zeta_negative(field: &Field, s: &[i64], limits: &Limits) -> Result<ZetaResult> {
    all_negative(s)?;
    let table = NegativePowerSums::new(field, s.iter().map(|x| x.unsigned_abs()), limits)?;
    table.evaluate(s)
}

/// `Σ_{i=1}^r ν_{r-i}(s_i)`, the t-valuation of a non-trivial `ζ(s)`.
pub fn zeta_valuation(s: &[i64], q: &PrimePower, limits: &Limits) -> Result<u64> {
    all_negative(s)?;
    if s.len() >= 2 && is_trivial_zero(s, q)? {
        return Err(invalid(format!("{s:?} is a trivial zero")));
    }
    let r = s.len();
    let mut total = 0u64;
    for (i, &x) in s.iter().enumerate() {
        match nu(r - 1 - i, x, q, limits)? {
            Valuation::Finite(v) => total += v as u64,
            Valuation::Infinite => {
                return Err(invalid(format!("S_{}({x}) vanishes", r - 1 - i)));
            }
        }
    }
    Ok(total)
}

/// Depth-1 check: returns whether `ζ(s) = 0`, and fails with a theorem
/// violation unless that matches `(q - 1) | s`.
pub fn goss_check(field: &Field, s: i64, limits: &Limits) -> Result<bool> {
    let result = zeta_negative(field, &[s], limits)?;
    let zero = result.value.is_zero();
    let q = field.prime_power();
    if zero != q.is_q_even(s.unsigned_abs()) {
        return Err(Error::TheoremViolation(format!(
            "ζ({s}) over F_{} is {}zero but s is q-{}",
            q.q(),
            if zero { "" } else { "non" },
            if q.is_q_even(s.unsigned_abs()) { "even" } else { "odd" }
        )));
    }
    Ok(zero)
}

/// Controls for [`zeta_mixed`].
#[derive(Debug, Clone, Copy)]
pub struct MixedOptions {
    /// Cap on `d_1` when no negative leading index bounds it.
    pub d_max: usize,
    /// Cap on monic polynomials summed per positive-index power sum.
    pub max_evaluations: u128,
}

impl Default for MixedOptions {
    fn default() -> Self {
        Self {
            d_max: 3,
            max_evaluations: crate::powersum::DEFAULT_MAX_EVALUATIONS,
        }
    }
}

/// The individual summands `Π S_{d_i}(s_i)` of `ζ(s)`, keyed by
/// `(d_1, …, d_r)` and listed with descending `d_1`, then descending `d_2`,
/// and so on. Terms with a vanishing negative-index factor are skipped.
pub fn mixed_terms(
    field: &Field,
    s: &[i64],
    opts: &MixedOptions,
    limits: &Limits,
) -> Result<Vec<(Vec<usize>, RationalFn)>> {
    let index = ZetaIndex::new(field.prime_power(), s.to_vec())?;
    let q = index.q;
    let caps = s
        .iter()
        .map(|&x| {
            if x < 0 {
                floor_l(x.unsigned_abs(), &q).map(Some)
            } else {
                Ok(None)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let top = caps[0].unwrap_or(opts.d_max);
    let mut cache: HashMap<(usize, i64), RationalFn> = HashMap::new();
    let mut out = Vec::new();
    let mut chain = Vec::with_capacity(s.len());
    collect_chains(top, 0, &caps, &mut chain, &mut |chain| {
        let mut prod = RationalFn::one(field);
        for (&d, &x) in chain.iter().zip(s) {
            let factor = match cache.get(&(d, x)) {
                Some(v) => v.clone(),
                None => {
                    let v = if x < 0 {
                        let r = power_sum_formula(field, d, x, limits)?;
                        RationalFn::from_poly(r.poly().expect("polynomial").clone())
                    } else {
                        power_sum_bruteforce(field, d, x, opts.max_evaluations)?
                            .value
                            .to_rational()
                    };
                    cache.insert((d, x), v.clone());
                    v
                }
            };
            prod = prod.mul(&factor);
        }
        out.push((chain.to_vec(), prod));
        Ok(())
    })?;
    Ok(out)
}

/// Visits strictly decreasing chains `d_1 > d_2 > … >= 0` with
/// `d_i <= caps[i]` where present, largest first.
fn collect_chains(
    upper: usize,
    pos: usize,
    caps: &[Option<usize>],
    chain: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    if pos == caps.len() {
        return visit(chain);
    }
    let remaining = caps.len() - pos - 1;
    let hi = caps[pos].map_or(upper, |c| c.min(upper));
    if hi < remaining {
        return Ok(());
    }
    for d in (remaining..=hi).rev() {
        chain.push(d);
        let next = d.saturating_sub(1);
        if d > 0 || remaining == 0 {
            collect_chains(next, pos + 1, caps, chain, visit)?;
        }
        chain.pop();
    }
    Ok(())
}

/// `ζ(s)` for mixed or positive indices. Exact when `s_1 < 0`; otherwise a
/// partial sum over `d_1 <= d_max` with `exact = false`. All-negative tuples
/// are delegated to [`zeta_negative`].
pub fn zeta_mixed(
    field: &Field,
    s: &[i64],
    opts: &MixedOptions,
    limits: &Limits,
) -> Result<ZetaResult> {
    let index = ZetaIndex::new(field.prime_power(), s.to_vec())?;
    if index.sign_pattern() == SignPattern::AllNegative {
        return zeta_negative(field, s, limits);
    }
    let mut value = RationalFn::zero(field);
    for (_, term) in mixed_terms(field, s, opts, limits)? {
        value = value.add(&term);
    }
    let exact = s[0] < 0;
    Ok(ZetaResult {
        index,
        valuation: value.valuation(),
        value: ZetaValue::Rational(value),
        classification: Classification::NotApplicable,
        exact,
    })
}

/// Evaluates every all-negative tuple of the given depth with entries in
/// `[s_min, s_max]` (both negative), handing results to `sink` in
/// suffix-major order: `(s_2, …, s_r)` lexicographic, then `s_1`.
///
/// Tail sums over each suffix are shared across all `s_1`.
pub fn sweep_negative(
    field: &Field,
    depth: usize,
    s_min: i64,
    s_max: i64,
    limits: &Limits,
    sink: &mut dyn FnMut(ZetaResult) -> Result<()>,
) -> Result<()> {
    if depth == 0 {
        return Err(invalid("depth must be at least 1"));
    }
    if !(s_min <= s_max && s_max < 0) {
        return Err(invalid("need s_min <= s_max < 0"));
    }
    let range: Vec<i64> = (s_min..=s_max).collect();
    let table = NegativePowerSums::new(field, range.iter().map(|x| x.unsigned_abs()), limits)?;
    let max_d = range
        .iter()
        .map(|x| table.top_degree(x.unsigned_abs()).unwrap_or(0))
        .max()
        .unwrap_or(0);

    let mut suffixes: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 1..depth {
        suffixes = suffixes
            .into_iter()
            .flat_map(|prefix| {
                range.iter().map(move |&x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }

    // inner tails for (s_3, …, s_r) are shared by many suffixes
    let mut inner_cache: HashMap<Vec<i64>, Vec<Poly>> = HashMap::new();
    for chunk in suffixes.chunks(64) {
        for suffix in chunk {
            if !suffix.is_empty() && !inner_cache.contains_key(&suffix[1..]) {
                let t = table.tails(&suffix[1..], max_d)?;
                inner_cache.insert(suffix[1..].to_vec(), t);
            }
        }
        let batch: Vec<Result<Vec<ZetaResult>>> = chunk
            .par_iter()
            .map(|suffix| {
                let tails = match suffix.split_first() {
                    None => vec![Poly::one(field); max_d + 1],
                    Some((&head, rest)) => {
                        let inner = &inner_cache[rest];
                        let row = table.row(head.unsigned_abs())?;
                        let mut out = Vec::with_capacity(max_d + 1);
                        let mut acc = Poly::zero(field);
                        for d in 0..=max_d {
                            out.push(acc.clone());
                            if let Some(sd) = row.get(d) {
                                acc.add_mul_assign(sd, &inner[d]);
                            }
                        }
                        out
                    }
                };
                range
                    .iter()
                    .map(|&head| {
                        let mut s = Vec::with_capacity(depth);
                        s.push(head);
                        s.extend_from_slice(suffix);
                        let value = table.close(head, &tails)?;
                        finish_negative(field.prime_power(), &s, value)
                    })
                    .collect()
            })
            .collect();
        for rows in batch {
            for r in rows? {
                sink(r)?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fqpoly::make_field;
    use crate::powersum::power_sum_bruteforce;

    fn f3() -> Field {
        make_field(3, 1).unwrap()
    }

    #[test]
    fn remark_example_is_zero() {
        let k = f3();
        let lim = Limits::default();
        let r = zeta_mixed(&k, &[-8, 2], &MixedOptions::default(), &lim).unwrap();
        assert!(r.value.is_zero());
        assert!(r.exact);
        assert_eq!(r.classification, Classification::NotApplicable);
        let terms = mixed_terms(&k, &[-8, 2], &MixedOptions::default(), &lim).unwrap();
        let keyed: Vec<(Vec<usize>, String)> =
            terms.iter().map(|(d, v)| (d.clone(), v.to_string())).collect();
        assert_eq!(
            keyed,
            vec![
                (vec![2, 1], "1".to_string()),
                (vec![2, 0], "t^6+t^4+t^2".to_string()),
                (vec![1, 0], "2*t^6+2*t^4+2*t^2+2".to_string()),
            ]
        );
    }

    #[test]
    fn depth_one_matches_bruteforce() {
        let k = f3();
        let lim = Limits::default();
        for s in -12..0 {
            let z = zeta_negative(&k, &[s], &lim).unwrap();
            let mut sum = Poly::zero(&k);
            for d in 0..=4 {
                let b = power_sum_bruteforce(&k, d, s, 1_000_000).unwrap();
                sum.add_assign(b.poly().unwrap());
            }
            assert_eq!(z.value, ZetaValue::Poly(sum), "s = {s}");
        }
    }

    #[test]
    fn goss_examples() {
        let lim = Limits::default();
        assert!(goss_check(&f3(), -2, &lim).unwrap());
        assert!(!goss_check(&f3(), -1, &lim).unwrap());
        let z = zeta_negative(&f3(), &[-1], &lim).unwrap();
        assert_eq!(z.valuation, Valuation::Finite(0));
        assert_eq!(z.classification, Classification::Nonzero);
        for (p, f) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)] {
            let k = make_field(p, f).unwrap();
            let qm1 = k.prime_power().q_minus_one() as i64;
            assert!(goss_check(&k, -qm1, &lim).unwrap());
        }
        let z2 = zeta_negative(&f3(), &[-2], &lim).unwrap();
        assert_eq!(z2.classification, Classification::NotApplicable);
    }

    #[test]
    fn classification_examples() {
        let q = PrimePower::from_q(3).unwrap();
        let lim = Limits::default();
        assert_eq!(classify_zero(&[-1, -2], &q).unwrap(), Classification::TrivialZero);
        let z = zeta_negative(&f3(), &[-1, -2], &lim).unwrap();
        assert!(z.value.is_zero());
        assert_eq!(z.classification, Classification::TrivialZero);
        assert_eq!(classify_zero(&[-2, -2], &q).unwrap(), Classification::Nonzero);
        let nz = zeta_negative(&f3(), &[-2, -2], &lim).unwrap();
        assert!(!nz.value.is_zero());
        assert_eq!(
            nz.valuation,
            Valuation::Finite(zeta_valuation(&[-2, -2], &q, &lim).unwrap() as i64)
        );
        assert!(classify_zero(&[-2], &q).is_err());
        assert!(classify_zero(&[-2, 3], &q).is_err());
        assert!(zeta_valuation(&[-1, -2], &q, &lim).is_err());
    }

    #[test]
    fn index_validation() {
        let q = PrimePower::from_q(3).unwrap();
        assert!(ZetaIndex::new(q, vec![]).is_err());
        assert!(ZetaIndex::new(q, vec![-1, 0]).is_err());
        let i = ZetaIndex::new(q, vec![-8, 2]).unwrap();
        assert_eq!(i.depth(), 2);
        assert_eq!(i.weight(), -6);
        assert_eq!(i.sign_pattern(), SignPattern::Mixed);
    }

    #[test]
    fn positive_depth_one_is_truncated() {
        let k = f3();
        let opts = MixedOptions {
            d_max: 2,
            ..MixedOptions::default()
        };
        let r = zeta_mixed(&k, &[1], &opts, &Limits::default()).unwrap();
        assert!(!r.exact);
        let mut expected = RationalFn::zero(&k);
        for d in 0..=2 {
            expected = expected.add(&power_sum_bruteforce(&k, d, 1, 1000).unwrap().value.to_rational());
        }
        assert_eq!(r.value, ZetaValue::Rational(expected));
    }

    #[test]
    fn sweep_matches_pointwise() {
        let k = make_field(2, 2).unwrap();
        let lim = Limits::default();
        let mut rows = Vec::new();
        sweep_negative(&k, 3, -9, -1, &lim, &mut |r| {
            rows.push(r);
            Ok(())
        })
        .unwrap();
        assert_eq!(rows.len(), 729);
        for r in rows.iter().step_by(7) {
            let direct = zeta_negative(&k, r.index.entries(), &lim).unwrap();
            assert_eq!(&direct, r);
        }
    }

    #[test]
    fn chains_are_descending() {
        let mut seen = Vec::new();
        collect_chains(3, 0, &[None, None, None], &mut Vec::new(), &mut |c| {
            seen.push(c.to_vec());
            Ok(())
        })
        .unwrap();
        assert_eq!(
            seen,
            vec![vec![3, 2, 1], vec![3, 2, 0], vec![3, 1, 0], vec![2, 1, 0]]
        );
    }
}
