//! Named invariant suites. Each suite scans a configurable range, compares
//! the structural implementations against the oracles in [`crate::brute`]
//! and reports one [`Outcome`] per statement.

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::brute;
use crate::compose::{
    enumerate_u, enumerate_w, greedy, matrix_class, modest, optimal_set, tau_monotonic_rep,
    valid_matrices, Composition, Convention, Limits,
};
use crate::digitlab::{
    cover_slack, extend_to_cover, gamma, in_frak_j, in_i_m, in_j_m, l_value, DigitVector,
    GammaVector, PrimePower,
};
use crate::error::{Error, Result};
use crate::fqpoly::{make_field, Poly, Valuation};
use crate::mzv::{
    goss_check, mixed_terms, sweep_negative, zeta_mixed, zeta_negative, Classification,
    MixedOptions, ZetaValue,
};
use crate::powersum::{nu, power_sum_formula, power_sums_bruteforce_range, vanishes};

/// Result of one named check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub name: &'static str,
    pub statement: &'static str,
    pub passed: bool,
    /// Number of instances examined.
    pub checked: u64,
    /// First counterexample, or a short summary on success.
    pub detail: String,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<30} {:>9} checked  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.checked,
            self.detail
        )
    }
}

struct Tally {
    name: &'static str,
    statement: &'static str,
    checked: u64,
    failures: u64,
    first: Option<String>,
    note: String,
}

impl Tally {
    fn new(name: &'static str, statement: &'static str) -> Self {
        Self {
            name,
            statement,
            checked: 0,
            failures: 0,
            first: None,
            note: String::new(),
        }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(msg());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failures += 1;
        if self.first.is_none() {
            self.first = Some(msg);
        }
    }

    fn error(&mut self, context: impl fmt::Display, e: Error) {
        self.checked += 1;
        self.fail(format!("{context}: {e}"));
    }

    fn finish(self) -> Outcome {
        let passed = self.failures == 0 && self.checked > 0;
        let detail = match self.first {
            Some(first) => format!("{} failure(s); first: {first}", self.failures),
            None if self.checked == 0 => "nothing checked".to_string(),
            None => self.note,
        };
        Outcome {
            name: self.name,
            statement: self.statement,
            passed,
            checked: self.checked,
            detail,
        }
    }
}

/// Scan ranges for every suite. [`Default`] gives the full-scale ranges.
#[derive(Debug, Clone)]
pub struct Ranges {
    pub limits: Limits,
    pub power_qs: Vec<u64>,
    pub power_d_max: usize,
    pub power_k_max: u64,
    pub bruteforce_budget: u128,
    pub zeta_qs: Vec<u64>,
    pub zeta_depths: Vec<usize>,
    pub zeta_s_min: i64,
    pub goss_k_max: u64,
    pub compose_qs: Vec<u64>,
    pub compose_n_max: u64,
    /// `d` cap for the per-matrix extremality check.
    pub tau_d_max: usize,
    pub scaling_max: u32,
    pub enum_n_max: u64,
    pub enum_d_max: usize,
    pub nonempty_n_max: u64,
    pub nonempty_d_max: usize,
    pub membership_qs: Vec<u64>,
    pub membership_n_max: u64,
    pub membership_m_max: u64,
    pub cover_qs: Vec<u64>,
    pub cover_instances: u64,
    pub cover_entry_max: u64,
    pub cover_seed: u64,
}

impl Default for Ranges {
    fn default() -> Self {
        Self {
            limits: Limits::default(),
            power_qs: vec![2, 3, 4, 5, 8, 9],
            power_d_max: 3,
            power_k_max: 200,
            bruteforce_budget: crate::powersum::DEFAULT_MAX_EVALUATIONS,
            zeta_qs: vec![2, 3, 4, 9],
            zeta_depths: vec![2, 3],
            zeta_s_min: -60,
            goss_k_max: 200,
            compose_qs: vec![2, 3, 4, 8, 9],
            compose_n_max: 300,
            tau_d_max: 3,
            scaling_max: 3,
            enum_n_max: 150,
            enum_d_max: 4,
            nonempty_n_max: 500,
            nonempty_d_max: 5,
            membership_qs: vec![2, 3, 4, 8, 9],
            membership_n_max: 300,
            membership_m_max: 5,
            cover_qs: vec![4, 8, 9],
            cover_instances: 10_000,
            cover_entry_max: 30,
            cover_seed: 20_240_601,
        }
    }
}

impl Ranges {
    /// Small ranges that finish in a few seconds.
    pub fn quick() -> Self {
        Self {
            power_qs: vec![2, 3, 4, 9],
            power_k_max: 40,
            zeta_s_min: -12,
            goss_k_max: 40,
            compose_n_max: 80,
            enum_n_max: 60,
            enum_d_max: 3,
            nonempty_n_max: 120,
            nonempty_d_max: 4,
            membership_n_max: 80,
            membership_m_max: 4,
            cover_instances: 500,
            ..Self::default()
        }
    }
}

/// Which group of suites to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Digits,
    Compose,
    PowerSum,
    Mzv,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "digits" => Ok(Suite::Digits),
            "compose" => Ok(Suite::Compose),
            "powersum" => Ok(Suite::PowerSum),
            "mzv" => Ok(Suite::Mzv),
            "all" => Ok(Suite::All),
            other => Err(Error::InvalidArgument(format!("unknown suite {other:?}"))),
        }
    }
}

pub fn run(suite: Suite, ranges: &Ranges) -> Vec<Outcome> {
    match suite {
        Suite::Digits => digits_suite(ranges),
        Suite::Compose => compose_suite(ranges),
        Suite::PowerSum => powersum_suite(ranges),
        Suite::Mzv => mzv_suite(ranges),
        Suite::All => {
            let mut out = digits_suite(ranges);
            out.extend(compose_suite(ranges));
            out.extend(powersum_suite(ranges));
            out.extend(mzv_suite(ranges));
            out
        }
    }
}

fn prime_powers(qs: &[u64]) -> Vec<PrimePower> {
    qs.iter()
        .map(|&q| PrimePower::from_q(q).expect("suite ranges hold prime powers"))
        .collect()
}

// ---------------------------------------------------------------- digits

pub fn digits_suite(r: &Ranges) -> Vec<Outcome> {
    let (literal, relaxed) = cover_check(r);
    vec![
        l_value_check(r),
        lattice_check(r),
        membership_check(r),
        literal,
        relaxed,
    ]
}

/// `L_k` against repeated multiplication, and integrality iff q-even.
pub fn l_value_check(r: &Ranges) -> Outcome {
    let mut t = Tally::new(
        "l-value",
        "L_k is min over i of the base-q digit sum of k·p^i, over q-1; integral iff k is q-even",
    );
    for q in prime_powers(&r.membership_qs) {
        for k in 1..=r.nonempty_n_max {
            match l_value(k, &q) {
                Ok(l) => {
                    let (num, den) = brute::l_value(k, &q);
                    let same = (*l.numer() as u128) * den == num * (*l.denom() as u128);
                    t.check(same && l.is_integer() == q.is_q_even(k), || {
                        format!("q={} k={k}: {l} vs {num}/{den}", q.q())
                    });
                }
                Err(e) => t.error(format!("q={} k={k}", q.q()), e),
            }
        }
    }
    t.finish()
}

/// `𝔍` via `E⁻¹`-integrality against Γ of q-even integers.
pub fn lattice_check(r: &Ranges) -> Outcome {
    let mut t = Tally::new(
        "q-even-lattice",
        "the Γ-images of positive q-even integers are exactly E·Z^f ∩ (N^f minus 0)",
    );
    for q in prime_powers(&r.membership_qs) {
        for n in 1..=r.membership_n_max {
            let v = gamma(n, &q).expect("n >= 1");
            let a = in_frak_j(&v);
            t.check(
                a == brute::in_frak_j(v.entries(), &q) && a == q.is_q_even(n),
                || format!("q={} n={n} Γ={v}", q.q()),
            );
        }
        // every small vector, including ones with large entries
        let f = q.f() as usize;
        let side = 9u64;
        for code in 0..side.pow(f as u32) {
            let entries: Vec<u64> = (0..f).map(|i| code / side.pow(i as u32) % side).collect();
            let v = GammaVector::new(q, entries.clone()).expect("length f");
            t.check(in_frak_j(&v) == brute::in_frak_j(&entries, &q), || {
                format!("q={} v={v}", q.q())
            });
        }
    }
    t.finish()
}

/// `I_m` / `J_m` via `E⁻¹` against explicit summand search.
pub fn membership_check(r: &Ranges) -> Outcome {
    let mut t = Tally::new(
        "sum-membership",
        "I_m and J_m are the min-coordinate conditions on E^-1 v",
    );
    for q in prime_powers(&r.membership_qs) {
        let mut oracle = brute::SumOracle::new(q);
        for n in 1..=r.membership_n_max {
            let v = gamma(n, &q).expect("n >= 1");
            for m in 0..=r.membership_m_max {
                if m >= 1 {
                    t.check(in_i_m(&v, m) == oracle.in_i_m(v.entries(), m), || {
                        format!("q={} n={n} Γ={v} I_{m}", q.q())
                    });
                }
                t.check(in_j_m(&v, m) == oracle.in_j_m(v.entries(), m), || {
                    format!("q={} n={n} Γ={v} J_{m}", q.q())
                });
            }
        }
    }
    t.finish()
}

/// The three postconditions of the cover construction, literally.
pub fn cover_postconditions(u: &GammaVector, v: &GammaVector, w: &GammaVector) -> Result<()> {
    let k = cover_slack(u, v)?;
    if !in_frak_j(w) {
        return Err(Error::TheoremViolation(format!("w = {w} is not in 𝔍")));
    }
    if !(v.le(w) && w.le(u)) {
        return Err(Error::TheoremViolation(format!(
            "w = {w} is not between v = {v} and u = {u}"
        )));
    }
    let rest = u.checked_sub(w).expect("w <= u");
    if !(in_j_m(&rest, k) || in_i_m(&rest, k + 1)) {
        return Err(Error::TheoremViolation(format!(
            "u - w = {rest} is in neither J_{k} nor I_{}",
            k + 1
        )));
    }
    Ok(())
}

/// Random `(u, v)` satisfying the cover precondition; `None` if rejected.
fn random_cover_instance(
    q: PrimePower,
    entry_max: u64,
    rng: &mut ChaCha8Rng,
) -> Option<(GammaVector, GammaVector)> {
    let f = q.f() as usize;
    let u: Vec<u64> = (0..f).map(|_| rng.gen_range(0..=entry_max)).collect();
    let v: Vec<u64> = u.iter().map(|&x| rng.gen_range(0..=x)).collect();
    let u = GammaVector::new(q, u).ok()?;
    let v = GammaVector::new(q, v).ok()?;
    cover_slack(&u, &v).ok()?;
    Some((u, v))
}

/// Runs the cover construction on random instances. The first outcome
/// checks the postconditions literally; the second also accepts `w = u`
/// when the slack is `0`, reading the zero remainder as an empty sum.
pub fn cover_check(r: &Ranges) -> (Outcome, Outcome) {
    let mut literal = Tally::new(
        "cover-extension",
        "v < u with slack k >= 0 extends to w in 𝔍, v <= w <= u, u - w in J_k ∪ I_(k+1)",
    );
    let mut relaxed = Tally::new(
        "cover-extension-zero-rest",
        "as cover-extension, counting u - w = 0 as an empty sum when k = 0",
    );
    let mut rng = ChaCha8Rng::seed_from_u64(r.cover_seed);
    let mut edge = 0u64;
    for q in prime_powers(&r.cover_qs) {
        let mut accepted = 0u64;
        let mut attempts = 0u64;
        while accepted < r.cover_instances && attempts < 1000 * r.cover_instances {
            attempts += 1;
            let Some((u, v)) = random_cover_instance(q, r.cover_entry_max, &mut rng) else {
                continue;
            };
            accepted += 1;
            let ctx = format!("q={} u={u} v={v}", q.q());
            match extend_to_cover(&u, &v) {
                Ok(w) => {
                    let post = cover_postconditions(&u, &v, &w);
                    let zero_rest = w == u && cover_slack(&u, &v).ok() == Some(0);
                    if zero_rest {
                        edge += 1;
                    }
                    relaxed.check(post.is_ok() || (zero_rest && in_frak_j(&w)), || {
                        format!("{ctx} w={w}")
                    });
                    literal.check(post.is_ok(), || {
                        format!("{ctx} w={w}: {}", post.unwrap_err())
                    });
                }
                Err(e) => {
                    relaxed.error(&ctx, e.clone());
                    literal.error(&ctx, e);
                }
            }
        }
        if accepted < r.cover_instances {
            let msg = format!("q={}: only {accepted} valid instances in {attempts} draws", q.q());
            literal.fail(msg.clone());
            relaxed.fail(msg);
        }
    }
    literal.note = format!("{edge} instance(s) with w = u");
    relaxed.note = format!("{edge} instance(s) with w = u and k = 0");
    (literal.finish(), relaxed.finish())
}

// --------------------------------------------------------------- compose

fn parts_of(c: &Composition) -> Vec<u64> {
    c.parts().to_vec()
}

/// Per-prime-power state shared by the composition checks.
struct ComposeScan<'a> {
    q: PrimePower,
    limits: &'a Limits,
    modest_cache: HashMap<(u64, usize), Option<Vec<u64>>>,
    // lex-max of W_d(N) among elements with last part 0, per (N, d)
    zero_last: HashMap<(u64, usize), Option<Vec<u64>>>,
}

impl ComposeScan<'_> {
    fn modest_w(&mut self, n: u64, d: usize) -> Result<Option<Vec<u64>>> {
        if let Some(x) = self.modest_cache.get(&(n, d)) {
            return Ok(x.clone());
        }
        let x = match modest(n, d, &self.q, Convention::W, self.limits) {
            Ok(c) => Some(parts_of(&c)),
            Err(Error::EmptySet(_)) => None,
            Err(e) => return Err(e),
        };
        self.modest_cache.insert((n, d), x.clone());
        Ok(x)
    }
}

pub fn compose_suite(r: &Ranges) -> Vec<Outcome> {
    let mut out = vec![enumeration_check(r)];
    out.extend(modest_optimal_checks(r));
    out.push(nonempty_check(r));
    out
}

/// Matrix-based enumeration, greedy and modest against digit splitting.
pub fn enumeration_check(r: &Ranges) -> Outcome {
    let mut t = Tally::new(
        "enumeration-oracle",
        "valid-matrix enumeration, greedy and modest agree with digit-splitting enumeration",
    );
    for q in prime_powers(&r.compose_qs) {
        for n in 1..=r.enum_n_max {
            for d in 1..=r.enum_d_max {
                let ctx = || format!("q={} N={n} d={d}", q.q());
                let oracle = brute::enumerate_w(n, d, &q);
                match enumerate_w(n, d, &q, &r.limits) {
                    Ok(w) => {
                        let got: Vec<Vec<u64>> = w.iter().map(parts_of).collect();
                        t.check(got == oracle, || format!("{} W_d(N) differs", ctx()));
                    }
                    Err(e) => t.error(ctx(), e),
                }
                let du = d - 1;
                let g = greedy(n, du, &q, &r.limits).ok().map(|c| parts_of(&c));
                t.check(g == brute::greedy_u(n, du, &q), || {
                    format!("{} greedy of U_{du}", ctx())
                });
                let m = modest(n, du, &q, Convention::U, &r.limits)
                    .ok()
                    .map(|c| parts_of(&c));
                t.check(m == brute::modest_u(n, du, &q), || {
                    format!("{} modest of U_{du}", ctx())
                });
            }
        }
    }
    t.finish()
}

/// Leading base-p block `a_n·p^n` of `n`.
fn leading_block(n: u64, p: u64) -> u64 {
    let digits = DigitVector::new(n, p).expect("p >= 2");
    let top = digits.digits().len() - 1;
    digits.digits()[top] * p.pow(top as u32)
}

/// Optimal = {modest}, τ-monotonic extremality per matrix, and the
/// structural invariants of the modest composition.
pub fn modest_optimal_checks(r: &Ranges) -> Vec<Outcome> {
    let mut thm = Tally::new(
        "modest-is-optimal",
        "the lexicographically largest element of W_d(N) is its unique minimum-weight element",
    );
    let mut tau = Tally::new(
        "tau-extremal",
        "the τ-monotonic element is lex-largest and uniquely min-weight within its matrix class",
    );
    let mut drop_first = Tally::new(
        "modest-drop-first",
        "(X_2, …, X_d) is the modest element of W_(d-1)(N - X_1)",
    );
    let mut drop_last = Tally::new(
        "modest-drop-last",
        "(X_1, …, X_(d-1)) is the modest element of W_(d-1)(N - X_d)",
    );
    let mut drop_last_constrained = Tally::new(
        "modest-drop-last-constrained",
        "(X_1, …, X_(d-1)) is lex-largest in W_(d-1)(N - X_d) among tuples with q-even positive last part",
    );
    let mut scaling = Tally::new(
        "modest-scaling",
        "multiplying every part by p^n maps the modest element of W_d(N) to that of W_d(p^n N)",
    );
    let mut estimate = Tally::new(
        "modest-estimation",
        "interior parts lie in J_1; the last part is 0 for q-even N and in I_1 minus I_2 otherwise",
    );
    let mut bounds = Tally::new(
        "modest-bounds",
        "X_1 >= a_n p^n > N/2, N <= wt < 2N, and W_d(N - X_1) is empty for d >= 2",
    );

    for q in prime_powers(&r.compose_qs) {
        let mut scan = ComposeScan {
            q,
            limits: &r.limits,
            modest_cache: HashMap::new(),
            zero_last: HashMap::new(),
        };
        for n in 1..=r.compose_n_max {
            let mut d = 1;
            loop {
                let ctx = format!("q={} N={n} d={d}", q.q());
                let all = match enumerate_w(n, d, &q, &r.limits) {
                    Ok(all) => all,
                    Err(e) => {
                        thm.error(&ctx, e);
                        break;
                    }
                };
                if all.is_empty() {
                    break;
                }
                let lexmax = parts_of(all.last().expect("nonempty"));
                let zl = all.iter().rev().find(|c| c.parts()[d - 1] == 0).map(parts_of);
                scan.zero_last.insert((n, d), zl);
                let modest_parts = match scan.modest_w(n, d) {
                    Ok(Some(m)) => m,
                    Ok(None) => {
                        thm.fail(format!("{ctx}: modest reports an empty set"));
                        break;
                    }
                    Err(e) => {
                        thm.error(&ctx, e);
                        break;
                    }
                };
                let best = all.iter().map(Composition::weight).min().expect("nonempty");
                let optimal: Vec<Vec<u64>> = all
                    .iter()
                    .filter(|c| c.weight() == best)
                    .map(parts_of)
                    .collect();
                let api = optimal_set(n, d, &q, &r.limits)
                    .map(|v| v.iter().map(parts_of).collect::<Vec<_>>());
                thm.check(
                    modest_parts == lexmax
                        && optimal == vec![modest_parts.clone()]
                        && api.as_ref().ok() == Some(&optimal),
                    || format!("{ctx}: modest {modest_parts:?}, optimal {optimal:?}"),
                );

                if d <= r.tau_d_max {
                    check_tau_classes(&mut tau, n, d, &q, &all, r);
                }

                let x = &modest_parts;
                check_restriction(
                    [&mut drop_first, &mut drop_last, &mut drop_last_constrained],
                    &mut scan,
                    n,
                    d,
                    x,
                    &ctx,
                );
                for e in 1..=r.scaling_max {
                    let factor = q.p().pow(e);
                    let scaled: Vec<u64> = x.iter().map(|&v| v * factor).collect();
                    match scan.modest_w(n * factor, d) {
                        Ok(m) => scaling.check(m.as_ref() == Some(&scaled), || {
                            format!("{ctx} n={e}: {m:?} vs {scaled:?}")
                        }),
                        Err(e) => scaling.error(&ctx, e),
                    }
                }
                for y in optimal.iter() {
                    check_estimation(&mut estimate, n, d, y, &q, &ctx);
                    check_bounds(&mut bounds, n, d, y, &q, &ctx);
                }
                d += 1;
            }
        }
    }
    vec![
        thm.finish(),
        tau.finish(),
        drop_first.finish(),
        drop_last.finish(),
        drop_last_constrained.finish(),
        scaling.finish(),
        estimate.finish(),
        bounds.finish(),
    ]
}

fn check_tau_classes(
    t: &mut Tally,
    n: u64,
    d: usize,
    q: &PrimePower,
    all: &[Composition],
    r: &Ranges,
) {
    let matrices = match valid_matrices(n, d, q, &r.limits) {
        Ok(m) => m,
        Err(e) => return t.error(format!("q={} N={n} d={d}", q.q()), e),
    };
    let mut groups: HashMap<Vec<GammaVector>, Vec<&Composition>> = HashMap::new();
    for c in all {
        groups.entry(c.gamma_columns()).or_default().push(c);
    }
    t.check(groups.len() == matrices.len(), || {
        format!(
            "q={} N={n} d={d}: {} classes vs {} matrices",
            q.q(),
            groups.len(),
            matrices.len()
        )
    });
    for b in &matrices {
        let class = groups.get(b.columns()).cloned().unwrap_or_default();
        let rep = tau_monotonic_rep(b);
        let expanded = matrix_class(b);
        let lexmax = class.iter().max().map(|c| c.parts().to_vec());
        let best = class.iter().map(|c| c.weight()).min();
        let at_best = class.iter().filter(|c| Some(c.weight()) == best).count();
        t.check(
            lexmax.as_deref() == Some(rep.parts())
                && best == Some(rep.weight())
                && at_best == 1
                && expanded.len() == class.len(),
            || format!("q={} N={n} B={b}: rep {rep}", q.q()),
        );
    }
}

fn check_restriction(
    [first, last, constrained]: [&mut Tally; 3],
    scan: &mut ComposeScan<'_>,
    n: u64,
    d: usize,
    x: &[u64],
    ctx: &str,
) {
    if d < 2 {
        return;
    }
    let head = &x[..d - 1];
    let m = n - x[d - 1];
    match scan.modest_w(m, d - 1) {
        Ok(got) => last.check(got.as_deref() == Some(head), || {
            format!("{ctx}: modest of W_(d-1)({m}) is {got:?}, head is {head:?}")
        }),
        Err(e) => last.error(ctx, e),
    }
    // (Y, 0) ∈ W_d(m) iff Y ∈ W_(d-1)(m) with constrained last part
    let zl = scan.zero_last.get(&(m, d)).cloned().flatten();
    let got = zl.as_ref().map(|y| &y[..d - 1]);
    constrained.check(got == Some(head), || {
        format!("{ctx}: constrained lex-max {got:?}, head is {head:?}")
    });
    // N - X_1 = 0 only when d = 2 and X_2 = 0; W_1(0) = {(0)} trivially
    let rest = n - x[0];
    if rest > 0 {
        let tail = &x[1..];
        match scan.modest_w(rest, d - 1) {
            Ok(got) => first.check(got.as_deref() == Some(tail), || {
                format!("{ctx}: drop first gives {got:?}, want {tail:?}")
            }),
            Err(e) => first.error(ctx, e),
        }
    }
}

fn check_estimation(t: &mut Tally, n: u64, d: usize, x: &[u64], q: &PrimePower, ctx: &str) {
    if d < 2 {
        return;
    }
    let g = |v: u64| crate::digitlab::gamma(v, q);
    for (i, &xi) in x.iter().enumerate().take(d - 1).skip(1) {
        let ok = matches!(g(xi), Ok(v) if in_j_m(&v, 1));
        t.check(ok, || format!("{ctx}: X_{} = {xi} not in J_1", i + 1));
    }
    let last = x[d - 1];
    if q.is_q_even(n) {
        t.check(last == 0, || format!("{ctx}: q-even N but X_d = {last}"));
    } else {
        let ok = matches!(g(last), Ok(v) if in_i_m(&v, 1) && !in_i_m(&v, 2));
        t.check(ok, || format!("{ctx}: X_d = {last} not in I_1 minus I_2"));
    }
}

fn check_bounds(t: &mut Tally, n: u64, d: usize, x: &[u64], q: &PrimePower, ctx: &str) {
    let a = leading_block(n, q.p());
    let wt = brute::weight_w(x);
    t.check(x[0] >= a && 2 * x[0] > n, || {
        format!("{ctx}: X_1 = {} vs leading block {a}", x[0])
    });
    t.check(n as u128 <= wt && wt < 2 * n as u128, || {
        format!("{ctx}: weight {wt}")
    });
    if d >= 2 {
        let rest = n - x[0];
        t.check(rest == 0 || !brute::w_nonempty(rest, d, q), || {
            format!("{ctx}: W_d({rest}) is nonempty")
        });
    }
}

/// `W_d(N) ≠ ∅` three ways: digit splitting, `min α >= d-1`, and
/// `Γ(N) ∈ J_{d-1} ∪ I_d`.
pub fn nonempty_check(r: &Ranges) -> Outcome {
    let mut t = Tally::new(
        "nonempty-criterion",
        "W_d(N) is nonempty iff min(E^-1 Γ(N)) >= d-1 iff Γ(N) in J_(d-1) ∪ I_d",
    );
    for q in prime_powers(&r.compose_qs) {
        for n in 1..=r.nonempty_n_max {
            let v = gamma(n, &q).expect("n >= 1");
            let alpha_min = v.preimage().min_entry();
            for d in 1..=r.nonempty_d_max {
                let search = brute::w_nonempty(n, d, &q);
                let by_alpha = alpha_min >= num_rational::Ratio::from_integer(d as i128 - 1);
                let by_sets = in_j_m(&v, d as u64 - 1) || in_i_m(&v, d as u64);
                t.check(search == by_alpha && search == by_sets, || {
                    format!(
                        "q={} N={n} d={d}: search {search}, α {by_alpha}, sets {by_sets}",
                        q.q()
                    )
                });
            }
        }
    }
    t.finish()
}

// -------------------------------------------------------------- powersum

pub fn powersum_suite(r: &Ranges) -> Vec<Outcome> {
    let mut oracle = Tally::new(
        "formula-vs-bruteforce",
        "the digit expansion of S_d(s) equals the literal sum over monic polynomials",
    );
    let mut top = Tally::new(
        "greedy-top-degree",
        "the top-degree monomial of S_d(s) is unique and comes from the greedy element",
    );
    let mut bottom = Tally::new(
        "modest-bottom-degree",
        "the lowest-degree monomial of S_d(s) is unique and comes from the modest element",
    );
    let mut vanish = Tally::new(
        "vanishing-criterion",
        "S_d(s) = 0 iff d > L_(-s) iff U_d(-s) is empty",
    );
    let mut chain = Tally::new(
        "valuation-chain",
        "ν_L > … > ν_1 >= ν_0, with ν_1 = ν_0 iff the modest element of U_1(-s) is (0, -s)",
    );

    for q in prime_powers(&r.power_qs) {
        let field = match make_field(q.p(), q.f()) {
            Ok(f) => f,
            Err(e) => {
                oracle.error(format!("q={}", q.q()), e);
                continue;
            }
        };
        let mut formula_vals: HashMap<(usize, u64), Poly> = HashMap::new();
        for d in 0..=r.power_d_max {
            let ctx_q = format!("q={} d={d}", q.q());
            let brute_vals = match (q.q() as u128).checked_pow(d as u32) {
                Some(n) if n <= r.bruteforce_budget => {
                    match power_sums_bruteforce_range(&field, d, r.power_k_max, r.bruteforce_budget)
                    {
                        Ok(v) => Some(v),
                        Err(e) => {
                            oracle.error(&ctx_q, e);
                            None
                        }
                    }
                }
                _ => None,
            };
            for k in 1..=r.power_k_max {
                let s = -(k as i64);
                let ctx = format!("q={} d={d} s={s}", q.q());
                let value = match power_sum_formula(&field, d, s, &r.limits) {
                    Ok(v) => v.poly().expect("negative index").clone(),
                    Err(e) => {
                        oracle.error(&ctx, e);
                        continue;
                    }
                };
                if let Some(b) = &brute_vals {
                    oracle.check(b[k as usize - 1] == value, || format!("{ctx}: {value}"));
                }
                let elements = match enumerate_u(k, d, &q, &r.limits) {
                    Ok(e) => e,
                    Err(e) => {
                        vanish.error(&ctx, e);
                        continue;
                    }
                };
                match vanishes(d, s, &q) {
                    Ok(v) => vanish.check(v == value.is_zero() && v == elements.is_empty(), || {
                        format!("{ctx}: criterion {v}, value {value}, |U| {}", elements.len())
                    }),
                    Err(e) => vanish.error(&ctx, e),
                }
                if !value.is_zero() {
                    let weights: Vec<u128> = elements.iter().map(Composition::weight).collect();
                    let lo = *weights.iter().min().expect("nonempty");
                    let hi = *weights.iter().max().expect("nonempty");
                    let count = |w: u128| weights.iter().filter(|&&x| x == w).count();
                    let deg = value.degree().expect("nonzero") as u128;
                    let val = value.valuation().finite().expect("nonzero") as u128;
                    match greedy(k, d, &q, &r.limits) {
                        Ok(g) => top.check(count(hi) == 1 && g.weight() == hi && hi == deg, || {
                            format!("{ctx}: greedy {g} weight {} vs degree {deg}", g.weight())
                        }),
                        Err(e) => top.error(&ctx, e),
                    }
                    match modest(k, d, &q, Convention::U, &r.limits) {
                        Ok(m) => {
                            bottom.check(count(lo) == 1 && m.weight() == lo && lo == val, || {
                                format!("{ctx}: modest {m} weight {} vs v_t {val}", m.weight())
                            })
                        }
                        Err(e) => bottom.error(&ctx, e),
                    }
                }
                formula_vals.insert((d, k), value);
            }
        }
        for k in 1..=r.power_k_max {
            check_chain(&mut chain, k, &q, &formula_vals, &r.limits);
        }
    }
    vec![
        oracle.finish(),
        top.finish(),
        bottom.finish(),
        vanish.finish(),
        chain.finish(),
    ]
}

fn check_chain(
    t: &mut Tally,
    k: u64,
    q: &PrimePower,
    computed: &HashMap<(usize, u64), Poly>,
    limits: &Limits,
) {
    let s = -(k as i64);
    let ctx = format!("q={} s={s}", q.q());
    let top = match l_value(k, q) {
        Ok(l) => l.to_integer() as usize,
        Err(e) => return t.error(&ctx, e),
    };
    let mut nus = Vec::with_capacity(top + 2);
    for d in 0..=top + 1 {
        match nu(d, s, q, limits) {
            Ok(v) => nus.push(v),
            Err(e) => return t.error(&ctx, e),
        }
    }
    for (d, v) in nus.iter().enumerate() {
        if let Some(p) = computed.get(&(d, k)) {
            t.check(p.valuation() == *v, || {
                format!("{ctx} d={d}: ν = {v} but v_t = {}", p.valuation())
            });
        }
    }
    t.check(nus[top + 1] == Valuation::Infinite && nus[top] != Valuation::Infinite, || {
        format!("{ctx}: ν beyond L is {}", nus[top + 1])
    });
    for d in 2..=top {
        t.check(nus[d] > nus[d - 1], || {
            format!("{ctx}: ν_{d} = {} not above ν_{} = {}", nus[d], d - 1, nus[d - 1])
        });
    }
    if top >= 1 {
        let equal = nus[1] == nus[0];
        let m = modest(k, 1, q, Convention::U, limits).map(|c| c.parts().to_vec());
        let edge = m.as_ref().ok() == Some(&vec![0, k]);
        t.check(nus[1] >= nus[0] && equal == edge, || {
            format!("{ctx}: ν_1 = {}, ν_0 = {}, modest {m:?}", nus[1], nus[0])
        });
    }
}

// ------------------------------------------------------------------- mzv

pub fn mzv_suite(r: &Ranges) -> Vec<Outcome> {
    let (zeros, valuations) = zeta_sweep_check(r);
    vec![
        zeros,
        valuations,
        goss_suite(r),
        depth_one_check(r),
        mixed_example_check(r),
    ]
}

/// All-negative tuples over the configured grid: zero iff trivial zero,
/// and the valuation formula on every nonzero value.
pub fn zeta_sweep_check(r: &Ranges) -> (Outcome, Outcome) {
    let mut zeros = Tally::new(
        "negative-zeta-zeros",
        "ζ(s) at negative s of depth >= 2 vanishes iff s is a trivial zero",
    );
    let mut vals = Tally::new(
        "negative-zeta-valuation",
        "v_t(ζ(s)) = Σ ν_(r-i)(s_i) for every nontrivial negative tuple",
    );
    let mut trivial = 0u64;
    for q in prime_powers(&r.zeta_qs) {
        let field = match make_field(q.p(), q.f()) {
            Ok(f) => f,
            Err(e) => {
                zeros.error(format!("q={}", q.q()), e);
                continue;
            }
        };
        let max_depth = r.zeta_depths.iter().copied().max().unwrap_or(1);
        let mut nus: HashMap<(usize, i64), Valuation> = HashMap::new();
        for s in r.zeta_s_min..0 {
            for d in 0..max_depth {
                match nu(d, s, &q, &r.limits) {
                    Ok(v) => {
                        nus.insert((d, s), v);
                    }
                    Err(e) => vals.error(format!("q={} ν_{d}({s})", q.q()), e),
                }
            }
        }
        for &depth in &r.zeta_depths {
            let res = sweep_negative(&field, depth, r.zeta_s_min, -1, &r.limits, &mut |z| {
                let s = z.index.entries();
                zeros.check(true, String::new);
                match z.classification {
                    Classification::TrivialZero => trivial += 1,
                    Classification::Nonzero => {
                        let expected = s
                            .iter()
                            .enumerate()
                            .map(|(i, &x)| nus.get(&(s.len() - 1 - i, x)).copied())
                            .try_fold(0i64, |acc, v| match v {
                                Some(Valuation::Finite(v)) => Some(acc + v),
                                _ => None,
                            });
                        vals.check(expected == z.valuation.finite(), || {
                            format!("q={} s={s:?}: v_t {} vs {expected:?}", q.q(), z.valuation)
                        });
                    }
                    other => zeros.fail(format!("q={} s={s:?}: classified {other}", q.q())),
                }
                Ok(())
            });
            if let Err(e) = res {
                zeros.error(format!("q={} depth {depth}", q.q()), e);
            }
        }
    }
    zeros.note = format!("{trivial} trivial zero(s), no other zeros");
    (zeros.finish(), vals.finish())
}

pub fn goss_suite(r: &Ranges) -> Outcome {
    let mut t = Tally::new(
        "goss",
        "depth-one ζ(s) at negative s vanishes iff s is divisible by q-1",
    );
    for q in prime_powers(&r.zeta_qs) {
        let field = match make_field(q.p(), q.f()) {
            Ok(f) => f,
            Err(e) => {
                t.error(format!("q={}", q.q()), e);
                continue;
            }
        };
        for k in 1..=r.goss_k_max {
            let s = -(k as i64);
            match goss_check(&field, s, &r.limits) {
                Ok(zero) => t.check(zero == q.is_q_even(k), || format!("q={} s={s}", q.q())),
                Err(e) => t.error(format!("q={} s={s}", q.q()), e),
            }
        }
    }
    t.finish()
}

/// Depth-one `ζ(s)` against summed brute-force power sums.
pub fn depth_one_check(r: &Ranges) -> Outcome {
    let mut t = Tally::new(
        "depth-one-bruteforce",
        "depth-one ζ(s) equals the sum of literally computed S_d(s)",
    );
    let k_max = r.goss_k_max.min(60);
    for q in prime_powers(&r.zeta_qs) {
        let Ok(field) = make_field(q.p(), q.f()) else {
            continue;
        };
        let mut by_degree: Vec<Option<Vec<Poly>>> = Vec::new();
        for k in 1..=k_max {
            let s = -(k as i64);
            let top = match l_value(k, &q) {
                Ok(l) => l.to_integer() as usize,
                Err(e) => {
                    t.error(format!("q={} s={s}", q.q()), e);
                    continue;
                }
            };
            while by_degree.len() <= top {
                let d = by_degree.len();
                by_degree.push(
                    power_sums_bruteforce_range(&field, d, k_max, r.bruteforce_budget).ok(),
                );
            }
            let mut sum = Poly::zero(&field);
            let mut complete = true;
            for row in by_degree.iter().take(top + 1) {
                match row {
                    Some(row) => sum.add_assign(&row[k as usize - 1]),
                    None => complete = false,
                }
            }
            if !complete {
                continue;
            }
            match zeta_negative(&field, &[s], &r.limits) {
                Ok(z) => t.check(z.value == ZetaValue::Poly(sum), || {
                    format!("q={} s={s}: {}", q.q(), z.value)
                }),
                Err(e) => t.error(format!("q={} s={s}", q.q()), e),
            }
        }
    }
    t.finish()
}

/// The mixed-sign q = 3 example `ζ(-8, 2) = 0` and its three summands.
pub fn mixed_example_check(r: &Ranges) -> Outcome {
    let mut t = Tally::new(
        "mixed-sign-example",
        "over F_3, ζ(-8, 2) = (2t^6+2t^4+2t^2+2) + (t^6+t^4+t^2) + 1 = 0",
    );
    let Ok(field) = make_field(3, 1) else {
        t.fail("cannot build F_3".into());
        return t.finish();
    };
    let opts = MixedOptions::default();
    match zeta_mixed(&field, &[-8, 2], &opts, &r.limits) {
        Ok(z) => t.check(z.value.is_zero() && z.exact, || {
            format!("value {} exact {}", z.value, z.exact)
        }),
        Err(e) => t.error("ζ(-8, 2)", e),
    }
    match mixed_terms(&field, &[-8, 2], &opts, &r.limits) {
        Ok(terms) => {
            let got: Vec<(Vec<usize>, String)> = terms
                .iter()
                .map(|(d, v)| (d.clone(), v.to_string()))
                .collect();
            let want = vec![
                (vec![2, 1], "1".to_string()),
                (vec![2, 0], "t^6+t^4+t^2".to_string()),
                (vec![1, 0], "2*t^6+2*t^4+2*t^2+2".to_string()),
            ];
            t.check(got == want, || format!("terms {got:?}"));
        }
        Err(e) => t.error("summands", e),
    }
    t.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> Ranges {
        Ranges {
            power_qs: vec![3, 4],
            power_k_max: 20,
            zeta_qs: vec![3, 4],
            zeta_s_min: -6,
            goss_k_max: 20,
            compose_qs: vec![3, 9],
            compose_n_max: 40,
            enum_n_max: 30,
            enum_d_max: 3,
            nonempty_n_max: 40,
            nonempty_d_max: 3,
            membership_qs: vec![3, 9],
            membership_n_max: 40,
            membership_m_max: 3,
            cover_qs: vec![9],
            cover_instances: 50,
            ..Ranges::default()
        }
    }

    #[test]
    fn tiny_ranges_pass() {
        for o in run(Suite::All, &tiny()) {
            // both literal statements have small counterexamples
            if o.name != "cover-extension" && o.name != "modest-drop-last" {
                assert!(o.passed, "{o}");
            }
        }
    }

    #[test]
    fn zero_remainder_cover_counterexample() {
        // the only w in 𝔍 between v and u is u itself, so u - w = 0
        let q = PrimePower::from_q(9).unwrap();
        let u = GammaVector::new(q, vec![8, 24]).unwrap();
        let v = GammaVector::new(q, vec![8, 21]).unwrap();
        assert_eq!(cover_slack(&u, &v).unwrap(), 0);
        let w = extend_to_cover(&u, &v).unwrap();
        assert_eq!(w, u);
        let between: Vec<u64> = (21..=24u64)
            .filter(|&x| in_frak_j(&GammaVector::new(q, vec![8, x]).unwrap()))
            .collect();
        assert_eq!(between, vec![24]);
        assert!(cover_postconditions(&u, &v, &w).is_err());
    }

    #[test]
    fn suite_names_parse() {
        assert_eq!("mzv".parse::<Suite>().unwrap(), Suite::Mzv);
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn tally_reports_first_failure() {
        let mut t = Tally::new("x", "y");
        t.check(true, || unreachable!());
        t.check(false, || "first".into());
        t.check(false, || "second".into());
        let o = t.finish();
        assert!(!o.passed);
        assert_eq!(o.checked, 3);
        assert!(o.detail.contains("2 failure(s); first: first"));
    }

    #[test]
    fn empty_tally_fails() {
        assert!(!Tally::new("x", "y").finish().passed);
    }

    #[test]
    fn cover_degenerate_by_search() {
        // f = 1: every w in [v, u] is a candidate; the construction must
        // return one satisfying the postconditions
        let q = PrimePower::from_q(3).unwrap();
        let u = GammaVector::new(q, vec![10]).unwrap();
        let v = GammaVector::new(q, vec![2]).unwrap();
        let w = extend_to_cover(&u, &v).unwrap();
        assert!(cover_postconditions(&u, &v, &w).is_ok());
        let k = cover_slack(&u, &v).unwrap();
        let valid: Vec<u64> = (2..=10u64)
            .filter(|&x| {
                let wv = GammaVector::new(q, vec![x]).unwrap();
                let rest = GammaVector::new(q, vec![10 - x]).unwrap();
                in_frak_j(&wv) && (in_j_m(&rest, k) || in_i_m(&rest, k + 1))
            })
            .collect();
        assert!(valid.contains(&w.entries()[0]), "{w} not in {valid:?}");
    }
}
