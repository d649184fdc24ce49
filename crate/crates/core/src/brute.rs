//! Definitional oracles. Nothing here goes through `E⁻¹`, valid matrices or
//! τ-sequences: compositions are found by splitting base-p digits, and
//! set membership by searching over explicit summands.

use std::collections::HashMap;

use crate::digitlab::{GammaVector, PrimePower};

/// Every `m` whose base-p digits are bounded by those of `n`, ascending.
pub fn digit_submasks(n: u64, p: u64) -> Vec<u64> {
    let mut out = vec![0u64];
    let mut rest = n;
    let mut place = 1u64;
    while rest > 0 {
        let a = rest % p;
        let mut next = Vec::with_capacity(out.len() * (a as usize + 1));
        for c in 0..=a {
            next.extend(out.iter().map(|&m| m + c * place));
        }
        out = next;
        rest /= p;
        if rest > 0 {
            place *= p;
        }
    }
    out.sort_unstable();
    out
}

fn positive_q_even(m: u64, q: &PrimePower) -> bool {
    m > 0 && m % q.q_minus_one() == 0
}

/// `W_d(N)` by splitting digits part by part, sorted lexicographically.
/// `X_1, …, X_{d-1}` must be positive and q-even; `X_d` takes the rest.
pub fn enumerate_w(n: u64, d: usize, q: &PrimePower) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    if d == 0 {
        return out;
    }
    let mut parts = Vec::with_capacity(d);
    split_w(n, d, q, &mut parts, &mut |x| {
        out.push(x.to_vec());
        true
    });
    out.sort();
    out
}

/// Whether `W_d(N)` is nonempty, stopping at the first witness.
pub fn w_nonempty(n: u64, d: usize, q: &PrimePower) -> bool {
    if d == 0 {
        return false;
    }
    let mut found = false;
    split_w(n, d, q, &mut Vec::with_capacity(d), &mut |_| {
        found = true;
        false
    });
    found
}

/// Returns `false` once `visit` asks to stop.
fn split_w(
    rest: u64,
    d: usize,
    q: &PrimePower,
    parts: &mut Vec<u64>,
    visit: &mut dyn FnMut(&[u64]) -> bool,
) -> bool {
    if parts.len() + 1 == d {
        parts.push(rest);
        let go = visit(parts);
        parts.pop();
        return go;
    }
    for m in digit_submasks(rest, q.p()) {
        if !positive_q_even(m, q) {
            continue;
        }
        parts.push(m);
        let go = split_w(rest - m, d, q, parts, visit);
        parts.pop();
        if !go {
            return false;
        }
    }
    true
}

/// `U_d(k)` as tuples `(m_0, …, m_d)`, sorted lexicographically.
pub fn enumerate_u(k: u64, d: usize, q: &PrimePower) -> Vec<Vec<u64>> {
    let mut out: Vec<Vec<u64>> = enumerate_w(k, d + 1, q)
        .into_iter()
        .map(|mut x| {
            x.reverse();
            x
        })
        .collect();
    out.sort();
    out
}

/// `Σ_i i·X_i` for a W-tuple.
pub fn weight_w(x: &[u64]) -> u128 {
    x.iter()
        .enumerate()
        .map(|(i, &v)| (i as u128 + 1) * v as u128)
        .sum()
}

/// `d·m_0 + (d-1)·m_1 + … + m_{d-1}` for a U-tuple of length `d + 1`.
pub fn weight_u(m: &[u64]) -> u128 {
    let d = m.len() as u128 - 1;
    m.iter()
        .enumerate()
        .map(|(i, &v)| (d - i as u128) * v as u128)
        .sum()
}

/// Lexicographically largest element of `W_d(N)`.
pub fn modest_w(n: u64, d: usize, q: &PrimePower) -> Option<Vec<u64>> {
    enumerate_w(n, d, q).into_iter().max()
}

/// Lexicographically largest element of `U_d(k)`.
pub fn greedy_u(k: u64, d: usize, q: &PrimePower) -> Option<Vec<u64>> {
    enumerate_u(k, d, q).into_iter().max()
}

/// Element of `U_d(k)` whose reversal is lexicographically largest.
pub fn modest_u(k: u64, d: usize, q: &PrimePower) -> Option<Vec<u64>> {
    enumerate_u(k, d, q)
        .into_iter()
        .max_by(|a, b| a.iter().rev().cmp(b.iter().rev()))
}

/// All minimum-weight elements of `W_d(N)`, sorted.
pub fn optimal_w(n: u64, d: usize, q: &PrimePower) -> Vec<Vec<u64>> {
    let all = enumerate_w(n, d, q);
    let Some(best) = all.iter().map(|x| weight_w(x)).min() else {
        return all;
    };
    all.into_iter().filter(|x| weight_w(x) == best).collect()
}

/// `min_i ℓ(k·p^i) / (q-1)` as `(numerator, q-1)`, by multiplying out.
pub fn l_value(k: u64, q: &PrimePower) -> (u128, u128) {
    let qq = q.q() as u128;
    let best = (0..q.f())
        .map(|i| {
            let mut n = k as u128 * (q.p() as u128).pow(i);
            let mut s = 0u128;
            while n > 0 {
                s += n % qq;
                n /= qq;
            }
            s
        })
        .min()
        .expect("f >= 1");
    (best, q.q_minus_one() as u128)
}

/// An integer `n` with `Γ(n) = v`: entry `i` is spread over base-p
/// positions `i, i+f, i+2f, …`, at most `p-1` per position.
pub fn witness(v: &[u64], q: &PrimePower) -> u128 {
    let p = q.p() as u128;
    let f = v.len();
    let mut n = 0u128;
    for (i, &x) in v.iter().enumerate() {
        let mut rest = x as u128;
        let mut pos = i as u32;
        while rest > 0 {
            let a = rest.min(p - 1);
            n += a * p.pow(pos);
            rest -= a;
            pos += f as u32;
        }
    }
    n
}

/// `v` is `Γ` of a positive q-even integer.
pub fn in_frak_j(v: &[u64], q: &PrimePower) -> bool {
    v.iter().any(|&x| x > 0) && witness(v, q) % q.q_minus_one() as u128 == 0
}

/// Membership in `I_m` and `J_m` by searching for explicit summands:
/// `v ∈ I_m` iff some `m-1` vectors of `𝔍` sum to something strictly below
/// `v`. Results are memoized per vector.
#[derive(Debug)]
pub struct SumOracle {
    q: PrimePower,
    // largest m with v ∈ I_m, per vector
    depth: HashMap<Vec<u64>, u64>,
}

impl SumOracle {
    pub fn new(q: PrimePower) -> Self {
        Self {
            q,
            depth: HashMap::new(),
        }
    }

    /// Largest `m` with `v ∈ I_m`; `0` for the zero vector.
    pub fn max_i(&mut self, v: &[u64]) -> u64 {
        if v.iter().all(|&x| x == 0) {
            return 0;
        }
        if let Some(&m) = self.depth.get(v) {
            return m;
        }
        // v ∈ I_{m} iff v = w + r with w ∈ 𝔍 and r ∈ I_{m-1}
        let mut best = 1u64;
        let mut w = vec![0u64; v.len()];
        self.scan(v, 0, &mut w, &mut best);
        self.depth.insert(v.to_vec(), best);
        best
    }

    fn scan(&mut self, v: &[u64], i: usize, w: &mut Vec<u64>, best: &mut u64) {
        if i == v.len() {
            if in_frak_j(w, &self.q) {
                let r: Vec<u64> = v.iter().zip(w.iter()).map(|(a, b)| a - b).collect();
                let below = self.max_i(&r);
                if below > 0 {
                    *best = (*best).max(below + 1);
                }
            }
            return;
        }
        for x in 0..=v[i] {
            w[i] = x;
            self.scan(v, i + 1, w, best);
        }
        w[i] = 0;
    }

    pub fn in_i_m(&mut self, v: &[u64], m: u64) -> bool {
        m >= 1 && self.max_i(v) >= m
    }

    pub fn in_j_m(&mut self, v: &[u64], m: u64) -> bool {
        m >= 1 && in_frak_j(v, &self.q) && self.max_i(v) == m
    }
}

/// Convenience wrapper for a single [`GammaVector`].
pub fn in_i_m(v: &GammaVector, m: u64) -> bool {
    SumOracle::new(v.prime_power()).in_i_m(v.entries(), m)
}

/// Convenience wrapper for a single [`GammaVector`].
pub fn in_j_m(v: &GammaVector, m: u64) -> bool {
    SumOracle::new(v.prime_power()).in_j_m(v.entries(), m)
}
