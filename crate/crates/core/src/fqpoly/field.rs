use std::fmt;
use std::sync::Arc;

use crate::digitlab::PrimePower;
use crate::error::{invalid, Error, Result};

/// Largest field order for which arithmetic tables are built.
pub const MAX_FIELD_ORDER: u64 = 1024;

/// An element of `F_q`, encoded as `c_0 + c_1 p + … + c_{f-1} p^{f-1}` where
/// `c_0 + c_1 x + …` is its reduced representative in `F_p[x]/(m(x))`.
///
/// Arithmetic goes through the owning [`FieldSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement(u16);

impl FieldElement {
    pub fn code(self) -> u32 {
        self.0 as u32
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Shared handle to a field.
pub type Field = Arc<FieldSpec>;

/// `F_q = F_p[x]/(m(x))` with `m` the smallest monic irreducible of degree
/// `f`, comparing coefficient vectors low-to-high as base-p integers.
pub struct FieldSpec {
    q: PrimePower,
    modulus: Vec<u64>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

/// Remainder of `a` modulo monic `m` over `F_p`; coefficient vectors
/// low-to-high.
fn rem_mod_p(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap() % p;
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn is_irreducible(m: &[u64], p: u64) -> bool {
    let f = m.len() - 1;
    for deg in 1..=f / 2 {
        let count = p.pow(deg as u32);
        for code in 0..count {
            let mut cand = Vec::with_capacity(deg + 1);
            let mut c = code;
            for _ in 0..deg {
                cand.push(c % p);
                c /= p;
            }
            cand.push(1);
            if rem_mod_p(m, &cand, p).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u64, f: u32) -> Vec<u64> {
    let f = f as usize;
    let count = p.pow(f as u32);
    for code in 0..count {
        let mut m = Vec::with_capacity(f + 1);
        let mut c = code;
        for _ in 0..f {
            m.push(c % p);
            c /= p;
        }
        m.push(1);
        if is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Builds the field of order `p^f`.
pub fn make_field(p: u64, f: u32) -> Result<Field> {
    let q = PrimePower::new(p, f)?;
    FieldSpec::new(q).map(Arc::new)
}

impl FieldSpec {
    pub fn new(q: PrimePower) -> Result<Self> {
        if q.q() > MAX_FIELD_ORDER {
            return Err(Error::ResourceLimit(format!(
                "field order {} exceeds {MAX_FIELD_ORDER}",
                q.q()
            )));
        }
        let modulus = smallest_irreducible(q.p(), q.f());
        let n = q.q() as usize;
        let p = q.p();
        let f = q.f() as usize;
        let decode = |code: usize| -> Vec<u64> {
            let mut c = code as u64;
            (0..f)
                .map(|_| {
                    let d = c % p;
                    c /= p;
                    d
                })
                .collect()
        };
        let encode = |v: &[u64]| -> u16 {
            v.iter().rev().fold(0u64, |acc, &d| acc * p + d) as u16
        };
        let elems: Vec<Vec<u64>> = (0..n).map(decode).collect();
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                let s: Vec<u64> = (0..f).map(|i| (elems[a][i] + elems[b][i]) % p).collect();
                add[a * n + b] = encode(&s);
                let mut prod = vec![0u64; 2 * f - 1];
                for i in 0..f {
                    for j in 0..f {
                        prod[i + j] = (prod[i + j] + elems[a][i] * elems[b][j]) % p;
                    }
                }
                let mut r = rem_mod_p(&prod, &modulus, p);
                r.resize(f, 0);
                mul[a * n + b] = encode(&r);
            }
        }
        let neg = (0..n)
            .map(|a| {
                let v: Vec<u64> = elems[a].iter().map(|&d| (p - d) % p).collect();
                encode(&v)
            })
            .collect();
        let mut inv = vec![0u16; n];
        for a in 1..n {
            inv[a] = (1..n)
                .find(|&b| mul[a * n + b] == 1)
                .expect("nonzero elements are invertible") as u16;
        }
        Ok(Self {
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn prime_power(&self) -> PrimePower {
        self.q
    }

    pub fn order(&self) -> u64 {
        self.q.q()
    }

    /// Coefficients of the defining polynomial, low-to-high.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The defining polynomial in `x`, high-degree-first.
    pub fn modulus_text(&self) -> String {
        let mut terms = Vec::new();
        for (k, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            terms.push(match (c, k) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        terms.join("+")
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// The image of the integer `n` in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.q.p() as i64) as u16)
    }

    /// Element with the given `x`-coefficients (low-to-high, reduced mod p).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.q.f() as usize {
            return Err(invalid("too many coefficients for this field"));
        }
        let p = self.q.p();
        let code = coeffs.iter().rev().fold(0u64, |acc, &d| acc * p + d % p);
        Ok(FieldElement(code as u16))
    }

    pub fn from_code(&self, code: u32) -> Result<FieldElement> {
        if code as u64 >= self.order() {
            return Err(invalid(format!("code {code} out of range")));
        }
        Ok(FieldElement(code as u16))
    }

    /// The `f` coefficients of `e`, low-to-high.
    pub fn coeffs(&self, e: FieldElement) -> Vec<u64> {
        let p = self.q.p();
        let mut c = e.0 as u64;
        (0..self.q.f())
            .map(|_| {
                let d = c % p;
                c /= p;
                d
            })
            .collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order() as u16).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add[a.0 as usize * self.order() as usize + b.0 as usize])
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul[a.0 as usize * self.order() as usize + b.0 as usize])
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.0 as usize])
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldElement(self.inv[a.0 as usize]))
    }

    pub fn pow(&self, a: FieldElement, mut n: u64) -> FieldElement {
        let mut base = a;
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// Integer rendering when `f = 1`, coefficient vector `[c_0,…]` otherwise.
    pub fn render(&self, e: FieldElement) -> String {
        if self.q.f() == 1 {
            e.0.to_string()
        } else {
            let cs: Vec<String> = self.coeffs(e).iter().map(u64::to_string).collect();
            format!("[{}]", cs.join(","))
        }
    }
}
