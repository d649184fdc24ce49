//! Depth-2 and depth-3 multizeta values against nested sums of brute-force
//! power sums.

use fqmzv::compose::Limits;
use fqmzv::digitlab::{l_value, PrimePower};
use fqmzv::fqpoly::{make_field, Field, Poly};
use fqmzv::mzv::{is_trivial_zero, zeta_negative, Classification};
use fqmzv::powersum::{power_sum_bruteforce, PowerSumValue};

fn brute_s(field: &Field, d: usize, s: i64) -> Poly {
    match power_sum_bruteforce(field, d, s, 1 << 20).unwrap().value {
        PowerSumValue::Poly(p) => p,
        PowerSumValue::Rational(_) => unreachable!("s < 0"),
    }
}

/// Every S_d(-k) with d above the threshold vanishes, so the nested sum is
/// finite.
fn brute_zeta(field: &Field, s: &[i64]) -> Poly {
    let q = field.prime_power();
    let top = |k: i64| {
        let l = l_value(k.unsigned_abs(), &q).unwrap();
        (l.numer() / l.denom()) as usize
    };
    let mut total = Poly::zero(field);
    let bound = s.iter().map(|&x| top(x)).max().unwrap() + s.len();
    nested(field, s, bound, &Poly::one(field), &mut total);
    total
}

fn nested(field: &Field, s: &[i64], below: usize, acc: &Poly, total: &mut Poly) {
    let Some((&first, rest)) = s.split_first() else {
        total.add_assign(acc);
        return;
    };
    for d in 0..below {
        let term = acc * &brute_s(field, d, first);
        if !term.is_zero() {
            nested(field, rest, d, &term, total);
        }
    }
}

fn check(q: u64, depth: usize, s_min: i64) {
    let pp = PrimePower::from_q(q).unwrap();
    let field = make_field(pp.p(), pp.f()).unwrap();
    let limits = Limits::default();
    let mut s = vec![-1i64; depth];
    loop {
        let z = zeta_negative(&field, &s, &limits).unwrap();
        let want = brute_zeta(&field, &s);
        assert_eq!(z.value.to_string(), want.to_string(), "q={q} s={s:?}");
        let trivial = is_trivial_zero(&s, &pp).unwrap();
        assert_eq!(want.is_zero(), trivial, "q={q} s={s:?}");
        let expect = if trivial {
            Classification::TrivialZero
        } else {
            Classification::Nonzero
        };
        assert_eq!(z.classification, expect);
        // next tuple
        let mut i = 0;
        while i < depth && s[i] == s_min {
            s[i] = -1;
            i += 1;
        }
        if i == depth {
            break;
        }
        s[i] -= 1;
    }
}

#[test]
fn depth_two_over_f2() {
    check(2, 2, -15);
}

#[test]
fn depth_two_over_f3() {
    check(3, 2, -14);
}

#[test]
fn depth_two_over_f4() {
    check(4, 2, -12);
}

#[test]
fn depth_three_over_f3() {
    check(3, 3, -8);
}
