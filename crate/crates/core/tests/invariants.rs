use fqmzv::brute;
use fqmzv::compose::{enumerate_w, modest, optimal_set, Convention, Limits};
use fqmzv::digitlab::{
    carry_free_add, digit_sum_base_q, gamma, in_frak_j, l_value, FracVector, GammaVector,
    PrimePower,
};
use fqmzv::fqpoly::{make_field, Poly, Valuation};
use proptest::prelude::*;

const QS: [u64; 7] = [2, 3, 4, 5, 8, 9, 25];

fn prime_power() -> impl Strategy<Value = PrimePower> {
    prop::sample::select(QS.to_vec()).prop_map(|q| PrimePower::from_q(q).unwrap())
}

fn p_digits(mut n: u64, p: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while n > 0 {
        out.push(n % p);
        n /= p;
    }
    out
}

proptest! {
    #[test]
    fn e_and_its_inverse_cancel(q in prime_power(), xs in prop::collection::vec(-500i64..500, 3)) {
        let f = q.f() as usize;
        let x = FracVector::from_integers(q, &xs[..f]).unwrap();
        let back = x.apply_e().apply_e_inv().unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn gamma_is_in_lattice_iff_q_even(q in prime_power(), n in 1u64..1_000_000) {
        let g = gamma(n, &q).unwrap();
        prop_assert_eq!(in_frak_j(&g), q.is_q_even(n));
        prop_assert_eq!(in_frak_j(&g), brute::in_frak_j(g.entries(), &q));
    }

    #[test]
    fn e_positive_forces_strict_growth(q in prime_power(), xs in prop::collection::vec(-40i64..40, 3)) {
        let f = q.f() as usize;
        let x = FracVector::from_integers(q, &xs[..f]).unwrap();
        let ex = x.apply_e().to_integers().unwrap();
        if ex.iter().all(|&y| y >= 0) && ex.iter().any(|&y| y > 0) {
            prop_assert!(xs[..f].iter().all(|&y| y > 0), "E{:?} = {:?}", &xs[..f], ex);
        }
    }

    #[test]
    fn first_psi_row_reads_base_q_digit_sum(q in prime_power(), n in 1u64..1_000_000) {
        let g = gamma(n, &q).unwrap();
        prop_assert_eq!(g.psi_dot(0), digit_sum_base_q(n, &q).unwrap() as u128);
    }

    #[test]
    fn gamma_of_p_multiple_rotates(q in prime_power(), n in 1u64..1_000_000) {
        let g = gamma(n, &q).unwrap();
        prop_assert_eq!(gamma(n * q.p(), &q).unwrap(), g.rotate());
    }

    #[test]
    fn gamma_entries_total_the_digit_sum(q in prime_power(), n in 1u64..1_000_000) {
        let total: u64 = p_digits(n, q.p()).iter().sum();
        prop_assert_eq!(gamma(n, &q).unwrap().total(), total);
    }

    #[test]
    fn carry_free_iff_digit_multisets_union(p in prop::sample::select(vec![2u64, 3, 5, 7]),
                                           a in 0u64..5000, b in 0u64..5000) {
        let da = p_digits(a, p);
        let db = p_digits(b, p);
        let fits = (0..da.len().max(db.len()))
            .all(|i| da.get(i).unwrap_or(&0) + db.get(i).unwrap_or(&0) < p);
        let got = carry_free_add(&[a, b], p).unwrap();
        prop_assert_eq!(got, fits.then_some(a + b));
    }

    #[test]
    fn l_value_integral_iff_q_even(q in prime_power(), k in 1u64..1_000_000) {
        let l = l_value(k, &q).unwrap();
        prop_assert_eq!(l.is_integer(), q.is_q_even(k));
        let (num, den) = brute::l_value(k, &q);
        prop_assert_eq!(*l.numer() as u128 * den, num * *l.denom() as u128);
        if q.f() == 1 {
            prop_assert_eq!(num as u64, digit_sum_base_q(k, &q).unwrap());
        }
    }

    #[test]
    fn modest_is_the_unique_optimum(q in prop::sample::select(vec![2u64, 3, 4, 9]),
                                    n in 1u64..200, d in 1usize..4) {
        let q = PrimePower::from_q(q).unwrap();
        let limits = Limits::default();
        let all = enumerate_w(n, d, &q, &limits).unwrap();
        let oracle = brute::enumerate_w(n, d, &q);
        let got: Vec<Vec<u64>> = all.iter().map(|c| c.parts().to_vec()).collect();
        prop_assert_eq!(&got, &oracle);
        if let Some(top) = oracle.last() {
            let m = modest(n, d, &q, Convention::W, &limits).unwrap();
            prop_assert_eq!(m.parts(), &top[..]);
            let opt = optimal_set(n, d, &q, &limits).unwrap();
            prop_assert_eq!(opt.len(), 1);
            prop_assert_eq!(opt[0].parts(), &top[..]);
        }
    }

    #[test]
    fn membership_matches_summand_search(q in prop::sample::select(vec![3u64, 4, 9]),
                                         n in 1u64..400, m in 1u64..4) {
        let q = PrimePower::from_q(q).unwrap();
        let g: GammaVector = gamma(n, &q).unwrap();
        prop_assert_eq!(fqmzv::digitlab::in_i_m(&g, m), brute::in_i_m(&g, m));
        prop_assert_eq!(fqmzv::digitlab::in_j_m(&g, m), brute::in_j_m(&g, m));
    }

    #[test]
    fn valuation_is_additive(q in prop::sample::select(vec![2u64, 3, 4, 9]),
                             a in prop::collection::vec(-3i64..3, 0..6),
                             b in prop::collection::vec(-3i64..3, 0..6)) {
        let q = PrimePower::from_q(q).unwrap();
        let field = make_field(q.p(), q.f()).unwrap();
        let x = Poly::from_ints(&field, &a);
        let y = Poly::from_ints(&field, &b);
        let prod = &x * &y;
        match (x.valuation(), y.valuation()) {
            (Valuation::Finite(i), Valuation::Finite(j)) => {
                prop_assert_eq!(prod.valuation(), Valuation::Finite(i + j));
            }
            _ => prop_assert!(prod.is_zero()),
        }
    }

    #[test]
    fn field_inverses_and_frobenius(q in prop::sample::select(vec![4u64, 8, 9, 25, 27])) {
        let q = PrimePower::from_q(q).unwrap();
        let field = make_field(q.p(), q.f()).unwrap();
        for a in field.elements() {
            // a^q = a
            prop_assert_eq!(field.pow(a, q.q()), a);
            if !a.is_zero() {
                prop_assert_eq!(field.mul(a, field.inv(a).unwrap()), field.one());
            }
        }
    }
}
