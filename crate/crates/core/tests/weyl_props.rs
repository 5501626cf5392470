mod common;

use common::{non_integer_q, t_monomial, t_poly};
use plurikit::bases::{monomial_basis, Partition};
use plurikit::field::KappaMode;
use plurikit::poly::{Ambient, Bidegree, Poly};
use plurikit::verify::bidegrees;
use plurikit::weyl::{tilde_compat_check, OpKind, OperatorSpec, Strategy as Order, Weyl};
use proptest::prelude::*;

fn op_kind() -> impl Strategy<Value = OpKind> {
    prop_oneof![Just(OpKind::D), Just(OpKind::E), Just(OpKind::Eprime), Just(OpKind::F)]
}

/// `(n, p, q, op)` with `n ≤ 3`, degrees ≤ 3.
fn adjoint_case() -> impl Strategy<Value = (usize, Poly, Poly, OperatorSpec)> {
    (1usize..=3).prop_flat_map(|n| {
        (Just(n), t_poly(n, 3, 3), t_poly(n, 3, 3), op_kind(), 1..=n, 1..=n)
            .prop_map(|(n, p, q, kind, i, j)| (n, p, q, OperatorSpec::new(kind, i, j, n).unwrap()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn d_operators_commute(p in t_poly(3, 4, 4), i in 1..=3usize, j in 1..=3usize, k in 1..=3usize, l in 1..=3usize) {
        let w = Weyl::symbolic(3);
        prop_assert_eq!(w.apply_d(i, j, &w.apply_d(k, l, &p)), w.apply_d(k, l, &w.apply_d(i, j, &p)));
    }

    #[test]
    fn e_kappa_confluence(n in 1..=3usize, m in t_monomial(3, 0..=4), seed in any::<u64>()) {
        let m = m.map_vars(|v| plurikit::poly::VarId::t((v.i as usize - 1) % n + 1, (v.j as usize - 1) % n + 1));
        let w = Weyl::symbolic(n);
        let p = Poly::term(Ambient::new(n), m, common::kappa().pow(0));
        let base = w.e_kappa(&p);
        prop_assert_eq!(w.e_kappa_with(&p, Order::Least), base.clone());
        prop_assert_eq!(w.e_kappa_with(&p, Order::Greatest), base.clone());
        prop_assert_eq!(w.e_kappa_with(&p, Order::Shuffled(seed)), base);
    }

    #[test]
    fn adjoints_symbolic((n, p, q, op) in adjoint_case()) {
        prop_assert!(Weyl::symbolic(n).check_adjoint(op, &p, &q).unwrap());
    }

    #[test]
    fn adjoints_specialized((n, p, q, op) in adjoint_case(), kq in non_integer_q()) {
        let w = Weyl::new(n, &KappaMode::Specialized(kq.clone()));
        let (p, q) = (p.specialize(&kq).unwrap(), q.specialize(&kq).unwrap());
        prop_assert!(w.check_adjoint(op, &p, &q).unwrap());
    }

    #[test]
    fn tilde_compatibility(n in 1..=2usize, p in t_poly(2, 3, 4), kappa in 1..=3usize) {
        let p = if n == 1 {
            p.filtered(|m| m.iter().all(|(v, _)| v.i == 1 && v.j == 1)).with_ambient(Ambient::new(1))
        } else {
            p
        };
        prop_assert!(tilde_compat_check(&p, kappa).unwrap());
    }
}

#[test]
fn distinct_bidegrees_are_orthogonal() {
    let w = Weyl::symbolic(2);
    let pt = Partition::trivial(2);
    let mut elems: Vec<(Bidegree, Poly)> = Vec::new();
    for d in 0..=3 {
        for bd in bidegrees(2, d) {
            for p in monomial_basis(&w, &bd, &pt).unwrap().into_values() {
                elems.push((bd.clone(), p));
            }
        }
    }
    let mut pairs = 0;
    for (ba, p) in &elems {
        for (bb, q) in &elems {
            if ba != bb {
                pairs += 1;
                assert!(w.inner_product(p, q).unwrap().is_zero(), "{ba:?} vs {bb:?}");
            }
        }
    }
    // one element per bidegree at n = 2: 1 + 2 + 3 + 4
    assert_eq!(elems.len(), 10);
    assert_eq!(pairs, 90);
}
