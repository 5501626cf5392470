mod common;

use std::collections::HashMap;

use common::{small_q, t_poly};
use plurikit::field::{BigRational, KappaRational};
use plurikit::poly::{Ambient, Poly, VarId};
use proptest::prelude::*;

fn var(n: usize) -> impl Strategy<Value = VarId> {
    (1..=n, 1..=n).prop_map(|(i, j)| VarId::t(i, j))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn leibniz(p in t_poly(2, 3, 4), q in t_poly(2, 3, 4), v in var(2)) {
        let lhs = (&p * &q).partial(v);
        let rhs = &(&p.partial(v) * &q) + &(&p * &q.partial(v));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn partials_commute(p in t_poly(3, 4, 5), u in var(3), v in var(3)) {
        prop_assert_eq!(p.partial(u).partial(v), p.partial(v).partial(u));
    }

    #[test]
    fn substitute_is_a_ring_homomorphism(
        p in t_poly(2, 2, 3),
        q in t_poly(2, 2, 3),
        images in prop::collection::vec(t_poly(2, 2, 2), 4),
    ) {
        let amb = Ambient::new(2);
        let vars = [VarId::t(1, 1), VarId::t(1, 2), VarId::t(2, 1), VarId::t(2, 2)];
        let map: HashMap<VarId, Poly> = vars.into_iter().zip(images).collect();
        let s = |x: &Poly| x.substitute(&map, amb);
        prop_assert_eq!(s(&(&p * &q)), &s(&p) * &s(&q));
        prop_assert_eq!(s(&(&p + &q)), &s(&p) + &s(&q));
    }

    #[test]
    fn bidegree_components_scale(
        p in t_poly(3, 3, 6),
        lambda in prop::collection::vec(small_q(), 3),
        mu in prop::collection::vec(small_q(), 3),
    ) {
        let amb = Ambient::new(3);
        let mut map = HashMap::new();
        for i in 1..=3 {
            for j in 1..=3 {
                let c = KappaRational::from_rational(&lambda[i - 1] * &mu[j - 1]);
                map.insert(VarId::t(i, j), Poly::var(amb, VarId::t(i, j)).scale(&c));
            }
        }
        let split = p.bidegree_split().unwrap();
        let mut sum = Poly::zero(amb);
        for (bd, comp) in &split {
            let mut factor = BigRational::from_integer(1.into());
            for i in 0..3 {
                factor *= num_traits::pow(lambda[i].clone(), bd.a[i] as usize);
                factor *= num_traits::pow(mu[i].clone(), bd.b[i] as usize);
            }
            prop_assert_eq!(comp.substitute(&map, amb), comp.scale(&KappaRational::from_rational(factor)));
            sum = &sum + comp;
        }
        prop_assert_eq!(sum, p);
    }

    #[test]
    fn json_round_trip(p in t_poly(3, 4, 6)) {
        let back = Poly::from_json(&p.to_json()).unwrap();
        prop_assert_eq!(back.to_json(), p.to_json());
        prop_assert_eq!(back, p);
    }
}
