use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;

use ramification::algebra::{
    factor_fq, frobenius_decompose, is_irreducible, local_valuation, squarefree_decomposition,
    FieldDesc, Poly,
};
use ramification::chi_ring::{chi_of, ChiExpr, ConstructibleSubset, Mode};
use ramification::curve_ram::{fubini_defect, ramification_report, rh_check};
use ramification::local_ram::{qi, ram_profile, ClusterData, Q};
use ramification::place::Place;

fn fp_poly(p: u64, coeffs: &[u64]) -> Poly {
    let f = FieldDesc::prime(p).unwrap();
    let c: Vec<i64> = coeffs.iter().map(|&x| (x % p) as i64).collect();
    Poly::from_i64(&f, &c)
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7])
}

/// (p, coefficients) for a polynomial over F_p of degree ≤ max_deg.
fn fp_coeffs(max_deg: usize) -> impl Strategy<Value = (u64, Vec<u64>)> {
    (prime(), prop::collection::vec(0u64..7, 1..=max_deg + 1))
}

fn product(parts: &[(Poly, usize)], field: &FieldDesc) -> Poly {
    parts
        .iter()
        .fold(Poly::one(field), |acc, (h, m)| &acc * &h.pow(*m))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn squarefree_parts_reassemble((p, c) in fp_coeffs(10)) {
        let f = fp_poly(p, &c);
        prop_assume!(f.degree().unwrap_or(0) >= 1);
        let parts = squarefree_decomposition(&f).unwrap();
        prop_assert_eq!(product(&parts, f.field()), f.monic());
        for (h, _) in &parts {
            prop_assert!(squarefree_decomposition(h).unwrap().iter().all(|(_, m)| *m == 1));
        }
    }

    #[test]
    fn factors_reassemble_and_are_irreducible((p, c) in fp_coeffs(9)) {
        let f = fp_poly(p, &c);
        prop_assume!(f.degree().unwrap_or(0) >= 1);
        let fac = factor_fq(&f).unwrap();
        prop_assert_eq!(product(&fac, f.field()), f.monic());
        for (h, _) in &fac {
            prop_assert!(h.is_monic());
            prop_assert!(is_irreducible(h).unwrap());
        }
    }

    #[test]
    fn euclidean_division((p, a) in fp_coeffs(10), b in prop::collection::vec(0u64..7, 1..6)) {
        let a = fp_poly(p, &a);
        let b = fp_poly(p, &b);
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn leibniz_rule((p, a) in fp_coeffs(8), b in prop::collection::vec(0u64..7, 1..8)) {
        let a = fp_poly(p, &a);
        let b = fp_poly(p, &b);
        let lhs = (&a * &b).derivative();
        let rhs = &(&a.derivative() * &b) + &(&a * &b.derivative());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn valuation_is_additive(
        (p, a) in fp_coeffs(6),
        b in prop::collection::vec(0u64..7, 1..7),
        k in 0usize..3,
        root in 0u64..7,
    ) {
        let field = FieldDesc::prime(p).unwrap();
        let x = field.from_i64((root % p) as i64);
        let lin = Poly::linear_root(&field, &x);
        let a = &fp_poly(p, &a) * &lin.pow(k);
        let b = fp_poly(p, &b);
        prop_assume!(!a.is_zero() && !b.is_zero());
        let va = local_valuation(&a, &field, &x).unwrap();
        let vb = local_valuation(&b, &field, &x).unwrap();
        prop_assert!(va >= k);
        prop_assert_eq!(local_valuation(&(&a * &b), &field, &x).unwrap(), va + vb);
    }

    #[test]
    fn frobenius_decomposition_reinflates((p, c) in fp_coeffs(4), m in 0u32..3) {
        let g = fp_poly(p, &c);
        prop_assume!(g.degree().unwrap_or(0) >= 1);
        let k = (p as usize).pow(m);
        prop_assume!(g.degree().unwrap() * k <= 40);
        let f = g.inflate(k);
        let (sep, e) = frobenius_decompose(&f).unwrap();
        prop_assert!(!sep.derivative().is_zero());
        prop_assert_eq!(sep.inflate((p as usize).pow(e)), f);
        prop_assert!(e >= m);
    }

    #[test]
    fn riemann_hurwitz_and_tameness((p, c) in fp_coeffs(12)) {
        let f = fp_poly(p, &c);
        prop_assume!(f.degree().unwrap_or(0) >= 1);
        let r = ramification_report(&f).unwrap();
        prop_assert!(rh_check(&r));
        for pt in &r.points {
            prop_assert_eq!(pt.tame, pt.e_tilde == pt.e);
            prop_assert_eq!(pt.tame, pt.e as u64 % p != 0);
        }
        let wild = r.points.iter().any(|pt| !pt.tame);
        prop_assert_eq!(fubini_defect(&r) > 0, wild);
    }

    #[test]
    fn riemann_hurwitz_over_q(c in prop::collection::vec(-20i64..=20, 3..=10)) {
        let f = Poly::from_i64(&FieldDesc::rationals(), &c);
        prop_assume!(f.degree().unwrap_or(0) >= 2);
        let r = ramification_report(&f).unwrap();
        prop_assert!(rh_check(&r));
        prop_assert_eq!(fubini_defect(&r), 0);
    }
}

fn place_pool() -> (FieldDesc, Vec<Place>) {
    let f = FieldDesc::prime(3).unwrap();
    let mut pool: Vec<Place> = (0..3).map(|a| Place::rational(&f, a)).collect();
    pool.push(Place::Finite(Poly::from_i64(&f, &[1, 0, 1])));
    pool.push(Place::Finite(Poly::from_i64(&f, &[2, 1, 1])));
    pool.push(Place::Infinity);
    (f, pool)
}

fn subset() -> impl Strategy<Value = ConstructibleSubset> {
    (prop::collection::vec(any::<bool>(), 6), any::<bool>()).prop_map(|(mask, cof)| {
        let (f, pool) = place_pool();
        let places: BTreeSet<Place> = pool
            .into_iter()
            .zip(mask)
            .filter(|(_, m)| *m)
            .map(|(p, _)| p)
            .collect();
        let mode = if cof { Mode::Cofinite } else { Mode::Finite };
        ConstructibleSubset::new(&f, mode, places.into_iter().collect()).unwrap()
    })
}

proptest! {
    #[test]
    fn chi_is_additive(a in subset(), b in subset()) {
        let lhs = &chi_of(&a.union(&b).unwrap()) + &chi_of(&a.intersection(&b).unwrap());
        prop_assert_eq!(lhs, &chi_of(&a) + &chi_of(&b));
        prop_assert_eq!(&chi_of(&a) + &chi_of(&a.complement()), ChiExpr::u());
    }

    #[test]
    fn boolean_laws(a in subset(), b in subset(), c in subset()) {
        prop_assert_eq!(a.union(&b).unwrap(), b.union(&a).unwrap());
        prop_assert_eq!(
            a.union(&b).unwrap().complement(),
            a.complement().intersection(&b.complement()).unwrap()
        );
        prop_assert_eq!(
            a.intersection(&b.union(&c).unwrap()).unwrap(),
            a.intersection(&b).unwrap().union(&a.intersection(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.difference(&b).unwrap(), a.intersection(&b.complement()).unwrap());
        prop_assert_eq!(a.complement().complement(), a);
    }

    #[test]
    fn hasse_herbrand_inverse(raw in prop::collection::vec(1i64..8, 0..7)) {
        let iv: Vec<Q> = raw.iter().map(|&i| qi(i)).collect();
        let e = iv.len() + 1;
        let prof = ram_profile(&iv, e);
        prop_assert_eq!(prof.eta.eval(&qi(-1)), Some(qi(-1)));
        prop_assert!(prof.eta.is_strictly_increasing());
        prop_assert_eq!(prof.eta_by_integral(), prof.eta.clone());
        let (lo, hi) = prof.eta.domain();
        let id = prof.psi.compose(&prof.eta).unwrap();
        prop_assert_eq!(id, ramification::local_ram::PiecewiseLinear::identity(lo.clone(), hi.clone()));
        // slope on each piece is |G_a| / e
        let verts = prof.eta.vertices().to_vec();
        for (w, s) in verts.windows(2).zip(prof.eta.slopes()) {
            let mid = (&w[0].0 + &w[1].0) / qi(2);
            let size = prof.lower_group_size(&mid).unwrap();
            prop_assert_eq!(s, Q::new(BigInt::from(size), BigInt::from(e)));
        }
        prop_assert_eq!(prof.lower_group_size(&qi(-1)), Some(e as u64));
        prop_assert_eq!(prof.lower_group_size(&qi(100)), Some(1));
    }

    #[test]
    fn ball_counts_of_ultrametric_trees(split in prop::collection::vec(1i64..5, 1..5)) {
        // nested clusters: root k meets every earlier root at distance
        // depths[k-1]/2, and the depths shrink with k
        let mut depths: Vec<i64> = split.clone();
        depths.sort_unstable_by(|a, b| b.cmp(a));
        let n = depths.len() + 1;
        let mut delta = vec![vec![None; n]; n];
        for j in 0..n {
            for k in (j + 1)..n {
                let d = Q::new(BigInt::from(depths[k - 1]), BigInt::from(2));
                delta[j][k] = Some(d.clone());
                delta[k][j] = Some(d);
            }
        }
        let cd = ClusterData::from_delta(delta);
        prop_assert!(cd.is_ultrametric());
        prop_assert_eq!(cd.ball_count.eval(&qi(0)), Some(1));
        prop_assert!(cd.ball_count.is_non_decreasing());
        prop_assert_eq!(*cd.ball_count.values().last().unwrap(), n as u64);
        prop_assert!(cd.partition_at(&qi(0)).iter().all(|c| *c == 0));
    }
}
