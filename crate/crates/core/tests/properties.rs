use chevalley::gf::{linalg, Elem, Field};
use chevalley::poly::{parse_polynomial, PolySystem, Polynomial};
use chevalley::zeroset::{count_zeros, enumerate_zeros, is_affine_space, AffineSpace, Budget};
use proptest::prelude::*;

const ORDERS: [u64; 10] = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27];

fn field(i: usize) -> Field {
    Field::of_order(ORDERS[i % ORDERS.len()]).unwrap()
}

fn elem(f: &Field, raw: u32) -> Elem {
    Elem(raw % f.order())
}

/// A polynomial in `n` variables from raw (exponents, coefficient) draws.
fn poly(f: &Field, n: usize, raw: &[(Vec<u32>, u32)]) -> Polynomial {
    let terms = raw.iter().map(|(e, c)| (e[..n].to_vec(), elem(f, *c)));
    Polynomial::from_terms(f, n, terms).unwrap()
}

fn raw_terms(max_exp: u32) -> impl Strategy<Value = Vec<(Vec<u32>, u32)>> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, 3), any::<u32>()), 0..8)
}

fn invertible(f: &Field, n: usize, raw: &[u32]) -> Option<Vec<Vec<Elem>>> {
    let m: Vec<Vec<Elem>> = (0..n)
        .map(|i| (0..n).map(|j| elem(f, raw[i * n + j])).collect())
        .collect();
    linalg::inverse(f, &m).ok().map(|_| m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_axioms(fi in 0usize..10, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = field(fi);
        let (a, b, c) = (elem(&f, a), elem(&f, b), elem(&f, c));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
        }
        prop_assert_eq!(f.pow(a, f.order() as u64), a);
        let p = f.characteristic() as u64;
        prop_assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
    }

    #[test]
    fn elements_parse_back(fi in 0usize..10, a in any::<u32>()) {
        let f = field(fi);
        let a = elem(&f, a);
        prop_assert_eq!(f.parse_element(&f.format(a)).unwrap(), a);
        prop_assert_eq!(f.from_coords(&f.coords(a)).unwrap(), a);
    }

    #[test]
    fn polynomials_print_and_parse_back(fi in 0usize..10, raw in raw_terms(4)) {
        let f = field(fi);
        let p = poly(&f, 3, &raw);
        let back = parse_polynomial(&p.to_string(), &f, 3).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn compiled_matches_direct_evaluation(fi in 0usize..10, raw in raw_terms(12), pt in prop::collection::vec(any::<u32>(), 3)) {
        let f = field(fi);
        let p = poly(&f, 3, &raw);
        let x: Vec<Elem> = pt.iter().map(|&c| elem(&f, c)).collect();
        prop_assert_eq!(p.compile().eval(&x), p.evaluate(&x).unwrap());
    }

    #[test]
    fn ring_operations_agree_pointwise(fi in 0usize..10, r1 in raw_terms(3), r2 in raw_terms(3), pt in prop::collection::vec(any::<u32>(), 3)) {
        let f = field(fi);
        let (p, q) = (poly(&f, 3, &r1), poly(&f, 3, &r2));
        let x: Vec<Elem> = pt.iter().map(|&c| elem(&f, c)).collect();
        let (px, qx) = (p.evaluate(&x).unwrap(), q.evaluate(&x).unwrap());
        prop_assert_eq!(p.add(&q).unwrap().evaluate(&x).unwrap(), f.add(px, qx));
        prop_assert_eq!(p.mul(&q).unwrap().evaluate(&x).unwrap(), f.mul(px, qx));
    }

    #[test]
    fn affine_substitution_preserves_zero_count(
        fi in 0usize..6,
        raw in raw_terms(3),
        m in prop::collection::vec(any::<u32>(), 9),
        b in prop::collection::vec(any::<u32>(), 3),
    ) {
        let f = field(fi);
        let p = poly(&f, 3, &raw);
        prop_assume!(!p.is_zero());
        let Some(a) = invertible(&f, 3, &m) else { return Ok(()) };
        let b: Vec<Elem> = b.iter().map(|&c| elem(&f, c)).collect();
        let moved = p.substitute_linear(&a, &b).unwrap();
        prop_assert_eq!(moved.degree(), p.degree());
        let full = AffineSpace::full(&f, 3);
        let n0 = count_zeros(&PolySystem::single(p), &full, Budget::DEFAULT).unwrap();
        let n1 = count_zeros(&PolySystem::single(moved), &full, Budget::DEFAULT).unwrap();
        prop_assert_eq!(n0, n1);
    }

    #[test]
    fn affineness_is_preserved_by_affine_maps(
        fi in 0usize..4,
        raw in raw_terms(2),
        m in prop::collection::vec(any::<u32>(), 9),
    ) {
        let f = field(fi);
        let p = poly(&f, 3, &raw);
        let Some(a) = invertible(&f, 3, &m) else { return Ok(()) };
        let full = AffineSpace::full(&f, 3);
        let z0 = enumerate_zeros(&PolySystem::single(p.clone()), &full, Budget::DEFAULT).unwrap();
        prop_assume!(!z0.is_empty());
        let zero = vec![Elem::ZERO; 3];
        let z1 = enumerate_zeros(&PolySystem::single(p.substitute_linear(&a, &zero).unwrap()), &full, Budget::DEFAULT).unwrap();
        let v0 = is_affine_space(&f, z0.points()).unwrap();
        let v1 = is_affine_space(&f, z1.points()).unwrap();
        prop_assert_eq!(v0.is_affine, v1.is_affine);
        prop_assert_eq!(v0.rank, v1.rank);
        if let Some(w) = &v0.witness {
            prop_assert!(w.confirms(&f, z0.points()));
        }
    }

    #[test]
    fn warning_congruence_for_low_degree(fi in 0usize..6, raw in raw_terms(1)) {
        // degree at most 1 in each of 3 variables; keep total degree < 3
        let f = field(fi);
        let p = poly(&f, 3, &raw);
        prop_assume!(p.degree().is_some_and(|d| d < 3));
        let n = count_zeros(&PolySystem::single(p), &AffineSpace::full(&f, 3), Budget::DEFAULT).unwrap();
        prop_assert_eq!(n % f.characteristic() as u64, 0);
    }
}
