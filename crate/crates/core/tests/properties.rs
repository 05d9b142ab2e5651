use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use tli_core::coloring::{coloring_system, module_order};
use tli_core::fixtures;
use tli_core::group::Letter;
use tli_core::reidemeister::{apply_move, enumerate_sites};
use tli_core::smith::{smith_decomposition, smith_normal_form};
use tli_core::tait::{laplacian, TaitEdge, TaitGraph};
use tli_core::{IntMatrix, LaurentMatrix, LaurentPoly, Monomial, SurfaceDiagram, Word};

fn poly(nvars: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-3i64..=3, nvars), -4i64..=4), 0..5)
        .prop_map(move |terms| LaurentPoly::from_terms(nvars, terms))
}

fn unit(nvars: usize) -> impl Strategy<Value = LaurentPoly> {
    (prop::collection::vec(-3i64..=3, nvars), prop::bool::ANY)
        .prop_map(|(e, neg)| LaurentPoly::term(Monomial(e), if neg { -1 } else { 1 }))
}

fn square(n: usize, nvars: usize) -> impl Strategy<Value = LaurentMatrix> {
    prop::collection::vec(poly(nvars), n * n).prop_map(move |v| {
        let m = tli_core::Matrix::from_fn(n, n, |i, j| v[i * n + j].clone());
        LaurentMatrix::new(nvars, m)
    })
}

fn int_matrix(max: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(-6i64..=6, r * c)
            .prop_map(move |v| IntMatrix::from_i64(&v.chunks(c).map(|x| x.to_vec()).collect::<Vec<_>>(), c))
    })
}

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec((0..3u8, prop::bool::ANY), 0..10).prop_map(|v| {
        Word(v.into_iter().map(|(g, inv)| Letter::new(((b'a' + g) as char).to_string(), if inv { -1 } else { 1 })).collect())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(a in poly(2), b in poly(2), c in poly(2)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &LaurentPoly::one(2), a.clone());
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
    }

    #[test]
    fn text_round_trip(a in poly(2)) {
        prop_assert_eq!(LaurentPoly::parse(&a.to_string(), 2).unwrap(), a);
    }

    #[test]
    fn exact_division(a in poly(2), b in poly(2)) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
    }

    #[test]
    fn unit_normalization(a in poly(2), u in unit(2)) {
        let n = a.unit_normalize();
        prop_assert_eq!(n.unit_normalize(), n.clone());
        prop_assert_eq!((&a * &u).unit_normalize(), n);
    }

    #[test]
    fn determinant_is_multiplicative(a in square(3, 1), b in square(3, 1)) {
        let lhs = a.mul(&b).determinant().unwrap();
        prop_assert_eq!(lhs, &a.determinant().unwrap() * &b.determinant().unwrap());
    }

    #[test]
    fn determinant_of_transpose_and_bar(a in square(3, 2)) {
        let d = a.determinant().unwrap();
        prop_assert_eq!(a.transpose().determinant().unwrap(), d.clone());
        prop_assert_eq!(a.bar().determinant().unwrap(), d.bar());
        prop_assert_eq!(a.eval_ones().determinant().unwrap(), d.eval_ones());
    }

    #[test]
    fn smith_form(m in int_matrix(5)) {
        let dec = smith_decomposition(&m);
        prop_assert_eq!(dec.u.mul(&m).mul(&dec.v), dec.d.clone());
        prop_assert!(dec.u.determinant().unwrap().abs_is_one());
        prop_assert!(dec.v.determinant().unwrap().abs_is_one());
        let f = &dec.snf.invariant_factors;
        for w in f.windows(2) {
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero()));
        }
        prop_assert_eq!(smith_normal_form(&m.transpose()).invariant_factors, f.clone());
    }

    #[test]
    fn free_reduction(w in word(), v in word()) {
        let r = w.free_reduce();
        prop_assert_eq!(r.free_reduce(), r.clone());
        prop_assert!(w.concat(&w.inverse()).free_reduce().is_empty());
        prop_assert_eq!(w.concat(&v).inverse().free_reduce(), v.inverse().concat(&w.inverse()).free_reduce());
    }

    #[test]
    fn random_graph_laplacians(edges in prop::collection::vec((0..3usize, 0..3usize, prop::bool::ANY, prop::collection::vec(-2i64..=2, 2)), 1..7)) {
        let g = TaitGraph {
            nvars: 2,
            faces: vec![0, 1, 2],
            edges: edges.into_iter().enumerate().map(|(i, (from, to, pos, label))| TaitEdge {
                crossing: i, from, to, weight: if pos { 1 } else { -1 }, label,
            }).collect(),
        };
        let ld = laplacian(&g);
        prop_assert_eq!(ld.laurent.bar().transpose(), ld.laurent.clone());
        prop_assert_eq!(ld.laurent.eval_ones(), ld.int.clone());
        for r in ld.int.to_rows() {
            prop_assert!(r.iter().sum::<BigInt>().is_zero());
        }
    }

    #[test]
    fn moved_diagrams_revalidate(pick in prop::collection::vec(any::<prop::sample::Index>(), 1..4), f in 0..fixtures::NAMES.len()) {
        let mut d = fixtures::load(fixtures::NAMES[f]);
        for ix in pick {
            let sites = enumerate_sites(&d);
            d = apply_move(&d, &sites[ix.index(sites.len())]).unwrap();
        }
        let again = SurfaceDiagram::from_json(&d.to_json()).unwrap();
        prop_assert_eq!(&again, &d);
        prop_assert!(d.face_sums().iter().all(|s| s.iter().all(|&x| x == 0)));
        if let Ok(sh) = d.checkerboard_shade() {
            let cs = coloring_system(&d, &sh).unwrap();
            prop_assert_eq!(cs.laurent.eval_ones(), cs.int.clone());
            prop_assert!(module_order(&cs).is_ok());
        }
    }
}

trait AbsOne {
    fn abs_is_one(&self) -> bool;
}

impl AbsOne for BigInt {
    fn abs_is_one(&self) -> bool {
        self.is_one() || (-self).is_one()
    }
}
