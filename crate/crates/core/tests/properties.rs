use std::collections::BTreeMap;

use num_bigint::BigInt;
use proptest::prelude::*;

use glinf::algebra::{ad_degree, bracket, bracket_units, LieElement, MatrixUnit, SupportSet, Window};
use glinf::linalg::{kernel, SparseVec, Subspace};
use glinf::lr_tensor::{gl_dim, lr_coefficient};
use glinf::realized::{ModuleVector, RealizedModule};
use glinf::scalar::{int, Scalar};
use glinf::singular::decompose_completely;
use glinf::weights::{Partition, Weight};

fn unit() -> impl Strategy<Value = MatrixUnit> {
    (-2i64..=3, -2i64..=3).prop_map(|(m, n)| MatrixUnit::new(m, n))
}

fn element() -> impl Strategy<Value = LieElement> {
    prop::collection::vec((unit(), -3i64..=3), 0..4)
        .prop_map(|terms| LieElement::from_terms(terms.into_iter().map(|(e, c)| (e, int(c)))))
}

fn partition(max: u32) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0u32..=max, 0..=3).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::from_padded(v).unwrap()
    })
}

fn support() -> impl Strategy<Value = SupportSet> {
    prop::collection::btree_set(-3i64..=4, 1..=3).prop_map(|s| SupportSet::new(s.into_iter().collect()).unwrap())
}

const MODULES: [&str; 5] = [
    "A(2) @ window[0,3]",
    "Wedge(2) @ window[0,3]",
    "A(1) (x) Wedge(2) @ window[0,3]",
    "A(2) (+) A(1) (x) A(1) @ window[0,3]",
    "Wedge(1) (x) A(1) (x) Wedge(1) @ window[0,3]",
];

fn module_and_basis() -> impl Strategy<Value = (RealizedModule, ModuleVector)> {
    (0..MODULES.len(), any::<prop::sample::Index>()).prop_map(|(k, idx)| {
        let m: RealizedModule = MODULES[k].parse().unwrap();
        let basis = m.basis();
        let b = basis[idx.index(basis.len())].clone();
        (m, ModuleVector::basis(b))
    })
}

fn window_unit() -> impl Strategy<Value = MatrixUnit> {
    (0i64..=3, 0i64..=3).prop_map(|(m, n)| MatrixUnit::new(m, n))
}

proptest! {
    #[test]
    fn bracket_is_antisymmetric(a in element(), b in element()) {
        prop_assert_eq!(bracket(&a, &b), -&bracket(&b, &a));
    }

    #[test]
    fn bracket_satisfies_jacobi(a in element(), b in element(), c in element()) {
        let t1 = bracket(&a, &bracket(&b, &c));
        let t2 = bracket(&b, &bracket(&c, &a));
        let t3 = bracket(&c, &bracket(&a, &b));
        prop_assert!((&(&t1 + &t2) + &t3).is_zero());
    }

    #[test]
    fn bracket_respects_support_grading(a in unit(), b in unit(), s in support()) {
        let d = ad_degree(a, &s) + ad_degree(b, &s);
        for (e, _) in bracket_units(a, b).terms() {
            prop_assert_eq!(ad_degree(*e, &s), d);
        }
    }

    #[test]
    fn action_is_a_representation((m, v) in module_and_basis(), a in window_unit(), b in window_unit()) {
        let lhs = m.act(&bracket_units(a, b), &v).unwrap();
        let ab = m.act_unit(a, &m.act_unit(b, &v).unwrap()).unwrap();
        let ba = m.act_unit(b, &m.act_unit(a, &v).unwrap()).unwrap();
        prop_assert_eq!(lhs, ab.sub(&ba));
    }

    #[test]
    fn units_shift_weights((m, v) in module_and_basis(), e in window_unit()) {
        let w = v.weight().unwrap();
        let image = m.act_unit(e, &v).unwrap();
        if !image.is_zero() {
            let expected = &(&w + &Weight::epsilon(e.row)) - &Weight::epsilon(e.col);
            prop_assert_eq!(image.weight(), Some(expected));
        }
    }

    #[test]
    fn identity_sum_acts_by_level((m, v) in module_and_basis()) {
        let b = v.terms().next().unwrap().0.clone();
        let level = m.windowed_i_infinity_eigenvalue(&b).unwrap();
        prop_assert_eq!(level, int(m.level() as i64));
    }

    #[test]
    fn lr_is_symmetric(l in partition(3), m in partition(3), nu in partition(4)) {
        prop_assert_eq!(lr_coefficient(&l, &m, &nu), lr_coefficient(&m, &l, &nu));
    }

    #[test]
    fn lr_dimension_identity(l in partition(3), m in partition(3), extra in 0usize..=1) {
        let n = (l.len() + m.len()).max(1) + extra;
        let size = l.size() + m.size();
        let rhs: u128 = Partition::all_of(size, n)
            .iter()
            .map(|nu| lr_coefficient(&l, &m, nu) as u128 * gl_dim(nu, n).unwrap())
            .sum();
        prop_assert_eq!(gl_dim(&l, n).unwrap() * gl_dim(&m, n).unwrap(), rhs);
    }

    #[test]
    fn weight_literals_round_trip(entries in prop::collection::btree_map(-4i64..=4, -5i64..=5, 0..4)) {
        let w = Weight::from_ints(entries);
        prop_assert_eq!(w.to_string().parse::<Weight>().unwrap(), w.clone());
        let pairs = format!("{:?}", w.as_ints().unwrap()).replace('(', "[").replace(')', "]");
        prop_assert_eq!(pairs.parse::<Weight>().unwrap(), w);
    }

    #[test]
    fn lie_literals_round_trip(a in element()) {
        prop_assert_eq!(a.to_string().parse::<LieElement>().unwrap(), a);
    }

    #[test]
    fn kernel_vectors_annihilate(cols in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 1..=5)) {
        let columns: Vec<SparseVec<usize>> = cols
            .iter()
            .map(|c| c.iter().enumerate().filter(|(_, x)| **x != 0).map(|(i, x)| (i, int(*x))).collect())
            .collect();
        let k = kernel(&columns);
        let mut span = Subspace::new();
        for c in &columns {
            span.insert(c);
        }
        prop_assert_eq!(k.len() + span.dim(), columns.len());
        for v in &k {
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (c, x) in columns.iter().zip(v) {
                for (i, y) in c {
                    *acc.entry(*i).or_insert_with(|| int(0)) += y * Scalar::from_integer(x.clone());
                }
            }
            prop_assert!(acc.values().all(|x| *x == int(0)));
            prop_assert!(v.iter().any(|x| *x != BigInt::from(0)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn reduction_ignores_factor_order(k in 0..3usize) {
        let lits = ["A(2) (x) Wedge(1) @ window[0,4]", "Wedge(2) (x) A(1) @ window[0,5]", "A(1) (x) Wedge(1) (x) A(1) @ window[0,5]"];
        let m: RealizedModule = lits[k].parse().unwrap();
        let a = decompose_completely(&m).unwrap().multiset();
        let b = decompose_completely(&m.reversed_factors()).unwrap().multiset();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn reduction_is_shift_invariant(k in 0..3usize, c in -3i64..=3) {
        let lits = ["A(2) @ window[0,4]", "Wedge(2) (x) Wedge(1) @ window[0,5]", "A(1) (x) A(1) (+) Wedge(2) @ window[0,4]"];
        let m: RealizedModule = lits[k].parse().unwrap();
        let w = m.window();
        let shifted = m.with_window(Window::new(w.lo + c, w.hi + c).unwrap());
        let a = decompose_completely(&m).unwrap();
        let b = decompose_completely(&shifted).unwrap();
        prop_assert_eq!(a.multiset(), b.multiset());
        for (ra, rb) in a.records.iter().zip(&b.records) {
            let moved: Vec<i64> = ra.support.iter().map(|i| i + c).collect();
            prop_assert_eq!(&moved, &rb.support);
        }
    }
}
