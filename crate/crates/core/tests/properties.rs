//! Randomized checks of canonical forms, linearity and the series maps.

use kzlab::algebra::{equal_mod4t, series_sqrt, DiagramSum, GradedAlgebra, JacobiConfig, WheelSum};
use kzlab::diagrams::{enumerate_by_degree, enumerate_by_matrix, matrices_of_degree};
use kzlab::invariants::l_s;
use kzlab::qtangle::{t_chord, Dir, TangleDiagramSum};
use kzlab::rational::rat;
use kzlab::{ChordDiagram, Rational};
use proptest::prelude::*;

/// Random raw diagram: `k` chords over `m` circles, as label sequences.
fn raw_diagram(max_m: usize, max_k: usize) -> impl Strategy<Value = Vec<Vec<usize>>> {
    (1..=max_m, 0..=max_k).prop_flat_map(|(m, k)| {
        (Just(m), Just(k), proptest::collection::vec(0..m, 2 * k), Just(()).prop_perturb(move |_, mut rng| {
            let mut labels: Vec<usize> = (0..k).flat_map(|l| [l, l]).collect();
            for i in (1..labels.len()).rev() {
                labels.swap(i, rng.random_range(0..=i));
            }
            labels
        }))
            .prop_map(|(m, _k, circle, labels)| {
                let mut seqs = vec![Vec::new(); m];
                for (c, l) in circle.into_iter().zip(labels) {
                    seqs[c].push(l);
                }
                seqs
            })
    })
}

fn coeff() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn random_sum(m: usize, n: usize) -> impl Strategy<Value = DiagramSum> {
    let pool: Vec<ChordDiagram> = (1..=n).flat_map(|k| enumerate_by_degree(m, k)).collect();
    proptest::collection::vec((proptest::sample::select(pool), coeff()), 0..6).prop_map(move |terms| {
        let mut a = DiagramSum::zero(m, n);
        for (d, c) in terms {
            a.add_term(d, c).unwrap();
        }
        a
    })
}

proptest! {
    #[test]
    fn canonical_form_ignores_rotation_and_labels(seqs in raw_diagram(3, 4), shift in 0usize..8, relabel in 0usize..24) {
        let d = ChordDiagram::canonicalize(&seqs).unwrap();
        let k = d.degree();
        let rotated: Vec<Vec<usize>> = seqs
            .iter()
            .map(|s| {
                let mut s = s.clone();
                if !s.is_empty() {
                    let r = shift % s.len();
                    s.rotate_left(r);
                }
                s.into_iter().map(|l| (l + relabel) % k.max(1)).collect()
            })
            .collect();
        prop_assert_eq!(ChordDiagram::canonicalize(&rotated).unwrap(), d.clone());
        let again: Vec<Vec<u16>> = d.circles().to_vec();
        prop_assert_eq!(ChordDiagram::canonicalize(&again).unwrap(), d);
    }

    #[test]
    fn enumeration_contains_every_diagram(seqs in raw_diagram(3, 3)) {
        let d = ChordDiagram::canonicalize(&seqs).unwrap();
        let cell = enumerate_by_matrix(seqs.len(), &d.type_matrix()).unwrap();
        prop_assert!(cell.binary_search(&d).is_ok());
    }

    #[test]
    fn type_sums_are_linear(a in random_sum(2, 3), b in random_sum(2, 3), x in coeff(), y in coeff()) {
        let combo = a.scaled(&x).add_scaled(&b, &y).unwrap();
        for k in 0..=3 {
            for s in matrices_of_degree(2, k) {
                let lhs = l_s(&combo, &s).unwrap();
                let rhs = &x * l_s(&a, &s).unwrap() + &y * l_s(&b, &s).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn sqrt_of_square_connected_sum(x in random_sum(1, 4)) {
        let a = x.unit().add_scaled(&x, &Rational::from_integer(1.into())).unwrap();
        let sq = a.product(&a).unwrap();
        let back = series_sqrt(&sq).unwrap();
        prop_assert!(equal_mod4t(&back, &a, 4).unwrap());
    }

    #[test]
    fn sqrt_of_square_disjoint_union(c2 in coeff(), c4 in coeff(), c22 in coeff()) {
        let mut a = WheelSum::zero(4);
        a.add_term(JacobiConfig::empty(), rat(1, 1));
        a.add_term(JacobiConfig::new(vec![2]).unwrap(), c2);
        a.add_term(JacobiConfig::new(vec![4]).unwrap(), c4);
        a.add_term(JacobiConfig::new(vec![2, 2]).unwrap(), c22);
        let back = series_sqrt(&a.product(&a).unwrap()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn stacking_is_associative(cs in proptest::collection::vec(coeff(), 9)) {
        let t = |a, b| t_chord(3, a, b, 3).unwrap();
        let pairs = [(0, 1), (1, 2), (0, 2)];
        let mut parts = Vec::new();
        for chunk in cs.chunks(3) {
            let mut s = TangleDiagramSum::identity(&[Dir::Up; 3], 3);
            for (c, &(a, b)) in chunk.iter().zip(&pairs) {
                s = s.add_scaled(&t(a, b), c).unwrap();
            }
            parts.push(s);
        }
        let l = parts[0].compose(&parts[1]).unwrap().compose(&parts[2]).unwrap();
        let r = parts[0].compose(&parts[1].compose(&parts[2]).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }
}
