//! The shipped words: validation, splitting, labels.

use kzlab::algebra::{equal_mod4t, mod4t_reduce};
use kzlab::qtangle::{corpus, evaluate_range, integrate, linking_matrix, validate, LinkPresentation, QTangleWord};
use kzlab::rational::int;
use kzlab::suite::expected_linking;
use kzlab::{ChordDiagram, Error};

#[test]
fn every_word_validates_with_expected_linking() {
    assert_eq!(corpus::names().len(), 9);
    for link in corpus::embedded() {
        let (levels, _) = validate(link.word()).unwrap();
        assert_eq!(levels.last().unwrap().leaf_count(), 0);
        assert_eq!(Some(linking_matrix(&link).unwrap()), expected_linking(&link.name), "{}", link.name);
    }
}

#[test]
fn degree_zero_is_one() {
    for link in corpus::embedded() {
        let z = integrate(&link, 2).unwrap();
        assert_eq!(z.coefficient(&ChordDiagram::empty(link.component_count())).unwrap(), int(1));
    }
}

#[test]
fn splitting_a_word_anywhere() {
    for link in corpus::embedded() {
        let len = link.word().len();
        let whole = evaluate_range(&link, 0..len, 2).unwrap();
        assert_eq!(whole.close().unwrap(), integrate(&link, 2).unwrap());
        for cut in 1..len {
            let lower = evaluate_range(&link, 0..cut, 2).unwrap();
            let upper = evaluate_range(&link, cut..len, 2).unwrap();
            let joined = lower.compose(&upper).unwrap();
            assert_eq!(joined.close().unwrap(), whole.close().unwrap(), "{} at {cut}", link.name);
        }
    }
}

#[test]
fn relabeling_permutes_circles() {
    let base = corpus::load("chain3").unwrap();
    let perm = vec![2, 0, 1];
    let moved = base.clone().with_relabel(perm.clone()).unwrap();
    let z = integrate(&base, 2).unwrap();
    assert_eq!(integrate(&moved, 2).unwrap(), z.relabel_circles(&perm).unwrap());
    let (lk, lk2) = (linking_matrix(&base).unwrap(), linking_matrix(&moved).unwrap());
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(lk2[perm[i]][perm[j]], lk[i][j]);
        }
    }
    assert!(base.with_relabel(vec![0, 0, 1]).is_err());
}

#[test]
fn components_numbered_by_first_cup() {
    // a kinked circle first, then a plain one opened to its left
    let text = "cup@1; cup'@3; assoc-@2; x+@2; assoc+@2; cap'@3; cup@1; cap@1; cap@1";
    let l = LinkPresentation::parse("x", text).unwrap();
    assert_eq!(l.component_count(), 2);
    let lk = linking_matrix(&l).unwrap();
    assert_eq!(lk, vec![vec![kzlab::rational::rat(1, 2), int(0)], vec![int(0), int(0)]]);
    let z = integrate(&l, 1).unwrap();
    assert_eq!(z.coefficient(&ChordDiagram::single_chord(2, 0, 0)).unwrap(), kzlab::rational::rat(1, 2));
    assert_eq!(z.coefficient(&ChordDiagram::single_chord(2, 1, 1)).unwrap(), int(0));
}

#[test]
fn hopf_words_agree() {
    let a = integrate(&corpus::load("hopf+").unwrap(), 3).unwrap();
    let b = integrate(&corpus::load("chain2").unwrap(), 3).unwrap();
    assert_ne!(a, b);
    assert!(equal_mod4t(&a, &b, 3).unwrap());
    let c = integrate(&corpus::load("hopf-").unwrap(), 3).unwrap();
    assert_ne!(mod4t_reduce(&a, 1).unwrap(), mod4t_reduce(&c, 1).unwrap());
}

#[test]
fn unlink_is_trivial_across_degrees() {
    let z = integrate(&corpus::load("unlink2").unwrap(), 3).unwrap();
    let plain = integrate(&LinkPresentation::parse("u", "cup@1; cup@3; cap@3; cap@1").unwrap(), 3).unwrap();
    assert!(equal_mod4t(&z, &plain, 3).unwrap());
}

#[test]
fn bad_words() {
    let err = |text: &str| LinkPresentation::parse("w", text).unwrap_err();
    assert!(matches!(err("cup@1; cap'@1"), Error::Validate { slice: 2, .. }));
    assert!(matches!(err("cup@1; cup@3; x+@2; cap@3; cap@1"), Error::Validate { slice: 3, .. }));
    assert!(matches!(err("cup@1"), Error::Validate { slice: 1, .. }));
    assert!(matches!(err("cup@1\ncap@1\nfoo@1"), Error::Parse { line: 3, column: 1, .. }));
    assert!(matches!(err("cup@1; cap@x"), Error::Parse { line: 1, column: 8, .. }));
    assert_eq!(QTangleWord::parse("# nothing\n").unwrap().len(), 0);
}
