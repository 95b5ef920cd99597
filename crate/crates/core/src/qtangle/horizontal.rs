//! Horizontal chord diagrams on upward strands, compared modulo the
//! infinitesimal pure braid relations
//! `[t_ij, t_ik + t_jk] = 0` and `[t_ij, t_kl] = 0`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use itertools::Itertools;
use num_traits::{One, Zero};

use super::tangle::{Endpoint, TangleDiagramSum};
use crate::error::{Error, Result};
use crate::rational::Rational;

type Letter = (usize, usize);

fn letter(a: usize, b: usize) -> Letter {
    (a.min(b), a.max(b))
}

/// Reads a diagram as a word in the `t_ij`, bottom to top. Strands are named
/// by their bottom points.
fn to_word(names: &[usize], key: &[Vec<u16>]) -> Result<Vec<Letter>> {
    let mut ends: HashMap<u16, Vec<usize>> = HashMap::new();
    for (c, seq) in key.iter().enumerate() {
        for &l in seq {
            ends.entry(l).or_default().push(c);
        }
    }
    let mut after: HashMap<u16, Vec<u16>> = HashMap::new();
    let mut indeg: HashMap<u16, usize> = ends.keys().map(|&l| (l, 0)).collect();
    for seq in key {
        for (a, b) in seq.iter().tuple_windows() {
            after.entry(*a).or_default().push(*b);
            *indeg.get_mut(b).unwrap() += 1;
        }
    }
    let name = |l: u16| -> Result<Letter> {
        match ends[&l].as_slice() {
            [a, b] if a != b => Ok(letter(names[*a], names[*b])),
            _ => Err(Error::Invalid("chord with both ends on one strand".into())),
        }
    };
    let mut ready: BTreeSet<(Letter, u16)> = BTreeSet::new();
    for (&l, &d) in &indeg {
        if d == 0 {
            ready.insert((name(l)?, l));
        }
    }
    let mut word = Vec::with_capacity(ends.len());
    while let Some((t, l)) = ready.pop_first() {
        word.push(t);
        for &n in after.get(&l).map(Vec::as_slice).unwrap_or(&[]) {
            let d = indeg.get_mut(&n).unwrap();
            *d -= 1;
            if *d == 0 {
                ready.insert((name(n)?, n));
            }
        }
    }
    if word.len() != ends.len() {
        return Err(Error::Invalid("chords are not horizontal".into()));
    }
    Ok(word)
}

fn base_relators(n: usize) -> Vec<Vec<(Vec<Letter>, i64)>> {
    let mut out = Vec::new();
    for (i, j) in (0..n).tuple_combinations() {
        for k in 0..n {
            if k == i || k == j {
                continue;
            }
            let (tij, tik, tjk) = (letter(i, j), letter(i, k), letter(j, k));
            out.push(vec![
                (vec![tij, tik], 1),
                (vec![tij, tjk], 1),
                (vec![tik, tij], -1),
                (vec![tjk, tij], -1),
            ]);
        }
        for (k, l) in (0..n).tuple_combinations() {
            if [k, l].iter().any(|x| *x == i || *x == j) {
                continue;
            }
            out.push(vec![(vec![letter(i, j), letter(k, l)], 1), (vec![letter(k, l), letter(i, j)], -1)]);
        }
    }
    out
}

/// Reduced rows of the relation space in one degree, keyed by pivot word.
fn relation_rows(n: usize, degree: usize) -> Vec<(Vec<Letter>, BTreeMap<Vec<Letter>, Rational>)> {
    let letters: Vec<Letter> = (0..n).tuple_combinations().collect();
    let mut rows: Vec<(Vec<Letter>, BTreeMap<Vec<Letter>, Rational>)> = Vec::new();
    if degree < 2 {
        return rows;
    }
    let base = base_relators(n);
    for left in 0..=degree - 2 {
        let right = degree - 2 - left;
        for u in (0..left).map(|_| letters.iter()).multi_cartesian_product() {
            for v in (0..right).map(|_| letters.iter()).multi_cartesian_product() {
                for r in &base {
                    let mut row = BTreeMap::new();
                    for (w, c) in r {
                        let word: Vec<Letter> =
                            u.iter().map(|x| **x).chain(w.iter().copied()).chain(v.iter().map(|x| **x)).collect();
                        *row.entry(word).or_insert_with(Rational::zero) += Rational::from_integer((*c).into());
                    }
                    row.retain(|_, c| !c.is_zero());
                    if let Some(r) = eliminate(&rows, row) {
                        rows.push(r);
                    }
                }
            }
        }
    }
    rows
}

fn eliminate(
    rows: &[(Vec<Letter>, BTreeMap<Vec<Letter>, Rational>)],
    mut v: BTreeMap<Vec<Letter>, Rational>,
) -> Option<(Vec<Letter>, BTreeMap<Vec<Letter>, Rational>)> {
    for (pivot, row) in rows {
        if let Some(c) = v.get(pivot).cloned() {
            for (w, x) in row {
                let e = v.entry(w.clone()).or_insert_with(Rational::zero);
                *e -= &c * x;
                if e.is_zero() {
                    v.remove(w);
                }
            }
        }
    }
    let (pivot, lead) = v.iter().next_back().map(|(w, c)| (w.clone(), c.clone()))?;
    let inv = Rational::one() / lead;
    for c in v.values_mut() {
        *c *= &inv;
    }
    Some((pivot, v))
}

/// Whether two sums of horizontal diagrams on the same upward braid-like
/// skeleton agree modulo the pure braid relations. Supports degree `<= 3`.
pub fn braid_equal(a: &TangleDiagramSum, b: &TangleDiagramSum) -> Result<bool> {
    if a.skeleton() != b.skeleton() {
        return Ok(false);
    }
    let mut names = Vec::new();
    for c in &a.skeleton().components {
        match c.ends {
            Some((Endpoint::Bottom(i), Endpoint::Top(_))) => names.push(i),
            _ => return Err(Error::Skeleton("expected upward through-strands".into())),
        }
    }
    let n = names.len();
    let diff = a.add_scaled(b, &-Rational::one())?;
    let mut by_degree: BTreeMap<usize, BTreeMap<Vec<Letter>, Rational>> = BTreeMap::new();
    for (key, c) in diff.terms() {
        let w = to_word(&names, key)?;
        let e = by_degree.entry(w.len()).or_default().entry(w).or_insert_with(Rational::zero);
        *e += c;
    }
    for (degree, mut v) in by_degree {
        if degree > 3 {
            return Err(Error::UnsupportedTruncation { requested: degree, max: 3, reason: "braid relations".into() });
        }
        v.retain(|_, c| !c.is_zero());
        let rows = relation_rows(n, degree);
        if eliminate(&rows, v).is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}
