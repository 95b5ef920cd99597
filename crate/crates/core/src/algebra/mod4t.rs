//! Quotient of the degree-`k` span of chord diagrams by the four-term
//! relators, via exact reduced row echelon form.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};
use once_cell::sync::Lazy;

use super::DiagramSum;
use crate::diagrams::{enumerate_by_degree, four_t_relators, ChordDiagram};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};

type Row = BTreeMap<usize, Rational>;

/// Reduced echelon basis of the relator span in degree `k` on `m` circles.
/// Columns are the degree-`k` diagrams in canonical order; each row's pivot
/// is its largest column, so normal forms are written in the smallest
/// diagrams.
#[derive(Debug)]
pub struct Mod4TBasis {
    circles: usize,
    degree: usize,
    columns: Vec<ChordDiagram>,
    index: HashMap<ChordDiagram, usize>,
    rows: HashMap<usize, Row>,
}

/// A class in the quotient: coordinates on the non-pivot diagrams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mod4TForm {
    pub circles: usize,
    pub degree: usize,
    pub coords: BTreeMap<ChordDiagram, Rational>,
}

impl Mod4TForm {
    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }
}

static CACHE: Lazy<RwLock<HashMap<(usize, usize), Arc<Mod4TBasis>>>> = Lazy::new(|| RwLock::new(HashMap::new()));

pub fn mod4t_basis(circles: usize, degree: usize) -> Arc<Mod4TBasis> {
    if let Some(b) = CACHE.read().unwrap().get(&(circles, degree)) {
        return b.clone();
    }
    let b = Arc::new(Mod4TBasis::new(circles, degree));
    CACHE.write().unwrap().insert((circles, degree), b.clone());
    b
}

impl Mod4TBasis {
    /// Builds a fresh basis, bypassing the shared cache.
    pub fn new(circles: usize, degree: usize) -> Self {
        let columns = enumerate_by_degree(circles, degree);
        let index: HashMap<ChordDiagram, usize> = columns.iter().cloned().enumerate().map(|(i, d)| (d, i)).collect();
        let mut basis = Self { circles, degree, columns, index, rows: HashMap::new() };
        for rel in four_t_relators(circles, degree) {
            let row: Row = rel.combined().into_iter().map(|(d, c)| (basis.index[&d], int(c))).collect();
            basis.insert(row);
        }
        basis
    }

    fn reduce_row(&self, mut v: Row) -> Row {
        let pivots: Vec<usize> = v.keys().copied().filter(|c| self.rows.contains_key(c)).collect();
        for p in pivots {
            let Some(c) = v.get(&p).cloned() else { continue };
            for (col, x) in &self.rows[&p] {
                let e = v.entry(*col).or_insert_with(Rational::zero);
                *e -= &c * x;
                if e.is_zero() {
                    v.remove(col);
                }
            }
        }
        v
    }

    fn insert(&mut self, row: Row) {
        let mut row = self.reduce_row(row);
        let Some((&pivot, lead)) = row.iter().next_back() else { return };
        let inv = Rational::one() / lead;
        row.values_mut().for_each(|x| *x *= &inv);
        for other in self.rows.values_mut() {
            if let Some(c) = other.get(&pivot).cloned() {
                for (col, x) in &row {
                    let e = other.entry(*col).or_insert_with(Rational::zero);
                    *e -= &c * x;
                    if e.is_zero() {
                        other.remove(col);
                    }
                }
            }
        }
        self.rows.insert(pivot, row);
    }

    pub fn circles(&self) -> usize {
        self.circles
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn diagram_count(&self) -> usize {
        self.columns.len()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Dimension of the quotient in this degree.
    pub fn dimension(&self) -> usize {
        self.columns.len() - self.rows.len()
    }

    /// Diagrams indexing the quotient coordinates.
    pub fn free_diagrams(&self) -> Vec<&ChordDiagram> {
        self.columns.iter().enumerate().filter(|(i, _)| !self.rows.contains_key(i)).map(|(_, d)| d).collect()
    }

    pub fn reduce(&self, a: &DiagramSum) -> Result<Mod4TForm> {
        if a.circles() != self.circles {
            return Err(Error::CircleMismatch { expected: self.circles, got: a.circles() });
        }
        let v: Row = a
            .terms()
            .iter()
            .filter(|(d, _)| d.degree() == self.degree)
            .map(|(d, c)| (self.index[d], c.clone()))
            .collect();
        let r = self.reduce_row(v);
        Ok(Mod4TForm {
            circles: self.circles,
            degree: self.degree,
            coords: r.into_iter().map(|(i, c)| (self.columns[i].clone(), c)).collect(),
        })
    }
}

/// Normal form of the degree-`k` part of `a` modulo four-term relators.
pub fn mod4t_reduce(a: &DiagramSum, k: usize) -> Result<Mod4TForm> {
    if k > a.truncation() {
        return Err(Error::InsufficientTruncation { needed: k, have: a.truncation() });
    }
    mod4t_basis(a.circles(), k).reduce(a)
}

/// Whether `a` and `b` agree modulo 4T in every degree `<= max_degree`.
pub fn equal_mod4t(a: &DiagramSum, b: &DiagramSum, max_degree: usize) -> Result<bool> {
    if a.circles() != b.circles() {
        return Err(Error::CircleMismatch { expected: a.circles(), got: b.circles() });
    }
    let diff = a.minus(b)?;
    for k in 0..=max_degree {
        if !mod4t_reduce(&diff, k)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::four_t_relators;

    #[test]
    fn relators_reduce_to_zero() {
        for m in 1..=2 {
            for k in 2..=3 {
                for r in four_t_relators(m, k) {
                    let mut a = DiagramSum::zero(m, k);
                    for (d, c) in &r.terms {
                        a.add_term(d.clone(), int(*c)).unwrap();
                    }
                    assert!(mod4t_reduce(&a, k).unwrap().is_zero());
                }
            }
        }
    }

    /// Framed chord diagrams on one circle modulo 4T have dimensions
    /// 1, 1, 2, 3, 6 in degrees 0..=4.
    #[test]
    fn one_circle_dimensions() {
        let dims: Vec<usize> = (0..=4).map(|k| mod4t_basis(1, k).dimension()).collect();
        assert_eq!(dims, vec![1, 1, 2, 3, 6]);
    }

    #[test]
    fn reduce_needs_truncation() {
        assert!(mod4t_reduce(&DiagramSum::one(1, 2), 3).is_err());
    }
}
