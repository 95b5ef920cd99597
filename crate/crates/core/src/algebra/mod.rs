//! Exact linear combinations of chord diagrams and the operations on them:
//! connected sum, disjoint union, truncated series, the wheels formula for the
//! unknot and reduction modulo the four-term relation.

mod jacobi;
mod mod4t;
mod series;
mod wheels;

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::diagrams::{ChordDiagram, DiagramJson};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

pub use jacobi::{chi, chi_linear, stu_expand, stu_expand_with, JacobiConfig, JacobiDiagram, WheelSum};
pub use mod4t::{equal_mod4t, mod4t_basis, mod4t_reduce, Mod4TBasis, Mod4TForm};
pub use series::{series_exp, series_inverse, series_sqrt, GradedAlgebra};
pub use wheels::{bernoulli, nu, taylor_b, wheel_series, MAX_NU_DEGREE};

/// A finite combination of chord diagrams on `m` circles, truncated above
/// degree `N`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramSum {
    circles: usize,
    truncation: usize,
    terms: BTreeMap<ChordDiagram, Rational>,
}

impl DiagramSum {
    pub fn zero(circles: usize, truncation: usize) -> Self {
        Self { circles, truncation, terms: BTreeMap::new() }
    }

    /// The empty diagram with coefficient 1.
    pub fn one(circles: usize, truncation: usize) -> Self {
        let mut s = Self::zero(circles, truncation);
        s.terms.insert(ChordDiagram::empty(circles), Rational::one());
        s
    }

    pub fn monomial(d: ChordDiagram, coeff: Rational, truncation: usize) -> Self {
        let mut s = Self::zero(d.circle_count(), truncation);
        s.add_term(d, coeff).expect("circle count matches");
        s
    }

    pub fn circles(&self) -> usize {
        self.circles
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn terms(&self) -> &BTreeMap<ChordDiagram, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coeff * d`. Diagrams above the truncation degree are dropped.
    pub fn add_term(&mut self, d: ChordDiagram, coeff: Rational) -> Result<()> {
        if d.circle_count() != self.circles {
            return Err(Error::CircleMismatch { expected: self.circles, got: d.circle_count() });
        }
        if d.degree() > self.truncation || coeff.is_zero() {
            return Ok(());
        }
        let entry = self.terms.entry(d);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
        Ok(())
    }

    /// The stored coefficient of `d` in this representative (0 if absent).
    pub fn coefficient(&self, d: &ChordDiagram) -> Result<Rational> {
        if d.circle_count() != self.circles {
            return Err(Error::CircleMismatch { expected: self.circles, got: d.circle_count() });
        }
        Ok(self.terms.get(d).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn degree_part(&self, k: usize) -> Self {
        let mut out = Self::zero(self.circles, self.truncation);
        out.terms = self.terms.iter().filter(|(d, _)| d.degree() == k).map(|(d, c)| (d.clone(), c.clone())).collect();
        out
    }

    /// Sum of all coefficients of degree-`k` diagrams.
    pub fn coefficient_sum(&self, k: usize) -> Rational {
        self.terms.iter().filter(|(d, _)| d.degree() == k).map(|(_, c)| c.clone()).sum()
    }

    pub fn truncated(&self, n: usize) -> Self {
        let mut out = Self::zero(self.circles, n);
        out.terms = self.terms.iter().filter(|(d, _)| d.degree() <= n).map(|(d, c)| (d.clone(), c.clone())).collect();
        out
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.circles != other.circles {
            return Err(Error::CircleMismatch { expected: self.circles, got: other.circles });
        }
        Ok(())
    }

    /// `self + c * other`; the result is truncated at the smaller degree.
    pub fn add_scaled(&self, other: &Self, c: &Rational) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.truncated(self.truncation.min(other.truncation));
        for (d, v) in &other.terms {
            out.add_term(d.clone(), v * c)?;
        }
        Ok(out)
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.add_scaled(other, &Rational::one())
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.add_scaled(other, &-Rational::one())
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.circles, self.truncation);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(d, v)| (d.clone(), v * c)).collect();
        }
        out
    }

    /// Connected sum on one circle, grafting `other` immediately after the
    /// first slot of each canonical diagram of `self`.
    pub fn connected_sum(&self, other: &Self) -> Result<Self> {
        self.connected_sum_at(other, 1)
    }

    /// Connected sum with the second circle spliced in after `at` slots of the
    /// first (clamped to the circle length).
    pub fn connected_sum_at(&self, other: &Self, at: usize) -> Result<Self> {
        for s in [self, other] {
            if s.circles != 1 {
                return Err(Error::Algebra(format!(
                    "connected sum is only defined on one circle, got {}",
                    s.circles
                )));
            }
        }
        let n = self.truncation.min(other.truncation);
        let mut out = Self::zero(1, n);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if a.degree() + b.degree() > n {
                    continue;
                }
                let sa = &a.circles()[0];
                let off = a.degree() as u16;
                let pos = at.min(sa.len());
                let mut seq: Vec<u16> = sa[..pos].to_vec();
                seq.extend(b.circles()[0].iter().map(|l| l + off));
                seq.extend_from_slice(&sa[pos..]);
                out.add_term(ChordDiagram::canonicalize_unchecked(&[seq]), ca * cb)?;
            }
        }
        Ok(out)
    }

    /// Disjoint union; the circles of `other` are relabeled after those of
    /// `self`.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let n = self.truncation.min(other.truncation);
        let mut out = Self::zero(self.circles + other.circles, n);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if a.degree() + b.degree() > n {
                    continue;
                }
                let off = a.degree() as u16;
                let mut seqs: Vec<Vec<u16>> = a.circles().to_vec();
                seqs.extend(b.circles().iter().map(|s| s.iter().map(|l| l + off).collect()));
                out.add_term(ChordDiagram::canonicalize_unchecked(&seqs), ca * cb).expect("circle count");
            }
        }
        out
    }

    /// Renames circles: circle `i` becomes circle `perm[i]` (0-based).
    pub fn relabel_circles(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.circles)?;
        let mut out = Self::zero(self.circles, self.truncation);
        for (d, c) in &self.terms {
            let mut seqs = vec![Vec::new(); self.circles];
            for (i, s) in d.circles().iter().enumerate() {
                seqs[perm[i]] = s.clone();
            }
            out.add_term(ChordDiagram::canonicalize_unchecked(&seqs), c.clone())?;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> DiagramSumJson {
        DiagramSumJson {
            circles: self.circles,
            truncation: self.truncation,
            terms: self
                .terms
                .iter()
                .map(|(d, c)| TermJson { diagram: d.to_json(), coeff: rational::format(c) })
                .collect(),
        }
    }

    pub fn from_json(json: &DiagramSumJson) -> Result<Self> {
        let mut out = Self::zero(json.circles, json.truncation);
        for t in &json.terms {
            out.add_term(ChordDiagram::from_json(&t.diagram)?, rational::parse(&t.coeff)?)?;
        }
        Ok(out)
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(Error::Invalid(format!("permutation has {} entries, expected {n}", perm.len())));
    }
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::Invalid(format!("not a permutation of 1..={n}: {perm:?}")));
        }
        seen[p] = true;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub diagram: DiagramJson,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramSumJson {
    pub circles: usize,
    pub truncation: usize,
    pub terms: Vec<TermJson>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::enumerate_by_degree;
    use crate::rational::{int, rat};

    fn chord() -> ChordDiagram {
        ChordDiagram::parallel(1)
    }

    #[test]
    fn coefficient_of_empty_sum_is_zero() {
        let a = DiagramSum::zero(2, 3);
        for d in enumerate_by_degree(2, 2) {
            assert_eq!(a.coefficient(&d).unwrap(), Rational::zero());
        }
        assert!(matches!(a.coefficient(&chord()), Err(Error::CircleMismatch { .. })));
    }

    #[test]
    fn adding_term_increases_coefficient() {
        let d = ChordDiagram::parallel(2);
        let mut a = DiagramSum::monomial(d.clone(), rat(1, 3), 4);
        a.add_term(d.clone(), rat(1, 6)).unwrap();
        assert_eq!(a.coefficient(&d).unwrap(), rat(1, 2));
        a.add_term(d.clone(), rat(-1, 2)).unwrap();
        assert!(a.is_zero());
    }

    #[test]
    fn connected_sum_unit_and_parallel() {
        let a = DiagramSum::monomial(ChordDiagram::parallel(3), int(2), 4);
        assert_eq!(a.connected_sum(&DiagramSum::one(1, 4)).unwrap(), a);
        let c = DiagramSum::monomial(chord(), int(1), 4);
        let cc = c.connected_sum(&c).unwrap();
        assert_eq!(cc, DiagramSum::monomial(ChordDiagram::parallel(2), int(1), 4));
        assert!(DiagramSum::one(2, 1).connected_sum(&c).is_err());
    }

    #[test]
    fn disjoint_union_relabels() {
        let e = DiagramSum::one(1, 3).disjoint_union(&DiagramSum::one(1, 3));
        assert_eq!(e, DiagramSum::one(2, 3));
        let c = DiagramSum::monomial(chord(), rat(1, 2), 3);
        let u = c.disjoint_union(&c);
        let d1 = ChordDiagram::parallel(1);
        let both = ChordDiagram::canonicalize(&[vec![0, 0], vec![1, 1]]).unwrap();
        assert_eq!(u.coefficient(&both).unwrap(), rat(1, 4));
        assert_eq!(u.terms().len(), 1);
        let _ = d1;
    }

    #[test]
    fn json_roundtrip() {
        let mut a = DiagramSum::one(2, 2);
        a.add_term(ChordDiagram::single_chord(2, 0, 1), rat(-3, 4)).unwrap();
        let text = serde_json::to_string(&a.to_json()).unwrap();
        assert!(text.contains("\"coeff\":\"-3/4\""));
        let back: DiagramSumJson = serde_json::from_str(&text).unwrap();
        assert_eq!(DiagramSum::from_json(&back).unwrap(), a);
    }

    #[test]
    fn relabel_swaps_circles() {
        let d = ChordDiagram::canonicalize(&[vec![0, 0], vec![]]).unwrap();
        let a = DiagramSum::monomial(d, int(1), 2);
        let b = a.relabel_circles(&[1, 0]).unwrap();
        let e = ChordDiagram::canonicalize(&[vec![], vec![0, 0]]).unwrap();
        assert_eq!(b.coefficient(&e).unwrap(), int(1));
        assert!(a.relabel_circles(&[0, 0]).is_err());
    }
}
