//! Wheels and their reduction to chord diagrams through the STU relation.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{DiagramSum, GradedAlgebra};
use crate::diagrams::{canonical_sequences, ChordDiagram};
use crate::error::{Error, Result};
use crate::rational::{factorial, Rational};

/// A disjoint union of wheels, recorded as the sorted multiset of leg counts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct JacobiConfig(Vec<u32>);

impl JacobiConfig {
    pub fn new(mut sizes: Vec<u32>) -> Result<Self> {
        if let Some(bad) = sizes.iter().find(|&&s| s < 2 || s % 2 == 1) {
            return Err(Error::Algebra(format!("wheel size {bad} is not an even number >= 2")));
        }
        sizes.sort_unstable();
        Ok(Self(sizes))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn wheels(&self) -> &[u32] {
        &self.0
    }

    /// Degree (chord count after STU reduction) equals the number of legs.
    pub fn degree(&self) -> usize {
        self.0.iter().map(|&s| s as usize).sum()
    }

    fn union(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        v.sort_unstable();
        Self(v)
    }
}

/// Formal combination of wheel configurations; the product is disjoint union.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WheelSum {
    truncation: usize,
    terms: BTreeMap<JacobiConfig, Rational>,
}

impl WheelSum {
    pub fn zero(truncation: usize) -> Self {
        Self { truncation, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, cfg: JacobiConfig, c: Rational) {
        if cfg.degree() > self.truncation || c.is_zero() {
            return;
        }
        let e = self.terms.entry(cfg.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&cfg);
        }
    }

    pub fn terms(&self) -> &BTreeMap<JacobiConfig, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, cfg: &JacobiConfig) -> Rational {
        self.terms.get(cfg).cloned().unwrap_or_else(Rational::zero)
    }
}

impl GradedAlgebra for WheelSum {
    fn truncation(&self) -> usize {
        self.truncation
    }

    fn unit(&self) -> Self {
        let mut s = Self::zero(self.truncation);
        s.add_term(JacobiConfig::empty(), Rational::one());
        s
    }

    fn product(&self, rhs: &Self) -> Result<Self> {
        let mut out = Self::zero(self.truncation.min(rhs.truncation));
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.union(b), ca * cb);
            }
        }
        Ok(out)
    }

    fn constant_term(&self) -> Rational {
        self.coefficient(&JacobiConfig::empty())
    }

    fn add_scaled(&self, rhs: &Self, c: &Rational) -> Result<Self> {
        let mut out = self.clone();
        out.truncation = self.truncation.min(rhs.truncation);
        out.terms.retain(|k, _| k.degree() <= out.truncation);
        for (k, v) in &rhs.terms {
            out.add_term(k.clone(), v * c);
        }
        Ok(out)
    }

    fn scaled(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.truncation);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }
}

/// A unitrivalent diagram on a single oriented interval. Edges are numbered;
/// `skeleton` lists the edge attached at each skeleton point in order and
/// each internal vertex lists its three edges in counterclockwise order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiDiagram {
    pub skeleton: Vec<u32>,
    pub vertices: Vec<[u32; 3]>,
}

impl JacobiDiagram {
    /// Attaches the legs of the wheels in `cfg` to the interval; the leg with
    /// global index `order[i]` goes to skeleton point `i`.
    ///
    /// Wheel vertices sit counterclockwise on the rim with legs pointing
    /// outward, so vertex `i` reads (leg, rim edge to `i+1`, rim edge to `i-1`).
    pub fn attach(cfg: &JacobiConfig, order: &[usize]) -> Self {
        let mut legs = Vec::new();
        let mut vertices = Vec::new();
        let mut next_edge = 0u32;
        for &n in cfg.wheels() {
            let rim0 = next_edge;
            next_edge += n;
            for i in 0..n {
                let leg = next_edge;
                next_edge += 1;
                legs.push(leg);
                let fwd = rim0 + i;
                let back = rim0 + (i + n - 1) % n;
                vertices.push([leg, fwd, back]);
            }
        }
        Self { skeleton: order.iter().map(|&i| legs[i]).collect(), vertices }
    }

    pub fn leg_count(&self) -> usize {
        self.skeleton.len()
    }

    /// Internal vertices with an edge running straight to the skeleton.
    pub fn eligible(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| self.vertices[v].iter().any(|e| self.skeleton.contains(e)))
            .collect()
    }

    /// One STU step at vertex `v`: returns the two diagrams (T, U) with
    /// signs +1 and -1.
    fn stu_at(&self, v: usize) -> [(JacobiDiagram, i64); 2] {
        let tri = self.vertices[v];
        let r = (0..3).find(|&i| self.skeleton.contains(&tri[i])).expect("eligible vertex");
        let (leg, x, y) = (tri[r], tri[(r + 1) % 3], tri[(r + 2) % 3]);
        let pos = self.skeleton.iter().position(|&e| e == leg).unwrap();
        let mut vertices = self.vertices.clone();
        vertices.remove(v);
        let build = |a: u32, b: u32| {
            let mut s = self.skeleton.clone();
            s.splice(pos..=pos, [a, b]);
            JacobiDiagram { skeleton: s, vertices: vertices.clone() }
        };
        [(build(x, y), 1), (build(y, x), -1)]
    }
}

/// STU-expands a diagram into chord diagrams on the interval, always
/// eliminating the eligible vertex whose skeleton leg comes first.
pub fn stu_expand(d: &JacobiDiagram) -> BTreeMap<Vec<u32>, i64> {
    stu_expand_with(d, &mut |diag, cands| {
        *cands
            .iter()
            .min_by_key(|&&v| {
                diag.vertices[v]
                    .iter()
                    .filter_map(|e| diag.skeleton.iter().position(|s| s == e))
                    .min()
                    .unwrap()
            })
            .unwrap()
    })
}

/// STU expansion with a caller-chosen elimination order. `choose` gets the
/// current diagram and its eligible vertices and returns one of them.
pub fn stu_expand_with(
    d: &JacobiDiagram,
    choose: &mut dyn FnMut(&JacobiDiagram, &[usize]) -> usize,
) -> BTreeMap<Vec<u32>, i64> {
    let mut out = BTreeMap::new();
    let mut stack = vec![(d.clone(), 1i64)];
    while let Some((diag, sign)) = stack.pop() {
        if diag.vertices.is_empty() {
            *out.entry(diag.skeleton).or_insert(0) += sign;
            continue;
        }
        let cands = diag.eligible();
        let v = choose(&diag, &cands);
        for (next, s) in diag.stu_at(v) {
            stack.push((next, sign * s));
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// The symmetrization map onto an oriented interval: the average over all
/// orderings of the legs, STU-reduced. Keys are canonical endpoint
/// sequences along the interval.
pub fn chi_linear(cfg: &JacobiConfig, truncation: usize) -> BTreeMap<Vec<u16>, Rational> {
    let mut acc: BTreeMap<Vec<u16>, BigInt> = BTreeMap::new();
    let legs = cfg.degree();
    if legs > truncation {
        return BTreeMap::new();
    }
    for order in (0..legs).permutations(legs) {
        let d = JacobiDiagram::attach(cfg, &order);
        for (seq, c) in stu_expand(&d) {
            let key = canonical_sequences(&[seq], &[false]).pop().unwrap();
            *acc.entry(key).or_insert_with(BigInt::zero) += c;
        }
    }
    let norm = factorial(legs);
    acc.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, Rational::new(c, norm.clone())))
        .collect()
}

/// The symmetrization map onto one circle (closure of [`chi_linear`]).
pub fn chi(cfg: &JacobiConfig, truncation: usize) -> DiagramSum {
    let mut out = DiagramSum::zero(1, truncation);
    for (seq, c) in chi_linear(cfg, truncation) {
        out.add_term(ChordDiagram::canonicalize_unchecked(&[seq]), c).expect("one circle");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::series_exp;
    use crate::rational::{int, rat};

    fn w(sizes: &[u32]) -> JacobiConfig {
        JacobiConfig::new(sizes.to_vec()).unwrap()
    }

    #[test]
    fn odd_wheels_rejected() {
        assert!(JacobiConfig::new(vec![3]).is_err());
        assert!(JacobiConfig::new(vec![0]).is_err());
    }

    #[test]
    fn chi_of_empty_config_is_empty_diagram() {
        assert_eq!(chi(&JacobiConfig::empty(), 4), DiagramSum::one(1, 4));
    }

    /// Hand STU rewriting of the two-legged wheel gives
    /// 2 (nested - crossed) on the interval, hence 2 (parallel - crossed)
    /// on the circle.
    #[test]
    fn chi_of_two_wheel() {
        let c = chi(&w(&[2]), 4);
        let parallel = ChordDiagram::parallel(2);
        let crossed = ChordDiagram::canonicalize(&[vec![0, 1, 0, 1]]).unwrap();
        assert_eq!(c.coefficient(&parallel).unwrap(), int(2));
        assert_eq!(c.coefficient(&crossed).unwrap(), int(-2));
        assert_eq!(c.terms().len(), 2);
        let lin = chi_linear(&w(&[2]), 4);
        assert_eq!(lin.get(&vec![0, 1, 1, 0]), Some(&int(2)));
        assert_eq!(lin.get(&vec![0, 1, 0, 1]), Some(&int(-2)));
    }

    #[test]
    fn chi_coefficient_sums_vanish() {
        for cfg in [w(&[2]), w(&[4]), w(&[2, 2])] {
            let c = chi(&cfg, 4);
            for k in 1..=4 {
                assert_eq!(c.coefficient_sum(k), Rational::zero(), "{cfg:?} degree {k}");
            }
            assert_eq!(c.degree_part(cfg.degree()), c);
        }
    }

    #[test]
    fn truncation_drops_high_wheels() {
        assert!(chi(&w(&[4]), 3).is_zero());
    }

    fn priority_orders(n: usize) -> Vec<Vec<usize>> {
        (0..n).permutations(n).collect()
    }

    #[test]
    fn stu_confluence_over_elimination_orders() {
        for cfg in [w(&[2]), w(&[4])] {
            let legs = cfg.degree();
            for order in (0..legs).permutations(legs) {
                let d = JacobiDiagram::attach(&cfg, &order);
                let reference = stu_expand(&d);
                for prio in priority_orders(d.vertices.len()) {
                    // a vertex keeps its edge triple until eliminated, so its
                    // original leg identifies it
                    let res = stu_expand_with(&d, &mut |diag, cands| {
                        *cands
                            .iter()
                            .min_by_key(|&&v| {
                                let orig = d.vertices.iter().position(|t| t[0] == diag.vertices[v][0]).unwrap();
                                prio[orig]
                            })
                            .unwrap()
                    });
                    assert_eq!(res, reference);
                }
            }
        }
    }

    #[test]
    fn wheel_exp_expansion() {
        let (b2, b4) = (rat(1, 48), rat(-1, 5760));
        let mut x = WheelSum::zero(4);
        x.add_term(w(&[2]), b2.clone());
        x.add_term(w(&[4]), b4.clone());
        let e = series_exp(&x).unwrap();
        assert_eq!(e.coefficient(&JacobiConfig::empty()), int(1));
        assert_eq!(e.coefficient(&w(&[2])), b2.clone());
        assert_eq!(e.coefficient(&w(&[4])), b4);
        assert_eq!(e.coefficient(&w(&[2, 2])), &b2 * &b2 / int(2));
        assert_eq!(e.terms().len(), 4);
    }
}
