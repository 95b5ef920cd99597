//! Chord diagrams on tangle skeletons.
//!
//! A skeleton is a set of oriented components: intervals running between
//! boundary points on the bottom and top lines, and closed circles. A diagram
//! stores, per component, the chord labels met along the component's
//! orientation. Stacking glues the top of one tangle to the bottom of the
//! next and concatenates the label sequences along the joined components.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::algebra::{DiagramSum, GradedAlgebra};
use crate::diagrams::{canonical_sequences, ChordDiagram};
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    Up,
    Down,
}

impl Dir {
    pub fn flip(self) -> Self {
        match self {
            Dir::Up => Dir::Down,
            Dir::Down => Dir::Up,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Endpoint {
    Bottom(usize),
    Top(usize),
}

#[derive(Clone, Debug)]
pub struct Component {
    /// `(start, end)` along the orientation; `None` for a closed circle.
    pub ends: Option<(Endpoint, Endpoint)>,
    /// Where the component first appears, as (slice, position). Circles are
    /// ordered by it.
    pub origin: (usize, usize),
}

/// Origins only order circles; they do not distinguish skeletons.
impl PartialEq for Component {
    fn eq(&self, other: &Self) -> bool {
        self.ends == other.ends
    }
}

impl Eq for Component {}

impl Component {
    fn sort_key(&self) -> (u8, Option<Endpoint>, (usize, usize)) {
        match self.ends {
            Some((s, _)) => (0, Some(s), self.origin),
            None => (1, None, self.origin),
        }
    }

    pub fn is_circle(&self) -> bool {
        self.ends.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skeleton {
    pub bottom: usize,
    pub top: usize,
    pub components: Vec<Component>,
}

impl Skeleton {
    pub fn identity(dirs: &[Dir]) -> Self {
        let components = dirs
            .iter()
            .enumerate()
            .map(|(i, d)| Component {
                ends: Some(match d {
                    Dir::Up => (Endpoint::Bottom(i), Endpoint::Top(i)),
                    Dir::Down => (Endpoint::Top(i), Endpoint::Bottom(i)),
                }),
                origin: (0, i),
            })
            .collect();
        Self { bottom: dirs.len(), top: dirs.len(), components }
    }

    fn dirs(&self, bottom: bool) -> Vec<Dir> {
        let n = if bottom { self.bottom } else { self.top };
        let mut out = vec![Dir::Up; n];
        for c in &self.components {
            if let Some((s, e)) = c.ends {
                match (s, bottom) {
                    (Endpoint::Bottom(i), true) => out[i] = Dir::Up,
                    (Endpoint::Top(j), false) => out[j] = Dir::Down,
                    _ => {}
                }
                match (e, bottom) {
                    (Endpoint::Bottom(i), true) => out[i] = Dir::Down,
                    (Endpoint::Top(j), false) => out[j] = Dir::Up,
                    _ => {}
                }
            }
        }
        out
    }

    /// Direction of the strand through each bottom point.
    pub fn bottom_dirs(&self) -> Vec<Dir> {
        self.dirs(true)
    }

    pub fn top_dirs(&self) -> Vec<Dir> {
        self.dirs(false)
    }

    pub fn is_closed(&self) -> bool {
        self.bottom == 0 && self.top == 0
    }

    /// Sorts components (intervals by start point, then circles by origin)
    /// and returns `perm` with `perm[old] = new`.
    fn normalize(&mut self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.components.len()).collect();
        idx.sort_by_key(|&i| self.components[i].sort_key());
        let mut perm = vec![0; idx.len()];
        for (new, &old) in idx.iter().enumerate() {
            perm[old] = new;
        }
        self.components = idx.iter().map(|&i| self.components[i].clone()).collect();
        perm
    }

    fn cyclic_flags(&self) -> Vec<bool> {
        self.components.iter().map(Component::is_circle).collect()
    }
}

pub type TangleKey = Vec<Vec<u16>>;

fn key_degree(k: &TangleKey) -> usize {
    k.iter().map(Vec::len).sum::<usize>() / 2
}

/// A combination of chord diagrams on a fixed tangle skeleton, truncated
/// above degree `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangleDiagramSum {
    skeleton: Skeleton,
    truncation: usize,
    terms: BTreeMap<TangleKey, Rational>,
}

impl TangleDiagramSum {
    /// Builds a sum from raw per-component label sequences (any labels, each
    /// used twice within a term). Components are put in canonical order.
    pub fn from_raw<I>(mut skeleton: Skeleton, truncation: usize, raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<Vec<usize>>, Rational)>,
    {
        let perm = skeleton.normalize();
        let cyclic = skeleton.cyclic_flags();
        let mut terms: BTreeMap<TangleKey, Rational> = BTreeMap::new();
        for (seqs, c) in raw {
            if seqs.len() != perm.len() {
                return Err(Error::Skeleton(format!(
                    "term has {} component sequences, skeleton has {}",
                    seqs.len(),
                    perm.len()
                )));
            }
            crate::diagrams::check_pairing(&seqs)?;
            let mut ordered = vec![Vec::new(); seqs.len()];
            for (old, s) in seqs.into_iter().enumerate() {
                ordered[perm[old]] = s;
            }
            let key = canonical_sequences(&ordered, &cyclic);
            if key_degree(&key) <= truncation {
                add_into(&mut terms, key, c);
            }
        }
        Ok(Self { skeleton, truncation, terms })
    }

    /// The chordless identity tangle on strands with the given directions.
    pub fn identity(dirs: &[Dir], truncation: usize) -> Self {
        let skeleton = Skeleton::identity(dirs);
        let key = vec![Vec::new(); skeleton.components.len()];
        let mut terms = BTreeMap::new();
        terms.insert(key, Rational::one());
        Self { skeleton, truncation, terms }
    }

    /// The empty tangle (no strands) with coefficient 1.
    pub fn empty(truncation: usize) -> Self {
        Self::identity(&[], truncation)
    }

    pub fn skeleton(&self) -> &Skeleton {
        &self.skeleton
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn terms(&self) -> &BTreeMap<TangleKey, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, key: &TangleKey) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    /// Keeps only the terms of degree `<= n`.
    pub fn truncated(&self, n: usize) -> Self {
        let mut out = self.clone();
        out.truncation = n;
        out.terms.retain(|k, _| key_degree(k) <= n);
        out
    }

    pub(crate) fn set_origins(&mut self, slice: usize) {
        for c in &mut self.skeleton.components {
            let pos = match c.ends {
                Some((s, e)) => {
                    let p = |x: Endpoint| match x {
                        Endpoint::Bottom(i) => (0, i),
                        Endpoint::Top(j) => (1, j),
                    };
                    p(s).min(p(e)).1
                }
                None => c.origin.1,
            };
            c.origin = (slice, pos);
        }
    }

    /// Stacks `upper` on top of `self`.
    pub fn compose(&self, upper: &Self) -> Result<Self> {
        let (lo, up) = (&self.skeleton, &upper.skeleton);
        if lo.top_dirs() != up.bottom_dirs() {
            return Err(Error::Skeleton(format!(
                "cannot stack: top {:?} vs bottom {:?}",
                lo.top_dirs(),
                up.bottom_dirs()
            )));
        }
        #[derive(Clone, Copy, PartialEq, Eq)]
        enum Pt {
            Ext(Endpoint),
            Mid(usize),
        }
        let nl = lo.components.len();
        let pieces: Vec<&Component> = lo.components.iter().chain(&up.components).collect();
        let place = |p: usize, e: Endpoint| -> Pt {
            match (p < nl, e) {
                (true, Endpoint::Bottom(i)) => Pt::Ext(Endpoint::Bottom(i)),
                (true, Endpoint::Top(j)) => Pt::Mid(j),
                (false, Endpoint::Bottom(j)) => Pt::Mid(j),
                (false, Endpoint::Top(k)) => Pt::Ext(Endpoint::Top(k)),
            }
        };
        let mut start_at_mid = vec![usize::MAX; lo.top];
        for (p, c) in pieces.iter().enumerate() {
            if let Some((s, _)) = c.ends {
                if let Pt::Mid(j) = place(p, s) {
                    start_at_mid[j] = p;
                }
            }
        }
        let mut visited = vec![false; pieces.len()];
        let mut chains: Vec<(Vec<usize>, Component)> = Vec::new();
        let follow = |first: usize, visited: &mut Vec<bool>| -> (Vec<usize>, Option<Pt>) {
            let mut chain = vec![first];
            visited[first] = true;
            let mut cur = first;
            loop {
                let (_, e) = pieces[cur].ends.unwrap();
                match place(cur, e) {
                    Pt::Mid(j) => {
                        let next = start_at_mid[j];
                        if next == first {
                            return (chain, None);
                        }
                        visited[next] = true;
                        chain.push(next);
                        cur = next;
                    }
                    ext => return (chain, Some(ext)),
                }
            }
        };
        for p in 0..pieces.len() {
            let Some((s, _)) = pieces[p].ends else { continue };
            if let Pt::Ext(start) = place(p, s) {
                let (chain, end) = follow(p, &mut visited);
                let Some(Pt::Ext(end)) = end else { unreachable!("interval ends outside") };
                let origin = chain.iter().map(|&q| pieces[q].origin).min().unwrap();
                chains.push((chain, Component { ends: Some((start, end)), origin }));
            }
        }
        for p in 0..pieces.len() {
            if visited[p] {
                continue;
            }
            let chain = if pieces[p].is_circle() {
                visited[p] = true;
                vec![p]
            } else {
                follow(p, &mut visited).0
            };
            let origin = chain.iter().map(|&q| pieces[q].origin).min().unwrap();
            chains.push((chain, Component { ends: None, origin }));
        }
        let mut skeleton = Skeleton {
            bottom: lo.bottom,
            top: up.top,
            components: chains.iter().map(|(_, c)| c.clone()).collect(),
        };
        let perm = skeleton.normalize();
        let mut order: Vec<&Vec<usize>> = vec![&chains[0].0; chains.len()];
        for (old, (chain, _)) in chains.iter().enumerate() {
            order[perm[old]] = chain;
        }
        let cyclic = skeleton.cyclic_flags();
        let n = self.truncation.min(upper.truncation);
        let mut acc: HashMap<TangleKey, Rational> = HashMap::new();
        let upper_terms: Vec<(&TangleKey, &Rational, usize)> =
            upper.terms.iter().map(|(k, c)| (k, c, key_degree(k))).collect();
        for (kl, cl) in &self.terms {
            let dl = key_degree(kl);
            let off = dl as u16;
            for &(ku, cu, du) in &upper_terms {
                if dl + du > n {
                    continue;
                }
                let seqs: Vec<Vec<u16>> = order
                    .iter()
                    .map(|chain| {
                        let mut s = Vec::new();
                        for &p in chain.iter() {
                            if p < nl {
                                s.extend_from_slice(&kl[p]);
                            } else {
                                s.extend(ku[p - nl].iter().map(|l| l + off));
                            }
                        }
                        s
                    })
                    .collect();
                let key = canonical_sequences(&seqs, &cyclic);
                let e = acc.entry(key).or_insert_with(Rational::zero);
                *e += cl * cu;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(Self { skeleton, truncation: n, terms })
    }

    /// Places `right` to the right of `self`.
    pub fn tensor(&self, right: &Self) -> Self {
        let (bl, tl) = (self.skeleton.bottom, self.skeleton.top);
        let shift = |e: Endpoint| match e {
            Endpoint::Bottom(i) => Endpoint::Bottom(i + bl),
            Endpoint::Top(j) => Endpoint::Top(j + tl),
        };
        let mut components = self.skeleton.components.clone();
        components.extend(right.skeleton.components.iter().map(|c| Component {
            ends: c.ends.map(|(s, e)| (shift(s), shift(e))),
            origin: c.origin,
        }));
        let mut skeleton =
            Skeleton { bottom: bl + right.skeleton.bottom, top: tl + right.skeleton.top, components };
        let perm = skeleton.normalize();
        let cyclic = skeleton.cyclic_flags();
        let n = self.truncation.min(right.truncation);
        let mut terms = BTreeMap::new();
        for (ka, ca) in &self.terms {
            let off = key_degree(ka) as u16;
            for (kb, cb) in &right.terms {
                if key_degree(ka) + key_degree(kb) > n {
                    continue;
                }
                let mut seqs = vec![Vec::new(); perm.len()];
                for (old, s) in ka.iter().cloned().chain(kb.iter().map(|s| s.iter().map(|l| l + off).collect())).enumerate() {
                    seqs[perm[old]] = s;
                }
                add_into(&mut terms, canonical_sequences(&seqs, &cyclic), ca * cb);
            }
        }
        Self { skeleton, truncation: n, terms }
    }

    /// Replaces component `comp` (an interval from bottom to top or top to
    /// bottom) by `copies` parallel copies; every chord endpoint on it is
    /// summed over the copies, keeping its height.
    pub fn cable(&self, comp: usize, copies: usize) -> Result<Self> {
        if copies < 1 {
            return Err(Error::Invalid("cable needs at least one copy".into()));
        }
        let c = self
            .skeleton
            .components
            .get(comp)
            .ok_or_else(|| Error::Invalid(format!("no component {comp}")))?;
        let (s, e) = match c.ends {
            Some((s @ Endpoint::Bottom(_), e @ Endpoint::Top(_)))
            | Some((s @ Endpoint::Top(_), e @ Endpoint::Bottom(_))) => (s, e),
            _ => return Err(Error::Invalid("only through-strands can be cabled".into())),
        };
        let (b0, t0) = match (s, e) {
            (Endpoint::Bottom(i), Endpoint::Top(j)) | (Endpoint::Top(j), Endpoint::Bottom(i)) => (i, j),
            _ => unreachable!(),
        };
        let extra = copies - 1;
        let shift = |x: Endpoint| match x {
            Endpoint::Bottom(i) if i > b0 => Endpoint::Bottom(i + extra),
            Endpoint::Top(j) if j > t0 => Endpoint::Top(j + extra),
            other => other,
        };
        let lift = |x: Endpoint, k: usize| match x {
            Endpoint::Bottom(i) => Endpoint::Bottom(i + k),
            Endpoint::Top(j) => Endpoint::Top(j + k),
        };
        let mut components = Vec::new();
        for (i, other) in self.skeleton.components.iter().enumerate() {
            if i == comp {
                for k in 0..copies {
                    components.push(Component { ends: Some((lift(s, k), lift(e, k))), origin: other.origin });
                }
            } else {
                components.push(Component { ends: other.ends.map(|(a, b)| (shift(a), shift(b))), origin: other.origin });
            }
        }
        let skeleton = Skeleton {
            bottom: self.skeleton.bottom + extra,
            top: self.skeleton.top + extra,
            components,
        };
        let mut raw = Vec::new();
        for (key, coeff) in &self.terms {
            let seq = &key[comp];
            let total = copies.pow(seq.len() as u32);
            for code in 0..total {
                let mut split = vec![Vec::new(); copies];
                let mut x = code;
                for &l in seq {
                    split[x % copies].push(l as usize);
                    x /= copies;
                }
                let mut seqs: Vec<Vec<usize>> = Vec::with_capacity(key.len() + extra);
                for (i, s) in key.iter().enumerate() {
                    if i == comp {
                        seqs.append(&mut split);
                    } else {
                        seqs.push(s.iter().map(|&l| l as usize).collect());
                    }
                }
                raw.push((seqs, coeff.clone()));
            }
        }
        Self::from_raw(skeleton, self.truncation, raw)
    }

    /// Reverses the orientation of component `comp`; each diagram picks up
    /// the sign `(-1)^(endpoints on comp)`.
    pub fn reverse_strand(&self, comp: usize) -> Result<Self> {
        let c = self
            .skeleton
            .components
            .get(comp)
            .ok_or_else(|| Error::Invalid(format!("no component {comp}")))?;
        let mut skeleton = self.skeleton.clone();
        skeleton.components[comp].ends = c.ends.map(|(s, e)| (e, s));
        let raw = self.terms.iter().map(|(key, coeff)| {
            let seqs: Vec<Vec<usize>> = key
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    let mut v: Vec<usize> = s.iter().map(|&l| l as usize).collect();
                    if i == comp {
                        v.reverse();
                    }
                    v
                })
                .collect();
            let c = if key[comp].len() % 2 == 1 { -coeff.clone() } else { coeff.clone() };
            (seqs, c)
        });
        Self::from_raw(skeleton, self.truncation, raw.collect::<Vec<_>>())
    }

    /// Turns a closed tangle into a diagram sum on its circles, taken in
    /// order of first appearance.
    pub fn close(&self) -> Result<DiagramSum> {
        if !self.skeleton.is_closed() {
            return Err(Error::Skeleton("tangle has boundary points".into()));
        }
        let m = self.skeleton.components.len();
        let mut out = DiagramSum::zero(m, self.truncation);
        for (key, c) in &self.terms {
            out.add_term(ChordDiagram::canonicalize_unchecked(key), c.clone())?;
        }
        Ok(out)
    }

    /// Joins each top point to the bottom point below it, closing every
    /// through-strand into a circle. Strands must run straight up or down.
    pub fn close_strands(&self) -> Result<DiagramSum> {
        for c in &self.skeleton.components {
            match c.ends {
                None => {}
                Some((Endpoint::Bottom(i), Endpoint::Top(j))) | Some((Endpoint::Top(j), Endpoint::Bottom(i)))
                    if i == j => {}
                _ => return Err(Error::Skeleton("strands do not close up individually".into())),
            }
        }
        let mut out = DiagramSum::zero(self.skeleton.components.len(), self.truncation);
        for (key, c) in &self.terms {
            out.add_term(ChordDiagram::canonicalize_unchecked(key), c.clone())?;
        }
        Ok(out)
    }

    pub fn add_scaled(&self, other: &Self, c: &Rational) -> Result<Self> {
        if self.skeleton != other.skeleton {
            return Err(Error::Skeleton("adding sums on different skeletons".into()));
        }
        let mut out = self.truncated(self.truncation.min(other.truncation));
        for (k, v) in &other.terms {
            if key_degree(k) <= out.truncation {
                add_into(&mut out.terms, k.clone(), v * c);
            }
        }
        Ok(out)
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        out.terms = self.terms.iter().filter(|_| !c.is_zero()).map(|(k, v)| (k.clone(), v * c)).collect();
        out
    }
}

fn add_into(terms: &mut BTreeMap<TangleKey, Rational>, key: TangleKey, c: Rational) {
    if c.is_zero() {
        return;
    }
    match terms.entry(key) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Stacking algebra on tangles whose top matches their bottom.
impl GradedAlgebra for TangleDiagramSum {
    fn truncation(&self) -> usize {
        self.truncation
    }

    fn unit(&self) -> Self {
        let mut id = Self::identity(&self.skeleton.bottom_dirs(), self.truncation);
        for (c, orig) in id.skeleton.components.iter_mut().zip(&self.skeleton.components) {
            c.origin = orig.origin;
        }
        id
    }

    fn product(&self, rhs: &Self) -> Result<Self> {
        self.compose(rhs)
    }

    fn constant_term(&self) -> Rational {
        let empty = vec![Vec::new(); self.skeleton.components.len()];
        self.coefficient(&empty)
    }

    fn add_scaled(&self, rhs: &Self, c: &Rational) -> Result<Self> {
        TangleDiagramSum::add_scaled(self, rhs, c)
    }

    fn scaled(&self, c: &Rational) -> Self {
        TangleDiagramSum::scaled(self, c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn chord(n: usize, a: usize, b: usize) -> TangleDiagramSum {
        let sk = Skeleton::identity(&vec![Dir::Up; n]);
        let mut seqs = vec![Vec::new(); n];
        seqs[a].push(0);
        seqs[b].push(0);
        TangleDiagramSum::from_raw(sk, 4, [(seqs, int(1))]).unwrap()
    }

    #[test]
    fn cable_by_one_is_identity() {
        let t = chord(3, 0, 2);
        assert_eq!(t.cable(1, 1).unwrap(), t);
        assert_eq!(t.cable(0, 1).unwrap(), t);
        assert!(t.cable(0, 0).is_err());
    }

    #[test]
    fn cable_single_endpoint_gives_two_lifts() {
        let t = chord(2, 0, 1);
        let c = t.cable(0, 2).unwrap();
        assert_eq!(c.terms().len(), 2);
        assert_eq!(c.skeleton().bottom, 3);
        assert!(c.terms().values().all(|v| *v == int(1)));
    }

    #[test]
    fn cabled_commutator_mass() {
        // t12 t23 on three strands; strand 1 (middle) carries two endpoints
        let p = chord(3, 0, 1).compose(&chord(3, 1, 2)).unwrap();
        let c = p.cable(1, 2).unwrap();
        assert_eq!(c.terms().len(), 4);
        let mass: Rational = c.terms().values().sum();
        assert_eq!(mass, int(4));
    }

    #[test]
    fn reverse_strand_signs() {
        let id = TangleDiagramSum::identity(&[Dir::Up, Dir::Down], 3);
        let r = id.reverse_strand(0).unwrap();
        assert_eq!(r.skeleton().bottom_dirs(), vec![Dir::Down, Dir::Down]);
        assert_eq!(r.terms().values().next(), Some(&int(1)));
        let t = chord(2, 0, 1);
        let rt = t.reverse_strand(1).unwrap();
        assert_eq!(rt.terms().values().next(), Some(&int(-1)));
        assert_eq!(rt.reverse_strand(1).unwrap(), t);
    }

    #[test]
    fn stacking_is_associative_and_has_unit() {
        let a = chord(3, 0, 1).add_scaled(&chord(3, 1, 2), &rat(1, 2)).unwrap();
        let b = chord(3, 0, 2);
        let c = chord(3, 1, 2).scaled(&int(3));
        let l = a.compose(&b).unwrap().compose(&c).unwrap();
        let r = a.compose(&b.compose(&c).unwrap()).unwrap();
        assert_eq!(l, r);
        assert_eq!(a.compose(&a.unit()).unwrap(), a);
        assert!(a.compose(&TangleDiagramSum::identity(&[Dir::Up], 4)).is_err());
    }

    #[test]
    fn closing_a_cup_and_cap() {
        let cup = Skeleton {
            bottom: 0,
            top: 2,
            components: vec![Component { ends: Some((Endpoint::Top(0), Endpoint::Top(1))), origin: (0, 0) }],
        };
        let cap = Skeleton {
            bottom: 2,
            top: 0,
            components: vec![Component { ends: Some((Endpoint::Bottom(1), Endpoint::Bottom(0))), origin: (1, 0) }],
        };
        let a = TangleDiagramSum::from_raw(cup, 2, [(vec![vec![0, 0]], int(1))]).unwrap();
        let b = TangleDiagramSum::from_raw(cap, 2, [(vec![vec![]], int(1))]).unwrap();
        let closed = a.compose(&b).unwrap();
        assert!(closed.skeleton().is_closed());
        let d = closed.close().unwrap();
        assert_eq!(d.coefficient(&ChordDiagram::parallel(1)).unwrap(), int(1));
    }
}
