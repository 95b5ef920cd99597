//! Closed words: evaluation, component labels and the linking matrix.

use num_traits::Zero;

use super::generators::{generator_value, MAX_ASSOCIATOR_DEGREE};
use super::tangle::TangleDiagramSum;
use super::tree::{trace_from, validate, Boundary, SliceAction};
use super::word::{Generator, QTangleWord, Sign};
use crate::algebra::{DiagramSum, MAX_NU_DEGREE};
use crate::error::{Error, Result};
use crate::rational::{rat, Rational};

/// Largest truncation the engine supports for `word`.
pub fn max_truncation(word: &QTangleWord) -> usize {
    if word.has_associators() {
        MAX_ASSOCIATOR_DEGREE
    } else {
        MAX_NU_DEGREE
    }
}

fn check_truncation(word: &QTangleWord, truncation: usize) -> Result<()> {
    let max = max_truncation(word);
    if truncation > max {
        let reason = if word.has_associators() { "word contains associator slices" } else { "unknot series" };
        return Err(Error::UnsupportedTruncation { requested: truncation, max, reason: reason.into() });
    }
    Ok(())
}

/// Evaluates a (possibly open) word starting from `start`. If `replace` is
/// given, that slice (0-based) contributes the given local value instead of
/// its own, padded with identity strands.
pub fn evaluate(
    word: &QTangleWord,
    start: &Boundary,
    truncation: usize,
    replace: Option<(usize, &dyn Fn(&SliceAction, &[super::Dir]) -> Result<TangleDiagramSum>)>,
) -> Result<TangleDiagramSum> {
    check_truncation(word, truncation)?;
    let (levels, actions) = trace_from(word, start.clone())?;
    let mut acc = TangleDiagramSum::identity(&start.dirs(), truncation);
    for (i, act) in actions.iter().enumerate() {
        let below = levels[i].dirs();
        let mut v = match replace {
            Some((j, f)) if j == i => f(act, &below)?,
            _ => generator_value(act, &below, truncation)?,
        };
        v.set_origins(i + 1);
        acc = acc.compose(&v)?;
    }
    Ok(acc)
}

/// Evaluates slices `range` of a link word (0-based, end exclusive) as an
/// open tangle between the boundaries below and above them. Stacking the
/// pieces of a split word gives the whole.
pub fn evaluate_range(link: &LinkPresentation, range: std::ops::Range<usize>, truncation: usize) -> Result<TangleDiagramSum> {
    let word = &link.word;
    check_truncation(word, truncation)?;
    if range.start > range.end || range.end > word.len() {
        return Err(Error::Invalid(format!("slice range {range:?} outside 0..{}", word.len())));
    }
    let (levels, actions) = validate(word)?;
    let mut acc = TangleDiagramSum::identity(&levels[range.start].dirs(), truncation);
    // strands entering from below must never decide the order of circles
    acc.set_origins(usize::MAX);
    for i in range {
        let mut v = generator_value(&actions[i], &levels[i].dirs(), truncation)?;
        v.set_origins(i + 1);
        acc = acc.compose(&v)?;
    }
    Ok(acc)
}

/// A closed word together with a numbering of its components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkPresentation {
    pub name: String,
    word: QTangleWord,
    components: usize,
    /// `relabel[default] = chosen`, 0-based.
    relabel: Option<Vec<usize>>,
}

impl LinkPresentation {
    pub fn new(name: impl Into<String>, word: QTangleWord) -> Result<Self> {
        validate(&word)?;
        let components = component_labels(&word)?.1;
        Ok(Self { name: name.into(), word, components, relabel: None })
    }

    pub fn parse(name: impl Into<String>, text: &str) -> Result<Self> {
        Self::new(name, QTangleWord::parse(text)?)
    }

    /// Renumbers components; `perm[i]` is the new 0-based label of the
    /// component that is numbered `i` by default.
    pub fn with_relabel(mut self, perm: Vec<usize>) -> Result<Self> {
        crate::algebra::check_permutation(&perm, self.components)?;
        self.relabel = Some(perm);
        Ok(self)
    }

    pub fn word(&self) -> &QTangleWord {
        &self.word
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    /// The same link with crossing slice `slice` (0-based) switched.
    pub fn with_crossing_flipped(&self, slice: usize) -> Result<Self> {
        let mut word = self.word.clone();
        match word.slices.get_mut(slice).map(|s| &mut s.generator) {
            Some(Generator::Cross(sign)) => *sign = sign.flip(),
            _ => return Err(Error::Invalid(format!("slice {} is not a crossing", slice + 1))),
        }
        Ok(Self { word, ..self.clone() })
    }

    /// Component labels (after relabeling) of the two strands at a crossing.
    pub fn crossing_components(&self, slice: usize) -> Result<(Sign, usize, usize)> {
        let (labels, _) = component_labels(&self.word)?;
        let (sign, a, b) = labels
            .crossings
            .iter()
            .find(|c| c.0 == slice)
            .map(|c| (c.1, c.2, c.3))
            .ok_or_else(|| Error::Invalid(format!("slice {} is not a crossing", slice + 1)))?;
        let map = |x: usize| self.relabel.as_ref().map_or(x, |p| p[x]);
        Ok((sign, map(a), map(b)))
    }

    pub(crate) fn finish(&self, closed: &TangleDiagramSum) -> Result<DiagramSum> {
        let z = closed.close()?;
        match &self.relabel {
            Some(p) => z.relabel_circles(p),
            None => Ok(z),
        }
    }
}

/// The truncated invariant of a closed word as a sum of diagrams on its
/// components.
pub fn integrate(link: &LinkPresentation, truncation: usize) -> Result<DiagramSum> {
    let t = evaluate(&link.word, &Boundary::empty(), truncation, None)?;
    link.finish(&t)
}

struct Labels {
    /// (slice, sign, component of left strand, component of right strand)
    crossings: Vec<(usize, Sign, usize, usize)>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Traces components through the word with a union-find on boundary points,
/// numbering them by first appearance (lowest level, then leftmost point).
fn component_labels(word: &QTangleWord) -> Result<(Labels, usize)> {
    let (levels, actions) = validate(word)?;
    let mut offset = Vec::with_capacity(levels.len());
    let mut total = 0;
    for l in &levels {
        offset.push(total);
        total += l.leaf_count();
    }
    let id = |level: usize, pos: usize| offset[level] + pos;
    let mut parent: Vec<usize> = (0..total).collect();
    let join = |parent: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        parent[ra] = rb;
    };
    for (i, act) in actions.iter().enumerate() {
        let n = levels[i].leaf_count();
        let straight = |p: &mut Vec<usize>, from: std::ops::Range<usize>, shift: isize| {
            for j in from {
                join(p, id(i, j), id(i + 1, (j as isize + shift) as usize));
            }
        };
        match act {
            SliceAction::Identity | SliceAction::Assoc { .. } => straight(&mut parent, 0..n, 0),
            SliceAction::Cross { at, .. } => {
                straight(&mut parent, 0..*at, 0);
                straight(&mut parent, at + 2..n, 0);
                join(&mut parent, id(i, *at), id(i + 1, at + 1));
                join(&mut parent, id(i, at + 1), id(i + 1, *at));
            }
            SliceAction::Cup { at, .. } => {
                straight(&mut parent, 0..*at, 0);
                straight(&mut parent, *at..n, 2);
                join(&mut parent, id(i + 1, *at), id(i + 1, at + 1));
            }
            SliceAction::Cap { at, .. } => {
                straight(&mut parent, 0..*at, 0);
                straight(&mut parent, at + 2..n, -2);
                join(&mut parent, id(i, *at), id(i, at + 1));
            }
        }
    }
    let mut label = vec![usize::MAX; total];
    let mut count = 0;
    for x in 0..total {
        let r = find(&mut parent, x);
        if label[r] == usize::MAX {
            label[r] = count;
            count += 1;
        }
    }
    let mut crossings = Vec::new();
    for (i, act) in actions.iter().enumerate() {
        if let SliceAction::Cross { at, sign } = act {
            let a = label[find(&mut parent, id(i, *at))];
            let b = label[find(&mut parent, id(i, at + 1))];
            crossings.push((i, *sign, a, b));
        }
    }
    Ok((Labels { crossings }, count))
}

/// Linking numbers off the diagonal and half-framings on it, from signed
/// crossing counts.
pub fn linking_matrix(link: &LinkPresentation) -> Result<Vec<Vec<Rational>>> {
    let m = link.components;
    let (labels, _) = component_labels(&link.word)?;
    let mut out = vec![vec![Rational::zero(); m]; m];
    let map = |x: usize| link.relabel.as_ref().map_or(x, |p| p[x]);
    for &(_, sign, a, b) in &labels.crossings {
        let (a, b) = (map(a), map(b));
        let half = rat(sign.value(), 2);
        out[a][b] += &half;
        if a != b {
            out[b][a] += half;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{equal_mod4t, nu};
    use crate::rational::int;

    #[test]
    fn unknot_is_nu() {
        let u0 = LinkPresentation::parse("u0", "cup@1; cap@1").unwrap();
        let z = integrate(&u0, 4).unwrap();
        assert_eq!(z, nu(4).unwrap());
        assert_eq!(linking_matrix(&u0).unwrap(), vec![vec![int(0)]]);
    }

    #[test]
    fn truncation_limits() {
        let w = LinkPresentation::parse("s", "cup@1; cup@3; assoc-@2; cap'@2; cap@1").unwrap();
        assert!(matches!(integrate(&w, 4), Err(Error::UnsupportedTruncation { max: 3, .. })));
        let u0 = LinkPresentation::parse("u0", "cup@1; cap@1").unwrap();
        assert!(matches!(integrate(&u0, 5), Err(Error::UnsupportedTruncation { max: 4, .. })));
    }

    #[test]
    fn snake_closes_to_the_unknot() {
        let w = LinkPresentation::parse("s", "cup@1; cup@3; assoc-@2; cap'@2; cap@1").unwrap();
        let z = integrate(&w, 3).unwrap();
        assert!(equal_mod4t(&z, &nu(3).unwrap(), 3).unwrap());
    }

    #[test]
    fn two_cups_give_two_circles() {
        let w = LinkPresentation::parse("u2", "cup@1; cup@3; cap@3; cap@1").unwrap();
        assert_eq!(w.component_count(), 2);
        let z = integrate(&w, 2).unwrap();
        assert_eq!(z.circles(), 2);
    }
}
