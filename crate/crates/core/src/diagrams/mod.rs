//! Chord diagrams on labeled oriented circles.
//!
//! A [`ChordDiagram`] stores, for each circle, the cyclic sequence of chord
//! labels met when walking the circle along its orientation. The stored form
//! is canonical: over every rotation of every circle, chords are relabeled in
//! order of first occurrence and the lexicographically least result is kept.
//! Circles are labeled and never permuted.

mod enumerate;
mod four_term;
mod type_matrix;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use enumerate::{enumerate_by_degree, enumerate_by_matrix, matrices_of_degree};
pub use four_term::{four_t_relators, FourTRelator};
pub use type_matrix::TypeMatrix;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ChordDiagram {
    circles: Vec<Vec<u16>>,
}

/// Canonical relabeling of chord-endpoint sequences.
///
/// Components flagged `cyclic` are rotated freely; the others are fixed.
/// Labels are renumbered by first occurrence and the least serialization is
/// returned. Pairing is not checked here.
pub(crate) fn canonical_sequences<L: Copy + Eq + std::hash::Hash>(
    seqs: &[Vec<L>],
    cyclic: &[bool],
) -> Vec<Vec<u16>> {
    let rot_counts: Vec<usize> = seqs
        .iter()
        .zip(cyclic)
        .map(|(s, &c)| if c && s.len() > 1 { s.len() } else { 1 })
        .collect();
    let mut rot = vec![0usize; seqs.len()];
    let mut best: Option<Vec<Vec<u16>>> = None;
    let mut map: HashMap<L, u16> = HashMap::new();
    loop {
        map.clear();
        let mut next = 0u16;
        let cand: Vec<Vec<u16>> = seqs
            .iter()
            .zip(&rot)
            .map(|(s, &r)| {
                (0..s.len())
                    .map(|i| {
                        let l = s[(i + r) % s.len()];
                        *map.entry(l).or_insert_with(|| {
                            next += 1;
                            next - 1
                        })
                    })
                    .collect()
            })
            .collect();
        if best.as_ref().map_or(true, |b| cand < *b) {
            best = Some(cand);
        }
        // odometer
        let mut i = 0;
        loop {
            if i == rot.len() {
                return best.unwrap_or_default();
            }
            rot[i] += 1;
            if rot[i] < rot_counts[i] {
                break;
            }
            rot[i] = 0;
            i += 1;
        }
    }
}

/// Checks that every label occurs exactly twice.
pub(crate) fn check_pairing<L: Copy + Eq + std::hash::Hash + fmt::Debug>(
    seqs: &[Vec<L>],
) -> Result<()> {
    let mut count: HashMap<L, usize> = HashMap::new();
    for l in seqs.iter().flatten() {
        *count.entry(*l).or_default() += 1;
    }
    if let Some((l, n)) = count.iter().find(|(_, &n)| n != 2) {
        let what = if *n < 2 { "unpaired" } else { "multiply paired" };
        return Err(Error::MalformedDiagram(format!("chord {l:?} is {what} ({n} endpoints)")));
    }
    Ok(())
}

impl ChordDiagram {
    /// The diagram with no chords on `m` circles.
    pub fn empty(m: usize) -> Self {
        Self { circles: vec![Vec::new(); m] }
    }

    /// Canonicalizes a raw diagram given as per-circle sequences of arbitrary
    /// chord labels (each label must occur exactly twice).
    pub fn canonicalize<L>(circles: &[Vec<L>]) -> Result<Self>
    where
        L: Copy + Eq + std::hash::Hash + fmt::Debug,
    {
        check_pairing(circles)?;
        Ok(Self::canonicalize_unchecked(circles))
    }

    pub(crate) fn canonicalize_unchecked<L: Copy + Eq + std::hash::Hash>(circles: &[Vec<L>]) -> Self {
        let cyclic = vec![true; circles.len()];
        Self { circles: canonical_sequences(circles, &cyclic) }
    }

    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }

    pub fn degree(&self) -> usize {
        self.circles.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Per-circle label sequences in canonical form.
    pub fn circles(&self) -> &[Vec<u16>] {
        &self.circles
    }

    /// Chord endpoints as `((circle, position), (circle, position))`, 0-based,
    /// ordered by chord label.
    pub fn chords(&self) -> Vec<((usize, usize), (usize, usize))> {
        let mut ends: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.degree()];
        for (c, seq) in self.circles.iter().enumerate() {
            for (p, &l) in seq.iter().enumerate() {
                ends[l as usize].push((c, p));
            }
        }
        ends.into_iter().map(|e| (e[0], e[1])).collect()
    }

    pub fn type_matrix(&self) -> TypeMatrix {
        let mut s = TypeMatrix::zero(self.circle_count());
        for ((a, _), (b, _)) in self.chords() {
            s.increment(a, b);
        }
        s
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson {
            circles: self.circle_count(),
            chords: self
                .chords()
                .into_iter()
                .map(|((a, p), (b, q))| [[a + 1, p], [b + 1, q]])
                .collect(),
        }
    }

    pub fn from_json(json: &DiagramJson) -> Result<Self> {
        let m = json.circles;
        let mut slots: Vec<Vec<(usize, usize)>> = vec![Vec::new(); m];
        for (label, chord) in json.chords.iter().enumerate() {
            for &[c, pos] in chord {
                if c == 0 || c > m {
                    return Err(Error::MalformedDiagram(format!("circle index {c} out of 1..={m}")));
                }
                slots[c - 1].push((pos, label));
            }
        }
        let mut seqs = Vec::with_capacity(m);
        for (c, mut s) in slots.into_iter().enumerate() {
            s.sort();
            if s.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(Error::MalformedDiagram(format!("slot reused on circle {}", c + 1)));
            }
            seqs.push(s.into_iter().map(|(_, l)| l).collect::<Vec<_>>());
        }
        Self::canonicalize(&seqs)
    }

    /// The one-circle diagram `D_k` with `k` parallel chords, each cutting
    /// the circle like a rung of a ladder.
    pub fn parallel(k: usize) -> Self {
        let seq: Vec<usize> = (0..k).chain((0..k).rev()).collect();
        Self::canonicalize_unchecked(&[seq])
    }

    /// Two circles joined by a single chord of type (a, b) on `m` circles,
    /// or a single self-chord when `a == b`. 0-based.
    pub fn single_chord(m: usize, a: usize, b: usize) -> Self {
        let mut seqs = vec![Vec::new(); m];
        seqs[a].push(0u16);
        seqs[b].push(0u16);
        Self::canonicalize_unchecked(&seqs)
    }
}

impl fmt::Display for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .circles
            .iter()
            .map(|s| s.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", parts.join(" | "))
    }
}

/// External diagram form: 1-based circle index, 0-based slot position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub circles: usize,
    pub chords: Vec<[[usize; 2]; 2]>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rotate<T: Clone>(v: &[T], r: usize) -> Vec<T> {
        (0..v.len()).map(|i| v[(i + r) % v.len()].clone()).collect()
    }

    #[test]
    fn single_chord_between_circles_is_unique() {
        let a = ChordDiagram::canonicalize(&[vec![7], vec![7]]).unwrap();
        let b = ChordDiagram::single_chord(2, 0, 1);
        assert_eq!(a, b);
        assert_eq!(a.degree(), 1);
    }

    #[test]
    fn three_pairings_of_four_slots_give_two_codes() {
        let p1 = ChordDiagram::canonicalize(&[vec![0, 0, 1, 1]]).unwrap();
        let p2 = ChordDiagram::canonicalize(&[vec![0, 1, 1, 0]]).unwrap();
        let p3 = ChordDiagram::canonicalize(&[vec![0, 1, 0, 1]]).unwrap();
        assert_eq!(p1, p2);
        assert_ne!(p1, p3);
    }

    #[test]
    fn malformed_pairings_rejected() {
        assert!(matches!(
            ChordDiagram::canonicalize(&[vec![0, 1, 1]]),
            Err(Error::MalformedDiagram(_))
        ));
        assert!(ChordDiagram::canonicalize(&[vec![0, 0, 0, 0]]).is_err());
    }

    #[test]
    fn rotation_invariance_two_circles() {
        let c1 = vec![0, 1, 2, 0];
        let c2 = vec![3, 1, 3, 2];
        let base = ChordDiagram::canonicalize(&[c1.clone(), c2.clone()]).unwrap();
        for r1 in 0..c1.len() {
            for r2 in 0..c2.len() {
                let d = ChordDiagram::canonicalize(&[rotate(&c1, r1), rotate(&c2, r2)]).unwrap();
                assert_eq!(d, base);
            }
        }
    }

    #[test]
    fn type_matrix_counts() {
        // chords (1,1), (1,2), (2,2)
        let d = ChordDiagram::canonicalize(&[vec![0, 0, 1], vec![1, 2, 2]]).unwrap();
        let s = d.type_matrix();
        assert_eq!(s.rows(), vec![vec![1, 1], vec![1, 1]]);
        assert_eq!(s.degree(), d.degree());
        let one = ChordDiagram::single_chord(2, 0, 1).type_matrix();
        assert_eq!(one.rows(), vec![vec![0, 1], vec![1, 0]]);
        let own = ChordDiagram::single_chord(2, 1, 1).type_matrix();
        assert_eq!(own.rows(), vec![vec![0, 0], vec![0, 1]]);
    }

    #[test]
    fn json_roundtrip_normalizes_positions() {
        let json: DiagramJson =
            serde_json::from_str(r#"{"circles":2,"chords":[[[1,5],[2,0]],[[1,9],[1,2]]]}"#).unwrap();
        let d = ChordDiagram::from_json(&json).unwrap();
        let back = d.to_json();
        assert_eq!(ChordDiagram::from_json(&back).unwrap(), d);
        for chord in &back.chords {
            for [c, p] in chord {
                assert!(*c >= 1 && *c <= 2);
                assert!(*p < d.circles()[c - 1].len());
            }
        }
        let bad: DiagramJson = serde_json::from_str(r#"{"circles":1,"chords":[[[1,0],[1,0]]]}"#).unwrap();
        assert!(ChordDiagram::from_json(&bad).is_err());
    }
}
