use std::collections::BTreeMap;

use super::{enumerate_by_degree, ChordDiagram};

/// One four-term relation: an endpoint `z` of a chord slides around both
/// endpoints `u`, `v` of another chord.
///
/// Terms are ordered `[z after u, z before u, z before v, z after v]` with
/// coefficients `+1, -1, -1, +1` (positions taken along circle orientation).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourTRelator {
    pub terms: [(ChordDiagram, i64); 4],
}

impl FourTRelator {
    /// Terms with duplicates merged and zero coefficients dropped.
    pub fn combined(&self) -> BTreeMap<ChordDiagram, i64> {
        let mut out = BTreeMap::new();
        for (d, c) in &self.terms {
            *out.entry(d.clone()).or_insert(0) += c;
        }
        out.retain(|_, c| *c != 0);
        out
    }
}

/// Every degree-`k` four-term relator on `m` circles, up to canonical
/// equivalence and overall sign. Trivial relators (all terms cancelling)
/// are dropped.
pub fn four_t_relators(m: usize, k: usize) -> Vec<FourTRelator> {
    if k < 2 {
        return Vec::new();
    }
    let mut seen: BTreeMap<Vec<(ChordDiagram, i64)>, ()> = BTreeMap::new();
    let mut out = Vec::new();
    let fresh = (k - 1) as u16;
    for base in enumerate_by_degree(m, k - 1) {
        let circles = base.circles();
        for chord in 0..(k - 1) as u16 {
            for wc in 0..m {
                for wg in 0..circles[wc].len().max(1) {
                    let mut with_w: Vec<Vec<u16>> = circles.to_vec();
                    with_w[wc].insert(wg, fresh);
                    let ends: Vec<(usize, usize)> = with_w
                        .iter()
                        .enumerate()
                        .flat_map(|(c, s)| {
                            s.iter().enumerate().filter(|(_, &l)| l == chord).map(move |(p, _)| (c, p))
                        })
                        .collect();
                    let (u, v) = (ends[0], ends[1]);
                    let put = |(c, p): (usize, usize)| {
                        let mut d = with_w.clone();
                        d[c].insert(p, fresh);
                        ChordDiagram::canonicalize_unchecked(&d)
                    };
                    let rel = FourTRelator {
                        terms: [
                            (put((u.0, u.1 + 1)), 1),
                            (put(u), -1),
                            (put(v), -1),
                            (put((v.0, v.1 + 1)), 1),
                        ],
                    };
                    let mut key: Vec<(ChordDiagram, i64)> = rel.combined().into_iter().collect();
                    if key.is_empty() {
                        continue;
                    }
                    if key[0].1 < 0 {
                        key.iter_mut().for_each(|t| t.1 = -t.1);
                    }
                    if seen.insert(key, ()).is_none() {
                        out.push(rel);
                    }
                }
            }
        }
    }
    out
}
