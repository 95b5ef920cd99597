use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, RwLock};

use once_cell::sync::Lazy;

use super::{ChordDiagram, TypeMatrix};
use crate::error::{Error, Result};

static BY_MATRIX: Lazy<RwLock<HashMap<TypeMatrix, Arc<Vec<ChordDiagram>>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// All chord diagrams on `m` circles with type matrix `s`, in canonical-code
/// order, without duplicates.
pub fn enumerate_by_matrix(m: usize, s: &TypeMatrix) -> Result<Arc<Vec<ChordDiagram>>> {
    if s.size() != m {
        return Err(Error::InvalidMatrix(format!("matrix size {} but {m} circles", s.size())));
    }
    if let Some(hit) = BY_MATRIX.read().unwrap().get(s) {
        return Ok(hit.clone());
    }
    let list = Arc::new(generate(s));
    BY_MATRIX.write().unwrap().insert(s.clone(), list.clone());
    Ok(list)
}

fn generate(s: &TypeMatrix) -> Vec<ChordDiagram> {
    let m = s.size();
    let mut lens = vec![0usize; m];
    for (i, j, v) in s.upper() {
        lens[i] += v as usize;
        lens[j] += v as usize;
    }
    let slots: Vec<(usize, usize)> =
        (0..m).flat_map(|c| (0..lens[c]).map(move |p| (c, p))).collect();
    let mut remaining = s.clone();
    let mut labels: Vec<Option<usize>> = vec![None; slots.len()];
    let mut out = BTreeSet::new();
    place(&slots, &mut labels, &mut remaining, 0, &lens, &mut out);
    out.into_iter().collect()
}

fn place(
    slots: &[(usize, usize)],
    labels: &mut [Option<usize>],
    remaining: &mut TypeMatrix,
    next_label: usize,
    lens: &[usize],
    out: &mut BTreeSet<ChordDiagram>,
) {
    let Some(first) = labels.iter().position(Option::is_none) else {
        let mut seqs: Vec<Vec<usize>> = lens.iter().map(|&n| Vec::with_capacity(n)).collect();
        for (&(c, _), l) in slots.iter().zip(labels.iter()) {
            seqs[c].push(l.unwrap());
        }
        out.insert(ChordDiagram::canonicalize_unchecked(&seqs));
        return;
    };
    let a = slots[first].0;
    for other in first + 1..slots.len() {
        if labels[other].is_some() {
            continue;
        }
        let b = slots[other].0;
        let left = remaining.get(a, b);
        if left == 0 {
            continue;
        }
        remaining.set(a, b, left - 1);
        labels[first] = Some(next_label);
        labels[other] = Some(next_label);
        place(slots, labels, remaining, next_label + 1, lens, out);
        labels[first] = None;
        labels[other] = None;
        remaining.set(a, b, left);
    }
}

/// Every symmetric `m x m` natural matrix of degree `k`, in a fixed order.
pub fn matrices_of_degree(m: usize, k: usize) -> Vec<TypeMatrix> {
    let cells: Vec<(usize, usize)> = (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    let mut current = TypeMatrix::zero(m);
    fn rec(cells: &[(usize, usize)], idx: usize, left: usize, cur: &mut TypeMatrix, out: &mut Vec<TypeMatrix>) {
        if idx + 1 == cells.len() {
            let (i, j) = cells[idx];
            cur.set(i, j, left as u32);
            out.push(cur.clone());
            cur.set(i, j, 0);
            return;
        }
        let (i, j) = cells[idx];
        for v in (0..=left).rev() {
            cur.set(i, j, v as u32);
            rec(cells, idx + 1, left - v, cur, out);
        }
        cur.set(i, j, 0);
    }
    if cells.is_empty() {
        if k == 0 {
            out.push(current);
        }
        return out;
    }
    rec(&cells, 0, k, &mut current, &mut out);
    out
}

/// All degree-`k` chord diagrams on `m` circles, sorted by canonical code.
pub fn enumerate_by_degree(m: usize, k: usize) -> Vec<ChordDiagram> {
    let mut all = BTreeSet::new();
    for s in matrices_of_degree(m, k) {
        let part = enumerate_by_matrix(m, &s).expect("sizes agree");
        all.extend(part.iter().cloned());
    }
    all.into_iter().collect()
}
