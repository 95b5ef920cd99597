//! Parenthesized boundaries and the slice rules acting on them.

use std::fmt;

use super::tangle::Dir;
use super::word::{Generator, QTangleWord, Sign, Slice, Turn};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundaryTree {
    Leaf(Dir),
    Node(Box<BoundaryTree>, Box<BoundaryTree>),
}

impl BoundaryTree {
    fn node(a: BoundaryTree, b: BoundaryTree) -> Self {
        BoundaryTree::Node(Box::new(a), Box::new(b))
    }

    fn pair(t: Turn) -> Self {
        let (a, b) = match t {
            Turn::DownUp => (Dir::Down, Dir::Up),
            Turn::UpDown => (Dir::Up, Dir::Down),
        };
        Self::node(BoundaryTree::Leaf(a), BoundaryTree::Leaf(b))
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            BoundaryTree::Leaf(_) => 1,
            BoundaryTree::Node(a, b) => a.leaf_count() + b.leaf_count(),
        }
    }

    fn collect_dirs(&self, out: &mut Vec<Dir>) {
        match self {
            BoundaryTree::Leaf(d) => out.push(*d),
            BoundaryTree::Node(a, b) => {
                a.collect_dirs(out);
                b.collect_dirs(out);
            }
        }
    }

    /// Left/right moves (`false`/`true`) from the root to leaf `i`.
    fn path_to(&self, mut i: usize) -> Vec<bool> {
        let mut path = Vec::new();
        let mut t = self;
        while let BoundaryTree::Node(a, b) = t {
            let n = a.leaf_count();
            if i < n {
                path.push(false);
                t = a;
            } else {
                path.push(true);
                i -= n;
                t = b;
            }
        }
        path
    }

    fn at(&self, path: &[bool]) -> &BoundaryTree {
        path.iter().fold(self, |t, &r| match t {
            BoundaryTree::Node(a, b) => if r { b } else { a },
            BoundaryTree::Leaf(_) => unreachable!("path leaves the tree"),
        })
    }

    fn at_mut(&mut self, path: &[bool]) -> &mut BoundaryTree {
        let mut t = self;
        for &r in path {
            t = match t {
                BoundaryTree::Node(a, b) => if r { b } else { a },
                BoundaryTree::Leaf(_) => unreachable!("path leaves the tree"),
            };
        }
        t
    }
}

impl fmt::Display for BoundaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryTree::Leaf(Dir::Up) => f.write_str("↑"),
            BoundaryTree::Leaf(Dir::Down) => f.write_str("↓"),
            BoundaryTree::Node(a, b) => write!(f, "({a}{b})"),
        }
    }
}

/// What a slice does to its boundary, with the data needed to evaluate it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SliceAction {
    Identity,
    /// Crossing of the two leaves starting at the 0-based index.
    Cross { at: usize, sign: Sign },
    Cup { at: usize, turn: Turn },
    Cap { at: usize, turn: Turn },
    /// Reassociation of three consecutive blocks starting at leaf `at`.
    Assoc { at: usize, sign: Sign, sizes: [usize; 3] },
}

/// The (possibly empty) parenthesized boundary between two slices.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Boundary(pub Option<BoundaryTree>);

impl Boundary {
    pub fn empty() -> Self {
        Boundary(None)
    }

    pub fn leaf_count(&self) -> usize {
        self.0.as_ref().map_or(0, BoundaryTree::leaf_count)
    }

    pub fn dirs(&self) -> Vec<Dir> {
        let mut out = Vec::new();
        if let Some(t) = &self.0 {
            t.collect_dirs(&mut out);
        }
        out
    }

    /// Applies one slice, returning the boundary above it.
    pub fn apply(&self, slice: &Slice) -> std::result::Result<(Boundary, SliceAction), String> {
        let n = self.leaf_count();
        let p = slice.position - 1;
        match slice.generator {
            Generator::Identity => {
                if slice.position > n.max(1) {
                    return Err(format!("position {} beyond {n} strands", slice.position));
                }
                Ok((self.clone(), SliceAction::Identity))
            }
            Generator::Cup(turn) => {
                if p > n {
                    return Err(format!("cup position {} beyond {} gaps", slice.position, n + 1));
                }
                let tree = match &self.0 {
                    None => BoundaryTree::pair(turn),
                    Some(t) => {
                        let mut t = t.clone();
                        let (leaf_idx, pair_first) = if p >= 1 { (p - 1, false) } else { (0, true) };
                        let path = t.path_to(leaf_idx);
                        let slot = t.at_mut(&path);
                        let leaf = slot.clone();
                        *slot = if pair_first {
                            BoundaryTree::node(BoundaryTree::pair(turn), leaf)
                        } else {
                            BoundaryTree::node(leaf, BoundaryTree::pair(turn))
                        };
                        t
                    }
                };
                Ok((Boundary(Some(tree)), SliceAction::Cup { at: p, turn }))
            }
            Generator::Cap(_) | Generator::Cross(_) => {
                let tree = self.0.as_ref().ok_or("no strands")?;
                if p + 1 >= n {
                    return Err(format!("needs strands {} and {}, have {n}", p + 1, p + 2));
                }
                let path = tree.path_to(p);
                let Some((false, parent)) = path.split_last().map(|(l, r)| (*l, r)) else {
                    return Err(format!("strands {} and {} are not a parenthesized pair", p + 1, p + 2));
                };
                let BoundaryTree::Node(a, b) = tree.at(parent) else { unreachable!() };
                let (BoundaryTree::Leaf(da), BoundaryTree::Leaf(db)) = (a.as_ref(), b.as_ref()) else {
                    return Err(format!("strands {} and {} are not a parenthesized pair", p + 1, p + 2));
                };
                match slice.generator {
                    Generator::Cross(sign) => {
                        let mut t = tree.clone();
                        *t.at_mut(parent) =
                            BoundaryTree::node(BoundaryTree::Leaf(*db), BoundaryTree::Leaf(*da));
                        Ok((Boundary(Some(t)), SliceAction::Cross { at: p, sign }))
                    }
                    Generator::Cap(turn) => {
                        let want = match turn {
                            Turn::DownUp => (Dir::Down, Dir::Up),
                            Turn::UpDown => (Dir::Up, Dir::Down),
                        };
                        if (*da, *db) != want {
                            return Err(format!(
                                "strand directions {} do not match {}",
                                BoundaryTree::node(BoundaryTree::Leaf(*da), BoundaryTree::Leaf(*db)),
                                BoundaryTree::pair(turn)
                            ));
                        }
                        let out = match parent.split_last() {
                            None => None,
                            Some((&side, gp)) => {
                                let mut t = tree.clone();
                                let BoundaryTree::Node(l, r) = t.at(gp).clone() else { unreachable!() };
                                *t.at_mut(gp) = if side { *l } else { *r };
                                Some(t)
                            }
                        };
                        Ok((Boundary(out), SliceAction::Cap { at: p, turn }))
                    }
                    _ => unreachable!(),
                }
            }
            Generator::Assoc(sign) => {
                let tree = self.0.as_ref().ok_or("no strands")?;
                if p >= n {
                    return Err(format!("position {} beyond {n} strands", slice.position));
                }
                let path = tree.path_to(p);
                let mut i = path.len();
                while i > 0 && !path[i - 1] {
                    i -= 1;
                    let node = tree.at(&path[..i]);
                    let BoundaryTree::Node(l, r) = node else { unreachable!() };
                    let rebuilt = match (sign, l.as_ref(), r.as_ref()) {
                        (Sign::Plus, BoundaryTree::Node(a, b), c) => Some((
                            BoundaryTree::node((**a).clone(), BoundaryTree::node((**b).clone(), c.clone())),
                            [a.leaf_count(), b.leaf_count(), c.leaf_count()],
                        )),
                        (Sign::Minus, a, BoundaryTree::Node(b, c)) => Some((
                            BoundaryTree::node(BoundaryTree::node(a.clone(), (**b).clone()), (**c).clone()),
                            [a.leaf_count(), b.leaf_count(), c.leaf_count()],
                        )),
                        _ => None,
                    };
                    if let Some((new, sizes)) = rebuilt {
                        let mut t = tree.clone();
                        *t.at_mut(&path[..i]) = new;
                        return Ok((Boundary(Some(t)), SliceAction::Assoc { at: p, sign, sizes }));
                    }
                }
                let shape = if sign == Sign::Plus { "((AB)C)" } else { "(A(BC))" };
                Err(format!("no subtree of shape {shape} starts at strand {}", slice.position))
            }
        }
    }
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            None => f.write_str("empty"),
            Some(t) => write!(f, "{t}"),
        }
    }
}

/// Checks a word slice by slice starting from `start`, returning every
/// boundary (`len + 1` of them) and the action of each slice.
pub fn trace_from(word: &QTangleWord, start: Boundary) -> Result<(Vec<Boundary>, Vec<SliceAction>)> {
    let mut levels = vec![start];
    let mut actions = Vec::with_capacity(word.len());
    for (i, s) in word.slices.iter().enumerate() {
        let (next, act) = levels[i].apply(s).map_err(|message| Error::Validate {
            slice: i + 1,
            text: s.to_string(),
            message,
        })?;
        levels.push(next);
        actions.push(act);
    }
    Ok((levels, actions))
}

/// Validates a word presenting a link: it must start and end empty.
pub fn validate(word: &QTangleWord) -> Result<(Vec<Boundary>, Vec<SliceAction>)> {
    if word.is_empty() {
        return Err(Error::Validate { slice: 0, text: String::new(), message: "empty word".into() });
    }
    let (levels, actions) = trace_from(word, Boundary::empty())?;
    let last = levels.last().unwrap();
    if last.leaf_count() != 0 {
        return Err(Error::Validate {
            slice: word.len(),
            text: word.slices.last().unwrap().to_string(),
            message: format!("word ends with open boundary {last}"),
        });
    }
    Ok((levels, actions))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trace(w: &str) -> Result<Vec<String>> {
        let w = QTangleWord::parse(w).unwrap();
        validate(&w).map(|(l, _)| l.iter().map(ToString::to_string).collect())
    }

    #[test]
    fn unknot_trace() {
        assert_eq!(trace("cup@1; cap@1").unwrap(), ["empty", "(↓↑)", "empty"]);
    }

    #[test]
    fn cups_nest_to_the_right_of_the_previous_leaf() {
        let t = trace("cup@1; cup'@3; assoc-@2; x+@2; assoc+@2; cap'@3; cap@1").unwrap();
        assert_eq!(t[2], "(↓(↑(↑↓)))");
        assert_eq!(t[3], "(↓((↑↑)↓))");
        assert_eq!(t[4], "(↓((↑↑)↓))");
        assert_eq!(t[5], "(↓(↑(↑↓)))");
        let t = trace("cup@1; cup@1; cap@1; cap@1").unwrap();
        assert_eq!(t[2], "(((↓↑)↓)↑)");
    }

    #[test]
    fn rejects_bad_slices() {
        let bad = |w: &str| match trace(w) {
            Err(Error::Validate { slice, .. }) => slice,
            other => panic!("{w}: {other:?}"),
        };
        assert_eq!(bad("cup@1; cap'@1"), 2);
        assert_eq!(bad("cup@1; x+@1"), 2);
        assert_eq!(bad("cup@1; cup@3; x+@2; cap@1"), 3);
        assert_eq!(bad("cup@1; assoc+@1; cap@1"), 2);
        assert_eq!(bad("cup@3"), 1);
        assert_eq!(bad("cup@1"), 1);
        assert_eq!(bad(""), 0);
    }
}
