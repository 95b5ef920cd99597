//! Pentagon and hexagon identities for the truncated associator.

use super::generators::{associator_with_sign, crossing_value, generator_value};
use super::horizontal::braid_equal;
use super::tangle::{Dir, TangleDiagramSum};
use super::tree::{trace_from, Boundary, BoundaryTree};
use super::word::{QTangleWord, Sign};
use crate::error::Result;

/// The two hexagon moves as (starting bracketing, word, cabled side).
/// `true` for a single strand crossing over a doubled one, `false` for the
/// doubled strand crossing over a single one.
pub const HEXAGONS: [(&str, &str, bool); 2] = [
    ("(a(bc))", "assoc-@1; x+@1; assoc+@1; x+@2; assoc-@1", true),
    ("((ab)c)", "assoc+@1; x+@2; assoc-@1; x+@1; assoc+@1", false),
];

fn up_tree(shape: &str) -> Boundary {
    fn parse(s: &mut std::iter::Peekable<std::str::Chars>) -> BoundaryTree {
        match s.next() {
            Some('(') => {
                let a = parse(s);
                let b = parse(s);
                s.next();
                BoundaryTree::Node(Box::new(a), Box::new(b))
            }
            _ => BoundaryTree::Leaf(Dir::Up),
        }
    }
    Boundary(Some(parse(&mut shape.chars().peekable())))
}

fn evaluate_with(word: &QTangleWord, start: &Boundary, phi: &TangleDiagramSum, n: usize) -> Result<TangleDiagramSum> {
    use super::tree::SliceAction;
    let (levels, actions) = trace_from(word, start.clone())?;
    let mut acc = TangleDiagramSum::identity(&start.dirs(), n);
    for (i, act) in actions.iter().enumerate() {
        let below = levels[i].dirs();
        let v = match act {
            SliceAction::Assoc { at, sign, sizes } => {
                let [a, b, c] = *sizes;
                let (x, rest) = below[*at..].split_at(a);
                let (y, rest) = rest.split_at(b);
                let local = super::generators::cabled_associator(phi, *sign, [x, y, &rest[..c]])?;
                super::generators::pad(local, &below, *at, a + b + c, n)
            }
            other => generator_value(other, &below, n)?,
        };
        acc = acc.compose(&v)?;
    }
    Ok(acc)
}

/// Checks both hexagons at truncation `n` for the associator with the given
/// sign of its degree-2 term.
pub fn hexagon_holds(sign: i64, n: usize) -> Result<bool> {
    let phi = associator_with_sign(sign, n)?;
    for (shape, text, single_over) in HEXAGONS {
        let word = QTangleWord::parse(text)?;
        let lhs = evaluate_with(&word, &up_tree(shape), &phi, n)?;
        let x = crossing_value(Sign::Plus, Dir::Up, Dir::Up, n)?;
        // the right-hand strand starts at bottom point 1, the left at 0
        let rhs = if single_over { x.cable(1, 2)? } else { x.cable(0, 2)? };
        if !braid_equal(&lhs, &rhs)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks the pentagon on four strands at truncation `n`.
pub fn pentagon_holds(sign: i64, n: usize) -> Result<bool> {
    let phi = associator_with_sign(sign, n)?;
    let id = TangleDiagramSum::identity(&[Dir::Up], n);
    // (((12)3)4) -> ((12)(34)) -> (1(2(34)))
    let lhs = phi.cable(0, 2)?.compose(&phi.cable(2, 2)?)?;
    // (((12)3)4) -> ((1(23))4) -> (1((23)4)) -> (1(2(34)))
    let rhs = phi.tensor(&id).compose(&phi.cable(1, 2)?)?.compose(&id.tensor(&phi))?;
    braid_equal(&lhs, &rhs)
}
