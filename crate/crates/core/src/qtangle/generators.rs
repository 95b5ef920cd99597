//! Values of the elementary q-tangles.

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::Zero;
use once_cell::sync::Lazy;

use super::tangle::{Component, Dir, Endpoint, Skeleton, TangleDiagramSum};
use super::tree::SliceAction;
use super::word::{Sign, Turn};
use crate::algebra::{chi_linear, series_exp, series_inverse, series_sqrt, wheel_series, MAX_NU_DEGREE};
use crate::error::{Error, Result};
use crate::rational::{int, inv_fact_pow2, rat};

/// Highest truncation at which the associator is known exactly.
pub const MAX_ASSOCIATOR_DEGREE: usize = 3;

/// Sign of the degree-2 associator term, fixed by the hexagon identity for
/// the crossing convention used here.
pub const ASSOCIATOR_SIGN: i64 = -1;

fn crossing_skeleton(left: Dir, right: Dir) -> Skeleton {
    let l = match left {
        Dir::Up => (Endpoint::Bottom(0), Endpoint::Top(1)),
        Dir::Down => (Endpoint::Top(1), Endpoint::Bottom(0)),
    };
    let r = match right {
        Dir::Up => (Endpoint::Bottom(1), Endpoint::Top(0)),
        Dir::Down => (Endpoint::Top(0), Endpoint::Bottom(1)),
    };
    Skeleton {
        bottom: 2,
        top: 2,
        components: vec![
            Component { ends: Some(l), origin: (0, 0) },
            Component { ends: Some(r), origin: (0, 1) },
        ],
    }
}

fn ladder_seq(k: usize, dir: Dir) -> Vec<usize> {
    match dir {
        Dir::Up => (0..k).collect(),
        Dir::Down => (0..k).rev().collect(),
    }
}

/// `k` horizontal chords between the two strands of a crossing whose bottom
/// points have directions `left`, `right`.
pub fn crossing_ladder(k: usize, left: Dir, right: Dir, truncation: usize) -> Result<TangleDiagramSum> {
    TangleDiagramSum::from_raw(
        crossing_skeleton(left, right),
        truncation,
        [(vec![ladder_seq(k, left), ladder_seq(k, right)], int(1))],
    )
}

/// `sum_k sign^k / (2^k k!) X_k`.
pub fn crossing_value(sign: Sign, left: Dir, right: Dir, truncation: usize) -> Result<TangleDiagramSum> {
    let raw = (0..=truncation).map(|k| {
        let c = inv_fact_pow2(k) * int(sign.value().pow(k as u32));
        (vec![ladder_seq(k, left), ladder_seq(k, right)], c)
    });
    TangleDiagramSum::from_raw(crossing_skeleton(left, right), truncation, raw.collect::<Vec<_>>())
}

/// The unknot series cut open to one upward strand.
pub fn nu_interval(truncation: usize) -> Result<TangleDiagramSum> {
    if truncation > MAX_NU_DEGREE {
        return Err(Error::UnsupportedTruncation {
            requested: truncation,
            max: MAX_NU_DEGREE,
            reason: "unknot series".into(),
        });
    }
    let ex = series_exp(&wheel_series(truncation))?;
    let mut raw = Vec::new();
    for (cfg, c) in ex.terms() {
        if c.is_zero() {
            continue;
        }
        for (seq, v) in chi_linear(cfg, truncation) {
            raw.push((vec![seq.into_iter().map(usize::from).collect()], v * c));
        }
    }
    TangleDiagramSum::from_raw(Skeleton::identity(&[Dir::Up]), truncation, raw)
}

static SQRT_NU: Lazy<Mutex<HashMap<usize, TangleDiagramSum>>> = Lazy::new(Default::default);

/// Square root of [`nu_interval`] under stacking.
pub fn sqrt_nu_interval(truncation: usize) -> Result<TangleDiagramSum> {
    if let Some(v) = SQRT_NU.lock().unwrap().get(&truncation) {
        return Ok(v.clone());
    }
    let v = series_sqrt(&nu_interval(truncation)?)?;
    SQRT_NU.lock().unwrap().insert(truncation, v.clone());
    Ok(v)
}

fn turn_value(ends: (Endpoint, Endpoint), cup: bool, truncation: usize) -> Result<TangleDiagramSum> {
    let half = sqrt_nu_interval(truncation)?;
    let (bottom, top) = if cup { (0, 2) } else { (2, 0) };
    let skeleton = Skeleton { bottom, top, components: vec![Component { ends: Some(ends), origin: (0, 0) }] };
    let raw = half
        .terms()
        .iter()
        .map(|(k, c)| (vec![k[0].iter().map(|&l| l as usize).collect()], c.clone()));
    TangleDiagramSum::from_raw(skeleton, truncation, raw.collect::<Vec<_>>())
}

pub fn cup_value(turn: Turn, truncation: usize) -> Result<TangleDiagramSum> {
    let v = turn_value((Endpoint::Top(0), Endpoint::Top(1)), true, truncation)?;
    match turn {
        Turn::DownUp => Ok(v),
        Turn::UpDown => v.reverse_strand(0),
    }
}

pub fn cap_value(turn: Turn, truncation: usize) -> Result<TangleDiagramSum> {
    let v = turn_value((Endpoint::Bottom(1), Endpoint::Bottom(0)), false, truncation)?;
    match turn {
        Turn::DownUp => Ok(v),
        Turn::UpDown => v.reverse_strand(0),
    }
}

fn check_associator_degree(truncation: usize) -> Result<()> {
    if truncation > MAX_ASSOCIATOR_DEGREE {
        return Err(Error::UnsupportedTruncation {
            requested: truncation,
            max: MAX_ASSOCIATOR_DEGREE,
            reason: "associator".into(),
        });
    }
    Ok(())
}

/// A single chord between strands `a` and `b` of `n` upward strands.
pub fn t_chord(n: usize, a: usize, b: usize, truncation: usize) -> Result<TangleDiagramSum> {
    let mut seqs = vec![Vec::new(); n];
    seqs[a].push(0);
    seqs[b].push(0);
    TangleDiagramSum::from_raw(Skeleton::identity(&vec![Dir::Up; n]), truncation, [(seqs, int(1))])
}

/// `1 + c (t12 t23 - t23 t12)` on three upward strands, products read
/// bottom to top, with `c = sign / 24`.
pub fn associator_with_sign(sign: i64, truncation: usize) -> Result<TangleDiagramSum> {
    check_associator_degree(truncation)?;
    let t12 = t_chord(3, 0, 1, truncation)?;
    let t23 = t_chord(3, 1, 2, truncation)?;
    let comm = t12.compose(&t23)?.add_scaled(&t23.compose(&t12)?, &int(-1))?;
    TangleDiagramSum::identity(&[Dir::Up; 3], truncation).add_scaled(&comm, &rat(sign, 24))
}

pub fn associator(truncation: usize) -> Result<TangleDiagramSum> {
    associator_with_sign(ASSOCIATOR_SIGN, truncation)
}

/// The associator (or its inverse) applied to three blocks of strands with
/// the given directions.
pub fn cabled_associator(
    phi: &TangleDiagramSum,
    sign: Sign,
    blocks: [&[Dir]; 3],
) -> Result<TangleDiagramSum> {
    let mut v = match sign {
        Sign::Plus => phi.clone(),
        Sign::Minus => series_inverse(phi)?,
    };
    for i in (0..3).rev() {
        v = v.cable(i, blocks[i].len())?;
    }
    let dirs: Vec<Dir> = blocks.concat();
    for i in (0..dirs.len()).rev() {
        if dirs[i] == Dir::Down {
            v = v.reverse_strand(i)?;
        }
    }
    Ok(v)
}

/// Value of one slice, padded with identity strands. `below` holds the
/// directions of the strands under the slice.
pub fn generator_value(action: &SliceAction, below: &[Dir], truncation: usize) -> Result<TangleDiagramSum> {
    let (at, width, local) = match action {
        SliceAction::Identity => return Ok(TangleDiagramSum::identity(below, truncation)),
        SliceAction::Cross { at, sign } => {
            (*at, 2, crossing_value(*sign, below[*at], below[*at + 1], truncation)?)
        }
        SliceAction::Cup { at, turn } => (*at, 0, cup_value(*turn, truncation)?),
        SliceAction::Cap { at, turn } => (*at, 2, cap_value(*turn, truncation)?),
        SliceAction::Assoc { at, sign, sizes } => {
            let phi = associator(truncation)?;
            let [a, b, c] = *sizes;
            let (x, rest) = below[*at..].split_at(a);
            let (y, rest) = rest.split_at(b);
            (*at, a + b + c, cabled_associator(&phi, *sign, [x, y, &rest[..c]])?)
        }
    };
    Ok(pad(local, below, at, width, truncation))
}

/// Tensors a local value with identity strands on both sides.
pub fn pad(local: TangleDiagramSum, below: &[Dir], at: usize, width: usize, truncation: usize) -> TangleDiagramSum {
    let left = TangleDiagramSum::identity(&below[..at], truncation);
    let right = TangleDiagramSum::identity(&below[at + width..], truncation);
    left.tensor(&local).tensor(&right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, Rational};

    #[test]
    fn crossing_coefficients() {
        let x = crossing_value(Sign::Plus, Dir::Up, Dir::Up, 3).unwrap();
        let coeffs: Vec<Rational> = (0..=3)
            .map(|k| {
                let key = crossing_ladder(k, Dir::Up, Dir::Up, 3).unwrap().terms().keys().next().unwrap().clone();
                x.coefficient(&key)
            })
            .collect();
        assert_eq!(coeffs, [int(1), rat(1, 2), rat(1, 8), rat(1, 48)]);
        let y = crossing_value(Sign::Minus, Dir::Up, Dir::Down, 1).unwrap();
        let key = crossing_ladder(1, Dir::Up, Dir::Down, 1).unwrap().terms().keys().next().unwrap().clone();
        assert_eq!(y.coefficient(&key), rat(-1, 2));
    }

    #[test]
    fn sqrt_nu_squares_back() {
        let h = sqrt_nu_interval(4).unwrap();
        let n = nu_interval(4).unwrap();
        let sq = h.compose(&h).unwrap();
        // interval diagrams commute only modulo 4T, so compare closures
        let (a, b) = (sq.close_strands().unwrap(), n.close_strands().unwrap());
        assert!(crate::algebra::equal_mod4t(&a, &b, 4).unwrap());
        assert_eq!(b, crate::algebra::nu(4).unwrap());
    }

    #[test]
    fn associator_degree_cap() {
        assert!(matches!(associator(4), Err(Error::UnsupportedTruncation { max: 3, .. })));
        let phi = associator(2).unwrap();
        assert_eq!(phi.terms().len(), 3);
    }

    #[test]
    fn downward_associator_keeps_commutator_shape() {
        let phi = associator(2).unwrap();
        let down = cabled_associator(&phi, Sign::Plus, [&[Dir::Down], &[Dir::Down], &[Dir::Down]]).unwrap();
        assert_eq!(down.terms().len(), 3);
        let mut vals: Vec<Rational> = down.terms().values().cloned().collect();
        vals.sort();
        assert_eq!(vals, [rat(-1, 24), rat(1, 24), int(1)]);
    }
}
