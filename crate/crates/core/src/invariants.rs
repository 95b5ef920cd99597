//! Products of linking numbers and framings, and the coefficient sums of
//! the invariant that reproduce them.

use std::time::Instant;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{series_exp, DiagramSum, MAX_NU_DEGREE};
use crate::diagrams::{enumerate_by_matrix, matrices_of_degree, ChordDiagram, TypeMatrix};
use crate::error::{Error, Result};
use crate::qtangle::{
    crossing_ladder, evaluate, integrate, linking_matrix, Boundary, LinkPresentation, Sign, SliceAction,
};
use crate::rational::{factorial, format, inv_fact_pow2, pow, rat, Rational};

/// `prod_{i<=j} l_ij^{s_ij} / s_ij!`.
pub fn ell_s(lk: &[Vec<Rational>], s: &TypeMatrix) -> Result<Rational> {
    if lk.len() != s.size() {
        return Err(Error::CircleMismatch { expected: s.size(), got: lk.len() });
    }
    let mut out = Rational::one();
    for (i, j, e) in s.upper() {
        out *= pow(&lk[i][j], e as usize) / Rational::from_integer(factorial(e as usize));
    }
    Ok(out)
}

/// Sum of the coefficients of `a` over all diagrams of type `s`.
pub fn l_s(a: &DiagramSum, s: &TypeMatrix) -> Result<Rational> {
    if s.degree() > a.truncation() {
        return Err(Error::InsufficientTruncation { needed: s.degree(), have: a.truncation() });
    }
    let diagrams = enumerate_by_matrix(a.circles(), s)?;
    let mut out = Rational::zero();
    for d in diagrams.iter() {
        if let Some(c) = a.terms().get(d) {
            out += c;
        }
    }
    Ok(out)
}

/// Every type matrix on `m` circles of degree at most `max_degree`.
pub fn all_matrices(m: usize, max_degree: usize) -> Vec<TypeMatrix> {
    (0..=max_degree).flat_map(|k| matrices_of_degree(m, k)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub word: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub check: Option<String>,
    #[serde(rename = "S", skip_serializing_if = "Option::is_none", default)]
    pub s: Option<TypeMatrix>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<usize>,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(with = "rational_str")]
    pub lhs: Rational,
    #[serde(with = "rational_str")]
    pub rhs: Rational,
    pub pass: bool,
    /// Wall time in milliseconds, when requested.
    pub ms: Option<u64>,
}

mod rational_str {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::rational::{format, parse, Rational};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

impl VerificationReport {
    fn new(word: &str, n: usize, lhs: Rational, rhs: Rational) -> Self {
        let pass = lhs == rhs;
        Self { word: word.to_string(), check: None, s: None, k: None, n, lhs, rhs, pass, ms: None }
    }

    fn with_check(mut self, check: impl Into<String>) -> Self {
        self.check = Some(check.into());
        self
    }

    fn with_s(mut self, s: &TypeMatrix) -> Self {
        self.s = Some(s.clone());
        self
    }

    pub fn timed(mut self, start: Instant) -> Self {
        self.ms = Some(start.elapsed().as_millis() as u64);
        self
    }

    /// One-line text form.
    pub fn line(&self) -> String {
        let mut head = self.word.clone();
        if let Some(c) = &self.check {
            head.push_str(&format!(" {c}"));
        }
        if let Some(s) = &self.s {
            head.push_str(&format!(" S={s}"));
        }
        if let Some(k) = self.k {
            head.push_str(&format!(" k={k}"));
        }
        let status = if self.pass { "PASS" } else { "FAIL" };
        format!("{status} {head} N={}: {} vs {}", self.n, format(&self.lhs), format(&self.rhs))
    }
}

/// Both sides of the identity for one link and type matrix, from an
/// already computed invariant.
pub fn theorem_report(link: &LinkPresentation, z: &DiagramSum, lk: &[Vec<Rational>], s: &TypeMatrix) -> Result<VerificationReport> {
    let lhs = ell_s(lk, s)?;
    let rhs = l_s(z, s)?;
    Ok(VerificationReport::new(&link.name, z.truncation(), lhs, rhs).with_s(s))
}

pub fn verify_theorem(link: &LinkPresentation, s: &TypeMatrix, n: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    if s.degree() > n {
        return Err(Error::InsufficientTruncation { needed: s.degree(), have: n });
    }
    let z = integrate(link, n)?;
    let lk = linking_matrix(link)?;
    Ok(theorem_report(link, &z, &lk, s)?.timed(start))
}

/// Sum of all degree-`k` coefficients against the sum of `ell_S` over the
/// matrices of degree `k`.
pub fn degree_sum_report(link: &LinkPresentation, z: &DiagramSum, lk: &[Vec<Rational>], k: usize) -> Result<VerificationReport> {
    if k > z.truncation() {
        return Err(Error::InsufficientTruncation { needed: k, have: z.truncation() });
    }
    let lhs = z.coefficient_sum(k);
    let mut rhs = Rational::zero();
    for s in matrices_of_degree(z.circles(), k) {
        rhs += ell_s(lk, &s)?;
    }
    let mut r = VerificationReport::new(&link.name, z.truncation(), lhs, rhs).with_check("degree-sum");
    r.k = Some(k);
    Ok(r)
}

pub fn degree_sum_identity(link: &LinkPresentation, k: usize, n: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let z = integrate(link, n)?;
    let lk = linking_matrix(link)?;
    Ok(degree_sum_report(link, &z, &lk, k)?.timed(start))
}

fn crossing_slot(link: &LinkPresentation, slice: usize) -> Result<Sign> {
    match link.word().slices.get(slice).map(|s| s.generator) {
        Some(crate::qtangle::Generator::Cross(sign)) => Ok(sign),
        _ => Err(Error::Invalid(format!("slice {} is not a crossing", slice + 1))),
    }
}

/// The invariant with crossing slice `slice` (0-based) replaced by `k`
/// parallel horizontal chords with coefficient 1.
pub fn recursion_term(link: &LinkPresentation, slice: usize, k: usize, n: usize) -> Result<DiagramSum> {
    crossing_slot(link, slice)?;
    if k > n {
        return Err(Error::InsufficientTruncation { needed: k, have: n });
    }
    let local = |act: &SliceAction, below: &[crate::qtangle::Dir]| {
        let SliceAction::Cross { at, .. } = act else { unreachable!("checked above") };
        let x = crossing_ladder(k, below[*at], below[*at + 1], n)?;
        Ok(crate::qtangle::pad_slice(x, below, *at, 2, n))
    };
    let t = evaluate(link.word(), &Boundary::empty(), n, Some((slice, &local)))?;
    link.finish(&t)
}

/// Everything needed to test a crossing change: both invariants, both
/// linking matrices and the ladder terms `D_0..=D_N`.
pub struct CrossingChange {
    name: String,
    n: usize,
    a: usize,
    b: usize,
    zp: DiagramSum,
    zm: DiagramSum,
    lkp: Vec<Vec<Rational>>,
    lkm: Vec<Vec<Rational>>,
    d: Vec<DiagramSum>,
}

impl CrossingChange {
    /// `slice` is 0-based. If it is a negative crossing, the flipped word
    /// plays the positive role.
    pub fn new(link: &LinkPresentation, slice: usize, n: usize) -> Result<Self> {
        let sign = crossing_slot(link, slice)?;
        let flipped = link.with_crossing_flipped(slice)?;
        let (plus, minus) = match sign {
            Sign::Plus => (link.clone(), flipped),
            Sign::Minus => (flipped, link.clone()),
        };
        let (_, a, b) = plus.crossing_components(slice)?;
        let d = (0..=n).map(|k| recursion_term(&plus, slice, k, n)).collect::<Result<_>>()?;
        Ok(Self {
            name: link.name.clone(),
            n,
            a: a.min(b),
            b: a.max(b),
            zp: integrate(&plus, n)?,
            zm: integrate(&minus, n)?,
            lkp: linking_matrix(&plus)?,
            lkm: linking_matrix(&minus)?,
            d,
        })
    }

    pub fn circles(&self) -> usize {
        self.zp.circles()
    }

    /// Components met at the crossing, 0-based, smaller first.
    pub fn components(&self) -> (usize, usize) {
        (self.a, self.b)
    }

    /// Reports for the variation formula, its closed form from linking
    /// numbers, the ladder shift `L_s(D_k) = L_{s-k}(D_0)` and the expansion
    /// of `L_k(D_0)` in terms of the positive link.
    pub fn reports(&self, s: &TypeMatrix) -> Result<Vec<VerificationReport>> {
        let n = self.n;
        if s.degree() > n {
            return Err(Error::InsufficientTruncation { needed: s.degree(), have: n });
        }
        let (a, b, name) = (self.a, self.b, &self.name);
        let sab = s.get(a, b) as usize;
        let mut out = Vec::new();

        // L_S(L+) - L_S(L-) = sum_j L_S(D_{2j+1}) / ((2j+1)! 4^j)
        let lhs = l_s(&self.zp, s)? - l_s(&self.zm, s)?;
        let mut rhs = Rational::zero();
        for k in (1..=n).step_by(2) {
            rhs += l_s(&self.d[k], s)? * inv_fact_pow2(k) * Rational::from_integer(2.into());
        }
        out.push(VerificationReport::new(name, n, lhs.clone(), rhs).with_check("variation").with_s(s));

        // the same variation from linking numbers, directly and in closed form
        let direct = ell_s(&self.lkp, s)? - ell_s(&self.lkm, s)?;
        let mut l0 = Rational::one();
        for (i, j, e) in s.upper() {
            if (i, j) != (a, b) {
                l0 *= pow(&self.lkp[i][j], e as usize) / Rational::from_integer(factorial(e as usize));
            }
        }
        let l = &self.lkp[a][b];
        let mut closed = Rational::zero();
        for i in 1..=sab {
            let sign = if i % 2 == 1 { 1 } else { -1 };
            closed += rat(sign, 1) * pow(l, sab - i) / Rational::from_integer(factorial(i) * factorial(sab - i));
        }
        closed *= l0;
        out.push(VerificationReport::new(name, n, lhs, direct.clone()).with_check("variation-vs-linking").with_s(s));
        out.push(VerificationReport::new(name, n, direct, closed).with_check("variation-closed-form").with_s(s));

        // L_s(D_k) = L_{s-k}(D_0), and zero once k > s
        for k in 1..=n.min(sab + 1) {
            let lhs = l_s(&self.d[k], s)?;
            let rhs = if k <= sab {
                l_s(&self.d[0], &s.with_entry(a, b, (sab - k) as u32))?
            } else {
                Rational::zero()
            };
            out.push(VerificationReport::new(name, n, lhs, rhs).with_check(format!("ladder-shift k={k}")).with_s(s));
        }

        // L_k(D_0) = sum_p (-1)^p / (p! 2^p) L_{k-p}(L+)
        for k in 0..=sab {
            let sk = s.with_entry(a, b, k as u32);
            let lhs = l_s(&self.d[0], &sk)?;
            let mut rhs = Rational::zero();
            for p in 0..=k {
                let c = if p % 2 == 0 { inv_fact_pow2(p) } else { -inv_fact_pow2(p) };
                rhs += c * l_s(&self.zp, &s.with_entry(a, b, (k - p) as u32))?;
            }
            out.push(
                VerificationReport::new(name, n, lhs, rhs).with_check(format!("ladder-expansion k={k}")).with_s(&sk),
            );
        }
        Ok(out)
    }
}

pub fn check_recursion(link: &LinkPresentation, slice: usize, s: &TypeMatrix, n: usize) -> Result<Vec<VerificationReport>> {
    let start = Instant::now();
    if s.degree() > n {
        return Err(Error::InsufficientTruncation { needed: s.degree(), have: n });
    }
    let mut out = CrossingChange::new(link, slice, n)?.reports(s)?;
    let ms = start.elapsed().as_millis() as u64;
    for r in &mut out {
        r.ms = Some(ms);
    }
    Ok(out)
}

/// Which unknot a coefficient-sum value refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Unknot {
    Zero,
    One,
}

/// `Z(U_0) # exp(chord / 2)` on one circle, built without any word.
pub fn framed_unknot_series(n: usize) -> Result<DiagramSum> {
    let nu = crate::algebra::nu(n)?;
    let half = DiagramSum::monomial(ChordDiagram::parallel(1), rat(1, 2), n);
    nu.connected_sum(&series_exp(&half)?)
}

/// Degree-`k` coefficient sum of the unknot with framing 0 or 1, from the
/// engine (`words`) and from the algebra.
pub fn unknot_degree_sums(k: usize, which: Unknot, n: usize) -> Result<(Rational, Rational)> {
    if k > n {
        return Err(Error::InsufficientTruncation { needed: k, have: n });
    }
    if n > MAX_NU_DEGREE {
        return Err(Error::UnsupportedTruncation { requested: n, max: MAX_NU_DEGREE, reason: "unknot series".into() });
    }
    let (engine, algebra) = match which {
        Unknot::Zero => (integrate(&crate::qtangle::corpus::load("u0")?, n)?, crate::algebra::nu(n)?),
        Unknot::One => (integrate(&crate::qtangle::corpus::load("u1")?, n)?, framed_unknot_series(n)?),
    };
    Ok((engine.coefficient_sum(k), algebra.coefficient_sum(k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn ell_s_values() {
        let hopf = vec![vec![int(0), int(1)], vec![int(1), int(0)]];
        assert_eq!(ell_s(&hopf, &TypeMatrix::zero(2)).unwrap(), int(1));
        assert_eq!(ell_s(&hopf, &TypeMatrix::single(2, 0, 1, 2)).unwrap(), rat(1, 2));
        assert_eq!(ell_s(&[vec![rat(3, 2)]], &TypeMatrix::single(1, 0, 0, 2)).unwrap(), rat(9, 8));
        assert!(ell_s(&hopf, &TypeMatrix::zero(1)).is_err());
    }

    #[test]
    fn l_s_needs_truncation() {
        let z = DiagramSum::one(1, 2);
        assert!(matches!(l_s(&z, &TypeMatrix::single(1, 0, 0, 3)), Err(Error::InsufficientTruncation { .. })));
        assert_eq!(l_s(&z, &TypeMatrix::zero(1)).unwrap(), int(1));
    }

    #[test]
    fn report_json_shape() {
        let r = VerificationReport::new("w", 2, rat(1, 2), rat(1, 2)).with_s(&TypeMatrix::zero(1));
        let j = serde_json::to_string(&r).unwrap();
        assert_eq!(j, r#"{"word":"w","S":[[0]],"N":2,"lhs":"1/2","rhs":"1/2","pass":true,"ms":null}"#);
        let back: VerificationReport = serde_json::from_str(&j).unwrap();
        assert_eq!(back, r);
    }
}
