use num_traits::{One, Zero};

use super::DiagramSum;
use crate::error::{Error, Result};
use crate::rational::{binomial_rational, int, rat, Rational};

/// A degree-truncated associative algebra with unit. Each implementor fixes
/// its own product: connected sum for one-circle diagram sums, disjoint union
/// for wheel combinations, stacking for tangle diagrams.
pub trait GradedAlgebra: Sized + Clone {
    fn truncation(&self) -> usize;
    fn unit(&self) -> Self;
    fn product(&self, rhs: &Self) -> Result<Self>;
    fn constant_term(&self) -> Rational;
    fn add_scaled(&self, rhs: &Self, c: &Rational) -> Result<Self>;
    fn scaled(&self, c: &Rational) -> Self;
}

/// `sum_{k <= N} x^k / k!`; `x` must have zero constant term.
pub fn series_exp<A: GradedAlgebra>(x: &A) -> Result<A> {
    if !x.constant_term().is_zero() {
        return Err(Error::Algebra("exp needs a series with zero constant term".into()));
    }
    let mut result = x.unit();
    let mut term = x.unit();
    for k in 1..=x.truncation() {
        term = term.product(x)?.scaled(&rat(1, k as i64));
        result = result.add_scaled(&term, &Rational::one())?;
    }
    Ok(result)
}

fn power_series<A: GradedAlgebra>(a: &A, coeff: impl Fn(usize) -> Rational) -> Result<A> {
    if a.constant_term() != Rational::one() {
        return Err(Error::Algebra("series needs constant term 1".into()));
    }
    let x = a.add_scaled(&a.unit(), &-Rational::one())?;
    let mut result = a.unit();
    let mut pow = a.unit();
    for k in 1..=a.truncation() {
        pow = pow.product(&x)?;
        result = result.add_scaled(&pow, &coeff(k))?;
    }
    Ok(result)
}

/// The square root with constant term 1, by the binomial series.
pub fn series_sqrt<A: GradedAlgebra>(a: &A) -> Result<A> {
    let half = rat(1, 2);
    power_series(a, |k| binomial_rational(&half, k))
}

/// Multiplicative inverse of a series with constant term 1.
pub fn series_inverse<A: GradedAlgebra>(a: &A) -> Result<A> {
    power_series(a, |k| if k % 2 == 0 { int(1) } else { int(-1) })
}

impl GradedAlgebra for DiagramSum {
    fn truncation(&self) -> usize {
        self.truncation
    }

    fn unit(&self) -> Self {
        DiagramSum::one(self.circles, self.truncation)
    }

    fn product(&self, rhs: &Self) -> Result<Self> {
        self.connected_sum(rhs)
    }

    fn constant_term(&self) -> Rational {
        self.terms.get(&crate::ChordDiagram::empty(self.circles)).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_scaled(&self, rhs: &Self, c: &Rational) -> Result<Self> {
        DiagramSum::add_scaled(self, rhs, c)
    }

    fn scaled(&self, c: &Rational) -> Self {
        DiagramSum::scaled(self, c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::mod4t_reduce;
    use crate::rational::inv_fact_pow2;
    use crate::ChordDiagram;

    fn same_mod4t(a: &DiagramSum, b: &DiagramSum) -> bool {
        (0..=a.truncation().min(b.truncation())).all(|k| mod4t_reduce(a, k).unwrap() == mod4t_reduce(b, k).unwrap())
    }

    #[test]
    fn exp_of_zero_is_one() {
        let z = DiagramSum::zero(1, 4);
        assert_eq!(series_exp(&z).unwrap(), DiagramSum::one(1, 4));
    }

    #[test]
    fn exp_of_half_chord_under_connected_sum() {
        let x = DiagramSum::monomial(ChordDiagram::parallel(1), rat(1, 2), 4);
        let e = series_exp(&x).unwrap();
        let mut expected = DiagramSum::zero(1, 4);
        for k in 0..=4 {
            expected.add_term(ChordDiagram::parallel(k), inv_fact_pow2(k)).unwrap();
            assert_eq!(e.coefficient_sum(k), inv_fact_pow2(k));
        }
        assert!(same_mod4t(&e, &expected));
        assert_eq!(e.degree_part(2), expected.degree_part(2));
    }

    #[test]
    fn exp_rejects_constant_term() {
        assert!(series_exp(&DiagramSum::one(1, 2)).is_err());
        assert!(series_sqrt(&DiagramSum::zero(1, 2)).is_err());
    }

    #[test]
    fn sqrt_of_one_is_one() {
        let one = DiagramSum::one(1, 3);
        assert_eq!(series_sqrt(&one).unwrap(), one);
    }

    #[test]
    fn sqrt_first_order() {
        let d = ChordDiagram::canonicalize(&[vec![0, 1, 0, 1]]).unwrap();
        let c = rat(3, 5);
        let a = DiagramSum::one(1, 3).plus(&DiagramSum::monomial(d.clone(), c.clone(), 3)).unwrap();
        let r = series_sqrt(&a).unwrap();
        assert_eq!(r.coefficient(&d).unwrap(), c / int(2));
        assert_eq!(r.degree_part(1), DiagramSum::zero(1, 3));
    }

    #[test]
    fn inverse_times_self_is_one() {
        let mut a = DiagramSum::one(1, 4);
        a.add_term(ChordDiagram::parallel(1), rat(2, 3)).unwrap();
        a.add_term(ChordDiagram::canonicalize(&[vec![0, 1, 0, 1]]).unwrap(), rat(-1, 7)).unwrap();
        let inv = series_inverse(&a).unwrap();
        assert!(same_mod4t(&a.product(&inv).unwrap(), &DiagramSum::one(1, 4)));
    }
}
