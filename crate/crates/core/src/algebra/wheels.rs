use num_traits::Zero;

use super::{chi, series_exp, DiagramSum, JacobiConfig, WheelSum};
use crate::error::{Error, Result};
use crate::rational::{binomial, factorial, int, Rational};

/// Highest degree for which the unknot series is produced.
pub const MAX_NU_DEGREE: usize = 4;

/// Bernoulli numbers `B_0..=B_n` (with `B_1 = -1/2`).
pub fn bernoulli(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        if m == 0 {
            b.push(int(1));
            continue;
        }
        let s: Rational = (0..m).map(|j| Rational::from_integer(binomial(m + 1, j)) * &b[j]).sum();
        b.push(-s / Rational::from_integer(binomial(m + 1, m)));
    }
    b
}

/// Coefficient of `x^{2n}` in `(1/2) ln(sinh(x/2) / (x/2))`, which equals
/// `B_{2n} / (4n (2n)!)`.
pub fn taylor_b(n: usize) -> Result<Rational> {
    if n == 0 {
        return Err(Error::Algebra("wheel coefficient index must be positive".into()));
    }
    let b = bernoulli(2 * n);
    Ok(&b[2 * n] / Rational::from_integer(factorial(2 * n) * (4 * n)))
}

/// `sum_{2n <= N} b_{2n} W_{2n}`.
pub fn wheel_series(truncation: usize) -> WheelSum {
    let mut x = WheelSum::zero(truncation);
    for n in 1..=truncation / 2 {
        let cfg = JacobiConfig::new(vec![2 * n as u32]).expect("even size");
        x.add_term(cfg, taylor_b(n).expect("n >= 1"));
    }
    x
}

/// The unknot series on one circle: the symmetrization of the exponential
/// (under disjoint union) of the weighted wheels.
pub fn nu(truncation: usize) -> Result<DiagramSum> {
    if truncation > MAX_NU_DEGREE {
        return Err(Error::UnsupportedTruncation {
            requested: truncation,
            max: MAX_NU_DEGREE,
            reason: "unknot series".into(),
        });
    }
    let ex = series_exp(&wheel_series(truncation))?;
    let mut out = DiagramSum::zero(1, truncation);
    for (cfg, c) in ex.terms() {
        if c.is_zero() {
            continue;
        }
        out = out.add_scaled(&chi(cfg, truncation), c)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::ChordDiagram;

    #[test]
    fn bernoulli_values() {
        let b = bernoulli(6);
        assert_eq!(b[1], rat(-1, 2));
        assert_eq!(b[2], rat(1, 6));
        assert_eq!(b[3], int(0));
        assert_eq!(b[4], rat(-1, 30));
        assert_eq!(b[6], rat(1, 42));
    }

    #[test]
    fn first_wheel_coefficients() {
        assert_eq!(taylor_b(1).unwrap(), rat(1, 48));
        assert_eq!(taylor_b(2).unwrap(), rat(-1, 5760));
        assert!(taylor_b(0).is_err());
    }

    #[test]
    fn nu_low_degrees() {
        let n = nu(4).unwrap();
        assert_eq!(n.coefficient(&ChordDiagram::empty(1)).unwrap(), int(1));
        assert!(n.degree_part(1).is_zero());
        assert!(n.degree_part(3).is_zero());
        for k in 1..=4 {
            assert_eq!(n.coefficient_sum(k), int(0));
        }
        // b_2 chi(W_2) = (1/24)(parallel - crossed)
        let crossed = ChordDiagram::canonicalize(&[vec![0, 1, 0, 1]]).unwrap();
        assert_eq!(n.coefficient(&crossed).unwrap(), rat(-1, 24));
        assert!(matches!(nu(5), Err(Error::UnsupportedTruncation { .. })));
    }
}
