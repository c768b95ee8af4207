use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Number of terms past the fitting window that a fitted series must also
/// reproduce.
pub const HELD_OUT_TERMS: usize = 10;

/// `P(x) / Q(x)` with integer coefficients (lowest degree first), `Q(0) > 0`
/// and no common integer factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalSeries {
    #[serde(serialize_with = "decimal_strings")]
    pub numerator: Vec<BigInt>,
    #[serde(serialize_with = "decimal_strings")]
    pub denominator: Vec<BigInt>,
    /// Length of the linear recurrence satisfied by the coefficients.
    pub order: usize,
    /// Number of leading terms used for fitting.
    pub fitted_terms: usize,
    /// Number of further terms checked against the fit.
    pub validated_terms: usize,
}

fn decimal_strings<S: serde::Serializer>(
    v: &[BigInt],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

/// Shortest linear recurrence generating `s` (Berlekamp–Massey over the
/// rationals). Returns the connection polynomial `C` with `C(0) = 1` and the
/// recurrence length `L`: `Σ_{i=0..=L} C_i s_{n-i} = 0` for `n >= L`.
fn berlekamp_massey(s: &[BigRational]) -> (Vec<BigRational>, usize) {
    let mut c = vec![BigRational::one()];
    let mut b = vec![BigRational::one()];
    let mut l = 0;
    let mut shift = 1;
    let mut last_d = BigRational::one();
    for n in 0..s.len() {
        let mut d = s[n].clone();
        for i in 1..c.len().min(n + 1) {
            d += &c[i] * &s[n - i];
        }
        if d.is_zero() {
            shift += 1;
            continue;
        }
        let coef = &d / &last_d;
        let old = c.clone();
        if c.len() < b.len() + shift {
            c.resize(b.len() + shift, BigRational::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            c[i + shift] -= &coef * bi;
        }
        if 2 * l <= n {
            l = n + 1 - l;
            b = old;
            last_d = d;
            shift = 1;
        } else {
            shift += 1;
        }
    }
    c.resize(l + 1, BigRational::zero());
    (c, l)
}

fn lcm_of_denominators(v: &[BigRational]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

fn trim_zeros(v: &mut Vec<BigInt>) {
    while v.len() > 1 && v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

/// Fits `P/Q` to `counts` with a recurrence of length at most `max_order`.
///
/// The first `2 * max_order + 1` terms are used for fitting; every remaining
/// term (at least [`HELD_OUT_TERMS`] are required) must be reproduced
/// exactly, or the fit is rejected with [`Error::NoRecurrence`].
pub fn rational_series(counts: &[BigInt], max_order: usize) -> Result<RationalSeries> {
    let fit_len = 2 * max_order + 1;
    if counts.len() < fit_len + HELD_OUT_TERMS {
        return Err(Error::InvalidSpec(format!(
            "need {} terms to fit order {max_order} and validate, got {}",
            fit_len + HELD_OUT_TERMS,
            counts.len()
        )));
    }
    let s: Vec<BigRational> = counts[..fit_len]
        .iter()
        .map(|x| BigRational::from_integer(x.clone()))
        .collect();
    let (c, l) = berlekamp_massey(&s);
    if l > max_order {
        return Err(Error::NoRecurrence { max_order });
    }
    // P = C * F mod x^L
    let p: Vec<BigRational> = (0..l.max(1))
        .map(|n| (0..=n.min(l)).fold(BigRational::zero(), |acc, i| acc + &c[i] * &s[n - i]))
        .collect();
    let scale = lcm_of_denominators(&c).lcm(&lcm_of_denominators(&p));
    let mut num: Vec<BigInt> = p.iter().map(|x| (x * &scale).to_integer()).collect();
    let mut den: Vec<BigInt> = c.iter().map(|x| (x * &scale).to_integer()).collect();
    let g = num
        .iter()
        .chain(den.iter())
        .fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        num.iter_mut().for_each(|x| *x /= &g);
        den.iter_mut().for_each(|x| *x /= &g);
    }
    if den[0].is_negative() {
        num.iter_mut().for_each(|x| *x = -x.clone());
        den.iter_mut().for_each(|x| *x = -x.clone());
    }
    trim_zeros(&mut num);
    trim_zeros(&mut den);
    let series = RationalSeries {
        numerator: num,
        denominator: den,
        order: l,
        fitted_terms: fit_len,
        validated_terms: counts.len() - fit_len,
    };
    if series.expand(counts.len())? != counts {
        return Err(Error::NoRecurrence { max_order });
    }
    Ok(series)
}

impl RationalSeries {
    /// The first `n` coefficients of `P/Q`.
    pub fn expand(&self, n: usize) -> Result<Vec<BigInt>> {
        let q0 = &self.denominator[0];
        let mut out: Vec<BigInt> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.numerator.get(k).cloned().unwrap_or_default();
            for (i, qi) in self.denominator.iter().enumerate().skip(1) {
                if i > k {
                    break;
                }
                acc -= qi * &out[k - i];
            }
            let (q, r) = acc.div_rem(q0);
            if !r.is_zero() {
                return Err(Error::NoRecurrence {
                    max_order: self.order,
                });
            }
            out.push(q);
        }
        Ok(out)
    }
}

fn fmt_poly(f: &mut fmt::Formatter<'_>, p: &[BigInt]) -> fmt::Result {
    let mut first = true;
    for (i, c) in p.iter().enumerate() {
        if c.is_zero() && p.len() > 1 {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
        }
        first = false;
        let mag_str = if mag.is_one() && i > 0 {
            String::new()
        } else {
            mag.to_string()
        };
        match i {
            0 => write!(f, "{mag}")?,
            1 => write!(f, "{mag_str}x")?,
            _ => write!(f, "{mag_str}x^{i}")?,
        }
    }
    Ok(())
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        fmt_poly(f, &self.numerator)?;
        write!(f, ") / (")?;
        fmt_poly(f, &self.denominator)?;
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn linear_counts() {
        let counts: Vec<BigInt> = (1..=20).map(BigInt::from).collect();
        let s = rational_series(&counts, 2).unwrap();
        assert_eq!(s.numerator, ints(&[1]));
        assert_eq!(s.denominator, ints(&[1, -2, 1]));
        assert_eq!(s.to_string(), "(1) / (1 - 2x + x^2)");
    }

    #[test]
    fn free_group_cumulative() {
        let counts: Vec<BigInt> = (0..20u32)
            .map(|n| BigInt::from(2) * BigInt::from(3).pow(n) - 1)
            .collect();
        let s = rational_series(&counts, 2).unwrap();
        assert_eq!(s.numerator, ints(&[1, 1]));
        assert_eq!(s.denominator, ints(&[1, -4, 3]));
    }

    #[test]
    fn square_lattice_balls() {
        let counts: Vec<BigInt> = (0..31i64)
            .map(|n| BigInt::from(2 * n * n + 2 * n + 1))
            .collect();
        let s = rational_series(&counts, 3).unwrap();
        assert_eq!(s.numerator, ints(&[1, 2, 1]));
        assert_eq!(s.denominator, ints(&[1, -3, 3, -1]));
        assert_eq!(s.expand(31).unwrap(), counts);
    }

    #[test]
    fn transient_prefix_and_finite_sequences() {
        // s_n = s_(n-1) only from n = 2 on, so the recurrence has length 2
        let s = rational_series(&ints(&[1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2]), 2).unwrap();
        assert_eq!(s.order, 2);
        assert_eq!(s.to_string(), "(1 + x) / (1 - x)");
        assert_eq!(s.expand(5).unwrap(), ints(&[1, 2, 2, 2, 2]));
        let zeros = ints(&[0; 13]);
        let z = rational_series(&zeros, 1).unwrap();
        assert_eq!(z.order, 0);
        assert_eq!(z.expand(13).unwrap(), zeros);
    }

    #[test]
    fn order_cap_and_held_out_failures() {
        let squares: Vec<BigInt> = (0..20i64).map(|n| BigInt::from(n * n)).collect();
        assert_eq!(
            rational_series(&squares, 2),
            Err(Error::NoRecurrence { max_order: 2 })
        );
        // fits the first 5 terms with order 2, then breaks
        let mut fib = ints(&[0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377]);
        fib[14] += 1;
        assert_eq!(
            rational_series(&fib, 2),
            Err(Error::NoRecurrence { max_order: 2 })
        );
        assert!(matches!(
            rational_series(&fib[..5], 2),
            Err(Error::InvalidSpec(_))
        ));
    }

    proptest! {
        #[test]
        fn recovers_random_recurrences(
            init in proptest::collection::vec(-5i64..6, 1..4),
            coef in proptest::collection::vec(-3i64..4, 1..4),
        ) {
            let order = init.len().min(coef.len());
            let mut s: Vec<BigInt> = init[..order].iter().map(|&x| BigInt::from(x)).collect();
            while s.len() < 2 * order + 1 + HELD_OUT_TERMS + 5 {
                let n = s.len();
                let next = (0..order).fold(BigInt::zero(), |acc, i| acc + BigInt::from(coef[i]) * &s[n - 1 - i]);
                s.push(next);
            }
            let fit = rational_series(&s, order).unwrap();
            prop_assert!(fit.order <= order);
            prop_assert_eq!(fit.expand(s.len()).unwrap(), s);
        }
    }
}
