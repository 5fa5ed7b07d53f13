//! Monic integer polynomials of small degree: exact evaluation,
//! division, factorization over `Q`, and cyclotomic polynomials.
//!
//! Factorization only needs to cover monic polynomials of degree at
//! most 4 (characteristic polynomials of Frobenius on abelian
//! surfaces), so it is done by integer root extraction plus a divisor
//! search for quadratic factors — no general-purpose factoring.

use crate::{invalid, Result};

/// A polynomial with `i128` coefficients, stored low degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<i128>,
}

impl IntPolynomial {
    /// Build from coefficients `c0 + c1 t + ...`; trailing zeros are
    /// trimmed.  The zero polynomial is represented by an empty list.
    pub fn new(mut coeffs: Vec<i128>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPolynomial { coeffs: vec![1] }
    }

    /// `t - r`.
    pub fn linear_root(r: i128) -> Self {
        IntPolynomial::new(vec![-r, 1])
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    /// Coefficient of `t^i` (0 beyond the degree).
    pub fn coeff(&self, i: usize) -> i128 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; errors on the zero polynomial.
    pub fn degree(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(invalid("degree of zero polynomial"));
        }
        Ok(self.coeffs.len() - 1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn eval(&self, x: i128) -> i128 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * i as i128)
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    /// Exact division by a monic divisor; `None` if the remainder is
    /// nonzero.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if !divisor.is_monic() {
            return None;
        }
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() < dd + 1 {
            return if self.is_zero() { Some(Self::zero()) } else { None };
        }
        let mut quot = vec![0i128; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd];
            quot[i] = c;
            for (k, &dc) in divisor.coeffs.iter().enumerate() {
                rem[i + k] -= c * dc;
            }
        }
        if rem.iter().all(|&c| c == 0) {
            Some(IntPolynomial::new(quot))
        } else {
            None
        }
    }

    /// True when no irreducible factor repeats.
    pub fn is_squarefree(&self) -> Result<bool> {
        Ok(factor_monic(self)?.iter().all(|&(_, e)| e == 1))
    }
}

fn divisors_signed(n: i128) -> Vec<i128> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            out.push(-d);
            if d != n / d {
                out.push(n / d);
                out.push(-(n / d));
            }
        }
        d += 1;
    }
    out
}

/// One monic quadratic factor of a monic polynomial with nonzero
/// constant term, found by divisor-pair search, if any exists.
fn quadratic_factor(f: &IntPolynomial) -> Option<IntPolynomial> {
    let c0 = f.coeff(0);
    debug_assert!(c0 != 0);
    for b in divisors_signed(c0) {
        // Try t^2 + a t + b for |a| up to a crude bound from the
        // remaining coefficients.
        let bound = f
            .coeffs()
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or(1)
            .max(b.abs())
            * 2
            + 2;
        for a in -bound..=bound {
            let g = IntPolynomial::new(vec![b, a, 1]);
            if f.div_exact(&g).is_some() {
                return Some(g);
            }
        }
    }
    None
}

/// Factor a monic polynomial of degree <= 4 into monic irreducible
/// factors over `Q` with multiplicities, sorted by (degree, coeffs).
pub fn factor_monic(f: &IntPolynomial) -> Result<Vec<(IntPolynomial, u32)>> {
    if f.is_zero() || !f.is_monic() {
        return Err(invalid("factor_monic needs a monic polynomial"));
    }
    if f.degree()? > 4 {
        return Err(invalid("factor_monic only covers degree <= 4"));
    }
    let mut rest = f.clone();
    let mut factors: Vec<IntPolynomial> = Vec::new();
    // Integer roots (a monic integer polynomial has only integer
    // rational roots, dividing the constant term).
    loop {
        if rest.degree()? == 0 {
            break;
        }
        if rest.coeff(0) == 0 {
            rest = rest.div_exact(&IntPolynomial::linear_root(0)).unwrap();
            factors.push(IntPolynomial::linear_root(0));
            continue;
        }
        let root = divisors_signed(rest.coeff(0))
            .into_iter()
            .find(|&r| rest.eval(r) == 0);
        match root {
            Some(r) => {
                rest = rest.div_exact(&IntPolynomial::linear_root(r)).unwrap();
                factors.push(IntPolynomial::linear_root(r));
            }
            None => break,
        }
    }
    // What remains has no rational root: degree 0, 2, 3 (irreducible),
    // or 4 (irreducible or a product of two irreducible quadratics).
    match rest.degree()? {
        0 => {}
        2 | 3 => factors.push(rest),
        4 => match quadratic_factor(&rest) {
            Some(g) => {
                let h = rest.div_exact(&g).unwrap();
                factors.push(g);
                factors.push(h);
            }
            None => factors.push(rest),
        },
        _ => unreachable!("roots only reduce the degree"),
    }
    factors.sort_by(|a, b| {
        (a.coeffs.len(), &a.coeffs).cmp(&(b.coeffs.len(), &b.coeffs))
    });
    let mut out: Vec<(IntPolynomial, u32)> = Vec::new();
    for g in factors {
        match out.last_mut() {
            Some((h, e)) if *h == g => *e += 1,
            _ => out.push((g, 1)),
        }
    }
    Ok(out)
}

/// The n-th cyclotomic polynomial, by exact division of `t^n - 1`.
pub fn cyclotomic(n: u32) -> Result<IntPolynomial> {
    if n == 0 {
        return Err(invalid("cyclotomic(0)"));
    }
    let mut f = {
        let mut c = vec![0i128; n as usize + 1];
        c[0] = -1;
        c[n as usize] = 1;
        IntPolynomial::new(c)
    };
    for d in 1..n {
        if n % d == 0 {
            f = f
                .div_exact(&cyclotomic(d)?)
                .ok_or_else(|| invalid("cyclotomic division failed"))?;
        }
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i128]) -> IntPolynomial {
        IntPolynomial::new(c.to_vec())
    }

    #[test]
    fn eval_and_divide() {
        let f = p(&[49, 0, -6, 0, 1]); // t^4 - 6 t^2 + 49
        assert_eq!(f.eval(0), 49);
        assert_eq!(f.eval(2), 41);
        let g = p(&[-3, 1]);
        assert!(f.div_exact(&g).is_none());
        let h = p(&[2, 1]).mul(&p(&[5, 1]));
        assert_eq!(h, p(&[10, 7, 1]));
        assert_eq!(h.div_exact(&p(&[2, 1])).unwrap(), p(&[5, 1]));
    }

    #[test]
    fn factor_cases() {
        // (t - 1)(t - 2): split quadratic.
        let f = p(&[2, -3, 1]);
        assert_eq!(
            factor_monic(&f).unwrap(),
            vec![(p(&[-2, 1]), 1), (p(&[-1, 1]), 1)]
        );
        // (t^2 + 1)^2 = t^4 + 2 t^2 + 1.
        let f = p(&[1, 0, 2, 0, 1]);
        assert_eq!(factor_monic(&f).unwrap(), vec![(p(&[1, 0, 1]), 2)]);
        // (t^2 - 2t + 2)(t^2 + 2t + 2) = t^4 + 4.
        let f = p(&[4, 0, 0, 0, 1]);
        assert_eq!(
            factor_monic(&f).unwrap(),
            vec![(p(&[2, -2, 1]), 1), (p(&[2, 2, 1]), 1)]
        );
        // Irreducible quartic t^4 - 6 t^2 + 49.
        let f = p(&[49, 0, -6, 0, 1]);
        assert_eq!(factor_monic(&f).unwrap(), vec![(f.clone(), 1)]);
        // (t - 3)^4.
        let f = p(&[-3, 1]).mul(&p(&[-3, 1])).mul(&p(&[-3, 1])).mul(&p(&[-3, 1]));
        assert_eq!(factor_monic(&f).unwrap(), vec![(p(&[-3, 1]), 4)]);
        // t^2 - 3 is irreducible.
        let f = p(&[-3, 0, 1]);
        assert_eq!(factor_monic(&f).unwrap(), vec![(f.clone(), 1)]);
        // Cubic with a root: t^3 - 1.
        let f = p(&[-1, 0, 0, 1]);
        assert_eq!(
            factor_monic(&f).unwrap(),
            vec![(p(&[-1, 1]), 1), (p(&[1, 1, 1]), 1)]
        );
    }

    #[test]
    fn cyclotomics() {
        assert_eq!(cyclotomic(1).unwrap(), p(&[-1, 1]));
        assert_eq!(cyclotomic(2).unwrap(), p(&[1, 1]));
        assert_eq!(cyclotomic(4).unwrap(), p(&[1, 0, 1]));
        assert_eq!(cyclotomic(8).unwrap(), p(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic(12).unwrap(), p(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(5).unwrap(), p(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic(10).unwrap(), p(&[1, -1, 1, -1, 1]));
    }
}
