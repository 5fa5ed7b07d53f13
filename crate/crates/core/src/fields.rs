//! Quadratic, biquadratic CM and cyclotomic fields with exact prime
//! splitting data.
//!
//! Splitting in quadratic fields goes through the Kronecker symbol of
//! the fundamental discriminant.  Biquadratic (Galois `Z/2 x Z/2`)
//! splitting is assembled from the three quadratic subfields, and
//! cyclotomic splitting from the order of `p` modulo the prime-to-`p`
//! part of the conductor.

use crate::arith::{
    euler_phi, factorize, is_prime, kronecker_symbol, multiplicative_order, squarefree_part,
};
use crate::{invalid, Result};

/// Behavior of a rational prime in a quadratic field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplittingBehavior {
    Split,
    Inert,
    Ramified,
}

/// Splitting data `(e, f, g)` of a rational prime in a Galois number
/// field: ramification index, residue degree, number of primes, with
/// `e * f * g` equal to the degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplittingData {
    pub e: u32,
    pub f: u32,
    pub g: u32,
}

/// The quadratic field `Q(sqrt d)` for a squarefree `d != 0, 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadraticField {
    d: i128,
}

impl QuadraticField {
    pub fn new(d: i128) -> Result<Self> {
        if d == 0 || d == 1 || squarefree_part(d)? != d {
            return Err(invalid(format!("Q(sqrt {d}) needs squarefree d != 0, 1")));
        }
        Ok(QuadraticField { d })
    }

    pub fn d(&self) -> i128 {
        self.d
    }

    pub fn is_real(&self) -> bool {
        self.d > 0
    }

    /// Fundamental discriminant: `d` if `d = 1 mod 4`, else `4d`.
    pub fn discriminant(&self) -> i128 {
        if self.d.rem_euclid(4) == 1 {
            self.d
        } else {
            4 * self.d
        }
    }

    /// True exactly when `sqrt(s)` lies in the field (`s` squarefree).
    pub fn contains_sqrt(&self, s: i128) -> bool {
        s == 1 || s == self.d
    }
}

/// Behavior of a prime `p` in `Q(sqrt d)`.
pub fn split_prime_quadratic(field: QuadraticField, p: i128) -> Result<SplittingBehavior> {
    if !is_prime(p) {
        return Err(invalid(format!("{p} is not prime")));
    }
    let disc = field.discriminant();
    if disc % p == 0 {
        return Ok(SplittingBehavior::Ramified);
    }
    Ok(match kronecker_symbol(disc, p) {
        1 => SplittingBehavior::Split,
        -1 => SplittingBehavior::Inert,
        _ => unreachable!("p does not divide disc"),
    })
}

/// Behavior of `p` in `Q(sqrt(beta^2 - 4q))` for `q = p^a`,
/// `|beta| < 2 sqrt(q)`, by the classical case list: `p` ramifies for
/// `beta = 0` with `a` odd, `beta = 0` with `a` even and `p = 2`,
/// `beta = +-sqrt(q)` with `a` even and `p = 3`, and
/// `beta = +-p^{(a+1)/2}` with `a` odd and `p` in `{2, 3}`; it stays
/// prime for `beta = 0`, `a` even, `p = 3 mod 4` and for
/// `beta = +-sqrt(q)`, `a` even, `p = 2 mod 3`; it splits otherwise.
pub fn lemma_prime_dec(p: i128, a: u32, beta: i128) -> Result<SplittingBehavior> {
    if !is_prime(p) || a == 0 {
        return Err(invalid("need prime p and a >= 1"));
    }
    let q = p.checked_pow(a).ok_or_else(|| invalid("q overflow"))?;
    if beta * beta >= 4 * q {
        return Err(invalid("need |beta| < 2 sqrt(q)"));
    }
    let even = a % 2 == 0;
    let is_sqrt_q = even && beta * beta == q;
    let is_p_half = !even && beta * beta == p * q;
    Ok(if beta == 0 && !even {
        SplittingBehavior::Ramified
    } else if beta == 0 && even && p == 2 {
        SplittingBehavior::Ramified
    } else if is_sqrt_q && p == 3 {
        SplittingBehavior::Ramified
    } else if is_p_half && (p == 2 || p == 3) {
        SplittingBehavior::Ramified
    } else if beta == 0 && even && p.rem_euclid(4) == 3 {
        SplittingBehavior::Inert
    } else if is_sqrt_q && p.rem_euclid(3) == 2 {
        SplittingBehavior::Inert
    } else {
        SplittingBehavior::Split
    })
}

/// The biquadratic CM field `Q(sqrt m, sqrt -n)` with `m > 1` and `n > 0`
/// squarefree; its third quadratic subfield is `Q(sqrt s)` with
/// `s = squarefree_part(-m n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BiquadraticCMField {
    m: i128,
    n: i128,
}

impl BiquadraticCMField {
    pub fn new(m: i128, n: i128) -> Result<Self> {
        if m <= 1 || squarefree_part(m)? != m {
            return Err(invalid("real part needs squarefree m > 1"));
        }
        if n <= 0 || squarefree_part(n)? != n {
            return Err(invalid("imaginary part needs squarefree n > 0"));
        }
        Ok(BiquadraticCMField { m, n })
    }

    pub fn m(&self) -> i128 {
        self.m
    }

    pub fn n(&self) -> i128 {
        self.n
    }

    /// Squarefree `d` of the three quadratic subfields `Q(sqrt d)`.
    pub fn subfield_ds(&self) -> Result<[i128; 3]> {
        Ok([self.m, -self.n, squarefree_part(-self.m * self.n)?])
    }

    pub fn contains_sqrt(&self, s: i128) -> Result<bool> {
        Ok(s == 1 || self.subfield_ds()?.contains(&s))
    }
}

/// Splitting of `p` in a biquadratic CM field, assembled from the three
/// quadratic subfields.  With Galois group `Z/2 x Z/2`, the inertia and
/// decomposition subgroups are read off from how many subfields ramify
/// and whether the unramified ones split.
pub fn split_prime_biquadratic(field: BiquadraticCMField, p: i128) -> Result<SplittingData> {
    let behaviors: Vec<SplittingBehavior> = field
        .subfield_ds()?
        .into_iter()
        .map(|d| split_prime_quadratic(QuadraticField::new(d)?, p))
        .collect::<Result<_>>()?;
    let ram = behaviors
        .iter()
        .filter(|&&b| b == SplittingBehavior::Ramified)
        .count();
    let split = behaviors
        .iter()
        .filter(|&&b| b == SplittingBehavior::Split)
        .count();
    Ok(match (ram, split) {
        // Unramified: Frobenius trivial (splits everywhere) or fixes
        // exactly one subfield.
        (0, 3) => SplittingData { e: 1, f: 1, g: 4 },
        (0, 1) => SplittingData { e: 1, f: 2, g: 2 },
        // Inertia of order 2 fixes exactly one subfield pointwise, so
        // exactly two subfields ramify; the third decides f.
        (2, 1) => SplittingData { e: 2, f: 1, g: 2 },
        (2, 0) => SplittingData { e: 2, f: 2, g: 1 },
        // Totally ramified (only possible at p = 2).
        (3, 0) => SplittingData { e: 4, f: 1, g: 1 },
        _ => {
            return Err(invalid(format!(
                "inconsistent subfield pattern for p = {p}: {behaviors:?}"
            )))
        }
    })
}

/// The cyclotomic field `Q(zeta_n)`, `n >= 3`, `n != 2 mod 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclotomicField {
    n: i128,
}

impl CyclotomicField {
    pub fn new(n: i128) -> Result<Self> {
        if n < 3 || n.rem_euclid(4) == 2 {
            return Err(invalid("Q(zeta_n) needs n >= 3, n != 2 mod 4"));
        }
        Ok(CyclotomicField { n })
    }

    pub fn n(&self) -> i128 {
        self.n
    }

    pub fn degree(&self) -> Result<i128> {
        euler_phi(self.n)
    }

    /// `sqrt(s)` lies in `Q(zeta_n)` exactly when the fundamental
    /// discriminant of `Q(sqrt s)` divides `n`.
    pub fn contains_sqrt(&self, s: i128) -> Result<bool> {
        if s == 1 {
            return Ok(true);
        }
        let disc = QuadraticField::new(s)?.discriminant();
        Ok(self.n % disc.abs() == 0)
    }
}

/// Splitting of `p` in `Q(zeta_n)`: with `n = p^k n'` and `p` prime to
/// `n'`, we get `e = phi(p^k)`, `f = ord(p mod n')`, `g = phi(n') / f`.
pub fn split_prime_cyclotomic(field: CyclotomicField, p: i128) -> Result<SplittingData> {
    if !is_prime(p) {
        return Err(invalid(format!("{p} is not prime")));
    }
    let k = factorize(field.n)?.exponent_of(p);
    let n_prime = field.n / p.pow(k);
    let e = if k == 0 { 1 } else { euler_phi(p.pow(k))? };
    let f = multiplicative_order(p, n_prime)?;
    let g = euler_phi(n_prime)? / f;
    Ok(SplittingData {
        e: e as u32,
        f: f as u32,
        g: g as u32,
    })
}
