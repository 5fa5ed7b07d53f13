//! Scalar number theory over `i128`: factorization, symbols, valuations.
//!
//! All routines are deterministic and exact.  Primality below `2^64` is
//! decided by the Miller–Rabin test with the known-complete base set, so
//! `factorize` is an oracle (not probabilistic) on the desk scales this
//! crate works at.

use crate::{invalid, Rational, Result};
use num_integer::Integer;

/// Prime factorization `n = prod p_i^{e_i}` with `p_1 < p_2 < ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    /// The factored integer (always positive).
    pub n: i128,
    /// `(prime, exponent)` pairs in increasing prime order.
    pub factors: Vec<(i128, u32)>,
}

impl Factorization {
    /// Distinct prime divisors.
    pub fn primes(&self) -> impl Iterator<Item = i128> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Exponent of `p` in the factorization (0 if `p` does not divide).
    pub fn exponent_of(&self, p: i128) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    /// True if no exponent exceeds 1.
    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }
}

fn mulmod(a: u128, b: u128, m: u128) -> u128 {
    // i128 products of two values < 2^64 cannot overflow u128.
    (a % m) * (b % m) % m
}

fn powmod(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut acc = 1u128 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic primality for `0 <= n < 2^64` (Miller–Rabin with the
/// complete base set for that range).
pub fn is_prime(n: i128) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u128;
    for p in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'wit: for a in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'wit;
            }
        }
        return false;
    }
    true
}

/// Pollard's rho with a fixed deterministic schedule; only reached for
/// composites whose least factor exceeds the trial-division bound.
fn rho_factor(n: u128) -> u128 {
    for c in 1..64u128 {
        let f = |x: u128| (mulmod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u128, 2u128, 1u128);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = (x.abs_diff(y)).gcd(&n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!("rho schedule exhausted");
}

/// Factor a nonzero integer's absolute value.
pub fn factorize(n: i128) -> Result<Factorization> {
    if n == 0 {
        return Err(invalid("factorize(0)"));
    }
    let target = n.unsigned_abs();
    let mut m = target;
    let mut factors: Vec<(i128, u32)> = Vec::new();
    let push = |p: i128, e: u32, factors: &mut Vec<(i128, u32)>| {
        if e > 0 {
            factors.push((p, e));
        }
    };
    for p in 2u128..=1_000_003 {
        if p * p > m {
            break;
        }
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        push(p as i128, e, &mut factors);
    }
    // Remaining cofactor: prime, or a product of two primes beyond the
    // trial bound (split by rho).
    let mut stack = vec![m];
    let mut big: Vec<i128> = Vec::new();
    while let Some(v) = stack.pop() {
        if v == 1 {
            continue;
        }
        if is_prime(v as i128) {
            big.push(v as i128);
        } else {
            let d = rho_factor(v);
            stack.push(d);
            stack.push(v / d);
        }
    }
    big.sort_unstable();
    let mut i = 0;
    while i < big.len() {
        let j = big[i..].iter().take_while(|&&p| p == big[i]).count();
        push(big[i], j as u32, &mut factors);
        i += j;
    }
    factors.sort_unstable();
    Ok(Factorization {
        n: target as i128,
        factors,
    })
}

/// Euler's totient.
pub fn euler_phi(n: i128) -> Result<i128> {
    if n <= 0 {
        return Err(invalid("euler_phi of nonpositive"));
    }
    let f = factorize(n)?;
    let mut phi = 1i128;
    for (p, e) in f.factors {
        phi *= (p - 1) * p.pow(e - 1);
    }
    Ok(phi)
}

/// Multiplicative order of `r` modulo `m` (`m >= 1`, `gcd(r, m) = 1`).
pub fn multiplicative_order(r: i128, m: i128) -> Result<i128> {
    if m < 1 {
        return Err(invalid("modulus must be positive"));
    }
    if m == 1 {
        return Ok(1);
    }
    let r = r.rem_euclid(m);
    if r.gcd(&m) != 1 {
        return Err(invalid(format!("{r} not a unit mod {m}")));
    }
    let phi = euler_phi(m)?;
    let mut order = phi;
    for p in factorize(phi)?.primes() {
        while order % p == 0 && powmod(r as u128, (order / p) as u128, m as u128) == 1 {
            order /= p;
        }
    }
    Ok(order)
}

/// Kronecker symbol `(a | n)`, extending the Jacobi symbol to all `n`.
pub fn kronecker_symbol(a: i128, n: i128) -> i128 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut a = a;
    let mut n = n;
    let mut sign = 1i128;
    if n < 0 {
        n = -n;
        if a < 0 {
            sign = -sign;
        }
    }
    // (a | 2) factor.
    let t = n.trailing_zeros();
    n >>= t;
    if t > 0 {
        if a % 2 == 0 {
            return 0;
        }
        if t % 2 == 1 {
            match a.rem_euclid(8) {
                3 | 5 => sign = -sign,
                _ => {}
            }
        }
    }
    // Jacobi symbol on odd n > 0.
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            match n.rem_euclid(8) {
                3 | 5 => sign = -sign,
                _ => {}
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.rem_euclid(4) == 3 && n.rem_euclid(4) == 3 {
            sign = -sign;
        }
        a = a.rem_euclid(n);
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// p-adic valuation of a nonzero integer.
pub fn padic_valuation_int(n: i128, p: i128) -> Result<u32> {
    if n == 0 || p < 2 {
        return Err(invalid("padic_valuation_int needs n != 0, p >= 2"));
    }
    let mut n = n.unsigned_abs();
    let p = p as u128;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    Ok(v)
}

/// p-adic valuation of a nonzero rational.
pub fn padic_valuation(x: Rational, p: i128) -> Result<i64> {
    if x == Rational::from_integer(0) {
        return Err(invalid("padic_valuation of 0"));
    }
    Ok(padic_valuation_int(*x.numer(), p)? as i64 - padic_valuation_int(*x.denom(), p)? as i64)
}

/// Squarefree part of a nonzero integer, with the sign preserved:
/// `n = squarefree_part(n) * square`.
pub fn squarefree_part(n: i128) -> Result<i128> {
    if n == 0 {
        return Err(invalid("squarefree_part(0)"));
    }
    let mut s = n.signum();
    for (p, e) in factorize(n)?.factors {
        if e % 2 == 1 {
            s *= p;
        }
    }
    Ok(s)
}

/// One place of `Q` for Hilbert symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Place {
    /// The real place.
    Infinity,
    /// A finite prime.
    Prime(i128),
}

fn two_adic_eps(u: i128) -> i128 {
    // epsilon(u) = (u - 1)/2 mod 2 for odd u.
    ((u - 1) / 2).rem_euclid(2)
}

fn two_adic_omega(u: i128) -> i128 {
    // omega(u) = (u^2 - 1)/8 mod 2 for odd u.
    ((u * u - 1) / 8).rem_euclid(2)
}

/// Hilbert symbol `(a, b)_v` over `Q` for nonzero rationals `a`, `b`.
///
/// Only the square classes of `a` and `b` matter.  For a finite prime
/// `p`, write `a = p^alpha u`, `b = p^beta v` with `u`, `v` units;
/// for odd `p` the symbol is
/// `(-1|p)^{alpha beta} (u|p)^beta (v|p)^alpha`, and for `p = 2` it is
/// `(-1)^{eps(u) eps(v) + alpha omega(v) + beta omega(u)}`.
pub fn hilbert_symbol(a: Rational, b: Rational, place: Place) -> Result<i128> {
    let zero = Rational::from_integer(0);
    if a == zero || b == zero {
        return Err(invalid("hilbert symbol of 0"));
    }
    // Replace each argument by a squarefree integer representative.
    let int_rep = |x: Rational| -> Result<i128> { squarefree_part(x.numer() * x.denom()) };
    let a = int_rep(a)?;
    let b = int_rep(b)?;
    match place {
        Place::Infinity => Ok(if a < 0 && b < 0 { -1 } else { 1 }),
        Place::Prime(p) if p == 2 => {
            let alpha = padic_valuation_int(a, 2)? as i128;
            let beta = padic_valuation_int(b, 2)? as i128;
            let u = a / (1 << alpha);
            let v = b / (1 << beta);
            let e = two_adic_eps(u) * two_adic_eps(v) + alpha * two_adic_omega(v)
                + beta * two_adic_omega(u);
            Ok(if e % 2 == 0 { 1 } else { -1 })
        }
        Place::Prime(p) if is_prime(p) => {
            let alpha = padic_valuation_int(a, p)? as i128;
            let beta = padic_valuation_int(b, p)? as i128;
            let u = a / p.pow(alpha as u32);
            let v = b / p.pow(beta as u32);
            let mut s = 1i128;
            if (alpha * beta) % 2 == 1 {
                s *= kronecker_symbol(-1, p);
            }
            if beta % 2 == 1 {
                s *= kronecker_symbol(u, p);
            }
            if alpha % 2 == 1 {
                s *= kronecker_symbol(v, p);
            }
            Ok(s)
        }
        Place::Prime(p) => Err(invalid(format!("{p} is not prime"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_small() {
        let f = factorize(58081).unwrap();
        assert_eq!(f.factors, vec![(241, 2)]);
        let f = factorize(-720).unwrap();
        assert_eq!(f.factors, vec![(2, 4), (3, 2), (5, 1)]);
        assert!(factorize(0).is_err());
    }

    #[test]
    fn primality_oracle() {
        // Pairs (n, expected) frozen from an independent sieve.
        let primes = [2, 3, 5, 7, 241, 58111, 999983, 4294967311i128];
        let composites = [1, 4, 58081, 999981, 4294967297i128];
        for p in primes {
            assert!(is_prime(p), "{p} should be prime");
        }
        for c in composites {
            assert!(!is_prime(c), "{c} should be composite");
        }
    }

    #[test]
    fn orders() {
        assert_eq!(multiplicative_order(2, 7).unwrap(), 3);
        assert_eq!(multiplicative_order(2, 5).unwrap(), 4);
        assert_eq!(multiplicative_order(1, 12).unwrap(), 1);
        assert_eq!(multiplicative_order(-1, 9).unwrap(), 2);
        assert_eq!(multiplicative_order(7, 1).unwrap(), 1);
        assert!(multiplicative_order(3, 12).is_err());
    }

    #[test]
    fn kronecker_values() {
        // Legendre values cross-checked by explicit squaring mod p.
        for p in [3i128, 5, 7, 11, 13, 17, 241] {
            for a in 1..p {
                let is_square = (1..p).any(|x| (x * x) % p == a);
                assert_eq!(kronecker_symbol(a, p), if is_square { 1 } else { -1 });
            }
            assert_eq!(kronecker_symbol(p, p), 0);
        }
        assert_eq!(kronecker_symbol(2, 7), 1);
        assert_eq!(kronecker_symbol(-8, 13), -1);
        assert_eq!(kronecker_symbol(-3, 11), -1);
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_part(-84).unwrap(), -21);
        assert_eq!(squarefree_part(-32).unwrap(), -2);
        assert_eq!(squarefree_part(108).unwrap(), 3);
        assert_eq!(squarefree_part(1).unwrap(), 1);
    }

    #[test]
    fn hilbert_classics() {
        let r = Rational::from_integer;
        // (-1,-1) ramifies exactly at 2 and infinity.
        assert_eq!(hilbert_symbol(r(-1), r(-1), Place::Infinity).unwrap(), -1);
        assert_eq!(hilbert_symbol(r(-1), r(-1), Place::Prime(2)).unwrap(), -1);
        for p in [3, 5, 7, 11, 13] {
            assert_eq!(hilbert_symbol(r(-1), r(-1), Place::Prime(p)).unwrap(), 1);
        }
        // (-1,-3) ramifies exactly at 3 and infinity.
        assert_eq!(hilbert_symbol(r(-1), r(-3), Place::Prime(2)).unwrap(), 1);
        assert_eq!(hilbert_symbol(r(-1), r(-3), Place::Prime(3)).unwrap(), -1);
        // (-2,-5) ramifies exactly at 5 and infinity.
        assert_eq!(hilbert_symbol(r(-2), r(-5), Place::Prime(2)).unwrap(), 1);
        assert_eq!(hilbert_symbol(r(-2), r(-5), Place::Prime(5)).unwrap(), -1);
        // Square classes only.
        assert_eq!(
            hilbert_symbol(Rational::new(-4, 9), r(-1), Place::Prime(2)).unwrap(),
            -1
        );
    }

    #[test]
    fn valuations() {
        assert_eq!(padic_valuation_int(48, 2).unwrap(), 4);
        assert_eq!(padic_valuation(Rational::new(3, 8), 2).unwrap(), -3);
        assert_eq!(padic_valuation(Rational::new(49, 5), 7).unwrap(), 2);
    }
}
