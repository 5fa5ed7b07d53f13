//! Finite subgroups of division rings: the classical embedding
//! criteria for the groups
//! `G_{m,r} = < a, b | a^m = 1, b^n = a^t, b a b^{-1} = a^r >`
//! with `n` the multiplicative order of `r` mod `m`, `s = gcd(r-1, m)`,
//! `t = m/s`, plus the degree-2 (quaternion) specialization used for
//! abelian surfaces.

use crate::arith::{factorize, multiplicative_order, padic_valuation_int, squarefree_part};
use crate::groups::FiniteGroupId;
use crate::weil::{CenterField, EndAlgebraDescriptor};
use crate::{invalid, Result};
use num_integer::Integer;

/// Structure constants of `G_{m,r}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DicyclicParams {
    pub m: i128,
    pub r: i128,
    /// Multiplicative order of `r` mod `m` (1 for the cyclic convention
    /// `r = 1`).
    pub n: i128,
    /// `gcd(r - 1, m)`, with the paper's convention `s = 1` when `r = 1`.
    pub s: i128,
    /// `m / s`.
    pub t: i128,
}

/// Per-prime data entering the embedding criterion: for `p | m`,
/// `alpha_p = v_p(m)`, `n_p = ord(r mod m p^{-alpha_p})`,
/// `delta_p = ord(p mod m p^{-alpha_p})`, and for odd `p` the order
/// `gamma_p` of 2 mod `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeData {
    pub p: i128,
    pub alpha_p: u32,
    pub n_p: i128,
    pub delta_p: i128,
    pub gamma_p: Option<i128>,
}

/// Which rule decided an embedding question.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbeddingRule {
    /// Neither (C1) nor (C2) holds.
    ConditionFail,
    /// `n = s = 2` and `r = -1 mod m`.
    Thm11Part1,
    /// Witness prime with `p != 2`, `gcd(q, (p^delta_p - 1)/s) = 1`.
    Thm11Part2a,
    /// Witness `p = q = 2` under (C2) with `m/4 = delta_p = 1 mod 2`.
    Thm11Part2b,
    /// Some prime `q | n` admits no witness `p | m`.
    NoWitness,
    /// Cyclic case (`n = 1`): always embeddable.
    Cyclic,
}

/// Outcome of the embedding test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingVerdict {
    pub embeddable: bool,
    pub rule_fired: EmbeddingRule,
    pub witness: Option<PrimeData>,
}

/// Compute `n`, `s`, `t` for `G_{m,r}` per the standard convention
/// (`r = 1 mod m` gives `n = s = 1`, the cyclic group of order `m`).
pub fn dicyclic_params(m: i128, r: i128) -> Result<DicyclicParams> {
    if m < 1 {
        return Err(invalid("m must be positive"));
    }
    let r = r.rem_euclid(m.max(1));
    if r.gcd(&m) != 1 {
        return Err(invalid(format!("gcd({r}, {m}) != 1")));
    }
    if r == 1 || m == 1 {
        return Ok(DicyclicParams { m, r: 1, n: 1, s: 1, t: m });
    }
    let n = multiplicative_order(r, m)?;
    let s = (r - 1).gcd(&m);
    Ok(DicyclicParams { m, r, n, s, t: m / s })
}

/// Like `dicyclic_params` but with the presentation exponent `n`
/// prescribed (the brute-force lemmas fix `n = 2` even where the
/// multiplicative order is smaller, e.g. `m = 2`, `r = 1`).
pub fn dicyclic_params_with_n(m: i128, r: i128, n: i128) -> Result<DicyclicParams> {
    if m < 1 || n < 1 {
        return Err(invalid("m, n must be positive"));
    }
    let r = r.rem_euclid(m.max(1));
    if r.gcd(&m) != 1 {
        return Err(invalid(format!("gcd({r}, {m}) != 1")));
    }
    if mod_pow(r, n, m) != 1 % m.max(1) {
        return Err(invalid("r^n != 1 mod m"));
    }
    let s = if m == 1 { 1 } else { (r - 1).gcd(&m).max(1) };
    let s = if s == 0 { m } else { s };
    Ok(DicyclicParams { m, r, n, s, t: m / s })
}

fn mod_pow(mut b: i128, mut e: i128, m: i128) -> i128 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1i128;
    b = b.rem_euclid(m);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Condition (C1): `gcd(n, t) = gcd(s, t) = 1`.
pub fn check_c1(params: DicyclicParams) -> bool {
    params.n.gcd(&params.t) == 1 && params.s.gcd(&params.t) == 1
}

/// Condition (C2): `n = 2n'`, `m = 2^alpha m'`, `s = 2s'` with
/// `n'`, `m'`, `s'` odd, `alpha >= 2`, `gcd(n,t) = gcd(s,t) = 2`, and
/// `r = -1 mod 2^alpha`.
pub fn check_c2(params: DicyclicParams) -> bool {
    let DicyclicParams { m, r, n, s, t } = params;
    if n % 2 != 0 || s % 2 != 0 {
        return false;
    }
    let (n_pr, s_pr) = (n / 2, s / 2);
    let alpha = match padic_valuation_int(m, 2) {
        Ok(a) => a,
        Err(_) => return false,
    };
    if alpha < 2 {
        return false;
    }
    let m_pr = m >> alpha;
    n_pr % 2 == 1
        && m_pr % 2 == 1
        && s_pr % 2 == 1
        && n.gcd(&t) == 2
        && s.gcd(&t) == 2
        && (r + 1).rem_euclid(1 << alpha) == 0
}

/// All per-prime data for the primes dividing `m`.
pub fn prime_data(params: DicyclicParams) -> Result<Vec<PrimeData>> {
    let mut out = Vec::new();
    for (p, alpha_p) in factorize(params.m)?.factors {
        let m_red = params.m / p.pow(alpha_p);
        let n_p = multiplicative_order(params.r, m_red)?;
        let delta_p = multiplicative_order(p, m_red)?;
        let gamma_p = if p % 2 == 1 {
            Some(multiplicative_order(2, p)?)
        } else {
            None
        };
        out.push(PrimeData { p, alpha_p, n_p, delta_p, gamma_p });
    }
    Ok(out)
}

fn embeds_with_params(params: DicyclicParams) -> Result<EmbeddingVerdict> {
    if params.n == 1 {
        return Ok(EmbeddingVerdict {
            embeddable: true,
            rule_fired: EmbeddingRule::Cyclic,
            witness: None,
        });
    }
    let c1 = check_c1(params);
    let c2 = check_c2(params);
    if !c1 && !c2 {
        return Ok(EmbeddingVerdict {
            embeddable: false,
            rule_fired: EmbeddingRule::ConditionFail,
            witness: None,
        });
    }
    // Condition (1): n = s = 2 and r = -1 mod m.
    if params.n == 2 && params.s == 2 && (params.r + 1).rem_euclid(params.m) == 0 {
        return Ok(EmbeddingVerdict {
            embeddable: true,
            rule_fired: EmbeddingRule::Thm11Part1,
            witness: None,
        });
    }
    // Condition (2): every prime q | n needs a witness p | m with
    // q not dividing n_p and (a) or (b).
    let pdata = prime_data(params)?;
    let mut last_rule = EmbeddingRule::NoWitness;
    let mut last_witness = None;
    for q in factorize(params.n)?.primes() {
        let mut found = false;
        for &pd in &pdata {
            if pd.n_p % q == 0 {
                continue;
            }
            // (a) p odd: gcd(q, (p^{delta_p} - 1)/s) = 1.
            if pd.p != 2 {
                let pow = pd
                    .p
                    .checked_pow(pd.delta_p as u32)
                    .ok_or_else(|| invalid("p^delta overflow"))?;
                if (pow - 1) % params.s == 0 && q.gcd(&((pow - 1) / params.s)) == 1 {
                    found = true;
                    last_rule = EmbeddingRule::Thm11Part2a;
                    last_witness = Some(pd);
                    break;
                }
            }
            // (b) p = q = 2 under (C2) with m/4 = delta_p = 1 mod 2.
            if pd.p == 2 && q == 2 && c2 && (params.m / 4) % 2 == 1 && pd.delta_p % 2 == 1 {
                found = true;
                last_rule = EmbeddingRule::Thm11Part2b;
                last_witness = Some(pd);
                break;
            }
        }
        if !found {
            return Ok(EmbeddingVerdict {
                embeddable: false,
                rule_fired: EmbeddingRule::NoWitness,
                witness: None,
            });
        }
    }
    Ok(EmbeddingVerdict {
        embeddable: true,
        rule_fired: last_rule,
        witness: last_witness,
    })
}

/// Decide whether `G_{m,r}` embeds in a division ring (Amitsur's
/// criterion, degree-free form).
pub fn embeds_in_division_ring(m: i128, r: i128) -> Result<EmbeddingVerdict> {
    embeds_with_params(dicyclic_params(m, r)?)
}

/// Variant with a prescribed presentation exponent `n`.
pub fn embeds_in_division_ring_with_n(m: i128, r: i128, n: i128) -> Result<EmbeddingVerdict> {
    embeds_with_params(dicyclic_params_with_n(m, r, n)?)
}

/// Lemma-13 obstruction: a noncyclic group of squarefree order cannot
/// embed in a division ring.  Returns true when the obstruction fires.
pub fn lemma13_squarefree(order: i128, cyclic: bool) -> Result<bool> {
    Ok(!cyclic && squarefree_part(order)? == order)
}

/// Theorem-14 obstruction for `G_{m,n,r}`: if the multiplicative order
/// of `r` mod `m` is exactly the presentation exponent `n > 1`, the
/// group does not embed.
pub fn thm14_obstruction(m: i128, n: i128, r: i128) -> Result<bool> {
    if m < 1 || n < 1 {
        return Err(invalid("m, n must be positive"));
    }
    if n == 1 {
        return Ok(false);
    }
    Ok(multiplicative_order(r, m)? == n)
}

/// Which brute-force regime to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DicyclicRegime {
    C1,
    C2,
}

/// Brute force over all `(m <= max_m, r)` with presentation exponent
/// `n = 2` (so `r^2 = 1 mod m`): the embeddable groups in each regime.
/// Each group is reported once, as `(m, r)` with the least admissible
/// `r`.
pub fn enumerate_small_dicyclic(
    max_m: i128,
    regime: DicyclicRegime,
) -> Result<Vec<(i128, i128)>> {
    if max_m > 64 {
        return Err(invalid("enumerate_small_dicyclic is desk-scale (m <= 64)"));
    }
    let mut out = Vec::new();
    for m in 2..=max_m {
        let mut hit = None;
        for r in 1..m {
            if r.gcd(&m) != 1 || (r * r) % m != 1 {
                continue;
            }
            let params = dicyclic_params_with_n(m, r, 2)?;
            let in_regime = match regime {
                DicyclicRegime::C1 => check_c1(params),
                DicyclicRegime::C2 => check_c2(params),
            };
            if in_regime && embeds_with_params(params)?.embeddable {
                hit = Some(r);
                break;
            }
        }
        if let Some(r) = hit {
            out.push((m, r));
        }
    }
    Ok(out)
}

/// Theorem-12(3) admissibility of the odd cyclic part `G_{m,r}` of a
/// T-group: requires `gcd(|G|, 6) = 1` and every `gamma_p` odd
/// (`gamma_p` = order of 2 mod `p` for `p | m`).
pub fn tgroup_admissible(m: i128, r: i128) -> Result<bool> {
    let params = dicyclic_params(m, r)?;
    if (params.m * params.n) % 2 == 0 || (params.m * params.n) % 3 == 0 {
        return Ok(false);
    }
    for pd in prime_data(params)? {
        match pd.gamma_p {
            Some(g) if g % 2 == 1 => {}
            Some(_) => return Ok(false),
            None => unreachable!("m odd"),
        }
    }
    Ok(true)
}

/// The finite subgroups possible in a quaternion division algebra of
/// dimension <= 8 over `Q` with the given center (Theorem-18 shape):
/// cyclic of orders 2..12, the dicyclic family, `T*` always, and
/// `O*` / `I*` only when the center contains `sqrt 2` / `sqrt 5`.
pub fn quaternion_deg2_finite_subgroups(center: &CenterField) -> Result<Vec<FiniteGroupId>> {
    match center {
        CenterField::Rationals | CenterField::Quadratic(_) => {}
        _ => return Err(invalid("center must be Q or quadratic")),
    }
    if let CenterField::Quadratic(f) = center {
        if !f.is_real() {
            return Err(invalid("quaternion center must be totally real"));
        }
    }
    let mut out: Vec<FiniteGroupId> = [2u32, 4, 6, 8, 10, 12]
        .iter()
        .map(|&k| FiniteGroupId::Cyclic(k))
        .collect();
    out.extend([
        FiniteGroupId::Q8,
        FiniteGroupId::Dic12,
        FiniteGroupId::Dic16,
        FiniteGroupId::Dic20,
        FiniteGroupId::Dic24,
        FiniteGroupId::Tstar,
    ]);
    if center.contains_sqrt(2)? {
        out.push(FiniteGroupId::Ostar);
    }
    if center.contains_sqrt(5)? {
        out.push(FiniteGroupId::Istar);
    }
    Ok(out)
}

/// Finite subgroups of `End^0(X)^x` for a simple abelian surface with
/// the given endomorphism algebra: a degree-4 field center gives the
/// cyclic list; a dimension-8 quaternion algebra gives the Theorem-18
/// list.
pub fn cor19_simple_surface_subgroups(
    end_alg: &EndAlgebraDescriptor,
) -> Result<Vec<FiniteGroupId>> {
    let dim = end_alg.d * end_alg.d * end_alg.e;
    match dim {
        4 if end_alg.commutative => Ok([2u32, 4, 6, 8, 10, 12]
            .iter()
            .map(|&k| FiniteGroupId::Cyclic(k))
            .collect()),
        8 => quaternion_deg2_finite_subgroups(&end_alg.center),
        _ => Err(invalid(format!("unsupported algebra dimension {dim}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_and_conditions() {
        let p = dicyclic_params(6, 5).unwrap();
        assert_eq!((p.n, p.s, p.t), (2, 2, 3));
        assert!(check_c1(p) && !check_c2(p));
        let p = dicyclic_params(12, 11).unwrap();
        assert_eq!((p.n, p.s, p.t), (2, 2, 6));
        assert!(!check_c1(p) && check_c2(p));
        let p = dicyclic_params(4, 3).unwrap();
        assert!(check_c2(p));
        let p = dicyclic_params(15, 1).unwrap();
        assert_eq!((p.n, p.s, p.t), (1, 1, 15));
    }

    #[test]
    fn embedding_verdicts() {
        assert!(embeds_in_division_ring(10, 9).unwrap().embeddable);
        assert!(embeds_in_division_ring(12, 11).unwrap().embeddable);
        assert!(embeds_in_division_ring(4, 3).unwrap().embeddable);
        assert!(embeds_in_division_ring(8, 7).unwrap().embeddable);
        assert!(!embeds_in_division_ring(9, 8).unwrap().embeddable);
        // s = 4, t = 3 parameterization of m = 12 (r = 5): witness
        // search fails via gcd(2, (3^2-1)/4) = 2.
        let v = embeds_in_division_ring(12, 5).unwrap();
        assert!(!v.embeddable);
        // r = 7 mod 12: C2 holds but neither (a) nor (b) fires.
        assert!(!embeds_in_division_ring(12, 7).unwrap().embeddable);
        // Odd prime m with r = -1: squarefree obstruction regime.
        for m in [3i128, 5, 7, 11] {
            assert!(!embeds_in_division_ring(m, m - 1).unwrap().embeddable);
        }
        // Cyclic convention.
        assert!(embeds_in_division_ring(15, 1).unwrap().embeddable);
    }

    #[test]
    fn obstructions() {
        for m in [3i128, 5, 7, 11] {
            assert!(lemma13_squarefree(2 * m, false).unwrap());
        }
        assert!(!lemma13_squarefree(24, false).unwrap());
        assert!(!lemma13_squarefree(30, true).unwrap());
        assert!(thm14_obstruction(9, 2, 8).unwrap());
        assert!(!thm14_obstruction(2, 2, 1).unwrap());
    }

    #[test]
    fn small_dicyclic_lists() {
        // C1 regime: Z/4 (m=2), Dic12 (m=6), Dic20 (m=10).
        assert_eq!(
            enumerate_small_dicyclic(12, DicyclicRegime::C1).unwrap(),
            vec![(2, 1), (6, 5), (10, 9)]
        );
        // C2 regime: Q8 (m=4), Dic16 (m=8), Dic24 (m=12).
        assert_eq!(
            enumerate_small_dicyclic(12, DicyclicRegime::C2).unwrap(),
            vec![(4, 3), (8, 7), (12, 11)]
        );
        assert_eq!(
            enumerate_small_dicyclic(2, DicyclicRegime::C1).unwrap(),
            vec![(2, 1)]
        );
    }

    #[test]
    fn tgroups() {
        assert!(tgroup_admissible(1, 1).unwrap());
        assert!(tgroup_admissible(7, 1).unwrap());
        assert!(!tgroup_admissible(5, 1).unwrap());
    }

    #[test]
    fn r_generator_invariance() {
        // Replacing r by a generator of the same cyclic subgroup with
        // the same (n, s, t) leaves the verdict unchanged.
        use num_integer::Integer;
        for m in 2i128..=24 {
            for r1 in 2..m {
                if r1.gcd(&m) != 1 {
                    continue;
                }
                let p1 = dicyclic_params(m, r1).unwrap();
                for r2 in 2..m {
                    if r2.gcd(&m) != 1 || r2 == r1 {
                        continue;
                    }
                    let p2 = dicyclic_params(m, r2).unwrap();
                    let same_subgroup = {
                        // <r1> = <r2> iff each is a power of the other.
                        let pow_in = |x: i128, y: i128| {
                            (0..p1.n.max(p2.n)).any(|k| mod_pow(y, k, m) == x)
                        };
                        pow_in(r1, r2) && pow_in(r2, r1)
                    };
                    if same_subgroup
                        && (p1.n, p1.s, p1.t) == (p2.n, p2.s, p2.t)
                    {
                        assert_eq!(
                            embeds_in_division_ring(m, r1).unwrap().embeddable,
                            embeds_in_division_ring(m, r2).unwrap().embeddable,
                            "m={m} r1={r1} r2={r2}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn lemma10_uniqueness() {
        // For each prime q | n there is at most one p | m with q not
        // dividing n_p.
        use num_integer::Integer;
        for m in 2i128..=24 {
            for r in 2..m {
                if r.gcd(&m) != 1 {
                    continue;
                }
                let params = dicyclic_params(m, r).unwrap();
                if params.n == 1 || !(check_c1(params) || check_c2(params)) {
                    continue;
                }
                let pdata = prime_data(params).unwrap();
                for q in factorize(params.n).unwrap().primes() {
                    let count = pdata.iter().filter(|pd| pd.n_p % q != 0).count();
                    assert!(count <= 1, "m={m} r={r} q={q}: {count} candidates");
                }
            }
        }
    }
}
