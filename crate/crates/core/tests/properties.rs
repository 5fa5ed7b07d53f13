//! Cross-module property suites: exhaustive algebraic identities and
//! randomized structural checks, all with exact arithmetic.

use proptest::prelude::*;
use weilsurf::arith::{hilbert_symbol, is_prime, Place};
use weilsurf::classify::{condition_flags, elliptic_isogeny_classes};
use weilsurf::fields::{BiquadraticCMField, CyclotomicField, QuadraticField};
use weilsurf::groups::product_id;
use weilsurf::groups::FiniteGroupId;
use weilsurf::poly::IntPolynomial;
use weilsurf::quat::QuaternionAlgebra;
use weilsurf::weil::{newton_polygon, CenterField, PrimePower};
use weilsurf::Rational;

fn primes_up_to(n: i128) -> Vec<i128> {
    (2..=n).filter(|&p| is_prime(p)).collect()
}

/// Product formula: over all places (including infinity), the Hilbert
/// symbol multiplies to +1.
#[test]
fn hilbert_reciprocity() {
    let values: Vec<i128> = vec![1, -1, 2, -2, 3, -3, 5, -5];
    // Every prime that can appear in (a,b) for these values.
    let mut places = vec![Place::Infinity];
    places.extend([2i128, 3, 5].into_iter().map(Place::Prime));
    for &a in &values {
        for &b in &values {
            let mut product = 1i128;
            for &place in &places {
                product *= hilbert_symbol(
                    Rational::from_integer(a),
                    Rational::from_integer(b),
                    place,
                )
                .unwrap();
            }
            assert_eq!(product, 1, "reciprocity fails for ({a},{b})");
        }
    }
}

/// At odd primes not dividing a or b, the symbol is trivially +1.
#[test]
fn hilbert_unramified_primes_are_trivial() {
    for &a in &[1i128, -1, 2, -2, 3, -3, 5, -5] {
        for &b in &[1i128, -1, 2, -2, 3, -3, 5, -5] {
            for p in [7i128, 11, 13, 97] {
                let s = hilbert_symbol(
                    Rational::from_integer(a),
                    Rational::from_integer(b),
                    Place::Prime(p),
                )
                .unwrap();
                assert_eq!(s, 1, "({a},{b}) at {p}");
            }
        }
    }
}

proptest! {
    /// Newton polygons are multiplicative: slopes(fg) is the multiset
    /// union of slopes(f) and slopes(g).
    #[test]
    fn newton_polygon_multiplicativity(
        c1 in prop::collection::vec(-50i128..50, 1..4),
        c2 in prop::collection::vec(-50i128..50, 1..4),
        pidx in 0usize..4,
    ) {
        let p = [2i128, 3, 5, 7][pidx];
        let mut f = c1.clone();
        f.push(1); // monic
        let mut g = c2.clone();
        g.push(1);
        let f = IntPolynomial::new(f);
        let g = IntPolynomial::new(g);
        prop_assume!(f.coeff(0) != 0 && g.coeff(0) != 0);
        let product = f.mul(&g);
        let mut expected = newton_polygon(&f, p).unwrap().expanded();
        expected.extend(newton_polygon(&g, p).unwrap().expanded());
        expected.sort();
        let mut got = newton_polygon(&product, p).unwrap().expanded();
        got.sort();
        prop_assert_eq!(got, expected);
    }

    /// Reduced norms are multiplicative in every quaternion algebra.
    #[test]
    fn nrd_multiplicativity(
        xs in prop::collection::vec(-6i128..7, 8),
        den1 in 1i128..4,
        den2 in 1i128..4,
        alg_idx in 0usize..4,
    ) {
        let alg = match alg_idx {
            0 => QuaternionAlgebra::over_q(
                Rational::from_integer(-1),
                Rational::from_integer(-1),
            )
            .unwrap(),
            1 => QuaternionAlgebra::over_q(
                Rational::from_integer(-1),
                Rational::from_integer(-3),
            )
            .unwrap(),
            2 => QuaternionAlgebra::new(
                3,
                Rational::from_integer(-1),
                Rational::from_integer(-1),
            )
            .unwrap(),
            _ => QuaternionAlgebra::new(
                5,
                Rational::from_integer(-1),
                Rational::from_integer(-1),
            )
            .unwrap(),
        };
        let mk = |c: &[i128], den: i128| {
            weilsurf::quat::QuaternionElement::from_rationals(
                Rational::new(c[0], den),
                Rational::new(c[1], den),
                Rational::new(c[2], den),
                Rational::new(c[3], den),
            )
        };
        let u = mk(&xs[0..4], den1);
        let v = mk(&xs[4..8], den2);
        let lhs = alg.nrd(&alg.mul(&u, &v));
        let m = if alg.base_degree() == 2 { alg.base_disc() } else { 1 };
        let rhs = alg.nrd(&u).mul(&alg.nrd(&v), m);
        prop_assert_eq!(lhs, rhs);
    }
}

/// Splitting data satisfies e*f*g = field degree for all primes up to
/// 100 in every supported center field.
#[test]
fn efg_equals_degree() {
    let mut centers: Vec<CenterField> = Vec::new();
    for d in [-1i128, -2, -3, -5, -7, -11, 2, 3, 5, 6, 11] {
        centers.push(CenterField::Quadratic(QuadraticField::new(d).unwrap()));
    }
    for (m, n) in [(2i128, 3i128), (5, 2), (6, 1), (3, 1), (2, 1)] {
        centers.push(CenterField::Biquadratic(BiquadraticCMField::new(m, n).unwrap()));
    }
    for n in [5i128, 8, 12] {
        centers.push(CenterField::Cyclotomic(CyclotomicField::new(n).unwrap()));
    }
    centers.push(CenterField::Rationals);
    for center in &centers {
        let degree = center.degree().unwrap() as i128;
        for p in primes_up_to(100) {
            let data = center.split_prime(p).unwrap();
            assert_eq!(
                (data.e * data.f * data.g) as i128,
                degree,
                "efg != degree for {center} at {p}"
            );
        }
    }
}

/// The isogeny-class enumerator accepts exactly the beta satisfying one
/// of the five conditions, and they are mutually exclusive (q <= 49).
#[test]
fn isogeny_class_condition_audit() {
    for q in [2i128, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37, 41, 43,
        47, 49]
    {
        let q = PrimePower::new(q).unwrap();
        let accepted: Vec<i128> = elliptic_isogeny_classes(q)
            .unwrap()
            .iter()
            .map(|c| c.beta)
            .collect();
        for beta in -2 * 7..=2 * 7 {
            let hits = condition_flags(q, beta).iter().filter(|&&f| f).count();
            assert_eq!(hits, usize::from(accepted.contains(&beta)), "q={} beta={beta}", q.q());
        }
    }
}

/// Product identifiers are normalized: unordered pairs coincide.
#[test]
fn product_id_symmetry() {
    let groups = [
        FiniteGroupId::Cyclic(2),
        FiniteGroupId::Cyclic(4),
        FiniteGroupId::Cyclic(6),
        FiniteGroupId::Dic12,
        FiniteGroupId::Tstar,
    ];
    for a in &groups {
        for b in &groups {
            assert_eq!(product_id(a.clone(), b.clone()), product_id(b.clone(), a.clone()));
        }
    }
}
