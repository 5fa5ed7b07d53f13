//! Exact Z-lattice utilities: Hermite normal form over Q-coordinates,
//! Gram determinants, and enumeration of short vectors of a positive
//! definite rational quadratic form.

use crate::{invalid, Rational, Result};
use num_integer::Integer;
use num_traits::Zero;

/// Hermite normal form of the lattice spanned by the given rational
/// row vectors; returns a basis (full row rank required equals `dim`).
pub fn hnf_basis(rows: &[Vec<Rational>], dim: usize) -> Result<Vec<Vec<Rational>>> {
    // Scale to integers.
    let mut den: i128 = 1;
    for r in rows {
        for c in r {
            den = den.lcm(c.denom());
        }
    }
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|c| c.numer() * (den / c.denom()))
                .collect::<Vec<_>>()
        })
        .collect();
    // Column-by-column integer HNF (row style, working left to right).
    let mut pivot_row = 0usize;
    for col in 0..dim {
        // Reduce all rows below pivot_row in this column via gcd steps.
        loop {
            let mut best: Option<usize> = None;
            for r in pivot_row..m.len() {
                if m[r][col] != 0 {
                    best = match best {
                        None => Some(r),
                        Some(b) if m[r][col].abs() < m[b][col].abs() => Some(r),
                        keep => keep,
                    };
                }
            }
            let Some(b) = best else { break };
            m.swap(pivot_row, b);
            let mut done = true;
            for r in pivot_row + 1..m.len() {
                if m[r][col] != 0 {
                    let q = m[r][col].div_euclid(m[pivot_row][col]);
                    for c in 0..dim {
                        m[r][c] -= q * m[pivot_row][c];
                    }
                    if m[r][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if pivot_row < m.len() && m[pivot_row][col] != 0 {
            if m[pivot_row][col] < 0 {
                for c in 0..dim {
                    m[pivot_row][c] = -m[pivot_row][c];
                }
            }
            pivot_row += 1;
        }
    }
    if pivot_row != dim {
        return Err(invalid(format!(
            "lattice rank {pivot_row} does not fill dimension {dim}"
        )));
    }
    m.truncate(dim);
    // Reduce above-pivot entries for canonicality.
    for i in (0..dim).rev() {
        let col = (0..dim).find(|&c| m[i][c] != 0).unwrap();
        for r in 0..i {
            let q = m[r][col].div_euclid(m[i][col]);
            if q != 0 {
                for c in 0..dim {
                    m[r][c] -= q * m[i][c];
                }
            }
        }
    }
    Ok(m
        .into_iter()
        .map(|r| r.into_iter().map(|v| Rational::new(v, den)).collect())
        .collect())
}

/// Solve `x * basis = target` for rational `x` (basis must be square
/// and invertible); returns the coordinates.
pub fn solve_in_basis(basis: &[Vec<Rational>], target: &[Rational]) -> Result<Vec<Rational>> {
    let n = basis.len();
    // Gaussian elimination on the transposed system.
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = (0..n).map(|j| basis[j][i]).collect();
            row.push(target[i]);
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| invalid("singular basis"))?;
        a.swap(col, piv);
        let inv = a[col][col];
        for c in col..=n {
            a[col][c] = a[col][c] / inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for c in col..=n {
                    let sub = f * a[col][c];
                    a[r][c] = a[r][c] - sub;
                }
            }
        }
    }
    Ok((0..n).map(|i| a[i][n]).collect())
}

/// Determinant of a square rational matrix.
pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut det = Rational::from_integer(1);
    for col in 0..n {
        let piv = match (col..n).find(|&r| !a[r][col].is_zero()) {
            Some(p) => p,
            None => return Rational::zero(),
        };
        if piv != col {
            a.swap(col, piv);
            det = -det;
        }
        det *= a[col][col];
        let inv = a[col][col];
        for r in col + 1..n {
            if !a[r][col].is_zero() {
                let f = a[r][col] / inv;
                for c in col..n {
                    let sub = f * a[col][c];
                    a[r][c] = a[r][c] - sub;
                }
            }
        }
    }
    det
}

/// All integer vectors `v` with `v^T G v = target` for a positive
/// definite rational Gram matrix `G`, by exact LDL decomposition and
/// bounded recursive search.  Returns each vector once (both `v` and
/// `-v` appear when nonzero).
pub fn enumerate_quadratic_level(g: &[Vec<Rational>], target: Rational) -> Result<Vec<Vec<i128>>> {
    let n = g.len();
    // LDL: G = L D L^T with unit lower-triangular L.
    let mut l = vec![vec![Rational::zero(); n]; n];
    let mut d = vec![Rational::zero(); n];
    for i in 0..n {
        let mut di = g[i][i];
        for k in 0..i {
            let t = l[i][k] * l[i][k] * d[k];
            di -= t;
        }
        if di <= Rational::zero() {
            return Err(invalid("Gram matrix is not positive definite"));
        }
        d[i] = di;
        l[i][i] = Rational::from_integer(1);
        for j in i + 1..n {
            let mut v = g[j][i];
            for k in 0..i {
                let t = l[j][k] * l[i][k] * d[k];
                v -= t;
            }
            l[j][i] = v / di;
        }
    }
    // Q(x) = sum_i d_i (x_i + sum_{j>i} l_ji x_j)^2, recursing from the
    // last coordinate down.
    let mut out = Vec::new();
    let mut x = vec![0i128; n];
    fn recurse(
        i: isize,
        rem: Rational,
        x: &mut Vec<i128>,
        l: &Vec<Vec<Rational>>,
        d: &Vec<Rational>,
        out: &mut Vec<Vec<i128>>,
    ) {
        if i < 0 {
            if rem.is_zero() {
                out.push(x.clone());
            }
            return;
        }
        let i = i as usize;
        // shift = sum_{j > i} l[j][i] x_j.
        let mut shift = Rational::zero();
        for j in i + 1..x.len() {
            let t = l[j][i] * Rational::from_integer(x[j]);
            shift += t;
        }
        // d_i (x_i + shift)^2 <= rem; scan outward from -shift.
        let center = (-shift).round().to_integer();
        for dir in [1i128, -1] {
            let mut xi = if dir == 1 { center } else { center - 1 };
            loop {
                let c = Rational::from_integer(xi) + shift;
                let term = d[i] * c * c;
                if term > rem {
                    break;
                }
                x[i] = xi;
                recurse(i as isize - 1, rem - term, x, l, d, out);
                xi += dir;
            }
        }
        x[i] = 0;
    }
    recurse(n as isize - 1, target, &mut x, &l, &d, &mut out);
    Ok(out)
}

/// Exact integer square root, returning `None` if not a perfect square.
pub fn exact_isqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let mut lo = 0i128;
    let mut hi = 2_000_000_000i128.min(n) + 1;
    while lo < hi {
        let mid = (lo + hi + 1) / 2;
        if mid.checked_mul(mid).map_or(false, |sq| sq <= n) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    if lo * lo == n {
        Some(lo)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn r(n: i128) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn hnf_and_solve() {
        // Lattice spanned by (1/2, 1/2) and (0, 1) in dimension 2.
        let rows = vec![
            vec![Rational::new(1, 2), Rational::new(1, 2)],
            vec![r(0), r(1)],
            vec![r(1), r(0)],
        ];
        let b = hnf_basis(&rows, 2).unwrap();
        let det = determinant(&b);
        assert_eq!(det.abs(), Rational::new(1, 2));
        let coords = solve_in_basis(&b, &[Rational::new(1, 2), Rational::new(1, 2)]).unwrap();
        assert!(coords.iter().all(|c| c.denom() == &1));
    }

    #[test]
    fn short_vectors_of_identity() {
        let g = vec![vec![r(1), r(0)], vec![r(0), r(1)]];
        let mut v = enumerate_quadratic_level(&g, r(1)).unwrap();
        v.sort();
        assert_eq!(v, vec![vec![-1, 0], vec![0, -1], vec![0, 1], vec![1, 0]]);
        let v2 = enumerate_quadratic_level(&g, r(2)).unwrap();
        assert_eq!(v2.len(), 4); // (+-1, +-1)
    }

    #[test]
    fn d4_roots() {
        // D4 Gram has 24 roots of norm 2.
        let g = vec![
            vec![r(2), r(-1), r(0), r(0)],
            vec![r(-1), r(2), r(-1), r(-1)],
            vec![r(0), r(-1), r(2), r(0)],
            vec![r(0), r(-1), r(0), r(2)],
        ];
        assert_eq!(enumerate_quadratic_level(&g, r(2)).unwrap().len(), 24);
    }

    #[test]
    fn isqrt() {
        assert_eq!(exact_isqrt(16), Some(4));
        assert_eq!(exact_isqrt(15), None);
        assert_eq!(exact_isqrt(0), Some(0));
        assert_eq!(exact_isqrt(58081), Some(241));
    }
}
