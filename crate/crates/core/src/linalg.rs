//! Fraction-free (Bareiss) elimination over ℚ[κ].
//!
//! Rows over ℚ(κ) are first multiplied by the lcm of their denominators, so
//! every entry is a polynomial; the Bareiss update then divides exactly by
//! the previous pivot and intermediate degrees stay bounded by minors.

use crate::error::{Error, Result};
use crate::field::{KappaPoly, KappaRational};

fn poly_lcm(a: &KappaPoly, b: &KappaPoly) -> KappaPoly {
    let g = KappaPoly::gcd(a, b);
    (a * b).exact_div(&g)
}

/// Clears denominators row by row.
fn to_poly_rows(rows: &[Vec<KappaRational>]) -> Vec<Vec<KappaPoly>> {
    rows.iter()
        .map(|row| {
            let l = row.iter().fold(KappaPoly::one(), |acc, c| poly_lcm(&acc, c.denom()));
            row.iter().map(|c| (c.numer() * &l).exact_div(c.denom())).collect()
        })
        .collect()
}

/// Echelon form: matrix plus the pivot column of each leading row.
struct Echelon {
    m: Vec<Vec<KappaPoly>>,
    pivots: Vec<usize>,
}

/// Bareiss elimination on the first `ncols` columns; later columns are
/// carried along (augmented right-hand sides).
fn bareiss(mut m: Vec<Vec<KappaPoly>>, ncols: usize) -> Echelon {
    let rows = m.len();
    let width = m.first().map_or(0, Vec::len);
    let mut prev = KappaPoly::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows {
            break;
        }
        // smallest-degree nonzero pivot keeps the numbers small
        let Some(p) = (r..rows).filter(|&i| !m[i][c].is_zero()).min_by_key(|&i| (m[i][c].degree(), i)) else {
            continue;
        };
        m.swap(r, p);
        let piv = m[r][c].clone();
        for i in r + 1..rows {
            let f = m[i][c].clone();
            for j in 0..width {
                let v = &(&piv * &m[i][j]) - &(&f * &m[r][j]);
                m[i][j] = v.exact_div(&prev);
            }
        }
        // rows above the pivot are not reduced, but earlier rows keep the same scale
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    Echelon { m, pivots }
}

/// Rank of a matrix over ℚ(κ).
pub fn rank(rows: &[Vec<KappaRational>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    bareiss(to_poly_rows(rows), ncols).pivots.len()
}

/// Determinant of a square matrix over ℚ(κ).
pub fn determinant(rows: &[Vec<KappaRational>]) -> KappaRational {
    let n = rows.len();
    if n == 0 {
        return KappaRational::one();
    }
    // row scaling multiplies the determinant; undo it afterwards
    let scales: Vec<KappaPoly> =
        rows.iter().map(|row| row.iter().fold(KappaPoly::one(), |acc, c| poly_lcm(&acc, c.denom()))).collect();
    let mut m = to_poly_rows(rows);
    let mut sign = 1i64;
    let mut prev = KappaPoly::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return KappaRational::zero();
        };
        if p != c {
            m.swap(p, c);
            sign = -sign;
        }
        for i in c + 1..n {
            for j in c + 1..n {
                let v = &(&m[c][c] * &m[i][j]) - &(&m[i][c] * &m[c][j]);
                m[i][j] = v.exact_div(&prev);
            }
            m[i][c] = KappaPoly::zero();
        }
        prev = m[c][c].clone();
    }
    let denom = scales.iter().fold(KappaPoly::one(), |acc, s| &acc * s);
    KappaRational::new(&prev * &KappaPoly::from_i64s(&[sign]), denom).expect("nonzero scale")
}

/// Solves `A x = b` (A possibly overdetermined) requiring a unique solution.
/// Fails with `SingularSystem` when the solution is not unique or does not exist.
pub fn solve(a: &[Vec<KappaRational>], b: &[KappaRational]) -> Result<Vec<KappaRational>> {
    let ncols = a.first().map_or(0, Vec::len);
    if a.len() != b.len() {
        return Err(Error::InvalidInput(format!("{} rows but {} right-hand sides", a.len(), b.len())));
    }
    if ncols == 0 {
        return if b.iter().all(KappaRational::is_zero) {
            Ok(Vec::new())
        } else {
            Err(Error::SingularSystem("inconsistent empty system".into()))
        };
    }
    let aug: Vec<Vec<KappaRational>> =
        a.iter().zip(b).map(|(row, rhs)| row.iter().cloned().chain(std::iter::once(rhs.clone())).collect()).collect();
    let Echelon { m, pivots } = bareiss(to_poly_rows(&aug), ncols);
    if m[pivots.len()..].iter().any(|row| !row[ncols].is_zero()) {
        return Err(Error::SingularSystem("inconsistent system".into()));
    }
    if pivots.len() < ncols {
        return Err(Error::SingularSystem(format!("rank {} < {} unknowns", pivots.len(), ncols)));
    }
    let mut x = vec![KappaRational::zero(); ncols];
    for r in (0..ncols).rev() {
        let mut acc = KappaRational::from_poly(m[r][ncols].clone());
        for c in r + 1..ncols {
            if !m[r][c].is_zero() {
                acc = &acc - &(&KappaRational::from_poly(m[r][c].clone()) * &x[c]);
            }
        }
        x[r] = acc.checked_div(&KappaRational::from_poly(m[r][r].clone()))?;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> KappaRational {
        KappaRational::from_int(n)
    }

    fn k(c: i64) -> KappaRational {
        KappaRational::kappa_plus(c)
    }

    #[test]
    fn solves_symbolic_2x2() {
        // [κ 1; 1 κ] x = [1; 1]  →  x = (1/(κ+1), 1/(κ+1))
        let a = vec![vec![k(0), r(1)], vec![r(1), k(0)]];
        let x = solve(&a, &[r(1), r(1)]).unwrap();
        let want = r(1) / k(1);
        assert_eq!(x, vec![want.clone(), want]);
    }

    #[test]
    fn overdetermined_consistent_and_not() {
        let a = vec![vec![r(1), r(0)], vec![r(0), k(0)], vec![r(1), k(0)]];
        let x = solve(&a, &[r(2), k(0), k(2)]).unwrap();
        assert_eq!(x, vec![r(2), r(1)]);
        assert!(matches!(solve(&a, &[r(2), k(0), r(0)]), Err(Error::SingularSystem(_))));
    }

    #[test]
    fn singular_detected() {
        let a = vec![vec![k(0), k(0)], vec![r(2), r(2)]];
        assert!(matches!(solve(&a, &[r(1), r(1)]), Err(Error::SingularSystem(_))));
        assert_eq!(rank(&a), 1);
    }

    #[test]
    fn determinant_matches_expansion() {
        let half = KappaRational::from_ratio(1, 2);
        let a = vec![
            vec![k(0), r(1), half.clone()],
            vec![r(2), k(-1), r(0)],
            vec![r(1) / k(2), r(0), r(3)],
        ];
        // cofactor expansion along the first row
        let m = |i: usize, j: usize| a[i][j].clone();
        let det2 = |a0: KappaRational, a1: KappaRational, b0: KappaRational, b1: KappaRational| &(&a0 * &b1) - &(&a1 * &b0);
        let want = &(&(&m(0, 0) * &det2(m(1, 1), m(1, 2), m(2, 1), m(2, 2)))
            - &(&m(0, 1) * &det2(m(1, 0), m(1, 2), m(2, 0), m(2, 2))))
            + &(&m(0, 2) * &det2(m(1, 0), m(1, 1), m(2, 0), m(2, 1)));
        assert_eq!(determinant(&a), want);
    }
}
