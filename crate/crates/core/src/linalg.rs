//! Dense exact linear algebra over ℚ and ℤ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::qpoly::Rational;

pub type Matrix = Vec<Vec<Rational>>;

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut Matrix, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row >= m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for v in m[row].iter_mut() {
            *v *= &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let (top, rest) = if r < row {
                    let (a, b) = m.split_at_mut(row);
                    (&b[0], &mut a[r])
                } else {
                    let (a, b) = m.split_at_mut(r);
                    (&a[row], &mut b[0])
                };
                for (x, y) in rest.iter_mut().zip(top.iter()) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Basis of `{v : A v = 0}`, one vector per free column, in column order.
pub fn kernel(a: &Matrix, ncols: usize) -> Vec<Vec<Rational>> {
    let mut m = a.clone();
    let pivots = rref(&mut m, ncols);
    free_basis(&m, &pivots, ncols)
}

fn free_basis(m: &Matrix, pivots: &[usize], ncols: usize) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    for f in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[f] = Rational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[r][f].clone();
        }
        out.push(v);
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    /// Solution with every free variable set to zero.
    pub particular: Vec<Rational>,
    pub kernel: Vec<Vec<Rational>>,
}

/// Solves `A v = b`; `None` when inconsistent.
pub fn solve(a: &Matrix, b: &[Rational], ncols: usize) -> Option<Solution> {
    assert_eq!(a.len(), b.len());
    let mut m: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.resize(ncols, Rational::zero());
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m, ncols);
    for row in m.iter().skip(pivots.len()) {
        if !row[ncols].is_zero() {
            return None;
        }
    }
    let mut particular = vec![Rational::zero(); ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        particular[pc] = m[r][ncols].clone();
    }
    let kernel = free_basis(&m, &pivots, ncols);
    Some(Solution { particular, kernel })
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Scales a rational vector to a primitive integer vector whose first
/// nonzero entry is positive.
pub fn primitive_integer(v: &[Rational]) -> Vec<BigInt> {
    let den = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut ints: Vec<BigInt> = v.iter().map(|q| (q * Rational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() {
        for x in ints.iter_mut() {
            *x = &*x / &g;
        }
    }
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in ints.iter_mut() {
            *x = -&*x;
        }
    }
    ints
}

/// Basis of the integer lattice `ker A ∩ ℤ^n` for an integer matrix `A`
/// (rows of length `n`), in Hermite normal form.
///
/// Column operations reduce `A` to column echelon form while the same
/// operations are applied to an identity block; the identity-block columns
/// that sit under zero columns of `A` span the kernel lattice.
pub fn integer_kernel(a: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    // cols[j] = (column j of A, column j of U)
    let mut cols: Vec<(Vec<BigInt>, Vec<BigInt>)> = (0..n)
        .map(|j| {
            let top = a.iter().map(|row| row[j].clone()).collect();
            let mut e = vec![BigInt::zero(); n];
            e[j] = BigInt::one();
            (top, e)
        })
        .collect();
    let mut next = 0;
    for r in 0..a.len() {
        // gcd-reduce entries of row r across columns next..n into column `next`
        loop {
            let nz: Vec<usize> = (next..n).filter(|&j| !cols[j].0[r].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&j| cols[j].0[r].abs()).unwrap();
            cols.swap(next, piv);
            let mut done = true;
            for j in next + 1..n {
                if cols[j].0[r].is_zero() {
                    continue;
                }
                let q = cols[j].0[r].div_floor(&cols[next].0[r]);
                let (head, tail) = cols.split_at_mut(j);
                let pc = &head[next];
                let cj = &mut tail[0];
                for (x, y) in cj.0.iter_mut().zip(&pc.0) {
                    *x -= &q * y;
                }
                for (x, y) in cj.1.iter_mut().zip(&pc.1) {
                    *x -= &q * y;
                }
                if !cj.0[r].is_zero() {
                    done = false;
                }
            }
            if done {
                next += 1;
                break;
            }
        }
        if next == n {
            break;
        }
    }
    let basis: Vec<Vec<BigInt>> = cols[next..].iter().map(|(_, u)| u.clone()).collect();
    hermite_normal_form(basis, n)
}

/// Row-style Hermite normal form: pivots positive, entries above each pivot
/// reduced into `[0, pivot)`, zero rows dropped.
pub fn hermite_normal_form(mut rows: Vec<Vec<BigInt>>, n: usize) -> Vec<Vec<BigInt>> {
    let mut r = 0;
    for c in 0..n {
        if r >= rows.len() {
            break;
        }
        loop {
            let nz: Vec<usize> = (r..rows.len()).filter(|&i| !rows[i][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&i| rows[i][c].abs()).unwrap();
            rows.swap(r, piv);
            let mut clean = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                let pr = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pr) {
                    *x -= &q * y;
                }
                if !rows[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if r < rows.len() && !rows[r][c].is_zero() {
            if rows[r][c].is_negative() {
                for x in rows[r].iter_mut() {
                    *x = -&*x;
                }
            }
            let pr = rows[r].clone();
            for row in rows.iter_mut().take(r) {
                let q = row[c].div_floor(&pr[c]);
                if !q.is_zero() {
                    for (x, y) in row.iter_mut().zip(&pr) {
                        *x -= &q * y;
                    }
                }
            }
            r += 1;
        }
    }
    rows.truncate(r);
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::{int, rat};

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn solve_and_kernel() {
        // x + y = 2, x - y = 0
        let a = vec![vec![int(1), int(1)], vec![int(1), int(-1)]];
        let s = solve(&a, &[int(2), int(0)], 2).unwrap();
        assert_eq!(s.particular, vec![int(1), int(1)]);
        assert!(s.kernel.is_empty());
        // inconsistent
        let a = vec![vec![int(1), int(1)], vec![int(2), int(2)]];
        assert!(solve(&a, &[int(1), int(3)], 2).is_none());
        // underdetermined: kernel spanned by (-1, 1)
        let k = kernel(&vec![vec![int(1), int(1)]], 2);
        assert_eq!(k, vec![vec![int(-1), int(1)]]);
        assert_eq!(primitive_integer(&[rat(-1, 2), rat(1, 3)]), bi(&[3, -2]));
    }

    #[test]
    fn integer_kernel_is_saturated() {
        // 2x - 4y = 0 has rational kernel (2,1); lattice basis (2,1)
        let k = integer_kernel(&[bi(&[2, -4])], 2);
        assert_eq!(k, vec![bi(&[2, 1])]);
        // x + y + z = 0
        let k = integer_kernel(&[bi(&[1, 1, 1])], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(v.iter().sum::<BigInt>(), BigInt::zero());
        }
        assert_eq!(k, vec![bi(&[1, 0, -1]), bi(&[0, 1, -1])]);
        // zero matrix: identity basis
        assert_eq!(integer_kernel(&[bi(&[0, 0])], 2), vec![bi(&[1, 0]), bi(&[0, 1])]);
        // nonsingular: empty
        assert!(integer_kernel(&[bi(&[0, -1]), bi(&[1, 0])], 2).is_empty());
    }

    #[test]
    fn hnf_reduces_above_pivots() {
        let h = hermite_normal_form(vec![bi(&[1, 3]), bi(&[0, 2])], 2);
        assert_eq!(h, vec![bi(&[1, 1]), bi(&[0, 2])]);
    }
}
