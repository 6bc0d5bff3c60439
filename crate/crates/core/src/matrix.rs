//! Dense exact-rational matrices: just enough linear algebra for the RUR
//! construction and rational interpolation (products, traces, rank, kernel,
//! characteristic polynomial).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rational::Rational;
use crate::unipoly::{UniPoly, Var};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(i, j)] = &out[(i, j)] + &(a * b);
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for j in 0..self.cols {
                    let a = &self[(i, j)];
                    if !a.is_zero() && !v[j].is_zero() {
                        acc = acc + a * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        let mut acc = Rational::zero();
        for i in 0..self.rows {
            acc = acc + &self[(i, i)];
        }
        acc
    }

    pub fn scale_add(&self, c: &Rational, rhs: &QMatrix) -> QMatrix {
        // self + c * rhs
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(rhs.data.iter()) {
            if !b.is_zero() {
                *a = &*a + &(c * b);
            }
        }
        out
    }

    /// Rank via fraction-preserving Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..m.cols {
            let pivot = (row..m.rows).find(|&r| !m[(r, col)].is_zero());
            let Some(p) = pivot else { continue };
            m.swap_rows(row, p);
            let inv = m[(row, col)].recip();
            for j in col..m.cols {
                m[(row, j)] = &m[(row, j)] * &inv;
            }
            for r in (row + 1)..m.rows {
                let factor = m[(r, col)].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    m[(r, j)] = &m[(r, j)] - &(&factor * &m[(row, j)]);
                }
            }
            rank += 1;
            row += 1;
            if row == m.rows {
                break;
            }
        }
        rank
    }

    /// One nonzero kernel vector, or `None` when the matrix has full column
    /// rank. Deterministic: free variable chosen as the last non-pivot column.
    pub fn kernel_vector(&self) -> Option<Vec<Rational>> {
        let mut m = self.clone();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            let pivot = (row..m.rows).find(|&r| !m[(r, col)].is_zero());
            let Some(p) = pivot else { continue };
            m.swap_rows(row, p);
            let inv = m[(row, col)].recip();
            for j in col..m.cols {
                m[(row, j)] = &m[(row, j)] * &inv;
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m[(r, col)].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    m[(r, j)] = &m[(r, j)] - &(&factor * &m[(row, j)]);
                }
            }
            pivots.push((row, col));
            row += 1;
            if row == m.rows {
                break;
            }
        }
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let free = (0..self.cols).rev().find(|c| !pivot_cols.contains(c))?;
        let mut v = vec![Rational::zero(); self.cols];
        v[free] = Rational::one();
        for &(r, c) in &pivots {
            // x_c = -sum over free columns of m[r][j] * x_j; only `free` is 1.
            v[c] = -m[(r, free)].clone();
        }
        Some(v)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Characteristic polynomial, monic in `T`, via exact power-sum traces
    /// and Newton's identities.
    pub fn charpoly(&self) -> UniPoly {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return UniPoly::one(Var::T);
        }
        // p[i] = trace(M^i), i = 1..n
        let mut power_sums = Vec::with_capacity(n);
        let mut power = self.clone();
        power_sums.push(power.trace());
        for _ in 1..n {
            power = power.mul(self);
            power_sums.push(power.trace());
        }
        // Newton's identities: k e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} p_i.
        let mut e = vec![Rational::one()];
        for k in 1..=n {
            let mut acc = Rational::zero();
            for i in 1..=k {
                let term = &e[k - i] * &power_sums[i - 1];
                if i % 2 == 1 {
                    acc = acc + term;
                } else {
                    acc = acc - term;
                }
            }
            e.push(acc / Rational::from_integer(BigInt::from(k)));
        }
        // chi(T) = sum_k (-1)^k e_k T^(n-k)
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (k, ek) in e.iter().enumerate() {
            let signed = if k % 2 == 0 { ek.clone() } else { -ek.clone() };
            coeffs[n - k] = signed;
        }
        UniPoly::new(Var::T, coeffs)
    }
}

/// One nonzero kernel vector of a rational matrix via fraction-free Bareiss
/// elimination: rows are cleared to integers up front and all intermediate
/// products stay integral, which keeps entry growth polynomial where naive
/// rational elimination explodes.
pub fn integer_kernel_vector(rows: &[Vec<Rational>]) -> Option<Vec<Rational>> {
    use num_integer::Integer;
    let nrows = rows.len();
    let ncols = rows.first()?.len();
    // Clear each row to primitive integers: row scaling leaves the kernel.
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let mut lcm = BigInt::one();
            for c in row {
                lcm = lcm.lcm(c.denom());
            }
            let mut ints: Vec<BigInt> =
                row.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
            let mut g = BigInt::zero();
            for c in &ints {
                g = g.gcd(c);
            }
            if !g.is_zero() && !g.is_one() {
                for c in ints.iter_mut() {
                    *c = &*c / &g;
                }
            }
            ints
        })
        .collect();

    let mut prev = BigInt::one();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let pivot = m[row][col].clone();
        for r in (row + 1)..nrows {
            if m[r][col].is_zero() {
                // still must rescale to keep the Bareiss invariant
                for j in col..ncols {
                    if !m[r][j].is_zero() {
                        m[r][j] = &(&m[r][j] * &pivot) / &prev;
                    }
                }
                continue;
            }
            let head = m[r][col].clone();
            for j in col..ncols {
                let t = &(&m[r][j] * &pivot) - &(&head * &m[row][j]);
                m[r][j] = &t / &prev;
            }
        }
        pivots.push((row, col));
        prev = pivot;
        row += 1;
    }

    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let free = (0..ncols).rev().find(|c| !pivot_cols.contains(c))?;
    let mut x = vec![Rational::zero(); ncols];
    x[free] = Rational::one();
    for &(r, c) in pivots.iter().rev() {
        let mut acc = Rational::zero();
        for j in (c + 1)..ncols {
            if !m[r][j].is_zero() && !x[j].is_zero() {
                acc = acc + Rational::from_integer(m[r][j].clone()) * &x[j];
            }
        }
        x[c] = -acc / Rational::from_integer(m[r][c].clone());
    }
    Some(x)
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    #[test]
    fn charpoly_of_companion() {
        // Companion matrix of T^2 - 3T + 2 = (T-1)(T-2).
        let m = QMatrix::from_rows(vec![
            vec![rat_int(0), rat_int(-2)],
            vec![rat_int(1), rat_int(3)],
        ]);
        assert_eq!(m.charpoly(), UniPoly::from_ints(Var::T, &[2, -3, 1]));
    }

    #[test]
    fn rank_and_kernel() {
        let m = QMatrix::from_rows(vec![
            vec![rat_int(1), rat_int(2), rat_int(3)],
            vec![rat_int(2), rat_int(4), rat_int(6)],
        ]);
        assert_eq!(m.rank(), 1);
        let v = m.kernel_vector().unwrap();
        let prod = m.matvec(&v);
        assert!(prod.iter().all(num_traits::Zero::is_zero));
        assert!(v.iter().any(|c| !c.is_zero()));
    }

    #[test]
    fn full_rank_has_no_kernel() {
        let m = QMatrix::identity(3);
        assert!(m.kernel_vector().is_none());
        assert_eq!(m.rank(), 3);
    }
}
