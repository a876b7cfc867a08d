//! Exact rational linear algebra shared by the cycle-space, plane and
//! integer-programming code. Never floating point.

use num::rational::BigRational;
use num::{BigInt, Integer, One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn rat_of(v: &BigInt) -> Rat {
    Rat::from_integer(v.clone())
}

pub fn rats_of(v: &[BigInt]) -> Vec<Rat> {
    v.iter().map(rat_of).collect()
}

/// A row space maintained in reduced echelon form; supports exact membership
/// tests and incremental insertion.
#[derive(Clone, Debug, Default)]
pub struct RowSpace {
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new() -> Self {
        RowSpace::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let factor = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= &factor * r;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Inserts `v`; returns true if it enlarged the space.
    pub fn insert(&mut self, v: &[Rat]) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let lead = v[p].clone();
        for x in v.iter_mut() {
            *x /= &lead;
        }
        // Back-substitute into existing rows to keep the form reduced.
        for (row, &rp) in self.rows.iter_mut().zip(&self.pivots) {
            let _ = rp;
            if !row[p].is_zero() {
                let factor = row[p].clone();
                for (x, nv) in row.iter_mut().zip(&v) {
                    *x -= &factor * nv;
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        // Keep rows ordered by pivot column for determinism.
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        self.rows = order.iter().map(|&i| self.rows[i].clone()).collect();
        self.pivots = order.iter().map(|&i| self.pivots[i]).collect();
        true
    }
}

/// Rank of an integer matrix over ℚ.
pub fn rank_int(a: &[Vec<BigInt>]) -> usize {
    let mut space = RowSpace::new();
    for row in a {
        space.insert(&rats_of(row));
    }
    space.dim()
}

/// A basis of the rational kernel {x : A x = 0} of an m×k matrix, computed by
/// Gauss–Jordan elimination; one basis vector per free column, in column
/// order.
pub fn kernel_basis(a: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    let mut m: Vec<Vec<Rat>> = a.to_vec();
    let rows = m.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let lead = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x /= &lead;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in 0..cols {
                    let sub = &factor * &m[r][j];
                    m[i][j] -= sub;
                }
            }
        }
        pivot_of_col[c] = Some(r);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for c in 0..cols {
            if let Some(pr) = pivot_of_col[c] {
                v[c] = -m[pr][free].clone();
            }
        }
        basis.push(v);
    }
    basis
}

/// Does `A x = b` admit *any* integer solution (signs unconstrained)?
///
/// Column Hermite reduction: unimodular column operations keep the solution
/// lattice intact and bring the matrix to lower-trapezoidal form, after which
/// forward substitution must divide exactly and zero rows must have zero
/// residuals.
pub fn lattice_feasible(a: &[Vec<BigInt>], b: &[BigInt]) -> bool {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<BigInt>> = a.to_vec();
    let mut pivot_of_row: Vec<Option<usize>> = vec![None; rows];
    let mut c = 0usize;
    for r in 0..rows {
        if c >= cols {
            break;
        }
        loop {
            let Some(jmin) = (c..cols)
                .filter(|&j| !m[r][j].is_zero())
                .min_by_key(|&j| m[r][j].abs())
            else {
                break;
            };
            for row in m.iter_mut() {
                row.swap(c, jmin);
            }
            let mut done = true;
            let pivot = m[r][c].clone();
            for j in c + 1..cols {
                if m[r][j].is_zero() {
                    continue;
                }
                let q = m[r][j].div_floor(&pivot);
                if !q.is_zero() {
                    for row in m.iter_mut() {
                        let sub = &q * &row[c];
                        row[j] -= sub;
                    }
                }
                if !m[r][j].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !m[r][c].is_zero() {
            pivot_of_row[r] = Some(c);
            c += 1;
        }
    }
    // Forward substitution in the transformed coordinates.
    let mut y = vec![BigInt::zero(); cols];
    for r in 0..rows {
        let mut residual = b[r].clone();
        for j in 0..cols {
            if !m[r][j].is_zero() && !y[j].is_zero() {
                residual -= &m[r][j] * &y[j];
            }
        }
        match pivot_of_row[r] {
            Some(p) => {
                if !(&residual % &m[r][p]).is_zero() {
                    return false;
                }
                y[p] = residual / &m[r][p];
            }
            None => {
                if !residual.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// Clears denominators and divides by the gcd, preserving direction.
pub fn primitive_int_vector(v: &[Rat]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = num::integer::lcm(lcm, x.denom().clone());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = num::integer::gcd(g, x.abs());
    }
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.iter().map(|x| x / &g).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_space_membership() {
        let mut s = RowSpace::new();
        assert!(s.insert(&[rat(1), rat(0), rat(-2)]));
        assert!(s.insert(&[rat(0), rat(1), rat(2)]));
        assert!(!s.insert(&[rat(2), rat(2), rat(0)]));
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[rat(3), rat(-1), rat(-8)]));
        assert!(!s.contains(&[rat(0), rat(0), rat(1)]));
    }

    #[test]
    fn kernel_of_incidence_like_matrix() {
        // x - y = 0 has kernel spanned by (1, 1).
        let a = vec![vec![rat(1), rat(-1)]];
        let basis = kernel_basis(&a, 2);
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0], vec![rat(1), rat(1)]);

        // Check A v = 0 on a fatter example.
        let a = vec![
            vec![rat(1), rat(2), rat(-1), rat(0)],
            vec![rat(0), rat(1), rat(1), rat(-1)],
        ];
        let basis = kernel_basis(&a, 4);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            for row in &a {
                let dot: Rat = row.iter().zip(v).map(|(a, b)| a * b).sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn lattice_feasibility() {
        let i = |v: i64| BigInt::from(v);
        // 2x = 1: no.
        assert!(!lattice_feasible(&[vec![i(2)]], &[i(1)]));
        // 2x + 3y = 1: yes.
        assert!(lattice_feasible(&[vec![i(2), i(3)]], &[i(1)]));
        // x − 3y = 3 and −2x + 3z = −1 force −2·3(1+y)… ≡ 2 (mod 3): no.
        assert!(!lattice_feasible(
            &[vec![i(-2), i(0), i(3)], vec![i(1), i(-3), i(0)]],
            &[i(-1), i(3)]
        ));
        // Zero row with nonzero rhs: no.
        assert!(!lattice_feasible(&[vec![i(0), i(0)]], &[i(5)]));
        // Redundant consistent rows: yes.
        assert!(lattice_feasible(
            &[vec![i(1), i(1)], vec![i(2), i(2)]],
            &[i(3), i(6)]
        ));
    }

    #[test]
    fn primitive_vectors() {
        let v = vec![rat(1) / rat(2), rat(-3) / rat(4), rat(0)];
        assert_eq!(
            primitive_int_vector(&v),
            vec![BigInt::from(2), BigInt::from(-3), BigInt::from(0)]
        );
    }
}
