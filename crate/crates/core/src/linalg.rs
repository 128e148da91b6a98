//! Exact linear algebra: Gaussian elimination over field rings and
//! Hermite/Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::{Ring, Scalar};

/// Row-reduced solver over a field ring, reusable across many right-hand
/// sides with the same matrix.
pub struct FieldSolver {
    ring: Ring,
    rows: usize,
    cols: usize,
    rref: Vec<Vec<Scalar>>,
    transform: Vec<Vec<Scalar>>,
    /// pivot column of each leading row
    pivots: Vec<usize>,
}

impl FieldSolver {
    pub fn new(ring: &Ring, a: &[Vec<Scalar>]) -> FieldSolver {
        assert!(ring.is_field(), "FieldSolver requires a field");
        let rows = a.len();
        let cols = a.first().map_or(0, |r| r.len());
        let mut m: Vec<Vec<Scalar>> = a.to_vec();
        let mut t: Vec<Vec<Scalar>> = (0..rows)
            .map(|i| {
                (0..rows)
                    .map(|j| if i == j { ring.one() } else { ring.zero() })
                    .collect()
            })
            .collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            let Some(p) = (row..rows).find(|&r| !ring.is_zero(&m[r][col])) else {
                continue;
            };
            m.swap(row, p);
            t.swap(row, p);
            let inv = ring.inverse(&m[row][col]).expect("field inverse");
            for x in m[row].iter_mut() {
                *x = ring.mul(x, &inv);
            }
            for x in t[row].iter_mut() {
                *x = ring.mul(x, &inv);
            }
            for r in 0..rows {
                if r != row && !ring.is_zero(&m[r][col]) {
                    let factor = m[r][col].clone();
                    for c in 0..cols {
                        let d = ring.mul(&factor, &m[row][c]);
                        m[r][c] = ring.sub(&m[r][c], &d);
                    }
                    for c in 0..rows {
                        let d = ring.mul(&factor, &t[row][c]);
                        t[r][c] = ring.sub(&t[r][c], &d);
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == rows {
                break;
            }
        }
        FieldSolver {
            ring: ring.clone(),
            rows,
            cols,
            rref: m,
            transform: t,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// The nonzero rows of the reduced row echelon form.
    pub fn rref_rows(&self) -> &[Vec<Scalar>] {
        &self.rref[..self.pivots.len()]
    }

    /// Pivot column of each leading row.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// A solution of A x = b with free variables set to zero, or None when
    /// the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let ring = &self.ring;
        let v: Vec<Scalar> = (0..self.rows)
            .map(|r| {
                let mut acc = ring.zero();
                for c in 0..self.rows {
                    if !ring.is_zero(&self.transform[r][c]) && !ring.is_zero(&b[c]) {
                        acc = ring.add(&acc, &ring.mul(&self.transform[r][c], &b[c]));
                    }
                }
                acc
            })
            .collect();
        for r in self.pivots.len()..self.rows {
            if !ring.is_zero(&v[r]) {
                return None;
            }
        }
        let mut x = vec![ring.zero(); self.cols];
        for (r, &col) in self.pivots.iter().enumerate() {
            x[col] = v[r].clone();
        }
        Some(x)
    }

    /// Basis of the kernel of A.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let ring = &self.ring;
        let mut basis = Vec::new();
        let pivot_set: std::collections::BTreeSet<usize> = self.pivots.iter().copied().collect();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![ring.zero(); self.cols];
            v[free] = ring.one();
            for (r, &col) in self.pivots.iter().enumerate() {
                v[col] = ring.neg(&self.rref[r][free]);
            }
            basis.push(v);
        }
        basis
    }
}

pub fn field_rank(ring: &Ring, a: &[Vec<Scalar>]) -> usize {
    FieldSolver::new(ring, a).rank()
}

pub fn field_kernel(ring: &Ring, a: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    FieldSolver::new(ring, a).kernel()
}

/// Column-style Hermite reduction of an integer matrix: returns (H, U) with
/// H = A*U, U unimodular, and H in column echelon form with positive pivots.
pub fn hnf_with_transform(a: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut h: Vec<Vec<BigInt>> = a.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..cols)
        .map(|i| {
            (0..cols)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();

    let col_op = |h: &mut Vec<Vec<BigInt>>, u: &mut Vec<Vec<BigInt>>, c1: usize, c2: usize, m: [[BigInt; 2]; 2]| {
        for mat in [h, u] {
            for row in mat.iter_mut() {
                let a = row[c1].clone();
                let b = row[c2].clone();
                row[c1] = &m[0][0] * &a + &m[0][1] * &b;
                row[c2] = &m[1][0] * &a + &m[1][1] * &b;
            }
        }
    };

    let mut lead = 0usize;
    for r in 0..rows {
        if lead >= cols {
            break;
        }
        for j in lead + 1..cols {
            if h[r][j].is_zero() {
                continue;
            }
            if h[r][lead].is_zero() {
                // swap columns
                col_op(
                    &mut h,
                    &mut u,
                    lead,
                    j,
                    [
                        [BigInt::zero(), BigInt::one()],
                        [BigInt::one(), BigInt::zero()],
                    ],
                );
                continue;
            }
            let e = h[r][lead].extended_gcd(&h[r][j]);
            let g = e.gcd;
            let (s, t) = (e.x, e.y);
            let q1 = &h[r][lead] / &g;
            let q2 = &h[r][j] / &g;
            // [lead, j] <- [s*lead + t*j, -q2*lead + q1*j]; determinant 1
            col_op(&mut h, &mut u, lead, j, [[s, t], [-q2, q1]]);
        }
        if !h[r][lead].is_zero() {
            if h[r][lead].is_negative() {
                for mat in [&mut h, &mut u] {
                    for row in mat.iter_mut() {
                        row[lead] = -row[lead].clone();
                    }
                }
            }
            lead += 1;
        }
    }
    (h, u)
}

/// Solver for integer linear systems A x = b over Z, reusable across
/// right-hand sides.
pub struct IntSolver {
    rows: usize,
    cols: usize,
    h: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    /// (row, col) of each echelon pivot of H
    pivots: Vec<(usize, usize)>,
}

impl IntSolver {
    pub fn new(a: &[Vec<BigInt>]) -> IntSolver {
        let rows = a.len();
        let cols = a.first().map_or(0, |r| r.len());
        let (h, u) = hnf_with_transform(a);
        let mut pivots = Vec::new();
        let mut col = 0;
        for r in 0..rows {
            if col >= cols {
                break;
            }
            if !h[r][col].is_zero() {
                pivots.push((r, col));
                col += 1;
            }
        }
        IntSolver {
            rows,
            cols,
            h,
            u,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// An integer solution of A x = b, or None when none exists.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.rows);
        // forward-substitute H y = b on pivot entries
        let mut y = vec![BigInt::zero(); self.cols];
        let mut residual: Vec<BigInt> = b.to_vec();
        for &(r, c) in &self.pivots {
            let (q, rem) = residual[r].div_rem(&self.h[r][c]);
            if !rem.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for row in 0..self.rows {
                    residual[row] -= &q * &self.h[row][c];
                }
            }
            y[c] = q;
        }
        if residual.iter().any(|v| !v.is_zero()) {
            return None;
        }
        // x = U y
        let x: Vec<BigInt> = (0..self.cols)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (j, yj) in y.iter().enumerate() {
                    if !yj.is_zero() {
                        acc += &self.u[i][j] * yj;
                    }
                }
                acc
            })
            .collect();
        Some(x)
    }

    /// Basis of the integer kernel lattice of A.
    pub fn kernel(&self) -> Vec<Vec<BigInt>> {
        let pivot_cols: std::collections::BTreeSet<usize> =
            self.pivots.iter().map(|&(_, c)| c).collect();
        (0..self.cols)
            .filter(|c| !pivot_cols.contains(c))
            .map(|c| (0..self.cols).map(|i| self.u[i][c].clone()).collect())
            .collect()
    }
}

pub fn int_rank(a: &[Vec<BigInt>]) -> usize {
    IntSolver::new(a).rank()
}

pub fn int_kernel(a: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    IntSolver::new(a).kernel()
}

/// Saturation of the row lattice of `a` inside Z^n: a basis of the
/// intersection of the rational row span with the integer lattice.
pub fn saturate_rows(a: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let cols = a.first().map_or(0, |r| r.len());
    if a.is_empty() {
        return Vec::new();
    }
    // orthogonal complement of the row span, then its orthogonal kernel
    let perp = int_kernel(a);
    if perp.is_empty() {
        // full row span: the saturation is all of Z^n
        return (0..cols)
            .map(|i| {
                (0..cols)
                    .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect();
    }
    let perp_rows: Vec<Vec<BigInt>> = perp;
    int_kernel(&perp_rows)
}

/// Nonzero invariant factors d1 | d2 | ... of an integer matrix.
pub fn smith_invariant_factors(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut m: Vec<Vec<BigInt>> = a.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut factors = Vec::new();
    let mut top = 0usize;
    let mut left = 0usize;
    while top < rows && left < cols {
        // locate a nonzero entry of minimal absolute value
        let mut best: Option<(usize, usize)> = None;
        for r in top..rows {
            for c in left..cols {
                if !m[r][c].is_zero()
                    && best.map_or(true, |(br, bc)| m[r][c].abs() < m[br][bc].abs())
                {
                    best = Some((r, c));
                }
            }
        }
        let Some((br, bc)) = best else { break };
        m.swap(top, br);
        for row in m.iter_mut() {
            row.swap(left, bc);
        }
        // kill the row and column; restart when a remainder shrinks the pivot
        let mut clean = true;
        for r in top + 1..rows {
            if !m[r][left].is_zero() {
                let q = div_round(&m[r][left], &m[top][left]);
                for c in left..cols {
                    let d = &q * &m[top][c];
                    m[r][c] -= d;
                }
                if !m[r][left].is_zero() {
                    clean = false;
                }
            }
        }
        for c in left + 1..cols {
            if !m[top][c].is_zero() {
                let q = div_round(&m[top][c], &m[top][left]);
                for r in top..rows {
                    let d = &q * &m[r][left];
                    m[r][c] -= d;
                }
                if !m[top][c].is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue;
        }
        // ensure pivot divides the rest of the block
        let pivot = m[top][left].abs();
        let mut divides = true;
        'outer: for r in top + 1..rows {
            for c in left + 1..cols {
                if !(&m[r][c] % &pivot).is_zero() {
                    // fold that row in and retry
                    for cc in left..cols {
                        let add = m[r][cc].clone();
                        m[top][cc] += add;
                    }
                    divides = false;
                    break 'outer;
                }
            }
        }
        if !divides {
            continue;
        }
        factors.push(pivot);
        top += 1;
        left += 1;
    }
    factors
}

fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    // round-to-nearest quotient keeps entries small
    let two = BigInt::from(2);
    let (q, r) = a.div_rem(b);
    if &r.abs() * &two > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Solve A x = b over the given ring: Gaussian elimination for fields,
/// Hermite reduction for the integers, and a rational solve with
/// denominator-support check for localizations.
pub fn solve_over_ring(ring: &Ring, a: &[Vec<Scalar>], b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    match ring {
        _ if ring.is_field() => Ok(FieldSolver::new(ring, a).solve(b)),
        Ring::Integers => {
            let ai = scalar_mat_to_int(ring, a);
            let bi: Vec<BigInt> = b
                .iter()
                .map(|s| ring.lift_to_integer(s).expect("integer scalar"))
                .collect();
            Ok(IntSolver::new(&ai)
                .solve(&bi)
                .map(|x| x.iter().map(|v| ring.from_bigint(v)).collect()))
        }
        Ring::Localized(primes) => {
            let q = Ring::Rationals;
            let aq: Vec<Vec<Scalar>> = a
                .iter()
                .map(|row| row.iter().map(|s| ring.map_scalar(s, &q).unwrap()).collect())
                .collect();
            let bq: Vec<Scalar> = b.iter().map(|s| ring.map_scalar(s, &q).unwrap()).collect();
            match FieldSolver::new(&q, &aq).solve(&bq) {
                None => Ok(None),
                Some(x) => {
                    let mut out = Vec::with_capacity(x.len());
                    for s in x {
                        let Scalar::Frac(f) = &s else { unreachable!() };
                        let mut den = f.denom().abs();
                        for &p in primes {
                            let p = BigInt::from(p);
                            while (&den % &p).is_zero() {
                                den /= &p;
                            }
                        }
                        if !den.is_one() {
                            return Err(Error::ExpansionFailed(
                                "solution leaves the localized ring".into(),
                            ));
                        }
                        out.push(s);
                    }
                    Ok(Some(out))
                }
            }
        }
        _ => Err(Error::UnsupportedRing(format!(
            "linear solving over {ring}"
        ))),
    }
}

pub fn scalar_mat_to_int(ring: &Ring, a: &[Vec<Scalar>]) -> Vec<Vec<BigInt>> {
    a.iter()
        .map(|row| {
            row.iter()
                .map(|s| ring.lift_to_integer(s).expect("integer scalar"))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn field_solve_and_kernel() {
        let q = Ring::Rationals;
        let a = vec![
            vec![q.from_i64(1), q.from_i64(2), q.from_i64(3)],
            vec![q.from_i64(2), q.from_i64(4), q.from_i64(6)],
        ];
        let solver = FieldSolver::new(&q, &a);
        assert_eq!(solver.rank(), 1);
        assert_eq!(solver.kernel().len(), 2);
        let b = vec![q.from_i64(6), q.from_i64(12)];
        let x = solver.solve(&b).unwrap();
        // check A x = b
        for (row, want) in a.iter().zip(&b) {
            let mut acc = q.zero();
            for (aij, xj) in row.iter().zip(&x) {
                acc = q.add(&acc, &q.mul(aij, xj));
            }
            assert_eq!(&acc, want);
        }
        let bad = vec![q.from_i64(1), q.from_i64(0)];
        assert!(solver.solve(&bad).is_none());
    }

    #[test]
    fn integer_solve_detects_divisibility() {
        // 2x = 3 has no integer solution, 2x = 4 does
        let a = vec![vec![bi(2)]];
        let s = IntSolver::new(&a);
        assert!(s.solve(&[bi(3)]).is_none());
        assert_eq!(s.solve(&[bi(4)]).unwrap(), vec![bi(2)]);
    }

    #[test]
    fn integer_kernel_is_saturated() {
        // kernel of [1 2 3] contains (2, -1, 0), (3, 0, -1) up to basis change
        let a = vec![vec![bi(1), bi(2), bi(3)]];
        let k = IntSolver::new(&a).kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!((&v[0] + &v[1] * bi(2) + &v[2] * bi(3)).is_zero());
        }
    }

    #[test]
    fn saturation() {
        // row lattice spanned by (2, 0) saturates to (1, 0)
        let a = vec![vec![bi(2), bi(0)]];
        let sat = saturate_rows(&a);
        assert_eq!(sat.len(), 1);
        assert_eq!(sat[0][0].abs(), bi(1));
        assert!(sat[0][1].is_zero());
    }

    #[test]
    fn smith_factors() {
        let a = vec![vec![bi(2), bi(4)], vec![bi(6), bi(8)]];
        let f = smith_invariant_factors(&a);
        assert_eq!(f, vec![bi(2), bi(4)]);
        // diag(1, 2, 0) shape
        let b = vec![vec![bi(1), bi(0)], vec![bi(0), bi(2)], vec![bi(0), bi(0)]];
        assert_eq!(smith_invariant_factors(&b), vec![bi(1), bi(2)]);
    }
}
