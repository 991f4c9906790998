//! Small dense complex matrices: products, LU solves and a cyclic Jacobi
//! eigensolver for Hermitian matrices.

use std::ops::{Index, IndexMut};

use crate::{Cplx, Error, Result};

/// Square complex matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Cplx>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix {
            n,
            data: vec![Cplx::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Cplx::new(1.0, 0.0);
        }
        m
    }

    /// Panics if the rows are ragged or not square.
    pub fn from_rows(rows: Vec<Vec<Cplx>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        CMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Cplx) -> Self {
        let data = (0..n * n).map(|k| f(k / n, k % n)).collect();
        CMatrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Vec<Cplx>> {
        self.data.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn mul(&self, rhs: &CMatrix) -> CMatrix {
        let n = self.n;
        CMatrix::from_fn(n, |i, j| (0..n).map(|k| self[(i, k)] * rhs[(k, j)]).sum())
    }

    pub fn mul_vec(&self, v: &[Cplx]) -> Vec<Cplx> {
        (0..self.n)
            .map(|i| (0..self.n).map(|k| self[(i, k)] * v[k]).sum())
            .collect()
    }

    pub fn scale(&self, c: Cplx) -> CMatrix {
        CMatrix {
            n: self.n,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    /// `max |M - M*|`, absolute.
    pub fn asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in i..self.n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `(M + M*) / 2`.
    pub fn symmetrized(&self) -> CMatrix {
        CMatrix::from_fn(self.n, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }

    /// Maximum absolute column sum.
    pub fn norm_1(&self) -> f64 {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// LU factorization with partial pivoting.
    pub fn lu(&self) -> Result<Lu> {
        let n = self.n;
        let mut a = self.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let scale = self.max_abs();
        for col in 0..n {
            let (piv, pmax) = (col..n)
                .map(|r| (r, a[(r, col)].norm()))
                .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pmax <= f64::EPSILON * n as f64 * scale || pmax == 0.0 {
                return Err(Error::SingularP);
            }
            if piv != col {
                for j in 0..n {
                    a.data.swap(piv * n + j, col * n + j);
                }
                perm.swap(piv, col);
            }
            let d = a[(col, col)];
            for r in col + 1..n {
                let f = a[(r, col)] / d;
                a[(r, col)] = f;
                for j in col + 1..n {
                    let v = a[(col, j)];
                    a[(r, j)] -= f * v;
                }
            }
        }
        Ok(Lu { lu: a, perm })
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Cplx;
    fn index(&self, (i, j): (usize, usize)) -> &Cplx {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Cplx {
        &mut self.data[i * self.n + j]
    }
}

/// Packed LU factors with the row permutation.
#[derive(Clone, Debug)]
pub struct Lu {
    lu: CMatrix,
    perm: Vec<usize>,
}

impl Lu {
    pub fn solve(&self, b: &[Cplx]) -> Vec<Cplx> {
        let n = self.lu.n;
        let mut x: Vec<Cplx> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for k in 0..i {
                let v = x[k];
                x[i] -= self.lu[(i, k)] * v;
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                let v = x[k];
                x[i] -= self.lu[(i, k)] * v;
            }
            x[i] /= self.lu[(i, i)];
        }
        x
    }

    pub fn inverse(&self) -> CMatrix {
        let n = self.lu.n;
        let mut inv = CMatrix::zeros(n);
        for j in 0..n {
            let mut e = vec![Cplx::new(0.0, 0.0); n];
            e[j] = Cplx::new(1.0, 0.0);
            for (i, v) in self.solve(&e).into_iter().enumerate() {
                inv[(i, j)] = v;
            }
        }
        inv
    }
}

/// Least-squares solution of `a x ≈ b` from the normal equations, with
/// iterative refinement starting at `start`. Returns `None` when the normal
/// matrix is singular or the refinement produces non-finite values.
pub fn least_squares(a: &[Vec<Cplx>], b: &[Cplx], start: &[Cplx]) -> Option<Vec<Cplx>> {
    let cols = start.len();
    let normal = CMatrix::from_fn(cols, |i, j| a.iter().map(|row| row[i].conj() * row[j]).sum());
    let lu = normal.lu().ok()?;
    let mut x = start.to_vec();
    for _ in 0..3 {
        let rhs: Vec<Cplx> = (0..cols)
            .map(|i| {
                a.iter()
                    .zip(b)
                    .map(|(row, bi)| row[i].conj() * (bi - row.iter().zip(&x).map(|(p, q)| p * q).sum::<Cplx>()))
                    .sum()
            })
            .collect();
        let dx = lu.solve(&rhs);
        if dx.iter().any(|v| !v.is_finite()) {
            return None;
        }
        for (xi, di) in x.iter_mut().zip(dx) {
            *xi += di;
        }
    }
    Some(x)
}

/// Sum of squared residuals of `a x - b`.
pub fn residual_sq(a: &[Vec<Cplx>], b: &[Cplx], x: &[Cplx]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(row, bi)| (row.iter().zip(x).map(|(p, q)| p * q).sum::<Cplx>() - bi).norm_sqr())
        .sum()
}

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations, ascending.
/// Only the Hermitian part of the input is used.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let n = m.n;
    let mut h = m.symmetrized();
    let total = h.data.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    if total == 0.0 {
        return vec![0.0; n];
    }
    let target = f64::EPSILON * total;
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| h[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= target {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut h, p, q, target / n as f64);
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| h[(i, i)].re).collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev
}

fn rotate(h: &mut CMatrix, p: usize, q: usize, skip_below: f64) {
    let n = h.n;
    let hpq = h[(p, q)];
    let mag = hpq.norm();
    if mag <= skip_below {
        return;
    }
    // Phase making the (p, q) entry real, then a real symmetric rotation.
    let phase = hpq / mag;
    let app = h[(p, p)].re;
    let aqq = h[(q, q)].re;
    let theta = (aqq - app) / (2.0 * mag);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    // W = diag(1, conj(phase)) * [[c, s], [-s, c]] on the (p, q) plane.
    let dq = phase.conj();
    let wpp = Cplx::new(c, 0.0);
    let wpq = Cplx::new(s, 0.0);
    let wqp = dq * -s;
    let wqq = dq * c;
    for k in 0..n {
        let x = h[(k, p)];
        let y = h[(k, q)];
        h[(k, p)] = x * wpp + y * wqp;
        h[(k, q)] = x * wpq + y * wqq;
    }
    for k in 0..n {
        let x = h[(p, k)];
        let y = h[(q, k)];
        h[(p, k)] = wpp.conj() * x + wqp.conj() * y;
        h[(q, k)] = wpq.conj() * x + wqq.conj() * y;
    }
    h[(p, q)] = Cplx::new(0.0, 0.0);
    h[(q, p)] = Cplx::new(0.0, 0.0);
    h[(p, p)] = Cplx::new(h[(p, p)].re, 0.0);
    h[(q, q)] = Cplx::new(h[(q, q)].re, 0.0);
}
