//! Dense square matrices over the rationals.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::algebra_core::{fmt_q, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    n: usize,
    data: Vec<Q>,
}

impl Mat {
    pub fn zeros(n: usize) -> Mat {
        Mat { n, data: vec![Q::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Q::one();
        }
        m
    }

    /// Rows given explicitly; every row must have `rows.len()` entries.
    pub fn from_rows(rows: Vec<Vec<Q>>) -> Mat {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "square matrix expected");
        Mat { n, data: rows.into_iter().flatten().collect() }
    }

    /// The elementary matrix `f_ij`.
    pub fn unit(n: usize, i: usize, j: usize) -> Mat {
        let mut m = Mat::zeros(n);
        m.data[i * n + j] = Q::one();
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.n + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn trace(&self) -> Q {
        (0..self.n).map(|i| self.get(i, i).clone()).fold(Q::zero(), |a, b| a + b)
    }

    pub fn scale(&self, c: &Q) -> Mat {
        Mat { n: self.n, data: self.data.iter().map(|x| x * c).collect() }
    }

    /// `[self, other]`.
    pub fn commutator(&self, other: &Mat) -> Mat {
        self * other - other * self
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Mat> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Mat::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if piv != col {
                for k in 0..n {
                    a.data.swap(piv * n + k, col * n + k);
                    inv.data.swap(piv * n + k, col * n + k);
                }
            }
            let p = a.get(col, col).clone();
            for k in 0..n {
                a.data[col * n + k] = &a.data[col * n + k] / &p;
                inv.data[col * n + k] = &inv.data[col * n + k] / &p;
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                for k in 0..n {
                    let (x, y) = (&a.data[col * n + k] * &f, &inv.data[col * n + k] * &f);
                    a.data[r * n + k] -= x;
                    inv.data[r * n + k] -= y;
                }
            }
        }
        Some(inv)
    }

    /// Rows as `[[p/q, ...], ...]`.
    pub fn render(&self) -> String {
        let rows: Vec<String> = (0..self.n)
            .map(|i| format!("[{}]", (0..self.n).map(|j| fmt_q(self.get(i, j))).collect::<Vec<_>>().join(", ")))
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

impl<'a> Mul<&'a Mat> for &'a Mat {
    type Output = Mat;
    fn mul(self, o: &Mat) -> Mat {
        assert_eq!(self.n, o.n, "dimension mismatch");
        let n = self.n;
        let mut out = Mat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let x = &self.data[i * n + k];
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let y = &o.data[k * n + j];
                    if !y.is_zero() {
                        out.data[i * n + j] += x * y;
                    }
                }
            }
        }
        out
    }
}

impl Add for Mat {
    type Output = Mat;
    fn add(mut self, o: Mat) -> Mat {
        assert_eq!(self.n, o.n, "dimension mismatch");
        for (x, y) in self.data.iter_mut().zip(o.data) {
            *x += y;
        }
        self
    }
}

impl Sub for Mat {
    type Output = Mat;
    fn sub(self, o: Mat) -> Mat {
        self + (-o)
    }
}

impl Neg for Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        Mat { n: self.n, data: self.data.into_iter().map(|x| -x).collect() }
    }
}
