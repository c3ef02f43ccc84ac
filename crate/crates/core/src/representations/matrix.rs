use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::QScalar;

/// Dense square matrix over [`QScalar`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMatrix {
    n: usize,
    data: Vec<QScalar>,
}

impl QMatrix {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            data: vec![QScalar::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.data[i * n + i] = QScalar::one();
        }
        m
    }

    pub fn diag(d: Vec<QScalar>) -> Self {
        let n = d.len();
        let mut m = Self::zero(n);
        for (i, x) in d.into_iter().enumerate() {
            m.data[i * n + i] = x;
        }
        m
    }

    /// Matrix unit `E_{rs}`.
    pub fn unit(n: usize, r: usize, s: usize) -> Self {
        let mut m = Self::zero(n);
        m.data[r * n + s] = QScalar::one();
        m
    }

    pub fn from_rows(rows: Vec<Vec<QScalar>>) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(Self {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, s: usize) -> &QScalar {
        &self.data[r * self.n + s]
    }

    pub fn set(&mut self, r: usize, s: usize, x: QScalar) {
        self.data[r * self.n + s] = x;
    }

    pub fn rows(&self) -> Vec<Vec<QScalar>> {
        self.data.chunks(self.n.max(1)).map(<[QScalar]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(QScalar::is_zero)
    }

    pub fn trace(&self) -> QScalar {
        let mut t = QScalar::zero();
        for i in 0..self.n {
            t += self.get(i, i);
        }
        t
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero(self.n);
        for r in 0..self.n {
            for s in 0..self.n {
                m.set(s, r, self.get(r, s).clone());
            }
        }
        m
    }

    pub fn scale(&self, x: &QScalar) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|a| a * x).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&QScalar) -> QScalar) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(self.n), |acc, _| &acc * self)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (a, b) = (self.n, other.n);
        let mut m = Self::zero(a * b);
        for i in 0..a {
            for j in 0..a {
                let x = self.get(i, j);
                if x.is_zero() {
                    continue;
                }
                for k in 0..b {
                    for l in 0..b {
                        let y = other.get(k, l);
                        if !y.is_zero() {
                            m.set(i * b + k, j * b + l, x * y);
                        }
                    }
                }
            }
        }
        m
    }

    /// Positions of nonzero entries.
    pub fn support(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for r in 0..self.n {
            for s in 0..self.n {
                if !self.get(r, s).is_zero() {
                    out.push((r, s));
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        self.support().into_iter().all(|(r, s)| r == s)
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut m = QMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        m.data[i * n + j] += &(a * b);
                    }
                }
            }
        }
        m
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.n, rhs.n);
        QMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.n, rhs.n);
        QMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        self.map(|a| -a)
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_and_trace() {
        let e = QMatrix::unit(2, 0, 1);
        let i = QMatrix::identity(2);
        let k = e.kron(&i);
        assert_eq!(k.dim(), 4);
        assert_eq!(k.support(), vec![(0, 2), (1, 3)]);
        assert!(k.trace().is_zero());
        assert_eq!(i.kron(&i).trace(), QScalar::from_int(4));
        assert!((&e * &e).is_zero());
    }
}
