//! Univariate polynomials over Q and the characteristic polynomial.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::{Field, Rational};
use super::matrix::{Matrix, RationalMatrix};
use super::LinalgError;

/// Coefficients in ascending degree; trailing zeros are trimmed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x - root`
    pub fn linear(root: &Rational) -> Self {
        Self::new(vec![-root, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Horner evaluation at a square matrix embedded in `F`.
    pub fn eval_matrix<F: Field>(&self, m: &Matrix<F>) -> Result<Matrix<F>, LinalgError> {
        if !m.is_square() {
            return Err(LinalgError::NotSquare(m.rows(), m.cols()));
        }
        let n = m.rows();
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.matmul(m)?;
            if !c.is_zero() {
                acc = acc.add(&Matrix::scalar(n, F::from_rational(c)))?;
            }
        }
        Ok(acc)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = Rational::zero();
        Self::new(
            (0..len)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        let lead = divisor.leading();
        if self.is_zero() || self.degree() < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lead = self.leading();
        self.scale(&lead.recip())
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Square-free part (product of distinct monic irreducible factors).
    pub fn squarefree(&self) -> Self {
        if self.degree() == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Scaled copy with coprime integer coefficients and positive leading term.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().is_some_and(|c| c.is_negative()) {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| c / &g * &sign).collect()
    }

    /// Lagrange basis polynomial for `node` over `nodes`:
    /// equals 1 at `node`, 0 at every other node.
    pub fn lagrange_basis(node: &Rational, nodes: &[Rational]) -> Self {
        let mut p = Self::constant(Rational::one());
        for mu in nodes {
            if mu == node {
                continue;
            }
            p = p.mul(&Self::linear(mu)).scale(&(node - mu).recip());
        }
        p
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            first = false;
            let a = c.abs();
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{}", a)?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{}", if show_coeff { "*" } else { "" }, i)?,
            }
        }
        Ok(())
    }
}

/// Characteristic polynomial det(xI - M), monic, ascending coefficients.
///
/// Reduces `M` to upper Hessenberg form by exact similarity transforms and
/// then runs the standard three-term Hessenberg determinant recurrence.
pub fn charpoly(m: &RationalMatrix) -> Result<UniPoly, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare(m.rows(), m.cols()));
    }
    let n = m.rows();
    let mut h: Vec<Vec<Rational>> = m.to_rows();

    for col in 0..n.saturating_sub(2) {
        let pivot_row = col + 1;
        let Some(p) = (pivot_row..n).find(|&i| !h[i][col].is_zero()) else {
            continue;
        };
        if p != pivot_row {
            h.swap(p, pivot_row);
            for row in h.iter_mut() {
                row.swap(p, pivot_row);
            }
        }
        let t = h[pivot_row][col].clone();
        for i in pivot_row + 1..n {
            if h[i][col].is_zero() {
                continue;
            }
            let u = &h[i][col] / &t;
            // row_i -= u * row_pivot
            for j in 0..n {
                if !h[pivot_row][j].is_zero() {
                    let delta = &u * &h[pivot_row][j];
                    h[i][j] -= delta;
                }
            }
            // col_pivot += u * col_i
            for row in h.iter_mut() {
                if !row[i].is_zero() {
                    let delta = &u * &row[i];
                    row[pivot_row] += delta;
                }
            }
        }
    }

    // p[k] = charpoly of the leading k x k block.
    let mut p: Vec<UniPoly> = Vec::with_capacity(n + 1);
    p.push(UniPoly::constant(Rational::one()));
    for k in 0..n {
        let mut next = p[k].mul(&UniPoly::linear(&h[k][k]));
        let mut sub_prod = Rational::one();
        for i in (0..k).rev() {
            sub_prod *= &h[i + 1][i];
            if sub_prod.is_zero() {
                break;
            }
            let c = &sub_prod * &h[i][k];
            if !c.is_zero() {
                next = next.add(&p[i].scale(&-c));
            }
        }
        p.push(next);
    }
    Ok(p.pop().expect("n + 1 entries"))
}
