//! Integer-spectrum eigenprojectors and the functional calculus `γ^M`.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{format_rational, Field, Rational};
use super::matrix::{Matrix, RationalMatrix};
use super::poly::{charpoly, UniPoly};
use super::LinalgError;

/// Eigenvalues (distinct, ascending) with matching eigenprojectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<BigInt>,
    pub multiplicities: Vec<usize>,
    pub projectors: Vec<RationalMatrix>,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.projectors.first().map_or(0, |p| p.rows())
    }

    /// `Σ f(λ) P_λ` embedded in `F`.
    pub fn apply<F: Field>(&self, f: impl Fn(&BigInt) -> Option<F>) -> Option<Matrix<F>> {
        let n = self.dim();
        let mut acc = Matrix::zeros(n, n);
        for (lambda, p) in self.eigenvalues.iter().zip(&self.projectors) {
            let c = f(lambda)?;
            acc.add_scaled(&c, &p.embed()).expect("projectors share a shape");
        }
        Some(acc)
    }
}

/// The deformation parameter: an exact nonzero rational or a complex double.
#[derive(Clone, Debug, PartialEq)]
pub enum GammaValue {
    Exact(Rational),
    Complex(Complex64),
}

impl GammaValue {
    pub fn minus_one() -> Self {
        GammaValue::Exact(-Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            GammaValue::Exact(q) => q.is_zero(),
            GammaValue::Complex(c) => c.re == 0.0 && c.im == 0.0,
        }
    }
}

impl fmt::Display for GammaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GammaValue::Exact(q) => write!(f, "{}", format_rational(q)),
            GammaValue::Complex(c) => write!(f, "({}, {})", c.re, c.im),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum GammaMatrix {
    Exact(RationalMatrix),
    Complex(Matrix<Complex64>),
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum SpectrumError {
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("non-integer eigenvalue{}", witness_text(.witness, .residual))]
    NonIntegerSpectrum {
        witness: Option<Rational>,
        residual: UniPoly,
    },
    #[error("matrix is not semisimple: minimal polynomial has a repeated root")]
    NonSemisimple,
    #[error("gamma must be nonzero")]
    ZeroGamma,
    #[error("eigenvalue exponent {0} too large for the functional calculus")]
    ExponentOverflow(BigInt),
}

fn witness_text(witness: &Option<Rational>, residual: &UniPoly) -> String {
    match witness {
        Some(w) => format!(" {}", format_rational(w)),
        None => format!("s (irrational or unresolved roots of {})", residual),
    }
}

impl SpectrumError {
    /// Stable identifier used in reports.
    pub fn code(&self) -> &'static str {
        match self {
            SpectrumError::NotSquare(..) => "NotSquare",
            SpectrumError::NonIntegerSpectrum { .. } => "NonIntegerSpectrum",
            SpectrumError::NonSemisimple => "NonSemisimple",
            SpectrumError::ZeroGamma => "ZeroGamma",
            SpectrumError::ExponentOverflow(_) => "ExponentOverflow",
        }
    }
}

impl From<LinalgError> for SpectrumError {
    fn from(e: LinalgError) -> Self {
        match e {
            LinalgError::NotSquare(r, c) => SpectrumError::NotSquare(r, c),
            other => panic!("unexpected shape error inside spectral calculus: {other}"),
        }
    }
}

/// Ceiling of the largest absolute row sum; bounds |λ| for every eigenvalue.
pub fn eigenvalue_bound(m: &RationalMatrix) -> BigInt {
    let mut best = Rational::zero();
    for i in 0..m.rows() {
        let s: Rational = m.row(i).iter().map(|x| x.abs()).sum();
        if s > best {
            best = s;
        }
    }
    best.ceil().to_integer()
}

/// Finds every integer root of `p` in `[-bound, bound]` with multiplicity,
/// returning the leftover factor. Candidates are screened on the square-free
/// part so each probe costs O(number of distinct roots).
fn integer_roots(p: &UniPoly, bound: &BigInt) -> (Vec<(BigInt, usize)>, UniPoly) {
    let sf = p.squarefree();
    let mut rest = p.clone();
    let mut roots = Vec::new();
    let mut found = 0;
    let mut candidate = -bound.clone();
    while &candidate <= bound && found < sf.degree() {
        let r = Rational::from_integer(candidate.clone());
        if sf.eval(&r).is_zero() {
            found += 1;
            let mut mult = 0;
            while rest.degree() > 0 && rest.eval(&r).is_zero() {
                rest = rest.div_rem(&UniPoly::linear(&r)).0;
                mult += 1;
            }
            roots.push((candidate.clone(), mult));
        }
        candidate += 1;
    }
    (roots, rest)
}

const DIVISOR_SEARCH_LIMIT: u64 = 1_000_000_000_000;

fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > DIVISOR_SEARCH_LIMIT {
        return None;
    }
    let mut ds = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            ds.push(BigInt::from(d));
            if d * d != n {
                ds.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    ds.sort();
    Some(ds)
}

/// Rational roots of `p` by the rational-root theorem on its square-free part.
/// `None` when the coefficients are too large to enumerate divisors.
pub fn rational_roots(p: &UniPoly) -> Option<Vec<Rational>> {
    if p.degree() == 0 {
        return Some(vec![]);
    }
    let sf = p.squarefree();
    let mut coeffs = sf.primitive_integer();
    let mut roots = Vec::new();
    if coeffs[0].is_zero() {
        roots.push(Rational::zero());
        let shift = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
        coeffs.drain(..shift);
    }
    if coeffs.len() <= 1 {
        return Some(roots);
    }
    let reduced = UniPoly::new(coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect());
    let nums = small_divisors(&coeffs[0])?;
    let dens = small_divisors(coeffs.last().expect("nonempty"))?;
    for q in &dens {
        for pnum in &nums {
            if pnum.gcd(q) != BigInt::one() {
                continue;
            }
            for sign in [1, -1] {
                let r = Rational::new(pnum * BigInt::from(sign), q.clone());
                if reduced.eval(&r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    Some(roots)
}

/// Full rational spectrum with algebraic multiplicities, when every root of the
/// characteristic polynomial is rational.
pub fn rational_spectrum(m: &RationalMatrix) -> Result<Option<Vec<(Rational, usize)>>, LinalgError> {
    if let Some(diag) = diagonal_spectrum(m) {
        return Ok(Some(diag));
    }
    let p = charpoly(m)?;
    let Some(roots) = rational_roots(&p) else {
        return Ok(None);
    };
    let mut rest = p;
    let mut out = Vec::new();
    for r in roots {
        let mut mult = 0;
        while rest.degree() > 0 && rest.eval(&r).is_zero() {
            rest = rest.div_rem(&UniPoly::linear(&r)).0;
            mult += 1;
        }
        out.push((r, mult));
    }
    if rest.degree() > 0 {
        return Ok(None);
    }
    Ok(Some(out))
}

fn diagonal_spectrum(m: &RationalMatrix) -> Option<Vec<(Rational, usize)>> {
    if !m.is_diagonal() {
        return None;
    }
    let mut vals = m.diagonal_entries();
    vals.sort();
    let mut out: Vec<(Rational, usize)> = Vec::new();
    for v in vals {
        match out.last_mut() {
            Some((last, n)) if *last == v => *n += 1,
            _ => out.push((v, 1)),
        }
    }
    Some(out)
}

/// Integer eigenvalues and eigenprojectors of a semisimple matrix.
///
/// Roots are found by an integer search of the characteristic polynomial,
/// bounded by the row-sum bound. Projectors are the Lagrange products
/// `P_λ = Π_{μ≠λ} (M − μI)/(λ − μ)`, and `Π_λ (M − λI) = 0` is checked.
pub fn integer_spectrum(m: &RationalMatrix) -> Result<Spectrum, SpectrumError> {
    if !m.is_square() {
        return Err(SpectrumError::NotSquare(m.rows(), m.cols()));
    }
    let n = m.rows();
    if m.is_diagonal() {
        return diagonal_integer_spectrum(m);
    }
    let p = charpoly(m)?;
    let bound = eigenvalue_bound(m);
    let (roots, rest) = integer_roots(&p, &bound);
    if rest.degree() > 0 {
        let witness = rational_roots(&rest)
            .and_then(|rs| rs.into_iter().next());
        return Err(SpectrumError::NonIntegerSpectrum {
            witness,
            residual: rest,
        });
    }
    let eigenvalues: Vec<BigInt> = roots.iter().map(|(r, _)| r.clone()).collect();
    let multiplicities: Vec<usize> = roots.iter().map(|(_, k)| *k).collect();

    // shifted[i] = M - λ_i I
    let shifted: Vec<RationalMatrix> = eigenvalues
        .iter()
        .map(|l| {
            m.sub(&RationalMatrix::scalar(n, Rational::from_integer(l.clone())))
                .expect("square")
        })
        .collect();
    let r = shifted.len();
    // prefix[i] = Π_{j<i} shifted[j], suffix[i] = Π_{j>i} shifted[j]
    let mut prefix = Vec::with_capacity(r + 1);
    prefix.push(RationalMatrix::identity(n));
    for s in &shifted {
        let next = prefix.last().expect("nonempty").matmul(s)?;
        prefix.push(next);
    }
    if !prefix[r].is_zero() {
        return Err(SpectrumError::NonSemisimple);
    }
    let mut suffix = vec![RationalMatrix::identity(n); r];
    for i in (0..r.saturating_sub(1)).rev() {
        suffix[i] = shifted[i + 1].matmul(&suffix[i + 1])?;
    }
    let mut projectors = Vec::with_capacity(r);
    for i in 0..r {
        let denom: BigInt = eigenvalues
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, mu)| &eigenvalues[i] - mu)
            .product();
        let unnormalized = prefix[i].matmul(&suffix[i])?;
        projectors.push(unnormalized.scale(&Rational::from_integer(denom).recip()));
    }
    Ok(Spectrum {
        eigenvalues,
        multiplicities,
        projectors,
    })
}

fn diagonal_integer_spectrum(m: &RationalMatrix) -> Result<Spectrum, SpectrumError> {
    let n = m.rows();
    let diag = m.diagonal_entries();
    if let Some(bad) = diag.iter().find(|d| !d.is_integer()) {
        let residual = UniPoly::linear(bad);
        return Err(SpectrumError::NonIntegerSpectrum {
            witness: Some(bad.clone()),
            residual,
        });
    }
    let mut eigenvalues: Vec<BigInt> = diag.iter().map(|d| d.to_integer()).collect();
    eigenvalues.sort();
    eigenvalues.dedup();
    let mut multiplicities = Vec::new();
    let mut projectors = Vec::new();
    for l in &eigenvalues {
        let lq = Rational::from_integer(l.clone());
        let ones: Vec<Rational> = diag
            .iter()
            .map(|d| if *d == lq { Rational::one() } else { Rational::zero() })
            .collect();
        multiplicities.push(ones.iter().filter(|x| x.is_one()).count());
        projectors.push(RationalMatrix::diagonal(&ones));
    }
    debug_assert_eq!(multiplicities.iter().sum::<usize>(), n);
    Ok(Spectrum {
        eigenvalues,
        multiplicities,
        projectors,
    })
}

/// `Σ_λ γ^λ P_λ` over an arbitrary field.
pub fn gamma_power_in<F: Field>(m: &RationalMatrix, gamma: &F) -> Result<Matrix<F>, SpectrumError> {
    if gamma.is_zero() {
        return Err(SpectrumError::ZeroGamma);
    }
    let spectrum = integer_spectrum(m)?;
    gamma_power_from_spectrum(&spectrum, gamma)
}

pub fn gamma_power_from_spectrum<F: Field>(
    spectrum: &Spectrum,
    gamma: &F,
) -> Result<Matrix<F>, SpectrumError> {
    if gamma.is_zero() {
        return Err(SpectrumError::ZeroGamma);
    }
    for l in &spectrum.eigenvalues {
        if l.abs() > BigInt::from(1u64 << 20) && !(gamma.approx_eq(&F::one()) || gamma.approx_eq(&F::one().negated())) {
            return Err(SpectrumError::ExponentOverflow(l.clone()));
        }
    }
    Ok(spectrum
        .apply(|l| gamma.powi(&reduce_exponent(gamma, l)))
        .expect("gamma is nonzero"))
}

// (±1)^λ only depends on the parity of λ.
fn reduce_exponent<F: Field>(gamma: &F, l: &BigInt) -> BigInt {
    if gamma.approx_eq(&F::one()) {
        BigInt::zero()
    } else if gamma.approx_eq(&F::one().negated()) {
        l.mod_floor(&BigInt::from(2))
    } else {
        l.clone()
    }
}

/// `γ^M` for a matrix with integer semisimple spectrum.
pub fn gamma_power(m: &RationalMatrix, gamma: &GammaValue) -> Result<GammaMatrix, SpectrumError> {
    match gamma {
        GammaValue::Exact(q) => Ok(GammaMatrix::Exact(gamma_power_in(m, q)?)),
        GammaValue::Complex(c) => Ok(GammaMatrix::Complex(gamma_power_in(m, c)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::field::{int, rat};

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
    }

    fn big(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn diag_spectrum() {
        let s = integer_spectrum(&RationalMatrix::diagonal(&[int(2), int(2), int(5)])).unwrap();
        assert_eq!(s.eigenvalues, big(&[2, 5]));
        assert_eq!(s.projectors[0], RationalMatrix::diagonal(&[int(1), int(1), int(0)]));
        assert_eq!(s.projectors[1], RationalMatrix::diagonal(&[int(0), int(0), int(1)]));
    }

    #[test]
    fn swap_spectrum() {
        let a = m(&[&[0, 1], &[1, 0]]);
        let s = integer_spectrum(&a).unwrap();
        assert_eq!(s.eigenvalues, big(&[-1, 1]));
        let half = rat(1, 2);
        let id = RationalMatrix::identity(2);
        assert_eq!(s.projectors[0], id.sub(&a).unwrap().scale(&half));
        assert_eq!(s.projectors[1], id.add(&a).unwrap().scale(&half));
    }

    #[test]
    fn non_integer_scalar_reports_witness() {
        let a = RationalMatrix::scalar(2, rat(3, 8));
        match integer_spectrum(&a) {
            Err(SpectrumError::NonIntegerSpectrum { witness, .. }) => assert_eq!(witness, Some(rat(3, 8))),
            other => panic!("unexpected {other:?}"),
        }
        // same through the charpoly path (non-diagonal similar matrix)
        let b = m(&[&[1, 1], &[0, 1]]).scale(&rat(1, 1));
        let conj = b.inverse().unwrap().matmul(&RationalMatrix::diagonal(&[rat(3, 8), int(2)])).unwrap().matmul(&b).unwrap();
        match integer_spectrum(&conj) {
            Err(SpectrumError::NonIntegerSpectrum { witness, .. }) => assert_eq!(witness, Some(rat(3, 8))),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn jordan_block_is_non_semisimple() {
        let j = m(&[&[1, 1], &[0, 1]]);
        assert_eq!(integer_spectrum(&j), Err(SpectrumError::NonSemisimple));
    }

    #[test]
    fn irrational_eigenvalues() {
        let a = m(&[&[0, 2], &[1, 0]]); // x^2 - 2
        match integer_spectrum(&a) {
            Err(SpectrumError::NonIntegerSpectrum { witness: None, residual }) => {
                assert_eq!(residual.degree(), 2)
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn gamma_power_examples() {
        let minus_one = int(-1);
        assert!(gamma_power_in(&RationalMatrix::diagonal(&[int(2), int(4)]), &minus_one)
            .unwrap()
            .is_identity());
        // eigenvalues ±1 are both odd, so (-1)^M = -I (exp(iπM) = cos(π)I + i sin(π)M)
        let swap = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(gamma_power_in(&swap, &minus_one).unwrap(), RationalMatrix::scalar(2, int(-1)));
        assert_eq!(
            gamma_power_in(&RationalMatrix::diagonal(&[int(1), int(-1)]), &int(2)).unwrap(),
            RationalMatrix::diagonal(&[int(2), rat(1, 2)])
        );
        assert_eq!(gamma_power_in(&swap, &int(0)), Err(SpectrumError::ZeroGamma));
    }

    #[test]
    fn complex_gamma_power() {
        let g = Complex64::new(0.0, 1.0);
        let out = gamma_power_in(&RationalMatrix::diagonal(&[int(1), int(2)]), &g).unwrap();
        assert!(out.get(0, 0).approx_eq(&Complex64::new(0.0, 1.0)));
        assert!(out.get(1, 1).approx_eq(&Complex64::new(-1.0, 0.0)));
    }

    #[test]
    fn rational_spectrum_with_multiplicity() {
        let a = m(&[&[0, 1], &[1, 0]]).scale(&rat(1, 4));
        let spec = rational_spectrum(&a).unwrap().unwrap();
        assert_eq!(spec, vec![(rat(-1, 4), 1), (rat(1, 4), 1)]);
    }
}
