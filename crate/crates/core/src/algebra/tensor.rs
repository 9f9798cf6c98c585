//! Elements of U(g)^⊗n as sums of pure tensors of words, and their
//! evaluation on ordered module tuples.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::linalg::{Field, Matrix, Rational, RationalMatrix};

use super::module::ModuleRep;
use super::ncpoly::{fmt_word, NCPolynomial, Word};
use super::AlgebraError;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TensorElement {
    legs: usize,
    terms: BTreeMap<Vec<Word>, Rational>,
}

impl TensorElement {
    pub fn zero(legs: usize) -> Self {
        TensorElement {
            legs,
            terms: BTreeMap::new(),
        }
    }

    /// `c · p_1 ⊗ … ⊗ p_n`, expanded into words.
    pub fn pure(c: Rational, factors: Vec<NCPolynomial>) -> Self {
        let mut out = Self::zero(factors.len());
        let mut partial: Vec<(Vec<Word>, Rational)> = vec![(Vec::new(), c)];
        for p in &factors {
            let mut next = Vec::new();
            for (words, coeff) in &partial {
                for (w, x) in p.terms() {
                    let mut ws = words.clone();
                    ws.push(w.clone());
                    next.push((ws, coeff * x));
                }
            }
            partial = next;
        }
        for (ws, c) in partial {
            out.add_term(ws, &c);
        }
        out
    }

    /// `I ⊗ … ⊗ I` with `legs` factors.
    pub fn identity(legs: usize) -> Self {
        Self::pure(Rational::one(), vec![NCPolynomial::identity(); legs])
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Word>, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, words: Vec<Word>, c: &Rational) {
        debug_assert_eq!(words.len(), self.legs);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(words.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&words);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.legs, other.legs, "leg count mismatch");
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.legs);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), &(x * c));
        }
        out
    }

    /// Leg-wise product in the algebra U(g)^⊗n.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.legs, other.legs, "leg count mismatch");
        let mut out = Self::zero(self.legs);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let words = w1
                    .iter()
                    .zip(w2)
                    .map(|(a, b)| {
                        let mut w = a.clone();
                        w.extend_from_slice(b);
                        w
                    })
                    .collect();
                out.add_term(words, &(c1 * c2));
            }
        }
        out
    }

    /// `a ⊗ b` as an element with `self.legs + other.legs` legs.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.legs + other.legs);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut ws = w1.clone();
                ws.extend(w2.iter().cloned());
                out.add_term(ws, &(c1 * c2));
            }
        }
        out
    }

    /// Applies Δ to leg `i`, producing `legs + 1` legs.
    pub fn coproduct_leg(&self, i: usize) -> Self {
        assert!(i < self.legs, "leg {i} out of range");
        let mut out = Self::zero(self.legs + 1);
        for (ws, c) in &self.terms {
            let split = NCPolynomial::monomial(Rational::one(), ws[i].clone()).coproduct();
            for (pair, d) in split.terms() {
                let mut next = ws[..i].to_vec();
                next.extend(pair.iter().cloned());
                next.extend(ws[i + 1..].iter().cloned());
                out.add_term(next, &(c * d));
            }
        }
        out
    }

    /// Inserts an identity factor so that it becomes leg `pos`.
    pub fn insert_identity_leg(&self, pos: usize) -> Self {
        assert!(pos <= self.legs);
        let mut out = Self::zero(self.legs + 1);
        for (ws, c) in &self.terms {
            let mut next = ws.clone();
            next.insert(pos, Vec::new());
            out.add_term(next, c);
        }
        out
    }

    /// Element-to-slot leg permutation: component `i` moves to leg `perm[i]`.
    /// `X_{312}` is `permute_legs(&[2, 0, 1])`.
    pub fn permute_legs(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.legs);
        let mut out = Self::zero(self.legs);
        for (ws, c) in &self.terms {
            let mut next = vec![Vec::new(); self.legs];
            for (i, w) in ws.iter().enumerate() {
                next[perm[i]] = w.clone();
            }
            out.add_term(next, c);
        }
        out
    }

    /// Swaps the two legs of a two-leg element (`Δ^T` from `Δ`).
    pub fn flip(&self) -> Self {
        assert_eq!(self.legs, 2);
        self.permute_legs(&[1, 0])
    }

    /// Applies S to every leg in `legs`.
    pub fn antipode_legs(&self, legs: &[usize]) -> Self {
        let mut out = Self::zero(self.legs);
        for (ws, c) in &self.terms {
            let mut sign = c.clone();
            let mut next = ws.clone();
            for &l in legs {
                next[l].reverse();
                if next[l].len() % 2 == 1 {
                    sign = -sign;
                }
            }
            out.add_term(next, &sign);
        }
        out
    }

    /// Multiplies the legs together in order: `a ⊗ b ↦ ab`.
    pub fn multiply_legs(&self) -> NCPolynomial {
        NCPolynomial::from_terms(self.terms.iter().map(|(ws, c)| (ws.concat(), c.clone())))
    }

    /// `Σ c · π_1(w_1) ⊗ … ⊗ π_n(w_n)` on the given modules.
    pub fn evaluate_legs(&self, modules: &[&ModuleRep]) -> Result<TensorOperator<Rational>, AlgebraError> {
        if modules.len() != self.legs {
            return Err(AlgebraError::LegMismatch {
                legs: self.legs,
                modules: modules.len(),
            });
        }
        for m in &modules[1..] {
            if m.algebra() != modules[0].algebra() {
                return Err(AlgebraError::AlgebraMismatch);
            }
        }
        let leg_dims: Vec<usize> = modules.iter().map(|m| m.dim()).collect();
        let total: usize = leg_dims.iter().product();
        let mut caches: Vec<HashMap<&Word, RationalMatrix>> = vec![HashMap::new(); self.legs];
        for ws in self.terms.keys() {
            for (l, w) in ws.iter().enumerate() {
                if !caches[l].contains_key(w) {
                    let m = modules[l].word_matrix(w)?;
                    caches[l].insert(w, m);
                }
            }
        }
        // group by the leading legs so shared prefixes are multiplied once
        let mut acc = RationalMatrix::zeros(total, total);
        let mut prefix_cache: HashMap<&[Word], RationalMatrix> = HashMap::new();
        for (ws, c) in &self.terms {
            let last = self.legs - 1;
            let prefix = &ws[..last];
            if !prefix_cache.contains_key(prefix) {
                let mut m = RationalMatrix::identity(1);
                for (l, w) in prefix.iter().enumerate() {
                    m = m.kron(&caches[l][w]);
                }
                prefix_cache.insert(prefix, m);
            }
            let term = prefix_cache[prefix].kron(&caches[last][&ws[last]]);
            acc.add_scaled(c, &term).expect("shape fixed by leg dims");
        }
        Ok(TensorOperator::new(leg_dims, acc))
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> TensorDisplay<'a> {
        TensorDisplay { t: self, names }
    }
}

pub struct TensorDisplay<'a> {
    t: &'a TensorElement,
    names: &'a [String],
}

impl fmt::Display for TensorDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.t.is_zero() {
            return write!(f, "0");
        }
        for (idx, (ws, c)) in self.t.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{}*", a)?;
            }
            let legs: Vec<String> = ws.iter().map(|w| fmt_word(w, self.names)).collect();
            write!(f, "{}", legs.join("⊗"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let max = self.terms.keys().flatten().flatten().copied().max().unwrap_or(0);
        let names: Vec<String> = (0..=max).map(|i| format!("x{i}")).collect();
        write!(f, "TensorElement[{}]({})", self.legs, self.display(&names))
    }
}

/// A square matrix on `⊗ legs`, tagged with the leg dimensions.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorOperator<F: Field> {
    pub leg_dims: Vec<usize>,
    pub matrix: Matrix<F>,
}

impl<F: Field> TensorOperator<F> {
    pub fn new(leg_dims: Vec<usize>, matrix: Matrix<F>) -> Self {
        let n: usize = leg_dims.iter().product();
        assert!(matrix.rows() == n && matrix.cols() == n, "operator size must match leg dimensions");
        TensorOperator { leg_dims, matrix }
    }

    pub fn identity(leg_dims: Vec<usize>) -> Self {
        let n = leg_dims.iter().product();
        Self::new(leg_dims, Matrix::identity(n))
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }
}

impl TensorOperator<Rational> {
    pub fn embed<G: Field>(&self) -> TensorOperator<G> {
        TensorOperator {
            leg_dims: self.leg_dims.clone(),
            matrix: self.matrix.embed(),
        }
    }
}
