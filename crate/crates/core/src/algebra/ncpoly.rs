//! Elements of U(g) as noncommutative polynomials in the basis, with the
//! Hopf maps Δ, ε, S. No PBW normal ordering is applied: equality in U(g)
//! is only ever decided after evaluation on modules.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::linalg::{Matrix, Rational, RationalMatrix};

use super::module::ModuleRep;
use super::tensor::TensorElement;
use super::AlgebraError;

/// A word in the basis generators; the empty word is the unit `I`.
pub type Word = Vec<usize>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NCPolynomial {
    terms: BTreeMap<Word, Rational>,
}

impl NCPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::scalar(Rational::one())
    }

    pub fn scalar(c: Rational) -> Self {
        Self::monomial(c, Vec::new())
    }

    pub fn generator(i: usize) -> Self {
        Self::monomial(Rational::one(), vec![i])
    }

    pub fn monomial(c: Rational, word: Word) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(word, c);
        }
        NCPolynomial { terms }
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Word, Rational)>) -> Self {
        let mut p = Self::zero();
        for (w, c) in iter {
            p.add_term(w, &c);
        }
        p
    }

    fn add_term(&mut self, word: Word, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(word).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            // re-borrow to remove the cancelled word
            let zeroed: Vec<Word> = self.terms.iter().filter(|(_, v)| v.is_zero()).map(|(k, _)| k.clone()).collect();
            for k in zeroed {
                self.terms.remove(&k);
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Word, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.terms.keys().flat_map(|w| w.iter().copied()).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        NCPolynomial {
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, &(c1 * c2));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::identity(), |acc, _| acc.mul(self))
    }

    /// Counit: the coefficient of the empty word.
    pub fn counit(&self) -> Rational {
        self.terms.get(&Vec::new()).cloned().unwrap_or_else(Rational::zero)
    }

    /// Antipode: reverses each word and negates each generator.
    pub fn antipode(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| {
            let sign = if w.len() % 2 == 1 { -c } else { c.clone() };
            (w.iter().rev().copied().collect(), sign)
        }))
    }

    /// S⁻¹; since S² = id on U(g) this is the same reversal.
    pub fn antipode_inverse(&self) -> Self {
        self.antipode()
    }

    /// Δ extended multiplicatively from Δ(x) = x⊗I + I⊗x: a word maps to the
    /// sum over all ways of splitting its letters into two ordered subwords.
    pub fn coproduct(&self) -> TensorElement {
        let mut out = TensorElement::zero(2);
        for (w, c) in &self.terms {
            for (left, right) in word_coproduct(w) {
                out.add_term(vec![left, right], c);
            }
        }
        out
    }

    /// Matrix of the action on `module`: words map to matrix products.
    pub fn evaluate(&self, module: &ModuleRep) -> Result<RationalMatrix, AlgebraError> {
        let n = module.dim();
        let mut acc = RationalMatrix::zeros(n, n);
        for (w, c) in &self.terms {
            let m = module.word_matrix(w)?;
            acc.add_scaled(c, &m).expect("same shape");
        }
        Ok(acc)
    }

    /// Commutative evaluation at scalar values of the generators (used by
    /// one-dimensional oracles).
    pub fn evaluate_scalar(&self, values: &[Rational]) -> Result<Rational, AlgebraError> {
        let mut acc = Rational::zero();
        for (w, c) in &self.terms {
            let mut term = c.clone();
            for &g in w {
                term *= values.get(g).ok_or(AlgebraError::UnknownSymbol(g))?;
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Display with generator names. The output parses back to an equal
    /// polynomial.
    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

/// All splittings of a word into (subword, complementary subword).
fn word_coproduct(w: &[usize]) -> Vec<(Word, Word)> {
    let mut out = vec![(Vec::new(), Vec::new())];
    for &g in w {
        let mut next = Vec::with_capacity(out.len() * 2);
        for (l, r) in out {
            let mut l2 = l.clone();
            l2.push(g);
            next.push((l2, r.clone()));
            let mut r2 = r;
            r2.push(g);
            next.push((l, r2));
        }
        out = next;
    }
    out
}

pub struct PolyDisplay<'a> {
    poly: &'a NCPolynomial,
    names: &'a [String],
}

pub(crate) fn fmt_word(w: &[usize], names: &[String]) -> String {
    if w.is_empty() {
        return "I".into();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        let name = names.get(w[i]).cloned().unwrap_or_else(|| format!("x{}", w[i]));
        if j - i == 1 {
            parts.push(name);
        } else {
            parts.push(format!("{}^{}", name, j - i));
        }
        i = j;
    }
    parts.join("*")
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (idx, (w, c)) in self.poly.terms.iter().enumerate() {
            let a = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            if w.is_empty() {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "{}", fmt_word(w, self.names))?;
            } else {
                write!(f, "{}*{}", a, fmt_word(w, self.names))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..=self.max_generator().unwrap_or(0)).map(|i| format!("x{i}")).collect();
        write!(f, "NCPolynomial({})", self.display(&names))
    }
}

/// Matrix of a word acting on a module of dimension `n` given generator actions.
pub(crate) fn word_product(actions: &[RationalMatrix], w: &[usize], n: usize) -> Result<RationalMatrix, AlgebraError> {
    let mut acc: Option<RationalMatrix> = None;
    for &g in w {
        let m = actions.get(g).ok_or(AlgebraError::UnknownSymbol(g))?;
        acc = Some(match acc {
            None => m.clone(),
            Some(a) => a.matmul(m).expect("square actions"),
        });
    }
    Ok(acc.unwrap_or_else(|| Matrix::identity(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{gl1_module, sl2_module};
    use crate::linalg::field::{int, rat};

    fn n() -> NCPolynomial {
        NCPolynomial::generator(0)
    }

    // sl2 basis order e, h, f
    fn e() -> NCPolynomial {
        NCPolynomial::generator(0)
    }
    fn h() -> NCPolynomial {
        NCPolynomial::generator(1)
    }
    fn f() -> NCPolynomial {
        NCPolynomial::generator(2)
    }

    fn casimir() -> NCPolynomial {
        e().mul(&f()).add(&f().mul(&e())).add(&h().mul(&h()).scale(&rat(1, 2)))
    }

    #[test]
    fn coproduct_of_identity() {
        let d = NCPolynomial::identity().coproduct();
        let expected = TensorElement::pure(Rational::one(), vec![NCPolynomial::identity(), NCPolynomial::identity()]);
        assert_eq!(d, expected);
    }

    #[test]
    fn coproduct_of_n_squared() {
        let d = n().pow(2).coproduct();
        let i = NCPolynomial::identity();
        let expected = TensorElement::pure(int(1), vec![n().pow(2), i.clone()])
            .add(&TensorElement::pure(int(2), vec![n(), n()]))
            .add(&TensorElement::pure(int(1), vec![i, n().pow(2)]));
        assert_eq!(d, expected);
    }

    #[test]
    fn coproduct_of_ef() {
        let i = NCPolynomial::identity();
        let expected = TensorElement::pure(int(1), vec![e().mul(&f()), i.clone()])
            .add(&TensorElement::pure(int(1), vec![e(), f()]))
            .add(&TensorElement::pure(int(1), vec![f(), e()]))
            .add(&TensorElement::pure(int(1), vec![i, e().mul(&f())]));
        assert_eq!(e().mul(&f()).coproduct(), expected);
    }

    #[test]
    fn antipode_examples() {
        assert_eq!(n().pow(3).antipode(), n().pow(3).neg());
        assert_eq!(e().mul(&f()).antipode(), f().mul(&e()));
        assert_eq!(casimir().antipode().antipode(), casimir());
    }

    #[test]
    fn counit_examples() {
        assert_eq!(NCPolynomial::identity().counit(), int(1));
        assert_eq!(n().pow(3).add(&n().scale(&int(5))).scale(&rat(1, 6)).counit(), int(0));
        let p = NCPolynomial::scalar(int(3)).add(&n().pow(2).scale(&int(2)));
        assert_eq!(p.counit(), int(3));
    }

    #[test]
    fn evaluate_examples() {
        let v1 = sl2_module(2).unwrap();
        assert!(NCPolynomial::identity().evaluate(&v1).unwrap().is_identity());
        assert_eq!(n().pow(3).evaluate(&gl1_module(2)).unwrap(), RationalMatrix::scalar(1, int(8)));
        let half = sl2_module(1).unwrap();
        assert_eq!(casimir().evaluate(&half).unwrap(), RationalMatrix::scalar(2, rat(3, 2)));
    }

    #[test]
    fn evaluate_unknown_symbol() {
        let p = NCPolynomial::generator(3);
        assert_eq!(p.evaluate(&gl1_module(1)), Err(AlgebraError::UnknownSymbol(3)));
    }

    #[test]
    fn display_round_trip_shape() {
        let names = vec!["N".to_string()];
        let k = n().pow(3).add(&n().scale(&int(5))).scale(&rat(1, 6));
        assert_eq!(k.display(&names).to_string(), "5/6*N + 1/6*N^3");
        let names = vec!["e".to_string(), "h".to_string(), "f".to_string()];
        assert_eq!(casimir().neg().display(&names).to_string(), "-e*f - 1/2*h^2 - f*e");
    }
}
