//! Bracketed objects and typed morphisms between them.
//!
//! Matrices always act on the flat Kronecker space of the leaves; the
//! bracketing only types the domain and codomain so that composites can be
//! checked for well-formedness.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{tensor_modules, ModuleRep};
use crate::linalg::{Field, Matrix};

use super::TwinedError;

#[derive(Clone)]
pub struct Obj {
    shape: Shape,
    module: Arc<ModuleRep>,
}

#[derive(Clone)]
enum Shape {
    Leaf,
    Pair(Box<Obj>, Box<Obj>),
}

impl Obj {
    pub fn leaf(module: ModuleRep) -> Self {
        Obj {
            shape: Shape::Leaf,
            module: Arc::new(module),
        }
    }

    pub fn leaf_arc(module: Arc<ModuleRep>) -> Self {
        Obj {
            shape: Shape::Leaf,
            module,
        }
    }

    /// `a ⊗ b`, carrying the tensor-product module.
    pub fn tensor(a: &Obj, b: &Obj) -> Result<Self, TwinedError> {
        let module = tensor_modules(&a.module, &b.module)?;
        Ok(Obj {
            shape: Shape::Pair(Box::new(a.clone()), Box::new(b.clone())),
            module: Arc::new(module),
        })
    }

    /// The underlying module (for a pair, the tensor-product module).
    pub fn module(&self) -> &ModuleRep {
        &self.module
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self.shape, Shape::Leaf)
    }

    /// Labels of the leaves in order.
    pub fn leaves(&self) -> Vec<String> {
        match &self.shape {
            Shape::Leaf => vec![self.module.label().to_string()],
            Shape::Pair(a, b) => {
                let mut out = a.leaves();
                out.extend(b.leaves());
                out
            }
        }
    }

    pub fn leaf_dims(&self) -> Vec<usize> {
        match &self.shape {
            Shape::Leaf => vec![self.module.dim()],
            Shape::Pair(a, b) => {
                let mut out = a.leaf_dims();
                out.extend(b.leaf_dims());
                out
            }
        }
    }

    /// Bracketed label; the outermost pair is written without parentheses.
    pub fn display_top(&self) -> String {
        match &self.shape {
            Shape::Leaf => self.module.label().to_string(),
            Shape::Pair(a, b) => format!("{}⊗{}", a, b),
        }
    }
}

impl PartialEq for Obj {
    fn eq(&self, other: &Self) -> bool {
        match (&self.shape, &other.shape) {
            (Shape::Leaf, Shape::Leaf) => self.module.label() == other.module.label() && self.dim() == other.dim(),
            (Shape::Pair(a1, b1), Shape::Pair(a2, b2)) => a1 == a2 && b1 == b2,
            _ => false,
        }
    }
}

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.shape {
            Shape::Leaf => write!(f, "{}", self.module.label()),
            Shape::Pair(a, b) => write!(f, "({}⊗{})", a, b),
        }
    }
}

impl fmt::Debug for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Obj({self})")
    }
}

/// A morphism `source → target` given by a matrix on the flat space.
#[derive(Clone, Debug)]
pub struct Morphism<F: Field> {
    pub source: Obj,
    pub target: Obj,
    pub matrix: Matrix<F>,
}

impl<F: Field> Morphism<F> {
    pub fn new(source: Obj, target: Obj, matrix: Matrix<F>) -> Self {
        assert_eq!(matrix.cols(), source.dim(), "matrix columns must match the source dimension");
        assert_eq!(matrix.rows(), target.dim(), "matrix rows must match the target dimension");
        Morphism { source, target, matrix }
    }

    pub fn identity(obj: &Obj) -> Self {
        Morphism::new(obj.clone(), obj.clone(), Matrix::identity(obj.dim()))
    }

    /// `next ∘ self`; the target of `self` must equal the source of `next`.
    pub fn then(&self, next: &Morphism<F>) -> Result<Self, TwinedError> {
        if self.target != next.source {
            return Err(TwinedError::Composition {
                expected: self.target.to_string(),
                found: next.source.to_string(),
            });
        }
        Ok(Morphism {
            source: self.source.clone(),
            target: next.target.clone(),
            matrix: next.matrix.matmul(&self.matrix).expect("dimensions checked by objects"),
        })
    }

    /// Composes a chain applied left to right.
    pub fn chain(steps: &[Morphism<F>]) -> Result<Self, TwinedError> {
        let (first, rest) = steps.split_first().expect("nonempty chain");
        rest.iter().try_fold(first.clone(), |acc, m| acc.then(m))
    }

    /// `self ⊗ other`.
    pub fn tensor(&self, other: &Morphism<F>) -> Result<Self, TwinedError> {
        Ok(Morphism {
            source: Obj::tensor(&self.source, &other.source)?,
            target: Obj::tensor(&self.target, &other.target)?,
            matrix: self.matrix.kron(&other.matrix),
        })
    }

    pub fn scale(&self, c: &F) -> Self {
        Morphism {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.scale(c),
        }
    }

    /// Inverse morphism `target → source`.
    pub fn inverse(&self) -> Result<Self, TwinedError> {
        Ok(Morphism {
            source: self.target.clone(),
            target: self.source.clone(),
            matrix: self.matrix.inverse().map_err(|_| TwinedError::Singular(self.source.to_string()))?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{gl1_module, sl2_module};
    use crate::linalg::field::int;
    use crate::linalg::{Rational, RationalMatrix};

    #[test]
    fn labels_and_dims() {
        let v1 = Obj::leaf(sl2_module(2).unwrap());
        let v0 = Obj::leaf(sl2_module(0).unwrap());
        let p = Obj::tensor(&Obj::tensor(&v1, &v0).unwrap(), &v1).unwrap();
        assert_eq!(p.to_string(), "((V_1⊗V_0)⊗V_1)");
        assert_eq!(p.display_top(), "(V_1⊗V_0)⊗V_1");
        assert_eq!(p.leaf_dims(), vec![3, 1, 3]);
        assert_eq!(p.dim(), 9);
        assert_eq!(p.module().label(), "((V_1⊗V_0)⊗V_1)");
    }

    #[test]
    fn bracketing_distinguishes_objects() {
        let m = Obj::leaf(gl1_module(1));
        let left = Obj::tensor(&Obj::tensor(&m, &m).unwrap(), &m).unwrap();
        let right = Obj::tensor(&m, &Obj::tensor(&m, &m).unwrap()).unwrap();
        assert_ne!(left, right);
        let f: Morphism<Rational> = Morphism::identity(&left);
        let g: Morphism<Rational> = Morphism::identity(&right);
        assert!(matches!(f.then(&g), Err(TwinedError::Composition { .. })));
    }

    #[test]
    fn tensor_of_morphisms_is_kron() {
        let m = Obj::leaf(gl1_module(2));
        let f = Morphism::new(m.clone(), m.clone(), RationalMatrix::scalar(1, int(3)));
        let g = Morphism::new(m.clone(), m.clone(), RationalMatrix::scalar(1, int(5)));
        let fg = f.tensor(&g).unwrap();
        assert_eq!(fg.matrix, RationalMatrix::scalar(1, int(15)));
        assert_eq!(fg.source.to_string(), "(M_2⊗M_2)");
    }
}
