//! Finite-dimensional g-modules with exact actions.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::linalg::field::int;
use crate::linalg::{Matrix, Rational, RationalMatrix};

use super::lie::LieAlgebra;
use super::ncpoly::word_product;
use super::AlgebraError;

/// A module: one `dim × dim` matrix per basis element of the algebra.
#[derive(Clone, PartialEq)]
pub struct ModuleRep {
    algebra: Arc<LieAlgebra>,
    label: String,
    dim: usize,
    actions: Vec<RationalMatrix>,
}

impl ModuleRep {
    /// Validates shapes and the bracket identity
    /// `ρ(x_i)ρ(x_j) − ρ(x_j)ρ(x_i) = Σ_k c_ij^k ρ(x_k)`.
    pub fn new(
        algebra: Arc<LieAlgebra>,
        label: impl Into<String>,
        actions: Vec<RationalMatrix>,
    ) -> Result<Self, AlgebraError> {
        let label = label.into();
        if actions.len() != algebra.dim() {
            return Err(AlgebraError::Parse(format!(
                "module {label}: expected {} action matrices, got {}",
                algebra.dim(),
                actions.len()
            )));
        }
        let dim = actions.first().map_or(1, |m| m.rows());
        if dim == 0 {
            return Err(AlgebraError::ZeroDimensional(label));
        }
        for (i, m) in actions.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(AlgebraError::Parse(format!(
                    "module {label}: action of {} is {}x{}, expected {dim}x{dim}",
                    algebra.basis()[i],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let module = ModuleRep {
            algebra,
            label,
            dim,
            actions,
        };
        module.check_brackets()?;
        Ok(module)
    }

    /// Builds from named action matrices; missing generators act as zero.
    pub fn from_named(
        algebra: Arc<LieAlgebra>,
        label: impl Into<String>,
        dim: usize,
        named: Vec<(String, RationalMatrix)>,
    ) -> Result<Self, AlgebraError> {
        let label = label.into();
        if dim == 0 {
            return Err(AlgebraError::ZeroDimensional(label));
        }
        let mut actions = vec![RationalMatrix::zeros(dim, dim); algebra.dim()];
        for (name, m) in named {
            let i = algebra.index_of(&name).ok_or(AlgebraError::UnknownName(name))?;
            actions[i] = m;
        }
        Self::new(algebra, label, actions)
    }

    fn check_brackets(&self) -> Result<(), AlgebraError> {
        let n = self.algebra.dim();
        for i in 0..n {
            for j in i + 1..n {
                let a = &self.actions[i];
                let b = &self.actions[j];
                let lhs = a.matmul(b).expect("square").sub(&b.matmul(a).expect("square")).expect("square");
                let mut rhs = RationalMatrix::zeros(self.dim, self.dim);
                for (k, c) in self.algebra.bracket(i, j) {
                    rhs.add_scaled(&c, &self.actions[k]).expect("square");
                }
                if lhs != rhs {
                    return Err(AlgebraError::BracketIdentity {
                        module: self.label.clone(),
                        left: self.algebra.basis()[i].clone(),
                        right: self.algebra.basis()[j].clone(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn actions(&self) -> &[RationalMatrix] {
        &self.actions
    }

    pub fn action(&self, i: usize) -> &RationalMatrix {
        &self.actions[i]
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// The matrix of a word; the empty word is the identity.
    pub fn word_matrix(&self, w: &[usize]) -> Result<RationalMatrix, AlgebraError> {
        word_product(&self.actions, w, self.dim)
    }
}

impl fmt::Debug for ModuleRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleRep({}, dim {}, over {})", self.label, self.dim, self.algebra.name())
    }
}

/// The one-dimensional gl(1)-module `M_n` with `N ↦ (n)`.
pub fn gl1_module(n: i64) -> ModuleRep {
    gl1_module_over(&Arc::new(LieAlgebra::gl1()), n)
}

pub fn gl1_module_over(algebra: &Arc<LieAlgebra>, n: i64) -> ModuleRep {
    ModuleRep::new(algebra.clone(), format!("M_{n}"), vec![RationalMatrix::scalar(1, int(n))])
        .expect("gl1 weight module is valid")
}

/// The irreducible sl(2)-module of highest weight `two_j`, dimension `two_j + 1`.
///
/// Basis `v_0, …, v_n` (highest weight first, `n = two_j`):
/// `h v_k = (n − 2k) v_k`, `f v_k = v_{k+1}`, `e v_k = k(n − k + 1) v_{k−1}`.
/// Requires the algebra's basis to contain `e`, `h`, `f`.
pub fn sl2_module_over(algebra: &Arc<LieAlgebra>, two_j: u32) -> Result<ModuleRep, AlgebraError> {
    let n = two_j as usize;
    let dim = n + 1;
    let mut e = RationalMatrix::zeros(dim, dim);
    let mut h = RationalMatrix::zeros(dim, dim);
    let mut f = RationalMatrix::zeros(dim, dim);
    for k in 0..dim {
        h.set(k, k, int(n as i64 - 2 * k as i64));
        if k + 1 < dim {
            f.set(k + 1, k, int(1));
        }
        if k > 0 {
            e.set(k - 1, k, Rational::from_integer(BigInt::from(k * (n - k + 1))));
        }
    }
    let label = if two_j % 2 == 0 {
        format!("V_{}", two_j / 2)
    } else {
        format!("V_{two_j}/2")
    };
    ModuleRep::from_named(
        algebra.clone(),
        label,
        dim,
        vec![("e".into(), e), ("h".into(), h), ("f".into(), f)],
    )
}

pub fn sl2_module(two_j: u32) -> Result<ModuleRep, AlgebraError> {
    sl2_module_over(&Arc::new(LieAlgebra::sl2()), two_j)
}

/// `U ⊗ V` with `x ↦ ρ_U(x) ⊗ I + I ⊗ ρ_V(x)`; labelled `(U⊗V)`.
pub fn tensor_modules(u: &ModuleRep, v: &ModuleRep) -> Result<ModuleRep, AlgebraError> {
    if u.algebra != v.algebra {
        return Err(AlgebraError::AlgebraMismatch);
    }
    let iu = RationalMatrix::identity(u.dim);
    let iv = RationalMatrix::identity(v.dim);
    let actions = u
        .actions
        .iter()
        .zip(&v.actions)
        .map(|(a, b)| a.kron(&iv).add(&iu.kron(b)).expect("same shape"))
        .collect();
    Ok(ModuleRep {
        algebra: u.algebra.clone(),
        label: format!("({}⊗{})", u.label, v.label),
        dim: u.dim * v.dim,
        actions,
    })
}

/// The unit object: one-dimensional, every generator acting as zero.
pub fn trivial_module(algebra: &Arc<LieAlgebra>) -> ModuleRep {
    let label = match algebra.name() {
        "gl1" => "M_0",
        "sl2" => "V_0",
        _ => "1",
    };
    ModuleRep {
        algebra: algebra.clone(),
        label: label.into(),
        dim: 1,
        actions: vec![RationalMatrix::zeros(1, 1); algebra.dim()],
    }
}

/// Basis of `Hom_g(U, V)`: matrices `f` (dim V × dim U) with
/// `f ρ_U(x) = ρ_V(x) f` for every generator, from an exact nullspace.
pub fn intertwiner_basis(u: &ModuleRep, v: &ModuleRep) -> Result<Vec<RationalMatrix>, AlgebraError> {
    if u.algebra != v.algebra {
        return Err(AlgebraError::AlgebraMismatch);
    }
    let (du, dv) = (u.dim, v.dim);
    let vars = du * dv;
    // unknown f[i][j] sits at column i * du + j
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (a, b) in u.actions.iter().zip(&v.actions) {
        for i in 0..dv {
            for k in 0..du {
                let mut row = vec![Rational::zero(); vars];
                for j in 0..du {
                    row[i * du + j] += a.get(j, k);
                }
                for j in 0..dv {
                    row[j * du + k] -= b.get(i, j);
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let basis = if rows.is_empty() {
        (0..vars)
            .map(|c| {
                let mut e = vec![Rational::zero(); vars];
                e[c] = int(1);
                e
            })
            .collect()
    } else {
        Matrix::from_rows(rows).expect("rectangular").nullspace()
    };
    Ok(basis
        .into_iter()
        .map(|vec| Matrix::from_rows(vec.chunks(du).map(|c| c.to_vec()).collect()).expect("rectangular"))
        .collect())
}
