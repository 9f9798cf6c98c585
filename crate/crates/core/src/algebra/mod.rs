//! Lie algebras, their modules, and elements of the enveloping algebra with
//! the Hopf maps Δ, ε, S.

pub mod expr;
pub mod lie;
pub mod module;
pub mod ncpoly;
pub mod tensor;

pub use expr::parse_expression;
pub use lie::{LieAlgebra, SparseVector};
pub use module::{
    gl1_module, gl1_module_over, intertwiner_basis, sl2_module, sl2_module_over, tensor_modules, trivial_module,
    ModuleRep,
};
pub use ncpoly::{NCPolynomial, Word};
pub use tensor::{TensorElement, TensorOperator};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("duplicate basis name {0:?}")]
    DuplicateBasis(String),
    #[error("unknown basis name {0:?}")]
    UnknownName(String),
    #[error("brackets [{left},{right}] and [{right},{left}] are not antisymmetric")]
    Antisymmetry { left: String, right: String },
    #[error("Jacobi identity fails for ({}, {}, {})", .0[0], .0[1], .0[2])]
    Jacobi([String; 3]),
    #[error("module {module}: action violates the bracket [{left},{right}]")]
    BracketIdentity {
        module: String,
        left: String,
        right: String,
    },
    #[error("generator index {0} is not in the module's algebra")]
    UnknownSymbol(usize),
    #[error("tensor element has {legs} legs but {modules} modules were given")]
    LegMismatch { legs: usize, modules: usize },
    #[error("modules belong to different algebras")]
    AlgebraMismatch,
    #[error("module {0} has dimension zero")]
    ZeroDimensional(String),
    #[error("column {column}: {message}")]
    Expr { column: usize, message: String },
    #[error("column {column}: unknown generator {name:?}")]
    UnknownGenerator { name: String, column: usize },
}
