//! Closed-form values of the twined operators on one-dimensional gl(1)
//! weight modules, where every operator is a power of γ.

use std::fmt::Write as _;

use premon_core::algebra::{parse_expression, AlgebraError, LieAlgebra, NCPolynomial};
use premon_core::linalg::{format_rational, Field, Rational};

pub struct Gl1Oracle {
    k: NCPolynomial,
    gamma: Rational,
}

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error("{0}")]
    Expr(#[from] AlgebraError),
    #[error("exponent {0} is not an integer")]
    NonInteger(String),
    #[error("gamma must be nonzero")]
    ZeroGamma,
}

impl Gl1Oracle {
    pub fn new(k_text: &str, gamma: Rational) -> Result<Self, OracleError> {
        let k = parse_expression(k_text, &LieAlgebra::gl1())?;
        if gamma == Rational::from_integer(0.into()) {
            return Err(OracleError::ZeroGamma);
        }
        Ok(Gl1Oracle { k, gamma })
    }

    /// k(n): the scalar by which K acts on M_n.
    pub fn k(&self, n: i64) -> Rational {
        self.k.evaluate_scalar(&[Rational::from_integer(n.into())]).expect("gl1 has one generator")
    }

    /// κ(x; y, z) = k(x)(k(y) + k(z) − k(y+z)).
    pub fn kappa(&self, x: i64, y: i64, z: i64) -> Rational {
        self.k(x) * (self.k(y) + self.k(z) - self.k(y + z))
    }

    /// Exponent of γ in R̃ on M_a ⊗ M_b.
    pub fn r_exponent(&self, a: i64, b: i64) -> Rational {
        self.k(a) * self.k(b)
    }

    /// Exponent of γ in q on (M_a, M_b, M_c, M_d).
    pub fn q_exponent(&self, a: i64, b: i64, c: i64, d: i64) -> Rational {
        -self.kappa(a + b, c, d) + self.kappa(a, b, c) + self.kappa(a, b + c, d) + self.kappa(b, c, d)
            - self.kappa(a, b, c + d)
    }

    /// Exponent of γ in u = v on M_a.
    pub fn u_exponent(&self, a: i64) -> Rational {
        let k = self.k(a);
        -(k.clone() * k)
    }

    pub fn power(&self, exponent: &Rational) -> Result<Rational, OracleError> {
        if !exponent.is_integer() {
            return Err(OracleError::NonInteger(format_rational(exponent)));
        }
        self.gamma.powi(&exponent.to_integer()).ok_or(OracleError::ZeroGamma)
    }

    /// Plain-text table of k, u, R̃, Φ̃ and q over all tuples of `weights`.
    pub fn render(&self, weights: &[i64]) -> Result<String, OracleError> {
        let f = format_rational;
        let mut out = String::new();
        let _ = writeln!(out, "K = {}", self.k.display(LieAlgebra::gl1().basis()));
        let _ = writeln!(out, "gamma = {}", f(&self.gamma));
        for &a in weights {
            let e = self.u_exponent(a);
            let _ = writeln!(out, "k(M_{a}) = {}  u(M_{a}) = gamma^{} = {}", f(&self.k(a)), f(&e), f(&self.power(&e)?));
        }
        for &a in weights {
            for &b in weights {
                let e = self.r_exponent(a, b);
                let _ = writeln!(out, "R(M_{a},M_{b}) = gamma^{} = {}", f(&e), f(&self.power(&e)?));
            }
        }
        for &a in weights {
            for &b in weights {
                for &c in weights {
                    let e = self.kappa(a, b, c);
                    let _ = writeln!(out, "kappa(M_{a},M_{b},M_{c}) = {}  Phi = {}", f(&e), f(&self.power(&e)?));
                }
            }
        }
        for &a in weights {
            for &b in weights {
                for &c in weights {
                    for &d in weights {
                        let e = self.q_exponent(a, b, c, d);
                        let _ = writeln!(
                            out,
                            "q(M_{a},M_{b},M_{c},M_{d}) = gamma^{} = {}",
                            f(&e),
                            f(&self.power(&e)?)
                        );
                    }
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minus_one() -> Rational {
        Rational::from_integer((-1).into())
    }

    #[test]
    fn cubic_values() {
        let o = Gl1Oracle::new("(N^3 + 5*N)/6", minus_one()).unwrap();
        assert_eq!(o.k(1), Rational::from_integer(1.into()));
        assert_eq!(o.k(2), Rational::from_integer(3.into()));
        assert_eq!(o.k(3), Rational::from_integer(7.into()));
        assert_eq!(o.q_exponent(1, 1, 1, 1), Rational::from_integer(1.into()));
        assert_eq!(o.power(&o.q_exponent(1, 1, 1, 1)).unwrap(), minus_one());
    }

    #[test]
    fn u_on_cube() {
        let o = Gl1Oracle::new("N^3", minus_one()).unwrap();
        assert_eq!(o.power(&o.u_exponent(1)).unwrap(), minus_one());
        assert_eq!(o.power(&o.u_exponent(2)).unwrap(), Rational::from_integer(1.into()));
    }

    #[test]
    fn rejects_fractional_exponent() {
        let o = Gl1Oracle::new("N/2", minus_one()).unwrap();
        assert!(o.render(&[1]).is_err());
    }
}
