//! The central element K and its preconditions, verified on configured modules.

use std::fmt;

use num_traits::Zero;

use crate::algebra::{tensor_modules, ModuleRep, NCPolynomial};
use crate::linalg::{format_rational, integer_spectrum, RationalMatrix, SpectrumError};

use super::TwinedError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SParity {
    Odd,
    Even,
    Unchecked,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CentralElement {
    pub poly: NCPolynomial,
    pub declared_s_parity: SParity,
}

impl CentralElement {
    pub fn new(poly: NCPolynomial) -> Self {
        CentralElement {
            poly,
            declared_s_parity: SParity::Unchecked,
        }
    }

    pub fn with_parity(mut self, parity: SParity) -> Self {
        self.declared_s_parity = parity;
        self
    }

    pub fn evaluate(&self, v: &ModuleRep) -> Result<RationalMatrix, TwinedError> {
        Ok(self.poly.evaluate(v)?)
    }
}

/// Which precondition a [`ValidationIssue`] concerns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Requirement {
    Centrality,
    Counit,
    IntegerSpectrum,
    SParity,
}

impl Requirement {
    pub fn as_str(&self) -> &'static str {
        match self {
            Requirement::Centrality => "centrality",
            Requirement::Counit => "counit",
            Requirement::IntegerSpectrum => "integer_spectrum",
            Requirement::SParity => "s_parity",
        }
    }
}

/// One failed precondition with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationIssue {
    pub requirement: Requirement,
    /// Stable error code, e.g. `NonIntegerSpectrum`.
    pub code: String,
    /// Module (or tensor pair) on which the failure was observed.
    pub module: Option<String>,
    /// Generator name, eigenvalue `p/q`, or counit value.
    pub witness: Option<String>,
    pub message: String,
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.message)?;
        if let Some(m) = &self.module {
            write!(f, " on {m}")?;
        }
        if let Some(w) = &self.witness {
            write!(f, " (witness {w})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
    /// Human-readable record of what was checked.
    pub checked: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn first(&self, requirement: Requirement) -> Option<&ValidationIssue> {
        self.issues.iter().find(|i| i.requirement == requirement)
    }
}

/// Checks centrality (on each module and each ordered pair product), ε(K) = 0,
/// integer semisimple spectrum of K on each module and of Δ(K) on each pair,
/// and, if requested, S(K) = −K on each module.
pub fn validate_central(k: &CentralElement, modules: &[ModuleRep], require_s_odd: bool) -> ValidationReport {
    let mut report = ValidationReport::default();
    let names = modules.first().map(|m| m.algebra().basis().to_vec()).unwrap_or_default();

    let eps = k.poly.counit();
    report.checked.push(format!("counit of K = {}", format_rational(&eps)));
    if !eps.is_zero() {
        report.issues.push(ValidationIssue {
            requirement: Requirement::Counit,
            code: "NonzeroCounit".into(),
            module: None,
            witness: Some(format_rational(&eps)),
            message: "K must satisfy ε(K) = 0".into(),
        });
    }

    let mut targets: Vec<ModuleRep> = modules.to_vec();
    for u in modules {
        for v in modules {
            match tensor_modules(u, v) {
                Ok(t) => targets.push(t),
                Err(e) => report.issues.push(ValidationIssue {
                    requirement: Requirement::Centrality,
                    code: "AlgebraMismatch".into(),
                    module: Some(format!("({}⊗{})", u.label(), v.label())),
                    witness: None,
                    message: e.to_string(),
                }),
            }
        }
    }

    for (idx, v) in targets.iter().enumerate() {
        let is_pair = idx >= modules.len();
        let kv = match k.poly.evaluate(v) {
            Ok(m) => m,
            Err(e) => {
                report.issues.push(ValidationIssue {
                    requirement: Requirement::Centrality,
                    code: "UnknownSymbol".into(),
                    module: Some(v.label().into()),
                    witness: None,
                    message: e.to_string(),
                });
                continue;
            }
        };
        report.checked.push(format!("K on {}", v.label()));
        for (i, a) in v.actions().iter().enumerate() {
            if !kv.commutes_with(a).expect("square") {
                report.issues.push(ValidationIssue {
                    requirement: Requirement::Centrality,
                    code: "NotCentral".into(),
                    module: Some(v.label().into()),
                    witness: Some(names.get(i).cloned().unwrap_or_default()),
                    message: "K does not commute with a generator".into(),
                });
                break;
            }
        }
        if let Err(e) = integer_spectrum(&kv) {
            let witness = match &e {
                SpectrumError::NonIntegerSpectrum { witness: Some(w), .. } => Some(format_rational(w)),
                SpectrumError::NonIntegerSpectrum { residual, .. } => Some(residual.to_string()),
                _ => None,
            };
            report.issues.push(ValidationIssue {
                requirement: Requirement::IntegerSpectrum,
                code: e.code().into(),
                module: Some(v.label().into()),
                witness,
                message: if is_pair {
                    format!("Δ(K): {e}")
                } else {
                    format!("K: {e}")
                },
            });
        }
        if require_s_odd && !is_pair {
            let skv = k.poly.antipode().evaluate(v).expect("same symbols as K");
            if skv != kv.neg() {
                let col = skv.first_differing_column(&kv.neg());
                report.issues.push(ValidationIssue {
                    requirement: Requirement::SParity,
                    code: "NotSOdd".into(),
                    module: Some(v.label().into()),
                    witness: col.map(|c| format!("basis vector {c}")),
                    message: "S(K) ≠ −K".into(),
                });
            }
        }
    }
    report
}

/// `S(K)` evaluated on `v`.
pub fn antipode_matrix(k: &CentralElement, v: &ModuleRep) -> Result<RationalMatrix, TwinedError> {
    Ok(k.poly.antipode().evaluate(v)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{gl1_module, parse_expression, sl2_module, LieAlgebra};

    fn gl1_k(text: &str) -> CentralElement {
        CentralElement::new(parse_expression(text, &LieAlgebra::gl1()).unwrap())
    }

    #[test]
    fn primitive_k_passes() {
        let mods: Vec<_> = (-2..=2).map(gl1_module).collect();
        let r = validate_central(&gl1_k("N"), &mods, true);
        assert!(r.passed(), "{:?}", r.issues);
    }

    #[test]
    fn cubic_k_passes() {
        let mods: Vec<_> = (-3..=3).map(gl1_module).collect();
        let r = validate_central(&gl1_k("(N^3 + 5*N)/6"), &mods, true);
        assert!(r.passed(), "{:?}", r.issues);
    }

    #[test]
    fn counit_must_vanish() {
        let r = validate_central(&gl1_k("N + 1"), &[gl1_module(1)], false);
        let issue = r.first(Requirement::Counit).unwrap();
        assert_eq!(issue.witness.as_deref(), Some("1/1"));
    }

    #[test]
    fn half_integer_spin_gives_three_eighths() {
        let sl2 = LieAlgebra::sl2();
        let k = CentralElement::new(parse_expression("(e*f + f*e + h^2/2)/4", &sl2).unwrap());
        let mods = vec![sl2_module(0).unwrap(), sl2_module(1).unwrap(), sl2_module(2).unwrap()];
        let r = validate_central(&k, &mods, true);
        let spec = r.first(Requirement::IntegerSpectrum).unwrap();
        assert_eq!(spec.code, "NonIntegerSpectrum");
        assert_eq!(spec.module.as_deref(), Some("V_1/2"));
        assert_eq!(spec.witness.as_deref(), Some("3/8"));
        let parity = r.first(Requirement::SParity).unwrap();
        assert_eq!(parity.code, "NotSOdd");
        assert!(r.first(Requirement::Centrality).is_none());
    }

    #[test]
    fn non_central_element_is_caught() {
        let sl2 = LieAlgebra::sl2();
        let k = CentralElement::new(parse_expression("h", &sl2).unwrap());
        let r = validate_central(&k, &[sl2_module(2).unwrap()], false);
        let c = r.first(Requirement::Centrality).unwrap();
        assert_eq!(c.module.as_deref(), Some("V_1"));
        assert_eq!(c.witness.as_deref(), Some("e"));
    }
}
