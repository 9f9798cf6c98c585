use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_traits::Zero;

use crate::linalg::field::int;
use crate::linalg::{format_rational, parse_rational, Rational};

use super::AlgebraError;

/// Sparse vector in the basis: index → coefficient, zeros never stored.
pub type SparseVector = BTreeMap<usize, Rational>;

/// A Lie algebra given by basis labels and exact structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    basis: Vec<String>,
    // (i, j) with i < j; the (j, i) entry is the negation.
    brackets: BTreeMap<(usize, usize), SparseVector>,
}

impl LieAlgebra {
    /// Builds a presentation from named bracket entries and verifies
    /// antisymmetry and the Jacobi identity.
    pub fn new(
        name: impl Into<String>,
        basis: Vec<String>,
        entries: Vec<((String, String), Vec<(String, Rational)>)>,
    ) -> Result<Self, AlgebraError> {
        let mut seen = HashSet::new();
        for b in &basis {
            if b.is_empty() || !b.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(AlgebraError::Parse(format!("invalid basis name {b:?}")));
            }
            if !seen.insert(b.as_str()) {
                return Err(AlgebraError::DuplicateBasis(b.clone()));
            }
        }
        let index = |n: &str| {
            basis
                .iter()
                .position(|b| b == n)
                .ok_or_else(|| AlgebraError::UnknownName(n.to_string()))
        };

        let mut given: BTreeMap<(usize, usize), SparseVector> = BTreeMap::new();
        for ((a, b), vec) in entries {
            let (i, j) = (index(&a)?, index(&b)?);
            let mut v = SparseVector::new();
            for (name, c) in vec {
                let k = index(&name)?;
                let e = v.entry(k).or_insert_with(Rational::zero);
                *e += c;
            }
            v.retain(|_, c| !c.is_zero());
            if given.insert((i, j), v).is_some() {
                return Err(AlgebraError::Parse(format!("bracket [{a},{b}] given twice")));
            }
        }

        let mut brackets: BTreeMap<(usize, usize), SparseVector> = BTreeMap::new();
        for ((i, j), v) in given {
            if i == j {
                if !v.is_empty() {
                    return Err(AlgebraError::Antisymmetry {
                        left: basis[i].clone(),
                        right: basis[j].clone(),
                    });
                }
                continue;
            }
            let (key, oriented) = if i < j { ((i, j), v) } else { ((j, i), negate(&v)) };
            match brackets.get(&key) {
                Some(existing) if *existing != oriented => {
                    return Err(AlgebraError::Antisymmetry {
                        left: basis[key.0].clone(),
                        right: basis[key.1].clone(),
                    });
                }
                _ => {
                    brackets.insert(key, oriented);
                }
            }
        }
        brackets.retain(|_, v| !v.is_empty());

        let alg = LieAlgebra {
            name: name.into(),
            basis,
            brackets,
        };
        alg.check_jacobi()?;
        Ok(alg)
    }

    /// The abelian one-dimensional algebra with generator `N`.
    pub fn gl1() -> Self {
        LieAlgebra {
            name: "gl1".into(),
            basis: vec!["N".into()],
            brackets: BTreeMap::new(),
        }
    }

    /// sl(2) in the basis `e, h, f` with `[h,e]=2e, [h,f]=-2f, [e,f]=h`.
    pub fn sl2() -> Self {
        let s = |x: &str| x.to_string();
        Self::new(
            "sl2",
            vec![s("e"), s("h"), s("f")],
            vec![
                ((s("h"), s("e")), vec![(s("e"), int(2))]),
                ((s("h"), s("f")), vec![(s("f"), int(-2))]),
                ((s("e"), s("f")), vec![(s("h"), int(1))]),
            ],
        )
        .expect("sl2 presentation is valid")
    }

    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "gl1" => Some(Self::gl1()),
            "sl2" => Some(Self::sl2()),
            _ => None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    /// `[x_i, x_j]` in the basis.
    pub fn bracket(&self, i: usize, j: usize) -> SparseVector {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => SparseVector::new(),
            std::cmp::Ordering::Less => self.brackets.get(&(i, j)).cloned().unwrap_or_default(),
            std::cmp::Ordering::Greater => negate(&self.brackets.get(&(j, i)).cloned().unwrap_or_default()),
        }
    }

    fn bracket_vec(&self, i: usize, v: &SparseVector) -> SparseVector {
        let mut out = SparseVector::new();
        for (&k, c) in v {
            for (m, d) in self.bracket(i, k) {
                *out.entry(m).or_insert_with(Rational::zero) += c * d;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    fn check_jacobi(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut total = SparseVector::new();
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (m, x) in self.bracket_vec(a, &self.bracket(b, c)) {
                            *total.entry(m).or_insert_with(Rational::zero) += x;
                        }
                    }
                    if total.values().any(|c| !c.is_zero()) {
                        return Err(AlgebraError::Jacobi([
                            self.basis[i].clone(),
                            self.basis[j].clone(),
                            self.basis[k].clone(),
                        ]));
                    }
                }
            }
        }
        Ok(())
    }

    /// Parses the TOML presentation format:
    ///
    /// ```text
    /// [algebra]
    /// name = "sl2"
    /// basis = ["e", "h", "f"]
    /// bracket."h,e" = { e = "2" }
    /// bracket."e,f" = { h = 1 }
    /// ```
    pub fn from_toml_str(text: &str) -> Result<Self, AlgebraError> {
        let doc: toml::Table = text.parse().map_err(|e: toml::de::Error| AlgebraError::Parse(e.to_string()))?;
        let section = doc
            .get("algebra")
            .and_then(|v| v.as_table())
            .ok_or_else(|| AlgebraError::Parse("missing [algebra] section".into()))?;
        let name = section.get("name").and_then(|v| v.as_str()).unwrap_or("custom");
        let basis = section
            .get("basis")
            .and_then(|v| v.as_array())
            .ok_or_else(|| AlgebraError::Parse("missing basis array".into()))?
            .iter()
            .map(|v| {
                v.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| AlgebraError::Parse("basis names must be strings".into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut entries = Vec::new();
        if let Some(br) = section.get("bracket") {
            let br = br
                .as_table()
                .ok_or_else(|| AlgebraError::Parse("bracket must be a table".into()))?;
            for (key, value) in br {
                let (a, b) = key
                    .split_once(',')
                    .ok_or_else(|| AlgebraError::Parse(format!("bracket key {key:?} must be \"x,y\"")))?;
                let table = value
                    .as_table()
                    .ok_or_else(|| AlgebraError::Parse(format!("bracket.{key:?} must be an inline table")))?;
                let mut vec = Vec::new();
                for (name, c) in table {
                    vec.push((name.clone(), rational_value(c)?));
                }
                entries.push(((a.trim().to_string(), b.trim().to_string()), vec));
            }
        }
        Self::new(name, basis, entries)
    }

    /// Inverse of [`LieAlgebra::from_toml_str`].
    pub fn to_toml_string(&self) -> String {
        let mut out = format!("[algebra]\nname = {:?}\nbasis = [", self.name);
        out.push_str(&self.basis.iter().map(|b| format!("{b:?}")).collect::<Vec<_>>().join(", "));
        out.push_str("]\n");
        for (&(i, j), v) in &self.brackets {
            let parts: Vec<String> = v
                .iter()
                .map(|(k, c)| format!("{} = \"{}\"", self.basis[*k], format_rational(c)))
                .collect();
            out.push_str(&format!("bracket.\"{},{}\" = {{ {} }}\n", self.basis[i], self.basis[j], parts.join(", ")));
        }
        out
    }
}

fn negate(v: &SparseVector) -> SparseVector {
    v.iter().map(|(k, c)| (*k, -c)).collect()
}

pub(crate) fn rational_value(v: &toml::Value) -> Result<Rational, AlgebraError> {
    match v {
        toml::Value::Integer(n) => Ok(int(*n)),
        toml::Value::String(s) => {
            parse_rational(s).ok_or_else(|| AlgebraError::Parse(format!("invalid rational {s:?}")))
        }
        other => Err(AlgebraError::Parse(format!(
            "expected an integer or \"p/q\" string, got {other}"
        ))),
    }
}

impl fmt::Display for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.name, self.basis.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SL2: &str = r#"
[algebra]
name = "sl2"
basis = ["e", "h", "f"]
bracket."h,e" = { e = 2 }
bracket."h,f" = { f = "-2" }
bracket."e,f" = { h = "1/1" }
"#;

    #[test]
    fn gl1_is_abelian() {
        let g = LieAlgebra::from_toml_str("[algebra]\nname = \"gl1\"\nbasis = [\"N\"]\n").unwrap();
        assert_eq!(g.dim(), 1);
        assert!(g.bracket(0, 0).is_empty());
        assert_eq!(g, LieAlgebra::gl1());
    }

    #[test]
    fn sl2_text_matches_builtin() {
        let g = LieAlgebra::from_toml_str(SL2).unwrap();
        assert_eq!(g, LieAlgebra::sl2());
        assert_eq!(g.bracket(0, 1), [(0, int(-2))].into_iter().collect());
    }

    #[test]
    fn broken_sl2_fails_jacobi() {
        // [e,[f,h]] + [f,[h,e]] + [h,[e,f]] = 2e - 2e + 2e = 2e
        let text = SL2.replace("bracket.\"e,f\" = { h = \"1/1\" }", "bracket.\"e,f\" = { e = 1 }");
        match LieAlgebra::from_toml_str(&text) {
            Err(AlgebraError::Jacobi(triple)) => {
                let mut t = triple.to_vec();
                t.sort();
                assert_eq!(t, vec!["e", "f", "h"]);
            }
            other => panic!("expected Jacobi failure, got {other:?}"),
        }
    }

    #[test]
    fn inconsistent_antisymmetry_rejected() {
        let text = format!("{SL2}bracket.\"f,e\" = {{ h = 1 }}\n");
        assert!(matches!(LieAlgebra::from_toml_str(&text), Err(AlgebraError::Antisymmetry { .. })));
        let ok = format!("{SL2}bracket.\"f,e\" = {{ h = -1 }}\n");
        assert_eq!(LieAlgebra::from_toml_str(&ok).unwrap(), LieAlgebra::sl2());
    }

    #[test]
    fn duplicate_basis_rejected() {
        let text = "[algebra]\nbasis = [\"x\", \"x\"]\n";
        assert_eq!(LieAlgebra::from_toml_str(text), Err(AlgebraError::DuplicateBasis("x".into())));
    }

    #[test]
    fn toml_round_trip() {
        let g = LieAlgebra::sl2();
        assert_eq!(LieAlgebra::from_toml_str(&g.to_toml_string()).unwrap(), g);
    }
}
