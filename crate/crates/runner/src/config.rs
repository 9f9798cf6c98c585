//! Run configurations: a TOML document with `[algebra]`, `[modules]`,
//! `[twining]` and `[checks]` sections.
//!
//! ```toml
//! [algebra]
//! builtin = "gl1"
//!
//! [modules]
//! gl1_weights = [-1, 0, 1]
//!
//! [twining]
//! K = "(N^3 + 5*N)/6"
//! gamma = "-1"
//!
//! [checks]
//! run = ["pentagon", "hexagons"]
//! max_tuple_rank = 4
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_complex::Complex64;
use premon_core::algebra::{gl1_module_over, sl2_module_over, AlgebraError, LieAlgebra, ModuleRep, NCPolynomial};
use premon_core::algebra::parse_expression;
use premon_core::linalg::{format_rational, parse_rational, GammaValue, Rational, RationalMatrix};
use serde::Deserialize;
use toml::Spanned;

/// Largest tensor dimension a single check may act on.
pub const MAX_TUPLE_DIM: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("line {line}, column {column}: {message}")]
    At { line: usize, column: usize, message: String },
    #[error("{0}")]
    Invalid(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraSource {
    Builtin(String),
    File(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleSpec {
    Gl1Weight(i64),
    Sl2TwoJ(u32),
    /// A TOML file of `[[module]]` tables with explicit action matrices.
    File(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckKind {
    Pentagon,
    Hexagons,
    Symmetry,
    QSquare,
    Quasi,
    Naturality,
    Ribbon,
    Twist,
}

impl CheckKind {
    pub const ALL: [CheckKind; 8] = [
        CheckKind::Pentagon,
        CheckKind::Hexagons,
        CheckKind::Symmetry,
        CheckKind::QSquare,
        CheckKind::Quasi,
        CheckKind::Naturality,
        CheckKind::Ribbon,
        CheckKind::Twist,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CheckKind::Pentagon => "pentagon",
            CheckKind::Hexagons => "hexagons",
            CheckKind::Symmetry => "symmetry",
            CheckKind::QSquare => "q_square",
            CheckKind::Quasi => "quasi",
            CheckKind::Naturality => "naturality",
            CheckKind::Ribbon => "ribbon",
            CheckKind::Twist => "twist",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.as_str() == name)
    }

    /// Number of module slots in the largest tuple the suite enumerates.
    pub fn rank(&self) -> usize {
        match self {
            CheckKind::Pentagon | CheckKind::QSquare => 4,
            CheckKind::Hexagons | CheckKind::Quasi | CheckKind::Naturality => 3,
            CheckKind::Symmetry | CheckKind::Ribbon | CheckKind::Twist => 2,
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub algebra: AlgebraSource,
    pub lie: Arc<LieAlgebra>,
    pub modules: Vec<ModuleSpec>,
    pub k: NCPolynomial,
    pub gamma: GammaValue,
    pub checks: BTreeSet<CheckKind>,
    pub require_s_odd: bool,
    pub max_tuple_rank: usize,
    /// Directory that relative file paths are resolved against.
    pub base_dir: PathBuf,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    algebra: RawAlgebra,
    modules: RawModules,
    twining: RawTwining,
    checks: RawChecks,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    builtin: Option<String>,
    file: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModules {
    gl1_weights: Option<Vec<i64>>,
    sl2_two_j: Option<Vec<u32>>,
    file: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTwining {
    #[serde(rename = "K")]
    k: Spanned<String>,
    gamma: Option<Spanned<RawGamma>>,
    #[serde(default)]
    require_s_odd: bool,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawGamma {
    Int(i64),
    Text(String),
    Pair { re: f64, im: f64 },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawChecks {
    run: Vec<Spanned<String>>,
    max_tuple_rank: Option<Spanned<i64>>,
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn at(text: &str, offset: usize, message: impl Into<String>) -> ConfigError {
    let (line, column) = line_col(text, offset);
    ConfigError::At {
        line,
        column,
        message: message.into(),
    }
}

fn read(path: &Path) -> Result<String, ConfigError> {
    std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Reads and parses a configuration file; relative paths inside it resolve
/// against the file's directory.
pub fn load_config(path: &Path) -> Result<RunConfig, ConfigError> {
    let text = read(path)?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    parse_config(&text, &base)
}

pub fn parse_config(text: &str, base_dir: &Path) -> Result<RunConfig, ConfigError> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| match e.span() {
        Some(span) => at(text, span.start, e.message().to_string()),
        None => ConfigError::Invalid(e.message().to_string()),
    })?;

    let algebra = match (raw.algebra.builtin, raw.algebra.file) {
        (Some(name), None) => AlgebraSource::Builtin(name),
        (None, Some(file)) => AlgebraSource::File(file),
        _ => return Err(ConfigError::Invalid("[algebra] needs exactly one of `builtin` or `file`".into())),
    };
    let lie = Arc::new(match &algebra {
        AlgebraSource::Builtin(name) => LieAlgebra::builtin(name)
            .ok_or_else(|| ConfigError::Invalid(format!("unknown builtin algebra {name:?} (expected gl1 or sl2)")))?,
        AlgebraSource::File(file) => LieAlgebra::from_toml_str(&read(&base_dir.join(file))?)
            .map_err(|e| ConfigError::Invalid(format!("{file}: {e}")))?,
    });

    let mut modules = Vec::new();
    if let Some(ws) = raw.modules.gl1_weights {
        if lie.dim() != 1 {
            return Err(ConfigError::Invalid("gl1_weights needs a one-dimensional algebra".into()));
        }
        modules.extend(ws.into_iter().map(ModuleSpec::Gl1Weight));
    }
    if let Some(js) = raw.modules.sl2_two_j {
        if ["e", "h", "f"].iter().any(|n| lie.index_of(n).is_none()) || lie.dim() != 3 {
            return Err(ConfigError::Invalid("sl2_two_j needs an algebra with basis e, h, f".into()));
        }
        modules.extend(js.into_iter().map(ModuleSpec::Sl2TwoJ));
    }
    if let Some(file) = raw.modules.file {
        modules.push(ModuleSpec::File(file));
    }
    if modules.is_empty() {
        return Err(ConfigError::Invalid("[modules] is empty".into()));
    }

    let k_span = raw.twining.k.span();
    let k = parse_expression(raw.twining.k.get_ref(), &lie).map_err(|e| match e {
        // the span starts at the opening quote and columns are 1-based
        AlgebraError::Expr { column, message } => at(text, k_span.start + column, message),
        AlgebraError::UnknownGenerator { name, column } => {
            at(text, k_span.start + column, format!("unknown generator {name:?}"))
        }
        other => at(text, k_span.start, other.to_string()),
    })?;

    let gamma = match raw.twining.gamma {
        None => GammaValue::minus_one(),
        Some(g) => {
            let span = g.span();
            match g.into_inner() {
                RawGamma::Int(n) => GammaValue::Exact(Rational::from_integer(n.into())),
                RawGamma::Text(s) => GammaValue::Exact(
                    parse_rational(&s).ok_or_else(|| at(text, span.start, format!("gamma {s:?} is not a rational p/q")))?,
                ),
                RawGamma::Pair { re, im } => GammaValue::Complex(Complex64::new(re, im)),
            }
        }
    };
    if gamma.is_zero() {
        return Err(ConfigError::Invalid("gamma must be nonzero".into()));
    }

    let max_tuple_rank = match raw.checks.max_tuple_rank {
        None => 4,
        Some(r) => {
            let v = *r.get_ref();
            if !(2..=4).contains(&v) {
                return Err(at(
                    text,
                    r.span().start,
                    format!("max_tuple_rank {v} is outside 2..4 (rank-n tuples over m modules run m^n checks)"),
                ));
            }
            v as usize
        }
    };
    let mut checks = BTreeSet::new();
    for c in &raw.checks.run {
        let kind = CheckKind::parse(c.get_ref()).ok_or_else(|| {
            let known: Vec<_> = CheckKind::ALL.iter().map(|k| k.as_str()).collect();
            at(text, c.span().start, format!("unknown check {:?} (known: {})", c.get_ref(), known.join(", ")))
        })?;
        if kind.rank() > max_tuple_rank {
            return Err(at(
                text,
                c.span().start,
                format!("check {kind} needs tuples of rank {} but max_tuple_rank is {max_tuple_rank}", kind.rank()),
            ));
        }
        checks.insert(kind);
    }
    if checks.is_empty() {
        return Err(ConfigError::Invalid("[checks] run is empty".into()));
    }

    Ok(RunConfig {
        algebra,
        lie,
        modules,
        k,
        gamma,
        checks,
        require_s_odd: raw.twining.require_s_odd,
        max_tuple_rank,
        base_dir: base_dir.to_path_buf(),
    })
}

fn toml_string(s: &str) -> String {
    toml::Value::String(s.to_string()).to_string()
}

impl RunConfig {
    /// Canonical text form; [`parse_config`] of it gives back an equal config.
    pub fn emit(&self) -> String {
        let mut out = String::from("[algebra]\n");
        match &self.algebra {
            AlgebraSource::Builtin(n) => out += &format!("builtin = {}\n", toml_string(n)),
            AlgebraSource::File(f) => out += &format!("file = {}\n", toml_string(f)),
        }
        out += "\n[modules]\n";
        let weights: Vec<String> = self
            .modules
            .iter()
            .filter_map(|m| match m {
                ModuleSpec::Gl1Weight(n) => Some(n.to_string()),
                _ => None,
            })
            .collect();
        let two_js: Vec<String> = self
            .modules
            .iter()
            .filter_map(|m| match m {
                ModuleSpec::Sl2TwoJ(j) => Some(j.to_string()),
                _ => None,
            })
            .collect();
        if !weights.is_empty() {
            out += &format!("gl1_weights = [{}]\n", weights.join(", "));
        }
        if !two_js.is_empty() {
            out += &format!("sl2_two_j = [{}]\n", two_js.join(", "));
        }
        for m in &self.modules {
            if let ModuleSpec::File(f) = m {
                out += &format!("file = {}\n", toml_string(f));
            }
        }
        out += "\n[twining]\n";
        out += &format!("K = {}\n", toml_string(&self.k_text()));
        match &self.gamma {
            GammaValue::Exact(q) => out += &format!("gamma = {}\n", toml_string(&format_rational(q))),
            GammaValue::Complex(c) => out += &format!("gamma = {{ re = {:?}, im = {:?} }}\n", c.re, c.im),
        }
        out += &format!("require_s_odd = {}\n", self.require_s_odd);
        out += "\n[checks]\n";
        let names: Vec<String> = self.checks.iter().map(|c| toml_string(c.as_str())).collect();
        out += &format!("run = [{}]\n", names.join(", "));
        out += &format!("max_tuple_rank = {}\n", self.max_tuple_rank);
        out
    }

    pub fn k_text(&self) -> String {
        self.k.display(self.lie.basis()).to_string()
    }

    pub fn gamma_label(&self) -> String {
        gamma_label(&self.gamma)
    }

    /// Builds the configured modules in order, rejecting duplicate labels.
    pub fn build_modules(&self) -> Result<Vec<ModuleRep>, ConfigError> {
        let mut out: Vec<ModuleRep> = Vec::new();
        for spec in &self.modules {
            match spec {
                ModuleSpec::Gl1Weight(n) => out.push(gl1_module_over(&self.lie, *n)),
                ModuleSpec::Sl2TwoJ(j) => out.push(
                    sl2_module_over(&self.lie, *j).map_err(|e| ConfigError::Invalid(e.to_string()))?,
                ),
                ModuleSpec::File(f) => out.extend(load_modules(&self.lie, &self.base_dir.join(f))?),
            }
        }
        let mut seen = BTreeSet::new();
        for m in &out {
            if !seen.insert(m.label().to_string()) {
                return Err(ConfigError::Invalid(format!("module {} is listed twice", m.label())));
            }
        }
        Ok(out)
    }
}

pub fn gamma_label(gamma: &GammaValue) -> String {
    match gamma {
        GammaValue::Exact(q) => format_rational(q),
        GammaValue::Complex(c) => format!("{:?}{:+?}i", c.re, c.im),
    }
}

fn rational_entry(v: &toml::Value) -> Option<Rational> {
    match v {
        toml::Value::Integer(n) => Some(Rational::from_integer((*n).into())),
        toml::Value::String(s) => parse_rational(s),
        _ => None,
    }
}

fn matrix_value(v: &toml::Value, dim: usize, what: &str) -> Result<RationalMatrix, ConfigError> {
    let bad = || ConfigError::Invalid(format!("{what}: expected a {dim}x{dim} array of integers or \"p/q\" strings"));
    let rows = v.as_array().ok_or_else(bad)?;
    let rows: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| r.as_array().ok_or_else(bad)?.iter().map(|x| rational_entry(x).ok_or_else(bad)).collect())
        .collect::<Result<_, _>>()?;
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(bad());
    }
    RationalMatrix::from_rows(rows).map_err(|_| bad())
}

/// Reads `[[module]]` tables: `label`, `dim`, and `actions` mapping basis
/// names to matrices (missing generators act as zero).
pub fn load_modules(lie: &Arc<LieAlgebra>, path: &Path) -> Result<Vec<ModuleRep>, ConfigError> {
    let text = read(path)?;
    let name = path.display().to_string();
    let doc: toml::Table = text.parse().map_err(|e: toml::de::Error| match e.span() {
        Some(span) => {
            let (line, column) = line_col(&text, span.start);
            ConfigError::Invalid(format!("{name}: line {line}, column {column}: {}", e.message()))
        }
        None => ConfigError::Invalid(format!("{name}: {}", e.message())),
    })?;
    let tables = doc
        .get("module")
        .and_then(|m| m.as_array())
        .ok_or_else(|| ConfigError::Invalid(format!("{name}: expected [[module]] tables")))?;
    let mut out = Vec::new();
    for (i, t) in tables.iter().enumerate() {
        let what = format!("{name}: module {}", i + 1);
        let label = t
            .get("label")
            .and_then(|l| l.as_str())
            .ok_or_else(|| ConfigError::Invalid(format!("{what}: missing label")))?;
        let dim = t
            .get("dim")
            .and_then(|d| d.as_integer())
            .filter(|d| *d > 0)
            .ok_or_else(|| ConfigError::Invalid(format!("{what}: missing positive dim")))? as usize;
        let mut named = Vec::new();
        if let Some(actions) = t.get("actions").and_then(|a| a.as_table()) {
            for (g, m) in actions {
                named.push((g.clone(), matrix_value(m, dim, &format!("{what}, action {g}"))?));
            }
        }
        let m = ModuleRep::from_named(lie.clone(), label, dim, named)
            .map_err(|e| ConfigError::Invalid(format!("{what}: {e}")))?;
        out.push(m);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const GL1: &str = r#"
[algebra]
builtin = "gl1"

[modules]
gl1_weights = [-1, 0, 1]

[twining]
K = "(N^3 + 5*N)/6"
gamma = "-1"

[checks]
run = ["pentagon", "symmetry"]
"#;

    fn parse(text: &str) -> Result<RunConfig, ConfigError> {
        parse_config(text, Path::new("."))
    }

    #[test]
    fn parses_rational_polynomial() {
        let c = parse(GL1).unwrap();
        assert_eq!(c.k.len(), 2);
        let manual = NCPolynomial::from_terms(vec![
            (vec![0], Rational::new(5.into(), 6.into())),
            (vec![0, 0, 0], Rational::new(1.into(), 6.into())),
        ]);
        assert_eq!(c.k, manual);
        assert_eq!(c.gamma, GammaValue::minus_one());
        assert_eq!(c.max_tuple_rank, 4);
        assert_eq!(c.build_modules().unwrap().len(), 3);
    }

    #[test]
    fn sl2_casimir_has_three_words() {
        let text = GL1
            .replace("builtin = \"gl1\"", "builtin = \"sl2\"")
            .replace("gl1_weights = [-1, 0, 1]", "sl2_two_j = [0, 2]")
            .replace("(N^3 + 5*N)/6", "(e*f + f*e + h^2/2)/4");
        let c = parse(&text).unwrap();
        assert_eq!(c.k.len(), 3);
        let labels: Vec<_> = c.build_modules().unwrap().iter().map(|m| m.label().to_string()).collect();
        assert_eq!(labels, ["V_0", "V_1"]);
    }

    #[test]
    fn primitive_k() {
        let c = parse(&GL1.replace("(N^3 + 5*N)/6", "N")).unwrap();
        assert_eq!(c.k, NCPolynomial::generator(0));
    }

    #[test]
    fn round_trip() {
        let c = parse(GL1).unwrap();
        assert_eq!(parse(&c.emit()).unwrap(), c);
        let complex = parse(&GL1.replace("gamma = \"-1\"", "gamma = { re = 0.5, im = -0.25 }")).unwrap();
        assert_eq!(parse(&complex.emit()).unwrap(), complex);
    }

    #[test]
    fn unknown_generator_has_position() {
        let err = parse(&GL1.replace("(N^3 + 5*N)/6", "N + x")).unwrap_err();
        // `K = "N + x"` sits on line 9; x is the 10th character
        assert!(matches!(err, ConfigError::At { line: 9, column: 10, .. }), "{err}");
        assert!(err.to_string().contains("\"x\""));
    }

    #[test]
    fn rejects_division_by_generator() {
        let err = parse(&GL1.replace("(N^3 + 5*N)/6", "1/N")).unwrap_err();
        assert!(matches!(err, ConfigError::At { line: 9, .. }));
    }

    #[test]
    fn rank_limits() {
        let err = parse(&format!("{GL1}max_tuple_rank = 5\n")).unwrap_err();
        assert!(err.to_string().contains("outside 2..4"));
        let err = parse(&format!("{GL1}max_tuple_rank = 3\n")).unwrap_err();
        assert!(err.to_string().contains("pentagon needs tuples of rank 4"));
    }

    #[test]
    fn rejects_unknown_check_and_empty_lists() {
        assert!(parse(&GL1.replace("\"symmetry\"", "\"bogus\"")).unwrap_err().to_string().contains("unknown check"));
        assert!(parse(&GL1.replace("[\"pentagon\", \"symmetry\"]", "[]")).is_err());
        assert!(parse(&GL1.replace("gl1_weights = [-1, 0, 1]", "")).is_err());
    }

    #[test]
    fn toml_syntax_error_has_position() {
        let err = parse("[algebra\nbuiltin = 1\n").unwrap_err();
        assert!(matches!(err, ConfigError::At { line: 1, .. }), "{err}");
    }

    #[test]
    fn duplicate_modules_rejected() {
        let c = parse(&GL1.replace("[-1, 0, 1]", "[1, 1]")).unwrap();
        assert!(c.build_modules().is_err());
    }

    #[test]
    fn modules_from_file() {
        let dir = std::env::temp_dir().join(format!("premon-config-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(
            dir.join("mods.toml"),
            "[[module]]\nlabel = \"W\"\ndim = 2\nactions = { e = [[0, 1], [0, 0]], h = [[1, 0], [0, -1]], f = [[0, 0], [1, 0]] }\n",
        )
        .unwrap();
        let text = GL1
            .replace("builtin = \"gl1\"", "builtin = \"sl2\"")
            .replace("gl1_weights = [-1, 0, 1]", "file = \"mods.toml\"")
            .replace("(N^3 + 5*N)/6", "(e*f + f*e + h^2/2)/4");
        let c = parse_config(&text, &dir).unwrap();
        let mods = c.build_modules().unwrap();
        assert_eq!(mods[0].label(), "W");
        assert_eq!(mods[0].dim(), 2);
        std::fs::remove_dir_all(dir).unwrap();
    }
}
