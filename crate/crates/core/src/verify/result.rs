//! Check outcomes and defect witnesses.

use std::any::Any;
use std::cmp::Ordering;
use std::fmt;
use std::time::Instant;

use num_complex::Complex64;

use crate::linalg::{rational_spectrum, Field, Matrix, RationalMatrix};
use crate::twined::TwinedError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DefectKind {
    /// Eigenvalues of `path₁ · path₂⁻¹`.
    Spectrum,
    /// Largest absolute entry of `path₁ − path₂`.
    MaxEntryDifference,
}

impl DefectKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            DefectKind::Spectrum => "spectrum",
            DefectKind::MaxEntryDifference => "max_entry_difference",
        }
    }
}

/// Serialized defect: each value is `["p/q"]` (exact) or `[re, im]` (complex).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Defect {
    pub kind: DefectKind,
    pub values: Vec<Vec<String>>,
    /// Algebraic multiplicities, for spectrum defects.
    pub multiplicities: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub check_id: String,
    /// Leaf module labels in domain order.
    pub objects: Vec<String>,
    /// Bracketed domain, e.g. `(M_1⊗M_1)⊗(M_1⊗M_1)`.
    pub domain: Option<String>,
    /// Generator, placement or other qualifier distinguishing results on the
    /// same objects.
    pub detail: Option<String>,
    pub gamma: String,
    pub status: Status,
    pub defect: Option<Defect>,
    /// First basis vector (column) on which the two sides differ.
    pub witness: Option<usize>,
    pub error: Option<String>,
    pub duration_ms: f64,
}

impl CheckResult {
    pub fn new(check_id: &str, objects: Vec<String>, gamma: &str) -> Self {
        CheckResult {
            check_id: check_id.to_string(),
            objects,
            domain: None,
            detail: None,
            gamma: gamma.to_string(),
            status: Status::Pass,
            defect: None,
            witness: None,
            error: None,
            duration_ms: 0.0,
        }
    }

    pub fn with_domain(mut self, domain: impl Into<String>) -> Self {
        self.domain = Some(domain.into());
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn with_outcome(mut self, outcome: Outcome) -> Self {
        self.status = outcome.status;
        self.defect = outcome.defect;
        self.witness = outcome.witness;
        self
    }

    pub fn with_error(mut self, code: &str, message: impl fmt::Display) -> Self {
        self.status = Status::Error;
        self.error = Some(format!("{code}: {message}"));
        self
    }

    pub fn error_code(&self) -> Option<&str> {
        self.error.as_deref().and_then(|e| e.split(':').next())
    }

    /// Deterministic report order: check id, then objects, then detail.
    pub fn sort_key(&self) -> (&str, &[String], Option<&str>, Option<&str>) {
        (&self.check_id, &self.objects, self.domain.as_deref(), self.detail.as_deref())
    }
}

/// Status with its defect data, before labelling.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub status: Status,
    pub defect: Option<Defect>,
    pub witness: Option<usize>,
}

impl Outcome {
    pub fn pass() -> Self {
        Outcome {
            status: Status::Pass,
            defect: None,
            witness: None,
        }
    }
}

/// Runs `f`, recording wall time; errors become `status = error`.
pub fn timed(base: CheckResult, f: impl FnOnce() -> Result<Outcome, TwinedError>) -> CheckResult {
    let start = Instant::now();
    let mut out = match f() {
        Ok(o) => base.with_outcome(o),
        Err(e) => base.with_error(e.code(), &e),
    };
    out.duration_ms = start.elapsed().as_secs_f64() * 1000.0;
    out
}

/// Compares two parallel paths. On mismatch the defect is the spectrum of
/// `path₁ · path₂⁻¹` when `path₂` is invertible and that spectrum is
/// computable, else the largest entry difference.
pub fn compare_paths<F: Field>(p1: &Matrix<F>, p2: &Matrix<F>) -> Outcome {
    if p1.approx_eq(p2) {
        return Outcome::pass();
    }
    let witness = p1.first_differing_column(p2);
    let defect = p2
        .inverse()
        .ok()
        .and_then(|inv| spectrum_defect(&p1.matmul(&inv).expect("square")))
        .unwrap_or_else(|| max_difference_defect(p1, p2));
    Outcome {
        status: Status::Fail,
        defect: Some(defect),
        witness,
    }
}

/// `m = I`, with the spectrum of `m` as defect.
pub fn compare_identity<F: Field>(m: &Matrix<F>) -> Outcome {
    if m.approx_eq(&Matrix::identity(m.rows())) {
        return Outcome::pass();
    }
    let defect = spectrum_defect(m).unwrap_or_else(|| max_difference_defect(m, &Matrix::identity(m.rows())));
    Outcome {
        status: Status::Fail,
        defect: Some(defect),
        witness: m.first_differing_column(&Matrix::identity(m.rows())),
    }
}

fn max_difference_defect<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Defect {
    let mut best: Option<(f64, F)> = None;
    for (x, y) in a.entries().iter().zip(b.entries()) {
        let d = x.distance(y);
        if best.as_ref().is_none_or(|(bd, _)| d > *bd) {
            best = Some((d, x.minus(y).abs_value()));
        }
    }
    Defect {
        kind: DefectKind::MaxEntryDifference,
        values: vec![best.map(|(_, v)| v).unwrap_or_else(F::zero).report_parts()],
        multiplicities: vec![],
    }
}

/// Eigenvalues with multiplicities: exact for rational matrices whose
/// characteristic polynomial splits over Q, and for any diagonal matrix.
pub fn spectrum_defect<F: Field>(m: &Matrix<F>) -> Option<Defect> {
    let mut groups: Vec<(F, usize)> = if m.is_diagonal() {
        let mut out: Vec<(F, usize)> = Vec::new();
        for d in m.diagonal_entries() {
            match out.iter_mut().find(|(v, _)| v.approx_eq(&d)) {
                Some((_, n)) => *n += 1,
                None => out.push((d, 1)),
            }
        }
        out
    } else if let Some(exact) = (m as &dyn Any).downcast_ref::<RationalMatrix>() {
        rational_spectrum(exact)
            .ok()??
            .into_iter()
            .map(|(q, n)| (F::from_rational(&q), n))
            .collect()
    } else {
        return None;
    };
    groups.sort_by(|a, b| order_values(&a.0, &b.0));
    Some(Defect {
        kind: DefectKind::Spectrum,
        values: groups.iter().map(|(v, _)| v.report_parts()).collect(),
        multiplicities: groups.iter().map(|(_, n)| *n).collect(),
    })
}

fn order_values<F: Field>(a: &F, b: &F) -> Ordering {
    let a_any = a as &dyn Any;
    let b_any = b as &dyn Any;
    if let (Some(x), Some(y)) = (
        a_any.downcast_ref::<crate::linalg::Rational>(),
        b_any.downcast_ref::<crate::linalg::Rational>(),
    ) {
        return x.cmp(y);
    }
    if let (Some(x), Some(y)) = (a_any.downcast_ref::<Complex64>(), b_any.downcast_ref::<Complex64>()) {
        return x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::field::{int, rat};

    #[test]
    fn identity_passes() {
        let i: RationalMatrix = Matrix::identity(3);
        assert_eq!(compare_identity(&i).status, Status::Pass);
    }

    #[test]
    fn scalar_minus_one_defect() {
        let m = RationalMatrix::scalar(1, int(-1));
        let o = compare_identity(&m);
        assert_eq!(o.status, Status::Fail);
        let d = o.defect.unwrap();
        assert_eq!(d.kind, DefectKind::Spectrum);
        assert_eq!(d.values, vec![vec!["-1/1".to_string()]]);
        assert_eq!(d.multiplicities, vec![1]);
        assert_eq!(o.witness, Some(0));
    }

    #[test]
    fn ratio_defect() {
        let a = RationalMatrix::scalar(1, int(2));
        let b = RationalMatrix::scalar(1, rat(1, 2));
        let d = compare_paths(&a, &b).defect.unwrap();
        assert_eq!(d.values, vec![vec!["4/1".to_string()]]);
    }

    #[test]
    fn singular_paths_use_entry_difference() {
        let a = RationalMatrix::diagonal(&[int(1), int(0)]);
        let b = RationalMatrix::diagonal(&[int(0), int(0)]);
        let d = compare_paths(&a, &b).defect.unwrap();
        assert_eq!(d.kind, DefectKind::MaxEntryDifference);
        assert_eq!(d.values, vec![vec!["1/1".to_string()]]);
    }

    #[test]
    fn non_diagonal_rational_spectrum() {
        let swap: RationalMatrix = Matrix::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]).unwrap();
        let d = compare_identity(&swap).defect.unwrap();
        assert_eq!(d.values, vec![vec!["-1/1".to_string()], vec!["1/1".to_string()]]);
        assert_eq!(d.multiplicities, vec![1, 1]);
    }

    #[test]
    fn complex_defects() {
        let m: Matrix<Complex64> = Matrix::diagonal(&[Complex64::new(4.0, 0.0)]);
        let d = compare_identity(&m).defect.unwrap();
        assert_eq!(d.values, vec![vec!["4.00000000000e0".to_string(), "0.00000000000e0".to_string()]]);
        let swap: Matrix<Complex64> = Matrix::from_rows(vec![
            vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        ])
        .unwrap();
        assert_eq!(compare_identity(&swap).defect.unwrap().kind, DefectKind::MaxEntryDifference);
    }
}
