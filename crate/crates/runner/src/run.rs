//! Validation and suite orchestration.

use std::collections::BTreeMap;
use std::time::Instant;

use premon_core::algebra::{intertwiner_basis, ModuleRep};
use premon_core::linalg::{Field, GammaValue};
use premon_core::twined::{validate_central, CentralElement, Morphism, Obj, TwinedData, ValidationReport};
use premon_core::verify::{self, CheckResult, NaturalityKind, Status};
use rayon::prelude::*;

use crate::config::{CheckKind, ConfigError, RunConfig, MAX_TUPLE_DIM};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOptions {
    /// Worker threads; 0 means one per core.
    pub jobs: usize,
    /// Also run the quasi-triangular variant of the second fusion relation.
    pub variant_fusion: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            jobs: 1,
            variant_fusion: false,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("configuration error: {0}")]
    Config(#[from] ConfigError),
    #[error("validation failed: {}", .0.issues.first().map(|i| i.to_string()).unwrap_or_default())]
    Validation(ValidationReport),
    #[error("worker pool: {0}")]
    Pool(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) | RunError::Validation(_) => 2,
            RunError::Pool(_) => 1,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub error: usize,
}

impl Counts {
    pub fn total(&self) -> usize {
        self.pass + self.fail + self.error
    }

    fn add(&mut self, s: Status) {
        match s {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
            Status::Error => self.error += 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub config: RunConfig,
    pub validation: ValidationReport,
    /// Sorted by [`CheckResult::sort_key`].
    pub results: Vec<CheckResult>,
    pub wall_ms: f64,
}

impl RunReport {
    pub fn totals(&self) -> Counts {
        let mut c = Counts::default();
        for r in &self.results {
            c.add(r.status);
        }
        c
    }

    pub fn by_check(&self) -> BTreeMap<&str, Counts> {
        let mut out: BTreeMap<&str, Counts> = BTreeMap::new();
        for r in &self.results {
            out.entry(r.check_id.as_str()).or_default().add(r.status);
        }
        out
    }
}

fn largest_dim(config: &RunConfig, mods: &[ModuleRep]) -> Result<(), ConfigError> {
    let d = mods.iter().map(|m| m.dim()).max().unwrap_or(1);
    for kind in &config.checks {
        // naturality puts a tensor square in one of three slots
        let exp = if *kind == CheckKind::Naturality { 4 } else { kind.rank() };
        let total = d.checked_pow(exp as u32).unwrap_or(usize::MAX);
        if total > MAX_TUPLE_DIM {
            return Err(ConfigError::Invalid(format!(
                "check {kind} would act on a {total}-dimensional space (largest module has dimension {d}); \
                 the limit is {MAX_TUPLE_DIM}"
            )));
        }
    }
    Ok(())
}

/// Builds the modules and runs the preconditions on K.
pub fn validate(config: &RunConfig) -> Result<(Vec<ModuleRep>, ValidationReport), ConfigError> {
    let mods = config.build_modules()?;
    largest_dim(config, &mods)?;
    let k = CentralElement::new(config.k.clone());
    let report = validate_central(&k, &mods, config.require_s_odd);
    Ok((mods, report))
}

/// Runs validation and then every selected suite. Fail verdicts never stop
/// the run; a failed precondition does.
pub fn run(config: &RunConfig, opts: &RunOptions) -> Result<RunReport, RunError> {
    let start = Instant::now();
    let (mods, validation) = validate(config)?;
    if !validation.passed() {
        return Err(RunError::Validation(validation));
    }
    let k = CentralElement::new(config.k.clone());
    let label = config.gamma_label();
    let mut results = match &config.gamma {
        GammaValue::Exact(q) => {
            let t = TwinedData::new(k, q.clone(), label).map_err(|e| ConfigError::Invalid(e.to_string()))?;
            execute(&t, &mods, config, opts)?
        }
        GammaValue::Complex(c) => {
            let t = TwinedData::new(k, *c, label).map_err(|e| ConfigError::Invalid(e.to_string()))?;
            execute(&t, &mods, config, opts)?
        }
    };
    results.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(RunReport {
        config: config.clone(),
        validation,
        results,
        wall_ms: start.elapsed().as_secs_f64() * 1000.0,
    })
}

type Task<'a> = Box<dyn Fn() -> Vec<CheckResult> + Send + Sync + 'a>;

fn execute<F: Field>(
    t: &TwinedData<F>,
    mods: &[ModuleRep],
    config: &RunConfig,
    opts: &RunOptions,
) -> Result<Vec<CheckResult>, RunError> {
    let leaves: Vec<Obj> = mods.iter().cloned().map(Obj::leaf).collect();
    let tasks = build_tasks(t, mods, &leaves, config, opts);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| RunError::Pool(e.to_string()))?;
    Ok(pool.install(|| tasks.par_iter().flat_map_iter(|task| task()).collect()))
}

fn tuples(n: usize, rank: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..n).map(move |i| {
                    let mut p = prefix.clone();
                    p.push(i);
                    p
                })
            })
            .collect();
    }
    out
}

fn build_tasks<'a, F: Field>(
    t: &'a TwinedData<F>,
    mods: &'a [ModuleRep],
    leaves: &'a [Obj],
    config: &RunConfig,
    opts: &RunOptions,
) -> Vec<Task<'a>> {
    let n = mods.len();
    let mut tasks: Vec<Task<'a>> = Vec::new();
    for kind in &config.checks {
        match kind {
            CheckKind::Pentagon => {
                for p in tuples(n, 4) {
                    tasks.push(Box::new(move || {
                        verify::check_pentagon(t, &leaves[p[0]], &leaves[p[1]], &leaves[p[2]], &leaves[p[3]])
                    }));
                }
            }
            CheckKind::QSquare => {
                for p in tuples(n, 4) {
                    tasks.push(Box::new(move || {
                        vec![verify::check_q_sigma_square(t, &leaves[p[0]], &leaves[p[1]], &leaves[p[2]], &leaves[p[3]])]
                    }));
                }
            }
            CheckKind::Hexagons => {
                for p in tuples(n, 3) {
                    tasks.push(Box::new(move || {
                        let (u, v, w) = (&leaves[p[0]], &leaves[p[1]], &leaves[p[2]]);
                        vec![verify::check_hexagon_i(t, u, v, w), verify::check_hexagon_ii(t, u, v, w)]
                    }));
                }
            }
            CheckKind::Symmetry => {
                // σσ on (U,V) and on (V,U) are conjugate, so unordered pairs suffice
                for i in 0..n {
                    for j in i..n {
                        tasks.push(Box::new(move || vec![verify::check_symmetry(t, &leaves[i], &leaves[j])]));
                    }
                }
            }
            CheckKind::Quasi => {
                for p in tuples(n, 2) {
                    tasks.push(Box::new(move || verify::check_triangularity(t, &mods[p[0]], &mods[p[1]])));
                }
                let variant = opts.variant_fusion;
                for p in tuples(n, 3) {
                    tasks.push(Box::new(move || {
                        let (u, v, w) = (&mods[p[0]], &mods[p[1]], &mods[p[2]]);
                        let mut out = verify::check_coassociativity(t, u, v, w);
                        out.push(verify::check_fusion_left(t, u, v, w));
                        out.push(verify::check_fusion_right(t, u, v, w));
                        if variant {
                            out.push(verify::check_fusion_right_variant(t, u, v, w));
                        }
                        out
                    }));
                }
            }
            CheckKind::Twist => {
                for p in tuples(n, 2) {
                    tasks.push(Box::new(move || verify::check_drinfeld_twist_trivial(t, &mods[p[0]], &mods[p[1]])));
                }
            }
            CheckKind::Ribbon => tasks.push(Box::new(move || verify::check_ribbon(t, mods))),
            CheckKind::Naturality => tasks.extend(naturality_tasks(t, leaves)),
        }
    }
    tasks
}

/// Intertwiners between the configured modules and their tensor squares.
fn intertwiners<F: Field>(leaves: &[Obj]) -> Vec<(Morphism<F>, String)> {
    let mut objs: Vec<Obj> = leaves.to_vec();
    for x in leaves {
        objs.push(Obj::tensor(x, x).expect("same algebra"));
    }
    let mut out = Vec::new();
    for a in &objs {
        for b in &objs {
            let basis = intertwiner_basis(a.module(), b.module()).expect("same algebra");
            for (i, m) in basis.into_iter().enumerate() {
                let detail = format!("f={}→{}#{}", a, b, i + 1);
                out.push((Morphism::new(a.clone(), b.clone(), m.embed()), detail));
            }
        }
    }
    out
}

fn naturality_tasks<'a, F: Field>(t: &'a TwinedData<F>, leaves: &'a [Obj]) -> Vec<Task<'a>> {
    let n = leaves.len();
    let mut tasks: Vec<Task<'a>> = Vec::new();
    for (f, detail) in intertwiners::<F>(leaves) {
        let f = std::sync::Arc::new(f);
        for p in tuples(n, 2) {
            for placement in 0..3 {
                let (f, detail, p) = (f.clone(), detail.clone(), p.clone());
                tasks.push(Box::new(move || {
                    let others = [&leaves[p[0]], &leaves[p[1]]];
                    vec![verify::check_naturality(t, NaturalityKind::Associator, &f, &others, placement, &detail)]
                }));
            }
        }
        for i in 0..n {
            for placement in 0..2 {
                let f = f.clone();
                let detail = detail.clone();
                tasks.push(Box::new(move || {
                    vec![verify::check_naturality(t, NaturalityKind::Braiding, &f, &[&leaves[i]], placement, &detail)]
                }));
            }
        }
    }
    tasks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;
    use std::path::Path;

    fn config(body: &str) -> RunConfig {
        parse_config(body, Path::new(".")).unwrap()
    }

    const SMALL: &str = r#"
[algebra]
builtin = "gl1"
[modules]
gl1_weights = [0, 1]
[twining]
K = "(N^3 + 5*N)/6"
[checks]
run = ["pentagon", "hexagons", "symmetry", "q_square", "quasi", "naturality", "twist"]
"#;

    #[test]
    fn tuple_enumeration() {
        assert_eq!(tuples(3, 2).len(), 9);
        assert_eq!(tuples(2, 3)[1], vec![0, 0, 1]);
    }

    #[test]
    fn counts_per_suite() {
        let report = run(&config(SMALL), &RunOptions::default()).unwrap();
        let by = report.by_check();
        assert_eq!(by["pentagon"].total(), 16);
        assert_eq!(by["pentagon.q_methods"].pass, 16);
        assert_eq!(by["q_square"].total(), 16);
        assert_eq!(by["hexagon_i"].total(), 8);
        assert_eq!(by["symmetry"].total(), 3);
        assert_eq!(by["quasi.triangularity"].total(), 4);
        assert_eq!(by["quasi.fusion_right"].total(), 8);
        assert!(!by.contains_key("quasi.fusion_right_variant"));
        assert_eq!(report.totals().total(), report.results.len());
        assert_eq!(by["pentagon"].fail, 1);
        let fail = report.results.iter().find(|r| r.check_id == "pentagon" && r.status == Status::Fail).unwrap();
        assert_eq!(fail.objects, ["M_1", "M_1", "M_1", "M_1"]);
    }

    #[test]
    fn results_are_sorted_and_job_independent() {
        let c = config(SMALL);
        let a = run(&c, &RunOptions::default()).unwrap();
        let b = run(&c, &RunOptions { jobs: 4, variant_fusion: false }).unwrap();
        let strip = |r: &RunReport| {
            r.results
                .iter()
                .map(|x| CheckResult { duration_ms: 0.0, ..x.clone() })
                .collect::<Vec<_>>()
        };
        assert_eq!(strip(&a), strip(&b));
        assert!(a.results.windows(2).all(|w| w[0].sort_key() <= w[1].sort_key()));
    }

    #[test]
    fn variant_flag_adds_results() {
        let report = run(&config(SMALL), &RunOptions { jobs: 1, variant_fusion: true }).unwrap();
        assert_eq!(report.by_check()["quasi.fusion_right_variant"].total(), 8);
    }

    #[test]
    fn validation_failure_stops_the_run() {
        let c = config(&SMALL.replace("(N^3 + 5*N)/6", "N/2"));
        match run(&c, &RunOptions::default()) {
            Err(e @ RunError::Validation(_)) => assert_eq!(e.exit_code(), 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn oversized_tuples_rejected() {
        let c = config(
            r#"
[algebra]
builtin = "sl2"
[modules]
sl2_two_j = [4]
[twining]
K = "(e*f + f*e + h^2/2)/4"
[checks]
run = ["pentagon"]
"#,
        );
        let err = run(&c, &RunOptions::default()).unwrap_err();
        assert!(err.to_string().contains("625-dimensional"), "{err}");
    }
}
