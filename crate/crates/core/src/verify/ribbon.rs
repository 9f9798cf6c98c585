//! The element u, the ribbon element v = u = γ^{−K²}, and the ribbon
//! conditions on configured modules.

use num_bigint::BigInt;

use crate::algebra::{tensor_modules, trivial_module, ModuleRep, NCPolynomial};
use crate::linalg::{gamma_power_in, integer_spectrum, Field, Matrix, Rational, RationalMatrix, UniPoly};
use crate::twined::{TwinedData, TwinedError};

use super::result::{compare_paths, timed, CheckResult, Outcome, Status};

/// How u is obtained on a module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UMethod {
    /// `u = Σ_j S(b_j) α a_j` with α = I and R̃ expanded through eigenprojector
    /// polynomials of K.
    SpectralExpansion,
    /// `u = γ^{−K²}`.
    ClosedForm,
}

fn spectrum_err(context: &str, source: crate::linalg::SpectrumError) -> TwinedError {
    TwinedError::Spectrum {
        context: context.to_string(),
        source,
    }
}

/// The evaluated matrices `K`, `S(K)`, `S²(K)` on a module with the shared
/// interpolation nodes (the union of their integer spectra).
struct KForms {
    k: RationalMatrix,
    sk: RationalMatrix,
    ssk: RationalMatrix,
    nodes: Vec<BigInt>,
}

fn k_forms<F: Field>(t: &TwinedData<F>, v: &ModuleRep) -> Result<KForms, TwinedError> {
    let poly = &t.k().poly;
    let k = poly.evaluate(v)?;
    let s = poly.antipode();
    let sk = s.evaluate(v)?;
    let ssk = s.antipode().evaluate(v)?;
    let mut nodes = Vec::new();
    for m in [&k, &sk, &ssk] {
        let spec = integer_spectrum(m).map_err(|e| spectrum_err(v.label(), e))?;
        nodes.extend(spec.eigenvalues);
    }
    nodes.sort();
    nodes.dedup();
    Ok(KForms { k, sk, ssk, nodes })
}

/// `p_m(M)` for every node `m`, where `p_m` is the Lagrange polynomial that
/// is 1 at `m` and 0 at the other nodes.
fn interpolation_projectors(m: &RationalMatrix, nodes: &[BigInt]) -> Vec<RationalMatrix> {
    let q: Vec<Rational> = nodes.iter().map(|n| Rational::from_integer(n.clone())).collect();
    q.iter()
        .map(|node| UniPoly::lagrange_basis(node, &q).eval_matrix(m).expect("square"))
        .collect()
}

/// `Σ_{m,n} γ^{mn} B_n · A_m` over the nodes.
fn double_sum<F: Field>(gamma: &F, nodes: &[BigInt], a: &[RationalMatrix], b: &[RationalMatrix]) -> Matrix<F> {
    let dim = a[0].rows();
    let mut acc = Matrix::<F>::zeros(dim, dim);
    for (j, bn) in b.iter().enumerate() {
        let mut inner = Matrix::<F>::zeros(dim, dim);
        for (i, am) in a.iter().enumerate() {
            let c = gamma.powi(&(&nodes[i] * &nodes[j])).expect("gamma is nonzero");
            inner.add_scaled(&c, &am.embed()).expect("same shape");
        }
        acc = acc.add(&bn.embed::<F>().matmul(&inner).expect("same shape")).expect("same shape");
    }
    acc
}

/// u on `v`.
pub fn compute_u<F: Field>(t: &TwinedData<F>, v: &ModuleRep, method: UMethod) -> Result<Matrix<F>, TwinedError> {
    match method {
        UMethod::ClosedForm => closed_form(t, &t.k().poly.evaluate(v)?, v.label()),
        UMethod::SpectralExpansion => {
            let f = k_forms(t, v)?;
            // R̃ = Σ γ^{mn} p_m(K) ⊗ p_n(K), so u = Σ γ^{mn} S(p_n(K)) p_m(K)
            // and S(p_n(K)) = p_n(S(K)).
            let a = interpolation_projectors(&f.k, &f.nodes);
            let b = interpolation_projectors(&f.sk, &f.nodes);
            Ok(double_sum(t.gamma(), &f.nodes, &a, &b))
        }
    }
}

/// S(u) on `v` from the same expansion: `Σ γ^{mn} p_m(S(K)) p_n(S²(K))`.
pub fn compute_s_u<F: Field>(t: &TwinedData<F>, v: &ModuleRep) -> Result<Matrix<F>, TwinedError> {
    let f = k_forms(t, v)?;
    let a = interpolation_projectors(&f.ssk, &f.nodes);
    let b = interpolation_projectors(&f.sk, &f.nodes);
    // Σ_{m,n} γ^{mn} p_m(SK) p_n(SSK): swap roles so the left factor is indexed by m
    let dim = f.k.rows();
    let mut acc = Matrix::<F>::zeros(dim, dim);
    for (i, pm) in b.iter().enumerate() {
        for (j, pn) in a.iter().enumerate() {
            let c = t.gamma().powi(&(&f.nodes[i] * &f.nodes[j])).expect("gamma is nonzero");
            acc.add_scaled(&c, &pm.matmul(pn).expect("square").embed()).expect("same shape");
        }
    }
    Ok(acc)
}

fn closed_form<F: Field>(t: &TwinedData<F>, k: &RationalMatrix, label: &str) -> Result<Matrix<F>, TwinedError> {
    let minus_k2 = k.matmul(k).expect("square").neg();
    gamma_power_in(&minus_k2, t.gamma()).map_err(|e| spectrum_err(label, e))
}

/// v = γ^{−K²} on `v`.
pub fn compute_v<F: Field>(t: &TwinedData<F>, v: &ModuleRep) -> Result<Matrix<F>, TwinedError> {
    compute_u(t, v, UMethod::ClosedForm)
}

fn base<F: Field>(t: &TwinedData<F>, id: &str, mods: &[&ModuleRep]) -> CheckResult {
    CheckResult::new(id, mods.iter().map(|m| m.label().to_string()).collect(), t.gamma_label())
}

/// Ribbon results on one module.
pub fn check_ribbon_module<F: Field>(t: &TwinedData<F>, v: &ModuleRep) -> Vec<CheckResult> {
    let mods = [v];
    let mut out = Vec::new();
    out.push(timed(base(t, "ribbon.u_methods", &mods), || {
        Ok(compare_paths(
            &compute_u(t, v, UMethod::SpectralExpansion)?,
            &compute_u(t, v, UMethod::ClosedForm)?,
        ))
    }));
    out.push(timed(base(t, "ribbon.u_central", &mods), || {
        let u = compute_u(t, v, UMethod::SpectralExpansion)?;
        for (i, a) in v.actions().iter().enumerate() {
            let a: Matrix<F> = a.embed();
            let o = compare_paths(&u.matmul(&a).expect("square"), &a.matmul(&u).expect("square"));
            if o.status != Status::Pass {
                return Ok(Outcome { witness: Some(i), ..o });
            }
        }
        Ok(Outcome::pass())
    }));
    let names = v.algebra().basis().to_vec();
    for (i, name) in names.iter().enumerate() {
        out.push(timed(base(t, "ribbon.s_squared", &mods).with_detail(format!("x={name}")), || {
            let u = compute_u(t, v, UMethod::SpectralExpansion)?;
            let u_inv = u.inverse().map_err(|_| TwinedError::Singular(v.label().into()))?;
            let s2x: Matrix<F> = NCPolynomial::generator(i).antipode().antipode().evaluate(v)?.embed();
            let x: Matrix<F> = v.action(i).embed();
            let conj = Matrix::product([&u, &x, &u_inv]).expect("square");
            Ok(compare_paths(&s2x, &conj))
        }));
    }
    out.push(timed(base(t, "ribbon.v_squared", &mods), || {
        let vv = compute_v(t, v)?;
        let u = compute_u(t, v, UMethod::SpectralExpansion)?;
        let su = compute_s_u(t, v)?;
        Ok(compare_paths(&vv.matmul(&vv).expect("square"), &u.matmul(&su).expect("square")))
    }));
    out.push(timed(base(t, "ribbon.s_v", &mods), || {
        let vv = compute_v(t, v)?;
        let sk = t.k().poly.antipode().evaluate(v)?;
        let s_v = closed_form(t, &sk, v.label())?;
        Ok(compare_paths(&s_v, &vv))
    }));
    out
}

/// ε(v) = 1, read off the action of v on the trivial module.
pub fn check_ribbon_counit<F: Field>(t: &TwinedData<F>, algebra: &std::sync::Arc<crate::algebra::LieAlgebra>) -> CheckResult {
    let unit = trivial_module(algebra);
    timed(base(t, "ribbon.counit_v", &[&unit]), || {
        let v = compute_v(t, &unit)?;
        Ok(compare_paths(&v, &Matrix::identity(1)))
    })
}

/// `Δ(uv⁻¹) = F⁻¹ (S⊗S)F_21 (uv⁻¹ ⊗ uv⁻¹)` with F = I⊗I: uv⁻¹ on the
/// tensor module against `uv⁻¹|_U ⊗ uv⁻¹|_V`.
pub fn check_ribbon_pair<F: Field>(t: &TwinedData<F>, u: &ModuleRep, v: &ModuleRep) -> CheckResult {
    timed(base(t, "ribbon.delta_uv", &[u, v]), || {
        let w = |m: &ModuleRep| -> Result<Matrix<F>, TwinedError> {
            let um = compute_u(t, m, UMethod::SpectralExpansion)?;
            let vm = compute_v(t, m)?;
            Ok(um
                .matmul(&vm.inverse().map_err(|_| TwinedError::Singular(m.label().into()))?)
                .expect("square"))
        };
        let uv = tensor_modules(u, v)?;
        let lhs = w(&uv)?;
        // F = I⊗I, so F⁻¹ and (S⊗S)F_21 are identities
        let rhs = w(u)?.kron(&w(v)?);
        Ok(compare_paths(&lhs, &rhs))
    })
}

/// True when S(K) = −K on every module (the precondition of the ribbon checks).
pub fn s_odd_on<F: Field>(t: &TwinedData<F>, modules: &[ModuleRep]) -> Result<(), String> {
    let s = t.k().poly.antipode();
    for m in modules {
        let k = t.k().poly.evaluate(m).map_err(|e| e.to_string())?;
        let sk = s.evaluate(m).map_err(|e| e.to_string())?;
        if sk != k.neg() {
            return Err(m.label().to_string());
        }
    }
    Ok(())
}

/// The full ribbon suite over `modules`; blocked (status error, code
/// `NotSOdd`) when S(K) ≠ −K on some module.
pub fn check_ribbon<F: Field>(t: &TwinedData<F>, modules: &[ModuleRep]) -> Vec<CheckResult> {
    let Some(first) = modules.first() else {
        return vec![];
    };
    if let Err(witness) = s_odd_on(t, modules) {
        return vec![base(t, "ribbon", &[])
            .with_detail(format!("module={witness}"))
            .with_error("NotSOdd", format!("S(K) ≠ −K on {witness}"))];
    }
    let mut out = vec![check_ribbon_counit(t, first.algebra())];
    for v in modules {
        out.extend(check_ribbon_module(t, v));
    }
    for u in modules {
        for v in modules {
            out.push(check_ribbon_pair(t, u, v));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{gl1_module, parse_expression, sl2_module, LieAlgebra};
    use crate::linalg::field::int;
    use crate::twined::CentralElement;

    fn gl1(text: &str) -> TwinedData<Rational> {
        let k = CentralElement::new(parse_expression(text, &LieAlgebra::gl1()).unwrap());
        TwinedData::new(k, int(-1), "-1/1").unwrap()
    }

    #[test]
    fn u_on_weight_modules() {
        let t = gl1("N^3");
        for (n, expected) in [(1, -1), (2, 1), (0, 1), (-1, -1)] {
            let m = gl1_module(n);
            for method in [UMethod::SpectralExpansion, UMethod::ClosedForm] {
                assert_eq!(compute_u(&t, &m, method).unwrap(), RationalMatrix::scalar(1, int(expected)));
            }
        }
    }

    #[test]
    fn u_is_identity_where_k_vanishes() {
        let k = CentralElement::new(parse_expression("(e*f + f*e + h^2/2)/4", &LieAlgebra::sl2()).unwrap());
        let t = TwinedData::new(k, int(-1), "-1/1").unwrap();
        let v0 = sl2_module(0).unwrap();
        assert!(compute_u(&t, &v0, UMethod::ClosedForm).unwrap().is_identity());
        assert!(compute_u(&t, &v0, UMethod::SpectralExpansion).unwrap().is_identity());
    }

    #[test]
    fn ribbon_suite_passes_for_odd_k() {
        for text in ["N", "N^3", "(N^3 + 5*N)/6"] {
            let t = gl1(text);
            let mods: Vec<_> = (-2..=2).map(gl1_module).collect();
            let results = check_ribbon(&t, &mods);
            assert!(results.len() > 10);
            for r in &results {
                assert_eq!(r.status, Status::Pass, "{text}: {r:?}");
            }
        }
    }

    #[test]
    fn even_k_is_blocked() {
        let k = CentralElement::new(parse_expression("(e*f + f*e + h^2/2)/4", &LieAlgebra::sl2()).unwrap());
        let t = TwinedData::new(k, int(-1), "-1/1").unwrap();
        let results = check_ribbon(&t, &[sl2_module(0).unwrap(), sl2_module(2).unwrap()]);
        assert_eq!(results.len(), 1);
        assert_eq!(results[0].status, Status::Error);
        assert_eq!(results[0].error_code(), Some("NotSOdd"));
    }

    #[test]
    fn spectral_u_differs_from_closed_form_when_s_even() {
        // with S(K) = K the expansion gives γ^{+K²}; at γ = 2 this differs from γ^{−K²}
        let k = CentralElement::new(parse_expression("N^2", &LieAlgebra::gl1()).unwrap());
        let t = TwinedData::new(k, int(2), "2/1").unwrap();
        let m = gl1_module(1);
        assert_eq!(compute_u(&t, &m, UMethod::SpectralExpansion).unwrap(), RationalMatrix::scalar(1, int(2)));
        assert_eq!(compute_u(&t, &m, UMethod::ClosedForm).unwrap(), RationalMatrix::scalar(1, crate::linalg::field::rat(1, 2)));
    }
}
