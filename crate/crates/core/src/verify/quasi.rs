//! Quasi-bialgebra relations of the twined data and the Drinfeld twist check.

use crate::algebra::{ModuleRep, NCPolynomial, TensorElement};
use crate::linalg::{Field, Matrix};
use crate::twined::TwinedData;

use super::result::{compare_paths, timed, CheckResult};

fn base<F: Field>(t: &TwinedData<F>, id: &str, mods: &[&ModuleRep]) -> CheckResult {
    CheckResult::new(id, mods.iter().map(|m| m.label().to_string()).collect(), t.gamma_label())
}

fn product<F: Field>(factors: &[Matrix<F>]) -> Matrix<F> {
    Matrix::product(factors).expect("factors act on one space")
}

fn generators(algebra_dim: usize) -> impl Iterator<Item = NCPolynomial> {
    (0..algebra_dim).map(NCPolynomial::generator)
}

/// `(id⊗Δ)Δ(x) = Φ̃⁻¹ (Δ⊗id)Δ(x) Φ̃` for each generator on a triple.
pub fn check_coassociativity<F: Field>(t: &TwinedData<F>, u: &ModuleRep, v: &ModuleRep, w: &ModuleRep) -> Vec<CheckResult> {
    let mods = [u, v, w];
    let names = u.algebra().basis().to_vec();
    generators(names.len())
        .zip(&names)
        .map(|(x, name)| {
            timed(base(t, "quasi.coassociativity", &mods).with_detail(format!("x={name}")), || {
                let dx = x.coproduct();
                let lhs: Matrix<F> = dx.coproduct_leg(1).evaluate_legs(&mods)?.matrix.embed();
                let inner: Matrix<F> = dx.coproduct_leg(0).evaluate_legs(&mods)?.matrix.embed();
                let rhs = product(&[
                    t.power(t.kappa_element(), &mods, -1)?,
                    inner,
                    t.power(t.kappa_element(), &mods, 1)?,
                ]);
                Ok(compare_paths(&lhs, &rhs))
            })
        })
        .collect()
}

/// `R̃ Δ(x) = Δ^T(x) R̃` for each generator on a pair.
pub fn check_triangularity<F: Field>(t: &TwinedData<F>, u: &ModuleRep, v: &ModuleRep) -> Vec<CheckResult> {
    let mods = [u, v];
    let names = u.algebra().basis().to_vec();
    generators(names.len())
        .zip(&names)
        .map(|(x, name)| {
            timed(base(t, "quasi.triangularity", &mods).with_detail(format!("x={name}")), || {
                let dx = x.coproduct();
                let d: Matrix<F> = dx.evaluate_legs(&mods)?.matrix.embed();
                let dt: Matrix<F> = dx.flip().evaluate_legs(&mods)?.matrix.embed();
                let r = t.power(t.k_tensor_k(), &mods, 1)?;
                Ok(compare_paths(&product(&[r.clone(), d]), &product(&[dt, r])))
            })
        })
        .collect()
}

// Subscripts follow the element-to-slot convention: X_{312} sends the first
// tensor factor to slot 3, the second to slot 1 and the third to slot 2.
fn phi_sub(t_kappa: &TensorElement, digits: [usize; 3]) -> TensorElement {
    t_kappa.permute_legs(&digits.map(|d| d - 1))
}

fn r_sub(kk: &TensorElement, slots: [usize; 2]) -> TensorElement {
    let missing = (1..=3).find(|s| !slots.contains(s)).expect("three slots");
    let padded = kk.insert_identity_leg(2);
    // padded = a ⊗ b ⊗ I; send a → slots[0], b → slots[1], I → missing
    padded.permute_legs(&[slots[0] - 1, slots[1] - 1, missing - 1])
}

/// `(Δ⊗id)R̃ = Φ̃_{312} R̃_{13} Φ̃_{132} R̃_{23} Φ̃⁻¹_{123}` on a triple.
pub fn check_fusion_left<F: Field>(t: &TwinedData<F>, u: &ModuleRep, v: &ModuleRep, w: &ModuleRep) -> CheckResult {
    let mods = [u, v, w];
    timed(base(t, "quasi.fusion_left", &mods), || {
        let kappa = t.kappa_element();
        let kk = t.k_tensor_k();
        let lhs = t.power(&kk.coproduct_leg(0), &mods, 1)?;
        let rhs = product(&[
            t.power(&phi_sub(kappa, [3, 1, 2]), &mods, 1)?,
            t.power(&r_sub(kk, [1, 3]), &mods, 1)?,
            t.power(&phi_sub(kappa, [1, 3, 2]), &mods, 1)?,
            t.power(&r_sub(kk, [2, 3]), &mods, 1)?,
            t.power(kappa, &mods, -1)?,
        ]);
        Ok(compare_paths(&lhs, &rhs))
    })
}

/// `(id⊗Δ)R̃ = Φ̃⁻¹_{213} R̃_{13} Φ̃⁻¹_{213} R̃_{12} Φ̃_{123} (γ^{2κ})⁻¹_{123}`,
/// evaluated exactly as written (including the repeated Φ̃⁻¹_{213}).
pub fn check_fusion_right<F: Field>(t: &TwinedData<F>, u: &ModuleRep, v: &ModuleRep, w: &ModuleRep) -> CheckResult {
    let mods = [u, v, w];
    timed(base(t, "quasi.fusion_right", &mods), || {
        let kappa = t.kappa_element();
        let kk = t.k_tensor_k();
        let lhs = t.power(&kk.coproduct_leg(1), &mods, 1)?;
        let two_kappa = kappa.scale(&crate::linalg::field::int(2));
        let rhs = product(&[
            t.power(&phi_sub(kappa, [2, 1, 3]), &mods, -1)?,
            t.power(&r_sub(kk, [1, 3]), &mods, 1)?,
            t.power(&phi_sub(kappa, [2, 1, 3]), &mods, -1)?,
            t.power(&r_sub(kk, [1, 2]), &mods, 1)?,
            t.power(kappa, &mods, 1)?,
            t.power(&two_kappa, &mods, -1)?,
        ]);
        Ok(compare_paths(&lhs, &rhs))
    })
}

/// The standard quasi-triangular form of the second fusion relation,
/// `(id⊗Δ)R̃ = Φ̃⁻¹_{231} R̃_{13} Φ̃_{213} R̃_{12} Φ̃⁻¹_{123}`.
pub fn check_fusion_right_variant<F: Field>(t: &TwinedData<F>, u: &ModuleRep, v: &ModuleRep, w: &ModuleRep) -> CheckResult {
    let mods = [u, v, w];
    timed(base(t, "quasi.fusion_right_variant", &mods), || {
        let kappa = t.kappa_element();
        let kk = t.k_tensor_k();
        let lhs = t.power(&kk.coproduct_leg(1), &mods, 1)?;
        let rhs = product(&[
            t.power(&phi_sub(kappa, [2, 3, 1]), &mods, -1)?,
            t.power(&r_sub(kk, [1, 3]), &mods, 1)?,
            t.power(&phi_sub(kappa, [2, 1, 3]), &mods, 1)?,
            t.power(&r_sub(kk, [1, 2]), &mods, 1)?,
            t.power(kappa, &mods, -1)?,
        ]);
        Ok(compare_paths(&lhs, &rhs))
    })
}

/// `Δ(x) = F⁻¹ ((S⊗S) Δ^T(S⁻¹(x))) F` with `F = I⊗I`, for the unit and
/// every generator on a pair.
pub fn check_drinfeld_twist_trivial<F: Field>(t: &TwinedData<F>, u: &ModuleRep, v: &ModuleRep) -> Vec<CheckResult> {
    let mods = [u, v];
    let names = u.algebra().basis().to_vec();
    let mut elements: Vec<(String, NCPolynomial)> = vec![("I".into(), NCPolynomial::identity())];
    elements.extend(names.iter().cloned().zip(generators(names.len())));
    elements
        .into_iter()
        .map(|(name, x)| {
            timed(base(t, "twist", &mods).with_detail(format!("x={name}")), || {
                let lhs: Matrix<F> = x.coproduct().evaluate_legs(&mods)?.matrix.embed();
                let twisted = x.antipode_inverse().coproduct().flip().antipode_legs(&[0, 1]);
                let f = TensorElement::identity(2);
                let f_inv = TensorElement::identity(2);
                let rhs: Matrix<F> = f_inv.mul(&twisted).mul(&f).evaluate_legs(&mods)?.matrix.embed();
                Ok(compare_paths(&lhs, &rhs))
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{gl1_module, parse_expression, sl2_module, LieAlgebra};
    use crate::linalg::field::int;
    use crate::linalg::Rational;
    use crate::twined::CentralElement;
    use crate::verify::result::Status;

    fn gl1(text: &str, gamma: i64) -> TwinedData<Rational> {
        let k = CentralElement::new(parse_expression(text, &LieAlgebra::gl1()).unwrap());
        TwinedData::new(k, int(gamma), gamma.to_string()).unwrap()
    }

    #[test]
    fn subscripts_place_factors() {
        let (a, b, c) = (NCPolynomial::generator(0), NCPolynomial::generator(1), NCPolynomial::generator(2));
        let x = TensorElement::pure(int(1), vec![a.clone(), b.clone(), c.clone()]);
        assert_eq!(phi_sub(&x, [3, 1, 2]), TensorElement::pure(int(1), vec![b, c, a.clone()]));
        let kk = TensorElement::pure(int(1), vec![a.clone(), a.clone()]);
        let i = NCPolynomial::identity();
        assert_eq!(r_sub(&kk, [1, 3]), TensorElement::pure(int(1), vec![a.clone(), i.clone(), a.clone()]));
        assert_eq!(r_sub(&kk, [2, 3]), TensorElement::pure(int(1), vec![i, a.clone(), a]));
    }

    #[test]
    fn first_three_relations_on_weights() {
        let t = gl1("(N^3 + 5*N)/6", -1);
        let mods: Vec<_> = (-2..=2).map(gl1_module).collect();
        for u in &mods {
            for v in &mods {
                for r in check_triangularity(&t, u, v) {
                    assert_eq!(r.status, Status::Pass);
                }
                for w in &mods {
                    for r in check_coassociativity(&t, u, v, w) {
                        assert_eq!(r.status, Status::Pass);
                    }
                    let r = check_fusion_left(&t, u, v, w);
                    assert_eq!(r.status, Status::Pass, "{r:?}");
                }
            }
        }
    }

    #[test]
    fn variant_holds_for_generic_gamma() {
        let t = gl1("(N^3 + 5*N)/6", 2);
        let mods: Vec<_> = (-2..=2).map(gl1_module).collect();
        for u in &mods {
            for v in &mods {
                for w in &mods {
                    assert_eq!(check_fusion_right_variant(&t, u, v, w).status, Status::Pass);
                }
            }
        }
    }

    #[test]
    fn sl2_relations() {
        let k = CentralElement::new(parse_expression("(e*f + f*e + h^2/2)/4", &LieAlgebra::sl2()).unwrap());
        let t = TwinedData::new(k, int(-1), "-1").unwrap();
        let v1 = sl2_module(2).unwrap();
        let v0 = sl2_module(0).unwrap();
        for r in check_coassociativity(&t, &v1, &v1, &v1) {
            assert_eq!(r.status, Status::Pass);
        }
        for r in check_triangularity(&t, &v1, &v1) {
            assert_eq!(r.status, Status::Pass);
        }
        assert_eq!(check_fusion_left(&t, &v1, &v1, &v1).status, Status::Pass);
        assert_eq!(check_fusion_left(&t, &v1, &v0, &v1).status, Status::Pass);
        for r in check_drinfeld_twist_trivial(&t, &v1, &v1) {
            assert_eq!(r.status, Status::Pass);
        }
    }

    #[test]
    fn twist_on_weights() {
        let t = gl1("N", -1);
        let rs = check_drinfeld_twist_trivial(&t, &gl1_module(2), &gl1_module(-1));
        assert_eq!(rs.len(), 2);
        assert!(rs.iter().all(|r| r.status == Status::Pass));
        assert_eq!(rs[0].detail.as_deref(), Some("x=I"));
    }
}
