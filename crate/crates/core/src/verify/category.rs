//! Pre-monoidal coherence: the q-defect, hexagons, the q/σ square,
//! symmetry and naturality.

use crate::linalg::Field;
use crate::twined::{Morphism, Obj, QMethod, TwinedData, TwinedError};

use super::result::{compare_identity, compare_paths, timed, CheckResult, Outcome};

fn base<F: Field>(t: &TwinedData<F>, id: &str, objs: &[&Obj]) -> CheckResult {
    let leaves = objs.iter().flat_map(|o| o.leaves()).collect();
    CheckResult::new(id, leaves, t.gamma_label())
}

fn pair(a: &Obj, b: &Obj) -> Result<Obj, TwinedError> {
    Obj::tensor(a, b)
}

/// `q_{U,V,W,Z} = id`. Returns the verdict and a second result comparing
/// the composite construction of q with the ξ construction.
pub fn check_pentagon<F: Field>(t: &TwinedData<F>, u: &Obj, v: &Obj, w: &Obj, z: &Obj) -> Vec<CheckResult> {
    let domain = || -> Result<String, TwinedError> { Ok(pair(&pair(u, v)?, &pair(w, z)?)?.display_top()) };
    let dom = domain().unwrap_or_default();
    let objs = [u, v, w, z];
    let mut composite = None;
    let verdict = timed(base(t, "pentagon", &objs).with_domain(dom.clone()), || {
        let q = t.q_morphism(u, v, w, z, QMethod::Composition)?;
        let out = compare_identity(&q.matrix);
        composite = Some(q);
        Ok(out)
    });
    let methods = timed(base(t, "pentagon.q_methods", &objs).with_domain(dom), || {
        let q1 = match composite.take() {
            Some(q) => q,
            None => t.q_morphism(u, v, w, z, QMethod::Composition)?,
        };
        let q2 = t.q_morphism(u, v, w, z, QMethod::Xi)?;
        Ok(compare_paths(&q1.matrix, &q2.matrix))
    });
    vec![verdict, methods]
}

/// Diagram (i), `(U⊗V)⊗W → V⊗(W⊗U)`:
/// `a⁻¹_{V,W,U} σ_{U,V⊗W} a⁻¹_{U,V,W}` against
/// `(id⊗σ_{U,W}) a⁻¹_{V,U,W} (σ_{U,V}⊗id)`.
pub fn check_hexagon_i<F: Field>(t: &TwinedData<F>, u: &Obj, v: &Obj, w: &Obj) -> CheckResult {
    let dom = pair(&pair(u, v).unwrap(), w).map(|o| o.display_top()).unwrap_or_default();
    timed(base(t, "hexagon_i", &[u, v, w]).with_domain(dom), || {
        let top = Morphism::chain(&[
            t.associator_inv(u, v, w)?,
            t.braiding(u, &pair(v, w)?)?,
            t.associator_inv(v, w, u)?,
        ])?;
        let bottom = Morphism::chain(&[
            t.braiding(u, v)?.tensor(&Morphism::identity(w))?,
            t.associator_inv(v, u, w)?,
            Morphism::identity(v).tensor(&t.braiding(u, w)?)?,
        ])?;
        Ok(compare_paths(&top.matrix, &bottom.matrix))
    })
}

/// Diagram (ii), `U⊗(V⊗W) → (W⊗U)⊗V`:
/// `a_{W,U,V} σ_{U⊗V,W} a_{U,V,W}` against
/// `(σ_{U,W}⊗id) a_{U,W,V} (id⊗σ_{V,W})`.
pub fn check_hexagon_ii<F: Field>(t: &TwinedData<F>, u: &Obj, v: &Obj, w: &Obj) -> CheckResult {
    let dom = pair(u, &pair(v, w).unwrap()).map(|o| o.display_top()).unwrap_or_default();
    timed(base(t, "hexagon_ii", &[u, v, w]).with_domain(dom), || {
        let top = Morphism::chain(&[
            t.associator(u, v, w)?,
            t.braiding(&pair(u, v)?, w)?,
            t.associator(w, u, v)?,
        ])?;
        let bottom = Morphism::chain(&[
            Morphism::identity(u).tensor(&t.braiding(v, w)?)?,
            t.associator(u, w, v)?,
            t.braiding(u, w)?.tensor(&Morphism::identity(v))?,
        ])?;
        Ok(compare_paths(&top.matrix, &bottom.matrix))
    })
}

/// Diagram (iii) read literally: top then right, `σ ∘ q_{U,V,W,Z}`, against
/// left then the bottom arrow traversed backwards, `q⁻¹_{W,Z,U,V} ∘ σ`,
/// with `σ = σ_{(U⊗V),(W⊗Z)}` on both sides.
pub fn check_q_sigma_square<F: Field>(t: &TwinedData<F>, u: &Obj, v: &Obj, w: &Obj, z: &Obj) -> CheckResult {
    let dom = (|| Ok::<_, TwinedError>(pair(&pair(u, v)?, &pair(w, z)?)?.display_top()))().unwrap_or_default();
    timed(base(t, "q_square", &[u, v, w, z]).with_domain(dom), || {
        let uv = pair(u, v)?;
        let wz = pair(w, z)?;
        let sigma = t.braiding(&uv, &wz)?;
        let q = t.q_morphism(u, v, w, z, QMethod::Composition)?;
        let q_back = t.q_morphism(w, z, u, v, QMethod::Composition)?.inverse()?;
        let path1 = q.then(&sigma)?;
        let path2 = sigma.then(&q_back)?;
        Ok(compare_paths(&path1.matrix, &path2.matrix))
    })
}

/// `σ_{V,U} ∘ σ_{U,V} = id_{U⊗V}`.
pub fn check_symmetry<F: Field>(t: &TwinedData<F>, u: &Obj, v: &Obj) -> CheckResult {
    let dom = pair(u, v).map(|o| o.display_top()).unwrap_or_default();
    timed(base(t, "symmetry", &[u, v]).with_domain(dom), || {
        let round = t.braiding(u, v)?.then(&t.braiding(v, u)?)?;
        Ok(compare_identity(&round.matrix))
    })
}

/// Which natural transformation a naturality check concerns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NaturalityKind {
    Associator,
    Braiding,
}

/// Naturality of `a` (placements 0..3) or `σ` (placements 0..2) in the
/// slot holding `f: X → Y`; `others` fill the remaining slots in order.
pub fn check_naturality<F: Field>(
    t: &TwinedData<F>,
    kind: NaturalityKind,
    f: &Morphism<F>,
    others: &[&Obj],
    placement: usize,
    detail: &str,
) -> CheckResult {
    let id = match kind {
        NaturalityKind::Associator => "naturality.associator",
        NaturalityKind::Braiding => "naturality.braiding",
    };
    let mut slots_x: Vec<&Obj> = others.to_vec();
    slots_x.insert(placement.min(others.len()), &f.source);
    let result = base(t, id, &slots_x).with_detail(format!("placement={} {detail}", placement + 1));
    timed(result, || {
        let with = |obj: &Obj| -> Vec<Obj> {
            let mut v: Vec<Obj> = others.iter().map(|o| (*o).clone()).collect();
            v.insert(placement, obj.clone());
            v
        };
        let xs = with(&f.source);
        let ys = with(&f.target);
        let ids: Vec<Morphism<F>> = others.iter().map(|o| Morphism::identity(o)).collect();
        let slot = |i: usize| -> Morphism<F> {
            if i == placement {
                f.clone()
            } else {
                ids[if i < placement { i } else { i - 1 }].clone()
            }
        };
        let (lhs, rhs) = match kind {
            NaturalityKind::Associator => {
                if others.len() != 2 || placement > 2 {
                    return Err(TwinedError::Composition {
                        expected: "three slots".into(),
                        found: format!("{} slots, placement {}", others.len() + 1, placement + 1),
                    });
                }
                let right_nested = slot(0).tensor(&slot(1).tensor(&slot(2))?)?;
                let left_nested = slot(0).tensor(&slot(1))?.tensor(&slot(2))?;
                let lhs = right_nested.then(&t.associator(&ys[0], &ys[1], &ys[2])?)?;
                let rhs = t.associator(&xs[0], &xs[1], &xs[2])?.then(&left_nested)?;
                (lhs, rhs)
            }
            NaturalityKind::Braiding => {
                if others.len() != 1 || placement > 1 {
                    return Err(TwinedError::Composition {
                        expected: "two slots".into(),
                        found: format!("{} slots, placement {}", others.len() + 1, placement + 1),
                    });
                }
                let before = slot(0).tensor(&slot(1))?;
                let after = slot(1).tensor(&slot(0))?;
                let lhs = before.then(&t.braiding(&ys[0], &ys[1])?)?;
                let rhs = t.braiding(&xs[0], &xs[1])?.then(&after)?;
                (lhs, rhs)
            }
        };
        Ok(compare_paths(&lhs.matrix, &rhs.matrix))
    })
}

/// Outcome of comparing two morphisms with the same endpoints.
pub fn compare_morphisms<F: Field>(a: &Morphism<F>, b: &Morphism<F>) -> Result<Outcome, TwinedError> {
    if a.source != b.source || a.target != b.target {
        return Err(TwinedError::Composition {
            expected: format!("{} → {}", a.source, a.target),
            found: format!("{} → {}", b.source, b.target),
        });
    }
    Ok(compare_paths(&a.matrix, &b.matrix))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{gl1_module, intertwiner_basis, parse_expression, sl2_module, LieAlgebra};
    use crate::linalg::field::{int, rat};
    use crate::linalg::{Rational, RationalMatrix};
    use crate::twined::CentralElement;
    use crate::verify::result::{DefectKind, Status};

    fn gl1(text: &str, gamma: Rational) -> TwinedData<Rational> {
        let k = CentralElement::new(parse_expression(text, &LieAlgebra::gl1()).unwrap());
        let label = crate::linalg::format_rational(&gamma);
        TwinedData::new(k, gamma, label).unwrap()
    }

    fn m(n: i64) -> Obj {
        Obj::leaf(gl1_module(n))
    }

    const CUBIC: &str = "(N^3 + 5*N)/6";

    #[test]
    fn pentagon_scalar_failure() {
        let t = gl1(CUBIC, int(-1));
        let r = check_pentagon(&t, &m(1), &m(1), &m(1), &m(1));
        assert_eq!(r[0].status, Status::Fail);
        let d = r[0].defect.as_ref().unwrap();
        assert_eq!(d.kind, DefectKind::Spectrum);
        assert_eq!(d.values, vec![vec!["-1/1".to_string()]]);
        assert_eq!(r[0].domain.as_deref(), Some("(M_1⊗M_1)⊗(M_1⊗M_1)"));
        assert_eq!(r[1].status, Status::Pass);
    }

    #[test]
    fn primitive_k_is_monoidal() {
        let t = gl1("N", int(-1));
        let r = check_pentagon(&t, &m(1), &m(2), &m(-1), &m(3));
        assert_eq!(r[0].status, Status::Pass);
        assert_eq!(check_q_sigma_square(&t, &m(1), &m(2), &m(-1), &m(3)).status, Status::Pass);
    }

    #[test]
    fn hexagons_at_minus_one() {
        let t = gl1(CUBIC, int(-1));
        for (a, b, c) in [(1, 1, 1), (2, -3, 1), (0, 2, 3)] {
            assert_eq!(check_hexagon_i(&t, &m(a), &m(b), &m(c)).status, Status::Pass);
            assert_eq!(check_hexagon_ii(&t, &m(a), &m(b), &m(c)).status, Status::Pass);
        }
    }

    #[test]
    fn hexagon_violation_at_two() {
        let t = gl1(CUBIC, int(2));
        let r = check_hexagon_i(&t, &m(1), &m(1), &m(1));
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.defect.unwrap().values, vec![vec!["4/1".to_string()]]);
        assert_eq!(check_hexagon_i(&t, &m(0), &m(1), &m(1)).status, Status::Pass);
    }

    #[test]
    fn symmetry_examples() {
        let t = gl1("N", int(2));
        let r = check_symmetry(&t, &m(1), &m(1));
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.defect.unwrap().values, vec![vec!["4/1".to_string()]]);
        assert_eq!(check_symmetry(&t, &m(0), &m(3)).status, Status::Pass);
        let t = gl1(CUBIC, int(-1));
        assert_eq!(check_symmetry(&t, &m(2), &m(3)).status, Status::Pass);
    }

    #[test]
    fn naturality_with_projections() {
        let k = CentralElement::new(parse_expression("(e*f + f*e + h^2/2)/4", &LieAlgebra::sl2()).unwrap());
        let t = TwinedData::new(k, int(-1), "-1/1").unwrap();
        let v1 = Obj::leaf(sl2_module(2).unwrap());
        let vv = Obj::tensor(&v1, &v1).unwrap();
        for (i, f) in intertwiner_basis(vv.module(), vv.module()).unwrap().into_iter().enumerate() {
            let f = Morphism::new(vv.clone(), vv.clone(), f);
            for p in 0..3 {
                let r = check_naturality(&t, NaturalityKind::Associator, &f, &[&v1, &v1], p, &format!("f={i}"));
                assert_eq!(r.status, Status::Pass, "{r:?}");
                let scaled = f.scale(&rat(7, 3));
                let r2 = check_naturality(&t, NaturalityKind::Associator, &scaled, &[&v1, &v1], p, "");
                assert_eq!(r2.status, r.status);
            }
            for p in 0..2 {
                let r = check_naturality(&t, NaturalityKind::Braiding, &f, &[&v1], p, "");
                assert_eq!(r.status, Status::Pass);
            }
        }
    }

    #[test]
    fn naturality_detects_non_intertwiner() {
        let k = CentralElement::new(parse_expression("(e*f + f*e + h^2/2)/4", &LieAlgebra::sl2()).unwrap());
        let t = TwinedData::new(k, int(-1), "-1/1").unwrap();
        let v1 = Obj::leaf(sl2_module(2).unwrap());
        let vv = Obj::tensor(&v1, &v1).unwrap();
        // a coordinate projection that does not commute with κ
        let mut p = RationalMatrix::zeros(9, 9);
        p.set(0, 1, int(1));
        let f = Morphism::new(vv.clone(), vv, p);
        let r = check_naturality(&t, NaturalityKind::Associator, &f, &[&v1, &v1], 2, "");
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.defect.unwrap().kind, DefectKind::MaxEntryDifference);
    }
}
