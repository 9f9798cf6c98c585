//! Twined operators: R̃ = γ^{K⊗K}, Φ̃ = γ^κ with κ = K⊗(I⊗K + K⊗I − Δ(K)),
//! the five-factor element ξ, and the categorical morphisms a, σ, q, ρ, λ.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_traits::One;

use crate::algebra::{ModuleRep, NCPolynomial, TensorElement, TensorOperator};
use crate::linalg::{flip, gamma_power_from_spectrum, integer_spectrum, Field, Matrix, Rational, RationalMatrix};

use super::central::CentralElement;
use super::object::{Morphism, Obj};
use super::TwinedError;

/// How `q_{U,V,W,Z}` is assembled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QMethod {
    /// The five-associator composite.
    Composition,
    /// The element ξ with coproducts applied symbolically.
    Xi,
}

type CacheKey = (TensorElement, Vec<String>);

/// `γ^{+X}` and `γ^{−X}` for one evaluated element.
struct PowerPair<F: Field> {
    plus: Matrix<F>,
    minus: Matrix<F>,
}

/// K, γ and a synchronized cache of evaluated γ-powers.
pub struct TwinedData<F: Field> {
    k: CentralElement,
    gamma: F,
    gamma_inv: F,
    gamma_label: String,
    kappa: TensorElement,
    k_tensor_k: TensorElement,
    cache_enabled: bool,
    cache: RwLock<HashMap<CacheKey, Arc<PowerPair<F>>>>,
}

/// `K⊗(I⊗K + K⊗I − Δ(K))`.
pub fn kappa_element(k: &NCPolynomial) -> TensorElement {
    let i = NCPolynomial::identity();
    let inner = TensorElement::pure(Rational::one(), vec![i.clone(), k.clone()])
        .add(&TensorElement::pure(Rational::one(), vec![k.clone(), i]))
        .sub(&k.coproduct());
    TensorElement::pure(Rational::one(), vec![k.clone()]).tensor(&inner)
}

impl<F: Field> TwinedData<F> {
    pub fn new(k: CentralElement, gamma: F, gamma_label: impl Into<String>) -> Result<Self, TwinedError> {
        let gamma_inv = gamma.inv().ok_or(TwinedError::ZeroGamma)?;
        let kappa = kappa_element(&k.poly);
        let k_tensor_k = TensorElement::pure(Rational::one(), vec![k.poly.clone(), k.poly.clone()]);
        Ok(TwinedData {
            k,
            gamma,
            gamma_inv,
            gamma_label: gamma_label.into(),
            kappa,
            k_tensor_k,
            cache_enabled: true,
            cache: RwLock::new(HashMap::new()),
        })
    }

    /// Disabling the cache must not change any result.
    pub fn with_cache(mut self, enabled: bool) -> Self {
        self.cache_enabled = enabled;
        self
    }

    pub fn k(&self) -> &CentralElement {
        &self.k
    }

    pub fn gamma(&self) -> &F {
        &self.gamma
    }

    pub fn gamma_label(&self) -> &str {
        &self.gamma_label
    }

    pub fn kappa_element(&self) -> &TensorElement {
        &self.kappa
    }

    pub fn k_tensor_k(&self) -> &TensorElement {
        &self.k_tensor_k
    }

    pub fn cache_len(&self) -> usize {
        self.cache.read().expect("cache lock").len()
    }

    /// `γ^{sign · X}` where `X` is `element` evaluated on `modules`.
    pub fn power(&self, element: &TensorElement, modules: &[&ModuleRep], sign: i8) -> Result<Matrix<F>, TwinedError> {
        let pair = self.power_pair(element, modules)?;
        Ok(if sign >= 0 { pair.plus.clone() } else { pair.minus.clone() })
    }

    fn power_pair(&self, element: &TensorElement, modules: &[&ModuleRep]) -> Result<Arc<PowerPair<F>>, TwinedError> {
        let key = (element.clone(), modules.iter().map(|m| m.label().to_string()).collect::<Vec<_>>());
        if self.cache_enabled {
            if let Some(hit) = self.cache.read().expect("cache lock").get(&key) {
                return Ok(hit.clone());
            }
        }
        let x = element.evaluate_legs(modules)?;
        let context = || key.1.join(", ");
        let spectrum = integer_spectrum(&x.matrix).map_err(|source| TwinedError::Spectrum {
            context: context(),
            source,
        })?;
        let plus = gamma_power_from_spectrum(&spectrum, &self.gamma).map_err(|source| TwinedError::Spectrum {
            context: context(),
            source,
        })?;
        let minus = gamma_power_from_spectrum(&spectrum, &self.gamma_inv).map_err(|source| TwinedError::Spectrum {
            context: context(),
            source,
        })?;
        let pair = Arc::new(PowerPair { plus, minus });
        if self.cache_enabled {
            self.cache.write().expect("cache lock").entry(key).or_insert_with(|| pair.clone());
        }
        Ok(pair)
    }

    /// κ evaluated on `(U, V, W)`.
    pub fn build_kappa(&self, u: &ModuleRep, v: &ModuleRep, w: &ModuleRep) -> Result<TensorOperator<Rational>, TwinedError> {
        Ok(self.kappa.evaluate_legs(&[u, v, w])?)
    }

    /// Φ̃ on `(U, V, W)`.
    pub fn build_phitilde(&self, u: &ModuleRep, v: &ModuleRep, w: &ModuleRep) -> Result<TensorOperator<F>, TwinedError> {
        let m = self.power(&self.kappa, &[u, v, w], 1)?;
        Ok(TensorOperator::new(vec![u.dim(), v.dim(), w.dim()], m))
    }

    /// Φ̃⁻¹ on `(U, V, W)`.
    pub fn build_phitilde_inv(&self, u: &ModuleRep, v: &ModuleRep, w: &ModuleRep) -> Result<TensorOperator<F>, TwinedError> {
        let m = self.power(&self.kappa, &[u, v, w], -1)?;
        Ok(TensorOperator::new(vec![u.dim(), v.dim(), w.dim()], m))
    }

    /// R̃ on `(U, V)`.
    pub fn build_rtilde(&self, u: &ModuleRep, v: &ModuleRep) -> Result<TensorOperator<F>, TwinedError> {
        let m = self.power(&self.k_tensor_k, &[u, v], 1)?;
        Ok(TensorOperator::new(vec![u.dim(), v.dim()], m))
    }

    /// `a_{U,V,W}: U⊗(V⊗W) → (U⊗V)⊗W`, the matrix of Φ̃.
    pub fn associator(&self, u: &Obj, v: &Obj, w: &Obj) -> Result<Morphism<F>, TwinedError> {
        let m = self.power(&self.kappa, &[u.module(), v.module(), w.module()], 1)?;
        Ok(Morphism::new(
            Obj::tensor(u, &Obj::tensor(v, w)?)?,
            Obj::tensor(&Obj::tensor(u, v)?, w)?,
            m,
        ))
    }

    /// `a⁻¹_{U,V,W}: (U⊗V)⊗W → U⊗(V⊗W)`.
    pub fn associator_inv(&self, u: &Obj, v: &Obj, w: &Obj) -> Result<Morphism<F>, TwinedError> {
        let m = self.power(&self.kappa, &[u.module(), v.module(), w.module()], -1)?;
        Ok(Morphism::new(
            Obj::tensor(&Obj::tensor(u, v)?, w)?,
            Obj::tensor(u, &Obj::tensor(v, w)?)?,
            m,
        ))
    }

    /// `σ_{X,Y} = τ ∘ R̃_{X,Y}: X⊗Y → Y⊗X`.
    pub fn braiding(&self, x: &Obj, y: &Obj) -> Result<Morphism<F>, TwinedError> {
        let r = self.power(&self.k_tensor_k, &[x.module(), y.module()], 1)?;
        let tau: Matrix<F> = flip(x.dim(), y.dim());
        Ok(Morphism::new(
            Obj::tensor(x, y)?,
            Obj::tensor(y, x)?,
            tau.matmul(&r).expect("matching dimensions"),
        ))
    }

    /// ξ on four leaves, each coproduct factor evaluated from the element
    /// with Δ applied to the corresponding leg of κ.
    pub fn build_xi(&self, u: &ModuleRep, v: &ModuleRep, w: &ModuleRep, z: &ModuleRep) -> Result<TensorOperator<F>, TwinedError> {
        let legs = [u, v, w, z];
        let factors = [
            (self.kappa.coproduct_leg(0), -1),
            (self.kappa.insert_identity_leg(3), 1),
            (self.kappa.coproduct_leg(1), 1),
            (self.kappa.insert_identity_leg(0), 1),
            (self.kappa.coproduct_leg(2), -1),
        ];
        let mut acc: Option<Matrix<F>> = None;
        for (el, sign) in &factors {
            let m = self.power(el, &legs, *sign)?;
            acc = Some(match acc {
                None => m,
                Some(a) => a.matmul(&m).expect("same space"),
            });
        }
        Ok(TensorOperator::new(
            legs.iter().map(|m| m.dim()).collect(),
            acc.expect("five factors"),
        ))
    }

    /// `q_{U,V,W,Z}: (U⊗V)⊗(W⊗Z) → (U⊗V)⊗(W⊗Z)`.
    pub fn q_morphism(&self, u: &Obj, v: &Obj, w: &Obj, z: &Obj, method: QMethod) -> Result<Morphism<F>, TwinedError> {
        let uv = Obj::tensor(u, v)?;
        let wz = Obj::tensor(w, z)?;
        match method {
            QMethod::Composition => {
                let vw = Obj::tensor(v, w)?;
                let id_u = Morphism::identity(u);
                let id_z = Morphism::identity(z);
                Morphism::chain(&[
                    self.associator_inv(u, v, &wz)?,
                    id_u.tensor(&self.associator(v, w, z)?)?,
                    self.associator(u, &vw, z)?,
                    self.associator(u, v, w)?.tensor(&id_z)?,
                    self.associator_inv(&uv, w, z)?,
                ])
            }
            QMethod::Xi => {
                let xi = self.build_xi(u.module(), v.module(), w.module(), z.module())?;
                let obj = Obj::tensor(&uv, &wz)?;
                Ok(Morphism::new(obj.clone(), obj, xi.matrix))
            }
        }
    }

    /// `(ρ_U, λ_U)`: `U⊗1 → U` and `1⊗U → U`, identity matrices.
    pub fn unit_isos(&self, u: &Obj, unit: &Obj) -> Result<(Morphism<F>, Morphism<F>), TwinedError> {
        let rho = Morphism::new(Obj::tensor(u, unit)?, u.clone(), Matrix::identity(u.dim() * unit.dim()));
        let lambda = Morphism::new(Obj::tensor(unit, u)?, u.clone(), Matrix::identity(u.dim() * unit.dim()));
        Ok((rho, lambda))
    }

    /// K on a module, exactly.
    pub fn k_matrix(&self, v: &ModuleRep) -> Result<RationalMatrix, TwinedError> {
        self.k.evaluate(v)
    }
}
