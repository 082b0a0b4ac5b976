use std::sync::Arc;

use crate::cohomology::{Cocycle1, Cocycle2, CohClass};
use crate::error::{Error, Result};
use crate::finmod::{GammaModule, MuN};
use crate::heisenberg::{twist_action, GammaHeisenberg, HeisenbergAction, KMatrix};

/// `K = H ⊕ H*` over Γ with the pairing `f((x, ℓ), (x′, ℓ′)) = ℓ′(x)`, a
/// twisting cocycle `χ ∈ Z¹(Γ, K*)`, and optionally a symplectic twist
/// `S: Γ -> Sp(K)`.
#[derive(Debug, Clone)]
pub struct LagrangianThetaData {
    heis: GammaHeisenberg,
    chi: Cocycle1,
    symplectic: Option<Vec<KMatrix>>,
    eta_module: Arc<GammaModule>,
    mu_module: Arc<GammaModule>,
}

impl LagrangianThetaData {
    /// Character twist only. `chi = None` means `χ = 0`.
    pub fn new(h_module: Arc<GammaModule>, mu: MuN, chi: Option<Cocycle1>) -> Result<Self> {
        let heis = GammaHeisenberg::new(h_module, mu)?;
        let kd = Arc::new(heis.k_dual().module.clone());
        let chi = match chi {
            Some(c) if c.module().as_ref() != kd.as_ref() => {
                return Err(Error::TypeMismatch("χ must take values in K*".into()));
            }
            Some(c) => Cocycle1::new(kd, c.values().to_vec())?,
            None => Cocycle1::zero(kd),
        };
        let eta_module = heis.k_module().clone();
        let mu_module = Arc::new(heis.mu().as_module().clone());
        Ok(Self { heis, chi, symplectic: None, eta_module, mu_module })
    }

    /// Adds a symplectic twist; the cocycle module for `η` becomes `K` with
    /// `σ` acting by `S_σ ∘ σ₀`.
    pub fn with_symplectic_twist(mut self, s: Vec<KMatrix>) -> Result<Self> {
        twist_action(&self.heis, &self.chi, &s)?;
        let k = self.heis.k_module().clone();
        let kg = k.module().clone();
        let twisted =
            GammaModule::from_fn(k.group().clone(), kg.clone(), |sigma, p| s[sigma].apply(&kg, k.act(sigma, p)))?
                .with_name(format!("{}[S]", k.name()));
        self.eta_module = Arc::new(twisted);
        self.symplectic = Some(s);
        Ok(self)
    }

    pub fn heisenberg(&self) -> &GammaHeisenberg {
        &self.heis
    }

    pub fn chi(&self) -> &Cocycle1 {
        &self.chi
    }

    pub fn symplectic_twist(&self) -> Option<&[KMatrix]> {
        self.symplectic.as_deref()
    }

    /// The Γ-module on `K` in which `η` must be a cocycle.
    pub fn eta_module(&self) -> &Arc<GammaModule> {
        &self.eta_module
    }

    /// `μ_n` as the coefficient module of the obstruction.
    pub fn mu_module(&self) -> &Arc<GammaModule> {
        &self.mu_module
    }

    pub fn modulus(&self) -> u32 {
        self.heis.mu().n()
    }

    pub fn f(&self, p: usize, q: usize) -> u32 {
        self.heis.heisenberg().f(p, q)
    }

    /// `H` and `H*` are isotropic for `f` and `f(P, Q) - f(Q, P)` is the
    /// commutator pairing.
    pub fn is_lagrangian(&self) -> bool {
        let hk = &self.heis;
        let (nh, nd) = (hk.h_module().module().order(), hk.h_dual().module.module().order());
        let n = self.modulus();
        let ext = hk.ext();
        let k = ext.quotient_group();
        let h_iso = (0..nh).all(|x| (0..nh).all(|y| self.f(hk.point(x, 0), hk.point(y, 0)) == 0));
        let d_iso = (0..nd).all(|a| (0..nd).all(|b| self.f(hk.point(0, a), hk.point(0, b)) == 0));
        let e_ok = k
            .elements()
            .all(|p| k.elements().all(|q| (self.f(p, q) + n - self.f(q, p)) % n == ext.commutator_pairing(p, q)));
        h_iso && d_iso && e_ok
    }

    fn check_eta(&self, eta: &Cocycle1) -> Result<()> {
        if eta.module().as_ref() != self.eta_module.as_ref() {
            return Err(Error::TypeMismatch("η is not a cocycle on K with this action".into()));
        }
        if !eta.satisfies_identity() {
            return Err(Error::NotACocycle("η".into()));
        }
        Ok(())
    }

    /// The twisted Heisenberg action `σ∗`.
    pub fn action(&self) -> Result<HeisenbergAction> {
        let s = match &self.symplectic {
            Some(s) => s.clone(),
            None => vec![KMatrix::identity(self.heis.ext().quotient_group().rank()); self.chi.values().len()],
        };
        twist_action(&self.heis, &self.chi, &s)
    }
}

/// The obstruction of one cocycle, with its linear and quadratic parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionRecord {
    pub eta: Cocycle1,
    pub input: CohClass,
    pub delta: Cocycle2,
    pub delta_class: CohClass,
    pub linear_part: Cocycle2,
    pub quadratic_part: Cocycle2,
}

impl ObstructionRecord {
    /// Class-level comparison of the obstruction.
    pub fn same_class(&self, other: &ObstructionRecord) -> bool {
        self.delta_class.same_class(&other.delta_class)
    }
}

/// `Δ(η)(σ, τ) = χ_σ(σ·η(τ)) + f(η(σ), σ·η(τ))` in dlog coordinates.
///
/// Defined for character twists only; data carrying a symplectic twist is
/// rejected.
pub fn delta(data: &LagrangianThetaData, eta: &Cocycle1) -> Result<ObstructionRecord> {
    if data.symplectic.as_ref().is_some_and(|s| s.iter().any(|m| !m.is_identity())) {
        return Err(Error::Unsupported("the explicit formula needs a pure character twist".into()));
    }
    data.check_eta(eta)?;
    let g = eta.module().group().clone();
    let n = data.modulus();
    let k = &data.eta_module;
    let kd = data.heis.k_dual();
    let mut linear = Vec::with_capacity(g.order() * g.order());
    let mut quadratic = Vec::with_capacity(g.order() * g.order());
    for s in g.elements() {
        for t in g.elements() {
            let moved = k.act(s, eta.value(t));
            linear.push(kd.eval(data.chi.value(s), moved) as usize);
            quadratic.push(data.f(eta.value(s), moved) as usize);
        }
    }
    let total = linear.iter().zip(&quadratic).map(|(&a, &b)| (a + b) % n as usize).collect();
    let delta = Cocycle2::new(data.mu_module.clone(), total)?;
    Ok(ObstructionRecord {
        eta: eta.clone(),
        input: CohClass::of1(eta),
        delta_class: CohClass::of2(&delta)?,
        linear_part: Cocycle2::new(data.mu_module.clone(), linear)?,
        quadratic_part: Cocycle2::new(data.mu_module.clone(), quadratic)?,
        delta,
    })
}

/// `N_σ · σ∗(N_τ) · N_{στ}⁻¹` with lifts `N_σ = (0, η(σ))` in the twisted
/// Heisenberg group.
pub fn delta_via_connecting_cocycle(data: &LagrangianThetaData, eta: &Cocycle1) -> Result<Cocycle2> {
    data.check_eta(eta)?;
    let action = data.action()?;
    let ext = action.ext();
    let g = eta.module().group();
    let mut values = Vec::with_capacity(g.order() * g.order());
    for s in g.elements() {
        for t in g.elements() {
            let lift = |x: usize| ext.lift(eta.value(x));
            let c = ext.mul(ext.mul(lift(s), action.act(s, lift(t))), ext.inv(lift(g.mul(s, t))));
            let (alpha, p) = ext.parts(c);
            if p != 0 {
                return Err(Error::NotACocycle("lift coboundary is not central".into()));
            }
            values.push(alpha as usize);
        }
    }
    Cocycle2::new(data.mu_module.clone(), values)
}

pub fn delta_via_connecting(data: &LagrangianThetaData, eta: &Cocycle1) -> Result<CohClass> {
    CohClass::of2(&delta_via_connecting_cocycle(data, eta)?)
}

/// Cross term and scaling identities of the obstruction map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticityReport {
    /// `Δ(η + η′) - Δ(η) - Δ(η′)`.
    pub cross_term: Cocycle2,
    /// `Δ₁(η + η′) = Δ₁(η) + Δ₁(η′)` pointwise.
    pub linear_additive: bool,
    /// `Δ₁(aη) = aΔ₁(η)` pointwise for every `a mod n`.
    pub linear_homogeneous: bool,
    /// `Δ₂(aη) = a²Δ₂(η)` pointwise for every `a mod n`.
    pub quadratic_homogeneous: bool,
}

impl QuadraticityReport {
    pub fn holds(&self) -> bool {
        self.linear_additive && self.linear_homogeneous && self.quadratic_homogeneous
    }
}

pub fn cross_term(data: &LagrangianThetaData, eta: &Cocycle1, eta2: &Cocycle1) -> Result<Cocycle2> {
    let (a, b, ab) = (delta(data, eta)?, delta(data, eta2)?, delta(data, &eta.add(eta2))?);
    Ok(ab.delta.sub(&a.delta).sub(&b.delta))
}

pub fn quadraticity_report(data: &LagrangianThetaData, eta: &Cocycle1, eta2: &Cocycle1) -> Result<QuadraticityReport> {
    let (a, b, ab) = (delta(data, eta)?, delta(data, eta2)?, delta(data, &eta.add(eta2))?);
    let n = data.modulus() as i64;
    let mut linear_homogeneous = true;
    let mut quadratic_homogeneous = true;
    for s in 0..n {
        let scaled = delta(data, &eta.scale(s))?;
        linear_homogeneous &= scaled.linear_part == a.linear_part.scale(s);
        quadratic_homogeneous &= scaled.quadratic_part == a.quadratic_part.scale(s * s);
    }
    Ok(QuadraticityReport {
        cross_term: ab.delta.sub(&a.delta).sub(&b.delta),
        linear_additive: ab.linear_part == a.linear_part.add(&b.linear_part),
        linear_homogeneous,
        quadratic_homogeneous,
    })
}

/// Whether the cross term is additive in its first argument up to
/// coboundary, over all triples from `cocycles`.
pub fn cross_term_is_biadditive(data: &LagrangianThetaData, cocycles: &[Cocycle1]) -> Result<bool> {
    for x in cocycles {
        for y in cocycles {
            for z in cocycles {
                let lhs = cross_term(data, &x.add(y), z)?;
                let rhs = cross_term(data, x, z)?.add(&cross_term(data, y, z)?);
                if !lhs.sub(&rhs).is_coboundary() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Whether `n` times the obstruction class is trivial in `H²(Γ, μ_m)`,
/// where `m` is the modulus the record's values live in.
pub fn torsion_check(rec: &ObstructionRecord, n: i64) -> bool {
    rec.delta.scale(n).is_coboundary()
}
