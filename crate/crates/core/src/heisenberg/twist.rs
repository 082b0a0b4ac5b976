use std::sync::Arc;

use crate::cohomology::Cocycle1;
use crate::error::{Error, Result};
use crate::finmod::{dual_module, DualModule, GammaModule, MuN};
use crate::heisenberg::{section, CentralExtension, HeisenbergGroup, KMatrix, YuIsomorphism};

/// A Heisenberg group over a Γ-module `H`, with `K = H ⊕ H*` carrying the
/// induced action and the center `μ_n`.
#[derive(Debug, Clone)]
pub struct GammaHeisenberg {
    heis: HeisenbergGroup,
    mu: MuN,
    h_module: Arc<GammaModule>,
    h_dual: DualModule,
    k_module: Arc<GammaModule>,
    k_dual: DualModule,
}

impl GammaHeisenberg {
    /// `mu` must have modulus equal to the exponent of `H`.
    pub fn new(h_module: Arc<GammaModule>, mu: MuN) -> Result<Self> {
        let heis = HeisenbergGroup::new(h_module.module().divisors())?;
        if mu.n() != heis.modulus() {
            return Err(Error::ExponentMismatch { exponent: heis.modulus(), modulus: mu.n() });
        }
        let h_dual = dual_module(&h_module, &mu)?;
        let k_module = Arc::new(h_module.direct_sum(&h_dual.module)?);
        if k_module.module() != heis.quotient_group() {
            return Err(Error::TypeMismatch("quotient layout disagrees with H ⊕ H*".into()));
        }
        let k_dual = dual_module(&k_module, &mu)?;
        Ok(Self { heis, mu, h_module, h_dual, k_module, k_dual })
    }

    pub fn heisenberg(&self) -> &HeisenbergGroup {
        &self.heis
    }

    pub fn ext(&self) -> &CentralExtension {
        self.heis.ext()
    }

    pub fn mu(&self) -> &MuN {
        &self.mu
    }

    pub fn h_module(&self) -> &Arc<GammaModule> {
        &self.h_module
    }

    pub fn h_dual(&self) -> &DualModule {
        &self.h_dual
    }

    /// `K = H ⊕ H*` with the induced action.
    pub fn k_module(&self) -> &Arc<GammaModule> {
        &self.k_module
    }

    /// `K* = Hom(K, μ_n)`, where the twisting characters live.
    pub fn k_dual(&self) -> &DualModule {
        &self.k_dual
    }

    /// The point `(x, ℓ)` of `K`.
    pub fn point(&self, x: usize, l: usize) -> usize {
        x * self.h_dual.module.module().order() + l
    }

    /// `σ₀: (α, P) ↦ (σα, σP)`.
    pub fn base_action(&self, sigma: usize) -> Vec<usize> {
        let ext = self.ext();
        ext.elements()
            .map(|a| {
                let (alpha, p) = ext.parts(a);
                ext.element(self.mu.act(sigma, alpha), self.k_module.act(sigma, p))
            })
            .collect()
    }

    /// `(α, P) ↦ (α + χ(P), P)` for `χ ∈ K*`.
    pub fn shift(&self, chi: usize) -> Vec<usize> {
        let ext = self.ext();
        ext.elements()
            .map(|a| {
                let (alpha, p) = ext.parts(a);
                ext.element(alpha + self.k_dual.eval(chi, p), p)
            })
            .collect()
    }
}

/// A Γ-action on the Heisenberg element set, one permutation per σ.
#[derive(Debug, Clone)]
pub struct HeisenbergAction {
    ext: CentralExtension,
    perms: Vec<Vec<usize>>,
}

impl HeisenbergAction {
    pub fn act(&self, sigma: usize, a: usize) -> usize {
        self.perms[sigma][a]
    }

    pub fn perm(&self, sigma: usize) -> &[usize] {
        &self.perms[sigma]
    }

    pub fn ext(&self) -> &CentralExtension {
        &self.ext
    }

    /// Whether each `σ∗` is a group automorphism.
    pub fn preserves_law(&self) -> bool {
        self.perms.iter().all(|p| self.ext.is_automorphism(p))
    }

    /// Central elements fixed by every `σ∗`.
    pub fn fixed_central(&self) -> Vec<usize> {
        (0..self.ext.modulus()).map(|a| self.ext.central(a)).filter(|&z| self.perms.iter().all(|p| p[z] == z)).collect()
    }
}

/// The twisted action `σ∗ = shift(χ_σ) ∘ s(S_σ) ∘ σ₀`, where `s` is the
/// splitting of the symplectic group through the variant group.
///
/// Non-identity `S_σ` need odd modulus. Fails with
/// [`Error::NotACocycle`] unless `(στ)∗ = σ∗ ∘ τ∗` for all σ, τ.
pub fn twist_action(data: &GammaHeisenberg, chi: &Cocycle1, s: &[KMatrix]) -> Result<HeisenbergAction> {
    let gamma = data.h_module.group();
    if chi.module().as_ref() != &data.k_dual.module {
        return Err(Error::TypeMismatch("twisting cocycle must take values in K*".into()));
    }
    if s.len() != gamma.order() {
        return Err(Error::LengthMismatch { expected: gamma.order(), got: s.len() });
    }
    let ext = data.ext().clone();
    let k = ext.quotient_group();
    let e = |p: usize, q: usize| ext.commutator_pairing(p, q);
    if let Some(bad) = s.iter().position(|m| m.dim() != k.rank() || !m.preserves(k, e)) {
        return Err(Error::NotBilinear(format!("S at element {bad} does not preserve the commutator pairing")));
    }
    let phi = if s.iter().all(KMatrix::is_identity) { None } else { Some(YuIsomorphism::new(data.heisenberg())?) };
    let mut perms = Vec::with_capacity(gamma.order());
    for sigma in gamma.elements() {
        let base = data.base_action(sigma);
        let lifted = match &phi {
            Some(phi) => {
                let sm = section(phi, &s[sigma]);
                base.iter().map(|&x| sm[x]).collect()
            }
            None => base,
        };
        let shift = data.shift(chi.value(sigma));
        perms.push(lifted.iter().map(|&x| shift[x]).collect::<Vec<_>>());
    }
    for a in gamma.elements() {
        for b in gamma.elements() {
            let ab = gamma.mul(a, b);
            if ext.elements().any(|x| perms[ab][x] != perms[a][perms[b][x]]) {
                return Err(Error::NotACocycle(format!("twisted action fails (στ)∗ = σ∗τ∗ at ({a},{b})")));
            }
        }
    }
    Ok(HeisenbergAction { ext, perms })
}

/// The untwisted action `σ₀`.
pub fn base_action(data: &GammaHeisenberg) -> HeisenbergAction {
    let perms = data.h_module.group().elements().map(|s| data.base_action(s)).collect();
    HeisenbergAction { ext: data.ext().clone(), perms }
}
