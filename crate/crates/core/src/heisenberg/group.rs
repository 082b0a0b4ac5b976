use crate::error::{Error, Result};
use crate::finmod::{standard_gram, BilinearForm, FiniteAbelianGroup, SymplecticPairing};
use crate::heisenberg::CentralExtension;

/// The Heisenberg group of type `δ = (d_1 | … | d_g)`: `Z/n × H × H*` with
/// `H = ⊕ Z/d_i`, `n` the exponent of `H`, and law
/// `(α, x, ℓ)(α′, x′, ℓ′) = (α + α′ + ℓ′(x), x + x′, ℓ + ℓ′)`.
///
/// Quotient coordinates are `x_1..x_g, ℓ_1..ℓ_g`; a character acts by
/// `ℓ(x) = Σ ℓ_i x_i (n / d_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeisenbergGroup {
    h: FiniteAbelianGroup,
    ext: CentralExtension,
}

impl HeisenbergGroup {
    pub fn new(divisors: &[u32]) -> Result<Self> {
        let h = FiniteAbelianGroup::new(divisors)?;
        if h.rank() == 0 || 2 * h.rank() > crate::finmod::MAX_RANK {
            return Err(Error::Unsupported(format!("type of length {} is out of range 1..=4", h.rank())));
        }
        if divisors.iter().any(|&d| d < 2) {
            return Err(Error::InvalidDivisors { divisors: divisors.to_vec(), reason: "entries must be at least 2" });
        }
        let n = h.exponent();
        let g = h.rank();
        let mut doubled = divisors.to_vec();
        doubled.extend_from_slice(divisors);
        let k = FiniteAbelianGroup::from_factors(&doubled)?;
        let r = 2 * g;
        let mut gram = vec![0; r * r];
        for (i, &d) in divisors.iter().enumerate() {
            gram[i * r + g + i] = n / d;
        }
        let f = BilinearForm::new(k, n, gram)?;
        Ok(Self { h, ext: CentralExtension::new(f) })
    }

    /// Type `(n, …, n)` of length `g`.
    pub fn standard(n: u32, g: usize) -> Result<Self> {
        Self::new(&vec![n; g])
    }

    pub fn ext(&self) -> &CentralExtension {
        &self.ext
    }

    pub fn divisors(&self) -> &[u32] {
        self.h.divisors()
    }

    pub fn genus(&self) -> usize {
        self.h.rank()
    }

    pub fn modulus(&self) -> u32 {
        self.ext.modulus()
    }

    pub fn quotient_group(&self) -> &FiniteAbelianGroup {
        self.ext.quotient_group()
    }

    /// `n · Π d_i²`.
    pub fn expected_order(&self) -> usize {
        self.modulus() as usize * self.h.order() * self.h.order()
    }

    pub fn element(&self, alpha: u32, x: &[u32], l: &[u32]) -> usize {
        let mut coords = x.to_vec();
        coords.extend_from_slice(l);
        self.ext.element(alpha, self.quotient_group().index_of(&coords))
    }

    /// `(α, x, ℓ)` coordinates.
    pub fn parts(&self, a: usize) -> (u32, Vec<u32>, Vec<u32>) {
        let (alpha, p) = self.ext.parts(a);
        let mut c = self.quotient_group().coords(p);
        let l = c.split_off(self.genus());
        (alpha, c, l)
    }

    /// `f(P, Q) = ℓ_Q(x_P)`.
    pub fn f(&self, p: usize, q: usize) -> u32 {
        self.ext.beta(p, q)
    }

    /// The quotient point `(x, 0)` and `(0, ℓ)` of `P`.
    pub fn split_point(&self, p: usize) -> (usize, usize) {
        let k = self.quotient_group();
        let g = self.genus();
        let mut c = k.coords(p);
        let mut xs = c.clone();
        for v in xs.iter_mut().skip(g) {
            *v = 0;
        }
        for v in c.iter_mut().take(g) {
            *v = 0;
        }
        (k.index_of(&xs), k.index_of(&c))
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.ext.mul(a, b)
    }

    pub fn inv(&self, a: usize) -> usize {
        self.ext.inv(a)
    }

    /// Commutator pairing `e(P, Q) = ℓ_Q(x_P) - ℓ_P(x_Q)`, the dlog of
    /// `[P̃, Q̃]` for any lifts.
    pub fn commutator_pairing(&self, p: usize, q: usize) -> u32 {
        self.ext.commutator_pairing(p, q)
    }

    pub fn center(&self) -> Vec<usize> {
        self.ext.center()
    }

    /// The commutator pairing as a symplectic pairing over the trivial group.
    pub fn symplectic(&self) -> Result<SymplecticPairing> {
        use crate::finmod::{FiniteGroup, GammaModule, MuN};
        use std::sync::Arc;
        let one = Arc::new(FiniteGroup::cyclic(1));
        let space = GammaModule::trivial(one.clone(), self.quotient_group().clone());
        SymplecticPairing::new(space, MuN::trivial(one, self.modulus())?, self.ext.commutator_form(), true)
    }

    /// Whether the commutator pairing is the standard `[[0, I], [-I, 0]]`.
    pub fn is_standard_pairing(&self) -> bool {
        self.h.divisors().iter().all(|&d| d == self.modulus())
            && self.ext.commutator_form().gram() == standard_gram(self.genus(), self.modulus()).as_slice()
    }
}

/// `Z/n × K` with law `(α, P)(α′, P′) = (α + α′ + ½e(P, P′), P + P′)`.
pub fn variant_group(e: &SymplecticPairing) -> Result<CentralExtension> {
    Ok(CentralExtension::new(halve(e.form())?))
}

/// `½·form`, for odd modulus.
pub fn halve(form: &BilinearForm) -> Result<BilinearForm> {
    CentralExtension::half_commutator(form)
}

/// The isomorphism from a Heisenberg group to its variant group sending
/// `w₁w₂·α ↦ w₁′w₂′·α`, where `w₁ = (0, x, 0)` and `w₂ = (0, 0, ℓ)`.
///
/// The central correction is `α - f(w₁, w₂) + s·½e(w₁, w₂)`; the sign `s`
/// is fixed at construction as the one making the map a homomorphism.
#[derive(Debug, Clone)]
pub struct YuIsomorphism {
    source: HeisenbergGroup,
    target: CentralExtension,
    sign: i8,
    corrections: Vec<u32>,
}

impl YuIsomorphism {
    pub fn new(source: &HeisenbergGroup) -> Result<Self> {
        let n = source.modulus();
        if n.is_multiple_of(2) {
            return Err(Error::EvenModulus(n));
        }
        let target = variant_group(&source.symplectic()?)?;
        for sign in [1i8, -1] {
            let mut phi = Self { source: source.clone(), target: target.clone(), sign, corrections: Vec::new() };
            phi.corrections = source.quotient_group().elements().map(|p| phi.correction(p) as u32).collect();
            if phi.is_homomorphism_on_basis() {
                return Ok(phi);
            }
        }
        Err(Error::NotBilinear("neither sign choice gives a homomorphism".into()))
    }

    pub fn source(&self) -> &HeisenbergGroup {
        &self.source
    }

    pub fn target(&self) -> &CentralExtension {
        &self.target
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    fn correction(&self, p: usize) -> u64 {
        let n = self.source.modulus() as u64;
        let (w1, w2) = self.source.split_point(p);
        let f = self.source.f(w1, w2) as u64;
        let half = self.target.beta(w1, w2) as u64;
        let s = if self.sign > 0 { half } else { (n - half) % n };
        (n - f + s) % n
    }

    pub fn apply(&self, a: usize) -> usize {
        let (alpha, p) = self.source.ext().parts(a);
        let n = self.source.modulus() as u64;
        self.target.element(((alpha as u64 + self.corrections[p] as u64) % n) as u32, p)
    }

    pub fn apply_inverse(&self, b: usize) -> usize {
        let (alpha, p) = self.target.parts(b);
        let n = self.source.modulus() as u64;
        self.source.ext().element(((alpha as u64 + n - self.corrections[p] as u64) % n) as u32, p)
    }

    fn is_homomorphism_on_basis(&self) -> bool {
        let k = self.source.quotient_group();
        let basis: Vec<usize> = (0..k.rank()).map(|i| k.basis(i)).collect();
        basis.iter().all(|&p| basis.iter().all(|&q| self.respects(p, q)))
    }

    fn respects(&self, a: usize, b: usize) -> bool {
        self.apply(self.source.mul(a, b)) == self.target.mul(self.apply(a), self.apply(b))
    }

    /// Exhaustive check over all element pairs.
    pub fn is_homomorphism(&self) -> bool {
        let ext = self.source.ext();
        ext.elements().all(|a| ext.elements().all(|b| self.respects(a, b)))
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        self.source.ext().elements().all(|a| !std::mem::replace(&mut seen[self.apply(a)], true))
    }

    pub fn is_trivial_on_center(&self) -> bool {
        (0..self.source.modulus()).all(|alpha| {
            let z = self.source.ext().central(alpha);
            self.apply(z) == self.target.central(alpha)
        })
    }

    pub fn is_trivial_on_quotient(&self) -> bool {
        self.source.ext().elements().all(|a| self.target.project(self.apply(a)) == self.source.ext().project(a))
    }
}
