use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finmod::{FiniteAbelianGroup, FiniteGroup, GammaModule, MuN, MAX_RANK};

/// A bilinear map `K × K -> Z/n` given by its Gram matrix on the standard
/// generators: `β(P, Q) = Σ_ij P_i Q_j G_ij mod n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearForm {
    space: FiniteAbelianGroup,
    n: u32,
    gram: Vec<u32>,
}

impl BilinearForm {
    /// Rejects Gram matrices that are not well defined on the quotient
    /// residues (`G_ij · d_i` and `G_ij · d_j` must vanish mod `n`).
    pub fn new(space: FiniteAbelianGroup, n: u32, gram: Vec<u32>) -> Result<Self> {
        let r = space.rank();
        if gram.len() != r * r {
            return Err(Error::LengthMismatch { expected: r * r, got: gram.len() });
        }
        let d = space.divisors();
        for i in 0..r {
            for j in 0..r {
                let g = (gram[i * r + j] % n) as u64;
                if !(g * d[i] as u64).is_multiple_of(n as u64) || !(g * d[j] as u64).is_multiple_of(n as u64) {
                    return Err(Error::NotBilinear(format!("Gram entry ({i},{j}) is not well defined")));
                }
            }
        }
        let gram = gram.into_iter().map(|g| g % n).collect();
        Ok(Self { space, n, gram })
    }

    pub fn space(&self) -> &FiniteAbelianGroup {
        &self.space
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn gram(&self) -> &[u32] {
        &self.gram
    }

    pub fn eval(&self, p: usize, q: usize) -> u32 {
        self.eval_coords(&self.space.coords_array(p), &self.space.coords_array(q))
    }

    pub fn eval_coords(&self, p: &[u32; MAX_RANK], q: &[u32; MAX_RANK]) -> u32 {
        let r = self.space.rank();
        let mut acc: u64 = 0;
        for i in 0..r {
            if p[i] == 0 {
                continue;
            }
            let mut row: u64 = 0;
            for j in 0..r {
                row += self.gram[i * r + j] as u64 * q[j] as u64;
            }
            acc += p[i] as u64 * (row % self.n as u64);
        }
        (acc % self.n as u64) as u32
    }

    /// `β(P, Q) - β(Q, P)`.
    pub fn antisymmetrization(&self) -> BilinearForm {
        let r = self.space.rank();
        let n = self.n;
        let gram = (0..r * r).map(|k| (self.gram[k] + n - self.gram[(k % r) * r + k / r]) % n).collect();
        BilinearForm { space: self.space.clone(), n, gram }
    }

    /// Exhaustive check of `β(P, P) = 0`.
    pub fn is_alternating(&self) -> bool {
        self.space.elements().all(|p| self.eval(p, p) == 0)
    }

    /// Exhaustive check that `β(P, ·) ≡ 0` forces `P = 0`.
    pub fn is_nondegenerate(&self) -> bool {
        self.radical().len() == 1
    }

    /// Left radical `{P : β(P, ·) ≡ 0}`.
    pub fn radical(&self) -> Vec<usize> {
        self.space.elements().filter(|&p| self.space.elements().all(|q| self.eval(p, q) == 0)).collect()
    }

    /// Whether `P ↦ β(P, ·)` is a bijection `K -> Hom(K, Z/n)`, checked on tables.
    pub fn induces_isomorphism_to_dual(&self) -> bool {
        let mut images = std::collections::HashSet::new();
        for p in self.space.elements() {
            let row: Vec<u32> = (0..self.space.rank()).map(|j| self.eval(p, self.space.basis(j))).collect();
            images.insert(row);
        }
        // |Hom(K, Z/n)| = |K| when exp(K) | n
        images.len() == self.space.order()
    }
}

/// A nondegenerate alternating pairing on a Γ-module with values in `μ_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticPairing {
    space: GammaModule,
    mu: MuN,
    form: BilinearForm,
}

impl SymplecticPairing {
    /// Validates alternation and, when `require_nondegenerate`, nondegeneracy.
    pub fn new(space: GammaModule, mu: MuN, form: BilinearForm, require_nondegenerate: bool) -> Result<Self> {
        if form.space() != space.module() || form.modulus() != mu.n() {
            return Err(Error::TypeMismatch("form does not live on this module".into()));
        }
        if !form.is_alternating() {
            return Err(Error::NotBilinear("pairing is not alternating".into()));
        }
        if require_nondegenerate && !form.is_nondegenerate() {
            return Err(Error::NotBilinear("pairing is degenerate".into()));
        }
        Ok(Self { space, mu, form })
    }

    pub fn space(&self) -> &GammaModule {
        &self.space
    }

    pub fn mu(&self) -> &MuN {
        &self.mu
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn eval(&self, p: usize, q: usize) -> u32 {
        self.form.eval(p, q)
    }

    /// `e(σP, σQ) = σ·e(P, Q)` for all σ, P, Q.
    pub fn is_equivariant(&self) -> bool {
        let k = self.space.module();
        self.space.group().elements().all(|s| {
            k.elements().all(|p| {
                k.elements()
                    .all(|q| self.eval(self.space.act(s, p), self.space.act(s, q)) == self.mu.act(s, self.eval(p, q)))
            })
        })
    }
}

/// Gram matrix `[[0, I], [-I, 0]]` on `(Z/n)^{2g}` in the basis `x_1..x_g, y_1..y_g`.
pub fn standard_gram(g: usize, n: u32) -> Vec<u32> {
    let r = 2 * g;
    let mut gram = vec![0; r * r];
    for i in 0..g {
        gram[i * r + g + i] = 1;
        gram[(g + i) * r + i] = n - 1;
    }
    gram
}

/// The standard `ζ_n`-symplectic pairing on `(Z/n)^{2g}` with trivial Γ = 1.
pub fn standard_symplectic(g: usize, n: u32) -> Result<SymplecticPairing> {
    if g == 0 || n < 2 || 2 * g > MAX_RANK {
        return Err(Error::Unsupported(format!(
            "standard symplectic space needs 1 <= g <= 4 and n >= 2 (g={g}, n={n})"
        )));
    }
    let trivial = Arc::new(FiniteGroup::cyclic(1));
    let k = FiniteAbelianGroup::homogeneous(n, 2 * g)?;
    let form = BilinearForm::new(k.clone(), n, standard_gram(g, n))?;
    let space = GammaModule::trivial(trivial.clone(), k);
    let mu = MuN::trivial(trivial, n)?;
    SymplecticPairing::new(space, mu, form, true)
}
