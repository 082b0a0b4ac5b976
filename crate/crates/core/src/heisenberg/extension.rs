use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finmod::{BilinearForm, FiniteAbelianGroup};

/// Largest `|K|²` for which addition and cocycle tables are precomputed.
const TABLE_LIMIT: usize = 1 << 23;

/// The central extension `Z/n × K` with law
/// `(α, P)(α′, P′) = (α + α′ + β(P, P′), P + P′)` for a bilinear `β`.
///
/// Element `(α, P)` has index `α·|K| + P`, so the identity is 0 and central
/// elements come first.
#[derive(Debug, Clone)]
pub struct CentralExtension {
    k: FiniteAbelianGroup,
    n: u32,
    cocycle: BilinearForm,
    tables: Option<Arc<Tables>>,
}

#[derive(Debug)]
struct Tables {
    add: Vec<u32>,
    beta: Vec<u32>,
}

impl PartialEq for CentralExtension {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.n == other.n && self.cocycle == other.cocycle
    }
}

impl Eq for CentralExtension {}

impl CentralExtension {
    pub fn new(cocycle: BilinearForm) -> Self {
        let k = cocycle.space().clone();
        let n = cocycle.modulus();
        let size = k.order();
        let tables = (size.saturating_mul(size) <= TABLE_LIMIT).then(|| {
            let mut add = Vec::with_capacity(size * size);
            let mut beta = Vec::with_capacity(size * size);
            let coords: Vec<_> = k.elements().map(|p| k.coords_array(p)).collect();
            for p in k.elements() {
                for q in k.elements() {
                    add.push(k.add(p, q) as u32);
                    beta.push(cocycle.eval_coords(&coords[p], &coords[q]));
                }
            }
            Arc::new(Tables { add, beta })
        });
        Self { k, n, cocycle, tables }
    }

    pub fn quotient_group(&self) -> &FiniteAbelianGroup {
        &self.k
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn cocycle(&self) -> &BilinearForm {
        &self.cocycle
    }

    pub fn order(&self) -> usize {
        self.n as usize * self.k.order()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn element(&self, alpha: u32, p: usize) -> usize {
        (alpha % self.n) as usize * self.k.order() + p
    }

    /// `(α, P)` of an element.
    pub fn parts(&self, a: usize) -> (u32, usize) {
        ((a / self.k.order()) as u32, a % self.k.order())
    }

    pub fn central(&self, alpha: u32) -> usize {
        self.element(alpha, 0)
    }

    pub fn lift(&self, p: usize) -> usize {
        p
    }

    pub fn project(&self, a: usize) -> usize {
        a % self.k.order()
    }

    pub fn beta(&self, p: usize, q: usize) -> u32 {
        match &self.tables {
            Some(t) => t.beta[p * self.k.order() + q],
            None => self.cocycle.eval(p, q),
        }
    }

    fn add_k(&self, p: usize, q: usize) -> usize {
        match &self.tables {
            Some(t) => t.add[p * self.k.order() + q] as usize,
            None => self.k.add(p, q),
        }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let m = self.k.order();
        let (alpha, p) = (a / m, a % m);
        let (beta, q) = (b / m, b % m);
        let c = (alpha as u64 + beta as u64 + self.beta(p, q) as u64) % self.n as u64;
        c as usize * m + self.add_k(p, q)
    }

    /// `(α, P)⁻¹ = (-α - β(P, -P), -P)`.
    pub fn inv(&self, a: usize) -> usize {
        let (alpha, p) = self.parts(a);
        let neg = self.k.neg(p);
        let n = self.n as u64;
        let c = (2 * n - alpha as u64 - self.beta(p, neg) as u64) % n;
        self.element(c as u32, neg)
    }

    pub fn pow(&self, a: usize, mut k: u64) -> usize {
        let mut base = a;
        let mut acc = 0;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `aba⁻¹b⁻¹`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.inv(self.mul(b, a)))
    }

    /// The commutator pairing `e(P, Q) = β(P, Q) - β(Q, P)`.
    pub fn commutator_form(&self) -> BilinearForm {
        self.cocycle.antisymmetrization()
    }

    pub fn commutator_pairing(&self, p: usize, q: usize) -> u32 {
        (self.beta(p, q) + self.n - self.beta(q, p)) % self.n
    }

    /// The commutator of arbitrary lifts of `P` and `Q`, as a central dlog,
    /// or `None` if it is not central.
    pub fn lift_commutator(&self, p: usize, q: usize, alpha: u32, alpha2: u32) -> Option<u32> {
        let c = self.commutator(self.element(alpha, p), self.element(alpha2, q));
        let (v, r) = self.parts(c);
        (r == 0).then_some(v)
    }

    /// Standard generators: the central generator, then lifts `(0, e_i)`.
    pub fn generators(&self) -> Vec<usize> {
        let mut out = vec![self.central(1)];
        out.extend((0..self.k.rank()).map(|i| self.lift(self.k.basis(i))));
        out
    }

    pub fn is_central(&self, a: usize) -> bool {
        self.generators().iter().all(|&g| self.mul(a, g) == self.mul(g, a))
    }

    /// The center, by a scan over all elements.
    pub fn center(&self) -> Vec<usize> {
        let gens = self.generators();
        self.elements().filter(|&a| gens.iter().all(|&g| self.mul(a, g) == self.mul(g, a))).collect()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Whether a permutation of the element set is a group homomorphism,
    /// checked over all pairs.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        if perm.len() != self.order() || perm[0] != 0 {
            return false;
        }
        let mut seen = vec![false; perm.len()];
        for &x in perm {
            if x >= perm.len() || std::mem::replace(&mut seen[x], true) {
                return false;
            }
        }
        self.elements().all(|a| self.elements().all(|b| perm[self.mul(a, b)] == self.mul(perm[a], perm[b])))
    }

    /// Half the commutator form as a cocycle, for odd `n`.
    pub fn half_commutator(form: &BilinearForm) -> Result<BilinearForm> {
        let n = form.modulus();
        if n.is_multiple_of(2) {
            return Err(Error::EvenModulus(n));
        }
        let half = (n as u64).div_ceil(2);
        let gram = form.gram().iter().map(|&g| (g as u64 * half % n as u64) as u32).collect();
        BilinearForm::new(form.space().clone(), n, gram)
    }
}
