use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finmod::FiniteGroup;
use crate::guard;
use crate::heisenberg::{CentralExtension, HeisenbergGroup, KMatrix, YuIsomorphism};

/// An automorphism of a Heisenberg group fixing the center pointwise, as a
/// permutation of element indices, with its induced map on the quotient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CentrallyTrivialAut {
    perm: Vec<usize>,
    quotient: KMatrix,
}

impl CentrallyTrivialAut {
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn apply(&self, a: usize) -> usize {
        self.perm[a]
    }

    pub fn quotient(&self) -> &KMatrix {
        &self.quotient
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &CentrallyTrivialAut, ext: &CentralExtension) -> CentrallyTrivialAut {
        let perm = other.perm.iter().map(|&x| self.perm[x]).collect();
        CentrallyTrivialAut { perm, quotient: self.quotient.compose(&other.quotient, ext.quotient_group()) }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Builds the record from a permutation, checking that it is an
    /// automorphism fixing the center and reading off the quotient map.
    pub fn from_perm(ext: &CentralExtension, perm: Vec<usize>) -> Result<Self> {
        if !ext.is_automorphism(&perm) {
            return Err(Error::TypeMismatch("not an automorphism".into()));
        }
        if (0..ext.modulus()).any(|a| perm[ext.central(a)] != ext.central(a)) {
            return Err(Error::TypeMismatch("does not fix the center".into()));
        }
        let k = ext.quotient_group();
        let columns: Vec<usize> = (0..k.rank()).map(|j| ext.project(perm[ext.lift(k.basis(j))])).collect();
        Ok(Self { quotient: KMatrix::from_columns(k, &columns), perm })
    }
}

/// Output of [`enumerate_g1`].
#[derive(Debug, Clone)]
pub struct G1Enumeration {
    /// All centrally trivial automorphisms, in lex order of generator images.
    pub automorphisms: Vec<CentrallyTrivialAut>,
    /// Indices (into `automorphisms`) of those trivial on the quotient.
    pub g2: Vec<usize>,
    /// Distinct induced quotient maps, sorted.
    pub quotient_image: Vec<KMatrix>,
}

/// Summary counts of a [`G1Enumeration`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct G1Summary {
    pub g1_order: usize,
    pub g2_order: usize,
    pub quotient_image_order: usize,
}

impl G1Enumeration {
    pub fn summary(&self) -> G1Summary {
        G1Summary {
            g1_order: self.automorphisms.len(),
            g2_order: self.g2.len(),
            quotient_image_order: self.quotient_image.len(),
        }
    }

    /// The enumerated automorphisms as an abstract group under composition.
    pub fn as_group(&self, ext: &CentralExtension) -> Result<FiniteGroup> {
        let index: HashMap<&[usize], usize> =
            self.automorphisms.iter().enumerate().map(|(i, a)| (a.perm.as_slice(), i)).collect();
        let id = self
            .automorphisms
            .iter()
            .position(|a| a.is_identity())
            .ok_or_else(|| Error::NotAGroup("identity missing".into()))?;
        // renumber so the identity comes first
        let mut order: Vec<usize> = (0..self.automorphisms.len()).collect();
        order.swap(0, id);
        let pos: Vec<usize> = {
            let mut p = vec![0; order.len()];
            for (new, &old) in order.iter().enumerate() {
                p[old] = new;
            }
            p
        };
        let m = order.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &order {
            for &b in &order {
                let c = self.automorphisms[a].compose(&self.automorphisms[b], ext);
                let i = index.get(c.perm.as_slice()).ok_or_else(|| Error::NotAGroup("not closed".into()))?;
                table.push(pos[*i]);
            }
        }
        FiniteGroup::from_table("G1", m, table)
    }

    pub fn find(&self, perm: &[usize]) -> Option<usize> {
        self.automorphisms.iter().position(|a| a.perm == perm)
    }
}

/// All automorphisms of `H` fixing the center pointwise.
///
/// A candidate is a choice of images for the lifts `(0, e_i)` of the quotient
/// basis. The defining relations (orders of the generators and the
/// commutators between them) are checked as each image is chosen; a choice
/// satisfying them extends uniquely through the normal form
/// `z^(α - β(x, ℓ)) · Π a_i^(x_i) · Π b_j^(ℓ_j)`.
pub fn enumerate_g1(heis: &HeisenbergGroup) -> Result<G1Enumeration> {
    let ext = heis.ext();
    let k = ext.quotient_group();
    let r = k.rank();
    guard::check("enumerate_g1", guard::pow_count(ext.order(), r))?;
    let gens: Vec<usize> = (0..r).map(|i| ext.lift(k.basis(i))).collect();
    let orders: Vec<u64> = k.divisors().iter().map(|&d| d as u64).collect();
    let mut automorphisms = Vec::new();
    let mut images = Vec::with_capacity(r);
    search(ext, &gens, &orders, &mut images, &mut automorphisms);
    let g2 = automorphisms.iter().enumerate().filter(|(_, a)| a.quotient.is_identity()).map(|(i, _)| i).collect();
    let quotient_image: BTreeSet<KMatrix> = automorphisms.iter().map(|a| a.quotient.clone()).collect();
    Ok(G1Enumeration { automorphisms, g2, quotient_image: quotient_image.into_iter().collect() })
}

fn search(
    ext: &CentralExtension,
    gens: &[usize],
    orders: &[u64],
    images: &mut Vec<usize>,
    out: &mut Vec<CentrallyTrivialAut>,
) {
    let j = images.len();
    if j == gens.len() {
        if let Some(aut) = extend_images(ext, images) {
            out.push(aut);
        }
        return;
    }
    for c in ext.elements() {
        if ext.pow(c, orders[j]) != ext.pow(gens[j], orders[j]) {
            continue;
        }
        // [h(u), h(v)] = [u, v], which is central and so fixed by h
        if (0..j).any(|i| ext.commutator(images[i], c) != ext.commutator(gens[i], gens[j])) {
            continue;
        }
        images.push(c);
        search(ext, gens, orders, images, out);
        images.pop();
    }
}

fn extend_images(ext: &CentralExtension, images: &[usize]) -> Option<CentrallyTrivialAut> {
    let k = ext.quotient_group();
    let r = k.rank();
    let mut perm = vec![0usize; ext.order()];
    for p in k.elements() {
        // Π (0, e_i)^(P_i) in index order, in H and under h
        let mut word = 0usize;
        let mut image = 0usize;
        for i in 0..r {
            let c = k.coord(p, i) as u64;
            word = ext.mul(word, ext.pow(ext.lift(k.basis(i)), c));
            image = ext.mul(image, ext.pow(images[i], c));
        }
        // word = (γ, P); h(0, P) = h(word) · z^(-γ)
        let (gamma, q) = ext.parts(word);
        debug_assert_eq!(q, p);
        let n = ext.modulus();
        let fix = ext.central((n - gamma % n) % n);
        let base = ext.mul(image, fix);
        for alpha in 0..n {
            perm[ext.element(alpha, p)] = ext.mul(base, ext.central(alpha));
        }
    }
    CentrallyTrivialAut::from_perm(ext, perm).ok()
}

/// Verdict on the splitting of `1 -> K* -> G1 -> Sp(K)` through the
/// variant-group action.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitReport {
    /// Every section value is an enumerated centrally trivial automorphism.
    pub lands_in_g1: bool,
    /// The section composed with the quotient map is the identity.
    pub is_section: bool,
    /// The section is multiplicative on all pairs.
    pub is_homomorphism: bool,
    /// The quotient image is all of Sp(K).
    pub image_is_full: bool,
}

impl SplitReport {
    pub fn holds(&self) -> bool {
        self.lands_in_g1 && self.is_section && self.is_homomorphism && self.image_is_full
    }
}

/// `M ↦ Φ⁻¹ ∘ (α, P ↦ α, MP) ∘ Φ`, as a permutation.
pub fn section(phi: &YuIsomorphism, m: &KMatrix) -> Vec<usize> {
    let ext = phi.source().ext();
    let target = phi.target();
    let k = ext.quotient_group();
    ext.elements()
        .map(|a| {
            let (alpha, p) = target.parts(phi.apply(a));
            phi.apply_inverse(target.element(alpha, m.apply(k, p)))
        })
        .collect()
}

/// Checks the split of the G1 sequence for odd modulus against `sp`, the
/// full symplectic group of the quotient.
pub fn check_split(heis: &HeisenbergGroup, g1: &G1Enumeration, sp: &[KMatrix]) -> Result<SplitReport> {
    let phi = YuIsomorphism::new(heis)?;
    let ext = heis.ext();
    let k = ext.quotient_group();
    let sections: Vec<Vec<usize>> = sp.iter().map(|m| section(&phi, m)).collect();
    let found: Vec<Option<usize>> = sections.iter().map(|s| g1.find(s)).collect();
    let lands_in_g1 = found.iter().all(Option::is_some);
    let is_section = found.iter().zip(sp).all(|(f, m)| f.is_some_and(|i| g1.automorphisms[i].quotient == *m));
    let index: HashMap<&KMatrix, usize> = sp.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut is_homomorphism = true;
    'outer: for (i, a) in sp.iter().enumerate() {
        for (j, b) in sp.iter().enumerate() {
            let Some(&ab) = index.get(&a.compose(b, k)) else {
                is_homomorphism = false;
                break 'outer;
            };
            if ext.elements().any(|x| sections[ab][x] != sections[i][sections[j][x]]) {
                is_homomorphism = false;
                break 'outer;
            }
        }
    }
    let image_is_full = g1.quotient_image.len() == sp.len() && g1.quotient_image.iter().all(|m| index.contains_key(m));
    Ok(SplitReport { lands_in_g1, is_section, is_homomorphism, image_is_full })
}
