use std::sync::Arc;

use crate::cohomology::{Cocycle1, Cocycle2, CohClass};
use crate::error::{Error, Result};
use crate::finmod::{FiniteAbelianGroup, FiniteGroup, GammaModule};

/// `0 -> A -> B -> C -> 0` of modules over one group, with the two maps as
/// element tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortExactSequence {
    a: Arc<GammaModule>,
    b: Arc<GammaModule>,
    c: Arc<GammaModule>,
    incl: Vec<usize>,
    proj: Vec<usize>,
    preimage: Vec<Option<usize>>,
}

impl ShortExactSequence {
    /// Validates that both maps are equivariant homomorphisms, the first
    /// injective, the second surjective, with image equal to kernel.
    pub fn new(
        a: Arc<GammaModule>,
        b: Arc<GammaModule>,
        c: Arc<GammaModule>,
        incl: Vec<usize>,
        proj: Vec<usize>,
    ) -> Result<Self> {
        if a.group() != b.group() || b.group() != c.group() {
            return Err(Error::NotExact("modules over different groups".into()));
        }
        let (ma, mb, mc) = (a.module(), b.module(), c.module());
        if incl.len() != ma.order() || proj.len() != mb.order() {
            return Err(Error::NotExact("map tables have the wrong length".into()));
        }
        if incl.iter().any(|&x| x >= mb.order()) || proj.iter().any(|&x| x >= mc.order()) {
            return Err(Error::NotExact("map value out of range".into()));
        }
        check_hom(a.as_ref(), b.as_ref(), &incl, "A -> B")?;
        check_hom(b.as_ref(), c.as_ref(), &proj, "B -> C")?;
        let mut preimage = vec![None; mb.order()];
        for x in ma.elements() {
            if preimage[incl[x]].replace(x).is_some() {
                return Err(Error::NotExact("A -> B is not injective".into()));
            }
        }
        let mut hit = vec![false; mc.order()];
        for y in mb.elements() {
            hit[proj[y]] = true;
            if (proj[y] == 0) != preimage[y].is_some() {
                return Err(Error::NotExact("image of A -> B differs from kernel of B -> C".into()));
            }
        }
        if hit.iter().any(|h| !h) {
            return Err(Error::NotExact("B -> C is not surjective".into()));
        }
        Ok(Self { a, b, c, incl, proj, preimage })
    }

    pub fn sub(&self) -> &Arc<GammaModule> {
        &self.a
    }

    pub fn middle(&self) -> &Arc<GammaModule> {
        &self.b
    }

    pub fn quotient(&self) -> &Arc<GammaModule> {
        &self.c
    }

    pub fn include(&self, x: usize) -> usize {
        self.incl[x]
    }

    pub fn project(&self, y: usize) -> usize {
        self.proj[y]
    }

    /// The section sending each element of C to its least preimage in B.
    pub fn least_section(&self) -> Vec<usize> {
        let mut s = vec![usize::MAX; self.c.module().order()];
        for y in self.b.module().elements() {
            let z = self.proj[y];
            if s[z] == usize::MAX {
                s[z] = y;
            }
        }
        s
    }

    /// The section sending each element of C to its greatest preimage in B,
    /// except `0 ↦ 0`.
    pub fn greatest_section(&self) -> Vec<usize> {
        let mut s = vec![0; self.c.module().order()];
        for y in self.b.module().elements() {
            let z = self.proj[y];
            if z != 0 {
                s[z] = y;
            }
        }
        s
    }

    /// Pushes a 2-cocycle on A forward to B.
    pub fn include_cocycle2(&self, c: &Cocycle2) -> Result<Cocycle2> {
        let values = c.values().iter().map(|&v| self.incl[v]).collect();
        Cocycle2::new(self.b.clone(), values)
    }
}

fn check_hom(src: &GammaModule, dst: &GammaModule, map: &[usize], what: &str) -> Result<()> {
    let (s, d) = (src.module(), dst.module());
    for x in s.elements() {
        for y in s.elements() {
            if map[s.add(x, y)] != d.add(map[x], map[y]) {
                return Err(Error::NotExact(format!("{what} is not additive")));
            }
        }
    }
    for g in src.group().elements() {
        for x in s.elements() {
            if map[src.act(g, x)] != dst.act(g, map[x]) {
                return Err(Error::NotExact(format!("{what} is not equivariant")));
            }
        }
    }
    Ok(())
}

/// The connecting 2-cocycle of a 1-cocycle on C through a section `C -> B`
/// with `0 ↦ 0`: lift, take the coboundary in B, and pull back to A.
pub fn connecting2_cocycle(ses: &ShortExactSequence, x: &Cocycle1, section: &[usize]) -> Result<Cocycle2> {
    if x.module().as_ref() != ses.c.as_ref() {
        return Err(Error::TypeMismatch("cocycle is not on the quotient module".into()));
    }
    if section.len() != ses.c.module().order()
        || section.iter().enumerate().any(|(z, &y)| y >= ses.b.module().order() || ses.proj[y] != z)
        || section[0] != 0
    {
        return Err(Error::NotExact("not a normalized section".into()));
    }
    let g = ses.b.group();
    let mb = ses.b.module();
    let lift: Vec<usize> = g.elements().map(|s| section[x.value(s)]).collect();
    let mut values = Vec::with_capacity(g.order() * g.order());
    for s in g.elements() {
        for t in g.elements() {
            // σ·ξ̃(τ) - ξ̃(στ) + ξ̃(σ)
            let y = mb.add(mb.sub(ses.b.act(s, lift[t]), lift[g.mul(s, t)]), lift[s]);
            let a = ses.preimage[y].ok_or_else(|| Error::NotExact("lift coboundary leaves the kernel".into()))?;
            values.push(a);
        }
    }
    Cocycle2::new(ses.a.clone(), values)
}

/// The connecting map `H¹(Γ, C) -> H²(Γ, A)` using the least-preimage section.
pub fn connecting2(ses: &ShortExactSequence, x: &CohClass) -> Result<CohClass> {
    let c = x.as_cocycle1().ok_or_else(|| Error::TypeMismatch("connecting map takes a degree-1 class".into()))?;
    CohClass::of2(&connecting2_cocycle(ses, c, &ses.least_section())?)
}

/// Catalog sequences over `group`: `Z/2 -> Z/4 -> Z/2` with trivial and
/// sign actions, the split `Z/2 -> (Z/2)^2 -> Z/2`, and `Z/2 -> Z/6 -> Z/3`.
pub fn catalog_sequences(group: &Arc<FiniteGroup>) -> Vec<ShortExactSequence> {
    let cyc = |d: u32| FiniteAbelianGroup::new(&[d]).expect("cyclic");
    let trivial = |d: u32| Arc::new(GammaModule::trivial(group.clone(), cyc(d)));
    let mut out = Vec::new();
    let (z2, z4) = (trivial(2), trivial(4));
    out.push(ShortExactSequence::new(z2.clone(), z4, z2.clone(), vec![0, 2], vec![0, 1, 0, 1]).expect("bockstein"));
    if let Some(sign) = crate::finmod::catalog::sign_character(group) {
        let z4m = Arc::new(GammaModule::scalar(group.clone(), cyc(4), &sign).expect("sign"));
        out.push(
            ShortExactSequence::new(z2.clone(), z4m, z2.clone(), vec![0, 2], vec![0, 1, 0, 1])
                .expect("twisted bockstein"),
        );
    }
    let v = Arc::new(GammaModule::trivial(group.clone(), FiniteAbelianGroup::new(&[2, 2]).expect("klein")));
    // (a, b) has index 2a + b; include into the second slot, project to the first
    out.push(ShortExactSequence::new(z2.clone(), v, z2.clone(), vec![0, 1], vec![0, 0, 1, 1]).expect("split"));
    let z6 = trivial(6);
    let z3 = trivial(3);
    out.push(ShortExactSequence::new(z2, z6, z3, vec![0, 3], (0..6).map(|y| y % 3).collect()).expect("crt"));
    out
}
