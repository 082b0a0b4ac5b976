use std::collections::HashSet;
use std::sync::Arc;

use crate::cohomology::cochain::{advance, propagate};
use crate::cohomology::{Cocycle1, Cocycle2};
use crate::error::{Error, Result};
use crate::finmod::GammaModule;
use crate::guard;

/// A cohomology class, stored by its canonical representative: the
/// lexicographically least cocycle table in the coset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CohClass {
    Degree1(Cocycle1),
    Degree2(Cocycle2),
}

impl CohClass {
    /// The class of a 1-cocycle.
    pub fn of1(c: &Cocycle1) -> CohClass {
        let a = c.module().module();
        let best = a
            .elements()
            .map(|m| c.add(&Cocycle1::coboundary(c.module().clone(), m)))
            .min_by(|x, y| x.values().cmp(y.values()))
            .expect("module is nonempty");
        CohClass::Degree1(best)
    }

    /// The class of a normalized 2-cocycle. Enumerates `B²`, so it is
    /// subject to the `coboundaries2` guard.
    pub fn of2(c: &Cocycle2) -> Result<CohClass> {
        let b2 = coboundaries2(c.module())?;
        Ok(Self::of2_with(c, &b2))
    }

    /// As [`of2`](Self::of2) with a precomputed `B²`.
    pub fn of2_with(c: &Cocycle2, b2: &[Vec<usize>]) -> CohClass {
        let a = c.module().module();
        let best = b2
            .iter()
            .map(|b| c.values().iter().zip(b).map(|(&x, &y)| a.add(x, y)).collect::<Vec<_>>())
            .min()
            .expect("B² contains zero");
        CohClass::Degree2(Cocycle2::new_unchecked(c.module().clone(), best).expect("same shape"))
    }

    pub fn degree(&self) -> u8 {
        match self {
            CohClass::Degree1(_) => 1,
            CohClass::Degree2(_) => 2,
        }
    }

    pub fn module(&self) -> &Arc<GammaModule> {
        match self {
            CohClass::Degree1(c) => c.module(),
            CohClass::Degree2(c) => c.module(),
        }
    }

    /// The representative's values (length `|Γ|` or `|Γ|²`).
    pub fn values(&self) -> &[usize] {
        match self {
            CohClass::Degree1(c) => c.values(),
            CohClass::Degree2(c) => c.values(),
        }
    }

    pub fn as_cocycle1(&self) -> Option<&Cocycle1> {
        match self {
            CohClass::Degree1(c) => Some(c),
            CohClass::Degree2(_) => None,
        }
    }

    pub fn as_cocycle2(&self) -> Option<&Cocycle2> {
        match self {
            CohClass::Degree2(c) => Some(c),
            CohClass::Degree1(_) => None,
        }
    }

    pub fn is_trivial(&self) -> bool {
        match self {
            CohClass::Degree1(c) => c.is_coboundary(),
            CohClass::Degree2(c) => c.is_coboundary(),
        }
    }

    /// Whether `k` times the class is trivial.
    pub fn is_killed_by(&self, k: i64) -> bool {
        match self {
            CohClass::Degree1(c) => c.scale(k).is_coboundary(),
            CohClass::Degree2(c) => c.scale(k).is_coboundary(),
        }
    }

    /// Class equality decided by a coboundary search on the difference.
    pub fn same_class(&self, other: &CohClass) -> bool {
        match (self, other) {
            (CohClass::Degree1(a), CohClass::Degree1(b)) => a.sub(b).is_coboundary(),
            (CohClass::Degree2(a), CohClass::Degree2(b)) => a.sub(b).is_coboundary(),
            _ => false,
        }
    }
}

/// All 1-cocycles, sorted lexicographically by value table.
pub fn z1(module: &Arc<GammaModule>) -> Result<Vec<Cocycle1>> {
    let gens = module.group().generators();
    let base = module.module().order();
    guard::check("cocycles1", guard::pow_count(base, gens.len()))?;
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        if let Some(f) = propagate(module, &gens, &choice, None) {
            out.push(Cocycle1::new_unchecked(module.clone(), f)?);
        }
        if !advance(&mut choice, base) {
            break;
        }
    }
    out.sort_by(|a, b| a.values().cmp(b.values()));
    Ok(out)
}

/// `B¹ = {σ ↦ σm - m}`, deduplicated and sorted.
pub fn coboundaries1(module: &Arc<GammaModule>) -> Vec<Cocycle1> {
    let mut seen = HashSet::new();
    let mut out: Vec<Cocycle1> = module
        .module()
        .elements()
        .map(|m| Cocycle1::coboundary(module.clone(), m))
        .filter(|c| seen.insert(c.values().to_vec()))
        .collect();
    out.sort_by(|a, b| a.values().cmp(b.values()));
    out
}

/// `H¹(Γ, M)`, one canonical representative per class, in increasing order.
pub fn h1(module: &Arc<GammaModule>) -> Result<Vec<CohClass>> {
    let cocycles = z1(module)?;
    let b1 = coboundaries1(module);
    let a = module.module();
    let mut covered: HashSet<Vec<usize>> = HashSet::new();
    let mut out = Vec::new();
    for z in cocycles {
        if covered.contains(z.values()) {
            continue;
        }
        for b in &b1 {
            covered.insert(z.values().iter().zip(b.values()).map(|(&x, &y)| a.add(x, y)).collect());
        }
        out.push(CohClass::Degree1(z));
    }
    Ok(out)
}

/// `B²` as value tables of `df` over normalized 1-cochains, deduplicated and sorted.
pub fn coboundaries2(module: &Arc<GammaModule>) -> Result<Vec<Vec<usize>>> {
    let n = module.group().order();
    let base = module.module().order();
    guard::check("coboundaries2", guard::pow_count(base, n - 1))?;
    let mut f = vec![0usize; n];
    let mut seen = HashSet::new();
    loop {
        let c = Cocycle2::coboundary_of(module.clone(), &f);
        seen.insert(c.values().to_vec());
        if !advance(&mut f[1..], base) {
            break;
        }
    }
    let mut out: Vec<Vec<usize>> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// All normalized 2-cocycles, sorted lexicographically.
///
/// The identity `c(στ,υ) = σ·c(τ,υ) + c(σ,τυ) - c(σ,τ)` determines every row
/// `c(x, ·)` from the rows at generators, so only those rows are searched.
pub fn z2(module: &Arc<GammaModule>) -> Result<Vec<Cocycle2>> {
    let g = module.group().clone();
    let a = module.module().clone();
    let n = g.order();
    let gens = g.generators();
    let base = a.order();
    guard::check("cocycles2", guard::pow_count(base, gens.len() * (n - 1)))?;
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len() * (n - 1)];
    loop {
        if let Some(values) = rows_from_generators(module, &gens, &choice) {
            let c = Cocycle2::new_unchecked(module.clone(), values)?;
            if c.satisfies_identity() {
                out.push(c);
            }
        }
        if !advance(&mut choice, base) {
            break;
        }
    }
    out.sort_by(|x, y| x.values().cmp(y.values()));
    Ok(out)
}

fn rows_from_generators(module: &GammaModule, gens: &[usize], choice: &[usize]) -> Option<Vec<usize>> {
    let g = module.group();
    let a = module.module();
    let n = g.order();
    let mut rows: Vec<Option<Vec<usize>>> = vec![None; n];
    rows[0] = Some(vec![0; n]);
    let gen_rows: Vec<Vec<usize>> = (0..gens.len())
        .map(|k| {
            let mut row = vec![0; n];
            row[1..].copy_from_slice(&choice[k * (n - 1)..(k + 1) * (n - 1)]);
            row
        })
        .collect();
    let mut stack = vec![0usize];
    while let Some(x) = stack.pop() {
        let rx = rows[x].clone().expect("visited rows are set");
        for (k, &gen) in gens.iter().enumerate() {
            let y = g.mul(x, gen);
            // c(x·gen, υ) = x·c(gen, υ) + c(x, gen·υ) - c(x, gen)
            let row: Vec<usize> =
                (0..n).map(|u| a.sub(a.add(module.act(x, gen_rows[k][u]), rx[g.mul(gen, u)]), rx[gen])).collect();
            match &rows[y] {
                None => {
                    rows[y] = Some(row);
                    stack.push(y);
                }
                Some(existing) if *existing != row => return None,
                _ => {}
            }
        }
    }
    Some(rows.into_iter().flat_map(|r| r.expect("Γ is generated")).collect())
}

/// `H²(Γ, M)`, one canonical representative per class, in increasing order.
pub fn h2(module: &Arc<GammaModule>) -> Result<Vec<CohClass>> {
    let cocycles = z2(module)?;
    let b2 = coboundaries2(module)?;
    let a = module.module();
    let mut covered: HashSet<Vec<usize>> = HashSet::new();
    let mut out = Vec::new();
    for z in cocycles {
        if covered.contains(z.values()) {
            continue;
        }
        for b in &b2 {
            covered.insert(z.values().iter().zip(b).map(|(&x, &y)| a.add(x, y)).collect());
        }
        out.push(CohClass::Degree2(z));
    }
    Ok(out)
}

/// Looks up the listed class equal to `x`.
pub fn position_in(classes: &[CohClass], x: &CohClass) -> Result<usize> {
    classes
        .iter()
        .position(|c| c.same_class(x))
        .ok_or_else(|| Error::NotACocycle("class not found in the enumerated list".into()))
}
