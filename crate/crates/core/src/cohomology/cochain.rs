use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finmod::GammaModule;

/// A 1-cocycle `ξ: Γ -> M` with `ξ(στ) = ξ(σ) + σ·ξ(τ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle1 {
    module: Arc<GammaModule>,
    values: Vec<usize>,
}

/// A normalized 2-cocycle `c: Γ × Γ -> M`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle2 {
    module: Arc<GammaModule>,
    values: Vec<usize>,
}

impl Cocycle1 {
    pub fn new(module: Arc<GammaModule>, values: Vec<usize>) -> Result<Self> {
        let c = Self::new_unchecked(module, values)?;
        if let Some((s, t)) = c.first_violation() {
            return Err(Error::NotACocycle(format!("ξ({s}·{t}) != ξ({s}) + {s}·ξ({t})")));
        }
        Ok(c)
    }

    /// Shape-checked only; callers must know the identity holds.
    pub(crate) fn new_unchecked(module: Arc<GammaModule>, values: Vec<usize>) -> Result<Self> {
        if values.len() != module.group().order() {
            return Err(Error::LengthMismatch { expected: module.group().order(), got: values.len() });
        }
        if values.iter().any(|&v| v >= module.module().order()) {
            return Err(Error::TypeMismatch("cocycle value outside the module".into()));
        }
        Ok(Self { module, values })
    }

    pub fn zero(module: Arc<GammaModule>) -> Self {
        let n = module.group().order();
        Self { module, values: vec![0; n] }
    }

    /// `σ ↦ σ·m - m`.
    pub fn coboundary(module: Arc<GammaModule>, m: usize) -> Self {
        let a = module.module().clone();
        let values = module.group().elements().map(|s| a.sub(module.act(s, m), m)).collect();
        Self { module, values }
    }

    fn first_violation(&self) -> Option<(usize, usize)> {
        let g = self.module.group();
        let a = self.module.module();
        for s in g.elements() {
            for t in g.elements() {
                let rhs = a.add(self.values[s], self.module.act(s, self.values[t]));
                if self.values[g.mul(s, t)] != rhs {
                    return Some((s, t));
                }
            }
        }
        None
    }

    pub fn satisfies_identity(&self) -> bool {
        self.first_violation().is_none()
    }

    pub fn module(&self) -> &Arc<GammaModule> {
        &self.module
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn value(&self, sigma: usize) -> usize {
        self.values[sigma]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn add(&self, other: &Cocycle1) -> Cocycle1 {
        debug_assert!(Arc::ptr_eq(&self.module, &other.module) || self.module == other.module);
        let a = self.module.module();
        let values = self.values.iter().zip(&other.values).map(|(&x, &y)| a.add(x, y)).collect();
        Cocycle1 { module: self.module.clone(), values }
    }

    pub fn sub(&self, other: &Cocycle1) -> Cocycle1 {
        let a = self.module.module();
        let values = self.values.iter().zip(&other.values).map(|(&x, &y)| a.sub(x, y)).collect();
        Cocycle1 { module: self.module.clone(), values }
    }

    pub fn scale(&self, k: i64) -> Cocycle1 {
        let a = self.module.module();
        let values = self.values.iter().map(|&x| a.scale(k, x)).collect();
        Cocycle1 { module: self.module.clone(), values }
    }

    /// Some `m` with `ξ = σ ↦ σm - m`, if `ξ` is a coboundary.
    pub fn coboundary_witness(&self) -> Option<usize> {
        let a = self.module.module();
        let g = self.module.group();
        a.elements().find(|&m| g.elements().all(|s| self.values[s] == a.sub(self.module.act(s, m), m)))
    }

    pub fn is_coboundary(&self) -> bool {
        self.coboundary_witness().is_some()
    }

    /// Whether the restriction to the listed elements is a coboundary there.
    pub fn is_coboundary_on(&self, elements: &[usize]) -> bool {
        let a = self.module.module();
        a.elements().any(|m| elements.iter().all(|&s| self.values[s] == a.sub(self.module.act(s, m), m)))
    }
}

impl Cocycle2 {
    pub fn new(module: Arc<GammaModule>, values: Vec<usize>) -> Result<Self> {
        let c = Self::new_unchecked(module, values)?;
        c.check()?;
        Ok(c)
    }

    pub(crate) fn new_unchecked(module: Arc<GammaModule>, values: Vec<usize>) -> Result<Self> {
        let n = module.group().order();
        if values.len() != n * n {
            return Err(Error::LengthMismatch { expected: n * n, got: values.len() });
        }
        if values.iter().any(|&v| v >= module.module().order()) {
            return Err(Error::TypeMismatch("cocycle value outside the module".into()));
        }
        Ok(Self { module, values })
    }

    pub fn zero(module: Arc<GammaModule>) -> Self {
        let n = module.group().order();
        Self { module, values: vec![0; n * n] }
    }

    /// `(σ, τ) ↦ σ·f(τ) - f(στ) + f(σ)` for a 1-cochain `f`.
    pub fn coboundary_of(module: Arc<GammaModule>, f: &[usize]) -> Self {
        let g = module.group().clone();
        let a = module.module().clone();
        let mut values = Vec::with_capacity(g.order() * g.order());
        for s in g.elements() {
            for t in g.elements() {
                values.push(a.add(a.sub(module.act(s, f[t]), f[g.mul(s, t)]), f[s]));
            }
        }
        Self { module, values }
    }

    pub fn check(&self) -> Result<()> {
        let g = self.module.group();
        for s in g.elements() {
            if self.value(0, s) != 0 || self.value(s, 0) != 0 {
                return Err(Error::NotACocycle(format!("not normalized at {s}")));
            }
        }
        if let Some((s, t, u)) = self.first_violation() {
            return Err(Error::NotACocycle(format!("2-cocycle identity fails at ({s},{t},{u})")));
        }
        Ok(())
    }

    fn first_violation(&self) -> Option<(usize, usize, usize)> {
        let g = self.module.group();
        let a = self.module.module();
        for s in g.elements() {
            for t in g.elements() {
                let st = g.mul(s, t);
                let c_st = self.value(s, t);
                for u in g.elements() {
                    // σ·c(τ,υ) - c(στ,υ) + c(σ,τυ) - c(σ,τ)
                    let lhs = a.add(self.module.act(s, self.value(t, u)), self.value(s, g.mul(t, u)));
                    let rhs = a.add(self.value(st, u), c_st);
                    if lhs != rhs {
                        return Some((s, t, u));
                    }
                }
            }
        }
        None
    }

    pub fn satisfies_identity(&self) -> bool {
        self.first_violation().is_none()
    }

    pub fn module(&self) -> &Arc<GammaModule> {
        &self.module
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn value(&self, s: usize, t: usize) -> usize {
        self.values[s * self.module.group().order() + t]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn add(&self, other: &Cocycle2) -> Cocycle2 {
        let a = self.module.module();
        let values = self.values.iter().zip(&other.values).map(|(&x, &y)| a.add(x, y)).collect();
        Cocycle2 { module: self.module.clone(), values }
    }

    pub fn sub(&self, other: &Cocycle2) -> Cocycle2 {
        let a = self.module.module();
        let values = self.values.iter().zip(&other.values).map(|(&x, &y)| a.sub(x, y)).collect();
        Cocycle2 { module: self.module.clone(), values }
    }

    pub fn scale(&self, k: i64) -> Cocycle2 {
        let a = self.module.module();
        let values = self.values.iter().map(|&x| a.scale(k, x)).collect();
        Cocycle2 { module: self.module.clone(), values }
    }

    /// A 1-cochain `f` with `c = df`, if one exists.
    ///
    /// `c = df` forces `f(στ) = f(σ) + σ·f(τ) - c(σ,τ)`, so `f` is determined
    /// by its values on a generating set; only those are searched.
    pub fn coboundary_witness(&self) -> Option<Vec<usize>> {
        let g = self.module.group();
        let gens = g.generators();
        let a = self.module.module();
        let mut choice = vec![0usize; gens.len()];
        loop {
            if let Some(f) = propagate(&self.module, &gens, &choice, Some(self)) {
                return Some(f);
            }
            if !advance(&mut choice, a.order()) {
                return None;
            }
        }
    }

    pub fn is_coboundary(&self) -> bool {
        self.coboundary_witness().is_some()
    }
}

/// Odometer step over `|M|^len` choices; false once exhausted.
pub(crate) fn advance(choice: &mut [usize], base: usize) -> bool {
    for slot in choice.iter_mut() {
        *slot += 1;
        if *slot < base {
            return true;
        }
        *slot = 0;
    }
    false
}

/// Extends generator values to `f: Γ -> M` with
/// `f(στ) = f(σ) + σ·f(τ) - c(σ,τ)` (`c = 0` for 1-cocycles) and checks the
/// relation on every pair.
pub(crate) fn propagate(
    module: &GammaModule,
    gens: &[usize],
    gen_values: &[usize],
    c: Option<&Cocycle2>,
) -> Option<Vec<usize>> {
    let g = module.group();
    let a = module.module();
    let cv = |s: usize, t: usize| c.map_or(0, |c| c.value(s, t));
    let mut f = vec![usize::MAX; g.order()];
    f[0] = cv(0, 0);
    let mut stack = vec![0usize];
    while let Some(x) = stack.pop() {
        for (k, &gen) in gens.iter().enumerate() {
            let y = g.mul(x, gen);
            let val = a.sub(a.add(f[x], module.act(x, gen_values[k])), cv(x, gen));
            if f[y] == usize::MAX {
                f[y] = val;
                stack.push(y);
            } else if f[y] != val {
                return None;
            }
        }
    }
    for s in g.elements() {
        for t in g.elements() {
            if f[g.mul(s, t)] != a.sub(a.add(f[s], module.act(s, f[t])), cv(s, t)) {
                return None;
            }
        }
    }
    Some(f)
}
