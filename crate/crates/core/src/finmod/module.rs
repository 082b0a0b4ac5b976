use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finmod::{FiniteAbelianGroup, FiniteGroup, Subgroup};

/// A finite abelian group `M` with an action of a finite group `Γ`.
///
/// `action[σ][m]` is the index of `σ·m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaModule {
    group: Arc<FiniteGroup>,
    module: FiniteAbelianGroup,
    action: Vec<Vec<usize>>,
    name: String,
}

impl GammaModule {
    /// Checks identity, compatibility, additivity, and bijectivity of the action tables.
    pub fn new(group: Arc<FiniteGroup>, module: FiniteAbelianGroup, action: Vec<Vec<usize>>) -> Result<Self> {
        let n = module.order();
        if action.len() != group.order() || action.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidAction("action table has the wrong shape".into()));
        }
        if action[0].iter().enumerate().any(|(m, &x)| x != m) {
            return Err(Error::InvalidAction("identity does not act trivially".into()));
        }
        for (s, row) in action.iter().enumerate() {
            let mut seen = vec![false; n];
            for &x in row {
                if x >= n || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidAction(format!("element {s} does not act bijectively")));
                }
            }
            for a in module.elements() {
                for b in module.elements() {
                    if row[module.add(a, b)] != module.add(row[a], row[b]) {
                        return Err(Error::InvalidAction(format!("element {s} does not act additively")));
                    }
                }
            }
        }
        for s in group.elements() {
            for t in group.elements() {
                let st = group.mul(s, t);
                if module.elements().any(|m| action[st][m] != action[s][action[t][m]]) {
                    return Err(Error::InvalidAction(format!("action({s}·{t}) != action({s})∘action({t})")));
                }
            }
        }
        let name = format!("{}[{:?}]", group.name(), module.divisors());
        Ok(Self { group, module, action, name })
    }

    /// Builds the action from a function `(σ, m) -> σ·m`, then validates it.
    pub fn from_fn(
        group: Arc<FiniteGroup>,
        module: FiniteAbelianGroup,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let action = group.elements().map(|s| module.elements().map(|m| f(s, m)).collect()).collect();
        Self::new(group, module, action)
    }

    pub fn trivial(group: Arc<FiniteGroup>, module: FiniteAbelianGroup) -> Self {
        let action = vec![module.elements().collect(); group.order()];
        let name = format!("{}[{:?}]", group.name(), module.divisors());
        Self { group, module, action, name }
    }

    /// `M` with each `σ` acting as multiplication by the scalar `units[σ]`.
    pub fn scalar(group: Arc<FiniteGroup>, module: FiniteAbelianGroup, units: &[i64]) -> Result<Self> {
        if units.len() != group.order() {
            return Err(Error::InvalidAction("one scalar per group element is required".into()));
        }
        let m2 = module.clone();
        Self::from_fn(group, module, move |s, m| m2.scale(units[s], m))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn module(&self) -> &FiniteAbelianGroup {
        &self.module
    }

    pub fn act(&self, sigma: usize, m: usize) -> usize {
        self.action[sigma][m]
    }

    pub fn action_table(&self, sigma: usize) -> &[usize] {
        &self.action[sigma]
    }

    pub fn is_trivial(&self) -> bool {
        self.action.iter().all(|row| row.iter().enumerate().all(|(m, &x)| x == m))
    }

    /// Fixed points `M^Γ`.
    pub fn invariants(&self) -> Vec<usize> {
        self.module.elements().filter(|&m| self.group.elements().all(|s| self.act(s, m) == m)).collect()
    }

    /// The same module viewed over a subgroup `H`, with `H` renumbered.
    pub fn restrict(&self, h: &Subgroup) -> (GammaModule, Vec<usize>) {
        let (sub, embed) = self.group.subgroup_as_group(h);
        let action = embed.iter().map(|&s| self.action[s].clone()).collect();
        let module = GammaModule {
            group: Arc::new(sub),
            module: self.module.clone(),
            action,
            name: format!("{}|{}", self.name, h.order()),
        };
        (module, embed)
    }

    /// Direct sum `self ⊕ other` over the same group; element `(a, b)` has
    /// index `a * |other| + b` and coordinates concatenated.
    pub fn direct_sum(&self, other: &GammaModule) -> Result<GammaModule> {
        if self.group != other.group {
            return Err(Error::TypeMismatch("direct sum over different groups".into()));
        }
        let mut divs = self.module.divisors().to_vec();
        divs.extend_from_slice(other.module.divisors());
        let sum = FiniteAbelianGroup::from_factors(&divs)?;
        let m = other.module.order();
        let action = self
            .group
            .elements()
            .map(|s| sum.elements().map(|x| self.act(s, x / m) * m + other.act(s, x % m)).collect())
            .collect();
        Ok(GammaModule {
            group: self.group.clone(),
            module: sum,
            action,
            name: format!("{}+{}", self.name, other.name),
        })
    }
}

/// `μ_n` in discrete-log coordinates relative to a fixed generator `ζ_n`,
/// with `Γ` acting through a homomorphism `Γ -> (Z/n)^×`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuN {
    n: u32,
    units: Vec<u32>,
    module: GammaModule,
}

impl MuN {
    pub fn trivial(group: Arc<FiniteGroup>, n: u32) -> Result<Self> {
        let units = vec![1; group.order()];
        Self::with_action(group, n, units)
    }

    /// `units[σ]` is the unit by which `σ` multiplies dlog values.
    pub fn with_action(group: Arc<FiniteGroup>, n: u32, units: Vec<u32>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidAction("mu_n needs n >= 2".into()));
        }
        if units.len() != group.order() {
            return Err(Error::InvalidAction("one unit per group element is required".into()));
        }
        if units.iter().any(|&u| num_integer::gcd(u % n, n) != 1) {
            return Err(Error::InvalidAction("action values must be units mod n".into()));
        }
        for s in group.elements() {
            for t in group.elements() {
                let lhs = units[group.mul(s, t)] % n;
                let rhs = (units[s] as u64 * units[t] as u64 % n as u64) as u32;
                if lhs != rhs {
                    return Err(Error::InvalidAction("unit map is not a homomorphism".into()));
                }
            }
        }
        let module = FiniteAbelianGroup::new(&[n])?;
        let scalars: Vec<i64> = units.iter().map(|&u| u as i64).collect();
        let module = GammaModule::scalar(group, module, &scalars)?.with_name(format!("mu_{n}"));
        Ok(Self { n, units, module })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn unit(&self, sigma: usize) -> u32 {
        self.units[sigma]
    }

    pub fn act(&self, sigma: usize, a: u32) -> u32 {
        (self.units[sigma] as u64 * a as u64 % self.n as u64) as u32
    }

    pub fn is_trivial(&self) -> bool {
        self.units.iter().all(|&u| u % self.n == 1)
    }

    /// `μ_n` as a Γ-module on `Z/n`.
    pub fn as_module(&self) -> &GammaModule {
        &self.module
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.module.group()
    }
}

/// The dual `M* = Hom(M, μ_n)` together with its evaluation pairing.
///
/// A character is stored as a residue vector `c` over the same divisors as
/// `M`, with `ℓ(x) = Σ c_i x_i (n / d_i) mod n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualModule {
    pub module: GammaModule,
    pub n: u32,
    weights: Vec<u32>,
}

impl DualModule {
    /// `ℓ(m)` in dlog coordinates.
    pub fn eval(&self, l: usize, m: usize) -> u32 {
        eval_character(self.module.module(), &self.weights, self.n, l, m)
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }
}

pub(crate) fn character_weights(divisors: &[u32], n: u32) -> Vec<u32> {
    divisors.iter().map(|&d| n / d).collect()
}

pub(crate) fn eval_character(group: &FiniteAbelianGroup, weights: &[u32], n: u32, l: usize, m: usize) -> u32 {
    let mut acc: u64 = 0;
    for (i, &w) in weights.iter().enumerate() {
        acc += group.coord(l, i) as u64 * group.coord(m, i) as u64 * w as u64;
    }
    (acc % n as u64) as u32
}

/// `M* = Hom(M, μ_n)` with action `(σ·ℓ)(m) = σ(ℓ(σ⁻¹ m))`.
pub fn dual_module(m: &GammaModule, mu: &MuN) -> Result<DualModule> {
    if m.group() != mu.group() {
        return Err(Error::TypeMismatch("module and mu_n over different groups".into()));
    }
    let exponent = m.module().exponent();
    if !mu.n().is_multiple_of(exponent) {
        return Err(Error::ExponentMismatch { exponent, modulus: mu.n() });
    }
    let group = m.module().clone();
    let weights = character_weights(group.divisors(), mu.n());
    let gamma = m.group().clone();
    let mut action = Vec::with_capacity(gamma.order());
    for s in gamma.elements() {
        let s_inv = gamma.inv(s);
        let mut row = Vec::with_capacity(group.order());
        for l in group.elements() {
            // read off the coefficients of σ·ℓ on the standard generators
            let coeffs: Vec<u32> = (0..group.rank())
                .map(|i| {
                    let e = group.basis(i);
                    let v = mu.act(s, eval_character(&group, &weights, mu.n(), l, m.act(s_inv, e)));
                    v / weights[i]
                })
                .collect();
            row.push(group.index_of(&coeffs));
        }
        action.push(row);
    }
    let module = GammaModule::new(gamma, group, action)?.with_name(format!("{}*", m.name()));
    Ok(DualModule { module, n: mu.n(), weights })
}
