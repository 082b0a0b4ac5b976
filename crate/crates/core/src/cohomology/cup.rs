use std::sync::Arc;

use crate::cohomology::{Cocycle1, Cocycle2};
use crate::error::{Error, Result};
use crate::finmod::GammaModule;

/// A bilinear map `A × B -> C` of modules over the same group, stored as a
/// table indexed `a·|B| + b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearMap {
    left: Arc<GammaModule>,
    right: Arc<GammaModule>,
    target: Arc<GammaModule>,
    table: Vec<usize>,
}

impl BilinearMap {
    /// Checks biadditivity exhaustively.
    pub fn new(
        left: Arc<GammaModule>,
        right: Arc<GammaModule>,
        target: Arc<GammaModule>,
        table: Vec<usize>,
    ) -> Result<Self> {
        if left.group() != right.group() || left.group() != target.group() {
            return Err(Error::TypeMismatch("modules over different groups".into()));
        }
        let (na, nb) = (left.module().order(), right.module().order());
        if table.len() != na * nb {
            return Err(Error::LengthMismatch { expected: na * nb, got: table.len() });
        }
        if table.iter().any(|&v| v >= target.module().order()) {
            return Err(Error::TypeMismatch("pairing value outside the target".into()));
        }
        let map = Self { left, right, target, table };
        let (a, b, c) = (map.left.module(), map.right.module(), map.target.module());
        for x in a.elements() {
            for y in b.elements() {
                for z in b.elements() {
                    if map.eval(x, b.add(y, z)) != c.add(map.eval(x, y), map.eval(x, z)) {
                        return Err(Error::NotBilinear(format!("not additive in the right slot at ({x},{y},{z})")));
                    }
                }
            }
        }
        for x in a.elements() {
            for z in a.elements() {
                for y in b.elements() {
                    if map.eval(a.add(x, z), y) != c.add(map.eval(x, y), map.eval(z, y)) {
                        return Err(Error::NotBilinear(format!("not additive in the left slot at ({x},{z},{y})")));
                    }
                }
            }
        }
        Ok(map)
    }

    pub fn from_fn(
        left: Arc<GammaModule>,
        right: Arc<GammaModule>,
        target: Arc<GammaModule>,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let nb = right.module().order();
        let table = (0..left.module().order() * nb).map(|k| f(k / nb, k % nb)).collect();
        Self::new(left, right, target, table)
    }

    /// Multiplication `Z/n × Z/n -> Z/n` on three copies of one cyclic module.
    pub fn multiplication(module: Arc<GammaModule>) -> Result<Self> {
        let a = module.module().clone();
        if a.rank() != 1 {
            return Err(Error::Unsupported("multiplication needs a cyclic module".into()));
        }
        Self::from_fn(module.clone(), module.clone(), module, |x, y| a.scale(y as i64, x))
    }

    pub fn eval(&self, a: usize, b: usize) -> usize {
        self.table[a * self.right.module().order() + b]
    }

    pub fn target(&self) -> &Arc<GammaModule> {
        &self.target
    }

    /// `σ·⟨a, b⟩ = ⟨σa, σb⟩` for all σ, a, b.
    pub fn is_equivariant(&self) -> bool {
        let g = self.left.group();
        g.elements().all(|s| {
            self.left.module().elements().all(|a| {
                self.right.module().elements().all(|b| {
                    self.target.act(s, self.eval(a, b)) == self.eval(self.left.act(s, a), self.right.act(s, b))
                })
            })
        })
    }
}

/// `c(σ, τ) = ⟨a(σ), σ·b(τ)⟩`, verified to be a 2-cocycle.
pub fn cup(a: &Cocycle1, b: &Cocycle1, pairing: &BilinearMap) -> Result<Cocycle2> {
    if a.module().as_ref() != pairing.left.as_ref() || b.module().as_ref() != pairing.right.as_ref() {
        return Err(Error::TypeMismatch("cocycles do not match the pairing".into()));
    }
    let g = a.module().group();
    let values = g
        .elements()
        .flat_map(|s| g.elements().map(move |t| (s, t)))
        .map(|(s, t)| pairing.eval(a.value(s), pairing.right.act(s, b.value(t))))
        .collect();
    Cocycle2::new(pairing.target.clone(), values)
}
