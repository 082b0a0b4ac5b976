use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finmod::{standard_symplectic, FiniteAbelianGroup};
use crate::guard;

/// An endomorphism of a finite abelian group in coordinates: entry `(i, j)`
/// is coordinate `i` of the image of basis vector `j`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct KMatrix {
    dim: usize,
    entries: Vec<u32>,
}

impl KMatrix {
    pub fn new(dim: usize, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::LengthMismatch { expected: dim * dim, got: entries.len() });
        }
        Ok(Self { dim, entries })
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1;
        }
        Self { dim, entries }
    }

    /// `P ↦ -P`.
    pub fn negation(k: &FiniteAbelianGroup) -> Self {
        let dim = k.rank();
        let mut entries = vec![0; dim * dim];
        for (i, &d) in k.divisors().iter().enumerate() {
            entries[i * dim + i] = d - 1;
        }
        Self { dim, entries }
    }

    /// The matrix whose columns are the given images of the basis.
    pub fn from_columns(k: &FiniteAbelianGroup, columns: &[usize]) -> Self {
        let dim = k.rank();
        let mut entries = vec![0; dim * dim];
        for (j, &c) in columns.iter().enumerate() {
            for i in 0..dim {
                entries[i * dim + j] = k.coord(c, i);
            }
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.dim + j]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim)
    }

    pub fn apply(&self, k: &FiniteAbelianGroup, p: usize) -> usize {
        let c = k.coords_array(p);
        let d = k.divisors();
        let mut out = [0u32; crate::finmod::MAX_RANK];
        for i in 0..self.dim {
            let mut acc: u64 = 0;
            for j in 0..self.dim {
                acc += self.entries[i * self.dim + j] as u64 * c[j] as u64;
            }
            out[i] = (acc % d[i] as u64) as u32;
        }
        k.index_of(&out[..self.dim])
    }

    /// `self ∘ other`, reduced on `k`.
    pub fn compose(&self, other: &KMatrix, k: &FiniteAbelianGroup) -> KMatrix {
        let columns: Vec<usize> = (0..self.dim).map(|j| self.apply(k, other.apply(k, k.basis(j)))).collect();
        Self::from_columns(k, &columns)
    }

    /// Whether `e(MP, MQ) = e(P, Q)` on basis pairs.
    pub fn preserves(&self, k: &FiniteAbelianGroup, e: impl Fn(usize, usize) -> u32) -> bool {
        let cols: Vec<usize> = (0..self.dim).map(|j| self.apply(k, k.basis(j))).collect();
        (0..self.dim).all(|i| (0..self.dim).all(|j| e(cols[i], cols[j]) == e(k.basis(i), k.basis(j))))
    }
}

/// All `2g × 2g` matrices over `Z/n` preserving the standard symplectic
/// form, sorted by entries.
///
/// Columns are chosen one at a time, keeping only those whose pairings with
/// the earlier columns match the form.
pub fn sp_group(g: usize, n: u32) -> Result<Vec<KMatrix>> {
    let e = standard_symplectic(g, n)?;
    let k = e.space().module().clone();
    let dim = 2 * g;
    // partial solutions at depth j number about |K|^j / n^(j(j-1)/2)
    let size = k.order() as u128;
    let nodes: u128 = (0..dim as u32)
        .map(|j| {
            size.saturating_mul(guard::pow_count(k.order(), j as usize)) / (n as u128).pow(j * j.saturating_sub(1) / 2)
        })
        .sum();
    guard::check("sp_group", nodes)?;
    let target: Vec<Vec<u32>> = (0..dim).map(|i| (0..dim).map(|j| e.eval(k.basis(i), k.basis(j))).collect()).collect();
    let mut out = Vec::new();
    let mut cols = Vec::with_capacity(dim);
    extend(&k, &|p, q| e.eval(p, q), &target, &mut cols, &mut out);
    out.sort();
    Ok(out)
}

fn extend(
    k: &FiniteAbelianGroup,
    e: &dyn Fn(usize, usize) -> u32,
    target: &[Vec<u32>],
    cols: &mut Vec<usize>,
    out: &mut Vec<KMatrix>,
) {
    let j = cols.len();
    if j == target.len() {
        out.push(KMatrix::from_columns(k, cols));
        return;
    }
    for c in k.elements() {
        if cols.iter().enumerate().all(|(i, &ci)| e(ci, c) == target[i][j]) {
            cols.push(c);
            extend(k, e, target, cols, out);
            cols.pop();
        }
    }
}
