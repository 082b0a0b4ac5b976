use std::collections::BTreeMap;

use num_integer::Integer;

use crate::cohomology::PeriodIndexReport;
use crate::error::{Error, Result};
use crate::finmod::{FiniteAbelianGroup, FiniteGroup};
use crate::guard;

/// Characters `χ(x) = Σ c_i x_i mod n` of `(Z/n)^r`, each stored by its
/// coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTuple {
    ambient: FiniteAbelianGroup,
    n: u32,
    characters: Vec<Vec<u32>>,
}

impl CharacterTuple {
    pub fn new(n: u32, rank: usize, characters: Vec<Vec<u32>>) -> Result<Self> {
        let ambient = FiniteAbelianGroup::homogeneous(n, rank)?;
        for c in &characters {
            if c.len() != rank {
                return Err(Error::LengthMismatch { expected: rank, got: c.len() });
            }
            if c.iter().any(|&x| x >= n) {
                return Err(Error::TypeMismatch("character coefficient not reduced mod n".into()));
            }
        }
        Ok(Self { ambient, n, characters })
    }

    pub fn ambient(&self) -> &FiniteAbelianGroup {
        &self.ambient
    }

    pub fn characters(&self) -> &[Vec<u32>] {
        &self.characters
    }

    pub fn eval(&self, i: usize, x: usize) -> u32 {
        let c = &self.characters[i];
        let acc: u64 = (0..c.len()).map(|j| c[j] as u64 * self.ambient.coord(x, j) as u64).sum();
        (acc % self.n as u64) as u32
    }

    /// `∩ ker χ_i`.
    pub fn common_kernel(&self) -> Result<Vec<usize>> {
        guard::check("character_kernel", self.ambient.order() as u128)?;
        Ok(self.ambient.elements().filter(|&x| (0..self.characters.len()).all(|i| self.eval(i, x) == 0)).collect())
    }

    /// Exponent of the subgroup of the dual generated by the characters.
    pub fn period(&self) -> u64 {
        self.characters
            .iter()
            .map(|c| c.iter().map(|&x| (self.n / x.gcd(&self.n)) as u64).fold(1, |a, b| a.lcm(&b)))
            .fold(1, |a, b| a.lcm(&b))
    }
}

/// Period and index of the splitting problem for a character tuple. The
/// minimal splitting subgroup is the common kernel, so index and mindex agree.
pub fn character_index(t: &CharacterTuple) -> Result<PeriodIndexReport> {
    let kernel = t.common_kernel()?;
    let index = (t.ambient.order() / kernel.len()) as u64;
    let mut witnesses = BTreeMap::new();
    for key in ["index", "mindex", "galois_index"] {
        witnesses.insert(key.to_string(), vec![kernel.clone()]);
    }
    Ok(PeriodIndexReport {
        period: t.period(),
        index,
        mindex: index,
        galois_index: index,
        witness_subgroups: witnesses,
    })
}

/// The same invariants by scanning every subgroup of the ambient group for
/// those on which all characters vanish.
pub fn character_index_by_scan(t: &CharacterTuple) -> Result<PeriodIndexReport> {
    let order = t.ambient.order();
    guard::check("subgroup_scan", (order as u128) * (order as u128))?;
    let group = FiniteGroup::from_abelian(&t.ambient);
    let mut gcd = 0u64;
    let mut best: Option<(u64, Vec<usize>)> = None;
    for h in group.subgroups() {
        if h.elements().any(|x| (0..t.characters.len()).any(|i| t.eval(i, x) != 0)) {
            continue;
        }
        let idx = h.index_in(order) as u64;
        gcd = gcd.gcd(&idx);
        if best.as_ref().is_none_or(|(b, _)| idx < *b) {
            best = Some((idx, h.to_vec()));
        }
    }
    let (mindex, witness) = best.expect("the trivial subgroup splits");
    let mut witnesses = BTreeMap::new();
    witnesses.insert("mindex".to_string(), vec![witness.clone()]);
    witnesses.insert("index".to_string(), vec![witness.clone()]);
    witnesses.insert("galois_index".to_string(), vec![witness]);
    Ok(PeriodIndexReport { period: t.period(), index: gcd, mindex, galois_index: gcd, witness_subgroups: witnesses })
}

/// The free `(Z/n)^(2g)` model generated by independent uniformizer classes
/// `T_1..T_2g`; a class is its exponent vector in the `T_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LangTateModel {
    pub n: u32,
    pub g: usize,
}

impl LangTateModel {
    pub fn new(n: u32, g: usize) -> Result<Self> {
        if n < 2 || g == 0 || 2 * g > crate::finmod::MAX_RANK {
            return Err(Error::InvalidModel(format!("need n >= 2 and 1 <= g <= 4 (n={n}, g={g})")));
        }
        Ok(Self { n, g })
    }

    pub fn one(&self) -> Vec<u32> {
        vec![0; 2 * self.g]
    }

    /// `T_i`, for `i` in `0..2g`.
    pub fn uniformizer(&self, i: usize) -> Vec<u32> {
        let mut e = self.one();
        e[i] = 1;
        e
    }
}

/// Index of the class with the given `2g` coordinates, each a class of the
/// model, via the character tuple the coordinates define.
pub fn lang_tate_index(model: &LangTateModel, coords: &[Vec<u32>]) -> Result<u64> {
    let r = 2 * model.g;
    if coords.len() != r {
        return Err(Error::LengthMismatch { expected: r, got: coords.len() });
    }
    for c in coords {
        if c.len() != r || c.iter().any(|&x| x >= model.n) {
            return Err(Error::InvalidModel("coordinate outside the uniformizer subgroup".into()));
        }
    }
    let chars = coords.iter().filter(|c| c.iter().any(|&x| x != 0)).cloned().collect();
    Ok(character_index(&CharacterTuple::new(model.n, r, chars)?)?.index)
}
