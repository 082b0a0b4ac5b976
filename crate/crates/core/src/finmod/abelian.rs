use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest number of cyclic factors supported.
pub const MAX_RANK: usize = 8;

/// Finite abelian group `Z/d1 ⊕ ... ⊕ Z/dg` with `d1 | d2 | ... | dg`.
///
/// Elements are indexed `0..order()` in mixed radix with the first
/// coordinate most significant, so index order agrees with lexicographic
/// order on residue vectors and index 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct FiniteAbelianGroup {
    divisors: Vec<u32>,
    strides: Vec<usize>,
    order: usize,
}

impl TryFrom<Vec<u32>> for FiniteAbelianGroup {
    type Error = Error;

    fn try_from(divisors: Vec<u32>) -> Result<Self> {
        Self::new(&divisors)
    }
}

impl From<FiniteAbelianGroup> for Vec<u32> {
    fn from(g: FiniteAbelianGroup) -> Self {
        g.divisors
    }
}

impl FiniteAbelianGroup {
    /// Builds the group of elementary-divisor type `divisors`.
    pub fn new(divisors: &[u32]) -> Result<Self> {
        let bad = |reason| Error::InvalidDivisors { divisors: divisors.to_vec(), reason };
        if divisors.is_empty() {
            return Err(bad("empty divisor list"));
        }
        if divisors.len() > MAX_RANK {
            return Err(bad("too many cyclic factors"));
        }
        if divisors.iter().any(|&d| d < 2) {
            return Err(bad("every divisor must be at least 2"));
        }
        if divisors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(bad("divisor chain condition d_i | d_(i+1) fails"));
        }
        Self::from_factors(divisors)
    }

    /// Like [`new`](Self::new) but without the chain condition, for direct
    /// sums such as `H ⊕ H*` whose factor list is not chained.
    pub fn from_factors(divisors: &[u32]) -> Result<Self> {
        let bad = |reason| Error::InvalidDivisors { divisors: divisors.to_vec(), reason };
        if divisors.is_empty() || divisors.len() > MAX_RANK || divisors.iter().any(|&d| d < 2) {
            return Err(bad("need 1..=8 factors, each at least 2"));
        }
        let mut strides = vec![1usize; divisors.len()];
        for i in (0..divisors.len() - 1).rev() {
            strides[i] = strides[i + 1] * divisors[i + 1] as usize;
        }
        let order = strides[0] * divisors[0] as usize;
        Ok(Self { divisors: divisors.to_vec(), strides, order })
    }

    /// `(Z/n)^rank`.
    pub fn homogeneous(n: u32, rank: usize) -> Result<Self> {
        Self::new(&vec![n; rank])
    }

    pub fn divisors(&self) -> &[u32] {
        &self.divisors
    }

    pub fn rank(&self) -> usize {
        self.divisors.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn exponent(&self) -> u32 {
        self.divisors.iter().fold(1, |acc, &d| num_integer::lcm(acc, d))
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn coord(&self, a: usize, i: usize) -> u32 {
        ((a / self.strides[i]) % self.divisors[i] as usize) as u32
    }

    pub fn coords(&self, a: usize) -> Vec<u32> {
        (0..self.rank()).map(|i| self.coord(a, i)).collect()
    }

    /// Coordinates into a fixed buffer; unused slots are zero.
    pub fn coords_array(&self, a: usize) -> [u32; MAX_RANK] {
        let mut out = [0u32; MAX_RANK];
        for (i, slot) in out.iter_mut().enumerate().take(self.rank()) {
            *slot = self.coord(a, i);
        }
        out
    }

    /// Index of a residue vector; entries are reduced modulo the divisors.
    pub fn index_of(&self, coords: &[u32]) -> usize {
        debug_assert_eq!(coords.len(), self.rank());
        coords.iter().zip(&self.divisors).zip(&self.strides).map(|((&c, &d), &s)| (c % d) as usize * s).sum()
    }

    /// Index of a vector of arbitrary integers, reduced modulo the divisors.
    pub fn index_of_i64(&self, coords: &[i64]) -> usize {
        coords
            .iter()
            .zip(&self.divisors)
            .zip(&self.strides)
            .map(|((&c, &d), &s)| c.rem_euclid(d as i64) as usize * s)
            .sum()
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let mut out = 0;
        for i in 0..self.rank() {
            let d = self.divisors[i];
            out += ((self.coord(a, i) + self.coord(b, i)) % d) as usize * self.strides[i];
        }
        out
    }

    pub fn neg(&self, a: usize) -> usize {
        let mut out = 0;
        for i in 0..self.rank() {
            let d = self.divisors[i];
            out += ((d - self.coord(a, i)) % d) as usize * self.strides[i];
        }
        out
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `k·a` for any integer `k`.
    pub fn scale(&self, k: i64, a: usize) -> usize {
        let mut out = 0;
        for i in 0..self.rank() {
            let d = self.divisors[i] as i64;
            let c = (k.rem_euclid(d) * self.coord(a, i) as i64) % d;
            out += c as usize * self.strides[i];
        }
        out
    }

    /// Additive order of `a`.
    pub fn element_order(&self, a: usize) -> u32 {
        (0..self.rank()).fold(1, |acc, i| {
            let d = self.divisors[i];
            let c = self.coord(a, i);
            num_integer::lcm(acc, d / num_integer::gcd(d, c))
        })
    }

    /// Image of the `i`-th standard generator.
    pub fn basis(&self, i: usize) -> usize {
        self.strides[i]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }
}
