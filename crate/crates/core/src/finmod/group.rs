use std::collections::{BTreeMap, HashSet, VecDeque};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::finmod::FiniteAbelianGroup;

/// A finite group given by its full multiplication table.
///
/// Element 0 is always the identity. This stands in for a finite quotient
/// of an absolute Galois group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a multiplication table (row-major, `table[a * n + b] = a·b`).
    pub fn from_table(name: impl Into<String>, order: usize, table: Vec<usize>) -> Result<Self> {
        if order == 0 || table.len() != order * order {
            return Err(Error::NotAGroup("table size does not match order".into()));
        }
        if table.iter().any(|&x| x >= order) {
            return Err(Error::NotAGroup("table entry out of range".into()));
        }
        for a in 0..order {
            if table[a] != a || table[a * order] != a {
                return Err(Error::NotAGroup("element 0 is not the identity".into()));
            }
        }
        let mut inverse = vec![usize::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if table[a * order + b] == 0 {
                    inverse[a] = b;
                }
            }
            if inverse[a] == usize::MAX || table[inverse[a] * order + a] != 0 {
                return Err(Error::NotAGroup(format!("element {a} has no two-sided inverse")));
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = table[a * order + b];
                for c in 0..order {
                    if table[ab * order + c] != table[a * order + table[b * order + c]] {
                        return Err(Error::NotAGroup(format!("associativity fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(Self { name: name.into(), order, table, inverse })
    }

    /// Cyclic group `Z/n`, element `i` standing for the `i`-th power of a generator.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        Self::from_table(format!("C{n}"), n, table).expect("cyclic table is a group")
    }

    /// The additive group of a finite abelian group, with the same element indices.
    pub fn from_abelian(a: &FiniteAbelianGroup) -> Self {
        let n = a.order();
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                table.push(a.add(x, y));
            }
        }
        let inverse = (0..n).map(|x| a.neg(x)).collect();
        let name = a.divisors().iter().map(|d| format!("C{d}")).collect::<Vec<_>>().join("x");
        Self { name, order: n, table, inverse }
    }

    /// Direct product; element `(a, b)` has index `a * |other| + b`.
    pub fn product(&self, other: &FiniteGroup) -> Self {
        let (n, m) = (self.order, other.order);
        let mut table = Vec::with_capacity(n * m * n * m);
        for x in 0..n * m {
            for y in 0..n * m {
                let a = self.mul(x / m, y / m);
                let b = other.mul(x % m, y % m);
                table.push(a * m + b);
            }
        }
        let inverse = (0..n * m).map(|x| self.inv(x / m) * m + other.inv(x % m)).collect();
        Self { name: format!("{}x{}", self.name, other.name), order: n * m, table, inverse }
    }

    /// Permutation group generated by `generators` (images of `0..degree`).
    ///
    /// Elements are numbered in breadth-first order from the identity, so the
    /// numbering is deterministic.
    pub fn from_permutations(name: impl Into<String>, generators: &[Vec<usize>]) -> Result<Self> {
        let degree = generators.first().map_or(0, Vec::len);
        for g in generators {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&i| i >= degree || std::mem::replace(&mut seen[i], true)) {
                return Err(Error::NotAGroup("generator is not a permutation".into()));
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { q.iter().map(|&i| p[i]).collect() };
        let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut elems = vec![identity.clone()];
        index.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let next = compose(&elems[i], g);
                if !index.contains_key(&next) {
                    index.insert(next.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(next);
                }
            }
        }
        let n = elems.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &elems {
            for b in &elems {
                table.push(index[&compose(a, b)]);
            }
        }
        Self::from_table(name, n, table)
    }

    pub fn symmetric3() -> Self {
        Self::from_permutations("S3", &[vec![1, 0, 2], vec![1, 2, 0]]).expect("S3")
    }

    pub fn dihedral8() -> Self {
        Self::from_permutations("D4", &[vec![1, 2, 3, 0], vec![3, 2, 1, 0]]).expect("D4")
    }

    pub fn alternating4() -> Self {
        Self::from_permutations("A4", &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).expect("A4")
    }

    pub fn klein_four() -> Self {
        let mut g = Self::cyclic(2).product(&Self::cyclic(2));
        g.name = "V4".into();
        g
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
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

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// A small generating set, chosen greedily in element order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.trivial_subgroup();
        for a in self.elements() {
            if !span.contains(a) {
                gens.push(a);
                span = self.closure(&span, a);
            }
        }
        gens
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.order);
        bits.insert(0);
        Subgroup { bits, order: 1 }
    }

    pub fn whole(&self) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.order);
        bits.insert_range(..);
        Subgroup { bits, order: self.order }
    }

    /// Smallest subgroup containing `h` and `a`.
    pub fn closure(&self, h: &Subgroup, a: usize) -> Subgroup {
        let mut bits = h.bits.clone();
        let mut members: Vec<usize> = h.bits.ones().collect();
        let mut gens: Vec<usize> = members.clone();
        gens.push(a);
        if !bits.contains(a) {
            bits.insert(a);
            members.push(a);
        }
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &g in &gens {
                let y = self.mul(x, g);
                if !bits.contains(y) {
                    bits.insert(y);
                    members.push(y);
                }
            }
            i += 1;
        }
        Subgroup { order: members.len(), bits }
    }

    /// Validates `elements` as a subgroup.
    pub fn subgroup(&self, elements: &[usize]) -> Result<Subgroup> {
        let mut bits = FixedBitSet::with_capacity(self.order);
        for &e in elements {
            if e >= self.order {
                return Err(Error::NotASubgroup(format!("element {e} out of range")));
            }
            bits.insert(e);
        }
        if !bits.contains(0) {
            return Err(Error::NotASubgroup("missing identity".into()));
        }
        for a in bits.ones() {
            if !bits.contains(self.inv(a)) {
                return Err(Error::NotASubgroup(format!("inverse of {a} missing")));
            }
            for b in bits.ones() {
                if !bits.contains(self.mul(a, b)) {
                    return Err(Error::NotASubgroup(format!("product {a}·{b} missing")));
                }
            }
        }
        let order = bits.count_ones(..);
        Ok(Subgroup { bits, order })
    }

    /// Every subgroup, sorted by order and then by membership bitmask.
    pub fn subgroups(&self) -> Vec<Subgroup> {
        let mut seen: HashSet<FixedBitSet> = HashSet::new();
        let trivial = self.trivial_subgroup();
        seen.insert(trivial.bits.clone());
        let mut all = vec![trivial.clone()];
        let mut layer = vec![trivial];
        while !layer.is_empty() {
            let mut next = Vec::new();
            for h in &layer {
                for a in self.elements() {
                    if h.contains(a) {
                        continue;
                    }
                    let k = self.closure(h, a);
                    if seen.insert(k.bits.clone()) {
                        next.push(k.clone());
                        all.push(k);
                    }
                }
            }
            layer = next;
        }
        all.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| a.key().cmp(&b.key())));
        all
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.elements().all(|g| {
            let gi = self.inv(g);
            h.elements().all(|x| h.contains(self.mul(self.mul(g, x), gi)))
        })
    }

    /// The subgroup as a group in its own right, with the embedding
    /// `local index -> ambient index`.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> (FiniteGroup, Vec<usize>) {
        let embed: Vec<usize> = h.elements().collect();
        let mut local = vec![usize::MAX; self.order];
        for (i, &e) in embed.iter().enumerate() {
            local[e] = i;
        }
        let n = embed.len();
        let mut table = Vec::with_capacity(n * n);
        for &a in &embed {
            for &b in &embed {
                table.push(local[self.mul(a, b)]);
            }
        }
        let inverse = embed.iter().map(|&a| local[self.inv(a)]).collect();
        let group = FiniteGroup { name: format!("{}<{}>", self.name, n), order: n, table, inverse };
        (group, embed)
    }
}

/// A subgroup stored as a membership bitset over the ambient element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    bits: FixedBitSet,
    order: usize,
}

impl Subgroup {
    pub fn contains(&self, a: usize) -> bool {
        self.bits.contains(a)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Ascending ambient indices.
    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.bits.ones().collect()
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let bits: FixedBitSet = self.bits.intersection(&other.bits).collect();
        let mut sized = FixedBitSet::with_capacity(self.bits.len());
        sized.union_with(&bits);
        let order = sized.count_ones(..);
        Subgroup { bits: sized, order }
    }

    /// Index in an ambient group of order `ambient`.
    pub fn index_in(&self, ambient: usize) -> usize {
        ambient / self.order
    }

    fn key(&self) -> Vec<usize> {
        self.to_vec()
    }
}
