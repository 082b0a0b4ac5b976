use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::guard;

/// Largest prime accepted by [`TameLocalModel`], so the dlog table stays small.
pub const MAX_PRIME: u32 = 10_000;

/// `Q_p*/Q_p*^n` for an odd prime `p` with `n | p - 1`, in coordinates
/// `(v_p mod n, dlog of the unit residue mod n)` relative to the least
/// primitive root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TameLocalModel {
    p: u32,
    n: u32,
    root: u32,
    dlog: Vec<u32>,
}

/// A class in `k*/k*^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct UnitClass {
    pub v: u32,
    pub w: u32,
}

impl UnitClass {
    pub const ONE: UnitClass = UnitClass { v: 0, w: 0 };

    pub fn new(v: u32, w: u32) -> Self {
        Self { v, w }
    }

    pub fn is_one(&self) -> bool {
        *self == Self::ONE
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl TameLocalModel {
    pub fn new(p: u32, n: u32) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::InvalidModel(format!("{p} is not an odd prime")));
        }
        if p > MAX_PRIME {
            return Err(Error::InvalidModel(format!("p = {p} exceeds {MAX_PRIME}")));
        }
        if n < 2 || !(p - 1).is_multiple_of(n) {
            return Err(Error::InvalidModel(format!("n = {n} must be at least 2 and divide p - 1 = {}", p - 1)));
        }
        let factors: Vec<u64> = crate::cohomology::prime_factors((p - 1) as u64).into_iter().map(|(q, _)| q).collect();
        let root = (2..p)
            .find(|&g| factors.iter().all(|&q| pow_mod(g as u64, (p as u64 - 1) / q, p as u64) != 1))
            .expect("a primitive root exists");
        let mut dlog = vec![0u32; p as usize];
        let mut x = 1u64;
        for k in 0..p - 1 {
            dlog[x as usize] = k;
            x = x * root as u64 % p as u64;
        }
        Ok(Self { p, n, root, dlog })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn primitive_root(&self) -> u32 {
        self.root
    }

    /// Discrete log of a nonzero residue mod p, in `0..p-1`.
    pub fn dlog(&self, residue: u32) -> u32 {
        self.dlog[(residue % self.p) as usize]
    }

    /// `dlog(-1) mod n = (p - 1)/2 mod n`.
    pub fn sign_dlog(&self) -> u32 {
        (self.p - 1) / 2 % self.n
    }

    /// The integer `p^v · g^w` representing a class.
    pub fn representative(&self, c: UnitClass) -> i64 {
        (self.p as i64).pow(c.v) * (self.root as i64).pow(c.w)
    }

    /// All `n²` classes in lex order of `(v, w)`.
    pub fn classes(&self) -> Vec<UnitClass> {
        (0..self.n).flat_map(|v| (0..self.n).map(move |w| UnitClass { v, w })).collect()
    }

    pub fn add(&self, a: UnitClass, b: UnitClass) -> UnitClass {
        UnitClass { v: (a.v + b.v) % self.n, w: (a.w + b.w) % self.n }
    }

    pub fn neg(&self, a: UnitClass) -> UnitClass {
        UnitClass { v: (self.n - a.v) % self.n, w: (self.n - a.w) % self.n }
    }

    pub fn check(&self, a: UnitClass) -> Result<UnitClass> {
        if a.v >= self.n || a.w >= self.n {
            return Err(Error::InvalidModel(format!("class ({}, {}) is not reduced mod {}", a.v, a.w, self.n)));
        }
        Ok(a)
    }
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// The class of a nonzero rational.
pub fn reduce<T>(a: &Ratio<T>, model: &TameLocalModel) -> Result<UnitClass>
where
    T: Clone + Integer + Signed + ToPrimitive + FromPrimitive,
{
    if a.numer().is_zero() {
        return Err(Error::ZeroRational);
    }
    let p = T::from_u32(model.p).expect("p fits the integer type");
    let strip = |mut x: T| -> (i64, u32) {
        x = x.abs();
        let mut v = 0i64;
        while x.is_multiple_of(&p) {
            x = x / p.clone();
            v += 1;
        }
        let r = x.mod_floor(&p).to_u32().expect("residue fits");
        (v, r)
    };
    let (vn, rn) = strip(a.numer().clone());
    let (vd, rd) = strip(a.denom().clone());
    let n = model.n as i64;
    let order = model.p as i64 - 1;
    let mut log = model.dlog(rn) as i64 - model.dlog(rd) as i64;
    // a negative sign contributes dlog(-1) = (p-1)/2
    if a.numer().is_negative() != a.denom().is_negative() {
        log += order / 2;
    }
    Ok(UnitClass { v: (vn - vd).rem_euclid(n) as u32, w: log.rem_euclid(order).rem_euclid(n) as u32 })
}

/// The tame symbol `⟨a, b⟩ = v_b·w_a - v_a·w_b + v_a·v_b·dlog(-1)` mod n.
pub fn tame_symbol(a: UnitClass, b: UnitClass, model: &TameLocalModel) -> u32 {
    let n = model.n as i64;
    let s = model.sign_dlog() as i64;
    let (va, wa, vb, wb) = (a.v as i64, a.w as i64, b.v as i64, b.w as i64);
    (vb * wa - va * wb + va * vb * s).rem_euclid(n) as u32
}

/// `Σ ⟨a_i, b_i⟩ + Σ (⟨C1_i, b_i⟩ + ⟨a_i, C2_i⟩)` mod n.
pub fn delta_symbols(
    a: &[UnitClass],
    b: &[UnitClass],
    c1: &[UnitClass],
    c2: &[UnitClass],
    model: &TameLocalModel,
) -> Result<u32> {
    let g = a.len();
    for list in [b, c1, c2] {
        if list.len() != g {
            return Err(Error::LengthMismatch { expected: g, got: list.len() });
        }
    }
    let n = model.n;
    let mut acc = 0u32;
    for i in 0..g {
        acc += tame_symbol(a[i], b[i], model);
        acc += tame_symbol(c1[i], b[i], model);
        acc += tame_symbol(a[i], c2[i], model);
        acc %= n;
    }
    Ok(acc)
}

/// `Σ ⟨a_i, b_i⟩` for a tuple laid out as `a_1..a_g, b_1..b_g`.
pub fn quadratic_symbol_sum(tuple: &[UnitClass], model: &TameLocalModel) -> u32 {
    let g = tuple.len() / 2;
    (0..g).map(|i| tame_symbol(tuple[i], tuple[g + i], model)).sum::<u32>() % model.n
}

/// Odometer over `((Z/n)²)^(2g)` in lex order of `(a_1.v, a_1.w, …, b_g.v, b_g.w)`.
pub fn tuples(g: usize, model: &TameLocalModel) -> impl Iterator<Item = Vec<UnitClass>> + '_ {
    let len = 4 * g;
    let n = model.n as u64;
    let total = n.pow(len as u32);
    (0..total).map(move |mut k| {
        let mut digits = vec![0u32; len];
        for d in digits.iter_mut().rev() {
            *d = (k % n) as u32;
            k /= n;
        }
        digits.chunks(2).map(|c| UnitClass { v: c[0], w: c[1] }).collect()
    })
}

/// The first nonzero `t` in lex order with `Σ⟨·,·⟩(h + t) ≠ 0` for every `h`
/// in `subgroup`.
pub fn prop28_search(subgroup: &[Vec<UnitClass>], g: usize, model: &TameLocalModel) -> Result<Option<Vec<UnitClass>>> {
    if g == 0 {
        return Err(Error::Unsupported("g must be at least 1".into()));
    }
    for h in subgroup {
        if h.len() != 2 * g {
            return Err(Error::LengthMismatch { expected: 2 * g, got: h.len() });
        }
        for &c in h {
            model.check(c)?;
        }
    }
    let space = guard::pow_count(model.n as usize, 4 * g);
    guard::check("prop28_search", space.saturating_mul(subgroup.len().max(1) as u128))?;
    Ok(tuples(g, model).skip(1).find(|t| {
        subgroup.iter().all(|h| {
            let sum: Vec<UnitClass> = h.iter().zip(t).map(|(&x, &y)| model.add(x, y)).collect();
            quadratic_symbol_sum(&sum, model) != 0
        })
    }))
}
