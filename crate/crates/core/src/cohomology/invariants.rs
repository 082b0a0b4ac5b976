use std::collections::BTreeMap;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cohomology::{Cocycle1, Cocycle2, CohClass};
use crate::error::{Error, Result};
use crate::finmod::Subgroup;

/// Period, index, mindex and Galois index of a class, with witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodIndexReport {
    pub period: u64,
    pub index: u64,
    pub mindex: u64,
    pub galois_index: u64,
    /// Witness subgroups as sorted element lists, keyed by invariant name
    /// (`mindex`, `galois_index`, `index` for the splitting subgroups whose
    /// indices realize the gcd).
    pub witness_subgroups: BTreeMap<String, Vec<Vec<usize>>>,
}

/// Order of the class.
pub fn period(x: &CohClass) -> u64 {
    let exponent = x.module().module().exponent() as u64;
    (1..=exponent).find(|&k| x.is_killed_by(k as i64)).expect("class order divides the module exponent")
}

/// Restriction of a class to a subgroup `H ≤ Γ`.
pub fn restrict(x: &CohClass, h: &Subgroup) -> Result<CohClass> {
    let module = x.module();
    let g = module.group();
    if h.elements().any(|e| e >= g.order()) {
        return Err(Error::NotASubgroup("element out of range".into()));
    }
    g.subgroup(&h.to_vec())?;
    let (sub_module, embed) = module.restrict(h);
    let sub_module = Arc::new(sub_module);
    match x {
        CohClass::Degree1(c) => {
            let values = embed.iter().map(|&s| c.value(s)).collect();
            let r = Cocycle1::new(sub_module, values)?;
            Ok(CohClass::of1(&r))
        }
        CohClass::Degree2(c) => {
            let values =
                embed.iter().flat_map(|&s| embed.iter().map(move |&t| (s, t))).map(|(s, t)| c.value(s, t)).collect();
            let r = Cocycle2::new(sub_module, values)?;
            CohClass::of2(&r)
        }
    }
}

/// Whether the restriction of a degree-1 class to `h` is trivial.
pub fn splits(x: &Cocycle1, h: &Subgroup) -> bool {
    let elements = h.to_vec();
    x.is_coboundary_on(&elements)
}

/// Period, index, mindex and Galois index of a degree-1 class by a scan over
/// every subgroup of Γ.
pub fn index(x: &CohClass) -> Result<PeriodIndexReport> {
    let c = x.as_cocycle1().ok_or_else(|| Error::Unsupported("index is only defined for degree-1 classes".into()))?;
    let g = c.module().group();
    let mut gcd_all = 0u64;
    let mut gcd_normal = 0u64;
    let mut best: Option<(u64, Subgroup)> = None;
    let mut best_normal: Option<(u64, Subgroup)> = None;
    let mut splitting = Vec::new();
    for h in g.subgroups() {
        if !splits(c, &h) {
            continue;
        }
        let idx = h.index_in(g.order()) as u64;
        gcd_all = gcd_all.gcd(&idx);
        if best.as_ref().is_none_or(|(b, _)| idx < *b) {
            best = Some((idx, h.clone()));
        }
        if g.is_normal(&h) {
            gcd_normal = gcd_normal.gcd(&idx);
            if best_normal.as_ref().is_none_or(|(b, _)| idx < *b) {
                best_normal = Some((idx, h.clone()));
            }
        }
        splitting.push((idx, h));
    }
    // the trivial subgroup always splits a degree-1 class
    let (mindex, min_witness) = best.expect("trivial subgroup splits");
    let galois_witness = best_normal.expect("trivial subgroup is normal").1;
    let mut witnesses = BTreeMap::new();
    witnesses.insert("mindex".to_string(), vec![min_witness.to_vec()]);
    witnesses.insert("galois_index".to_string(), vec![galois_witness.to_vec()]);
    witnesses.insert("index".to_string(), gcd_witnesses(&splitting, gcd_all));
    Ok(PeriodIndexReport {
        period: period(x),
        index: gcd_all,
        mindex,
        galois_index: gcd_normal,
        witness_subgroups: witnesses,
    })
}

/// A short list of splitting subgroups whose indices already have gcd `target`.
fn gcd_witnesses(splitting: &[(u64, Subgroup)], target: u64) -> Vec<Vec<usize>> {
    let mut sorted: Vec<&(u64, Subgroup)> = splitting.iter().collect();
    sorted.sort_by_key(|(i, _)| *i);
    let mut acc = 0u64;
    let mut out = Vec::new();
    for (idx, h) in sorted {
        let next = acc.gcd(idx);
        if next != acc || out.is_empty() {
            acc = next;
            out.push(h.to_vec());
        }
        if acc == target {
            break;
        }
    }
    out
}

pub fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// One primary component of a class in a [`Prop9Verdict`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimaryPart {
    pub prime: u64,
    pub exponent: u32,
    /// Multiplier `e` with `e ≡ 1 mod p^a` and `e ≡ 0` mod the rest of the period.
    pub multiplier: u64,
    pub period: u64,
    pub index: u64,
}

/// Period/index relations for a degree-1 class, with intermediate data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop9Verdict {
    pub report: PeriodIndexReport,
    pub period_divides_index: bool,
    pub same_prime_support: bool,
    pub parts: Vec<PrimaryPart>,
    pub parts_sum_to_class: bool,
    pub index_is_product: bool,
}

impl Prop9Verdict {
    pub fn holds(&self) -> bool {
        self.period_divides_index && self.same_prime_support && self.parts_sum_to_class && self.index_is_product
    }
}

/// Checks `period | index`, equal prime support, and the primary
/// decomposition product formula for the index.
pub fn check_prop9(x: &CohClass) -> Result<Prop9Verdict> {
    let report = index(x)?;
    let c = x.as_cocycle1().expect("index succeeded, so degree 1");
    let n = report.period;
    let support = |v: u64| prime_factors(v).into_iter().map(|(p, _)| p).collect::<Vec<_>>();
    let mut parts = Vec::new();
    let mut sum = Cocycle1::zero(c.module().clone());
    let mut product = 1u64;
    for (p, a) in prime_factors(n) {
        let q = p.pow(a);
        let rest = n / q;
        // e = rest · (rest⁻¹ mod q)
        let inv = mod_inverse(rest % q, q).expect("coprime parts");
        let e = rest * inv % n;
        let part = c.scale(e as i64);
        let part_class = CohClass::of1(&part);
        let part_report = index(&part_class)?;
        product *= part_report.index;
        sum = sum.add(&part);
        parts.push(PrimaryPart {
            prime: p,
            exponent: a,
            multiplier: e,
            period: part_report.period,
            index: part_report.index,
        });
    }
    let parts_sum_to_class = sum.sub(c).is_coboundary();
    Ok(Prop9Verdict {
        period_divides_index: report.index % report.period == 0,
        same_prime_support: support(report.period) == support(report.index),
        index_is_product: product == report.index,
        parts_sum_to_class,
        parts,
        report,
    })
}

pub(crate) fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let e = (a as i64).extended_gcd(&(m as i64));
    (e.gcd == 1).then(|| e.x.rem_euclid(m as i64) as u64)
}

/// The splitting subgroup `{σ : ξ(σ) = 0}` of a 1-cocycle, with the checks
/// that make it a splitting subgroup of index at most `|M|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LenstraSubgroup {
    pub subgroup: Subgroup,
    pub index: usize,
    /// `ξ` is constant on each coset `σH`.
    pub coset_map_well_defined: bool,
    /// Distinct cosets `σH` have distinct `ξ`-values.
    pub coset_map_injective: bool,
    /// `ξ` vanishes on `H`, so its class restricts trivially.
    pub restriction_trivial: bool,
}

pub fn lenstra_subgroup(xi: &Cocycle1) -> Result<LenstraSubgroup> {
    let g = xi.module().group();
    let zeros: Vec<usize> = g.elements().filter(|&s| xi.value(s) == 0).collect();
    let subgroup =
        g.subgroup(&zeros).map_err(|e| Error::NotACocycle(format!("kernel of cocycle is not a subgroup: {e}")))?;
    let mut well_defined = true;
    let mut coset_values: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for s in g.elements() {
        let coset: Vec<usize> = {
            let mut c: Vec<usize> = subgroup.elements().map(|h| g.mul(s, h)).collect();
            c.sort_unstable();
            c
        };
        let v = xi.value(s);
        if coset.iter().any(|&t| xi.value(t) != v) {
            well_defined = false;
        }
        coset_values.insert(coset, v);
    }
    let mut values: Vec<usize> = coset_values.values().copied().collect();
    values.sort_unstable();
    values.dedup();
    let injective = values.len() == coset_values.len();
    let restriction_trivial = splits(xi, &subgroup);
    Ok(LenstraSubgroup {
        index: subgroup.index_in(g.order()),
        subgroup,
        coset_map_well_defined: well_defined,
        coset_map_injective: injective,
        restriction_trivial,
    })
}

/// Restriction to subgroups of index prime to the period, recorded for the
/// non-reduction sweep: `(subgroup index, period after, index after)`.
pub fn coprime_restrictions(x: &CohClass) -> Result<Vec<(u64, u64, u64)>> {
    let report = index(x)?;
    let g = x.module().group().clone();
    let mut out = Vec::new();
    for h in g.subgroups() {
        let idx = h.index_in(g.order()) as u64;
        if idx == 1 || idx.gcd(&report.period) != 1 {
            continue;
        }
        let r = restrict(x, &h)?;
        let rr = index(&r)?;
        out.push((idx, rr.period, rr.index));
    }
    Ok(out)
}
