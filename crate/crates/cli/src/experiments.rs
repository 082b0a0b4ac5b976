//! The experiments behind each `--experiment` name.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde_json::{json, Map, Value};
use thetakit::cohomology::{check_prop9, h1, lenstra_subgroup, z1};
use thetakit::finmod::catalog;
use thetakit::guard;
use thetakit::heisenberg::{check_split, enumerate_g1, sp_group, HeisenbergGroup, YuIsomorphism};
use thetakit::localfield::{
    character_index_by_scan, lang_tate_index, prop28_search, quadratic_symbol_sum, tame_symbol, tuples, CharacterTuple,
    LangTateModel, TameLocalModel, UnitClass,
};
use thetakit::obstruction::{
    catalog::instances, cross_term_is_biadditive, delta, delta_via_connecting, delta_via_connecting_cocycle,
    quadraticity_report, torsion_check,
};
use thetakit::Error;

use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::report::{row, Verdict};

/// Columns, rows and verdicts of one run.
pub struct Outcome {
    pub columns: Vec<String>,
    pub rows: Vec<Map<String, Value>>,
    pub verdicts: Vec<Verdict>,
}

impl Outcome {
    fn new(columns: &[&str]) -> Self {
        Self { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new(), verdicts: Vec::new() }
    }

    fn verdict(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.verdicts.push(Verdict::new(name, passed, detail));
    }
}

fn join(values: &[usize]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn failures(bad: &[String]) -> String {
    if bad.is_empty() {
        "none".into()
    } else {
        bad.join(", ")
    }
}

pub fn cohomology_survey(config: &ExperimentConfig) -> Result<Outcome> {
    let mut out = Outcome::new(&[
        "group",
        "module",
        "module_order",
        "h1_order",
        "max_period",
        "max_index",
        "max_mindex",
        "index_attained",
    ]);
    let selected = config.names("groups");
    let modules: Vec<Arc<_>> = catalog::pairs(config.int("max-group") as usize, config.int("max-module") as usize)
        .into_iter()
        .filter(|m| selected.as_ref().is_none_or(|s| s.iter().any(|n| n == m.group().name())))
        .map(Arc::new)
        .collect();
    let (mut prop9_bad, mut lenstra_bad, mut trivial_bad) = (Vec::new(), Vec::new(), Vec::new());
    let (mut classes, mut cocycles) = (0usize, 0usize);
    for m in &modules {
        let h = h1(m)?;
        let (mut max_period, mut max_index, mut max_mindex, mut attained) = (1u64, 1u64, 1u64, true);
        for x in &h {
            classes += 1;
            let verdict = check_prop9(x)?;
            if !verdict.holds() {
                prop9_bad.push(m.name().to_string());
            }
            let r = &verdict.report;
            max_period = max_period.max(r.period);
            max_index = max_index.max(r.index);
            max_mindex = max_mindex.max(r.mindex);
            attained &= r.mindex == r.index;
            if m.is_trivial() {
                let image: BTreeSet<usize> = x.values().iter().copied().collect();
                if r.mindex != image.len() as u64 || r.index != r.mindex {
                    trivial_bad.push(m.name().to_string());
                }
            }
        }
        for xi in z1(m)? {
            cocycles += 1;
            let l = lenstra_subgroup(&xi)?;
            let ok = l.coset_map_well_defined
                && l.coset_map_injective
                && l.restriction_trivial
                && l.index <= m.module().order();
            if !ok {
                lenstra_bad.push(m.name().to_string());
            }
        }
        out.rows.push(row([
            ("group", json!(m.group().name())),
            ("module", json!(m.name())),
            ("module_order", json!(m.module().order())),
            ("h1_order", json!(h.len())),
            ("max_period", json!(max_period)),
            ("max_index", json!(max_index)),
            ("max_mindex", json!(max_mindex)),
            ("index_attained", json!(attained)),
        ]));
    }
    for list in [&mut prop9_bad, &mut lenstra_bad, &mut trivial_bad] {
        list.dedup();
    }
    out.verdict(
        "period-index relations",
        prop9_bad.is_empty(),
        format!("{classes} classes over {} modules; failing: {}", modules.len(), failures(&prop9_bad)),
    );
    out.verdict(
        "splitting subgroup from cocycle zeros",
        lenstra_bad.is_empty(),
        format!("{cocycles} cocycles; failing: {}", failures(&lenstra_bad)),
    );
    out.verdict(
        "trivial action: mindex = index = image size",
        trivial_bad.is_empty(),
        format!("failing: {}", failures(&trivial_bad)),
    );
    Ok(out)
}

pub fn heisenberg_verify(config: &ExperimentConfig) -> Result<Outcome> {
    let n = config.int("n") as u32;
    let g = config.int("g") as usize;
    let mut out = Outcome::new(&["quantity", "value"]);
    let h = HeisenbergGroup::standard(n, g)?;
    let ext = h.ext();
    let k = h.quotient_group();
    let expected = (n as usize).pow(2 * g as u32 + 1);
    out.rows.push(row([("quantity", json!("order")), ("value", json!(ext.order()))]));
    out.verdict("order is n^(2g+1)", ext.order() == expected, format!("{} (expected {expected})", ext.order()));

    guard::check("commutator_scan", (k.order() as u128) * (k.order() as u128))?;
    let mut mismatches = 0usize;
    for p in k.elements() {
        let xp = k.coords(p);
        for q in k.elements() {
            let xq = k.coords(q);
            // ℓ_Q(x_P) - ℓ_P(x_Q) from coordinates (x | ℓ)
            let mut e = 0u64;
            for i in 0..g {
                e += (xq[g + i] * xp[i]) as u64 + ((n - xp[g + i]) * xq[i]) as u64;
            }
            let e = (e % n as u64) as u32;
            for (a1, a2) in [(0, 0), (1, n - 1), (n - 1, 1 % n)] {
                if ext.lift_commutator(p, q, a1, a2) != Some(e) || h.commutator_pairing(p, q) != e {
                    mismatches += 1;
                }
            }
        }
    }
    out.verdict(
        "commutator of lifts equals the pairing",
        mismatches == 0,
        format!("{} pairs of K, 3 lifts each; {mismatches} mismatches", k.order() * k.order()),
    );
    out.verdict("pairing has the standard Gram matrix", h.is_standard_pairing(), "");

    let center = h.center();
    let central: BTreeSet<usize> = (0..n).map(|a| ext.central(a)).collect();
    let center_ok = center.iter().copied().collect::<BTreeSet<_>>() == central;
    out.rows.push(row([("quantity", json!("center")), ("value", json!(center.len()))]));
    out.verdict("center is the central copy of mu_n", center_ok, format!("{} elements", center.len()));

    if config.flag("automorphisms") {
        let g1 = enumerate_g1(&h)?;
        let s = g1.summary();
        for (name, v) in
            [("g1_order", s.g1_order), ("g2_order", s.g2_order), ("quotient_image_order", s.quotient_image_order)]
        {
            out.rows.push(row([("quantity", json!(name)), ("value", json!(v))]));
        }
        out.verdict(
            "automorphisms trivial on the quotient: |G2| = |K|",
            s.g2_order == k.order(),
            format!("{} (|K| = {})", s.g2_order, k.order()),
        );
        out.verdict(
            "|G1| = |G2| x |quotient image|",
            s.g1_order == s.g2_order * s.quotient_image_order,
            format!("{} = {} x {}", s.g1_order, s.g2_order, s.quotient_image_order),
        );
        if n % 2 == 1 {
            let sp = sp_group(g, n)?;
            out.rows.push(row([("quantity", json!("sp_order")), ("value", json!(sp.len()))]));
            let split = check_split(&h, &g1, &sp)?;
            out.verdict(
                "G1 splits over Sp(K)",
                split.holds(),
                format!(
                    "image full: {}, section: {}, homomorphism: {}, in G1: {}",
                    split.image_is_full, split.is_section, split.is_homomorphism, split.lands_in_g1
                ),
            );
        }
    }

    match YuIsomorphism::new(&h) {
        Ok(phi) => {
            out.verdict("isomorphism to the variant group is a homomorphism", phi.is_homomorphism(), "");
            out.verdict("isomorphism to the variant group is bijective", phi.is_bijective(), "");
            out.verdict(
                "isomorphism is trivial on center and quotient",
                phi.is_trivial_on_center() && phi.is_trivial_on_quotient(),
                "",
            );
        }
        Err(Error::EvenModulus(m)) => {
            out.verdict("variant group rejected for even n", n.is_multiple_of(2), format!("modulus {m}"));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(out)
}

pub fn obstruction_table(config: &ExperimentConfig) -> Result<Outcome> {
    let mut out = Outcome::new(&["instance", "eta", "delta", "linear", "quadratic", "class_trivial"]);
    let selected = config.names("instances");
    let all: Vec<_> =
        instances()?.into_iter().filter(|i| selected.as_ref().is_none_or(|s| s.contains(&i.name))).collect();
    let (mut formula_bad, mut torsion_bad, mut quad_bad, mut biadd_bad) =
        (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    let mut count = 0usize;
    for inst in &all {
        let data = &inst.data;
        let cocycles = z1(data.eta_module())?;
        let n = data.modulus() as i64;
        for eta in &cocycles {
            count += 1;
            let rec = delta(data, eta)?;
            let via = delta_via_connecting_cocycle(data, eta)?;
            if rec.delta != via || !rec.delta_class.same_class(&delta_via_connecting(data, eta)?) {
                formula_bad.push(inst.name.clone());
            }
            if !torsion_check(&rec, n) {
                torsion_bad.push(inst.name.clone());
            }
            out.rows.push(row([
                ("instance", json!(inst.name)),
                ("eta", json!(join(eta.values()))),
                ("delta", json!(join(rec.delta.values()))),
                ("linear", json!(join(rec.linear_part.values()))),
                ("quadratic", json!(join(rec.quadratic_part.values()))),
                ("class_trivial", json!(rec.delta_class.is_trivial())),
            ]));
        }
        for x in &cocycles {
            for y in &cocycles {
                if !quadraticity_report(data, x, y)?.holds() {
                    quad_bad.push(inst.name.clone());
                }
            }
        }
        if !cross_term_is_biadditive(data, &cocycles)? {
            biadd_bad.push(inst.name.clone());
        }
    }
    for list in [&mut formula_bad, &mut torsion_bad, &mut quad_bad] {
        list.dedup();
    }
    let scope = format!("{count} cocycles over {} instances", all.len());
    out.verdict(
        "formula agrees with the connecting map",
        formula_bad.is_empty(),
        format!("{scope}; failing: {}", failures(&formula_bad)),
    );
    out.verdict("image is n-torsion", torsion_bad.is_empty(), format!("failing: {}", failures(&torsion_bad)));
    out.verdict(
        "linear part additive, parts homogeneous of degree 1 and 2",
        quad_bad.is_empty(),
        format!("failing: {}", failures(&quad_bad)),
    );
    out.verdict(
        "cross term biadditive up to coboundary",
        biadd_bad.is_empty(),
        format!("failing: {}", failures(&biadd_bad)),
    );
    Ok(out)
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
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

/// The symbol from residues: `(-1)^(v_a v_b) u_a^(v_b) / u_b^(v_a)`, raised to
/// `(p-1)/n` and read off as a power of `g^((p-1)/n)`.
pub fn symbol_from_residues(a: UnitClass, b: UnitClass, model: &TameLocalModel) -> u32 {
    let (p, n) = (model.p() as u64, model.n() as u64);
    let g = model.primitive_root() as u64;
    let ua = pow_mod(g, a.w as u64, p);
    let ub = pow_mod(g, b.w as u64, p);
    let ub_inv = pow_mod(ub, p - 2, p);
    let mut u = pow_mod(ua, b.v as u64, p) * pow_mod(ub_inv, a.v as u64, p) % p;
    if (a.v as u64 * b.v as u64) % 2 == 1 {
        u = (p - u) % p;
    }
    let target = pow_mod(u, (p - 1) / n, p);
    let zeta = pow_mod(g, (p - 1) / n, p);
    let mut z = 1u64;
    for k in 0..n {
        if z == target {
            return k as u32;
        }
        z = z * zeta % p;
    }
    unreachable!("u^((p-1)/n) is an n-th root of unity")
}

fn label(c: UnitClass, model: &TameLocalModel) -> String {
    let p = model.p() as u128;
    let g = model.primitive_root() as u128;
    let value = p.checked_pow(c.v).zip(g.checked_pow(c.w)).and_then(|(a, b)| a.checked_mul(b));
    match value {
        Some(v) => v.to_string(),
        None => format!("{}^{}*{}^{}", p, c.v, g, c.w),
    }
}

pub fn symbol_table(config: &ExperimentConfig) -> Result<Outcome> {
    let model = TameLocalModel::new(config.int("p") as u32, config.int("n") as u32)?;
    let classes = model.classes();
    let labels: Vec<String> = classes.iter().map(|&c| label(c, &model)).collect();
    let mut columns = vec!["a".to_string()];
    columns.extend(labels.iter().cloned());
    let mut out = Outcome { columns, rows: Vec::new(), verdicts: Vec::new() };
    let n = model.n();
    let sym = |a, b| tame_symbol(a, b, &model);
    for (i, &a) in classes.iter().enumerate() {
        let mut r = Map::new();
        r.insert("a".into(), json!(labels[i]));
        for (j, &b) in classes.iter().enumerate() {
            r.insert(labels[j].clone(), json!(sym(a, b)));
        }
        out.rows.push(r);
    }
    let minus_one = UnitClass::new(0, model.sign_dlog() % n);
    let (mut anti, mut bilinear, mut neg, mut formula) = (0usize, 0usize, 0usize, 0usize);
    for &a in &classes {
        if sym(a, model.add(a, minus_one)) != 0 {
            neg += 1;
        }
        for &b in &classes {
            if (sym(a, b) + sym(b, a)) % n != 0 {
                anti += 1;
            }
            if symbol_from_residues(a, b, &model) != sym(a, b) {
                formula += 1;
            }
            for &c in &classes {
                if sym(model.add(a, b), c) != (sym(a, c) + sym(b, c)) % n {
                    bilinear += 1;
                }
            }
        }
    }
    let degenerate = classes.iter().filter(|&&a| !a.is_one() && classes.iter().all(|&b| sym(a, b) == 0)).count();
    out.verdict("antisymmetric", anti == 0, format!("{anti} failing pairs"));
    out.verdict("bilinear", bilinear == 0, format!("{bilinear} failing triples"));
    out.verdict("<a, -a> = 0", neg == 0, format!("{neg} failing classes"));
    out.verdict("nondegenerate", degenerate == 0, format!("{degenerate} classes pair trivially with all"));
    out.verdict("agrees with the residue formula", formula == 0, format!("{formula} mismatches"));
    Ok(out)
}

fn render_tuple(t: &[UnitClass]) -> String {
    t.iter().map(|c| format!("({},{})", c.v, c.w)).collect::<Vec<_>>().join(" ")
}

pub fn prop28(config: &ExperimentConfig) -> Result<Outcome> {
    let model = TameLocalModel::new(config.int("p") as u32, config.int("n") as u32)?;
    let g = config.int("g") as usize;
    let subgroup: Vec<Vec<UnitClass>> = match config.get("subgroup") {
        "all" => tuples(g, &model).collect(),
        _ => vec![vec![UnitClass::ONE; 2 * g]],
    };
    let hit = prop28_search(&subgroup, g, &model)?;
    let mut out = Outcome::new(&["subgroup_size", "hit", "symbol_sum"]);
    out.rows.push(row([
        ("subgroup_size", json!(subgroup.len())),
        ("hit", hit.as_ref().map_or(Value::Null, |t| json!(render_tuple(t)))),
        ("symbol_sum", hit.as_ref().map_or(Value::Null, |t| json!(quadratic_symbol_sum(t, &model)))),
    ]));

    // independent route: residue-formula symbols over a plain lex scan
    let n = model.n();
    let digits = 4 * g;
    let total = (n as u64).pow(digits as u32);
    let sum = |t: &[UnitClass]| (0..g).map(|i| symbol_from_residues(t[i], t[g + i], &model)).sum::<u32>() % n;
    let mut scan = None;
    for k in 1..total {
        let mut d = Vec::with_capacity(digits);
        let mut rest = k;
        for _ in 0..digits {
            d.push((rest % n as u64) as u32);
            rest /= n as u64;
        }
        d.reverse();
        let t: Vec<UnitClass> = d.chunks(2).map(|c| UnitClass::new(c[0], c[1])).collect();
        let all_nonzero = subgroup.iter().all(|h| {
            let shifted: Vec<UnitClass> =
                h.iter().zip(&t).map(|(a, b)| UnitClass::new((a.v + b.v) % n, (a.w + b.w) % n)).collect();
            sum(&shifted) != 0
        });
        if all_nonzero {
            scan = Some(t);
            break;
        }
    }
    out.verdict(
        "first hit agrees with an independent scan",
        scan == hit,
        format!("search {:?}, scan {:?}", hit.as_deref().map(render_tuple), scan.as_deref().map(render_tuple)),
    );
    if let Some(t) = &hit {
        let ok = subgroup.iter().all(|h| {
            let shifted: Vec<UnitClass> = h.iter().zip(t).map(|(&a, &b)| model.add(a, b)).collect();
            quadratic_symbol_sum(&shifted, &model) != 0
        });
        out.verdict("hit avoids the zero locus on every translate", ok, "");
    }
    Ok(out)
}

pub fn lang_tate(config: &ExperimentConfig) -> Result<Outcome> {
    let n = config.int("n") as u32;
    let g = config.int("g") as usize;
    let mut out = Outcome::new(&["g", "k", "index", "expected", "scan_index"]);
    let (mut bad, mut scan_bad, mut scanned, mut skipped) = (0usize, 0usize, 0usize, 0usize);
    for gp in 1..=g {
        let model = LangTateModel::new(n, gp)?;
        for k in 0..=2 * gp {
            let coords: Vec<Vec<u32>> =
                (0..2 * gp).map(|i| if i < k { model.uniformizer(i) } else { model.one() }).collect();
            let idx = lang_tate_index(&model, &coords)?;
            let expected = (n as u64).pow(k as u32);
            let chars: Vec<Vec<u32>> = coords.into_iter().filter(|c| c.iter().any(|&x| x != 0)).collect();
            let scan = match character_index_by_scan(&CharacterTuple::new(n, 2 * gp, chars)?) {
                Ok(r) => {
                    scanned += 1;
                    if r.index != idx || r.mindex != idx {
                        scan_bad += 1;
                    }
                    json!(r.index)
                }
                Err(Error::GuardExceeded { .. }) => {
                    skipped += 1;
                    Value::Null
                }
                Err(e) => return Err(e.into()),
            };
            if idx != expected {
                bad += 1;
            }
            out.rows.push(row([
                ("g", json!(gp)),
                ("k", json!(k)),
                ("index", json!(idx)),
                ("expected", json!(expected)),
                ("scan_index", scan),
            ]));
        }
    }
    out.verdict("index of T_1..T_k is n^k", bad == 0, format!("{} cases, {bad} failing", out.rows.len()));
    out.verdict(
        "agrees with a subgroup scan",
        scan_bad == 0,
        format!("{scanned} scanned, {skipped} beyond the scan guard, {scan_bad} failing"),
    );
    Ok(out)
}
