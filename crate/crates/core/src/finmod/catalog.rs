//! Standard test instances shared by the property suites and the CLI.

use std::sync::Arc;

use crate::finmod::{FiniteAbelianGroup, FiniteGroup, GammaModule};

/// Catalog groups: cyclic of order 1..=8, Klein four, S3, D4, A4.
pub fn groups() -> Vec<Arc<FiniteGroup>> {
    let mut out: Vec<Arc<FiniteGroup>> = (1..=8).map(|n| Arc::new(FiniteGroup::cyclic(n))).collect();
    out.push(Arc::new(FiniteGroup::klein_four()));
    out.push(Arc::new(FiniteGroup::symmetric3()));
    out.push(Arc::new(FiniteGroup::dihedral8()));
    out.push(Arc::new(FiniteGroup::alternating4()));
    out
}

pub fn group_by_name(name: &str) -> Option<Arc<FiniteGroup>> {
    groups().into_iter().find(|g| g.name() == name)
}

/// A homomorphism `Γ -> {±1}`, as a sign per element: the first nontrivial
/// one found on the generators, or `None` if Γ has none.
pub fn sign_character(group: &FiniteGroup) -> Option<Vec<i64>> {
    let gens = group.generators();
    // try sign patterns on the generators in order
    for mask in 1u32..(1 << gens.len()) {
        let mut sign = vec![0i64; group.order()];
        sign[0] = 1;
        let mut frontier = vec![0usize];
        let mut ok = true;
        while let Some(x) = frontier.pop() {
            for (k, &g) in gens.iter().enumerate() {
                let y = group.mul(x, g);
                let s = sign[x] * if mask >> k & 1 == 1 { -1 } else { 1 };
                if sign[y] == 0 {
                    sign[y] = s;
                    frontier.push(y);
                } else if sign[y] != s {
                    ok = false;
                }
            }
        }
        if ok && group.elements().all(|a| group.elements().all(|b| sign[group.mul(a, b)] == sign[a] * sign[b])) {
            return Some(sign);
        }
    }
    None
}

/// Catalog modules over `group`: trivial `Z/2, Z/3, Z/4, (Z/2)^2, Z/6`,
/// `Z/3` and `Z/4` twisted by a sign character, and `(Z/2)^2` with a
/// nontrivial permutation-style action where one exists.
pub fn modules(group: &Arc<FiniteGroup>) -> Vec<GammaModule> {
    let cyc = |d: &[u32]| FiniteAbelianGroup::new(d).expect("catalog divisors");
    let mut out = vec![
        GammaModule::trivial(group.clone(), cyc(&[2])).with_name(format!("{}:Z2", group.name())),
        GammaModule::trivial(group.clone(), cyc(&[3])).with_name(format!("{}:Z3", group.name())),
        GammaModule::trivial(group.clone(), cyc(&[4])).with_name(format!("{}:Z4", group.name())),
        GammaModule::trivial(group.clone(), cyc(&[2, 2])).with_name(format!("{}:Z2^2", group.name())),
        GammaModule::trivial(group.clone(), cyc(&[6])).with_name(format!("{}:Z6", group.name())),
    ];
    if let Some(sign) = sign_character(group) {
        out.push(
            GammaModule::scalar(group.clone(), cyc(&[3]), &sign)
                .expect("sign action")
                .with_name(format!("{}:Z3(-)", group.name())),
        );
        out.push(
            GammaModule::scalar(group.clone(), cyc(&[4]), &sign)
                .expect("sign action")
                .with_name(format!("{}:Z4(-)", group.name())),
        );
    }
    if let Some(m) = nontrivial_klein_module(group) {
        out.push(m);
    }
    out
}

/// `(Z/2)^2` with a nontrivial action, if Γ admits one: a swap of the two
/// coordinates through a sign character, or the order-3 rotation of the
/// nonzero vectors for groups with a quotient of order 3.
fn nontrivial_klein_module(group: &Arc<FiniteGroup>) -> Option<GammaModule> {
    let v = FiniteAbelianGroup::new(&[2, 2]).expect("klein");
    // GL2(F2) acting on indices 0=(0,0),1=(0,1),2=(1,0),3=(1,1)
    let swap = [0usize, 2, 1, 3];
    let rot = [0usize, 2, 3, 1];
    let compose = |p: &[usize; 4], q: &[usize; 4]| -> [usize; 4] { [p[q[0]], p[q[1]], p[q[2]], p[q[3]]] };
    let gens = group.generators();
    // assign each generator an element of GL2(F2) ≅ S3, in a fixed search order
    let gl2: Vec<[usize; 4]> = {
        let id = [0, 1, 2, 3];
        let r2 = compose(&rot, &rot);
        vec![id, swap, rot, r2, compose(&swap, &rot), compose(&rot, &swap)]
    };
    let mut choice = vec![0usize; gens.len()];
    loop {
        // advance odometer
        let mut k = 0;
        loop {
            if k == choice.len() {
                return None;
            }
            choice[k] += 1;
            if choice[k] < gl2.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        let mut image: Vec<Option<[usize; 4]>> = vec![None; group.order()];
        image[0] = Some([0, 1, 2, 3]);
        let mut frontier = vec![0usize];
        let mut ok = true;
        while let Some(x) = frontier.pop() {
            for (k, &g) in gens.iter().enumerate() {
                let y = group.mul(x, g);
                let val = compose(&image[x].unwrap(), &gl2[choice[k]]);
                match image[y] {
                    None => {
                        image[y] = Some(val);
                        frontier.push(y);
                    }
                    Some(existing) if existing != val => ok = false,
                    _ => {}
                }
            }
        }
        if !ok {
            continue;
        }
        let table: Vec<[usize; 4]> = image.into_iter().map(Option::unwrap).collect();
        if let Ok(m) = GammaModule::from_fn(group.clone(), v.clone(), |s, x| table[s][x]) {
            return Some(m.with_name(format!("{}:Z2^2(perm)", group.name())));
        }
    }
}

/// Every `(Γ, M)` pair in the catalog with `|Γ| <= max_group` and `|M| <= max_module`.
pub fn pairs(max_group: usize, max_module: usize) -> Vec<GammaModule> {
    groups()
        .iter()
        .filter(|g| g.order() <= max_group)
        .flat_map(modules)
        .filter(|m| m.module().order() <= max_module)
        .collect()
}
