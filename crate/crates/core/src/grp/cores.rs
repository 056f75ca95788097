use std::collections::BTreeMap;
use std::sync::Arc;

use rustc_hash::FxHashSet;

use super::classes::{conjugacy_classes, gen_inverses};
use super::element::{Ambient, Element};
use super::group::{bfs_closure, Group, Subgroup, DEFAULT_CAP};
use crate::{Error, Result};

/// Upper bound on group orders for the core computations.
pub const CORE_ORDER_CAP: u128 = 1_000_000;

fn sorted(set: impl IntoIterator<Item = Element>) -> Vec<Element> {
    let mut v: Vec<Element> = set.into_iter().collect();
    v.sort_unstable();
    v
}

/// Normal closure of `xs` in `G`; `None` once the closure exceeds `cap`
/// elements.
pub(crate) fn normal_closure_capped(g: &Group, xs: &[Element], cap: usize) -> Result<Option<Subgroup>> {
    let amb = g.ambient();
    let ginv = gen_inverses(amb, g.gens());
    let mut gens: Vec<Element> = xs.iter().filter(|x| !amb.is_identity(x)).cloned().collect();
    gens.sort_unstable();
    gens.dedup();
    let mut have = match bfs_closure(amb, &gens, cap) {
        Ok(h) => h,
        Err(Error::CapExceeded { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    loop {
        let mut added = false;
        let mut i = 0;
        while i < gens.len() {
            for (gg, gi) in g.gens().iter().zip(&ginv) {
                let c = amb.conj_with(&gens[i], gg, gi);
                if !have.contains(&c) {
                    gens.push(c);
                    have = match bfs_closure(amb, &gens, cap) {
                        Ok(h) => h,
                        Err(Error::CapExceeded { .. }) => return Ok(None),
                        Err(e) => return Err(e),
                    };
                    added = true;
                }
            }
            i += 1;
        }
        if !added {
            break;
        }
    }
    Ok(Some(Subgroup::from_parts(amb.clone(), gens, sorted(have))))
}

pub fn normal_closure(g: &Group, xs: &[Element]) -> Result<Subgroup> {
    normal_closure_capped(g, xs, DEFAULT_CAP)?
        .ok_or_else(|| Error::Internal("normal closure above the enumeration cap".into()))
}

pub fn is_normal(g: &Group, h: &Subgroup) -> bool {
    let amb = g.ambient();
    g.gens().iter().all(|x| {
        let xi = amb.inv_raw(x);
        h.gens().iter().all(|y| h.contains(&amb.conj_with(y, x, &xi)))
    })
}

pub fn derived_subgroup(g: &Group) -> Result<Subgroup> {
    let amb = g.ambient();
    let gens = g.gens();
    let mut comms = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            comms.push(amb.commutator(a, b));
        }
    }
    normal_closure(g, &comms)
}

pub fn center(g: &Group) -> Result<Subgroup> {
    let e = g.enumerate()?;
    let amb = g.ambient();
    let elements: Vec<Element> = e
        .iter()
        .filter(|x| g.gens().iter().all(|y| amb.mul(x, y) == amb.mul(y, x)))
        .cloned()
        .collect();
    Ok(Subgroup::from_closed_elements(amb, elements))
}

fn odd_part(n: u128) -> u128 {
    n >> n.trailing_zeros()
}

fn check_core_size(g: &Group) -> Result<u128> {
    let order = g.order()?;
    if order > CORE_ORDER_CAP {
        return Err(Error::SizeCap(format!(
            "{} has order {order}, above {CORE_ORDER_CAP}",
            g.descriptor()
        )));
    }
    g.enumerate()?;
    Ok(order)
}

/// `O(G)`: the join of all normal closures of odd order. A closure is
/// abandoned as soon as it outgrows the odd part of `|G|`.
pub fn odd_core(g: &Group) -> Result<Subgroup> {
    let order = check_core_size(g)?;
    let amb = g.ambient();
    let bound = odd_part(order) as usize;
    let classes = conjugacy_classes(g)?;
    let mut core = Subgroup::trivial(amb);
    for c in &classes.classes {
        if core.contains(&c.rep) || amb.order(&c.rep) % 2 == 0 {
            continue;
        }
        let Some(n) = normal_closure_capped(g, &[c.rep.clone()], bound)? else {
            continue;
        };
        if n.order() % 2 == 1 {
            core = core.join(&n)?;
        }
    }
    if core.order() % 2 == 0 || !is_normal(g, &core) {
        return Err(Error::Internal("odd core failed verification".into()));
    }
    Ok(core)
}

/// Every normal subgroup, as joins of normal closures of classes; sorted by
/// order then elements.
pub fn normal_subgroups(g: &Group) -> Result<Vec<Subgroup>> {
    check_core_size(g)?;
    let amb = g.ambient();
    let classes = conjugacy_classes(g)?;
    let mut closures: Vec<Subgroup> = Vec::new();
    for c in &classes.classes {
        if amb.is_identity(&c.rep) {
            continue;
        }
        let n = normal_closure(g, &[c.rep.clone()])?;
        if !closures.contains(&n) {
            closures.push(n);
        }
    }
    let mut found: BTreeMap<(usize, Vec<Element>), Subgroup> = BTreeMap::new();
    let triv = Subgroup::trivial(amb);
    found.insert((1, triv.elements().to_vec()), triv.clone());
    let mut frontier = vec![triv];
    while let Some(a) = frontier.pop() {
        for n in &closures {
            if n.is_subgroup_of(&a) {
                continue;
            }
            let j = a.join(n)?;
            let key = (j.order(), j.elements().to_vec());
            if !found.contains_key(&key) {
                found.insert(key, j.clone());
                frontier.push(j);
            }
        }
    }
    Ok(found.into_values().collect())
}

/// `O(G)` by scanning the normal-subgroup lattice; used as a cross-check.
pub fn odd_core_lattice(g: &Group) -> Result<Subgroup> {
    Ok(normal_subgroups(g)?
        .into_iter()
        .filter(|n| n.order() % 2 == 1)
        .max_by_key(|n| n.order())
        .expect("trivial subgroup is odd"))
}

/// `Z*(G)`: elements central modulo `O(G)`.
pub fn z_star(g: &Group) -> Result<Subgroup> {
    let o = odd_core(g)?;
    let amb = g.ambient();
    let e = g.enumerate()?;
    let elements: Vec<Element> = e
        .iter()
        .filter(|x| g.gens().iter().all(|y| o.contains(&amb.commutator(x, y))))
        .cloned()
        .collect();
    Ok(Subgroup::from_closed_elements(amb, elements))
}

/// `O^2(G)`: the normal closure of the odd parts of all elements.
pub fn o2(g: &Group) -> Result<Subgroup> {
    let e = g.enumerate()?;
    let amb = g.ambient();
    let mut n = Subgroup::trivial(amb);
    let mut seen: FxHashSet<Element> = FxHashSet::default();
    for x in e.iter() {
        let ord = amb.order(x);
        let odd = amb.pow(x, 1 << ord.trailing_zeros());
        if n.contains(&odd) || !seen.insert(odd.clone()) {
            continue;
        }
        let mut gens = n.gens().to_vec();
        gens.push(odd);
        n = normal_closure(g, &gens)?;
        if n.order() as u128 == g.order()? {
            break;
        }
    }
    Ok(n)
}

/// `G/Z` for central `Z`, realised with canonical coset representatives.
pub fn central_quotient(g: &Group, z: &Subgroup) -> Result<Group> {
    let amb = g.ambient();
    for x in z.elements() {
        if !g.gens().iter().all(|y| amb.mul(x, y) == amb.mul(y, x)) {
            return Err(Error::Precondition(format!("{x:?} is not central")));
        }
    }
    let qamb = amb.with_center(z.elements().to_vec())?;
    let gens: Vec<Element> = g.gens().iter().map(|x| qamb.canon(x.clone())).collect();
    let name = format!("{}/Z{}", g.descriptor(), z.order());
    let mut q = Group::new(qamb, gens, name)?;
    if let Some(o) = g.order_hint().or_else(|| g.enumeration().ok().map(|e| e.len() as u128)) {
        q = q.with_order(o / z.order() as u128);
    }
    Ok(q)
}

/// Image of a subgroup in a quotient ambient.
pub fn image_in(quotient: &Arc<Ambient>, h: &Subgroup) -> Subgroup {
    let elements: Vec<Element> = h.elements().iter().map(|x| quotient.canon(x.clone())).collect();
    let mut elements = sorted(elements);
    elements.dedup();
    let gens = h.gens().iter().map(|x| quotient.canon(x.clone())).collect();
    Subgroup::from_parts(quotient.clone(), gens, elements)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupPredicates {
    pub perfect: bool,
    pub simple: bool,
    pub quasisimple: bool,
}

/// `G/N` is simple iff `N` is proper and the normal closure of `N` and any
/// element outside `N` is all of `G`.
fn simple_modulo(g: &Group, n: &Subgroup) -> Result<bool> {
    let order = g.order()? as usize;
    if n.order() == order {
        return Ok(false);
    }
    let classes = conjugacy_classes(g)?;
    for c in &classes.classes {
        if n.contains(&c.rep) {
            continue;
        }
        let mut gens = n.gens().to_vec();
        gens.push(c.rep.clone());
        if normal_closure(g, &gens)?.order() != order {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn predicates(g: &Group) -> Result<GroupPredicates> {
    check_core_size(g)?;
    let order = g.order()? as usize;
    let perfect = derived_subgroup(g)?.order() == order;
    let triv = Subgroup::trivial(g.ambient());
    let simple = simple_modulo(g, &triv)?;
    let quasisimple = perfect && simple_modulo(g, &center(g)?)?;
    Ok(GroupPredicates {
        perfect,
        simple,
        quasisimple,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::group::generate;

    fn perm_group(degree: usize, gens: &[&[&[usize]]]) -> Group {
        let amb = Ambient::permutations(degree);
        let gens: Vec<Element> = gens.iter().map(|c| amb.perm(c).unwrap()).collect();
        generate(amb, &gens, 1_000_000).unwrap()
    }

    #[test]
    fn cyclic_six_cores() {
        let g = perm_group(5, &[&[&[1, 2, 3], &[4, 5]]]);
        assert_eq!(odd_core(&g).unwrap().order(), 3);
        assert_eq!(z_star(&g).unwrap().order(), 6);
    }

    #[test]
    fn s4_cores_and_predicates() {
        let g = perm_group(4, &[&[&[1, 2, 3, 4]], &[&[1, 2]]]);
        assert_eq!(odd_core(&g).unwrap().order(), 1);
        assert_eq!(odd_core_lattice(&g).unwrap().order(), 1);
        assert_eq!(z_star(&g).unwrap().order(), 1);
        let p = predicates(&g).unwrap();
        assert!(!p.perfect && !p.simple && !p.quasisimple);
        let orders: Vec<usize> = normal_subgroups(&g).unwrap().iter().map(|n| n.order()).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
    }

    #[test]
    fn a5_is_simple() {
        let g = perm_group(5, &[&[&[1, 2, 3]], &[&[1, 2, 3, 4, 5]]]);
        assert_eq!(g.order().unwrap(), 60);
        let p = predicates(&g).unwrap();
        assert!(p.perfect && p.simple && p.quasisimple);
    }

    #[test]
    fn o2_of_s4_is_a4() {
        let g = perm_group(4, &[&[&[1, 2, 3, 4]], &[&[1, 2]]]);
        assert_eq!(o2(&g).unwrap().order(), 12);
    }
}
