use std::sync::Arc;

use smallvec::SmallVec;

use super::element::{Ambient, Element};
use super::group::{Group, Subgroup};
use super::orbit::Orbit;
use crate::{Error, Result};

/// One conjugacy class of an enumerated group.
#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    /// Least element of the class in canonical order.
    pub rep: Element,
    /// Enumeration indices of the members.
    pub members: Vec<u32>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// The class partition of an enumerated group. Classes are listed in
/// canonical order of their representatives.
#[derive(Clone, Debug)]
pub struct ClassData {
    pub classes: Vec<ConjugacyClass>,
    /// Class number of each enumeration index.
    pub class_of: Vec<u32>,
}

pub(crate) fn gen_inverses(amb: &Ambient, gens: &[Element]) -> Vec<Element> {
    gens.iter().map(|g| amb.inv_raw(g)).collect()
}

/// Conjugacy classes, computed once per group as orbits of the generator
/// conjugation action on the enumeration.
pub fn conjugacy_classes(g: &Group) -> Result<Arc<ClassData>> {
    if let Some(c) = g.classes.get() {
        return Ok(c.clone());
    }
    let e = g.enumeration()?;
    let amb = g.ambient();
    let gens = g.gens();
    let ginv = gen_inverses(amb, gens);
    let n = e.len();
    let mut class_of = vec![u32::MAX; n];
    let mut raw: Vec<Vec<u32>> = Vec::new();
    for start in 0..n {
        if class_of[start] != u32::MAX {
            continue;
        }
        let id = raw.len() as u32;
        class_of[start] = id;
        let mut members = vec![start as u32];
        let mut i = 0;
        while i < members.len() {
            let x = e.get(members[i] as usize);
            for (gg, gi) in gens.iter().zip(&ginv) {
                let y = amb.conj_with(x, gg, gi);
                let k = e
                    .index_of(&y)
                    .ok_or_else(|| Error::Internal("enumeration not closed under conjugation".into()))?;
                if class_of[k] == u32::MAX {
                    class_of[k] = id;
                    members.push(k as u32);
                }
            }
            i += 1;
        }
        raw.push(members);
    }
    let mut classes: Vec<ConjugacyClass> = raw
        .into_iter()
        .map(|mut members| {
            members.sort_unstable();
            let rep = members.iter().map(|&i| e.get(i as usize)).min().unwrap().clone();
            ConjugacyClass { rep, members }
        })
        .collect();
    classes.sort_by(|a, b| a.rep.cmp(&b.rep));
    for (id, c) in classes.iter().enumerate() {
        for &m in &c.members {
            class_of[m as usize] = id as u32;
        }
    }
    let data = Arc::new(ClassData { classes, class_of });
    let _ = g.classes.set(data.clone());
    Ok(data)
}

fn ensure_contained(g: &Group, xs: &[Element]) -> Result<()> {
    if let Ok(e) = g.enumeration() {
        if let Some(x) = xs.iter().find(|x| !e.contains(x)) {
            return Err(Error::NotContained(format!("{x:?} is not in {}", g.descriptor())));
        }
    }
    Ok(())
}

fn commutes_all(amb: &Ambient, g: &Element, xs: &[Element]) -> bool {
    xs.iter().all(|x| amb.mul(x, g) == amb.mul(g, x))
}

/// `C_G(X)` for a tuple of elements: a full scan when `G` is enumerated,
/// otherwise an orbit-stabilizer computation.
pub fn centralizer(g: &Group, xs: &[Element]) -> Result<Subgroup> {
    ensure_contained(g, xs)?;
    match g.enumeration() {
        Ok(e) => {
            let amb = g.ambient();
            let elements: Vec<Element> = e.iter().filter(|y| commutes_all(amb, y, xs)).cloned().collect();
            Ok(Subgroup::from_closed_elements(amb, elements))
        }
        Err(_) => centralizer_by_orbit(g, xs),
    }
}

type Tuple = SmallVec<[Element; 4]>;

fn conj_tuple(amb: &Ambient, t: &Tuple, g: &Element, gi: &Element) -> Tuple {
    t.iter().map(|x| amb.conj_with(x, g, gi)).collect()
}

/// `C_G(X)` as the stabilizer of the tuple `X` under conjugation.
pub fn centralizer_by_orbit(g: &Group, xs: &[Element]) -> Result<Subgroup> {
    let amb = g.ambient();
    let gens = g.gens();
    let ginv = gen_inverses(amb, gens);
    let root: Tuple = xs.iter().cloned().collect();
    let act = |t: &Tuple, j: usize| conj_tuple(amb, t, &gens[j], &ginv[j]);
    let orb = Orbit::compute(root, gens, act, super::group::DEFAULT_CAP)?;
    let target = g.order_hint().or_else(|| g.enumeration().ok().map(|e| e.len() as u128));
    let target = target.map(|o| o / orb.len() as u128);
    orb.stabilizer(amb, gens, act, target)
}

pub fn centralizer_of_subgroup(g: &Group, x: &Subgroup) -> Result<Subgroup> {
    ensure_contained(g, x.elements())?;
    centralizer(g, x.gens())
}

/// `N_G(X)`: a scan over the enumeration when present, otherwise the
/// stabilizer of the element set of `X`.
pub fn normalizer(g: &Group, x: &Subgroup) -> Result<Subgroup> {
    ensure_contained(g, x.elements())?;
    let amb = g.ambient();
    match g.enumeration() {
        Ok(e) => {
            let elements: Vec<Element> = e
                .iter()
                .filter(|y| {
                    let yi = amb.inv_raw(y);
                    x.gens().iter().all(|h| x.contains(&amb.conj_with(h, y, &yi)))
                })
                .cloned()
                .collect();
            Ok(Subgroup::from_closed_elements(amb, elements))
        }
        Err(_) => normalizer_by_orbit(g, x),
    }
}

pub fn normalizer_by_orbit(g: &Group, x: &Subgroup) -> Result<Subgroup> {
    let amb = g.ambient();
    let gens = g.gens();
    let ginv = gen_inverses(amb, gens);
    let act = |s: &Vec<Element>, j: usize| {
        let mut v: Vec<Element> = s.iter().map(|y| amb.conj_with(y, &gens[j], &ginv[j])).collect();
        v.sort_unstable();
        v
    };
    let orb = Orbit::compute(x.elements().to_vec(), gens, act, super::group::DEFAULT_CAP)?;
    let target = g
        .order_hint()
        .or_else(|| g.enumeration().ok().map(|e| e.len() as u128))
        .map(|o| o / orb.len() as u128);
    orb.stabilizer(amb, gens, act, target)
}

/// Result of a transporter search: `src^g = dst` exactly for `g` in
/// `centralizer * witness`.
#[derive(Clone, Debug)]
pub struct Transport {
    pub witness: Element,
    pub centralizer: Subgroup,
}

impl Transport {
    /// Every solution, sorted.
    pub fn solutions(&self) -> Vec<Element> {
        let amb = self.centralizer.ambient();
        let mut v: Vec<Element> =
            self.centralizer.elements().iter().map(|c| amb.mul(c, &self.witness)).collect();
        v.sort_unstable();
        v
    }
}

/// Finds `g` with `src[i]^g = dst[i]` for all `i`. The witness is the
/// identity when the identity solves, else the least solution.
pub fn transporter(g: &Group, src: &[Element], dst: &[Element]) -> Result<Option<Transport>> {
    if src.len() != dst.len() {
        return Err(Error::Precondition("tuples of different lengths".into()));
    }
    ensure_contained(g, src)?;
    ensure_contained(g, dst)?;
    let amb = g.ambient();
    let gens = g.gens();
    let ginv = gen_inverses(amb, gens);
    let root: Tuple = src.iter().cloned().collect();
    let target: Tuple = dst.iter().cloned().collect();
    let act = |t: &Tuple, j: usize| conj_tuple(amb, t, &gens[j], &ginv[j]);
    let orb = Orbit::compute(root, gens, act, super::group::DEFAULT_CAP)?;
    let Some(k) = orb.position(&target) else {
        return Ok(None);
    };
    let u = orb.transversal(amb, gens, k);
    let cent = centralizer(g, src)?;
    let witness = if src == dst {
        amb.identity()
    } else {
        cent.elements().iter().map(|c| amb.mul(c, &u)).min().unwrap()
    };
    Ok(Some(Transport {
        witness,
        centralizer: cent,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::group::generate;

    fn s4() -> Group {
        let amb = Ambient::permutations(4);
        let a = amb.perm(&[&[1, 2, 3, 4]]).unwrap();
        let b = amb.perm(&[&[1, 2]]).unwrap();
        generate(amb, &[a, b], 100).unwrap()
    }

    #[test]
    fn a4_class_sizes() {
        let amb = Ambient::permutations(4);
        let a = amb.perm(&[&[1, 2, 3]]).unwrap();
        let b = amb.perm(&[&[2, 3, 4]]).unwrap();
        let g = generate(amb, &[a, b], 100).unwrap();
        let c = conjugacy_classes(&g).unwrap();
        let mut sizes: Vec<usize> = c.classes.iter().map(|c| c.size()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 4, 4]);
    }

    #[test]
    fn normalizer_of_four_cycle_in_s4() {
        let g = s4();
        let amb = g.ambient().clone();
        let c4 = Subgroup::generated(&amb, &[amb.perm(&[&[1, 2, 3, 4]]).unwrap()], 10).unwrap();
        assert_eq!(normalizer(&g, &c4).unwrap().order(), 8);
        let h = Group::new(amb.clone(), g.gens().to_vec(), "S4").unwrap().with_order(24);
        assert_eq!(normalizer_by_orbit(&h, &c4).unwrap().order(), 8);
    }

    #[test]
    fn orbit_centralizer_matches_scan() {
        let g = s4();
        let amb = g.ambient().clone();
        let lazy = Group::new(amb.clone(), g.gens().to_vec(), "S4").unwrap();
        for x in g.enumeration().unwrap().iter() {
            let a = centralizer(&g, std::slice::from_ref(x)).unwrap();
            let b = centralizer_by_orbit(&lazy, std::slice::from_ref(x)).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn transporter_identity_witness() {
        let g = s4();
        let amb = g.ambient().clone();
        let x = amb.perm(&[&[1, 2]]).unwrap();
        let t = transporter(&g, &[x.clone()], &[x.clone()]).unwrap().unwrap();
        assert_eq!(t.witness, amb.identity());
        assert_eq!(t.centralizer.order(), 4);
        let y = amb.perm(&[&[1, 2, 3]]).unwrap();
        assert!(transporter(&g, &[x], &[y]).unwrap().is_none());
    }
}
