use std::fmt;

use fixedbitset::FixedBitSet;
use rustc_hash::FxHashMap;
use serde::Serialize;

use super::classes::normalizer;
use super::element::Element;
use super::group::{Group, Subgroup, DEFAULT_CAP};
use super::small::SmallGroup;
use crate::{Error, Result};

/// Largest 2-group whose full subgroup lattice is enumerated.
pub const SUBGROUP_LIMIT: usize = 1 << 9;
/// Largest 2-group whose automorphisms are enumerated.
pub const AUT_LIMIT: usize = 1 << 6;
/// Cap on elementary abelian subgroups kept in one enumeration.
pub const VERTEX_CAP: usize = 1_000_000;

fn require_two_group(sg: &SmallGroup, limit: usize) -> Result<()> {
    if !sg.order().is_power_of_two() {
        return Err(Error::Precondition(format!("order {} is not a power of 2", sg.order())));
    }
    if sg.order() > limit {
        return Err(Error::SizeCap(format!("2-group of order {} above {limit}", sg.order())));
    }
    Ok(())
}

/// Every subgroup of a 2-group, sorted by order and then by element list.
///
/// Each subgroup of order `2^(i+1)` contains a normal subgroup of index 2,
/// so the layers are built as `H ∪ Hx` with `x ∈ N(H)`, `x² ∈ H`.
pub fn subgroups(sg: &SmallGroup) -> Result<Vec<Vec<u16>>> {
    require_two_group(sg, SUBGROUP_LIMIT)?;
    let n = sg.order();
    let mut layer: Vec<(Vec<u16>, Vec<u16>)> = vec![(vec![sg.identity()], Vec::new())];
    let mut all: Vec<Vec<u16>> = vec![vec![sg.identity()]];
    while layer[0].0.len() < n {
        let mut next: FxHashMap<Vec<u16>, Vec<u16>> = FxHashMap::default();
        for (h, gens) in &layer {
            let hb = sg.bits(h);
            let mut covered = hb.clone();
            for x in 0..n as u16 {
                if covered.contains(x as usize) {
                    continue;
                }
                for &y in h {
                    covered.insert(sg.mul(y, x) as usize);
                }
                if !hb.contains(sg.mul(x, x) as usize) {
                    continue;
                }
                if !gens.iter().all(|&g| hb.contains(sg.conj(g, x) as usize)) {
                    continue;
                }
                let mut k: Vec<u16> = h.iter().copied().chain(h.iter().map(|&y| sg.mul(y, x))).collect();
                k.sort_unstable();
                next.entry(k).or_insert_with(|| {
                    let mut g2 = gens.clone();
                    g2.push(x);
                    g2
                });
            }
        }
        let mut next: Vec<(Vec<u16>, Vec<u16>)> = next.into_iter().collect();
        next.sort_unstable();
        all.extend(next.iter().map(|(k, _)| k.clone()));
        layer = next;
    }
    Ok(all)
}

/// An elementary abelian subgroup with a basis.
#[derive(Clone, Debug)]
pub struct EaSubgroup {
    pub elements: Vec<u16>,
    pub basis: Vec<u16>,
}

impl EaSubgroup {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

/// Elementary abelian subgroups of rank at least `min_rank`, plus the
/// covering relation between them (index-2 containments).
#[derive(Clone, Debug, Default)]
pub struct EaLattice {
    pub subgroups: Vec<EaSubgroup>,
    /// `(smaller, larger)` index pairs with `smaller < larger` of index 2.
    pub covers: Vec<(usize, usize)>,
}

pub fn involutions(sg: &SmallGroup) -> Vec<u16> {
    (0..sg.order() as u16).filter(|&x| sg.element_order(x) == 2).collect()
}

/// Builds the EA subgroups rank by rank from commuting involutions.
pub fn elementary_abelian(sg: &SmallGroup, min_rank: usize) -> Result<EaLattice> {
    if !sg.order().is_power_of_two() {
        return Err(Error::Precondition("not a 2-group".into()));
    }
    if sg.order() > SMALL_LIMIT_EA {
        return Err(Error::SizeCap(format!("2-group of order {} above {SMALL_LIMIT_EA}", sg.order())));
    }
    let invs = involutions(sg);
    let mut out = EaLattice::default();
    let mut layer: Vec<EaSubgroup> = vec![EaSubgroup {
        elements: vec![sg.identity()],
        basis: Vec::new(),
    }];
    let mut layer_ids: Vec<usize> = Vec::new();
    if min_rank == 0 {
        out.subgroups.push(layer[0].clone());
        layer_ids.push(0);
    }
    let mut rank = 0;
    while !layer.is_empty() {
        let mut next: Vec<EaSubgroup> = Vec::new();
        let mut index: FxHashMap<Vec<u16>, usize> = FxHashMap::default();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (pos, e) in layer.iter().enumerate() {
            let eb = sg.bits(&e.elements);
            let mut covered = eb.clone();
            for &t in &invs {
                if covered.contains(t as usize) {
                    continue;
                }
                if !e.basis.iter().all(|&b| sg.commutes(b, t)) {
                    continue;
                }
                let coset: Vec<u16> = e.elements.iter().map(|&y| sg.mul(y, t)).collect();
                for &y in &coset {
                    covered.insert(y as usize);
                }
                let mut f: Vec<u16> = e.elements.iter().copied().chain(coset).collect();
                f.sort_unstable();
                let id = match index.get(&f) {
                    Some(&id) => id,
                    None => {
                        let id = next.len();
                        let mut basis = e.basis.clone();
                        basis.push(t);
                        index.insert(f.clone(), id);
                        next.push(EaSubgroup { elements: f, basis });
                        if out.subgroups.len() + next.len() > VERTEX_CAP {
                            return Err(Error::CapExceeded {
                                found: out.subgroups.len() + next.len(),
                                cap: VERTEX_CAP,
                            });
                        }
                        id
                    }
                };
                if rank >= min_rank {
                    edges.push((pos, id));
                }
            }
        }
        rank += 1;
        if rank >= min_rank {
            let base = out.subgroups.len();
            if rank > min_rank {
                for (a, b) in edges {
                    out.covers.push((layer_ids[a], base + b));
                }
            }
            layer_ids = (base..base + next.len()).collect();
            out.subgroups.extend(next.iter().cloned());
        }
        layer = next;
    }
    Ok(out)
}

/// EA enumeration accepts 2-groups up to this order.
pub const SMALL_LIMIT_EA: usize = 1 << 13;

/// `m(P)`: the largest rank of an elementary abelian subgroup.
pub fn rank(sg: &SmallGroup) -> Result<usize> {
    let lat = elementary_abelian(sg, 0)?;
    Ok(lat.subgroups.iter().map(|e| e.rank()).max().unwrap_or(0))
}

/// `Φ(H)` for a 2-group `H` (sorted elements): generated by the squares.
pub fn frattini(sg: &SmallGroup, h: &[u16]) -> Vec<u16> {
    let mut squares: Vec<u16> = h.iter().map(|&x| sg.mul(x, x)).collect();
    squares.sort_unstable();
    squares.dedup();
    sg.closure(&squares)
}

/// A minimal generating set of the 2-group `H`, chosen greedily in index
/// order modulo the Frattini subgroup.
pub fn minimal_generators(sg: &SmallGroup, h: &[u16]) -> Vec<u16> {
    let phi = frattini(sg, h);
    let mut gens: Vec<u16> = Vec::new();
    let mut have = sg.bits(&phi);
    let phi_gens = sg.generators(&phi);
    for &x in h {
        if have.contains(x as usize) {
            continue;
        }
        gens.push(x);
        let mut all = phi_gens.clone();
        all.extend_from_slice(&gens);
        let c = sg.closure(&all);
        if c.len() == h.len() {
            break;
        }
        have = sg.bits(&c);
    }
    gens
}

/// Expresses every element of `<gens>` as a word, for evaluating maps
/// given by generator images.
pub struct Words {
    pub gens: Vec<u16>,
    /// Elements in BFS order.
    pub elems: Vec<u16>,
    parent: Vec<(u32, u32)>,
    pos: FxHashMap<u16, u32>,
}

impl Words {
    pub fn new(sg: &SmallGroup, gens: &[u16]) -> Words {
        let mut elems = vec![sg.identity()];
        let mut parent = vec![(u32::MAX, u32::MAX)];
        let mut pos: FxHashMap<u16, u32> = FxHashMap::default();
        pos.insert(sg.identity(), 0);
        let mut i = 0;
        while i < elems.len() {
            for (j, &g) in gens.iter().enumerate() {
                let y = sg.mul(elems[i], g);
                if let std::collections::hash_map::Entry::Vacant(v) = pos.entry(y) {
                    v.insert(elems.len() as u32);
                    elems.push(y);
                    parent.push((i as u32, j as u32));
                }
            }
            i += 1;
        }
        Words {
            gens: gens.to_vec(),
            elems,
            parent,
            pos,
        }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Images of `self.elems` under the map sending `gens[i]` to
    /// `images[i]`, evaluated along the BFS tree. No consistency check.
    pub fn evaluate_unchecked(&self, target: &SmallGroup, images: &[u16]) -> Vec<u16> {
        let mut out = Vec::with_capacity(self.elems.len());
        out.push(target.identity());
        for i in 1..self.elems.len() {
            let (p, g) = self.parent[i];
            out.push(target.mul(out[p as usize], images[g as usize]));
        }
        out
    }

    /// Like [`Words::evaluate_unchecked`], but returns `None` unless the
    /// map is a homomorphism.
    pub fn evaluate(&self, source: &SmallGroup, target: &SmallGroup, images: &[u16]) -> Option<Vec<u16>> {
        let out = self.evaluate_unchecked(target, images);
        for (i, &e) in self.elems.iter().enumerate() {
            for (j, &g) in self.gens.iter().enumerate() {
                let k = self.pos[&source.mul(e, g)] as usize;
                if out[k] != target.mul(out[i], images[j]) {
                    return None;
                }
            }
        }
        Some(out)
    }
}

/// A homomorphism given by generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomomorphismTable {
    pub gens: Vec<Element>,
    pub images: Vec<Element>,
}

/// All automorphisms of a 2-group of order at most 64, as permutations of
/// the element indices (`perm[x]` is the image of `x`).
pub fn automorphisms(sg: &SmallGroup) -> Result<Vec<Vec<u16>>> {
    require_two_group(sg, AUT_LIMIT)?;
    let all = sg.all();
    let gens = minimal_generators(sg, &all);
    let words = Words::new(sg, &gens);
    let n = sg.order();
    let cands: Vec<Vec<u16>> = gens
        .iter()
        .map(|&g| (0..n as u16).filter(|&h| sg.element_order(h) == sg.element_order(g)).collect())
        .collect();
    let mut out = Vec::new();
    let mut chosen: Vec<u16> = Vec::new();
    let mut leaves = 0usize;
    search_images(sg, sg, &gens, &cands, &mut chosen, &mut |images| {
        leaves += 1;
        if leaves > 5_000_000 {
            return Err(Error::SizeCap("automorphism search exceeded 5e6 candidates".into()));
        }
        if let Some(vals) = words.evaluate(sg, sg, images) {
            let mut perm = vec![u16::MAX; n];
            for (e, v) in words.elems.iter().zip(vals) {
                perm[*e as usize] = v;
            }
            let mut seen = FixedBitSet::with_capacity(n);
            for &v in &perm {
                seen.insert(v as usize);
            }
            if seen.count_ones(..) == n {
                out.push(perm);
            }
        }
        Ok(())
    })?;
    out.sort_unstable();
    Ok(out)
}

/// Backtracking over generator images with pairwise product-order pruning.
pub(crate) fn search_images<F>(
    src: &SmallGroup,
    dst: &SmallGroup,
    gens: &[u16],
    cands: &[Vec<u16>],
    chosen: &mut Vec<u16>,
    leaf: &mut F,
) -> Result<bool>
where
    F: FnMut(&[u16]) -> Result<()>,
{
    let d = chosen.len();
    if d == gens.len() {
        leaf(chosen)?;
        return Ok(true);
    }
    for &h in &cands[d] {
        let ok = (0..d).all(|a| {
            src.element_order(src.mul(gens[a], gens[d])) == dst.element_order(dst.mul(chosen[a], h))
                && src.commutes(gens[a], gens[d]) == dst.commutes(chosen[a], h)
        });
        if !ok {
            continue;
        }
        chosen.push(h);
        search_images(src, dst, gens, cands, chosen, leaf)?;
        chosen.pop();
    }
    Ok(true)
}

/// Isomorphism type of a 2-group, established by witness generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum TwoGroupType {
    Cyclic(usize),
    ElementaryAbelian(usize),
    Dihedral(usize),
    GeneralizedQuaternion(usize),
    Semidihedral(usize),
    /// `C_{2^k} wr C_2`, stored with `k`.
    Wreathed(u32),
    Other(usize),
}

impl TwoGroupType {
    pub fn order(&self) -> usize {
        match *self {
            TwoGroupType::Cyclic(n)
            | TwoGroupType::Dihedral(n)
            | TwoGroupType::GeneralizedQuaternion(n)
            | TwoGroupType::Semidihedral(n)
            | TwoGroupType::Other(n) => n,
            TwoGroupType::ElementaryAbelian(r) => 1 << r,
            TwoGroupType::Wreathed(k) => 1 << (2 * k + 1),
        }
    }
}

impl fmt::Display for TwoGroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwoGroupType::Cyclic(n) => write!(f, "cyclic({n})"),
            TwoGroupType::ElementaryAbelian(r) => write!(f, "elementary-abelian({})", 1usize << r),
            TwoGroupType::Dihedral(n) => write!(f, "dihedral({n})"),
            TwoGroupType::GeneralizedQuaternion(n) => write!(f, "generalized-quaternion({n})"),
            TwoGroupType::Semidihedral(n) => write!(f, "semidihedral({n})"),
            TwoGroupType::Wreathed(k) => write!(f, "wreathed(C{}wrC2,{})", 1u32 << k, 1u32 << (2 * k + 1)),
            TwoGroupType::Other(n) => write!(f, "other({n})"),
        }
    }
}

/// A recognised type together with the generators that satisfy its
/// defining relations.
#[derive(Clone, Debug)]
pub struct Recognition {
    pub tag: TwoGroupType,
    pub witnesses: Vec<u16>,
}

pub fn recognize(sg: &SmallGroup) -> Result<Recognition> {
    let n = sg.order();
    if !n.is_power_of_two() {
        return Err(Error::Precondition("not a 2-group".into()));
    }
    let m = n.trailing_zeros();
    let rec = |tag, witnesses| Ok(Recognition { tag, witnesses });
    if let Some(a) = (0..n as u16).find(|&x| sg.element_order(x) as usize == n) {
        return rec(TwoGroupType::Cyclic(n), vec![a]);
    }
    let all = sg.all();
    if all.iter().all(|&x| sg.element_order(x) <= 2) {
        return rec(TwoGroupType::ElementaryAbelian(m as usize), minimal_generators(sg, &all));
    }
    if m >= 3 {
        let half = n / 2;
        let maxcyc: Vec<u16> = (0..n as u16).filter(|&x| sg.element_order(x) as usize == half).collect();
        for &a in &maxcyc {
            let cyc = sg.closure(&[a]);
            let cb = sg.bits(&cyc);
            let a_inv = sg.inv(a);
            let z = sg.pow(a, (half / 2) as u64);
            let sd = sg.pow(a, (half / 2 - 1) as u64);
            for b in 0..n as u16 {
                if cb.contains(b as usize) {
                    continue;
                }
                let ab = sg.conj(a, b);
                let b2 = sg.mul(b, b);
                if ab == a_inv && b2 == sg.identity() {
                    return rec(TwoGroupType::Dihedral(n), vec![a, b]);
                }
                if ab == a_inv && b2 == z {
                    return rec(TwoGroupType::GeneralizedQuaternion(n), vec![a, b]);
                }
                if m >= 4 && ab == sd && b2 == sg.identity() {
                    return rec(TwoGroupType::Semidihedral(n), vec![a, b]);
                }
            }
        }
    }
    if m >= 5 && m % 2 == 1 {
        let k = (m - 1) / 2;
        let ord = 1u32 << k;
        for x in (0..n as u16).filter(|&x| sg.element_order(x) == ord) {
            for t in (0..n as u16).filter(|&t| sg.element_order(t) == 2) {
                let y = sg.conj(x, t);
                if !sg.commutes(x, y) {
                    continue;
                }
                let cx = sg.closure(&[x]);
                let cy = sg.bits(&sg.closure(&[y]));
                if cx.iter().any(|&e| e != sg.identity() && cy.contains(e as usize)) {
                    continue;
                }
                let base = sg.closure(&[x, y]);
                if base.binary_search(&t).is_err() {
                    return rec(TwoGroupType::Wreathed(k), vec![x, y, t]);
                }
            }
        }
    }
    rec(TwoGroupType::Other(n), Vec::new())
}

/// Subgroups of a 2-group [`Subgroup`], in the same order as [`subgroups`].
pub fn subgroups_of_2_group(p: &Subgroup) -> Result<Vec<Subgroup>> {
    let sg = SmallGroup::from_subgroup(p)?;
    let amb = p.ambient();
    Ok(subgroups(&sg)?
        .into_iter()
        .map(|s| {
            let elements: Vec<Element> = s.iter().map(|&i| sg.element(i).unwrap().clone()).collect();
            let gens = minimal_generators(&sg, &s).iter().map(|&i| sg.element(i).unwrap().clone()).collect();
            Subgroup::from_parts(amb.clone(), gens, elements)
        })
        .collect())
}

fn ea_to_subgroups(p: &Subgroup, sg: &SmallGroup, lat: &EaLattice) -> Vec<Subgroup> {
    let amb = p.ambient();
    lat.subgroups
        .iter()
        .map(|e| {
            let elements: Vec<Element> = e.elements.iter().map(|&i| sg.element(i).unwrap().clone()).collect();
            let gens = e.basis.iter().map(|&i| sg.element(i).unwrap().clone()).collect();
            Subgroup::from_parts(amb.clone(), gens, elements)
        })
        .collect()
}

pub fn elementary_abelian_subgroups(p: &Subgroup, min_rank: usize) -> Result<Vec<Subgroup>> {
    let sg = SmallGroup::from_subgroup(p)?;
    let lat = elementary_abelian(&sg, min_rank)?;
    Ok(ea_to_subgroups(p, &sg, &lat))
}

pub fn two_rank(p: &Subgroup) -> Result<usize> {
    rank(&SmallGroup::from_subgroup(p)?)
}

pub fn recognize_2_group(p: &Subgroup) -> Result<TwoGroupType> {
    Ok(recognize(&SmallGroup::from_subgroup(p)?)?.tag)
}

/// `Aut(P)` as a permutation group on the elements of `P` (0-based, in
/// canonical order), together with the generator-image tables.
pub struct AutomorphismGroup {
    pub group: Group,
    pub tables: Vec<HomomorphismTable>,
}

pub fn automorphisms_of_2_group(p: &Subgroup) -> Result<AutomorphismGroup> {
    let sg = SmallGroup::from_subgroup(p)?;
    let auts = automorphisms(&sg)?;
    let gens_idx = minimal_generators(&sg, &sg.all());
    let gens: Vec<Element> = gens_idx.iter().map(|&i| sg.element(i).unwrap().clone()).collect();
    let tables = auts
        .iter()
        .map(|perm| HomomorphismTable {
            gens: gens.clone(),
            images: gens_idx.iter().map(|&i| sg.element(perm[i as usize]).unwrap().clone()).collect(),
        })
        .collect();
    let amb = super::element::Ambient::permutations(sg.order());
    let perms: Vec<Element> = auts
        .iter()
        .map(|perm| {
            let images: Vec<usize> = perm.iter().map(|&v| v as usize).collect();
            Element::Perm(super::element::Perm::from_images(&images).expect("automorphism is bijective"))
        })
        .collect();
    let group = Subgroup::from_closed_elements(&amb, perms).to_group("Aut");
    Ok(AutomorphismGroup { group, tables })
}

/// A Sylow 2-subgroup of an enumerated group, grown one step at a time
/// inside normalizers.
pub fn sylow2_search(g: &Group) -> Result<Subgroup> {
    let order = g.order()?;
    let target = 1u128 << order.trailing_zeros();
    let amb = g.ambient();
    let e = g.enumerate()?;
    let mut p = Subgroup::trivial(amb);
    while (p.order() as u128) < target {
        let n = normalizer(g, &p)?;
        let x = n
            .elements()
            .iter()
            .find(|x| !p.contains(x) && p.contains(&amb.mul(x, x)))
            .cloned();
        let Some(x) = x else {
            return Err(Error::Internal("Sylow search stalled".into()));
        };
        let ord = amb.order(&x);
        let x = amb.pow(&x, ord >> ord.trailing_zeros());
        let mut gens = p.gens().to_vec();
        gens.push(x);
        p = Subgroup::generated(amb, &gens, DEFAULT_CAP)?;
    }
    let _ = e;
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::element::Ambient;

    fn perm_sub(degree: usize, gens: &[&[&[usize]]]) -> Subgroup {
        let amb = Ambient::permutations(degree);
        let gens: Vec<Element> = gens.iter().map(|c| amb.perm(c).unwrap()).collect();
        Subgroup::generated(&amb, &gens, 100_000).unwrap()
    }

    fn d8() -> Subgroup {
        perm_sub(4, &[&[&[1, 2, 3, 4]], &[&[1, 3]]])
    }

    fn q8() -> Subgroup {
        // regular representation of Q8 on 8 points
        perm_sub(8, &[&[&[1, 2, 4, 7], &[3, 6, 8, 5]], &[&[1, 3, 4, 8], &[2, 5, 7, 6]]])
    }

    fn e16() -> Subgroup {
        perm_sub(8, &[&[&[1, 2]], &[&[3, 4]], &[&[5, 6]], &[&[7, 8]]])
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(q8().order(), 8);
        assert_eq!(subgroups_of_2_group(&q8()).unwrap().len(), 6);
        assert_eq!(subgroups_of_2_group(&d8()).unwrap().len(), 10);
        let v4 = perm_sub(4, &[&[&[1, 2]], &[&[3, 4]]]);
        assert_eq!(subgroups_of_2_group(&v4).unwrap().len(), 5);
    }

    #[test]
    fn ea_counts_and_ranks() {
        let big = elementary_abelian_subgroups(&e16(), 3).unwrap();
        assert_eq!(big.len(), 16);
        assert_eq!(big.iter().filter(|e| e.order() == 8).count(), 15);
        assert!(elementary_abelian_subgroups(&q8(), 2).unwrap().is_empty());
        assert_eq!(elementary_abelian_subgroups(&d8(), 2).unwrap().len(), 2);
        assert_eq!(two_rank(&d8()).unwrap(), 2);
        assert_eq!(two_rank(&q8()).unwrap(), 1);
        assert_eq!(two_rank(&e16()).unwrap(), 4);
    }

    #[test]
    fn automorphism_orders() {
        assert_eq!(automorphisms_of_2_group(&q8()).unwrap().group.order().unwrap(), 24);
        let c4 = perm_sub(4, &[&[&[1, 2, 3, 4]]]);
        assert_eq!(automorphisms_of_2_group(&c4).unwrap().group.order().unwrap(), 2);
        let v4 = perm_sub(4, &[&[&[1, 2]], &[&[3, 4]]]);
        assert_eq!(automorphisms_of_2_group(&v4).unwrap().group.order().unwrap(), 6);
        assert_eq!(automorphisms_of_2_group(&d8()).unwrap().group.order().unwrap(), 8);
    }

    #[test]
    fn recognition_tags() {
        assert_eq!(recognize_2_group(&d8()).unwrap(), TwoGroupType::Dihedral(8));
        assert_eq!(recognize_2_group(&q8()).unwrap(), TwoGroupType::GeneralizedQuaternion(8));
        assert_eq!(recognize_2_group(&e16()).unwrap(), TwoGroupType::ElementaryAbelian(4));
        let c4 = perm_sub(4, &[&[&[1, 2, 3, 4]]]);
        assert_eq!(recognize_2_group(&c4).unwrap(), TwoGroupType::Cyclic(4));
        let triv = perm_sub(2, &[]);
        assert_eq!(recognize_2_group(&triv).unwrap(), TwoGroupType::Cyclic(1));
        // C4 wr C2 on 8 points
        let w = perm_sub(8, &[&[&[1, 2, 3, 4]], &[&[1, 5], &[2, 6], &[3, 7], &[4, 8]]]);
        assert_eq!(recognize_2_group(&w).unwrap(), TwoGroupType::Wreathed(2));
    }

    #[test]
    fn sylow_of_s4_is_dihedral() {
        let amb = Ambient::permutations(4);
        let g = crate::grp::group::generate(
            amb.clone(),
            &[amb.perm(&[&[1, 2, 3, 4]]).unwrap(), amb.perm(&[&[1, 2]]).unwrap()],
            100,
        )
        .unwrap();
        let s = sylow2_search(&g).unwrap();
        assert_eq!(recognize_2_group(&s).unwrap(), TwoGroupType::Dihedral(8));
    }
}
