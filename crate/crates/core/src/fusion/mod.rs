//! The fusion category `F_S(G)`: element and subgroup classes, morphism
//! sets, standard invariants, factor systems and isomorphism testing.
//!
//! Maps between subgroups of `S` are stored by their full graph. For a
//! subgroup `P` in the class of the representative `R`, `alpha(P)` is a
//! fixed isomorphism `R -> P`, and every morphism `P -> Q` has the form
//! `alpha(P)^-1 . a . alpha(P')` with `a` in `Aut_F(R)` and `P' <= Q`.

use std::collections::BTreeSet;
use std::sync::{Arc, Mutex, OnceLock};

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::grp::classes::gen_inverses;
use crate::grp::orbit::Orbit;
use crate::grp::pgroup::{minimal_generators, subgroups, sylow2_search, Words, SUBGROUP_LIMIT};
use crate::grp::small::SmallGroup;
use crate::grp::{Element, Group, Subgroup, DEFAULT_CAP};
use crate::{Error, Result};

pub mod iso;

pub use iso::{is_isomorphic, verify_map, ElementCode, IsoCertificate, IsoOutcome};

/// Largest `|G|` for which the group-side cross-checks are run.
pub const CROSS_CHECK_LIMIT: u128 = 2_000_000;

type Tuple = SmallVec<[Element; 4]>;

/// A morphism given by its graph: `images[k]` is the image of the `k`-th
/// element (in index order) of the domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub images: Vec<u16>,
    /// A conjugating element of `G` realising the map, when known.
    pub witness: Option<Element>,
}

#[derive(Clone, Debug)]
pub struct MorphismSet {
    pub domain: usize,
    pub codomain: usize,
    /// Sorted by graph.
    pub maps: Vec<Morphism>,
}

impl MorphismSet {
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }
}

/// One F-conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    /// Index of the least member.
    pub rep: usize,
    pub members: Vec<usize>,
    /// `Aut_F(rep)` as permutations of the positions in the rep's element
    /// list; the identity comes first.
    pub automorphisms: Vec<Vec<u16>>,
    pub aut_witnesses: Vec<Option<Element>>,
}

/// Subgroup-level data of a fusion system.
#[derive(Clone, Debug)]
pub struct SubgroupData {
    /// All subgroups of `S` (sorted element lists), by order then elements.
    pub subgroups: Vec<Vec<u16>>,
    index: FxHashMap<Vec<u16>, usize>,
    pub class_of: Vec<usize>,
    pub classes: Vec<SubgroupClass>,
    /// `alpha[P][j]`: image of the `j`-th element of the class rep.
    pub alpha: Vec<Vec<u16>>,
    pub alpha_witness: Vec<Option<Element>>,
}

impl SubgroupData {
    pub fn index_of(&self, elems: &[u16]) -> Option<usize> {
        self.index.get(elems).copied()
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn rep_of(&self, p: usize) -> usize {
        self.classes[self.class_of[p]].rep
    }
}

pub enum Origin {
    /// `F_S(G)` for a concrete group.
    Group { g: Group, sylow: Subgroup },
    /// `F/Q` on `S/Q`.
    Factor {
        parent: Arc<FusionSystem>,
        normal: Vec<u16>,
        coset_of: Vec<u16>,
        coset_reps: Vec<u16>,
    },
}

pub struct FusionSystem {
    label: String,
    s: Arc<SmallGroup>,
    element_class: Vec<u32>,
    classes: Vec<Vec<u16>>,
    origin: Origin,
    subgroup_data: OnceLock<Arc<SubgroupData>>,
    homs: Mutex<FxHashMap<(usize, usize), Arc<MorphismSet>>>,
}

impl std::fmt::Debug for FusionSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FusionSystem({}, |S| = {})", self.label, self.s.order())
    }
}

fn conj_tuple(g: &Group, t: &Tuple, x: &Element, xi: &Element) -> Tuple {
    t.iter().map(|y| g.ambient().conj_with(y, x, xi)).collect()
}

/// `F_S(G)`. Without `S`, a Sylow 2-subgroup is found by search (which
/// enumerates `G`).
pub fn build_fusion(g: &Group, s: Option<&Subgroup>) -> Result<FusionSystem> {
    let sylow = match s {
        Some(s) => s.clone(),
        None => sylow2_search(g)?,
    };
    if !sylow.order().is_power_of_two() {
        return Err(Error::Precondition("S is not a 2-group".into()));
    }
    if sylow.order() > SUBGROUP_LIMIT {
        return Err(Error::SizeCap(format!("|S| = {} above {SUBGROUP_LIMIT}", sylow.order())));
    }
    let order = g.order()?;
    if (order / sylow.order() as u128) % 2 == 0 || order % sylow.order() as u128 != 0 {
        return Err(Error::Precondition(format!(
            "a subgroup of order {} is not Sylow in a group of order {order}",
            sylow.order()
        )));
    }
    if let Ok(e) = g.enumeration() {
        if let Some(x) = sylow.gens().iter().find(|x| !e.contains(x)) {
            return Err(Error::NotContained(format!("{x:?} is not in {}", g.descriptor())));
        }
    }
    let sg = SmallGroup::from_subgroup(&sylow)?;
    let amb = g.ambient();
    let ginv = gen_inverses(amb, g.gens());
    let n = sg.order();
    let mut element_class = vec![u32::MAX; n];
    let mut classes: Vec<Vec<u16>> = Vec::new();
    for x in 0..n as u16 {
        if element_class[x as usize] != u32::MAX {
            continue;
        }
        let id = classes.len() as u32;
        let root = sg.element(x).unwrap().clone();
        let act = |y: &Element, j: usize| amb.conj_with(y, &g.gens()[j], &ginv[j]);
        let orb = Orbit::compute(root, g.gens(), act, DEFAULT_CAP)?;
        let mut members = Vec::new();
        for p in orb.points() {
            if let Some(i) = sg.index_of(p) {
                element_class[i as usize] = id;
                members.push(i);
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    Ok(FusionSystem {
        label: format!("F({})", g.descriptor()),
        s: Arc::new(sg),
        element_class,
        classes,
        origin: Origin::Group {
            g: g.clone(),
            sylow,
        },
        subgroup_data: OnceLock::new(),
        homs: Mutex::new(FxHashMap::default()),
    })
}

/// `F_S(S)`.
pub fn inner_fusion(s: &Subgroup) -> Result<FusionSystem> {
    let g = s.to_group("S");
    let mut f = build_fusion(&g, Some(s))?;
    f.label = format!("F_S(S), |S| = {}", s.order());
    Ok(f)
}

fn perm_order(p: &[u16]) -> u64 {
    let mut seen = vec![false; p.len()];
    let mut l = 1u64;
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut k = 0u64;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = p[j] as usize;
            k += 1;
        }
        l = l / gcd(l, k) * k;
    }
    l
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn positions(n: usize, elems: &[u16]) -> Vec<u16> {
    let mut pos = vec![u16::MAX; n];
    for (k, &x) in elems.iter().enumerate() {
        pos[x as usize] = k as u16;
    }
    pos
}

impl FusionSystem {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn sylow(&self) -> &SmallGroup {
        &self.s
    }

    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    /// The concrete Sylow subgroup, for `F_S(G)`.
    pub fn sylow_subgroup(&self) -> Option<&Subgroup> {
        match &self.origin {
            Origin::Group { sylow, .. } => Some(sylow),
            Origin::Factor { .. } => None,
        }
    }

    pub fn group(&self) -> Option<&Group> {
        match &self.origin {
            Origin::Group { g, .. } => Some(g),
            Origin::Factor { .. } => None,
        }
    }

    /// F-conjugacy classes of elements, ordered by least member.
    pub fn element_classes(&self) -> &[Vec<u16>] {
        &self.classes
    }

    pub fn element_class_of(&self, x: u16) -> usize {
        self.element_class[x as usize] as usize
    }

    /// F-classes of involutions as `(representative, size)`.
    pub fn involution_classes(&self) -> Vec<(u16, usize)> {
        self.classes
            .iter()
            .filter(|c| self.s.element_order(c[0]) == 2)
            .map(|c| (c[0], c.len()))
            .collect()
    }

    /// Element indices of a concrete subgroup of `S`.
    pub fn indices_of(&self, h: &Subgroup) -> Result<Vec<u16>> {
        let mut v: Vec<u16> = h
            .elements()
            .iter()
            .map(|x| {
                self.s
                    .index_of(x)
                    .ok_or_else(|| Error::NotContained(format!("{x:?} is not in S")))
            })
            .collect::<Result<_>>()?;
        v.sort_unstable();
        Ok(v)
    }

    /// The concrete subgroup of `S` with the given element indices.
    pub fn subgroup_from_indices(&self, idx: &[u16]) -> Option<Subgroup> {
        let s = self.sylow_subgroup()?;
        let elems: Vec<Element> = idx.iter().map(|&i| self.s.element(i).unwrap().clone()).collect();
        Some(Subgroup::from_closed_elements(s.ambient(), elems))
    }

    /// Image of `x` under conjugation by `g`, when that stays in `S`.
    pub fn realize(&self, x: u16, g: &Element) -> Option<u16> {
        match &self.origin {
            Origin::Group { g: grp, .. } => {
                let y = grp.ambient().conj(self.s.element(x)?, g);
                self.s.index_of(&y)
            }
            Origin::Factor {
                parent,
                coset_of,
                coset_reps,
                ..
            } => parent.realize(coset_reps[x as usize], g).map(|y| coset_of[y as usize]),
        }
    }

    pub fn subgroup_data(&self) -> Result<Arc<SubgroupData>> {
        if let Some(d) = self.subgroup_data.get() {
            return Ok(d.clone());
        }
        let d = Arc::new(match &self.origin {
            Origin::Group { g, .. } => self.concrete_subgroup_data(g)?,
            Origin::Factor {
                parent,
                normal,
                coset_of,
                coset_reps,
            } => factor_subgroup_data(&self.s, parent, normal, coset_of, coset_reps)?,
        });
        let _ = self.subgroup_data.set(d.clone());
        Ok(d)
    }

    fn concrete_subgroup_data(&self, g: &Group) -> Result<SubgroupData> {
        let s = &*self.s;
        let n = s.order();
        let subs = subgroups(s)?;
        let index: FxHashMap<Vec<u16>, usize> = subs.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let amb = g.ambient();
        let ginv = gen_inverses(amb, g.gens());
        let mut class_of = vec![usize::MAX; subs.len()];
        let mut alpha: Vec<Vec<u16>> = vec![Vec::new(); subs.len()];
        let mut alpha_witness: Vec<Option<Element>> = vec![None; subs.len()];
        let mut classes: Vec<SubgroupClass> = Vec::new();
        for r in 0..subs.len() {
            if class_of[r] != usize::MAX {
                continue;
            }
            let cls = classes.len();
            let rel = &subs[r];
            let pos_r = positions(n, rel);
            let gens = minimal_generators(s, rel);
            let mut class = SubgroupClass {
                rep: r,
                members: Vec::new(),
                automorphisms: Vec::new(),
                aut_witnesses: Vec::new(),
            };
            if gens.is_empty() {
                class_of[r] = cls;
                class.members.push(r);
                class.automorphisms.push(vec![0]);
                class.aut_witnesses.push(Some(amb.identity()));
                alpha[r] = rel.clone();
                alpha_witness[r] = Some(amb.identity());
                classes.push(class);
                continue;
            }
            let words = Words::new(s, &gens);
            let root: Tuple = gens.iter().map(|&x| s.element(x).unwrap().clone()).collect();
            let act = |t: &Tuple, j: usize| conj_tuple(g, t, &g.gens()[j], &ginv[j]);
            let orb = Orbit::compute(root, g.gens(), act, DEFAULT_CAP)?;
            for i in 0..orb.len() {
                let pt = orb.point(i);
                let Some(idx) = pt.iter().map(|x| s.index_of(x)).collect::<Option<Vec<u16>>>() else {
                    continue;
                };
                let vals = words.evaluate_unchecked(s, &idx);
                let mut image = vals.clone();
                image.sort_unstable();
                let p = index[&image];
                // graph over the rep's positions
                let mut graph = vec![0u16; rel.len()];
                for (e, v) in words.elems.iter().zip(&vals) {
                    graph[pos_r[*e as usize] as usize] = *v;
                }
                if p == r {
                    let aut: Vec<u16> = graph.iter().map(|&v| pos_r[v as usize]).collect();
                    class.automorphisms.push(aut);
                    class.aut_witnesses.push(Some(orb.transversal(amb, g.gens(), i)));
                }
                if class_of[p] == usize::MAX {
                    class_of[p] = cls;
                    class.members.push(p);
                    alpha[p] = graph;
                    alpha_witness[p] = Some(orb.transversal(amb, g.gens(), i));
                } else if class_of[p] != cls {
                    return Err(Error::Internal("subgroup lies in two classes".into()));
                }
            }
            class.members.sort_unstable();
            classes.push(class);
        }
        Ok(SubgroupData {
            subgroups: subs,
            index,
            class_of,
            classes,
            alpha,
            alpha_witness,
        })
    }

    /// `Hom_F(P, Q)` for subgroup indices `P`, `Q`.
    pub fn hom_set(&self, p: usize, q: usize) -> Result<Arc<MorphismSet>> {
        if let Some(h) = self.homs.lock().unwrap().get(&(p, q)) {
            return Ok(h.clone());
        }
        let d = self.subgroup_data()?;
        let n = self.s.order();
        let class = &d.classes[d.class_of[p]];
        let qbits = self.s.bits(&d.subgroups[q]);
        let pel = &d.subgroups[p];
        // position in the rep of alpha(P)^-1 of each element of P
        let mut back = vec![u16::MAX; n];
        for (j, &x) in d.alpha[p].iter().enumerate() {
            back[x as usize] = j as u16;
        }
        let wp_inv = d.alpha_witness[p].as_ref().map(|w| self.invert_witness(w));
        let mut maps = Vec::new();
        for &pp in &class.members {
            if !d.subgroups[pp].iter().all(|&x| qbits.contains(x as usize)) {
                continue;
            }
            for (a, wa) in class.automorphisms.iter().zip(&class.aut_witnesses) {
                let images: Vec<u16> = pel
                    .iter()
                    .map(|&x| d.alpha[pp][a[back[x as usize] as usize] as usize])
                    .collect();
                let witness = match (&wp_inv, wa, &d.alpha_witness[pp]) {
                    (Some(w1), Some(w2), Some(w3)) => Some(self.compose_witness(&[w1, w2, w3])),
                    _ => None,
                };
                maps.push(Morphism { images, witness });
            }
        }
        maps.sort_by(|a, b| a.images.cmp(&b.images));
        maps.dedup_by(|a, b| a.images == b.images);
        let set = Arc::new(MorphismSet {
            domain: p,
            codomain: q,
            maps,
        });
        self.homs.lock().unwrap().insert((p, q), set.clone());
        Ok(set)
    }

    /// Graphs of `Hom_F(P, Q)` without witnesses or caching, sorted.
    pub(crate) fn hom_graphs(&self, d: &SubgroupData, p: usize, q: usize) -> Vec<Vec<u16>> {
        let n = self.s.order();
        let class = &d.classes[d.class_of[p]];
        let qbits = self.s.bits(&d.subgroups[q]);
        let pel = &d.subgroups[p];
        let mut back = vec![u16::MAX; n];
        for (j, &x) in d.alpha[p].iter().enumerate() {
            back[x as usize] = j as u16;
        }
        let mut out = Vec::new();
        for &pp in &class.members {
            if !d.subgroups[pp].iter().all(|&x| qbits.contains(x as usize)) {
                continue;
            }
            for a in &class.automorphisms {
                out.push(
                    pel.iter()
                        .map(|&x| d.alpha[pp][a[back[x as usize] as usize] as usize])
                        .collect(),
                );
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    fn group_for_witnesses(&self) -> &Group {
        match &self.origin {
            Origin::Group { g, .. } => g,
            Origin::Factor { parent, .. } => parent.group_for_witnesses(),
        }
    }

    fn invert_witness(&self, w: &Element) -> Element {
        self.group_for_witnesses().ambient().inv(w)
    }

    fn compose_witness(&self, ws: &[&Element]) -> Element {
        let amb = self.group_for_witnesses().ambient();
        ws.iter().skip(1).fold(ws[0].clone(), |acc, w| amb.mul(&acc, w))
    }

    /// Checks every stored map (automorphisms of class reps and the
    /// transporting isomorphisms) against its witness; returns the number
    /// of maps checked.
    pub fn verify_realization(&self) -> Result<usize> {
        let d = self.subgroup_data()?;
        let mut count = 0;
        let check = |domain: &[u16], graph: &[u16], w: &Option<Element>| -> Result<()> {
            let Some(w) = w else { return Ok(()) };
            for (x, y) in domain.iter().zip(graph) {
                if self.realize(*x, w) != Some(*y) {
                    return Err(Error::Internal("stored map disagrees with its witness".into()));
                }
            }
            Ok(())
        };
        for c in &d.classes {
            let rel = &d.subgroups[c.rep];
            for (a, w) in c.automorphisms.iter().zip(&c.aut_witnesses) {
                let graph: Vec<u16> = a.iter().map(|&k| rel[k as usize]).collect();
                check(rel, &graph, w)?;
                count += 1;
            }
            for &p in &c.members {
                check(rel, &d.alpha[p], &d.alpha_witness[p])?;
                count += 1;
            }
        }
        Ok(count)
    }

    /// Checks every map of `Hom_F(P, Q)` against its witness.
    pub fn verify_hom_set(&self, set: &MorphismSet) -> Result<()> {
        let d = self.subgroup_data()?;
        let dom = &d.subgroups[set.domain];
        for m in &set.maps {
            if let Some(w) = &m.witness {
                for (x, y) in dom.iter().zip(&m.images) {
                    if self.realize(*x, w) != Some(*y) {
                        return Err(Error::Internal("morphism disagrees with its witness".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// `F = F_S(S)`: for every `P`, `|Hom_F(P, S)| = |S : C_S(P)|`.
    pub fn is_nilpotent(&self) -> Result<bool> {
        let d = self.subgroup_data()?;
        let s = &*self.s;
        for c in &d.classes {
            let rel = &d.subgroups[c.rep];
            let homs = c.members.len() * c.automorphisms.len();
            let cent = s.centralizer(&s.generators(rel)).len();
            if homs * cent != s.order() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `Z(F)`: the elements fixed by every morphism, i.e. the elements whose
    /// F-class is a singleton.
    pub fn center(&self) -> Vec<u16> {
        self.classes.iter().filter(|c| c.len() == 1).map(|c| c[0]).collect()
    }

    /// No morphism carries an element of `A` outside `A`.
    pub fn is_strongly_closed(&self, a: &[u16]) -> bool {
        let bits = self.s.bits(a);
        a.iter().all(|&x| {
            self.classes[self.element_class_of(x)]
                .iter()
                .all(|&y| bits.contains(y as usize))
        })
    }

    /// `<x^-1 y : x ~ y>`.
    pub fn focal_subgroup(&self) -> Vec<u16> {
        let s = &*self.s;
        let mut gens = Vec::new();
        for c in &self.classes {
            let xi = s.inv(c[0]);
            for &y in &c[1..] {
                gens.push(s.mul(xi, y));
            }
        }
        s.closure(&gens)
    }

    /// `<[P, O^2(Aut_F(P))] : P <= S>`, computed on class reps and
    /// transported along `alpha`.
    pub fn hyperfocal_subgroup(&self) -> Result<Vec<u16>> {
        let d = self.subgroup_data()?;
        let s = &*self.s;
        let mut gens: BTreeSet<u16> = BTreeSet::new();
        for c in &d.classes {
            let rel = &d.subgroups[c.rep];
            for a in &c.automorphisms {
                if perm_order(a) % 2 == 0 {
                    continue;
                }
                for (j, &r) in rel.iter().enumerate() {
                    let comm_pos: (u16, u16) = (j as u16, a[j]);
                    let _ = r;
                    for &p in &c.members {
                        let x = d.alpha[p][comm_pos.0 as usize];
                        let y = d.alpha[p][comm_pos.1 as usize];
                        gens.insert(s.mul(s.inv(x), y));
                    }
                }
            }
        }
        let gens: Vec<u16> = gens.into_iter().collect();
        Ok(s.closure(&gens))
    }

    fn checkable_group(&self) -> Option<&Group> {
        match &self.origin {
            Origin::Group { g, .. } if g.order().map(|o| o <= CROSS_CHECK_LIMIT).unwrap_or(false) => Some(g),
            _ => None,
        }
    }

    /// `S ∩ H` as element indices.
    pub fn meet(&self, h: &Subgroup) -> Vec<u16> {
        (0..self.s.order() as u16)
            .filter(|&x| self.s.element(x).is_some_and(|e| h.contains(e)))
            .collect()
    }

    fn cross_check(&self, what: &str, intrinsic: &[u16], h: &Subgroup) -> Result<()> {
        let other = self.meet(h);
        if other != intrinsic {
            return Err(Error::Internal(format!(
                "{what}: intrinsic order {} but the group formula gives {}",
                intrinsic.len(),
                other.len()
            )));
        }
        Ok(())
    }

    /// The focal subgroup, checked against `S ∩ G'` when `G` is small
    /// enough to enumerate.
    pub fn focal(&self) -> Result<Vec<u16>> {
        let f = self.focal_subgroup();
        if let Some(g) = self.checkable_group() {
            self.cross_check("focal subgroup", &f, &crate::grp::derived_subgroup(g)?)?;
        }
        Ok(f)
    }

    /// The hyperfocal subgroup, checked against `S ∩ O^2(G)`.
    pub fn hyperfocal(&self) -> Result<Vec<u16>> {
        let h = self.hyperfocal_subgroup()?;
        if let Some(g) = self.checkable_group() {
            self.cross_check("hyperfocal subgroup", &h, &crate::grp::o2(g)?)?;
        }
        Ok(h)
    }

    /// `Z(F)`, checked against `S ∩ Z*(G)`.
    pub fn fusion_center(&self) -> Result<Vec<u16>> {
        let z = self.center();
        if let Some(g) = self.checkable_group() {
            match crate::grp::z_star(g) {
                Ok(zs) => self.cross_check("center", &z, &zs)?,
                Err(Error::SizeCap(_)) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(z)
    }

    /// The factor system `F/Q` for `Q` normal in `S`.
    pub fn factor_system(parent: &Arc<FusionSystem>, q: &[u16]) -> Result<FusionSystem> {
        let s = &*parent.s;
        let mut q = q.to_vec();
        q.sort_unstable();
        if !s.is_normal(&q, &s.all()) || s.closure(&q) != q {
            return Err(Error::Precondition("Q is not a normal subgroup of S".into()));
        }
        let (sq, coset_of) = s.quotient(&q)?;
        let mut coset_reps = vec![u16::MAX; sq.order()];
        for x in 0..s.order() as u16 {
            let c = coset_of[x as usize] as usize;
            if coset_reps[c] == u16::MAX {
                coset_reps[c] = x;
            }
        }
        let mut f = FusionSystem {
            label: format!("{}/Q{}", parent.label, q.len()),
            s: Arc::new(sq),
            element_class: Vec::new(),
            classes: Vec::new(),
            origin: Origin::Factor {
                parent: parent.clone(),
                normal: q,
                coset_of,
                coset_reps,
            },
            subgroup_data: OnceLock::new(),
            homs: Mutex::new(FxHashMap::default()),
        };
        let d = f.subgroup_data()?;
        let (element_class, classes) = element_classes_from_subgroups(&f.s, &d);
        f.element_class = element_class;
        f.classes = classes;
        Ok(f)
    }

    /// Element classes recomputed from the subgroup data (orbits of
    /// `Aut_F` on generators of cyclic class reps).
    pub fn element_classes_via_subgroups(&self) -> Result<Vec<Vec<u16>>> {
        let d = self.subgroup_data()?;
        Ok(element_classes_from_subgroups(&self.s, &d).1)
    }
}

fn element_classes_from_subgroups(s: &SmallGroup, d: &SubgroupData) -> (Vec<u32>, Vec<Vec<u16>>) {
    let n = s.order();
    let mut element_class = vec![u32::MAX; n];
    let mut raw: Vec<Vec<u16>> = Vec::new();
    for c in &d.classes {
        let rel = &d.subgroups[c.rep];
        let m = rel.len() as u32;
        if rel.iter().all(|&x| s.element_order(x) != m) {
            continue;
        }
        for (j, &x) in rel.iter().enumerate() {
            if s.element_order(x) != m || element_class[d.alpha[c.rep][j] as usize] != u32::MAX {
                continue;
            }
            let id = raw.len() as u32;
            let mut members = Vec::new();
            for a in &c.automorphisms {
                let k = a[j] as usize;
                for &p in &c.members {
                    let y = d.alpha[p][k];
                    if element_class[y as usize] == u32::MAX {
                        element_class[y as usize] = id;
                        members.push(y);
                    }
                }
            }
            members.sort_unstable();
            raw.push(members);
        }
    }
    let mut order: Vec<usize> = (0..raw.len()).collect();
    order.sort_by_key(|&i| raw[i][0]);
    let mut classes = Vec::with_capacity(raw.len());
    for (new, &old) in order.iter().enumerate() {
        for &x in &raw[old] {
            element_class[x as usize] = new as u32;
        }
        classes.push(raw[old].clone());
    }
    (element_class, classes)
}

fn factor_subgroup_data(
    sq: &SmallGroup,
    parent: &Arc<FusionSystem>,
    normal: &[u16],
    coset_of: &[u16],
    coset_reps: &[u16],
) -> Result<SubgroupData> {
    let pd = parent.subgroup_data()?;
    let ps = &*parent.s;
    let subs = subgroups(sq)?;
    let index: FxHashMap<Vec<u16>, usize> = subs.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
    // preimage of each quotient subgroup, as a parent subgroup index
    let preimage: Vec<usize> = subs
        .iter()
        .map(|sub| {
            let mut v: Vec<u16> = (0..ps.order() as u16)
                .filter(|&x| sub.binary_search(&coset_of[x as usize]).is_ok())
                .collect();
            v.sort_unstable();
            pd.index_of(&v).expect("preimage is a subgroup")
        })
        .collect();
    let n = ps.order();
    let mut class_of = vec![usize::MAX; subs.len()];
    let mut alpha: Vec<Vec<u16>> = vec![Vec::new(); subs.len()];
    let mut alpha_witness: Vec<Option<Element>> = vec![None; subs.len()];
    let mut classes: Vec<SubgroupClass> = Vec::new();
    let nq = sq.order();
    for r in 0..subs.len() {
        if class_of[r] != usize::MAX {
            continue;
        }
        let cls = classes.len();
        let p0 = preimage[r];
        let pc = &pd.classes[pd.class_of[p0]];
        let rel = &pd.subgroups[pc.rep];
        let mut back0 = vec![u16::MAX; n];
        for (j, &x) in pd.alpha[p0].iter().enumerate() {
            back0[x as usize] = j as u16;
        }
        let w0_inv = pd.alpha_witness[p0].as_ref().map(|w| parent.invert_witness(w));
        let qbar = &subs[r];
        let pos_q = positions(nq, qbar);
        let mut class = SubgroupClass {
            rep: r,
            members: Vec::new(),
            automorphisms: Vec::new(),
            aut_witnesses: Vec::new(),
        };
        let mut seen_auts: FxHashMap<Vec<u16>, ()> = FxHashMap::default();
        // candidate targets: quotient subgroups whose preimage is in the parent class
        let targets: Vec<usize> = (0..subs.len())
            .filter(|&t| pd.class_of[preimage[t]] == pd.class_of[p0] && subs[t].len() == qbar.len())
            .collect();
        for &t in &targets {
            let p2 = preimage[t];
            for (a, wa) in pc.automorphisms.iter().zip(&pc.aut_witnesses) {
                // phi = alpha(P0)^-1 . a . alpha(P2)
                let phi = |x: u16| pd.alpha[p2][a[back0[x as usize] as usize] as usize];
                if !normal.iter().all(|&x| normal.binary_search(&phi(x)).is_ok()) {
                    continue;
                }
                let graph: Vec<u16> = qbar.iter().map(|&c| coset_of[phi(coset_reps[c as usize]) as usize]).collect();
                let witness = match (&w0_inv, wa, &pd.alpha_witness[p2]) {
                    (Some(w1), Some(w2), Some(w3)) => Some(parent.compose_witness(&[w1, w2, w3])),
                    _ => None,
                };
                if t == r {
                    let aut: Vec<u16> = graph.iter().map(|&v| pos_q[v as usize]).collect();
                    if seen_auts.insert(aut.clone(), ()).is_none() {
                        class.automorphisms.push(aut);
                        class.aut_witnesses.push(witness.clone());
                    }
                }
                if class_of[t] == usize::MAX {
                    class_of[t] = cls;
                    class.members.push(t);
                    alpha[t] = graph;
                    alpha_witness[t] = witness;
                }
                if t != r {
                    break;
                }
            }
        }
        let _ = rel;
        // identity first
        if let Some(pos) = class
            .automorphisms
            .iter()
            .position(|a| a.iter().enumerate().all(|(i, &v)| v as usize == i))
        {
            class.automorphisms.swap(0, pos);
            class.aut_witnesses.swap(0, pos);
        }
        class.members.sort_unstable();
        classes.push(class);
    }
    Ok(SubgroupData {
        subgroups: subs,
        index,
        class_of,
        classes,
        alpha,
        alpha_witness,
    })
}

#[cfg(test)]
mod tests;
