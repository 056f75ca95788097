//! Isomorphism of fusion systems: invariant prefilter, then backtracking
//! over generator images of `S1 -> S2`, accepting a candidate only when it
//! carries every morphism set of `F1` onto the corresponding set of `F2`.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::{FusionSystem, SubgroupData};
use crate::gf::FieldElement;
use crate::grp::pgroup::{minimal_generators, search_images, Words};
use crate::grp::small::SmallGroup;
use crate::grp::{Element, Matrix, Perm};
use crate::{Error, Result};

/// Candidate maps explored before giving up.
pub const LEAF_LIMIT: usize = 2_000_000;

/// An element written out independently of any indexing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementCode {
    /// Row-major field indices.
    Matrix { dim: usize, entries: Vec<u16> },
    /// 1-based images.
    Perm { images: Vec<u16> },
    /// Position in an abstract (quotient) group.
    Index(u16),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoCertificate {
    pub source: String,
    pub target: String,
    pub order: usize,
    pub generators: Vec<ElementCode>,
    pub images: Vec<ElementCode>,
    /// Pairs `(P, Q)` whose morphism sets were compared.
    pub subgroup_pairs_checked: usize,
}

impl IsoCertificate {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<IsoCertificate> {
        Ok(serde_json::from_str(s)?)
    }

    /// Re-runs the full check against the two systems.
    pub fn verify(&self, f1: &FusionSystem, f2: &FusionSystem) -> Result<bool> {
        let decode = |f: &FusionSystem, codes: &[ElementCode]| -> Result<Vec<u16>> {
            codes.iter().map(|c| decode(f.sylow(), c)).collect()
        };
        let gens = decode(f1, &self.generators)?;
        let imgs = decode(f2, &self.images)?;
        let (s1, s2) = (f1.sylow(), f2.sylow());
        if gens.len() != imgs.len() || s1.closure(&gens).len() != s1.order() || s1.order() != s2.order() {
            return Ok(false);
        }
        let words = Words::new(s1, &gens);
        let Some(phi) = graph(s1, s2, &words, &imgs) else {
            return Ok(false);
        };
        let (d1, d2) = (f1.subgroup_data()?, f2.subgroup_data()?);
        if !classes_match(f1, f2, &phi) {
            return Ok(false);
        }
        Ok(all_pairs(f1, f2, &d1, &d2, &phi)?.is_some())
    }
}

#[derive(Clone, Debug)]
pub enum IsoOutcome {
    Isomorphic(IsoCertificate),
    NotIsomorphic { reason: String },
    Indeterminate { reason: String },
}

impl IsoOutcome {
    /// `Some(true)`, `Some(false)`, or `None` when undecided.
    pub fn decided(&self) -> Option<bool> {
        match self {
            IsoOutcome::Isomorphic(_) => Some(true),
            IsoOutcome::NotIsomorphic { .. } => Some(false),
            IsoOutcome::Indeterminate { .. } => None,
        }
    }
}

fn encode(s: &SmallGroup, x: u16) -> ElementCode {
    match s.element(x) {
        Some(Element::Matrix(m)) => ElementCode::Matrix {
            dim: m.dim(),
            entries: m.entries().map(|e| e.0 as u16).collect(),
        },
        Some(Element::Perm(p)) => ElementCode::Perm {
            images: p.images().map(|i| i as u16 + 1).collect(),
        },
        None => ElementCode::Index(x),
    }
}

fn decode(s: &SmallGroup, c: &ElementCode) -> Result<u16> {
    let x = match c {
        ElementCode::Index(i) if (*i as usize) < s.order() && !s.is_concrete() => return Ok(*i),
        ElementCode::Index(i) => return Err(Error::Precondition(format!("index {i} does not fit this group"))),
        ElementCode::Matrix { dim, entries } => {
            if entries.len() != dim * dim {
                return Err(Error::Precondition("matrix code has the wrong length".into()));
            }
            let e: Vec<FieldElement> = entries.iter().map(|&v| FieldElement(v as u32)).collect();
            Element::Matrix(Matrix::from_entries(*dim, &e))
        }
        ElementCode::Perm { images } => {
            let im: Vec<usize> = images.iter().map(|&i| (i as usize).wrapping_sub(1)).collect();
            Element::Perm(Perm::from_images(&im)?)
        }
    };
    s.index_of(&x)
        .ok_or_else(|| Error::NotContained(format!("{x:?} is not in S")))
}

/// The bijective homomorphism `S1 -> S2` given by generator images, as an
/// array over element indices.
fn graph(s1: &SmallGroup, s2: &SmallGroup, words: &Words, images: &[u16]) -> Option<Vec<u16>> {
    let vals = words.evaluate(s1, s2, images)?;
    if vals.len() != s1.order() {
        return None;
    }
    let mut phi = vec![u16::MAX; s1.order()];
    let mut seen = FixedBitSet::with_capacity(s2.order());
    for (e, v) in words.elems.iter().zip(vals) {
        if seen.put(v as usize) {
            return None;
        }
        phi[*e as usize] = v;
    }
    Some(phi)
}

fn classes_match(f1: &FusionSystem, f2: &FusionSystem, phi: &[u16]) -> bool {
    f1.element_classes().iter().all(|c| {
        let mut img: Vec<u16> = c.iter().map(|&x| phi[x as usize]).collect();
        img.sort_unstable();
        f2.element_classes()[f2.element_class_of(img[0])] == img
    })
}

fn image_of(d2: &SubgroupData, phi: &[u16], elems: &[u16]) -> Option<usize> {
    let mut v: Vec<u16> = elems.iter().map(|&x| phi[x as usize]).collect();
    v.sort_unstable();
    d2.index_of(&v)
}

/// Subgroup classes and automorphism groups of class reps correspond.
fn subgroup_level_match(d1: &SubgroupData, d2: &SubgroupData, f2: &FusionSystem, phi: &[u16]) -> Option<Vec<usize>> {
    let sub_map: Vec<usize> = d1
        .subgroups
        .iter()
        .map(|p| image_of(d2, phi, p))
        .collect::<Option<_>>()?;
    for c in &d1.classes {
        let c2 = d2.class_of[sub_map[c.rep]];
        let mut img: Vec<usize> = c.members.iter().map(|&p| sub_map[p]).collect();
        img.sort_unstable();
        if d2.classes[c2].members != img || d2.classes[c2].automorphisms.len() != c.automorphisms.len() {
            return None;
        }
        let p2 = sub_map[c.rep];
        let rel = &d1.subgroups[c.rep];
        let target = &d2.subgroups[p2];
        let auts2 = f2.hom_graphs(d2, p2, p2);
        for a in &c.automorphisms {
            // phi^-1 a phi on phi(R), as a graph over target's elements
            let mut g = vec![0u16; target.len()];
            for (j, &x) in rel.iter().enumerate() {
                let y = phi[x as usize];
                let k = target.binary_search(&y).ok()?;
                g[k] = phi[rel[a[j] as usize] as usize];
            }
            if auts2.binary_search(&g).is_err() {
                return None;
            }
        }
    }
    Some(sub_map)
}

/// Compares `Hom_F1(P, Q)` transported by `phi` with
/// `Hom_F2(phi P, phi Q)` for every pair; returns the number of pairs.
fn all_pairs(
    f1: &FusionSystem,
    f2: &FusionSystem,
    d1: &SubgroupData,
    d2: &SubgroupData,
    phi: &[u16],
) -> Result<Option<usize>> {
    let sub_map: Option<Vec<usize>> = d1.subgroups.iter().map(|p| image_of(d2, phi, p)).collect();
    let Some(sub_map) = sub_map else {
        return Ok(None);
    };
    let mut pairs = 0;
    for p in 0..d1.len() {
        let pel = &d1.subgroups[p];
        let p2 = sub_map[p];
        let target = &d2.subgroups[p2];
        let pos: Vec<usize> = pel
            .iter()
            .map(|&x| target.binary_search(&phi[x as usize]).expect("image subgroup"))
            .collect();
        for q in 0..d1.len() {
            let h1 = f1.hom_graphs(d1, p, q);
            let h2 = f2.hom_graphs(d2, p2, sub_map[q]);
            pairs += 1;
            if h1.len() != h2.len() {
                return Ok(None);
            }
            for m in &h1 {
                let mut g = vec![0u16; m.len()];
                for (k, &y) in m.iter().enumerate() {
                    g[pos[k]] = phi[y as usize];
                }
                if h2.binary_search(&g).is_err() {
                    return Ok(None);
                }
            }
        }
    }
    Ok(Some(pairs))
}

/// Checks that `phi` (an array over the elements of `S1`) is an
/// isomorphism `S1 -> S2` carrying every `Hom_F1(P, Q)` onto
/// `Hom_F2(phi P, phi Q)`; returns the number of pairs compared.
pub fn verify_map(f1: &FusionSystem, f2: &FusionSystem, phi: &[u16]) -> Result<Option<usize>> {
    let (s1, s2) = (f1.sylow(), f2.sylow());
    if phi.len() != s1.order() || s1.order() != s2.order() {
        return Ok(None);
    }
    let mut seen = FixedBitSet::with_capacity(s2.order());
    for &y in phi {
        if (y as usize) >= s2.order() || seen.put(y as usize) {
            return Ok(None);
        }
    }
    for a in 0..s1.order() as u16 {
        for b in 0..s1.order() as u16 {
            if phi[s1.mul(a, b) as usize] != s2.mul(phi[a as usize], phi[b as usize]) {
                return Ok(None);
            }
        }
    }
    if !classes_match(f1, f2, phi) {
        return Ok(None);
    }
    let (d1, d2) = (f1.subgroup_data()?, f2.subgroup_data()?);
    all_pairs(f1, f2, &d1, &d2, phi)
}

/// Isomorphism invariants compared before searching.
#[derive(Debug, PartialEq, Eq)]
struct Invariants {
    order: usize,
    element_orders: Vec<u32>,
    element_classes: Vec<(u32, usize)>,
    subgroups_by_order: Vec<(usize, usize)>,
    subgroup_classes: Vec<(usize, usize, usize)>,
    center: usize,
    focal: usize,
    hyperfocal: usize,
}

fn invariants(f: &FusionSystem, d: &SubgroupData) -> Result<Invariants> {
    let s = f.sylow();
    let mut element_orders: Vec<u32> = (0..s.order() as u16).map(|x| s.element_order(x)).collect();
    element_orders.sort_unstable();
    let mut element_classes: Vec<(u32, usize)> = f
        .element_classes()
        .iter()
        .map(|c| (s.element_order(c[0]), c.len()))
        .collect();
    element_classes.sort_unstable();
    let mut subgroups_by_order: Vec<(usize, usize)> = Vec::new();
    for p in &d.subgroups {
        match subgroups_by_order.last_mut() {
            Some((o, c)) if *o == p.len() => *c += 1,
            _ => subgroups_by_order.push((p.len(), 1)),
        }
    }
    let mut subgroup_classes: Vec<(usize, usize, usize)> = d
        .classes
        .iter()
        .map(|c| (d.subgroups[c.rep].len(), c.members.len(), c.automorphisms.len()))
        .collect();
    subgroup_classes.sort_unstable();
    Ok(Invariants {
        order: s.order(),
        element_orders,
        element_classes,
        subgroups_by_order,
        subgroup_classes,
        center: f.center().len(),
        focal: f.focal_subgroup().len(),
        hyperfocal: f.hyperfocal_subgroup()?.len(),
    })
}

fn first_difference(a: &Invariants, b: &Invariants) -> Option<&'static str> {
    if a.order != b.order {
        Some("|S| differs")
    } else if a.element_orders != b.element_orders {
        Some("element orders of S differ")
    } else if a.element_classes != b.element_classes {
        Some("F-class sizes of elements differ")
    } else if a.subgroups_by_order != b.subgroups_by_order {
        Some("subgroup counts of S differ")
    } else if a.subgroup_classes != b.subgroup_classes {
        Some("F-classes of subgroups differ")
    } else if a.center != b.center {
        Some("centers differ")
    } else if a.focal != b.focal {
        Some("focal subgroups differ")
    } else if a.hyperfocal != b.hyperfocal {
        Some("hyperfocal subgroups differ")
    } else {
        None
    }
}

/// Decides whether `F1` and `F2` are isomorphic. A positive answer carries
/// a certificate that has already passed the all-pairs check.
pub fn is_isomorphic(f1: &FusionSystem, f2: &FusionSystem) -> Result<IsoOutcome> {
    let (s1, s2) = (f1.sylow(), f2.sylow());
    if s1.order() != s2.order() {
        return Ok(IsoOutcome::NotIsomorphic {
            reason: format!("|S| = {} vs {}", s1.order(), s2.order()),
        });
    }
    let (d1, d2) = (f1.subgroup_data()?, f2.subgroup_data()?);
    let (i1, i2) = (invariants(f1, &d1)?, invariants(f2, &d2)?);
    if let Some(reason) = first_difference(&i1, &i2) {
        return Ok(IsoOutcome::NotIsomorphic { reason: reason.into() });
    }
    let gens = minimal_generators(s1, &s1.all());
    let words = Words::new(s1, &gens);
    let profile = |f: &FusionSystem, x: u16| {
        let s = f.sylow();
        (s.element_order(x), f.element_classes()[f.element_class_of(x)].len(), s.centralizer(&[x]).len())
    };
    let cands: Vec<Vec<u16>> = gens
        .iter()
        .map(|&g| {
            let want = profile(f1, g);
            (0..s2.order() as u16).filter(|&y| profile(f2, y) == want).collect()
        })
        .collect();
    let mut leaves = 0usize;
    let mut found: Option<(Vec<u16>, usize)> = None;
    let mut any_group_iso = false;
    let mut chosen = Vec::new();
    let res = search_images(s1, s2, &gens, &cands, &mut chosen, &mut |images| {
        if found.is_some() {
            return Ok(());
        }
        leaves += 1;
        if leaves > LEAF_LIMIT {
            return Err(Error::SizeCap(format!("more than {LEAF_LIMIT} candidate maps")));
        }
        let Some(phi) = graph(s1, s2, &words, images) else {
            return Ok(());
        };
        any_group_iso = true;
        if !classes_match(f1, f2, &phi) || subgroup_level_match(&d1, &d2, f2, &phi).is_none() {
            return Ok(());
        }
        if let Some(pairs) = all_pairs(f1, f2, &d1, &d2, &phi)? {
            found = Some((images.to_vec(), pairs));
        }
        Ok(())
    });
    match res {
        Err(Error::SizeCap(reason)) => return Ok(IsoOutcome::Indeterminate { reason }),
        Err(e) => return Err(e),
        Ok(_) => {}
    }
    Ok(match found {
        Some((images, pairs)) => IsoOutcome::Isomorphic(IsoCertificate {
            source: f1.label().to_string(),
            target: f2.label().to_string(),
            order: s1.order(),
            generators: gens.iter().map(|&x| encode(s1, x)).collect(),
            images: images.iter().map(|&x| encode(s2, x)).collect(),
            subgroup_pairs_checked: pairs,
        }),
        None if !any_group_iso => IsoOutcome::NotIsomorphic {
            reason: "no isomorphism of Sylow subgroups respects F-class sizes".into(),
        },
        None => IsoOutcome::NotIsomorphic {
            reason: "no isomorphism of Sylow subgroups carries F1 onto F2".into(),
        },
    })
}
